//! Univariate polynomials over Q and exact arithmetic in cyclotomic fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{Integer, Rational};

/// Dense polynomial, `coeffs[i]` multiplies `x^i`; no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Poly {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|c| Rational::from(*c)).collect())
    }

    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::from_ints(&[1])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Poly {
        let mut c = vec![Rational::ZERO; k + 1];
        c[k] = Rational::ONE;
        Poly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Integer coefficients, if all coefficients are integral.
    pub fn integer_coeffs(&self) -> Option<Vec<Integer>> {
        self.coeffs.iter().map(Rational::to_integer).collect()
    }

    /// Substitutes `x -> x^k`.
    pub fn compose_power(&self, k: usize) -> Poly {
        let mut c = vec![Rational::ZERO; self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[i * k] = v.clone();
        }
        Poly::new(c)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::ZERO, |acc, c| &(&acc * x) + c)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Rational::ZERO; rem.len() - dd];
        for k in (0..q.len()).rev() {
            let f = &rem[k + dd] / &lead;
            if f.is_zero() {
                continue;
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &(&f * c);
            }
            q[k] = f;
        }
        rem.truncate(dd);
        (Poly::new(q), Poly::new(rem))
    }

    pub fn scale(&self, f: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * f).collect())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rational::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        Poly::new(c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < Rational::ZERO;
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{a}t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{a}t^{i}")?,
            }
        }
        Ok(())
    }
}

/// The n-th cyclotomic polynomial.
pub fn cyclotomic(n: usize) -> Poly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut p = &Poly::monomial(n) - &Poly::one();
    for d in (1..n).filter(|d| n % d == 0) {
        let (q, r) = p.div_rem(&cyclotomic(d));
        debug_assert!(r.is_zero());
        p = q;
    }
    p
}

/// Element of `Q(ζ_n) = Q[x]/(Φ_n)`, kept reduced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cyclotomic {
    pub conductor: usize,
    pub coefficients: Vec<Rational>,
}

impl Cyclotomic {
    fn reduce(conductor: usize, p: &Poly) -> Cyclotomic {
        let (_, r) = p.div_rem(&cyclotomic(conductor));
        Cyclotomic { conductor, coefficients: r.coeffs().to_vec() }
    }

    /// `ζ_n^k`.
    pub fn root_power(conductor: usize, k: usize) -> Cyclotomic {
        Cyclotomic::reduce(conductor, &Poly::monomial(k % conductor))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coefficients.len() {
            0 => Some(Rational::ZERO),
            1 => Some(self.coefficients[0].clone()),
            _ => None,
        }
    }

    /// Evaluates `p` at this element, exactly.
    pub fn eval_poly(&self, p: &Poly) -> Cyclotomic {
        let phi = cyclotomic(self.conductor);
        let x = Poly::new(self.coefficients.clone());
        let mut acc = Poly::zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * &x) + &Poly::new(vec![c.clone()]);
            acc = acc.div_rem(&phi).1;
        }
        Cyclotomic { conductor: self.conductor, coefficients: acc.coeffs().to_vec() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic(1), Poly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(4), Poly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), Poly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), Poly::from_ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn division() {
        let a = Poly::from_ints(&[-1, 0, 0, 1]);
        let (q, r) = a.div_rem(&Poly::from_ints(&[-1, 1]));
        assert_eq!(q, Poly::from_ints(&[1, 1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn one_plus_q_squared_at_i() {
        let i = Cyclotomic::root_power(4, 1);
        assert!(i.eval_poly(&Poly::from_ints(&[1, 0, 1])).is_zero());
        let minus_one = Cyclotomic::root_power(4, 2);
        assert_eq!(minus_one.as_rational(), Some(Rational::from(-1)));
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_ints(&[1, 2, 0, -1]).to_string(), "1 + 2t - t^3");
    }
}
