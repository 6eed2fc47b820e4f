//! Weyl group Poincaré polynomials, partial flag varieties `Q/P` and the
//! splitting criterion `P_{Q/P}(q) ≠ 0`.

use std::collections::HashSet;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{classify, components, positive_roots, transpose, CartanType};
use crate::error::{Error, Result};
use crate::exact::poly::{Cyclotomic, Poly};
use crate::exact::Rational;

/// Largest orbit enumerated explicitly; bigger ones use the degree formula.
pub const ENUMERATION_CAP: u128 = 1_000_000;

/// Simple roots of the Levi, as 0-based indices into the simple roots.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParabolicType {
    pub levi: Vec<usize>,
}

impl ParabolicType {
    pub fn borel() -> ParabolicType {
        ParabolicType::default()
    }

    pub fn whole(t: &CartanType) -> ParabolicType {
        ParabolicType { levi: (0..t.rank()).collect() }
    }

    pub fn new(mut levi: Vec<usize>) -> ParabolicType {
        levi.sort_unstable();
        levi.dedup();
        ParabolicType { levi }
    }

    /// Parses a 1-based comma list such as `1,3`; the empty string is the Borel.
    pub fn parse_one_based(s: &str) -> Result<ParabolicType> {
        let levi = s
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| match p.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k - 1),
                _ => Err(Error::invalid(format!("parabolic: bad simple root index {p}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ParabolicType::new(levi))
    }

    pub fn is_subset_of(&self, other: &ParabolicType) -> bool {
        self.levi.iter().all(|i| other.levi.contains(i))
    }

    pub(crate) fn check(&self, t: &CartanType) -> Result<()> {
        match self.levi.iter().find(|&&i| i >= t.rank()) {
            Some(i) => Err(Error::invalid(format!("simple root {} out of range for {t}", i + 1))),
            None => Ok(()),
        }
    }
}

/// `(1 - t^d) / (1 - t)`.
fn q_integer(d: usize) -> Poly {
    Poly::from_ints(&vec![1; d])
}

fn degree_product(degrees: &[usize]) -> Poly {
    degrees.iter().fold(Poly::one(), |acc, &d| &acc * &q_integer(d))
}

/// Lengths of the minimal representatives of `W_Q / W_P`, as a polynomial in `t`,
/// via the `W_Q`-orbit of a weight whose stabilizer is `W_P`.
fn orbit_series(cartan: &[Vec<i64>], p: &[usize], q: &[usize]) -> Poly {
    let r = cartan.len();
    let start: Vec<i64> = (0..r).map(|i| i64::from(q.contains(&i) && !p.contains(&i))).collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::from([start.clone()]);
    let mut layer = vec![start];
    let mut counts = Vec::new();
    while !layer.is_empty() {
        counts.push(layer.len() as i64);
        let mut next = Vec::new();
        for mu in &layer {
            for &i in q {
                if mu[i] > 0 {
                    // s_i μ = μ - ⟨μ, α_i^∨⟩ α_i, with α_i column i
                    let nu: Vec<i64> = (0..r).map(|k| mu[k] - mu[i] * cartan[k][i]).collect();
                    if seen.insert(nu.clone()) {
                        next.push(nu);
                    }
                }
            }
        }
        layer = next;
    }
    Poly::from_ints(&counts)
}

/// `Σ_{w ∈ W_S} t^{ℓ(w)}` by the degree formula of each component.
fn subgroup_series(cartan: &[Vec<i64>], s: &[usize]) -> Result<Poly> {
    let mut p = Poly::one();
    for comp in components(cartan, s) {
        p = &p * &degree_product(&classify(cartan, &comp)?.degrees());
    }
    Ok(p)
}

fn subgroup_order(cartan: &[Vec<i64>], s: &[usize]) -> Result<u128> {
    let mut n = 1u128;
    for comp in components(cartan, s) {
        n *= classify(cartan, &comp)?.weyl_order();
    }
    Ok(n)
}

/// `ℓ(w)` for the element taking `ρ` to `mu`: positive coroots pairing negatively with `mu`.
fn length_from_orbit_point(coroots: &[Vec<i64>], mu: &[i64]) -> usize {
    coroots.iter().filter(|c| c.iter().zip(mu).map(|(a, b)| a * b).sum::<i64>() < 0).count()
}

/// `P_W(t) = Σ_w t^{ℓ(w)}`; enumerated below the cap and cross-checked against the degrees.
pub fn poincare_w(t: &CartanType) -> Result<Poly> {
    let cartan = t.cartan();
    let all: Vec<usize> = (0..t.rank()).collect();
    let formula = subgroup_series(&cartan, &all)?;
    if t.weyl_order() <= ENUMERATION_CAP {
        let enumerated = orbit_series(&cartan, &[], &all);
        if enumerated != formula {
            return Err(Error::check(format!("Weyl enumeration of {t} disagrees with the degree formula")));
        }
        check_lengths(&cartan)?;
    }
    Ok(formula)
}

/// Compares BFS depth in the `ρ`-orbit with the count of positive roots made negative.
fn check_lengths(cartan: &[Vec<i64>]) -> Result<()> {
    let r = cartan.len();
    let coroots = positive_roots(&transpose(cartan));
    let mut layer = vec![vec![1i64; r]];
    let mut seen: HashSet<Vec<i64>> = layer.iter().cloned().collect();
    let mut depth = 0;
    while !layer.is_empty() {
        for mu in layer.iter().take(8) {
            if length_from_orbit_point(&coroots, mu) != depth {
                return Err(Error::check("Weyl length differs from the inversion count"));
            }
        }
        let mut next = Vec::new();
        for mu in &layer {
            for i in 0..r {
                if mu[i] > 0 {
                    let nu: Vec<i64> = (0..r).map(|k| mu[k] - mu[i] * cartan[k][i]).collect();
                    if seen.insert(nu.clone()) {
                        next.push(nu);
                    }
                }
            }
        }
        layer = next;
        depth += 1;
    }
    Ok(())
}

/// `P_{Q/P}(q) = Σ_{w ∈ W_Q/W_P minimal} q^{2ℓ(w)}`.
pub fn poincare_flag(t: &CartanType, p: &ParabolicType, q: &ParabolicType) -> Result<Poly> {
    p.check(t)?;
    q.check(t)?;
    if !p.is_subset_of(q) {
        return Err(Error::precondition("P is not contained in Q"));
    }
    let cartan = t.cartan();
    let wq = subgroup_series(&cartan, &q.levi)?;
    let wp = subgroup_series(&cartan, &p.levi)?;
    let (quot, rem) = wq.div_rem(&wp);
    if !rem.is_zero() {
        return Err(Error::check("P_{W_P} does not divide P_{W_Q}"));
    }
    let index = subgroup_order(&cartan, &q.levi)? / subgroup_order(&cartan, &p.levi)?;
    if index <= ENUMERATION_CAP {
        let cells = orbit_series(&cartan, &p.levi, &q.levi);
        if cells != quot {
            return Err(Error::check("coset enumeration disagrees with the quotient of Poincaré polynomials"));
        }
    }
    let flag = quot.compose_power(2);
    let roots = |s: &[usize]| -> Result<usize> {
        components(&cartan, s).iter().map(|c| Ok(classify(&cartan, c)?.positive_roots())).sum()
    };
    let expected_degree = 2 * (roots(&q.levi)? - roots(&p.levi)?);
    if flag.coeff(0) != Rational::ONE || flag.degree() != Some(expected_degree) {
        return Err(Error::check("flag Poincaré polynomial has the wrong shape"));
    }
    Ok(flag)
}

/// `dim H^{2m}(Q/P)` for `m = 0, 1, ...`.
pub fn weight_shear_cohomology(t: &CartanType, p: &ParabolicType, q: &ParabolicType) -> Result<Vec<u64>> {
    let flag = poincare_flag(t, p, q)?;
    let dims: Vec<u64> = flag
        .coeffs()
        .iter()
        .step_by(2)
        .map(|c| c.to_integer().and_then(|i| i.to_i64()).map(|v| v as u64).expect("cell counts are integers"))
        .collect();
    let rev: Vec<u64> = dims.iter().rev().copied().collect();
    if rev != dims {
        return Err(Error::check("cohomology of Q/P fails Poincaré duality"));
    }
    Ok(dims)
}

/// Scalar at which `P_{Q/P}` is evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scalar {
    Rational { value: Rational },
    /// `ζ_n^k`.
    Cyclotomic { conductor: usize, power: usize },
    /// An indeterminate.
    Generic,
}

impl FromStr for Scalar {
    type Err = Error;

    /// `generic`, a rational such as `3/2`, or `cyclotomic:n:k` for `ζ_n^k`.
    fn from_str(s: &str) -> Result<Scalar> {
        let s = s.trim();
        if s == "generic" {
            return Ok(Scalar::Generic);
        }
        if let Some(rest) = s.strip_prefix("cyclotomic:") {
            let parts: Vec<&str> = rest.split(':').collect();
            let bad = || Error::invalid(format!("q: expected cyclotomic:n:k, got {s}"));
            let [n, k] = parts.as_slice() else { return Err(bad()) };
            let conductor: usize = n.parse().map_err(|_| bad())?;
            let power: usize = k.parse().map_err(|_| bad())?;
            if conductor == 0 {
                return Err(bad());
            }
            return Ok(Scalar::Cyclotomic { conductor, power });
        }
        let value: Rational = s.parse().map_err(|_| Error::invalid(format!("q: cannot parse {s}")))?;
        Ok(Scalar::Rational { value })
    }
}

/// Value of `P_{Q/P}(q)` and whether it is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    pub polynomial: String,
    /// Coefficients of the value in `Q(ζ_n)` in powers of `ζ_n`, or of the polynomial for a generic `q`.
    pub value: Vec<Rational>,
    pub splits: bool,
}

pub fn splitting_criterion(t: &CartanType, p: &ParabolicType, q: &ParabolicType, at: &Scalar) -> Result<SplittingReport> {
    let flag = poincare_flag(t, p, q)?;
    let value = match at {
        Scalar::Generic => flag.coeffs().to_vec(),
        Scalar::Rational { value } => {
            if value.is_zero() {
                return Err(Error::precondition("q = 0 is not a unit"));
            }
            let v = flag.eval(value);
            if v.is_zero() {
                Vec::new()
            } else {
                vec![v]
            }
        }
        Scalar::Cyclotomic { conductor, power } => Cyclotomic::root_power(*conductor, *power).eval_poly(&flag).coefficients,
    };
    Ok(SplittingReport { polynomial: flag.to_string(), splits: !value.is_empty(), value })
}

/// `P_{Q/P}(q)` divides `P_{G/B}(q)`.
pub fn brion_peyre_check(t: &CartanType, p: &ParabolicType, q: &ParabolicType) -> Result<bool> {
    let full = poincare_flag(t, &ParabolicType::borel(), &ParabolicType::whole(t))?;
    let part = poincare_flag(t, p, q)?;
    Ok(full.div_rem(&part).1.is_zero())
}

/// Runs [`brion_peyre_check`] over every pair `P ⊆ Q`; returns the number of pairs checked.
pub fn brion_peyre_all_pairs(t: &CartanType) -> Result<(usize, bool)> {
    let r = t.rank();
    if r > 8 {
        return Err(Error::cap(format!("rank {r} has too many parabolic pairs")));
    }
    let mut count = 0;
    let mut ok = true;
    for qmask in 0u32..1 << r {
        let q = ParabolicType::new((0..r).filter(|i| qmask >> i & 1 == 1).collect());
        let mut pmask = qmask;
        loop {
            let p = ParabolicType::new((0..r).filter(|i| pmask >> i & 1 == 1).collect());
            ok &= brion_peyre_check(t, &p, &q)?;
            count += 1;
            if pmask == 0 {
                break;
            }
            pmask = (pmask - 1) & qmask;
        }
    }
    Ok((count, ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    fn flag(s: &str, p: &[usize], q: &[usize]) -> Poly {
        poincare_flag(&ty(s), &ParabolicType::new(p.to_vec()), &ParabolicType::new(q.to_vec())).unwrap()
    }

    #[test]
    fn small_weyl_polynomials() {
        assert_eq!(poincare_w(&ty("A1")).unwrap(), Poly::from_ints(&[1, 1]));
        assert_eq!(poincare_w(&ty("A2")).unwrap(), Poly::from_ints(&[1, 2, 2, 1]));
        let b2 = &Poly::from_ints(&[1, 1]) * &Poly::from_ints(&[1, 1, 1, 1]);
        assert_eq!(poincare_w(&ty("B2")).unwrap(), b2);
    }

    #[test]
    fn enumeration_matches_degrees_for_exceptional_types() {
        for s in ["G2", "F4", "E6", "D5", "B4", "C4"] {
            let p = poincare_w(&ty(s)).unwrap();
            let total = p.eval(&Rational::ONE);
            assert_eq!(total, Rational::from(ty(s).weyl_order() as i64), "{s}");
        }
    }

    #[test]
    fn e8_uses_the_formula() {
        let p = poincare_w(&ty("E8")).unwrap();
        assert_eq!(p.degree(), Some(120));
        assert_eq!(p.eval(&Rational::ONE), Rational::from(696_729_600i64));
    }

    #[test]
    fn flag_varieties() {
        assert_eq!(flag("A1", &[], &[0]), Poly::from_ints(&[1, 0, 1]));
        assert_eq!(flag("A2", &[], &[0, 1]), Poly::from_ints(&[1, 0, 2, 0, 2, 0, 1]));
        assert_eq!(flag("A2", &[1], &[1]), Poly::one());
        // P^2 = A2 / P_{α_2}
        assert_eq!(flag("A2", &[1], &[0, 1]), Poly::from_ints(&[1, 0, 1, 0, 1]));
    }

    #[test]
    fn flag_at_one_is_the_index() {
        let t = ty("B3");
        let cartan = t.cartan();
        for (p, q) in [(vec![], vec![0, 1, 2]), (vec![0], vec![0, 1]), (vec![2], vec![0, 1, 2])] {
            let f = flag("B3", &p, &q);
            let index = subgroup_order(&cartan, &q).unwrap() / subgroup_order(&cartan, &p).unwrap();
            assert_eq!(f.eval(&Rational::ONE), Rational::from(index as i64));
        }
    }

    #[test]
    fn flag_factorizes_through_intermediate_parabolics() {
        let t = ty("A3");
        let g = ParabolicType::whole(&t);
        let full = flag("A3", &[], &[0, 1, 2]);
        for q in [vec![0], vec![0, 1], vec![1, 2], vec![0, 2]] {
            let q = ParabolicType::new(q);
            let lower = poincare_flag(&t, &ParabolicType::borel(), &q).unwrap();
            let upper = poincare_flag(&t, &q, &g).unwrap();
            assert_eq!(&lower * &upper, full);
        }
    }

    #[test]
    fn cohomology_dims() {
        let t = ty("A2");
        let b = ParabolicType::borel();
        assert_eq!(weight_shear_cohomology(&ty("A1"), &b, &ParabolicType::whole(&ty("A1"))).unwrap(), vec![1, 1]);
        assert_eq!(weight_shear_cohomology(&t, &b, &ParabolicType::whole(&t)).unwrap(), vec![1, 2, 2, 1]);
        assert_eq!(weight_shear_cohomology(&t, &b, &b).unwrap(), vec![1]);
    }

    #[test]
    fn splitting_at_roots_of_unity() {
        let t = ty("A1");
        let (b, g) = (ParabolicType::borel(), ParabolicType::whole(&t));
        let one = splitting_criterion(&t, &b, &g, &"1".parse().unwrap()).unwrap();
        assert!(one.splits);
        assert_eq!(one.value, vec![Rational::from(2)]);
        let i = splitting_criterion(&t, &b, &g, &"cyclotomic:4:1".parse().unwrap()).unwrap();
        assert!(!i.splits);
        assert!(splitting_criterion(&t, &b, &g, &Scalar::Generic).unwrap().splits);
        assert!(splitting_criterion(&t, &b, &g, &"0".parse().unwrap()).is_err());
        // 1 + q^2 + q^4 at a primitive 6th root: ζ^2 is a primitive cube root, so the sum vanishes
        let a2 = ty("A2");
        let p2 = splitting_criterion(&a2, &ParabolicType::new(vec![1]), &ParabolicType::whole(&a2), &"cyclotomic:6:1".parse().unwrap());
        assert!(!p2.unwrap().splits);
    }

    #[test]
    fn brion_peyre_pairs() {
        assert_eq!(brion_peyre_all_pairs(&ty("A2")).unwrap(), (9, true));
        assert!(brion_peyre_all_pairs(&ty("B2")).unwrap().1);
        assert!(brion_peyre_all_pairs(&ty("G2")).unwrap().1);
    }

    #[test]
    fn p_must_lie_in_q() {
        let t = ty("A2");
        assert!(poincare_flag(&t, &ParabolicType::new(vec![0]), &ParabolicType::new(vec![1])).is_err());
        assert!(poincare_flag(&t, &ParabolicType::new(vec![5]), &ParabolicType::whole(&t)).is_err());
    }
}
