//! Arbitrary-precision integers with an inline machine-word fast path.
//!
//! Almost every matrix that shows up in bar and cochain complexes has entries
//! in `{-1, 0, 1}`, so values are kept as `i64` until an operation overflows,
//! at which point they are promoted to a heap `BigInt`. Values that fit back
//! into an `i64` are always demoted, so equality is structural.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Integer {
    Small(i64),
    Big(Box<BigInt>),
}

impl Integer {
    pub const ZERO: Integer = Integer::Small(0);
    pub const ONE: Integer = Integer::Small(1);

    pub fn from_big(b: BigInt) -> Integer {
        match b.to_i64() {
            Some(v) => Integer::Small(v),
            None => Integer::Big(Box::new(b)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Integer::Small(v) => BigInt::from(*v),
            Integer::Big(b) => (**b).clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Integer::Small(v) => Some(*v),
            Integer::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Integer::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Integer::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Integer::Small(v) => *v < 0,
            Integer::Big(b) => b.is_negative(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Integer::Small(v) => v.signum() as i32,
            Integer::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Integer {
        match self {
            Integer::Small(v) => match v.checked_abs() {
                Some(a) => Integer::Small(a),
                None => Integer::from_big(BigInt::from(*v).abs()),
            },
            Integer::Big(b) => Integer::from_big(b.abs()),
        }
    }

    pub fn gcd(&self, other: &Integer) -> Integer {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => {
                let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
                while y != 0 {
                    let t = x % y;
                    x = y;
                    y = t;
                }
                match i64::try_from(x) {
                    Ok(v) => Integer::Small(v),
                    Err(_) => Integer::from_big(BigInt::from(x)),
                }
            }
            _ => Integer::from_big(self.to_big().gcd(&other.to_big())),
        }
    }

    pub fn lcm(&self, other: &Integer) -> Integer {
        if self.is_zero() || other.is_zero() {
            return Integer::ZERO;
        }
        let g = self.gcd(other);
        (self.div_exact(&g) * other).abs()
    }

    /// Floor division and the matching non-negative remainder (for positive divisors).
    pub fn div_mod_floor(&self, d: &Integer) -> (Integer, Integer) {
        assert!(!d.is_zero(), "division by zero");
        if let (Integer::Small(a), Integer::Small(b)) = (self, d) {
            if let (Some(q), Some(r)) = (a.checked_div_euclid(*b), a.checked_rem_euclid(*b)) {
                // Euclidean division agrees with floor division when b > 0.
                if *b > 0 {
                    return (Integer::Small(q), Integer::Small(r));
                }
            }
        }
        let (q, r) = self.to_big().div_mod_floor(&d.to_big());
        (Integer::from_big(q), Integer::from_big(r))
    }

    /// Division rounding toward zero.
    pub fn div_trunc(&self, d: &Integer) -> Integer {
        assert!(!d.is_zero(), "division by zero");
        if let (Integer::Small(a), Integer::Small(b)) = (self, d) {
            if let Some(q) = a.checked_div(*b) {
                return Integer::Small(q);
            }
        }
        Integer::from_big(self.to_big() / d.to_big())
    }

    /// Division that is known to be exact.
    pub fn div_exact(&self, d: &Integer) -> Integer {
        let q = self.div_trunc(d);
        debug_assert!((&q * d) == *self, "inexact division {self} / {d}");
        q
    }

    pub fn is_divisible_by(&self, d: &Integer) -> bool {
        if d.is_zero() {
            return self.is_zero();
        }
        self.div_mod_floor(&d.abs()).1.is_zero()
    }

    /// Extended gcd: returns (g, s, t) with g = s*self + t*other, g >= 0.
    pub fn ext_gcd(&self, other: &Integer) -> (Integer, Integer, Integer) {
        let (mut old_r, mut r) = (self.clone(), other.clone());
        let (mut old_s, mut s) = (Integer::ONE, Integer::ZERO);
        let (mut old_t, mut t) = (Integer::ZERO, Integer::ONE);
        while !r.is_zero() {
            let q = old_r.div_trunc(&r);
            let nr = &old_r - &(&q * &r);
            old_r = std::mem::replace(&mut r, nr);
            let ns = &old_s - &(&q * &s);
            old_s = std::mem::replace(&mut s, ns);
            let nt = &old_t - &(&q * &t);
            old_t = std::mem::replace(&mut t, nt);
        }
        if old_r.is_negative() {
            (-old_r, -old_s, -old_t)
        } else {
            (old_r, old_s, old_t)
        }
    }

    pub fn pow(&self, exp: u32) -> Integer {
        let mut acc = Integer::ONE;
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Residue in `[0, n)`.
    pub fn rem_u64(&self, n: u64) -> u64 {
        match self {
            Integer::Small(v) => {
                let m = i128::from(n);
                (i128::from(*v).rem_euclid(m)) as u64
            }
            Integer::Big(b) => {
                let r = b.mod_floor(&BigInt::from(n));
                r.to_u64().expect("residue fits")
            }
        }
    }
}

impl Default for Integer {
    fn default() -> Self {
        Integer::ZERO
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Integer {
            fn from(v: $t) -> Integer {
                match i64::try_from(v) {
                    Ok(s) => Integer::Small(s),
                    Err(_) => Integer::from_big(BigInt::from(v)),
                }
            }
        }
    )*};
}
from_prim!(i8, i16, i32, i64, i128, u8, u16, u32, u64, u128, usize, isize);

impl From<BigInt> for Integer {
    fn from(b: BigInt) -> Integer {
        Integer::from_big(b)
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integer::Small(v) => write!(f, "{v}"),
            Integer::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Integer {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Integer::from_big(s.trim().parse::<BigInt>()?))
    }
}

impl<'a> Add<&'a Integer> for &'a Integer {
    type Output = Integer;
    fn add(self, rhs: &'a Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_add(*b) {
                return Integer::Small(c);
            }
        }
        Integer::from_big(self.to_big() + rhs.to_big())
    }
}

impl<'a> Sub<&'a Integer> for &'a Integer {
    type Output = Integer;
    fn sub(self, rhs: &'a Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_sub(*b) {
                return Integer::Small(c);
            }
        }
        Integer::from_big(self.to_big() - rhs.to_big())
    }
}

impl<'a> Mul<&'a Integer> for &'a Integer {
    type Output = Integer;
    fn mul(self, rhs: &'a Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_mul(*b) {
                return Integer::Small(c);
            }
        }
        Integer::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for &Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        match self {
            Integer::Small(v) => match v.checked_neg() {
                Some(n) => Integer::Small(n),
                None => Integer::from_big(-BigInt::from(*v)),
            },
            Integer::Big(b) => Integer::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Integer> for Integer {
            type Output = Integer;
            fn $m(self, rhs: Integer) -> Integer {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Integer> for Integer {
            type Output = Integer;
            fn $m(self, rhs: &'a Integer) -> Integer {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Integer> for &'a Integer {
            type Output = Integer;
            fn $m(self, rhs: Integer) -> Integer {
                self.$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&Integer> for Integer {
    fn add_assign(&mut self, rhs: &Integer) {
        *self = &*self + rhs;
    }
}
impl SubAssign<&Integer> for Integer {
    fn sub_assign(&mut self, rhs: &Integer) {
        *self = &*self - rhs;
    }
}
impl MulAssign<&Integer> for Integer {
    fn mul_assign(&mut self, rhs: &Integer) {
        *self = &*self * rhs;
    }
}

impl Sum for Integer {
    fn sum<I: Iterator<Item = Integer>>(iter: I) -> Integer {
        iter.fold(Integer::ZERO, |a, b| a + b)
    }
}

impl Product for Integer {
    fn product<I: Iterator<Item = Integer>>(iter: I) -> Integer {
        iter.fold(Integer::ONE, |a, b| a * b)
    }
}

impl Zero for Integer {
    fn zero() -> Self {
        Integer::ZERO
    }
    fn is_zero(&self) -> bool {
        Integer::is_zero(self)
    }
}

impl Serialize for Integer {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Integer::Small(v) => s.serialize_i64(*v),
            Integer::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Integer {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(Integer::Small(v)),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Integer::from(i64::MAX) + Integer::ONE;
        assert!(matches!(big, Integer::Big(_)));
        let back = big - Integer::ONE;
        assert_eq!(back, Integer::Small(i64::MAX));
        let sq = Integer::from(i64::MIN) * Integer::from(i64::MIN);
        assert_eq!(sq.to_string(), "85070591730234615865843651857942052864");
        assert_eq!(-Integer::from(i64::MIN), Integer::from(9223372036854775808i128));
    }

    #[test]
    fn gcd_and_ext_gcd() {
        let a = Integer::from(240);
        let b = Integer::from(-46);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, Integer::from(2));
        assert_eq!(&s * &a + &t * &b, g);
        assert_eq!(Integer::from(i64::MIN).gcd(&Integer::ZERO).to_string(), "9223372036854775808");
    }

    #[test]
    fn floor_division() {
        let (q, r) = Integer::from(-7).div_mod_floor(&Integer::from(3));
        assert_eq!((q, r), (Integer::from(-3), Integer::from(2)));
        assert_eq!(Integer::from(-7).rem_u64(5), 3);
    }

    #[test]
    fn serde_round_trip() {
        let v = vec![Integer::from(3), Integer::from(i128::MAX)];
        let s = serde_json::to_string(&v).unwrap();
        let back: Vec<Integer> = serde_json::from_str(&s).unwrap();
        assert_eq!(v, back);
    }
}
