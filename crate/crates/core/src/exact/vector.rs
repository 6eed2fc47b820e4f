//! Helpers for sparse rational vectors (`SparseRow`).

use std::collections::BTreeMap;

use super::matrix::SparseRow;
use super::Rational;

/// Accumulator for sparse linear combinations.
#[derive(Clone, Debug, Default)]
pub struct Acc(BTreeMap<usize, Rational>);

impl Acc {
    pub fn new() -> Acc {
        Acc::default()
    }

    pub fn add(&mut self, i: usize, v: &Rational) {
        if v.is_zero() {
            return;
        }
        let e = self.0.entry(i).or_default();
        *e += v;
        if e.is_zero() {
            self.0.remove(&i);
        }
    }

    /// `self += f * v`.
    pub fn add_scaled(&mut self, f: &Rational, v: &[(usize, Rational)]) {
        if f.is_zero() {
            return;
        }
        for (i, x) in v {
            self.add(*i, &(f * x));
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn finish(self) -> SparseRow {
        self.0.into_iter().collect()
    }
}

pub fn unit(i: usize) -> SparseRow {
    vec![(i, Rational::ONE)]
}

pub fn scale(v: &[(usize, Rational)], f: &Rational) -> SparseRow {
    if f.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * f)).collect()
}

pub fn add(a: &[(usize, Rational)], b: &[(usize, Rational)]) -> SparseRow {
    let mut acc = Acc::new();
    acc.add_scaled(&Rational::ONE, a);
    acc.add_scaled(&Rational::ONE, b);
    acc.finish()
}

pub fn sub(a: &[(usize, Rational)], b: &[(usize, Rational)]) -> SparseRow {
    let mut acc = Acc::new();
    acc.add_scaled(&Rational::ONE, a);
    acc.add_scaled(&-Rational::ONE, b);
    acc.finish()
}

pub fn coeff(v: &[(usize, Rational)], i: usize) -> Rational {
    match v.binary_search_by_key(&i, |(c, _)| *c) {
        Ok(k) => v[k].1.clone(),
        Err(_) => Rational::ZERO,
    }
}
