//! Bounded cohomologically indexed complexes of free modules.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::abelian::AbelianGroupStructure;
use super::echelon::{kernel_basis, rank, rank_of_rows};
use super::matrix::{ExactMatrix, Ring, SparseRow};
use super::snf::invariant_factors;
use crate::error::{Error, Result};

/// `term(d)` for `d` in `[lo, hi]`, `differential(d): term(d) -> term(d+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplex {
    ring: Ring,
    lo: i64,
    dims: Vec<usize>,
    /// `diffs[k]` is the differential out of degree `lo + k`.
    diffs: Vec<ExactMatrix>,
    /// Optional internal weight of every basis vector of every term.
    weights: Option<Vec<Vec<i64>>>,
}

impl ChainComplex {
    /// Builds a complex from term ranks starting at `lo` and the differentials between them.
    pub fn new(ring: Ring, lo: i64, dims: Vec<usize>, diffs: Vec<ExactMatrix>) -> Result<ChainComplex> {
        if dims.is_empty() {
            return Err(Error::invalid("complex needs at least one term"));
        }
        if diffs.len() + 1 != dims.len() {
            return Err(Error::invalid(format!("{} terms need {} differentials, got {}", dims.len(), dims.len() - 1, diffs.len())));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.ring() != ring {
                return Err(Error::invalid(format!("differential {k} is over {}, complex over {ring}", d.ring())));
            }
            if d.cols() != dims[k] || d.rows() != dims[k + 1] {
                return Err(Error::invalid(format!(
                    "differential out of degree {} has shape {}x{}, expected {}x{}",
                    lo + k as i64,
                    d.rows(),
                    d.cols(),
                    dims[k + 1],
                    dims[k]
                )));
            }
        }
        Ok(ChainComplex { ring, lo, dims, diffs, weights: None })
    }

    /// The single-term complex.
    pub fn concentrated(ring: Ring, degree: i64, dim: usize) -> ChainComplex {
        ChainComplex { ring, lo: degree, dims: vec![dim], diffs: Vec::new(), weights: None }
    }

    pub fn with_weights(mut self, weights: Vec<Vec<i64>>) -> Result<ChainComplex> {
        if weights.len() != self.dims.len() || weights.iter().zip(&self.dims).any(|(w, d)| w.len() != *d) {
            return Err(Error::invalid("weight labels do not match term ranks"));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn support(&self) -> (i64, i64) {
        (self.lo, self.hi())
    }

    fn index(&self, d: i64) -> Option<usize> {
        (d >= self.lo && d <= self.hi()).then(|| (d - self.lo) as usize)
    }

    pub fn term_dim(&self, d: i64) -> usize {
        self.index(d).map_or(0, |k| self.dims[k])
    }

    pub fn term_weights(&self, d: i64) -> Option<&[i64]> {
        let k = self.index(d)?;
        self.weights.as_ref().map(|w| w[k].as_slice())
    }

    pub fn weights(&self) -> Option<&Vec<Vec<i64>>> {
        self.weights.as_ref()
    }

    /// The differential out of degree `d` (zero outside the support).
    pub fn differential(&self, d: i64) -> ExactMatrix {
        match self.index(d) {
            Some(k) if k < self.diffs.len() => self.diffs[k].clone(),
            _ => ExactMatrix::zeros(self.ring, self.term_dim(d + 1), self.term_dim(d)),
        }
    }

    fn differential_ref(&self, d: i64) -> Option<&ExactMatrix> {
        self.index(d).and_then(|k| self.diffs.get(k))
    }

    /// Checks `d(k+1) * d(k) = 0` everywhere.
    pub fn check_d_squared(&self) -> Result<()> {
        for k in 1..self.diffs.len() {
            let prod = self.diffs[k].mul(&self.diffs[k - 1])?;
            if !prod.is_zero() {
                return Err(Error::check(format!("d^2 != 0 out of degree {}", self.lo + k as i64 - 1)));
            }
        }
        Ok(())
    }

    fn rank_at(&self, d: i64) -> Result<usize> {
        match self.differential_ref(d) {
            Some(m) => rank(m),
            None => Ok(0),
        }
    }

    /// `H^d` of the complex.
    pub fn cohomology(&self, d: i64) -> Result<AbelianGroupStructure> {
        let dim = self.term_dim(d);
        match self.ring {
            Ring::Integers => {
                let out_rank = self.rank_at(d)?;
                let torsion = match self.differential_ref(d - 1) {
                    Some(m) => invariant_factors(m)?,
                    None => Vec::new(),
                };
                Ok(AbelianGroupStructure {
                    free_rank: dim - out_rank - torsion.len(),
                    torsion: torsion.into_iter().filter(|x| !x.is_one()).collect(),
                })
            }
            r if r.is_field() => Ok(AbelianGroupStructure::free(dim - self.rank_at(d)? - self.rank_at(d - 1)?)),
            r => Err(Error::unsupported(format!("cohomology over {r}"))),
        }
    }

    /// `dim H^d` over a field (rank of `H^d` over Z).
    pub fn betti(&self, d: i64) -> Result<usize> {
        Ok(self.cohomology(d)?.free_rank)
    }

    /// Betti numbers for every degree of the support.
    pub fn betti_numbers(&self) -> Result<BTreeMap<i64, usize>> {
        (self.lo..=self.hi()).map(|d| Ok((d, self.betti(d)?))).collect()
    }

    /// `dim H^d` split by internal weight (field coefficients, weighted complexes only).
    pub fn betti_by_weight(&self, d: i64) -> Result<BTreeMap<i64, usize>> {
        let weights = self.weights.as_ref().ok_or_else(|| Error::precondition("complex carries no weights"))?;
        if !self.ring.is_field() {
            return Err(Error::unsupported("weighted cohomology needs a field"));
        }
        let empty = Vec::new();
        let w_here = self.index(d).map_or(&empty, |k| &weights[k]);
        let w_prev = self.index(d - 1).map_or(&empty, |k| &weights[k]);
        let mut out = BTreeMap::new();
        let mut all: Vec<i64> = w_here.clone();
        all.sort_unstable();
        all.dedup();
        for w in all {
            let here: Vec<usize> = (0..w_here.len()).filter(|&i| w_here[i] == w).collect();
            let prev: Vec<usize> = (0..w_prev.len()).filter(|&i| w_prev[i] == w).collect();
            let out_rank = match self.differential_ref(d) {
                Some(m) => {
                    let cols = m.transpose();
                    let sel: Vec<SparseRow> = here.iter().map(|&i| cols.row(i).clone()).collect();
                    rank_of_rows(self.ring, &sel)?
                }
                None => 0,
            };
            let in_rank = match self.differential_ref(d - 1) {
                Some(m) => {
                    let cols = m.transpose();
                    let sel: Vec<SparseRow> = prev.iter().map(|&i| cols.row(i).clone()).collect();
                    rank_of_rows(self.ring, &sel)?
                }
                None => 0,
            };
            let b = here.len() - out_rank - in_rank;
            if b > 0 {
                out.insert(w, b);
            }
        }
        Ok(out)
    }

    /// Cycles in degree `d` as the columns of a matrix.
    pub fn cycles(&self, d: i64) -> Result<ExactMatrix> {
        kernel_basis(&self.differential(d))
    }

    /// Degrees with nonzero cohomology, as `[lo, hi]`; `None` if acyclic.
    pub fn amplitude(&self) -> Result<Option<(i64, i64)>> {
        let mut nz = Vec::new();
        for d in self.lo..=self.hi() {
            if !self.cohomology(d)?.is_trivial() {
                nz.push(d);
            }
        }
        Ok(nz.first().map(|lo| (*lo, *nz.last().unwrap())))
    }

    /// Keeps the terms in `[lo, hi]` (brutal truncation).
    pub fn truncate(&self, lo: i64, hi: i64) -> Result<ChainComplex> {
        let lo = lo.max(self.lo);
        let hi = hi.min(self.hi());
        if lo > hi {
            return Err(Error::invalid("empty truncation"));
        }
        let a = (lo - self.lo) as usize;
        let b = (hi - self.lo) as usize;
        Ok(ChainComplex {
            ring: self.ring,
            lo,
            dims: self.dims[a..=b].to_vec(),
            diffs: self.diffs[a..b].to_vec(),
            weights: self.weights.as_ref().map(|w| w[a..=b].to_vec()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Integer;

    #[test]
    fn times_two() {
        let d = ExactMatrix::from_dense(Ring::Integers, &[vec![2]]).unwrap();
        let c = ChainComplex::new(Ring::Integers, 0, vec![1, 1], vec![d]).unwrap();
        assert_eq!(c.cohomology(1).unwrap(), AbelianGroupStructure { free_rank: 0, torsion: vec![Integer::from(2)] });
        assert!(c.cohomology(0).unwrap().is_trivial());
    }

    #[test]
    fn identity_is_acyclic() {
        let c = ChainComplex::new(Ring::Rationals, -1, vec![2, 2], vec![ExactMatrix::identity(Ring::Rationals, 2)]).unwrap();
        assert_eq!(c.amplitude().unwrap(), None);
        c.check_d_squared().unwrap();
    }

    #[test]
    fn shape_checked() {
        let d = ExactMatrix::zeros(Ring::Rationals, 2, 3);
        assert!(ChainComplex::new(Ring::Rationals, 0, vec![2, 3], vec![d]).is_err());
    }
}
