use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::ExactMatrix;
use super::snf::{invariant_factors, sparse_invariant_factors};
use super::Integer;
use crate::error::Result;

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `1 < d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupStructure {
    pub free_rank: usize,
    pub torsion: Vec<Integer>,
}

impl AbelianGroupStructure {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupStructure { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: i64) -> Self {
        Self::from_cyclic_orders(0, &[Integer::from(n)])
    }

    /// Normalizes an arbitrary direct sum of cyclic groups (orders 0 mean Z).
    pub fn from_cyclic_orders(free_rank: usize, orders: &[Integer]) -> Self {
        let mut free = free_rank;
        let rows = orders
            .iter()
            .filter(|o| {
                if o.is_zero() {
                    free += 1;
                }
                !o.is_zero()
            })
            .enumerate()
            .map(|(i, o)| vec![(i, o.abs())])
            .collect::<Vec<_>>();
        let n = rows.len();
        let factors = sparse_invariant_factors(rows, n);
        AbelianGroupStructure { free_rank: free, torsion: factors.into_iter().filter(|d| !d.is_one()).collect() }
    }

    /// Cokernel of the integer matrix whose rows are relations among `m.cols()` generators.
    pub fn cokernel_of_rows(m: &ExactMatrix) -> Result<Self> {
        let f = invariant_factors(m)?;
        Ok(AbelianGroupStructure {
            free_rank: m.cols() - f.len(),
            torsion: f.into_iter().filter(|d| !d.is_one()).collect(),
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<Integer> {
        self.is_finite().then(|| self.torsion.iter().cloned().product())
    }

    /// Direct sum.
    pub fn sum(&self, other: &Self) -> Self {
        let mut all = self.torsion.clone();
        all.extend(other.torsion.iter().cloned());
        Self::from_cyclic_orders(self.free_rank + other.free_rank, &all)
    }

    /// Exponent of the torsion part (1 when torsion-free).
    pub fn exponent(&self) -> Integer {
        self.torsion.last().cloned().unwrap_or(Integer::ONE)
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}
