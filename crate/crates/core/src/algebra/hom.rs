//! Graded homomorphism spaces between one-sided modules.

use std::collections::BTreeMap;

use super::graded::GradedAlgebra;
use super::module::{compose, Columns, GradedModule, Side};
use crate::error::{Error, Result};
use crate::exact::vector::Acc;
use crate::exact::{Ring, Rref};

/// `Hom(m, n)` split by the weight shift `w`: maps sending weight `k` into weight `k + w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedHom {
    pub source_dim: usize,
    pub target_dim: usize,
    pub components: BTreeMap<i64, Vec<Columns>>,
}

impl GradedHom {
    pub fn dim(&self, w: i64) -> usize {
        self.components.get(&w).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.components.iter().map(|(w, b)| (*w, b.len())).collect()
    }
}

/// All module maps `m -> n` commuting with the algebra action.
pub fn graded_hom(alg: &GradedAlgebra, m: &GradedModule, n: &GradedModule) -> Result<GradedHom> {
    if m.side != n.side {
        return Err(Error::precondition("graded_hom needs modules on the same side"));
    }
    let shifts: std::collections::BTreeSet<i64> =
        m.weights.iter().flat_map(|a| n.weights.iter().map(move |b| b - a)).collect();
    let mut components = BTreeMap::new();
    for w in shifts {
        // unknown F[r][s] for source s, target r of matching weight and block, keyed by (s, r)
        let mut var = BTreeMap::new();
        for s in 0..m.dim() {
            for r in 0..n.dim() {
                if n.weights[r] == m.weights[s] + w && n.blocks[r] == m.blocks[s] {
                    let k = var.len();
                    var.insert((s, r), k);
                }
            }
        }
        if var.is_empty() {
            continue;
        }
        let col = |s: usize| var.range((s, 0)..(s + 1, 0)).map(|(&(_, r), &k)| (r, k));
        let mut eqs = Vec::new();
        for a in 0..alg.dim() {
            // f(s.a) - f(s).a = 0 for every source basis vector s
            for s in 0..m.dim() {
                let mut row: BTreeMap<usize, Acc> = BTreeMap::new();
                for (t, c) in &m.action[a][s] {
                    for (r, k) in col(*t) {
                        row.entry(r).or_default().add(k, c);
                    }
                }
                for (r0, k) in col(s) {
                    for (r, c) in &n.action[a][r0] {
                        row.entry(*r).or_default().add(k, &-c);
                    }
                }
                eqs.extend(row.into_values().map(Acc::finish).filter(|e| !e.is_empty()));
            }
        }
        let rref = Rref::of_rows(Ring::Rationals, var.len(), eqs)?;
        let keys: Vec<(usize, usize)> = var.keys().copied().collect();
        let basis: Vec<Columns> = rref
            .kernel()?
            .into_iter()
            .map(|v| {
                let mut cols = vec![Acc::new(); m.dim()];
                for (k, x) in v {
                    let (s, r) = keys[k];
                    cols[s].add(r, &x);
                }
                cols.into_iter().map(Acc::finish).collect()
            })
            .collect();
        if !basis.is_empty() {
            components.insert(w, basis);
        }
    }
    Ok(GradedHom { source_dim: m.dim(), target_dim: n.dim(), components })
}

/// Composition in the order maps are applied: first `f`, then `g`.
pub fn then(f: &Columns, g: &Columns) -> Columns {
    compose(g, f)
}

/// The simple right modules `L_i`, one per idempotent.
pub fn simple_modules(alg: &GradedAlgebra) -> Vec<GradedModule> {
    (0..alg.num_idempotents()).map(|i| GradedModule::simple(alg, i, Side::Right)).collect()
}

/// Right projectives `E_i = e_i A` and left projectives `E^l_i = A e_i`.
pub fn indecomposable_projectives(alg: &GradedAlgebra) -> (Vec<GradedModule>, Vec<GradedModule>) {
    let n = alg.num_idempotents();
    (
        (0..n).map(|i| GradedModule::right_projective(alg, i)).collect(),
        (0..n).map(|i| GradedModule::left_projective(alg, i)).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::examples::*;

    #[test]
    fn endomorphisms_of_dual_numbers() {
        let a = dual_numbers().build().unwrap();
        let e = GradedModule::right_projective(&a, 0);
        let h = graded_hom(&a, &e, &e).unwrap();
        assert_eq!(h.dim(0), 1);
        assert_eq!(h.dim(1), 1);
        assert_eq!(h.dims().len(), 2);
    }

    #[test]
    fn semisimple_has_no_cross_maps() {
        let a = semisimple(2).build().unwrap();
        let (e, _) = indecomposable_projectives(&a);
        let h = graded_hom(&a, &e[0], &e[1]).unwrap();
        assert!(h.components.is_empty());
        assert_eq!(simple_modules(&a).len(), 2);
    }

    /// `Hom(E_j, E_i)_w` is `e_i A_w e_j`, acting by left multiplication.
    #[test]
    fn hom_blocks_match_algebra_blocks() {
        for s in [a2_path(), a3_path(), a3_zero_relation(), truncated_cubic()] {
            let a = s.build().unwrap();
            let (e, _) = indecomposable_projectives(&a);
            for i in 0..a.num_idempotents() {
                for j in 0..a.num_idempotents() {
                    let h = graded_hom(&a, &e[j], &e[i]).unwrap();
                    for w in 0..=a.max_weight() {
                        assert_eq!(h.dim(i64::from(w)), a.block(i, j, w).len());
                    }
                }
            }
        }
    }
}
