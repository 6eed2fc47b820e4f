//! Twisted Hochschild homology: cyclic bar complexes, the resolution-based
//! computation, and Hochschild classes of endomorphisms of projectives.
//!
//! Twists act on the right: `HH_0(A, M, F) = M / span{a m - m F(a)}`.

pub mod resolution;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::module::{apply, compose, Columns, GradedBimodule, GradedModule, Side};
use crate::algebra::tensor::TupleBasis;
use crate::algebra::{AlgebraMap, GradedAlgebra};
use crate::error::{Error, Result};
use crate::exact::vector::{unit, Acc};
use crate::exact::echelon::rank_of_rows;
use crate::exact::{ChainComplex, ExactMatrix, Rational, Ring, Rref, SparseRow};

pub use resolution::{minimal_resolution, FreeModule, Generator, MinimalResolution};

/// `M` with right action `m * a = m F(a)`.
pub fn twist_right(alg: &GradedAlgebra, m: &GradedBimodule, f: &AlgebraMap) -> Result<GradedBimodule> {
    f.check(alg)?;
    let right: Vec<Columns> = (0..alg.dim())
        .map(|a| {
            let mut cols = vec![Acc::new(); m.dim()];
            for (c, x) in &f.images[a] {
                for (v, col) in m.right[*c].iter().enumerate() {
                    cols[v].add_scaled(x, col);
                }
            }
            cols.into_iter().map(Acc::finish).collect()
        })
        .collect();
    let mut right_blocks = vec![usize::MAX; m.dim()];
    for i in 0..alg.num_idempotents() {
        for (v, col) in right[alg.idempotent(i)].iter().enumerate() {
            if *col == unit(v) {
                right_blocks[v] = i;
            }
        }
    }
    if right_blocks.contains(&usize::MAX) {
        return Err(Error::check("twisted right action does not split into idempotent blocks"));
    }
    let t = GradedBimodule { right, right_blocks, ..m.clone() };
    t.validate(alg)?;
    Ok(t)
}

fn assemble(ring: Ring, lo: i64, dims: Vec<usize>, cols: Vec<Columns>, weights: Vec<Vec<i64>>) -> Result<ChainComplex> {
    let diffs = cols
        .iter()
        .enumerate()
        .map(|(k, c)| ExactMatrix::from_columns(ring, dims[k + 1], c))
        .collect::<Result<Vec<_>>>()?;
    ChainComplex::new(ring, lo, dims, diffs)?.with_weights(weights)
}

/// Hochschild complex of a bimodule on `[-depth, 0]`; term `-n` has basis `a_0 ⊗ ... ⊗ a_{n-1} ⊗ m`.
pub fn hochschild_complex(alg: &GradedAlgebra, m: &GradedBimodule, depth: usize) -> Result<ChainComplex> {
    let all: Vec<usize> = (0..alg.dim()).collect();
    let bases: Vec<TupleBasis> = (0..=depth).map(|n| TupleBasis::product(&vec![all.clone(); n], None)).collect();
    let dm = m.dim();
    let idx = |t: usize, v: usize| t * dm + v;
    let weights: Vec<Vec<i64>> = bases
        .iter()
        .rev()
        .map(|b| {
            let tw = b.weights(alg);
            tw.iter().flat_map(|w| m.weights.iter().map(move |x| w + x)).collect()
        })
        .collect();
    let mut cols_by_degree = Vec::new();
    for n in (1..=depth).rev() {
        let (src, dst) = (&bases[n], &bases[n - 1]);
        let mut cols = Vec::with_capacity(src.len() * dm);
        for t in 0..src.len() {
            let a = src.get(t);
            for v in 0..dm {
                let mut acc = Acc::new();
                // d_0: a_1 ⊗ ... ⊗ m a_0
                let t0 = dst.position(&a[1..]).expect("tail word");
                for (w, x) in &m.right[a[0]][v] {
                    acc.add(idx(t0, *w), x);
                }
                // d_i: merge a_{i-1} a_i
                for i in 1..n {
                    let sign = if i % 2 == 0 { Rational::ONE } else { -Rational::ONE };
                    for (c, x) in alg.mul_basis(a[i - 1], a[i]) {
                        let mut w: Vec<usize> = a[..i - 1].to_vec();
                        w.push(*c);
                        w.extend_from_slice(&a[i + 1..]);
                        acc.add(idx(dst.position(&w).expect("merged word"), v), &(&sign * x));
                    }
                }
                // d_n: a_0 ⊗ ... ⊗ a_{n-2} ⊗ a_{n-1} m
                let sign = if n % 2 == 0 { Rational::ONE } else { -Rational::ONE };
                let tn = dst.position(&a[..n - 1]).expect("head word");
                for (w, x) in &m.left[a[n - 1]][v] {
                    acc.add(idx(tn, *w), &(&sign * x));
                }
                cols.push(acc.finish());
            }
        }
        cols_by_degree.push(cols);
    }
    let dims = bases.iter().rev().map(|b| b.len() * dm).collect();
    assemble(Ring::Rationals, -(depth as i64), dims, cols_by_degree, weights)
}

/// Cyclic bar complex computing `HH(A, M, F)` on `[-depth, 0]`.
pub fn cyclic_bar(alg: &GradedAlgebra, m: &GradedBimodule, f: &AlgebraMap, depth: usize) -> Result<ChainComplex> {
    hochschild_complex(alg, &twist_right(alg, m, f)?, depth)
}

/// Minimal projective resolution of `A` as a right `A^op ⊗ A`-module.
pub fn minimal_bimodule_resolution(alg: &GradedAlgebra, length: usize) -> Result<(GradedAlgebra, MinimalResolution)> {
    let env = alg.enveloping();
    let reg = GradedBimodule::regular(alg).as_enveloping_module(alg);
    let res = minimal_resolution(&env, &reg, length)?;
    Ok((env, res))
}

/// `P ⊗_{A^e} M` for a bimodule resolution `P` of `A`, on `[-(terms - 1), 0]`.
pub fn resolution_complex(alg: &GradedAlgebra, res: &MinimalResolution, m: &GradedBimodule) -> Result<ChainComplex> {
    let li = alg.num_idempotents();
    let na = alg.dim();
    // generator g of block (i, j) pairs with e_j M e_i
    let layout: Vec<Vec<(usize, usize)>> = res
        .terms
        .iter()
        .map(|p| {
            let mut out = Vec::new();
            for (g, gen) in p.gens.iter().enumerate() {
                let (i, j) = (gen.block / li, gen.block % li);
                for v in 0..m.dim() {
                    if m.left_blocks[v] == j && m.right_blocks[v] == i {
                        out.push((g, v));
                    }
                }
            }
            out
        })
        .collect();
    let pos: Vec<BTreeMap<(usize, usize), usize>> =
        layout.iter().map(|l| l.iter().enumerate().map(|(k, p)| (*p, k)).collect()).collect();
    let top = res.terms.len();
    if top == 0 {
        return Ok(ChainComplex::concentrated(Ring::Rationals, 0, 0));
    }
    let mut cols_by_degree = Vec::new();
    for n in (1..top).rev() {
        let q = &res.terms[n - 1];
        let cols = layout[n]
            .iter()
            .map(|&(g, v)| {
                let mut acc = Acc::new();
                for (k, x) in &res.images[n][g] {
                    let (g2, beta) = q.basis(*k);
                    let (a, b) = (beta / na, beta % na);
                    // (a ⊗ b) acts on M by m -> b m a
                    let img = apply(&m.right[a], &apply(&m.left[b], &unit(v)));
                    for (w, y) in img {
                        acc.add(pos[n - 1][&(g2, w)], &(x * &y));
                    }
                }
                acc.finish()
            })
            .collect();
        cols_by_degree.push(cols);
    }
    let weights = layout
        .iter()
        .rev()
        .enumerate()
        .map(|(k, l)| {
            let p = &res.terms[top - 1 - k];
            l.iter().map(|&(g, v)| p.gens[g].weight + m.weights[v]).collect()
        })
        .collect();
    let dims = layout.iter().rev().map(Vec::len).collect();
    assemble(Ring::Rationals, -((top - 1) as i64), dims, cols_by_degree, weights)
}

/// `{degree -> {weight -> dim}}` of `HH(A, M, F)` in degrees `[-depth, 0]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HochschildReport {
    pub degrees: BTreeMap<i64, BTreeMap<i64, usize>>,
    pub depth: usize,
    /// The bimodule resolution of `A` terminated within the computed range.
    pub resolution_complete: bool,
    pub resolution_length: usize,
}

impl HochschildReport {
    pub fn dim(&self, degree: i64) -> usize {
        self.degrees.get(&degree).map_or(0, |w| w.values().sum())
    }
}

fn weight_table(c: &ChainComplex, lo: i64) -> Result<BTreeMap<i64, BTreeMap<i64, usize>>> {
    let mut out = BTreeMap::new();
    for d in lo..=0 {
        if d < c.lo() {
            out.insert(d, BTreeMap::new());
            continue;
        }
        out.insert(d, c.betti_by_weight(d)?);
    }
    Ok(out)
}

/// Hochschild homology through the minimal bimodule resolution.
pub fn hochschild_homology(alg: &GradedAlgebra, m: &GradedBimodule, f: &AlgebraMap, depth: usize) -> Result<HochschildReport> {
    let twisted = twist_right(alg, m, f)?;
    let (_, res) = minimal_bimodule_resolution(alg, depth + 1)?;
    let c = resolution_complex(alg, &res, &twisted)?;
    Ok(HochschildReport {
        degrees: weight_table(&c, -(depth as i64))?,
        depth,
        resolution_complete: res.complete,
        resolution_length: res.length(),
    })
}

/// The same table from the cyclic bar complex (reliable above `-depth`, so one extra term is built).
pub fn hochschild_homology_bar(alg: &GradedAlgebra, m: &GradedBimodule, f: &AlgebraMap, depth: usize) -> Result<HochschildReport> {
    let c = cyclic_bar(alg, m, f, depth + 1)?;
    Ok(HochschildReport { degrees: weight_table(&c, -(depth as i64))?, depth, resolution_complete: false, resolution_length: 0 })
}

/// `dim M / span{a m - m F(a)}`, computed as a plain cokernel.
pub fn h0_cokernel(alg: &GradedAlgebra, m: &GradedBimodule, f: &AlgebraMap) -> Result<usize> {
    let mut rows = Vec::new();
    for a in 0..alg.dim() {
        let fa = &f.images[a];
        for v in 0..m.dim() {
            let mut acc = Acc::new();
            acc.add_scaled(&Rational::ONE, &m.left[a][v]);
            for (c, x) in fa {
                acc.add_scaled(&-x, &m.right[*c][v]);
            }
            rows.push(acc.finish());
        }
    }
    Ok(m.dim() - rank_of_rows(Ring::Rationals, &rows)?)
}

/// Normal forms in `A / [A, A]`.
pub struct TraceSpace {
    commutators: Rref,
}

impl TraceSpace {
    pub fn new(alg: &GradedAlgebra) -> Result<TraceSpace> {
        let mut rows = Vec::new();
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let mut acc = Acc::new();
                acc.add_scaled(&Rational::ONE, alg.mul_basis(a, b));
                acc.add_scaled(&-Rational::ONE, alg.mul_basis(b, a));
                let r = acc.finish();
                if !r.is_empty() {
                    rows.push(r);
                }
            }
        }
        Ok(TraceSpace { commutators: Rref::of_rows(Ring::Rationals, alg.dim(), rows)? })
    }

    pub fn dim(&self) -> usize {
        self.commutators.cols - self.commutators.rank()
    }

    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseRow {
        let mut acc = Acc::new();
        acc.add_scaled(&Rational::ONE, v);
        let mut cur = acc.finish();
        for (p, row) in &self.commutators.rows {
            if let Some((_, c)) = cur.iter().find(|(k, _)| k == p) {
                let c = c.clone();
                let mut acc = Acc::new();
                acc.add_scaled(&Rational::ONE, &cur);
                acc.add_scaled(&-c, row);
                cur = acc.finish();
            }
        }
        cur
    }
}

/// Hochschild class of an endomorphism `theta` of a projective right module `p`, in `A / [A, A]`.
pub fn hochschild_class(alg: &GradedAlgebra, p: &GradedModule, theta: &Columns) -> Result<SparseRow> {
    if p.side != Side::Right {
        return Err(Error::precondition("hochschild_class expects a right module"));
    }
    if theta.len() != p.dim() {
        return Err(Error::invalid("endomorphism has the wrong size"));
    }
    for a in 0..alg.dim() {
        if compose(theta, &p.action[a]) != compose(&p.action[a], theta) {
            return Err(Error::precondition("endomorphism is not A-linear"));
        }
    }
    let res = minimal_resolution(alg, p, 0)?;
    let Some(cover) = res.terms.first() else {
        return Ok(Vec::new());
    };
    if cover.dim() != p.dim() {
        return Err(Error::precondition("module is not projective"));
    }
    // pi: cover -> p, an isomorphism
    let pi: Columns = (0..cover.dim())
        .map(|k| {
            let (g, beta) = cover.basis(k);
            apply(&p.action[beta], &res.images[0][g])
        })
        .collect();
    let pi_inv = crate::algebra::morphism::AlgebraMap { images: pi.clone() }.inverse()?.images;
    let lifted = compose(&pi_inv, &compose(theta, &pi));
    let mut acc = Acc::new();
    for (g, gen) in cover.gens.iter().enumerate() {
        let k = cover.position(g, alg.idempotent(gen.block));
        for (c, x) in &lifted[k] {
            let (g2, beta) = cover.basis(*c);
            if g2 == g {
                acc.add(beta, x);
            }
        }
    }
    TraceSpace::new(alg).map(|t| t.reduce(&acc.finish()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::examples::*;
    use crate::algebra::semisimple;

    #[test]
    fn ground_field() {
        let a = semisimple(1);
        let m = GradedBimodule::regular(&a);
        let c = cyclic_bar(&a, &m, &AlgebraMap::identity(&a), 3).unwrap();
        c.check_d_squared().unwrap();
        assert_eq!(c.betti(0).unwrap(), 1);
        assert_eq!(c.betti(-1).unwrap(), 0);
        assert_eq!(c.betti(-2).unwrap(), 0);
    }

    #[test]
    fn swap_twist_on_two_points() {
        let a = semisimple(2);
        let m = GradedBimodule::regular(&a);
        let swap = AlgebraMap::permutation(&a, &[1, 0]).unwrap();
        // the swap has no fixed points, so nothing survives
        assert_eq!(h0_cokernel(&a, &m, &swap).unwrap(), 0);
        let bar = hochschild_homology_bar(&a, &m, &swap, 2).unwrap();
        let res = hochschild_homology(&a, &m, &swap, 2).unwrap();
        assert_eq!(bar.degrees, res.degrees);
        assert_eq!(res.dim(0), 0);
        assert_eq!(res.dim(-1), 0);
        assert_eq!(hochschild_homology(&a, &m, &AlgebraMap::identity(&a), 1).unwrap().dim(0), 2);
    }

    #[test]
    fn dual_numbers_have_two_dimensional_hh() {
        let a = dual_numbers().build().unwrap();
        let m = GradedBimodule::regular(&a);
        let id = AlgebraMap::identity(&a);
        let res = hochschild_homology(&a, &m, &id, 4).unwrap();
        let bar = hochschild_homology_bar(&a, &m, &id, 4).unwrap();
        assert_eq!(res.degrees, bar.degrees);
        // A, then A/(2x) and Ann(2x) alternately
        assert_eq!(res.dim(0), 2);
        for n in 1..=4 {
            assert_eq!(res.dim(-n), 1);
        }
        assert_eq!(res.degrees[&-1], BTreeMap::from([(1, 1)]));
        assert_eq!(res.degrees[&-2], BTreeMap::from([(3, 1)]));
    }

    #[test]
    fn bimodule_resolution_lengths() {
        assert_eq!(minimal_bimodule_resolution(&semisimple(2), 3).unwrap().1.length(), 0);
        let a2 = a2_path().build().unwrap();
        let (env, r) = minimal_bimodule_resolution(&a2, 3).unwrap();
        assert!(r.complete);
        assert_eq!(r.length(), 1);
        assert!(r.is_minimal(&env));
        r.check_exact(&env).unwrap();
    }

    #[test]
    fn classes_of_projectives() {
        let a = semisimple(2);
        let e1 = GradedModule::right_projective(&a, 0);
        let id: Columns = (0..e1.dim()).map(unit).collect();
        assert_eq!(hochschild_class(&a, &e1, &id).unwrap(), unit(a.idempotent(0)));
        assert!(hochschild_class(&a, &e1, &vec![Vec::new(); e1.dim()]).unwrap().is_empty());
        let reg = GradedModule::regular(&a, Side::Right);
        let id: Columns = (0..reg.dim()).map(unit).collect();
        assert_eq!(hochschild_class(&a, &reg, &id).unwrap(), a.unit());
        let l = GradedModule::simple(&dual_numbers().build().unwrap(), 0, Side::Right);
        assert!(hochschild_class(&dual_numbers().build().unwrap(), &l, &vec![unit(0)]).is_err());
    }
}
