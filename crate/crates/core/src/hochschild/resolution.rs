//! Minimal graded projective resolutions of right modules over a basic algebra.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::algebra::module::{apply, Columns, GradedModule, Side};
use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exact::vector::Acc;
use crate::exact::{ExactMatrix, QEchelon, Ring, Rref, SparseRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Generator {
    pub block: usize,
    pub weight: i64,
}

/// `⊕_g e_{block(g)} B`, shifted by the generator weights.
#[derive(Clone, Debug)]
pub struct FreeModule {
    pub gens: Vec<Generator>,
    basis: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    weights: Vec<i64>,
    blocks: Vec<usize>,
}

impl FreeModule {
    pub fn new(alg: &GradedAlgebra, gens: Vec<Generator>) -> FreeModule {
        let mut basis = Vec::new();
        let mut weights = Vec::new();
        let mut blocks = Vec::new();
        for (g, gen) in gens.iter().enumerate() {
            for beta in alg.starting_at(gen.block) {
                basis.push((g, beta));
                weights.push(gen.weight + i64::from(alg.element(beta).weight));
                blocks.push(alg.element(beta).target);
            }
        }
        let index = basis.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        FreeModule { gens, basis, index, weights, blocks }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// `(generator, algebra basis element)` of basis vector `k`.
    pub fn basis(&self, k: usize) -> (usize, usize) {
        self.basis[k]
    }

    pub fn position(&self, g: usize, beta: usize) -> usize {
        self.index[&(g, beta)]
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    fn act(&self, alg: &GradedAlgebra, v: &SparseRow, b: usize) -> SparseRow {
        let mut acc = Acc::new();
        for (k, x) in v {
            let (g, beta) = self.basis[*k];
            for (c, y) in alg.mul_basis(beta, b) {
                acc.add(self.index[&(g, *c)], &(x * y));
            }
        }
        acc.finish()
    }
}

/// `P_0 <- P_1 <- ...` with `P_0 -> M` the augmentation.
#[derive(Clone, Debug)]
pub struct MinimalResolution {
    pub terms: Vec<FreeModule>,
    /// `images[n][g]`: image of generator `g` of `P_n` in `P_{n-1}` (in `M` for `n = 0`).
    pub images: Vec<Vec<SparseRow>>,
    /// True when the resolution stopped because a kernel vanished.
    pub complete: bool,
}

enum Ambient<'a> {
    Module(&'a GradedModule),
    Free(&'a FreeModule),
}

impl Ambient<'_> {
    fn act(&self, alg: &GradedAlgebra, v: &SparseRow, b: usize) -> SparseRow {
        match self {
            Ambient::Module(m) => apply(&m.action[b], v),
            Ambient::Free(f) => f.act(alg, v, b),
        }
    }

    fn dim(&self) -> usize {
        match self {
            Ambient::Module(m) => m.dim(),
            Ambient::Free(f) => f.dim(),
        }
    }
}

type Pieces = BTreeMap<(i64, usize), Vec<SparseRow>>;

/// Homogeneous vectors of the submodule spanned by `pieces` that generate it modulo the radical.
fn minimal_generators(alg: &GradedAlgebra, amb: &Ambient, pieces: &Pieces) -> Vec<(Generator, SparseRow)> {
    let rad: Vec<usize> = alg.radical();
    let mut out = Vec::new();
    for (&(w, i), vecs) in pieces {
        let mut ech = QEchelon::new();
        for (&(w2, i2), lower) in pieces.range(..(w, 0)) {
            for &r in &rad {
                let e = alg.element(r);
                if e.source != i2 || e.target != i || w2 + i64::from(e.weight) != w {
                    continue;
                }
                for k in lower {
                    ech.insert_rational(&amb.act(alg, k, r));
                }
            }
        }
        for k in vecs {
            if ech.insert_rational(k) {
                out.push((Generator { block: i, weight: w }, k.clone()));
            }
        }
    }
    out
}

/// Kernel of `phi: P -> ambient`, split by (weight, block).
fn kernel_pieces(p: &FreeModule, phi: &[SparseRow], ambient_dim: usize) -> Result<Pieces> {
    let mut groups: BTreeMap<(i64, usize), Vec<usize>> = BTreeMap::new();
    for k in 0..p.dim() {
        groups.entry((p.weights[k], p.blocks[k])).or_default().push(k);
    }
    let mut out = Pieces::new();
    for (key, idx) in groups {
        let cols: Vec<SparseRow> = idx.iter().map(|&k| phi[k].clone()).collect();
        let m = ExactMatrix::from_columns(Ring::Rationals, ambient_dim, &cols)?;
        let ker = Rref::of(&m)?.kernel()?;
        if !ker.is_empty() {
            out.insert(key, ker.into_iter().map(|v| v.into_iter().map(|(c, x)| (idx[c], x)).collect()).collect());
        }
    }
    Ok(out)
}

fn module_pieces(m: &GradedModule) -> Pieces {
    let mut out = Pieces::new();
    for v in 0..m.dim() {
        out.entry((m.weights[v], m.blocks[v])).or_default().push(vec![(v, crate::exact::Rational::ONE)]);
    }
    out
}

/// Resolves `m` by `P_0, ..., P_{length}` (or fewer when the resolution ends).
pub fn minimal_resolution(alg: &GradedAlgebra, m: &GradedModule, length: usize) -> Result<MinimalResolution> {
    if m.side != Side::Right {
        return Err(Error::precondition("minimal_resolution expects a right module"));
    }
    let mut terms: Vec<FreeModule> = Vec::new();
    let mut images: Vec<Vec<SparseRow>> = Vec::new();
    let mut pieces = module_pieces(m);
    for n in 0..=length {
        if pieces.is_empty() {
            return Ok(MinimalResolution { terms, images, complete: true });
        }
        let amb = if n == 0 { Ambient::Module(m) } else { Ambient::Free(&terms[n - 1]) };
        let gens = minimal_generators(alg, &amb, &pieces);
        let p = FreeModule::new(alg, gens.iter().map(|(g, _)| *g).collect());
        let phi: Vec<SparseRow> = (0..p.dim())
            .map(|k| {
                let (g, beta) = p.basis[k];
                amb.act(alg, &gens[g].1, beta)
            })
            .collect();
        let next = kernel_pieces(&p, &phi, amb.dim())?;
        images.push(gens.into_iter().map(|(_, v)| v).collect());
        terms.push(p);
        pieces = next;
    }
    Ok(MinimalResolution { terms, images, complete: pieces.is_empty() })
}

impl MinimalResolution {
    /// Length when complete, otherwise the number of computed differentials.
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    /// Matrix of `P_n -> P_{n-1}` as columns over the basis of `P_n`.
    pub fn differential(&self, alg: &GradedAlgebra, n: usize) -> Columns {
        assert!(n >= 1);
        let p = &self.terms[n];
        let q = &self.terms[n - 1];
        (0..p.dim())
            .map(|k| {
                let (g, beta) = p.basis[k];
                q.act(alg, &self.images[n][g], beta)
            })
            .collect()
    }

    /// Every differential has all its coefficients in the radical.
    pub fn is_minimal(&self, alg: &GradedAlgebra) -> bool {
        (1..self.terms.len()).all(|n| {
            self.images[n]
                .iter()
                .all(|v| v.iter().all(|(k, _)| alg.element(self.terms[n - 1].basis[*k].1).weight > 0))
        })
    }

    /// Exactness at every `P_n` with `n >= 1` that has a successor.
    pub fn check_exact(&self, alg: &GradedAlgebra) -> Result<()> {
        for n in 1..self.terms.len().saturating_sub(1) {
            let d_in = ExactMatrix::from_columns(Ring::Rationals, self.terms[n].dim(), &self.differential(alg, n + 1))?;
            let d_out = ExactMatrix::from_columns(Ring::Rationals, self.terms[n - 1].dim(), &self.differential(alg, n))?;
            let ker = self.terms[n].dim() - crate::exact::rank(&d_out)?;
            if crate::exact::rank(&d_in)? != ker {
                return Err(Error::check(format!("resolution is not exact at P_{n}")));
            }
        }
        Ok(())
    }

    /// Generators of `P_n` counted by (block, weight).
    pub fn generator_counts(&self, n: usize) -> BTreeMap<(usize, i64), usize> {
        let mut out = BTreeMap::new();
        if let Some(p) = self.terms.get(n) {
            for g in &p.gens {
                *out.entry((g.block, g.weight)).or_default() += 1;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::examples::*;

    #[test]
    fn dual_numbers_resolution_is_periodic() {
        let a = dual_numbers().build().unwrap();
        let l = GradedModule::simple(&a, 0, Side::Right);
        let r = minimal_resolution(&a, &l, 4).unwrap();
        assert!(!r.complete);
        for n in 0..=4 {
            assert_eq!(r.generator_counts(n), BTreeMap::from([((0, n as i64), 1)]));
        }
        assert!(r.is_minimal(&a));
        r.check_exact(&a).unwrap();
    }

    #[test]
    fn a2_simple_has_length_one() {
        let a = a2_path().build().unwrap();
        let l = GradedModule::simple(&a, 0, Side::Right);
        let r = minimal_resolution(&a, &l, 5).unwrap();
        assert!(r.complete);
        assert_eq!(r.length(), 1);
        let l2 = GradedModule::simple(&a, 1, Side::Right);
        assert_eq!(minimal_resolution(&a, &l2, 5).unwrap().length(), 0);
    }

    #[test]
    fn truncated_cubic_jumps_to_weight_three() {
        let a = truncated_cubic().build().unwrap();
        let l = GradedModule::simple(&a, 0, Side::Right);
        let r = minimal_resolution(&a, &l, 2).unwrap();
        assert_eq!(r.generator_counts(2), BTreeMap::from([((0, 3), 1)]));
    }
}
