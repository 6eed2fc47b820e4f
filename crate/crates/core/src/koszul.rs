//! Bar, projective bar, normalized bar and Koszul complexes of a basic graded
//! algebra, quadratic dual spaces, and Koszulity via minimal resolutions.
//!
//! Ext of simples is reported in internal module weight: a Koszul algebra has
//! `Ext^n(L_i, L_j)` in internal weight `+n`, which is weight `-n` after the
//! grading-shift convention (`shift_weight` in the certificates).

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::algebra::module::{GradedModule, Side};
use crate::algebra::tensor::TupleBasis;
use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exact::vector::Acc;
use crate::exact::{ChainComplex, ExactMatrix, Rational, Ring, Rref, SparseRow};
use crate::hochschild::minimal_resolution;

fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::ONE
    } else {
        -Rational::ONE
    }
}

/// Complex on `[-depth, 1]` whose term of degree `d` has words of length `2 - d` drawn
/// from `basis(len)`, with differential the alternating sum of adjacent merges.
fn merge_complex(alg: &GradedAlgebra, depth: usize, basis: impl Fn(usize) -> TupleBasis) -> Result<ChainComplex> {
    let lens: Vec<usize> = (1..=depth + 2).rev().collect();
    let bases: Vec<TupleBasis> = lens.iter().map(|&l| basis(l)).collect();
    let mut diffs = Vec::new();
    for k in 0..bases.len() - 1 {
        let (src, dst) = (&bases[k], &bases[k + 1]);
        let mut cols = Vec::with_capacity(src.len());
        for t in 0..src.len() {
            let w = src.get(t);
            let mut acc = Acc::new();
            for i in 0..w.len() - 1 {
                let s = sign(i);
                for (c, x) in alg.mul_basis(w[i], w[i + 1]) {
                    let mut m = w[..i].to_vec();
                    m.push(*c);
                    m.extend_from_slice(&w[i + 2..]);
                    let pos = dst.position(&m).ok_or_else(|| Error::check("merged word left the complex"))?;
                    acc.add(pos, &(&s * x));
                }
            }
            cols.push(acc.finish());
        }
        diffs.push(ExactMatrix::from_columns(Ring::Rationals, dst.len(), &cols)?);
    }
    let dims = bases.iter().map(TupleBasis::len).collect();
    let weights = bases.iter().map(|b| b.weights(alg)).collect();
    let c = ChainComplex::new(Ring::Rationals, -(depth as i64), dims, diffs)?.with_weights(weights)?;
    c.check_d_squared()?;
    Ok(c)
}

/// The bar complex over the ground field: term `-m` is `A^{⊗(m+2)}`, term `1` is `A`.
pub fn bar_complex(alg: &GradedAlgebra, depth: usize) -> Result<ChainComplex> {
    let all: Vec<usize> = (0..alg.dim()).collect();
    merge_complex(alg, depth, |l| TupleBasis::product(&vec![all.clone(); l], None))
}

/// The subcomplex of composable words, i.e. tensor products over the idempotents.
pub fn projective_bar_complex(alg: &GradedAlgebra, depth: usize) -> Result<ChainComplex> {
    let all: Vec<usize> = (0..alg.dim()).collect();
    merge_complex(alg, depth, |l| TupleBasis::product(&vec![all.clone(); l], Some(alg)))
}

/// Composable words `a ⊗ r_1 ⊗ ... ⊗ r_n ⊗ b` with every `r_k` in the radical.
pub fn normalized_bar(alg: &GradedAlgebra, depth: usize) -> Result<ChainComplex> {
    let all: Vec<usize> = (0..alg.dim()).collect();
    let rad = alg.radical();
    merge_complex(alg, depth, |l| {
        let mut legs = vec![all.clone()];
        if l >= 2 {
            legs.extend(std::iter::repeat(rad.clone()).take(l - 2));
            legs.push(all.clone());
        }
        TupleBasis::product(&legs, Some(alg))
    })
}

/// Subspace of composable weight-one words from `i` to `j`, in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct DualSpace {
    pub words: TupleBasis,
    /// `(pivot word, vector)` pairs.
    pub basis: Vec<(usize, SparseRow)>,
}

impl DualSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a vector of the subspace.
    pub fn coordinates(&self, v: &[(usize, Rational)]) -> Result<Vec<Rational>> {
        let coeff = |p: usize| v.iter().find(|(c, _)| *c == p).map_or(Rational::ZERO, |(_, x)| x.clone());
        let coords: Vec<Rational> = self.basis.iter().map(|(p, _)| coeff(*p)).collect();
        let mut acc = Acc::new();
        acc.add_scaled(&Rational::ONE, v);
        for (x, (_, row)) in coords.iter().zip(&self.basis) {
            acc.add_scaled(&-x, row);
        }
        if !acc.is_empty() {
            return Err(Error::check("vector is not in the quadratic dual space"));
        }
        Ok(coords)
    }
}

/// `(A^{!,∨}_n)_{ij}` for `0 <= n <= max_n`: kernels of all interior merges on weight-one words.
#[derive(Clone, Debug)]
pub struct QuadraticDualSpaces {
    pub max_n: usize,
    /// `spaces[n][i][j]`.
    pub spaces: Vec<Vec<Vec<DualSpace>>>,
}

impl QuadraticDualSpaces {
    pub fn dim(&self, n: usize, i: usize, j: usize) -> usize {
        self.spaces[n][i][j].dim()
    }

    pub fn total_dim(&self, n: usize) -> usize {
        self.spaces[n].iter().flatten().map(DualSpace::dim).sum()
    }

    /// `{n -> [[dim (A^!_n)_{ij}]]}`.
    pub fn dims(&self) -> Vec<Vec<Vec<usize>>> {
        self.spaces.iter().map(|s| s.iter().map(|r| r.iter().map(DualSpace::dim).collect()).collect()).collect()
    }
}

pub fn quadratic_dual_spaces(alg: &GradedAlgebra, max_n: usize) -> Result<QuadraticDualSpaces> {
    let li = alg.num_idempotents();
    let ones: Vec<usize> = (0..alg.dim()).filter(|&k| alg.element(k).weight == 1).collect();
    let mut spaces = Vec::with_capacity(max_n + 1);
    let zero: Vec<Vec<DualSpace>> = (0..li)
        .map(|i| {
            (0..li)
                .map(|j| {
                    if i == j {
                        DualSpace { words: TupleBasis::new(vec![Vec::new()]), basis: vec![(0, vec![(0, Rational::ONE)])] }
                    } else {
                        DualSpace { words: TupleBasis::new(Vec::new()), basis: Vec::new() }
                    }
                })
                .collect()
        })
        .collect();
    spaces.push(zero);
    for n in 1..=max_n {
        let all = TupleBasis::product(&vec![ones.clone(); n], Some(alg));
        let mut grouped: Vec<Vec<Vec<Vec<usize>>>> = vec![vec![Vec::new(); li]; li];
        for t in all.tuples() {
            grouped[alg.element(t[0]).source][alg.element(t[n - 1]).target].push(t.clone());
        }
        let mut level = Vec::with_capacity(li);
        for row in grouped {
            let mut out = Vec::with_capacity(li);
            for words in row {
                let words = TupleBasis::new(words);
                let mut eqs: HashMap<(usize, Vec<usize>), Acc> = HashMap::new();
                for (k, w) in words.tuples().iter().enumerate() {
                    for m in 0..n - 1 {
                        for (c, x) in alg.mul_basis(w[m], w[m + 1]) {
                            let mut merged = w[..m].to_vec();
                            merged.push(*c);
                            merged.extend_from_slice(&w[m + 2..]);
                            eqs.entry((m, merged)).or_default().add(k, x);
                        }
                    }
                }
                let mut keys: Vec<_> = eqs.into_iter().collect();
                keys.sort_by(|a, b| a.0.cmp(&b.0));
                let rows = keys.into_iter().map(|(_, acc)| acc.finish());
                let kernel = Rref::of_rows(Ring::Rationals, words.len(), rows)?.kernel()?;
                let basis = Rref::of_rows(Ring::Rationals, words.len(), kernel)?.rows;
                out.push(DualSpace { words, basis });
            }
            level.push(out);
        }
        spaces.push(level);
    }
    Ok(QuadraticDualSpaces { max_n, spaces })
}

/// `Kos^{-n} = ⊕ A e_i ⊗ (A^{!,∨}_n)_{ij} ⊗ e_j A` with differential `d_1 + (-1)^n d_{n+1}`.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    /// On `[-length, 0]`.
    pub complex: ChainComplex,
    /// With the multiplication map to `A` in degree 1.
    pub augmented: ChainComplex,
    pub length: usize,
    /// False when the dual spaces were still nonzero at the cap.
    pub complete: bool,
    pub cap: usize,
    pub warning: Option<String>,
}

struct KosTerm {
    /// `(u, i, j, basis index in K_n(i, j), w)`.
    basis: Vec<(usize, usize, usize, usize, usize)>,
    index: HashMap<(usize, usize, usize, usize, usize), usize>,
}

fn kos_term(alg: &GradedAlgebra, dual: &QuadraticDualSpaces, n: usize) -> KosTerm {
    let li = alg.num_idempotents();
    let mut basis = Vec::new();
    for i in 0..li {
        for j in 0..li {
            for k in 0..dual.dim(n, i, j) {
                for u in alg.ending_at(i) {
                    for w in alg.starting_at(j) {
                        basis.push((u, i, j, k, w));
                    }
                }
            }
        }
    }
    let index = basis.iter().enumerate().map(|(p, b)| (*b, p)).collect();
    KosTerm { basis, index }
}

/// Basis vector `k` of `(A^{!,∨}_n)_{ij}` written as `Σ_r r ⊗ κ'_r` and as `Σ_r κ''_r ⊗ r`.
pub(crate) struct DualSplit {
    /// `(r, coordinates of κ'_r in (A^{!,∨}_{n-1})_{target(r) j})`.
    pub first: Vec<(usize, Vec<Rational>)>,
    /// `(r, coordinates of κ''_r in (A^{!,∨}_{n-1})_{i source(r)})`.
    pub last: Vec<(usize, Vec<Rational>)>,
}

pub(crate) fn split_dual_basis(
    alg: &GradedAlgebra,
    dual: &QuadraticDualSpaces,
    n: usize,
    i: usize,
    j: usize,
    k: usize,
) -> Result<DualSplit> {
    let space = &dual.spaces[n][i][j];
    let kappa = &space.basis[k].1;
    let mut heads: BTreeMap<usize, Acc> = BTreeMap::new();
    let mut lasts: BTreeMap<usize, Acc> = BTreeMap::new();
    let shorter_first = |r: usize| &dual.spaces[n - 1][alg.element(r).target][j];
    let shorter_last = |r: usize| &dual.spaces[n - 1][i][alg.element(r).source];
    for (t, x) in kappa {
        let word = space.words.get(*t);
        let (r, tail) = (word[0], &word[1..]);
        let pos = shorter_first(r).words.position(tail).expect("tail is composable");
        heads.entry(r).or_default().add(pos, x);
        let (r, head) = (word[n - 1], &word[..n - 1]);
        let pos = shorter_last(r).words.position(head).expect("head is composable");
        lasts.entry(r).or_default().add(pos, x);
    }
    let first = heads
        .into_iter()
        .map(|(r, acc)| Ok((r, shorter_first(r).coordinates(&acc.finish())?)))
        .collect::<Result<Vec<_>>>()?;
    let last = lasts
        .into_iter()
        .map(|(r, acc)| Ok((r, shorter_last(r).coordinates(&acc.finish())?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DualSplit { first, last })
}

pub fn koszul_complex(alg: &GradedAlgebra, cap: usize) -> Result<KoszulComplex> {
    let dual = quadratic_dual_spaces(alg, cap + 1)?;
    let vanish = (1..=cap + 1).find(|&n| dual.total_dim(n) == 0);
    let (length, complete) = match vanish {
        Some(n) => (n - 1, true),
        None => (cap, false),
    };
    let terms: Vec<KosTerm> = (0..=length).map(|n| kos_term(alg, &dual, n)).collect();
    let mut diffs = Vec::new();
    for n in (1..=length).rev() {
        let (src, dst) = (&terms[n], &terms[n - 1]);
        let mut cols = Vec::with_capacity(src.basis.len());
        for &(u, i, j, k, w) in &src.basis {
            let split = split_dual_basis(alg, &dual, n, i, j, k)?;
            let mut acc = Acc::new();
            for (r, coords) in &split.first {
                let i2 = alg.element(*r).target;
                for (u2, y) in alg.mul_basis(u, *r) {
                    for (k2, z) in coords.iter().enumerate() {
                        if !z.is_zero() {
                            acc.add(dst.index[&(*u2, i2, j, k2, w)], &(y * z));
                        }
                    }
                }
            }
            let s = sign(n);
            for (r, coords) in &split.last {
                let j2 = alg.element(*r).source;
                for (w2, y) in alg.mul_basis(*r, w) {
                    for (k2, z) in coords.iter().enumerate() {
                        if !z.is_zero() {
                            acc.add(dst.index[&(u, i, j2, k2, *w2)], &(&s * &(y * z)));
                        }
                    }
                }
            }
            cols.push(acc.finish());
        }
        diffs.push(ExactMatrix::from_columns(Ring::Rationals, dst.basis.len(), &cols)?);
    }
    let dims: Vec<usize> = terms.iter().rev().map(|t| t.basis.len()).collect();
    let weights: Vec<Vec<i64>> = (0..=length)
        .rev()
        .map(|n| {
            terms[n]
                .basis
                .iter()
                .map(|&(u, _, _, _, w)| (n as u32 + alg.element(u).weight + alg.element(w).weight) as i64)
                .collect()
        })
        .collect();
    let complex = ChainComplex::new(Ring::Rationals, -(length as i64), dims.clone(), diffs.clone())?
        .with_weights(weights.clone())?;
    complex.check_d_squared()?;
    // augmentation u ⊗ e_i ⊗ w -> u w
    let aug_cols: Vec<SparseRow> = terms[0].basis.iter().map(|&(u, _, _, _, w)| alg.mul_basis(u, w).clone()).collect();
    let mut adims = dims;
    adims.push(alg.dim());
    let mut adiffs = diffs;
    adiffs.push(ExactMatrix::from_columns(Ring::Rationals, alg.dim(), &aug_cols)?);
    let mut aweights = weights;
    aweights.push((0..alg.dim()).map(|k| i64::from(alg.element(k).weight)).collect());
    let augmented = ChainComplex::new(Ring::Rationals, -(length as i64), adims, adiffs)?.with_weights(aweights)?;
    augmented.check_d_squared()?;
    let warning = (!complete).then(|| format!("quadratic dual still nonzero at the cap {cap}; complex truncated"));
    Ok(KoszulComplex { complex, augmented, length, complete, cap, warning })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcyclicityReport {
    pub acyclic: bool,
    /// Highest degree with nonzero cohomology of the augmented complex.
    pub first_failure: Option<i64>,
    /// Degrees `[lo, 1]` that were checked.
    pub checked_from: i64,
    pub complete: bool,
    pub length: usize,
}

/// Acyclicity of the augmented Koszul complex, verified to `depth` when it does not terminate.
pub fn verify_kos_acyclic(alg: &GradedAlgebra, depth: usize) -> Result<AcyclicityReport> {
    let kos = koszul_complex(alg, depth)?;
    let lo = if kos.complete { -(kos.length as i64) } else { -(kos.length as i64) + 1 };
    let mut first_failure = None;
    for d in (lo..=1).rev() {
        if !kos.augmented.cohomology(d)?.is_trivial() {
            first_failure = Some(d);
            break;
        }
    }
    Ok(AcyclicityReport { acyclic: first_failure.is_none(), first_failure, checked_from: lo, complete: kos.complete, length: kos.length })
}

/// `ext[i][j][n]`: `{internal weight -> dim Ext^n(L_i, L_j)}` for `n <= max_n`.
pub fn ext_table(alg: &GradedAlgebra, max_n: usize) -> Result<Vec<Vec<Vec<BTreeMap<i64, usize>>>>> {
    let li = alg.num_idempotents();
    let mut out = vec![vec![vec![BTreeMap::new(); max_n + 1]; li]; li];
    for (i, row) in out.iter_mut().enumerate() {
        let res = minimal_resolution(alg, &GradedModule::simple(alg, i, Side::Right), max_n)?;
        for n in 0..=max_n {
            for ((block, weight), c) in res.generator_counts(n) {
                row[block][n].insert(weight, c);
            }
        }
    }
    Ok(out)
}

pub fn ext_simples(alg: &GradedAlgebra, i: usize, j: usize, max_n: usize) -> Result<Vec<BTreeMap<i64, usize>>> {
    if i >= alg.num_idempotents() || j >= alg.num_idempotents() {
        return Err(Error::invalid("simple module index out of range"));
    }
    Ok(ext_table(alg, max_n)?.swap_remove(i).swap_remove(j))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulViolation {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub internal_weight: i64,
    pub shift_weight: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulCertificate {
    pub koszul: bool,
    pub verified_to: usize,
    pub violation: Option<KoszulViolation>,
}

/// Purity of `Ext^n(L_i, L_j)` in weight `n` for every `n <= max_n`.
pub fn is_koszul(alg: &GradedAlgebra, max_n: usize) -> Result<KoszulCertificate> {
    let ext = ext_table(alg, max_n)?;
    let li = alg.num_idempotents();
    for n in 0..=max_n {
        for i in 0..li {
            for j in 0..li {
                if let Some((&w, _)) = ext[i][j][n].iter().find(|(&w, _)| w != n as i64) {
                    let violation = KoszulViolation { n, i, j, internal_weight: w, shift_weight: -w };
                    return Ok(KoszulCertificate { koszul: false, verified_to: max_n, violation: Some(violation) });
                }
            }
        }
    }
    Ok(KoszulCertificate { koszul: true, verified_to: max_n, violation: None })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualExtRow {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub dual_dim: usize,
    pub ext_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualExtReport {
    pub agree: bool,
    pub rows: Vec<DualExtRow>,
}

/// `dim (A^{!,∨}_n)_{ij}` against `dim Ext^n(L_i, L_j)`.
pub fn verify_dual_ext(alg: &GradedAlgebra, max_n: usize) -> Result<DualExtReport> {
    let dual = quadratic_dual_spaces(alg, max_n)?;
    let ext = ext_table(alg, max_n)?;
    let li = alg.num_idempotents();
    let mut rows = Vec::new();
    for n in 0..=max_n {
        for i in 0..li {
            for j in 0..li {
                let ext_dim = ext[i][j][n].values().sum();
                rows.push(DualExtRow { n, i, j, dual_dim: dual.dim(n, i, j), ext_dim });
            }
        }
    }
    Ok(DualExtReport { agree: rows.iter().all(|r| r.dual_dim == r.ext_dim), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::examples::*;
    use crate::algebra::semisimple;

    fn spec_ss(n: usize) -> crate::algebra::AlgebraSpec {
        crate::algebra::quiver::examples::semisimple(n)
    }

    fn betti(c: &ChainComplex) -> Vec<usize> {
        (c.lo()..=c.hi()).map(|d| c.betti(d).unwrap()).collect()
    }

    #[test]
    fn bar_of_ground_field() {
        let c = bar_complex(&semisimple(1), 2).unwrap();
        assert_eq!((c.lo()..=c.hi()).map(|d| c.term_dim(d)).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
        assert_eq!(c.betti(0).unwrap(), 0);
        assert_eq!(c.betti(-1).unwrap(), 0);
    }

    #[test]
    fn bar_of_dual_numbers() {
        let a = dual_numbers().build().unwrap();
        let c = bar_complex(&a, 3).unwrap();
        for m in 0..=3i64 {
            assert_eq!(c.term_dim(-m), 1 << (m + 2));
        }
        for m in 0..=2 {
            assert_eq!(c.betti(-m).unwrap(), 0);
        }
        assert_eq!(c.betti(1).unwrap(), 0);
    }

    #[test]
    fn bar_variants_agree() {
        for s in [dual_numbers(), spec_ss(2), a2_path()] {
            let a = s.build().unwrap();
            let (b, p, n) = (bar_complex(&a, 3).unwrap(), projective_bar_complex(&a, 3).unwrap(), normalized_bar(&a, 3).unwrap());
            let visible = |c: &ChainComplex| betti(c)[1..].to_vec();
            assert_eq!(visible(&b), visible(&p));
            assert_eq!(visible(&p), visible(&n));
            assert!(visible(&b).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn single_idempotent_projective_bar_is_the_bar() {
        let a = dual_numbers().build().unwrap();
        assert_eq!(bar_complex(&a, 2).unwrap(), projective_bar_complex(&a, 2).unwrap());
    }

    #[test]
    fn normalized_bar_dims() {
        let a = dual_numbers().build().unwrap();
        let c = normalized_bar(&a, 3).unwrap();
        for n in 1..=3 {
            assert_eq!(c.term_dim(-n), 4);
        }
        let k2 = normalized_bar(&semisimple(2), 2).unwrap();
        assert_eq!(k2.term_dim(-1), 0);
        assert_eq!(k2.term_dim(-2), 0);
        let a2 = normalized_bar(&a2_path().build().unwrap(), 2).unwrap();
        assert_eq!(a2.term_dim(-1), 1);
    }

    #[test]
    fn quadratic_duals() {
        let d = quadratic_dual_spaces(&dual_numbers().build().unwrap(), 5).unwrap();
        assert!((0..=5).all(|n| d.total_dim(n) == 1));
        let c = quadratic_dual_spaces(&truncated_cubic().build().unwrap(), 3).unwrap();
        assert_eq!(c.total_dim(2), 0);
        let a2 = quadratic_dual_spaces(&a2_path().build().unwrap(), 3).unwrap();
        assert_eq!(a2.total_dim(1), 1);
        assert_eq!(a2.total_dim(2), 0);
        assert_eq!(a2.total_dim(3), 0);
    }

    #[test]
    fn koszul_complex_dims() {
        let k = koszul_complex(&dual_numbers().build().unwrap(), 4).unwrap();
        assert!(!k.complete);
        assert!(k.warning.is_some());
        assert!((-4..=0).all(|d| k.complex.term_dim(d) == 4));
        let a2 = koszul_complex(&a2_path().build().unwrap(), 4).unwrap();
        assert!(a2.complete);
        assert_eq!(a2.length, 1);
        assert_eq!((a2.complex.term_dim(-1), a2.complex.term_dim(0)), (1, 4));
        let k2 = koszul_complex(&semisimple(2), 3).unwrap();
        assert_eq!((k2.length, k2.complex.term_dim(0)), (0, 2));
    }

    #[test]
    fn acyclicity() {
        for s in [spec_ss(2), a2_path(), a3_path(), dual_numbers()] {
            let r = verify_kos_acyclic(&s.build().unwrap(), 4).unwrap();
            assert!(r.acyclic, "{s:?}: {r:?}");
        }
        let r = verify_kos_acyclic(&truncated_cubic().build().unwrap(), 4).unwrap();
        assert_eq!(r.first_failure, Some(-1));
    }

    #[test]
    fn ext_and_koszulity() {
        let d = dual_numbers().build().unwrap();
        let e = ext_simples(&d, 0, 0, 4).unwrap();
        assert!(e.iter().enumerate().all(|(n, m)| *m == BTreeMap::from([(n as i64, 1)])));
        assert!(is_koszul(&d, 4).unwrap().koszul);
        assert!(is_koszul(&a2_path().build().unwrap(), 4).unwrap().koszul);
        let k2 = semisimple(2);
        assert!(ext_simples(&k2, 0, 1, 3).unwrap().iter().all(BTreeMap::is_empty));
        let c = is_koszul(&truncated_cubic().build().unwrap(), 4).unwrap();
        assert_eq!(c.violation, Some(KoszulViolation { n: 2, i: 0, j: 0, internal_weight: 3, shift_weight: -3 }));
    }

    #[test]
    fn dual_matches_ext() {
        for s in [dual_numbers(), a2_path(), a3_path(), spec_ss(3)] {
            assert!(verify_dual_ext(&s.build().unwrap(), 5).unwrap().agree);
        }
    }
}
