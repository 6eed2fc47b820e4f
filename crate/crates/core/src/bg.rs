//! Block–Getzler complexes for a finite group acting on a graded algebra and a
//! bimodule, their fibers over group elements, invariant global sections, the
//! insertion homotopy, inertia counts and the bounded Koszul model.
//!
//! The term of degree `-n` is `A^{⊗n} ⊗ M ⊗ O(G)` and is stored fiber by fiber:
//! basis index `h * f + t * dim M + v` for the fiber of `δ_h`, where `f` is the
//! fiber term dimension. The fiber over `h` is the cyclic bar complex of `M`
//! twisted on the right by `h^{-1} ∘ F`. `g` acts diagonally and sends `δ_h` to
//! `δ_{g h g^{-1}}`.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::algebra::module::{apply, compose, Columns};
use crate::algebra::tensor::TupleBasis;
use crate::algebra::{semisimple, AlgebraMap, GradedAlgebra, GradedBimodule, MorphismSpec};
use crate::error::{Error, Result};
use crate::exact::vector::{unit, Acc};
use crate::exact::{ChainComplex, ExactMatrix, Rational, Ring, Rref, SparseRow};
use crate::groups::FiniteGroup;
use crate::hochschild::{cyclic_bar, twist_right};
use crate::koszul::{is_koszul, koszul_complex, quadratic_dual_spaces, split_dual_basis};

/// The algebra of functions on a finite group, basis `δ_g`.
#[derive(Clone, Debug)]
pub struct FunctionsOnG<'a> {
    group: &'a FiniteGroup,
}

impl<'a> FunctionsOnG<'a> {
    pub fn new(group: &'a FiniteGroup) -> FunctionsOnG<'a> {
        FunctionsOnG { group }
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    /// `ϱ(v) = (g ↦ g^{-1} v)` for the representation with matrices `rep[g]`.
    pub fn coaction(&self, rep: &[Columns], v: &[(usize, Rational)]) -> Vec<SparseRow> {
        (0..self.dim()).map(|g| apply(&rep[self.group.inv(g)], v)).collect()
    }

    /// Counit and coassociativity on every basis vector: `ϱ(v)(e) = v` and `ϱ(v)(gh) = h^{-1} ϱ(v)(g)`.
    pub fn verify_coaction(&self, rep: &[Columns]) -> Result<()> {
        let n = rep.first().map_or(0, Vec::len);
        for b in 0..n {
            let rho = self.coaction(rep, &unit(b));
            if rho[0] != unit(b) {
                return Err(Error::check("coaction fails the counit axiom"));
            }
            for g in 0..self.dim() {
                for h in 0..self.dim() {
                    if rho[self.group.mul(g, h)] != apply(&rep[self.group.inv(h)], &rho[g]) {
                        return Err(Error::check("coaction is not coassociative"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Conjugation action on the basis: `g · δ_h = δ_{g h g^{-1}}`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.group.conj(g, h)
    }
}

/// A finite group acting on `A` and `M`, with a twist `F` commuting with the action.
#[derive(Clone, Debug)]
pub struct FiniteGroupAction {
    pub group: FiniteGroup,
    algebra: Vec<AlgebraMap>,
    bimodule: Vec<Columns>,
    pub twist: AlgebraMap,
}

fn extend<T: Clone>(g: &FiniteGroup, id: T, gens: &[T], mul: impl Fn(&T, &T) -> T) -> Vec<T> {
    let mut out: Vec<Option<T>> = vec![None; g.order()];
    out[0] = Some(id);
    let mut queue = VecDeque::from([0usize]);
    while let Some(e) = queue.pop_front() {
        for (k, &s) in g.generators().iter().enumerate() {
            let p = g.mul(e, s);
            if out[p].is_none() {
                out[p] = Some(mul(out[e].as_ref().unwrap(), &gens[k]));
                queue.push_back(p);
            }
        }
    }
    out.into_iter().map(|x| x.expect("generators generate the group")).collect()
}

impl FiniteGroupAction {
    /// Extends generator actions to all of `G` and checks every compatibility.
    pub fn new(
        alg: &GradedAlgebra,
        m: &GradedBimodule,
        group: FiniteGroup,
        algebra_gens: &[AlgebraMap],
        bimodule_gens: &[Columns],
        twist: AlgebraMap,
    ) -> Result<FiniteGroupAction> {
        let ng = group.generators().len();
        if algebra_gens.len() != ng || bimodule_gens.len() != ng {
            return Err(Error::invalid(format!("need one algebra and one bimodule map for each of the {ng} generators")));
        }
        for (k, f) in algebra_gens.iter().enumerate() {
            f.check(alg).map_err(|e| Error::invalid(format!("action.generators.{k}.algebra: {e}")))?;
            f.inverse().map_err(|_| Error::invalid(format!("action.generators.{k}.algebra: not invertible")))?;
        }
        for (k, p) in bimodule_gens.iter().enumerate() {
            if p.len() != m.dim() || p.iter().flatten().any(|(r, _)| *r >= m.dim()) {
                return Err(Error::invalid(format!("action.generators.{k}.bimodule: expected a {0}x{0} matrix", m.dim())));
            }
        }
        twist.check(alg).map_err(|e| Error::invalid(format!("twist: {e}")))?;
        let algebra = extend(&group, AlgebraMap::identity(alg), algebra_gens, |a, b| a.compose(b));
        let bimodule = extend(&group, m.identity(), bimodule_gens, |a, b| compose(a, b));
        let act = FiniteGroupAction { group, algebra, bimodule, twist };
        act.validate(alg, m)?;
        Ok(act)
    }

    /// `M = A` with the bimodule automorphisms equal to the algebra automorphisms.
    pub fn on_regular(alg: &GradedAlgebra, group: FiniteGroup, algebra_gens: &[AlgebraMap], twist: AlgebraMap) -> Result<FiniteGroupAction> {
        let m = GradedBimodule::regular(alg);
        let psi: Vec<Columns> = algebra_gens.iter().map(|f| f.images.clone()).collect();
        FiniteGroupAction::new(alg, &m, group, algebra_gens, &psi, twist)
    }

    /// `G` acting trivially on `A` and `M`.
    pub fn trivial(alg: &GradedAlgebra, m: &GradedBimodule, group: FiniteGroup, twist: AlgebraMap) -> Result<FiniteGroupAction> {
        let n = group.generators().len();
        FiniteGroupAction::new(alg, m, group, &vec![AlgebraMap::identity(alg); n], &vec![m.identity(); n], twist)
    }

    /// A permutation group acting on `k^X` and on `M = k^X` through its points.
    pub fn on_points(group: FiniteGroup, points: usize) -> Result<(GradedAlgebra, FiniteGroupAction)> {
        let alg = semisimple(points);
        let gens = group
            .generators()
            .iter()
            .map(|&s| {
                let p = group.permutation(s).ok_or_else(|| Error::invalid("group has no permutation representation"))?;
                if p.len() != points {
                    return Err(Error::invalid(format!("permutations act on {} points, expected {points}", p.len())));
                }
                AlgebraMap::permutation(&alg, p)
            })
            .collect::<Result<Vec<_>>>()?;
        let act = FiniteGroupAction::on_regular(&alg, group, &gens, AlgebraMap::identity(&alg))?;
        Ok((alg, act))
    }

    fn validate(&self, alg: &GradedAlgebra, m: &GradedBimodule) -> Result<()> {
        let g = &self.group;
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                if self.algebra[a].compose(&self.algebra[b]) != self.algebra[ab] {
                    return Err(Error::invalid("algebra action does not satisfy the group relations"));
                }
                if compose(&self.bimodule[a], &self.bimodule[b]) != self.bimodule[ab] {
                    return Err(Error::invalid("bimodule action does not satisfy the group relations"));
                }
            }
        }
        FunctionsOnG::new(g).verify_coaction(&self.algebra.iter().map(|f| f.images.clone()).collect::<Vec<_>>())?;
        for (k, &s) in g.generators().iter().enumerate() {
            let (phi, psi) = (&self.algebra[s], &self.bimodule[s]);
            if !phi.commutes_with(&self.twist) {
                return Err(Error::precondition(format!("twist does not commute with generator {k}")));
            }
            for v in 0..m.dim() {
                let pv = &psi[v];
                if pv.iter().any(|(w, _)| m.weights[*w] != m.weights[v]) {
                    return Err(Error::invalid(format!("action.generators.{k}.bimodule: not weight preserving")));
                }
                for a in 0..alg.dim() {
                    let left = apply(psi, &m.left[a][v]);
                    let right = apply(psi, &m.right[a][v]);
                    let fa = &phi.images[a];
                    let mut l2 = Acc::new();
                    let mut r2 = Acc::new();
                    for (c, x) in fa {
                        l2.add_scaled(x, &apply(&m.left[*c], pv));
                        r2.add_scaled(x, &apply(&m.right[*c], pv));
                    }
                    if left != l2.finish() || right != r2.finish() {
                        return Err(Error::invalid(format!(
                            "action.generators.{k}.bimodule: not compatible with the algebra action on {}",
                            alg.element(a).name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn algebra_map(&self, g: usize) -> &AlgebraMap {
        &self.algebra[g]
    }

    pub fn bimodule_map(&self, g: usize) -> &Columns {
        &self.bimodule[g]
    }

    /// `h^{-1} ∘ F`, the right twist of the fiber over `h`.
    pub fn fiber_twist(&self, h: usize) -> AlgebraMap {
        self.algebra[self.group.inv(h)].compose(&self.twist)
    }
}

/// One generator's action in JSON: algebra images plus an optional dense bimodule matrix
/// (`m[r][c]` = coefficient of `r` in the image of `c`), defaulting to the algebra map when `M = A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorActionSpec {
    #[serde(default)]
    pub algebra: Option<MorphismSpec>,
    #[serde(default)]
    pub bimodule: Option<Vec<Vec<Rational>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSpec {
    pub generators: Vec<GeneratorActionSpec>,
}

impl ActionSpec {
    pub fn build(&self, alg: &GradedAlgebra, m: &GradedBimodule, group: FiniteGroup, twist: AlgebraMap) -> Result<FiniteGroupAction> {
        let regular = *m == GradedBimodule::regular(alg);
        let mut phis = Vec::new();
        let mut psis = Vec::new();
        for (k, gen) in self.generators.iter().enumerate() {
            let phi = match &gen.algebra {
                Some(s) => s.build(alg).map_err(|e| Error::invalid(format!("action.generators.{k}.algebra: {e}")))?,
                None => AlgebraMap::identity(alg),
            };
            let psi = match &gen.bimodule {
                Some(dense) => {
                    let n = m.dim();
                    if dense.len() != n || dense.iter().any(|r| r.len() != n) {
                        return Err(Error::invalid(format!("action.generators.{k}.bimodule: expected {n}x{n} matrix")));
                    }
                    (0..n).map(|c| (0..n).filter(|&r| !dense[r][c].is_zero()).map(|r| (r, dense[r][c].clone())).collect()).collect()
                }
                None if regular => phi.images.clone(),
                None if phi.is_identity() => m.identity(),
                None => return Err(Error::invalid(format!("action.generators.{k}.bimodule: required unless M = A"))),
            };
            phis.push(phi);
            psis.push(psi);
        }
        FiniteGroupAction::new(alg, m, group, &phis, &psis, twist)
    }
}

/// The pre-Block–Getzler complex on `[-depth, 0]`.
#[derive(Clone, Debug)]
pub struct BGComplex {
    pub depth: usize,
    pub complex: ChainComplex,
    /// Term dimension of one fiber, by degree from `-depth` up.
    fiber_dims: Vec<usize>,
    bases: Vec<TupleBasis>,
    algebra: GradedAlgebra,
    bimodule: GradedBimodule,
    action: FiniteGroupAction,
}

fn tensor_bases(alg: &GradedAlgebra, depth: usize) -> Vec<TupleBasis> {
    let all: Vec<usize> = (0..alg.dim()).collect();
    (0..=depth).map(|n| TupleBasis::product(&vec![all.clone(); n], None)).collect()
}

fn block_diagonal(ring: Ring, blocks: &[ExactMatrix]) -> Result<ExactMatrix> {
    let rows: usize = blocks.iter().map(ExactMatrix::rows).sum();
    let cols: usize = blocks.iter().map(ExactMatrix::cols).sum();
    let mut trip = Vec::new();
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        trip.extend(b.entries().map(|(i, j, x)| (r0 + i, c0 + j, x.clone())));
        r0 += b.rows();
        c0 += b.cols();
    }
    ExactMatrix::from_triplets(ring, rows, cols, trip)
}

fn direct_sum_complexes(parts: &[ChainComplex]) -> Result<ChainComplex> {
    let first = &parts[0];
    let (lo, hi) = (first.lo(), first.hi());
    let dims = (lo..=hi).map(|d| parts.iter().map(|c| c.term_dim(d)).sum()).collect();
    let diffs = (lo..hi)
        .map(|d| block_diagonal(Ring::Rationals, &parts.iter().map(|c| c.differential(d)).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    let c = ChainComplex::new(Ring::Rationals, lo, dims, diffs)?;
    if parts.iter().all(|p| p.weights().is_some()) {
        let weights = (0..=(hi - lo) as usize)
            .map(|k| parts.iter().flat_map(|p| p.weights().unwrap()[k].iter().copied()).collect())
            .collect();
        return c.with_weights(weights);
    }
    Ok(c)
}

/// Builds `⊕_h` of the cyclic bar complexes twisted by `h^{-1} ∘ F` and checks equivariance.
pub fn pre_bg_complex(alg: &GradedAlgebra, m: &GradedBimodule, act: &FiniteGroupAction, depth: usize) -> Result<BGComplex> {
    let fibers = (0..act.group.order())
        .map(|h| cyclic_bar(alg, m, &act.fiber_twist(h), depth))
        .collect::<Result<Vec<_>>>()?;
    let complex = direct_sum_complexes(&fibers)?;
    complex.check_d_squared()?;
    let fiber_dims = (-(depth as i64)..=0).map(|d| fibers[0].term_dim(d)).collect();
    let bases = tensor_bases(alg, depth);
    let bg = BGComplex { depth, complex, fiber_dims, bases, algebra: alg.clone(), bimodule: m.clone(), action: act.clone() };
    for &g in act.group.generators() {
        for n in 1..=depth {
            let d = -(n as i64);
            let lhs = bg.complex.differential(d).mul(&bg.action_matrix(g, n)?)?;
            let rhs = bg.action_matrix(g, n - 1)?.mul(&bg.complex.differential(d))?;
            if lhs != rhs {
                return Err(Error::check(format!("differential out of degree {d} is not equivariant")));
            }
        }
    }
    Ok(bg)
}

impl BGComplex {
    pub fn group(&self) -> &FiniteGroup {
        &self.action.group
    }

    pub fn fiber_dim(&self, degree: i64) -> usize {
        self.fiber_dims[(degree + self.depth as i64) as usize]
    }

    /// Diagonal action of `g` on the term of degree `-n`.
    pub fn act(&self, g: usize, n: usize, b: usize) -> SparseRow {
        let dm = self.bimodule.dim();
        let f = self.fiber_dim(-(n as i64));
        let (h, local) = (b / f, b % f);
        let (t, v) = (local / dm, local % dm);
        let basis = &self.bases[n];
        let phi = self.action.algebra_map(g);
        let mut partial: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), Rational::ONE)];
        for &a in basis.get(t) {
            let mut next = Vec::new();
            for (w, x) in &partial {
                for (c, y) in &phi.images[a] {
                    let mut w2 = w.clone();
                    w2.push(*c);
                    next.push((w2, x * y));
                }
            }
            partial = next;
        }
        let h2 = self.action.group.conj(g, h);
        let mv = &self.action.bimodule_map(g)[v];
        let mut acc = Acc::new();
        for (w, x) in &partial {
            let t2 = basis.position(w).expect("word in tensor basis");
            for (v2, y) in mv {
                acc.add(h2 * f + t2 * dm + v2, &(x * y));
            }
        }
        acc.finish()
    }

    /// Matrix of `g` on the term of degree `-n`.
    pub fn action_matrix(&self, g: usize, n: usize) -> Result<ExactMatrix> {
        let dim = self.complex.term_dim(-(n as i64));
        let cols: Vec<SparseRow> = (0..dim).map(|b| self.act(g, n, b)).collect();
        ExactMatrix::from_columns(Ring::Rationals, dim, &cols)
    }

    /// Basis offsets of the fiber over `h` in the term of degree `d`.
    fn fiber_range(&self, h: usize, d: i64) -> Vec<usize> {
        let f = self.fiber_dim(d);
        (h * f..(h + 1) * f).collect()
    }
}

/// Restriction of the `O(G)` leg to `δ_g`.
pub fn fiber_at(bg: &BGComplex, g: usize) -> Result<ChainComplex> {
    if g >= bg.group().order() {
        return Err(Error::invalid(format!("element {g} is not in a group of order {}", bg.group().order())));
    }
    let lo = -(bg.depth as i64);
    let dims: Vec<usize> = (lo..=0).map(|d| bg.fiber_dim(d)).collect();
    let diffs = (lo..0).map(|d| bg.complex.differential(d).submatrix(&bg.fiber_range(g, d + 1), &bg.fiber_range(g, d))).collect();
    let c = ChainComplex::new(Ring::Rationals, lo, dims, diffs)?;
    match bg.complex.weights() {
        Some(w) => {
            let weights = (lo..=0)
                .map(|d| bg.fiber_range(g, d).into_iter().map(|b| w[(d - lo) as usize][b]).collect())
                .collect();
            c.with_weights(weights)
        }
        None => Ok(c),
    }
}

/// Subcomplex of `G`-invariants under the diagonal action.
pub fn global_sections(bg: &BGComplex) -> Result<ChainComplex> {
    let lo = -(bg.depth as i64);
    let order = bg.group().order();
    let mut bases = Vec::new();
    for n in (0..=bg.depth).rev() {
        let dim = bg.complex.term_dim(-(n as i64));
        let mut seen = vec![false; dim];
        let mut rows = Vec::new();
        for b in 0..dim {
            if seen[b] {
                continue;
            }
            let mut acc = Acc::new();
            for g in 0..order {
                let v = bg.act(g, n, b);
                // permutation-like images need no second visit
                if v.len() == 1 {
                    seen[v[0].0] = true;
                }
                acc.add_scaled(&Rational::ONE, &v);
            }
            let row = acc.finish();
            if !row.is_empty() {
                rows.push(row);
            }
        }
        bases.push(Rref::of_rows(Ring::Rationals, dim, rows)?);
    }
    let dims: Vec<usize> = bases.iter().map(Rref::rank).collect();
    let mut diffs = Vec::new();
    for k in 0..bg.depth {
        let d = lo + k as i64;
        let big = bg.complex.differential(d);
        let cols = bases[k]
            .rows
            .iter()
            .map(|(_, v)| {
                let image = big.apply(v)?;
                let coords = bases[k + 1]
                    .solve_in_row_space(&image)?
                    .ok_or_else(|| Error::check("differential leaves the invariant subcomplex"))?;
                Ok(coords.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            })
            .collect::<Result<Vec<SparseRow>>>()?;
        diffs.push(ExactMatrix::from_columns(Ring::Rationals, dims[k + 1], &cols)?);
    }
    let c = ChainComplex::new(Ring::Rationals, lo, dims, diffs)?;
    match bg.complex.weights() {
        Some(w) => {
            let weights = bases.iter().enumerate().map(|(k, r)| r.rows.iter().map(|(p, _)| w[k][*p]).collect()).collect();
            c.with_weights(weights)
        }
        None => Ok(c),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyReport {
    /// Degrees `-n` on which `d s + s d` was compared.
    pub degrees_checked: Vec<i64>,
    pub holds: bool,
    /// Whether `r` is fixed by every group element; the homotopy is equivariant only then.
    pub invariant: bool,
    /// Whether both actions of `r` agree, so that the difference vanishes.
    pub difference_is_zero: bool,
}

/// Inserting `r` at slot `i` of `a_0 ⊗ ... ⊗ a_{n-1} ⊗ m`, summed with signs `(-1)^i`, on one fiber.
fn insertion_homotopy(alg: &GradedAlgebra, dm: usize, r: &[(usize, Rational)], n: usize) -> Result<ExactMatrix> {
    let bases = tensor_bases(alg, n + 1);
    let (src, dst) = (&bases[n], &bases[n + 1]);
    let mut cols = Vec::with_capacity(src.len() * dm);
    for t in 0..src.len() {
        let a = src.get(t);
        for v in 0..dm {
            let mut acc = Acc::new();
            for i in 0..=n {
                let sign = if i % 2 == 0 { Rational::ONE } else { -Rational::ONE };
                for (c, x) in r {
                    let mut w = a[..i].to_vec();
                    w.push(*c);
                    w.extend_from_slice(&a[i..]);
                    acc.add(dst.position(&w).expect("word") * dm + v, &(&sign * x));
                }
            }
            cols.push(acc.finish());
        }
    }
    ExactMatrix::from_columns(Ring::Rationals, dst.len() * dm, &cols)
}

/// `x ↦ x · σ_h(r) - r · x` on the `M` slot of every fiber.
fn action_difference(bg: &BGComplex, r: &[(usize, Rational)], n: usize) -> Result<ExactMatrix> {
    let alg = &bg.algebra;
    let m = &bg.bimodule;
    let dm = m.dim();
    let tuples = bg.fiber_dim(-(n as i64)) / dm.max(1);
    let mut blocks = Vec::new();
    for h in 0..bg.group().order() {
        let mt = twist_right(alg, m, &bg.action.fiber_twist(h))?;
        let mut per_v = Vec::with_capacity(dm);
        for v in 0..dm {
            let mut acc = Acc::new();
            for (c, x) in r {
                acc.add_scaled(x, &mt.right[*c][v]);
                acc.add_scaled(&-x.clone(), &m.left[*c][v]);
            }
            per_v.push(acc.finish());
        }
        let cols: Vec<SparseRow> = (0..tuples)
            .flat_map(|t| per_v.iter().map(move |col| col.iter().map(|(w, x)| (t * dm + w, x.clone())).collect()))
            .collect();
        blocks.push(ExactMatrix::from_columns(Ring::Rationals, tuples * dm, &cols)?);
    }
    block_diagonal(Ring::Rationals, &blocks)
}

/// Checks `d s + s d = (ϱ∘φ^*)(r) - r` as matrices on degrees `0, -1, ..., -(depth-1)`.
pub fn verify_homotopy(bg: &BGComplex, r: &[(usize, Rational)]) -> Result<HomotopyReport> {
    let alg = &bg.algebra;
    if !alg.is_central(r) {
        return Err(Error::precondition("r is not central in A"));
    }
    let invariant = (0..bg.group().order()).all(|g| bg.action.algebra_map(g).apply(r) == r);
    let order = bg.group().order();
    let dm = bg.bimodule.dim();
    let homotopy = |n: usize| -> Result<ExactMatrix> {
        let block = insertion_homotopy(alg, dm, r, n)?;
        block_diagonal(Ring::Rationals, &vec![block; order])
    };
    let mut degrees = Vec::new();
    let mut holds = true;
    let mut zero = true;
    for n in 0..bg.depth {
        let d = -(n as i64);
        let s_n = homotopy(n)?;
        let mut lhs = bg.complex.differential(d - 1).mul(&s_n)?;
        if n > 0 {
            lhs = lhs.add(&homotopy(n - 1)?.mul(&bg.complex.differential(d))?)?;
        }
        let rhs = action_difference(bg, r, n)?;
        holds &= lhs == rhs;
        zero &= rhs.is_zero();
        degrees.push(d);
    }
    Ok(HomotopyReport { degrees_checked: degrees, holds, invariant, difference_is_zero: zero })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InertiaReport {
    pub group_order: usize,
    pub points: usize,
    /// `dim H^0` of the global sections for `A = k^X`.
    pub h0: usize,
    /// `|{(x, g) : g x = x} / G|` by enumeration.
    pub orbits: usize,
    pub holds: bool,
}

/// Orbits of `G` on `{(x, g) : g x = x}` under `k (x, g) = (k x, k g k^{-1})`.
pub fn inertia_orbits(group: &FiniteGroup, perms: &[Vec<usize>]) -> usize {
    let points = perms.first().map_or(0, Vec::len);
    let pairs: Vec<(usize, usize)> =
        (0..group.order()).flat_map(|g| (0..points).filter(move |&x| perms[g][x] == x).map(move |x| (x, g))).collect();
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    let mut seen = vec![false; pairs.len()];
    let mut count = 0;
    for start in 0..pairs.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let (x, g) = pairs[start];
        for k in 0..group.order() {
            seen[index[&(perms[k][x], group.conj(k, g))]] = true;
        }
    }
    count
}

/// Compares `dim H^0` of the invariant BG complex of `k^X` with the inertia orbit count.
pub fn verify_inertia(group: &FiniteGroup, points: usize) -> Result<InertiaReport> {
    let (alg, act) = FiniteGroupAction::on_points(group.clone(), points)?;
    let m = GradedBimodule::regular(&alg);
    let bg = pre_bg_complex(&alg, &m, &act, 1)?;
    let h0 = global_sections(&bg)?.betti(0)?;
    let perms: Vec<Vec<usize>> = (0..group.order()).map(|g| group.permutation(g).expect("permutation group").to_vec()).collect();
    let orbits = inertia_orbits(group, &perms);
    Ok(InertiaReport { group_order: group.order(), points, h0, orbits, holds: h0 == orbits })
}

/// `Kos_A ⊗_{A^e} (M ⊗ O(G))` with the fiber over `h` twisted by `h^{-1} ∘ F`.
#[derive(Clone, Debug)]
pub struct BoundedModel {
    pub complex: ChainComplex,
    /// Kos length `N`; the model lives on `[-N, 0]`.
    pub length: usize,
    /// False when the Koszul complex was cut at the cap rather than ending.
    pub complete: bool,
}

fn model_fiber(
    alg: &GradedAlgebra,
    m: &GradedBimodule,
    f: &AlgebraMap,
    dual: &crate::koszul::QuadraticDualSpaces,
    length: usize,
) -> Result<ChainComplex> {
    let mt = twist_right(alg, m, f)?;
    let li = alg.num_idempotents();
    // term n: (i, j, k, v) with v in e_j M e_i
    let terms: Vec<Vec<(usize, usize, usize, usize)>> = (0..=length)
        .map(|n| {
            let mut b = Vec::new();
            for i in 0..li {
                for j in 0..li {
                    for k in 0..dual.dim(n, i, j) {
                        for v in 0..mt.dim() {
                            if mt.left_blocks[v] == j && mt.right_blocks[v] == i {
                                b.push((i, j, k, v));
                            }
                        }
                    }
                }
            }
            b
        })
        .collect();
    let index: Vec<BTreeMap<(usize, usize, usize, usize), usize>> =
        terms.iter().map(|t| t.iter().enumerate().map(|(p, b)| (*b, p)).collect()).collect();
    let mut diffs = Vec::new();
    for n in (1..=length).rev() {
        let sign = if n % 2 == 0 { Rational::ONE } else { -Rational::ONE };
        let mut cols = Vec::with_capacity(terms[n].len());
        for &(i, j, k, v) in &terms[n] {
            let split = split_dual_basis(alg, dual, n, i, j, k)?;
            let mut acc = Acc::new();
            for (r, coords) in &split.first {
                let i2 = alg.element(*r).target;
                for (v2, y) in &mt.right[*r][v] {
                    for (k2, z) in coords.iter().enumerate().filter(|(_, z)| !z.is_zero()) {
                        acc.add(index[n - 1][&(i2, j, k2, *v2)], &(y * z));
                    }
                }
            }
            for (r, coords) in &split.last {
                let j2 = alg.element(*r).source;
                for (v2, y) in &mt.left[*r][v] {
                    for (k2, z) in coords.iter().enumerate().filter(|(_, z)| !z.is_zero()) {
                        acc.add(index[n - 1][&(i, j2, k2, *v2)], &(&sign * &(y * z)));
                    }
                }
            }
            cols.push(acc.finish());
        }
        diffs.push(ExactMatrix::from_columns(Ring::Rationals, terms[n - 1].len(), &cols)?);
    }
    let dims = terms.iter().rev().map(Vec::len).collect();
    let weights = (0..=length)
        .rev()
        .map(|n| terms[n].iter().map(|&(_, _, _, v)| n as i64 + mt.weights[v]).collect())
        .collect();
    let c = ChainComplex::new(Ring::Rationals, -(length as i64), dims, diffs)?.with_weights(weights)?;
    c.check_d_squared()?;
    Ok(c)
}

fn model(alg: &GradedAlgebra, m: &GradedBimodule, act: &FiniteGroupAction, cap: usize, allow_cut: bool) -> Result<BoundedModel> {
    let cert = is_koszul(alg, cap)?;
    if !cert.koszul {
        return Err(Error::precondition(format!(
            "algebra is not Koszul (violation found by is_koszul below degree {})",
            cert.verified_to + 1
        )));
    }
    let kos = koszul_complex(alg, cap)?;
    if !kos.complete && !allow_cut {
        return Err(Error::precondition(format!(
            "Koszul complex does not end by degree {cap}; certify a finite Kos length with is_koszul or use the truncated model"
        )));
    }
    let dual = quadratic_dual_spaces(alg, kos.length)?;
    let fibers = (0..act.group.order())
        .map(|h| model_fiber(alg, m, &act.fiber_twist(h), &dual, kos.length))
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundedModel { complex: direct_sum_complexes(&fibers)?, length: kos.length, complete: kos.complete })
}

/// The bounded model for a Koszul algebra whose Koszul complex ends by degree `cap`.
pub fn bounded_trace_model(alg: &GradedAlgebra, m: &GradedBimodule, act: &FiniteGroupAction, cap: usize) -> Result<BoundedModel> {
    model(alg, m, act, cap, false)
}

/// The model cut at `cap` when the Koszul complex is infinite; reliable in degrees `>= -cap + 1`.
pub fn truncated_trace_model(alg: &GradedAlgebra, m: &GradedBimodule, act: &FiniteGroupAction, cap: usize) -> Result<BoundedModel> {
    model(alg, m, act, cap, true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmplitudeReport {
    pub amplitude: Option<(i64, i64)>,
    pub bound: (i64, i64),
    pub within_bound: bool,
    /// No cohomology in positive degrees.
    pub connective: bool,
    pub note: &'static str,
}

/// `[lo, hi]` of nonvanishing cohomology, `None` for an acyclic complex.
pub fn amplitude(c: &ChainComplex) -> Result<Option<(i64, i64)>> {
    c.amplitude()
}

pub fn amplitude_report(model: &BoundedModel) -> Result<AmplitudeReport> {
    let amp = amplitude(&model.complex)?;
    let bound = (-(model.length as i64), 0);
    let within_bound = amp.is_none_or(|(lo, hi)| lo >= bound.0 && hi <= bound.1);
    let connective = amp.is_none_or(|(_, hi)| hi <= 0);
    Ok(AmplitudeReport { amplitude: amp, bound, within_bound, connective, note: "amplitude bound, not coconcentration" })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::examples;
    use crate::groups::named;
    use crate::hochschild::hochschild_homology;

    fn dual_numbers_z2(twist: Option<i64>) -> (GradedAlgebra, GradedBimodule, FiniteGroupAction) {
        let a = examples::dual_numbers().build().unwrap();
        let x = a.basis_index("x").unwrap();
        let neg = AlgebraMap::from_generators(&a, &[0], &[vec![(x, Rational::from(-1))]]).unwrap();
        let f = match twist {
            None => AlgebraMap::identity(&a),
            Some(c) => AlgebraMap::from_generators(&a, &[0], &[vec![(x, Rational::from(c))]]).unwrap(),
        };
        let act = FiniteGroupAction::on_regular(&a, named::cyclic(2), &[neg], f).unwrap();
        (a.clone(), GradedBimodule::regular(&a), act)
    }

    fn dims(c: &ChainComplex) -> Vec<usize> {
        (c.lo()..=c.hi()).map(|d| c.term_dim(d)).collect()
    }

    #[test]
    fn trivial_group_is_the_cyclic_bar() {
        let a = examples::a2_path().build().unwrap();
        let m = GradedBimodule::regular(&a);
        let act = FiniteGroupAction::trivial(&a, &m, named::trivial(), AlgebraMap::identity(&a)).unwrap();
        let bg = pre_bg_complex(&a, &m, &act, 3).unwrap();
        let bar = cyclic_bar(&a, &m, &AlgebraMap::identity(&a), 3).unwrap();
        assert_eq!(bg.complex, bar);
        assert_eq!(fiber_at(&bg, 0).unwrap(), bar);
        assert_eq!(global_sections(&bg).unwrap().betti_numbers().unwrap(), bar.betti_numbers().unwrap());
    }

    #[test]
    fn dual_numbers_term_dims() {
        let (a, m, act) = dual_numbers_z2(None);
        let bg = pre_bg_complex(&a, &m, &act, 2).unwrap();
        // (dim A)^n · dim M · |G| for n = 2, 1, 0
        assert_eq!(dims(&bg.complex), vec![16, 8, 4]);
        let e = fiber_at(&bg, 0).unwrap();
        assert_eq!(e, cyclic_bar(&a, &m, &AlgebraMap::identity(&a), 2).unwrap());
        let s = fiber_at(&bg, 1).unwrap();
        assert_eq!(s, cyclic_bar(&a, &m, &act.fiber_twist(1), 2).unwrap());
        for d in -2..=0 {
            assert_eq!(e.term_dim(d) + s.term_dim(d), bg.complex.term_dim(d));
        }
    }

    #[test]
    fn tails_are_alternating_face_sums() {
        // oracle: faces written out directly for n = 1, 2 on the σ fiber
        let (a, m, act) = dual_numbers_z2(Some(2));
        let bg = pre_bg_complex(&a, &m, &act, 2).unwrap();
        let fib = fiber_at(&bg, 1).unwrap();
        let sigma = act.fiber_twist(1);
        let n = a.dim();
        let mul = |p: usize, q: usize| a.mul_basis(p, q).clone();
        // n = 1: a ⊗ m -> m σ(a) - a m
        let mut cols = Vec::new();
        for p in 0..n {
            for v in 0..n {
                let mut acc = Acc::new();
                acc.add_scaled(&Rational::ONE, &a.mul(&unit(v), &sigma.images[p]));
                acc.add_scaled(&-Rational::ONE, &mul(p, v));
                cols.push(acc.finish());
            }
        }
        assert_eq!(fib.differential(-1), ExactMatrix::from_columns(Ring::Rationals, n, &cols).unwrap());
        // n = 2: a ⊗ b ⊗ m -> b ⊗ m σ(a) - ab ⊗ m + a ⊗ b m
        let mut cols = Vec::new();
        for p in 0..n {
            for q in 0..n {
                for v in 0..n {
                    let mut acc = Acc::new();
                    for (w, x) in a.mul(&unit(v), &sigma.images[p]) {
                        acc.add(q * n + w, &x);
                    }
                    for (c, x) in mul(p, q) {
                        acc.add(c * n + v, &-x);
                    }
                    for (w, x) in mul(q, v) {
                        acc.add(p * n + w, &x);
                    }
                    cols.push(acc.finish());
                }
            }
        }
        assert_eq!(fib.differential(-2), ExactMatrix::from_columns(Ring::Rationals, n * n, &cols).unwrap());
    }

    #[test]
    fn permuted_idempotents_term_zero() {
        let (a, act) = FiniteGroupAction::on_points(named::symmetric(3), 3).unwrap();
        let m = GradedBimodule::regular(&a);
        let bg = pre_bg_complex(&a, &m, &act, 1).unwrap();
        assert_eq!(bg.complex.term_dim(0), 18);
    }

    #[test]
    fn fibers_compute_twisted_hochschild_homology() {
        for twist in [None, Some(-1), Some(2)] {
            let (a, m, act) = dual_numbers_z2(twist);
            let bg = pre_bg_complex(&a, &m, &act, 5).unwrap();
            for h in 0..2 {
                let fib = fiber_at(&bg, h).unwrap();
                let hh = hochschild_homology(&a, &m, &act.fiber_twist(h), 5).unwrap();
                for d in -4..=0 {
                    assert_eq!(fib.betti(d).unwrap(), hh.dim(d), "twist {twist:?}, fiber {h}, degree {d}");
                }
            }
        }
    }

    #[test]
    fn dual_numbers_global_sections() {
        let (a, m, act) = dual_numbers_z2(None);
        let bg = pre_bg_complex(&a, &m, &act, 3).unwrap();
        let glob = global_sections(&bg).unwrap();
        // oracle: invariants of H^0 on each fiber, both fibers fixed by conjugation.
        // e: HH_0 = A, σ acts by 1 on 1 and -1 on x; σ: A / (2x) = span{1}, σ fixes it
        assert_eq!(glob.betti(0).unwrap(), 2);
    }

    #[test]
    fn inertia_small_cases() {
        let swap = FiniteGroup::from_permutations(2, &[vec![1, 0]]).unwrap();
        assert_eq!(verify_inertia(&swap, 2).unwrap().h0, 1);
        let on_point = FiniteGroup::from_permutations(1, &[vec![0], vec![0]]).unwrap();
        assert_eq!(on_point.order(), 1);
        // Z/2 acting trivially on one point: class functions of Z/2
        let a = semisimple(1);
        let m = GradedBimodule::regular(&a);
        let triv = FiniteGroupAction::trivial(&a, &m, named::cyclic(2), AlgebraMap::identity(&a)).unwrap();
        let bg = pre_bg_complex(&a, &m, &triv, 1).unwrap();
        assert_eq!(global_sections(&bg).unwrap().betti(0).unwrap(), 2);
        let r = verify_inertia(&named::symmetric(3), 3).unwrap();
        assert!(r.holds);
        // pairs: (x, e) one orbit, (x, transposition fixing x) one orbit, 3-cycles fix nothing
        assert_eq!(r.orbits, 2);
    }

    #[test]
    fn trivial_group_inertia_counts_points() {
        let g = FiniteGroup::from_permutations(4, &[vec![0, 1, 2, 3]]).unwrap();
        let r = verify_inertia(&g, 4).unwrap();
        assert_eq!((r.h0, r.orbits), (4, 4));
    }

    #[test]
    fn homotopy_with_unit() {
        let (a, m, act) = dual_numbers_z2(None);
        let bg = pre_bg_complex(&a, &m, &act, 3).unwrap();
        let r = verify_homotopy(&bg, &a.unit()).unwrap();
        assert!(r.holds && r.invariant && r.difference_is_zero);
    }

    #[test]
    fn homotopy_with_x() {
        let (a, m, act) = dual_numbers_z2(None);
        let x = unit(a.basis_index("x").unwrap());
        let bg = pre_bg_complex(&a, &m, &act, 3).unwrap();
        let r = verify_homotopy(&bg, &x).unwrap();
        assert!(r.holds && !r.difference_is_zero && !r.invariant);
        let (a, m, act) = dual_numbers_z2(Some(-1));
        let bg = pre_bg_complex(&a, &m, &act, 3).unwrap();
        let r = verify_homotopy(&bg, &x).unwrap();
        assert!(r.holds && !r.difference_is_zero);
    }

    #[test]
    fn homotopy_needs_central_element() {
        let a = examples::a2_path().build().unwrap();
        let m = GradedBimodule::regular(&a);
        let act = FiniteGroupAction::trivial(&a, &m, named::trivial(), AlgebraMap::identity(&a)).unwrap();
        let bg = pre_bg_complex(&a, &m, &act, 2).unwrap();
        assert!(verify_homotopy(&bg, &unit(a.basis_index("a").unwrap())).is_err());
    }

    #[test]
    fn twist_must_commute() {
        let a = semisimple(3);
        let (_, act) = FiniteGroupAction::on_points(named::symmetric(3), 3).unwrap();
        let cyc = AlgebraMap::permutation(&a, &[1, 2, 0]).unwrap();
        let gens: Vec<AlgebraMap> = (0..act.group.generators().len()).map(|k| act.algebra_map(act.group.generators()[k]).clone()).collect();
        assert!(FiniteGroupAction::on_regular(&a, named::symmetric(3), &gens, cyc).is_err());
    }

    #[test]
    fn bounded_model_of_a2() {
        let a = examples::a2_path().build().unwrap();
        let m = GradedBimodule::regular(&a);
        let act = FiniteGroupAction::trivial(&a, &m, named::trivial(), AlgebraMap::identity(&a)).unwrap();
        let model = bounded_trace_model(&a, &m, &act, 4).unwrap();
        assert_eq!(model.length, 1);
        let hh = hochschild_homology(&a, &m, &AlgebraMap::identity(&a), 4).unwrap();
        for d in -1..=0 {
            assert_eq!(model.complex.betti(d).unwrap(), hh.dim(d));
        }
        let rep = amplitude_report(&model).unwrap();
        assert!(rep.within_bound && rep.connective);
    }

    #[test]
    fn bounded_model_of_semisimple_is_degree_zero() {
        let a = semisimple(2);
        let m = GradedBimodule::regular(&a);
        let act = FiniteGroupAction::trivial(&a, &m, named::trivial(), AlgebraMap::identity(&a)).unwrap();
        let model = bounded_trace_model(&a, &m, &act, 3).unwrap();
        assert_eq!((model.length, model.complex.lo(), model.complex.term_dim(0)), (0, 0, 2));
    }

    #[test]
    fn infinite_koszul_complex_is_rejected() {
        let (a, m, act) = dual_numbers_z2(None);
        assert!(bounded_trace_model(&a, &m, &act, 4).is_err());
        let cut = truncated_trace_model(&a, &m, &act, 4).unwrap();
        assert!(!cut.complete);
        let bg = pre_bg_complex(&a, &m, &act, 5).unwrap();
        for d in -3..=0 {
            assert_eq!(cut.complex.betti(d).unwrap(), bg.complex.betti(d).unwrap(), "degree {d}");
        }
    }

    #[test]
    fn zero_module_has_empty_amplitude() {
        let a = examples::a2_path().build().unwrap();
        let m = GradedBimodule::zero(&a);
        let act = FiniteGroupAction::trivial(&a, &m, named::trivial(), AlgebraMap::identity(&a)).unwrap();
        let model = bounded_trace_model(&a, &m, &act, 3).unwrap();
        assert_eq!(amplitude(&model.complex).unwrap(), None);
    }

    #[test]
    fn coaction_axioms() {
        let (_, act) = FiniteGroupAction::on_points(named::symmetric(3), 3).unwrap();
        let rep: Vec<Columns> = (0..6).map(|g| act.algebra_map(g).images.clone()).collect();
        let o = FunctionsOnG::new(&act.group);
        o.verify_coaction(&rep).unwrap();
        assert_eq!(o.coaction(&rep, &unit(0))[0], unit(0));
    }
}
