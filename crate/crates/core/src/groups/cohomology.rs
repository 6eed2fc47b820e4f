//! `H^n(G, M)` from normalized inhomogeneous cochains.
//!
//! A cochain is a function on tuples of non-identity elements; with `M` a
//! quotient `Z^m / T`, cocycles are cochains whose coboundary lies in `T`.
//! `H^n = Z^n / (B^n + T^n)` is read off a Smith form, keeping enough of the
//! transforms to name generators and to take coordinates of any cocycle.

use std::collections::BTreeMap;

use serde::Serialize;

use super::group::FiniteGroup;
use super::module::GModule;
use crate::error::{Error, Result};
use crate::exact::echelon::{IntRow, ZLattice};
use crate::exact::{integer_kernel, smith_normal_form, AbelianGroupStructure, ExactMatrix, Integer, Rational, Ring, Rref};

/// Bound on `(|G|-1)^{n+1} * rank(M)`, the rows of the largest coboundary matrix.
pub const CELL_CAP: usize = 20_000;

/// Tuples of non-identity elements, lexicographic.
pub fn cells(order: usize, n: usize) -> usize {
    (order - 1).pow(n as u32)
}

/// Element tuple of cell `c`, first entry most significant.
pub fn cell_tuple(order: usize, n: usize, mut c: usize) -> Vec<usize> {
    let b = order - 1;
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = c % b + 1;
        c /= b;
    }
    out
}

/// Cell of a tuple, or `None` if some entry is the identity.
pub fn cell_index(order: usize, t: &[usize]) -> Option<usize> {
    let b = order - 1;
    let mut c = 0;
    for &x in t {
        if x == 0 {
            return None;
        }
        c = c * b + (x - 1);
    }
    Some(c)
}

/// Coboundary `C^n -> C^{n+1}` over the integers, one row per `(cell, component)`.
pub fn coboundary(g: &FiniteGroup, m: &GModule, n: usize) -> Vec<IntRow> {
    let ord = g.order();
    let r = m.rank();
    let mut rows = Vec::with_capacity(cells(ord, n + 1) * r);
    for c in 0..cells(ord, n + 1) {
        let t = cell_tuple(ord, n + 1, c);
        let a = m.action(t[0]);
        let first = cell_index(ord, &t[1..]);
        let mut middle = Vec::with_capacity(n);
        for i in 1..=n {
            let mut s = t[..i - 1].to_vec();
            s.push(g.mul(t[i - 1], t[i]));
            s.extend_from_slice(&t[i + 1..]);
            middle.push((cell_index(ord, &s), if i % 2 == 0 { 1 } else { -1 }));
        }
        middle.push((cell_index(ord, &t[..n]), if (n + 1) % 2 == 0 { 1 } else { -1 }));
        for o in 0..r {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            if let Some(cell) = first {
                for i in 0..r {
                    if a[o][i] != 0 {
                        *acc.entry(cell * r + i).or_default() += a[o][i];
                    }
                }
            }
            for &(cell, sign) in &middle {
                if let Some(cell) = cell {
                    *acc.entry(cell * r + o).or_default() += sign;
                }
            }
            rows.push(acc.into_iter().filter(|(_, v)| *v != 0).map(|(k, v)| (k, Integer::from(v))).collect());
        }
    }
    rows
}

fn to_matrix(rows: &[IntRow], cols: usize) -> Result<ExactMatrix> {
    let trip = rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(c, v)| (i, *c, Rational::from(v.clone()))));
    ExactMatrix::from_triplets(Ring::Integers, rows.len(), cols, trip)
}

/// Coordinates of `v` in an echelon basis with leading entries first, if `v` lies in the lattice.
fn lattice_coords(basis: &[IntRow], v: &IntRow) -> Option<Vec<Integer>> {
    let mut rest: BTreeMap<usize, Integer> = v.iter().cloned().collect();
    let mut out = vec![Integer::ZERO; basis.len()];
    for (k, row) in basis.iter().enumerate() {
        let (p, lead) = &row[0];
        let Some(x) = rest.get(p).cloned() else { continue };
        if !x.is_divisible_by(lead) {
            return None;
        }
        let q = x.div_exact(lead);
        for (c, y) in row {
            let e = rest.entry(*c).or_insert(Integer::ZERO);
            *e -= &(&q * y);
            if e.is_zero() {
                rest.remove(c);
            }
        }
        out[k] = q;
    }
    rest.is_empty().then_some(out)
}

fn dense_inverse(m: &[Vec<Integer>]) -> Result<Vec<Vec<Integer>>> {
    let k = m.len();
    let rows = (0..k).map(|i| {
        let mut r: Vec<(usize, Rational)> =
            m[i].iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, Rational::from(x.clone()))).collect();
        r.push((k + i, Rational::ONE));
        r
    });
    let rref = Rref::of_rows(Ring::Rationals, 2 * k, rows)?;
    if rref.rank() != k || rref.rows.iter().take(k).enumerate().any(|(i, (p, _))| *p != i) {
        return Err(Error::check("transform is not invertible"));
    }
    let mut out = vec![vec![Integer::ZERO; k]; k];
    for (i, (_, row)) in rref.rows.iter().enumerate() {
        for (c, v) in row {
            if *c >= k {
                out[i][c - k] = v.to_integer().ok_or_else(|| Error::check("transform is not unimodular"))?;
            }
        }
    }
    Ok(out)
}

/// `H^n(G, M)` together with generators and a coordinate map.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: usize,
    pub structure: AbelianGroupStructure,
    cochain_dim: usize,
    /// Echelon basis of the cocycle lattice.
    zbasis: Vec<IntRow>,
    /// `right` transform of the Smith form and its inverse.
    right: Vec<Vec<Integer>>,
    right_inv: Vec<Vec<Integer>>,
    /// Order of each Smith coordinate (0 for Z).
    orders: Vec<Integer>,
    /// Smith coordinates that survive (order other than 1), torsion first then free.
    kept: Vec<usize>,
}

/// A normalized cocycle and the group it represents a class of.
#[derive(Clone, Debug, Serialize)]
pub struct CocycleClass {
    pub degree: usize,
    /// Values on cells, `rank(M)` integers per cell.
    pub cochain: Vec<i64>,
    /// Order of the class (0 for infinite).
    pub order: Integer,
    pub ambient: AbelianGroupStructure,
}

impl CocycleClass {
    /// Cocycle identity modulo torsion, with normalization built into the cell indexing.
    pub fn verify(&self, g: &FiniteGroup, m: &GModule) -> Result<()> {
        let rows = coboundary(g, m, self.degree);
        let r = m.rank();
        for (k, row) in rows.iter().enumerate() {
            let v: Integer = row.iter().map(|(c, x)| x * &Integer::from(self.cochain[*c])).sum();
            let t = m.modulus(k % r);
            let ok = if t == 0 { v.is_zero() } else { v.is_divisible_by(&Integer::from(t)) };
            if !ok {
                return Err(Error::check(format!("cocycle identity fails at row {k}")));
            }
        }
        Ok(())
    }
}

pub fn cohomology(g: &FiniteGroup, m: &GModule, n: usize) -> Result<Cohomology> {
    cohomology_capped(g, m, n, CELL_CAP)
}

pub fn cohomology_capped(g: &FiniteGroup, m: &GModule, n: usize, cap: usize) -> Result<Cohomology> {
    let ord = g.order();
    let r = m.rank();
    let top = cells(ord, n + 1).saturating_mul(r);
    if top > cap {
        return Err(Error::cap(format!("{top} cochain cells in degree {} exceed the cap of {cap}", n + 1)));
    }
    let dim = cells(ord, n) * r;
    let dim_next = cells(ord, n + 1) * r;
    // [d | -D] with one extra column per torsion coordinate of C^{n+1}
    let mut rows = coboundary(g, m, n);
    let mut extra = dim;
    for (k, row) in rows.iter_mut().enumerate() {
        let t = m.modulus(k % r);
        if t != 0 {
            row.push((extra, Integer::from(-t)));
            extra += 1;
        }
    }
    debug_assert_eq!(rows.len(), dim_next);
    let ker = integer_kernel(&to_matrix(&rows, extra)?)?;
    let mut lat = ZLattice::new();
    for v in ker {
        let proj: IntRow = v.into_iter().filter(|(c, _)| *c < dim).collect();
        lat.insert(proj);
    }
    let zbasis = lat.hermite_rows();
    let k = zbasis.len();
    // relations: coboundaries and torsion multiples
    let mut rels: Vec<Vec<Integer>> = Vec::new();
    let mut push = |v: IntRow| -> Result<()> {
        if v.is_empty() {
            return Ok(());
        }
        let c = lattice_coords(&zbasis, &v).ok_or_else(|| Error::check("relation is not a cocycle"))?;
        if c.iter().any(|x| !x.is_zero()) {
            rels.push(c);
        }
        Ok(())
    };
    if n >= 1 {
        let prev = coboundary(g, m, n - 1);
        let mut cols: Vec<IntRow> = vec![Vec::new(); cells(ord, n - 1) * r];
        for (i, row) in prev.iter().enumerate() {
            for (c, v) in row {
                cols[*c].push((i, v.clone()));
            }
        }
        for col in cols {
            push(col)?;
        }
    }
    for cell in 0..cells(ord, n) {
        for comp in m.free_rank..r {
            push(vec![(cell * r + comp, Integer::from(m.modulus(comp)))])?;
        }
    }
    let (right, orders) = if k == 0 {
        (Vec::new(), Vec::new())
    } else if rels.is_empty() {
        let id = (0..k).map(|i| (0..k).map(|j| if i == j { Integer::ONE } else { Integer::ZERO }).collect()).collect();
        (id, vec![Integer::ZERO; k])
    } else {
        let trip = rels.iter().enumerate().flat_map(|(i, row)| {
            row.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(j, x)| (i, j, Rational::from(x.clone())))
        });
        let x = ExactMatrix::from_triplets(Ring::Integers, rels.len(), k, trip)?;
        let snf = smith_normal_form(&x)?;
        let right: Vec<Vec<Integer>> = snf
            .right_transform
            .to_dense()
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.to_integer().expect("integer transform")).collect())
            .collect();
        let mut orders: Vec<Integer> = snf.invariant_factors.iter().map(Integer::abs).collect();
        orders.resize(k, Integer::ZERO);
        (right, orders)
    };
    let right_inv = dense_inverse(&right)?;
    let mut kept: Vec<usize> = (0..k).filter(|&i| !orders[i].is_one() && !orders[i].is_zero()).collect();
    kept.extend((0..k).filter(|&i| orders[i].is_zero()));
    let torsion: Vec<Integer> = (0..k).filter(|&i| !orders[i].is_one() && !orders[i].is_zero()).map(|i| orders[i].clone()).collect();
    let free = (0..k).filter(|&i| orders[i].is_zero()).count();
    let structure = AbelianGroupStructure::from_cyclic_orders(free, &torsion);
    Ok(Cohomology { degree: n, structure, cochain_dim: dim, zbasis, right, right_inv, orders, kept })
}

impl Cohomology {
    /// Orders of the chosen generators (0 for infinite cyclic).
    pub fn generator_orders(&self) -> Vec<Integer> {
        self.kept.iter().map(|&i| self.orders[i].clone()).collect()
    }

    pub fn generator_count(&self) -> usize {
        self.kept.len()
    }

    /// Cochain representing generator `j`.
    pub fn generator(&self, j: usize) -> Vec<i64> {
        let i = self.kept[j];
        let mut out = vec![Integer::ZERO; self.cochain_dim];
        for (b, coef) in self.right_inv[i].iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (c, v) in &self.zbasis[b] {
                out[*c] += &(coef * v);
            }
        }
        out.into_iter().map(|x| x.to_i64().expect("cochain entries fit in i64")).collect()
    }

    pub fn generators(&self) -> Vec<CocycleClass> {
        (0..self.generator_count())
            .map(|j| CocycleClass {
                degree: self.degree,
                cochain: self.generator(j),
                order: self.orders[self.kept[j]].clone(),
                ambient: self.structure.clone(),
            })
            .collect()
    }

    /// Coordinates of a cocycle on the generators, reduced modulo their orders.
    pub fn coordinates(&self, cochain: &[i64]) -> Result<Vec<Integer>> {
        let v: IntRow = cochain.iter().enumerate().filter(|(_, x)| **x != 0).map(|(c, x)| (c, Integer::from(*x))).collect();
        let c = lattice_coords(&self.zbasis, &v).ok_or_else(|| Error::precondition("cochain is not a cocycle"))?;
        Ok(self
            .kept
            .iter()
            .map(|&i| {
                let s: Integer = c.iter().zip(&self.right).map(|(x, row)| x * &row[i]).sum();
                let o = &self.orders[i];
                if o.is_zero() {
                    s
                } else {
                    s.div_mod_floor(o).1
                }
            })
            .collect())
    }
}

/// `res: H^n(G, M) -> H^n(H, M)` on the chosen generators.
#[derive(Clone, Debug, Serialize)]
pub struct RestrictionMap {
    pub source: AbelianGroupStructure,
    pub target: AbelianGroupStructure,
    pub source_orders: Vec<Integer>,
    pub target_orders: Vec<Integer>,
    /// Row `i`: image of source generator `i` in target coordinates.
    pub matrix: Vec<Vec<Integer>>,
}

/// Restricts a cochain on `G` along `emb: H -> G`.
pub fn restrict_cochain(g_order: usize, h_order: usize, emb: &[usize], n: usize, rank: usize, f: &[i64]) -> Vec<i64> {
    let mut out = vec![0; cells(h_order, n) * rank];
    for c in 0..cells(h_order, n) {
        let t: Vec<usize> = cell_tuple(h_order, n, c).into_iter().map(|h| emb[h]).collect();
        if let Some(gc) = cell_index(g_order, &t) {
            out[c * rank..(c + 1) * rank].copy_from_slice(&f[gc * rank..(gc + 1) * rank]);
        }
    }
    out
}

/// `elements` is the element set of the subgroup, in any order.
pub fn restriction(g: &FiniteGroup, elements: &[usize], m: &GModule, n: usize) -> Result<RestrictionMap> {
    let mut sorted = elements.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.iter().any(|&x| x >= g.order()) || !g.is_subgroup(&sorted) {
        return Err(Error::precondition("H is not a subgroup"));
    }
    let (h, _) = g.subgroup(&sorted);
    let h_emb = sorted;
    let mh = m.restrict(&h_emb);
    let src = cohomology(g, m, n)?;
    let tgt = cohomology(&h, &mh, n)?;
    let matrix = (0..src.generator_count())
        .map(|j| {
            let f = restrict_cochain(g.order(), h.order(), &h_emb, n, m.rank(), &src.generator(j));
            tgt.coordinates(&f)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RestrictionMap {
        source_orders: src.generator_orders(),
        target_orders: tgt.generator_orders(),
        source: src.structure,
        target: tgt.structure,
        matrix,
    })
}

impl RestrictionMap {
    /// Order of the image when the target is finite.
    pub fn image_order(&self) -> Option<Integer> {
        if self.target_orders.iter().any(Integer::is_zero) {
            return None;
        }
        let k = self.target_orders.len();
        let mut lat = ZLattice::new();
        let mut rel = Integer::ONE;
        for (j, o) in self.target_orders.iter().enumerate() {
            lat.insert(vec![(j, o.clone())]);
            rel = &rel * o;
        }
        for row in &self.matrix {
            lat.insert(row.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect());
        }
        let spanned: Integer = lat.invariant_factors(k).into_iter().product();
        Some(rel.div_exact(&spanned))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|r| r.iter().all(Integer::is_zero))
    }

    pub fn is_surjective(&self) -> Option<bool> {
        Some(self.image_order()? == self.target.order()?)
    }

    pub fn is_injective(&self) -> Option<bool> {
        Some(self.image_order()? == self.source.order()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::group::named::*;
    use crate::groups::module::IntMatrix;

    fn h(g: &FiniteGroup, m: &GModule, n: usize) -> AbelianGroupStructure {
        cohomology(g, m, n).unwrap().structure
    }

    #[test]
    fn trivial_integer_coefficients() {
        let g = symmetric(3);
        let z = GModule::trivial(&g, 1, vec![]).unwrap();
        assert_eq!(h(&g, &z, 0), AbelianGroupStructure::free(1));
        assert!(h(&g, &z, 1).is_trivial());
        // H^2(G, Z) = Hom(G, Q/Z) = G^ab
        assert_eq!(h(&g, &z, 2), AbelianGroupStructure::cyclic(2));
        let c4 = cyclic(4);
        let z4 = GModule::trivial(&c4, 1, vec![]).unwrap();
        assert_eq!(h(&c4, &z4, 2), AbelianGroupStructure::cyclic(4));
    }

    #[test]
    fn cyclic_group_with_finite_coefficients() {
        let g = cyclic(2);
        let m = GModule::trivial(&g, 0, vec![2]).unwrap();
        for n in 0..=3 {
            assert_eq!(h(&g, &m, n), AbelianGroupStructure::cyclic(2));
        }
    }

    #[test]
    fn sign_module() {
        let g = cyclic(2);
        let m = GModule::signs(&g, &[-1]).unwrap();
        assert!(h(&g, &m, 0).is_trivial());
        assert_eq!(h(&g, &m, 1), AbelianGroupStructure::cyclic(2));
        assert!(h(&g, &m, 2).is_trivial());
    }

    /// For a cyclic group, `H^1 = ker N / (1 - σ)M` is the torsion of `coker(1 - σ)`.
    fn cyclic_h1_oracle(s: &IntMatrix) -> AbelianGroupStructure {
        let r = s.len();
        let rows: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j) - s[i][j]).collect()).collect();
        let m = ExactMatrix::from_dense(Ring::Integers, &rows).unwrap();
        let mut a = AbelianGroupStructure::cokernel_of_rows(&m.transpose()).unwrap();
        a.free_rank = 0;
        a
    }

    #[test]
    fn sl3_lattice_first_cohomology() {
        let c3 = FiniteGroup::from_permutations(3, &[vec![1, 2, 0]]).unwrap();
        let l = GModule::sl3_weight_lattice(&c3).unwrap();
        let oracle = cyclic_h1_oracle(l.action(c3.generators()[0]));
        assert_eq!(oracle, AbelianGroupStructure::cyclic(3));
        assert_eq!(h(&c3, &l, 1), oracle);
        // a transposition swaps the basis ε_1, ε_2, so Λ is the regular module
        let c2 = FiniteGroup::from_permutations(3, &[vec![1, 0, 2]]).unwrap();
        let l = GModule::sl3_weight_lattice(&c2).unwrap();
        let oracle = cyclic_h1_oracle(l.action(c2.generators()[0]));
        assert!(oracle.is_trivial());
        assert_eq!(h(&c2, &l, 1), oracle);
    }

    #[test]
    fn generators_are_cocycles_with_the_right_orders() {
        let g = symmetric(3);
        let m = GModule::trivial(&g, 1, vec![]).unwrap();
        let c = cohomology(&g, &m, 2).unwrap();
        for class in c.generators() {
            class.verify(&g, &m).unwrap();
            let coords = c.coordinates(&class.cochain).unwrap();
            assert_eq!(coords, vec![Integer::ONE]);
        }
    }

    #[test]
    fn shapiro_for_the_regular_module() {
        let g = cyclic(3);
        let m = GModule::regular(&g).unwrap();
        assert_eq!(h(&g, &m, 0), AbelianGroupStructure::free(1));
        assert!(h(&g, &m, 1).is_trivial());
        assert!(h(&g, &m, 2).is_trivial());
    }

    #[test]
    fn restriction_to_trivial_subgroup_is_zero() {
        let g = symmetric(3);
        let m = GModule::trivial(&g, 1, vec![]).unwrap();
        let r = restriction(&g, &[0], &m, 2).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.image_order(), Some(Integer::ONE));
    }

    #[test]
    fn cap_names_the_cell_count() {
        let g = symmetric(4);
        let m = GModule::trivial(&g, 1, vec![]).unwrap();
        let err = cohomology(&g, &m, 3).unwrap_err().to_string();
        assert!(err.contains("279841"), "{err}");
    }
}
