//! Row-echelon engines: fraction-free rank over Q, rank over Z/p, reduced
//! echelon form with kernels over a field, and integer row lattices.

use std::collections::BTreeMap;

use super::matrix::{mod_inverse, mul_mod, ExactMatrix, Ring, SparseRow};
use super::{Integer, Rational};
use crate::error::{Error, Result};

/// Sparse integer vector with increasing indices and no zeros.
pub type IntRow = Vec<(usize, Integer)>;

pub(crate) fn content(row: &IntRow) -> Integer {
    let mut g = Integer::ZERO;
    for (_, v) in row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}

fn make_primitive(row: &mut IntRow) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
}

/// `a*x + b*y` for sparse integer rows.
pub(crate) fn axpby(a: &Integer, x: &IntRow, b: &Integer, y: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            let v = a * &x[i].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
        } else if take_y {
            let v = b * &y[j].1;
            if !v.is_zero() {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let v = a * &x[i].1 + b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Clears denominators of a rational row; the result is primitive.
pub fn primitive_int_row(row: &[(usize, Rational)]) -> IntRow {
    let mut l = Integer::ONE;
    for (_, v) in row {
        l = l.lcm(v.denom());
    }
    let mut out: IntRow = row.iter().map(|(c, v)| (*c, (v.numer() * &l).div_exact(v.denom()))).collect();
    make_primitive(&mut out);
    out
}

/// Incremental fraction-free echelon over Q.
#[derive(Clone, Debug, Default)]
pub struct QEchelon {
    pivots: BTreeMap<usize, IntRow>,
}

impl QEchelon {
    pub fn new() -> QEchelon {
        QEchelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts a row; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, mut v: IntRow) -> bool {
        make_primitive(&mut v);
        loop {
            let Some(&(lead, _)) = v.first() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => {
                    let pl = &p[0].1;
                    let vl = &v[0].1;
                    let g = pl.gcd(vl);
                    let a = pl.div_exact(&g);
                    let b = -vl.div_exact(&g);
                    v = axpby(&a, &v, &b, p);
                    make_primitive(&mut v);
                }
                None => {
                    if v[0].1.is_negative() {
                        for (_, x) in v.iter_mut() {
                            *x = -&*x;
                        }
                    }
                    self.pivots.insert(lead, v);
                    return true;
                }
            }
        }
    }

    pub fn insert_rational(&mut self, row: &[(usize, Rational)]) -> bool {
        self.insert(primitive_int_row(row))
    }
}

/// Incremental echelon over Z/p for prime p.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    p: u64,
    pivots: BTreeMap<usize, Vec<(usize, u64)>>,
}

impl ModEchelon {
    pub fn new(p: u64) -> ModEchelon {
        ModEchelon { p, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn insert(&mut self, mut v: Vec<(usize, u64)>) -> bool {
        let p = self.p;
        v.retain(|(_, x)| *x % p != 0);
        loop {
            let Some(&(lead, lv)) = v.first() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(row) => {
                    // pivot rows are monic
                    let f = p - lv % p;
                    let mut out = Vec::with_capacity(v.len() + row.len());
                    let (mut i, mut j) = (0, 0);
                    while i < v.len() || j < row.len() {
                        if j >= row.len() || (i < v.len() && v[i].0 < row[j].0) {
                            out.push(v[i]);
                            i += 1;
                        } else if i >= v.len() || row[j].0 < v[i].0 {
                            out.push((row[j].0, mul_mod(f, row[j].1, p)));
                            j += 1;
                        } else {
                            let s = (v[i].1 + mul_mod(f, row[j].1, p)) % p;
                            if s != 0 {
                                out.push((v[i].0, s));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    v = out;
                }
                None => {
                    let inv = mod_inverse(lv, p).expect("prime modulus");
                    for (_, x) in v.iter_mut() {
                        *x = mul_mod(*x, inv, p);
                    }
                    self.pivots.insert(lead, v);
                    return true;
                }
            }
        }
    }
}

/// Rank over the matrix's ring (a field); over Z this is the rank over Q.
pub fn rank(m: &ExactMatrix) -> Result<usize> {
    rank_of_rows(m.ring(), m.row_data())
}

pub fn rank_of_rows(ring: Ring, rows: &[SparseRow]) -> Result<usize> {
    match ring {
        Ring::Integers | Ring::Rationals => {
            let mut e = QEchelon::new();
            for r in rows {
                e.insert_rational(r);
            }
            Ok(e.rank())
        }
        Ring::IntegersMod(n) => {
            if !ring.is_field() {
                return Err(Error::unsupported(format!("rank over Z/{n} with composite modulus")));
            }
            let mut e = ModEchelon::new(n);
            for r in rows {
                e.insert(r.iter().map(|(c, v)| (*c, v.numer().rem_u64(n))).collect());
            }
            Ok(e.rank())
        }
    }
}

/// Reduced row echelon form over a field (Q or Z/p), pivots with coefficient 1.
#[derive(Clone, Debug)]
pub struct Rref {
    pub ring: Ring,
    pub cols: usize,
    /// `(pivot column, row)`, sorted by pivot column.
    pub rows: Vec<(usize, SparseRow)>,
}

fn field_combine(ring: Ring, x: &SparseRow, f: &Rational, y: &SparseRow) -> Result<SparseRow> {
    // x - f*y
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (c, v) = if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            i += 1;
            (x[i - 1].0, x[i - 1].1.clone())
        } else if i >= x.len() || y[j].0 < x[i].0 {
            j += 1;
            (y[j - 1].0, -(f * &y[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (x[i - 1].0, &x[i - 1].1 - &(f * &y[j - 1].1))
        };
        if let Some(v) = ring.normalize(&v)? {
            out.push((c, v));
        }
    }
    Ok(out)
}

fn field_inverse(ring: Ring, v: &Rational) -> Result<Rational> {
    match ring {
        Ring::IntegersMod(n) => {
            let inv = mod_inverse(v.numer().rem_u64(n), n)
                .ok_or_else(|| Error::unsupported(format!("{v} not invertible mod {n}")))?;
            Ok(Rational::from(Integer::from(inv)))
        }
        _ => Ok(v.recip()),
    }
}

impl Rref {
    pub fn of(m: &ExactMatrix) -> Result<Rref> {
        Rref::of_rows(m.ring(), m.cols(), m.row_data().iter().cloned())
    }

    pub fn of_rows(ring: Ring, cols: usize, rows: impl IntoIterator<Item = SparseRow>) -> Result<Rref> {
        let ring = match ring {
            Ring::Integers => Ring::Rationals,
            r if r.is_field() => r,
            r => return Err(Error::unsupported(format!("echelon form over {r}"))),
        };
        let mut piv: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for row in rows {
            let mut v = row;
            loop {
                let Some((lead, lv)) = v.first().cloned() else { break };
                if let Some(p) = piv.get(&lead) {
                    v = field_combine(ring, &v, &lv, p)?;
                } else {
                    let inv = field_inverse(ring, &lv)?;
                    let mut out = Vec::with_capacity(v.len());
                    for (c, x) in v {
                        if let Some(y) = ring.normalize(&(&x * &inv))? {
                            out.push((c, y));
                        }
                    }
                    piv.insert(lead, out);
                    break;
                }
            }
        }
        // back substitution, last pivot first
        let keys: Vec<usize> = piv.keys().copied().collect();
        for (k, &pc) in keys.iter().enumerate().rev() {
            let prow = piv[&pc].clone();
            for &qc in &keys[..k] {
                let row = piv.get(&qc).unwrap();
                let f = match row.binary_search_by_key(&pc, |(c, _)| *c) {
                    Ok(idx) => row[idx].1.clone(),
                    Err(_) => continue,
                };
                let new = field_combine(ring, row, &f, &prow)?;
                piv.insert(qc, new);
            }
        }
        Ok(Rref { ring, cols, rows: piv.into_iter().collect() })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }

    /// Basis of the right kernel, one vector per free column, in column order.
    pub fn kernel(&self) -> Result<Vec<SparseRow>> {
        let mut is_pivot = vec![false; self.cols];
        for (c, _) in &self.rows {
            is_pivot[*c] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|c| !is_pivot[*c]) {
            let mut v: Vec<(usize, Rational)> = vec![(f, Rational::ONE)];
            for (pc, row) in &self.rows {
                if let Ok(idx) = row.binary_search_by_key(&f, |(c, _)| *c) {
                    if let Some(x) = self.ring.normalize(&-&row[idx].1)? {
                        v.push((*pc, x));
                    }
                }
            }
            v.sort_by_key(|(c, _)| *c);
            out.push(v);
        }
        Ok(out)
    }

    /// Coordinates of `v` in the row space (over pivot rows), or `None` if outside it.
    pub fn solve_in_row_space(&self, v: &SparseRow) -> Result<Option<Vec<Rational>>> {
        let mut rest = v.clone();
        let mut coords = vec![Rational::ZERO; self.rows.len()];
        for (k, (pc, row)) in self.rows.iter().enumerate() {
            if let Ok(idx) = rest.binary_search_by_key(pc, |(c, _)| *c) {
                let f = rest[idx].1.clone();
                rest = field_combine(self.ring, &rest, &f, row)?;
                coords[k] = f;
            }
        }
        Ok(rest.is_empty().then_some(coords))
    }
}

/// Integer row lattice kept in echelon form by unimodular row operations.
#[derive(Clone, Debug, Default)]
pub struct ZLattice {
    pivots: BTreeMap<usize, IntRow>,
}

impl ZLattice {
    pub fn new() -> ZLattice {
        ZLattice::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn insert(&mut self, mut v: IntRow) {
        loop {
            let Some(&(lead, _)) = v.first() else { return };
            let Some(p) = self.pivots.get_mut(&lead) else {
                if v[0].1.is_negative() {
                    for (_, x) in v.iter_mut() {
                        *x = -&*x;
                    }
                }
                self.pivots.insert(lead, v);
                return;
            };
            let pl = p[0].1.clone();
            let vl = v[0].1.clone();
            if vl.is_divisible_by(&pl) {
                let q = vl.div_exact(&pl);
                v = axpby(&Integer::ONE, &v, &-q, p);
            } else {
                let (g, s, t) = pl.ext_gcd(&vl);
                let new_p = axpby(&s, p, &t, &v);
                let rest = axpby(&vl.div_exact(&g), p, &-pl.div_exact(&g), &v);
                *p = new_p;
                v = rest;
            }
        }
    }

    pub fn insert_rows<'a>(&mut self, rows: impl IntoIterator<Item = &'a IntRow>) {
        for r in rows {
            self.insert(r.clone());
        }
    }

    /// Hermite normal form rows: positive pivots, entries above pivots reduced into `[0, pivot)`.
    pub fn hermite_rows(&self) -> Vec<IntRow> {
        let mut rows: BTreeMap<usize, IntRow> = self.pivots.clone();
        let keys: Vec<usize> = rows.keys().copied().collect();
        for (k, &pc) in keys.iter().enumerate().rev() {
            let prow = rows[&pc].clone();
            let pv = prow[0].1.clone();
            for &qc in &keys[..k] {
                let row = rows.get(&qc).unwrap();
                let Ok(idx) = row.binary_search_by_key(&pc, |(c, _)| *c) else { continue };
                let (q, _) = row[idx].1.div_mod_floor(&pv);
                if q.is_zero() {
                    continue;
                }
                let new = axpby(&Integer::ONE, row, &-q, &prow);
                rows.insert(qc, new);
            }
        }
        rows.into_values().collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &IntRow> {
        self.pivots.values()
    }

    /// Invariant factors (including ones) of the lattice basis, i.e. of `sat(L)/L`.
    pub fn invariant_factors(&self, cols: usize) -> Vec<Integer> {
        let rows: Vec<IntRow> = self.pivots.values().cloned().collect();
        super::snf::sparse_invariant_factors(rows, cols)
    }

    /// `[sat(L) : L]`.
    pub fn saturation_index(&self, cols: usize) -> Integer {
        self.invariant_factors(cols).into_iter().product()
    }
}

/// Saturated basis of the integer right kernel of `m`, in Hermite form.
pub fn integer_kernel(m: &ExactMatrix) -> Result<Vec<IntRow>> {
    let n = m.cols();
    // rows of [m^T | I]; unimodular elimination on the left block
    let mt = m.transpose();
    let mut work: Vec<(IntRow, IntRow)> = Vec::with_capacity(n);
    for (j, row) in mt.row_data().iter().enumerate() {
        let left: IntRow = row
            .iter()
            .map(|(c, v)| v.to_integer().map(|x| (*c, x)).ok_or_else(|| Error::invalid("integer kernel needs integer entries")))
            .collect::<Result<_>>()?;
        work.push((left, vec![(j, Integer::ONE)]));
    }
    let mut pivots: BTreeMap<usize, (IntRow, IntRow)> = BTreeMap::new();
    let mut kernel = ZLattice::new();
    for (mut l, mut r) in work {
        loop {
            let Some(&(lead, _)) = l.first() else {
                kernel.insert(r);
                break;
            };
            let Some((pl_row, pr_row)) = pivots.get_mut(&lead) else {
                pivots.insert(lead, (l, r));
                break;
            };
            let pl = pl_row[0].1.clone();
            let vl = l[0].1.clone();
            if vl.is_divisible_by(&pl) {
                let q = -vl.div_exact(&pl);
                l = axpby(&Integer::ONE, &l, &q, pl_row);
                r = axpby(&Integer::ONE, &r, &q, pr_row);
            } else {
                let (g, s, t) = pl.ext_gcd(&vl);
                let a = vl.div_exact(&g);
                let b = -pl.div_exact(&g);
                let nl = axpby(&s, pl_row, &t, &l);
                let nr = axpby(&s, pr_row, &t, &r);
                l = axpby(&a, pl_row, &b, &l);
                r = axpby(&a, pr_row, &b, &r);
                *pl_row = nl;
                *pr_row = nr;
            }
        }
    }
    Ok(kernel.hermite_rows())
}

/// Kernel basis as the columns of a matrix over the same ring.
pub fn kernel_basis(m: &ExactMatrix) -> Result<ExactMatrix> {
    let ring = m.ring();
    let cols: Vec<SparseRow> = match ring {
        Ring::Integers => integer_kernel(m)?
            .into_iter()
            .map(|r| r.into_iter().map(|(c, v)| (c, Rational::from(v))).collect())
            .collect(),
        _ => Rref::of(m)?.kernel()?,
    };
    ExactMatrix::from_columns(ring, m.cols(), &cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> IntRow {
        v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i, Integer::from(*x))).collect()
    }

    #[test]
    fn q_rank_counts_independent_rows() {
        let mut e = QEchelon::new();
        assert!(e.insert(z(&[2, 4, 6])));
        assert!(!e.insert(z(&[1, 2, 3])));
        assert!(e.insert(z(&[0, 1, 1])));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn mod_p_rank_differs_from_q() {
        let m = ExactMatrix::from_dense(Ring::IntegersMod(2), &[vec![1, 1], vec![1, -1]]).unwrap();
        assert_eq!(rank(&m).unwrap(), 1);
        let q = ExactMatrix::from_dense(Ring::Rationals, &[vec![1, 1], vec![1, -1]]).unwrap();
        assert_eq!(rank(&q).unwrap(), 2);
    }

    #[test]
    fn kernel_of_row_vector() {
        let m = ExactMatrix::from_dense(Ring::Rationals, &[vec![1, 1]]).unwrap();
        let k = kernel_basis(&m).unwrap();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.get(0, 0), -Rational::ONE);
        assert_eq!(k.get(1, 0), Rational::ONE);
        let id = ExactMatrix::identity(Ring::Rationals, 2);
        assert_eq!(kernel_basis(&id).unwrap().cols(), 0);
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // kernel of [2 4] over Z is generated by (-2, 1), not (-4, 2)
        let m = ExactMatrix::from_dense(Ring::Integers, &[vec![2, 4]]).unwrap();
        let k = integer_kernel(&m).unwrap();
        assert_eq!(k.len(), 1);
        let mut lat = ZLattice::new();
        lat.insert(k[0].clone());
        assert!(lat.saturation_index(2).is_one());
        let v = &k[0];
        let dot = &v.iter().map(|(c, x)| x * &Integer::from([2i64, 4][*c])).sum::<Integer>();
        assert!(dot.is_zero());
    }

    #[test]
    fn lattice_index() {
        let mut lat = ZLattice::new();
        lat.insert(z(&[2, 0]));
        lat.insert(z(&[0, 3]));
        assert_eq!(lat.invariant_factors(2), vec![Integer::ONE, Integer::from(6)]);
        lat.insert(z(&[1, 1]));
        assert_eq!(lat.saturation_index(2), Integer::ONE);
    }

    #[test]
    fn rref_solves() {
        let m = ExactMatrix::from_dense(Ring::Rationals, &[vec![1, 2, 0], vec![0, 0, 1]]).unwrap();
        let r = Rref::of(&m).unwrap();
        let v: SparseRow = vec![(0, Rational::from(2)), (1, Rational::from(4)), (2, Rational::from(-1))];
        let c = r.solve_in_row_space(&v).unwrap().unwrap();
        assert_eq!(c, vec![Rational::from(2), Rational::from(-1)]);
        assert!(r.solve_in_row_space(&vec![(1, Rational::ONE)]).unwrap().is_none());
    }
}
