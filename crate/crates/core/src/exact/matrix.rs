use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Integer, Rational};
use crate::error::{Error, Result};

/// Coefficient ring of an [`ExactMatrix`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ring {
    Integers,
    Rationals,
    IntegersMod(u64),
}

impl Ring {
    pub fn is_field(self) -> bool {
        match self {
            Ring::Rationals => true,
            Ring::Integers => false,
            Ring::IntegersMod(n) => is_prime(n),
        }
    }

    /// Brings a rational into canonical form for this ring; `None` means zero.
    pub fn normalize(self, v: &Rational) -> Result<Option<Rational>> {
        let out = match self {
            Ring::Rationals => v.clone(),
            Ring::Integers => {
                if !v.is_integer() {
                    return Err(Error::invalid(format!("non-integral entry {v} in integer matrix")));
                }
                v.clone()
            }
            Ring::IntegersMod(n) => {
                let num = v.numer().rem_u64(n);
                let den = v.denom().rem_u64(n);
                let inv = mod_inverse(den, n)
                    .ok_or_else(|| Error::invalid(format!("denominator of {v} not invertible mod {n}")))?;
                Rational::from(Integer::from(mul_mod(num, inv, n)))
            }
        };
        Ok((!out.is_zero()).then_some(out))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::IntegersMod(n) => write!(f, "Z/{n}"),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(n)) as u64
}

pub(crate) fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (g, s, _) = Integer::from(a).ext_gcd(&Integer::from(n));
    g.is_one().then(|| s.rem_u64(n))
}

/// One sparse row: strictly increasing column indices, no stored zeros.
pub type SparseRow = Vec<(usize, Rational)>;

/// Sparse matrix over Z, Q or Z/n, stored row by row.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

impl ExactMatrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix { ring, rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(ring: Ring, n: usize) -> ExactMatrix {
        let data = (0..n).map(|i| vec![(i, Rational::ONE)]).collect();
        ExactMatrix { ring, rows: n, cols: n, data }
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets<I>(ring: Ring, rows: usize, cols: usize, entries: I) -> Result<ExactMatrix>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::invalid(format!("entry ({r}, {c}) outside {rows}x{cols}")));
            }
            *acc[r].entry(c).or_default() += &v;
        }
        let mut data = Vec::with_capacity(rows);
        for row in acc {
            let mut out = Vec::with_capacity(row.len());
            for (c, v) in row {
                if let Some(v) = ring.normalize(&v)? {
                    out.push((c, v));
                }
            }
            data.push(out);
        }
        Ok(ExactMatrix { ring, rows, cols, data })
    }

    pub fn from_dense(ring: Ring, dense: &[Vec<i64>]) -> Result<ExactMatrix> {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        if dense.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("ragged dense matrix"));
        }
        let it = dense.iter().enumerate().flat_map(|(i, r)| {
            r.iter().enumerate().filter(|(_, v)| **v != 0).map(move |(j, v)| (i, j, Rational::from(*v)))
        });
        ExactMatrix::from_triplets(ring, rows, cols, it)
    }

    /// Builds a matrix from its columns (each a sparse vector indexed by row).
    pub fn from_columns(ring: Ring, rows: usize, columns: &[SparseRow]) -> Result<ExactMatrix> {
        let it = columns
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i, j, v.clone())));
        ExactMatrix::from_triplets(ring, rows, columns.len(), it)
    }


    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.data[i]
    }

    pub fn row_data(&self) -> &[SparseRow] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => Rational::ZERO,
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.data.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut data: Vec<SparseRow> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        ExactMatrix { ring: self.ring, rows: self.cols, cols: self.rows, data }
    }

    /// Columns as sparse vectors.
    pub fn columns(&self) -> Vec<SparseRow> {
        self.transpose().data
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::ZERO; self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    fn check_ring(&self, other: &ExactMatrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::invalid(format!("ring mismatch: {} vs {}", self.ring, other.ring)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::invalid(format!(
                "shape mismatch {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    *acc.entry(*j).or_default() += &(a * b);
                }
            }
            let mut out = Vec::with_capacity(acc.len());
            for (j, v) in acc {
                if let Some(v) = self.ring.normalize(&v)? {
                    out.push((j, v));
                }
            }
            data.push(out);
        }
        Ok(ExactMatrix { ring: self.ring, rows: self.rows, cols: other.cols, data })
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.combine(other, &Rational::ONE)
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.combine(other, &-Rational::ONE)
    }

    /// `self + factor * other`.
    pub fn combine(&self, other: &ExactMatrix, factor: &Rational) -> Result<ExactMatrix> {
        self.check_ring(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::invalid("shape mismatch in matrix sum"));
        }
        let mut data = Vec::with_capacity(self.rows);
        for (a, b) in self.data.iter().zip(&other.data) {
            let mut acc: BTreeMap<usize, Rational> = a.iter().cloned().collect();
            for (j, v) in b {
                *acc.entry(*j).or_default() += &(factor * v);
            }
            let mut out = Vec::with_capacity(acc.len());
            for (j, v) in acc {
                if let Some(v) = self.ring.normalize(&v)? {
                    out.push((j, v));
                }
            }
            data.push(out);
        }
        Ok(ExactMatrix { ring: self.ring, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, factor: &Rational) -> Result<ExactMatrix> {
        let z = ExactMatrix::zeros(self.ring, self.rows, self.cols);
        z.combine(self, factor)
    }

    /// Applies the matrix to a sparse column vector.
    pub fn apply(&self, v: &[(usize, Rational)]) -> Result<SparseRow> {
        let col = ExactMatrix::from_columns(self.ring, self.cols, &[v.to_vec()])?;
        Ok(self.mul(&col)?.columns().pop().unwrap_or_default())
    }

    /// Submatrix on the given (sorted) row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        let mut col_pos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            col_pos[c] = k;
        }
        let data = rows
            .iter()
            .map(|&r| {
                let mut out: SparseRow = self.data[r]
                    .iter()
                    .filter(|(c, _)| col_pos[*c] != usize::MAX)
                    .map(|(c, v)| (col_pos[*c], v.clone()))
                    .collect();
                out.sort_by_key(|(c, _)| *c);
                out
            })
            .collect();
        ExactMatrix { ring: self.ring, rows: rows.len(), cols: cols.len(), data }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_ring(other)?;
        let mut data = self.data.clone();
        for row in &other.data {
            data.push(row.iter().map(|(c, v)| (c + self.cols, v.clone())).collect());
        }
        Ok(ExactMatrix { ring: self.ring, rows: self.rows + other.rows, cols: self.cols + other.cols, data })
    }

    /// Determinant of a square matrix over Z or Q (fraction-free elimination).
    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::invalid("determinant of non-square matrix"));
        }
        let mut m = self.to_dense();
        let n = self.rows;
        let mut det = Rational::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return Ok(Rational::ZERO);
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            let pivot = m[c][c].clone();
            det = &det * &pivot;
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = &m[r][c] / &pivot;
                for k in c..n {
                    let t = &f * &m[c][k];
                    m[r][k] -= &t;
                }
            }
        }
        Ok(det)
    }

    /// Entries as `[row, col, numerator, denominator]` quadruples.
    pub fn to_quadruples(&self) -> Vec<[Integer; 4]> {
        self.entries()
            .map(|(i, j, v)| [Integer::from(i), Integer::from(j), v.numer().clone(), v.denom().clone()])
            .collect()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix<{}> {}x{}", self.ring, self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<[Integer; 4]>,
}

impl Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr { ring: self.ring, rows: self.rows, cols: self.cols, entries: self.to_quadruples() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        let mut trip = Vec::with_capacity(repr.entries.len());
        for [r, c, n, den] in repr.entries {
            let r = r.to_i64().and_then(|v| usize::try_from(v).ok()).ok_or_else(|| serde::de::Error::custom("bad row"))?;
            let c = c.to_i64().and_then(|v| usize::try_from(v).ok()).ok_or_else(|| serde::de::Error::custom("bad col"))?;
            if den.is_zero() {
                return Err(serde::de::Error::custom("zero denominator"));
            }
            trip.push((r, c, Rational::new(n, den)));
        }
        ExactMatrix::from_triplets(repr.ring, repr.rows, repr.cols, trip).map_err(serde::de::Error::custom)
    }
}
