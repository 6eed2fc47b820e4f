//! Smith normal form.
//!
//! `smith_normal_form` is the dense algorithm with both transforms. Large
//! sparse matrices whose invariant factors are all that is needed go through
//! `sparse_invariant_factors`, which first eliminates unit pivots sparsely and
//! only densifies the (usually tiny) remainder.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::echelon::{axpby, IntRow};
use super::matrix::{ExactMatrix, Ring};
use super::{Integer, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm {
    /// Nonzero diagonal entries, each dividing the next.
    pub invariant_factors: Vec<Integer>,
    pub left_transform: ExactMatrix,
    pub right_transform: ExactMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// The diagonal matrix `left * m * right` should equal.
    pub fn diagonal(&self, rows: usize, cols: usize) -> ExactMatrix {
        let trip = self.invariant_factors.iter().enumerate().map(|(i, d)| (i, i, Rational::from(d.clone())));
        ExactMatrix::from_triplets(Ring::Integers, rows, cols, trip).expect("diagonal in range")
    }
}

type Dense = Vec<Vec<Integer>>;

struct Transforms {
    left: Dense,
    right: Dense,
}

fn swap_cols(a: &mut Dense, i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// row_i += q * row_t
fn add_row(a: &mut Dense, i: usize, t: usize, q: &Integer) {
    let (src, dst) = if t < i {
        let (lo, hi) = a.split_at_mut(i);
        (&lo[t], &mut hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(t);
        (&hi[0], &mut lo[i])
    };
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        if !s.is_zero() {
            *d += &(q * s);
        }
    }
}

/// col_j += q * col_t
fn add_col(a: &mut Dense, j: usize, t: usize, q: &Integer) {
    for row in a.iter_mut() {
        if !row[t].is_zero() {
            let v = q * &row[t];
            row[j] += &v;
        }
    }
}

/// In-place diagonalization; returns the nonzero diagonal.
fn dense_snf(a: &mut Dense, rows: usize, cols: usize, mut tr: Option<&mut Transforms>) -> Vec<Integer> {
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // smallest |entry|, ties broken by (row, col)
            let mut best: Option<(Integer, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, v) in row.iter().enumerate().skip(t) {
                    if v.is_zero() {
                        continue;
                    }
                    let av = v.abs();
                    if best.as_ref().map_or(true, |(b, _, _)| av < *b) {
                        best = Some((av, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                return diag;
            };
            a.swap(t, pi);
            swap_cols(a, t, pj);
            if let Some(tr) = tr.as_deref_mut() {
                tr.left.swap(t, pi);
                swap_cols(&mut tr.right, t, pj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = -a[i][t].div_trunc(&p);
                if !q.is_zero() {
                    add_row(a, i, t, &q);
                    if let Some(tr) = tr.as_deref_mut() {
                        add_row(&mut tr.left, i, t, &q);
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = -a[t][j].div_trunc(&p);
                if !q.is_zero() {
                    add_col(a, j, t, &q);
                    if let Some(tr) = tr.as_deref_mut() {
                        add_col(&mut tr.right, j, t, &q);
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_divisible_by(&p)));
            if let Some(i) = bad {
                add_row(a, t, i, &Integer::ONE);
                if let Some(tr) = tr.as_deref_mut() {
                    add_row(&mut tr.left, t, i, &Integer::ONE);
                }
                continue;
            }
            break;
        }
        if a[t][t].is_negative() {
            for v in a[t].iter_mut() {
                *v = -&*v;
            }
            if let Some(tr) = tr.as_deref_mut() {
                for v in tr.left[t].iter_mut() {
                    *v = -&*v;
                }
            }
        }
        diag.push(a[t][t].clone());
    }
    diag
}

fn to_dense_int(m: &ExactMatrix) -> Result<Dense> {
    let mut out = vec![vec![Integer::ZERO; m.cols()]; m.rows()];
    for (i, j, v) in m.entries() {
        out[i][j] = v.to_integer().ok_or_else(|| Error::invalid("Smith form needs integer entries"))?;
    }
    Ok(out)
}

fn from_dense_int(a: &Dense, rows: usize, cols: usize) -> ExactMatrix {
    let trip = a.iter().enumerate().flat_map(|(i, r)| {
        r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(j, v)| (i, j, Rational::from(v.clone())))
    });
    ExactMatrix::from_triplets(Ring::Integers, rows, cols, trip).expect("in range")
}

fn identity(n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| if i == j { Integer::ONE } else { Integer::ZERO }).collect()).collect()
}

/// Smith normal form with unimodular transforms: `left * m * right = diag`.
pub fn smith_normal_form(m: &ExactMatrix) -> Result<SmithForm> {
    if m.ring() != Ring::Integers {
        return Err(Error::precondition(format!("Smith form over {}; expected Z", m.ring())));
    }
    let (r, c) = (m.rows(), m.cols());
    let mut a = to_dense_int(m)?;
    let mut tr = Transforms { left: identity(r), right: identity(c) };
    let diag = dense_snf(&mut a, r, c, Some(&mut tr));
    Ok(SmithForm {
        invariant_factors: diag,
        left_transform: from_dense_int(&tr.left, r, r),
        right_transform: from_dense_int(&tr.right, c, c),
    })
}

/// Nonzero invariant factors of the matrix with the given integer rows.
pub fn sparse_invariant_factors(rows: Vec<IntRow>, cols: usize) -> Vec<Integer> {
    let mut rows: Vec<IntRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols];
    for (i, r) in rows.iter().enumerate() {
        for (c, _) in r {
            col_rows[*c].insert(i);
        }
    }
    let mut alive = vec![true; rows.len()];
    let mut ones = 0usize;
    loop {
        // unit pivot with the smallest Markowitz cost
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            if !alive[i] {
                continue;
            }
            for (c, v) in r {
                if v.abs().is_one() {
                    let cost = (r.len() - 1) * (col_rows[*c].len() - 1);
                    if best.map_or(true, |(b, _, _)| cost < b) {
                        best = Some((cost, i, *c));
                        if cost == 0 {
                            break;
                        }
                    }
                }
            }
            if matches!(best, Some((0, _, _))) {
                break;
            }
        }
        let Some((_, pr, pc)) = best else { break };
        let prow = std::mem::take(&mut rows[pr]);
        let pv = prow.iter().find(|(c, _)| *c == pc).unwrap().1.clone();
        let others: Vec<usize> = col_rows[pc].iter().copied().filter(|&k| k != pr).collect();
        for k in others {
            let kv = rows[k].iter().find(|(c, _)| *c == pc).unwrap().1.clone();
            let f = -(&kv * &pv);
            let old = std::mem::take(&mut rows[k]);
            for (c, _) in &old {
                col_rows[*c].remove(&k);
            }
            let new = axpby(&Integer::ONE, &old, &f, &prow);
            for (c, _) in &new {
                col_rows[*c].insert(k);
            }
            if new.is_empty() {
                alive[k] = false;
            }
            rows[k] = new;
        }
        for (c, _) in &prow {
            col_rows[*c].remove(&pr);
        }
        alive[pr] = false;
        ones += 1;
    }
    let rest: Vec<&IntRow> = rows.iter().zip(&alive).filter(|(r, a)| **a && !r.is_empty()).map(|(r, _)| r).collect();
    let live_cols: Vec<usize> = (0..cols).filter(|c| !col_rows[*c].is_empty()).collect();
    let mut pos = vec![usize::MAX; cols];
    for (k, c) in live_cols.iter().enumerate() {
        pos[*c] = k;
    }
    let mut dense: Dense = vec![vec![Integer::ZERO; live_cols.len()]; rest.len()];
    for (i, r) in rest.iter().enumerate() {
        for (c, v) in r.iter() {
            dense[i][pos[*c]] = v.clone();
        }
    }
    let (nr, nc) = (rest.len(), live_cols.len());
    let tail = dense_snf(&mut dense, nr, nc, None);
    let mut out = vec![Integer::ONE; ones];
    out.extend(tail);
    out
}

/// Nonzero invariant factors of an integer matrix.
pub fn invariant_factors(m: &ExactMatrix) -> Result<Vec<Integer>> {
    if m.ring() != Ring::Integers {
        return Err(Error::precondition("invariant factors need an integer matrix"));
    }
    let rows = m
        .row_data()
        .iter()
        .map(|r| r.iter().map(|(c, v)| (*c, v.numer().clone())).collect())
        .collect();
    Ok(sparse_invariant_factors(rows, m.cols()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &ExactMatrix) -> SmithForm {
        let s = smith_normal_form(m).unwrap();
        let prod = s.left_transform.mul(m).unwrap().mul(&s.right_transform).unwrap();
        assert_eq!(prod, s.diagonal(m.rows(), m.cols()));
        assert!(s.left_transform.determinant().unwrap().abs().is_one());
        assert!(s.right_transform.determinant().unwrap().abs().is_one());
        for w in s.invariant_factors.windows(2) {
            assert!(w[1].is_divisible_by(&w[0]));
        }
        assert_eq!(invariant_factors(m).unwrap(), s.invariant_factors);
        s
    }

    #[test]
    fn diag_two_three() {
        let m = ExactMatrix::from_dense(Ring::Integers, &[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(check(&m).invariant_factors, vec![Integer::from(1), Integer::from(6)]);
    }

    #[test]
    fn zero_matrix() {
        let m = ExactMatrix::zeros(Ring::Integers, 3, 3);
        assert!(check(&m).invariant_factors.is_empty());
    }

    #[test]
    fn classic_example() {
        let m = ExactMatrix::from_dense(Ring::Integers, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        let f = check(&m).invariant_factors;
        assert_eq!(f, vec![Integer::from(2), Integer::from(6), Integer::from(12)]);
    }

    #[test]
    fn rejects_rationals() {
        let m = ExactMatrix::identity(Ring::Rationals, 2);
        assert!(smith_normal_form(&m).is_err());
    }
}
