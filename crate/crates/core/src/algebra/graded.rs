use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::vector::{unit, Acc};
use crate::exact::{Rational, SparseRow};

/// A basis vector of a basic graded algebra, lying in `e_source A e_target`.
///
/// Products follow traversal order: `p * q` is nonzero only when
/// `p.target == q.source`, and then lies in `e_{p.source} A e_{q.target}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub weight: u32,
    pub source: usize,
    pub target: usize,
}

/// Presentation data kept when an algebra comes from a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverData {
    pub arrows: Vec<super::quiver::Arrow>,
    /// Arrow word of every basis element (empty for idempotents).
    pub words: Vec<Vec<usize>>,
}

/// Finite-dimensional basic algebra graded in non-negative weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedAlgebra {
    labels: Vec<String>,
    basis: Vec<BasisElement>,
    /// `table[a][b]` is the product of basis elements `a` and `b`.
    table: Vec<Vec<SparseRow>>,
    idempotents: Vec<usize>,
    quiver: Option<QuiverData>,
}

impl GradedAlgebra {
    /// Builds an algebra from a multiplication table, checking every invariant.
    pub fn new(labels: Vec<String>, basis: Vec<BasisElement>, table: Vec<Vec<SparseRow>>) -> Result<GradedAlgebra> {
        let a = GradedAlgebra::new_unchecked(labels, basis, table)?;
        a.validate()?;
        Ok(a)
    }

    pub(crate) fn new_unchecked(
        labels: Vec<String>,
        basis: Vec<BasisElement>,
        table: Vec<Vec<SparseRow>>,
    ) -> Result<GradedAlgebra> {
        if labels.is_empty() {
            return Err(Error::invalid("algebra needs at least one idempotent"));
        }
        let n = basis.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("multiplication table has the wrong shape"));
        }
        let mut idempotents = vec![usize::MAX; labels.len()];
        for (k, b) in basis.iter().enumerate() {
            if b.source >= labels.len() || b.target >= labels.len() {
                return Err(Error::invalid(format!("basis element {} has an unknown idempotent", b.name)));
            }
            if b.weight == 0 {
                if b.source != b.target || idempotents[b.source] != usize::MAX {
                    return Err(Error::invalid(format!(
                        "weight-0 part must be spanned by the idempotents; offending element {}",
                        b.name
                    )));
                }
                idempotents[b.source] = k;
            }
        }
        if let Some(i) = idempotents.iter().position(|&k| k == usize::MAX) {
            return Err(Error::invalid(format!("no idempotent for label {}", labels[i])));
        }
        Ok(GradedAlgebra { labels, basis, table, idempotents, quiver: None })
    }

    pub(crate) fn with_quiver(mut self, q: QuiverData) -> GradedAlgebra {
        self.quiver = Some(q);
        self
    }

    /// Checks idempotents, weights, block structure, unit and associativity.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let (ba, bb) = (&self.basis[a], &self.basis[b]);
                let p = &self.table[a][b];
                if ba.target != bb.source && !p.is_empty() {
                    return Err(Error::check(format!("{} * {} should vanish", ba.name, bb.name)));
                }
                for (c, _) in p {
                    let bc = &self.basis[*c];
                    if bc.weight != ba.weight + bb.weight || bc.source != ba.source || bc.target != bb.target {
                        return Err(Error::check(format!("{} * {} is not homogeneous", ba.name, bb.name)));
                    }
                }
            }
        }
        for (i, &e) in self.idempotents.iter().enumerate() {
            for x in 0..n {
                let bx = &self.basis[x];
                let left = if bx.source == i { unit(x) } else { Vec::new() };
                let right = if bx.target == i { unit(x) } else { Vec::new() };
                if self.table[e][x] != left || self.table[x][e] != right {
                    return Err(Error::check(format!("idempotent {} does not act as a block projector on {}", self.labels[i], bx.name)));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.table[a][b].is_empty() {
                    continue;
                }
                for c in 0..n {
                    let left = self.mul(&self.table[a][b], &unit(c));
                    let right = self.mul(&unit(a), &self.table[b][c]);
                    if left != right {
                        return Err(Error::check(format!(
                            "associativity fails on ({}, {}, {})",
                            self.basis[a].name, self.basis[b].name, self.basis[c].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn num_idempotents(&self) -> usize {
        self.labels.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, k: usize) -> &BasisElement {
        &self.basis[k]
    }

    pub fn idempotent(&self, i: usize) -> usize {
        self.idempotents[i]
    }

    pub fn quiver(&self) -> Option<&QuiverData> {
        self.quiver.as_ref()
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> &SparseRow {
        &self.table[a][b]
    }

    pub fn mul(&self, x: &[(usize, Rational)], y: &[(usize, Rational)]) -> SparseRow {
        let mut acc = Acc::new();
        for (a, u) in x {
            for (b, v) in y {
                if self.basis[*a].target != self.basis[*b].source {
                    continue;
                }
                acc.add_scaled(&(u * v), &self.table[*a][*b]);
            }
        }
        acc.finish()
    }

    pub fn unit(&self) -> SparseRow {
        let mut v: SparseRow = self.idempotents.iter().map(|&k| (k, Rational::ONE)).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    pub fn max_weight(&self) -> u32 {
        self.basis.iter().map(|b| b.weight).max().unwrap_or(0)
    }

    /// Basis of the strictly positive part, which is the Jacobson radical.
    pub fn radical(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.basis[k].weight > 0).collect()
    }

    /// Basis indices of `e_i A_w e_j`.
    pub fn block(&self, i: usize, j: usize, w: u32) -> Vec<usize> {
        (0..self.dim())
            .filter(|&k| {
                let b = &self.basis[k];
                b.source == i && b.target == j && b.weight == w
            })
            .collect()
    }

    /// Basis indices of `e_i A` (elements with source `i`).
    pub fn starting_at(&self, i: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.basis[k].source == i).collect()
    }

    /// Basis indices of `A e_i` (elements with target `i`).
    pub fn ending_at(&self, i: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.basis[k].target == i).collect()
    }

    pub fn is_central(&self, x: &[(usize, Rational)]) -> bool {
        (0..self.dim()).all(|b| self.mul(x, &unit(b)) == self.mul(&unit(b), x))
    }

    /// The opposite algebra; basis element names are kept, sources and targets swap.
    pub fn opposite(&self) -> GradedAlgebra {
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement { name: b.name.clone(), weight: b.weight, source: b.target, target: b.source })
            .collect();
        let n = self.dim();
        let table = (0..n).map(|a| (0..n).map(|b| self.table[b][a].clone()).collect()).collect();
        GradedAlgebra {
            labels: self.labels.clone(),
            basis,
            table,
            idempotents: self.idempotents.clone(),
            quiver: None,
        }
    }

    /// Tensor product `self ⊗ other`; basis index `a * other.dim() + b`, label index `i * other.labels + j`.
    pub fn tensor(&self, other: &GradedAlgebra) -> GradedAlgebra {
        let (n, m) = (self.dim(), other.dim());
        let li = other.labels.len();
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("{a}|{b}")))
            .collect();
        let mut basis = Vec::with_capacity(n * m);
        for a in &self.basis {
            for b in &other.basis {
                basis.push(BasisElement {
                    name: format!("{}|{}", a.name, b.name),
                    weight: a.weight + b.weight,
                    source: a.source * li + b.source,
                    target: a.target * li + b.target,
                });
            }
        }
        let mut table = vec![vec![Vec::new(); n * m]; n * m];
        for a1 in 0..n {
            for a2 in 0..n {
                let p = &self.table[a1][a2];
                if p.is_empty() {
                    continue;
                }
                for b1 in 0..m {
                    for b2 in 0..m {
                        let q = &other.table[b1][b2];
                        if q.is_empty() {
                            continue;
                        }
                        let mut acc = Acc::new();
                        for (c, u) in p {
                            for (d, v) in q {
                                acc.add(c * m + d, &(u * v));
                            }
                        }
                        table[a1 * m + b1][a2 * m + b2] = acc.finish();
                    }
                }
            }
        }
        let mut idempotents = vec![0; self.labels.len() * li];
        for (i, &ea) in self.idempotents.iter().enumerate() {
            for (j, &eb) in other.idempotents.iter().enumerate() {
                idempotents[i * li + j] = ea * m + eb;
            }
        }
        GradedAlgebra { labels, basis, table, idempotents, quiver: None }
    }

    /// The enveloping algebra `A^op ⊗ A`; bimodules are right modules over it via `m.(a ⊗ b) = a m b`.
    pub fn enveloping(&self) -> GradedAlgebra {
        self.opposite().tensor(self)
    }

    /// Direct product of algebras (block diagonal).
    pub fn product(&self, other: &GradedAlgebra) -> GradedAlgebra {
        let n = self.dim();
        let li = self.labels.len();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().map(|b| BasisElement {
            name: b.name.clone(),
            weight: b.weight,
            source: b.source + li,
            target: b.target + li,
        }));
        let total = basis.len();
        let mut table = vec![vec![Vec::new(); total]; total];
        for a in 0..n {
            for b in 0..n {
                table[a][b] = self.table[a][b].clone();
            }
        }
        for a in 0..other.dim() {
            for b in 0..other.dim() {
                table[n + a][n + b] = other.table[a][b].iter().map(|(c, v)| (c + n, v.clone())).collect();
            }
        }
        let mut idempotents = self.idempotents.clone();
        idempotents.extend(other.idempotents.iter().map(|k| k + n));
        GradedAlgebra { labels, basis, table, idempotents, quiver: None }
    }

    /// Weight profile `w -> dim A_w`.
    pub fn hilbert_series(&self) -> Vec<usize> {
        let mut out = vec![0; self.max_weight() as usize + 1];
        for b in &self.basis {
            out[b.weight as usize] += 1;
        }
        out
    }
}

/// `k^n`: `n` orthogonal idempotents and nothing else.
pub fn semisimple(n: usize) -> GradedAlgebra {
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let basis = (0..n)
        .map(|i| BasisElement { name: format!("e{}", i + 1), weight: 0, source: i, target: i })
        .collect();
    let table = (0..n).map(|a| (0..n).map(|b| if a == b { unit(a) } else { Vec::new() }).collect()).collect();
    GradedAlgebra::new(labels, basis, table).expect("semisimple algebra is valid")
}
