//! Graded one-sided modules and bimodules over a [`GradedAlgebra`].
//!
//! Actions are stored column-wise: `action[a][v]` is the image of basis
//! vector `v` under the basis element `a` of the algebra.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::graded::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exact::vector::{unit, Acc};
use crate::exact::{Rational, SparseRow};

/// Linear map given by the images of basis vectors.
pub type Columns = Vec<SparseRow>;

pub fn apply(map: &[SparseRow], v: &[(usize, Rational)]) -> SparseRow {
    let mut acc = Acc::new();
    for (i, x) in v {
        acc.add_scaled(x, &map[*i]);
    }
    acc.finish()
}

/// `outer ∘ inner`.
pub fn compose(outer: &[SparseRow], inner: &[SparseRow]) -> Columns {
    inner.iter().map(|c| apply(outer, c)).collect()
}

fn identity_columns(n: usize) -> Columns {
    (0..n).map(unit).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedModule {
    pub side: Side,
    pub weights: Vec<i64>,
    /// Idempotent block of each basis vector (`v = v e_i` on the right, `v = e_i v` on the left).
    pub blocks: Vec<usize>,
    pub action: Vec<Columns>,
}

impl GradedModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// `e_i A` as a right module (basis: algebra elements with source `i`).
    pub fn right_projective(alg: &GradedAlgebra, i: usize) -> GradedModule {
        Self::sub_of_regular(alg, &alg.starting_at(i), Side::Right)
    }

    /// `A e_i` as a left module (basis: algebra elements with target `i`).
    pub fn left_projective(alg: &GradedAlgebra, i: usize) -> GradedModule {
        Self::sub_of_regular(alg, &alg.ending_at(i), Side::Left)
    }

    pub fn regular(alg: &GradedAlgebra, side: Side) -> GradedModule {
        let all: Vec<usize> = (0..alg.dim()).collect();
        Self::sub_of_regular(alg, &all, side)
    }

    fn sub_of_regular(alg: &GradedAlgebra, idx: &[usize], side: Side) -> GradedModule {
        let mut pos = vec![usize::MAX; alg.dim()];
        for (k, &p) in idx.iter().enumerate() {
            pos[p] = k;
        }
        let action = (0..alg.dim())
            .map(|a| {
                idx.iter()
                    .map(|&p| {
                        let prod = match side {
                            Side::Right => alg.mul_basis(p, a),
                            Side::Left => alg.mul_basis(a, p),
                        };
                        prod.iter().map(|(c, v)| (pos[*c], v.clone())).collect()
                    })
                    .collect()
            })
            .collect();
        GradedModule {
            side,
            weights: idx.iter().map(|&p| i64::from(alg.element(p).weight)).collect(),
            blocks: idx
                .iter()
                .map(|&p| match side {
                    Side::Right => alg.element(p).target,
                    Side::Left => alg.element(p).source,
                })
                .collect(),
            action,
        }
    }

    /// The simple module `L_i`: one dimension in weight 0 where `e_i` acts by 1.
    pub fn simple(alg: &GradedAlgebra, i: usize, side: Side) -> GradedModule {
        let e = alg.idempotent(i);
        let action = (0..alg.dim()).map(|a| vec![if a == e { unit(0) } else { Vec::new() }]).collect();
        GradedModule { side, weights: vec![0], blocks: vec![i], action }
    }

    /// Checks unitality, associativity, weights and blocks.
    pub fn validate(&self, alg: &GradedAlgebra) -> Result<()> {
        let n = self.dim();
        if self.action.len() != alg.dim() || self.action.iter().any(|c| c.len() != n) || self.blocks.len() != n {
            return Err(Error::invalid("module action has the wrong shape"));
        }
        for (i, _) in alg.labels().iter().enumerate() {
            let e = alg.idempotent(i);
            for v in 0..n {
                let expect = if self.blocks[v] == i { unit(v) } else { Vec::new() };
                if self.action[e][v] != expect {
                    return Err(Error::check(format!("idempotent {} acts wrongly on basis vector {v}", alg.labels()[i])));
                }
            }
        }
        for a in 0..alg.dim() {
            let wa = i64::from(alg.element(a).weight);
            for v in 0..n {
                for (c, _) in &self.action[a][v] {
                    if self.weights[*c] != self.weights[v] + wa {
                        return Err(Error::check(format!("action of {} is not weight-additive", alg.element(a).name)));
                    }
                }
            }
        }
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let prod = alg.mul_basis(a, b);
                let lhs: Columns = (0..n)
                    .map(|v| {
                        let mut acc = Acc::new();
                        for (c, x) in prod {
                            acc.add_scaled(x, &self.action[*c][v]);
                        }
                        acc.finish()
                    })
                    .collect();
                let rhs = match self.side {
                    Side::Right => compose(&self.action[b], &self.action[a]),
                    Side::Left => compose(&self.action[a], &self.action[b]),
                };
                if lhs != rhs {
                    return Err(Error::check(format!(
                        "module action is not associative on ({}, {})",
                        alg.element(a).name,
                        alg.element(b).name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dims_by_weight(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for w in &self.weights {
            *out.entry(*w).or_default() += 1;
        }
        out
    }
}

/// Graded bimodule with commuting left and right actions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedBimodule {
    pub weights: Vec<i64>,
    /// Basis vector `v` lies in `e_{left_blocks[v]} M e_{right_blocks[v]}`.
    pub left_blocks: Vec<usize>,
    pub right_blocks: Vec<usize>,
    pub left: Vec<Columns>,
    pub right: Vec<Columns>,
}

impl GradedBimodule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// `A` as a bimodule over itself.
    pub fn regular(alg: &GradedAlgebra) -> GradedBimodule {
        let l = GradedModule::regular(alg, Side::Left);
        let r = GradedModule::regular(alg, Side::Right);
        GradedBimodule {
            weights: l.weights.clone(),
            left_blocks: l.blocks,
            right_blocks: r.blocks,
            left: l.action,
            right: r.action,
        }
    }

    /// The zero bimodule.
    pub fn zero(alg: &GradedAlgebra) -> GradedBimodule {
        GradedBimodule {
            weights: Vec::new(),
            left_blocks: Vec::new(),
            right_blocks: Vec::new(),
            left: vec![Vec::new(); alg.dim()],
            right: vec![Vec::new(); alg.dim()],
        }
    }

    pub fn left_module(&self) -> GradedModule {
        GradedModule { side: Side::Left, weights: self.weights.clone(), blocks: self.left_blocks.clone(), action: self.left.clone() }
    }

    pub fn right_module(&self) -> GradedModule {
        GradedModule { side: Side::Right, weights: self.weights.clone(), blocks: self.right_blocks.clone(), action: self.right.clone() }
    }

    pub fn validate(&self, alg: &GradedAlgebra) -> Result<()> {
        self.left_module().validate(alg)?;
        self.right_module().validate(alg)?;
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                if compose(&self.left[a], &self.right[b]) != compose(&self.right[b], &self.left[a]) {
                    return Err(Error::check(format!(
                        "left action of {} and right action of {} do not commute",
                        alg.element(a).name,
                        alg.element(b).name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &GradedBimodule) -> GradedBimodule {
        let n = self.dim();
        let shift = |cols: &Columns| -> Columns {
            cols.iter().map(|c| c.iter().map(|(i, v)| (i + n, v.clone())).collect()).collect()
        };
        let cat = |a: &[Columns], b: &[Columns]| -> Vec<Columns> {
            a.iter().zip(b).map(|(x, y)| x.iter().cloned().chain(shift(y)).collect()).collect()
        };
        GradedBimodule {
            weights: self.weights.iter().chain(&other.weights).copied().collect(),
            left_blocks: self.left_blocks.iter().chain(&other.left_blocks).copied().collect(),
            right_blocks: self.right_blocks.iter().chain(&other.right_blocks).copied().collect(),
            left: cat(&self.left, &other.left),
            right: cat(&self.right, &other.right),
        }
    }

    /// `M` as a right module over `A^op ⊗ A` (`m.(a ⊗ b) = a m b`), matching [`GradedAlgebra::enveloping`].
    pub fn as_enveloping_module(&self, alg: &GradedAlgebra) -> GradedModule {
        let n = alg.dim();
        let li = alg.num_idempotents();
        let mut action = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                action.push(compose(&self.left[a], &self.right[b]));
            }
        }
        GradedModule {
            side: Side::Right,
            weights: self.weights.clone(),
            blocks: self.left_blocks.iter().zip(&self.right_blocks).map(|(i, j)| i * li + j).collect(),
            action,
        }
    }

    /// Identity columns on this bimodule.
    pub fn identity(&self) -> Columns {
        identity_columns(self.dim())
    }
}

/// JSON description of a bimodule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BimoduleSpec {
    Regular,
    Zero,
    /// Actions of the arrows as dense matrices (`m[r][c]` = coefficient of `r` in the image of `c`);
    /// idempotents act through the blocks and paths through their arrow words.
    Explicit {
        weights: Vec<i64>,
        blocks: Vec<(String, String)>,
        #[serde(default)]
        left: BTreeMap<String, Vec<Vec<Rational>>>,
        #[serde(default)]
        right: BTreeMap<String, Vec<Vec<Rational>>>,
    },
}

impl BimoduleSpec {
    pub fn build(&self, alg: &GradedAlgebra) -> Result<GradedBimodule> {
        match self {
            BimoduleSpec::Regular => Ok(GradedBimodule::regular(alg)),
            BimoduleSpec::Zero => Ok(GradedBimodule::zero(alg)),
            BimoduleSpec::Explicit { weights, blocks, left, right } => {
                let q = alg.quiver().ok_or_else(|| Error::invalid("explicit bimodules need a quiver algebra"))?;
                let n = weights.len();
                if blocks.len() != n {
                    return Err(Error::invalid("bimodule.blocks: one (left, right) pair per basis vector"));
                }
                let label = |s: &str, f: &str| {
                    alg.label_index(s).ok_or_else(|| Error::invalid(format!("bimodule.blocks: unknown vertex {s} ({f})")))
                };
                let mut lb = Vec::with_capacity(n);
                let mut rb = Vec::with_capacity(n);
                for (l, r) in blocks {
                    lb.push(label(l, "left")?);
                    rb.push(label(r, "right")?);
                }
                let parse = |side: &str, m: &BTreeMap<String, Vec<Vec<Rational>>>| -> Result<Vec<Columns>> {
                    let mut arrows = Vec::with_capacity(q.arrows.len());
                    for a in &q.arrows {
                        let cols = match m.get(&a.name) {
                            None => vec![Vec::new(); n],
                            Some(dense) => {
                                if dense.len() != n || dense.iter().any(|r| r.len() != n) {
                                    return Err(Error::invalid(format!("bimodule.{side}.{}: expected {n}x{n} matrix", a.name)));
                                }
                                (0..n)
                                    .map(|c| (0..n).filter(|&r| !dense[r][c].is_zero()).map(|r| (r, dense[r][c].clone())).collect())
                                    .collect()
                            }
                        };
                        arrows.push(cols);
                    }
                    for k in m.keys() {
                        if !q.arrows.iter().any(|a| &a.name == k) {
                            return Err(Error::invalid(format!("bimodule.{side}: unknown arrow {k}")));
                        }
                    }
                    Ok(arrows)
                };
                let la = parse("left", left)?;
                let ra = parse("right", right)?;
                let mut lact = Vec::with_capacity(alg.dim());
                let mut ract = Vec::with_capacity(alg.dim());
                for (k, word) in q.words.iter().enumerate() {
                    let b = alg.element(k);
                    if word.is_empty() {
                        let i = b.source;
                        lact.push((0..n).map(|v| if lb[v] == i { unit(v) } else { Vec::new() }).collect());
                        ract.push((0..n).map(|v| if rb[v] == i { unit(v) } else { Vec::new() }).collect());
                        continue;
                    }
                    // left: a1 a2 ... ak . v = a1.(a2.(...)); right: v.a1.a2...
                    let mut l = identity_columns(n);
                    let mut r = identity_columns(n);
                    for &arr in word {
                        l = compose(&l, &la[arr]);
                        r = compose(&ra[arr], &r);
                    }
                    lact.push(l);
                    ract.push(r);
                }
                let m = GradedBimodule { weights: weights.clone(), left_blocks: lb, right_blocks: rb, left: lact, right: ract };
                m.validate(alg)?;
                Ok(m)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::examples::*;

    #[test]
    fn projectives_of_a2() {
        let a = a2_path().build().unwrap();
        let dims: Vec<usize> = (0..2).map(|i| GradedModule::right_projective(&a, i).dim()).collect();
        assert_eq!(dims, vec![2, 1]);
        for i in 0..2 {
            GradedModule::right_projective(&a, i).validate(&a).unwrap();
            GradedModule::left_projective(&a, i).validate(&a).unwrap();
            GradedModule::simple(&a, i, Side::Right).validate(&a).unwrap();
        }
    }

    #[test]
    fn regular_bimodule_is_valid() {
        for s in [dual_numbers(), a3_path(), semisimple(2)] {
            let a = s.build().unwrap();
            GradedBimodule::regular(&a).validate(&a).unwrap();
            let env = a.enveloping();
            GradedBimodule::regular(&a).as_enveloping_module(&a).validate(&env).unwrap();
        }
    }

    #[test]
    fn explicit_bimodule_round_trip() {
        let a = dual_numbers().build().unwrap();
        let spec: BimoduleSpec = serde_json::from_str(
            r#"{"kind":"explicit","weights":[0,1],"blocks":[["1","1"],["1","1"]],
                "left":{"x":[[0,0],[1,0]]},"right":{"x":[[0,0],[1,0]]}}"#,
        )
        .unwrap();
        let m = spec.build(&a).unwrap();
        assert_eq!(m, GradedBimodule::regular(&a));
        let bad: BimoduleSpec = serde_json::from_str(
            r#"{"kind":"explicit","weights":[0,1],"blocks":[["1","1"],["1","1"]],"left":{"x":[[0,1],[0,0]]}}"#,
        )
        .unwrap();
        assert!(bad.build(&a).is_err());
    }
}
