//! Graded algebra endomorphisms given by images of basis elements.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::graded::GradedAlgebra;
use super::module::{apply, compose, Columns};
use crate::error::{Error, Result};
use crate::exact::vector::unit;
use crate::exact::{Rational, Ring, Rref, SparseRow};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraMap {
    /// Image of every basis element.
    pub images: Columns,
}

impl AlgebraMap {
    pub fn identity(alg: &GradedAlgebra) -> AlgebraMap {
        AlgebraMap { images: (0..alg.dim()).map(unit).collect() }
    }

    /// Extends images of vertices and arrows multiplicatively along the quiver words.
    pub fn from_generators(alg: &GradedAlgebra, vertices: &[usize], arrows: &[SparseRow]) -> Result<AlgebraMap> {
        let q = alg.quiver().ok_or_else(|| Error::precondition("algebra has no quiver presentation"))?;
        if vertices.len() != alg.num_idempotents() || arrows.len() != q.arrows.len() {
            return Err(Error::invalid("need one image per vertex and per arrow"));
        }
        let images = q
            .words
            .iter()
            .enumerate()
            .map(|(k, word)| {
                if word.is_empty() {
                    return unit(alg.idempotent(vertices[alg.element(k).source]));
                }
                word[1..].iter().fold(arrows[word[0]].clone(), |acc, &a| alg.mul(&acc, &arrows[a]))
            })
            .collect();
        let f = AlgebraMap { images };
        f.check(alg)?;
        Ok(f)
    }

    /// Automorphism of a semisimple algebra permuting its idempotents.
    pub fn permutation(alg: &GradedAlgebra, perm: &[usize]) -> Result<AlgebraMap> {
        if alg.dim() != alg.num_idempotents() {
            return Err(Error::precondition("permutation maps need a semisimple algebra"));
        }
        let images = (0..alg.dim()).map(|k| unit(alg.idempotent(perm[alg.element(k).source]))).collect();
        let f = AlgebraMap { images };
        f.check(alg)?;
        Ok(f)
    }

    pub fn apply(&self, v: &[(usize, Rational)]) -> SparseRow {
        apply(&self.images, v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraMap) -> AlgebraMap {
        AlgebraMap { images: compose(&self.images, &other.images) }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, v)| *v == unit(k))
    }

    /// Unital, multiplicative and weight preserving.
    pub fn check(&self, alg: &GradedAlgebra) -> Result<()> {
        if self.images.len() != alg.dim() {
            return Err(Error::invalid("algebra map needs one image per basis element"));
        }
        for (k, v) in self.images.iter().enumerate() {
            let w = alg.element(k).weight;
            if v.iter().any(|(c, _)| alg.element(*c).weight != w) {
                return Err(Error::check(format!("image of {} is not homogeneous of weight {w}", alg.element(k).name)));
            }
        }
        if self.apply(&alg.unit()) != alg.unit() {
            return Err(Error::check("algebra map is not unital"));
        }
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                if self.apply(alg.mul_basis(a, b)) != alg.mul(&self.images[a], &self.images[b]) {
                    return Err(Error::check(format!(
                        "algebra map is not multiplicative on ({}, {})",
                        alg.element(a).name,
                        alg.element(b).name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Inverse map; fails if the map is not bijective.
    pub fn inverse(&self) -> Result<AlgebraMap> {
        Ok(AlgebraMap { images: solve_inverse(&self.images)? })
    }

    /// Commutes with `other` on every basis element.
    pub fn commutes_with(&self, other: &AlgebraMap) -> bool {
        self.compose(other) == other.compose(self)
    }
}

/// Columns of the inverse of the square matrix with the given columns.
fn solve_inverse(cols: &[SparseRow]) -> Result<Columns> {
    let n = cols.len();
    // augmented rows [M^T | I]: row k is image k with tag e_k; reducing gives M^{-T}
    let rows = cols.iter().enumerate().map(|(k, c)| {
        let mut r = c.clone();
        r.push((n + k, Rational::ONE));
        r
    });
    let rref = Rref::of_rows(Ring::Rationals, 2 * n, rows)?;
    let mut inv = vec![Vec::new(); n];
    for (p, row) in &rref.rows {
        if *p >= n {
            return Err(Error::precondition("algebra map is not invertible"));
        }
        // row p: e_p = sum_k x_k image_k, so inverse(e_p) = sum_k x_k e_k
        inv[*p] = row.iter().filter(|(c, _)| *c >= n).map(|(c, x)| (c - n, x.clone())).collect();
    }
    Ok(inv)
}

/// JSON form: vertex relabelling plus arrow images as combinations of basis names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    #[serde(default)]
    pub vertices: BTreeMap<String, String>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<(Rational, String)>>,
}

impl MorphismSpec {
    pub fn build(&self, alg: &GradedAlgebra) -> Result<AlgebraMap> {
        let mut vertices: Vec<usize> = (0..alg.num_idempotents()).collect();
        for (from, to) in &self.vertices {
            let i = alg.label_index(from).ok_or_else(|| Error::invalid(format!("twist.vertices: unknown vertex {from}")))?;
            let j = alg.label_index(to).ok_or_else(|| Error::invalid(format!("twist.vertices.{from}: unknown vertex {to}")))?;
            vertices[i] = j;
        }
        let Some(q) = alg.quiver() else {
            return AlgebraMap::permutation(alg, &vertices);
        };
        let mut arrows: Vec<SparseRow> = q.arrows.iter().map(|a| unit(alg.basis_index(&a.name).expect("arrow in basis"))).collect();
        for (name, combo) in &self.arrows {
            let k = q
                .arrows
                .iter()
                .position(|a| &a.name == name)
                .ok_or_else(|| Error::invalid(format!("twist.arrows: unknown arrow {name}")))?;
            let mut acc = crate::exact::vector::Acc::new();
            for (c, b) in combo {
                let idx = alg.basis_index(b).ok_or_else(|| Error::invalid(format!("twist.arrows.{name}: unknown basis element {b}")))?;
                acc.add(idx, c);
            }
            arrows[k] = acc.finish();
        }
        AlgebraMap::from_generators(alg, &vertices, &arrows)
    }
}
