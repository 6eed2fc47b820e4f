//! Path algebras of graded quivers modulo homogeneous relations.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::graded::{BasisElement, GradedAlgebra, QuiverData};
use crate::error::{Error, Result};
use crate::exact::vector::{unit, Acc};
use crate::exact::{Rational, Ring, Rref, SparseRow};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub weight: u32,
}

/// One term `coeff * path` of a relation; the path lists arrow names in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTerm {
    pub coeff: Rational,
    pub path: Vec<String>,
}

/// Caps for the weight-by-weight quotient computation.
#[derive(Clone, Copy, Debug)]
pub struct QuiverCaps {
    pub max_weight: u32,
    pub max_paths_per_weight: usize,
}

impl Default for QuiverCaps {
    fn default() -> Self {
        QuiverCaps { max_weight: 64, max_paths_per_weight: 20_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Path {
    source: usize,
    target: usize,
    word: Vec<usize>,
}

struct WeightData {
    paths: Vec<Path>,
    index: HashMap<(usize, Vec<usize>), usize>,
    ideal: Rref,
    /// For every path: its expression in normal-form paths (indices into `normal`).
    reduce: Vec<SparseRow>,
    normal: Vec<usize>,
}

/// Builds the path algebra `kQ / (relations)`, one weight at a time.
pub fn from_quiver(
    vertices: &[String],
    arrows: &[Arrow],
    relations: &[Vec<RelationTerm>],
    caps: QuiverCaps,
) -> Result<GradedAlgebra> {
    if vertices.is_empty() {
        return Err(Error::invalid("quiver needs at least one vertex"));
    }
    let nv = vertices.len();
    for a in arrows {
        if a.source >= nv || a.target >= nv {
            return Err(Error::invalid(format!("arrow {} has an unknown endpoint", a.name)));
        }
        if a.weight == 0 {
            return Err(Error::invalid(format!("arrow {} has weight 0; arrows must have positive weight", a.name)));
        }
    }
    let arrow_index: HashMap<&str, usize> = arrows.iter().enumerate().map(|(k, a)| (a.name.as_str(), k)).collect();
    if arrow_index.len() != arrows.len() {
        return Err(Error::invalid("arrow names must be distinct"));
    }

    // relations split into uniform components, grouped by weight
    let mut rel_by_weight: BTreeMap<u32, Vec<Vec<(Path, Rational)>>> = BTreeMap::new();
    for (ri, rel) in relations.iter().enumerate() {
        let mut weight = None;
        let mut parts: BTreeMap<(usize, usize), Vec<(Path, Rational)>> = BTreeMap::new();
        for term in rel {
            if term.path.is_empty() {
                return Err(Error::invalid(format!("relations[{ri}]: empty path")));
            }
            let mut word = Vec::with_capacity(term.path.len());
            for name in &term.path {
                let k = *arrow_index
                    .get(name.as_str())
                    .ok_or_else(|| Error::invalid(format!("relations[{ri}]: unknown arrow {name}")))?;
                word.push(k);
            }
            for w in word.windows(2) {
                if arrows[w[0]].target != arrows[w[1]].source {
                    return Err(Error::invalid(format!("relations[{ri}]: path {:?} is not composable", term.path)));
                }
            }
            let wt: u32 = word.iter().map(|&k| arrows[k].weight).sum();
            if *weight.get_or_insert(wt) != wt {
                return Err(Error::invalid(format!("relations[{ri}] is not homogeneous in weight")));
            }
            let p = Path { source: arrows[word[0]].source, target: arrows[*word.last().unwrap()].target, word };
            parts.entry((p.source, p.target)).or_default().push((p, term.coeff.clone()));
        }
        if let Some(w) = weight {
            rel_by_weight.entry(w).or_default().extend(parts.into_values());
        }
    }

    let max_arrow = arrows.iter().map(|a| a.weight).max().unwrap_or(1);
    let mut levels: Vec<WeightData> = Vec::new();
    let mut zero_run = 0u32;
    let mut w = 0u32;
    loop {
        if w > caps.max_weight {
            return Err(Error::cap(format!(
                "quotient is not finite-dimensional up to weight {}; weight {} is still nonzero",
                caps.max_weight,
                w - zero_run - 1
            )));
        }
        // all paths of weight w
        let mut paths: Vec<Path> = Vec::new();
        if w == 0 {
            paths.extend((0..nv).map(|v| Path { source: v, target: v, word: Vec::new() }));
        } else {
            for (k, a) in arrows.iter().enumerate() {
                if a.weight > w {
                    continue;
                }
                let prev = &levels[(w - a.weight) as usize];
                for p in &prev.paths {
                    if p.target != a.source {
                        continue;
                    }
                    let mut word = p.word.clone();
                    word.push(k);
                    paths.push(Path { source: p.source, target: a.target, word });
                }
            }
        }
        paths.sort();
        if paths.len() > caps.max_paths_per_weight {
            return Err(Error::cap(format!("{} paths in weight {w} exceed the cap {}", paths.len(), caps.max_paths_per_weight)));
        }
        let index: HashMap<(usize, Vec<usize>), usize> =
            paths.iter().enumerate().map(|(k, p)| ((p.source, p.word.clone()), k)).collect();
        let lookup = |p: &Path| index[&(p.source, p.word.clone())];

        // generators of the ideal in weight w
        let mut gens: Vec<SparseRow> = Vec::new();
        if let Some(rels) = rel_by_weight.get(&w) {
            for rel in rels {
                let mut acc = Acc::new();
                for (p, c) in rel {
                    acc.add(lookup(p), c);
                }
                gens.push(acc.finish());
            }
        }
        for (k, a) in arrows.iter().enumerate() {
            if a.weight > w {
                continue;
            }
            let prev = &levels[(w - a.weight) as usize];
            for (_, row) in &prev.ideal.rows {
                // a * r and r * a
                let mut left = Acc::new();
                let mut right = Acc::new();
                for (c, v) in row {
                    let p = &prev.paths[*c];
                    if p.source == a.target {
                        let mut word = vec![k];
                        word.extend(&p.word);
                        left.add(index[&(a.source, word)], v);
                    }
                    if p.target == a.source {
                        let mut word = p.word.clone();
                        word.push(k);
                        right.add(index[&(p.source, word)], v);
                    }
                }
                gens.push(left.finish());
                gens.push(right.finish());
            }
        }
        let ideal = Rref::of_rows(Ring::Rationals, paths.len(), gens.into_iter().filter(|g| !g.is_empty()))?;
        let mut pivot_row = vec![usize::MAX; paths.len()];
        for (r, (c, _)) in ideal.rows.iter().enumerate() {
            pivot_row[*c] = r;
        }
        let normal: Vec<usize> = (0..paths.len()).filter(|&c| pivot_row[c] == usize::MAX).collect();
        let mut nf_pos = vec![usize::MAX; paths.len()];
        for (k, &c) in normal.iter().enumerate() {
            nf_pos[c] = k;
        }
        let reduce = (0..paths.len())
            .map(|c| {
                if nf_pos[c] != usize::MAX {
                    return unit(nf_pos[c]);
                }
                let row = &ideal.rows[pivot_row[c]].1;
                let mut acc = Acc::new();
                for (f, v) in row {
                    if *f != c {
                        acc.add(nf_pos[*f], &-v);
                    }
                }
                acc.finish()
            })
            .collect();
        let empty = normal.is_empty();
        levels.push(WeightData { paths, index, ideal, reduce, normal });
        if w > 0 && empty {
            zero_run += 1;
        } else {
            zero_run = 0;
        }
        if arrows.is_empty() || zero_run >= max_arrow {
            break;
        }
        w += 1;
    }

    // global basis: normal forms ordered by weight then path order
    let mut basis = Vec::new();
    let mut words = Vec::new();
    let mut offset = Vec::with_capacity(levels.len());
    for lvl in &levels {
        offset.push(basis.len());
        for &c in &lvl.normal {
            let p = &lvl.paths[c];
            let name = if p.word.is_empty() {
                format!("e{}", vertices[p.source])
            } else {
                p.word.iter().map(|&k| arrows[k].name.as_str()).collect::<Vec<_>>().join("*")
            };
            let weight = p.word.iter().map(|&k| arrows[k].weight).sum();
            basis.push(BasisElement { name, weight, source: p.source, target: p.target });
            words.push(p.word.clone());
        }
    }
    let n = basis.len();
    let mut table = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            if basis[a].target != basis[b].source {
                continue;
            }
            let wt = (basis[a].weight + basis[b].weight) as usize;
            if wt >= levels.len() {
                continue;
            }
            let lvl = &levels[wt];
            let source = basis[a].source;
            let mut word = words[a].clone();
            word.extend(&words[b]);
            let c = lvl.index[&(source, word)];
            table[a][b] = lvl.reduce[c].iter().map(|(k, v)| (offset[wt] + k, v.clone())).collect();
        }
    }
    let alg = GradedAlgebra::new(vertices.to_vec(), basis, table)?;
    Ok(alg.with_quiver(QuiverData { arrows: arrows.to_vec(), words }))
}

/// JSON form of a quiver with relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<RelationTerm>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub src: String,
    pub dst: String,
    #[serde(default = "one")]
    pub weight: u32,
    pub name: String,
}

fn one() -> u32 {
    1
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<GradedAlgebra> {
        self.build_with(QuiverCaps::default())
    }

    pub fn build_with(&self, caps: QuiverCaps) -> Result<GradedAlgebra> {
        let vidx = |v: &str, k: usize, field: &str| {
            self.vertices
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::invalid(format!("arrows[{k}].{field}: unknown vertex {v}")))
        };
        let mut arrows = Vec::with_capacity(self.arrows.len());
        for (k, a) in self.arrows.iter().enumerate() {
            arrows.push(Arrow {
                name: a.name.clone(),
                source: vidx(&a.src, k, "src")?,
                target: vidx(&a.dst, k, "dst")?,
                weight: a.weight,
            });
        }
        from_quiver(&self.vertices, &arrows, &self.relations, caps)
    }
}

/// Small algebras used throughout the tests and the acceptance suite.
pub mod examples {
    use super::*;

    fn term(c: i64, path: &[&str]) -> RelationTerm {
        RelationTerm { coeff: Rational::from(c), path: path.iter().map(|s| s.to_string()).collect() }
    }

    fn spec(vertices: &[&str], arrows: &[(&str, &str, &str)], relations: Vec<Vec<RelationTerm>>) -> AlgebraSpec {
        AlgebraSpec {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(n, s, d)| ArrowSpec { src: s.to_string(), dst: d.to_string(), weight: 1, name: n.to_string() })
                .collect(),
            relations,
        }
    }

    /// `k^n`.
    pub fn semisimple(n: usize) -> AlgebraSpec {
        let v: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = v.iter().map(String::as_str).collect();
        spec(&refs, &[], Vec::new())
    }

    /// `k[x]/(x^2)`, `x` in weight 1.
    pub fn dual_numbers() -> AlgebraSpec {
        spec(&["1"], &[("x", "1", "1")], vec![vec![term(1, &["x", "x"])]])
    }

    /// `k<x>/(x^3)`, `x` in weight 1.
    pub fn truncated_cubic() -> AlgebraSpec {
        spec(&["1"], &[("x", "1", "1")], vec![vec![term(1, &["x", "x", "x"])]])
    }

    /// Path algebra of `1 -> 2`.
    pub fn a2_path() -> AlgebraSpec {
        spec(&["1", "2"], &[("a", "1", "2")], Vec::new())
    }

    /// Path algebra of `1 -> 2 -> 3`.
    pub fn a3_path() -> AlgebraSpec {
        spec(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], Vec::new())
    }

    /// `1 -> 2 -> 3` with the composite set to zero.
    pub fn a3_zero_relation() -> AlgebraSpec {
        spec(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], vec![vec![term(1, &["a", "b"])]])
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;

    #[test]
    fn dimensions() {
        assert_eq!(dual_numbers().build().unwrap().dim(), 2);
        assert_eq!(truncated_cubic().build().unwrap().dim(), 3);
        assert_eq!(a2_path().build().unwrap().dim(), 3);
        assert_eq!(a3_path().build().unwrap().dim(), 6);
        assert_eq!(a3_zero_relation().build().unwrap().dim(), 5);
        assert_eq!(semisimple(3).build().unwrap().dim(), 3);
    }

    #[test]
    fn radicals() {
        let a = dual_numbers().build().unwrap();
        let r = a.radical();
        assert_eq!(r.len(), 1);
        assert_eq!(a.element(r[0]).name, "x");
        assert_eq!(a2_path().build().unwrap().radical().len(), 1);
    }

    #[test]
    fn free_loop_hits_cap() {
        use super::*;
        let s = AlgebraSpec {
            vertices: vec!["1".into()],
            arrows: vec![ArrowSpec { src: "1".into(), dst: "1".into(), weight: 1, name: "x".into() }],
            relations: Vec::new(),
        };
        let err = s.build_with(QuiverCaps { max_weight: 5, max_paths_per_weight: 100 }).unwrap_err();
        assert!(err.to_string().contains("weight 5"), "{err}");
    }

    #[test]
    fn commutative_square_relation() {
        use super::*;
        // x*y = y*x in k<x,y>/(xy - yx, x^2, y^2) gives k[x,y]/(x^2,y^2), dim 4
        let s = AlgebraSpec {
            vertices: vec!["1".into()],
            arrows: vec![
                ArrowSpec { src: "1".into(), dst: "1".into(), weight: 1, name: "x".into() },
                ArrowSpec { src: "1".into(), dst: "1".into(), weight: 1, name: "y".into() },
            ],
            relations: vec![
                vec![
                    RelationTerm { coeff: Rational::ONE, path: vec!["x".into(), "y".into()] },
                    RelationTerm { coeff: -Rational::ONE, path: vec!["y".into(), "x".into()] },
                ],
                vec![RelationTerm { coeff: Rational::ONE, path: vec!["x".into(), "x".into()] }],
                vec![RelationTerm { coeff: Rational::ONE, path: vec!["y".into(), "y".into()] }],
            ],
        };
        let a = s.build().unwrap();
        assert_eq!(a.hilbert_series(), vec![1, 2, 1]);
    }
}
