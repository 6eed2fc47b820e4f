//! Finitely generated abelian groups `Z^r ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k` with a left group action.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::group::FiniteGroup;
use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<i64>>;

/// Coordinates `0..free_rank` are free, the rest are torsion with orders `torsion`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    /// Action matrix of every group element, reduced modulo torsion on the rows.
    action: Vec<IntMatrix>,
}

fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n).map(|i| (0..m).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect()).collect()
}

impl GModule {
    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Order of coordinate `c`, or 0 when free.
    pub fn modulus(&self, c: usize) -> i64 {
        if c < self.free_rank {
            0
        } else {
            self.torsion[c - self.free_rank]
        }
    }

    pub fn reduce(&self, c: usize, x: i64) -> i64 {
        match self.modulus(c) {
            0 => x,
            t => x.rem_euclid(t),
        }
    }

    fn reduce_matrix(&self, mut m: IntMatrix) -> IntMatrix {
        for (i, row) in m.iter_mut().enumerate() {
            for x in row.iter_mut() {
                *x = self.reduce(i, *x);
            }
        }
        m
    }

    /// Extends the generator matrices to every element and checks the relations of `g`.
    pub fn new(g: &FiniteGroup, free_rank: usize, torsion: Vec<i64>, generators: &[IntMatrix]) -> Result<GModule> {
        let r = free_rank + torsion.len();
        if torsion.iter().any(|&t| t < 2) {
            return Err(Error::invalid("torsion orders must be at least 2"));
        }
        if generators.len() != g.generators().len() {
            return Err(Error::invalid(format!(
                "{} action matrices for {} group generators",
                generators.len(),
                g.generators().len()
            )));
        }
        let mut m = GModule { free_rank, torsion, action: Vec::new() };
        for (k, a) in generators.iter().enumerate() {
            if a.len() != r || a.iter().any(|row| row.len() != r) {
                return Err(Error::invalid(format!("action[{k}] must be {r}x{r}")));
            }
            // a must send t_j e_j into the relation lattice
            for j in 0..r {
                let tj = m.modulus(j);
                if tj == 0 {
                    continue;
                }
                for i in 0..r {
                    let ti = m.modulus(i);
                    let v = a[i][j] * tj;
                    if (ti == 0 && v != 0) || (ti != 0 && v % ti != 0) {
                        return Err(Error::invalid(format!("action[{k}] does not preserve torsion")));
                    }
                }
            }
        }
        let id: IntMatrix = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        let mut action: Vec<Option<IntMatrix>> = vec![None; g.order()];
        action[0] = Some(id);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (k, &s) in g.generators().iter().enumerate() {
                let p = g.mul(e, s);
                if action[p].is_none() {
                    let prod = m.reduce_matrix(mat_mul(action[e].as_ref().unwrap(), &generators[k]));
                    action[p] = Some(prod);
                    queue.push_back(p);
                }
            }
        }
        m.action = action.into_iter().map(|a| a.expect("generators generate the group")).collect();
        for a in 0..g.order() {
            for b in 0..g.order() {
                if m.reduce_matrix(mat_mul(&m.action[a], &m.action[b])) != m.action[g.mul(a, b)] {
                    return Err(Error::invalid("action matrices do not satisfy the group relations"));
                }
            }
        }
        Ok(m)
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    /// The same module seen through `emb: H -> G`.
    pub fn restrict(&self, emb: &[usize]) -> GModule {
        GModule { free_rank: self.free_rank, torsion: self.torsion.clone(), action: emb.iter().map(|&g| self.action[g].clone()).collect() }
    }

    pub fn trivial(g: &FiniteGroup, free_rank: usize, torsion: Vec<i64>) -> Result<GModule> {
        let r = free_rank + torsion.len();
        let id: IntMatrix = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        GModule::new(g, free_rank, torsion, &vec![id; g.generators().len()])
    }

    /// `Z[G]` with left multiplication, coinduced from the trivial subgroup.
    pub fn regular(g: &FiniteGroup) -> Result<GModule> {
        let n = g.order();
        let gens: Vec<IntMatrix> = g
            .generators()
            .iter()
            .map(|&s| (0..n).map(|i| (0..n).map(|j| i64::from(g.mul(s, j) == i)).collect()).collect())
            .collect();
        GModule::new(g, n, Vec::new(), &gens)
    }

    /// `Z` with each generator acting by the given sign.
    pub fn signs(g: &FiniteGroup, signs: &[i64]) -> Result<GModule> {
        GModule::new(g, 1, Vec::new(), &signs.iter().map(|&s| vec![vec![s]]).collect::<Vec<_>>())
    }

    /// The weight lattice `Z^3 / Z(1,1,1)` of SL3 with basis `ε_1, ε_2`, permuted by a group on 3 points.
    pub fn sl3_weight_lattice(g: &FiniteGroup) -> Result<GModule> {
        if g.degree() != Some(3) {
            return Err(Error::precondition("the SL3 weight lattice needs a permutation group on 3 points"));
        }
        let eps = |k: usize| -> Vec<i64> {
            match k {
                0 => vec![1, 0],
                1 => vec![0, 1],
                _ => vec![-1, -1],
            }
        };
        let gens: Vec<IntMatrix> = g
            .generators()
            .iter()
            .map(|&s| {
                let p = g.permutation(s).unwrap();
                let (c0, c1) = (eps(p[0]), eps(p[1]));
                vec![vec![c0[0], c1[0]], vec![c0[1], c1[1]]]
            })
            .collect();
        GModule::new(g, 2, Vec::new(), &gens)
    }
}

/// Generator matrices either as a list in generator order or keyed by 0-based generator index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    List(Vec<IntMatrix>),
    Map(std::collections::BTreeMap<String, IntMatrix>),
}

/// JSON form `{free_rank, torsion, action}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GModuleSpec {
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<i64>,
    pub action: ActionSpec,
}

impl GModuleSpec {
    pub fn build(&self, g: &FiniteGroup) -> Result<GModule> {
        let mats = match &self.action {
            ActionSpec::List(l) => l.clone(),
            ActionSpec::Map(m) => {
                let mut out = vec![None; g.generators().len()];
                for (k, a) in m {
                    let i: usize = k.parse().map_err(|_| Error::invalid(format!("action.{k}: expected a generator index")))?;
                    let slot = out.get_mut(i).ok_or_else(|| Error::invalid(format!("action.{k}: no such generator")))?;
                    *slot = Some(a.clone());
                }
                out.into_iter()
                    .enumerate()
                    .map(|(i, a)| a.ok_or_else(|| Error::invalid(format!("action.{i}: missing"))))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        GModule::new(g, self.free_rank, self.torsion.clone(), &mats)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::group::named::*;

    #[test]
    fn regular_module_extends() {
        let g = symmetric(3);
        let m = GModule::regular(&g).unwrap();
        assert_eq!(m.rank(), 6);
    }

    #[test]
    fn relations_are_checked() {
        let g = cyclic(2);
        // x -> 2x is not an involution of Z
        assert!(GModule::new(&g, 1, vec![], &[vec![vec![2]]]).is_err());
        // but it is an involution of Z/3
        assert!(GModule::new(&g, 0, vec![3], &[vec![vec![2]]]).is_ok());
    }

    #[test]
    fn torsion_must_be_preserved() {
        let g = cyclic(2);
        // Z ⊕ Z/2 with the torsion generator sent into the free part
        assert!(GModule::new(&g, 1, vec![2], &[vec![vec![1, 1], vec![0, 1]]]).is_err());
    }

    #[test]
    fn weight_lattice_of_sl3() {
        let s3 = symmetric(3);
        let m = GModule::sl3_weight_lattice(&s3).unwrap();
        // a transposition swaps ε_1 and ε_2
        assert_eq!(m.action(s3.generators()[0]), &vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn spec_accepts_list_or_map() {
        let g = cyclic(2);
        let a: GModuleSpec = serde_json::from_str(r#"{"free_rank":1,"action":[[[-1]]]}"#).unwrap();
        let b: GModuleSpec = serde_json::from_str(r#"{"free_rank":1,"torsion":[],"action":{"0":[[-1]]}}"#).unwrap();
        assert_eq!(a.build(&g).unwrap(), b.build(&g).unwrap());
        let c: GModuleSpec = serde_json::from_str(r#"{"free_rank":1,"action":{"1":[[-1]]}}"#).unwrap();
        assert!(c.build(&g).is_err());
    }
}
