//! Indexed bases of tensor words `b_1 ⊗ ... ⊗ b_n` of algebra basis elements.

use std::collections::HashMap;

use super::graded::GradedAlgebra;

#[derive(Clone, Debug, Default)]
pub struct TupleBasis {
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl TupleBasis {
    pub fn new(tuples: Vec<Vec<usize>>) -> TupleBasis {
        let index = tuples.iter().enumerate().map(|(k, t)| (t.clone(), k)).collect();
        TupleBasis { tuples, index }
    }

    /// Every word with leg `k` drawn from `legs[k]`; with `alg`, only composable words.
    pub fn product(legs: &[Vec<usize>], alg: Option<&GradedAlgebra>) -> TupleBasis {
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        for leg in legs {
            let mut next = Vec::with_capacity(out.len() * leg.len());
            for t in &out {
                for &b in leg {
                    if let (Some(a), Some(&last)) = (alg, t.last()) {
                        if a.element(last).target != a.element(b).source {
                            continue;
                        }
                    }
                    let mut w = t.clone();
                    w.push(b);
                    next.push(w);
                }
            }
            out = next;
        }
        TupleBasis::new(out)
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn get(&self, k: usize) -> &[usize] {
        &self.tuples[k]
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn position(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Sum of leg weights of every word.
    pub fn weights(&self, alg: &GradedAlgebra) -> Vec<i64> {
        self.tuples.iter().map(|t| t.iter().map(|&b| i64::from(alg.element(b).weight)).sum()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::examples::a2_path;

    #[test]
    fn composable_words_of_a2() {
        let a = a2_path().build().unwrap();
        let all: Vec<usize> = (0..a.dim()).collect();
        assert_eq!(TupleBasis::product(&[all.clone(), all.clone()], None).len(), 9);
        // e1 e1, e1 a, a e2, e2 e2
        assert_eq!(TupleBasis::product(&[all.clone(), all], Some(&a)).len(), 4);
    }
}
