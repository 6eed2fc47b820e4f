//! Finite groups as multiplication tables, built from permutations or by
//! products, semidirect products and quotients.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group enumerated from generators.
pub const ENUMERATION_CAP: usize = 1000;

/// A finite group with identity `0`; `mul(a, b)` is `a * b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    /// Images of the points under each element, for permutation groups.
    perms: Option<Vec<Vec<usize>>>,
}

/// Composition `(p q)(x) = p(q(x))`.
fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

impl FiniteGroup {
    /// Breadth-first enumeration in generator order.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<FiniteGroup> {
        for (k, g) in gens.iter().enumerate() {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::invalid(format!("generators[{k}] is not a permutation of {degree} points")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for g in gens {
                let p = compose(&elems[e], g);
                if !index.contains_key(&p) {
                    if elems.len() >= ENUMERATION_CAP {
                        return Err(Error::cap(format!("group has more than {ENUMERATION_CAP} elements")));
                    }
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let table: Vec<Vec<usize>> =
            (0..n).map(|a| (0..n).map(|b| index[&compose(&elems[a], &elems[b])]).collect()).collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        let mut grp = FiniteGroup::from_table_unchecked(table, generators);
        grp.perms = Some(elems);
        Ok(grp)
    }

    fn from_table_unchecked(table: Vec<Vec<usize>>, generators: Vec<usize>) -> FiniteGroup {
        let n = table.len();
        let inverse = (0..n).map(|a| (0..n).find(|&b| table[a][b] == 0).expect("group table has inverses")).collect();
        FiniteGroup { table, inverse, generators, perms: None }
    }

    /// Validates identity `0`, inverses and associativity.
    pub fn from_table(table: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::invalid("group table must be square with entries in range"));
        }
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return Err(Error::invalid("element 0 must be the identity"));
        }
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == 0) {
                return Err(Error::invalid(format!("element {a} has no inverse")));
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::invalid("group table is not associative"));
                    }
                }
            }
        }
        if generators.iter().any(|&g| g >= n) {
            return Err(Error::invalid("generator out of range"));
        }
        Ok(FiniteGroup::from_table_unchecked(table, generators))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g h g^{-1}`.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn permutation(&self, a: usize) -> Option<&[usize]> {
        self.perms.as_ref().map(|p| p[a].as_slice())
    }

    pub fn degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p[0].len())
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted closure of `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut k = 0;
        while k < out.len() {
            let e = out[k];
            for &g in gens {
                let p = self.mul(e, g);
                if !seen[p] {
                    seen[p] = true;
                    out.push(p);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        out
    }

    /// The subgroup generated by `gens` with its embedding into `self`.
    pub fn subgroup(&self, gens: &[usize]) -> (FiniteGroup, Vec<usize>) {
        let elems = self.closure(gens);
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        let table = elems.iter().map(|&a| elems.iter().map(|&b| pos[&self.mul(a, b)]).collect()).collect();
        let mut sub = FiniteGroup::from_table_unchecked(table, gens.iter().map(|g| pos[g]).collect());
        sub.perms = self.perms.as_ref().map(|p| elems.iter().map(|&e| p[e].clone()).collect());
        (sub, elems)
    }

    /// Whether the sorted element set `h` is a subgroup.
    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let set: std::collections::HashSet<usize> = h.iter().copied().collect();
        set.contains(&0) && h.iter().all(|&a| h.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        let set: std::collections::HashSet<usize> = h.iter().copied().collect();
        (0..self.order()).all(|g| h.iter().all(|&x| set.contains(&self.conj(g, x))))
    }

    pub fn center(&self) -> Vec<usize> {
        let n = self.order();
        (0..n).filter(|&z| (0..n).all(|g| self.mul(z, g) == self.mul(g, z))).collect()
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let n = self.order();
        let mut comms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                comms.push(self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))));
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.closure(&comms)
    }

    /// `self / n` for a normal subgroup, with the projection of every element.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(normal) || !self.is_normal(normal) {
            return Err(Error::precondition("quotient needs a normal subgroup"));
        }
        let mut coset = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if coset[g] != usize::MAX {
                continue;
            }
            for &x in normal {
                coset[self.mul(g, x)] = reps.len();
            }
            reps.push(g);
        }
        let table = reps.iter().map(|&a| reps.iter().map(|&b| coset[self.mul(a, b)]).collect()).collect();
        let mut gens: Vec<usize> = self.generators.iter().map(|&g| coset[g]).filter(|&c| c != 0).collect();
        gens.dedup();
        Ok((FiniteGroup::from_table_unchecked(table, gens), coset))
    }

    /// `a × b` with element `(x, y)` at index `x * |b| + y`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (a.order(), b.order());
        let table = (0..n * m)
            .map(|p| (0..n * m).map(|q| a.mul(p / m, q / m) * m + b.mul(p % m, q % m)).collect())
            .collect();
        let mut gens: Vec<usize> = a.generators.iter().map(|&g| g * m).collect();
        gens.extend(b.generators.iter().copied());
        let mut g = FiniteGroup::from_table_unchecked(table, gens);
        if let (Some(pa), Some(pb)) = (&a.perms, &b.perms) {
            let da = pa[0].len();
            g.perms = Some(
                (0..n * m)
                    .map(|p| pa[p / m].iter().copied().chain(pb[p % m].iter().map(|x| x + da)).collect())
                    .collect(),
            );
        }
        g
    }

    /// `n ⋊ gamma` with `(x, s)(y, t) = (x · act[s](y), s t)` at index `x * |gamma| + s`.
    /// `act[s]` is the automorphism of `n` by which `s` acts, as a permutation of its elements.
    pub fn semidirect(n: &FiniteGroup, gamma: &FiniteGroup, act: &[Vec<usize>]) -> Result<FiniteGroup> {
        let (a, b) = (n.order(), gamma.order());
        if act.len() != b {
            return Err(Error::invalid("need one automorphism per element of the acting group"));
        }
        for s in 0..b {
            for x in 0..a {
                for y in 0..a {
                    if act[s][n.mul(x, y)] != n.mul(act[s][x], act[s][y]) {
                        return Err(Error::invalid("action is not by automorphisms"));
                    }
                }
            }
            for t in 0..b {
                for x in 0..a {
                    if act[gamma.mul(s, t)][x] != act[s][act[t][x]] {
                        return Err(Error::invalid("action is not a homomorphism"));
                    }
                }
            }
        }
        let table = (0..a * b)
            .map(|p| {
                (0..a * b)
                    .map(|q| {
                        let (x, s) = (p / b, p % b);
                        let (y, t) = (q / b, q % b);
                        n.mul(x, act[s][y]) * b + gamma.mul(s, t)
                    })
                    .collect()
            })
            .collect();
        let mut gens: Vec<usize> = n.generators.iter().map(|&g| g * b).collect();
        gens.extend(gamma.generators.iter().copied());
        Ok(FiniteGroup::from_table_unchecked(table, gens))
    }

    /// `Z/n_1 × ... × Z/n_k`, element index in mixed radix (last factor fastest).
    pub fn abelian(orders: &[u64]) -> Result<FiniteGroup> {
        if orders.iter().any(|&o| o == 0) {
            return Err(Error::invalid("abelian factor orders must be positive"));
        }
        let total: u64 = orders.iter().product();
        if total as usize > ENUMERATION_CAP {
            return Err(Error::cap(format!("group has more than {ENUMERATION_CAP} elements")));
        }
        let n = total as usize;
        let digits = |mut x: usize| -> Vec<u64> {
            let mut out = vec![0; orders.len()];
            for k in (0..orders.len()).rev() {
                out[k] = x as u64 % orders[k];
                x /= orders[k] as usize;
            }
            out
        };
        let number = |d: &[u64]| -> usize { d.iter().zip(orders).fold(0, |acc, (x, o)| acc * *o as usize + *x as usize) };
        let table = (0..n)
            .map(|p| {
                let dp = digits(p);
                (0..n)
                    .map(|q| {
                        let s: Vec<u64> = dp.iter().zip(digits(q)).zip(orders).map(|((x, y), o)| (x + y) % o).collect();
                        number(&s)
                    })
                    .collect()
            })
            .collect();
        let gens = (0..orders.len())
            .filter(|&k| orders[k] > 1)
            .map(|k| {
                let mut d = vec![0; orders.len()];
                d[k] = 1;
                number(&d)
            })
            .collect();
        Ok(FiniteGroup::from_table_unchecked(table, gens))
    }

    /// Digits of an element of [`FiniteGroup::abelian`].
    pub fn abelian_digits(orders: &[u64], mut x: usize) -> Vec<u64> {
        let mut out = vec![0; orders.len()];
        for k in (0..orders.len()).rev() {
            out[k] = x as u64 % orders[k];
            x /= orders[k] as usize;
        }
        out
    }

    pub fn abelian_index(orders: &[u64], digits: &[u64]) -> usize {
        digits.iter().zip(orders).fold(0, |acc, (x, o)| acc * *o as usize + (*x % *o) as usize)
    }
}

/// Permutation from 1-based cycles.
pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut p: Vec<usize> = (0..degree).collect();
    let mut used = vec![false; degree];
    for c in cycles {
        for (k, &x) in c.iter().enumerate() {
            if x == 0 || x > degree {
                return Err(Error::invalid(format!("point {x} outside 1..={degree}")));
            }
            if std::mem::replace(&mut used[x - 1], true) {
                return Err(Error::invalid(format!("point {x} appears twice")));
            }
            p[x - 1] = c[(k + 1) % c.len()] - 1;
        }
    }
    Ok(p)
}

/// JSON form `{degree, generators: [[cycle, ...], ...]}` with 1-based points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Vec<Vec<usize>>>,
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(k, c)| from_cycles(self.degree, c).map_err(|e| Error::invalid(format!("generators[{k}]: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::from_permutations(self.degree, &gens)
    }
}

/// Standard permutation groups.
pub mod named {
    use super::*;

    fn perm(degree: usize, cycles: &[&[usize]]) -> Vec<usize> {
        from_cycles(degree, &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).expect("valid cycles")
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::from_permutations(1, &[]).expect("trivial group")
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let g: Vec<usize> = (0..n).map(|k| (k + 1) % n).collect();
        FiniteGroup::from_permutations(n, &[g]).expect("cyclic group")
    }

    pub fn symmetric(n: usize) -> FiniteGroup {
        if n < 2 {
            return FiniteGroup::from_permutations(n.max(1), &[]).expect("trivial group");
        }
        let cyc: Vec<usize> = (1..=n).collect();
        FiniteGroup::from_permutations(n, &[perm(n, &[&[1, 2]]), perm(n, &[&cyc])]).expect("symmetric group")
    }

    pub fn alternating(n: usize) -> FiniteGroup {
        let gens: Vec<Vec<usize>> = (3..=n).map(|k| perm(n, &[&[1, 2, k]])).collect();
        FiniteGroup::from_permutations(n.max(1), &gens).expect("alternating group")
    }

    /// Dihedral group of order `2n` acting on `n` points.
    pub fn dihedral(n: usize) -> FiniteGroup {
        let r: Vec<usize> = (0..n).map(|k| (k + 1) % n).collect();
        let s: Vec<usize> = (0..n).map(|k| (n - k) % n).collect();
        FiniteGroup::from_permutations(n, &[r, s]).expect("dihedral group")
    }

    /// Quaternion group in its regular representation on 8 points.
    pub fn quaternion() -> FiniteGroup {
        let i = perm(8, &[&[1, 2, 5, 6], &[3, 8, 7, 4]]);
        let j = perm(8, &[&[1, 3, 5, 7], &[2, 4, 6, 8]]);
        FiniteGroup::from_permutations(8, &[i, j]).expect("quaternion group")
    }

    /// `{e, (12)(34), (13)(24), (14)(23)}` in S4.
    pub fn klein_normal() -> FiniteGroup {
        FiniteGroup::from_permutations(4, &[perm(4, &[&[1, 2], &[3, 4]]), perm(4, &[&[1, 3], &[2, 4]])]).expect("Klein group")
    }

    /// `⟨(12), (34)⟩` in S4.
    pub fn klein_non_normal() -> FiniteGroup {
        FiniteGroup::from_permutations(4, &[perm(4, &[&[1, 2]]), perm(4, &[&[3, 4]])]).expect("Klein group")
    }

    /// Element indices of `h`'s permutations inside `g` (both on the same points).
    pub fn embed(g: &FiniteGroup, h: &FiniteGroup) -> Result<Vec<usize>> {
        let (Some(_), Some(_)) = (g.degree(), h.degree()) else {
            return Err(Error::precondition("embedding needs permutation groups"));
        };
        let index: HashMap<&[usize], usize> = (0..g.order()).map(|k| (g.permutation(k).unwrap(), k)).collect();
        (0..h.order())
            .map(|k| index.get(h.permutation(k).unwrap()).copied().ok_or_else(|| Error::precondition("not a subgroup")))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(4).order(), 12);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(quaternion().order(), 8);
        assert_eq!(quaternion().center().len(), 2);
        assert!(!quaternion().is_abelian());
        assert_eq!(cyclic(5).order(), 5);
        assert_eq!(trivial().order(), 1);
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = quaternion();
        assert_eq!((0..8).filter(|&a| q.element_order(a) == 2).count(), 1);
    }

    #[test]
    fn commutators_and_quotients() {
        let s4 = symmetric(4);
        assert_eq!(s4.commutator_subgroup().len(), 12);
        let v = embed(&s4, &klein_normal()).unwrap();
        let mut v_sorted = v.clone();
        v_sorted.sort_unstable();
        assert!(s4.is_normal(&v_sorted));
        let (q, _) = s4.quotient(&v_sorted).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
        let mut w = embed(&s4, &klein_non_normal()).unwrap();
        w.sort_unstable();
        assert!(!s4.is_normal(&w));
    }

    #[test]
    fn products() {
        let p = FiniteGroup::direct_product(&cyclic(2), &cyclic(3));
        assert_eq!(p.order(), 6);
        assert!(p.is_abelian());
        let z3 = FiniteGroup::abelian(&[3]).unwrap();
        let z2 = cyclic(2);
        // the nontrivial element of Z/2 inverts Z/3
        let act = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let s3 = FiniteGroup::semidirect(&z3, &z2, &act).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn cycles_are_one_based() {
        assert_eq!(from_cycles(3, &[vec![1, 2, 3]]).unwrap(), vec![1, 2, 0]);
        assert!(from_cycles(3, &[vec![0, 1]]).is_err());
        let spec: GroupSpec = serde_json::from_str(r#"{"degree":3,"generators":[[[1,2]],[[1,2,3]]]}"#).unwrap();
        assert_eq!(spec.build().unwrap().order(), 6);
    }
}
