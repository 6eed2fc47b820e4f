//! Root systems of finite type in Bourbaki numbering, Weyl group Poincaré
//! series, partial flag varieties, and character lattices of connected
//! reductive groups.
//!
//! Weights are written in the basis of fundamental weights `ω_i`, so that
//! `cartan[i][j] = ⟨α_j, α_i^∨⟩` and the simple root `α_j` is column `j`.
//! A weight is dominant when it pairs nonnegatively with every simple coroot;
//! with the roots of the Borel taken negative this is dominance for `B^-`.

pub mod lattice;
pub mod weyl;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use lattice::{
    fundamental_group, minuscule_lift, minuscule_weights, product_multiplier, schur_multiplier_connected, FactorData,
    CharacterSpec, ProductMultiplier, RootDatum, RootDatumSpec,
};
pub use weyl::{
    brion_peyre_all_pairs, brion_peyre_check, poincare_flag, poincare_w, splitting_criterion, weight_shear_cohomology,
    ParabolicType, Scalar, SplittingReport, ENUMERATION_CAP,
};

/// A simple factor of a Dynkin diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SimpleType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl SimpleType {
    pub fn rank(self) -> usize {
        match self {
            SimpleType::A(n) | SimpleType::B(n) | SimpleType::C(n) | SimpleType::D(n) | SimpleType::E(n) => n,
            SimpleType::F4 => 4,
            SimpleType::G2 => 2,
        }
    }

    fn validate(self) -> Result<SimpleType> {
        let ok = match self {
            SimpleType::A(n) => n >= 1,
            SimpleType::B(n) => n >= 2,
            SimpleType::C(n) => n >= 2,
            SimpleType::D(n) => n >= 4,
            SimpleType::E(n) => (6..=8).contains(&n),
            SimpleType::F4 | SimpleType::G2 => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::invalid(format!("no root system of type {self}")))
        }
    }

    /// Degrees of the basic invariants.
    pub fn degrees(self) -> Vec<usize> {
        match self {
            SimpleType::A(n) => (2..=n + 1).collect(),
            SimpleType::B(n) | SimpleType::C(n) => (1..=n).map(|k| 2 * k).collect(),
            SimpleType::D(n) => {
                let mut d: Vec<usize> = (1..n).map(|k| 2 * k).collect();
                d.push(n);
                d.sort_unstable();
                d
            }
            SimpleType::E(6) => vec![2, 5, 6, 8, 9, 12],
            SimpleType::E(7) => vec![2, 6, 8, 10, 12, 14, 18],
            SimpleType::E(8) => vec![2, 8, 12, 14, 18, 20, 24, 30],
            SimpleType::E(_) => unreachable!("validated"),
            SimpleType::F4 => vec![2, 6, 8, 12],
            SimpleType::G2 => vec![2, 6],
        }
    }

    pub fn weyl_order(self) -> u128 {
        self.degrees().iter().map(|&d| d as u128).product()
    }

    pub fn positive_roots(self) -> usize {
        self.degrees().iter().map(|d| d - 1).sum()
    }

    /// `cartan[i][j] = ⟨α_j, α_i^∨⟩`.
    pub fn cartan(self) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut a = vec![vec![0i64; r]; r];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self {
            SimpleType::A(n) | SimpleType::B(n) | SimpleType::C(n) => (1..n).for_each(|k| link(k - 1, k)),
            SimpleType::D(n) => {
                (1..n - 1).for_each(|k| link(k - 1, k));
                link(n - 3, n - 1);
            }
            SimpleType::E(n) => {
                link(0, 2);
                link(1, 3);
                (3..n).for_each(|k| link(k - 1, k));
            }
            SimpleType::F4 => (1..4).for_each(|k| link(k - 1, k)),
            SimpleType::G2 => link(0, 1),
        }
        // α_n short in B_n, long in C_n; α_1, α_2 long in F_4; α_1 short in G_2
        match self {
            SimpleType::B(n) => a[n - 1][n - 2] = -2,
            SimpleType::C(n) => a[n - 2][n - 1] = -2,
            SimpleType::F4 => a[2][1] = -2,
            SimpleType::G2 => a[0][1] = -3,
            _ => {}
        }
        a
    }

    /// `|Λ / ⟨Φ⟩|`.
    pub fn connection_index(self) -> u64 {
        match self {
            SimpleType::A(n) => n as u64 + 1,
            SimpleType::B(_) | SimpleType::C(_) | SimpleType::E(7) => 2,
            SimpleType::D(_) => 4,
            SimpleType::E(6) => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::A(n) => write!(f, "A{n}"),
            SimpleType::B(n) => write!(f, "B{n}"),
            SimpleType::C(n) => write!(f, "C{n}"),
            SimpleType::D(n) => write!(f, "D{n}"),
            SimpleType::E(n) => write!(f, "E{n}"),
            SimpleType::F4 => write!(f, "F4"),
            SimpleType::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<SimpleType> {
        let s = s.trim();
        let (head, rank) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| Error::invalid(format!("type {s}: missing rank")))?);
        let n: usize = rank.parse().map_err(|_| Error::invalid(format!("type {s}: bad rank")))?;
        let t = match head.to_ascii_uppercase().as_str() {
            "A" => SimpleType::A(n),
            "B" => SimpleType::B(n),
            "C" => SimpleType::C(n),
            "D" => SimpleType::D(n),
            "E" => SimpleType::E(n),
            "F" if n == 4 => SimpleType::F4,
            "G" if n == 2 => SimpleType::G2,
            _ => return Err(Error::invalid(format!("unknown Cartan type {s}"))),
        };
        t.validate()
    }
}

/// Simple factors plus a central torus, e.g. `A2`, `A1xA1`, `A3xT1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType {
    pub factors: Vec<SimpleType>,
    pub torus_rank: usize,
}

impl CartanType {
    pub fn simple(t: SimpleType) -> CartanType {
        CartanType { factors: vec![t], torus_rank: 0 }
    }

    /// Rank of the semisimple part.
    pub fn rank(&self) -> usize {
        self.factors.iter().map(|t| t.rank()).sum()
    }

    /// Index offset of each factor among the simple roots.
    pub fn offsets(&self) -> Vec<usize> {
        self.factors
            .iter()
            .scan(0, |acc, t| {
                let o = *acc;
                *acc += t.rank();
                Some(o)
            })
            .collect()
    }

    /// Block diagonal Cartan matrix of the semisimple part.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut a = vec![vec![0; r]; r];
        for (t, o) in self.factors.iter().zip(self.offsets()) {
            for (i, row) in t.cartan().iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    a[o + i][o + j] = *x;
                }
            }
        }
        a
    }

    pub fn weyl_order(&self) -> u128 {
        self.factors.iter().map(|t| t.weyl_order()).product()
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        if self.torus_rank > 0 {
            parts.push(format!("T{}", self.torus_rank));
        }
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<CartanType> {
        let mut factors = Vec::new();
        let mut torus_rank = 0;
        for part in s.split(['x', '+', '*']).map(str::trim).filter(|p| !p.is_empty()) {
            if let Some(k) = part.strip_prefix(['T', 't']) {
                torus_rank += k.parse::<usize>().map_err(|_| Error::invalid(format!("type {s}: bad torus rank {part}")))?;
            } else {
                factors.push(part.parse()?);
            }
        }
        if factors.is_empty() && torus_rank == 0 {
            return Err(Error::invalid("empty Cartan type"));
        }
        Ok(CartanType { factors, torus_rank })
    }
}

/// Positive roots of a Cartan matrix in simple-root coordinates, by height.
pub fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    let mut known: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..r {
                // p = how far the α_i-string through β extends downwards
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..r).map(|j| cartan[i][j] * beta[j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots
}

/// Cartan matrix of the transposed (dual) root system.
pub fn transpose(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    (0..r).map(|i| (0..r).map(|j| cartan[j][i]).collect()).collect()
}

/// Connected components of the Dynkin diagram restricted to `nodes`.
pub fn components(cartan: &[Vec<i64>], nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; cartan.len()];
    let mut out = Vec::new();
    for &s in nodes {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for &j in nodes {
                if !seen[j] && cartan[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Type of a connected Dynkin subdiagram.
pub fn classify(cartan: &[Vec<i64>], nodes: &[usize]) -> Result<SimpleType> {
    let r = nodes.len();
    if r == 0 {
        return Err(Error::invalid("empty diagram"));
    }
    let bond = |i: usize, j: usize| cartan[nodes[i]][nodes[j]] * cartan[nodes[j]][nodes[i]];
    let neighbours = |i: usize| (0..r).filter(|&j| j != i && bond(i, j) != 0).collect::<Vec<_>>();
    if r == 1 {
        return Ok(SimpleType::A(1));
    }
    let mut multiple = None;
    for i in 0..r {
        for j in i + 1..r {
            match bond(i, j) {
                0 | 1 => {}
                3 => return Ok(SimpleType::G2),
                2 => multiple = Some((i, j)),
                _ => return Err(Error::invalid("not a finite type diagram")),
            }
        }
    }
    if let Some((i, j)) = multiple {
        let (di, dj) = (neighbours(i).len(), neighbours(j).len());
        if r == 4 && di == 2 && dj == 2 {
            return Ok(SimpleType::F4);
        }
        if r == 2 {
            return Ok(SimpleType::B(2));
        }
        // the end node of the double bond decides: short end gives B, long end gives C
        let end = if di == 1 { i } else { j };
        let other = if end == i { j } else { i };
        let end_is_short = cartan[nodes[end]][nodes[other]] == -2;
        return Ok(if end_is_short { SimpleType::B(r) } else { SimpleType::C(r) });
    }
    let Some(branch) = (0..r).find(|&i| neighbours(i).len() == 3) else {
        return Ok(SimpleType::A(r));
    };
    let mut arms: Vec<usize> = neighbours(branch)
        .into_iter()
        .map(|start| {
            let (mut prev, mut cur, mut len) = (branch, start, 1);
            loop {
                let nxt: Vec<usize> = neighbours(cur).into_iter().filter(|&x| x != prev).collect();
                match nxt.as_slice() {
                    [n] => {
                        prev = cur;
                        cur = *n;
                        len += 1;
                    }
                    _ => break len,
                }
            }
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => Ok(SimpleType::D(r)),
        [1, 2, 2] => Ok(SimpleType::E(6)),
        [1, 2, 3] => Ok(SimpleType::E(7)),
        [1, 2, 4] => Ok(SimpleType::E(8)),
        _ => Err(Error::invalid("not a finite type diagram")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [SimpleType; 12] = [
        SimpleType::A(1),
        SimpleType::A(3),
        SimpleType::B(2),
        SimpleType::B(4),
        SimpleType::C(3),
        SimpleType::D(4),
        SimpleType::D(5),
        SimpleType::E(6),
        SimpleType::E(7),
        SimpleType::E(8),
        SimpleType::F4,
        SimpleType::G2,
    ];

    #[test]
    fn root_counts_match_degrees() {
        for t in ALL {
            assert_eq!(positive_roots(&t.cartan()).len(), t.positive_roots(), "{t}");
        }
        assert_eq!(positive_roots(&SimpleType::E(8).cartan()).len(), 120);
    }

    #[test]
    fn classification_recovers_type() {
        for t in ALL {
            let c = t.cartan();
            let nodes: Vec<usize> = (0..t.rank()).collect();
            let got = classify(&c, &nodes).unwrap();
            let expect = if t == SimpleType::C(2) { SimpleType::B(2) } else { t };
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn subdiagram_of_e8() {
        let c = SimpleType::E(8).cartan();
        assert_eq!(classify(&c, &[0, 1, 2, 3, 4, 5, 6]).unwrap(), SimpleType::E(7));
        assert_eq!(classify(&c, &[1, 2, 3, 4]).unwrap(), SimpleType::D(4));
        assert_eq!(components(&c, &[0, 1, 5, 6]), vec![vec![0], vec![1], vec![5, 6]]);
    }

    #[test]
    fn parse_types() {
        let t: CartanType = "A1xA2xT1".parse().unwrap();
        assert_eq!(t.factors, vec![SimpleType::A(1), SimpleType::A(2)]);
        assert_eq!(t.torus_rank, 1);
        assert!("D3".parse::<CartanType>().is_err());
        assert!("E9".parse::<CartanType>().is_err());
        assert_eq!(t.to_string(), "A1xA2xT1");
    }

    #[test]
    fn b_and_c_are_dual() {
        assert_eq!(transpose(&SimpleType::B(3).cartan()), SimpleType::C(3).cartan());
    }
}
