//! Gradings of a semisimple Lie algebra by weighted Dynkin diagrams, and the
//! dimensions attached to a nilpotent orbit: centralizer, orbit, Slodowy slice
//! and the slice to a partial Springer resolution.
//!
//! Outside type A a diagram is not checked to come from a nilpotent orbit; it
//! still yields a grading. Centralizer dimensions use `dim g^e = dim g_0 + dim g_1`,
//! which in type A is confirmed against the rank of `ad e`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rank, ExactMatrix, Rational, Ring, Rref};
use crate::rootdata::{positive_roots, transpose, CartanType, ParabolicType, SimpleType};

/// Weights `d(i) ∈ {0, 1, 2}` on the simple roots, Bourbaki numbering.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedDynkinDiagram {
    pub weights: Vec<u8>,
}

impl WeightedDynkinDiagram {
    pub fn new(weights: Vec<u8>) -> Result<WeightedDynkinDiagram> {
        if let Some(i) = weights.iter().position(|&w| w > 2) {
            return Err(Error::invalid(format!("weight {} at node {} is not in {{0, 1, 2}}", weights[i], i + 1)));
        }
        Ok(WeightedDynkinDiagram { weights })
    }

    pub fn zero(rank: usize) -> WeightedDynkinDiagram {
        WeightedDynkinDiagram { weights: vec![0; rank] }
    }

    pub fn regular(rank: usize) -> WeightedDynkinDiagram {
        WeightedDynkinDiagram { weights: vec![2; rank] }
    }

    /// `E_6`: weight 2 on the trivalent node `α_4`, 0 elsewhere.
    pub fn e6_exceptional() -> WeightedDynkinDiagram {
        WeightedDynkinDiagram { weights: vec![0, 0, 0, 2, 0, 0] }
    }

    /// `E_8`: weight 2 on the branch node `α_2`, 0 elsewhere.
    pub fn e8_exceptional() -> WeightedDynkinDiagram {
        WeightedDynkinDiagram { weights: vec![0, 2, 0, 0, 0, 0, 0, 0] }
    }

    /// Named built-ins: `e6`, `e8`.
    pub fn builtin(name: &str) -> Result<(CartanType, WeightedDynkinDiagram)> {
        match name.to_ascii_lowercase().as_str() {
            "e6" => Ok((CartanType::simple(SimpleType::E(6)), Self::e6_exceptional())),
            "e8" => Ok((CartanType::simple(SimpleType::E(8)), Self::e8_exceptional())),
            _ => Err(Error::invalid(format!("no built-in diagram named {name}"))),
        }
    }

    pub fn is_even(&self) -> bool {
        self.weights.iter().all(|w| w % 2 == 0)
    }

    fn check(&self, t: &CartanType) -> Result<()> {
        if self.weights.len() != t.rank() {
            return Err(Error::invalid(format!("{t} needs {} weights, got {}", t.rank(), self.weights.len())));
        }
        Ok(())
    }
}

impl FromStr for WeightedDynkinDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<WeightedDynkinDiagram> {
        let w = s
            .split(',')
            .map(|x| x.trim().parse::<u8>().map_err(|_| Error::invalid(format!("weights: bad entry {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        WeightedDynkinDiagram::new(w)
    }
}

impl fmt::Display for WeightedDynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

fn pairing(d: &WeightedDynkinDiagram, root: &[i64]) -> i64 {
    d.weights.iter().zip(root).map(|(w, c)| i64::from(*w) * c).sum()
}

/// `w ↦ dim g_w` for the grading by `ad h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingProfile {
    pub dims: BTreeMap<i64, usize>,
}

impl GradingProfile {
    pub fn get(&self, w: i64) -> usize {
        self.dims.get(&w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    fn check(&self, dim_g: usize, rank: usize) -> Result<()> {
        if self.dims.iter().any(|(w, n)| self.get(-w) != *n) {
            return Err(Error::check("grading is not symmetric"));
        }
        if self.total() != dim_g || self.get(0) < rank {
            return Err(Error::check("grading dimensions do not add up"));
        }
        Ok(())
    }
}

pub fn lie_algebra_dim(t: &CartanType) -> usize {
    t.rank() + t.torus_rank + 2 * positive_roots(&t.cartan()).len()
}

pub fn grading_profile(t: &CartanType, d: &WeightedDynkinDiagram) -> Result<GradingProfile> {
    d.check(t)?;
    let mut dims = BTreeMap::new();
    dims.insert(0, t.rank() + t.torus_rank);
    for a in positive_roots(&t.cartan()) {
        let w = pairing(d, &a);
        *dims.entry(w).or_insert(0) += 1;
        *dims.entry(-w).or_insert(0) += 1;
    }
    let p = GradingProfile { dims };
    p.check(lie_algebra_dim(t), t.rank() + t.torus_rank)?;
    Ok(p)
}

pub fn centralizer_dim(p: &GradingProfile) -> usize {
    p.get(0) + p.get(1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDims {
    pub dim_g: usize,
    pub centralizer: usize,
    pub orbit: usize,
    pub slice: usize,
    /// Whether the centralizer was confirmed by the rank of `ad e`.
    pub rank_checked: bool,
}

pub fn orbit_dims(t: &CartanType, d: &WeightedDynkinDiagram) -> Result<OrbitDims> {
    let p = grading_profile(t, d)?;
    let dim_g = p.total();
    let centralizer = centralizer_dim(&p);
    let orbit = dim_g - centralizer;
    if orbit % 2 != 0 {
        return Err(Error::check(format!("odd orbit dimension {orbit}: {d} is not the diagram of a nilpotent orbit")));
    }
    let mut rank_checked = false;
    if let ([SimpleType::A(n)], 0) = (t.factors.as_slice(), t.torus_rank) {
        if let Some(lambda) = partition_of_diagram(*n + 1, d) {
            if type_a_rank_oracle(&lambda)? != centralizer {
                return Err(Error::check(format!("rank of ad e disagrees with the grading for {lambda}")));
            }
            rank_checked = true;
        }
    }
    Ok(OrbitDims { dim_g, centralizer, orbit, slice: centralizer, rank_checked })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialSliceDim {
    /// `2 #(Φ⁺ \ Φ⁺_P) - dim O_e`; negative when the orbit misses `N_P`.
    pub value: i64,
    pub meets_image: bool,
}

pub fn partial_resolution_slice_dim(t: &CartanType, p: &ParabolicType, d: &WeightedDynkinDiagram) -> Result<PartialSliceDim> {
    p.check(t)?;
    let dims = orbit_dims(t, d)?;
    let c = t.cartan();
    let levi: Vec<Vec<i64>> = p.levi.iter().map(|&i| p.levi.iter().map(|&j| c[i][j]).collect()).collect();
    let unipotent = positive_roots(&c).len() - positive_roots(&levi).len();
    let value = 2 * unipotent as i64 - dims.orbit as i64;
    Ok(PartialSliceDim { value, meets_image: value >= 0 })
}

/// A simple root or a weight, in simple-root or fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lambda {
    Root(Vec<i64>),
    Weight(Vec<i64>),
}

/// `⟨λ, h⟩` for the semisimple element `h` with `⟨α_i, h⟩ = d(i)`.
pub fn jm_pairing(t: &CartanType, d: &WeightedDynkinDiagram, lambda: &Lambda) -> Result<Rational> {
    d.check(t)?;
    let r = t.rank();
    match lambda {
        Lambda::Root(c) if c.len() == r => Ok(Rational::from_int(pairing(d, c))),
        Lambda::Weight(l) if l.len() == r => {
            // h = Σ x_i α_i^∨ with Aᵀ x = d; kernel of [Aᵀ | d] is spanned by (-x, 1)
            let at = transpose(&t.cartan());
            let rows = at
                .iter()
                .zip(&d.weights)
                .map(|(row, w)| row.iter().copied().chain([i64::from(*w)]).collect())
                .collect::<Vec<Vec<i64>>>();
            let m = ExactMatrix::from_dense(Ring::Rationals, &rows)?;
            let kernel = Rref::of(&m)?.kernel()?;
            let [v] = kernel.as_slice() else { return Err(Error::check("Cartan matrix is singular")) };
            let mut x = vec![Rational::ZERO; r];
            for (k, val) in v {
                if *k < r {
                    x[*k] = -val;
                }
            }
            Ok(l.iter().zip(&x).map(|(a, b)| &Rational::from_int(*a) * b).sum())
        }
        _ => Err(Error::invalid(format!("λ needs {r} coordinates"))),
    }
}

/// A partition, parts in non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Partition> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// `self ⊵ other` in the dominance order.
    pub fn dominates(&self, other: &Partition) -> bool {
        let n = self.0.len().max(other.0.len());
        let (mut a, mut b) = (0, 0);
        (0..n).all(|i| {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            a >= b
        })
    }

    /// Eigenvalues of `h` on `k^n`, non-increasing.
    fn h_eigenvalues(&self) -> Vec<i64> {
        let mut h: Vec<i64> = self.0.iter().flat_map(|&p| (0..p).map(move |k| p as i64 - 1 - 2 * k as i64)).collect();
        h.sort_unstable_by(|a, b| b.cmp(a));
        h
    }

    pub fn weighted_diagram(&self) -> WeightedDynkinDiagram {
        let h = self.h_eigenvalues();
        WeightedDynkinDiagram { weights: h.windows(2).map(|w| (w[0] - w[1]) as u8).collect() }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn partition_of_diagram(n: usize, d: &WeightedDynkinDiagram) -> Option<Partition> {
    partitions(n).into_iter().find(|p| &p.weighted_diagram() == d)
}

/// `dim sl_n^e` for `e` in Jordan form of shape `lambda`, from the rank of `ad e`.
pub fn type_a_rank_oracle(lambda: &Partition) -> Result<usize> {
    let n = lambda.size();
    if n < 2 || lambda.0.contains(&0) {
        return Err(Error::invalid("partition must have size at least 2 and positive parts"));
    }
    // e sends the k-th basis vector of each block to the (k-1)-th
    let mut e = vec![vec![false; n]; n];
    let mut start = 0;
    for &p in &lambda.0 {
        for k in 1..p {
            e[start + k - 1][start + k] = true;
        }
        start += p;
    }
    // ad e (E_ij) = Σ_k e_ki E_kj - Σ_l e_jl E_il
    let mut triplets = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let col = i * n + j;
            for k in 0..n {
                if e[k][i] {
                    triplets.push((k * n + j, col, Rational::ONE));
                }
                if e[j][k] {
                    triplets.push((i * n + k, col, -Rational::ONE));
                }
            }
        }
    }
    let ad = ExactMatrix::from_triplets(Ring::Rationals, n * n, n * n, triplets)?;
    // the scalars are central in gl_n and complementary to sl_n
    Ok(n * n - rank(&ad)? - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    fn diag(w: &[u8]) -> WeightedDynkinDiagram {
        WeightedDynkinDiagram::new(w.to_vec()).unwrap()
    }

    fn profile(t: &str, w: &[u8]) -> Vec<(i64, usize)> {
        grading_profile(&ty(t), &diag(w)).unwrap().dims.into_iter().collect()
    }

    #[test]
    fn small_profiles() {
        assert_eq!(profile("A1", &[2]), vec![(-2, 1), (0, 1), (2, 1)]);
        assert_eq!(profile("A2", &[1, 1]), vec![(-2, 1), (-1, 2), (0, 2), (1, 2), (2, 1)]);
        assert_eq!(profile("A2", &[2, 2]), vec![(-4, 1), (-2, 2), (0, 2), (2, 2), (4, 1)]);
    }

    #[test]
    fn small_dims() {
        let d = orbit_dims(&ty("A1"), &diag(&[2])).unwrap();
        assert_eq!((d.centralizer, d.orbit, d.slice), (1, 2, 1));
        assert!(d.rank_checked);
        let d = orbit_dims(&ty("A2"), &diag(&[1, 1])).unwrap();
        assert_eq!((d.centralizer, d.orbit, d.slice), (4, 4, 4));
        assert_eq!(orbit_dims(&ty("A2"), &diag(&[2, 2])).unwrap().centralizer, 2);
        let z = orbit_dims(&ty("G2"), &WeightedDynkinDiagram::zero(2)).unwrap();
        assert_eq!((z.orbit, z.slice), (0, 14));
        assert!(!z.rank_checked);
    }

    #[test]
    fn odd_orbit_is_rejected() {
        assert!(orbit_dims(&ty("A1"), &diag(&[1])).is_err());
        assert!(grading_profile(&ty("A1"), &diag(&[1])).is_ok());
        assert!(WeightedDynkinDiagram::new(vec![3]).is_err());
        assert!(grading_profile(&ty("A2"), &diag(&[2])).is_err());
    }

    #[test]
    fn exceptional_builtins() {
        // g_0 is the Levi of the weight-zero nodes: A2 x A1 x A2 in E6, A7 in E8
        let (e6, d6) = WeightedDynkinDiagram::builtin("e6").unwrap();
        let p = grading_profile(&e6, &d6).unwrap();
        assert_eq!(p.total(), 78);
        assert_eq!(p.get(0), 6 + 2 * (3 + 1 + 3));
        assert_eq!(orbit_dims(&e6, &d6).unwrap().orbit, 78 - 20);
        let (e8, d8) = WeightedDynkinDiagram::builtin("e8").unwrap();
        let p = grading_profile(&e8, &d8).unwrap();
        assert_eq!(p.total(), 248);
        assert_eq!(p.get(0), 8 + 2 * 28);
        assert_eq!(p.get(1), 0);
    }

    #[test]
    fn regular_slice_is_the_rank() {
        for s in ["A3", "B3", "C4", "D4", "E6", "F4", "G2"] {
            let t = ty(s);
            assert_eq!(orbit_dims(&t, &WeightedDynkinDiagram::regular(t.rank())).unwrap().slice, t.rank(), "{s}");
        }
    }

    #[test]
    fn rank_oracle_basics() {
        assert_eq!(type_a_rank_oracle(&Partition::new(vec![2]).unwrap()).unwrap(), 1);
        assert_eq!(type_a_rank_oracle(&Partition::new(vec![2, 1]).unwrap()).unwrap(), 4);
        assert_eq!(type_a_rank_oracle(&Partition::new(vec![1; 5]).unwrap()).unwrap(), 24);
    }

    #[test]
    fn type_a_coherence_up_to_six() {
        for n in 2..=6 {
            let t = CartanType::simple(SimpleType::A(n - 1));
            for lambda in partitions(n) {
                let d = lambda.weighted_diagram();
                let dims = orbit_dims(&t, &d).unwrap();
                assert!(dims.rank_checked, "{lambda}");
                assert_eq!(dims.centralizer, type_a_rank_oracle(&lambda).unwrap(), "{lambda}");
            }
        }
    }

    #[test]
    fn orbit_dim_grows_with_dominance() {
        let t = CartanType::simple(SimpleType::A(5));
        let ps = partitions(6);
        for a in &ps {
            for b in &ps {
                if a != b && a.dominates(b) {
                    let (da, db) = (orbit_dims(&t, &a.weighted_diagram()).unwrap(), orbit_dims(&t, &b.weighted_diagram()).unwrap());
                    assert!(da.orbit > db.orbit, "{a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn partial_slices() {
        let b = ParabolicType::borel();
        assert_eq!(partial_resolution_slice_dim(&ty("A1"), &b, &diag(&[2])).unwrap().value, 0);
        assert_eq!(partial_resolution_slice_dim(&ty("A2"), &b, &diag(&[0, 0])).unwrap().value, 6);
        assert_eq!(partial_resolution_slice_dim(&ty("A2"), &b, &diag(&[2, 2])).unwrap().value, 0);
        // the regular orbit is not in the image of T^*P^1 x pt for P with Levi α_1
        let p = ParabolicType::new(vec![0]);
        let r = partial_resolution_slice_dim(&ty("A2"), &p, &diag(&[2, 2])).unwrap();
        assert!(!r.meets_image && r.value == -2);
        assert!(partial_resolution_slice_dim(&ty("A2"), &ParabolicType::new(vec![5]), &diag(&[2, 2])).is_err());
    }

    #[test]
    fn jm_pairings() {
        let t = ty("A2");
        let d = diag(&[1, 1]);
        assert_eq!(jm_pairing(&t, &d, &Lambda::Root(vec![1, 0])).unwrap(), Rational::ONE);
        assert_eq!(jm_pairing(&t, &d, &Lambda::Root(vec![1, 1])).unwrap(), Rational::from_int(2));
        assert_eq!(jm_pairing(&t, &d, &Lambda::Weight(vec![0, 0])).unwrap(), Rational::ZERO);
        // α_1 = 2ω_1 - ω_2
        assert_eq!(jm_pairing(&t, &d, &Lambda::Weight(vec![2, -1])).unwrap(), Rational::ONE);
        // h = diag(1, 0, -1) pairs with ω_1 = e_1 to 1
        assert_eq!(jm_pairing(&t, &d, &Lambda::Weight(vec![1, 0])).unwrap(), Rational::ONE);
        assert_eq!(jm_pairing(&ty("A1"), &diag(&[1]), &Lambda::Weight(vec![1])).unwrap(), Rational::frac(1, 2));
    }

    #[test]
    fn parse_diagram() {
        assert_eq!("0, 2,1".parse::<WeightedDynkinDiagram>().unwrap(), diag(&[0, 2, 1]));
        assert!("0,x".parse::<WeightedDynkinDiagram>().is_err());
        assert_eq!(Partition::new(vec![1, 2]).unwrap().weighted_diagram(), diag(&[1, 1]));
    }
}
