//! Character lattices `⟨Φ⟩ ⊆ X ⊆ Λ`, fundamental groups, Schur multipliers of
//! connected reductive groups and minuscule representatives of `Λ / ⟨Φ⟩`.

use serde::{Deserialize, Serialize};

use super::{positive_roots, transpose, CartanType, SimpleType};
use crate::error::{Error, Result};
use crate::exact::snf::sparse_invariant_factors;
use crate::exact::{AbelianGroupStructure, ExactMatrix, IntRow, Integer, Ring};

fn int_rows(rows: &[Vec<i64>]) -> Vec<IntRow> {
    rows.iter()
        .map(|r| r.iter().enumerate().filter(|(_, x)| **x != 0).map(|(k, x)| (k, Integer::from(*x))).collect())
        .collect()
}

/// Index data `(rank, product of invariant factors)` of a row lattice.
fn lattice_invariants(rows: &[Vec<i64>], cols: usize) -> (usize, Integer) {
    let f = sparse_invariant_factors(int_rows(rows), cols);
    (f.len(), f.into_iter().product())
}

/// Whether `v` lies in the integer row span of `rows`.
fn in_lattice(rows: &[Vec<i64>], v: &[i64]) -> bool {
    let cols = v.len();
    let mut with = rows.to_vec();
    with.push(v.to_vec());
    lattice_invariants(rows, cols) == lattice_invariants(&with, cols)
}

/// Simple roots as rows in fundamental weight coordinates, padded with zero torus characters.
fn root_rows(t: &CartanType) -> Vec<Vec<i64>> {
    let c = t.cartan();
    let r = t.rank();
    (0..r)
        .map(|j| (0..r).map(|i| c[i][j]).chain(std::iter::repeat_n(0, t.torus_rank)).collect())
        .collect()
}

/// A connected reductive group: Cartan type and the character lattice `X` as integer rows in
/// `Λ ⊕ Z^torus`, where `Λ` has the basis of fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub cartan_type: CartanType,
    pub characters: Vec<Vec<i64>>,
}

impl RootDatum {
    pub fn new(cartan_type: CartanType, characters: Vec<Vec<i64>>) -> Result<RootDatum> {
        let n = cartan_type.rank() + cartan_type.torus_rank;
        if characters.iter().any(|r| r.len() != n) {
            return Err(Error::invalid(format!("X: every generator needs {n} coordinates")));
        }
        let (rank, _) = lattice_invariants(&characters, n);
        if rank != n {
            return Err(Error::invalid(format!("X has rank {rank}, expected {n}")));
        }
        for (j, alpha) in root_rows(&cartan_type).iter().enumerate() {
            if !in_lattice(&characters, alpha) {
                return Err(Error::invalid(format!("X does not contain the simple root α_{}", j + 1)));
            }
        }
        Ok(RootDatum { cartan_type, characters })
    }

    /// `X = Λ ⊕ Z^torus`.
    pub fn simply_connected(t: CartanType) -> RootDatum {
        let n = t.rank() + t.torus_rank;
        let rows = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        RootDatum { cartan_type: t, characters: rows }
    }

    /// `X = ⟨Φ⟩ ⊕ Z^torus`.
    pub fn adjoint(t: CartanType) -> RootDatum {
        let r = t.rank();
        let n = r + t.torus_rank;
        let mut rows = root_rows(&t);
        rows.extend((r..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()));
        RootDatum { cartan_type: t, characters: rows }
    }

    /// `GL_n`: characters `e_k = ω_k - ω_{k-1}` on the derived torus plus `1` on the centre.
    pub fn general_linear(n: usize) -> Result<RootDatum> {
        if n < 2 {
            return Err(Error::invalid("GL_n needs n >= 2"));
        }
        let t = CartanType { factors: vec![SimpleType::A(n - 1)], torus_rank: 1 };
        let rows = (1..=n)
            .map(|k| {
                let mut v = vec![0i64; n];
                if k < n {
                    v[k - 1] += 1;
                }
                if k > 1 {
                    v[k - 2] -= 1;
                }
                v[n - 1] = 1;
                v
            })
            .collect();
        RootDatum::new(t, rows)
    }

    /// Characters of the derived group: projection of `X` onto `Λ`.
    pub fn derived_characters(&self) -> Vec<Vec<i64>> {
        let r = self.cartan_type.rank();
        self.characters.iter().map(|v| v[..r].to_vec()).collect()
    }
}

/// JSON form: `{"type": "A2", "X": "weight" | "root" | [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatumSpec {
    #[serde(rename = "type")]
    pub cartan_type: String,
    #[serde(rename = "X")]
    pub characters: CharacterSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CharacterSpec {
    Named(String),
    Rows(Vec<Vec<i64>>),
}

impl RootDatumSpec {
    pub fn build(&self) -> Result<RootDatum> {
        let t: CartanType = self.cartan_type.parse()?;
        match &self.characters {
            CharacterSpec::Named(s) if s == "weight" => Ok(RootDatum::simply_connected(t)),
            CharacterSpec::Named(s) if s == "root" => Ok(RootDatum::adjoint(t)),
            CharacterSpec::Named(s) => Err(Error::invalid(format!("X: expected weight, root or a matrix, got {s}"))),
            CharacterSpec::Rows(rows) => RootDatum::new(t, rows.clone()),
        }
    }
}

fn quotient_by_derived(d: &RootDatum) -> Result<AbelianGroupStructure> {
    let r = d.cartan_type.rank();
    if r == 0 {
        return Ok(AbelianGroupStructure::trivial());
    }
    let m = ExactMatrix::from_dense(Ring::Integers, &d.derived_characters())?;
    let q = AbelianGroupStructure::cokernel_of_rows(&m)?;
    if !q.is_finite() {
        return Err(Error::check("Λ / X_der is infinite"));
    }
    Ok(q)
}

/// `π_1([G, G])`, computed through its character group `Λ / X_der`.
pub fn fundamental_group(d: &RootDatum) -> Result<AbelianGroupStructure> {
    quotient_by_derived(d)
}

/// `M(G) ≅ X^*(π_1([G, G])) ≅ Λ / X_der`.
pub fn schur_multiplier_connected(d: &RootDatum) -> Result<AbelianGroupStructure> {
    let m = quotient_by_derived(d)?;
    let bound: u64 = d.cartan_type.factors.iter().map(|t| t.connection_index()).product();
    if !Integer::from(bound as i64).is_divisible_by(&m.order().expect("finite")) {
        return Err(Error::check("multiplier order does not divide the connection index"));
    }
    Ok(m)
}

/// Dominant minuscule weights of a simple type, `0` first.
pub fn minuscule_weights(t: SimpleType) -> Vec<Vec<i64>> {
    let r = t.rank();
    let coroots = positive_roots(&transpose(&t.cartan()));
    let mut out = vec![vec![0; r]];
    for i in 0..r {
        if coroots.iter().all(|c| c[i] <= 1) {
            out.push((0..r).map(|j| i64::from(i == j)).collect());
        }
    }
    out
}

fn same_class(t: SimpleType, a: &[i64], b: &[i64]) -> bool {
    let roots = root_rows(&CartanType::simple(t));
    let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    in_lattice(&roots, &diff)
}

/// The minimal dominant weight in the class of `lambda` in `Λ / ⟨Φ⟩`.
pub fn minuscule_lift(d: &RootDatum, lambda: &[i64]) -> Result<Vec<i64>> {
    let t = &d.cartan_type;
    if lambda.len() != t.rank() {
        return Err(Error::invalid(format!("weight needs {} coordinates in the fundamental weight basis", t.rank())));
    }
    let mut out = Vec::with_capacity(t.rank());
    for (f, o) in t.factors.iter().zip(t.offsets()) {
        let part = &lambda[o..o + f.rank()];
        let mu = minuscule_weights(*f)
            .into_iter()
            .find(|mu| same_class(*f, mu, part))
            .ok_or_else(|| Error::check(format!("no minuscule weight in the class of {part:?} for {f}")))?;
        let coroots = positive_roots(&transpose(&f.cartan()));
        for c in &coroots {
            let p: i64 = c.iter().zip(&mu).map(|(a, b)| a * b).sum();
            if !(0..=1).contains(&p) {
                return Err(Error::check("lift is not dominant minuscule"));
            }
        }
        out.extend(mu);
    }
    Ok(out)
}

/// `G = G° × A` with `G°` connected (optional) and `A = ⊕ Z/c_i` finite abelian.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorData {
    pub datum: Option<RootDatum>,
    #[serde(default)]
    pub components: Vec<i64>,
}

impl FactorData {
    pub fn connected(d: RootDatum) -> FactorData {
        FactorData { datum: Some(d), components: Vec::new() }
    }

    pub fn finite_abelian(orders: Vec<i64>) -> FactorData {
        FactorData { datum: None, components: orders }
    }

    fn check(&self) -> Result<()> {
        if self.components.iter().any(|&c| c < 1) {
            return Err(Error::invalid("component group orders must be positive"));
        }
        Ok(())
    }

    /// `M(G°) ⊕ M(A)` with `M(⊕ Z/c_i) = ⊕_{i<j} Z/gcd(c_i, c_j)`.
    pub fn multiplier(&self) -> Result<AbelianGroupStructure> {
        self.check()?;
        let connected = match &self.datum {
            Some(d) => schur_multiplier_connected(d)?,
            None => AbelianGroupStructure::trivial(),
        };
        let c = &self.components;
        let pairs: Vec<Integer> = (0..c.len())
            .flat_map(|i| (i + 1..c.len()).map(move |j| Integer::from(c[i]).gcd(&Integer::from(c[j]))))
            .collect();
        Ok(connected.sum(&AbelianGroupStructure::from_cyclic_orders(0, &pairs)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductMultiplier {
    pub first: AbelianGroupStructure,
    pub second: AbelianGroupStructure,
    /// `Hom(π_0(G^ab), π_0(H^ab)^∨)`.
    pub bimultiplicative: AbelianGroupStructure,
    pub total: AbelianGroupStructure,
}

/// `M(G × H) ≅ M(G) × M(H) × Hom(π_0(G^ab), π_0(H^ab)^∨)`.
pub fn product_multiplier(g: &FactorData, h: &FactorData) -> Result<ProductMultiplier> {
    let first = g.multiplier()?;
    let second = h.multiplier()?;
    let homs: Vec<Integer> = g
        .components
        .iter()
        .flat_map(|&a| h.components.iter().map(move |&b| Integer::from(a).gcd(&Integer::from(b))))
        .collect();
    let bimultiplicative = AbelianGroupStructure::from_cyclic_orders(0, &homs);
    let total = first.sum(&second).sum(&bimultiplicative);
    Ok(ProductMultiplier { first, second, bimultiplicative, total })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    #[test]
    fn multipliers_of_sl_and_pgl() {
        assert!(schur_multiplier_connected(&RootDatum::simply_connected(ty("A2"))).unwrap().is_trivial());
        assert_eq!(schur_multiplier_connected(&RootDatum::adjoint(ty("A2"))).unwrap(), AbelianGroupStructure::cyclic(3));
        assert_eq!(schur_multiplier_connected(&RootDatum::adjoint(ty("A1"))).unwrap(), AbelianGroupStructure::cyclic(2));
        assert_eq!(fundamental_group(&RootDatum::adjoint(ty("B2"))).unwrap(), AbelianGroupStructure::cyclic(2));
    }

    #[test]
    fn adjoint_order_is_the_connection_index() {
        for s in ["A1", "A4", "B3", "C3", "D4", "D5", "E6", "E7", "E8", "F4", "G2"] {
            let t = ty(s);
            let m = schur_multiplier_connected(&RootDatum::adjoint(t.clone())).unwrap();
            assert_eq!(m.order().unwrap(), Integer::from(t.factors[0].connection_index() as i64), "{s}");
        }
        // D_even has Z/2 x Z/2, D_odd has Z/4
        assert_eq!(fundamental_group(&RootDatum::adjoint(ty("D4"))).unwrap().torsion.len(), 2);
        assert_eq!(fundamental_group(&RootDatum::adjoint(ty("D5"))).unwrap(), AbelianGroupStructure::cyclic(4));
    }

    #[test]
    fn gl_n_has_simply_connected_derived_group() {
        let gl3 = RootDatum::general_linear(3).unwrap();
        assert!(fundamental_group(&gl3).unwrap().is_trivial());
    }

    #[test]
    fn lattice_must_contain_roots() {
        // 2Λ misses the roots of A1
        assert!(RootDatum::new(ty("A1"), vec![vec![4]]).is_err());
        assert!(RootDatum::new(ty("A1"), vec![vec![2]]).is_ok());
        assert!(RootDatum::new(ty("A2"), vec![vec![1, 0]]).is_err());
    }

    #[test]
    fn minuscule_lifts() {
        let sl2 = RootDatum::simply_connected(ty("A1"));
        assert_eq!(minuscule_lift(&sl2, &[1]).unwrap(), vec![1]);
        assert_eq!(minuscule_lift(&sl2, &[3]).unwrap(), vec![1]);
        assert_eq!(minuscule_lift(&sl2, &[2]).unwrap(), vec![0]);
        let sl3 = RootDatum::simply_connected(ty("A2"));
        assert_eq!(minuscule_lift(&sl3, &[1, 0]).unwrap(), vec![1, 0]);
        assert_eq!(minuscule_lift(&sl3, &[0, 2]).unwrap(), vec![1, 0]);
        assert!(minuscule_lift(&sl3, &[1]).is_err());
    }

    #[test]
    fn minuscule_classes_are_distinct() {
        for t in [SimpleType::A(3), SimpleType::B(3), SimpleType::C(3), SimpleType::D(4), SimpleType::D(5), SimpleType::E(6), SimpleType::E(7), SimpleType::E(8)] {
            let ws = minuscule_weights(t);
            assert_eq!(ws.len() as u64, t.connection_index(), "{t}");
            for i in 0..ws.len() {
                for j in i + 1..ws.len() {
                    assert!(!same_class(t, &ws[i], &ws[j]));
                }
            }
        }
    }

    #[test]
    fn product_bookkeeping() {
        let sl2 = FactorData::connected(RootDatum::simply_connected(ty("A1")));
        let pgl2 = FactorData::connected(RootDatum::adjoint(ty("A1")));
        let p = product_multiplier(&sl2, &pgl2).unwrap();
        assert_eq!(p.total, AbelianGroupStructure::cyclic(2));
        assert!(p.bimultiplicative.is_trivial());
        let z2 = FactorData::finite_abelian(vec![2]);
        let k = product_multiplier(&z2, &z2).unwrap();
        assert_eq!(k.bimultiplicative, AbelianGroupStructure::cyclic(2));
        assert_eq!(k.total, AbelianGroupStructure::cyclic(2));
    }

    #[test]
    fn spec_parses() {
        let s: RootDatumSpec = serde_json::from_str(r#"{"type":"A2","X":"root"}"#).unwrap();
        assert_eq!(s.build().unwrap(), RootDatum::adjoint(ty("A2")));
        let m: RootDatumSpec = serde_json::from_str(r#"{"type":"A1","X":[[2]]}"#).unwrap();
        assert_eq!(schur_multiplier_connected(&m.build().unwrap()).unwrap(), AbelianGroupStructure::cyclic(2));
    }
}
