//! Integral homology in degrees 1 and 2 from normalized bar chains, and the
//! Schur multiplier `M(G) = H^2(G, Q/Z) ≅ H^3(G, Z)`.
//!
//! `H^3(G, Z)` is the torsion of `C^3 / d C^2`, and the cochain coboundary
//! `C^2 -> C^3` is the transpose of the chain boundary `C_3 -> C_2`, so both
//! have the same invariant factors and `M(G) ≅ H_2(G, Z)`. Maps between
//! multipliers are Pontryagin dual to pushforwards on `H_2`; their image
//! orders are lattice indices inside `C_2`.

use super::cohomology::{cell_index, cell_tuple, cells};
use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::exact::echelon::IntRow;
use crate::exact::snf::sparse_invariant_factors;
use crate::exact::{integer_kernel, AbelianGroupStructure, ExactMatrix, Integer, Rational, Ring};

/// Largest group whose multiplier is computed.
pub const SCHUR_CAP: usize = 30;

fn check_cap(g: &FiniteGroup) -> Result<()> {
    if g.order() > SCHUR_CAP {
        return Err(Error::cap(format!(
            "|G| = {} exceeds the cap of {SCHUR_CAP} ({} cells in degree 3)",
            g.order(),
            cells(g.order(), 3)
        )));
    }
    Ok(())
}

/// Boundary of every `n`-cell as a row over `(n-1)`-cells, trivial coefficients.
pub fn boundary_rows(g: &FiniteGroup, n: usize) -> Vec<IntRow> {
    let ord = g.order();
    (0..cells(ord, n))
        .map(|c| {
            let t = cell_tuple(ord, n, c);
            let mut acc = std::collections::BTreeMap::<usize, i64>::new();
            let mut add = |cell: Option<usize>, s: i64| {
                if let Some(cell) = cell {
                    *acc.entry(cell).or_default() += s;
                }
            };
            add(cell_index(ord, &t[1..]), 1);
            for i in 1..n {
                let mut s = t[..i - 1].to_vec();
                s.push(g.mul(t[i - 1], t[i]));
                s.extend_from_slice(&t[i + 1..]);
                add(cell_index(ord, &s), if i % 2 == 0 { 1 } else { -1 });
            }
            add(cell_index(ord, &t[..n - 1]), if n % 2 == 0 { 1 } else { -1 });
            acc.into_iter().filter(|(_, v)| *v != 0).map(|(k, v)| (k, Integer::from(v))).collect()
        })
        .collect()
}

fn structure_of_cokernel(rows: Vec<IntRow>, cols: usize) -> AbelianGroupStructure {
    let f = sparse_invariant_factors(rows, cols);
    AbelianGroupStructure { free_rank: cols - f.len(), torsion: f.into_iter().filter(|d| !d.is_one()).collect() }
}

/// `G^ab = H_1(G, Z)`.
pub fn abelianization(g: &FiniteGroup) -> AbelianGroupStructure {
    if g.order() == 1 {
        return AbelianGroupStructure::trivial();
    }
    structure_of_cokernel(boundary_rows(g, 2), cells(g.order(), 1))
}

/// `M(G)` as the torsion of `C_2 / ∂C_3`.
pub fn schur_multiplier(g: &FiniteGroup) -> Result<AbelianGroupStructure> {
    check_cap(g)?;
    if g.order() == 1 {
        return Ok(AbelianGroupStructure::trivial());
    }
    let f = sparse_invariant_factors(boundary_rows(g, 3), cells(g.order(), 2));
    let m = AbelianGroupStructure::from_cyclic_orders(0, &f.into_iter().filter(|d| !d.is_one()).collect::<Vec<_>>());
    let order = m.order().expect("finite");
    if !Integer::from(g.order() as i64).is_divisible_by(&order) {
        return Err(Error::check(format!("|M(G)| = {order} does not divide |G| = {}", g.order())));
    }
    Ok(m)
}

/// Integer cycles `Z_2(G)` as rows over 2-cells.
pub fn two_cycles(g: &FiniteGroup) -> Result<Vec<IntRow>> {
    if g.order() == 1 {
        return Ok(Vec::new());
    }
    let rows = boundary_rows(g, 2);
    // columns of ∂_2 are the 2-cells
    let trip = rows.iter().enumerate().flat_map(|(c, r)| r.iter().map(move |(k, v)| (*k, c, Rational::from(v.clone()))));
    let m = ExactMatrix::from_triplets(Ring::Integers, cells(g.order(), 1), rows.len(), trip)?;
    integer_kernel(&m)
}

/// Pushes 2-chains of `h` into `g` along an element map `phi: h -> g` (a homomorphism).
pub fn push_chains(h: &FiniteGroup, g: &FiniteGroup, phi: &[usize], chains: &[IntRow]) -> Vec<IntRow> {
    chains
        .iter()
        .map(|row| {
            let mut acc = std::collections::BTreeMap::<usize, Integer>::new();
            for (c, v) in row {
                let t = cell_tuple(h.order(), 2, *c);
                if let Some(gc) = cell_index(g.order(), &[phi[t[0]], phi[t[1]]]) {
                    *acc.entry(gc).or_insert(Integer::ZERO) += v;
                }
            }
            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
        })
        .collect()
}

/// Product of the nonzero invariant factors of a row lattice.
fn det_product(rows: Vec<IntRow>, cols: usize) -> Integer {
    sparse_invariant_factors(rows, cols).into_iter().product()
}

/// Multiplier data of one group kept for index computations.
#[derive(Clone, Debug)]
pub struct SchurData {
    pub multiplier: AbelianGroupStructure,
    boundaries: Vec<IntRow>,
    boundary_det: Integer,
    cols: usize,
}

impl SchurData {
    pub fn new(g: &FiniteGroup) -> Result<SchurData> {
        let multiplier = schur_multiplier(g)?;
        let cols = cells(g.order(), 2);
        let boundaries = if g.order() == 1 { Vec::new() } else { boundary_rows(g, 3) };
        let boundary_det = det_product(boundaries.clone(), cols);
        Ok(SchurData { multiplier, boundaries, boundary_det, cols })
    }

    pub fn order(&self) -> Integer {
        self.multiplier.order().expect("finite")
    }

    /// `|(L + B_2) / B_2|` for 2-cycles `L` of this group.
    pub fn image_order(&self, cycles: &[IntRow]) -> Integer {
        if self.cols == 0 {
            return Integer::ONE;
        }
        let mut rows = self.boundaries.clone();
        rows.extend(cycles.iter().cloned());
        self.boundary_det.div_exact(&det_product(rows, self.cols))
    }
}

/// Orders describing `φ^*: M(G) -> M(H)` for a homomorphism `φ: H -> G`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MultiplierMap {
    pub source: AbelianGroupStructure,
    pub target: AbelianGroupStructure,
    pub image_order: Integer,
    pub kernel_order: Integer,
}

impl MultiplierMap {
    pub fn is_injective(&self) -> bool {
        self.kernel_order.is_one()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_order == self.target.order().expect("finite")
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// `φ^*: M(G) -> M(H)`; its image is dual to the image of `φ_*: H_2(H) -> H_2(G)`.
pub fn multiplier_map(g: &FiniteGroup, h: &FiniteGroup, phi: &[usize]) -> Result<MultiplierMap> {
    if phi.len() != h.order() || phi.iter().any(|&x| x >= g.order()) {
        return Err(Error::invalid("element map has the wrong shape"));
    }
    for a in 0..h.order() {
        for b in 0..h.order() {
            if phi[h.mul(a, b)] != g.mul(phi[a], phi[b]) {
                return Err(Error::invalid("element map is not a homomorphism"));
            }
        }
    }
    check_cap(h)?;
    let gd = SchurData::new(g)?;
    let target = schur_multiplier(h)?;
    let image_order = gd.image_order(&push_chains(h, g, phi, &two_cycles(h)?));
    Ok(MultiplierMap { kernel_order: gd.order().div_exact(&image_order), source: gd.multiplier, target, image_order })
}

/// Restriction `M(G) -> M(H)` to the subgroup with the given elements.
pub fn multiplier_restriction(g: &FiniteGroup, elements: &[usize]) -> Result<MultiplierMap> {
    let mut sorted = elements.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.iter().any(|&x| x >= g.order()) || !g.is_subgroup(&sorted) {
        return Err(Error::precondition("H is not a subgroup"));
    }
    let (h, emb) = g.subgroup(&sorted);
    multiplier_map(g, &h, &emb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::group::named::*;

    fn order(g: &FiniteGroup) -> i64 {
        schur_multiplier(g).unwrap().order().unwrap().to_i64().unwrap()
    }

    #[test]
    fn small_multipliers() {
        assert_eq!(order(&trivial()), 1);
        assert_eq!(order(&cyclic(5)), 1);
        assert_eq!(order(&cyclic(6)), 1);
        assert_eq!(schur_multiplier(&klein_normal()).unwrap(), AbelianGroupStructure::cyclic(2));
        assert_eq!(order(&symmetric(3)), 1);
        assert_eq!(order(&quaternion()), 1);
        assert_eq!(order(&dihedral(4)), 2);
        assert_eq!(schur_multiplier(&alternating(4)).unwrap(), AbelianGroupStructure::cyclic(2));
    }

    #[test]
    fn abelianizations() {
        assert_eq!(abelianization(&symmetric(3)), AbelianGroupStructure::cyclic(2));
        assert_eq!(abelianization(&alternating(4)), AbelianGroupStructure::cyclic(3));
        assert_eq!(abelianization(&quaternion()), AbelianGroupStructure::from_cyclic_orders(0, &[2.into(), 2.into()]));
    }

    #[test]
    fn z2_cubed_has_multiplier_z2_cubed() {
        let g = FiniteGroup::abelian(&[2, 2, 2]).unwrap();
        assert_eq!(schur_multiplier(&g).unwrap(), AbelianGroupStructure::from_cyclic_orders(0, &[2.into(), 2.into(), 2.into()]));
    }

    #[test]
    fn restriction_to_trivial_and_to_self() {
        let g = klein_normal();
        let r = multiplier_restriction(&g, &[0]).unwrap();
        assert_eq!(r.image_order, Integer::ONE);
        assert_eq!(r.kernel_order, Integer::from(2));
        let all: Vec<usize> = (0..g.order()).collect();
        assert!(multiplier_restriction(&g, &all).unwrap().is_isomorphism());
    }

    #[test]
    fn over_cap() {
        assert!(schur_multiplier(&symmetric(5)).is_err());
    }
}
