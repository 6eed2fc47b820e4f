//! The acceptance suite: twelve exact checks across all modules, each with a
//! runtime budget. Shared by `eqtrace accept` and the integration tests.

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use serde::Serialize;

use crate::algebra::quiver::examples;
use crate::algebra::{AlgebraMap, AlgebraSpec, BimoduleSpec, GradedAlgebra, GradedBimodule};
use crate::bg::{amplitude_report, bounded_trace_model, fiber_at, pre_bg_complex, verify_inertia, FiniteGroupAction};
use crate::error::{Error, Result};
use crate::exact::{AbelianGroupStructure, Integer, Rational};
use crate::groups::{
    central_sequence_check, cohomology, multiplier_restriction, named, product_formula_check, schur_multiplier,
    semidirect_sequence_check, FiniteGroup, GModule,
};
use crate::hochschild::hochschild_homology;
use crate::koszul::{verify_dual_ext, verify_kos_acyclic};
use crate::orbits::{grading_profile, orbit_dims, partitions, type_a_rank_oracle, WeightedDynkinDiagram};
use crate::rootdata::{
    brion_peyre_all_pairs, schur_multiplier_connected, splitting_criterion, CartanType, ParabolicType, RootDatum, Scalar,
    SimpleType,
};

pub const CRITERIA: usize = 12;

/// Seed of the random inertia examples.
pub const INERTIA_SEED: u64 = 0x1e27_1a00;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    /// Every value matched.
    pub values_ok: bool,
    pub within_budget: bool,
    pub passed: bool,
    pub millis: u128,
    pub budget_millis: u128,
    pub detail: Vec<String>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {:<28} {} ({} ms / {} ms)",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.millis,
            self.budget_millis
        )
    }
}

struct Outcome {
    ok: bool,
    detail: Vec<String>,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome { ok: true, detail: Vec::new() }
    }

    fn check(&mut self, ok: bool, msg: impl Into<String>) {
        let msg = msg.into();
        self.detail.push(format!("{} {msg}", if ok { "ok  " } else { "FAIL" }));
        self.ok &= ok;
    }
}

const NAMES: [&str; CRITERIA] = [
    "koszul acyclicity",
    "dual-ext identity",
    "bg fiber identity",
    "bounded model equivalence",
    "amplitude",
    "inertia count",
    "finite schur multipliers",
    "lattice cohomology",
    "connected multipliers",
    "splitting criterion",
    "nilpotent gradings",
    "exact-sequence bookkeeping",
];

const BUDGET_SECS: [u64; CRITERIA] = [5, 10, 30, 10, 5, 10, 120, 1, 1, 5, 5, 60];

/// `all`, or a comma separated list of criterion numbers.
pub fn parse_selector(s: &str) -> Result<Vec<usize>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok((1..=CRITERIA).collect());
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        let id: usize = part.trim().parse().map_err(|_| Error::invalid(format!("criterion selector: bad entry {part:?}")))?;
        if !(1..=CRITERIA).contains(&id) {
            return Err(Error::invalid(format!("criterion selector: no criterion {id}")));
        }
        if !out.contains(&id) {
            out.push(id);
        }
    }
    Ok(out)
}

pub fn run_criterion(id: usize) -> Result<CriterionResult> {
    if !(1..=CRITERIA).contains(&id) {
        return Err(Error::invalid(format!("no criterion {id}")));
    }
    let start = Instant::now();
    let outcome = match id {
        1 => koszul_acyclicity(),
        2 => dual_ext(),
        3 => bg_fibers(),
        4 => bounded_models(),
        5 => amplitudes(),
        6 => inertia(),
        7 => finite_multipliers(),
        8 => lattice_cohomology(),
        9 => connected_multipliers(),
        10 => splitting(),
        11 => gradings(),
        _ => bookkeeping(),
    };
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(BUDGET_SECS[id - 1]);
    let outcome = outcome.unwrap_or_else(|e| Outcome { ok: false, detail: vec![format!("FAIL error: {e}")] });
    let within_budget = elapsed <= budget;
    Ok(CriterionResult {
        id,
        name: NAMES[id - 1],
        values_ok: outcome.ok,
        within_budget,
        passed: outcome.ok && within_budget,
        millis: elapsed.as_millis(),
        budget_millis: budget.as_millis(),
        detail: outcome.detail,
    })
}

pub fn run(ids: &[usize]) -> Result<Vec<CriterionResult>> {
    ids.iter().map(|&id| run_criterion(id)).collect()
}

fn koszul_suite() -> Vec<(&'static str, AlgebraSpec)> {
    vec![
        ("k x k", examples::semisimple(2)),
        ("A2 path", examples::a2_path()),
        ("k[x]/(x^2)", examples::dual_numbers()),
        ("A3 path", examples::a3_path()),
    ]
}

fn finite_gldim_suite() -> Vec<(&'static str, AlgebraSpec)> {
    koszul_suite().into_iter().filter(|(n, _)| *n != "k[x]/(x^2)").collect()
}

fn koszul_acyclicity() -> Result<Outcome> {
    let mut o = Outcome::new();
    for (name, spec) in koszul_suite() {
        let r = verify_kos_acyclic(&spec.build()?, 5)?;
        o.check(r.acyclic, format!("{name}: acyclic to degree {}", r.checked_from));
    }
    let r = verify_kos_acyclic(&examples::truncated_cubic().build()?, 5)?;
    o.check(!r.acyclic && r.first_failure.is_some(), format!("k<x>/(x^3): first failure in degree {:?}", r.first_failure));
    Ok(o)
}

fn dual_ext() -> Result<Outcome> {
    let mut o = Outcome::new();
    for (name, spec) in koszul_suite() {
        let r = verify_dual_ext(&spec.build()?, 5)?;
        let bad: Vec<_> = r.rows.iter().filter(|x| x.dual_dim != x.ext_dim).collect();
        o.check(r.agree, format!("{name}: {} (n, i, j) entries, {} mismatches", r.rows.len(), bad.len()));
    }
    Ok(o)
}

/// `(name, A, action)` for the three group actions, each with and without a twist.
fn bg_cases() -> Result<Vec<(String, GradedAlgebra, FiniteGroupAction)>> {
    let mut out = Vec::new();
    let dual = examples::dual_numbers().build()?;
    let x = dual.basis_index("x").expect("x");
    let scale = |c: i64| AlgebraMap::from_generators(&dual, &[0], &[vec![(x, Rational::from(c))]]);
    for (tname, twist) in [("id", AlgebraMap::identity(&dual)), ("x -> 2x", scale(2)?)] {
        let act = FiniteGroupAction::on_regular(&dual, named::cyclic(2), &[scale(-1)?], twist)?;
        out.push((format!("Z/2 on k[x]/(x^2), F = {tname}"), dual.clone(), act));
    }
    let k3 = examples::semisimple(3).build()?;
    let cyc = AlgebraMap::permutation(&k3, &[1, 2, 0])?;
    for (tname, twist) in [("id", AlgebraMap::identity(&k3)), ("3-cycle", cyc.clone())] {
        let act = FiniteGroupAction::on_regular(&k3, named::cyclic(3), &[cyc.clone()], twist)?;
        out.push((format!("Z/3 on k^3, F = {tname}"), k3.clone(), act));
    }
    let s3 = named::symmetric(3);
    let gens = s3
        .generators()
        .iter()
        .map(|&g| AlgebraMap::permutation(&k3, s3.permutation(g).expect("permutation group")))
        .collect::<Result<Vec<_>>>()?;
    let act = FiniteGroupAction::on_regular(&k3, s3, &gens, AlgebraMap::identity(&k3))?;
    out.push(("S3 on k^3, F = id".to_string(), k3, act));
    Ok(out)
}

fn bg_fibers() -> Result<Outcome> {
    let mut o = Outcome::new();
    for (name, a, act) in bg_cases()? {
        let m = GradedBimodule::regular(&a);
        let bg = pre_bg_complex(&a, &m, &act, 5)?;
        let mut ok = true;
        for g in 0..act.group.order() {
            let fib = fiber_at(&bg, g)?;
            let hh = hochschild_homology(&a, &m, &act.fiber_twist(g), 5)?;
            for d in -4..=0 {
                ok &= fib.betti(d)? == hh.dim(d);
            }
        }
        o.check(ok, format!("{name}: {} fibers, degrees -4..0", act.group.order()));
    }
    Ok(o)
}

fn bounded_models() -> Result<Outcome> {
    let mut o = Outcome::new();
    let mut cases = Vec::new();
    for (name, spec) in finite_gldim_suite() {
        let a = spec.build()?;
        let m = GradedBimodule::regular(&a);
        let act = FiniteGroupAction::trivial(&a, &m, named::trivial(), AlgebraMap::identity(&a))?;
        cases.push((format!("{name}, trivial group"), a, act));
    }
    let k2 = examples::semisimple(2).build()?;
    let swap = AlgebraMap::permutation(&k2, &[1, 0])?;
    cases.push(("k x k, Z/2 swapping".to_string(), k2.clone(), FiniteGroupAction::on_regular(&k2, named::cyclic(2), &[swap], AlgebraMap::identity(&k2))?));
    for (name, a, act) in cases {
        let m = GradedBimodule::regular(&a);
        let model = bounded_trace_model(&a, &m, &act, 6)?;
        let bg = pre_bg_complex(&a, &m, &act, 6)?;
        let mut ok = true;
        for d in -5..=0 {
            ok &= model.complex.betti(d)? == bg.complex.betti(d)?;
        }
        o.check(ok, format!("{name}: Kos length {}, degrees -5..0", model.length));
    }
    Ok(o)
}

/// The simple bimodule `e_i k e_j` in weight 0.
fn simple_bimodule(a: &GradedAlgebra, i: usize, j: usize) -> Result<GradedBimodule> {
    let labels = a.labels();
    BimoduleSpec::Explicit {
        weights: vec![0],
        blocks: vec![(labels[i].clone(), labels[j].clone())],
        left: BTreeMap::new(),
        right: BTreeMap::new(),
    }
    .build(a)
}

fn amplitudes() -> Result<Outcome> {
    // a weight-0 bimodule is a sum of the simple ones, and amplitude is additive
    let mut o = Outcome::new();
    for (name, spec) in finite_gldim_suite() {
        let a = spec.build()?;
        let li = a.num_idempotents();
        let mut ok = true;
        let mut widest = None::<(i64, i64)>;
        for i in 0..li {
            for j in 0..li {
                let m = simple_bimodule(&a, i, j)?;
                let act = FiniteGroupAction::trivial(&a, &m, named::trivial(), AlgebraMap::identity(&a))?;
                let model = bounded_trace_model(&a, &m, &act, 6)?;
                let r = amplitude_report(&model)?;
                ok &= r.within_bound && r.connective;
                if let Some((lo, hi)) = r.amplitude {
                    widest = Some(widest.map_or((lo, hi), |(l, h)| (l.min(lo), h.max(hi))));
                }
            }
        }
        o.check(ok, format!("{name}: {} simple bimodules, cohomology within {:?}", li * li, widest));
    }
    Ok(o)
}

/// Orbits of `G` on `{(x, g) : g x = x}` under `h . (x, g) = (h x, h g h^-1)`.
fn brute_force_inertia(perms: &[Vec<usize>]) -> usize {
    let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(k, p)| (p.as_slice(), k)).collect();
    let n = perms[0].len();
    let conj = |h: &[usize], g: &[usize]| {
        // (h g h^-1)(h x) = h (g x)
        let mut out = vec![0; n];
        for x in 0..n {
            out[h[x]] = h[g[x]];
        }
        index[out.as_slice()]
    };
    let mut seen = std::collections::HashSet::new();
    let mut orbits = 0;
    for (g, p) in perms.iter().enumerate() {
        for x in (0..n).filter(|&x| p[x] == x) {
            if seen.contains(&(x, g)) {
                continue;
            }
            orbits += 1;
            for h in perms {
                seen.insert((h[x], conj(h, p)));
            }
        }
    }
    orbits
}

/// Five permutation groups with `|G| <= 12` on at most 8 points.
pub fn random_inertia_examples(seed: u64) -> Result<Vec<FiniteGroup>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < 5 {
        let n = rng.random_range(1..=8usize);
        let gens = (0..rng.random_range(1..=2usize))
            .map(|_| {
                // shuffle at most four points so that small groups are common
                let mut support: Vec<usize> = (0..n).collect();
                support.shuffle(&mut rng);
                support.truncate(rng.random_range(1..=n.min(4)));
                let mut images = support.clone();
                images.shuffle(&mut rng);
                let mut p: Vec<usize> = (0..n).collect();
                for (x, y) in support.iter().zip(&images) {
                    p[*x] = *y;
                }
                p
            })
            .collect::<Vec<_>>();
        match FiniteGroup::from_permutations(n, &gens) {
            Ok(g) if g.order() > 1 && g.order() <= 12 => out.push(g),
            Ok(_) | Err(Error::CapExceeded(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn inertia() -> Result<Outcome> {
    let mut o = Outcome::new();
    for g in random_inertia_examples(INERTIA_SEED)? {
        let perms: Vec<Vec<usize>> = (0..g.order()).map(|k| g.permutation(k).expect("permutation group").to_vec()).collect();
        let n = perms[0].len();
        let count = brute_force_inertia(&perms);
        let r = verify_inertia(&g, n)?;
        o.check(r.h0 == count, format!("|G| = {}, |X| = {n}: H^0 = {}, orbit count {count}", g.order(), r.h0));
    }
    Ok(o)
}

fn finite_multipliers() -> Result<Outcome> {
    let mut o = Outcome::new();
    let z2 = AbelianGroupStructure::cyclic(2);
    let s4 = named::symmetric(4);
    let a4 = schur_multiplier(&named::alternating(4))?;
    o.check(a4 == z2, format!("M(A4) = {a4}"));
    let ms4 = schur_multiplier(&s4)?;
    o.check(ms4 == z2, format!("M(S4) = {ms4}"));
    let to_a4 = multiplier_restriction(&s4, &named::embed(&s4, &named::alternating(4))?)?;
    o.check(to_a4.is_isomorphism(), "M(S4) -> M(A4) is an isomorphism");
    let to_klein = multiplier_restriction(&s4, &named::embed(&s4, &named::klein_non_normal())?)?;
    o.check(to_klein.is_isomorphism(), "M(S4) -> M(<(12), (34)>) is an isomorphism");
    let klein = schur_multiplier(&named::klein_normal())?;
    o.check(klein == z2, format!("M(Klein) = {klein}"));
    let cyclic_ok = (1..=12).all(|n| schur_multiplier(&named::cyclic(n)).is_ok_and(|m| m.is_trivial()));
    o.check(cyclic_ok, "M(Z/n) = 0 for n <= 12");
    Ok(o)
}

fn lattice_cohomology() -> Result<Outcome> {
    let mut o = Outcome::new();
    for (name, gen, expected) in [("<(123)>", vec![1, 2, 0], 3), ("<(12)>", vec![1, 0, 2], 2)] {
        let g = FiniteGroup::from_permutations(3, &[gen])?;
        let h1 = cohomology(&g, &GModule::sl3_weight_lattice(&g)?, 1)?.structure;
        o.check(h1 == AbelianGroupStructure::cyclic(expected), format!("H^1({name}, Λ) = {h1}, expected Z/{expected}"));
    }
    Ok(o)
}

fn connected_multipliers() -> Result<Outcome> {
    let mut o = Outcome::new();
    let a2 = CartanType::simple(SimpleType::A(2));
    let pgl = schur_multiplier_connected(&RootDatum::adjoint(a2.clone()))?;
    o.check(pgl == AbelianGroupStructure::cyclic(3), format!("M(PGL3) = {pgl}"));
    let sl = schur_multiplier_connected(&RootDatum::simply_connected(a2))?;
    o.check(sl.is_trivial(), format!("M(SL3) = {sl}"));
    Ok(o)
}

fn splitting() -> Result<Outcome> {
    let mut o = Outcome::new();
    let a1 = CartanType::simple(SimpleType::A(1));
    let (b, g) = (ParabolicType::borel(), ParabolicType::whole(&a1));
    let i = splitting_criterion(&a1, &b, &g, &Scalar::Cyclotomic { conductor: 4, power: 1 })?;
    o.check(!i.splits && i.value.iter().all(Rational::is_zero), format!("A1 at ζ4: {} = 0, splits = {}", i.polynomial, i.splits));
    let one = splitting_criterion(&a1, &b, &g, &Scalar::Rational { value: Rational::ONE })?;
    let w = Rational::from(a1.weyl_order() as i64);
    o.check(one.splits && one.value == vec![w.clone()], format!("A1 at 1: value {:?}, |W| = {w}", one.value));
    for s in ["A1", "A2", "A3", "B2", "G2"] {
        let t: CartanType = s.parse()?;
        let (pairs, ok) = brion_peyre_all_pairs(&t)?;
        o.check(ok, format!("{s}: Brion-Peyre divisibility over {pairs} pairs"));
    }
    Ok(o)
}

fn gradings() -> Result<Outcome> {
    let mut o = Outcome::new();
    let mut count = 0;
    let mut ok = true;
    for n in 2..=6 {
        let t = CartanType::simple(SimpleType::A(n - 1));
        for lambda in partitions(n) {
            count += 1;
            ok &= orbit_dims(&t, &lambda.weighted_diagram())?.centralizer == type_a_rank_oracle(&lambda)?;
        }
    }
    o.check(ok, format!("{count} partitions of n <= 6: rank oracle = grading formula"));
    for (name, dim) in [("e6", 78), ("e8", 248)] {
        let (t, d) = WeightedDynkinDiagram::builtin(name)?;
        let p = grading_profile(&t, &d)?;
        let symmetric = p.dims.iter().all(|(w, n)| p.get(-w) == *n);
        o.check(symmetric && p.total() == dim, format!("{name} diagram {d}: total {}, symmetric {symmetric}", p.total()));
    }
    Ok(o)
}

fn bookkeeping() -> Result<Outcome> {
    let mut o = Outcome::new();
    let (z2, z3, s3) = (named::cyclic(2), named::cyclic(3), named::symmetric(3));
    for (name, a, b) in [("Z/2 x Z/2", &z2, &z2), ("Z/2 x Z/3", &z2, &z3), ("S3 x Z/2", &s3, &z2)] {
        let r = product_formula_check(a, b)?;
        o.check(r.holds, format!("product {name}: |M| = {}, expected {}", r.m_product.order().unwrap_or(Integer::ZERO), r.expected_order));
    }
    let semidirect = [
        ("Z/3 x| Z/2", vec![3], z2.clone(), vec![vec![vec![2]]]),
        ("(Z/2)^2 x| Z/3", vec![2, 2], z3.clone(), vec![vec![vec![0, 1], vec![1, 1]]]),
        ("Z/2 x Z/2", vec![2], z2.clone(), vec![vec![vec![1]]]),
    ];
    for (name, orders, gamma, action) in semidirect {
        let r = semidirect_sequence_check(&orders, &gamma, &action)?;
        o.check(r.holds, format!("semidirect {name}: |ker| = {}, |H^1| = {}, image {}", r.kernel_order, r.h1, r.image_order));
    }
    let q8 = named::quaternion();
    let c4 = named::cyclic(4);
    let d8 = named::dihedral(4);
    let two = c4.closure(&[c4.mul(c4.generators()[0], c4.generators()[0])]);
    for (name, g, z) in [("Q8 / centre", &q8, q8.center()), ("Z/4 / Z/2", &c4, two), ("D8 / centre", &d8, d8.center())] {
        let r = central_sequence_check(g, &z)?;
        o.check(r.holds, format!("central {name}: |ker| = {}, |[G,G] ∩ Z| = {}", r.kernel_order, r.commutator_meet_order));
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        assert_eq!(parse_selector("all").unwrap().len(), CRITERIA);
        assert_eq!(parse_selector("3, 1,3").unwrap(), vec![3, 1]);
        assert!(parse_selector("13").is_err());
        assert!(parse_selector("x").is_err());
    }

    #[test]
    fn brute_force_inertia_of_s3() {
        let g = named::symmetric(3);
        let perms: Vec<Vec<usize>> = (0..6).map(|k| g.permutation(k).unwrap().to_vec()).collect();
        assert_eq!(brute_force_inertia(&perms), 2);
    }

    #[test]
    fn random_examples_are_reproducible() {
        let a = random_inertia_examples(7).unwrap();
        let b = random_inertia_examples(7).unwrap();
        assert_eq!(a.iter().map(|g| g.order()).collect::<Vec<_>>(), b.iter().map(|g| g.order()).collect::<Vec<_>>());
        assert!(a.iter().all(|g| g.order() <= 12 && g.degree().unwrap() <= 8));
    }
}
