use std::collections::BTreeSet;

use eqtrace::algebra::{quiver::examples, AlgebraMap, GradedBimodule, MorphismSpec};
use eqtrace::cli::cache;
use eqtrace::exact::{kernel_basis, smith_normal_form, AbelianGroupStructure, ChainComplex, ExactMatrix, Integer, Rational, Ring};
use eqtrace::exact::poly::Poly;
use eqtrace::groups::{cohomology, FiniteGroup, GModule};
use eqtrace::hochschild::{hochschild_homology, hochschild_homology_bar};
use eqtrace::orbits::{self, Partition, WeightedDynkinDiagram};
use eqtrace::rootdata::{
    self, classify, components, fundamental_group, minuscule_lift, minuscule_weights, schur_multiplier_connected, CartanType,
    ParabolicType, RootDatum, SimpleType,
};
use proptest::prelude::*;
use proptest::sample::subsequence;
use serde_json::{json, Value};

fn int_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn dense(m: &ExactMatrix) -> Vec<Vec<Rational>> {
    m.to_dense()
}

fn small_type() -> impl Strategy<Value = CartanType> {
    prop::sample::select(vec!["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "A1xA2", "A1xB2"])
        .prop_map(|s| s.parse::<CartanType>().unwrap())
}

fn any_type() -> impl Strategy<Value = CartanType> {
    prop::sample::select(vec!["A1", "A3", "A5", "B3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2", "A2xG2"])
        .prop_map(|s| s.parse::<CartanType>().unwrap())
}

fn diagram_for(t: CartanType) -> impl Strategy<Value = (CartanType, WeightedDynkinDiagram)> {
    let r = t.rank();
    prop::collection::vec(0u8..=2, r).prop_map(move |w| (t.clone(), WeightedDynkinDiagram::new(w).unwrap()))
}

/// `|W_L|` for the Levi on `nodes`, through the components of the subdiagram.
fn levi_weyl_order(t: &CartanType, nodes: &[usize]) -> u128 {
    let c = t.cartan();
    components(&c, nodes).iter().map(|comp| classify(&c, comp).unwrap().weyl_order()).product()
}

fn eval_at_one(p: &Poly) -> Rational {
    p.eval(&Rational::ONE)
}

fn in_span(rows: &[Vec<i64>], v: &[i64]) -> bool {
    let order = |rows: &[Vec<i64>]| {
        let m = ExactMatrix::from_dense(Ring::Integers, rows).unwrap();
        let q = AbelianGroupStructure::cokernel_of_rows(&m).unwrap();
        (q.free_rank, q.order())
    };
    let mut with = rows.to_vec();
    with.push(v.to_vec());
    order(rows) == order(&with)
}

/// Simple roots as rows in the fundamental weight basis.
fn root_rows(t: &SimpleType) -> Vec<Vec<i64>> {
    let c = t.cartan();
    (0..c.len()).map(|j| c.iter().map(|row| row[j]).collect()).collect()
}

fn permutation_group(degree: usize) -> impl Strategy<Value = FiniteGroup> {
    let perm = Just((0..degree).collect::<Vec<usize>>()).prop_shuffle();
    prop::collection::vec(perm, 1..=2).prop_map(move |gens| FiniteGroup::from_permutations(degree, &gens).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn smith_form_reproduces_diagonal(rows in int_matrix(4, 4)) {
        let m = ExactMatrix::from_dense(Ring::Integers, &rows).unwrap();
        let s = smith_normal_form(&m).unwrap();
        let d = dense(&s.left_transform.mul(&m).unwrap().mul(&s.right_transform).unwrap());
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expected = if i == j && i < s.invariant_factors.len() {
                    Rational::from(s.invariant_factors[i].clone())
                } else {
                    Rational::ZERO
                };
                prop_assert_eq!(x, &expected);
            }
        }
        for w in s.invariant_factors.windows(2) {
            prop_assert!(w[1].div_mod_floor(&w[0]).1.is_zero());
        }
        prop_assert!(s.invariant_factors.iter().all(|d| d.signum() > 0));
        for t in [&s.left_transform, &s.right_transform] {
            let det = t.determinant().unwrap();
            prop_assert!(det == Rational::ONE || det == -Rational::ONE);
        }
    }

    #[test]
    fn integer_kernel_is_saturated(rows in int_matrix(3, 5)) {
        let m = ExactMatrix::from_dense(Ring::Integers, &rows).unwrap();
        let k = kernel_basis(&m).unwrap();
        let rank = eqtrace::exact::rank(&m).unwrap();
        prop_assert_eq!(k.cols(), m.cols() - rank);
        prop_assert!(dense(&m.mul(&k).unwrap()).iter().flatten().all(|x| *x == Rational::ZERO));
        if k.cols() > 0 {
            let s = smith_normal_form(&k).unwrap();
            prop_assert_eq!(s.invariant_factors.len(), k.cols());
            prop_assert!(s.invariant_factors.iter().all(Integer::is_one));
        }
    }

    #[test]
    fn euler_characteristic(u in int_matrix(4, 3), p in int_matrix(3, 3), q in int_matrix(3, 4)) {
        // d1 = U P and d2 = Q K with K U = 0, so d2 d1 = 0
        let (b, r) = (u.len(), u[0].len());
        let p: Vec<Vec<i64>> = (0..r).map(|i| p[i % p.len()].clone()).collect();
        let um = ExactMatrix::from_dense(Ring::Integers, &u).unwrap();
        let kt = kernel_basis(&um.transpose()).unwrap();
        let k = kt.transpose();
        prop_assume!(k.rows() > 0);
        let q: Vec<Vec<i64>> = q.iter().map(|row| (0..k.rows()).map(|j| row[j % row.len()]).collect()).collect();
        let to_q = |m: &ExactMatrix| {
            let d = m.to_dense();
            ExactMatrix::from_triplets(Ring::Rationals, m.rows(), m.cols(), d.into_iter().enumerate().flat_map(|(i, row)| row.into_iter().enumerate().map(move |(j, x)| (i, j, x)))).unwrap()
        };
        let d1 = to_q(&um.mul(&ExactMatrix::from_dense(Ring::Integers, &p).unwrap()).unwrap());
        let d2 = to_q(&ExactMatrix::from_dense(Ring::Integers, &q).unwrap().mul(&k).unwrap());
        let dims = vec![d1.cols(), b, d2.rows()];
        let c = ChainComplex::new(Ring::Rationals, -1, dims.clone(), vec![d1, d2]).unwrap();
        let chi_terms = dims[0] as i64 - dims[1] as i64 + dims[2] as i64;
        let betti = c.betti_numbers().unwrap();
        let chi_h: i64 = betti.iter().map(|(d, v)| if d % 2 == 0 { *v as i64 } else { -(*v as i64) }).sum();
        prop_assert_eq!(-chi_terms, chi_h);
    }

    #[test]
    fn grading_is_symmetric_and_exhaustive((t, d) in any_type().prop_flat_map(diagram_for)) {
        let p = orbits::grading_profile(&t, &d).unwrap();
        prop_assert_eq!(p.total(), orbits::lie_algebra_dim(&t));
        for (&w, &n) in &p.dims {
            prop_assert_eq!(p.get(-w), n);
        }
        prop_assert!(p.get(0) >= t.rank());
    }

    #[test]
    fn orbit_dim_increases_with_dominance(n in 2usize..=6, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let parts = orbits::partitions(n);
        let (a, b) = (&parts[i.index(parts.len())], &parts[j.index(parts.len())]);
        prop_assume!(a != b && a.dominates(b));
        let t: CartanType = format!("A{}", n - 1).parse().unwrap();
        let da = orbits::orbit_dims(&t, &a.weighted_diagram()).unwrap();
        let db = orbits::orbit_dims(&t, &b.weighted_diagram()).unwrap();
        prop_assert!(da.orbit > db.orbit, "{:?} {:?}", a, b);
    }

    #[test]
    fn flag_variety_at_one_is_weyl_index((t, p, q) in small_type().prop_flat_map(|t| {
        let nodes: Vec<usize> = (0..t.rank()).collect();
        let r = t.rank();
        (Just(t), subsequence(nodes.clone(), 0..=r), subsequence(nodes, 0..=r))
    })) {
        let q: Vec<usize> = q.into_iter().chain(p.iter().copied()).collect::<BTreeSet<_>>().into_iter().collect();
        let (pp, qq) = (ParabolicType::new(p.clone()), ParabolicType::new(q.clone()));
        let f = rootdata::poincare_flag(&t, &pp, &qq).unwrap();
        let index = levi_weyl_order(&t, &q) / levi_weyl_order(&t, &p);
        prop_assert_eq!(eval_at_one(&f), Rational::from(index as i64));
        // G/B -> G/Q with fibre Q/B
        let b = ParabolicType::borel();
        let g = ParabolicType::whole(&t);
        let lhs = rootdata::poincare_flag(&t, &b, &g).unwrap();
        let rhs = &rootdata::poincare_flag(&t, &b, &qq).unwrap() * &rootdata::poincare_flag(&t, &qq, &g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn minuscule_lift_stays_in_class(
        t in prop::sample::select(vec![SimpleType::A(3), SimpleType::B(3), SimpleType::C(3), SimpleType::D(4), SimpleType::E(6), SimpleType::E(7)]),
        seed in prop::collection::vec(-5i64..=5, 7),
    ) {
        let d = RootDatum::simply_connected(CartanType::simple(t));
        let lambda = &seed[..t.rank()];
        let lift = minuscule_lift(&d, lambda).unwrap();
        prop_assert!(minuscule_weights(t).contains(&lift));
        let diff: Vec<i64> = lift.iter().zip(lambda).map(|(a, b)| a - b).collect();
        prop_assert!(in_span(&root_rows(&t), &diff));
    }

    #[test]
    fn h_n_is_killed_by_group_order(g in (2usize..=4).prop_flat_map(permutation_group), n in 1usize..=2) {
        prop_assume!(g.order() > 1 && g.order() <= 12);
        let m = GModule::trivial(&g, 1, Vec::new()).unwrap();
        let h = cohomology(&g, &m, n).unwrap();
        prop_assert_eq!(h.structure.free_rank, 0);
        let order = Integer::from(g.order() as i64);
        prop_assert!(h.structure.exponent().gcd(&order) == h.structure.exponent());
        // Z[G] is coinduced from the trivial subgroup
        let reg = GModule::regular(&g).unwrap();
        prop_assert!(cohomology(&g, &reg, n).unwrap().structure.is_trivial());
    }

    #[test]
    fn cache_key_ignores_key_order(entries in prop::collection::btree_map("[a-z]{1,4}", -100i64..100, 1..6), depth in 0usize..6) {
        let forward: serde_json::Map<String, Value> = entries.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        let text_rev = format!("{{{}}}", entries.iter().rev().map(|(k, v)| format!("{k:?}: {v}")).collect::<Vec<_>>().join(", "));
        let reversed: Value = serde_json::from_str(&text_rev).unwrap();
        let params = json!({ "depth": depth });
        prop_assert_eq!(cache::key("x", &params, &[Value::Object(forward)]), cache::key("x", &params, &[reversed]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn twisted_hh0_of_semisimple_counts_fixed_points(perm in Just((0..4usize).collect::<Vec<_>>()).prop_shuffle()) {
        // HH_0(k^n, (k^n)^σ) = k^n / span{e_i m - m e_σ(i)}: one dimension per fixed point
        let a = examples::semisimple(4).build().unwrap();
        let spec = MorphismSpec {
            vertices: perm.iter().enumerate().map(|(i, &j)| ((i + 1).to_string(), (j + 1).to_string())).collect(),
            arrows: Default::default(),
        };
        let f: AlgebraMap = spec.build(&a).unwrap();
        let m = GradedBimodule::regular(&a);
        let fixed = perm.iter().enumerate().filter(|(i, j)| i == *j).count();
        let r = hochschild_homology(&a, &m, &f, 2).unwrap();
        let b = hochschild_homology_bar(&a, &m, &f, 2).unwrap();
        prop_assert_eq!(r.dim(0), fixed);
        prop_assert_eq!(b.dim(0), fixed);
        prop_assert_eq!(r.dim(-1), 0);
        prop_assert_eq!(b.dim(-1), 0);
    }
}

#[test]
fn simply_connected_and_adjoint_data() {
    for s in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "D5", "E6", "E7", "E8", "F4", "G2", "A1xA2"] {
        let t: CartanType = s.parse().unwrap();
        assert!(fundamental_group(&RootDatum::simply_connected(t.clone())).unwrap().is_trivial(), "{s}");
        let index: u64 = t.factors.iter().map(|f| f.connection_index()).product();
        let m = schur_multiplier_connected(&RootDatum::adjoint(t)).unwrap();
        assert_eq!(m.order(), Some(Integer::from(index as i64)), "{s}");
    }
}

#[test]
fn minuscule_weights_separate_classes() {
    for t in [SimpleType::A(1), SimpleType::A(4), SimpleType::B(3), SimpleType::C(2), SimpleType::D(4), SimpleType::D(5), SimpleType::E(6), SimpleType::E(7), SimpleType::E(8), SimpleType::F4, SimpleType::G2] {
        let ws = minuscule_weights(t);
        assert_eq!(ws.len() as u64, t.connection_index(), "{t:?}");
        for (i, a) in ws.iter().enumerate() {
            for b in &ws[i + 1..] {
                let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                assert!(!in_span(&root_rows(&t), &diff), "{t:?}: {a:?} ~ {b:?}");
            }
        }
    }
}

#[test]
fn type_a_rank_oracle_matches_gradings() {
    for n in 2..=6 {
        let t: CartanType = format!("A{}", n - 1).parse().unwrap();
        for lambda in orbits::partitions(n) {
            let d = orbits::orbit_dims(&t, &lambda.weighted_diagram()).unwrap();
            assert_eq!(d.centralizer, orbits::type_a_rank_oracle(&lambda).unwrap(), "{lambda:?}");
            assert_eq!(Partition::new(lambda.0.clone()).unwrap(), lambda);
        }
    }
}

#[test]
fn regular_slice_is_kostant() {
    for s in ["A3", "B2", "C3", "D4", "E6", "E8", "F4", "G2"] {
        let t: CartanType = s.parse().unwrap();
        let d = orbits::orbit_dims(&t, &WeightedDynkinDiagram::regular(t.rank())).unwrap();
        assert_eq!(d.slice, t.rank(), "{s}");
    }
}
