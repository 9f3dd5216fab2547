mod common;

use cubicq_core::field::{
    cubic_galois_group, is_cube, roots_in_field, same_splitting_field, CubicPoly, FieldElement,
    GaloisClass,
};
use cubicq_core::lattice::{canonical, ContractionState, DivisorClass, LineLabel};
use cubicq_core::minimality::{
    invariant_rank, max_reachable_degree, standard_centralizer, GaloisScenario,
};
use cubicq_core::quotient::{
    chain_is_negative_definite, hurwitz_k2, parse_scenarios, post_contraction_degree,
    supported_types, table1_delta, QuotientScenario, ScenarioFile, SingularityEntry,
};
use cubicq_core::surface::{
    fixed_points_cubic, infer_galois_image, tangent_cubic, verify_eckardt_identity, GaloisProfile,
};
use cubicq_core::weyl::{named_element, weyl_group, Subgroup};
use cubicq_core::SurfaceSpec;
use num_rational::Rational64;
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn fe(a: i64, ad: i64, b: i64, bd: i64) -> FieldElement {
    FieldElement::new(common::q(a, ad), common::q(b, bd))
}

fn element() -> impl Strategy<Value = FieldElement> {
    (-20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6).prop_map(|(a, ad, b, bd)| fe(a, ad, b, bd))
}

fn nonzero() -> impl Strategy<Value = FieldElement> {
    element().prop_filter("nonzero", |x| !x.is_zero())
}

fn weyl_index() -> impl Strategy<Value = usize> {
    0..weyl_group().order()
}

fn cyclic(i: usize) -> Subgroup {
    Subgroup::generate(&[weyl_group().elements()[i]]).unwrap()
}

fn perms(g: &Subgroup) -> Vec<common::Perm> {
    g.elements().iter().map(|x| x.perm().0).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_is_a_commutative_ring(x in element(), y in element(), z in element()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        prop_assert_eq!(x.pow(3), &(&x * &x) * &x);
    }

    #[test]
    fn nonzero_elements_are_invertible(x in nonzero(), y in element()) {
        prop_assert_eq!(&x * &x.inv().unwrap(), FieldElement::one());
        prop_assert_eq!(&y.div(&x).unwrap() * &x, y);
        prop_assert!(FieldElement::zero().inv().is_err());
    }

    #[test]
    fn norm_and_conjugation_are_multiplicative(x in element(), y in element()) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!(&x * &x.conj(), FieldElement::from(x.norm()));
    }

    #[test]
    fn squares_have_square_roots(x in element()) {
        let square = &x * &x;
        let root = square.sqrt().expect("a square");
        prop_assert_eq!(&root * &root, square);
    }

    #[test]
    fn text_and_json_round_trip(x in element()) {
        prop_assert_eq!(x.to_string().parse::<FieldElement>().unwrap(), x.clone());
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<FieldElement>(&json).unwrap(), x);
    }

    #[test]
    fn cubes_have_cube_roots(x in nonzero()) {
        let cube = x.pow(3);
        let root = is_cube(&cube).unwrap().expect("a cube");
        prop_assert_eq!(root.pow(3), cube);
    }

    #[test]
    fn roots_are_recovered_from_products(c in nonzero(), r in prop::array::uniform3(element())) {
        let p = CubicPoly::from_roots(&c, [&r[0], &r[1], &r[2]]).unwrap();
        let mut expected = r.to_vec();
        expected.sort_by_key(|x| (x.a().clone(), x.b().clone()));
        prop_assert_eq!(roots_in_field(&p).unwrap(), expected);
        for x in &r {
            prop_assert!(p.eval(x).is_zero());
        }
        let distinct = r[0] != r[1] && r[0] != r[2] && r[1] != r[2];
        prop_assert_eq!(!p.discriminant().is_zero(), distinct);
        if distinct {
            prop_assert_eq!(cubic_galois_group(&p).unwrap(), GaloisClass::Trivial);
        }
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<CubicPoly>(&json).unwrap(), p);
    }

    #[test]
    fn same_splitting_field_for_pure_cubics(a in nonzero(), k in nonzero(), b in nonzero()) {
        prop_assume!(is_cube(&a).unwrap().is_none() && is_cube(&b).unwrap().is_none());
        let pure = |x: &FieldElement| CubicPoly::new(FieldElement::one(), FieldElement::zero(), FieldElement::zero(), -x).unwrap();
        let (p, q) = (pure(&a), pure(&b));
        prop_assert_eq!(cubic_galois_group(&p).unwrap(), GaloisClass::C3);
        prop_assert!(same_splitting_field(&p, &p).unwrap());
        prop_assert!(same_splitting_field(&p, &pure(&(&a * &k.pow(3)))).unwrap());
        prop_assert!(same_splitting_field(&p, &pure(&(&a * &a))).unwrap());
        prop_assert_eq!(same_splitting_field(&p, &q).unwrap(), same_splitting_field(&q, &p).unwrap());
        let kummer = is_cube(&a.div(&b).unwrap()).unwrap().is_some() || is_cube(&(&a * &b)).unwrap().is_some();
        prop_assert_eq!(same_splitting_field(&p, &q).unwrap(), kummer);
    }

    #[test]
    fn contraction_tracks_degree_and_canonical_class(seed in any::<u64>(), limit in 0usize..=6, split in 0usize..=6) {
        let mut order: Vec<usize> = (0..common::LINES).collect();
        order.shuffle(&mut common::rng(seed));
        let m = common::pairing_matrix();
        let mut picked: Vec<usize> = Vec::new();
        for i in order {
            if picked.len() < limit && picked.iter().all(|&j| m[i][j] == 0) {
                picked.push(i);
            }
        }
        let labels: Vec<DivisorClass> = picked.iter().map(|&i| LineLabel::from_index(i).class()).collect();
        let cut = split.min(labels.len());
        let state = ContractionState::initial()
            .contract(&labels[..cut])
            .and_then(|s| s.contract(&labels[cut..]))
            .unwrap();
        prop_assert_eq!(state.degree(), 3 + picked.len() as i64);
        let sum: DivisorClass = labels.iter().copied().sum();
        prop_assert_eq!(state.canonical_class(), canonical() - sum);
        prop_assert_eq!(state.canonical_class().self_intersection(), state.degree());
        let oracle: Vec<usize> = (0..common::LINES)
            .filter(|i| !picked.contains(i) && picked.iter().all(|&j| m[*i][j] == 0))
            .collect();
        let survivors: Vec<usize> = state.survivor_labels().iter().map(|l| l.index()).collect();
        prop_assert_eq!(survivors, oracle);
    }

    #[test]
    fn isometries_preserve_the_form(i in weyl_index(), a in prop::array::uniform7(-5i64..=5), b in prop::array::uniform7(-5i64..=5)) {
        let g = &weyl_group().elements()[i];
        let (a, b) = (DivisorClass::new(a), DivisorClass::new(b));
        prop_assert_eq!(g.apply(&a).pairing(&g.apply(&b)), a.pairing(&b));
        prop_assert_eq!(g.apply(&(a + b)), g.apply(&a) + g.apply(&b));
        prop_assert_eq!(g.apply(&canonical()), canonical());
        prop_assert!(g.compose(&g.inverse()).is_identity());
        prop_assert!(g.pow(g.order() as u32).is_identity());
    }

    #[test]
    fn invariants_are_conjugation_invariant(i in weyl_index(), w in weyl_index()) {
        let g = cyclic(i);
        let conj = g.conjugate_by(&weyl_group().elements()[w]);
        let rank = invariant_rank(&g);
        prop_assert_eq!(rank, common::invariant_rank_by_trace(&perms(&g)));
        prop_assert_eq!(invariant_rank(&conj), rank);
        prop_assert_eq!(max_reachable_degree(&conj).degree, max_reachable_degree(&g).degree);
    }

    #[test]
    fn larger_groups_have_smaller_invariants(i in 0usize..108, j in 0usize..108) {
        let elems = standard_centralizer().elements();
        let small = Subgroup::generate(&[elems[i]]).unwrap();
        let large = Subgroup::generate(&[elems[i], elems[j]]).unwrap();
        prop_assert!(small.is_subgroup_of(&large));
        prop_assert!(invariant_rank(&large) <= invariant_rank(&small));
        prop_assert!(max_reachable_degree(&large).degree <= max_reachable_degree(&small).degree);
        prop_assert_eq!(max_reachable_degree(&large).degree, common::max_degree_by_bitmask(&perms(&large)));
    }

    #[test]
    fn tangent_cubic_is_fixed_cubic_without_linear_terms(w in nonzero(), lambda in nonzero(), alpha in nonzero()) {
        let s = SurfaceSpec::normal(w, lambda, FieldElement::zero(), FieldElement::zero(), alpha).unwrap();
        prop_assert_eq!(tangent_cubic(&s).unwrap(), fixed_points_cubic(&s));
    }

    #[test]
    fn eckardt_identity_holds(w in nonzero(), lambda in nonzero(), u in element(), v in element(), alpha in nonzero()) {
        let s = SurfaceSpec::normal(w, lambda, u, v, alpha).unwrap();
        prop_assert!(verify_eckardt_identity(&s));
        prop_assert_eq!(SurfaceSpec::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn inferred_images_commute_with_the_group(g in prop::array::uniform3(0usize..4), g4 in 0usize..3) {
        let classes = [GaloisClass::Trivial, GaloisClass::C2, GaloisClass::C3, GaloisClass::S3];
        let profile = GaloisProfile {
            g1: classes[g[0]],
            g2: classes[g[1]],
            g3: classes[g[2]],
            g4_has_order3: [Some(true), Some(false), None][g4],
            same_splitting_field_g1_g2: None,
        };
        if let Some(image) = infer_galois_image(&profile).unwrap() {
            let ab = named_element("a").unwrap().compose(&named_element("b").unwrap());
            prop_assert!(image.subgroup.elements().iter().all(|x| x.commutes_with(&ab)));
            prop_assert!(GaloisScenario::standard(image.subgroup).is_ok());
        }
    }

    #[test]
    fn hurwitz_formula_scales(n in 2i64..200, c in 1i64..8, num in -50i64..50, den in 1i64..20, k in 0i64..10) {
        let base = Rational64::new(num, den);
        let k2 = hurwitz_k2(n, c, base);
        prop_assert_eq!(k2 * Rational64::from_integer(n), base * Rational64::from_integer(c * c));
        prop_assert_eq!(post_contraction_degree(k2, k) - k2, Rational64::from_integer(k));
    }

    #[test]
    fn chains_of_curves_below_minus_one_are_definite(chain in prop::collection::vec(-6i64..=-2, 1..6)) {
        prop_assert!(chain_is_negative_definite(&chain));
        let mut with_minus_one = chain.clone();
        with_minus_one.push(-1);
        with_minus_one.push(-1);
        prop_assert!(!chain_is_negative_definite(&with_minus_one));
    }

    #[test]
    fn scenarios_round_trip(
        n in 2i64..100,
        c in 1i64..6,
        num in -30i64..30,
        den in 1i64..10,
        mults in prop::collection::vec((0usize..4, 1u32..4), 0..4),
        contracted in prop::option::of(0i64..10),
    ) {
        let types = supported_types();
        let s = QuotientScenario {
            name: format!("s{n}"),
            description: String::new(),
            group_order: n,
            pullback_factor: c,
            base_k2: Rational64::new(num, den),
            singularities: mults.iter().map(|&(t, m)| SingularityEntry { kind: types[t], multiplicity: m }).collect(),
            tracked_curves: Vec::new(),
            contracted_count: contracted,
            expected: None,
        };
        let text = serde_json::to_string(&ScenarioFile { scenarios: vec![s.clone()] }).unwrap();
        prop_assert_eq!(parse_scenarios(&text).unwrap(), vec![s]);
    }
}

#[test]
fn resolution_table_chains_are_definite() {
    for t in supported_types() {
        let d = table1_delta(t).unwrap();
        assert!(chain_is_negative_definite(&d.chain), "{t}");
        assert_eq!(
            d.chain,
            common::hirzebruch_jung(t.m() as i64, t.q() as i64).3
        );
    }
}
