//! Property tests over random algebras, labels and vectors.

mod oracle;

use liereps::branching::{decompose_irrep, u1_traces};
use liereps::cli_io::{latex_name, parse_irrep_spec_with, parse_latex_name, render_irrep, Format};
use liereps::irrep_props::*;
use liereps::rational::Q;
use liereps::tensor::{decompose_product, decompose_product_generic, decompose_product_young, sum_rule_totals};
use liereps::weights::{dominant_weight_system, weight_system, Irrep};
use liereps::weyl::{orbit, orbit_size, weyl_group_order};
use liereps::{convert_basis, defining_data, parse_algebra, AlgebraId, Basis, Vector};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use std::collections::{HashMap, HashSet};

const SMALL: [fn() -> AlgebraId; 10] = [
    || AlgebraId::a(1),
    || AlgebraId::a(2),
    || AlgebraId::a(3),
    || AlgebraId::a(4),
    || AlgebraId::b(3),
    || AlgebraId::c(2),
    || AlgebraId::c(3),
    || AlgebraId::d(4),
    || AlgebraId::g2(),
    || AlgebraId::f4(),
];

fn all_algebras() -> Vec<AlgebraId> {
    let mut v = Vec::new();
    for n in 1..=8 {
        v.push(AlgebraId::a(n));
    }
    for n in 2..=8 {
        v.push(AlgebraId::b(n));
        v.push(AlgebraId::c(n));
    }
    for n in 4..=8 {
        v.push(AlgebraId::d(n));
    }
    v.extend([AlgebraId::e(6), AlgebraId::e(7), AlgebraId::e(8), AlgebraId::f4(), AlgebraId::g2()]);
    v
}

/// A small algebra with a label of digits below `max`.
fn irrep_strategy(max: i32) -> impl Strategy<Value = (AlgebraId, Vec<i32>)> {
    (0..SMALL.len()).prop_flat_map(move |i| {
        let a = SMALL[i]();
        (Just(a), proptest::collection::vec(0..max, a.rank()))
    })
}

fn irrep_up_to(a: AlgebraId, l: &[i32], max_dim: u64) -> Option<Irrep> {
    let r = Irrep::new(a, l).unwrap();
    (dim(&r).unwrap() <= BigUint::from(max_dim)).then_some(r)
}

fn i64s(l: &[i32]) -> Vec<i64> {
    l.iter().map(|&x| x as i64).collect()
}

#[test]
fn cartan_matrix_from_simple_roots() {
    for a in all_algebras() {
        let dd = defining_data(a).unwrap();
        let r = &dd.simple_roots_orth;
        let dot = |x: &[Q], y: &[Q]| x.iter().zip(y).fold(Q::zero(), |s, (p, q)| s + p * q);
        for i in 0..a.rank() {
            for j in 0..a.rank() {
                let aij = Q::from_integer(2.into()) * dot(&r[i], &r[j]) / dot(&r[j], &r[j]);
                assert_eq!(aij, Q::from_integer(dd.cartan[i][j].into()), "{a} ({i},{j})");
            }
        }
    }
}

/// Orbit by breadth-first search with `s_i(λ) = λ - λ_i α_i` in the ω-basis.
fn bfs_orbit(cartan: &[Vec<i64>], start: &[i64]) -> HashSet<Vec<i64>> {
    let mut seen = HashSet::from([start.to_vec()]);
    let mut queue = vec![start.to_vec()];
    while let Some(v) = queue.pop() {
        for (i, row) in cartan.iter().enumerate() {
            if v[i] == 0 {
                continue;
            }
            let w: Vec<i64> = v.iter().zip(row).map(|(x, a)| x - v[i] * a).collect();
            if seen.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    seen
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn basis_round_trips(i in 0usize..31, seed in proptest::collection::vec(-5i32..6, 8)) {
        let a = all_algebras()[i];
        let v = Vector::weight(a, &seed[..a.rank()]).unwrap();
        for b in [Basis::Alpha, Basis::Orthogonal] {
            let there = convert_basis(&v, b).unwrap();
            prop_assert_eq!(convert_basis(&there, Basis::Omega).unwrap().coords, v.coords.clone());
        }
    }

    #[test]
    fn orbit_matches_breadth_first_search((a, l) in irrep_strategy(3), shift in proptest::collection::vec(-2i32..3, 8)) {
        prop_assume!(a.rank() <= 4);
        let v: Vec<i32> = l.iter().zip(&shift).map(|(x, s)| x + s).collect();
        let o = orbit(&Vector::weight(a, &v).unwrap()).unwrap();
        let dd = defining_data(a).unwrap();
        let bfs = bfs_orbit(&dd.cartan, &i64s(&v));
        prop_assert_eq!(o.size, bfs.len());
        prop_assert_eq!(o.elements.len(), o.size);
        let mine: HashSet<Vec<i64>> = o.elements.iter().map(|e| i64s(&e.to_label().unwrap())).collect();
        prop_assert_eq!(&mine, &bfs);
        prop_assert_eq!(weyl_group_order(a) % o.size as u128, 0);
        prop_assert_eq!(orbit_size(&Vector::weight(a, &v).unwrap()).unwrap(), bfs.len() as u128);
        prop_assert_eq!(mine.iter().filter(|e| e.iter().all(|&x| x >= 0)).count(), 1);
    }

    #[test]
    fn weight_system_size_is_weyl_dimension((a, l) in irrep_strategy(4)) {
        let Some(r) = irrep_up_to(a, &l, 5000) else { return Ok(()) };
        let total: usize = weight_system(&r).unwrap().len();
        prop_assert_eq!(BigUint::from(total), dim(&r).unwrap());
    }

    #[test]
    fn multiplicities_match_plain_freudenthal((a, l) in irrep_strategy(3)) {
        let Some(r) = irrep_up_to(a, &l, 2000) else { return Ok(()) };
        let orc = oracle::Algebra::new(a).weights(&i64s(&l));
        let mine = dominant_weight_system(&r).unwrap();
        prop_assert_eq!(mine.entries.len(), orc.keys().filter(|k| k.iter().all(|&x| x >= 0)).count());
        for (v, m) in mine.entries {
            prop_assert_eq!(m.to_u64().unwrap(), orc[&i64s(&v.to_label().unwrap())]);
        }
    }

    #[test]
    fn index_matches_weight_sum((a, l) in irrep_strategy(3)) {
        let Some(r) = irrep_up_to(a, &l, 2000) else { return Ok(()) };
        prop_assert_eq!(index(&r).unwrap(), oracle::Algebra::new(a).index(&i64s(&l)));
    }

    #[test]
    fn products_obey_sum_rules_and_congruency((a, l1) in irrep_strategy(3), l2 in proptest::collection::vec(0i32..3, 8)) {
        let Some(x) = irrep_up_to(a, &l1, 300) else { return Ok(()) };
        let Some(y) = irrep_up_to(a, &l2[..a.rank()], 300) else { return Ok(()) };
        let s = decompose_product(&[x.clone(), y.clone()]).unwrap();
        let (d, ix) = sum_rule_totals(&s).unwrap();
        let (dx, dy) = (dim(&x).unwrap(), dim(&y).unwrap());
        prop_assert_eq!(d, &dx * &dy);
        let want = index(&x).unwrap() * Q::from_integer(dy.into()) + index(&y).unwrap() * Q::from_integer(dx.into());
        prop_assert_eq!(ix, want);
        let c = congruency_class(&x).add(&congruency_class(&y));
        for (t, _) in &s.terms {
            prop_assert_eq!(congruency_class(t), c.clone());
        }
    }

    #[test]
    fn products_match_character_multiplication((a, l1) in irrep_strategy(3), l2 in proptest::collection::vec(0i32..3, 8)) {
        let Some(x) = irrep_up_to(a, &l1, 200) else { return Ok(()) };
        let Some(y) = irrep_up_to(a, &l2[..a.rank()], 200) else { return Ok(()) };
        let s = decompose_product(&[x, y]).unwrap();
        let mine: HashMap<Vec<i64>, u64> = s.terms.iter().map(|(t, m)| (i64s(&t.label), *m)).collect();
        prop_assert_eq!(mine, oracle::Algebra::new(a).product(&i64s(&l1), &i64s(&l2[..a.rank()])));
    }

    #[test]
    fn young_matches_generic(n in 1usize..6, l1 in proptest::collection::vec(0i32..3, 5), l2 in proptest::collection::vec(0i32..3, 5)) {
        let a = AlgebraId::a(n);
        let Some(x) = irrep_up_to(a, &l1[..n], 400) else { return Ok(()) };
        let Some(y) = irrep_up_to(a, &l2[..n], 400) else { return Ok(()) };
        prop_assert_eq!(decompose_product_young(&x, &y).unwrap(), decompose_product_generic(&[x, y]).unwrap());
    }

    #[test]
    fn branching_conserves_dimension_and_traces(k in 0usize..8, l in proptest::collection::vec(0i32..3, 6)) {
        let cases = [
            (AlgebraId::a(4), "SU3*SU2*U1"),
            (AlgebraId::a(5), "SU3*SU3*U1"),
            (AlgebraId::b(3), "G2"),
            (AlgebraId::c(3), "SU3*U1"),
            (AlgebraId::d(4), "SO7"),
            (AlgebraId::d(5), "SU5*U1"),
            (AlgebraId::d(5), "SU4*SU2*SU2"),
            (AlgebraId::e(6), "SU3*SU3*SU3"),
        ];
        let (a, t) = cases[k];
        let Some(r) = irrep_up_to(a, &l[..a.rank()], 3000) else { return Ok(()) };
        let t = parse_algebra(t).unwrap();
        prop_assert_eq!(decompose_irrep(&r, &t).unwrap().dim().unwrap(), dim(&r).unwrap());
        for tr in u1_traces(&r, &t).unwrap() {
            prop_assert!(tr.is_zero());
        }
    }

    #[test]
    fn names_parse_back((a, l) in irrep_strategy(5)) {
        let Some(r) = irrep_up_to(a, &l, 3000) else { return Ok(()) };
        let cap = l.iter().copied().max().unwrap();
        for f in [Format::Plain, Format::Dynkin] {
            let text = render_irrep(&r, f).unwrap();
            prop_assert_eq!(parse_irrep_spec_with(a, &text, cap).unwrap(), r.clone(), "{}", text);
        }
        let n = dim_name(&r).unwrap();
        prop_assert_eq!(parse_latex_name(&latex_name(&n)).unwrap(), n.clone());
        prop_assert_eq!(irrep_by_name(a, &n, cap).unwrap(), r);
    }
}
