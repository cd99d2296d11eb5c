use std::collections::BTreeMap;
use std::sync::Arc;

use ordalg::algebra::{ContinuousAlgebra, Signature};
use ordalg::colimit::{coinserter, is_coinserter, tensor_via_coinserter, ParallelPair};
use ordalg::enumerate::monotone_maps;
use ordalg::poset::{
    decode_tuple, encode_tuple, factorize, ideal_completion, order_pairs, product, FinitePoset, MonotoneMap,
};
use ordalg::report::Report;
use ordalg::term::{encode_inequation, interpret, satisfies, ExtendedTerm};
use proptest::prelude::*;

/// A poset on `0..n` from a random strict upper-triangular relation, closed
/// transitively.
fn poset(max: usize) -> impl Strategy<Value = Arc<FinitePoset>> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let mut le = vec![vec![false; n]; n];
            for i in 0..n {
                le[i][i] = true;
                for j in i + 1..n {
                    le[i][j] = bits[i * n + j];
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if le[i][k] && le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
            let names = (0..n).map(|i| format!("e{i}")).collect();
            Arc::new(FinitePoset::from_relation(names, |i, j| le[i][j]).unwrap())
        })
    })
}

/// A monotone map between random posets, picked from the full enumeration.
fn map(max: usize) -> impl Strategy<Value = MonotoneMap> {
    (poset(max), poset(max), any::<prop::sample::Index>()).prop_map(|(p, q, i)| {
        let maps = monotone_maps(&p, &q);
        maps[i.index(maps.len())].clone()
    })
}

fn pair(max: usize) -> impl Strategy<Value = ParallelPair> {
    (
        poset(max),
        poset(max),
        any::<prop::sample::Index>(),
        any::<prop::sample::Index>(),
    )
        .prop_map(|(a, b, i, j)| {
            let maps = monotone_maps(&a, &b);
            let f0 = maps[i.index(maps.len())].clone();
            let f1 = maps[j.index(maps.len())].clone();
            ParallelPair::new(f0, f1).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_order_is_componentwise(p in poset(4), q in poset(4)) {
        let (pq, p0, p1) = product(&p, &q);
        prop_assert_eq!(pq.len(), p.len() * q.len());
        for x in 0..pq.len() {
            for y in 0..pq.len() {
                let componentwise = p.le(p0.apply(x), p0.apply(y)) && q.le(p1.apply(x), p1.apply(y));
                prop_assert_eq!(pq.le(x, y), componentwise);
            }
        }
    }

    #[test]
    fn tuples_round_trip(base in 1usize..6, coords in proptest::collection::vec(0usize..6, 0..4)) {
        let coords: Vec<usize> = coords.into_iter().map(|c| c % base).collect();
        let code = encode_tuple(&coords, base);
        prop_assert_eq!(decode_tuple(code, base, coords.len()), coords);
    }

    #[test]
    fn factorization_splits_every_map(f in map(4)) {
        let (e, m) = factorize(&f);
        prop_assert!(e.is_surjective());
        prop_assert!(m.is_embedding());
        prop_assert_eq!(e.then(&m).unwrap(), f);
    }

    #[test]
    fn coinserter_inserts_and_is_universal(p in pair(4)) {
        let r = coinserter(&p);
        prop_assert!(r.c.is_surjective());
        for a in 0..p.dom().len() {
            prop_assert!(r.apex.le(r.c.apply(p.f0().apply(a)), r.c.apply(p.f1().apply(a))));
        }
        prop_assert!(is_coinserter(&p, &r.c).unwrap());
    }

    #[test]
    fn order_pairs_present_the_poset(p in poset(5)) {
        let op = order_pairs(&p);
        let r = coinserter(&ParallelPair::new(op.proj0, op.proj1).unwrap());
        prop_assert!(r.apex.is_isomorphic(&p));
    }

    #[test]
    fn finite_ideals_are_principal(p in poset(5)) {
        let (ideals, unit) = ideal_completion(&p).unwrap();
        prop_assert!(unit.is_isomorphism());
        prop_assert_eq!(ideals.len(), p.len());
    }

    #[test]
    fn tensor_is_product(p in poset(3), x in poset(3)) {
        let t = tensor_via_coinserter(&p, &x);
        let (prod, _, _) = product(&p, &x);
        prop_assert!(t.apex.is_isomorphic(&prod));
    }

    #[test]
    fn report_counts_are_consistent(outcomes in proptest::collection::vec(any::<bool>(), 0..60)) {
        let report = Report::from_outcomes("prop", outcomes.iter().map(|&ok| (!ok).then_some(serde_json::json!(null))));
        prop_assert_eq!(report.instances, outcomes.len());
        prop_assert!(report.passed <= report.instances);
        prop_assert_eq!(report.counterexamples.is_empty(), report.passed == report.instances);
        prop_assert!(report.counterexamples.len() <= ordalg::report::MAX_COUNTEREXAMPLES);
    }

    #[test]
    fn inequation_encoding_is_the_order(p in poset(4), pick in any::<prop::sample::Index>()) {
        // A unary operation picked among the monotone self-maps.
        let maps = monotone_maps(&p, &p);
        let s = maps[pick.index(maps.len())].clone();
        let sig = Signature::new(&[("s", 1)]).unwrap();
        let a = ContinuousAlgebra::from_fn(sig, p.clone(), |_, args| s.apply(args[0])).unwrap();
        let x = ExtendedTerm::var("x");
        let sx = ExtendedTerm::comp("s", vec![x.clone()]);
        let inflationary = (0..p.len()).all(|v| p.le(v, s.apply(v)));
        prop_assert_eq!(satisfies(&a, &encode_inequation(x.clone(), sx.clone())).unwrap(), inflationary);
        // The encoding's join, when defined, is the larger side.
        for v in 0..p.len() {
            let env = BTreeMap::from([("x".to_owned(), v)]);
            let joined = interpret(&a, &encode_inequation(x.clone(), sx.clone()).rhs, &env).unwrap();
            prop_assert_eq!(joined, p.le(v, s.apply(v)).then(|| s.apply(v)));
        }
    }
}
