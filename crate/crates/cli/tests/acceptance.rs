//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the verdicts are always printed; exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use ordalg::algebra::{
    check_dense_triangle, generated_subalgebra, image_algebra, product_algebra, similar, similarity_classes,
    truncated_free, ContinuousAlgebra, OpTable, Signature,
};
use ordalg::colimit::{
    check_power_preservation, check_product_commutation, coequalizer, coinserter, is_coinserter, tensor_via_coinserter,
    ParallelPair,
};
use ordalg::enumerate::{functions, monotone_maps, parallel_pairs, posets_up_to, reflexive_pairs};
use ordalg::fixtures;
use ordalg::monad::{self, free_algebra, symbol, verify_freeness, SFMonadPresentation};
use ordalg::poset::{self, encode_tuple, order_pairs, FinitePoset, MonotoneMap};
use ordalg::term::{
    encode_inequation, in_variety, interpret, is_definable, satisfies, Equation, ExtendedTerm, OmegaFamily,
    VarietyPresentation,
};
use ordalg::verify::dass_presentations;
use ordalg::Exec;
use petgraph::algo::{has_path_connecting, tarjan_scc};
use petgraph::graph::{DiGraph, NodeIndex};

type Verdict = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/// Coinserter by graph reachability: classes are strongly connected
/// components of the generating graph, ordered by reachability.
fn oracle_coinserter(pair: &ParallelPair, result: &ordalg::colimit::CoinserterResult) -> Result<(), String> {
    let b = pair.cod();
    let mut g = DiGraph::<usize, ()>::new();
    let nodes: Vec<NodeIndex> = (0..b.len()).map(|i| g.add_node(i)).collect();
    for (x, y) in b.order_relation() {
        g.add_edge(nodes[x], nodes[y], ());
    }
    for a in 0..pair.dom().len() {
        g.add_edge(nodes[pair.f0().apply(a)], nodes[pair.f1().apply(a)], ());
    }
    let mut scc_of = vec![0; b.len()];
    let sccs = tarjan_scc(&g);
    for (k, comp) in sccs.iter().enumerate() {
        for n in comp {
            scc_of[g[*n]] = k;
        }
    }
    let c = &result.c;
    check(c.is_surjective(), || "quotient is not surjective".into())?;
    check(result.apex.len() == sccs.len(), || {
        format!("{} classes, oracle {}", result.apex.len(), sccs.len())
    })?;
    for x in 0..b.len() {
        let mut members: Vec<&str> = (0..b.len())
            .filter(|&y| scc_of[y] == scc_of[x])
            .map(|y| b.name(y))
            .collect();
        members.sort_unstable();
        check(result.apex.name(c.apply(x)) == members.join(","), || {
            format!("class of `{}` is named `{}`", b.name(x), result.apex.name(c.apply(x)))
        })?;
        for y in 0..b.len() {
            check((c.apply(x) == c.apply(y)) == (scc_of[x] == scc_of[y]), || {
                "classes differ from SCCs".into()
            })?;
            let reach = has_path_connecting(&g, nodes[x], nodes[y], None);
            check(result.apex.le(c.apply(x), c.apply(y)) == reach, || {
                format!(
                    "order between `{}` and `{}` differs from reachability",
                    b.name(x),
                    b.name(y)
                )
            })?;
        }
    }
    Ok(())
}

fn free_vars(t: &ExtendedTerm) -> BTreeSet<String> {
    match t {
        ExtendedTerm::Var(x) => BTreeSet::from([x.clone()]),
        ExtendedTerm::Comp(_, args) => args.iter().flat_map(free_vars).collect(),
        ExtendedTerm::Join(f) => match f.as_ref() {
            OmegaFamily::EventuallyConstant { prefix, tail } => {
                prefix.iter().chain(std::iter::once(tail)).flat_map(free_vars).collect()
            }
            OmegaFamily::IteratedContext { base, context, hole } => {
                let mut vs = free_vars(context);
                vs.remove(hole);
                vs.extend(free_vars(base));
                vs
            }
        },
    }
}

/// Interpretation by running every iterated family for `2·|A| + 2` steps.
fn oracle_interpret(a: &ContinuousAlgebra, t: &ExtendedTerm, env: &BTreeMap<String, usize>) -> Option<usize> {
    let p = a.carrier();
    match t {
        ExtendedTerm::Var(x) => Some(env[x]),
        ExtendedTerm::Comp(s, args) => {
            let vals = args
                .iter()
                .map(|u| oracle_interpret(a, u, env))
                .collect::<Option<Vec<_>>>()?;
            Some(a.table(s).expect("symbol in signature").apply(&vals))
        }
        ExtendedTerm::Join(f) => match f.as_ref() {
            OmegaFamily::EventuallyConstant { prefix, tail } => {
                let vals = prefix
                    .iter()
                    .chain(std::iter::once(tail))
                    .map(|u| oracle_interpret(a, u, env))
                    .collect::<Option<Vec<_>>>()?;
                vals.windows(2).all(|w| p.le(w[0], w[1])).then(|| *vals.last().unwrap())
            }
            OmegaFamily::IteratedContext { base, context, hole } => {
                let mut v = oracle_interpret(a, base, env)?;
                for _ in 0..2 * a.len() + 2 {
                    let mut inner = env.clone();
                    inner.insert(hole.clone(), v);
                    let next = oracle_interpret(a, context, &inner)?;
                    if !p.le(v, next) {
                        return None;
                    }
                    v = next;
                }
                Some(v)
            }
        },
    }
}

fn envs(vars: &BTreeSet<String>, n: usize) -> Vec<BTreeMap<String, usize>> {
    let vars: Vec<&String> = vars.iter().collect();
    functions(vars.len(), n)
        .map(|vals| vars.iter().map(|v| (*v).clone()).zip(vals).collect())
        .collect()
}

/// Homomorphism by direct table comparison.
fn oracle_is_hom(h: &MonotoneMap, a: &ContinuousAlgebra, b: &ContinuousAlgebra) -> bool {
    a.tables().iter().all(|(s, t)| {
        functions(t.arity(), a.len()).all(|args| {
            let image: Vec<usize> = args.iter().map(|&x| h.apply(x)).collect();
            h.apply(t.apply(&args)) == b.table(s).unwrap().apply(&image)
        })
    })
}

fn homs(a: &ContinuousAlgebra, b: &ContinuousAlgebra) -> Vec<MonotoneMap> {
    monotone_maps(a.carrier(), b.carrier())
        .into_iter()
        .filter(|h| oracle_is_hom(h, a, b))
        .collect()
}

fn library(max: usize) -> Vec<Vec<&'static ContinuousAlgebra>> {
    fixtures::signatures()
        .into_iter()
        .map(|(_, sig)| {
            fixtures::algebra_library()
                .iter()
                .map(|(_, a)| a)
                .filter(|a| *a.signature() == sig && a.len() <= max)
                .collect()
        })
        .collect()
}

fn sig_name(a: &ContinuousAlgebra) -> &'static str {
    fixtures::signatures()
        .into_iter()
        .find(|(_, s)| s == a.signature())
        .unwrap()
        .0
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

fn c1_coinserter() -> Verdict {
    let pairs = parallel_pairs(3);
    for pair in &pairs {
        let r = coinserter(pair);
        check(is_coinserter(pair, &r.c).unwrap(), || {
            "computed coinserter rejected".into()
        })?;
        oracle_coinserter(pair, &r)?;
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn c2_canonical() -> Verdict {
    let ps = posets_up_to(5);
    for p in &ps {
        let op = order_pairs(p);
        let r = coinserter(&ParallelPair::new(op.proj0, op.proj1).unwrap());
        check(r.apex.is_isomorphic(p), || format!("{:?} not recovered", p.elements()))?;
    }
    Ok(format!("{} posets", ps.len()))
}

fn c3_rci() -> Verdict {
    let small = reflexive_pairs(2);
    let lib = fixtures::reflexive_pair_library();
    check(lib.len() >= 50, || format!("library has {} pairs", lib.len()))?;
    check(
        lib.iter()
            .all(|p| p.dom().len() <= 4 && p.cod().len() <= 4 && p.splitting().is_some()),
        || "library pair over a poset larger than 4".into(),
    )?;
    let mut n = 0;
    for p in &small {
        for q in &small {
            check(check_product_commutation(p, q).unwrap(), || "small pair fails".into())?;
            n += 1;
        }
    }
    for (i, p) in lib.iter().enumerate() {
        for q in lib.iter().skip(i) {
            check(check_product_commutation(p, q).unwrap(), || "library pair fails".into())?;
            n += 1;
        }
    }
    Ok(format!(
        "{n} pairs of pairs ({} small, {} library)",
        small.len(),
        lib.len()
    ))
}

fn c4_powers() -> Verdict {
    let lib = fixtures::reflexive_pair_library();
    for p in lib {
        for n in 0..=3 {
            check(check_power_preservation(n, p).unwrap(), || format!("fails at n = {n}"))?;
        }
    }
    Ok(format!("{} pairs x 4 exponents", lib.len()))
}

fn c5_tensor() -> Verdict {
    let ps = posets_up_to(3);
    for p in &ps {
        for x in &ps {
            let t = tensor_via_coinserter(p, x);
            let (prod, _, _) = poset::product(p, x);
            check(t.apex.is_isomorphic(&prod), || {
                format!("{:?} ⊗ {:?}", p.elements(), x.elements())
            })?;
        }
    }
    Ok(format!("{} pairs of posets", ps.len() * ps.len()))
}

fn c6_coequalizer() -> Verdict {
    let pairs = parallel_pairs(3);
    let targets = posets_up_to(3);
    let mut cocones = 0;
    for pair in &pairs {
        let (f, g) = (pair.f0(), pair.f1());
        let r = coequalizer(f, g).unwrap();
        let c = &r.c;
        check(
            (0..f.dom().len()).all(|a| c.apply(f.apply(a)) == c.apply(g.apply(a))),
            || "c ∘ f ≠ c ∘ g".into(),
        )?;
        for q_poset in &targets {
            for q in monotone_maps(f.cod(), q_poset) {
                if (0..f.dom().len()).any(|a| q.apply(f.apply(a)) != q.apply(g.apply(a))) {
                    continue;
                }
                cocones += 1;
                let factors = monotone_maps(&r.apex, q_poset)
                    .into_iter()
                    .filter(|u| (0..f.cod().len()).all(|b| u.apply(c.apply(b)) == q.apply(b)))
                    .count();
                check(factors == 1, || format!("{factors} factorizations"))?;
            }
        }
    }
    Ok(format!("{} pairs, {cocones} cocones", pairs.len()))
}

fn brute_force_terms(vars: &[&str], depth: usize) -> HashSet<String> {
    let mut terms: HashSet<String> = vars.iter().map(|v| v.to_string()).collect();
    for _ in 0..depth {
        let prev: Vec<String> = terms.iter().cloned().collect();
        for s in &prev {
            for t in &prev {
                terms.insert(format!("b({s},{t})"));
            }
        }
    }
    terms
}

fn c7_free() -> Verdict {
    let sig = Signature::new(&[("b", 2)]).unwrap();
    let gens = [
        Arc::new(FinitePoset::discrete(&["a", "b"]).unwrap()),
        Arc::new(FinitePoset::chain(2)),
        Arc::new(FinitePoset::chain(3)),
    ];
    check(brute_force_terms(&["x", "y"], 1).len() == 6, || {
        "oracle miscounts".into()
    })?;
    let mut checked = 0;
    for p in &gens {
        let names: Vec<&str> = p.elements().iter().map(String::as_str).collect();
        for depth in 0..=2 {
            let free = truncated_free(&sig, p, depth).unwrap();
            let expected = brute_force_terms(&names, depth);
            let got: HashSet<String> = free.terms().iter().map(|t| t.to_string()).collect();
            check(got == expected, || {
                format!("depth {depth}: {} terms, oracle {}", got.len(), expected.len())
            })?;
            let classes = similarity_classes(&sig, depth);
            let class_of: Vec<usize> = free
                .terms()
                .iter()
                .map(|t| {
                    let hits: Vec<usize> = (0..classes.len())
                        .filter(|&c| similar(t, &classes[c].representative))
                        .collect();
                    assert_eq!(hits.len(), 1, "{t} lies in {} classes", hits.len());
                    hits[0]
                })
                .collect();
            let carrier = free.carrier();
            for (k, class) in classes.iter().enumerate() {
                let members: Vec<usize> = (0..carrier.len()).filter(|&i| class_of[i] == k).collect();
                check(members.len() == p.len().pow(class.slots as u32), || {
                    "class size is not |P|^r".into()
                })?;
                // Leaves read left to right give the coordinates in P^r.
                let coords: Vec<Vec<usize>> = members
                    .iter()
                    .map(|&i| {
                        free.terms()[i]
                            .occurrences()
                            .iter()
                            .map(|x| p.index_of(x).unwrap())
                            .collect()
                    })
                    .collect();
                let codes: HashSet<usize> = coords.iter().map(|c| encode_tuple(c, p.len())).collect();
                check(codes.len() == members.len(), || "leaf map is not injective".into())?;
                for (i, &x) in members.iter().enumerate() {
                    for (j, &y) in members.iter().enumerate() {
                        let pointwise = coords[i].iter().zip(&coords[j]).all(|(&u, &v)| p.le(u, v));
                        check(carrier.le(x, y) == pointwise, || {
                            "class order is not the power order".into()
                        })?;
                    }
                }
            }
            for x in 0..carrier.len() {
                for y in 0..carrier.len() {
                    check(class_of[x] == class_of[y] || !carrier.le(x, y), || {
                        "order crosses classes".into()
                    })?;
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} truncations"))
}

fn c8_interpret() -> Verdict {
    let mut triples = 0;
    for (_, a) in fixtures::algebra_library() {
        for t in fixtures::terms_for(sig_name(a)) {
            for env in envs(&free_vars(&t), a.len()) {
                let got = interpret(a, &t, &env).unwrap();
                let want = oracle_interpret(a, &t, &env);
                check(got == want, || format!("{t}: {got:?}, oracle {want:?}"))?;
                triples += 1;
            }
        }
    }
    // ⋁ σᵏ(x) = ⊤: every orbit climbs to ⊤ in top-succ-3; in top-low-3 the
    // orbit of 2 stays at 2 while ⊤ is 1.
    let orbit = fixtures::s_orbit_join();
    let top = ExtendedTerm::constant("top");
    let orbit_eq = Equation::new(orbit.clone(), top);
    let succ = fixtures::algebra("top-succ-3").unwrap();
    for x in 0..3 {
        check(
            interpret(&succ, &orbit, &BTreeMap::from([("x".to_owned(), x)])).unwrap() == Some(2),
            || "orbit join in top-succ-3".into(),
        )?;
    }
    check(satisfies(&succ, &orbit_eq).unwrap(), || {
        "top-succ-3 satisfies ⋁σᵏ(x) = ⊤".into()
    })?;
    check(
        !satisfies(&fixtures::algebra("top-low-3").unwrap(), &orbit_eq).unwrap(),
        || "top-low-3".into(),
    )?;
    // ⋁ xᵏ = e: holds in the trivial monoid; in the max monoid xᵏ = x; in
    // the xor monoid the powers of 1 alternate, so the join is undefined.
    let powers = fixtures::power_join();
    let at = |name: &str, x: usize| {
        interpret(
            &fixtures::algebra(name).unwrap(),
            &powers,
            &BTreeMap::from([("x".to_owned(), x)]),
        )
        .unwrap()
    };
    check(at("monoid-trivial-1", 0) == Some(0), || "trivial monoid".into())?;
    check(at("monoid-max-3", 2) == Some(2), || "max monoid".into())?;
    check(at("monoid-xor-2", 1).is_none(), || "xor monoid".into())?;
    let monoid_join = fixtures::presentation("monoid-join").unwrap();
    check(
        in_variety(&fixtures::algebra("monoid-trivial-1").unwrap(), &monoid_join).unwrap(),
        || "trivial".into(),
    )?;
    check(
        !in_variety(&fixtures::algebra("monoid-max-3").unwrap(), &monoid_join).unwrap(),
        || "max".into(),
    )?;
    Ok(format!("{triples} triples"))
}

fn c9_encodings() -> Verdict {
    let mut instances = 0;
    for (_, a) in fixtures::algebra_library() {
        let terms = fixtures::terms_for(sig_name(a));
        for t in &terms {
            let defined_everywhere = envs(&free_vars(t), a.len())
                .iter()
                .all(|env| oracle_interpret(a, t, env).is_some());
            check(is_definable(a, t).unwrap() == defined_everywhere, || {
                format!("definability of {t}")
            })?;
            check(
                satisfies(a, &Equation::new(t.clone(), t.clone())).unwrap() == defined_everywhere,
                || format!("{t} = {t}"),
            )?;
            for u in &terms {
                let mut vars = free_vars(t);
                vars.extend(free_vars(u));
                let direct = envs(&vars, a.len()).iter().all(|env| {
                    match (oracle_interpret(a, t, env), oracle_interpret(a, u, env)) {
                        (Some(x), Some(y)) => a.carrier().le(x, y),
                        _ => false,
                    }
                });
                let encoded = satisfies(a, &encode_inequation(t.clone(), u.clone())).unwrap();
                check(encoded == direct, || {
                    format!("{t} ⊑ {u}: encoded {encoded}, direct {direct}")
                })?;
                instances += 1;
            }
        }
    }
    Ok(format!("{instances} inequations"))
}

/// Every algebra a surjection out of `a` can carry, by transporting the
/// operations when they are well defined.
fn images(a: &ContinuousAlgebra) -> Vec<ContinuousAlgebra> {
    let mut out = Vec::new();
    for q in posets_up_to(a.len()) {
        'maps: for h in monotone_maps(a.carrier(), &q) {
            if !h.is_surjective() {
                continue;
            }
            let mut ops = BTreeMap::new();
            for (s, t) in a.tables() {
                let mut values: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
                for args in functions(t.arity(), a.len()) {
                    let key: Vec<usize> = args.iter().map(|&x| h.apply(x)).collect();
                    let v = h.apply(t.apply(&args));
                    if *values.entry(key).or_insert(v) != v {
                        continue 'maps;
                    }
                }
                let table: Vec<usize> = functions(t.arity(), q.len()).map(|k| values[&k]).collect();
                ops.insert(s.clone(), OpTable::new(t.arity(), q.len(), table).unwrap());
            }
            if let Ok(b) = ContinuousAlgebra::new(a.signature().clone(), q.clone(), ops) {
                let img = image_algebra(&h, a, &b).unwrap();
                assert!(img.surjection.is_surjective());
                out.push(img.algebra);
            }
        }
    }
    out
}

fn c10_hsp() -> Verdict {
    let mut instances = 0;
    for (name, sig_name, v) in fixtures::presentations() {
        let sig = fixtures::signatures()
            .into_iter()
            .find(|(n, _)| *n == sig_name)
            .unwrap()
            .1;
        let pool: Vec<ContinuousAlgebra> = fixtures::all_algebras(&sig, 3)
            .into_iter()
            .filter(|a| in_variety(a, &v).unwrap())
            .collect();
        check(!pool.is_empty(), || format!("{name} has no algebras"))?;
        let fail = |what: &str| format!("{name}: {what} leaves the variety");
        for a in &pool {
            for b in &pool {
                check(in_variety(&product_algebra(a, b).unwrap().0, &v).unwrap(), || {
                    fail("product")
                })?;
                instances += 1;
            }
            for mask in 0u32..(1 << a.len()) {
                let gens: Vec<usize> = (0..a.len()).filter(|&i| mask & (1 << i) != 0).collect();
                check(in_variety(&generated_subalgebra(a, &gens).0, &v).unwrap(), || {
                    fail("subalgebra")
                })?;
                instances += 1;
            }
            for img in images(a) {
                check(in_variety(&img, &v).unwrap(), || fail("image"))?;
                instances += 1;
            }
        }
    }
    Ok(format!("{instances} closure instances"))
}

fn c11_inter_triangle() -> Verdict {
    let mut inter = 0;
    let mut triangles = 0;
    for algebras in library(3) {
        for a in &algebras {
            let terms = fixtures::terms_for(sig_name(a));
            for b in &algebras {
                for h in homs(a, b) {
                    for t in &terms {
                        for env in envs(&free_vars(t), a.len()) {
                            let Some(value) = oracle_interpret(a, t, &env) else {
                                continue;
                            };
                            let pushed: BTreeMap<String, usize> =
                                env.iter().map(|(x, &v)| (x.clone(), h.apply(v))).collect();
                            let ok = ordalg::term::check_hom_definability(&h, a, b, t, &env).unwrap();
                            check(ok && oracle_interpret(b, t, &pushed) == Some(h.apply(value)), || {
                                format!("{t} not preserved")
                            })?;
                            inter += 1;
                        }
                    }
                }
            }
            for b1 in &algebras {
                let h1s: Vec<MonotoneMap> = homs(a, b1).into_iter().filter(|h| h.is_surjective()).collect();
                if h1s.is_empty() {
                    continue;
                }
                for b2 in &algebras {
                    for h2 in homs(a, b2) {
                        for h1 in &h1s {
                            for p in monotone_maps(b1.carrier(), b2.carrier()) {
                                if (0..a.len()).any(|x| p.apply(h1.apply(x)) != h2.apply(x)) {
                                    continue;
                                }
                                check(oracle_is_hom(&p, b1, b2), || {
                                    "triangle map is not a homomorphism".into()
                                })?;
                                check(check_dense_triangle(a, b1, b2, h1, &h2, &p).unwrap(), || {
                                    "check_dense_triangle rejects".into()
                                })?;
                                triangles += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    check(inter > 0 && triangles > 0, || "no instances".into())?;
    Ok(format!("{inter} definability, {triangles} triangle instances"))
}

fn c12_factorization() -> Verdict {
    let ps = posets_up_to(3);
    let maps: Vec<MonotoneMap> = ps
        .iter()
        .flat_map(|p| ps.iter().flat_map(move |q| monotone_maps(p, q)))
        .collect();
    for f in &maps {
        let (e, m) = poset::factorize(f);
        let embeds = (0..m.dom().len())
            .all(|x| (0..m.dom().len()).all(|y| m.dom().le(x, y) == m.cod().le(m.apply(x), m.apply(y))));
        check(e.is_surjective() && embeds, || "factors have the wrong kind".into())?;
        check((0..f.dom().len()).all(|x| m.apply(e.apply(x)) == f.apply(x)), || {
            "m ∘ e ≠ f".into()
        })?;
    }
    let surjections: Vec<&MonotoneMap> = maps.iter().filter(|f| f.is_surjective()).collect();
    let embeddings: Vec<&MonotoneMap> = maps.iter().filter(|f| f.is_embedding()).collect();
    let mut squares = 0;
    for e in &surjections {
        for m in &embeddings {
            let candidates = monotone_maps(e.cod(), m.dom());
            for u in monotone_maps(e.dom(), m.dom()) {
                for u_prime in monotone_maps(e.cod(), m.cod()) {
                    if (0..e.dom().len()).any(|a| m.apply(u.apply(a)) != u_prime.apply(e.apply(a))) {
                        continue;
                    }
                    squares += 1;
                    let diagonals: Vec<&MonotoneMap> = candidates
                        .iter()
                        .filter(|d| {
                            (0..e.dom().len()).all(|a| d.apply(e.apply(a)) == u.apply(a))
                                && (0..e.cod().len()).all(|b| m.apply(d.apply(b)) == u_prime.apply(b))
                        })
                        .collect();
                    check(diagonals.len() == 1, || format!("{} diagonals", diagonals.len()))?;
                    let d = poset::diagonal_fill(&u, e, m, &u_prime).unwrap();
                    check(d.assignment() == diagonals[0].assignment(), || {
                        "diagonal_fill differs".into()
                    })?;
                }
            }
        }
    }
    Ok(format!("{} maps, {squares} squares", maps.len()))
}

/// Solver output against brute-force filtering, on carriers small enough
/// to enumerate.
fn cross_check_variety(m: &SFMonadPresentation, carrier: &Arc<FinitePoset>) -> Result<bool, String> {
    let v = monad::associated_presentation(m);
    let Some(all) = ordalg::enumerate::algebras_on(&v.sig, carrier, 200_000) else {
        return Ok(false);
    };
    let brute: BTreeSet<Vec<Vec<usize>>> = all
        .iter()
        .filter(|a| in_variety(a, &v).unwrap())
        .map(|a| a.tables().values().map(|t| t.values().to_vec()).collect())
        .collect();
    let solved: BTreeSet<Vec<Vec<usize>>> = monad::variety_algebras_on(m, carrier)
        .iter()
        .map(|d| {
            let a = monad::em_to_sigma_algebra(m, d).unwrap();
            a.tables().values().map(|t| t.values().to_vec()).collect()
        })
        .collect();
    check(brute == solved, || {
        format!(
            "{}: solver finds {}, brute force {}",
            m.name(),
            solved.len(),
            brute.len()
        )
    })?;
    Ok(true)
}

fn c13_freeness() -> Verdict {
    let mut instances = 0;
    let mut cross = 0;
    for m in fixtures::monads() {
        check(m.max_arity() == 2, || format!("{} has N = {}", m.name(), m.max_arity()))?;
        for p in posets_up_to(2) {
            if cross_check_variety(&m, &p)? {
                cross += 1;
            }
        }
        let algebras = monad::variety_algebras(&m, 3).unwrap();
        check(!algebras.is_empty(), || format!("{} has no algebras", m.name()))?;
        for n in 0..=2 {
            let report = verify_freeness(&m, n, &algebras, Exec::Parallel).unwrap();
            check(report.all_passed() && report.instances > 0, || {
                format!("{}: {report:?}", m.name())
            })?;
            instances += report.instances;
            // Uniqueness again, by counting homomorphisms out of T_n.
            let free = free_algebra(&m, n).unwrap();
            let eta = &m.stage(n).unwrap().eta;
            for a in &algebras {
                let hs = homs(&free, a);
                for f in functions(n, a.len()) {
                    let extending: Vec<&MonotoneMap> =
                        hs.iter().filter(|h| (0..n).all(|i| h.apply(eta[i]) == f[i])).collect();
                    check(extending.len() == 1, || {
                        format!("{}: {} extensions", m.name(), extending.len())
                    })?;
                    // The formula f̄(σ) = σ_A(f(x₀), …, f(xₙ₋₁)).
                    let tn = free.carrier();
                    check(
                        (0..tn.len()).all(|s| extending[0].apply(s) == a.apply(&symbol(n, tn.name(s)), &f).unwrap()),
                        || "extension differs from the formula".into(),
                    )?;
                }
            }
        }
    }
    Ok(format!(
        "{instances} (algebra, f) instances; solver cross-checked on {cross} carriers"
    ))
}

fn c14_dass() -> Verdict {
    let mut instances = 0;
    for m in fixtures::monads() {
        for n in 0..=m.max_arity() {
            let tn = m.stages()[n].poset.clone();
            if tn.len() > 3 {
                continue;
            }
            let (pairwise, chains): (VarietyPresentation, VarietyPresentation) = dass_presentations(&m, n);
            let sig = pairwise.sig.clone();
            for p in posets_up_to(3) {
                let mut algebras =
                    ordalg::enumerate::algebras_on(&sig, &p, ordalg::verify::DASS_LITERAL_CAP).unwrap_or_default();
                for profile in functions(tn.len(), p.len()) {
                    let ops = tn
                        .elements()
                        .iter()
                        .zip(&profile)
                        .map(|(e, &v)| (symbol(n, e), OpTable::from_fn(n, p.len(), |_| v)))
                        .collect();
                    algebras.push(ContinuousAlgebra::new(sig.clone(), p.clone(), ops).unwrap());
                }
                for a in &algebras {
                    // Both sides say: for every a, σ ↦ σ_A(a) is monotone on T_n.
                    let profile_monotone = functions(n, p.len()).all(|args| {
                        tn.strict_pairs().all(|(s, t)| {
                            p.le(
                                a.apply(&symbol(n, tn.name(s)), &args).unwrap(),
                                a.apply(&symbol(n, tn.name(t)), &args).unwrap(),
                            )
                        })
                    });
                    let lhs = in_variety(a, &pairwise).unwrap();
                    let rhs = in_variety(a, &chains).unwrap();
                    check(lhs == rhs && lhs == profile_monotone, || {
                        format!(
                            "{} arity {n}: pairwise {lhs}, chains {rhs}, oracle {profile_monotone}",
                            m.name()
                        )
                    })?;
                    instances += 1;
                }
            }
        }
    }
    Ok(format!("{instances} algebras"))
}

fn c15_determinism() -> Verdict {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ordalg"))
            .args(["verify", "all", "--size", "2"])
            .env_remove("ORDALG_FIXTURES")
            .output()
            .expect("binary runs")
    };
    let (first, second) = (run(), run());
    check(first.status.code() == Some(0), || {
        format!("exit {:?}", first.status.code())
    })?;
    check(second.status.code() == Some(0), || {
        format!("exit {:?}", second.status.code())
    })?;
    check(first.stdout == second.stdout, || "reports differ between runs".into())?;
    let report: serde_json::Value = serde_json::from_slice(&first.stdout).map_err(|e| e.to_string())?;
    check(report["passed"] == report["instances"], || {
        "aggregate has failures".into()
    })?;
    Ok(format!("{} bytes, identical", first.stdout.len()))
}

/// Name, time limit in seconds, check.
type Criterion = (&'static str, Option<u64>, fn() -> Verdict);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1 coinserter correctness", Some(30), c1_coinserter),
        ("2 canonical presentation", Some(5), c2_canonical),
        ("3 reflexive coinserters commute with products", Some(60), c3_rci),
        ("4 powers preserve reflexive coinserters", Some(60), c4_powers),
        ("5 tensor is the product", Some(10), c5_tensor),
        ("6 coequalizer universal property", Some(30), c6_coequalizer),
        ("7 free algebra decomposition", Some(10), c7_free),
        ("8 interpretation semantics", Some(5), c8_interpret),
        ("9 encodings", Some(5), c9_encodings),
        ("10 HSP closure", Some(60), c10_hsp),
        ("11 definability and dense triangles", Some(30), c11_inter_triangle),
        ("12 factorization system", Some(30), c12_factorization),
        ("13 freeness of fixture monads", Some(120), c13_freeness),
        ("14 chain equations reduce to inequations", Some(30), c14_dass),
        ("15 CLI determinism", None, c15_determinism),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let verdict = run();
        let elapsed = start.elapsed();
        let verdict = match (verdict, limit) {
            (Ok(detail), Some(s)) if elapsed > Duration::from_secs(s) => {
                Err(format!("{detail}; took {:.1}s, limit {s}s", elapsed.as_secs_f64()))
            }
            (v, _) => v,
        };
        match verdict {
            Ok(detail) => println!("PASS  {name:<48} {:>7.2}s  {detail}", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name:<48} {:>7.2}s  {why}", elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
