//! Exhaustive verification suites. Each suite enumerates every instance up to
//! a size bound, checks one property per instance and collects the failures
//! into a [`Report`].

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};

use crate::algebra::{
    check_dense_triangle, generated_subalgebra, image_algebra, is_homomorphism, product_algebra, similarity_classes,
    truncated_free, ContinuousAlgebra, OpTable, Signature,
};
use crate::colimit::{
    chain_colimit, check_power_preservation, check_product_commutation, coequalizer, coinserter, is_coinserter,
    tensor_via_coinserter, FiniteChainDiagram, ParallelPair,
};
use crate::enumerate::{all_maps, functions, monotone_maps, parallel_pairs, posets_up_to, reflexive_pairs};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fixtures;
use crate::monad::{self, associated_presentation, symbol, var, SFMonadPresentation};
use crate::poset::{decode_tuple, diagonal_fill, factorize, order_pairs, power, product, FinitePoset, MonotoneMap};
use crate::report::Report;
use crate::term::{
    check_hom_definability, encode_inequation, environments, in_variety, interpret, is_definable, satisfies,
    variable_support, Equation, ExtendedTerm, VarietyPresentation,
};

pub fn poset_json(p: &FinitePoset) -> Value {
    let lt: Vec<[&str; 2]> = p.covers().into_iter().map(|(i, j)| [p.name(i), p.name(j)]).collect();
    json!({ "elements": p.elements(), "covers": lt })
}

pub fn map_json(f: &MonotoneMap) -> Value {
    let assign: BTreeMap<&str, &str> = (0..f.dom().len())
        .map(|i| (f.dom().name(i), f.cod().name(f.apply(i))))
        .collect();
    json!({ "dom": poset_json(f.dom()), "cod": poset_json(f.cod()), "assign": assign })
}

pub fn pair_json(p: &ParallelPair) -> Value {
    let mut v = json!({ "f0": map_json(p.f0()), "f1": map_json(p.f1()) });
    if let Some(d) = p.splitting() {
        v["splitting"] = map_json(d);
    }
    v
}

pub fn algebra_json(a: &ContinuousAlgebra) -> Value {
    let ops: BTreeMap<&str, Vec<&str>> = a
        .tables()
        .iter()
        .map(|(s, t)| (s.as_str(), t.values().iter().map(|&v| a.carrier().name(v)).collect()))
        .collect();
    json!({ "carrier": poset_json(a.carrier()), "ops": ops })
}

fn fail_if(cond: bool, witness: impl FnOnce() -> Value) -> Option<Value> {
    cond.then(witness)
}

/// Suites in the order `all` runs them.
pub const SUITES: &[&str] = &[
    "coinserter-universal",
    "canonical-presentation",
    "coequalizer-universal",
    "rci-products",
    "power-preservation",
    "tensor-vs-product",
    "chain-colimit",
    "free-decomposition",
    "encodings",
    "hsp",
    "hom-definability",
    "dense-triangle",
    "factorization",
    "monad-freeness",
    "dass-reduction",
];

/// Runs a suite by name (or `all`), recording wall-clock time.
pub fn run(name: &str, size: usize, exec: Exec) -> Result<Report> {
    let start = Instant::now();
    let mut report = match name {
        "all" => {
            let parts = SUITES.iter().map(|s| run(s, size, exec)).collect::<Result<Vec<_>>>()?;
            Report::aggregate("all", parts)
        }
        "coinserter-universal" => coinserter_universal(size, exec),
        "canonical-presentation" => canonical_presentation(size, exec),
        "coequalizer-universal" => coequalizer_universal(size, exec),
        "rci-products" => rci_products(size, exec),
        "power-preservation" => power_preservation(size, exec),
        "tensor-vs-product" => tensor_vs_product(size, exec),
        "chain-colimit" => chain_colimits(size, exec),
        "free-decomposition" => free_decomposition(size, exec)?,
        "encodings" => encodings(size, exec)?,
        "hsp" => hsp(size, exec)?,
        "hom-definability" => hom_definability(size, exec)?,
        "dense-triangle" => dense_triangle(size, exec)?,
        "factorization" => factorization(size, exec),
        "monad-freeness" => monad_freeness(size, exec)?,
        "dass-reduction" => dass_reduction(size, exec)?,
        other => return Err(Error::PreconditionFailed(format!("unknown suite `{other}`"))),
    };
    report.duration_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
    Ok(report)
}

/// The computed coinserter of every parallel pair passes the universal
/// property check, inserts `c ∘ f0 ⊑ c ∘ f1`, and is surjective.
pub fn coinserter_universal(size: usize, exec: Exec) -> Report {
    let pairs = parallel_pairs(size);
    let outcomes = exec.map(&pairs, |p| {
        let r = coinserter(p);
        let inserts = (0..p.dom().len()).all(|a| r.apex.le(r.c.apply(p.f0().apply(a)), r.c.apply(p.f1().apply(a))));
        let ok = inserts && r.c.is_surjective() && is_coinserter(p, &r.c).unwrap_or(false);
        fail_if(!ok, || pair_json(p))
    });
    Report::from_outcomes("coinserter-universal", outcomes)
}

/// The coinserter of the projections of the order relation recovers `P`.
pub fn canonical_presentation(size: usize, exec: Exec) -> Report {
    let ps = posets_up_to(size);
    let outcomes = exec.map(&ps, |p| {
        let op = order_pairs(p);
        let pair = ParallelPair::new(op.proj0.clone(), op.proj1.clone()).expect("parallel projections");
        let r = coinserter(&pair);
        // `c` starts at the discrete `|P|`: it must be a bijection, and the
        // apex must carry exactly the order of `P` along it.
        let ok = r.c.is_injective()
            && r.c.is_surjective()
            && (0..p.len()).all(|x| (0..p.len()).all(|y| p.le(x, y) == r.apex.le(r.c.apply(x), r.c.apply(y))));
        fail_if(!ok, || poset_json(p))
    });
    Report::from_outcomes("canonical-presentation", outcomes)
}

/// `c ∘ f = c ∘ g`, and every `q` with `q ∘ f = q ∘ g` into a poset of size
/// at most `size` factors through `c` in exactly one way.
pub fn coequalizer_universal(size: usize, exec: Exec) -> Report {
    let pairs = parallel_pairs(size);
    let targets = posets_up_to(size);
    let outcomes = exec.map(&pairs, |p| {
        let (f, g) = (p.f0(), p.f1());
        let r = match coequalizer(f, g) {
            Ok(r) => r,
            Err(e) => return Some(json!({ "pair": pair_json(p), "error": e.to_string() })),
        };
        let coequalizes = (0..f.dom().len()).all(|x| r.c.apply(f.apply(x)) == r.c.apply(g.apply(x)));
        if !coequalizes {
            return Some(json!({ "pair": pair_json(p), "problem": "c does not coequalize" }));
        }
        for z in &targets {
            let ks = monotone_maps(&r.apex, z);
            for q in monotone_maps(p.cod(), z) {
                if (0..f.dom().len()).any(|x| q.apply(f.apply(x)) != q.apply(g.apply(x))) {
                    continue;
                }
                let factors = ks
                    .iter()
                    .filter(|k| (0..p.cod().len()).all(|y| k.apply(r.c.apply(y)) == q.apply(y)))
                    .count();
                if factors != 1 {
                    return Some(json!({ "pair": pair_json(p), "q": map_json(&q), "factorizations": factors }));
                }
            }
        }
        None
    });
    Report::from_outcomes("coequalizer-universal", outcomes)
}

fn rci_instances(size: usize) -> Vec<ParallelPair> {
    let mut pairs = reflexive_pairs(size);
    pairs.extend(fixtures::reflexive_pair_library().iter().cloned());
    pairs
}

/// Products of reflexive coinserters are coinserters: all pairs of
/// reflexive pairs over posets of size at most `size`, and all pairs from
/// the fixture library.
pub fn rci_products(size: usize, exec: Exec) -> Report {
    let small = reflexive_pairs(size);
    let library = fixtures::reflexive_pair_library();
    let mut instances: Vec<(&ParallelPair, &ParallelPair)> = Vec::new();
    for group in [&small[..], library] {
        for p in group {
            for q in group {
                instances.push((p, q));
            }
        }
    }
    let outcomes = exec.map(&instances, |(p, q)| {
        let ok = check_product_commutation(p, q).unwrap_or(false);
        fail_if(!ok, || json!({ "p": pair_json(p), "q": pair_json(q) }))
    });
    Report::from_outcomes("rci-products", outcomes)
}

/// `(−)ⁿ` preserves reflexive coinserters for `n ≤ 3`.
pub fn power_preservation(size: usize, exec: Exec) -> Report {
    let pairs = rci_instances(size);
    let instances: Vec<(usize, &ParallelPair)> = (0..=3).flat_map(|n| pairs.iter().map(move |p| (n, p))).collect();
    let outcomes = exec.map(&instances, |(n, p)| {
        let ok = check_power_preservation(*n, p).unwrap_or(false);
        fail_if(!ok, || json!({ "n": n, "pair": pair_json(p) }))
    });
    Report::from_outcomes("power-preservation", outcomes)
}

/// `P ⊗ X`, built as a coinserter of copowers, is `P × X` with matching names.
pub fn tensor_vs_product(size: usize, exec: Exec) -> Report {
    let ps = posets_up_to(size);
    let instances: Vec<(&Arc<FinitePoset>, &Arc<FinitePoset>)> =
        ps.iter().flat_map(|p| ps.iter().map(move |x| (p, x))).collect();
    let outcomes = exec.map(&instances, |(p, x)| {
        let t = tensor_via_coinserter(p, x);
        let (prod, _, _) = product(p, x);
        let same = t.apex.len() == prod.len()
            && (0..prod.len()).all(|i| {
                t.apex.index_of(prod.name(i)).is_some_and(|ti| {
                    (0..prod.len()).all(|j| prod.le(i, j) == t.apex.le(ti, t.apex.index_of(prod.name(j)).unwrap()))
                })
            });
        fail_if(!same, || json!({ "p": poset_json(p), "x": poset_json(x) }))
    });
    Report::from_outcomes("tensor-vs-product", outcomes)
}

/// Colimits of two-step chains of monotone maps: the cocone is jointly
/// surjective, commutes with the connecting maps and the apex is the last
/// object (through its cocone map) for chains of embeddings of naturals.
pub fn chain_colimits(size: usize, exec: Exec) -> Report {
    let maps = all_maps(size);
    let targets = posets_up_to(size);
    let mut chains: Vec<(MonotoneMap, MonotoneMap)> = Vec::new();
    for f in &maps {
        for q in &targets {
            for g in monotone_maps(f.cod(), q) {
                chains.push((f.clone(), g));
            }
        }
    }
    let mut outcomes = exec.map(&chains, |(f, g)| {
        let d = FiniteChainDiagram::new(
            vec![f.dom().clone(), f.cod().clone(), g.cod().clone()],
            vec![f.clone(), g.clone()],
        )
        .expect("consecutive maps");
        let (apex, cocone) = chain_colimit(&d).expect("nonempty");
        let mut hit = vec![false; apex.len()];
        for c in &cocone {
            for x in c.image() {
                hit[x] = true;
            }
        }
        let commutes = (0..f.dom().len()).all(|x| cocone[0].apply(x) == cocone[1].apply(f.apply(x)))
            && (0..g.dom().len()).all(|y| cocone[1].apply(y) == cocone[2].apply(g.apply(y)));
        // Everything is identified with its image in the last object.
        let last_iso = cocone[2].is_isomorphism();
        fail_if(
            !(hit.iter().all(|&h| h) && commutes && last_iso),
            || json!({ "f": map_json(f), "g": map_json(g) }),
        )
    });
    for k in 0..=size + 3 {
        let (apex, cocone) = chain_colimit(&FiniteChainDiagram::naturals(k)).expect("nonempty");
        let ok = apex.is_isomorphic(&FinitePoset::chain(k + 1)) && cocone[k].is_isomorphism();
        outcomes.push(fail_if(!ok, || json!({ "naturals": k })));
    }
    Report::from_outcomes("chain-colimit", outcomes)
}

/// The depth-truncated free algebra over one binary symbol splits as a
/// coproduct over similarity classes of powers of the generators.
pub fn free_decomposition(size: usize, exec: Exec) -> Result<Report> {
    let sig = Signature::new(&[("b", 2)])?;
    let gens: Vec<Arc<FinitePoset>> = vec![
        Arc::new(FinitePoset::discrete(&["p", "q"])?),
        Arc::new(FinitePoset::new(&["p", "q"], &[("p", "q")])?),
        Arc::new(FinitePoset::new(&["p", "q", "r"], &[("p", "q"), ("q", "r")])?),
    ];
    let instances: Vec<(usize, &Arc<FinitePoset>)> = (0..=size.min(2))
        .flat_map(|d| gens.iter().map(move |g| (d, g)))
        .collect();
    let outcomes = exec.flat_map(&instances, |(depth, g)| {
        let free = truncated_free(&sig, g, *depth).expect("generators are nonempty");
        let carrier = free.carrier();
        let classes = similarity_classes(&sig, *depth);
        let mut owner = vec![usize::MAX; carrier.len()];
        let mut results = Vec::new();
        for (ci, class) in classes.iter().enumerate() {
            let pr = power(g, class.slots);
            let mut members = Vec::with_capacity(pr.len());
            let mut ok = true;
            for t in 0..pr.len() {
                let coords = decode_tuple(t, g.len(), class.slots);
                let names: Vec<&str> = coords.iter().map(|&c| g.name(c)).collect();
                match free.index_of(&class.instantiate(&names)) {
                    Some(i) if owner[i] == usize::MAX => {
                        owner[i] = ci;
                        members.push(i);
                    }
                    _ => ok = false,
                }
            }
            ok = ok
                && members.iter().enumerate().all(|(s, &i)| {
                    members
                        .iter()
                        .enumerate()
                        .all(|(t, &j)| pr.le(s, t) == carrier.le(i, j))
                });
            results.push(fail_if(
                !ok,
                || json!({ "generators": poset_json(g), "depth": depth, "class": class.representative.to_string() }),
            ));
        }
        // Classes cover the carrier and are mutually incomparable.
        let covered = owner.iter().all(|&o| o != usize::MAX);
        let separated = covered && carrier.order_relation().all(|(i, j)| owner[i] == owner[j]);
        results.push(fail_if(
            !separated,
            || json!({ "generators": poset_json(g), "depth": depth, "problem": "classes do not form a coproduct" }),
        ));
        results
    });
    Ok(Report::from_outcomes("free-decomposition", outcomes))
}

fn library_by_sig(max: usize) -> Vec<(&'static str, Vec<&'static ContinuousAlgebra>)> {
    fixtures::signatures()
        .into_iter()
        .map(|(name, sig)| {
            let algebras = fixtures::algebra_library()
                .iter()
                .map(|(_, a)| a)
                .filter(|a| *a.signature() == sig && a.len() <= max)
                .collect();
            (name, algebras)
        })
        .collect()
}

/// Inequation encoding against a direct two-sided check, and definability
/// against satisfaction of `t = t`.
pub fn encodings(size: usize, exec: Exec) -> Result<Report> {
    let mut instances: Vec<(&ContinuousAlgebra, ExtendedTerm, ExtendedTerm)> = Vec::new();
    for (sig_name, algebras) in library_by_sig(size) {
        let terms = fixtures::terms_for(sig_name);
        for a in algebras {
            for t in &terms {
                for u in &terms {
                    instances.push((a, t.clone(), u.clone()));
                }
            }
        }
    }
    let outcomes = exec.map(&instances, |(a, t, u)| {
        let encoded = satisfies(a, &encode_inequation(t.clone(), u.clone())).expect("fixture terms fit");
        let vars: Vec<String> = variable_support(t).union(&variable_support(u)).cloned().collect();
        let direct = environments(&vars, a.len()).all(|env| {
            let env: BTreeMap<String, usize> = env.into_iter().collect();
            match (interpret(a, t, &env).unwrap(), interpret(a, u, &env).unwrap()) {
                (Some(x), Some(y)) => a.carrier().le(x, y),
                _ => false,
            }
        });
        let definable = is_definable(a, t).unwrap() == satisfies(a, &Equation::new(t.clone(), t.clone())).unwrap();
        fail_if(
            encoded != direct || !definable,
            || json!({ "algebra": algebra_json(a), "t": t.to_string(), "u": u.to_string() }),
        )
    });
    Ok(Report::from_outcomes("encodings", outcomes))
}

/// All surjective homomorphisms out of `a` onto algebras whose carrier is
/// one of the posets of size at most `|a|`.
fn homomorphic_images(a: &ContinuousAlgebra) -> Vec<(MonotoneMap, ContinuousAlgebra)> {
    let mut out = Vec::new();
    for q in posets_up_to(a.len()) {
        for h in monotone_maps(a.carrier(), &q) {
            if !h.is_surjective() {
                continue;
            }
            if let Some(b) = transport(a, &h) {
                out.push((h, b));
            }
        }
    }
    out
}

/// The algebra on the codomain of a surjection `h` making it a homomorphism,
/// if there is one.
fn transport(a: &ContinuousAlgebra, h: &MonotoneMap) -> Option<ContinuousAlgebra> {
    let q = h.cod();
    let mut ops = BTreeMap::new();
    for (name, table) in a.tables() {
        let n = table.arity();
        let mut values = vec![usize::MAX; if n == 0 { 1 } else { q.len().pow(n as u32) }];
        for args in functions(n, a.len()) {
            let image: Vec<usize> = args.iter().map(|&x| h.apply(x)).collect();
            let slot = crate::poset::encode_tuple(&image, q.len());
            let v = h.apply(table.apply(&args));
            if values[slot] != usize::MAX && values[slot] != v {
                return None;
            }
            values[slot] = v;
        }
        ops.insert(name.clone(), OpTable::new(n, q.len(), values).ok()?);
    }
    ContinuousAlgebra::new(a.signature().clone(), q.clone(), ops).ok()
}

/// Varieties are closed under products, generated subalgebras and
/// homomorphic images, over all their algebras of size at most `size`.
pub fn hsp(size: usize, exec: Exec) -> Result<Report> {
    let mut outcomes = Vec::new();
    for (name, sig_name, v) in fixtures::presentations() {
        let sig = fixtures::signatures()
            .into_iter()
            .find(|(n, _)| *n == sig_name)
            .unwrap()
            .1;
        let candidates = fixtures::all_algebras(&sig, size);
        let members: Vec<bool> = exec.map(&candidates, |a| in_variety(a, &v).expect("signatures match"));
        let pool: Vec<&ContinuousAlgebra> = candidates
            .iter()
            .zip(&members)
            .filter(|(_, &m)| m)
            .map(|(a, _)| a)
            .collect();
        let witness =
            |kind: &str, a: &ContinuousAlgebra| json!({ "variety": name, "closure": kind, "algebra": algebra_json(a) });
        let pairs: Vec<(&ContinuousAlgebra, &ContinuousAlgebra)> =
            pool.iter().flat_map(|a| pool.iter().map(move |b| (*a, *b))).collect();
        outcomes.extend(exec.map(&pairs, |(a, b)| {
            let (prod, _, _) = product_algebra(a, b).expect("same signature");
            fail_if(!in_variety(&prod, &v).unwrap(), || witness("product", &prod))
        }));
        outcomes.extend(exec.flat_map(&pool, |a| {
            let mut res = Vec::new();
            for mask in 0u32..(1 << a.len()) {
                let gens: Vec<usize> = (0..a.len()).filter(|&i| mask & (1 << i) != 0).collect();
                let (sub, _) = generated_subalgebra(a, &gens);
                res.push(fail_if(!in_variety(&sub, &v).unwrap(), || witness("subalgebra", &sub)));
            }
            for (h, b) in homomorphic_images(a) {
                let image = image_algebra(&h, a, &b).expect("h is a homomorphism onto b");
                res.push(fail_if(!in_variety(&image.algebra, &v).unwrap(), || {
                    witness("image", &image.algebra)
                }));
            }
            res
        }));
    }
    Ok(Report::from_outcomes("hsp", outcomes))
}

fn homomorphisms(a: &ContinuousAlgebra, b: &ContinuousAlgebra) -> Vec<MonotoneMap> {
    monotone_maps(a.carrier(), b.carrier())
        .into_iter()
        .filter(|h| is_homomorphism(h, a, b).unwrap_or(false))
        .collect()
}

/// Homomorphisms preserve definedness and values of every fixture term.
pub fn hom_definability(size: usize, exec: Exec) -> Result<Report> {
    let mut instances = Vec::new();
    for (sig_name, algebras) in library_by_sig(size) {
        let terms = fixtures::terms_for(sig_name);
        for a in &algebras {
            for b in &algebras {
                for h in homomorphisms(a, b) {
                    for t in &terms {
                        instances.push((*a, *b, h.clone(), t.clone()));
                    }
                }
            }
        }
    }
    let outcomes = exec.flat_map(&instances, |(a, b, h, t)| {
        let vars: Vec<String> = variable_support(t).into_iter().collect();
        environments(&vars, a.len())
            .filter_map(|env| {
                let env: BTreeMap<String, usize> = env.into_iter().collect();
                interpret(a, t, &env).unwrap().map(|_| env)
            })
            .map(|env| {
                let ok = check_hom_definability(h, a, b, t, &env).unwrap_or(false);
                fail_if(
                    !ok,
                    || json!({ "a": algebra_json(a), "b": algebra_json(b), "h": map_json(h), "t": t.to_string() }),
                )
            })
            .collect()
    });
    Ok(Report::from_outcomes("hom-definability", outcomes))
}

/// A monotone map completing a triangle of homomorphisms under a surjective
/// one is itself a homomorphism.
pub fn dense_triangle(size: usize, exec: Exec) -> Result<Report> {
    let mut instances = Vec::new();
    for (_, algebras) in library_by_sig(size) {
        for a in &algebras {
            for b1 in &algebras {
                let surjective: Vec<MonotoneMap> =
                    homomorphisms(a, b1).into_iter().filter(|h| h.is_surjective()).collect();
                if surjective.is_empty() {
                    continue;
                }
                for b2 in &algebras {
                    for h2 in homomorphisms(a, b2) {
                        instances.push((*a, *b1, *b2, surjective.clone(), h2));
                    }
                }
            }
        }
    }
    let outcomes = exec.flat_map(&instances, |(a, b1, b2, h1s, h2)| {
        let mut res = Vec::new();
        for h1 in h1s {
            for p in monotone_maps(b1.carrier(), b2.carrier()) {
                if (0..a.len()).any(|x| p.apply(h1.apply(x)) != h2.apply(x)) {
                    continue;
                }
                let ok = check_dense_triangle(a, b1, b2, h1, h2, &p).unwrap_or(false);
                res.push(fail_if(
                    !ok,
                    || json!({ "a": algebra_json(a), "h1": map_json(h1), "h2": map_json(h2), "p": map_json(&p) }),
                ));
            }
        }
        res
    });
    Ok(Report::from_outcomes("dense-triangle", outcomes))
}

/// `factorize` splits every map into a surjection and an embedding, and
/// every commutative square of a surjection against an embedding has
/// exactly one diagonal, which `diagonal_fill` returns.
pub fn factorization(size: usize, exec: Exec) -> Report {
    let maps = all_maps(size);
    let mut outcomes = exec.map(&maps, |f| {
        let (e, m) = factorize(f);
        let ok = e.is_surjective() && m.is_embedding() && e.then(&m).map(|c| c == *f).unwrap_or(false);
        fail_if(!ok, || map_json(f))
    });
    let surjections: Vec<&MonotoneMap> = maps.iter().filter(|f| f.is_surjective()).collect();
    let embeddings: Vec<&MonotoneMap> = maps.iter().filter(|f| f.is_embedding()).collect();
    let squares: Vec<(&MonotoneMap, &MonotoneMap)> = surjections
        .iter()
        .flat_map(|e| embeddings.iter().map(move |m| (*e, *m)))
        .collect();
    outcomes.extend(exec.flat_map(&squares, |(e, m)| {
        let mut res = Vec::new();
        let diagonals_space = monotone_maps(e.cod(), m.dom());
        for u in monotone_maps(e.dom(), m.dom()) {
            // u' is determined on the image of e, which is everything.
            let mut assign = vec![usize::MAX; e.cod().len()];
            let mut consistent = true;
            for a in 0..e.dom().len() {
                let v = m.apply(u.apply(a));
                let slot = &mut assign[e.apply(a)];
                if *slot != usize::MAX && *slot != v {
                    consistent = false;
                }
                *slot = v;
            }
            if !consistent {
                continue;
            }
            let Ok(u_prime) = MonotoneMap::new(e.cod().clone(), m.cod().clone(), assign) else {
                continue;
            };
            let filled = diagonal_fill(&u, e, m, &u_prime);
            let diagonals: Vec<&MonotoneMap> = diagonals_space
                .iter()
                .filter(|d| {
                    (0..e.dom().len()).all(|a| d.apply(e.apply(a)) == u.apply(a))
                        && (0..e.cod().len()).all(|b| m.apply(d.apply(b)) == u_prime.apply(b))
                })
                .collect();
            let ok = diagonals.len() == 1
                && filled
                    .as_ref()
                    .is_ok_and(|d| d.assignment() == diagonals[0].assignment());
            res.push(fail_if(
                !ok,
                || json!({ "e": map_json(e), "m": map_json(m), "u": map_json(&u), "diagonals": diagonals.len() }),
            ));
        }
        res
    }));
    Report::from_outcomes("factorization", outcomes)
}

/// Free extensions exist and are unique for every fixture monad, arity
/// `n ≤ N`, and every algebra of its associated variety of size at most
/// `size`.
pub fn monad_freeness(size: usize, exec: Exec) -> Result<Report> {
    let mut parts = Vec::new();
    for m in fixtures::monads() {
        let algebras = monad::variety_algebras(&m, size)?;
        for n in 0..=m.max_arity() {
            parts.push(monad::verify_freeness(&m, n, &algebras, exec)?);
        }
    }
    let mut report = Report::empty("monad-freeness");
    for part in parts {
        report.instances += part.instances;
        report.passed += part.passed;
        report.counterexamples.extend(part.counterexamples);
    }
    report.counterexamples.truncate(crate::report::MAX_COUNTEREXAMPLES);
    Ok(report)
}

/// Weakly increasing sequences in `p` of length `1..=p.len()` ending below
/// `top`: the prefixes of eventually constant chains with join `top`.
fn chain_prefixes(p: &FinitePoset, top: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = (0..p.len()).filter(|&s| p.le(s, top)).map(|s| vec![s]).collect();
    for _ in 0..p.len() {
        out.extend(layer.iter().cloned());
        layer = layer
            .iter()
            .flat_map(|prefix| {
                let last = *prefix.last().unwrap();
                (0..p.len())
                    .filter(move |&s| p.le(last, s) && p.le(s, top))
                    .map(move |s| {
                        let mut next = prefix.clone();
                        next.push(s);
                        next
                    })
            })
            .collect();
    }
    out
}

/// The arity-`n` part of the associated signature.
fn stage_signature(m: &SFMonadPresentation, n: usize) -> Signature {
    Signature::from_map(
        m.stages()[n]
            .poset
            .elements()
            .iter()
            .map(|e| (symbol(n, e), n))
            .collect(),
    )
}

fn generic_term(m: &SFMonadPresentation, n: usize, s: usize) -> ExtendedTerm {
    ExtendedTerm::comp(
        &symbol(n, m.stages()[n].poset.name(s)),
        (0..n).map(|i| ExtendedTerm::var(&var(i))).collect(),
    )
}

/// Pairwise inequations of `T_n` and the eventually-constant chain equations
/// `σ = ⋁ σₖ`, as two presentations over the arity-`n` symbols.
pub fn dass_presentations(m: &SFMonadPresentation, n: usize) -> (VarietyPresentation, VarietyPresentation) {
    let tn = &m.stages()[n].poset;
    let sig = stage_signature(m, n);
    let pairwise = tn
        .strict_pairs()
        .map(|(s, t)| encode_inequation(generic_term(m, n, s), generic_term(m, n, t)))
        .collect();
    let chains = (0..tn.len())
        .flat_map(|top| {
            chain_prefixes(tn, top).into_iter().map(move |prefix| {
                let members = prefix.iter().map(|&s| generic_term(m, n, s)).collect();
                Equation::new(
                    generic_term(m, n, top),
                    ExtendedTerm::eventually(members, generic_term(m, n, top)),
                )
            })
        })
        .collect();
    (
        VarietyPresentation::new(sig.clone(), pairwise).expect("generic terms"),
        VarietyPresentation::new(sig, chains).expect("generic terms"),
    )
}

/// Largest number of algebras per carrier enumerated literally by
/// [`dass_reduction`].
pub const DASS_LITERAL_CAP: usize = 50_000;

/// Pairwise inequations and chain equations agree on every algebra over the
/// arity-`n` symbols of each fixture monad with `|T_n| ≤ 3`.
///
/// Both presentations are conjunctions over environments of conditions on
/// the value profile `σ ↦ σ_A(a)`, and every profile is realized by constant
/// operations. So alongside the literal enumeration (where it stays below
/// [`DASS_LITERAL_CAP`] algebras per carrier), every profile on every
/// carrier is checked through its constant algebra.
pub fn dass_reduction(size: usize, exec: Exec) -> Result<Report> {
    let mut outcomes = Vec::new();
    for m in fixtures::monads() {
        for n in 0..=m.max_arity() {
            let tn = m.stages()[n].poset.clone();
            if tn.len() > 3 || tn.is_empty() {
                continue;
            }
            let (pairwise, chains) = dass_presentations(&m, n);
            let sig = pairwise.sig.clone();
            let mut algebras = Vec::new();
            for p in posets_up_to(size) {
                if let Some(found) = crate::enumerate::algebras_on(&sig, &p, DASS_LITERAL_CAP) {
                    algebras.extend(found);
                }
                for profile in functions(tn.len(), p.len()) {
                    let ops = tn
                        .elements()
                        .iter()
                        .zip(&profile)
                        .map(|(e, &v)| (symbol(n, e), OpTable::from_fn(n, p.len(), |_| v)))
                        .collect();
                    algebras.push(ContinuousAlgebra::new(sig.clone(), p.clone(), ops)?);
                }
            }
            let name = m.name().to_owned();
            outcomes.extend(exec.map(&algebras, |a| {
                let lhs = in_variety(a, &pairwise).unwrap();
                let rhs = in_variety(a, &chains).unwrap();
                fail_if(
                    lhs != rhs,
                    || json!({ "monad": name, "arity": n, "algebra": algebra_json(a) }),
                )
            }));
        }
    }
    Ok(Report::from_outcomes("dass-reduction", outcomes))
}

/// The associated presentation of a monad (re-exported for the CLI).
pub fn monad_presentation(m: &SFMonadPresentation) -> VarietyPresentation {
    associated_presentation(m)
}
