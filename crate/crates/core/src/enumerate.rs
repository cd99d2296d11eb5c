//! Exhaustive generators for small instances: posets up to isomorphism,
//! monotone maps, parallel and reflexive pairs, and algebras.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::algebra::{ContinuousAlgebra, OpTable, Signature};
use crate::colimit::ParallelPair;
use crate::poset::{power, FinitePoset, MonotoneMap};

/// Largest size [`posets`] generates.
pub const MAX_POSET_SIZE: usize = 6;

/// Element names `a, b, …` for generated posets.
pub fn letter(i: usize) -> String {
    let alphabet = b"abcdefghijklmnopqrstuvwxyz";
    if i < alphabet.len() {
        (alphabet[i] as char).to_string()
    } else {
        format!("e{i}")
    }
}

fn generate(n: usize) -> Vec<Arc<FinitePoset>> {
    let names: Vec<String> = (0..n).map(letter).collect();
    // Every poset has a linear extension, so it suffices to consider
    // relations contained in i ≤ j.
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut found: Vec<Arc<FinitePoset>> = Vec::new();
    let mut buckets: HashMap<Vec<(usize, usize)>, Vec<usize>> = HashMap::new();
    for mask in 0u64..(1u64 << slots.len()) {
        let below = |i: usize, j: usize| {
            i == j || (i < j && mask & (1 << slots.iter().position(|&s| s == (i, j)).unwrap()) != 0)
        };
        let transitive = (0..n).all(|i| (i..n).all(|j| !below(i, j) || (j..n).all(|k| !below(j, k) || below(i, k))));
        if !transitive {
            continue;
        }
        let p = FinitePoset::from_relation(names.clone(), below).expect("upper-triangular closed relation");
        let mut profile: Vec<(usize, usize)> = (0..n).map(|i| (p.down_set(i).len(), p.up_set(i).len())).collect();
        profile.sort_unstable();
        let bucket = buckets.entry(profile).or_default();
        if bucket.iter().any(|&k| found[k].is_isomorphic(&p)) {
            continue;
        }
        bucket.push(found.len());
        found.push(Arc::new(p));
    }
    found
}

/// All posets on `n` elements up to isomorphism, in a fixed order, with
/// elements named `a, b, …`. Panics above [`MAX_POSET_SIZE`].
pub fn posets(n: usize) -> &'static [Arc<FinitePoset>] {
    static CACHE: OnceLock<Vec<Vec<Arc<FinitePoset>>>> = OnceLock::new();
    assert!(n <= MAX_POSET_SIZE, "posets are generated up to size {MAX_POSET_SIZE}");
    &CACHE.get_or_init(|| (0..=MAX_POSET_SIZE).map(generate).collect())[n]
}

/// All posets of size at most `max` (including the empty one).
pub fn posets_up_to(max: usize) -> Vec<Arc<FinitePoset>> {
    (0..=max).flat_map(|n| posets(n).iter().cloned()).collect()
}

/// All monotone maps `P → Q`, in lexicographic order of their assignments.
pub fn monotone_maps(p: &Arc<FinitePoset>, q: &Arc<FinitePoset>) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut assign = Vec::with_capacity(p.len());
    fn extend(p: &Arc<FinitePoset>, q: &Arc<FinitePoset>, assign: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
        let i = assign.len();
        if i == p.len() {
            out.push(MonotoneMap::new_unchecked(p.clone(), q.clone(), assign.clone()));
            return;
        }
        for v in 0..q.len() {
            let ok = (0..i).all(|k| (!p.le(k, i) || q.le(assign[k], v)) && (!p.le(i, k) || q.le(v, assign[k])));
            if ok {
                assign.push(v);
                extend(p, q, assign, out);
                assign.pop();
            }
        }
    }
    extend(p, q, &mut assign, &mut out);
    out
}

/// All mappings of an `n`-element set into `k` values, in lexicographic
/// order.
pub fn functions(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if n == 0 {
        1
    } else {
        k.checked_pow(n as u32).unwrap_or(0)
    };
    (0..total).map(move |mut idx| {
        let mut v = vec![0; n];
        for slot in v.iter_mut().rev() {
            *slot = idx % k.max(1);
            idx /= k.max(1);
        }
        v
    })
}

/// Every monotone parallel pair `f0, f1 : A → B` with `|A|, |B| ≤ max`.
pub fn parallel_pairs(max: usize) -> Vec<ParallelPair> {
    let ps = posets_up_to(max);
    let mut out = Vec::new();
    for a in &ps {
        for b in &ps {
            let maps = monotone_maps(a, b);
            for f0 in &maps {
                for f1 in &maps {
                    out.push(ParallelPair::new(f0.clone(), f1.clone()).expect("same endpoints"));
                }
            }
        }
    }
    out
}

/// Every reflexive pair over posets of size at most `max`: each common
/// splitting `δ : B → A` with every `f0, f1` satisfying `fᵢ ∘ δ = id`.
/// A pair with several splittings appears once per splitting.
pub fn reflexive_pairs(max: usize) -> Vec<ParallelPair> {
    reflexive_pairs_between(&posets_up_to(max), &posets_up_to(max))
}

pub fn reflexive_pairs_between(doms: &[Arc<FinitePoset>], cods: &[Arc<FinitePoset>]) -> Vec<ParallelPair> {
    let mut out = Vec::new();
    for a in doms {
        for b in cods {
            let retractions: Vec<MonotoneMap> = monotone_maps(a, b);
            for delta in monotone_maps(b, a) {
                let sections: Vec<&MonotoneMap> = retractions
                    .iter()
                    .filter(|f| (0..b.len()).all(|y| f.apply(delta.apply(y)) == y))
                    .collect();
                for f0 in &sections {
                    for f1 in &sections {
                        out.push(
                            ParallelPair::reflexive((*f0).clone(), (*f1).clone(), delta.clone())
                                .expect("splitting checked above"),
                        );
                    }
                }
            }
        }
    }
    out
}

/// Monotone maps between posets of size at most `max`.
pub fn all_maps(max: usize) -> Vec<MonotoneMap> {
    let ps = posets_up_to(max);
    ps.iter()
        .flat_map(|p| ps.iter().flat_map(move |q| monotone_maps(p, q)))
        .collect()
}

/// Monotone operations of the given arity on `p`, as tables.
pub fn monotone_ops(p: &Arc<FinitePoset>, arity: usize) -> Vec<OpTable> {
    let domain = power(p, arity);
    monotone_maps(&domain, p)
        .into_iter()
        .map(|m| OpTable::new(arity, p.len(), m.assignment().to_vec()).expect("sizes match"))
        .collect()
}

/// All `sig`-algebras on `carrier`, at most `cap` of them (in a fixed
/// order). Returns `None` if there are more than `cap`.
pub fn algebras_on(sig: &Signature, carrier: &Arc<FinitePoset>, cap: usize) -> Option<Vec<ContinuousAlgebra>> {
    let symbols: Vec<(String, usize)> = sig.symbols().map(|(s, n)| (s.to_owned(), n)).collect();
    let choices: Vec<Vec<OpTable>> = symbols.iter().map(|(_, n)| monotone_ops(carrier, *n)).collect();
    let total = choices.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len()))?;
    if total > cap {
        return None;
    }
    let mut out = Vec::with_capacity(total);
    for idx in 0..total {
        let mut rest = idx;
        let mut ops = std::collections::BTreeMap::new();
        for ((name, _), tables) in symbols.iter().zip(&choices).rev() {
            ops.insert(name.clone(), tables[rest % tables.len()].clone());
            rest /= tables.len();
        }
        out.push(ContinuousAlgebra::new(sig.clone(), carrier.clone(), ops).expect("monotone tables"));
    }
    Some(out)
}

/// All `sig`-algebras whose carrier has at most `max` elements, carriers up
/// to isomorphism. `None` if more than `cap` would be produced.
pub fn algebras(sig: &Signature, max: usize, cap: usize) -> Option<Vec<ContinuousAlgebra>> {
    let mut out = Vec::new();
    for p in posets_up_to(max) {
        out.extend(algebras_on(sig, &p, cap.saturating_sub(out.len()))?);
    }
    Some(out)
}

/// Order automorphisms of `p` as assignments.
pub fn automorphisms(p: &FinitePoset) -> Vec<Vec<usize>> {
    let n = p.len();
    let mut out = Vec::new();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn extend(p: &FinitePoset, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let i = perm.len();
        if i == p.len() {
            out.push(perm.clone());
            return;
        }
        for j in 0..p.len() {
            if used[j] || (0..i).any(|k| p.le(k, i) != p.le(perm[k], j) || p.le(i, k) != p.le(j, perm[k])) {
                continue;
            }
            used[j] = true;
            perm.push(j);
            extend(p, perm, used, out);
            perm.pop();
            used[j] = false;
        }
    }
    extend(p, &mut perm, &mut used, &mut out);
    out
}

/// Keeps one algebra per isomorphism class among algebras sharing a carrier
/// (the first in input order).
pub fn dedupe_isomorphic(algebras: Vec<ContinuousAlgebra>) -> Vec<ContinuousAlgebra> {
    let mut seen: HashMap<(usize, Vec<Vec<usize>>), ()> = HashMap::new();
    let mut autos: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    let mut out = Vec::new();
    for a in algebras {
        let key = Arc::as_ptr(a.carrier()) as usize;
        let perms = autos.entry(key).or_insert_with(|| automorphisms(a.carrier()));
        let canonical = perms
            .iter()
            .map(|perm| relabel_tables(&a, perm))
            .min()
            .unwrap_or_default();
        if seen.insert((key, canonical), ()).is_none() {
            out.push(a);
        }
    }
    out
}

/// Op tables of the algebra transported along the permutation `perm`.
fn relabel_tables(a: &ContinuousAlgebra, perm: &[usize]) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut inverse = vec![0; n];
    for (i, &j) in perm.iter().enumerate() {
        inverse[j] = i;
    }
    a.tables()
        .values()
        .map(|t| {
            functions(t.arity(), n)
                .map(|args| {
                    let pre: Vec<usize> = args.iter().map(|&x| inverse[x]).collect();
                    perm[t.apply(&pre)]
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts_match_known_sequence() {
        let counts: Vec<usize> = (0..=5).map(|n| posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn monotone_map_counts() {
        let c2 = Arc::new(FinitePoset::chain(2));
        let c3 = Arc::new(FinitePoset::chain(3));
        let d2 = Arc::new(FinitePoset::discrete(&["a", "b"]).unwrap());
        assert_eq!(monotone_maps(&c2, &c3).len(), 6);
        assert_eq!(monotone_maps(&d2, &c3).len(), 9);
        assert_eq!(monotone_maps(&c3, &d2).len(), 2);
        let empty = Arc::new(FinitePoset::empty());
        assert_eq!(monotone_maps(&empty, &d2).len(), 1);
        assert_eq!(monotone_maps(&d2, &empty).len(), 0);
    }

    #[test]
    fn functions_are_lexicographic() {
        let all: Vec<Vec<usize>> = functions(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(functions(0, 3).count(), 1);
        assert_eq!(functions(2, 0).count(), 0);
    }

    #[test]
    fn reflexive_pairs_carry_valid_splittings() {
        let pairs = reflexive_pairs(2);
        assert!(!pairs.is_empty());
        for p in &pairs {
            let d = p.splitting().unwrap();
            assert!(d.then(p.f0()).unwrap().is_isomorphism());
        }
    }

    #[test]
    fn algebra_enumeration_and_dedupe() {
        let sig = Signature::new(&[("s", 1)]).unwrap();
        let c2 = Arc::new(FinitePoset::chain(2));
        let all = algebras_on(&sig, &c2, 100).unwrap();
        assert_eq!(all.len(), 3);
        let d2 = Arc::new(FinitePoset::discrete(&["a", "b"]).unwrap());
        let all = algebras_on(&sig, &d2, 100).unwrap();
        assert_eq!(all.len(), 4);
        // id, swap, and the two constants (which are swapped by the automorphism).
        assert_eq!(dedupe_isomorphic(all).len(), 3);
        assert!(algebras_on(&sig, &d2, 3).is_none());
    }
}
