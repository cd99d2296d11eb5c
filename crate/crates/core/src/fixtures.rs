//! Shipped instances: signatures, algebras, terms, presentations, reflexive
//! pairs and monads used by the verification suites and the CLI.

use std::sync::{Arc, OnceLock};

use crate::algebra::{ContinuousAlgebra, Signature};
use crate::colimit::ParallelPair;
use crate::enumerate::{self, posets, posets_up_to};
use crate::monad::SFMonadPresentation;
use crate::poset::FinitePoset;
use crate::term::{encode_inequation, Equation, ExtendedTerm, VarietyPresentation};

pub fn unary_sig() -> Signature {
    Signature::new(&[("s", 1)]).unwrap()
}

/// A unary map and a constant.
pub fn top_sig() -> Signature {
    Signature::new(&[("s", 1), ("top", 0)]).unwrap()
}

pub fn monoid_sig() -> Signature {
    Signature::new(&[("m", 2), ("e", 0)]).unwrap()
}

pub fn join_sig() -> Signature {
    Signature::new(&[("j", 2)]).unwrap()
}

pub fn signatures() -> Vec<(&'static str, Signature)> {
    vec![
        ("unary", unary_sig()),
        ("top", top_sig()),
        ("monoid", monoid_sig()),
        ("join", join_sig()),
    ]
}

fn v(x: &str) -> ExtendedTerm {
    ExtendedTerm::var(x)
}

fn s(t: ExtendedTerm) -> ExtendedTerm {
    ExtendedTerm::comp("s", vec![t])
}

fn m(a: ExtendedTerm, b: ExtendedTerm) -> ExtendedTerm {
    ExtendedTerm::comp("m", vec![a, b])
}

fn j(a: ExtendedTerm, b: ExtendedTerm) -> ExtendedTerm {
    ExtendedTerm::comp("j", vec![a, b])
}

fn iterate(base: ExtendedTerm, context: ExtendedTerm) -> ExtendedTerm {
    ExtendedTerm::iterate(base, context, "h").expect("the hole occurs once")
}

/// `⋁ sᵏ(x)`.
pub fn s_orbit_join() -> ExtendedTerm {
    iterate(v("x"), s(v("h")))
}

/// `⋁ xᵏ` for `k ≥ 1`.
pub fn power_join() -> ExtendedTerm {
    iterate(v("x"), m(v("x"), v("h")))
}

fn chain(n: usize) -> Arc<FinitePoset> {
    Arc::new(FinitePoset::chain(n))
}

fn discrete(n: usize) -> Arc<FinitePoset> {
    let names: Vec<String> = (0..n).map(enumerate::letter).collect();
    Arc::new(FinitePoset::discrete(&names).unwrap())
}

/// The 2-element carrier with `a ⊑ c`, `b ⊑ c` and `a`, `b` incomparable.
fn vee() -> Arc<FinitePoset> {
    Arc::new(FinitePoset::new(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap())
}

/// Named algebras over the fixture signatures.
pub fn algebras() -> Vec<(&'static str, ContinuousAlgebra)> {
    let unary = |p: Arc<FinitePoset>, f: fn(usize) -> usize| {
        ContinuousAlgebra::from_fn(unary_sig(), p, move |_, a| f(a[0])).unwrap()
    };
    let top = |p: Arc<FinitePoset>, t: usize, f: fn(usize) -> usize| {
        ContinuousAlgebra::from_fn(top_sig(), p, move |sym, a| if sym == "top" { t } else { f(a[0]) }).unwrap()
    };
    let binary = |sig: Signature, p: Arc<FinitePoset>, unit: Option<usize>, f: fn(usize, usize) -> usize| {
        ContinuousAlgebra::from_fn(
            sig,
            p,
            move |_, a| if a.is_empty() { unit.unwrap() } else { f(a[0], a[1]) },
        )
        .unwrap()
    };
    vec![
        ("unary-id-2", unary(chain(2), |x| x)),
        ("unary-top-2", unary(chain(2), |_| 1)),
        ("unary-swap-2", unary(discrete(2), |x| 1 - x)),
        ("unary-succ-3", unary(chain(3), |x| (x + 1).min(2))),
        ("unary-bottom-3", unary(chain(3), |_| 0)),
        ("unary-vee-3", unary(vee(), |x| if x == 0 { 2 } else { x })),
        ("top-const-2", top(chain(2), 1, |_| 1)),
        ("top-id-2", top(chain(2), 1, |x| x)),
        ("top-succ-3", top(chain(3), 2, |x| (x + 1).min(2))),
        ("top-low-3", top(chain(3), 1, |x| x.max(1))),
        (
            "monoid-meet-2",
            binary(monoid_sig(), chain(2), Some(1), |x, y| x.min(y)),
        ),
        (
            "monoid-join-2",
            binary(monoid_sig(), chain(2), Some(0), |x, y| x.max(y)),
        ),
        ("monoid-trivial-1", binary(monoid_sig(), chain(1), Some(0), |_, _| 0)),
        ("monoid-max-3", binary(monoid_sig(), chain(3), Some(0), |x, y| x.max(y))),
        ("monoid-xor-2", binary(monoid_sig(), discrete(2), Some(0), |x, y| x ^ y)),
        ("join-max-3", binary(join_sig(), chain(3), None, |x, y| x.max(y))),
        ("join-left-2", binary(join_sig(), chain(2), None, |x, _| x)),
    ]
}

pub fn algebra(name: &str) -> Option<ContinuousAlgebra> {
    algebras().into_iter().find(|(n, _)| *n == name).map(|(_, a)| a)
}

/// Named extended terms, each with the signature it is written in.
pub fn terms() -> Vec<(&'static str, &'static str, ExtendedTerm)> {
    let x = v("x");
    let y = v("y");
    vec![
        ("var", "unary", x.clone()),
        ("s", "unary", s(x.clone())),
        ("ss", "unary", s(s(x.clone()))),
        ("s-orbit", "unary", s_orbit_join()),
        ("s-orbit-of-s", "unary", iterate(s(x.clone()), s(v("h")))),
        ("s-after-orbit", "unary", s(s_orbit_join())),
        (
            "x-then-sx",
            "unary",
            ExtendedTerm::eventually(vec![x.clone()], s(x.clone())),
        ),
        (
            "x-sx-ssx",
            "unary",
            ExtendedTerm::eventually(vec![x.clone(), s(x.clone())], s(s(x.clone()))),
        ),
        (
            "nested",
            "unary",
            ExtendedTerm::eventually(vec![x.clone()], s_orbit_join()),
        ),
        (
            "two-vars",
            "unary",
            ExtendedTerm::eventually(vec![x.clone()], s(y.clone())),
        ),
        (
            "constant-chain",
            "unary",
            ExtendedTerm::eventually(vec![], s(y.clone())),
        ),
        ("top", "top", ExtendedTerm::constant("top")),
        ("s-orbit-top", "top", s_orbit_join()),
        (
            "x-then-top",
            "top",
            ExtendedTerm::eventually(vec![x.clone()], ExtendedTerm::constant("top")),
        ),
        ("product", "monoid", m(x.clone(), y.clone())),
        ("powers", "monoid", power_join()),
        (
            "unit-then-x",
            "monoid",
            ExtendedTerm::eventually(vec![ExtendedTerm::constant("e")], x.clone()),
        ),
        (
            "both-orders",
            "monoid",
            ExtendedTerm::eventually(vec![m(x.clone(), y.clone())], m(y.clone(), x.clone())),
        ),
        ("join", "join", j(x.clone(), y.clone())),
        ("join-orbit", "join", iterate(x.clone(), j(v("h"), y.clone()))),
        (
            "x-then-join",
            "join",
            ExtendedTerm::eventually(vec![x.clone()], j(x, y)),
        ),
    ]
}

pub fn terms_for(sig_name: &str) -> Vec<ExtendedTerm> {
    terms()
        .into_iter()
        .filter(|(_, s, _)| *s == sig_name)
        .map(|(_, _, t)| t)
        .collect()
}

/// Named presentations with the name of their signature.
pub fn presentations() -> Vec<(&'static str, &'static str, VarietyPresentation)> {
    let (x, y, z) = (v("x"), v("y"), v("z"));
    let e = ExtendedTerm::constant("e");
    let monoid_laws = vec![
        Equation::new(
            m(m(x.clone(), y.clone()), z.clone()),
            m(x.clone(), m(y.clone(), z.clone())),
        ),
        Equation::new(m(e.clone(), x.clone()), x.clone()),
        Equation::new(m(x.clone(), e.clone()), x.clone()),
    ];
    let mut monoid_join = monoid_laws.clone();
    monoid_join.push(Equation::new(power_join(), e.clone()));
    let semilattice = vec![
        Equation::new(j(x.clone(), x.clone()), x.clone()),
        Equation::new(j(x.clone(), y.clone()), j(y.clone(), x.clone())),
        Equation::new(
            j(j(x.clone(), y.clone()), z.clone()),
            j(x.clone(), j(y.clone(), z.clone())),
        ),
    ];
    let p = |sig: Signature, eqs: Vec<Equation>| VarietyPresentation::new(sig, eqs).unwrap();
    vec![
        ("unary-all", "unary", p(unary_sig(), vec![])),
        (
            "inflationary",
            "unary",
            p(unary_sig(), vec![encode_inequation(x.clone(), s(x.clone()))]),
        ),
        (
            "idempotent",
            "unary",
            p(unary_sig(), vec![Equation::new(s(s(x.clone())), s(x.clone()))]),
        ),
        (
            "top-join",
            "top",
            p(
                top_sig(),
                vec![Equation::new(s_orbit_join(), ExtendedTerm::constant("top"))],
            ),
        ),
        ("monoid", "monoid", p(monoid_sig(), monoid_laws)),
        ("monoid-join", "monoid", p(monoid_sig(), monoid_join)),
        ("semilattice", "join", p(join_sig(), semilattice)),
    ]
}

pub fn presentation(name: &str) -> Option<VarietyPresentation> {
    presentations()
        .into_iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, _, p)| p)
}

/// Every algebra over `sig` with carrier size at most `max`, one per
/// isomorphism class.
pub fn all_algebras(sig: &Signature, max: usize) -> Vec<ContinuousAlgebra> {
    let found = enumerate::algebras(sig, max, usize::MAX).expect("no cap");
    enumerate::dedupe_isomorphic(found)
}

/// Named algebras plus all algebras of size at most 2, for every fixture
/// signature.
pub fn algebra_library() -> &'static [(String, ContinuousAlgebra)] {
    static LIBRARY: OnceLock<Vec<(String, ContinuousAlgebra)>> = OnceLock::new();
    LIBRARY.get_or_init(|| {
        let mut out: Vec<(String, ContinuousAlgebra)> =
            algebras().into_iter().map(|(n, a)| (n.to_owned(), a)).collect();
        for (sig_name, sig) in signatures() {
            for (i, a) in all_algebras(&sig, 2).into_iter().enumerate() {
                out.push((format!("{sig_name}-gen-{i}"), a));
            }
        }
        out
    })
}

/// Size of [`reflexive_pair_library`].
pub const REFLEXIVE_LIBRARY_SIZE: usize = 64;

/// A fixed selection of reflexive pairs over posets of size at most 4,
/// spread evenly over all such pairs with a domain of size 3 or 4 and a
/// codomain of size 2 or 3.
pub fn reflexive_pair_library() -> &'static [ParallelPair] {
    static LIBRARY: OnceLock<Vec<ParallelPair>> = OnceLock::new();
    LIBRARY.get_or_init(|| {
        let doms: Vec<_> = posets(3).iter().chain(posets(4)).cloned().collect();
        let cods: Vec<_> = posets(2).iter().chain(posets(3)).cloned().collect();
        let all = enumerate::reflexive_pairs_between(&doms, &cods);
        let stride = (all.len() / REFLEXIVE_LIBRARY_SIZE).max(1);
        all.into_iter().step_by(stride).take(REFLEXIVE_LIBRARY_SIZE).collect()
    })
}

pub const FIXTURE_MAX_ARITY: usize = 2;

/// Lawful monad presentations up to arity 2.
pub fn monads() -> Vec<SFMonadPresentation> {
    let n = FIXTURE_MAX_ARITY;
    vec![
        SFMonadPresentation::adjoin_constants("identity", n, &[], &[], &[]).unwrap(),
        SFMonadPresentation::adjoin_constants("lift", n, &["bot"], &[], &["bot"]).unwrap(),
        // Lift of the exception monad: an incomparable point below a new bottom.
        SFMonadPresentation::adjoin_constants("double-lift", n, &["bot0", "bot1"], &[("bot0", "bot1")], &["bot0"])
            .unwrap(),
        SFMonadPresentation::adjoin_constants("exception", n, &["err"], &[], &[]).unwrap(),
    ]
}

/// Presentations violating at least one law.
pub fn broken_monads() -> Vec<SFMonadPresentation> {
    let n = FIXTURE_MAX_ARITY;
    let lift = SFMonadPresentation::adjoin_constants("lift", n, &["bot"], &[], &["bot"]).unwrap();
    vec![
        SFMonadPresentation::from_fn("lift-collapsed", lift.stages().to_vec(), |_, _, _, _| 0).unwrap(),
        SFMonadPresentation::adjoin_constants(
            "bottom-chain",
            n,
            &["bot0", "bot1"],
            &[("bot0", "bot1")],
            &["bot0", "bot1"],
        )
        .unwrap(),
    ]
}

pub fn monad(name: &str) -> Option<SFMonadPresentation> {
    monads().into_iter().chain(broken_monads()).find(|m| m.name() == name)
}

/// Posets of size at most `max` (re-exported for the suites).
pub fn carriers(max: usize) -> Vec<Arc<FinitePoset>> {
    posets_up_to(max)
}
