//! Extended terms with formal ω-joins, their partial interpretation in
//! finite continuous algebras, and equational varieties.
//!
//! A formal join is given by one of two finitely presented families:
//!
//! * [`OmegaFamily::EventuallyConstant`] denotes `t₀, …, tₘ₋₁, tail, tail, …`;
//! * [`OmegaFamily::IteratedContext`] denotes `tₖ = contextᵏ[base]`, where the
//!   context contains its hole variable exactly once.
//!
//! Interpretation is partial. A join is defined iff every member is defined
//! and the member values increase; undefinedness is returned as `None`, never
//! as an error.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::{ContinuousAlgebra, Env, Signature};
use crate::error::{Error, Result};
use crate::poset::MonotoneMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedTerm {
    Var(String),
    Comp(String, Vec<ExtendedTerm>),
    Join(Box<OmegaFamily>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OmegaFamily {
    EventuallyConstant {
        prefix: Vec<ExtendedTerm>,
        tail: ExtendedTerm,
    },
    IteratedContext {
        base: ExtendedTerm,
        context: ExtendedTerm,
        hole: String,
    },
}

impl ExtendedTerm {
    pub fn var(x: &str) -> Self {
        ExtendedTerm::Var(x.to_owned())
    }

    pub fn comp(symbol: &str, args: Vec<ExtendedTerm>) -> Self {
        ExtendedTerm::Comp(symbol.to_owned(), args)
    }

    pub fn constant(symbol: &str) -> Self {
        ExtendedTerm::Comp(symbol.to_owned(), Vec::new())
    }

    /// `⋁ (prefix…, tail, tail, …)`.
    pub fn eventually(prefix: Vec<ExtendedTerm>, tail: ExtendedTerm) -> Self {
        ExtendedTerm::Join(Box::new(OmegaFamily::EventuallyConstant { prefix, tail }))
    }

    /// `⋁ₖ contextᵏ[base]`; fails unless `hole` occurs exactly once in `context`.
    pub fn iterate(base: ExtendedTerm, context: ExtendedTerm, hole: &str) -> Result<Self> {
        let count = context.count_free(hole);
        if count != 1 {
            return Err(Error::MalformedTerm(format!(
                "hole `{hole}` occurs {count} times in the context, expected once"
            )));
        }
        Ok(ExtendedTerm::Join(Box::new(OmegaFamily::IteratedContext {
            base,
            context,
            hole: hole.to_owned(),
        })))
    }

    /// Free occurrences of a variable; a nested context binds its own hole.
    fn count_free(&self, x: &str) -> usize {
        match self {
            ExtendedTerm::Var(y) => usize::from(y == x),
            ExtendedTerm::Comp(_, args) => args.iter().map(|a| a.count_free(x)).sum(),
            ExtendedTerm::Join(fam) => match fam.as_ref() {
                OmegaFamily::EventuallyConstant { prefix, tail } => {
                    prefix.iter().map(|a| a.count_free(x)).sum::<usize>() + tail.count_free(x)
                }
                OmegaFamily::IteratedContext { base, context, hole } => {
                    base.count_free(x) + if hole == x { 0 } else { context.count_free(x) }
                }
            },
        }
    }

    /// Checks symbols and arities against a signature, and the hole
    /// discipline of every iterated context.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        match self {
            ExtendedTerm::Var(_) => Ok(()),
            ExtendedTerm::Comp(s, args) => {
                match sig.arity(s) {
                    Some(a) if a == args.len() => {}
                    Some(a) => {
                        return Err(Error::SignatureMismatch(format!(
                            "`{s}` has arity {a} but is applied to {} terms",
                            args.len()
                        )))
                    }
                    None => return Err(Error::SignatureMismatch(format!("unknown symbol `{s}`"))),
                }
                args.iter().try_for_each(|a| a.check(sig))
            }
            ExtendedTerm::Join(fam) => match fam.as_ref() {
                OmegaFamily::EventuallyConstant { prefix, tail } => {
                    prefix.iter().try_for_each(|a| a.check(sig))?;
                    tail.check(sig)
                }
                OmegaFamily::IteratedContext { base, context, hole } => {
                    if context.count_free(hole) != 1 {
                        return Err(Error::MalformedTerm(format!(
                            "hole `{hole}` must occur exactly once in its context"
                        )));
                    }
                    base.check(sig)?;
                    context.check(sig)
                }
            },
        }
    }

    /// Replaces free occurrences of `x` by `by`.
    pub fn substitute(&self, x: &str, by: &ExtendedTerm) -> ExtendedTerm {
        match self {
            ExtendedTerm::Var(y) if y == x => by.clone(),
            ExtendedTerm::Var(_) => self.clone(),
            ExtendedTerm::Comp(s, args) => {
                ExtendedTerm::Comp(s.clone(), args.iter().map(|a| a.substitute(x, by)).collect())
            }
            ExtendedTerm::Join(fam) => ExtendedTerm::Join(Box::new(match fam.as_ref() {
                OmegaFamily::EventuallyConstant { prefix, tail } => OmegaFamily::EventuallyConstant {
                    prefix: prefix.iter().map(|a| a.substitute(x, by)).collect(),
                    tail: tail.substitute(x, by),
                },
                OmegaFamily::IteratedContext { base, context, hole } => OmegaFamily::IteratedContext {
                    base: base.substitute(x, by),
                    context: if hole == x {
                        context.clone()
                    } else {
                        context.substitute(x, by)
                    },
                    hole: hole.clone(),
                },
            })),
        }
    }
}

impl fmt::Display for ExtendedTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedTerm::Var(x) => write!(f, "{x}"),
            ExtendedTerm::Comp(s, args) => {
                write!(f, "{s}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            ExtendedTerm::Join(fam) => match fam.as_ref() {
                OmegaFamily::EventuallyConstant { prefix, tail } => {
                    write!(f, "join[")?;
                    for p in prefix {
                        write!(f, "{p}, ")?;
                    }
                    write!(f, "{tail}...]")
                }
                OmegaFamily::IteratedContext { base, context, hole } => {
                    write!(f, "join[{base}; {hole} => {context}]")
                }
            },
        }
    }
}

/// Variables occurring in a term, including inside join families. The hole
/// of an iterated context is bound and does not count.
pub fn variable_support(t: &ExtendedTerm) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    fn walk(t: &ExtendedTerm, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match t {
            ExtendedTerm::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            ExtendedTerm::Comp(_, args) => args.iter().for_each(|a| walk(a, bound, out)),
            ExtendedTerm::Join(fam) => match fam.as_ref() {
                OmegaFamily::EventuallyConstant { prefix, tail } => {
                    prefix.iter().for_each(|a| walk(a, bound, out));
                    walk(tail, bound, out);
                }
                OmegaFamily::IteratedContext { base, context, hole } => {
                    walk(base, bound, out);
                    bound.push(hole.clone());
                    walk(context, bound, out);
                    bound.pop();
                }
            },
        }
    }
    walk(t, &mut Vec::new(), &mut out);
    out
}

struct Bind<'a> {
    parent: &'a dyn Env,
    name: &'a str,
    value: usize,
}

impl Env for Bind<'_> {
    fn lookup(&self, var: &str) -> Option<usize> {
        if var == self.name {
            Some(self.value)
        } else {
            self.parent.lookup(var)
        }
    }
}

/// Partial interpretation of an extended term.
///
/// `Ok(None)` means undefined: some join family fails the chain condition or
/// has an undefined member. An unbound variable or an unknown symbol is an
/// error.
///
/// An iterated context `vₖ₊₁ = context[vₖ]` is a deterministic sequence in a
/// finite carrier: once each step is checked to increase, the sequence either
/// repeats (and is constant from then on) or climbs a chain, which it can do
/// at most `|carrier| - 1` times.
pub fn interpret(a: &ContinuousAlgebra, t: &ExtendedTerm, env: &dyn Env) -> Result<Option<usize>> {
    let carrier = a.carrier();
    match t {
        ExtendedTerm::Var(x) => env.lookup(x).map(Some).ok_or_else(|| Error::UnboundVariable(x.clone())),
        ExtendedTerm::Comp(s, args) => {
            let mut vals = Vec::with_capacity(args.len());
            let mut defined = true;
            for arg in args {
                // Keep evaluating after an undefined argument so that
                // contract errors are reported consistently.
                match interpret(a, arg, env)? {
                    Some(v) => vals.push(v),
                    None => defined = false,
                }
            }
            if !defined {
                // Still validate the symbol.
                a.signature()
                    .arity(s)
                    .filter(|&n| n == args.len())
                    .ok_or_else(|| Error::SignatureMismatch(format!("bad use of symbol `{s}`")))?;
                return Ok(None);
            }
            a.apply(s, &vals).map(Some)
        }
        ExtendedTerm::Join(fam) => match fam.as_ref() {
            OmegaFamily::EventuallyConstant { prefix, tail } => {
                let mut values = Vec::with_capacity(prefix.len() + 1);
                let mut defined = true;
                for member in prefix.iter().chain(std::iter::once(tail)) {
                    match interpret(a, member, env)? {
                        Some(v) => values.push(v),
                        None => defined = false,
                    }
                }
                if !defined || values.windows(2).any(|w| !carrier.le(w[0], w[1])) {
                    return Ok(None);
                }
                Ok(values.last().copied())
            }
            OmegaFamily::IteratedContext { base, context, hole } => {
                let Some(mut current) = interpret(a, base, env)? else {
                    return Ok(None);
                };
                for _ in 0..=carrier.len() {
                    let bound = Bind {
                        parent: env,
                        name: hole,
                        value: current,
                    };
                    let Some(next) = interpret(a, context, &bound)? else {
                        return Ok(None);
                    };
                    if !carrier.le(current, next) {
                        return Ok(None);
                    }
                    if next == current {
                        return Ok(Some(current));
                    }
                    current = next;
                }
                unreachable!("a strictly increasing sequence in a finite poset stops within |carrier| steps")
            }
        },
    }
}

fn check_symbols(a: &ContinuousAlgebra, t: &ExtendedTerm) -> Result<()> {
    t.check(a.signature())
}

/// All environments over `vars` in lexicographic order (first variable most
/// significant). Yields one empty environment when `vars` is empty.
pub fn environments(vars: &[String], carrier_len: usize) -> impl Iterator<Item = Vec<(String, usize)>> + '_ {
    let total = if vars.is_empty() {
        1
    } else {
        carrier_len.pow(vars.len() as u32)
    };
    (0..total).map(move |idx| {
        let coords = crate::poset::decode_tuple(idx, carrier_len.max(1), vars.len());
        vars.iter().cloned().zip(coords).collect()
    })
}

fn env_map(pairs: Vec<(String, usize)>) -> std::collections::BTreeMap<String, usize> {
    pairs.into_iter().collect()
}

/// Defined under every environment on the term's variables.
pub fn is_definable(a: &ContinuousAlgebra, t: &ExtendedTerm) -> Result<bool> {
    check_symbols(a, t)?;
    let vars: Vec<String> = variable_support(t).into_iter().collect();
    for env in environments(&vars, a.len()) {
        if interpret(a, t, &env_map(env))?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: ExtendedTerm,
    pub rhs: ExtendedTerm,
}

impl Equation {
    pub fn new(lhs: ExtendedTerm, rhs: ExtendedTerm) -> Self {
        Equation { lhs, rhs }
    }

    pub fn variables(&self) -> Vec<String> {
        let mut vars = variable_support(&self.lhs);
        vars.extend(variable_support(&self.rhs));
        vars.into_iter().collect()
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// First environment under which the equation fails, if any.
pub fn equation_witness(a: &ContinuousAlgebra, e: &Equation) -> Result<Option<Vec<(String, usize)>>> {
    check_symbols(a, &e.lhs)?;
    check_symbols(a, &e.rhs)?;
    let vars = e.variables();
    for env in environments(&vars, a.len()) {
        let map = env_map(env.clone());
        let l = interpret(a, &e.lhs, &map)?;
        let r = interpret(a, &e.rhs, &map)?;
        match (l, r) {
            (Some(x), Some(y)) if x == y => {}
            _ => return Ok(Some(env)),
        }
    }
    Ok(None)
}

/// Both sides defined and equal under every environment.
pub fn satisfies(a: &ContinuousAlgebra, e: &Equation) -> Result<bool> {
    Ok(equation_witness(a, e)?.is_none())
}

/// `t ⊑ t'` as the equation `t' = ⋁(t, t', t', …)`.
///
/// The join is defined exactly when `t ⊑ t'` and then equals `t'`. Equating
/// it with `t` instead would force `t = t'`.
pub fn encode_inequation(t: ExtendedTerm, t_prime: ExtendedTerm) -> Equation {
    let join = ExtendedTerm::eventually(vec![t], t_prime.clone());
    Equation::new(t_prime, join)
}

/// A signature with a list of equations over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyPresentation {
    pub sig: Signature,
    pub equations: Vec<Equation>,
}

impl VarietyPresentation {
    pub fn new(sig: Signature, equations: Vec<Equation>) -> Result<Self> {
        for e in &equations {
            e.lhs.check(&sig)?;
            e.rhs.check(&sig)?;
        }
        Ok(VarietyPresentation { sig, equations })
    }
}

pub fn in_variety(a: &ContinuousAlgebra, v: &VarietyPresentation) -> Result<bool> {
    Ok(variety_witness(a, v)?.is_none())
}

/// Index of a violated equation with the environment that violates it.
pub type Violation = (usize, Vec<(String, usize)>);

/// First violated equation (by index) together with the failing environment.
pub fn variety_witness(a: &ContinuousAlgebra, v: &VarietyPresentation) -> Result<Option<Violation>> {
    if *a.signature() != v.sig {
        return Err(Error::SignatureMismatch(
            "algebra and presentation signatures differ".into(),
        ));
    }
    for (i, e) in v.equations.iter().enumerate() {
        if let Some(env) = equation_witness(a, e)? {
            return Ok(Some((i, env)));
        }
    }
    Ok(None)
}

/// Homomorphisms preserve definability: for `h : A → B` and an environment
/// under which `t` is defined in `A`, `t` is defined in `B` under `h ∘ env`
/// with value `h(value)`.
pub fn check_hom_definability(
    h: &MonotoneMap,
    a: &ContinuousAlgebra,
    b: &ContinuousAlgebra,
    t: &ExtendedTerm,
    env: &dyn Env,
) -> Result<bool> {
    if !crate::algebra::is_homomorphism(h, a, b)? {
        return Err(Error::PreconditionFailed("h is not a homomorphism".into()));
    }
    let Some(value) = interpret(a, t, env)? else {
        return Err(Error::PreconditionFailed(format!(
            "{t} is undefined in the source algebra"
        )));
    };
    let pushed = |x: &str| env.lookup(x).map(|v| h.apply(v));
    Ok(interpret(b, t, &pushed)? == Some(h.apply(value)))
}

#[cfg(test)]
mod tests {
    use std::cell::RefCell;
    use std::collections::BTreeMap;
    use std::sync::Arc;

    use super::*;
    use crate::poset::FinitePoset;

    fn sigma_join() -> ExtendedTerm {
        ExtendedTerm::iterate(
            ExtendedTerm::var("x"),
            ExtendedTerm::comp("s", vec![ExtendedTerm::var("h")]),
            "h",
        )
        .unwrap()
    }

    fn unary(carrier: FinitePoset, f: impl Fn(usize) -> usize) -> ContinuousAlgebra {
        let sig = Signature::new(&[("s", 1)]).unwrap();
        ContinuousAlgebra::from_fn(sig, Arc::new(carrier), |_, args| f(args[0])).unwrap()
    }

    fn env(pairs: &[(&str, usize)]) -> BTreeMap<String, usize> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn support_examples() {
        assert_eq!(variable_support(&ExtendedTerm::var("x0")), ["x0".to_string()].into());
        assert_eq!(variable_support(&sigma_join()), ["x".to_string()].into());
        let t = ExtendedTerm::eventually(vec![ExtendedTerm::var("a")], ExtendedTerm::var("b"));
        assert_eq!(variable_support(&t), ["a".to_string(), "b".to_string()].into());
    }

    #[test]
    fn hole_must_occur_once() {
        let twice = ExtendedTerm::comp("m", vec![ExtendedTerm::var("h"), ExtendedTerm::var("h")]);
        assert!(ExtendedTerm::iterate(ExtendedTerm::var("x"), twice, "h").is_err());
        assert!(ExtendedTerm::iterate(ExtendedTerm::var("x"), ExtendedTerm::var("y"), "h").is_err());
    }

    #[test]
    fn interpret_examples() {
        let a = unary(FinitePoset::chain(2), |_| 1);
        assert_eq!(
            interpret(&a, &ExtendedTerm::var("x"), &env(&[("x", 0)])).unwrap(),
            Some(0)
        );
        // 0, 1, 1, ... increases, join 1.
        assert_eq!(interpret(&a, &sigma_join(), &env(&[("x", 0)])).unwrap(), Some(1));

        let swap = unary(FinitePoset::discrete(&["a", "b"]).unwrap(), |x| 1 - x);
        // a, b, a, ... is not a chain.
        assert_eq!(interpret(&swap, &sigma_join(), &env(&[("x", 0)])).unwrap(), None);

        assert_eq!(
            interpret(&a, &ExtendedTerm::var("y"), &env(&[("x", 0)])),
            Err(Error::UnboundVariable("y".into()))
        );
    }

    #[test]
    fn eventually_constant_chain_conditions() {
        let c3 = unary(FinitePoset::chain(3), |x| x);
        let e = env(&[("a", 0), ("b", 1), ("c", 2)]);
        let v = |n: &str| ExtendedTerm::var(n);
        assert_eq!(
            interpret(&c3, &ExtendedTerm::eventually(vec![], v("b")), &e).unwrap(),
            Some(1)
        );
        assert_eq!(
            interpret(&c3, &ExtendedTerm::eventually(vec![v("a"), v("b")], v("c")), &e).unwrap(),
            Some(2)
        );
        assert_eq!(
            interpret(&c3, &ExtendedTerm::eventually(vec![v("b"), v("a")], v("c")), &e).unwrap(),
            None
        );
        assert_eq!(
            interpret(&c3, &ExtendedTerm::eventually(vec![v("c")], v("b")), &e).unwrap(),
            None
        );
    }

    #[test]
    fn definability_examples() {
        let a = unary(FinitePoset::chain(2), |_| 1);
        assert!(is_definable(&a, &ExtendedTerm::var("x")).unwrap());
        assert!(is_definable(&a, &sigma_join()).unwrap());
        let swap = unary(FinitePoset::discrete(&["a", "b"]).unwrap(), |x| 1 - x);
        assert!(!is_definable(&swap, &sigma_join()).unwrap());
    }

    fn top_signature() -> Signature {
        Signature::new(&[("s", 1), ("top", 0)]).unwrap()
    }

    #[test]
    fn satisfies_examples() {
        let sig = top_signature();
        let carrier = Arc::new(FinitePoset::chain(2));
        let trivial = Equation::new(ExtendedTerm::var("x"), ExtendedTerm::var("x"));
        let eq = Equation::new(sigma_join(), ExtendedTerm::constant("top"));

        let constant_top = ContinuousAlgebra::from_fn(sig.clone(), carrier.clone(), |_, _| 1).unwrap();
        assert!(satisfies(&constant_top, &trivial).unwrap());
        assert!(satisfies(&constant_top, &eq).unwrap());

        let identity =
            ContinuousAlgebra::from_fn(sig.clone(), carrier, |s, a| if s == "top" { 1 } else { a[0] }).unwrap();
        assert!(!satisfies(&identity, &eq).unwrap());
        assert_eq!(
            equation_witness(&identity, &eq).unwrap(),
            Some(vec![("x".to_string(), 0)])
        );

        let alien = Equation::new(ExtendedTerm::constant("nope"), ExtendedTerm::var("x"));
        assert!(matches!(satisfies(&identity, &alien), Err(Error::SignatureMismatch(_))));
    }

    #[test]
    fn inequation_encoding_examples() {
        let x = ExtendedTerm::var("x");
        let sx = ExtendedTerm::comp("s", vec![x.clone()]);
        let refl = encode_inequation(x.clone(), x.clone());
        let inflationary = encode_inequation(x.clone(), sx);
        for f in [|_: usize| 1usize, |x: usize| x, |_: usize| 0] {
            let a = unary(FinitePoset::chain(2), f);
            assert!(satisfies(&a, &refl).unwrap());
            // Oracle: a ⊑ s(a) for every a.
            let direct = (0..2).all(|v| v <= f(v));
            assert_eq!(satisfies(&a, &inflationary).unwrap(), direct);
        }
    }

    #[test]
    fn in_variety_examples() {
        let sig = Signature::new(&[("m", 2), ("e", 0)]).unwrap();
        let x = ExtendedTerm::var("x");
        let y = ExtendedTerm::var("y");
        let z = ExtendedTerm::var("z");
        let m = |a: ExtendedTerm, b: ExtendedTerm| ExtendedTerm::comp("m", vec![a, b]);
        let e = ExtendedTerm::constant("e");
        let monoid = VarietyPresentation::new(
            sig.clone(),
            vec![
                Equation::new(
                    m(m(x.clone(), y.clone()), z.clone()),
                    m(x.clone(), m(y.clone(), z.clone())),
                ),
                Equation::new(m(e.clone(), x.clone()), x.clone()),
                Equation::new(m(x.clone(), e.clone()), x.clone()),
            ],
        )
        .unwrap();
        let empty = VarietyPresentation::new(sig.clone(), vec![]).unwrap();
        // Meet on {a ⊑ e} with unit e = top.
        let carrier = Arc::new(FinitePoset::new(&["a", "e"], &[("a", "e")]).unwrap());
        let meet = ContinuousAlgebra::from_fn(
            sig.clone(),
            carrier,
            |s, args| if s == "e" { 1 } else { args[0].min(args[1]) },
        )
        .unwrap();
        assert!(in_variety(&meet, &empty).unwrap());
        assert!(in_variety(&meet, &monoid).unwrap());

        let powers = ExtendedTerm::iterate(x.clone(), m(x.clone(), ExtendedTerm::var("h")), "h").unwrap();
        let mut with_join = monoid.clone();
        with_join.equations.push(Equation::new(powers, e));
        assert!(!in_variety(&meet, &with_join).unwrap());
    }

    #[test]
    fn hom_definability_examples() {
        let a = unary(FinitePoset::chain(2), |_| 1);
        let id = MonotoneMap::identity(a.carrier());
        assert!(check_hom_definability(&id, &a, &a, &sigma_join(), &env(&[("x", 0)])).unwrap());

        let one = unary(FinitePoset::singleton("*"), |_| 0);
        let collapse = MonotoneMap::constant(a.carrier().clone(), one.carrier().clone(), 0);
        assert!(check_hom_definability(&collapse, &a, &one, &sigma_join(), &env(&[("x", 0)])).unwrap());

        let swap = unary(FinitePoset::discrete(&["a", "b"]).unwrap(), |x| 1 - x);
        let id = MonotoneMap::identity(swap.carrier());
        assert!(matches!(
            check_hom_definability(&id, &swap, &swap, &sigma_join(), &env(&[("x", 0)])),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn interpret_reads_only_the_support() {
        let a = unary(FinitePoset::chain(3), |x| (x + 1).min(2));
        let seen = RefCell::new(BTreeSet::new());
        let recording = |v: &str| {
            seen.borrow_mut().insert(v.to_owned());
            Some(0)
        };
        let t = ExtendedTerm::eventually(
            vec![sigma_join()],
            ExtendedTerm::comp("s", vec![ExtendedTerm::var("y")]),
        );
        interpret(&a, &t, &recording).unwrap();
        let seen = seen.into_inner();
        assert!(seen.is_subset(&variable_support(&t)), "{seen:?}");
    }
}
