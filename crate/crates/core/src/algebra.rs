//! Signatures, finite continuous algebras, homomorphisms, the HSP
//! constructions, and classical terms ordered by similarity.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poset::{self, decode_tuple, encode_tuple, factorize, FinitePoset, MonotoneMap};

/// Operation symbols with their arities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Signature(BTreeMap<String, usize>);

impl Signature {
    pub fn new<S: AsRef<str>>(symbols: &[(S, usize)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (s, arity) in symbols {
            if map.insert(s.as_ref().to_owned(), *arity).is_some() {
                return Err(Error::SignatureMismatch(format!("duplicate symbol `{}`", s.as_ref())));
            }
        }
        Ok(Signature(map))
    }

    pub fn from_map(map: BTreeMap<String, usize>) -> Self {
        Signature(map)
    }

    pub fn arity(&self, symbol: &str) -> Option<usize> {
        self.0.get(symbol).copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&str, usize)> {
        self.0.iter().map(|(s, &a)| (s.as_str(), a))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn has_constants(&self) -> bool {
        self.0.values().any(|&a| a == 0)
    }

    pub fn as_map(&self) -> &BTreeMap<String, usize> {
        &self.0
    }
}

/// Dense operation table over a carrier of `base` elements. Argument tuples
/// are indexed row-major (first argument most significant).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpTable {
    arity: usize,
    base: usize,
    values: Vec<usize>,
}

impl OpTable {
    pub fn new(arity: usize, base: usize, values: Vec<usize>) -> Result<Self> {
        let expected = base.pow(arity as u32);
        if values.len() != expected {
            return Err(Error::SignatureMismatch(format!(
                "table of arity {arity} over {base} elements needs {expected} entries, got {}",
                values.len()
            )));
        }
        if values.iter().any(|&v| v >= base) {
            return Err(Error::UnknownElement("operation result outside the carrier".into()));
        }
        Ok(OpTable { arity, base, values })
    }

    pub fn from_fn(arity: usize, base: usize, f: impl Fn(&[usize]) -> usize) -> Self {
        let values = (0..base.pow(arity as u32))
            .map(|t| f(&decode_tuple(t, base, arity)))
            .collect();
        OpTable { arity, base, values }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, args: &[usize]) -> usize {
        self.values[encode_tuple(args, self.base)]
    }

    /// First witness of non-monotonicity: a tuple, a coordinate raised along
    /// the order, and the two unordered results.
    fn monotonicity_witness(&self, carrier: &FinitePoset) -> Option<(Vec<usize>, Vec<usize>)> {
        for t in 0..self.values.len() {
            let args = decode_tuple(t, self.base, self.arity);
            for slot in 0..self.arity {
                for (lo, hi) in carrier.strict_pairs() {
                    if args[slot] != lo {
                        continue;
                    }
                    let mut raised = args.clone();
                    raised[slot] = hi;
                    if !carrier.le(self.apply(&args), self.apply(&raised)) {
                        return Some((args, raised));
                    }
                }
            }
        }
        None
    }

    pub fn is_monotone(&self, carrier: &FinitePoset) -> bool {
        self.monotonicity_witness(carrier).is_none()
    }
}

fn show_tuple(carrier: &FinitePoset, args: &[usize]) -> String {
    args.iter().map(|&a| carrier.name(a)).collect::<Vec<_>>().join(",")
}

/// A finite poset with a monotone operation per signature symbol. On a finite
/// carrier monotone and continuous operations coincide.
#[derive(Clone, PartialEq, Eq)]
pub struct ContinuousAlgebra {
    sig: Signature,
    carrier: Arc<FinitePoset>,
    ops: BTreeMap<String, OpTable>,
}

impl fmt::Debug for ContinuousAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("ContinuousAlgebra");
        d.field("carrier", &self.carrier);
        for (s, table) in &self.ops {
            let named: Vec<&str> = table.values.iter().map(|&v| self.carrier.name(v)).collect();
            d.field(s, &named);
        }
        d.finish()
    }
}

impl ContinuousAlgebra {
    pub fn new(sig: Signature, carrier: Arc<FinitePoset>, ops: BTreeMap<String, OpTable>) -> Result<Self> {
        for (symbol, arity) in sig.symbols() {
            let table = ops
                .get(symbol)
                .ok_or_else(|| Error::SignatureMismatch(format!("no table for `{symbol}`")))?;
            if table.arity != arity || table.base != carrier.len() {
                return Err(Error::SignatureMismatch(format!(
                    "table for `{symbol}` has arity {} over {} elements",
                    table.arity, table.base
                )));
            }
            if table.values.len() != carrier.len().pow(arity as u32) || table.values.iter().any(|&v| v >= carrier.len())
            {
                return Err(Error::UnknownElement(format!(
                    "`{symbol}` has results outside the carrier"
                )));
            }
            if let Some((args, raised)) = table.monotonicity_witness(&carrier) {
                return Err(Error::NotMonotoneOperation {
                    symbol: symbol.to_owned(),
                    witness: format!(
                        "{symbol}({}) = {} but {symbol}({}) = {}",
                        show_tuple(&carrier, &args),
                        carrier.name(table.apply(&args)),
                        show_tuple(&carrier, &raised),
                        carrier.name(table.apply(&raised)),
                    ),
                });
            }
        }
        if let Some(extra) = ops.keys().find(|s| sig.arity(s).is_none()) {
            return Err(Error::SignatureMismatch(format!("table for unknown symbol `{extra}`")));
        }
        Ok(ContinuousAlgebra { sig, carrier, ops })
    }

    /// Builds every table from a function of symbol and argument tuple.
    pub fn from_fn(sig: Signature, carrier: Arc<FinitePoset>, f: impl Fn(&str, &[usize]) -> usize) -> Result<Self> {
        let n = carrier.len();
        let ops = sig
            .symbols()
            .map(|(s, arity)| (s.to_owned(), OpTable::from_fn(arity, n, |args| f(s, args))))
            .collect();
        ContinuousAlgebra::new(sig, carrier, ops)
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn carrier(&self) -> &Arc<FinitePoset> {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn table(&self, symbol: &str) -> Option<&OpTable> {
        self.ops.get(symbol)
    }

    pub fn tables(&self) -> &BTreeMap<String, OpTable> {
        &self.ops
    }

    pub fn apply(&self, symbol: &str, args: &[usize]) -> Result<usize> {
        let table = self
            .ops
            .get(symbol)
            .ok_or_else(|| Error::SignatureMismatch(format!("unknown symbol `{symbol}`")))?;
        if table.arity != args.len() {
            return Err(Error::SignatureMismatch(format!(
                "`{symbol}` has arity {} but got {} arguments",
                table.arity,
                args.len()
            )));
        }
        Ok(table.apply(args))
    }

    /// Restriction to a subset closed under every operation, with its
    /// inclusion; `None` if the subset is not closed.
    pub fn restrict(&self, subset: &[usize]) -> Option<(ContinuousAlgebra, MonotoneMap)> {
        let mut position = vec![usize::MAX; self.len()];
        for (k, &x) in subset.iter().enumerate() {
            position[x] = k;
        }
        let (sub, inclusion) = self.carrier.induced(subset);
        let k = subset.len();
        let mut ops = BTreeMap::new();
        for (s, table) in &self.ops {
            let mut values = Vec::with_capacity(k.pow(table.arity as u32));
            for t in 0..k.pow(table.arity as u32) {
                let args: Vec<usize> = decode_tuple(t, k, table.arity).into_iter().map(|i| subset[i]).collect();
                let v = position[table.apply(&args)];
                if v == usize::MAX {
                    return None;
                }
                values.push(v);
            }
            ops.insert(
                s.clone(),
                OpTable {
                    arity: table.arity,
                    base: k,
                    values,
                },
            );
        }
        Some((
            ContinuousAlgebra {
                sig: self.sig.clone(),
                carrier: sub,
                ops,
            },
            inclusion,
        ))
    }

    /// Same algebra on a carrier with renamed elements.
    pub fn renamed(&self, names: Vec<String>) -> Result<ContinuousAlgebra> {
        let carrier = Arc::new(self.carrier.renamed(names)?);
        Ok(ContinuousAlgebra {
            sig: self.sig.clone(),
            carrier,
            ops: self.ops.clone(),
        })
    }
}

/// Variable assignment consulted during evaluation.
pub trait Env {
    fn lookup(&self, var: &str) -> Option<usize>;
}

impl Env for BTreeMap<String, usize> {
    fn lookup(&self, var: &str) -> Option<usize> {
        self.get(var).copied()
    }
}

impl Env for HashMap<String, usize> {
    fn lookup(&self, var: &str) -> Option<usize> {
        self.get(var).copied()
    }
}

impl<F: Fn(&str) -> Option<usize>> Env for F {
    fn lookup(&self, var: &str) -> Option<usize> {
        self(var)
    }
}

/// A term built from variables and operation symbols only.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassicalTerm {
    Var(String),
    Comp(String, Vec<ClassicalTerm>),
}

impl fmt::Display for ClassicalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassicalTerm::Var(x) => write!(f, "{x}"),
            ClassicalTerm::Comp(s, args) => {
                write!(f, "{s}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl ClassicalTerm {
    pub fn var(x: &str) -> Self {
        ClassicalTerm::Var(x.to_owned())
    }

    pub fn comp(symbol: &str, args: Vec<ClassicalTerm>) -> Self {
        ClassicalTerm::Comp(symbol.to_owned(), args)
    }

    /// Variables have depth 0; a composite is one deeper than its deepest
    /// argument (so constants have depth 1).
    pub fn depth(&self) -> usize {
        match self {
            ClassicalTerm::Var(_) => 0,
            ClassicalTerm::Comp(_, args) => 1 + args.iter().map(|a| a.depth()).max().unwrap_or(0),
        }
    }

    /// Variable occurrences, left to right.
    pub fn occurrences(&self) -> Vec<&str> {
        let mut out = Vec::new();
        fn walk<'a>(t: &'a ClassicalTerm, out: &mut Vec<&'a str>) {
            match t {
                ClassicalTerm::Var(x) => out.push(x),
                ClassicalTerm::Comp(_, args) => args.iter().for_each(|a| walk(a, out)),
            }
        }
        walk(self, &mut out);
        out
    }

    /// Replaces the variable occurrences left to right by `values`.
    pub fn fill(&self, values: &[&str]) -> ClassicalTerm {
        fn go(t: &ClassicalTerm, values: &[&str], next: &mut usize) -> ClassicalTerm {
            match t {
                ClassicalTerm::Var(_) => {
                    let v = ClassicalTerm::var(values[*next]);
                    *next += 1;
                    v
                }
                ClassicalTerm::Comp(s, args) => {
                    ClassicalTerm::Comp(s.clone(), args.iter().map(|a| go(a, values, next)).collect())
                }
            }
        }
        let mut next = 0;
        go(self, values, &mut next)
    }

    pub fn check_arities(&self, sig: &Signature) -> Result<()> {
        match self {
            ClassicalTerm::Var(_) => Ok(()),
            ClassicalTerm::Comp(s, args) => {
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
                args.iter().try_for_each(|a| a.check_arities(sig))
            }
        }
    }
}

pub fn eval_classical(a: &ContinuousAlgebra, t: &ClassicalTerm, env: &dyn Env) -> Result<usize> {
    match t {
        ClassicalTerm::Var(x) => env.lookup(x).ok_or_else(|| Error::UnboundVariable(x.clone())),
        ClassicalTerm::Comp(s, args) => {
            let vals = args
                .iter()
                .map(|arg| eval_classical(a, arg, env))
                .collect::<Result<Vec<_>>>()?;
            a.apply(s, &vals)
        }
    }
}

fn check_map_between(h: &MonotoneMap, a: &ContinuousAlgebra, b: &ContinuousAlgebra) -> Result<()> {
    if a.sig != b.sig {
        return Err(Error::SignatureMismatch("algebras have different signatures".into()));
    }
    if !poset::same_poset(h.dom(), &a.carrier) || !poset::same_poset(h.cod(), &b.carrier) {
        return Err(Error::DomainMismatch(
            "map does not go between the algebra carriers".into(),
        ));
    }
    Ok(())
}

/// First tuple at which `h` fails to commute with an operation.
fn homomorphism_witness(h: &MonotoneMap, a: &ContinuousAlgebra, b: &ContinuousAlgebra) -> Option<String> {
    let n = a.len();
    for (s, table) in &a.ops {
        let target = &b.ops[s];
        for t in 0..n.pow(table.arity as u32) {
            let args = decode_tuple(t, n, table.arity);
            let mapped: Vec<usize> = args.iter().map(|&x| h.apply(x)).collect();
            if h.apply(table.apply(&args)) != target.apply(&mapped) {
                return Some(format!("{s}({})", show_tuple(&a.carrier, &args)));
            }
        }
    }
    None
}

/// `h ∘ σ_A = σ_B ∘ hⁿ` for every symbol.
pub fn is_homomorphism(h: &MonotoneMap, a: &ContinuousAlgebra, b: &ContinuousAlgebra) -> Result<bool> {
    check_map_between(h, a, b)?;
    Ok(homomorphism_witness(h, a, b).is_none())
}

/// Product algebra with coordinatewise operations, and its projections.
pub fn product_algebra(
    a: &ContinuousAlgebra,
    b: &ContinuousAlgebra,
) -> Result<(ContinuousAlgebra, MonotoneMap, MonotoneMap)> {
    if a.sig != b.sig {
        return Err(Error::SignatureMismatch("algebras have different signatures".into()));
    }
    let (carrier, pi0, pi1) = poset::product(&a.carrier, &b.carrier);
    let nb = b.len();
    let n = carrier.len();
    let ops = a
        .ops
        .iter()
        .map(|(s, ta)| {
            let tb = &b.ops[s];
            let table = OpTable::from_fn(ta.arity, n, |args| {
                let left: Vec<usize> = args.iter().map(|&x| x / nb).collect();
                let right: Vec<usize> = args.iter().map(|&x| x % nb).collect();
                ta.apply(&left) * nb + tb.apply(&right)
            });
            (s.clone(), table)
        })
        .collect();
    let prod = ContinuousAlgebra {
        sig: a.sig.clone(),
        carrier,
        ops,
    };
    Ok((prod, pi0, pi1))
}

/// Least subset containing `generators` and closed under every operation,
/// with the restricted structure and its embedding.
///
/// Closure under joins of ω-chains is not computed separately: on a finite
/// carrier every subset already contains the joins of its chains.
pub fn generated_subalgebra(a: &ContinuousAlgebra, generators: &[usize]) -> (ContinuousAlgebra, MonotoneMap) {
    let mut member = vec![false; a.len()];
    for &g in generators {
        member[g] = true;
    }
    loop {
        let current: Vec<usize> = (0..a.len()).filter(|&x| member[x]).collect();
        let mut grew = false;
        for table in a.ops.values() {
            let k = current.len();
            for t in 0..k.pow(table.arity as u32) {
                let args: Vec<usize> = decode_tuple(t, k, table.arity)
                    .into_iter()
                    .map(|i| current[i])
                    .collect();
                let v = table.apply(&args);
                if !member[v] {
                    member[v] = true;
                    grew = true;
                }
            }
        }
        if !grew {
            return a.restrict(&current).expect("operation closure is closed");
        }
    }
}

/// A homomorphic image: `h = embedding ∘ surjection`, both homomorphisms.
#[derive(Clone, Debug)]
pub struct ImageAlgebra {
    pub algebra: ContinuousAlgebra,
    pub surjection: MonotoneMap,
    pub embedding: MonotoneMap,
}

/// Factorizes a homomorphism through its image, which carries the structure
/// restricted from the codomain. The image of a homomorphism is closed under
/// the operations, and (being finite) under ω-joins.
pub fn image_algebra(h: &MonotoneMap, a: &ContinuousAlgebra, b: &ContinuousAlgebra) -> Result<ImageAlgebra> {
    check_map_between(h, a, b)?;
    if let Some(w) = homomorphism_witness(h, a, b) {
        return Err(Error::NotHomomorphism(format!("fails at {w}")));
    }
    let (e, m) = factorize(h);
    let (algebra, inclusion) = b
        .restrict(m.assignment())
        .expect("the image of a homomorphism is closed under the operations");
    debug_assert_eq!(inclusion.assignment(), m.assignment());
    let surjection = MonotoneMap::new(a.carrier.clone(), algebra.carrier.clone(), e.assignment().to_vec())?;
    let embedding = MonotoneMap::new(algebra.carrier.clone(), b.carrier.clone(), m.assignment().to_vec())?;
    Ok(ImageAlgebra {
        algebra,
        surjection,
        embedding,
    })
}

/// Same shape up to the choice of variables.
pub fn similar(t: &ClassicalTerm, u: &ClassicalTerm) -> bool {
    match (t, u) {
        (ClassicalTerm::Var(_), ClassicalTerm::Var(_)) => true,
        (ClassicalTerm::Comp(s, xs), ClassicalTerm::Comp(r, ys)) => {
            s == r && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| similar(x, y))
        }
        _ => false,
    }
}

/// The similarity order: `t ⊑ u` iff they are similar and every variable of
/// `t` lies below the corresponding variable of `u` in `p`. Unknown
/// variables are incomparable.
pub fn term_le(p: &FinitePoset, t: &ClassicalTerm, u: &ClassicalTerm) -> bool {
    match (t, u) {
        (ClassicalTerm::Var(x), ClassicalTerm::Var(y)) => match (p.index_of(x), p.index_of(y)) {
            (Some(i), Some(j)) => p.le(i, j),
            _ => false,
        },
        (ClassicalTerm::Comp(s, xs), ClassicalTerm::Comp(r, ys)) => {
            s == r && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term_le(p, x, y))
        }
        _ => false,
    }
}

/// All terms over `vars` of depth at most `depth`, listed by increasing depth.
fn all_terms(sig: &Signature, vars: &[ClassicalTerm], depth: usize) -> Vec<ClassicalTerm> {
    // Layered enumeration: terms of depth exactly d are composites whose
    // arguments have depth < d with at least one of depth d - 1.
    let mut by_depth: Vec<Vec<ClassicalTerm>> = vec![vars.to_vec()];
    for d in 1..=depth {
        let below: Vec<ClassicalTerm> = by_depth.iter().flatten().cloned().collect();
        let mut layer = Vec::new();
        for (s, arity) in sig.symbols() {
            let k = below.len();
            for t in 0..k.pow(arity as u32) {
                let args: Vec<ClassicalTerm> = decode_tuple(t, k, arity)
                    .into_iter()
                    .map(|i| below[i].clone())
                    .collect();
                let term = ClassicalTerm::Comp(s.to_owned(), args);
                if term.depth() == d {
                    layer.push(term);
                }
            }
        }
        by_depth.push(layer);
    }
    by_depth.into_iter().flatten().collect()
}

/// Classical terms over a poset of generators up to a depth bound, ordered by
/// similarity.
///
/// There are no total operations: applying a symbol to terms of maximal depth
/// leaves the carrier. [`TruncatedFreeAlgebra::apply_symbol`] is the partial
/// operation into the next truncation.
#[derive(Clone, Debug)]
pub struct TruncatedFreeAlgebra {
    pub sig: Signature,
    pub generators: Arc<FinitePoset>,
    pub depth: usize,
    terms: Vec<ClassicalTerm>,
    carrier: Arc<FinitePoset>,
}

impl TruncatedFreeAlgebra {
    pub fn terms(&self) -> &[ClassicalTerm] {
        &self.terms
    }

    pub fn carrier(&self) -> &Arc<FinitePoset> {
        &self.carrier
    }

    pub fn index_of(&self, t: &ClassicalTerm) -> Option<usize> {
        self.carrier.index_of(&t.to_string())
    }

    /// `σ(t₀, …, tₙ₋₁)` for carrier elements; the result lives in the
    /// truncation of depth `depth + 1`.
    pub fn apply_symbol(&self, symbol: &str, args: &[usize]) -> Result<ClassicalTerm> {
        let arity = self
            .sig
            .arity(symbol)
            .ok_or_else(|| Error::SignatureMismatch(format!("unknown symbol `{symbol}`")))?;
        if arity != args.len() {
            return Err(Error::SignatureMismatch(format!(
                "`{symbol}` has arity {arity} but got {} arguments",
                args.len()
            )));
        }
        if let Some(&bad) = args.iter().find(|&&i| i >= self.terms.len()) {
            return Err(Error::UnknownElement(format!("#{bad}")));
        }
        Ok(ClassicalTerm::Comp(
            symbol.to_owned(),
            args.iter().map(|&i| self.terms[i].clone()).collect(),
        ))
    }
}

pub fn truncated_free(sig: &Signature, generators: &Arc<FinitePoset>, depth: usize) -> Result<TruncatedFreeAlgebra> {
    if generators.is_empty() && !sig.has_constants() {
        return Err(Error::CarrierEmpty);
    }
    let vars: Vec<ClassicalTerm> = generators.elements().iter().map(|x| ClassicalTerm::var(x)).collect();
    let terms = all_terms(sig, &vars, depth);
    let names: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
    let carrier = Arc::new(FinitePoset::from_relation(names, |i, j| {
        term_le(generators, &terms[i], &terms[j])
    })?);
    Ok(TruncatedFreeAlgebra {
        sig: sig.clone(),
        generators: generators.clone(),
        depth,
        terms,
        carrier,
    })
}

/// Slot marker used in similarity-class representatives.
pub fn slot_name(i: usize) -> String {
    format!("#{i}")
}

/// One similarity class of terms: a representative over anonymous slots
/// `#0, #1, …` (numbered left to right) and the number of slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityClass {
    pub representative: ClassicalTerm,
    pub slots: usize,
}

impl SimilarityClass {
    /// The member of this class with the given variables in its slots.
    pub fn instantiate(&self, vars: &[&str]) -> ClassicalTerm {
        assert_eq!(vars.len(), self.slots);
        self.representative.fill(vars)
    }
}

/// One class per term shape of depth at most `depth`. Constants give classes
/// with zero slots.
pub fn similarity_classes(sig: &Signature, depth: usize) -> Vec<SimilarityClass> {
    let hole = [ClassicalTerm::var("_")];
    all_terms(sig, &hole, depth)
        .into_iter()
        .map(|shape| {
            let slots = shape.occurrences().len();
            let names: Vec<String> = (0..slots).map(slot_name).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            SimilarityClass {
                representative: shape.fill(&refs),
                slots,
            }
        })
        .collect()
}

/// Given homomorphisms `h1 : A → B1` (surjective) and
/// `h2 : A → B2`, and a monotone `p : B1 → B2` with `p ∘ h1 = h2`, reports
/// whether `p` is a homomorphism.
pub fn check_dense_triangle(
    a: &ContinuousAlgebra,
    b1: &ContinuousAlgebra,
    b2: &ContinuousAlgebra,
    h1: &MonotoneMap,
    h2: &MonotoneMap,
    p: &MonotoneMap,
) -> Result<bool> {
    check_map_between(h1, a, b1)?;
    check_map_between(h2, a, b2)?;
    check_map_between(p, b1, b2)?;
    if homomorphism_witness(h1, a, b1).is_some() || homomorphism_witness(h2, a, b2).is_some() {
        return Err(Error::PreconditionFailed("h1 and h2 must be homomorphisms".into()));
    }
    if !h1.is_surjective() {
        return Err(Error::PreconditionFailed("h1 must be surjective".into()));
    }
    if h1.then(p)? != *h2 {
        return Err(Error::PreconditionFailed("p ∘ h1 differs from h2".into()));
    }
    is_homomorphism(p, b1, b2)
}
