//! Strongly finitary monads given by finite-arity Kleisli data, their
//! associated signature and variety, and the freeness check relating the two.
//!
//! A presentation up to arity `N` lists, for each `n ≤ N`, the poset
//! `T_n = T V_n`, the unit `η_n : V_n → T_n`, and for every mapping
//! `u : V_n → T_m` the extension `u* : T_n → T_m`. Mappings `u` are stored
//! as tuples and indexed by [`encode_tuple`] in base `|T_m|`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::json;

use crate::algebra::{is_homomorphism, ContinuousAlgebra, OpTable, Signature};
use crate::enumerate::{functions, monotone_maps, posets_up_to};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::poset::{decode_tuple, encode_tuple, FinitePoset, MonotoneMap};
use crate::report::Report;
use crate::term::{encode_inequation, variety_witness, Equation, ExtendedTerm, VarietyPresentation};

/// `T_n` with the images of the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub poset: Arc<FinitePoset>,
    pub eta: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SFMonadPresentation {
    name: String,
    stages: Vec<Stage>,
    /// `(n, m)` → one assignment `T_n → T_m` per `u : V_n → T_m`.
    extend: BTreeMap<(usize, usize), Vec<Vec<usize>>>,
}

/// Name of the `i`-th variable.
pub fn var(i: usize) -> String {
    format!("x{i}")
}

/// Symbol of the associated signature for `σ ∈ T_n`.
pub fn symbol(n: usize, element: &str) -> String {
    format!("{element}/{n}")
}

fn count(base: usize, n: usize) -> usize {
    if n == 0 {
        1
    } else {
        base.pow(n as u32)
    }
}

impl SFMonadPresentation {
    /// Checks shapes only (ranges and table sizes); the laws are checked by
    /// [`validate_presentation`].
    pub fn new(name: &str, stages: Vec<Stage>, extend: BTreeMap<(usize, usize), Vec<Vec<usize>>>) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::PreconditionFailed("a presentation needs at least T_0".into()));
        }
        for (n, st) in stages.iter().enumerate() {
            if st.eta.len() != n {
                return Err(Error::PreconditionFailed(format!("eta_{n} must list {n} images")));
            }
            if let Some(&bad) = st.eta.iter().find(|&&e| e >= st.poset.len()) {
                return Err(Error::PreconditionFailed(format!("eta_{n} image {bad} out of range")));
            }
        }
        let big_n = stages.len() - 1;
        for n in 0..=big_n {
            for m in 0..=big_n {
                let tm = stages[m].poset.len();
                let tables = extend
                    .get(&(n, m))
                    .ok_or_else(|| Error::PreconditionFailed(format!("missing extension table {n}->{m}")))?;
                if tables.len() != count(tm, n) {
                    return Err(Error::PreconditionFailed(format!(
                        "extension table {n}->{m} has {} entries, expected {}",
                        tables.len(),
                        count(tm, n)
                    )));
                }
                for t in tables {
                    if t.len() != stages[n].poset.len() || t.iter().any(|&v| v >= tm) {
                        return Err(Error::PreconditionFailed(format!(
                            "malformed extension in table {n}->{m}"
                        )));
                    }
                }
            }
        }
        Ok(SFMonadPresentation {
            name: name.to_owned(),
            stages,
            extend,
        })
    }

    /// Builds the tables from `ext(n, m, u, σ) = u*(σ)`.
    pub fn from_fn(
        name: &str,
        stages: Vec<Stage>,
        ext: impl Fn(usize, usize, &[usize], usize) -> usize,
    ) -> Result<Self> {
        let big_n = stages.len().saturating_sub(1);
        let mut extend = BTreeMap::new();
        for n in 0..=big_n {
            for m in 0..=big_n {
                let tm = stages[m].poset.len();
                let tables = functions(n, tm)
                    .map(|u| (0..stages[n].poset.len()).map(|s| ext(n, m, &u, s)).collect())
                    .collect();
                extend.insert((n, m), tables);
            }
        }
        SFMonadPresentation::new(name, stages, extend)
    }

    /// The monad `X ↦ X + K` for a finite poset of constants `K`: each
    /// `T_n` lists the constants, then `x0, …`. Constants named in
    /// `below_variables` are placed below every variable. Extensions fix
    /// constants and substitute variables.
    pub fn adjoin_constants(
        name: &str,
        max_arity: usize,
        constants: &[&str],
        order: &[(&str, &str)],
        below_variables: &[&str],
    ) -> Result<Self> {
        let k = constants.len();
        let stages = (0..=max_arity)
            .map(|n| {
                let mut names: Vec<String> = constants.iter().map(|c| c.to_string()).collect();
                names.extend((0..n).map(var));
                let mut pairs: Vec<(String, String)> =
                    order.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
                for c in below_variables {
                    pairs.extend((0..n).map(|i| (c.to_string(), var(i))));
                }
                let poset = Arc::new(FinitePoset::from_names(names, &pairs)?);
                Ok(Stage {
                    poset,
                    eta: (k..k + n).collect(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SFMonadPresentation::from_fn(name, stages, |_, _, u, s| if s < k { s } else { u[s - k] })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn max_arity(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn stage(&self, n: usize) -> Result<&Stage> {
        self.stages.get(n).ok_or(Error::ArityOutOfRange(n, self.max_arity()))
    }

    pub fn tables(&self) -> &BTreeMap<(usize, usize), Vec<Vec<usize>>> {
        &self.extend
    }

    /// The stored assignment of `u*` for `u : V_n → T_m`.
    pub fn extension(&self, n: usize, m: usize, u: &[usize]) -> Result<&[usize]> {
        self.stage(n)?;
        let tm = self.stage(m)?.poset.len();
        if u.len() != n || u.iter().any(|&v| v >= tm) {
            return Err(Error::DomainMismatch(format!("u must map {n} variables into T_{m}")));
        }
        Ok(&self.extend[&(n, m)][encode_tuple(u, tm)])
    }
}

/// The stored `u*` as a monotone map `T_n → T_m`.
pub fn kleisli_extend(monad: &SFMonadPresentation, n: usize, m: usize, u: &[usize]) -> Result<MonotoneMap> {
    let assign = monad.extension(n, m, u)?.to_vec();
    MonotoneMap::new(monad.stages[n].poset.clone(), monad.stages[m].poset.clone(), assign)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub law: &'static str,
    pub witness: String,
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.witness)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<LawViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn show_u(m: &SFMonadPresentation, target: usize, u: &[usize]) -> String {
    let p = &m.stages[target].poset;
    let parts: Vec<String> = u
        .iter()
        .enumerate()
        .map(|(i, &v)| format!("{}↦{}", var(i), p.name(v)))
        .collect();
    format!("u: V_{} → T_{target} [{}]", u.len(), parts.join(","))
}

/// Checks monotonicity of every `u*`, the unit law `η* = id`, the
/// extension law `u* ∘ η = u`, associativity `(v* ∘ u)* = v* ∘ u*` and
/// enrichment (`u ⊑ u'` implies `u* ⊑ u'*`), over all arities `≤ N`.
pub fn validate_presentation(m: &SFMonadPresentation) -> ValidationReport {
    let big_n = m.max_arity();
    let mut violations = Vec::new();
    let mut fail = |law: &'static str, witness: String| violations.push(LawViolation { law, witness });
    let tn = |n: usize| &m.stages[n].poset;
    for n in 0..=big_n {
        for k in 0..=big_n {
            for u in functions(n, tn(k).len()) {
                let ext = m.extension(n, k, &u).expect("shape checked");
                if let Some((a, b)) = tn(n).order_relation().find(|&(a, b)| !tn(k).le(ext[a], ext[b])) {
                    fail(
                        "monotone",
                        format!(
                            "{}: {} ⊑ {} but images are not ordered",
                            show_u(m, k, &u),
                            tn(n).name(a),
                            tn(n).name(b)
                        ),
                    );
                }
                if let Some(i) = (0..n).find(|&i| ext[m.stages[n].eta[i]] != u[i]) {
                    fail(
                        "extension",
                        format!(
                            "{}: u*(η({})) = {} ≠ {}",
                            show_u(m, k, &u),
                            var(i),
                            tn(k).name(ext[m.stages[n].eta[i]]),
                            tn(k).name(u[i])
                        ),
                    );
                }
                for p in 0..=big_n {
                    for v in functions(k, tn(p).len()) {
                        let v_ext = m.extension(k, p, &v).expect("shape checked");
                        let composite: Vec<usize> = u.iter().map(|&t| v_ext[t]).collect();
                        let lhs = m.extension(n, p, &composite).expect("shape checked");
                        if let Some(s) = (0..tn(n).len()).find(|&s| lhs[s] != v_ext[ext[s]]) {
                            fail(
                                "associativity",
                                format!("{}, {} at {}", show_u(m, k, &u), show_u(m, p, &v), tn(n).name(s)),
                            );
                        }
                    }
                }
            }
            // Enrichment: compare extensions of pointwise-ordered mappings.
            let all: Vec<Vec<usize>> = functions(n, tn(k).len()).collect();
            for u in &all {
                for w in &all {
                    if u == w || !u.iter().zip(w).all(|(&a, &b)| tn(k).le(a, b)) {
                        continue;
                    }
                    let eu = m.extension(n, k, u).expect("shape checked");
                    let ew = m.extension(n, k, w).expect("shape checked");
                    if let Some(s) = (0..tn(n).len()).find(|&s| !tn(k).le(eu[s], ew[s])) {
                        fail(
                            "enrichment",
                            format!("{} ⊑ {} but not at {}", show_u(m, k, u), show_u(m, k, w), tn(n).name(s)),
                        );
                    }
                }
            }
        }
        let id: Vec<usize> = m.stages[n].eta.clone();
        let ext = m.extension(n, n, &id).expect("shape checked");
        if let Some(s) = (0..tn(n).len()).find(|&s| ext[s] != s) {
            fail(
                "unit",
                format!("η_{n}* sends {} to {}", tn(n).name(s), tn(n).name(ext[s])),
            );
        }
    }
    ValidationReport { violations }
}

fn require_valid(m: &SFMonadPresentation) -> Result<()> {
    let report = validate_presentation(m);
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::PreconditionFailed(format!(
            "presentation `{}` violates {v}",
            m.name
        ))),
    }
}

/// `n`-ary symbols are the elements of `T_n`, named `σ/n`.
pub fn associated_signature(m: &SFMonadPresentation) -> Signature {
    let mut map = BTreeMap::new();
    for (n, st) in m.stages.iter().enumerate() {
        for name in st.poset.elements() {
            map.insert(symbol(n, name), n);
        }
    }
    Signature::from_map(map)
}

fn generic(m: &SFMonadPresentation, n: usize, s: usize) -> ExtendedTerm {
    let name = symbol(n, m.stages[n].poset.name(s));
    ExtendedTerm::comp(&name, (0..n).map(|i| ExtendedTerm::var(&var(i))).collect())
}

/// Order inequations `σ ⊑ τ` for strict pairs in each `T_n`, then the
/// substitution equations `u*(σ)(x..) = σ(u(x0)(x..), …)` for all
/// `u : V_n → T_m`, then the projections `η(xᵢ)(x..) = xᵢ`.
pub fn associated_equations(m: &SFMonadPresentation) -> Vec<Equation> {
    let big_n = m.max_arity();
    let mut out = Vec::new();
    for n in 0..=big_n {
        for (s, t) in m.stages[n].poset.strict_pairs() {
            out.push(encode_inequation(generic(m, n, s), generic(m, n, t)));
        }
    }
    for n in 0..=big_n {
        for k in 0..=big_n {
            for u in functions(n, m.stages[k].poset.len()) {
                let ext = &m.extend[&(n, k)][encode_tuple(&u, m.stages[k].poset.len())];
                for (s, &e) in ext.iter().enumerate() {
                    let lhs = generic(m, k, e);
                    let args = u.iter().map(|&t| generic(m, k, t)).collect();
                    let rhs = ExtendedTerm::comp(&symbol(n, m.stages[n].poset.name(s)), args);
                    out.push(Equation::new(lhs, rhs));
                }
            }
        }
    }
    for n in 0..=big_n {
        for i in 0..n {
            out.push(Equation::new(
                generic(m, n, m.stages[n].eta[i]),
                ExtendedTerm::var(&var(i)),
            ));
        }
    }
    out
}

pub fn associated_presentation(m: &SFMonadPresentation) -> VarietyPresentation {
    VarietyPresentation::new(associated_signature(m), associated_equations(m))
        .expect("equations are built over the associated signature")
}

/// `ev[n][σ][a]`, with `a : V_n → A` indexed by [`encode_tuple`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EMAlgebraData {
    pub carrier: Arc<FinitePoset>,
    pub ev: Vec<Vec<Vec<usize>>>,
}

/// The associated algebra `σ_A(a) = ev_n(σ, a)`, after checking the unit,
/// substitution and monotonicity conditions on `D`.
pub fn em_to_sigma_algebra(m: &SFMonadPresentation, d: &EMAlgebraData) -> Result<ContinuousAlgebra> {
    let big_n = m.max_arity();
    let size = d.carrier.len();
    let bad = |msg: String| Err(Error::InvalidEmData(msg));
    if d.ev.len() != big_n + 1 {
        return bad(format!("expected evaluations for arities 0..={big_n}"));
    }
    for n in 0..=big_n {
        if d.ev[n].len() != m.stages[n].poset.len() {
            return bad(format!("arity {n}: one table per element of T_{n} expected"));
        }
        for table in &d.ev[n] {
            if table.len() != count(size, n) || table.iter().any(|&v| v >= size) {
                return bad(format!("arity {n}: malformed evaluation table"));
            }
        }
    }
    let a_name = |v: usize| d.carrier.name(v).to_owned();
    for n in 0..=big_n {
        let tn = &m.stages[n].poset;
        for a in 0..count(size, n) {
            let args = decode_tuple(a, size, n);
            for (i, &e) in m.stages[n].eta.iter().enumerate() {
                if d.ev[n][e][a] != args[i] {
                    return bad(format!("unit fails at arity {n}, variable {}", var(i)));
                }
            }
            for (s, t) in tn.strict_pairs() {
                if !d.carrier.le(d.ev[n][s][a], d.ev[n][t][a]) {
                    return bad(format!(
                        "{} ⊑ {} in T_{n} but evaluations are not ordered",
                        tn.name(s),
                        tn.name(t)
                    ));
                }
            }
        }
        for k in 0..=big_n {
            let tk = &m.stages[k].poset;
            for u in functions(n, tk.len()) {
                let ext = &m.extend[&(n, k)][encode_tuple(&u, tk.len())];
                for a in 0..count(size, k) {
                    let inner: Vec<usize> = u.iter().map(|&t| d.ev[k][t][a]).collect();
                    let inner_idx = encode_tuple(&inner, size);
                    for (s, &e) in ext.iter().enumerate() {
                        if d.ev[k][e][a] != d.ev[n][s][inner_idx] {
                            let args: Vec<String> = decode_tuple(a, size, k).into_iter().map(a_name).collect();
                            return bad(format!(
                                "substitution fails for {} at {} with arguments ({})",
                                show_u(m, k, &u),
                                tn.name(s),
                                args.join(",")
                            ));
                        }
                    }
                }
            }
        }
    }
    let mut ops = BTreeMap::new();
    for (n, st) in m.stages.iter().enumerate() {
        for (s, name) in st.poset.elements().iter().enumerate() {
            ops.insert(symbol(n, name), OpTable::new(n, size, d.ev[n][s].clone())?);
        }
    }
    ContinuousAlgebra::new(associated_signature(m), d.carrier.clone(), ops).map_err(|e| match e {
        Error::NotMonotoneOperation { symbol, witness } => {
            Error::InvalidEmData(format!("`{symbol}` is not monotone at {witness}"))
        }
        other => other,
    })
}

/// Reads the evaluation data back off an algebra over the associated
/// signature.
pub fn sigma_to_em_data(m: &SFMonadPresentation, a: &ContinuousAlgebra) -> Result<EMAlgebraData> {
    if *a.signature() != associated_signature(m) {
        return Err(Error::SignatureMismatch(
            "algebra is not over the associated signature".into(),
        ));
    }
    let ev = m
        .stages
        .iter()
        .enumerate()
        .map(|(n, st)| {
            st.poset
                .elements()
                .iter()
                .map(|name| a.table(&symbol(n, name)).expect("signature checked").values().to_vec())
                .collect()
        })
        .collect();
    Ok(EMAlgebraData {
        carrier: a.carrier().clone(),
        ev,
    })
}

/// `T_n` as an algebra over the associated signature:
/// `σ/k(t₀, …, t_{k-1}) = u*(σ)` with `u(xⱼ) = tⱼ`.
pub fn free_algebra(m: &SFMonadPresentation, n: usize) -> Result<ContinuousAlgebra> {
    let tn = m.stage(n)?.poset.clone();
    let mut ops = BTreeMap::new();
    for (k, st) in m.stages.iter().enumerate() {
        for (s, name) in st.poset.elements().iter().enumerate() {
            let table = OpTable::from_fn(k, tn.len(), |args| m.extend[&(k, n)][encode_tuple(args, tn.len())][s]);
            ops.insert(symbol(k, name), table);
        }
    }
    ContinuousAlgebra::new(associated_signature(m), tn, ops)
}

/// `f̄(σ) = σ_A(f(x₀), …, f(x_{n-1}))`.
pub fn free_extension(m: &SFMonadPresentation, n: usize, a: &ContinuousAlgebra, f: &[usize]) -> Result<MonotoneMap> {
    let tn = m.stage(n)?.poset.clone();
    if f.len() != n || f.iter().any(|&v| v >= a.len()) {
        return Err(Error::DomainMismatch(format!(
            "f must map {n} variables into the carrier"
        )));
    }
    if let Some((i, env)) = variety_witness(a, &associated_presentation(m))? {
        return Err(Error::NotInVariety(format!("equation #{i} fails under {env:?}")));
    }
    extension_unchecked(&tn, n, a, f)
}

fn extension_unchecked(tn: &Arc<FinitePoset>, n: usize, a: &ContinuousAlgebra, f: &[usize]) -> Result<MonotoneMap> {
    let assign = tn
        .elements()
        .iter()
        .map(|name| a.apply(&symbol(n, name), f))
        .collect::<Result<Vec<_>>>()?;
    MonotoneMap::new(tn.clone(), a.carrier().clone(), assign)
}

/// For every algebra and every `f : V_n → A`: the extension `f̄` exists (is
/// a monotone homomorphism with `f̄ ∘ η = f`) and is the only monotone
/// homomorphism extending `f`. Algebras outside the variety are rejected.
pub fn verify_freeness(
    m: &SFMonadPresentation,
    n: usize,
    algebras: &[ContinuousAlgebra],
    exec: Exec,
) -> Result<Report> {
    require_valid(m)?;
    let presentation = associated_presentation(m);
    for (idx, a) in algebras.iter().enumerate() {
        if let Some((i, env)) = variety_witness(a, &presentation)? {
            return Err(Error::NotInVariety(format!(
                "algebra #{idx} fails equation #{i} under {env:?}"
            )));
        }
    }
    let free = free_algebra(m, n)?;
    let tn = free.carrier().clone();
    let eta = &m.stage(n)?.eta;
    let instances: Vec<(usize, Vec<usize>)> = algebras
        .iter()
        .enumerate()
        .flat_map(|(idx, a)| functions(n, a.len()).map(move |f| (idx, f)))
        .collect();
    let outcomes = exec.map(&instances, |(idx, f)| {
        let a = &algebras[*idx];
        let witness = |problem: &str| {
            Some(json!({
                "monad": m.name(),
                "arity": n,
                "algebra": idx,
                "f": f.iter().map(|&v| a.carrier().name(v)).collect::<Vec<_>>(),
                "problem": problem,
            }))
        };
        let fbar = match extension_unchecked(&tn, n, a, f) {
            Ok(map) => map,
            Err(_) => return witness("extension is not monotone"),
        };
        if (0..n).any(|i| fbar.apply(eta[i]) != f[i]) {
            return witness("extension does not restrict to f");
        }
        let hom_to = |h: &MonotoneMap| {
            let h = MonotoneMap::new(free.carrier().clone(), a.carrier().clone(), h.assignment().to_vec())
                .expect("monotone");
            is_homomorphism(&h, &free, a).expect("same signature and carriers")
        };
        if !hom_to(&fbar) {
            return witness("extension is not a homomorphism");
        }
        let others = monotone_maps(&tn, a.carrier())
            .into_iter()
            .filter(|h| (0..n).all(|i| h.apply(eta[i]) == f[i]) && h.assignment() != fbar.assignment())
            .filter(|h| hom_to(h))
            .count();
        if others > 0 {
            return witness("extension is not unique");
        }
        None
    });
    Ok(Report::from_outcomes("monad-freeness", outcomes))
}

struct Solver<'a> {
    size: usize,
    offsets: Vec<Vec<usize>>,
    values: Vec<Option<usize>>,
    trail: Vec<usize>,
    /// Constraints touching each cell.
    watch: Vec<Vec<usize>>,
    constraints: Vec<Constraint>,
    carrier: &'a FinitePoset,
}

enum Constraint {
    Fixed(usize, usize),
    Le(usize, usize),
    /// `lhs = outer_base + encode(values of inner)`.
    Subst {
        lhs: usize,
        inner: Vec<usize>,
        outer_base: usize,
    },
}

impl Solver<'_> {
    fn cell(&self, n: usize, s: usize, a: usize) -> usize {
        self.offsets[n][s] + a
    }

    fn assign(&mut self, cell: usize, v: usize) -> bool {
        match self.values[cell] {
            Some(w) => w == v,
            None => {
                self.values[cell] = Some(v);
                self.trail.push(cell);
                self.propagate(cell)
            }
        }
    }

    fn propagate(&mut self, cell: usize) -> bool {
        let mut queue = vec![cell];
        while let Some(c) = queue.pop() {
            for k in 0..self.watch[c].len() {
                let ci = self.watch[c][k];
                let forced = match &self.constraints[ci] {
                    Constraint::Fixed(x, v) => match self.values[*x] {
                        Some(w) if w != *v => return false,
                        Some(_) => None,
                        None => Some((*x, *v)),
                    },
                    Constraint::Le(x, y) => match (self.values[*x], self.values[*y]) {
                        (Some(a), Some(b)) if !self.carrier.le(a, b) => return false,
                        _ => None,
                    },
                    Constraint::Subst { lhs, inner, outer_base } => {
                        let Some(l) = self.values[*lhs] else { continue };
                        let args: Option<Vec<usize>> = inner.iter().map(|&i| self.values[i]).collect();
                        let Some(args) = args else { continue };
                        let outer = outer_base + encode_tuple(&args, self.size);
                        match self.values[outer] {
                            Some(w) if w != l => return false,
                            Some(_) => None,
                            None => Some((outer, l)),
                        }
                    }
                };
                if let Some((x, v)) = forced {
                    self.values[x] = Some(v);
                    self.trail.push(x);
                    queue.push(x);
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let c = self.trail.pop().unwrap();
            self.values[c] = None;
        }
    }

    fn search(&mut self, out: &mut Vec<Vec<usize>>) {
        let Some(cell) = self.values.iter().position(Option::is_none) else {
            out.push(self.values.iter().map(|v| v.unwrap()).collect());
            return;
        };
        for v in 0..self.size {
            let mark = self.trail.len();
            if self.assign(cell, v) {
                self.search(out);
            }
            self.undo(mark);
        }
    }
}

/// Every algebra of the associated variety on `carrier`, as evaluation data
/// (found by constraint propagation over all ground instances of the
/// associated equations and of monotonicity).
pub fn variety_algebras_on(m: &SFMonadPresentation, carrier: &Arc<FinitePoset>) -> Vec<EMAlgebraData> {
    let big_n = m.max_arity();
    let size = carrier.len();
    let mut offsets = Vec::new();
    let mut total = 0;
    for (n, st) in m.stages.iter().enumerate() {
        let mut row = Vec::new();
        for _ in 0..st.poset.len() {
            row.push(total);
            total += count(size, n);
        }
        offsets.push(row);
    }
    let mut solver = Solver {
        size,
        offsets,
        values: vec![None; total],
        trail: Vec::new(),
        watch: vec![Vec::new(); total],
        constraints: Vec::new(),
        carrier,
    };
    let add = |solver: &mut Solver, c: Constraint, cells: Vec<usize>| {
        let id = solver.constraints.len();
        solver.constraints.push(c);
        for x in cells {
            solver.watch[x].push(id);
        }
    };
    let covers = carrier.covers();
    for n in 0..=big_n {
        let tn = m.stages[n].poset.clone();
        for a in 0..count(size, n) {
            let args = decode_tuple(a, size, n);
            for (i, &e) in m.stages[n].eta.iter().enumerate() {
                let c = solver.cell(n, e, a);
                add(&mut solver, Constraint::Fixed(c, args[i]), vec![c]);
            }
            for (s, t) in tn.strict_pairs() {
                let (x, y) = (solver.cell(n, s, a), solver.cell(n, t, a));
                add(&mut solver, Constraint::Le(x, y), vec![x, y]);
            }
            for j in 0..n {
                for &(lo, hi) in &covers {
                    if args[j] != lo {
                        continue;
                    }
                    let mut up = args.clone();
                    up[j] = hi;
                    let b = encode_tuple(&up, size);
                    for s in 0..tn.len() {
                        let (x, y) = (solver.cell(n, s, a), solver.cell(n, s, b));
                        add(&mut solver, Constraint::Le(x, y), vec![x, y]);
                    }
                }
            }
        }
        for k in 0..=big_n {
            let tk = m.stages[k].poset.len();
            for u in functions(n, tk) {
                let ext = m.extend[&(n, k)][encode_tuple(&u, tk)].clone();
                for a in 0..count(size, k) {
                    let inner: Vec<usize> = u.iter().map(|&t| solver.cell(k, t, a)).collect();
                    for (s, &target) in ext.iter().enumerate() {
                        let lhs = solver.cell(k, target, a);
                        let outer_base = solver.offsets[n][s];
                        let mut cells = inner.clone();
                        cells.push(lhs);
                        add(
                            &mut solver,
                            Constraint::Subst {
                                lhs,
                                inner: inner.clone(),
                                outer_base,
                            },
                            cells,
                        );
                    }
                }
            }
        }
    }
    // Fixed constraints first, so they propagate before any branching.
    let fixed: Vec<(usize, usize)> = solver
        .constraints
        .iter()
        .filter_map(|c| {
            if let Constraint::Fixed(x, v) = c {
                Some((*x, *v))
            } else {
                None
            }
        })
        .collect();
    let mut solutions = Vec::new();
    if fixed.into_iter().all(|(x, v)| solver.assign(x, v)) {
        solver.search(&mut solutions);
    }
    solutions
        .into_iter()
        .map(|values| {
            let ev = m
                .stages
                .iter()
                .enumerate()
                .map(|(n, st)| {
                    (0..st.poset.len())
                        .map(|s| {
                            let start = solver.offsets[n][s];
                            values[start..start + count(size, n)].to_vec()
                        })
                        .collect()
                })
                .collect();
            EMAlgebraData {
                carrier: carrier.clone(),
                ev,
            }
        })
        .collect()
}

/// All associated-variety algebras with carriers of size at most `max`
/// (carriers up to isomorphism).
pub fn variety_algebras(m: &SFMonadPresentation, max: usize) -> Result<Vec<ContinuousAlgebra>> {
    let mut out = Vec::new();
    for p in posets_up_to(max) {
        for d in variety_algebras_on(m, &p) {
            out.push(em_to_sigma_algebra(m, &d)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::in_variety;

    fn identity(n: usize) -> SFMonadPresentation {
        SFMonadPresentation::adjoin_constants("identity", n, &[], &[], &[]).unwrap()
    }

    fn lift(n: usize) -> SFMonadPresentation {
        SFMonadPresentation::adjoin_constants("lift", n, &["bot"], &[], &["bot"]).unwrap()
    }

    #[test]
    fn fixture_monads_validate() {
        assert!(validate_presentation(&identity(2)).is_valid());
        assert!(validate_presentation(&lift(2)).is_valid());
        let naive =
            SFMonadPresentation::adjoin_constants("chain", 2, &["b0", "b1"], &[("b0", "b1")], &["b0", "b1"]).unwrap();
        let report = validate_presentation(&naive);
        assert!(report.violations.iter().any(|v| v.law == "monotone"));
    }

    #[test]
    fn broken_extension_is_reported() {
        let base = lift(1);
        let broken = SFMonadPresentation::from_fn("collapsed", base.stages().to_vec(), |_, _, _, _| 0).unwrap();
        let report = validate_presentation(&broken);
        assert!(report.violations.iter().any(|v| v.law == "extension"));
        assert!(report.violations.iter().any(|v| v.law == "unit"));
    }

    #[test]
    fn kleisli_examples() {
        let m = lift(2);
        let eta = m.stage(2).unwrap().eta.clone();
        assert!(kleisli_extend(&m, 2, 2, &eta).unwrap().is_isomorphism());
        // All variables to bottom: constant bottom.
        let f = kleisli_extend(&m, 2, 1, &[0, 0]).unwrap();
        assert_eq!(f.assignment(), &[0, 0, 0]);
        assert_eq!(kleisli_extend(&m, 3, 1, &[0, 0, 0]), Err(Error::ArityOutOfRange(3, 2)));
    }

    #[test]
    fn associated_signature_sizes() {
        let arities = |m: &SFMonadPresentation| {
            let sig = associated_signature(m);
            (0..=2)
                .map(|n| sig.symbols().filter(|&(_, k)| k == n).count())
                .collect::<Vec<_>>()
        };
        assert_eq!(arities(&identity(2)), vec![0, 1, 2]);
        assert_eq!(arities(&lift(2)), vec![1, 2, 3]);
    }

    #[test]
    fn identity_equation_count() {
        // Oracle: Σ_{n,m} |T_n| · |T_m|^n substitution equations plus n
        // projections per n; T_n is discrete so no inequations.
        for big_n in 0..=3 {
            let m = identity(big_n);
            let mut expected = 0;
            for n in 0..=big_n {
                for k in 0..=big_n {
                    expected += n * count(k, n);
                }
                expected += n;
            }
            assert_eq!(associated_equations(&m).len(), expected);
        }
    }

    #[test]
    fn lift_equations_include_bottom_inequation() {
        let eqs = associated_equations(&lift(1));
        let ineq = encode_inequation(
            ExtendedTerm::comp("bot/1", vec![ExtendedTerm::var("x0")]),
            ExtendedTerm::comp("x0/1", vec![ExtendedTerm::var("x0")]),
        );
        assert!(eqs.contains(&ineq));
    }

    #[test]
    fn free_algebras_lie_in_the_variety() {
        for m in [identity(2), lift(2)] {
            let v = associated_presentation(&m);
            for n in 0..=2 {
                let free = free_algebra(&m, n).unwrap();
                assert!(in_variety(&free, &v).unwrap(), "{} T_{n}", m.name());
            }
        }
    }

    #[test]
    fn solver_agrees_with_filtering() {
        let m = lift(1);
        let v = associated_presentation(&m);
        let sig = associated_signature(&m);
        for p in posets_up_to(3) {
            let solved: Vec<ContinuousAlgebra> = variety_algebras_on(&m, &p)
                .iter()
                .map(|d| em_to_sigma_algebra(&m, d).unwrap())
                .collect();
            let filtered: Vec<ContinuousAlgebra> = crate::enumerate::algebras_on(&sig, &p, 1 << 16)
                .unwrap()
                .into_iter()
                .filter(|a| in_variety(a, &v).unwrap())
                .collect();
            assert_eq!(solved.len(), filtered.len());
            for a in &solved {
                assert!(filtered.iter().any(|b| b.tables() == a.tables()));
            }
        }
    }

    #[test]
    fn lift_algebras_have_bottom_constants() {
        let m = lift(2);
        let c2 = Arc::new(FinitePoset::chain(2));
        let found = variety_algebras_on(&m, &c2);
        assert_eq!(found.len(), 1);
        let a = em_to_sigma_algebra(&m, &found[0]).unwrap();
        assert_eq!(a.apply("bot/0", &[]).unwrap(), 0);
        assert_eq!(a.apply("bot/2", &[1, 1]).unwrap(), 0);
        // A discrete carrier has no bottom, so no lift algebra lives on it.
        let d2 = Arc::new(FinitePoset::discrete(&["a", "b"]).unwrap());
        assert!(variety_algebras_on(&m, &d2).is_empty());
    }

    #[test]
    fn freeness_on_small_algebras() {
        for m in [identity(2), lift(2)] {
            let algebras = variety_algebras(&m, 2).unwrap();
            for n in 0..=2 {
                let report = verify_freeness(&m, n, &algebras, Exec::Sequential).unwrap();
                assert!(report.all_passed(), "{report:?}");
            }
        }
    }

    #[test]
    fn free_extension_of_eta_is_identity() {
        let m = lift(2);
        let free = free_algebra(&m, 2).unwrap();
        let eta = m.stage(2).unwrap().eta.clone();
        assert!(free_extension(&m, 2, &free, &eta).unwrap().is_isomorphism());
    }

    #[test]
    fn algebras_outside_the_variety_are_rejected() {
        let m = lift(1);
        let sig = associated_signature(&m);
        let c2 = Arc::new(FinitePoset::chain(2));
        // bot/0 = top violates bot ⊑ x0 at x0 = bottom.
        let a = ContinuousAlgebra::from_fn(sig, c2, |s, args| match s {
            "bot/0" | "bot/1" => 1,
            _ => args[0],
        })
        .unwrap();
        assert!(matches!(free_extension(&m, 1, &a, &[0]), Err(Error::NotInVariety(_))));
        assert!(matches!(
            verify_freeness(&m, 1, &[a], Exec::Sequential),
            Err(Error::NotInVariety(_))
        ));
    }

    #[test]
    fn em_data_is_checked() {
        let m = lift(1);
        let c2 = Arc::new(FinitePoset::chain(2));
        let mut d = variety_algebras_on(&m, &c2).pop().unwrap();
        d.ev[1][0] = vec![1, 1];
        assert!(matches!(em_to_sigma_algebra(&m, &d), Err(Error::InvalidEmData(_))));
    }
}
