//! Finite posets, monotone maps and the order-theoretic constructions the
//! colimit and algebra layers are built from.
//!
//! Every poset here is finite, so several notions coincide: every monotone map
//! is continuous, every subset is closed under joins of ω-chains, and an
//! ω-dense image is simply a surjective one. The operations below exploit
//! those coincidences and say so where it matters.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Square boolean relation stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub(crate) fn identity(n: usize) -> Self {
        let mut bits = vec![false; n * n];
        for i in 0..n {
            bits[i * n + i] = true;
        }
        Relation { n, bits }
    }

    #[inline]
    pub(crate) fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.n + j] = true;
    }

    /// Warshall closure, in place.
    pub(crate) fn close_transitively(&mut self) {
        let n = self.n;
        for k in 0..n {
            for i in 0..n {
                if !self.bits[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if self.bits[k * n + j] {
                        self.bits[i * n + j] = true;
                    }
                }
            }
        }
    }
}

fn index_elements(elements: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if index.insert(e.clone(), i).is_some() {
            return Err(Error::DuplicateElement(e.clone()));
        }
    }
    Ok(index)
}

fn resolve_pairs(index: &HashMap<String, usize>, pairs: &[(String, String)]) -> Result<Vec<(usize, usize)>> {
    pairs
        .iter()
        .map(|(a, b)| {
            let i = *index.get(a).ok_or_else(|| Error::UnknownElement(a.clone()))?;
            let j = *index.get(b).ok_or_else(|| Error::UnknownElement(b.clone()))?;
            Ok((i, j))
        })
        .collect()
}

/// A finite partially ordered set with opaque, printable element names.
///
/// Elements are addressed by their position (`usize`) in [`FinitePoset::elements`].
#[derive(Clone)]
pub struct FinitePoset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    le: Relation,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.le == other.le
    }
}

impl Eq for FinitePoset {}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .strict_pairs()
            .map(|(i, j)| format!("{}<{}", self.elements[i], self.elements[j]))
            .collect();
        f.debug_struct("FinitePoset")
            .field("elements", &self.elements)
            .field("lt", &pairs)
            .finish()
    }
}

impl FinitePoset {
    /// Builds a poset from element names and generating pairs `(a, b)` meaning
    /// `a ⊑ b`; the order is the reflexive-transitive closure of the pairs.
    pub fn new<S: AsRef<str>>(elements: &[S], generating_pairs: &[(S, S)]) -> Result<Self> {
        let elements: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
        let pairs: Vec<(String, String)> = generating_pairs
            .iter()
            .map(|(a, b)| (a.as_ref().to_owned(), b.as_ref().to_owned()))
            .collect();
        Self::from_names(elements, &pairs)
    }

    pub fn from_names(elements: Vec<String>, generating_pairs: &[(String, String)]) -> Result<Self> {
        let index = index_elements(&elements)?;
        let pairs = resolve_pairs(&index, generating_pairs)?;
        let mut le = Relation::identity(elements.len());
        for (i, j) in pairs {
            le.set(i, j);
        }
        le.close_transitively();
        let poset = FinitePoset { elements, index, le };
        poset.check_antisymmetric()?;
        Ok(poset)
    }

    /// Builds a poset from a full relation given by a predicate; every axiom is
    /// checked, nothing is closed.
    pub fn from_relation(elements: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let index = index_elements(&elements)?;
        let n = elements.len();
        let mut rel = Relation {
            n,
            bits: vec![false; n * n],
        };
        for i in 0..n {
            for j in 0..n {
                if le(i, j) {
                    rel.set(i, j);
                }
            }
        }
        let poset = FinitePoset {
            elements,
            index,
            le: rel,
        };
        poset.check_axioms()?;
        Ok(poset)
    }

    /// Construction for relations that are posets by construction (products,
    /// subposets, quotients).
    pub(crate) fn from_relation_unchecked(elements: Vec<String>, le: Relation) -> Self {
        let index = index_elements(&elements).expect("generated element names are distinct");
        debug_assert!(FinitePoset {
            elements: elements.clone(),
            index: index.clone(),
            le: le.clone()
        }
        .check_axioms()
        .is_ok());
        FinitePoset { elements, index, le }
    }

    fn check_antisymmetric(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.le(i, j) && self.le(j, i) {
                    return Err(Error::AntisymmetryViolation(
                        self.elements[i].clone(),
                        self.elements[j].clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Checks reflexivity, transitivity and antisymmetry of the stored relation.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if !self.le(i, i) {
                return Err(Error::ReflexivityViolation(self.elements[i].clone()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !self.le(i, j) {
                    continue;
                }
                for k in 0..n {
                    if self.le(j, k) && !self.le(i, k) {
                        return Err(Error::TransitivityViolation(
                            self.elements[i].clone(),
                            self.elements[j].clone(),
                            self.elements[k].clone(),
                        ));
                    }
                }
            }
        }
        self.check_antisymmetric()
    }

    pub fn empty() -> Self {
        FinitePoset::from_relation_unchecked(Vec::new(), Relation::identity(0))
    }

    pub fn singleton(name: &str) -> Self {
        FinitePoset::from_relation_unchecked(vec![name.to_owned()], Relation::identity(1))
    }

    pub fn discrete<S: AsRef<str>>(elements: &[S]) -> Result<Self> {
        Self::new::<S>(elements, &[])
    }

    /// The chain `0 ⊑ 1 ⊑ … ⊑ n-1`.
    pub fn chain(n: usize) -> Self {
        let elements: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        FinitePoset::from_relation(elements, |i, j| i <= j).expect("a chain is a poset")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownElement(name.to_owned()))
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le.get(i, j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le(i, j) || self.le(j, i)
    }

    pub fn is_discrete(&self) -> bool {
        self.strict_pairs().next().is_none()
    }

    /// All pairs `(i, j)` with `i ⊑ j`.
    pub fn order_relation(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| (0..n).filter(move |&j| self.le(i, j)).map(move |j| (i, j)))
    }

    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.order_relation().filter(|(i, j)| i != j)
    }

    /// Generating pairs of the covering relation (the Hasse diagram).
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.strict_pairs()
            .filter(|&(i, j)| !(0..self.len()).any(|k| self.lt(i, k) && self.lt(k, j)))
            .collect()
    }

    pub fn down_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.le(j, i)).collect()
    }

    pub fn up_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.le(i, j)).collect()
    }

    /// Greatest element of a subset, if it has one.
    pub fn maximum(&self, subset: &[usize]) -> Option<usize> {
        subset.iter().copied().find(|&m| subset.iter().all(|&x| self.le(x, m)))
    }

    /// Least upper bound of a subset, if it exists.
    pub fn join(&self, subset: &[usize]) -> Option<usize> {
        let uppers: Vec<usize> = (0..self.len())
            .filter(|&u| subset.iter().all(|&x| self.le(x, u)))
            .collect();
        uppers.iter().copied().find(|&u| uppers.iter().all(|&v| self.le(u, v)))
    }

    /// Nonempty and every pair has an upper bound inside the subset.
    pub fn is_directed(&self, subset: &[usize]) -> bool {
        !subset.is_empty()
            && subset.iter().all(|&x| {
                subset
                    .iter()
                    .all(|&y| subset.iter().any(|&z| self.le(x, z) && self.le(y, z)))
            })
    }

    pub fn is_down_closed(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.len()];
        for &x in subset {
            member[x] = true;
        }
        subset
            .iter()
            .all(|&x| (0..self.len()).all(|y| !self.le(y, x) || member[y]))
    }

    /// The subposet on `subset` (kept in the given order) with the induced
    /// order, together with its inclusion.
    pub fn induced(self: &Arc<Self>, subset: &[usize]) -> (Arc<FinitePoset>, MonotoneMap) {
        let elements = subset.iter().map(|&i| self.elements[i].clone()).collect();
        let mut le = Relation::identity(subset.len());
        for (a, &i) in subset.iter().enumerate() {
            for (b, &j) in subset.iter().enumerate() {
                if self.le(i, j) {
                    le.set(a, b);
                }
            }
        }
        let sub = Arc::new(FinitePoset::from_relation_unchecked(elements, le));
        let inclusion = MonotoneMap::new_unchecked(sub.clone(), self.clone(), subset.to_vec());
        (sub, inclusion)
    }

    /// Same poset with elements renamed; the order is carried along positions.
    pub fn renamed(&self, names: Vec<String>) -> Result<FinitePoset> {
        assert_eq!(names.len(), self.len());
        let index = index_elements(&names)?;
        Ok(FinitePoset {
            elements: names,
            index,
            le: self.le.clone(),
        })
    }

    /// Some order isomorphism `self → other` (as an assignment), if one exists.
    pub fn find_isomorphism(&self, other: &FinitePoset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let profile = |p: &FinitePoset, i: usize| (p.down_set(i).len(), p.up_set(i).len());
        let ours: Vec<_> = (0..n).map(|i| profile(self, i)).collect();
        let theirs: Vec<_> = (0..n).map(|i| profile(other, i)).collect();
        {
            let mut a = ours.clone();
            let mut b = theirs.clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return None;
            }
        }
        let mut assignment = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn extend(
            i: usize,
            src: &FinitePoset,
            dst: &FinitePoset,
            ours: &[(usize, usize)],
            theirs: &[(usize, usize)],
            assignment: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if i == src.len() {
                return true;
            }
            for j in 0..dst.len() {
                if used[j] || ours[i] != theirs[j] {
                    continue;
                }
                let consistent = (0..i).all(|k| {
                    let t = assignment[k];
                    src.le(k, i) == dst.le(t, j) && src.le(i, k) == dst.le(j, t)
                });
                if !consistent {
                    continue;
                }
                assignment[i] = j;
                used[j] = true;
                if extend(i + 1, src, dst, ours, theirs, assignment, used) {
                    return true;
                }
                used[j] = false;
            }
            false
        }
        extend(0, self, other, &ours, &theirs, &mut assignment, &mut used).then_some(assignment)
    }

    pub fn is_isomorphic(&self, other: &FinitePoset) -> bool {
        self.find_isomorphism(other).is_some()
    }
}

/// A reflexive and transitive relation; antisymmetry is not required.
#[derive(Clone, Debug)]
pub struct FinitePreorder {
    elements: Vec<String>,
    le: Relation,
}

impl FinitePreorder {
    /// Reflexive-transitive closure of the generating pairs.
    pub fn new<S: AsRef<str>>(elements: &[S], generating_pairs: &[(S, S)]) -> Result<Self> {
        let elements: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
        let index = index_elements(&elements)?;
        let pairs: Vec<(String, String)> = generating_pairs
            .iter()
            .map(|(a, b)| (a.as_ref().to_owned(), b.as_ref().to_owned()))
            .collect();
        let pairs = resolve_pairs(&index, &pairs)?;
        Ok(Self::generated(elements, pairs))
    }

    pub(crate) fn generated(elements: Vec<String>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut le = Relation::identity(elements.len());
        for (i, j) in pairs {
            le.set(i, j);
        }
        le.close_transitively();
        FinitePreorder { elements, le }
    }

    /// The preorder underlying a poset.
    pub fn from_poset(p: &FinitePoset) -> Self {
        FinitePreorder {
            elements: p.elements.clone(),
            le: p.le.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le.get(i, j)
    }
}

/// Result of [`posetal_reflection`]: the quotient poset and the quotient map
/// given as the class index of every preorder element.
#[derive(Clone, Debug)]
pub struct Reflection {
    pub poset: Arc<FinitePoset>,
    pub quotient: Vec<usize>,
}

/// Name of a class of collapsed elements: member names sorted and comma-joined.
pub fn class_name<'a>(members: impl IntoIterator<Item = &'a str>) -> String {
    let mut names: Vec<&str> = members.into_iter().collect();
    names.sort_unstable();
    names.join(",")
}

/// Quotient of a preorder by `⊑ ∩ ⊒` with the induced order.
///
/// Classes are listed in order of their first member and named by
/// [`class_name`].
pub fn posetal_reflection(p: &FinitePreorder) -> Reflection {
    let n = p.len();
    let mut quotient = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if quotient[i] != usize::MAX {
            continue;
        }
        let class = reps.len();
        reps.push(i);
        let mut these = Vec::new();
        for (j, q) in quotient.iter_mut().enumerate().skip(i) {
            if *q == usize::MAX && p.le(i, j) && p.le(j, i) {
                *q = class;
                these.push(j);
            }
        }
        members.push(these);
    }
    let names = members
        .iter()
        .map(|m| class_name(m.iter().map(|&i| p.elements[i].as_str())))
        .collect();
    let k = reps.len();
    let mut le = Relation::identity(k);
    for a in 0..k {
        for b in 0..k {
            if p.le(reps[a], reps[b]) {
                le.set(a, b);
            }
        }
    }
    Reflection {
        poset: Arc::new(FinitePoset::from_relation_unchecked(names, le)),
        quotient,
    }
}

/// A monotone map between finite posets.
#[derive(Clone)]
pub struct MonotoneMap {
    dom: Arc<FinitePoset>,
    cod: Arc<FinitePoset>,
    assign: Vec<usize>,
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .assign
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{}->{}", self.dom.name(i), self.cod.name(j)))
            .collect();
        write!(f, "MonotoneMap[{}]", pairs.join(", "))
    }
}

impl PartialEq for MonotoneMap {
    fn eq(&self, other: &Self) -> bool {
        same_poset(&self.dom, &other.dom) && same_poset(&self.cod, &other.cod) && self.assign == other.assign
    }
}

impl Eq for MonotoneMap {}

pub(crate) fn same_poset(a: &Arc<FinitePoset>, b: &Arc<FinitePoset>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl MonotoneMap {
    /// Checked constructor: `assign[i]` is the image of element `i`.
    pub fn new(dom: Arc<FinitePoset>, cod: Arc<FinitePoset>, assign: Vec<usize>) -> Result<Self> {
        if assign.len() != dom.len() {
            return Err(Error::NotTotal(
                dom.elements().get(assign.len()).cloned().unwrap_or_default(),
            ));
        }
        if let Some(&bad) = assign.iter().find(|&&j| j >= cod.len()) {
            return Err(Error::UnknownElement(format!("#{bad}")));
        }
        for (i, j) in dom.strict_pairs() {
            if !cod.le(assign[i], assign[j]) {
                return Err(Error::NotMonotone(
                    dom.name(i).to_owned(),
                    dom.name(j).to_owned(),
                    cod.name(assign[i]).to_owned(),
                    cod.name(assign[j]).to_owned(),
                ));
            }
        }
        Ok(MonotoneMap { dom, cod, assign })
    }

    pub(crate) fn new_unchecked(dom: Arc<FinitePoset>, cod: Arc<FinitePoset>, assign: Vec<usize>) -> Self {
        debug_assert!(MonotoneMap::new(dom.clone(), cod.clone(), assign.clone()).is_ok());
        MonotoneMap { dom, cod, assign }
    }

    /// Builds a map from `(source name, target name)` pairs.
    pub fn from_names<S: AsRef<str>>(dom: Arc<FinitePoset>, cod: Arc<FinitePoset>, pairs: &[(S, S)]) -> Result<Self> {
        let mut assign = vec![usize::MAX; dom.len()];
        for (a, b) in pairs {
            let i = dom.require(a.as_ref())?;
            assign[i] = cod.require(b.as_ref())?;
        }
        if let Some(i) = assign.iter().position(|&j| j == usize::MAX) {
            return Err(Error::NotTotal(dom.name(i).to_owned()));
        }
        MonotoneMap::new(dom, cod, assign)
    }

    pub fn identity(p: &Arc<FinitePoset>) -> Self {
        MonotoneMap {
            dom: p.clone(),
            cod: p.clone(),
            assign: (0..p.len()).collect(),
        }
    }

    pub fn constant(dom: Arc<FinitePoset>, cod: Arc<FinitePoset>, value: usize) -> Self {
        let assign = vec![value; dom.len()];
        MonotoneMap { dom, cod, assign }
    }

    pub fn dom(&self) -> &Arc<FinitePoset> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinitePoset> {
        &self.cod
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assign
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.assign[i]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &MonotoneMap) -> Result<MonotoneMap> {
        if !same_poset(&self.cod, &next.dom) {
            return Err(Error::DomainMismatch(
                "composite: codomain differs from next domain".into(),
            ));
        }
        Ok(MonotoneMap {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            assign: self.assign.iter().map(|&j| next.assign[j]).collect(),
        })
    }

    pub fn image(&self) -> Vec<usize> {
        let mut hit = vec![false; self.cod.len()];
        for &j in &self.assign {
            hit[j] = true;
        }
        (0..self.cod.len()).filter(|&j| hit[j]).collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.cod.len()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.dom.len()
    }

    pub fn is_order_reflecting(&self) -> bool {
        let n = self.dom.len();
        (0..n).all(|i| (0..n).all(|j| !self.cod.le(self.assign[i], self.assign[j]) || self.dom.le(i, j)))
    }

    /// Injective and order-reflecting.
    pub fn is_embedding(&self) -> bool {
        self.is_injective() && self.is_order_reflecting()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_surjective() && self.is_embedding()
    }

    /// `self ⊑ other` pointwise; both maps must be parallel.
    pub fn le_pointwise(&self, other: &MonotoneMap) -> bool {
        self.assign.iter().zip(&other.assign).all(|(&a, &b)| self.cod.le(a, b))
    }

    pub fn is_parallel_to(&self, other: &MonotoneMap) -> bool {
        same_poset(&self.dom, &other.dom) && same_poset(&self.cod, &other.cod)
    }
}

/// Product with projections. Elements are named `(p,q)` and stored in
/// row-major order, `(i, j) ↦ i·|Q| + j`.
pub fn product(p: &Arc<FinitePoset>, q: &Arc<FinitePoset>) -> (Arc<FinitePoset>, MonotoneMap, MonotoneMap) {
    let (m, n) = (p.len(), q.len());
    let mut elements = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            elements.push(format!("({},{})", p.name(i), q.name(j)));
        }
    }
    let mut le = Relation::identity(m * n);
    for a in 0..m * n {
        for b in 0..m * n {
            if p.le(a / n, b / n) && q.le(a % n, b % n) {
                le.set(a, b);
            }
        }
    }
    let prod = Arc::new(FinitePoset::from_relation_unchecked(elements, le));
    let pi0 = MonotoneMap::new_unchecked(prod.clone(), p.clone(), (0..m * n).map(|a| a / n).collect());
    let pi1 = MonotoneMap::new_unchecked(prod.clone(), q.clone(), (0..m * n).map(|a| a % n).collect());
    (prod, pi0, pi1)
}

/// `f × g` between the products built by [`product`].
pub fn product_map(f: &MonotoneMap, g: &MonotoneMap, dom: &Arc<FinitePoset>, cod: &Arc<FinitePoset>) -> MonotoneMap {
    let (m, n) = (f.dom.len(), g.dom.len());
    let n_cod = g.cod.len();
    debug_assert_eq!(dom.len(), m * n);
    debug_assert_eq!(cod.len(), f.cod.len() * n_cod);
    let assign = (0..m * n).map(|a| f.assign[a / n] * n_cod + g.assign[a % n]).collect();
    MonotoneMap::new_unchecked(dom.clone(), cod.clone(), assign)
}

fn tuple_name(parts: &[&str]) -> String {
    format!("({})", parts.join(","))
}

/// Decodes a row-major tuple index of a power `Pⁿ` into coordinates.
pub fn decode_tuple(mut index: usize, base: usize, arity: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in (0..arity).rev() {
        out[slot] = index % base;
        index /= base;
    }
    out
}

pub fn encode_tuple(coords: &[usize], base: usize) -> usize {
    coords.iter().fold(0, |acc, &c| acc * base + c)
}

/// The n-fold power `Pⁿ` with the componentwise order; elements are named
/// `(a,b,…)` and `P⁰` is the one-point poset `()`.
pub fn power(p: &Arc<FinitePoset>, n: usize) -> Arc<FinitePoset> {
    let base = p.len();
    let size = base.pow(n as u32);
    let tuples: Vec<Vec<usize>> = (0..size).map(|t| decode_tuple(t, base, n)).collect();
    let elements = tuples
        .iter()
        .map(|t| tuple_name(&t.iter().map(|&i| p.name(i)).collect::<Vec<_>>()))
        .collect();
    let mut le = Relation::identity(size);
    for a in 0..size {
        for b in 0..size {
            if tuples[a].iter().zip(&tuples[b]).all(|(&x, &y)| p.le(x, y)) {
                le.set(a, b);
            }
        }
    }
    Arc::new(FinitePoset::from_relation_unchecked(elements, le))
}

/// `fⁿ : Pⁿ → Qⁿ` between powers built by [`power`].
pub fn power_map(f: &MonotoneMap, n: usize, dom: &Arc<FinitePoset>, cod: &Arc<FinitePoset>) -> MonotoneMap {
    let (bd, bc) = (f.dom.len(), f.cod.len());
    let assign = (0..dom.len())
        .map(|t| {
            let coords: Vec<usize> = decode_tuple(t, bd, n).into_iter().map(|x| f.assign[x]).collect();
            encode_tuple(&coords, bc)
        })
        .collect();
    MonotoneMap::new_unchecked(dom.clone(), cod.clone(), assign)
}

/// Disjoint union of posets with no order across summands; the element `x`
/// of summand `k` is named `k:x`. Returns the coproduct and its injections.
pub fn coproduct_many(parts: &[Arc<FinitePoset>]) -> (Arc<FinitePoset>, Vec<MonotoneMap>) {
    let labels: Vec<String> = (0..parts.len()).map(|k| k.to_string()).collect();
    labelled_coproduct(parts, &labels, |label, x| format!("{label}:{x}"))
}

pub(crate) fn labelled_coproduct(
    parts: &[Arc<FinitePoset>],
    labels: &[String],
    name: impl Fn(&str, &str) -> String,
) -> (Arc<FinitePoset>, Vec<MonotoneMap>) {
    let total: usize = parts.iter().map(|p| p.len()).sum();
    let mut elements = Vec::with_capacity(total);
    let mut offsets = Vec::with_capacity(parts.len());
    for (p, label) in parts.iter().zip(labels) {
        offsets.push(elements.len());
        elements.extend(p.elements().iter().map(|x| name(label, x)));
    }
    let mut le = Relation::identity(total);
    for (p, &off) in parts.iter().zip(&offsets) {
        for (i, j) in p.order_relation() {
            le.set(off + i, off + j);
        }
    }
    let sum = Arc::new(FinitePoset::from_relation_unchecked(elements, le));
    let injections = parts
        .iter()
        .zip(&offsets)
        .map(|(p, &off)| MonotoneMap::new_unchecked(p.clone(), sum.clone(), (off..off + p.len()).collect()))
        .collect();
    (sum, injections)
}

pub fn coproduct(p: &Arc<FinitePoset>, q: &Arc<FinitePoset>) -> (Arc<FinitePoset>, MonotoneMap, MonotoneMap) {
    let (sum, mut inj) = coproduct_many(&[p.clone(), q.clone()]);
    let inr = inj.pop().expect("two injections");
    let inl = inj.pop().expect("two injections");
    (sum, inl, inr)
}

/// Copairing `[f₀, …, fₖ] : P₀ + … + Pₖ → Q` out of a coproduct built by
/// [`coproduct_many`].
pub fn copair(sum: &Arc<FinitePoset>, maps: &[MonotoneMap]) -> Result<MonotoneMap> {
    let cod = maps
        .first()
        .map(|f| f.cod.clone())
        .ok_or_else(|| Error::DomainMismatch("copairing of no maps".into()))?;
    if maps.iter().any(|f| !same_poset(&f.cod, &cod)) {
        return Err(Error::DomainMismatch("copairing maps have different codomains".into()));
    }
    let assign: Vec<usize> = maps.iter().flat_map(|f| f.assign.iter().copied()).collect();
    if assign.len() != sum.len() {
        return Err(Error::DomainMismatch("copairing does not cover the coproduct".into()));
    }
    MonotoneMap::new(sum.clone(), cod, assign)
}

/// An ω-chain `prefix₀, …, prefixₘ₋₁, tail, tail, …` in a poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaChainSpec {
    pub prefix: Vec<usize>,
    pub tail: usize,
}

impl OmegaChainSpec {
    pub fn constant(x: usize) -> Self {
        OmegaChainSpec {
            prefix: Vec::new(),
            tail: x,
        }
    }

    /// The distinct consecutive steps of the denoted sequence.
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.prefix
            .iter()
            .copied()
            .zip(self.prefix.iter().copied().skip(1).chain(std::iter::once(self.tail)))
    }
}

/// Join of an ω-chain: on a finite poset the eventually constant tail.
pub fn chain_join(p: &FinitePoset, chain: &OmegaChainSpec) -> Result<usize> {
    for (a, b) in chain.steps() {
        if !p.le(a, b) {
            return Err(Error::NotAChain(p.name(a).to_owned(), p.name(b).to_owned()));
        }
    }
    Ok(chain.tail)
}

/// The order relation `R = {(x, y) | x ⊑ y}` as a discrete poset, with its
/// two projections into the discrete underlying set `|P|`.
#[derive(Clone, Debug)]
pub struct OrderPairs {
    pub pairs: Arc<FinitePoset>,
    pub underlying: Arc<FinitePoset>,
    pub proj0: MonotoneMap,
    pub proj1: MonotoneMap,
}

pub fn order_pairs(p: &FinitePoset) -> OrderPairs {
    let rel: Vec<(usize, usize)> = p.order_relation().collect();
    let names: Vec<String> = rel
        .iter()
        .map(|&(i, j)| format!("({},{})", p.name(i), p.name(j)))
        .collect();
    let pairs = Arc::new(FinitePoset::from_relation_unchecked(
        names,
        Relation::identity(rel.len()),
    ));
    let underlying = Arc::new(FinitePoset::from_relation_unchecked(
        p.elements().to_vec(),
        Relation::identity(p.len()),
    ));
    let proj0 = MonotoneMap::new_unchecked(pairs.clone(), underlying.clone(), rel.iter().map(|r| r.0).collect());
    let proj1 = MonotoneMap::new_unchecked(pairs.clone(), underlying.clone(), rel.iter().map(|r| r.1).collect());
    OrderPairs {
        pairs,
        underlying,
        proj0,
        proj1,
    }
}

/// Largest poset [`ideal_completion`] will enumerate subsets of.
pub const MAX_IDEAL_COMPLETION: usize = 20;

/// Ideals (nonempty directed down-sets) ordered by inclusion, with the unit
/// `x ↦ ↓x`. Each ideal is named `{a,b,…}` listing its members in the
/// order of the source poset.
///
/// Every finite directed set has a maximum, so every ideal is principal and
/// the unit is an isomorphism; the enumeration does not assume this.
pub fn ideal_completion(p: &Arc<FinitePoset>) -> Result<(Arc<FinitePoset>, MonotoneMap)> {
    let n = p.len();
    if n > MAX_IDEAL_COMPLETION {
        return Err(Error::TooLarge(format!("ideal completion of {n} elements")));
    }
    let mut ideals: Vec<Vec<usize>> = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if p.is_down_closed(&subset) && p.is_directed(&subset) {
            ideals.push(subset);
        }
    }
    let names = ideals
        .iter()
        .map(|s| format!("{{{}}}", s.iter().map(|&i| p.name(i)).collect::<Vec<_>>().join(",")))
        .collect();
    let k = ideals.len();
    let mut le = Relation::identity(k);
    for a in 0..k {
        for b in 0..k {
            if ideals[a].iter().all(|x| ideals[b].contains(x)) {
                le.set(a, b);
            }
        }
    }
    let completion = Arc::new(FinitePoset::from_relation_unchecked(names, le));
    let unit = (0..n)
        .map(|x| {
            let down = p.down_set(x);
            ideals
                .iter()
                .position(|s| *s == down)
                .expect("principal down-sets are ideals")
        })
        .collect();
    let unit = MonotoneMap::new(p.clone(), completion.clone(), unit)?;
    Ok((completion, unit))
}

/// Factorizes `f = m ∘ e` with `e` onto the image and `m` the embedding of
/// the image as a subposet of the codomain.
///
/// The smallest sub-cpo containing the image is the image itself here, since
/// joins of ω-chains in a finite poset are their eventual values.
pub fn factorize(f: &MonotoneMap) -> (MonotoneMap, MonotoneMap) {
    let image = f.image();
    let (sub, m) = f.cod.induced(&image);
    let mut position = vec![usize::MAX; f.cod.len()];
    for (k, &j) in image.iter().enumerate() {
        position[j] = k;
    }
    let e = MonotoneMap::new_unchecked(f.dom.clone(), sub, f.assign.iter().map(|&j| position[j]).collect());
    (e, m)
}

/// The unique diagonal `d : A' → B` of a commutative square
/// `m ∘ u = u' ∘ e` with `e : A → A'` surjective and `m : B → B'` an
/// embedding, satisfying `d ∘ e = u` and `m ∘ d = u'`.
pub fn diagonal_fill(u: &MonotoneMap, e: &MonotoneMap, m: &MonotoneMap, u_prime: &MonotoneMap) -> Result<MonotoneMap> {
    if !same_poset(&u.dom, &e.dom)
        || !same_poset(&u.cod, &m.dom)
        || !same_poset(&e.cod, &u_prime.dom)
        || !same_poset(&m.cod, &u_prime.cod)
    {
        return Err(Error::DomainMismatch("square edges do not line up".into()));
    }
    for a in 0..u.dom.len() {
        if m.apply(u.apply(a)) != u_prime.apply(e.apply(a)) {
            return Err(Error::SquareNotCommuting(u.dom.name(a).to_owned()));
        }
    }
    if let Some(missing) = (0..e.cod.len()).find(|j| !e.assign.contains(j)) {
        return Err(Error::NotDense(e.cod.name(missing).to_owned()));
    }
    if !m.is_embedding() {
        return Err(Error::NotEmbedding("m is not injective and order-reflecting".into()));
    }
    let mut preimage = vec![usize::MAX; m.cod.len()];
    for (b, &j) in m.assign.iter().enumerate() {
        preimage[j] = b;
    }
    let assign = u_prime.assign.iter().map(|&j| preimage[j]).collect();
    MonotoneMap::new(e.cod.clone(), u.cod.clone(), assign)
}
