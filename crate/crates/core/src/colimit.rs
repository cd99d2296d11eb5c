//! Coinserters and the colimits built from them: coequalizers, tensors with
//! finite posets and colimits of finite chains, plus the checkers for the
//! commutation of reflexive coinserters with finite products.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poset::{
    self, copair, coproduct_many, labelled_coproduct, posetal_reflection, power, power_map, product, product_map,
    same_poset, FinitePoset, FinitePreorder, MonotoneMap,
};

/// Two parallel monotone maps `f0, f1 : A → B`, optionally with a common
/// splitting `δ : B → A` (`f0 ∘ δ = f1 ∘ δ = id`).
#[derive(Clone, Debug)]
pub struct ParallelPair {
    f0: MonotoneMap,
    f1: MonotoneMap,
    splitting: Option<MonotoneMap>,
}

impl ParallelPair {
    pub fn new(f0: MonotoneMap, f1: MonotoneMap) -> Result<Self> {
        if !f0.is_parallel_to(&f1) {
            return Err(Error::DomainMismatch("f0 and f1 are not parallel".into()));
        }
        Ok(ParallelPair {
            f0,
            f1,
            splitting: None,
        })
    }

    /// A reflexive pair; the splitting is verified, never searched for.
    pub fn reflexive(f0: MonotoneMap, f1: MonotoneMap, splitting: MonotoneMap) -> Result<Self> {
        let mut pair = ParallelPair::new(f0, f1)?;
        if !same_poset(splitting.dom(), pair.f0.cod()) || !same_poset(splitting.cod(), pair.f0.dom()) {
            return Err(Error::InvalidSplitting("splitting must go from B back to A".into()));
        }
        let id = MonotoneMap::identity(pair.f0.cod());
        for (label, f) in [("f0", &pair.f0), ("f1", &pair.f1)] {
            if splitting.then(f)? != id {
                return Err(Error::InvalidSplitting(format!("{label} ∘ δ is not the identity")));
            }
        }
        pair.splitting = Some(splitting);
        Ok(pair)
    }

    pub fn f0(&self) -> &MonotoneMap {
        &self.f0
    }

    pub fn f1(&self) -> &MonotoneMap {
        &self.f1
    }

    pub fn splitting(&self) -> Option<&MonotoneMap> {
        self.splitting.as_ref()
    }

    pub fn dom(&self) -> &Arc<FinitePoset> {
        self.f0.dom()
    }

    pub fn cod(&self) -> &Arc<FinitePoset> {
        self.f0.cod()
    }
}

/// Apex `C` and the universal map `c : B → C`.
#[derive(Clone, Debug)]
pub struct CoinserterResult {
    pub apex: Arc<FinitePoset>,
    pub c: MonotoneMap,
}

fn coinserter_of(f0: &MonotoneMap, f1: &MonotoneMap) -> CoinserterResult {
    let b = f0.cod();
    let generators = b
        .order_relation()
        .chain((0..f0.dom().len()).map(|a| (f0.apply(a), f1.apply(a))));
    let pre = FinitePreorder::generated(b.elements().to_vec(), generators.collect::<Vec<_>>());
    let reflection = posetal_reflection(&pre);
    let c = MonotoneMap::new(b.clone(), reflection.poset.clone(), reflection.quotient)
        .expect("the quotient of a coarser preorder is monotone");
    CoinserterResult {
        apex: reflection.poset,
        c,
    }
}

/// The posetal reflection of the least preorder on `B` containing the order
/// of `B` and every pair `(f0(a), f1(a))`.
pub fn coinserter(pair: &ParallelPair) -> CoinserterResult {
    coinserter_of(&pair.f0, &pair.f1)
}

/// Compares a candidate against the computed coinserter: the candidate must
/// satisfy `c' ∘ f0 ⊑ c' ∘ f1` and the induced map from the computed apex
/// must be an order isomorphism.
pub fn is_coinserter(pair: &ParallelPair, candidate: &MonotoneMap) -> Result<bool> {
    if !same_poset(candidate.dom(), pair.cod()) {
        return Err(Error::DomainMismatch(
            "candidate must start at the codomain of the pair".into(),
        ));
    }
    Ok(is_coinserter_of(&pair.f0, &pair.f1, candidate))
}

fn is_coinserter_of(f0: &MonotoneMap, f1: &MonotoneMap, candidate: &MonotoneMap) -> bool {
    let cod = candidate.cod();
    let inserts = (0..f0.dom().len()).all(|a| cod.le(candidate.apply(f0.apply(a)), candidate.apply(f1.apply(a))));
    if !inserts {
        return false;
    }
    let universal = coinserter_of(f0, f1);
    comparison(&universal, candidate).is_some_and(|k| k.is_isomorphism())
}

/// The map `k : C → C'` with `k ∘ c = c'`, if `c'` is constant on the classes
/// of `c` and the induced assignment is monotone.
pub fn comparison(universal: &CoinserterResult, candidate: &MonotoneMap) -> Option<MonotoneMap> {
    let mut assign = vec![usize::MAX; universal.apex.len()];
    for b in 0..candidate.dom().len() {
        let class = universal.c.apply(b);
        let target = candidate.apply(b);
        if assign[class] == usize::MAX {
            assign[class] = target;
        } else if assign[class] != target {
            return None;
        }
    }
    MonotoneMap::new(universal.apex.clone(), candidate.cod().clone(), assign).ok()
}

/// Conical coequalizer of `f, g : X → Y`, computed as the reflexive
/// coinserter of `[f, g, id], [g, f, id] : X + X + Y → Y`.
pub fn coequalizer(f: &MonotoneMap, g: &MonotoneMap) -> Result<CoinserterResult> {
    if !f.is_parallel_to(g) {
        return Err(Error::DomainMismatch("f and g are not parallel".into()));
    }
    let pair = coequalizer_pair(f, g)?;
    Ok(coinserter(&pair))
}

/// The reflexive pair whose coinserter is the coequalizer of `f` and `g`;
/// the splitting is the third coproduct injection.
pub fn coequalizer_pair(f: &MonotoneMap, g: &MonotoneMap) -> Result<ParallelPair> {
    let x = f.dom();
    let y = f.cod();
    let (sum, injections) = coproduct_many(&[x.clone(), x.clone(), y.clone()]);
    let id = MonotoneMap::identity(y);
    let left = copair(&sum, &[f.clone(), g.clone(), id.clone()])?;
    let right = copair(&sum, &[g.clone(), f.clone(), id])?;
    ParallelPair::reflexive(left, right, injections[2].clone())
}

/// `P ⊗ X` as the coinserter of `π0 ⊗ X, π1 ⊗ X : R ⊗ X → |P| ⊗ X`, where
/// `R` is the order relation of `P` and `S ⊗ X` is the copower `∐_S X`.
///
/// Copower elements are named `(s,x)`, so the apex elements are named like
/// the elements of `P × X`.
pub fn tensor_via_coinserter(p: &FinitePoset, x: &Arc<FinitePoset>) -> CoinserterResult {
    let pairs = poset::order_pairs(p);
    let copower = |labels: &[String]| {
        let parts = vec![x.clone(); labels.len()];
        labelled_coproduct(&parts, labels, |s, e| format!("({s},{e})")).0
    };
    let r_labels: Vec<String> = pairs.pairs.elements().to_vec();
    let rx = copower(&r_labels);
    let px = copower(p.elements());
    let n = x.len();
    let lift = |proj: &MonotoneMap| {
        let assign = (0..rx.len())
            .map(|k| proj.apply(k / n.max(1)) * n + k % n.max(1))
            .collect();
        MonotoneMap::new(rx.clone(), px.clone(), assign).expect("copower of a map is monotone")
    };
    coinserter_of(&lift(&pairs.proj0), &lift(&pairs.proj1))
}

/// Consecutive objects and connecting maps `Cₖ → Cₖ₊₁`.
#[derive(Clone, Debug)]
pub struct FiniteChainDiagram {
    objects: Vec<Arc<FinitePoset>>,
    connecting: Vec<MonotoneMap>,
}

impl FiniteChainDiagram {
    pub fn new(objects: Vec<Arc<FinitePoset>>, connecting: Vec<MonotoneMap>) -> Result<Self> {
        if objects.is_empty() {
            return Err(Error::EmptyDiagram);
        }
        if connecting.len() + 1 != objects.len() {
            return Err(Error::DomainMismatch(format!(
                "{} objects need {} connecting maps, got {}",
                objects.len(),
                objects.len() - 1,
                connecting.len()
            )));
        }
        for (k, f) in connecting.iter().enumerate() {
            if !same_poset(f.dom(), &objects[k]) || !same_poset(f.cod(), &objects[k + 1]) {
                return Err(Error::DomainMismatch(format!(
                    "connecting map {k} does not fit the chain"
                )));
            }
        }
        Ok(FiniteChainDiagram { objects, connecting })
    }

    /// The chain `C₀ ↪ C₁ ↪ … ↪ Cₖ` of initial segments of the naturals.
    pub fn naturals(k: usize) -> Self {
        let objects: Vec<Arc<FinitePoset>> = (0..=k).map(|j| Arc::new(FinitePoset::chain(j + 1))).collect();
        let connecting = (0..k)
            .map(|j| MonotoneMap::new(objects[j].clone(), objects[j + 1].clone(), (0..=j).collect()).unwrap())
            .collect();
        FiniteChainDiagram { objects, connecting }
    }

    pub fn objects(&self) -> &[Arc<FinitePoset>] {
        &self.objects
    }

    pub fn connecting(&self) -> &[MonotoneMap] {
        &self.connecting
    }
}

/// Colimit of a finite chain with its cocone: the coproduct of all objects
/// modulo the order together with `x ~ fₖ(x)` in both directions.
pub fn chain_colimit(d: &FiniteChainDiagram) -> Result<(Arc<FinitePoset>, Vec<MonotoneMap>)> {
    if d.objects.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    let (sum, injections) = coproduct_many(&d.objects);
    let mut generators: Vec<(usize, usize)> = sum.order_relation().collect();
    for (k, f) in d.connecting.iter().enumerate() {
        for x in 0..f.dom().len() {
            let a = injections[k].apply(x);
            let b = injections[k + 1].apply(f.apply(x));
            generators.push((a, b));
            generators.push((b, a));
        }
    }
    let reflection = posetal_reflection(&FinitePreorder::generated(sum.elements().to_vec(), generators));
    let quotient = MonotoneMap::new(sum, reflection.poset.clone(), reflection.quotient)?;
    let cocone = injections
        .iter()
        .map(|inj| inj.then(&quotient))
        .collect::<Result<Vec<_>>>()?;
    Ok((reflection.poset, cocone))
}

/// Checks that `c × c'` is a coinserter of `f0 × f0', f1 × f1'` for two
/// reflexive pairs, where `c, c'` are their computed coinserters.
pub fn check_product_commutation(p: &ParallelPair, q: &ParallelPair) -> Result<bool> {
    if p.splitting.is_none() || q.splitting.is_none() {
        return Err(Error::MissingSplitting);
    }
    let cp = coinserter(p);
    let cq = coinserter(q);
    let (dom, _, _) = product(p.dom(), q.dom());
    let (cod, _, _) = product(p.cod(), q.cod());
    let (apex, _, _) = product(&cp.apex, &cq.apex);
    let f0 = product_map(&p.f0, &q.f0, &dom, &cod);
    let f1 = product_map(&p.f1, &q.f1, &dom, &cod);
    let c = product_map(&cp.c, &cq.c, &cod, &apex);
    Ok(is_coinserter_of(&f0, &f1, &c))
}

/// Checks that `cⁿ` is a coinserter of `f0ⁿ, f1ⁿ` for a reflexive pair.
pub fn check_power_preservation(n: usize, p: &ParallelPair) -> Result<bool> {
    if p.splitting.is_none() {
        return Err(Error::MissingSplitting);
    }
    let cp = coinserter(p);
    let dom = power(p.dom(), n);
    let cod = power(p.cod(), n);
    let apex = power(&cp.apex, n);
    let f0 = power_map(&p.f0, n, &dom, &cod);
    let f1 = power_map(&p.f1, n, &dom, &cod);
    let c = power_map(&cp.c, n, &cod, &apex);
    Ok(is_coinserter_of(&f0, &f1, &c))
}
