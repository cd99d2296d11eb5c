//! JSON documents for every object kind, in both directions.
//!
//! Posets, maps and algebras refer to other objects by name; a poset may
//! also be given inline as an object wherever a name is expected.

use std::collections::BTreeMap;
use std::sync::Arc;

use ordalg::algebra::{ContinuousAlgebra, OpTable, Signature};
use ordalg::monad::{SFMonadPresentation, Stage};
use ordalg::poset::{decode_tuple, encode_tuple, FinitePoset, MonotoneMap};
use ordalg::term::{Equation, ExtendedTerm, OmegaFamily, VarietyPresentation};
use serde_json::{json, Map, Value};

use crate::error::CliError;

/// Lookup of posets already loaded, by name.
pub trait PosetScope {
    fn poset(&self, name: &str) -> Option<Arc<FinitePoset>>;
}

fn shape(what: &str, detail: impl Into<String>) -> CliError {
    CliError::Format {
        what: what.to_owned(),
        detail: detail.into(),
    }
}

fn field<'a>(doc: &'a Value, key: &str, what: &str) -> Result<&'a Value, CliError> {
    doc.get(key)
        .ok_or_else(|| shape(what, format!("missing field `{key}`")))
}

fn string<'a>(v: &'a Value, what: &str) -> Result<&'a str, CliError> {
    v.as_str()
        .ok_or_else(|| shape(what, format!("expected a string, found {v}")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, CliError> {
    v.as_object()
        .ok_or_else(|| shape(what, format!("expected an object, found {v}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array()
        .ok_or_else(|| shape(what, format!("expected an array, found {v}")))
}

fn arity(v: &Value, what: &str) -> Result<usize, CliError> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| shape(what, format!("expected a nonnegative integer, found {v}")))
}

pub fn poset_from_json(doc: &Value) -> Result<FinitePoset, CliError> {
    let elements: Vec<String> = array(field(doc, "elements", "poset")?, "poset elements")?
        .iter()
        .map(|e| string(e, "poset element").map(str::to_owned))
        .collect::<Result<_, _>>()?;
    let mut pairs = Vec::new();
    if let Some(le) = doc.get("le") {
        for pair in array(le, "poset le")? {
            let pair = array(pair, "poset le pair")?;
            if pair.len() != 2 {
                return Err(shape("poset le pair", "expected [a, b]"));
            }
            pairs.push((
                string(&pair[0], "poset element")?.to_owned(),
                string(&pair[1], "poset element")?.to_owned(),
            ));
        }
    }
    Ok(FinitePoset::from_names(elements, &pairs)?)
}

pub fn poset_to_json(p: &FinitePoset) -> Value {
    let le: Vec<[&str; 2]> = p.covers().into_iter().map(|(i, j)| [p.name(i), p.name(j)]).collect();
    json!({ "kind": "poset", "elements": p.elements(), "le": le })
}

/// A poset reference: a name, or an inline poset document.
pub fn poset_ref(v: &Value, scope: &dyn PosetScope) -> Result<Arc<FinitePoset>, CliError> {
    match v {
        Value::String(name) => scope.poset(name).ok_or_else(|| CliError::UnknownName {
            kind: "poset".into(),
            name: name.clone(),
        }),
        Value::Object(_) => Ok(Arc::new(poset_from_json(v)?)),
        other => Err(shape(
            "poset reference",
            format!("expected a name or a poset, found {other}"),
        )),
    }
}

/// `assign` maps every element of `dom` to an element of `cod`.
pub fn assignment(v: &Value, dom: &FinitePoset, cod: &FinitePoset, what: &str) -> Result<Vec<usize>, CliError> {
    let table = object(v, what)?;
    if let Some(extra) = table.keys().find(|k| dom.index_of(k).is_none()) {
        return Err(ordalg::Error::UnknownElement(extra.clone()).into());
    }
    (0..dom.len())
        .map(|i| {
            let target = table
                .get(dom.name(i))
                .ok_or_else(|| ordalg::Error::NotTotal(dom.name(i).to_owned()))?;
            let target = string(target, what)?;
            Ok(cod.require(target)?)
        })
        .collect()
}

pub fn map_from_json(doc: &Value, scope: &dyn PosetScope) -> Result<MonotoneMap, CliError> {
    let dom = poset_ref(field(doc, "dom", "map")?, scope)?;
    let cod = poset_ref(field(doc, "cod", "map")?, scope)?;
    let assign = assignment(field(doc, "assign", "map")?, &dom, &cod, "map assign")?;
    Ok(MonotoneMap::new(dom, cod, assign)?)
}

pub fn assign_to_json(f: &MonotoneMap) -> Value {
    let m: BTreeMap<&str, &str> = (0..f.dom().len())
        .map(|i| (f.dom().name(i), f.cod().name(f.apply(i))))
        .collect();
    json!(m)
}

pub fn map_to_json(f: &MonotoneMap, dom: Value, cod: Value) -> Value {
    json!({ "kind": "map", "dom": dom, "cod": cod, "assign": assign_to_json(f) })
}

pub fn signature_from_json(v: &Value) -> Result<Signature, CliError> {
    let map = object(v, "signature")?
        .iter()
        .map(|(k, n)| Ok((k.clone(), arity(n, "signature arity")?)))
        .collect::<Result<BTreeMap<_, _>, CliError>>()?;
    Ok(Signature::from_map(map))
}

pub fn signature_to_json(sig: &Signature) -> Value {
    json!(sig.as_map())
}

/// Dense tables: one row `[args…, result]` per argument tuple.
pub fn algebra_from_json(doc: &Value, scope: &dyn PosetScope) -> Result<ContinuousAlgebra, CliError> {
    let sig = signature_from_json(field(doc, "signature", "algebra")?)?;
    let carrier = poset_ref(field(doc, "carrier", "algebra")?, scope)?;
    let ops_doc = object(field(doc, "ops", "algebra")?, "algebra ops")?;
    if let Some(extra) = ops_doc.keys().find(|k| sig.arity(k).is_none()) {
        return Err(ordalg::Error::SignatureMismatch(format!("operation `{extra}` is not in the signature")).into());
    }
    let n = carrier.len();
    let mut ops = BTreeMap::new();
    for (symbol, k) in sig.symbols() {
        let rows = array(
            ops_doc
                .get(symbol)
                .ok_or_else(|| ordalg::Error::SignatureMismatch(format!("no table for `{symbol}`")))?,
            "operation table",
        )?;
        let size = if k == 0 { 1 } else { n.pow(k as u32) };
        let mut values = vec![None; size];
        for row in rows {
            let row = array(row, "operation table row")?;
            if row.len() != k + 1 {
                return Err(shape(
                    "operation table row",
                    format!("`{symbol}` rows need {} entries", k + 1),
                ));
            }
            let entries = row
                .iter()
                .map(|e| Ok(carrier.require(string(e, "table entry")?)?))
                .collect::<Result<Vec<usize>, CliError>>()?;
            let slot = encode_tuple(&entries[..k], n);
            if values[slot].replace(entries[k]).is_some() {
                return Err(shape("operation table", format!("`{symbol}` lists a tuple twice")));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(t, v)| {
                v.ok_or_else(|| {
                    let args: Vec<&str> = decode_tuple(t, n, k).into_iter().map(|i| carrier.name(i)).collect();
                    ordalg::Error::NotTotal(format!("{symbol}({})", args.join(",")))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        ops.insert(symbol.to_owned(), OpTable::new(k, n, values)?);
    }
    Ok(ContinuousAlgebra::new(sig, carrier, ops)?)
}

pub fn algebra_to_json(a: &ContinuousAlgebra, carrier: Value) -> Value {
    let p = a.carrier();
    let ops: BTreeMap<&str, Vec<Vec<&str>>> = a
        .tables()
        .iter()
        .map(|(s, t)| {
            let rows = (0..t.values().len())
                .map(|idx| {
                    let mut row: Vec<&str> = decode_tuple(idx, p.len(), t.arity())
                        .into_iter()
                        .map(|i| p.name(i))
                        .collect();
                    row.push(p.name(t.values()[idx]));
                    row
                })
                .collect();
            (s.as_str(), rows)
        })
        .collect();
    json!({ "kind": "algebra", "signature": signature_to_json(a.signature()), "carrier": carrier, "ops": ops })
}

pub fn term_from_json(v: &Value) -> Result<ExtendedTerm, CliError> {
    let obj = object(v, "term")?;
    if let Some(x) = obj.get("var") {
        return Ok(ExtendedTerm::var(string(x, "variable")?));
    }
    if let Some(op) = obj.get("op") {
        let args = match obj.get("args") {
            Some(a) => array(a, "term args")?
                .iter()
                .map(term_from_json)
                .collect::<Result<_, _>>()?,
            None => Vec::new(),
        };
        return Ok(ExtendedTerm::comp(string(op, "operation symbol")?, args));
    }
    if let Some(join) = obj.get("join") {
        let j = object(join, "join")?;
        if let Some(tail) = j.get("tail") {
            let prefix = match j.get("prefix") {
                Some(p) => array(p, "join prefix")?
                    .iter()
                    .map(term_from_json)
                    .collect::<Result<_, _>>()?,
                None => Vec::new(),
            };
            return Ok(ExtendedTerm::eventually(prefix, term_from_json(tail)?));
        }
        let base = term_from_json(field(join, "base", "join")?)?;
        let context = term_from_json(field(join, "context", "join")?)?;
        let hole = string(field(join, "hole", "join")?, "join hole")?;
        return Ok(ExtendedTerm::iterate(base, context, hole)?);
    }
    Err(shape("term", "expected one of `var`, `op`, `join`"))
}

pub fn term_to_json(t: &ExtendedTerm) -> Value {
    match t {
        ExtendedTerm::Var(x) => json!({ "var": x }),
        ExtendedTerm::Comp(s, args) => json!({ "op": s, "args": args.iter().map(term_to_json).collect::<Vec<_>>() }),
        ExtendedTerm::Join(fam) => match fam.as_ref() {
            OmegaFamily::EventuallyConstant { prefix, tail } => json!({
                "join": { "prefix": prefix.iter().map(term_to_json).collect::<Vec<_>>(), "tail": term_to_json(tail) }
            }),
            OmegaFamily::IteratedContext { base, context, hole } => json!({
                "join": { "base": term_to_json(base), "context": term_to_json(context), "hole": hole }
            }),
        },
    }
}

/// `{"lhs": …, "rhs": …}`; with `"le": true` the pair is read as the
/// inequation `lhs ⊑ rhs`.
pub fn equation_from_json(doc: &Value) -> Result<Equation, CliError> {
    let lhs = term_from_json(field(doc, "lhs", "equation")?)?;
    let rhs = term_from_json(field(doc, "rhs", "equation")?)?;
    if doc.get("le").and_then(Value::as_bool).unwrap_or(false) {
        Ok(ordalg::term::encode_inequation(lhs, rhs))
    } else {
        Ok(Equation::new(lhs, rhs))
    }
}

pub fn equation_to_json(e: &Equation) -> Value {
    json!({ "kind": "equation", "lhs": term_to_json(&e.lhs), "rhs": term_to_json(&e.rhs) })
}

pub fn variety_from_json(doc: &Value) -> Result<VarietyPresentation, CliError> {
    let sig = signature_from_json(field(doc, "signature", "variety")?)?;
    let equations = array(field(doc, "equations", "variety")?, "variety equations")?
        .iter()
        .map(equation_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VarietyPresentation::new(sig, equations)?)
}

pub fn variety_to_json(v: &VarietyPresentation) -> Value {
    let eqs: Vec<Value> = v
        .equations
        .iter()
        .map(|e| json!({ "lhs": term_to_json(&e.lhs), "rhs": term_to_json(&e.rhs) }))
        .collect();
    json!({ "kind": "variety", "signature": signature_to_json(&v.sig), "equations": eqs })
}

fn extension_key(n: usize, m: usize, u: &[usize], tm: &FinitePoset) -> String {
    let names: Vec<&str> = u.iter().map(|&v| tm.name(v)).collect();
    format!("{n}:{m}:{}", names.join(","))
}

/// Stages list `T_n` and `η_n`; `extend` is keyed by `"n:m:u(x0),u(x1),…"`
/// and maps each element of `T_n` to its image under `u*`.
pub fn monad_from_json(name: &str, doc: &Value, scope: &dyn PosetScope) -> Result<SFMonadPresentation, CliError> {
    let big_n = arity(field(doc, "N", "monad")?, "monad N")?;
    let stage_docs = array(field(doc, "stages", "monad")?, "monad stages")?;
    if stage_docs.len() != big_n + 1 {
        return Err(shape(
            "monad stages",
            format!("expected {} stages for N = {big_n}", big_n + 1),
        ));
    }
    let mut stages = Vec::new();
    for (n, st) in stage_docs.iter().enumerate() {
        let poset = poset_ref(field(st, "poset", "monad stage")?, scope)?;
        let eta_doc = object(field(st, "eta", "monad stage")?, "monad eta")?;
        let eta = (0..n)
            .map(|i| {
                let x = ordalg::monad::var(i);
                let target = eta_doc
                    .get(&x)
                    .ok_or_else(|| ordalg::Error::NotTotal(format!("eta_{n}({x})")))?;
                Ok(poset.require(string(target, "eta image")?)?)
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        stages.push(Stage { poset, eta });
    }
    let ext_doc = object(field(doc, "extend", "monad")?, "monad extend")?;
    let mut extend = BTreeMap::new();
    for n in 0..=big_n {
        for m in 0..=big_n {
            let (tn, tm) = (&stages[n].poset, &stages[m].poset);
            let tables = ordalg::enumerate::functions(n, tm.len())
                .map(|u| {
                    let key = extension_key(n, m, &u, tm);
                    let entry = ext_doc
                        .get(&key)
                        .ok_or_else(|| ordalg::Error::NotTotal(format!("extension {key}")))?;
                    assignment(entry, tn, tm, "extension table")
                })
                .collect::<Result<Vec<_>, _>>()?;
            extend.insert((n, m), tables);
        }
    }
    Ok(SFMonadPresentation::new(name, stages, extend)?)
}

pub fn monad_to_json(monad: &SFMonadPresentation) -> Value {
    let stages: Vec<Value> = monad
        .stages()
        .iter()
        .map(|st| {
            let eta: BTreeMap<String, &str> = st
                .eta
                .iter()
                .enumerate()
                .map(|(i, &e)| (ordalg::monad::var(i), st.poset.name(e)))
                .collect();
            json!({ "poset": poset_to_json(&st.poset), "eta": eta })
        })
        .collect();
    let mut extend = BTreeMap::new();
    for (&(n, m), tables) in monad.tables() {
        let (tn, tm) = (&monad.stages()[n].poset, &monad.stages()[m].poset);
        for (u, table) in ordalg::enumerate::functions(n, tm.len()).zip(tables) {
            let row: BTreeMap<&str, &str> = table
                .iter()
                .enumerate()
                .map(|(s, &t)| (tn.name(s), tm.name(t)))
                .collect();
            extend.insert(extension_key(n, m, &u, tm), json!(row));
        }
    }
    json!({ "kind": "monad", "N": monad.max_arity(), "stages": stages, "extend": extend })
}
