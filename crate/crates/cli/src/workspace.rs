//! Named registry of loaded objects.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use ordalg::algebra::ContinuousAlgebra;
use ordalg::colimit::ParallelPair;
use ordalg::fixtures;
use ordalg::monad::SFMonadPresentation;
use ordalg::poset::{FinitePoset, MonotoneMap};
use ordalg::term::{Equation, ExtendedTerm, VarietyPresentation};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::format::{self, PosetScope};

/// Kinds in load order: later kinds may refer to earlier ones.
pub const KINDS: &[&str] = &[
    "poset", "map", "pair", "algebra", "term", "equation", "variety", "monad",
];

#[derive(Default)]
pub struct Workspace {
    pub posets: BTreeMap<String, Arc<FinitePoset>>,
    pub maps: BTreeMap<String, MonotoneMap>,
    pub pairs: BTreeMap<String, ParallelPair>,
    pub algebras: BTreeMap<String, ContinuousAlgebra>,
    pub terms: BTreeMap<String, ExtendedTerm>,
    pub equations: BTreeMap<String, Equation>,
    pub varieties: BTreeMap<String, VarietyPresentation>,
    pub monads: BTreeMap<String, SFMonadPresentation>,
}

impl PosetScope for Workspace {
    fn poset(&self, name: &str) -> Option<Arc<FinitePoset>> {
        self.posets.get(name).cloned()
    }
}

/// One document read from disk, not yet interpreted.
struct Pending {
    path: PathBuf,
    kind: String,
    name: String,
    doc: Value,
}

fn get<'a, T>(registry: &'a BTreeMap<String, T>, kind: &str, name: &str) -> Result<&'a T, CliError> {
    registry.get(name).ok_or_else(|| CliError::UnknownName {
        kind: kind.into(),
        name: name.into(),
    })
}

fn insert<T>(registry: &mut BTreeMap<String, T>, name: String, value: T) -> Result<(), CliError> {
    if registry.contains_key(&name) {
        return Err(ordalg::Error::PreconditionFailed(format!("name `{name}` is already registered")).into());
    }
    registry.insert(name, value);
    Ok(())
}

fn parse_file(path: &Path) -> Result<Vec<Pending>, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_owned(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let docs = match value {
        Value::Array(items) => items,
        single => vec![single],
    };
    let single = docs.len() == 1;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
    // `kind.name.json` names the object after the middle part.
    let default_name = stem.split_once('.').map_or(stem, |(_, rest)| rest).to_owned();
    docs.into_iter()
        .map(|doc| {
            let kind = doc
                .get("kind")
                .and_then(Value::as_str)
                .filter(|k| KINDS.contains(k))
                .ok_or_else(|| CliError::Format {
                    what: format!("document in {}", path.display()),
                    detail: format!("`kind` must be one of {}", KINDS.join(", ")),
                })?
                .to_owned();
            let name = match doc.get("name").and_then(Value::as_str) {
                Some(n) => n.to_owned(),
                None if single => default_name.clone(),
                None => {
                    return Err(CliError::Format {
                        what: format!("document in {}", path.display()),
                        detail: "documents in an array need a `name`".into(),
                    })
                }
            };
            Ok(Pending {
                path: path.to_owned(),
                kind,
                name,
                doc,
            })
        })
        .collect()
}

impl Workspace {
    /// The shipped fixtures.
    pub fn builtin() -> Workspace {
        let mut ws = Workspace::default();
        let discrete2 = FinitePoset::discrete(&["a", "b"]).expect("distinct names");
        let vee = FinitePoset::new(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).expect("a valid order");
        let posets = [
            ("chain1", FinitePoset::chain(1)),
            ("chain2", FinitePoset::chain(2)),
            ("chain3", FinitePoset::chain(3)),
            ("discrete2", discrete2),
            ("vee", vee),
        ];
        for (name, p) in posets {
            ws.posets.insert(name.into(), Arc::new(p));
        }
        for (i, pair) in fixtures::reflexive_pair_library().iter().take(4).enumerate() {
            ws.maps.insert(format!("p{}.f0", i + 1), pair.f0().clone());
            ws.maps.insert(format!("p{}.f1", i + 1), pair.f1().clone());
            if let Some(d) = pair.splitting() {
                ws.maps.insert(format!("p{}.splitting", i + 1), d.clone());
            }
            ws.pairs.insert(format!("p{}", i + 1), pair.clone());
        }
        for (name, a) in fixtures::algebras() {
            ws.algebras.insert(name.into(), a);
        }
        for (name, _, t) in fixtures::terms() {
            ws.terms.insert(name.into(), t);
        }
        for (name, _, v) in fixtures::presentations() {
            for (i, e) in v.equations.iter().enumerate() {
                ws.equations.insert(format!("{name}.{i}"), e.clone());
            }
            ws.varieties.insert(name.into(), v);
        }
        for m in fixtures::monads().into_iter().chain(fixtures::broken_monads()) {
            ws.monads.insert(m.name().into(), m);
        }
        ws
    }

    /// Every `*.json` file of `dir`, in file-name order.
    pub fn load_dir(&mut self, dir: &Path) -> Result<Vec<(String, String)>, CliError> {
        let entries = fs::read_dir(dir).map_err(|source| CliError::Io {
            path: dir.to_owned(),
            source,
        })?;
        let mut paths: Vec<PathBuf> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        self.load_files(&paths)
    }

    /// Loads the documents of all files, kind by kind, and returns the
    /// registered `(kind, name)` entries.
    pub fn load_files(&mut self, paths: &[PathBuf]) -> Result<Vec<(String, String)>, CliError> {
        let mut pending = Vec::new();
        for path in paths {
            pending.extend(parse_file(path)?);
        }
        let mut loaded = Vec::new();
        for kind in KINDS {
            for p in pending.iter().filter(|p| p.kind == *kind) {
                self.register(p).map_err(|e| e.at_load(&p.path))?;
                loaded.push((p.kind.clone(), p.name.clone()));
            }
        }
        Ok(loaded)
    }

    fn register(&mut self, p: &Pending) -> Result<(), CliError> {
        let name = p.name.clone();
        match p.kind.as_str() {
            "poset" => {
                let poset = Arc::new(format::poset_from_json(&p.doc)?);
                insert(&mut self.posets, name, poset)
            }
            "map" => {
                let map = format::map_from_json(&p.doc, self)?;
                insert(&mut self.maps, name, map)
            }
            "pair" => {
                let f0 = self.map_ref(field(&p.doc, "f0")?)?;
                let f1 = self.map_ref(field(&p.doc, "f1")?)?;
                let pair = match p.doc.get("splitting") {
                    Some(d) => ParallelPair::reflexive(f0, f1, self.map_ref(d)?)?,
                    None => ParallelPair::new(f0, f1)?,
                };
                insert(&mut self.pairs, name, pair)
            }
            "algebra" => {
                let a = format::algebra_from_json(&p.doc, self)?;
                insert(&mut self.algebras, name, a)
            }
            "term" => {
                let t = format::term_from_json(field(&p.doc, "term")?)?;
                insert(&mut self.terms, name, t)
            }
            "equation" => {
                let e = format::equation_from_json(&p.doc)?;
                insert(&mut self.equations, name, e)
            }
            "variety" => {
                let v = format::variety_from_json(&p.doc)?;
                insert(&mut self.varieties, name, v)
            }
            "monad" => {
                let m = format::monad_from_json(&name, &p.doc, self)?;
                insert(&mut self.monads, name, m)
            }
            other => unreachable!("kind `{other}` was filtered when parsing"),
        }
    }

    /// A map reference: a name, or an inline map document.
    pub fn map_ref(&self, v: &Value) -> Result<MonotoneMap, CliError> {
        match v {
            Value::String(name) => self.map(name).cloned(),
            other => format::map_from_json(other, self),
        }
    }

    pub fn poset_named(&self, name: &str) -> Result<Arc<FinitePoset>, CliError> {
        get(&self.posets, "poset", name).cloned()
    }

    pub fn map(&self, name: &str) -> Result<&MonotoneMap, CliError> {
        get(&self.maps, "map", name)
    }

    pub fn pair(&self, name: &str) -> Result<&ParallelPair, CliError> {
        get(&self.pairs, "pair", name)
    }

    pub fn algebra(&self, name: &str) -> Result<&ContinuousAlgebra, CliError> {
        get(&self.algebras, "algebra", name)
    }

    pub fn term(&self, name: &str) -> Result<&ExtendedTerm, CliError> {
        get(&self.terms, "term", name)
    }

    pub fn equation(&self, name: &str) -> Result<&Equation, CliError> {
        get(&self.equations, "equation", name)
    }

    pub fn variety(&self, name: &str) -> Result<&VarietyPresentation, CliError> {
        get(&self.varieties, "variety", name)
    }

    pub fn monad(&self, name: &str) -> Result<&SFMonadPresentation, CliError> {
        get(&self.monads, "monad", name)
    }

    pub fn names(&self) -> Value {
        fn keys<T>(m: &BTreeMap<String, T>) -> Vec<&str> {
            m.keys().map(String::as_str).collect()
        }
        json!({
            "poset": keys(&self.posets),
            "map": keys(&self.maps),
            "pair": keys(&self.pairs),
            "algebra": keys(&self.algebras),
            "term": keys(&self.terms),
            "equation": keys(&self.equations),
            "variety": keys(&self.varieties),
            "monad": keys(&self.monads),
        })
    }

    /// One self-contained document per object, keyed by `kind.name`.
    pub fn documents(&self) -> BTreeMap<String, Value> {
        let mut out = BTreeMap::new();
        let mut put = |kind: &str, name: &str, mut doc: Value| {
            doc["kind"] = json!(kind);
            out.insert(format!("{kind}.{name}"), doc);
        };
        for (name, p) in &self.posets {
            put("poset", name, format::poset_to_json(p));
        }
        let inline_map =
            |f: &MonotoneMap| format::map_to_json(f, format::poset_to_json(f.dom()), format::poset_to_json(f.cod()));
        for (name, f) in &self.maps {
            put("map", name, inline_map(f));
        }
        for (name, pair) in &self.pairs {
            let mut doc = json!({ "f0": inline_map(pair.f0()), "f1": inline_map(pair.f1()) });
            if let Some(d) = pair.splitting() {
                doc["splitting"] = inline_map(d);
            }
            put("pair", name, doc);
        }
        for (name, a) in &self.algebras {
            put(
                "algebra",
                name,
                format::algebra_to_json(a, format::poset_to_json(a.carrier())),
            );
        }
        for (name, t) in &self.terms {
            put("term", name, json!({ "term": format::term_to_json(t) }));
        }
        for (name, e) in &self.equations {
            put("equation", name, format::equation_to_json(e));
        }
        for (name, v) in &self.varieties {
            put("variety", name, format::variety_to_json(v));
        }
        for (name, m) in &self.monads {
            put("monad", name, format::monad_to_json(m));
        }
        out
    }
}

fn field<'a>(doc: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    doc.get(key).ok_or_else(|| CliError::Format {
        what: "document".into(),
        detail: format!("missing field `{key}`"),
    })
}
