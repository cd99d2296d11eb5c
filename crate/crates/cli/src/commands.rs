use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::sync::Arc;

use ordalg::algebra::{self, ContinuousAlgebra};
use ordalg::colimit::{self, CoinserterResult, FiniteChainDiagram};
use ordalg::monad;
use ordalg::poset::{self, FinitePoset, MonotoneMap};
use ordalg::term::{self, ExtendedTerm};
use ordalg::{verify, Report};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::format::{algebra_to_json, equation_to_json, map_to_json, poset_to_json, signature_to_json, term_to_json};
use crate::workspace::Workspace;
use crate::{AlgebraCommand, ColimitCommand, Command, MonadCommand, PosetCommand, Settings, TermCommand};

const OK: u8 = 0;
const COUNTEREXAMPLE: u8 = 1;

/// A closed stdout (e.g. piped into `head`) is not an error.
fn emit(value: &Value, settings: &Settings) {
    let text = if settings.json {
        serde_json::to_string_pretty(value).expect("values serialize")
    } else {
        summary(value)
    };
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

/// One line per report (and per part), or compact JSON for anything else.
fn summary(value: &Value) -> String {
    match (value.get("suite"), value.get("instances"), value.get("passed")) {
        (Some(suite), Some(n), Some(p)) => {
            let mut lines = vec![format!("{}: {p}/{n} passed", suite.as_str().unwrap_or_default())];
            if let Some(parts) = value.get("parts").and_then(Value::as_array) {
                lines.extend(parts.iter().map(|part| format!("  {}", summary(part))));
            }
            lines.join("\n")
        }
        _ => value.to_string(),
    }
}

fn map_doc(f: &MonotoneMap) -> Value {
    map_to_json(f, poset_to_json(f.dom()), poset_to_json(f.cod()))
}

fn coinserter_doc(r: &CoinserterResult) -> Value {
    json!({ "apex": poset_to_json(&r.apex), "c": map_doc(&r.c) })
}

fn verdict(key: &str, holds: bool) -> (Value, u8) {
    (json!({ key: holds }), if holds { OK } else { COUNTEREXAMPLE })
}

fn elements(p: &FinitePoset, names: &[String]) -> Result<Vec<usize>, CliError> {
    names.iter().map(|n| Ok(p.require(n)?)).collect()
}

fn environment(a: &ContinuousAlgebra, bindings: &[String]) -> Result<BTreeMap<String, usize>, CliError> {
    bindings
        .iter()
        .map(|b| {
            let (x, v) = b
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("binding `{b}` is not of the form x=a")))?;
            Ok((x.to_owned(), a.carrier().require(v)?))
        })
        .collect()
}

fn report_doc(report: Report, settings: &Settings) -> (Value, u8) {
    let report = if settings.timing {
        report
    } else {
        report.without_timing()
    };
    let code = if report.all_passed() { OK } else { COUNTEREXAMPLE };
    let mut doc = serde_json::to_value(&report).expect("reports serialize");
    if let Some(seed) = settings.seed {
        doc["seed"] = json!(seed);
    }
    (doc, code)
}

pub fn run(ws: &mut Workspace, command: Command, settings: &Settings) -> Result<u8, CliError> {
    let (value, code) = match command {
        Command::List => (ws.names(), OK),
        Command::Load { files } => {
            let loaded = ws.load_files(&files)?;
            let entries: Vec<Value> = loaded
                .into_iter()
                .map(|(k, n)| json!({ "kind": k, "name": n }))
                .collect();
            (json!({ "loaded": entries }), OK)
        }
        Command::Show { kind, name } => {
            let doc = ws
                .documents()
                .remove(&format!("{kind}.{name}"))
                .ok_or(CliError::UnknownName { kind, name })?;
            (doc, OK)
        }
        Command::ExportFixtures { dir } => {
            fs::create_dir_all(&dir).map_err(|source| CliError::Io {
                path: dir.clone(),
                source,
            })?;
            let docs = ws.documents();
            for (key, doc) in &docs {
                let path = dir.join(format!("{key}.json"));
                let text = serde_json::to_string_pretty(doc).expect("values serialize") + "\n";
                fs::write(&path, text).map_err(|source| CliError::Io { path, source })?;
            }
            (json!({ "written": docs.len() }), OK)
        }
        Command::Poset(c) => poset_command(ws, c)?,
        Command::Colimit(c) => colimit_command(ws, c)?,
        Command::Algebra(c) => algebra_command(ws, c)?,
        Command::Term(c) => term_command(ws, c)?,
        Command::Monad(c) => monad_command(ws, c, settings)?,
        Command::Verify { suite, size } => {
            if suite != "all" && !verify::SUITES.contains(&suite.as_str()) {
                return Err(CliError::Usage(format!(
                    "UnknownSuite: `{suite}`; expected `all` or one of {}",
                    verify::SUITES.join(", ")
                )));
            }
            report_doc(verify::run(&suite, size, settings.exec)?, settings)
        }
    };
    emit(&value, settings);
    Ok(code)
}

fn poset_command(ws: &Workspace, c: PosetCommand) -> Result<(Value, u8), CliError> {
    Ok(match c {
        PosetCommand::Product(t) => {
            let (p, q) = (ws.poset_named(&t.left)?, ws.poset_named(&t.right)?);
            let (prod, p0, p1) = poset::product(&p, &q);
            (
                json!({ "product": poset_to_json(&prod), "proj0": map_doc(&p0), "proj1": map_doc(&p1) }),
                OK,
            )
        }
        PosetCommand::Coproduct(t) => {
            let (p, q) = (ws.poset_named(&t.left)?, ws.poset_named(&t.right)?);
            let (sum, inl, inr) = poset::coproduct(&p, &q);
            (
                json!({ "coproduct": poset_to_json(&sum), "inl": map_doc(&inl), "inr": map_doc(&inr) }),
                OK,
            )
        }
        PosetCommand::OrderPairs { poset } => {
            let r = poset::order_pairs(&*ws.poset_named(&poset)?);
            (
                json!({ "pairs": poset_to_json(&r.pairs), "proj0": map_doc(&r.proj0), "proj1": map_doc(&r.proj1) }),
                OK,
            )
        }
        PosetCommand::IdealCompletion { poset } => {
            let (ideals, unit) = poset::ideal_completion(&ws.poset_named(&poset)?)?;
            (
                json!({ "completion": poset_to_json(&ideals), "unit": map_doc(&unit) }),
                OK,
            )
        }
        PosetCommand::Factorize { map } => {
            let (e, m) = poset::factorize(ws.map(&map)?);
            (json!({ "e": map_doc(&e), "m": map_doc(&m) }), OK)
        }
        PosetCommand::DiagonalFill { u, e, m, u_prime } => {
            let d = poset::diagonal_fill(ws.map(&u)?, ws.map(&e)?, ws.map(&m)?, ws.map(&u_prime)?)?;
            (json!({ "diagonal": map_doc(&d) }), OK)
        }
    })
}

fn colimit_command(ws: &Workspace, c: ColimitCommand) -> Result<(Value, u8), CliError> {
    Ok(match c {
        ColimitCommand::Coinserter { pair } => (coinserter_doc(&colimit::coinserter(ws.pair(&pair)?)), OK),
        ColimitCommand::IsCoinserter { pair, map } => {
            verdict("coinserter", colimit::is_coinserter(ws.pair(&pair)?, ws.map(&map)?)?)
        }
        ColimitCommand::Coequalizer { f, g } => (coinserter_doc(&colimit::coequalizer(ws.map(&f)?, ws.map(&g)?)?), OK),
        ColimitCommand::Tensor { poset, with } => {
            let r = colimit::tensor_via_coinserter(&*ws.poset_named(&poset)?, &ws.poset_named(&with)?);
            (coinserter_doc(&r), OK)
        }
        ColimitCommand::Chain { maps } => {
            let connecting = maps.iter().map(|m| ws.map(m).cloned()).collect::<Result<Vec<_>, _>>()?;
            let mut objects: Vec<Arc<FinitePoset>> = vec![connecting[0].dom().clone()];
            objects.extend(connecting.iter().map(|m| m.cod().clone()));
            let (apex, injections) = colimit::chain_colimit(&FiniteChainDiagram::new(objects, connecting)?)?;
            let injections: Vec<Value> = injections.iter().map(map_doc).collect();
            (json!({ "apex": poset_to_json(&apex), "injections": injections }), OK)
        }
        ColimitCommand::ProductCommutation { pair, other } => verdict(
            "commutes",
            colimit::check_product_commutation(ws.pair(&pair)?, ws.pair(&other)?)?,
        ),
        ColimitCommand::PowerPreservation { pair, n } => {
            verdict("preserved", colimit::check_power_preservation(n, ws.pair(&pair)?)?)
        }
    })
}

fn with_carrier(a: &ContinuousAlgebra) -> Value {
    algebra_to_json(a, poset_to_json(a.carrier()))
}

fn algebra_command(ws: &Workspace, c: AlgebraCommand) -> Result<(Value, u8), CliError> {
    Ok(match c {
        AlgebraCommand::IsHomomorphism(h) => {
            let holds = algebra::is_homomorphism(ws.map(&h.map)?, ws.algebra(&h.from)?, ws.algebra(&h.to)?)?;
            (json!({ "homomorphism": holds }), OK)
        }
        AlgebraCommand::Product(t) => {
            let (p, p0, p1) = algebra::product_algebra(ws.algebra(&t.left)?, ws.algebra(&t.right)?)?;
            (
                json!({ "product": with_carrier(&p), "proj0": map_doc(&p0), "proj1": map_doc(&p1) }),
                OK,
            )
        }
        AlgebraCommand::Subalgebra { algebra, generators } => {
            let a = ws.algebra(&algebra)?;
            let (sub, emb) = algebra::generated_subalgebra(a, &elements(a.carrier(), &generators)?);
            (
                json!({ "subalgebra": with_carrier(&sub), "embedding": map_doc(&emb) }),
                OK,
            )
        }
        AlgebraCommand::Image(h) => {
            let img = algebra::image_algebra(ws.map(&h.map)?, ws.algebra(&h.from)?, ws.algebra(&h.to)?)?;
            (
                json!({
                    "image": with_carrier(&img.algebra),
                    "surjection": map_doc(&img.surjection),
                    "embedding": map_doc(&img.embedding),
                }),
                OK,
            )
        }
        AlgebraCommand::Free {
            signature_of,
            poset,
            depth,
        } => {
            let sig = ws.algebra(&signature_of)?.signature().clone();
            let free = algebra::truncated_free(&sig, &ws.poset_named(&poset)?, depth)?;
            (
                json!({ "carrier": poset_to_json(free.carrier()), "terms": free.terms().len() }),
                OK,
            )
        }
        AlgebraCommand::SimilarityClasses { signature_of, depth } => {
            let sig = ws.algebra(&signature_of)?.signature().clone();
            let classes: Vec<Value> = algebra::similarity_classes(&sig, depth)
                .into_iter()
                .map(|c| json!({ "representative": c.representative.to_string(), "slots": c.slots }))
                .collect();
            (json!({ "signature": signature_to_json(&sig), "classes": classes }), OK)
        }
        AlgebraCommand::DenseTriangle { a, b1, b2, h1, h2, p } => {
            let holds = algebra::check_dense_triangle(
                ws.algebra(&a)?,
                ws.algebra(&b1)?,
                ws.algebra(&b2)?,
                ws.map(&h1)?,
                ws.map(&h2)?,
                ws.map(&p)?,
            )?;
            verdict("homomorphism", holds)
        }
    })
}

fn binding_doc(a: &ContinuousAlgebra, env: &[(String, usize)]) -> Value {
    let m: BTreeMap<&str, &str> = env.iter().map(|(x, v)| (x.as_str(), a.carrier().name(*v))).collect();
    json!(m)
}

fn term_command(ws: &Workspace, c: TermCommand) -> Result<(Value, u8), CliError> {
    let term_doc = |t: &ExtendedTerm| json!({ "term": term_to_json(t), "text": t.to_string() });
    Ok(match c {
        TermCommand::Support { term } => {
            let support: Vec<String> = term::variable_support(ws.term(&term)?).into_iter().collect();
            (json!({ "support": support }), OK)
        }
        TermCommand::Interpret { algebra, term, env } => {
            let a = ws.algebra(&algebra)?;
            let value = term::interpret(a, ws.term(&term)?, &environment(a, &env)?)?;
            (
                json!({ "defined": value.is_some(), "value": value.map(|v| a.carrier().name(v)) }),
                OK,
            )
        }
        TermCommand::Definable { algebra, term } => (
            json!({ "definable": term::is_definable(ws.algebra(&algebra)?, ws.term(&term)?)? }),
            OK,
        ),
        TermCommand::Satisfies { algebra, equation } => {
            let a = ws.algebra(&algebra)?;
            let mut doc = match term::equation_witness(a, ws.equation(&equation)?)? {
                None => json!({ "satisfied": true }),
                Some(env) => json!({ "satisfied": false, "witness": binding_doc(a, &env) }),
            };
            doc["equation"] = json!(equation);
            (doc, OK)
        }
        TermCommand::EncodeInequation { lhs, rhs } => {
            let e = term::encode_inequation(ws.term(&lhs)?.clone(), ws.term(&rhs)?.clone());
            let mut doc = equation_to_json(&e);
            doc["text"] = json!(e.to_string());
            (doc, OK)
        }
        TermCommand::InVariety { algebra, variety } => {
            let a = ws.algebra(&algebra)?;
            let doc = match term::variety_witness(a, ws.variety(&variety)?)? {
                None => json!({ "member": true }),
                Some((i, env)) => json!({ "member": false, "equation": i, "witness": binding_doc(a, &env) }),
            };
            (doc, OK)
        }
        TermCommand::HomDefinability { hom, term, env } => {
            let (a, b) = (ws.algebra(&hom.from)?, ws.algebra(&hom.to)?);
            let t = ws.term(&term)?;
            let holds = term::check_hom_definability(ws.map(&hom.map)?, a, b, t, &environment(a, &env)?)?;
            let (mut doc, code) = verdict("preserved", holds);
            doc["term"] = term_doc(t);
            (doc, code)
        }
    })
}

fn monad_command(ws: &Workspace, c: MonadCommand, settings: &Settings) -> Result<(Value, u8), CliError> {
    Ok(match c {
        MonadCommand::Validate { monad } => {
            let report = monad::validate_presentation(ws.monad(&monad)?);
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| json!({ "law": v.law, "witness": v.witness }))
                .collect();
            let code = if report.is_valid() { OK } else { COUNTEREXAMPLE };
            (
                json!({ "monad": monad, "valid": report.is_valid(), "violations": violations }),
                code,
            )
        }
        MonadCommand::Extend { monad, n, m, u } => {
            let mo = ws.monad(&monad)?;
            let u = elements(&mo.stage(m)?.poset, &u)?;
            if u.len() != n {
                return Err(CliError::Usage(format!("--u needs {n} elements, got {}", u.len())));
            }
            (
                json!({ "extension": map_doc(&monad::kleisli_extend(mo, n, m, &u)?) }),
                OK,
            )
        }
        MonadCommand::Signature { monad } => (
            json!({ "signature": signature_to_json(&monad::associated_signature(ws.monad(&monad)?)) }),
            OK,
        ),
        MonadCommand::Equations { monad } => {
            let eqs: Vec<Value> = monad::associated_equations(ws.monad(&monad)?)
                .iter()
                .map(|e| json!({ "lhs": term_to_json(&e.lhs), "rhs": term_to_json(&e.rhs), "text": e.to_string() }))
                .collect();
            (json!({ "equations": eqs }), OK)
        }
        MonadCommand::Free { monad, n } => (with_carrier(&monad::free_algebra(ws.monad(&monad)?, n)?), OK),
        MonadCommand::FreeExtension { monad, n, algebra, f } => {
            let a = ws.algebra(&algebra)?;
            let f = elements(a.carrier(), &f)?;
            if f.len() != n {
                return Err(CliError::Usage(format!("--f needs {n} elements, got {}", f.len())));
            }
            (
                json!({ "extension": map_doc(&monad::free_extension(ws.monad(&monad)?, n, a, &f)?) }),
                OK,
            )
        }
        MonadCommand::VarietyAlgebras { monad, max_size } => {
            let algebras = monad::variety_algebras(ws.monad(&monad)?, max_size)?;
            (
                json!({ "algebras": algebras.iter().map(with_carrier).collect::<Vec<_>>() }),
                OK,
            )
        }
        MonadCommand::VerifyFreeness { monad, max_size, n } => {
            let mo = ws.monad(&monad)?;
            let algebras = monad::variety_algebras(mo, max_size)?;
            let arities: Vec<usize> = match n {
                Some(n) => vec![n],
                None => (0..=mo.max_arity()).collect(),
            };
            let parts = arities
                .into_iter()
                .map(|n| {
                    let mut r = monad::verify_freeness(mo, n, &algebras, settings.exec)?;
                    r.suite = format!("free-{n}");
                    Ok(r)
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            report_doc(Report::aggregate(&format!("monad-freeness:{monad}"), parts), settings)
        }
    })
}
