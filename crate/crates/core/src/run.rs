//! Command dispatch and reports.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::charmod::{
    check_cor_artinian, check_cor_id, check_faithful, check_gorenstein, check_prop2, check_split,
    check_thm8, check_type_formula, check_type_formula_depth, quasi_canonical, CanonicalData,
    CheckReport, Verdict,
};
use crate::cmr::{print, InputDocument};
use crate::corpus::{generate_corpus, Instance, Profile};
use crate::error::{Error, Result};
use crate::homology::{initial_degree, iso_probe_up_to_shift, IsoVerdict, DEFAULT_TRIALS};
use crate::invariants::{
    base_betti, dimension, hilbert_series, is_faithful, module_report, ring_is_cohen_macaulay,
    ring_is_gorenstein,
};
use crate::polyring::Vector;
use crate::resolution::{resolve, PresentedModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Thm8,
    Type,
    TypeDepth,
    Gorenstein,
    CorId,
    CorArtinian,
    Faithful,
    Prop2,
    Split,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "thm8" => Suite::Thm8,
            "type" => Suite::Type,
            "type-depth" => Suite::TypeDepth,
            "gorenstein" => Suite::Gorenstein,
            "cor-id" => Suite::CorId,
            "cor-artinian" => Suite::CorArtinian,
            "faithful" => Suite::Faithful,
            "prop2" => Suite::Prop2,
            "split" => Suite::Split,
            "all" => Suite::All,
            other => return Err(Error::UnknownCommand(format!("check suite `{other}`"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Gb,
    Res,
    Invariants,
    Tmod,
    Emod,
    Canonical,
    Check(Suite),
    Corpus(Profile),
    HuntCounterexample,
}

impl Command {
    pub fn name(&self) -> String {
        match self {
            Command::Gb => "gb".into(),
            Command::Res => "res".into(),
            Command::Invariants => "invariants".into(),
            Command::Tmod => "tmod".into(),
            Command::Emod => "emod".into(),
            Command::Canonical => "canonical".into(),
            Command::Check(s) => format!("check {}", suite_name(*s)),
            Command::Corpus(p) => format!("corpus {}", json!(p).as_str().unwrap_or_default()),
            Command::HuntCounterexample => "hunt-counterexample".into(),
        }
    }

    /// Whether the command reads an input document.
    pub fn needs_document(&self) -> bool {
        !matches!(self, Command::Corpus(_) | Command::HuntCounterexample)
    }
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Thm8 => "thm8",
        Suite::Type => "type",
        Suite::TypeDepth => "type-depth",
        Suite::Gorenstein => "gorenstein",
        Suite::CorId => "cor-id",
        Suite::CorArtinian => "cor-artinian",
        Suite::Faithful => "faithful",
        Suite::Prop2 => "prop2",
        Suite::Split => "split",
        Suite::All => "all",
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub count: usize,
    pub max_steps: Option<usize>,
    pub degree_bound: Option<i32>,
    pub module: Option<String>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            count: 20,
            max_steps: None,
            degree_bound: None,
            module: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub instance: Option<usize>,
    pub results: Value,
    /// Aggregate verdict of the checks the command ran, if any.
    pub verdict: Option<Verdict>,
    pub timing_ms: u128,
}

impl Report {
    /// The JSON report without the timing field, for comparing runs.
    pub fn deterministic_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        v.as_object_mut().expect("object").remove("timing_ms");
        v
    }

    /// 0 verified or no verdict, 1 refuted, 3 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Some(Verdict::Refuted) => 1,
            Some(Verdict::Inconclusive) => 3,
            _ => 0,
        }
    }

    /// Indented `key: value` lines.
    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if let Some(i) = self.instance {
            out.push_str(&format!("instance: {i}\n"));
        }
        if let Some(v) = self.verdict {
            out.push_str(&format!("verdict: {}\n", json!(v).as_str().unwrap_or_default()));
        }
        write_text(&mut out, &self.results, 0);
        out.push_str(&format!("timing_ms: {}\n", self.timing_ms));
        out
    }
}

fn write_text(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_scalar_like(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", compact(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    write_text(out, x, indent + 1);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_scalar_like(x) {
                    out.push_str(&format!("{pad}- {}\n", compact(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    write_text(out, x, indent + 1);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", compact(other))),
    }
}

fn is_scalar_like(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(|x| !x.is_object()),
        _ => true,
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Refuted dominates inconclusive, which dominates everything else.
pub fn combine(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    let mut out = Verdict::Verified;
    for v in verdicts {
        match v {
            Verdict::Refuted => return Verdict::Refuted,
            Verdict::Inconclusive => out = Verdict::Inconclusive,
            _ => {}
        }
    }
    out
}

/// Runs `command` on `doc` (ignored by the corpus commands).
pub fn run(command: Command, doc: Option<&InputDocument>, opts: &Options) -> Result<Report> {
    let start = Instant::now();
    let (results, verdict) = match command {
        Command::Corpus(profile) => {
            let (r, v) = run_corpus(profile, opts)?;
            (r, Some(v))
        }
        Command::HuntCounterexample => (hunt(opts)?, None),
        _ => {
            let doc = doc.ok_or(Error::MissingDocument)?;
            run_on_document(command, doc, opts)?
        }
    };
    Ok(Report {
        command: command.name(),
        instance: None,
        results,
        verdict,
        timing_ms: start.elapsed().as_millis(),
    })
}

fn selected_module(doc: &InputDocument, ring: &crate::groebner::Ring, opts: &Options, default: Option<&str>) -> Result<(String, PresentedModule)> {
    let name = opts
        .module
        .as_deref()
        .or(default)
        .ok_or(Error::MissingModule)?;
    Ok((name.to_string(), doc.module(ring, name)?))
}

fn run_on_document(command: Command, doc: &InputDocument, opts: &Options) -> Result<(Value, Option<Verdict>)> {
    let ring = doc.ring()?;
    let poly = ring.poly();
    match command {
        Command::Gb => {
            let ideal_gb: Vec<String> = ring.ideal().gb().iter().map(|p| poly.format(p)).collect();
            let mut out = json!({"ideal_gb": ideal_gb});
            if let Some(name) = &opts.module {
                let m = doc.module(&ring, name)?;
                out["module"] = json!(name);
                out["module_gb"] = json!(m.relation_gb().iter().map(|v| format_vector(&ring, v, m.rank())).collect::<Vec<_>>());
            }
            Ok((out, None))
        }
        Command::Res => {
            let (name, m) = selected_module(doc, &ring, opts, Some("R"))?;
            let mut out = json!({"module": name, "betti": betti_json(&m)});
            if let Some(k) = opts.max_steps {
                let res = resolve(&m, Some(k))?;
                out["ranks_over_r"] = json!(res.ranks());
                out["complete_over_r"] = json!(res.is_complete());
            }
            Ok((out, None))
        }
        Command::Invariants => {
            let (name, m) = selected_module(doc, &ring, opts, Some("R"))?;
            let mut out = module_json(&m)?;
            out["module"] = json!(name);
            Ok((out, None))
        }
        Command::Tmod | Command::Emod => {
            let (name, m) = selected_module(doc, &ring, opts, None)?;
            let cd = quasi_canonical(&ring)?;
            let x = if command == Command::Tmod {
                cd.char_module(&m)?
            } else {
                cd.cochar_module(&m)?
            };
            let mut out = module_json(&x)?;
            out["module"] = json!(name);
            out["s"] = json!(cd.s());
            Ok((out, None))
        }
        Command::Canonical => {
            let cd = quasi_canonical(&ring)?;
            let mut out = module_json(cd.module())?;
            out["s"] = json!(cd.s());
            Ok((out, None))
        }
        Command::Check(suite) => {
            let cd = quasi_canonical(&ring)?;
            let (name, m) = selected_module(doc, &ring, opts, Some("R"))?;
            let extras: Vec<PresentedModule> = doc
                .modules
                .iter()
                .map(|b| doc.module(&ring, &b.name))
                .collect::<Result<_>>()?;
            let reports = if suite == Suite::All {
                all_checks(&cd, &m, &extras, opts)
            } else {
                vec![single_check(suite, &cd, &m, &extras, opts)?]
            };
            let verdict = combine(reports.iter().map(|r| r.verdict));
            let out = if let [one] = reports.as_slice() {
                let mut v = json!({"module": name, "checker": one.checker, "verdict": one.verdict, "witness": one.witness});
                if !one.notes.is_empty() {
                    v["notes"] = json!(one.notes);
                }
                v
            } else {
                json!({"module": name, "checks": reports})
            };
            Ok((out, Some(verdict)))
        }
        Command::Corpus(_) | Command::HuntCounterexample => unreachable!("handled by run"),
    }
}

fn single_check(
    suite: Suite,
    cd: &CanonicalData,
    m: &PresentedModule,
    extras: &[PresentedModule],
    opts: &Options,
) -> Result<CheckReport> {
    match suite {
        Suite::Thm8 => check_thm8(cd, extras),
        Suite::Type => check_type_formula(cd, m),
        Suite::TypeDepth => check_type_formula_depth(cd, m),
        Suite::Gorenstein => check_gorenstein(cd),
        Suite::CorId => check_cor_id(cd, m, opts.seed),
        Suite::CorArtinian => check_cor_artinian(cd, m),
        Suite::Faithful => check_faithful(cd, m, opts.seed),
        Suite::Prop2 => check_prop2(cd, m, opts.degree_bound, opts.seed),
        Suite::Split => check_split(cd, m),
        Suite::All => unreachable!("expanded by the caller"),
    }
}

/// Every checker; unmet hypotheses become not-applicable reports.
fn all_checks(cd: &CanonicalData, m: &PresentedModule, extras: &[PresentedModule], opts: &Options) -> Vec<CheckReport> {
    use Suite::*;
    [Thm8, Type, TypeDepth, Gorenstein, CorId, CorArtinian, Faithful, Prop2, Split]
        .into_iter()
        .map(|s| {
            single_check(s, cd, m, extras, opts).unwrap_or_else(|e| CheckReport {
                checker: suite_name(s).replace('-', "_"),
                verdict: Verdict::NotApplicable,
                witness: Value::Null,
                notes: vec![e.to_string()],
            })
        })
        .collect()
}

fn format_vector(ring: &crate::groebner::Ring, v: &Vector, rank: usize) -> Vec<String> {
    let poly = ring.poly();
    (0..rank).map(|i| poly.format(&poly.component(v, i))).collect()
}

fn betti_json(m: &PresentedModule) -> Value {
    json!(base_betti(m)
        .entries()
        .iter()
        .map(|&(i, j, c)| json!([i, j, c]))
        .collect::<Vec<_>>())
}

const HILBERT_PREVIEW: i32 = 6;

/// Invariants, Betti table over `Q`, Hilbert numerator and the first values of the
/// Hilbert function starting at the initial degree.
pub fn module_json(m: &PresentedModule) -> Result<Value> {
    let hs = hilbert_series(m);
    let numerator: Vec<Value> = hs.numerator().iter().map(|&(d, c)| json!([d, c])).collect();
    let mut out = if m.is_zero() {
        json!({"is_zero": true, "dim": -1, "nu": 0})
    } else {
        let mut v = serde_json::to_value(module_report(m)?).expect("report serializes");
        v["is_zero"] = json!(false);
        v
    };
    let start = initial_degree(m).unwrap_or(0);
    out["betti"] = betti_json(m);
    out["hilbert_numerator"] = json!(numerator);
    out["hilbert_function"] = json!({"from": start, "values": hs.function(start, start + HILBERT_PREVIEW - 1)});
    Ok(out)
}

/// The checks run per corpus instance for `M ∈ {R, k, random}`.
pub fn instance_checks(inst: &Instance, opts: &Options) -> Result<Value> {
    Ok(instance_outcome(inst, opts)?.0)
}

fn instance_outcome(inst: &Instance, opts: &Options) -> Result<(Value, Verdict)> {
    let ring = &inst.ring;
    let cd = quasi_canonical(ring)?;
    let modules = [
        ("R", PresentedModule::ring_module(ring)),
        ("k", PresentedModule::residue_field(ring)),
        ("M", inst.module.clone()),
    ];
    let mut checks = Vec::new();
    checks.push(tagged(check_thm8(&cd, std::slice::from_ref(&inst.module))?, None));
    checks.push(tagged(check_gorenstein(&cd)?, None));
    for (name, m) in &modules {
        checks.push(tagged(check_prop2(&cd, m, opts.degree_bound, opts.seed)?, Some(name)));
        if !m.is_zero() {
            checks.push(tagged(check_type_formula(&cd, m)?, Some(name)));
        }
        checks.push(tagged(check_split(&cd, m)?, Some(name)));
    }
    let verdict = combine(checks.iter().map(|(_, r)| r.verdict));
    let mut out = Map::new();
    out.insert("id".into(), json!(inst.id));
    out.insert("family".into(), json!(inst.family));
    out.insert("document".into(), json!(print(&inst.document())));
    out.insert("is_cm".into(), json!(ring_is_cohen_macaulay(ring)));
    out.insert("is_gorenstein".into(), json!(ring_is_gorenstein(ring)));
    out.insert("verdict".into(), json!(verdict));
    out.insert(
        "checks".into(),
        Value::Array(
            checks
                .into_iter()
                .map(|(module, r)| {
                    let mut v = serde_json::to_value(&r).expect("report serializes");
                    if let Some(m) = module {
                        v["module"] = json!(m);
                    }
                    v
                })
                .collect(),
        ),
    );
    Ok((Value::Object(out), verdict))
}

fn tagged<'a>(r: CheckReport, module: Option<&'a &'a str>) -> (Option<&'a str>, CheckReport) {
    (module.copied(), r)
}

/// Runs [`instance_checks`] over the generated corpus, in parallel, returning results in
/// instance order.
fn run_corpus(profile: Profile, opts: &Options) -> Result<(Value, Verdict)> {
    let instances = generate_corpus(opts.seed, opts.count, profile);
    let outcomes: Vec<(Value, Verdict)> = instances
        .par_iter()
        .map(|inst| instance_outcome(inst, opts))
        .collect::<Result<_>>()?;
    let verdict = combine(outcomes.iter().map(|o| o.1));
    let results: Vec<Value> = outcomes.into_iter().map(|o| o.0).collect();
    let non_cm = results.iter().filter(|r| r["is_cm"] == json!(false)).count();
    Ok((
        json!({
            "profile": profile,
            "seed": opts.seed,
            "count": opts.count,
            "non_cm": non_cm,
            "instances": results,
        }),
        verdict,
    ))
}

/// Searches mixed instances over non-Gorenstein rings for modules `C` with
/// `C ≅ T(C)` up to shift and `dim C = dim R`. Reports what it finds and asserts nothing.
fn hunt(opts: &Options) -> Result<Value> {
    let instances = generate_corpus(opts.seed, opts.count, Profile::Mixed);
    let found: Vec<Vec<Value>> = instances
        .par_iter()
        .map(|inst| -> Result<Vec<Value>> {
            let ring = &inst.ring;
            if ring_is_gorenstein(ring) {
                return Ok(Vec::new());
            }
            let cd = quasi_canonical(ring)?;
            let dim_r = dimension(&PresentedModule::ring_module(ring));
            let k = PresentedModule::residue_field(ring);
            let candidates = [
                ("R", PresentedModule::ring_module(ring)),
                ("M", inst.module.clone()),
                ("E", cd.module().clone()),
                ("T(k)", cd.char_module(&k)?),
                ("T(E)", cd.char_module(cd.module())?),
            ];
            let mut hits = Vec::new();
            for (name, c) in candidates {
                if c.is_zero() || dimension(&c) != dim_r {
                    continue;
                }
                let tc = cd.char_module(&c)?;
                let (iso, shift) = iso_probe_up_to_shift(&c, &tc, None, DEFAULT_TRIALS, opts.seed)?;
                if iso == IsoVerdict::ProbablyIsomorphic {
                    hits.push(json!({
                        "id": inst.id,
                        "candidate": name,
                        "shift": shift,
                        "faithful": is_faithful(&c),
                        "is_cm": ring_is_cohen_macaulay(ring),
                        "document": print(&inst.document()),
                    }));
                }
            }
            Ok(hits)
        })
        .collect::<Result<_>>()?;
    let hits: Vec<Value> = found.into_iter().flatten().collect();
    Ok(json!({"seed": opts.seed, "count": opts.count, "candidates": hits}))
}

/// Caps the global worker pool at `CHARMOD_THREADS` when set. Call once, before any
/// corpus command.
pub fn init_thread_pool() {
    if let Some(n) = std::env::var("CHARMOD_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // fails only if the pool was already built, in which case it stays as is
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}
