//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and exits nonzero
//! only if a criterion fails outside the two documented failures of condition (7).

mod common;

use std::time::{Duration, Instant};

use charmod::charmod::{
    check_gorenstein, check_prop2, check_split, check_thm8, check_type_formula, quasi_canonical,
    CanonicalData, Verdict,
};
use charmod::cmr::parse;
use charmod::corpus::{generate_corpus, Instance, Profile};
use charmod::groebner::{QuotientRing, Ring};
use charmod::homology::{
    homology_at, initial_degree, iso_probe_up_to_shift, tensor_complex, IsoVerdict, DEFAULT_TRIALS,
};
use charmod::invariants::{
    depth_module, depth_via_ext, dimension, nu, pd_over_base, ring_is_cohen_macaulay,
    ring_is_gorenstein, ring_report, type_of, type_via_ext,
};
use charmod::resolution::{base_resolution, resolve, PresentedModule};

fn fixture(name: &str) -> Ring {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    parse(&std::fs::read_to_string(path).unwrap()).unwrap().ring().unwrap()
}

/// Outcome of one criterion.
struct Outcome {
    pass: bool,
    detail: String,
    /// Set when the failure is the documented condition (7) pattern.
    documented: bool,
}

impl Outcome {
    fn from_failures(failures: Vec<String>, summary: String) -> Self {
        let pass = failures.is_empty();
        let detail = if pass { summary } else { format!("{summary}; {}", failures.join("; ")) };
        Outcome { pass, detail, documented: false }
    }
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

fn within(failures: &mut Vec<String>, start: Instant, limit: Duration) {
    let t = start.elapsed();
    check(failures, t < limit, format!("took {t:?}, limit {limit:?}"));
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut f = Vec::new();
    let ring = fixture("veronese.cmr");
    let rep = ring_report(&ring);
    check(&mut f, rep.dim == 2, format!("dim R = {}", rep.dim));
    check(&mut f, rep.depth == 2, format!("depth R = {}", rep.depth));
    check(&mut f, rep.type_ == 2, format!("type R = {}", rep.type_));
    check(&mut f, rep.is_gorenstein == Some(false), "R reported Gorenstein");
    let cd = quasi_canonical(&ring).unwrap();
    let r = PresentedModule::ring_module(&ring);
    let t_r = cd.char_module(&r).unwrap();
    let type_t = type_of(&t_r).unwrap();
    check(&mut f, type_t == 3, format!("type T_R = {type_t}"));
    check(&mut f, depth_module(&t_r).unwrap() == 2, "depth T_R != 2");
    check(&mut f, dimension(&t_r) == 2, "T_R not maximal CM");
    let tor1 = homology_at(&tensor_complex(cd.resolution(), &r).unwrap(), 1).unwrap().module;
    check(&mut f, depth_module(&tor1).unwrap() == 1, "depth Tor_1 != 1");
    check(&mut f, dimension(&tor1) == 2, "dim Tor_1 != 2");
    within(&mut f, start, Duration::from_secs(10));
    Outcome::from_failures(f, format!("Veronese invariants in {:?}", start.elapsed()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut f = Vec::new();
    let ring = fixture("e2.cmr");
    let rep = ring_report(&ring);
    check(&mut f, rep.dim == 1 && rep.depth == 0 && rep.type_ == 1, format!("(dim, depth, type) = ({}, {}, {})", rep.dim, rep.depth, rep.type_));
    let cd = quasi_canonical(&ring).unwrap();
    let k = PresentedModule::residue_field(&ring);
    let t_k = cd.char_module(&k).unwrap();
    let d0 = initial_degree(&t_k).unwrap_or(0);
    let hf: Vec<usize> = (d0..d0 + 5).map(|d| common::hilbert_value(&t_k, d)).collect();
    check(&mut f, hf == [1, 0, 0, 0, 0], format!("Hilbert function of T_k = {hf:?}"));
    check(&mut f, nu(&t_k) == 1, "nu(T_k) != 1");
    let x = ring.poly().var(0);
    let r_mod_x = PresentedModule::cyclic(&ring, &[x]).unwrap();
    check(&mut f, cd.char_module(&r_mod_x).unwrap().is_zero(), "T_{R/(x)} != 0");
    within(&mut f, start, Duration::from_secs(2));
    let other_ok = f.is_empty();
    let thm8 = check_thm8(&cd, &[]).unwrap();
    let conds: Vec<bool> = serde_json::from_value(thm8.witness["conditions"].clone()).unwrap();
    let all_false = conds.iter().all(|c| !c);
    let pass = other_ok && all_false && thm8.verdict == Verdict::Verified;
    if !pass {
        f.push(format!("check_thm8 conditions {conds:?}, verdict {:?}", thm8.verdict));
    }
    let documented = other_ok && conds == [false, false, false, false, false, false, true];
    Outcome {
        pass,
        documented,
        detail: if pass { "e2 golden values".into() } else { f.join("; ") },
    }
}

struct CorpusData {
    instances: Vec<Instance>,
    canonical: Vec<CanonicalData>,
}

fn modules(inst: &Instance) -> [(&'static str, PresentedModule); 3] {
    [
        ("R", PresentedModule::ring_module(&inst.ring)),
        ("k", PresentedModule::residue_field(&inst.ring)),
        ("M", inst.module.clone()),
    ]
}

fn criterion_3(c: &CorpusData, start: Instant) -> Outcome {
    let mut f = Vec::new();
    let mut pairs = 0;
    for (inst, cd) in c.instances.iter().zip(&c.canonical) {
        for (name, m) in modules(inst) {
            pairs += 1;
            let rep = check_prop2(cd, &m, None, 7).unwrap();
            check(&mut f, rep.verdict == Verdict::Verified, format!("instance {} M = {name}: {}", inst.id, rep.witness));
            // dense oracle on the first degrees of each side
            let (t, th) = (cd.char_module(&m).unwrap(), cd.char_via_hom(&m).unwrap());
            let (e, et) = (cd.cochar_module(&m).unwrap(), cd.cochar_via_tensor(&m).unwrap());
            for (a, b, what) in [(&t, &th, "T"), (&e, &et, "E")] {
                let lo = initial_degree(a).into_iter().chain(initial_degree(b)).min().unwrap_or(0);
                let ok = (lo..lo + 4).all(|d| common::hilbert_value(a, d) == common::hilbert_value(b, d));
                check(&mut f, ok, format!("instance {} M = {name}: dense {what} counts differ", inst.id));
            }
        }
    }
    within(&mut f, start, Duration::from_secs(300));
    Outcome::from_failures(f, format!("{pairs} instance-pairs"))
}

fn criterion_4(c: &CorpusData) -> Outcome {
    let mut failing = Vec::new();
    let mut documented = true;
    let mut non_cm = 0;
    for (inst, cd) in c.instances.iter().zip(&c.canonical) {
        if !ring_is_cohen_macaulay(&inst.ring) {
            non_cm += 1;
        }
        let rep = check_thm8(cd, std::slice::from_ref(&inst.module)).unwrap();
        if rep.verdict != Verdict::Verified {
            let conds: Vec<bool> = serde_json::from_value(rep.witness["conditions"].clone()).unwrap();
            // documented pattern: (1)-(6) agree and only (7) is true on a non-CM ring
            documented &= conds[..6].iter().all(|c| !c) && conds[6];
            failing.push(inst.id);
        }
    }
    let mut f = Vec::new();
    check(&mut f, non_cm >= 10, format!("only {non_cm} non-CM instances"));
    documented &= f.is_empty();
    if !failing.is_empty() {
        f.push(format!("conditions disagree on {} instances {failing:?}", failing.len()));
    }
    let mut out = Outcome::from_failures(f, format!("{} instances, {non_cm} non-CM", c.instances.len()));
    out.documented = !out.pass && documented;
    out
}

fn criterion_5(c: &CorpusData) -> Outcome {
    let mut f = Vec::new();
    let mut n = 0;
    for (inst, cd) in c.instances.iter().zip(&c.canonical) {
        // independent route for type(R) through the resolution of k over R
        let r = PresentedModule::ring_module(&inst.ring);
        check(&mut f, type_of(&r).unwrap() == type_via_ext(&r).unwrap(), format!("instance {}: type routes differ", inst.id));
        for (name, m) in modules(inst) {
            if m.is_zero() {
                continue;
            }
            n += 1;
            let rep = check_type_formula(cd, &m).unwrap();
            check(&mut f, rep.verdict == Verdict::Verified, format!("instance {} M = {name}: {}", inst.id, rep.witness));
        }
    }
    Outcome::from_failures(f, format!("{n} nonzero modules"))
}

fn criterion_6(c: &CorpusData) -> Outcome {
    let mut f = Vec::new();
    for (inst, cd) in c.instances.iter().zip(&c.canonical).take(30) {
        for (name, m) in modules(inst) {
            let rep = check_split(cd, &m).unwrap();
            check(&mut f, rep.verdict == Verdict::Verified, format!("instance {} M = {name}: {}", inst.id, rep.witness));
        }
    }
    Outcome::from_failures(f, "30 instances, M in {R, k, random}".into())
}

fn criterion_7() -> Outcome {
    let mut f = Vec::new();
    let instances = generate_corpus(17, 20, Profile::Mixed);
    for inst in &instances {
        for (name, m) in modules(inst) {
            if m.is_zero() {
                continue;
            }
            let depth = depth_module(&m).unwrap();
            check(&mut f, depth == inst.ring.nvars() as i32 - pd_over_base(&m) as i32, format!("instance {} {name}: depth formula", inst.id));
            check(&mut f, depth_via_ext(&m, 4).unwrap() == Some(depth as usize), format!("instance {} {name}: Ext index", inst.id));
            let base = base_resolution(&m);
            let over_r = resolve(&m, Some(3)).unwrap();
            for d in 0..5 {
                for i in 0..base.modules().len() {
                    check(&mut f, common::homology_dimension(&base, i, d) == 0, format!("instance {} {name}: base resolution at {i}, degree {d}", inst.id));
                }
                for i in 0..over_r.modules().len().saturating_sub(1) {
                    check(&mut f, common::homology_dimension(&over_r, i, d) == 0, format!("instance {} {name}: R-resolution at {i}, degree {d}", inst.id));
                }
            }
        }
        let poly = inst.ring.poly().clone();
        let gens = inst.ring.ideal().generators().to_vec();
        let reference: Vec<String> = inst.ring.ideal().gb().iter().map(|p| poly.format(p)).collect();
        for k in 0..10usize {
            let mut g = gens.clone();
            let len = g.len().max(1);
            g.rotate_left(k % len);
            if k % 2 == 1 {
                g.reverse();
            }
            let ring = QuotientRing::new(poly.clone(), g).unwrap();
            let gb: Vec<String> = ring.ideal().gb().iter().map(|p| poly.format(p)).collect();
            check(&mut f, gb == reference, format!("instance {}: GB depends on order", inst.id));
        }
    }
    Outcome::from_failures(f, "20 instances, 10 orderings each".into())
}

fn criterion_8() -> Outcome {
    let mut f = Vec::new();
    for name in ["hypersurface.cmr", "ci.cmr", "veronese.cmr", "e2.cmr"] {
        let ring = fixture(name);
        let gorenstein = matches!(name, "hypersurface.cmr" | "ci.cmr");
        let cd = quasi_canonical(&ring).unwrap();
        let r = PresentedModule::ring_module(&ring);
        let e_r = cd.cochar_module(&r).unwrap().minimize();
        let e_free_rank_one = e_r.rank() == 1 && e_r.relations().is_empty();
        let rep = check_gorenstein(&cd).unwrap();
        check(&mut f, rep.verdict == Verdict::Verified, format!("{name}: check_gorenstein {:?}", rep.verdict));
        check(&mut f, ring_is_gorenstein(&ring) == gorenstein, format!("{name}: Gorenstein flag"));
        check(&mut f, e_free_rank_one == gorenstein, format!("{name}: E(R) free of rank one is {e_free_rank_one}"));
        if gorenstein {
            let t_r = cd.char_module(&r).unwrap();
            let (iso, _) = iso_probe_up_to_shift(&t_r, &r, None, DEFAULT_TRIALS, 8).unwrap();
            check(&mut f, iso == IsoVerdict::ProbablyIsomorphic, format!("{name}: T_R vs R {iso:?}"));
            let (iso, _) = iso_probe_up_to_shift(&e_r, &r, None, DEFAULT_TRIALS, 8).unwrap();
            check(&mut f, iso == IsoVerdict::ProbablyIsomorphic, format!("{name}: E_R vs R {iso:?}"));
        }
    }
    Outcome::from_failures(f, "hypersurface, ci Gorenstein; Veronese, e2 not".into())
}

fn main() {
    let mut outcomes = vec![(1, criterion_1()), (2, criterion_2())];
    let start = Instant::now();
    let instances = generate_corpus(7, 50, Profile::Mixed);
    let canonical = instances.iter().map(|i| quasi_canonical(&i.ring).unwrap()).collect();
    let corpus = CorpusData { instances, canonical };
    outcomes.push((3, criterion_3(&corpus, start)));
    outcomes.push((4, criterion_4(&corpus)));
    outcomes.push((5, criterion_5(&corpus)));
    outcomes.push((6, criterion_6(&corpus)));
    outcomes.push((7, criterion_7()));
    outcomes.push((8, criterion_8()));
    let mut unexpected = 0;
    for (n, o) in &outcomes {
        let status = if o.pass { "PASS" } else { "FAIL" };
        let note = if o.documented { " [documented: condition (7) does not characterize Cohen-Macaulay rings]" } else { "" };
        println!("criterion {n}: {status} ({}){note}", o.detail);
        if !o.pass && !o.documented {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed unexpectedly");
        std::process::exit(1);
    }
}
