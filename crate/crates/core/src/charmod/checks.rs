use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homology::{
    default_degree_bound, hilbert_functions_agree, homology_at, iso_probe, iso_probe_up_to_shift,
    tensor_complex,
    IsoVerdict, DEFAULT_TRIALS,
};
use crate::invariants::{
    annihilator, depth_module, dimension, nu, ring_is_cohen_macaulay, ring_is_gorenstein,
    type_of,
};
use crate::resolution::PresentedModule;

use super::CanonicalData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Refuted,
    Inconclusive,
    /// The hypotheses of the statement do not hold on this instance.
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub checker: String,
    pub verdict: Verdict,
    pub witness: Value,
    pub notes: Vec<String>,
}

impl CheckReport {
    fn new(checker: &str, verdict: Verdict, witness: Value) -> Self {
        CheckReport {
            checker: checker.to_string(),
            verdict,
            witness,
            notes: Vec::new(),
        }
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}

fn verdict_of(ok: bool) -> Verdict {
    if ok {
        Verdict::Verified
    } else {
        Verdict::Refuted
    }
}

/// A free module: nonzero with an empty minimal relation set.
pub(crate) fn is_free(m: &PresentedModule) -> bool {
    let min = m.minimize();
    min.rank() > 0 && min.relations().is_empty()
}

/// The seven equivalent conditions for `R` to be Cohen–Macaulay. The existential ones
/// range over `R`, `k` and the supplied modules.
pub fn check_thm8(cd: &CanonicalData, modules: &[PresentedModule]) -> Result<CheckReport> {
    let ring = cd.ring();
    let r = PresentedModule::ring_module(ring);
    let dim_r = dimension(&r);
    let mut family = vec![r.clone(), PresentedModule::residue_field(ring)];
    family.extend(modules.iter().cloned());
    let mut t_dims = Vec::new();
    let mut e_dims = Vec::new();
    for m in &family {
        t_dims.push(dimension(&cd.char_module(m)?));
        e_dims.push(dimension(&cd.cochar_module(m)?));
    }
    let c1 = t_dims.contains(&dim_r);
    let c2 = e_dims.contains(&dim_r);
    let c3 = t_dims[0] == dim_r;
    let c4 = e_dims[0] == dim_r;
    let c5 = ring_is_cohen_macaulay(ring);
    let c6 = cd.alpha_map(&r)?.map.is_isomorphism();
    let c7 = cd.beta_map(cd.module())?.map.is_isomorphism();
    let conds = [c1, c2, c3, c4, c5, c6, c7];
    let agree = conds.iter().all(|&c| c == c5);
    Ok(CheckReport::new(
        "thm8",
        verdict_of(agree),
        json!({
            "conditions": conds,
            "first_six_agree": conds[..6].iter().all(|&c| c == c5),
            "dim_r": dim_r,
            "depth_r": depth_module(&r)?,
            "dim_t": t_dims,
            "dim_e": e_dims,
        }),
    ))
}

/// `ν(E(M)) = type(R) · ν(M)`.
pub fn check_type_formula(cd: &CanonicalData, m: &PresentedModule) -> Result<CheckReport> {
    if m.is_zero() {
        return Err(Error::ZeroModule("type formula"));
    }
    let type_r = type_of(&PresentedModule::ring_module(cd.ring()))?;
    let lhs = nu(&cd.cochar_module(m)?);
    let rhs = type_r * nu(m);
    Ok(CheckReport::new(
        "type_formula",
        verdict_of(lhs == rhs),
        json!({"nu_e_m": lhs, "type_r": type_r, "nu_m": nu(m)}),
    ))
}

/// Under `depth Tor^Q_{s-i}(R, M) >= t - i + 1` for `1 <= i <= s` and `T(M) != 0`:
/// `depth T(M) = t` and `type T(M) = type(R) · type(M)`.
pub fn check_type_formula_depth(cd: &CanonicalData, m: &PresentedModule) -> Result<CheckReport> {
    if m.is_zero() {
        return Err(Error::ZeroModule("type formula"));
    }
    let r = PresentedModule::ring_module(cd.ring());
    let t = depth_module(&r)?;
    let s = cd.s();
    let cx = tensor_complex(cd.resolution(), m)?;
    let mut tor_depths = Vec::new();
    let mut failure = None;
    for i in 1..=s {
        let tor = homology_at(&cx, s - i)?.module;
        // the zero module has infinite depth
        let d = if tor.is_zero() { None } else { Some(depth_module(&tor)?) };
        tor_depths.push(json!({"index": s - i, "depth": d}));
        if failure.is_none() && d.is_some_and(|d| d < t - i as i32 + 1) {
            failure = Some(s - i);
        }
    }
    let tm = cd.char_module(m)?;
    if tm.is_zero() {
        return Ok(CheckReport::new(
            "type_formula_depth",
            Verdict::NotApplicable,
            json!({"tor_depths": tor_depths, "t_m_zero": true}),
        )
        .note("T(M) = 0"));
    }
    let type_r = type_of(&r)?;
    let type_m = type_of(m)?;
    let type_t = type_of(&tm)?;
    let depth_t = depth_module(&tm)?;
    let witness = json!({
        "tor_depths": tor_depths,
        "depth_r": t,
        "depth_t_m": depth_t,
        "type_t_m": type_t,
        "type_r": type_r,
        "type_m": type_m,
    });
    Ok(match failure {
        Some(j) => CheckReport::new("type_formula_depth", Verdict::NotApplicable, witness)
            .note(format!("depth hypothesis fails at Tor_{j}")),
        None => CheckReport::new(
            "type_formula_depth",
            verdict_of(depth_t == t && type_t == type_r * type_m),
            witness,
        ),
    })
}

/// `T(R)` free, `E(R)` free and `R` Gorenstein are all equivalent.
pub fn check_gorenstein(cd: &CanonicalData) -> Result<CheckReport> {
    let r = PresentedModule::ring_module(cd.ring());
    let t_free = is_free(&cd.char_module(&r)?);
    let e_free = is_free(&cd.cochar_module(&r)?);
    let gor = ring_is_gorenstein(cd.ring());
    Ok(CheckReport::new(
        "gorenstein",
        verdict_of(t_free == gor && e_free == gor),
        json!({"t_r_free": t_free, "e_r_free": e_free, "is_gorenstein": gor, "type_r": type_of(&r)?}),
    ))
}

/// On modules with certified finite injective dimension (free modules over a Gorenstein
/// ring, `E` over a Cohen–Macaulay ring), `ν(T(M)) <= ν(M)`.
pub fn check_cor_id(cd: &CanonicalData, m: &PresentedModule, seed: u64) -> Result<CheckReport> {
    if m.is_zero() {
        return Err(Error::ZeroModule("injective dimension criterion"));
    }
    let ring = cd.ring();
    let nu_t = nu(&cd.char_module(m)?);
    let nu_m = nu(m);
    let finite_id = if ring_is_gorenstein(ring) && is_free(m) {
        Some("free over a Gorenstein ring")
    } else if ring_is_cohen_macaulay(ring)
        && iso_probe_up_to_shift(m, cd.module(), None, DEFAULT_TRIALS, seed)?.0
            == IsoVerdict::ProbablyIsomorphic
    {
        Some("canonical module of a Cohen-Macaulay ring")
    } else {
        None
    };
    let witness = json!({"nu_t_m": nu_t, "nu_m": nu_m, "finite_id": finite_id});
    Ok(match finite_id {
        Some(_) => CheckReport::new("cor_id", verdict_of(nu_t <= nu_m), witness),
        None if nu_t > nu_m => CheckReport::new("cor_id", Verdict::NotApplicable, witness)
            .note("nu(T(M)) > nu(M), so id M is infinite"),
        None => CheckReport::new("cor_id", Verdict::NotApplicable, witness)
            .note("finite injective dimension not certified"),
    })
}

/// Over an artinian ring, `type(M) >= type(T(M))` with `T(M) != 0` forces `R` Gorenstein.
pub fn check_cor_artinian(cd: &CanonicalData, m: &PresentedModule) -> Result<CheckReport> {
    let r = PresentedModule::ring_module(cd.ring());
    let dim = dimension(&r);
    if dim != 0 {
        return Err(Error::NotArtinian(dim));
    }
    if m.is_zero() {
        return Err(Error::ZeroModule("artinian criterion"));
    }
    let tm = cd.char_module(m)?;
    if tm.is_zero() {
        return Ok(CheckReport::new("cor_artinian", Verdict::NotApplicable, json!({"t_m_zero": true}))
            .note("T(M) = 0"));
    }
    let type_m = type_of(m)?;
    let type_t = type_of(&tm)?;
    let gor = ring_is_gorenstein(cd.ring());
    let witness = json!({"type_m": type_m, "type_t_m": type_t, "is_gorenstein": gor});
    Ok(if type_m >= type_t {
        CheckReport::new("cor_artinian", verdict_of(gor), witness)
    } else {
        CheckReport::new("cor_artinian", Verdict::NotApplicable, witness)
            .note("type(M) < type(T(M))")
    })
}

/// For `M ≅ T(M)` (up to a degree shift): `ann E ⊆ ann T(M) ⊆ ann M`, and when `M` is faithful also
/// `dim M = dim R`, `R` Cohen–Macaulay and `E` a canonical module.
pub fn check_faithful(cd: &CanonicalData, m: &PresentedModule, seed: u64) -> Result<CheckReport> {
    let ring = cd.ring();
    let poly = ring.poly();
    let tm = cd.char_module(m)?;
    if iso_probe_up_to_shift(m, &tm, None, DEFAULT_TRIALS, seed)?.0 != IsoVerdict::ProbablyIsomorphic {
        return Err(Error::HypothesisNotMet("M ≅ T(M) not established".into()));
    }
    let ann_e = annihilator(cd.module());
    let ann_t = annihilator(&tm);
    let ann_m = annihilator(m);
    let chain = ann_e.is_subset_of(poly, &ann_t) && ann_t.is_subset_of(poly, &ann_m);
    let faithful = ann_m.same_as(ring.ideal());
    let mut witness = json!({"annihilator_chain": chain, "faithful": faithful});
    let mut ok = chain;
    if faithful {
        let r = PresentedModule::ring_module(ring);
        let dim_r = dimension(&r);
        let dims_equal = dimension(m) == dim_r;
        let cm = ring_is_cohen_macaulay(ring);
        let e = cd.module();
        let canonical = annihilator(e).same_as(ring.ideal())
            && depth_module(e)? == dim_r
            && type_of(e)? == 1;
        witness["dim_equal"] = json!(dims_equal);
        witness["cohen_macaulay"] = json!(cm);
        witness["e_canonical"] = json!(canonical);
        ok &= dims_equal && cm && canonical;
    }
    Ok(CheckReport::new("faithful", verdict_of(ok), witness)
        .note("localization conclusions are implied but not checked"))
}

/// `T(M) ≅ Hom(E, M)` and `E(M) ≅ E ⊗ M`: Hilbert functions agree up to the bound and
/// the isomorphism probe does not separate them.
pub fn check_prop2(
    cd: &CanonicalData,
    m: &PresentedModule,
    degree_bound: Option<i32>,
    seed: u64,
) -> Result<CheckReport> {
    let t = cd.char_module(m)?;
    let th = cd.char_via_hom(m)?;
    let e = cd.cochar_module(m)?;
    let et = cd.cochar_via_tensor(m)?;
    let bt = degree_bound.unwrap_or_else(|| default_degree_bound(&t, &th));
    let be = degree_bound.unwrap_or_else(|| default_degree_bound(&e, &et));
    let hf_t = hilbert_functions_agree(&t, &th, bt);
    let hf_e = hilbert_functions_agree(&e, &et, be);
    let iso_t = iso_probe(&t, &th, Some(bt), DEFAULT_TRIALS, seed)?;
    let iso_e = iso_probe(&e, &et, Some(be), DEFAULT_TRIALS, seed)?;
    let ok = hf_t
        && hf_e
        && iso_t != IsoVerdict::CertifiedNonisomorphic
        && iso_e != IsoVerdict::CertifiedNonisomorphic;
    Ok(CheckReport::new(
        "prop2",
        verdict_of(ok),
        json!({
            "hilbert_t": hf_t,
            "hilbert_e": hf_e,
            "iso_t": iso_t,
            "iso_e": iso_e,
        }),
    ))
}

/// `T(β_M) ∘ α_{T(M)} = 1` and `β_{E(M)} ∘ E(α_M) = 1`.
pub fn check_split(cd: &CanonicalData, m: &PresentedModule) -> Result<CheckReport> {
    let (first, second) = cd.split_identities_hold(m)?;
    Ok(CheckReport::new(
        "split",
        verdict_of(first && second),
        json!({"t_beta_alpha": first, "beta_e_alpha": second}),
    ))
}
