use serde::Serialize;

use crate::charmod::quasi_canonical;
use crate::error::{Error, Result};
use crate::homology::{ext, hilbert_functions_agree, hom_module, tensor_module, tor};
use crate::resolution::{resolve, PresentedModule};

use super::{depth_module, ring_is_cohen_macaulay, ring_is_gorenstein};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GdimAnswer {
    /// Finite projective dimension, or a Gorenstein ring.
    Certified { gdim: i32 },
    /// All bounded vanishing checks passed; `gdim` is the value the depth formula would give.
    BoundedEvidence { gdim: i32 },
    /// Some check failed; `witness` is the first index with nonvanishing Ext, if any.
    Inconclusive { witness: Option<usize> },
}

/// Bounded evidence for the Gorenstein dimension of `M`.
pub fn gdim_bounded(m: &PresentedModule, bound: usize) -> Result<GdimAnswer> {
    let ring = m.ring();
    let r = PresentedModule::ring_module(ring);
    let formula = depth_module(&r)? - depth_module(m)?;
    let res = resolve(m, Some(bound))?;
    if res.is_complete() {
        return Ok(GdimAnswer::Certified {
            gdim: res.length().unwrap_or(0) as i32,
        });
    }
    if ring_is_gorenstein(ring) {
        return Ok(GdimAnswer::Certified { gdim: formula });
    }
    for i in 1..=bound {
        if !ext(m, &r, i)?.module.is_zero() {
            return Ok(GdimAnswer::Inconclusive { witness: Some(i) });
        }
    }
    let dual = hom_module(m, &r)?.module;
    for i in 1..=bound {
        if !ext(&dual, &r, i)?.module.is_zero() {
            return Ok(GdimAnswer::Inconclusive { witness: None });
        }
    }
    let bidual = hom_module(&dual, &r)?.module;
    if !hilbert_functions_agree(m, &bidual, bound as i32) {
        return Ok(GdimAnswer::Inconclusive { witness: None });
    }
    Ok(GdimAnswer::BoundedEvidence { gdim: formula })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Auslander,
    Bass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ClassResult {
    HoldsUpTo { bound: usize },
    /// `index` is the first nonvanishing Tor or Ext; `None` means the natural map failed.
    FailsWithWitness { index: Option<usize> },
}

/// Bounded membership test for the Auslander or Bass class with respect to `ω = E`.
/// Auslander: `Tor_{>0}(ω, M) = 0`, `Ext^{>0}(ω, ω ⊗ M) = 0` and `α_M` bijective.
/// Bass: `Ext^{>0}(ω, M) = 0`, `Tor_{>0}(ω, Hom(ω, M)) = 0` and `β_M` bijective.
pub fn class_membership(m: &PresentedModule, which: ClassKind, bound: usize) -> Result<ClassResult> {
    let ring = m.ring();
    if !ring_is_cohen_macaulay(ring) {
        return Err(Error::NotCohenMacaulay);
    }
    let cd = quasi_canonical(ring)?;
    let omega = cd.module();
    let fail = |index| Ok(ClassResult::FailsWithWitness { index });
    match which {
        ClassKind::Auslander => {
            let om = tensor_module(omega, m)?;
            for i in 1..=bound {
                if !tor(omega, m, i)?.module.is_zero() || !ext(omega, &om, i)?.module.is_zero() {
                    return fail(Some(i));
                }
            }
            if !cd.alpha_map(m)?.map.is_isomorphism() {
                return fail(None);
            }
        }
        ClassKind::Bass => {
            let hm = hom_module(omega, m)?.module;
            for i in 1..=bound {
                if !ext(omega, m, i)?.module.is_zero() || !tor(omega, &hm, i)?.module.is_zero() {
                    return fail(Some(i));
                }
            }
            if !cd.beta_map(m)?.map.is_isomorphism() {
                return fail(None);
            }
        }
    }
    Ok(ClassResult::HoldsUpTo { bound })
}
