//! Numerical invariants of rings and modules.

mod gdim;
mod hilbert;

pub use gdim::{class_membership, gdim_bounded, ClassKind, ClassResult, GdimAnswer};
pub use hilbert::{hilbert_series, hilbert_series_from_leads, HilbertSeries};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{Ideal, Ring};
use crate::homology::{hom_module, homology_at, hom_complex};
use crate::polyring::Vector;
use crate::resolution::{
    base_resolution, betti, residue_resolution, resolve, PresentedModule, Subquotient,
};

/// Default bound for truncated series.
pub const DEFAULT_SERIES_BOUND: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub dim: i32,
    pub depth: i32,
    pub pd_q: usize,
    pub nu: usize,
    #[serde(rename = "type")]
    pub type_: usize,
    pub cmd: i32,
    pub is_cm: bool,
    /// Only meaningful for rings.
    pub is_gorenstein: Option<bool>,
    pub faithful: bool,
}

/// Betti or Bass numbers `c_0..c_B`, computed only up to the bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedSeries {
    pub coefficients: Vec<usize>,
    pub bound: usize,
}

/// Krull dimension; `-1` for the zero module.
pub fn dimension(m: &PresentedModule) -> i32 {
    hilbert_series_from_leads(m).dimension()
}

/// Projective dimension over the polynomial ring; `0` for the zero module.
pub fn pd_over_base(m: &PresentedModule) -> usize {
    base_resolution(m).length().unwrap_or(0)
}

/// Depth by Auslander–Buchsbaum over the polynomial ring.
pub fn depth_module(m: &PresentedModule) -> Result<i32> {
    if m.is_zero() {
        return Err(Error::ZeroModule("depth"));
    }
    Ok(m.ring().nvars() as i32 - pd_over_base(m) as i32)
}

/// Minimal number of generators.
pub fn nu(m: &PresentedModule) -> usize {
    let units: Vec<Vector> = (0..m.rank()).map(|i| Vector::unit(m.ring().nvars(), i)).collect();
    m.ring().minimal_generators(m.twists(), m.relations(), &units).0.len()
}

/// `Ext^i_R(k, M)`, computed from the cached minimal resolution of `k` over `R`.
pub fn ext_from_residue(m: &PresentedModule, i: usize) -> Result<Subquotient> {
    let ring = m.ring();
    let res = residue_resolution(ring, i + 1);
    let cx = hom_complex(&res, m)?;
    if i >= cx.len() {
        return Ok(Subquotient::new(ring, &[], &[], &[]));
    }
    homology_at(&cx, i)
}

/// `dim_k Ext^i_R(k, M)`. The Ext module is killed by the maximal ideal, so its minimal
/// number of generators is its vector space dimension.
pub fn bass_number(m: &PresentedModule, i: usize) -> Result<usize> {
    Ok(ext_from_residue(m, i)?.module.rank())
}

/// Least `i` with `Ext^i_R(k, M) != 0`, searching `0..=bound`.
pub fn depth_via_ext(m: &PresentedModule, bound: usize) -> Result<Option<usize>> {
    for i in 0..=bound {
        if bass_number(m, i)? > 0 {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// `type_R(M) = dim_k Ext^t_R(k, M)` with `t = depth M`, read off as the last Betti number
/// of `M` over the polynomial ring: both equal the socle dimension of `H^t_m(M)`.
pub fn type_of(m: &PresentedModule) -> Result<usize> {
    if m.is_zero() {
        return Err(Error::ZeroModule("type"));
    }
    let res = base_resolution(m);
    let p = res.length().unwrap_or(0);
    Ok(res.module(p).rank())
}

/// `type_R(M)` computed directly as `dim_k Ext^t_R(k, M)` over `R`.
pub fn type_via_ext(m: &PresentedModule) -> Result<usize> {
    let t = depth_module(m)?;
    bass_number(m, t as usize)
}

/// `ann_R(M)` as an ideal of the polynomial ring containing the defining ideal: the
/// kernel of `Q -> M^r`, `1 ↦ (e_1, ..., e_r)`.
pub fn annihilator(m: &PresentedModule) -> Ideal {
    let ring = m.ring();
    let poly = ring.poly();
    let r = m.rank();
    let shifts: Vec<i32> = m.twists().iter().map(|t| -t).collect();
    let target = m.sum_of_shifts(&shifts);
    let diag = Vector::from_terms(
        poly.field(),
        poly.term_order(),
        (0..r)
            .flat_map(|i| {
                let e = Vector::unit(poly.nvars(), i * r + i);
                e.terms().to_vec()
            })
            .collect(),
    );
    let pre = ring
        .elimination(target.twists(), &[diag], &[0], target.relations(), &[])
        .preimage();
    Ideal::from_basis(poly, pre)
}

/// `ann_R(M) = 0`.
pub fn is_faithful(m: &PresentedModule) -> bool {
    annihilator(m).same_as(m.ring().ideal())
}

/// The socle `Hom_R(k, M)`.
pub fn socle(m: &PresentedModule) -> Result<Subquotient> {
    hom_module(&PresentedModule::residue_field(m.ring()), m)
}

/// Truncated Poincaré series (Betti numbers over `R`) and Bass series
/// (`μ^i = dim_k Ext^i_R(k, M)`) up to `bound`.
pub fn poincare_bass(m: &PresentedModule, bound: usize) -> Result<(TruncatedSeries, TruncatedSeries)> {
    if m.is_zero() {
        return Err(Error::ZeroModule("Poincaré and Bass series"));
    }
    let res = resolve(m, Some(bound))?;
    let mut betti_numbers = res.ranks();
    betti_numbers.resize(bound + 1, 0);
    let bass = (0..=bound)
        .map(|i| bass_number(m, i))
        .collect::<Result<Vec<_>>>()?;
    Ok((
        TruncatedSeries {
            coefficients: betti_numbers,
            bound,
        },
        TruncatedSeries {
            coefficients: bass,
            bound,
        },
    ))
}

pub fn is_cohen_macaulay(m: &PresentedModule) -> Result<bool> {
    Ok(dimension(m) == depth_module(m)?)
}

pub fn ring_is_cohen_macaulay(ring: &Ring) -> bool {
    is_cohen_macaulay(&PresentedModule::ring_module(ring)).expect("rings are nonzero")
}

pub fn ring_is_gorenstein(ring: &Ring) -> bool {
    let r = PresentedModule::ring_module(ring);
    ring_is_cohen_macaulay(ring) && type_of(&r).expect("rings are nonzero") == 1
}

/// All invariants of a nonzero module. `is_gorenstein` is filled in only for `R` itself.
pub fn module_report(m: &PresentedModule) -> Result<InvariantReport> {
    let dim = dimension(m);
    let depth = depth_module(m)?;
    let type_ = type_of(m)?;
    let is_ring = m.rank() == 1 && m.twists() == [0] && m.relations().iter().all(|r| {
        m.ring().reduce_mod_ideal(r).is_zero()
    });
    let is_cm = dim == depth;
    Ok(InvariantReport {
        dim,
        depth,
        pd_q: pd_over_base(m),
        nu: nu(m),
        type_,
        cmd: dim - depth,
        is_cm,
        is_gorenstein: is_ring.then_some(is_cm && type_ == 1),
        faithful: is_faithful(m),
    })
}

pub fn ring_report(ring: &Ring) -> InvariantReport {
    module_report(&PresentedModule::ring_module(ring)).expect("rings are nonzero")
}

/// Graded Betti table of `M` over the polynomial ring.
pub fn base_betti(m: &PresentedModule) -> crate::resolution::BettiTable {
    betti(&base_resolution(m)).expect("resolutions over Q are minimal")
}

#[cfg(test)]
mod tests;
