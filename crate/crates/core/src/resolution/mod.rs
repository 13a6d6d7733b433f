//! Presented modules, minimal free resolutions and Betti tables.

mod module;
mod resolve;

use std::sync::{Arc, Mutex, OnceLock};

pub use module::{PresentedModule, Subquotient};
pub(crate) use module::shift_positions;
pub use resolve::{
    base_resolution, betti, minimalize, resolve, BettiTable, FreeResolution, DEFAULT_MAX_STEPS,
};

use crate::groebner::Ring;

/// Per-ring caches. Populating them twice yields identical values, so a lost race only
/// costs time.
#[derive(Default)]
pub(crate) struct RingCache {
    pub ring_resolution: OnceLock<Arc<FreeResolution>>,
    pub residue_resolution: Mutex<Option<Arc<FreeResolution>>>,
}

/// Minimal resolution of `R = Q/I` over `Q`, cached on the ring.
pub fn ring_resolution(ring: &Ring) -> Arc<FreeResolution> {
    ring.cache
        .ring_resolution
        .get_or_init(|| {
            let r = PresentedModule::ring_module(ring);
            base_resolution(&r)
        })
        .clone()
}

/// Minimal resolution of the residue field over `R`, computed to at least `steps`
/// homological degrees and cached on the ring.
pub fn residue_resolution(ring: &Ring, steps: usize) -> Arc<FreeResolution> {
    let mut guard = ring.cache.residue_resolution.lock().expect("cache lock");
    if let Some(r) = guard.as_ref() {
        if r.is_complete() || r.maps().len() >= steps {
            return r.clone();
        }
    }
    let k = PresentedModule::residue_field(ring);
    let limit = if ring.is_polynomial() { None } else { Some(steps) };
    let res = Arc::new(resolve(&k, limit).expect("bounded resolution"));
    *guard = Some(res.clone());
    res
}
