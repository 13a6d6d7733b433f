//! The quasi-canonical module `E = Ext^s_Q(R, Q)`, the characteristic and
//! cocharacteristic modules `T(M) = Tor^Q_s(R, M)` and `E(M) = Ext^s_Q(R, M)` with
//! `s = pd_Q R`, and the natural maps `α_M`, `β_M`.

mod checks;

pub use checks::{
    check_cor_artinian, check_cor_id, check_faithful, check_gorenstein, check_prop2,
    check_split, check_thm8, check_type_formula, check_type_formula_depth, CheckReport,
    Verdict,
};

use std::sync::Arc;

use crate::error::Result;
use crate::groebner::Ring;
use crate::homology::{
    hom_complex, hom_module, homology_at, tensor_complex, tensor_module, ModuleMap,
};
use crate::polyring::{Term, Vector};
use crate::resolution::{ring_resolution, FreeResolution, PresentedModule, Subquotient};

/// `E` together with the data it was computed from.
#[derive(Clone, Debug)]
pub struct CanonicalData {
    ring: Ring,
    resolution: Arc<FreeResolution>,
    s: usize,
    module: PresentedModule,
}

/// Computes `E = coker(Hom_Q(∂_s, Q))` from the minimal resolution `F` of `R` over `Q`,
/// where `s = pd_Q R`, and views it as an `R`-module.
pub fn quasi_canonical(ring: &Ring) -> Result<CanonicalData> {
    let resolution = ring_resolution(ring);
    let s = resolution.length().unwrap_or(0);
    let q = ring.base();
    let cx = hom_complex(&resolution, &PresentedModule::ring_module(&q))?;
    let ext = homology_at(&cx, s)?.module;
    let module = ext.restrict_to(ring)?;
    Ok(CanonicalData {
        ring: ring.clone(),
        resolution,
        s,
        module,
    })
}

impl CanonicalData {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// `s = pd_Q R`.
    pub fn s(&self) -> usize {
        self.s
    }

    /// The quasi-canonical module `E`.
    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn resolution(&self) -> &FreeResolution {
        &self.resolution
    }

    /// `T(M) = Tor^Q_s(R, M) = ker(∂_s ⊗ M)`, with representatives in `F_s ⊗ M`.
    pub fn char_subquotient(&self, m: &PresentedModule) -> Result<Subquotient> {
        let cx = tensor_complex(&self.resolution, m)?;
        homology_at(&cx, self.s)
    }

    pub fn char_module(&self, m: &PresentedModule) -> Result<PresentedModule> {
        Ok(self.char_subquotient(m)?.module)
    }

    /// `E(M) = Ext^s_Q(R, M) = coker(Hom_Q(∂_s, M))`.
    pub fn cochar_module(&self, m: &PresentedModule) -> Result<PresentedModule> {
        let cx = hom_complex(&self.resolution, m)?;
        Ok(homology_at(&cx, self.s)?.module)
    }

    /// `Hom_R(E, M)`.
    pub fn char_via_hom(&self, m: &PresentedModule) -> Result<PresentedModule> {
        Ok(hom_module(&self.module, m)?.module)
    }

    /// `E ⊗_R M`, minimally presented.
    pub fn cochar_via_tensor(&self, m: &PresentedModule) -> Result<PresentedModule> {
        Ok(tensor_module(&self.module, m)?.minimize())
    }

    /// `α_M : M -> Hom_R(E, E ⊗ M)`, `m ↦ (e ↦ e ⊗ m)`.
    pub fn alpha_map(&self, m: &PresentedModule) -> Result<NaturalMap> {
        let e = &self.module;
        let (a, b) = (e.rank(), m.rank());
        let tensor = tensor_module(e, m)?;
        let hom = hom_module(e, &tensor)?;
        let n = self.ring.nvars();
        let mut images = Vec::with_capacity(b);
        for l in 0..b {
            let terms: Vec<Term> = (0..a)
                .flat_map(|j| Vector::unit(n, j * a * b + j * b + l).terms().to_vec())
                .collect();
            let poly = self.ring.poly();
            let v = Vector::from_terms(poly.field(), poly.term_order(), terms);
            images.push(hom.coordinates(&v).ok_or(crate::Error::NotInSpan)?);
        }
        let map = ModuleMap::new(m, &hom.module, images)?;
        Ok(NaturalMap {
            map,
            hom,
            tensor,
        })
    }

    /// `β_M : E ⊗_R Hom_R(E, M) -> M`, `e ⊗ f ↦ f(e)`.
    pub fn beta_map(&self, m: &PresentedModule) -> Result<NaturalMap> {
        let e = &self.module;
        let (a, b) = (e.rank(), m.rank());
        let hom = hom_module(e, m)?;
        let g = hom.module.rank();
        let tensor = tensor_module(e, &hom.module)?;
        let blocks: Vec<Vec<Vector>> = hom
            .generators
            .iter()
            .map(|f| crate::homology::split_blocks(f, a, b))
            .collect();
        let mut images = Vec::with_capacity(a * g);
        for j in 0..a {
            for blocks_k in &blocks {
                images.push(blocks_k[j].clone());
            }
        }
        let map = ModuleMap::new(&tensor, m, images)?;
        Ok(NaturalMap {
            map,
            hom,
            tensor,
        })
    }

    /// `Hom(E, β_M) ∘ α_{Hom(E, M)}` as an endomorphism of `Hom_R(E, M)`.
    pub fn first_split_composite(&self, m: &PresentedModule) -> Result<ModuleMap> {
        let beta = self.beta_map(m)?;
        let g = &beta.hom;
        let alpha = self.alpha_map(&g.module)?;
        // Hom(E, β_M): Hom(E, E ⊗ Hom(E, M)) -> Hom(E, M), applied blockwise
        let a = self.module.rank();
        let width = beta.tensor.rank();
        let images = alpha
            .hom
            .generators
            .iter()
            .map(|h| {
                let parts = crate::homology::split_blocks(h, a, width);
                let applied: Vec<Vector> = parts.iter().map(|p| apply(&self.ring, beta.map.images(), p)).collect();
                let v = join_blocks(&self.ring, &applied, m.rank());
                g.coordinates(&v).ok_or(crate::Error::NotInSpan)
            })
            .collect::<Result<Vec<_>>>()?;
        let hom_beta = ModuleMap::new(&alpha.hom.module, &g.module, images)?;
        hom_beta.compose(&alpha.map)
    }

    /// `β_{E ⊗ M} ∘ (E ⊗ α_M)` as an endomorphism of `E ⊗_R M`.
    pub fn second_split_composite(&self, m: &PresentedModule) -> Result<ModuleMap> {
        let alpha = self.alpha_map(m)?;
        let t = &alpha.tensor;
        let beta = self.beta_map(t)?;
        let h = alpha.hom.module.rank();
        let a = self.module.rank();
        // E ⊗ α_M sends generator (i, l) to ε_i ⊗ α(μ_l), placed in block i
        let mut images = Vec::with_capacity(t.rank());
        for i in 0..a {
            for img in alpha.map.images() {
                images.push(crate::resolution::shift_positions(img, i * h));
            }
        }
        let e_alpha = ModuleMap::new(t, &beta.tensor, images)?;
        beta.map.compose(&e_alpha)
    }

    /// Whether both composites are the identity on generators, modulo relations.
    pub fn split_identities_hold(&self, m: &PresentedModule) -> Result<(bool, bool)> {
        let first = self.first_split_composite(m)?;
        let second = self.second_split_composite(m)?;
        Ok((
            first.equals(&ModuleMap::identity(first.source())),
            second.equals(&ModuleMap::identity(second.source())),
        ))
    }
}

/// A natural map together with the Hom and tensor modules it was built from.
#[derive(Clone, Debug)]
pub struct NaturalMap {
    pub map: ModuleMap,
    /// For `α_M`, `Hom(E, E ⊗ M)`; for `β_M`, `Hom(E, M)`.
    pub hom: Subquotient,
    /// For `α_M`, `E ⊗ M`; for `β_M`, `E ⊗ Hom(E, M)`.
    pub tensor: PresentedModule,
}

/// `Σ_p v_p · columns[p]`, reduced modulo `I`.
fn apply(ring: &Ring, columns: &[Vector], v: &Vector) -> Vector {
    let ar = ring.poly().arith();
    let terms = ar.linear_combination(
        v.terms()
            .iter()
            .map(|t| (t.coef, t.mono, columns[t.pos as usize].terms())),
    );
    ring.reduce_mod_ideal(&Vector::from_sorted(terms))
}

/// Concatenates vectors of `width` positions each into one vector.
fn join_blocks(ring: &Ring, blocks: &[Vector], width: usize) -> Vector {
    let terms = blocks
        .iter()
        .enumerate()
        .flat_map(|(j, v)| crate::resolution::shift_positions(v, j * width).terms().to_vec())
        .collect();
    let poly = ring.poly();
    Vector::from_terms(poly.field(), poly.term_order(), terms)
}
