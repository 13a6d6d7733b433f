use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::check_element;
use crate::invariants::hilbert_series_from_leads;
use crate::polyring::{GradedMatrix, Monomial, Term, Vector};
use crate::resolution::{base_resolution, betti, PresentedModule, Subquotient};

use super::hom_module;

pub const DEFAULT_TRIALS: usize = 8;

/// A degree-preserving homomorphism of presented modules, given by the images of the
/// source generators in the target's ambient free module.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: PresentedModule,
    target: PresentedModule,
    images: Vec<Vector>,
}

impl ModuleMap {
    pub fn new(source: &PresentedModule, target: &PresentedModule, images: Vec<Vector>) -> Result<Self> {
        if !source.ring().same_ring(target.ring()) {
            return Err(Error::RingMismatch);
        }
        if images.len() != source.rank() {
            return Err(Error::ShapeMismatch(format!(
                "{} images for {} generators",
                images.len(),
                source.rank()
            )));
        }
        for (j, v) in images.iter().enumerate() {
            check_element(v, target.twists())?;
            if let Some(d) = v.degree(target.twists()) {
                if d != source.twists()[j] {
                    return Err(Error::Inhomogeneous(format!(
                        "image of generator {j} has degree {d}, expected {}",
                        source.twists()[j]
                    )));
                }
            }
        }
        Ok(ModuleMap {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn identity(m: &PresentedModule) -> Self {
        let images = (0..m.rank()).map(|i| Vector::unit(m.ring().nvars(), i)).collect();
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            images,
        }
    }

    pub fn source(&self) -> &PresentedModule {
        &self.source
    }

    pub fn target(&self) -> &PresentedModule {
        &self.target
    }

    pub fn images(&self) -> &[Vector] {
        &self.images
    }

    pub fn matrix(&self) -> GradedMatrix {
        GradedMatrix::new_unchecked(
            self.source.ambient().clone(),
            self.target.ambient().clone(),
            self.images.clone(),
        )
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &ModuleMap) -> Result<ModuleMap> {
        let poly = self.source.ring().poly();
        let m = self.matrix().compose(poly, &g.matrix())?;
        let ring = self.source.ring();
        Ok(ModuleMap {
            source: g.source.clone(),
            target: self.target.clone(),
            images: m.into_columns().iter().map(|v| ring.reduce_mod_ideal(v)).collect(),
        })
    }

    /// Whether `self` and `other` agree on every generator, modulo the target relations.
    pub fn equals(&self, other: &ModuleMap) -> bool {
        self.images.len() == other.images.len()
            && self.images.iter().zip(&other.images).all(|(a, b)| {
                let f = self.source.ring().poly().field();
                let d = Vector::from_terms(
                    f,
                    self.source.ring().poly().term_order(),
                    a.terms()
                        .iter()
                        .copied()
                        .chain(b.terms().iter().map(|t| Term {
                            coef: f.neg(t.coef),
                            ..*t
                        }))
                        .collect(),
                );
                self.target.normal_form(&d).is_zero()
            })
    }

    pub fn is_surjective(&self) -> bool {
        let ring = self.target.ring();
        let mut gens = self.target.relations().to_vec();
        gens.extend(self.images.iter().cloned());
        let gb = ring.gb(self.target.twists(), &gens);
        let b = crate::groebner::Basis::from_reduced(ring.poly().arith(), self.target.rank(), &gb);
        (0..self.target.rank()).all(|i| {
            b.reduce(Vector::unit(ring.nvars(), i).terms().to_vec())
                .is_empty()
        })
    }

    fn preimage_of_relations(&self) -> Vec<Vector> {
        self.source
            .ring()
            .elimination(
                self.target.twists(),
                &self.images,
                self.source.twists(),
                self.target.relations(),
                self.source.relations(),
            )
            .preimage()
    }

    pub fn is_injective(&self) -> bool {
        let red = self.source.reducer();
        self.preimage_of_relations()
            .into_iter()
            .all(|v| red.reduce(v.terms().to_vec()).is_empty())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_surjective() && self.is_injective()
    }

    pub fn kernel(&self) -> Subquotient {
        Subquotient::new(
            self.source.ring(),
            self.source.twists(),
            &self.preimage_of_relations(),
            self.source.relations(),
        )
    }

    pub fn cokernel(&self) -> PresentedModule {
        let mut rels = self.target.relations().to_vec();
        rels.extend(self.images.iter().cloned());
        PresentedModule::new_unchecked(self.target.ring(), self.target.ambient().clone(), rels)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoVerdict {
    CertifiedNonisomorphic,
    ProbablyIsomorphic,
    Inconclusive,
}

/// Largest generator or relation degree of a module, if any.
pub(crate) fn max_degree(m: &PresentedModule) -> Option<i32> {
    let rel = m
        .relations()
        .iter()
        .filter_map(|r| r.degree(m.twists()));
    m.twists().iter().copied().chain(rel).max()
}

pub(crate) fn min_twist(m: &PresentedModule) -> Option<i32> {
    m.twists().iter().copied().min()
}

/// Default degree bound for comparisons: largest twist involved plus 8.
pub fn default_degree_bound(a: &PresentedModule, b: &PresentedModule) -> i32 {
    max_degree(a).into_iter().chain(max_degree(b)).max().unwrap_or(0) + 8
}

/// Do the Hilbert functions of `a` and `b` agree in all degrees up to `bound`?
pub fn hilbert_functions_agree(a: &PresentedModule, b: &PresentedModule, bound: i32) -> bool {
    let ha = hilbert_series_from_leads(a);
    let hb = hilbert_series_from_leads(b);
    let lo = min_twist(a).into_iter().chain(min_twist(b)).min().unwrap_or(0);
    (lo..=bound).all(|d| ha.coefficient(d) == hb.coefficient(d))
}

/// Semi-decision for graded isomorphism. Differing Hilbert functions (up to `bound`) or
/// Betti tables over `Q` (homological degrees up to 3) certify non-isomorphism; a random
/// degree-0 homomorphism that is bijective shows isomorphism.
pub fn iso_probe(
    a: &PresentedModule,
    b: &PresentedModule,
    degree_bound: Option<i32>,
    trials: usize,
    seed: u64,
) -> Result<IsoVerdict> {
    if !a.ring().same_ring(b.ring()) {
        return Err(Error::RingMismatch);
    }
    let bound = degree_bound.unwrap_or_else(|| default_degree_bound(a, b));
    if !hilbert_functions_agree(a, b, bound) {
        return Ok(IsoVerdict::CertifiedNonisomorphic);
    }
    let ba = betti(&base_resolution(a))?.truncated(3);
    let bb = betti(&base_resolution(b))?.truncated(3);
    if ba != bb {
        return Ok(IsoVerdict::CertifiedNonisomorphic);
    }
    if a.is_zero() && b.is_zero() {
        return Ok(IsoVerdict::ProbablyIsomorphic);
    }
    Ok(match find_isomorphism(a, b, trials, seed)? {
        Some(_) => IsoVerdict::ProbablyIsomorphic,
        None => IsoVerdict::Inconclusive,
    })
}

/// Lowest generator degree of a minimal presentation, if the module is nonzero.
pub fn initial_degree(m: &PresentedModule) -> Option<i32> {
    let min = m.minimize();
    min.twists().iter().copied().min()
}

/// [`iso_probe`] after shifting `a` so that both modules start in the same degree.
/// Returns the verdict and the shift `d` with `a(d)` compared against `b`.
pub fn iso_probe_up_to_shift(
    a: &PresentedModule,
    b: &PresentedModule,
    degree_bound: Option<i32>,
    trials: usize,
    seed: u64,
) -> Result<(IsoVerdict, i32)> {
    match (initial_degree(a), initial_degree(b)) {
        (None, None) => Ok((IsoVerdict::ProbablyIsomorphic, 0)),
        (Some(_), None) | (None, Some(_)) => Ok((IsoVerdict::CertifiedNonisomorphic, 0)),
        (Some(da), Some(db)) => {
            let d = db - da;
            let shifted = a.sum_of_shifts(&[d]);
            Ok((iso_probe(&shifted, b, degree_bound, trials, seed)?, d))
        }
    }
}

/// Tries `trials` random degree-0 homomorphisms `a -> b` and returns the first bijective one.
pub fn find_isomorphism(
    a: &PresentedModule,
    b: &PresentedModule,
    trials: usize,
    seed: u64,
) -> Result<Option<ModuleMap>> {
    let hom = hom_module(a, b)?;
    let ring = a.ring();
    let poly = ring.poly();
    let field = poly.field();
    let n = poly.nvars();
    let tw = hom.module.twists().to_vec();
    // spanning set of the degree-0 part of Hom(a, b)
    let mut span: Vec<(Monomial, usize)> = Vec::new();
    for (k, &t) in tw.iter().enumerate() {
        if t <= 0 {
            for m in Monomial::all_of_degree(n, (-t) as u32) {
                span.push((m, k));
            }
        }
    }
    if span.is_empty() {
        return Ok(None);
    }
    let rb = b.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ar = poly.arith();
    for _ in 0..trials {
        let parts: Vec<(u32, Monomial, &[Term])> = span
            .iter()
            .map(|(m, k)| {
                let c = rng.gen_range(1..field.modulus());
                (c, *m, hom.generators[*k].terms())
            })
            .collect();
        let f = Vector::from_sorted(ar.linear_combination(parts));
        let images = split_blocks(&f, a.rank(), rb);
        let map = ModuleMap::new(a, b, images)?;
        if map.is_isomorphism() {
            return Ok(Some(map));
        }
    }
    Ok(None)
}

/// Splits a vector of `blocks * width` positions into `blocks` vectors of `width`.
pub(crate) fn split_blocks(v: &Vector, blocks: usize, width: usize) -> Vec<Vector> {
    let mut out: Vec<Vec<Term>> = vec![Vec::new(); blocks];
    for t in v.terms() {
        let j = t.pos as usize / width;
        out[j].push(Term {
            pos: (t.pos as usize % width) as u32,
            ..*t
        });
    }
    out.into_iter().map(Vector::from_sorted).collect()
}
