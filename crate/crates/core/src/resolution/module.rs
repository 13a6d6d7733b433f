use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{check_element, degrees, Basis, Elimination, Ring};
use crate::polyring::{FreeModule, GradedMatrix, Polynomial, Vector};

use super::resolve::FreeResolution;

/// A graded module `coker(relations)` over `R`, where the relations are elements of a
/// graded free module. Submodules of `R^r` are always handled through their preimages in
/// `Q^r`, so `I·Q^r` is implicitly part of the relations.
#[derive(Clone)]
pub struct PresentedModule {
    ring: Ring,
    ambient: FreeModule,
    relations: Vec<Vector>,
    gb: OnceLock<Arc<Vec<Vector>>>,
    pub(crate) base_resolution: OnceLock<Arc<FreeResolution>>,
}

impl std::fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PresentedModule")
            .field("twists", &self.ambient.twists())
            .field("relations", &self.relations.len())
            .finish()
    }
}

impl PresentedModule {
    pub fn new(ring: &Ring, ambient: FreeModule, relations: Vec<Vector>) -> Result<Self> {
        for r in &relations {
            check_element(r, ambient.twists())?;
        }
        Ok(PresentedModule::new_unchecked(ring, ambient, relations))
    }

    pub(crate) fn new_unchecked(ring: &Ring, ambient: FreeModule, relations: Vec<Vector>) -> Self {
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        PresentedModule {
            ring: ring.clone(),
            ambient,
            relations,
            gb: OnceLock::new(),
            base_resolution: OnceLock::new(),
        }
    }

    pub fn from_matrix(ring: &Ring, relations: &GradedMatrix) -> Result<Self> {
        relations.validate()?;
        PresentedModule::new(ring, relations.target().clone(), relations.columns().to_vec())
    }

    /// The free module with the given generator degrees.
    pub fn free(ring: &Ring, twists: Vec<i32>) -> Self {
        PresentedModule::new_unchecked(ring, FreeModule::new(twists), Vec::new())
    }

    pub fn zero(ring: &Ring) -> Self {
        PresentedModule::free(ring, Vec::new())
    }

    /// The ring itself as a module over itself.
    pub fn ring_module(ring: &Ring) -> Self {
        PresentedModule::free(ring, vec![0])
    }

    /// The residue field `k = R/m`.
    pub fn residue_field(ring: &Ring) -> Self {
        let poly = ring.poly();
        let rels = (0..poly.nvars()).map(|i| poly.var(i).as_vector().clone()).collect();
        PresentedModule::new_unchecked(ring, FreeModule::new(vec![0]), rels)
    }

    /// The cyclic module `R/J`.
    pub fn cyclic(ring: &Ring, ideal: &[Polynomial]) -> Result<Self> {
        let rels = ideal.iter().map(|p| p.as_vector().clone()).collect();
        PresentedModule::new(ring, FreeModule::new(vec![0]), rels)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ambient(&self) -> &FreeModule {
        &self.ambient
    }

    pub fn twists(&self) -> &[i32] {
        self.ambient.twists()
    }

    pub fn rank(&self) -> usize {
        self.ambient.rank()
    }

    pub fn relations(&self) -> &[Vector] {
        &self.relations
    }

    pub fn relation_matrix(&self) -> GradedMatrix {
        let tw = degrees(&self.relations, self.ambient.twists());
        GradedMatrix::new_unchecked(FreeModule::new(tw), self.ambient.clone(), self.relations.clone())
    }

    /// Reduced Gröbner basis of the relations together with `I·F`.
    pub fn relation_gb(&self) -> &[Vector] {
        self.gb
            .get_or_init(|| Arc::new(self.ring.gb(self.ambient.twists(), &self.relations)))
    }

    pub(crate) fn reducer(&self) -> Basis {
        Basis::from_reduced(self.ring.poly().arith(), self.rank(), self.relation_gb())
    }

    /// Canonical representative of the class of `v`.
    pub fn normal_form(&self, v: &Vector) -> Vector {
        Vector::from_sorted(self.reducer().reduce(v.terms().to_vec()))
    }

    pub fn is_zero(&self) -> bool {
        let b = self.reducer();
        (0..self.rank()).all(|i| {
            b.reduce(Vector::unit(self.ring.nvars(), i).terms().to_vec())
                .is_empty()
        })
    }

    /// No relation has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.relations
            .iter()
            .all(|r| r.terms().iter().all(|t| !t.mono.is_one()))
    }

    /// The same module viewed over the ambient polynomial ring.
    pub fn over_base(&self) -> PresentedModule {
        if self.ring.is_polynomial() {
            return self.clone();
        }
        let mut rels = self.relations.clone();
        rels.extend(self.ring.ideal_lift(self.rank()));
        PresentedModule::new_unchecked(&self.ring.base(), self.ambient.clone(), rels)
    }

    /// Views a module over `Q` that is annihilated by `I` as a module over `ring`.
    pub fn restrict_to(&self, ring: &Ring) -> Result<PresentedModule> {
        if ring.poly().id() != self.ring.poly().id() {
            return Err(Error::RingMismatch);
        }
        let b = self.reducer();
        for v in ring.ideal_lift(self.rank()) {
            if !b.reduce(v.terms().to_vec()).is_empty() {
                return Err(Error::HypothesisNotMet(
                    "module is not annihilated by the defining ideal".into(),
                ));
            }
        }
        Ok(PresentedModule::new_unchecked(
            ring,
            self.ambient.clone(),
            self.relations.iter().map(|r| ring.reduce_mod_ideal(r)).collect(),
        ))
    }

    /// A minimal presentation, together with representatives of the new generators.
    pub fn minimal_presentation(&self) -> Subquotient {
        let units: Vec<Vector> = (0..self.rank())
            .map(|i| Vector::unit(self.ring.nvars(), i))
            .collect();
        Subquotient::new(&self.ring, self.ambient.twists(), &units, &self.relations)
    }

    /// Shorthand for the module part of [`minimal_presentation`](Self::minimal_presentation).
    pub fn minimize(&self) -> PresentedModule {
        self.minimal_presentation().module
    }

    /// Direct sum of copies of the module, one per twist in `shifts`, the `j`-th copy
    /// shifted by `shifts[j]`. Generator `(j, l)` sits at index `j * rank + l`.
    pub fn sum_of_shifts(&self, shifts: &[i32]) -> PresentedModule {
        let r = self.rank();
        let twists: Vec<i32> = shifts
            .iter()
            .flat_map(|s| self.twists().iter().map(move |t| t + s))
            .collect();
        let mut rels = Vec::with_capacity(shifts.len() * self.relations.len());
        for j in 0..shifts.len() {
            for rel in &self.relations {
                rels.push(shift_positions(rel, j * r));
            }
        }
        PresentedModule::new_unchecked(&self.ring, FreeModule::new(twists), rels)
    }
}

pub(crate) fn shift_positions(v: &Vector, by: usize) -> Vector {
    Vector::from_sorted(
        v.terms()
            .iter()
            .map(|t| crate::polyring::Term {
                pos: t.pos + by as u32,
                ..*t
            })
            .collect(),
    )
}

/// The quotient `span(numerators) / span(denominators)` of submodules of a free module,
/// with a minimal presentation over `R`.
#[derive(Clone)]
pub struct Subquotient {
    pub module: PresentedModule,
    /// Representatives, in the ambient free module, of the presentation's generators.
    pub generators: Vec<Vector>,
    twists: Vec<i32>,
    elim: Arc<Elimination>,
}

impl std::fmt::Debug for Subquotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subquotient")
            .field("module", &self.module)
            .field("generators", &self.generators.len())
            .finish()
    }
}

impl Subquotient {
    pub(crate) fn new(ring: &Ring, twists: &[i32], numer: &[Vector], denom: &[Vector]) -> Self {
        let (chosen, _) = ring.minimal_generators(twists, denom, numer);
        // representatives are reduced modulo the denominator for canonical output
        let den_gb = ring.gb(twists, denom);
        let reducer = Basis::from_reduced(ring.poly().arith(), twists.len(), &den_gb);
        let generators: Vec<Vector> = chosen
            .iter()
            .map(|&i| Vector::from_sorted(reducer.reduce(numer[i].terms().to_vec())))
            .collect();
        let tw = degrees(&generators, twists);
        let elim = ring.elimination(twists, &generators, &tw, denom, &[]);
        let kernel = elim.preimage();
        let (keep, _) = ring.minimal_generators(&tw, &[], &kernel);
        let rels = keep
            .iter()
            .map(|&i| ring.reduce_mod_ideal(&kernel[i]))
            .collect();
        Subquotient {
            module: PresentedModule::new_unchecked(ring, FreeModule::new(tw), rels),
            generators,
            twists: twists.to_vec(),
            elim: Arc::new(elim),
        }
    }

    pub fn ambient_twists(&self) -> &[i32] {
        &self.twists
    }

    /// Coordinates of `v` (an element of the numerator) on the chosen generators,
    /// reduced to normal form in the presented module. `None` when `v` is outside the
    /// numerator.
    pub fn coordinates(&self, v: &Vector) -> Option<Vector> {
        let a = self.elim.lifter().lift(v)?;
        Some(self.module.normal_form(&a))
    }

    /// Coordinates for many vectors, sharing one reducer.
    pub fn coordinates_many(&self, vs: &[Vector]) -> Option<Vec<Vector>> {
        let lifter = self.elim.lifter();
        let red = self.module.reducer();
        vs.iter()
            .map(|v| {
                lifter
                    .lift(v)
                    .map(|a| Vector::from_sorted(red.reduce(a.terms().to_vec())))
            })
            .collect()
    }
}
