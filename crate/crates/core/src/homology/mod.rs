//! Complexes of presented modules, their homology, and Hom and tensor of modules.

mod iso;

pub use iso::{
    default_degree_bound, find_isomorphism, hilbert_functions_agree, initial_degree, iso_probe,
    iso_probe_up_to_shift, IsoVerdict, ModuleMap, DEFAULT_TRIALS,
};
pub(crate) use iso::split_blocks;

use crate::error::{Error, Result};
use crate::groebner::Ring;
use crate::polyring::{FreeModule, GradedMatrix, Term, Vector};
use crate::resolution::{resolve, FreeResolution, PresentedModule, Subquotient};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `maps[i]: terms[i + 1] -> terms[i]`.
    Homological,
    /// `maps[i]: terms[i] -> terms[i + 1]`.
    Cohomological,
}

/// A bounded complex of presented modules. Maps are given on generators: column `j` is
/// the image of the `j`-th generator of the source, written in the target's ambient.
#[derive(Clone, Debug)]
pub struct Complex {
    ring: Ring,
    direction: Direction,
    terms: Vec<PresentedModule>,
    maps: Vec<GradedMatrix>,
}

impl Complex {
    pub fn new(
        ring: &Ring,
        direction: Direction,
        terms: Vec<PresentedModule>,
        maps: Vec<GradedMatrix>,
    ) -> Result<Self> {
        if maps.len() + 1 != terms.len() && !(terms.is_empty() && maps.is_empty()) {
            return Err(Error::ShapeMismatch(format!(
                "{} terms need {} maps",
                terms.len(),
                terms.len().saturating_sub(1)
            )));
        }
        Ok(Complex {
            ring: ring.clone(),
            direction,
            terms,
            maps,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn terms(&self) -> &[PresentedModule] {
        &self.terms
    }

    pub fn maps(&self) -> &[GradedMatrix] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The map out of position `i`, with its target position.
    fn outgoing(&self, i: usize) -> Option<(&GradedMatrix, usize)> {
        match self.direction {
            Direction::Homological => i.checked_sub(1).map(|j| (&self.maps[j], j)),
            Direction::Cohomological => self.maps.get(i).map(|m| (m, i + 1)),
        }
    }

    /// The map into position `i`.
    fn incoming(&self, i: usize) -> Option<&GradedMatrix> {
        match self.direction {
            Direction::Homological => self.maps.get(i),
            Direction::Cohomological => i.checked_sub(1).map(|j| &self.maps[j]),
        }
    }

    /// `∂ ∘ ∂ = 0` modulo the relations of the target terms.
    pub fn is_complex(&self) -> bool {
        (0..self.terms.len()).all(|i| {
            let (Some(inc), Some((out, t))) = (self.incoming(i), self.outgoing(i)) else {
                return true;
            };
            let Ok(c) = out.compose(self.ring.poly(), inc) else {
                return false;
            };
            c.columns()
                .iter()
                .all(|v| self.terms[t].normal_form(v).is_zero())
        })
    }
}

/// `F ⊗_Q M` for a complex of free modules `F` and a module `M`. Generator `(j, l)` of
/// `F_i ⊗ M` sits at index `j * rank(M) + l` with degree `a_j + c_l`.
pub fn tensor_complex(f: &FreeResolution, m: &PresentedModule) -> Result<Complex> {
    check_poly(f.ring(), m.ring())?;
    let ring = m.ring();
    let terms = f
        .modules()
        .iter()
        .map(|fi| m.sum_of_shifts(fi.twists()))
        .collect();
    let maps = f
        .maps()
        .iter()
        .map(|d| tensor_identity(ring, d, m.twists()))
        .collect();
    Complex::new(ring, Direction::Homological, terms, maps)
}

/// `Hom_Q(F, M)` as a cochain complex. Generator `(j, l)` of `Hom(F_i, M)` sits at index
/// `j * rank(M) + l` with degree `c_l - a_j`.
pub fn hom_complex(f: &FreeResolution, m: &PresentedModule) -> Result<Complex> {
    check_poly(f.ring(), m.ring())?;
    let ring = m.ring();
    let poly = ring.poly();
    let terms = f
        .modules()
        .iter()
        .map(|fi| m.sum_of_shifts(fi.dual().twists()))
        .collect();
    let maps = f
        .maps()
        .iter()
        .map(|d| tensor_identity(ring, &d.transpose(poly), m.twists()))
        .collect();
    Complex::new(ring, Direction::Cohomological, terms, maps)
}

fn check_poly(a: &Ring, b: &Ring) -> Result<()> {
    if a.poly().id() != b.poly().id() {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// `d ⊗ id` on `F ⊗ M` with `M` generated in degrees `m_twists`, entries reduced mod `I`.
pub(crate) fn tensor_identity(ring: &Ring, d: &GradedMatrix, m_twists: &[i32]) -> GradedMatrix {
    let r = m_twists.len();
    let poly = ring.poly();
    let tw = |fm: &FreeModule| -> Vec<i32> {
        fm.twists()
            .iter()
            .flat_map(|a| m_twists.iter().map(move |c| a + c))
            .collect()
    };
    let mut cols = Vec::with_capacity(d.ncols() * r);
    for col in d.columns() {
        for l in 0..r {
            let terms: Vec<Term> = col
                .terms()
                .iter()
                .map(|t| Term {
                    pos: t.pos * r as u32 + l as u32,
                    ..*t
                })
                .collect();
            let v = Vector::from_terms(poly.field(), poly.term_order(), terms);
            cols.push(ring.reduce_mod_ideal(&v));
        }
    }
    GradedMatrix::new_unchecked(
        FreeModule::new(tw(d.source())),
        FreeModule::new(tw(d.target())),
        cols,
    )
}

/// Homology at position `i`: kernel of the outgoing map modulo the image of the
/// incoming one, minimally presented.
pub fn homology_at(cx: &Complex, i: usize) -> Result<Subquotient> {
    let term = cx
        .terms
        .get(i)
        .ok_or_else(|| Error::ShapeMismatch(format!("no term at position {i}")))?;
    let ring = &cx.ring;
    let twists = term.twists();
    let numer: Vec<Vector> = match cx.outgoing(i) {
        Some((map, t)) => {
            let target = &cx.terms[t];
            ring.elimination(
                target.twists(),
                map.columns(),
                twists,
                target.relations(),
                term.relations(),
            )
            .preimage()
        }
        None => (0..term.rank()).map(|j| Vector::unit(ring.nvars(), j)).collect(),
    };
    let mut denom: Vec<Vector> = term.relations().to_vec();
    if let Some(inc) = cx.incoming(i) {
        denom.extend(inc.columns().iter().cloned());
    }
    Ok(Subquotient::new(ring, twists, &numer, &denom))
}

/// `Hom_R(A, B)`, presented as the kernel of `B^{gens A} -> B^{rels A}`, `f ↦ f ∘ ρ_A`.
/// Generator representatives are vectors whose block `j` (positions
/// `j * rank(B) .. (j + 1) * rank(B)`) is the image of the `j`-th generator of `A`.
pub fn hom_module(a: &PresentedModule, b: &PresentedModule) -> Result<Subquotient> {
    if !a.ring().same_ring(b.ring()) {
        return Err(Error::RingMismatch);
    }
    let ring = b.ring();
    let rho = a.relation_matrix();
    let src = b.sum_of_shifts(a.ambient().dual().twists());
    let numer: Vec<Vector> = if rho.ncols() == 0 {
        (0..src.rank()).map(|j| Vector::unit(ring.nvars(), j)).collect()
    } else {
        let tgt = b.sum_of_shifts(rho.source().dual().twists());
        let map = tensor_identity(ring, &rho.transpose(ring.poly()), b.twists());
        ring.elimination(
            tgt.twists(),
            map.columns(),
            src.twists(),
            tgt.relations(),
            src.relations(),
        )
        .preimage()
    };
    Ok(Subquotient::new(ring, src.twists(), &numer, src.relations()))
}

/// `A ⊗_R B` with generators `(i, l)` at index `i * rank(B) + l`; not minimized, so the
/// generator bookkeeping stays available.
pub fn tensor_module(a: &PresentedModule, b: &PresentedModule) -> Result<PresentedModule> {
    if !a.ring().same_ring(b.ring()) {
        return Err(Error::RingMismatch);
    }
    let ring = a.ring();
    let rb = b.rank();
    let twists: Vec<i32> = a
        .twists()
        .iter()
        .flat_map(|x| b.twists().iter().map(move |y| x + y))
        .collect();
    let mut rels = Vec::new();
    for rho in a.relations() {
        for l in 0..rb {
            rels.push(Vector::from_sorted(
                rho.terms()
                    .iter()
                    .map(|t| Term {
                        pos: t.pos * rb as u32 + l as u32,
                        ..*t
                    })
                    .collect(),
            ));
        }
    }
    for i in 0..a.rank() {
        for sigma in b.relations() {
            rels.push(crate::resolution::shift_positions(sigma, i * rb));
        }
    }
    Ok(PresentedModule::new_unchecked(ring, FreeModule::new(twists), rels))
}

/// Direct sum `A ⊕ B`.
pub fn direct_sum(a: &PresentedModule, b: &PresentedModule) -> Result<PresentedModule> {
    if !a.ring().same_ring(b.ring()) {
        return Err(Error::RingMismatch);
    }
    let mut rels = a.relations().to_vec();
    rels.extend(
        b.relations()
            .iter()
            .map(|v| crate::resolution::shift_positions(v, a.rank())),
    );
    Ok(PresentedModule::new_unchecked(
        a.ring(),
        a.ambient().direct_sum(b.ambient()),
        rels,
    ))
}

/// `Ext^i_R(A, B)` from a minimal resolution of `A` over `R` truncated after step `i + 1`.
pub fn ext(a: &PresentedModule, b: &PresentedModule, i: usize) -> Result<Subquotient> {
    if !a.ring().same_ring(b.ring()) {
        return Err(Error::RingMismatch);
    }
    let res = resolve(a, Some(i + 1))?;
    let cx = hom_complex(&res, b)?;
    if i >= cx.len() {
        return Ok(Subquotient::new(b.ring(), &[], &[], &[]));
    }
    homology_at(&cx, i)
}

/// `Tor^R_i(A, B)` from a minimal resolution of `A` over `R` truncated after step `i + 1`.
pub fn tor(a: &PresentedModule, b: &PresentedModule, i: usize) -> Result<Subquotient> {
    if !a.ring().same_ring(b.ring()) {
        return Err(Error::RingMismatch);
    }
    let res = resolve(a, Some(i + 1))?;
    let cx = tensor_complex(&res, b)?;
    if i >= cx.len() {
        return Ok(Subquotient::new(b.ring(), &[], &[], &[]));
    }
    homology_at(&cx, i)
}
