//! Gröbner bases of homogeneous submodules over `Q` and over `R = Q/I`.
//!
//! Everything over `R` is computed over `Q` after adjoining `I·e_j` for each basis
//! vector `e_j` of the ambient module.

mod elim;
mod engine;

use std::fmt;
use std::sync::Arc;

pub(crate) use elim::Elimination;
pub(crate) use engine::Basis;

use crate::error::{Error, Result};
use crate::polyring::{FreeModule, GradedMatrix, PolyRing, Polynomial, RingId, Term, Vector};
use crate::resolution::RingCache;

/// A homogeneous ideal of `Q` together with its reduced Gröbner basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: RingId,
    generators: Vec<Polynomial>,
    gb: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(poly: &PolyRing, generators: Vec<Polynomial>) -> Result<Ideal> {
        for g in &generators {
            if g.ring_id() != poly.id() {
                return Err(Error::RingMismatch);
            }
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous(poly.format(g)));
            }
        }
        let vecs: Vec<Vector> = generators.iter().map(|g| g.as_vector().clone()).collect();
        let run = engine::run(poly.arith(), &[0], &vecs, &[]);
        let gb = run.basis.into_iter().map(|v| poly.wrap(v)).collect();
        Ok(Ideal {
            ring: poly.id(),
            generators,
            gb,
        })
    }

    pub(crate) fn from_basis(poly: &PolyRing, basis: Vec<Vector>) -> Ideal {
        let gb: Vec<Polynomial> = basis.into_iter().map(|v| poly.wrap(v)).collect();
        Ideal {
            ring: poly.id(),
            generators: gb.clone(),
            gb,
        }
    }

    pub fn ring_id(&self) -> RingId {
        self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The reduced Gröbner basis, sorted by lead term descending.
    pub fn gb(&self) -> &[Polynomial] {
        &self.gb
    }

    pub fn is_zero(&self) -> bool {
        self.gb.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gb.iter().any(|g| g.degree() == Some(0))
    }

    pub fn reduce(&self, poly: &PolyRing, p: &Polynomial) -> Polynomial {
        let vecs: Vec<Vector> = self.gb.iter().map(|g| g.as_vector().clone()).collect();
        let b = Basis::from_reduced(poly.arith(), 1, &vecs);
        poly.wrap(Vector::from_sorted(b.reduce(p.as_vector().terms().to_vec())))
    }

    pub fn contains(&self, poly: &PolyRing, p: &Polynomial) -> bool {
        self.reduce(poly, p).is_zero()
    }

    /// Ideal equality, decided by comparing reduced Gröbner bases.
    pub fn same_as(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.gb == other.gb
    }

    /// Containment `self ⊆ other`.
    pub fn is_subset_of(&self, poly: &PolyRing, other: &Ideal) -> bool {
        self.gb.iter().all(|g| other.contains(poly, g))
    }

    pub(crate) fn gb_vectors(&self) -> impl Iterator<Item = &Vector> {
        self.gb.iter().map(|g| g.as_vector())
    }
}

/// The graded ring `R = Q/I`. When `I = 0` this is `Q` itself.
pub struct QuotientRing {
    poly: PolyRing,
    ideal: Ideal,
    base: Option<Ring>,
    pub(crate) cache: RingCache,
}

pub type Ring = Arc<QuotientRing>;

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.ideal.gb.iter().map(|g| self.poly.format(g)).collect();
        write!(f, "{:?}/({})", self.poly.var_names(), gens.join(", "))
    }
}

impl QuotientRing {
    /// `Q/(generators)`. Rejects the unit ideal, since the zero ring has no invariants.
    pub fn new(poly: PolyRing, generators: Vec<Polynomial>) -> Result<Ring> {
        let generators: Vec<Polynomial> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        let ideal = Ideal::new(&poly, generators)?;
        if ideal.is_unit() {
            return Err(Error::InvalidRing("the ideal is the unit ideal".into()));
        }
        let base = if ideal.is_zero() {
            None
        } else {
            Some(QuotientRing::polynomial(poly.clone()))
        };
        Ok(Arc::new(QuotientRing {
            poly,
            ideal,
            base,
            cache: RingCache::default(),
        }))
    }

    /// The polynomial ring itself, as a quotient by the zero ideal.
    pub fn polynomial(poly: PolyRing) -> Ring {
        let ideal = Ideal {
            ring: poly.id(),
            generators: Vec::new(),
            gb: Vec::new(),
        };
        Arc::new(QuotientRing {
            poly,
            ideal,
            base: None,
            cache: RingCache::default(),
        })
    }

    pub fn poly(&self) -> &PolyRing {
        &self.poly
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    /// True when `I = 0`, so the ring is regular.
    pub fn is_polynomial(&self) -> bool {
        self.ideal.is_zero()
    }

    /// The ambient polynomial ring `Q` as a ring handle.
    pub fn base(self: &Arc<Self>) -> Ring {
        match &self.base {
            Some(b) => b.clone(),
            None => self.clone(),
        }
    }

    pub fn same_ring(&self, other: &QuotientRing) -> bool {
        self.poly.id() == other.poly.id() && self.ideal.same_as(&other.ideal)
    }

    /// `I·e_j` for every basis vector of a free module of the given rank.
    pub(crate) fn ideal_lift(&self, rank: usize) -> Vec<Vector> {
        let mut out = Vec::with_capacity(rank * self.ideal.gb.len());
        for j in 0..rank {
            for g in self.ideal.gb_vectors() {
                out.push(Vector::from_sorted(
                    g.terms()
                        .iter()
                        .map(|t| Term {
                            pos: j as u32,
                            ..*t
                        })
                        .collect(),
                ));
            }
        }
        out
    }

    /// Reduced Gröbner basis of `span(gens) + I·F` in a free module with the given twists.
    pub(crate) fn gb(&self, twists: &[i32], gens: &[Vector]) -> Vec<Vector> {
        let mut all = self.ideal_lift(twists.len());
        all.extend_from_slice(gens);
        engine::run(self.poly.arith(), twists, &all, &[]).basis
    }

    /// Indices of a minimal generating set of `span(cands) + base + I·F` over `base + I·F`,
    /// chosen greedily in degree order, together with the Gröbner basis of the whole.
    pub(crate) fn minimal_generators(
        &self,
        twists: &[i32],
        base: &[Vector],
        cands: &[Vector],
    ) -> (Vec<usize>, Vec<Vector>) {
        let mut all = self.ideal_lift(twists.len());
        all.extend_from_slice(base);
        let run = engine::run(self.poly.arith(), twists, &all, cands);
        (run.minimal, run.basis)
    }

    /// Reduces a vector modulo `I·F`.
    pub(crate) fn reduce_mod_ideal(&self, v: &Vector) -> Vector {
        if self.ideal.is_zero() {
            return v.clone();
        }
        let vecs: Vec<Vector> = self.ideal.gb_vectors().cloned().collect();
        let b = Basis::from_reduced(self.poly.arith(), 1, &vecs);
        let mut out: Vec<Term> = Vec::with_capacity(v.len());
        // reduce each component separately, positions do not interact
        let maxp = v.max_position().unwrap_or(0);
        for p in 0..=maxp {
            let comp: Vec<Term> = v
                .terms()
                .iter()
                .filter(|t| t.pos as usize == p)
                .map(|t| Term { pos: 0, ..*t })
                .collect();
            if comp.is_empty() {
                continue;
            }
            out.extend(b.reduce(comp).into_iter().map(|t| Term {
                pos: p as u32,
                ..t
            }));
        }
        Vector::from_terms(self.poly.field(), self.poly.term_order(), out)
    }

    /// Preimage of `target_rel + I·Q^r` under `images`, modulo `source_rel + I·Q^s`.
    pub(crate) fn elimination(
        &self,
        target_twists: &[i32],
        images: &[Vector],
        source_twists: &[i32],
        target_rel: &[Vector],
        source_rel: &[Vector],
    ) -> Elimination {
        let mut trel = self.ideal_lift(target_twists.len());
        trel.extend_from_slice(target_rel);
        let mut srel = self.ideal_lift(source_twists.len());
        srel.extend_from_slice(source_rel);
        Elimination::new(
            self.poly.arith(),
            self.nvars(),
            target_twists,
            images,
            source_twists,
            &trel,
            &srel,
        )
    }
}

pub(crate) fn check_element(v: &Vector, twists: &[i32]) -> Result<()> {
    if let Some(p) = v.max_position() {
        if p >= twists.len() {
            return Err(Error::ShapeMismatch(format!(
                "position {p} outside a module of rank {}",
                twists.len()
            )));
        }
    }
    if !v.is_homogeneous(twists) {
        return Err(Error::Inhomogeneous(format!("{v:?}")));
    }
    Ok(())
}

/// Degrees of a list of vectors; zero vectors get degree 0.
pub(crate) fn degrees(vs: &[Vector], twists: &[i32]) -> Vec<i32> {
    vs.iter().map(|v| v.degree(twists).unwrap_or(0)).collect()
}

/// A submodule of a graded free module over `R`, with the reduced Gröbner basis of its
/// preimage in the free `Q`-module (that is, including `I·F`).
#[derive(Clone, Debug)]
pub struct SubmoduleGB {
    ring: Ring,
    ambient: FreeModule,
    generators: Vec<Vector>,
    basis: Vec<Vector>,
}

pub fn buchberger(ring: &Ring, ambient: &FreeModule, gens: &[Vector]) -> Result<SubmoduleGB> {
    for g in gens {
        check_element(g, ambient.twists())?;
    }
    let basis = ring.gb(ambient.twists(), gens);
    Ok(SubmoduleGB {
        ring: ring.clone(),
        ambient: ambient.clone(),
        generators: gens.to_vec(),
        basis,
    })
}

/// Kernel of a graded map of free `R`-modules.
pub fn kernel_of_map(ring: &Ring, f: &GradedMatrix) -> Result<SubmoduleGB> {
    f.validate()?;
    let e = ring.elimination(
        f.target().twists(),
        f.columns(),
        f.source().twists(),
        &[],
        &[],
    );
    let basis = e.preimage();
    Ok(SubmoduleGB {
        ring: ring.clone(),
        ambient: f.source().clone(),
        generators: basis.clone(),
        basis,
    })
}

pub fn normal_form(v: &Vector, gb: &SubmoduleGB) -> Result<Vector> {
    gb.normal_form(v)
}

impl SubmoduleGB {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ambient(&self) -> &FreeModule {
        &self.ambient
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    /// The reduced Gröbner basis, including the contribution of `I·F` over a quotient.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Basis elements that are not already in `I·F`, reduced modulo `I`.
    pub fn basis_mod_ideal(&self) -> Vec<Vector> {
        self.basis
            .iter()
            .map(|g| self.ring.reduce_mod_ideal(g))
            .filter(|g| !g.is_zero())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.basis_mod_ideal().is_empty()
    }

    pub fn normal_form(&self, v: &Vector) -> Result<Vector> {
        check_element(v, self.ambient.twists())?;
        let b = Basis::from_reduced(
            self.ring.poly().arith(),
            self.ambient.rank(),
            &self.basis,
        );
        Ok(Vector::from_sorted(b.reduce(v.terms().to_vec())))
    }

    pub fn contains(&self, v: &Vector) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    /// Syzygies of the original generators, in the free module whose twists are the
    /// generator degrees.
    pub fn syzygies(&self) -> Result<SubmoduleGB> {
        let tw = degrees(&self.generators, self.ambient.twists());
        let f = GradedMatrix::new(
            FreeModule::new(tw),
            self.ambient.clone(),
            self.generators.clone(),
        )?;
        kernel_of_map(&self.ring, &f)
    }

    /// The ideal `(N : e) = {a : a·e ∈ N}`.
    pub fn quotient(&self, e: &Vector) -> Result<Ideal> {
        check_element(e, self.ambient.twists())?;
        let poly = self.ring.poly();
        let Some(d) = e.degree(self.ambient.twists()) else {
            return Ideal::new(poly, vec![poly.one()]);
        };
        let el = Elimination::new(
            poly.arith(),
            poly.nvars(),
            self.ambient.twists(),
            std::slice::from_ref(e),
            &[d],
            &self.basis,
            &self.ring.ideal_lift(1),
        );
        Ok(Ideal::from_basis(poly, el.preimage()))
    }

    /// Coefficients expressing `v` in terms of the generators, modulo `I`.
    pub fn lift(&self, v: &Vector) -> Result<Vec<Polynomial>> {
        check_element(v, self.ambient.twists())?;
        let tw = degrees(&self.generators, self.ambient.twists());
        let el = self
            .ring
            .elimination(self.ambient.twists(), &self.generators, &tw, &[], &[]);
        let a = el.lifter().lift(v).ok_or(Error::NotInSpan)?;
        let a = self.ring.reduce_mod_ideal(&a);
        Ok((0..self.generators.len())
            .map(|j| self.ring.poly().component(&a, j))
            .collect())
    }
}
