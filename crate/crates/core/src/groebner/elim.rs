//! Kernels, preimages and lifts through one elimination-order Gröbner basis.
//!
//! For a map `φ: Q^s -> Q^r` and submodules `N ⊆ Q^r`, `K ⊆ Q^s`, the module generated by
//! `(φ(e_j), e_j)`, `(n, 0)` and `(0, k)` inside `Q^r ⊕ Q^s` meets `0 ⊕ Q^s` exactly in
//! `φ^{-1}(N)`. With the first block eliminated, the basis elements living entirely in
//! the second block form a reduced Gröbner basis of that preimage.

use super::engine::{self, Basis};
use crate::polyring::{Monomial, PrimeField, Term, TermOrder, VecArith, Vector};

pub(crate) struct Elimination {
    ar: VecArith,
    split: usize,
    rank: usize,
    basis: Vec<Vector>,
}

fn shift(field: PrimeField, order: TermOrder, v: &Vector, by: u32) -> Vector {
    Vector::from_terms(
        field,
        order,
        v.terms()
            .iter()
            .map(|t| Term {
                pos: t.pos + by,
                ..*t
            })
            .collect(),
    )
}

impl Elimination {
    /// `images[j] = φ(e_j)` in a module with `target_twists`; `source_twists` are the
    /// degrees of the `e_j`. `target_rel` spans `N`, `source_rel` spans `K`.
    pub fn new(
        base: VecArith,
        nvars: usize,
        target_twists: &[i32],
        images: &[Vector],
        source_twists: &[i32],
        target_rel: &[Vector],
        source_rel: &[Vector],
    ) -> Self {
        let r = target_twists.len();
        let order = TermOrder::eliminating(base.order.mono, r);
        let ar = VecArith::new(base.field, order);
        let f = base.field;
        let mut twists = target_twists.to_vec();
        twists.extend_from_slice(source_twists);

        let mut gens = Vec::with_capacity(images.len() + target_rel.len() + source_rel.len());
        for (j, img) in images.iter().enumerate() {
            let mut terms = img.terms().to_vec();
            terms.push(Term {
                coef: 1,
                pos: (r + j) as u32,
                mono: Monomial::one(nvars),
            });
            gens.push(Vector::from_terms(f, order, terms));
        }
        for n in target_rel {
            gens.push(shift(f, order, n, 0));
        }
        for k in source_rel {
            gens.push(shift(f, order, k, r as u32));
        }
        let run = engine::run(ar, &twists, &gens, &[]);
        Elimination {
            ar,
            split: r,
            rank: twists.len(),
            basis: run.basis,
        }
    }

    /// Reduced Gröbner basis (plain module order) of `φ^{-1}(N) + K` inside `Q^s`.
    pub fn preimage(&self) -> Vec<Vector> {
        let r = self.split as u32;
        let plain = TermOrder::new(self.ar.order.mono);
        self.basis
            .iter()
            .filter(|g| g.lead().is_some_and(|t| t.pos >= r))
            .map(|g| {
                Vector::from_terms(
                    self.ar.field,
                    plain,
                    g.terms()
                        .iter()
                        .map(|t| Term {
                            pos: t.pos - r,
                            ..*t
                        })
                        .collect(),
                )
            })
            .collect()
    }

    /// Coefficients `a` with `φ(a) ≡ v (mod N)`, or `None` when `v ∉ im φ + N`.
    pub fn lifter(&self) -> Lifter<'_> {
        Lifter {
            elim: self,
            basis: Basis::from_reduced(self.ar, self.rank, &self.basis),
        }
    }
}

pub(crate) struct Lifter<'a> {
    elim: &'a Elimination,
    basis: Basis,
}

impl Lifter<'_> {
    pub fn lift(&self, v: &Vector) -> Option<Vector> {
        let e = self.elim;
        let mut terms = v.terms().to_vec();
        terms.sort_by(|a, b| e.ar.order.cmp(b, a));
        let rem = self.basis.reduce(terms);
        let r = e.split as u32;
        if rem.iter().any(|t| t.pos < r) {
            return None;
        }
        let plain = TermOrder::new(e.ar.order.mono);
        let f = e.ar.field;
        Some(Vector::from_terms(
            f,
            plain,
            rem.iter()
                .map(|t| Term {
                    coef: f.neg(t.coef),
                    pos: t.pos - r,
                    mono: t.mono,
                })
                .collect(),
        ))
    }
}
