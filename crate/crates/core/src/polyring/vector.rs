//! Elements of graded free modules: sparse sums of terms `c * m * e_pos`.

use std::cmp::Ordering;

use super::field::PrimeField;
use super::monomial::{Monomial, MonomialOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coef: u32,
    pub pos: u32,
    pub mono: Monomial,
}

/// Module monomial order: term-over-position, with a smaller position index ranking
/// higher on ties. An optional `split` puts every position below it above every
/// position at or past it (block elimination order).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TermOrder {
    pub mono: MonomialOrder,
    pub split: Option<u32>,
}

impl TermOrder {
    pub fn new(mono: MonomialOrder) -> Self {
        TermOrder { mono, split: None }
    }

    pub fn eliminating(mono: MonomialOrder, split: usize) -> Self {
        TermOrder {
            mono,
            split: Some(split as u32),
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp_parts(&a.mono, a.pos, &b.mono, b.pos)
    }

    #[inline]
    pub fn cmp_parts(&self, am: &Monomial, ap: u32, bm: &Monomial, bp: u32) -> Ordering {
        if let Some(s) = self.split {
            let (ta, tb) = (ap < s, bp < s);
            if ta != tb {
                return if ta {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        match self.mono.cmp(am, bm) {
            Ordering::Equal => bp.cmp(&ap),
            o => o,
        }
    }
}

/// A module element with terms sorted strictly descending in some [`TermOrder`] and no
/// zero coefficients. Public constructors always sort by the plain term-over-position
/// order of the ring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vector {
    pub(crate) terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub(crate) fn from_sorted(terms: Vec<Term>) -> Self {
        Vector { terms }
    }

    /// Builds a canonical vector from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(field: PrimeField, order: TermOrder, mut terms: Vec<Term>) -> Self {
        terms.sort_by(|a, b| order.cmp(b, a));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.pos == t.pos && last.mono == t.mono {
                    last.coef = field.add(last.coef, t.coef);
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| t.coef != 0);
        Vector { terms: out }
    }

    pub fn unit(nvars: usize, pos: usize) -> Self {
        Vector {
            terms: vec![Term {
                coef: 1,
                pos: pos as u32,
                mono: Monomial::one(nvars),
            }],
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of the lead term under the given generator degrees.
    pub fn degree(&self, twists: &[i32]) -> Option<i32> {
        self.lead()
            .map(|t| t.mono.degree() as i32 + twists[t.pos as usize])
    }

    pub fn is_homogeneous(&self, twists: &[i32]) -> bool {
        match self.degree(twists) {
            None => true,
            Some(d) => self
                .terms
                .iter()
                .all(|t| (t.pos as usize) < twists.len() && t.mono.degree() as i32 + twists[t.pos as usize] == d),
        }
    }

    pub fn max_position(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.pos as usize).max()
    }
}

/// Arithmetic on sorted term lists.
#[derive(Clone, Copy, Debug)]
pub(crate) struct VecArith {
    pub field: PrimeField,
    pub order: TermOrder,
}

impl VecArith {
    pub fn new(field: PrimeField, order: TermOrder) -> Self {
        VecArith { field, order }
    }

    /// `a - c * m * b`.
    pub fn sub_mul(&self, a: &[Term], c: u32, m: &Monomial, b: &[Term]) -> Vec<Term> {
        let f = self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let bm = b[j].mono.mul(m);
            match self.order.cmp_parts(&a[i].mono, a[i].pos, &bm, b[j].pos) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        coef: f.neg(f.mul(c, b[j].coef)),
                        pos: b[j].pos,
                        mono: bm,
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let coef = f.sub(a[i].coef, f.mul(c, b[j].coef));
                    if coef != 0 {
                        out.push(Term { coef, ..a[i] });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            out.push(Term {
                coef: f.neg(f.mul(c, t.coef)),
                pos: t.pos,
                mono: t.mono.mul(m),
            });
        }
        out
    }

    pub fn add(&self, a: &[Term], b: &[Term]) -> Vec<Term> {
        let one = Monomial::one(a.first().or(b.first()).map_or(0, |t| t.mono.nvars()));
        self.sub_mul(a, self.field.neg(1), &one, b)
    }

    pub fn sub(&self, a: &[Term], b: &[Term]) -> Vec<Term> {
        let one = Monomial::one(a.first().or(b.first()).map_or(0, |t| t.mono.nvars()));
        self.sub_mul(a, 1, &one, b)
    }

    pub fn scale(&self, a: &[Term], c: u32, m: &Monomial) -> Vec<Term> {
        if c == 0 {
            return Vec::new();
        }
        a.iter()
            .map(|t| Term {
                coef: self.field.mul(c, t.coef),
                pos: t.pos,
                mono: t.mono.mul(m),
            })
            .collect()
    }

    pub fn make_monic(&self, a: &mut [Term]) {
        if let Some(lead) = a.first() {
            if lead.coef != 1 {
                let inv = self.field.inv(lead.coef);
                for t in a.iter_mut() {
                    t.coef = self.field.mul(t.coef, inv);
                }
            }
        }
    }

    /// Sum of `c_k * m_k * v_k` over many scaled vectors.
    pub fn linear_combination<'a>(
        &self,
        parts: impl IntoIterator<Item = (u32, Monomial, &'a [Term])>,
    ) -> Vec<Term> {
        let mut acc: Vec<Term> = Vec::new();
        for (c, m, v) in parts {
            if c == 0 || v.is_empty() {
                continue;
            }
            acc = self.sub_mul(&acc, self.field.neg(c), &m, v);
        }
        acc
    }
}
