use std::collections::hash_map::DefaultHasher;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};

use super::field::PrimeField;
use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use super::vector::{Term, TermOrder, VecArith, Vector};
use crate::error::{Error, Result};

/// Structural identity of a polynomial ring: equal for rings with the same field,
/// variable names and order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingId(u64);

/// The ambient graded polynomial ring `Q = GF(p)[x_1..x_n]`, all variables of degree 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
    id: RingId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// A polynomial with terms sorted strictly descending in its ring's order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: RingId,
    vec: Vector,
}

impl PolyRing {
    pub fn new(field: PrimeField, vars: Vec<String>, order: MonomialOrder) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        if vars.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!(
                "at most {MAX_VARS} variables are supported"
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        let mut h = DefaultHasher::new();
        field.modulus().hash(&mut h);
        vars.hash(&mut h);
        order.hash(&mut h);
        let id = RingId(h.finish());
        Ok(PolyRing {
            field,
            vars,
            order,
            id,
        })
    }

    /// `GF(p)[vars]` with grevlex order.
    pub fn with_vars(p: u64, vars: &[&str]) -> Result<Self> {
        PolyRing::new(
            PrimeField::new(p)?,
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
        )
    }

    pub fn id(&self) -> RingId {
        self.id
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn term_order(&self) -> TermOrder {
        TermOrder::new(self.order)
    }

    pub(crate) fn arith(&self) -> VecArith {
        VecArith::new(self.field, self.term_order())
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial {
            ring: self.id,
            vec: Vector::zero(),
        }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        self.monomial(c, Monomial::one(self.nvars()))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.monomial(1, Monomial::var(self.nvars(), i))
    }

    pub fn monomial(&self, c: i64, mono: Monomial) -> Polynomial {
        self.from_terms(vec![(c, mono)])
    }

    pub fn from_terms(&self, terms: Vec<(i64, Monomial)>) -> Polynomial {
        let terms = terms
            .into_iter()
            .map(|(c, mono)| Term {
                coef: self.field.reduce(c),
                pos: 0,
                mono,
            })
            .collect();
        Polynomial {
            ring: self.id,
            vec: Vector::from_terms(self.field, self.term_order(), terms),
        }
    }

    /// Wraps the position-0 part of a vector as a polynomial.
    pub(crate) fn wrap(&self, vec: Vector) -> Polynomial {
        debug_assert!(vec.terms.iter().all(|t| t.pos == 0));
        Polynomial { ring: self.id, vec }
    }

    fn check(&self, a: &Polynomial) -> Result<()> {
        if a.ring != self.id {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        self.poly_arith(a, b, ArithOp::Add)
    }

    pub fn sub(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        self.poly_arith(a, b, ArithOp::Sub)
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        self.poly_arith(a, b, ArithOp::Mul)
    }

    pub fn poly_arith(&self, a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        self.check(a)?;
        self.check(b)?;
        let ar = self.arith();
        let terms = match op {
            ArithOp::Add => ar.add(&a.vec.terms, &b.vec.terms),
            ArithOp::Sub => ar.sub(&a.vec.terms, &b.vec.terms),
            ArithOp::Mul => ar.linear_combination(
                a.vec
                    .terms
                    .iter()
                    .map(|t| (t.coef, t.mono, b.vec.terms.as_slice())),
            ),
        };
        Ok(self.wrap(Vector::from_sorted(terms)))
    }

    pub fn neg(&self, a: &Polynomial) -> Polynomial {
        self.scale(a, self.field.neg(1))
    }

    pub fn scale(&self, a: &Polynomial, c: u32) -> Polynomial {
        let terms = self
            .arith()
            .scale(&a.vec.terms, c, &Monomial::one(self.nvars()));
        self.wrap(Vector::from_sorted(terms))
    }

    /// Places a polynomial at a position of a free module.
    pub fn embed(&self, p: &Polynomial, pos: usize) -> Vector {
        Vector::from_sorted(
            p.vec
                .terms
                .iter()
                .map(|t| Term {
                    pos: pos as u32,
                    ..*t
                })
                .collect(),
        )
    }

    /// Builds a vector from its components.
    pub fn vector(&self, comps: &[Polynomial]) -> Vector {
        let mut terms = Vec::new();
        for (i, p) in comps.iter().enumerate() {
            terms.extend(p.vec.terms.iter().map(|t| Term {
                pos: i as u32,
                ..*t
            }));
        }
        Vector::from_terms(self.field, self.term_order(), terms)
    }

    pub fn component(&self, v: &Vector, pos: usize) -> Polynomial {
        let terms = v
            .terms
            .iter()
            .filter(|t| t.pos as usize == pos)
            .map(|t| Term { pos: 0, ..*t })
            .collect();
        self.wrap(Vector::from_sorted(terms))
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut s = String::new();
        for (i, name) in self.vars.iter().enumerate() {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(name);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        s
    }

    /// Renders a polynomial in the input syntax, using symmetric coefficient representatives.
    pub fn format(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, t) in p.vec.terms.iter().enumerate() {
            let c = self.field.signed(t.coef);
            let (neg, abs) = (c < 0, c.unsigned_abs());
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.format_monomial(&t.mono);
            if mono.is_empty() {
                let _ = write!(s, "{abs}");
            } else if abs == 1 {
                s.push_str(&mono);
            } else {
                let _ = write!(s, "{abs}*{mono}");
            }
        }
        s
    }
}

impl Polynomial {
    pub fn ring_id(&self) -> RingId {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero()
    }

    pub fn nterms(&self) -> usize {
        self.vec.len()
    }

    /// `(coefficient, monomial)` pairs in descending order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Monomial)> + '_ {
        self.vec.terms.iter().map(|t| (t.coef, &t.mono))
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.vec.lead().map(|t| &t.mono)
    }

    pub fn degree(&self) -> Option<u32> {
        self.lead_monomial().map(|m| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.vec.is_homogeneous(&[0])
    }

    pub fn constant_term(&self) -> u32 {
        self.vec
            .terms
            .last()
            .filter(|t| t.mono.is_one())
            .map_or(0, |t| t.coef)
    }

    pub fn as_vector(&self) -> &Vector {
        &self.vec
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse_like(r: &PolyRing, terms: &[(i64, &[u32])]) -> Polynomial {
        r.from_terms(
            terms
                .iter()
                .map(|(c, e)| (*c, Monomial::from_exponents(e).unwrap()))
                .collect(),
        )
    }

    #[test]
    fn cancellation() {
        let r = PolyRing::with_vars(32003, &["x", "y"]).unwrap();
        let s = r.add(&r.var(0), &r.var(1)).unwrap();
        let out = r.add(&s, &r.neg(&r.var(0))).unwrap();
        assert_eq!(out, r.var(1));
    }

    #[test]
    fn difference_of_squares_mod_7() {
        let r = PolyRing::with_vars(7, &["x", "y"]).unwrap();
        let (x, y) = (r.var(0), r.var(1));
        let p = r.mul(&r.add(&x, &y).unwrap(), &r.sub(&x, &y).unwrap()).unwrap();
        let expected = parse_like(&r, &[(1, &[2, 0]), (6, &[0, 2])]);
        assert_eq!(p, expected);
        assert_eq!(r.format(&p), "x^2 - y^2");
    }

    #[test]
    fn veronese_product() {
        // x^2 * (x^2 - w*y) = x^4 - w*x^2*y in GF(32003)[w,x,y,z]
        let r = PolyRing::with_vars(32003, &["w", "x", "y", "z"]).unwrap();
        let x2 = parse_like(&r, &[(1, &[0, 2, 0, 0])]);
        let f = parse_like(&r, &[(1, &[0, 2, 0, 0]), (-1, &[1, 0, 1, 0])]);
        let p = r.mul(&x2, &f).unwrap();
        assert_eq!(r.format(&p), "x^4 - w*x^2*y");
        assert!(p.is_homogeneous());
    }

    #[test]
    fn ring_mismatch() {
        let r = PolyRing::with_vars(32003, &["x", "y"]).unwrap();
        let s = PolyRing::with_vars(32003, &["x", "z"]).unwrap();
        assert_eq!(r.add(&r.var(0), &s.var(0)), Err(Error::RingMismatch));
        let r2 = PolyRing::with_vars(32003, &["x", "y"]).unwrap();
        assert!(r.add(&r.var(0), &r2.var(1)).is_ok());
    }

    #[test]
    fn invalid_rings() {
        assert!(PolyRing::with_vars(32003, &[]).is_err());
        assert!(PolyRing::with_vars(32003, &["x", "x"]).is_err());
    }

    fn arb_poly(r: PolyRing) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((-5i64..5, proptest::collection::vec(0u32..3, 3)), 0..6)
            .prop_map(move |ts| {
                r.from_terms(
                    ts.into_iter()
                        .map(|(c, e)| (c, Monomial::from_exponents(&e).unwrap()))
                        .collect(),
                )
            })
    }

    proptest! {
        #[test]
        fn canonical_form_laws(
            a in arb_poly(PolyRing::with_vars(32003, &["x","y","z"]).unwrap()),
            b in arb_poly(PolyRing::with_vars(32003, &["x","y","z"]).unwrap()),
            c in arb_poly(PolyRing::with_vars(32003, &["x","y","z"]).unwrap()),
        ) {
            let r = PolyRing::with_vars(32003, &["x", "y", "z"]).unwrap();
            prop_assert_eq!(r.add(&a, &b).unwrap(), r.add(&b, &a).unwrap());
            prop_assert_eq!(r.mul(&a, &b).unwrap(), r.mul(&b, &a).unwrap());
            let ab_c = r.mul(&r.mul(&a, &b).unwrap(), &c).unwrap();
            let a_bc = r.mul(&a, &r.mul(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let dist = r.mul(&a, &r.add(&b, &c).unwrap()).unwrap();
            let expanded = r.add(&r.mul(&a, &b).unwrap(), &r.mul(&a, &c).unwrap()).unwrap();
            prop_assert_eq!(dist, expanded);
        }
    }
}
