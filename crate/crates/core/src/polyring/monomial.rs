use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the number of ring variables. Exponent vectors are stored densely.
pub const MAX_VARS: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    nvars: u8,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        Monomial {
            exps: [0; MAX_VARS],
            nvars: nvars as u8,
            deg: 0,
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!(
                "at most {MAX_VARS} variables are supported"
            )));
        }
        let mut m = Monomial::one(exps.len());
        for (i, &e) in exps.iter().enumerate() {
            let e = u16::try_from(e)
                .map_err(|_| Error::InvalidRing(format!("exponent {e} too large")))?;
            m.exps[i] = e;
            m.deg += e as u32;
        }
        Ok(m)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.nvars as usize]
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Bit `i` is set when variable `i` occurs. Used as a cheap divisibility pre-filter.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for i in 0..self.nvars as usize {
            if self.exps[i] > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] += other.exps[i];
        }
        out.deg += other.deg;
        out
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] -= other.exps[i];
        }
        out.deg -= other.deg;
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        out.deg = 0;
        for i in 0..MAX_VARS {
            out.exps[i] = out.exps[i].max(other.exps[i]);
            out.deg += out.exps[i] as u32;
        }
        out
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        out.deg = 0;
        for i in 0..MAX_VARS {
            out.exps[i] = out.exps[i].min(other.exps[i]);
            out.deg += out.exps[i] as u32;
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// All monomials of the given degree in `nvars` variables, in descending grevlex order.
    pub fn all_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        fn rec(out: &mut Vec<Monomial>, cur: &mut Monomial, var: usize, left: u32) {
            let n = cur.nvars as usize;
            if var + 1 == n {
                cur.exps[var] = left as u16;
                cur.deg += left;
                out.push(*cur);
                cur.deg -= left;
                cur.exps[var] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur.exps[var] = e as u16;
                cur.deg += e;
                rec(out, cur, var + 1, left - e);
                cur.deg -= e;
            }
            cur.exps[var] = 0;
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if degree == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        let mut cur = Monomial::one(nvars);
        rec(&mut out, &mut cur, 0, degree);
        out.sort_by(|a, b| MonomialOrder::Grevlex.cmp(b, a));
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    /// Compares two monomials with the same number of variables.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => {
                match a.deg.cmp(&b.deg) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for i in (0..a.nvars as usize).rev() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => {}
                        // smaller exponent in the last differing variable is larger
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => {
                for i in 0..a.nvars as usize {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

/// Checked comparison that rejects monomials from rings of different size.
pub fn compare(u: &Monomial, v: &Monomial, order: MonomialOrder) -> Result<Ordering> {
    if u.nvars != v.nvars {
        return Err(Error::LengthMismatch {
            left: u.nvars(),
            right: v.nvars(),
        });
    }
    Ok(order.cmp(u, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::Grevlex;
        // x^2 > xy in k[x,y]
        assert_eq!(compare(&m(&[2, 0]), &m(&[1, 1]), o), Ok(Ordering::Greater));
        // 1 < x
        assert_eq!(compare(&m(&[0, 0]), &m(&[1, 0]), o), Ok(Ordering::Less));
        // y^2 > xz in k[x,y,z]
        assert_eq!(
            compare(&m(&[0, 2, 0]), &m(&[1, 0, 1]), o),
            Ok(Ordering::Greater)
        );
    }

    #[test]
    fn lex_differs_from_grevlex() {
        // x z^2 vs y^2 z: lex says x... wins, grevlex says y^2 z wins
        let a = m(&[1, 0, 2]);
        let b = m(&[0, 2, 1]);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::Grevlex.cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert_eq!(
            compare(&m(&[1]), &m(&[1, 0]), MonomialOrder::Grevlex),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn enumerates_monomials_of_degree() {
        let ms = Monomial::all_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0], m(&[2, 0, 0]));
        assert_eq!(Monomial::all_of_degree(4, 3).len(), 20);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, 3).prop_map(|e| m(&e))
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative(a in arb_mono(), b in arb_mono(), w in arb_mono()) {
            for o in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&w), &b.mul(&w)));
                prop_assert_ne!(o.cmp(&Monomial::one(3), &a.mul(&Monomial::var(3, 0))), Ordering::Greater);
            }
        }

        #[test]
        fn lcm_gcd_divisibility(a in arb_mono(), b in arb_mono()) {
            let l = a.lcm(&b);
            prop_assert!(a.divides(&l) && b.divides(&l));
            prop_assert!(a.gcd(&b).divides(&a));
            prop_assert_eq!(l.div(&a).unwrap().mul(&a), l);
            prop_assert_eq!(a.degree() + b.degree(), l.degree() + a.gcd(&b).degree());
        }
    }
}
