//! Homogeneous Buchberger, degree by degree.
//!
//! Inputs come in two flavours. "Base" generators are simply added to the basis.
//! "Candidate" generators are processed after the base and after all S-pairs of their
//! degree; a candidate that is not already in the span is a minimal generator of the
//! candidates modulo the base, which is how minimal presentations are selected.

use std::collections::BTreeMap;

use crate::polyring::{Monomial, Term, VecArith, Vector};

#[derive(Clone, Copy, Debug)]
struct Lead {
    mono: Monomial,
    pos: u32,
    mask: u32,
}

/// A growing Gröbner basis with a per-position lead index.
pub(crate) struct Basis {
    ar: VecArith,
    elems: Vec<Vec<Term>>,
    leads: Vec<Lead>,
    by_pos: Vec<Vec<usize>>,
}

impl Basis {
    pub fn new(ar: VecArith, rank: usize) -> Self {
        Basis {
            ar,
            elems: Vec::new(),
            leads: Vec::new(),
            by_pos: vec![Vec::new(); rank],
        }
    }

    pub fn from_reduced(ar: VecArith, rank: usize, elems: &[Vector]) -> Self {
        let mut b = Basis::new(ar, rank);
        for v in elems {
            b.push(v.terms().to_vec());
        }
        b
    }

    fn push(&mut self, terms: Vec<Term>) -> usize {
        let t = terms[0];
        let idx = self.elems.len();
        self.leads.push(Lead {
            mono: t.mono,
            pos: t.pos,
            mask: t.mono.support_mask(),
        });
        let p = t.pos as usize;
        if p >= self.by_pos.len() {
            self.by_pos.resize(p + 1, Vec::new());
        }
        self.by_pos[p].push(idx);
        self.elems.push(terms);
        idx
    }

    #[inline]
    fn divisor_of(&self, t: &Term) -> Option<usize> {
        let list = self.by_pos.get(t.pos as usize)?;
        let mask = t.mono.support_mask();
        list.iter().copied().find(|&k| {
            let l = &self.leads[k];
            l.mask & !mask == 0 && l.mono.divides(&t.mono)
        })
    }

    /// Full reduction: no term of the result is divisible by a lead at its position.
    pub fn reduce(&self, mut p: Vec<Term>) -> Vec<Term> {
        let mut rem = Vec::new();
        let mut i = 0;
        while i < p.len() {
            let t = p[i];
            match self.divisor_of(&t) {
                Some(k) => {
                    let q = t.mono.div(&self.leads[k].mono).expect("lead divides");
                    p = self.ar.sub_mul(&p[i..], t.coef, &q, &self.elems[k]);
                    i = 0;
                }
                None => {
                    rem.push(t);
                    i += 1;
                }
            }
        }
        rem
    }

    /// Tail-reduces every element and sorts by lead, descending.
    fn into_reduced(self) -> Vec<Vector> {
        let mut out: Vec<Vec<Term>> = Vec::with_capacity(self.elems.len());
        for e in &self.elems {
            let mut v = vec![e[0]];
            v.extend(self.reduce(e[1..].to_vec()));
            out.push(v);
        }
        let order = self.ar.order;
        out.sort_by(|a, b| order.cmp(&b[0], &a[0]));
        out.into_iter().map(Vector::from_sorted).collect()
    }
}

pub(crate) struct GbRun {
    /// The reduced Gröbner basis of base and candidates together.
    pub basis: Vec<Vector>,
    /// Indices of candidates that turned out to be minimal generators.
    pub minimal: Vec<usize>,
}

fn degree_of(v: &Vector, twists: &[i32]) -> Option<i32> {
    v.degree(twists)
}

/// Per degree: base vectors, and candidates with their input index.
type InputsByDegree<'a> = BTreeMap<i32, (Vec<&'a Vector>, Vec<(usize, &'a Vector)>)>;

/// Runs Buchberger on homogeneous input. All vectors must be homogeneous for `twists`.
pub(crate) fn run(ar: VecArith, twists: &[i32], base: &[Vector], candidates: &[Vector]) -> GbRun {
    let rank = twists.len();
    let ideal_case = rank == 1 && ar.order.split.is_none();
    let mut inputs: InputsByDegree = BTreeMap::new();
    for v in base {
        if let Some(d) = degree_of(v, twists) {
            inputs.entry(d).or_default().0.push(v);
        }
    }
    for (i, v) in candidates.iter().enumerate() {
        if let Some(d) = degree_of(v, twists) {
            inputs.entry(d).or_default().1.push((i, v));
        }
    }

    let mut basis = Basis::new(ar, rank);
    let mut pairs: BTreeMap<i32, Vec<(usize, usize)>> = BTreeMap::new();
    let mut minimal = Vec::new();

    let add = |basis: &mut Basis, pairs: &mut BTreeMap<i32, Vec<(usize, usize)>>, mut r: Vec<Term>| {
        ar.make_monic(&mut r);
        let idx = basis.push(r);
        let lead = basis.leads[idx];
        for &k in &basis.by_pos[lead.pos as usize] {
            if k == idx {
                continue;
            }
            let other = basis.leads[k];
            if ideal_case && lead.mono.is_coprime(&other.mono) {
                continue;
            }
            let l = lead.mono.lcm(&other.mono);
            let d = l.degree() as i32 + twists[lead.pos as usize];
            pairs.entry(d).or_default().push((k, idx));
        }
    };

    loop {
        let next_pair = pairs.keys().next().copied();
        let next_input = inputs.keys().next().copied();
        let d = match (next_pair, next_input) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if let Some(ps) = pairs.remove(&d) {
            for (i, j) in ps {
                let (li, lj) = (basis.leads[i], basis.leads[j]);
                let l = li.mono.lcm(&lj.mono);
                if chain_skip(&basis, i, j, &l, li.pos) {
                    continue;
                }
                let qi = l.div(&li.mono).unwrap();
                let qj = l.div(&lj.mono).unwrap();
                let si = ar.scale(&basis.elems[i], 1, &qi);
                let s = ar.sub_mul(&si, 1, &qj, &basis.elems[j]);
                let r = basis.reduce(s);
                if !r.is_empty() {
                    add(&mut basis, &mut pairs, r);
                }
            }
        }
        if let Some((bs, cs)) = inputs.remove(&d) {
            for v in bs {
                let r = basis.reduce(v.terms().to_vec());
                if !r.is_empty() {
                    add(&mut basis, &mut pairs, r);
                }
            }
            for (idx, v) in cs {
                let r = basis.reduce(v.terms().to_vec());
                if !r.is_empty() {
                    add(&mut basis, &mut pairs, r);
                    minimal.push(idx);
                }
            }
        }
    }

    GbRun {
        basis: basis.into_reduced(),
        minimal,
    }
}

/// Buchberger's chain criterion in its strict form: some other lead divides the lcm and
/// both of its pairs with `i` and `j` have strictly smaller lcm, hence were already
/// treated in an earlier degree.
fn chain_skip(basis: &Basis, i: usize, j: usize, l: &Monomial, pos: u32) -> bool {
    let lmask = l.support_mask();
    basis.by_pos[pos as usize].iter().any(|&k| {
        if k == i || k == j {
            return false;
        }
        let lk = &basis.leads[k];
        if lk.mask & !lmask != 0 || !lk.mono.divides(l) {
            return false;
        }
        lk.mono.lcm(&basis.leads[i].mono) != *l && lk.mono.lcm(&basis.leads[j].mono) != *l
    })
}
