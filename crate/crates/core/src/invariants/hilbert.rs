use serde::Serialize;

use crate::polyring::Monomial;
use crate::resolution::{base_resolution, PresentedModule};

/// `numerator(t) / (1 - t)^n`. The numerator is stored as `(degree, coefficient)` pairs
/// with nonzero coefficients, sorted by degree; degrees may be negative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    numerator: Vec<(i32, i64)>,
    nvars: usize,
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

fn normalize(mut terms: Vec<(i32, i64)>) -> Vec<(i32, i64)> {
    terms.sort_by_key(|t| t.0);
    let mut out: Vec<(i32, i64)> = Vec::new();
    for (d, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == d => last.1 += c,
            _ => out.push((d, c)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

impl HilbertSeries {
    pub fn new(numerator: Vec<(i32, i64)>, nvars: usize) -> Self {
        HilbertSeries {
            numerator: normalize(numerator),
            nvars,
        }
    }

    pub fn numerator(&self) -> &[(i32, i64)] {
        &self.numerator
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Value of the Hilbert function in degree `d`.
    pub fn coefficient(&self, d: i32) -> i64 {
        let n = self.nvars as i64;
        self.numerator
            .iter()
            .map(|&(k, c)| {
                let m = (d - k) as i64;
                if m < 0 {
                    0
                } else if n == 0 {
                    if m == 0 {
                        c
                    } else {
                        0
                    }
                } else {
                    c * binomial(m + n - 1, n - 1)
                }
            })
            .sum()
    }

    /// Hilbert function on `lo..=hi`.
    pub fn function(&self, lo: i32, hi: i32) -> Vec<i64> {
        (lo..=hi).map(|d| self.coefficient(d)).collect()
    }

    /// Krull dimension: `n` minus the multiplicity of `t = 1` as a root of the numerator.
    /// The zero module has dimension `-1`.
    pub fn dimension(&self) -> i32 {
        if self.numerator.is_empty() {
            return -1;
        }
        let lo = self.numerator[0].0;
        // dense coefficients of t^{-lo} * numerator
        let hi = self.numerator.last().unwrap().0;
        let mut poly = vec![0i64; (hi - lo + 1) as usize];
        for &(d, c) in &self.numerator {
            poly[(d - lo) as usize] = c;
        }
        let mut order = 0;
        loop {
            let at_one: i64 = poly.iter().sum();
            if at_one != 0 {
                break;
            }
            // synthetic division by (t - 1)
            let mut q = vec![0i64; poly.len() - 1];
            let mut carry = 0i64;
            for i in (1..poly.len()).rev() {
                carry += poly[i];
                q[i - 1] = carry;
            }
            poly = q;
            order += 1;
        }
        self.nvars as i32 - order
    }

    /// The numerator reduced to `h(t) / (1 - t)^dim`; `h(1)` is the multiplicity.
    pub fn multiplicity(&self) -> i64 {
        let d = self.dimension();
        if d < 0 {
            return 0;
        }
        let lo = self.numerator[0].0;
        let hi = self.numerator.last().unwrap().0;
        let mut poly = vec![0i64; (hi - lo + 1) as usize];
        for &(k, c) in &self.numerator {
            poly[(k - lo) as usize] = c;
        }
        for _ in 0..(self.nvars as i32 - d) {
            let mut q = vec![0i64; poly.len() - 1];
            let mut carry = 0i64;
            for i in (1..poly.len()).rev() {
                carry += poly[i];
                q[i - 1] = carry;
            }
            poly = q;
        }
        poly.iter().sum()
    }
}

/// Hilbert series read off the minimal resolution over the polynomial ring:
/// `Σ_i (-1)^i Σ_{twists a of F_i} t^a`.
pub fn hilbert_series(m: &PresentedModule) -> HilbertSeries {
    let res = base_resolution(m);
    let mut num = Vec::new();
    for (i, f) in res.modules().iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        num.extend(f.twists().iter().map(|&a| (a, sign)));
    }
    HilbertSeries::new(num, m.ring().nvars())
}

/// Hilbert series from the lead terms of the relation Gröbner basis. Cheaper than the
/// resolution route and independent of it.
pub fn hilbert_series_from_leads(m: &PresentedModule) -> HilbertSeries {
    let n = m.ring().nvars();
    let mut per_pos: Vec<Vec<Monomial>> = vec![Vec::new(); m.rank()];
    for g in m.relation_gb() {
        let t = g.lead().expect("nonzero basis element");
        per_pos[t.pos as usize].push(t.mono);
    }
    let mut num = Vec::new();
    for (pos, gens) in per_pos.into_iter().enumerate() {
        let shift = m.twists()[pos];
        for (d, c) in monomial_numerator(gens) {
            num.push((d + shift, c));
        }
    }
    HilbertSeries::new(num, n)
}

fn minimalize_monomials(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `K(t)` of the Hilbert series of `Q/J` for a monomial ideal `J`, by the
/// recursion `K(J) = K(J') - t^{deg m} K(J' : m)` with `J = J' + (m)`.
pub(crate) fn monomial_numerator(gens: Vec<Monomial>) -> Vec<(i32, i64)> {
    let gens = minimalize_monomials(gens);
    let mut acc = Vec::new();
    numerator_rec(&gens, 0, 1, &mut acc);
    normalize(acc)
}

fn numerator_rec(gens: &[Monomial], shift: i32, sign: i64, acc: &mut Vec<(i32, i64)>) {
    if gens.is_empty() {
        acc.push((shift, sign));
        return;
    }
    // pairwise coprime generators: the numerator is a product of (1 - t^{deg})
    if gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)))
    {
        let mut prod: Vec<(i32, i64)> = vec![(0, 1)];
        for g in gens {
            let d = g.degree() as i32;
            let mut next = prod.clone();
            for &(e, c) in &prod {
                next.push((e + d, -c));
            }
            prod = next;
        }
        for (e, c) in prod {
            acc.push((e + shift, c * sign));
        }
        return;
    }
    let (last, rest) = gens.split_last().unwrap();
    numerator_rec(rest, shift, sign, acc);
    let colon: Vec<Monomial> = rest
        .iter()
        .map(|g| g.lcm(last).div(last).expect("lcm is divisible"))
        .collect();
    let colon = minimalize_monomials(colon);
    numerator_rec(&colon, shift + last.degree() as i32, -sign, acc);
}
