//! Dense linear algebra over GF(p) on graded pieces. Independent of Gröbner bases: a
//! graded piece of a module is spanned by monomial multiples of its relations.
#![allow(dead_code)]

use std::collections::HashMap;

use charmod::groebner::Ring;
use charmod::polyring::{Monomial, Vector};
use charmod::resolution::{FreeResolution, PresentedModule};

/// Rank of a list of sparse rows `(column, value)` over GF(p).
pub fn rank(p: u32, rows: Vec<HashMap<usize, u32>>) -> usize {
    let p = p as u64;
    let mut pivots: Vec<(usize, HashMap<usize, u64>)> = Vec::new();
    for row in rows {
        let mut r: HashMap<usize, u64> = row.into_iter().map(|(k, v)| (k, v as u64 % p)).filter(|e| e.1 != 0).collect();
        for (col, prow) in &pivots {
            if let Some(&c) = r.get(col) {
                // prow is normalized to 1 at col
                for (&k, &v) in prow {
                    let e = r.entry(k).or_insert(0);
                    *e = (*e + p - c * v % p) % p;
                }
                r.retain(|_, v| *v != 0);
            }
        }
        if let Some(&col) = r.keys().min() {
            let inv = pow(r[&col], p - 2, p);
            let norm = r.into_iter().map(|(k, v)| (k, v * inv % p)).collect();
            pivots.push((col, norm));
        }
    }
    pivots.len()
}

fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Basis `(position, monomial)` of the degree-`d` piece of `⊕ Q(-a_i)`.
pub fn free_piece(nvars: usize, twists: &[i32], d: i32) -> Vec<(u32, Monomial)> {
    let mut out = Vec::new();
    for (i, &a) in twists.iter().enumerate() {
        if d - a >= 0 {
            for m in Monomial::all_of_degree(nvars, (d - a) as u32) {
                out.push((i as u32, m));
            }
        }
    }
    out
}

fn index(piece: &[(u32, Monomial)]) -> HashMap<(u32, Monomial), usize> {
    piece.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect()
}

/// Degree-`d` multiples of homogeneous `gens` in `⊕ Q(-a_i)`, as dense rows.
fn multiples(nvars: usize, twists: &[i32], gens: &[Vector], d: i32, idx: &HashMap<(u32, Monomial), usize>) -> Vec<HashMap<usize, u32>> {
    let mut rows = Vec::new();
    for g in gens {
        let Some(dg) = g.degree(twists) else { continue };
        if d < dg {
            continue;
        }
        for m in Monomial::all_of_degree(nvars, (d - dg) as u32) {
            let row = g
                .terms()
                .iter()
                .map(|t| (idx[&(t.pos, t.mono.mul(&m))], t.coef))
                .collect();
            rows.push(row);
        }
    }
    rows
}

/// `I · F` for the free module with these twists.
fn ideal_times_free(ring: &Ring, twists: &[i32]) -> Vec<Vector> {
    let poly = ring.poly();
    let mut out = Vec::new();
    for f in ring.ideal().generators() {
        for j in 0..twists.len() {
            out.push(poly.embed(f, j));
        }
    }
    out
}

/// `dim_k (F / (relations + I F))_d` by dense elimination.
pub fn hilbert_value(m: &PresentedModule, d: i32) -> usize {
    let ring = m.ring();
    let n = ring.nvars();
    let piece = free_piece(n, m.twists(), d);
    let idx = index(&piece);
    let mut gens = m.relations().to_vec();
    gens.extend(ideal_times_free(ring, m.twists()));
    let r = rank(ring.poly().field().modulus(), multiples(n, m.twists(), &gens, d, &idx));
    piece.len() - r
}

/// `dim ker(∂_i) - dim im(∂_{i+1})` in degree `d` on `F_i ⊗ R`, where `∂_i : F_i -> F_{i-1}`
/// and `∂_0` is the augmentation onto the presented module. Zero iff the complex is exact there.
pub fn homology_dimension(res: &FreeResolution, i: usize, d: i32) -> i64 {
    let ring = res.ring();
    let n = ring.nvars();
    let p = ring.poly().field().modulus();
    let f_i = res.module(i);
    let piece_i = free_piece(n, f_i.twists(), d);
    let idx_i = index(&piece_i);
    let i_fi = multiples(n, f_i.twists(), &ideal_times_free(ring, f_i.twists()), d, &idx_i);
    let rank_ifi = rank(p, i_fi.clone());
    let dim_vi = piece_i.len() - rank_ifi;
    // rank of ∂_i on V_i = F_i / I F_i
    let rank_out = if i == 0 {
        // the augmentation onto M = F_0 / (relations + I F_0) is surjective
        hilbert_value(&res.cokernel(), d)
    } else {
        let f_prev = res.module(i - 1);
        let piece_p = free_piece(n, f_prev.twists(), d);
        let idx_p = index(&piece_p);
        let i_fp = multiples(n, f_prev.twists(), &ideal_times_free(ring, f_prev.twists()), d, &idx_p);
        let cols = res.differential(i).expect("differential").columns().to_vec();
        let mut rows = i_fp.clone();
        rows.extend(multiples(n, f_prev.twists(), &cols, d, &idx_p));
        rank(p, rows) - rank(p, i_fp)
    };
    let ker = dim_vi - rank_out;
    let im = match res.differential(i + 1) {
        Some(next) => {
            let mut rows = i_fi.clone();
            rows.extend(multiples(n, f_i.twists(), next.columns(), d, &idx_i));
            rank(p, rows) - rank_ifi
        }
        None => 0,
    };
    ker as i64 - im as i64
}
