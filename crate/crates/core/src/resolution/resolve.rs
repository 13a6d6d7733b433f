use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{degrees, Ring};
use crate::polyring::{FreeModule, GradedMatrix, Term, Vector};

use super::module::PresentedModule;

/// Default truncation for resolutions over a non-regular ring.
pub const DEFAULT_MAX_STEPS: usize = 6;

/// A complex of graded free modules `... -> F_2 -> F_1 -> F_0`, usually a resolution.
/// `maps[i]` is the differential `F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: Ring,
    modules: Vec<FreeModule>,
    maps: Vec<GradedMatrix>,
    minimal: bool,
    complete: bool,
}

impl FreeResolution {
    /// Wraps an arbitrary complex of free modules. Fails when consecutive maps do not
    /// compose to zero modulo the ring's ideal.
    pub fn from_maps(ring: &Ring, f0: FreeModule, maps: Vec<GradedMatrix>) -> Result<Self> {
        let mut modules = vec![f0];
        for m in &maps {
            m.validate()?;
            if m.target() != modules.last().unwrap() {
                return Err(Error::ShapeMismatch("differentials do not chain".into()));
            }
            modules.push(m.source().clone());
        }
        for w in maps.windows(2) {
            let c = w[0].compose(ring.poly(), &w[1])?;
            if c.columns().iter().any(|v| !ring.reduce_mod_ideal(v).is_zero()) {
                return Err(Error::ShapeMismatch("differentials do not compose to zero".into()));
            }
        }
        let minimal = maps.iter().all(|m| m.unit_entry().is_none());
        Ok(FreeResolution {
            ring: ring.clone(),
            modules,
            maps,
            minimal,
            complete: true,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// `F_0, F_1, ...`; trailing zero modules are not stored.
    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    pub fn module(&self, i: usize) -> FreeModule {
        self.modules.get(i).cloned().unwrap_or_default()
    }

    pub fn maps(&self) -> &[GradedMatrix] {
        &self.maps
    }

    /// The differential `F_i -> F_{i-1}`, for `i >= 1`.
    pub fn differential(&self, i: usize) -> Option<&GradedMatrix> {
        i.checked_sub(1).and_then(|j| self.maps.get(j))
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }

    /// Index of the last nonzero module, or `None` for a resolution of the zero module.
    pub fn length(&self) -> Option<usize> {
        self.modules.iter().rposition(|m| m.rank() > 0)
    }

    /// The module resolved: `coker(F_1 -> F_0)`.
    pub fn cokernel(&self) -> PresentedModule {
        match self.maps.first() {
            Some(d) => PresentedModule::new_unchecked(&self.ring, d.target().clone(), d.columns().to_vec()),
            None => PresentedModule::free(&self.ring, self.module(0).twists().to_vec()),
        }
    }

    /// Removes trailing zero modules.
    fn trim(&mut self) {
        while self.modules.len() > 1 && self.modules.last().is_some_and(|m| m.rank() == 0) {
            self.modules.pop();
            self.maps.pop();
        }
    }
}

/// Minimal graded free resolution of `m`, computed to homological degree `max_steps`.
/// Over a polynomial ring `max_steps = None` runs to completion (Hilbert's syzygy theorem
/// bounds the length by the number of variables).
pub fn resolve(m: &PresentedModule, max_steps: Option<usize>) -> Result<FreeResolution> {
    let ring = m.ring().clone();
    if max_steps.is_none() && !ring.is_polynomial() {
        return Err(Error::NonRegularBase);
    }
    let limit = max_steps.unwrap_or(usize::MAX);
    let pres = m.minimize();
    let mut modules = vec![pres.ambient().clone()];
    let mut maps = Vec::new();
    let mut gens: Vec<Vector> = pres.relations().to_vec();
    let mut complete = false;
    loop {
        if gens.is_empty() {
            complete = true;
            break;
        }
        let prev = modules.last().unwrap().clone();
        let tw = degrees(&gens, prev.twists());
        let src = FreeModule::new(tw.clone());
        if maps.len() >= limit {
            break;
        }
        maps.push(GradedMatrix::new_unchecked(src.clone(), prev.clone(), gens.clone()));
        modules.push(src);
        let kernel = ring
            .elimination(prev.twists(), &gens, &tw, &[], &[])
            .preimage();
        let (keep, _) = ring.minimal_generators(&tw, &[], &kernel);
        gens = keep
            .iter()
            .map(|&i| ring.reduce_mod_ideal(&kernel[i]))
            .collect();
    }
    let mut res = FreeResolution {
        ring,
        modules,
        maps,
        minimal: true,
        complete,
    };
    res.trim();
    Ok(res)
}

/// Cached minimal resolution of a module over the polynomial ring `Q` (the module is
/// first viewed over `Q`).
pub fn base_resolution(m: &PresentedModule) -> Arc<FreeResolution> {
    m.base_resolution
        .get_or_init(|| {
            Arc::new(resolve(&m.over_base(), None).expect("resolutions over Q terminate"))
        })
        .clone()
}

/// Gaussian cancellation of unit entries until no differential has one. Pivots are taken
/// in increasing homological degree, smallest `(row, column)` first.
pub fn minimalize(res: &FreeResolution) -> FreeResolution {
    let ring = res.ring.clone();
    let poly = ring.poly();
    let ar = poly.arith();
    let mut modules = res.modules.clone();
    let mut cols: Vec<Vec<Vector>> = res.maps.iter().map(|m| m.columns().to_vec()).collect();

    'outer: loop {
        for i in 0..cols.len() {
            let m = GradedMatrix::new_unchecked(modules[i + 1].clone(), modules[i].clone(), cols[i].clone());
            let Some((r, c)) = m.unit_entry() else {
                continue;
            };
            let pivot_col = cols[i][c].clone();
            let u = pivot_col
                .terms()
                .iter()
                .find(|t| t.pos as usize == r && t.mono.is_one())
                .map(|t| t.coef)
                .expect("unit entry");
            let uinv = poly.field().inv(u);
            // D' = D - C u^{-1} E on the remaining columns
            let mut new_cols = Vec::with_capacity(cols[i].len() - 1);
            for (q, col) in cols[i].iter().enumerate() {
                if q == c {
                    continue;
                }
                let e: Vec<Term> = col.terms().iter().filter(|t| t.pos as usize == r).copied().collect();
                let mut acc = col.terms().to_vec();
                for t in e {
                    acc = ar.sub_mul(&acc, poly.field().mul(t.coef, uinv), &t.mono, pivot_col.terms());
                }
                let v = ring.reduce_mod_ideal(&drop_position(&Vector::from_sorted(acc), r));
                new_cols.push(v);
            }
            cols[i] = new_cols;
            // drop row c of the next differential
            if i + 1 < cols.len() {
                cols[i + 1] = cols[i + 1].iter().map(|v| drop_position(v, c)).collect();
            }
            // drop column r of the previous differential
            if i > 0 {
                cols[i - 1].remove(r);
            }
            modules[i] = remove_twist(&modules[i], r);
            modules[i + 1] = remove_twist(&modules[i + 1], c);
            continue 'outer;
        }
        break;
    }
    let maps = cols
        .into_iter()
        .enumerate()
        .map(|(i, c)| GradedMatrix::new_unchecked(modules[i + 1].clone(), modules[i].clone(), c))
        .collect();
    let mut out = FreeResolution {
        ring,
        modules,
        maps,
        minimal: true,
        complete: res.complete,
    };
    out.trim();
    out
}

fn remove_twist(m: &FreeModule, i: usize) -> FreeModule {
    let mut t = m.twists().to_vec();
    t.remove(i);
    FreeModule::new(t)
}

/// Deletes the component at `pos` and renumbers the later positions.
fn drop_position(v: &Vector, pos: usize) -> Vector {
    let p = pos as u32;
    Vector::from_sorted(
        v.terms()
            .iter()
            .filter(|t| t.pos != p)
            .map(|t| Term {
                pos: if t.pos > p { t.pos - 1 } else { t.pos },
                ..*t
            })
            .collect(),
    )
}

/// Graded Betti numbers `β_{i,j}` of a minimal resolution.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    entries: Vec<(usize, i32, usize)>,
}

impl BettiTable {
    /// Nonzero entries `(i, j, β_{i,j})`, sorted by `i` then `j`.
    pub fn entries(&self) -> &[(usize, i32, usize)] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: i32) -> usize {
        self.entries
            .iter()
            .find(|e| e.0 == i && e.1 == j)
            .map_or(0, |e| e.2)
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|e| e.0 == i).map(|e| e.2).sum()
    }

    /// Total Betti numbers `β_0, β_1, ...` up to the last nonzero one.
    pub fn totals(&self) -> Vec<usize> {
        let n = self.entries.iter().map(|e| e.0 + 1).max().unwrap_or(0);
        (0..n).map(|i| self.total(i)).collect()
    }

    /// Restriction to homological degrees `<= max`.
    pub fn truncated(&self, max: usize) -> BettiTable {
        BettiTable {
            entries: self.entries.iter().copied().filter(|e| e.0 <= max).collect(),
        }
    }
}

pub fn betti(res: &FreeResolution) -> Result<BettiTable> {
    if !res.minimal || res.maps.iter().any(|m| m.unit_entry().is_some()) {
        return Err(Error::NonMinimal);
    }
    let mut entries = Vec::new();
    for (i, m) in res.modules.iter().enumerate() {
        let mut tw = m.twists().to_vec();
        tw.sort_unstable();
        let mut k = 0;
        while k < tw.len() {
            let j = tw[k];
            let cnt = tw[k..].iter().take_while(|&&x| x == j).count();
            entries.push((i, j, cnt));
            k += cnt;
        }
    }
    Ok(BettiTable { entries })
}

impl FreeResolution {
    /// Marks a hand-built complex as not minimal so [`betti`] rejects it.
    pub fn with_minimal_flag(mut self, minimal: bool) -> Self {
        self.minimal = minimal && self.maps.iter().all(|m| m.unit_entry().is_none());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::QuotientRing;
    use crate::polyring::{PolyRing, Polynomial};

    fn e2() -> Ring {
        let r = PolyRing::with_vars(32003, &["x", "y"]).unwrap();
        let (x, y) = (r.var(0), r.var(1));
        QuotientRing::new(r.clone(), vec![r.mul(&x, &x).unwrap(), r.mul(&x, &y).unwrap()]).unwrap()
    }

    fn veronese() -> Ring {
        let r = PolyRing::with_vars(32003, &["w", "x", "y", "z"]).unwrap();
        let (w, x, y, z) = (r.var(0), r.var(1), r.var(2), r.var(3));
        let m = |a: &Polynomial, b: &Polynomial| r.mul(a, b).unwrap();
        let gens = vec![
            r.sub(&m(&x, &x), &m(&y, &w)).unwrap(),
            r.sub(&m(&y, &y), &m(&x, &z)).unwrap(),
            r.sub(&m(&x, &y), &m(&w, &z)).unwrap(),
        ];
        QuotientRing::new(r, gens).unwrap()
    }

    #[test]
    fn e2_ring_resolution() {
        let ring = e2();
        let res = crate::resolution::ring_resolution(&ring);
        assert!(res.is_complete() && res.is_minimal());
        assert_eq!(res.ranks(), vec![1, 2, 1]);
        assert_eq!(res.module(1).twists(), &[2, 2]);
        assert_eq!(res.module(2).twists(), &[3]);
        assert_eq!(res.length(), Some(2));
        let c = res.maps()[0].compose(ring.poly(), &res.maps()[1]).unwrap();
        assert!(c.is_zero());
        let b = betti(&res).unwrap();
        assert_eq!(b.totals(), vec![1, 2, 1]);
        assert_eq!(b.get(1, 2), 2);
    }

    #[test]
    fn veronese_ring_resolution() {
        let ring = veronese();
        let res = crate::resolution::ring_resolution(&ring);
        assert_eq!(res.ranks(), vec![1, 3, 2]);
        assert_eq!(res.module(1).twists(), &[2, 2, 2]);
        assert_eq!(res.module(2).twists(), &[3, 3]);
        // Hilbert-Burch: the second differential has linear entries
        assert!(res.maps()[1]
            .columns()
            .iter()
            .all(|c| c.terms().iter().all(|t| t.mono.degree() == 1)));
    }

    #[test]
    fn free_modules_resolve_trivially() {
        let ring = QuotientRing::polynomial(PolyRing::with_vars(32003, &["x", "y"]).unwrap());
        let res = resolve(&PresentedModule::ring_module(&ring), None).unwrap();
        assert_eq!(res.ranks(), vec![1]);
        assert_eq!(res.length(), Some(0));
        let f = resolve(&PresentedModule::free(&ring, vec![0, 1, 1]), None).unwrap();
        assert_eq!(betti(&f).unwrap().totals(), vec![3]);
    }

    #[test]
    fn unbounded_resolution_over_quotient_is_rejected() {
        let ring = e2();
        let k = PresentedModule::residue_field(&ring);
        assert!(matches!(resolve(&k, None), Err(Error::NonRegularBase)));
        let res = resolve(&k, Some(3)).unwrap();
        assert!(!res.is_complete());
        assert_eq!(res.maps().len(), 3);
    }

    #[test]
    fn minimalize_cancels_trivial_complex() {
        let q = QuotientRing::polynomial(PolyRing::with_vars(32003, &["x"]).unwrap());
        let poly = q.poly();
        let one = GradedMatrix::from_entries(
            poly,
            FreeModule::new(vec![0]),
            FreeModule::new(vec![0]),
            &[vec![poly.one()]],
        )
        .unwrap();
        let cx = FreeResolution::from_maps(&q, FreeModule::new(vec![0]), vec![one]).unwrap();
        assert!(!cx.is_minimal());
        assert!(matches!(betti(&cx), Err(Error::NonMinimal)));
        let m = minimalize(&cx);
        assert_eq!(m.ranks(), vec![0]);
        assert_eq!(m.length(), None);
    }

    #[test]
    fn minimalize_taylor_complex_with_redundancy() {
        // Taylor complex of (x^2, xy) plus a cancelling pair in homological degrees 1, 2
        let q = QuotientRing::polynomial(PolyRing::with_vars(32003, &["x", "y"]).unwrap());
        let p = q.poly();
        let (x, y) = (p.var(0), p.var(1));
        let x2 = p.mul(&x, &x).unwrap();
        let xy = p.mul(&x, &y).unwrap();
        let d1 = GradedMatrix::from_entries(
            p,
            FreeModule::new(vec![2, 2, 3]),
            FreeModule::new(vec![0]),
            &[vec![x2.clone(), xy.clone(), p.mul(&x2, &y).unwrap()]],
        )
        .unwrap();
        let d2 = GradedMatrix::from_entries(
            p,
            FreeModule::new(vec![3, 3]),
            FreeModule::new(vec![2, 2, 3]),
            &[
                vec![y.clone(), y.clone()],
                vec![p.neg(&x), p.zero()],
                vec![p.zero(), p.constant(-1)],
            ],
        )
        .unwrap();
        let cx = FreeResolution::from_maps(&q, FreeModule::new(vec![0]), vec![d1, d2]).unwrap();
        let m = minimalize(&cx);
        assert_eq!(m.ranks(), vec![1, 2, 1]);
        assert!(m.is_minimal());
        let c = m.maps()[0].compose(p, &m.maps()[1]).unwrap();
        assert!(c.is_zero());
        let direct = crate::resolution::ring_resolution(&e2());
        assert_eq!(betti(&m).unwrap(), betti(&direct).unwrap());
    }
}
