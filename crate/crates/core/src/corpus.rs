//! Seeded random instances: a ring `Q/I` and a random module `M` over it.
//!
//! Bounds: at most 4 variables, generators of degree at most 3, at most 5 of them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cmr::{document, InputDocument};
use crate::error::{Error, Result};
use crate::groebner::{QuotientRing, Ring};
use crate::polyring::{FreeModule, Monomial, PolyRing, Polynomial};
use crate::resolution::PresentedModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    Monomial,
    Binomial,
    Ci,
    Mixed,
}

impl std::str::FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monomial" => Ok(Profile::Monomial),
            "binomial" => Ok(Profile::Binomial),
            "ci" => Ok(Profile::Ci),
            "mixed" => Ok(Profile::Mixed),
            other => Err(Error::UnknownCommand(format!("corpus profile `{other}`"))),
        }
    }
}

/// Which generator produced an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Squarefree monomial ideal of two disjoint coordinate subspaces.
    SplitStanleyReisner,
    RandomMonomial,
    Binomial,
    CompleteIntersection,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub id: usize,
    pub family: Family,
    pub ring: Ring,
    /// The random module `M`.
    pub module: PresentedModule,
}

impl Instance {
    pub fn document(&self) -> InputDocument {
        document(&self.ring, &[("M", &self.module)])
    }
}

const VARS: [&str; 4] = ["x", "y", "z", "w"];
const MAX_GENS: usize = 5;

/// Deterministic instances for `(seed, count, profile)`. Instance `i` depends only on
/// `seed`, `i` and `profile`.
pub fn generate_corpus(seed: u64, count: usize, profile: Profile) -> Vec<Instance> {
    (0..count).map(|i| generate_instance(seed, i, profile)).collect()
}

pub fn generate_instance(seed: u64, id: usize, profile: Profile) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id as u64);
    loop {
        let family = match profile {
            Profile::Monomial => {
                if rng.gen_bool(0.5) {
                    Family::SplitStanleyReisner
                } else {
                    Family::RandomMonomial
                }
            }
            Profile::Binomial => Family::Binomial,
            Profile::Ci => Family::CompleteIntersection,
            // tuned so that at least a fifth of the instances are not Cohen-Macaulay
            Profile::Mixed => match rng.gen_range(0..10) {
                0..=2 => Family::SplitStanleyReisner,
                3..=4 => Family::RandomMonomial,
                5..=6 => Family::Binomial,
                _ => Family::CompleteIntersection,
            },
        };
        let n = match family {
            Family::SplitStanleyReisner => rng.gen_range(3..=4),
            _ => rng.gen_range(2..=4),
        };
        let poly = PolyRing::with_vars(32003, &VARS[..n]).expect("valid ring");
        let gens = match family {
            Family::SplitStanleyReisner => split_stanley_reisner(&poly, &mut rng),
            Family::RandomMonomial => random_monomials(&poly, &mut rng),
            Family::Binomial => random_binomials(&poly, &mut rng),
            Family::CompleteIntersection => complete_intersection(&poly, &mut rng),
        };
        let Ok(ring) = QuotientRing::new(poly, gens) else {
            continue;
        };
        if ring.is_polynomial() {
            continue;
        }
        let module = random_module(&ring, &mut rng);
        return Instance {
            id,
            family,
            ring,
            module,
        };
    }
}

fn var_monomial(n: usize, exps: &[(usize, u32)]) -> Monomial {
    let mut e = vec![0u32; n];
    for &(i, k) in exps {
        e[i] += k;
    }
    Monomial::from_exponents(&e).expect("small exponents")
}

fn random_monomial(n: usize, degree: u32, rng: &mut ChaCha8Rng) -> Monomial {
    let exps: Vec<(usize, u32)> = (0..degree).map(|_| (rng.gen_range(0..n), 1)).collect();
    var_monomial(n, &exps)
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> i64 {
    let c = rng.gen_range(1..=9);
    if rng.gen_bool(0.5) {
        c
    } else {
        -c
    }
}

/// `(A) ∩ (B)` for a partition `A ⊔ B` of the variables, generated by the products `a * b`.
/// The depth is 1 and the dimension is the size of the larger part, so the ring is not
/// Cohen-Macaulay once that part has two or more variables.
fn split_stanley_reisner(poly: &PolyRing, rng: &mut ChaCha8Rng) -> Vec<Polynomial> {
    let n = poly.nvars();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let cut = rng.gen_range(1..n);
    let (a, b) = idx.split_at(cut);
    let mut gens = Vec::new();
    for &i in a {
        for &j in b {
            gens.push(poly.monomial(1, var_monomial(n, &[(i, 1), (j, 1)])));
        }
    }
    gens.truncate(MAX_GENS);
    gens
}

fn random_monomials(poly: &PolyRing, rng: &mut ChaCha8Rng) -> Vec<Polynomial> {
    let n = poly.nvars();
    let count = rng.gen_range(1..=MAX_GENS.min(n + 1));
    (0..count)
        .map(|_| {
            let d = rng.gen_range(2..=3);
            poly.monomial(1, random_monomial(n, d, rng))
        })
        .collect()
}

fn random_binomials(poly: &PolyRing, rng: &mut ChaCha8Rng) -> Vec<Polynomial> {
    let n = poly.nvars();
    let count = rng.gen_range(1..=3.min(n));
    (0..count)
        .map(|_| {
            let d = rng.gen_range(2..=3);
            let a = random_monomial(n, d, rng);
            let b = random_monomial(n, d, rng);
            poly.from_terms(vec![(1, a), (-1, b)])
        })
        .filter(|p| !p.is_zero())
        .collect()
}

/// `x_i^{d_i} + g_i(x_{i+1}, ..., x_n)` for `i < c`. Modulo the last `n - c` variables the
/// system is triangular with an artinian quotient, so the forms are a regular sequence.
fn complete_intersection(poly: &PolyRing, rng: &mut ChaCha8Rng) -> Vec<Polynomial> {
    let n = poly.nvars();
    let c = rng.gen_range(1..=(n - 1).max(1));
    (0..c)
        .map(|i| {
            let d = rng.gen_range(2..=3);
            let mut terms = vec![(1i64, var_monomial(n, &[(i, d)]))];
            if i + 1 < n && rng.gen_bool(0.7) {
                let later: Vec<(usize, u32)> = (0..d).map(|_| (rng.gen_range(i + 1..n), 1)).collect();
                terms.push((random_coefficient(rng), var_monomial(n, &later)));
            }
            if i + 1 < n && rng.gen_bool(0.5) {
                // a mixed term x_i * (later) keeps the leading power in place
                let j = rng.gen_range(i + 1..n);
                terms.push((random_coefficient(rng), var_monomial(n, &[(i, d - 1), (j, 1)])));
            }
            poly.from_terms(terms)
        })
        .collect()
}

/// A cyclic module `R/J` with `J` generated by one or two forms, or a module on two
/// generators with one linear relation.
fn random_module(ring: &Ring, rng: &mut ChaCha8Rng) -> PresentedModule {
    let poly = ring.poly();
    let n = poly.nvars();
    let linear = |rng: &mut ChaCha8Rng| {
        let k = rng.gen_range(1..=2);
        let terms = (0..k)
            .map(|_| (random_coefficient(rng), var_monomial(n, &[(rng.gen_range(0..n), 1)])))
            .collect();
        poly.from_terms(terms)
    };
    if rng.gen_bool(0.6) {
        let count = rng.gen_range(1..=2);
        let mut gens = Vec::new();
        for _ in 0..count {
            let f = if rng.gen_bool(0.7) {
                linear(rng)
            } else {
                poly.monomial(1, random_monomial(n, 2, rng))
            };
            if !f.is_zero() {
                gens.push(f);
            }
        }
        PresentedModule::cyclic(ring, &gens).expect("homogeneous generators")
    } else {
        let mut row = vec![linear(rng), linear(rng)];
        if row.iter().all(|p| p.is_zero()) {
            row[0] = poly.var(0);
        }
        let rel = poly.vector(&row);
        PresentedModule::new(ring, FreeModule::new(vec![0, 0]), vec![rel]).expect("linear relation")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmr::{parse, print};

    #[test]
    fn deterministic() {
        let a = generate_corpus(42, 3, Profile::Mixed);
        let b = generate_corpus(42, 3, Profile::Mixed);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(print(&x.document()), print(&y.document()));
        }
        let one = generate_corpus(42, 1, Profile::Monomial);
        assert_eq!(print(&one[0].document()), print(&generate_instance(42, 0, Profile::Monomial).document()));
    }

    #[test]
    fn bounds_and_round_trip() {
        for inst in generate_corpus(5, 20, Profile::Mixed) {
            let d = inst.document();
            assert!(d.poly.nvars() <= 4);
            assert!(!d.ideal.is_empty() && d.ideal.len() <= MAX_GENS);
            assert!(d.ideal.iter().all(|f| f.degree().unwrap() <= 3));
            assert_eq!(print(&parse(&print(&d)).unwrap()), print(&d));
        }
    }
}
