use serde::{Deserialize, Serialize};

use super::poly::{PolyRing, Polynomial};
use super::vector::{Term, Vector};
use crate::error::{Error, Result};

/// A graded free module `⊕ S(-a_i)`, recorded by its generator degrees `a_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeModule {
    twists: Vec<i32>,
}

impl FreeModule {
    pub fn new(twists: Vec<i32>) -> Self {
        FreeModule { twists }
    }

    pub fn zero() -> Self {
        FreeModule { twists: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i32] {
        &self.twists
    }

    pub fn twist(&self, i: usize) -> i32 {
        self.twists[i]
    }

    pub fn dual(&self) -> FreeModule {
        FreeModule::new(self.twists.iter().map(|t| -t).collect())
    }

    pub fn shifted(&self, by: i32) -> FreeModule {
        FreeModule::new(self.twists.iter().map(|t| t + by).collect())
    }

    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let mut t = self.twists.clone();
        t.extend_from_slice(&other.twists);
        FreeModule::new(t)
    }
}

/// A degree-preserving map between graded free modules, stored column by column: column
/// `j` is the image of the `j`-th source generator, an element of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    source: FreeModule,
    target: FreeModule,
    columns: Vec<Vector>,
}

impl GradedMatrix {
    pub fn new(source: FreeModule, target: FreeModule, columns: Vec<Vector>) -> Result<Self> {
        let m = GradedMatrix {
            source,
            target,
            columns,
        };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: FreeModule, target: FreeModule, columns: Vec<Vector>) -> Self {
        let m = GradedMatrix {
            source,
            target,
            columns,
        };
        debug_assert!(m.validate().is_ok(), "{:?}", m.validate());
        m
    }

    /// Entry-degree invariant: entry `(i, j)` is zero or homogeneous of degree
    /// `source_j - target_i`.
    pub fn validate(&self) -> Result<()> {
        if self.columns.len() != self.source.rank() {
            return Err(Error::ShapeMismatch(format!(
                "{} columns for a source of rank {}",
                self.columns.len(),
                self.source.rank()
            )));
        }
        for (j, col) in self.columns.iter().enumerate() {
            if let Some(p) = col.max_position() {
                if p >= self.target.rank() {
                    return Err(Error::ShapeMismatch(format!(
                        "column {j} has a component at position {p} beyond target rank {}",
                        self.target.rank()
                    )));
                }
            }
            if !col.is_zero()
                && (!col.is_homogeneous(self.target.twists())
                    || col.degree(self.target.twists()) != Some(self.source.twist(j)))
            {
                return Err(Error::Inhomogeneous(format!(
                    "column {j} is not homogeneous of degree {}",
                    self.source.twist(j)
                )));
            }
        }
        Ok(())
    }

    /// Builds a matrix from rows of polynomial entries.
    pub fn from_entries(
        ring: &PolyRing,
        source: FreeModule,
        target: FreeModule,
        rows: &[Vec<Polynomial>],
    ) -> Result<Self> {
        if rows.len() != target.rank() || rows.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::ShapeMismatch(format!(
                "expected a {}x{} entry array",
                target.rank(),
                source.rank()
            )));
        }
        let columns = (0..source.rank())
            .map(|j| {
                let comps: Vec<Polynomial> = rows.iter().map(|r| r[j].clone()).collect();
                ring.vector(&comps)
            })
            .collect();
        GradedMatrix::new(source, target, columns)
    }

    pub fn identity(ring: &PolyRing, module: &FreeModule) -> Self {
        let columns = (0..module.rank())
            .map(|i| Vector::unit(ring.nvars(), i))
            .collect();
        GradedMatrix {
            source: module.clone(),
            target: module.clone(),
            columns,
        }
    }

    pub fn zero(source: FreeModule, target: FreeModule) -> Self {
        let columns = vec![Vector::zero(); source.rank()];
        GradedMatrix {
            source,
            target,
            columns,
        }
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    pub fn column(&self, j: usize) -> &Vector {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<Vector> {
        self.columns
    }

    pub fn entry(&self, ring: &PolyRing, i: usize, j: usize) -> Polynomial {
        ring.component(&self.columns[j], i)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vector::is_zero)
    }

    /// The first `(row, col)` (lexicographically) holding a nonzero constant.
    pub fn unit_entry(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (j, col) in self.columns.iter().enumerate() {
            for t in col.terms() {
                if t.mono.is_one() {
                    let cand = (t.pos as usize, j);
                    if best.is_none_or(|b| cand < b) {
                        best = Some(cand);
                    }
                }
            }
        }
        best
    }

    /// Composition `self ∘ g`.
    pub fn compose(&self, ring: &PolyRing, g: &GradedMatrix) -> Result<GradedMatrix> {
        if g.target != self.source {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose: target of rank {} vs source of rank {}",
                g.target.rank(),
                self.source.rank()
            )));
        }
        let ar = ring.arith();
        let columns = g
            .columns
            .iter()
            .map(|col| {
                Vector::from_sorted(ar.linear_combination(
                    col.terms()
                        .iter()
                        .map(|t| (t.coef, t.mono, self.columns[t.pos as usize].terms())),
                ))
            })
            .collect();
        Ok(GradedMatrix::new_unchecked(
            g.source.clone(),
            self.target.clone(),
            columns,
        ))
    }

    /// The dual map `Hom(target, S) -> Hom(source, S)`.
    pub fn transpose(&self, ring: &PolyRing) -> GradedMatrix {
        let mut cols: Vec<Vec<Term>> = vec![Vec::new(); self.target.rank()];
        for (j, col) in self.columns.iter().enumerate() {
            for t in col.terms() {
                cols[t.pos as usize].push(Term {
                    coef: t.coef,
                    pos: j as u32,
                    mono: t.mono,
                });
            }
        }
        let columns = cols
            .into_iter()
            .map(|terms| Vector::from_terms(ring.field(), ring.term_order(), terms))
            .collect();
        GradedMatrix::new_unchecked(self.target.dual(), self.source.dual(), columns)
    }

    /// Selects a subset of columns.
    pub fn select_columns(&self, keep: &[usize]) -> GradedMatrix {
        let source = FreeModule::new(keep.iter().map(|&j| self.source.twist(j)).collect());
        let columns = keep.iter().map(|&j| self.columns[j].clone()).collect();
        GradedMatrix {
            source,
            target: self.target.clone(),
            columns,
        }
    }

    pub fn max_entry_degree(&self) -> Option<u32> {
        self.columns
            .iter()
            .flat_map(|c| c.terms().iter().map(|t| t.mono.degree()))
            .max()
    }
}
