//! Betti tables over all degrees of bounded weight.

use num_rational::BigRational;

use super::engine::Engine;
use crate::complexes::build_delta;
use crate::field::Field;
use crate::homology::betti_reduced;
use crate::semigroup::SDegree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub degree: SDegree,
    pub weight: BigRational,
    /// Ranks of `H̃_j(∇_m)` for `j = 0..=jmax`.
    pub betti: Vec<usize>,
    /// The same ranks computed on `Δ_m`, when requested.
    pub delta: Option<Vec<usize>>,
    /// Rank of `H̃_{r-d}(∇_m)`.
    pub top: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub bound: BigRational,
    pub jmax: usize,
    /// `r - d` with `d` the rank of the group generated by `S`.
    pub top_dim: usize,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    /// Degrees where `H̃_{r-d}` is nonzero, each an obstruction to the
    /// Cohen–Macaulay property.
    pub fn obstructions(&self) -> Vec<&SDegree> {
        self.rows.iter().filter(|r| r.top > 0).map(|r| &r.degree).collect()
    }

    /// Degrees where the two complexes disagree.
    pub fn disagreements(&self) -> Vec<&SDegree> {
        self.rows
            .iter()
            .filter(|r| r.delta.as_ref().is_some_and(|d| *d != r.betti))
            .map(|r| &r.degree)
            .collect()
    }

    pub fn nonzero(&self, j: usize) -> Vec<&SDegree> {
        self.rows.iter().filter(|r| r.betti.get(j).is_some_and(|&b| b > 0)).map(|r| &r.degree).collect()
    }
}

impl<F: Field> Engine<F> {
    pub fn scan(&mut self, bound: &BigRational, jmax: usize, crosscheck: bool) -> ScanReport {
        let s = self.semigroup().clone();
        let top_dim = s.nvars() - s.matrix().rank();
        let f = self.field().clone();
        let rows = s
            .degrees_up_to(bound)
            .into_iter()
            .map(|m| {
                let betti: Vec<usize> = (0..=jmax).map(|j| self.multigraded_betti(&m, j)).collect();
                let delta = crosscheck.then(|| {
                    let d = build_delta(&s, &m);
                    (0..=jmax).map(|j| betti_reduced(&f, &d, j)).collect()
                });
                let top = self.multigraded_betti(&m, top_dim);
                ScanRow { weight: s.weight(&m), degree: m, betti, delta, top }
            })
            .collect();
        ScanReport { bound: bound.clone(), jmax, top_dim, rows }
    }
}
