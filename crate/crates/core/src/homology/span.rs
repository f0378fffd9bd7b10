use std::collections::BTreeMap;

use super::sparse::SparseVec;
use crate::field::Field;

/// Incremental row echelon form that remembers how each stored row was built
/// from the inserted vectors, so membership queries return coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpanSolver<E> {
    // pivot -> (row with leading entry 1 at pivot, combination of inserted vectors)
    rows: BTreeMap<usize, (SparseVec<E>, SparseVec<E>)>,
    len: usize,
}

impl<E: Clone> SpanSolver<E> {
    pub fn new() -> Self {
        SpanSolver { rows: BTreeMap::new(), len: 0 }
    }

    /// Number of independent vectors inserted so far.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &SparseVec<E>) -> (SparseVec<E>, SparseVec<E>) {
        let mut rest = v.clone();
        let mut coeffs = SparseVec::zero();
        while let Some((p, x)) = rest.lead().cloned() {
            let Some((row, combo)) = self.rows.get(&p) else { break };
            rest = rest.axpy(f, &f.neg(&x), row);
            coeffs = coeffs.axpy(f, &x, combo);
        }
        (rest, coeffs)
    }

    /// Adds `v` if it is independent of the current span and returns its index.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: &SparseVec<E>) -> Option<usize> {
        let (rest, coeffs) = self.reduce(f, v);
        let (p, x) = rest.lead().cloned()?;
        let s = f.inv(&x).expect("nonzero lead");
        let idx = self.len;
        let combo = SparseVec::unit(f, idx).axpy(f, &f.neg(&f.one()), &coeffs).scale(f, &s);
        self.rows.insert(p, (rest.scale(f, &s), combo));
        self.len += 1;
        Some(idx)
    }

    /// Coordinates of `v` in the inserted vectors, or `None` outside the span.
    pub fn express<F: Field<Elem = E>>(&self, f: &F, v: &SparseVec<E>) -> Option<SparseVec<E>> {
        let (rest, coeffs) = self.reduce(f, v);
        rest.is_zero().then_some(coeffs)
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &SparseVec<E>) -> bool {
        self.reduce(f, v).0.is_zero()
    }
}
