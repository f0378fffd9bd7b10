//! Deterministic Gaussian elimination to the block form `A Q = P [I 0; 0 0]`.

use super::sparse::SparseVec;
use super::BoundaryMatrix;
use crate::field::Field;

/// Invertible `P` and `Q` with `A q_k = p_k` for `k < rank` and `A q_k = 0`
/// for `k >= rank`, where `p_k`, `q_k` are their columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction<E> {
    pub rank: usize,
    pub p: Vec<SparseVec<E>>,
    pub q: Vec<SparseVec<E>>,
}

impl<E: Clone> Reduction<E> {
    /// The last `d_j - r_j` columns of `Q`, a basis of the kernel.
    pub fn kernel(&self) -> &[SparseVec<E>] {
        &self.q[self.rank..]
    }

    /// The first `r_j` columns of `P`, a basis of the image.
    pub fn image(&self) -> &[SparseVec<E>] {
        &self.p[..self.rank]
    }
}

/// Pivots on the leftmost remaining column with a nonzero entry, taking the
/// topmost such row, then clears its column with row operations and its row
/// with column operations.
pub fn gauss_reduce<F: Field>(f: &F, a: &BoundaryMatrix) -> Reduction<F::Elem> {
    let (nrows, ncols) = (a.rows(), a.cols());
    // rows of the working matrix, keyed by original column
    let mut rows: Vec<SparseVec<F::Elem>> = vec![SparseVec::zero(); nrows];
    {
        let mut buckets: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); nrows];
        for (c, col) in a.columns().iter().enumerate() {
            for &(r, v) in col {
                buckets[r].push((c, f.from_int(v)));
            }
        }
        for (r, b) in buckets.into_iter().enumerate() {
            rows[r] = SparseVec::from_pairs(f, b);
        }
    }
    let mut p: Vec<SparseVec<F::Elem>> = (0..nrows).map(|i| SparseVec::unit(f, i)).collect();
    let mut q: Vec<SparseVec<F::Elem>> = (0..ncols).map(|i| SparseVec::unit(f, i)).collect();
    // pos[c] is the current position of original column c; at[k] the inverse
    let mut pos: Vec<usize> = (0..ncols).collect();
    let mut at: Vec<usize> = (0..ncols).collect();

    let mut t = 0;
    while t < nrows && t < ncols {
        let mut best: Option<(usize, usize, usize)> = None; // (position, row, original column)
        for (i, row) in rows.iter().enumerate().skip(t) {
            for (c, _) in row.entries() {
                let cand = (pos[*c], i, *c);
                if best.is_none_or(|b| (cand.0, cand.1) < (b.0, b.1)) {
                    best = Some(cand);
                }
            }
        }
        let Some((cpos, i, c)) = best else { break };

        rows.swap(i, t);
        p.swap(i, t);
        let other = at[t];
        at.swap(t, cpos);
        pos[c] = t;
        pos[other] = cpos;
        q.swap(t, cpos);

        let pivot = rows[t].get(c).expect("pivot entry").clone();
        let inv = f.inv(&pivot).expect("nonzero pivot");
        rows[t] = rows[t].scale(f, &inv);
        p[t] = p[t].scale(f, &pivot);

        for k in t + 1..nrows {
            let Some(coef) = rows[k].get(c).cloned() else { continue };
            rows[k] = rows[k].axpy(f, &f.neg(&coef), &rows[t]);
            p[t] = p[t].axpy(f, &coef, &p[k]);
        }

        let pivot_row = std::mem::take(&mut rows[t]);
        for (k, coef) in pivot_row.entries() {
            if *k == c {
                continue;
            }
            let kp = pos[*k];
            q[kp] = q[kp].axpy(f, &f.neg(coef), &q[t]);
        }
        rows[t] = SparseVec::unit(f, c);
        t += 1;
    }
    Reduction { rank: t, p, q }
}
