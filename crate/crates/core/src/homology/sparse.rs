use crate::field::Field;

/// A sparse vector as `(index, value)` pairs with strictly increasing indices
/// and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec<E>(Vec<(usize, E)>);

impl<E> Default for SparseVec<E> {
    fn default() -> Self {
        SparseVec(Vec::new())
    }
}

impl<E: Clone> SparseVec<E> {
    pub fn zero() -> Self {
        SparseVec(Vec::new())
    }

    /// Builds a vector from arbitrary pairs, summing repeated indices.
    pub fn from_pairs<F: Field<Elem = E>>(f: &F, pairs: impl IntoIterator<Item = (usize, E)>) -> Self {
        let mut v: Vec<(usize, E)> = pairs.into_iter().collect();
        v.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, E)> = Vec::with_capacity(v.len());
        for (i, x) in v {
            match out.last_mut() {
                Some((j, y)) if *j == i => *y = f.add(y, &x),
                _ => out.push((i, x)),
            }
        }
        out.retain(|(_, x)| !f.is_zero(x));
        SparseVec(out)
    }

    pub fn unit<F: Field<Elem = E>>(f: &F, i: usize) -> Self {
        SparseVec(vec![(i, f.one())])
    }

    pub fn entries(&self) -> &[(usize, E)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> Option<&E> {
        self.0.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &self.0[k].1)
    }

    pub fn lead(&self) -> Option<&(usize, E)> {
        self.0.first()
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, a: &E) -> Self {
        if f.is_zero(a) {
            return SparseVec::zero();
        }
        SparseVec(self.0.iter().map(|(i, x)| (*i, f.mul(a, x))).collect())
    }

    /// `self + a * other`.
    pub fn axpy<F: Field<Elem = E>>(&self, f: &F, a: &E, other: &Self) -> Self {
        if f.is_zero(a) {
            return self.clone();
        }
        let (x, y) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut p, mut q) = (0, 0);
        while p < x.len() || q < y.len() {
            if q == y.len() || (p < x.len() && x[p].0 < y[q].0) {
                out.push(x[p].clone());
                p += 1;
            } else if p == x.len() || y[q].0 < x[p].0 {
                out.push((y[q].0, f.mul(a, &y[q].1)));
                q += 1;
            } else {
                let s = f.add(&x[p].1, &f.mul(a, &y[q].1));
                if !f.is_zero(&s) {
                    out.push((x[p].0, s));
                }
                p += 1;
                q += 1;
            }
        }
        SparseVec(out)
    }

    pub fn map_indices(&self, mut g: impl FnMut(usize) -> usize) -> Vec<(usize, E)> {
        self.0.iter().map(|(i, x)| (g(*i), x.clone())).collect()
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, f: &F, len: usize) -> Vec<E> {
        let mut out = vec![f.zero(); len];
        for (i, x) in &self.0 {
            out[*i] = x.clone();
        }
        out
    }
}
