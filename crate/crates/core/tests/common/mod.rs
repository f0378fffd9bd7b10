//! Brute-force reference computations shared by the integration tests. None
//! of these call into the library's linear algebra or fiber search.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use toric_syz::homology::BoundaryMatrix;
use toric_syz::{GeneratorMatrix, Monomial, SDegree, Semigroup};

pub fn semigroup(rows: &[&[i64]]) -> Semigroup {
    Semigroup::new(GeneratorMatrix::from_rows(rows).unwrap()).unwrap()
}

pub fn example_one() -> Semigroup {
    semigroup(&[&[4, 5, 7, 8], &[1, 1, 1, 1]])
}

pub fn numerical_two_three() -> Semigroup {
    semigroup(&[&[2, 3]])
}

pub fn mono(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

pub fn deg(m: &[i64]) -> SDegree {
    SDegree::from_i64s(m)
}

/// Columns of `rows` as `i64` vectors.
pub fn columns(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..rows[0].len()).map(|i| rows.iter().map(|r| r[i]).collect()).collect()
}

/// All `a` in the box `0 <= a_i <= bound_i` with `A a = m`.
pub fn boxed_fiber(cols: &[Vec<i64>], m: &[i64], bounds: &[u32]) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    let mut a = vec![0u32; cols.len()];
    loop {
        let sum: Vec<i64> = (0..m.len())
            .map(|k| cols.iter().zip(&a).map(|(c, &e)| c[k] * e as i64).sum())
            .collect();
        if sum == m {
            out.insert(a.clone());
        }
        let mut i = 0;
        loop {
            if i == a.len() {
                return out;
            }
            if a[i] < bounds[i] {
                a[i] += 1;
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

/// A nonzero `a >= 0` with `A a = 0` and every `a_i <= bound`, if one exists.
pub fn nonnegative_kernel_vector(cols: &[Vec<i64>], bound: u32) -> Option<Vec<u32>> {
    let d = cols[0].len();
    let all = boxed_fiber(cols, &vec![0; d], &vec![bound; cols.len()]);
    all.into_iter().find(|a| a.iter().any(|&e| e > 0))
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Rank over Q by plain row reduction.
pub fn dense_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for i in rank + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let factor = &rows[i][c] / &pivot;
            for k in c..ncols {
                let d = &factor * &rows[rank][k];
                rows[i][k] -= d;
            }
        }
        rank += 1;
    }
    rank
}

pub fn dense_boundary(b: &BoundaryMatrix) -> Vec<Vec<i64>> {
    (0..b.rows()).map(|r| (0..b.cols()).map(|c| b.entry(r, c)).collect()).collect()
}

/// Connected components of the graph on `vertices` joining two monomials
/// that share a variable; these are the components of `∇_m`.
pub fn components(vertices: &[Monomial]) -> Vec<usize> {
    let n = vertices.len();
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while c[r] != r {
            r = c[r];
        }
        c[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let share = vertices[i].exponents().iter().zip(vertices[j].exponents()).any(|(a, b)| *a > 0 && *b > 0);
            if share {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).map(|i| find(&mut comp, i)).collect()
}

/// `x^a` divides every monomial of every coefficient.
pub fn content_divides<'a>(a: &Monomial, monomials: impl IntoIterator<Item = &'a Monomial>) -> bool {
    monomials.into_iter().all(|m| a.divides(m))
}

/// Reduced Euler characteristic from face counts: `sum (-1)^j f_j` over
/// `j >= -1`.
pub fn reduced_euler(face_counts: &BTreeMap<isize, usize>) -> i64 {
    face_counts.iter().map(|(j, n)| if j.rem_euclid(2) == 0 { *n as i64 } else { -(*n as i64) }).sum()
}

pub fn identity_rows(n: usize) -> Vec<Vec<BigRational>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect()
}
