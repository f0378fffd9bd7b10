//! Finitely generated semigroups `S = N n_1 + ... + N n_r` inside `Z^d`.

mod fiber;
mod grading;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, TermOrder};

pub use grading::{validate_presentation, PositiveGrading};

/// A point of `Z^d`; the S-degree of a monomial or a syzygy.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SDegree(Vec<BigInt>);

impl SDegree {
    pub fn new(coords: Vec<BigInt>) -> Self {
        SDegree(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        SDegree(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        SDegree(vec![BigInt::zero(); dim])
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &SDegree) -> SDegree {
        SDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &SDegree) -> SDegree {
        SDegree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Debug for SDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Parses comma-separated integers such as `52,8` (parentheses optional).
impl FromStr for SDegree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.trim().is_empty() {
            return Err(Error::Parse(format!("empty degree `{s}`")));
        }
        body.split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("invalid degree `{s}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(SDegree)
    }
}

/// The `d x r` integer matrix whose columns generate the semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorMatrix {
    dim: usize,
    generators: Vec<SDegree>,
}

impl GeneratorMatrix {
    pub fn new(dim: usize, generators: Vec<Vec<BigInt>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if generators.is_empty() {
            return Err(Error::EmptyPresentation);
        }
        for (index, g) in generators.iter().enumerate() {
            if g.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: g.len() });
            }
            if g.iter().all(Zero::is_zero) {
                return Err(Error::ZeroGenerator { index });
            }
        }
        Ok(GeneratorMatrix { dim, generators: generators.into_iter().map(SDegree).collect() })
    }

    /// Builds the matrix from its rows, as printed in the usual `d x r` layout.
    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        let dim = rows.len();
        let r = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != r) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        let cols = (0..r).map(|j| rows.iter().map(|row| BigInt::from(row[j])).collect()).collect();
        GeneratorMatrix::new(dim, cols)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, i: usize) -> &SDegree {
        &self.generators[i]
    }

    pub fn generators(&self) -> &[SDegree] {
        &self.generators
    }

    /// Rank over Q; equals the rank of the group generated by `S`.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<BigRational>> = self
            .generators
            .iter()
            .map(|g| g.coords().iter().map(|c| BigRational::from_integer(c.clone())).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.dim {
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank][col].clone();
            for i in rank + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let factor = &rows[i][col] / &pivot;
                for k in col..self.dim {
                    let delta = &factor * &rows[rank][k];
                    rows[i][k] -= delta;
                }
            }
            rank += 1;
        }
        rank
    }
}

/// A presentation that passed [`validate_presentation`], bundled with its
/// positive grading. All enumeration is bounded through the grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semigroup {
    matrix: GeneratorMatrix,
    grading: PositiveGrading,
}

impl Semigroup {
    pub fn new(matrix: GeneratorMatrix) -> Result<Self> {
        let grading = validate_presentation(&matrix)?;
        Ok(Semigroup { matrix, grading })
    }

    pub fn matrix(&self) -> &GeneratorMatrix {
        &self.matrix
    }

    pub fn grading(&self) -> &PositiveGrading {
        &self.grading
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim
    }

    pub fn nvars(&self) -> usize {
        self.matrix.num_generators()
    }

    pub fn check_degree(&self, m: &SDegree) -> Result<()> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: m.dim() });
        }
        Ok(())
    }

    pub fn check_monomial(&self, a: &Monomial) -> Result<()> {
        if a.nvars() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: a.nvars() });
        }
        Ok(())
    }

    /// `sum_i a_i n_i`.
    pub fn degree_of(&self, a: &Monomial) -> SDegree {
        degree_of(&self.matrix, a)
    }

    /// `w . m` for the fixed positive grading `w`.
    pub fn weight(&self, m: &SDegree) -> BigRational {
        self.grading.weight(m)
    }

    pub fn member(&self, m: &SDegree) -> bool {
        fiber::has_solution(self, m)
    }

    /// All monomials of S-degree `m`, largest first under `order`.
    pub fn fiber(&self, m: &SDegree, order: TermOrder) -> Vec<Monomial> {
        let mut out = fiber::solutions(self, m);
        order.sort_decreasing(&mut out);
        out
    }

    /// `m' <_S m`, i.e. `m - m'` lies in `S`.
    pub fn s_less(&self, m_prime: &SDegree, m: &SDegree) -> bool {
        self.member(&m.sub(m_prime))
    }

    /// Every element of `S` with `w . m <= bound`, ordered by weight and then
    /// lexicographically.
    pub fn degrees_up_to(&self, bound: &BigRational) -> Vec<SDegree> {
        let zero = SDegree::zero(self.dim());
        let mut seen = BTreeSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(m) = queue.pop_front() {
            for g in self.matrix.generators() {
                let next = m.add(g);
                if &self.weight(&next) <= bound && seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut out: Vec<SDegree> = seen.into_iter().collect();
        out.sort_by_cached_key(|m| (self.weight(m), m.clone()));
        out
    }

    pub(crate) fn weight_numerator(&self, m: &SDegree) -> BigInt {
        self.grading.weight_numerator(m)
    }
}

pub fn degree_of(matrix: &GeneratorMatrix, a: &Monomial) -> SDegree {
    let mut acc = vec![BigInt::zero(); matrix.dim];
    for (g, &e) in matrix.generators.iter().zip(a.exponents()) {
        if e == 0 {
            continue;
        }
        for (slot, c) in acc.iter_mut().zip(g.coords()) {
            *slot += c * e;
        }
    }
    SDegree(acc)
}

pub(crate) fn is_nonnegative(x: &BigInt) -> bool {
    !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_matrix() -> Semigroup {
        Semigroup::new(GeneratorMatrix::from_rows(&[&[4, 5, 7, 8], &[1, 1, 1, 1]]).unwrap()).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn degree_of_examples() {
        let s = example_matrix();
        assert_eq!(s.degree_of(&mono(&[0, 2, 6, 0])), SDegree::from_i64s(&[52, 8]));
        assert_eq!(s.degree_of(&mono(&[0, 0, 0, 0])), SDegree::from_i64s(&[0, 0]));
        assert_eq!(s.degree_of(&mono(&[1, 0, 0, 0])), SDegree::from_i64s(&[4, 1]));
    }

    #[test]
    fn membership_examples() {
        let s = example_matrix();
        assert!(s.member(&SDegree::from_i64s(&[52, 8])));
        assert!(s.member(&SDegree::from_i64s(&[4, 1])));
        assert!(!s.member(&SDegree::from_i64s(&[1, 0])));
        assert!(!s.member(&SDegree::from_i64s(&[-4, -1])));
    }

    #[test]
    fn fiber_of_52_8() {
        let s = example_matrix();
        let fib = s.fiber(&SDegree::from_i64s(&[52, 8]), TermOrder::Degrevlex);
        let expected: BTreeSet<Monomial> = [
            [0, 2, 6, 0],
            [0, 3, 3, 2],
            [0, 4, 0, 4],
            [1, 1, 5, 1],
            [1, 2, 2, 3],
            [2, 0, 4, 2],
            [2, 1, 1, 4],
            [3, 0, 0, 5],
        ]
        .iter()
        .map(|e| mono(e))
        .collect();
        assert_eq!(fib.len(), 8);
        assert_eq!(fib.iter().cloned().collect::<BTreeSet<_>>(), expected);
        // largest under degrevlex has no x4
        assert_eq!(fib[0], mono(&[0, 2, 6, 0]));
    }

    #[test]
    fn fiber_small_degrees() {
        let s = example_matrix();
        let fib = s.fiber(&SDegree::from_i64s(&[21, 3]), TermOrder::Degrevlex);
        assert_eq!(fib, vec![mono(&[0, 0, 3, 0]), mono(&[0, 1, 0, 2])]);
        let unit = s.fiber(&SDegree::from_i64s(&[0, 0]), TermOrder::Degrevlex);
        assert_eq!(unit, vec![mono(&[0, 0, 0, 0])]);
        assert!(s.fiber(&SDegree::from_i64s(&[1, 0]), TermOrder::Degrevlex).is_empty());
    }

    #[test]
    fn s_less_examples() {
        let s = example_matrix();
        let m = SDegree::from_i64s(&[52, 8]);
        let m1 = SDegree::from_i64s(&[21, 3]);
        assert!(s.s_less(&m1, &m));
        assert!(s.s_less(&m, &m));
        assert!(!s.s_less(&m, &m1));
    }

    #[test]
    fn degree_parsing() {
        assert_eq!("52,8".parse::<SDegree>().unwrap(), SDegree::from_i64s(&[52, 8]));
        assert_eq!("(-1, 3)".parse::<SDegree>().unwrap(), SDegree::from_i64s(&[-1, 3]));
        assert!("5,x".parse::<SDegree>().is_err());
        assert_eq!(SDegree::from_i64s(&[52, 8]).to_string(), "(52,8)");
    }

    #[test]
    fn degrees_up_to_small_bounds() {
        let s = example_matrix();
        let zero = s.degrees_up_to(&BigRational::from_integer(0.into()));
        assert_eq!(zero, vec![SDegree::zero(2)]);
        let one = s.degrees_up_to(&BigRational::from_integer(1.into()));
        assert_eq!(one.len(), 5);
    }

    #[test]
    fn matrix_rank() {
        assert_eq!(example_matrix().matrix().rank(), 2);
        assert_eq!(GeneratorMatrix::from_rows(&[&[2, 3]]).unwrap().rank(), 1);
    }
}
