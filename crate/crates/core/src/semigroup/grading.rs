//! Positive gradings via Fourier–Motzkin elimination.
//!
//! A rational `w` with `w . n_i >= 1` for every generator exists exactly when no
//! nonzero nonnegative combination of the generators vanishes, which is the
//! combinatorial-finiteness condition `S ∩ (-S) = {0}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{GeneratorMatrix, SDegree};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveGrading {
    weights: Vec<BigRational>,
    // weights * denom, all integers
    scaled: Vec<BigInt>,
    denom: BigInt,
}

impl PositiveGrading {
    fn from_weights(weights: Vec<BigRational>) -> Self {
        let denom = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let scaled = weights.iter().map(|w| (w * &denom).to_integer()).collect();
        PositiveGrading { weights, scaled, denom }
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn weight(&self, m: &SDegree) -> BigRational {
        BigRational::new(self.weight_numerator(m), self.denom.clone())
    }

    /// `w . m` times the common denominator of `w`.
    pub(crate) fn weight_numerator(&self, m: &SDegree) -> BigInt {
        self.scaled.iter().zip(m.coords()).map(|(w, c)| w * c).sum()
    }

    pub fn is_certificate_for(&self, matrix: &GeneratorMatrix) -> bool {
        let one = BigRational::one();
        matrix.generators().iter().all(|g| self.weight(g) >= one)
    }

    pub fn to_string_list(&self) -> Vec<String> {
        self.weights.iter().map(|w| w.to_string()).collect()
    }
}

impl std::fmt::Display for PositiveGrading {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.to_string_list().join(","))
    }
}

/// `coeffs . w >= rhs`
#[derive(Clone, Debug, PartialEq, Eq)]
struct Constraint {
    coeffs: Vec<BigRational>,
    rhs: BigRational,
}

/// Finds the positive grading certifying combinatorial finiteness.
///
/// Variables are eliminated from the last to the first and then fixed from the
/// first to the last, each at the point of its feasible interval closest to 0.
/// The result is rescaled so that `min_i w . n_i = 1`.
pub fn validate_presentation(matrix: &GeneratorMatrix) -> Result<PositiveGrading> {
    for (index, g) in matrix.generators().iter().enumerate() {
        if g.is_zero() {
            return Err(Error::ZeroGenerator { index });
        }
    }
    let d = matrix.dim();
    let original: Vec<Constraint> = matrix
        .generators()
        .iter()
        .map(|g| Constraint {
            coeffs: g.coords().iter().map(|c| BigRational::from_integer(c.clone())).collect(),
            rhs: BigRational::one(),
        })
        .collect();

    // systems[k] only involves variables 0..=k
    let mut systems = vec![Vec::new(); d];
    systems[d - 1] = original;
    for k in (1..d).rev() {
        systems[k - 1] = eliminate(&systems[k], k)?;
    }

    let mut w: Vec<BigRational> = Vec::with_capacity(d);
    for (k, system) in systems.iter().enumerate() {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for c in system {
            let partial: BigRational = c.coeffs[..k].iter().zip(&w).map(|(a, x)| a * x).sum();
            let residual = &c.rhs - partial;
            let a = &c.coeffs[k];
            if a.is_zero() {
                if residual.is_positive() {
                    return Err(Error::NotCombinatoriallyFinite);
                }
                continue;
            }
            let bound = &residual / a;
            if a.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            }
        }
        let value = match (lo, hi) {
            (Some(l), Some(h)) if l > h => return Err(Error::NotCombinatoriallyFinite),
            (Some(l), _) if l.is_positive() => l,
            (_, Some(h)) if h.is_negative() => h,
            _ => BigRational::zero(),
        };
        w.push(value);
    }

    let min = matrix
        .generators()
        .iter()
        .map(|g| g.coords().iter().zip(&w).map(|(c, x)| x * c).sum::<BigRational>())
        .min()
        .expect("at least one generator");
    if !min.is_positive() {
        return Err(Error::NotCombinatoriallyFinite);
    }
    let w = w.into_iter().map(|x| x / &min).collect();
    Ok(PositiveGrading::from_weights(w))
}

fn eliminate(system: &[Constraint], k: usize) -> Result<Vec<Constraint>> {
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for c in system {
        let a = &c.coeffs[k];
        if a.is_positive() {
            pos.push(scale(c, &a.recip()));
        } else if a.is_negative() {
            neg.push(scale(c, &(-a).recip()));
        } else {
            out.push(c.clone());
        }
    }
    for p in &pos {
        for n in &neg {
            let coeffs = p.coeffs.iter().zip(&n.coeffs).map(|(a, b)| a + b).collect();
            out.push(Constraint { coeffs, rhs: &p.rhs + &n.rhs });
        }
    }
    let mut kept: Vec<Constraint> = Vec::with_capacity(out.len());
    for c in out {
        if c.coeffs.iter().all(Zero::is_zero) {
            if c.rhs.is_positive() {
                return Err(Error::NotCombinatoriallyFinite);
            }
            continue;
        }
        if !kept.contains(&c) {
            kept.push(c);
        }
    }
    Ok(kept)
}

fn scale(c: &Constraint, s: &BigRational) -> Constraint {
    Constraint { coeffs: c.coeffs.iter().map(|a| a * s).collect(), rhs: &c.rhs * s }
}
