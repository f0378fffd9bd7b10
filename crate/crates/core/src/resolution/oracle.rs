//! A brute-force count of minimal binomial generators per degree, independent
//! of the simplicial machinery.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::monomial::{Monomial, TermOrder};
use crate::semigroup::{SDegree, Semigroup};

/// `dim (I_S)_m - dim (m I_S)_m`, where `(I_S)_m` is spanned by differences of
/// consecutive fiber monomials and `(m I_S)_m` by `x_i` times those of
/// `(I_S)_{m - n_i}`.
pub fn oracle_v0(s: &Semigroup, m: &SDegree) -> usize {
    let fiber = s.fiber(m, TermOrder::Lex);
    if fiber.len() < 2 {
        return 0;
    }
    let index: HashMap<&Monomial, usize> = fiber.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut rows = Vec::new();
    for i in 0..s.nvars() {
        let x = Monomial::var(s.nvars(), i);
        let lower = s.fiber(&m.sub(s.matrix().generator(i)), TermOrder::Lex);
        for pair in lower.windows(2) {
            let mut row = vec![BigRational::zero(); fiber.len()];
            row[index[&pair[0].mul(&x)]] += BigRational::one();
            row[index[&pair[1].mul(&x)]] -= BigRational::one();
            rows.push(row);
        }
    }
    fiber.len() - 1 - dense_rank(rows)
}

fn dense_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i == rank || rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] / &rows[rank][col];
            for k in col..ncols {
                let d = &factor * &rows[rank][k];
                rows[i][k] -= d;
            }
        }
        rank += 1;
    }
    rank
}
