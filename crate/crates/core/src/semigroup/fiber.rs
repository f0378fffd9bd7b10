//! Bounded enumeration of `{a in N^r : A a = m}`.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{is_nonnegative, SDegree, Semigroup};
use crate::monomial::Monomial;

pub(super) fn solutions(s: &Semigroup, m: &SDegree) -> Vec<Monomial> {
    let mut out = Vec::new();
    let _ = search(s, m, &mut |a| {
        out.push(Monomial::new(a.to_vec()));
        ControlFlow::<()>::Continue(())
    });
    out
}

pub(super) fn has_solution(s: &Semigroup, m: &SDegree) -> bool {
    search(s, m, &mut |_| ControlFlow::Break(())).is_break()
}

/// Depth-first search over exponent vectors. Each `a_i` is bounded by the
/// remaining weight divided by `w . n_i`; the last exponent is solved for.
fn search<B>(
    s: &Semigroup,
    m: &SDegree,
    visit: &mut impl FnMut(&[u32]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if m.dim() != s.dim() {
        return ControlFlow::Continue(());
    }
    let budget = s.weight_numerator(m);
    if budget.is_negative() {
        return ControlFlow::Continue(());
    }
    let gen_weights: Vec<BigInt> =
        s.matrix().generators().iter().map(|g| s.weight_numerator(g)).collect();
    let mut state = Search {
        gens: s.matrix().generators(),
        gen_weights: &gen_weights,
        exps: vec![0; s.nvars()],
    };
    state.step(0, m.coords().to_vec(), budget, visit)
}

struct Search<'a> {
    gens: &'a [SDegree],
    gen_weights: &'a [BigInt],
    exps: Vec<u32>,
}

impl Search<'_> {
    fn step<B>(
        &mut self,
        i: usize,
        residual: Vec<BigInt>,
        budget: BigInt,
        visit: &mut impl FnMut(&[u32]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let g = self.gens[i].coords();
        let gw = &self.gen_weights[i];
        if i + 1 == self.gens.len() {
            let (q, rem) = budget.div_rem(gw);
            if !rem.is_zero() {
                return ControlFlow::Continue(());
            }
            let fits = residual.iter().zip(g).all(|(r, c)| r == &(c * &q));
            if fits && is_nonnegative(&q) {
                self.exps[i] = q.to_u32().expect("exponent exceeds u32");
                let res = visit(&self.exps);
                self.exps[i] = 0;
                return res;
            }
            return ControlFlow::Continue(());
        }
        let max = (&budget / gw).to_u32().expect("exponent exceeds u32");
        let mut residual = residual;
        let mut budget = budget;
        for a in 0..=max {
            self.exps[i] = a;
            self.step(i + 1, residual.clone(), budget.clone(), visit)?;
            for (r, c) in residual.iter_mut().zip(g) {
                *r -= c;
            }
            budget -= gw;
        }
        self.exps[i] = 0;
        ControlFlow::Continue(())
    }
}
