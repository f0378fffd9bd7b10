//! Polynomials, binomials and elements of the free modules `R^{s_i}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, TermOrder};
use crate::semigroup::{SDegree, Semigroup};

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<E> {
    terms: BTreeMap<Monomial, E>,
}

impl<E> Default for Polynomial<E> {
    fn default() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }
}

impl<E: Clone> Polynomial<E> {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn term<F: Field<Elem = E>>(f: &F, m: Monomial, c: E) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(f, m, c);
        p
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, nvars: usize, c: E) -> Self {
        Polynomial::term(f, Monomial::one(nvars), c)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&E> {
        self.terms.get(m)
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, f: &F, m: Monomial, c: E) {
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = f.add(x, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(f, m.clone(), c.clone());
        }
        out
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.add(f, &other.scale(f, &f.neg(&f.one())))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        if f.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, x)| (m.clone(), f.mul(c, x))).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial { terms: self.terms.iter().map(|(a, x)| (a.mul(m), x.clone())).collect() }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut out = Polynomial::zero();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term(f, a.mul(b), f.mul(x, y));
            }
        }
        out
    }

    /// Exact division by a monomial dividing every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(a, x)| m.quotient_of(a).map(|q| (q, x.clone())))
            .collect::<Option<BTreeMap<_, _>>>()?;
        Some(Polynomial { terms })
    }

    /// Greatest common monomial divisor of the terms.
    pub fn content(&self) -> Option<Monomial> {
        Monomial::gcd_all(self.terms.keys())
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.keys().any(Monomial::is_one)
    }

    /// The common S-degree of all terms, `None` for zero.
    pub fn degree(&self, s: &Semigroup) -> Result<Option<SDegree>> {
        let mut degs = self.terms.keys().map(|m| s.degree_of(m));
        let Some(first) = degs.next() else { return Ok(None) };
        if degs.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// Terms from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: TermOrder) -> Vec<(&Monomial, &E)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }
}

/// `lead - trail` for two distinct monomials of the same S-degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Binomial {
    lead: Monomial,
    trail: Monomial,
}

impl Binomial {
    /// Accepts the two monomials in either term-order position.
    pub fn new(s: &Semigroup, lead: Monomial, trail: Monomial) -> Result<Self> {
        s.check_monomial(&lead)?;
        s.check_monomial(&trail)?;
        if s.degree_of(&lead) != s.degree_of(&trail) {
            return Err(Error::NotHomogeneous);
        }
        if lead == trail {
            return Err(Error::NotInIdeal);
        }
        Ok(Binomial { lead, trail })
    }

    pub fn lead(&self) -> &Monomial {
        &self.lead
    }

    pub fn trail(&self) -> &Monomial {
        &self.trail
    }

    pub fn to_polynomial<F: Field>(&self, f: &F) -> Polynomial<F::Elem> {
        let mut p = Polynomial::term(f, self.lead.clone(), f.one());
        p.add_term(f, self.trail.clone(), f.neg(&f.one()));
        p
    }

    /// Reads `x^a - x^b` back from a polynomial.
    pub fn from_polynomial<F: Field>(f: &F, p: &Polynomial<F::Elem>) -> Option<Self> {
        if p.len() != 2 {
            return None;
        }
        let mut lead = None;
        let mut trail = None;
        for (m, c) in p.terms() {
            if f.is_one(c) {
                lead = Some(m.clone());
            } else if f.is_one(&f.neg(c)) {
                trail = Some(m.clone());
            }
        }
        Some(Binomial { lead: lead?, trail: trail? })
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.lead, self.trail)
    }
}

/// A minimal generator: `index` is its position among the homology
/// representatives of the fixed basis in degree `degree` and dimension `level`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId {
    pub level: usize,
    pub degree: SDegree,
    pub index: usize,
}

impl fmt::Debug for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}{}#{}", self.level, self.degree, self.index)
    }
}

/// A basis element of a free module: the ring itself, or a generator of the
/// previous level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Ring,
    Gen(GeneratorId),
}

/// An element of `R` (only the `Ring` slot) or of a free module `R^{s_i}`
/// whose basis is indexed by generator ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElement<E> {
    entries: BTreeMap<Slot, Polynomial<E>>,
}

impl<E> Default for ModuleElement<E> {
    fn default() -> Self {
        ModuleElement { entries: BTreeMap::new() }
    }
}

impl<E: Clone> ModuleElement<E> {
    pub fn zero() -> Self {
        ModuleElement::default()
    }

    pub fn ring(p: Polynomial<E>) -> Self {
        ModuleElement::single(Slot::Ring, p)
    }

    pub fn single(slot: Slot, p: Polynomial<E>) -> Self {
        let mut entries = BTreeMap::new();
        if !p.is_zero() {
            entries.insert(slot, p);
        }
        ModuleElement { entries }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Slot, &Polynomial<E>)> {
        self.entries.iter()
    }

    pub fn get(&self, slot: &Slot) -> Option<&Polynomial<E>> {
        self.entries.get(slot)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.entries.values().map(Polynomial::len).sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Slot, &Monomial, &E)> {
        self.entries.iter().flat_map(|(s, p)| p.terms().map(move |(m, c)| (s, m, c)))
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, f: &F, slot: Slot, m: Monomial, c: E) {
        let p = self.entries.entry(slot.clone()).or_default();
        p.add_term(f, m, c);
        if p.is_zero() {
            self.entries.remove(&slot);
        }
    }

    pub fn add_assign<F: Field<Elem = E>>(&mut self, f: &F, other: &Self) {
        for (s, m, c) in other.terms() {
            self.add_term(f, s.clone(), m.clone(), c.clone());
        }
    }

    pub fn add_scaled<F: Field<Elem = E>>(&mut self, f: &F, c: &E, other: &Self) {
        for (s, m, x) in other.terms() {
            self.add_term(f, s.clone(), m.clone(), f.mul(c, x));
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(f, &f.neg(&f.one()), other);
        out
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        let mut out = ModuleElement::zero();
        out.add_scaled(f, c, self);
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        ModuleElement {
            entries: self.entries.iter().map(|(s, p)| (s.clone(), p.mul_monomial(m))).collect(),
        }
    }

    pub fn mul_poly<F: Field<Elem = E>>(&self, f: &F, p: &Polynomial<E>) -> Self {
        let mut out = ModuleElement::zero();
        for (m, c) in p.terms() {
            out.add_scaled(f, c, &self.mul_monomial(m));
        }
        out
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let entries = self
            .entries
            .iter()
            .map(|(s, p)| p.div_monomial(m).map(|q| (s.clone(), q)))
            .collect::<Option<BTreeMap<_, _>>>()?;
        Some(ModuleElement { entries })
    }

    /// Greatest common monomial divisor of every monomial in every entry.
    pub fn content(&self) -> Option<Monomial> {
        Monomial::gcd_all(self.entries.values().flat_map(|p| p.terms().map(|(m, _)| m)))
    }

    pub fn has_constant_term(&self) -> bool {
        self.entries.values().any(Polynomial::has_constant_term)
    }

    /// The common S-degree of all terms, counting a generator slot at its
    /// own degree; `None` for zero.
    pub fn degree(&self, s: &Semigroup) -> Result<Option<SDegree>> {
        let mut out: Option<SDegree> = None;
        for (slot, m, _) in self.terms() {
            let d = match slot {
                Slot::Ring => s.degree_of(m),
                Slot::Gen(id) => s.degree_of(m).add(&id.degree),
            };
            match &out {
                None => out = Some(d),
                Some(e) if *e != d => return Err(Error::NotHomogeneous),
                _ => {}
            }
        }
        Ok(out)
    }
}
