//! Harvesting a piece of the minimal free resolution from one degree, and
//! checking such pieces.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::algebra::{GeneratorId, ModuleElement, Slot};
use super::engine::Engine;
use super::registry::GeneratorRecord;
use crate::error::Result;
use crate::field::{Field, FieldKind};
use crate::monomial::TermOrder;
use crate::semigroup::SDegree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    /// Number of faces of each dimension `1..=max_level + 1` whose `ψ` was
    /// evaluated.
    pub faces_walked: Vec<usize>,
    /// Homology representatives registered directly at the harvest degree,
    /// per level.
    pub representatives: Vec<usize>,
}

/// The generators of levels `0..=max_level` known after a harvest, with the
/// maps between their free modules given by the generator values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionFragment<E> {
    pub order: TermOrder,
    pub field: FieldKind,
    pub degree: SDegree,
    pub max_level: usize,
    pub levels: Vec<Vec<GeneratorRecord<E>>>,
    pub provenance: Provenance,
}

impl<E: Clone> ResolutionFragment<E> {
    /// `s_0, s_1, ...`: the number of generators per level.
    pub fn ranks(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// The chain of free modules, e.g. `R^1 -> R^4 -> R^4 -> R`.
    pub fn shape(&self) -> String {
        let mut parts: Vec<String> = self.ranks().iter().rev().map(|n| format!("R^{n}")).collect();
        parts.push("R".into());
        parts.join(" -> ")
    }

    pub fn generators(&self) -> impl Iterator<Item = &GeneratorRecord<E>> {
        self.levels.iter().flatten()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.violations.is_empty())
    }

    pub fn violations(&self) -> impl Iterator<Item = (&'static str, &String)> {
        self.checks.iter().flat_map(|c| c.violations.iter().map(move |v| (c.name, v)))
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.violations.is_empty() { "ok" } else { "FAILED" };
            writeln!(f, "{}: {}", c.name, status)?;
            for v in &c.violations {
                writeln!(f, "  {v}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> Engine<F> {
    /// Registers the homology representatives of `∇_m` up to `max_level`,
    /// evaluates `ψ` on every face up to dimension `max_level + 1`, and
    /// collects everything registered so far.
    pub fn harvest(&mut self, m: &SDegree, max_level: usize) -> Result<ResolutionFragment<F::Elem>> {
        self.semigroup().check_degree(m)?;
        let mut representatives = Vec::new();
        for j in 0..=max_level {
            let betti = self.multigraded_betti(m, j);
            for l in 0..betti {
                self.register(j, m, l)?;
            }
            representatives.push(betti);
        }
        let mut faces_walked = Vec::new();
        for j in 1..=max_level + 1 {
            let n = self.faces(m, j).len();
            for idx in 0..n {
                self.psi_face(j, m, idx)?;
            }
            faces_walked.push(n);
        }
        let levels = (0..=max_level).map(|j| self.registry().level(j).cloned().collect()).collect();
        Ok(ResolutionFragment {
            order: self.order(),
            field: self.field().kind(),
            degree: m.clone(),
            max_level,
            levels,
            provenance: Provenance { faces_walked, representatives },
        })
    }

    /// Checks that consecutive maps compose to zero, that no map entry has a
    /// constant term, that every generator is homogeneous of its degree, and
    /// that no degree carries more generators than its Betti number allows.
    pub fn verify_fragment(&mut self, frag: &ResolutionFragment<F::Elem>) -> VerificationReport {
        let f = self.field().clone();
        let s = self.semigroup().clone();
        let values: HashMap<&GeneratorId, &ModuleElement<F::Elem>> =
            frag.generators().map(|r| (&r.id, &r.value)).collect();

        let mut composition = Vec::new();
        let mut minimality = Vec::new();
        let mut homogeneity = Vec::new();
        let mut counts = Vec::new();

        for rec in frag.generators() {
            let id = &rec.id;
            if rec.value.is_zero() {
                composition.push(format!("{id} is zero"));
                continue;
            }
            if rec.value.has_constant_term() {
                minimality.push(format!("{id} has an entry with a constant term"));
            }
            match rec.value.degree(&s) {
                Ok(Some(d)) if d == id.degree => {}
                Ok(_) => homogeneity.push(format!("{id} is homogeneous of another degree")),
                Err(_) => homogeneity.push(format!("{id} is not homogeneous")),
            }
            if id.level == 0 {
                let mut sum = f.zero();
                for (slot, _, c) in rec.value.terms() {
                    if *slot != Slot::Ring {
                        composition.push(format!("{id} is not a ring element"));
                    }
                    sum = f.add(&sum, c);
                }
                if !f.is_zero(&sum) {
                    composition.push(format!("{id} does not lie in the toric ideal"));
                }
                continue;
            }
            let mut image = ModuleElement::zero();
            let mut known = true;
            for (slot, p) in rec.value.entries() {
                let target = match slot {
                    Slot::Gen(g) if g.level + 1 == id.level => values.get(g),
                    _ => None,
                };
                match target {
                    Some(v) => image.add_assign(&f, &v.mul_poly(&f, p)),
                    None => {
                        composition.push(format!("{id} refers to {slot:?}, which is not in the fragment"));
                        known = false;
                    }
                }
            }
            if known && !image.is_zero() {
                composition.push(format!("{id} does not map to zero"));
            }
        }

        let mut per_degree: BTreeMap<(usize, &SDegree), usize> = BTreeMap::new();
        for rec in frag.generators() {
            *per_degree.entry((rec.id.level, &rec.id.degree)).or_default() += 1;
        }
        for ((level, degree), n) in per_degree {
            let betti = self.multigraded_betti(degree, level);
            if n > betti {
                counts.push(format!("{n} generators at level {level}, degree {degree}, but the Betti number is {betti}"));
            }
        }

        VerificationReport {
            checks: vec![
                CheckResult { name: "composition", violations: composition },
                CheckResult { name: "minimality", violations: minimality },
                CheckResult { name: "homogeneity", violations: homogeneity },
                CheckResult { name: "betti-bound", violations: counts },
            ],
        }
    }
}
