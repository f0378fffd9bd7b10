//! The recursive minimalization engine.
//!
//! `ψ_0` sends a vertex of `∇_m` to its monomial. For `k >= 1`, `ψ_k(F)` is the
//! minimalization of `ψ_{k-1}(∂F)` at level `k - 1`, written in the free
//! module on the level `k - 1` generators. Minimalizing an element `u` of
//! level `k` factors out its monomial content, lifts it to a `k`-cycle of
//! `∇_m`, and splits the cycle along the fixed basis: homology coordinates
//! name minimal generators, boundary coordinates are pushed onto `(k+1)`-faces
//! whose `ψ_{k+1}` values live in strictly smaller degrees.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::algebra::{Binomial, GeneratorId, ModuleElement, Polynomial, Slot};
use super::registry::{GeneratorRecord, GeneratorRegistry};
use crate::complexes::{build_nabla, Face, NablaComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{
    cache_key, BasisStore, BoundaryMatrix, ChainBasis, ChainBasisRecord, ChainVector, FaceTable, SpanSolver,
    SparseVec,
};
use crate::monomial::{Monomial, TermOrder};
use crate::semigroup::{SDegree, Semigroup};

/// A minimalization result: `input = Σ coefficient · value(generator)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionResult<E> {
    pub level: usize,
    pub input_degree: SDegree,
    pub terms: Vec<(GeneratorId, Polynomial<E>)>,
}

impl<E: Clone> DecompositionResult<E> {
    fn from_element(level: usize, input_degree: SDegree, v: &ModuleElement<E>) -> Self {
        let terms = v
            .entries()
            .map(|(slot, p)| match slot {
                Slot::Gen(id) => (id.clone(), p.clone()),
                Slot::Ring => unreachable!("decompositions are indexed by generators"),
            })
            .collect();
        DecompositionResult { level, input_degree, terms }
    }

    /// The coefficient vector as a free-module element.
    pub fn as_element<F: Field<Elem = E>>(&self, f: &F) -> ModuleElement<E> {
        let mut out = ModuleElement::zero();
        for (id, p) in &self.terms {
            out.add_assign(f, &ModuleElement::single(Slot::Gen(id.clone()), p.clone()));
        }
        out
    }

    pub fn generators(&self) -> impl Iterator<Item = &GeneratorId> {
        self.terms.iter().map(|(id, _)| id)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    /// Lifts at level >= 2 whose direct construction needed a correction by
    /// further cycles to reproduce the input.
    pub lift_corrections: usize,
    pub bases_computed: usize,
    pub bases_loaded: usize,
}

pub struct Engine<F: Field> {
    semigroup: Semigroup,
    order: TermOrder,
    field: F,
    store: Option<Arc<dyn BasisStore>>,
    complexes: HashMap<SDegree, Arc<NablaComplex>>,
    tables: HashMap<(SDegree, usize), Arc<FaceTable>>,
    bases: HashMap<(SDegree, usize), Arc<ChainBasis<F::Elem>>>,
    psi_cache: HashMap<(usize, SDegree, usize), ModuleElement<F::Elem>>,
    registry: GeneratorRegistry<F::Elem>,
    stats: EngineStats,
}

impl<F: Field> Engine<F> {
    pub fn new(semigroup: Semigroup, order: TermOrder, field: F) -> Self {
        Engine {
            semigroup,
            order,
            field,
            store: None,
            complexes: HashMap::new(),
            tables: HashMap::new(),
            bases: HashMap::new(),
            psi_cache: HashMap::new(),
            registry: GeneratorRegistry::new(),
            stats: EngineStats::default(),
        }
    }

    /// Persists and reuses chain bases through `store`.
    pub fn with_store(mut self, store: Arc<dyn BasisStore>) -> Self {
        self.store = Some(store);
        self
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn registry(&self) -> &GeneratorRegistry<F::Elem> {
        &self.registry
    }

    pub fn stats(&self) -> &EngineStats {
        &self.stats
    }

    pub fn nabla(&mut self, m: &SDegree) -> Arc<NablaComplex> {
        if let Some(k) = self.complexes.get(m) {
            return k.clone();
        }
        let k = Arc::new(build_nabla(&self.semigroup, m, self.order));
        self.complexes.insert(m.clone(), k.clone());
        k
    }

    pub fn faces(&mut self, m: &SDegree, j: usize) -> Arc<FaceTable> {
        let key = (m.clone(), j);
        if let Some(t) = self.tables.get(&key) {
            return t.clone();
        }
        let k = self.nabla(m);
        let t = Arc::new(FaceTable::new(crate::complexes::SimplicialComplex::faces_of_dim(&*k, j)));
        self.tables.insert(key, t.clone());
        t
    }

    pub fn basis(&mut self, m: &SDegree, j: usize) -> Arc<ChainBasis<F::Elem>> {
        let key = (m.clone(), j);
        if let Some(b) = self.bases.get(&key) {
            return b.clone();
        }
        let faces_j = self.faces(m, j);
        let store_key = self
            .store
            .as_ref()
            .map(|_| cache_key(self.semigroup.matrix(), m, j, self.order, self.field.kind()));
        let loaded = match (&self.store, &store_key) {
            (Some(store), Some(k)) => store
                .load(k)
                .and_then(|s| ChainBasisRecord::from_json(&s).ok())
                .filter(|rec| rec.num_faces == faces_j.len() && rec.dim == j)
                .and_then(|rec| rec.into_basis(&self.field).ok()),
            _ => None,
        };
        let basis = match loaded {
            Some(b) => {
                self.stats.bases_loaded += 1;
                b
            }
            None => {
                let lower = if j == 0 {
                    BoundaryMatrix::between(&faces_j, None, true)
                } else {
                    BoundaryMatrix::between(&faces_j, Some(&self.faces(m, j - 1)), true)
                };
                let upper = BoundaryMatrix::between(&self.faces(m, j + 1), Some(&faces_j), true);
                let b = ChainBasis::compute(&self.field, j, &lower, &upper);
                self.stats.bases_computed += 1;
                if let (Some(store), Some(k)) = (&self.store, &store_key) {
                    store.store(k, &ChainBasisRecord::from_basis(&self.field, &b).to_json());
                }
                b
            }
        };
        let basis = Arc::new(basis);
        self.bases.insert(key, basis.clone());
        basis
    }

    /// `s_{j+1,m}`: the rank of `H̃_j(∇_m)`.
    pub fn multigraded_betti(&mut self, m: &SDegree, j: usize) -> usize {
        self.basis(m, j).betti()
    }

    fn sign(&self, level: usize) -> F::Elem {
        // level-0 representatives are {x^β} - {x^α} with x^α largest; flip so
        // that the registered binomial is x^α - x^β
        if level == 0 {
            self.field.neg(&self.field.one())
        } else {
            self.field.one()
        }
    }

    fn nvars(&self) -> usize {
        self.semigroup.nvars()
    }

    /// `ψ_k` on a `k`-chain of `∇_m`.
    pub fn psi_chain(&mut self, k: usize, m: &SDegree, chain: &ChainVector<F::Elem>) -> Result<ModuleElement<F::Elem>> {
        let mut out = ModuleElement::zero();
        for (idx, c) in chain.entries() {
            let v = self.psi_face(k, m, *idx)?;
            out.add_scaled(&self.field, c, &v);
        }
        Ok(out)
    }

    /// `ψ_k` on the `idx`-th `k`-face of `∇_m`.
    pub fn psi_face(&mut self, k: usize, m: &SDegree, idx: usize) -> Result<ModuleElement<F::Elem>> {
        let table = self.faces(m, k);
        let face = table.get(idx).clone();
        if k == 0 {
            let vertex = self.nabla(m).vertices()[face.vertices()[0]].clone();
            return Ok(ModuleElement::ring(Polynomial::term(&self.field, vertex, self.field.one())));
        }
        let key = (k, m.clone(), idx);
        if let Some(v) = self.psi_cache.get(&key) {
            return Ok(v.clone());
        }
        let lower = self.faces(m, k - 1);
        let pairs = face
            .boundary()
            .map(|(sign, sub)| (lower.index_of(&sub).expect("closed under subsets"), self.field.from_int(sign)));
        let chain = SparseVec::from_pairs(&self.field, pairs.collect::<Vec<_>>());
        let image = self.psi_chain(k - 1, m, &chain)?;
        let v = self.minimalize(k - 1, &image)?;
        if cfg!(debug_assertions) {
            let back = self.apply_phi(&v)?;
            debug_assert_eq!(back, image, "ψ does not commute with the boundary at {m}, level {k}");
        }
        self.psi_cache.insert(key, v.clone());
        Ok(v)
    }

    /// `ψ_k(F)` for a `k`-face given by vertex indices of `∇_m`, `k >= 1`.
    pub fn psi(&mut self, k: usize, m: &SDegree, face: &Face) -> Result<ModuleElement<F::Elem>> {
        self.semigroup.check_degree(m)?;
        let complex = self.nabla(m);
        if k == 0 || face.len() != k + 1 || !complex.is_face(face) {
            return Err(Error::NotAFace);
        }
        let idx = self.faces(m, k).index_of(face).ok_or(Error::NotAFace)?;
        self.psi_face(k, m, idx)
    }

    /// Registers the `l`-th homology representative of `∇_m` in dimension `k`.
    pub fn register(&mut self, k: usize, m: &SDegree, l: usize) -> Result<GeneratorId> {
        let id = GeneratorId { level: k, degree: m.clone(), index: l };
        if self.registry.contains(&id) {
            return Ok(id);
        }
        let basis = self.basis(m, k);
        let witness = basis.homology_part()[l].clone();
        let value = self.psi_chain(k, m, &witness)?.scale(&self.field, &self.sign(k));
        let weight = self.semigroup.weight(m);
        self.registry.insert(weight, GeneratorRecord { id: id.clone(), value, witness });
        Ok(id)
    }

    /// `φ`: substitutes each generator's value for its slot.
    pub fn apply_phi(&self, v: &ModuleElement<F::Elem>) -> Result<ModuleElement<F::Elem>> {
        let mut out = ModuleElement::zero();
        for (slot, p) in v.entries() {
            let Slot::Gen(id) = slot else {
                return Err(Error::NotASyzygy("ring entry in a module element".into()));
            };
            let rec = self.registry.get(id).ok_or_else(|| Error::UnknownGenerator(id.to_string()))?;
            out.add_assign(&self.field, &rec.value.mul_poly(&self.field, p));
        }
        Ok(out)
    }

    /// Writes an element of level `k` in terms of minimal generators of
    /// level `k`, registering any that were not known yet.
    pub fn minimalize(&mut self, k: usize, u: &ModuleElement<F::Elem>) -> Result<ModuleElement<F::Elem>> {
        if u.is_zero() {
            return Ok(ModuleElement::zero());
        }
        let h = u.content().expect("nonzero element");
        if !h.is_one() {
            let reduced = u.div_monomial(&h).expect("content divides");
            return Ok(self.minimalize(k, &reduced)?.mul_monomial(&h));
        }
        let m = u.degree(&self.semigroup)?.expect("nonzero element");
        let cycle = self.lift_to_cycle(k, u, &m)?;
        let basis = self.basis(&m, k);
        let coords = basis.express(&self.field, &cycle).map_err(|_| {
            if k == 0 {
                Error::NotInIdeal
            } else {
                Error::NotASyzygy("lifted chain is not a cycle".into())
            }
        })?;
        let mut out = ModuleElement::zero();
        let sign = self.sign(k);
        for (l, lambda) in coords.lambda.iter().enumerate() {
            if self.field.is_zero(lambda) {
                continue;
            }
            let id = self.register(k, &m, l)?;
            out.add_term(&self.field, Slot::Gen(id), Monomial::one(self.nvars()), self.field.mul(lambda, &sign));
        }
        let mut nu = SparseVec::zero();
        for (mu, pre) in coords.mu.iter().zip(basis.preimages()) {
            nu = nu.axpy(&self.field, mu, pre);
        }
        for (idx, c) in nu.entries() {
            let v = self.psi_face(k + 1, &m, *idx)?;
            out.add_scaled(&self.field, c, &v);
        }
        Ok(out)
    }

    /// A `k`-cycle `ĝ` of `∇_m` with `ψ_k(ĝ) = u`.
    pub fn lift_to_cycle(&mut self, k: usize, u: &ModuleElement<F::Elem>, m: &SDegree) -> Result<ChainVector<F::Elem>> {
        if u.is_zero() {
            return Ok(SparseVec::zero());
        }
        let complex = self.nabla(m);
        let chain = match k {
            0 => {
                let table = self.faces(m, 0);
                let mut pairs = Vec::new();
                for (slot, a, c) in u.terms() {
                    if *slot != Slot::Ring {
                        return Err(Error::NotASyzygy("expected a ring element".into()));
                    }
                    let v = complex.vertex_index(a).ok_or(Error::NotHomogeneous)?;
                    let idx = table.index_of(&Face::new(vec![v])).ok_or(Error::NotInIdeal)?;
                    pairs.push((idx, c.clone()));
                }
                SparseVec::from_pairs(&self.field, pairs)
            }
            1 => {
                let table = self.faces(m, 1);
                let mut pairs = Vec::new();
                for (slot, gamma, c) in u.terms() {
                    let bin = self.level_zero_binomial(slot)?;
                    let lead = complex.vertex_index(&bin.lead().mul(gamma)).ok_or(Error::NotHomogeneous)?;
                    let trail = complex.vertex_index(&bin.trail().mul(gamma)).ok_or(Error::NotHomogeneous)?;
                    let idx = table
                        .index_of(&Face::new(vec![lead, trail]))
                        .ok_or_else(|| Error::NotASyzygy("coefficient with a constant term".into()))?;
                    // ∂{a < b} = {b} - {a} must equal {lead} - {trail}
                    let c = if trail < lead { c.clone() } else { self.field.neg(c) };
                    pairs.push((idx, c));
                }
                SparseVec::from_pairs(&self.field, pairs)
            }
            _ => self.lift_by_shifted_witnesses(k, u, m, &complex)?,
        };
        if k == 0 {
            return Ok(chain);
        }
        let image = self.psi_chain(k, m, &chain)?;
        let residual = u.sub(&self.field, &image);
        if residual.is_zero() {
            return Ok(chain);
        }
        self.correct_lift(k, m, chain, &residual)
    }

    fn level_zero_binomial(&self, slot: &Slot) -> Result<Binomial> {
        let Slot::Gen(id) = slot else {
            return Err(Error::NotASyzygy("ring entry in a level-1 vector".into()));
        };
        if id.level != 0 {
            return Err(Error::NotASyzygy(format!("{id} is not a level-0 generator")));
        }
        let rec = self.registry.get(id).ok_or_else(|| Error::UnknownGenerator(id.to_string()))?;
        let p = rec.value.get(&Slot::Ring).ok_or_else(|| Error::LiftFailed(format!("{id} has no value")))?;
        Binomial::from_polynomial(&self.field, p).ok_or_else(|| Error::LiftFailed(format!("{id} is not a binomial")))
    }

    /// For `k >= 2`: every term `c x^δ e_b` maps to the `x^δ`-shifted witness
    /// of `b`, a boundary in `∇_m`; the sum is pulled back through `∂_k`.
    fn lift_by_shifted_witnesses(
        &mut self,
        k: usize,
        u: &ModuleElement<F::Elem>,
        m: &SDegree,
        complex: &NablaComplex,
    ) -> Result<ChainVector<F::Elem>> {
        let table = self.faces(m, k - 1);
        let mut pairs = Vec::new();
        for (slot, delta, c) in u.terms() {
            let Slot::Gen(id) = slot else {
                return Err(Error::NotASyzygy("ring entry in a module element".into()));
            };
            if id.level != k - 1 {
                return Err(Error::NotASyzygy(format!("{id} has the wrong level")));
            }
            let witness = self
                .registry
                .get(id)
                .ok_or_else(|| Error::UnknownGenerator(id.to_string()))?
                .witness
                .clone();
            let source = self.nabla(&id.degree);
            let source_faces = self.faces(&id.degree, k - 1);
            for (widx, wc) in witness.entries() {
                let shifted = source_faces
                    .get(*widx)
                    .vertices()
                    .iter()
                    .map(|&v| complex.vertex_index(&source.vertices()[v].mul(delta)).ok_or(Error::NotHomogeneous))
                    .collect::<Result<Vec<_>>>()?;
                let idx = table
                    .index_of(&Face::new(shifted))
                    .ok_or_else(|| Error::NotASyzygy("coefficient with a constant term".into()))?;
                pairs.push((idx, self.field.mul(c, wc)));
            }
        }
        let z = SparseVec::from_pairs(&self.field, pairs);
        let basis = self.basis(m, k - 1);
        let coords = basis
            .express(&self.field, &z)
            .map_err(|_| Error::LiftFailed(format!("shifted witnesses do not form a cycle at {m}")))?;
        if coords.lambda.iter().any(|x| !self.field.is_zero(x)) {
            return Err(Error::LiftFailed(format!("shifted witnesses are not a boundary at {m}")));
        }
        let mut chain = SparseVec::zero();
        for (mu, pre) in coords.mu.iter().zip(basis.preimages()) {
            chain = chain.axpy(&self.field, mu, pre);
        }
        Ok(chain)
    }

    /// Adds cycles to `chain` so that its `ψ_k` image also covers `residual`,
    /// an element of degree `m` in the kernel of `φ`.
    fn correct_lift(
        &mut self,
        k: usize,
        m: &SDegree,
        mut chain: ChainVector<F::Elem>,
        residual: &ModuleElement<F::Elem>,
    ) -> Result<ChainVector<F::Elem>> {
        self.stats.lift_corrections += 1;
        let basis = self.basis(m, k);
        let cycles: Vec<ChainVector<F::Elem>> =
            basis.boundary_part().iter().chain(basis.homology_part()).cloned().collect();
        let mut keys: BTreeMap<(Slot, Monomial), usize> = BTreeMap::new();
        let mut encode = |v: &ModuleElement<F::Elem>, f: &F| {
            let pairs: Vec<_> = v
                .terms()
                .map(|(s, a, c)| {
                    let n = keys.len();
                    (*keys.entry((s.clone(), a.clone())).or_insert(n), c.clone())
                })
                .collect();
            SparseVec::from_pairs(f, pairs)
        };
        let mut solver = SpanSolver::new();
        let mut used = Vec::new();
        for (i, z) in cycles.iter().enumerate() {
            let image = self.psi_chain(k, m, z)?;
            if solver.insert(&self.field, &encode(&image, &self.field)).is_some() {
                used.push(i);
            }
        }
        let target = encode(residual, &self.field);
        let y = solver
            .express(&self.field, &target)
            .ok_or_else(|| Error::LiftFailed(format!("ψ_{k} does not reach the input at {m}")))?;
        for (s, c) in y.entries() {
            chain = chain.axpy(&self.field, c, &cycles[used[*s]]);
        }
        Ok(chain)
    }

    /// Writes a binomial of `I_S` in terms of minimal binomial generators.
    pub fn minimalize_binomial(&mut self, g: &Binomial) -> Result<DecompositionResult<F::Elem>> {
        let u = ModuleElement::ring(g.to_polynomial(&self.field));
        let degree = self.semigroup.degree_of(g.lead());
        let v = self.minimalize(0, &u)?;
        Ok(DecompositionResult::from_element(0, degree, &v))
    }

    /// Writes a level-`k` syzygy (a vector over level `k-1` generators) in
    /// terms of minimal level-`k` generators.
    pub fn minimalize_syzygy(&mut self, k: usize, g: &ModuleElement<F::Elem>) -> Result<DecompositionResult<F::Elem>> {
        if k == 0 {
            return Err(Error::NotASyzygy("syzygies start at level 1".into()));
        }
        for (slot, _) in g.entries() {
            match slot {
                Slot::Gen(id) if id.level == k - 1 => {}
                Slot::Gen(id) => return Err(Error::NotASyzygy(format!("{id} has the wrong level"))),
                Slot::Ring => return Err(Error::NotASyzygy("ring entry in a module element".into())),
            }
        }
        let degree = g.degree(&self.semigroup)?.ok_or_else(|| Error::NotASyzygy("zero vector".into()))?;
        if !self.apply_phi(g)?.is_zero() {
            return Err(Error::NotASyzygy("image under φ is nonzero".into()));
        }
        let v = self.minimalize(k, g)?;
        Ok(DecompositionResult::from_element(k, degree, &v))
    }

    /// `Σ f_j value(b_j)` for a decomposition.
    pub fn reconstruct(&self, d: &DecompositionResult<F::Elem>) -> Result<ModuleElement<F::Elem>> {
        self.apply_phi(&d.as_element(&self.field))
    }
}
