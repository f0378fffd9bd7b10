use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;

use super::algebra::{GeneratorId, ModuleElement};
use crate::homology::ChainVector;
use crate::semigroup::SDegree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorRecord<E> {
    pub id: GeneratorId,
    /// The generator as an element of `R` (level 0) or of the free module on
    /// the previous level's generators.
    pub value: ModuleElement<E>,
    /// The homology representative it came from, as a chain on the faces of
    /// `∇_degree` in the fixed order.
    pub witness: ChainVector<E>,
}

impl<E> GeneratorRecord<E> {
    pub fn level(&self) -> usize {
        self.id.level
    }

    pub fn degree(&self) -> &SDegree {
        &self.id.degree
    }
}

type Key = (BigRational, GeneratorId);

/// Append-only store of discovered minimal generators, ordered per level by
/// weight, then degree, then witness index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorRegistry<E> {
    levels: Vec<BTreeMap<Key, GeneratorRecord<E>>>,
    weights: HashMap<GeneratorId, BigRational>,
}

impl<E> Default for GeneratorRegistry<E> {
    fn default() -> Self {
        GeneratorRegistry { levels: Vec::new(), weights: HashMap::new() }
    }
}

impl<E: Clone> GeneratorRegistry<E> {
    pub fn new() -> Self {
        GeneratorRegistry::default()
    }

    pub fn contains(&self, id: &GeneratorId) -> bool {
        self.weights.contains_key(id)
    }

    pub fn get(&self, id: &GeneratorId) -> Option<&GeneratorRecord<E>> {
        let w = self.weights.get(id)?;
        self.levels.get(id.level)?.get(&(w.clone(), id.clone()))
    }

    /// Inserts a record; an id that is already present keeps its first value.
    pub fn insert(&mut self, weight: BigRational, record: GeneratorRecord<E>) {
        let id = record.id.clone();
        if self.contains(&id) {
            return;
        }
        while self.levels.len() <= id.level {
            self.levels.push(BTreeMap::new());
        }
        self.weights.insert(id.clone(), weight.clone());
        self.levels[id.level].insert((weight, id), record);
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, j: usize) -> impl Iterator<Item = &GeneratorRecord<E>> {
        self.levels.get(j).into_iter().flat_map(|l| l.values())
    }

    pub fn count(&self, level: usize, degree: &SDegree) -> usize {
        self.level(level).filter(|r| r.degree() == degree).count()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn records(&self) -> impl Iterator<Item = &GeneratorRecord<E>> {
        self.levels.iter().flat_map(|l| l.values())
    }
}
