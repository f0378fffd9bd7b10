//! The gcd complex `∇_m` on a fiber and the comparison complex `Δ_m` on the
//! generator indices.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, TermOrder};
use crate::semigroup::{SDegree, Semigroup};

/// A face given by strictly increasing vertex indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(Vec<usize>);

impl Face {
    /// Sorts and deduplicates the given indices.
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Face(vertices)
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension `|F| - 1`; the empty face has dimension -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    /// Codimension-one faces with their boundary signs: dropping the vertex at
    /// position `p` contributes `(-1)^p`.
    pub fn boundary(&self) -> impl Iterator<Item = (i64, Face)> + '_ {
        (0..self.0.len()).map(move |p| {
            let mut rest = self.0.clone();
            rest.remove(p);
            (if p % 2 == 0 { 1 } else { -1 }, Face(rest))
        })
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl From<Vec<usize>> for Face {
    fn from(v: Vec<usize>) -> Self {
        Face::new(v)
    }
}

/// What the homology code needs from a complex: its faces per dimension in a
/// fixed order, and whether the empty face is present.
pub trait SimplicialComplex {
    fn faces_of_dim(&self, j: usize) -> Vec<Face>;

    fn has_empty_face(&self) -> bool;

    /// One more than the largest face dimension (0 if there are no vertices).
    fn dim_bound(&self) -> usize;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NablaComplex {
    degree: SDegree,
    order: TermOrder,
    vertices: Vec<Monomial>,
    cover: Vec<Vec<usize>>,
}

impl NablaComplex {
    fn from_vertices(degree: SDegree, order: TermOrder, nvars: usize, vertices: Vec<Monomial>) -> Self {
        let cover = (0..nvars)
            .map(|i| (0..vertices.len()).filter(|&v| vertices[v].exponents()[i] > 0).collect())
            .collect();
        NablaComplex { degree, order, vertices, cover }
    }

    pub fn degree(&self) -> &SDegree {
        &self.degree
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn vertices(&self) -> &[Monomial] {
        &self.vertices
    }

    pub fn vertex_index(&self, a: &Monomial) -> Option<usize> {
        // vertices are sorted decreasing
        self.vertices.binary_search_by(|v| self.order.cmp(a, v)).ok()
    }

    /// `D_i`: indices of vertices divisible by `x_i`.
    pub fn cover(&self) -> &[Vec<usize>] {
        &self.cover
    }

    pub fn gcd(&self, face: &Face) -> Option<Monomial> {
        Monomial::gcd_all(face.vertices().iter().map(|&v| &self.vertices[v]))
    }

    pub fn is_face(&self, face: &Face) -> bool {
        !face.is_empty()
            && face.vertices().iter().all(|&v| v < self.vertices.len())
            && self.cover.iter().any(|d| face.vertices().iter().all(|v| d.binary_search(v).is_ok()))
    }

    /// Maximal cover sets; every face lies in one of them.
    pub fn facets(&self) -> Vec<Face> {
        let sets: BTreeSet<&Vec<usize>> = self.cover.iter().filter(|d| !d.is_empty()).collect();
        sets.iter()
            .filter(|d| !sets.iter().any(|e| e.len() > d.len() && d.iter().all(|v| e.binary_search(v).is_ok())))
            .map(|d| Face((*d).clone()))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

impl SimplicialComplex for NablaComplex {
    /// Faces sorted by gcd, largest first; ties by vertex-index sequence.
    fn faces_of_dim(&self, j: usize) -> Vec<Face> {
        let mut faces = BTreeSet::new();
        for d in &self.cover {
            if d.len() > j {
                faces.extend(d.iter().copied().combinations(j + 1));
            }
        }
        let mut keyed: Vec<(Monomial, Face)> = faces
            .into_iter()
            .map(|f| {
                let face = Face(f);
                (self.gcd(&face).expect("nonempty face"), face)
            })
            .collect();
        keyed.sort_by(|(ga, fa), (gb, fb)| self.order.cmp(gb, ga).then_with(|| fa.cmp(fb)));
        keyed.into_iter().map(|(_, f)| f).collect()
    }

    fn has_empty_face(&self) -> bool {
        true
    }

    fn dim_bound(&self) -> usize {
        self.cover.iter().map(Vec::len).max().unwrap_or(0)
    }
}

pub fn build_nabla(s: &Semigroup, m: &SDegree, order: TermOrder) -> NablaComplex {
    NablaComplex::from_vertices(m.clone(), order, s.nvars(), s.fiber(m, order))
}

/// The complex at `m - deg(β)` obtained from `K` by dividing out `x^β`.
pub fn restrict_nabla(s: &Semigroup, k: &NablaComplex, beta: &Monomial) -> Result<NablaComplex> {
    s.check_monomial(beta)?;
    if !s.s_less(&s.degree_of(beta), k.degree()) {
        return Err(Error::DegreeMismatch);
    }
    let target = k.degree().sub(&s.degree_of(beta));
    let mut vertices: Vec<Monomial> = k.vertices().iter().filter_map(|a| beta.quotient_of(a)).collect();
    k.order.sort_decreasing(&mut vertices);
    Ok(NablaComplex::from_vertices(target, k.order, s.nvars(), vertices))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaComplex {
    degree: SDegree,
    nvars: usize,
    // faces[k] holds the faces with k + 1 elements, lexicographically ordered
    faces: Vec<Vec<Face>>,
    has_empty: bool,
}

impl DeltaComplex {
    pub fn degree(&self) -> &SDegree {
        &self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn contains(&self, face: &Face) -> bool {
        if face.is_empty() {
            return self.has_empty;
        }
        self.faces.get(face.len() - 1).is_some_and(|fs| fs.binary_search(face).is_ok())
    }
}

impl SimplicialComplex for DeltaComplex {
    fn faces_of_dim(&self, j: usize) -> Vec<Face> {
        self.faces.get(j).cloned().unwrap_or_default()
    }

    fn has_empty_face(&self) -> bool {
        self.has_empty
    }

    fn dim_bound(&self) -> usize {
        self.faces.iter().rposition(|fs| !fs.is_empty()).map_or(0, |k| k + 1)
    }
}

/// Subsets `F` of the generator indices with `m - n_F` in `S`.
pub fn build_delta(s: &Semigroup, m: &SDegree) -> DeltaComplex {
    let r = s.nvars();
    let mut faces = vec![Vec::new(); r];
    let has_empty = s.member(m);
    if has_empty {
        for size in 1..=r {
            for subset in (0..r).combinations(size) {
                let mut rest = m.clone();
                for &i in &subset {
                    rest = rest.sub(s.matrix().generator(i));
                }
                if s.member(&rest) {
                    faces[size - 1].push(Face(subset));
                }
            }
        }
    }
    DeltaComplex { degree: m.clone(), nvars: r, faces, has_empty }
}
