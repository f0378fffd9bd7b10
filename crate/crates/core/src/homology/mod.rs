//! Reduced simplicial homology with fixed bases of cycles and boundaries.

mod gauss;
mod sparse;
mod span;
mod store;

use std::collections::HashMap;

use crate::complexes::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::Field;

pub use gauss::{gauss_reduce, Reduction};
pub use sparse::SparseVec;
pub use span::SpanSolver;
pub use store::{cache_key, BasisStore, ChainBasisRecord, MemoryStore};

/// A `j`-chain: coordinates in the fixed order of `faces_of_dim(j)`.
pub type ChainVector<E> = SparseVec<E>;

/// The faces of one dimension with a reverse index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FaceTable {
    faces: Vec<Face>,
    index: HashMap<Face, usize>,
}

impl FaceTable {
    pub fn new(faces: Vec<Face>) -> Self {
        let index = faces.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        FaceTable { faces, index }
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn get(&self, i: usize) -> &Face {
        &self.faces[i]
    }

    pub fn index_of(&self, face: &Face) -> Option<usize> {
        self.index.get(face).copied()
    }
}

/// The integer matrix of `∂_j` with columns indexed by `j`-faces and rows by
/// `(j-1)`-faces (for `j = 0`, the single empty face, if present).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl BoundaryMatrix {
    pub fn new(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        BoundaryMatrix { rows, columns }
    }

    /// `∂_j` between the given face tables; `lower` is `None` for `j = 0`.
    pub fn between(upper: &FaceTable, lower: Option<&FaceTable>, has_empty_face: bool) -> Self {
        match lower {
            None => {
                let rows = usize::from(has_empty_face);
                let col = if has_empty_face { vec![(0, 1)] } else { Vec::new() };
                BoundaryMatrix { rows, columns: vec![col; upper.len()] }
            }
            Some(lower) => {
                let columns = upper
                    .faces()
                    .iter()
                    .map(|face| {
                        let mut col: Vec<(usize, i64)> = face
                            .boundary()
                            .map(|(sign, sub)| {
                                (lower.index_of(&sub).expect("complex closed under subsets"), sign)
                            })
                            .collect();
                        col.sort_unstable();
                        col
                    })
                    .collect();
                BoundaryMatrix { rows: lower.len(), columns }
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<(usize, i64)>] {
        &self.columns
    }

    pub fn entry(&self, r: usize, c: usize) -> i64 {
        self.columns[c].iter().find(|(i, _)| *i == r).map_or(0, |(_, v)| *v)
    }

    pub fn apply<F: Field>(&self, f: &F, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let pairs = v.entries().iter().flat_map(|(c, x)| {
            self.columns[*c].iter().map(move |(r, s)| (*r, f.mul(x, &f.from_int(*s))))
        });
        SparseVec::from_pairs(f, pairs.collect::<Vec<_>>())
    }

    /// Integer matrix product `self * other`, as dense rows.
    pub fn compose(&self, other: &BoundaryMatrix) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; other.cols()]; self.rows];
        for (c, col) in other.columns.iter().enumerate() {
            for &(k, v) in col {
                for &(r, w) in &self.columns[k] {
                    out[r][c] += w * v;
                }
            }
        }
        out
    }
}

pub fn face_table(k: &impl SimplicialComplex, j: usize) -> FaceTable {
    FaceTable::new(k.faces_of_dim(j))
}

pub fn boundary_matrix(k: &impl SimplicialComplex, j: usize) -> BoundaryMatrix {
    let upper = face_table(k, j);
    if j == 0 {
        BoundaryMatrix::between(&upper, None, k.has_empty_face())
    } else {
        BoundaryMatrix::between(&upper, Some(&face_table(k, j - 1)), k.has_empty_face())
    }
}

/// A fixed basis `ĥ_1..ĥ_t', b̂_1..b̂_t''` of the `j`-cycles: the `ĥ` span the
/// boundaries and the classes of the `b̂` form a basis of reduced homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainBasis<E> {
    dim: usize,
    num_faces: usize,
    boundary: Vec<ChainVector<E>>,
    preimages: Vec<ChainVector<E>>,
    homology: Vec<ChainVector<E>>,
    solver: SpanSolver<E>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coordinates<E> {
    /// Coefficients on the homology representatives.
    pub lambda: Vec<E>,
    /// Coefficients on the boundary basis.
    pub mu: Vec<E>,
}

impl<E: Clone> ChainBasis<E> {
    /// Builds the basis from `∂_j` and `∂_{j+1}`.
    pub fn compute<F: Field<Elem = E>>(f: &F, dim: usize, lower: &BoundaryMatrix, upper: &BoundaryMatrix) -> Self {
        let red_lower = gauss_reduce(f, lower);
        let red_upper = gauss_reduce(f, upper);
        let boundary = red_upper.image().to_vec();
        let preimages = red_upper.q[..red_upper.rank].to_vec();
        let mut homology = Vec::new();
        let mut solver = SpanSolver::new();
        for h in &boundary {
            solver.insert(f, h).expect("image basis is independent");
        }
        for z in red_lower.kernel() {
            if solver.insert(f, z).is_some() {
                homology.push(z.clone());
            }
        }
        ChainBasis { dim, num_faces: lower.cols(), boundary, preimages, homology, solver }
    }

    pub fn from_parts<F: Field<Elem = E>>(
        f: &F,
        dim: usize,
        num_faces: usize,
        boundary: Vec<ChainVector<E>>,
        preimages: Vec<ChainVector<E>>,
        homology: Vec<ChainVector<E>>,
    ) -> Result<Self> {
        let mut solver = SpanSolver::new();
        for v in boundary.iter().chain(&homology) {
            if solver.insert(f, v).is_none() {
                return Err(Error::Parse("stored basis vectors are dependent".into()));
            }
        }
        if boundary.len() != preimages.len() {
            return Err(Error::Parse("boundary basis and preimages differ in length".into()));
        }
        Ok(ChainBasis { dim, num_faces, boundary, preimages, homology, solver })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_faces(&self) -> usize {
        self.num_faces
    }

    /// The `ĥ` vectors.
    pub fn boundary_part(&self) -> &[ChainVector<E>] {
        &self.boundary
    }

    /// For each `ĥ_i`, a `(j+1)`-chain whose boundary is `ĥ_i`.
    pub fn preimages(&self) -> &[ChainVector<E>] {
        &self.preimages
    }

    /// The `b̂` vectors.
    pub fn homology_part(&self) -> &[ChainVector<E>] {
        &self.homology
    }

    pub fn betti(&self) -> usize {
        self.homology.len()
    }

    pub fn cycle_rank(&self) -> usize {
        self.boundary.len() + self.homology.len()
    }

    /// Exact coordinates of a cycle in this basis.
    pub fn express<F: Field<Elem = E>>(&self, f: &F, z: &ChainVector<E>) -> Result<Coordinates<E>> {
        let coeffs = self.solver.express(f, z).ok_or(Error::NotACycle)?;
        let dense = coeffs.to_dense(f, self.cycle_rank());
        let t = self.boundary.len();
        Ok(Coordinates { mu: dense[..t].to_vec(), lambda: dense[t..].to_vec() })
    }

    pub fn is_boundary<F: Field<Elem = E>>(&self, f: &F, z: &ChainVector<E>) -> bool {
        self.express(f, z).is_ok_and(|c| c.lambda.iter().all(|x| f.is_zero(x)))
    }
}

pub fn fixed_cycle_basis<F: Field>(f: &F, k: &impl SimplicialComplex, j: usize) -> ChainBasis<F::Elem> {
    let faces_j = face_table(k, j);
    let faces_up = face_table(k, j + 1);
    let lower = if j == 0 {
        BoundaryMatrix::between(&faces_j, None, k.has_empty_face())
    } else {
        BoundaryMatrix::between(&faces_j, Some(&face_table(k, j - 1)), k.has_empty_face())
    };
    let upper = BoundaryMatrix::between(&faces_up, Some(&faces_j), k.has_empty_face());
    ChainBasis::compute(f, j, &lower, &upper)
}

pub fn express_in_basis<F: Field>(
    f: &F,
    z: &ChainVector<F::Elem>,
    basis: &ChainBasis<F::Elem>,
) -> Result<Coordinates<F::Elem>> {
    basis.express(f, z)
}

/// Rank of `H̃_j`, via ranks only.
pub fn betti_reduced<F: Field>(f: &F, k: &impl SimplicialComplex, j: usize) -> usize {
    let faces_j = face_table(k, j);
    if faces_j.is_empty() {
        return 0;
    }
    let lower = if j == 0 {
        BoundaryMatrix::between(&faces_j, None, k.has_empty_face())
    } else {
        BoundaryMatrix::between(&faces_j, Some(&face_table(k, j - 1)), k.has_empty_face())
    };
    let upper = BoundaryMatrix::between(&face_table(k, j + 1), Some(&faces_j), k.has_empty_face());
    let rank_lower = gauss_reduce(f, &lower).rank;
    let rank_upper = gauss_reduce(f, &upper).rank;
    faces_j.len() - rank_lower - rank_upper
}
