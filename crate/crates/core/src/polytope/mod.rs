//! Exact geometry of Bruhat interval polytopes.
//!
//! `Q_{v,w}` is the convex hull of the vectors `(z(1), ..., z(n))` for
//! `z ∈ [v, w]`. All arithmetic is over the integers.

pub mod export;
mod hull;
pub mod iso;
pub mod lattice;
pub mod linalg;

pub use iso::{incidence_isomorphism, Incidence, IncidenceIso};
pub use lattice::{hull, Face, FaceLattice, Facet, LatticePolytope};

use crate::error::{Error, Result};
use crate::interval::BruhatInterval;
use crate::perm::Permutation;

pub fn interval_points(interval: &BruhatInterval) -> Vec<Vec<i64>> {
    interval.elements().iter().map(|z| z.as_point()).collect()
}

/// `Q_{v,w}` together with its interval. Vertex `k` of the lattice is
/// element `k` of the interval.
#[derive(Clone, Debug)]
pub struct BipPolytope {
    pub interval: BruhatInterval,
    pub polytope: LatticePolytope,
    pub lattice: FaceLattice,
}

impl BipPolytope {
    pub fn new(v: Permutation, w: Permutation) -> Result<Self> {
        Self::from_interval(BruhatInterval::new(v, w)?)
    }

    pub fn from_interval(interval: BruhatInterval) -> Result<Self> {
        let (polytope, lattice) = hull(&interval_points(&interval));
        if let Some(k) = polytope.vertex_mask().iter().position(|&b| !b) {
            return Err(Error::CrossCheck {
                v: interval.bottom(),
                w: interval.top(),
                detail: format!("{} is not a vertex", interval.elements()[k]),
            });
        }
        Ok(BipPolytope {
            interval,
            polytope,
            lattice,
        })
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn vertex_of(&self, z: &Permutation) -> Result<usize> {
        self.interval.index_of(z).ok_or_else(|| {
            Error::Precondition(format!(
                "{z} is not a vertex of Q[{}, {}]",
                self.interval.bottom(),
                self.interval.top()
            ))
        })
    }

    pub fn degree_at(&self, z: &Permutation) -> Result<usize> {
        Ok(self.lattice.vertex_degree(self.vertex_of(z)?))
    }

    /// A face's vertex set as permutations, in interval order.
    pub fn face_elements(&self, face: &Face) -> Vec<Permutation> {
        face.vertices
            .ones()
            .map(|k| self.interval.elements()[k])
            .collect()
    }
}

/// Affine dimension of `Q_{v,w}` from the rank of its point differences.
pub fn dim_geometric(v: &Permutation, w: &Permutation) -> Result<usize> {
    let i = BruhatInterval::new(*v, *w)?;
    let pts = interval_points(&i);
    let base = &pts[0];
    let diffs: Vec<Vec<i128>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| (a - b) as i128).collect())
        .collect();
    Ok(linalg::rank(&diffs))
}

pub fn combinatorial_equivalence(a: &FaceLattice, b: &FaceLattice) -> Option<IncidenceIso> {
    if a.dim() != b.dim() || a.f_vector() != b.f_vector() {
        return None;
    }
    incidence_isomorphism(&Incidence::of(a), &Incidence::of(b))
}

pub fn combinatorially_equivalent(a: &FaceLattice, b: &FaceLattice) -> bool {
    combinatorial_equivalence(a, b).is_some()
}

/// Face lattice isomorphic to that of `[0,1]^d`.
pub fn is_combinatorial_cube(f: &FaceLattice) -> bool {
    let d = f.dim();
    if d >= usize::BITS as usize - 1 || f.vertex_count() != 1 << d {
        return false;
    }
    if !(0..f.vertex_count()).all(|v| f.vertex_degree(v) == d) {
        return false;
    }
    if !f.faces_of_dim(2).all(|face| face.vertices.count_ones(..) == 4) {
        return false;
    }
    incidence_isomorphism(&Incidence::of(f), &Incidence::cube(d)).is_some()
}
