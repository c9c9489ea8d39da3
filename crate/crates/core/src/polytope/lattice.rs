use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use super::hull::raw_hull;
use super::linalg::{gcd_all, maximal_minor_gcd};

/// Facet `normal · x ≥ offset` with primitive inward normal in ambient
/// coordinates. `vertices` indexes [`FaceLattice::vertex_coords`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub dim: isize,
    pub vertices: FixedBitSet,
}

#[derive(Clone, Debug)]
pub struct LatticePolytope {
    points: Vec<Vec<i64>>,
    dim: usize,
    coords: Vec<usize>,
    vertex_mask: Vec<bool>,
}

impl LatticePolytope {
    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Ambient coordinates onto which the polytope projects injectively.
    pub fn projection(&self) -> &[usize] {
        &self.coords
    }

    pub fn vertex_mask(&self) -> &[bool] {
        &self.vertex_mask
    }

    pub fn is_vertex(&self, point: usize) -> bool {
        self.vertex_mask[point]
    }
}

/// Faces of a polytope as vertex subsets, closed under intersection and
/// ordered by dimension and then by vertex set.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    dim: usize,
    coords: Vec<usize>,
    vertex_points: Vec<usize>,
    vertex_coords: Vec<Vec<i64>>,
    facets: Vec<Facet>,
    faces: Vec<Face>,
    edges: Vec<(usize, usize)>,
}

/// Exact hull of `points` (distinct, equal length).
pub fn hull(points: &[Vec<i64>]) -> (LatticePolytope, FaceLattice) {
    let raw = raw_hull(points);
    let np = points.len();
    let vertex_mask: Vec<bool> = if raw.dim == 0 {
        vec![true; np]
    } else {
        (0..np)
            .map(|k| {
                let mut meet = FixedBitSet::with_capacity(np);
                meet.insert_range(..);
                for f in raw.facets.iter().filter(|f| f.points.contains(k)) {
                    meet.intersect_with(&f.points);
                }
                meet.count_ones(..) == 1
            })
            .collect()
    };
    let vertex_points: Vec<usize> = (0..np).filter(|&k| vertex_mask[k]).collect();
    let mut position = vec![usize::MAX; np];
    for (pos, &k) in vertex_points.iter().enumerate() {
        position[k] = pos;
    }
    let ambient = points[0].len();
    let facets: Vec<Facet> = raw
        .facets
        .iter()
        .map(|f| {
            let mut normal = vec![0i128; ambient];
            for (slot, &c) in raw.coords.iter().enumerate() {
                normal[c] = f.normal[slot];
            }
            let mut all = normal.clone();
            all.push(f.offset);
            let g = gcd_all(&all).max(1);
            Facet {
                normal: normal.iter().map(|x| (x / g) as i64).collect(),
                offset: (f.offset / g) as i64,
                vertices: f
                    .points
                    .ones()
                    .filter(|&k| vertex_mask[k])
                    .map(|k| position[k])
                    .collect(),
            }
        })
        .collect();
    let vertex_coords: Vec<Vec<i64>> = vertex_points.iter().map(|&k| points[k].clone()).collect();
    let polytope = LatticePolytope {
        points: points.to_vec(),
        dim: raw.dim,
        coords: raw.coords.clone(),
        vertex_mask,
    };
    let lattice = FaceLattice::from_facets(raw.dim, raw.coords, vertex_points, vertex_coords, facets);
    (polytope, lattice)
}

impl FaceLattice {
    fn from_facets(
        dim: usize,
        coords: Vec<usize>,
        vertex_points: Vec<usize>,
        vertex_coords: Vec<Vec<i64>>,
        facets: Vec<Facet>,
    ) -> Self {
        let nv = vertex_coords.len();
        let facet_sets: Vec<FixedBitSet> = facets
            .iter()
            .map(|f| {
                let mut s = FixedBitSet::with_capacity(nv);
                for &v in &f.vertices {
                    s.insert(v);
                }
                s
            })
            .collect();
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut queue: VecDeque<FixedBitSet> = VecDeque::new();
        let mut full = FixedBitSet::with_capacity(nv);
        full.insert_range(..);
        for s in [full, FixedBitSet::with_capacity(nv)]
            .into_iter()
            .chain(facet_sets.iter().cloned())
        {
            if seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
        while let Some(f) = queue.pop_front() {
            for g in &facet_sets {
                let mut h = f.clone();
                h.intersect_with(g);
                if !seen.contains(&h) {
                    seen.insert(h.clone());
                    queue.push_back(h);
                }
            }
        }
        let mut by_size: Vec<FixedBitSet> = seen.into_iter().collect();
        by_size.sort_by(|a, b| a.count_ones(..).cmp(&b.count_ones(..)).then_with(|| a.cmp(b)));
        let mut dims: HashMap<FixedBitSet, isize> = HashMap::with_capacity(by_size.len());
        for f in &by_size {
            let d = if f.is_clear() {
                -1
            } else {
                let mut best = -1;
                for g in facet_sets.iter().filter(|g| !f.is_subset(g)) {
                    let mut h = f.clone();
                    h.intersect_with(g);
                    best = best.max(dims[&h]);
                }
                best + 1
            };
            dims.insert(f.clone(), d);
        }
        let mut faces: Vec<Face> = by_size
            .into_iter()
            .map(|f| Face {
                dim: dims[&f],
                vertices: f,
            })
            .collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertices.cmp(&b.vertices)));
        let edges = faces
            .iter()
            .filter(|f| f.dim == 1)
            .map(|f| {
                let mut it = f.vertices.ones();
                let a = it.next().expect("edge with no vertices");
                let b = it.next().expect("edge with one vertex");
                debug_assert!(it.next().is_none());
                (a, b)
            })
            .collect();
        FaceLattice {
            dim,
            coords,
            vertex_points,
            vertex_coords,
            facets,
            faces,
            edges,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_coords.len()
    }

    pub fn vertex_coords(&self) -> &[Vec<i64>] {
        &self.vertex_coords
    }

    /// Index into the original point list of each vertex.
    pub fn vertex_points(&self) -> &[usize] {
        &self.vertex_points
    }

    pub fn vertex_of_point(&self, point: usize) -> Option<usize> {
        self.vertex_points.binary_search(&point).ok()
    }

    pub fn projection(&self) -> &[usize] {
        &self.coords
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Every face including the empty face and the polytope itself.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces_of_dim(&self, k: isize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == k)
    }

    /// `(f_0, ..., f_{d-1})`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim];
        for face in &self.faces {
            if face.dim >= 0 && (face.dim as usize) < self.dim {
                f[face.dim as usize] += 1;
            }
        }
        f
    }

    /// Euler relation `Σ (−1)^k f_k = 1 − (−1)^d` over proper faces.
    pub fn satisfies_euler(&self) -> bool {
        let alt: i64 = self
            .f_vector()
            .iter()
            .enumerate()
            .map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) })
            .sum();
        let d = self.dim as i64;
        alt == 1 - if d % 2 == 0 { 1 } else { -1 }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, vertex: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == vertex {
                    Some(b)
                } else if b == vertex {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn vertex_degree(&self, vertex: usize) -> usize {
        self.neighbors(vertex).len()
    }

    pub fn is_simple_vertex(&self, vertex: usize) -> bool {
        self.vertex_degree(vertex) == self.dim
    }

    pub fn is_simple(&self) -> bool {
        (0..self.vertex_count()).all(|v| self.is_simple_vertex(v))
    }

    /// Primitive edge directions leaving `vertex`.
    pub fn edge_directions(&self, vertex: usize) -> Vec<Vec<i64>> {
        self.neighbors(vertex)
            .into_iter()
            .map(|m| {
                let mut d: Vec<i128> = self.vertex_coords[m]
                    .iter()
                    .zip(&self.vertex_coords[vertex])
                    .map(|(a, b)| (*a - *b) as i128)
                    .collect();
                super::linalg::make_primitive(&mut d);
                d.into_iter().map(|x| x as i64).collect()
            })
            .collect()
    }

    /// Simple, and the edge directions at `vertex` generate the lattice
    /// `ℤⁿ ∩ span` of the polytope's directions.
    pub fn is_smooth_vertex(&self, vertex: usize) -> bool {
        if !self.is_simple_vertex(vertex) {
            return false;
        }
        let cols: Vec<Vec<i128>> = self
            .edge_directions(vertex)
            .into_iter()
            .map(|d| d.into_iter().map(|x| x as i128).collect())
            .collect();
        maximal_minor_gcd(&cols) == 1
    }

    /// Vertex sets of the facets as sorted lists.
    pub fn facet_vertex_lists(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|f| f.vertices.clone()).collect()
    }

    /// A face's vertices as a sorted list.
    pub fn face_vertices(face: &Face) -> Vec<usize> {
        face.vertices.ones().collect()
    }
}
