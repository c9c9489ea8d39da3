//! Exact convex hull by the double description method.
//!
//! The points are first projected onto a set of coordinates that is
//! injective on their affine hull, so the polytope is full-dimensional in
//! `d` dimensions. Its facets are the extreme rays of the cone
//! `{(c, a) : c + a·y ≥ 0 for every point y}`, which is built one point at a
//! time from a simplicial starting cone.

use fixedbitset::FixedBitSet;

use super::linalg::{adjugate, det, dot, make_primitive, pivot_columns};

/// Facet inequality `a·y ≥ b` in the projected coordinates, with its
/// incident points.
#[derive(Clone, Debug)]
pub(crate) struct RawFacet {
    pub normal: Vec<i128>,
    pub offset: i128,
    pub points: FixedBitSet,
}

#[derive(Clone, Debug)]
pub(crate) struct RawHull {
    pub dim: usize,
    /// Ambient coordinates kept by the projection.
    pub coords: Vec<usize>,
    pub facets: Vec<RawFacet>,
}

pub(crate) fn affine_frame(points: &[Vec<i64>]) -> (usize, Vec<usize>) {
    let base = &points[0];
    let diffs: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| (*a - *b) as i128).collect())
        .collect();
    let coords = pivot_columns(&diffs);
    (coords.len(), coords)
}

pub(crate) fn raw_hull(points: &[Vec<i64>]) -> RawHull {
    assert!(!points.is_empty(), "hull of an empty point set");
    let (dim, coords) = affine_frame(points);
    if dim == 0 {
        return RawHull {
            dim,
            coords,
            facets: Vec::new(),
        };
    }
    let rows: Vec<Vec<i128>> = points
        .iter()
        .map(|p| {
            std::iter::once(1i128)
                .chain(coords.iter().map(|&c| p[c] as i128))
                .collect()
        })
        .collect();
    let cone = Cone::build(&rows);
    let facets = cone
        .rays
        .into_iter()
        .map(|r| RawFacet {
            offset: -r.coords[0],
            normal: r.coords[1..].to_vec(),
            points: r.zeros,
        })
        .collect();
    RawHull {
        dim,
        coords,
        facets,
    }
}

#[derive(Clone, Debug)]
struct Ray {
    coords: Vec<i128>,
    /// Rows processed so far on which the ray vanishes.
    zeros: FixedBitSet,
}

struct Cone {
    rays: Vec<Ray>,
}

impl Cone {
    fn build(rows: &[Vec<i128>]) -> Cone {
        let dd = rows[0].len();
        let m = rows.len();
        let basis = independent_rows(rows, dd);
        let a: Vec<Vec<i128>> = basis.iter().map(|&k| rows[k].clone()).collect();
        let adj = adjugate(&a);
        let sign = det(&a).signum();
        let mut rays = Vec::with_capacity(dd);
        for col in 0..dd {
            let mut coords: Vec<i128> = adj.iter().map(|row| sign * row[col]).collect();
            make_primitive(&mut coords);
            let mut zeros = FixedBitSet::with_capacity(m);
            for (k, &row) in basis.iter().enumerate() {
                if k != col {
                    zeros.insert(row);
                }
            }
            rays.push(Ray { coords, zeros });
        }
        let mut cone = Cone { rays };
        let mut in_basis = vec![false; m];
        for &k in &basis {
            in_basis[k] = true;
        }
        for k in (0..m).filter(|&k| !in_basis[k]) {
            cone.add_row(k, &rows[k], dd);
        }
        cone
    }

    fn add_row(&mut self, index: usize, row: &[i128], dd: usize) {
        let values: Vec<i128> = self.rays.iter().map(|r| dot(&r.coords, row)).collect();
        let pos: Vec<usize> = (0..self.rays.len()).filter(|&k| values[k] > 0).collect();
        let neg: Vec<usize> = (0..self.rays.len()).filter(|&k| values[k] < 0).collect();
        if neg.is_empty() {
            for (k, r) in self.rays.iter_mut().enumerate() {
                if values[k] == 0 {
                    r.zeros.insert(index);
                }
            }
            return;
        }
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                if !self.adjacent(p, q, dd) {
                    continue;
                }
                let (rp, rq) = (&self.rays[p], &self.rays[q]);
                let mut coords: Vec<i128> = rp
                    .coords
                    .iter()
                    .zip(&rq.coords)
                    .map(|(x, y)| values[p] * y - values[q] * x)
                    .collect();
                make_primitive(&mut coords);
                let mut zeros = rp.zeros.clone();
                zeros.intersect_with(&rq.zeros);
                zeros.insert(index);
                fresh.push(Ray { coords, zeros });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(self.rays.len() - neg.len() + fresh.len());
        for (k, mut r) in std::mem::take(&mut self.rays).into_iter().enumerate() {
            if values[k] >= 0 {
                if values[k] == 0 {
                    r.zeros.insert(index);
                }
                kept.push(r);
            }
        }
        kept.extend(fresh);
        self.rays = kept;
    }

    /// Combinatorial adjacency test for extreme rays of a pointed cone.
    fn adjacent(&self, p: usize, q: usize, dd: usize) -> bool {
        let common: FixedBitSet = self.rays[p].zeros.intersection(&self.rays[q].zeros).collect();
        if common.count_ones(..) + 2 < dd {
            return false;
        }
        !self
            .rays
            .iter()
            .enumerate()
            .any(|(k, r)| k != p && k != q && common.is_subset(&r.zeros))
    }
}

fn independent_rows(rows: &[Vec<i128>], target: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::with_capacity(target);
    let mut mat: Vec<Vec<i128>> = Vec::with_capacity(target);
    for (k, r) in rows.iter().enumerate() {
        mat.push(r.clone());
        if super::linalg::rank(&mat) == mat.len() {
            chosen.push(k);
            if chosen.len() == target {
                break;
            }
        } else {
            mat.pop();
        }
    }
    assert_eq!(chosen.len(), target, "rows do not span the expected dimension");
    chosen
}
