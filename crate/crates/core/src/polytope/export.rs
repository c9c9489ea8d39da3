use std::fmt::Write as _;

use serde_json::{json, Value};

use super::lattice::FaceLattice;
use crate::error::{Error, Result};

pub fn face_lattice_json(f: &FaceLattice) -> Value {
    let facets: Vec<Value> = f
        .facets()
        .iter()
        .map(|x| json!({"normal": x.normal, "offset": x.offset, "vertices": x.vertices}))
        .collect();
    json!({
        "dim": f.dim(),
        "f_vector": f.f_vector(),
        "facets": facets,
    })
}

/// OFF file of a 3-dimensional polytope in its projected coordinates, each
/// facet listed counterclockwise as seen from outside.
pub fn to_off(f: &FaceLattice) -> Result<String> {
    if f.dim() != 3 {
        return Err(Error::Precondition(format!(
            "OFF export needs a 3-dimensional polytope, got dimension {}",
            f.dim()
        )));
    }
    let proj = f.projection();
    let pts: Vec<[i64; 3]> = f
        .vertex_coords()
        .iter()
        .map(|x| [x[proj[0]], x[proj[1]], x[proj[2]]])
        .collect();
    let mut s = String::new();
    let _ = writeln!(s, "OFF");
    let _ = writeln!(s, "{} {} {}", pts.len(), f.facets().len(), f.edges().len());
    for p in &pts {
        let _ = writeln!(s, "{} {} {}", p[0], p[1], p[2]);
    }
    for facet in f.facets() {
        let mut cycle = polygon_cycle(f, &facet.vertices);
        let inward = [
            facet.normal[proj[0]],
            facet.normal[proj[1]],
            facet.normal[proj[2]],
        ];
        let (a, b, c) = (pts[cycle[0]], pts[cycle[1]], pts[cycle[2]]);
        let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
        let w = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
        let cross = [
            u[1] * w[2] - u[2] * w[1],
            u[2] * w[0] - u[0] * w[2],
            u[0] * w[1] - u[1] * w[0],
        ];
        let toward_inside: i64 = (0..3).map(|k| cross[k] * inward[k]).sum();
        if toward_inside > 0 {
            cycle.reverse();
        }
        let idx: Vec<String> = cycle.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "{} {}", cycle.len(), idx.join(" "));
    }
    Ok(s)
}

fn polygon_cycle(f: &FaceLattice, vertices: &[usize]) -> Vec<usize> {
    let edges: Vec<(usize, usize)> = f
        .edges()
        .iter()
        .copied()
        .filter(|(a, b)| vertices.contains(a) && vertices.contains(b))
        .collect();
    let mut cycle = vec![vertices[0]];
    let mut prev = usize::MAX;
    while cycle.len() < vertices.len() {
        let cur = *cycle.last().unwrap();
        let next = edges
            .iter()
            .find_map(|&(a, b)| {
                if a == cur && b != prev {
                    Some(b)
                } else if b == cur && a != prev {
                    Some(a)
                } else {
                    None
                }
            })
            .expect("polygon boundary is a cycle");
        prev = cur;
        cycle.push(next);
    }
    cycle
}
