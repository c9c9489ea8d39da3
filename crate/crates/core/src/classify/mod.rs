//! Per-interval classification and the closed-form criteria for toric and
//! cube intervals.

pub mod coatoms;
pub mod product;
pub mod runs;

pub use coatoms::{
    atoms_single_run, coatoms_closed_form, template_word, CaseKind, CaseSelector, CaseTag, ClosedFormCoatoms, Direction,
};
pub use product::{generate_family, star_power, star_r, FamilyKind};
pub use runs::{
    minimal_runs, predict_cube_by_pattern, predict_cube_by_proper, predict_toric_by_distinct,
    witness_non_cube, Run, RunExpression,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{bvw, reduced_g_u};
use crate::interval::BruhatInterval;
use crate::perm::Permutation;
use crate::polytope::{is_combinatorial_cube, BipPolytope};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub v: Permutation,
    pub w: Permutation,
    #[serde(skip)]
    pub length_diff: usize,
    pub dim: usize,
    pub toric: bool,
    #[serde(rename = "boolean")]
    pub boolean_interval: bool,
    pub cube: bool,
    pub complexity: usize,
    #[serde(rename = "d_v")]
    pub degree_v: usize,
    #[serde(rename = "d_w")]
    pub degree_w: usize,
    #[serde(rename = "atoms")]
    pub atom_count: usize,
    #[serde(rename = "coatoms")]
    pub coatom_count: usize,
}

/// Classification by the combinatorial route alone: dimension from
/// `B_{v,w}`, degrees from the arc counts of `G̃_v` and `G̃_w`, and cube as
/// toric and Boolean.
pub fn classify_combinatorial(interval: &BruhatInterval) -> Result<ClassificationReport> {
    let (v, w) = (interval.bottom(), interval.top());
    let length_diff = interval.rank();
    let dim = v.degree() - bvw(&v, &w)?.len();
    let toric = dim == length_diff;
    let boolean_interval = interval.is_boolean();
    Ok(ClassificationReport {
        v,
        w,
        length_diff,
        dim,
        toric,
        boolean_interval,
        cube: toric && boolean_interval,
        complexity: length_diff - dim,
        degree_v: reduced_g_u(&v, &w, &v)?.arcs().len(),
        degree_w: reduced_g_u(&v, &w, &w)?.arcs().len(),
        atom_count: interval.atoms().len(),
        coatom_count: interval.coatoms().len(),
    })
}

/// Checks a report against the exact hull of `Q_{v,w}`.
pub fn cross_check(report: &ClassificationReport, q: &BipPolytope) -> Result<()> {
    let mismatch = |detail: String| Error::CrossCheck {
        v: report.v,
        w: report.w,
        detail,
    };
    if q.dim() != report.dim {
        return Err(mismatch(format!(
            "dimension {} from graphs, {} from the hull",
            report.dim,
            q.dim()
        )));
    }
    let geometric_cube = is_combinatorial_cube(&q.lattice);
    if geometric_cube != report.cube {
        return Err(mismatch(format!(
            "toric and Boolean gives cube={}, the face lattice gives cube={}",
            report.cube, geometric_cube
        )));
    }
    for (z, d) in [(report.v, report.degree_v), (report.w, report.degree_w)] {
        let g = q.degree_at(&z)?;
        if g != d {
            return Err(mismatch(format!("degree at {z}: {d} from graphs, {g} from the hull")));
        }
    }
    Ok(())
}

/// Full classification with the geometric cross-check.
pub fn classify(v: Permutation, w: Permutation) -> Result<ClassificationReport> {
    let q = BipPolytope::new(v, w)?;
    let report = classify_combinatorial(&q.interval)?;
    cross_check(&report, &q)?;
    Ok(report)
}

/// `dim Q_{v,w} = ℓ(w) − ℓ(v)`, with the dimension read off `B_{v,w}`.
pub fn is_toric(v: &Permutation, w: &Permutation) -> Result<bool> {
    if !v.bruhat_le(w) {
        return Err(Error::NotBelow { v: *v, w: *w });
    }
    Ok(v.degree() - bvw(v, w)?.len() == w.length() - v.length())
}
