//! Closed-form coatoms and atoms for intervals `[v, w]` with
//! `w = v·s(a,b)·s(c,d)` and `ℓ(w) − ℓ(v) = n − 1`.
//!
//! Every coatom has the form `w·t_{i,j}` with `w(i) > w(j)` and no
//! `i < p < j` with `w(j) < w(p) < w(i)`. Each template adds one more
//! condition on the positions between `i` and `j`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{Permutation, Transposition, Word};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    Ascending,
    Descending,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseKind {
    SingleRun(Direction),
    I,
    II,
    III,
}

/// Which template matched. `conjugated` means the template matched
/// `(w0·v·w0, w0·w·w0)` rather than `(v, w)`; `k` is zero for single runs.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CaseTag {
    pub kind: CaseKind,
    pub k: usize,
    pub conjugated: bool,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CaseKind::SingleRun(Direction::Ascending) => write!(f, "single-run ascending")?,
            CaseKind::SingleRun(Direction::Descending) => write!(f, "single-run descending")?,
            CaseKind::I => write!(f, "I(k={})", self.k)?,
            CaseKind::II => write!(f, "II(k={})", self.k)?,
            CaseKind::III => write!(f, "III(k={})", self.k)?,
        }
        if self.conjugated {
            write!(f, " conjugated by w0")?;
        }
        Ok(())
    }
}

/// Which templates to try.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum CaseSelector {
    #[default]
    Auto,
    SingleRun,
    I,
    II,
    III,
}

impl std::str::FromStr for CaseSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(CaseSelector::Auto),
            "single-run" => Ok(CaseSelector::SingleRun),
            "I" => Ok(CaseSelector::I),
            "II" => Ok(CaseSelector::II),
            "III" => Ok(CaseSelector::III),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected auto, single-run, I, II or III".into(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormCoatoms {
    pub case: CaseTag,
    /// Sorted by `(length, one-line)`.
    pub coatoms: Vec<Permutation>,
    /// Pairs falling under the mixed clause, in the coordinates of the
    /// matched template.
    pub mixed_pairs: usize,
    /// Cube verdict from the case's counting criterion.
    pub cube: bool,
}

/// The word `u` with `w = v·u` for a template on `n` letters.
pub fn template_word(kind: CaseKind, n: usize, k: usize) -> Word {
    let up = |a: usize, b: usize| (a..=b).collect::<Vec<_>>();
    let down = |a: usize, b: usize| (b..=a).rev().collect::<Vec<_>>();
    let parts = match kind {
        CaseKind::SingleRun(Direction::Ascending) => vec![up(1, n - 1)],
        CaseKind::SingleRun(Direction::Descending) => vec![down(n - 1, 1)],
        CaseKind::I => vec![up(1, k - 1), down(n - 1, k)],
        CaseKind::II => vec![up(k, n - 1), down(k - 1, 1)],
        CaseKind::III => vec![up(k, n - 1), up(1, k - 1)],
    };
    Word(parts.concat())
}

fn matches_template(v: &Permutation, w: &Permutation, kind: CaseKind, k: usize) -> bool {
    let n = v.degree();
    let u = template_word(kind, n, k).evaluate(n).expect("template letters lie in range");
    v.compose_unchecked(&u) == *w && w.length() == v.length() + n - 1
}

fn kinds_for(selector: CaseSelector) -> Vec<CaseKind> {
    let single = [
        CaseKind::SingleRun(Direction::Ascending),
        CaseKind::SingleRun(Direction::Descending),
    ];
    match selector {
        CaseSelector::Auto => [&single[..], &[CaseKind::I, CaseKind::II, CaseKind::III]].concat(),
        CaseSelector::SingleRun => single.to_vec(),
        CaseSelector::I => vec![CaseKind::I],
        CaseSelector::II => vec![CaseKind::II],
        CaseSelector::III => vec![CaseKind::III],
    }
}

fn find_template(v: &Permutation, w: &Permutation, selector: CaseSelector) -> Option<(CaseKind, usize)> {
    let n = v.degree();
    for kind in kinds_for(selector) {
        let ks: Vec<usize> = match kind {
            CaseKind::SingleRun(_) => vec![0],
            _ if n >= 4 => (2..=n - 2).collect(),
            _ => Vec::new(),
        };
        for k in ks {
            if matches_template(v, w, kind, k) {
                return Some((kind, k));
            }
        }
    }
    None
}

/// Coatoms of `[v, w]` from the closed form of the first matching template.
/// Falls back to the `w0`-conjugated pair, mapping the answer back.
pub fn coatoms_closed_form(v: &Permutation, w: &Permutation, selector: CaseSelector) -> Result<ClosedFormCoatoms> {
    if v.degree() != w.degree() {
        return Err(Error::DegreeMismatch {
            left: v.degree(),
            right: w.degree(),
        });
    }
    if v.degree() < 2 {
        return Err(Error::TemplateMismatch(format!("[{v}, {w}] has no two-run template")));
    }
    if let Some((kind, k)) = find_template(v, w, selector) {
        return solve(w, kind, k, false);
    }
    let (cv, cw) = (v.conjugate_by_longest(), w.conjugate_by_longest());
    if let Some((kind, k)) = find_template(&cv, &cw, selector) {
        let mut r = solve(&cw, kind, k, true)?;
        r.coatoms = sorted(r.coatoms.iter().map(|z| z.conjugate_by_longest()).collect());
        return Ok(r);
    }
    Err(Error::TemplateMismatch(format!(
        "[{v}, {w}] matches no template with ℓ(w) − ℓ(v) = n − 1"
    )))
}

fn sorted(mut zs: Vec<Permutation>) -> Vec<Permutation> {
    zs.sort_by_key(|z| (z.length(), *z));
    zs
}

fn inequalities_hold(w: &Permutation, kind: CaseKind, k: usize) -> bool {
    let n = w.degree();
    let x = |i: usize| w.at(i);
    match kind {
        CaseKind::SingleRun(Direction::Ascending) => x(n) == 1,
        CaseKind::SingleRun(Direction::Descending) => x(1) == n,
        CaseKind::I => (k + 1..=n).all(|p| x(p) < x(k) || p == k) && (1..k).all(|p| x(k + 1) < x(p)),
        CaseKind::II => (2..=k).all(|p| x(p) < x(1)) && (k + 1..n).chain([1]).all(|p| x(n) < x(p)),
        CaseKind::III => {
            (1..k).all(|p| x(k) < x(p)) && (k + 1..n).chain([k - 1]).all(|p| x(n) < x(p))
        }
    }
}

fn solve(w: &Permutation, kind: CaseKind, k: usize, conjugated: bool) -> Result<ClosedFormCoatoms> {
    let n = w.degree();
    if !inequalities_hold(w, kind, k) {
        return Err(Error::TemplateMismatch(format!(
            "{w} violates the inequalities of case {kind:?} with k = {k}"
        )));
    }
    if kind == CaseKind::III && ((w.at(n) == 1) == (w.at(k) == 1)) {
        return Err(Error::TemplateMismatch(format!(
            "{w} must have exactly one of w({n}) = 1 and w({k}) = 1"
        )));
    }
    let x = |i: usize| w.at(i);
    let all = |lo: usize, hi: usize, f: &dyn Fn(usize) -> bool| (lo..hi).all(f);
    let mut coatoms = Vec::new();
    let mut mixed = 0;
    for i in 1..n {
        for j in i + 1..=n {
            if x(i) < x(j) || (i + 1..j).any(|p| x(j) < x(p) && x(p) < x(i)) {
                continue;
            }
            let above_i = |p: usize| x(i) < x(p);
            let below_j = |p: usize| x(p) < x(j);
            let (plain, mixed_clause) = match kind {
                CaseKind::SingleRun(Direction::Ascending) => (all(i + 1, j, &above_i), false),
                CaseKind::SingleRun(Direction::Descending) => (all(i + 1, j, &below_j), false),
                CaseKind::I => (
                    (j <= k + 1 && all(i + 1, j, &above_i)) || (k <= i && all(i + 1, j, &below_j)),
                    i < k && j > k + 1 && all(i + 1, k + 1, &above_i) && all(k + 1, j, &below_j),
                ),
                CaseKind::II => (
                    (j <= k && all(i + 1, j, &below_j)) || (k < i && all(i + 1, j, &above_i)),
                    i <= k && k < j && all(i + 1, k + 1, &below_j) && all(k + 1, j, &above_i),
                ),
                CaseKind::III => (
                    ((j <= k || k < i) && all(i + 1, j, &above_i))
                        || (i == k && x(n) == 1 && all(i + 1, j, &above_i)),
                    i < k && k < j && x(k) < x(j) && (i + 1..j).filter(|&p| p != k).all(above_i),
                ),
            };
            if plain || mixed_clause {
                coatoms.push(w.mul_transposition(Transposition { i, j }));
            }
            if mixed_clause {
                mixed += 1;
            }
        }
    }
    let cube = match kind {
        CaseKind::SingleRun(_) => true,
        CaseKind::I => mixed == 0,
        CaseKind::II => mixed == 1,
        CaseKind::III if x(n) == 1 => mixed == 0,
        CaseKind::III => mixed == 1,
    };
    Ok(ClosedFormCoatoms {
        case: CaseTag { kind, k, conjugated },
        coatoms: sorted(coatoms),
        mixed_pairs: mixed,
        cube,
    })
}

/// Atoms of `[v, v·s(1,n−1)]` (ascending, needs `v(1) = 1`) or
/// `[v, v·s(n−1,1)]` (descending, needs `v(n) = n`).
pub fn atoms_single_run(v: &Permutation, direction: Direction) -> Result<Vec<Permutation>> {
    let n = v.degree();
    let x = |i: usize| v.at(i);
    let mut atoms = Vec::with_capacity(n.saturating_sub(1));
    match direction {
        Direction::Ascending => {
            if n < 2 || x(1) != 1 {
                return Err(Error::Precondition(format!("{v} must start with 1")));
            }
            for j in 2..=n {
                let i = (1..j).rev().find(|&i| x(i) < x(j)).expect("v(1) = 1 lies below");
                atoms.push(v.mul_transposition(Transposition { i, j }));
            }
        }
        Direction::Descending => {
            if n < 2 || x(n) != n {
                return Err(Error::Precondition(format!("{v} must end with {n}")));
            }
            for i in 1..n {
                let j = (i + 1..=n).find(|&j| x(j) > x(i)).expect("v(n) = n lies above");
                atoms.push(v.mul_transposition(Transposition { i, j }));
            }
        }
    }
    Ok(sorted(atoms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn brute_coatoms(v: &Permutation, w: &Permutation) -> Vec<Permutation> {
        let n = w.degree();
        let mut out = Vec::new();
        for i in 1..n {
            for j in i + 1..=n {
                let z = w.mul_transposition(Transposition { i, j });
                if z.length() + 1 == w.length() && v.bruhat_le(&z) {
                    out.push(z);
                }
            }
        }
        sorted(out)
    }

    fn brute_atoms(v: &Permutation, w: &Permutation) -> Vec<Permutation> {
        let n = v.degree();
        let mut out = Vec::new();
        for i in 1..n {
            for j in i + 1..=n {
                let z = v.mul_transposition(Transposition { i, j });
                if z.length() == v.length() + 1 && z.bruhat_le(w) {
                    out.push(z);
                }
            }
        }
        sorted(out)
    }

    #[test]
    fn template_words() {
        assert_eq!(template_word(CaseKind::I, 5, 3).0, vec![1, 2, 4, 3]);
        assert_eq!(template_word(CaseKind::II, 5, 3).0, vec![3, 4, 2, 1]);
        assert_eq!(template_word(CaseKind::III, 5, 2).0, vec![2, 3, 4, 1]);
        assert_eq!(template_word(CaseKind::SingleRun(Direction::Descending), 4, 0).0, vec![3, 2, 1]);
    }

    #[test]
    fn single_run_atoms() {
        let v = p("14325");
        let asc = atoms_single_run(&v, Direction::Ascending).unwrap();
        assert_eq!(asc, sorted(["41325", "34125", "24315", "14352"].map(p).to_vec()));
        let desc = atoms_single_run(&v, Direction::Descending).unwrap();
        assert_eq!(desc, sorted(["41325", "15324", "14523", "14352"].map(p).to_vec()));
        assert!(atoms_single_run(&p("2134"), Direction::Ascending).is_err());
        assert!(atoms_single_run(&p("2143"), Direction::Descending).is_err());
    }

    #[test]
    fn single_run_atoms_match_brute_force() {
        for n in 2..=6 {
            let asc = template_word(CaseKind::SingleRun(Direction::Ascending), n, 0).evaluate(n).unwrap();
            let desc = template_word(CaseKind::SingleRun(Direction::Descending), n, 0).evaluate(n).unwrap();
            for v in all_permutations(n) {
                if v.at(1) == 1 {
                    let w = v.compose(&asc).unwrap();
                    assert_eq!(atoms_single_run(&v, Direction::Ascending).unwrap(), brute_atoms(&v, &w));
                }
                if v.at(n) == n {
                    let w = v.compose(&desc).unwrap();
                    assert_eq!(atoms_single_run(&v, Direction::Descending).unwrap(), brute_atoms(&v, &w));
                }
            }
        }
    }

    #[test]
    fn every_template_instance_in_s5_matches_brute_force() {
        let n = 5;
        let mut seen = 0;
        for w in all_permutations(n) {
            for kind in [CaseKind::I, CaseKind::II, CaseKind::III] {
                for k in 2..=n - 2 {
                    let u = template_word(kind, n, k).evaluate(n).unwrap();
                    let v = w.compose(&u.inverse()).unwrap();
                    if v.length() + n - 1 != w.length() {
                        continue;
                    }
                    let r = coatoms_closed_form(&v, &w, CaseSelector::Auto).unwrap();
                    assert_eq!(r.coatoms, brute_coatoms(&v, &w), "{v} {w} {}", r.case);
                    seen += 1;
                }
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn explicit_selector_and_mismatch() {
        let w = p("3412");
        let v = w.compose(&template_word(CaseKind::I, 4, 2).evaluate(4).unwrap().inverse()).unwrap();
        assert_eq!(v, p("1324"));
        let r = coatoms_closed_form(&v, &w, CaseSelector::I).unwrap();
        assert_eq!(r.case.kind, CaseKind::I);
        assert_eq!(r.coatoms.len(), 4);
        assert!(!r.cube);
        assert!(matches!(
            coatoms_closed_form(&v, &w, CaseSelector::SingleRun),
            Err(Error::TemplateMismatch(_))
        ));
        assert!(matches!(
            coatoms_closed_form(&p("1234"), &p("2143"), CaseSelector::Auto),
            Err(Error::TemplateMismatch(_))
        ));
        assert_eq!("II".parse::<CaseSelector>().unwrap(), CaseSelector::II);
        assert!("IV".parse::<CaseSelector>().is_err());
    }

    #[test]
    fn case_two_maxima_at_ten() {
        let n = 10;
        for (w, k) in [("[10,8,6,4,3,2,1,9,7,5]", 7), ("[10,8,6,4,2,9,7,5,3,1]", 5), ("[10,8,6,9,7,5,4,3,2,1]", 3)] {
            let w = p(w);
            let v = w.compose(&template_word(CaseKind::II, n, k).evaluate(n).unwrap().inverse()).unwrap();
            let r = coatoms_closed_form(&v, &w, CaseSelector::II).unwrap();
            assert_eq!(r.case.k, k);
            assert_eq!(r.mixed_pairs, k.min(n - k));
            assert_eq!(r.coatoms, brute_coatoms(&v, &w));
        }
    }

    #[test]
    fn case_three_maxima() {
        let (n, k) = (7, 3);
        let top: Vec<usize> = (n - k + 2..=n).collect();
        let mid: Vec<usize> = (3..=n - k + 1).collect();
        for (tail_first, last) in [(2, 1), (1, 2)] {
            // both reach k − 1, the most any i < k allows
            let bound = k - 1;
            let mut one_line = top.clone();
            one_line.push(tail_first);
            one_line.extend(&mid);
            one_line.push(last);
            let w = Permutation::from_one_line(&one_line).unwrap();
            let v = w.compose(&template_word(CaseKind::III, n, k).evaluate(n).unwrap().inverse()).unwrap();
            let r = coatoms_closed_form(&v, &w, CaseSelector::III).unwrap();
            assert_eq!(r.coatoms, brute_coatoms(&v, &w));
            assert_eq!(r.mixed_pairs, bound);
        }
    }
}
