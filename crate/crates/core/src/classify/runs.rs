//! Products of distinct simple transpositions as products of runs
//! `s(p,q)`, and the criteria built on them.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{symmetric_group, Permutation, Transposition, Word, MAX_ENUMERATED_DEGREE};

/// `s(a,b) = s_a s_{a+1} ⋯ s_b` when `a ≤ b`, and `s_a s_{a−1} ⋯ s_b`
/// otherwise.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Run {
    pub a: usize,
    pub b: usize,
}

impl Run {
    pub fn new(a: usize, b: usize) -> Self {
        Run { a, b }
    }

    pub fn low(&self) -> usize {
        self.a.min(self.b)
    }

    pub fn high(&self) -> usize {
        self.a.max(self.b)
    }

    pub fn is_ascending(&self) -> bool {
        self.a <= self.b
    }

    pub fn letters(&self) -> Vec<usize> {
        if self.is_ascending() {
            (self.a..=self.b).collect()
        } else {
            (self.b..=self.a).rev().collect()
        }
    }

    /// The index intervals touch, so the runs do not commute.
    pub fn is_adjacent(&self, other: &Run) -> bool {
        self.high() + 1 == other.low() || other.high() + 1 == self.low()
    }

    fn conjugate(&self, n: usize) -> Run {
        Run::new(n - self.a, n - self.b)
    }
}

impl fmt::Display for Run {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s({},{})", self.a, self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunExpression {
    pub runs: Vec<Run>,
    /// No two runs have adjacent index intervals.
    pub proper: bool,
}

impl RunExpression {
    pub fn from_runs(runs: Vec<Run>) -> Self {
        let proper = runs
            .iter()
            .enumerate()
            .all(|(k, r)| runs[k + 1..].iter().all(|s| !r.is_adjacent(s)));
        RunExpression { runs, proper }
    }

    pub fn word(&self) -> Word {
        Word(self.runs.iter().flat_map(|r| r.letters()).collect())
    }

    pub fn len(&self) -> usize {
        self.runs.iter().map(|r| r.high() - r.low() + 1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Largest index used, so the product lives in `S_{max+1}` or larger.
    pub fn max_index(&self) -> usize {
        self.runs.iter().map(|r| r.high()).max().unwrap_or(0)
    }

    pub fn product(&self, n: usize) -> Result<Permutation> {
        self.word().evaluate(n)
    }
}

impl fmt::Display for RunExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "e");
        }
        for r in &self.runs {
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Rewrites `s_{j_1} ⋯ s_{j_m}` with distinct `j_i` as a product of the
/// fewest runs with disjoint index intervals.
pub fn minimal_runs(indices: &[usize]) -> Result<RunExpression> {
    let mut position = std::collections::BTreeMap::new();
    for (k, &i) in indices.iter().enumerate() {
        if i == 0 {
            return Err(Error::Precondition("simple transposition indices start at 1".into()));
        }
        if position.insert(i, k).is_some() {
            return Err(Error::RepeatedIndex(i));
        }
    }
    let sorted: Vec<usize> = position.keys().copied().collect();
    // s_i before s_{i+1} in the word
    let ascending_link = |i: usize| position[&i] < position[&(i + 1)];

    let mut runs: Vec<Run> = Vec::new();
    // (x, y): run x comes before run y
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut k = 0;
    while k < sorted.len() {
        let start = sorted[k];
        let mut end = start;
        let mut dir: Option<bool> = None;
        while position.contains_key(&(end + 1)) {
            let d = ascending_link(end);
            if dir.is_some_and(|x| x != d) {
                break;
            }
            dir = Some(d);
            end += 1;
        }
        let run = if dir == Some(false) { Run::new(end, start) } else { Run::new(start, end) };
        let idx = runs.len();
        if idx > 0 && runs[idx - 1].high() + 1 == start {
            if ascending_link(start - 1) {
                edges.push((idx - 1, idx));
            } else {
                edges.push((idx, idx - 1));
            }
        }
        runs.push(run);
        k += end - start + 1;
    }

    let mut indegree = vec![0usize; runs.len()];
    for &(_, b) in &edges {
        indegree[b] += 1;
    }
    let mut ready: BTreeSet<(usize, usize)> = (0..runs.len())
        .filter(|&x| indegree[x] == 0)
        .map(|x| (runs[x].low(), x))
        .collect();
    let mut ordered = Vec::with_capacity(runs.len());
    while let Some((_, x)) = ready.pop_first() {
        ordered.push(runs[x]);
        for &(a, b) in &edges {
            if a == x {
                indegree[b] -= 1;
                if indegree[b] == 0 {
                    ready.insert((runs[b].low(), b));
                }
            }
        }
    }
    Ok(RunExpression::from_runs(ordered))
}

fn distinct_factor(v: &Permutation, w: &Permutation) -> Option<Permutation> {
    let m = w.length().checked_sub(v.length())?;
    let right = v.inverse().compose_unchecked(w);
    if right.length() == m {
        return Some(right);
    }
    let left = w.compose_unchecked(&v.inverse());
    (left.length() == m).then_some(left)
}

/// Toric prediction from a length-additive factorization `w = v·u` or
/// `w = u·v`: `Some(true)` iff `u` is a product of distinct simple
/// transpositions. `None` when neither factorization is length-additive.
pub fn predict_toric_by_distinct(v: &Permutation, w: &Permutation) -> Result<Option<bool>> {
    if v.degree() != w.degree() {
        return Err(Error::DegreeMismatch {
            left: v.degree(),
            right: w.degree(),
        });
    }
    Ok(distinct_factor(v, w).map(|u| u.length() == u.support().len()))
}

/// Cube prediction for `w = v·u` or `w = u·v` where `u` is the product of
/// `runs`: true exactly when the runs are proper.
pub fn predict_cube_by_proper(v: &Permutation, w: &Permutation, runs: &RunExpression) -> Result<bool> {
    let n = v.degree();
    if w.degree() != n {
        return Err(Error::DegreeMismatch { left: n, right: w.degree() });
    }
    let u = runs.product(n)?;
    let additive = w.length() == v.length() + runs.len();
    if !additive || (v.compose_unchecked(&u) != *w && u.compose_unchecked(v) != *w) {
        return Err(Error::Precondition(format!(
            "{w} is not {v} times {runs} with additive length"
        )));
    }
    Ok(runs.proper)
}

/// `w` avoids 3412 and 321, so every `Q_{v,w}` with `v < w` is a cube.
pub fn predict_cube_by_pattern(w: &Permutation) -> bool {
    w.length() == w.support().len()
}

/// For runs that are not proper, a pair `(v, w)` with `w = v·(product)` and
/// `ℓ(w) − ℓ(v) + 1` coatoms, so `Q_{v,w}` is toric but not a cube.
pub fn witness_non_cube(runs: &RunExpression, n: usize) -> Result<(Permutation, Permutation)> {
    if runs.proper {
        return Err(Error::Precondition(format!("{runs} is proper")));
    }
    if runs.max_index() >= n {
        return Err(Error::IndexOutOfRange {
            index: runs.max_index(),
            max: n - 1,
        });
    }
    let Some(reordered) = front_adjacent_pair(&runs.runs) else {
        return witness_by_search(runs, n);
    };
    let expr = RunExpression::from_runs(reordered);
    if expr.runs[0].is_ascending() {
        return witness_normalized(&expr, n);
    }
    let conj = RunExpression::from_runs(expr.runs.iter().map(|r| r.conjugate(n)).collect());
    let (v, w) = witness_normalized(&conj, n)?;
    Ok((v.conjugate_by_longest(), w.conjugate_by_longest()))
}

fn coatom_count(v: &Permutation, w: &Permutation) -> usize {
    let n = w.degree();
    let mut count = 0;
    for i in 1..n {
        for j in i + 1..=n {
            let z = w.mul_transposition(Transposition { i, j });
            if z.length() + 1 == w.length() && v.bruhat_le(&z) {
                count += 1;
            }
        }
    }
    count
}

/// Used when no adjacent pair can be commuted to the front, e.g.
/// `s(2,1)s(5,5)s(3,4)`: the shortest `v`, then lexicographically least,
/// with `ℓ(v·u) = ℓ(v) + ℓ(u)` and `ℓ(u) + 1` coatoms.
fn witness_by_search(runs: &RunExpression, n: usize) -> Result<(Permutation, Permutation)> {
    if n > MAX_ENUMERATED_DEGREE {
        return Err(Error::DegreeTooLarge(n));
    }
    let u = runs.product(n)?;
    let m = runs.len();
    let mut candidates: Vec<Permutation> = symmetric_group(n).to_vec();
    candidates.sort_by_key(|v| (v.length(), *v));
    candidates
        .into_iter()
        .map(|v| (v, v.compose_unchecked(&u)))
        .find(|(v, w)| w.length() == v.length() + m && coatom_count(v, w) == m + 1)
        .ok_or_else(|| Error::Precondition(format!("no witness for {runs} in S_{n}")))
}

fn front_adjacent_pair(runs: &[Run]) -> Option<Vec<Run>> {
    for y in 1..runs.len() {
        for x in 0..y {
            if !runs[x].is_adjacent(&runs[y]) {
                continue;
            }
            let x_free = runs[..x].iter().all(|r| !r.is_adjacent(&runs[x]));
            let y_free = (0..y).filter(|&k| k != x).all(|k| !runs[k].is_adjacent(&runs[y]));
            if x_free && y_free {
                let mut out = vec![runs[x], runs[y]];
                out.extend((0..runs.len()).filter(|&k| k != x && k != y).map(|k| runs[k]));
                return Some(out);
            }
        }
    }
    None
}

fn witness_normalized(expr: &RunExpression, n: usize) -> Result<(Permutation, Permutation)> {
    let (a, b) = (expr.runs[0].a, expr.runs[0].b);
    let (c, d) = (expr.runs[1].a, expr.runs[1].b);
    let v = if b + 1 == d && c > d {
        Permutation::simple(n, d)
    } else if a >= 2 && a - 1 == c && c >= d && a < b {
        let mut word = RunExpression::from_runs(vec![Run::new(a + 1, b)]).word().0;
        word.push(c);
        Word(word).evaluate(n)?
    } else if a >= 2 && a - 1 == d && c < d {
        Permutation::simple(n, d)
    } else {
        return Err(Error::Precondition(format!(
            "{}{} is not a minimal adjacent pair",
            expr.runs[0], expr.runs[1]
        )));
    };
    let w = v.compose_unchecked(&expr.product(n)?);
    Ok((v, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::BruhatInterval;
    use crate::perm::all_permutations;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn worked_run_expressions() {
        let r = minimal_runs(&[1, 3, 8, 2, 4, 7, 6]).unwrap();
        assert_eq!(r.to_string(), "s(3,4)s(1,2)s(8,6)");
        assert!(!r.proper);
        let r = minimal_runs(&[2, 8, 4, 7, 1, 6]).unwrap();
        assert_eq!(r.to_string(), "s(2,1)s(4,4)s(8,6)");
        assert!(r.proper);
        let r = minimal_runs(&[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(r.to_string(), "s(1,5)");
        assert!(r.proper);
        assert_eq!(minimal_runs(&[3, 1, 2]).unwrap().to_string(), "s(3,3)s(1,2)");
        assert_eq!(minimal_runs(&[]).unwrap().to_string(), "e");
        assert!(matches!(minimal_runs(&[1, 2, 1]), Err(Error::RepeatedIndex(1))));
    }

    #[test]
    fn distinct_prediction() {
        assert_eq!(predict_toric_by_distinct(&p("1324"), &p("3412")).unwrap(), Some(true));
        assert_eq!(predict_toric_by_distinct(&p("1243"), &p("3412")).unwrap(), None);
        assert_eq!(predict_toric_by_distinct(&p("12"), &p("21")).unwrap(), Some(true));
        assert_eq!(predict_toric_by_distinct(&p("123"), &p("321")).unwrap(), Some(false));
        assert_eq!(predict_toric_by_distinct(&p("1324"), &p("4231")).unwrap(), None);
    }

    #[test]
    fn distinct_prediction_agrees_with_toricness_in_s4() {
        for w in all_permutations(4) {
            for v in all_permutations(4).into_iter().filter(|v| v.bruhat_le(&w)) {
                if let Some(t) = predict_toric_by_distinct(&v, &w).unwrap() {
                    assert_eq!(t, super::super::is_toric(&v, &w).unwrap(), "{v} {w}");
                }
            }
        }
    }

    #[test]
    fn proper_prediction() {
        let runs = minimal_runs(&[3, 1, 2]).unwrap();
        assert!(!predict_cube_by_proper(&p("1324"), &p("3412"), &runs).unwrap());
        let single = minimal_runs(&[1, 2, 3]).unwrap();
        assert!(predict_cube_by_proper(&p("1234"), &p("2341"), &single).unwrap());
        assert!(predict_cube_by_proper(&p("1234"), &p("4231"), &single).is_err());
    }

    #[test]
    fn pattern_prediction() {
        assert!(predict_cube_by_pattern(&p("2143")));
        assert!(!predict_cube_by_pattern(&p("3412")));
        assert!(!predict_cube_by_pattern(&p("321")));
        for w in all_permutations(5) {
            let avoiding = w.avoids(&p("3412")) && w.avoids(&p("321"));
            assert_eq!(predict_cube_by_pattern(&w), avoiding);
        }
    }

    #[test]
    fn small_witness() {
        let runs = minimal_runs(&[3, 1, 2]).unwrap();
        let (v, w) = witness_non_cube(&runs, 4).unwrap();
        assert_eq!((v, w), (p("1324"), p("3412")));
        let proper = minimal_runs(&[1, 3]).unwrap();
        assert!(witness_non_cube(&proper, 4).is_err());
    }

    fn coatom_excess_holds(v: Permutation, w: Permutation) -> bool {
        let iv = BruhatInterval::new(v, w).unwrap();
        iv.coatoms().len() == w.length() - v.length() + 1
    }

    proptest! {
        #[test]
        fn runs_preserve_the_product(word in Just((1..7usize).collect::<Vec<_>>()).prop_shuffle(), keep in 1..=6usize) {
            let word = &word[..keep];
            let r = minimal_runs(word).unwrap();
            prop_assert_eq!(r.product(7).unwrap(), Word(word.to_vec()).evaluate(7).unwrap());
            prop_assert_eq!(r.len(), keep);
            let mut letters: Vec<usize> = r.runs.iter().flat_map(|x| x.letters()).collect();
            letters.sort_unstable();
            let mut want = word.to_vec();
            want.sort_unstable();
            prop_assert_eq!(letters, want);
        }

        #[test]
        fn witnesses_have_an_extra_coatom(word in Just((1..6usize).collect::<Vec<_>>()).prop_shuffle(), keep in 2..=5usize) {
            let r = minimal_runs(&word[..keep]).unwrap();
            if !r.proper {
                let (v, w) = witness_non_cube(&r, 6).unwrap();
                prop_assert_eq!(w.length(), v.length() + r.len());
                prop_assert!(coatom_excess_holds(v, w));
                prop_assert_eq!(coatom_count(&v, &w), r.len() + 1);
            }
        }
    }
}
