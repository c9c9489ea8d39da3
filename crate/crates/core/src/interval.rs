//! Bruhat intervals `[v, w]` as ranked posets.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::perm::{symmetric_group, Permutation, Transposition, MAX_ENUMERATED_DEGREE};

/// A cover `elements[lower] ⋖ elements[upper]` with `upper = lower · t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cover {
    pub lower: usize,
    pub upper: usize,
    pub t: Transposition,
}

#[derive(Clone, Debug)]
pub struct BruhatInterval {
    v: Permutation,
    w: Permutation,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    covers: Vec<Cover>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

/// Witness that an interval is Boolean: `masks[k]` is the set of atoms
/// below `elements[k]`, as a bitmask over `atoms`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanWitness {
    pub atoms: Vec<Permutation>,
    pub masks: Vec<u64>,
}

impl BruhatInterval {
    pub fn new(v: Permutation, w: Permutation) -> Result<Self> {
        if v.degree() != w.degree() {
            return Err(Error::DegreeMismatch {
                left: v.degree(),
                right: w.degree(),
            });
        }
        if !v.bruhat_le(&w) {
            return Err(Error::NotBelow { v, w });
        }
        let mut elements = if v.degree() <= MAX_ENUMERATED_DEGREE {
            symmetric_group(v.degree())
                .iter()
                .filter(|z| v.bruhat_le(z) && z.bruhat_le(&w))
                .copied()
                .collect()
        } else {
            bfs_elements(v, w)
        };
        let base = v.length();
        elements.sort_by_key(|z| (z.length() - base, *z));
        Ok(Self::from_sorted(v, w, elements))
    }

    fn from_sorted(v: Permutation, w: Permutation, elements: Vec<Permutation>) -> Self {
        let index: HashMap<Permutation, usize> =
            elements.iter().enumerate().map(|(k, z)| (*z, k)).collect();
        let mut covers = Vec::new();
        let mut up = vec![Vec::new(); elements.len()];
        let mut down = vec![Vec::new(); elements.len()];
        for (lower, z) in elements.iter().enumerate() {
            for (t, zt) in z.covers_up(&w) {
                let upper = index[&zt];
                up[lower].push(covers.len());
                down[upper].push(covers.len());
                covers.push(Cover { lower, upper, t });
            }
        }
        BruhatInterval {
            v,
            w,
            elements,
            index,
            covers,
            up,
            down,
        }
    }

    pub fn bottom(&self) -> Permutation {
        self.v
    }

    pub fn top(&self) -> Permutation {
        self.w
    }

    pub fn degree(&self) -> usize {
        self.v.degree()
    }

    /// Elements sorted by rank, then lexicographically.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    pub fn index_of(&self, z: &Permutation) -> Option<usize> {
        self.index.get(z).copied()
    }

    pub fn contains(&self, z: &Permutation) -> bool {
        self.index.contains_key(z)
    }

    /// `ℓ(w) − ℓ(v)`.
    pub fn rank(&self) -> usize {
        self.w.length() - self.v.length()
    }

    pub fn rank_of(&self, k: usize) -> usize {
        self.elements[k].length() - self.v.length()
    }

    pub fn upper_covers(&self, k: usize) -> impl Iterator<Item = &Cover> {
        self.up[k].iter().map(move |&c| &self.covers[c])
    }

    pub fn lower_covers(&self, k: usize) -> impl Iterator<Item = &Cover> {
        self.down[k].iter().map(move |&c| &self.covers[c])
    }

    pub fn atoms(&self) -> Vec<Permutation> {
        self.upper_covers(0)
            .map(|c| self.elements[c.upper])
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn coatoms(&self) -> Vec<Permutation> {
        self.lower_covers(self.len() - 1)
            .map(|c| self.elements[c.lower])
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.rank() + 1];
        for k in 0..self.len() {
            sizes[self.rank_of(k)] += 1;
        }
        sizes
    }

    /// Atom-support map, returned only if it is a lattice isomorphism onto
    /// the subsets of the atoms.
    pub fn boolean_witness(&self) -> Option<BooleanWitness> {
        let m = self.rank();
        if m >= 64 || self.len() != 1usize << m {
            return None;
        }
        let atoms = self.atoms();
        if atoms.len() != m {
            return None;
        }
        let mut masks = vec![0u64; self.len()];
        for (bit, a) in atoms.iter().enumerate() {
            masks[self.index[a]] = 1 << bit;
        }
        for k in 1..self.len() {
            if self.rank_of(k) >= 2 {
                masks[k] = self
                    .lower_covers(k)
                    .fold(0, |acc, c| acc | masks[c.lower]);
            }
        }
        let mut seen = std::collections::HashSet::with_capacity(masks.len());
        if !masks.iter().all(|x| seen.insert(*x)) {
            return None;
        }
        let adds_one_bit = self.covers.iter().all(|c| {
            let (lo, hi) = (masks[c.lower], masks[c.upper]);
            lo & !hi == 0 && (hi & !lo).count_ones() == 1
        });
        let expected_covers = if m == 0 { 0 } else { m << (m - 1) };
        if adds_one_bit && self.covers.len() == expected_covers {
            Some(BooleanWitness { atoms, masks })
        } else {
            None
        }
    }

    pub fn is_boolean(&self) -> bool {
        self.boolean_witness().is_some()
    }

    /// Saturated chain from `v` to `w`, taking the lexicographically least
    /// upper cover at each step.
    pub fn maximal_chain(&self) -> Vec<Permutation> {
        let mut k = 0;
        let mut chain = vec![self.elements[0]];
        let top = self.len() - 1;
        while k != top {
            k = self
                .upper_covers(k)
                .map(|c| c.upper)
                .min_by_key(|&u| self.elements[u])
                .expect("graded interval has an upper cover below the top");
            chain.push(self.elements[k]);
        }
        chain
    }

    /// Every saturated chain from `v` to `w`. The count grows quickly, so
    /// this is meant for small intervals.
    pub fn maximal_chains(&self) -> Vec<Vec<Permutation>> {
        let mut out = Vec::new();
        let mut stack = vec![0];
        self.extend_chains(&mut stack, &mut out);
        out
    }

    fn extend_chains(&self, stack: &mut Vec<usize>, out: &mut Vec<Vec<Permutation>>) {
        let k = *stack.last().unwrap();
        if k == self.len() - 1 {
            out.push(stack.iter().map(|&i| self.elements[i]).collect());
            return;
        }
        for c in self.up[k].clone() {
            stack.push(self.covers[c].upper);
            self.extend_chains(stack, out);
            stack.pop();
        }
    }

    /// All pairs `x ≤ y` of elements, in index order.
    pub fn subintervals(&self) -> impl Iterator<Item = (Permutation, Permutation)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| {
            (i..n).filter_map(move |j| {
                let (x, y) = (self.elements[i], self.elements[j]);
                x.bruhat_le(&y).then_some((x, y))
            })
        })
    }

    /// The induced interval `[x, y]`, for `x ≤ y` both in `self`.
    pub fn subinterval(&self, x: Permutation, y: Permutation) -> Result<BruhatInterval> {
        if !self.contains(&x) || !self.contains(&y) {
            return Err(Error::Precondition(format!(
                "[{x}, {y}] is not inside [{}, {}]",
                self.v, self.w
            )));
        }
        if !x.bruhat_le(&y) {
            return Err(Error::NotBelow { v: x, w: y });
        }
        let elements = self
            .elements
            .iter()
            .filter(|z| x.bruhat_le(z) && z.bruhat_le(&y))
            .copied()
            .collect();
        Ok(Self::from_sorted(x, y, elements))
    }

    pub fn inverse(&self) -> BruhatInterval {
        let v = self.v.inverse();
        let w = self.w.inverse();
        let mut elements: Vec<Permutation> = self.elements.iter().map(|z| z.inverse()).collect();
        let base = v.length();
        elements.sort_by_key(|z| (z.length() - base, *z));
        Self::from_sorted(v, w, elements)
    }

    pub fn to_json(&self) -> Value {
        let elements: Vec<String> = self.elements.iter().map(|z| z.to_string()).collect();
        let covers: Vec<Value> = self
            .covers
            .iter()
            .map(|c| json!([c.lower, c.upper, c.t.to_string()]))
            .collect();
        json!({
            "v": self.v.to_string(),
            "w": self.w.to_string(),
            "elements": elements,
            "covers": covers,
        })
    }

    /// Hasse diagram in DOT, one rank per row with the top at the top.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph hasse {{");
        let _ = writeln!(s, "  rankdir=BT;");
        let _ = writeln!(s, "  node [shape=plaintext];");
        for r in 0..=self.rank() {
            let names: Vec<String> = (0..self.len())
                .filter(|&k| self.rank_of(k) == r)
                .map(|k| format!("\"{}\"", self.elements[k]))
                .collect();
            let _ = writeln!(s, "  {{ rank=same; {} }}", names.join("; "));
        }
        for c in &self.covers {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [arrowhead=none, label=\"{}\"];",
                self.elements[c.lower], self.elements[c.upper], c.t
            );
        }
        s.push_str("}\n");
        s
    }
}

fn bfs_elements(v: Permutation, w: Permutation) -> Vec<Permutation> {
    let mut seen = std::collections::HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(v);
    queue.push_back(v);
    while let Some(z) = queue.pop_front() {
        for (_, zt) in z.covers_up(&w) {
            if seen.insert(zt) {
                queue.push_back(zt);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn build_interval(v: Permutation, w: Permutation) -> Result<BruhatInterval> {
    BruhatInterval::new(v, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn iv(a: &str, b: &str) -> BruhatInterval {
        BruhatInterval::new(p(a), p(b)).unwrap()
    }

    fn binom(m: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (m - i) / (i + 1))
    }

    /// Counting conditions plus diamonds plus injective atom sets.
    fn boolean_by_counting(i: &BruhatInterval) -> bool {
        let m = i.rank();
        if i.len() != 1 << m {
            return false;
        }
        if i.level_sizes() != (0..=m).map(|k| binom(m, k)).collect::<Vec<_>>() {
            return false;
        }
        for (x, y) in i.subintervals() {
            if y.length() == x.length() + 2 && i.subinterval(x, y).unwrap().len() != 4 {
                return false;
            }
        }
        let atoms = i.atoms();
        let sets: std::collections::HashSet<Vec<bool>> = i
            .elements()
            .iter()
            .map(|z| atoms.iter().map(|a| a.bruhat_le(z)).collect())
            .collect();
        sets.len() == i.len()
    }

    #[test]
    fn interval_contents() {
        let i = iv("1324", "3412");
        let mut got: Vec<String> = i.elements().iter().map(|z| z.to_string()).collect();
        got.sort();
        assert_eq!(
            got,
            ["1324", "1342", "1423", "1432", "2314", "2413", "3124", "3142", "3214", "3412"]
        );
        assert_eq!(iv("2413", "2413").len(), 1);
        assert_eq!(iv("1234", "4321").len(), 24);
        assert!(matches!(
            BruhatInterval::new(p("2143"), p("1324")),
            Err(Error::NotBelow { .. })
        ));
    }

    #[test]
    fn atoms_and_coatoms() {
        let i = iv("13254", "35142");
        assert_eq!(i.atoms().len(), 6);
        let coatoms: Vec<Permutation> = ["15342", "25143", "31542", "34152", "35124"]
            .iter()
            .map(|s| p(s))
            .collect();
        assert_eq!(i.coatoms(), coatoms);
        let atoms: Vec<Permutation> = ["24315", "34125", "14352", "41325"]
            .iter()
            .map(|s| p(s))
            .collect();
        let mut atoms = atoms;
        atoms.sort();
        assert_eq!(iv("14325", "43251").atoms(), atoms);
        let v = p("2143");
        let vs = v.mul_transposition(Transposition::simple(2));
        assert_eq!(BruhatInterval::new(v, vs).unwrap().coatoms(), vec![v]);
    }

    #[test]
    fn booleanness() {
        let i = iv("1324", "4231");
        let wit = i.boolean_witness().unwrap();
        assert_eq!(wit.atoms.len(), 4);
        assert!(!iv("1324", "3412").is_boolean());
        assert!(iv("312", "312").is_boolean());
    }

    #[test]
    fn boolean_matches_counting_oracle() {
        for n in 1..=5 {
            let g = all_permutations(n);
            for v in &g {
                for w in &g {
                    if v.bruhat_le(w) {
                        let i = BruhatInterval::new(*v, *w).unwrap();
                        assert_eq!(i.is_boolean(), boolean_by_counting(&i), "[{v},{w}]");
                    }
                }
            }
        }
    }

    #[test]
    fn chains() {
        let i = iv("1324", "4231");
        let c = i.maximal_chain();
        assert_eq!(c.len(), 5);
        assert_eq!(c[0], p("1324"));
        assert_eq!(c[4], p("4231"));
        for pair in c.windows(2) {
            assert_eq!(pair[1].length(), pair[0].length() + 1);
            assert!(pair[0].bruhat_le(&pair[1]));
        }
        // s2 ⋖ s3s2 ⋖ s3s2s1 ⋖ s3s2s1s2 ⋖ s3s2s1s2s3
        let listed: Vec<Permutation> = [vec![2], vec![3, 2], vec![3, 2, 1], vec![3, 2, 1, 2], vec![3, 2, 1, 2, 3]]
            .into_iter()
            .map(|w| crate::perm::Word(w).evaluate(4).unwrap())
            .collect();
        assert_eq!(listed[0], p("1324"));
        assert!(i.maximal_chains().contains(&listed));
        assert_eq!(iv("21", "21").maximal_chain(), vec![p("21")]);
    }

    #[test]
    fn subinterval_pairs() {
        let i = iv("1324", "3412");
        let brute = i
            .elements()
            .iter()
            .flat_map(|x| i.elements().iter().map(move |y| (*x, *y)))
            .filter(|(x, y)| x.bruhat_le(y))
            .count();
        assert_eq!(i.subintervals().count(), brute);
        let pairs: Vec<_> = iv("1324", "4231").subintervals().collect();
        assert!(pairs.contains(&(p("1432"), p("2431"))));
        assert!(pairs.contains(&(p("1432"), p("4132"))));
        assert_eq!(iv("21", "21").subintervals().collect::<Vec<_>>(), vec![(p("21"), p("21"))]);
    }

    #[test]
    fn covers_match_length_oracle() {
        for (a, b) in [("1324", "3412"), ("1234", "4321"), ("13254", "35142")] {
            let i = iv(a, b);
            let mut brute = Vec::new();
            for (x, z) in i.elements().iter().enumerate() {
                for (y, zz) in i.elements().iter().enumerate() {
                    if zz.length() == z.length() + 1 && z.bruhat_le(zz) {
                        brute.push((x, y));
                    }
                }
            }
            let mut got: Vec<_> = i.covers().iter().map(|c| (c.lower, c.upper)).collect();
            brute.sort();
            got.sort();
            assert_eq!(got, brute);
            for c in i.covers() {
                assert_eq!(i.elements()[c.lower].mul_transposition(c.t), i.elements()[c.upper]);
            }
        }
    }

    #[test]
    fn every_length_two_interval_is_a_diamond() {
        let i = iv("1234", "4321");
        for (x, y) in i.subintervals() {
            if y.length() == x.length() + 2 {
                assert_eq!(i.subinterval(x, y).unwrap().len(), 4);
            }
        }
    }

    #[test]
    fn bfs_agrees_with_group_scan() {
        let (v, w) = (p("13254"), p("35142"));
        let mut a = bfs_elements(v, w);
        a.sort_by_key(|z| (z.length(), *z));
        assert_eq!(a, iv("13254", "35142").elements());
    }

    #[test]
    fn json_and_dot() {
        let i = iv("1324", "3412");
        let j = i.to_json();
        assert_eq!(j["elements"].as_array().unwrap().len(), 10);
        assert_eq!(j["v"], "1324");
        let dot = i.to_dot();
        assert_eq!(dot.matches("rank=same").count(), 4);
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((1..=n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_one_line(&v).unwrap())
    }

    proptest! {
        #[test]
        fn covers_invert(a in perm_strategy(5), b in perm_strategy(5)) {
            let (v, w) = if a.bruhat_le(&b) { (a, b) } else if b.bruhat_le(&a) { (b, a) } else { return Ok(()); };
            let i = BruhatInterval::new(v, w).unwrap();
            let inv = i.inverse();
            prop_assert_eq!(inv.len(), i.len());
            prop_assert_eq!(inv.covers().len(), i.covers().len());
            for c in i.covers() {
                let lo = inv.index_of(&i.elements()[c.lower].inverse()).unwrap();
                let hi = inv.index_of(&i.elements()[c.upper].inverse()).unwrap();
                prop_assert!(inv.upper_covers(lo).any(|d| d.upper == hi));
            }
            prop_assert_eq!(inv.bottom(), v.inverse());
            prop_assert_eq!(i.boolean_witness().is_some(), inv.is_boolean());
        }

        #[test]
        fn graded(a in perm_strategy(6), b in perm_strategy(6)) {
            let w = if a.bruhat_le(&b) { b } else { Permutation::longest(6) };
            let i = BruhatInterval::new(a, w).unwrap();
            prop_assert_eq!(i.level_sizes().iter().sum::<usize>(), i.len());
            prop_assert_eq!(i.maximal_chain().len(), i.rank() + 1);
            for c in i.covers() {
                prop_assert_eq!(i.rank_of(c.upper), i.rank_of(c.lower) + 1);
            }
        }
    }
}
