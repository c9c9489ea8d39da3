//! Permutations in one-line notation and the Bruhat order on the symmetric
//! group.
//!
//! A [`Permutation`] of degree `n` stores its one-line notation
//! `p(1) p(2) ... p(n)`. Composition follows `(p ∘ q)(i) = p(q(i))`, so
//! multiplying by a transposition on the right swaps two *positions* of the
//! one-line notation, while multiplying on the left swaps two *values*.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest degree a [`Permutation`] can have.
pub const MAX_DEGREE: usize = 16;

/// Largest degree for which [`symmetric_group`] materializes all elements.
pub const MAX_ENUMERATED_DEGREE: usize = 7;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Permutation {
    len: u8,
    entries: [u8; MAX_DEGREE],
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DEGREE, "degree {n} exceeds {MAX_DEGREE}");
        let mut entries = [0u8; MAX_DEGREE];
        for (i, e) in entries.iter_mut().take(n).enumerate() {
            *e = (i + 1) as u8;
        }
        Permutation {
            len: n as u8,
            entries,
        }
    }

    /// The longest element `w0 = n (n-1) ... 1`.
    pub fn longest(n: usize) -> Self {
        let mut p = Self::identity(n);
        p.entries[..n].reverse();
        p
    }

    /// Builds a permutation from its one-line notation (values `1..=n`).
    pub fn from_one_line(values: &[usize]) -> Result<Self> {
        let n = values.len();
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(n));
        }
        let mut seen = [false; MAX_DEGREE + 1];
        let mut entries = [0u8; MAX_DEGREE];
        for (k, &x) in values.iter().enumerate() {
            if x == 0 || x > n || seen[x] {
                return Err(Error::NotAPermutation {
                    n,
                    entries: values.to_vec(),
                });
            }
            seen[x] = true;
            entries[k] = x as u8;
        }
        Ok(Permutation {
            len: n as u8,
            entries,
        })
    }

    fn from_raw(n: usize, values: &[u8]) -> Self {
        let mut entries = [0u8; MAX_DEGREE];
        entries[..n].copy_from_slice(&values[..n]);
        Permutation {
            len: n as u8,
            entries,
        }
    }

    /// The simple transposition `s_i` in `S_n`.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "s_{i} is not a simple transposition of S_{n}");
        let mut p = Self::identity(n);
        p.entries.swap(i - 1, i);
        p
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.len as usize
    }

    /// `p(i)` for a 1-based position `i`.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.degree());
        self.entries[i - 1] as usize
    }

    /// One-line notation as raw bytes, values `1..=n`.
    #[inline]
    pub fn one_line(&self) -> &[u8] {
        &self.entries[..self.degree()]
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.one_line().iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.one_line()
            .iter()
            .enumerate()
            .all(|(k, &x)| x as usize == k + 1)
    }

    pub fn inverse(&self) -> Self {
        let n = self.degree();
        let mut entries = [0u8; MAX_DEGREE];
        for (k, &x) in self.one_line().iter().enumerate() {
            entries[x as usize - 1] = (k + 1) as u8;
        }
        Permutation {
            len: n as u8,
            entries,
        }
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_degrees(self, other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        let n = self.degree();
        let mut entries = [0u8; MAX_DEGREE];
        for (k, e) in entries.iter_mut().take(n).enumerate() {
            *e = self.entries[other.entries[k] as usize - 1];
        }
        Permutation {
            len: n as u8,
            entries,
        }
    }

    /// `self ∘ t`: swaps positions `t.i` and `t.j`.
    #[inline]
    pub fn mul_transposition(&self, t: Transposition) -> Self {
        debug_assert!(t.j <= self.degree());
        let mut p = *self;
        p.entries.swap(t.i - 1, t.j - 1);
        p
    }

    /// `t ∘ self`: swaps the values `t.i` and `t.j`.
    pub fn transposition_mul(&self, t: Transposition) -> Self {
        let mut p = *self;
        for e in p.entries.iter_mut().take(self.degree()) {
            if *e as usize == t.i {
                *e = t.j as u8;
            } else if *e as usize == t.j {
                *e = t.i as u8;
            }
        }
        p
    }

    /// `w0 ∘ self ∘ w0`; sends `s_i` to `s_{n-i}`.
    pub fn conjugate_by_longest(&self) -> Self {
        let n = self.degree();
        let mut entries = [0u8; MAX_DEGREE];
        for (k, e) in entries.iter_mut().take(n).enumerate() {
            *e = (n + 1 - self.entries[n - 1 - k] as usize) as u8;
        }
        Permutation {
            len: n as u8,
            entries,
        }
    }

    /// Number of inversions, which is the Coxeter length.
    pub fn length(&self) -> usize {
        let e = self.one_line();
        let mut count = 0;
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                if e[i] > e[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// A reduced word, peeling off the leftmost descent at each step.
    pub fn reduced_word(&self) -> Word {
        let mut u = *self;
        let mut rev = Vec::with_capacity(self.length());
        'outer: loop {
            let e = u.one_line();
            for i in 0..e.len().saturating_sub(1) {
                if e[i] > e[i + 1] {
                    rev.push(i + 1);
                    u.entries.swap(i, i + 1);
                    continue 'outer;
                }
            }
            break;
        }
        rev.reverse();
        Word(rev)
    }

    /// Indices `i` such that `s_i` occurs in some (equivalently every)
    /// reduced word.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut max_prefix = 0;
        for (k, &x) in self.one_line().iter().enumerate() {
            max_prefix = max_prefix.max(x as usize);
            if k + 1 < self.degree() && max_prefix != k + 1 {
                out.push(k + 1);
            }
        }
        out
    }

    /// Bruhat comparison by the sorted-prefix criterion.
    ///
    /// Panics if the degrees differ; [`bruhat_leq`] is the checked form.
    pub fn bruhat_le(&self, other: &Self) -> bool {
        let n = self.degree();
        assert_eq!(n, other.degree(), "degree mismatch in Bruhat comparison");
        let mut a = [0u8; MAX_DEGREE];
        let mut b = [0u8; MAX_DEGREE];
        for p in 0..n.saturating_sub(1) {
            insert_sorted(&mut a, p, self.entries[p]);
            insert_sorted(&mut b, p, other.entries[p]);
            if a[..=p].iter().zip(&b[..=p]).any(|(x, y)| x > y) {
                return false;
            }
        }
        true
    }

    /// Transpositions `t` with `self ⋖ self·t ≤ bound`, with the covers.
    pub fn covers_up(&self, bound: &Self) -> Vec<(Transposition, Permutation)> {
        let e = self.one_line();
        let n = e.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if e[i] < e[j] && !e[i + 1..j].iter().any(|&x| x > e[i] && x < e[j]) {
                    let t = Transposition { i: i + 1, j: j + 1 };
                    let z = self.mul_transposition(t);
                    if z.bruhat_le(bound) {
                        out.push((t, z));
                    }
                }
            }
        }
        out
    }

    /// Transpositions `t` with `bound ≤ self·t ⋖ self`, with the covers.
    pub fn covers_down(&self, bound: &Self) -> Vec<(Transposition, Permutation)> {
        let e = self.one_line();
        let n = e.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if e[i] > e[j] && !e[i + 1..j].iter().any(|&x| x > e[j] && x < e[i]) {
                    let t = Transposition { i: i + 1, j: j + 1 };
                    let z = self.mul_transposition(t);
                    if bound.bruhat_le(&z) {
                        out.push((t, z));
                    }
                }
            }
        }
        out
    }

    /// True iff no subsequence of `self` is order-isomorphic to `pattern`.
    pub fn avoids(&self, pattern: &Permutation) -> bool {
        let k = pattern.degree();
        let n = self.degree();
        if k > n {
            return true;
        }
        if k == 0 {
            return false;
        }
        let mut chosen = Vec::with_capacity(k);
        !contains_pattern(self.one_line(), pattern.one_line(), 0, &mut chosen)
    }

    /// Image of the fixed point `uB` under the moment map:
    /// `(u⁻¹(1), ..., u⁻¹(n))`.
    pub fn moment_image(&self) -> Vec<i64> {
        self.inverse().one_line().iter().map(|&x| x as i64).collect()
    }

    /// The one nonzero Plücker coordinate of the flag `uB` in degree `d`:
    /// `{u(1), ..., u(d)}` sorted ascending.
    pub fn plucker_support(&self, d: usize) -> Result<Vec<usize>> {
        let n = self.degree();
        if d == 0 || d >= n {
            return Err(Error::IndexOutOfRange {
                index: d,
                max: n.saturating_sub(1),
            });
        }
        let mut s: Vec<usize> = self.one_line()[..d].iter().map(|&x| x as usize).collect();
        s.sort_unstable();
        Ok(s)
    }

    /// The vector `(u(1), ..., u(n))`.
    pub fn as_point(&self) -> Vec<i64> {
        self.one_line().iter().map(|&x| x as i64).collect()
    }
}

fn insert_sorted(buf: &mut [u8; MAX_DEGREE], len: usize, x: u8) {
    let mut k = len;
    while k > 0 && buf[k - 1] > x {
        buf[k] = buf[k - 1];
        k -= 1;
    }
    buf[k] = x;
}

fn contains_pattern(text: &[u8], pattern: &[u8], start: usize, chosen: &mut Vec<u8>) -> bool {
    let k = pattern.len();
    if chosen.len() == k {
        return true;
    }
    let need = k - chosen.len();
    for pos in start..=text.len() - need {
        let x = text[pos];
        let m = chosen.len();
        // relative order of x against the chosen prefix must match the pattern
        let ok = (0..m).all(|a| (chosen[a] < x) == (pattern[a] < pattern[m]));
        if ok {
            chosen.push(x);
            if contains_pattern(text, pattern, pos + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn check_degrees(a: &Permutation, b: &Permutation) -> Result<()> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    Ok(())
}

/// Checked Bruhat comparison.
pub fn bruhat_leq(v: &Permutation, w: &Permutation) -> Result<bool> {
    check_degrees(v, w)?;
    Ok(v.bruhat_le(w))
}

pub fn pattern_avoids(w: &Permutation, pattern: &Permutation) -> bool {
    w.avoids(pattern)
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then lexicographic on one-line notation.
impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.one_line().cmp(other.one_line()))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() <= 9 {
            for &x in self.one_line() {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            write!(f, "[")?;
            for (k, &x) in self.one_line().iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let values: Vec<usize> = if let Some(inner) = s.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(|| parse_err("missing ']'"))?;
            if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| parse_err("bad entry")))
                    .collect::<Result<_>>()?
            }
        } else {
            if s.len() > 9 {
                return Err(parse_err("compact form only covers degree <= 9"));
            }
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| parse_err("expected digits"))
                })
                .collect::<Result<_>>()?
        };
        Permutation::from_one_line(&values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The transposition `t_{i,j}` with `1 ≤ i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transposition {
    pub i: usize,
    pub j: usize,
}

impl Transposition {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b || a == 0 || b == 0 {
            return Err(Error::Precondition(format!("({a},{b}) is not a transposition")));
        }
        Ok(Transposition {
            i: a.min(b),
            j: a.max(b),
        })
    }

    pub fn simple(i: usize) -> Self {
        Transposition { i, j: i + 1 }
    }

    pub fn is_simple(&self) -> bool {
        self.j == self.i + 1
    }

    pub fn to_permutation(&self, n: usize) -> Permutation {
        Permutation::identity(n).mul_transposition(*self)
    }

    /// Recognizes `p` as a transposition, if it is one.
    pub fn from_permutation(p: &Permutation) -> Option<Self> {
        let moved: Vec<usize> = (1..=p.degree()).filter(|&k| p.at(k) != k).collect();
        match moved.as_slice() {
            [a, b] if p.at(*a) == *b => Some(Transposition { i: *a, j: *b }),
            _ => None,
        }
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl Serialize for Transposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A word `i_1 i_2 ... i_l` in the simple transpositions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `s_{i_1} ∘ s_{i_2} ∘ ... ∘ s_{i_l}` in `S_n`.
    pub fn evaluate(&self, n: usize) -> Result<Permutation> {
        let mut p = Permutation::identity(n);
        for &i in &self.0 {
            if i == 0 || i >= n {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    max: n.saturating_sub(1),
                });
            }
            p = p.mul_transposition(Transposition::simple(i));
        }
        Ok(p)
    }

    pub fn is_reduced(&self, n: usize) -> Result<bool> {
        Ok(self.evaluate(n)?.length() == self.len())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<u8> = (1..=n as u8).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation::from_raw(n, &cur));
        if !next_permutation(&mut cur) {
            break;
        }
    }
    out
}

fn next_permutation(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Cached lexicographic listing of `S_n` for `n ≤ MAX_ENUMERATED_DEGREE`.
pub fn symmetric_group(n: usize) -> &'static [Permutation] {
    static CACHE: [OnceLock<Vec<Permutation>>; MAX_ENUMERATED_DEGREE + 1] =
        [const { OnceLock::new() }; MAX_ENUMERATED_DEGREE + 1];
    assert!(
        n <= MAX_ENUMERATED_DEGREE,
        "S_{n} is too large to enumerate"
    );
    CACHE[n].get_or_init(|| all_permutations(n))
}
