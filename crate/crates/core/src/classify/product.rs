//! The product `x *_r y` and the families built from it.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{Permutation, Word, MAX_DEGREE};

/// `x *_r y ∈ S_{p+q+r−1}` for `x ∈ S_p`, `y ∈ S_q`: a word of `x` followed
/// by a word of `y` with every index raised by `p + r − 1`.
pub fn star_r(x: &Permutation, y: &Permutation, r: usize) -> Result<Permutation> {
    let (p, q) = (x.degree(), y.degree());
    let n = p + q + r - 1;
    if n > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(n));
    }
    let shift = p + r - 1;
    let mut word = x.reduced_word().0;
    word.extend(y.reduced_word().0.iter().map(|&j| j + shift));
    Word(word).evaluate(n)
}

/// `k`-fold `*_0` power of the pair `(x, y)` taken componentwise.
pub fn star_power(x: &Permutation, y: &Permutation, k: usize) -> Result<(Permutation, Permutation)> {
    let (mut v, mut w) = (*x, *y);
    for _ in 1..k {
        v = star_r(&v, x, 0)?;
        w = star_r(&w, y, 0)?;
    }
    Ok((v, w))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyKind {
    /// Boolean with complexity `k`.
    BooleanGap,
    /// Toric with `d(v) = d(w) = dim + k`.
    EqualExcess,
    /// Toric with `|d(v) − d(w)| = k`.
    DegreeGap,
}

impl FamilyKind {
    pub fn seed(&self) -> (Permutation, Permutation) {
        let (v, w) = match self {
            FamilyKind::BooleanGap => ("1324", "4231"),
            FamilyKind::EqualExcess => ("1324", "3412"),
            FamilyKind::DegreeGap => ("13254", "35142"),
        };
        (v.parse().unwrap(), w.parse().unwrap())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "boolean-gap" | "boolean_gap" => Ok(FamilyKind::BooleanGap),
            "equal-excess" | "equal_excess" => Ok(FamilyKind::EqualExcess),
            "degree-gap" | "degree_gap" => Ok(FamilyKind::DegreeGap),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected boolean-gap, equal-excess or degree-gap".into(),
            }),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::BooleanGap => "boolean-gap",
            FamilyKind::EqualExcess => "equal-excess",
            FamilyKind::DegreeGap => "degree-gap",
        })
    }
}

/// A pair exhibiting the property of `kind` with parameter `k`. `k = 0`
/// gives the segment `[12, 21]`.
pub fn generate_family(k: usize, kind: FamilyKind) -> Result<(Permutation, Permutation)> {
    if k == 0 {
        let v = Permutation::identity(2);
        return Ok((v, Permutation::longest(2)));
    }
    let (x, y) = kind.seed();
    star_power(&x, &y, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify_combinatorial;
    use crate::interval::BruhatInterval;
    use crate::perm::all_permutations;
    use proptest::prelude::*;
    use proptest::sample::select;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn small_products() {
        assert_eq!(star_r(&p("21"), &p("21"), 1).unwrap(), p("2143"));
        assert_eq!(star_r(&p("21"), &p("21"), 0).unwrap(), p("231"));
        assert_eq!(star_r(&p("123"), &p("12"), 2).unwrap(), Permutation::identity(6));
        assert_eq!(generate_family(1, FamilyKind::BooleanGap).unwrap(), (p("1324"), p("4231")));
        assert_eq!(generate_family(0, FamilyKind::DegreeGap).unwrap(), (p("12"), p("21")));
        assert!(star_r(&Permutation::identity(9), &Permutation::identity(9), 0).is_err());
    }

    #[test]
    fn families_up_to_two() {
        for k in 0..=2 {
            let (v, w) = generate_family(k, FamilyKind::BooleanGap).unwrap();
            let r = classify_combinatorial(&BruhatInterval::new(v, w).unwrap()).unwrap();
            assert!(r.boolean_interval);
            assert_eq!(r.complexity, k);

            let (v, w) = generate_family(k, FamilyKind::EqualExcess).unwrap();
            let r = classify_combinatorial(&BruhatInterval::new(v, w).unwrap()).unwrap();
            assert!(r.toric);
            assert_eq!((r.degree_v, r.degree_w), (r.dim + k, r.dim + k));

            let (v, w) = generate_family(k, FamilyKind::DegreeGap).unwrap();
            let r = classify_combinatorial(&BruhatInterval::new(v, w).unwrap()).unwrap();
            assert!(r.toric);
            assert_eq!(r.degree_v.abs_diff(r.degree_w), k);
        }
    }

    fn s3() -> impl Strategy<Value = Permutation> {
        select(all_permutations(3))
    }

    proptest! {
        #[test]
        fn length_is_additive(x in select(all_permutations(4)), y in s3(), r in 0..3usize) {
            let z = star_r(&x, &y, r).unwrap();
            prop_assert_eq!(z.length(), x.length() + y.length());
        }

        #[test]
        fn product_order(x in s3(), y in s3(), x2 in s3(), y2 in s3(), r in 0..3usize) {
            let lhs = star_r(&x2, &y2, r).unwrap().bruhat_le(&star_r(&x, &y, r).unwrap());
            prop_assert_eq!(lhs, x2.bruhat_le(&x) && y2.bruhat_le(&y));
        }
    }
}
