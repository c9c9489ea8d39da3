use bip_core::graphs::{dim_by_graphs, is_forest_at};
use bip_core::polytope::dim_geometric;
use bip_core::scan::bruhat_pairs;
use bip_core::{classify, BruhatInterval, Permutation};
use proptest::prelude::*;
use proptest::sample::select;

fn embed(p: &Permutation) -> Permutation {
    let mut one_line = p.to_vec();
    one_line.push(p.degree() + 1);
    Permutation::from_one_line(&one_line).unwrap()
}

#[test]
fn graph_dimension_matches_affine_rank_in_s5() {
    for (v, w) in bruhat_pairs(5) {
        assert_eq!(dim_by_graphs(&v, &w).unwrap(), dim_geometric(&v, &w).unwrap(), "[{v},{w}]");
    }
}

#[test]
fn classification_cross_checks_in_s4() {
    for (v, w) in bruhat_pairs(4) {
        classify(v, w).unwrap();
    }
}

#[test]
fn forest_test_is_stable_under_embedding() {
    for (v, w) in bruhat_pairs(4) {
        let (ev, ew) = (embed(&v), embed(&w));
        for u in BruhatInterval::new(v, w).unwrap().elements() {
            assert_eq!(
                is_forest_at(&v, &w, u).unwrap(),
                is_forest_at(&ev, &ew, &embed(u)).unwrap(),
                "[{v},{w}] at {u}"
            );
        }
    }
}

proptest! {
    #[test]
    fn inverse_pairs_share_dimension_and_size((v, w) in select(bruhat_pairs(5))) {
        let a = BruhatInterval::new(v, w).unwrap();
        let b = BruhatInterval::new(v.inverse(), w.inverse()).unwrap();
        prop_assert_eq!(a.len(), b.len());
        prop_assert_eq!(a.level_sizes(), b.level_sizes());
        prop_assert_eq!(dim_by_graphs(&v, &w).unwrap(), dim_by_graphs(&v.inverse(), &w.inverse()).unwrap());
    }

    #[test]
    fn longest_element_reverses_intervals((v, w) in select(bruhat_pairs(5))) {
        let w0 = Permutation::longest(5);
        let (a, b) = (w0.compose(&w).unwrap(), w0.compose(&v).unwrap());
        let mut up = BruhatInterval::new(v, w).unwrap().level_sizes();
        up.reverse();
        prop_assert_eq!(BruhatInterval::new(a, b).unwrap().level_sizes(), up);
    }
}
