use std::collections::BTreeSet;

use posetq::generate::random_natural_poset;
use posetq::{all_posets, is_isomorphic, random_poset, Cover, EdgeKind, Error, LabeledPoset};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

/// Brute-force transitive closure of the covers: repeat until no new pair.
fn brute_closure(p: &LabeledPoset) -> BTreeSet<(usize, usize)> {
    let mut rel: BTreeSet<(usize, usize)> = p.covers().iter().map(|c| (c.lower, c.upper)).collect();
    loop {
        let extra: Vec<(usize, usize)> = rel
            .iter()
            .flat_map(|&(a, b)| rel.iter().filter(move |&&(c, _)| c == b).map(move |&(_, d)| (a, d)))
            .filter(|pr| !rel.contains(pr))
            .collect();
        if extra.is_empty() {
            return rel;
        }
        rel.extend(extra);
    }
}

#[test]
fn rebuilding_from_covers_is_identity() {
    for n in 0..=5 {
        for p in all_posets(n).unwrap() {
            let q = LabeledPoset::new(n, p.covers().to_vec(), p.labels().map(<[usize]>::to_vec)).unwrap();
            assert_eq!(p, q);
        }
    }
}

#[test]
fn realized_labeling_reproduces_edge_kinds() {
    for n in 0..=6 {
        for p in all_posets(n).unwrap() {
            let r = p.without_labels().realize_labeling().unwrap();
            let kinds = |x: &LabeledPoset| x.covers().iter().map(|c| (c.lower, c.upper, c.kind)).collect::<Vec<_>>();
            assert_eq!(kinds(&p), kinds(&r));
            for c in r.covers() {
                let (a, b) = (r.label(c.lower).unwrap(), r.label(c.upper).unwrap());
                assert_eq!(EdgeKind::from_labels(a, b), c.kind);
            }
        }
    }
}

#[test]
fn less_than_set_is_the_transitive_closure() {
    let mut rng = StdRng::seed_from_u64(11);
    for n in 1..=7 {
        for i in 0..200 {
            let p = random_poset(&mut rng, n, (i % 9) as f64 / 10.0 + 0.05).unwrap();
            let want: BTreeSet<(usize, usize)> =
                brute_closure(&p).into_iter().map(|(a, b)| (p.label(a).unwrap(), p.label(b).unwrap())).collect();
            assert_eq!(p.less_than_set().unwrap().as_set(), &want);
        }
    }
}

#[test]
fn redundant_and_cyclic_inputs_are_rejected() {
    let redundant = LabeledPoset::new(3, [Cover::weak(1, 2), Cover::weak(2, 3), Cover::weak(1, 3)], None);
    assert!(redundant.is_err());
    let cyclic = LabeledPoset::new(2, [Cover::weak(1, 2), Cover::weak(2, 1)], None);
    assert!(cyclic.is_err());
    // a strict edge needs the lower label to be the larger one
    assert!(LabeledPoset::new(2, [Cover::strict(1, 2)], Some(vec![1, 2])).is_err());
    // weak up 1-2-4 and strict 1-3-4 force 1 < 4 and 1 > 4 at once
    let bad =
        LabeledPoset::new(4, [Cover::weak(1, 2), Cover::weak(2, 4), Cover::strict(1, 3), Cover::strict(3, 4)], None);
    assert!(matches!(bad, Err(Error::BadCycle)));
}

#[test]
fn isomorphism_respects_edge_kinds() {
    let weak = LabeledPoset::chain(3, EdgeKind::Weak);
    let strict = LabeledPoset::chain(3, EdgeKind::Strict);
    assert!(!is_isomorphic(&weak, &strict).unwrap());
    let v1 = LabeledPoset::new(3, [Cover::weak(1, 3), Cover::strict(2, 3)], None).unwrap();
    let v2 = LabeledPoset::new(3, [Cover::strict(1, 3), Cover::weak(2, 3)], None).unwrap();
    assert!(is_isomorphic(&v1, &v2).unwrap());
}

proptest! {
    #[test]
    fn natural_posets_have_only_weak_edges(seed in any::<u64>(), n in 1usize..8) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = random_natural_poset(&mut rng, n, 0.4).unwrap();
        prop_assert!(p.is_naturally_labeled());
        prop_assert!(p.less_than_set().unwrap().iter().all(|(a, b)| a < b));
    }

    #[test]
    fn topological_order_respects_relations(seed in any::<u64>(), n in 1usize..9) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = random_poset(&mut rng, n, 0.3).unwrap();
        let order = p.topological_order();
        let pos: Vec<usize> = (1..=n).map(|e| order.iter().position(|&x| x == e).unwrap()).collect();
        for c in p.covers() {
            prop_assert!(pos[c.lower - 1] < pos[c.upper - 1]);
        }
    }
}
