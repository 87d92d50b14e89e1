use std::collections::BTreeMap;

use posetq::{
    all_posets, bar, conjugate, descent_composition, dominance_leq, enumerator_f, enumerator_m, greene_shapes,
    jump_sequence, linear_extensions, natural_posets, random_poset, star, Composition, LabeledPoset,
};
use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;

fn descent_multiset(p: &LabeledPoset) -> BTreeMap<Composition, usize> {
    let mut out = BTreeMap::new();
    for e in linear_extensions(p) {
        *out.entry(descent_composition(&e).unwrap()).or_default() += 1;
    }
    out
}

#[test]
fn jump_sequence_is_the_dominance_maximum_of_both_supports() {
    for n in 1..=6 {
        all_posets(n).unwrap().par_iter().for_each(|p| {
            let jump = jump_sequence(p).as_composition();
            let f = enumerator_f(p).unwrap();
            let m = f.f_to_m().unwrap();
            for support in [f.support(), m.support()] {
                assert!(support.contains(&jump), "{p:?}");
                assert!(support.iter().all(|c| dominance_leq(c, &jump).unwrap()), "{p:?}");
            }
        });
    }
}

#[test]
fn involutions_on_extension_descents() {
    for n in 1..=5 {
        for p in all_posets(n).unwrap() {
            let base = descent_multiset(&p);
            let complemented: BTreeMap<Composition, usize> = base.iter().map(|(c, &k)| (c.complement(), k)).collect();
            let reversed: BTreeMap<Composition, usize> = base.iter().map(|(c, &k)| (c.reversed(), k)).collect();
            assert_eq!(descent_multiset(&bar(&p)), complemented);
            assert_eq!(descent_multiset(&star(&p)), reversed);
        }
    }
}

#[test]
fn involutions_on_expansions_at_six() {
    all_posets(6).unwrap().par_iter().for_each(|p| {
        let f = enumerator_f(p).unwrap();
        assert_eq!(enumerator_f(&bar(p)).unwrap(), f.map_compositions(Composition::complement));
        assert_eq!(enumerator_f(&star(p)).unwrap(), f.map_compositions(Composition::reversed));
    });
}

#[test]
fn star_reverses_the_m_expansion() {
    for n in 1..=5 {
        for p in all_posets(n).unwrap() {
            let m = enumerator_m(&p).unwrap();
            assert_eq!(enumerator_m(&star(&p)).unwrap(), m.map_compositions(Composition::reversed));
        }
    }
}

#[test]
fn involutions_are_involutions_and_commute() {
    for p in all_posets(4).unwrap() {
        assert_eq!(bar(&bar(&p)), p);
        assert_eq!(star(&star(&p)), p);
        assert_eq!(bar(&star(&p)), star(&bar(&p)));
    }
}

#[test]
fn greene_shapes_are_conjugate() {
    for n in 1..=7 {
        for p in natural_posets(n).unwrap() {
            let g = greene_shapes(&p).unwrap();
            assert_eq!(conjugate(&g.chain_shape), g.antichain_shape, "{p:?}");
            assert_eq!(g.chain_shape.iter().sum::<usize>(), n);
        }
    }
    let mut rng = StdRng::seed_from_u64(2);
    for n in 8..=10 {
        for _ in 0..20 {
            let p = random_poset(&mut rng, n, 0.25).unwrap();
            let g = greene_shapes(&p).unwrap();
            assert_eq!(conjugate(&g.chain_shape), g.antichain_shape, "{p:?}");
        }
    }
}
