use std::collections::BTreeSet;

use posetq::families::{caterpillar_family, caterpillar_intervals, greene_k1_family, spine_patterns};
use posetq::verify::{self, Theorem, VerifyOptions};
use posetq::{
    check_thm_caterpillar, check_thm_k1, dedupe_isomorphic, encode_greene_k1, f_positivity_poset, greene_shapes,
    is_isomorphic, natural_posets, EdgeKind, Error, Family, IntervalEncoding, LabeledPoset,
};

fn suite(theorem: Theorem, opts: VerifyOptions) {
    let s = verify::run(theorem, &opts, &|_| {}).unwrap();
    let first = s.counterexamples.first().map(ToString::to_string).unwrap_or_default();
    assert!(s.passed(), "{}\n{first}", s.machine_line());
}

#[test]
fn greene_k1_family_is_every_poset_of_that_shape() {
    for k in 1..=5 {
        let of_shape: Vec<LabeledPoset> = natural_posets(k + 1)
            .unwrap()
            .into_iter()
            .filter(|p| greene_shapes(p).unwrap().chain_shape == [k, 1])
            .collect();
        let classes = dedupe_isomorphic(of_shape.clone()).unwrap();
        let family = greene_k1_family(k);
        assert_eq!(classes.len(), family.len(), "k={k}");
        let encoded: BTreeSet<Vec<(usize, usize)>> =
            of_shape.iter().map(|p| encode_greene_k1(p).unwrap().intervals).collect();
        assert_eq!(encoded.len(), family.len());
        for p in &of_shape {
            let back = encode_greene_k1(p).unwrap().decode().unwrap();
            assert!(is_isomorphic(p, &back).unwrap());
        }
    }
}

#[test]
fn encoding_rejects_other_shapes_and_labelings() {
    let chain = LabeledPoset::chain(4, EdgeKind::Weak).ensure_labels();
    assert!(matches!(encode_greene_k1(&chain), Err(Error::WrongShape(_))));
    let strict = LabeledPoset::chain(2, EdgeKind::Strict);
    assert!(encode_greene_k1(&strict.realize_labeling().unwrap()).is_err());
    assert!(IntervalEncoding::greene_k1(3, 1, 2).is_err());
    assert!(IntervalEncoding::greene_k1(3, 0, 5).is_err());
}

#[test]
fn six_conditions_agree_for_greene_k1() {
    suite(Theorem::K1, VerifyOptions { max_k: Some(6), ..Default::default() });
    // the library entry point takes posets directly
    let p = IntervalEncoding::greene_k1(3, 0, 2).unwrap().decode().unwrap();
    let q = IntervalEncoding::greene_k1(3, 0, 4).unwrap().decode().unwrap();
    let r = check_thm_k1(&p, &q).unwrap();
    assert!(r.agree() && r.f_positive);
    assert!(!check_thm_k1(&q, &p).unwrap().f_positive);
}

#[test]
fn caterpillars_with_weak_spines_classify() {
    suite(
        Theorem::Caterpillar,
        VerifyOptions { max_k: Some(4), max_leaves: Some(2), weak_spines_only: true, ..Default::default() },
    );
}

#[test]
fn interval_containment_implies_f_positivity_on_every_spine() {
    for k in 1..=4 {
        for kinds in spine_patterns(k) {
            for leaves in 1..=2 {
                let fam = caterpillar_family(k, &kinds, leaves).unwrap();
                for p in &fam {
                    for q in fam.iter().filter(|q| p.contained_in(q)) {
                        assert!(check_thm_caterpillar(p, q).unwrap().f_positive, "{p} {q}");
                    }
                }
            }
        }
    }
}

#[test]
fn strict_spines_break_the_classification() {
    let strict = vec![EdgeKind::Strict];
    let p = IntervalEncoding::caterpillar(2, vec![(0, 2)], strict.clone()).unwrap();
    let q = IntervalEncoding::caterpillar(2, vec![(1, 3)], strict).unwrap();
    let r = check_thm_caterpillar(&p, &q).unwrap();
    assert!(r.f_positive && r.f_support_contained && !r.intervals_contained);
    assert!(!r.agree() && !r.lower_count_ok);
    assert_eq!(r.type_count_witness().unwrap(), "p^I + p^IV <= q^I + q^IV violated: 1 > 0");
}

#[test]
fn caterpillar_family_sizes() {
    for k in 1..=5 {
        let m = caterpillar_intervals(k).len();
        assert_eq!(m, 2 * k - 1);
        let kinds = vec![EdgeKind::Weak; k - 1];
        for leaves in 0..=3 {
            // multisets of size `leaves` from m intervals
            let want = (0..leaves).fold(1, |acc, i| acc * (m + i) / (i + 1));
            assert_eq!(caterpillar_family(k, &kinds, leaves).unwrap().len(), want);
        }
    }
    assert_eq!(spine_patterns(4).len(), 8);
}

#[test]
fn f_positivity_poset_dot() {
    let fp = f_positivity_poset(&Family::GreeneK1 { k: 2 }).unwrap();
    let dot = fp.to_dot();
    assert!(dot.starts_with("digraph fpositivity {"));
    assert_eq!(dot.matches("->").count(), fp.covers.len());
    assert!(dot.contains("[label=\"0,2\"]"));
    let cat = Family::Caterpillar { spine_kinds: vec![EdgeKind::Weak, EdgeKind::Weak], leaves: 1 };
    let fp = f_positivity_poset(&cat).unwrap();
    assert!(fp.validate(&Default::default()).unwrap().is_empty());
}
