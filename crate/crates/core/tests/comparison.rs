use posetq::verify::{self, Theorem, VerifyOptions};
use posetq::{
    bar, compare, compare_with, random_poset, random_rbd_descendant, star, BatteryMode, EnumConfig, LabeledPoset,
    Relation, Status,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn suite(theorem: Theorem, opts: VerifyOptions) {
    let s = verify::run(theorem, &opts, &|_| {}).unwrap();
    let first = s.counterexamples.first().map(ToString::to_string).unwrap_or_default();
    assert!(s.passed(), "{}\n{first}", s.machine_line());
}

#[test]
fn battery_sound_and_implications_hold_exhaustively_to_five() {
    suite(Theorem::Battery, VerifyOptions { max_n: Some(5), ..Default::default() });
}

#[test]
fn longest_chain_search_finds_nothing_to_five() {
    suite(Theorem::LongestChain, VerifyOptions { max_n: Some(5), ..Default::default() });
}

#[test]
fn f_positivity_is_invariant_under_bar_and_star() {
    let mut rng = StdRng::seed_from_u64(29);
    let mut related = 0;
    for i in 0..300 {
        let n = rng.gen_range(1..=7);
        let d = rng.gen_range(0.1..0.7);
        let p = random_poset(&mut rng, n, d).unwrap();
        let q = if i % 2 == 0 {
            let steps = rng.gen_range(0..3);
            random_rbd_descendant(&mut rng, &p, steps).unwrap()
        } else {
            let d = rng.gen_range(0.1..0.7);
            random_poset(&mut rng, n, d).unwrap()
        };
        let base = compare(&p, &q).unwrap().f_positive;
        related += usize::from(base);
        assert_eq!(compare(&bar(&p), &bar(&q)).unwrap().f_positive, base);
        assert_eq!(compare(&star(&p), &star(&q)).unwrap().f_positive, base);
    }
    assert!(related >= 100, "too few related pairs to be meaningful: {related}");
}

#[test]
fn size_mismatch_gives_an_all_false_report() {
    let r = compare(&LabeledPoset::antichain(2), &LabeledPoset::antichain(3)).unwrap();
    assert!(!r.size_match);
    for rel in [Relation::LinExtContained, Relation::FPositive, Relation::MSupportContained] {
        assert!(!r.holds(rel));
    }
    assert!(r.f_difference.is_none());
}

#[test]
fn greene_condition_is_skipped_for_non_natural_posets() {
    let p = LabeledPoset::new(2, [posetq::Cover::strict(1, 2)], None).unwrap();
    let r = compare_with(&p, &p, BatteryMode::FSupport, &EnumConfig::default()).unwrap();
    assert!(r.necessary_battery.iter().any(|c| c.name.contains("greene") && c.status == Status::Skip));
    assert!(r.f_positive && r.lin_ext_contained && r.battery_passed());
}
