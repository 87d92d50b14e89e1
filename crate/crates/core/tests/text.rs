use posetq::{parse_poset, parse_posets, random_poset, write_poset, Error, LabeledPoset};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

proptest! {
    #[test]
    fn written_posets_parse_back(seed in any::<u64>(), n in 0usize..9, labeled in any::<bool>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = random_poset(&mut rng, n, 0.35).unwrap();
        let p = if labeled { p } else { p.without_labels() };
        let text = write_poset("p", &p);
        let back = parse_poset(&text).unwrap();
        prop_assert_eq!(back.name, "p");
        prop_assert_eq!(back.poset, p);
    }
}

#[test]
fn several_stanzas_with_comments() {
    let text = "# two posets\n\nposet a\nelements 2\ncover 1 2 weak # trailing\n\nposet b\nelements 2\ncover 1 2 strict\nlabels 2 1\n";
    let all = parse_posets(text).unwrap();
    assert_eq!(all.iter().map(|p| p.name.as_str()).collect::<Vec<_>>(), ["a", "b"]);
    assert_eq!(all[1].poset, LabeledPoset::new(2, [posetq::Cover::strict(1, 2)], Some(vec![2, 1])).unwrap());
    assert!(parse_poset(text).is_err());
}

#[test]
fn errors_carry_line_numbers() {
    let cases = [
        ("poset x\nelements 2\ncover 1 3 weak\n", 3),
        ("poset x\nelements 2\ncover 1 2 sideways\n", 3),
        ("poset x\nelements two\n", 2),
        ("elements 2\n", 1),
        // labels that contradict an edge kind are reported at the offending cover
        ("poset x\nelements 2\ncover 1 2 strict\nlabels 1 2\n", 3),
    ];
    for (text, line) in cases {
        match parse_posets(text) {
            Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
}
