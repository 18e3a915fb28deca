mod support;

use mcdef_cli::{parse_fixture, serialize_fixture, Fixture, FixtureError};
use mcdef_core::graded_lie::Augmentation;
use mcdef_core::linfinity::from_dgla;
use mcdef_core::samples::{random_dgla, random_filtered_nilpotent, random_nilpotent, sl2_augmented};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn round_trip(doc: &Fixture) {
    let text = serialize_fixture(doc);
    let again = parse_fixture(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    assert_eq!(&again, doc, "{text}");
    assert_eq!(serialize_fixture(&again), text);
}

#[test]
fn committed_fixtures_round_trip() {
    let mut seen = 0;
    for entry in std::fs::read_dir(support::fixture_dir()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let text = std::fs::read_to_string(&path).unwrap();
        match parse_fixture(&text) {
            Ok(doc) => round_trip(&doc),
            Err(e) => assert_eq!(name, "malformed_nesting.fix", "{name}: {e}"),
        }
        seen += 1;
    }
    assert!(seen > 20);
}

#[test]
fn jordan2_fixture() {
    let Fixture::Nilpotent(n) = parse_fixture(&support::read_fixture("jordan2.fix")).unwrap() else {
        panic!("kind");
    };
    assert_eq!((n.dim(), n.nilpotency_index()), (2, 1));
}

#[test]
fn malformed_nesting_names_the_invariant() {
    let err = parse_fixture(&support::read_fixture("malformed_nesting.fix")).unwrap_err();
    let FixtureError::Semantic { line, invariant, message } = err else { panic!("{err:?}") };
    assert_eq!(line, 5);
    assert_eq!(invariant, "steps are nested");
    assert!(message.contains("not contained"));
}

#[test]
fn semantic_errors() {
    let cases = [
        ("kind nilpotent\ndim 2\nrow 1 0\nrow 0 0\n", "N is nilpotent"),
        ("kind dgla\nbasis a 1\nbasis a 2\n", "distinct basis labels"),
        ("kind dgla\nbasis a 1\nbasis b 1\nd a = b\n", "d has degree +1"),
        ("kind dgla\nbasis a 1 1\nbasis b 2\n", "weights on all basis elements or none"),
        ("kind filtration\ndim 2\nstep 0 = 1 0\n", "the filtration exhausts the space"),
        ("kind filtration\ndim 2\nstep 0 = 1 0\nstep 1 = 1 0; 0 1\nrow 0 0\nrow 1 0\n", "N preserves W"),
        ("kind linf\nbasis a 1\nbasis u 2\nop 2 a = u\n", "arity matches the number of arguments"),
    ];
    for (text, invariant) in cases {
        match parse_fixture(text) {
            Err(FixtureError::Semantic { invariant: got, .. }) => assert_eq!(got, invariant, "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
}

#[test]
fn syntax_errors() {
    let cases = [
        ("basis a 1\n", 1, 1),
        ("kind dgla\nbasis a 1\nbracket a a = 2*a\n", 3, 1),
        ("kind dgla\nbasis a 0\nbracket a a = 2*a a\n", 3, 19),
        ("kind dgla\nbasis a 0\nbracket a a = x/y*a\n", 3, 15),
        ("kind nilpotent\ndim 2\nrow 0 1/0\nrow 0 0\n", 3, 7),
        ("kind weight-profile\nh1 1\nh1 2\n", 3, 1),
        ("kind nilpotent\ndim 2\nstep 0 =\n", 3, 1),
    ];
    for (text, line, column) in cases {
        match parse_fixture(text) {
            Err(FixtureError::Syntax { line: l, column: c, .. }) => assert_eq!((l, c), (line, column), "{text}"),
            Err(FixtureError::Semantic { .. }) if line == 3 && column == 1 && text.contains("2*a\n") => {}
            other => panic!("{text}: {other:?}"),
        }
    }
}

#[test]
fn augmentation_and_linf_round_trip() {
    let (l, aug) = sl2_augmented();
    round_trip(&Fixture::Augmentation { l: l.clone(), aug });
    round_trip(&Fixture::Augmentation { aug: Augmentation::zero(&l), l: l.clone() });
    round_trip(&Fixture::Linf(from_dgla(&l, 3).unwrap()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_dglas_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_dgla(&mut rng, 6);
        round_trip(&Fixture::Linf(from_dgla(&l, 4).unwrap()));
        round_trip(&Fixture::Dgla(l));
    }

    #[test]
    fn random_filtrations_round_trip(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fs = random_filtered_nilpotent(&mut rng, n);
        round_trip(&Fixture::Filtration { w: fs.w.clone(), n: Some(fs.n.clone()) });
        round_trip(&Fixture::Filtration { w: fs.w, n: None });
        round_trip(&Fixture::Nilpotent(random_nilpotent(&mut rng, n).0));
    }
}
