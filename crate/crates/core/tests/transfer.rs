use mcdef_core::graded_lie::{check_dgla_axioms, standard_contraction};
use mcdef_core::linfinity::{check_linfinity_axioms, check_morphism, from_dgla, from_dgla_unchecked, homotopy_transfer};
use mcdef_core::samples::random_dgla;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn dgla_reduction_passes_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let l = random_dgla(&mut rng, 6);
        let s = from_dgla(&l, 4).unwrap();
        let r = check_linfinity_axioms(&s, 4);
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn transfer_satisfies_axioms_and_morphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..30 {
        let l = random_dgla(&mut rng, 6);
        let s = from_dgla(&l, 5).unwrap();
        let c = standard_contraction(&l).unwrap();
        let t = homotopy_transfer(&s, &c, 5).unwrap();
        let r = check_linfinity_axioms(&t.structure, 5);
        assert!(r.passed(), "case {case}: {r}\n{}", t.structure);
        let m = check_morphism(&t.structure, &s, &t, 5);
        assert!(m.passed(), "case {case}: {m}");
    }
}

#[test]
fn corrupted_dgla_fails_at_low_arity() {
    use mcdef_core::graded_lie::{DgLie, GradedSpace};
    use mcdef_core::scalar::q;
    use std::collections::BTreeMap;
    // sl2 with [h, e] = 3e instead of 2e
    let space = GradedSpace::from_labels([("h", 0), ("e", 0), ("f", 0)]).unwrap();
    let mut br = BTreeMap::new();
    br.insert((0, 1), vec![q(0), q(3), q(0)]);
    br.insert((0, 2), vec![q(0), q(0), q(-2)]);
    br.insert((1, 2), vec![q(1), q(0), q(0)]);
    let bad = DgLie::with_antisymmetric_completion(space, mcdef_core::Matrix::zeros(3, 3), br).unwrap();
    assert!(!check_dgla_axioms(&bad).passed());
    assert!(from_dgla(&bad, 3).is_err());
    let s = from_dgla_unchecked(&bad, 3);
    let r = check_linfinity_axioms(&s, 3);
    assert!(r.items[0].passed && r.items[1].passed);
    assert!(!r.items[2].passed);
}

#[test]
fn random_transfers_are_not_all_strict() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut higher = 0;
    for _ in 0..30 {
        let l = random_dgla(&mut rng, 6);
        let s = from_dgla(&l, 4).unwrap();
        let c = standard_contraction(&l).unwrap();
        let t = homotopy_transfer(&s, &c, 4).unwrap();
        if !t.structure.is_zero_from(3) {
            higher += 1;
        }
    }
    assert!(higher >= 3, "only {higher} transfers had higher operations");
}
