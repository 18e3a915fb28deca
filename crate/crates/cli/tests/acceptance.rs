//! One line per acceptance criterion. Exits nonzero if a criterion fails that
//! is not listed in `KNOWN_FAILURES`.

mod support;

use std::time::{Duration, Instant};

use mcdef_cli::{parse_fixture, Fixture};
use mcdef_core::cone::{build_cone, default_complement, split_cone_transfer};
use mcdef_core::deformation::{
    curvature, dgla_curvature, order3_prediction, push_forward, solution_element, solve_order_by_order,
};
use mcdef_core::filtrations::{
    check_tensor_monodromy, check_weight_z_inclusions, monodromy_filtration, relative_monodromy_filtration,
    z_filtration, z_filtration_kashiwara, RelativeMonodromy,
};
use mcdef_core::graded_lie::{
    standard_contraction, weighted_contraction, Augmentation, Contraction, DgLie, GradedSpace,
};
use mcdef_core::linfinity::{check_linfinity_axioms, from_dgla, graded_transfer, homotopy_transfer, multisets};
use mcdef_core::exact_linalg::tensor_subspace;
use mcdef_core::poly::ArtinAlgebra;
use mcdef_core::samples::{random_dgla, random_filtered_nilpotent, random_formal_dgla, random_nilpotent};
use mcdef_core::scenarios::{consequence_suite, present};
use mcdef_core::{FilteredNilpotentSpace, Filtration, Matrix, Subspace, Q};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::oracle::{grid_lines, kernel_image_seeds, lattice, monodromy_conditions, relative_conditions, search};

/// Criteria that fail for a documented mathematical reason; they are still
/// run and reported.
const KNOWN_FAILURES: &[u8] = &[4];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn fixture(name: &str) -> Fixture {
    parse_fixture(&support::read_fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn dgla(name: &str) -> DgLie {
    match fixture(name) {
        Fixture::Dgla(l) => l,
        _ => panic!("{name} is not a dgla fixture"),
    }
}

fn augmented(name: &str) -> (DgLie, Augmentation) {
    match fixture(name) {
        Fixture::Augmentation { l, aug } => (l, aug),
        _ => panic!("{name} is not an augmentation fixture"),
    }
}

fn filtered(name: &str) -> FilteredNilpotentSpace {
    match fixture(name) {
        Fixture::Filtration { w, n: Some(n) } => FilteredNilpotentSpace::new(w, n).expect("admissible"),
        _ => panic!("{name} is not a filtration fixture with N"),
    }
}

fn contraction(l: &DgLie) -> Contraction {
    if l.space().is_weighted() {
        weighted_contraction(l.space(), l.differential()).expect("weighted contraction")
    } else {
        standard_contraction(l).expect("contraction")
    }
}

fn monodromy_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut searched = 0;
    for k in 0..200 {
        let dim = 1 + k % 8;
        let (n, _) = random_nilpotent(&mut rng, dim);
        let w: i64 = rng.gen_range(-2..=2);
        let m = monodromy_filtration(&n, w).expect("monodromy filtration");
        if let Err(e) = monodromy_conditions(&m, n.matrix(), w) {
            return outcome(false, format!("sample {k} (dim {dim}): {e}"));
        }
        if dim <= 5 {
            let q = n.nilpotency_index() as i64;
            let candidates = lattice(dim, kernel_image_seeds(n.matrix()));
            let found = search(&candidates, n.matrix(), w - q, w + q, &|f| monodromy_conditions(f, n.matrix(), w).is_ok());
            if found != [m.clone()] {
                return outcome(false, format!("sample {k}: search found {} filtrations", found.len()));
            }
            searched += 1;
        }
    }
    outcome(true, format!("200 samples, uniqueness searched on {searched} of dim <= 5"))
}

fn relative_criterion() -> Outcome {
    let fs = filtered("relative_not_exists.fix");
    let computed = relative_monodromy_filtration(&fs).expect("runs");
    let mut seeds = kernel_image_seeds(fs.n.matrix());
    seeds.extend(fs.w.jumps().iter().map(|(_, s)| s.clone()));
    seeds.extend(grid_lines(2, 3));
    let candidates = lattice(2, seeds);
    let found = search(&candidates, fs.n.matrix(), -3, 3, &|f| relative_conditions(f, &fs.w, &fs.n).is_ok());
    if computed != RelativeMonodromy::NotExists || !found.is_empty() {
        return outcome(false, format!("fixture: computed {computed:?}, search found {}", found.len()));
    }
    // The same search recovers M where it exists.
    for name in ["pure_jordan2.fix", "mixed_exists.fix"] {
        let fs = filtered(name);
        let RelativeMonodromy::Exists(m) = relative_monodromy_filtration(&fs).expect("runs") else {
            return outcome(false, format!("{name}: NotExists"));
        };
        let dim = fs.dim();
        let mut seeds = kernel_image_seeds(fs.n.matrix());
        seeds.extend(fs.w.jumps().iter().map(|(_, s)| s.clone()));
        let found = search(&lattice(dim, seeds), fs.n.matrix(), -3, 4, &|f| relative_conditions(f, &fs.w, &fs.n).is_ok());
        if found != [m] {
            return outcome(false, format!("{name}: search found {} filtrations", found.len()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let (mut ok, mut absent, mut tries) = (0, 0, 0);
    while ok < 100 && tries < 2000 {
        tries += 1;
        let dim = rng.gen_range(1..=6);
        let fs = random_filtered_nilpotent(&mut rng, dim);
        match relative_monodromy_filtration(&fs).expect("runs") {
            RelativeMonodromy::Exists(m) => {
                if let Err(e) = relative_conditions(&m, &fs.w, &fs.n) {
                    return outcome(false, format!("random pair {tries}: {e}"));
                }
                ok += 1;
            }
            RelativeMonodromy::NotExists => absent += 1,
        }
    }
    outcome(ok == 100, format!("NotExists confirmed by search; {ok} random pairs verified, {absent} without M"))
}

fn z_criterion() -> Outcome {
    let mut corpus: Vec<FilteredNilpotentSpace> = ["pure_jordan2.fix", "two_step_zero.fix", "mixed_exists.fix", "relative_not_exists.fix"]
        .iter()
        .map(|n| filtered(n))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for _ in 0..150 {
        let dim = rng.gen_range(1..=6);
        corpus.push(random_filtered_nilpotent(&mut rng, dim));
    }
    let mut compared = 0;
    for (k, fs) in corpus.iter().enumerate() {
        let RelativeMonodromy::Exists(m) = relative_monodromy_filtration(fs).expect("runs") else { continue };
        let z = z_filtration(&fs.w, &m, &fs.n).expect("z");
        let zk = z_filtration_kashiwara(&fs.w, &fs.n).expect("z");
        if z != zk {
            return outcome(false, format!("corpus entry {k} differs"));
        }
        compared += 1;
    }
    outcome(true, format!("{compared} of {} corpus entries have M; all agree", corpus.len()))
}

fn tensor_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for k in 0..50 {
        let (d1, d2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let (n1, _) = random_nilpotent(&mut rng, d1);
        let (n2, _) = random_nilpotent(&mut rng, d2);
        let (w1, w2) = (rng.gen_range(-1..=1), rng.gen_range(-1..=1));
        if !check_tensor_monodromy((&n1, w1), (&n2, w2)).expect("runs") {
            return outcome(false, format!("tensor monodromy fails on pair {k}"));
        }
    }
    let (mut held, mut failed, mut skipped, mut witness) = (0, Vec::new(), 0, None);
    let mut pairs = vec![(filtered("pure_jordan2.fix"), filtered("pure_jordan2.fix"))];
    for _ in 0..50 {
        let (d1, d2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        pairs.push((random_filtered_nilpotent(&mut rng, d1), random_filtered_nilpotent(&mut rng, d2)));
    }
    for (k, (f1, f2)) in pairs.iter().enumerate() {
        match check_weight_z_inclusions(f1, f2) {
            Ok((true, _)) => held += 1,
            Ok((false, data)) => {
                failed.push(k);
                witness = witness.or_else(|| first_bad_inclusion(&f1.w, &data.z2, &data.z).map(|w| format!("pair {k} ({}), {w}", if k == 0 { "pure_jordan2 twice" } else { "random" })));
            }
            Err(_) => skipped += 1,
        }
    }
    let detail = format!(
        "tensor monodromy holds on 50 pairs; W (x) Z inclusions hold on {held}, fail on {}, {skipped} without M; first counterexample: {}",
        failed.len(),
        witness.unwrap_or_else(|| "none".into())
    );
    outcome(failed.is_empty(), detail)
}

/// First `(k, l)` with `W1_k (x) Z2_l` not inside `Z_{k+l}`.
fn first_bad_inclusion(w1: &Filtration, z2: &Filtration, z: &Filtration) -> Option<String> {
    let (lo1, hi1) = w1.range()?;
    let (lo2, hi2) = z2.range()?;
    for k in lo1..=hi1 {
        for l in lo2..=hi2 {
            let wz = tensor_subspace(&w1.get(k), &z2.get(l));
            let target = z.get(k + l);
            if !wz.is_subspace_of(&target) {
                let meet = wz.intersect(&target).expect("ambient").dim();
                return Some(format!(
                    "W1_{k} (x) Z2_{l} has dim {} and meets Z_{} (dim {}) in dim {meet}",
                    wz.dim(),
                    k + l,
                    target.dim()
                ));
            }
        }
    }
    None
}

fn transfer_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    for k in 0..100 {
        let l = random_dgla(&mut rng, 6);
        let s = from_dgla(&l, 5).expect("dgla");
        let c = standard_contraction(&l).expect("contraction");
        let t = homotopy_transfer(&s, &c, 5).expect("transfer");
        let r = check_linfinity_axioms(&t.structure, 5);
        if !r.passed() {
            return outcome(false, format!("random DGLA {k}: {r}"));
        }
    }
    let mut formal: Vec<DgLie> = (0..30).map(|_| random_formal_dgla(&mut rng, 6)).collect();
    formal.push(dgla("sl2.fix"));
    formal.push(dgla("abelian.fix"));
    for (k, l) in formal.iter().enumerate() {
        let t = homotopy_transfer(&from_dgla(l, 5).expect("dgla"), &standard_contraction(l).expect("c"), 5).expect("t");
        if !t.structure.is_zero_from(3) {
            return outcome(false, format!("d = 0 entry {k} has l_r != 0 for some r >= 3"));
        }
    }
    outcome(true, format!("100 random DGLAs to arity 5; {} with d = 0 keep only l_2", formal.len()))
}

fn obstruction_criterion() -> Outcome {
    let l = dgla("non_formal.fix");
    let c = contraction(&l);
    let t = graded_transfer(&from_dgla(&l, 3).expect("dgla"), &c, 3).expect("transfer");
    let sp = t.structure.space();
    let a = sp.index_of("[a]").expect("[a] in H");
    let y1 = sp.unit(a);
    let x1 = c.include(&y1);
    // Order 2 in L: d x2 = -1/2 [x1, x1].
    let rhs: Vec<Q> = l.bracket(&x1, &x1).into_iter().map(|v| -v / Q::from_integer(2.into())).collect();
    let Some(x2) = l.differential().solve(&rhs) else {
        return outcome(false, "order 2 is obstructed");
    };
    let boundaries = l.differential().image();
    let cocycles = l.differential().kernel();
    let mut checked = 0;
    for z in cocycles.basis_vectors().iter().chain(std::iter::once(&l.space().zero_vector())) {
        let x2: Vec<Q> = x2.iter().zip(z).map(|(p, q)| p.clone() + q.clone()).collect();
        // Order 3 coefficient of d x + 1/2 [x, x] with x = x1 t + x2 t^2 (+ x3 t^3).
        let o3 = l.bracket(&x1, &x2);
        let y2 = c.project(&x2);
        let predicted = order3_prediction(&t, &y1, &y2);
        let class = c.project(&o3);
        if class != predicted {
            return outcome(false, format!("class {} vs prediction {}", sp.format_vector(&class), sp.format_vector(&predicted)));
        }
        let diff: Vec<Q> = o3.iter().zip(c.include(&predicted)).map(|(p, q)| p.clone() - q).collect();
        if !boundaries.contains_vector(&diff) {
            return outcome(false, "obstruction minus the included prediction is not exact");
        }
        if predicted.iter().all(|v| v.is_zero()) {
            return outcome(false, "obstruction vanishes");
        }
        checked += 1;
    }
    let value = sp.format_vector(&order3_prediction(&t, &y1, &c.project(&x2)));
    outcome(true, format!("class = {value} for {checked} choices of x2"))
}

fn cone_corpus() -> Vec<(&'static str, DgLie, Augmentation)> {
    let mut out: Vec<(&'static str, DgLie, Augmentation)> = ["sl2_augmented.fix", "item4.fix", "cone_dims.fix"]
        .into_iter()
        .map(|n| {
            let (l, aug) = augmented(n);
            (n, l, aug)
        })
        .collect();
    let l = dgla("non_formal.fix");
    out.push(("non_formal.fix with eps = 0", l.clone(), Augmentation::zero(&l)));
    out
}

/// `dim H^n` from ranks of `m` restricted to degrees `n` and `n-1`.
fn rank_cohomology(space: &GradedSpace, m: &Matrix, n: i64) -> usize {
    let rank_from = |deg: i64| {
        let cols: Vec<Vec<Q>> = space.indices_in_degree(deg).iter().map(|&j| m.column(j)).collect();
        if cols.is_empty() {
            0
        } else {
            Matrix::from_columns(&cols, m.rows()).expect("columns").rank()
        }
    };
    space.indices_in_degree(n).len() - rank_from(n) - rank_from(n - 1)
}

fn cone_criterion() -> Outcome {
    let mut lines = Vec::new();
    for (name, l, aug) in cone_corpus() {
        let cone = build_cone(&l, &aug, 5).expect("cone");
        let r = check_linfinity_axioms(&cone.structure, 5);
        if !r.passed() {
            return outcome(false, format!("{name}: {r}"));
        }
        let h1c = rank_cohomology(cone.structure.space(), &cone.structure.m1_matrix(), 1);
        let h1l = rank_cohomology(l.space(), l.differential(), 1);
        let z0 = {
            let cols: Vec<Vec<Q>> = l.space().indices_in_degree(0).iter().map(|&j| l.space().unit(j)).collect();
            let l0 = Subspace::span(l.dim(), &cols).expect("span");
            l0.intersect(&l.differential().kernel()).expect("ambient")
        };
        let eps_h0 = z0.image_under(&aug.eps).expect("shape").dim();
        let expected = h1l + aug.target.dim() - eps_h0;
        if h1c != expected {
            return outcome(false, format!("{name}: dim H1(C) = {h1c}, expected {expected}"));
        }
        lines.push(format!("{name} {h1c}"));
    }
    outcome(true, format!("axioms to arity 5; dim H1(C): {}", lines.join(", ")))
}

fn split_criterion() -> Outcome {
    let mut tuples = 0usize;
    for (name, l, aug) in cone_corpus() {
        let c_l = contraction(&l);
        let split = split_cone_transfer(&l, &aug, &c_l, &default_complement(&l, &aug), 5).expect("split");
        let lh = split.l_transfer.structure.space();
        let ch = split.transfer.structure.space();
        let cone_reps: Vec<Vec<Q>> = (0..ch.dim()).map(|j| split.contraction.i.column(j)).collect();
        // Match cohomology bases through their representatives in the cone.
        let mut to_cone = vec![usize::MAX; lh.dim()];
        for k in (0..lh.dim()).filter(|&k| lh.degree(k) >= 1) {
            let rep = split.cone.embed_l(&c_l.i.column(k));
            match cone_reps.iter().position(|r| *r == rep) {
                Some(j) => to_cone[k] = j,
                None => return outcome(false, format!("{name}: representative of {} is not a cone representative", lh.label(k))),
            }
        }
        let t_idx: Vec<usize> = ch
            .indices_in_degree(1)
            .into_iter()
            .filter(|&j| split.cone.l_component(&cone_reps[j]).iter().all(|v| v.is_zero()))
            .collect();
        if t_idx.len() + lh.indices_in_degree(1).len() != ch.indices_in_degree(1).len() {
            return outcome(false, format!("{name}: H1(C) is not H1(L) plus t"));
        }
        let k1 = lh.indices_in_degree(1);
        for r in 2..=5 {
            for tuple in multisets(k1.len(), r) {
                let args: Vec<usize> = tuple.iter().map(|&i| k1[i]).collect();
                let mapped: Vec<usize> = args.iter().map(|&i| to_cone[i]).collect();
                let lv = split.l_transfer.structure.l(r, &args);
                let cv = split.transfer.structure.l(r, &mapped);
                let mut embedded = vec![Q::zero(); ch.dim()];
                for (k, v) in lv.into_iter().enumerate() {
                    if !v.is_zero() {
                        embedded[to_cone[k]] = v;
                    }
                }
                if embedded != cv {
                    return outcome(false, format!("{name}: l_{r} differs on {mapped:?}"));
                }
                tuples += 1;
            }
            // Any t argument kills the H^2 components.
            let mut pool: Vec<usize> = k1.iter().map(|&i| to_cone[i]).collect();
            pool.extend(&t_idx);
            for tuple in multisets(pool.len(), r) {
                let args: Vec<usize> = tuple.iter().map(|&i| pool[i]).collect();
                if !args.iter().any(|i| t_idx.contains(i)) {
                    continue;
                }
                let v = split.transfer.structure.l(r, &args);
                if ch.indices_in_degree(2).iter().any(|&k| !v[k].is_zero()) {
                    return outcome(false, format!("{name}: l_{r} with a t argument reaches H2 on {args:?}"));
                }
                tuples += 1;
            }
        }
        if !split.report.passed() {
            return outcome(false, format!("{name}: {}", split.report));
        }
    }
    outcome(true, format!("{tuples} tuples compared up to arity 5"))
}

fn consequences_criterion() -> Outcome {
    let mut notes = Vec::new();
    for (item, res) in consequence_suite(6) {
        let out = match res {
            Ok(o) => o,
            Err(e) => return outcome(false, format!("item {item}: {e}")),
        };
        let p = &out.presentation;
        let weights = p.weights();
        for r in &p.relations {
            if r.poly.homogeneous_weight(&weights) != Some(r.weight) {
                return outcome(false, format!("item {item}: relation {} is not homogeneous", r.poly));
            }
        }
        let degrees: Vec<u32> = p.relations.iter().filter_map(|r| r.poly.degree()).collect();
        let ok = match item {
            1 | 3 => !degrees.is_empty() && degrees.iter().all(|&d| d == 2),
            2 | 4 => {
                let gens: Vec<i64> = p.generators.iter().filter(|g| !g.is_free()).map(|g| g.weight).collect();
                gens.iter().all(|w| [1, 2].contains(w))
                    && p.relations.iter().all(|r| [2, 3, 4].contains(&r.weight))
                    && degrees.iter().all(|&d| d <= 4)
                    && degrees.iter().any(|&d| d > 2)
            }
            _ => true,
        };
        if !ok || !out.report.passed() {
            return outcome(false, format!("item {item}: {p}\n{}", out.report));
        }
        notes.push(format!("{item}: {} relations", p.relations.len()));
    }
    outcome(true, notes.join(", "))
}

fn soundness_criterion() -> Outcome {
    let alg = ArtinAlgebra::single(3);
    let mut counts = Vec::new();
    for name in ["non_formal.fix", "item2.fix", "item4.fix"] {
        let (l, aug) = match fixture(name) {
            Fixture::Dgla(l) => (l, None),
            Fixture::Augmentation { l, aug } => (l, Some(aug)),
            _ => unreachable!(),
        };
        let pr = present(&l, aug.as_ref(), 6).expect("presentation");
        let sols = solve_order_by_order(&pr.presentation, 3, &[-1, 0, 1], 64);
        let nontrivial = sols.iter().filter(|s| s.iter().any(|x| !x.is_zero())).count();
        if nontrivial == 0 {
            return outcome(false, format!("{name}: no nonzero solutions"));
        }
        for (k, sol) in sols.iter().enumerate() {
            for r in &pr.presentation.relations {
                if !r.poly.substitute(sol, Some(3)).is_zero() {
                    return outcome(false, format!("{name}: solution {k} does not satisfy {}", r.poly));
                }
            }
            let y = solution_element(&pr.presentation, pr.transfer.structure.dim(), sol);
            let x = push_forward(&pr.transfer, &y, &alg).expect("push forward");
            let curv = match &aug {
                None => dgla_curvature(&l, &x, &alg),
                Some(_) => curvature(&pr.source, &x, &alg),
            }
            .expect("curvature");
            if !curv.is_zero() {
                return outcome(false, format!("{name}: solution {k} has curvature {}", curv.format(pr.source.space(), &alg)));
            }
        }
        counts.push(format!("{name} {nontrivial}"));
    }
    outcome(true, format!("nonzero solutions mod t^4 with zero curvature: {}", counts.join(", ")))
}

fn determinism_criterion() -> Outcome {
    let mut stale = Vec::new();
    for c in support::CASES {
        let (first, _) = support::render(c);
        let (second, _) = support::render(c);
        if first != second {
            return outcome(false, format!("{} differs between runs", c.name));
        }
        let golden = std::fs::read_to_string(support::golden_dir().join(format!("{}.txt", c.name))).unwrap_or_default();
        if golden != first {
            stale.push(c.name);
        }
    }
    outcome(stale.is_empty(), format!("{} reports identical across two runs; differing from golden: {stale:?}", support::CASES.len()))
}

fn main() {
    let criteria: [(u8, &str, fn() -> Outcome, Option<Duration>); 11] = [
        (1, "monodromy filtration", monodromy_criterion, Some(Duration::from_secs(60))),
        (2, "relative monodromy", relative_criterion, None),
        (3, "Z-filtration equality", z_criterion, None),
        (4, "tensor monodromy and W (x) Z inclusions", tensor_criterion, None),
        (5, "transfer soundness", transfer_criterion, Some(Duration::from_secs(300))),
        (6, "order 3 obstruction", obstruction_criterion, None),
        (7, "cone certification", cone_criterion, None),
        (8, "product decomposition", split_criterion, None),
        (9, "weight consequence suite", consequences_criterion, None),
        (10, "presentation soundness", soundness_criterion, None),
        (11, "CLI determinism", determinism_criterion, None),
    ];
    let mut unexpected = Vec::new();
    for (n, title, f, limit) in criteria {
        let start = Instant::now();
        let mut o = f();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed > limit {
                o.passed = false;
                o.detail = format!("{} (over the {}s limit)", o.detail, limit.as_secs());
            }
        }
        let status = match (o.passed, KNOWN_FAILURES.contains(&n)) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {n:>2} {status}: {title} [{:.1}s] {}", elapsed.as_secs_f64(), o.detail.replace('\n', " / "));
        if !o.passed && !KNOWN_FAILURES.contains(&n) {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
