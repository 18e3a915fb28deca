//! Weighted fixtures realizing the six weight profiles, plus the non-formal
//! fixture used by the obstruction oracle, and the consequence suite.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::cone::{cone_cohomology, default_complement, split_cone_transfer};
use crate::deformation::{bare, extract_presentation, FreeGenerator, Presentation};
use crate::error::{Error, Result};
use crate::graded_lie::{
    check_augmentation, weighted_contraction, Augmentation, BasisElement, DgLie, GradedSpace, Vector,
};
use crate::linfinity::{from_dgla, graded_transfer, predict_vanishing, LInfinity, Transfer, VanishingPrediction};
use crate::report::CheckReport;
use crate::scalar::{q, Q};
use crate::Matrix;

/// Builds a weighted DGLA from `(label, degree, weight)`, `d` images and
/// brackets, all with integer coefficients; brackets complete by symmetry.
pub fn weighted_dgla(
    basis: &[(&str, i64, i64)],
    d: &[(&str, &[(&str, i64)])],
    brackets: &[(&str, &str, &[(&str, i64)])],
) -> Result<DgLie> {
    let space = GradedSpace::new(
        basis
            .iter()
            .map(|(l, deg, w)| BasisElement { label: l.to_string(), degree: *deg, weight: Some(*w) })
            .collect(),
    )?;
    let n = space.dim();
    let idx = |l: &str| space.index_of(l).ok_or_else(|| Error::Invalid(format!("unknown label {l}")));
    let combo = |terms: &[(&str, i64)]| -> Result<Vector> {
        let mut v = vec![Q::zero(); n];
        for (l, c) in terms {
            v[idx(l)?] += q(*c);
        }
        Ok(v)
    };
    let mut dm = Matrix::zeros(n, n);
    for (src, img) in d {
        let v = combo(img)?;
        let j = idx(src)?;
        for (i, c) in v.into_iter().enumerate() {
            dm.set(i, j, c);
        }
    }
    let mut br = BTreeMap::new();
    for (a, b, img) in brackets {
        br.insert((idx(a)?, idx(b)?), combo(img)?);
    }
    DgLie::with_antisymmetric_completion(space, dm, br)
}

/// `L¹ = ⟨a, b⟩`, `L² = ⟨u, v⟩` with `db = u`, `[a,a] = u`, `[a,b] = v`;
/// weights 1, 2, 2, 3. Its MC equation has a nonzero order 3 obstruction
/// along `a t` that only the transferred `ℓ₃` sees.
pub fn non_formal() -> DgLie {
    weighted_dgla(
        &[("a", 1, 1), ("b", 1, 2), ("u", 2, 2), ("v", 2, 3)],
        &[("b", &[("u", 1)])],
        &[("a", "a", &[("u", 1)]), ("a", "b", &[("v", 1)])],
    )
    .expect("valid fixture")
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub item: u8,
    pub title: &'static str,
    /// Weight profile chosen by hand, not forced by any geometric bound.
    pub artificial: bool,
    pub l: DgLie,
    pub aug: Option<Augmentation>,
}

fn item2_dgla(extra: bool) -> DgLie {
    let mut basis = vec![
        ("a", 1, 1),
        ("c", 1, 2),
        ("b", 1, 2),
        ("b2", 1, 3),
        ("u", 2, 2),
        ("z", 2, 2),
        ("v", 2, 3),
        ("v2", 2, 3),
        ("w", 2, 4),
    ];
    let mut d: Vec<(&str, &[(&str, i64)])> = vec![("b", &[("u", 1)]), ("b2", &[("v2", 1)])];
    let mut brackets: Vec<(&str, &str, &[(&str, i64)])> = vec![
        ("a", "a", &[("u", 1), ("z", 1)]),
        ("a", "b", &[("v", 1), ("v2", 1)]),
        ("a", "b2", &[("w", 1)]),
        ("a", "c", &[("v", 1)]),
        ("c", "c", &[("w", 1)]),
    ];
    if extra {
        // e1 acts by the weight derivation (and fixes e2, b0); d e2 = b0.
        basis.extend([("e1", 0, 0), ("e2", 0, 0), ("b0", 1, 0)]);
        d.push(("e2", &[("b0", 1)]));
        brackets.extend([
            ("e1", "e2", &[("e2", 1i64)] as &[(&str, i64)]),
            ("e1", "b0", &[("b0", 1)]),
            ("e1", "a", &[("a", 1)]),
            ("e1", "c", &[("c", 2)]),
            ("e1", "b", &[("b", 2)]),
            ("e1", "b2", &[("b2", 3)]),
            ("e1", "u", &[("u", 2)]),
            ("e1", "z", &[("z", 2)]),
            ("e1", "v", &[("v", 3)]),
            ("e1", "v2", &[("v2", 3)]),
            ("e1", "w", &[("w", 4)]),
        ]);
    }
    weighted_dgla(&basis, &d, &brackets).expect("valid fixture")
}

/// The fixtures for items 1 to 6.
pub fn scenarios() -> Vec<Scenario> {
    let item1 = weighted_dgla(
        &[("x", 1, 1), ("y", 1, 1), ("s", 1, 1), ("b", 1, 2), ("z", 2, 2), ("u", 2, 2)],
        &[("b", &[("u", 1)])],
        &[("x", "y", &[("z", 1)]), ("s", "s", &[("z", 1)])],
    )
    .expect("valid fixture");
    let item3 = weighted_dgla(
        &[("p", 1, 2), ("r", 1, 2), ("b", 1, 4), ("u", 2, 4), ("k", 2, 4)],
        &[("b", &[("u", 1)])],
        &[("p", "r", &[("u", 1), ("k", 1)]), ("p", "p", &[("k", 1)])],
    )
    .expect("valid fixture");
    let item4_l = item2_dgla(true);
    let g = weighted_dgla(&[("g1", 0, 0), ("g2", 0, 0)], &[], &[("g1", "g2", &[("g2", 1)])]).expect("aff");
    let mut eps = Matrix::zeros(2, item4_l.dim());
    eps.set(0, item4_l.space().index_of("e1").expect("e1"), q(1));
    eps.set(1, item4_l.space().index_of("e2").expect("e2"), q(1));
    let aug = Augmentation::new(&item4_l, g, eps).expect("augmentation shapes");
    let item5 = weighted_dgla(
        &[("a", 1, 1), ("f", 1, 3), ("b", 1, 2), ("u", 2, 2), ("z", 2, 2), ("v", 2, 3), ("y", 2, 4)],
        &[("b", &[("u", 1)])],
        &[("a", "a", &[("u", 1), ("z", 1)]), ("a", "b", &[("v", 1)]), ("a", "f", &[("y", 1)])],
    )
    .expect("valid fixture");
    let item6 = weighted_dgla(
        &[("a", 1, 1), ("g", 1, 2), ("m", 1, 5), ("b", 1, 2), ("u", 2, 2), ("z", 2, 2), ("v", 2, 3), ("s", 2, 6)],
        &[("b", &[("u", 1)])],
        &[("a", "a", &[("u", 1), ("z", 1)]), ("a", "g", &[("v", 1)]), ("a", "m", &[("s", 1)])],
    )
    .expect("valid fixture");
    vec![
        Scenario { item: 1, title: "pure weights 1 and 2", artificial: false, l: item1, aug: None },
        Scenario { item: 2, title: "weights 1,2 on H1 and 2,3,4 on H2", artificial: false, l: item2_dgla(false), aug: None },
        Scenario { item: 3, title: "H1 pure of weight 2", artificial: false, l: item3, aug: None },
        Scenario { item: 4, title: "weights 1,2 / 2,3,4 with an augmentation", artificial: false, l: item4_l, aug: Some(aug) },
        Scenario { item: 5, title: "lowest weights 1 and 2, bounded by hand", artificial: true, l: item5, aug: None },
        Scenario { item: 6, title: "lowest H1 weight 1, bounded by hand", artificial: true, l: item6, aug: None },
    ]
}

/// Everything computed for one scenario.
#[derive(Clone, Debug)]
pub struct ScenarioOutcome {
    pub item: u8,
    pub title: &'static str,
    pub artificial: bool,
    pub prediction: VanishingPrediction,
    pub presentation: Presentation,
    pub transfer: Transfer,
    pub report: CheckReport,
}

/// A presentation together with what produced it.
#[derive(Clone, Debug)]
pub struct Presented {
    /// The structure the transfer starts from: `L`, or the cone when augmented.
    pub source: LInfinity,
    pub transfer: Transfer,
    pub presentation: Presentation,
    pub prediction: VanishingPrediction,
    pub report: CheckReport,
}

/// Transfer, prediction and presentation for a weighted DGLA. With an
/// augmentation the cone is transferred and `𝔤/ε(H⁰)` becomes free.
pub fn present(l: &DgLie, aug: Option<&Augmentation>, cap: usize) -> Result<Presented> {
    let mut report = CheckReport::new();
    let c_l = weighted_contraction(l.space(), l.differential())?;
    let (source, transfer, presentation) = match aug {
        None => {
            let s = from_dgla(l, cap)?;
            let t = graded_transfer(&s, &c_l, cap)?;
            let p = extract_presentation(&t.structure, &[])?;
            (s, t, p)
        }
        Some(aug) => {
            report.extend(check_augmentation(l, aug).report);
            let tc = default_complement(l, aug);
            let split = split_cone_transfer(l, aug, &c_l, &tc, cap)?;
            report.extend(split.report.clone());
            report.extend(cone_cohomology(l, aug, &split.cone)?.report);
            let sp = split.transfer.structure.space();
            let free: Vec<FreeGenerator> = split
                .t_indices
                .iter()
                .map(|&i| FreeGenerator { name: bare(sp.label(i)), weight: sp.weight(i).unwrap_or(0), index: Some(i) })
                .collect();
            let p = extract_presentation(&split.transfer.structure, &free)?;
            (split.cone.structure, split.transfer, p)
        }
    };
    let sp = transfer.structure.space();
    let h1: Vec<i64> = presentation.generators.iter().filter(|g| !g.is_free()).map(|g| g.weight).collect();
    let h2: Vec<i64> = sp.indices_in_degree(2).iter().filter_map(|&k| sp.weight(k)).collect();
    let prediction = predict_vanishing(&h1, &h2)?;

    let homog = presentation.all_homogeneous() && presentation.relations.iter().all(|r| h2.contains(&r.weight));
    report.push("relations are weighted-homogeneous with H2 weights", homog, None);
    let bound = presentation.max_degree() as usize <= prediction.max_arity;
    report.push(
        "relation degree within the predicted arity",
        bound,
        (!bound).then(|| format!("{} > {}", presentation.max_degree(), prediction.max_arity)),
    );
    let beyond = (prediction.max_arity + 1..=transfer.structure.cap())
        .all(|r| transfer.structure.entries(r).all(|(k, _)| k.iter().any(|&i| sp.degree(i) != 1)));
    report.push("no operation on H1 beyond the predicted arity", beyond, None);
    Ok(Presented { source, transfer, presentation, prediction, report })
}

/// Transfer, prediction and presentation for a scenario, with the checks
/// specific to its item.
pub fn analyse(sc: &Scenario, cap: usize) -> Result<ScenarioOutcome> {
    let Presented { transfer, presentation, prediction, mut report, .. } = present(&sc.l, sc.aug.as_ref(), cap)?;
    let h1: Vec<i64> = presentation.generators.iter().filter(|g| !g.is_free()).map(|g| g.weight).collect();
    let gen_w: Vec<i64> = h1.clone();
    let rel_w = presentation.relation_weights();
    match sc.item {
        1 | 3 => {
            let ok = presentation.is_quadratic() && !presentation.relations.is_empty();
            report.push("quadratic presentation", ok, (!ok).then(|| presentation.to_string()));
        }
        2 | 4 => {
            let ok = gen_w.iter().all(|w| [1, 2].contains(w))
                && rel_w.iter().all(|w| [2, 3, 4].contains(w))
                && presentation.max_degree() <= 4;
            report.push("generator weights in {1,2}, relation weights in {2,3,4}, degree <= 4", ok, None);
            let higher = !transfer.structure.is_zero_from(3);
            report.push("higher operations occur", higher, None);
            if sc.item == 4 {
                let free = presentation.generators.iter().filter(|g| g.is_free()).count();
                let ok = free > 0 && presentation.free_unconstrained();
                report.push("free factor g/eps(H0) present and unconstrained", ok, None);
            }
        }
        _ => {
            let ok = presentation.all_homogeneous() && prediction.max_arity < usize::MAX;
            report.push("finite weighted-homogeneous presentation", ok, None);
        }
    }
    Ok(ScenarioOutcome {
        item: sc.item,
        title: sc.title,
        artificial: sc.artificial,
        prediction,
        presentation,
        transfer,
        report,
    })
}

/// Runs every scenario.
pub fn consequence_suite(cap: usize) -> Vec<(u8, Result<ScenarioOutcome>)> {
    scenarios().iter().map(|sc| (sc.item, analyse(sc, cap))).collect()
}
