//! The L∞ structure on the desuspended mapping cone of an augmentation
//! `ε: L -> 𝔤`, its cohomology, and the transfer that splits off `𝔤/ε(H⁰)`.
//!
//! The cone has basis: the basis of `L`, then the basis of `𝔤` placed in
//! degree 1. In the shifted symmetric form used by [`LInfinity`]:
//!
//! * `m_1(x) = d x + ε(x)` for `x ∈ L⁰`, `m_1 = d` otherwise;
//! * `m_2` is the bracket of `L` on `L × L`;
//! * `m_{r+1}(x, u_1, …, u_r) = c_r Σ_σ [u_σ(1), [u_σ(2), … [u_σ(r), ε(x)]…]]`
//!   for `x ∈ L⁰`, `u_i ∈ 𝔤`, with `c_r` from [`cone_coefficients`];
//! * everything else vanishes, in particular any higher operation with two
//!   or more arguments from `L`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_linalg::Subspace as Sub;
use crate::graded_lie::{
    check_augmentation, complex_cohomology, complex_contraction, is_zero_vector, Augmentation, BasisElement,
    Contraction, ContractionChoices, DgLie, GradedSpace, Vector,
};
use crate::linfinity::{homotopy_transfer, multisets, LInfinity, Transfer};
use crate::report::CheckReport;
use crate::scalar::{bernoulli_numbers, factorial, Q};
use crate::Subspace;

/// Which summand a cone basis vector comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    L,
    G,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConeStructure {
    pub structure: LInfinity,
    pub l_dim: usize,
    pub g_dim: usize,
}

impl ConeStructure {
    pub fn part(&self, i: usize) -> Part {
        if i < self.l_dim {
            Part::L
        } else {
            Part::G
        }
    }

    /// Embeds a vector of `L` into the cone.
    pub fn embed_l(&self, v: &[Q]) -> Vector {
        let mut out = v.to_vec();
        out.extend(std::iter::repeat_n(Q::zero(), self.g_dim));
        out
    }

    /// Embeds a vector of `𝔤` into the cone.
    pub fn embed_g(&self, v: &[Q]) -> Vector {
        let mut out = vec![Q::zero(); self.l_dim];
        out.extend(v.iter().cloned());
        out
    }

    pub fn l_component(&self, v: &[Q]) -> Vector {
        v[..self.l_dim].to_vec()
    }

    pub fn g_component(&self, v: &[Q]) -> Vector {
        v[self.l_dim..].to_vec()
    }
}

/// `c_r = (-1)^r B_r / r!`, i.e. the Taylor coefficients of `t / (1 - e^{-t})`:
/// `1/2, 1/12, 0, -1/720, …`.
pub fn cone_coefficients(max_r: usize) -> Vec<Q> {
    let b = bernoulli_numbers(max_r);
    (0..=max_r)
        .map(|r| {
            let c = b[r].clone() / factorial(r);
            if r % 2 == 1 { -c } else { c }
        })
        .collect()
}

/// Builds the cone structure with operations up to arity `cap`.
pub fn build_cone(l: &DgLie, aug: &Augmentation, cap: usize) -> Result<ConeStructure> {
    build_cone_with(l, aug, cap, &cone_coefficients(cap))
}

/// Cone with an explicit coefficient table `c_r` (index `r`, entry 0 unused).
pub fn build_cone_with(l: &DgLie, aug: &Augmentation, cap: usize, coefficients: &[Q]) -> Result<ConeStructure> {
    let ls = l.space();
    let g = &aug.target;
    let gs = g.space();
    let l_dim = ls.dim();
    let g_dim = gs.dim();
    let mut basis: Vec<BasisElement> = ls.basis().to_vec();
    basis.extend(gs.basis().iter().map(|b| BasisElement { label: b.label.clone(), degree: 1, weight: b.weight }));
    let space = GradedSpace::new(basis)
        .map_err(|e| Error::Invalid(format!("cone labels of L and g must be distinct: {e}")))?;
    let cone = ConeStructure { structure: LInfinity::zero(space, cap.max(2)), l_dim, g_dim };
    let mut s = cone.structure.clone();

    let l0 = ls.indices_in_degree(0);
    let eps_of: BTreeMap<usize, Vector> = l0.iter().map(|&x| (x, aug.apply(&ls.unit(x)))).collect();

    for i in 0..l_dim {
        let mut v = cone.embed_l(&l.d(&ls.unit(i)));
        if let Some(e) = eps_of.get(&i) {
            for (k, c) in e.iter().enumerate() {
                v[l_dim + k] = c.clone();
            }
        }
        s.set_m(1, &[i], v)?;
    }
    let from_l = crate::linfinity::from_dgla_unchecked(l, 2);
    for (key, v) in from_l.entries(2) {
        s.set_m(2, key, cone.embed_l(v))?;
    }
    for r in 1..cap {
        let c = coefficients.get(r).cloned().unwrap_or_else(Q::zero);
        if c.is_zero() {
            continue;
        }
        for &x in &l0 {
            let ex = &eps_of[&x];
            if is_zero_vector(ex) {
                continue;
            }
            for us in multisets(g_dim, r) {
                let mut total = vec![Q::zero(); g_dim];
                for order in permutations(&us) {
                    let mut acc = ex.clone();
                    for &u in order.iter().rev() {
                        acc = g.bracket(&gs.unit(u), &acc);
                    }
                    for (t, a) in total.iter_mut().zip(acc) {
                        *t = t.clone() + a;
                    }
                }
                if is_zero_vector(&total) {
                    continue;
                }
                let scaled: Vector = total.into_iter().map(|t| t * c.clone()).collect();
                let mut key = vec![x];
                key.extend(us.iter().map(|&u| l_dim + u));
                s.set_m(r + 1, &key, cone.embed_g(&scaled))?;
            }
        }
    }
    let mut s = s;
    if cap < 2 {
        s = s.truncate(cap);
    }
    Ok(ConeStructure { structure: s, l_dim, g_dim })
}

/// All orderings of the positions of `items` (repeats give repeated orderings).
fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(k, x);
        }
    }
    let mut out = Vec::new();
    go(&mut items.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Support rules: no operation of arity `>= 3` with two `L` arguments, and
/// `m_2` vanishes on two `𝔤` arguments.
pub fn check_cone_support(c: &ConeStructure) -> CheckReport {
    let mut report = CheckReport::new();
    let s = &c.structure;
    let mut bad = None;
    for r in s.arities() {
        for (key, _) in s.entries(r) {
            let l_args = key.iter().filter(|&&i| c.part(i) == Part::L).count();
            if (r >= 3 && l_args >= 2) || (r == 2 && l_args == 0) {
                bad = Some(format!("arity {r} on {key:?}"));
            }
        }
    }
    match bad {
        Some(w) => report.fail("support", w),
        None => report.pass("support"),
    }
    report
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConeCohomology {
    pub dims: BTreeMap<i64, usize>,
    pub report: CheckReport,
}

/// Cohomology of the cone with the exact-sequence bookkeeping checked.
pub fn cone_cohomology(l: &DgLie, aug: &Augmentation, cone: &ConeStructure) -> Result<ConeCohomology> {
    let chk = check_augmentation(l, aug);
    for name in ["surjective on L^0", "injective on H^0"] {
        if chk.report.items.iter().any(|i| i.name == name && !i.passed) {
            return Err(Error::Precondition(format!("augmentation is not {name}")));
        }
    }
    let s = &cone.structure;
    let hc = complex_cohomology(s.space(), &s.m1_matrix());
    let hl = crate::graded_lie::cohomology(l);
    let mut report = CheckReport::new();
    let h0 = hc.dim(0);
    if h0 == 0 {
        report.pass("H^0(C) = 0");
    } else {
        report.fail("H^0(C) = 0", format!("dim H^0(C) = {h0}"));
    }
    let expected = hl.dim(1) + aug.target.dim() - chk.image_h0.dim();
    if hc.dim(1) == expected {
        report.pass("dim H^1(C) = dim H^1(L) + dim g - dim eps(H^0(L))");
    } else {
        report.fail(
            "dim H^1(C) = dim H^1(L) + dim g - dim eps(H^0(L))",
            format!("{} != {expected}", hc.dim(1)),
        );
    }
    let mut degrees: Vec<i64> = hl.dims.keys().chain(hc.dims.keys()).copied().filter(|&n| n != 0 && n != 1).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let bad = degrees.iter().find(|&&n| hc.dim(n) != hl.dim(n));
    match bad {
        Some(n) => report.fail("H^n(C) = H^n(L) for n != 0, 1", format!("degree {n}")),
        None => report.pass("H^n(C) = H^n(L) for n != 0, 1"),
    }
    let dims = hc.dims.iter().filter(|(_, d)| **d > 0).map(|(k, v)| (*k, *v)).collect();
    Ok(ConeCohomology { dims, report })
}

#[derive(Clone, Debug)]
pub struct SplitConeTransfer {
    pub cone: ConeStructure,
    pub contraction: Contraction,
    pub transfer: Transfer,
    pub l_transfer: Transfer,
    /// Cone cohomology index of each cohomology basis vector of `L` in degree 1.
    pub k1_map: Vec<(usize, usize)>,
    /// Cone cohomology indices of the `𝔱` basis.
    pub t_indices: Vec<usize>,
    pub report: CheckReport,
}

/// Transfers the cone along the contraction built from `c_l` and a
/// complement `t` of `ε(H⁰(L))`, then compares with the transfer of `L`
/// on all degree 1 tuples.
pub fn split_cone_transfer(
    l: &DgLie,
    aug: &Augmentation,
    c_l: &Contraction,
    t: &Subspace,
    cap: usize,
) -> Result<SplitConeTransfer> {
    let chk = check_augmentation(l, aug);
    if t.ambient_dim() != aug.target.dim()
        || !t.intersect(&chk.image_h0)?.is_zero()
        || t.dim() + chk.image_h0.dim() != aug.target.dim()
    {
        return Err(Error::Invalid("t is not a complement of eps(H^0(L))".into()));
    }
    let cone = build_cone(l, aug, cap)?;
    let embed = |v: &Vector| cone.embed_l(v);

    // K basis of L per degree, in the order of c_l.
    let mut k_by_degree: BTreeMap<i64, Vec<(usize, Vector)>> = BTreeMap::new();
    for a in 0..c_l.dim() {
        k_by_degree.entry(c_l.h_space.degree(a)).or_default().push((a, c_l.i.column(a)));
    }
    let mut choices = ContractionChoices::default();
    for deg in cone.structure.space().degrees() {
        let mut a_vecs: Vec<Vector> = c_l.a.get(&deg).map(|s| s.basis_vectors()).unwrap_or_default().iter().map(embed).collect();
        let mut k_vecs: Vec<Vector> = k_by_degree.get(&deg).map(|v| v.iter().map(|(_, x)| embed(x)).collect()).unwrap_or_default();
        if deg == 0 {
            a_vecs.extend(k_vecs.drain(..));
        }
        if deg == 1 {
            k_vecs.extend(t.basis_vectors().iter().map(|v| cone.embed_g(v)));
        }
        choices.a.insert(deg, a_vecs);
        choices.k.insert(deg, k_vecs);
    }
    let cc = complex_contraction(cone.structure.space(), &cone.structure.m1_matrix(), &choices)?;

    // Index maps: cone cohomology basis is ordered by degree, then as chosen.
    let mut k1_map = Vec::new();
    let mut t_indices = Vec::new();
    let mut offset = 0;
    for deg in cone.structure.space().degrees() {
        let count = choices.k.get(&deg).map_or(0, |v| v.len());
        if deg == 1 {
            let l_k1 = k_by_degree.get(&1).cloned().unwrap_or_default();
            for (pos, (a, _)) in l_k1.iter().enumerate() {
                k1_map.push((*a, offset + pos));
            }
            t_indices.extend(offset + l_k1.len()..offset + count);
        }
        offset += count;
    }

    let source = crate::linfinity::from_dgla(l, cap)?;
    let l_transfer = homotopy_transfer(&source, c_l, cap)?;
    let transfer = homotopy_transfer(&cone.structure, &cc, cap)?;
    let report = compare_split(&transfer, &l_transfer, &k1_map, &t_indices, &cc, c_l, cap);
    Ok(SplitConeTransfer { cone, contraction: cc, transfer, l_transfer, k1_map, t_indices, report })
}

fn compare_split(
    cone_t: &Transfer,
    l_t: &Transfer,
    k1_map: &[(usize, usize)],
    t_indices: &[usize],
    cc: &Contraction,
    c_l: &Contraction,
    cap: usize,
) -> CheckReport {
    let mut report = CheckReport::new();
    // Cone cohomology index of each L cohomology index, per degree order.
    let mut l_to_c: BTreeMap<usize, usize> = BTreeMap::new();
    let mut by_deg_c: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for i in 0..cc.dim() {
        by_deg_c.entry(cc.h_space.degree(i)).or_default().push(i);
    }
    let mut by_deg_l: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for i in 0..c_l.dim() {
        by_deg_l.entry(c_l.h_space.degree(i)).or_default().push(i);
    }
    for (deg, ls) in &by_deg_l {
        if *deg == 0 {
            continue;
        }
        if let Some(cs) = by_deg_c.get(deg) {
            for (a, b) in ls.iter().zip(cs) {
                l_to_c.insert(*a, *b);
            }
        }
    }
    let mut h1: Vec<usize> = k1_map.iter().map(|(_, c)| *c).collect();
    h1.extend(t_indices);
    h1.sort_unstable();
    let c_to_l: BTreeMap<usize, usize> = k1_map.iter().map(|(a, c)| (*c, *a)).collect();
    let cdim = cc.dim();
    for r in 2..=cap {
        let mut eq_bad = None;
        let mut t_bad = None;
        for tuple in multisets(h1.len(), r) {
            let args: Vec<usize> = tuple.iter().map(|&i| h1[i]).collect();
            let value = cone_t.structure.m(r, &args);
            if args.iter().any(|a| t_indices.contains(a)) {
                if !is_zero_vector(&value) && t_bad.is_none() {
                    t_bad = Some(format!("{args:?}"));
                }
                continue;
            }
            let l_args: Vec<usize> = args.iter().map(|a| c_to_l[a]).collect();
            let lv = l_t.structure.m(r, &l_args);
            let mut mapped = vec![Q::zero(); cdim];
            for (i, c) in lv.iter().enumerate() {
                if !c.is_zero() {
                    mapped[l_to_c[&i]] = c.clone();
                }
            }
            if mapped != value && eq_bad.is_none() {
                eq_bad = Some(format!("{args:?}"));
            }
        }
        match eq_bad {
            Some(w) => report.fail(format!("l'_{r} = l_{r} on K^1"), w),
            None => report.pass(format!("l'_{r} = l_{r} on K^1")),
        }
        match t_bad {
            Some(w) => report.fail(format!("l'_{r} vanishes with a t argument"), w),
            None => report.pass(format!("l'_{r} vanishes with a t argument")),
        }
    }
    report
}

/// Default complement of `ε(H⁰(L))` in `𝔤`: standard basis vectors.
pub fn default_complement(l: &DgLie, aug: &Augmentation) -> Subspace {
    let chk = check_augmentation(l, aug);
    let g = aug.target.dim();
    let vs = chk.image_h0.coordinate_complement();
    Sub::span(g, &vs).expect("complement vectors")
}
