//! Finite-dimensional graded spaces, DG Lie algebras given by structure
//! constants, augmentations, cohomology and contraction data.
//!
//! Everything uses one flat basis: a [`GradedSpace`] is a list of labelled
//! basis vectors, each with a degree (and optionally a weight). Elements are
//! dense coordinate vectors over that basis.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::Subspace as Sub;
use crate::report::CheckReport;
use crate::scalar::Q;
use crate::{Matrix, Subspace};

pub type Vector = Vec<Q>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub degree: i64,
    pub weight: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedSpace {
    basis: Vec<BasisElement>,
}

impl GradedSpace {
    pub fn new(basis: Vec<BasisElement>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for b in &basis {
            if !seen.insert(b.label.as_str()) {
                return Err(Error::Invalid(format!("duplicate basis label {}", b.label)));
            }
        }
        Ok(GradedSpace { basis })
    }

    /// Unweighted space from `(label, degree)` pairs.
    pub fn from_labels<S: Into<String>>(items: impl IntoIterator<Item = (S, i64)>) -> Result<Self> {
        Self::new(
            items
                .into_iter()
                .map(|(l, d)| BasisElement { label: l.into(), degree: d, weight: None })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn weight(&self, i: usize) -> Option<i64> {
        self.basis[i].weight
    }

    pub fn is_weighted(&self) -> bool {
        !self.basis.is_empty() && self.basis.iter().all(|b| b.weight.is_some())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    pub fn degrees(&self) -> Vec<i64> {
        let set: BTreeSet<i64> = self.basis.iter().map(|b| b.degree).collect();
        set.into_iter().collect()
    }

    pub fn indices_in_degree(&self, n: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == n).collect()
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for b in &self.basis {
            *out.entry(b.degree).or_insert(0) += 1;
        }
        out
    }

    pub fn zero_vector(&self) -> Vector {
        vec![Q::zero(); self.dim()]
    }

    pub fn unit(&self, i: usize) -> Vector {
        let mut v = self.zero_vector();
        v[i] = Q::one();
        v
    }

    /// Coordinate subspace spanned by the basis vectors of degree `n`.
    pub fn degree_subspace(&self, n: i64) -> Subspace {
        Sub::coordinate(self.dim(), self.indices_in_degree(n))
    }

    /// Degree of a nonzero homogeneous vector; `None` for zero or mixed vectors.
    pub fn degree_of(&self, v: &[Q]) -> Option<i64> {
        let mut deg = None;
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(self.degree(i)),
                Some(d) if d != self.degree(i) => return None,
                _ => {}
            }
        }
        deg
    }

    /// Weight of a nonzero weight-homogeneous vector.
    pub fn weight_of(&self, v: &[Q]) -> Option<i64> {
        let mut wt = None;
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = self.weight(i)?;
            match wt {
                None => wt = Some(w),
                Some(x) if x != w => return None,
                _ => {}
            }
        }
        wt
    }

    /// Human readable linear combination, e.g. `2*a - 1/2*b`.
    pub fn format_vector(&self, v: &[Q]) -> String {
        format_combination(v.iter().enumerate().map(|(i, c)| (c, self.label(i))))
    }
}

pub fn format_combination<'a>(terms: impl Iterator<Item = (&'a Q, &'a str)>) -> String {
    let mut out = String::new();
    for (c, label) in terms {
        if c.is_zero() {
            continue;
        }
        let negative = *c < Q::zero();
        let abs = if negative { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&format!("{abs}*"));
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn add_scaled(acc: &mut [Q], coef: &Q, v: &[Q]) {
    if coef.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = a.clone() + coef.clone() * x.clone();
        }
    }
}

pub fn is_zero_vector(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// A DG Lie algebra: differential as a matrix on the flat basis and
/// structure constants `[e_i, e_j]` stored per ordered pair.
#[derive(Clone, Debug, PartialEq)]
pub struct DgLie {
    space: GradedSpace,
    d: Matrix,
    bracket: BTreeMap<(usize, usize), Vector>,
}

impl DgLie {
    /// Checks shapes and degrees; antisymmetry and the identities are left
    /// to [`check_dgla_axioms`].
    pub fn new(space: GradedSpace, d: Matrix, bracket: BTreeMap<(usize, usize), Vector>) -> Result<Self> {
        let n = space.dim();
        if d.rows() != n || d.cols() != n {
            return Err(Error::Dimension(format!("differential must be {n}x{n}")));
        }
        for j in 0..n {
            for i in 0..n {
                if !d.get(i, j).is_zero() && space.degree(i) != space.degree(j) + 1 {
                    return Err(Error::Invalid(format!(
                        "d({}) has a component on {} of the wrong degree",
                        space.label(j),
                        space.label(i)
                    )));
                }
            }
        }
        let mut cleaned = BTreeMap::new();
        for ((i, j), v) in bracket {
            if i >= n || j >= n || v.len() != n {
                return Err(Error::Dimension("bracket entry out of range".into()));
            }
            let target = space.degree(i) + space.degree(j);
            if let Some(k) = (0..n).find(|&k| !v[k].is_zero() && space.degree(k) != target) {
                return Err(Error::Invalid(format!(
                    "[{}, {}] has a component on {} of the wrong degree",
                    space.label(i),
                    space.label(j),
                    space.label(k)
                )));
            }
            if !is_zero_vector(&v) {
                cleaned.insert((i, j), v);
            }
        }
        Ok(DgLie { space, d, bracket: cleaned })
    }

    /// Fills in `[e_j, e_i]` by antisymmetry wherever only `[e_i, e_j]` is given.
    pub fn with_antisymmetric_completion(
        space: GradedSpace,
        d: Matrix,
        mut bracket: BTreeMap<(usize, usize), Vector>,
    ) -> Result<Self> {
        let given: Vec<((usize, usize), Vector)> =
            bracket.iter().map(|(k, v)| (*k, v.clone())).collect();
        for ((i, j), v) in given {
            if i != j && !bracket.contains_key(&(j, i)) {
                let sign = koszul_swap(space.degree(i), space.degree(j));
                let w: Vector = v.iter().map(|x| -x.clone() * sign.clone()).collect();
                bracket.insert((j, i), w);
            }
        }
        Self::new(space, d, bracket)
    }

    pub fn abelian(space: GradedSpace) -> Self {
        let n = space.dim();
        DgLie { space, d: Matrix::zeros(n, n), bracket: BTreeMap::new() }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn differential(&self) -> &Matrix {
        &self.d
    }

    pub fn structure_constants(&self) -> &BTreeMap<(usize, usize), Vector> {
        &self.bracket
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Option<&Vector> {
        self.bracket.get(&(i, j))
    }

    pub fn d(&self, v: &[Q]) -> Vector {
        self.d.apply(v)
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vector {
        let mut out = self.space.zero_vector();
        for ((i, j), v) in &self.bracket {
            if x[*i].is_zero() || y[*j].is_zero() {
                continue;
            }
            add_scaled(&mut out, &(x[*i].clone() * y[*j].clone()), v);
        }
        out
    }

    pub fn has_zero_differential(&self) -> bool {
        self.d.is_zero()
    }
}

/// Rewrites `l` in the basis `f_a = Σ_b P_{ba} e_b`; `P` must be invertible and
/// preserve degrees. Labels are kept.
pub fn change_basis(l: &DgLie, p: &Matrix) -> Result<DgLie> {
    let s = l.space();
    let n = s.dim();
    if p.rows() != n || p.cols() != n {
        return Err(Error::Dimension(format!("basis change must be {n}x{n}")));
    }
    if (0..n).any(|r| (0..n).any(|c| !p.get(r, c).is_zero() && s.degree(r) != s.degree(c))) {
        return Err(Error::Invalid("basis change mixes degrees".into()));
    }
    let inv = p.inverse().ok_or_else(|| Error::Invalid("basis change is singular".into()))?;
    let d = inv.mul(&l.d)?.mul(p)?;
    let cols: Vec<Vector> = (0..n).map(|a| p.column(a)).collect();
    let mut bracket = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            let v = inv.apply(&l.bracket(&cols[a], &cols[b]));
            if !is_zero_vector(&v) {
                bracket.insert((a, b), v);
            }
        }
    }
    DgLie::new(s.clone(), d, bracket)
}

/// `(-1)^{ab}` as a rational.
pub fn koszul_swap(a: i64, b: i64) -> Q {
    if (a * b).rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

fn sign_pow(a: i64) -> Q {
    koszul_swap(a, 1)
}

/// Itemized check of d² = 0, graded antisymmetry, graded Jacobi and Leibniz
/// on basis elements.
pub fn check_dgla_axioms(l: &DgLie) -> CheckReport {
    let mut report = CheckReport::new();
    let s = l.space();
    let n = s.dim();
    let units: Vec<Vector> = (0..n).map(|i| s.unit(i)).collect();
    let deg = |i: usize| s.degree(i);

    let dd = l.d.mul(&l.d).expect("square");
    match (0..n).find(|&j| !is_zero_vector(&dd.column(j))) {
        Some(j) => report.fail("d^2 = 0", format!("d(d({})) != 0", s.label(j))),
        None => report.pass("d^2 = 0"),
    }

    let mut witness = None;
    'anti: for i in 0..n {
        for j in i..n {
            let xy = l.bracket(&units[i], &units[j]);
            let yx = l.bracket(&units[j], &units[i]);
            let sign = koszul_swap(deg(i), deg(j));
            let mut sum = xy.clone();
            add_scaled(&mut sum, &sign, &yx);
            if !is_zero_vector(&sum) {
                witness = Some(format!("({}, {})", s.label(i), s.label(j)));
                break 'anti;
            }
        }
    }
    match witness {
        Some(w) => report.fail("antisymmetry", w),
        None => report.pass("antisymmetry"),
    }

    // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
    let mut witness = None;
    'jacobi: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = l.bracket(&units[i], &l.bracket(&units[j], &units[k]));
                let mut rhs = l.bracket(&l.bracket(&units[i], &units[j]), &units[k]);
                let yxz = l.bracket(&units[j], &l.bracket(&units[i], &units[k]));
                add_scaled(&mut rhs, &koszul_swap(deg(i), deg(j)), &yxz);
                if lhs != rhs {
                    witness = Some(format!("({}, {}, {})", s.label(i), s.label(j), s.label(k)));
                    break 'jacobi;
                }
            }
        }
    }
    match witness {
        Some(w) => report.fail("Jacobi", w),
        None => report.pass("Jacobi"),
    }

    // d[x,y] = [dx,y] + (-1)^{|x|} [x,dy]
    let mut witness = None;
    'leibniz: for i in 0..n {
        for j in 0..n {
            let lhs = l.d(&l.bracket(&units[i], &units[j]));
            let mut rhs = l.bracket(&l.d(&units[i]), &units[j]);
            let x_dy = l.bracket(&units[i], &l.d(&units[j]));
            add_scaled(&mut rhs, &sign_pow(deg(i)), &x_dy);
            if lhs != rhs {
                witness = Some(format!("({}, {})", s.label(i), s.label(j)));
                break 'leibniz;
            }
        }
    }
    match witness {
        Some(w) => report.fail("Leibniz", w),
        None => report.pass("Leibniz"),
    }
    report
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cohomology {
    pub dims: BTreeMap<i64, usize>,
    pub cocycles: BTreeMap<i64, Subspace>,
    pub coboundaries: BTreeMap<i64, Subspace>,
}

impl Cohomology {
    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }
}

/// Cocycles, coboundaries and cohomology dimensions of the underlying complex.
/// Subspaces live in the flat coordinate space of `L`.
pub fn cohomology(l: &DgLie) -> Cohomology {
    complex_cohomology(l.space(), l.differential())
}

/// Cohomology of a complex given by a degree `+1` matrix on a graded space.
pub fn complex_cohomology(s: &GradedSpace, d: &Matrix) -> Cohomology {
    let mut out = Cohomology { dims: BTreeMap::new(), cocycles: BTreeMap::new(), coboundaries: BTreeMap::new() };
    for n in s.degrees() {
        let here = s.degree_subspace(n);
        let z = d.kernel().intersect(&here).expect("same ambient");
        let b = s.degree_subspace(n - 1).image_under(d).expect("square");
        out.dims.insert(n, z.dim() - b.dim());
        out.cocycles.insert(n, z);
        out.coboundaries.insert(n, b);
    }
    out
}

/// Contraction of `L` onto cohomology representatives `K`:
/// `L^n = A^n ⊕ K^n ⊕ B^n`, `B^n = d(A^{n-1})`, with `p i = id`,
/// `id - i p = d h + h d`, `h h = 0`, `h i = 0`, `p h = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Contraction {
    /// Graded space with basis the chosen representatives of cohomology.
    pub h_space: GradedSpace,
    /// `dim L x dim H`, columns are the representatives.
    pub i: Matrix,
    /// `dim H x dim L`.
    pub p: Matrix,
    /// `dim L x dim L`, degree `-1`.
    pub h: Matrix,
    pub a: BTreeMap<i64, Subspace>,
    pub k: BTreeMap<i64, Subspace>,
    pub b: BTreeMap<i64, Subspace>,
}

/// Preferred complements, as spanning vectors per degree.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ContractionChoices {
    pub a: BTreeMap<i64, Vec<Vector>>,
    pub k: BTreeMap<i64, Vec<Vector>>,
}

/// Echelon choice: `A^n` from standard basis vectors, `K^n` from the RREF
/// basis of the cocycles.
pub fn standard_contraction(l: &DgLie) -> Result<Contraction> {
    contraction_with_choices(l, &ContractionChoices::default())
}

pub fn contraction_with_choices(l: &DgLie, choices: &ContractionChoices) -> Result<Contraction> {
    complex_contraction(l.space(), l.differential(), choices)
}

/// Contraction of an arbitrary complex `(s, d)`.
/// Contraction whose `A` and `K` are spanned by weight-homogeneous vectors,
/// so that `i`, `p`, `h` preserve weights whenever `d` does.
pub fn weighted_contraction(s: &GradedSpace, d: &Matrix) -> Result<Contraction> {
    if !s.is_weighted() && s.dim() > 0 {
        return Err(Error::Invalid("every basis element needs a weight".into()));
    }
    let n = s.dim();
    let coh = complex_cohomology(s, d);
    let mut choices = ContractionChoices::default();
    for deg in s.degrees() {
        let here = s.indices_in_degree(deg);
        let mut weights: Vec<i64> = here.iter().filter_map(|&i| s.weight(i)).collect();
        weights.sort_unstable();
        weights.dedup();
        let (mut a, mut k) = (Vec::new(), Vec::new());
        for w in weights {
            let block = Sub::coordinate(n, here.iter().copied().filter(|&i| s.weight(i) == Some(w)));
            let z = coh.cocycles[&deg].intersect(&block)?;
            let b = coh.coboundaries[&deg].intersect(&block)?;
            a.extend(z.complement_in(&block)?);
            k.extend(b.complement_in(&z)?);
        }
        choices.a.insert(deg, a);
        choices.k.insert(deg, k);
    }
    complex_contraction(s, d, &choices)
}

pub fn complex_contraction(s: &GradedSpace, d: &Matrix, choices: &ContractionChoices) -> Result<Contraction> {
    let n = s.dim();
    let coh = complex_cohomology(s, d);
    let mut a_vecs: BTreeMap<i64, Vec<Vector>> = BTreeMap::new();
    let mut k_vecs: BTreeMap<i64, Vec<Vector>> = BTreeMap::new();
    for deg in s.degrees() {
        let z = &coh.cocycles[&deg];
        let here = s.degree_subspace(deg);
        let a = match choices.a.get(&deg) {
            Some(vs) => {
                let span = Sub::span(n, vs)?;
                if span.dim() != vs.len()
                    || !span.is_subspace_of(&here)
                    || !span.intersect(z)?.is_zero()
                    || span.dim() + z.dim() != here.dim()
                {
                    return Err(Error::Invalid(format!("chosen A^{deg} is not a complement of the cocycles")));
                }
                vs.clone()
            }
            None => z.complement_in(&here)?,
        };
        a_vecs.insert(deg, a);
        let bd = &coh.coboundaries[&deg];
        let k = match choices.k.get(&deg) {
            Some(vs) => {
                let span = Sub::span(n, vs)?;
                if span.dim() != vs.len() || !span.intersect(bd)?.is_zero() || span.sum(bd)? != *z {
                    return Err(Error::Invalid(format!("chosen K^{deg} is not a complement of the coboundaries")));
                }
                vs.clone()
            }
            None => bd.complement_in(z)?,
        };
        k_vecs.insert(deg, k);
    }

    // Adapted basis: A, K, and B = d(A of the previous degree), per degree.
    let mut columns: Vec<Vector> = Vec::with_capacity(n);
    let mut roles: Vec<Role> = Vec::with_capacity(n);
    let mut k_order: Vec<(i64, Vector)> = Vec::new();
    for deg in s.degrees() {
        for v in &a_vecs[&deg] {
            columns.push(v.clone());
            roles.push(Role::A);
        }
        for v in &k_vecs[&deg] {
            columns.push(v.clone());
            roles.push(Role::K(k_order.len()));
            k_order.push((deg, v.clone()));
        }
        if let Some(prev) = a_vecs.get(&(deg - 1)) {
            for v in prev {
                columns.push(d.apply(v));
                roles.push(Role::B(v.clone()));
            }
        }
    }
    let basis = Matrix::from_columns(&columns, n)?;
    let inv = basis
        .inverse()
        .ok_or_else(|| Error::Internal("contraction basis is not a basis".into()))?;

    let kdim = k_order.len();
    let mut i_mat = Matrix::zeros(n, kdim);
    let mut p_mat = Matrix::zeros(kdim, n);
    let mut h_mat = Matrix::zeros(n, n);
    for (c, role) in roles.iter().enumerate() {
        match role {
            Role::A => {}
            Role::K(t) => {
                for r in 0..n {
                    i_mat.set(r, *t, columns[c][r].clone());
                    p_mat.set(*t, r, inv.get(c, r).clone());
                }
            }
            Role::B(pre) => {
                // h(v) += (coefficient of d(pre) in v) * pre
                for r in 0..n {
                    for col in 0..n {
                        let coef = inv.get(c, col);
                        if coef.is_zero() || pre[r].is_zero() {
                            continue;
                        }
                        let v = h_mat.get(r, col).clone() + coef.clone() * pre[r].clone();
                        h_mat.set(r, col, v);
                    }
                }
            }
        }
    }

    let h_space = representative_space(s, &k_order)?;
    let span_map = |m: &BTreeMap<i64, Vec<Vector>>| -> Result<BTreeMap<i64, Subspace>> {
        m.iter().map(|(d, vs)| Ok((*d, Sub::span(n, vs)?))).collect()
    };
    let contraction = Contraction {
        h_space,
        i: i_mat,
        p: p_mat,
        h: h_mat,
        a: span_map(&a_vecs)?,
        k: span_map(&k_vecs)?,
        b: coh.coboundaries.clone(),
    };
    let report = contraction.verify_complex(s, d);
    if let Some(bad) = report.first_failure() {
        return Err(Error::Internal(format!("contraction failed {}", bad.name)));
    }
    Ok(contraction)
}

enum Role {
    A,
    K(usize),
    B(Vector),
}

fn representative_space(s: &GradedSpace, reps: &[(i64, Vector)]) -> Result<GradedSpace> {
    let mut used = BTreeSet::new();
    let mut basis = Vec::new();
    for (deg, v) in reps {
        let lead = v.iter().position(|c| !c.is_zero()).expect("nonzero representative");
        let mut label = format!("[{}]", s.label(lead));
        while !used.insert(label.clone()) {
            label.push('\'');
        }
        basis.push(BasisElement { label, degree: *deg, weight: s.weight_of(v) });
    }
    GradedSpace::new(basis)
}

impl Contraction {
    pub fn dim(&self) -> usize {
        self.h_space.dim()
    }

    /// Re-verifies the contraction identities as matrix equations.
    pub fn verify(&self, l: &DgLie) -> CheckReport {
        self.verify_complex(l.space(), l.differential())
    }

    pub fn verify_complex(&self, s: &GradedSpace, d: &Matrix) -> CheckReport {
        let mut r = CheckReport::new();
        let n = s.dim();
        let k = self.dim();
        let check = |r: &mut CheckReport, name: &str, ok: bool| {
            if ok {
                r.pass(name);
            } else {
                r.fail(name, "matrix identity does not hold");
            }
        };
        let pi = self.p.mul(&self.i).expect("shapes");
        check(&mut r, "p i = id", pi == Matrix::identity(k));
        let ip = self.i.mul(&self.p).expect("shapes");
        let lhs = Matrix::identity(n).sub(&ip).expect("shapes");
        let rhs = d.mul(&self.h).and_then(|dh| dh.add(&self.h.mul(d)?)).expect("shapes");
        check(&mut r, "id - i p = d h + h d", lhs == rhs);
        check(&mut r, "h h = 0", self.h.mul(&self.h).expect("shapes").is_zero());
        check(&mut r, "h i = 0", self.h.mul(&self.i).expect("shapes").is_zero());
        check(&mut r, "p h = 0", self.p.mul(&self.h).expect("shapes").is_zero());
        let h_deg = (0..n).all(|c| (0..n).all(|row| self.h.get(row, c).is_zero() || s.degree(row) + 1 == s.degree(c)));
        check(&mut r, "h has degree -1", h_deg);
        let i_deg = (0..k).all(|c| (0..n).all(|row| self.i.get(row, c).is_zero() || s.degree(row) == self.h_space.degree(c)));
        check(&mut r, "i has degree 0", i_deg);
        r
    }

    pub fn include(&self, v: &[Q]) -> Vector {
        self.i.apply(v)
    }

    pub fn project(&self, v: &[Q]) -> Vector {
        self.p.apply(v)
    }

    pub fn homotopy(&self, v: &[Q]) -> Vector {
        self.h.apply(v)
    }
}

/// An augmentation `ε: L⁰ -> 𝔤` into a Lie algebra concentrated in degree 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Augmentation {
    pub target: DgLie,
    /// `dim 𝔤 x dim L`; only columns of degree-0 basis vectors may be nonzero.
    pub eps: Matrix,
}

impl Augmentation {
    pub fn new(l: &DgLie, target: DgLie, eps: Matrix) -> Result<Self> {
        if target.space().degrees().iter().any(|&d| d != 0) || !target.has_zero_differential() {
            return Err(Error::Invalid("augmentation target must be a Lie algebra in degree 0".into()));
        }
        if eps.rows() != target.dim() || eps.cols() != l.dim() {
            return Err(Error::Dimension(format!(
                "augmentation must be {}x{}",
                target.dim(),
                l.dim()
            )));
        }
        for c in 0..l.dim() {
            if l.space().degree(c) != 0 && !is_zero_vector(&eps.column(c)) {
                return Err(Error::Invalid(format!(
                    "augmentation is nonzero on {} outside degree 0",
                    l.space().label(c)
                )));
            }
        }
        Ok(Augmentation { target, eps })
    }

    pub fn zero(l: &DgLie) -> Self {
        let target = DgLie::abelian(GradedSpace::default());
        Augmentation { target, eps: Matrix::zeros(0, l.dim()) }
    }

    pub fn apply(&self, v: &[Q]) -> Vector {
        self.eps.apply(v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AugmentationCheck {
    pub report: CheckReport,
    /// `ε(H⁰(L)) ⊆ 𝔤`.
    pub image_h0: Subspace,
    /// `dim 𝔤 - dim ε(H⁰(L))`.
    pub complement_dim: usize,
}

pub fn check_augmentation(l: &DgLie, aug: &Augmentation) -> AugmentationCheck {
    let mut report = CheckReport::new();
    let s = l.space();
    let g = aug.target.dim();
    let l0 = s.indices_in_degree(0);
    let image = s.degree_subspace(0).image_under(&aug.eps).expect("shapes");
    if image.dim() == g {
        report.pass("surjective on L^0");
    } else {
        report.fail("surjective on L^0", format!("image has dimension {} < {g}", image.dim()));
    }
    let lie_bad = l0.iter().flat_map(|&i| l0.iter().map(move |&j| (i, j))).find(|&(i, j)| {
        let lhs = aug.apply(&l.bracket(&s.unit(i), &s.unit(j)));
        let rhs = aug.target.bracket(&aug.apply(&s.unit(i)), &aug.apply(&s.unit(j)));
        lhs != rhs
    });
    match lie_bad {
        Some((i, j)) => report.fail("Lie map", format!("({}, {})", s.label(i), s.label(j))),
        None => report.pass("Lie map"),
    }
    let chain_bad = s
        .indices_in_degree(-1)
        .into_iter()
        .find(|&i| !is_zero_vector(&aug.apply(&l.d(&s.unit(i)))));
    match chain_bad {
        Some(i) => report.fail("chain map", format!("eps(d {}) != 0", s.label(i))),
        None => report.pass("chain map"),
    }
    let coh = cohomology(l);
    let z0 = coh.cocycles.get(&0).cloned().unwrap_or_else(|| Sub::zero(l.dim()));
    let b0 = coh.coboundaries.get(&0).cloned().unwrap_or_else(|| Sub::zero(l.dim()));
    let killed = aug.eps.kernel().intersect(&z0).expect("same ambient");
    if killed.is_subspace_of(&b0) {
        report.pass("injective on H^0");
    } else {
        report.fail("injective on H^0", "a nonzero class maps to 0");
    }
    let image_h0 = z0.image_under(&aug.eps).expect("shapes");
    let complement_dim = g - image_h0.dim();
    AugmentationCheck { report, image_h0, complement_dim }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn sl2() -> DgLie {
        // [h,e] = 2e, [h,f] = -2f, [e,f] = h
        let space = GradedSpace::from_labels([("h", 0), ("e", 0), ("f", 0)]).unwrap();
        let mut br = BTreeMap::new();
        br.insert((0, 1), vec![q(0), q(2), q(0)]);
        br.insert((0, 2), vec![q(0), q(0), q(-2)]);
        br.insert((1, 2), vec![q(1), q(0), q(0)]);
        DgLie::with_antisymmetric_completion(space, Matrix::zeros(3, 3), br).unwrap()
    }

    #[test]
    fn abelian_and_sl2_pass() {
        let ab = DgLie::abelian(GradedSpace::from_labels([("x", 1), ("y", 2)]).unwrap());
        assert!(check_dgla_axioms(&ab).passed());
        assert!(check_dgla_axioms(&sl2()).passed());
    }

    #[test]
    fn corrupted_constants_break_jacobi() {
        let l = sl2();
        let mut br = l.structure_constants().clone();
        br.insert((0, 1), vec![q(0), q(3), q(0)]);
        br.insert((1, 0), vec![q(0), q(-3), q(0)]);
        let bad = DgLie::new(l.space().clone(), Matrix::zeros(3, 3), br).unwrap();
        let report = check_dgla_axioms(&bad);
        let jacobi = report.items.iter().find(|i| i.name == "Jacobi").unwrap();
        assert!(!jacobi.passed);
        assert!(jacobi.witness.is_some());
        assert!(report.items.iter().find(|i| i.name == "antisymmetry").unwrap().passed);
    }

    #[test]
    fn wrong_degrees_are_rejected() {
        let space = GradedSpace::from_labels([("x", 1), ("y", 1)]).unwrap();
        let mut d = Matrix::zeros(2, 2);
        d.set(1, 0, q(1));
        assert!(DgLie::new(space, d, BTreeMap::new()).is_err());
    }

    #[test]
    fn cohomology_examples() {
        let ab = DgLie::abelian(GradedSpace::from_labels([("x", 0), ("y", 1), ("z", 1)]).unwrap());
        let h = cohomology(&ab);
        assert_eq!(h.dim(0), 1);
        assert_eq!(h.dim(1), 2);

        let space = GradedSpace::from_labels([("x", 0), ("y", 1)]).unwrap();
        let mut d = Matrix::zeros(2, 2);
        d.set(1, 0, q(1));
        let acyclic = DgLie::new(space, d, BTreeMap::new()).unwrap();
        let h = cohomology(&acyclic);
        assert_eq!(h.dim(0) + h.dim(1), 0);
        let c = standard_contraction(&acyclic).unwrap();
        assert_eq!(c.dim(), 0);
        assert_eq!(c.homotopy(&[q(0), q(1)]), vec![q(1), q(0)]);
    }

    #[test]
    fn zero_differential_contraction_is_trivial() {
        let l = sl2();
        let c = standard_contraction(&l).unwrap();
        assert_eq!(c.i, Matrix::identity(3));
        assert!(c.h.is_zero());
        assert_eq!(c.h_space.label(0), "[h]");
    }

    #[test]
    fn augmentation_examples() {
        let l = sl2();
        let zero = Augmentation::zero(&l);
        let chk = check_augmentation(&l, &zero);
        assert!(chk.report.items.iter().find(|i| i.name == "surjective on L^0").unwrap().passed);

        let aug = Augmentation::new(&l, sl2(), Matrix::identity(3)).unwrap();
        let chk = check_augmentation(&l, &aug);
        assert!(chk.report.passed());
        assert_eq!(chk.complement_dim, 0);
    }

    #[test]
    fn formats_combinations() {
        let s = GradedSpace::from_labels([("a", 1), ("b", 1)]).unwrap();
        assert_eq!(s.format_vector(&[q(2), crate::scalar::q_frac(-1, 2)]), "2*a - 1/2*b");
        assert_eq!(s.format_vector(&[q(0), q(0)]), "0");
        assert_eq!(s.format_vector(&[q(-1), q(1)]), "-a + b");
    }
}
