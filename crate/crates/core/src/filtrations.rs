//! Increasing filtrations on `F^n`, nilpotent endomorphisms, monodromy and
//! relative monodromy filtrations, the Z-filtration, and tensor products.
//!
//! A [`Filtration`] is stored by its jumps: `(k, W_k)` for every `k` with
//! `W_{k-1} != W_k`. Below the first jump the filtration is zero, at and above
//! the last jump it is the whole space. Decreasing filtrations `F^p` are stored
//! as `W_{-p} = F^p` (see [`Filtration::from_decreasing`]).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact_linalg::{quotient_data, tensor_subspace, Matrix, QuotientData, Subspace};
use crate::report::CheckReport;
use crate::scalar::Field;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Filtration<F> {
    ambient: usize,
    jumps: Vec<(i64, Subspace<F>)>,
}

impl<F: Field> Filtration<F> {
    /// Builds a filtration from listed steps. Indices must increase, subspaces
    /// must be nested and the last one must be the whole space. Repeated
    /// subspaces are collapsed.
    pub fn new(ambient: usize, steps: Vec<(i64, Subspace<F>)>) -> Result<Self> {
        let mut jumps: Vec<(i64, Subspace<F>)> = Vec::new();
        let mut prev_index: Option<i64> = None;
        let mut prev = Subspace::zero(ambient);
        for (k, s) in steps {
            if s.ambient_dim() != ambient {
                return Err(Error::Dimension(format!(
                    "step {k} lives in F^{} but the filtration is on F^{ambient}",
                    s.ambient_dim()
                )));
            }
            if prev_index.is_some_and(|p| p >= k) {
                return Err(Error::Invalid(format!("step indices must increase (at {k})")));
            }
            if !prev.is_subspace_of(&s) {
                return Err(Error::Invalid(format!("step {k} does not contain the previous step")));
            }
            if s != prev {
                jumps.push((k, s.clone()));
            }
            prev_index = Some(k);
            prev = s;
        }
        if !prev.is_full() {
            return Err(Error::Invalid("the last step must be the whole space".into()));
        }
        Ok(Filtration { ambient, jumps })
    }

    /// `W_{k-1} = 0`, `W_k = F^n`.
    pub fn trivial(ambient: usize, k: i64) -> Self {
        Self::new(ambient, vec![(k, Subspace::full(ambient))]).expect("single full step")
    }

    /// Decreasing filtration `F^p`, stored as `W_{-p} = F^p`. Steps are listed
    /// with increasing `p` and shrinking subspaces.
    pub fn from_decreasing(ambient: usize, steps: Vec<(i64, Subspace<F>)>) -> Result<Self> {
        let mut flipped: Vec<(i64, Subspace<F>)> = steps.into_iter().map(|(p, s)| (-p, s)).collect();
        flipped.reverse();
        Self::new(ambient, flipped)
    }

    /// Filtration with `W_k` spanned by the vectors of weight `<= k`.
    pub fn from_weighted_basis(ambient: usize, vectors: &[(i64, Vec<F>)]) -> Result<Self> {
        let mut weights: Vec<i64> = vectors.iter().map(|(w, _)| *w).collect();
        weights.sort_unstable();
        weights.dedup();
        let mut steps = Vec::new();
        for &k in &weights {
            let span: Vec<Vec<F>> =
                vectors.iter().filter(|(w, _)| *w <= k).map(|(_, v)| v.clone()).collect();
            steps.push((k, Subspace::span(ambient, &span)?));
        }
        if weights.is_empty() && ambient > 0 {
            return Err(Error::Invalid("no vectors given".into()));
        }
        Self::new(ambient, steps)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn jumps(&self) -> &[(i64, Subspace<F>)] {
        &self.jumps
    }

    /// Smallest index with `W_k != 0`, if any.
    pub fn lowest(&self) -> Option<i64> {
        self.jumps.first().map(|(k, _)| *k)
    }

    /// Smallest index with `W_k` the whole space, if the space is nonzero.
    pub fn highest(&self) -> Option<i64> {
        self.jumps.last().map(|(k, _)| *k)
    }

    pub fn get(&self, k: i64) -> Subspace<F> {
        match self.jumps.iter().rev().find(|(j, _)| *j <= k) {
            Some((_, s)) => s.clone(),
            None => Subspace::zero(self.ambient),
        }
    }

    /// Nonzero graded dimensions `dim Gr_k`.
    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        let mut prev = 0;
        for (k, s) in &self.jumps {
            out.insert(*k, s.dim() - prev);
            prev = s.dim();
        }
        out
    }

    pub fn graded_piece(&self, k: i64) -> GradedPiece<F> {
        let quotient = quotient_data(&self.get(k), &self.get(k - 1))
            .expect("filtration steps are nested");
        GradedPiece { index: k, dim: quotient.dim(), quotient }
    }

    /// Index range `[lo, hi]` that contains every jump, or `None` on the zero space.
    pub fn range(&self) -> Option<(i64, i64)> {
        Some((self.lowest()?, self.highest()?))
    }

    pub fn shift(&self, by: i64) -> Self {
        Filtration {
            ambient: self.ambient,
            jumps: self.jumps.iter().map(|(k, s)| (k + by, s.clone())).collect(),
        }
    }

    /// Induced filtration on the subquotient `total / sub`, in the quotient's coordinates.
    pub fn induced_on_quotient(&self, qd: &QuotientData<F>, total: &Subspace<F>) -> Result<Self> {
        let mut steps = Vec::new();
        for (k, s) in &self.jumps {
            let inside = s.intersect(total)?;
            let projected: Vec<Vec<F>> =
                inside.basis_vectors().iter().map(|v| qd.project(v)).collect();
            steps.push((*k, Subspace::span(qd.dim(), &projected)?));
        }
        Self::new(qd.dim(), steps)
    }

    /// Generating polynomial of the graded dimensions, as `index -> dim`.
    pub fn poincare(&self) -> BTreeMap<i64, usize> {
        self.graded_dims()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedPiece<F> {
    pub index: i64,
    pub dim: usize,
    pub quotient: QuotientData<F>,
}

pub fn graded_piece<F: Field>(w: &Filtration<F>, k: i64) -> GradedPiece<F> {
    w.graded_piece(k)
}

/// A nilpotent square matrix with its nilpotency index `q`
/// (`N^{q+1} = 0`, `N^q != 0`; `q = 0` for the zero map).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NilpotentEndo<F> {
    matrix: Matrix<F>,
    index: u32,
}

impl<F: Field> NilpotentEndo<F> {
    pub fn new(matrix: Matrix<F>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension("nilpotent endomorphism must be square".into()));
        }
        let n = matrix.rows();
        let mut power = matrix.clone();
        for q in 0..=n as u32 {
            if power.is_zero() {
                return Ok(NilpotentEndo { matrix, index: q });
            }
            power = power.mul(&matrix)?;
        }
        Err(Error::Invalid("matrix is not nilpotent".into()))
    }

    pub fn zero(n: usize) -> Self {
        NilpotentEndo { matrix: Matrix::zeros(n, n), index: 0 }
    }

    /// Jordan blocks with the given sizes; in each block `N e_{j+1} = e_j`.
    pub fn jordan(sizes: &[usize]) -> Self {
        let n: usize = sizes.iter().sum();
        let mut m = Matrix::zeros(n, n);
        let mut offset = 0;
        for &s in sizes {
            for j in 1..s {
                m.set(offset + j - 1, offset + j, F::one());
            }
            offset += s;
        }
        Self::new(m).expect("jordan matrices are nilpotent")
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn nilpotency_index(&self) -> u32 {
        self.index
    }

    pub fn pow(&self, k: u32) -> Matrix<F> {
        self.matrix.pow(k).expect("square")
    }

    pub fn respects(&self, w: &Filtration<F>) -> bool {
        w.jumps().iter().all(|(_, s)| {
            s.image_under(&self.matrix).is_ok_and(|img| img.is_subspace_of(s))
        })
    }

    /// Matrix of the induced map on `total / sub` (both assumed invariant).
    pub fn induced(&self, qd: &QuotientData<F>) -> Self {
        let q = qd.dim();
        let columns: Vec<Vec<F>> = qd
            .lift_basis
            .row_vecs()
            .iter()
            .map(|l| qd.project(&self.matrix.apply(l)))
            .collect();
        let m = Matrix::from_columns(&columns, q).expect("projected columns");
        Self::new(m).expect("induced map of a nilpotent map is nilpotent")
    }

    /// Restriction to an invariant subspace, in the coordinates of its RREF basis.
    pub fn restrict(&self, s: &Subspace<F>) -> Result<Self> {
        let qd = quotient_data(s, &Subspace::zero(s.ambient_dim()))?;
        Ok(self.induced(&qd))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredNilpotentSpace<F> {
    pub w: Filtration<F>,
    pub n: NilpotentEndo<F>,
}

impl<F: Field> FilteredNilpotentSpace<F> {
    pub fn new(w: Filtration<F>, n: NilpotentEndo<F>) -> Result<Self> {
        if w.ambient_dim() != n.dim() {
            return Err(Error::Dimension(format!(
                "filtration on F^{} but endomorphism on F^{}",
                w.ambient_dim(),
                n.dim()
            )));
        }
        if !n.respects(&w) {
            return Err(Error::Precondition("N does not preserve W".into()));
        }
        Ok(FilteredNilpotentSpace { w, n })
    }

    pub fn dim(&self) -> usize {
        self.n.dim()
    }
}

/// Monodromy filtration of `n` centered at `center`.
pub fn monodromy_filtration<F: Field>(n: &NilpotentEndo<F>, center: i64) -> Result<Filtration<F>> {
    let steps = monodromy_steps(n, center)?;
    let m = Filtration::new(n.dim(), steps)?;
    let report = verify_monodromy(&m, n, center);
    if let Some(bad) = report.first_failure() {
        return Err(Error::Internal(format!(
            "monodromy filtration failed {}: {}",
            bad.name,
            bad.witness.clone().unwrap_or_default()
        )));
    }
    Ok(m)
}

fn monodromy_steps<F: Field>(n: &NilpotentEndo<F>, w: i64) -> Result<Vec<(i64, Subspace<F>)>> {
    let dim = n.dim();
    let q = n.nilpotency_index();
    if dim == 0 {
        return Ok(Vec::new());
    }
    if q == 0 {
        return Ok(vec![(w, Subspace::full(dim))]);
    }
    let nq = n.pow(q);
    let kernel = nq.kernel();
    let image = nq.image();
    let qd = quotient_data(&kernel, &image)?;
    let inner = monodromy_steps(&n.induced(&qd), w)?;
    let inner = Filtration::new(qd.dim(), inner)?;
    let qi = q as i64;
    let mut steps = vec![(w - qi - 1, Subspace::zero(dim))];
    for k in (w - qi)..=(w + qi - 1) {
        let lifted: Vec<Vec<F>> =
            inner.get(k).basis_vectors().iter().map(|c| qd.lift(c)).collect();
        let s = image.sum(&Subspace::span(dim, &lifted)?)?;
        steps.push((k, s));
    }
    steps.push((w + qi, Subspace::full(dim)));
    Ok(steps)
}

/// Checks `N(M_i) ⊆ M_{i-2}` and that `N^i : Gr_{w+i} -> Gr_{w-i}` is an isomorphism.
pub fn verify_monodromy<F: Field>(m: &Filtration<F>, n: &NilpotentEndo<F>, w: i64) -> CheckReport {
    let mut report = CheckReport::new();
    let Some((lo, hi)) = m.range() else {
        report.pass("empty space");
        return report;
    };
    let mut shift_ok = true;
    for i in lo..=hi + 2 {
        let img = m.get(i).image_under(n.matrix()).expect("square");
        if !img.is_subspace_of(&m.get(i - 2)) {
            report.fail("N(M_i) in M_{i-2}", format!("fails at i = {i}"));
            shift_ok = false;
            break;
        }
    }
    if shift_ok {
        report.pass("N(M_i) in M_{i-2}");
    }
    let reach = (hi - w).max(w - lo).max(0) + 1;
    let mut iso_ok = true;
    for i in 0..=reach {
        let up = m.graded_piece(w + i).dim;
        let down = m.graded_piece(w - i).dim;
        if up != down {
            report.fail("Gr isomorphism", format!("dim Gr_{} = {up} but dim Gr_{} = {down}", w + i, w - i));
            iso_ok = false;
            break;
        }
        // Injectivity: {v in M_{w+i} : N^i v in M_{w-i-1}} = M_{w+i-1}.
        let ni = n.pow(i as u32);
        let kernel_part = m
            .get(w - i - 1)
            .preimage_under(&ni)
            .and_then(|pre| pre.intersect(&m.get(w + i)))
            .expect("square");
        if kernel_part != m.get(w + i - 1) {
            report.fail("Gr isomorphism", format!("N^{i} is not injective on Gr_{}", w + i));
            iso_ok = false;
            break;
        }
    }
    if iso_ok {
        report.pass("Gr isomorphism");
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelativeMonodromy<F> {
    Exists(Filtration<F>),
    NotExists,
}

impl<F> RelativeMonodromy<F> {
    pub fn exists(&self) -> Option<&Filtration<F>> {
        match self {
            RelativeMonodromy::Exists(m) => Some(m),
            RelativeMonodromy::NotExists => None,
        }
    }
}

/// Relative monodromy filtration of `N` with respect to `W`, or `NotExists`.
pub fn relative_monodromy_filtration<F: Field>(
    fs: &FilteredNilpotentSpace<F>,
) -> Result<RelativeMonodromy<F>> {
    let dim = fs.dim();
    let jumps = fs.w.jumps();
    if jumps.len() <= 1 {
        let center = fs.w.lowest().unwrap_or(0);
        return Ok(RelativeMonodromy::Exists(monodromy_filtration(&fs.n, center)?));
    }
    let nm = fs.n.matrix();
    // Weighted basis of the candidate M, built one W-step at a time.
    let mut weighted: Vec<(i64, Vec<F>)> = Vec::new();
    let mut lower = Subspace::zero(dim);
    for (k, total) in jumps {
        let qd = quotient_data(total, &lower)?;
        let graded = fs.n.induced(&qd);
        let lower_basis = lower.basis_vectors();
        for (i, prims) in primitive_bases(&graded)? {
            let target_index = k - i as i64 - 2;
            let target: Vec<Vec<F>> = weighted
                .iter()
                .filter(|(wt, _)| *wt <= target_index)
                .map(|(_, v)| v.clone())
                .collect();
            let target = Subspace::span(dim, &target)?;
            let constraints = target.constraints();
            let npow = nm.pow(i + 1)?;
            for p in prims {
                let p0 = qd.lift(&p);
                let mut chain_start = p0.clone();
                if constraints.rows() > 0 && !lower_basis.is_empty() {
                    let cn = constraints.mul(&npow)?;
                    let lhs = Matrix::from_columns(
                        &lower_basis.iter().map(|u| cn.apply(u)).collect::<Vec<_>>(),
                        constraints.rows(),
                    )?;
                    let rhs: Vec<F> = cn.apply(&p0).into_iter().map(|x| -x).collect();
                    let Some(y) = lhs.solve(&rhs) else {
                        return Ok(RelativeMonodromy::NotExists);
                    };
                    for (coef, u) in y.iter().zip(&lower_basis) {
                        for (c, x) in chain_start.iter_mut().zip(u) {
                            *c = c.clone() + coef.clone() * x.clone();
                        }
                    }
                }
                let mut v = chain_start;
                for j in 0..=i {
                    weighted.push((k + i as i64 - 2 * j as i64, v.clone()));
                    v = nm.apply(&v);
                }
            }
        }
        lower = total.clone();
    }
    let candidate = match Filtration::from_weighted_basis(dim, &weighted) {
        Ok(m) => m,
        Err(_) => return Ok(RelativeMonodromy::NotExists),
    };
    if verify_relative_monodromy(&candidate, fs).passed() {
        Ok(RelativeMonodromy::Exists(candidate))
    } else {
        Ok(RelativeMonodromy::NotExists)
    }
}

/// For each chain length `i + 1`, a basis of a complement of
/// `ker N^i + N(ker N^{i+2})` inside `ker N^{i+1}`.
fn primitive_bases<F: Field>(n: &NilpotentEndo<F>) -> Result<Vec<(u32, Vec<Vec<F>>)>> {
    let mut out = Vec::new();
    for i in 0..=n.nilpotency_index() {
        let k_i = n.pow(i).kernel();
        let k_i1 = n.pow(i + 1).kernel();
        let k_i2 = n.pow(i + 2).kernel();
        let shadow = k_i.sum(&k_i2.image_under(n.matrix())?)?;
        let prims = shadow.complement_in(&k_i1)?;
        if !prims.is_empty() {
            out.push((i, prims));
        }
    }
    Ok(out)
}

/// Checks `N(M_i) ⊆ M_{i-2}` and that `M` induces on every `Gr^W_k` the
/// monodromy filtration of the induced map centered at `k`.
pub fn verify_relative_monodromy<F: Field>(
    m: &Filtration<F>,
    fs: &FilteredNilpotentSpace<F>,
) -> CheckReport {
    let mut report = CheckReport::new();
    if let Some((lo, hi)) = m.range() {
        let bad = (lo..=hi + 2).find(|&i| {
            let img = m.get(i).image_under(fs.n.matrix()).expect("square");
            !img.is_subspace_of(&m.get(i - 2))
        });
        match bad {
            Some(i) => report.fail("N(M_i) in M_{i-2}", format!("fails at i = {i}")),
            None => report.pass("N(M_i) in M_{i-2}"),
        }
    }
    let mut lower = Subspace::zero(fs.dim());
    for (k, total) in fs.w.jumps() {
        let qd = quotient_data(total, &lower).expect("nested");
        let induced = m.induced_on_quotient(&qd, total).expect("nested");
        let expected = monodromy_filtration(&fs.n.induced(&qd), *k).expect("monodromy exists");
        if induced == expected {
            report.pass(format!("Gr^W_{k} monodromy"));
        } else {
            report.fail(format!("Gr^W_{k} monodromy"), "induced filtration differs");
        }
        lower = total.clone();
    }
    report
}

/// `Z_k = N(W_k) + (M_{k-1} ∩ W_{k-1})`.
pub fn z_filtration<F: Field>(
    w: &Filtration<F>,
    m: &Filtration<F>,
    n: &NilpotentEndo<F>,
) -> Result<Filtration<F>> {
    let dim = n.dim();
    if w.ambient_dim() != dim || m.ambient_dim() != dim {
        return Err(Error::Dimension("filtrations and endomorphism disagree on dimension".into()));
    }
    let (lo, hi) = joint_range(&[w, m]);
    let mut steps = Vec::new();
    for k in lo..=hi + 1 {
        let z = w.get(k).image_under(n.matrix())?.sum(&m.get(k - 1).intersect(&w.get(k - 1))?)?;
        steps.push((k, z));
    }
    Filtration::new(dim, steps)
}

/// Intersection form `Z_l = N(W_l) + ⋂_{j>=0} (N^j)^{-1}(W_{l-1-j})`,
/// which needs no monodromy filtration.
pub fn z_filtration_kashiwara<F: Field>(w: &Filtration<F>, n: &NilpotentEndo<F>) -> Result<Filtration<F>> {
    let dim = n.dim();
    if w.ambient_dim() != dim {
        return Err(Error::Dimension("filtration and endomorphism disagree on dimension".into()));
    }
    let (lo, hi) = joint_range(&[w]);
    let q = n.nilpotency_index();
    let powers: Vec<Matrix<F>> = (0..=q).map(|j| n.pow(j)).collect();
    let mut steps = Vec::new();
    // Every term is full once l - 1 - q >= hi.
    for l in lo..=hi + q as i64 + 1 {
        let mut meet = Subspace::full(dim);
        for (j, pj) in powers.iter().enumerate() {
            meet = meet.intersect(&w.get(l - 1 - j as i64).preimage_under(pj)?)?;
        }
        steps.push((l, w.get(l).image_under(n.matrix())?.sum(&meet)?));
    }
    Filtration::new(dim, steps)
}

fn joint_range<F: Field>(fs: &[&Filtration<F>]) -> (i64, i64) {
    let lo = fs.iter().filter_map(|f| f.lowest()).min().unwrap_or(0);
    let hi = fs.iter().filter_map(|f| f.highest()).max().unwrap_or(0);
    (lo, hi)
}

/// `(W1 ⊗ W2)_k = Σ_{i+j=k} W1_i ⊗ W2_j`, left factor major.
pub fn tensor_filtration<F: Field>(w1: &Filtration<F>, w2: &Filtration<F>) -> Filtration<F> {
    let dim = w1.ambient_dim() * w2.ambient_dim();
    let (Some((lo1, hi1)), Some((lo2, hi2))) = (w1.range(), w2.range()) else {
        return Filtration::new(dim, Vec::new()).expect("zero space");
    };
    let mut steps = Vec::new();
    for k in (lo1 + lo2)..=(hi1 + hi2) {
        let mut acc = Subspace::zero(dim);
        for (i, s1) in w1.jumps() {
            let piece = tensor_subspace(s1, &w2.get(k - i));
            acc = acc.sum(&piece).expect("same ambient");
        }
        steps.push((k, acc));
    }
    Filtration::new(dim, steps).expect("tensor steps are nested and exhaustive")
}

/// `N1 ⊗ id + id ⊗ N2`.
pub fn tensor_nilpotent<F: Field>(n1: &NilpotentEndo<F>, n2: &NilpotentEndo<F>) -> NilpotentEndo<F> {
    let a = n1.matrix().kron(&Matrix::identity(n2.dim()));
    let b = Matrix::identity(n1.dim()).kron(n2.matrix());
    NilpotentEndo::new(a.add(&b).expect("same shape")).expect("sum of commuting nilpotents")
}

/// Whether the monodromy filtration of `N1 ⊗ id + id ⊗ N2` centered at
/// `w1 + w2` equals `M(N1, w1) ⊗ M(N2, w2)`.
pub fn check_tensor_monodromy<F: Field>(
    v1: (&NilpotentEndo<F>, i64),
    v2: (&NilpotentEndo<F>, i64),
) -> Result<bool> {
    let m1 = monodromy_filtration(v1.0, v1.1)?;
    let m2 = monodromy_filtration(v2.0, v2.1)?;
    let total = monodromy_filtration(&tensor_nilpotent(v1.0, v2.0), v1.1 + v2.1)?;
    Ok(total == tensor_filtration(&m1, &m2))
}

/// Filtrations attached to the tensor product of two filtered nilpotent spaces.
#[derive(Clone, Debug)]
pub struct TensorZData<F> {
    pub z2: Filtration<F>,
    pub w: Filtration<F>,
    pub m: Filtration<F>,
    pub z: Filtration<F>,
}

/// Checks `W1_k ⊗ Z2_l ⊆ Z_{k+l}` and `W1_k ⊗ W2_l ⊆ W_{k+l}` for all `k, l`,
/// where `Z` is the Z-filtration of the tensor product.
pub fn check_weight_z_inclusions<F: Field>(
    f1: &FilteredNilpotentSpace<F>,
    f2: &FilteredNilpotentSpace<F>,
) -> Result<(bool, TensorZData<F>)> {
    let not_exists = |what: &str| Error::Precondition(format!("relative monodromy filtration of {what} does not exist"));
    let m2 = relative_monodromy_filtration(f2)?.exists().cloned().ok_or_else(|| not_exists("the second factor"))?;
    let z2 = z_filtration(&f2.w, &m2, &f2.n)?;
    let w = tensor_filtration(&f1.w, &f2.w);
    let n = tensor_nilpotent(&f1.n, &f2.n);
    let product = FilteredNilpotentSpace::new(w.clone(), n.clone())?;
    let m = relative_monodromy_filtration(&product)?.exists().cloned().ok_or_else(|| not_exists("the product"))?;
    let z = z_filtration(&w, &m, &n)?;
    let (lo1, hi1) = joint_range(&[&f1.w]);
    let (lo2, hi2) = joint_range(&[&f2.w, &z2]);
    let mut ok = true;
    'outer: for k in lo1 - 1..=hi1 + 1 {
        for l in lo2 - 1..=hi2 + 1 {
            let a = f1.w.get(k);
            let wz = tensor_subspace(&a, &z2.get(l));
            let ww = tensor_subspace(&a, &f2.w.get(l));
            if !wz.is_subspace_of(&z.get(k + l)) || !ww.is_subspace_of(&w.get(k + l)) {
                ok = false;
                break 'outer;
            }
        }
    }
    Ok((ok, TensorZData { z2, w, m, z }))
}
