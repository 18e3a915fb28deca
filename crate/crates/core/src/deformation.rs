//! Maurer–Cartan theory over truncated polynomial Artin algebras: curvature,
//! gauge action, obstruction lifting, the augmented functor, and weighted
//! presentations read off a transferred structure on cohomology.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded_lie::{Augmentation, Contraction, DgLie, Vector};
use crate::linfinity::{multisets, predict_vanishing, LInfinity, Transfer};
use crate::poly::{monomial_degree, ArtinAlgebra, Monomial, Poly, VecPoly};
use crate::report::CheckReport;
use crate::scalar::{factorial, q_frac, Q};
use crate::Matrix;

fn check_support(space: &crate::graded_lie::GradedSpace, x: &VecPoly, degree: i64, what: &str) -> Result<()> {
    if x.dim() != space.dim() {
        return Err(Error::Dimension(format!("{what} has dimension {}, expected {}", x.dim(), space.dim())));
    }
    if x.has_constant_term() {
        return Err(Error::Invalid(format!("{what} has a constant term")));
    }
    for v in x.terms().values() {
        if let Some(i) = (0..v.len()).find(|&i| !v[i].is_zero() && space.degree(i) != degree) {
            return Err(Error::Invalid(format!("{what} has a component on {} outside degree {degree}", space.label(i))));
        }
    }
    Ok(())
}

/// `Σ_{r=1}^{N} m_r(x, …, x)/r!` in `V² ⊗ m_A`. On degree 1 elements `m_r = ℓ_r`.
pub fn curvature(s: &LInfinity, x: &VecPoly, alg: &ArtinAlgebra) -> Result<VecPoly> {
    check_support(s.space(), x, 1, "x")?;
    let n = alg.truncation() as usize;
    if s.cap() < n {
        return Err(Error::Precondition(format!("arity cap {} is below the truncation degree {n}", s.cap())));
    }
    let mut out = VecPoly::zero(s.dim());
    for r in 1..=n {
        let p = x.symmetric_power(r, alg, s.dim(), |args| s.eval_m(args));
        out = out.add_scaled(&(Q::one() / factorial(r)), &p);
    }
    Ok(out)
}

/// `dx + ½[x, x]`, computed straight from the bracket.
pub fn dgla_curvature(l: &DgLie, x: &VecPoly, alg: &ArtinAlgebra) -> Result<VecPoly> {
    check_support(l.space(), x, 1, "x")?;
    let dx = x.map(l.dim(), |v| l.d(v));
    let sq = bracket(l, x, x, alg);
    Ok(dx.add_scaled(&q_frac(1, 2), &sq))
}

/// Bracket extended bilinearly over `A`.
pub fn bracket(l: &DgLie, x: &VecPoly, y: &VecPoly, alg: &ArtinAlgebra) -> VecPoly {
    x.bilinear(y, alg, l.dim(), |a, b| l.bracket(a, b))
}

/// `e^λ · x = x + Σ_{n≥0} ad_λ^n([λ, x] - dλ)/(n+1)!`.
pub fn gauge_action(l: &DgLie, lambda: &VecPoly, x: &VecPoly, alg: &ArtinAlgebra) -> Result<VecPoly> {
    check_support(l.space(), lambda, 0, "lambda")?;
    check_support(l.space(), x, 1, "x")?;
    let dl = lambda.map(l.dim(), |v| l.d(v));
    let mut term = bracket(l, lambda, x, alg).sub(&dl);
    let mut out = x.add(&term);
    for n in 1..=alg.truncation() {
        term = bracket(l, lambda, &term, alg).scale(&q_frac(1, n as i64 + 1));
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Baker–Campbell–Hausdorff product through brackets of length 4, which is
/// exact when `m_A^5 = 0`.
pub fn bch_with(a: &VecPoly, b: &VecPoly, alg: &ArtinAlgebra, br: impl Fn(&VecPoly, &VecPoly) -> VecPoly) -> Result<VecPoly> {
    if alg.truncation() > 4 {
        return Err(Error::Unsupported(format!(
            "BCH is implemented through order 4, truncation {} needs more",
            alg.truncation()
        )));
    }
    let ab = br(a, b);
    let aab = br(a, &ab);
    let bab = br(b, &ab);
    let baab = br(b, &aab);
    Ok(a.add(b)
        .add_scaled(&q_frac(1, 2), &ab)
        .add_scaled(&q_frac(1, 12), &aab)
        .add_scaled(&q_frac(-1, 12), &bab)
        .add_scaled(&q_frac(-1, 24), &baab))
}

/// `λ ∗ μ` in `exp(L⁰ ⊗ m_A)`.
pub fn bch(l: &DgLie, a: &VecPoly, b: &VecPoly, alg: &ArtinAlgebra) -> Result<VecPoly> {
    check_support(l.space(), a, 0, "lambda")?;
    check_support(l.space(), b, 0, "mu")?;
    bch_with(a, b, alg, |x, y| bracket(l, x, y, alg))
}

/// `e^λ.(x, e^α) = (e^λ.x, e^α ∗ e^{-ε(λ)})`.
pub fn augmented_mc(
    l: &DgLie,
    aug: &Augmentation,
    x: &VecPoly,
    alpha: &VecPoly,
    lambda: &VecPoly,
    alg: &ArtinAlgebra,
) -> Result<(VecPoly, VecPoly)> {
    let g = &aug.target;
    check_support(g.space(), alpha, 0, "alpha")?;
    let x2 = gauge_action(l, lambda, x, alg)?;
    let e = lambda.map(g.dim(), |v| aug.apply(v)).scale(&-Q::one());
    let a2 = bch_with(alpha, &e, alg, |p, r| bracket(g, p, r, alg))?;
    Ok((x2, a2))
}

/// Outcome of one step of order-by-order lifting.
#[derive(Clone, Debug, PartialEq)]
pub struct Obstruction {
    pub order: u32,
    /// Degree `n` part of the curvature.
    pub curvature: VecPoly,
    /// Its class, in cohomology coordinates of the contraction.
    pub class: VecPoly,
    pub lift: Option<VecPoly>,
}

impl Obstruction {
    pub fn liftable(&self) -> bool {
        self.class.is_zero()
    }
}

/// Given `x` solving the MC equation mod `m^n`, projects the order `n`
/// curvature to cohomology. When the class vanishes, `x - h(c_n)` solves it
/// mod `m^{n+1}`.
pub fn obstruction_lift(s: &LInfinity, c: &Contraction, x: &VecPoly, alg: &ArtinAlgebra, n: u32) -> Result<Obstruction> {
    if n < 2 || n > alg.truncation() {
        return Err(Error::Invalid(format!("order {n} must lie in 2..={}", alg.truncation())));
    }
    let a = alg.with_truncation(n);
    let x = x.truncated(n - 1);
    let curv = curvature(s, &x, &a)?;
    if curv.order().is_some_and(|o| o < n) {
        return Err(Error::Precondition(format!("x does not solve the equation mod m^{n}")));
    }
    let cn = curv.degree_part(n);
    let class = cn.map(c.dim(), |v| c.project(v));
    let lift = class.is_zero().then(|| x.sub(&cn.map(s.dim(), |v| c.homotopy(v))));
    Ok(Obstruction { order: n, curvature: cn, class, lift })
}

/// `ℓ'_2(x₁, y₂) + ℓ'_3(x₁, x₁, x₁)/3!`: the order 3 coefficient of the
/// transferred curvature at `y = x₁ t + y₂ t²`.
pub fn order3_prediction(t: &Transfer, x1: &[Q], y2: &[Q]) -> Vector {
    let s = &t.structure;
    let mut out = s.eval_m(&[x1, y2]);
    let cube = s.eval_m(&[x1, x1, x1]);
    crate::graded_lie::add_scaled(&mut out, &q_frac(1, 6), &cube);
    out
}

/// `Σ_r f_r(y, …, y)/r!`: the image of an MC element under the transfer morphism.
pub fn push_forward(t: &Transfer, y: &VecPoly, alg: &ArtinAlgebra) -> Result<VecPoly> {
    check_support(t.structure.space(), y, 1, "y")?;
    let mut out = VecPoly::zero(t.target_dim());
    for r in 1..=(alg.truncation() as usize).min(t.structure.cap()) {
        let p = y.symmetric_power(r, alg, t.target_dim(), |args| t.eval_morphism(args));
        out = out.add_scaled(&(Q::one() / factorial(r)), &p);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSource {
    /// Basis vector of `H¹` at this index of the transferred structure.
    Cohomology { label: String, index: usize },
    /// Unconstrained generator; `index` locates it in the structure when it
    /// lives there (the `𝔤/ε(H⁰)` part of a cone).
    Free { label: String, index: Option<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub weight: i64,
    pub source: GeneratorSource,
}

impl Generator {
    pub fn index(&self) -> Option<usize> {
        match &self.source {
            GeneratorSource::Cohomology { index, .. } => Some(*index),
            GeneratorSource::Free { index, .. } => *index,
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self.source, GeneratorSource::Free { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub poly: Poly,
    pub weight: i64,
    /// `H²` basis labels whose components span this relation.
    pub targets: Vec<String>,
}

/// `Q[[X_1, …, X_n]] / (P_1, …, P_r)` with weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    /// Echelon form per weight.
    pub relations: Vec<Relation>,
    /// One relation per nonzero `H²` component, before reduction.
    pub components: Vec<Relation>,
}

impl Presentation {
    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn weights(&self) -> Vec<i64> {
        self.generators.iter().map(|g| g.weight).collect()
    }

    pub fn relation_weights(&self) -> Vec<i64> {
        self.relations.iter().map(|r| r.weight).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.relations.iter().filter_map(|r| r.poly.degree()).max().unwrap_or(0)
    }

    /// Every relation is a quadratic form.
    pub fn is_quadratic(&self) -> bool {
        self.relations.iter().all(|r| r.poly.terms().keys().all(|m| monomial_degree(m) == 2))
    }

    pub fn is_smooth(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn all_homogeneous(&self) -> bool {
        let w = self.weights();
        self.relations.iter().all(|r| r.poly.homogeneous_weight(&w) == Some(r.weight))
    }

    /// Free generators appear in no relation.
    pub fn free_unconstrained(&self) -> bool {
        let free: Vec<usize> = (0..self.generators.len()).filter(|&i| self.generators[i].is_free()).collect();
        self.relations.iter().all(|r| r.poly.terms().keys().all(|m| free.iter().all(|&i| m[i] == 0)))
    }

    /// Machine-readable form, one item per line.
    pub fn machine(&self) -> String {
        let names = self.names();
        let mut out = String::new();
        for g in &self.generators {
            let src = match &g.source {
                GeneratorSource::Cohomology { label, .. } => format!("H1:{label}"),
                GeneratorSource::Free { label, .. } => format!("free:{label}"),
            };
            out.push_str(&format!("generator {} weight={} source={}\n", g.name, g.weight, src));
        }
        for r in &self.relations {
            out.push_str(&format!(
                "relation weight={} targets={} poly={}\n",
                r.weight,
                r.targets.join(","),
                r.poly.format(&names)
            ));
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.names();
        let gens: Vec<String> = self.generators.iter().map(|g| format!("{}[{}]", g.name, g.weight)).collect();
        let rels: Vec<String> = self.relations.iter().map(|r| r.poly.format(&names)).collect();
        write!(f, "Q[[{}]] / ({})", gens.join(", "), rels.join(", "))
    }
}

/// A free generator: name, weight, and its index in the structure if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGenerator {
    pub name: String,
    pub weight: i64,
    pub index: Option<usize>,
}

/// Reads the MC equation of a transferred structure as weighted relations:
/// the `H²` components of `Σ_{r≥2} ℓ_r(x, …, x)/r!` in the coordinates of `H¹`.
pub fn extract_presentation(s: &LInfinity, free: &[FreeGenerator]) -> Result<Presentation> {
    let sp = s.space();
    if let Some(i) = (0..sp.dim()).find(|&i| sp.degree(i) <= 0) {
        return Err(Error::Precondition(format!(
            "H^{} is nonzero ({}); the homotopy relation would not be trivial",
            sp.degree(i),
            sp.label(i)
        )));
    }
    if !s.entries(1).next().is_none() {
        return Err(Error::Precondition("the structure has a nonzero differential".into()));
    }
    let free_idx: Vec<usize> = free.iter().filter_map(|f| f.index).collect();
    let h1: Vec<usize> = sp.indices_in_degree(1).into_iter().filter(|i| !free_idx.contains(i)).collect();
    let h2 = sp.indices_in_degree(2);
    let mut generators = Vec::new();
    for &i in &h1 {
        let w = sp
            .weight(i)
            .ok_or_else(|| Error::Precondition(format!("H^1 basis vector {} has no weight", sp.label(i))))?;
        if w < 1 {
            return Err(Error::Precondition(format!("H^1 basis vector {} has weight {w} < 1", sp.label(i))));
        }
        generators.push(Generator {
            name: bare(sp.label(i)),
            weight: w,
            source: GeneratorSource::Cohomology { label: sp.label(i).to_string(), index: i },
        });
    }
    for f in free {
        if let Some(i) = f.index {
            if sp.degree(i) != 1 {
                return Err(Error::Invalid(format!("free generator {} is not in H^1", f.name)));
            }
        }
        generators.push(Generator {
            name: f.name.clone(),
            weight: f.weight,
            source: GeneratorSource::Free { label: f.name.clone(), index: f.index },
        });
    }
    let h1_weights: Vec<i64> = generators.iter().filter(|g| !g.is_free()).map(|g| g.weight).collect();
    let h2_weights: Vec<i64> = h2.iter().filter_map(|&k| sp.weight(k)).collect();
    if h2_weights.len() != h2.len() {
        return Err(Error::Precondition("H^2 needs weights".into()));
    }
    let prediction = predict_vanishing(&h1_weights, &h2_weights)?;
    if s.cap() < prediction.max_arity {
        return Err(Error::Precondition(format!(
            "arity cap {} is below the predicted bound {}",
            s.cap(),
            prediction.max_arity
        )));
    }

    let nv = generators.len();
    // Variables for every H¹ index that may feed an operation.
    let var_of: Vec<(usize, usize)> =
        generators.iter().enumerate().filter_map(|(v, g)| g.index().map(|i| (i, v))).collect();
    let mut polys: BTreeMap<usize, Poly> = h2.iter().map(|&k| (k, Poly::zero(nv))).collect();
    for r in 2..=s.cap() {
        for tuple in multisets(var_of.len(), r) {
            let idx: Vec<usize> = tuple.iter().map(|&p| var_of[p].0).collect();
            let value = s.m(r, &idx);
            if value.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut mono: Monomial = vec![0; nv];
            for &p in &tuple {
                mono[var_of[p].1] += 1;
            }
            let mut denom = Q::one();
            for e in &mono {
                denom *= factorial(*e as usize);
            }
            for (k, p) in polys.iter_mut() {
                if !value[*k].is_zero() {
                    p.add_term(mono.clone(), value[*k].clone() / denom.clone());
                }
            }
            if let Some(k) = (0..value.len()).find(|&k| !value[k].is_zero() && sp.degree(k) != 2) {
                return Err(Error::Internal(format!("operation on H^1 lands outside H^2 ({})", sp.label(k))));
            }
        }
    }
    let weights: Vec<i64> = generators.iter().map(|g| g.weight).collect();
    let mut components = Vec::new();
    for (&k, p) in &polys {
        if p.is_zero() {
            continue;
        }
        let target_w = sp.weight(k).expect("checked");
        match p.homogeneous_weight(&weights) {
            Some(w) if w == target_w => {}
            _ => {
                return Err(Error::Precondition(format!(
                    "relation for {} is not weighted-homogeneous of weight {target_w}",
                    sp.label(k)
                )))
            }
        }
        components.push(Relation { poly: p.clone(), weight: target_w, targets: vec![sp.label(k).to_string()] });
    }
    let relations = echelon_by_weight(&components, nv);
    let pres = Presentation { generators, relations, components };
    if !pres.free_unconstrained() {
        return Err(Error::Internal("a free generator occurs in a relation".into()));
    }
    Ok(pres)
}

/// Cohomology labels look like `[a]`; generator names drop the brackets.
pub fn bare(label: &str) -> String {
    label.strip_prefix('[').and_then(|l| l.strip_suffix(']')).unwrap_or(label).to_string()
}

/// Row-reduces the relations of each weight over their monomials.
fn echelon_by_weight(components: &[Relation], nv: usize) -> Vec<Relation> {
    let mut by_weight: BTreeMap<i64, Vec<&Relation>> = BTreeMap::new();
    for r in components {
        by_weight.entry(r.weight).or_default().push(r);
    }
    let mut out = Vec::new();
    for (w, rels) in by_weight {
        let mut monos: Vec<Monomial> = rels.iter().flat_map(|r| r.poly.terms().keys().cloned()).collect();
        monos.sort_by(|a, b| monomial_degree(b).cmp(&monomial_degree(a)).then(b.cmp(a)));
        monos.dedup();
        let rows: Vec<Vec<Q>> = rels.iter().map(|r| monos.iter().map(|m| r.poly.coefficient(m)).collect()).collect();
        let m = Matrix::from_rows(rows, monos.len()).expect("rectangular");
        let reduced = m.rref();
        let targets: Vec<String> = rels.iter().flat_map(|r| r.targets.clone()).collect();
        for row in reduced.row_vecs() {
            if row.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut p = Poly::zero(nv);
            for (mono, c) in monos.iter().zip(row) {
                p.add_term(mono.clone(), c);
            }
            out.push(Relation { poly: p, weight: w, targets: targets.clone() });
        }
    }
    out
}

/// Solutions `X_i(t) = Σ_{j=1}^{order} c_{ij} t^j` of the presentation over
/// `Q[t]/(t^{order+1})`, built order by order with `c_{ij}` drawn from `grid`.
/// At most `limit` solutions are returned, in a fixed order.
pub fn solve_order_by_order(p: &Presentation, order: u32, grid: &[i64], limit: usize) -> Vec<Vec<Poly>> {
    let nv = p.generators.len();
    let mut out = Vec::new();
    let mut current = vec![Poly::zero(1); nv];
    solve_rec(p, order, grid, limit, 1, &mut current, &mut out);
    out
}

fn solve_rec(p: &Presentation, order: u32, grid: &[i64], limit: usize, j: u32, current: &mut Vec<Poly>, out: &mut Vec<Vec<Poly>>) {
    if out.len() >= limit {
        return;
    }
    if j > order {
        out.push(current.clone());
        return;
    }
    let nv = current.len();
    let mut choice = vec![0usize; nv];
    loop {
        let mut next = current.clone();
        for (v, &c) in choice.iter().enumerate() {
            next[v] = next[v].add(&Poly::term(vec![j], Q::from_integer(grid[c].into())));
        }
        // Coefficients up to t^{j+1} only involve c_{·,≤j}.
        let ok = j + 1 > order
            || p.components.iter().all(|r| r.poly.substitute(&next, Some(j + 1)).is_zero());
        if ok {
            solve_rec(p, order, grid, limit, j + 1, &mut next, out);
            if out.len() >= limit {
                return;
            }
        }
        let mut k = 0;
        loop {
            if k == nv {
                return;
            }
            choice[k] += 1;
            if choice[k] < grid.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// `y = Σ X_i(t) e_{index(i)}` in the transferred structure.
pub fn solution_element(p: &Presentation, dim: usize, solution: &[Poly]) -> VecPoly {
    let mut y = VecPoly::zero(dim);
    for (g, x) in p.generators.iter().zip(solution) {
        let Some(i) = g.index() else { continue };
        for (m, c) in x.terms() {
            let mut v = vec![Q::zero(); dim];
            v[i] = c.clone();
            y.add_term(m.clone(), &v);
        }
    }
    y
}

/// Pushes each solution through the transfer morphism and checks that its
/// curvature in the source vanishes identically.
pub fn check_soundness(
    p: &Presentation,
    t: &Transfer,
    source: &LInfinity,
    solutions: &[Vec<Poly>],
    alg: &ArtinAlgebra,
) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    let mut bad = None;
    for (n, sol) in solutions.iter().enumerate() {
        let y = solution_element(p, t.structure.dim(), sol);
        let x = push_forward(t, &y, alg)?;
        let curv = curvature(source, &x, alg)?;
        if !curv.is_zero() && bad.is_none() {
            bad = Some(format!("solution {n}: {}", curv.format(source.space(), alg)));
        }
    }
    match bad {
        Some(w) => report.fail(format!("soundness over {} solutions", solutions.len()), w),
        None => report.pass(format!("soundness over {} solutions", solutions.len())),
    }
    Ok(report)
}

/// For a solution `y` of the presentation mod `t^n`, the order `n` obstruction
/// of `f_*(y)` computed in `L` equals the `t^n` coefficient of the `H²`
/// components at `y`.
pub fn check_obstruction_consistency(
    p: &Presentation,
    t: &Transfer,
    source: &LInfinity,
    c: &Contraction,
    solution: &[Poly],
    n: u32,
) -> Result<bool> {
    let alg = ArtinAlgebra::single(n);
    let trunc: Vec<Poly> = solution.iter().map(|x| x.truncated(n - 1)).collect();
    let y = solution_element(p, t.structure.dim(), &trunc);
    let x = push_forward(t, &y, &alg)?.truncated(n - 1);
    let obs = obstruction_lift(source, c, &x, &alg, n)?;
    let sp = t.structure.space();
    for r in &p.components {
        let k = (0..sp.dim()).find(|&k| sp.label(k) == r.targets[0]).expect("target label");
        let value = r.poly.substitute(&trunc, Some(n)).coefficient(&[n]);
        if obs.class.coefficient(&[n])[k] != value {
            return Ok(false);
        }
    }
    // Components with no relation must have zero class too.
    let mentioned: Vec<&str> = p.components.iter().map(|r| r.targets[0].as_str()).collect();
    let cls = obs.class.coefficient(&[n]);
    Ok((0..sp.dim()).all(|k| mentioned.contains(&sp.label(k)) || cls[k].is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_lie::{standard_contraction, GradedSpace};
    use crate::linfinity::{from_dgla, homotopy_transfer};
    use crate::scalar::q;

    /// `L¹ = ⟨a, b⟩`, `L² = ⟨u, v⟩`, `db = u`, `[a,a] = u`, `[a,b] = v`.
    fn non_formal() -> DgLie {
        let space = GradedSpace::from_labels([("a", 1), ("b", 1), ("u", 2), ("v", 2)]).unwrap();
        let mut d = Matrix::zeros(4, 4);
        d.set(2, 1, q(1));
        let mut br = BTreeMap::new();
        br.insert((0, 0), space.unit(2));
        br.insert((0, 1), space.unit(3));
        DgLie::with_antisymmetric_completion(space, d, br).unwrap()
    }


    fn unit_poly(dim: usize, i: usize, m: Monomial, c: Q) -> VecPoly {
        let mut v = vec![q(0); dim];
        v[i] = c;
        VecPoly::monomial(m, v)
    }

    #[test]
    fn curvature_examples() {
        let l = non_formal();
        let s = from_dgla(&l, 3).unwrap();
        let alg = ArtinAlgebra::single(2);
        assert!(curvature(&s, &VecPoly::zero(4), &alg).unwrap().is_zero());
        // x = b t: curvature d(b) t = u t
        let alg1 = ArtinAlgebra::single(1);
        let x = unit_poly(4, 1, vec![1], q(1));
        assert_eq!(curvature(&s, &x, &alg1).unwrap(), unit_poly(4, 2, vec![1], q(1)));
        // x = a t + b t^2: (db + ½[a,a]) t^2 = (3/2) u t^2
        let x = unit_poly(4, 0, vec![1], q(1)).add(&unit_poly(4, 1, vec![2], q(1)));
        let c = curvature(&s, &x, &alg).unwrap();
        assert_eq!(c, unit_poly(4, 2, vec![2], q_frac(3, 2)));
        assert_eq!(c, dgla_curvature(&l, &x, &alg).unwrap());
        assert!(curvature(&from_dgla(&l, 2).unwrap(), &x, &ArtinAlgebra::single(3)).is_err());
    }

    #[test]
    fn obstruction_and_order_three_oracle() {
        let l = non_formal();
        let s = from_dgla(&l, 4).unwrap();
        let c = standard_contraction(&l).unwrap();
        let t = homotopy_transfer(&s, &c, 4).unwrap();
        let alg = ArtinAlgebra::single(3);
        let x = unit_poly(4, 0, vec![1], q(1));
        let o2 = obstruction_lift(&s, &c, &x, &alg, 2).unwrap();
        assert!(o2.liftable());
        let x2 = o2.lift.unwrap();
        assert_eq!(x2.coefficient(&[2]), vec![q(0), q_frac(-1, 2), q(0), q(0)]);
        let o3 = obstruction_lift(&s, &c, &x2, &alg, 3).unwrap();
        assert!(!o3.liftable());
        let x1 = c.project(&l.space().unit(0));
        let y2 = c.project(&x2.coefficient(&[2]));
        let predicted = order3_prediction(&t, &x1, &y2);
        assert_eq!(o3.class.coefficient(&[3]), predicted);
        assert!(predicted.iter().any(|v| !v.is_zero()));
    }

    #[test]
    fn gauge_first_order_and_invariance() {
        let (l, _) = crate::samples::sl2_augmented();
        let alg = ArtinAlgebra::single(1);
        let deg0 = l.space().indices_in_degree(0);
        let deg1 = l.space().indices_in_degree(1);
        let lam = unit_poly(l.dim(), deg0[0], vec![1], q(1));
        let x = unit_poly(l.dim(), deg1[0], vec![1], q(2));
        let moved = gauge_action(&l, &lam, &x, &alg).unwrap();
        let expected = x.sub(&lam.map(l.dim(), |v| l.d(v)));
        assert_eq!(moved, expected);
        assert_eq!(gauge_action(&l, &VecPoly::zero(l.dim()), &x, &alg).unwrap(), x);
    }
}
