//! Truncated polynomials over `Q`: scalar ones for presentations and
//! vector-valued ones for elements of `V ⊗ m_A`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded_lie::{add_scaled, format_combination, is_zero_vector, GradedSpace, Vector};
use crate::scalar::Q;

/// Exponent vector.
pub type Monomial = Vec<u32>;

pub fn monomial_degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

fn monomial_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Renders `t^2*s`; the empty monomial is `1`.
pub fn format_monomial(m: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = m
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// `Q[t_1, …, t_m] / m^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinAlgebra {
    vars: Vec<String>,
    truncation: u32,
}

impl ArtinAlgebra {
    pub fn new(vars: Vec<String>, truncation: u32) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::Invalid("an Artin algebra needs at least one generator".into()));
        }
        if truncation == 0 {
            return Err(Error::Invalid("truncation degree must be at least 1".into()));
        }
        Ok(ArtinAlgebra { vars, truncation })
    }

    /// `Q[t]/(t^{n+1})`.
    pub fn single(n: u32) -> Self {
        ArtinAlgebra { vars: vec!["t".into()], truncation: n.max(1) }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn with_truncation(&self, n: u32) -> Self {
        ArtinAlgebra { vars: self.vars.clone(), truncation: n.max(1) }
    }

    pub fn var(&self, i: usize) -> Monomial {
        let mut m = vec![0; self.nvars()];
        m[i] = 1;
        m
    }

    /// Nonconstant monomials of degree `<= N`, by degree then lexicographically.
    pub fn monomials(&self) -> Vec<Monomial> {
        let mut out = Vec::new();
        for d in 1..=self.truncation {
            let mut of_degree = Vec::new();
            compositions(d, self.nvars(), &mut Vec::new(), &mut of_degree);
            of_degree.sort_unstable_by(|a, b| b.cmp(a));
            out.extend(of_degree);
        }
        out
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Option<Monomial> {
        let m = monomial_mul(a, b);
        (monomial_degree(&m) <= self.truncation).then_some(m)
    }

    pub fn format_monomial(&self, m: &[u32]) -> String {
        format_monomial(m, &self.vars)
    }
}

fn compositions(total: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if parts == 1 {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for first in 0..=total {
        cur.push(first);
        compositions(total - first, parts - 1, cur, out);
        cur.pop();
    }
}

/// Polynomial in `nvars` variables with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Poly::term(m, Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut p = Poly::zero(m.len());
        p.add_term(m, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn coefficient(&self, m: &[u32]) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        debug_assert_eq!(m.len(), self.nvars);
        let entry = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// Product, dropping monomials above `truncation` when given.
    pub fn mul(&self, other: &Poly, truncation: Option<u32>) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let m = monomial_mul(a, b);
                if truncation.is_none_or(|n| monomial_degree(&m) <= n) {
                    out.add_term(m, x * y);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32, truncation: Option<u32>) -> Poly {
        let mut out = Poly::constant(self.nvars, Q::one());
        for _ in 0..e {
            out = out.mul(self, truncation);
        }
        out
    }

    pub fn truncated(&self, n: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| monomial_degree(m) <= n).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| monomial_degree(m)).max()
    }

    /// Lowest total degree, `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| monomial_degree(m)).min()
    }

    /// Substitutes `values[i]` for the `i`-th variable.
    pub fn substitute(&self, values: &[Poly], truncation: Option<u32>) -> Poly {
        let nv = values.first().map_or(0, |v| v.nvars);
        let mut out = Poly::zero(nv);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(nv, c.clone());
            for (i, e) in m.iter().enumerate() {
                if *e > 0 {
                    t = t.mul(&values[i].pow(*e, truncation), truncation);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Weight of every monomial if they all agree.
    pub fn homogeneous_weight(&self, weights: &[i64]) -> Option<i64> {
        let mut ws = self.terms.keys().map(|m| m.iter().zip(weights).map(|(e, w)| *e as i64 * w).sum::<i64>());
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        // Highest degree first, then by exponent vector descending.
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| monomial_degree(b).cmp(&monomial_degree(a)).then(b.cmp(a)));
        let labels: Vec<String> = keys.iter().map(|m| format_monomial(m, names)).collect();
        format_combination(keys.iter().zip(&labels).map(|(m, l)| (&self.terms[*m], l.as_str())))
    }
}

/// Element of `V ⊗ m_A`: a vector coefficient per nonconstant monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VecPoly {
    dim: usize,
    terms: BTreeMap<Monomial, Vector>,
}

impl VecPoly {
    pub fn zero(dim: usize) -> Self {
        VecPoly { dim, terms: BTreeMap::new() }
    }

    /// `v ⊗ t^m`.
    pub fn monomial(m: Monomial, v: Vector) -> Self {
        let mut out = VecPoly::zero(v.len());
        out.add_term(m, &v);
        out
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Monomial, Vector)>) -> Self {
        let mut out = VecPoly::zero(dim);
        for (m, v) in terms {
            out.add_term(m, &v);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Vector> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &[u32]) -> Vector {
        self.terms.get(m).cloned().unwrap_or_else(|| vec![Q::zero(); self.dim])
    }

    pub fn add_term(&mut self, m: Monomial, v: &[Q]) {
        self.add_scaled_term(m, &Q::one(), v);
    }

    pub fn add_scaled_term(&mut self, m: Monomial, c: &Q, v: &[Q]) {
        if c.is_zero() || is_zero_vector(v) {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(|| vec![Q::zero(); v.len()]);
        add_scaled(entry, c, v);
        if is_zero_vector(entry) {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &VecPoly) -> VecPoly {
        self.add_scaled(&Q::one(), other)
    }

    pub fn sub(&self, other: &VecPoly) -> VecPoly {
        self.add_scaled(&-Q::one(), other)
    }

    pub fn add_scaled(&self, c: &Q, other: &VecPoly) -> VecPoly {
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.add_scaled_term(m.clone(), c, v);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> VecPoly {
        VecPoly::zero(self.dim).add_scaled(c, self)
    }

    /// Applies a linear map coefficientwise.
    pub fn map(&self, out_dim: usize, f: impl Fn(&[Q]) -> Vector) -> VecPoly {
        let mut out = VecPoly::zero(out_dim);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &f(v));
        }
        out
    }

    /// Monomials of total degree exactly `n`.
    pub fn degree_part(&self, n: u32) -> VecPoly {
        VecPoly {
            dim: self.dim,
            terms: self.terms.iter().filter(|(m, _)| monomial_degree(m) == n).map(|(m, v)| (m.clone(), v.clone())).collect(),
        }
    }

    pub fn truncated(&self, n: u32) -> VecPoly {
        VecPoly {
            dim: self.dim,
            terms: self.terms.iter().filter(|(m, _)| monomial_degree(m) <= n).map(|(m, v)| (m.clone(), v.clone())).collect(),
        }
    }

    /// Lowest total degree present.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| monomial_degree(m)).min()
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.keys().any(|m| monomial_degree(m) == 0)
    }

    /// `i`-th coordinate as a scalar polynomial.
    pub fn component(&self, i: usize, nvars: usize) -> Poly {
        let mut p = Poly::zero(nvars);
        for (m, v) in &self.terms {
            p.add_term(m.clone(), v[i].clone());
        }
        p
    }

    /// Multiplies by a scalar polynomial.
    pub fn mul_poly(&self, p: &Poly, alg: &ArtinAlgebra) -> VecPoly {
        let mut out = VecPoly::zero(self.dim);
        for (a, c) in p.terms() {
            for (b, v) in &self.terms {
                if let Some(m) = alg.mul(a, b) {
                    out.add_scaled_term(m, c, v);
                }
            }
        }
        out
    }

    /// Bilinear extension of `f` to `self ⊗ other`, truncated in `alg`.
    pub fn bilinear(&self, other: &VecPoly, alg: &ArtinAlgebra, out_dim: usize, f: impl Fn(&[Q], &[Q]) -> Vector) -> VecPoly {
        let mut out = VecPoly::zero(out_dim);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some(m) = alg.mul(a, b) {
                    out.add_term(m, &f(x, y));
                }
            }
        }
        out
    }

    /// `f(x, …, x)` for a symmetric multilinear `f` of arity `r`, expanded over
    /// multisets of monomials with multinomial counts.
    pub fn symmetric_power(
        &self,
        r: usize,
        alg: &ArtinAlgebra,
        out_dim: usize,
        f: impl Fn(&[&[Q]]) -> Vector,
    ) -> VecPoly {
        let terms: Vec<(&Monomial, &Vector)> = self.terms.iter().collect();
        let mut out = VecPoly::zero(out_dim);
        if r == 0 {
            return out;
        }
        let mut choice = Vec::with_capacity(r);
        symmetric_rec(&terms, 0, r, alg, &mut choice, &mut out, &f);
        out
    }

    pub fn format(&self, space: &GradedSpace, alg: &ArtinAlgebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| monomial_degree(a).cmp(&monomial_degree(b)).then(b.cmp(a)));
        keys.iter()
            .map(|m| format!("({})*{}", space.format_vector(&self.terms[*m]), alg.format_monomial(m)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn symmetric_rec(
    terms: &[(&Monomial, &Vector)],
    start: usize,
    remaining: usize,
    alg: &ArtinAlgebra,
    choice: &mut Vec<usize>,
    out: &mut VecPoly,
    f: &impl Fn(&[&[Q]]) -> Vector,
) {
    if remaining == 0 {
        let mut m = vec![0; alg.nvars()];
        for &c in choice.iter() {
            m = monomial_mul(&m, terms[c].0);
        }
        if monomial_degree(&m) > alg.truncation() {
            return;
        }
        // r!/∏ mult! orderings of this multiset.
        let mut count = crate::scalar::factorial(choice.len());
        let mut k = 0;
        while k < choice.len() {
            let mut j = k;
            while j < choice.len() && choice[j] == choice[k] {
                j += 1;
            }
            count /= crate::scalar::factorial(j - k);
            k = j;
        }
        let args: Vec<&[Q]> = choice.iter().map(|&c| terms[c].1.as_slice()).collect();
        out.add_scaled_term(m, &count, &f(&args));
        return;
    }
    for i in start..terms.len() {
        // Every further factor has degree at least 1.
        let deg: u32 = choice.iter().map(|&c| monomial_degree(terms[c].0)).sum::<u32>()
            + monomial_degree(terms[i].0)
            + (remaining as u32 - 1);
        if deg > alg.truncation() {
            continue;
        }
        choice.push(i);
        symmetric_rec(terms, i, remaining - 1, alg, choice, out, f);
        choice.pop();
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("X{i}")).collect();
        write!(f, "{}", self.format(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn monomial_listing() {
        let a = ArtinAlgebra::new(vec!["s".into(), "t".into()], 2).unwrap();
        let ms = a.monomials();
        assert_eq!(ms, vec![vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(a.mul(&[1, 0], &[1, 1]), None);
        assert_eq!(ArtinAlgebra::single(3).monomials().len(), 3);
    }

    #[test]
    fn poly_arithmetic() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.add(&y).pow(2, None);
        assert_eq!(p.coefficient(&[1, 1]), q(2));
        assert_eq!(p.homogeneous_weight(&[1, 1]), Some(2));
        assert_eq!(p.homogeneous_weight(&[1, 2]), None);
        let t = Poly::var(1, 0);
        let sub = p.substitute(&[t.clone(), t.pow(2, None)], Some(3));
        // (t + t^2)^2 = t^2 + 2t^3 mod t^4
        assert_eq!(sub, Poly::term(vec![2], q(1)).add(&Poly::term(vec![3], q(2))));
        assert_eq!(p.format(&["a".into(), "b".into()]), "a^2 + 2*a*b + b^2");
    }

    #[test]
    fn symmetric_power_counts() {
        // f(x, x) for f = coordinatewise product on Q^1, x = t + t^2: (t + t^2)^2 = t^2 + 2t^3 mod t^4
        let alg = ArtinAlgebra::single(3);
        let x = VecPoly::from_terms(1, [(vec![1], vec![q(1)]), (vec![2], vec![q(1)])]);
        let sq = x.symmetric_power(2, &alg, 1, |a| vec![a[0][0].clone() * a[1][0].clone()]);
        assert_eq!(sq.coefficient(&[2]), vec![q(1)]);
        assert_eq!(sq.coefficient(&[3]), vec![q(2)]);
        let cube = x.symmetric_power(3, &alg, 1, |a| vec![a[0][0].clone() * a[1][0].clone() * a[2][0].clone()]);
        assert_eq!(cube.terms().len(), 1);
        assert_eq!(cube.coefficient(&[3]), vec![q(1)]);
    }
}
