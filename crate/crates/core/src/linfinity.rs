//! L∞ structures truncated at an arity cap, the generalized Jacobi check,
//! homotopy transfer along a contraction, rooted trees, and weight-based
//! vanishing prediction.
//!
//! Operations are stored in the shifted symmetric form: on `V = L[1]` (shifted
//! degree `|x| - 1`) each `m_r` is graded symmetric of degree `+1`, kept on
//! nondecreasing basis tuples. The antisymmetric brackets `ℓ_r` of degree
//! `2 - r` are recovered by the décalage sign
//! `m_r(x_1..x_r) = (-1)^{r(r-1)/2 + Σ_i (r-i)|x_i|} ℓ_r(x_1..x_r)`,
//! which is `+1` whenever every `x_i` has degree 1. In particular
//! `Σ_r m_r(x..x)/r!` is the Maurer-Cartan expression `Σ_r ℓ_r(x..x)/r!`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded_lie::{
    add_scaled, check_dgla_axioms, is_zero_vector, BasisElement, Contraction, DgLie, GradedSpace, Vector,
};
use crate::report::CheckReport;
use crate::scalar::{factorial, Q};
use crate::Matrix;

#[derive(Clone, Debug)]
pub struct LInfinity {
    space: GradedSpace,
    cap: usize,
    ops: BTreeMap<usize, BTreeMap<Vec<usize>, Vector>>,
}

/// Equal spaces, caps and nonzero operations.
impl PartialEq for LInfinity {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.cap == other.cap && self.same_operations(other)
    }
}

/// Sorts basis indices into nondecreasing order, returning the Koszul sign
/// (`true` for `-1`) for shifted degrees `sdeg`, or `None` when an element of
/// odd shifted degree repeats (the symmetric value is then zero).
pub fn koszul_sort(indices: &[usize], sdeg: impl Fn(usize) -> i64) -> Option<(Vec<usize>, bool)> {
    let mut negative = false;
    for a in 0..indices.len() {
        for b in a + 1..indices.len() {
            if indices[a] > indices[b] && (sdeg(indices[a]) * sdeg(indices[b])).rem_euclid(2) == 1 {
                negative = !negative;
            }
        }
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1] && sdeg(w[0]).rem_euclid(2) == 1) {
        return None;
    }
    Some((sorted, negative))
}

/// Koszul sign of listing the items at `order` (a permutation of positions),
/// where position `p` carries shifted degree `sdeg(p)`.
pub fn permutation_sign(order: &[usize], sdeg: impl Fn(usize) -> i64) -> bool {
    let mut negative = false;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if order[a] > order[b] && (sdeg(order[a]) * sdeg(order[b])).rem_euclid(2) == 1 {
                negative = !negative;
            }
        }
    }
    negative
}

/// Sign relating `m_r` and `ℓ_r` on a tuple of unshifted degrees.
pub fn decalage_negative(degrees: &[i64]) -> bool {
    let r = degrees.len() as i64;
    let mut parity = r * (r - 1) / 2;
    for (pos, d) in degrees.iter().enumerate() {
        parity += (r - 1 - pos as i64) * d;
    }
    parity.rem_euclid(2) == 1
}

fn signed(v: Vector, negative: bool) -> Vector {
    if negative {
        v.into_iter().map(|x| -x).collect()
    } else {
        v
    }
}

/// All set partitions of `0..n`, blocks ordered by their least element.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(pos: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if pos == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(pos);
            go(pos + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![pos]);
        go(pos + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// Nondecreasing tuples of length `len` over `0..n`.
pub fn multisets(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i, n, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, len, &mut Vec::new(), &mut out);
    out
}

impl LInfinity {
    pub fn zero(space: GradedSpace, cap: usize) -> Self {
        LInfinity { space, cap, ops: BTreeMap::new() }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn shifted_degree(&self, i: usize) -> i64 {
        self.space.degree(i) - 1
    }

    fn sort(&self, indices: &[usize]) -> Option<(Vec<usize>, bool)> {
        koszul_sort(indices, |i| self.shifted_degree(i))
    }

    fn check_value(&self, r: usize, indices: &[usize], value: &[Q]) -> Result<()> {
        if r == 0 || r > self.cap {
            return Err(Error::Invalid(format!("arity {r} outside 1..={}", self.cap)));
        }
        if indices.len() != r || indices.iter().any(|&i| i >= self.dim()) || value.len() != self.dim() {
            return Err(Error::Dimension(format!("bad operation entry of arity {r}")));
        }
        let target: i64 = indices.iter().map(|&i| self.space.degree(i)).sum::<i64>() + 2 - r as i64;
        if let Some(k) = (0..self.dim()).find(|&k| !value[k].is_zero() && self.space.degree(k) != target) {
            return Err(Error::Invalid(format!(
                "operation of arity {r} has a component on {} of the wrong degree",
                self.space.label(k)
            )));
        }
        Ok(())
    }

    /// Sets `m_r` on a basis tuple (any order; the symmetric extension is implied).
    pub fn set_m(&mut self, r: usize, indices: &[usize], value: Vector) -> Result<()> {
        self.check_value(r, indices, &value)?;
        let Some((key, negative)) = self.sort(indices) else {
            if is_zero_vector(&value) {
                return Ok(());
            }
            return Err(Error::Invalid("nonzero value on a tuple that symmetry forces to vanish".into()));
        };
        let value = signed(value, negative);
        let slot = self.ops.entry(r).or_default();
        if is_zero_vector(&value) {
            slot.remove(&key);
        } else {
            slot.insert(key, value);
        }
        Ok(())
    }

    /// Sets `ℓ_r(e_{i_1}, …, e_{i_r})`.
    pub fn set_l(&mut self, r: usize, indices: &[usize], value: Vector) -> Result<()> {
        let degrees: Vec<i64> = indices.iter().map(|&i| self.space.degree(i)).collect();
        self.set_m(r, indices, signed(value, decalage_negative(&degrees)))
    }

    pub fn m(&self, r: usize, indices: &[usize]) -> Vector {
        match self.sort(indices) {
            Some((key, negative)) => match self.ops.get(&r).and_then(|op| op.get(&key)) {
                Some(v) => signed(v.clone(), negative),
                None => self.space.zero_vector(),
            },
            None => self.space.zero_vector(),
        }
    }

    pub fn l(&self, r: usize, indices: &[usize]) -> Vector {
        let degrees: Vec<i64> = indices.iter().map(|&i| self.space.degree(i)).collect();
        signed(self.m(r, indices), decalage_negative(&degrees))
    }

    /// Stored nonzero `m_r` values on sorted tuples.
    pub fn entries(&self, r: usize) -> impl Iterator<Item = (&Vec<usize>, &Vector)> {
        self.ops.get(&r).into_iter().flat_map(|op| op.iter())
    }

    /// Nonzero `ℓ_r` values on sorted tuples.
    pub fn l_entries(&self, r: usize) -> Vec<(Vec<usize>, Vector)> {
        self.entries(r)
            .map(|(k, v)| {
                let degrees: Vec<i64> = k.iter().map(|&i| self.space.degree(i)).collect();
                (k.clone(), signed(v.clone(), decalage_negative(&degrees)))
            })
            .collect()
    }

    pub fn arities(&self) -> Vec<usize> {
        self.ops.iter().filter(|(_, op)| !op.is_empty()).map(|(r, _)| *r).collect()
    }

    pub fn is_zero_from(&self, r: usize) -> bool {
        self.ops.iter().all(|(k, op)| *k < r || op.is_empty())
    }

    /// `m_r` on vector arguments, by multilinear expansion.
    pub fn eval_m(&self, args: &[&[Q]]) -> Vector {
        let r = args.len();
        let mut out = self.space.zero_vector();
        let Some(op) = self.ops.get(&r) else {
            return out;
        };
        if op.is_empty() {
            return out;
        }
        let supports: Vec<Vec<usize>> = args
            .iter()
            .map(|a| (0..a.len()).filter(|&i| !a[i].is_zero()).collect())
            .collect();
        if supports.iter().any(|s| s.is_empty()) {
            return out;
        }
        let mut idx = vec![0usize; r];
        self.expand(op, args, &supports, 0, Q::one(), &mut idx, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn expand(
        &self,
        op: &BTreeMap<Vec<usize>, Vector>,
        args: &[&[Q]],
        supports: &[Vec<usize>],
        pos: usize,
        coef: Q,
        idx: &mut Vec<usize>,
        out: &mut Vector,
    ) {
        if pos == args.len() {
            if let Some((key, negative)) = self.sort(idx) {
                if let Some(v) = op.get(&key) {
                    let c = if negative { -coef } else { coef };
                    add_scaled(out, &c, v);
                }
            }
            return;
        }
        for &i in &supports[pos] {
            idx[pos] = i;
            self.expand(op, args, supports, pos + 1, coef.clone() * args[pos][i].clone(), idx, out);
        }
    }

    /// Restriction to the span of the basis vectors `keep` (in order); fails
    /// unless every operation on kept tuples stays inside that span.
    pub fn restrict(&self, keep: &[usize]) -> Result<LInfinity> {
        let basis: Vec<BasisElement> = keep.iter().map(|&i| self.space.basis()[i].clone()).collect();
        let space = GradedSpace::new(basis)?;
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        let mut out = LInfinity::zero(space, self.cap);
        for (r, op) in &self.ops {
            for (key, v) in op {
                let Some(new_key) = key.iter().map(|i| pos.get(i).copied()).collect::<Option<Vec<usize>>>() else {
                    continue;
                };
                if (0..v.len()).any(|i| !v[i].is_zero() && !pos.contains_key(&i)) {
                    return Err(Error::Invalid(format!("m{r} leaves the kept span on {key:?}")));
                }
                let value: Vector = keep.iter().map(|&i| v[i].clone()).collect();
                out.set_m(*r, &new_key, value)?;
            }
        }
        Ok(out)
    }

    /// `m_r(x, …, x)`.
    pub fn eval_power(&self, r: usize, x: &[Q]) -> Vector {
        let args: Vec<&[Q]> = vec![x; r];
        self.eval_m(&args)
    }

    /// `m_1` as a matrix.
    pub fn m1_matrix(&self) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|i| self.m(1, &[i])).collect();
        Matrix::from_columns(&cols, n).expect("square")
    }

    /// Same operations on a relabelled space (dimensions and degrees must agree).
    pub fn with_space(&self, space: GradedSpace) -> Result<Self> {
        if space.dim() != self.dim() || (0..self.dim()).any(|i| space.degree(i) != self.space.degree(i)) {
            return Err(Error::Dimension("relabelled space must have the same degrees".into()));
        }
        Ok(LInfinity { space, cap: self.cap, ops: self.ops.clone() })
    }

    pub fn same_operations(&self, other: &LInfinity) -> bool {
        let strip = |s: &LInfinity| -> BTreeMap<usize, BTreeMap<Vec<usize>, Vector>> {
            s.ops.iter().filter(|(_, op)| !op.is_empty()).map(|(k, v)| (*k, v.clone())).collect()
        };
        strip(self) == strip(other)
    }

    pub fn truncate(&self, cap: usize) -> Self {
        LInfinity {
            space: self.space.clone(),
            cap,
            ops: self.ops.iter().filter(|(r, _)| **r <= cap).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }
}

impl fmt::Display for LInfinity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.arities() {
            for (key, value) in self.l_entries(r) {
                let args: Vec<&str> = key.iter().map(|&i| self.space.label(i)).collect();
                writeln!(f, "l{r}({}) = {}", args.join(", "), self.space.format_vector(&value))?;
            }
        }
        Ok(())
    }
}

/// `ℓ_1 = d`, `ℓ_2 = [-,-]`, nothing above. Fails if the DGLA axioms fail.
pub fn from_dgla(l: &DgLie, cap: usize) -> Result<LInfinity> {
    let report = check_dgla_axioms(l);
    if let Some(bad) = report.first_failure() {
        return Err(Error::Invalid(format!(
            "input fails {} at {}",
            bad.name,
            bad.witness.clone().unwrap_or_default()
        )));
    }
    Ok(from_dgla_unchecked(l, cap))
}

/// Same as [`from_dgla`] without the axiom check (used for negative controls).
pub fn from_dgla_unchecked(l: &DgLie, cap: usize) -> LInfinity {
    let s = l.space().clone();
    let mut out = LInfinity::zero(s.clone(), cap.max(2));
    for i in 0..s.dim() {
        out.set_m(1, &[i], l.d(&s.unit(i))).expect("degree +1 differential");
    }
    for ((i, j), v) in l.structure_constants() {
        if i <= j && out.sort(&[*i, *j]).is_some() {
            out.set_l(2, &[*i, *j], v.clone()).expect("bracket degrees");
        }
    }
    out.cap = cap;
    out
}

/// Generalized Jacobi identities on every basis tuple of length `<= up_to`.
pub fn check_linfinity_axioms(s: &LInfinity, up_to: usize) -> CheckReport {
    let mut report = CheckReport::new();
    let n_basis = s.dim();
    let sdegs: Vec<i64> = (0..n_basis).map(|i| s.shifted_degree(i)).collect();
    let present: std::collections::BTreeSet<i64> = sdegs.iter().copied().collect();
    for n in 1..=up_to.min(s.cap()) {
        let mut witness = None;
        for t in multisets(n_basis, n) {
            let total: i64 = t.iter().map(|&i| sdegs[i]).sum();
            if !present.contains(&(total + 2)) || s.sort(&t).is_none() {
                continue;
            }
            let value = jacobiator(s, &t);
            if !is_zero_vector(&value) {
                let labels: Vec<&str> = t.iter().map(|&i| s.space.label(i)).collect();
                witness = Some(format!("({}) -> {}", labels.join(", "), s.space.format_vector(&value)));
                break;
            }
        }
        match witness {
            Some(w) => report.fail(format!("arity {n}"), w),
            None => report.pass(format!("arity {n}")),
        }
    }
    report
}

/// `Σ_S ε(S) m_{n-|S|+1}(m_{|S|}(t_S), t_{S^c})`.
pub fn jacobiator(s: &LInfinity, t: &[usize]) -> Vector {
    let n = t.len();
    let mut out = s.space.zero_vector();
    for mask in 1u32..(1u32 << n) {
        let inner: Vec<usize> = (0..n).filter(|p| mask & (1 << p) != 0).collect();
        let outer: Vec<usize> = (0..n).filter(|p| mask & (1 << p) == 0).collect();
        let inner_idx: Vec<usize> = inner.iter().map(|&p| t[p]).collect();
        let first = s.m(inner.len(), &inner_idx);
        if is_zero_vector(&first) {
            continue;
        }
        let mut order = inner.clone();
        order.extend(&outer);
        let negative = permutation_sign(&order, |p| s.shifted_degree(t[p]));
        let rest: Vec<Vector> = outer.iter().map(|&p| s.space.unit(t[p])).collect();
        let mut args: Vec<&[Q]> = vec![&first];
        args.extend(rest.iter().map(|v| v.as_slice()));
        let value = s.eval_m(&args);
        add_scaled(&mut out, &if negative { -Q::one() } else { Q::one() }, &value);
    }
    out
}

/// Transferred structure on cohomology together with the components of the
/// L∞ quasi-isomorphism `f: H -> L` (`f_1 = i`).
#[derive(Clone, Debug)]
pub struct Transfer {
    pub structure: LInfinity,
    /// `f_n` on sorted tuples of cohomology basis indices; zero values omitted.
    pub morphism: BTreeMap<Vec<usize>, Vector>,
    target_dim: usize,
}

impl Transfer {
    /// `f_n(t)` for a tuple in any order.
    pub fn component(&self, t: &[usize]) -> Vector {
        let s = &self.structure;
        match s.sort(t) {
            Some((key, negative)) => match self.morphism.get(&key) {
                Some(v) => signed(v.clone(), negative),
                None => vec![Q::zero(); self.target_dim],
            },
            None => vec![Q::zero(); self.target_dim],
        }
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    /// `f_r` on vector arguments, by multilinear expansion.
    pub fn eval_morphism(&self, args: &[&[Q]]) -> Vector {
        let mut out = vec![Q::zero(); self.target_dim];
        let supports: Vec<Vec<usize>> =
            args.iter().map(|a| (0..a.len()).filter(|&i| !a[i].is_zero()).collect()).collect();
        let mut idx = vec![0usize; args.len()];
        self.expand(args, &supports, 0, Q::one(), &mut idx, &mut out);
        out
    }

    fn expand(&self, args: &[&[Q]], supports: &[Vec<usize>], pos: usize, coef: Q, idx: &mut Vec<usize>, out: &mut Vector) {
        if pos == args.len() {
            add_scaled(out, &coef, &self.component(idx));
            return;
        }
        for &i in &supports[pos] {
            idx[pos] = i;
            self.expand(args, supports, pos + 1, coef.clone() * args[pos][i].clone(), idx, out);
        }
    }
}

struct TransferRun<'a> {
    source: &'a LInfinity,
    c: &'a Contraction,
    h_sdeg: Vec<i64>,
    lambda: HashMap<Vec<usize>, Vector>,
    phi: HashMap<Vec<usize>, Vector>,
}

impl TransferRun<'_> {
    fn zero(&self) -> Vector {
        self.source.space.zero_vector()
    }

    fn lambda(&mut self, t: &[usize]) -> Vector {
        if t.len() == 1 {
            return self.c.i.column(t[0]);
        }
        if let Some(v) = self.lambda.get(t) {
            return v.clone();
        }
        let phi = self.phi(t);
        let v: Vector = self.c.homotopy(&phi).into_iter().map(|x| -x).collect();
        self.lambda.insert(t.to_vec(), v.clone());
        v
    }

    /// Sum over set partitions with at least two blocks of `ε m_k(λ(t_B1), …)`.
    fn phi(&mut self, t: &[usize]) -> Vector {
        if let Some(v) = self.phi.get(t) {
            return v.clone();
        }
        let mut out = self.zero();
        let repeated_odd = t.windows(2).any(|w| w[0] == w[1] && self.h_sdeg[w[0]].rem_euclid(2) == 1);
        if !repeated_odd {
            for blocks in set_partitions(t.len()) {
                if blocks.len() < 2 || blocks.len() > self.source.cap() {
                    continue;
                }
                let mut args = Vec::with_capacity(blocks.len());
                let mut dead = false;
                for b in &blocks {
                    let sub: Vec<usize> = b.iter().map(|&p| t[p]).collect();
                    let v = self.lambda(&sub);
                    if is_zero_vector(&v) {
                        dead = true;
                        break;
                    }
                    args.push(v);
                }
                if dead {
                    continue;
                }
                let order: Vec<usize> = blocks.iter().flatten().copied().collect();
                let negative = permutation_sign(&order, |p| self.h_sdeg[t[p]]);
                let refs: Vec<&[Q]> = args.iter().map(|v| v.as_slice()).collect();
                let value = self.source.eval_m(&refs);
                add_scaled(&mut out, &if negative { -Q::one() } else { Q::one() }, &value);
            }
        }
        self.phi.insert(t.to_vec(), out.clone());
        out
    }
}

/// Homotopy transfer along `c`: `m'_1 = p m_1 i`, and for `n >= 2`
/// `m'_n = p Φ_n`, `f_n = -h Φ_n`, where `Φ_n` sums `m_k(f(t_B1), …, f(t_Bk))`
/// over set partitions of the inputs into `k >= 2` blocks. This is the sum over
/// leaf-labelled rooted trees, each isomorphism class weighted by its
/// automorphism count.
pub fn homotopy_transfer(s: &LInfinity, c: &Contraction, cap: usize) -> Result<Transfer> {
    let check = c.verify_complex(s.space(), &s.m1_matrix());
    if let Some(bad) = check.first_failure() {
        return Err(Error::Invalid(format!("contraction fails {}", bad.name)));
    }
    let h_space = c.h_space.clone();
    let k = h_space.dim();
    let h_sdeg: Vec<i64> = (0..k).map(|i| h_space.degree(i) - 1).collect();
    let mut out = LInfinity::zero(h_space.clone(), cap);
    let mut run = TransferRun { source: s, c, h_sdeg, lambda: HashMap::new(), phi: HashMap::new() };
    let mut morphism = BTreeMap::new();
    for a in 0..k {
        let ia = c.i.column(a);
        let m1 = c.project(&s.eval_m(&[&ia]));
        out.set_m(1, &[a], m1)?;
        morphism.insert(vec![a], ia);
    }
    for n in 2..=cap {
        for t in multisets(k, n) {
            if out.sort(&t).is_none() {
                continue;
            }
            let phi = run.phi(&t);
            if is_zero_vector(&phi) {
                continue;
            }
            out.set_m(n, &t, c.project(&phi))?;
            let f = run.lambda(&t);
            if !is_zero_vector(&f) {
                morphism.insert(t, f);
            }
        }
    }
    Ok(Transfer { structure: out, morphism, target_dim: s.dim() })
}

/// Checks the L∞-morphism identities for `f: source -> target` on every
/// sorted tuple of length `<= up_to`.
pub fn check_morphism(source: &LInfinity, target: &LInfinity, f: &Transfer, up_to: usize) -> CheckReport {
    let mut report = CheckReport::new();
    let k = source.dim();
    let zero_t = target.space.zero_vector();
    let comp = |t: &[usize]| f.component(t);
    for n in 1..=up_to.min(source.cap()) {
        let mut witness = None;
        for t in multisets(k, n) {
            if source.sort(&t).is_none() {
                continue;
            }
            let sd = |p: usize| source.shifted_degree(t[p]);
            let mut lhs = zero_t.clone();
            for mask in 1u32..(1u32 << n) {
                let inner: Vec<usize> = (0..n).filter(|p| mask & (1 << p) != 0).collect();
                let outer: Vec<usize> = (0..n).filter(|p| mask & (1 << p) == 0).collect();
                let inner_idx: Vec<usize> = inner.iter().map(|&p| t[p]).collect();
                let m = source.m(inner.len(), &inner_idx);
                let mut order = inner.clone();
                order.extend(&outer);
                let sign = if permutation_sign(&order, sd) { -Q::one() } else { Q::one() };
                for (a, coef) in m.iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    let mut args = vec![a];
                    args.extend(outer.iter().map(|&p| t[p]));
                    add_scaled(&mut lhs, &(sign.clone() * coef.clone()), &comp(&args));
                }
            }
            let mut rhs = zero_t.clone();
            for blocks in set_partitions(n) {
                let args: Vec<Vector> =
                    blocks.iter().map(|b| comp(&b.iter().map(|&p| t[p]).collect::<Vec<_>>())).collect();
                if args.iter().any(|a| is_zero_vector(a)) {
                    continue;
                }
                let order: Vec<usize> = blocks.iter().flatten().copied().collect();
                let sign = if permutation_sign(&order, sd) { -Q::one() } else { Q::one() };
                let refs: Vec<&[Q]> = args.iter().map(|v| v.as_slice()).collect();
                add_scaled(&mut rhs, &sign, &target.eval_m(&refs));
            }
            if lhs != rhs {
                let labels: Vec<&str> = t.iter().map(|&i| source.space.label(i)).collect();
                witness = Some(format!("({})", labels.join(", ")));
                break;
            }
        }
        match witness {
            Some(w) => report.fail(format!("morphism arity {n}"), w),
            None => report.pass(format!("morphism arity {n}")),
        }
    }
    report
}

fn homogeneous_map(m: &Matrix, row_weight: impl Fn(usize) -> Option<i64>, col_weight: impl Fn(usize) -> Option<i64>) -> bool {
    (0..m.rows()).all(|r| {
        (0..m.cols()).all(|c| m.get(r, c).is_zero() || (row_weight(r).is_some() && row_weight(r) == col_weight(c)))
    })
}

/// Whether every operation adds weights on basis tuples.
pub fn check_weight_additivity(s: &LInfinity) -> CheckReport {
    let mut report = CheckReport::new();
    let sp = s.space();
    let mut bad = None;
    'outer: for r in s.arities() {
        for (key, value) in s.entries(r) {
            let expected: Option<i64> = key.iter().map(|&i| sp.weight(i)).sum();
            if expected.is_none() || sp.weight_of(value) != expected {
                let labels: Vec<&str> = key.iter().map(|&i| sp.label(i)).collect();
                bad = Some(format!("m{r}({})", labels.join(", ")));
                break 'outer;
            }
        }
    }
    match bad {
        Some(w) => report.fail("weight additivity", w),
        None => report.pass("weight additivity"),
    }
    report
}

/// Transfer of a weight-graded structure along a weight-homogeneous
/// contraction; the output is re-checked for weight additivity.
pub fn graded_transfer(s: &LInfinity, c: &Contraction, cap: usize) -> Result<Transfer> {
    let sp = s.space();
    if !sp.is_weighted() && sp.dim() > 0 {
        return Err(Error::Invalid("every basis element needs a weight".into()));
    }
    if !check_weight_additivity(s).passed() {
        return Err(Error::Precondition("input operations do not add weights".into()));
    }
    let hw = |i: usize| c.h_space.weight(i);
    let lw = |i: usize| sp.weight(i);
    if !homogeneous_map(&c.i, lw, hw) || !homogeneous_map(&c.p, hw, lw) || !homogeneous_map(&c.h, lw, lw) {
        return Err(Error::Invalid("contraction is not weight-homogeneous".into()));
    }
    let t = homotopy_transfer(s, c, cap)?;
    let report = check_weight_additivity(&t.structure);
    if let Some(bad) = report.first_failure() {
        return Err(Error::Internal(format!(
            "transferred operation breaks weights at {}",
            bad.witness.clone().unwrap_or_default()
        )));
    }
    Ok(t)
}

/// Rooted tree with unlabelled leaves; internal vertices have at least two
/// children, kept sorted so that equal trees compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootedTree {
    Leaf,
    Node(Vec<RootedTree>),
}

impl RootedTree {
    pub fn node(mut children: Vec<RootedTree>) -> Self {
        children.sort();
        RootedTree::Node(children)
    }

    pub fn leaves(&self) -> usize {
        match self {
            RootedTree::Leaf => 1,
            RootedTree::Node(cs) => cs.iter().map(|c| c.leaves()).sum(),
        }
    }

    pub fn internal_vertices(&self) -> usize {
        match self {
            RootedTree::Leaf => 0,
            RootedTree::Node(cs) => 1 + cs.iter().map(|c| c.internal_vertices()).sum::<usize>(),
        }
    }

    /// Order of the automorphism group (permutations of identical subtrees).
    pub fn automorphisms(&self) -> u64 {
        match self {
            RootedTree::Leaf => 1,
            RootedTree::Node(cs) => {
                let mut total: u64 = cs.iter().map(|c| c.automorphisms()).product();
                let mut run = 1u64;
                for w in cs.windows(2) {
                    if w[0] == w[1] {
                        run += 1;
                        total *= run;
                    } else {
                        run = 1;
                    }
                }
                total
            }
        }
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootedTree::Leaf => write!(f, "*"),
            RootedTree::Node(cs) => {
                write!(f, "(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Isomorphism classes of rooted trees with `r` leaves, each with its
/// automorphism count, in increasing canonical order.
pub fn enumerate_trees(r: usize) -> Vec<(RootedTree, u64)> {
    let mut by_leaves: Vec<Vec<RootedTree>> = vec![Vec::new(), vec![RootedTree::Leaf]];
    for n in 2..=r.max(1) {
        // All trees with fewer than n leaves, in a fixed order.
        let pool: Vec<&RootedTree> = by_leaves[1..n].iter().flatten().collect();
        let mut found = Vec::new();
        let mut stack = Vec::new();
        collect_children(&pool, 0, n, &mut stack, &mut found);
        found.sort();
        by_leaves.push(found);
    }
    if r == 0 {
        return Vec::new();
    }
    by_leaves[r].iter().map(|t| (t.clone(), t.automorphisms())).collect()
}

fn collect_children(
    pool: &[&RootedTree],
    start: usize,
    remaining: usize,
    stack: &mut Vec<RootedTree>,
    out: &mut Vec<RootedTree>,
) {
    if remaining == 0 {
        if stack.len() >= 2 {
            out.push(RootedTree::node(stack.clone()));
        }
        return;
    }
    for (i, t) in pool.iter().enumerate().skip(start) {
        let l = t.leaves();
        if l <= remaining {
            stack.push((*t).clone());
            collect_children(pool, i, remaining - l, stack, out);
            stack.pop();
        }
    }
}

/// `Σ_T r!/|Aut T|`: the number of rooted trees with `r` labelled leaves.
pub fn labelled_tree_count(r: usize) -> u64 {
    let rf: u64 = (1..=r as u64).product();
    enumerate_trees(r).iter().map(|(_, a)| rf / a).sum()
}

/// Number of terms produced by the set-partition recursion used in the transfer.
pub fn partition_recursion_count(r: usize) -> u64 {
    let mut memo = vec![0u64; r + 1];
    if r >= 1 {
        memo[1] = 1;
    }
    for n in 2..=r {
        memo[n] = set_partitions(n)
            .iter()
            .filter(|b| b.len() >= 2)
            .map(|b| b.iter().map(|blk| memo[blk.len()]).product::<u64>())
            .sum();
    }
    memo[r]
}

/// Largest arity with a possibly nonzero `ℓ_r: (H¹)^{⊗r} -> H²` and the list
/// of surviving `(r, weights)` combinations, from weights alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingPrediction {
    pub max_arity: usize,
    pub survivors: Vec<(usize, Vec<i64>)>,
}

pub fn predict_vanishing(h1_weights: &[i64], h2_weights: &[i64]) -> Result<VanishingPrediction> {
    if let Some(w) = h1_weights.iter().find(|&&w| w <= 0) {
        return Err(Error::Precondition(format!("H^1 weight {w} is not positive")));
    }
    let mut distinct: Vec<i64> = h1_weights.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut targets: Vec<i64> = h2_weights.to_vec();
    targets.sort_unstable();
    targets.dedup();
    let mut survivors = Vec::new();
    let Some(&top) = targets.last() else {
        return Ok(VanishingPrediction { max_arity: 1, survivors });
    };
    if distinct.is_empty() {
        return Ok(VanishingPrediction { max_arity: 1, survivors });
    }
    let max_r = top.max(0) as usize;
    for r in 2..=max_r {
        for tuple in multisets(distinct.len(), r) {
            let ws: Vec<i64> = tuple.iter().map(|&i| distinct[i]).collect();
            if targets.contains(&ws.iter().sum()) {
                survivors.push((r, ws));
            }
        }
    }
    let max_arity = survivors.iter().map(|(r, _)| *r).max().unwrap_or(1).max(1);
    Ok(VanishingPrediction { max_arity, survivors })
}

/// `Σ_{r<=cap} m_r(x, …, x)/r!`.
pub fn curvature_of(s: &LInfinity, x: &[Q]) -> Vector {
    let mut out = s.space.zero_vector();
    for r in 1..=s.cap() {
        let v = s.eval_power(r, x);
        add_scaled(&mut out, &(Q::one() / factorial(r)), &v);
    }
    out
}
