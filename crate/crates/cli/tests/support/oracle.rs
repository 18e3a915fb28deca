//! Independent checks of the defining conditions, and finite searches over
//! candidate filtrations.

use mcdef_core::exact_linalg::quotient_data;
use mcdef_core::{Filtration, Matrix, NilpotentEndo, Subspace, Q};

/// `N(M_i) ⊆ M_{i-2}` and `N^l: Gr_{w+l} -> Gr_{w-l}` bijective for `l >= 1`.
pub fn monodromy_conditions(m: &Filtration, n: &Matrix, w: i64) -> Result<(), String> {
    let Some((lo, hi)) = m.range() else { return Ok(()) };
    shift_condition(m, n)?;
    let reach = (hi - w).max(w - lo).max(0) + 1;
    let mut power = Matrix::identity(n.rows());
    for l in 1..=reach {
        power = power.mul(n).expect("square");
        let gr = |k: i64| m.get(k).dim() - m.get(k - 1).dim();
        if gr(w + l) != gr(w - l) {
            return Err(format!("dim Gr_{} = {} but dim Gr_{} = {}", w + l, gr(w + l), w - l, gr(w - l)));
        }
        let image = m.get(w + l).image_under(&power).expect("square");
        let covered = image.sum(&m.get(w - l - 1)).expect("same ambient");
        if !m.get(w - l).is_subspace_of(&covered) {
            return Err(format!("N^{l}: Gr_{} -> Gr_{} is not onto", w + l, w - l));
        }
    }
    Ok(())
}

fn shift_condition(m: &Filtration, n: &Matrix) -> Result<(), String> {
    let Some((lo, hi)) = m.range() else { return Ok(()) };
    for i in lo..=hi + 2 {
        if !m.get(i).image_under(n).expect("square").is_subspace_of(&m.get(i - 2)) {
            return Err(format!("N(M_{i}) is not in M_{}", i - 2));
        }
    }
    Ok(())
}

/// `N(M_i) ⊆ M_{i-2}` and, on each `Gr^W_k`, the induced filtration is the
/// monodromy filtration of the induced map centered at `k`.
pub fn relative_conditions(m: &Filtration, w: &Filtration, n: &NilpotentEndo) -> Result<(), String> {
    shift_condition(m, n.matrix())?;
    let Some((lo, hi)) = w.range() else { return Ok(()) };
    for k in lo..=hi {
        let total = w.get(k);
        let sub = w.get(k - 1);
        if total.dim() == sub.dim() {
            continue;
        }
        let qd = quotient_data(&total, &sub).map_err(|e| e.to_string())?;
        let induced = m.induced_on_quotient(&qd, &total).map_err(|e| e.to_string())?;
        monodromy_conditions(&induced, n.induced(&qd).matrix(), k).map_err(|e| format!("on Gr^W_{k}: {e}"))?;
    }
    Ok(())
}

/// Closure of `seeds ∪ {0, V}` under sums and intersections.
pub fn lattice(dim: usize, seeds: Vec<Subspace>) -> Vec<Subspace> {
    let mut out: Vec<Subspace> = vec![Subspace::zero(dim), Subspace::full(dim)];
    for s in seeds {
        if !out.contains(&s) {
            out.push(s);
        }
    }
    loop {
        let mut fresh = Vec::new();
        for a in &out {
            for b in &out {
                for c in [a.sum(b).expect("ambient"), a.intersect(b).expect("ambient")] {
                    if !out.contains(&c) && !fresh.contains(&c) {
                        fresh.push(c);
                    }
                }
            }
        }
        if fresh.is_empty() {
            return out;
        }
        out.extend(fresh);
    }
}

/// Kernels and images of all powers of `N`.
pub fn kernel_image_seeds(n: &Matrix) -> Vec<Subspace> {
    let mut seeds = Vec::new();
    let mut power = Matrix::identity(n.rows());
    for _ in 0..=n.rows() {
        power = power.mul(n).expect("square");
        seeds.push(power.kernel());
        seeds.push(power.image());
    }
    seeds
}

/// Lines of `Q^dim` with integer directions in `[-r, r]`.
pub fn grid_lines(dim: usize, r: i64) -> Vec<Subspace> {
    let mut out: Vec<Subspace> = Vec::new();
    let mut v = vec![-r; dim];
    loop {
        if v.iter().any(|&x| x != 0) {
            let line = Subspace::span(dim, &[v.iter().map(|&x| Q::from_integer(x.into())).collect()]).expect("ambient");
            if !out.contains(&line) {
                out.push(line);
            }
        }
        let mut k = 0;
        loop {
            if k == dim {
                return out;
            }
            v[k] += 1;
            if v[k] <= r {
                break;
            }
            v[k] = -r;
            k += 1;
        }
    }
}

/// Every filtration `0 = M_{lo-1} ⊆ M_lo ⊆ … ⊆ M_hi = V` with steps among
/// `candidates` and `N(M_i) ⊆ M_{i-2}` that `accept` admits.
pub fn search(
    candidates: &[Subspace],
    n: &Matrix,
    lo: i64,
    hi: i64,
    accept: &dyn Fn(&Filtration) -> bool,
) -> Vec<Filtration> {
    let dim = n.rows();
    let images: Vec<Subspace> = candidates.iter().map(|c| c.image_under(n).expect("square")).collect();
    let mut out = Vec::new();
    let mut chain: Vec<usize> = Vec::new();
    fn rec(
        candidates: &[Subspace],
        images: &[Subspace],
        dim: usize,
        lo: i64,
        hi: i64,
        chain: &mut Vec<usize>,
        accept: &dyn Fn(&Filtration) -> bool,
        out: &mut Vec<Filtration>,
    ) {
        let i = lo + chain.len() as i64;
        if i > hi {
            let steps: Vec<(i64, Subspace)> =
                chain.iter().enumerate().map(|(k, &c)| (lo + k as i64, candidates[c].clone())).collect();
            if let Ok(f) = Filtration::new(dim, steps) {
                if accept(&f) && !out.contains(&f) {
                    out.push(f);
                }
            }
            return;
        }
        let zero = Subspace::zero(dim);
        for (c, s) in candidates.iter().enumerate() {
            if i == hi && !s.is_full() {
                continue;
            }
            if let Some(&prev) = chain.last() {
                if !candidates[prev].is_subspace_of(s) {
                    continue;
                }
            }
            let two_below = if chain.len() >= 2 { &candidates[chain[chain.len() - 2]] } else { &zero };
            if !images[c].is_subspace_of(two_below) {
                continue;
            }
            chain.push(c);
            rec(candidates, images, dim, lo, hi, chain, accept, out);
            chain.pop();
        }
    }
    rec(candidates, &images, dim, lo, hi, &mut chain, accept, &mut out);
    out
}
