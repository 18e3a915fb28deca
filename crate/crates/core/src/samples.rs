//! Seeded random instances: nilpotent endomorphisms with stable filtrations,
//! and small DG Lie algebras built as `𝔤 ⊗ A` or as two-term algebras, in
//! scrambled bases.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::exact_linalg::Subspace as Sub;
use crate::filtrations::{FilteredNilpotentSpace, Filtration, NilpotentEndo};
use crate::graded_lie::{change_basis, Augmentation, BasisElement, DgLie, GradedSpace, Vector};
use crate::scalar::{q, Q};
use crate::Matrix;

fn small<R: Rng>(rng: &mut R, bound: i64) -> Q {
    q(rng.gen_range(-bound..=bound))
}

/// Product of random elementary matrices: integer entries, determinant ±1.
pub fn unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> Matrix {
    let mut m = Matrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = small(rng, 2);
        for col in 0..n {
            let v = m.get(i, col).clone() + c.clone() * m.get(j, col).clone();
            m.set(i, col, v);
        }
    }
    m
}

/// Strictly upper triangular matrix with small integer entries; `density`
/// is the probability that an entry is nonzero.
pub fn strictly_upper<R: Rng>(rng: &mut R, n: usize, density: f64) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                let mut v = small(rng, 2);
                if v == q(0) {
                    v = q(1);
                }
                m.set(i, j, v);
            }
        }
    }
    m
}

/// Random nilpotent endomorphism `P U P⁻¹` together with the conjugating `P`.
pub fn random_nilpotent<R: Rng>(rng: &mut R, n: usize) -> (NilpotentEndo<Q>, Matrix) {
    let density = [0.2, 0.5, 0.8].choose(rng).copied().unwrap_or(0.5);
    let u = strictly_upper(rng, n, density);
    let p = unimodular(rng, n, 2 * n);
    let inv = p.inverse().expect("unimodular");
    let m = p.mul(&u).and_then(|pu| pu.mul(&inv)).expect("square");
    (NilpotentEndo::new(m).expect("conjugate of a nilpotent"), p)
}

/// Random filtered nilpotent space: `N` strictly upper triangular and `W` a
/// filtration by initial coordinate segments, both conjugated by one `P`.
pub fn random_filtered_nilpotent<R: Rng>(rng: &mut R, n: usize) -> FilteredNilpotentSpace<Q> {
    let density = [0.2, 0.5, 0.8].choose(rng).copied().unwrap_or(0.5);
    let u = strictly_upper(rng, n, density);
    let p = unimodular(rng, n, 2 * n);
    let inv = p.inverse().expect("unimodular");
    let m = p.mul(&u).and_then(|pu| pu.mul(&inv)).expect("square");
    let mut cuts: Vec<usize> = (1..n).filter(|_| rng.gen_bool(0.4)).collect();
    cuts.push(n);
    let mut index: i64 = rng.gen_range(-2..=1);
    let mut steps = Vec::new();
    for c in cuts {
        let s = Sub::coordinate(n, 0..c).image_under(&p).expect("square");
        steps.push((index, s));
        index += rng.gen_range(1..=2);
    }
    let w = Filtration::new(n, steps).expect("nested flags");
    FilteredNilpotentSpace::new(w, NilpotentEndo::new(m).expect("nilpotent")).expect("N preserves the flag")
}

/// Small Lie algebras in degree 0: `(labels, [x_i, x_j] for i < j)`.
fn lie_algebras() -> Vec<(Vec<&'static str>, Vec<((usize, usize), Vec<i64>)>)> {
    vec![
        (vec!["t"], vec![]),
        (vec!["e", "f"], vec![((0, 1), vec![0, 1])]),
        (vec!["x", "y", "z"], vec![((0, 1), vec![0, 0, 1])]),
        (
            vec!["h", "e", "f"],
            vec![((0, 1), vec![0, 2, 0]), ((0, 2), vec![0, 0, -2]), ((1, 2), vec![1, 0, 0])],
        ),
    ]
}

/// Graded commutative algebra given on a basis with products and differential.
#[derive(Clone, Debug)]
pub struct Cdga {
    pub labels: Vec<String>,
    pub degrees: Vec<i64>,
    /// `(i, j) -> e_i e_j`, both orders listed.
    pub product: BTreeMap<(usize, usize), Vec<Q>>,
    pub d: Vec<Vec<Q>>,
}

impl Cdga {
    fn build(labels: &[&str], degrees: &[i64], products: &[(usize, usize, usize, i64)], d: &[(usize, usize, i64)]) -> Self {
        let n = labels.len();
        let mut product = BTreeMap::new();
        for &(i, j, k, c) in products {
            let mut v = vec![q(0); n];
            v[k] = q(c);
            let sign = if (degrees[i] * degrees[j]).rem_euclid(2) == 1 { -1 } else { 1 };
            let mut w = vec![q(0); n];
            w[k] = q(c * sign);
            product.insert((i, j), v);
            product.insert((j, i), w);
        }
        let mut dm = vec![vec![q(0); n]; n];
        for &(src, dst, c) in d {
            dm[src][dst] = q(c);
        }
        Cdga { labels: labels.iter().map(|s| s.to_string()).collect(), degrees: degrees.to_vec(), product, d: dm }
    }

    /// Nonunital examples (augmentation ideals); `c` scales one differential.
    pub fn catalogue(c: i64) -> Vec<Cdga> {
        vec![
            // x, y with dx = y
            Cdga::build(&["x", "y"], &[1, 2], &[], &[(0, 1, 1)]),
            // a, b, ab with db = ab
            Cdga::build(&["a", "b", "ab"], &[1, 1, 2], &[(0, 1, 2, 1)], &[(1, 2, 1)]),
            // e, x with de = x
            Cdga::build(&["e", "x"], &[0, 1], &[], &[(0, 1, 1)]),
            // x, y, xy with dy = c xy
            Cdga::build(&["x", "y", "xy"], &[1, 1, 2], &[(0, 1, 2, 1)], &[(1, 2, c)]),
            // cohomology of a torus without the unit, d = 0
            Cdga::build(&["a", "b", "ab"], &[1, 1, 2], &[(0, 1, 2, 1)], &[]),
            // a degree 1 class squaring to zero and a degree 2 class
            Cdga::build(&["u", "v"], &[1, 2], &[], &[]),
        ]
    }
}

/// `𝔤 ⊗ A` with `[x⊗a, y⊗b] = [x,y]⊗ab` and `d(x⊗a) = x⊗da`.
pub fn tensor_dgla(lie: usize, a: &Cdga) -> DgLie {
    let (glabels, gbr) = &lie_algebras()[lie % lie_algebras().len()];
    let gdim = glabels.len();
    let adim = a.labels.len();
    let n = gdim * adim;
    let idx = |g: usize, k: usize| g * adim + k;
    let basis: Vec<BasisElement> = (0..gdim)
        .flat_map(|g| {
            (0..adim).map(move |k| (g, k))
        })
        .map(|(g, k)| BasisElement { label: format!("{}{}", glabels[g], a.labels[k]), degree: a.degrees[k], weight: None })
        .collect();
    let space = GradedSpace::new(basis).expect("distinct labels");
    let mut gfull: BTreeMap<(usize, usize), Vec<Q>> = BTreeMap::new();
    for ((i, j), v) in gbr {
        gfull.insert((*i, *j), v.iter().map(|&c| q(c)).collect());
        gfull.insert((*j, *i), v.iter().map(|&c| q(-c)).collect());
    }
    let mut d = Matrix::zeros(n, n);
    for g in 0..gdim {
        for k in 0..adim {
            for (t, c) in a.d[k].iter().enumerate() {
                if *c != q(0) {
                    d.set(idx(g, t), idx(g, k), c.clone());
                }
            }
        }
    }
    let mut bracket = BTreeMap::new();
    for ((gi, gj), gv) in &gfull {
        for ((ai, aj), av) in &a.product {
            let mut v = vec![q(0); n];
            for (g, gc) in gv.iter().enumerate() {
                for (t, ac) in av.iter().enumerate() {
                    if *gc != q(0) && *ac != q(0) {
                        v[idx(g, t)] = v[idx(g, t)].clone() + gc.clone() * ac.clone();
                    }
                }
            }
            bracket.insert((idx(*gi, *ai), idx(*gj, *aj)), v);
        }
    }
    DgLie::new(space, d, bracket).expect("tensor product degrees")
}

/// `𝔰𝔩₂ ⊗ ⟨1, s, y⟩` with `ds = y`, augmented onto `𝔰𝔩₂` by evaluating at `1`.
pub fn sl2_augmented() -> (DgLie, Augmentation) {
    let labels = ["h", "e", "f"];
    let consts: [((usize, usize), [i64; 3]); 3] = [((0, 1), [0, 2, 0]), ((0, 2), [0, 0, -2]), ((1, 2), [1, 0, 0])];
    // A = ⟨1, s, y⟩ with |s| = 0, |y| = 1, ds = y, s² = sy = 0.
    let a_labels = ["1", "s", "y"];
    let a_deg = [0, 0, 1];
    let mut basis = Vec::new();
    for g in labels {
        for (k, al) in a_labels.iter().enumerate() {
            basis.push((format!("{g}{al}"), a_deg[k]));
        }
    }
    let space = GradedSpace::from_labels(basis).unwrap();
    let idx = |g: usize, k: usize| g * 3 + k;
    let n = 9;
    let mut d = Matrix::zeros(n, n);
    for g in 0..3 {
        d.set(idx(g, 2), idx(g, 1), q(1));
    }
    // products: 1*a = a, a*1 = a, others zero
    let prod = |i: usize, j: usize| -> Option<usize> {
        match (i, j) {
            (0, k) | (k, 0) => Some(k),
            _ => None,
        }
    };
    let mut br = BTreeMap::new();
    for gi in 0..3 {
        for gj in 0..3 {
            let (key, sign) = if gi < gj { ((gi, gj), 1) } else { ((gj, gi), -1) };
            let Some((_, c)) = consts.iter().find(|(k, _)| *k == key) else { continue };
            for ai in 0..3 {
                for aj in 0..3 {
                    if let Some(t) = prod(ai, aj) {
                        let mut v = vec![q(0); n];
                        for (gk, cv) in c.iter().enumerate() {
                            v[idx(gk, t)] = q(cv * sign);
                        }
                        br.insert((idx(gi, ai), idx(gj, aj)), v);
                    }
                }
            }
        }
    }
    let l = DgLie::new(space, d, br).unwrap();
    let gspace = GradedSpace::from_labels([("H", 0), ("E", 0), ("F", 0)]).unwrap();
    let mut gbr = BTreeMap::new();
    gbr.insert((0, 1), vec![q(0), q(2), q(0)]);
    gbr.insert((0, 2), vec![q(0), q(0), q(-2)]);
    gbr.insert((1, 2), vec![q(1), q(0), q(0)]);
    let g = DgLie::with_antisymmetric_completion(gspace, Matrix::zeros(3, 3), gbr).unwrap();
    // ε(g⊗1) = g, ε(g⊗s) = 0
    let mut eps = Matrix::zeros(3, n);
    for gi in 0..3 {
        eps.set(gi, idx(gi, 0), q(1));
    }
    let aug = Augmentation::new(&l, g, eps).unwrap();
    (l, aug)
}

/// Random DGLA in degrees 1 and 2: random `d: L¹ -> L²` and a random
/// symmetric bracket `L¹ × L¹ -> L²`.
pub fn two_term_dgla<R: Rng>(rng: &mut R, n1: usize, n2: usize) -> DgLie {
    let mut items: Vec<(String, i64)> = (0..n1).map(|i| (format!("a{i}"), 1)).collect();
    items.extend((0..n2).map(|i| (format!("u{i}"), 2)));
    let space = GradedSpace::from_labels(items).expect("distinct labels");
    let n = n1 + n2;
    let mut d = Matrix::zeros(n, n);
    for i in 0..n1 {
        for j in 0..n2 {
            if rng.gen_bool(0.4) {
                d.set(n1 + j, i, small(rng, 2));
            }
        }
    }
    let mut bracket = BTreeMap::new();
    for i in 0..n1 {
        for j in i..n1 {
            let mut v: Vector = vec![q(0); n];
            for k in 0..n2 {
                if rng.gen_bool(0.5) {
                    v[n1 + k] = small(rng, 2);
                }
            }
            bracket.insert((i, j), v.clone());
            bracket.insert((j, i), v);
        }
    }
    DgLie::new(space, d, bracket).expect("degrees")
}

/// Random invertible change of basis preserving degrees.
pub fn scramble<R: Rng>(rng: &mut R, l: &DgLie) -> DgLie {
    let s = l.space();
    let n = s.dim();
    let mut p = Matrix::identity(n);
    for deg in s.degrees() {
        let idx = s.indices_in_degree(deg);
        let block = unimodular(rng, idx.len(), 2 * idx.len());
        for (a, &r) in idx.iter().enumerate() {
            for (b, &c) in idx.iter().enumerate() {
                p.set(r, c, block.get(a, b).clone());
            }
        }
    }
    change_basis(l, &p).expect("invertible degree preserving change")
}

/// A random DG Lie algebra of dimension at most `max_dim` (at least 2).
pub fn random_dgla<R: Rng>(rng: &mut R, max_dim: usize) -> DgLie {
    loop {
        let l = if rng.gen_bool(0.3) {
            let n1 = rng.gen_range(1..=max_dim.saturating_sub(1).clamp(1, 3));
            let n2 = rng.gen_range(1..=(max_dim - n1).clamp(1, 3));
            two_term_dgla(rng, n1, n2)
        } else {
            let c = rng.gen_range(-2..=2);
            let catalogue = Cdga::catalogue(c);
            let a = catalogue.choose(rng).expect("nonempty");
            let lie = rng.gen_range(0..lie_algebras().len());
            tensor_dgla(lie, a)
        };
        if l.dim() <= max_dim {
            return scramble(rng, &l);
        }
    }
}

/// Random DGLA with zero differential.
pub fn random_formal_dgla<R: Rng>(rng: &mut R, max_dim: usize) -> DgLie {
    loop {
        let l = random_dgla(rng, max_dim);
        if l.has_zero_differential() {
            return l;
        }
        let c = Cdga::catalogue(0);
        let a = &c[[3, 4, 5].choose(rng).copied().unwrap_or(4)];
        let l = tensor_dgla(rng.gen_range(0..lie_algebras().len()), a);
        if l.dim() <= max_dim {
            return scramble(rng, &l);
        }
    }
}
