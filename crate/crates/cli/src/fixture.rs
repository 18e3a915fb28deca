//! Line-oriented fixture files.
//!
//! ```text
//! kind dgla
//! basis a 1 1        # label, degree, optional weight
//! basis u 2 2
//! d a = 0
//! bracket a a = u
//! ```
//!
//! Other kinds add `cap`, `op`, `dim`, `row`, `order`, `step`,
//! `target-basis`, `target-bracket`, `eps`, `h1` and `h2` lines.
//! Coefficients are integers or `p/q`.

use std::collections::BTreeMap;
use std::fmt;

use mcdef_core::graded_lie::{format_combination, Augmentation, BasisElement, DgLie, GradedSpace, Vector};
use mcdef_core::linfinity::LInfinity;
use mcdef_core::scalar::parse_rational;
use mcdef_core::{Filtration, Matrix, NilpotentEndo, Subspace, Q};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixtureError {
    Syntax { line: usize, column: usize, message: String },
    Semantic { line: usize, invariant: String, message: String },
}

impl fmt::Display for FixtureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureError::Syntax { line, column, message } => write!(f, "{line}:{column}: {message}"),
            FixtureError::Semantic { line, invariant, message } => {
                write!(f, "{line}: invariant violated: {invariant}: {message}")
            }
        }
    }
}

impl std::error::Error for FixtureError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Dgla,
    Linf,
    Filtration,
    Nilpotent,
    Augmentation,
    WeightProfile,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Dgla => "dgla",
            Kind::Linf => "linf",
            Kind::Filtration => "filtration",
            Kind::Nilpotent => "nilpotent",
            Kind::Augmentation => "augmentation",
            Kind::WeightProfile => "weight-profile",
        }
    }

    fn parse(s: &str) -> Option<Kind> {
        [Kind::Dgla, Kind::Linf, Kind::Filtration, Kind::Nilpotent, Kind::Augmentation, Kind::WeightProfile]
            .into_iter()
            .find(|k| k.name() == s)
    }
}

/// One parsed fixture.
#[derive(Clone, Debug, PartialEq)]
pub enum Fixture {
    Dgla(DgLie),
    Linf(LInfinity),
    /// A filtration, optionally with a nilpotent endomorphism preserving it.
    Filtration { w: Filtration, n: Option<NilpotentEndo> },
    Nilpotent(NilpotentEndo),
    Augmentation { l: DgLie, aug: Augmentation },
    WeightProfile { h1: Vec<i64>, h2: Vec<i64> },
}

impl Fixture {
    pub fn kind(&self) -> Kind {
        match self {
            Fixture::Dgla(_) => Kind::Dgla,
            Fixture::Linf(_) => Kind::Linf,
            Fixture::Filtration { .. } => Kind::Filtration,
            Fixture::Nilpotent(_) => Kind::Nilpotent,
            Fixture::Augmentation { .. } => Kind::Augmentation,
            Fixture::WeightProfile { .. } => Kind::WeightProfile,
        }
    }
}

#[derive(Clone, Debug)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

#[derive(Clone, Debug)]
struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    end: usize,
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start: Option<usize> = None;
        let chars: Vec<(usize, char)> = body.char_indices().collect();
        for (ci, &(bi, ch)) in chars.iter().enumerate() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push(Token { text: &body[chars[s].0..bi], column: s + 1 });
                }
            } else if start.is_none() {
                start = Some(ci);
            }
        }
        if let Some(s) = start {
            tokens.push(Token { text: &body[chars[s].0..], column: s + 1 });
        }
        if !tokens.is_empty() {
            out.push(Line { number: n + 1, tokens, end: chars.len() + 1 });
        }
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FixtureError {
    FixtureError::Syntax { line, column, message: message.into() }
}

fn semantic(line: usize, invariant: &str, message: impl Into<String>) -> FixtureError {
    FixtureError::Semantic { line, invariant: invariant.into(), message: message.into() }
}

type Res<T> = std::result::Result<T, FixtureError>;

impl<'a> Line<'a> {
    fn keyword(&self) -> &'a str {
        self.tokens[0].text
    }

    fn arg(&self, i: usize, what: &str) -> Res<&Token<'a>> {
        self.tokens.get(i).ok_or_else(|| syntax(self.number, self.end, format!("expected {what}")))
    }

    fn int(&self, i: usize, what: &str) -> Res<i64> {
        let t = self.arg(i, what)?;
        t.text.parse().map_err(|_| syntax(self.number, t.column, format!("expected {what}, found `{}`", t.text)))
    }

    fn ints_from(&self, i: usize) -> Res<Vec<i64>> {
        (i..self.tokens.len()).map(|k| self.int(k, "an integer")).collect()
    }

    fn no_more(&self, i: usize) -> Res<()> {
        match self.tokens.get(i) {
            Some(t) => Err(syntax(self.number, t.column, format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }

    /// Position of the `=` token.
    fn equals(&self, from: usize) -> Res<usize> {
        (from..self.tokens.len())
            .find(|&k| self.tokens[k].text == "=")
            .ok_or_else(|| syntax(self.number, self.end, "expected `=`"))
    }

    fn rational(&self, t: &Token<'_>) -> Res<Q> {
        parse_rational(t.text)
            .ok_or_else(|| syntax(self.number, t.column, format!("expected a rational, found `{}`", t.text)))
    }

    /// Parses `c1*x1 + c2*x2 - x3` (or `0`) from token `from` to the end.
    fn combination(&self, from: usize, labels: &Labels) -> Res<Vector> {
        let mut v = vec![Q::zero(); labels.len()];
        let toks = &self.tokens[from..];
        if toks.is_empty() {
            return Err(syntax(self.number, self.end, "expected a linear combination"));
        }
        if toks.len() == 1 && toks[0].text == "0" {
            return Ok(v);
        }
        let mut pending: Option<bool> = None;
        let mut need_sign = false;
        for t in toks {
            if t.text == "+" || t.text == "-" {
                if pending.is_some() {
                    return Err(syntax(self.number, t.column, "two signs in a row"));
                }
                pending = Some(t.text == "-");
                need_sign = false;
                continue;
            }
            if need_sign {
                return Err(syntax(self.number, t.column, "expected `+` or `-` between terms"));
            }
            let negative = pending.take().unwrap_or(false);
            let (negative, text, col) = match t.text.strip_prefix('-') {
                Some(rest) => (!negative, rest, t.column + 1),
                None => (negative, t.text, t.column),
            };
            let (coef, label, label_col) = match text.rsplit_once('*') {
                Some((c, l)) => {
                    let c = parse_rational(c).ok_or_else(|| syntax(self.number, col, format!("bad coefficient `{c}`")))?;
                    (c, l, col + text.len() - l.len())
                }
                None => (Q::one(), text, col),
            };
            let i = labels
                .get(label)
                .ok_or_else(|| syntax(self.number, label_col, format!("unknown basis label `{label}`")))?;
            v[i] += if negative { -coef } else { coef };
            need_sign = true;
        }
        if pending.is_some() {
            return Err(syntax(self.number, self.end, "dangling sign"));
        }
        Ok(v)
    }
}

#[derive(Default)]
struct Labels {
    index: BTreeMap<String, usize>,
}

impl Labels {
    fn of(space: &GradedSpace) -> Self {
        Labels { index: space.basis().iter().enumerate().map(|(i, b)| (b.label.clone(), i)).collect() }
    }

    fn get(&self, l: &str) -> Option<usize> {
        self.index.get(l).copied()
    }

    fn len(&self) -> usize {
        self.index.len()
    }

    fn lookup(&self, line: &Line<'_>, i: usize) -> Res<usize> {
        let t = line.arg(i, "a basis label")?;
        self.get(t.text)
            .ok_or_else(|| syntax(line.number, t.column, format!("unknown basis label `{}`", t.text)))
    }
}

fn valid_label(s: &str) -> bool {
    let first_ok = s.chars().next().is_some_and(|c| !c.is_ascii_digit() && c != '-' && c != '+');
    first_ok && s.chars().all(|c| !c.is_whitespace() && !"=*+,#".contains(c))
}

/// Basis declarations shared by dgla, linf and augmentation documents.
fn basis_line(line: &Line<'_>, degree_given: bool, out: &mut Vec<(BasisElement, usize)>) -> Res<()> {
    let label = line.arg(1, "a basis label")?;
    if !valid_label(label.text) {
        return Err(syntax(line.number, label.column, format!("invalid label `{}`", label.text)));
    }
    let (degree, next) = if degree_given { (line.int(2, "a degree")?, 3) } else { (0, 2) };
    let weight = match line.tokens.get(next) {
        Some(_) => Some(line.int(next, "a weight")?),
        None => None,
    };
    line.no_more(next + 1)?;
    if out.iter().any(|(b, _)| b.label == label.text) {
        return Err(semantic(line.number, "distinct basis labels", format!("`{}` declared twice", label.text)));
    }
    out.push((BasisElement { label: label.text.to_string(), degree, weight }, line.number));
    Ok(())
}

fn space_of(basis: &[(BasisElement, usize)]) -> Res<GradedSpace> {
    let weighted = basis.iter().filter(|(b, _)| b.weight.is_some()).count();
    if weighted != 0 && weighted != basis.len() {
        let line = basis.iter().find(|(b, _)| b.weight.is_none()).map(|(_, l)| *l).unwrap_or(0);
        return Err(semantic(line, "weights on all basis elements or none", "missing weight"));
    }
    GradedSpace::new(basis.iter().map(|(b, _)| b.clone()).collect())
        .map_err(|e| semantic(0, "distinct basis labels", e.to_string()))
}

/// `d` and `bracket` lines over a declared space.
struct DglaLines<'a> {
    d: Vec<&'a Line<'a>>,
    bracket: Vec<&'a Line<'a>>,
}

fn build_dgla(space: GradedSpace, lines: &DglaLines<'_>) -> Res<DgLie> {
    let labels = Labels::of(&space);
    let n = space.dim();
    let mut dm = Matrix::zeros(n, n);
    let mut seen_d = vec![false; n];
    for line in &lines.d {
        let j = labels.lookup(line, 1)?;
        let eq = line.equals(2)?;
        if eq != 2 {
            return Err(syntax(line.number, line.tokens[2].column, "expected `=`"));
        }
        if std::mem::replace(&mut seen_d[j], true) {
            return Err(semantic(line.number, "one d line per basis element", format!("d {} given twice", space.label(j))));
        }
        let v = line.combination(eq + 1, &labels)?;
        if let Some(i) = (0..n).find(|&i| !v[i].is_zero() && space.degree(i) != space.degree(j) + 1) {
            return Err(semantic(
                line.number,
                "d has degree +1",
                format!("d {} has a component on {}", space.label(j), space.label(i)),
            ));
        }
        for (i, c) in v.into_iter().enumerate() {
            dm.set(i, j, c);
        }
    }
    let mut br = BTreeMap::new();
    for line in &lines.bracket {
        let i = labels.lookup(line, 1)?;
        let j = labels.lookup(line, 2)?;
        let eq = line.equals(3)?;
        if eq != 3 {
            return Err(syntax(line.number, line.tokens[3].column, "expected `=`"));
        }
        let v = line.combination(eq + 1, &labels)?;
        let target = space.degree(i) + space.degree(j);
        if let Some(k) = (0..n).find(|&k| !v[k].is_zero() && space.degree(k) != target) {
            return Err(semantic(
                line.number,
                "bracket has degree 0",
                format!("[{}, {}] has a component on {}", space.label(i), space.label(j), space.label(k)),
            ));
        }
        if br.insert((i, j), v).is_some() {
            return Err(semantic(
                line.number,
                "one bracket line per ordered pair",
                format!("[{}, {}] given twice", space.label(i), space.label(j)),
            ));
        }
    }
    DgLie::with_antisymmetric_completion(space, dm, br).map_err(|e| semantic(0, "DGLA shape", e.to_string()))
}

fn vector_rows(line: &Line<'_>, from: usize, dim: usize) -> Res<Vec<Vec<Q>>> {
    let mut rows = vec![Vec::new()];
    for t in &line.tokens[from..] {
        if t.text == ";" {
            rows.push(Vec::new());
            continue;
        }
        let (text, split) = match t.text.strip_suffix(';') {
            Some(rest) => (rest, true),
            None => (t.text, false),
        };
        let tok = Token { text, column: t.column };
        rows.last_mut().expect("nonempty").push(line.rational(&tok)?);
        if split {
            rows.push(Vec::new());
        }
    }
    if rows.len() == 1 && rows[0].is_empty() {
        return Ok(Vec::new());
    }
    for r in &rows {
        if r.len() != dim {
            return Err(syntax(line.number, line.tokens[from.min(line.tokens.len() - 1)].column, format!(
                "each vector needs {dim} entries, found {}",
                r.len()
            )));
        }
    }
    Ok(rows)
}

fn nilpotent_from_rows(rows: &[(&Line<'_>, Vec<Q>)], dim: usize, at: usize) -> Res<NilpotentEndo> {
    if rows.len() != dim {
        return Err(semantic(at, "square matrix", format!("expected {dim} rows, found {}", rows.len())));
    }
    let m = Matrix::from_rows(rows.iter().map(|(_, r)| r.clone()).collect(), dim)
        .map_err(|e| semantic(at, "square matrix", e.to_string()))?;
    NilpotentEndo::new(m).map_err(|e| semantic(rows.first().map(|(l, _)| l.number).unwrap_or(at), "N is nilpotent", e.to_string()))
}

pub fn parse_fixture(text: &str) -> Res<Fixture> {
    let lines = tokenize(text);
    let Some(first) = lines.first() else {
        return Err(syntax(1, 1, "missing `kind` line"));
    };
    if first.keyword() != "kind" {
        return Err(syntax(first.number, first.tokens[0].column, "the first line must be `kind ...`"));
    }
    let kt = first.arg(1, "a fixture kind")?;
    let kind = Kind::parse(kt.text)
        .ok_or_else(|| syntax(first.number, kt.column, format!("unknown kind `{}`", kt.text)))?;
    first.no_more(2)?;
    let body = &lines[1..];
    let allowed: &[&str] = match kind {
        Kind::Dgla => &["basis", "d", "bracket"],
        Kind::Linf => &["basis", "cap", "op"],
        Kind::Filtration => &["dim", "order", "step", "row"],
        Kind::Nilpotent => &["dim", "row"],
        Kind::Augmentation => &["basis", "d", "bracket", "target-basis", "target-bracket", "eps"],
        Kind::WeightProfile => &["h1", "h2"],
    };
    for l in body {
        if !allowed.contains(&l.keyword()) {
            return Err(syntax(
                l.number,
                l.tokens[0].column,
                format!("`{}` is not allowed in a {} fixture", l.keyword(), kind.name()),
            ));
        }
    }
    let with = |k: &'static str| body.iter().filter(move |l| l.keyword() == k);
    match kind {
        Kind::Dgla | Kind::Augmentation => {
            let mut basis = Vec::new();
            for l in with("basis") {
                basis_line(l, true, &mut basis)?;
            }
            let l = build_dgla(space_of(&basis)?, &DglaLines { d: with("d").collect(), bracket: with("bracket").collect() })?;
            if kind == Kind::Dgla {
                return Ok(Fixture::Dgla(l));
            }
            let mut tbasis = Vec::new();
            for line in with("target-basis") {
                basis_line(line, false, &mut tbasis)?;
            }
            let tspace = space_of(&tbasis)?;
            let mut tlines = Vec::new();
            let renamed: Vec<Line<'_>> = with("target-bracket")
                .map(|line| {
                    let mut c = line.clone();
                    c.tokens[0].text = "bracket";
                    c
                })
                .collect();
            tlines.extend(renamed.iter());
            let target = build_dgla(tspace, &DglaLines { d: Vec::new(), bracket: tlines })?;
            let tl = Labels::of(target.space());
            let ll = Labels::of(l.space());
            let mut eps = Matrix::zeros(target.dim(), l.dim());
            for line in with("eps") {
                let j = ll.lookup(line, 1)?;
                let eq = line.equals(2)?;
                if eq != 2 {
                    return Err(syntax(line.number, line.tokens[2].column, "expected `=`"));
                }
                if l.space().degree(j) != 0 {
                    return Err(semantic(line.number, "eps vanishes outside degree 0", format!("eps {} given", l.space().label(j))));
                }
                let v = line.combination(eq + 1, &tl)?;
                for (i, c) in v.into_iter().enumerate() {
                    eps.set(i, j, c);
                }
            }
            let aug = Augmentation::new(&l, target, eps).map_err(|e| semantic(0, "augmentation shape", e.to_string()))?;
            Ok(Fixture::Augmentation { l, aug })
        }
        Kind::Linf => {
            let mut basis = Vec::new();
            for l in with("basis") {
                basis_line(l, true, &mut basis)?;
            }
            let space = space_of(&basis)?;
            let labels = Labels::of(&space);
            let caps: Vec<&Line<'_>> = with("cap").collect();
            let cap = match caps.as_slice() {
                [] => 6,
                [c] => {
                    c.no_more(2)?;
                    let v = c.int(1, "an arity cap")?;
                    if v < 1 {
                        return Err(semantic(c.number, "cap >= 1", format!("cap {v}")));
                    }
                    v as usize
                }
                [_, c, ..] => return Err(syntax(c.number, c.tokens[0].column, "cap given twice")),
            };
            let mut s = LInfinity::zero(space.clone(), cap);
            let mut seen = BTreeMap::new();
            for line in with("op") {
                let r = line.int(1, "an arity")?;
                let eq = line.equals(2)?;
                if r < 1 || r as usize != eq - 2 {
                    return Err(semantic(line.number, "arity matches the number of arguments", format!("op {r} with {} arguments", eq - 2)));
                }
                if r as usize > cap {
                    return Err(semantic(line.number, "arity within cap", format!("op {r} above cap {cap}")));
                }
                let idx: Vec<usize> = (2..eq).map(|k| labels.lookup(line, k)).collect::<Res<_>>()?;
                let mut key = idx.clone();
                key.sort_unstable();
                if seen.insert((r, key), line.number).is_some() {
                    return Err(semantic(line.number, "one op line per argument multiset", "repeated op".to_string()));
                }
                let v = line.combination(eq + 1, &labels)?;
                s.set_l(r as usize, &idx, v).map_err(|e| semantic(line.number, "op has degree 2 - r", e.to_string()))?;
            }
            Ok(Fixture::Linf(s))
        }
        Kind::Nilpotent | Kind::Filtration => {
            let dims: Vec<&Line<'_>> = with("dim").collect();
            let Some(dl) = dims.first() else {
                return Err(syntax(first.number, first.end, "missing `dim` line"));
            };
            if let Some(extra) = dims.get(1) {
                return Err(syntax(extra.number, extra.tokens[0].column, "dim given twice"));
            }
            dl.no_more(2)?;
            let dim = dl.int(1, "a dimension")?;
            if dim < 0 {
                return Err(semantic(dl.number, "dim >= 0", format!("dim {dim}")));
            }
            let dim = dim as usize;
            let mut rows = Vec::new();
            for line in with("row") {
                let v = vector_rows(line, 1, dim)?;
                if v.len() != 1 {
                    return Err(syntax(line.number, line.tokens[0].column, "a row line holds one vector"));
                }
                rows.push((line, v.into_iter().next().expect("one row")));
            }
            if kind == Kind::Nilpotent {
                return Ok(Fixture::Nilpotent(nilpotent_from_rows(&rows, dim, dl.number)?));
            }
            let n = if rows.is_empty() { None } else { Some(nilpotent_from_rows(&rows, dim, dl.number)?) };
            let orders: Vec<&Line<'_>> = with("order").collect();
            let decreasing = match orders.as_slice() {
                [] => false,
                [o] => {
                    o.no_more(2)?;
                    let t = o.arg(1, "`increasing` or `decreasing`")?;
                    match t.text {
                        "increasing" => false,
                        "decreasing" => true,
                        other => return Err(syntax(o.number, t.column, format!("unknown order `{other}`"))),
                    }
                }
                [_, o, ..] => return Err(syntax(o.number, o.tokens[0].column, "order given twice")),
            };
            let mut steps: Vec<(i64, Subspace)> = Vec::new();
            let mut prev: Option<(i64, Subspace, usize)> = None;
            for line in with("step") {
                let k = line.int(1, "a step index")?;
                let eq = line.equals(2)?;
                if eq != 2 {
                    return Err(syntax(line.number, line.tokens[2].column, "expected `=`"));
                }
                let vectors = vector_rows(line, 3, dim)?;
                let s: Subspace = Subspace::span(dim, &vectors).map_err(|e| syntax(line.number, 1, e.to_string()))?;
                if let Some((pk, ps, pl)) = &prev {
                    if k <= *pk {
                        return Err(semantic(line.number, "step indices increase", format!("step {k} after step {pk}")));
                    }
                    let nested = if decreasing { s.is_subspace_of(ps) } else { ps.is_subspace_of(&s) };
                    if !nested {
                        let (small, big) = if decreasing { (k, *pk) } else { (*pk, k) };
                        return Err(semantic(
                            line.number,
                            "steps are nested",
                            format!("step {small} (line {}) is not contained in step {big}", if decreasing { line.number } else { *pl }),
                        ));
                    }
                }
                prev = Some((k, s.clone(), line.number));
                steps.push((k, s));
            }
            let w = if decreasing { Filtration::from_decreasing(dim, steps) } else { Filtration::new(dim, steps) };
            let w = w.map_err(|e| semantic(prev.map(|p| p.2).unwrap_or(dl.number), "the filtration exhausts the space", e.to_string()))?;
            if let Some(n) = &n {
                if !n.respects(&w) {
                    return Err(semantic(dl.number, "N preserves W", "N maps some W_k outside W_k"));
                }
            }
            Ok(Fixture::Filtration { w, n })
        }
        Kind::WeightProfile => {
            let mut h1 = None;
            let mut h2 = None;
            for line in body {
                let slot = if line.keyword() == "h1" { &mut h1 } else { &mut h2 };
                if slot.replace(line.ints_from(1)?).is_some() {
                    return Err(syntax(line.number, line.tokens[0].column, format!("{} given twice", line.keyword())));
                }
            }
            Ok(Fixture::WeightProfile { h1: h1.unwrap_or_default(), h2: h2.unwrap_or_default() })
        }
    }
}

fn basis_text(out: &mut String, space: &GradedSpace, keyword: &str, with_degree: bool) {
    for b in space.basis() {
        out.push_str(keyword);
        out.push(' ');
        out.push_str(&b.label);
        if with_degree {
            out.push_str(&format!(" {}", b.degree));
        }
        if let Some(w) = b.weight {
            out.push_str(&format!(" {w}"));
        }
        out.push('\n');
    }
}

fn dgla_text(out: &mut String, l: &DgLie, bracket_keyword: &str) {
    let s = l.space();
    let n = l.dim();
    for j in 0..n {
        let col = l.differential().column(j);
        if col.iter().any(|c| !c.is_zero()) {
            out.push_str(&format!("d {} = {}\n", s.label(j), s.format_vector(&col)));
        }
    }
    for (&(i, j), v) in l.structure_constants() {
        let mirrored = l.bracket_basis(j, i).is_some_and(|w| {
            let sign = mcdef_core::graded_lie::koszul_swap(s.degree(i), s.degree(j));
            w.iter().zip(v).all(|(a, b)| *a == -b.clone() * sign.clone())
        });
        if j < i && mirrored {
            continue;
        }
        out.push_str(&format!("{bracket_keyword} {} {} = {}\n", s.label(i), s.label(j), s.format_vector(v)));
    }
}

fn vector_text(v: &[Q]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn rows_text(out: &mut String, m: &Matrix) {
    for i in 0..m.rows() {
        out.push_str(&format!("row {}\n", vector_text(m.row(i))));
    }
}

pub fn serialize_fixture(doc: &Fixture) -> String {
    let mut out = format!("kind {}\n", doc.kind().name());
    match doc {
        Fixture::Dgla(l) => {
            basis_text(&mut out, l.space(), "basis", true);
            dgla_text(&mut out, l, "bracket");
        }
        Fixture::Augmentation { l, aug } => {
            basis_text(&mut out, l.space(), "basis", true);
            dgla_text(&mut out, l, "bracket");
            basis_text(&mut out, aug.target.space(), "target-basis", false);
            dgla_text(&mut out, &aug.target, "target-bracket");
            let ts = aug.target.space();
            for j in 0..l.dim() {
                let col = aug.eps.column(j);
                if col.iter().any(|c| !c.is_zero()) {
                    let terms = col.iter().enumerate().map(|(i, c)| (c, ts.label(i)));
                    out.push_str(&format!("eps {} = {}\n", l.space().label(j), format_combination(terms)));
                }
            }
        }
        Fixture::Linf(s) => {
            out.push_str(&format!("cap {}\n", s.cap()));
            let sp = s.space();
            basis_text(&mut out, sp, "basis", true);
            for r in 1..=s.cap() {
                for (key, v) in s.l_entries(r) {
                    let args: Vec<&str> = key.iter().map(|&i| sp.label(i)).collect();
                    out.push_str(&format!("op {r} {} = {}\n", args.join(" "), sp.format_vector(&v)));
                }
            }
        }
        Fixture::Nilpotent(n) => {
            out.push_str(&format!("dim {}\n", n.dim()));
            rows_text(&mut out, n.matrix());
        }
        Fixture::Filtration { w, n } => {
            out.push_str(&format!("dim {}\n", w.ambient_dim()));
            for (k, s) in w.jumps() {
                let vs: Vec<String> = s.basis_vectors().iter().map(|v| vector_text(v)).collect();
                let body = vs.join("; ");
                out.push_str(&format!("step {k} ={}{}\n", if body.is_empty() { "" } else { " " }, body));
            }
            if let Some(n) = n {
                rows_text(&mut out, n.matrix());
            }
        }
        Fixture::WeightProfile { h1, h2 } => {
            for (key, ws) in [("h1", h1), ("h2", h2)] {
                out.push_str(key);
                for w in ws {
                    out.push_str(&format!(" {w}"));
                }
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_forms() {
        let text = "kind dgla\nbasis a 1\nbasis b 1\nbasis u 2\nbracket a b = -1/2*u\nbracket a a = 2*u\n";
        let Fixture::Dgla(l) = parse_fixture(text).unwrap() else { panic!() };
        assert_eq!(l.bracket_basis(0, 1).unwrap()[2], Q::new((-1).into(), 2.into()));
        assert_eq!(l.bracket_basis(1, 0).unwrap()[2], Q::new((-1).into(), 2.into()));
    }

    #[test]
    fn syntax_errors_carry_columns() {
        let err = parse_fixture("kind dgla\nbasis a 1\nd a = 3*zz\n").unwrap_err();
        assert_eq!(err, FixtureError::Syntax { line: 3, column: 9, message: "unknown basis label `zz`".into() });
        let err = parse_fixture("kind dgla\nbasis a x\n").unwrap_err();
        assert!(matches!(err, FixtureError::Syntax { line: 2, column: 9, .. }));
        let err = parse_fixture("kind bogus\n").unwrap_err();
        assert!(matches!(err, FixtureError::Syntax { line: 1, column: 6, .. }));
    }

    #[test]
    fn empty_dgla_is_zero() {
        let doc = parse_fixture("kind dgla\n").unwrap();
        let Fixture::Dgla(l) = &doc else { panic!() };
        assert_eq!(l.dim(), 0);
        assert_eq!(parse_fixture(&serialize_fixture(&doc)).unwrap(), doc);
    }

    #[test]
    fn filtration_nesting_is_named() {
        let err = parse_fixture("kind filtration\ndim 2\nstep 0 = 1 0\nstep 1 = 0 1\nstep 2 = 1 0; 0 1\n").unwrap_err();
        let FixtureError::Semantic { line, invariant, .. } = err else { panic!("{err}") };
        assert_eq!((line, invariant.as_str()), (4, "steps are nested"));
    }

    #[test]
    fn decreasing_steps() {
        let doc = parse_fixture("kind filtration\ndim 2\norder decreasing\nstep 0 = 1 0; 0 1\nstep 1 = 1 0\n").unwrap();
        let Fixture::Filtration { w, .. } = &doc else { panic!() };
        assert_eq!(w.get(-1).dim(), 1);
        assert_eq!(w.get(-2).dim(), 0);
        assert_eq!(parse_fixture(&serialize_fixture(&doc)).unwrap(), doc);
    }
}
