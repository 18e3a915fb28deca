//! Command dispatch and report rendering.

use std::fmt;
use std::str::FromStr;

use mcdef_core::cone::{build_cone, check_cone_support, cone_cohomology, default_complement, split_cone_transfer};
use mcdef_core::deformation::{check_soundness, solve_order_by_order};
use mcdef_core::filtrations::{
    check_tensor_monodromy, check_weight_z_inclusions, monodromy_filtration, relative_monodromy_filtration,
    tensor_filtration, verify_monodromy, verify_relative_monodromy, z_filtration, z_filtration_kashiwara,
    RelativeMonodromy, TensorZData,
};
use mcdef_core::exact_linalg::tensor_subspace;
use mcdef_core::graded_lie::{
    check_augmentation, check_dgla_axioms, cohomology, complex_contraction, standard_contraction,
    weighted_contraction, Contraction, ContractionChoices, DgLie,
};
use mcdef_core::linfinity::{
    check_linfinity_axioms, check_morphism, from_dgla, graded_transfer, homotopy_transfer, predict_vanishing,
    LInfinity, Transfer, VanishingPrediction,
};
use mcdef_core::poly::ArtinAlgebra;
use mcdef_core::scenarios::{consequence_suite, present};
use mcdef_core::{CheckReport, FilteredNilpotentSpace, Filtration, Q};
use sha2::{Digest, Sha256};

use crate::fixture::{parse_fixture, serialize_fixture, Fixture, FixtureError};

/// Axiom checks stop at this arity; higher ones are exponential and the
/// weight bounds never need them.
const AXIOM_ARITY: usize = 5;
/// Grid and count for the sample MC solutions used by `present`.
const SOLUTION_GRID: [i64; 3] = [-1, 0, 1];
const SOLUTION_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Cohomology,
    Transfer,
    Cone,
    Present,
    Monodromy,
    Relmonodromy,
    Zfilt,
    Tensor,
    Consequences,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::Check,
        Command::Cohomology,
        Command::Transfer,
        Command::Cone,
        Command::Present,
        Command::Monodromy,
        Command::Relmonodromy,
        Command::Zfilt,
        Command::Tensor,
        Command::Consequences,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Cohomology => "cohomology",
            Command::Transfer => "transfer",
            Command::Cone => "cone",
            Command::Present => "present",
            Command::Monodromy => "monodromy",
            Command::Relmonodromy => "relmonodromy",
            Command::Zfilt => "zfilt",
            Command::Tensor => "tensor",
            Command::Consequences => "consequences",
        }
    }
}

impl FromStr for Command {
    type Err = RunError;

    fn from_str(s: &str) -> Result<Self, RunError> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| RunError::UnknownCommand(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    Machine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    pub cap: usize,
    /// Work over `Q[t]/(t^truncation)`.
    pub truncation: u32,
    pub center: i64,
}

impl Default for Flags {
    fn default() -> Self {
        Flags { cap: 6, truncation: 4, center: 0 }
    }
}

#[derive(Debug)]
pub enum RunError {
    UnknownCommand(String),
    Usage(String),
    Parse { input: String, error: FixtureError },
    KindMismatch { command: &'static str, expected: String, found: String },
    Compute(String),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::UnknownCommand(c) => write!(f, "unknown command `{c}`"),
            RunError::Usage(m) => write!(f, "{m}"),
            RunError::Parse { input, error } => write!(f, "{input}:{error}"),
            RunError::KindMismatch { command, expected, found } => {
                write!(f, "`{command}` expects {expected}, got {found}")
            }
            RunError::Compute(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<mcdef_core::Error> for RunError {
    fn from(e: mcdef_core::Error) -> Self {
        RunError::Compute(e.to_string())
    }
}

/// Outcome of one command: checks plus named artifacts, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunReport {
    pub command: Command,
    pub inputs: Vec<String>,
    pub digest: String,
    pub flags: Flags,
    pub checks: CheckReport,
    pub artifacts: Vec<(String, String)>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.passed()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => self.human(),
            Format::Machine => self.machine(),
        }
    }

    pub fn machine(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command.name()));
        out.push_str(&format!("inputs: {}\n", self.inputs.join(" ")));
        out.push_str(&format!("digest: sha256:{}\n", self.digest));
        out.push_str(&format!(
            "flags: cap={} center={} truncation={}\n",
            self.flags.cap, self.flags.center, self.flags.truncation
        ));
        for (n, item) in self.checks.items.iter().enumerate() {
            let status = if item.passed { "pass" } else { "fail" };
            out.push_str(&format!("check.{n}: {status} | {}", item.name));
            if let Some(w) = &item.witness {
                out.push_str(&format!(" | {}", one_line(w)));
            }
            out.push('\n');
        }
        for (k, v) in &self.artifacts {
            out.push_str(&format!("artifact.{k}: {}\n", one_line(v)));
        }
        let passed = self.checks.items.iter().filter(|i| i.passed).count();
        out.push_str(&format!("checks: {passed}/{}\n", self.checks.items.len()));
        out.push_str(&format!("status: {}\n", if self.passed() { "pass" } else { "fail" }));
        out
    }

    pub fn human(&self) -> String {
        let mut out = format!("{} on {}\n", self.command.name(), if self.inputs.is_empty() { "built-in fixtures".to_string() } else { self.inputs.join(", ") });
        for item in &self.checks.items {
            if item.passed {
                out.push_str(&format!("  ok    {}\n", item.name));
            } else {
                out.push_str(&format!("  FAIL  {}\n", item.name));
                if let Some(w) = &item.witness {
                    for line in w.lines() {
                        out.push_str(&format!("        {line}\n"));
                    }
                }
            }
        }
        for (k, v) in &self.artifacts {
            out.push_str(&format!("{k}: {v}\n"));
        }
        let failed = self.checks.failures().count();
        if failed == 0 {
            out.push_str(&format!("all {} checks passed\n", self.checks.items.len()));
        } else {
            out.push_str(&format!("{failed} of {} checks failed\n", self.checks.items.len()));
        }
        out
    }
}

fn one_line(s: &str) -> String {
    s.lines().collect::<Vec<_>>().join(" / ")
}

fn digest(inputs: &[(String, String)]) -> String {
    let mut h = Sha256::new();
    for (_, text) in inputs {
        h.update((text.len() as u64).to_le_bytes());
        h.update(text.as_bytes());
    }
    hex::encode(h.finalize())
}

struct Out {
    checks: CheckReport,
    artifacts: Vec<(String, String)>,
}

impl Out {
    fn new() -> Self {
        Out { checks: CheckReport::new(), artifacts: Vec::new() }
    }

    fn art(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.artifacts.push((key.into(), value.to_string()));
    }

    fn filtration(&mut self, name: &str, f: &Filtration) {
        self.art(format!("{name}.jumps"), jumps_text(f));
        for (k, s) in f.jumps() {
            self.art(format!("{name}.{k}"), format!("dim {} {}", s.dim(), rows_text(&s.basis_vectors())));
        }
    }
}

fn rows_text(rows: &[Vec<Q>]) -> String {
    let body: Vec<String> = rows.iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", body.join("; "))
}

fn jumps_text(f: &Filtration) -> String {
    let ks: Vec<String> = f.jumps().iter().map(|(k, _)| k.to_string()).collect();
    ks.join(" ")
}

fn dims_text(dims: impl IntoIterator<Item = (i64, usize)>) -> String {
    let parts: Vec<String> = dims.into_iter().map(|(n, d)| format!("{n}:{d}")).collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(" ")
    }
}

fn mismatch(command: Command, expected: &str, found: &[Fixture]) -> RunError {
    let kinds: Vec<&str> = found.iter().map(|f| f.kind().name()).collect();
    RunError::KindMismatch {
        command: command.name(),
        expected: expected.to_string(),
        found: if kinds.is_empty() { "no fixture".into() } else { kinds.join(", ") },
    }
}

/// Runs `command` on fixture texts given as `(name, text)` pairs.
pub fn run(command: Command, flags: &Flags, inputs: &[(String, String)]) -> Result<RunReport, RunError> {
    if flags.cap < 2 {
        return Err(RunError::Usage("--cap must be at least 2".into()));
    }
    if flags.truncation < 2 {
        return Err(RunError::Usage("--truncation must be at least 2".into()));
    }
    let docs: Vec<Fixture> = inputs
        .iter()
        .map(|(name, text)| parse_fixture(text).map_err(|error| RunError::Parse { input: name.clone(), error }))
        .collect::<Result<_, _>>()?;
    let out = match command {
        Command::Check => check(&docs, flags)?,
        Command::Cohomology => cohomology_cmd(&docs)?,
        Command::Transfer => transfer_cmd(&docs, flags)?,
        Command::Cone => cone_cmd(&docs, flags)?,
        Command::Present => present_cmd(&docs, flags)?,
        Command::Monodromy => monodromy_cmd(&docs, flags)?,
        Command::Relmonodromy => relmonodromy_cmd(&docs)?,
        Command::Zfilt => zfilt_cmd(&docs)?,
        Command::Tensor => tensor_cmd(&docs, flags)?,
        Command::Consequences => consequences_cmd(&docs, flags)?,
    };
    Ok(RunReport {
        command,
        inputs: inputs.iter().map(|(n, _)| n.clone()).collect(),
        digest: digest(inputs),
        flags: flags.clone(),
        checks: out.checks,
        artifacts: out.artifacts,
    })
}

fn one<'a>(command: Command, docs: &'a [Fixture], expected: &str) -> Result<&'a Fixture, RunError> {
    match docs {
        [d] => Ok(d),
        _ => Err(mismatch(command, expected, docs)),
    }
}

fn check(docs: &[Fixture], flags: &Flags) -> Result<Out, RunError> {
    let mut o = Out::new();
    let doc = one(Command::Check, docs, "one fixture")?;
    o.art("kind", doc.kind().name());
    match doc {
        Fixture::Dgla(l) => {
            o.art("dims", dims_text(l.space().dims()));
            o.checks.extend(check_dgla_axioms(l));
        }
        Fixture::Linf(s) => {
            let up_to = flags.cap.min(s.cap()).min(AXIOM_ARITY);
            o.art("axiom-arity", up_to);
            o.checks.extend(check_linfinity_axioms(s, up_to));
        }
        Fixture::Augmentation { l, aug } => {
            o.checks.extend(check_dgla_axioms(l));
            let chk = check_augmentation(l, aug);
            o.art("dim eps(H0)", chk.image_h0.dim());
            o.art("complement", chk.complement_dim);
            o.checks.extend(chk.report);
        }
        Fixture::Nilpotent(n) => {
            o.art("dim", n.dim());
            o.art("nilpotency", n.nilpotency_index());
            o.checks.pass("N is nilpotent");
        }
        Fixture::Filtration { w, n } => {
            o.art("dim", w.ambient_dim());
            o.art("graded", dims_text(w.graded_dims()));
            o.checks.pass("steps are nested and exhaust the space");
            if let Some(n) = n {
                o.checks.push("N preserves W", n.respects(w), None);
            }
        }
        Fixture::WeightProfile { h1, h2 } => match predict_vanishing(h1, h2) {
            Ok(p) => {
                o.checks.pass("H1 weights are positive");
                prediction_artifacts(&mut o, &p);
            }
            Err(e) => o.checks.fail("H1 weights are positive", e.to_string()),
        },
    }
    Ok(o)
}

fn cohomology_cmd(docs: &[Fixture]) -> Result<Out, RunError> {
    let mut o = Out::new();
    match one(Command::Cohomology, docs, "a dgla or augmentation fixture")? {
        Fixture::Dgla(l) => {
            let h = cohomology(l);
            o.art("H", dims_text(h.dims.clone()));
            let c = standard_contraction(l)?;
            o.checks.extend(c.verify(l));
        }
        Fixture::Augmentation { l, aug } => {
            let h = cohomology(l);
            o.art("H(L)", dims_text(h.dims.clone()));
            let cone = build_cone(l, aug, 2)?;
            let cc = cone_cohomology(l, aug, &cone)?;
            o.art("H(C)", dims_text(cc.dims.clone()));
            o.checks.extend(cc.report);
        }
        _ => return Err(mismatch(Command::Cohomology, "a dgla or augmentation fixture", docs)),
    }
    Ok(o)
}

/// Weight-homogeneous contraction for weighted spaces, the standard one otherwise.
fn contraction_for(s: &LInfinity) -> Result<Contraction, RunError> {
    let m1 = s.m1_matrix();
    let sp = s.space();
    // m1 is d up to the sign of the shift; the kernel and image agree.
    Ok(if sp.is_weighted() {
        weighted_contraction(sp, &m1)?
    } else {
        complex_contraction(sp, &m1, &ContractionChoices::default())?
    })
}

fn transfer_of(s: &LInfinity, c: &Contraction, cap: usize) -> Result<Transfer, RunError> {
    Ok(if s.space().is_weighted() { graded_transfer(s, c, cap)? } else { homotopy_transfer(s, c, cap)? })
}

fn structure_artifacts(o: &mut Out, name: &str, s: &LInfinity) {
    o.art(format!("{name}.dims"), dims_text(s.space().dims()));
    for line in serialize_fixture(&Fixture::Linf(s.clone())).lines().filter(|l| l.starts_with("op ")) {
        o.art(format!("{name}.op"), line.trim_start_matches("op "));
    }
}

fn transfer_cmd(docs: &[Fixture], flags: &Flags) -> Result<Out, RunError> {
    let mut o = Out::new();
    let (source, dgla): (LInfinity, Option<&DgLie>) = match one(Command::Transfer, docs, "a dgla or linf fixture")? {
        Fixture::Dgla(l) => (from_dgla(l, flags.cap)?, Some(l)),
        Fixture::Linf(s) => (s.clone(), None),
        _ => return Err(mismatch(Command::Transfer, "a dgla or linf fixture", docs)),
    };
    let c = match dgla {
        Some(l) if !l.space().is_weighted() => standard_contraction(l)?,
        _ => contraction_for(&source)?,
    };
    o.checks.extend(match dgla {
        Some(l) => c.verify(l),
        None => c.verify_complex(source.space(), &source.m1_matrix()),
    });
    let t = transfer_of(&source, &c, flags.cap)?;
    let up_to = flags.cap.min(AXIOM_ARITY);
    o.checks.extend(check_linfinity_axioms(&t.structure, up_to));
    o.checks.extend(check_morphism(&t.structure, &source, &t, up_to.min(4)));
    if let Some(l) = dgla {
        if l.has_zero_differential() {
            o.checks.push("d = 0 leaves only l_2", t.structure.is_zero_from(3), None);
        }
    }
    structure_artifacts(&mut o, "H", &t.structure);
    Ok(o)
}

fn cone_cmd(docs: &[Fixture], flags: &Flags) -> Result<Out, RunError> {
    let mut o = Out::new();
    let Fixture::Augmentation { l, aug } = one(Command::Cone, docs, "an augmentation fixture")? else {
        return Err(mismatch(Command::Cone, "an augmentation fixture", docs));
    };
    let up_to = flags.cap.min(AXIOM_ARITY);
    let cone = build_cone(l, aug, flags.cap)?;
    o.art("C.dims", dims_text(cone.structure.space().dims()));
    o.checks.extend(check_linfinity_axioms(&cone.structure, up_to));
    o.checks.extend(check_cone_support(&cone));
    let cc = cone_cohomology(l, aug, &cone)?;
    o.art("H(C)", dims_text(cc.dims.clone()));
    o.checks.extend(cc.report);
    let c_l = if l.space().is_weighted() {
        weighted_contraction(l.space(), l.differential())?
    } else {
        standard_contraction(l)?
    };
    let split = split_cone_transfer(l, aug, &c_l, &default_complement(l, aug), up_to)?;
    o.checks.extend(split.report);
    let sp = split.transfer.structure.space();
    let t: Vec<&str> = split.t_indices.iter().map(|&i| sp.label(i)).collect();
    o.art("t", if t.is_empty() { "none".to_string() } else { t.join(" ") });
    Ok(o)
}

fn present_cmd(docs: &[Fixture], flags: &Flags) -> Result<Out, RunError> {
    let mut o = Out::new();
    let (l, aug) = match one(Command::Present, docs, "a weighted dgla or augmentation fixture")? {
        Fixture::Dgla(l) => (l, None),
        Fixture::Augmentation { l, aug } => (l, Some(aug)),
        _ => return Err(mismatch(Command::Present, "a weighted dgla or augmentation fixture", docs)),
    };
    let pr = present(l, aug, flags.cap)?;
    o.checks.extend(pr.report);
    let p = &pr.presentation;
    o.art("presentation", p);
    for line in p.machine().lines() {
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        o.art(key, rest);
    }
    o.art("quadratic", p.is_quadratic());
    o.art("max-degree", p.max_degree());
    prediction_artifacts(&mut o, &pr.prediction);
    let alg = ArtinAlgebra::single(flags.truncation - 1);
    let sols = solve_order_by_order(p, flags.truncation - 1, &SOLUTION_GRID, SOLUTION_LIMIT);
    o.art("solutions", sols.len());
    o.checks.extend(check_soundness(p, &pr.transfer, &pr.source, &sols, &alg)?);
    Ok(o)
}

fn prediction_artifacts(o: &mut Out, p: &VanishingPrediction) {
    o.art("max-arity", p.max_arity);
    for (r, ws) in &p.survivors {
        let ws: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        o.art("survivor", format!("l_{r} on ({})", ws.join(",")));
    }
}

fn monodromy_cmd(docs: &[Fixture], flags: &Flags) -> Result<Out, RunError> {
    let mut o = Out::new();
    let Fixture::Nilpotent(n) = one(Command::Monodromy, docs, "a nilpotent fixture")? else {
        return Err(mismatch(Command::Monodromy, "a nilpotent fixture", docs));
    };
    let m = monodromy_filtration(n, flags.center)?;
    o.checks.extend(verify_monodromy(&m, n, flags.center));
    o.filtration("M", &m);
    Ok(o)
}

fn filtered(command: Command, docs: &[Fixture]) -> Result<Vec<FilteredNilpotentSpace>, RunError> {
    docs.iter()
        .map(|d| match d {
            Fixture::Filtration { w, n: Some(n) } => Ok(FilteredNilpotentSpace::new(w.clone(), n.clone())?),
            _ => Err(mismatch(command, "filtration fixtures with row lines", docs)),
        })
        .collect()
}

fn relmonodromy_cmd(docs: &[Fixture]) -> Result<Out, RunError> {
    let mut o = Out::new();
    let fs = filtered(Command::Relmonodromy, docs)?;
    let [fs] = fs.as_slice() else {
        return Err(mismatch(Command::Relmonodromy, "one filtration fixture", docs));
    };
    match relative_monodromy_filtration(fs)? {
        RelativeMonodromy::Exists(m) => {
            o.art("exists", true);
            o.checks.extend(verify_relative_monodromy(&m, fs));
            o.filtration("M", &m);
        }
        RelativeMonodromy::NotExists => o.art("exists", false),
    }
    Ok(o)
}

fn zfilt_cmd(docs: &[Fixture]) -> Result<Out, RunError> {
    let mut o = Out::new();
    let fs = filtered(Command::Zfilt, docs)?;
    let [fs] = fs.as_slice() else {
        return Err(mismatch(Command::Zfilt, "one filtration fixture", docs));
    };
    let RelativeMonodromy::Exists(m) = relative_monodromy_filtration(fs)? else {
        o.checks.fail("relative monodromy filtration exists", "NotExists");
        return Ok(o);
    };
    o.checks.pass("relative monodromy filtration exists");
    let z = z_filtration(&fs.w, &m, &fs.n)?;
    let zk = z_filtration_kashiwara(&fs.w, &fs.n)?;
    let same = z == zk;
    o.checks.push(
        "sum and intersection formulas agree",
        same,
        (!same).then(|| format!("jumps {} vs {}", jumps_text(&z), jumps_text(&zk))),
    );
    o.filtration("M", &m);
    o.filtration("Z", &z);
    Ok(o)
}

fn tensor_cmd(docs: &[Fixture], flags: &Flags) -> Result<Out, RunError> {
    let mut o = Out::new();
    match docs {
        [Fixture::Nilpotent(n1), Fixture::Nilpotent(n2)] => {
            let c = flags.center;
            let ok = check_tensor_monodromy((n1, c), (n2, c))?;
            o.checks.push("M(N1 + N2) = M(N1) tensor M(N2)", ok, None);
            let m = tensor_filtration(&monodromy_filtration(n1, c)?, &monodromy_filtration(n2, c)?);
            o.filtration("M", &m);
        }
        [Fixture::Filtration { n: Some(_), .. }, Fixture::Filtration { n: Some(_), .. }] => {
            let fs = filtered(Command::Tensor, docs)?;
            let (ok, data) = check_weight_z_inclusions(&fs[0], &fs[1])?;
            let witness = (!ok).then(|| inclusion_witness(&fs[0].w, &fs[1].w, &data)).flatten();
            o.checks.push("W1 (x) Z2 in Z and W1 (x) W2 in W", ok, witness);
            o.filtration("W", &data.w);
            o.filtration("M", &data.m);
            o.filtration("Z", &data.z);
        }
        _ => return Err(mismatch(Command::Tensor, "two nilpotent or two filtration fixtures", docs)),
    }
    Ok(o)
}

/// First `(k, l)` where `W1_k ⊗ Z2_l` or `W1_k ⊗ W2_l` leaves its target.
fn inclusion_witness(w1: &Filtration, w2: &Filtration, data: &TensorZData<Q>) -> Option<String> {
    let range = |fs: &[&Filtration]| {
        let lo = fs.iter().filter_map(|f| f.lowest()).min().unwrap_or(0);
        let hi = fs.iter().filter_map(|f| f.highest()).max().unwrap_or(0);
        (lo - 1)..=(hi + 1)
    };
    for k in range(&[w1]) {
        for l in range(&[w2, &data.z2]) {
            let a = w1.get(k);
            let wz = tensor_subspace(&a, &data.z2.get(l));
            if !wz.is_subspace_of(&data.z.get(k + l)) {
                return Some(format!(
                    "W1_{k} (x) Z2_{l} = {} not in Z_{} = {}",
                    rows_text(&wz.basis_vectors()),
                    k + l,
                    rows_text(&data.z.get(k + l).basis_vectors())
                ));
            }
            if !tensor_subspace(&a, &w2.get(l)).is_subspace_of(&data.w.get(k + l)) {
                return Some(format!("W1_{k} (x) W2_{l} not in W_{}", k + l));
            }
        }
    }
    None
}

fn consequences_cmd(docs: &[Fixture], flags: &Flags) -> Result<Out, RunError> {
    let mut o = Out::new();
    match docs {
        [] => {
            for (item, res) in consequence_suite(flags.cap) {
                match res {
                    Ok(out) => {
                        for it in out.report.items {
                            o.checks.push(format!("item {item}: {}", it.name), it.passed, it.witness);
                        }
                        let tag = if out.artificial { " (artificial profile)" } else { "" };
                        o.art(format!("item{item}.title"), format!("{}{tag}", out.title));
                        o.art(format!("item{item}.presentation"), &out.presentation);
                        o.art(format!("item{item}.max-arity"), out.prediction.max_arity);
                    }
                    Err(e) => o.checks.fail(format!("item {item}"), e.to_string()),
                }
            }
        }
        [Fixture::WeightProfile { h1, h2 }] => {
            let p = predict_vanishing(h1, h2)?;
            prediction_artifacts(&mut o, &p);
        }
        _ => return Err(mismatch(Command::Consequences, "no fixture or a weight-profile fixture", docs)),
    }
    Ok(o)
}
