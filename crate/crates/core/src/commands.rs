//! Batch commands behind the `zhu` binary: configuration parsing, the six
//! commands, and their JSON reports. Scalars are serialised as strings and
//! object keys are sorted, so a report depends only on its inputs.

use std::str::FromStr;

use serde_json::{json, Value};
use thiserror::Error;

use crate::assoc::{AssocError, MatrixModule, SCAlgebra, PROBE_SEED};
use crate::check::{all_passed, Check};
use crate::field::{Elem, Field, FieldError};
use crate::linalg::{LinalgError, Matrix};
use crate::poly::Poly;
use crate::scalar_ext::{
    check_voa_extension, check_zhu_extension, extend_algebra, extend_module, extension_field, lemma36_check,
    parse_polynomial, top_level_module, ExtError,
};
use crate::voa::{Family, ModeEngine, ModeError, ModuleConfig, ModuleKind, Monomial, VoaConfig};
use crate::zhu::{C2Algebra, PhiReport, ZhuAlgebra, ZhuError};

/// Cutoff budget tried in order when computing Zhu algebras.
pub const CUTOFF_BUDGET: [usize; 4] = [6, 8, 10, 12];

/// Default weight truncation when the configuration gives none.
pub const DEFAULT_TRUNCATION: usize = 8;

/// Largest proxy truncation used for module irreducibility in `extend`.
pub const PROXY_TRUNCATION: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Describe,
    Zhu,
    C2,
    Endo,
    Extend,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Describe => "describe",
            Command::Zhu => "zhu",
            Command::C2 => "c2",
            Command::Endo => "endo",
            Command::Extend => "extend",
            Command::Selftest => "selftest",
        }
    }
}

impl FromStr for Command {
    type Err = CommandError;

    fn from_str(s: &str) -> Result<Command, CommandError> {
        Ok(match s {
            "describe" => Command::Describe,
            "zhu" => Command::Zhu,
            "c2" => Command::C2,
            "endo" => Command::Endo,
            "extend" => Command::Extend,
            "selftest" => Command::Selftest,
            other => return Err(CommandError::Usage(format!("unknown command {other:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub level: usize,
    pub truncate: Option<usize>,
    pub max_degree: Option<usize>,
    pub module: Option<String>,
    pub ext: Option<String>,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            level: 0,
            truncate: None,
            max_degree: None,
            module: None,
            ext: None,
            seed: PROBE_SEED,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommandError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("computation failed: {0}")]
    Failed(String),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Failed(_) => 1,
            CommandError::Usage(_) => 2,
            CommandError::Unsupported(_) => 3,
        }
    }
}

impl From<FieldError> for CommandError {
    fn from(e: FieldError) -> CommandError {
        match e {
            FieldError::Unsupported(s) => CommandError::Unsupported(s),
            FieldError::DegreeTooLarge(_) => CommandError::Unsupported(e.to_string()),
            FieldError::Mismatch(..) => CommandError::Failed(e.to_string()),
            _ => CommandError::Usage(e.to_string()),
        }
    }
}

impl From<ModeError> for CommandError {
    fn from(e: ModeError) -> CommandError {
        match e {
            ModeError::InvalidConfig(_) => CommandError::Usage(e.to_string()),
            ModeError::Field(f) => f.into(),
            _ => CommandError::Failed(e.to_string()),
        }
    }
}

impl From<ZhuError> for CommandError {
    fn from(e: ZhuError) -> CommandError {
        match e {
            ZhuError::Mode(m) => m.into(),
            ZhuError::EmptyBudget => CommandError::Usage(e.to_string()),
            _ => CommandError::Failed(e.to_string()),
        }
    }
}

impl From<LinalgError> for CommandError {
    fn from(e: LinalgError) -> CommandError {
        CommandError::Failed(e.to_string())
    }
}

impl From<AssocError> for CommandError {
    fn from(e: AssocError) -> CommandError {
        match e {
            AssocError::Unsupported(s) => CommandError::Unsupported(s),
            AssocError::Field(f) => f.into(),
            _ => CommandError::Failed(e.to_string()),
        }
    }
}

impl From<ExtError> for CommandError {
    fn from(e: ExtError) -> CommandError {
        match e {
            ExtError::NotAnExtension { .. } | ExtError::InvalidRequest(_) => CommandError::Usage(e.to_string()),
            ExtError::Unsupported(s) => CommandError::Unsupported(s),
            ExtError::Field(f) => f.into(),
            ExtError::Assoc(a) => a.into(),
            ExtError::Mode(m) => m.into(),
            ExtError::Zhu(z) => z.into(),
            ExtError::Linalg(l) => l.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    CheckFailed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub report: Value,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::CheckFailed => 1,
        }
    }

    /// Pretty-printed report with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("reports are plain JSON");
        s.push('\n');
        s
    }
}

/// Parses the flat `key=value` configuration format. Blank lines and text
/// after `#` are ignored. Keys: `family` (heisenberg, virasoro, affine_sl2),
/// `field`, `truncate`, `rank`, `c`, `k`.
pub fn parse_config(text: &str) -> Result<VoaConfig, CommandError> {
    let mut family = None;
    let mut field_text = None;
    let mut truncate = None;
    let mut rank = None;
    let mut c = None;
    let mut k = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CommandError::Usage(format!("line {}: expected key=value", lineno + 1)))?;
        let value = value.trim().to_string();
        let slot = match key.trim() {
            "family" => &mut family,
            "field" => &mut field_text,
            "truncate" => &mut truncate,
            "rank" => &mut rank,
            "c" => &mut c,
            "k" => &mut k,
            other => return Err(CommandError::Usage(format!("line {}: unknown key {other:?}", lineno + 1))),
        };
        if slot.replace(value).is_some() {
            return Err(CommandError::Usage(format!("line {}: duplicate key {}", lineno + 1, key.trim())));
        }
    }
    let field = Field::parse(field_text.as_deref().unwrap_or("Q"))?;
    let truncate = match truncate {
        Some(t) => t
            .parse::<usize>()
            .map_err(|_| CommandError::Usage(format!("truncate must be a non-negative integer, got {t:?}")))?,
        None => DEFAULT_TRUNCATION,
    };
    let need = |v: Option<String>, key: &str| v.ok_or_else(|| CommandError::Usage(format!("missing key {key}")));
    let family = match need(family, "family")?.as_str() {
        "heisenberg" => {
            let r = rank.unwrap_or_else(|| "1".into());
            let r = r
                .parse::<usize>()
                .map_err(|_| CommandError::Usage(format!("rank must be a positive integer, got {r:?}")))?;
            Family::Heisenberg { rank: r }
        }
        "virasoro" => Family::Virasoro {
            c: field.parse_elem(&need(c, "c")?)?,
        },
        "affine_sl2" | "affine" | "sl2" => Family::AffineSl2 {
            level: field.parse_elem(&need(k, "k")?)?,
        },
        other => return Err(CommandError::Usage(format!("unknown family {other:?}"))),
    };
    Ok(VoaConfig::new(family, &field, truncate)?)
}

/// Parses a module specification for the given vertex algebra:
/// `fock:λ1,λ2,..` (Heisenberg Fock space), `companion:POLY` (rank-1
/// Heisenberg with `h(0)` acting on the top space by the companion matrix),
/// `top:D:m1;m2;..` (Heisenberg with row-major `D x D` zero-mode matrices),
/// `verma:h` (Virasoro) or `weyl:d` (affine sl2, standard `d`-dim top).
pub fn parse_module(config: &VoaConfig, spec: &str, truncation: usize) -> Result<ModuleConfig, CommandError> {
    let f = config.field();
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| CommandError::Usage(format!("module spec {spec:?} lacks ':'")))?;
    let kind = match kind {
        "fock" => ModuleKind::HeisenbergFock {
            lambda: arg.split(',').map(|s| f.parse_elem(s.trim())).collect::<Result<_, _>>()?,
        },
        "companion" => {
            let p = parse_polynomial(f, arg)?;
            if p.len() < 2 {
                return Err(CommandError::Usage("companion polynomial must have degree >= 1".into()));
            }
            let p = crate::poly::monic(f, &p);
            ModuleKind::HeisenbergTop {
                zero_modes: vec![Matrix::companion(&Poly::new(f, p))],
            }
        }
        "top" => {
            let (d, lists) = arg
                .split_once(':')
                .ok_or_else(|| CommandError::Usage("expected top:D:m1;m2".into()))?;
            let d: usize = d.parse().map_err(|_| CommandError::Usage(format!("bad dimension {d:?}")))?;
            let mut mats = Vec::new();
            for list in lists.split(';') {
                let entries: Vec<Elem> = list.split(',').map(|s| f.parse_elem(s.trim())).collect::<Result<_, _>>()?;
                if entries.len() != d * d {
                    return Err(CommandError::Usage(format!("expected {} entries, got {}", d * d, entries.len())));
                }
                mats.push(Matrix::from_flat(f, d, d, entries));
            }
            ModuleKind::HeisenbergTop { zero_modes: mats }
        }
        "verma" => ModuleKind::VirasoroVerma { h: f.parse_elem(arg)? },
        "weyl" => ModuleKind::Sl2Weyl {
            top_dim: arg.parse().map_err(|_| CommandError::Usage(format!("bad dimension {arg:?}")))?,
        },
        other => return Err(CommandError::Usage(format!("unknown module kind {other:?}"))),
    };
    Ok(ModuleConfig::new(config, kind, truncation)?)
}

/// Runs one command. `config` is required by every command except
/// `selftest`.
pub fn run(command: Command, config: Option<&VoaConfig>, opts: &Options) -> Result<Outcome, CommandError> {
    if command == Command::Selftest {
        return Ok(selftest(opts));
    }
    let base = config.ok_or_else(|| CommandError::Usage(format!("{} needs --config", command.name())))?;
    let cfg = match opts.truncate {
        Some(n) => base.with_truncation(n),
        None => base.clone(),
    };
    let (checks, body) = match command {
        Command::Describe => describe(&cfg, opts)?,
        Command::Zhu => zhu(&cfg, opts)?,
        Command::C2 => c2(&cfg, opts)?,
        Command::Endo => endo(&cfg, opts)?,
        Command::Extend => extend(&cfg, opts)?,
        Command::Selftest => unreachable!(),
    };
    Ok(finish(command, Some(&cfg), opts, checks, body))
}

fn finish(command: Command, cfg: Option<&VoaConfig>, opts: &Options, checks: Vec<Check>, body: Value) -> Outcome {
    let passed = all_passed(&checks);
    let report = json!({
        "command": command.name(),
        "config": cfg.map(config_json),
        "seed": format!("{:#x}", opts.seed),
        "status": if passed { "ok" } else { "check-failed" },
        "checks": checks,
        "result": body,
    });
    Outcome {
        status: if passed { Status::Ok } else { Status::CheckFailed },
        report,
    }
}

fn config_json(cfg: &VoaConfig) -> Value {
    let f = cfg.field();
    let params = match cfg.family() {
        Family::Heisenberg { rank } => json!({ "rank": rank }),
        Family::Virasoro { c } => json!({ "c": f.format(c) }),
        Family::AffineSl2 { level } => json!({ "k": f.format(level) }),
    };
    json!({
        "family": cfg.family_name(),
        "field": f.name(),
        "truncate": cfg.truncation(),
        "central_charge": f.format(&cfg.central_charge()),
        "params": params,
    })
}

fn elems(f: &Field, v: &[Elem]) -> Value {
    Value::from(v.iter().map(|x| f.format(x)).collect::<Vec<_>>())
}

fn matrix(m: &Matrix) -> Value {
    json!(m.to_strings())
}

fn names(cfg: &VoaConfig) -> impl Fn(u8) -> String + '_ {
    move |g| cfg.generator_name(g)
}

fn monomial_name(cfg: &VoaConfig, m: &Monomial) -> String {
    m.display(&names(cfg), false)
}

fn budget(truncation: usize) -> Vec<usize> {
    let b: Vec<usize> = CUTOFF_BUDGET.iter().copied().filter(|&c| c <= truncation).collect();
    if b.is_empty() {
        vec![truncation]
    } else {
        b
    }
}

fn describe(cfg: &VoaConfig, opts: &Options) -> Result<(Vec<Check>, Value), CommandError> {
    let engine = ModeEngine::new(cfg);
    let n = cfg.truncation();
    let dims: Vec<usize> = (0..=n).map(|w| engine.voa_basis(w).len()).collect();
    let depth = n.min(6);
    let axioms = engine.check_axioms(depth);
    let module = match &opts.module {
        Some(spec) => {
            let mc = parse_module(cfg, spec, n)?;
            let me = ModeEngine::for_module(&mc);
            let mdims = (0..=n).map(|t| me.basis(t).map(|b| b.len())).collect::<Result<Vec<_>, _>>()?;
            json!({ "spec": spec, "top_dim": mc.top_dim(), "dims": mdims })
        }
        None => Value::Null,
    };
    let body = json!({
        "dims": dims,
        "axiom_depth": depth,
        "module": module,
    });
    Ok((axioms.checks, body))
}

fn zhu_json(cfg: &VoaConfig, a: &ZhuAlgebra) -> Value {
    let f = a.field();
    let basis: Vec<Value> = a
        .basis()
        .iter()
        .zip(a.basis_degrees())
        .map(|(m, d)| json!({ "element": monomial_name(cfg, m), "degree": d }))
        .collect();
    let products: Vec<Value> = a
        .products()
        .iter()
        .map(|((i, j), p)| json!({ "left": i, "right": j, "product": elems(f, p) }))
        .collect();
    json!({
        "level": a.level(),
        "stabilization": {
            "cutoffs": a.cutoffs(),
            "filtration_dims_by_cutoff": a.dims_by_cutoff(),
            "stabilized_through": a.stabilized_through(),
            "stabilized": a.is_stabilized(),
        },
        "degree": a.degree(),
        "filtration_dims": a.filtration_dims(),
        "graded_dims": a.graded_dims(),
        "basis": basis,
        "products": products,
    })
}

fn zhu(cfg: &VoaConfig, opts: &Options) -> Result<(Vec<Check>, Value), CommandError> {
    let max_degree = opts.max_degree.unwrap_or(4);
    let a = ZhuAlgebra::compute(cfg, opts.level, max_degree, &budget(cfg.truncation()))?;
    let mut checks = vec![a.check_associative(), a.check_identity()];
    if opts.level == 0 {
        checks.push(a.check_filtration());
        checks.push(a.check_commutator_congruence());
    }
    let mut body = zhu_json(cfg, &a);
    body["requested_degree"] = json!(max_degree);
    body["properties"] = json!({
        "commutative": a.check_commutative(),
        "omega_central": a.check_omega_central(),
    });
    Ok((checks, body))
}

fn c2(cfg: &VoaConfig, opts: &Options) -> Result<(Vec<Check>, Value), CommandError> {
    let n = cfg.truncation();
    let max_degree = opts.max_degree.unwrap_or(n.min(4));
    let a = ZhuAlgebra::compute(cfg, 0, max_degree, &budget(n))?;
    let c2 = C2Algebra::build(a.truncation().engine().clone(), n);
    let f = c2.field().clone();
    let mut checks = c2.poisson_checks();
    let phi = PhiReport::check(&a, &c2);
    checks.extend(phi.checks.iter().cloned());
    let basis: Vec<Value> = c2
        .basis()
        .iter()
        .zip(c2.basis_degrees())
        .map(|(m, d)| json!({ "element": monomial_name(cfg, m), "degree": d }))
        .collect();
    let table = |m: &std::collections::BTreeMap<(usize, usize), Vec<Elem>>| -> Vec<Value> {
        m.iter()
            .map(|((i, j), p)| json!({ "left": i, "right": j, "value": elems(&f, p) }))
            .collect()
    };
    let body = json!({
        "cutoff": c2.cutoff(),
        "graded_dims": c2.graded_dims(),
        "basis": basis,
        "products": table(c2.products()),
        "brackets": table(c2.brackets()),
        "phi": {
            "degree": phi.degree,
            "r_dims": phi.r_dims,
            "gr_dims": phi.gr_dims,
            "zhu_stabilization": {
                "cutoffs": a.cutoffs(),
                "stabilized_through": a.stabilized_through(),
            },
        },
    });
    Ok((checks, body))
}

/// Endomorphism data of `M(0)` under the truncated Zhu algebra action.
fn top_level_report(module: &MatrixModule, seed: u64) -> Result<(Vec<Check>, Value), CommandError> {
    let f = module.field().clone();
    let endo = module.endomorphisms(seed)?;
    let simple = module.is_simple(seed)?;
    let blocks = match module.image_blocks() {
        Ok(s) => json!(s),
        Err(AssocError::Unsupported(msg)) => json!({ "unsupported": msg }),
        Err(e) => return Err(e.into()),
    };
    let mut commutes = Check::new("commutant elements commute with the action");
    let mut algebraic = Check::new("commutant elements are algebraic of degree <= dim M(0)");
    for (i, x) in endo.commutant.iter().enumerate() {
        for a in module.actions() {
            commutes.record(x.mul(a) == a.mul(x), || format!("commutant basis element {i}"));
        }
        let mp = &endo.minimal_polynomials[i];
        let ok = x.eval_poly(mp).is_zero() && mp.degree().is_some_and(|d| d <= module.dim());
        algebraic.record(ok, || format!("minimal polynomial of commutant basis element {i}"));
    }
    let body = json!({
        "field": f.name(),
        "top_dim": module.dim(),
        "image_algebra_dim": simple.image_dim,
        "commutant": {
            "dim": endo.dim,
            "basis": endo.commutant.iter().map(matrix).collect::<Vec<_>>(),
            "minimal_polynomials": endo.minimal_polynomials.iter().map(|p| p.to_string_in("t")).collect::<Vec<_>>(),
        },
        "division": endo.division,
        "simple": simple,
        "absolutely_simple": endo.absolutely_simple,
        "image_semisimplicity": blocks,
    });
    Ok((vec![commutes, algebraic], body))
}

fn endo(cfg: &VoaConfig, opts: &Options) -> Result<(Vec<Check>, Value), CommandError> {
    let spec = opts
        .module
        .as_deref()
        .ok_or_else(|| CommandError::Usage("endo needs --module".into()))?;
    let degree = opts.max_degree.unwrap_or(2);
    let mc = parse_module(cfg, spec, cfg.truncation())?;
    let engine = ModeEngine::for_module(&mc);
    let module = top_level_module(&engine, degree)?;
    let (checks, mut body) = top_level_report(&module, opts.seed)?;
    body["module"] = json!(spec);
    body["zhu_degree"] = json!(degree);
    Ok((checks, body))
}

fn extend(cfg: &VoaConfig, opts: &Options) -> Result<(Vec<Check>, Value), CommandError> {
    let poly = opts
        .ext
        .as_deref()
        .ok_or_else(|| CommandError::Usage("extend needs --ext".into()))?;
    let k = extension_field(cfg.field(), poly)?;
    let n = cfg.truncation();
    let max_degree = opts.max_degree.unwrap_or(2);
    let mut checks = vec![
        check_voa_extension(cfg, &k, n.min(4))?,
        check_zhu_extension(cfg, &k, opts.level, max_degree, &budget(n))?,
    ];
    let module = match &opts.module {
        Some(spec) => {
            let mc = parse_module(cfg, spec, n.min(PROXY_TRUNCATION))?;
            let before = lemma36_check(&mc, cfg.field(), max_degree, opts.seed)?;
            let after = lemma36_check(&mc, &k, max_degree, opts.seed)?;
            let mut agree = Check::new("top-level simplicity agrees with the truncated proxy");
            for r in [&before, &after] {
                agree.record(r.agree, || format!("over {}", r.field));
            }
            checks.push(agree);
            json!({
                "spec": spec,
                "base": before,
                "extended": after,
            })
        }
        None => Value::Null,
    };
    let body = json!({
        "extension": k.name(),
        "degree": k.degree(),
        "level": opts.level,
        "zhu_degree": max_degree,
        "cutoffs": budget(n),
        "module": module,
    });
    Ok((checks, body))
}

fn expect_dims(name: &str, cfg: &VoaConfig, expected: &[usize]) -> Check {
    let e = ModeEngine::new(cfg);
    let got: Vec<usize> = (0..expected.len()).map(|w| e.voa_basis(w).len()).collect();
    let mut c = Check::new(name);
    c.record(got == expected, || format!("{got:?} != {expected:?}"));
    c
}

fn fail(name: &str, err: impl std::fmt::Display) -> Check {
    let mut c = Check::new(name);
    c.record(false, || err.to_string());
    c
}

/// Fixed battery of small fixtures covering every module.
fn selftest(opts: &Options) -> Outcome {
    let mut checks = Vec::new();
    let q = Field::rationals();
    let f5 = Field::prime(5).expect("prime");
    let f7 = Field::prime(7).expect("prime");
    let half = q.from_ratio(1, 2).expect("nonzero denominator");

    let vir = VoaConfig::virasoro(half, &q, 8).expect("valid");
    let heis = VoaConfig::heisenberg(1, &q, 5).expect("valid");
    checks.push(expect_dims("Virasoro weight dims", &vir, &[1, 0, 1, 1, 2, 2, 4, 4, 7]));
    checks.push(expect_dims("Heisenberg weight dims", &heis, &[1, 1, 2, 3, 5, 7]));

    for cfg in [
        VoaConfig::heisenberg(2, &f7, 4).expect("valid"),
        VoaConfig::virasoro(f7.from_i64(3), &f7, 4).expect("valid"),
        VoaConfig::affine_sl2(f7.one(), &f7, 3).expect("valid"),
    ] {
        for mut c in ModeEngine::new(&cfg).check_axioms(cfg.truncation()).checks {
            c.name = format!("{} over {}: {}", cfg.family_name(), f7.name(), c.name);
            checks.push(c);
        }
    }

    match ZhuAlgebra::compute(&vir.with_truncation(8), 0, 4, &[6, 8]) {
        Ok(a) => {
            let mut dims = Check::new("Virasoro Zhu algebra graded dims");
            dims.record(a.graded_dims() == [1, 0, 1, 0, 1], || format!("{:?}", a.graded_dims()));
            checks.extend([dims, a.check_commutative(), a.check_associative(), a.check_identity()]);
        }
        Err(e) => checks.push(fail("Virasoro Zhu algebra", e)),
    }

    let mut assoc = Check::new("radical and simplicity examples");
    let quad = SCAlgebra::polynomial_quotient(&f5, &[f5.from_i64(-2), f5.zero(), f5.one()]);
    let dual = SCAlgebra::polynomial_quotient(&q, &[q.zero(), q.zero(), q.one()]);
    let m2 = SCAlgebra::matrix_algebra(&f7, 2);
    match (quad, dual, m2) {
        (Ok(quad), Ok(dual), Ok(m2)) => {
            let rad = |a: &SCAlgebra| a.radical().map(|r| r.dim()).ok();
            assoc.record(rad(&dual) == Some(1), || "radical of Q[x]/(x^2)".into());
            assoc.record(rad(&m2) == Some(0), || "radical of M2(F7)".into());
            assoc.record(rad(&quad) == Some(0), || "radical of F5[x]/(x^2-2)".into());
            let regular = quad.regular_module();
            let simple = regular.is_simple(opts.seed).map(|v| v.simple).ok();
            assoc.record(simple == Some(true), || "F5[x]/(x^2-2) on itself".into());
            assoc.record(regular.is_absolutely_simple().ok() == Some(false), || "absolute simplicity".into());
            match crate::scalar_ext::extension_field(&f5, "t^2-2") {
                Ok(k) => {
                    let blocks = extend_algebra(&quad, &k).and_then(|a| Ok(a.is_semisimple()?.blocks));
                    assoc.record(blocks == Ok(Some(2)), || format!("blocks over F25: {blocks:?}"));
                    let ext_simple = extend_module(&regular, &k).and_then(|m| Ok(m.is_simple(opts.seed)?.simple));
                    assoc.record(ext_simple == Ok(false), || "extended module".into());
                }
                Err(e) => assoc.record(false, || e.to_string()),
            }
        }
        _ => assoc.record(false, || "fixture construction".into()),
    }
    checks.push(assoc);

    let heis5 = VoaConfig::heisenberg(1, &f5, 3).expect("valid");
    let mut lemma = Check::new("top-level simplicity agrees with the truncated proxy");
    for spec in ["fock:1", "companion:x^2-2"] {
        let result = parse_module(&heis5, spec, 3).map_err(|e| e.to_string()).and_then(|mc| {
            let k = extension_field(&f5, "t^2-2").map_err(|e| e.to_string())?;
            [f5.clone(), k]
                .iter()
                .map(|fld| lemma36_check(&mc, fld, 2, opts.seed).map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()
        });
        match result {
            Ok(rs) => {
                for r in rs {
                    lemma.record(r.agree, || format!("{spec} over {}", r.field));
                }
            }
            Err(e) => lemma.record(false, || e),
        }
    }
    checks.push(lemma);

    let body = json!({ "fixtures": checks.len() });
    finish(Command::Selftest, None, opts, checks, body)
}

#[cfg(test)]
mod tests;
