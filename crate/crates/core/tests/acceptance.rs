//! Acceptance run: one PASS/FAIL line per criterion. All arithmetic is
//! exact, so every tolerance is zero.

use std::process::ExitCode;
use std::rc::Rc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zhu_core::assoc::{MatrixModule, PROBE_SEED};
use zhu_core::commands::{run, Command, Options};
use zhu_core::field::{Elem, Field};
use zhu_core::linalg::Matrix;
use zhu_core::scalar_ext::{check_zhu_extension, extend_module, lemma36_check, top_level_module};
use zhu_core::voa::{ModeEngine, ModuleConfig, ModuleKind, VoaConfig};
use zhu_core::zhu::{C2Algebra, PhiReport, ZhuAlgebra};

const TOLERANCE: &str = "exact (tolerance 0)";
const BUDGET: [usize; 4] = [6, 8, 10, 12];

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Outcome {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

/// Counts failures and remembers the first one.
#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn outcome(self, unit: &str) -> Outcome {
        let passed = self.failures.is_empty() && self.cases > 0;
        let detail = match self.failures.first() {
            None => format!("{} {unit}", self.cases),
            Some(f) => format!("{}/{} {unit} failed, first: {f}", self.failures.len(), self.cases),
        };
        Outcome::new(passed, detail)
    }
}

fn q() -> Field {
    Field::rationals()
}

fn f5() -> Field {
    Field::prime(5).unwrap()
}

fn f25() -> Field {
    Field::parse("F5[t]/(t^2-2)").unwrap()
}

fn choose(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

fn criterion_axioms() -> Outcome {
    let mut t = Tally::default();
    let fields = [q(), f5(), Field::prime(7).unwrap(), f25()];
    for f in &fields {
        let half = f.from_ratio(1, 2).unwrap();
        let configs = [
            VoaConfig::heisenberg(1, f, 6).unwrap(),
            VoaConfig::heisenberg(2, f, 6).unwrap(),
            VoaConfig::virasoro(half, f, 6).unwrap(),
            VoaConfig::affine_sl2(f.one(), f, 6).unwrap(),
        ];
        for cfg in &configs {
            let report = ModeEngine::new(cfg).check_axioms(6);
            for c in &report.checks {
                t.cases += c.cases.saturating_sub(1);
                t.check(c.passed, || {
                    format!("{} over {}: {} ({:?})", cfg.family_name(), f.name(), c.name, c.counterexample)
                });
            }
        }
    }
    // the Virasoro guard in characteristic 3
    let f3 = Field::prime(3).unwrap();
    t.check(VoaConfig::virasoro(f3.one(), &f3, 6).is_err(), || "Virasoro over F3 accepted".into());
    t.outcome("axiom instances")
}

struct Computed {
    virasoro: Vec<ZhuAlgebra>,
    heisenberg: Vec<ZhuAlgebra>,
    affine: ZhuAlgebra,
}

fn compute_zhu() -> Computed {
    let f = q();
    let virasoro = [f.from_ratio(1, 2).unwrap(), f.from_ratio(-22, 5).unwrap(), f.from_i64(1)]
        .into_iter()
        .map(|c| ZhuAlgebra::compute(&VoaConfig::virasoro(c, &f, 12).unwrap(), 0, 8, &BUDGET).unwrap())
        .collect();
    let heisenberg = [1, 2]
        .into_iter()
        .map(|r| ZhuAlgebra::compute(&VoaConfig::heisenberg(r, &f, 12).unwrap(), 0, 5, &BUDGET).unwrap())
        .collect();
    let affine = ZhuAlgebra::compute(&VoaConfig::affine_sl2(f.one(), &f, 12).unwrap(), 0, 3, &BUDGET).unwrap();
    Computed {
        virasoro,
        heisenberg,
        affine,
    }
}

fn criterion_commutative(z: &Computed) -> Outcome {
    let mut t = Tally::default();
    for a in &z.virasoro {
        let expected: Vec<usize> = (0..=8).map(|d| usize::from(d % 2 == 0)).collect();
        t.check(a.is_stabilized(), || "Virasoro did not stabilize through degree 8".into());
        t.check(a.graded_dims() == expected, || format!("Virasoro gr dims {:?}", a.graded_dims()));
        let c = a.check_commutative();
        t.check(c.passed, || format!("Virasoro commutativity: {:?}", c.counterexample));
    }
    for (r, a) in [1u64, 2].iter().zip(&z.heisenberg) {
        let expected: Vec<usize> = (0..=5).map(|d| choose(d + r - 1, r - 1) as usize).collect();
        t.check(a.is_stabilized(), || format!("Heisenberg rank {r} did not stabilize"));
        t.check(a.graded_dims() == expected, || format!("Heisenberg rank {r} gr dims {:?}", a.graded_dims()));
        let c = a.check_commutative();
        t.check(c.passed, || format!("Heisenberg rank {r} commutativity: {:?}", c.counterexample));
    }
    t.outcome("dimension/commutativity checks")
}

fn criterion_affine(z: &Computed) -> Outcome {
    let a = &z.affine;
    let expected: Vec<usize> = (0..=3).map(|d| choose(d + 2, 2) as usize).collect();
    let ok = a.is_stabilized() && a.graded_dims() == expected;
    Outcome::new(ok, format!("gr dims {:?} vs {:?}, cutoffs {:?}", a.graded_dims(), expected, a.cutoffs()))
}

fn criterion_associative(z: &Computed) -> Outcome {
    let mut t = Tally::default();
    let all = z.virasoro.iter().chain(&z.heisenberg).chain(std::iter::once(&z.affine));
    for a in all {
        for c in [a.check_associative(), a.check_identity(), a.check_commutator_congruence()] {
            t.cases += c.cases.saturating_sub(1);
            t.check(c.passed, || format!("{}: {:?}", c.name, c.counterexample));
        }
    }
    t.outcome("triples/pairs")
}

fn criterion_phi(z: &Computed) -> Outcome {
    let mut t = Tally::default();
    let all = [&z.virasoro[0], &z.heisenberg[1], &z.affine];
    for a in all {
        let degree = a.degree().unwrap();
        let c2 = C2Algebra::build(Rc::clone(a.truncation().engine()), degree);
        let report = PhiReport::check(a, &c2);
        t.check(report.degree == Some(degree), || "phi not evaluated".into());
        for c in &report.checks {
            t.cases += c.cases.saturating_sub(1);
            t.check(c.passed && c.cases > 0, || format!("{}: {:?}", c.name, c.counterexample));
        }
    }
    t.outcome("phi instances")
}

fn companion_module(f: &Field, poly: &[i64], truncation: usize) -> ModuleConfig {
    let cfg = VoaConfig::heisenberg(1, f, truncation).unwrap();
    let n = poly.len() - 1;
    let mut c = Matrix::zeros(f, n, n);
    for i in 1..n {
        c.set(i, i - 1, f.one());
    }
    for i in 0..n {
        c.set(i, n - 1, f.from_i64(-poly[i]));
    }
    ModuleConfig::new(&cfg, ModuleKind::HeisenbergTop { zero_modes: vec![c] }, truncation).unwrap()
}

fn fock(f: &Field, lambda: i64) -> ModuleConfig {
    let cfg = VoaConfig::heisenberg(1, f, 4).unwrap();
    ModuleConfig::new(&cfg, ModuleKind::HeisenbergFock { lambda: vec![f.from_i64(lambda)] }, 4).unwrap()
}

fn fixture_modules() -> Vec<(String, ModuleConfig)> {
    let mut out = Vec::new();
    for f in [q(), f5()] {
        for l in [0, 1, 2] {
            out.push((format!("Fock {l} over {}", f.name()), fock(&f, l)));
        }
        let vir = VoaConfig::virasoro(f.from_ratio(1, 2).unwrap(), &f, 4).unwrap();
        for h in [0, 1] {
            out.push((
                format!("Verma h={h} over {}", f.name()),
                ModuleConfig::new(&vir, ModuleKind::VirasoroVerma { h: f.from_i64(h) }, 4).unwrap(),
            ));
        }
        let aff = VoaConfig::affine_sl2(f.one(), &f, 4).unwrap();
        for d in 1..=3 {
            out.push((
                format!("Weyl d={d} over {}", f.name()),
                ModuleConfig::new(&aff, ModuleKind::Sl2Weyl { top_dim: d }, 4).unwrap(),
            ));
        }
    }
    out.push(("F5[x]/(x^2-2) top".into(), companion_module(&f5(), &[-2, 0, 1], 4)));
    out.push(("Q[x]/(x^2+1) top".into(), companion_module(&q(), &[1, 0, 1], 4)));
    out
}

fn criterion_endo() -> Outcome {
    let mut t = Tally::default();
    // (a), (b): algebraicity and finite commutants on every fixture
    for (name, mc) in fixture_modules() {
        let engine = ModeEngine::for_module(&mc);
        let m = top_level_module(&engine, 2).unwrap();
        let r = m.endomorphisms(PROBE_SEED).unwrap();
        t.check(r.dim >= 1 && r.dim <= m.dim() * m.dim(), || format!("{name}: commutant dim {}", r.dim));
        for (x, mp) in r.commutant.iter().zip(&r.minimal_polynomials) {
            let ok = x.eval_poly(mp).is_zero() && mp.degree().is_some_and(|d| d >= 1 && d <= m.dim());
            t.check(ok, || format!("{name}: minimal polynomial {}", mp.to_string_in("t")));
            for a in m.actions() {
                t.check(x.mul(a) == a.mul(x), || format!("{name}: commutant element does not commute"));
            }
        }
    }
    // (c): Fock spaces with one-dimensional top
    for f in [q(), f5()] {
        let mc = fock(&f, 1);
        let m = top_level_module(&ModeEngine::for_module(&mc), 2).unwrap();
        let r = m.endomorphisms(PROBE_SEED).unwrap();
        t.check(r.dim == 1 && r.absolutely_simple, || format!("Fock over {}: dim {}", f.name(), r.dim));
        t.check(m.is_absolutely_simple().unwrap(), || "Fock absolute simplicity".into());
    }
    // (d): the quadratic top over F5 and F25
    let mc = companion_module(&f5(), &[-2, 0, 1], 3);
    let m = top_level_module(&ModeEngine::for_module(&mc), 2).unwrap();
    let simple = m.is_simple(PROBE_SEED).unwrap();
    t.check(simple.simple, || "F5[x]/(x^2-2) top not simple".into());
    t.check(simple.commutant_dim == 2, || format!("commutant dim {}", simple.commutant_dim));
    t.check(!m.is_absolutely_simple().unwrap(), || "reported absolutely simple".into());
    let k = f25();
    let mk = extend_module(&m, &k).unwrap();
    t.check(!mk.is_simple(PROBE_SEED).unwrap().simple, || "extension still simple".into());
    t.check(mk.image_blocks().unwrap().blocks == Some(2), || "extension does not have 2 blocks".into());
    for (fld, simple) in [(f5(), true), (k, false)] {
        let r = lemma36_check(&mc, &fld, 2, PROBE_SEED).unwrap();
        t.check(
            r.agree && r.top_simple.simple == simple && r.module.irreducible == simple,
            || format!("top/module verdicts over {}: {:?} {:?}", fld.name(), r.top_simple.simple, r.module.irreducible),
        );
    }
    t.outcome("endomorphism checks")
}

fn residues(m: &Matrix) -> Vec<Vec<u64>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| match m.get(i, j) {
                    Elem::Mod(x) => *x,
                    other => panic!("not a prime-field entry: {other:?}"),
                })
                .collect()
        })
        .collect()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    (1..p).find(|x| a * x % p == 1).unwrap()
}

/// Dimension of the smallest subspace containing `v` and stable under `gens`.
fn spin_dim(gens: &[Vec<Vec<u64>>], v: Vec<u64>, p: u64) -> usize {
    let d = v.len();
    let mut rows: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut queue = vec![v];
    while let Some(mut w) = queue.pop() {
        for (piv, r) in &rows {
            let c = w[*piv];
            if c != 0 {
                for k in 0..d {
                    w[k] = (w[k] + (p - c) * r[k]) % p;
                }
            }
        }
        let Some(piv) = w.iter().position(|&x| x != 0) else {
            continue;
        };
        let inv = inv_mod(w[piv], p);
        let w: Vec<u64> = w.iter().map(|x| x * inv % p).collect();
        for (_, r) in rows.iter_mut() {
            let c = r[piv];
            if c != 0 {
                for k in 0..d {
                    r[k] = (r[k] + (p - c) * w[k]) % p;
                }
            }
        }
        for g in gens {
            queue.push((0..d).map(|i| (0..d).map(|j| g[i][j] * w[j]).sum::<u64>() % p).collect());
        }
        rows.push((piv, w));
    }
    rows.len()
}

/// Simple iff every nonzero vector generates the whole module.
fn brute_force_simple(m: &MatrixModule, p: u64) -> bool {
    let gens: Vec<Vec<Vec<u64>>> = m.actions().iter().map(residues).collect();
    let d = m.dim();
    let total = p.pow(d as u32);
    (1..total).all(|code| {
        let v: Vec<u64> = (0..d).map(|i| code / p.pow(i as u32) % p).collect();
        spin_dim(&gens, v, p) == d
    })
}

fn oracle_modules() -> Vec<(String, MatrixModule)> {
    let mut out = Vec::new();
    let polys: [&[i64]; 9] = [
        &[1, 0, 1],
        &[-1, 0, 1],
        &[0, 0, 1],
        &[-2, 0, 1],
        &[1, 1, 1],
        &[1, -1, 0, 1],
        &[0, 0, 0, 1],
        &[2, 1, 0, 0, 1],
        &[1, 0, 2, 0, 1],
    ];
    for p in [3u64, 5] {
        let f = Field::prime(p).unwrap();
        let add = |out: &mut Vec<(String, MatrixModule)>, name: String, mc: &ModuleConfig| {
            let m = top_level_module(&ModeEngine::for_module(mc), 2).unwrap();
            out.push((name, m));
        };
        for l in [0, 1] {
            add(&mut out, format!("Fock {l} over F{p}"), &fock(&f, l));
        }
        for poly in polys {
            add(&mut out, format!("companion {poly:?} over F{p}"), &companion_module(&f, poly, 2));
        }
        // level 0 keeps k + 2 invertible in characteristic 3
        let aff = VoaConfig::affine_sl2(f.zero(), &f, 2).unwrap();
        for d in 1..=4 {
            let mc = ModuleConfig::new(&aff, ModuleKind::Sl2Weyl { top_dim: d }, 2).unwrap();
            add(&mut out, format!("Weyl d={d} over F{p}"), &mc);
        }
        // rank-2 Heisenberg tops with commuting zero modes
        let h2 = VoaConfig::heisenberg(2, &f, 2).unwrap();
        let x = Matrix::from_i64(&f, &[&[0, 2], &[1, 0]]);
        let tops = [
            vec![x.clone(), x.mul(&x)],
            vec![Matrix::from_i64(&f, &[&[1, 0], &[0, 2]]), Matrix::identity(&f, 2)],
            vec![Matrix::from_i64(&f, &[&[1, 1], &[0, 1]]), Matrix::identity(&f, 2)],
        ];
        for (i, zm) in tops.into_iter().enumerate() {
            let mc = ModuleConfig::new(&h2, ModuleKind::HeisenbergTop { zero_modes: zm }, 2).unwrap();
            add(&mut out, format!("rank-2 top #{i} over F{p}"), &mc);
        }
        // seeded random pairs of matrices, sometimes block triangular
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97 + p);
        for i in 0..6 {
            let d = 2 + i % 3;
            let mut gens = Vec::new();
            for _ in 0..2 {
                let mut g = Matrix::zeros(&f, d, d);
                for r in 0..d {
                    for c in 0..d {
                        if i % 2 == 0 || !(r >= d / 2 && c < d / 2) {
                            g.set(r, c, f.from_i64(rng.gen_range(0..p as i64)));
                        }
                    }
                }
                gens.push(g);
            }
            out.push((format!("random #{i} over F{p}"), MatrixModule::new(&f, d, gens).unwrap()));
        }
    }
    out
}

fn criterion_oracle() -> Outcome {
    let mut t = Tally::default();
    let mut simple_count = 0;
    for (name, m) in oracle_modules() {
        assert!(m.dim() <= 4, "{name} exceeds dimension 4");
        let p = m.field().characteristic();
        let expected = brute_force_simple(&m, p);
        let got = m.is_simple(PROBE_SEED).unwrap().simple;
        simple_count += usize::from(expected);
        t.check(got == expected, || format!("{name}: verdict {got}, oracle {expected}"));
    }
    let mut o = t.outcome("modules agree");
    o.passed &= simple_count > 0;
    o.detail = format!("{} ({simple_count} simple)", o.detail);
    o
}

fn criterion_functoriality() -> Outcome {
    let mut t = Tally::default();
    let f = f5();
    let k = f25();
    let cfg = VoaConfig::heisenberg(1, &f, 8).unwrap();
    for level in [0, 1] {
        let c = check_zhu_extension(&cfg, &k, level, 4, &[6, 8]).unwrap();
        t.cases += c.cases.saturating_sub(1);
        t.check(c.passed && c.cases > 3, || format!("level {level}: {:?}", c.counterexample));
    }
    t.outcome("structure constants")
}

fn criterion_determinism() -> Outcome {
    let opts = Options::default();
    let first = run(Command::Selftest, None, &opts).unwrap();
    let second = run(Command::Selftest, None, &opts).unwrap();
    let (a, b) = (first.render(), second.render());
    Outcome::new(a == b && !a.is_empty(), format!("{} bytes, selftest status {:?}", a.len(), first.status))
}

fn main() -> ExitCode {
    let mut all = true;
    let mut report = |n: usize, name: &str, run: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let o = run();
        all &= o.passed;
        println!(
            "criterion {n} [{name}]: {} ({}; {TOLERANCE}; {:.1}s)",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    };
    report(1, "axiom suite", &criterion_axioms);
    let z = compute_zhu();
    report(2, "Zhu commutativity and graded dims", &|| criterion_commutative(&z));
    report(3, "affine sl2 graded dims", &|| criterion_affine(&z));
    report(4, "associativity, identity, commutator congruence", &|| criterion_associative(&z));
    report(5, "phi epimorphism", &|| criterion_phi(&z));
    report(6, "endomorphism theorems", &criterion_endo);
    report(7, "simplicity vs brute-force oracle", &criterion_oracle);
    report(8, "scalar-extension functoriality", &criterion_functoriality);
    report(9, "selftest determinism", &criterion_determinism);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
