use super::*;
use crate::assoc::PROBE_SEED;
use crate::voa::ModuleKind;

fn f5() -> Field {
    Field::prime(5).unwrap()
}

fn f25() -> Field {
    extension_field(&f5(), "t^2-2").unwrap()
}

fn f625() -> Field {
    let k = f25();
    let t = k.generator().unwrap();
    // s^2 - t: t is a non-square in F25 since t^12 = 2^6 = -1
    Field::extension(&k, vec![k.neg(&t), k.zero(), k.one()], "s").unwrap()
}

fn quadratic() -> SCAlgebra {
    let f = f5();
    SCAlgebra::polynomial_quotient(&f, &[f.from_i64(-2), f.zero(), f.one()]).unwrap()
}

#[test]
fn extension_requests() {
    let q = Field::rationals();
    assert_eq!(extension_field(&q, "t^2+1").unwrap().degree(), 2);
    assert!(matches!(extension_field(&q, "t^5-2"), Err(ExtError::Unsupported(_))));
    assert!(matches!(extension_field(&q, "x^2-2x+1"), Err(ExtError::Unsupported(_))));
    assert!(matches!(extension_field(&f5(), "t^2-1"), Err(ExtError::InvalidRequest(_))));
    assert!(matches!(extension_field(&f5(), "3"), Err(ExtError::InvalidRequest(_))));
    assert!(matches!(
        extend_algebra(&quadratic(), &Field::rationals()),
        Err(ExtError::NotAnExtension { .. })
    ));
}

#[test]
fn quadratic_field_splits_over_f25() {
    let a = quadratic();
    let k = f25();
    let ak = extend_algebra(&a, &k).unwrap();
    assert_eq!(ak.dim(), a.dim());
    assert_eq!(ak.identity(), &[k.one(), k.zero()][..]);
    let s = ak.is_semisimple().unwrap();
    assert!(s.semisimple);
    assert_eq!(s.blocks, Some(2));
    assert_eq!(a.is_semisimple().unwrap().blocks, Some(1));

    let m = extend_module(&a.regular_module(), &k).unwrap();
    assert!(!m.is_simple(PROBE_SEED).unwrap().simple);
    assert_eq!(m.image_blocks().unwrap().blocks, Some(2));
}

#[test]
fn extension_is_functorial() {
    let a = quadratic();
    let (k, l) = (f25(), f625());
    let stepwise = extend_algebra(&extend_algebra(&a, &k).unwrap(), &l).unwrap();
    assert_eq!(stepwise, extend_algebra(&a, &l).unwrap());
    let m = a.regular_module();
    assert_eq!(
        extend_module(&extend_module(&m, &k).unwrap(), &l).unwrap(),
        extend_module(&m, &l).unwrap()
    );
}

#[test]
fn commutant_grows_exactly_when_not_absolutely_simple() {
    let f = f5();
    let k = f25();
    let fixtures = vec![
        quadratic().regular_module(),
        MatrixModule::new(&f, 1, vec![Matrix::from_i64(&f, &[&[3]])]).unwrap(),
        MatrixModule::new(&f, 2, vec![Matrix::from_i64(&f, &[&[0, 1], &[0, 0]]), Matrix::from_i64(&f, &[&[0, 0], &[1, 0]])]).unwrap(),
    ];
    for m in fixtures {
        let before = m.commutant().unwrap();
        let after = extend_module(&m, &k).unwrap().commutant().unwrap();
        let span = Subspace::span(&k, m.dim() * m.dim(), &after.iter().map(|x| x.data().to_vec()).collect::<Vec<_>>()).unwrap();
        for c in &before {
            assert!(span.member(c.embed(&k).unwrap().data()).unwrap());
        }
        // dimension of the commutant is stable under extension
        assert_eq!(before.len(), after.len());
        if m.is_absolutely_simple().unwrap() {
            assert!(extend_module(&m, &k).unwrap().is_simple(PROBE_SEED).unwrap().simple);
        }
    }
}

#[test]
fn voa_extension_over_gaussian_rationals() {
    let q = Field::rationals();
    let k = extension_field(&q, "x^2+1").unwrap();
    let cfg = VoaConfig::heisenberg(1, &q, 6).unwrap();
    let ext = extend_voa(&cfg, &k).unwrap();
    let (e0, e1) = (ModeEngine::new(&cfg), ModeEngine::new(&ext));
    for w in 0..=6 {
        assert_eq!(e0.basis(w).unwrap().len(), e1.basis(w).unwrap().len());
    }
    let c = check_voa_extension(&cfg, &k, 4).unwrap();
    assert!(c.passed && c.cases > 0, "{c:?}");
}

#[test]
fn virasoro_axioms_survive_extension() {
    let f = f5();
    let cfg = VoaConfig::virasoro(f.from_i64(3), &f, 6).unwrap();
    let ext = extend_voa(&cfg, &f25()).unwrap();
    let a = ModeEngine::new(&cfg).check_axioms(6);
    let b = ModeEngine::new(&ext).check_axioms(6);
    assert!(a.all_passed() && b.all_passed());
    assert_eq!(
        a.checks.iter().map(|c| c.cases).collect::<Vec<_>>(),
        b.checks.iter().map(|c| c.cases).collect::<Vec<_>>()
    );
    assert!(check_voa_extension(&cfg, &f25(), 4).unwrap().passed);
}

fn fock(lambda: i64) -> ModuleConfig {
    let f = f5();
    let cfg = VoaConfig::heisenberg(1, &f, 4).unwrap();
    ModuleConfig::new(&cfg, ModuleKind::HeisenbergFock { lambda: vec![f.from_i64(lambda)] }, 4).unwrap()
}

fn companion_top(truncation: usize) -> ModuleConfig {
    let f = f5();
    let cfg = VoaConfig::heisenberg(1, &f, 4).unwrap();
    let x = Matrix::from_i64(&f, &[&[0, 2], &[1, 0]]);
    ModuleConfig::new(&cfg, ModuleKind::HeisenbergTop { zero_modes: vec![x] }, truncation).unwrap()
}

#[test]
fn top_criterion_on_fock_space() {
    for k in [f5(), f25()] {
        let r = lemma36_check(&fock(1), &k, 2, PROBE_SEED).unwrap();
        assert!(r.top_simple.simple, "{r:?}");
        assert!(r.module.irreducible, "{r:?}");
        assert_eq!(r.module.commutant_dim, 1);
        assert!(r.agree);
        assert_eq!(r.module.label, PROXY_LABEL);
    }
}

#[test]
fn top_criterion_flips_together_for_the_quadratic_top() {
    let m = companion_top(3);
    let base = lemma36_check(&m, &f5(), 2, PROBE_SEED).unwrap();
    assert!(base.top_simple.simple && base.module.irreducible, "{base:?}");
    assert_eq!(base.top_simple.commutant_dim, 2);
    assert_eq!(base.top_blocks, Some(1));
    let ext = lemma36_check(&m, &f25(), 2, PROBE_SEED).unwrap();
    assert!(!ext.top_simple.simple && !ext.module.irreducible, "{ext:?}");
    assert_eq!(ext.top_blocks, Some(2));
    assert!(base.agree && ext.agree);
}

#[test]
fn fock_space_over_f5_is_reducible_at_weight_five() {
    // h(5) h(-5)|λ> = 5 |λ> = 0 in characteristic 5
    let f = f5();
    let cfg = VoaConfig::heisenberg(1, &f, 5).unwrap();
    let m = ModuleConfig::new(&cfg, ModuleKind::HeisenbergFock { lambda: vec![f.one()] }, 5).unwrap();
    let r = lemma36_check(&m, &f, 2, PROBE_SEED).unwrap();
    assert!(r.top_simple.simple);
    assert!(!r.module.no_singular_vectors);
    assert!(!r.agree);
}
