use proptest::prelude::*;

use zhu_core::assoc::{MatrixModule, SCAlgebra, PROBE_SEED};
use zhu_core::field::{Elem, Field};
use zhu_core::linalg::Matrix;
use zhu_core::poly;
use zhu_core::scalar_ext::lemma36_check;
use zhu_core::voa::{ModuleConfig, ModuleKind, VoaConfig};

fn fields() -> Vec<Field> {
    vec![
        Field::rationals(),
        Field::prime(7).unwrap(),
        Field::parse("F5[t]/(t^2-2)").unwrap(),
    ]
}

/// An element built from small integer coordinates in the field's power basis.
fn elem(f: &Field, coords: &[i64]) -> Elem {
    let mut x = f.zero();
    let mut g = f.one();
    let t = f.generator().unwrap_or_else(|| f.one());
    for &c in coords.iter().take(f.degree()) {
        x = f.add(&x, &f.mul(&g, &f.from_i64(c)));
        g = f.mul(&g, &t);
    }
    x
}

fn matrix(f: &Field, n: usize, entries: &[i64]) -> Matrix {
    Matrix::from_flat(f, n, n, entries.iter().take(n * n).map(|&e| f.from_i64(e)).collect())
}

fn prod_linear(f: &Field, roots: &[i64]) -> Vec<Elem> {
    roots.iter().fold(vec![f.one()], |acc, &r| poly::mul(f, &acc, &[f.from_i64(-r), f.one()]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(which in 0usize..3, a in prop::collection::vec(-9i64..9, 2),
                    b in prop::collection::vec(-9i64..9, 2), c in prop::collection::vec(-9i64..9, 2)) {
        let f = &fields()[which];
        let (a, b, c) = (elem(f, &a), elem(f, &b), elem(f, &c));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
        match f.inv(&a) {
            Some(i) => prop_assert!(f.is_one(&f.mul(&a, &i))),
            None => prop_assert!(f.is_zero(&a)),
        }
    }

    #[test]
    fn rank_nullity_and_kernel(which in 0usize..3, rows in 1usize..5, cols in 1usize..5,
                               entries in prop::collection::vec(-3i64..3, 16)) {
        let f = &fields()[which];
        let m = Matrix::from_flat(f, rows, cols, entries[..rows * cols].iter().map(|&e| f.from_i64(e)).collect());
        let kernel = m.kernel();
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| f.is_zero(x)));
        }
        let (r, rank, _) = m.rref();
        prop_assert_eq!(r.rref().0, r.clone());
        prop_assert_eq!(rank, m.transpose().rank());
    }

    #[test]
    fn minimal_polynomial_annihilates(which in 0usize..3, n in 1usize..5,
                                      entries in prop::collection::vec(-3i64..3, 16)) {
        let f = &fields()[which];
        let m = matrix(f, n, &entries);
        let p = m.minimal_polynomial();
        prop_assert!(m.eval_poly(&p).is_zero());
        let d = p.degree().unwrap();
        prop_assert!(d >= 1 && d <= n);
        prop_assert!(f.is_one(&p.coeffs[d]));
    }

    #[test]
    fn irreducibility_of_small_degree_over_f7(coeffs in prop::collection::vec(0i64..7, 2..4)) {
        // monic of degree 2 or 3: irreducible iff no root
        let f = Field::prime(7).unwrap();
        let mut p: Vec<Elem> = coeffs.iter().map(|&c| f.from_i64(c)).collect();
        p.push(f.one());
        let has_root = (0..7).any(|x| f.is_zero(&poly::eval(&f, &p, &f.from_i64(x))));
        prop_assert_eq!(poly::is_irreducible(&f, &p).unwrap(), !has_root);
    }

    #[test]
    fn radical_of_split_quotient(roots in prop::collection::vec(0i64..7, 1..5)) {
        let f = Field::prime(7).unwrap();
        let a = SCAlgebra::polynomial_quotient(&f, &prod_linear(&f, &roots)).unwrap();
        let mut distinct = roots.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let rad = a.radical().unwrap();
        prop_assert_eq!(rad.dim(), roots.len() - distinct.len());
        let s = a.is_semisimple().unwrap();
        prop_assert_eq!(s.semisimple, roots.len() == distinct.len());
        if s.semisimple {
            prop_assert_eq!(s.blocks, Some(distinct.len()));
        }
    }

    #[test]
    fn simplicity_is_invariant_under_change_of_basis(n in 2usize..4, i in 0usize..3, j in 0usize..3, c in 1i64..5,
                                                     a in prop::collection::vec(0i64..5, 9),
                                                     b in prop::collection::vec(0i64..5, 9)) {
        prop_assume!(i < n && j < n && i != j);
        let f = Field::prime(5).unwrap();
        let gens = vec![matrix(&f, n, &a), matrix(&f, n, &b)];
        let mut e = Matrix::identity(&f, n);
        e.set(i, j, f.from_i64(c));
        let mut e_inv = Matrix::identity(&f, n);
        e_inv.set(i, j, f.from_i64(-c));
        let conj: Vec<Matrix> = gens.iter().map(|g| e.mul(g).mul(&e_inv)).collect();
        let m = MatrixModule::new(&f, n, gens).unwrap();
        let mc = MatrixModule::new(&f, n, conj).unwrap();
        let (v, w) = (m.is_simple(PROBE_SEED).unwrap(), mc.is_simple(PROBE_SEED).unwrap());
        prop_assert_eq!(v.simple, w.simple);
        prop_assert_eq!(v.commutant_dim, w.commutant_dim);
        prop_assert_eq!(m.image_algebra().unwrap().len(), mc.image_algebra().unwrap().len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn top_and_truncated_module_agree_for_companion_tops(coeffs in prop::collection::vec(0i64..5, 1..3)) {
        // monic companion top of degree 1 or 2 over F5
        let f = Field::prime(5).unwrap();
        let mut p: Vec<i64> = coeffs.clone();
        p.push(1);
        let n = p.len() - 1;
        let mut c = Matrix::zeros(&f, n, n);
        for k in 1..n {
            c.set(k, k - 1, f.one());
        }
        for k in 0..n {
            c.set(k, n - 1, f.from_i64(-p[k]));
        }
        let cfg = VoaConfig::heisenberg(1, &f, 3).unwrap();
        let mc = ModuleConfig::new(&cfg, ModuleKind::HeisenbergTop { zero_modes: vec![c] }, 3).unwrap();
        let r = lemma36_check(&mc, &f, 2, PROBE_SEED).unwrap();
        let pe: Vec<Elem> = p.iter().map(|&x| f.from_i64(x)).collect();
        let has_root = (0..5).any(|x| f.is_zero(&poly::eval(&f, &pe, &f.from_i64(x))));
        prop_assert_eq!(r.top_simple.simple, n == 1 || !has_root);
        prop_assert!(r.agree);
    }
}
