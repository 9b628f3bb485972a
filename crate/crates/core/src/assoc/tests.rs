use super::*;

fn p(field: &Field, c: &[i64]) -> Vec<Elem> {
    c.iter().map(|&x| field.from_i64(x)).collect()
}

fn dual_numbers() -> SCAlgebra {
    let q = Field::rationals();
    SCAlgebra::polynomial_quotient(&q, &p(&q, &[0, 0, 1])).unwrap()
}

fn f5_quadratic() -> SCAlgebra {
    let f = Field::prime(5).unwrap();
    SCAlgebra::polynomial_quotient(&f, &p(&f, &[-2, 0, 1])).unwrap()
}

fn m2_f7() -> SCAlgebra {
    SCAlgebra::matrix_algebra(&Field::prime(7).unwrap(), 2).unwrap()
}

fn column_module(n: usize, f: &Field) -> MatrixModule {
    let units = (0..n * n)
        .map(|k| {
            let mut m = Matrix::zeros(f, n, n);
            m.set(k / n, k % n, f.one());
            m
        })
        .collect();
    MatrixModule::for_algebra(&SCAlgebra::matrix_algebra(f, n).unwrap(), units).unwrap()
}

#[test]
fn radical_examples() {
    let a = dual_numbers();
    let q = a.field().clone();
    let rad = a.radical().unwrap();
    assert_eq!(rad.dim(), 1);
    assert_eq!(rad.basis()[0], vec![q.zero(), q.one()]);
    assert_eq!(m2_f7().radical().unwrap().dim(), 0);
    assert_eq!(f5_quadratic().radical().unwrap().dim(), 0);
}

#[test]
fn semisimplicity_and_blocks() {
    let m2 = m2_f7().is_semisimple().unwrap();
    assert!(m2.semisimple);
    assert_eq!((m2.center_dim, m2.blocks), (Some(1), Some(1)));
    assert!(!dual_numbers().is_semisimple().unwrap().semisimple);
    let fq = f5_quadratic().is_semisimple().unwrap();
    assert!(fq.semisimple);
    assert_eq!(fq.blocks, Some(1));
    // Q[x]/(x^2 - 1) = Q x Q splits
    let q = Field::rationals();
    let split = SCAlgebra::polynomial_quotient(&q, &p(&q, &[-1, 0, 1])).unwrap();
    assert_eq!(split.is_semisimple().unwrap().blocks, Some(2));
    // Q[x]/(x^2 + 1) is a field but its centre does not split: no count
    let gauss = SCAlgebra::polynomial_quotient(&q, &p(&q, &[1, 0, 1])).unwrap();
    let g = gauss.is_semisimple().unwrap();
    assert!(g.semisimple);
    assert_eq!(g.blocks, None);
}

#[test]
fn small_characteristic_is_unsupported() {
    let f = Field::prime(3).unwrap();
    let a = SCAlgebra::polynomial_quotient(&f, &p(&f, &[0, 0, 0, 1])).unwrap();
    assert!(matches!(a.radical(), Err(AssocError::Unsupported(_))));
    assert!(matches!(a.is_semisimple(), Err(AssocError::Unsupported(_))));
}

#[test]
fn construction_rejects_bad_tables() {
    let f = Field::prime(7).unwrap();
    // b1 b1 = b0 + b1 with b0 not a unit
    let mut c = vec![vec![vec![f.zero(); 2]; 2]; 2];
    c[0][0][0] = f.one();
    c[1][1] = vec![f.one(), f.one()];
    assert!(SCAlgebra::new(&f, c, vec![f.one(), f.zero()]).is_err());
    assert!(SCAlgebra::new(&f, Vec::new(), Vec::new()).is_err());
}

#[test]
fn endomorphisms_of_regular_modules() {
    let a = f5_quadratic();
    let f = a.field().clone();
    let r = a.regular_module().endomorphisms(PROBE_SEED).unwrap();
    assert_eq!(r.dim, 2);
    assert!(r.division.is_division);
    assert!(!r.absolutely_simple);
    // right multiplication by x commutes with the action; its min poly is t^2 - 2
    let x = a.left_mult(&a.unit_vector(1));
    let flat: Vec<Vec<Elem>> = r.commutant.iter().map(|m| m.data().to_vec()).collect();
    assert!(Subspace::span(&f, 4, &flat).unwrap().member(x.data()).unwrap());
    assert_eq!(x.minimal_polynomial(), Poly::from_i64(&f, &[-2, 0, 1]));
    for (m, mp) in r.commutant.iter().zip(&r.minimal_polynomials) {
        assert!(m.eval_poly(mp).is_zero());
        assert!(mp.degree().unwrap() <= 2);
    }

    let d = dual_numbers().regular_module().endomorphisms(PROBE_SEED).unwrap();
    assert_eq!(d.dim, 2);
    assert!(!d.division.is_division);
    assert_eq!(d.division.method, ProbeMethod::Probabilistic);
    assert!(d.division.witness.is_some());
}

#[test]
fn simplicity_examples() {
    let fq = f5_quadratic().regular_module();
    let v = fq.is_simple(PROBE_SEED).unwrap();
    assert!(v.simple);
    assert_eq!(v.method, SimplicityMethod::TraceForm);
    assert!(!fq.is_absolutely_simple().unwrap());

    let d = dual_numbers().regular_module().is_simple(PROBE_SEED).unwrap();
    assert!(!d.simple);
    assert_eq!(d.radical_dim, Some(1));

    let col = column_module(2, &Field::prime(7).unwrap());
    assert!(col.is_simple(PROBE_SEED).unwrap().simple);
    assert!(col.is_absolutely_simple().unwrap());

    let one = MatrixModule::new(&Field::rationals(), 1, vec![Matrix::from_i64(&Field::rationals(), &[&[3]])]).unwrap();
    assert!(one.is_simple(PROBE_SEED).unwrap().simple);
    assert!(one.is_absolutely_simple().unwrap());
}

#[test]
fn density_route_in_small_characteristic() {
    let f = Field::prime(3).unwrap();
    // x^4 + x + 2 is irreducible over F3: F81 acting on itself
    let m = MatrixModule::companion(&f, &p(&f, &[2, 1, 0, 0, 1])).unwrap();
    let v = m.is_simple(PROBE_SEED).unwrap();
    assert_eq!(v.method, SimplicityMethod::Density);
    assert!(v.simple);
    assert_eq!(v.commutant_dim, 4);
    // (x^2 + 1)^2 is not
    let m = MatrixModule::companion(&f, &p(&f, &[1, 0, 2, 0, 1])).unwrap();
    assert!(!m.is_simple(PROBE_SEED).unwrap().simple);
}

#[test]
fn from_matrices_round_trip() {
    let f = Field::prime(5).unwrap();
    let x = Matrix::from_i64(&f, &[&[0, 2], &[1, 0]]);
    let (alg, module) = SCAlgebra::from_matrices(&f, 2, &[x]).unwrap();
    assert_eq!(alg.dim(), 2);
    assert_eq!(module.dim(), 2);
    assert_eq!(alg.is_semisimple().unwrap().blocks, Some(1));
}

#[test]
fn cyclic_submodules() {
    let f = Field::prime(5).unwrap();
    let m = MatrixModule::new(&f, 2, vec![Matrix::from_i64(&f, &[&[1, 1], &[0, 1]])]).unwrap();
    assert_eq!(m.cyclic_submodule(&p(&f, &[1, 0])).unwrap().dim(), 1);
    assert_eq!(m.cyclic_submodule(&p(&f, &[0, 1])).unwrap().dim(), 2);
}
