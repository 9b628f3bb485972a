//! Finite-dimensional associative algebras given by structure constants,
//! modules given by action matrices, and the decision procedures built on
//! them: radicals, semisimplicity, commutants and simplicity verdicts.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::field::{Elem, Field, FieldError, FieldKind};
use crate::linalg::{commutant, DependencyTracker, LinalgError, Matrix, Subspace};
use crate::poly::{self, Poly};
use crate::zhu::ZhuAlgebra;

/// Default seed for the random division probes.
pub const PROBE_SEED: u64 = 0x5EED;

/// Number of random combinations probed on top of the basis.
pub const RANDOM_PROBES: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssocError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Associative unital algebra with basis `b_0..b_{n-1}` and
/// `b_i b_j = Σ_k c[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SCAlgebra {
    field: Field,
    consts: Vec<Vec<Vec<Elem>>>,
    identity: Vec<Elem>,
}

impl SCAlgebra {
    /// Validates shapes, associativity on every basis triple, and that
    /// `identity` is a two-sided unit.
    pub fn new(field: &Field, consts: Vec<Vec<Vec<Elem>>>, identity: Vec<Elem>) -> Result<SCAlgebra, AssocError> {
        let n = consts.len();
        if n == 0 {
            return Err(AssocError::Invalid("zero-dimensional algebra".into()));
        }
        if identity.len() != n || consts.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
            return Err(AssocError::Invalid("structure constants are not n x n x n".into()));
        }
        let a = SCAlgebra {
            field: field.clone(),
            consts,
            identity,
        };
        if let Some((i, j, k)) = a.associativity_failure() {
            return Err(AssocError::Invalid(format!("(b{i} b{j}) b{k} != b{i} (b{j} b{k})")));
        }
        for i in 0..n {
            let b = a.unit_vector(i);
            if a.mul(&a.identity, &b) != b || a.mul(&b, &a.identity) != b {
                return Err(AssocError::Invalid(format!("identity fails on b{i}")));
            }
        }
        Ok(a)
    }

    /// `F[x]/(m)` with basis `1, x, ..., x^{deg m - 1}`; `m` is made monic.
    pub fn polynomial_quotient(field: &Field, m: &[Elem]) -> Result<SCAlgebra, AssocError> {
        let m = poly::monic(field, &poly::trim(field, m.to_vec()));
        let n = poly::degree(&m).filter(|&d| d > 0).ok_or_else(|| AssocError::Invalid("modulus of degree 0".into()))?;
        let mut consts = vec![vec![vec![field.zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut mono = vec![field.zero(); i + j + 1];
                mono[i + j] = field.one();
                let r = poly::rem(field, &mono, &m);
                for (k, c) in r.into_iter().enumerate() {
                    consts[i][j][k] = c;
                }
            }
        }
        let mut id = vec![field.zero(); n];
        id[0] = field.one();
        SCAlgebra::new(field, consts, id)
    }

    /// Full matrix algebra `M_n(F)` on the matrix units `E_{ij}` (index `i n + j`).
    pub fn matrix_algebra(field: &Field, n: usize) -> Result<SCAlgebra, AssocError> {
        let d = n * n;
        let mut consts = vec![vec![vec![field.zero(); d]; d]; d];
        let mut id = vec![field.zero(); d];
        for i in 0..n {
            id[i * n + i] = field.one();
            for j in 0..n {
                for l in 0..n {
                    consts[i * n + j][j * n + l][i * n + l] = field.one();
                }
            }
        }
        SCAlgebra::new(field, consts, id)
    }

    /// Unital algebra generated by `gens` inside `M_d(F)`, together with its
    /// defining module. The basis is the reduced echelon basis of the span.
    pub fn from_matrices(field: &Field, dim: usize, gens: &[Matrix]) -> Result<(SCAlgebra, MatrixModule), AssocError> {
        let span = MatrixSpan::generated(field, dim, gens)?;
        let n = span.basis.len();
        let mut consts = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                consts[i][j] = span.coords(&span.basis[i].mul(&span.basis[j]));
            }
        }
        let id = span.coords(&Matrix::identity(field, dim));
        let alg = SCAlgebra::new(field, consts, id)?;
        let module = MatrixModule::for_algebra(&alg, span.basis.clone())?;
        Ok((alg, module))
    }

    /// Truncated associated graded algebra `gr A / gr_{>D}` of a level-0
    /// Zhu algebra computation, where `D` is its quoted degree.
    pub fn from_zhu_graded(zhu: &ZhuAlgebra) -> Result<SCAlgebra, AssocError> {
        if zhu.level() != 0 {
            return Err(AssocError::Invalid("graded export needs level 0".into()));
        }
        if zhu.degree().is_none() {
            return Err(AssocError::Invalid("Zhu computation did not stabilize".into()));
        }
        let f = zhu.field();
        let unit = zhu
            .basis_ids()
            .iter()
            .position(|&id| id == 0)
            .ok_or_else(|| AssocError::Invalid("vacuum missing from the quoted basis".into()))?;
        let mut id = vec![f.zero(); zhu.basis_ids().len()];
        id[unit] = f.one();
        SCAlgebra::new(f, zhu.graded_structure_constants(), id)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.consts.len()
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Elem>>] {
        &self.consts
    }

    pub fn identity(&self) -> &[Elem] {
        &self.identity
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let n = self.dim();
        let mut out = vec![f.zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (o, s) in out.iter_mut().zip(&self.consts[i][j]) {
                    if !f.is_zero(s) {
                        *o = f.add(o, &f.mul(&c, s));
                    }
                }
            }
        }
        out
    }

    fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.consts[i][j];
                for k in 0..n {
                    let left = self.mul(ij, &self.unit_vector(k));
                    let right = self.mul(&self.unit_vector(i), &self.consts[j][k]);
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Matrix of `y ↦ x y` on coordinate columns.
    pub fn left_mult(&self, x: &[Elem]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(&self.field, n, n);
        for j in 0..n {
            let col = self.mul(x, &self.unit_vector(j));
            for (k, c) in col.into_iter().enumerate() {
                m.set(k, j, c);
            }
        }
        m
    }

    /// The algebra acting on itself by left multiplication.
    pub fn regular_module(&self) -> MatrixModule {
        let actions = (0..self.dim()).map(|i| self.left_mult(&self.unit_vector(i))).collect();
        MatrixModule {
            field: self.field.clone(),
            dim: self.dim(),
            actions,
        }
    }

    fn trace_form_precondition(&self, size: usize) -> Result<(), AssocError> {
        let p = self.field.characteristic();
        if p != 0 && p as usize <= size {
            return Err(AssocError::Unsupported(format!(
                "trace-form radical needs characteristic 0 or p > {size}, got p = {p}"
            )));
        }
        Ok(())
    }

    /// Jacobson radical as the kernel of `(x, y) ↦ tr L_{xy}`, verified to be
    /// a nilpotent two-sided ideal.
    pub fn radical(&self) -> Result<Subspace, AssocError> {
        let n = self.dim();
        self.trace_form_precondition(n)?;
        let f = &self.field;
        let traces: Vec<Elem> = (0..n).map(|k| self.left_mult(&self.unit_vector(k)).trace()).collect();
        let mut form = Matrix::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                let t = self.consts[i][j]
                    .iter()
                    .zip(&traces)
                    .fold(f.zero(), |acc, (c, t)| f.add(&acc, &f.mul(c, t)));
                form.set(i, j, t);
            }
        }
        let rad = Subspace::span(f, n, &form.kernel())?;
        self.verify_nilpotent_ideal(&rad)?;
        Ok(rad)
    }

    fn verify_nilpotent_ideal(&self, rad: &Subspace) -> Result<(), AssocError> {
        let n = self.dim();
        for r in rad.basis() {
            for i in 0..n {
                let b = self.unit_vector(i);
                if !rad.member(&self.mul(&b, r))? || !rad.member(&self.mul(r, &b))? {
                    return Err(AssocError::Invalid("trace-form kernel is not an ideal".into()));
                }
            }
        }
        let mut power = rad.clone();
        for _ in 0..=n {
            if power.dim() == 0 {
                return Ok(());
            }
            let products: Vec<Vec<Elem>> = power
                .basis()
                .iter()
                .flat_map(|x| rad.basis().iter().map(move |y| (x, y)))
                .map(|(x, y)| self.mul(x, y))
                .collect();
            power = Subspace::span(&self.field, n, &products)?;
        }
        Err(AssocError::Invalid("trace-form kernel is not nilpotent".into()))
    }

    /// Basis of the centre.
    pub fn center(&self) -> Result<Subspace, AssocError> {
        let n = self.dim();
        let f = &self.field;
        // z = Σ z_i b_i commutes with every b_j
        let mut rows = Vec::new();
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| f.sub(&self.consts[i][j][k], &self.consts[j][i][k])).collect());
            }
        }
        let sys = Matrix::from_rows(f, rows);
        Ok(Subspace::span(f, n, &sys.kernel())?)
    }

    pub fn is_semisimple(&self) -> Result<Semisimplicity, AssocError> {
        let rad = self.radical()?;
        if rad.dim() > 0 {
            return Ok(Semisimplicity {
                semisimple: false,
                radical_dim: rad.dim(),
                center_dim: None,
                blocks: None,
            });
        }
        let center = self.center()?;
        let mats: Vec<Matrix> = center.basis().iter().map(|z| self.left_mult(z)).collect();
        let blocks = count_field_factors(&self.field, &mats, PROBE_SEED)?;
        Ok(Semisimplicity {
            semisimple: true,
            radical_dim: 0,
            center_dim: Some(center.dim()),
            blocks,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Semisimplicity {
    pub semisimple: bool,
    pub radical_dim: usize,
    pub center_dim: Option<usize>,
    /// Wedderburn block count, when the centre's factors can be counted.
    pub blocks: Option<usize>,
}

/// Module given by action matrices of a generating set of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixModule {
    field: Field,
    dim: usize,
    actions: Vec<Matrix>,
}

impl MatrixModule {
    pub fn new(field: &Field, dim: usize, actions: Vec<Matrix>) -> Result<MatrixModule, AssocError> {
        if dim == 0 {
            return Err(AssocError::Invalid("module of dimension 0".into()));
        }
        for a in &actions {
            if a.rows() != dim || a.cols() != dim {
                return Err(AssocError::Invalid(format!(
                    "action of shape {}x{} on a module of dimension {dim}",
                    a.rows(),
                    a.cols()
                )));
            }
            if a.field() != field {
                return Err(AssocError::Linalg(LinalgError::FieldMismatch));
            }
        }
        Ok(MatrixModule {
            field: field.clone(),
            dim,
            actions,
        })
    }

    /// Module of `alg` given by the images of all basis elements; checks
    /// `ρ(b_i) ρ(b_j) = Σ c_ij^k ρ(b_k)` and `ρ(1) = I`.
    pub fn for_algebra(alg: &SCAlgebra, images: Vec<Matrix>) -> Result<MatrixModule, AssocError> {
        if images.len() != alg.dim() {
            return Err(AssocError::Invalid("one image per basis element is required".into()));
        }
        let dim = images.first().map_or(0, |m| m.rows());
        let module = MatrixModule::new(alg.field(), dim, images)?;
        let f = alg.field();
        let acts = &module.actions;
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = acts[i].mul(&acts[j]);
                let rhs = Matrix::combination(f, &alg.consts[i][j], acts);
                if lhs != rhs {
                    return Err(AssocError::Invalid(format!("ρ(b{i})ρ(b{j}) disagrees with the structure constants")));
                }
            }
        }
        if Matrix::combination(f, alg.identity(), acts) != Matrix::identity(f, dim) {
            return Err(AssocError::Invalid("the identity does not act as the identity".into()));
        }
        Ok(module)
    }

    /// `F[x]/(m)` acting on itself through the companion matrix of `m`.
    pub fn companion(field: &Field, m: &[Elem]) -> Result<MatrixModule, AssocError> {
        let p = Poly::new(field, poly::monic(field, &poly::trim(field, m.to_vec())));
        let d = p.degree().filter(|&d| d > 0).ok_or_else(|| AssocError::Invalid("modulus of degree 0".into()))?;
        MatrixModule::new(field, d, vec![Matrix::companion(&p)])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Reduced echelon basis of the unital algebra generated by the actions.
    pub fn image_algebra(&self) -> Result<Vec<Matrix>, AssocError> {
        Ok(MatrixSpan::generated(&self.field, self.dim, &self.actions)?.basis)
    }

    pub fn commutant(&self) -> Result<Vec<Matrix>, AssocError> {
        Ok(commutant(&self.field, self.dim, &self.actions)?)
    }

    /// Commutant with minimal polynomials and a division verdict.
    pub fn endomorphisms(&self, seed: u64) -> Result<EndoReport, AssocError> {
        let basis = self.commutant()?;
        let minimal_polynomials = basis.iter().map(|m| m.minimal_polynomial()).collect();
        let division = division_verdict(&self.field, self.dim, &basis, seed)?;
        Ok(EndoReport {
            dim: basis.len(),
            absolutely_simple: basis.len() == 1,
            commutant: basis,
            minimal_polynomials,
            division,
        })
    }

    /// Simplicity verdict. With characteristic 0 or `p > dim M`, the radical
    /// of the image algebra is computed with the trace form and M is simple
    /// iff that radical vanishes and the commutant is a division algebra. In
    /// small characteristic the density criterion
    /// `E division and dim ρ(A) · dim E = (dim M)^2` is used instead.
    pub fn is_simple(&self, seed: u64) -> Result<SimplicityVerdict, AssocError> {
        let image = self.image_algebra()?;
        let comm = self.commutant()?;
        let division = division_verdict(&self.field, self.dim, &comm, seed)?;
        let p = self.field.characteristic();
        let (method, radical_dim, simple) = if p == 0 || p as usize > self.dim {
            let rad = matrix_algebra_radical(&self.field, self.dim, &image)?;
            let simple = rad.is_empty() && division.is_division;
            (SimplicityMethod::TraceForm, Some(rad.len()), simple)
        } else {
            let simple = division.is_division && image.len() * comm.len() == self.dim * self.dim;
            (SimplicityMethod::Density, None, simple)
        };
        Ok(SimplicityVerdict {
            simple,
            method,
            image_dim: image.len(),
            radical_dim,
            commutant_dim: comm.len(),
            division,
        })
    }

    /// Commutant equal to the scalars; only meaningful for simple modules.
    pub fn is_absolutely_simple(&self) -> Result<bool, AssocError> {
        Ok(self.commutant()?.len() == 1)
    }

    /// Wedderburn block count of the image algebra, when it is semisimple
    /// and its centre's factors can be counted.
    pub fn image_blocks(&self) -> Result<Semisimplicity, AssocError> {
        let (alg, _) = SCAlgebra::from_matrices(&self.field, self.dim, &self.actions)?;
        alg.is_semisimple()
    }

    /// Smallest submodule containing `v`.
    pub fn cyclic_submodule(&self, v: &[Elem]) -> Result<Subspace, AssocError> {
        let mut sub = Subspace::span(&self.field, self.dim, &[v.to_vec()])?;
        let mut frontier = sub.basis().to_vec();
        while let Some(w) = frontier.pop() {
            for a in &self.actions {
                let img = a.mul_vec(&w);
                if !sub.member(&img)? {
                    sub = sub.span_union(&[img.clone()])?;
                    frontier.push(img);
                }
            }
        }
        Ok(sub)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimplicityMethod {
    TraceForm,
    Density,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicityVerdict {
    pub simple: bool,
    pub method: SimplicityMethod,
    pub image_dim: usize,
    pub radical_dim: Option<usize>,
    pub commutant_dim: usize,
    pub division: DivisionVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoReport {
    pub commutant: Vec<Matrix>,
    pub dim: usize,
    pub minimal_polynomials: Vec<Poly>,
    pub division: DivisionVerdict,
    pub absolutely_simple: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeMethod {
    /// Finite field: commutativity plus a Frobenius computation decides the
    /// question exactly.
    Exact,
    /// Infinite field: basis plus seeded random combinations.
    Probabilistic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisionVerdict {
    pub is_division: bool,
    pub method: ProbeMethod,
    pub probes: usize,
    /// Minimal polynomial of a probe that exposed a zero divisor.
    pub witness: Option<String>,
}

/// Span of matrices kept in reduced echelon form, so the coordinates of a
/// member are its entries at the pivot positions.
struct MatrixSpan {
    dim: usize,
    basis: Vec<Matrix>,
    pivots: Vec<usize>,
}

impl MatrixSpan {
    fn from_basis(field: &Field, dim: usize, mats: &[Matrix]) -> Result<MatrixSpan, AssocError> {
        let flat: Vec<Vec<Elem>> = mats.iter().map(|m| m.data().to_vec()).collect();
        let s = Subspace::span(field, dim * dim, &flat)?;
        Ok(MatrixSpan {
            dim,
            basis: s.basis().iter().map(|v| Matrix::from_flat(field, dim, dim, v.clone())).collect(),
            pivots: s.pivots().to_vec(),
        })
    }

    fn generated(field: &Field, dim: usize, gens: &[Matrix]) -> Result<MatrixSpan, AssocError> {
        let mut tracker = DependencyTracker::new(field);
        let mut found = Vec::new();
        let mut queue = vec![Matrix::identity(field, dim)];
        while let Some(m) = queue.pop() {
            if tracker.push(m.data().to_vec()).is_some() {
                continue;
            }
            for g in gens {
                queue.push(m.mul(g));
            }
            found.push(m);
        }
        MatrixSpan::from_basis(field, dim, &found)
    }

    fn coords(&self, m: &Matrix) -> Vec<Elem> {
        debug_assert_eq!(m.rows(), self.dim);
        self.pivots.iter().map(|&p| m.data()[p].clone()).collect()
    }
}

/// Radical of a matrix algebra `B ⊆ M_d(F)`: `{x ∈ B : tr(xy) = 0 ∀y ∈ B}`,
/// valid in characteristic 0 or `p > d`.
fn matrix_algebra_radical(field: &Field, dim: usize, basis: &[Matrix]) -> Result<Vec<Matrix>, AssocError> {
    let n = basis.len();
    let mut form = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            form.set(i, j, basis[i].mul(&basis[j]).trace());
        }
    }
    let rad: Vec<Matrix> = form.kernel().iter().map(|c| Matrix::combination(field, c, basis)).collect();
    // every radical element must be nilpotent
    for r in &rad {
        let mut p = r.clone();
        for _ in 0..dim {
            p = p.mul(r);
        }
        if !p.is_zero() {
            return Err(AssocError::Invalid("trace-form kernel contains a non-nilpotent element".into()));
        }
    }
    Ok(rad)
}

fn is_commutative(mats: &[Matrix]) -> bool {
    mats.iter()
        .enumerate()
        .all(|(i, a)| mats[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
}

fn mat_pow(m: &Matrix, mut e: u128) -> Matrix {
    let mut base = m.clone();
    let mut acc = Matrix::identity(m.field(), m.rows());
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        base = base.mul(&base);
        e >>= 1;
    }
    acc
}

/// For a commutative unital matrix algebra over `F_q` spanned by `mats`:
/// whether it is reduced (the Frobenius `z ↦ z^q` is injective) and the
/// number of field factors (`dim ker(Frob - id)`).
fn frobenius_data(field: &Field, dim: usize, mats: &[Matrix]) -> Result<(bool, usize), AssocError> {
    let q = field.order().expect("finite field");
    let span = MatrixSpan::from_basis(field, dim, mats)?;
    let n = span.basis.len();
    let mut frob = Matrix::zeros(field, n, n);
    for (j, b) in span.basis.iter().enumerate() {
        for (i, c) in span.coords(&mat_pow(b, q)).into_iter().enumerate() {
            frob.set(i, j, c);
        }
    }
    let reduced = frob.rank() == n;
    let fixed = frob.sub(&Matrix::identity(field, n)).kernel().len();
    Ok((reduced, fixed))
}

/// Number of field factors of a commutative semisimple matrix algebra, when
/// countable: exact over finite fields, and over ℚ only when the algebra is
/// one-dimensional or a generic element has distinct rational eigenvalues
/// filling its dimension.
fn count_field_factors(field: &Field, mats: &[Matrix], seed: u64) -> Result<Option<usize>, AssocError> {
    let Some(first) = mats.first() else {
        return Ok(Some(0));
    };
    let dim = first.rows();
    if field.is_finite() {
        return Ok(Some(frobenius_data(field, dim, mats)?.1));
    }
    if mats.len() == 1 {
        return Ok(Some(1));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<Elem> = mats.iter().map(|_| field.random(&mut rng)).collect();
    let generic = Matrix::combination(field, &coeffs, mats);
    let mp = generic.minimal_polynomial();
    if mp.degree() != Some(mats.len()) || !matches!(field.kind(), FieldKind::Rationals) {
        return Ok(None);
    }
    Ok(match mp.roots_in_field(0) {
        Some(roots) if roots.len() == mats.len() => Some(roots.len()),
        _ => None,
    })
}

/// Division verdict for the unital algebra spanned by `basis` (a commutant,
/// so it contains the identity).
pub(crate) fn division_verdict(field: &Field, dim: usize, basis: &[Matrix], seed: u64) -> Result<DivisionVerdict, AssocError> {
    let mut probes: Vec<Matrix> = basis.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if basis.len() > 1 {
        for _ in 0..RANDOM_PROBES {
            let c: Vec<Elem> = basis.iter().map(|_| field.random(&mut rng)).collect();
            probes.push(Matrix::combination(field, &c, basis));
        }
    }
    let mut witness = None;
    for m in &probes {
        if m.is_zero() {
            continue;
        }
        let mp = m.minimal_polynomial();
        let ok = match poly::is_irreducible(field, &mp.coeffs) {
            Ok(irr) => irr,
            Err(FieldError::Unsupported(_)) => !field.is_zero(&mp.constant_term()),
            Err(e) => return Err(e.into()),
        };
        if !ok {
            witness = Some(mp.to_string_in("t"));
            break;
        }
    }
    let (is_division, method) = if field.is_finite() {
        // Wedderburn: a finite division ring is a field
        let exact = is_commutative(basis) && {
            let (reduced, factors) = frobenius_data(field, dim, basis)?;
            reduced && factors == 1
        };
        (exact, ProbeMethod::Exact)
    } else {
        (witness.is_none(), ProbeMethod::Probabilistic)
    };
    Ok(DivisionVerdict {
        is_division,
        method,
        probes: probes.len(),
        witness,
    })
}

#[cfg(test)]
mod tests;
