//! Extension of scalars `X ↦ K ⊗_F X` for algebras, modules and vertex
//! algebra configurations, with re-verification of the simplicity verdicts
//! on the extended objects.

use serde::Serialize;
use thiserror::Error;

use crate::assoc::{division_verdict, AssocError, DivisionVerdict, MatrixModule, SCAlgebra, SimplicityVerdict};
use crate::check::Check;
use crate::field::{parse_poly_rational, Elem, Field, FieldError, FieldKind};
use crate::linalg::{LinalgError, Matrix, Subspace};
use crate::poly;
use crate::voa::{GradedVector, ModeEngine, ModeError, ModuleConfig, VoaConfig};
use crate::zhu::{ZhuAlgebra, ZhuError};

/// Largest extension degree over ℚ whose irreducibility can be decided.
pub const MAX_RATIONAL_EXTENSION_DEGREE: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtError {
    #[error("{target} is not an extension of {base}")]
    NotAnExtension { base: String, target: String },
    #[error("invalid extension request: {0}")]
    InvalidRequest(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Assoc(#[from] AssocError),
    #[error(transparent)]
    Mode(#[from] ModeError),
    #[error(transparent)]
    Zhu(#[from] ZhuError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Checks that `target` lies above `base` in its tower and that every step
/// from `base` up is separable.
pub fn require_extension(base: &Field, target: &Field) -> Result<(), ExtError> {
    if !base.embeds_into(target) {
        return Err(ExtError::NotAnExtension {
            base: base.name(),
            target: target.name(),
        });
    }
    let mut cur = target;
    while cur != base {
        if let FieldKind::Extension { base: below, minpoly, .. } = cur.kind() {
            if !poly::is_separable(below, minpoly) {
                return Err(ExtError::Unsupported(format!("inseparable step {}", cur.name())));
            }
            cur = below;
        } else {
            break;
        }
    }
    Ok(())
}

/// Parses a polynomial in one variable with rational coefficients into
/// low-to-high coefficients over `base`.
pub fn parse_polynomial(base: &Field, text: &str) -> Result<Vec<Elem>, ExtError> {
    let var = variable_of(text)?;
    let coeffs = parse_poly_rational(text, &var).map_err(ExtError::InvalidRequest)?;
    let m: Vec<Elem> = coeffs.iter().map(|c| base.from_rational(c)).collect::<Result<_, _>>()?;
    Ok(poly::trim(base, m))
}

fn variable_of(text: &str) -> Result<String, ExtError> {
    let var: String = text.chars().filter(|c| c.is_ascii_alphabetic()).take(1).collect();
    if var.is_empty() {
        return Err(ExtError::InvalidRequest(format!("{text:?} has no variable")));
    }
    if text.chars().any(|c| c.is_ascii_alphabetic() && c.to_string() != var) {
        return Err(ExtError::InvalidRequest(format!("{text:?} mixes variables")));
    }
    Ok(var)
}

/// `base[x]/(m)` from a polynomial written in one variable with rational
/// coefficients, e.g. `t^2-2`. Inseparable or (over ℚ) too-large requests
/// are unsupported; reducible ones are invalid.
pub fn extension_field(base: &Field, text: &str) -> Result<Field, ExtError> {
    let m = parse_polynomial(base, text)?;
    let deg = poly::degree(&m).unwrap_or(0);
    if deg < 1 {
        return Err(ExtError::InvalidRequest("extension polynomial of degree 0".into()));
    }
    if !poly::is_separable(base, &m) {
        return Err(ExtError::Unsupported(format!("{text} is inseparable over {}", base.name())));
    }
    if matches!(base.kind(), FieldKind::Rationals) && deg > MAX_RATIONAL_EXTENSION_DEGREE {
        return Err(ExtError::Unsupported(format!("extension of degree {deg} over Q")));
    }
    let m = poly::monic(base, &m);
    match Field::extension(base, m, &variable_of(text)?) {
        Ok(k) => Ok(k),
        Err(FieldError::Reducible(s)) => Err(ExtError::InvalidRequest(format!("{s} is reducible"))),
        Err(FieldError::Unsupported(s)) => Err(ExtError::Unsupported(s)),
        Err(FieldError::DegreeTooLarge(d)) => Err(ExtError::Unsupported(format!("extension degree {d}"))),
        Err(e) => Err(e.into()),
    }
}

pub fn extend_algebra(a: &SCAlgebra, k: &Field) -> Result<SCAlgebra, ExtError> {
    require_extension(a.field(), k)?;
    let f = a.field();
    let consts = a
        .structure_constants()
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| c.iter().map(|x| f.embed(x, k)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let id = a.identity().iter().map(|x| f.embed(x, k)).collect::<Result<Vec<_>, _>>()?;
    Ok(SCAlgebra::new(k, consts, id)?)
}

pub fn extend_module(m: &MatrixModule, k: &Field) -> Result<MatrixModule, ExtError> {
    require_extension(m.field(), k)?;
    let actions = m.actions().iter().map(|a| a.embed(k)).collect::<Result<Vec<_>, _>>()?;
    Ok(MatrixModule::new(k, m.dim(), actions)?)
}

pub fn extend_voa(config: &VoaConfig, k: &Field) -> Result<VoaConfig, ExtError> {
    require_extension(config.field(), k)?;
    Ok(config.embed(k)?)
}

fn embed_vector(f: &Field, v: &GradedVector, k: &Field) -> Result<GradedVector, FieldError> {
    let terms = v
        .terms()
        .iter()
        .map(|(m, c)| Ok((m.clone(), f.embed(c, k)?)))
        .collect::<Result<Vec<_>, FieldError>>()?;
    let mut out = GradedVector::from_terms(k, terms);
    if v.is_truncated() {
        out.mark_truncated();
    }
    Ok(out)
}

/// Compares the extended vertex algebra with the original: equal graded
/// dimensions, and generator modes `x(m) b` on every basis vector `b` of
/// weight `<= depth` equal to the embedded originals.
pub fn check_voa_extension(config: &VoaConfig, k: &Field, depth: usize) -> Result<Check, ExtError> {
    let ext = extend_voa(config, k)?;
    let f = config.field();
    let (e0, e1) = (ModeEngine::new(config), ModeEngine::new(&ext));
    let mut check = Check::new("extension commutes with modes");
    let depth = depth.min(config.truncation());
    for w in 0..=depth {
        let (b0, b1) = (e0.basis(w)?, e1.basis(w)?);
        check.record(b0 == b1, || format!("bases of weight {w} differ"));
        for b in &b0 {
            for g in 0..config.generator_count() as u8 {
                for m in -(depth as i32)..=(depth as i32) {
                    let before = e0.generator_mode(g, m, &GradedVector::monomial(f, b.clone()))?;
                    let after = e1.generator_mode(g, m, &GradedVector::monomial(k, b.clone()))?;
                    let ok = embed_vector(f, &before, k)? == after;
                    check.record(ok, || format!("{}({m}) on {b:?}", config.generator_name(g)));
                }
            }
        }
    }
    Ok(check)
}

/// Recomputes `A_n` over `k` and compares quoted bases, degrees and every
/// quoted structure constant with the embedded originals.
pub fn check_zhu_extension(
    config: &VoaConfig,
    k: &Field,
    level: usize,
    max_degree: usize,
    cutoffs: &[usize],
) -> Result<Check, ExtError> {
    let ext = extend_voa(config, k)?;
    let a = ZhuAlgebra::compute(config, level, max_degree, cutoffs)?;
    let b = ZhuAlgebra::compute(&ext, level, max_degree, cutoffs)?;
    let f = config.field();
    let mut check = Check::new(&format!("A_{level} over {} equals the extension of A_{level} over {}", k.name(), f.name()));
    check.record(a.degree() == b.degree(), || format!("quoted degrees {:?} vs {:?}", a.degree(), b.degree()));
    check.record(a.basis() == b.basis(), || "quoted bases differ".into());
    check.record(a.products().len() == b.products().len(), || "different sets of quoted products".into());
    for ((i, j), p) in a.products() {
        let embedded = p.iter().map(|x| f.embed(x, k)).collect::<Result<Vec<_>, _>>()?;
        let ok = b.product(*i, *j) == Some(embedded.as_slice());
        check.record(ok, || format!("b{i} * b{j}"));
    }
    Ok(check)
}

/// Label attached to the module-side verdict of [`lemma36_check`].
pub const PROXY_LABEL: &str = "truncated proxy";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedProxy {
    pub label: &'static str,
    pub truncation: usize,
    /// Every graded piece `M(t)`, `t <= N`, is reached from `M(0)` by modes.
    pub generated_from_top: bool,
    /// No nonzero vector of `M(t)`, `1 <= t <= N`, is killed by all lowering modes.
    pub no_singular_vectors: bool,
    pub commutant_dim: usize,
    pub division: DivisionVerdict,
    pub irreducible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma36Report {
    pub field: String,
    pub zhu_degree: usize,
    pub top_simple: SimplicityVerdict,
    pub top_blocks: Option<usize>,
    pub module: TruncatedProxy,
    pub agree: bool,
}

/// Matrices of `o(u)` on `M(0)` for all basis vectors `u` of `V` of weight
/// `<= degree`: the action of the truncated Zhu algebra on the top level.
pub fn top_level_module(engine: &ModeEngine, degree: usize) -> Result<MatrixModule, ExtError> {
    let f = engine.field();
    let mut actions = Vec::new();
    for w in 0..=degree {
        for u in engine.voa_basis(w) {
            actions.push(engine.zero_mode_matrix(&GradedVector::monomial(f, u), 0)?);
        }
    }
    Ok(MatrixModule::new(f, engine.top_dim(), actions)?)
}

/// Evaluates both sides of the top-level criterion on `module ⊗ K`:
/// simplicity of `M(0)^K` over the truncated Zhu algebra, and irreducibility
/// of the truncated module `M_{<=N}^K`, approximated as labelled in
/// [`TruncatedProxy`].
pub fn lemma36_check(module: &ModuleConfig, k: &Field, zhu_degree: usize, seed: u64) -> Result<Lemma36Report, ExtError> {
    require_extension(module.base().field(), k)?;
    let ext = module.embed(k)?;
    let engine = ModeEngine::for_module(&ext);
    let top = top_level_module(&engine, zhu_degree)?;
    let top_simple = top.is_simple(seed)?;
    let top_blocks = top.image_blocks().ok().and_then(|s| s.blocks);
    let proxy = truncated_proxy(&engine, seed)?;
    Ok(Lemma36Report {
        field: k.name(),
        zhu_degree,
        agree: top_simple.simple == proxy.irreducible,
        top_simple,
        top_blocks,
        module: proxy,
    })
}

/// Graded layout of `M_{<=N}` as one coordinate space.
struct Layout {
    offsets: Vec<usize>,
    dims: Vec<usize>,
    total: usize,
}

/// Matrix of the generator mode `x(m)` from `M(t)` to `M(t - m)`.
fn mode_block(engine: &ModeEngine, layout: &Layout, g: u8, m: i32, t: usize) -> Result<Matrix, ExtError> {
    let f = engine.field();
    let s = (t as i64 - m as i64) as usize;
    let src = engine.basis(t)?;
    let dst = engine.basis(s)?;
    let mut out = Matrix::zeros(f, layout.dims[s], layout.dims[t]);
    for (j, b) in src.into_iter().enumerate() {
        let img = engine.generator_mode(g, m, &GradedVector::monomial(f, b))?;
        for (mono, c) in img.terms() {
            let i = dst.iter().position(|d| d == mono).expect("graded image");
            out.set(i, j, c.clone());
        }
    }
    Ok(out)
}

fn truncated_proxy(engine: &ModeEngine, seed: u64) -> Result<TruncatedProxy, ExtError> {
    let f = engine.field().clone();
    let n = engine.truncation();
    let dims: Vec<usize> = (0..=n).map(|t| engine.basis(t).map(|b| b.len())).collect::<Result<_, _>>()?;
    let mut offsets = vec![0];
    for d in &dims {
        offsets.push(offsets.last().unwrap() + d);
    }
    let layout = Layout {
        total: offsets[n + 1],
        offsets,
        dims,
    };
    let gens = engine.generator_count() as u8;

    // every mode block x(m): M(t) -> M(t - m) inside the truncation
    let mut blocks: Vec<(usize, usize, Matrix)> = Vec::new();
    for t in 0..=n {
        for m in -(n as i32)..=(n as i32) {
            let s = t as i64 - m as i64;
            if s < 0 || s > n as i64 {
                continue;
            }
            for g in 0..gens {
                blocks.push((t, s as usize, mode_block(engine, &layout, g, m, t)?));
            }
        }
    }

    // generation: spin M(0) under the raising blocks
    let mut reached: Vec<Subspace> = layout.dims.iter().map(|&d| Subspace::zero(&f, d)).collect();
    reached[0] = Subspace::span(&f, layout.dims[0], &identity_rows(&f, layout.dims[0]))?;
    for t in 1..=n {
        let mut vecs = Vec::new();
        for (src, dst, b) in &blocks {
            if *dst == t && *src < t {
                vecs.extend(reached[*src].basis().iter().map(|v| b.mul_vec(v)));
            }
        }
        reached[t] = Subspace::span(&f, layout.dims[t], &vecs)?;
    }
    let generated_from_top = (0..=n).all(|t| reached[t].dim() == layout.dims[t]);

    // singular vectors: common kernel of the lowering blocks out of M(t)
    let mut no_singular_vectors = true;
    for t in 1..=n {
        let mut rows: Vec<Vec<Elem>> = Vec::new();
        for (src, dst, b) in &blocks {
            if *src == t && *dst < t {
                rows.extend((0..b.rows()).map(|i| b.row(i).to_vec()));
            }
        }
        if layout.dims[t] > 0 && (rows.is_empty() || !Matrix::from_rows(&f, rows).kernel().is_empty()) {
            no_singular_vectors = false;
        }
    }

    // block-diagonal operators commuting with every mode block
    let comm = graded_commutant(&f, &layout, &blocks)?;
    let division = division_verdict(&f, layout.total, &comm, seed)?;
    let irreducible = generated_from_top && no_singular_vectors && division.is_division;
    Ok(TruncatedProxy {
        label: PROXY_LABEL,
        truncation: n,
        generated_from_top,
        no_singular_vectors,
        commutant_dim: comm.len(),
        division,
        irreducible,
    })
}

fn identity_rows(f: &Field, d: usize) -> Vec<Vec<Elem>> {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { f.one() } else { f.zero() }).collect())
        .collect()
}

/// Solves `X_s B = B X_t` for block-diagonal `X = ⊕ X_t` over every block
/// `B: M(t) -> M(s)`, returning the solutions as full matrices.
fn graded_commutant(f: &Field, layout: &Layout, blocks: &[(usize, usize, Matrix)]) -> Result<Vec<Matrix>, ExtError> {
    let mut var_offset = vec![0];
    for d in &layout.dims {
        var_offset.push(var_offset.last().unwrap() + d * d);
    }
    let nvars = *var_offset.last().unwrap();
    let var = |t: usize, i: usize, j: usize| var_offset[t] + i * layout.dims[t] + j;
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for (t, s, b) in blocks {
        let (ds, dt) = (layout.dims[*s], layout.dims[*t]);
        for i in 0..ds {
            for j in 0..dt {
                let mut row = vec![f.zero(); nvars];
                // (X_s B)_{ij} = Σ_k X_s[i,k] B[k,j]
                for k in 0..ds {
                    let v = var(*s, i, k);
                    row[v] = f.add(&row[v], b.get(k, j));
                }
                // (B X_t)_{ij} = Σ_k B[i,k] X_t[k,j]
                for k in 0..dt {
                    let v = var(*t, k, j);
                    row[v] = f.sub(&row[v], b.get(i, k));
                }
                if row.iter().any(|x| !f.is_zero(x)) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        identity_rows(f, nvars)
    } else {
        Matrix::from_rows(f, rows).kernel()
    };
    let mut out = Vec::new();
    for sol in kernel {
        let mut m = Matrix::zeros(f, layout.total, layout.total);
        for (t, &d) in layout.dims.iter().enumerate() {
            let o = layout.offsets[t];
            for i in 0..d {
                for j in 0..d {
                    m.set(o + i, o + j, sol[var(t, i, j)].clone());
                }
            }
        }
        out.push(m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
