//! Truncated Zhu algebras `A_n(V) = V / O_n(V)`, their level filtration, the
//! associated graded algebra, and the C2 Poisson algebra `R(V)`.
//!
//! All quotients are computed inside `V_{<=N}`. Columns of the echelon form are
//! ordered highest weight first, so the pivot of every relation is one of its
//! top-weight monomials. Consequently `O ∩ V_{<=k}` is spanned by the rows
//! whose pivot has weight `<= k`, and the non-pivot monomials of weight `<= k`
//! form a basis of the filtration piece `F_k`.

mod c2;

use std::collections::BTreeMap;
use std::rc::Rc;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::check::Check;
use crate::field::{binomial, Elem, Field};
use crate::linalg::SparseEchelon;
use crate::voa::{GradedVector, ModeEngine, ModeError, Monomial, Terms, VoaConfig};

pub use c2::{C2Algebra, PhiReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZhuError {
    #[error("weight {weight} exceeds the cutoff {cap}")]
    Truncation { weight: i64, cap: usize },
    #[error("no cutoff given")]
    EmptyBudget,
    #[error(transparent)]
    Mode(#[from] ModeError),
}

/// Basis of `V_{<=N}` as echelon columns, highest weight first.
#[derive(Clone)]
pub(crate) struct Columns {
    pub(crate) ids: Vec<u32>,
    pub(crate) weight: Vec<usize>,
    index: FxHashMap<u32, u32>,
}

impl Columns {
    fn new(engine: &ModeEngine, cutoff: usize) -> Columns {
        let mut ids = Vec::new();
        let mut weight = Vec::new();
        for w in (0..=cutoff).rev() {
            for m in engine.voa_basis(w) {
                ids.push(engine.source_id(&m));
                weight.push(w);
            }
        }
        let index = ids.iter().enumerate().map(|(c, &id)| (id, c as u32)).collect();
        Columns { ids, weight, index }
    }

    pub(crate) fn len(&self) -> usize {
        self.ids.len()
    }

    pub(crate) fn column(&self, id: u32) -> Option<u32> {
        self.index.get(&id).copied()
    }

    /// Re-indexes source terms as columns; fails if any term is above the cutoff.
    pub(crate) fn encode(&self, engine: &ModeEngine, t: &[(u32, Elem)], cap: usize) -> Result<Terms, ZhuError> {
        t.iter()
            .map(|(id, c)| match self.column(*id) {
                Some(col) => Ok((col, c.clone())),
                None => Err(ZhuError::Truncation {
                    weight: engine.source_weight(*id),
                    cap,
                }),
            })
            .collect()
    }

    pub(crate) fn decode(&self, t: &[(u32, Elem)]) -> Terms {
        let mut out: Terms = t.iter().map(|(c, x)| (self.ids[*c as usize], x.clone())).collect();
        out.sort_unstable_by_key(|(id, _)| *id);
        out
    }
}

fn add_into(field: &Field, acc: &mut BTreeMap<u32, Elem>, t: &[(u32, Elem)], c: &Elem) {
    for (id, x) in t {
        let e = acc.entry(*id).or_insert_with(|| field.zero());
        *e = field.add(e, &field.mul(x, c));
    }
}

fn finish(field: &Field, acc: BTreeMap<u32, Elem>) -> Terms {
    acc.into_iter().filter(|(_, x)| !field.is_zero(x)).collect()
}

/// `u ∘^s_{n,t} v = Σ_{i=0}^{wt u+n+s} C(wt u+n+s, i) u_{i-2n-2-t} v` for
/// basis vectors `u, v`.
pub(crate) fn circ_ids(engine: &ModeEngine, u: u32, v: u32, n: usize, s: usize, t: usize) -> Terms {
    let f = engine.field();
    let e = engine.source_weight(u) + (n + s) as i64;
    let mut acc = BTreeMap::new();
    for i in 0..=e {
        let c = engine.int(binomial(e, i));
        let k = i as i32 - 2 * n as i32 - 2 - t as i32;
        add_into(f, &mut acc, &engine.mode_ids(u, k, v), &c);
    }
    finish(f, acc)
}

/// `u *_n v` on source terms, summing `m = 0..=n`.
pub(crate) fn star_terms(engine: &ModeEngine, u: &[(u32, Elem)], v: &[(u32, Elem)], n: usize) -> Terms {
    let f = engine.field();
    let mut acc = BTreeMap::new();
    for (ui, uc) in u {
        let wt = engine.source_weight(*ui) + n as i64;
        for (vi, vc) in v {
            let c0 = f.mul(uc, vc);
            for m in 0..=n as i64 {
                let sign = if m % 2 == 0 { 1 } else { -1 };
                let cm = sign * binomial(m + n as i64, n as i64);
                for i in 0..=wt {
                    let c = engine.int(cm * binomial(wt, i));
                    let k = (i - n as i64 - m - 1) as i32;
                    add_into(f, &mut acc, &engine.mode_ids(*ui, k, *vi), &f.mul(&c, &c0));
                }
            }
        }
    }
    finish(f, acc)
}

/// `(L(-1) + L(0)) u` for a basis vector `u`.
pub(crate) fn l_relation(engine: &ModeEngine, u: u32) -> Terms {
    let f = engine.field();
    let mut acc = BTreeMap::new();
    let one = f.one();
    add_into(f, &mut acc, &engine.mode_terms(engine.omega_terms(), 0, &[(u, one.clone())]), &one);
    add_into(f, &mut acc, &[(u, engine.int(engine.source_weight(u) as i128))], &one);
    finish(f, acc)
}

/// `O_n(V) ∩ V_{<=N}` as spanned by the elements that fit the cutoff.
pub struct ZhuTruncation {
    engine: Rc<ModeEngine>,
    level: usize,
    cutoff: usize,
    columns: Columns,
    echelon: SparseEchelon,
    spanning_elements: usize,
}

impl ZhuTruncation {
    pub fn build(config: &VoaConfig, level: usize, cutoff: usize) -> ZhuTruncation {
        ZhuTruncation::with_engine(Rc::new(ModeEngine::new(config)), level, cutoff)
    }

    /// Builds the truncation on an existing engine, reusing its memo tables.
    pub fn with_engine(engine: Rc<ModeEngine>, level: usize, cutoff: usize) -> ZhuTruncation {
        let f = engine.field().clone();
        let columns = Columns::new(&engine, cutoff);
        let mut echelon = SparseEchelon::new(&f, columns.len());
        let by_weight: Vec<Vec<u32>> = (0..=cutoff)
            .map(|w| engine.voa_basis(w).iter().map(|m| engine.source_id(m)).collect())
            .collect();
        let mut spanning = 0;
        let insert = |echelon: &mut SparseEchelon, t: Terms| {
            let cols = columns
                .encode(&engine, &t, cutoff)
                .expect("spanning elements are generated inside the cutoff");
            echelon.insert(&cols);
        };
        for wu in 0..cutoff {
            for &u in &by_weight[wu] {
                insert(&mut echelon, l_relation(&engine, u));
                spanning += 1;
            }
        }
        // u ∘^s_{n,t} v with wt u + wt v + 2n + 1 + t <= N and 0 <= s <= t;
        // the vacuum contributes nothing as u since 1_k = 0 for k <= -2
        let base = 2 * level + 1;
        for wu in 1..=cutoff {
            for wv in 0..=cutoff {
                if wu + wv + base > cutoff {
                    continue;
                }
                let tmax = cutoff - wu - wv - base;
                for &u in &by_weight[wu] {
                    for &v in &by_weight[wv] {
                        for t in 0..=tmax {
                            for s in 0..=t {
                                insert(&mut echelon, circ_ids(&engine, u, v, level, s, t));
                                spanning += 1;
                            }
                        }
                    }
                }
            }
        }
        ZhuTruncation {
            engine,
            level,
            cutoff,
            columns,
            echelon,
            spanning_elements: spanning,
        }
    }

    pub fn engine(&self) -> &Rc<ModeEngine> {
        &self.engine
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn field(&self) -> &Field {
        self.engine.field()
    }

    pub fn spanning_elements(&self) -> usize {
        self.spanning_elements
    }

    /// Rank of the truncated `O_n(V)`.
    pub fn relation_rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn space_dim(&self) -> usize {
        self.columns.len()
    }

    /// `dim F_k = dim V_{<=k} - dim(O ∩ V_{<=k})` for `k = 0..=N`.
    pub fn filtration_dims(&self) -> Vec<usize> {
        let mut per_weight = vec![0usize; self.cutoff + 1];
        for c in 0..self.columns.len() {
            if !self.echelon.is_pivot(c) {
                per_weight[self.columns.weight[c]] += 1;
            }
        }
        let mut acc = 0;
        per_weight
            .into_iter()
            .map(|d| {
                acc += d;
                acc
            })
            .collect()
    }

    /// Non-pivot monomials (the quotient basis) with their weights, ordered by
    /// weight and then canonical basis order.
    pub fn quotient_basis(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = (0..self.columns.len())
            .filter(|&c| !self.echelon.is_pivot(c))
            .map(|c| (self.columns.ids[c], self.columns.weight[c]))
            .collect();
        out.sort_by_key(|&(id, w)| (w, self.columns.column(id)));
        out
    }

    pub(crate) fn encode(&self, t: &[(u32, Elem)]) -> Result<Terms, ZhuError> {
        self.columns.encode(&self.engine, t, self.cutoff)
    }

    /// Normal form modulo the truncated `O_n(V)`, as source terms supported on
    /// quotient-basis monomials.
    pub fn normal_form_terms(&self, t: &[(u32, Elem)]) -> Result<Terms, ZhuError> {
        let cols = self.encode(t)?;
        Ok(self.columns.decode(&self.echelon.normal_form(&cols)))
    }

    pub fn contains_terms(&self, t: &[(u32, Elem)]) -> Result<bool, ZhuError> {
        Ok(self.echelon.is_member(&self.encode(t)?))
    }

    pub fn contains(&self, v: &GradedVector) -> Result<bool, ZhuError> {
        self.contains_terms(&self.engine.source_terms(v)?)
    }

    pub fn normal_form(&self, v: &GradedVector) -> Result<GradedVector, ZhuError> {
        let t = self.normal_form_terms(&self.engine.source_terms(v)?)?;
        Ok(self.engine.source_vector(&t))
    }

    /// `u ∘^s_{n,t} v` for homogeneous `u, v`; rejected when the top weight
    /// `wt u + wt v + 2n + 1 + t` exceeds the cutoff.
    pub fn circ(&self, u: &GradedVector, v: &GradedVector, s: usize, t: usize) -> Result<GradedVector, ZhuError> {
        let (wu, wv) = (homogeneous(u)?, homogeneous(v)?);
        let top = wu + wv + (2 * self.level + 1 + t) as i64;
        if top > self.cutoff as i64 {
            return Err(ZhuError::Truncation {
                weight: top,
                cap: self.cutoff,
            });
        }
        let (ut, vt) = (self.engine.source_terms(u)?, self.engine.source_terms(v)?);
        let f = self.field();
        let mut acc = BTreeMap::new();
        for (ui, uc) in &ut {
            for (vi, vc) in &vt {
                add_into(f, &mut acc, &circ_ids(&self.engine, *ui, *vi, self.level, s, t), &f.mul(uc, vc));
            }
        }
        Ok(self.engine.source_vector(&finish(f, acc)))
    }

    /// A representative of `[u] *_n [v]`; errors if its support would exceed
    /// the cutoff.
    pub fn star(&self, u: &GradedVector, v: &GradedVector) -> Result<GradedVector, ZhuError> {
        let ut = self.engine.source_terms(u)?;
        let vt = self.engine.source_terms(v)?;
        let top = u.max_weight().unwrap_or(0) + v.max_weight().unwrap_or(0) + 2 * self.level as i64;
        if top > self.cutoff as i64 {
            return Err(ZhuError::Truncation {
                weight: top,
                cap: self.cutoff,
            });
        }
        Ok(self.engine.source_vector(&star_terms(&self.engine, &ut, &vt, self.level)))
    }

    /// True when every relation of `self` lies in the span of `other`'s.
    pub fn relations_within(&self, other: &ZhuTruncation) -> Result<bool, ZhuError> {
        for row in self.echelon.rows() {
            let t = self.columns.decode(row);
            if !other.contains_terms(&t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn homogeneous(v: &GradedVector) -> Result<i64, ZhuError> {
    v.homogeneous_weight().ok_or(ZhuError::Mode(ModeError::NotHomogeneous))
}

/// Largest `k <= min(N_a, N_b)` such that `dim F_j` agree for all `j <= k`.
pub fn agreement_degree(a: &[usize], b: &[usize]) -> Option<usize> {
    let mut out = None;
    for k in 0..a.len().min(b.len()) {
        if a[k] != b[k] {
            break;
        }
        out = Some(k);
    }
    out
}

/// Stabilized, truncated `A_n(V)` with structure constants on the quoted
/// range.
pub struct ZhuAlgebra {
    truncation: ZhuTruncation,
    cutoffs: Vec<usize>,
    dims_by_cutoff: Vec<Vec<usize>>,
    stabilized_through: Option<usize>,
    requested_degree: usize,
    degree: Option<usize>,
    basis: Vec<u32>,
    degrees: Vec<usize>,
    products: BTreeMap<(usize, usize), Vec<Elem>>,
}

impl ZhuAlgebra {
    /// Builds truncations at each cutoff in turn until the filtration
    /// dimensions through `max_degree` agree between two successive cutoffs.
    pub fn compute(config: &VoaConfig, level: usize, max_degree: usize, cutoffs: &[usize]) -> Result<ZhuAlgebra, ZhuError> {
        if cutoffs.is_empty() {
            return Err(ZhuError::EmptyBudget);
        }
        let engine = Rc::new(ModeEngine::new(config));
        let mut tried = Vec::new();
        let mut dims: Vec<Vec<usize>> = Vec::new();
        let mut stabilized = None;
        let mut last = None;
        for &n in cutoffs {
            let t = ZhuTruncation::with_engine(engine.clone(), level, n);
            let d = t.filtration_dims();
            if let Some(prev) = dims.last() {
                stabilized = agreement_degree(prev.as_slice(), &d);
            }
            tried.push(n);
            dims.push(d);
            last = Some(t);
            if stabilized.is_some_and(|k| k >= max_degree) {
                break;
            }
        }
        let truncation = last.expect("non-empty budget");
        let degree = stabilized.map(|k| k.min(max_degree));
        let mut alg = ZhuAlgebra {
            truncation,
            cutoffs: tried,
            dims_by_cutoff: dims,
            stabilized_through: stabilized,
            requested_degree: max_degree,
            degree,
            basis: Vec::new(),
            degrees: Vec::new(),
            products: BTreeMap::new(),
        };
        alg.fill_products()?;
        Ok(alg)
    }

    fn fill_products(&mut self) -> Result<(), ZhuError> {
        let Some(e) = self.degree else {
            return Ok(());
        };
        let t = &self.truncation;
        let f = t.field().clone();
        for (id, w) in t.quotient_basis() {
            if w <= e {
                self.basis.push(id);
                self.degrees.push(w);
            }
        }
        let shift = 2 * t.level();
        for i in 0..self.basis.len() {
            for j in 0..self.basis.len() {
                if self.degrees[i] + self.degrees[j] + shift > e {
                    continue;
                }
                let p = star_terms(
                    &t.engine,
                    &[(self.basis[i], f.one())],
                    &[(self.basis[j], f.one())],
                    t.level(),
                );
                let nf = t.normal_form_terms(&p)?;
                self.products.insert((i, j), self.coordinates(&nf));
            }
        }
        Ok(())
    }

    /// Coordinates of a normal form in the quoted basis.
    fn coordinates(&self, nf: &[(u32, Elem)]) -> Vec<Elem> {
        let f = self.field();
        let mut out = vec![f.zero(); self.basis.len()];
        for (id, c) in nf {
            let i = self
                .basis
                .iter()
                .position(|b| b == id)
                .expect("normal forms of quoted products stay in the quoted range");
            out[i] = c.clone();
        }
        out
    }

    pub fn field(&self) -> &Field {
        self.truncation.field()
    }

    pub fn truncation(&self) -> &ZhuTruncation {
        &self.truncation
    }

    pub fn level(&self) -> usize {
        self.truncation.level()
    }

    pub fn cutoffs(&self) -> &[usize] {
        &self.cutoffs
    }

    pub fn dims_by_cutoff(&self) -> &[Vec<usize>] {
        &self.dims_by_cutoff
    }

    pub fn stabilized_through(&self) -> Option<usize> {
        self.stabilized_through
    }

    pub fn is_stabilized(&self) -> bool {
        self.stabilized_through.is_some_and(|k| k >= self.requested_degree)
    }

    /// Highest filtration degree for which data is quoted.
    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn basis(&self) -> Vec<Monomial> {
        self.basis.iter().map(|&id| self.truncation.engine.source_monomial(id)).collect()
    }

    pub fn basis_ids(&self) -> &[u32] {
        &self.basis
    }

    pub fn basis_degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// `dim F_k` for `k <= degree`.
    pub fn filtration_dims(&self) -> Vec<usize> {
        match self.degree {
            Some(e) => self.truncation.filtration_dims()[..=e].to_vec(),
            None => Vec::new(),
        }
    }

    /// `dim gr_k` for `k <= degree`.
    pub fn graded_dims(&self) -> Vec<usize> {
        let f = self.filtration_dims();
        (0..f.len()).map(|k| f[k] - if k == 0 { 0 } else { f[k - 1] }).collect()
    }

    /// `b_i *_n b_j` in basis coordinates, when quoted.
    pub fn product(&self, i: usize, j: usize) -> Option<&[Elem]> {
        self.products.get(&(i, j)).map(|v| v.as_slice())
    }

    pub fn products(&self) -> &BTreeMap<(usize, usize), Vec<Elem>> {
        &self.products
    }

    /// Product of two coordinate vectors, if all needed constants are quoted.
    pub fn multiply(&self, x: &[Elem], y: &[Elem]) -> Option<Vec<Elem>> {
        let f = self.field();
        let mut out = vec![f.zero(); self.basis.len()];
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let p = self.product(i, j)?;
                let ab = f.mul(a, b);
                for (k, c) in p.iter().enumerate() {
                    if !f.is_zero(c) {
                        out[k] = f.add(&out[k], &f.mul(&ab, c));
                    }
                }
            }
        }
        Some(out)
    }

    fn unit(&self, i: usize) -> Vec<Elem> {
        let f = self.field();
        let mut v = vec![f.zero(); self.basis.len()];
        v[i] = f.one();
        v
    }

    fn label(&self, i: usize) -> String {
        let e = &self.truncation.engine;
        e.source_monomial(self.basis[i]).display(&|g| e.generator_name(g), false)
    }

    /// `b_i b_j = b_j b_i` on every quoted pair.
    pub fn check_commutative(&self) -> Check {
        let mut c = Check::new("commutativity");
        for (&(i, j), p) in &self.products {
            if i < j {
                if let Some(q) = self.product(j, i) {
                    c.record(p == q, || format!("{} * {} != {} * {}", self.label(i), self.label(j), self.label(j), self.label(i)));
                }
            }
        }
        c
    }

    /// `(b_i b_j) b_k = b_i (b_j b_k)` on every triple whose products are quoted.
    pub fn check_associative(&self) -> Check {
        let mut c = Check::new("associativity");
        let e = match self.degree {
            Some(e) => e,
            None => return c,
        };
        let shift = 2 * self.level();
        let n = self.basis.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d = &self.degrees;
                    if d[i] + d[j] + d[k] + 2 * shift > e {
                        continue;
                    }
                    let left = self.product(i, j).and_then(|ij| self.multiply(ij, &self.unit(k)));
                    let right = self.product(j, k).and_then(|jk| self.multiply(&self.unit(i), jk));
                    if let (Some(l), Some(r)) = (left, right) {
                        c.record(l == r, || {
                            format!("({} {}) {} differs", self.label(i), self.label(j), self.label(k))
                        });
                    }
                }
            }
        }
        c
    }

    /// The vacuum class is a two-sided identity.
    pub fn check_identity(&self) -> Check {
        let mut c = Check::new("identity");
        let Some(one) = self.basis.iter().position(|&id| id == 0) else {
            if self.degree.is_some() {
                c.record(false, || "vacuum class missing from the basis".into());
            }
            return c;
        };
        for i in 0..self.basis.len() {
            let u = self.unit(i);
            for (a, b) in [(one, i), (i, one)] {
                if let Some(p) = self.product(a, b) {
                    c.record(p == u.as_slice(), || format!("1 fails as identity on {}", self.label(i)));
                }
            }
        }
        c
    }

    /// `F_p * F_q ⊆ F_{p+q}` on quoted pairs. Only meaningful at level 0:
    /// `*_n` raises weight by up to `2n`, and the level filtration of `A_n(V)`
    /// for `n > 0` does not satisfy this bound.
    pub fn check_filtration(&self) -> Check {
        let mut c = Check::new("filtration");
        if self.level() != 0 {
            return c;
        }
        let f = self.field();
        for (&(i, j), p) in &self.products {
            let bound = self.degrees[i] + self.degrees[j];
            let ok = p
                .iter()
                .enumerate()
                .all(|(k, x)| f.is_zero(x) || self.degrees[k] <= bound);
            c.record(ok, || format!("{} * {} leaves F_{bound}", self.label(i), self.label(j)));
        }
        c
    }

    /// `u * v - v * u - Σ_i C(wt u - 1, i) u_i v ∈ O(V)` for basis vectors
    /// with `wt u + wt v <= degree` (level 0 only).
    pub fn check_commutator_congruence(&self) -> Check {
        let mut c = Check::new("commutator congruence");
        let Some(e) = self.degree else {
            return c;
        };
        if self.level() != 0 {
            return c;
        }
        let t = &self.truncation;
        let eng = &t.engine;
        for wu in 0..=e {
            for um in eng.voa_basis(wu) {
                let u = eng.source_id(&um);
                for wv in 0..=(e - wu) {
                    for vm in eng.voa_basis(wv) {
                        let v = eng.source_id(&vm);
                        let diff = commutator_defect(eng, u, v, wu as i64 - 1);
                        let ok = t.contains_terms(&diff).unwrap_or(false);
                        c.record(ok, || {
                            let names = |g| eng.generator_name(g);
                            format!("{} , {}", um.display(&names, false), vm.display(&names, false))
                        });
                    }
                }
            }
        }
        c
    }

    /// Class of the conformal vector is central on the quoted range.
    pub fn check_omega_central(&self) -> Check {
        let mut c = Check::new("omega central");
        let Some(e) = self.degree else {
            return c;
        };
        let t = &self.truncation;
        let eng = &t.engine;
        let f = t.field();
        let omega = eng.omega_terms().clone();
        let w_omega = 2usize;
        for (i, &b) in self.basis.iter().enumerate() {
            if self.degrees[i] + w_omega + 2 * self.level() > e {
                continue;
            }
            let one = [(b, f.one())];
            let mut l = star_terms(eng, &omega, &one, t.level());
            let r = star_terms(eng, &one, &omega, t.level());
            let mut acc = BTreeMap::new();
            add_into(f, &mut acc, &l, &f.one());
            add_into(f, &mut acc, &r, &f.from_i64(-1));
            l = finish(f, acc);
            c.record(t.contains_terms(&l).unwrap_or(false), || format!("[omega, {}]", self.label(i)));
        }
        c
    }

    /// The truncated associated graded algebra `gr A / gr_{>D}` as structure
    /// constants on the quoted basis; closed under multiplication.
    pub fn graded_structure_constants(&self) -> Vec<Vec<Vec<Elem>>> {
        let f = self.field();
        let n = self.basis.len();
        let mut out = vec![vec![vec![f.zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let d = self.degrees[i] + self.degrees[j];
                if let Some(p) = self.product(i, j) {
                    for k in 0..n {
                        if self.degrees[k] == d {
                            out[i][j][k] = p[k].clone();
                        }
                    }
                }
            }
        }
        out
    }
}

/// `u * v - v * u - Σ_{i>=0} C(e, i) u_i v` at level 0.
pub(crate) fn commutator_defect(engine: &ModeEngine, u: u32, v: u32, e: i64) -> Terms {
    let f = engine.field();
    let one = f.one();
    let mut acc = BTreeMap::new();
    add_into(f, &mut acc, &star_terms(engine, &[(u, one.clone())], &[(v, one.clone())], 0), &one);
    add_into(f, &mut acc, &star_terms(engine, &[(v, one.clone())], &[(u, one.clone())], 0), &f.from_i64(-1));
    let top = engine.source_weight(u) + engine.source_weight(v);
    for i in 0..=top {
        let c = binomial(e, i);
        if c != 0 {
            add_into(f, &mut acc, &engine.mode_ids(u, i as i32, v), &engine.int(-c));
        }
    }
    finish(f, acc)
}
