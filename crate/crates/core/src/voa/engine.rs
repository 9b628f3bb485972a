use std::cell::RefCell;
use std::rc::Rc;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::field::{binomial, int_to_elem, Elem, Field};
use crate::linalg::Matrix;

use super::{Family, GradedVector, Letter, ModeError, ModuleConfig, ModuleKind, Monomial, Terms, VoaConfig};

#[derive(Default)]
struct Interner {
    monos: Vec<Monomial>,
    ids: FxHashMap<Monomial, u32>,
}

impl Interner {
    fn intern(&mut self, m: Monomial) -> u32 {
        if let Some(&id) = self.ids.get(&m) {
            return id;
        }
        let id = self.monos.len() as u32;
        self.monos.push(m.clone());
        self.ids.insert(m, id);
        id
    }
}

/// Accumulates sparse linear combinations keyed by monomial id.
pub(crate) struct Acc<'a> {
    field: &'a Field,
    map: FxHashMap<u32, Elem>,
}

impl<'a> Acc<'a> {
    pub(crate) fn new(field: &'a Field) -> Self {
        Acc {
            field,
            map: FxHashMap::default(),
        }
    }

    pub(crate) fn add(&mut self, id: u32, c: &Elem) {
        let f = self.field;
        match self.map.get_mut(&id) {
            Some(x) => *x = f.add(x, c),
            None => {
                self.map.insert(id, c.clone());
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, terms: &[(u32, Elem)], c: &Elem) {
        let f = self.field;
        if f.is_zero(c) {
            return;
        }
        let unit = f.is_one(c);
        for (id, x) in terms {
            if unit {
                self.add(*id, x);
            } else {
                self.add(*id, &f.mul(x, c));
            }
        }
    }

    pub(crate) fn finish(self) -> Terms {
        let f = self.field;
        let mut out: Terms = self.map.into_iter().filter(|(_, x)| !f.is_zero(x)).collect();
        out.sort_unstable_by_key(|(id, _)| *id);
        out
    }
}

/// Mode engine for one target space: the vertex algebra itself (vacuum
/// target) or one of its induced modules.
///
/// Memo tables live behind `RefCell`s, so an engine is confined to a single
/// thread; independent engines produce value-identical results.
pub struct ModeEngine {
    config: VoaConfig,
    module: Option<ModuleConfig>,
    field: Field,
    truncation: usize,
    min_depth: u8,
    top_dim: usize,
    zero_modes: Vec<Option<Matrix>>,
    inv12_c: Elem,
    level: Elem,
    source: RefCell<Interner>,
    target: Option<RefCell<Interner>>,
    gen_memo: RefCell<FxHashMap<(u8, i32, u32), Rc<Terms>>>,
    mode_memo: RefCell<FxHashMap<(u32, i32, u32), Rc<Terms>>>,
    omega: Terms,
    small: Vec<Elem>,
}

const SMALL_OFFSET: i64 = 64;

impl ModeEngine {
    /// Engine for the vertex algebra acting on itself.
    pub fn new(config: &VoaConfig) -> ModeEngine {
        ModeEngine::build(config, None)
    }

    /// Engine for the vertex algebra acting on an induced module.
    pub fn for_module(module: &ModuleConfig) -> ModeEngine {
        ModeEngine::build(module.base(), Some(module.clone()))
    }

    fn build(config: &VoaConfig, module: Option<ModuleConfig>) -> ModeEngine {
        let f = config.field().clone();
        let gens = config.generator_count();
        let (min_depth, top_dim, zero_modes, truncation) = match &module {
            None => {
                let md = if matches!(config.family(), Family::Virasoro { .. }) { 2 } else { 1 };
                (md, 1, vec![None; gens], config.truncation())
            }
            Some(m) => {
                let zm: Vec<Option<Matrix>> = match m.kind() {
                    ModuleKind::HeisenbergFock { lambda } => lambda
                        .iter()
                        .map(|l| Some(Matrix::from_rows(&f, vec![vec![l.clone()]])))
                        .collect(),
                    ModuleKind::HeisenbergTop { zero_modes } => {
                        zero_modes.iter().cloned().map(Some).collect()
                    }
                    ModuleKind::VirasoroVerma { h } => {
                        vec![Some(Matrix::from_rows(&f, vec![vec![h.clone()]]))]
                    }
                    ModuleKind::Sl2Weyl { top_dim } => sl2_standard(&f, *top_dim).into_iter().map(Some).collect(),
                };
                (1, m.top_dim(), zm, m.truncation())
            }
        };
        let (inv12_c, level) = match config.family() {
            Family::Virasoro { c } => {
                let inv12 = f.from_ratio(1, 12).expect("characteristic checked at construction");
                (f.mul(&inv12, c), f.zero())
            }
            Family::AffineSl2 { level } => (f.zero(), level.clone()),
            Family::Heisenberg { .. } => (f.zero(), f.zero()),
        };
        let small = (-SMALL_OFFSET..=SMALL_OFFSET).map(|n| f.from_i64(n)).collect();
        let mut engine = ModeEngine {
            config: config.clone(),
            target: module.as_ref().map(|_| RefCell::new(Interner::default())),
            module,
            field: f,
            truncation,
            min_depth,
            top_dim,
            zero_modes,
            inv12_c,
            level,
            source: RefCell::new(Interner::default()),
            gen_memo: RefCell::new(FxHashMap::default()),
            mode_memo: RefCell::new(FxHashMap::default()),
            omega: Vec::new(),
            small,
        };
        // ids 0 of both spaces are the vacuum / first top vector
        engine.source.borrow_mut().intern(Monomial::vacuum());
        if let Some(t) = &engine.target {
            t.borrow_mut().intern(Monomial::top(0));
        }
        engine.omega = engine.build_omega();
        engine
    }

    pub fn config(&self) -> &VoaConfig {
        &self.config
    }

    pub fn module(&self) -> Option<&ModuleConfig> {
        self.module.as_ref()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Truncation of the target space.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn top_dim(&self) -> usize {
        self.top_dim
    }

    pub fn is_module(&self) -> bool {
        self.module.is_some()
    }

    pub fn generator_count(&self) -> usize {
        self.config.generator_count()
    }

    pub(crate) fn int(&self, n: i128) -> Elem {
        if (-SMALL_OFFSET as i128..=SMALL_OFFSET as i128).contains(&n) {
            self.small[(n + SMALL_OFFSET as i128) as usize].clone()
        } else {
            int_to_elem(&self.field, n)
        }
    }

    fn tgt(&self) -> &RefCell<Interner> {
        self.target.as_ref().unwrap_or(&self.source)
    }

    pub fn source_id(&self, m: &Monomial) -> u32 {
        self.source.borrow_mut().intern(m.clone())
    }

    pub fn target_id(&self, m: &Monomial) -> u32 {
        self.tgt().borrow_mut().intern(m.clone())
    }

    pub fn source_monomial(&self, id: u32) -> Monomial {
        self.source.borrow().monos[id as usize].clone()
    }

    pub fn target_monomial(&self, id: u32) -> Monomial {
        self.tgt().borrow().monos[id as usize].clone()
    }

    pub fn source_weight(&self, id: u32) -> i64 {
        self.source.borrow().monos[id as usize].weight()
    }

    pub fn target_weight(&self, id: u32) -> i64 {
        self.tgt().borrow().monos[id as usize].weight()
    }

    pub fn generator_name(&self, g: u8) -> String {
        self.config.generator_name(g)
    }

    fn check_generator(&self, g: u8) -> Result<(), ModeError> {
        if (g as usize) < self.generator_count() {
            Ok(())
        } else {
            Err(ModeError::UnknownGenerator(g))
        }
    }

    /// Canonical ordered basis of the weight-`w` piece of the target space.
    pub fn basis(&self, w: usize) -> Result<Vec<Monomial>, ModeError> {
        if w > self.truncation {
            return Err(ModeError::Truncation {
                weight: w as i64,
                cap: self.truncation,
            });
        }
        Ok(self.basis_unchecked(w, self.min_depth, self.top_dim))
    }

    /// Canonical basis of `V_w` (the vertex algebra, regardless of target).
    pub fn voa_basis(&self, w: usize) -> Vec<Monomial> {
        let md = if matches!(self.config.family(), Family::Virasoro { .. }) { 2 } else { 1 };
        self.basis_unchecked(w, md, 1)
    }

    fn basis_unchecked(&self, w: usize, min_depth: u8, top_dim: usize) -> Vec<Monomial> {
        let gens = self.generator_count() as u8;
        let mut words: Vec<SmallVec<[Letter; 8]>> = Vec::new();
        let mut cur: SmallVec<[Letter; 8]> = SmallVec::new();
        fn rec(
            remaining: usize,
            bound: Option<Letter>,
            min_depth: u8,
            gens: u8,
            cur: &mut SmallVec<[Letter; 8]>,
            out: &mut Vec<SmallVec<[Letter; 8]>>,
        ) {
            if remaining == 0 {
                out.push(cur.clone());
                return;
            }
            let max_depth = bound.map_or(remaining, |b| (b.depth as usize).min(remaining));
            for depth in (min_depth as usize..=max_depth).rev() {
                for gen in 0..gens {
                    let l = Letter {
                        gen,
                        depth: depth as u8,
                    };
                    if let Some(b) = bound {
                        if l.key() < b.key() {
                            continue;
                        }
                    }
                    cur.push(l);
                    rec(remaining - depth, Some(l), min_depth, gens, cur, out);
                    cur.pop();
                }
            }
        }
        rec(w, None, min_depth, gens, &mut cur, &mut words);
        let mut out = Vec::with_capacity(words.len() * top_dim);
        for word in words {
            for top in 0..top_dim {
                out.push(Monomial {
                    top: top as u8,
                    word: word.clone(),
                });
            }
        }
        out
    }

    /// Lie bracket `[x(m), y(n)]` as generator modes plus a central scalar.
    fn bracket(&self, x: u8, m: i32, y: u8, n: i32) -> (SmallVec<[(u8, i32, Elem); 2]>, Option<Elem>) {
        let f = &self.field;
        let mut terms = SmallVec::new();
        let mut central = None;
        match self.config.family() {
            Family::Heisenberg { .. } => {
                if x == y && m + n == 0 {
                    central = Some(self.int(m as i128));
                }
            }
            Family::Virasoro { .. } => {
                if m != n {
                    terms.push((0, m + n, self.int((m - n) as i128)));
                }
                if m + n == 0 {
                    let mm = m as i128;
                    let cube = self.int(mm * mm * mm - mm);
                    let c = f.mul(&cube, &self.inv12_c);
                    if !f.is_zero(&c) {
                        central = Some(c);
                    }
                }
            }
            Family::AffineSl2 { .. } => {
                // e = 0, h = 1, f = 2
                let (gen, coef): (Option<u8>, i128) = match (x, y) {
                    (0, 2) => (Some(1), 1),
                    (2, 0) => (Some(1), -1),
                    (1, 0) => (Some(0), 2),
                    (0, 1) => (Some(0), -2),
                    (1, 2) => (Some(2), -2),
                    (2, 1) => (Some(2), 2),
                    _ => (None, 0),
                };
                if let Some(g) = gen {
                    terms.push((g, m + n, self.int(coef)));
                }
                if m + n == 0 {
                    let form = match (x, y) {
                        (0, 2) | (2, 0) => 1,
                        (1, 1) => 2,
                        _ => 0,
                    };
                    if form != 0 && m != 0 {
                        let c = f.mul(&self.int(m as i128 * form), &self.level);
                        if !f.is_zero(&c) {
                            central = Some(c);
                        }
                    }
                }
            }
        }
        (terms, central)
    }

    /// `x(m)` applied to the target basis vector `v` (Lie-algebra index).
    pub(crate) fn gen_on(&self, g: u8, m: i32, v: u32) -> Rc<Terms> {
        if let Some(r) = self.gen_memo.borrow().get(&(g, m, v)) {
            return r.clone();
        }
        let f = &self.field;
        let mono = self.target_monomial(v);
        let result: Terms = if mono.word.is_empty() {
            if m < 0 && -m >= self.min_depth as i32 {
                let mut w = mono.clone();
                w.word.push(Letter {
                    gen: g,
                    depth: (-m) as u8,
                });
                vec![(self.tgt().borrow_mut().intern(w), f.one())]
            } else if m == 0 {
                match &self.zero_modes[g as usize] {
                    Some(z) => {
                        let i = mono.top as usize;
                        let mut out = Vec::new();
                        for j in 0..self.top_dim {
                            let c = z.get(j, i);
                            if !f.is_zero(c) {
                                let id = self.tgt().borrow_mut().intern(Monomial::top(j as u8));
                                out.push((id, c.clone()));
                            }
                        }
                        out
                    }
                    None => Vec::new(),
                }
            } else {
                Vec::new()
            }
        } else {
            let first = mono.word[0];
            let new = Letter {
                gen: g,
                depth: if m < 0 { (-m) as u8 } else { 0 },
            };
            if m < 0 && new.key() <= first.key() {
                let mut w = mono.clone();
                w.word.insert(0, new);
                vec![(self.tgt().borrow_mut().intern(w), f.one())]
            } else {
                let rest = Monomial {
                    top: mono.top,
                    word: mono.word[1..].into(),
                };
                let rest_id = self.tgt().borrow_mut().intern(rest);
                let n = -(first.depth as i32);
                let mut acc = Acc::new(f);
                // x(m) y(n) R = y(n) x(m) R + [x(m), y(n)] R
                let inner = self.gen_on(g, m, rest_id);
                for (w, c) in inner.iter() {
                    let outer = self.gen_on(first.gen, n, *w);
                    acc.add_scaled(&outer, c);
                }
                let (terms, central) = self.bracket(g, m, first.gen, n);
                for (g2, m2, coef) in terms {
                    let t = self.gen_on(g2, m2, rest_id);
                    acc.add_scaled(&t, &coef);
                }
                if let Some(c) = central {
                    acc.add(rest_id, &c);
                }
                acc.finish()
            }
        };
        let rc = Rc::new(result);
        self.gen_memo.borrow_mut().insert((g, m, v), rc.clone());
        rc
    }

    /// Vertex-operator mode `u_k v` for a vertex-algebra basis vector `u` and
    /// a target basis vector `v`, computed exactly (no truncation).
    pub(crate) fn mode_ids(&self, u: u32, k: i32, v: u32) -> Rc<Terms> {
        if let Some(r) = self.mode_memo.borrow().get(&(u, k, v)) {
            return r.clone();
        }
        let f = &self.field;
        let umono = self.source_monomial(u);
        let wt_u = umono.weight();
        let wt_v = self.target_weight(v);
        let result: Rc<Terms> = if wt_u + wt_v - k as i64 - 1 < 0 {
            Rc::new(Vec::new())
        } else if umono.word.is_empty() {
            Rc::new(if k == -1 { vec![(v, f.one())] } else { Vec::new() })
        } else {
            let a = umono.word[0];
            let wa = self.config.generator_weight() as i32;
            let j = -(a.depth as i32) + wa - 1;
            let rest = Monomial {
                top: 0,
                word: umono.word[1..].into(),
            };
            if rest.word.is_empty() && j == -1 {
                self.gen_on(a.gen, k - wa + 1, v)
            } else {
                let b = self.source.borrow_mut().intern(rest);
                let wt_b = self.source_weight(b);
                let bound = (wt_b + wt_v - k as i64 - 1).max(wa as i64 + wt_v - 1);
                let sign_j: i128 = if j % 2 == 0 { 1 } else { -1 };
                let mut acc = Acc::new(f);
                for i in 0..=bound.max(0) as i32 {
                    let sign_i: i128 = if i % 2 == 0 { 1 } else { -1 };
                    let coef = sign_i * binomial(j as i64, i as i64);
                    if coef == 0 {
                        continue;
                    }
                    let coef_e = self.int(coef);
                    // a_{j-i} (b_{k+i} v)
                    if wt_b + wt_v - (k + i) as i64 - 1 >= 0 {
                        let bv = self.mode_ids(b, k + i, v);
                        for (w, c) in bv.iter() {
                            let t = self.gen_on(a.gen, j - i - wa + 1, *w);
                            acc.add_scaled(&t, &f.mul(&coef_e, c));
                        }
                    }
                    // -(-1)^j b_{j+k-i} (a_i v)
                    if wa as i64 + wt_v - i as i64 - 1 >= 0 {
                        let av = self.gen_on(a.gen, i - wa + 1, v);
                        let scale = self.int(-sign_j * coef);
                        for (w, c) in av.iter() {
                            let t = self.mode_ids(b, j + k - i, *w);
                            acc.add_scaled(&t, &f.mul(&scale, c));
                        }
                    }
                }
                Rc::new(acc.finish())
            }
        };
        self.mode_memo.borrow_mut().insert((u, k, v), result.clone());
        result
    }

    /// `u_k v` for sparse source/target combinations.
    pub(crate) fn mode_terms(&self, u: &[(u32, Elem)], k: i32, v: &[(u32, Elem)]) -> Terms {
        let f = &self.field;
        let mut acc = Acc::new(f);
        for (ui, uc) in u {
            for (vi, vc) in v {
                let t = self.mode_ids(*ui, k, *vi);
                acc.add_scaled(&t, &f.mul(uc, vc));
            }
        }
        acc.finish()
    }

    /// Generator mode on sparse target combinations.
    pub(crate) fn gen_terms(&self, g: u8, m: i32, v: &[(u32, Elem)]) -> Terms {
        let f = &self.field;
        let mut acc = Acc::new(f);
        for (vi, vc) in v {
            acc.add_scaled(&self.gen_on(g, m, *vi), vc);
        }
        acc.finish()
    }

    fn build_omega(&self) -> Terms {
        let f = &self.field;
        let vac = 0u32;
        match self.config.family() {
            Family::Virasoro { .. } => {
                let id = self.source_id(&Monomial::from_letters(0, &[(0, 2)]));
                vec![(id, f.one())]
            }
            Family::Heisenberg { rank } => {
                let half = f.from_ratio(1, 2).unwrap();
                let mut acc = Acc::new(f);
                for a in 0..*rank as u8 {
                    let id = self.source_id(&Monomial::from_letters(0, &[(a, 1), (a, 1)]));
                    acc.add(id, &half);
                }
                let _ = vac;
                acc.finish()
            }
            Family::AffineSl2 { level } => {
                // (e(-1)f(-1) + f(-1)e(-1) + 1/2 h(-1)h(-1)) / (2(k+2)), straightened
                let scale = f
                    .inv(&f.mul(&f.from_i64(2), &f.add(level, &f.from_i64(2))))
                    .unwrap();
                let half = f.from_ratio(1, 2).unwrap();
                let e1 = self.source_id(&Monomial::from_letters(0, &[(0, 1)]));
                let f1 = self.source_id(&Monomial::from_letters(0, &[(2, 1)]));
                let h1 = self.source_id(&Monomial::from_letters(0, &[(1, 1)]));
                let ef = self.source_id(&Monomial::from_letters(0, &[(0, 1), (2, 1)]));
                let hh = self.source_id(&Monomial::from_letters(0, &[(1, 1), (1, 1)]));
                let _ = (e1, h1);
                let mut acc = Acc::new(f);
                acc.add(ef, &f.one());
                // f(-1) e(-1)|0> = e(-1) f(-1)|0> + [f, e](-2)|0>
                let fe = self.source_straighten(2, -1, e1);
                acc.add_scaled(&fe, &f.one());
                acc.add(hh, &half);
                let _ = f1;
                let mut out = acc.finish();
                for (_, c) in out.iter_mut() {
                    *c = f.mul(c, &scale);
                }
                out
            }
        }
    }

    /// Generator mode on a vertex-algebra basis vector, used only while
    /// building ω (where source and target may differ).
    fn source_straighten(&self, g: u8, m: i32, v: u32) -> Terms {
        if self.target.is_none() {
            return (*self.gen_on(g, m, v)).clone();
        }
        let voa = ModeEngine::new(&self.config);
        let mono = self.source_monomial(v);
        let vid = voa.source_id(&mono);
        voa.gen_on(g, m, vid)
            .iter()
            .map(|(id, c)| (self.source_id(&voa.source_monomial(*id)), c.clone()))
            .collect()
    }

    /// ω as source-space terms.
    pub(crate) fn omega_terms(&self) -> &Terms {
        &self.omega
    }

    pub fn omega(&self) -> GradedVector {
        self.source_vector(&self.omega)
    }

    pub fn source_vector(&self, t: &[(u32, Elem)]) -> GradedVector {
        GradedVector::from_terms(
            &self.field,
            t.iter().map(|(id, c)| (self.source_monomial(*id), c.clone())).collect(),
        )
    }

    pub fn target_vector(&self, t: &[(u32, Elem)]) -> GradedVector {
        GradedVector::from_terms(
            &self.field,
            t.iter().map(|(id, c)| (self.target_monomial(*id), c.clone())).collect(),
        )
    }

    fn check_normal(&self, v: &GradedVector) -> Result<(), ModeError> {
        for m in v.terms().keys() {
            if !m.is_normal() || m.word.iter().any(|l| (l.gen as usize) >= self.generator_count()) {
                return Err(ModeError::InvalidConfig(format!("monomial {m:?} is not a basis word")));
            }
        }
        Ok(())
    }

    pub fn source_terms(&self, v: &GradedVector) -> Result<Terms, ModeError> {
        self.check_normal(v)?;
        Ok(v.terms().iter().map(|(m, c)| (self.source_id(m), c.clone())).collect())
    }

    pub fn target_terms(&self, v: &GradedVector) -> Result<Terms, ModeError> {
        self.check_normal(v)?;
        Ok(v.terms().iter().map(|(m, c)| (self.target_id(m), c.clone())).collect())
    }

    fn truncate(&self, terms: &[(u32, Elem)]) -> GradedVector {
        let cap = self.truncation as i64;
        let kept: Vec<(u32, Elem)> = terms
            .iter()
            .filter(|(id, _)| self.target_weight(*id) <= cap)
            .cloned()
            .collect();
        let mut out = self.target_vector(&kept);
        if kept.len() != terms.len() {
            out.mark_truncated();
        }
        out
    }

    /// `x(m) v` with the Lie-algebra index `m` (`L(m)` for Virasoro).
    /// Terms above the truncation are dropped and the result flagged.
    pub fn generator_mode(&self, g: u8, m: i32, v: &GradedVector) -> Result<GradedVector, ModeError> {
        self.check_generator(g)?;
        let vt = self.target_terms(v)?;
        Ok(self.truncate(&self.gen_terms(g, m, &vt)))
    }

    /// `u_k v` with the vertex-operator index `k`.
    pub fn mode(&self, u: &GradedVector, k: i32, v: &GradedVector) -> Result<GradedVector, ModeError> {
        let ut = self.source_terms(u)?;
        let vt = self.target_terms(v)?;
        Ok(self.truncate(&self.mode_terms(&ut, k, &vt)))
    }

    /// Matrix of `o(u) = u_{wt u - 1}` on the target grade `t`, in the
    /// canonical basis order of [`ModeEngine::basis`].
    pub fn zero_mode_matrix(&self, u: &GradedVector, t: usize) -> Result<Matrix, ModeError> {
        let wt = match u.homogeneous_weight() {
            Some(w) if !u.is_zero() => w,
            Some(_) => 0,
            None => return Err(ModeError::NotHomogeneous),
        };
        let ut = self.source_terms(u)?;
        let basis = self.basis(t)?;
        let ids: Vec<u32> = basis.iter().map(|m| self.target_id(m)).collect();
        self.zero_mode_on(&ut, wt, &ids)
    }

    pub(crate) fn zero_mode_on(&self, ut: &[(u32, Elem)], wt: i64, ids: &[u32]) -> Result<Matrix, ModeError> {
        let f = &self.field;
        let index: FxHashMap<u32, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let d = ids.len();
        let mut m = Matrix::zeros(f, d, d);
        for (col, &v) in ids.iter().enumerate() {
            let img = self.mode_terms(ut, (wt - 1) as i32, &[(v, f.one())]);
            for (id, c) in img {
                let row = *index.get(&id).ok_or(ModeError::Truncation {
                    weight: self.target_weight(id),
                    cap: self.truncation,
                })?;
                m.set(row, col, c);
            }
        }
        Ok(m)
    }

    /// Number of memoised mode results (diagnostics).
    pub fn memo_sizes(&self) -> (usize, usize) {
        (self.gen_memo.borrow().len(), self.mode_memo.borrow().len())
    }
}

/// Standard `d`-dimensional sl2 representation in the basis `v_i = f^i v_0`:
/// `e v_i = i(d-i) v_{i-1}`, `h v_i = (d-1-2i) v_i`, `f v_i = v_{i+1}`.
pub fn sl2_standard(field: &Field, d: usize) -> [Matrix; 3] {
    let mut e = Matrix::zeros(field, d, d);
    let mut h = Matrix::zeros(field, d, d);
    let mut fm = Matrix::zeros(field, d, d);
    for i in 0..d {
        h.set(i, i, field.from_i64(d as i64 - 1 - 2 * i as i64));
        if i > 0 {
            e.set(i - 1, i, field.from_i64((i * (d - i)) as i64));
        }
        if i + 1 < d {
            fm.set(i + 1, i, field.one());
        }
    }
    [e, h, fm]
}
