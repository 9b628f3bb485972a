use std::collections::BTreeMap;
use std::rc::Rc;

use serde::Serialize;

use crate::check::Check;
use crate::field::{Elem, Field};
use crate::linalg::SparseEchelon;
use crate::voa::{ModeEngine, Monomial};

use super::{Columns, ZhuAlgebra};

/// `R(V) = V / C2(V)` truncated at weight `N`, with the product `u_{-1} v`
/// and bracket `u_0 v`. Since `C2(V)` is graded the truncation is exact.
pub struct C2Algebra {
    engine: Rc<ModeEngine>,
    cutoff: usize,
    columns: Columns,
    echelon: SparseEchelon,
    basis: Vec<u32>,
    degrees: Vec<usize>,
    products: BTreeMap<(usize, usize), Vec<Elem>>,
    brackets: BTreeMap<(usize, usize), Vec<Elem>>,
}

impl C2Algebra {
    pub fn build(engine: Rc<ModeEngine>, cutoff: usize) -> C2Algebra {
        let f = engine.field().clone();
        let columns = Columns::new(&engine, cutoff);
        let mut echelon = SparseEchelon::new(&f, columns.len());
        let by_weight: Vec<Vec<u32>> = (0..=cutoff)
            .map(|w| engine.voa_basis(w).iter().map(|m| engine.source_id(m)).collect())
            .collect();
        // u_{-2-j} v for wt u >= 1 (1_{-2-j} = 0)
        for wu in 1..=cutoff {
            for wv in 0..=cutoff {
                if wu + wv + 1 > cutoff {
                    continue;
                }
                for j in 0..=(cutoff - wu - wv - 1) {
                    for &u in &by_weight[wu] {
                        for &v in &by_weight[wv] {
                            let t = engine.mode_ids(u, -2 - j as i32, v);
                            let cols = columns.encode(&engine, &t, cutoff).expect("graded element inside cutoff");
                            echelon.insert(&cols);
                        }
                    }
                }
            }
        }
        let mut basis_w: Vec<(usize, u32)> = (0..columns.len())
            .filter(|&c| !echelon.is_pivot(c))
            .map(|c| (columns.weight[c], c as u32))
            .collect();
        basis_w.sort();
        let basis: Vec<u32> = basis_w.iter().map(|&(_, c)| columns.ids[c as usize]).collect();
        let degrees: Vec<usize> = basis_w.iter().map(|&(w, _)| w).collect();
        let mut alg = C2Algebra {
            engine,
            cutoff,
            columns,
            echelon,
            basis,
            degrees,
            products: BTreeMap::new(),
            brackets: BTreeMap::new(),
        };
        let n = alg.basis.len();
        for i in 0..n {
            for j in 0..n {
                if alg.degrees[i] + alg.degrees[j] > cutoff {
                    continue;
                }
                let p = alg.engine.mode_ids(alg.basis[i], -1, alg.basis[j]);
                let b = alg.engine.mode_ids(alg.basis[i], 0, alg.basis[j]);
                let (p, b) = (alg.coordinates(&p), alg.coordinates(&b));
                alg.products.insert((i, j), p);
                alg.brackets.insert((i, j), b);
            }
        }
        alg
    }

    pub fn field(&self) -> &Field {
        self.engine.field()
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn engine(&self) -> &Rc<ModeEngine> {
        &self.engine
    }

    /// Coordinates in the `R(V)` basis of the class of a source combination.
    pub fn coordinates(&self, t: &[(u32, Elem)]) -> Vec<Elem> {
        let f = self.field();
        let cols = self
            .columns
            .encode(&self.engine, t, self.cutoff)
            .expect("coordinates requested inside the cutoff");
        let nf = self.columns.decode(&self.echelon.normal_form(&cols));
        let mut out = vec![f.zero(); self.basis.len()];
        for (id, c) in nf {
            let i = self.basis.iter().position(|&b| b == id).expect("normal form on basis");
            out[i] = c;
        }
        out
    }

    pub fn contains_terms(&self, t: &[(u32, Elem)]) -> bool {
        match self.columns.encode(&self.engine, t, self.cutoff) {
            Ok(cols) => self.echelon.is_member(&cols),
            Err(_) => false,
        }
    }

    pub fn basis(&self) -> Vec<Monomial> {
        self.basis.iter().map(|&id| self.engine.source_monomial(id)).collect()
    }

    pub fn basis_ids(&self) -> &[u32] {
        &self.basis
    }

    pub fn basis_degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// `dim R(V)_w` for `w = 0..=N`.
    pub fn graded_dims(&self) -> Vec<usize> {
        let mut d = vec![0; self.cutoff + 1];
        for &w in &self.degrees {
            d[w] += 1;
        }
        d
    }

    pub fn product(&self, i: usize, j: usize) -> Option<&[Elem]> {
        self.products.get(&(i, j)).map(|v| v.as_slice())
    }

    pub fn bracket(&self, i: usize, j: usize) -> Option<&[Elem]> {
        self.brackets.get(&(i, j)).map(|v| v.as_slice())
    }

    pub fn products(&self) -> &BTreeMap<(usize, usize), Vec<Elem>> {
        &self.products
    }

    pub fn brackets(&self) -> &BTreeMap<(usize, usize), Vec<Elem>> {
        &self.brackets
    }

    fn apply(&self, table: &BTreeMap<(usize, usize), Vec<Elem>>, x: &[Elem], y: &[Elem]) -> Option<Vec<Elem>> {
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
                let p = table.get(&(i, j))?;
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
        let e = &self.engine;
        e.source_monomial(self.basis[i]).display(&|g| e.generator_name(g), false)
    }

    /// Commutativity and associativity of the product, antisymmetry of the
    /// bracket, and the Leibniz rule `{a, bc} = {a, b} c + b {a, c}`.
    pub fn poisson_checks(&self) -> Vec<Check> {
        let f = self.field();
        let n = self.basis.len();
        let d = &self.degrees;
        let mut comm = Check::new("R(V) commutativity");
        let mut assoc = Check::new("R(V) associativity");
        let mut anti = Check::new("R(V) bracket antisymmetry");
        let mut leibniz = Check::new("R(V) Leibniz rule");
        for (&(i, j), p) in &self.products {
            if i <= j {
                comm.record(Some(p.as_slice()) == self.product(j, i), || format!("{} . {}", self.label(i), self.label(j)));
                let b = &self.brackets[&(i, j)];
                let neg: Vec<Elem> = self.brackets[&(j, i)].iter().map(|x| f.neg(x)).collect();
                anti.record(*b == neg, || format!("{{{}, {}}}", self.label(i), self.label(j)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if d[i] + d[j] + d[k] > self.cutoff {
                        continue;
                    }
                    let (ui, uj, uk) = (self.unit(i), self.unit(j), self.unit(k));
                    let pj_k = self.apply(&self.products, &uj, &uk);
                    let l = self.apply(&self.products, &self.apply(&self.products, &ui, &uj).unwrap(), &uk);
                    let r = pj_k.as_ref().and_then(|jk| self.apply(&self.products, &ui, jk));
                    if let (Some(l), Some(r)) = (l, r) {
                        assoc.record(l == r, || format!("({} {}) {}", self.label(i), self.label(j), self.label(k)));
                    }
                    let lhs = pj_k.as_ref().and_then(|jk| self.apply(&self.brackets, &ui, jk));
                    let t1 = self
                        .apply(&self.brackets, &ui, &uj)
                        .and_then(|ij| self.apply(&self.products, &ij, &uk));
                    let t2 = self
                        .apply(&self.brackets, &ui, &uk)
                        .and_then(|ik| self.apply(&self.products, &uj, &ik));
                    if let (Some(lhs), Some(t1), Some(t2)) = (lhs, t1, t2) {
                        let rhs: Vec<Elem> = t1.iter().zip(&t2).map(|(a, b)| f.add(a, b)).collect();
                        leibniz.record(lhs == rhs, || {
                            format!("{{{}, {} {}}}", self.label(i), self.label(j), self.label(k))
                        });
                    }
                }
            }
        }
        vec![comm, assoc, anti, leibniz]
    }
}

/// Verification of `φ: R(V) -> gr A(V)`, `ū ↦ u + F_{w-1}` for `u ∈ V_w`, on
/// the quoted degrees.
#[derive(Clone, Debug, Serialize)]
pub struct PhiReport {
    pub degree: Option<usize>,
    pub r_dims: Vec<usize>,
    pub gr_dims: Vec<usize>,
    pub checks: Vec<Check>,
}

impl PhiReport {
    pub fn all_passed(&self) -> bool {
        crate::check::all_passed(&self.checks)
    }

    pub fn check(zhu: &ZhuAlgebra, c2: &C2Algebra) -> PhiReport {
        let f = zhu.field().clone();
        let mut well = Check::new("phi well-defined");
        let mut onto = Check::new("phi surjective");
        let mut mult = Check::new("phi multiplicative");
        let Some(e) = zhu.degree().filter(|&e| e <= c2.cutoff() && zhu.level() == 0) else {
            return PhiReport {
                degree: None,
                r_dims: Vec::new(),
                gr_dims: Vec::new(),
                checks: vec![well, onto, mult],
            };
        };
        let t = zhu.truncation();
        let zdeg = zhu.basis_degrees();
        let zbasis = zhu.basis_ids();
        // φ of a homogeneous weight-w combination, as zhu coordinates of degree w
        let phi = |terms: &[(u32, Elem)], w: usize| -> Vec<Elem> {
            let nf = t.normal_form_terms(terms).expect("inside cutoff");
            let mut out = vec![f.zero(); zbasis.len()];
            for (id, c) in nf {
                if let Some(i) = zbasis.iter().position(|&b| b == id) {
                    if zdeg[i] == w {
                        out[i] = c;
                    }
                }
            }
            out
        };
        // well-defined: weight-w relations of C2 vanish in gr_w
        for row in c2.echelon.rows() {
            let terms = c2.columns.decode(row);
            let w = c2.engine.source_weight(terms[0].0) as usize;
            if w > e {
                continue;
            }
            let img = phi(&terms, w);
            well.record(img.iter().all(|x| f.is_zero(x)), || format!("C2 relation of weight {w} survives"));
        }
        let rb = c2.basis_ids();
        let rdeg = c2.basis_degrees();
        let images: Vec<Vec<Elem>> = rb
            .iter()
            .zip(rdeg)
            .map(|(&id, &w)| if w <= e { phi(&[(id, f.one())], w) } else { Vec::new() })
            .collect();
        let gr_dims = zhu.graded_dims();
        let mut r_dims = vec![0; e + 1];
        for w in 0..=e {
            let rows: Vec<Vec<Elem>> = (0..rb.len()).filter(|&i| rdeg[i] == w).map(|i| images[i].clone()).collect();
            r_dims[w] = rows.len();
            let rank = if rows.is_empty() {
                0
            } else {
                crate::linalg::Matrix::from_rows(&f, rows).rank()
            };
            onto.record(rank == gr_dims[w], || format!("degree {w}: image rank {rank} < {}", gr_dims[w]));
        }
        let gsc = zhu.graded_structure_constants();
        for i in 0..rb.len() {
            for j in 0..rb.len() {
                if rdeg[i] + rdeg[j] > e {
                    continue;
                }
                let Some(p) = c2.product(i, j) else { continue };
                // φ(ā b̄) through the R(V) structure constants
                let mut left = vec![f.zero(); zbasis.len()];
                for (k, c) in p.iter().enumerate() {
                    if f.is_zero(c) {
                        continue;
                    }
                    for (x, y) in left.iter_mut().zip(&images[k]) {
                        *x = f.add(x, &f.mul(c, y));
                    }
                }
                // φ(ā) φ(b̄) through the gr A(V) structure constants
                let mut right = vec![f.zero(); zbasis.len()];
                for (a, x) in images[i].iter().enumerate() {
                    for (b, y) in images[j].iter().enumerate() {
                        if f.is_zero(x) || f.is_zero(y) {
                            continue;
                        }
                        let xy = f.mul(x, y);
                        for (k, r) in right.iter_mut().enumerate() {
                            *r = f.add(r, &f.mul(&xy, &gsc[a][b][k]));
                        }
                    }
                }
                mult.record(left == right, || format!("phi({} . {})", c2.label(i), c2.label(j)));
            }
        }
        PhiReport {
            degree: Some(e),
            r_dims,
            gr_dims,
            checks: vec![well, onto, mult],
        }
    }
}
