use serde::Serialize;

use crate::check::Check;
use crate::field::Elem;

use super::engine::Acc;
use super::{ModeEngine, Monomial, Terms};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub depth: usize,
    pub checks: Vec<Check>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        crate::check::all_passed(&self.checks)
    }
}

impl ModeEngine {
    /// Component checks of the vertex operator algebra axioms on the vacuum
    /// module, over all basis pairs `u, v` with `wt u + wt v <= depth` and all
    /// mode indices whose output weight lies in `0..=depth`.
    pub fn check_axioms(&self, depth: usize) -> AxiomReport {
        if self.is_module() {
            return ModeEngine::new(self.config()).check_axioms(depth);
        }
        let f = self.field().clone();
        let names = |g: u8| self.generator_name(g);
        let show = |m: &Monomial| m.display(&names, false);
        let by_weight: Vec<Vec<u32>> = (0..=depth)
            .map(|w| self.voa_basis(w).iter().map(|m| self.source_id(m)).collect())
            .collect();
        let omega: Terms = self.omega_terms().clone();
        let c = self.config().central_charge();

        let mut grading = Check::new("grading");
        let mut vacuum = Check::new("vacuum");
        let mut creation = Check::new("creation");
        let mut l0 = Check::new("L(0) eigenvalue");
        let mut deriv = Check::new("L(-1) derivative");
        let mut virasoro = Check::new("Virasoro relations of omega");

        let vac = 0u32;
        for s in 0..=depth {
            for &u in &by_weight[s] {
                // creation: u_{-1} 1 = u and u_k 1 = 0 for k >= 0
                let got = self.mode_ids(u, -1, vac);
                creation.record(got.as_slice() == [(u, f.one())], || {
                    format!("{}_(-1)|0> != {}", show(&self.source_monomial(u)), show(&self.source_monomial(u)))
                });
                for k in 0..=(s as i32) {
                    let got = self.mode_ids(u, k, vac);
                    creation.record(got.is_empty(), || {
                        format!("{}_({k})|0> != 0", show(&self.source_monomial(u)))
                    });
                }
                // vacuum: 1_k u = δ_{k,-1} u
                for k in -(depth as i32 - s as i32 + 1)..=(s as i32 + 1) {
                    let got = self.mode_ids(vac, k, u);
                    let ok = if k == -1 {
                        got.as_slice() == [(u, f.one())]
                    } else {
                        got.is_empty()
                    };
                    vacuum.record(ok, || format!("1_({k}) {} wrong", show(&self.source_monomial(u))));
                }
                // L(0) eigenvalue
                let got = self.mode_terms(&omega, 1, &[(u, f.one())]);
                let weight = f.from_i64(s as i64);
                let want = if f.is_zero(&weight) {
                    Vec::new()
                } else {
                    vec![(u, weight)]
                };
                l0.record(got == want, || format!("L(0) {} != {s}", show(&self.source_monomial(u))));

                let lm1_u = self.mode_terms(&omega, 0, &[(u, f.one())]);
                for t in 0..=(depth - s) {
                    for &v in &by_weight[t] {
                        let lo = s as i32 + t as i32 - 1 - depth as i32;
                        let hi = s as i32 + t as i32 - 1;
                        for k in lo..=hi {
                            let out = self.mode_ids(u, k, v);
                            let target = (s + t) as i64 - k as i64 - 1;
                            let ok = out.iter().all(|(id, _)| self.source_weight(*id) == target);
                            grading.record(ok, || {
                                format!(
                                    "{}_({k}) {} leaves weight {target}",
                                    show(&self.source_monomial(u)),
                                    show(&self.source_monomial(v))
                                )
                            });
                            // (L(-1)u)_k v = -k u_{k-1} v
                            let lhs = self.mode_terms(&lm1_u, k, &[(v, f.one())]);
                            let prev = self.mode_ids(u, k - 1, v);
                            let mut acc = Acc::new(&f);
                            acc.add_scaled(&prev, &f.from_i64(-(k as i64)));
                            let rhs = acc.finish();
                            deriv.record(lhs == rhs, || {
                                format!(
                                    "(L(-1){})_({k}) {} mismatch",
                                    show(&self.source_monomial(u)),
                                    show(&self.source_monomial(v))
                                )
                            });
                        }
                    }
                }
            }
        }

        // [L(m), L(n)] = (m-n) L(m+n) + (m^3-m)/12 δ c on every v
        let inv12 = f.from_ratio(1, 12).ok();
        for t in 0..=depth {
            for &v in &by_weight[t] {
                for m in -2i32..=2 {
                    for n in -2i32..=2 {
                        if t as i32 - m - n > depth as i32 {
                            continue;
                        }
                        let lm = |k: i32, x: &[(u32, Elem)]| self.mode_terms(&omega, k + 1, x);
                        let one = [(v, f.one())];
                        let a = lm(m, &lm(n, &one));
                        let b = lm(n, &lm(m, &one));
                        let mut acc = Acc::new(&f);
                        acc.add_scaled(&a, &f.one());
                        acc.add_scaled(&b, &f.from_i64(-1));
                        acc.add_scaled(&lm(m + n, &one), &f.from_i64(-(m - n) as i64));
                        if m + n == 0 {
                            if let Some(inv12) = &inv12 {
                                let mm = m as i64;
                                let central = f.mul(&f.mul(&f.from_i64(mm * mm * mm - mm), inv12), &c);
                                acc.add(v, &f.neg(&central));
                            }
                        }
                        let rest = acc.finish();
                        virasoro.record(rest.is_empty(), || {
                            format!("[L({m}),L({n})] fails on {}", show(&self.source_monomial(v)))
                        });
                    }
                }
            }
        }

        AxiomReport {
            depth,
            checks: vec![
                grading,
                vacuum,
                creation,
                l0,
                deriv,
                virasoro,
            ],
        }
    }
}
