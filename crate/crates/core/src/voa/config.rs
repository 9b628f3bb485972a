use crate::field::{Elem, Field};
use crate::linalg::Matrix;

use super::ModeError;

/// The three strongly generated families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Rank-`r` Heisenberg with `[h^a(m), h^b(n)] = m δ_ab δ_{m+n,0}`.
    Heisenberg { rank: usize },
    /// Universal Virasoro vertex algebra of central charge `c`.
    Virasoro { c: Elem },
    /// Universal affine vertex algebra of sl2 at level `k`.
    AffineSl2 { level: Elem },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoaConfig {
    family: Family,
    field: Field,
    truncation: usize,
}

impl VoaConfig {
    pub fn new(family: Family, field: &Field, truncation: usize) -> Result<VoaConfig, ModeError> {
        match &family {
            Family::Heisenberg { rank } => {
                if *rank == 0 || *rank > 16 {
                    return Err(ModeError::InvalidConfig(format!(
                        "Heisenberg rank must be in 1..=16, got {rank}"
                    )));
                }
            }
            Family::Virasoro { .. } => {
                if field.characteristic() == 3 {
                    return Err(ModeError::InvalidConfig(
                        "Virasoro needs 1/12; characteristic 3 is excluded".into(),
                    ));
                }
            }
            Family::AffineSl2 { level } => {
                let shifted = field.add(level, &field.from_i64(2));
                if field.is_zero(&shifted) {
                    return Err(ModeError::InvalidConfig(
                        "affine sl2 needs k + 2 invertible (critical level)".into(),
                    ));
                }
            }
        }
        Ok(VoaConfig {
            family,
            field: field.clone(),
            truncation,
        })
    }

    pub fn heisenberg(rank: usize, field: &Field, truncation: usize) -> Result<VoaConfig, ModeError> {
        VoaConfig::new(Family::Heisenberg { rank }, field, truncation)
    }

    pub fn virasoro(c: Elem, field: &Field, truncation: usize) -> Result<VoaConfig, ModeError> {
        VoaConfig::new(Family::Virasoro { c }, field, truncation)
    }

    pub fn affine_sl2(level: Elem, field: &Field, truncation: usize) -> Result<VoaConfig, ModeError> {
        VoaConfig::new(Family::AffineSl2 { level }, field, truncation)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn with_truncation(&self, truncation: usize) -> VoaConfig {
        VoaConfig {
            truncation,
            ..self.clone()
        }
    }

    /// Same family with parameters embedded into `target`.
    pub fn embed(&self, target: &Field) -> Result<VoaConfig, ModeError> {
        let f = &self.field;
        let family = match &self.family {
            Family::Heisenberg { rank } => Family::Heisenberg { rank: *rank },
            Family::Virasoro { c } => Family::Virasoro { c: f.embed(c, target)? },
            Family::AffineSl2 { level } => Family::AffineSl2 {
                level: f.embed(level, target)?,
            },
        };
        VoaConfig::new(family, target, self.truncation)
    }

    pub fn family_name(&self) -> &'static str {
        match self.family {
            Family::Heisenberg { .. } => "heisenberg",
            Family::Virasoro { .. } => "virasoro",
            Family::AffineSl2 { .. } => "affine_sl2",
        }
    }

    pub fn generator_count(&self) -> usize {
        match self.family {
            Family::Heisenberg { rank } => rank,
            Family::Virasoro { .. } => 1,
            Family::AffineSl2 { .. } => 3,
        }
    }

    /// Conformal weight of the generating fields.
    pub fn generator_weight(&self) -> i64 {
        match self.family {
            Family::Virasoro { .. } => 2,
            _ => 1,
        }
    }

    pub fn generator_name(&self, g: u8) -> String {
        match self.family {
            Family::Heisenberg { rank: 1 } => "h".into(),
            Family::Heisenberg { .. } => format!("h{}", g + 1),
            Family::Virasoro { .. } => "L".into(),
            Family::AffineSl2 { .. } => ["e", "h", "f"][g as usize].into(),
        }
    }

    /// Central charge of the conformal vector used by the engine.
    pub fn central_charge(&self) -> Elem {
        let f = &self.field;
        match &self.family {
            Family::Heisenberg { rank } => f.from_i64(*rank as i64),
            Family::Virasoro { c } => c.clone(),
            Family::AffineSl2 { level } => {
                let num = f.mul(&f.from_i64(3), level);
                let den = f.add(level, &f.from_i64(2));
                f.div(&num, &den).expect("k + 2 checked at construction")
            }
        }
    }
}

/// Top-space data of the admissible modules built by the engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    /// Heisenberg Fock space with `h^a(0)` acting by the scalar `λ_a`.
    HeisenbergFock { lambda: Vec<Elem> },
    /// Heisenberg module induced from a top space on which `h^a(0)` acts by
    /// the given pairwise commuting matrices.
    HeisenbergTop { zero_modes: Vec<Matrix> },
    /// Verma module `M(c, h)`, not quotiented.
    VirasoroVerma { h: Elem },
    /// Module induced from the `d`-dimensional standard sl2 representation.
    Sl2Weyl { top_dim: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleConfig {
    base: VoaConfig,
    kind: ModuleKind,
    truncation: usize,
}

impl ModuleConfig {
    pub fn new(base: &VoaConfig, kind: ModuleKind, truncation: usize) -> Result<ModuleConfig, ModeError> {
        let f = base.field();
        match (&base.family, &kind) {
            (Family::Heisenberg { rank }, ModuleKind::HeisenbergFock { lambda }) => {
                if lambda.len() != *rank {
                    return Err(ModeError::InvalidConfig(format!(
                        "expected {rank} zero-mode eigenvalues, got {}",
                        lambda.len()
                    )));
                }
            }
            (Family::Heisenberg { rank }, ModuleKind::HeisenbergTop { zero_modes }) => {
                if zero_modes.len() != *rank || zero_modes.is_empty() {
                    return Err(ModeError::InvalidConfig(format!(
                        "expected {rank} zero-mode matrices"
                    )));
                }
                let d = zero_modes[0].rows();
                for m in zero_modes {
                    if !m.is_square() || m.rows() != d || m.field() != f {
                        return Err(ModeError::InvalidConfig(
                            "zero-mode matrices must be square, equal-sized, over the base field".into(),
                        ));
                    }
                }
                for a in zero_modes {
                    for b in zero_modes {
                        if a.mul(b) != b.mul(a) {
                            return Err(ModeError::InvalidConfig(
                                "Heisenberg zero modes must commute".into(),
                            ));
                        }
                    }
                }
                if d == 0 || d > 255 {
                    return Err(ModeError::InvalidConfig("top dimension out of range".into()));
                }
            }
            (Family::Virasoro { .. }, ModuleKind::VirasoroVerma { .. }) => {}
            (Family::AffineSl2 { .. }, ModuleKind::Sl2Weyl { top_dim }) => {
                if *top_dim == 0 || *top_dim > 255 {
                    return Err(ModeError::InvalidConfig("top dimension out of range".into()));
                }
            }
            _ => {
                return Err(ModeError::InvalidConfig(format!(
                    "module kind does not match the {} family",
                    base.family_name()
                )))
            }
        }
        Ok(ModuleConfig {
            base: base.clone(),
            kind,
            truncation,
        })
    }

    pub fn base(&self) -> &VoaConfig {
        &self.base
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn top_dim(&self) -> usize {
        match &self.kind {
            ModuleKind::HeisenbergFock { .. } | ModuleKind::VirasoroVerma { .. } => 1,
            ModuleKind::HeisenbergTop { zero_modes } => zero_modes[0].rows(),
            ModuleKind::Sl2Weyl { top_dim } => *top_dim,
        }
    }

    pub fn embed(&self, target: &Field) -> Result<ModuleConfig, ModeError> {
        let f = self.base.field();
        let kind = match &self.kind {
            ModuleKind::HeisenbergFock { lambda } => ModuleKind::HeisenbergFock {
                lambda: lambda
                    .iter()
                    .map(|x| f.embed(x, target))
                    .collect::<Result<_, _>>()?,
            },
            ModuleKind::HeisenbergTop { zero_modes } => ModuleKind::HeisenbergTop {
                zero_modes: zero_modes
                    .iter()
                    .map(|m| m.embed(target))
                    .collect::<Result<_, _>>()?,
            },
            ModuleKind::VirasoroVerma { h } => ModuleKind::VirasoroVerma { h: f.embed(h, target)? },
            ModuleKind::Sl2Weyl { top_dim } => ModuleKind::Sl2Weyl { top_dim: *top_dim },
        };
        ModuleConfig::new(&self.base.embed(target)?, kind, self.truncation)
    }
}
