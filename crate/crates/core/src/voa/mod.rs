//! Truncated graded realisations of the Heisenberg, Virasoro and affine sl2
//! vertex algebras and their induced modules, with exact mode actions.
//!
//! Vectors are spanned by PBW monomials `x(-n_1) ... x(-n_r)|top>` written
//! with Lie-algebra mode indices (`L(n) = ω_{n+1}`, `h(n) = h_n`). Words are
//! kept in normal order: deepest mode first, ties broken by generator id.

mod axioms;
mod config;
mod engine;

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

use crate::field::{Elem, Field, FieldError};

pub use axioms::AxiomReport;
pub use config::{Family, ModuleConfig, ModuleKind, VoaConfig};
pub use engine::ModeEngine;

/// Sparse coefficient list over interned monomial ids.
pub type Terms = Vec<(u32, Elem)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModeError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown generator id {0}")]
    UnknownGenerator(u8),
    #[error("weight {weight} exceeds the truncation {cap}")]
    Truncation { weight: i64, cap: usize },
    #[error("vector is not homogeneous")]
    NotHomogeneous,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// One mode `gen(-depth)` inside a PBW word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u8,
    pub depth: u8,
}

impl Letter {
    /// Normal-order key: deeper modes first, then generator id.
    fn key(self) -> (std::cmp::Reverse<u8>, u8) {
        (std::cmp::Reverse(self.depth), self.gen)
    }
}

/// PBW basis word applied to a top-space basis vector (`top = 0` is the
/// vacuum for the vertex algebra itself).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub top: u8,
    pub word: SmallVec<[Letter; 8]>,
}

impl Monomial {
    pub fn vacuum() -> Monomial {
        Monomial {
            top: 0,
            word: SmallVec::new(),
        }
    }

    pub fn top(index: u8) -> Monomial {
        Monomial {
            top: index,
            word: SmallVec::new(),
        }
    }

    /// Builds a monomial from `(generator, depth)` pairs, sorting them into
    /// normal order.
    pub fn from_letters(top: u8, letters: &[(u8, u8)]) -> Monomial {
        let mut word: SmallVec<[Letter; 8]> = letters
            .iter()
            .map(|&(gen, depth)| Letter { gen, depth })
            .collect();
        word.sort_by_key(|l| l.key());
        Monomial { top, word }
    }

    pub fn weight(&self) -> i64 {
        self.word.iter().map(|l| l.depth as i64).sum()
    }

    pub fn is_normal(&self) -> bool {
        self.word.windows(2).all(|w| w[0].key() <= w[1].key())
    }

    pub fn display(&self, names: &dyn Fn(u8) -> String, module: bool) -> String {
        let mut s = String::new();
        for l in &self.word {
            s.push_str(&format!("{}(-{})", names(l.gen), l.depth));
        }
        if module {
            s.push_str(&format!("|v{}>", self.top));
        } else {
            s.push_str("|0>");
        }
        s
    }
}

/// Exact finite linear combination of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedVector {
    terms: BTreeMap<Monomial, Elem>,
    truncated: bool,
}

impl GradedVector {
    pub fn zero() -> GradedVector {
        GradedVector::default()
    }

    pub fn monomial(field: &Field, m: Monomial) -> GradedVector {
        GradedVector::from_terms(field, vec![(m, field.one())])
    }

    pub fn vacuum(field: &Field) -> GradedVector {
        GradedVector::monomial(field, Monomial::vacuum())
    }

    pub fn from_terms(field: &Field, terms: Vec<(Monomial, Elem)>) -> GradedVector {
        let mut out = GradedVector::zero();
        for (m, c) in terms {
            out.add_term(field, m, &c);
        }
        out
    }

    pub fn add_term(&mut self, field: &Field, m: Monomial, c: &Elem) {
        let entry = self.terms.entry(m).or_insert_with(|| field.zero());
        *entry = field.add(entry, c);
        if field.is_zero(entry) {
            self.terms.retain(|_, v| !field.is_zero(v));
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Elem> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Elem> {
        self.terms.get(m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub(crate) fn mark_truncated(&mut self) {
        self.truncated = true;
    }

    pub fn add(&self, field: &Field, other: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, m.clone(), c);
        }
        out.truncated |= other.truncated;
        out
    }

    pub fn scale(&self, field: &Field, c: &Elem) -> GradedVector {
        let mut out = GradedVector {
            terms: BTreeMap::new(),
            truncated: self.truncated,
        };
        if field.is_zero(c) {
            return out;
        }
        for (m, x) in &self.terms {
            out.terms.insert(m.clone(), field.mul(x, c));
        }
        out
    }

    pub fn sub(&self, field: &Field, other: &GradedVector) -> GradedVector {
        self.add(field, &other.scale(field, &field.neg(&field.one())))
    }

    /// The common weight of all terms, if homogeneous (zero counts as weight 0).
    pub fn homogeneous_weight(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| m.weight());
        let first = match it.next() {
            Some(w) => w,
            None => return Some(0),
        };
        it.all(|w| w == first).then_some(first)
    }

    pub fn max_weight(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.weight()).max()
    }

    /// `(monomial, coefficient)` strings in canonical order.
    pub fn render(&self, field: &Field, names: &dyn Fn(u8) -> String, module: bool) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.display(names, module), field.format(c)))
            .collect()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}(-{})", self.gen, self.depth)
    }
}

/// Number of normal-ordered words of weight `w` built from `colors`
/// generators with depths `>= min_depth`, times `top_dim`: the coefficient of
/// `q^w` in `top_dim * prod_{n >= min_depth} (1 - q^n)^(-colors)`.
pub fn character_dim(colors: usize, min_depth: usize, top_dim: usize, w: usize) -> u128 {
    let mut series = vec![0u128; w + 1];
    series[0] = top_dim as u128;
    for n in min_depth.max(1)..=w {
        for _ in 0..colors {
            // multiply by 1/(1 - q^n)
            for i in n..=w {
                series[i] += series[i - n];
            }
        }
    }
    series[w]
}
