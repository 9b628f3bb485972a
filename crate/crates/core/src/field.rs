//! Exact base fields: the rationals, prime fields of odd characteristic and
//! simple algebraic extensions `F[t]/(m(t))` of either.
//!
//! Elements are plain [`Elem`] values; all arithmetic goes through the owning
//! [`Field`] handle so that hot loops (mode straightening, row reduction) do
//! not carry a field reference per coefficient. [`Scalar`] pairs an element
//! with its field for the checked public API.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

use crate::poly;

/// Largest supported extension degree.
pub const MAX_EXTENSION_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("scalars belong to different fields ({0} vs {1})")]
    Mismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("minimal polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error("minimal polynomial {0} is reducible")]
    Reducible(String),
    #[error("extension degree {0} exceeds the supported maximum of {MAX_EXTENSION_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cannot parse {0:?}: {1}")]
    Parse(String, String),
    #[error("no embedding of {0} into {1}")]
    NoEmbedding(String, String),
}

/// Raw field element. Canonical forms: reduced fractions with positive
/// denominator, residues in `[0, p)`, extension coefficient vectors of length
/// exactly `deg(minpoly)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Rat(BigRational),
    Mod(u64),
    Ext(Vec<Elem>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
    Extension {
        base: Field,
        /// Monic, low-to-high coefficients over `base`, including the leading 1.
        minpoly: Vec<Elem>,
        var: String,
    },
}

#[derive(Debug, PartialEq, Eq)]
pub struct FieldSpec {
    kind: FieldKind,
    characteristic: u64,
    order: Option<u128>,
}

/// Shared handle to a [`FieldSpec`].
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.name())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i128) as u64
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldSpec {
            kind: FieldKind::Rationals,
            characteristic: 0,
            order: None,
        }))
    }

    /// The prime field of order `p`. Rejects `p = 2` and composites.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(FieldError::Unsupported(format!("prime {p} too large")));
        }
        Ok(Field(Arc::new(FieldSpec {
            kind: FieldKind::Prime(p),
            characteristic: p,
            order: Some(p as u128),
        })))
    }

    /// `base[var]/(minpoly)`; `minpoly` is low-to-high and must be monic and
    /// irreducible over `base`.
    pub fn extension(base: &Field, minpoly: Vec<Elem>, var: &str) -> Result<Field, FieldError> {
        let minpoly = poly::trim(base, minpoly);
        let deg = minpoly.len().saturating_sub(1);
        if deg == 0 || !base.is_one(minpoly.last().unwrap()) {
            return Err(FieldError::NotMonic);
        }
        if deg > MAX_EXTENSION_DEGREE {
            return Err(FieldError::DegreeTooLarge(deg));
        }
        if !poly::is_irreducible(base, &minpoly)? {
            return Err(FieldError::Reducible(poly::format(base, &minpoly, var)));
        }
        let order = base
            .order()
            .and_then(|q| q.checked_pow(deg as u32));
        Ok(Field(Arc::new(FieldSpec {
            kind: FieldKind::Extension {
                base: base.clone(),
                minpoly,
                var: var.to_string(),
            },
            characteristic: base.characteristic(),
            order,
        })))
    }

    /// Extension by a monic polynomial with integer coefficients.
    pub fn extension_int(base: &Field, minpoly: &[i64], var: &str) -> Result<Field, FieldError> {
        let coeffs = minpoly.iter().map(|&c| base.from_i64(c)).collect();
        Field::extension(base, coeffs, var)
    }

    /// Parses the config grammar: `Q`, `F<p>`, `Q[t]/(poly)`, `F<p>[t]/(poly)`.
    pub fn parse(text: &str) -> Result<Field, FieldError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.trim_matches('"');
        let err = |m: &str| FieldError::Parse(text.to_string(), m.to_string());
        let (base_str, rest) = match s.find('[') {
            Some(i) => (&s[..i], Some(&s[i..])),
            None => (s, None),
        };
        let base = match base_str {
            "Q" | "QQ" => Field::rationals(),
            b if b.starts_with('F') => {
                let p: u64 = b[1..].parse().map_err(|_| err("expected F<p>"))?;
                Field::prime(p)?
            }
            _ => return Err(err("expected Q or F<p>")),
        };
        let Some(rest) = rest else {
            return Ok(base);
        };
        let close = rest.find(']').ok_or_else(|| err("missing ']'"))?;
        let var = &rest[1..close];
        if var.is_empty() || !var.chars().all(|c| c.is_ascii_alphabetic()) {
            return Err(err("bad variable name"));
        }
        let tail = &rest[close + 1..];
        let poly_str = tail
            .strip_prefix("/(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| err("expected /(poly)"))?;
        let coeffs = parse_poly_rational(poly_str, var).map_err(|m| err(&m))?;
        let mut mp = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            mp.push(base.from_rational(&c)?);
        }
        Field::extension(&base, mp, var)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0.kind
    }

    pub fn characteristic(&self) -> u64 {
        self.0.characteristic
    }

    /// Number of elements, `None` for infinite fields (or orders beyond u128).
    pub fn order(&self) -> Option<u128> {
        self.0.order
    }

    pub fn is_finite(&self) -> bool {
        self.0.characteristic != 0
    }

    /// Degree over the immediate base (1 for ℚ and prime fields).
    pub fn degree(&self) -> usize {
        match &self.0.kind {
            FieldKind::Extension { minpoly, .. } => minpoly.len() - 1,
            _ => 1,
        }
    }

    pub fn base(&self) -> Option<&Field> {
        match &self.0.kind {
            FieldKind::Extension { base, .. } => Some(base),
            _ => None,
        }
    }

    /// Whether `self` sits below `other` in `other`'s tower of extensions.
    pub fn embeds_into(&self, other: &Field) -> bool {
        let mut cur = Some(other);
        while let Some(f) = cur {
            if f == self {
                return true;
            }
            cur = f.base();
        }
        false
    }

    pub fn name(&self) -> String {
        match &self.0.kind {
            FieldKind::Rationals => "Q".into(),
            FieldKind::Prime(p) => format!("F{p}"),
            FieldKind::Extension { base, minpoly, var } => {
                format!("{}[{var}]/({})", base.name(), poly::format(base, minpoly, var))
            }
        }
    }

    pub fn zero(&self) -> Elem {
        match &self.0.kind {
            FieldKind::Rationals => Elem::Rat(BigRational::zero()),
            FieldKind::Prime(_) => Elem::Mod(0),
            FieldKind::Extension { base, minpoly, .. } => {
                Elem::Ext(vec![base.zero(); minpoly.len() - 1])
            }
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        match &self.0.kind {
            FieldKind::Rationals => Elem::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldKind::Prime(p) => Elem::Mod((n as i128).rem_euclid(*p as i128) as u64),
            FieldKind::Extension { base, minpoly, .. } => {
                let mut v = vec![base.zero(); minpoly.len() - 1];
                v[0] = base.from_i64(n);
                Elem::Ext(v)
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match &self.0.kind {
            FieldKind::Rationals => Elem::Rat(BigRational::from_integer(n.clone())),
            FieldKind::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Elem::Mod(r.to_u64().unwrap())
            }
            FieldKind::Extension { base, minpoly, .. } => {
                let mut v = vec![base.zero(); minpoly.len() - 1];
                v[0] = base.from_bigint(n);
                Elem::Ext(v)
            }
        }
    }

    /// Image of a rational number; fails when the denominator vanishes in
    /// positive characteristic.
    pub fn from_rational(&self, q: &BigRational) -> Result<Elem, FieldError> {
        if let FieldKind::Rationals = self.0.kind {
            return Ok(Elem::Rat(q.clone()));
        }
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        let inv = self.inv(&den).ok_or(FieldError::DivisionByZero)?;
        Ok(self.mul(&num, &inv))
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Elem, FieldError> {
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        self.from_rational(&BigRational::new(num.into(), den.into()))
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(q) => q.is_zero(),
            Elem::Mod(r) => *r == 0,
            Elem::Ext(v) => {
                let base = self.base().expect("extension element in non-extension field");
                v.iter().all(|c| base.is_zero(c))
            }
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0.kind, a, b) {
            (FieldKind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (FieldKind::Prime(p), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod((x + y) % p),
            (FieldKind::Extension { base, .. }, Elem::Ext(x), Elem::Ext(y)) => {
                Elem::Ext(x.iter().zip(y).map(|(s, t)| base.add(s, t)).collect())
            }
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&self.0.kind, a) {
            (FieldKind::Rationals, Elem::Rat(x)) => Elem::Rat(-x),
            (FieldKind::Prime(p), Elem::Mod(x)) => Elem::Mod(if *x == 0 { 0 } else { p - x }),
            (FieldKind::Extension { base, .. }, Elem::Ext(x)) => {
                Elem::Ext(x.iter().map(|s| base.neg(s)).collect())
            }
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0.kind, a, b) {
            (FieldKind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x - y),
            (FieldKind::Prime(p), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod((x + p - y) % p),
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0.kind, a, b) {
            (FieldKind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (FieldKind::Prime(p), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod(x * y % p),
            (FieldKind::Extension { base, minpoly, .. }, Elem::Ext(x), Elem::Ext(y)) => {
                let prod = poly::mul(base, x, y);
                let mut r = poly::rem(base, &prod, minpoly);
                r.resize(minpoly.len() - 1, base.zero());
                Elem::Ext(r)
            }
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return None;
        }
        Some(match (&self.0.kind, a) {
            (FieldKind::Rationals, Elem::Rat(x)) => Elem::Rat(x.recip()),
            (FieldKind::Prime(p), Elem::Mod(x)) => Elem::Mod(mod_inverse(*x, *p)),
            (FieldKind::Extension { base, minpoly, .. }, Elem::Ext(x)) => {
                let x = poly::trim(base, x.clone());
                let (g, s, _) = poly::ext_gcd(base, &x, minpoly);
                // g is a nonzero constant because minpoly is irreducible
                let ginv = base.inv(&g[0]).expect("gcd with irreducible modulus is a unit");
                let mut r = poly::scale(base, &s, &ginv);
                r.resize(minpoly.len() - 1, base.zero());
                Elem::Ext(r)
            }
            _ => panic!("element does not belong to {}", self.name()),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        self.inv(b).map(|i| self.mul(a, &i))
    }

    pub fn pow(&self, a: &Elem, mut e: u128) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Embeds an element of `self` into `target` along `target`'s tower.
    pub fn embed(&self, a: &Elem, target: &Field) -> Result<Elem, FieldError> {
        if self == target {
            return Ok(a.clone());
        }
        match &target.0.kind {
            FieldKind::Extension { base, minpoly, .. } => {
                let inner = self.embed(a, base).map_err(|_| {
                    FieldError::NoEmbedding(self.name(), target.name())
                })?;
                let mut v = vec![base.zero(); minpoly.len() - 1];
                v[0] = inner;
                Ok(Elem::Ext(v))
            }
            _ => Err(FieldError::NoEmbedding(self.name(), target.name())),
        }
    }

    /// The generator `t` of an extension field.
    pub fn generator(&self) -> Option<Elem> {
        match &self.0.kind {
            FieldKind::Extension { base, minpoly, .. } => {
                let mut v = vec![base.zero(); minpoly.len() - 1];
                if v.len() == 1 {
                    // degree-one extension: t is the root -m_0
                    v[0] = base.neg(&minpoly[0]);
                } else {
                    v[1] = base.one();
                }
                Some(Elem::Ext(v))
            }
            _ => None,
        }
    }

    /// Pseudorandom element. Over ℚ the samples are small fractions.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match &self.0.kind {
            FieldKind::Rationals => {
                let n: i64 = rng.gen_range(-9..=9);
                let d: i64 = rng.gen_range(1..=4);
                Elem::Rat(BigRational::new(n.into(), d.into()))
            }
            FieldKind::Prime(p) => Elem::Mod(rng.gen_range(0..*p)),
            FieldKind::Extension { base, minpoly, .. } => {
                Elem::Ext((0..minpoly.len() - 1).map(|_| base.random(rng)).collect())
            }
        }
    }

    /// All elements of a finite field of order at most `limit`, in a fixed order.
    pub fn elements(&self, limit: u128) -> Option<Vec<Elem>> {
        let q = self.order()?;
        if q > limit {
            return None;
        }
        Some((0..q).map(|i| self.element_at(i)).collect())
    }

    fn element_at(&self, mut i: u128) -> Elem {
        match &self.0.kind {
            FieldKind::Rationals => unreachable!("ℚ is infinite"),
            FieldKind::Prime(_) => Elem::Mod(i as u64),
            FieldKind::Extension { base, minpoly, .. } => {
                let q = base.order().unwrap();
                let mut v = Vec::with_capacity(minpoly.len() - 1);
                for _ in 0..minpoly.len() - 1 {
                    v.push(base.element_at(i % q));
                    i /= q;
                }
                Elem::Ext(v)
            }
        }
    }

    /// Exact string form: `3/4`, `2`, `2+3t`, `(1/2)t`.
    pub fn format(&self, a: &Elem) -> String {
        match (&self.0.kind, a) {
            (FieldKind::Rationals, Elem::Rat(q)) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            (FieldKind::Prime(_), Elem::Mod(r)) => r.to_string(),
            (FieldKind::Extension { base, var, .. }, Elem::Ext(v)) => {
                poly::format(base, v, var)
            }
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    /// Parses an exact scalar: integers, fractions, and for extensions a
    /// polynomial in the generator with rational coefficients.
    pub fn parse_elem(&self, text: &str) -> Result<Elem, FieldError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.trim_matches('"');
        let err = |m: &str| FieldError::Parse(text.to_string(), m.to_string());
        match &self.0.kind {
            FieldKind::Extension { var, .. } => {
                let coeffs = parse_poly_rational(s, var).map_err(|m| err(&m))?;
                let mut acc = self.zero();
                let t = self.generator().unwrap();
                let mut tp = self.one();
                for c in coeffs {
                    let base_c = self.from_rational(&c)?;
                    acc = self.add(&acc, &self.mul(&base_c, &tp));
                    tp = self.mul(&tp, &t);
                }
                Ok(acc)
            }
            _ => {
                let q = parse_rational(s).map_err(|m| err(&m))?;
                self.from_rational(&q)
            }
        }
    }

    pub fn to_rational(&self, a: &Elem) -> Option<BigRational> {
        match a {
            Elem::Rat(q) => Some(q.clone()),
            _ => None,
        }
    }
}

impl FieldSpec {
    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim_start_matches('(').trim_end_matches(')');
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.parse().map_err(|_| "bad numerator".to_string())?;
        let d: BigInt = d.parse().map_err(|_| "bad denominator".to_string())?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
        Ok(BigRational::from_integer(n))
    }
}

/// Parses `t^2-2`, `3t+1/2`, `-t^3+(1/2)t` into dense low-to-high rational
/// coefficients.
pub fn parse_poly_rational(s: &str, var: &str) -> Result<Vec<BigRational>, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut depth = 0;
    for (i, ch) in s.chars().enumerate() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch)
            }
            ')' => {
                depth -= 1;
                cur.push(ch)
            }
            '+' | '-' if depth == 0 && !(cur.is_empty() && i == 0) && !cur.ends_with('^') => {
                if cur.is_empty() {
                    return Err("dangling sign".into());
                }
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            }
            '-' if i == 0 => neg = true,
            '+' if i == 0 => {}
            _ => cur.push(ch),
        }
    }
    if cur.is_empty() {
        return Err("dangling sign".into());
    }
    terms.push((neg, cur));
    let mut coeffs: Vec<BigRational> = Vec::new();
    for (neg, term) in terms {
        let (coef, deg) = match term.find(var) {
            Some(pos) => {
                let c = term[..pos].trim_end_matches('*');
                let after = &term[pos + var.len()..];
                let deg: usize = if after.is_empty() {
                    1
                } else {
                    after
                        .strip_prefix('^')
                        .ok_or_else(|| format!("bad term {term:?}"))?
                        .parse()
                        .map_err(|_| format!("bad exponent in {term:?}"))?
                };
                let c = if c.is_empty() {
                    BigRational::one()
                } else {
                    parse_rational(c)?
                };
                (c, deg)
            }
            None => (parse_rational(&term)?, 0),
        };
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, BigRational::zero());
        }
        let c = if neg { -coef } else { coef };
        coeffs[deg] += c;
    }
    while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// A field element paired with its field; the checked arithmetic surface.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    field: Field,
    elem: Elem,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.field.format(&self.elem), self.field.name())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(&self.elem))
    }
}

impl Scalar {
    pub fn new(field: &Field, elem: Elem) -> Scalar {
        Scalar {
            field: field.clone(),
            elem,
        }
    }

    pub fn from_i64(field: &Field, n: i64) -> Scalar {
        Scalar::new(field, field.from_i64(n))
    }

    pub fn parse(field: &Field, s: &str) -> Result<Scalar, FieldError> {
        Ok(Scalar::new(field, field.parse_elem(s)?))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elem(&self) -> &Elem {
        &self.elem
    }

    pub fn into_elem(self) -> Elem {
        self.elem
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.elem)
    }

    fn check(&self, other: &Scalar) -> Result<(), FieldError> {
        if self.field != other.field {
            return Err(FieldError::Mismatch(self.field.name(), other.field.name()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check(other)?;
        Ok(Scalar::new(&self.field, self.field.add(&self.elem, &other.elem)))
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check(other)?;
        Ok(Scalar::new(&self.field, self.field.sub(&self.elem, &other.elem)))
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check(other)?;
        Ok(Scalar::new(&self.field, self.field.mul(&self.elem, &other.elem)))
    }

    pub fn neg(&self) -> Scalar {
        Scalar::new(&self.field, self.field.neg(&self.elem))
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        let e = self.field.inv(&self.elem).ok_or(FieldError::DivisionByZero)?;
        Ok(Scalar::new(&self.field, e))
    }

    pub fn embed(&self, target: &Field) -> Result<Scalar, FieldError> {
        Ok(Scalar::new(target, self.field.embed(&self.elem, target)?))
    }
}

/// Sign-aware integer to field conversion for binomials and structure
/// constants that may exceed `i64`.
pub fn int_to_elem(field: &Field, n: i128) -> Elem {
    if let Ok(small) = i64::try_from(n) {
        field.from_i64(small)
    } else {
        field.from_bigint(&BigInt::from(n))
    }
}

/// `C(n, k)` for any integer `n` (negative allowed) and `k >= 0`.
pub fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k as i128 {
        acc = acc * (n as i128 - i) / (i + 1);
    }
    acc
}

/// Ratio helper for rational literals in tests and fixtures.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f5_ext() -> Field {
        Field::parse("F5[t]/(t^2-2)").unwrap()
    }

    #[test]
    fn rational_addition() {
        let q = Field::rationals();
        let a = Scalar::parse(&q, "2/3").unwrap();
        let b = Scalar::parse(&q, "1/6").unwrap();
        assert_eq!(a.add(&b).unwrap().to_string(), "5/6");
        assert_eq!(Scalar::parse(&q, "-2/5").unwrap().inv().unwrap().to_string(), "-5/2");
    }

    #[test]
    fn prime_field_products() {
        let f7 = Field::prime(7).unwrap();
        let a = Scalar::from_i64(&f7, 3);
        assert_eq!(a.mul(&Scalar::from_i64(&f7, 5)).unwrap().to_string(), "1");
        assert_eq!(a.inv().unwrap().to_string(), "5");
    }

    #[test]
    fn extension_reduction_and_inverse() {
        let k = f5_ext();
        let t = Scalar::new(&k, k.generator().unwrap());
        assert_eq!(t.mul(&t).unwrap().to_string(), "2");
        let ti = t.inv().unwrap();
        assert_eq!(ti.to_string(), "3t");
        assert_eq!(t.mul(&ti).unwrap().to_string(), "1");
    }

    #[test]
    fn embeddings() {
        let f5 = Field::prime(5).unwrap();
        let k = f5_ext();
        let e = Scalar::from_i64(&f5, 3).embed(&k).unwrap();
        assert_eq!(e.elem(), &Elem::Ext(vec![Elem::Mod(3), Elem::Mod(0)]));

        let q = Field::rationals();
        let qi = Field::parse("Q[t]/(t^2+1)").unwrap();
        let half = Scalar::parse(&q, "1/2").unwrap();
        assert_eq!(half.embed(&qi).unwrap().to_string(), "1/2");

        let f7 = Field::prime(7).unwrap();
        let f49 = Field::parse("F7[t]/(t^2+1)").unwrap();
        let three = Scalar::from_i64(&f7, 3);
        let a = three.embed(&f49).unwrap().inv().unwrap();
        let b = three.inv().unwrap().embed(&f49).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.to_string(), "5");

        assert!(matches!(
            Scalar::from_i64(&f7, 1).embed(&k),
            Err(FieldError::NoEmbedding(..))
        ));
    }

    #[test]
    fn constructor_guards() {
        assert_eq!(Field::prime(2).unwrap_err(), FieldError::CharacteristicTwo);
        assert_eq!(Field::prime(9).unwrap_err(), FieldError::NotPrime(9));
        assert!(matches!(Field::parse("F5[t]/(t^2-1)"), Err(FieldError::Reducible(_))));
        assert!(matches!(Field::parse("Q[t]/(t^2-4)"), Err(FieldError::Reducible(_))));
        assert!(matches!(Field::parse("Q[t]/(t^4+4)"), Err(FieldError::Reducible(_))));
        assert!(Field::parse("Q[t]/(t^4+1)").is_ok());
        assert!(matches!(Field::parse("F3[t]/(2t^2+1)"), Err(FieldError::NotMonic)));
        assert!(matches!(Field::parse("G7"), Err(FieldError::Parse(..))));
        assert!(matches!(Field::parse("F5[t]/(t^9+t+3)"), Err(FieldError::DegreeTooLarge(9))));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = Scalar::from_i64(&Field::prime(5).unwrap(), 1);
        let b = Scalar::from_i64(&Field::prime(7).unwrap(), 1);
        assert!(matches!(a.add(&b), Err(FieldError::Mismatch(..))));
        assert_eq!(Scalar::from_i64(&Field::prime(7).unwrap(), 0).inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn format_parse_round_trip() {
        let k = f5_ext();
        for e in k.elements(25).unwrap() {
            assert_eq!(k.parse_elem(&k.format(&e)).unwrap(), e);
        }
        let qi = Field::parse("Q[t]/(t^2+1)").unwrap();
        let x = qi.parse_elem("1/2-3t").unwrap();
        assert_eq!(qi.format(&x), "1/2-3t");
        assert_eq!(qi.parse_elem(&qi.format(&x)).unwrap(), x);
    }

    #[test]
    fn exhaustive_f25_axioms() {
        let k = f5_ext();
        let all = k.elements(25).unwrap();
        let one = k.one();
        for a in &all {
            if !k.is_zero(a) {
                assert_eq!(k.mul(a, &k.inv(a).unwrap()), one);
            }
            for b in &all {
                assert_eq!(k.mul(a, b), k.mul(b, a));
                assert_eq!(k.add(a, b), k.add(b, a));
            }
        }
    }

    #[test]
    fn sampled_axioms_all_fields() {
        let fields = [
            Field::rationals(),
            Field::prime(7).unwrap(),
            f5_ext(),
            Field::parse("Q[t]/(t^2+1)").unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        for f in &fields {
            for _ in 0..1000 {
                let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
                assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
                assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
                if !f.is_zero(&a) {
                    assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
                }
            }
        }
    }

    #[test]
    fn embedding_is_an_injective_homomorphism() {
        let f5 = Field::prime(5).unwrap();
        let k = f5_ext();
        let all = f5.elements(5).unwrap();
        let mut images = Vec::new();
        for a in &all {
            let ea = f5.embed(a, &k).unwrap();
            for b in &all {
                let eb = f5.embed(b, &k).unwrap();
                assert_eq!(f5.embed(&f5.add(a, b), &k).unwrap(), k.add(&ea, &eb));
                assert_eq!(f5.embed(&f5.mul(a, b), &k).unwrap(), k.mul(&ea, &eb));
            }
            images.push(ea);
        }
        images.sort_by_key(|e| k.format(e));
        images.dedup();
        assert_eq!(images.len(), 5);
        assert!(k.is_one(&f5.embed(&f5.one(), &k).unwrap()));

        let q = Field::rationals();
        let qi = Field::parse("Q[t]/(t^2+1)").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let (a, b) = (q.random(&mut rng), q.random(&mut rng));
            let (ea, eb) = (q.embed(&a, &qi).unwrap(), q.embed(&b, &qi).unwrap());
            assert_eq!(q.embed(&q.mul(&a, &b), &qi).unwrap(), qi.mul(&ea, &eb));
            assert_eq!(q.embed(&q.add(&a, &b), &qi).unwrap(), qi.add(&ea, &eb));
            assert_eq!(a == b, ea == eb);
        }
    }

    #[test]
    fn tower_embedding() {
        let f5 = Field::prime(5).unwrap();
        let k = f5_ext();
        let t = k.generator().unwrap();
        let mp = vec![k.neg(&t), k.zero(), k.one()];
        let l = Field::extension(&k, mp, "s").unwrap();
        assert_eq!(l.order(), Some(625));
        let three = f5.from_i64(3);
        let direct = f5.embed(&three, &l).unwrap();
        let via = k.embed(&f5.embed(&three, &k).unwrap(), &l).unwrap();
        assert_eq!(direct, via);
        assert!(f5.embeds_into(&l) && k.embeds_into(&l) && !l.embeds_into(&k));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(-1, 3), -1);
        assert_eq!(binomial(-2, 2), 3);
        assert_eq!(binomial(3, 5), 0);
    }
}
