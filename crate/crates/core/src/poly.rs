//! Dense univariate polynomials over a [`Field`], stored low-to-high with no
//! trailing zeros (the zero polynomial is the empty vector).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{Elem, Field, FieldError, FieldKind};

pub fn trim(f: &Field, mut p: Vec<Elem>) -> Vec<Elem> {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
    p
}

pub fn degree(p: &[Elem]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn add(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len().max(b.len());
    let zero = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(f, out)
}

pub fn sub(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len().max(b.len());
    let zero = f.zero();
    let out = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(f, out)
}

pub fn scale(f: &Field, a: &[Elem], c: &Elem) -> Vec<Elem> {
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn mul(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(f: &Field, a: &[Elem], b: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
    let b = trim(f, b.to_vec());
    let db = degree(&b).expect("division by the zero polynomial");
    let lead_inv = f.inv(&b[db]).unwrap();
    let mut r = trim(f, a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (i, bi) in b.iter().enumerate() {
            r[i + shift] = f.sub(&r[i + shift], &f.mul(&c, bi));
        }
        q[shift] = c;
        r = trim(f, r);
    }
    (trim(f, q), r)
}

pub fn rem(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    divrem(f, a, b).1
}

/// Returns `(g, s, t)` with `g = s*a + t*b` (not normalised).
pub fn ext_gcd(f: &Field, a: &[Elem], b: &[Elem]) -> (Vec<Elem>, Vec<Elem>, Vec<Elem>) {
    let (mut r0, mut r1) = (trim(f, a.to_vec()), trim(f, b.to_vec()));
    let (mut s0, mut s1) = (vec![f.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    (r0, s0, t0)
}

/// Monic gcd.
pub fn gcd(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let (g, _, _) = ext_gcd(f, a, b);
    monic(f, &g)
}

pub fn monic(f: &Field, a: &[Elem]) -> Vec<Elem> {
    match a.last() {
        Some(l) => {
            let li = f.inv(l).unwrap();
            scale(f, a, &li)
        }
        None => Vec::new(),
    }
}

pub fn derivative(f: &Field, a: &[Elem]) -> Vec<Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
        .collect();
    trim(f, out)
}

pub fn eval(f: &Field, a: &[Elem], x: &Elem) -> Elem {
    a.iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// `base^e mod m`.
pub fn pow_mod(f: &Field, base: &[Elem], mut e: u128, m: &[Elem]) -> Vec<Elem> {
    let mut acc = vec![f.one()];
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        e >>= 1;
    }
    acc
}

/// Squarefree test `gcd(m, m') = 1`.
pub fn is_separable(f: &Field, a: &[Elem]) -> bool {
    let d = derivative(f, a);
    if d.is_empty() {
        return degree(a) == Some(0);
    }
    degree(&gcd(f, a, &d)) == Some(0)
}

/// Irreducibility over `f`. Finite fields use the distinct-degree gcd test;
/// over ℚ degree <= 3 is decided by the rational root test and degree 4 by an
/// additional quadratic factor search. Anything else is unsupported.
pub fn is_irreducible(f: &Field, a: &[Elem]) -> Result<bool, FieldError> {
    let a = trim(f, a.to_vec());
    let Some(deg) = degree(&a) else {
        return Ok(false);
    };
    if deg == 0 {
        return Ok(false);
    }
    if deg == 1 {
        return Ok(true);
    }
    if let Some(q) = f.order() {
        let a = monic(f, &a);
        let x = vec![f.zero(), f.one()];
        let mut h = x.clone();
        for _ in 1..=deg / 2 {
            h = pow_mod(f, &h, q, &a);
            let g = gcd(f, &a, &sub(f, &h, &x));
            if degree(&g) != Some(0) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    match f.kind() {
        FieldKind::Rationals => {
            let ints = integer_monic_form(f, &a)?;
            rational_irreducible(&ints)
        }
        _ => Err(FieldError::Unsupported(
            "irreducibility over infinite extension fields".into(),
        )),
    }
}

/// Rescales a rational polynomial to a monic integer polynomial with the
/// same factorisation pattern: `D^n f(x / D)`.
fn integer_monic_form(f: &Field, a: &[Elem]) -> Result<Vec<BigInt>, FieldError> {
    let a = monic(f, a);
    let rats: Vec<BigRational> = a.iter().map(|c| f.to_rational(c).unwrap()).collect();
    let d = rats
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let n = rats.len() - 1;
    let mut out = Vec::with_capacity(n + 1);
    for (i, r) in rats.iter().enumerate() {
        let scaled = r * BigRational::from_integer(num_traits::pow(d.clone(), n - i));
        out.push(scaled.to_integer());
    }
    Ok(out)
}

fn divisors(n: &BigInt) -> Result<Vec<i128>, FieldError> {
    let n = n
        .abs()
        .to_i128()
        .filter(|v| *v <= 1_000_000_000_000)
        .ok_or_else(|| FieldError::Unsupported("coefficients too large for factor search".into()))?;
    let mut out = Vec::new();
    let mut d = 1i128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Ok(out)
}

fn rational_irreducible(c: &[BigInt]) -> Result<bool, FieldError> {
    let deg = c.len() - 1;
    if deg > 4 {
        return Err(FieldError::Unsupported(format!(
            "irreducibility test over Q for degree {deg}"
        )));
    }
    if c[0].is_zero() {
        return Ok(false);
    }
    // monic integer: rational roots are integer divisors of c0
    let eval = |x: i128| -> BigInt {
        c.iter()
            .rev()
            .fold(BigInt::zero(), |acc, k| acc * BigInt::from(x) + k)
    };
    let divs = divisors(&c[0])?;
    for &d in &divs {
        if eval(d).is_zero() || eval(-d).is_zero() {
            return Ok(false);
        }
    }
    if deg < 4 {
        return Ok(true);
    }
    let get = |i: usize| c[i].to_i128().unwrap();
    let (a0, a1, a2, a3) = (get(0), get(1), get(2), get(3));
    // (x^2 + a x + b)(x^2 + cx + d), b d = a0
    for &b0 in &divs {
        for b in [b0, -b0] {
            let d = a0 / b;
            let mut cands = Vec::new();
            if d != b {
                let num = a1 - b * a3;
                if num % (d - b) == 0 {
                    cands.push(num / (d - b));
                }
            } else if a1 == b * a3 {
                // a^2 - a3 a + (a2 - 2b) = 0
                let disc = a3 * a3 - 4 * (a2 - 2 * b);
                if disc >= 0 {
                    let r = (disc as f64).sqrt().round() as i128;
                    for s in [r - 1, r, r + 1] {
                        if s >= 0 && s * s == disc && (a3 + s) % 2 == 0 {
                            cands.push((a3 + s) / 2);
                            cands.push((a3 - s) / 2);
                        }
                    }
                }
            }
            for a in cands {
                let cc = a3 - a;
                if a * cc + b + d == a2 && a * d + b * cc == a1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Human-readable form with the given variable name, e.g. `t^2-2`.
pub fn format(f: &Field, a: &[Elem], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in a.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        let mut cs = f.format(c);
        let monomial = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let compound = cs[1..].contains(['+', '-', '/']) || cs.contains('/');
        if i > 0 {
            if cs == "1" {
                cs.clear();
            } else if cs == "-1" {
                cs = "-".into();
            } else if compound {
                cs = format!("({cs})");
            }
        }
        let term = format!("{cs}{monomial}");
        if !out.is_empty() && !term.starts_with('-') {
            out.push('+');
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Owned polynomial with its field, used for reported minimal polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub field: Field,
    pub coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: trim(field, coeffs),
        }
    }

    pub fn from_i64(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn degree(&self) -> Option<usize> {
        degree(&self.coeffs)
    }

    pub fn constant_term(&self) -> Elem {
        self.coeffs.first().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn to_string_in(&self, var: &str) -> String {
        format(&self.field, &self.coeffs, var)
    }

    /// Roots lying in the base field, found by exhaustive search over finite
    /// fields (order <= `limit`) or the rational root test over ℚ.
    pub fn roots_in_field(&self, limit: u128) -> Option<Vec<Elem>> {
        let f = &self.field;
        if let Some(all) = f.elements(limit) {
            return Some(
                all.into_iter()
                    .filter(|x| f.is_zero(&eval(f, &self.coeffs, x)))
                    .collect(),
            );
        }
        if let FieldKind::Rationals = f.kind() {
            let ints = integer_monic_form(f, &self.coeffs).ok()?;
            let mut roots = Vec::new();
            if ints[0].is_zero() {
                roots.push(f.zero());
            }
            // recover the scaling factor used by integer_monic_form
            let m = monic(f, &self.coeffs);
            let d = m.iter().fold(BigInt::one(), |acc, r| {
                acc.lcm(f.to_rational(r).unwrap().denom())
            });
            let c0 = ints.iter().find(|c| !c.is_zero())?;
            for dv in divisors(c0).ok()? {
                for s in [dv, -dv] {
                    let v = ints
                        .iter()
                        .rev()
                        .fold(BigInt::zero(), |acc, k| acc * BigInt::from(s) + k);
                    if v.is_zero() {
                        let r = BigRational::new(BigInt::from(s), d.clone());
                        roots.push(Elem::Rat(r));
                    }
                }
            }
            roots.sort_by_key(|e| f.format(e));
            roots.dedup();
            return Some(roots);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let f = Field::prime(7).unwrap();
        let a = Poly::from_i64(&f, &[-1, 0, 1]).coeffs; // x^2 - 1
        let b = Poly::from_i64(&f, &[1, 1]).coeffs; // x + 1
        let (q, r) = divrem(&f, &a, &b);
        assert!(r.is_empty());
        assert_eq!(format(&f, &q, "x"), "6+x");
        assert_eq!(gcd(&f, &a, &Poly::from_i64(&f, &[-1, 1]).coeffs).len(), 2);
    }

    #[test]
    fn irreducibility_finite() {
        let f5 = Field::prime(5).unwrap();
        assert!(is_irreducible(&f5, &Poly::from_i64(&f5, &[-2, 0, 1]).coeffs).unwrap());
        assert!(!is_irreducible(&f5, &Poly::from_i64(&f5, &[-1, 0, 1]).coeffs).unwrap());
        // x^4 + 1 over F3 factors as two quadratics with no roots
        let f3 = Field::prime(3).unwrap();
        assert!(!is_irreducible(&f3, &Poly::from_i64(&f3, &[1, 0, 0, 0, 1]).coeffs).unwrap());
    }

    #[test]
    fn irreducibility_rational() {
        let q = Field::rationals();
        let p = |c: &[i64]| Poly::from_i64(&q, c).coeffs;
        assert!(is_irreducible(&q, &p(&[1, 0, 1])).unwrap());
        assert!(!is_irreducible(&q, &p(&[-4, 0, 1])).unwrap());
        assert!(!is_irreducible(&q, &p(&[4, 0, 0, 0, 1])).unwrap());
        assert!(!is_irreducible(&q, &p(&[1, 0, 2, 0, 1])).unwrap());
        assert!(is_irreducible(&q, &p(&[-2, 0, 0, 0, 1])).unwrap());
        assert!(is_irreducible(&q, &p(&[-2, 0, 0, 1])).unwrap());
        assert!(matches!(
            is_irreducible(&q, &p(&[1, 1, 0, 0, 0, 1])),
            Err(FieldError::Unsupported(_))
        ));
    }

    #[test]
    fn separability() {
        let f5 = Field::prime(5).unwrap();
        assert!(!is_separable(&f5, &Poly::from_i64(&f5, &[-1, 0, 0, 0, 0, 1]).coeffs));
        assert!(is_separable(&f5, &Poly::from_i64(&f5, &[-2, 0, 1]).coeffs));
    }

    #[test]
    fn rational_roots() {
        let q = Field::rationals();
        let p = Poly::new(
            &q,
            vec![
                q.from_ratio(-1, 2).unwrap(),
                q.from_ratio(-1, 2).unwrap(),
                q.one(),
            ],
        ); // (x - 1)(x + 1/2)
        let roots = p.roots_in_field(0).unwrap();
        let s: Vec<String> = roots.iter().map(|r| q.format(r)).collect();
        assert_eq!(s, vec!["-1/2", "1"]);
    }
}
