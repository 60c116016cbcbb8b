//! Integer Laurent polynomials in t, u, v and the Alexander-duality bridge
//! from Borel-Moore data of a discriminant to the complement's mixed Hodge
//! polynomial.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::twisted::TwistedDims;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum HodgeError {
    #[error("cannot parse polynomial at offset {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("class in degree {degree} dualizes to a negative power of t")]
    NegativeTExponent { degree: i64 },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("term {term} is not of the dual shape c*t^a*(uv)^b with c > 0")]
    NotDualShape { term: String },
}

/// Complement of the nodal-quartic discriminant in the space of plane quartics.
pub const QUARTIC_P2: &str = "1 + t^3*(uv)^-2 + t^5*(uv)^-3 + t^7*(uv)^-4 + t^8*(uv)^-5 + t^10*(uv)^-6 + t^12*(uv)^-7 + t^13*(uv)^-8 + t^14*(uv)^-8 + t^15*(uv)^-9";
/// Same for plane cubics.
pub const CUBIC_P2: &str =
    "1 + t^3*(uv)^-2 + t^5*(uv)^-3 + t^8*(uv)^-5 + t^10*(uv)^-6 + t^11*(uv)^-7";
/// Quotient of the quartic complement by GL3; the cubic-surface quotient by
/// GL4 carries the same polynomial.
pub const MODULI: &str = "1 + t^2*(uv)^-1 + t^4*(uv)^-2 + t^6*(uv)^-3";

/// Exponent triple `(t, u, v)`.
pub type Mono = (i64, i64, i64);

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MHPolynomial {
    terms: BTreeMap<Mono, BigInt>,
}

impl MHPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial((0, 0, 0), 1)
    }

    pub fn monomial(m: Mono, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(m, BigInt::from(c));
        p
    }

    pub fn from_terms(terms: &[(i64, Mono)]) -> Self {
        let mut p = Self::zero();
        for &(c, m) in terms {
            p.add_term(m, BigInt::from(c));
        }
        p
    }

    fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Mono) -> BigInt {
        self.terms.get(&m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MHPolynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term((m1.0 + m2.0, m1.1 + m2.1, m1.2 + m2.2), c1 * c2);
            }
        }
        out
    }

    /// Multiplies by `t^a u^b v^c`.
    pub fn shift(&self, m: Mono) -> Self {
        MHPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| ((k.0 + m.0, k.1 + m.1, k.2 + m.2), c.clone()))
                .collect(),
        }
    }

    fn min_exponents(&self) -> Mono {
        let min = |f: fn(&Mono) -> i64| self.terms.keys().map(f).min().unwrap_or(0);
        (min(|m| m.0), min(|m| m.1), min(|m| m.2))
    }
}

/// `1 + sum dim * t^{2D-1-i} (uv)^{m-D}` over Borel-Moore classes `(i, m)`.
pub fn dualize(totals: &TwistedDims, ambient_dim: i64) -> Result<MHPolynomial, HodgeError> {
    let mut p = MHPolynomial::one();
    for (i, m, d) in totals.iter() {
        let a = 2 * ambient_dim - 1 - i;
        if a < 0 {
            return Err(HodgeError::NegativeTExponent { degree: i });
        }
        let b = m - ambient_dim;
        p.add_term((a, b, b), BigInt::from(d));
    }
    Ok(p)
}

/// Inverse of [`dualize`]: `i = 2D - 1 - a`, `m = b + D`.
pub fn undualize(p: &MHPolynomial, ambient_dim: i64) -> Result<TwistedDims, HodgeError> {
    let rest = p.sub(&MHPolynomial::one());
    let mut out = TwistedDims::new();
    for (&(a, b, c), k) in rest.terms() {
        let bad = || HodgeError::NotDualShape {
            term: MHPolynomial {
                terms: BTreeMap::from([((a, b, c), k.clone())]),
            }
            .to_string(),
        };
        if b != c || !k.is_positive() {
            return Err(bad());
        }
        let dim: u64 = k.try_into().map_err(|_| bad())?;
        out.add(2 * ambient_dim - 1 - a, b + ambient_dim, dim);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecializeMode {
    /// v := u
    PoincareSerre,
    /// u := v := 1
    Poincare,
    /// t := -1, u := v := 1
    Euler,
}

impl FromStr for SpecializeMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "poincare_serre" | "poincare-serre" => Ok(Self::PoincareSerre),
            "poincare" => Ok(Self::Poincare),
            "euler" => Ok(Self::Euler),
            _ => Err(format!("unknown mode `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Specialized {
    Poly(MHPolynomial),
    Integer(BigInt),
}

impl fmt::Display for Specialized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Specialized::Poly(p) => p.fmt(f),
            Specialized::Integer(n) => n.fmt(f),
        }
    }
}

pub fn specialize(p: &MHPolynomial, mode: SpecializeMode) -> Specialized {
    match mode {
        SpecializeMode::PoincareSerre => {
            let mut out = MHPolynomial::zero();
            for (&(a, b, c), k) in p.terms() {
                out.add_term((a, b + c, 0), k.clone());
            }
            Specialized::Poly(out)
        }
        SpecializeMode::Poincare => {
            let mut out = MHPolynomial::zero();
            for (&(a, _, _), k) in p.terms() {
                out.add_term((a, 0, 0), k.clone());
            }
            Specialized::Poly(out)
        }
        SpecializeMode::Euler => Specialized::Integer(
            p.terms()
                .map(|(&(a, _, _), k)| if a.rem_euclid(2) == 0 { k.clone() } else { -k })
                .sum(),
        ),
    }
}

pub fn euler_characteristic(p: &MHPolynomial) -> BigInt {
    match specialize(p, SpecializeMode::Euler) {
        Specialized::Integer(n) => n,
        Specialized::Poly(_) => unreachable!(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Division {
    Exact(MHPolynomial),
    NotDivisible {
        /// First monomial that ascending division pushes into the remainder
        /// without it occurring in the dividend.
        obstruction: Mono,
    },
}

type QPoly = BTreeMap<Mono, BigRational>;

fn to_q(p: &MHPolynomial) -> QPoly {
    p.terms()
        .map(|(m, c)| (*m, BigRational::from_integer(c.clone())))
        .collect()
}

fn sub_scaled(r: &mut QPoly, d: &QPoly, shift: Mono, k: &BigRational) {
    for (m, c) in d {
        let key = (m.0 + shift.0, m.1 + shift.1, m.2 + shift.2);
        let slot = r.entry(key).or_insert_with(BigRational::zero);
        *slot -= c * k;
        if slot.is_zero() {
            r.remove(&key);
        }
    }
}

/// Exact division in the polynomial ring after clearing monomial factors;
/// for Laurent polynomials without monomial factors this decides
/// divisibility in the Laurent ring.
fn divide_normalized(p: &MHPolynomial, d: &MHPolynomial) -> Option<MHPolynomial> {
    let pm = p.min_exponents();
    let dm = d.min_exponents();
    let pn = to_q(&p.shift((-pm.0, -pm.1, -pm.2)));
    let dn = to_q(&d.shift((-dm.0, -dm.1, -dm.2)));
    let (dlead, dcoef) = dn.iter().next_back().map(|(m, c)| (*m, c.clone()))?;
    let mut r = pn;
    let mut q: QPoly = BTreeMap::new();
    while let Some((&rlead, rc)) = r.iter().next_back() {
        let s = (rlead.0 - dlead.0, rlead.1 - dlead.1, rlead.2 - dlead.2);
        if s.0 < 0 || s.1 < 0 || s.2 < 0 {
            return None;
        }
        let k = rc / &dcoef;
        sub_scaled(&mut r, &dn, s, &k);
        *q.entry(s).or_insert_with(BigRational::zero) += k;
    }
    let mut out = MHPolynomial::zero();
    for (m, c) in q {
        if !c.is_integer() {
            return None;
        }
        out.add_term(m, c.to_integer());
    }
    Some(out.shift((pm.0 - dm.0, pm.1 - dm.1, pm.2 - dm.2)))
}

/// Diagnostic: run division lowest-term first and report the first new
/// monomial it creates.
fn ascending_obstruction(p: &MHPolynomial, d: &MHPolynomial) -> Mono {
    let dq = to_q(d);
    let (dlow, dcoef) = dq
        .iter()
        .next()
        .map(|(m, c)| (*m, c.clone()))
        .expect("nonzero");
    let mut r = to_q(p);
    let support: Vec<Mono> = p.terms().map(|(m, _)| *m).collect();
    let limit = 64 * (p.len() + d.len());
    for _ in 0..limit {
        let Some((&low, c)) = r.iter().next() else {
            break;
        };
        let k = c / &dcoef;
        if !k.is_integer() {
            return low;
        }
        let s = (low.0 - dlow.0, low.1 - dlow.1, low.2 - dlow.2);
        let before: Vec<Mono> = r.keys().copied().collect();
        sub_scaled(&mut r, &dq, s, &k);
        if let Some(m) = r
            .keys()
            .find(|m| !before.contains(m) && !support.contains(m))
        {
            return *m;
        }
    }
    r.keys().next().copied().unwrap_or((0, 0, 0))
}

pub fn divide_exact(p: &MHPolynomial, d: &MHPolynomial) -> Result<Division, HodgeError> {
    if d.is_zero() {
        return Err(HodgeError::DivisionByZero);
    }
    if p.is_zero() {
        return Ok(Division::Exact(MHPolynomial::zero()));
    }
    Ok(match divide_normalized(p, d) {
        Some(q) if q.mul(d) == *p => Division::Exact(q),
        _ => Division::NotDivisible {
            obstruction: ascending_obstruction(p, d),
        },
    })
}

fn format_mono(m: Mono) -> String {
    let pow = |name: &str, e: i64| match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    };
    let mut parts = Vec::new();
    parts.extend(pow("t", m.0));
    if m.1 == m.2 {
        parts.extend(pow("(uv)", m.1));
    } else {
        parts.extend(pow("u", m.1));
        parts.extend(pow("v", m.2));
    }
    parts.join("*")
}

/// Renders one monomial, e.g. `t^2*(uv)^-1`.
pub fn mono_to_string(m: Mono) -> String {
    let s = format_mono(m);
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

impl fmt::Display for MHPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<&Mono> = self.terms.keys().collect();
        keys.sort_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)).then(y.2.cmp(&x.2)));
        for (i, m) in keys.into_iter().enumerate() {
            let c = &self.terms[m];
            let mono = format_mono(*m);
            let abs = c.abs();
            let body = match (mono.is_empty(), abs.is_one()) {
                (true, _) => abs.to_string(),
                (false, true) => mono,
                (false, false) => format!("{abs}*{mono}"),
            };
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => f.write_str(&body)?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    at: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.at < self.s.len() && (self.s[self.at] as char).is_whitespace() {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.at).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.s[self.at..].starts_with(word.as_bytes()) {
            self.at += word.len();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, message: &str) -> Result<T, HodgeError> {
        Err(HodgeError::Parse {
            pos: self.at,
            message: message.into(),
        })
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.at;
        while self.at < self.s.len() && self.s[self.at].is_ascii_digit() {
            self.at += 1;
        }
        (self.at > start).then(|| String::from_utf8_lossy(&self.s[start..self.at]).into_owned())
    }

    fn exponent(&mut self) -> Result<i64, HodgeError> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let braced = self.eat(b'{');
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let Some(d) = self.digits() else {
            return self.err("expected an integer exponent");
        };
        let Ok(mut e) = d.parse::<i64>() else {
            return self.err("exponent out of range");
        };
        if neg {
            e = -e;
        }
        if braced && !self.eat(b'}') {
            return self.err("expected `}`");
        }
        Ok(e)
    }
}

impl FromStr for MHPolynomial {
    type Err = HodgeError;

    fn from_str(src: &str) -> Result<Self, HodgeError> {
        let mut cur = Cursor {
            s: src.as_bytes(),
            at: 0,
        };
        let mut out = MHPolynomial::zero();
        let mut first = true;
        loop {
            let sign = if cur.eat(b'-') {
                -1
            } else if cur.eat(b'+') || first {
                1
            } else if cur.peek().is_none() {
                break;
            } else {
                return cur.err("expected `+` or `-`");
            };
            first = false;
            let coeff = match cur.digits() {
                Some(d) => d.parse::<BigInt>().expect("digits"),
                None => BigInt::one(),
            };
            let had_coeff = cur.at > 0 && cur.s[cur.at - 1].is_ascii_digit();
            let mut mono = (0, 0, 0);
            let mut had_mono = false;
            loop {
                let star = cur.eat(b'*');
                if cur.eat_str("(uv)") {
                    let e = cur.exponent()?;
                    mono.1 += e;
                    mono.2 += e;
                } else if cur.eat(b't') {
                    mono.0 += cur.exponent()?;
                } else if cur.eat(b'u') {
                    mono.1 += cur.exponent()?;
                } else if cur.eat(b'v') {
                    mono.2 += cur.exponent()?;
                } else if star {
                    return cur.err("expected a monomial after `*`");
                } else {
                    break;
                }
                had_mono = true;
            }
            if !had_coeff && !had_mono {
                return cur.err("expected a term");
            }
            out.add_term(mono, coeff * sign);
        }
        Ok(out)
    }
}

impl Serialize for MHPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MHPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MHPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        let x = p("1+t^3u^{-2}v^{-2}+t^5u^{-3}v^{-3}");
        assert_eq!(x.to_string(), "1 + t^3*(uv)^-2 + t^5*(uv)^-3");
        assert_eq!(p("2*t*u - v^2").to_string(), "-v^2 + 2*t*u");
        assert_eq!(p("t^2 (uv)^-1 - 3").to_string(), "-3 + t^2*(uv)^-1");
        assert_eq!(p("0").to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        assert!("t^".parse::<MHPolynomial>().is_err());
        assert!("1 +".parse::<MHPolynomial>().is_err());
        assert!("x".parse::<MHPolynomial>().is_err());
        assert!("t^{2".parse::<MHPolynomial>().is_err());
        assert!("t t * ".parse::<MHPolynomial>().is_err());
    }

    #[test]
    fn dualize_single_class() {
        let t = TwistedDims::from_entries(&[(26, 13, 1)]);
        assert_eq!(dualize(&t, 15).unwrap().to_string(), "1 + t^3*(uv)^-2");
        assert_eq!(
            dualize(&TwistedDims::new(), 7).unwrap(),
            MHPolynomial::one()
        );
        assert!(dualize(&TwistedDims::from_entries(&[(40, 1, 1)]), 15).is_err());
    }

    #[test]
    fn undualize_round_trip() {
        let t = TwistedDims::from_entries(&[(26, 13, 1), (15, 7, 2)]);
        let poly = dualize(&t, 15).unwrap();
        assert_eq!(undualize(&poly, 15).unwrap(), t);
        assert!(undualize(&p("1 + t*u"), 15).is_err());
        assert!(undualize(&p("1 - t*(uv)"), 15).is_err());
    }

    #[test]
    fn specializations() {
        let x = p("1 + t^3*u^-2*v^-1");
        assert_eq!(
            specialize(&x, SpecializeMode::PoincareSerre).to_string(),
            "1 + t^3*u^-3"
        );
        assert_eq!(
            specialize(&x, SpecializeMode::Poincare).to_string(),
            "1 + t^3"
        );
        assert_eq!(specialize(&x, SpecializeMode::Euler).to_string(), "0");
        assert_eq!(
            specialize(&MHPolynomial::one(), SpecializeMode::Euler).to_string(),
            "1"
        );
    }

    #[test]
    fn reference_polynomials() {
        for src in [QUARTIC_P2, CUBIC_P2, MODULI] {
            assert_eq!(p(src).to_string(), src);
        }
        assert_eq!(euler_characteristic(&p(QUARTIC_P2)), BigInt::zero());
        assert_eq!(euler_characteristic(&p(CUBIC_P2)), BigInt::zero());
        assert_eq!(p(QUARTIC_P2).len(), 10);
    }

    #[test]
    fn quartic_over_moduli_is_obstructed() {
        let r = divide_exact(&p(QUARTIC_P2), &p(MODULI)).unwrap();
        assert_eq!(
            r,
            Division::NotDivisible {
                obstruction: (2, -1, -1)
            }
        );
        assert_eq!(mono_to_string((2, -1, -1)), "t^2*(uv)^-1");
    }

    #[test]
    fn division() {
        let a = p("1 + t");
        let b = p("1 - t");
        let prod = a.mul(&b);
        assert_eq!(prod.to_string(), "1 - t^2");
        assert_eq!(divide_exact(&prod, &a).unwrap(), Division::Exact(b));
        assert_eq!(
            divide_exact(&a, &a).unwrap(),
            Division::Exact(MHPolynomial::one())
        );
        assert_eq!(
            divide_exact(&a, &MHPolynomial::zero()),
            Err(HodgeError::DivisionByZero)
        );
        assert!(matches!(
            divide_exact(&p("1 + t^2"), &p("2")).unwrap(),
            Division::NotDivisible { .. }
        ));
        let lq = p("t^-1*u + 3*v^2");
        let ld = p("u^-2 + t");
        assert_eq!(
            divide_exact(&lq.mul(&ld), &ld).unwrap(),
            Division::Exact(lq)
        );
    }
}
