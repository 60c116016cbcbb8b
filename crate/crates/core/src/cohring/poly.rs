//! Raw rational polynomials in named commuting generators.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::linalg::{fmt_rational, parse_rational, Rational};

pub type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("at offset {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Poly::monomial(vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(e, Rational::one())
    }

    pub fn monomial(exps: Exponents, c: Rational) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    /// Weighted degree of a monomial.
    pub fn weight(exps: &[u32], weights: &[u32]) -> u32 {
        exps.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    /// The set of weighted degrees occurring among the terms.
    pub fn degrees(&self, weights: &[u32]) -> Vec<u32> {
        let mut ds: Vec<u32> = self
            .terms
            .keys()
            .map(|e| Poly::weight(e, weights))
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::constant(self.nvars, Rational::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Parses a polynomial over the given generator names.
    ///
    /// Accepts `+ - * / ^`, parentheses, rational literals and implicit
    /// multiplication by juxtaposition (`2a1`).
    pub fn parse(src: &str, names: &[String]) -> Result<Poly, ParseError> {
        let tokens = tokenize(src)?;
        let mut p = Parser {
            tokens,
            at: 0,
            names,
            end: src.len(),
        };
        if p.tokens.is_empty() {
            return Err(ParseError {
                pos: 0,
                message: "empty expression".into(),
            });
        }
        let poly = p.expr()?;
        if let Some((pos, tok)) = p.tokens.get(p.at) {
            return Err(ParseError {
                pos: *pos,
                message: format!("unexpected `{}`", tok.text()),
            });
        }
        Ok(poly)
    }

    /// Renders with the given names; terms ordered by total exponent, then
    /// lexicographically descending.
    pub fn format(&self, names: &[String]) -> String {
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then(b.cmp(a))
        });
        let terms: Vec<(Exponents, Rational)> = keys
            .into_iter()
            .map(|k| (k.clone(), self.terms[k].clone()))
            .collect();
        format_terms(&terms, names)
    }
}

/// Joins `(monomial, coefficient)` pairs in the given order.
pub(crate) fn format_terms(terms: &[(Exponents, Rational)], names: &[String]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let mono = format_monomial(e, names);
        let neg = c < &Rational::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        let body = match (mono.is_empty(), abs.is_one()) {
            (true, _) => fmt_rational(&abs),
            (false, true) => mono,
            (false, false) => format!("{}*{}", fmt_rational(&abs), mono),
        };
        match (i, neg) {
            (0, true) => {
                let _ = write!(out, "-{body}");
            }
            (0, false) => out.push_str(&body),
            (_, true) => {
                let _ = write!(out, " - {body}");
            }
            (_, false) => {
                let _ = write!(out, " + {body}");
            }
        }
    }
    out
}

fn format_monomial(e: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(names)
        .filter(|(k, _)| **k > 0)
        .map(|(k, n)| {
            if *k == 1 {
                n.clone()
            } else {
                format!("{n}^{k}")
            }
        })
        .collect();
    parts.join("*")
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Num(s) | Tok::Ident(s) => s.clone(),
            Tok::Sym(c) => c.to_string(),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                s.push(chars[i].1);
                i += 1;
            }
            out.push((pos, Tok::Num(s)));
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() {
                let ch = chars[i].1;
                if ch.is_alphanumeric() || ch == '_' || ch == '\'' {
                    s.push(ch);
                    i += 1;
                } else {
                    break;
                }
            }
            out.push((pos, Tok::Ident(s)));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError {
                pos,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

/// Splits `a1a2` into known names, longest match first.
fn split_names(ident: &str, names: &[String]) -> Option<Vec<usize>> {
    if ident.is_empty() {
        return Some(Vec::new());
    }
    let mut candidates: Vec<usize> = (0..names.len())
        .filter(|&i| !names[i].is_empty() && ident.starts_with(names[i].as_str()))
        .collect();
    candidates.sort_by_key(|&i| std::cmp::Reverse(names[i].len()));
    candidates.into_iter().find_map(|i| {
        let mut rest = split_names(&ident[names[i].len()..], names)?;
        rest.insert(0, i);
        Some(rest)
    })
}

struct Parser<'a> {
    tokens: Vec<(usize, Tok)>,
    at: usize,
    names: &'a [String],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = Poly::zero(self.names.len());
        let mut first = true;
        loop {
            let neg = if self.eat('-') {
                true
            } else {
                let plus = self.eat('+');
                if !first && !plus {
                    break;
                }
                false
            };
            let t = self.term()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
            first = false;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            // juxtaposition multiplies too
            let juxtaposed = matches!(
                self.peek(),
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Sym('('))
            );
            if self.eat('*') || juxtaposed {
                acc = acc.mul(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(s)) => {
                    let Ok(k) = s.parse::<u32>() else {
                        return self.err("exponent too large");
                    };
                    self.at += 1;
                    Ok(base.pow(k))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let nvars = self.names.len();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                let mut text = n;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) => {
                            self.at += 1;
                            text = format!("{text}/{d}");
                        }
                        _ => return self.err("expected a denominator"),
                    }
                }
                match parse_rational(&text) {
                    Some(c) => Ok(Poly::constant(nvars, c)),
                    None => self.err(format!("bad number `{text}`")),
                }
            }
            Some(Tok::Ident(name)) => match split_names(&name, self.names) {
                Some(vars) => {
                    self.at += 1;
                    Ok(vars
                        .into_iter()
                        .fold(Poly::constant(nvars, Rational::one()), |acc, i| {
                            acc.mul(&Poly::var(nvars, i))
                        }))
                }
                None => self.err(format!("unknown generator `{name}`")),
            },
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected `{}`", t.text())),
            None => self.err("unexpected end of input"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn names() -> Vec<String> {
        vec!["a1".into(), "a2".into()]
    }

    #[test]
    fn parses_and_prints() {
        let p = Poly::parse("a1^2 + a1*a2 + a2^2", &names()).unwrap();
        assert_eq!(p.format(&names()), "a1^2 + a1*a2 + a2^2");
        let q = Poly::parse("-(a1 + a2)^2 + 2a1a2", &names()).unwrap();
        assert_eq!(q.format(&names()), "-a1^2 - a2^2");
        let r = Poly::parse("1/2*a1 - 3", &names()).unwrap();
        assert_eq!(r.format(&names()), "-3 + 1/2*a1");
    }

    #[test]
    fn zero_prints_as_zero() {
        let p = Poly::parse("a1 - a1", &names()).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.format(&names()), "0");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Poly::parse("a3", &names()).is_err());
        assert!(Poly::parse("a1 +", &names()).is_err());
        assert!(Poly::parse("(a1", &names()).is_err());
        assert!(Poly::parse("a1 ^ x", &names()).is_err());
        assert!(Poly::parse("", &names()).is_err());
        assert!(Poly::parse("a1 # a2", &names()).is_err());
    }

    #[test]
    fn weighted_degrees() {
        let p = Poly::parse("a1^2 + a2", &names()).unwrap();
        assert_eq!(p.degrees(&[2, 2]), vec![2, 4]);
        assert_eq!(Poly::constant(2, rat(3)).degrees(&[2, 2]), vec![0]);
    }
}
