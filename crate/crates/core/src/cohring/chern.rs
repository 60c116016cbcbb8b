//! Total Chern classes and the bundle expressions that evaluate to them.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::presets;
use super::ring::{GradedRing, RingElement, RingMap};
use super::CohringError;
use crate::linalg::{rat, Rational};

/// A unit class `1 + c_1 + c_2 + ...`, truncated at the ring's top degree.
#[derive(Clone, Debug, PartialEq)]
pub struct TotalClass(RingElement);

impl TotalClass {
    pub fn new(e: RingElement) -> Result<Self, CohringError> {
        if e.coords(0) != vec![Rational::one()] {
            return Err(CohringError::NotUnit(e.to_string()));
        }
        Ok(TotalClass(e))
    }

    pub fn one(ring: &Arc<GradedRing>) -> Self {
        TotalClass(RingElement::one(ring))
    }

    /// `1 + c1` for a degree-2 class.
    pub fn line(c1: &RingElement) -> Result<Self, CohringError> {
        c1.require_degree(2)?;
        Ok(TotalClass(RingElement::one(c1.ring()).add(c1)))
    }

    pub fn element(&self) -> &RingElement {
        &self.0
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        self.0.ring()
    }

    /// `c_k`, the degree-2k component.
    pub fn c(&self, k: u32) -> RingElement {
        self.0.component(2 * k)
    }

    pub fn mul(&self, other: &TotalClass) -> TotalClass {
        TotalClass(self.0.mul(&other.0))
    }

    /// Geometric series in the nilpotent part.
    pub fn inverse(&self) -> TotalClass {
        let ring = self.ring();
        let x = self.0.sub(&RingElement::one(ring));
        let mut out = RingElement::one(ring);
        let mut term = RingElement::one(ring);
        for _ in 0..ring.top_degree() / 2 {
            term = term.mul(&x).neg();
            if term.is_zero() {
                break;
            }
            out = out.add(&term);
        }
        TotalClass(out)
    }

    pub fn div(&self, other: &TotalClass) -> TotalClass {
        self.mul(&other.inverse())
    }

    pub fn pow(&self, k: i64) -> TotalClass {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        TotalClass(base.0.pow(k.unsigned_abs() as u32))
    }

    /// Highest k with `c_k != 0`.
    pub fn top_index(&self) -> u32 {
        self.0.degrees().last().map_or(0, |d| d / 2)
    }
}

impl std::fmt::Display for TotalClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// `c(E (x) L)` for a rank-r bundle E and a line bundle with first class `l`.
pub fn tensor_with_line(
    rank: usize,
    base: &TotalClass,
    l: &RingElement,
) -> Result<TotalClass, CohringError> {
    l.require_degree(2)?;
    if base.top_index() as usize > rank {
        return Err(CohringError::Rank(format!(
            "class {base} has nonzero c_{} above rank {rank}",
            base.top_index()
        )));
    }
    let ring = base.ring();
    let mut out = RingElement::zero(ring);
    for k in 0..=rank as u64 {
        for i in 0..=k {
            let coef = binomial(rank as u64 - i, k - i);
            if coef.is_zero() {
                continue;
            }
            let term = base.c(i as u32).mul(&l.pow((k - i) as u32)).scale(&coef);
            out = out.add(&term);
        }
    }
    TotalClass::new(out)
}

#[derive(Clone, Debug)]
pub enum BundleExpr {
    /// Line bundle with the given first Chern class.
    Line(RingElement),
    Trivial(usize),
    /// A bundle of known rank and class.
    Class {
        rank: usize,
        class: TotalClass,
    },
    WhitneySum(Vec<BundleExpr>),
    /// `0 -> E -> trivial -> (+) L_i -> 0`.
    InverseFromExactSequence {
        trivial_rank: usize,
        quotients: Vec<RingElement>,
    },
    TensorWithLine {
        rank: usize,
        base: Box<BundleExpr>,
        line: RingElement,
    },
    Pullback {
        map: RingMap,
        expr: Box<BundleExpr>,
    },
    QuotientClass {
        num: Box<BundleExpr>,
        den: Box<BundleExpr>,
    },
}

/// Evaluates to `(rank, class)`. `ring` is where the result must live.
pub fn eval_bundle(
    ring: &Arc<GradedRing>,
    e: &BundleExpr,
) -> Result<(usize, TotalClass), CohringError> {
    match e {
        BundleExpr::Line(c1) => {
            c1.check_ring(ring)?;
            Ok((1, TotalClass::line(c1)?))
        }
        BundleExpr::Trivial(r) => Ok((*r, TotalClass::one(ring))),
        BundleExpr::Class { rank, class } => {
            class.element().check_ring(ring)?;
            if class.top_index() as usize > *rank {
                return Err(CohringError::Rank(format!(
                    "class {class} exceeds declared rank {rank}"
                )));
            }
            Ok((*rank, class.clone()))
        }
        BundleExpr::WhitneySum(parts) => {
            let mut rank = 0;
            let mut class = TotalClass::one(ring);
            for p in parts {
                let (r, c) = eval_bundle(ring, p)?;
                rank += r;
                class = class.mul(&c);
            }
            Ok((rank, class))
        }
        BundleExpr::InverseFromExactSequence {
            trivial_rank,
            quotients,
        } => {
            if quotients.len() > *trivial_rank {
                return Err(CohringError::Rank(format!(
                    "{} quotient lines exceed trivial rank {trivial_rank}",
                    quotients.len()
                )));
            }
            let mut prod = TotalClass::one(ring);
            for q in quotients {
                q.check_ring(ring)?;
                prod = prod.mul(&TotalClass::line(q)?);
            }
            Ok((trivial_rank - quotients.len(), prod.inverse()))
        }
        BundleExpr::TensorWithLine { rank, base, line } => {
            line.check_ring(ring)?;
            let (r, c) = eval_bundle(ring, base)?;
            if r != *rank {
                return Err(CohringError::Rank(format!(
                    "tensor declared rank {rank}, base has rank {r}"
                )));
            }
            Ok((r, tensor_with_line(r, &c, line)?))
        }
        BundleExpr::Pullback { map, expr } => {
            if !map.target().same_as(ring) {
                return Err(CohringError::RingMismatch);
            }
            let (r, c) = eval_bundle(map.source(), expr)?;
            Ok((r, TotalClass::new(map.apply(c.element())?)?))
        }
        BundleExpr::QuotientClass { num, den } => {
            let (rn, cn) = eval_bundle(ring, num)?;
            let (rd, cd) = eval_bundle(ring, den)?;
            if rd > rn {
                return Err(CohringError::Rank(format!(
                    "quotient of rank {rn} by rank {rd}"
                )));
            }
            Ok((rn - rd, cn.div(&cd)))
        }
    }
}

pub fn chern_total(ring: &Arc<GradedRing>, e: &BundleExpr) -> Result<TotalClass, CohringError> {
    Ok(eval_bundle(ring, e)?.1)
}

/// Largest n accepted by `chern_theta`.
pub const THETA_MAX_N: u32 = 4;

#[derive(Clone, Debug)]
pub struct ThetaClasses {
    /// Closed formula in the flag ring.
    pub flag: TotalClass,
    /// The closed formula pulled back to the ordered-pair ring.
    pub closed: TotalClass,
    /// Evaluation along the exact-sequence route in the ordered-pair ring.
    pub proof_route: TotalClass,
}

impl ThetaClasses {
    pub fn routes_agree(&self) -> bool {
        self.closed == self.proof_route
    }
}

fn affine(ring: &Arc<GradedRing>, coeffs: &[i64]) -> RingElement {
    coeffs
        .iter()
        .enumerate()
        .fold(RingElement::zero(ring), |acc, (i, &k)| {
            acc.add(&ring.generator(i).scale(&rat(k)))
        })
}

fn binomial_usize(n: u32, k: u32) -> usize {
    let b = binomial(n as u64, k as u64);
    b.to_integer().try_into().expect("small binomial")
}

/// Closed formula for `c(theta_{d,n})` in the flag ring `(ap, al)`.
pub fn theta_flag_class(
    flag: &Arc<GradedRing>,
    d: i64,
    n: u32,
) -> Result<TotalClass, CohringError> {
    let e = -(n as i64) - 1;
    let f1 = TotalClass::line(&affine(flag, &[d - 1, 0]))?.pow(e);
    let f2 = TotalClass::line(&affine(flag, &[d - 3, 1]))?.pow(e);
    let f3 = TotalClass::line(&affine(flag, &[d - 2, 1]))?;
    Ok(f1.mul(&f2).mul(&f3))
}

/// Rank of `theta_{d,n}`: the space of degree-d forms minus `2n+1`.
pub fn theta_rank(d: u32, n: u32) -> usize {
    binomial_usize(d + n, n).saturating_sub(2 * n as usize + 1)
}

pub fn chern_theta(d: u32, n: u32) -> Result<ThetaClasses, CohringError> {
    if d < 1 || !(2..=THETA_MAX_N).contains(&n) {
        return Err(CohringError::ThetaRange { d, n });
    }
    let pair = presets::pair_ring(n, "ax", "ay")?;
    let flag = presets::flag_ring(n, "ap", "al")?;
    let p_star = RingMap::from_strs(&flag, &pair, &["ax", "ax + ay"])?;
    let di = d as i64;

    let flag_class = theta_flag_class(&flag, di, n)?;
    let closed = TotalClass::new(p_star.apply(flag_class.element())?)?;

    let big_n = binomial_usize(d + n, n);
    let copies = n as usize + 1;
    let zeta1 = BundleExpr::InverseFromExactSequence {
        trivial_rank: big_n,
        quotients: vec![affine(&pair, &[di - 1, 0]); copies],
    };
    let taus = (0..copies).map(|_| BundleExpr::InverseFromExactSequence {
        trivial_rank: big_n,
        quotients: vec![affine(&pair, &[di - 2, 1])],
    });
    let tau = BundleExpr::InverseFromExactSequence {
        trivial_rank: big_n,
        quotients: vec![affine(&pair, &[di - 1, 1])],
    };
    let expr = BundleExpr::QuotientClass {
        num: Box::new(BundleExpr::WhitneySum(
            std::iter::once(zeta1).chain(taus).collect(),
        )),
        den: Box::new(tau),
    };
    let proof_route = chern_total(&pair, &expr)?;
    Ok(ThetaClasses {
        flag: flag_class,
        closed,
        proof_route,
    })
}

#[derive(Clone, Debug)]
pub struct XiEta {
    pub xi: TotalClass,
    pub eta: TotalClass,
    /// `c_1(xi'/eta')`.
    pub c1_quotient: RingElement,
}

/// Bundle expression for `xi'` over the point-pair ring `(a1, a2)`.
pub fn xi_expr(z: &Arc<GradedRing>) -> Result<BundleExpr, CohringError> {
    let flag = presets::flag_ring(2, "ap", "al")?;
    let theta = BundleExpr::Class {
        rank: theta_rank(4, 2),
        class: theta_flag_class(&flag, 4, 2)?,
    };
    let p1 = RingMap::from_strs(&flag, z, &["a1", "-a2"])?;
    let p2 = RingMap::from_strs(&flag, z, &["a2", "-a1"])?;
    Ok(BundleExpr::QuotientClass {
        num: Box::new(BundleExpr::WhitneySum(vec![
            BundleExpr::Pullback {
                map: p1,
                expr: Box::new(theta.clone()),
            },
            BundleExpr::Pullback {
                map: p2,
                expr: Box::new(theta),
            },
        ])),
        den: Box::new(BundleExpr::Trivial(binomial_usize(6, 2))),
    })
}

/// Bundle expression for `eta' = eta'' (x) lambda^2`.
pub fn eta_expr(z: &Arc<GradedRing>) -> Result<BundleExpr, CohringError> {
    let a1 = z.generator(0);
    let a2 = z.generator(1);
    let lambda = BundleExpr::InverseFromExactSequence {
        trivial_rank: 3,
        quotients: vec![a1.clone(), a2.clone()],
    };
    let c1_lambda = chern_total(z, &lambda)?.c(1);
    let two = rat(2);
    let eta2 = BundleExpr::InverseFromExactSequence {
        trivial_rank: 6,
        quotients: vec![a1.scale(&two), a2.scale(&two)],
    };
    Ok(BundleExpr::TensorWithLine {
        rank: 4,
        base: Box::new(eta2),
        line: c1_lambda.scale(&two),
    })
}

pub fn chern_xi_eta() -> Result<XiEta, CohringError> {
    let z = presets::pair_ring(2, "a1", "a2")?;
    let xi = xi_expr(&z)?;
    let eta = eta_expr(&z)?;
    let (_, xi_c) = eval_bundle(&z, &xi)?;
    let (_, eta_c) = eval_bundle(&z, &eta)?;
    let quotient = BundleExpr::QuotientClass {
        num: Box::new(xi),
        den: Box::new(eta),
    };
    let (rank, q) = eval_bundle(&z, &quotient)?;
    debug_assert_eq!(rank, 1);
    Ok(XiEta {
        xi: xi_c,
        eta: eta_c,
        c1_quotient: q.c(1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Arc<GradedRing> {
        presets::pair_ring(2, "a1", "a2").unwrap()
    }

    #[test]
    fn eta_double_prime_truncates() {
        let z = z();
        let e = BundleExpr::InverseFromExactSequence {
            trivial_rank: 6,
            quotients: vec![z.element("2a1").unwrap(), z.element("2a2").unwrap()],
        };
        assert_eq!(chern_total(&z, &e).unwrap().to_string(), "1 - 2*a1 - 2*a2");
    }

    #[test]
    fn eta_prime_classes() {
        let z = z();
        let (rank, c) = eval_bundle(&z, &eta_expr(&z).unwrap()).unwrap();
        assert_eq!(rank, 4);
        assert_eq!(c.c(1), z.element("-10a1 - 10a2").unwrap());
        assert_eq!(c.c(2), z.element("36a1a2").unwrap());
        assert!(c.c(3).is_zero());
    }

    #[test]
    fn tensor_with_trivial_line_is_identity() {
        let z = z();
        let base = TotalClass::new(z.element("1 - 2a1 - 2a2 + 4a1a2").unwrap()).unwrap();
        let out = tensor_with_line(4, &base, &RingElement::zero(&z)).unwrap();
        assert_eq!(out, base);
    }

    #[test]
    fn tensor_rejects_rank_overflow() {
        let z = z();
        let base = TotalClass::new(z.element("1 + a1 + a1a2").unwrap()).unwrap();
        assert!(tensor_with_line(1, &base, &z.element("a1").unwrap()).is_err());
    }

    #[test]
    fn quotient_rank_must_be_nonnegative() {
        let z = z();
        let e = BundleExpr::QuotientClass {
            num: Box::new(BundleExpr::Trivial(1)),
            den: Box::new(BundleExpr::Trivial(2)),
        };
        assert!(matches!(eval_bundle(&z, &e), Err(CohringError::Rank(_))));
    }

    #[test]
    fn theta_degree_two_component() {
        let t = chern_theta(4, 2).unwrap();
        assert!(t.routes_agree());
        assert_eq!(t.closed.c(1).to_string(), "-12*ax - 2*ay");
        assert_eq!(t.flag.c(1).to_string(), "-10*ap - 2*al");
    }

    #[test]
    fn theta_range_is_checked() {
        assert!(chern_theta(0, 2).is_err());
        assert!(chern_theta(3, 1).is_err());
        assert!(chern_theta(3, THETA_MAX_N + 1).is_err());
    }

    #[test]
    fn xi_eta_quotient() {
        let x = chern_xi_eta().unwrap();
        let z = x.xi.ring().clone();
        assert_eq!(x.xi.c(1), z.element("-8a1 - 8a2").unwrap());
        assert_eq!(x.c1_quotient.to_string(), "2*a1 + 2*a2");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), rat(15));
        assert_eq!(binomial(2, 3), rat(0));
        assert_eq!(theta_rank(4, 2), 10);
        assert_eq!(theta_rank(3, 2), 5);
    }
}
