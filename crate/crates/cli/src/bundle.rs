//! JSON form of bundle expressions for `chern eval`. Ring elements are
//! written as polynomial strings in the generators of their ring.

use std::sync::Arc;

use serde::Deserialize;

use conres_core::cohring::{
    self, presets, BundleExpr, GradedRing, Presentation, RingMap, TotalClass,
};

use crate::Fail;

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RingRef {
    Preset(String),
    Presentation(Presentation),
}

impl RingRef {
    fn build(&self) -> Result<Arc<GradedRing>, Fail> {
        match self {
            RingRef::Preset(name) => presets::preset(name).map_err(Fail::schema),
            RingRef::Presentation(p) => cohring::build_ring(p).map_err(Fail::compute),
        }
    }
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Expr {
    Line(String),
    Trivial(usize),
    Class {
        rank: usize,
        class: String,
    },
    WhitneySum(Vec<Expr>),
    InverseFromExactSequence {
        trivial_rank: usize,
        quotients: Vec<String>,
    },
    TensorWithLine {
        rank: usize,
        base: Box<Expr>,
        line: String,
    },
    QuotientClass {
        num: Box<Expr>,
        den: Box<Expr>,
    },
    /// `expr` lives in `source`; `images` are the generators' images.
    Pullback {
        source: RingRef,
        images: Vec<String>,
        expr: Box<Expr>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleInput {
    pub ring: RingRef,
    pub expr: Expr,
}

impl BundleInput {
    pub fn eval(&self) -> Result<(usize, TotalClass), Fail> {
        let ring = self.ring.build()?;
        let e = lower(&ring, &self.expr)?;
        cohring::eval_bundle(&ring, &e).map_err(Fail::compute)
    }
}

fn lower(ring: &Arc<GradedRing>, e: &Expr) -> Result<BundleExpr, Fail> {
    let el = |s: &str| ring.element(s).map_err(Fail::schema);
    Ok(match e {
        Expr::Line(c1) => BundleExpr::Line(el(c1)?),
        Expr::Trivial(r) => BundleExpr::Trivial(*r),
        Expr::Class { rank, class } => BundleExpr::Class {
            rank: *rank,
            class: TotalClass::new(el(class)?).map_err(Fail::compute)?,
        },
        Expr::WhitneySum(xs) => BundleExpr::WhitneySum(
            xs.iter()
                .map(|x| lower(ring, x))
                .collect::<Result<_, _>>()?,
        ),
        Expr::InverseFromExactSequence {
            trivial_rank,
            quotients,
        } => BundleExpr::InverseFromExactSequence {
            trivial_rank: *trivial_rank,
            quotients: quotients.iter().map(|q| el(q)).collect::<Result<_, _>>()?,
        },
        Expr::TensorWithLine { rank, base, line } => BundleExpr::TensorWithLine {
            rank: *rank,
            base: Box::new(lower(ring, base)?),
            line: el(line)?,
        },
        Expr::QuotientClass { num, den } => BundleExpr::QuotientClass {
            num: Box::new(lower(ring, num)?),
            den: Box::new(lower(ring, den)?),
        },
        Expr::Pullback {
            source,
            images,
            expr,
        } => {
            let src = source.build()?;
            let imgs: Vec<&str> = images.iter().map(String::as_str).collect();
            let map = RingMap::from_strs(&src, ring, &imgs).map_err(Fail::compute)?;
            BundleExpr::Pullback {
                map,
                expr: Box::new(lower(&src, expr)?),
            }
        }
    })
}
