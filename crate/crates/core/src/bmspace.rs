//! Borel-Moore homology of building-block spaces as twisted dimension
//! vectors, with audited scripts for the pieces that rest on cited facts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cohring::{self, presets, CohringError};
use crate::twisted::TwistedDims;

#[derive(Debug, thiserror::Error)]
pub enum BmError {
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
    #[error("script step {step}: declared fact has no citation")]
    MissingCitation { step: usize },
    #[error("script step {step}: no value to transform yet")]
    NoCurrentValue { step: usize },
    #[error("script has no steps")]
    EmptyScript,
    #[error("column {p}: give exactly one of `space` or `script`")]
    ColumnSource { p: u32 },
    #[error(transparent)]
    Cohring(#[from] CohringError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceExpr {
    Point,
    ProjectiveSpace(u32),
    /// Smooth compact space given by its graded Betti numbers.
    CompactSmooth(TwistedDims),
    /// Smooth compact space whose cohomology is a named ring preset.
    CompactRing(String),
    OpenCone(Box<SpaceExpr>),
    VectorBundleTotal {
        rank: u32,
        base: Box<SpaceExpr>,
    },
    /// Fibre bundle with trivial monodromy.
    Product(Box<SpaceExpr>, Box<SpaceExpr>),
    DisjointUnion(Vec<SpaceExpr>),
    DegreeShift {
        degree: i64,
        twist: i64,
        space: Box<SpaceExpr>,
    },
    Axiom(String),
}

impl SpaceExpr {
    pub fn cone(x: SpaceExpr) -> Self {
        SpaceExpr::OpenCone(Box::new(x))
    }

    pub fn bundle(rank: u32, base: SpaceExpr) -> Self {
        SpaceExpr::VectorBundleTotal {
            rank,
            base: Box::new(base),
        }
    }

    pub fn product(x: SpaceExpr, y: SpaceExpr) -> Self {
        SpaceExpr::Product(Box::new(x), Box::new(y))
    }

    pub fn shift(degree: i64, twist: i64, x: SpaceExpr) -> Self {
        SpaceExpr::DegreeShift {
            degree,
            twist,
            space: Box::new(x),
        }
    }

    pub fn axiom(name: &str) -> Self {
        SpaceExpr::Axiom(name.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomEntry {
    pub dims: TwistedDims,
    pub citation: String,
}

/// Named homology facts that the combinators cannot derive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomTable {
    entries: BTreeMap<String, AxiomEntry>,
}

pub const AX_PAIRS_CP2: &str = "B(CP2,2)±Q";
pub const AX_TRIPLES_CP1: &str = "B(CP1,3)±Q";
pub const AX_AUTOJOIN_CP1: &str = "CP1 autojoin 2";
pub const AX_AUTOJOIN_CP1_REDUCED: &str = "CP1 autojoin 2, reduced";

impl AxiomTable {
    pub fn empty() -> Self {
        AxiomTable {
            entries: BTreeMap::new(),
        }
    }

    pub fn standard() -> Self {
        let mut t = Self::empty();
        t.insert(
            AX_PAIRS_CP2,
            TwistedDims::from_entries(&[(2, 1, 1), (4, 2, 1), (6, 3, 1)]),
            "unordered point pairs in CP^2 with sign coefficients: Q(i/2) for i = 2, 4, 6",
        );
        t.insert(
            AX_TRIPLES_CP1,
            TwistedDims::new(),
            "unordered point triples in CP^1 with sign coefficients: acyclic",
        );
        t.insert(
            AX_AUTOJOIN_CP1,
            TwistedDims::point(),
            "second self-join of CP^1: rational homology of a point",
        );
        t.insert(
            AX_AUTOJOIN_CP1_REDUCED,
            TwistedDims::new(),
            "second self-join of CP^1: reduced homology vanishes",
        );
        t
    }

    pub fn insert(&mut self, name: &str, dims: TwistedDims, citation: &str) {
        self.entries.insert(
            name.into(),
            AxiomEntry {
                dims,
                citation: citation.into(),
            },
        );
    }

    pub fn get(&self, name: &str) -> Result<&AxiomEntry, BmError> {
        self.entries
            .get(name)
            .ok_or_else(|| BmError::UnknownAxiom(name.into()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

pub fn axiom(name: &str) -> Result<TwistedDims, BmError> {
    Ok(AxiomTable::standard().get(name)?.dims.clone())
}

pub fn projective_space(n: u32) -> TwistedDims {
    let mut t = TwistedDims::new();
    for k in 0..=n as i64 {
        t.add(2 * k, k, 1);
    }
    t
}

/// `H_i(open cone over X) = reduced H_{i-1}(X)`, same twist.
pub fn open_cone(x: &TwistedDims) -> TwistedDims {
    x.reduced().shift(1, 0)
}

/// Total space of a rank-d complex vector bundle.
pub fn vector_bundle(d: u32, x: &TwistedDims) -> TwistedDims {
    x.shift(2 * d as i64, d as i64)
}

pub fn eval_space(e: &SpaceExpr, axioms: &AxiomTable) -> Result<TwistedDims, BmError> {
    Ok(match e {
        SpaceExpr::Point => TwistedDims::point(),
        SpaceExpr::ProjectiveSpace(n) => projective_space(*n),
        SpaceExpr::CompactSmooth(t) => t.clone(),
        SpaceExpr::CompactRing(name) => presets::preset(name)?.poincare_twisted(),
        SpaceExpr::OpenCone(x) => open_cone(&eval_space(x, axioms)?),
        SpaceExpr::VectorBundleTotal { rank, base } => {
            vector_bundle(*rank, &eval_space(base, axioms)?)
        }
        SpaceExpr::Product(x, y) => eval_space(x, axioms)?.convolve(&eval_space(y, axioms)?),
        SpaceExpr::DisjointUnion(parts) => {
            let mut t = TwistedDims::new();
            for p in parts {
                t = t.sum(&eval_space(p, axioms)?);
            }
            t
        }
        SpaceExpr::DegreeShift {
            degree,
            twist,
            space,
        } => eval_space(space, axioms)?.shift(*degree, *twist),
        SpaceExpr::Axiom(name) => axioms.get(name)?.dims.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsotypicPart {
    Total,
    Invariant,
    Anti,
}

/// Borel-Moore homology of a C*-bundle with the given Euler class, read off
/// the Gysin sequence and dualized on the smooth total space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleComplement {
    /// Ring preset of the base.
    pub ring: String,
    pub euler: String,
    /// Apply the swap of the two generators.
    #[serde(default)]
    pub swap: bool,
    pub part: IsotypicPart,
    /// Complex dimension of the C*-bundle, used for Poincare duality.
    pub complex_dim: i64,
}

impl CircleComplement {
    pub fn eval(&self) -> Result<TwistedDims, BmError> {
        let ring = presets::preset(&self.ring)?;
        let euler = ring.element(&self.euler)?;
        let inv = if self.swap {
            Some(cohring::swap_involution(&ring)?)
        } else {
            None
        };
        let coh = cohring::circle_bundle_cohomology(&ring, &euler, inv.as_ref())?;
        let part = match (self.part, &coh.split) {
            (IsotypicPart::Total, _) | (_, None) => coh.total.clone(),
            (IsotypicPart::Invariant, Some(s)) => s.invariant.clone(),
            (IsotypicPart::Anti, Some(s)) => s.anti.clone(),
        };
        Ok(cohring::to_borel_moore(&part, self.complex_dim))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Step {
    /// Replace the current value by an evaluated expression.
    Eval(SpaceExpr),
    /// Replace the current value by a cited fact.
    DeclaredFact {
        dims: TwistedDims,
        citation: String,
    },
    /// Replace the current value by a Gysin computation.
    CircleComplement(CircleComplement),
    OpenCone,
    VectorBundle {
        rank: u32,
    },
    Shift {
        degree: i64,
        twist: i64,
    },
    ProductWith(SpaceExpr),
    UnionWith(SpaceExpr),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Script {
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub step: usize,
    pub citation: String,
    pub value: TwistedDims,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptResult {
    pub dims: TwistedDims,
    pub audit: Vec<AuditEntry>,
}

impl Script {
    pub fn declared(dims: TwistedDims, citation: &str) -> Self {
        Script {
            steps: vec![Step::DeclaredFact {
                dims,
                citation: citation.into(),
            }],
        }
    }

    pub fn then(mut self, step: Step) -> Self {
        self.steps.push(step);
        self
    }
}

pub fn run_script(s: &Script, axioms: &AxiomTable) -> Result<ScriptResult, BmError> {
    if s.steps.is_empty() {
        return Err(BmError::EmptyScript);
    }
    let mut cur: Option<TwistedDims> = None;
    let mut audit = Vec::new();
    for (i, step) in s.steps.iter().enumerate() {
        let need =
            |cur: &Option<TwistedDims>| cur.clone().ok_or(BmError::NoCurrentValue { step: i });
        let next = match step {
            Step::Eval(e) => eval_space(e, axioms)?,
            Step::DeclaredFact { dims, citation } => {
                if citation.trim().is_empty() {
                    return Err(BmError::MissingCitation { step: i });
                }
                audit.push(AuditEntry {
                    step: i,
                    citation: citation.clone(),
                    value: dims.clone(),
                });
                dims.clone()
            }
            Step::CircleComplement(c) => {
                let v = c.eval()?;
                audit.push(AuditEntry {
                    step: i,
                    citation: format!(
                        "Gysin sequence over {} with euler class {}",
                        c.ring, c.euler
                    ),
                    value: v.clone(),
                });
                v
            }
            Step::OpenCone => open_cone(&need(&cur)?),
            Step::VectorBundle { rank } => vector_bundle(*rank, &need(&cur)?),
            Step::Shift { degree, twist } => need(&cur)?.shift(*degree, *twist),
            Step::ProductWith(e) => need(&cur)?.convolve(&eval_space(e, axioms)?),
            Step::UnionWith(e) => need(&cur)?.sum(&eval_space(e, axioms)?),
        };
        cur = Some(next);
    }
    Ok(ScriptResult {
        dims: cur.unwrap_or_default(),
        audit,
    })
}

/// One E^1 column: the stratum's fibre-bundle data and the rank of its
/// linear system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColumnSpec {
    pub p: u32,
    pub d: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceExpr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub script: Option<Script>,
}

impl ColumnSpec {
    pub fn space(p: u32, d: u32, e: SpaceExpr) -> Self {
        ColumnSpec {
            p,
            d,
            space: Some(e),
            script: None,
        }
    }

    pub fn script(p: u32, d: u32, s: Script) -> Self {
        ColumnSpec {
            p,
            d,
            space: None,
            script: Some(s),
        }
    }

    /// Borel-Moore homology of the column's stratum, with its audit trail.
    pub fn eval(&self, axioms: &AxiomTable) -> Result<ScriptResult, BmError> {
        let base = match (&self.space, &self.script) {
            (Some(e), None) => ScriptResult {
                dims: eval_space(e, axioms)?,
                audit: Vec::new(),
            },
            (None, Some(s)) => run_script(s, axioms)?,
            _ => return Err(BmError::ColumnSource { p: self.p }),
        };
        Ok(ScriptResult {
            dims: vector_bundle(self.d, &base.dims),
            audit: base.audit,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(e: &SpaceExpr) -> TwistedDims {
        eval_space(e, &AxiomTable::standard()).unwrap()
    }

    #[test]
    fn cone_over_projective_line() {
        let c = SpaceExpr::cone(SpaceExpr::ProjectiveSpace(1));
        assert_eq!(ev(&c), TwistedDims::from_entries(&[(3, 1, 1)]));
        assert!(ev(&SpaceExpr::cone(SpaceExpr::Point)).is_empty());
    }

    #[test]
    fn flag_bundle_column() {
        let e = SpaceExpr::bundle(10, SpaceExpr::CompactRing("flag-n2".into()));
        assert_eq!(
            ev(&e),
            TwistedDims::from_entries(&[(20, 10, 1), (22, 11, 2), (24, 12, 2), (26, 13, 1)])
        );
    }

    #[test]
    fn axioms_resolve() {
        assert_eq!(
            axiom(AX_PAIRS_CP2).unwrap(),
            TwistedDims::from_entries(&[(2, 1, 1), (4, 2, 1), (6, 3, 1)])
        );
        assert!(axiom(AX_TRIPLES_CP1).unwrap().is_empty());
        assert!(axiom(AX_AUTOJOIN_CP1_REDUCED).unwrap().is_empty());
        assert!(matches!(axiom("nope"), Err(BmError::UnknownAxiom(_))));
    }

    #[test]
    fn scripts_need_citations() {
        let s = Script::declared(TwistedDims::point(), "  ");
        assert!(matches!(
            run_script(&s, &AxiomTable::standard()),
            Err(BmError::MissingCitation { step: 0 })
        ));
        let s = Script::declared(TwistedDims::point(), "src");
        let r = run_script(&s, &AxiomTable::standard()).unwrap();
        assert_eq!(r.dims, TwistedDims::point());
        assert_eq!(r.audit.len(), 1);
        let bad = Script {
            steps: vec![Step::OpenCone],
        };
        assert!(matches!(
            run_script(&bad, &AxiomTable::standard()),
            Err(BmError::NoCurrentValue { step: 0 })
        ));
    }

    #[test]
    fn circle_complement_over_point_pairs() {
        let c = CircleComplement {
            ring: "pair-n2".into(),
            euler: "-2a1 - 2a2".into(),
            swap: true,
            part: IsotypicPart::Anti,
            complex_dim: 5,
        };
        let s = Script {
            steps: vec![
                Step::CircleComplement(c),
                Step::Shift {
                    degree: 6,
                    twist: 2,
                },
            ],
        };
        let r = run_script(&s, &AxiomTable::standard()).unwrap();
        assert_eq!(r.dims, TwistedDims::from_entries(&[(9, 3, 1), (14, 6, 1)]));
    }

    #[test]
    fn column_needs_one_source() {
        let c = ColumnSpec {
            p: 3,
            d: 1,
            space: None,
            script: None,
        };
        assert!(matches!(
            c.eval(&AxiomTable::standard()),
            Err(BmError::ColumnSource { p: 3 })
        ));
    }

    #[test]
    fn json_shape() {
        let e = SpaceExpr::product(
            SpaceExpr::ProjectiveSpace(2),
            SpaceExpr::cone(SpaceExpr::Point),
        );
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(
            s,
            r#"{"product":[{"projective_space":2},{"open_cone":"point"}]}"#
        );
        assert_eq!(serde_json::from_str::<SpaceExpr>(&s).unwrap(), e);
    }
}
