//! Finite symbolic stratification models and a checker for the
//! order-theoretic conditions a conical resolution needs.
//!
//! Strata are atoms indexed 1..N. Containment and geometrization are declared
//! edges; nothing here looks at actual point sets.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum StrataError {
    #[error("stratum at position {pos} has index {index}, expected {pos}")]
    BadIndex { pos: usize, index: usize },
    #[error("stratum {stratum}: {field} refers to missing stratum {target}")]
    DanglingRef {
        stratum: usize,
        field: &'static str,
        target: usize,
    },
    #[error("model has no strata")]
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeomEdge {
    /// Free-form label of a boundary configuration class.
    pub class: String,
    /// Stratum holding the geometrization.
    pub target: usize,
    /// Stratum the boundary configuration itself belongs to, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub member: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubsetHome {
    pub size: u32,
    pub home: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Finite {
    pub cardinality: u32,
    #[serde(default)]
    pub subsets: Vec<SubsetHome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stratum {
    pub index: usize,
    pub name: String,
    pub d: u32,
    /// Strata with members properly containing some member of this one.
    #[serde(default)]
    pub contains: Vec<usize>,
    /// Containments that may be equalities; recorded, never ordered.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub contains_improper: Vec<usize>,
    #[serde(default)]
    pub geom: Vec<GeomEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite: Option<Finite>,
}

impl Stratum {
    pub fn new(index: usize, name: &str, d: u32) -> Self {
        Stratum {
            index,
            name: name.into(),
            d,
            contains: Vec::new(),
            contains_improper: Vec::new(),
            geom: Vec::new(),
            finite: None,
        }
    }

    pub fn inside(mut self, targets: &[usize]) -> Self {
        self.contains.extend_from_slice(targets);
        self
    }

    pub fn boundary(mut self, class: &str, target: usize, member: Option<usize>) -> Self {
        self.geom.push(GeomEdge {
            class: class.into(),
            target,
            member,
        });
        self
    }

    /// Finite configurations of `cardinality` points; `homes[k-1]` is the
    /// stratum holding their k-point subsets.
    pub fn finite(mut self, cardinality: u32, homes: &[usize]) -> Self {
        self.finite = Some(Finite {
            cardinality,
            subsets: homes
                .iter()
                .enumerate()
                .map(|(k, &home)| SubsetHome {
                    size: k as u32 + 1,
                    home,
                })
                .collect(),
        });
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StratificationModel {
    pub strata: Vec<Stratum>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    FiveMinus,
    Five,
    FivePlus,
}

impl Level {
    pub fn label(self) -> &'static str {
        match self {
            Level::FiveMinus => "5-",
            Level::Five => "5",
            Level::FivePlus => "5+",
        }
    }
}

impl FromStr for Level {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "five_minus" | "five-minus" | "5-" => Ok(Level::FiveMinus),
            "five" | "5" => Ok(Level::Five),
            "five_plus" | "five-plus" | "5+" => Ok(Level::FivePlus),
            _ => Err(format!("unknown level `{s}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Reported,
    NotCheckable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub condition: String,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub level: Level,
    pub conditions: Vec<ConditionResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.outcome != Outcome::Fail)
    }

    pub fn failures(&self) -> Vec<String> {
        self.conditions
            .iter()
            .filter(|c| c.outcome == Outcome::Fail)
            .flat_map(|c| {
                c.details
                    .iter()
                    .map(move |d| format!("{}: {d}", c.condition))
            })
            .collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.conditions {
            let word = match c.outcome {
                Outcome::Pass => "pass",
                Outcome::Fail => "FAIL",
                Outcome::Reported => "reported",
                Outcome::NotCheckable => "not machine-checkable",
            };
            writeln!(f, "condition {}: {word}", c.condition)?;
            for d in &c.details {
                writeln!(f, "  {d}")?;
            }
        }
        write!(
            f,
            "level {}: {}",
            self.level.label(),
            if self.passed() { "pass" } else { "FAIL" }
        )
    }
}

fn result(condition: &str, problems: Vec<String>) -> ConditionResult {
    ConditionResult {
        condition: condition.into(),
        outcome: if problems.is_empty() {
            Outcome::Pass
        } else {
            Outcome::Fail
        },
        details: problems,
    }
}

fn note(condition: &str, outcome: Outcome, detail: &str) -> ConditionResult {
    ConditionResult {
        condition: condition.into(),
        outcome,
        details: vec![detail.into()],
    }
}

impl StratificationModel {
    pub fn new(strata: Vec<Stratum>) -> Result<Self, StrataError> {
        let m = StratificationModel { strata };
        m.check()?;
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn d_values(&self) -> Vec<u32> {
        self.strata.iter().map(|s| s.d).collect()
    }

    pub fn stratum(&self, index: usize) -> Option<&Stratum> {
        index.checked_sub(1).and_then(|i| self.strata.get(i))
    }

    /// Structural invariants: indices run 1..N in order and every reference
    /// lands on an existing stratum.
    pub fn check(&self) -> Result<(), StrataError> {
        if self.strata.is_empty() {
            return Err(StrataError::Empty);
        }
        let n = self.strata.len();
        for (pos, s) in self.strata.iter().enumerate() {
            if s.index != pos + 1 {
                return Err(StrataError::BadIndex {
                    pos: pos + 1,
                    index: s.index,
                });
            }
            let dangling = |field: &'static str, target: usize| {
                if target == 0 || target > n {
                    Err(StrataError::DanglingRef {
                        stratum: s.index,
                        field,
                        target,
                    })
                } else {
                    Ok(())
                }
            };
            for &t in s.contains.iter().chain(&s.contains_improper) {
                dangling("contains", t)?;
            }
            for g in &s.geom {
                dangling("geom.target", g.target)?;
                if let Some(m) = g.member {
                    dangling("geom.member", m)?;
                }
            }
            if let Some(fin) = &s.finite {
                for h in &fin.subsets {
                    dangling("finite.subsets.home", h.home)?;
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self, level: Level) -> Result<ValidationReport, StrataError> {
        self.check()?;
        let mut conditions = vec![note(
            "1",
            Outcome::NotCheckable,
            "every singular locus lies in some stratum",
        )];

        let mut c2 = Vec::new();
        for s in &self.strata {
            for &j in &s.contains {
                if j <= s.index {
                    c2.push(format!(
                        "X{} is properly contained in X{j} but {} >= {j}",
                        s.index, s.index
                    ));
                }
            }
        }
        conditions.push(result("2", c2));
        conditions.push(note(
            "3",
            Outcome::Reported,
            &format!("d = {:?}", self.d_values()),
        ));
        conditions.push(note(
            "4",
            Outcome::Reported,
            "strata are distinct atoms of the model",
        ));

        let mut c5 = Vec::new();
        for s in &self.strata {
            let i = s.index;
            let mut targets: BTreeMap<&str, usize> = BTreeMap::new();
            for g in &s.geom {
                if let Some(&t) = targets.get(g.class.as_str()) {
                    if t != g.target {
                        c5.push(format!(
                            "X{i} boundary class `{}` has two geometrizations (X{t}, X{})",
                            g.class, g.target
                        ));
                    }
                }
                targets.insert(&g.class, g.target);
                let ok = match level {
                    Level::FiveMinus => g.target <= i,
                    Level::Five | Level::FivePlus => g.target < i,
                };
                if !ok {
                    c5.push(format!(
                        "X{i} boundary class `{}` geometrizes to X{}",
                        g.class, g.target
                    ));
                }
                if level == Level::FivePlus {
                    match g.member {
                        Some(m) if m < i => {}
                        Some(m) => c5.push(format!(
                            "X{i} boundary class `{}` lies in X{m}, not below X{i}",
                            g.class
                        )),
                        None => c5.push(format!(
                            "X{i} boundary class `{}` lies in no stratum",
                            g.class
                        )),
                    }
                }
            }
        }
        conditions.push(result(level.label(), c5));
        conditions.push(note(
            "6",
            Outcome::NotCheckable,
            "local triviality of the incidence bundles",
        ));

        let mut c7 = Vec::new();
        for s in &self.strata {
            let Some(fin) = &s.finite else { continue };
            for k in 1..fin.cardinality {
                match fin.subsets.iter().find(|h| h.size == k) {
                    Some(h) if h.home < s.index => {}
                    Some(h) => c7.push(format!(
                        "{k}-point subsets of X{} live in X{}, not below",
                        s.index, h.home
                    )),
                    None => c7.push(format!("{k}-point subsets of X{} have no home", s.index)),
                }
            }
        }
        conditions.push(result("7", c7));
        Ok(ValidationReport { level, conditions })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeomRow {
    pub source: usize,
    pub class: String,
    pub target: usize,
}

impl GeomRow {
    pub fn new(source: usize, class: &str, target: usize) -> Self {
        GeomRow {
            source,
            class: class.into(),
            target,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub rows: usize,
    pub violations: Vec<String>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Each row must point strictly downward, at a stratum that exists, and a
/// class may not be sent to two different strata.
pub fn geom_table_check(m: &StratificationModel, table: &[GeomRow]) -> TableReport {
    let mut violations = Vec::new();
    let mut seen: BTreeMap<(usize, &str), usize> = BTreeMap::new();
    for (k, row) in table.iter().enumerate() {
        let at = format!("row {}", k + 1);
        if m.stratum(row.source).is_none() || m.stratum(row.target).is_none() {
            violations.push(format!("{at}: unknown stratum"));
            continue;
        }
        if row.target >= row.source {
            violations.push(format!(
                "{at}: `{}` in the boundary of X{} geometrizes to X{}",
                row.class, row.source, row.target
            ));
        }
        match seen.insert((row.source, &row.class), row.target) {
            Some(t) if t != row.target => {
                violations.push(format!("{at}: `{}` already sent to X{t}", row.class))
            }
            _ => {}
        }
    }
    TableReport {
        rows: table.len(),
        violations,
    }
}

/// Singular plane cubics over M = CP^2; three collinear points sit in the
/// boundary of the triangle stratum but in no stratum of their own.
pub fn singular_cubics_model() -> StratificationModel {
    StratificationModel::new(vec![
        Stratum::new(1, "point", 7)
            .inside(&[2, 3, 4, 5])
            .finite(1, &[]),
        Stratum::new(2, "two points", 4)
            .inside(&[3, 4, 5])
            .boundary("collided pair", 1, Some(1))
            .finite(2, &[1]),
        Stratum::new(3, "line", 3).inside(&[5]),
        Stratum::new(4, "three points off a line", 1)
            .inside(&[5])
            .boundary("collided pair", 2, Some(2))
            .boundary("collided triple", 1, Some(1))
            .boundary("three points on a line", 3, None)
            .finite(3, &[1, 2]),
        Stratum::new(5, "whole plane", 0),
    ])
    .expect("well formed")
}

/// The same with collinear triples inserted as their own stratum.
pub fn singular_cubics_refined() -> StratificationModel {
    StratificationModel::new(vec![
        Stratum::new(1, "point", 7)
            .inside(&[2, 3, 4, 5, 6])
            .finite(1, &[]),
        Stratum::new(2, "two points", 4)
            .inside(&[3, 4, 5, 6])
            .boundary("collided pair", 1, Some(1))
            .finite(2, &[1]),
        Stratum::new(3, "three points on a line", 3)
            .inside(&[4, 6])
            .boundary("collided pair", 2, Some(2))
            .boundary("collided triple", 1, Some(1))
            .finite(3, &[1, 2]),
        Stratum::new(4, "line", 3).inside(&[6]),
        Stratum::new(5, "three points off a line", 1)
            .inside(&[6])
            .boundary("collided pair", 2, Some(2))
            .boundary("collided triple", 1, Some(1))
            .boundary("three points on a line", 4, Some(3))
            .finite(3, &[1, 2]),
        Stratum::new(6, "whole plane", 0),
    ])
    .expect("well formed")
}

/// Nodal plane cubics over the flag variety of (point, line).
pub fn cubic_flag_model() -> StratificationModel {
    StratificationModel::new(vec![
        Stratum::new(1, "flag", 5)
            .inside(&[2, 3, 4, 5, 6])
            .finite(1, &[]),
        Stratum::new(2, "pencil at a point", 4).inside(&[4, 6]),
        Stratum::new(3, "points of a line", 3).inside(&[4, 5, 6]),
        Stratum::new(4, "pencil plus line", 2).inside(&[5, 6]),
        Stratum::new(5, "all flags over a line", 1).inside(&[6]),
        Stratum::new(6, "whole flag variety", 0),
    ])
    .expect("well formed")
}

pub const QUARTIC_D: [u32; 11] = [10, 9, 6, 5, 5, 4, 3, 1, 1, 1, 0];

/// Nodal plane quartics over the flag variety.
pub fn quartic_model() -> StratificationModel {
    let d = QUARTIC_D;
    StratificationModel::new(vec![
        Stratum::new(1, "flag", d[0])
            .inside(&[2, 3, 4, 5, 6, 7, 8, 9, 10, 11])
            .finite(1, &[]),
        Stratum::new(2, "pencil at a point", d[1]).inside(&[4, 6, 7, 8, 11]),
        Stratum::new(3, "points of a line", d[2]).inside(&[4, 6, 7, 8, 11]),
        Stratum::new(4, "pencil plus line", d[3]).inside(&[6, 8, 11]),
        Stratum::new(5, "two flags", d[4])
            .inside(&[6, 7, 8, 10, 11])
            .boundary("common point", 2, None)
            .boundary("common line", 3, None)
            .boundary("second point on first line", 4, None)
            .finite(2, &[1]),
        Stratum::new(6, "two pencils plus their line", d[5]).inside(&[11]),
        Stratum::new(7, "all flags over a line", d[6]).inside(&[11]),
        Stratum::new(8, "two lines plus pencil at their meet", d[7]).inside(&[11]),
        Stratum::new(9, "tangent flags of a conic", d[8])
            .inside(&[11])
            .boundary("two line families", 8, None),
        Stratum::new(10, "three flags", d[9])
            .inside(&[11])
            .boundary("common point", 2, None)
            .boundary("common line", 3, None)
            .boundary("second point on first line", 4, None)
            .boundary("three points on a common line", 3, None)
            .boundary("two points on one line, third off it", 8, None)
            .boundary("three lines through one point", 2, None)
            .boundary(
                "two lines at a point, third flag on the other line",
                4,
                None,
            )
            .boundary("collinear points on concurrent lines", 7, None)
            .boundary("concurrent lines, two points off the first", 8, None)
            .finite(3, &[1, 5]),
        Stratum::new(11, "whole flag variety", d[10]),
    ])
    .expect("well formed")
}

/// Printed geometrization rows for the quartic model.
pub fn quartic_geom_table() -> Vec<GeomRow> {
    vec![
        GeomRow::new(5, "common point", 2),
        GeomRow::new(5, "common line", 3),
        GeomRow::new(5, "second point on first line", 4),
        GeomRow::new(9, "two line families", 8),
        GeomRow::new(10, "three points on a common line", 3),
        GeomRow::new(10, "two points on one line, third off it", 8),
        GeomRow::new(10, "three lines through one point", 2),
        GeomRow::new(10, "two lines at a point, third flag on the other line", 4),
        GeomRow::new(10, "collinear points on concurrent lines", 7),
        GeomRow::new(10, "concurrent lines, two points off the first", 8),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toy_model_fails_only_five_plus() {
        let m = singular_cubics_model();
        assert!(m.validate(Level::FiveMinus).unwrap().passed());
        assert!(m.validate(Level::Five).unwrap().passed());
        let r = m.validate(Level::FivePlus).unwrap();
        assert!(!r.passed());
        assert_eq!(
            r.failures(),
            vec!["5+: X4 boundary class `three points on a line` lies in no stratum"]
        );
    }

    #[test]
    fn refined_model_passes_five_plus() {
        assert!(singular_cubics_refined()
            .validate(Level::FivePlus)
            .unwrap()
            .passed());
    }

    #[test]
    fn single_stratum() {
        let m = StratificationModel::new(vec![Stratum::new(1, "everything", 0)]).unwrap();
        for level in [Level::FiveMinus, Level::Five, Level::FivePlus] {
            assert!(m.validate(level).unwrap().passed());
        }
    }

    #[test]
    fn quartic_model_and_table() {
        let m = quartic_model();
        assert_eq!(m.d_values(), QUARTIC_D.to_vec());
        assert!(m.validate(Level::Five).unwrap().passed());
        let t = geom_table_check(&m, &quartic_geom_table());
        assert_eq!(t.rows, 10);
        assert!(t.passed(), "{:?}", t.violations);
        assert!(geom_table_check(&m, &[]).passed());
        let bad = geom_table_check(&m, &[GeomRow::new(5, "common point", 7)]);
        assert_eq!(bad.violations.len(), 1);
    }

    #[test]
    fn upward_containment_and_subsets() {
        let m = StratificationModel::new(vec![
            Stratum::new(1, "a", 1).finite(2, &[2]),
            Stratum::new(2, "b", 0).inside(&[1]),
        ])
        .unwrap();
        let r = m.validate(Level::Five).unwrap();
        assert_eq!(r.failures().len(), 2);
    }

    #[test]
    fn malformed_models() {
        assert_eq!(
            StratificationModel::new(vec![Stratum::new(2, "x", 0)]),
            Err(StrataError::BadIndex { pos: 1, index: 2 })
        );
        assert!(matches!(
            StratificationModel::new(vec![Stratum::new(1, "x", 0).inside(&[4])]),
            Err(StrataError::DanglingRef { .. })
        ));
        assert_eq!(StratificationModel::new(vec![]), Err(StrataError::Empty));
    }

    #[test]
    fn json_round_trip() {
        let m = quartic_model();
        let s = serde_json::to_string(&m).unwrap();
        let back: StratificationModel = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
