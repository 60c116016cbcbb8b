//! Case studies as data, and the pipeline that checks one end to end:
//! strata, E^1 assembly, inference, convergence, duality.

mod builtin;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bmspace::{self, AxiomTable, ColumnSpec, Script};
use crate::cohring;
use crate::hodgepoly::{self, MHPolynomial};
use crate::specseq::{
    self, Constraint, DifferentialFact, FactKey, ForcedStatus, Page, Status, DEFAULT_SEARCH_BOUND,
};
use crate::strata::{Level, StratificationModel};
use crate::twisted::TwistedDims;

pub use builtin::{
    builtin, cubic_e1, cubic_facts, cubic_grid, cubic_p2, cubic_p3, quartic_e1, quartic_facts,
    quartic_grid, quartic_p2, BUILTIN_NAMES,
};

#[derive(Debug, thiserror::Error)]
pub enum CaseError {
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("invalid case: {0}")]
    Invalid(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseStatus {
    Complete,
    IncompleteReference,
}

/// Where an inference instance takes its page from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PageSource {
    /// Columns `lo..=hi` of the stored E^1 table, with the stored facts.
    Columns(i64, i64),
    /// A separate spectral sequence; only its unknowns are in play.
    Explicit(Page),
}

/// Preconditions computed elsewhere in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gate {
    /// `c1(xi'/eta') = k(a1 + a2)` with `k != 0`.
    XiEtaQuotientNonzero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InferenceInstance {
    pub name: String,
    pub page: PageSource,
    pub unknowns: Vec<FactKey>,
    #[serde(default)]
    pub constraint: Vec<Constraint>,
    /// Add the vanishing constraint derived from `vanishing_bound`.
    #[serde(default)]
    pub vanishing: bool,
    /// Add the totals obtained by undualizing the expected polynomial.
    #[serde(default)]
    pub reference_totals: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gate: Option<Gate>,
    /// Survivors, coned and bundled, must give this column.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feeds_column: Option<u32>,
    #[serde(default)]
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossCheck {
    pub name: String,
    pub script: Script,
    pub expect: TwistedDims,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseStudy {
    pub name: String,
    pub ambient_dim: i64,
    /// No cohomology of the complement in this degree or above.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vanishing_bound: Option<i64>,
    pub strata: StratificationModel,
    #[serde(default)]
    pub columns: Vec<ColumnSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cross_checks: Vec<CrossCheck>,
    pub e1: Page,
    #[serde(default)]
    pub differentials: Vec<DifferentialFact>,
    #[serde(default)]
    pub inference: Vec<InferenceInstance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<MHPolynomial>,
    pub status: CaseStatus,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CaseStudy {
    pub fn validate(&self) -> Result<(), CaseError> {
        let bad = |m: String| Err(CaseError::Invalid(m));
        if self.ambient_dim < 1 {
            return bad(format!(
                "ambient_dim must be positive, got {}",
                self.ambient_dim
            ));
        }
        self.strata
            .check()
            .map_err(|e| CaseError::Invalid(format!("strata: {e}")))?;
        let n = self.strata.len() as u32;
        let mut seen = BTreeSet::new();
        for c in &self.columns {
            if c.p == 0 || c.p > n {
                return bad(format!("column {} outside strata range 1..={n}", c.p));
            }
            if !seen.insert(c.p) {
                return bad(format!("column {} given twice", c.p));
            }
        }
        if let Some((lo, hi)) = self.e1.p_bounds() {
            if lo < 1 || hi > n as i64 {
                return bad(format!(
                    "e1 columns {lo}..{hi} outside strata range 1..={n}"
                ));
            }
        }
        match (self.status, &self.expected) {
            (CaseStatus::Complete, None) => return bad("complete case without `expected`".into()),
            (CaseStatus::IncompleteReference, Some(_)) => {
                return bad("incomplete-reference case with an `expected` polynomial".into())
            }
            _ => {}
        }
        for inst in &self.inference {
            if inst.vanishing && self.vanishing_bound.is_none() {
                return bad(format!("instance `{}` needs vanishing_bound", inst.name));
            }
            if let PageSource::Columns(lo, hi) = inst.page {
                if lo > hi {
                    return bad(format!("instance `{}` has empty column range", inst.name));
                }
            }
            if let Some(p) = inst.feeds_column {
                if !seen.contains(&p) {
                    return bad(format!("instance `{}` feeds missing column {p}", inst.name));
                }
            }
        }
        Ok(())
    }

    /// Forbidden Borel-Moore degrees of the cone base, from the vanishing bound.
    pub fn vanishing_constraint(&self) -> Option<Constraint> {
        let b = self.vanishing_bound?;
        let top = 2 * self.ambient_dim - 2 - b;
        Some(Constraint::ForbiddenTotalDegrees {
            degrees: (1..=top).collect(),
            p_range: None,
        })
    }
}

fn pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } | Segment::Enum { variant: key } => {
                out.push('/');
                out.push_str(&key.replace('~', "~0").replace('/', "~1"));
            }
            Segment::Unknown => out.push_str("/?"),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

pub fn parse_case(json: &str) -> Result<CaseStudy, CaseError> {
    let de = &mut serde_json::Deserializer::from_str(json);
    let case: CaseStudy = serde_path_to_error::deserialize(de).map_err(|e| CaseError::Schema {
        pointer: pointer(e.path()),
        message: e.inner().to_string(),
    })?;
    case.validate()?;
    Ok(case)
}

/// A built-in name, or a path to a JSON file.
pub fn load_case(name_or_path: &str) -> Result<CaseStudy, CaseError> {
    if let Some(c) = builtin(name_or_path) {
        return Ok(c);
    }
    let text =
        std::fs::read_to_string(Path::new(name_or_path)).map_err(|source| CaseError::Io {
            path: name_or_path.into(),
            source,
        })?;
    parse_case(&text)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub search_bound: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            search_bound: DEFAULT_SEARCH_BOUND,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StageStatus {
    Pass,
    Fail,
    Incomplete,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    pub stage: String,
    pub title: String,
    pub status: StageStatus,
    pub lines: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Match,
    Mismatch,
    Incomplete,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub name: String,
    pub ambient_dim: i64,
    pub stages: Vec<StageReport>,
    pub audit: Vec<String>,
    pub notes: Vec<String>,
    /// Facts confirmed by some inference instance, main sequence only.
    pub inferred_facts: Vec<DifferentialFact>,
    pub survivors: Vec<String>,
    pub polynomial: Option<String>,
    pub verdict: Verdict,
}

impl CaseReport {
    pub fn stage(&self, id: &str) -> Option<&StageReport> {
        self.stages.iter().find(|s| s.stage == id)
    }

    pub fn all_stages_pass(&self) -> bool {
        self.stages.iter().all(|s| s.status == StageStatus::Pass)
    }
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "case {} (D = {})", self.name, self.ambient_dim)?;
        for s in &self.stages {
            let word = match s.status {
                StageStatus::Pass => "pass",
                StageStatus::Fail => "FAIL",
                StageStatus::Incomplete => "incomplete",
            };
            writeln!(f, "[{}] {}: {word}", s.stage, s.title)?;
            for l in &s.lines {
                writeln!(f, "    {l}")?;
            }
        }
        if !self.audit.is_empty() {
            writeln!(f, "audit:")?;
            for a in &self.audit {
                writeln!(f, "    {a}")?;
            }
        }
        if !self.notes.is_empty() {
            writeln!(f, "notes:")?;
            for n in &self.notes {
                writeln!(f, "    {n}")?;
            }
        }
        if let Some(p) = &self.polynomial {
            writeln!(f, "P_mH = {p}")?;
        }
        f.write_str(match self.verdict {
            Verdict::Match => "MATCH",
            Verdict::Mismatch => "MISMATCH",
            Verdict::Incomplete => "incomplete reference",
            Verdict::Failed => "FAILED",
        })
    }
}

fn stage(id: &str, title: &str, ok: bool, lines: Vec<String>) -> StageReport {
    StageReport {
        stage: id.into(),
        title: title.into(),
        status: if ok {
            StageStatus::Pass
        } else {
            StageStatus::Fail
        },
        lines,
    }
}

fn page_diff(want: &Page, got: &Page) -> Vec<String> {
    let idx = |pg: &Page| -> BTreeMap<(i64, i64, i64), u64> {
        pg.entries()
            .iter()
            .map(|e| ((e.p, e.q, e.twist), e.dim))
            .collect()
    };
    let (w, g) = (idx(want), idx(got));
    let keys: BTreeSet<_> = w.keys().chain(g.keys()).copied().collect();
    keys.into_iter()
        .filter_map(|k| {
            let (a, b) = (
                w.get(&k).copied().unwrap_or(0),
                g.get(&k).copied().unwrap_or(0),
            );
            (a != b).then(|| format!("({},{}) Q({}): stored {a}, assembled {b}", k.0, k.1, k.2))
        })
        .collect()
}

fn check_gate(gate: Gate) -> Result<(bool, String), String> {
    match gate {
        Gate::XiEtaQuotientNonzero => {
            let xe = cohring::chern_xi_eta().map_err(|e| e.to_string())?;
            let c1 = &xe.c1_quotient;
            let coords = c1.coords(2);
            let ok = c1.is_homogeneous_of(2)
                && coords.len() == 2
                && coords[0] == coords[1]
                && !coords[0].is_zero();
            Ok((ok, format!("c1(xi'/eta') = {c1}")))
        }
    }
}

struct Assembled {
    columns: BTreeMap<u32, TwistedDims>,
}

pub fn run_case(case: &CaseStudy, opts: &RunOptions) -> CaseReport {
    let axioms = AxiomTable::standard();
    let mut audit = Vec::new();
    let mut stages = Vec::new();
    let d_dim = case.ambient_dim;

    // (a) strata
    let mut lines = Vec::new();
    let mut ok = true;
    match case.strata.validate(Level::Five) {
        Ok(rep) => {
            ok &= rep.passed();
            lines.extend(rep.to_string().lines().map(String::from));
        }
        Err(e) => {
            ok = false;
            lines.push(e.to_string());
        }
    }
    for c in &case.columns {
        if let Some(s) = case.strata.stratum(c.p as usize) {
            if s.d != c.d {
                ok = false;
                lines.push(format!(
                    "column {} has d = {}, stratum X{} has d = {}",
                    c.p, c.d, c.p, s.d
                ));
            }
        }
    }
    stages.push(stage("a", "strata", ok, lines));

    // (b) E^1 assembly
    let mut lines = Vec::new();
    let mut ok = true;
    let mut assembled = Assembled {
        columns: BTreeMap::new(),
    };
    for c in &case.columns {
        match c.eval(&axioms) {
            Ok(res) => {
                for a in &res.audit {
                    audit.push(format!(
                        "column {} step {}: {} => {}",
                        c.p, a.step, a.citation, a.value
                    ));
                }
                assembled.columns.insert(c.p, res.dims);
            }
            Err(e) => {
                ok = false;
                lines.push(format!("column {}: {e}", c.p));
            }
        }
    }
    let page = Page::from_columns(assembled.columns.iter().map(|(p, d)| (*p as i64, d)));
    let diff = page_diff(&case.e1, &page);
    if diff.is_empty() {
        lines.push(format!(
            "{} columns assembled, {} entries, equal to the stored table",
            assembled.columns.len(),
            page.entries().len()
        ));
    } else {
        ok = false;
        lines.extend(diff);
    }
    for x in &case.cross_checks {
        match bmspace::run_script(&x.script, &axioms) {
            Ok(r) => {
                for a in &r.audit {
                    audit.push(format!(
                        "{} step {}: {} => {}",
                        x.name, a.step, a.citation, a.value
                    ));
                }
                if r.dims == x.expect {
                    lines.push(format!("{}: {} as expected", x.name, r.dims));
                } else {
                    ok = false;
                    lines.push(format!("{}: got {}, expected {}", x.name, r.dims, x.expect));
                }
            }
            Err(e) => {
                ok = false;
                lines.push(format!("{}: {e}", x.name));
            }
        }
    }
    stages.push(stage("b", "E1 assembly", ok, lines));

    // (c) inference
    let (ok, lines, inferred) = run_inference(case, &assembled, opts, &mut audit);
    stages.push(stage("c", "inference", ok, lines));

    // (d) convergence
    let mut lines = Vec::new();
    let mut ok = true;
    let mut survivors = Vec::new();
    let mut einf = None;
    match specseq::run(&case.e1, &case.differentials) {
        Ok(res) => {
            for k in &res.unused_nonzero {
                ok = false;
                lines.push(format!("{k} is declared nonzero but never acts"));
            }
            if case.e1.euler_by_twist() != res.einf.euler_by_twist() {
                ok = false;
                lines.push("Euler characteristic per twist not conserved".into());
            } else {
                lines.push("Euler characteristic per twist conserved".into());
            }
            survivors = res.einf.survivor_list();
            lines.push(format!("survivors: {}", survivors.join(" ")));
            einf = Some(res.einf);
        }
        Err(e) => {
            ok = false;
            lines.push(e.to_string());
        }
    }
    stages.push(stage("d", "convergence", ok, lines));

    // (e) duality
    let mut lines = Vec::new();
    let mut polynomial = None;
    let status = match einf
        .as_ref()
        .map(|p| hodgepoly::dualize(&p.totals(), d_dim))
    {
        None => {
            lines.push("no stable page".into());
            StageStatus::Fail
        }
        Some(Err(e)) => {
            lines.push(e.to_string());
            StageStatus::Fail
        }
        Some(Ok(poly)) => {
            polynomial = Some(poly.to_string());
            match &case.expected {
                None => {
                    lines.push("no reference polynomial".into());
                    StageStatus::Incomplete
                }
                Some(want) if *want == poly => {
                    lines.push(format!("{} monomials, equal to the reference", poly.len()));
                    StageStatus::Pass
                }
                Some(want) => {
                    lines.push(format!("expected {want}"));
                    lines.push(format!("difference {}", want.sub(&poly)));
                    StageStatus::Fail
                }
            }
        }
    };
    stages.push(StageReport {
        stage: "e".into(),
        title: "duality".into(),
        status,
        lines,
    });

    let failed = |id: &str| {
        stages
            .iter()
            .any(|s| s.stage == id && s.status == StageStatus::Fail)
    };
    // a wrong reference also breaks the reference-consistency instance in c
    let earlier_fail =
        failed("a") || failed("b") || failed("d") || (failed("c") && status != StageStatus::Fail);
    let verdict = if earlier_fail {
        Verdict::Failed
    } else {
        match status {
            StageStatus::Pass => Verdict::Match,
            StageStatus::Incomplete => Verdict::Incomplete,
            StageStatus::Fail => Verdict::Mismatch,
        }
    };
    CaseReport {
        name: case.name.clone(),
        ambient_dim: d_dim,
        stages,
        audit,
        notes: case.notes.clone(),
        inferred_facts: inferred,
        survivors,
        polynomial,
        verdict,
    }
}

fn run_inference(
    case: &CaseStudy,
    assembled: &Assembled,
    opts: &RunOptions,
    audit: &mut Vec<String>,
) -> (bool, Vec<String>, Vec<DifferentialFact>) {
    let mut ok = true;
    let mut lines = Vec::new();
    let stored: BTreeMap<FactKey, Status> = case
        .differentials
        .iter()
        .map(|f| (f.key(), f.status))
        .collect();
    let mut confirmed: BTreeMap<FactKey, Status> = BTreeMap::new();
    if case.inference.is_empty() {
        lines.push("nothing to infer".into());
    }

    for inst in &case.inference {
        let tag = &inst.name;
        if let Some(g) = inst.gate {
            match check_gate(g) {
                Ok((true, msg)) => audit.push(format!("{tag}: gate holds, {msg}")),
                Ok((false, msg)) => {
                    ok = false;
                    lines.push(format!("{tag}: gate fails, {msg}; instance skipped"));
                    continue;
                }
                Err(e) => {
                    ok = false;
                    lines.push(format!("{tag}: gate error: {e}"));
                    continue;
                }
            }
        }
        if !inst.citation.is_empty() {
            audit.push(format!("{tag}: {}", inst.citation));
        }

        let (page, main, range) = match &inst.page {
            PageSource::Columns(lo, hi) => (case.e1.restrict(*lo, *hi), true, Some((*lo, *hi))),
            PageSource::Explicit(p) => (p.clone(), false, p.p_bounds()),
        };
        let mut facts: BTreeMap<FactKey, Status> = if main {
            stored.clone()
        } else {
            BTreeMap::new()
        };
        for k in &inst.unknowns {
            facts.insert(*k, Status::Unknown);
        }
        let facts: Vec<DifferentialFact> = facts
            .into_iter()
            .map(|(k, s)| DifferentialFact::new(k.r, k.p, k.q, s))
            .collect();

        let mut constraints = inst.constraint.clone();
        if inst.vanishing {
            constraints.extend(case.vanishing_constraint());
        }
        if inst.reference_totals {
            let Some(expected) = &case.expected else {
                lines.push(format!("{tag}: no reference polynomial, instance skipped"));
                continue;
            };
            match (hodgepoly::undualize(expected, case.ambient_dim), range) {
                (Ok(totals), Some(p_range)) => {
                    constraints.push(Constraint::PrescribedTotals { p_range, totals })
                }
                (Err(e), _) => {
                    ok = false;
                    lines.push(format!("{tag}: {e}"));
                    continue;
                }
                (_, None) => {
                    ok = false;
                    lines.push(format!("{tag}: empty page"));
                    continue;
                }
            }
        }

        let rep = match specseq::infer(&page, &facts, &constraints, opts.search_bound) {
            Ok(r) => r,
            Err(e) => {
                ok = false;
                lines.push(format!("{tag}: {e}"));
                continue;
            }
        };
        for l in rep.summary_lines() {
            lines.push(format!("{tag}: {l}"));
        }
        for k in &inst.unknowns {
            let forced = rep.forced.iter().find(|(f, _)| f == k).map(|(_, s)| *s);
            match forced.and_then(ForcedStatus::as_status) {
                None => {
                    ok = false;
                    lines.push(format!("{tag}: {k} not determined"));
                }
                Some(st) if main => match stored.get(k) {
                    Some(s) if *s == st => {
                        confirmed.insert(*k, st);
                    }
                    Some(s) => {
                        ok = false;
                        lines.push(format!("{tag}: {k} forced {st}, stored {s}"));
                    }
                    None => {
                        ok = false;
                        lines.push(format!("{tag}: {k} forced {st}, missing from stored facts"));
                    }
                },
                Some(_) => {}
            }
        }
        if let Some(p) = inst.feeds_column {
            let col = case.columns.iter().find(|c| c.p == p);
            match (&rep.survivors, col, assembled.columns.get(&p)) {
                (Some(surv), Some(c), Some(have)) => {
                    let base = surv.totals();
                    let built = bmspace::vector_bundle(c.d, &bmspace::open_cone(&base));
                    if &built == have {
                        lines.push(format!("{tag}: survivors {base} give column {p}"));
                    } else {
                        ok = false;
                        lines.push(format!(
                            "{tag}: survivors {base} give {built}, column {p} is {have}"
                        ));
                    }
                }
                _ => {
                    ok = false;
                    lines.push(format!("{tag}: cannot compare with column {p}"));
                }
            }
        }
    }

    let undeclared: Vec<String> = stored
        .keys()
        .filter(|k| !confirmed.contains_key(k))
        .map(|k| k.to_string())
        .collect();
    lines.push(format!(
        "stored facts confirmed by inference: {} of {}",
        confirmed.len(),
        stored.len()
    ));
    if !undeclared.is_empty() {
        lines.push(format!(
            "declared without inference: {}",
            undeclared.join(" ")
        ));
    }
    let inferred = confirmed
        .into_iter()
        .map(|(k, s)| DifferentialFact::new(k.r, k.p, k.q, s))
        .collect();
    (ok, lines, inferred)
}

pub fn case_to_json(case: &CaseStudy) -> String {
    serde_json::to_string_pretty(case).expect("case serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate_and_round_trip() {
        for name in BUILTIN_NAMES {
            let c = builtin(name).unwrap();
            c.validate().unwrap();
            let back = parse_case(&case_to_json(&c)).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn quartic_shape() {
        let c = load_case("quartic-p2").unwrap();
        assert_eq!(c.strata.len(), 11);
        assert_eq!(c.strata.d_values(), vec![10, 9, 6, 5, 5, 4, 3, 1, 1, 1, 0]);
        assert_eq!(
            load_case("cubic-p3").unwrap().status,
            CaseStatus::IncompleteReference
        );
    }

    #[test]
    fn schema_errors_carry_pointers() {
        let mut v: serde_json::Value = serde_json::from_str(&case_to_json(&quartic_p2())).unwrap();
        v["columns"][2]["d"] = serde_json::json!("six");
        match parse_case(&v.to_string()) {
            Err(CaseError::Schema { pointer, .. }) => assert_eq!(pointer, "/columns/2/d"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_case("{"), Err(CaseError::Schema { .. })));
        assert!(matches!(
            load_case("/nonexistent/case.json"),
            Err(CaseError::Io { .. })
        ));
    }

    #[test]
    fn semantic_validation() {
        let mut c = cubic_p2();
        c.columns[0].p = 40;
        assert!(matches!(c.validate(), Err(CaseError::Invalid(_))));
        let mut c = cubic_p2();
        c.expected = None;
        assert!(matches!(c.validate(), Err(CaseError::Invalid(_))));
    }

    #[test]
    fn quartic_runs_clean() {
        let r = run_case(&quartic_p2(), &RunOptions::default());
        assert!(r.all_stages_pass(), "{r}");
        assert_eq!(r.verdict, Verdict::Match);
        assert_eq!(r.inferred_facts.len(), 8);
        assert_eq!(r.polynomial.as_deref(), Some(hodgepoly::QUARTIC_P2));
    }

    #[test]
    fn cubic_runs_clean() {
        let r = run_case(&cubic_p2(), &RunOptions::default());
        assert!(r.all_stages_pass(), "{r}");
        assert_eq!(r.polynomial.as_deref(), Some(hodgepoly::CUBIC_P2));
    }

    #[test]
    fn cubic_p3_is_incomplete() {
        let r = run_case(&cubic_p3(), &RunOptions::default());
        assert_eq!(r.verdict, Verdict::Incomplete);
        assert!(r.to_string().ends_with("incomplete reference"));
    }

    #[test]
    fn corrupted_table_fails_stage_b() {
        let mut c = quartic_p2();
        c.e1.add(4, 4, 2, 1);
        let r = run_case(&c, &RunOptions::default());
        assert_eq!(r.stage("b").unwrap().status, StageStatus::Fail);
        assert_eq!(r.verdict, Verdict::Failed);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_case(&quartic_p2(), &RunOptions::default());
        let b = run_case(&quartic_p2(), &RunOptions::default());
        assert_eq!(a.to_string(), b.to_string());
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
