//! Homological spectral sequences of twisted dimension data.
//!
//! `d^r` runs `(p, q) -> (p - r, q + r - 1)`. A nonzero differential
//! cancels, twist by twist, as much as it can; zero cancels nothing.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::twisted::TwistedDims;

pub const DEFAULT_SEARCH_BOUND: u64 = 1 << 20;

#[derive(Debug, thiserror::Error)]
pub enum SpecSeqError {
    #[error("differential {fact} is {status} but can act (endpoints share a twist)")]
    Unresolved { fact: FactKey, status: &'static str },
    #[error("search exceeded the bound of {bound} assignments")]
    SearchBound { bound: u64 },
    #[error("no assignment satisfies constraint #{index} ({constraint}) together with the ones before it; {explored} assignments explored")]
    Unsatisfiable {
        index: usize,
        constraint: String,
        explored: u64,
    },
    #[error("bad p-range [{lo}, {hi}]")]
    BadRange { lo: i64, hi: i64 },
}

/// Bigraded page: `(p, q) -> twist -> dim`, all dims positive.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Page {
    cells: BTreeMap<(i64, i64), BTreeMap<i64, u64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PageEntry {
    pub p: i64,
    pub q: i64,
    pub twist: i64,
    pub dim: u64,
}

impl Page {
    pub fn new() -> Self {
        Self::default()
    }

    /// From `(p, q, twist, dim)`; repeated keys add up.
    pub fn from_entries(entries: &[(i64, i64, i64, u64)]) -> Self {
        let mut page = Page::new();
        for &(p, q, m, d) in entries {
            page.add(p, q, m, d);
        }
        page
    }

    /// Places each column's Borel-Moore data at `q = degree - p`.
    pub fn from_columns<'a>(cols: impl IntoIterator<Item = (i64, &'a TwistedDims)>) -> Self {
        let mut page = Page::new();
        for (p, dims) in cols {
            for (i, m, d) in dims.iter() {
                page.add(p, i - p, m, d);
            }
        }
        page
    }

    pub fn add(&mut self, p: i64, q: i64, twist: i64, dim: u64) {
        if dim == 0 {
            return;
        }
        *self
            .cells
            .entry((p, q))
            .or_default()
            .entry(twist)
            .or_insert(0) += dim;
    }

    fn take(&mut self, p: i64, q: i64, twist: i64, dim: u64) {
        if dim == 0 {
            return;
        }
        let cell = self.cells.get_mut(&(p, q)).expect("cell present");
        let slot = cell.get_mut(&twist).expect("twist present");
        assert!(*slot >= dim, "cancelling more than present");
        *slot -= dim;
        if *slot == 0 {
            cell.remove(&twist);
        }
        if cell.is_empty() {
            self.cells.remove(&(p, q));
        }
    }

    pub fn cell(&self, p: i64, q: i64) -> BTreeMap<i64, u64> {
        self.cells.get(&(p, q)).cloned().unwrap_or_default()
    }

    pub fn dim(&self, p: i64, q: i64, twist: i64) -> u64 {
        self.cells
            .get(&(p, q))
            .and_then(|c| c.get(&twist))
            .copied()
            .unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn positions(&self) -> Vec<(i64, i64)> {
        self.cells.keys().copied().collect()
    }

    pub fn entries(&self) -> Vec<PageEntry> {
        self.cells
            .iter()
            .flat_map(|(&(p, q), c)| {
                c.iter()
                    .map(move |(&twist, &dim)| PageEntry { p, q, twist, dim })
            })
            .collect()
    }

    /// Column p as Borel-Moore data by total degree.
    pub fn column(&self, p: i64) -> TwistedDims {
        let mut t = TwistedDims::new();
        for e in self.entries().into_iter().filter(|e| e.p == p) {
            t.add(e.p + e.q, e.twist, e.dim);
        }
        t
    }

    pub fn p_bounds(&self) -> Option<(i64, i64)> {
        let lo = self.cells.keys().map(|k| k.0).min()?;
        let hi = self.cells.keys().map(|k| k.0).max()?;
        Some((lo, hi))
    }

    pub fn restrict(&self, lo: i64, hi: i64) -> Page {
        Page {
            cells: self
                .cells
                .iter()
                .filter(|(k, _)| (lo..=hi).contains(&k.0))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Sum over p at fixed total degree and twist.
    pub fn totals(&self) -> TwistedDims {
        let mut t = TwistedDims::new();
        for e in self.entries() {
            t.add(e.p + e.q, e.twist, e.dim);
        }
        t
    }

    pub fn euler_by_twist(&self) -> BTreeMap<i64, i64> {
        self.totals().euler_by_twist()
    }

    /// One line per entry, e.g. `(1,23):Q(12)^2`.
    pub fn survivor_list(&self) -> Vec<String> {
        self.entries()
            .into_iter()
            .map(|e| {
                let pow = if e.dim > 1 {
                    format!("^{}", e.dim)
                } else {
                    String::new()
                };
                format!("({},{}):Q({}){}", e.p, e.q, e.twist, pow)
            })
            .collect()
    }
}

impl Serialize for Page {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.entries().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Page {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let entries = Vec::<PageEntry>::deserialize(d)?;
        let mut page = Page::new();
        for e in entries {
            page.add(e.p, e.q, e.twist, e.dim);
        }
        Ok(page)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FactKey {
    pub r: u32,
    pub p: i64,
    pub q: i64,
}

impl FactKey {
    pub fn new(r: u32, p: i64, q: i64) -> Self {
        FactKey { r, p, q }
    }

    pub fn target(&self) -> (i64, i64) {
        (self.p - self.r as i64, self.q + self.r as i64 - 1)
    }
}

impl fmt::Display for FactKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}({},{})", self.r, self.p, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Nonzero,
    Zero,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Nonzero => "nonzero",
            Status::Zero => "zero",
            Status::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialFact {
    pub r: u32,
    pub p: i64,
    pub q: i64,
    pub status: Status,
}

impl DifferentialFact {
    pub fn new(r: u32, p: i64, q: i64, status: Status) -> Self {
        DifferentialFact { r, p, q, status }
    }

    pub fn key(&self) -> FactKey {
        FactKey::new(self.r, self.p, self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Constraint {
    /// No survivor in these total degrees (optionally only for p in range).
    ForbiddenTotalDegrees {
        degrees: Vec<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p_range: Option<(i64, i64)>,
    },
    /// Survivors with p in range have exactly these totals.
    PrescribedTotals {
        p_range: (i64, i64),
        totals: TwistedDims,
    },
}

impl Constraint {
    fn check_range(&self) -> Result<(), SpecSeqError> {
        let range = match self {
            Constraint::ForbiddenTotalDegrees { p_range, .. } => *p_range,
            Constraint::PrescribedTotals { p_range, .. } => Some(*p_range),
        };
        match range {
            Some((lo, hi)) if lo > hi => Err(SpecSeqError::BadRange { lo, hi }),
            _ => Ok(()),
        }
    }

    pub fn holds(&self, page: &Page) -> bool {
        match self {
            Constraint::ForbiddenTotalDegrees { degrees, p_range } => {
                let view = match p_range {
                    Some((lo, hi)) => page.restrict(*lo, *hi),
                    None => page.clone(),
                };
                let totals = view.totals();
                degrees.iter().all(|&n| totals.twists_at(n).is_empty())
            }
            Constraint::PrescribedTotals { p_range, totals } => {
                page.restrict(p_range.0, p_range.1).totals() == *totals
            }
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::ForbiddenTotalDegrees { degrees, p_range } => {
                write!(f, "forbidden total degrees {degrees:?}")?;
                if let Some((lo, hi)) = p_range {
                    write!(f, " for p in [{lo},{hi}]")?;
                }
                Ok(())
            }
            Constraint::PrescribedTotals { p_range, totals } => {
                write!(
                    f,
                    "totals for p in [{},{}] equal {totals}",
                    p_range.0, p_range.1
                )
            }
        }
    }
}

/// Ranks chosen for one differential: `(twist, rank, max rank)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Action {
    pub ranks: Vec<(i64, u64, u64)>,
}

impl Action {
    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|r| r.1 == 0)
    }

    pub fn is_full(&self) -> bool {
        self.ranks.iter().all(|r| r.1 == r.2)
    }

    fn status(&self) -> ForcedStatus {
        if self.is_zero() {
            ForcedStatus::Zero
        } else if self.is_full() {
            ForcedStatus::Nonzero
        } else {
            ForcedStatus::Partial
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunResult {
    pub einf: Page,
    /// Every differential that could act, in the order applied.
    pub applied: Vec<(FactKey, Action)>,
    /// Nonzero facts that never found twist-matched endpoints.
    pub unused_nonzero: Vec<FactKey>,
    /// Same-round pairs where a cell was both hit and hitting.
    pub chains: Vec<(FactKey, FactKey)>,
}

struct Engine<'a> {
    facts: BTreeMap<FactKey, Status>,
    constraints: &'a [Constraint],
    branching: bool,
    bound: u64,
    leaves: u64,
    out: Vec<Leaf>,
}

#[derive(Clone, Debug)]
struct Leaf {
    page: Page,
    applied: Vec<(FactKey, Action)>,
    holds: Vec<bool>,
}

/// All rank vectors with `0 <= rank <= max` per twist.
fn rank_choices(maxes: &[(i64, u64)]) -> Vec<Action> {
    let mut out = vec![Action { ranks: Vec::new() }];
    for &(m, max) in maxes {
        out = out
            .into_iter()
            .flat_map(|a| {
                (0..=max).map(move |k| {
                    let mut b = a.clone();
                    b.ranks.push((m, k, max));
                    b
                })
            })
            .collect();
    }
    out
}

impl Engine<'_> {
    fn max_round(page: &Page) -> u32 {
        page.p_bounds().map_or(0, |(lo, hi)| (hi - lo) as u32)
    }

    fn explore(
        &mut self,
        page: Page,
        r: u32,
        positions: &[(i64, i64)],
        at: usize,
        applied: &mut Vec<(FactKey, Action)>,
    ) -> Result<(), SpecSeqError> {
        if at == positions.len() {
            if r >= Self::max_round(&page) {
                return self.leaf(page, applied);
            }
            let next = page.positions();
            return self.explore(page, r + 1, &next, 0, applied);
        }
        let (p, q) = positions[at];
        let key = FactKey::new(r, p, q);
        let (tp, tq) = key.target();
        let src = page.cell(p, q);
        let tgt = page.cell(tp, tq);
        let maxes: Vec<(i64, u64)> = src
            .iter()
            .filter_map(|(m, &d)| tgt.get(m).map(|&e| (*m, d.min(e))))
            .collect();
        if maxes.is_empty() {
            return self.explore(page, r, positions, at + 1, applied);
        }
        let status = self.facts.get(&key).copied();
        let choices = match status {
            Some(Status::Zero) => vec![Action {
                ranks: maxes.iter().map(|&(m, x)| (m, 0, x)).collect(),
            }],
            Some(Status::Nonzero) => vec![Action {
                ranks: maxes.iter().map(|&(m, x)| (m, x, x)).collect(),
            }],
            Some(Status::Unknown) | None if self.branching => rank_choices(&maxes),
            Some(Status::Unknown) => {
                return Err(SpecSeqError::Unresolved {
                    fact: key,
                    status: "unknown",
                })
            }
            None => {
                return Err(SpecSeqError::Unresolved {
                    fact: key,
                    status: "undeclared",
                })
            }
        };
        for action in choices {
            let mut next = page.clone();
            for &(m, k, _) in &action.ranks {
                next.take(p, q, m, k);
                next.take(tp, tq, m, k);
            }
            applied.push((key, action));
            self.explore(next, r, positions, at + 1, applied)?;
            applied.pop();
        }
        Ok(())
    }

    fn leaf(&mut self, page: Page, applied: &[(FactKey, Action)]) -> Result<(), SpecSeqError> {
        self.leaves += 1;
        if self.leaves > self.bound {
            return Err(SpecSeqError::SearchBound { bound: self.bound });
        }
        let holds = self.constraints.iter().map(|c| c.holds(&page)).collect();
        self.out.push(Leaf {
            page,
            applied: applied.to_vec(),
            holds,
        });
        Ok(())
    }
}

fn chains(applied: &[(FactKey, Action)]) -> Vec<(FactKey, FactKey)> {
    let acting: Vec<&FactKey> = applied
        .iter()
        .filter(|(_, a)| !a.is_zero())
        .map(|(k, _)| k)
        .collect();
    let mut out = Vec::new();
    for a in &acting {
        for b in &acting {
            if a.r == b.r && a.target() == (b.p, b.q) {
                out.push((**a, **b));
            }
        }
    }
    out
}

/// Runs to the stable page. Every differential that can act must be declared
/// zero or nonzero.
pub fn run(page1: &Page, facts: &[DifferentialFact]) -> Result<RunResult, SpecSeqError> {
    let mut engine = Engine {
        facts: facts.iter().map(|f| (f.key(), f.status)).collect(),
        constraints: &[],
        branching: false,
        bound: 1,
        leaves: 0,
        out: Vec::new(),
    };
    let positions = page1.positions();
    engine.explore(page1.clone(), 1, &positions, 0, &mut Vec::new())?;
    let leaf = engine.out.pop().expect("one leaf without branching");
    let unused_nonzero = facts
        .iter()
        .filter(|f| f.status == Status::Nonzero)
        .map(|f| f.key())
        .filter(|k| !leaf.applied.iter().any(|(a, act)| a == k && !act.is_zero()))
        .collect();
    Ok(RunResult {
        chains: chains(&leaf.applied),
        einf: leaf.page,
        applied: leaf.applied,
        unused_nonzero,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForcedStatus {
    Nonzero,
    Zero,
    /// Nonzero but below maximal rank in some twist.
    Partial,
}

impl ForcedStatus {
    pub fn as_status(self) -> Option<Status> {
        match self {
            ForcedStatus::Nonzero => Some(Status::Nonzero),
            ForcedStatus::Zero => Some(Status::Zero),
            ForcedStatus::Partial => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InferReport {
    /// Every differential that was searched over, explicit or implicit.
    pub unknowns: Vec<FactKey>,
    /// The subset not present in the fact list.
    pub implicit: Vec<FactKey>,
    pub explored: u64,
    pub satisfying: u64,
    pub forced: Vec<(FactKey, ForcedStatus)>,
    pub undetermined: Vec<FactKey>,
    /// The stable page when every satisfying assignment agrees on it.
    pub survivors: Option<Page>,
}

impl InferReport {
    pub fn nothing_to_infer(&self) -> bool {
        self.unknowns.is_empty()
    }

    pub fn forced_with(&self, status: ForcedStatus) -> Vec<FactKey> {
        self.forced
            .iter()
            .filter(|(_, s)| *s == status)
            .map(|(k, _)| *k)
            .collect()
    }

    /// Input facts with forced values filled in.
    pub fn resolve(&self, facts: &[DifferentialFact]) -> Vec<DifferentialFact> {
        let mut out: BTreeMap<FactKey, Status> =
            facts.iter().map(|f| (f.key(), f.status)).collect();
        for (k, s) in &self.forced {
            if let Some(st) = s.as_status() {
                out.insert(*k, st);
            }
        }
        out.into_iter()
            .map(|(k, s)| DifferentialFact::new(k.r, k.p, k.q, s))
            .collect()
    }

    pub fn summary_lines(&self) -> Vec<String> {
        if self.nothing_to_infer() {
            return vec!["nothing to infer".into()];
        }
        let join = |ks: Vec<FactKey>| {
            ks.iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut lines = Vec::new();
        for (label, st) in [
            ("forced nonzero", ForcedStatus::Nonzero),
            ("forced zero", ForcedStatus::Zero),
            ("forced partial", ForcedStatus::Partial),
        ] {
            let ks = self.forced_with(st);
            if !ks.is_empty() {
                lines.push(format!("{label}: {}", join(ks)));
            }
        }
        if !self.undetermined.is_empty() {
            lines.push(format!("undetermined: {}", join(self.undetermined.clone())));
        }
        if !self.implicit.is_empty() {
            lines.push(format!(
                "implicit unknowns: {}",
                join(self.implicit.clone())
            ));
        }
        lines.push(format!(
            "assignments: {} satisfying of {} explored",
            self.satisfying, self.explored
        ));
        lines
    }
}

/// Exhaustive search over per-twist ranks of every undecided differential.
pub fn infer(
    page1: &Page,
    facts: &[DifferentialFact],
    constraints: &[Constraint],
    bound: u64,
) -> Result<InferReport, SpecSeqError> {
    for c in constraints {
        c.check_range()?;
    }
    let declared: BTreeMap<FactKey, Status> = facts.iter().map(|f| (f.key(), f.status)).collect();
    let mut engine = Engine {
        facts: declared.clone(),
        constraints,
        branching: true,
        bound,
        leaves: 0,
        out: Vec::new(),
    };
    let positions = page1.positions();
    engine.explore(page1.clone(), 1, &positions, 0, &mut Vec::new())?;
    let explored = engine.leaves;
    let leaves = engine.out;

    let searched = |k: &FactKey| !matches!(declared.get(k), Some(Status::Zero | Status::Nonzero));
    let mut unknowns: Vec<FactKey> = leaves
        .iter()
        .flat_map(|l| l.applied.iter().map(|(k, _)| *k))
        .filter(searched)
        .collect();
    unknowns.sort();
    unknowns.dedup();
    let implicit = unknowns
        .iter()
        .filter(|k| !declared.contains_key(k))
        .copied()
        .collect();

    let good: Vec<&Leaf> = leaves
        .iter()
        .filter(|l| l.holds.iter().all(|&h| h))
        .collect();
    if good.is_empty() && !constraints.is_empty() {
        let index = (0..constraints.len())
            .find(|&i| !leaves.iter().any(|l| l.holds[..=i].iter().all(|&h| h)))
            .unwrap_or(0);
        return Err(SpecSeqError::Unsatisfiable {
            index,
            constraint: constraints[index].to_string(),
            explored,
        });
    }

    let mut forced = Vec::new();
    let mut undetermined = Vec::new();
    for k in &unknowns {
        let seen: Vec<Option<ForcedStatus>> = good
            .iter()
            .map(|l| {
                l.applied
                    .iter()
                    .find(|(a, _)| a == k)
                    .map(|(_, act)| act.status())
            })
            .collect();
        if !seen.iter().any(Option::is_some) {
            continue;
        }
        let first = seen[0];
        match first {
            Some(st) if seen.iter().all(|s| *s == first) => forced.push((*k, st)),
            _ => undetermined.push(*k),
        }
    }
    let survivors = good.first().and_then(|l0| {
        good.iter()
            .all(|l| l.page == l0.page)
            .then(|| l0.page.clone())
    });
    Ok(InferReport {
        unknowns,
        implicit,
        explored,
        satisfying: good.len() as u64,
        forced,
        undetermined,
        survivors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Status::*;

    fn grid() -> Page {
        Page::from_entries(&[
            (1, -1, 0, 1),
            (1, 1, 1, 1),
            (1, 3, 2, 1),
            (2, 1, 1, 1),
            (2, 3, 2, 1),
            (2, 5, 3, 1),
            (3, 5, 3, 1),
            (3, 7, 4, 1),
            (3, 9, 5, 1),
        ])
    }

    #[test]
    fn grid_cancels_to_three_survivors() {
        let facts = [
            DifferentialFact::new(1, 2, 1, Nonzero),
            DifferentialFact::new(1, 2, 3, Nonzero),
            DifferentialFact::new(1, 3, 5, Nonzero),
        ];
        let res = run(&grid(), &facts).unwrap();
        assert_eq!(
            res.einf,
            Page::from_entries(&[(1, -1, 0, 1), (3, 7, 4, 1), (3, 9, 5, 1)])
        );
        assert!(res.unused_nonzero.is_empty());
        assert!(res.chains.is_empty());
    }

    #[test]
    fn undeclared_differential_is_an_error() {
        let err = run(&grid(), &[]).unwrap_err();
        assert!(matches!(err, SpecSeqError::Unresolved { .. }));
        let unknown = [DifferentialFact::new(1, 2, 1, Unknown)];
        assert!(run(&grid(), &unknown).is_err());
    }

    #[test]
    fn all_zero_keeps_page() {
        let facts = [
            DifferentialFact::new(1, 2, 1, Zero),
            DifferentialFact::new(1, 2, 3, Zero),
            DifferentialFact::new(1, 3, 5, Zero),
        ];
        assert_eq!(run(&grid(), &facts).unwrap().einf, grid());
    }

    #[test]
    fn grid_inference() {
        let facts = [
            DifferentialFact::new(1, 2, 1, Unknown),
            DifferentialFact::new(1, 2, 3, Unknown),
            DifferentialFact::new(1, 3, 5, Unknown),
        ];
        let c = Constraint::ForbiddenTotalDegrees {
            degrees: (1..=7).collect(),
            p_range: None,
        };
        let rep = infer(&grid(), &facts, &[c], DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(rep.forced_with(ForcedStatus::Nonzero).len(), 3);
        assert_eq!(
            rep.summary_lines()[0],
            "forced nonzero: d1(2,1) d1(2,3) d1(3,5)"
        );
        assert!(rep.implicit.is_empty());
    }

    #[test]
    fn nothing_to_infer() {
        let rep = infer(&Page::new(), &[], &[], DEFAULT_SEARCH_BOUND).unwrap();
        assert!(rep.nothing_to_infer());
        assert_eq!(rep.summary_lines(), vec!["nothing to infer"]);
    }

    #[test]
    fn unsatisfiable_reports_first_blocking_constraint() {
        let page = Page::from_entries(&[(1, 0, 0, 1)]);
        let ok = Constraint::ForbiddenTotalDegrees {
            degrees: vec![5],
            p_range: None,
        };
        let bad = Constraint::ForbiddenTotalDegrees {
            degrees: vec![1],
            p_range: None,
        };
        match infer(&page, &[], &[ok, bad], 10) {
            Err(SpecSeqError::Unsatisfiable { index, .. }) => assert_eq!(index, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn search_bound_is_enforced() {
        let facts = [DifferentialFact::new(1, 2, 1, Unknown)];
        assert!(matches!(
            infer(&grid(), &facts, &[], 2),
            Err(SpecSeqError::SearchBound { bound: 2 })
        ));
    }

    #[test]
    fn partial_ranks_are_explored() {
        let page = Page::from_entries(&[(2, 0, 1, 2), (1, 0, 1, 2)]);
        let c = Constraint::PrescribedTotals {
            p_range: (1, 2),
            totals: TwistedDims::from_entries(&[(2, 1, 1), (1, 1, 1)]),
        };
        let rep = infer(&page, &[], &[c], 100).unwrap();
        assert_eq!(
            rep.forced,
            vec![(FactKey::new(1, 2, 0), ForcedStatus::Partial)]
        );
        assert_eq!(rep.implicit, vec![FactKey::new(1, 2, 0)]);
    }

    #[test]
    fn page_json_round_trip() {
        let s = serde_json::to_string(&grid()).unwrap();
        assert_eq!(serde_json::from_str::<Page>(&s).unwrap(), grid());
        let c = Constraint::ForbiddenTotalDegrees {
            degrees: vec![1, 2],
            p_range: Some((5, 6)),
        };
        let js = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<Constraint>(&js).unwrap(), c);
    }
}
