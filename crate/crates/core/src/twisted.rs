//! Dimension vectors graded by (homological degree, Tate twist).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistedDims {
    entries: BTreeMap<(i64, i64), u64>,
}

/// One serialized entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistedEntry {
    pub degree: i64,
    pub twist: i64,
    pub dim: u64,
}

impl TwistedDims {
    pub fn new() -> Self {
        Self::default()
    }

    /// The homology of a point: one class in degree 0, twist 0.
    pub fn point() -> Self {
        Self::from_entries(&[(0, 0, 1)])
    }

    /// Builds from `(degree, twist, dim)` triples; repeated keys add up.
    pub fn from_entries(entries: &[(i64, i64, u64)]) -> Self {
        let mut t = Self::new();
        for &(i, m, d) in entries {
            t.add(i, m, d);
        }
        t
    }

    pub fn add(&mut self, degree: i64, twist: i64, dim: u64) {
        if dim == 0 {
            return;
        }
        *self.entries.entry((degree, twist)).or_insert(0) += dim;
    }

    /// Removes `dim` classes; panics when fewer are present.
    pub fn remove(&mut self, degree: i64, twist: i64, dim: u64) {
        if dim == 0 {
            return;
        }
        let slot = self
            .entries
            .get_mut(&(degree, twist))
            .unwrap_or_else(|| panic!("no classes at ({degree},{twist})"));
        assert!(
            *slot >= dim,
            "removing {dim} of {slot} at ({degree},{twist})"
        );
        *slot -= dim;
        if *slot == 0 {
            self.entries.remove(&(degree, twist));
        }
    }

    pub fn get(&self, degree: i64, twist: i64) -> u64 {
        self.entries.get(&(degree, twist)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, u64)> + '_ {
        self.entries.iter().map(|(&(i, m), &d)| (i, m, d))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_dim(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Twists present at a degree, with their dims.
    pub fn twists_at(&self, degree: i64) -> BTreeMap<i64, u64> {
        self.iter()
            .filter(|&(i, _, _)| i == degree)
            .map(|(_, m, d)| (m, d))
            .collect()
    }

    pub fn shift(&self, degree: i64, twist: i64) -> Self {
        let mut t = Self::new();
        for (i, m, d) in self.iter() {
            t.add(i + degree, m + twist, d);
        }
        t
    }

    /// Direct sum.
    pub fn sum(&self, other: &Self) -> Self {
        let mut t = self.clone();
        for (i, m, d) in other.iter() {
            t.add(i, m, d);
        }
        t
    }

    /// Kunneth product: degrees and twists add.
    pub fn convolve(&self, other: &Self) -> Self {
        let mut t = Self::new();
        for (i, m, d) in self.iter() {
            for (j, n, e) in other.iter() {
                t.add(i + j, m + n, d * e);
            }
        }
        t
    }

    /// Reduced homology: drop one class in degree 0, twist 0, or record the
    /// degree -1 class of the empty space.
    pub fn reduced(&self) -> Self {
        let mut t = self.clone();
        if self.is_empty() {
            t.add(-1, 0, 1);
        } else if self.get(0, 0) > 0 {
            t.remove(0, 0, 1);
        }
        t
    }

    /// `sum (-1)^degree dim`, split by twist.
    pub fn euler_by_twist(&self) -> BTreeMap<i64, i64> {
        let mut out = BTreeMap::new();
        for (i, m, d) in self.iter() {
            let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            *out.entry(m).or_insert(0) += sign * d as i64;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    pub fn to_entries(&self) -> Vec<TwistedEntry> {
        self.iter()
            .map(|(degree, twist, dim)| TwistedEntry { degree, twist, dim })
            .collect()
    }
}

impl fmt::Display for TwistedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .iter()
            .map(|(i, m, d)| format!("({i},{m}):{d}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl Serialize for TwistedDims {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_entries().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwistedDims {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let entries = Vec::<TwistedEntry>::deserialize(d)?;
        let mut t = TwistedDims::new();
        for e in entries {
            t.add(e.degree, e.twist, e.dim);
        }
        Ok(t)
    }
}
