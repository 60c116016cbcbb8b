//! Named ring presentations.

use std::sync::Arc;

use super::poly::Poly;
use super::ring::{build_ring, GradedRing, Presentation};
use super::CohringError;
use crate::linalg::rat;

/// `h_n(x, y - k x) = sum_i x^i (y - k x)^{n-i}`, rendered with `names`.
fn complete_symmetric(n: u32, shear: i64, names: &[String]) -> String {
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1).sub(&x.scale(&rat(shear)));
    let mut h = Poly::zero(2);
    for i in 0..=n {
        h = h.add(&x.pow(i).mul(&y.pow(n - i)));
    }
    h.format(names)
}

/// Ordered pairs of distinct points of CP^n:
/// `Q[x, y]/(x^{n+1}, y^{n+1}, h_n(x, y))`, top degree `4n - 2`.
pub fn pair_presentation(n: u32, x: &str, y: &str) -> Presentation {
    let names = [x.to_string(), y.to_string()];
    let rels = [
        format!("{x}^{}", n + 1),
        format!("{y}^{}", n + 1),
        complete_symmetric(n, 0, &names),
    ];
    let rels: Vec<&str> = rels.iter().map(String::as_str).collect();
    Presentation::new(&[(x, 2), (y, 2)], &rels, 4 * n - 2)
}

/// Point-in-line flags of CP^n: `Q[p, l]/(p^{n+1}, h_n(p, l - p))`.
pub fn flag_presentation(n: u32, p: &str, l: &str) -> Presentation {
    let names = [p.to_string(), l.to_string()];
    let top = format!("{p}^{}", n + 1);
    let hn = complete_symmetric(n, 1, &names);
    Presentation::new(&[(p, 2), (l, 2)], &[top.as_str(), hn.as_str()], 4 * n - 2)
}

/// `Q[a]/(a^{n+1})`.
pub fn projective_presentation(n: u32, a: &str) -> Presentation {
    let rel = format!("{a}^{}", n + 1);
    Presentation::new(&[(a, 2)], &[rel.as_str()], 2 * n)
}

pub fn pair_ring(n: u32, x: &str, y: &str) -> Result<Arc<GradedRing>, CohringError> {
    build_ring(&pair_presentation(n, x, y))
}

pub fn flag_ring(n: u32, p: &str, l: &str) -> Result<Arc<GradedRing>, CohringError> {
    build_ring(&flag_presentation(n, p, l))
}

pub fn projective_ring(n: u32, a: &str) -> Result<Arc<GradedRing>, CohringError> {
    build_ring(&projective_presentation(n, a))
}

pub const PRESET_NAMES: &[&str] = &[
    "pair-n2", "pair-n3", "flag-n2", "flag-n3", "cp1", "cp2", "cp3",
];

pub fn preset_presentation(name: &str) -> Result<Presentation, CohringError> {
    Ok(match name {
        "pair-n2" => pair_presentation(2, "a1", "a2"),
        "pair-n3" => pair_presentation(3, "a1", "a2"),
        "flag-n2" => flag_presentation(2, "ap", "al"),
        "flag-n3" => flag_presentation(3, "ap", "al"),
        "cp1" => projective_presentation(1, "a"),
        "cp2" => projective_presentation(2, "a"),
        "cp3" => projective_presentation(3, "a"),
        _ => return Err(CohringError::UnknownPreset(name.into())),
    })
}

pub fn preset(name: &str) -> Result<Arc<GradedRing>, CohringError> {
    build_ring(&preset_presentation(name)?)
}
