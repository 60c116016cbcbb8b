//! Multiplication ranks and the Gysin sequence of circle bundles.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::ring::{GradedRing, Involution, RingElement};
use super::CohringError;
use crate::linalg::{intersection_dim, span_dim, Matrix, Rational};
use crate::twisted::TwistedDims;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultRank {
    pub source_degree: u32,
    pub rank: usize,
    pub kernel: usize,
    pub cokernel: usize,
}

/// Matrix of `x -> x*e` from degree `k` to `k + 2`.
fn mult_matrix(ring: &Arc<GradedRing>, e: &RingElement, k: u32) -> Matrix {
    let src = ring.basis(k);
    let mut m = Matrix::zeros(ring.dim(k + 2), src.len());
    for (j, exps) in src.iter().enumerate() {
        let img = ring.monomial(exps).mul(e).coords(k + 2);
        for (i, x) in img.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

fn check_euler(ring: &Arc<GradedRing>, e: &RingElement) -> Result<(), CohringError> {
    e.check_ring(ring)?;
    e.require_degree(2)
}

pub fn mult_ranks(ring: &Arc<GradedRing>, e: &RingElement) -> Result<Vec<MultRank>, CohringError> {
    check_euler(ring, e)?;
    Ok((0..=ring.top_degree())
        .step_by(2)
        .map(|k| {
            let rank = mult_matrix(ring, e, k).rank();
            MultRank {
                source_degree: k,
                rank,
                kernel: ring.dim(k) - rank,
                cokernel: ring.dim(k + 2) - rank,
            }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicSplit {
    pub invariant: TwistedDims,
    pub anti: TwistedDims,
}

/// Cohomology of the unit circle bundle, graded by (degree, twist).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleCohomology {
    pub total: TwistedDims,
    pub split: Option<IsotypicSplit>,
}

fn by_degree(t: &TwistedDims) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for (i, _, d) in t.iter() {
        *out.entry(i as u32).or_insert(0) += d as usize;
    }
    out
}

impl CircleCohomology {
    pub fn dims(&self) -> BTreeMap<u32, usize> {
        by_degree(&self.total)
    }

    pub fn anti_dims(&self) -> Option<BTreeMap<u32, usize>> {
        self.split.as_ref().map(|s| by_degree(&s.anti))
    }

    pub fn invariant_dims(&self) -> Option<BTreeMap<u32, usize>> {
        self.split.as_ref().map(|s| by_degree(&s.invariant))
    }
}

fn columns(m: &Matrix) -> Vec<Vec<Rational>> {
    let t = m.transpose();
    (0..t.rows()).map(|i| t.row(i).to_vec()).collect()
}

/// Eigenspaces of the involution on one degree, as spanning sets.
fn eigenspaces(inv: &Involution, k: u32) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let m = inv.map().matrix(k);
    let n = m.cols();
    let shifted = |s: i64| {
        let mut a = m.clone();
        for i in 0..n {
            let x = a.get(i, i) - Rational::from_integer(s.into());
            a.set(i, i, x);
        }
        a.kernel()
    };
    (shifted(1), shifted(-1))
}

/// Gysin sequence: even classes from cokernels of `. * euler`, odd classes
/// `H^{2j+1}` from the kernel on `H^{2j}`. Cokernel classes in `H^{2j}`
/// carry twist j, kernel classes twist j + 1.
///
/// With an involution, the split assumes it fixes the fibre orientation.
pub fn circle_bundle_cohomology(
    ring: &Arc<GradedRing>,
    euler: &RingElement,
    act: Option<&Involution>,
) -> Result<CircleCohomology, CohringError> {
    check_euler(ring, euler)?;
    if let Some(inv) = act {
        if !inv.ring().same_as(ring) {
            return Err(CohringError::RingMismatch);
        }
        if inv.map().apply(euler)? != *euler {
            return Err(CohringError::NotInvolution(
                "euler class is not invariant".into(),
            ));
        }
    }
    let mut total = TwistedDims::new();
    let mut inv_part = TwistedDims::new();
    let mut anti_part = TwistedDims::new();
    let top = ring.top_degree();
    for k in (0..=top).step_by(2) {
        let j = (k / 2) as i64;
        let dim_k = ring.dim(k);
        // image of H^{k-2} inside H^k
        let image = if k >= 2 {
            columns(&mult_matrix(ring, euler, k - 2))
        } else {
            Vec::new()
        };
        let coker = dim_k - span_dim(dim_k, &image);
        total.add(k as i64, j, coker as u64);
        let out = mult_matrix(ring, euler, k);
        let kernel = out.kernel();
        total.add(k as i64 + 1, j + 1, kernel.len() as u64);
        if let Some(inv) = act {
            let (plus, minus) = eigenspaces(inv, k);
            let plus_dim = span_dim(dim_k, &plus);
            let minus_dim = span_dim(dim_k, &minus);
            debug_assert_eq!(plus_dim + minus_dim, dim_k);
            let img_plus = intersection_dim(dim_k, &image, &plus);
            let img_minus = intersection_dim(dim_k, &image, &minus);
            inv_part.add(k as i64, j, (plus_dim - img_plus) as u64);
            anti_part.add(k as i64, j, (minus_dim - img_minus) as u64);
            inv_part.add(
                k as i64 + 1,
                j + 1,
                intersection_dim(dim_k, &kernel, &plus) as u64,
            );
            anti_part.add(
                k as i64 + 1,
                j + 1,
                intersection_dim(dim_k, &kernel, &minus) as u64,
            );
        }
    }
    let split = act.map(|_| IsotypicSplit {
        invariant: inv_part,
        anti: anti_part,
    });
    Ok(CircleCohomology { total, split })
}

/// Poincare duality on a smooth space of complex dimension `n`:
/// `H^k` of twist w becomes Borel-Moore `H_{2n-k}` of twist `n - w`.
pub fn to_borel_moore(cohomology: &TwistedDims, n: i64) -> TwistedDims {
    let mut out = TwistedDims::new();
    for (k, w, d) in cohomology.iter() {
        out.add(2 * n - k, n - w, d);
    }
    out
}

/// The swap `a1 <-> a2` on a two-generator ring.
pub fn swap_involution(ring: &Arc<GradedRing>) -> Result<Involution, CohringError> {
    let names = ring.names();
    if names.len() != 2 {
        return Err(CohringError::NotInvolution(
            "swap needs exactly two generators".into(),
        ));
    }
    let map = super::ring::RingMap::new(ring, ring, vec![ring.generator(1), ring.generator(0)])?;
    Involution::new(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohring::presets;

    #[test]
    fn ranks_for_sum_of_generators() {
        let z = presets::pair_ring(2, "a1", "a2").unwrap();
        let e = z.element("a1 + a2").unwrap();
        let ranks: Vec<usize> = mult_ranks(&z, &e).unwrap().iter().map(|r| r.rank).collect();
        assert_eq!(ranks, vec![1, 2, 1, 0]);
        let zero: Vec<usize> = mult_ranks(&z, &RingElement::zero(&z))
            .unwrap()
            .iter()
            .map(|r| r.rank)
            .collect();
        assert_eq!(zero, vec![0, 0, 0, 0]);
    }

    #[test]
    fn cp1_circle_bundle() {
        let cp1 = presets::projective_ring(1, "a").unwrap();
        let e = cp1.element("-2a").unwrap();
        assert_eq!(mult_ranks(&cp1, &e).unwrap()[0].rank, 1);
        let c = circle_bundle_cohomology(&cp1, &e, None).unwrap();
        assert_eq!(c.dims(), BTreeMap::from([(0, 1), (3, 1)]));
        let bm = to_borel_moore(&c.total, 2);
        assert_eq!(bm, TwistedDims::from_entries(&[(4, 2, 1), (1, 0, 1)]));
    }

    #[test]
    fn swapped_pair_ring() {
        let z = presets::pair_ring(2, "a1", "a2").unwrap();
        let sw = swap_involution(&z).unwrap();
        let e = z.element("-2a1 - 2a2").unwrap();
        let c = circle_bundle_cohomology(&z, &e, Some(&sw)).unwrap();
        assert_eq!(c.dims(), BTreeMap::from([(0, 1), (2, 1), (5, 1), (7, 1)]));
        assert_eq!(c.anti_dims().unwrap(), BTreeMap::from([(2, 1), (7, 1)]));
    }

    #[test]
    fn non_invariant_euler_is_rejected() {
        let z = presets::pair_ring(2, "a1", "a2").unwrap();
        let sw = swap_involution(&z).unwrap();
        let e = z.element("a1").unwrap();
        assert!(circle_bundle_cohomology(&z, &e, Some(&sw)).is_err());
    }
}
