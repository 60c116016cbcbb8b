use std::collections::BTreeMap;

use conres_core::bmspace::{self, AxiomTable, SpaceExpr};
use conres_core::cohring::presets;
use conres_core::hodgepoly::{self, Division, MHPolynomial, SpecializeMode, Specialized};
use conres_core::linalg::rat;
use conres_core::specseq::{self, DifferentialFact, Page, Status};
use conres_core::strata::{Level, StratificationModel, Stratum};
use conres_core::TwistedDims;
use num_bigint::BigInt;
use proptest::prelude::*;

fn twisted(max_deg: i64) -> impl Strategy<Value = TwistedDims> {
    prop::collection::vec((0..max_deg, -3i64..8, 1u64..4), 0..6).prop_map(|v| {
        let mut t = TwistedDims::new();
        for (i, m, d) in v {
            t.add(i, m, d);
        }
        t
    })
}

fn mh_poly() -> impl Strategy<Value = MHPolynomial> {
    prop::collection::vec(((0i64..5, -3i64..3, -3i64..3), -3i64..4), 1..5).prop_map(|v| {
        let mut p = MHPolynomial::zero();
        for (m, c) in v {
            p = p.add(&MHPolynomial::monomial(m, c));
        }
        p
    })
}

fn page() -> impl Strategy<Value = Page> {
    prop::collection::vec((1i64..5, 0i64..8, 0i64..5, 1u64..3), 0..10).prop_map(|v| {
        let mut p = Page::new();
        for (a, b, m, d) in v {
            p.add(a, b, m, d);
        }
        p
    })
}

/// Every differential that can act on `page`, each with a random status.
fn all_facts(page: &Page, bits: &[bool]) -> Vec<DifferentialFact> {
    let (lo, hi) = match page.p_bounds() {
        Some(b) => b,
        None => return Vec::new(),
    };
    let mut out = Vec::new();
    let mut k = 0;
    for (p, q) in page.positions() {
        for r in 1..=(hi - lo + 1).max(1) as u32 {
            let st = if bits[k % bits.len()] {
                Status::Nonzero
            } else {
                Status::Zero
            };
            k += 1;
            out.push(DifferentialFact::new(r, p, q, st));
        }
    }
    out
}

proptest! {
    #[test]
    fn dualize_round_trip(t in twisted(29)) {
        let p = hodgepoly::dualize(&t, 15).unwrap();
        prop_assert_eq!(hodgepoly::undualize(&p, 15).unwrap(), t);
    }

    #[test]
    fn poincare_sums_coefficients(p in mh_poly()) {
        let sum: BigInt = p.terms().map(|(_, c)| c.clone()).sum();
        let total = match hodgepoly::specialize(&p, SpecializeMode::Poincare) {
            Specialized::Poly(q) => q.terms().map(|(_, c)| c.clone()).sum(),
            Specialized::Integer(n) => n,
        };
        prop_assert_eq!(total, sum);
    }

    #[test]
    fn print_parse_round_trip(p in mh_poly()) {
        let back: MHPolynomial = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn products_divide_exactly(p in mh_poly(), d in mh_poly()) {
        prop_assume!(!d.is_zero());
        match hodgepoly::divide_exact(&p.mul(&d), &d).unwrap() {
            Division::Exact(q) => prop_assert_eq!(q, p),
            Division::NotDivisible { obstruction } => {
                prop_assert!(false, "obstruction {:?}", obstruction)
            }
        }
    }

    #[test]
    fn euler_conserved_by_twist(pg in page(), bits in prop::collection::vec(any::<bool>(), 1..16)) {
        let facts = all_facts(&pg, &bits);
        let out = specseq::run(&pg, &facts).unwrap();
        prop_assert_eq!(out.einf.euler_by_twist(), pg.euler_by_twist());
        for e in out.einf.entries() {
            prop_assert!(e.dim <= pg.dim(e.p, e.q, e.twist));
        }
    }

    #[test]
    fn all_zero_differentials_change_nothing(pg in page()) {
        let facts = all_facts(&pg, &[false]);
        let out = specseq::run(&pg, &facts).unwrap();
        prop_assert_eq!(out.einf, pg);
    }

    #[test]
    fn convolution_commutes(a in twisted(10), b in twisted(10)) {
        prop_assert_eq!(a.convolve(&b), b.convolve(&a));
    }

    #[test]
    fn shifts_compose(a in twisted(10), i in -5i64..5, j in -5i64..5) {
        prop_assert_eq!(a.shift(i, j).shift(-i, -j), a.clone());
        prop_assert_eq!(a.shift(i, j).euler_by_twist().len(), a.euler_by_twist().len());
    }

    #[test]
    fn bundles_stack(a in twisted(10), d in 0u32..5, e in 0u32..5) {
        let twice = bmspace::vector_bundle(d, &bmspace::vector_bundle(e, &a));
        prop_assert_eq!(twice, bmspace::vector_bundle(d + e, &a));
    }

    #[test]
    fn product_with_projective_space(n in 0u32..4, m in 0u32..4) {
        let ax = AxiomTable::standard();
        let e = SpaceExpr::product(SpaceExpr::ProjectiveSpace(n), SpaceExpr::ProjectiveSpace(m));
        let got = bmspace::eval_space(&e, &ax).unwrap();
        prop_assert_eq!(got.total_dim(), ((n + 1) * (m + 1)) as u64);
        prop_assert_eq!(got, bmspace::projective_space(n).convolve(&bmspace::projective_space(m)));
    }

    #[test]
    fn ring_arithmetic(c in prop::collection::vec(-4i64..5, 9)) {
        let r = presets::pair_ring(2, "a1", "a2").unwrap();
        let el = |k: usize| r.element(&format!("{} + {}a1 + {}a2", c[3 * k], c[3 * k + 1], c[3 * k + 2])).unwrap();
        let (x, y, z) = (el(0), el(1), el(2));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.scale(&rat(2)), x.add(&x));
    }

    #[test]
    fn normal_form_idempotent(c in prop::collection::vec(-4i64..5, 4), e in prop::collection::vec(0u32..4, 4)) {
        let r = presets::pair_ring(2, "a1", "a2").unwrap();
        let s = format!("{}a1^{} + {}a2^{} + {}a1^{}*a2^{}", c[0], e[0], c[1], e[1], c[2], e[2], e[3]);
        let once = r.element(&s).unwrap();
        let twice = r.element(&once.to_string()).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn strata_levels_are_monotone(
        n in 1usize..6,
        edges in prop::collection::vec((0usize..6, 0usize..6, prop::option::of(0usize..6)), 0..8),
    ) {
        let mut strata: Vec<Stratum> = (1..=n).map(|i| Stratum::new(i, &format!("s{i}"), (n - i) as u32)).collect();
        for (k, (src, tgt, mem)) in edges.into_iter().enumerate() {
            let src = src % n;
            strata[src] = strata[src].clone().boundary(&format!("c{k}"), tgt % n + 1, mem.map(|m| m % n + 1));
        }
        let m = StratificationModel::new(strata).unwrap();
        let mut passed = BTreeMap::new();
        for lv in [Level::FiveMinus, Level::Five, Level::FivePlus] {
            passed.insert(lv, m.validate(lv).unwrap().passed());
        }
        if passed[&Level::FivePlus] {
            prop_assert!(passed[&Level::Five]);
        }
        if passed[&Level::Five] {
            prop_assert!(passed[&Level::FiveMinus]);
        }
    }
}
