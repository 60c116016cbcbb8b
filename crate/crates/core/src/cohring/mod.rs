//! Truncated graded quotient rings over Q and Chern-class calculus.

mod chern;
mod gysin;
mod poly;
pub mod presets;
mod ring;

pub use chern::{
    chern_theta, chern_total, chern_xi_eta, eta_expr, eval_bundle, tensor_with_line,
    theta_flag_class, theta_rank, xi_expr, BundleExpr, ThetaClasses, TotalClass, XiEta,
    THETA_MAX_N,
};
pub use gysin::{
    circle_bundle_cohomology, mult_ranks, swap_involution, to_borel_moore, CircleCohomology,
    IsotypicSplit, MultRank,
};
pub use poly::{Exponents, ParseError, Poly};
pub use ring::{
    build_ring, Generator, GradedRing, Involution, NormalForm, Presentation, RingElement, RingMap,
};

#[derive(Debug, thiserror::Error)]
pub enum CohringError {
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{name}` has degree {degree}; degrees must be even and positive")]
    BadGeneratorDegree { name: String, degree: u32 },
    #[error("top degree {top} is below the degree {degree} of generator `{name}`")]
    TopDegreeTooSmall { name: String, degree: u32, top: u32 },
    #[error("cannot parse `{input}`: {source}")]
    Parse { input: String, source: ParseError },
    #[error("relation `{relation}` is not homogeneous")]
    NonHomogeneous { relation: String },
    #[error("relations kill the unit; the ring is zero")]
    Degenerate,
    #[error("degree {degree} expects {expected} coordinates, got {found}")]
    CoordinateLength {
        degree: u32,
        expected: usize,
        found: usize,
    },
    #[error("element `{element}` is not homogeneous of degree {degree}")]
    NotHomogeneous { degree: u32, element: String },
    #[error("elements live in different rings")]
    RingMismatch,
    #[error("ring map needs {expected} generator images, got {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("ring map sends relation `{relation}` to `{image}`, not 0")]
    RelationNotKilled { relation: String, image: String },
    #[error("not an involution: {0}")]
    NotInvolution(String),
    #[error("`{0}` is not a unit total class")]
    NotUnit(String),
    #[error("inconsistent ranks: {0}")]
    Rank(String),
    #[error("theta class needs d >= 1 and 2 <= n <= {max}, got d={d}, n={n}", max = THETA_MAX_N)]
    ThetaRange { d: u32, n: u32 },
    #[error("unknown ring preset `{0}`")]
    UnknownPreset(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_of_presets() {
        assert_eq!(presets::preset("pair-n2").unwrap().dims(), vec![1, 2, 2, 1]);
        assert_eq!(presets::preset("cp1").unwrap().dims(), vec![1, 1]);
        assert_eq!(presets::preset("flag-n2").unwrap().dims(), vec![1, 2, 2, 1]);
        assert_eq!(
            presets::preset("pair-n3").unwrap().dims(),
            vec![1, 2, 3, 3, 2, 1]
        );
    }

    #[test]
    fn normal_forms() {
        let z = presets::preset("pair-n2").unwrap();
        assert_eq!(z.element("a2^2").unwrap().to_string(), "-a1^2 - a1*a2");
        assert_eq!(z.element("0").unwrap().to_string(), "0");
        assert!(z.element("a1*a2^2 + a1^2*a2").unwrap().is_zero());
        assert_eq!(z.basis_names(4), vec!["a1^2", "a1*a2"]);
    }

    #[test]
    fn truncation_is_recorded() {
        let z = presets::preset("pair-n2").unwrap();
        let p = z.parse_poly("1 + a1^4 + a1^2*a2^2").unwrap();
        let nf = z.normal_form(&p);
        assert_eq!(nf.truncated_terms, 2);
        assert_eq!(nf.element.to_string(), "1");
    }

    #[test]
    fn presentation_errors() {
        let bad = |g: &[(&str, u32)], r: &[&str], top| build_ring(&Presentation::new(g, r, top));
        assert!(matches!(
            bad(&[("a", 2), ("a", 2)], &[], 4),
            Err(CohringError::DuplicateGenerator(_))
        ));
        assert!(matches!(
            bad(&[("a", 3)], &[], 6),
            Err(CohringError::BadGeneratorDegree { .. })
        ));
        assert!(matches!(
            bad(&[("a", 4)], &[], 2),
            Err(CohringError::TopDegreeTooSmall { .. })
        ));
        match bad(&[("a", 2), ("b", 2)], &["a^2 + b"], 4) {
            Err(CohringError::NonHomogeneous { relation }) => assert_eq!(relation, "a^2 + b"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            bad(&[("a", 2)], &["1"], 2),
            Err(CohringError::Degenerate)
        ));
    }

    #[test]
    fn ring_maps_check_relations() {
        let flag = presets::preset("flag-n2").unwrap();
        let z = presets::preset("pair-n2").unwrap();
        assert!(RingMap::from_strs(&flag, &z, &["a1", "-a2"]).is_ok());
        assert!(RingMap::from_strs(&flag, &z, &["a2", "-a1"]).is_ok());
        assert!(matches!(
            RingMap::from_strs(&flag, &z, &["a1", "a2"]),
            Err(CohringError::RelationNotKilled { .. })
        ));
        assert!(RingMap::from_strs(&flag, &z, &["a1", "a2^2"]).is_err());
    }

    #[test]
    fn truncated_source_must_die_in_target() {
        let cp1 = presets::preset("cp1").unwrap();
        let cp2 = presets::preset("cp2").unwrap();
        assert!(RingMap::from_strs(&cp1, &cp2, &["a"]).is_err());
        assert!(RingMap::from_strs(&cp2, &cp1, &["a"]).is_ok());
    }

    #[test]
    fn involution_check() {
        let z = presets::preset("pair-n2").unwrap();
        assert!(swap_involution(&z).is_ok());
        let neg = RingMap::from_strs(&z, &z, &["-a1", "-a2"]).unwrap();
        assert!(Involution::new(neg).is_ok());
        let cp2 = presets::preset("cp2").unwrap();
        let twice = RingMap::from_strs(&cp2, &cp2, &["2a"]).unwrap();
        assert!(Involution::new(twice).is_err());
    }

    #[test]
    fn poincare_twisted_of_projective_spaces() {
        use crate::twisted::TwistedDims;
        let cp2 = presets::preset("cp2").unwrap();
        assert_eq!(
            cp2.poincare_twisted(),
            TwistedDims::from_entries(&[(0, 0, 1), (2, 1, 1), (4, 2, 1)])
        );
        let flag = presets::preset("flag-n2").unwrap();
        assert_eq!(
            flag.poincare_twisted(),
            TwistedDims::from_entries(&[(0, 0, 1), (2, 1, 2), (4, 2, 2), (6, 3, 1)])
        );
    }
}
