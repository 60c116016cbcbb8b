use crate::bmspace::{
    CircleComplement, ColumnSpec, IsotypicPart, Script, SpaceExpr, Step, AX_AUTOJOIN_CP1,
    AX_PAIRS_CP2, AX_TRIPLES_CP1,
};
use crate::hodgepoly::{self, MHPolynomial};
use crate::specseq::{Constraint, DifferentialFact, FactKey, Page, Status};
use crate::strata::{self, StratificationModel, Stratum};
use crate::twisted::TwistedDims;

use super::{CaseStatus, CaseStudy, CrossCheck, Gate, InferenceInstance, PageSource};

pub const BUILTIN_NAMES: [&str; 3] = ["quartic-p2", "cubic-p2", "cubic-p3"];

pub fn builtin(name: &str) -> Option<CaseStudy> {
    match name {
        "quartic-p2" => Some(quartic_p2()),
        "cubic-p2" => Some(cubic_p2()),
        "cubic-p3" => Some(cubic_p3()),
        _ => None,
    }
}

fn poly(s: &str) -> MHPolynomial {
    s.parse().expect("reference polynomial parses")
}

fn vanishing_column(p: u32, d: u32, why: &str) -> ColumnSpec {
    ColumnSpec::script(p, d, Script::declared(TwistedDims::new(), why))
}

/// CP^2 times the open cone over CP^1.
fn pencil_fibre() -> SpaceExpr {
    SpaceExpr::product(
        SpaceExpr::ProjectiveSpace(2),
        SpaceExpr::cone(SpaceExpr::ProjectiveSpace(1)),
    )
}

/// Pairs with sign coefficients times the (shifted) fibre over a pair.
fn pair_fibre(inner: SpaceExpr) -> SpaceExpr {
    SpaceExpr::product(SpaceExpr::axiom(AX_PAIRS_CP2), inner)
}

fn instance(name: &str, page: PageSource, unknowns: &[(u32, i64, i64)]) -> InferenceInstance {
    InferenceInstance {
        name: name.into(),
        page,
        unknowns: unknowns
            .iter()
            .map(|&(r, p, q)| FactKey::new(r, p, q))
            .collect(),
        constraint: Vec::new(),
        vanishing: false,
        reference_totals: false,
        gate: None,
        feeds_column: None,
        citation: String::new(),
    }
}

pub fn quartic_grid() -> Page {
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

pub fn quartic_e1() -> Page {
    Page::from_entries(&[
        (1, 25, 13, 1),
        (1, 23, 12, 2),
        (1, 21, 11, 2),
        (1, 19, 10, 1),
        (2, 23, 12, 1),
        (2, 21, 11, 1),
        (2, 19, 10, 1),
        (3, 16, 9, 1),
        (3, 14, 8, 1),
        (3, 12, 7, 1),
        (5, 16, 10, 1),
        (5, 14, 9, 1),
        (5, 12, 8, 1),
        (6, 14, 9, 1),
        (6, 12, 8, 1),
        (6, 10, 7, 1),
        (8, 6, 6, 1),
        (8, 4, 5, 1),
        (8, 2, 4, 1),
        (11, 2, 5, 1),
        (11, 0, 4, 1),
    ])
}

pub fn quartic_facts() -> Vec<DifferentialFact> {
    use Status::*;
    vec![
        DifferentialFact::new(1, 2, 23, Nonzero),
        DifferentialFact::new(1, 2, 21, Nonzero),
        DifferentialFact::new(1, 2, 19, Nonzero),
        DifferentialFact::new(3, 11, 0, Nonzero),
        DifferentialFact::new(3, 11, 2, Nonzero),
        DifferentialFact::new(1, 6, 12, Nonzero),
        DifferentialFact::new(1, 6, 14, Nonzero),
        DifferentialFact::new(3, 6, 10, Zero),
    ]
}

/// Gysin data for the part of column 8 off the zero section.
pub fn column8_complement() -> Script {
    Script {
        steps: vec![
            Step::CircleComplement(CircleComplement {
                ring: "pair-n2".into(),
                euler: "-2a1 - 2a2".into(),
                swap: true,
                part: IsotypicPart::Anti,
                complex_dim: 5,
            }),
            Step::Shift {
                degree: 6,
                twist: 2,
            },
        ],
    }
}

pub fn quartic_p2() -> CaseStudy {
    let d = strata::QUARTIC_D;
    let columns = vec![
        ColumnSpec::space(1, d[0], SpaceExpr::CompactRing("flag-n2".into())),
        ColumnSpec::space(2, d[1], pencil_fibre()),
        ColumnSpec::space(3, d[2], pencil_fibre()),
        vanishing_column(
            4,
            d[3],
            "boundary is a union of two contractible pieces meeting in a contractible piece",
        ),
        ColumnSpec::space(
            5,
            d[4],
            SpaceExpr::shift(1, 0, pair_fibre(SpaceExpr::bundle(2, SpaceExpr::Point))),
        ),
        ColumnSpec::space(
            6,
            d[5],
            pair_fibre(SpaceExpr::shift(
                2,
                0,
                SpaceExpr::bundle(2, SpaceExpr::Point),
            )),
        ),
        vanishing_column(
            7,
            d[6],
            "successive differences of the boundary filtration are acyclic",
        ),
        ColumnSpec::space(
            8,
            d[7],
            pair_fibre(SpaceExpr::shift(
                2,
                0,
                SpaceExpr::bundle(2, SpaceExpr::Point),
            )),
        ),
        ColumnSpec::space(9, d[8], SpaceExpr::cone(SpaceExpr::axiom(AX_AUTOJOIN_CP1))),
        ColumnSpec::space(
            10,
            d[9],
            SpaceExpr::product(
                SpaceExpr::ProjectiveSpace(2),
                SpaceExpr::axiom(AX_TRIPLES_CP1),
            ),
        ),
        ColumnSpec::script(
            11,
            d[10],
            Script::declared(
                TwistedDims::from_entries(&[(0, 0, 1), (10, 4, 1), (12, 5, 1)]),
                "cone base homology, confirmed by the lambda-grid instance",
            )
            .then(Step::OpenCone),
        ),
    ];

    let grid = InferenceInstance {
        vanishing: true,
        feeds_column: Some(11),
        citation: "complement has no cohomology in degree 21 or above (finite stabilizers, 6-dim affine quotient)".into(),
        ..instance(
            "lambda-grid",
            PageSource::Explicit(quartic_grid()),
            &[(1, 2, 1), (1, 2, 3), (1, 3, 5)],
        )
    };
    let pencils = InferenceInstance {
        constraint: vec![Constraint::PrescribedTotals {
            p_range: (1, 2),
            totals: TwistedDims::from_entries(&[(22, 11, 1), (24, 12, 1), (26, 13, 1)]),
        }],
        citation: "fibre over a pencil: O(-2) line bundle glued to a 3-ball".into(),
        ..instance(
            "pencil-fibre",
            PageSource::Columns(1, 2),
            &[(1, 2, 19), (1, 2, 21), (1, 2, 23)],
        )
    };
    let tail = InferenceInstance {
        constraint: vec![Constraint::PrescribedTotals {
            p_range: (8, 11),
            totals: TwistedDims::from_entries(&[(14, 6, 1)]),
        }],
        citation: "columns 8..11 recomputed with the zero-section filtration".into(),
        ..instance(
            "tail-columns",
            PageSource::Columns(8, 11),
            &[(3, 11, 0), (3, 11, 2)],
        )
    };
    let two_flags = InferenceInstance {
        constraint: vec![Constraint::ForbiddenTotalDegrees {
            degrees: vec![17, 18, 19, 20],
            p_range: Some((5, 6)),
        }],
        gate: Some(Gate::XiEtaQuotientNonzero),
        citation: "d1 from column 6 to 5 is full iff c1(xi'/eta') = k(a1 + a2) with k != 0".into(),
        ..instance(
            "two-flag-quotient",
            PageSource::Columns(5, 6),
            &[(1, 6, 12), (1, 6, 14)],
        )
    };
    let consistency = InferenceInstance {
        reference_totals: true,
        citation: "only d3(6,10) = 0 is compatible with the reference polynomial".into(),
        ..instance(
            "reference-consistency",
            PageSource::Columns(1, 11),
            &[(3, 6, 10)],
        )
    };

    CaseStudy {
        name: "quartic-p2".into(),
        ambient_dim: 15,
        vanishing_bound: Some(21),
        strata: strata::quartic_model(),
        columns,
        cross_checks: vec![CrossCheck {
            name: "column 8 off the zero section".into(),
            script: column8_complement(),
            expect: TwistedDims::from_entries(&[(9, 3, 1), (14, 6, 1)]),
        }],
        e1: quartic_e1(),
        differentials: quartic_facts(),
        inference: vec![grid, pencils, tail, two_flags, consistency],
        expected: Some(poly(hodgepoly::QUARTIC_P2)),
        status: CaseStatus::Complete,
        notes: vec![
            "the source also asserts d3(6,10) nonzero, with an empty proof; the stored value is zero".into(),
            "pencil-fibre prescribes fibre totals in degrees 22, 24, 26; the source's prose puts the fibre class in degree 21".into(),
            "d of X9 is not given in the source and is set to 1; column 9 vanishes either way".into(),
        ],
    }
}

pub fn cubic_grid() -> Page {
    Page::from_entries(&[
        (1, -1, 0, 1),
        (1, 1, 1, 1),
        (1, 3, 2, 1),
        (2, 1, 1, 1),
        (2, 3, 2, 1),
        (2, 5, 3, 1),
    ])
}

pub fn cubic_e1() -> Page {
    Page::from_entries(&[
        (1, 15, 8, 1),
        (1, 13, 7, 2),
        (1, 11, 6, 2),
        (1, 9, 5, 1),
        (2, 13, 7, 1),
        (2, 11, 6, 1),
        (2, 9, 5, 1),
        (3, 10, 6, 1),
        (3, 8, 5, 1),
        (3, 6, 4, 1),
        (6, 2, 3, 1),
    ])
}

pub fn cubic_facts() -> Vec<DifferentialFact> {
    use Status::*;
    vec![
        DifferentialFact::new(1, 2, 9, Nonzero),
        DifferentialFact::new(1, 2, 11, Nonzero),
        DifferentialFact::new(1, 2, 13, Nonzero),
        DifferentialFact::new(2, 3, 10, Nonzero),
    ]
}

pub fn cubic_p2() -> CaseStudy {
    let columns = vec![
        ColumnSpec::space(1, 5, SpaceExpr::CompactRing("flag-n2".into())),
        ColumnSpec::space(2, 4, pencil_fibre()),
        ColumnSpec::space(3, 3, pencil_fibre()),
        vanishing_column(
            4,
            2,
            "boundary is a union of two contractible pieces meeting in a contractible piece",
        ),
        vanishing_column(
            5,
            1,
            "successive differences of the boundary filtration are acyclic",
        ),
        ColumnSpec::script(
            6,
            0,
            Script::declared(
                TwistedDims::from_entries(&[(0, 0, 1), (7, 3, 1)]),
                "cone base homology, confirmed by the lambda-grid instance",
            )
            .then(Step::OpenCone),
        ),
    ];
    let grid = InferenceInstance {
        vanishing: true,
        feeds_column: Some(6),
        citation: "complement has no cohomology in degree 12 or above".into(),
        ..instance(
            "lambda-grid",
            PageSource::Explicit(cubic_grid()),
            &[(1, 2, 1), (1, 2, 3)],
        )
    };
    let consistency = InferenceInstance {
        reference_totals: true,
        citation: "d2(3,10) checked against the reference polynomial".into(),
        ..instance(
            "reference-consistency",
            PageSource::Columns(1, 6),
            &[(2, 3, 10)],
        )
    };
    CaseStudy {
        name: "cubic-p2".into(),
        ambient_dim: 10,
        vanishing_bound: Some(12),
        strata: strata::cubic_flag_model(),
        columns,
        cross_checks: Vec::new(),
        e1: cubic_e1(),
        differentials: cubic_facts(),
        inference: vec![grid, consistency],
        expected: Some(poly(hodgepoly::CUBIC_P2)),
        status: CaseStatus::Complete,
        notes: vec![
            "the stratum list in the source announces five strata and lists six; all six are used"
                .into(),
            "d1 from column 2 to 1 is declared by the same fibre argument as in the quartic case"
                .into(),
        ],
    }
}

/// Skeleton awaiting strata and E^1 data; no reference polynomial exists.
pub fn cubic_p3() -> CaseStudy {
    CaseStudy {
        name: "cubic-p3".into(),
        ambient_dim: 20,
        vanishing_bound: None,
        strata: StratificationModel::new(vec![Stratum::new(1, "whole flag variety", 0)])
            .expect("well formed"),
        columns: Vec::new(),
        cross_checks: Vec::new(),
        e1: Page::new(),
        differentials: Vec::new(),
        inference: Vec::new(),
        expected: None,
        status: CaseStatus::IncompleteReference,
        notes: vec![
            "no strata, table or reference polynomial available; supply them as JSON".into(),
        ],
    }
}
