use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{format_terms, Exponents, Poly};
use super::CohringError;
use crate::linalg::{fmt_rational, Matrix, Rational};
use crate::twisted::TwistedDims;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<String>,
    pub top_degree: u32,
}

impl Presentation {
    pub fn new(generators: &[(&str, u32)], relations: &[&str], top_degree: u32) -> Self {
        Presentation {
            generators: generators
                .iter()
                .map(|&(name, degree)| Generator {
                    name: name.into(),
                    degree,
                })
                .collect(),
            relations: relations.iter().map(|s| s.to_string()).collect(),
            top_degree,
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn weights(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }
}

/// One graded piece: all monomials of the degree, the elimination data and
/// the chosen basis.
#[derive(Debug)]
struct Piece {
    monomials: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
    /// Positions (into `monomials`) of the basis monomials, lex-descending.
    basis: Vec<usize>,
    /// Basis coordinates of every monomial.
    coords: Vec<Vec<Rational>>,
}

#[derive(Debug)]
pub struct GradedRing {
    presentation: Presentation,
    names: Vec<String>,
    weights: Vec<u32>,
    pieces: BTreeMap<u32, Piece>,
}

/// Result of reducing a raw polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm {
    pub element: RingElement,
    /// Number of raw terms dropped because they sit above the top degree.
    pub truncated_terms: usize,
}

/// All exponent vectors of the given weighted degree, lex-ascending.
pub(crate) fn monomials_of_degree(weights: &[u32], degree: u32) -> Vec<Exponents> {
    fn go(weights: &[u32], i: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[i];
        let max = left / w;
        for e in 0..=max {
            cur[i] = e;
            go(weights, i + 1, left - e * w, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; weights.len()];
    go(weights, 0, degree, &mut cur, &mut out);
    out.sort();
    out
}

/// Builds the truncated quotient ring by per-degree elimination.
pub fn build_ring(p: &Presentation) -> Result<Arc<GradedRing>, CohringError> {
    let names = p.names();
    let weights = p.weights();
    let mut seen = BTreeSet::new();
    for g in &p.generators {
        if !seen.insert(g.name.as_str()) {
            return Err(CohringError::DuplicateGenerator(g.name.clone()));
        }
        if g.degree == 0 || g.degree % 2 == 1 {
            return Err(CohringError::BadGeneratorDegree {
                name: g.name.clone(),
                degree: g.degree,
            });
        }
        if g.degree > p.top_degree {
            return Err(CohringError::TopDegreeTooSmall {
                name: g.name.clone(),
                degree: g.degree,
                top: p.top_degree,
            });
        }
    }
    let mut relations = Vec::new();
    for r in &p.relations {
        let poly = Poly::parse(r, &names).map_err(|e| CohringError::Parse {
            input: r.clone(),
            source: e,
        })?;
        let degs = poly.degrees(&weights);
        if degs.len() > 1 {
            return Err(CohringError::NonHomogeneous {
                relation: r.clone(),
            });
        }
        if let Some(&d) = degs.first() {
            relations.push((d, poly));
        }
    }

    let mut pieces = BTreeMap::new();
    for degree in (0..=p.top_degree).step_by(2) {
        let monomials = monomials_of_degree(&weights, degree);
        if monomials.is_empty() {
            continue;
        }
        let index: HashMap<Exponents, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut rows = Vec::new();
        for (rd, rel) in &relations {
            if *rd > degree {
                continue;
            }
            for m in monomials_of_degree(&weights, degree - rd) {
                let prod = rel.mul(&Poly::monomial(m, Rational::one()));
                let mut row = vec![Rational::zero(); monomials.len()];
                for (e, c) in prod.terms() {
                    row[index[e]] = c.clone();
                }
                rows.push(row);
            }
        }
        let ech = Matrix::from_rows(monomials.len(), rows).echelon();
        let mut basis: Vec<usize> = (0..monomials.len())
            .filter(|c| !ech.pivots().contains(c))
            .collect();
        basis.reverse();
        let coords = (0..monomials.len())
            .map(|j| {
                let mut unit = vec![Rational::zero(); monomials.len()];
                unit[j] = Rational::one();
                let red = ech.reduce(&unit);
                basis.iter().map(|&b| red[b].clone()).collect()
            })
            .collect();
        pieces.insert(
            degree,
            Piece {
                monomials,
                index,
                basis,
                coords,
            },
        );
    }
    let ring = GradedRing {
        presentation: p.clone(),
        names,
        weights,
        pieces,
    };
    if ring.dim(0) != 1 {
        return Err(CohringError::Degenerate);
    }
    Ok(Arc::new(ring))
}

impl GradedRing {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn top_degree(&self) -> u32 {
        self.presentation.top_degree
    }

    pub fn dim(&self, degree: u32) -> usize {
        self.pieces.get(&degree).map_or(0, |p| p.basis.len())
    }

    /// Dimensions of the even-degree pieces `0, 2, ..., top`.
    pub fn dims(&self) -> Vec<usize> {
        (0..=self.top_degree())
            .step_by(2)
            .map(|d| self.dim(d))
            .collect()
    }

    /// Basis monomials of a degree, in display order.
    pub fn basis(&self, degree: u32) -> Vec<Exponents> {
        self.pieces.get(&degree).map_or_else(Vec::new, |p| {
            p.basis.iter().map(|&b| p.monomials[b].clone()).collect()
        })
    }

    /// Basis monomials rendered with generator names.
    pub fn basis_names(&self, degree: u32) -> Vec<String> {
        self.basis(degree)
            .iter()
            .map(|e| format_terms(&[(e.clone(), Rational::one())], &self.names))
            .collect()
    }

    /// Basis coordinates of a raw monomial; `None` above the top degree.
    fn monomial_coords(&self, exps: &[u32]) -> Option<(u32, &[Rational])> {
        let degree = Poly::weight(exps, &self.weights);
        let piece = self.pieces.get(&degree)?;
        let i = piece.index[exps];
        Some((degree, &piece.coords[i]))
    }

    pub fn same_as(&self, other: &GradedRing) -> bool {
        std::ptr::eq(self, other) || self.presentation == other.presentation
    }

    /// Graded dims as Borel-Moore data of a smooth compact space: degree 2k
    /// classes carry twist k.
    pub fn poincare_twisted(&self) -> TwistedDims {
        let mut t = TwistedDims::new();
        for (&d, p) in &self.pieces {
            t.add(d as i64, (d / 2) as i64, p.basis.len() as u64);
        }
        t
    }

    pub fn normal_form(self: &Arc<Self>, raw: &Poly) -> NormalForm {
        assert_eq!(raw.nvars(), self.names.len(), "polynomial arity");
        let mut comps: BTreeMap<u32, Vec<Rational>> = BTreeMap::new();
        let mut truncated_terms = 0;
        for (e, c) in raw.terms() {
            match self.monomial_coords(e) {
                None => truncated_terms += 1,
                Some((d, coords)) => {
                    let slot = comps
                        .entry(d)
                        .or_insert_with(|| vec![Rational::zero(); coords.len()]);
                    for (s, x) in slot.iter_mut().zip(coords) {
                        if !x.is_zero() {
                            *s += c * x;
                        }
                    }
                }
            }
        }
        NormalForm {
            element: RingElement::from_comps(self.clone(), comps),
            truncated_terms,
        }
    }

    pub fn parse_poly(&self, s: &str) -> Result<Poly, CohringError> {
        Poly::parse(s, &self.names).map_err(|e| CohringError::Parse {
            input: s.into(),
            source: e,
        })
    }

    /// Parses and reduces; truncated terms are silently dropped.
    pub fn element(self: &Arc<Self>, s: &str) -> Result<RingElement, CohringError> {
        Ok(self.normal_form(&self.parse_poly(s)?).element)
    }

    pub fn generator(self: &Arc<Self>, i: usize) -> RingElement {
        self.normal_form(&Poly::var(self.names.len(), i)).element
    }

    pub fn monomial(self: &Arc<Self>, exps: &[u32]) -> RingElement {
        self.normal_form(&Poly::monomial(exps.to_vec(), Rational::one()))
            .element
    }
}

/// An element in reduced coordinates.
#[derive(Clone)]
pub struct RingElement {
    ring: Arc<GradedRing>,
    comps: BTreeMap<u32, Vec<Rational>>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.comps == other.comps
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({self})")
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (&d, v) in &self.comps {
            for (e, c) in self.ring.basis(d).into_iter().zip(v) {
                if !c.is_zero() {
                    terms.push((e, c.clone()));
                }
            }
        }
        f.write_str(&format_terms(&terms, &self.ring.names))
    }
}

impl RingElement {
    fn from_comps(ring: Arc<GradedRing>, mut comps: BTreeMap<u32, Vec<Rational>>) -> Self {
        comps.retain(|_, v| v.iter().any(|x| !x.is_zero()));
        RingElement { ring, comps }
    }

    pub fn zero(ring: &Arc<GradedRing>) -> Self {
        RingElement {
            ring: ring.clone(),
            comps: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<GradedRing>) -> Self {
        Self::scalar(ring, Rational::one())
    }

    pub fn scalar(ring: &Arc<GradedRing>, c: Rational) -> Self {
        Self::from_comps(ring.clone(), BTreeMap::from([(0, vec![c])]))
    }

    /// Builds from explicit coordinates; vectors must match the basis sizes.
    pub fn from_coords(
        ring: &Arc<GradedRing>,
        comps: BTreeMap<u32, Vec<Rational>>,
    ) -> Result<Self, CohringError> {
        for (&d, v) in &comps {
            if v.len() != ring.dim(d) {
                return Err(CohringError::CoordinateLength {
                    degree: d,
                    expected: ring.dim(d),
                    found: v.len(),
                });
            }
        }
        Ok(Self::from_comps(ring.clone(), comps))
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.comps.keys().copied().collect()
    }

    /// Coordinates in a degree (zeros when absent).
    pub fn coords(&self, degree: u32) -> Vec<Rational> {
        self.comps
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| vec![Rational::zero(); self.ring.dim(degree)])
    }

    pub fn component(&self, degree: u32) -> RingElement {
        let comps = self
            .comps
            .get(&degree)
            .map(|v| BTreeMap::from([(degree, v.clone())]))
            .unwrap_or_default();
        RingElement {
            ring: self.ring.clone(),
            comps,
        }
    }

    /// True when zero or concentrated in `degree`.
    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.comps.keys().all(|&d| d == degree)
    }

    pub fn require_degree(&self, degree: u32) -> Result<(), CohringError> {
        if self.is_homogeneous_of(degree) {
            Ok(())
        } else {
            Err(CohringError::NotHomogeneous {
                degree,
                element: self.to_string(),
            })
        }
    }

    pub fn check_ring(&self, ring: &GradedRing) -> Result<(), CohringError> {
        if self.ring.same_as(ring) {
            Ok(())
        } else {
            Err(CohringError::RingMismatch)
        }
    }

    fn assert_same(&self, other: &RingElement) {
        assert!(
            self.ring.same_as(&other.ring),
            "arithmetic between elements of different rings"
        );
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        self.assert_same(other);
        let mut comps = self.comps.clone();
        for (&d, v) in &other.comps {
            let slot = comps
                .entry(d)
                .or_insert_with(|| vec![Rational::zero(); v.len()]);
            for (s, x) in slot.iter_mut().zip(v) {
                *s += x;
            }
        }
        Self::from_comps(self.ring.clone(), comps)
    }

    pub fn neg(&self) -> RingElement {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &RingElement) -> RingElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rational) -> RingElement {
        let comps = self
            .comps
            .iter()
            .map(|(&d, v)| (d, v.iter().map(|x| x * k).collect()))
            .collect();
        Self::from_comps(self.ring.clone(), comps)
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        self.assert_same(other);
        let ring = &self.ring;
        let mut comps: BTreeMap<u32, Vec<Rational>> = BTreeMap::new();
        for (&d1, v1) in &self.comps {
            let b1 = ring.basis(d1);
            for (&d2, v2) in &other.comps {
                let d = d1 + d2;
                if d > ring.top_degree() || ring.dim(d) == 0 {
                    continue;
                }
                let b2 = ring.basis(d2);
                let slot = comps
                    .entry(d)
                    .or_insert_with(|| vec![Rational::zero(); ring.dim(d)]);
                for (e1, c1) in b1.iter().zip(v1) {
                    if c1.is_zero() {
                        continue;
                    }
                    for (e2, c2) in b2.iter().zip(v2) {
                        if c2.is_zero() {
                            continue;
                        }
                        let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                        let (_, coords) = ring.monomial_coords(&e).expect("degree within top");
                        let k = c1 * c2;
                        for (s, x) in slot.iter_mut().zip(coords) {
                            if !x.is_zero() {
                                *s += &k * x;
                            }
                        }
                    }
                }
            }
        }
        Self::from_comps(ring.clone(), comps)
    }

    pub fn pow(&self, k: u32) -> RingElement {
        let mut out = RingElement::one(&self.ring);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `{degree: ["num/den", ...]}` serialization.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .comps
            .iter()
            .map(|(d, v)| {
                (
                    d.to_string(),
                    serde_json::Value::Array(
                        v.iter()
                            .map(|x| serde_json::Value::String(fmt_rational(x)))
                            .collect(),
                    ),
                )
            })
            .collect();
        serde_json::Value::Object(map)
    }
}

/// A degree-preserving algebra map between presented rings.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: Arc<GradedRing>,
    target: Arc<GradedRing>,
    images: Vec<RingElement>,
}

impl RingMap {
    pub fn new(
        source: &Arc<GradedRing>,
        target: &Arc<GradedRing>,
        images: Vec<RingElement>,
    ) -> Result<Self, CohringError> {
        if images.len() != source.names.len() {
            return Err(CohringError::ImageCount {
                expected: source.names.len(),
                found: images.len(),
            });
        }
        for (img, &w) in images.iter().zip(&source.weights) {
            img.check_ring(target)?;
            img.require_degree(w)?;
        }
        let map = RingMap {
            source: source.clone(),
            target: target.clone(),
            images,
        };
        for rel in &source.presentation.relations {
            let poly = source.parse_poly(rel)?;
            let image = map.apply_poly(&poly);
            if !image.is_zero() {
                return Err(CohringError::RelationNotKilled {
                    relation: rel.clone(),
                    image: image.to_string(),
                });
            }
        }
        // Everything the source truncates must also die in the target.
        for degree in (source.top_degree() + 1)..=target.top_degree() {
            for m in monomials_of_degree(&source.weights, degree) {
                let image = map.apply_poly(&Poly::monomial(m.clone(), Rational::one()));
                if !image.is_zero() {
                    let name = format_terms(&[(m, Rational::one())], &source.names);
                    return Err(CohringError::RelationNotKilled {
                        relation: format!("{name} (above top degree)"),
                        image: image.to_string(),
                    });
                }
            }
        }
        Ok(map)
    }

    /// Images given as strings parsed in the target ring.
    pub fn from_strs(
        source: &Arc<GradedRing>,
        target: &Arc<GradedRing>,
        images: &[&str],
    ) -> Result<Self, CohringError> {
        let imgs = images
            .iter()
            .map(|s| target.element(s))
            .collect::<Result<Vec<_>, _>>()?;
        RingMap::new(source, target, imgs)
    }

    pub fn source(&self) -> &Arc<GradedRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedRing> {
        &self.target
    }

    pub fn images(&self) -> &[RingElement] {
        &self.images
    }

    fn image_of_monomial(&self, exps: &[u32]) -> RingElement {
        let mut out = RingElement::one(&self.target);
        for (img, &e) in self.images.iter().zip(exps) {
            if e > 0 {
                out = out.mul(&img.pow(e));
            }
        }
        out
    }

    /// Substitutes generator images into a raw source polynomial.
    pub fn apply_poly(&self, p: &Poly) -> RingElement {
        let mut out = RingElement::zero(&self.target);
        for (e, c) in p.terms() {
            out = out.add(&self.image_of_monomial(e).scale(c));
        }
        out
    }

    pub fn apply(&self, x: &RingElement) -> Result<RingElement, CohringError> {
        x.check_ring(&self.source)?;
        let mut out = RingElement::zero(&self.target);
        for (&d, v) in &x.comps {
            for (e, c) in self.source.basis(d).iter().zip(v) {
                if !c.is_zero() {
                    out = out.add(&self.image_of_monomial(e).scale(c));
                }
            }
        }
        Ok(out)
    }

    /// Matrix of the map on one degree: columns are source basis vectors.
    pub fn matrix(&self, degree: u32) -> Matrix {
        let src = self.source.basis(degree);
        let mut m = Matrix::zeros(self.target.dim(degree), src.len());
        for (j, e) in src.iter().enumerate() {
            let img = self.image_of_monomial(e).coords(degree);
            for (i, x) in img.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }
}

/// A ring endomorphism squaring to the identity.
#[derive(Clone, Debug)]
pub struct Involution {
    map: RingMap,
}

impl Involution {
    pub fn new(map: RingMap) -> Result<Self, CohringError> {
        if !map.source.same_as(&map.target) {
            return Err(CohringError::NotInvolution(
                "source and target differ".into(),
            ));
        }
        for (i, img) in map.images.iter().enumerate() {
            let back = map.apply(img)?;
            if back != map.source.generator(i) {
                return Err(CohringError::NotInvolution(format!(
                    "{} maps back to {}",
                    map.source.names[i], back
                )));
            }
        }
        Ok(Involution { map })
    }

    pub fn map(&self) -> &RingMap {
        &self.map
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.map.source
    }
}
