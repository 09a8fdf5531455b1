//! Rational vector fields on `P²` and `F_d` in characteristic 2.
//!
//! A field is given by its components `(U, V)` on `∂/∂x, ∂/∂t` in chart `A`
//! and transported to the other charts. Per chart it is saturated: the
//! components are multiplied by a clearing factor `F` that leaves a coprime
//! polynomial pair. The divisor class `(η)` is assembled from the clearing
//! factors along the curves outside chart `A`, and the isolated zeros come
//! from the saturated pairs.
//!
//! The main family is
//!
//! ```text
//! η = x^-4 ∂/∂x + ψ(t) ∂/∂t,   ψ = Π (t - b_j)² / Π (t - a_i)²
//! ```
//!
//! on `F_d` with `d` even, with fibre order `e = 2ℓ - 2m + 2` at `t = ∞` and
//! case value `c = 5d - e`.

use std::collections::BTreeMap;

use horikawa_polyalg::{
    gcd, rational_points_of_system, Field, Gf2k, MonomialMap, Poly2, RatFn, TruncationBound, Vars,
};
use serde::Serialize;

use crate::charts::{Chart, ChartAtlas, AFFINE_VARS};
use crate::classify::{enumerate, hirzebruch_branch_class};
use crate::cover::{invariants, noether_check, CoverInvariants, DoubleCoverDatum, NoetherPosition};
use crate::error::{HorikawaError, Result};
use crate::lattice::{canonical_class, chern_numbers, intersect, CanonicalImage, DivisorClass, SurfaceModel};

type Rf = RatFn<Gf2k>;

/// Components of a field on one chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartField {
    pub chart: Chart,
    pub vars: Vars,
    pub u: Rf,
    pub v: Rf,
}

impl ChartField {
    fn apply(&self, f: &Rf) -> Rf {
        self.u.mul(&f.derivative0()).add(&self.v.mul(&f.derivative1()))
    }

    /// `η^[2]` vanishes on both coordinates.
    pub fn is_additive(&self) -> bool {
        self.apply(&self.u).is_zero() && self.apply(&self.v).is_zero()
    }
}

/// Rewrites `U ∂/∂w0 + V ∂/∂w1` in coordinates `z_k = w^{p[k]}`.
fn transport(u: &Rf, v: &Rf, p: [[i64; 2]; 2], target: Vars) -> (Rf, Rf) {
    let field = *u.field();
    let back = MonomialMap(p).inverse().expect("unimodular chart change");
    let comp = |row: [i64; 2]| {
        let along_u = u.mul_laurent([-1, 0]).scale(&field.from_ratio(row[0], 1).expect("integer"));
        let along_v = v.mul_laurent([0, -1]).scale(&field.from_ratio(row[1], 1).expect("integer"));
        along_u
            .add(&along_v)
            .mul_laurent(row)
            .substitute_monomial(&back, target)
    };
    (comp(p[0]), comp(p[1]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalVectorField {
    pub atlas: ChartAtlas,
    pub field: Gf2k,
    pub charts: Vec<ChartField>,
}

impl RationalVectorField {
    /// The field with chart-`A` components `u ∂/∂x + v ∂/∂t`.
    pub fn new(surface: SurfaceModel, u: Rf, v: Rf) -> Result<Self> {
        if u.field() != v.field() {
            return Err(HorikawaError::InvalidInput("components over different fields".into()));
        }
        let field = *u.field();
        let atlas = ChartAtlas::new(surface);
        let u = u.substitute_monomial(&MonomialMap::IDENTITY, AFFINE_VARS);
        let v = v.substitute_monomial(&MonomialMap::IDENTITY, AFFINE_VARS);
        let charts = atlas
            .charts()
            .iter()
            .map(|&chart| {
                let vars = atlas.vars(chart);
                let (cu, cv) = if chart == Chart::A {
                    (u.clone(), v.clone())
                } else {
                    transport(&u, &v, atlas.coordinates(chart), vars)
                };
                ChartField {
                    chart,
                    vars,
                    u: cu,
                    v: cv,
                }
            })
            .collect();
        Ok(RationalVectorField {
            atlas,
            field,
            charts,
        })
    }

    pub fn surface(&self) -> SurfaceModel {
        self.atlas.surface
    }

    pub fn chart(&self, chart: Chart) -> &ChartField {
        self.charts.iter().find(|c| c.chart == chart).expect("chart of this atlas")
    }

    pub fn is_zero(&self) -> bool {
        let a = self.chart(Chart::A);
        a.u.is_zero() && a.v.is_zero()
    }

    /// Transports the components of `chart` back to chart `A`; they must agree
    /// with the stored chart-`A` components.
    pub fn round_trip(&self, chart: Chart) -> bool {
        let c = self.chart(chart);
        let (u, v) = transport(&c.u, &c.v, self.atlas.transition(chart, Chart::A), AFFINE_VARS);
        let a = self.chart(Chart::A);
        u == a.u && v == a.v
    }
}

/// `η^[2] = 0` on every chart.
pub fn check_additive(v: &RationalVectorField) -> bool {
    v.charts.iter().all(ChartField::is_additive)
}

/// Coprime polynomial pair `F·(U, V)` on one chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Saturated {
    pub chart: Chart,
    pub a: Poly2<Gf2k>,
    pub b: Poly2<Gf2k>,
    pub clearing: Rf,
}

pub fn saturate(c: &ChartField) -> Result<Saturated> {
    if c.u.is_zero() && c.v.is_zero() {
        return Err(HorikawaError::InvalidInput("the zero vector field".into()));
    }
    let (d1, d2) = (c.u.den(), c.v.den());
    let common = gcd(d1, d2);
    let lcm = d1.mul(&d2.div_exact(&common).expect("gcd divides"));
    let p1 = c.u.num().mul(&lcm.div_exact(d1).expect("lcm"));
    let p2 = c.v.num().mul(&lcm.div_exact(d2).expect("lcm"));
    let g = gcd(&p1, &p2);
    Ok(Saturated {
        chart: c.chart,
        a: p1.div_exact(&g).expect("gcd divides"),
        b: p2.div_exact(&g).expect("gcd divides"),
        clearing: RatFn::new(lcm, g),
    })
}

fn axis_order(f: &Rf, axis: usize) -> Result<i64> {
    let o = if axis == 0 { f.valuation0() } else { f.valuation1() };
    o.ok_or_else(|| HorikawaError::Inconsistent("order of a zero function".into()))
}

/// The class of `(η)`: along each curve `E` outside chart `A` the coefficient is
/// `ord_E(F_A) - ord_E(F_E)`, since `-div(F_A)` restricted to chart `A` is
/// linearly equivalent to `Σ ord_E(F_A) E`.
pub fn divisor_class(v: &RationalVectorField) -> Result<DivisorClass> {
    if v.is_zero() {
        return Err(HorikawaError::InvalidInput("the zero vector field".into()));
    }
    let atlas = v.atlas;
    let f_a = saturate(v.chart(Chart::A))?.clearing;
    let mut class = DivisorClass::zero(v.surface());
    for curve in atlas.boundary() {
        let seen_from_a = f_a.substitute_monomial(&atlas.from_affine(curve.chart), atlas.vars(curve.chart));
        let local = saturate(v.chart(curve.chart))?.clearing;
        let coeff = axis_order(&seen_from_a, curve.axis)? - axis_order(&local, curve.axis)?;
        class = &class + &curve.class.scale(coeff);
    }
    Ok(class)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    Smooth,
    Elliptic,
    Other(i64),
}

impl CaseTag {
    pub fn from_value(c: i64) -> Self {
        match c {
            0 => CaseTag::Smooth,
            4 => CaseTag::Elliptic,
            other => CaseTag::Other(other),
        }
    }
}

/// One Galois orbit of isolated zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroRecord {
    pub chart: Chart,
    /// Coordinates in `GF(2^field_degree)`, printed in its generator `g`.
    pub field_degree: u32,
    pub point: [String; 2],
    /// The same point in the ground field, when rational.
    pub rational_point: Option<[String; 2]>,
    /// Whether both coordinates vanish (the chart origin).
    pub at_origin: bool,
    pub multiplicity: usize,
    pub residue_degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityReport {
    pub divisor_class: DivisorClass,
    pub zeros: Vec<ZeroRecord>,
    pub total_multiplicity: usize,
    pub case_value: Option<i64>,
    pub case_tag: Option<CaseTag>,
}

impl SingularityReport {
    /// Multiplicity → number of geometric points with it.
    pub fn profile(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for z in &self.zeros {
            *out.entry(z.multiplicity).or_insert(0) += z.residue_degree as usize;
        }
        out
    }

    pub fn geometric_point_count(&self) -> usize {
        self.zeros.iter().map(|z| z.residue_degree as usize).sum()
    }
}

pub fn singular_points(v: &RationalVectorField) -> Result<SingularityReport> {
    let divisor_class = divisor_class(v)?;
    let atlas = v.atlas;
    let base = v.field;
    let mut zeros = Vec::new();
    for (k, &chart) in atlas.charts().iter().enumerate() {
        let sat = saturate(v.chart(chart))?;
        if sat.a.is_zero() || sat.b.is_zero() {
            let other = if sat.a.is_zero() { &sat.b } else { &sat.a };
            if other.is_constant() {
                continue;
            }
            return Err(HorikawaError::Poly(horikawa_polyalg::PolyError::PositiveDimensional(
                other.to_string(),
            )));
        }
        let points = rational_points_of_system(&sat.a, &sat.b, TruncationBound::default())?;
        for p in points {
            let zero = [p.coords[0] == 0, p.coords[1] == 0];
            if atlas.charts()[..k].iter().any(|&earlier| atlas.contains(chart, zero, earlier)) {
                continue;
            }
            let big = Gf2k::new(p.field_degree)?;
            zeros.push(ZeroRecord {
                chart,
                field_degree: p.field_degree,
                point: [big.format_elem(&p.coords[0]), big.format_elem(&p.coords[1])],
                rational_point: p
                    .base_coords
                    .map(|c| [base.format_elem(&c[0]), base.format_elem(&c[1])]),
                at_origin: zero[0] && zero[1],
                multiplicity: p.multiplicity,
                residue_degree: p.residue_degree,
            });
        }
    }
    let total_multiplicity = zeros.iter().map(|z| z.multiplicity * z.residue_degree as usize).sum();
    Ok(SingularityReport {
        divisor_class,
        zeros,
        total_multiplicity,
        case_value: None,
        case_tag: None,
    })
}

/// Expected number of zeros, with multiplicity, of a saturated field with
/// divisor class `d`: `c₂ + (-K)·(-D) + D²`.
pub fn chern_zero_count(s: SurfaceModel, d: &DivisorClass) -> Result<i64> {
    let (_, c2) = chern_numbers(s);
    let k = canonical_class(s);
    Ok(c2 + intersect(&k, d)? + intersect(d, d)?)
}

/// `(d, {a_i}, {b_j})` over a field of characteristic 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoliationRecipe {
    pub d: u32,
    #[serde(skip)]
    pub field: Gf2k,
    pub a_points: Vec<u64>,
    pub b_points: Vec<u64>,
}

impl FoliationRecipe {
    pub fn new(d: u32, field: Gf2k, a_points: Vec<u64>, b_points: Vec<u64>) -> Result<Self> {
        if d % 2 != 0 {
            return Err(HorikawaError::InvalidInput(format!("d = {d} must be even")));
        }
        let mut all: Vec<u64> = a_points.iter().chain(&b_points).copied().collect();
        if let Some(bad) = all.iter().find(|&&p| field.element(p).is_none()) {
            return Err(HorikawaError::InvalidInput(format!(
                "{bad} is not an element of GF(2^{})",
                field.degree()
            )));
        }
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(HorikawaError::InvalidInput(
                "the points a_i and b_j must be pairwise distinct".into(),
            ));
        }
        let r = FoliationRecipe {
            d,
            field,
            a_points,
            b_points,
        };
        let e = r.fibre_order();
        if e < 0 || e > 5 * d as i64 {
            return Err(HorikawaError::InvalidInput(format!(
                "need 0 <= 2l - 2m + 2 <= 5d, got {e} with d = {d}"
            )));
        }
        Ok(r)
    }

    /// The first `ℓ + m` field elements in integer order, over `field` or the
    /// smallest `GF(2^k)` holding them.
    pub fn with_defaults(d: u32, ell: usize, m: usize, field: Option<Gf2k>) -> Result<Self> {
        let field = match field {
            Some(f) => f,
            None => Gf2k::with_at_least(ell + m)?,
        };
        if (field.order() as u128) < (ell + m) as u128 {
            return Err(HorikawaError::InvalidInput(format!(
                "GF(2^{}) has fewer than {} elements",
                field.degree(),
                ell + m
            )));
        }
        let a = (0..ell as u64).collect();
        let b = (ell as u64..(ell + m) as u64).collect();
        FoliationRecipe::new(d, field, a, b)
    }

    pub fn ell(&self) -> usize {
        self.a_points.len()
    }

    pub fn m(&self) -> usize {
        self.b_points.len()
    }

    /// Order of `ψ` at `t = ∞`, `2ℓ - 2m + 2` counted on `∂/∂t₂`.
    pub fn fibre_order(&self) -> i64 {
        2 * self.ell() as i64 - 2 * self.m() as i64 + 2
    }

    /// `5d - 2ℓ + 2m - 2`.
    pub fn case_value(&self) -> i64 {
        5 * self.d as i64 - self.fibre_order()
    }

    pub fn case_tag(&self) -> CaseTag {
        CaseTag::from_value(self.case_value())
    }

    pub fn surface(&self) -> SurfaceModel {
        SurfaceModel::Hirzebruch(self.d)
    }

    /// `-4Δ₀ - (2m - 2 + 4d)Γ`.
    pub fn expected_class(&self) -> DivisorClass {
        DivisorClass::hirzebruch(self.d, -4, -(2 * self.m() as i64 - 2 + 4 * self.d as i64))
    }
}

fn product_of_squares(field: Gf2k, points: &[u64]) -> Poly2<Gf2k> {
    let t = Poly2::var1(field, AFFINE_VARS);
    points.iter().fold(Poly2::one(field, AFFINE_VARS), |acc, &a| {
        let lin = t.sub(&Poly2::constant(field, AFFINE_VARS, a));
        acc.mul(&lin.mul(&lin))
    })
}

/// `η = x^-4 ∂/∂x + ψ(t) ∂/∂t`.
pub fn build_eta(r: &FoliationRecipe) -> Result<RationalVectorField> {
    let f = r.field;
    let one = Poly2::one(f, AFFINE_VARS);
    let u = RatFn::new(one, Poly2::monomial(f, AFFINE_VARS, (4, 0), 1));
    let v = RatFn::new(product_of_squares(f, &r.b_points), product_of_squares(f, &r.a_points));
    RationalVectorField::new(r.surface(), u, v)
}

/// `δ + δ` on `F_0 = P¹ × P¹` over `GF(4)`, where `δ = (x² + x^-4) ∂/∂x`.
pub fn remark_delta() -> RationalVectorField {
    let f = Gf2k::new(2).expect("GF(4)");
    let comp = |e: (u32, u32), sq: (u32, u32)| {
        // (z^6 + 1) / z^4
        let num = Poly2::monomial(f, AFFINE_VARS, e, 1).add(&Poly2::one(f, AFFINE_VARS));
        RatFn::new(num, Poly2::monomial(f, AFFINE_VARS, sq, 1))
    };
    RationalVectorField::new(SurfaceModel::Hirzebruch(0), comp((6, 0), (4, 0)), comp((0, 6), (0, 4)))
        .expect("components over GF(4)")
}

/// Canonical image of the quotient, if it is a Horikawa surface.
fn quotient_image(pg: i64, ksq: i64, d_image: i64) -> Option<CanonicalImage> {
    if pg < 3 || ksq != 2 * pg - 4 {
        return None;
    }
    if pg == 3 {
        return Some(CanonicalImage::SmoothP2 { embedding_degree: 1 });
    }
    if d_image < 0 {
        return None;
    }
    let candidate = if pg >= d_image + 4 {
        CanonicalImage::SmoothHirzebruch { d: d_image as u32 }
    } else {
        CanonicalImage::ConeOverRnc {
            degree: d_image as u32,
        }
    };
    enumerate(pg as u64).ok()?.iter().find(|h| h.image == candidate).map(|h| h.image)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    /// `L = (-K - (η))/2`, the branch class of the quotient over the base.
    #[serde(rename = "L")]
    pub l: DivisorClass,
    /// Invariants of the double cover branched along `L` before the
    /// multiplicity-16 points are taken into account.
    pub cover: CoverInvariants,
    pub elliptic_points: usize,
    pub pg: i64,
    #[serde(rename = "Ksq")]
    pub ksq: i64,
    pub noether: NoetherPosition,
    pub image: Option<CanonicalImage>,
    pub general_type: bool,
    /// `2 K² = (K - (η))²` for the cover.
    pub degree_two_check: bool,
}

/// Quotient invariants from a computed singularity report. Each zero of
/// multiplicity 16 lowers `(p_g, K²)` by `(1, 2)`.
pub fn quotient_from_report(surface: SurfaceModel, report: &SingularityReport) -> Result<QuotientReport> {
    let k = canonical_class(surface);
    let l = (&-&k - &report.divisor_class).halve().ok_or_else(|| {
        HorikawaError::InvalidInput(format!(
            "-K - (η) = {} is not divisible by 2",
            &-&k - &report.divisor_class
        ))
    })?;
    let cover = invariants(&DoubleCoverDatum::new(l.clone()))?;
    let elliptic_points = report.profile().get(&16).copied().unwrap_or(0);
    let pg = cover.pg as i64 - elliptic_points as i64;
    let ksq = cover.ksq - 2 * elliptic_points as i64;
    let kd = &k - &report.divisor_class;
    let d_image = surface.hirzebruch_degree().map_or(-1, |d| d as i64) - elliptic_points as i64;
    let image = quotient_image(pg, ksq, d_image);
    Ok(QuotientReport {
        l,
        cover,
        elliptic_points,
        pg,
        ksq,
        noether: noether_check(ksq, pg.max(0) as u64).position,
        general_type: image.is_some(),
        image,
        degree_two_check: 2 * cover.ksq == kd.self_dot(),
    })
}

/// Everything computed for one recipe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoliationAnalysis {
    pub d: u32,
    pub ell: usize,
    pub m: usize,
    pub field: String,
    pub a_points: Vec<String>,
    pub b_points: Vec<String>,
    pub additive: bool,
    pub expected_class: DivisorClass,
    pub report: SingularityReport,
    pub chern_count: i64,
    pub quotient: Option<QuotientReport>,
    pub warnings: Vec<String>,
}

pub fn analyze(r: &FoliationRecipe) -> Result<FoliationAnalysis> {
    let eta = build_eta(r)?;
    let mut report = singular_points(&eta)?;
    report.case_value = Some(r.case_value());
    report.case_tag = Some(r.case_tag());
    let chern_count = chern_zero_count(r.surface(), &report.divisor_class)?;
    let mut warnings = Vec::new();
    if chern_count != report.total_multiplicity as i64 {
        warnings.push(format!(
            "zero count {} differs from the Chern count {chern_count}",
            report.total_multiplicity
        ));
    }
    let quotient = match r.case_tag() {
        CaseTag::Other(c) => {
            warnings.push(format!(
                "case value {c} is neither 0 nor 4; quotient invariants not derived"
            ));
            None
        }
        _ => Some(quotient_from_report(r.surface(), &report)?),
    };
    if let Some(q) = &quotient {
        if !q.general_type {
            warnings.push(format!("quotient with p_g = {} is not a Horikawa surface", q.pg));
        }
    }
    Ok(FoliationAnalysis {
        d: r.d,
        ell: r.ell(),
        m: r.m(),
        field: r.field.spec().to_string(),
        a_points: r.a_points.iter().map(|a| r.field.format_elem(a)).collect(),
        b_points: r.b_points.iter().map(|b| r.field.format_elem(b)).collect(),
        additive: check_additive(&eta),
        expected_class: r.expected_class(),
        report,
        chern_count,
        quotient,
        warnings,
    })
}

/// Quotient invariants of a recipe in the smooth or elliptic case.
pub fn quotient_invariants(r: &FoliationRecipe) -> Result<QuotientReport> {
    let c = r.case_value();
    if c != 0 && c != 4 {
        return Err(HorikawaError::CaseValue { value: c });
    }
    let report = singular_points(&build_eta(r)?)?;
    quotient_from_report(r.surface(), &report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CatalogEntry {
    Recipe {
        pg: u64,
        image: CanonicalImage,
        d: u32,
        ell: usize,
        m: usize,
        case: CaseTag,
    },
    /// Known construction outside this family; only its numbers are checked.
    Reference {
        pg: u64,
        image: CanonicalImage,
        #[serde(rename = "L")]
        l: DivisorClass,
        invariants: CoverInvariants,
    },
}

/// A construction realising the admissible pair `(pg, image)`.
pub fn catalog_existence(pg: u64, image: CanonicalImage) -> Result<CatalogEntry> {
    let datum = enumerate(pg)?
        .into_iter()
        .find(|h| match (h.image, image) {
            (CanonicalImage::SmoothP2 { .. }, CanonicalImage::SmoothP2 { embedding_degree: 0 }) => true,
            (a, b) => a == b,
        })
        .ok_or_else(|| {
            HorikawaError::InvalidInput(format!("({pg}, {image}) is not an admissible pair"))
        })?;
    let Some(d) = datum.d else {
        let inv = invariants(&datum.cover())?;
        return Ok(CatalogEntry::Reference {
            pg,
            image: datum.image,
            l: datum.l,
            invariants: inv,
        });
    };
    let (pg, di) = (pg as i64, d as i64);
    let (rd, ell, m, case) = if (pg - di) % 2 == 0 && di % 2 == 0 {
        let m = (pg + 2 - 2 * di) / 2;
        (di, (5 * di + 2 * m - 2) / 2, m, CaseTag::Smooth)
    } else {
        let rd = di + 1;
        let m = (pg + 1 - 2 * di) / 2;
        (rd, (5 * rd + 2 * m - 6) / 2, m, CaseTag::Elliptic)
    };
    if m < 0 || ell < 0 {
        return Err(HorikawaError::Inconsistent(format!(
            "negative point counts (l, m) = ({ell}, {m}) for ({pg}, {image})"
        )));
    }
    Ok(CatalogEntry::Recipe {
        pg: pg as u64,
        image: datum.image,
        d: rd as u32,
        ell: ell as usize,
        m: m as usize,
        case,
    })
}

/// `3Δ₀ + (p_g + 2 + 3d)/2 Γ` recovered from a smooth-case recipe.
pub fn recipe_branch_class(r: &FoliationRecipe) -> Option<DivisorClass> {
    let pg = 2 * r.m() as i64 - 2 + 2 * r.d as i64;
    if pg < 0 {
        return None;
    }
    hirzebruch_branch_class(pg as u64, r.d)
}
