//! The family `z² + λ s z + t = 0` of double covers in characteristic 2, its
//! normality diagnostics, and the lift of numerical data to characteristic 0.

use horikawa_polyalg::{gcd, square_part, Field, Gf2k, Poly2, Rationals};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::charts::{fits_section, section_monomials, Chart, ChartAtlas, AFFINE_VARS};
use crate::cohomology::{cohomology, CechOracle, CohomologyVector, OracleField};
use crate::cover::{invariants, omega_class, CoverInvariants, DoubleCoverDatum};
use crate::error::{HorikawaError, Result};
use crate::lattice::{canonical_class, intersect, DivisorClass};

/// Redraws allowed before [`draw_sections`] gives up.
pub const MAX_DRAWS: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDatum {
    pub cover: DoubleCoverDatum,
    pub lambda: u64,
}

impl FamilyDatum {
    /// Member `λ` of the family through the sections `s, t` of `cover`.
    pub fn new(cover: DoubleCoverDatum, lambda: u64) -> Result<Self> {
        let Some(sec) = &cover.sections else {
            return Err(HorikawaError::InvalidInput("the family needs explicit sections".into()));
        };
        if sec.f.field().element(lambda).is_none() {
            return Err(HorikawaError::InvalidInput(format!(
                "lambda = {lambda} is not in {}",
                sec.f.field().spec()
            )));
        }
        Ok(FamilyDatum { cover, lambda })
    }

    pub fn field(&self) -> Gf2k {
        *self.s().field()
    }

    pub fn s(&self) -> &Poly2<Gf2k> {
        &self.cover.sections.as_ref().expect("checked in new").f
    }

    pub fn t(&self) -> &Poly2<Gf2k> {
        &self.cover.sections.as_ref().expect("checked in new").g
    }

    /// `λ s`, the linear coefficient of the member.
    pub fn f(&self) -> Poly2<Gf2k> {
        self.s().scale(&self.lambda)
    }
}

pub fn is_separable(f: &FamilyDatum) -> bool {
    f.lambda != 0 && !f.s().is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Normality {
    Ok,
    SingularAlongDivisor { chart: Chart, witness: String },
}

impl Normality {
    pub fn is_ok(&self) -> bool {
        matches!(self, Normality::Ok)
    }
}

/// Largest `h` dividing `f` with `h² | g`; for `f = 0` the largest `h` with
/// `h² | g`. The cover `z² + fz + g` is normal over the chart iff `h` is a unit.
pub fn normality_witness<F: Field>(f: &Poly2<F>, g: &Poly2<F>) -> Poly2<F> {
    if g.is_zero() {
        // z(z + f): two sheets meeting along f = 0, or a double sheet
        return if f.is_zero() { Poly2::zero(f.field().clone(), f.vars()) } else { f.monic() };
    }
    gcd(f, &square_part(g))
}

/// Per-chart test on sections of `L` and `2L` given in chart `A`.
pub fn normality_diagnostics(l: &DivisorClass, f: &Poly2<Gf2k>, g: &Poly2<Gf2k>) -> Result<Normality> {
    let atlas = ChartAtlas::new(l.surface());
    let l2 = l.scale(2);
    for &chart in atlas.charts() {
        let fc = atlas
            .section_in_chart(l, f, chart)
            .ok_or_else(|| HorikawaError::InvalidInput(format!("{f} is not a section of {l}")))?;
        let gc = atlas
            .section_in_chart(&l2, g, chart)
            .ok_or_else(|| HorikawaError::InvalidInput(format!("{g} is not a section of {l2}")))?;
        let h = normality_witness(&fc, &gc);
        if !h.is_unit() {
            return Ok(Normality::SingularAlongDivisor {
                chart,
                witness: h.to_string(),
            });
        }
    }
    Ok(Normality::Ok)
}

fn random_section<R: Rng>(field: Gf2k, class: &DivisorClass, rng: &mut R) -> Poly2<Gf2k> {
    let order = field.order();
    Poly2::from_terms(
        field,
        AFFINE_VARS,
        section_monomials(class).into_iter().map(|e| (e, rng.gen_range(0..order))),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionDraw {
    pub cover: DoubleCoverDatum,
    pub draws: usize,
    pub seed: u64,
}

/// Sections `s ∈ H⁰(L)`, `t ∈ H⁰(2L)` with coefficients uniform in `field`,
/// redrawn until `s ≠ 0` and `t` has no square factor on any chart, so every
/// member of the family passes [`normality_diagnostics`].
pub fn draw_sections(l: &DivisorClass, field: Gf2k, seed: u64) -> Result<SectionDraw> {
    if section_monomials(l).is_empty() {
        return Err(HorikawaError::InvalidInput(format!("{l} has no sections")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = Poly2::zero(field, AFFINE_VARS);
    let l2 = l.scale(2);
    for draws in 1..=MAX_DRAWS {
        let s = random_section(field, l, &mut rng);
        let t = random_section(field, &l2, &mut rng);
        if s.is_zero() || t.is_zero() {
            continue;
        }
        if normality_diagnostics(l, &zero, &t)?.is_ok() {
            return Ok(SectionDraw {
                cover: DoubleCoverDatum::with_sections(l.clone(), s, t)?,
                draws,
                seed,
            });
        }
    }
    Err(HorikawaError::Refused(format!(
        "no squarefree section of {l2} in {MAX_DRAWS} draws"
    )))
}

/// Nonzero sections with uniform coefficients and no normality condition.
pub fn seeded_sections(l: &DivisorClass, field: Gf2k, seed: u64) -> Result<DoubleCoverDatum> {
    if section_monomials(l).is_empty() {
        return Err(HorikawaError::InvalidInput(format!("{l} has no sections")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let s = random_section(field, l, &mut rng);
        let t = random_section(field, &l.scale(2), &mut rng);
        if !s.is_zero() && !t.is_zero() {
            return DoubleCoverDatum::with_sections(l.clone(), s, t);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub lambda: String,
    pub is_separable: bool,
    pub normality: Normality,
    pub invariants: CoverInvariants,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub field: String,
    pub s: String,
    pub t: String,
    pub rows: Vec<SweepRow>,
    pub invariants_constant: bool,
}

pub fn lambda_sweep(cover: &DoubleCoverDatum, values: &[u64]) -> Result<SweepReport> {
    let Some(sec) = &cover.sections else {
        return Err(HorikawaError::InvalidInput("the sweep needs explicit sections".into()));
    };
    let field = *sec.f.field();
    let mut rows = Vec::with_capacity(values.len());
    for &lambda in values {
        let member = FamilyDatum::new(cover.clone(), lambda)?;
        rows.push(SweepRow {
            lambda: field.format_elem(&lambda),
            is_separable: is_separable(&member),
            normality: normality_diagnostics(&cover.l, &member.f(), member.t())?,
            invariants: invariants(&member.cover)?,
        });
    }
    let invariants_constant = rows.windows(2).all(|w| w[0].invariants == w[1].invariants);
    Ok(SweepReport {
        field: field.spec().to_string(),
        s: sec.f.to_string(),
        t: sec.g.to_string(),
        rows,
        invariants_constant,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BundleLift {
    pub bundle: &'static str,
    pub class: DivisorClass,
    pub formula: CohomologyVector,
    pub rational: CohomologyVector,
    pub mod2: CohomologyVector,
    pub preserved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionLift {
    pub s: String,
    pub t: String,
    pub degree_bounds_hold: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    #[serde(rename = "L")]
    pub l: DivisorClass,
    pub bundles: Vec<BundleLift>,
    pub sections: Option<SectionLift>,
    pub invariants: CoverInvariants,
    /// `(K², p_g, χ)` rebuilt from the rational cohomology.
    pub char0_invariants: (i64, u64, i64),
    pub passed: bool,
}

/// Bound for the lift oracle; `2L` reaches `6Δ₀ + 32Γ` at `p_g = 12`.
pub const LIFT_CECH_LIMIT: i64 = 64;

pub fn lift_check(c: &DoubleCoverDatum) -> Result<LiftReport> {
    let hl = cohomology(&c.l)?;
    if hl.h1 != 0 {
        return Err(HorikawaError::Refused(format!(
            "h1(L) = {} for L = {}; sections need not lift",
            hl.h1, c.l
        )));
    }
    let over_q = CechOracle::with_limit(LIFT_CECH_LIMIT);
    let over_2 = over_q.over(OracleField::Gf2);
    let omega = omega_class(c);
    let mut bundles = Vec::new();
    for (bundle, class) in [("L", c.l.clone()), ("2L", c.l.scale(2)), ("K+L", omega.clone())] {
        let formula = cohomology(&class)?;
        let rational = over_q.compute(&class)?;
        let mod2 = over_2.compute(&class)?;
        bundles.push(BundleLift {
            bundle,
            preserved: formula == rational && rational == mod2,
            class,
            formula,
            rational,
            mod2,
        });
    }
    let sections = match &c.sections {
        None => None,
        Some(sec) => {
            if sec.f.field().degree() != 1 {
                return Err(HorikawaError::InvalidInput(format!(
                    "lifting needs sections over GF(2), got {}",
                    sec.f.field().spec()
                )));
            }
            // GF(2) = {0, 1} ⊂ Z
            let lift = |a: &u64| Rationals.from_ratio(*a as i64, 1).expect("integer");
            let s = sec.f.map_coeffs(Rationals, lift);
            let t = sec.g.map_coeffs(Rationals, lift);
            let degree_bounds_hold = fits_section(&c.l, &s)
                && fits_section(&c.l.scale(2), &t)
                && s.num_terms() == sec.f.num_terms()
                && t.num_terms() == sec.g.num_terms();
            Some(SectionLift {
                s: s.to_string(),
                t: t.to_string(),
                degree_bounds_hold,
            })
        }
    };
    let inv = invariants(c)?;
    let k = canonical_class(c.base());
    let rational_omega = &bundles[2].rational;
    let ksq = 2 * intersect(&omega, &omega)?;
    let pg = rational_omega.h0 + over_q.compute(&k)?.h0;
    // χ(O_X) = χ(O_S) + χ(-L) and χ(-L) = χ(K+L)
    let chi = 1 + rational_omega.chi;
    let char0_invariants = (ksq, pg, chi);
    let passed = bundles.iter().all(|b| b.preserved)
        && sections.as_ref().map_or(true, |s| s.degree_bounds_hold)
        && char0_invariants == (inv.ksq, inv.pg, inv.chi);
    Ok(LiftReport {
        l: c.l.clone(),
        bundles,
        sections,
        invariants: inv,
        char0_invariants,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use horikawa_polyalg::parse_poly;

    fn gf(k: u32) -> Gf2k {
        Gf2k::new(k).unwrap()
    }

    fn p(f: Gf2k, s: &str) -> Poly2<Gf2k> {
        parse_poly(&f, AFFINE_VARS, s).unwrap()
    }

    #[test]
    fn witness_examples() {
        let f = gf(1);
        let zero = Poly2::zero(f, AFFINE_VARS);
        assert_eq!(normality_witness(&zero, &p(f, "(t+1)^2*x")), p(f, "t+1"));
        assert!(normality_witness(&p(f, "x"), &p(f, "t")).is_unit());
        assert_eq!(normality_witness(&p(f, "x"), &p(f, "x^2*t")), p(f, "x"));
        // h² | g but h does not divide f
        assert!(normality_witness(&p(f, "x"), &p(f, "(t+1)^2*x")).is_unit());
    }

    #[test]
    fn separability_flag() {
        let f = gf(2);
        let l = DivisorClass::hirzebruch(0, 3, 3);
        let cover = DoubleCoverDatum::with_sections(l.clone(), p(f, "x*t + 1"), p(f, "x^2 + t + 1")).unwrap();
        assert!(!is_separable(&FamilyDatum::new(cover.clone(), 0).unwrap()));
        assert!(is_separable(&FamilyDatum::new(cover.clone(), 1).unwrap()));
        assert!(is_separable(&FamilyDatum::new(cover, 2).unwrap()));
        let flat = DoubleCoverDatum::with_sections(l, Poly2::zero(f, AFFINE_VARS), p(f, "t")).unwrap();
        assert!(!is_separable(&FamilyDatum::new(flat, 1).unwrap()));
    }

    #[test]
    fn double_fibre_is_caught_off_chart_a() {
        // squarefree in chart A, but t2² divides it in chart C: 2L = 6Δ₀ + 6Γ
        let f = gf(1);
        let l = DivisorClass::hirzebruch(0, 3, 3);
        let g = p(f, "t^4 + x^6 + x");
        let zero = Poly2::zero(f, AFFINE_VARS);
        match normality_diagnostics(&l, &zero, &g).unwrap() {
            Normality::SingularAlongDivisor { chart, witness } => {
                assert_eq!((chart, witness.as_str()), (Chart::C, "t2"))
            }
            Normality::Ok => panic!("t2² divides g in chart C"),
        }
    }

    #[test]
    fn sweep_on_f0() {
        let l = DivisorClass::hirzebruch(0, 3, 3);
        let draw = draw_sections(&l, gf(2), 7).unwrap();
        let r = lambda_sweep(&draw.cover, &[0, 1, 2]).unwrap();
        assert!(r.invariants_constant);
        assert_eq!((r.rows[0].invariants.ksq, r.rows[0].invariants.pg), (4, 4));
        let sep: Vec<bool> = r.rows.iter().map(|row| row.is_separable).collect();
        assert_eq!(sep, [false, true, true]);
        assert!(r.rows.iter().all(|row| row.normality.is_ok()));
    }

    #[test]
    fn draws_are_reproducible() {
        let l = DivisorClass::plane(4);
        let a = draw_sections(&l, gf(2), 11).unwrap();
        let b = draw_sections(&l, gf(2), 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn lift_examples() {
        let r = lift_check(&DoubleCoverDatum::new(DivisorClass::plane(4))).unwrap();
        assert!(r.passed);
        assert_eq!(r.bundles[0].rational.h0, 15);
        assert_eq!(r.char0_invariants, (2, 3, 4));
        let r = lift_check(&DoubleCoverDatum::new(DivisorClass::hirzebruch(2, 3, 7))).unwrap();
        assert!(r.passed);
        assert!(matches!(
            lift_check(&DoubleCoverDatum::new(DivisorClass::hirzebruch(2, 1, -1))),
            Err(HorikawaError::Refused(_))
        ));
    }

    #[test]
    fn lifted_sections_keep_their_support() {
        let l = DivisorClass::hirzebruch(1, 3, 5);
        let draw = draw_sections(&l, gf(1), 3).unwrap();
        let r = lift_check(&draw.cover).unwrap();
        assert!(r.sections.unwrap().degree_bounds_hold);
        assert!(r.passed);
    }
}
