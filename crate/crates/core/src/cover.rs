//! Numerical invariants of a flat double cover `π: X → S` with branch data
//! `L`, where `π_* O_X = O_S ⊕ L^∨` and `ω_X = π^*(ω_S ⊗ L)`.

use horikawa_polyalg::{Gf2k, Poly2};
use serde::Serialize;

use crate::charts::fits_section;
use crate::cohomology::{cohomology, euler_characteristic, h0};
use crate::error::{HorikawaError, Result};
use crate::lattice::{canonical_class, DivisorClass, SurfaceModel};

/// Chart polynomials `f ∈ H⁰(L)` and `g ∈ H⁰(2L)` of `z² + f z + g = 0`,
/// written in the affine chart `(x, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSections {
    pub f: Poly2<Gf2k>,
    pub g: Poly2<Gf2k>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoverDatum {
    pub l: DivisorClass,
    pub sections: Option<CoverSections>,
}

impl DoubleCoverDatum {
    pub fn new(l: DivisorClass) -> Self {
        DoubleCoverDatum { l, sections: None }
    }

    /// Attaches sections after checking they lie in `H⁰(L)` and `H⁰(2L)`.
    pub fn with_sections(l: DivisorClass, f: Poly2<Gf2k>, g: Poly2<Gf2k>) -> Result<Self> {
        if !fits_section(&l, &f) {
            return Err(HorikawaError::InvalidInput(format!("f = {f} is not a section of {l}")));
        }
        let l2 = l.scale(2);
        if !fits_section(&l2, &g) {
            return Err(HorikawaError::InvalidInput(format!("g = {g} is not a section of {l2}")));
        }
        Ok(DoubleCoverDatum {
            l,
            sections: Some(CoverSections { f, g }),
        })
    }

    pub fn base(&self) -> SurfaceModel {
        self.l.surface()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoverInvariants {
    #[serde(rename = "Ksq")]
    pub ksq: i64,
    pub pg: u64,
    pub chi: i64,
    pub h01: u64,
    pub on_noether_line: bool,
}

/// `K_S + L`, whose pullback is `K_X`.
pub fn omega_class(c: &DoubleCoverDatum) -> DivisorClass {
    &canonical_class(c.base()) + &c.l
}

pub fn invariants(c: &DoubleCoverDatum) -> Result<CoverInvariants> {
    let omega = omega_class(c);
    let k = canonical_class(c.base());
    let ksq = 2 * omega.self_dot();
    let coh = cohomology(&omega)?;
    if coh.h1 != 0 {
        // the split count p_g = h0(K+L) + h0(K) needs h1(K+L) = 0
        return Err(HorikawaError::Refused(format!(
            "h1(K+L) = {} for L = {}; the geometric genus is not determined numerically",
            coh.h1, c.l
        )));
    }
    let pg = coh.h0 + h0(&k);
    let chi = 1 + euler_characteristic(&-&c.l);
    let h01 = 1 - chi + pg as i64;
    if h01 < 0 {
        return Err(HorikawaError::Inconsistent(format!("h01 = {h01} < 0 for L = {}", c.l)));
    }
    Ok(CoverInvariants {
        ksq,
        pg,
        chi,
        h01: h01 as u64,
        on_noether_line: ksq == 2 * pg as i64 - 4,
    })
}

/// `h⁰(ω_X^n) = h⁰(n(K+L)) + h⁰(n(K+L) - L)`.
pub fn pluricanonical_h0(c: &DoubleCoverDatum, n: u32) -> Result<u64> {
    if n == 0 {
        return Err(HorikawaError::InvalidInput("n must be positive".into()));
    }
    let nk = omega_class(c).scale(n as i64);
    Ok(h0(&nk) + h0(&(&nk - &c.l)))
}

/// Position relative to the Noether line `K² = 2p_g - 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NoetherPosition {
    Violates,
    OnLine,
    StrictlyAbove,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NoetherReport {
    pub position: NoetherPosition,
    /// `K² ≥ 2p_g - 2`, the bound for canonical systems composed with a pencil.
    pub pencil_bound_holds: bool,
}

pub fn noether_check(ksq: i64, pg: u64) -> NoetherReport {
    let line = 2 * pg as i64 - 4;
    let position = match ksq.cmp(&line) {
        std::cmp::Ordering::Less => NoetherPosition::Violates,
        std::cmp::Ordering::Equal => NoetherPosition::OnLine,
        std::cmp::Ordering::Greater => NoetherPosition::StrictlyAbove,
    };
    NoetherReport {
        position,
        pencil_bound_holds: ksq >= 2 * pg as i64 - 2,
    }
}

/// Whether a degree-`m` étale cover of a surface with these invariants could
/// satisfy Noether's inequality: `m(1 + p_g) ≤ m K²/2 + 3`, using
/// `χ` multiplicative and `p_g ≥ χ - 1`.
pub fn etale_cover_allowed(inv: &CoverInvariants, m: u64) -> bool {
    2 * m as i64 * (1 + inv.pg as i64) <= m as i64 * inv.ksq + 6
}
