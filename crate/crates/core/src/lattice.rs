//! Picard lattices of `P²` and the Hirzebruch surfaces `F_d`.
//!
//! On `F_d` the basis is `(Δ₀, Γ)` with `Δ₀² = -d`, `Δ₀·Γ = 1`, `Γ² = 0`;
//! on `P²` it is the line class `H`. On `F_0` the basis order tells the two
//! rulings apart and [`DivisorClass::swap_rulings`] exchanges them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{HorikawaError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceModel {
    ProjectivePlane,
    Hirzebruch(u32),
}

impl SurfaceModel {
    pub fn picard_rank(self) -> usize {
        match self {
            SurfaceModel::ProjectivePlane => 1,
            SurfaceModel::Hirzebruch(_) => 2,
        }
    }

    pub fn hirzebruch_degree(self) -> Option<u32> {
        match self {
            SurfaceModel::ProjectivePlane => None,
            SurfaceModel::Hirzebruch(d) => Some(d),
        }
    }
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceModel::ProjectivePlane => write!(f, "P2"),
            SurfaceModel::Hirzebruch(d) => write!(f, "F{d}"),
        }
    }
}

/// Accepts `P2`, `F3` and `F:3`.
impl FromStr for SurfaceModel {
    type Err = HorikawaError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("p2") {
            return Ok(SurfaceModel::ProjectivePlane);
        }
        let rest = s
            .strip_prefix('F')
            .or_else(|| s.strip_prefix('f'))
            .map(|r| r.strip_prefix(':').unwrap_or(r));
        match rest.and_then(|r| r.parse::<u32>().ok()) {
            Some(d) => Ok(SurfaceModel::Hirzebruch(d)),
            None => Err(HorikawaError::InvalidInput(format!(
                "surface must be P2 or F:d, got `{s}`"
            ))),
        }
    }
}

impl Serialize for SurfaceModel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SurfaceModel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An integer class in the Picard lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DivisorClass {
    surface: SurfaceModel,
    coeffs: Vec<i64>,
}

#[derive(Deserialize)]
struct RawClass {
    surface: SurfaceModel,
    coeffs: Vec<i64>,
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawClass::deserialize(d)?;
        DivisorClass::new(raw.surface, raw.coeffs).map_err(serde::de::Error::custom)
    }
}

impl DivisorClass {
    pub fn new(surface: SurfaceModel, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != surface.picard_rank() {
            return Err(HorikawaError::Rank {
                surface,
                expected: surface.picard_rank(),
                got: coeffs.len(),
            });
        }
        Ok(DivisorClass { surface, coeffs })
    }

    /// `n H` on `P²`.
    pub fn plane(n: i64) -> Self {
        DivisorClass {
            surface: SurfaceModel::ProjectivePlane,
            coeffs: vec![n],
        }
    }

    /// `a Δ₀ + b Γ` on `F_d`.
    pub fn hirzebruch(d: u32, a: i64, b: i64) -> Self {
        DivisorClass {
            surface: SurfaceModel::Hirzebruch(d),
            coeffs: vec![a, b],
        }
    }

    pub fn zero(surface: SurfaceModel) -> Self {
        DivisorClass {
            surface,
            coeffs: vec![0; surface.picard_rank()],
        }
    }

    pub fn surface(&self) -> SurfaceModel {
        self.surface
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// First coefficient: `n` for `nH`, `a` for `aΔ₀ + bΓ`.
    pub fn a(&self) -> i64 {
        self.coeffs[0]
    }

    /// Fibre coefficient on `F_d`; zero on `P²`.
    pub fn b(&self) -> i64 {
        self.coeffs.get(1).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn same_surface(&self, other: &Self) -> Result<()> {
        if self.surface == other.surface {
            Ok(())
        } else {
            Err(HorikawaError::SurfaceMismatch(self.surface, other.surface))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_surface(other)?;
        Ok(DivisorClass {
            surface: self.surface,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, k: i64) -> Self {
        DivisorClass {
            surface: self.surface,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Exact half, or `None` if some coefficient is odd.
    pub fn halve(&self) -> Option<Self> {
        if self.coeffs.iter().any(|c| c % 2 != 0) {
            return None;
        }
        Some(DivisorClass {
            surface: self.surface,
            coeffs: self.coeffs.iter().map(|c| c / 2).collect(),
        })
    }

    /// Exchanges the two rulings of `F_0`.
    pub fn swap_rulings(&self) -> Result<Self> {
        match self.surface {
            SurfaceModel::Hirzebruch(0) => Ok(DivisorClass::hirzebruch(0, self.b(), self.a())),
            s => Err(HorikawaError::InvalidInput(format!(
                "ruling swap is only defined on F0, not {s}"
            ))),
        }
    }

    /// `D·D`.
    pub fn self_dot(&self) -> i64 {
        intersect(self, self).expect("same surface")
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.surface {
            SurfaceModel::ProjectivePlane => write!(f, "{}H", self.a()),
            SurfaceModel::Hirzebruch(_) => {
                let (a, b) = (self.a(), self.b());
                if b < 0 {
                    write!(f, "{a}D0 - {}G", -b)
                } else {
                    write!(f, "{a}D0 + {b}G")
                }
            }
        }
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        self.scale(-1)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        self.scale(-1)
    }
}

/// Panics on a surface mismatch; use [`DivisorClass::checked_add`] otherwise.
impl Add for &DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_add(rhs).expect("divisor classes on one surface")
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_sub(rhs).expect("divisor classes on one surface")
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;

    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(self)
    }
}

/// Shape of the canonical image of a Horikawa surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CanonicalImage {
    SmoothP2 { embedding_degree: u32 },
    SmoothHirzebruch { d: u32 },
    /// Cone over the rational normal curve of the given degree; it is
    /// resolved by `F_degree`.
    ConeOverRnc { degree: u32 },
}

impl CanonicalImage {
    /// The smooth surface carrying the branch data.
    pub fn desingularisation(self) -> SurfaceModel {
        match self {
            CanonicalImage::SmoothP2 { .. } => SurfaceModel::ProjectivePlane,
            CanonicalImage::SmoothHirzebruch { d } => SurfaceModel::Hirzebruch(d),
            CanonicalImage::ConeOverRnc { degree } => SurfaceModel::Hirzebruch(degree),
        }
    }

    pub fn hirzebruch_degree(self) -> Option<u32> {
        self.desingularisation().hirzebruch_degree()
    }

    pub fn is_smooth(self) -> bool {
        !matches!(self, CanonicalImage::ConeOverRnc { .. })
    }
}

impl fmt::Display for CanonicalImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalImage::SmoothP2 { embedding_degree } => write!(f, "P2(deg{embedding_degree})"),
            CanonicalImage::SmoothHirzebruch { d } => write!(f, "F{d}"),
            CanonicalImage::ConeOverRnc { degree } => write!(f, "cone{degree}"),
        }
    }
}

impl Serialize for CanonicalImage {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses the command-line forms `P2`, `F:d` and `cone:d`. The embedding
/// degree of a `P2` image is left at 0, to be fixed from the branch data.
impl FromStr for CanonicalImage {
    type Err = HorikawaError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("cone:").or_else(|| s.strip_prefix("cone")) {
            return rest
                .parse::<u32>()
                .map(|degree| CanonicalImage::ConeOverRnc { degree })
                .map_err(|_| HorikawaError::InvalidInput(format!("bad cone degree in `{s}`")));
        }
        Ok(match s.parse::<SurfaceModel>()? {
            SurfaceModel::ProjectivePlane => CanonicalImage::SmoothP2 {
                embedding_degree: 0,
            },
            SurfaceModel::Hirzebruch(d) => CanonicalImage::SmoothHirzebruch { d },
        })
    }
}

pub fn intersect(d1: &DivisorClass, d2: &DivisorClass) -> Result<i64> {
    d1.same_surface(d2)?;
    Ok(match d1.surface {
        SurfaceModel::ProjectivePlane => d1.a() * d2.a(),
        SurfaceModel::Hirzebruch(d) => {
            -(d as i64) * d1.a() * d2.a() + d1.a() * d2.b() + d1.b() * d2.a()
        }
    })
}

pub fn canonical_class(s: SurfaceModel) -> DivisorClass {
    match s {
        SurfaceModel::ProjectivePlane => DivisorClass::plane(-3),
        SurfaceModel::Hirzebruch(d) => DivisorClass::hirzebruch(d, -2, -(d as i64) - 2),
    }
}

/// `(c1², c2)`.
pub fn chern_numbers(s: SurfaceModel) -> (i64, i64) {
    let k = canonical_class(s);
    let c1sq = intersect(&k, &k).expect("same surface");
    // Noether with χ(O) = 1
    (c1sq, 12 - c1sq)
}
