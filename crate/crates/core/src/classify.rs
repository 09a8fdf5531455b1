//! Admissible branch data of Horikawa surfaces.
//!
//! For each `p_g ≥ 3` the canonical image is `P²` (only `p_g = 3, 6`), a
//! Hirzebruch surface `F_d` with `0 ≤ d ≤ p_g - 4`, `p_g ≡ d (mod 2)` and
//! `p_g ≥ 2d - 2`, or a cone resolved by `F_{p_g - 2}` when `4 ≤ p_g ≤ 6`.
//! Outside `P²` the branch class is `L = 3Δ₀ + (p_g + 2 + 3d)/2 · Γ`.

use serde::Serialize;

use crate::cover::{invariants, CoverInvariants, DoubleCoverDatum};
use crate::error::{HorikawaError, Result};
use crate::lattice::{CanonicalImage, DivisorClass, SurfaceModel};

/// Largest `p_g` accepted by [`classification_table`].
pub const MAX_TABLE_PG: u64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HorikawaDatum {
    pub pg: u64,
    pub image: CanonicalImage,
    pub d: Option<u32>,
    #[serde(rename = "L")]
    pub l: DivisorClass,
    #[serde(rename = "Ksq")]
    pub ksq: i64,
}

impl HorikawaDatum {
    pub fn base(&self) -> SurfaceModel {
        self.l.surface()
    }

    pub fn cover(&self) -> DoubleCoverDatum {
        DoubleCoverDatum::new(self.l.clone())
    }
}

/// `3Δ₀ + (p_g + 2 + 3d)/2 · Γ` on `F_d`.
pub fn hirzebruch_branch_class(pg: u64, d: u32) -> Option<DivisorClass> {
    let twice = pg as i64 + 2 + 3 * d as i64;
    (twice % 2 == 0).then(|| DivisorClass::hirzebruch(d, 3, twice / 2))
}

fn datum(pg: u64, image: CanonicalImage, l: DivisorClass) -> HorikawaDatum {
    HorikawaDatum {
        pg,
        image,
        d: image.hirzebruch_degree(),
        l,
        ksq: 2 * pg as i64 - 4,
    }
}

pub fn enumerate(pg: u64) -> Result<Vec<HorikawaDatum>> {
    if pg < 3 {
        return Err(HorikawaError::InvalidInput(format!(
            "a Horikawa surface has p_g >= 3, got {pg}"
        )));
    }
    let mut out = Vec::new();
    match pg {
        3 => out.push(datum(pg, CanonicalImage::SmoothP2 { embedding_degree: 1 }, DivisorClass::plane(4))),
        6 => out.push(datum(pg, CanonicalImage::SmoothP2 { embedding_degree: 2 }, DivisorClass::plane(5))),
        _ => {}
    }
    for d in 0..=pg.saturating_sub(4) as u32 {
        if pg < 4 || (pg - d as u64) % 2 != 0 || (pg as i64) < 2 * d as i64 - 2 {
            continue;
        }
        let l = hirzebruch_branch_class(pg, d).expect("parity checked");
        out.push(datum(pg, CanonicalImage::SmoothHirzebruch { d }, l));
    }
    if (4..=6).contains(&pg) {
        let degree = pg as u32 - 2;
        let l = hirzebruch_branch_class(pg, degree).expect("p_g - d = 2");
        out.push(datum(pg, CanonicalImage::ConeOverRnc { degree }, l));
    }
    Ok(out)
}

/// A proposed pair: either a base surface (read as a smooth canonical image)
/// or an explicit canonical image.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Candidate {
    Surface(SurfaceModel),
    Image(CanonicalImage),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum RejectReason {
    /// The class lives on a different surface than the image requires.
    WrongSurface { expected: SurfaceModel, got: SurfaceModel },
    /// The cover invariants could not be computed numerically.
    Cohomology { message: String },
    PgTooSmall { pg: i64 },
    NotOnNoetherLine { ksq: i64, pg: u64 },
    /// `p_g - d` odd.
    Parity { pg: u64, d: u32 },
    /// `d > p_g - 4` for a smooth image.
    DegreeBound { pg: u64, d: u32 },
    /// `p_g < 2d - 2`.
    GenusBound { pg: u64, d: u32 },
    /// A cone needs `4 ≤ p_g ≤ 6` and `d = p_g - 2`.
    ConeRange { pg: u64, d: u32 },
    NotInList { pg: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Validation {
    Accept { datum: HorikawaDatum },
    Reject(RejectReason),
}

impl Validation {
    pub fn is_accept(&self) -> bool {
        matches!(self, Validation::Accept { .. })
    }
}

fn find(pg: u64, image: Option<CanonicalImage>, l: &DivisorClass) -> Option<HorikawaDatum> {
    enumerate(pg).ok()?.into_iter().find(|h| {
        &h.l == l
            && match image {
                Some(CanonicalImage::SmoothP2 { embedding_degree: 0 }) => {
                    matches!(h.image, CanonicalImage::SmoothP2 { .. })
                }
                Some(img) => h.image == img,
                None => h.image.is_smooth(),
            }
    })
}

pub fn validate(candidate: Candidate, l: &DivisorClass) -> Validation {
    let (image, surface) = match candidate {
        Candidate::Surface(s) => (None, s),
        Candidate::Image(img) => (Some(img), img.desingularisation()),
    };
    if l.surface() != surface {
        return Validation::Reject(RejectReason::WrongSurface {
            expected: surface,
            got: l.surface(),
        });
    }
    let mut classes = vec![l.clone()];
    if surface == SurfaceModel::Hirzebruch(0) {
        classes.push(l.swap_rulings().expect("F0"));
    }
    let mut first_reject = None;
    for class in classes {
        match validate_class(image, &class) {
            Validation::Accept { datum } => return Validation::Accept { datum },
            Validation::Reject(r) => {
                first_reject.get_or_insert(r);
            }
        }
    }
    Validation::Reject(first_reject.expect("at least one class"))
}

fn validate_class(image: Option<CanonicalImage>, l: &DivisorClass) -> Validation {
    let inv: CoverInvariants = match invariants(&DoubleCoverDatum::new(l.clone())) {
        Ok(i) => i,
        Err(e) => {
            return Validation::Reject(RejectReason::Cohomology {
                message: e.to_string(),
            })
        }
    };
    let pg = inv.pg;
    if pg < 3 {
        return Validation::Reject(RejectReason::PgTooSmall { pg: pg as i64 });
    }
    if let Some(datum) = find(pg, image, l) {
        return Validation::Accept { datum };
    }
    let Some(d) = l.surface().hirzebruch_degree() else {
        return Validation::Reject(RejectReason::NotInList { pg });
    };
    if !inv.on_noether_line {
        return Validation::Reject(RejectReason::NotOnNoetherLine { ksq: inv.ksq, pg });
    }
    if (pg - d as u64) % 2 != 0 {
        return Validation::Reject(RejectReason::Parity { pg, d });
    }
    match image {
        Some(CanonicalImage::ConeOverRnc { .. }) => {
            Validation::Reject(RejectReason::ConeRange { pg, d })
        }
        _ if d as u64 + 4 > pg => Validation::Reject(RejectReason::DegreeBound { pg, d }),
        _ if (pg as i64) < 2 * d as i64 - 2 => {
            Validation::Reject(RejectReason::GenusBound { pg, d })
        }
        _ => Validation::Reject(RejectReason::NotInList { pg }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub pg: u64,
    pub image: CanonicalImage,
    pub d: Option<u32>,
    #[serde(rename = "L")]
    pub l: DivisorClass,
    #[serde(rename = "Ksq")]
    pub ksq: i64,
    pub pg_recomputed: u64,
    pub h01: u64,
}

pub fn classification_table(from: u64, to: u64) -> Result<Vec<TableRow>> {
    if from < 3 || to < from || to > MAX_TABLE_PG {
        return Err(HorikawaError::InvalidInput(format!(
            "p_g range must satisfy 3 <= from <= to <= {MAX_TABLE_PG}, got {from}..={to}"
        )));
    }
    let mut rows = Vec::new();
    for pg in from..=to {
        for h in enumerate(pg)? {
            let inv = invariants(&h.cover())?;
            if inv.pg != pg || inv.ksq != h.ksq {
                return Err(HorikawaError::Inconsistent(format!(
                    "datum {} with L = {} recomputes to (K2, p_g) = ({}, {})",
                    h.image, h.l, inv.ksq, inv.pg
                )));
            }
            rows.push(TableRow {
                pg,
                image: h.image,
                d: h.d,
                l: h.l,
                ksq: h.ksq,
                pg_recomputed: inv.pg,
                h01: inv.h01,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_counts() {
        let counts: Vec<usize> = (3..=12).map(|pg| enumerate(pg).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 2, 4, 2, 3, 3, 4, 3, 4]);
    }

    #[test]
    fn small_genus_rejected() {
        assert!(enumerate(2).is_err());
    }

    #[test]
    fn pg_six_list() {
        let images: Vec<String> = enumerate(6).unwrap().iter().map(|h| h.image.to_string()).collect();
        assert_eq!(images, vec!["P2(deg2)", "F0", "F2", "cone4"]);
    }

    #[test]
    fn pg_twelve_has_no_cone() {
        let ds: Vec<Option<u32>> = enumerate(12).unwrap().iter().map(|h| h.d).collect();
        assert_eq!(ds, vec![Some(0), Some(2), Some(4), Some(6)]);
        assert!(enumerate(12).unwrap().iter().all(|h| h.image.is_smooth()));
    }

    #[test]
    fn validation_examples() {
        let f4 = Candidate::Surface(SurfaceModel::Hirzebruch(4));
        match validate(f4, &DivisorClass::hirzebruch(4, 3, 11)) {
            Validation::Accept { datum } => assert_eq!(datum.pg, 8),
            r => panic!("{r:?}"),
        }
        assert_eq!(
            validate(f4, &DivisorClass::hirzebruch(4, 3, 10)),
            Validation::Reject(RejectReason::DegreeBound { pg: 6, d: 4 })
        );
        let cone = Candidate::Image(CanonicalImage::ConeOverRnc { degree: 4 });
        assert!(validate(cone, &DivisorClass::hirzebruch(4, 3, 10)).is_accept());
        let p2 = Candidate::Surface(SurfaceModel::ProjectivePlane);
        assert_eq!(
            validate(p2, &DivisorClass::plane(6)),
            Validation::Reject(RejectReason::NotInList { pg: 10 })
        );
        assert!(validate(p2, &DivisorClass::plane(5)).is_accept());
    }

    #[test]
    fn f0_swapped_rulings_accepted() {
        let f0 = Candidate::Surface(SurfaceModel::Hirzebruch(0));
        // pg = 6 on F0: L = 3Δ₀ + 4Γ; swapped it reads 4Δ₀ + 3Γ
        assert!(validate(f0, &DivisorClass::hirzebruch(0, 3, 4)).is_accept());
        assert!(validate(f0, &DivisorClass::hirzebruch(0, 4, 3)).is_accept());
    }

    fn h_smooth(pg: u64, d: u32) -> bool {
        enumerate(pg)
            .unwrap()
            .iter()
            .any(|h| h.image == CanonicalImage::SmoothHirzebruch { d })
    }

    #[test]
    fn binding_bound_crossover() {
        for pg in 3..=30u64 {
            let by_degree = pg.saturating_sub(4);
            let by_genus = (pg + 2) / 2;
            let top = enumerate(pg).unwrap().iter().filter_map(|h| h.d).any(|d| d as u64 == by_degree && h_smooth(pg, d));
            if pg <= 10 {
                assert!(by_degree <= by_genus, "pg {pg}");
                assert_eq!(top, pg >= 4, "pg {pg}");
            } else {
                assert!(by_genus < by_degree, "pg {pg}");
                assert!(!top, "pg {pg}");
            }
        }
    }

    #[test]
    fn table_rows_recompute() {
        let rows = classification_table(3, 12).unwrap();
        assert_eq!(rows.len(), 28);
        assert!(rows.iter().all(|r| r.ksq == 2 * r.pg as i64 - 4 && r.h01 == 0 && r.pg_recomputed == r.pg));
    }
}
