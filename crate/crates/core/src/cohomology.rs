//! Line-bundle cohomology on `P²` and `F_d`.
//!
//! [`cohomology`] uses the toric section count for `h⁰`, Serre duality for
//! `h²` and Riemann–Roch for `χ`. [`CechOracle`] recomputes everything from
//! the Čech complex of the torus-invariant affine cover, one character
//! `m ∈ Z²` at a time.

use std::collections::HashMap;

use horikawa_polyalg::{Field, Gf2k, Rationals};
use serde::Serialize;

use crate::error::{HorikawaError, Result};
use crate::lattice::{canonical_class, intersect, DivisorClass, SurfaceModel};

/// Environment variable overriding the oracle's coefficient bound.
pub const CECH_LIMIT_ENV: &str = "HORIKAWA_CECH_LIMIT";
pub const DEFAULT_CECH_LIMIT: i64 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CohomologyVector {
    pub h0: u64,
    pub h1: u64,
    pub h2: u64,
    pub chi: i64,
}

impl CohomologyVector {
    fn from_parts(h0: i64, h1: i64, h2: i64) -> Result<Self> {
        if h0 < 0 || h1 < 0 || h2 < 0 {
            return Err(HorikawaError::Inconsistent(format!(
                "negative cohomology ({h0}, {h1}, {h2})"
            )));
        }
        Ok(CohomologyVector {
            h0: h0 as u64,
            h1: h1 as u64,
            h2: h2 as u64,
            chi: h0 - h1 + h2,
        })
    }

    /// `(h², h¹, h⁰)`, the vector of `K - D` by Serre duality.
    pub fn dual(&self) -> Self {
        CohomologyVector {
            h0: self.h2,
            h1: self.h1,
            h2: self.h0,
            chi: self.chi,
        }
    }
}

/// Number of global sections.
pub fn h0(d: &DivisorClass) -> u64 {
    match d.surface() {
        SurfaceModel::ProjectivePlane => {
            let n = d.a();
            if n < 0 {
                0
            } else {
                ((n + 1) * (n + 2) / 2) as u64
            }
        }
        SurfaceModel::Hirzebruch(deg) => {
            let (a, b) = (d.a(), d.b());
            if a < 0 {
                return 0;
            }
            (0..=a).map(|k| (b - k * deg as i64 + 1).max(0) as u64).sum()
        }
    }
}

/// Riemann–Roch: `χ(D) = 1 + D·(D - K)/2`.
pub fn euler_characteristic(d: &DivisorClass) -> i64 {
    let k = canonical_class(d.surface());
    let twice = intersect(d, &(d - &k)).expect("same surface");
    debug_assert!(twice % 2 == 0);
    1 + twice / 2
}

pub fn cohomology(d: &DivisorClass) -> Result<CohomologyVector> {
    let k = canonical_class(d.surface());
    let top = h0(&(&k - d)) as i64;
    let bottom = h0(d) as i64;
    let chi = euler_characteristic(d);
    let h1 = bottom + top - chi;
    if h1 < 0 {
        return Err(HorikawaError::Inconsistent(format!(
            "h1 = {h1} < 0 for {d} on {}",
            d.surface()
        )));
    }
    CohomologyVector::from_parts(bottom, h1, top)
}

/// Rank of a matrix over `field` by Gaussian elimination.
pub fn rank<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).expect("nonzero pivot");
        for i in 0..rows.len() {
            if i == r || field.is_zero(&rows[i][c]) {
                continue;
            }
            let factor = field.mul(&rows[i][c], &inv);
            for j in c..ncols {
                let v = field.mul(&factor, &rows[r][j]);
                rows[i][j] = field.sub(&rows[i][j], &v);
            }
        }
        r += 1;
    }
    r
}

/// Fan data: primitive ray generators in cyclic order with the torus-invariant
/// divisor coefficients of the bundle; the maximal cones are adjacent pairs.
struct ToricBundle {
    rays: Vec<[i64; 2]>,
    coeffs: Vec<i64>,
    box_bound: [i64; 2],
}

fn toric_bundle(d: &DivisorClass) -> ToricBundle {
    match d.surface() {
        SurfaceModel::ProjectivePlane => {
            let n = d.a();
            // nH = n·D3
            ToricBundle {
                rays: vec![[1, 0], [0, 1], [-1, -1]],
                coeffs: vec![0, 0, n],
                box_bound: [2 * n.abs() + 2, 2 * n.abs() + 2],
            }
        }
        SurfaceModel::Hirzebruch(deg) => {
            let (a, b) = (d.a(), d.b());
            let dd = deg as i64;
            // D1 ~ D3 ~ Γ, D2 = Δ₀ (self-intersection -d), D4 ~ Δ₀ + dΓ
            ToricBundle {
                rays: vec![[1, 0], [0, 1], [-1, dd], [0, -1]],
                coeffs: vec![b, a, 0, 0],
                box_bound: [b.abs() + dd * (a.abs() + 1) + 2, a.abs() + 2],
            }
        }
    }
}

/// Cohomology dimensions of the Čech complex of one weight space, in which
/// the rays in `positive` (bit mask) admit the character.
fn cech_weight_space<F: Field>(field: &F, nrays: usize, positive: u32) -> [usize; 3] {
    let charts: Vec<u32> = (0..nrays)
        .map(|i| (1u32 << i) | (1u32 << ((i + 1) % nrays)))
        .collect();
    // cochains indexed by chart subsets whose common rays are all positive
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); nrays + 1];
    for subset in 1u32..(1 << nrays) {
        let common = (0..nrays)
            .filter(|i| subset & (1 << i) != 0)
            .fold(u32::MAX, |acc, i| acc & charts[i]);
        if common & !positive == 0 {
            by_size[subset.count_ones() as usize].push(subset);
        }
    }
    let dims: Vec<usize> = (1..=nrays).map(|s| by_size[s].len()).collect();
    // ranks[p] = rank of C^p -> C^{p+1}
    let mut ranks = vec![0usize; nrays];
    for p in 0..nrays - 1 {
        let src = &by_size[p + 1];
        let dst = &by_size[p + 2];
        if src.is_empty() || dst.is_empty() {
            continue;
        }
        let rows: Vec<Vec<F::Elem>> = dst
            .iter()
            .map(|&j| {
                src.iter()
                    .map(|&i| {
                        if i & j != i {
                            return field.zero();
                        }
                        let extra = (j & !i).trailing_zeros();
                        let pos = (j & ((1 << extra) - 1)).count_ones();
                        if pos % 2 == 0 {
                            field.one()
                        } else {
                            field.neg(&field.one())
                        }
                    })
                    .collect()
            })
            .collect();
        ranks[p] = rank(field, rows);
    }
    let h = |p: usize| dims[p] - ranks[p] - if p == 0 { 0 } else { ranks[p - 1] };
    for p in 3..nrays {
        debug_assert_eq!(h(p), 0);
    }
    [h(0), h(1), h(2)]
}

/// Coefficient ring of the Čech computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleField {
    Rationals,
    Gf2,
}

/// Čech-complex cohomology with a bound on the input coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CechOracle {
    pub limit: i64,
    pub field: OracleField,
}

impl Default for CechOracle {
    fn default() -> Self {
        CechOracle {
            limit: DEFAULT_CECH_LIMIT,
            field: OracleField::Rationals,
        }
    }
}

impl CechOracle {
    /// Default settings, with the bound taken from `HORIKAWA_CECH_LIMIT` if set.
    pub fn from_env() -> Self {
        let limit = std::env::var(CECH_LIMIT_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<i64>().ok())
            .filter(|&v| v >= 0)
            .unwrap_or(DEFAULT_CECH_LIMIT);
        CechOracle {
            limit,
            ..CechOracle::default()
        }
    }

    pub fn with_limit(limit: i64) -> Self {
        CechOracle {
            limit,
            ..CechOracle::default()
        }
    }

    pub fn over(self, field: OracleField) -> Self {
        CechOracle { field, ..self }
    }

    pub fn compute(&self, d: &DivisorClass) -> Result<CohomologyVector> {
        if let Some(&c) = d.coeffs().iter().find(|c| c.abs() > self.limit) {
            return Err(HorikawaError::LimitExceeded {
                value: c,
                limit: self.limit,
            });
        }
        let bundle = toric_bundle(d);
        let nrays = bundle.rays.len();
        let mut cache: HashMap<u32, [usize; 3]> = HashMap::new();
        let mut total = [0usize; 3];
        let [b1, b2] = bundle.box_bound;
        for m1 in -b1..=b1 {
            for m2 in -b2..=b2 {
                let mut positive = 0u32;
                for (i, (u, a)) in bundle.rays.iter().zip(&bundle.coeffs).enumerate() {
                    if m1 * u[0] + m2 * u[1] >= -a {
                        positive |= 1 << i;
                    }
                }
                let h = *cache.entry(positive).or_insert_with(|| match self.field {
                    OracleField::Rationals => cech_weight_space(&Rationals, nrays, positive),
                    OracleField::Gf2 => {
                        cech_weight_space(&Gf2k::new(1).expect("GF(2)"), nrays, positive)
                    }
                });
                for p in 0..3 {
                    total[p] += h[p];
                }
            }
        }
        CohomologyVector::from_parts(total[0] as i64, total[1] as i64, total[2] as i64)
    }
}

/// [`CechOracle::from_env`] over `Q`.
pub fn cech_oracle(d: &DivisorClass) -> Result<CohomologyVector> {
    CechOracle::from_env().compute(d)
}
