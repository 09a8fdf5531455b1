//! Torus-invariant affine charts of `P²` and `F_d`.
//!
//! Chart `A` has coordinates `(x, t)`. Every other chart's coordinates are
//! Laurent monomials in `x, t`:
//!
//! ```text
//! F_d:  B = (1/x, t)    C = (x t^-d, 1/t)    D = (t^d / x, 1/t)
//! P2:   B = (1/x, t/x)  C = (x/t, 1/t)
//! ```
//!
//! On `F_d` the curve `{x = ∞}` is the negative section `Δ₀` and `{t = ∞}` a
//! fibre; a section of `aΔ₀ + bΓ` is a polynomial in chart `A` with
//! `deg_x ≤ a` whose `x^i` part has `t`-degree at most `b - d i`.

use std::fmt;

use horikawa_polyalg::{Field, MonomialMap, Poly2, Vars};
use serde::Serialize;

use crate::lattice::{DivisorClass, SurfaceModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Chart {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Chart::A => "A",
            Chart::B => "B",
            Chart::C => "C",
            Chart::D => "D",
        };
        f.write_str(s)
    }
}

pub const AFFINE_VARS: Vars = ["x", "t"];

/// The standard affine cover of a surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChartAtlas {
    pub surface: SurfaceModel,
}

/// A boundary curve of chart `A`, seen as a coordinate axis of another chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCurve {
    pub chart: Chart,
    /// Index of the coordinate vanishing on the curve.
    pub axis: usize,
    pub class: DivisorClass,
}

impl ChartAtlas {
    pub fn new(surface: SurfaceModel) -> Self {
        ChartAtlas { surface }
    }

    pub fn charts(&self) -> &'static [Chart] {
        match self.surface {
            SurfaceModel::ProjectivePlane => &[Chart::A, Chart::B, Chart::C],
            SurfaceModel::Hirzebruch(_) => &[Chart::A, Chart::B, Chart::C, Chart::D],
        }
    }

    pub fn vars(&self, chart: Chart) -> Vars {
        match (self.surface, chart) {
            (_, Chart::A) => AFFINE_VARS,
            (SurfaceModel::ProjectivePlane, Chart::B) => ["u", "v"],
            (SurfaceModel::ProjectivePlane, _) => ["p", "q"],
            (_, Chart::B) => ["y", "t"],
            (_, Chart::C) => ["x2", "t2"],
            (_, Chart::D) => ["y2", "t2"],
        }
    }

    /// Exponents of the chart's coordinates in `(x, t)`, one row per coordinate.
    pub fn coordinates(&self, chart: Chart) -> [[i64; 2]; 2] {
        match (self.surface, chart) {
            (_, Chart::A) => [[1, 0], [0, 1]],
            (SurfaceModel::ProjectivePlane, Chart::B) => [[-1, 0], [-1, 1]],
            (SurfaceModel::ProjectivePlane, _) => [[1, -1], [0, -1]],
            (SurfaceModel::Hirzebruch(_), Chart::B) => [[-1, 0], [0, 1]],
            (SurfaceModel::Hirzebruch(d), Chart::C) => [[1, -(d as i64)], [0, -1]],
            (SurfaceModel::Hirzebruch(d), Chart::D) => [[-1, d as i64], [0, -1]],
        }
    }

    /// Substitution expressing `(x, t)` through the chart's coordinates.
    pub fn from_affine(&self, chart: Chart) -> MonomialMap {
        MonomialMap(self.coordinates(chart))
            .inverse()
            .expect("chart maps are unimodular")
    }

    /// Exponents of `to`'s coordinates as monomials in `from`'s coordinates.
    pub fn transition(&self, from: Chart, to: Chart) -> [[i64; 2]; 2] {
        let back = self.from_affine(from);
        let target = self.coordinates(to);
        [back.image(target[0][0], target[0][1]), back.image(target[1][0], target[1][1])]
    }

    /// Whether a point of chart `from` lies in chart `to`; `zero` records
    /// which of its coordinates vanish.
    pub fn contains(&self, from: Chart, zero: [bool; 2], to: Chart) -> bool {
        self.transition(from, to)
            .iter()
            .all(|row| (0..2).all(|k| row[k] >= 0 || !zero[k]))
    }

    /// The curves of the surface not met by chart `A`.
    pub fn boundary(&self) -> Vec<BoundaryCurve> {
        match self.surface {
            SurfaceModel::ProjectivePlane => vec![BoundaryCurve {
                chart: Chart::B,
                axis: 0,
                class: DivisorClass::plane(1),
            }],
            SurfaceModel::Hirzebruch(d) => vec![
                BoundaryCurve {
                    chart: Chart::B,
                    axis: 0,
                    class: DivisorClass::hirzebruch(d, 1, 0),
                },
                BoundaryCurve {
                    chart: Chart::C,
                    axis: 1,
                    class: DivisorClass::hirzebruch(d, 0, 1),
                },
            ],
        }
    }

    /// Monomial by which a section of `class`, written in chart `A`, is
    /// multiplied to become regular in `chart`.
    pub fn trivializer(&self, class: &DivisorClass, chart: Chart) -> [i64; 2] {
        let (a, b) = (class.a(), class.b());
        match (self.surface, chart) {
            (_, Chart::A) => [0, 0],
            (SurfaceModel::ProjectivePlane, Chart::B) => [a, 0],
            (SurfaceModel::ProjectivePlane, _) => [0, a],
            (_, Chart::B) => [a, 0],
            (_, Chart::C) => [0, b],
            (_, Chart::D) => [a, b],
        }
    }

    /// A section of `class` written in `chart`; `None` if `p` is not a section.
    pub fn section_in_chart<F: Field>(
        &self,
        class: &DivisorClass,
        p: &Poly2<F>,
        chart: Chart,
    ) -> Option<Poly2<F>> {
        if !fits_section(class, p) {
            return None;
        }
        let vars = self.vars(chart);
        if p.is_zero() {
            return Some(Poly2::zero(p.field().clone(), vars));
        }
        let (q, shift) = p.substitute_monomial(&self.from_affine(chart), vars);
        let triv = self.trivializer(class, chart);
        let e = [shift[0] + triv[0], shift[1] + triv[1]];
        if e[0] < 0 || e[1] < 0 {
            return None;
        }
        Some(q.mul_monomial((e[0] as u32, e[1] as u32)))
    }
}

/// Whether the chart-`A` polynomial `p` is a global section of `class`.
pub fn fits_section<F: Field>(class: &DivisorClass, p: &Poly2<F>) -> bool {
    match class.surface() {
        SurfaceModel::ProjectivePlane => p
            .terms()
            .all(|(&(i, j), _)| (i + j) as i64 <= class.a()),
        SurfaceModel::Hirzebruch(d) => p.terms().all(|(&(i, j), _)| {
            i as i64 <= class.a() && j as i64 <= class.b() - d as i64 * i as i64
        }),
    }
}

/// All chart-`A` monomials spanning the sections of `class`.
pub fn section_monomials(class: &DivisorClass) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    match class.surface() {
        SurfaceModel::ProjectivePlane => {
            for i in 0..=class.a().max(-1) {
                for j in 0..=(class.a() - i) {
                    out.push((i as u32, j as u32));
                }
            }
        }
        SurfaceModel::Hirzebruch(d) => {
            for i in 0..=class.a().max(-1) {
                for j in 0..=(class.b() - d as i64 * i) {
                    out.push((i as u32, j as u32));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::h0;
    use horikawa_polyalg::Gf2k;

    #[test]
    fn monomial_count_matches_h0() {
        for d in 0..5 {
            for a in -1..5 {
                for b in -2..12 {
                    let c = DivisorClass::hirzebruch(d, a, b);
                    assert_eq!(section_monomials(&c).len() as u64, h0(&c), "{c} on F{d}");
                }
            }
        }
        for n in -2..8 {
            let c = DivisorClass::plane(n);
            assert_eq!(section_monomials(&c).len() as u64, h0(&c));
        }
    }

    #[test]
    fn sections_are_regular_in_every_chart() {
        let f = Gf2k::new(1).unwrap();
        for surface in [SurfaceModel::ProjectivePlane, SurfaceModel::Hirzebruch(0), SurfaceModel::Hirzebruch(3)] {
            let atlas = ChartAtlas::new(surface);
            let class = match surface {
                SurfaceModel::ProjectivePlane => DivisorClass::plane(4),
                SurfaceModel::Hirzebruch(d) => DivisorClass::hirzebruch(d, 2, 2 * d as i64 + 3),
            };
            let mut p = Poly2::zero(f, AFFINE_VARS);
            for e in section_monomials(&class) {
                p.add_term(e, 1);
            }
            for &chart in atlas.charts() {
                let q = atlas.section_in_chart(&class, &p, chart).unwrap();
                assert_eq!(q.num_terms(), p.num_terms());
                // every corner monomial is present, so no chart axis divides q
                assert_ne!(q.coeff((0, 0)), 0);
            }
        }
    }

    #[test]
    fn transitions_round_trip() {
        let atlas = ChartAtlas::new(SurfaceModel::Hirzebruch(3));
        for &a in atlas.charts() {
            for &b in atlas.charts() {
                let there = MonomialMap(atlas.transition(a, b));
                let back = MonomialMap(atlas.transition(b, a));
                assert_eq!(there.then(&back), MonomialMap::IDENTITY);
            }
        }
    }

    #[test]
    fn chart_membership() {
        let atlas = ChartAtlas::new(SurfaceModel::Hirzebruch(2));
        // origin of chart C is at t = ∞, outside A
        assert!(!atlas.contains(Chart::C, [true, true], Chart::A));
        assert!(atlas.contains(Chart::C, [true, false], Chart::A));
        // origin of D lies only in D
        for c in [Chart::A, Chart::B, Chart::C] {
            assert!(!atlas.contains(Chart::D, [true, true], c));
        }
    }
}
