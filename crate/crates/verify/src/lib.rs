//! Oracles that recompute the library's answers by separate routes, for the
//! acceptance suite.
//!
//! Cohomology comes from the pushforward `π_* O(aΔ₀ + bΓ) = ⊕_{k≤a} O(b - kd)`
//! on `P¹`, intersection numbers from the Gram matrix, and the zeros of the
//! recipe fields from per-chart polynomial pairs derived by hand and searched
//! point by point.

use std::collections::BTreeMap;

use horikawa_core::charts::{Chart, ChartAtlas};
use horikawa_core::foliation::FoliationRecipe;
use horikawa_core::lattice::SurfaceModel;
use horikawa_polyalg::{Field, Gf2k, Poly2, Vars};

/// `D₁·D₂` for `D = aΔ₀ + bΓ` on `F_d`, or `n₁n₂` on `P²` (pass `d = None`).
pub fn dot(d: Option<u32>, x: (i64, i64), y: (i64, i64)) -> i64 {
    match d {
        None => x.0 * y.0,
        Some(d) => -(d as i64) * x.0 * y.0 + x.0 * y.1 + x.1 * y.0,
    }
}

pub fn canonical(d: Option<u32>) -> (i64, i64) {
    match d {
        None => (-3, 0),
        Some(d) => (-2, -(d as i64) - 2),
    }
}

/// `c₂` of `P²` or `F_d`.
pub fn euler_number(d: Option<u32>) -> i64 {
    if d.is_none() {
        3
    } else {
        4
    }
}

pub fn riemann_roch(d: Option<u32>, c: (i64, i64)) -> i64 {
    let k = canonical(d);
    1 + (dot(d, c, c) - dot(d, c, k)) / 2
}

fn h0_p1(n: i64) -> u64 {
    (n + 1).max(0) as u64
}

fn h1_p1(n: i64) -> u64 {
    (-n - 1).max(0) as u64
}

/// `(h⁰, h¹, h²)` of `O(aΔ₀ + bΓ)` on `F_d` from the pushforward to `P¹`;
/// for `a < 0` through Serre duality.
pub fn hirzebruch_cohomology(d: u32, a: i64, b: i64) -> [u64; 3] {
    let di = d as i64;
    if a >= 0 {
        let h0 = (0..=a).map(|k| h0_p1(b - k * di)).sum();
        let h1 = (0..=a).map(|k| h1_p1(b - k * di)).sum();
        [h0, h1, 0]
    } else if a == -1 {
        [0, 0, 0]
    } else {
        let [h0, h1, _] = hirzebruch_cohomology(d, -2 - a, -di - 2 - b);
        [0, h1, h0]
    }
}

/// `(h⁰, h¹, h²)` of `O(n)` on `P²`.
pub fn plane_cohomology(n: i64) -> [u64; 3] {
    let binom = |m: i64| if m >= 0 { ((m + 1) * (m + 2) / 2) as u64 } else { 0 };
    [binom(n), 0, binom(-n - 3)]
}

pub fn cohomology_of(d: Option<u32>, c: (i64, i64)) -> [u64; 3] {
    match d {
        None => plane_cohomology(c.0),
        Some(d) => hirzebruch_cohomology(d, c.0, c.1),
    }
}

/// Saturated pair of a recipe field on one chart.
pub struct ChartPair {
    pub chart: Chart,
    pub a: Poly2<Gf2k>,
    pub b: Poly2<Gf2k>,
}

fn squares_of_linear(field: Gf2k, vars: Vars, var: usize, roots: &[u64], reversed: bool) -> Poly2<Gf2k> {
    // Π (v - r)², or Π (1 - r v)² when reversed
    let v = if var == 0 { Poly2::var0(field, vars) } else { Poly2::var1(field, vars) };
    roots.iter().fold(Poly2::one(field, vars), |acc, &r| {
        let c = Poly2::constant(field, vars, r);
        let lin = if reversed { Poly2::one(field, vars).sub(&v.mul(&c)) } else { v.sub(&c) };
        acc.mul(&lin).mul(&lin)
    })
}

/// The hand-derived saturated pairs of `x^-4 ∂/∂x + ψ ∂/∂t` with
/// `c = 5d - 2ℓ + 2m - 2`:
///
/// ```text
/// A (x, t):    Π(t - a)²,           x⁴ Π(t - b)²
/// B (y, t):    y⁶ Π(t - a)²,        Π(t - b)²
/// C (x2, t2):  t2^c Π(1 - a t2)²,   x2⁴ Π(1 - b t2)²
/// D (y2, t2):  y2⁶ t2^c Π(1 - a t2)², Π(1 - b t2)²
/// ```
///
/// Common zeros of `D` all lie in `B`.
pub fn recipe_pairs(r: &FoliationRecipe) -> Vec<ChartPair> {
    let f = r.field;
    let atlas = ChartAtlas::new(r.surface());
    let c = r.case_value() as u32;
    let va = atlas.vars(Chart::A);
    let vb = atlas.vars(Chart::B);
    let vc = atlas.vars(Chart::C);
    let vd = atlas.vars(Chart::D);
    vec![
        ChartPair {
            chart: Chart::A,
            a: squares_of_linear(f, va, 1, &r.a_points, false),
            b: Poly2::monomial(f, va, (4, 0), 1).mul(&squares_of_linear(f, va, 1, &r.b_points, false)),
        },
        ChartPair {
            chart: Chart::B,
            a: Poly2::monomial(f, vb, (6, 0), 1).mul(&squares_of_linear(f, vb, 1, &r.a_points, false)),
            b: squares_of_linear(f, vb, 1, &r.b_points, false),
        },
        ChartPair {
            chart: Chart::C,
            a: Poly2::monomial(f, vc, (0, c), 1).mul(&squares_of_linear(f, vc, 1, &r.a_points, true)),
            b: Poly2::monomial(f, vc, (4, 0), 1).mul(&squares_of_linear(f, vc, 1, &r.b_points, true)),
        },
        ChartPair {
            chart: Chart::D,
            a: Poly2::monomial(f, vd, (6, c), 1).mul(&squares_of_linear(f, vd, 1, &r.a_points, true)),
            b: squares_of_linear(f, vd, 1, &r.b_points, true),
        },
    ]
}

/// Zero profile read off the local forms above: `(t - a)²·x⁴` gives 8,
/// `y⁶·(t - b)²` gives 12 and `t2^c·x2⁴` gives `4c`.
pub fn recipe_profile(r: &FoliationRecipe) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    let mut bump = |k: usize, n: usize| {
        if n > 0 {
            *out.entry(k).or_insert(0) += n;
        }
    };
    bump(8, r.ell());
    bump(12, r.m());
    let c = r.case_value();
    if c > 0 {
        bump(4 * c as usize, 1);
    }
    out
}

/// Common zeros over the ground field, by evaluation at every point of every
/// chart, each point kept in the first chart containing it.
pub fn rational_zeros(surface: SurfaceModel, pairs: &[ChartPair], field: Gf2k) -> Vec<(Chart, [u64; 2])> {
    let atlas = ChartAtlas::new(surface);
    let mut out = Vec::new();
    for pair in pairs {
        let earlier: Vec<Chart> = atlas.charts().iter().copied().take_while(|&c| c != pair.chart).collect();
        for x in field.elements() {
            for t in field.elements() {
                if !field.is_zero(&pair.a.eval(&x, &t)) || !field.is_zero(&pair.b.eval(&x, &t)) {
                    continue;
                }
                let zero = [x == 0, t == 0];
                if earlier.iter().any(|&c| atlas.contains(pair.chart, zero, c)) {
                    continue;
                }
                out.push((pair.chart, [x, t]));
            }
        }
    }
    out.sort();
    out
}

/// Saturated pairs of `(x² + x^-4) ∂/∂x + (t² + t^-4) ∂/∂t` on `F_0`.
/// Every chart sees `z⁶ + 1` in each coordinate `z` it shares with `A`, and
/// the poles `x^-4`, `t^-4` become the factors `t⁴`, `x⁴` in chart `A` only:
///
/// ```text
/// A (x, t):    t⁴(x⁶ + 1),  x⁴(t⁶ + 1)
/// B (y, t):    t⁴(y⁶ + 1),  t⁶ + 1
/// C (x2, t2):  x2⁶ + 1,     x2⁴(t2⁶ + 1)
/// D (y2, t2):  y2⁶ + 1,     t2⁶ + 1
/// ```
pub fn remark_pairs() -> Vec<ChartPair> {
    let f = Gf2k::new(2).expect("GF(4)");
    let atlas = ChartAtlas::new(SurfaceModel::Hirzebruch(0));
    let sextic = |v: Vars, e: (u32, u32)| Poly2::monomial(f, v, e, 1).add(&Poly2::one(f, v));
    let mono = |v: Vars, e: (u32, u32)| Poly2::monomial(f, v, e, 1);
    let [va, vb, vc, vd] = [Chart::A, Chart::B, Chart::C, Chart::D].map(|c| atlas.vars(c));
    vec![
        ChartPair {
            chart: Chart::A,
            a: mono(va, (0, 4)).mul(&sextic(va, (6, 0))),
            b: mono(va, (4, 0)).mul(&sextic(va, (0, 6))),
        },
        ChartPair {
            chart: Chart::B,
            a: mono(vb, (0, 4)).mul(&sextic(vb, (6, 0))),
            b: sextic(vb, (0, 6)),
        },
        ChartPair {
            chart: Chart::C,
            a: sextic(vc, (6, 0)),
            b: mono(vc, (4, 0)).mul(&sextic(vc, (0, 6))),
        },
        ChartPair {
            chart: Chart::D,
            a: sextic(vd, (6, 0)),
            b: sextic(vd, (0, 6)),
        },
    ]
}
