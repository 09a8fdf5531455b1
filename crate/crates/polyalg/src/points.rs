//! Common zeros of a zero-dimensional bivariate system over `GF(2^k)`.
//!
//! Both eliminants `Res_{v0}` and `Res_{v1}` are computed; the degrees of
//! their irreducible factors fix a splitting field `GF(2^K)`, where every
//! coordinate of every common zero is found by root splitting. Zeros are then
//! grouped into Frobenius orbits over the base field.

use serde::Serialize;

use crate::bivariate::Poly2;
use crate::error::PolyError;
use crate::field::{Embedding, Gf2k, MAX_EXTENSION_DEGREE};
use crate::gcd::gcd;
use crate::multiplicity::{local_multiplicity, TruncationBound};
use crate::resultant::{resultant_var0, resultant_var1};
use crate::roots::{irreducible_factor_degrees, lcm_usize, roots_split};

/// One Galois orbit of common zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemPoint {
    /// Degree `K` of the field `GF(2^K)` holding `coords`.
    pub field_degree: u32,
    /// Coordinates of the orbit representative in `GF(2^K)`.
    pub coords: [u64; 2],
    /// Coordinates in the base field when the point is rational.
    pub base_coords: Option<[u64; 2]>,
    pub multiplicity: usize,
    pub residue_degree: u32,
}

impl SystemPoint {
    pub fn weighted_multiplicity(&self) -> usize {
        self.multiplicity * self.residue_degree as usize
    }
}

/// All common zeros of `a` and `b` in the algebraic closure, one entry per
/// Galois orbit over the base field of `a`.
pub fn rational_points_of_system(
    a: &Poly2<Gf2k>,
    b: &Poly2<Gf2k>,
    bound: TruncationBound,
) -> Result<Vec<SystemPoint>, PolyError> {
    if a.field() != b.field() || a.vars() != b.vars() {
        return Err(PolyError::Mismatch);
    }
    let base = *a.field();
    let g = gcd(a, b);
    if !g.is_constant() || g.is_zero() {
        return Err(PolyError::PositiveDimensional(g.to_string()));
    }
    if a.is_constant() || b.is_constant() {
        return Ok(Vec::new());
    }
    let elim_t = resultant_var0(a, b).radical();
    let elim_x = resultant_var1(a, b).radical();
    let splitting = irreducible_factor_degrees(&elim_t)
        .into_iter()
        .chain(irreducible_factor_degrees(&elim_x))
        .fold(1usize, lcm_usize);
    let big_degree = base.degree() as usize * splitting;
    if big_degree > MAX_EXTENSION_DEGREE as usize {
        return Err(PolyError::UnsupportedField(format!(
            "common zeros need GF(2^{big_degree}), beyond the supported GF(2^{MAX_EXTENSION_DEGREE})"
        )));
    }
    let big = Gf2k::new(big_degree as u32)?;
    let emb = Embedding::new(base, big)?;
    let a_big = a.map_coeffs(big, |c| emb.apply(*c));
    let b_big = b.map_coeffs(big, |c| emb.apply(*c));
    let t_roots = roots_split(&elim_t.map_coeffs(big, |c| emb.apply(*c)))?;
    let x_roots = roots_split(&elim_x.map_coeffs(big, |c| emb.apply(*c)))?;

    let mut zeros: Vec<[u64; 2]> = Vec::new();
    for x in &x_roots {
        for t in &t_roots {
            if a_big.eval(x, t) == 0 && b_big.eval(x, t) == 0 {
                zeros.push([*x, *t]);
            }
        }
    }
    zeros.sort_unstable();

    let k = base.degree();
    let mut seen = vec![false; zeros.len()];
    let mut out = Vec::new();
    for i in 0..zeros.len() {
        if seen[i] {
            continue;
        }
        let rep = zeros[i];
        let mut orbit = 1u32;
        let mut cur = [big.frobenius(rep[0], k), big.frobenius(rep[1], k)];
        while cur != rep {
            let pos = zeros
                .binary_search(&cur)
                .map_err(|_| PolyError::Internal("zero set not Frobenius-stable".into()))?;
            seen[pos] = true;
            orbit += 1;
            cur = [big.frobenius(cur[0], k), big.frobenius(cur[1], k)];
        }
        seen[i] = true;
        let multiplicity = local_multiplicity(&a_big, &b_big, (&rep[0], &rep[1]), bound)?;
        let base_coords = match (emb.preimage(rep[0]), emb.preimage(rep[1])) {
            (Some(x), Some(t)) => Some([x, t]),
            _ => None,
        };
        out.push(SystemPoint {
            field_degree: big.degree(),
            coords: rep,
            base_coords,
            multiplicity,
            residue_degree: orbit,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivariate::Vars;

    const XT: Vars = ["x", "t"];

    #[test]
    fn transverse_axes() {
        let f = Gf2k::new(1).unwrap();
        let pts = rational_points_of_system(
            &Poly2::var0(f, XT),
            &Poly2::var1(f, XT),
            TruncationBound::default(),
        )
        .unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].base_coords, Some([0, 0]));
        assert_eq!(pts[0].multiplicity, 1);
    }

    #[test]
    fn conjugate_pair_over_gf2() {
        // x^2 + x + 1 = 0, t = 0: one orbit of size two
        let f = Gf2k::new(1).unwrap();
        let x = Poly2::var0(f, XT);
        let one = Poly2::one(f, XT);
        let a = x.pow(2).add(&x).add(&one);
        let pts =
            rational_points_of_system(&a, &Poly2::var1(f, XT), TruncationBound::default()).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].residue_degree, 2);
        assert_eq!(pts[0].multiplicity, 1);
        assert_eq!(pts[0].base_coords, None);
    }

    #[test]
    fn common_factor_is_rejected() {
        let f = Gf2k::new(1).unwrap();
        let x = Poly2::var0(f, XT);
        let t = Poly2::var1(f, XT);
        let r = rational_points_of_system(&x.mul(&t), &x, TruncationBound::default());
        assert!(matches!(r, Err(PolyError::PositiveDimensional(_))));
    }
}
