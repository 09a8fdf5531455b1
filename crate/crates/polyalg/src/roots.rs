//! Univariate factorisation data over `GF(2^k)`: distinct-degree splitting
//! and root finding by trace splitting.

use crate::error::PolyError;
use crate::field::{Field, Gf2k};
use crate::univariate::UniPoly;

/// Degrees of the irreducible factors of the radical of `f` (with repetition
/// for distinct factors of equal degree).
pub fn irreducible_factor_degrees(f: &UniPoly<Gf2k>) -> Vec<usize> {
    let field = *f.field();
    let k = field.degree();
    let mut rest = f.radical();
    let x = UniPoly::x(field);
    let mut h = x.clone();
    let mut degrees = Vec::new();
    let mut i = 0usize;
    while let Some(n) = rest.degree() {
        if n == 0 {
            break;
        }
        i += 1;
        if 2 * i > n {
            degrees.push(n);
            break;
        }
        h = h.square_iter_mod(k, &rest);
        let g = h.sub(&x).gcd(&rest);
        if let Some(gd) = g.degree() {
            if gd > 0 {
                degrees.extend(std::iter::repeat(i).take(gd / i));
                rest = rest.div_exact(&g).expect("gcd divides");
                h = h.rem(&rest);
            }
        }
    }
    degrees.sort_unstable();
    degrees
}

/// Roots of a polynomial that splits into linear factors over its field.
/// Repeated roots are reported once. Fails if `f` does not split.
pub fn roots_split(f: &UniPoly<Gf2k>) -> Result<Vec<u64>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::Internal("roots of the zero polynomial".into()));
    }
    let rad = f.radical();
    let mut out = Vec::new();
    split_into(&rad, &mut out)?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn split_into(f: &UniPoly<Gf2k>, out: &mut Vec<u64>) -> Result<(), PolyError> {
    let field = *f.field();
    match f.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            let c = f.monic();
            out.push(field.neg(&c.coeff(0)));
            return Ok(());
        }
        _ => {}
    }
    let x = UniPoly::x(field);
    // Deterministic scan of multipliers r; Tr(rX) separates two distinct
    // roots for half of all r.
    for r in 1..field.order() {
        let rx = x.scale(&r).rem(f);
        let mut acc = rx.clone();
        let mut p = rx;
        for _ in 1..field.degree() {
            p = p.mul(&p).rem(f);
            acc = acc.add(&p);
        }
        let g = acc.gcd(f);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && Some(gd) < f.degree() {
            let other = f.div_exact(&g).expect("gcd divides");
            split_into(&g, out)?;
            split_into(&other, out)?;
            return Ok(());
        }
    }
    Err(PolyError::Internal(format!(
        "polynomial of degree {:?} does not split over GF(2^{})",
        f.degree(),
        field.degree()
    )))
}

pub fn lcm_usize(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    if a == 0 || b == 0 {
        a.max(b)
    } else {
        a / gcd(a, b) * b
    }
}
