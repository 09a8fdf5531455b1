//! Bivariate gcd by the primitive remainder sequence over `F[v1][v0]`, and
//! the square part `max{h : h^2 | p}`.

use crate::bivariate::Poly2;
use crate::field::Field;
use crate::univariate::UniPoly;

fn content<F: Field>(rows: &[UniPoly<F>], field: &F) -> UniPoly<F> {
    rows.iter()
        .fold(UniPoly::zero(field.clone()), |acc, r| acc.gcd(r))
}

fn primitive<F: Field>(rows: &[UniPoly<F>], cont: &UniPoly<F>) -> Vec<UniPoly<F>> {
    rows.iter()
        .map(|r| r.div_exact(cont).expect("content divides every coefficient"))
        .collect()
}

fn trim<F: Field>(rows: &mut Vec<UniPoly<F>>) {
    while rows.last().is_some_and(|r| r.is_zero()) {
        rows.pop();
    }
}

/// `lc(b)^k · a mod b` in `F[v1][v0]`, a multiple of the pseudo-remainder.
fn pseudo_rem<F: Field>(a: &[UniPoly<F>], b: &[UniPoly<F>]) -> Vec<UniPoly<F>> {
    let mut r: Vec<UniPoly<F>> = a.to_vec();
    trim(&mut r);
    let n = b.len() - 1;
    let lcb = b[n].clone();
    while r.len() > n {
        let m = r.len() - 1;
        let lcr = r[m].clone();
        let shift = m - n;
        let mut next: Vec<UniPoly<F>> = r.iter().map(|c| c.mul(&lcb)).collect();
        for (j, bc) in b.iter().enumerate() {
            next[j + shift] = next[j + shift].sub(&bc.mul(&lcr));
        }
        trim(&mut next);
        r = next;
    }
    r
}

/// Monic gcd in lexicographic order (`v0` dominant). `gcd(0, 0) = 0`.
pub fn gcd<F: Field>(a: &Poly2<F>, b: &Poly2<F>) -> Poly2<F> {
    let field = a.field().clone();
    let vars = a.vars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_unit() || b.is_unit() {
        return Poly2::one(field, vars);
    }
    let ra = a.to_recursive();
    let rb = b.to_recursive();
    let ca = content(&ra, &field);
    let cb = content(&rb, &field);
    let c = ca.gcd(&cb);
    let mut p = primitive(&ra, &ca);
    let mut q = primitive(&rb, &cb);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    // q has the smaller v0-degree
    while q.len() > 1 {
        let r = pseudo_rem(&p, &q);
        p = q;
        if r.is_empty() {
            q = Vec::new();
            break;
        }
        let cr = content(&r, &field);
        q = primitive(&r, &cr);
    }
    let g = if q.is_empty() {
        // p is the last nonzero remainder
        let cp = content(&p, &field);
        primitive(&p, &cp)
    } else {
        // remainder of v0-degree 0: the primitive parts are coprime
        vec![UniPoly::one(field.clone())]
    };
    let gp = Poly2::from_recursive(field.clone(), vars, &g);
    let cp = Poly2::from_univariate_in_var1(&c, vars);
    gp.mul(&cp).monic()
}

/// Largest `h` (monic) with `h^2 | p`.
///
/// In characteristic 2 this is the square root of `gcd(p, ∂p/∂v0, ∂p/∂v1)`,
/// which keeps every factor to an even power. In characteristic 0 it is
/// assembled from the iterated gcd with the gradient.
pub fn square_part<F: Field>(p: &Poly2<F>) -> Poly2<F> {
    assert!(!p.is_zero(), "square part of the zero polynomial");
    let field = p.field().clone();
    let vars = p.vars();
    let grad_gcd = |g: &Poly2<F>| gcd(&gcd(g, &g.derivative0()), &g.derivative1());
    match field.characteristic() {
        2 => {
            let c = grad_gcd(p);
            c.char2_sqrt()
                .expect("gcd with the gradient is a perfect square in characteristic 2")
                .monic()
        }
        0 => {
            // g_k = prod h^max(e-k, 0); g_{k-1}/g_k = prod_{e >= k} h
            let mut prev = p.monic();
            let mut acc = Poly2::one(field, vars);
            let mut k = 1u32;
            while !prev.is_constant() {
                let next = grad_gcd(&prev);
                if k % 2 == 0 {
                    let layer = prev.div_exact(&next).expect("gcd divides");
                    acc = acc.mul(&layer);
                }
                prev = next;
                k += 1;
            }
            acc.monic()
        }
        other => unimplemented!("square part in characteristic {other}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivariate::Vars;
    use crate::field::{Gf2k, Rationals};

    const XT: Vars = ["x", "t"];

    fn gf(k: u32) -> Gf2k {
        Gf2k::new(k).unwrap()
    }

    fn mono(f: Gf2k, i: u32, j: u32) -> Poly2<Gf2k> {
        Poly2::monomial(f, XT, (i, j), 1)
    }

    #[test]
    fn gcd_of_monomials() {
        let f = gf(1);
        assert_eq!(gcd(&mono(f, 2, 1), &mono(f, 1, 2)), mono(f, 1, 1));
    }

    #[test]
    fn coprime_supports() {
        let f = gf(2);
        let a = f.gen();
        let ta = Poly2::var1(f, XT).add(&Poly2::constant(f, XT, a));
        assert!(gcd(&ta.pow(2), &mono(f, 4, 0)).is_one());
    }

    #[test]
    fn gcd_of_square_in_char_two() {
        let f = gf(1);
        let x1 = Poly2::var0(f, XT).add(&Poly2::one(f, XT));
        let x2 = mono(f, 2, 0).add(&Poly2::one(f, XT));
        assert_eq!(gcd(&x2, &x1), x1);
    }

    #[test]
    fn gcd_with_mixed_factors() {
        let f = gf(2);
        let one = Poly2::one(f, XT);
        let x = Poly2::var0(f, XT);
        let t = Poly2::var1(f, XT);
        let h = x.mul(&t).add(&one); // xt + 1
        let u = x.add(&t.pow(2)); // x + t^2
        let w = x.pow(2).add(&t); // x^2 + t
        let a = h.mul(&u).mul(&t);
        let b = h.mul(&w).mul(&t.add(&one));
        assert_eq!(gcd(&a, &b), h.monic());
    }

    #[test]
    fn square_part_examples() {
        let f = gf(1);
        let one = Poly2::one(f, XT);
        // x^6 + 1 = (x^3 + 1)^2
        let p = mono(f, 6, 0).add(&one);
        assert_eq!(square_part(&p), mono(f, 3, 0).add(&one));
        // squarefree input
        let q = mono(f, 1, 1).add(&one);
        assert!(square_part(&q).is_one());
        // (t+a)^2 (t+b)
        let f4 = gf(2);
        let t = Poly2::var1(f4, XT);
        let ta = t.add(&Poly2::constant(f4, XT, f4.gen()));
        let tb = t.add(&Poly2::one(f4, XT));
        assert_eq!(square_part(&ta.pow(2).mul(&tb)), ta);
    }

    #[test]
    fn square_part_with_inseparable_looking_factor() {
        // h = x^2 + t has zero x-derivative but is irreducible
        let f = gf(1);
        let h = mono(f, 2, 0).add(&mono(f, 0, 1));
        assert_eq!(square_part(&h.pow(3)), h);
        assert!(square_part(&h).is_one());
    }

    #[test]
    fn square_part_over_rationals() {
        let q = Rationals;
        let x = Poly2::var0(q, XT);
        let t = Poly2::var1(q, XT);
        let one = Poly2::one(q, XT);
        let a = x.add(&t).add(&one);
        let b = x.sub(&t);
        let p = a.pow(5).mul(&b.pow(2)).mul(&x);
        assert_eq!(square_part(&p), a.pow(2).mul(&b).monic());
    }
}
