//! Resultants of bivariate polynomials via the Sylvester matrix and
//! fraction-free (Bareiss) elimination over `F[v1]`.

use crate::bivariate::Poly2;
use crate::field::Field;
use crate::univariate::UniPoly;

/// Determinant of a square matrix over `F[X]`.
pub fn determinant<F: Field>(mut m: Vec<Vec<UniPoly<F>>>, field: &F) -> UniPoly<F> {
    let n = m.len();
    if n == 0 {
        return UniPoly::one(field.clone());
    }
    let mut negate = false;
    let mut prev = UniPoly::one(field.clone());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return UniPoly::zero(field.clone()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = UniPoly::zero(field.clone());
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// `Res_{v0}(a, b)` as a polynomial in `v1`.
pub fn resultant_var0<F: Field>(a: &Poly2<F>, b: &Poly2<F>) -> UniPoly<F> {
    let field = a.field().clone();
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero(field);
    }
    let ra = a.to_recursive();
    let rb = b.to_recursive();
    let m = ra.len() - 1;
    let n = rb.len() - 1;
    let size = m + n;
    let zero = UniPoly::zero(field.clone());
    let mut rows = Vec::with_capacity(size);
    // n shifted copies of a, m shifted copies of b; highest degree first
    for s in 0..n {
        let mut row = vec![zero.clone(); size];
        for (i, c) in ra.iter().enumerate() {
            row[s + (m - i)] = c.clone();
        }
        rows.push(row);
    }
    for s in 0..m {
        let mut row = vec![zero.clone(); size];
        for (i, c) in rb.iter().enumerate() {
            row[s + (n - i)] = c.clone();
        }
        rows.push(row);
    }
    determinant(rows, &field)
}

/// `Res_{v1}(a, b)` as a polynomial in `v0`.
pub fn resultant_var1<F: Field>(a: &Poly2<F>, b: &Poly2<F>) -> UniPoly<F> {
    resultant_var0(&a.swap_vars(), &b.swap_vars())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivariate::Vars;
    use crate::field::Rationals;

    const XT: Vars = ["x", "t"];

    #[test]
    fn resultant_of_circle_and_line() {
        let q = Rationals;
        let x = Poly2::var0(q, XT);
        let t = Poly2::var1(q, XT);
        let one = Poly2::one(q, XT);
        // x^2 + t^2 - 1 and x - t: eliminating x gives 2t^2 - 1
        let a = x.pow(2).add(&t.pow(2)).sub(&one);
        let b = x.sub(&t);
        let r = resultant_var0(&a, &b);
        let expected = UniPoly::new(q, vec![q.from_i64(-1), q.from_i64(0), q.from_i64(2)]);
        assert_eq!(r, expected);
    }

    #[test]
    fn degree_zero_operand() {
        let q = Rationals;
        let t = Poly2::var1(q, XT);
        let x = Poly2::var0(q, XT);
        // Res_x(t, x^3) = t^3
        let r = resultant_var0(&t, &x.pow(3));
        assert_eq!(r, UniPoly::x(q).pow(3));
    }
}
