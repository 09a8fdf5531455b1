//! Dense univariate polynomials over a [`Field`].

use crate::field::Field;

/// Dense polynomial, coefficients in increasing degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: F, coeffs: Vec<F::Elem>) -> Self {
        let mut p = UniPoly { field, coeffs };
        p.trim();
        p
    }

    pub fn zero(field: F) -> Self {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        UniPoly::new(field, vec![one])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        UniPoly::new(field, vec![c])
    }

    /// The monomial `X`.
    pub fn x(field: F) -> Self {
        let v = vec![field.zero(), field.one()];
        UniPoly::new(field, v)
    }

    /// `X - a`.
    pub fn linear_root(field: F, a: &F::Elem) -> Self {
        let v = vec![field.neg(a), field.one()];
        UniPoly::new(field, v)
    }

    fn trim(&mut self) {
        while let Some(c) = self.coeffs.last() {
            if self.field.is_zero(c) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> F::Elem {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| self.field.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        UniPoly::new(self.field.clone(), v)
    }

    pub fn neg(&self) -> Self {
        let v = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        UniPoly::new(self.field.clone(), v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let v = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        UniPoly::new(self.field.clone(), v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut v = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(&v[i + j], &f.mul(a, b));
            }
        }
        UniPoly::new(f.clone(), v)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = UniPoly::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly::new(self.field.clone(), v)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = d.degree().expect("division by the zero polynomial");
        let inv_lc = f.inv(&d.lc()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(f.clone()), self.clone());
        }
        let mut q = vec![f.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(&rem[i], &inv_lc);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.sub(&rem[idx], &f.mul(&c, dc));
            }
            q[i - dd] = c;
        }
        (UniPoly::new(f.clone(), q), UniPoly::new(f.clone(), rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.lc()).expect("nonzero");
        self.scale(&inv)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field.clone());
        }
        let g = self.gcd(other);
        self.div_exact(&g).expect("gcd divides").mul(other).monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
            .collect();
        UniPoly::new(f.clone(), v)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self^e mod m` for a possibly huge exponent given by repeated squaring
    /// steps: computes `self^(2^squarings) mod m`.
    pub fn square_iter_mod(&self, squarings: u32, m: &Self) -> Self {
        let mut r = self.rem(m);
        for _ in 0..squarings {
            r = r.mul(&r).rem(m);
        }
        r
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self) -> Self {
        if self.is_constant() {
            return UniPoly::one(self.field.clone());
        }
        let p = self.monic();
        let dp = p.derivative();
        if dp.is_zero() {
            // p = q^char in positive characteristic
            return match self.field.characteristic() {
                2 => self.char2_sqrt().radical(),
                _ => unreachable!("zero derivative of a nonconstant polynomial in char 0"),
            };
        }
        let c = p.gcd(&dp);
        let w = p.div_exact(&c).expect("gcd divides");
        if self.field.characteristic() == 0 {
            return w.monic();
        }
        w.lcm(&c.radical())
    }

    /// Square root of a polynomial in `X^2` over a perfect field of char 2.
    pub fn char2_sqrt(&self) -> Self {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .step_by(2)
            .map(|c| f.sqrt_char2(c).expect("perfect field of characteristic 2"))
            .collect();
        debug_assert!(self
            .coeffs
            .iter()
            .skip(1)
            .step_by(2)
            .all(|c| f.is_zero(c)));
        UniPoly::new(f.clone(), v)
    }

    /// Maps coefficients into another field.
    pub fn map_coeffs<G: Field>(&self, target: G, map: impl Fn(&F::Elem) -> G::Elem) -> UniPoly<G> {
        let v = self.coeffs.iter().map(map).collect();
        UniPoly::new(target, v)
    }
}
