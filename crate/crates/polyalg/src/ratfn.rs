//! Bivariate rational functions `num/den` in lowest terms.

use std::fmt;

use crate::bivariate::{MonomialMap, Poly2, Vars};
use crate::field::Field;
use crate::gcd::gcd;

#[derive(Clone, PartialEq, Eq)]
pub struct RatFn<F: Field> {
    num: Poly2<F>,
    den: Poly2<F>,
}

impl<F: Field> fmt::Debug for RatFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({self})")
    }
}

impl<F: Field> fmt::Display for RatFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<F: Field> From<Poly2<F>> for RatFn<F> {
    fn from(p: Poly2<F>) -> Self {
        let den = Poly2::one(p.field().clone(), p.vars());
        RatFn { num: p, den }
    }
}

impl<F: Field> RatFn<F> {
    /// `num/den` reduced; panics on a zero denominator.
    pub fn new(num: Poly2<F>, den: Poly2<F>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFn::zero(num.field().clone(), num.vars());
        }
        let g = gcd(&num, &den);
        let mut n = num.div_exact(&g).expect("gcd divides");
        let mut d = den.div_exact(&g).expect("gcd divides");
        let (_, lc) = d.leading().expect("nonzero");
        let inv = d.field().inv(&lc).expect("nonzero");
        n = n.scale(&inv);
        d = d.scale(&inv);
        RatFn { num: n, den: d }
    }

    pub fn zero(field: F, vars: Vars) -> Self {
        RatFn {
            num: Poly2::zero(field.clone(), vars),
            den: Poly2::one(field, vars),
        }
    }

    pub fn one(field: F, vars: Vars) -> Self {
        Poly2::one(field, vars).into()
    }

    pub fn num(&self) -> &Poly2<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly2<F> {
        &self.den
    }

    pub fn field(&self) -> &F {
        self.num.field()
    }

    pub fn vars(&self) -> Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RatFn::new(self.num.add(&other.num), self.den.clone());
        }
        RatFn::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        RatFn::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// `None` when dividing by zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        Some(RatFn::new(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        RatFn::new(self.num.scale(c), self.den.clone())
    }

    /// Multiplies by the Laurent monomial `v0^e0 v1^e1`.
    pub fn mul_laurent(&self, e: [i64; 2]) -> Self {
        let pos = (e[0].max(0) as u32, e[1].max(0) as u32);
        let neg = ((-e[0]).max(0) as u32, (-e[1]).max(0) as u32);
        RatFn::new(self.num.mul_monomial(pos), self.den.mul_monomial(neg))
    }

    pub fn derivative0(&self) -> Self {
        RatFn::new(
            self.num.derivative0().mul(&self.den).sub(&self.num.mul(&self.den.derivative0())),
            self.den.mul(&self.den),
        )
    }

    pub fn derivative1(&self) -> Self {
        RatFn::new(
            self.num.derivative1().mul(&self.den).sub(&self.num.mul(&self.den.derivative1())),
            self.den.mul(&self.den),
        )
    }

    /// Applies a Laurent monomial substitution of the variables.
    pub fn substitute_monomial(&self, map: &MonomialMap, vars: Vars) -> Self {
        if self.is_zero() {
            return RatFn::zero(self.field().clone(), vars);
        }
        let (n, sn) = self.num.substitute_monomial(map, vars);
        let (d, sd) = self.den.substitute_monomial(map, vars);
        RatFn::new(n, d).mul_laurent([sn[0] - sd[0], sn[1] - sd[1]])
    }

    /// Order of vanishing along `{v0 = 0}`.
    pub fn valuation0(&self) -> Option<i64> {
        Some(self.num.valuation0()? as i64 - self.den.valuation0()? as i64)
    }

    /// Order of vanishing along `{v1 = 0}`.
    pub fn valuation1(&self) -> Option<i64> {
        Some(self.num.valuation1()? as i64 - self.den.valuation1()? as i64)
    }
}
