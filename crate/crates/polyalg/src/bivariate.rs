//! Sparse bivariate polynomials (chart polynomials).
//!
//! Terms are kept in a `BTreeMap` keyed by `(i, j)` for `v0^i v1^j`, so the
//! map order is lexicographic with the first variable dominant. The leading
//! term is the last entry.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::PolyError;
use crate::field::Field;
use crate::univariate::UniPoly;

pub type Exponent = (u32, u32);

/// Ordered pair of variable names.
pub type Vars = [&'static str; 2];

/// A Laurent monomial substitution `v0 = w0^a w1^b`, `v1 = w0^c w1^e`
/// given as `[[a, b], [c, e]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonomialMap(pub [[i64; 2]; 2]);

impl MonomialMap {
    pub const IDENTITY: MonomialMap = MonomialMap([[1, 0], [0, 1]]);

    /// Exponent of `(w0, w1)` produced by `v0^i v1^j`.
    pub fn image(&self, i: i64, j: i64) -> [i64; 2] {
        let m = &self.0;
        [i * m[0][0] + j * m[1][0], i * m[0][1] + j * m[1][1]]
    }

    pub fn det(&self) -> i64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Inverse map; requires a unimodular matrix.
    pub fn inverse(&self) -> Option<MonomialMap> {
        let d = self.det();
        if d.abs() != 1 {
            return None;
        }
        let m = &self.0;
        Some(MonomialMap([
            [m[1][1] * d, -m[0][1] * d],
            [-m[1][0] * d, m[0][0] * d],
        ]))
    }

    /// `self` followed by `next`: first substitute `v = w^self`, then
    /// `w = u^next`.
    pub fn then(&self, next: &MonomialMap) -> MonomialMap {
        let r0 = next.image(self.0[0][0], self.0[0][1]);
        let r1 = next.image(self.0[1][0], self.0[1][1]);
        MonomialMap([r0, r1])
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly2<F: Field> {
    field: F,
    vars: Vars,
    terms: BTreeMap<Exponent, F::Elem>,
}

impl<F: Field> fmt::Debug for Poly2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2[{}]({})", self.field.spec(), self)
    }
}

impl<F: Field> Poly2<F> {
    pub fn zero(field: F, vars: Vars) -> Self {
        Poly2 {
            field,
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: F, vars: Vars, c: F::Elem) -> Self {
        let mut p = Poly2::zero(field, vars);
        p.add_term((0, 0), c);
        p
    }

    pub fn one(field: F, vars: Vars) -> Self {
        let one = field.one();
        Poly2::constant(field, vars, one)
    }

    pub fn monomial(field: F, vars: Vars, e: Exponent, c: F::Elem) -> Self {
        let mut p = Poly2::zero(field, vars);
        p.add_term(e, c);
        p
    }

    /// The first variable.
    pub fn var0(field: F, vars: Vars) -> Self {
        let one = field.one();
        Poly2::monomial(field, vars, (1, 0), one)
    }

    /// The second variable.
    pub fn var1(field: F, vars: Vars) -> Self {
        let one = field.one();
        Poly2::monomial(field, vars, (0, 1), one)
    }

    pub fn from_terms(field: F, vars: Vars, terms: impl IntoIterator<Item = (Exponent, F::Elem)>) -> Self {
        let mut p = Poly2::zero(field, vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Polynomial in the second variable only.
    pub fn from_univariate_in_var1(u: &UniPoly<F>, vars: Vars) -> Self {
        Poly2::from_terms(
            u.field().clone(),
            vars,
            u.coeffs().iter().enumerate().map(|(j, c)| ((0, j as u32), c.clone())),
        )
    }

    /// Polynomial in the first variable only.
    pub fn from_univariate_in_var0(u: &UniPoly<F>, vars: Vars) -> Self {
        Poly2::from_terms(
            u.field().clone(),
            vars,
            u.coeffs().iter().enumerate().map(|(i, c)| ((i as u32, 0), c.clone())),
        )
    }

    pub fn add_term(&mut self, e: Exponent, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        let field = &self.field;
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let s = field.add(existing, &c);
                if field.is_zero(&s) {
                    self.terms.remove(&e);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn with_vars(mut self, vars: Vars) -> Self {
        self.vars = vars;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: Exponent) -> F::Elem {
        self.terms.get(&e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.field.is_one(&self.coeff((0, 0)))
    }

    pub fn leading(&self) -> Option<(Exponent, F::Elem)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c.clone()))
    }

    pub fn degree0(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn degree1(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0 + e.1).max()
    }

    /// Largest power of the first variable dividing `self`.
    pub fn valuation0(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).min()
    }

    /// Largest power of the second variable dividing `self`.
    pub fn valuation1(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).min()
    }

    /// Maximum of `w0*i + w1*j` over the support.
    pub fn weighted_degree(&self, w0: i64, w1: i64) -> Option<i64> {
        self.terms
            .keys()
            .map(|&(i, j)| w0 * i as i64 + w1 * j as i64)
            .max()
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.field != other.field || self.vars != other.vars {
            Err(PolyError::Mismatch)
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        Ok(self.add(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(self.field == other.field);
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Poly2 {
            field: f.clone(),
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (*e, f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        let mut r = Poly2::zero(f.clone(), self.vars);
        for (e, a) in &self.terms {
            r.add_term(*e, f.mul(a, c));
        }
        r
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        Ok(self.mul(other))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut r = Poly2::zero(f.clone(), self.vars);
        for (e1, a) in &self.terms {
            for (e2, b) in &other.terms {
                r.add_term((e1.0 + e2.0, e1.1 + e2.1), f.mul(a, b));
            }
        }
        r
    }

    pub fn mul_monomial(&self, e: Exponent) -> Self {
        Poly2 {
            field: self.field.clone(),
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| ((k.0 + e.0, k.1 + e.1), c.clone()))
                .collect(),
        }
    }

    /// Divides by `v0^e.0 v1^e.1`, which must divide every term.
    pub fn div_monomial(&self, e: Exponent) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            if k.0 < e.0 || k.1 < e.1 {
                return None;
            }
            terms.insert((k.0 - e.0, k.1 - e.1), c.clone());
        }
        Some(Poly2 {
            field: self.field.clone(),
            vars: self.vars,
            terms,
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly2::one(self.field.clone(), self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => self.scale(&self.field.inv(&lc).expect("nonzero")),
        }
    }

    /// Exact division in lexicographic order; `None` if not divisible.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (de, dc) = d.leading()?;
        let f = &self.field;
        let inv = f.inv(&dc)?;
        let mut rem = self.clone();
        let mut q = Poly2::zero(f.clone(), self.vars);
        while let Some((re, rc)) = rem.leading() {
            if re.0 < de.0 || re.1 < de.1 {
                return None;
            }
            let e = (re.0 - de.0, re.1 - de.1);
            let c = f.mul(&rc, &inv);
            q.add_term(e, c.clone());
            rem = rem.sub(&d.mul_monomial(e).scale(&c));
        }
        Some(q)
    }

    pub fn derivative0(&self) -> Self {
        let f = &self.field;
        let mut r = Poly2::zero(f.clone(), self.vars);
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                r.add_term((i - 1, j), f.mul(&f.from_i64(i as i64), c));
            }
        }
        r
    }

    pub fn derivative1(&self) -> Self {
        let f = &self.field;
        let mut r = Poly2::zero(f.clone(), self.vars);
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                r.add_term((i, j - 1), f.mul(&f.from_i64(j as i64), c));
            }
        }
        r
    }

    pub fn eval(&self, v0: &F::Elem, v1: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.terms.iter().fold(f.zero(), |acc, (&(i, j), c)| {
            let m = f.mul(&f.pow(v0, i as u64), &f.pow(v1, j as u64));
            f.add(&acc, &f.mul(c, &m))
        })
    }

    /// Substitutes `v1 = a`, leaving a polynomial in `v0`.
    pub fn eval_var1(&self, a: &F::Elem) -> UniPoly<F> {
        let f = &self.field;
        let n = self.degree0().map_or(0, |d| d as usize + 1);
        let mut v = vec![f.zero(); n];
        for (&(i, j), c) in &self.terms {
            let t = f.mul(c, &f.pow(a, j as u64));
            v[i as usize] = f.add(&v[i as usize], &t);
        }
        UniPoly::new(f.clone(), v)
    }

    /// Substitutes `v0 = a`, leaving a polynomial in `v1`.
    pub fn eval_var0(&self, a: &F::Elem) -> UniPoly<F> {
        self.swap_vars().eval_var1(a)
    }

    /// Exchanges the roles of the two variables.
    pub fn swap_vars(&self) -> Self {
        Poly2 {
            field: self.field.clone(),
            vars: [self.vars[1], self.vars[0]],
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    /// `p(v0 + a, v1 + b)`.
    pub fn translate(&self, a: &F::Elem, b: &F::Elem) -> Self {
        let f = &self.field;
        let s0 = Poly2::var0(f.clone(), self.vars).add(&Poly2::constant(f.clone(), self.vars, a.clone()));
        let s1 = Poly2::var1(f.clone(), self.vars).add(&Poly2::constant(f.clone(), self.vars, b.clone()));
        let d0 = self.degree0().unwrap_or(0);
        let d1 = self.degree1().unwrap_or(0);
        let p0: Vec<Self> = (0..=d0).scan(Poly2::one(f.clone(), self.vars), |acc, _| {
            let cur = acc.clone();
            *acc = acc.mul(&s0);
            Some(cur)
        }).collect();
        let p1: Vec<Self> = (0..=d1).scan(Poly2::one(f.clone(), self.vars), |acc, _| {
            let cur = acc.clone();
            *acc = acc.mul(&s1);
            Some(cur)
        }).collect();
        let mut r = Poly2::zero(f.clone(), self.vars);
        for (&(i, j), c) in &self.terms {
            r = r.add(&p0[i as usize].mul(&p1[j as usize]).scale(c));
        }
        r
    }

    /// Applies a Laurent monomial substitution. Returns `(q, shift)` with
    /// `self(v) = w^shift · q(w)` and `q` not divisible by either variable.
    pub fn substitute_monomial(&self, map: &MonomialMap, vars: Vars) -> (Self, [i64; 2]) {
        if self.is_zero() {
            return (Poly2::zero(self.field.clone(), vars), [0, 0]);
        }
        let images: Vec<([i64; 2], &F::Elem)> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| (map.image(i as i64, j as i64), c))
            .collect();
        let m0 = images.iter().map(|(e, _)| e[0]).min().unwrap_or(0);
        let m1 = images.iter().map(|(e, _)| e[1]).min().unwrap_or(0);
        let mut q = Poly2::zero(self.field.clone(), vars);
        for (e, c) in images {
            q.add_term(((e[0] - m0) as u32, (e[1] - m1) as u32), c.clone());
        }
        (q, [m0, m1])
    }

    /// Coefficients in `v1` of each power of `v0`.
    pub fn to_recursive(&self) -> Vec<UniPoly<F>> {
        let f = &self.field;
        let n = self.degree0().map_or(0, |d| d as usize + 1);
        let mut rows: Vec<Vec<F::Elem>> = vec![Vec::new(); n];
        for (&(i, j), c) in &self.terms {
            let row = &mut rows[i as usize];
            if row.len() <= j as usize {
                row.resize(j as usize + 1, f.zero());
            }
            row[j as usize] = c.clone();
        }
        rows.into_iter().map(|r| UniPoly::new(f.clone(), r)).collect()
    }

    pub fn from_recursive(field: F, vars: Vars, rows: &[UniPoly<F>]) -> Self {
        let mut p = Poly2::zero(field, vars);
        for (i, row) in rows.iter().enumerate() {
            for (j, c) in row.coeffs().iter().enumerate() {
                p.add_term((i as u32, j as u32), c.clone());
            }
        }
        p
    }

    /// Maps coefficients into another field.
    pub fn map_coeffs<G: Field>(&self, target: G, map: impl Fn(&F::Elem) -> G::Elem) -> Poly2<G> {
        let mut r = Poly2::zero(target, self.vars);
        for (e, c) in &self.terms {
            r.add_term(*e, map(c));
        }
        r
    }

    /// Square root of a polynomial in `v0^2, v1^2` over a perfect field of
    /// characteristic 2; `None` if some exponent is odd.
    pub fn char2_sqrt(&self) -> Option<Self> {
        let f = &self.field;
        let mut r = Poly2::zero(f.clone(), self.vars);
        for (&(i, j), c) in &self.terms {
            if i % 2 == 1 || j % 2 == 1 {
                return None;
            }
            r.add_term((i / 2, j / 2), f.sqrt_char2(c)?);
        }
        Some(r)
    }
}

impl<F: Field> fmt::Display for Poly2<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let f = &self.field;
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            let mut mono = Vec::new();
            for (v, e) in [(self.vars[0], i), (self.vars[1], j)] {
                match e {
                    0 => {}
                    1 => mono.push(v.to_string()),
                    _ => mono.push(format!("{v}^{e}")),
                }
            }
            let (neg, cs) = split_sign(f, c);
            if first {
                if neg {
                    write!(out, "-")?;
                }
            } else {
                write!(out, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let is_one = cs == "1";
            let needs_parens = cs.contains('+') || cs.contains('/') && !mono.is_empty();
            let coeff = if needs_parens { format!("({cs})") } else { cs };
            match (is_one, mono.is_empty()) {
                (true, true) => write!(out, "1")?,
                (true, false) => write!(out, "{}", mono.join("*"))?,
                (false, true) => write!(out, "{coeff}")?,
                (false, false) => write!(out, "{}*{}", coeff, mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Sign and magnitude text of a coefficient.
fn split_sign<F: Field>(f: &F, c: &F::Elem) -> (bool, String) {
    let s = f.format_elem(c);
    match s.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, s),
    }
}
