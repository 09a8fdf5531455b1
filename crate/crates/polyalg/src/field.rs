//! Coefficient fields: binary extension fields `GF(2^k)` with a fixed modulus
//! per degree, and the rationals.

use std::collections::HashMap;
use std::fmt::{self, Debug};
use std::hash::Hash;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::PolyError;

/// Largest extension degree supported by the `u64` element representation.
pub const MAX_EXTENSION_DEGREE: u32 = 32;

/// Arithmetic of a commutative field whose elements are plain values and whose
/// operations need the field object as context.
pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn characteristic(&self) -> u32;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn spec(&self) -> FieldSpec;
    fn format_elem(&self, a: &Self::Elem) -> String;

    /// Named constant usable in polynomial text (the class of the modulus
    /// variable for `GF(2^k)`).
    fn generator(&self) -> Option<(&'static str, Self::Elem)> {
        None
    }

    /// Square root in a perfect field of characteristic 2.
    fn sqrt_char2(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// Parses a rational literal `p` or `p/q`.
    fn from_ratio(&self, num: i64, den: i64) -> Option<Self::Elem> {
        let d = self.inv(&self.from_i64(den))?;
        Some(self.mul(&self.from_i64(num), &d))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        Some(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// Which field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    /// `GF(2^k)`.
    Binary(u32),
    Rational,
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Binary(k) => write!(f, "2^{k}"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rational);
        }
        let k = if let Some(rest) = s.strip_prefix("2^") {
            rest.parse::<u32>().ok()
        } else if s == "2" {
            Some(1)
        } else {
            None
        };
        match k {
            Some(k) if (1..=MAX_EXTENSION_DEGREE).contains(&k) => Ok(FieldSpec::Binary(k)),
            _ => Err(PolyError::Parse(format!(
                "field must be `Q` or `2^k` with 1 <= k <= {MAX_EXTENSION_DEGREE}, got `{s}`"
            ))),
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// GF(2)[X] helpers on bit-packed polynomials

fn gf2_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn gf2_mod(mut a: u64, m: u64) -> u64 {
    let dm = gf2_degree(m);
    while a != 0 && gf2_degree(a) >= dm {
        a ^= m << (gf2_degree(a) - dm);
    }
    a
}

fn gf2_mulmod(a: u64, b: u64, m: u64) -> u64 {
    let dm = gf2_degree(m);
    let mut a = a;
    let mut b = b;
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if gf2_degree(a) >= dm {
            a ^= m;
        }
    }
    acc
}

fn gf2_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = gf2_mod(a, b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test for a bit-packed polynomial over GF(2).
fn gf2_is_irreducible(m: u64) -> bool {
    let n = gf2_degree(m);
    if n <= 0 {
        return false;
    }
    let x = 0b10u64;
    let mut h = gf2_mod(x, m);
    for _ in 0..n / 2 {
        h = gf2_mulmod(h, h, m);
        if gf2_gcd(m, h ^ gf2_mod(x, m)) != 1 {
            return false;
        }
    }
    true
}

/// Smallest (as an integer) irreducible polynomial of degree `k` over GF(2)
/// with nonzero constant term.
pub fn least_irreducible(k: u32) -> u64 {
    assert!((1..=MAX_EXTENSION_DEGREE).contains(&k));
    let start = (1u64 << k) | 1;
    let end = 1u64 << (k + 1);
    (start..end)
        .step_by(2)
        .find(|&m| gf2_is_irreducible(m))
        .expect("an irreducible polynomial exists in every degree")
}

fn modulus_for(k: u32) -> u64 {
    static CACHE: OnceLock<Mutex<HashMap<u32, u64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("modulus cache poisoned");
    *guard.entry(k).or_insert_with(|| least_irreducible(k))
}

/// `GF(2^k) = GF(2)[g]/(m(g))` with `m` the least irreducible of degree `k`.
/// Elements are bit-packed residues.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf2k {
    degree: u32,
    modulus: u64,
}

impl Debug for Gf2k {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})[{:#b}]", self.degree, self.modulus)
    }
}

impl Gf2k {
    pub fn new(k: u32) -> Result<Self, PolyError> {
        if !(1..=MAX_EXTENSION_DEGREE).contains(&k) {
            return Err(PolyError::UnsupportedField(format!(
                "extension degree {k} outside 1..={MAX_EXTENSION_DEGREE}"
            )));
        }
        Ok(Gf2k {
            degree: k,
            modulus: modulus_for(k),
        })
    }

    /// Smallest field `GF(2^k)` with at least `n` elements.
    pub fn with_at_least(n: usize) -> Result<Self, PolyError> {
        let mut k = 1;
        while (1u128 << k) < n as u128 {
            k += 1;
        }
        Gf2k::new(k)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        1u64 << self.degree
    }

    /// Element with the given bit pattern, if it is a reduced residue.
    pub fn element(&self, bits: u64) -> Option<u64> {
        (bits < self.order()).then_some(bits)
    }

    /// All elements in increasing bit-pattern order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.order()
    }

    /// The class of the modulus variable.
    pub fn gen(&self) -> u64 {
        gf2_mod(0b10, self.modulus)
    }

    /// `a ↦ a^(2^k0)` applied `times` times.
    pub fn frobenius(&self, a: u64, times: u32) -> u64 {
        let mut r = a;
        for _ in 0..times {
            r = gf2_mulmod(r, r, self.modulus);
        }
        r
    }

    /// Absolute trace to GF(2).
    pub fn trace(&self, a: u64) -> u64 {
        let mut acc = 0;
        let mut p = a;
        for _ in 0..self.degree {
            acc ^= p;
            p = gf2_mulmod(p, p, self.modulus);
        }
        acc
    }
}

impl Field for Gf2k {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        a ^ b
    }

    fn neg(&self, a: &u64) -> u64 {
        *a
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        gf2_mulmod(*a, *b, self.modulus)
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // a^(2^k - 2)
        Some(self.pow(a, self.order() - 2))
    }

    fn characteristic(&self) -> u32 {
        2
    }

    fn from_i64(&self, n: i64) -> u64 {
        (n.rem_euclid(2)) as u64
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Binary(self.degree)
    }

    fn format_elem(&self, a: &u64) -> String {
        if *a < 2 {
            return a.to_string();
        }
        let mut parts = Vec::new();
        for i in (0..self.degree).rev() {
            if (a >> i) & 1 == 1 {
                parts.push(match i {
                    0 => "1".to_string(),
                    1 => "g".to_string(),
                    _ => format!("g^{i}"),
                });
            }
        }
        parts.join("+")
    }

    fn generator(&self) -> Option<(&'static str, u64)> {
        Some(("g", self.gen()))
    }

    fn sqrt_char2(&self, a: &u64) -> Option<u64> {
        Some(self.frobenius(*a, self.degree - 1))
    }

    fn from_ratio(&self, num: i64, den: i64) -> Option<u64> {
        if den.rem_euclid(2) == 0 {
            None
        } else {
            Some(self.from_i64(num))
        }
    }
}

/// The field of rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn characteristic(&self) -> u32 {
        0
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }

    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

/// An injective field map `GF(2^k) → GF(2^K)` for `k | K`, sending the
/// generator to the least root of its minimal polynomial.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: Gf2k,
    pub target: Gf2k,
    /// Images of `g^0, g^1, ..., g^(k-1)`.
    basis_images: Vec<u64>,
}

impl Embedding {
    pub fn new(source: Gf2k, target: Gf2k) -> Result<Self, PolyError> {
        if target.degree() % source.degree() != 0 {
            return Err(PolyError::UnsupportedField(format!(
                "GF(2^{}) does not embed in GF(2^{})",
                source.degree(),
                target.degree()
            )));
        }
        let image_of_gen = if source == target {
            source.gen()
        } else {
            // minimal polynomial of g over GF(2) is the modulus itself
            let m = source.modulus();
            let coeffs: Vec<u64> = (0..=source.degree()).map(|i| (m >> i) & 1).collect();
            let poly = crate::univariate::UniPoly::new(target, coeffs);
            let mut roots = crate::roots::roots_split(&poly)?;
            roots.sort_unstable();
            *roots.first().ok_or_else(|| {
                PolyError::Internal("modulus has no root in the extension".into())
            })?
        };
        let mut basis_images = Vec::with_capacity(source.degree() as usize);
        let mut p = 1u64;
        for _ in 0..source.degree() {
            basis_images.push(p);
            p = target.mul(&p, &image_of_gen);
        }
        Ok(Embedding {
            source,
            target,
            basis_images,
        })
    }

    pub fn apply(&self, a: u64) -> u64 {
        self.basis_images
            .iter()
            .enumerate()
            .filter(|(i, _)| (a >> i) & 1 == 1)
            .fold(0, |acc, (_, b)| acc ^ b)
    }

    /// Inverse image of `b`, if `b` lies in the embedded subfield.
    pub fn preimage(&self, b: u64) -> Option<u64> {
        // Gaussian elimination over GF(2): columns are basis images.
        let k = self.basis_images.len();
        let mut rows: Vec<(u64, u64)> = self
            .basis_images
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, 1u64 << i))
            .collect();
        let mut target = b;
        let mut combo = 0u64;
        let mut pivots: Vec<(i32, u64, u64)> = Vec::with_capacity(k);
        for (v, tag) in rows.drain(..) {
            let (mut v, mut tag) = (v, tag);
            for &(bit, pv, ptag) in &pivots {
                if (v >> bit) & 1 == 1 {
                    v ^= pv;
                    tag ^= ptag;
                }
            }
            if v != 0 {
                let bit = gf2_degree(v);
                for p in pivots.iter_mut() {
                    if (p.1 >> bit) & 1 == 1 {
                        p.1 ^= v;
                        p.2 ^= tag;
                    }
                }
                pivots.push((bit, v, tag));
            }
        }
        for &(bit, pv, ptag) in &pivots {
            if (target >> bit) & 1 == 1 {
                target ^= pv;
                combo ^= ptag;
            }
        }
        (target == 0).then_some(combo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_moduli_are_the_textbook_ones() {
        assert_eq!(least_irreducible(1), 0b11);
        assert_eq!(least_irreducible(2), 0b111);
        assert_eq!(least_irreducible(3), 0b1011);
        assert_eq!(least_irreducible(4), 0b10011);
        assert_eq!(least_irreducible(8), 0b1_0001_1011);
    }

    #[test]
    fn inverses_in_gf16() {
        let f = Gf2k::new(4).unwrap();
        for a in 1..16 {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn cube_roots_of_unity_live_in_gf4() {
        let f = Gf2k::new(2).unwrap();
        let cubes: Vec<u64> = f.elements().filter(|a| f.pow(a, 3) == 1).collect();
        assert_eq!(cubes.len(), 3);
    }

    #[test]
    fn sqrt_inverts_squaring() {
        let f = Gf2k::new(5).unwrap();
        for a in f.elements() {
            let s = f.sqrt_char2(&a).unwrap();
            assert_eq!(f.mul(&s, &s), a);
        }
    }

    #[test]
    fn field_spec_round_trip() {
        assert_eq!("2^4".parse::<FieldSpec>().unwrap(), FieldSpec::Binary(4));
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert!("3^2".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Binary(2).to_string(), "2^2");
    }

    #[test]
    fn embedding_is_a_ring_map_with_inverse() {
        let small = Gf2k::new(2).unwrap();
        let big = Gf2k::new(4).unwrap();
        let e = Embedding::new(small, big).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(e.apply(small.mul(&a, &b)), big.mul(&e.apply(a), &e.apply(b)));
            }
            assert_eq!(e.preimage(e.apply(a)), Some(a));
        }
        let outside = big.elements().filter(|&b| e.preimage(b).is_none()).count();
        assert_eq!(outside, 12);
    }
}
