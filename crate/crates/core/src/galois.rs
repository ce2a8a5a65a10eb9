//! Arithmetic in GF(p^k) for small orders.
//!
//! Elements are identified with their canonical index in `[0, q)`: the
//! coefficient vector `(c_0, …, c_{k-1})` of the polynomial representative
//! (constant term first) read as a base-`p` integer with `c_0` the least
//! significant digit. Zero is index 0, one is index 1, and the prime subfield
//! occupies indices `0..p`. That bijection is what the Latin-square and
//! geometry constructions use as symbols and coordinates.
//!
//! The field modulus is the lexicographically smallest monic irreducible
//! polynomial of degree `k` (coefficients compared constant term first),
//! found by exhaustive divisor search. Multiplication goes through
//! discrete log tables built from the first primitive element.

use std::fmt;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{k} exceeds the supported maximum {MAX_FIELD_ORDER}")]
    TooLarge { p: u64, k: u32 },
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("index {index} is not an element of a field of order {q}")]
    NoSuchElement { index: u64, q: u32 },
    #[error("GF({sub}) is not a subfield of GF({q})")]
    NotASubfield { sub: u64, q: u32 },
}

pub type Result<T> = std::result::Result<T, GaloisError>;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^k` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p). Both are
/// coefficient vectors, constant term first.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let deg_m = m.len() - 1;
    while r.len() > deg_m {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - deg_m;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let sub = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

/// Irreducibility by exhaustive search for a monic divisor of degree
/// `1..=deg/2`.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for j in 0..count {
            let mut divisor = digits(j, p, d);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Base-`p` digits of `j`, least significant first, padded to `len`.
fn digits(mut j: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((j % p as u64) as u32);
        j /= p as u64;
    }
    out
}

/// Finite field GF(p^k), immutable after construction.
#[derive(Clone)]
pub struct GfField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for GfField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for GfField {}

impl fmt::Debug for GfField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GfField")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl GfField {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(GaloisError::NotPrime(p));
        }
        if k == 0 {
            return Err(GaloisError::ZeroDegree);
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(GaloisError::TooLarge { p, k })?;
        let (p, q) = (p as u32, q as u32);
        let k_us = k as usize;

        let modulus = (0..q as u64)
            .map(|j| {
                // c_0 is the most significant digit of the search counter
                let mut low_first: Vec<u32> = digits(j, p, k_us).into_iter().rev().collect();
                low_first.push(1);
                low_first
            })
            .find(|cand| is_irreducible(cand, p))
            .expect("an irreducible polynomial of every degree exists");

        let mut field = GfField {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_log_tables();
        Ok(field)
    }

    /// The field of order `q`, which must be a prime power.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(GaloisError::NotPrimePower(q))?;
        Self::new(p, k)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let k = self.k as usize;
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u32; 2 * k - 1];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p as u64) as u32;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(k, 0);
        self.from_coeffs(&r)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn build_log_tables(&mut self) {
        let order = self.q as u64 - 1;
        let factors = prime_factors(order);
        let generator = (1..self.q)
            .find(|&g| factors.iter().all(|&r| self.slow_pow(g, order / r) != 1))
            .expect("the multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1;
        for i in 0..order as u32 {
            exp.push(x);
            log[x as usize] = i;
            x = self.slow_mul(x, generator);
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus, constant term first (length `k + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Coefficient vector of an element index, constant term first.
    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        digits(a as u64, self.p, self.k as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> u32 {
        coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| acc * self.p + c % self.p)
    }

    // Index-level arithmetic. Arguments must be valid indices `< q`.

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.k {
            out += (a % self.p + b % self.p) % self.p * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.k {
            out += (self.p - a % self.p) % self.p * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        let l = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % order as u64;
        self.exp[l as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let order = self.q - 1;
        Some(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % order)) % order) as usize]
    }

    /// Indices of the subfield of order `sub`: the elements fixed by
    /// `x ↦ x^sub`. Ascending.
    pub fn subfield(&self, sub: u64) -> Result<Vec<u32>> {
        let ok =
            prime_power(sub).is_some_and(|(sp, d)| sp == self.p as u64 && self.k.is_multiple_of(d));
        if !ok {
            return Err(GaloisError::NotASubfield { sub, q: self.q });
        }
        Ok((0..self.q).filter(|&x| self.pow(x, sub) == x).collect())
    }

    pub fn element(&self, index: u64) -> Result<GfElement<'_>> {
        if index >= self.q as u64 {
            return Err(GaloisError::NoSuchElement { index, q: self.q });
        }
        Ok(GfElement {
            field: self,
            value: index as u32,
        })
    }

    pub fn zero(&self) -> GfElement<'_> {
        GfElement {
            field: self,
            value: 0,
        }
    }

    pub fn one(&self) -> GfElement<'_> {
        GfElement {
            field: self,
            value: 1,
        }
    }

    /// All elements in canonical order, zero first.
    pub fn elements(&self) -> Vec<GfElement<'_>> {
        (0..self.q)
            .map(|value| GfElement { field: self, value })
            .collect()
    }
}

/// An element bound to its field. Operations check that both operands
/// come from the same field.
#[derive(Clone, Copy, Debug)]
pub struct GfElement<'f> {
    field: &'f GfField,
    value: u32,
}

impl PartialEq for GfElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.same_field(other)
    }
}

impl Eq for GfElement<'_> {}

impl fmt::Display for GfElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl<'f> GfElement<'f> {
    pub fn index(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &'f GfField {
        self.field
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) -> bool {
        std::ptr::eq(self.field, other.field) || self.field == other.field
    }

    fn with(&self, value: u32) -> Self {
        GfElement {
            field: self.field,
            value,
        }
    }

    fn binary(&self, other: &Self, op: impl Fn(&GfField, u32, u32) -> u32) -> Result<Self> {
        if !self.same_field(other) {
            return Err(GaloisError::MixedFields);
        }
        Ok(self.with(op(self.field, self.value, other.value)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.binary(other, GfField::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, GfField::sub)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, GfField::mul)
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        self.field
            .inv(self.value)
            .map(|v| self.with(v))
            .ok_or(GaloisError::InverseOfZero)
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow(self.value, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn moduli() {
        assert_eq!(GfField::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(GfField::new(3, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(GfField::new(5, 2).unwrap().order(), 25);
        // x^2 + 1 is irreducible over GF(3) and c_0 = 1 is the smallest
        // constant term admitting an irreducible
        assert_eq!(GfField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        // 1 + x^2 + x^3 precedes 1 + x + x^3 when c_1 is compared before c_2
        assert_eq!(GfField::new(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(GfField::new(4, 1).unwrap_err(), GaloisError::NotPrime(4));
        assert_eq!(GfField::new(2, 0).unwrap_err(), GaloisError::ZeroDegree);
        assert!(matches!(
            GfField::new(2, 17),
            Err(GaloisError::TooLarge { .. })
        ));
        assert!(GfField::new(2, 16).is_ok());
        assert_eq!(
            GfField::of_order(6).unwrap_err(),
            GaloisError::NotPrimePower(6)
        );
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(0), None);
    }

    #[test]
    fn small_examples() {
        let gf3 = GfField::new(3, 1).unwrap();
        assert_eq!(gf3.inv(2), Some(2));
        let gf4 = GfField::new(2, 2).unwrap();
        // x has coefficients (0, 1), i.e. index 2; x + 1 is index 3
        assert_eq!(gf4.mul(2, 2), 3);
        let x = gf4.element(2).unwrap();
        assert_eq!(x.mul(&x).unwrap().coeffs(), vec![1, 1]);
        assert!(gf4.zero().inv().is_err());
        let gf2 = GfField::new(2, 1).unwrap();
        let listed: Vec<u32> = gf2.elements().iter().map(|e| e.index()).collect();
        assert_eq!(listed, vec![0, 1]);
        assert_eq!(gf4.elements().len(), 4);
        assert!(GfField::new(3, 2).unwrap().elements()[0].is_zero());
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = GfField::new(5, 1).unwrap();
        let b = GfField::new(7, 1).unwrap();
        let err = a.one().add(&b.one()).unwrap_err();
        assert_eq!(err, GaloisError::MixedFields);
        // an equal but separately built field is the same field
        let a2 = GfField::new(5, 1).unwrap();
        assert!(a.one().add(&a2.one()).is_ok());
    }

    fn fields(max_q: u32) -> Vec<GfField> {
        (2..=max_q as u64)
            .filter_map(|q| GfField::of_order(q).ok())
            .collect()
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in fields(25) {
            let q = f.order();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.mul(a, b), f.slow_mul(a, b));
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn inverses_and_group_order() {
        for f in fields(49) {
            for a in 1..f.order() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
        for f in fields(25) {
            for a in 1..f.order() {
                assert_eq!(f.slow_pow(a, f.order() as u64 - 1), 1);
            }
        }
    }

    #[test]
    fn subfields() {
        let f = GfField::of_order(25).unwrap();
        assert_eq!(f.subfield(5).unwrap(), vec![0, 1, 2, 3, 4]);
        let f = GfField::of_order(16).unwrap();
        assert_eq!(f.subfield(4).unwrap().len(), 4);
        assert!(f.subfield(8).is_err());
    }

    proptest! {
        #[test]
        fn axioms_sampled_in_large_fields(q_idx in 0usize..4, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
            let q = [256u64, 343, 729, 2401][q_idx];
            let f = GfField::of_order(q).unwrap();
            let (a, b, c) = (a % f.order(), b % f.order(), c % f.order());
            prop_assert_eq!(f.mul(a, b), f.slow_mul(a, b));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.sub(f.add(a, b), b), a);
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }
}
