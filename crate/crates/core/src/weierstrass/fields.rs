//! Exact coefficient fields: rationals, Gaussian rationals, and binary
//! fields F_{2^k} (k <= 8) in polynomial basis.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported binary field F_2^{0}")]
    BadBinaryField(u32),
    #[error("elements from different fields")]
    FieldMismatch,
    #[error("cannot parse field element `{0}`")]
    Parse(String),
}

/// Field operations used by the polynomial layer. All exact.
pub trait Field: Clone + PartialEq + Eq + std::fmt::Debug {
    fn zero(&self) -> Self;
    fn one(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Result<Self, FieldError>;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// characteristic 2?
    fn char_two(&self) -> bool;
}

/// Exact rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }
}

impl Field for Rat {
    fn zero(&self) -> Self {
        Rat(BigRational::zero())
    }
    fn one(&self) -> Self {
        Rat(BigRational::one())
    }
    fn add(&self, other: &Self) -> Self {
        Rat(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rat(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rat(&self.0 * &other.0)
    }
    fn inv(&self) -> Result<Self, FieldError> {
        if self.0.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }
    fn neg(&self) -> Self {
        Rat(-self.0.clone())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn char_two(&self) -> bool {
        false
    }
}

/// Gaussian rational a + b i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    pub fn i() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_rat(r: &Rat) -> Self {
        GaussRat { re: r.0.clone(), im: BigRational::zero() }
    }
}

impl Field for GaussRat {
    fn zero(&self) -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn one(&self) -> Self {
        GaussRat { re: BigRational::one(), im: BigRational::zero() }
    }
    fn add(&self, other: &Self) -> Self {
        GaussRat { re: &self.re + &other.re, im: &self.im + &other.im }
    }
    fn sub(&self, other: &Self) -> Self {
        GaussRat { re: &self.re - &other.re, im: &self.im - &other.im }
    }
    fn mul(&self, other: &Self) -> Self {
        GaussRat {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }
    fn inv(&self) -> Result<Self, FieldError> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(GaussRat { re: &self.re / &n, im: -(&self.im / &n) })
    }
    fn neg(&self) -> Self {
        GaussRat { re: -self.re.clone(), im: -self.im.clone() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn char_two(&self) -> bool {
        false
    }
}

/// Irreducible moduli for F_{2^k}, k = 1..8, as bitmasks.
const MODULI: [u16; 9] = [
    0,
    0b10,        // k=1: x (placeholder; F_2 needs no reduction)
    0b111,       // x^2 + x + 1
    0b1011,      // x^3 + x + 1
    0b10011,     // x^4 + x + 1
    0b100101,    // x^5 + x^2 + 1
    0b1000011,   // x^6 + x + 1
    0b10000011,  // x^7 + x + 1
    0b100011011, // x^8 + x^4 + x^3 + x + 1
];

/// Element of F_{2^k} in polynomial basis, bits over F_2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct F2k {
    pub k: u32,
    pub bits: u16,
}

impl F2k {
    pub fn new(k: u32, bits: u16) -> Result<Self, FieldError> {
        if !(1..=8).contains(&k) {
            return Err(FieldError::BadBinaryField(k));
        }
        Ok(F2k { k, bits: bits & ((1 << k) - 1) })
    }

    pub fn field_order(&self) -> u32 {
        1 << self.k
    }

    pub fn elements(k: u32) -> Vec<F2k> {
        (0..(1u16 << k)).map(|bits| F2k { k, bits }).collect()
    }

    pub fn nonzero_elements(k: u32) -> Vec<F2k> {
        (1..(1u16 << k)).map(|bits| F2k { k, bits }).collect()
    }

    fn mul_bits(k: u32, a: u16, b: u16) -> u16 {
        let modulus = MODULI[k as usize] as u32;
        let mut a = a as u32;
        let mut b = b as u32;
        let mut r = 0u32;
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & (1 << k) != 0 {
                a ^= modulus;
            }
        }
        r as u16
    }

    pub fn pow(&self, mut e: u64) -> F2k {
        let mut base = *self;
        let mut acc = F2k { k: self.k, bits: 1 };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_f(&base);
            }
            e >>= 1;
            base = base.mul_f(&base);
        }
        acc
    }

    fn mul_f(&self, other: &F2k) -> F2k {
        debug_assert_eq!(self.k, other.k);
        F2k { k: self.k, bits: Self::mul_bits(self.k, self.bits, other.bits) }
    }
}

impl Field for F2k {
    fn zero(&self) -> Self {
        F2k { k: self.k, bits: 0 }
    }
    fn one(&self) -> Self {
        F2k { k: self.k, bits: 1 }
    }
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.k, other.k);
        F2k { k: self.k, bits: self.bits ^ other.bits }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_f(other)
    }
    fn inv(&self) -> Result<Self, FieldError> {
        if self.bits == 0 {
            return Err(FieldError::DivisionByZero);
        }
        // Fermat: x^(2^k - 2)
        Ok(self.pow((1u64 << self.k) - 2))
    }
    fn neg(&self) -> Self {
        *self
    }
    fn is_zero(&self) -> bool {
        self.bits == 0
    }
    fn char_two(&self) -> bool {
        true
    }
}

/// Runtime-tagged field element for the CLI surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldElem {
    Q(Rat),
    Qi(GaussRat),
    F2k(F2k),
}

impl FieldElem {
    pub fn describe(&self) -> String {
        match self {
            FieldElem::Q(r) => r.0.to_string(),
            FieldElem::Qi(g) => format!("{}+{}i", g.re, g.im),
            FieldElem::F2k(f) => format!("F{}:{:#b}", 1u32 << f.k, f.bits),
        }
    }
}
