//! Exact commutative coefficient rings.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A commutative ring with `1 != 0`, given as a context object so that
/// parameters such as a modulus travel with the operations.
pub trait Ring: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    #[allow(clippy::wrong_self_convention)] // needs the modulus
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn parse(&self, text: &str) -> Result<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;
    /// Name as accepted by `--ring`.
    fn name(&self) -> String;

    /// Embedding into the rationals, available for integral domains of
    /// characteristic zero; `None` otherwise.
    fn to_rational(&self, _a: &Self::Elem) -> Option<BigRational> {
        None
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

fn bad_literal(text: &str, ring: &str) -> Error {
    Error::syntax(0, format!("`{text}` is not an element of {ring}"))
}

fn parse_int(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn parse(&self, text: &str) -> Result<BigInt> {
        parse_int(text).ok_or_else(|| bad_literal(text, "int"))
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        "int".into()
    }
    fn to_rational(&self, a: &BigInt) -> Option<BigRational> {
        Some(BigRational::from_integer(a.clone()))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
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
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn parse(&self, text: &str) -> Result<BigRational> {
        let (num, den) = text.split_once('/').unwrap_or((text, "1"));
        let num = parse_int(num).ok_or_else(|| bad_literal(text, "rat"))?;
        let den = parse_int(den)
            .filter(|d| d.is_positive())
            .ok_or_else(|| bad_literal(text, "rat"))?;
        Ok(BigRational::new(num, den))
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        "rat".into()
    }
    fn to_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }
}

/// Integers modulo `m >= 2`, elements kept as canonical residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegersMod {
    modulus: u64,
}

impl IntegersMod {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::Usage(format!("modulus must be at least 2, got {modulus}")));
        }
        Ok(Self { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn reduce(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.modulus);
        let r = ((n % &m) + &m) % &m;
        r.try_into().expect("residue fits")
    }
}

impl Ring for IntegersMod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce(&BigInt::from(n))
    }
    fn parse(&self, text: &str) -> Result<u64> {
        parse_int(text)
            .map(|n| self.reduce(&n))
            .ok_or_else(|| bad_literal(text, &self.name()))
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        format!("mod:{}", self.modulus)
    }
}
