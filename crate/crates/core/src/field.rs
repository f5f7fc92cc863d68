//! Exact scalars over the rationals and prime fields.
//!
//! Every value is kept in canonical form: rationals as reduced fractions with a
//! positive denominator, prime-field values as residues in `[0, p)`. Structural
//! equality of [`FieldElement`] therefore coincides with equality of scalars.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Kind {
    Rationals,
    Prime(u64),
}

/// Selects the scalar field: the rationals or `F_p` for a prime `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec(Kind);

impl FieldSpec {
    pub const fn rationals() -> Self {
        FieldSpec(Kind::Rationals)
    }

    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec(Kind::Prime(p)))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// `Some(p)` for `F_p`, `None` for the rationals.
    pub fn modulus(&self) -> Option<u64> {
        match self.0 {
            Kind::Rationals => None,
            Kind::Prime(p) => Some(p),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.modulus().unwrap_or(0)
    }

    pub fn is_finite(&self) -> bool {
        self.modulus().is_some()
    }

    /// Returns `p` or fails with [`Error::FieldNotFinite`].
    pub fn require_finite(&self) -> Result<u64> {
        self.modulus().ok_or(Error::FieldNotFinite(*self))
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        let value = match self.0 {
            Kind::Rationals => Value::Rational(BigRational::from_integer(BigInt::from(n))),
            Kind::Prime(p) => Value::Residue((n as i128).rem_euclid(p as i128) as u64),
        };
        FieldElement { field: *self, value }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        let value = match self.0 {
            Kind::Rationals => Value::Rational(BigRational::from_integer(n.clone())),
            Kind::Prime(p) => Value::Residue(reduce_bigint(n, p)),
        };
        FieldElement { field: *self, value }
    }

    /// `num / den` as a field element; fails if `den` vanishes in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldElement> {
        match self.0 {
            Kind::Rationals => {
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(FieldElement {
                    field: *self,
                    value: Value::Rational(BigRational::new(num.clone(), den.clone())),
                })
            }
            Kind::Prime(_) => self.from_bigint(num).checked_div(&self.from_bigint(den)),
        }
    }

    /// Residue `r mod p`; only meaningful for prime fields.
    pub fn residue(&self, r: u64) -> FieldElement {
        match self.0 {
            Kind::Rationals => self.from_i64(r as i64),
            Kind::Prime(p) => FieldElement { field: *self, value: Value::Residue(r % p) },
        }
    }

    /// All `p` elements of a prime field in residue order.
    pub fn elements(&self) -> Result<Vec<FieldElement>> {
        let p = self.require_finite()?;
        Ok((0..p).map(|r| self.residue(r)).collect())
    }

    pub fn parse(&self, text: &str) -> Result<FieldElement> {
        parse_scalar(text, *self)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Rationals => write!(f, "Q"),
            Kind::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Value {
    Rational(BigRational),
    Residue(u64),
}

/// An exact scalar tagged with its field.
///
/// The arithmetic operators panic when the operands live in different fields;
/// the `checked_*` methods report [`Error::FieldMismatch`] instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldSpec,
    value: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact field arithmetic with explicit error reporting.
pub fn scalar_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl FieldElement {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rational(q) => q.is_zero(),
            Value::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Rational(q) => q.is_one(),
            Value::Residue(r) => *r == 1,
        }
    }

    /// The residue of a prime-field element.
    pub fn as_residue(&self) -> Option<u64> {
        match self.value {
            Value::Residue(r) => Some(r),
            Value::Rational(_) => None,
        }
    }

    fn check_field(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: self.field, right: other.field })
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_field(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a + b),
            (Value::Residue(a), Value::Residue(b)) => {
                let p = self.field.characteristic();
                Value::Residue(((*a as u128 + *b as u128) % p as u128) as u64)
            }
            _ => unreachable!("field tag and value kind disagree"),
        };
        Ok(FieldElement { field: self.field, value })
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_field(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a * b),
            (Value::Residue(a), Value::Residue(b)) => {
                let p = self.field.characteristic();
                Value::Residue(((*a as u128 * *b as u128) % p as u128) as u64)
            }
            _ => unreachable!("field tag and value kind disagree"),
        };
        Ok(FieldElement { field: self.field, value })
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Multiplicative inverse; residues are inverted with the extended Euclidean algorithm.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let value = match &self.value {
            Value::Rational(q) => Value::Rational(q.recip()),
            Value::Residue(r) => Value::Residue(mod_inverse(*r, self.field.characteristic())),
        };
        Ok(FieldElement { field: self.field, value })
    }

    fn neg_ref(&self) -> FieldElement {
        let value = match &self.value {
            Value::Rational(q) => Value::Rational(-q),
            Value::Residue(r) => {
                let p = self.field.characteristic();
                Value::Residue((p - r) % p)
            }
        };
        FieldElement { field: self.field, value }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "{a} has no inverse mod {p}");
    old_s.rem_euclid(p as i128) as u64
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        *self = &*self - rhs;
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Value::Residue(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `[+-]?digits(/digits)?` into the given field.
///
/// Over `F_p` an integer is reduced mod `p` and `a/b` means `a * b^-1`.
pub fn parse_scalar(text: &str, field: FieldSpec) -> Result<FieldElement> {
    let bad = || Error::Parse(format!("invalid scalar {text:?}"));
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = num_text.strip_prefix(['+', '-']).unwrap_or(num_text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let num: BigInt = num_text.parse().map_err(|_| bad())?;
    let den: BigInt = match den_text {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
    };
    debug_assert!(!den.is_negative());
    field.from_ratio(&num, &den)
}
