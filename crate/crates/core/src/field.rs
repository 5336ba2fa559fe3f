//! Exact scalars over ℚ and prime fields of odd characteristic.
//!
//! Every value carries its field, so mixing fields is caught at runtime rather
//! than producing garbage. Operator impls panic on a field mismatch (all
//! elements of one algebra share a field); the `checked_*` methods report it
//! as an [`Error`].

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which exact field scalars live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    Rationals,
    Prime(u64),
}

impl FieldDesc {
    /// Prime field of odd prime order `p`.
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::Characteristic2);
        }
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::BadModulus(p));
        }
        Ok(FieldDesc::Prime(p))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldDesc::Prime(_))
    }

    /// Number of elements, `None` for ℚ.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldDesc::Rationals => None,
            FieldDesc::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldDesc::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldDesc::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `num / den` in this field.
    pub fn fraction(&self, num: i64, den: i64) -> Result<Scalar> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    /// All elements of a prime field in the order `0, 1, …, p−1`.
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match *self {
            FieldDesc::Rationals => Err(Error::InfiniteField),
            FieldDesc::Prime(p) => Ok((0..p)
                .map(|value| Scalar::Residue { value, modulus: p })
                .collect()),
        }
    }

    /// Parse a scalar written in this field's text syntax.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid scalar {s:?} for field {self}"));
        match *self {
            FieldDesc::Rationals => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let n = BigInt::from_str(n).map_err(|_| bad())?;
                let d = BigInt::from_str(d).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Rational(BigRational::new(n, d)))
            }
            FieldDesc::Prime(p) => {
                if s.contains('/') {
                    let (n, d) = s.split_once('/').unwrap();
                    return self.parse_scalar(n)?.checked_div(&self.parse_scalar(d)?);
                }
                let n = BigInt::from_str(s).map_err(|_| bad())?;
                let r = n.mod_floor(&BigInt::from(p));
                Ok(Scalar::Residue {
                    value: r.to_u64().unwrap(),
                    modulus: p,
                })
            }
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rationals => write!(f, "Q"),
            FieldDesc::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldDesc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" || s == "q" {
            return Ok(FieldDesc::Rationals);
        }
        let digits = s
            .strip_prefix("GF")
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| Error::Parse(format!("unknown field {s:?}")))?;
        let digits = digits.trim_start_matches('(').trim_end_matches(')');
        let p = digits
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("unknown field {s:?}")))?;
        FieldDesc::prime(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
///
/// Rationals are kept in lowest terms with positive denominator (guaranteed
/// by `BigRational`); residues are kept in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldDesc {
        match self {
            Scalar::Rational(_) => FieldDesc::Rationals,
            Scalar::Residue { modulus, .. } => FieldDesc::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: (a + b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    /// Whether a nonzero scalar is a square of a nonzero scalar.
    pub fn is_square(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(match self {
            Scalar::Rational(r) => {
                if r.is_negative() {
                    false
                } else {
                    is_perfect_square(r.numer()) && is_perfect_square(r.denom())
                }
            }
            Scalar::Residue { value, modulus } => pow_mod(*value, (modulus - 1) / 2, *modulus) == 1,
        })
    }

    /// Canonical text form: `n/d` or `n` for rationals, the residue for `F_p`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Residue value for prime-field scalars.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    /// Rational value for ℚ scalars.
    pub fn rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Residue { .. } => None,
        }
    }

    /// Approximate magnitude in bits, used to keep sampled coefficients small.
    pub fn height_bits(&self) -> u64 {
        match self {
            Scalar::Rational(r) => r.numer().bits().max(r.denom().bits()),
            Scalar::Residue { .. } => 0,
        }
    }

    /// Approximate value as `f64` (display only).
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Residue { value, .. } => *value as f64,
        }
    }
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(_) => write!(f, "{self}"),
            Scalar::Residue { value, modulus } => write!(f, "{value} (mod {modulus})"),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar arithmetic across fields")
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] otherwise.
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division")
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Div<&Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        &self / rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            (s, r) => *s = &*s + r,
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a -= b,
            (s, r) => *s = &*s - r,
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a *= b,
            (s, r) => *s = &*s * r,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        FieldDesc::Rationals.parse_scalar(s).unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(q("1/2") + q("1/3"), q("5/6"));
        assert_eq!(q("6/4").to_string(), "3/2");
        assert_eq!(q("-4/-2").to_string(), "2");
    }

    #[test]
    fn prime_field_basics() {
        let f3 = FieldDesc::prime(3).unwrap();
        assert_eq!(f3.from_i64(2) * f3.from_i64(2), f3.one());
        let f5 = FieldDesc::prime(5).unwrap();
        assert_eq!(f5.from_i64(2).inv().unwrap(), f5.from_i64(3));
        assert_eq!(f5.parse_scalar("-1").unwrap(), f5.from_i64(4));
        assert_eq!(f5.parse_scalar("1/2").unwrap(), f5.from_i64(3));
    }

    #[test]
    fn errors() {
        assert!(matches!(q("0").inv(), Err(Error::DivisionByZero)));
        let f3 = FieldDesc::prime(3).unwrap();
        assert!(matches!(
            q("1").checked_add(&f3.one()),
            Err(Error::FieldMismatch(..))
        ));
        assert!(matches!(FieldDesc::prime(2), Err(Error::Characteristic2)));
        assert!(matches!(FieldDesc::prime(9), Err(Error::BadModulus(9))));
        assert!(matches!(q("0").is_square(), Err(Error::ZeroInput)));
        assert!(matches!(
            FieldDesc::Rationals.elements(),
            Err(Error::InfiniteField)
        ));
    }

    #[test]
    fn squares() {
        assert!(q("4/9").is_square().unwrap());
        assert!(!q("2").is_square().unwrap());
        assert!(!q("-1").is_square().unwrap());
        let f3 = FieldDesc::prime(3).unwrap();
        assert!(!f3.from_i64(2).is_square().unwrap());
        let f5 = FieldDesc::prime(5).unwrap();
        assert!(f5.from_i64(-1).is_square().unwrap());
        // oracle: the squares mod 5 are exactly {1, 4}
        let squares: Vec<u64> = (1..5u64).map(|x| x * x % 5).collect();
        for x in 1..5u64 {
            assert_eq!(
                f5.from_i64(x as i64).is_square().unwrap(),
                squares.contains(&x)
            );
        }
    }

    #[test]
    fn enumeration_order() {
        let f3 = FieldDesc::prime(3).unwrap();
        let els: Vec<u64> = f3.elements().unwrap().iter().map(|s| s.residue().unwrap()).collect();
        assert_eq!(els, vec![0, 1, 2]);
        let f5: FieldDesc = "F5".parse().unwrap();
        assert_eq!(f5.elements().unwrap().len(), 5);
        assert_eq!("Q".parse::<FieldDesc>().unwrap(), FieldDesc::Rationals);
    }

    #[test]
    fn exhaustive_field_axioms_small_primes() {
        for p in [3u64, 5] {
            let f = FieldDesc::prime(p).unwrap();
            let els = f.elements().unwrap();
            for a in &els {
                for b in &els {
                    for c in &els {
                        assert_eq!((a + b) + c, a + (b + c));
                        assert_eq!((a * b) * c, a * (b * c));
                        assert_eq!(a * (b + c), a * b + a * c);
                    }
                    if !b.is_zero() {
                        assert_eq!(&(a / b) * b, a.clone());
                    }
                }
            }
        }
    }

    #[test]
    fn square_classes_multiply() {
        for p in [3u64, 5, 7, 11] {
            let f = FieldDesc::prime(p).unwrap();
            let nz: Vec<Scalar> = f.elements().unwrap().into_iter().skip(1).collect();
            for x in &nz {
                for y in &nz {
                    let lhs = (x * y).is_square().unwrap();
                    let rhs = x.is_square().unwrap() == y.is_square().unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
