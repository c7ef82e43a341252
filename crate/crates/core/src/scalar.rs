//! Exact field elements.
//!
//! A [`Scalar`] is either an arbitrary-precision rational or a residue modulo a
//! small prime. Integer constants created with [`Scalar::zero`],
//! [`Scalar::one`] or [`Scalar::from_int`] are rationals and are promoted into
//! `F_p` on first contact with a modular value, so generic code can use them
//! without knowing which field a session selected. Mixing two different primes
//! is a programming error and panics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::Error;

/// The ground field of a session.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// Largest prime modulus accepted for `F_p` sessions.
    pub const MAX_PRIME: u32 = 97;

    pub fn prime(p: u32) -> Result<Self, Error> {
        if !(2..=Self::MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::Validation(format!("field modulus {p} is not a prime in 2..={}", Self::MAX_PRIME)));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::zero(),
            Field::Prime(p) => Scalar::Modular { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::from_int(v),
            Field::Prime(p) => Scalar::modular(v, p),
        }
    }

    /// Moves a scalar into this field. Rationals whose denominator is
    /// divisible by `p` have no image and yield `None`.
    pub fn embed(self, s: &Scalar) -> Option<Scalar> {
        match (self, s) {
            (Field::Rational, Scalar::Rational(_)) => Some(s.clone()),
            (Field::Rational, Scalar::Modular { .. }) => None,
            (Field::Prime(p), Scalar::Rational(r)) => reduce_rational(r, p),
            (Field::Prime(p), Scalar::Modular { modulus, .. }) => (*modulus == p).then(|| s.clone()),
        }
    }

    /// Parses `"p/q"` or `"p"` into this field.
    pub fn parse(self, text: &str) -> Result<Scalar, Error> {
        let r = parse_rational(text)?;
        match self {
            Field::Rational => Ok(Scalar::Rational(r)),
            Field::Prime(p) => reduce_rational(&r, p)
                .ok_or_else(|| Error::Validation(format!("scalar {text:?} has no image in F_{p}"))),
        }
    }

    /// Document tag: `"rational"` or `"prime:p"`.
    pub fn tag(self) -> String {
        match self {
            Field::Rational => "rational".to_string(),
            Field::Prime(p) => format!("prime:{p}"),
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self, Error> {
        let tag = tag.trim();
        if tag == "rational" {
            return Ok(Field::Rational);
        }
        match tag.strip_prefix("prime:").map(str::parse::<u32>) {
            Some(Ok(p)) => Field::prime(p),
            _ => Err(Error::Validation(format!("unknown field tag {tag:?} (expected \"rational\" or \"prime:p\")"))),
        }
    }

    /// All elements of a prime field in residue order; `None` for the rationals.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some((0..p).map(|v| Scalar::Modular { value: v, modulus: p }).collect()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn parse_rational(text: &str) -> Result<BigRational, Error> {
    let bad = || Error::Validation(format!("malformed scalar {text:?} (expected \"p/q\" or \"p\")"));
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Validation(format!("scalar {text:?} has zero denominator")));
    }
    Ok(BigRational::new(num, den))
}

fn reduce_int(v: &BigInt, p: u32) -> u32 {
    let m = BigInt::from(p);
    v.mod_floor(&m).to_u32().expect("residue fits in u32")
}

fn reduce_rational(r: &BigRational, p: u32) -> Option<Scalar> {
    let num = reduce_int(r.numer(), p);
    let den = reduce_int(r.denom(), p);
    if den == 0 {
        return None;
    }
    Some(Scalar::Modular { value: mul_mod(num, inv_mod(den, p), p), modulus: p })
}

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u32;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// An exact field element.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

enum Pair<'a> {
    Rat(&'a BigRational, &'a BigRational),
    Mod(u32, u32, u32),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(v.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn modular(v: i64, p: u32) -> Self {
        Scalar::Modular { value: v.rem_euclid(p as i64) as u32, modulus: p }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// The modulus when this is an `F_p` element.
    pub fn modulus(&self) -> Option<u32> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Modular { modulus, .. } => Some(*modulus),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Modular { .. } => None,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => {
                Scalar::Modular { value: inv_mod(*value, *modulus), modulus: *modulus }
            }
        })
    }

    fn promote(r: &BigRational, p: u32) -> u32 {
        match reduce_rational(r, p) {
            Some(Scalar::Modular { value, .. }) => value,
            _ => panic!("rational {r} has no image in F_{p}"),
        }
    }

    fn pair<'a>(&'a self, other: &'a Scalar) -> Pair<'a> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Pair::Rat(a, b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) => {
                assert_eq!(p, q, "mixed scalars from F_{p} and F_{q}");
                Pair::Mod(*a, *b, *p)
            }
            (Scalar::Modular { value, modulus }, Scalar::Rational(r)) => {
                Pair::Mod(*value, Self::promote(r, *modulus), *modulus)
            }
            (Scalar::Rational(r), Scalar::Modular { value, modulus }) => {
                Pair::Mod(Self::promote(r, *modulus), *value, *modulus)
            }
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match self.pair(other) {
            Pair::Rat(a, b) => a == b,
            Pair::Mod(a, b, _) => a == b,
        }
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    /// Rationals are ordered numerically; residues by representative in `0..p`.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.pair(other) {
            Pair::Rat(a, b) => Some(a.cmp(b)),
            Pair::Mod(a, b, _) => Some(a.cmp(&b)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses a rational; use [`Field::parse`] for prime fields.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Field::Rational.parse(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match self.pair(rhs) {
            Pair::Rat(a, b) => Scalar::Rational(a + b),
            Pair::Mod(a, b, p) => Scalar::Modular { value: (a + b) % p, modulus: p },
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match self.pair(rhs) {
            Pair::Rat(a, b) => Scalar::Rational(a - b),
            Pair::Mod(a, b, p) => Scalar::Modular { value: (a + p - b) % p, modulus: p },
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match self.pair(rhs) {
            Pair::Rat(a, b) => Scalar::Rational(a * b),
            Pair::Mod(a, b, p) => Scalar::Modular { value: mul_mod(a, b, p), modulus: p },
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Modular { value, modulus } => {
                Scalar::Modular { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = &*self - &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

/// Symmetric lift of a residue to the integer in `(-p/2, p/2]`.
pub fn symmetric_lift(s: &Scalar) -> Option<Scalar> {
    match s {
        Scalar::Modular { value, modulus } => {
            let v = *value as i64;
            let p = *modulus as i64;
            Some(Scalar::from_int(if v > p / 2 { v - p } else { v }))
        }
        Scalar::Rational(_) => None,
    }
}

/// Sign of a rational scalar (`-1`, `0`, `1`); residues report `0` or `1`.
pub fn signum(s: &Scalar) -> i32 {
    match s {
        Scalar::Rational(r) if r.is_zero() => 0,
        Scalar::Rational(r) if r.is_negative() => -1,
        Scalar::Rational(_) => 1,
        Scalar::Modular { value, .. } => i32::from(*value != 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| Scalar::ratio(n, d))
    }

    fn f7() -> impl Strategy<Value = Scalar> {
        (0i64..7).prop_map(|v| Scalar::modular(v, 7))
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(Scalar::ratio(2, 4).to_string(), "1/2");
        assert_eq!(Scalar::ratio(3, -6).to_string(), "-1/2");
        assert_eq!(Scalar::ratio(4, 2).to_string(), "2");
        assert_eq!("6/-4".parse::<Scalar>().unwrap().to_string(), "-3/2");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn prime_field_parsing() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.parse("1/2").unwrap().to_string(), "3");
        assert_eq!(f5.parse("-1").unwrap().to_string(), "4");
        assert!(f5.parse("1/5").is_err());
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(101).is_err());
        assert_eq!(Field::from_tag("prime:3").unwrap(), Field::Prime(3));
        assert_eq!(Field::from_tag("rational").unwrap(), Field::Rational);
        assert!(Field::from_tag("real").is_err());
    }

    #[test]
    fn promotion_between_rationals_and_residues() {
        let three = Scalar::modular(3, 5);
        let half = Scalar::ratio(1, 2);
        assert_eq!(three, half);
        assert_eq!(&three + &Scalar::one(), Scalar::modular(4, 5));
        assert!((&three - &half).is_zero());
        assert_eq!(symmetric_lift(&Scalar::modular(4, 5)).unwrap(), Scalar::from_int(-1));
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in rat(), b in rat(), c in rat()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn modular_field_axioms(a in f7(), b in f7(), c in f7()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a + &(-&a)).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn string_round_trip(a in rat()) {
            let back: Scalar = a.to_string().parse().unwrap();
            prop_assert_eq!(back.to_string(), a.to_string());
            prop_assert_eq!(back, a);
        }
    }
}
