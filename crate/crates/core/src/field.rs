//! Exact scalars over the rationals and over prime fields `F_p`.
//!
//! A [`Scalar`] carries enough information to do arithmetic on its own: a
//! rational value, or a residue together with its modulus. Mixing the two
//! kinds (or two different moduli) in an operator is a programming error
//! and panics; [`scalar_arith`] is the checked entry point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("malformed field descriptor `{0}` (expected `rational` or `fp:<prime>`)")]
    Malformed(String),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("malformed scalar literal `{0}`")]
    BadLiteral(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars live in different fields ({0} vs {1})")]
    FieldMismatch(FieldDescriptor, FieldDescriptor),
}

/// The ground field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(u64),
}

impl FieldDescriptor {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(FieldDescriptor::PrimeField(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    /// Characteristic, with 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::PrimeField(p) => *p,
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
            FieldDescriptor::Rationals => Scalar::Rational(BigRational::from_integer(n.into())),
            FieldDescriptor::PrimeField(p) => Scalar::Mod {
                value: (n as i128).rem_euclid(p as i128) as u64,
                p,
            },
        }
    }

    /// Maps an exact rational into this field; fails when the denominator
    /// vanishes modulo `p`.
    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar, FieldError> {
        match *self {
            FieldDescriptor::Rationals => Ok(Scalar::Rational(r.clone())),
            FieldDescriptor::PrimeField(p) => {
                let pb = BigInt::from(p);
                let num = r.numer().mod_floor(&pb).to_u64().unwrap();
                let den = r.denom().mod_floor(&pb).to_u64().unwrap();
                if den == 0 {
                    return Err(FieldError::DivisionByZero);
                }
                let n = Scalar::Mod { value: num, p };
                let d = Scalar::Mod { value: den, p };
                n.checked_div(&d)
            }
        }
    }

    /// Parses a scalar literal (`-?[0-9]+` or `-?[0-9]+/[1-9][0-9]*`).
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, FieldError> {
        let r = parse_rational_literal(text)?;
        self.from_rational(&r)
    }

    /// Every element of the field when it is finite.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match *self {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::PrimeField(p) => {
                Some((0..p).map(|value| Scalar::Mod { value, p }).collect())
            }
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "rational"),
            FieldDescriptor::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        field_parse(s)
    }
}

pub fn field_parse(text: &str) -> Result<FieldDescriptor, FieldError> {
    let t = text.trim();
    if t == "rational" {
        return Ok(FieldDescriptor::Rationals);
    }
    let digits = t
        .strip_prefix("fp:")
        .ok_or_else(|| FieldError::Malformed(text.to_string()))?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(FieldError::Malformed(text.to_string()));
    }
    let p: u64 = digits
        .parse()
        .map_err(|_| FieldError::Malformed(text.to_string()))?;
    FieldDescriptor::prime(p)
}

fn parse_rational_literal(text: &str) -> Result<BigRational, FieldError> {
    let bad = || FieldError::BadLiteral(text.to_string());
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(num) {
        return Err(bad());
    }
    let mut n: BigInt = num.parse().map_err(|_| bad())?;
    if neg {
        n = -n;
    }
    let d: BigInt = match den {
        None => BigInt::one(),
        Some(d) => {
            if !all_digits(d) || d.starts_with('0') {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
    };
    Ok(BigRational::new(n, d))
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldDescriptor {
        match self {
            Scalar::Rational(_) => FieldDescriptor::Rationals,
            Scalar::Mod { p, .. } => FieldDescriptor::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.field().one()
    }

    fn check_same(&self, other: &Scalar) -> Result<(), FieldError> {
        let (a, b) = (self.field(), other.field());
        if a == b {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(a, b))
        }
    }

    pub fn inverse(&self) -> Result<Scalar, FieldError> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(FieldError::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Mod { value, p } => {
                if *value == 0 {
                    Err(FieldError::DivisionByZero)
                } else {
                    Ok(Scalar::Mod {
                        value: pow_mod(*value, p - 2, *p),
                        p: *p,
                    })
                }
            }
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check_same(other)?;
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, exp: u64) -> Scalar {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer value when the scalar is an integer (rationals) or a residue.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.numer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Mod { value, .. } => i64::try_from(*value).ok(),
        }
    }

    /// Canonical ordering used for deterministic output only.
    fn sort_key(&self) -> (BigRational, u64) {
        match self {
            Scalar::Rational(r) => (r.clone(), 0),
            Scalar::Mod { value, .. } => (BigRational::zero(), *value),
        }
    }

    pub fn is_negative_literal(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $rat:expr, $modop:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational($rat(a, b)),
                    (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                        Scalar::Mod {
                            value: $modop(*a, *b, *p),
                            p: *p,
                        }
                    }
                    (a, b) => panic!("{}", FieldError::FieldMismatch(a.field(), b.field())),
                }
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
    };
}

binop!(
    Add,
    add,
    |a: &BigRational, b: &BigRational| a + b,
    |a: u64, b: u64, p: u64| ((a as u128 + b as u128) % p as u128) as u64
);
binop!(
    Sub,
    sub,
    |a: &BigRational, b: &BigRational| a - b,
    |a: u64, b: u64, p: u64| ((a as u128 + p as u128 - b as u128) % p as u128) as u64
);
binop!(
    Mul,
    mul,
    |a: &BigRational, b: &BigRational| a * b,
    |a: u64, b: u64, p: u64| mul_mod(a, b, p)
);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: if *value == 0 { 0 } else { p - value },
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, FieldError> {
    a.check_same(b)?;
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

/// A primitive `n`-th root of unity, if the field has one. For `F_p` the
/// smallest such residue is returned.
pub fn primitive_root_of_unity(n: u64, field: FieldDescriptor) -> Option<Scalar> {
    assert!(n >= 1, "root of unity order must be positive");
    match field {
        FieldDescriptor::Rationals => match n {
            1 => Some(field.one()),
            2 => Some(field.from_i64(-1)),
            _ => None,
        },
        FieldDescriptor::PrimeField(p) => {
            if (p - 1) % n != 0 {
                return None;
            }
            let divisors: Vec<u64> = (1..n).filter(|k| n % k == 0).collect();
            (1..p).find_map(|z| {
                (pow_mod(z, n, p) == 1 && divisors.iter().all(|&k| pow_mod(z, k, p) != 1))
                    .then_some(Scalar::Mod { value: z, p })
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        FieldDescriptor::Rationals.parse_scalar(s).unwrap()
    }

    #[test]
    fn parses_descriptors() {
        assert_eq!(field_parse("rational").unwrap(), FieldDescriptor::Rationals);
        assert_eq!(field_parse("fp:7").unwrap(), FieldDescriptor::PrimeField(7));
        assert_eq!(field_parse("fp:6"), Err(FieldError::NotPrime(6)));
        assert!(matches!(field_parse("fp:"), Err(FieldError::Malformed(_))));
        assert!(matches!(field_parse("real"), Err(FieldError::Malformed(_))));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(
            scalar_arith(&q("2/3"), &q("1/3"), ArithOp::Div).unwrap(),
            q("2")
        );
        let f7 = FieldDescriptor::PrimeField(7);
        assert_eq!(
            scalar_arith(&f7.from_i64(3), &f7.from_i64(5), ArithOp::Mul).unwrap(),
            f7.one()
        );
        assert_eq!(
            scalar_arith(&q("1"), &q("0"), ArithOp::Div),
            Err(FieldError::DivisionByZero)
        );
        assert!(matches!(
            scalar_arith(&q("1"), &f7.one(), ArithOp::Add),
            Err(FieldError::FieldMismatch(..))
        ));
    }

    #[test]
    fn literals() {
        assert_eq!(q("-4/6").to_string(), "-2/3");
        assert!(FieldDescriptor::Rationals.parse_scalar("1/0").is_err());
        assert!(FieldDescriptor::Rationals.parse_scalar("1/03").is_err());
        assert!(FieldDescriptor::Rationals.parse_scalar("x").is_err());
        let f7 = FieldDescriptor::PrimeField(7);
        assert_eq!(f7.parse_scalar("-1").unwrap().to_string(), "6");
        assert_eq!(f7.parse_scalar("1/2").unwrap().to_string(), "4");
        assert!(f7.parse_scalar("1/7").is_err());
    }

    #[test]
    fn roots_of_unity_examples() {
        let f7 = FieldDescriptor::PrimeField(7);
        let f13 = FieldDescriptor::PrimeField(13);
        assert_eq!(primitive_root_of_unity(3, f7), Some(f7.from_i64(2)));
        assert_eq!(primitive_root_of_unity(4, f13), Some(f13.from_i64(5)));
        assert_eq!(primitive_root_of_unity(3, FieldDescriptor::Rationals), None);
        assert_eq!(
            primitive_root_of_unity(2, FieldDescriptor::Rationals),
            Some(q("-1"))
        );
    }

    #[test]
    fn root_exists_iff_order_divides_group_order() {
        for p in (2..=100u64).filter(|&p| is_prime(p)) {
            let f = FieldDescriptor::PrimeField(p);
            for n in 1..=12u64 {
                // exhaustive oracle: element orders in F_p^*
                let has = (1..p).any(|z| {
                    let mut acc = 1u64;
                    let mut order = 0;
                    for k in 1..=p {
                        acc = acc * z % p;
                        if acc == 1 {
                            order = k;
                            break;
                        }
                    }
                    order == n
                });
                assert_eq!(primitive_root_of_unity(n, f).is_some(), has, "p={p} n={n}");
                assert_eq!(has, (p - 1) % n == 0);
            }
        }
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001));
        assert!(is_prime(18_446_744_073_709_551_557));
    }
}
