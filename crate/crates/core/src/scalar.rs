//! Exact integers and rationals.
//!
//! Both types are thin newtypes over `num-bigint` / `num-rational` values.
//! Every constructor normalizes, so two equal numbers always have identical
//! representations (`gcd(|num|, den) = 1`, `den > 0`, zero is `0/1`).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid number literal `{0}`")]
    Parse(String),
}

/// Arbitrary-precision signed integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Integer(BigInt);

impl Integer {
    pub fn zero() -> Self {
        Integer(BigInt::zero())
    }

    pub fn one() -> Self {
        Integer(BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Integer(self.0.abs())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        Integer(self.0.gcd(&other.0))
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }

    pub fn as_bigint(&self) -> &BigInt {
        &self.0
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer(BigInt::from(v))
    }
}

impl From<BigInt> for Integer {
    fn from(v: BigInt) -> Self {
        Integer(v)
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Integer {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = normalize_minus(s.trim());
        t.parse::<BigInt>()
            .map(Integer)
            .map_err(|_| ScalarError::Parse(s.to_string()))
    }
}

impl Add for &Integer {
    type Output = Integer;
    fn add(self, rhs: &Integer) -> Integer {
        Integer(&self.0 + &rhs.0)
    }
}

impl Mul for &Integer {
    type Output = Integer;
    fn mul(self, rhs: &Integer) -> Integer {
        Integer(&self.0 * &rhs.0)
    }
}

impl Neg for &Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        Integer(-&self.0)
    }
}

/// Exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den`, reducing to lowest terms.
    pub fn new(num: Integer, den: Integer) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.0, den.0)))
    }

    pub fn from_frac(num: i64, den: i64) -> Result<Self, ScalarError> {
        Self::new(num.into(), den.into())
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> Integer {
        Integer(self.0.numer().clone())
    }

    pub fn denom(&self) -> Integer {
        Integer(self.0.denom().clone())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// `true` when the stored form is canonical. Always holds for values built
    /// through the public API; exposed for property tests.
    pub fn is_canonical(&self) -> bool {
        let (n, d) = (self.0.numer(), self.0.denom());
        d.is_positive() && (n.is_zero() && d.is_one() || n.gcd(d).is_one())
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }
}

impl From<Integer> for Rational {
    fn from(v: Integer) -> Self {
        Rational(BigRational::from_integer(v.0))
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

fn normalize_minus(s: &str) -> String {
    s.replace('\u{2212}', "-")
}

impl FromStr for Rational {
    type Err = ScalarError;

    /// Accepts `a` or `a/b`, with an ASCII or Unicode minus sign.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = normalize_minus(s.trim());
        match t.split_once('/') {
            None => Ok(Rational::from(t.parse::<Integer>().map_err(|_| ScalarError::Parse(s.into()))?)),
            Some((n, d)) => {
                let n: Integer = n.parse().map_err(|_| ScalarError::Parse(s.into()))?;
                let d: Integer = d.parse().map_err(|_| ScalarError::Parse(s.into()))?;
                Rational::new(n, d)
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

/// Panics on a zero divisor, like integer division; use [`Rational::checked_div`]
/// when the divisor is not known to be nonzero.
impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("rational division by zero")
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(7, 9) + Rational::zero(), q(7, 9));
    }

    #[test]
    fn construction_normalizes() {
        let r = q(2, 4);
        assert_eq!(r, q(1, 2));
        assert_eq!(r.numer(), Integer::from(1));
        assert_eq!(r.denom(), Integer::from(2));
        let neg = q(3, -6);
        assert_eq!(neg.to_string(), "-1/2");
        assert!(q(0, -5).is_canonical());
        assert_eq!(q(0, -5).denom(), Integer::one());
    }

    #[test]
    fn mul_and_inverse() {
        assert_eq!(q(2, 3) * q(3, 2), Rational::one());
        assert_eq!(q(-4, 7) * Rational::one(), q(-4, 7));
        assert_eq!(q(-4, 7).inv().unwrap(), q(-7, 4));
        assert_eq!(Rational::zero().inv(), Err(ScalarError::DivisionByZero));
        assert!(Rational::from_frac(1, 0).is_err());
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("−3/7".parse::<Rational>().unwrap(), q(-3, 7));
        assert_eq!("-3/7".parse::<Rational>().unwrap().to_string(), "-3/7");
        assert_eq!(" 12 ".parse::<Rational>().unwrap(), Rational::from(12));
        assert_eq!("6/-4".parse::<Rational>().unwrap(), q(-3, 2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..200).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &(-&a), Rational::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), Rational::one());
            }
        }

        #[test]
        fn results_stay_canonical(a in arb_rational(), b in arb_rational()) {
            for r in [&a + &b, &a - &b, &a * &b, -&a] {
                prop_assert!(r.is_canonical());
            }
            if !b.is_zero() {
                prop_assert!(a.checked_div(&b).unwrap().is_canonical());
            }
        }
    }
}
