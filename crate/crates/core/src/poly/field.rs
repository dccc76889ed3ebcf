//! Coefficient fields: exact rationals and a word-sized prime field.

use std::fmt;
use std::hash::Hash;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

/// Arithmetic needed by the Gröbner engine. Elements are plain values; the
/// prime field carries its modulus in the type.
pub trait Field: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Used only for sign-aware printing.
    fn is_negative(&self) -> bool {
        false
    }

    /// Short name used in reports ("QQ", "ZZ/p").
    fn name() -> String;
}

/// Exact rational number with an inline fast path for word-sized values.
///
/// Canonical form: `Small(n, d)` with `d > 0` and `gcd(n, d) = 1` whenever
/// both fit in an `i64`; `Big` only otherwise. Derived equality relies on it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(BigRational),
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(mut n: i128, mut d: i128) -> Self {
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(r),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn numer_i64(&self) -> Option<i64> {
        match self {
            Rational::Small(n, 1) => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(r) => write!(f, "{r}"),
        }
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::Small(0, 1)
    }
    fn one() -> Self {
        Rational::Small(1, 1)
    }
    fn from_i64(v: i64) -> Self {
        Rational::Small(v, 1)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }
    fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Rational::Small(a, 1), Rational::Small(b, 1)) => match a.checked_add(*b) {
                Some(s) => Rational::Small(s, 1),
                None => Self::from_i128(*a as i128 + *b as i128, 1),
            },
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match a.checked_mul(d).zip(c.checked_mul(b)).and_then(|(x, y)| x.checked_add(y)) {
                    Some(n) => Self::from_i128(n, b * d),
                    None => Self::from_big(self.to_big() + other.to_big()),
                }
            }
            _ => Self::from_big(self.to_big() + other.to_big()),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Rational::Small(a, 1), Rational::Small(b, 1)) => match a.checked_mul(*b) {
                Some(p) => Rational::Small(p, 1),
                None => Self::from_i128(*a as i128 * *b as i128, 1),
            },
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * other.to_big()),
        }
    }

    fn neg(&self) -> Self {
        match self {
            Rational::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational::Small(m, *d),
                None => Self::from_big(-self.to_big()),
            },
            Rational::Big(r) => Self::from_big(-r),
        }
    }

    fn inv(&self) -> Self {
        match self {
            Rational::Small(0, _) => panic!("inverse of zero"),
            Rational::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Rational::Big(r) => Self::from_big(r.recip()),
        }
    }

    fn is_negative(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n < 0,
            Rational::Big(r) => r.is_negative(),
        }
    }

    fn name() -> String {
        "QQ".to_string()
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::Small(v, 1)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        if r.is_zero() {
            return Rational::zero();
        }
        if r.is_one() {
            return Rational::one();
        }
        Rational::from_big(r)
    }
}

/// Prime field `Z/P` for screening runs.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp<const P: u64>(u64);

/// The default screening prime, 2^31 - 1.
pub type ScreeningField = Fp<2_147_483_647>;

impl<const P: u64> Fp<P> {
    pub const MODULUS: u64 = P;

    pub fn value(&self) -> u64 {
        self.0
    }

    fn pow(mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // symmetric representative reads better for small signed coefficients
        if self.0 > P / 2 {
            write!(f, "-{}", P - self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
    fn sub(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        Fp(Self::pow(self.0, P - 2))
    }
    fn is_negative(&self) -> bool {
        self.0 > P / 2
    }
    fn name() -> String {
        format!("ZZ/{P}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_canonical_form() {
        assert_eq!(Rational::new(2, -4), Rational::new(-1, 2));
        assert_eq!(Rational::new(3, 1).inv(), Rational::new(1, 3));
        assert_eq!(Rational::new(1, 2).add(&Rational::new(1, 2)), Rational::one());
    }

    #[test]
    fn rational_overflow_goes_big_and_back() {
        let big = Rational::from_i64(i64::MAX).mul(&Rational::from_i64(4));
        assert!(matches!(big, Rational::Big(_)));
        let back = big.div(&Rational::from_i64(4));
        assert_eq!(back, Rational::from_i64(i64::MAX));
    }

    #[test]
    fn prime_field_inverse() {
        let a = ScreeningField::from_i64(-12345);
        assert!(a.mul(&a.inv()).is_one());
        assert_eq!(ScreeningField::from_i64(-1).to_string(), "-1");
    }
}
