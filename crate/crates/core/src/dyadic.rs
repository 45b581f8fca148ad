//! Exact dyadic rationals `num / 2^exp`.
//!
//! Every coordinate in the crate (breakpoints, images, orbit points) is a
//! [`Dyadic`]. Slopes are never stored as `Dyadic`; they are integer
//! exponents of two, see [`Dyadic::log2_ratio`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// An exact dyadic rational `num / 2^exp`.
///
/// The representation is canonical: `num` is odd, or `num == 0` and
/// `exp == 0`. Structural equality is therefore value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DyadicParseError {
    #[error("malformed dyadic literal `{0}`")]
    Malformed(String),
    #[error("denominator of `{0}` is not a power of two")]
    NotDyadic(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("binary expansion requires a positive length, got {0}")]
pub struct NonPositiveLength(pub Dyadic);

impl Dyadic {
    /// Builds `num / 2^exp` and normalizes.
    pub fn new(num: impl Into<BigInt>, exp: u64) -> Self {
        let num = num.into();
        if num.is_zero() {
            return Self::zero();
        }
        let tz = num.trailing_zeros().unwrap_or(0);
        let shift = tz.min(exp);
        Dyadic {
            num: num >> shift,
            exp: exp - shift,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            num: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic {
            num: n.into(),
            exp: 0,
        }
        .renormalized()
    }

    /// `2^k` for any integer `k`.
    pub fn pow2(k: i64) -> Self {
        if k >= 0 {
            Dyadic {
                num: BigInt::one() << k as u64,
                exp: 0,
            }
        } else {
            Dyadic {
                num: BigInt::one(),
                exp: k.unsigned_abs(),
            }
        }
    }

    fn renormalized(self) -> Self {
        Dyadic::new(self.num, self.exp)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    /// Exponent of the denominator `2^exp`.
    pub fn exponent(&self) -> u64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    /// Multiplies by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        if k >= 0 {
            let k = k as u64;
            if self.exp >= k {
                Dyadic {
                    num: self.num.clone(),
                    exp: self.exp - k,
                }
            } else {
                Dyadic {
                    num: &self.num << (k - self.exp),
                    exp: 0,
                }
            }
        } else {
            Dyadic {
                num: self.num.clone(),
                exp: self.exp + k.unsigned_abs(),
            }
        }
    }

    /// Largest integer not exceeding `self`.
    pub fn floor(&self) -> BigInt {
        // `>>` on BigInt rounds toward negative infinity
        &self.num >> self.exp
    }

    /// Smallest integer not below `self`.
    pub fn ceil(&self) -> BigInt {
        -((-self).floor())
    }

    /// The representative of `self` in `[0, 1)`.
    pub fn mod_one(&self) -> Self {
        self - &Dyadic::from_int(self.floor())
    }

    /// The representative of `self` in `[0, period)` for a positive integer period.
    pub fn rem_euclid(&self, period: &BigInt) -> Self {
        let k = self.floor().div_floor(period);
        self - &Dyadic::from_int(k * period)
    }

    /// `floor(self / period)` for a positive integer period.
    pub fn div_floor_int(&self, period: &BigInt) -> BigInt {
        self.floor().div_floor(period)
    }

    /// If `other / self` is an integer power of two `2^k`, returns `k`.
    ///
    /// Both operands must be positive. The ratio is a power of two exactly
    /// when the odd parts of the numerators agree.
    pub fn log2_ratio(&self, other: &Dyadic) -> Option<i64> {
        if !self.is_positive() || !other.is_positive() {
            return None;
        }
        let (odd_a, val_a) = self.odd_part();
        let (odd_b, val_b) = other.odd_part();
        (odd_a == odd_b).then_some(val_b - val_a)
    }

    /// `(m, v)` with `self = m 2^v` and `m` odd. Requires `self != 0`.
    fn odd_part(&self) -> (BigInt, i64) {
        let tz = self.num.trailing_zeros().unwrap_or(0);
        (&self.num >> tz, tz as i64 - self.exp as i64)
    }

    /// The set bits of a positive dyadic, as strictly decreasing powers of two.
    pub fn binary_parts(&self) -> Result<Vec<Dyadic>, NonPositiveLength> {
        if !self.is_positive() {
            return Err(NonPositiveLength(self.clone()));
        }
        let bits = self.num.bits();
        let mut parts = Vec::new();
        for bit in (0..bits).rev() {
            if self.num.bit(bit) {
                parts.push(Dyadic::pow2(bit as i64 - self.exp as i64));
            }
        }
        Ok(parts)
    }

    pub fn half(&self) -> Self {
        self.mul_pow2(-1)
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            num: self.num.abs(),
            exp: self.exp,
        }
    }

    /// Exact conversion to a rational.
    pub fn to_rational(&self) -> num_rational::BigRational {
        num_rational::BigRational::new(self.num.clone(), BigInt::one() << self.exp)
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u64) {
        let e = self.exp.max(other.exp);
        (
            &self.num << (e - self.exp),
            &other.num << (e - other.exp),
            e,
        )
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n)
    }
}

impl From<BigInt> for Dyadic {
    fn from(n: BigInt) -> Self {
        Dyadic::from_int(n)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        // product of odd numerators is odd, so no renormalization is needed
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            num: &self.num * &rhs.num,
            exp: self.exp + rhs.exp,
        }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -&self.num,
            exp: self.exp,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: &Dyadic) -> Dyadic {
                (&self).$m(rhs)
            }
        }
        impl $tr<Dyadic> for &Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::one() << self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('+').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

impl FromStr for Dyadic {
    type Err = DyadicParseError;

    /// Accepts `n` or `n/d` with `d` a decimal power of two. A leading
    /// ASCII `-` or U+2212 minus sign is allowed on the numerator.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || DyadicParseError::Malformed(s.to_string());
        let t = s.trim();
        let (negative, body) = if let Some(rest) = t.strip_prefix('-') {
            (true, rest)
        } else if let Some(rest) = t.strip_prefix('\u{2212}') {
            (true, rest)
        } else {
            (false, t)
        };
        let (num_str, den_str) = match body.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (body, None),
        };
        let mut num = parse_integer(num_str).ok_or_else(malformed)?;
        if negative {
            num = -num;
        }
        let exp = match den_str {
            None => 0,
            Some(d) => {
                let den = parse_integer(d).ok_or_else(malformed)?;
                if den.is_zero() {
                    return Err(malformed());
                }
                let tz = den.trailing_zeros().unwrap_or(0);
                if den != BigInt::one() << tz {
                    return Err(DyadicParseError::NotDyadic(s.to_string()));
                }
                tz
            }
        };
        Ok(Dyadic::new(num, exp))
    }
}
