//! Arbitrary-precision values: unsigned [`BigNat`] and signed [`BigInt`].
//!
//! These are thin wrappers around `num-bigint` with the parsing and
//! formatting conventions used throughout the crate: decimal everywhere,
//! hexadecimal accepted on input with a `0x` prefix. Plain (uncounted)
//! arithmetic lives here; anything that should show up in an operation
//! tally goes through [`CountedContext`](super::CountedContext) instead.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt as RawInt, BigUint as RawNat, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An unbounded nonnegative integer.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigNat(RawNat);

/// An unbounded signed integer in canonical form (zero carries no sign).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigInt(RawInt);

impl BigNat {
    pub fn zero() -> Self {
        BigNat(RawNat::zero())
    }

    pub fn one() -> Self {
        BigNat(RawNat::one())
    }

    /// `2^exp`.
    pub fn pow2(exp: u64) -> Self {
        BigNat(RawNat::one() << exp)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Number of binary digits; 0 for the value 0.
    pub fn bit_len(&self) -> u64 {
        self.0.bits()
    }

    pub fn bit(&self, index: u64) -> bool {
        self.0.bit(index)
    }

    pub fn is_power_of_two(&self) -> bool {
        !self.is_zero() && self.0.count_ones() == 1
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn to_u128(&self) -> Option<u128> {
        self.0.to_u128()
    }

    pub fn to_usize(&self) -> Option<usize> {
        self.0.to_usize()
    }

    /// Truncating addition counterpart: plain `a - b`, `None` if `b > a`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if other.0 > self.0 {
            None
        } else {
            Some(BigNat(&self.0 - &other.0))
        }
    }

    /// Floor division with remainder; `b` must be nonzero.
    pub fn div_rem(&self, b: &Self) -> (Self, Self) {
        let (q, r) = self.0.div_rem(&b.0);
        (BigNat(q), BigNat(r))
    }

    /// `self^exp` by repeated squaring (uncounted).
    pub fn pow(&self, exp: u64) -> Self {
        if exp == 0 {
            return BigNat::one();
        }
        let mut acc = self.clone();
        let top = 63 - exp.leading_zeros() as u64;
        for i in (0..top).rev() {
            acc = BigNat(&acc.0 * &acc.0);
            if exp >> i & 1 == 1 {
                acc = BigNat(&acc.0 * &self.0);
            }
        }
        acc
    }

    /// `self^exp mod m`.
    pub fn modpow(&self, exp: &Self, m: &Self) -> Self {
        BigNat(self.0.modpow(&exp.0, &m.0))
    }

    /// Greatest common divisor, `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        super::gcd::gcd_nat(self, other)
    }

    /// Extract `width` bits starting at bit `offset`, as a value.
    ///
    /// Equals `(self div 2^offset) rem 2^width` without materialising the
    /// shifted number twice.
    pub fn extract_bits(&self, offset: u64, width: u64) -> Self {
        let shifted = &self.0 >> offset;
        let mask = (RawNat::one() << width) - RawNat::one();
        BigNat(shifted & mask)
    }

    pub fn to_le_bytes(&self) -> Vec<u8> {
        self.0.to_bytes_le()
    }

    pub fn from_le_bytes(bytes: &[u8]) -> Self {
        BigNat(RawNat::from_bytes_le(bytes))
    }

    pub(crate) fn raw(&self) -> &RawNat {
        &self.0
    }

    pub(crate) fn from_raw(raw: RawNat) -> Self {
        BigNat(raw)
    }
}

impl BigInt {
    pub fn zero() -> Self {
        BigInt(RawInt::zero())
    }

    pub fn one() -> Self {
        BigInt(RawInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.0.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> BigNat {
        BigNat(self.0.magnitude().clone())
    }

    pub fn neg(&self) -> Self {
        BigInt(-&self.0)
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }

    /// Reinterpret as a natural number; errors when negative.
    pub fn to_nat(&self) -> Result<BigNat> {
        if self.is_negative() {
            Err(Error::NegativeEntry {
                value: self.to_display_string(),
            })
        } else {
            Ok(BigNat(self.0.magnitude().clone()))
        }
    }

    /// Floor division with remainder (`0 <= r < |b|` for positive `b`).
    pub fn div_mod_floor(&self, b: &Self) -> (Self, Self) {
        let (q, r) = self.0.div_mod_floor(&b.0);
        (BigInt(q), BigInt(r))
    }

    /// Exact division; panics in debug builds if the division is not exact.
    pub fn div_exact(&self, b: &Self) -> Self {
        let (q, r) = self.0.div_rem(&b.0);
        debug_assert!(r.is_zero(), "div_exact with a nonzero remainder");
        BigInt(q)
    }

    pub fn pow(&self, exp: u64) -> Self {
        if exp == 0 {
            return BigInt::one();
        }
        let mut acc = self.clone();
        let top = 63 - exp.leading_zeros() as u64;
        for i in (0..top).rev() {
            acc = BigInt(&acc.0 * &acc.0);
            if exp >> i & 1 == 1 {
                acc = BigInt(&acc.0 * &self.0);
            }
        }
        acc
    }

    pub fn gcd(&self, other: &Self) -> BigNat {
        self.abs().gcd(&other.abs())
    }

    fn to_display_string(&self) -> String {
        use alloc::string::ToString;
        self.0.to_string()
    }
}

// --- conversions ---

macro_rules! nat_from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for BigNat {
            fn from(v: $t) -> Self { BigNat(RawNat::from(v)) }
        }
        impl From<$t> for BigInt {
            fn from(v: $t) -> Self { BigInt(RawInt::from(v)) }
        }
    )*};
}
nat_from_prim!(u8, u16, u32, u64, u128, usize);

macro_rules! int_from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for BigInt {
            fn from(v: $t) -> Self { BigInt(RawInt::from(v)) }
        }
    )*};
}
int_from_prim!(i8, i16, i32, i64, i128, isize);

impl From<BigNat> for BigInt {
    fn from(v: BigNat) -> Self {
        BigInt(RawInt::from(v.0))
    }
}

impl From<&BigNat> for BigInt {
    fn from(v: &BigNat) -> Self {
        BigInt(RawInt::from(v.0.clone()))
    }
}

// --- plain arithmetic on references (uncounted) ---

macro_rules! forward_binop {
    ($wrapper:ident, $trait:ident, $method:ident) => {
        impl core::ops::$trait<&$wrapper> for &$wrapper {
            type Output = $wrapper;
            fn $method(self, rhs: &$wrapper) -> $wrapper {
                $wrapper(core::ops::$trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(BigNat, Add, add);
forward_binop!(BigNat, Mul, mul);
forward_binop!(BigNat, BitAnd, bitand);
forward_binop!(BigInt, Add, add);
forward_binop!(BigInt, Sub, sub);
forward_binop!(BigInt, Mul, mul);

impl core::ops::Sub<&BigNat> for &BigNat {
    type Output = BigNat;
    /// Panics on underflow; use [`BigNat::checked_sub`] when in doubt.
    fn sub(self, rhs: &BigNat) -> BigNat {
        BigNat(&self.0 - &rhs.0)
    }
}

impl core::ops::Shl<u64> for &BigNat {
    type Output = BigNat;
    fn shl(self, rhs: u64) -> BigNat {
        BigNat(&self.0 << rhs)
    }
}

impl core::ops::Shr<u64> for &BigNat {
    type Output = BigNat;
    fn shr(self, rhs: u64) -> BigNat {
        BigNat(&self.0 >> rhs)
    }
}

impl core::ops::Neg for &BigInt {
    type Output = BigInt;
    fn neg(self) -> BigInt {
        BigInt(-&self.0)
    }
}

// --- formatting and parsing ---

impl fmt::Display for BigNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for BigNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::LowerHex for BigNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

impl fmt::Display for BigInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for BigInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Parse error for the decimal / `0x`-hexadecimal string forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseValueError;

impl fmt::Display for ParseValueError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid integer literal (decimal or 0x-prefixed hexadecimal)")
    }
}

fn parse_raw_nat(s: &str) -> core::result::Result<RawNat, ParseValueError> {
    let (digits, radix) = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(rest) => (rest, 16),
        None => (s, 10),
    };
    if digits.is_empty() {
        return Err(ParseValueError);
    }
    RawNat::parse_bytes(digits.as_bytes(), radix).ok_or(ParseValueError)
}

impl FromStr for BigNat {
    type Err = ParseValueError;
    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        parse_raw_nat(s.trim()).map(BigNat)
    }
}

impl FromStr for BigInt {
    type Err = ParseValueError;
    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let s = s.trim();
        let (negative, rest) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let mag = parse_raw_nat(rest)?;
        let sign = if mag.is_zero() {
            Sign::NoSign
        } else if negative {
            Sign::Minus
        } else {
            Sign::Plus
        };
        Ok(BigInt(RawInt::from_biguint(sign, mag)))
    }
}

/// Total order helper that avoids the operator-trait dance in counted code.
pub(crate) fn cmp_nat(a: &BigNat, b: &BigNat) -> Ordering {
    a.0.cmp(&b.0)
}

pub(crate) fn cmp_int(a: &BigInt, b: &BigInt) -> Ordering {
    a.0.cmp(&b.0)
}
