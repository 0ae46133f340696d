//! Exact rational numbers in reduced form.
//!
//! Plain value arithmetic (uncounted): these carry interpolation,
//! root-refinement certificates and interval endpoints. Counted algorithms
//! that work on fractions keep numerator and denominator as separate
//! integers and run them through a context instead.

use core::cmp::Ordering;
use core::fmt;

use crate::opcore::{BigInt, BigNat};

/// `num / den` with `den > 0` and `gcd(|num|, den) = 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct Rational {
    num: BigInt,
    den: BigNat,
}

impl Rational {
    /// Reduce `num / den`; `den` must be nonzero.
    pub fn new(num: BigInt, den: BigNat) -> Self {
        assert!(!den.is_zero(), "rational with zero denominator");
        let g = num.abs().gcd(&den);
        if g.is_one() {
            return Rational { num, den };
        }
        let g_int = BigInt::from(&g);
        Rational {
            num: num.div_exact(&g_int),
            den: den.div_rem(&g).0,
        }
    }

    pub fn from_int(v: BigInt) -> Self {
        Rational {
            num: v,
            den: BigNat::one(),
        }
    }

    pub fn zero() -> Self {
        Rational::from_int(BigInt::zero())
    }

    pub fn one() -> Self {
        Rational::from_int(BigInt::one())
    }

    /// `1 / 2^bits`.
    pub fn pow2_inverse(bits: u64) -> Self {
        Rational {
            num: BigInt::one(),
            den: BigNat::pow2(bits),
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigNat {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &Rational) -> Rational {
        let den_o = BigInt::from(&other.den);
        let den_s = BigInt::from(&self.den);
        Rational::new(
            &(&self.num * &den_o) + &(&other.num * &den_s),
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &Rational) -> Rational {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        Rational::new(&self.num * &other.num, &self.den * &other.den)
    }

    /// Panics when `other` is zero.
    pub fn div(&self, other: &Rational) -> Rational {
        assert!(!other.is_zero(), "division by a zero rational");
        let num = &self.num * &BigInt::from(&other.den);
        let den_signed = &BigInt::from(&self.den) * &other.num;
        if den_signed.is_negative() {
            Rational::new(num.neg(), den_signed.abs())
        } else {
            Rational::new(num, den_signed.abs())
        }
    }

    pub fn neg(&self) -> Rational {
        Rational {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn abs(&self) -> Rational {
        Rational {
            num: BigInt::from(self.num.abs()),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, exp: u64) -> Rational {
        Rational {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigInt {
        self.num.div_mod_floor(&BigInt::from(&self.den)).0
    }

    /// Round to the nearest fraction with denominator `2^bits`
    /// (ties toward negative infinity are fine for our uses).
    pub fn round_to_dyadic(&self, bits: u64) -> Rational {
        let scaled_num = &self.num * &BigInt::from(BigNat::pow2(bits + 1));
        let q = scaled_num.div_mod_floor(&BigInt::from(&self.den)).0;
        // (q + 1) / 2 rounds the doubled quotient to nearest.
        let rounded = (&q + &BigInt::one()).div_mod_floor(&BigInt::from(2)).0;
        Rational::new(rounded, BigNat::pow2(bits))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = &self.num * &BigInt::from(&other.den);
        let rhs = &other.num * &BigInt::from(&self.den);
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl core::str::FromStr for Rational {
    type Err = crate::opcore::ParseValueError;
    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s.split_once('/') {
            Some((n, d)) => {
                let num: BigInt = n.parse()?;
                let den: BigNat = d.parse()?;
                if den.is_zero() {
                    return Err(crate::opcore::ParseValueError);
                }
                Ok(Rational::new(num, den))
            }
            None => Ok(Rational::from_int(s.parse()?)),
        }
    }
}

/// Least common multiple; `lcm(0, v) = 0`.
pub fn lcm(a: &BigNat, b: &BigNat) -> BigNat {
    if a.is_zero() || b.is_zero() {
        return BigNat::zero();
    }
    let g = a.gcd(b);
    &a.div_rem(&g).0 * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: u64) -> Rational {
        Rational::new(BigInt::from(n), BigNat::from(d))
    }

    #[test]
    fn reduction_and_ordering() {
        assert_eq!(rat(6, 8), rat(3, 4));
        assert_eq!(rat(-6, 8), rat(-3, 4));
        assert!(rat(1, 3) < rat(1, 2));
        assert!(rat(-1, 2) < rat(1, 3));
        assert_eq!(rat(0, 5), Rational::zero());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(rat(1, 2).add(&rat(1, 3)), rat(5, 6));
        assert_eq!(rat(1, 2).sub(&rat(1, 3)), rat(1, 6));
        assert_eq!(rat(2, 3).mul(&rat(3, 4)), rat(1, 2));
        assert_eq!(rat(1, 2).div(&rat(-1, 4)), rat(-2, 1));
        assert_eq!(rat(-7, 2).floor(), BigInt::from(-4));
        assert_eq!(rat(7, 2).floor(), BigInt::from(3));
        assert_eq!(rat(2, 3).pow(3), rat(8, 27));
    }

    #[test]
    fn dyadic_rounding_stays_close() {
        let v = rat(1, 3);
        let r = v.round_to_dyadic(10);
        let err = v.sub(&r).abs();
        assert!(err <= Rational::pow2_inverse(10));
        assert!(r.denominator().bit_len() - 1 <= 10);
    }

    #[test]
    fn parsing() {
        assert_eq!("3/4".parse::<Rational>().unwrap(), rat(3, 4));
        assert_eq!("-6/8".parse::<Rational>().unwrap(), rat(-3, 4));
        assert_eq!("42".parse::<Rational>().unwrap(), rat(42, 1));
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(
            lcm(&BigNat::from(6u32), &BigNat::from(8u32)),
            BigNat::from(24u32)
        );
        assert_eq!(lcm(&BigNat::zero(), &BigNat::from(8u32)), BigNat::zero());
    }
}
