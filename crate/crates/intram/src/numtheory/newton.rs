//! Newton refinement of algebraic numbers and Mills-style prime extraction.
//!
//! Newton iteration runs on exact fractions kept as separate numerator and
//! denominator, so the counted work stays inside `{+, -, *}`: no rounding
//! divisions. Quadratic convergence makes `O(log n)` iterations enough for
//! `n` bits, each costing one Horner pass over the polynomial and its
//! derivative. The result is certified by a sign change across the
//! `2^-n`-interval around the returned value, never trusted blindly.

use super::rational::Rational;
use crate::error::{Error, Result};
use crate::opcore::{BigInt, BigNat, CountedContext};
use crate::polyeval::Poly;

/// Sign of `q` at a rational point (uncounted; certificates and seeds).
fn sign_at(q: &Poly, at: &Rational) -> i32 {
    // q(a/b) has the sign of sum q_i a^i b^(e-i).
    let e = q.degree();
    let a = at.numerator();
    let b = BigInt::from(at.denominator());
    let mut acc = BigInt::zero();
    for (i, c) in q.coeffs().iter().enumerate() {
        acc = &acc + &(&(c * &a.pow(i as u64)) * &b.pow(e - i as u64));
    }
    acc.signum()
}

/// Homogeneous counted evaluation: `b^e * q(a/b)` over `{+, *}`.
fn eval_scaled(
    ctx: &mut CountedContext,
    q: &Poly,
    a: &BigInt,
    b_powers: &[BigInt],
) -> Result<BigInt> {
    let e = q.degree() as usize;
    let mut acc = BigInt::zero();
    for (i, c) in q.coeffs().iter().enumerate() {
        let term = ctx.mul(c, &b_powers[e - i])?;
        let term = ctx.mul(&term, &a.pow(i as u64))?;
        acc = ctx.add(&acc, &term)?;
    }
    Ok(acc)
}

fn derivative(q: &Poly) -> Poly {
    let coeffs = q
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * &BigInt::from(i as u64))
        .collect();
    Poly::new(coeffs)
}

/// Refine a root of the squarefree polynomial `q`, isolated by the seed
/// bracket `[lo, hi]`, to absolute error `2^-precision_bits`.
///
/// Exact-fraction Newton from the bracket midpoint; the iteration budget is
/// logarithmic in the precision. Success is certified by a sign change of
/// `q` across `[result - 2^-n, result + 2^-n]`; a failed certificate (bad
/// seed, multiple root, divergence) reports [`Error::NoConvergence`].
pub fn newton_approx(
    ctx: &mut CountedContext,
    q: &Poly,
    precision_bits: u64,
    lo: &Rational,
    hi: &Rational,
) -> Result<Rational> {
    assert!(!q.is_zero(), "cannot refine a root of the zero polynomial");
    let slo = sign_at(q, lo);
    let shi = sign_at(q, hi);
    if slo == 0 {
        return certify(q, precision_bits, lo.clone());
    }
    if shi == 0 {
        return certify(q, precision_bits, hi.clone());
    }
    if slo == shi {
        return Err(Error::NoConvergence);
    }

    let dq = derivative(q);
    let e = q.degree();
    let budget = 2 * (64 - (precision_bits + 2).leading_zeros() as u64) + 12;

    // u = a/b, kept unreduced so the counted work stays in {+, -, *}. The
    // loop stops as soon as the certificate passes; quadratic convergence
    // makes that O(log precision) steps from a reasonable bracket.
    let two = Rational::new(BigInt::from(2), BigNat::one());
    let mid = lo.add(hi).div(&two);
    let mut a = mid.numerator().clone();
    let mut b = BigInt::from(mid.denominator());
    for _ in 0..budget {
        if b.is_negative() {
            a = a.neg();
            b = b.neg();
        }
        let candidate = Rational::new(a.clone(), b.to_nat().unwrap());
        if certificate_holds(q, precision_bits, &candidate) {
            return Ok(candidate);
        }
        // Powers of b for the homogeneous evaluations (uncounted setup of
        // the per-step constants mirrors storing q, q' once).
        let mut b_powers = alloc::vec![BigInt::one()];
        for _ in 0..e {
            b_powers.push(&b_powers[b_powers.len() - 1] * &b);
        }
        let qv = eval_scaled(ctx, q, &a, &b_powers)?; // b^e q(u)
        if qv.is_zero() {
            return certify(q, precision_bits, Rational::new(a, b.abs()));
        }
        let dv = eval_scaled(ctx, &dq, &a, &b_powers)?; // b^(e-1) q'(u)
        if dv.is_zero() {
            break;
        }
        // u - q(u)/q'(u) = (a*dv - qv) / (b*dv), all over {+, -, *}.
        let t1 = ctx.mul(&a, &dv)?;
        a = ctx.sub(&t1, &qv)?;
        b = ctx.mul(&b, &dv)?;
    }
    if b.is_negative() {
        a = a.neg();
        b = b.neg();
    }
    certify(q, precision_bits, Rational::new(a, b.to_nat().unwrap()))
}

fn certificate_holds(q: &Poly, precision_bits: u64, candidate: &Rational) -> bool {
    let eps = Rational::pow2_inverse(precision_bits);
    let below = sign_at(q, &candidate.sub(&eps));
    let above = sign_at(q, &candidate.add(&eps));
    below * above < 0 || below == 0 || above == 0
}

fn certify(q: &Poly, precision_bits: u64, candidate: Rational) -> Result<Rational> {
    if certificate_holds(q, precision_bits, &candidate) {
        Ok(candidate)
    } else {
        Err(Error::NoConvergence)
    }
}

/// Mills' constant to 30 significant digits, as `(value, error_bound)`.
///
/// `floor(theta^(3^n))` is prime for n = 1, 2, 3, ... ; this precision
/// certifies the first three.
pub fn mills_constant() -> (Rational, Rational) {
    let digits: BigInt = "130637788386308069046861449260".parse().unwrap();
    let scale = BigNat::from(10u32).pow(29);
    (
        Rational::new(digits, scale.clone()),
        Rational::new(BigInt::one(), scale),
    )
}

/// `floor(theta^(3^n))` by exact interval powering of `theta +- error`.
///
/// Both interval endpoints are raised to the `3^n`-th power by repeated
/// squaring on exact fractions (two counted multiplications per step); if
/// their floors disagree the stored precision cannot certify the value and
/// [`Error::PrecisionInsufficient`] is reported.
pub fn mills_floor(
    ctx: &mut CountedContext,
    theta: &Rational,
    error: &Rational,
    n: u32,
) -> Result<BigNat> {
    let lo = theta.sub(error);
    let hi = theta.add(error);
    assert!(
        lo > Rational::one(),
        "interval must stay above 1 for powering"
    );
    let exp = 3u64.checked_pow(n).ok_or(Error::ScaleExceeded {
        what: "Mills exponent 3^n",
        limit: u64::MAX,
    })?;

    // (num, den) fraction powering with counted multiplications.
    let pow_counted = |ctx: &mut CountedContext, v: &Rational| -> Result<(BigNat, BigNat)> {
        let base_num = v.numerator().to_nat().expect("endpoint above 1");
        let base_den = v.denominator().clone();
        let mut num = BigNat::one();
        let mut den = BigNat::one();
        let top = 63 - exp.leading_zeros() as u64;
        for i in (0..=top).rev() {
            if i != top {
                num = ctx.mul(&num, &num)?;
                den = ctx.mul(&den, &den)?;
            }
            if exp >> i & 1 == 1 {
                num = ctx.mul(&num, &base_num)?;
                den = ctx.mul(&den, &base_den)?;
            }
        }
        Ok((num, den))
    };

    let (lo_num, lo_den) = pow_counted(ctx, &lo)?;
    let (hi_num, hi_den) = pow_counted(ctx, &hi)?;
    let lo_floor = ctx.div(&lo_num, &lo_den)?;
    let hi_floor = ctx.div(&hi_num, &hi_den)?;
    if lo_floor == hi_floor {
        Ok(lo_floor)
    } else {
        Err(Error::PrecisionInsufficient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::is_prime;

    fn rat(n: i64, d: u64) -> Rational {
        Rational::new(BigInt::from(n), BigNat::from(d))
    }

    #[test]
    fn newton_sqrt2() {
        let mut ctx = CountedContext::new();
        let q = Poly::from_i64(&[-2, 0, 1]);
        let r = newton_approx(&mut ctx, &q, 20, &rat(1, 1), &rat(2, 1)).unwrap();
        // |r - sqrt(2)| <= 2^-20, checked through r^2 vs 2.
        let r2 = r.mul(&r);
        let err = r2.sub(&Rational::from_int(BigInt::from(2))).abs();
        // |r^2 - 2| = |r - sqrt2| * (r + sqrt2) < 2^-20 * 4.
        assert!(err < Rational::new(BigInt::from(4), BigNat::pow2(20)));
    }

    #[test]
    fn newton_exact_rational_root() {
        let mut ctx = CountedContext::new();
        let q = Poly::from_i64(&[-3, 1]);
        let r = newton_approx(&mut ctx, &q, 50, &rat(2, 1), &rat(5, 1)).unwrap();
        assert_eq!(r, rat(3, 1));
    }

    #[test]
    fn newton_golden_ratio() {
        let mut ctx = CountedContext::new();
        let q = Poly::from_i64(&[-1, -1, 1]);
        let r = newton_approx(&mut ctx, &q, 30, &rat(1, 1), &rat(2, 1)).unwrap();
        // phi satisfies x^2 = x + 1.
        let residual = r.mul(&r).sub(&r).sub(&Rational::one()).abs();
        assert!(residual < Rational::new(BigInt::from(8), BigNat::pow2(30)));
    }

    #[test]
    fn newton_rejects_bracket_without_sign_change() {
        let mut ctx = CountedContext::new();
        let q = Poly::from_i64(&[-2, 0, 1]);
        assert_eq!(
            newton_approx(&mut ctx, &q, 10, &rat(3, 1), &rat(4, 1)),
            Err(Error::NoConvergence)
        );
    }

    #[test]
    fn mills_first_three_primes() {
        let (theta, err) = mills_constant();
        let mut ctx = CountedContext::new();
        assert_eq!(
            mills_floor(&mut ctx, &theta, &err, 1).unwrap(),
            BigNat::from(2u32)
        );
        assert_eq!(
            mills_floor(&mut ctx, &theta, &err, 2).unwrap(),
            BigNat::from(11u32)
        );
        let third = mills_floor(&mut ctx, &theta, &err, 3).unwrap();
        assert_eq!(third, BigNat::from(1361u32));
        assert!(is_prime(&third));
    }

    #[test]
    fn mills_reports_insufficient_precision() {
        // With only a few digits the 3^4 power straddles an integer.
        let coarse = rat(13, 10);
        let err = rat(1, 10);
        let mut ctx = CountedContext::new();
        assert_eq!(
            mills_floor(&mut ctx, &coarse, &err, 2),
            Err(Error::PrecisionInsufficient)
        );
    }
}
