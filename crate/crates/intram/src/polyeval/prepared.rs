//! Constant-operation evaluation of a fixed polynomial on a bounded domain.
//!
//! Preparation stores the radix `Z`, its power `Z^d`, and the packed
//! coefficient constants `p(Z)` (split into nonnegative parts). Evaluation
//! then runs in a fixed number of operations whatever the degree:
//!
//! 1. `q = Z^(d+1) div (Z - x)` unfolds a geometric series,
//! 2. `q * p(Z)` convolves it against the packed coefficients,
//! 3. `div Z^d` / `rem Z` isolate the middle digit, which is `p(x)`.
//!
//! The radix must exceed `max(X^d * ||p||_1, (X^d + 1) * X)` for the digits
//! to stay separated; preparation picks the smallest power of two above
//! that bound. Negative arguments evaluate the stored `p(-x)` variant, and
//! an optional divisor turns integer-scaled interpolants back into
//! sequence values, which makes any finite integer sequence (and any finite
//! language) queryable in constant operations.

use alloc::string::ToString;
use alloc::vec::Vec;

use super::Poly;
use crate::error::{Error, Result};
use crate::numtheory::rational::{lcm, Rational};
use crate::opcore::{BigInt, BigNat, CountedContext};

#[derive(Debug, Clone)]
struct SignSplit {
    pos: BigNat,
    neg: BigNat,
}

/// A polynomial compiled for constant-operation evaluation on `|x| <= X`.
#[derive(Debug, Clone)]
pub struct PreparedPoly {
    degree: u64,
    domain: BigNat,
    radix: BigNat,
    radix_pow_d: BigNat,
    /// Packed constants for `p(x)` and `p(-x)`.
    packed: [SignSplit; 2],
    divisor: BigNat,
}

impl PreparedPoly {
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn domain(&self) -> &BigNat {
        &self.domain
    }

    pub fn radix(&self) -> &BigNat {
        &self.radix
    }

    pub fn radix_pow_degree(&self) -> &BigNat {
        &self.radix_pow_d
    }

    /// `p_plus(Z)` where `p = p_plus - p_minus` with nonnegative parts.
    pub fn packed_pos(&self) -> &BigNat {
        &self.packed[0].pos
    }

    pub fn packed_neg(&self) -> &BigNat {
        &self.packed[0].neg
    }

    /// Scaling divisor applied after extraction (1 unless built from a
    /// sequence).
    pub fn divisor(&self) -> &BigNat {
        &self.divisor
    }
}

/// `max(X^d * P, (X^d + 1) * X)`: the radix must strictly exceed this.
pub(crate) fn radix_bound(degree: u64, norm1: &BigNat, domain: &BigNat) -> BigNat {
    let xd = domain.pow(degree);
    let a = &xd * norm1;
    let b = &(&xd + &BigNat::one()) * domain;
    if a >= b {
        a
    } else {
        b
    }
}

fn pack_coeffs(parts: &[BigNat], radix: &BigNat) -> BigNat {
    let mut acc = BigNat::zero();
    for c in parts.iter().rev() {
        acc = &(&acc * radix) + c;
    }
    acc
}

fn build(p: &Poly, domain: &BigNat, radix: BigNat, divisor: BigNat) -> PreparedPoly {
    let degree = p.degree();
    let negated = p.negated_argument();
    let packed = [p, &negated].map(|q| {
        let (plus, minus) = q.split_signs();
        SignSplit {
            pos: pack_coeffs(&plus, &radix),
            neg: pack_coeffs(&minus, &radix),
        }
    });
    PreparedPoly {
        degree,
        domain: domain.clone(),
        radix_pow_d: radix.pow(degree),
        radix,
        packed,
        divisor,
    }
}

/// Prepare `p` for the domain `|x| <= domain`, choosing the smallest
/// power-of-two radix above the separation bound.
pub fn prepare(p: &Poly, domain: &BigNat) -> PreparedPoly {
    let bound = radix_bound(p.degree(), p.norm1(), domain);
    let radix = BigNat::pow2(bound.bit_len().max(1));
    build(p, domain, radix, BigNat::one())
}

/// Prepare with a caller-chosen radix, rejected if it does not clear the
/// separation bound for this polynomial and domain.
pub fn prepare_with_radix(p: &Poly, domain: &BigNat, radix: &BigNat) -> Result<PreparedPoly> {
    let bound = radix_bound(p.degree(), p.norm1(), domain);
    if radix <= &bound {
        return Err(Error::RadixTooSmall {
            required: bound.to_string(),
            got: radix.to_string(),
        });
    }
    Ok(build(p, domain, radix.clone(), BigNat::one()))
}

/// Evaluate a prepared polynomial. The counted work is the same fixed
/// operation sequence for every in-domain argument and every degree.
pub fn eval_prepared(ctx: &mut CountedContext, prep: &PreparedPoly, x: &BigInt) -> Result<BigInt> {
    let mag = x.abs();
    if mag > prep.domain {
        return Err(Error::DomainExceeded {
            value: x.to_string(),
            bound: prep.domain.to_string(),
        });
    }
    let split = &prep.packed[usize::from(x.is_negative())];

    let zd1 = ctx.mul(&prep.radix_pow_d, &prep.radix)?;
    let den = ctx.sub(&prep.radix, &mag)?;
    let series = ctx.div(&zd1, &den)?;

    let mut halves = [BigNat::zero(), BigNat::zero()];
    for (slot, packed) in halves.iter_mut().zip([&split.pos, &split.neg]) {
        let spread = ctx.mul(&series, packed)?;
        let shifted = ctx.div(&spread, &prep.radix_pow_d)?;
        *slot = ctx.rem(&shifted, &prep.radix)?;
    }
    let [vp, vn] = halves;
    let mut value = ctx.sub(&BigInt::from(vp), &BigInt::from(vn))?;
    if !prep.divisor.is_one() {
        value = ctx.div_exact_int(&value, &BigInt::from(&prep.divisor))?;
    }
    Ok(value)
}

/// Compile a finite integer sequence `y_0, ..., y_N` into a prepared
/// evaluator for `n -> y_n`.
///
/// Interpolates exactly over the nodes `0..=N` with Newton forward
/// differences, scales by the least common multiple `M` of the coefficient
/// denominators to reach an integer polynomial, and stores `M` as the
/// divisor.
pub fn prepare_sequence(values: &[BigInt]) -> PreparedPoly {
    assert!(!values.is_empty(), "sequence must have at least one term");
    let n = values.len();

    // Forward differences: deltas[k] = Delta^k y_0.
    let mut work = values.to_vec();
    let mut deltas = Vec::with_capacity(n);
    deltas.push(work[0].clone());
    for k in 1..n {
        for i in 0..n - k {
            work[i] = &work[i + 1] - &work[i];
        }
        deltas.push(work[0].clone());
    }

    // p(x) = sum_k deltas[k]/k! * x(x-1)...(x-k+1).
    let mut coeffs = alloc::vec![Rational::zero(); n];
    let mut falling: Vec<BigInt> = alloc::vec![BigInt::one()];
    let mut factorial = BigNat::one();
    for (k, delta) in deltas.iter().enumerate() {
        if k > 0 {
            factorial = &factorial * &BigNat::from(k as u64);
        }
        if !delta.is_zero() {
            let scale = Rational::new(delta.clone(), factorial.clone());
            for (j, c) in falling.iter().enumerate() {
                coeffs[j] = coeffs[j].add(&scale.mul(&Rational::from_int(c.clone())));
            }
        }
        if k + 1 < n {
            // falling *= (x - k)
            let mut next = alloc::vec![BigInt::zero(); falling.len() + 1];
            let k_int = BigInt::from(k as u64);
            for (j, c) in falling.iter().enumerate() {
                next[j + 1] = &next[j + 1] + c;
                next[j] = &next[j] - &(c * &k_int);
            }
            falling = next;
        }
    }

    let divisor = coeffs
        .iter()
        .fold(BigNat::one(), |acc, c| lcm(&acc, c.denominator()));
    let div_rat = Rational::from_int(BigInt::from(&divisor));
    let int_coeffs: Vec<BigInt> = coeffs
        .iter()
        .map(|c| {
            let scaled = c.mul(&div_rat);
            debug_assert!(scaled.is_integer());
            scaled.numerator().clone()
        })
        .collect();

    let poly = Poly::new(int_coeffs);
    let domain = BigNat::from((n - 1) as u64);
    let bound = radix_bound(poly.degree(), poly.norm1(), &domain);
    let radix = BigNat::pow2(bound.bit_len().max(1));
    build(&poly, &domain, radix, divisor)
}

/// Compile the characteristic sequence of `members` over `0..=universe_max`.
pub fn prepare_language(members: &[u64], universe_max: u64) -> PreparedPoly {
    debug_assert!(members.iter().all(|&m| m <= universe_max));
    let seq: Vec<BigInt> = (0..=universe_max)
        .map(|i| BigInt::from(u64::from(members.contains(&i))))
        .collect();
    prepare_sequence(&seq)
}

/// Membership query against a compiled characteristic sequence.
pub fn decide_finite_language(
    ctx: &mut CountedContext,
    prep: &PreparedPoly,
    n: u64,
) -> Result<bool> {
    let value = eval_prepared(ctx, prep, &BigInt::from(n))?;
    Ok(ctx.cmp(&value, &BigInt::one())? == core::cmp::Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyeval::eval_horner;
    use crate::rng::{RandomSource, RandomSourceExt, SplitMix64};

    #[test]
    fn prepare_picks_the_published_radix() {
        // x^2 + 2x + 3 on |x| <= 4: bound max{96, 68} = 96, so Z = 128.
        let p = Poly::from_i64(&[3, 2, 1]);
        let prep = prepare(&p, &BigNat::from(4u32));
        assert_eq!(prep.radix(), &BigNat::from(128u32));
    }

    #[test]
    fn published_class_radices_are_admissible() {
        // Degree <= 3, norm <= 56, domain 21 fits under 0x80000.
        let p = Poly::from_i64(&[0, 0, 0, 56]);
        let z = BigNat::from(0x80000u64);
        assert!(prepare_with_radix(&p, &BigNat::from(21u32), &z).is_ok());

        // Degree <= 5, norm <= 5, domain 4 fits under 0x1401.
        let p = Poly::from_i64(&[0, 0, 0, 0, 0, 5]);
        let z = BigNat::from(0x1401u64);
        assert!(prepare_with_radix(&p, &BigNat::from(4u32), &z).is_ok());
        // One less does not clear the bound.
        let z = BigNat::from(0x1400u64);
        assert!(matches!(
            prepare_with_radix(&p, &BigNat::from(4u32), &z),
            Err(Error::RadixTooSmall { .. })
        ));
    }

    #[test]
    fn eval_prepared_examples() {
        let mut ctx = CountedContext::new();
        let p = Poly::from_i64(&[3, 2, 1]);
        let prep = prepare(&p, &BigNat::from(4u32));
        assert_eq!(
            eval_prepared(&mut ctx, &prep, &BigInt::from(2)).unwrap(),
            BigInt::from(11)
        );
        // Constant term at x = 0.
        assert_eq!(
            eval_prepared(&mut ctx, &prep, &BigInt::zero()).unwrap(),
            BigInt::from(3)
        );
        // Negative arguments go through the stored p(-x) variant.
        assert_eq!(
            eval_prepared(&mut ctx, &prep, &BigInt::from(-4)).unwrap(),
            BigInt::from(11)
        );
        assert!(matches!(
            eval_prepared(&mut ctx, &prep, &BigInt::from(5)),
            Err(Error::DomainExceeded { .. })
        ));
    }

    #[test]
    fn eval_prepared_matches_horner_randomized() {
        let mut rng = SplitMix64::new(0xcafe);
        let mut ctx = CountedContext::new();
        for _ in 0..2_000 {
            let len = 1 + rng.below_u64(9) as usize;
            let coeffs: Vec<BigInt> = (0..len)
                .map(|_| {
                    let c = BigInt::from(rng.below_u64(50));
                    if rng.next_u64() & 1 == 0 {
                        c.neg()
                    } else {
                        c
                    }
                })
                .collect();
            let p = Poly::new(coeffs);
            let domain = BigNat::from(1 + rng.below_u64(30));
            let prep = prepare(&p, &domain);
            let xmag = rng.nat_below(&(&domain + &BigNat::one()));
            let x = BigInt::from(xmag);
            let x = if rng.next_u64() & 1 == 0 { x.neg() } else { x };
            let got = eval_prepared(&mut ctx, &prep, &x).unwrap();
            let mut oracle = CountedContext::new();
            assert_eq!(got, eval_horner(&mut oracle, &p, &x).unwrap());
        }
    }

    #[test]
    fn eval_prepared_op_count_is_constant() {
        let mut deltas = Vec::new();
        let mut rng = SplitMix64::new(0x0b5);
        for _ in 0..20 {
            let len = 1 + rng.below_u64(40) as usize;
            let coeffs: Vec<BigInt> = (0..len).map(|_| BigInt::from(rng.below_u64(9))).collect();
            let p = Poly::new(coeffs);
            let prep = prepare(&p, &BigNat::from(100u32));
            let x = BigInt::from(rng.below_u64(101));
            let mut ctx = CountedContext::new();
            eval_prepared(&mut ctx, &prep, &x).unwrap();
            deltas.push(ctx.tally_snapshot());
        }
        for d in &deltas[1..] {
            assert_eq!(d, &deltas[0]);
        }
    }

    #[test]
    fn sequence_examples() {
        let mut ctx = CountedContext::new();

        let single = prepare_sequence(&[BigInt::from(5)]);
        assert_eq!(
            eval_prepared(&mut ctx, &single, &BigInt::zero()).unwrap(),
            BigInt::from(5)
        );

        // 0, 1, 4, 9 is n^2.
        let squares = prepare_sequence(&[0, 1, 4, 9].map(BigInt::from));
        for n in 0..4i64 {
            assert_eq!(
                eval_prepared(&mut ctx, &squares, &BigInt::from(n)).unwrap(),
                BigInt::from(n * n)
            );
        }

        let alt: Vec<BigInt> = [1, 0, 1, 0, 1].map(BigInt::from).to_vec();
        let prep = prepare_sequence(&alt);
        for (n, want) in alt.iter().enumerate() {
            assert_eq!(
                eval_prepared(&mut ctx, &prep, &BigInt::from(n as u64)).unwrap(),
                *want
            );
        }
    }

    #[test]
    fn sequence_with_negative_values() {
        let mut ctx = CountedContext::new();
        let vals: Vec<BigInt> = [-3i64, 7, 0, -11, 2].map(BigInt::from).to_vec();
        let prep = prepare_sequence(&vals);
        for (n, want) in vals.iter().enumerate() {
            assert_eq!(
                eval_prepared(&mut ctx, &prep, &BigInt::from(n as u64)).unwrap(),
                *want
            );
        }
    }

    #[test]
    fn language_examples() {
        let mut ctx = CountedContext::new();
        let lang = prepare_language(&[1, 3], 3);
        assert!(decide_finite_language(&mut ctx, &lang, 3).unwrap());
        assert!(!decide_finite_language(&mut ctx, &lang, 2).unwrap());
        assert!(matches!(
            decide_finite_language(&mut ctx, &lang, 4),
            Err(Error::DomainExceeded { .. })
        ));

        let empty = prepare_language(&[], 3);
        for n in 0..=3 {
            assert!(!decide_finite_language(&mut ctx, &empty, n).unwrap());
        }
    }

    #[test]
    fn zero_polynomial_evaluates_to_zero() {
        let mut ctx = CountedContext::new();
        let prep = prepare(&Poly::zero(), &BigNat::from(10u32));
        assert_eq!(
            eval_prepared(&mut ctx, &prep, &BigInt::from(7)).unwrap(),
            BigInt::zero()
        );
    }
}
