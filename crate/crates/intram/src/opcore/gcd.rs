//! Gcd backends: Lehmer's algorithm for plain gcd and the extended
//! Euclidean algorithm for Bezout cofactors.
//!
//! The packed-algorithm test suites call gcd on operands of 10^5..10^6 bits,
//! where a word-at-a-time binary gcd is far too slow. Lehmer's variant does
//! partial Euclid on the leading 127 bits with a 2x2 cofactor matrix and
//! applies the matrix to the full numbers, retiring ~60 bits per round.

use num_bigint::BigUint as RawNat;
use num_traits::{ToPrimitive, Zero};

use super::value::{BigInt, BigNat};

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `x*a - y*b` for nonnegative scalars, known to be nonnegative.
fn lin_comb(a: &RawNat, b: &RawNat, x: u64, y: u64) -> RawNat {
    let pos = a * x;
    let neg = b * y;
    debug_assert!(pos >= neg, "Lehmer matrix produced a negative row");
    pos - neg
}

/// Greatest common divisor; `gcd(0, 0) = 0` by convention.
#[allow(clippy::while_let_loop)]
pub fn gcd_nat(a: &BigNat, b: &BigNat) -> BigNat {
    let mut a = a.raw().clone();
    let mut b = b.raw().clone();
    if a < b {
        core::mem::swap(&mut a, &mut b);
    }

    loop {
        if b.is_zero() {
            return BigNat::from_raw(a);
        }
        if a.bits() <= 127 {
            let g = gcd_u128(a.to_u128().unwrap(), b.to_u128().unwrap());
            return BigNat::from_raw(RawNat::from(g));
        }

        let shift = a.bits() - 126;
        let ah = (&a >> shift).to_i128().unwrap();
        let bh = (&b >> shift).to_i128().unwrap();
        if bh < 2 {
            // Operands are badly unbalanced; one full division realigns them.
            let r = &a % &b;
            a = core::mem::replace(&mut b, r);
            continue;
        }

        // Partial Euclid on the leading digits. The matrix rows keep
        // alternating signs: (aa >= 0, ab <= 0) and (ac <= 0, ad >= 0),
        // swapping parity each step. Any i128 overflow simply ends the
        // round early; the accumulated matrix stays valid.
        let (mut u, mut v) = (ah, bh);
        let (mut aa, mut ab, mut ac, mut ad): (i128, i128, i128, i128) = (1, 0, 0, 1);
        const COFACTOR_LIMIT: i128 = 1 << 62;
        loop {
            // The quotient test is only meaningful while the adjusted
            // numerators and denominators are still nonnegative.
            let (Some(den1), Some(den2)) = (v.checked_add(ac), v.checked_add(ad)) else {
                break;
            };
            let (Some(num1), Some(num2)) = (u.checked_add(aa), u.checked_add(ab)) else {
                break;
            };
            if den1 <= 0 || den2 <= 0 || num1 < 0 || num2 < 0 {
                break;
            }
            let q = num1 / den1;
            if q != num2 / den2 {
                break;
            }
            let step = |x: i128, y: i128| q.checked_mul(y).and_then(|t| x.checked_sub(t));
            let (Some(nc), Some(nd), Some(t)) = (step(aa, ac), step(ab, ad), step(u, v)) else {
                break;
            };
            if nc.abs() >= COFACTOR_LIMIT || nd.abs() >= COFACTOR_LIMIT {
                break;
            }
            aa = ac;
            ab = ad;
            ac = nc;
            ad = nd;
            u = v;
            v = t;
        }

        if ab == 0 {
            // No progress possible from the leading digits alone.
            let r = &a % &b;
            a = core::mem::replace(&mut b, r);
        } else {
            // Row signs alternate per step; after at least one step ab is
            // nonzero, so its sign identifies the parity. New rows are
            // (aa*a + ab*b, ac*a + ad*b), both nonnegative by construction.
            let scalar = |x: i128| -> u64 {
                debug_assert!(x.unsigned_abs() < 1 << 63);
                x.unsigned_abs() as u64
            };
            let (na, nb) = if ab < 0 {
                (
                    lin_comb(&a, &b, scalar(aa), scalar(ab)),
                    lin_comb(&b, &a, scalar(ad), scalar(ac)),
                )
            } else {
                (
                    lin_comb(&b, &a, scalar(ab), scalar(aa)),
                    lin_comb(&a, &b, scalar(ac), scalar(ad)),
                )
            };
            a = na;
            b = nb;
            if a < b {
                core::mem::swap(&mut a, &mut b);
            }
        }
    }
}

/// Extended Euclid: returns `(g, s, t)` with `g = gcd(a, b) = s*a + t*b`.
///
/// Runs on full-width divisions; the operands this crate feeds it are small
/// enough (CRT moduli) that Lehmer acceleration is not worth the cofactor
/// bookkeeping.
pub fn gcdex_nat(a: &BigNat, b: &BigNat) -> (BigNat, BigInt, BigInt) {
    let mut r0 = BigInt::from(a);
    let mut r1 = BigInt::from(b);
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_mod_floor(&r1);
        r0 = core::mem::replace(&mut r1, r);
        let ns = &s0 - &(&q * &s1);
        s0 = core::mem::replace(&mut s1, ns);
        let nt = &t0 - &(&q * &t1);
        t0 = core::mem::replace(&mut t1, nt);
    }
    (r0.to_nat().expect("gcd of naturals is nonnegative"), s0, t0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{RandomSourceExt, SplitMix64};

    fn gcd_naive(a: &BigNat, b: &BigNat) -> BigNat {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = core::mem::replace(&mut b, r);
        }
        a
    }

    #[test]
    fn lehmer_matches_euclid_on_random_inputs() {
        let mut rng = SplitMix64::new(0x9e3779b97f4a7c15);
        for round in 0..400 {
            let bits = 1 + (round % 40) * 97;
            let a = rng.nat_with_bits(bits as u64);
            let b = rng.nat_with_bits((1 + round % 37) as u64 * 53);
            assert_eq!(gcd_nat(&a, &b), gcd_naive(&a, &b), "bits={bits}");
        }
    }

    #[test]
    fn lehmer_matches_euclid_with_shared_factors() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..80 {
            let g = rng.nat_with_bits(300);
            let a = &g * &rng.nat_with_bits(2400);
            let b = &g * &rng.nat_with_bits(2300);
            assert_eq!(gcd_nat(&a, &b), gcd_naive(&a, &b));
        }
    }

    #[test]
    fn gcd_edge_cases() {
        let z = BigNat::zero();
        let v = BigNat::from(84u32);
        assert_eq!(gcd_nat(&z, &z), z);
        assert_eq!(gcd_nat(&v, &z), v);
        assert_eq!(gcd_nat(&z, &v), v);
        assert_eq!(
            gcd_nat(&BigNat::pow2(4000), &BigNat::pow2(3999)),
            BigNat::pow2(3999)
        );
        // Fibonacci-style worst case for quotient 1 chains.
        let mut x = BigNat::one();
        let mut y = BigNat::one();
        for _ in 0..8000 {
            let t = &x + &y;
            x = core::mem::replace(&mut y, t);
        }
        assert_eq!(gcd_nat(&x, &y), BigNat::one());
    }

    #[test]
    fn gcdex_bezout_identity() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..200 {
            let abits = 1 + rng.below_u64(512);
            let bbits = 1 + rng.below_u64(512);
            let a = rng.nat_with_bits(abits);
            let b = rng.nat_with_bits(bbits);
            let (g, s, t) = gcdex_nat(&a, &b);
            let lhs = &(&s * &BigInt::from(&a)) + &(&t * &BigInt::from(&b));
            assert_eq!(lhs, BigInt::from(&g));
            assert_eq!(g, gcd_naive(&a, &b));
        }
    }
}
