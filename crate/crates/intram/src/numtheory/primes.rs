//! The primality oracle and randomized prime search.
//!
//! The oracle is a strong-pseudoprime (Miller-Rabin) test over the first
//! thirteen prime bases, which is deterministic for every value below
//! 3.3e24 and in particular for the whole 64-bit range; above that the
//! same fixed bases make it a high-confidence probabilistic test. It is a
//! subroutine, not a counted algorithm: callers treat it as given.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::opcore::{BigNat, CountedContext};
use crate::rng::{RandomSource, RandomSourceExt};

/// Deterministic witness set for every modulus below 3.3e24.
const MILLER_RABIN_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// All primes up to and including `limit`.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = alloc::vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        primes.push(p as u64);
        let mut multiple = p * p;
        while multiple <= n {
            composite[multiple] = true;
            multiple += p;
        }
    }
    primes
}

/// The first `count` primes at or above `start`, growing the sieve bound
/// until enough are found.
pub fn first_primes_at_least(start: u64, count: usize) -> Vec<u64> {
    let mut bound = (start + 64).max(2 * count as u64 + 64);
    loop {
        let primes: Vec<u64> = sieve_primes(bound)
            .into_iter()
            .filter(|&p| p >= start)
            .take(count)
            .collect();
        if primes.len() == count {
            return primes;
        }
        bound *= 2;
    }
}

/// Strong-pseudoprime check for one base.
fn strong_probable_prime(n: &BigNat, base: u64) -> bool {
    let n_minus_1 = n.checked_sub(&BigNat::one()).expect("n >= 2");
    let trailing = {
        let mut t = 0u64;
        while !n_minus_1.bit(t) {
            t += 1;
        }
        t
    };
    let odd_part = &n_minus_1 >> trailing;
    let base = BigNat::from(base);
    let mut x = base.modpow(&odd_part, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..trailing {
        x = x.modpow(&BigNat::from(2u32), n);
        if x == n_minus_1 {
            return true;
        }
        if x.is_one() {
            return false;
        }
    }
    false
}

/// The primality oracle (uncounted).
pub fn is_prime(n: &BigNat) -> bool {
    let two = BigNat::from(2u32);
    if *n < two {
        return false;
    }
    for &p in &MILLER_RABIN_BASES {
        let p_nat = BigNat::from(p);
        if *n == p_nat {
            return true;
        }
        if n.div_rem(&p_nat).1.is_zero() {
            return false;
        }
    }
    MILLER_RABIN_BASES
        .iter()
        .all(|&base| strong_probable_prime(n, base))
}

/// Randomized prime search: guess an offset `m <= n`, then scan the window
/// `n + m, ..., n + m + 2*bitlen(n)` with the primality oracle. Returns a
/// prime in `[n, 2n + 2*bitlen(n)]`.
///
/// The default attempt budget `4 * bitlen(n)` makes failure vanishingly
/// unlikely; exhausting it reports [`Error::AttemptsExhausted`].
pub fn find_prime_above(
    ctx: &mut CountedContext,
    n: &BigNat,
    rng: &mut dyn RandomSource,
    max_attempts: Option<u64>,
) -> Result<BigNat> {
    assert!(*n >= BigNat::from(2u32), "search floor must be at least 2");
    let bits = n.bit_len();
    let window = 2 * bits;
    let attempts = max_attempts.unwrap_or(4 * bits).max(1);
    let one = BigNat::one();
    let guess_bound = ctx.add(n, &one)?;
    for _ in 0..attempts {
        let offset = rng.nat_below(&guess_bound);
        let mut candidate = ctx.add(n, &offset)?;
        for _ in 0..=window {
            if is_prime(&candidate) {
                return Ok(candidate);
            }
            candidate = ctx.add(&candidate, &one)?;
        }
    }
    Err(Error::AttemptsExhausted { attempts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn sieve_matches_trial_division() {
        let primes = sieve_primes(10_000);
        let trial =
            |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        let expected: Vec<u64> = (2..=10_000).filter(|&n| trial(n)).collect();
        assert_eq!(primes, expected);
    }

    #[test]
    fn oracle_agrees_with_sieve() {
        let primes = sieve_primes(5_000);
        for n in 0..5_000u64 {
            assert_eq!(is_prime(&BigNat::from(n)), primes.contains(&n), "n={n}");
        }
    }

    #[test]
    fn oracle_handles_known_large_values() {
        // 2^61 - 1 is a Mersenne prime; 2^64 - 1 = 3 * 5 * 17 * 257 * ...
        let mersenne = BigNat::checked_sub(&BigNat::pow2(61), &BigNat::one()).unwrap();
        assert!(is_prime(&mersenne));
        let composite = BigNat::checked_sub(&BigNat::pow2(64), &BigNat::one()).unwrap();
        assert!(!is_prime(&composite));
        // Carmichael numbers fool Fermat, not a strong test.
        assert!(!is_prime(&BigNat::from(561u32)));
        assert!(!is_prime(&BigNat::from(1_729u32)));
    }

    #[test]
    fn first_primes_at_least_examples() {
        assert_eq!(first_primes_at_least(10, 3), [11, 13, 17]);
        assert_eq!(first_primes_at_least(2, 4), [2, 3, 5, 7]);
        let pool = first_primes_at_least(9, 4096);
        assert_eq!(pool.len(), 4096);
        assert!(pool.iter().all(|&p| p >= 9));
    }

    #[test]
    fn find_prime_above_small() {
        let mut ctx = CountedContext::new();
        let mut rng = SplitMix64::new(11);
        let p = find_prime_above(&mut ctx, &BigNat::from(10u32), &mut rng, None).unwrap();
        assert!(is_prime(&p));
        assert!(p >= BigNat::from(10u32));

        let p = find_prime_above(&mut ctx, &BigNat::from(2u32), &mut rng, None).unwrap();
        assert!(is_prime(&p));
    }

    #[test]
    fn find_prime_above_large() {
        let mut ctx = CountedContext::new();
        let mut rng = SplitMix64::new(0xdead);
        let n = BigNat::pow2(128);
        let p = find_prime_above(&mut ctx, &n, &mut rng, None).unwrap();
        assert!(p >= n);
        assert!(is_prime(&p));
    }
}
