//! Number-theoretic constructions: CRT solvers, coprime chains, gcd floor
//! points, Wilson and randomized prime search, Newton refinement of
//! algebraic numbers, Mills-style prime extraction, and the fixed-point
//! encodings built on them.

mod newton;
mod primes;
pub mod rational;
mod rho;

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::opcore::{BigInt, BigNat, CountedContext};

pub use newton::{mills_constant, mills_floor, newton_approx};
pub use primes::{find_prime_above, first_primes_at_least, is_prime, sieve_primes};
pub use rational::Rational;
pub use rho::{find_recurrence, rho_encode, rho_extract, verify_recurrence, RhoCode};

/// One congruence `x = residue (mod modulus)` with `modulus > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    residue: BigInt,
    modulus: BigNat,
}

impl Congruence {
    pub fn new(residue: BigInt, modulus: BigNat) -> Result<Self> {
        if modulus <= BigNat::one() {
            return Err(Error::InvalidModulus(modulus.to_string()));
        }
        Ok(Congruence { residue, modulus })
    }

    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn modulus(&self) -> &BigNat {
        &self.modulus
    }
}

/// Merge two coprime congruences into one modulo `m1*m2`.
///
/// One `gcdex` computes the Bezout pair; the combination
/// `x = a1*t*m2 + a2*s*m1 mod m1*m2` then satisfies both congruences.
pub fn crt_pair(
    ctx: &mut CountedContext,
    first: &Congruence,
    second: &Congruence,
) -> Result<Congruence> {
    let (g, s, t) = ctx.gcdex(&first.modulus, &second.modulus)?;
    if !g.is_one() {
        return Err(Error::NotCoprime {
            left: first.modulus.to_string(),
            right: second.modulus.to_string(),
            common: g.to_string(),
        });
    }
    let combined_mod = ctx.mul(&first.modulus, &second.modulus)?;
    let e1 = ctx.mul(&t, &BigInt::from(&second.modulus))?;
    let term1 = ctx.mul(&first.residue, &e1)?;
    let e2 = ctx.mul(&s, &BigInt::from(&first.modulus))?;
    let term2 = ctx.mul(&second.residue, &e2)?;
    let sum = ctx.add(&term1, &term2)?;
    let x = ctx.rem_floor_int(&sum, &combined_mod)?;
    Ok(Congruence {
        residue: BigInt::from(x),
        modulus: combined_mod,
    })
}

/// Solve a system of pairwise-coprime congruences, returning
/// `(x, N = product of moduli)` with `0 <= x < N`.
///
/// The equations are merged in a balanced binary tree, which keeps each
/// `gcdex` on comparably sized moduli; exactly `n - 1` gcdex calls in
/// total. Non-coprime input is reported with an offending leaf pair.
pub fn crt_tree(ctx: &mut CountedContext, system: &[Congruence]) -> Result<(BigNat, BigNat)> {
    assert!(!system.is_empty(), "empty congruence system");
    let mut level: Vec<Congruence> = system.to_vec();
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len() / 2 + 1);
        let mut iter = level.chunks_exact(2);
        for pair in &mut iter {
            match crt_pair(ctx, &pair[0], &pair[1]) {
                Ok(merged) => next.push(merged),
                Err(Error::NotCoprime { .. }) => return Err(find_offending_pair(system)),
                Err(e) => return Err(e),
            }
        }
        if let [odd] = iter.remainder() {
            next.push(odd.clone());
        }
        level = next;
    }
    let solved = level.pop().unwrap();
    let x = solved
        .residue
        .to_nat()
        .expect("merged residue is reduced to nonnegative");
    Ok((x, solved.modulus))
}

/// Locate a leaf-level non-coprime pair for the error report.
fn find_offending_pair(system: &[Congruence]) -> Error {
    for (i, a) in system.iter().enumerate() {
        for b in &system[i + 1..] {
            let g = a.modulus.gcd(&b.modulus);
            if !g.is_one() {
                return Error::NotCoprime {
                    left: a.modulus.to_string(),
                    right: b.modulus.to_string(),
                    common: g.to_string(),
                };
            }
        }
    }
    // Group-level collision without a leaf pair cannot happen, since any
    // common factor of products traces back to some leaf pair.
    unreachable!("non-coprime merge without a non-coprime leaf pair")
}

const MAX_CHAIN: usize = 64;

/// Pairwise coprime values starting at `r`:
/// `p1 = r, p2 = r + 1, p_(i+1) = p1*...*p_i + 1`.
///
/// Values grow doubly exponentially, so `count` is capped.
pub fn coprime_chain(ctx: &mut CountedContext, r: &BigNat, count: usize) -> Result<Vec<BigNat>> {
    assert!(*r >= BigNat::from(2u32), "chain start must be at least 2");
    assert!(count >= 1, "chain must have at least one element");
    if count > MAX_CHAIN {
        return Err(Error::ScaleExceeded {
            what: "coprime chain length",
            limit: MAX_CHAIN as u64,
        });
    }
    let one = BigNat::one();
    let mut chain = Vec::with_capacity(count);
    chain.push(r.clone());
    if count >= 2 {
        chain.push(ctx.add(r, &one)?);
    }
    let mut product = r.clone();
    for i in 2..count {
        product = ctx.mul(&product, &chain[i - 1])?;
        chain.push(ctx.add(&product, &one)?);
    }
    Ok(chain)
}

/// Where the pairwise-coprime pool for [`gcd_floor_point`] comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoprimeSource {
    /// Distinct primes at or above `r` (sieve-backed).
    Primes,
    /// The multiply-and-add-one chain; kept for small demonstrations only.
    Chain,
}

const MAX_FLOOR_OFFSETS: u64 = 1_000_000;
const MAX_CHAIN_OFFSETS: u64 = 6;

/// A point `x_1, ..., x_d` such that `gcd(x_1 + v_1, ..., x_d + v_d) >= r`
/// for every offset vector `v` in `{0, ..., s-1}^d`.
///
/// One pairwise-coprime value `p_v >= r` is assigned to each offset vector;
/// `u_(i,j)` multiplies together the `p_v` with `v_i = j`, and the CRT
/// solution of `x_i = -j (mod u_(i,j))` makes `p_v` divide every `x_i + v_i`.
pub fn gcd_floor_point(
    ctx: &mut CountedContext,
    dims: usize,
    r: &BigNat,
    s: u64,
    source: CoprimeSource,
) -> Result<Vec<BigNat>> {
    assert!(dims >= 1 && s >= 1);
    let offsets = (s as u128).checked_pow(dims as u32).unwrap_or(u128::MAX);
    if offsets > MAX_FLOOR_OFFSETS as u128 {
        return Err(Error::ScaleExceeded {
            what: "offset vectors s^d",
            limit: MAX_FLOOR_OFFSETS,
        });
    }
    let offsets = offsets as u64;
    let pool: Vec<BigNat> = match source {
        CoprimeSource::Primes => {
            let start = r.to_u64().ok_or(Error::ScaleExceeded {
                what: "prime pool start",
                limit: u64::MAX,
            })?;
            first_primes_at_least(start.max(2), offsets as usize)
                .into_iter()
                .map(BigNat::from)
                .collect()
        }
        CoprimeSource::Chain => {
            if offsets > MAX_CHAIN_OFFSETS {
                return Err(Error::ScaleExceeded {
                    what: "chain-sourced offset vectors",
                    limit: MAX_CHAIN_OFFSETS,
                });
            }
            let start = if *r >= BigNat::from(2u32) {
                r.clone()
            } else {
                BigNat::from(2u32)
            };
            coprime_chain(ctx, &start, offsets as usize)?
        }
    };

    // Offset vector -> flat index, digit i of the base-s expansion is v_i.
    let digit = |flat: u64, i: usize| -> u64 { flat / s.pow(i as u32) % s };

    let mut xs = Vec::with_capacity(dims);
    let mut full_product: Option<BigNat> = None;
    for i in 0..dims {
        let mut congruences = Vec::with_capacity(s as usize);
        for j in 0..s {
            let mut u = BigNat::one();
            for flat in 0..offsets {
                if digit(flat, i) == j {
                    u = ctx.mul(&u, &pool[flat as usize])?;
                }
            }
            congruences.push(Congruence::new(BigInt::from(j).neg(), u)?);
        }
        let (x, n) = crt_tree(ctx, &congruences)?;
        if full_product.is_none() {
            full_product = Some(n);
        }
        // The zero representative is a valid residue but makes gcd(0) traps
        // possible; lift it by the full modulus.
        if x.is_zero() {
            xs.push(full_product.clone().unwrap());
        } else {
            xs.push(x);
        }
    }
    Ok(xs)
}

/// Exhaustively check the defining property of a gcd floor point
/// (uncounted; verification helper for tests and `--check`).
pub fn verify_gcd_floor(xs: &[BigNat], r: &BigNat, s: u64) -> bool {
    let dims = xs.len();
    let offsets = s.pow(dims as u32);
    for flat in 0..offsets {
        let mut g = BigNat::zero();
        for (i, x) in xs.iter().enumerate() {
            let v = flat / s.pow(i as u32) % s;
            g = g.gcd(&(x + &BigNat::from(v)));
        }
        if g < *r {
            return false;
        }
    }
    true
}

const WILSON_LIMIT: u64 = 1_000_000;

/// Wilson primality: `n > 1` is prime iff `(n - 1)! = n - 1 (mod n)`.
///
/// The factorial loop runs in 64-bit host words; its `2(n-2)` mul/rem
/// operations are charged to the context in bulk.
pub fn wilson_is_prime(ctx: &mut CountedContext, n: u64) -> Result<bool> {
    assert!(n >= 2, "Wilson test needs n >= 2");
    if n > WILSON_LIMIT {
        return Err(Error::ScaleExceeded {
            what: "Wilson factorial bound",
            limit: WILSON_LIMIT,
        });
    }
    ctx.charge_many(crate::opcore::PrimOp::Mul, n.saturating_sub(2))?;
    ctx.charge_many(crate::opcore::PrimOp::Rem, n.saturating_sub(2))?;
    let mut acc = 1u64;
    for i in 2..n {
        acc = acc * i % n;
    }
    Ok(acc == n - 1 || n == 2)
}
