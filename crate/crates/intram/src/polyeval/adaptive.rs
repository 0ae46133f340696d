//! Evaluation on all of `N`: the radix adapts to the argument.
//!
//! The prepared-domain scheme needs `Z` above a bound that depends on the
//! largest argument, so an unbounded domain needs `Z` chosen per call. The
//! packed constant `p(Z)` is then recovered from the stored `p(Y)` with a
//! bitwise mask: spreading `p(Y)` along `sum_i Z'^i` lays down one copy per
//! power, and conjunction with `(Y-1) * sum_i (Z'Y)^i` cuts the base-Y
//! digit `p_i` out of copy `i`, which reassembles `sum_i p_i (Z'Y)^i =
//! p(Z'Y)`. Power-of-two radices make every window a clean bit range; with
//! `m = max(bitlen x, log2 Y)` the stride `Z' = 2^(m(d+2))` clears both the
//! copy width and the separation bound, so the whole evaluation costs
//! `O(log d)` operations however large `x` is.

use alloc::vec::Vec;

use super::multi::{MultiPoly, PackedPair};
use super::Poly;
use crate::error::{Error, Result};
use crate::opcore::{BigInt, BigNat, CountedContext};

/// A fixed polynomial with the stored constants for adaptive evaluation.
#[derive(Debug, Clone)]
pub struct AdaptivePoly {
    degree: u64,
    /// `log2 Y` for the coefficient radix `Y = 2^k > ||p||_1`.
    y_log2: u64,
    y_minus_1: BigNat,
    /// `Y^(d+1)`.
    y_pow_d1: BigNat,
    packed_pos: BigNat,
    packed_neg: BigNat,
    constant_term: BigInt,
}

impl AdaptivePoly {
    pub fn new(p: &Poly) -> Self {
        let y_log2 = p.norm1().bit_len().max(1);
        let y = BigNat::pow2(y_log2);
        let (plus, minus) = p.split_signs();
        let pack = |parts: &[BigNat]| {
            parts
                .iter()
                .rev()
                .fold(BigNat::zero(), |acc, c| &(&acc * &y) + c)
        };
        AdaptivePoly {
            degree: p.degree(),
            y_log2,
            y_minus_1: &y - &BigNat::one(),
            y_pow_d1: y.pow(p.degree() + 1),
            packed_pos: pack(&plus),
            packed_neg: pack(&minus),
            constant_term: p.coeff(0),
        }
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn coefficient_radix_log2(&self) -> u64 {
        self.y_log2
    }
}

/// Evaluate at any `x >= 0` in `O(log d)` counted operations.
pub fn eval_adaptive(ctx: &mut CountedContext, prep: &AdaptivePoly, x: &BigNat) -> Result<BigInt> {
    let one = BigNat::one();
    if ctx.cmp(x, &BigNat::zero())? == core::cmp::Ordering::Equal {
        return Ok(prep.constant_term.clone());
    }
    let d = prep.degree;
    let bx = ctx.bitlen(x)?.to_u64().expect("bit length fits u64");
    // The stride must cover both the argument and the stored coefficient
    // radix, or the spread copies of p(Y) would overlap.
    let stride_log2 = bx.max(prep.y_log2);
    let base = ctx.shl(&one, stride_log2)?;

    let zp = ctx.pow_sq(&base, d + 2)?; // Z'
    let zp_d1 = ctx.pow_sq(&zp, d + 1)?;
    let zp_m1 = ctx.sub(&zp, &one)?;
    let spread_series = ctx.div(&zp_d1, &zp_m1)?; // 1 + Z' + ... + Z'^d

    let z = ctx.mul_pow2(&zp, prep.y_log2)?; // Z = Z'* Y
    let z_d1 = ctx.mul(&zp_d1, &prep.y_pow_d1)?;
    let z_m1 = ctx.sub(&z, &one)?;
    let window_series = ctx.div(&z_d1, &z_m1)?;
    let mask = ctx.mul(&window_series, &prep.y_minus_1)?;

    let z_d = ctx.div(&z_d1, &z)?;
    let den = ctx.sub(&z, x)?;
    let series = ctx.div(&z_d1, &den)?;

    let mut halves = [BigNat::zero(), BigNat::zero()];
    for (slot, packed) in halves
        .iter_mut()
        .zip([&prep.packed_pos, &prep.packed_neg])
    {
        let copies = ctx.mul(&spread_series, packed)?;
        let packed_z = ctx.and(&copies, &mask)?; // p(Z), one digit per window
        let conv = ctx.mul(&series, &packed_z)?;
        let shifted = ctx.div(&conv, &z_d)?;
        *slot = ctx.rem(&shifted, &z)?;
    }
    let [vp, vn] = halves;
    ctx.sub(&BigInt::from(vp), &BigInt::from(vn))
}

const MAX_PACKED_EXPONENT: u64 = 1 << 24;

/// Multivariate constants for adaptive evaluation: the packed constant over
/// `(Y, Y^d, ..., Y^(d^(n-1)))` per sign variant, recovered at the runtime
/// radix by masking exactly as in the univariate case.
#[derive(Debug, Clone)]
pub struct AdaptiveMultiPoly {
    vars: usize,
    degree_bound: u64,
    y_log2: u64,
    y_minus_1: BigNat,
    /// `Y^(d^n)`.
    y_pow_big: BigNat,
    variants: Vec<PackedPair>,
    constant_term: BigInt,
}

impl AdaptiveMultiPoly {
    pub fn new(p: &MultiPoly) -> Result<Self> {
        let n = p.vars();
        let d = p.degree_bound();
        let total = d
            .checked_pow(n as u32)
            .filter(|&dn| dn <= MAX_PACKED_EXPONENT)
            .ok_or(Error::ScaleExceeded {
                what: "d^n exponent range",
                limit: MAX_PACKED_EXPONENT,
            })?;
        if n > 16 {
            return Err(Error::ScaleExceeded {
                what: "variables (sign-variant table is 2^n)",
                limit: 16,
            });
        }
        let y_log2 = p.norm1().bit_len().max(1);
        let y = BigNat::pow2(y_log2);
        let variants = (0..1usize << n)
            .map(|variant| {
                let (pos, neg) = p.packed_variant(variant, &y);
                PackedPair { pos, neg }
            })
            .collect();
        Ok(AdaptiveMultiPoly {
            vars: n,
            degree_bound: d,
            y_log2,
            y_minus_1: &y - &BigNat::one(),
            y_pow_big: y.pow(total),
            variants,
            constant_term: p.constant_term(),
        })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree_bound(&self) -> u64 {
        self.degree_bound
    }
}

/// Evaluate at any integer vector in `O(n log d)` counted operations.
pub fn eval_adaptive_multi(
    ctx: &mut CountedContext,
    prep: &AdaptiveMultiPoly,
    xs: &[BigInt],
) -> Result<BigInt> {
    assert_eq!(xs.len(), prep.vars, "argument vector length mismatch");
    let one = BigNat::one();
    let n = prep.vars;
    let d = prep.degree_bound;
    let big_d = d.pow(n as u32);

    let mut variant = 0usize;
    let mut mags = Vec::with_capacity(n);
    for (v, x) in xs.iter().enumerate() {
        if x.is_negative() {
            variant |= 1 << v;
        }
        mags.push(x.abs());
    }
    let mut largest = mags[0].clone();
    for m in &mags[1..] {
        if ctx.cmp(m, &largest)? == core::cmp::Ordering::Greater {
            largest = m.clone();
        }
    }
    if ctx.cmp(&largest, &BigNat::zero())? == core::cmp::Ordering::Equal {
        return Ok(prep.constant_term.clone());
    }

    let bx = ctx.bitlen(&largest)?.to_u64().expect("bit length fits u64");
    let stride_log2 = bx.max(prep.y_log2).max(64 - big_d.leading_zeros() as u64);
    let base = ctx.shl(&one, stride_log2)?;

    let zp = ctx.pow_sq(&base, big_d + 2)?; // Z'
    let z = ctx.mul_pow2(&zp, prep.y_log2)?; // Z

    // tower[v] = Z^(d^v), each level one d-th power by squaring.
    let mut tower = Vec::with_capacity(n + 1);
    tower.push(z.clone());
    for v in 1..=n {
        let next = ctx.pow_sq(&tower[v - 1], d)?;
        tower.push(next);
    }
    let z_big = tower[n].clone(); // Z^(d^n)

    let zp_big = ctx.div(&z_big, &prep.y_pow_big)?; // Z'^(d^n)
    let zp_m1 = ctx.sub(&zp, &one)?;
    let spread_series = ctx.div(&zp_big, &zp_m1)?; // sum_{i < d^n} Z'^i
    let z_m1 = ctx.sub(&z, &one)?;
    let window_series = ctx.div(&z_big, &z_m1)?;
    let mask = ctx.mul(&window_series, &prep.y_minus_1)?;

    let split = &prep.variants[variant];
    let mut packed_z = [BigNat::zero(), BigNat::zero()];
    for (slot, packed) in packed_z.iter_mut().zip([&split.pos, &split.neg]) {
        let copies = ctx.mul(&spread_series, packed)?;
        *slot = ctx.and(&copies, &mask)?;
    }

    let mut product: Option<BigNat> = None;
    for (v, mag) in mags.iter().enumerate() {
        let den = ctx.sub(&tower[v], mag)?;
        let factor = ctx.div(&tower[v + 1], &den)?;
        product = Some(match product {
            None => factor,
            Some(acc) => ctx.mul(&acc, &factor)?,
        });
    }
    let product = product.expect("at least one variable");

    let extract_pow = ctx.div(&z_big, &z)?; // Z^(d^n - 1)
    let mut halves = [BigNat::zero(), BigNat::zero()];
    for (slot, packed) in halves.iter_mut().zip(&packed_z) {
        let conv = ctx.mul(&product, packed)?;
        let shifted = ctx.div(&conv, &extract_pow)?;
        *slot = ctx.rem(&shifted, &z)?;
    }
    let [vp, vn] = halves;
    ctx.sub(&BigInt::from(vp), &BigInt::from(vn))
}
