//! Polynomial evaluation below the Horner bound.
//!
//! [`eval_horner`] is the baseline and the oracle everything else is tested
//! against. [`eval_blocked`] beats it for small coefficient ranges by
//! tabulating all short blocks. [`prepare`](prepared::prepare) /
//! [`eval_prepared`](prepared::eval_prepared) evaluate a fixed polynomial on
//! a bounded domain in a constant number of operations;
//! [`eval_adaptive`](adaptive::eval_adaptive) removes the domain bound with
//! bitwise conjunction; the multivariate forms generalize both. Finally
//! [`pow_tower`] computes `a^(2^k)` in `O(sqrt k)` operations given one
//! sufficiently large witness integer.

mod adaptive;
mod multi;
mod prepared;

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::opcore::{BigInt, BigNat, CountedContext};

pub use adaptive::{eval_adaptive, eval_adaptive_multi, AdaptiveMultiPoly, AdaptivePoly};
pub use multi::{eval_multi, prepare_multi, MultiPoly, PreparedMultiPoly};
pub use prepared::{
    decide_finite_language, eval_prepared, prepare, prepare_language, prepare_sequence,
    prepare_with_radix, PreparedPoly,
};

/// A dense univariate integer polynomial; `coeffs[i]` is the coefficient of
/// `x^i` and the trailing coefficient is nonzero unless the polynomial is
/// zero. The 1-norm (sum of absolute coefficient values) is kept alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigInt>,
    norm1: BigNat,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(BigInt::is_zero) {
            coeffs.pop();
        }
        let norm1 = coeffs
            .iter()
            .fold(BigNat::zero(), |acc, c| &acc + &c.abs());
        Poly { coeffs, norm1 }
    }

    pub fn zero() -> Self {
        Poly::new(Vec::new())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::new(alloc::vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u64 {
        self.coeffs.len().saturating_sub(1) as u64
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// `|p_0| + ... + |p_d|`.
    pub fn norm1(&self) -> &BigNat {
        &self.norm1
    }

    /// `p(-x)`: flips the sign of odd coefficients.
    pub fn negated_argument(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { c.neg() } else { c.clone() })
            .collect();
        Poly::new(coeffs)
    }

    /// Split into nonnegative parts `(plus, minus)` with `p = plus - minus`.
    pub fn split_signs(&self) -> (Vec<BigNat>, Vec<BigNat>) {
        let mut plus = Vec::with_capacity(self.coeffs.len());
        let mut minus = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if c.is_negative() {
                plus.push(BigNat::zero());
                minus.push(c.abs());
            } else {
                plus.push(c.abs());
                minus.push(BigNat::zero());
            }
        }
        (plus, minus)
    }

    /// Uncounted Horner evaluation (preparation and oracle paths).
    pub fn eval_raw(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }
}

/// Horner's rule: exactly `deg(p)` multiplications and additions.
pub fn eval_horner(ctx: &mut CountedContext, p: &Poly, x: &BigInt) -> Result<BigInt> {
    let mut iter = p.coeffs.iter().rev();
    let Some(top) = iter.next() else {
        return Ok(BigInt::zero());
    };
    let mut acc = top.clone();
    for c in iter {
        acc = ctx.mul(&acc, x)?;
        acc = ctx.add(&acc, c)?;
    }
    Ok(acc)
}

const BLOCK_TABLE_BUDGET: u64 = 1 << 24;

/// Largest `e` with `base^e <= v`; 0 when `v < base`.
fn ilog(base: u64, v: u64) -> u64 {
    debug_assert!(base >= 2);
    let mut e = 0;
    let mut acc = base;
    while acc <= v {
        e += 1;
        match acc.checked_mul(base) {
            Some(next) => acc = next,
            None => break,
        }
    }
    e
}

/// Default block size: an integer stand-in for
/// `log_P(d) - log_P(log_P(d))`, computed as `ilog_P(d / ilog_P(d))` and
/// clamped so the block table stays within budget.
fn default_block_size(coeff_bound: u64, coeff_count: u64) -> u32 {
    let t = ilog(coeff_bound, coeff_count).max(1);
    let mut k = ilog(coeff_bound, coeff_count / t).max(1);
    while k > 1 && checked_table_size(coeff_bound, k as u32).is_none() {
        k -= 1;
    }
    k as u32
}

fn checked_table_size(coeff_bound: u64, block: u32) -> Option<u64> {
    let mut size = 1u64;
    for _ in 0..block {
        size = size.checked_mul(coeff_bound)?;
        if size > BLOCK_TABLE_BUDGET {
            return None;
        }
    }
    Some(size)
}

/// Blocked evaluation for polynomials with coefficients in `[0, coeff_bound)`.
///
/// Splits `p` into blocks of `block` coefficients, tabulates the values at
/// `x` of *all* `coeff_bound^block` possible blocks by dynamic programming
/// (one multiplication and one addition per table entry), then runs Horner
/// over `y = x^block`. For small coefficient bounds this uses
/// `O(d / log_P d)` operations instead of Horner's `O(d)`.
pub fn eval_blocked(
    ctx: &mut CountedContext,
    p: &Poly,
    x: &BigNat,
    coeff_bound: u64,
    block: Option<u32>,
) -> Result<BigNat> {
    assert!(coeff_bound >= 2, "coefficient bound must be at least 2");
    let bound_int = BigInt::from(coeff_bound);
    for c in p.coeffs() {
        if c.is_negative() || *c >= bound_int {
            return Err(Error::CoefficientOutOfRange {
                value: c.to_string(),
                bound: coeff_bound.to_string(),
            });
        }
    }
    if p.is_zero() {
        return Ok(BigNat::zero());
    }

    let coeff_count = p.coeffs.len() as u64;
    let k = match block {
        Some(k) => {
            assert!(k >= 1, "block size must be at least 1");
            k
        }
        None => default_block_size(coeff_bound, coeff_count),
    };
    let table_size = checked_table_size(coeff_bound, k).ok_or(Error::ScaleExceeded {
        what: "block table entries",
        limit: BLOCK_TABLE_BUDGET,
    })? as usize;

    // table[m] is the degree-<k polynomial indexed by the base-P digits of
    // m, evaluated at x. Entry m comes from entry m div P in one mul + add.
    let mut table: Vec<BigNat> = Vec::with_capacity(table_size);
    table.push(BigNat::zero());
    for m in 1..table_size {
        let low = BigNat::from(m as u64 % coeff_bound);
        let t = ctx.mul(&table[m / coeff_bound as usize], x)?;
        table.push(ctx.add(&t, &low)?);
    }

    // Block indices, least significant block first.
    let block_indices: Vec<usize> = p
        .coeffs
        .chunks(k as usize)
        .map(|chunk| {
            chunk.iter().rev().fold(0usize, |acc, c| {
                acc * coeff_bound as usize
                    + c.abs().to_u64().expect("coefficient fits u64") as usize
            })
        })
        .collect();

    let y = ctx.pow_sq(x, k as u64)?;
    let mut blocks = block_indices.iter().rev();
    let first = *blocks.next().expect("nonzero polynomial has blocks");
    // Table reads are value copies; tallied under cmp.
    ctx.cmp(&table[first], &table[first])?;
    let mut acc = table[first].clone();
    for &m in blocks {
        ctx.cmp(&table[m], &table[m])?;
        acc = ctx.mul(&acc, &y)?;
        acc = ctx.add(&acc, &table[m])?;
    }
    Ok(acc)
}

pub(crate) fn isqrt_floor(v: u64) -> u64 {
    if v < 2 {
        return v;
    }
    let mut s = 1u64 << (v.ilog2() / 2 + 1);
    // Newton steps pin the integer square root exactly.
    loop {
        let next = (s + v / s) / 2;
        if next >= s {
            break;
        }
        s = next;
    }
    s
}

pub(crate) fn isqrt_ceil(v: u64) -> u64 {
    let s = isqrt_floor(v);
    if s * s == v {
        s
    } else {
        s + 1
    }
}

/// `a^(2^k)` in `O(sqrt k)` counted operations, given a witness integer
/// `b >= 2 * a^(2^k)` (caller-asserted; each remainder step is checked for
/// consistency and rejected with [`Error::WitnessTooSmall`]).
///
/// With `l = ceil(sqrt k)`, computes `b^(2^l)` once by `l` squarings (the
/// setup), then climbs `a -> a^(2^l) -> a^(2^2l) -> ...` with one remainder
/// per step: `b^(2^l) rem (b - a^(2^lj))` equals `a^(2^l(j+1))` whenever the
/// modulus exceeds it. A leftover exponent below `l` is closed by plain
/// squaring, for `floor(k/l) + l` non-setup operations at most.
pub fn pow_tower(ctx: &mut CountedContext, a: &BigNat, k: u64, b: &BigNat) -> Result<BigNat> {
    if k == 0 || *a <= BigNat::one() {
        return Ok(a.clone());
    }
    let l = isqrt_ceil(k);
    let big = ctx.pow_sq(b, 1u64 << l)?;
    let steps = k / l;
    let mut cur = a.clone();
    for step in 1..=steps {
        if b <= &cur {
            return Err(Error::WitnessTooSmall {
                step: step as usize,
            });
        }
        let m = ctx.sub(b, &cur)?;
        let next = ctx.rem(&big, &m)?;
        // Honest towers grow strictly; a wrapped remainder almost surely
        // does not.
        if next <= cur {
            return Err(Error::WitnessTooSmall {
                step: step as usize,
            });
        }
        cur = next;
    }
    for _ in 0..k - l * steps {
        cur = ctx.mul(&cur, &cur)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{RandomSource, RandomSourceExt, SplitMix64};

    /// Term-by-term power sum, independent of Horner.
    fn power_sum_oracle(p: &Poly, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            acc = &acc + &(c * &x.pow(i as u64));
        }
        acc
    }

    fn random_poly(rng: &mut SplitMix64, len: usize, coeff_bits: u64, signed: bool) -> Poly {
        let coeffs = (0..len)
            .map(|_| {
                let bits = rng.below_u64(coeff_bits + 1);
                let c = BigInt::from(rng.nat_with_bits(bits));
                if signed && rng.next_u64() & 1 == 0 {
                    c.neg()
                } else {
                    c
                }
            })
            .collect();
        Poly::new(coeffs)
    }

    #[test]
    fn horner_examples() {
        let mut ctx = CountedContext::new();
        let p = Poly::from_i64(&[7]);
        assert_eq!(
            eval_horner(&mut ctx, &p, &BigInt::from(123)).unwrap(),
            BigInt::from(7)
        );
        assert_eq!(ctx.tally_snapshot().total(), 0);

        // x^2 + 2x + 3 at 2.
        let p = Poly::from_i64(&[3, 2, 1]);
        assert_eq!(
            eval_horner(&mut ctx, &p, &BigInt::from(2)).unwrap(),
            BigInt::from(11)
        );
        let t = ctx.tally_snapshot();
        assert_eq!((t.mul, t.add), (2, 2));
    }

    #[test]
    fn horner_matches_power_sum_oracle() {
        let mut ctx = CountedContext::new();
        let mut rng = SplitMix64::new(0x1107);
        for _ in 0..2_000 {
            let len = rng.below_u64(24) as usize;
            let p = random_poly(&mut rng, len, 48, true);
            let xbits = rng.below_u64(32);
            let x = BigInt::from(rng.nat_with_bits(xbits));
            let x = if rng.next_u64() & 1 == 0 { x.neg() } else { x };
            assert_eq!(
                eval_horner(&mut ctx, &p, &x).unwrap(),
                power_sum_oracle(&p, &x)
            );
        }
    }

    #[test]
    fn horner_op_count_is_exactly_degree() {
        let mut ctx = CountedContext::new();
        let p = Poly::from_i64(&[1, 0, 2, 0, 0, 9]);
        eval_horner(&mut ctx, &p, &BigInt::from(3)).unwrap();
        let t = ctx.tally_snapshot();
        assert_eq!((t.mul, t.add), (5, 5));
    }

    #[test]
    fn blocked_all_ones_poly() {
        // 1 + x + ... + x^15 at 3 equals (3^16 - 1) / 2.
        let mut ctx = CountedContext::new();
        let p = Poly::new(alloc::vec![BigInt::one(); 16]);
        let got = eval_blocked(&mut ctx, &p, &BigNat::from(3u32), 2, None).unwrap();
        let expect = BigNat::from((3u64.pow(16) - 1) / 2);
        assert_eq!(got, expect);
    }

    #[test]
    fn blocked_degenerate_block_size_matches_horner() {
        let mut ctx = CountedContext::new();
        let p = Poly::from_i64(&[1, 0, 1, 1, 0, 1, 1]);
        let x = BigNat::from(5u32);
        let got = eval_blocked(&mut ctx, &p, &x, 2, Some(1)).unwrap();
        let mut oracle_ctx = CountedContext::new();
        let expect = eval_horner(&mut oracle_ctx, &p, &BigInt::from(5)).unwrap();
        assert_eq!(BigInt::from(got), expect);
    }

    #[test]
    fn blocked_matches_horner_and_beats_it_on_op_count() {
        let mut rng = SplitMix64::new(0xb10c);
        let len = 1usize << 12;
        let coeffs: Vec<BigInt> = (0..len).map(|_| BigInt::from(rng.below_u64(2))).collect();
        let p = Poly::new(coeffs);
        let x = BigNat::from(2u32);

        let mut ctx = CountedContext::new();
        let got = eval_blocked(&mut ctx, &p, &x, 2, None).unwrap();
        let t = ctx.tally_snapshot();

        let mut hctx = CountedContext::new();
        let expect = eval_horner(&mut hctx, &p, &BigInt::from(2)).unwrap();
        assert_eq!(BigInt::from(got), expect);

        assert!(
            t.add + t.mul <= 3 * len as u64 / 4,
            "add+mul = {}",
            t.add + t.mul
        );
    }

    #[test]
    fn blocked_rejects_out_of_range_coefficients() {
        let mut ctx = CountedContext::new();
        let p = Poly::from_i64(&[1, 2]);
        assert!(matches!(
            eval_blocked(&mut ctx, &p, &BigNat::from(3u32), 2, None),
            Err(Error::CoefficientOutOfRange { .. })
        ));
        let p = Poly::from_i64(&[1, -1]);
        assert!(matches!(
            eval_blocked(&mut ctx, &p, &BigNat::from(3u32), 2, None),
            Err(Error::CoefficientOutOfRange { .. })
        ));
    }

    #[test]
    fn pow_tower_examples() {
        let mut ctx = CountedContext::new();

        let b = &BigNat::from(2u32) * &BigNat::from(3u32).pow(16);
        let got = pow_tower(&mut ctx, &BigNat::from(3u32), 4, &b).unwrap();
        assert_eq!(got, BigNat::from(43_046_721u64));

        let got = pow_tower(&mut ctx, &BigNat::from(2u32), 1, &BigNat::from(16u32)).unwrap();
        assert_eq!(got, BigNat::from(4u32));

        // 2^(2^9) with the witness 2^513; only remainders past the setup.
        let mut ctx = CountedContext::new();
        let got = pow_tower(&mut ctx, &BigNat::from(2u32), 9, &BigNat::pow2(513)).unwrap();
        assert_eq!(got, BigNat::pow2(512));
        let t = ctx.tally_snapshot();
        let setup = 3;
        assert!(t.mul + t.rem - setup <= 3 * 3 + 5);
    }

    #[test]
    fn pow_tower_matches_repeated_squaring() {
        for a in 2u64..=5 {
            for k in 1u64..=10 {
                let a_nat = BigNat::from(a);
                let expect = {
                    let mut v = a_nat.clone();
                    for _ in 0..k {
                        v = &v * &v;
                    }
                    v
                };
                let b = &BigNat::from(2u32) * &expect;
                let mut ctx = CountedContext::new();
                let got = pow_tower(&mut ctx, &a_nat, k, &b).unwrap();
                assert_eq!(got, expect, "a={a} k={k}");
            }
        }
    }

    #[test]
    fn pow_tower_shortcuts() {
        let mut ctx = CountedContext::new();
        assert_eq!(
            pow_tower(&mut ctx, &BigNat::from(7u32), 0, &BigNat::zero()).unwrap(),
            BigNat::from(7u32)
        );
        assert_eq!(
            pow_tower(&mut ctx, &BigNat::one(), 12, &BigNat::zero()).unwrap(),
            BigNat::one()
        );
        assert_eq!(
            pow_tower(&mut ctx, &BigNat::zero(), 12, &BigNat::zero()).unwrap(),
            BigNat::zero()
        );
        assert_eq!(ctx.tally_snapshot().total(), 0);
    }

    #[test]
    fn pow_tower_rejects_small_witness() {
        let mut ctx = CountedContext::new();
        let err = pow_tower(&mut ctx, &BigNat::from(2u32), 4, &BigNat::from(3u32));
        assert!(matches!(err, Err(Error::WitnessTooSmall { .. })));
    }

    #[test]
    fn isqrt_helpers() {
        for v in 0..2000u64 {
            let s = isqrt_floor(v);
            assert!(s * s <= v && (s + 1) * (s + 1) > v);
            let c = isqrt_ceil(v);
            assert!(c * c >= v && (c == 0 || (c - 1) * (c - 1) < v));
        }
    }
}
