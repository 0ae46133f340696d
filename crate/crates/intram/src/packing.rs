//! Radix-Z digit packing and the mask tricks built on it.
//!
//! The workhorse identity: for `Z > (x^d + 1) * x`,
//!
//! ```text
//! Z^(d+1) div (Z - x)  =  Z^d + Z^(d-1) x + ... + Z x^(d-1) + x^d
//! ```
//!
//! so a full geometric series costs one division. Packing a vector of
//! bounded values as digits of one big integer then lets a single machine
//! word (in the model's sense) carry a whole vector: componentwise
//! comparisons become an add/subtract/AND dance on packed words, and 3SUM
//! drops to a linear number of operations.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::opcore::{BigNat, CountedContext};

/// A vector of values below `radix`, stored as the digits of one integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedVec {
    radix: BigNat,
    len: usize,
    value: BigNat,
}

impl PackedVec {
    pub fn radix(&self) -> &BigNat {
        &self.radix
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn value(&self) -> &BigNat {
        &self.value
    }

    /// Assemble from parts; `value`'s digits must already be below `radix`.
    pub fn from_parts(radix: BigNat, len: usize, value: BigNat) -> Self {
        PackedVec { radix, len, value }
    }
}

/// `sum_{m=0}^{d} Z^(d-m) x^m`, computed as `Z^(d+1) div (Z - x)`.
///
/// Requires `Z > (x^d + 1) * x`; the guard is checked with uncounted host
/// arithmetic and rejected with [`Error::RadixTooSmall`].
pub fn geom_series(ctx: &mut CountedContext, z: &BigNat, x: &BigNat, d: u64) -> Result<BigNat> {
    let required = &(&x.pow(d) + &BigNat::one()) * x;
    if *z <= required {
        return Err(Error::RadixTooSmall {
            required: required.to_string(),
            got: z.to_string(),
        });
    }
    let z_pow = ctx.pow_sq(z, d + 1)?;
    let denom = ctx.sub(z, x)?;
    ctx.div(&z_pow, &denom)
}

/// The replicating constant `1 + Z + ... + Z^(count-1)`, i.e. every slot 1.
///
/// Computed inside the op set as `(Z^count - 1) div (Z - 1)`; `Z` must be a
/// power of two here (exponent`stride` is its log2).
pub fn ones_vector(ctx: &mut CountedContext, stride: u64, count: u64) -> Result<BigNat> {
    let one = BigNat::one();
    let numer_pow = ctx.shl(&one, stride * count)?;
    let numer = ctx.sub(&numer_pow, &one)?;
    let denom_pow = ctx.shl(&one, stride)?;
    let denom = ctx.sub(&denom_pow, &one)?;
    ctx.div(&numer, &denom)
}

/// Pack `digits[i]` into slot `i`: `value = sum digits[i] * Z^i`.
pub fn pack(ctx: &mut CountedContext, digits: &[BigNat], radix: &BigNat) -> Result<PackedVec> {
    for d in digits {
        if d >= radix {
            return Err(Error::DigitOverflow {
                digit: d.to_string(),
                radix: radix.to_string(),
            });
        }
    }
    let mut value = BigNat::zero();
    let mut iter = digits.iter().rev();
    if let Some(top) = iter.next() {
        value = top.clone();
        for d in iter {
            value = ctx.mul(&value, radix)?;
            value = ctx.add(&value, d)?;
        }
    }
    Ok(PackedVec {
        radix: radix.clone(),
        len: digits.len(),
        value,
    })
}

/// Decode all slots; inverse of [`pack`].
pub fn unpack(ctx: &mut CountedContext, v: &PackedVec) -> Result<Vec<BigNat>> {
    let mut out = Vec::with_capacity(v.len);
    if v.len == 0 {
        if !v.value.is_zero() {
            return Err(Error::DigitOverflow {
                digit: v.value.to_string(),
                radix: v.radix.to_string(),
            });
        }
        return Ok(out);
    }
    let mut rest = v.value.clone();
    for _ in 0..v.len - 1 {
        let (q, r) = ctx.div_rem(&rest, &v.radix)?;
        out.push(r);
        rest = q;
    }
    if rest >= v.radix {
        return Err(Error::DigitOverflow {
            digit: rest.to_string(),
            radix: v.radix.to_string(),
        });
    }
    out.push(rest);
    Ok(out)
}

/// Slot width that leaves the headroom the comparison masks need.
pub fn min_slot_width(max_value: &BigNat) -> u64 {
    max_value.bit_len() + 2
}

fn check_slots(value: &BigNat, width: u64, count: usize, what: &BigNat) -> Result<()> {
    // Slots must stay below 2^(width-1) so the borrow bit is meaningful.
    let limit = BigNat::pow2(width - 1);
    let mut rest = value.clone();
    let slot_radix = BigNat::pow2(width);
    for _ in 0..count {
        let (q, r) = rest.div_rem(&slot_radix);
        if r >= limit {
            return Err(Error::SlotOverflow {
                value: what.to_string(),
                width: width as u32,
                limit_log2: (width - 1) as u32,
            });
        }
        rest = q;
    }
    if !rest.is_zero() {
        return Err(Error::SlotOverflow {
            value: what.to_string(),
            width: width as u32,
            limit_log2: (width - 1) as u32,
        });
    }
    Ok(())
}

/// The borrow-bit mask constant `C = sum_i 2^(t-1) * 2^(t*i)`.
fn borrow_mask(ctx: &mut CountedContext, width: u64, count: u64) -> Result<BigNat> {
    let ones = ones_vector(ctx, width, count)?;
    ctx.mul_pow2(&ones, width - 1)
}

fn ge_mask_with(
    ctx: &mut CountedContext,
    a: &BigNat,
    b: &BigNat,
    c: &BigNat,
) -> Result<BigNat> {
    // (A + C - B) & C: slot i keeps its top bit iff a_i >= b_i.
    let sum = ctx.add(a, c)?;
    let diff = ctx.sub(&sum, b)?;
    ctx.and(&diff, c)
}

/// Packed componentwise `>=`: bit `t-1 + t*i` of the result is set iff
/// `slot_i(a) >= slot_i(b)`. The result equals the full mask `C` iff every
/// slot of `a` dominates the corresponding slot of `b`.
///
/// Both inputs must encode `count` slots of `width` bits, every slot value
/// below `2^(width-1)`.
pub fn ge_mask(
    ctx: &mut CountedContext,
    a: &BigNat,
    b: &BigNat,
    width: u64,
    count: usize,
) -> Result<BigNat> {
    check_slots(a, width, count, a)?;
    check_slots(b, width, count, b)?;
    let c = borrow_mask(ctx, width, count as u64)?;
    ge_mask_with(ctx, a, b, &c)
}

/// Constant-time test for `exists i: slot_i(a) == slot_i(b)`.
pub fn exists_equal(
    ctx: &mut CountedContext,
    a: &BigNat,
    b: &BigNat,
    width: u64,
    count: usize,
) -> Result<bool> {
    check_slots(a, width, count, a)?;
    check_slots(b, width, count, b)?;
    let c = borrow_mask(ctx, width, count as u64)?;
    let ge = ge_mask_with(ctx, a, b, &c)?;
    let le = ge_mask_with(ctx, b, a, &c)?;
    let both = ctx.and(&ge, &le)?;
    Ok(ctx.cmp(&both, &BigNat::zero())? != core::cmp::Ordering::Equal)
}

/// All `n^2` pairwise sums in one packed vector: slot `i + n*j` holds
/// `x[i] + y[j]`. Uses a linear number of operations.
pub fn all_pairwise_sums(
    ctx: &mut CountedContext,
    x: &[BigNat],
    y: &[BigNat],
    width: u64,
) -> Result<PackedVec> {
    assert_eq!(x.len(), y.len(), "input sequences must have equal length");
    let n = x.len() as u64;
    if n == 0 {
        return Ok(PackedVec {
            radix: BigNat::pow2(width),
            len: 0,
            value: BigNat::zero(),
        });
    }
    let limit = BigNat::pow2(width - 1);
    let max_x = x.iter().max().unwrap();
    let max_y = y.iter().max().unwrap();
    if max_x + max_y >= limit {
        return Err(Error::SlotOverflow {
            value: (max_x + max_y).to_string(),
            width: width as u32,
            limit_log2: (width - 1) as u32,
        });
    }

    let slot = BigNat::pow2(width);
    let wide_slot = BigNat::pow2(width * n);
    // x packed at stride t, replicated at stride t*n; y the other way round.
    let packed_x = pack(ctx, x, &slot)?;
    let packed_y = pack(ctx, y, &wide_slot)?;
    let rep_wide = ones_vector(ctx, width * n, n)?;
    let rep_narrow = ones_vector(ctx, width, n)?;
    let from_x = ctx.mul(packed_x.value(), &rep_wide)?;
    let from_y = ctx.mul(packed_y.value(), &rep_narrow)?;
    let value = ctx.add(&from_x, &from_y)?;
    Ok(PackedVec {
        radix: slot,
        len: (n * n) as usize,
        value,
    })
}

/// Decide `exists i,j,k: x[i] + y[j] = z[k]` in a linear number of model
/// operations: pack all pairwise sums once, then broadcast each `z[k]`
/// across the slots with one multiplication and compare packed.
pub fn threesum_packed(
    ctx: &mut CountedContext,
    x: &[BigNat],
    y: &[BigNat],
    z: &[BigNat],
    width: u64,
) -> Result<bool> {
    assert_eq!(x.len(), y.len(), "input sequences must have equal length");
    assert_eq!(x.len(), z.len(), "input sequences must have equal length");
    if x.is_empty() {
        return Ok(false);
    }
    let limit = BigNat::pow2(width - 1);
    for zk in z {
        if zk >= &limit {
            return Err(Error::SlotOverflow {
                value: zk.to_string(),
                width: width as u32,
                limit_log2: (width - 1) as u32,
            });
        }
    }

    let sums = all_pairwise_sums(ctx, x, y, width)?;
    let slot_count = sums.len() as u64;
    let rep = ones_vector(ctx, width, slot_count)?;
    let c = ctx.mul_pow2(&rep, width - 1)?;
    let a = sums.value();

    let mut found = false;
    for zk in z {
        let b = ctx.mul(zk, &rep)?;
        let ge = ge_mask_with(ctx, a, &b, &c)?;
        let le = ge_mask_with(ctx, &b, a, &c)?;
        let both = ctx.and(&ge, &le)?;
        if ctx.cmp(&both, &BigNat::zero())? != core::cmp::Ordering::Equal {
            found = true;
        }
    }
    Ok(found)
}
