//! Values plus the instrumented evaluation context.
//!
//! The machine model charges one unit per integer primitive regardless of
//! operand size. [`CountedContext`] realizes that model: every primitive a
//! context performs bumps one counter in its [`OpTally`], and a context can
//! be restricted to a subset of primitives ([`OpSet`]) so that an algorithm
//! claimed to work "over {+, -, *, div}" demonstrably never leaves that set.
//!
//! Conventions:
//!
//! * `div_rem` charges one `div` and one `rem`; the single-result wrappers
//!   [`CountedContext::div`] and [`CountedContext::rem`] charge exactly one
//!   primitive each, keeping measured counts comparable to per-step claims.
//! * Comparisons are tallied under `cmp` but reported separately: the
//!   [`OpTally::headline`] sum excludes them.
//! * Division and remainder are defined for nonnegative operands only;
//!   signed callers split by sign explicitly.
//! * Radix selection and precondition guards run on plain (uncounted) host
//!   arithmetic; tallies cover an algorithm's data path, not its input
//!   validation.
//! * Multiplication or division by a power of two may be implemented as a
//!   shift internally, but is charged as the `mul`/`div`/`rem` it stands
//!   for in the algorithm.

mod gcd;
mod value;

use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

pub use value::{BigInt, BigNat, ParseValueError};

/// One primitive of the machine model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimOp {
    Add,
    Sub,
    Mul,
    Div,
    Rem,
    And,
    Gcd,
    Gcdex,
    Shift,
    Cmp,
}

impl PrimOp {
    pub const ALL: [PrimOp; 10] = [
        PrimOp::Add,
        PrimOp::Sub,
        PrimOp::Mul,
        PrimOp::Div,
        PrimOp::Rem,
        PrimOp::And,
        PrimOp::Gcd,
        PrimOp::Gcdex,
        PrimOp::Shift,
        PrimOp::Cmp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PrimOp::Add => "add",
            PrimOp::Sub => "sub",
            PrimOp::Mul => "mul",
            PrimOp::Div => "div",
            PrimOp::Rem => "rem",
            PrimOp::And => "and",
            PrimOp::Gcd => "gcd",
            PrimOp::Gcdex => "gcdex",
            PrimOp::Shift => "shift",
            PrimOp::Cmp => "cmp",
        }
    }

    fn bit(self) -> u16 {
        1 << self as u16
    }
}

impl fmt::Display for PrimOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A set of permitted primitives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OpSet(u16);

impl OpSet {
    pub const EMPTY: OpSet = OpSet(0);

    pub fn all() -> Self {
        let mut s = OpSet::EMPTY;
        for op in PrimOp::ALL {
            s = s.with(op);
        }
        s
    }

    /// `{+, -, *}` plus comparisons: the purely arithmetic fragment.
    pub fn arithmetic() -> Self {
        OpSet::EMPTY
            .with(PrimOp::Add)
            .with(PrimOp::Sub)
            .with(PrimOp::Mul)
            .with(PrimOp::Cmp)
    }

    pub fn of(ops: &[PrimOp]) -> Self {
        ops.iter().fold(OpSet::EMPTY, |s, &op| s.with(op))
    }

    #[must_use]
    pub fn with(self, op: PrimOp) -> Self {
        OpSet(self.0 | op.bit())
    }

    #[must_use]
    pub fn without(self, op: PrimOp) -> Self {
        OpSet(self.0 & !op.bit())
    }

    pub fn contains(self, op: PrimOp) -> bool {
        self.0 & op.bit() != 0
    }

    pub fn iter(self) -> impl Iterator<Item = PrimOp> {
        PrimOp::ALL.into_iter().filter(move |op| self.contains(*op))
    }
}

impl fmt::Display for OpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for op in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            f.write_str(op.name())?;
            first = false;
        }
        Ok(())
    }
}

/// Per-primitive operation counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OpTally {
    pub add: u64,
    pub sub: u64,
    pub mul: u64,
    pub div: u64,
    pub rem: u64,
    pub and: u64,
    pub gcd: u64,
    pub gcdex: u64,
    pub shift: u64,
    pub cmp: u64,
}

impl OpTally {
    pub fn new() -> Self {
        OpTally::default()
    }

    pub fn get(&self, op: PrimOp) -> u64 {
        match op {
            PrimOp::Add => self.add,
            PrimOp::Sub => self.sub,
            PrimOp::Mul => self.mul,
            PrimOp::Div => self.div,
            PrimOp::Rem => self.rem,
            PrimOp::And => self.and,
            PrimOp::Gcd => self.gcd,
            PrimOp::Gcdex => self.gcdex,
            PrimOp::Shift => self.shift,
            PrimOp::Cmp => self.cmp,
        }
    }

    fn get_mut(&mut self, op: PrimOp) -> &mut u64 {
        match op {
            PrimOp::Add => &mut self.add,
            PrimOp::Sub => &mut self.sub,
            PrimOp::Mul => &mut self.mul,
            PrimOp::Div => &mut self.div,
            PrimOp::Rem => &mut self.rem,
            PrimOp::And => &mut self.and,
            PrimOp::Gcd => &mut self.gcd,
            PrimOp::Gcdex => &mut self.gcdex,
            PrimOp::Shift => &mut self.shift,
            PrimOp::Cmp => &mut self.cmp,
        }
    }

    fn bump(&mut self, op: PrimOp) {
        *self.get_mut(op) += 1;
    }

    /// Componentwise sum.
    pub fn merge(&mut self, other: &OpTally) {
        for op in PrimOp::ALL {
            *self.get_mut(op) += other.get(op);
        }
    }

    #[must_use]
    pub fn merged(mut self, other: &OpTally) -> OpTally {
        self.merge(other);
        self
    }

    /// Counts gained since `earlier` (which must be a prefix snapshot).
    #[must_use]
    pub fn since(&self, earlier: &OpTally) -> OpTally {
        let mut out = OpTally::new();
        for op in PrimOp::ALL {
            *out.get_mut(op) = self.get(op) - earlier.get(op);
        }
        out
    }

    /// Every primitive except comparisons.
    pub fn headline(&self) -> u64 {
        self.total() - self.cmp
    }

    pub fn total(&self) -> u64 {
        PrimOp::ALL.iter().map(|&op| self.get(op)).sum()
    }

    pub fn entries(&self) -> [(PrimOp, u64); 10] {
        let mut out = [(PrimOp::Add, 0); 10];
        for (slot, op) in out.iter_mut().zip(PrimOp::ALL) {
            *slot = (op, self.get(op));
        }
        out
    }
}

/// The instrumented evaluation context: a tally plus the permitted
/// instruction set. Single-owner; parallel work uses one context per worker
/// and merges tallies afterwards.
#[derive(Debug, Clone)]
pub struct CountedContext {
    tally: OpTally,
    enabled: OpSet,
}

impl Default for CountedContext {
    fn default() -> Self {
        Self::new()
    }
}

impl CountedContext {
    /// A context with every primitive enabled.
    pub fn new() -> Self {
        CountedContext {
            tally: OpTally::new(),
            enabled: OpSet::all(),
        }
    }

    /// A context restricted to `ops`; anything else errors with
    /// [`Error::ForbiddenOp`].
    pub fn with_ops(ops: OpSet) -> Self {
        CountedContext {
            tally: OpTally::new(),
            enabled: ops,
        }
    }

    pub fn enabled_ops(&self) -> OpSet {
        self.enabled
    }

    /// A copy of the current counters.
    pub fn tally_snapshot(&self) -> OpTally {
        self.tally
    }

    pub fn reset_tally(&mut self) {
        self.tally = OpTally::new();
    }

    pub fn merge_tally(&mut self, other: &OpTally) {
        self.tally.merge(other);
    }

    fn charge(&mut self, op: PrimOp) -> Result<()> {
        if !self.enabled.contains(op) {
            return Err(Error::ForbiddenOp(op));
        }
        self.tally.bump(op);
        Ok(())
    }

    // --- ring operations, shared by BigNat and BigInt ---

    pub fn add<T: CountedValue>(&mut self, a: &T, b: &T) -> Result<T> {
        self.charge(PrimOp::Add)?;
        Ok(a.ring_add(b))
    }

    pub fn sub<T: CountedValue>(&mut self, a: &T, b: &T) -> Result<T> {
        self.charge(PrimOp::Sub)?;
        a.ring_sub(b).ok_or(Error::Underflow)
    }

    pub fn mul<T: CountedValue>(&mut self, a: &T, b: &T) -> Result<T> {
        self.charge(PrimOp::Mul)?;
        Ok(a.ring_mul(b))
    }

    pub fn cmp<T: CountedValue>(&mut self, a: &T, b: &T) -> Result<Ordering> {
        self.charge(PrimOp::Cmp)?;
        Ok(a.ring_cmp(b))
    }

    /// `a^exp` by repeated squaring; charges one `mul` per squaring or
    /// multiplication step (none for `exp <= 1`).
    pub fn pow_sq<T: CountedValue>(&mut self, a: &T, exp: u64) -> Result<T> {
        if exp == 0 {
            return Ok(T::ring_one());
        }
        let mut acc = a.clone();
        if exp == 1 {
            return Ok(acc);
        }
        let top = 63 - exp.leading_zeros() as u64;
        for i in (0..top).rev() {
            acc = self.mul(&acc, &acc)?;
            if exp >> i & 1 == 1 {
                acc = self.mul(&acc, a)?;
            }
        }
        Ok(acc)
    }

    // --- division family (nonnegative operands) ---

    /// Floor division with remainder: `a = q*b + r`, `0 <= r < b`.
    ///
    /// Charges `div` and `rem` (both results are produced).
    pub fn div_rem(&mut self, a: &BigNat, b: &BigNat) -> Result<(BigNat, BigNat)> {
        self.charge(PrimOp::Div)?;
        self.charge(PrimOp::Rem)?;
        if b.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(a.div_rem(b))
    }

    /// Quotient only; charges exactly one `div`.
    pub fn div(&mut self, a: &BigNat, b: &BigNat) -> Result<BigNat> {
        self.charge(PrimOp::Div)?;
        if b.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(a.div_rem(b).0)
    }

    /// Remainder only; charges exactly one `rem`.
    pub fn rem(&mut self, a: &BigNat, b: &BigNat) -> Result<BigNat> {
        self.charge(PrimOp::Rem)?;
        if b.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(a.div_rem(b).1)
    }

    /// Exact signed division (used for known-divisible values); one `div`.
    pub fn div_exact_int(&mut self, a: &BigInt, b: &BigInt) -> Result<BigInt> {
        self.charge(PrimOp::Div)?;
        if b.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(a.div_exact(b))
    }

    /// Floor remainder of a signed value by a positive modulus, reduced
    /// into `[0, m)`; one `rem`.
    pub fn rem_floor_int(&mut self, a: &BigInt, m: &BigNat) -> Result<BigNat> {
        self.charge(PrimOp::Rem)?;
        if m.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let (_, r) = a.div_mod_floor(&BigInt::from(m));
        Ok(r.to_nat().expect("floor remainder is nonnegative"))
    }

    /// Charge `count` occurrences of `op` at once. For kernels that run a
    /// long loop of word-sized primitives host-side (the per-iteration
    /// values are below 64 bits) without routing each value through the
    /// context.
    pub fn charge_many(&mut self, op: PrimOp, count: u64) -> Result<()> {
        if !self.enabled.contains(op) {
            return Err(Error::ForbiddenOp(op));
        }
        *self.tally.get_mut(op) += count;
        Ok(())
    }

    // --- power-of-two fast paths (charged as the op they stand for) ---

    /// `a * 2^exp`, charged as one `mul` (multiplication by a stored
    /// constant), implemented as a shift.
    pub fn mul_pow2(&mut self, a: &BigNat, exp: u64) -> Result<BigNat> {
        self.charge(PrimOp::Mul)?;
        Ok(a << exp)
    }

    /// `a div 2^exp`, charged as one `div`.
    pub fn div_pow2(&mut self, a: &BigNat, exp: u64) -> Result<BigNat> {
        self.charge(PrimOp::Div)?;
        Ok(a >> exp)
    }

    /// `a rem 2^exp`, charged as one `rem`.
    pub fn rem_pow2(&mut self, a: &BigNat, exp: u64) -> Result<BigNat> {
        self.charge(PrimOp::Rem)?;
        Ok(a.extract_bits(0, exp))
    }

    /// `(a div 2^offset) rem 2^width`: one radix-digit extraction,
    /// charged as `div` + `rem`.
    pub fn extract_digit(&mut self, a: &BigNat, offset: u64, width: u64) -> Result<BigNat> {
        self.charge(PrimOp::Div)?;
        self.charge(PrimOp::Rem)?;
        Ok(a.extract_bits(offset, width))
    }

    // --- bitwise and shift family ---

    pub fn and(&mut self, a: &BigNat, b: &BigNat) -> Result<BigNat> {
        self.charge(PrimOp::And)?;
        Ok(a & b)
    }

    pub fn shl(&mut self, a: &BigNat, bits: u64) -> Result<BigNat> {
        self.charge(PrimOp::Shift)?;
        Ok(a << bits)
    }

    pub fn shr(&mut self, a: &BigNat, bits: u64) -> Result<BigNat> {
        self.charge(PrimOp::Shift)?;
        Ok(a >> bits)
    }

    /// Binary length: 0 for 0, otherwise `floor(log2 a) + 1`. One `shift`.
    pub fn bitlen(&mut self, a: &BigNat) -> Result<BigNat> {
        self.charge(PrimOp::Shift)?;
        Ok(BigNat::from(a.bit_len()))
    }

    // --- gcd family ---

    pub fn gcd(&mut self, a: &BigNat, b: &BigNat) -> Result<BigNat> {
        self.charge(PrimOp::Gcd)?;
        Ok(a.gcd(b))
    }

    /// Extended gcd: `(g, s, t)` with `g = gcd(a, b) = s*a + t*b`.
    pub fn gcdex(&mut self, a: &BigNat, b: &BigNat) -> Result<(BigNat, BigInt, BigInt)> {
        self.charge(PrimOp::Gcdex)?;
        if a.is_zero() && b.is_zero() {
            return Err(Error::BothZero);
        }
        Ok(gcd::gcdex_nat(a, b))
    }
}

/// Values the counted ring operations work on. Sealed: exactly [`BigNat`]
/// and [`BigInt`].
pub trait CountedValue: Clone + sealed::Sealed {
    fn ring_one() -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    /// `None` signals underflow (naturals only).
    fn ring_sub(&self, other: &Self) -> Option<Self>;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_cmp(&self, other: &Self) -> Ordering;
}

mod sealed {
    pub trait Sealed {}
    impl Sealed for super::BigNat {}
    impl Sealed for super::BigInt {}
}

impl CountedValue for BigNat {
    fn ring_one() -> Self {
        BigNat::one()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_cmp(&self, other: &Self) -> Ordering {
        value::cmp_nat(self, other)
    }
}

impl CountedValue for BigInt {
    fn ring_one() -> Self {
        BigInt::one()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_cmp(&self, other: &Self) -> Ordering {
        value::cmp_int(self, other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{RandomSourceExt, SplitMix64};

    /// Schoolbook binary long division, independent of the library path.
    fn long_division_oracle(a: &BigNat, b: &BigNat) -> (BigNat, BigNat) {
        assert!(!b.is_zero());
        let mut q = BigNat::zero();
        let mut r = BigNat::zero();
        let bits = a.bit_len();
        for i in (0..bits).rev() {
            r = &r << 1;
            if a.bit(i) {
                r = &r + &BigNat::one();
            }
            q = &q << 1;
            if let Some(next) = r.checked_sub(b) {
                r = next;
                q = &q + &BigNat::one();
            }
        }
        (q, r)
    }

    #[test]
    fn div_rem_examples() {
        let mut ctx = CountedContext::new();
        let cases: [(u64, u64, u64, u64); 3] =
            [(7, 3, 2, 1), (2_097_152, 126, 16_644, 8), (5, 5, 1, 0)];
        for (a, b, q, r) in cases {
            let (a, b) = (BigNat::from(a), BigNat::from(b));
            let oracle = long_division_oracle(&a, &b);
            assert_eq!(oracle, (BigNat::from(q), BigNat::from(r)));
            assert_eq!(ctx.div_rem(&a, &b).unwrap(), oracle);
        }
        assert_eq!(
            ctx.div_rem(&BigNat::one(), &BigNat::zero()),
            Err(Error::ZeroDivisor)
        );
    }

    #[test]
    fn div_rem_identity_random() {
        let mut ctx = CountedContext::new();
        let mut rng = SplitMix64::new(0xfeed);
        for i in 0..10_000u64 {
            let abits = 1 + rng.below_u64(4096);
            let bbits = 1 + rng.below_u64(4096);
            let a = rng.nat_with_bits(abits);
            let b = rng.nat_with_bits(bbits);
            let (q, r) = ctx.div_rem(&a, &b).unwrap();
            assert_eq!(&(&q * &b) + &r, a, "case {i}");
            assert!(r < b);
        }
    }

    #[test]
    fn gcdex_examples_and_identity() {
        let mut ctx = CountedContext::new();
        let (g, s, t) = ctx
            .gcdex(&BigNat::from(12u32), &BigNat::from(8u32))
            .unwrap();
        assert_eq!(g, BigNat::from(4u32));
        assert_eq!(
            &(&s * &BigInt::from(12)) + &(&t * &BigInt::from(8)),
            BigInt::from(4)
        );

        let (g, s, t) = ctx.gcdex(&BigNat::from(5u32), &BigNat::zero()).unwrap();
        assert_eq!(
            (g, s, t),
            (BigNat::from(5u32), BigInt::one(), BigInt::zero())
        );

        let (g, s, t) = ctx.gcdex(&BigNat::one(), &BigNat::one()).unwrap();
        assert_eq!(g, BigNat::one());
        assert_eq!(&s + &t, BigInt::one());

        assert_eq!(
            ctx.gcdex(&BigNat::zero(), &BigNat::zero()),
            Err(Error::BothZero)
        );
    }

    #[test]
    fn gcdex_bezout_random() {
        let mut ctx = CountedContext::new();
        let mut rng = SplitMix64::new(0xabcd);
        for _ in 0..10_000u64 {
            let abits = 1 + rng.below_u64(256);
            let bbits = 1 + rng.below_u64(256);
            let a = rng.nat_with_bits(abits);
            let b = rng.nat_with_bits(bbits);
            let (g, s, t) = ctx.gcdex(&a, &b).unwrap();
            let lhs = &(&s * &BigInt::from(&a)) + &(&t * &BigInt::from(&b));
            assert_eq!(lhs, BigInt::from(&g));
        }
    }

    #[test]
    fn bitlen_examples() {
        let mut ctx = CountedContext::new();
        assert_eq!(ctx.bitlen(&BigNat::zero()).unwrap(), BigNat::zero());
        assert_eq!(ctx.bitlen(&BigNat::one()).unwrap(), BigNat::one());
        assert_eq!(ctx.bitlen(&BigNat::pow2(19)).unwrap(), BigNat::from(20u32));
        assert_eq!(ctx.tally_snapshot().shift, 3);
    }

    #[test]
    fn tally_snapshot_counts() {
        let ctx = CountedContext::new();
        assert_eq!(ctx.tally_snapshot(), OpTally::new());

        let mut ctx = CountedContext::new();
        ctx.mul(&BigNat::from(3u32), &BigNat::from(4u32)).unwrap();
        let t = ctx.tally_snapshot();
        assert_eq!(t.mul, 1);
        assert_eq!(t.total(), 1);
    }

    #[test]
    fn tally_merge_is_associative_and_commutative() {
        let mut rng = SplitMix64::new(3);
        let mut sample = || {
            let mut t = OpTally::new();
            for op in PrimOp::ALL {
                *t.get_mut(op) = rng.below_u64(1000);
            }
            t
        };
        for _ in 0..100 {
            let (a, b, c) = (sample(), sample(), sample());
            assert_eq!(a.merged(&b), b.merged(&a));
            assert_eq!(a.merged(&b).merged(&c), a.merged(&b.merged(&c)));
        }
    }

    #[test]
    fn restricted_context_rejects_each_disabled_primitive() {
        let nat2 = BigNat::from(2u32);
        let nat3 = BigNat::from(3u32);
        let mut ctx = CountedContext::with_ops(OpSet::of(&[PrimOp::Add, PrimOp::Sub, PrimOp::Mul]));

        assert!(ctx.add(&nat2, &nat3).is_ok());
        assert!(ctx.sub(&nat3, &nat2).is_ok());
        assert!(ctx.mul(&nat2, &nat3).is_ok());

        assert_eq!(ctx.div(&nat3, &nat2), Err(Error::ForbiddenOp(PrimOp::Div)));
        assert_eq!(ctx.rem(&nat3, &nat2), Err(Error::ForbiddenOp(PrimOp::Rem)));
        assert_eq!(
            ctx.div_rem(&nat3, &nat2),
            Err(Error::ForbiddenOp(PrimOp::Div))
        );
        assert_eq!(ctx.and(&nat3, &nat2), Err(Error::ForbiddenOp(PrimOp::And)));
        assert_eq!(ctx.gcd(&nat3, &nat2), Err(Error::ForbiddenOp(PrimOp::Gcd)));
        assert_eq!(
            ctx.gcdex(&nat3, &nat2).unwrap_err(),
            Error::ForbiddenOp(PrimOp::Gcdex)
        );
        assert_eq!(ctx.shl(&nat3, 1), Err(Error::ForbiddenOp(PrimOp::Shift)));
        assert_eq!(ctx.bitlen(&nat3), Err(Error::ForbiddenOp(PrimOp::Shift)));
        assert_eq!(
            ctx.cmp(&nat2, &nat3),
            Err(Error::ForbiddenOp(PrimOp::Cmp))
        );

        // Nothing forbidden was tallied.
        let t = ctx.tally_snapshot();
        assert_eq!(t.total(), 3);
    }

    #[test]
    fn nat_sub_underflow_is_an_error() {
        let mut ctx = CountedContext::new();
        assert_eq!(
            ctx.sub(&BigNat::from(2u32), &BigNat::from(3u32)),
            Err(Error::Underflow)
        );
    }

    #[test]
    fn pow2_paths_match_generic_ops() {
        let mut ctx = CountedContext::new();
        let a = BigNat::from(0b1011_0110u32);
        assert_eq!(ctx.mul_pow2(&a, 5).unwrap(), &a * &BigNat::pow2(5));
        assert_eq!(ctx.div_pow2(&a, 3).unwrap(), a.div_rem(&BigNat::pow2(3)).0);
        assert_eq!(ctx.rem_pow2(&a, 3).unwrap(), a.div_rem(&BigNat::pow2(3)).1);
        let t = ctx.tally_snapshot();
        assert_eq!((t.mul, t.div, t.rem), (1, 1, 1));
    }

    #[test]
    fn pow_sq_counts_muls() {
        let mut ctx = CountedContext::new();
        let v = ctx.pow_sq(&BigNat::from(100u32), 3).unwrap();
        assert_eq!(v, BigNat::from(1_000_000u32));
        assert_eq!(ctx.tally_snapshot().mul, 2);
    }
}
