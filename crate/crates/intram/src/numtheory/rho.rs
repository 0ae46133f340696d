//! Fixed-point encodings of polynomial value streams, and the linear
//! recurrence satisfied by `p(1), p(c), p(c^2), ...`.
//!
//! The code packs the values `p(Z_n)` for `Z_n = Y * 2^n` into one scaled
//! integer with strictly separated bit windows, so a single digit
//! extraction recovers any stored term exactly. Window `n` is
//! `K + d*n` bits wide with `K = k(d+1)`, which sandwiches
//! `p(Z_n) < 2^(K + d*n)`; the window starts grow quadratically, so the
//! windows never touch and no carries blur the stored values.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::opcore::{BigInt, BigNat, CountedContext};
use crate::polyeval::Poly;

/// A finite prefix of the value stream `p(Y * 2^n)`, packed exactly.
#[derive(Debug, Clone)]
pub struct RhoCode {
    poly: Poly,
    /// `log2 Y` with `Y = 2^k > ||p||_1`.
    k: u64,
    degree: u64,
    terms: u64,
    scaled: BigNat,
}

impl RhoCode {
    fn window_width(&self, n: u64) -> u64 {
        self.k * (self.degree + 1) + self.degree * n
    }

    /// Bit offset of window `n`, counted from the least significant end of
    /// the *reversed* layout: `off(n) = n*(K + d*n)`.
    fn offset(&self, n: u64) -> u64 {
        n * (self.k * (self.degree + 1) + self.degree * n)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn terms(&self) -> u64 {
        self.terms
    }

    pub fn scaled_value(&self) -> &BigNat {
        &self.scaled
    }
}

/// Pack `p(Z_0), ..., p(Z_m)` for `Z_n = Y * 2^n` into one integer.
/// Coefficients must be nonnegative.
pub fn rho_encode(p: &Poly, terms: u64) -> Result<RhoCode> {
    for c in p.coeffs() {
        if c.is_negative() {
            return Err(Error::NegativeEntry {
                value: alloc::string::ToString::to_string(c),
            });
        }
    }
    let k = p.norm1().bit_len().max(1);
    let degree = p.degree();
    let code_shell = RhoCode {
        poly: p.clone(),
        k,
        degree,
        terms,
        scaled: BigNat::zero(),
    };
    let top_offset = code_shell.offset(terms);
    let mut scaled = BigNat::zero();
    for n in 0..=terms {
        let z_n = BigNat::pow2(k + n);
        let value = p.eval_raw(&BigInt::from(z_n)).to_nat().expect("nonneg");
        debug_assert!(value.bit_len() <= code_shell.window_width(n));
        scaled = &scaled + &(&value << (top_offset - code_shell.offset(n)));
    }
    Ok(RhoCode {
        scaled,
        ..code_shell
    })
}

/// Recover `p(Z_n)` exactly: one shift-out and one window remainder,
/// charged as `div` + `rem`.
pub fn rho_extract(ctx: &mut CountedContext, code: &RhoCode, n: u64) -> Result<BigNat> {
    if n > code.terms {
        return Err(Error::IndexOutOfRange {
            index: n,
            max: code.terms,
        });
    }
    let shift = code.offset(code.terms) - code.offset(n);
    ctx.extract_digit(&code.scaled, shift, code.window_width(n))
}

/// Integer coefficients `a_0, ..., a_delta` with `a_0 != 0` and
/// `a_0 * p(c^(n+1)) = a_1 * p(c^n) + ... + a_delta * p(c^(n-delta+1))`
/// for all `n >= delta - 1`.
///
/// The sequence `p(c^n)` is a sum of the geometric sequences `(c^j)^n`
/// over the exponents `j` with a nonzero coefficient, so its
/// characteristic polynomial is `prod_j (X - c^j)`; expanding it gives the
/// recurrence directly, with `a_0 = 1`.
pub fn find_recurrence(p: &Poly, c: &BigNat) -> Vec<BigInt> {
    assert!(!p.is_zero(), "zero polynomial has no canonical recurrence");
    assert!(*c >= BigNat::from(2u32), "base must be at least 2");
    let exponents: Vec<u64> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, coeff)| !coeff.is_zero())
        .map(|(j, _)| j as u64)
        .collect();

    // Expand prod_j (X - c^j); char[i] is the coefficient of X^(delta - i).
    let mut char_poly = alloc::vec![BigInt::one()];
    for &j in &exponents {
        let root = BigInt::from(c.pow(j));
        let mut next = alloc::vec![BigInt::zero(); char_poly.len() + 1];
        for (i, coeff) in char_poly.iter().enumerate() {
            next[i] = &next[i] + coeff;
            next[i + 1] = &next[i + 1] - &(coeff * &root);
        }
        char_poly = next;
    }

    // X^delta = sum_i a_i X^(delta - i) rearranges to a_0 = 1,
    // a_i = -char[i].
    let mut out = Vec::with_capacity(char_poly.len());
    out.push(BigInt::one());
    for coeff in &char_poly[1..] {
        out.push(coeff.neg());
    }
    out
}

/// Check a recurrence against direct evaluation for `n` in
/// `delta-1 .. delta-1+rounds` (uncounted; tests and `--check`).
pub fn verify_recurrence(p: &Poly, c: &BigNat, coeffs: &[BigInt], rounds: u64) -> bool {
    let delta = (coeffs.len() - 1) as u64;
    if coeffs[0].is_zero() {
        return false;
    }
    let at = |n: u64| p.eval_raw(&BigInt::from(c.pow(n)));
    for n in delta.saturating_sub(1)..delta.saturating_sub(1) + rounds {
        let lhs = &coeffs[0] * &at(n + 1);
        let mut rhs = BigInt::zero();
        for (i, a) in coeffs.iter().enumerate().skip(1) {
            rhs = &rhs + &(a * &at(n + 1 - i as u64));
        }
        if lhs != rhs {
            return false;
        }
    }
    true
}
