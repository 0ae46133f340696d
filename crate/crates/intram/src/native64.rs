//! The fixed-width fast path: prepared evaluation entirely in machine
//! words.
//!
//! For small enough degree, norm and argument bounds, every step of the
//! prepared evaluation fits hardware arithmetic: one 128/64-bit division,
//! one 64x64->128 multiplication, then either a shift-and-mask (power-of-
//! two radix) or two more divisions. [`builtin_classes`] lists the six
//! published operating ranges; [`validate_class`] exhaustively replays a
//! whole class against a word-sized Horner oracle.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::polyeval::Poly;

/// An operating range `(d, P, X, Z)`: polynomials of degree at most `d`
/// with nonnegative coefficients summing to at most `P`, arguments in
/// `0..=X`, evaluated at radix `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeClass {
    degree: u32,
    norm1: u64,
    domain: u64,
    radix: u64,
}

impl RangeClass {
    /// Validates the three class invariants: the radix clears the digit
    /// separation bound, `P * Z^d` fits 64 bits, and the largest
    /// intermediate product fits 128 bits.
    pub fn new(degree: u32, norm1: u64, domain: u64, radix: u64) -> Result<Self> {
        let xd = (domain as u128).pow(degree);
        let separation = (xd * norm1 as u128).max((xd + 1) * domain as u128);
        if radix as u128 <= separation {
            return Err(Error::ClassViolation {
                reason: alloc::format!(
                    "radix {radix} does not exceed the separation bound {separation}"
                ),
            });
        }
        let zd = (radix as u128).pow(degree);
        let packed_max = zd.checked_mul(norm1 as u128).ok_or(Error::ClassViolation {
            reason: "P * Z^d overflows".to_string(),
        })?;
        if packed_max >> 64 != 0 {
            return Err(Error::ClassViolation {
                reason: alloc::format!("P * Z^d = {packed_max} does not fit in 64 bits"),
            });
        }
        let zd1 = zd.checked_mul(radix as u128).ok_or(Error::ClassViolation {
            reason: "Z^(d+1) overflows".to_string(),
        })?;
        let series_max = zd1 / (radix - domain) as u128;
        if series_max.checked_mul(packed_max).is_none() {
            return Err(Error::ClassViolation {
                reason: "largest intermediate exceeds 128 bits".to_string(),
            });
        }
        Ok(RangeClass {
            degree,
            norm1,
            domain,
            radix,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn norm1(&self) -> u64 {
        self.norm1
    }

    pub fn domain(&self) -> u64 {
        self.domain
    }

    pub fn radix(&self) -> u64 {
        self.radix
    }

    pub fn is_pow2(&self) -> bool {
        self.radix.is_power_of_two()
    }

    /// Number of admissible polynomials: compositions of at most `P` over
    /// `d + 1` coefficients, i.e. `C(P + d + 1, d + 1)`.
    pub fn polynomial_count(&self) -> u64 {
        binomial(self.norm1 + self.degree as u64 + 1, self.degree as u64 + 1)
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// The six published operating ranges. The power-of-two radices (classes
/// 2, 4 and 6, counting from 1) admit the shift-and-mask extraction.
pub fn builtin_classes() -> Vec<RangeClass> {
    [
        (5, 5, 4, 0x1401),
        (5, 15, 3, 0x1000),
        (4, 9, 8, 0x9001),
        (4, 13, 7, 0x8000),
        (4, 23, 6, 0x7471),
        (3, 56, 21, 0x80000),
    ]
    .into_iter()
    .map(|(d, p, x, z)| RangeClass::new(d, p, x, z).expect("published classes are valid"))
    .collect()
}

/// A polynomial compiled into machine words for one range class.
#[derive(Debug, Clone, Copy)]
pub struct Prepared64 {
    /// `p(Z)`, the packed coefficients.
    packed: u64,
    /// `Z^(d+1)` (may exceed 64 bits).
    radix_pow_d1: u128,
    /// `Z^d`.
    radix_pow_d: u64,
    radix: u64,
    domain: u64,
    /// Shift amount and mask for power-of-two radices.
    shift_mask: Option<(u32, u64)>,
}

impl Prepared64 {
    pub fn packed(&self) -> u64 {
        self.packed
    }

    pub fn radix_pow_d1(&self) -> u128 {
        self.radix_pow_d1
    }
}

/// Compile `p` against `class`, rejecting anything outside its bounds.
pub fn prepare64(p: &Poly, class: &RangeClass) -> Result<Prepared64> {
    if p.degree() > class.degree as u64 && !p.is_zero() {
        return Err(Error::ClassViolation {
            reason: alloc::format!(
                "degree {} exceeds the class bound {}",
                p.degree(),
                class.degree
            ),
        });
    }
    let mut coeffs = alloc::vec![0u64; class.degree as usize + 1];
    let mut norm = 0u64;
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_negative() {
            return Err(Error::ClassViolation {
                reason: alloc::format!("negative coefficient {c}"),
            });
        }
        let v = c.abs().to_u64().ok_or_else(|| Error::ClassViolation {
            reason: "coefficient does not fit a word".to_string(),
        })?;
        coeffs[i] = v;
        norm += v;
    }
    if norm > class.norm1 {
        return Err(Error::ClassViolation {
            reason: alloc::format!("norm {norm} exceeds the class bound {}", class.norm1),
        });
    }

    let z = class.radix as u128;
    let mut packed: u128 = 0;
    for &c in coeffs.iter().rev() {
        packed = packed * z + c as u128;
    }
    debug_assert!(packed >> 64 == 0, "class invariant keeps p(Z) in a word");

    let radix_pow_d = (class.radix as u128).pow(class.degree) as u64;
    Ok(Prepared64 {
        packed: packed as u64,
        radix_pow_d1: radix_pow_d as u128 * class.radix as u128,
        radix_pow_d,
        radix: class.radix,
        domain: class.domain,
        shift_mask: class.is_pow2().then(|| {
            let log2 = class.radix.trailing_zeros();
            (class.degree * log2, class.radix - 1)
        }),
    })
}

/// Evaluate in machine words: one double-width division, one widening
/// multiplication, then shift+mask or two divisions. No big-integer
/// arithmetic anywhere.
pub fn eval64(prep: &Prepared64, x: u64) -> Result<u64> {
    if x > prep.domain {
        return Err(Error::DomainExceeded {
            value: x.to_string(),
            bound: prep.domain.to_string(),
        });
    }
    let series = (prep.radix_pow_d1 / (prep.radix - x) as u128) as u64;
    let spread = series as u128 * prep.packed as u128;
    Ok(match prep.shift_mask {
        Some((shift, mask)) => (spread >> shift) as u64 & mask,
        None => (spread / prep.radix_pow_d as u128 % prep.radix as u128) as u64,
    })
}

/// Word-sized Horner oracle.
pub fn horner64(coeffs: &[u64], x: u64) -> u64 {
    let mut acc = 0u128;
    for &c in coeffs.iter().rev() {
        acc = acc * x as u128 + c as u128;
    }
    acc as u64
}

/// Outcome of an exhaustive class validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub class: RangeClass,
    pub polynomials: u64,
    pub evaluations: u64,
    pub mismatches: u64,
    /// First failing `(coefficients, x, fast, oracle)`, if any.
    pub first_mismatch: Option<(Vec<u64>, u64, u64, u64)>,
}

/// Enumerate every admissible polynomial of `class` and check [`eval64`]
/// against the Horner oracle at every in-domain argument.
pub fn validate_class(class: &RangeClass) -> ValidationReport {
    let mut report = ValidationReport {
        class: *class,
        polynomials: 0,
        evaluations: 0,
        mismatches: 0,
        first_mismatch: None,
    };
    let mut coeffs = alloc::vec![0u64; class.degree as usize + 1];
    enumerate(&mut coeffs, 0, class.norm1, class, &mut report);
    report
}

fn enumerate(
    coeffs: &mut Vec<u64>,
    position: usize,
    budget: u64,
    class: &RangeClass,
    report: &mut ValidationReport,
) {
    if position == coeffs.len() {
        check_one(coeffs, class, report);
        return;
    }
    for v in 0..=budget {
        coeffs[position] = v;
        enumerate(coeffs, position + 1, budget - v, class, report);
    }
    coeffs[position] = 0;
}

fn check_one(coeffs: &[u64], class: &RangeClass, report: &mut ValidationReport) {
    report.polynomials += 1;
    let poly = Poly::new(coeffs.iter().map(|&c| crate::opcore::BigInt::from(c)).collect());
    let prep = prepare64(&poly, class).expect("enumerated polynomials fit the class");
    for x in 0..=class.domain {
        report.evaluations += 1;
        let fast = eval64(&prep, x).expect("in-domain argument");
        let oracle = horner64(coeffs, x);
        if fast != oracle {
            report.mismatches += 1;
            if report.first_mismatch.is_none() {
                report.first_mismatch = Some((coeffs.to_vec(), x, fast, oracle));
            }
        }
    }
}
