//! Multivariate prepared evaluation in `O(n)` operations.
//!
//! Variable `v` lives at radix `Z^(d^(v-1))`: one geometric division per
//! variable unfolds all powers of that variable, the product of the `n`
//! factors enumerates every monomial below the degree bound, and one
//! multiplication by the packed constant `p(Z, Z^d, ..., Z^(d^(n-1)))`
//! lines the coefficients up so the digit at `Z^(d^n - 1)` is exactly
//! `p(x)`. Signs are handled by preparing all `2^n` polynomials
//! `p(+-x_1, ..., +-x_n)` and dispatching on the argument signs.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::opcore::{BigInt, BigNat, CountedContext};

/// A sparse integer polynomial in `vars` variables with every exponent
/// below `degree_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: usize,
    degree_bound: u64,
    terms: BTreeMap<Vec<u64>, BigInt>,
    norm1: BigNat,
}

impl MultiPoly {
    /// `degree_bound` is clamped to at least 2 (the packed encodings need a
    /// genuine radix step even for constant polynomials).
    pub fn new(vars: usize, degree_bound: u64, terms: &[(Vec<u64>, BigInt)]) -> Self {
        assert!(vars >= 1, "need at least one variable");
        let degree_bound = degree_bound.max(2);
        let mut map = BTreeMap::new();
        for (exps, coeff) in terms {
            assert_eq!(exps.len(), vars, "exponent vector length mismatch");
            assert!(
                exps.iter().all(|&e| e < degree_bound),
                "exponent at or above the degree bound"
            );
            if coeff.is_zero() {
                continue;
            }
            let entry = map.entry(exps.clone()).or_insert_with(BigInt::zero);
            *entry = &*entry + coeff;
        }
        map.retain(|_, c: &mut BigInt| !c.is_zero());
        let norm1 = map
            .values()
            .fold(BigNat::zero(), |acc, c| &acc + &c.abs());
        MultiPoly {
            vars,
            degree_bound,
            terms: map,
            norm1,
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree_bound(&self) -> u64 {
        self.degree_bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn norm1(&self) -> &BigNat {
        &self.norm1
    }

    /// Naive monomial sum (uncounted); the oracle the packed path is
    /// checked against.
    pub fn eval_raw(&self, xs: &[BigInt]) -> BigInt {
        assert_eq!(xs.len(), self.vars);
        let mut acc = BigInt::zero();
        for (exps, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (x, &e) in xs.iter().zip(exps) {
                term = &term * &x.pow(e);
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Coefficient of the all-zero exponent vector.
    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&alloc::vec![0; self.vars])
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Mixed-radix weight of an exponent vector: `sum_v e_v * d^(v-1)`.
    pub(crate) fn exponent_weight(&self, exps: &[u64]) -> u64 {
        let mut weight = 0u64;
        let mut scale = 1u64;
        for (v, &e) in exps.iter().enumerate() {
            weight += e * scale;
            if v + 1 < self.vars {
                scale *= self.degree_bound;
            }
        }
        weight
    }

    /// `sum_terms (sign per variant) coeff * base^weight`, split by sign.
    pub(crate) fn packed_variant(&self, variant: usize, base: &BigNat) -> (BigNat, BigNat) {
        let mut pos = BigNat::zero();
        let mut neg = BigNat::zero();
        for (exps, coeff) in &self.terms {
            // Odd exponents of negated variables flip the term sign.
            let flips: u64 = exps
                .iter()
                .enumerate()
                .filter(|(v, &e)| variant >> v & 1 == 1 && e % 2 == 1)
                .count() as u64;
            let negative = (flips % 2 == 1) != coeff.is_negative();
            let term = &coeff.abs() * &base.pow(self.exponent_weight(exps));
            if negative && !term.is_zero() {
                neg = &neg + &term;
            } else {
                pos = &pos + &term;
            }
        }
        (pos, neg)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct PackedPair {
    pub pos: BigNat,
    pub neg: BigNat,
}

/// A multivariate polynomial compiled for `O(n)`-operation evaluation on
/// `max_v |x_v| <= X`.
#[derive(Debug, Clone)]
pub struct PreparedMultiPoly {
    vars: usize,
    degree_bound: u64,
    domain: BigNat,
    radix: BigNat,
    /// `tower[v] = Z^(d^v)` for `v = 0..=n`.
    tower: Vec<BigNat>,
    /// `Z^(d^n - 1)`, the extraction divisor.
    extract_pow: BigNat,
    /// `2^n` sign variants of the packed constant.
    variants: Vec<PackedPair>,
    constant_term: BigInt,
}

impl PreparedMultiPoly {
    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree_bound(&self) -> u64 {
        self.degree_bound
    }

    pub fn domain(&self) -> &BigNat {
        &self.domain
    }

    pub fn radix(&self) -> &BigNat {
        &self.radix
    }

    /// `Z^(d^v)` for `v = 0..=n`.
    pub fn tower(&self) -> &[BigNat] {
        &self.tower
    }
}

const MAX_VARIANT_VARS: usize = 16;

/// Overflow bound for the multivariate packing: the radix must exceed
/// `||p||_1 * d^n * (X+1)^(d^n)`. The norm factor is clamped to 1 so that
/// even the zero polynomial gets a radix above the domain.
fn multi_radix_bound(norm1: &BigNat, degree_bound: u64, vars: usize, domain: &BigNat) -> BigNat {
    let dn = degree_bound.pow(vars as u32);
    let norm = if norm1.is_zero() {
        BigNat::one()
    } else {
        norm1.clone()
    };
    let spread = &BigNat::from(dn) * &norm;
    &spread * &(domain + &BigNat::one()).pow(dn)
}

/// Compile for the domain `max_v |x_v| <= domain`.
pub fn prepare_multi(p: &MultiPoly, domain: &BigNat) -> Result<PreparedMultiPoly> {
    if p.vars > MAX_VARIANT_VARS {
        return Err(Error::ScaleExceeded {
            what: "variables (sign-variant table is 2^n)",
            limit: MAX_VARIANT_VARS as u64,
        });
    }
    let n = p.vars;
    let d = p.degree_bound;
    d.checked_pow(n as u32).ok_or(Error::ScaleExceeded {
        what: "d^n exponent range",
        limit: u64::MAX,
    })?;

    let bound = multi_radix_bound(&p.norm1, d, n, domain);
    let radix = BigNat::pow2(bound.bit_len().max(1));

    let mut tower = Vec::with_capacity(n + 1);
    tower.push(radix.clone());
    for _ in 0..n {
        tower.push(tower.last().unwrap().pow(d));
    }
    let extract_pow = tower[n].div_rem(&radix).0;

    let variants = (0..1usize << n)
        .map(|variant| {
            let (pos, neg) = p.packed_variant(variant, &radix);
            PackedPair { pos, neg }
        })
        .collect();

    Ok(PreparedMultiPoly {
        vars: n,
        degree_bound: d,
        domain: domain.clone(),
        radix,
        tower,
        extract_pow,
        variants,
        constant_term: p.constant_term(),
    })
}

/// Evaluate at `xs` in `O(n)` counted operations: one subtraction, one
/// division and one multiplication per variable, then a constant amount of
/// extraction work.
pub fn eval_multi(
    ctx: &mut CountedContext,
    prep: &PreparedMultiPoly,
    xs: &[BigInt],
) -> Result<BigInt> {
    assert_eq!(xs.len(), prep.vars, "argument vector length mismatch");
    let mut variant = 0usize;
    let mut mags = Vec::with_capacity(xs.len());
    for (v, x) in xs.iter().enumerate() {
        let mag = x.abs();
        if mag > prep.domain {
            return Err(Error::DomainExceeded {
                value: x.to_string(),
                bound: prep.domain.to_string(),
            });
        }
        if x.is_negative() {
            variant |= 1 << v;
        }
        mags.push(mag);
    }

    // The n-factor geometric product enumerating all monomials.
    let mut product: Option<BigNat> = None;
    for (v, mag) in mags.iter().enumerate() {
        let den = ctx.sub(&prep.tower[v], mag)?;
        let factor = ctx.div(&prep.tower[v + 1], &den)?;
        product = Some(match product {
            None => factor,
            Some(acc) => ctx.mul(&acc, &factor)?,
        });
    }
    let product = product.expect("at least one variable");

    let split = &prep.variants[variant];
    let mut halves = [BigNat::zero(), BigNat::zero()];
    for (slot, packed) in halves.iter_mut().zip([&split.pos, &split.neg]) {
        let spread = ctx.mul(&product, packed)?;
        let shifted = ctx.div(&spread, &prep.extract_pow)?;
        *slot = ctx.rem(&shifted, &prep.radix)?;
    }
    let [vp, vn] = halves;
    ctx.sub(&BigInt::from(vp), &BigInt::from(vn))
}

impl PreparedMultiPoly {
    /// Stored constant coefficient (the value at the all-zero argument).
    pub fn constant_term(&self) -> &BigInt {
        &self.constant_term
    }
}
