//! Digit-packed linear algebra and gcd-based matrix powering.
//!
//! Packing a matrix into the digits of one integer turns a matrix product
//! into a single big multiplication plus encoding and decoding passes, for
//! `O((k+m)n)` counted operations instead of the naive cubic count. The
//! same digit games give an exact permanent in `O(n^2)` operations, and
//! the componentwise-remainder trick of [`matpow_tower`] squares a matrix
//! `2^k` times in `O(d^2 sqrt(k))` operations given one sufficiently rich
//! witness matrix.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::opcore::{BigInt, BigNat, CountedContext};
use crate::polyeval::isqrt_floor;

/// A dense integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        assert_eq!(entries.len(), rows * cols, "entry grid must be rectangular");
        IntMat {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        IntMat::new(r, c, rows.concat())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let converted: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        IntMat::from_rows(&converted)
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat::new(rows, cols, alloc::vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.cols + col]
    }

    pub fn get_mut(&mut self, row: usize, col: usize) -> &mut BigInt {
        &mut self.entries[row * self.cols + col]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BigInt::is_zero)
    }

    pub fn has_negative_entry(&self) -> bool {
        self.entries.iter().any(BigInt::is_negative)
    }

    /// Largest absolute entry value.
    pub fn max_abs(&self) -> BigNat {
        self.entries
            .iter()
            .map(BigInt::abs)
            .max()
            .unwrap_or_else(BigNat::zero)
    }

    /// Componentwise `(plus, minus)` with `self = plus - minus`, both
    /// nonnegative.
    pub fn split_signs(&self) -> (IntMat, IntMat) {
        let mut plus = Vec::with_capacity(self.entries.len());
        let mut minus = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            if e.is_negative() {
                plus.push(BigInt::zero());
                minus.push(BigInt::from(e.abs()));
            } else {
                plus.push(e.clone());
                minus.push(BigInt::zero());
            }
        }
        (
            IntMat::new(self.rows, self.cols, plus),
            IntMat::new(self.rows, self.cols, minus),
        )
    }

    /// Uncounted componentwise subtraction (oracle and witness plumbing).
    pub fn sub_raw(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        IntMat::new(self.rows, self.cols, entries)
    }

    /// Uncounted schoolbook product (oracle and witness plumbing).
    pub fn mul_raw(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for l in 0..self.cols {
                    acc = &acc + &(self.get(i, l) * other.get(l, j));
                }
                *out.get_mut(i, j) = acc;
            }
        }
        out
    }
}

/// A matrix modulus: `C` paired with the gcd of its entries.
#[derive(Debug, Clone)]
pub struct MatModulus {
    matrix: IntMat,
    gcd: BigNat,
}

impl MatModulus {
    /// Computes `gcd(C)` on construction (counted).
    pub fn new(ctx: &mut CountedContext, matrix: IntMat) -> Result<Self> {
        let gcd = mat_gcd(ctx, &matrix)?;
        Ok(MatModulus { matrix, gcd })
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    pub fn gcd(&self) -> &BigNat {
        &self.gcd
    }
}

fn check_dims(a: &IntMat, b: &IntMat) -> Result<()> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            left_rows: a.rows,
            left_cols: a.cols,
            right_rows: b.rows,
            right_cols: b.cols,
        });
    }
    Ok(())
}

/// Schoolbook matrix product, counted: the oracle the packed product is
/// measured against.
pub fn matmul_naive(ctx: &mut CountedContext, a: &IntMat, b: &IntMat) -> Result<IntMat> {
    check_dims(a, b)?;
    let mut out = IntMat::zero(a.rows, b.cols);
    for i in 0..a.rows {
        for j in 0..b.cols {
            let mut acc = ctx.mul(a.get(i, 0), b.get(0, j))?;
            for l in 1..a.cols {
                let term = ctx.mul(a.get(i, l), b.get(l, j))?;
                acc = ctx.add(&acc, &term)?;
            }
            *out.get_mut(i, j) = acc;
        }
    }
    Ok(out)
}

/// Pack a nonnegative `k x n` matrix as the left factor: entry `(i, l)`
/// lands at digit `(l-1) + 2nm(i-1)`.
fn pack_left(
    ctx: &mut CountedContext,
    mat: &IntMat,
    digit_bits: u64,
    m_cols: usize,
) -> Result<BigNat> {
    let n = mat.cols as u64;
    let row_stride = digit_bits * 2 * n * m_cols as u64;
    let mut acc: Option<BigNat> = None;
    for i in (0..mat.rows).rev() {
        let mut row = mat.get(i, mat.cols - 1).abs();
        for l in (0..mat.cols - 1).rev() {
            row = ctx.mul_pow2(&row, digit_bits)?;
            row = ctx.add(&row, &mat.get(i, l).abs())?;
        }
        acc = Some(match acc {
            None => row,
            Some(high) => {
                let shifted = ctx.mul_pow2(&high, row_stride)?;
                ctx.add(&shifted, &row)?
            }
        });
    }
    Ok(acc.expect("matrices are nonempty"))
}

/// Pack a nonnegative `n x m` matrix as the right factor: entry `(l, j)`
/// lands at digit `(n-l) + 2n(j-1)`, i.e. columns are stored reversed.
fn pack_right(ctx: &mut CountedContext, mat: &IntMat, digit_bits: u64) -> Result<BigNat> {
    let n = mat.rows as u64;
    let col_stride = digit_bits * 2 * n;
    let mut acc: Option<BigNat> = None;
    for j in (0..mat.cols).rev() {
        let mut col = mat.get(0, j).abs();
        for l in 1..mat.rows {
            col = ctx.mul_pow2(&col, digit_bits)?;
            col = ctx.add(&col, &mat.get(l, j).abs())?;
        }
        acc = Some(match acc {
            None => col,
            Some(high) => {
                let shifted = ctx.mul_pow2(&high, col_stride)?;
                ctx.add(&shifted, &col)?
            }
        });
    }
    Ok(acc.expect("matrices are nonempty"))
}

/// Decode all `k*m` product digits: entry `(i, j)` sits at digit
/// `(n-1) + 2n(j-1) + 2nm(i-1)`, a uniform stride of `2n` digits.
fn decode_product(
    ctx: &mut CountedContext,
    gamma: &BigNat,
    digit_bits: u64,
    k: usize,
    n: usize,
    m: usize,
) -> Result<Vec<BigNat>> {
    let mut out = Vec::with_capacity(k * m);
    let mut cursor = ctx.div_pow2(gamma, digit_bits * (n as u64 - 1))?;
    for _ in 0..k * m {
        out.push(ctx.rem_pow2(&cursor, digit_bits)?);
        cursor = ctx.div_pow2(&cursor, digit_bits * 2 * n as u64)?;
    }
    Ok(out)
}

/// Matrix product in `O((k+m)n)` counted operations by digit packing.
///
/// Signs are handled by the four-way split `A = A+ - A-`, `B = B+ - B-`;
/// all four packed products run even when a part is zero, so the operation
/// count is a function of the shape alone.
pub fn matmul_packed(ctx: &mut CountedContext, a: &IntMat, b: &IntMat) -> Result<IntMat> {
    check_dims(a, b)?;
    let (k, n, m) = (a.rows, a.cols, b.cols);

    // Digits of the product are sums of n entry products; the radix must
    // exceed them all.
    let bound = &(&BigNat::from(n as u64) * &(&a.max_abs() * &b.max_abs())) + &BigNat::one();
    let digit_bits = bound.bit_len().max(1);

    let (ap, an) = a.split_signs();
    let (bp, bn) = b.split_signs();
    let alpha_p = pack_left(ctx, &ap, digit_bits, m)?;
    let alpha_n = pack_left(ctx, &an, digit_bits, m)?;
    let beta_p = pack_right(ctx, &bp, digit_bits)?;
    let beta_n = pack_right(ctx, &bn, digit_bits)?;

    let mut signed_parts: [Vec<BigNat>; 4] = [const { Vec::new() }; 4];
    for (slot, (alpha, beta)) in signed_parts.iter_mut().zip([
        (&alpha_p, &beta_p),
        (&alpha_p, &beta_n),
        (&alpha_n, &beta_p),
        (&alpha_n, &beta_n),
    ]) {
        let gamma = ctx.mul(alpha, beta)?;
        *slot = decode_product(ctx, &gamma, digit_bits, k, n, m)?;
    }

    let [pp, pn, np, nn] = signed_parts;
    let mut entries = Vec::with_capacity(k * m);
    for idx in 0..k * m {
        // pp - pn - np + nn
        let mut v = ctx.sub(&BigInt::from(pp[idx].clone()), &BigInt::from(pn[idx].clone()))?;
        v = ctx.sub(&v, &BigInt::from(np[idx].clone()))?;
        v = ctx.add(&v, &BigInt::from(nn[idx].clone()))?;
        entries.push(v);
    }
    Ok(IntMat::new(k, m, entries))
}

const PERMANENT_NAIVE_LIMIT: usize = 9;

/// Permutation-sum permanent, counted; the oracle for small `n`.
pub fn permanent_naive(ctx: &mut CountedContext, a: &IntMat) -> Result<BigInt> {
    assert!(a.is_square(), "permanent needs a square matrix");
    let n = a.rows;
    if n > PERMANENT_NAIVE_LIMIT {
        return Err(Error::TooLarge {
            what: "naive permanent dimension",
            limit: PERMANENT_NAIVE_LIMIT as u64,
        });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = BigInt::zero();
    // Heap's algorithm enumerates all n! permutations.
    let mut counters = alloc::vec![0usize; n];
    let mut add_term = |ctx: &mut CountedContext, perm: &[usize]| -> Result<()> {
        let mut term = a.get(0, perm[0]).clone();
        for (i, &j) in perm.iter().enumerate().skip(1) {
            term = ctx.mul(&term, a.get(i, j))?;
        }
        acc = ctx.add(&acc, &term)?;
        Ok(())
    };
    add_term(ctx, &perm)?;
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            add_term(ctx, &perm)?;
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(acc)
}

fn factorial(n: u64) -> BigNat {
    let mut acc = BigNat::one();
    for i in 2..=n {
        acc = &acc * &BigNat::from(i);
    }
    acc
}

/// Parameters of the packed permanent: the per-column exponents
/// `W^(j-1)` in bits, with `W = n + 1`, plus the digit width.
fn permanent_layout(n: u64, digit_bits: u64) -> Result<(Vec<u64>, u64)> {
    let w = n + 1;
    let mut exps = Vec::with_capacity(n as usize);
    let mut wpow = 1u64;
    for j in 0..n {
        let bits = wpow.checked_mul(digit_bits).ok_or(Error::ScaleExceeded {
            what: "packed permanent exponent bits",
            limit: u64::MAX,
        })?;
        exps.push(bits);
        if j + 1 < n {
            wpow = wpow.checked_mul(w).ok_or(Error::ScaleExceeded {
                what: "packed permanent exponent",
                limit: u64::MAX,
            })?;
        }
    }
    // Final value has about n * W^(n-1) digits; refuse sizes that cannot
    // be represented.
    let top = wpow
        .checked_mul(n)
        .and_then(|v| v.checked_mul(digit_bits))
        .ok_or(Error::ScaleExceeded {
            what: "packed permanent value bits",
            limit: u64::MAX,
        })?;
    Ok((exps, top))
}

/// Exact permanent of a nonnegative matrix in `O(n^2)` counted operations.
///
/// Column `j` is tagged with the exponent `W^(j-1)` for `W = n + 1`; the
/// product of the tagged row sums expands over all ways to pick one column
/// per row, and base-`W` digit uniqueness makes the exponent
/// `e* = sum_j W^(j-1)` select exactly the permutations. The permanent is
/// the radix digit of the product at `Z^e*`, with `Z > n! * max^n` keeping
/// digits from interfering.
pub fn permanent_packed(ctx: &mut CountedContext, a: &IntMat) -> Result<BigNat> {
    assert!(a.is_square(), "permanent needs a square matrix");
    if let Some(bad) = a.entries.iter().find(|e| e.is_negative()) {
        return Err(Error::NegativeEntry {
            value: bad.to_string(),
        });
    }
    let n = a.rows as u64;
    let bound = &factorial(n) * &a.max_abs().pow(n);
    let digit_bits = bound.bit_len().max(1);
    let (exps, _top_bits) = permanent_layout(n, digit_bits)?;

    // The exponent tower Z^(W^(j-1)) by repeated (n+1)-th powers.
    let mut tower = Vec::with_capacity(n as usize);
    tower.push(BigNat::pow2(digit_bits)); // Z
    for _ in 1..n as usize {
        let next = ctx.pow_sq(tower.last().unwrap(), n + 1)?;
        tower.push(next);
    }

    let mut product: Option<BigNat> = None;
    for i in 0..a.rows {
        let mut row_sum: Option<BigNat> = None;
        for (j, tagged) in tower.iter().enumerate() {
            let term = ctx.mul(&a.get(i, j).abs(), tagged)?;
            row_sum = Some(match row_sum {
                None => term,
                Some(acc) => ctx.add(&acc, &term)?,
            });
        }
        let row_sum = row_sum.unwrap();
        product = Some(match product {
            None => row_sum,
            Some(acc) => ctx.mul(&acc, &row_sum)?,
        });
    }
    let product = product.unwrap();

    // e* = sum_j W^(j-1), in bits.
    let target_bits: u64 = exps.iter().sum();
    ctx.extract_digit(&product, target_bits, digit_bits)
}

/// The operation tally of [`permanent_packed`] on an `n x n` input.
///
/// The packed permanent's counted trace depends only on `n`, and for
/// `n >= 16` the intermediate values are physically unrepresentable (the
/// exponent tower is doubly exponential), so scaling checks beyond that
/// point replay the algorithm's loop structure instead of its values. A
/// unit test pins this replay to measured tallies on feasible sizes.
pub fn permanent_packed_tally(n: u64) -> crate::opcore::OpTally {
    let mut tally = crate::opcore::OpTally::new();
    let pow_sq_muls = |exp: u64| -> u64 {
        if exp <= 1 {
            0
        } else {
            (63 - exp.leading_zeros() as u64) + exp.count_ones() as u64 - 1
        }
    };
    tally.mul += (n - 1) * pow_sq_muls(n + 1); // tower
    tally.mul += n * n; // row terms
    tally.add += n * (n - 1); // row sums
    tally.mul += n - 1; // product of rows
    tally.div += 1; // digit extraction
    tally.rem += 1;
    tally
}

/// Fraction-free (Bareiss) determinant, counted. The division in each
/// elimination step is exact, so everything stays in integers.
pub fn det_bareiss(ctx: &mut CountedContext, a: &IntMat) -> Result<BigInt> {
    assert!(a.is_square(), "determinant needs a square matrix");
    let n = a.rows;
    let mut m = a.clone();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for pivot in 0..n - 1 {
        if m.get(pivot, pivot).is_zero() {
            let swap_row = (pivot + 1..n).find(|&r| !m.get(r, pivot).is_zero());
            match swap_row {
                None => return Ok(BigInt::zero()),
                Some(r) => {
                    for c in 0..n {
                        let tmp = m.get(pivot, c).clone();
                        *m.get_mut(pivot, c) = m.get(r, c).clone();
                        *m.get_mut(r, c) = tmp;
                    }
                    sign = -sign;
                }
            }
        }
        for i in pivot + 1..n {
            for j in pivot + 1..n {
                let lead = ctx.mul(m.get(pivot, pivot), m.get(i, j))?;
                let cross = ctx.mul(m.get(i, pivot), m.get(pivot, j))?;
                let num = ctx.sub(&lead, &cross)?;
                *m.get_mut(i, j) = ctx.div_exact_int(&num, &prev)?;
            }
        }
        prev = m.get(pivot, pivot).clone();
    }
    let det = m.get(n - 1, n - 1).clone();
    Ok(if sign < 0 { det.neg() } else { det })
}

/// Gcd of all entries (0 for the zero matrix), counted.
pub fn mat_gcd(ctx: &mut CountedContext, c: &IntMat) -> Result<BigNat> {
    let mut g = c.entries[0].abs();
    for e in &c.entries[1..] {
        g = ctx.gcd(&g, &e.abs())?;
    }
    Ok(g)
}

/// Componentwise remainder `x_ij rem gcd(C)`, counted; signed entries are
/// reduced into `[0, gcd(C))`.
pub fn mat_rem(ctx: &mut CountedContext, x: &IntMat, c: &IntMat) -> Result<IntMat> {
    let modulus = MatModulus::new(ctx, c.clone())?;
    mat_rem_by(ctx, x, &modulus)
}

/// Componentwise remainder by a precomputed matrix modulus.
pub fn mat_rem_by(ctx: &mut CountedContext, x: &IntMat, c: &MatModulus) -> Result<IntMat> {
    if c.gcd.is_zero() {
        return Err(Error::ZeroModulus);
    }
    let entries = x
        .entries
        .iter()
        .map(|e| Ok(BigInt::from(ctx.rem_floor_int(e, &c.gcd)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMat::new(x.rows, x.cols, entries))
}

/// Entry bound for the `e`-th power of a `dims x dims` matrix with entries
/// up to `max_entry` (uncounted guard arithmetic).
fn power_entry_bound(dims: u64, max_entry: &BigNat, e: u64) -> BigNat {
    &BigNat::from(dims).pow(e - 1) * &max_entry.pow(e)
}

/// `A^(2^k)` in `O(d^2 sqrt(k))` counted operations for nonnegative `A`,
/// given a witness matrix `B` whose differences from the intermediate
/// powers keep a large componentwise gcd.
///
/// With `l = floor(sqrt k)`, computes `B^(2^l)` once (packed squarings),
/// then steps `A^(2^lj) = B^(2^l) rem (B - A^(2^l(j-1)))`: the remainder is
/// exact whenever `gcd(B - A^(2^l(j-1)))` exceeds every entry of the next
/// power. That premise is checked per step against the analytic entry
/// bound before the remainder is trusted; a failing step reports
/// [`Error::WitnessInsufficient`]. A leftover exponent below `l` is closed
/// by packed squaring.
pub fn matpow_tower(
    ctx: &mut CountedContext,
    a: &IntMat,
    k: u64,
    b: &IntMat,
) -> Result<IntMat> {
    assert!(a.is_square(), "powering needs a square matrix");
    if let Some(bad) = a
        .entries
        .iter()
        .chain(b.entries.iter())
        .find(|e| e.is_negative())
    {
        return Err(Error::NegativeEntry {
            value: bad.to_string(),
        });
    }
    assert_eq!(
        (a.rows, a.cols),
        (b.rows, b.cols),
        "witness shape must match"
    );
    if k == 0 {
        return Ok(a.clone());
    }
    if a.is_zero() {
        return Ok(IntMat::zero(a.rows, a.cols));
    }
    assert!(k <= 62, "exponent 2^k beyond representable sizes");

    let dims = a.rows as u64;
    let max_entry = a.max_abs();
    let l = isqrt_floor(k).max(1);
    let steps = k / l;

    let mut big = b.clone();
    for _ in 0..l {
        big = matmul_packed(ctx, &big, &big)?;
    }

    let mut cur = a.clone();
    for step in 1..=steps {
        let mut diff_entries = Vec::with_capacity(b.entries.len());
        for (be, xe) in b.entries.iter().zip(&cur.entries) {
            diff_entries.push(ctx.sub(be, xe)?);
        }
        let diff = IntMat::new(b.rows, b.cols, diff_entries);
        let g = mat_gcd(ctx, &diff)?;
        // The premise: the gcd must exceed every entry of the power this
        // step produces, bounded analytically from the input.
        let bound = power_entry_bound(dims, &max_entry, 1 << (l * step));
        if g <= bound {
            return Err(Error::WitnessInsufficient {
                step: step as usize,
                gcd: g.to_string(),
                entry: bound.to_string(),
            });
        }
        let mut next = Vec::with_capacity(big.entries.len());
        for e in &big.entries {
            let nat = e.to_nat().expect("powers of nonnegative matrices");
            next.push(BigInt::from(ctx.rem(&nat, &g)?));
        }
        cur = IntMat::new(b.rows, b.cols, next);
    }
    for _ in 0..k - l * steps {
        cur = matmul_packed(ctx, &cur, &cur)?;
    }
    Ok(cur)
}

/// Build a witness matrix for [`matpow_tower`] on `(a, k)` (uncounted test
/// and demonstration plumbing).
///
/// Per entry, `B` solves `B = A^(2^lj) (mod q_(j+1))` over pairwise
/// coprime moduli exceeding the entry bound `r`. Small bounds use distinct
/// primes; large bounds switch to the multiply-and-add-one coprime chain,
/// whose CRT coefficients have the closed form `e_1 = N/q_1`,
/// `e_j = N - N/q_j`, avoiding modular inversions on huge values.
pub fn make_power_witness_oracle(a: &IntMat, k: u64) -> IntMat {
    assert!(a.is_square());
    assert!(k <= 62);
    let dims = a.rows as u64;
    if a.is_zero() || k == 0 {
        return a.clone();
    }
    let max_entry = a.max_abs();
    let l = isqrt_floor(k).max(1);
    let steps = k / l;
    let r = power_entry_bound(dims, &max_entry, 1 << k);

    if dims == 1 {
        // Scalar case: any b >= 2 a^(2^k) works.
        let val = &BigNat::from(2u32) * &a.get(0, 0).abs().pow(1 << k);
        return IntMat::new(1, 1, alloc::vec![BigInt::from(val)]);
    }

    // The trajectory of intermediate powers, X_j = A^(2^lj).
    let mut trajectory = Vec::with_capacity(steps as usize);
    trajectory.push(a.clone());
    for _ in 1..steps {
        let mut next = trajectory.last().unwrap().clone();
        for _ in 0..l {
            next = next.mul_raw(&next);
        }
        trajectory.push(next);
    }

    let start = &r + &BigNat::one();
    let (moduli, crt_coeffs, total) = if let Some(small) = start.to_u64().filter(|&v| v < 1 << 62)
    {
        // Distinct primes above the bound; invert with extended Euclid.
        let primes: Vec<BigNat> = {
            let mut found = Vec::with_capacity(steps as usize);
            let mut candidate = small.max(2);
            while found.len() < steps as usize {
                if crate::numtheory::is_prime(&BigNat::from(candidate)) {
                    found.push(BigNat::from(candidate));
                }
                candidate += 1;
            }
            found
        };
        let total = primes.iter().fold(BigNat::one(), |acc, p| &acc * p);
        let coeffs = primes
            .iter()
            .map(|p| {
                let others = total.div_rem(p).0;
                let mut ctx = CountedContext::new();
                let (_, _, t) = ctx.gcdex(p, &others).expect("coprime moduli");
                let e = &t * &BigInt::from(&others);
                e.div_mod_floor(&BigInt::from(&total)).1
            })
            .collect::<Vec<_>>();
        (primes, coeffs, total)
    } else {
        // Coprime chain q_1 = r+1, q_2 = r+2, q_(i+1) = q_1...q_i + 1.
        let mut chain = Vec::with_capacity(steps as usize);
        chain.push(start.clone());
        if steps >= 2 {
            chain.push(&start + &BigNat::one());
        }
        let mut product = start.clone();
        for i in 2..steps as usize {
            product = &product * &chain[i - 1];
            chain.push(&product + &BigNat::one());
        }
        let total = chain.iter().fold(BigNat::one(), |acc, p| &acc * p);
        let coeffs = chain
            .iter()
            .enumerate()
            .map(|(i, q)| {
                let others = total.div_rem(q).0;
                if i == 0 {
                    BigInt::from(others)
                } else {
                    BigInt::from(&total - &others)
                }
            })
            .collect::<Vec<_>>();
        (chain, coeffs, total)
    };
    debug_assert!(moduli.iter().all(|q| *q > r));

    let total_int = BigInt::from(&total);
    let mut entries = Vec::with_capacity(a.entries.len());
    for idx in 0..a.entries.len() {
        let mut acc = BigInt::zero();
        for (j, coeff) in crt_coeffs.iter().enumerate() {
            acc = &acc + &(&trajectory[j].entries[idx] * coeff);
        }
        // Lift by the full modulus: residues are unchanged, but the
        // differences B - A^(2^lj) can no longer collapse to zero (fixed
        // points of squaring would otherwise reproduce A itself).
        let reduced = acc.div_mod_floor(&total_int).1;
        entries.push(&reduced + &total_int);
    }
    IntMat::new(a.rows, a.cols, entries)
}
