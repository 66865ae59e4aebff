//! Block empirical distributions and enumerative type-class coding.
//!
//! A length-k block is read as `k / ell` non-overlapping super-symbols of
//! `ell` reproduction symbols each. The empirical distribution of those
//! super-symbols defines a type class; members of a class are indexed by
//! their lexicographic rank (enumerative coding), which is exact big-integer
//! arithmetic throughout.

use crate::alphabet::Sym;
use crate::error::{Error, Result};
use crate::Limits;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Empirical distribution of `ell`-blocks within one k-block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockEmpiricalDist {
    ell: usize,
    /// Occurrence counts, indexed by the super-symbol value in
    /// `0..beta^ell`.
    counts: Vec<u64>,
    /// Number of super-symbols, `k / ell`.
    total: u64,
}

impl BlockEmpiricalDist {
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Empirical probability of super-symbol `v`.
    pub fn prob(&self, v: usize) -> f64 {
        self.counts[v] as f64 / self.total as f64
    }
}

/// Number of distinct super-symbols, `beta^ell`, guarded by the table limit.
pub fn super_alphabet_len(beta: u16, ell: usize, limits: &Limits) -> Result<usize> {
    let mut size: u128 = 1;
    for _ in 0..ell {
        size = size.saturating_mul(beta as u128);
        if size > limits.table_len as u128 {
            return Err(Error::EnumerationLimit { limit: limits.table_len });
        }
    }
    Ok(size as usize)
}

/// Reads `block` as base-beta super-symbols of `ell` symbols each.
pub fn super_symbols(block: &[Sym], beta: u16, ell: usize) -> Result<Vec<usize>> {
    if ell == 0 || block.len() % ell != 0 {
        return Err(Error::DivisibilityViolation { divisor: ell, len: block.len() });
    }
    let mut out = Vec::with_capacity(block.len() / ell);
    for chunk in block.chunks_exact(ell) {
        let mut v = 0usize;
        for &s in chunk {
            debug_assert!(s < beta);
            v = v * beta as usize + s as usize;
        }
        out.push(v);
    }
    Ok(out)
}

fn super_symbol_to_block(mut v: usize, beta: u16, ell: usize) -> Vec<Sym> {
    let mut out = vec![0 as Sym; ell];
    for i in (0..ell).rev() {
        out[i] = (v % beta as usize) as Sym;
        v /= beta as usize;
    }
    out
}

/// Empirical distribution of non-overlapping `ell`-blocks of `block`.
pub fn empirical_block_dist(
    block: &[Sym],
    beta: u16,
    ell: usize,
    limits: &Limits,
) -> Result<BlockEmpiricalDist> {
    let len = super_alphabet_len(beta, ell, limits)?;
    let symbols = super_symbols(block, beta, ell)?;
    let mut counts = vec![0u64; len];
    for v in &symbols {
        counts[*v] += 1;
    }
    Ok(BlockEmpiricalDist { ell, counts, total: symbols.len() as u64 })
}

/// Empirical entropy in bits per super-symbol, with `0 log 0 = 0`.
pub fn empirical_entropy(dist: &BlockEmpiricalDist) -> f64 {
    let m = dist.total as f64;
    if dist.total == 0 {
        return 0.0;
    }
    let mut h = 0.0;
    for &c in &dist.counts {
        if c > 0 {
            let p = c as f64 / m;
            h -= p * p.log2();
        }
    }
    h
}

/// Multinomial coefficient `total! / prod(counts!)`.
pub fn type_class_size(dist: &BlockEmpiricalDist) -> BigUint {
    multinomial(dist.total, &dist.counts)
}

fn multinomial(total: u64, counts: &[u64]) -> BigUint {
    debug_assert_eq!(total, counts.iter().sum::<u64>());
    let mut result = BigUint::one();
    let mut remaining = total;
    for &c in counts {
        result *= binomial(remaining, c);
        remaining -= c;
    }
    result
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k.min(n));
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

/// Type descriptor and lexicographic rank of `block` within its type class.
pub fn type_index_encode(
    block: &[Sym],
    beta: u16,
    ell: usize,
    limits: &Limits,
) -> Result<(BlockEmpiricalDist, BigUint)> {
    let dist = empirical_block_dist(block, beta, ell, limits)?;
    let symbols = super_symbols(block, beta, ell)?;
    let mut counts = dist.counts.clone();
    let mut remaining = dist.total;
    let mut class_size = multinomial(remaining, &counts);
    let mut rank = BigUint::zero();
    for &v in &symbols {
        // rank contribution of every smaller leading super-symbol
        for s in 0..v {
            if counts[s] > 0 {
                rank += &class_size * counts[s] / remaining;
            }
        }
        class_size = class_size * counts[v] / remaining;
        counts[v] -= 1;
        remaining -= 1;
    }
    Ok((dist, rank))
}

/// Inverse of [`type_index_encode`]: the block at `index` within the type
/// class described by `dist`, in lexicographic order.
pub fn type_index_decode(dist: &BlockEmpiricalDist, index: &BigUint, beta: u16) -> Result<Vec<Sym>> {
    let size = type_class_size(dist);
    if index >= &size {
        return Err(Error::Format(format!("type-class index {index} out of range {size}")));
    }
    let mut counts = dist.counts.clone();
    let mut remaining = dist.total;
    let mut class_size = size;
    let mut target = index.clone();
    let mut out = Vec::with_capacity(dist.total as usize * dist.ell);
    for _ in 0..dist.total {
        let mut chosen = None;
        for s in 0..counts.len() {
            if counts[s] == 0 {
                continue;
            }
            let below = &class_size * counts[s] / remaining;
            if target < below {
                chosen = Some(s);
                class_size = below;
                break;
            }
            target -= below;
        }
        let s = chosen.ok_or_else(|| Error::Format("type-class unranking failed".into()))?;
        out.extend(super_symbol_to_block(s, beta, dist.ell));
        counts[s] -= 1;
        remaining -= 1;
    }
    debug_assert!(target.is_zero());
    Ok(out)
}

/// Exact comparison key for empirical entropy: over distributions with the
/// same total, `prod(c^c)` is strictly decreasing in entropy. Totals up to 26
/// fit in u128.
pub fn entropy_key(dist: &BlockEmpiricalDist) -> u128 {
    assert!(dist.total <= 26, "entropy key overflows for totals above 26");
    let mut w: u128 = 1;
    for &c in &dist.counts {
        for _ in 0..c {
            w *= c as u128;
        }
    }
    w
}

/// Exact tie-break key for type-class size: `prod(c!)` is strictly decreasing
/// in the class size at fixed total.
pub fn class_size_key(dist: &BlockEmpiricalDist) -> u128 {
    assert!(dist.total <= 26);
    let mut w: u128 = 1;
    for &c in &dist.counts {
        for i in 1..=c {
            w *= i as u128;
        }
    }
    w
}

/// Bits needed for the lexicographic rank: `ceil(log2(class size))`.
pub fn index_bits(class_size: &BigUint) -> usize {
    if class_size <= &BigUint::one() {
        0
    } else {
        (class_size - 1u32).bits() as usize
    }
}

/// Writes a rank as a fixed-width big-endian field.
pub fn push_index_bits(out: &mut crate::bits::BitString, index: &BigUint, width: usize) {
    for i in (0..width).rev() {
        out.push_bit(index.bit(i as u64));
    }
}

/// Reads a fixed-width big-endian rank.
pub fn read_index_bits(r: &mut crate::bits::BitReader<'_>, width: usize) -> Result<BigUint> {
    let mut v = BigUint::zero();
    for _ in 0..width {
        v <<= 1u8;
        if r.read_bit()? {
            v |= BigUint::one();
        }
    }
    Ok(v)
}

impl BlockEmpiricalDist {
    /// Rebuilds a distribution from raw counts, validating the total.
    pub fn from_counts(ell: usize, counts: Vec<u64>, expected_total: u64) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total != expected_total {
            return Err(Error::Format(format!(
                "type descriptor counts sum to {total}, expected {expected_total}"
            )));
        }
        Ok(Self { ell, counts, total })
    }
}
