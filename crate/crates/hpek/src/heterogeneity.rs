//! Digest heterogeneity measured as the entropy of the differing-bit
//! probability between two digests.
//!
//! For two digests of length `L` whose XOR has `b` one-bits, the differing-bit
//! probability is `p = b / L` and the heterogeneity entropy is
//!
//! ```text
//! E(p) = -[(1 - p) * ln(1 - p) + p * ln(p)]      (nats)
//! ```
//!
//! with the convention `0 * ln 0 = 0`. `E` peaks at `ln 2` when exactly half
//! the bits differ and degenerates to `0` both for identical digests and for
//! exact complements — total dissimilarity is as predictable as equality.
//!
//! Two series are computed over an iterated hash chain: the entropy between
//! each digest and its immediate predecessor, and the minimum entropy between
//! each digest and every other digest in the chain. The latter is a proxy for
//! how close the sample comes to a collision and requires the full pairwise
//! scan, which is implemented over packed 64-bit words so that chains of
//! 32,768 digests (about 5.4e8 unordered pairs) finish in seconds to minutes.

use rayon::prelude::*;

use crate::bitops::xor_difference;
use crate::error::{Error, Result};
use crate::hash_suite::{compute_digest, Digest, HashAlgorithmId};

/// An iterated hash chain: `digests[0]` hashes the seed message and each
/// later entry hashes the raw bytes of its predecessor.
#[derive(Debug, Clone)]
pub struct HashChain {
    alg: HashAlgorithmId,
    seed_message: Vec<u8>,
    digests: Vec<Digest>,
}

impl HashChain {
    /// Wraps an existing digest sequence, e.g. synthetic data for analysis.
    /// Every digest must have the algorithm's declared output length; the
    /// recurrence itself is not re-checked.
    pub fn from_digests(
        alg: HashAlgorithmId,
        seed_message: Vec<u8>,
        digests: Vec<Digest>,
    ) -> Result<Self> {
        if let Some(d) = digests.iter().find(|d| d.bit_length() != alg.output_bits()) {
            return Err(Error::InvalidInput(format!(
                "chain digest has {} bits, {} produces {}",
                d.bit_length(),
                alg.name(),
                alg.output_bits()
            )));
        }
        Ok(HashChain { alg, seed_message, digests })
    }

    pub fn alg(&self) -> HashAlgorithmId {
        self.alg
    }

    pub fn seed_message(&self) -> &[u8] {
        &self.seed_message
    }

    pub fn digests(&self) -> &[Digest] {
        &self.digests
    }

    pub fn len(&self) -> usize {
        self.digests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digests.is_empty()
    }
}

/// Which pairing rule produced an [`EntropySeries`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropyKind {
    /// Entropy between each digest and its immediate predecessor.
    Adjacent,
    /// Minimum entropy between each digest and all other digests.
    MinPairwise,
}

impl EntropyKind {
    pub fn name(self) -> &'static str {
        match self {
            EntropyKind::Adjacent => "adjacent",
            EntropyKind::MinPairwise => "min-pairwise",
        }
    }
}

/// Ordered entropy samples from one experiment, in nats.
#[derive(Debug, Clone)]
pub struct EntropySeries {
    alg: HashAlgorithmId,
    kind: EntropyKind,
    values: Vec<f64>,
    m: usize,
}

impl EntropySeries {
    pub fn alg(&self) -> HashAlgorithmId {
        self.alg
    }

    pub fn kind(&self) -> EntropyKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of digests the series was computed from.
    pub fn source_count(&self) -> usize {
        self.m
    }
}

/// Probability that a bit differs: `ones / bit_length`.
pub fn differing_bit_probability(ones: u64, bit_length: usize) -> Result<f64> {
    if bit_length == 0 {
        return Err(Error::InvalidInput("bit length must be positive".into()));
    }
    if ones > bit_length as u64 {
        return Err(Error::InvalidInput(format!(
            "ones count {ones} exceeds bit length {bit_length}"
        )));
    }
    Ok(ones as f64 / bit_length as f64)
}

/// Binary entropy of `p` in nats, `0 <= p <= 1`, with `0 * ln 0 = 0`.
/// Maximal at `p = 0.5` where it equals `ln 2`.
pub fn bit_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!(
            "probability {p} outside [0, 1]"
        )));
    }
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    Ok(-((1.0 - p) * (1.0 - p).ln() + p * p.ln()))
}

/// Entropy from the integer bit counts. Folding `ones` to
/// `min(ones, L - ones)` first keeps the floating-point path identical for
/// every pair with the same difference weight, which makes the pairwise-scan
/// fast path bit-for-bit equal to [`pair_entropy`].
fn entropy_from_ones(ones: u64, bit_length: u64) -> f64 {
    let o = ones.min(bit_length - ones);
    if o == 0 {
        return 0.0;
    }
    let p = o as f64 / bit_length as f64;
    let pc = (bit_length - o) as f64 / bit_length as f64;
    -(pc * pc.ln() + p * p.ln())
}

/// Heterogeneity entropy between two digests of equal length.
pub fn pair_entropy(a: &Digest, b: &Digest) -> Result<f64> {
    let diff = xor_difference(a, b)?;
    Ok(entropy_from_ones(diff.ones(), diff.bit_length() as u64))
}

/// Generates an iterated chain of `m` digests from a seed message.
pub fn generate_chain(
    alg: HashAlgorithmId,
    seed_message: &[u8],
    m: usize,
) -> Result<HashChain> {
    if m == 0 {
        return Err(Error::InvalidInput("chain length must be at least 1".into()));
    }
    let mut digests = Vec::with_capacity(m);
    digests.push(compute_digest(alg, seed_message));
    for i in 1..m {
        let next = compute_digest(alg, digests[i - 1].as_bytes());
        digests.push(next);
    }
    Ok(HashChain {
        alg,
        seed_message: seed_message.to_vec(),
        digests,
    })
}

/// Entropy between each digest and its predecessor: `m - 1` values for a
/// chain of `m` digests.
pub fn adjacent_entropy_series(chain: &HashChain) -> Result<EntropySeries> {
    if chain.len() < 2 {
        return Err(Error::InvalidInput(
            "adjacent entropy requires a chain of at least 2 digests".into(),
        ));
    }
    let values: Vec<f64> = chain
        .digests
        .windows(2)
        .map(|pair| pair_entropy(&pair[1], &pair[0]))
        .collect::<Result<_>>()?;
    Ok(EntropySeries {
        alg: chain.alg,
        kind: EntropyKind::Adjacent,
        values,
        m: chain.len(),
    })
}

/// Minimum entropy between each digest and every other digest in the chain:
/// `m` values for a chain of `m` digests, from the full O(m^2) pair scan.
///
/// Entropy decreases monotonically as a pair's difference weight moves away
/// from `L / 2`, so the scan tracks only the integer deviation
/// `|2 * ones - L|` per digest and converts the per-digest maximum to an
/// entropy once at the end. Rows of the pair triangle are processed on
/// parallel workers and merged with an elementwise max; the result does not
/// depend on worker count or schedule.
pub fn min_pairwise_entropy(chain: &HashChain) -> Result<EntropySeries> {
    if chain.len() < 2 {
        return Err(Error::InvalidInput(
            "min-pairwise entropy requires a chain of at least 2 digests".into(),
        ));
    }
    let m = chain.len();
    let bits = chain.alg.output_bits() as u32;
    let words = chain.alg.output_bits().div_ceil(64);
    let packed = pack_digests(&chain.digests, words);

    let max_dev: Vec<u32> = (0..m - 1)
        .into_par_iter()
        .fold(
            || vec![0u32; m],
            |mut acc, i| {
                scan_row(&packed, words, bits, i, &mut acc);
                acc
            },
        )
        .reduce(
            || vec![0u32; m],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x = (*x).max(y);
                }
                a
            },
        );

    let values: Vec<f64> = max_dev
        .into_iter()
        .map(|dev| entropy_from_ones(u64::from((bits - dev) / 2), u64::from(bits)))
        .collect();
    Ok(EntropySeries {
        alg: chain.alg,
        kind: EntropyKind::MinPairwise,
        values,
        m,
    })
}

/// Packs each digest into `words` big-endian u64 words, zero-padded. Padding
/// bits XOR to zero between any two digests so popcounts are unaffected.
fn pack_digests(digests: &[Digest], words: usize) -> Vec<u64> {
    let mut packed = vec![0u64; digests.len() * words];
    for (i, d) in digests.iter().enumerate() {
        let row = &mut packed[i * words..(i + 1) * words];
        for (w, chunk) in d.as_bytes().chunks(8).enumerate() {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            row[w] = u64::from_be_bytes(buf);
        }
    }
    packed
}

/// Scans row `i` of the pair triangle (all `j > i`), updating the running
/// per-digest deviation maxima for both endpoints of every pair.
fn scan_row(packed: &[u64], words: usize, bits: u32, i: usize, dev: &mut [u32]) {
    match words {
        3 => scan_row_fixed::<3>(packed, bits, i, dev),
        4 => scan_row_fixed::<4>(packed, bits, i, dev),
        6 => scan_row_fixed::<6>(packed, bits, i, dev),
        8 => scan_row_fixed::<8>(packed, bits, i, dev),
        // Digest lengths are 160..512 bits, i.e. 3, 4, 6, or 8 words.
        _ => unreachable!("unexpected packed digest width: {words} words"),
    }
}

fn scan_row_fixed<const W: usize>(packed: &[u64], bits: u32, i: usize, dev: &mut [u32]) {
    let row: [u64; W] = packed[i * W..(i + 1) * W].try_into().unwrap();
    let mut best = dev[i];
    for (off, other) in packed[(i + 1) * W..].chunks_exact(W).enumerate() {
        let mut ones = 0u32;
        for t in 0..W {
            ones += (row[t] ^ other[t]).count_ones();
        }
        let d = (2 * ones).abs_diff(bits);
        if d > best {
            best = d;
        }
        let j = i + 1 + off;
        if d > dev[j] {
            dev[j] = d;
        }
    }
    dev[i] = best;
}
