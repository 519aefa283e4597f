//! Proof-of-work simulation: hash a content block, then iterate the hash on
//! its own output until the first `k` bits of the digest are zero. The number
//! of hash evaluations needed is the nonce; over many independent trials the
//! nonces follow a Geometric(2^-k) law for any well-behaved algorithm.

use rayon::prelude::*;

use crate::bitops::leading_zero_bits;
use crate::error::{Error, Result};
use crate::hash_suite::{compute_digest, Digest, HashAlgorithmId};
use crate::stats::{quartile_summary, QuartileSummary};

/// Parameters of one proof-of-work distribution run.
#[derive(Debug, Clone)]
pub struct PowConfig {
    pub alg: HashAlgorithmId,
    /// Required number of leading zero bits.
    pub k: u32,
    /// Safety bound on hash evaluations per trial.
    pub max_iterations: u64,
    pub trials: u64,
    /// Per-trial content is `content_seed || trial index` (8-byte big-endian).
    pub content_seed: Vec<u8>,
}

impl PowConfig {
    pub fn new(alg: HashAlgorithmId, k: u32, trials: u64, content_seed: Vec<u8>) -> Self {
        PowConfig {
            alg,
            k,
            max_iterations: default_max_iterations(k),
            trials,
            content_seed,
        }
    }
}

/// Iteration bound of 2^(k+8): roughly 256 times the expected nonce, so an
/// honest search exhausting it indicates a misconfiguration rather than bad
/// luck.
pub fn default_max_iterations(k: u32) -> u64 {
    1u64.checked_shl(k + 8).unwrap_or(u64::MAX)
}

/// A successful search: the 1-based iteration count and the digest that met
/// the difficulty target.
#[derive(Debug, Clone)]
pub struct PowSolution {
    pub nonce: u64,
    pub digest: Digest,
}

/// One trial's outcome within a distribution run.
#[derive(Debug, Clone)]
pub struct NonceSample {
    pub trial_index: u64,
    pub nonce: u64,
    pub qualifying_digest: Digest,
}

/// All samples of a distribution run plus the ascending quartiles of the
/// nonce values.
#[derive(Debug, Clone)]
pub struct PowRun {
    pub samples: Vec<NonceSample>,
    pub summary: QuartileSummary,
}

/// Runs the iterated-hash search from `content` until a digest with at least
/// `k` leading zero bits appears, returning the smallest qualifying iteration
/// count (counted from 1).
pub fn pow_search(
    alg: HashAlgorithmId,
    content: &[u8],
    k: u32,
    max_iterations: u64,
) -> Result<PowSolution> {
    if k as usize > alg.output_bits() {
        return Err(Error::InvalidInput(format!(
            "target k = {k} exceeds {} digest length {}",
            alg.name(),
            alg.output_bits()
        )));
    }
    if max_iterations == 0 {
        return Err(Error::InvalidInput("max_iterations must be at least 1".into()));
    }
    let mut digest = compute_digest(alg, content);
    let mut nonce = 1u64;
    loop {
        if leading_zero_bits(&digest) >= k {
            return Ok(PowSolution { nonce, digest });
        }
        if nonce == max_iterations {
            return Err(Error::PowExhausted { iterations: nonce });
        }
        digest = compute_digest(alg, digest.as_bytes());
        nonce += 1;
    }
}

/// Content for trial `trial_index`: the seed followed by the index as 8
/// big-endian bytes.
pub fn trial_content(content_seed: &[u8], trial_index: u64) -> Vec<u8> {
    let mut content = Vec::with_capacity(content_seed.len() + 8);
    content.extend_from_slice(content_seed);
    content.extend_from_slice(&trial_index.to_be_bytes());
    content
}

/// Runs `trials` independent searches and summarizes the nonce distribution.
///
/// Trials are keyed by index and may execute on parallel workers; the sample
/// sequence is identical for any worker count.
pub fn pow_distribution(config: &PowConfig) -> Result<PowRun> {
    if config.trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let samples: Vec<NonceSample> = (0..config.trials)
        .into_par_iter()
        .map(|trial_index| {
            let content = trial_content(&config.content_seed, trial_index);
            match pow_search(config.alg, &content, config.k, config.max_iterations) {
                Ok(solution) => Ok(NonceSample {
                    trial_index,
                    nonce: solution.nonce,
                    qualifying_digest: solution.digest,
                }),
                Err(Error::PowExhausted { iterations }) => {
                    Err(Error::TrialExhausted { trial_index, iterations })
                }
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    let nonces: Vec<f64> = samples.iter().map(|s| s.nonce as f64).collect();
    let summary = quartile_summary(&nonces)?;
    Ok(PowRun { samples, summary })
}
