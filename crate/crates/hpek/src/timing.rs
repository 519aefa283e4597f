//! Wall-clock measurement of single digest invocations.
//!
//! Measurements use the monotonic high-resolution clock and must run on one
//! thread with nothing else contending for the core; callers are responsible
//! for not timing different algorithms concurrently.

use std::hint::black_box;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::hash_suite::{compute_digest, Digest, HashAlgorithmId};

/// One measured digest invocation.
#[derive(Debug, Clone, Copy)]
pub struct TimingSample {
    pub alg: HashAlgorithmId,
    pub nanos: u64,
    pub message_bytes: usize,
}

/// All samples from one measurement batch.
#[derive(Debug, Clone)]
pub struct TimingBatch {
    pub samples: Vec<TimingSample>,
    /// Fold of every computed digest, kept so the hash calls cannot be
    /// optimized away.
    pub checksum: u64,
    /// Smallest positive clock delta observed before the batch.
    pub timer_resolution_ns: u64,
    /// Set when the clock is too coarse for single-digest timing.
    pub resolution_warning: Option<String>,
}

fn fold_digest(acc: u64, digest: &Digest) -> u64 {
    digest
        .as_bytes()
        .iter()
        .fold(acc, |a, &b| a.rotate_left(8) ^ u64::from(b))
}

/// Estimates the monotonic clock's resolution as the smallest positive delta
/// between consecutive readings.
pub fn estimate_timer_resolution_ns() -> u64 {
    let mut best = u64::MAX;
    for _ in 0..4096 {
        let t0 = Instant::now();
        let t1 = Instant::now();
        let delta = t1.duration_since(t0).as_nanos() as u64;
        if delta > 0 && delta < best {
            best = delta;
        }
    }
    if best == u64::MAX {
        0
    } else {
        best
    }
}

/// Times `reps` single-digest invocations of `alg` over `message`, after
/// `warmup` unmeasured invocations.
pub fn time_digest_batch(
    alg: HashAlgorithmId,
    message: &[u8],
    reps: usize,
    warmup: usize,
) -> Result<TimingBatch> {
    if reps == 0 {
        return Err(Error::InvalidInput("reps must be at least 1".into()));
    }
    let timer_resolution_ns = estimate_timer_resolution_ns();
    let resolution_warning = if timer_resolution_ns > 1_000 {
        Some(format!(
            "clock resolution {timer_resolution_ns} ns is coarser than 1 us; \
             single-digest timings will quantize"
        ))
    } else {
        None
    };

    let mut checksum = 0u64;
    for _ in 0..warmup {
        let d = black_box(compute_digest(alg, black_box(message)));
        checksum = fold_digest(checksum, &d);
    }

    let mut samples = Vec::with_capacity(reps);
    for _ in 0..reps {
        let start = Instant::now();
        let d = black_box(compute_digest(alg, black_box(message)));
        let nanos = start.elapsed().as_nanos() as u64;
        checksum = fold_digest(checksum, &d);
        samples.push(TimingSample {
            alg,
            nanos,
            message_bytes: message.len(),
        });
    }
    Ok(TimingBatch {
        samples,
        checksum,
        timer_resolution_ns,
        resolution_warning,
    })
}
