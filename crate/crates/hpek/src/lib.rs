//! Evaluation toolkit for cryptographic hash algorithms used in
//! proof-of-work systems.
//!
//! Three properties of SHA-1, SHA-2, SHA-3, and BLAKE2b digests are measured:
//!
//! * **Heterogeneity** — the entropy of the differing-bit probability between
//!   digests of an iterated hash chain, both against the immediately previous
//!   digest and as the minimum over all pairs ([`heterogeneity`]).
//! * **Proof-of-work effort** — the distribution of the nonce (iteration
//!   count) needed until a digest starts with `k` zero bits ([`pow`]).
//! * **Computation time** — per-digest wall-clock nanoseconds ([`timing`]).
//!
//! [`blockmodel`] ties the search into a small verifiable block chain, and
//! [`stats`] provides the quartile summaries used throughout.

pub mod bitops;
pub mod blockmodel;
pub mod error;
pub mod hash_suite;
pub mod heterogeneity;
pub mod pow;
pub mod stats;
pub mod timing;

pub use error::{Error, Result};
pub use hash_suite::{compute_digest, list_algorithms, Digest, HashAlgorithmId, HashFamily};
pub use heterogeneity::{EntropyKind, EntropySeries, HashChain};
pub use stats::QuartileSummary;

/// Default seed message for hash chains and proof-of-work content.
pub const DEFAULT_SEED: &[u8] = b"block-0";
