//! Uniform black-box access to the twelve evaluated digest algorithms.
//!
//! The algorithms are consumed through vetted implementations of the
//! published standards (FIPS 180-4, FIPS 202, RFC 7693); nothing here
//! re-implements compression internals. `BLAKE2-*` means unkeyed BLAKE2b
//! with the digest length parameter set to 32/48/64 bytes.

use std::fmt;
use std::str::FromStr;

use blake2::digest::consts::{U32, U48, U64};
use blake2::Blake2b;
use sha1::Sha1;
use sha2::{Digest as _, Sha224, Sha256, Sha384, Sha512};
use sha3::{Sha3_224, Sha3_256, Sha3_384, Sha3_512};

use crate::error::{Error, Result};

/// Algorithm family of a digest identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HashFamily {
    Sha1,
    Sha2,
    Sha3,
    Blake2,
}

/// One of the twelve evaluated hash algorithms.
///
/// The variants cover SHA-1 (160 bits), SHA-2 and SHA-3 at 224/256/384/512
/// bits, and BLAKE2b at 256/384/512 bits. [`HashAlgorithmId::ALL`] lists
/// them in the canonical reporting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HashAlgorithmId {
    Sha1,
    Sha224,
    Sha256,
    Sha384,
    Sha512,
    Sha3_224,
    Sha3_256,
    Sha3_384,
    Sha3_512,
    Blake2b256,
    Blake2b384,
    Blake2b512,
}

impl HashAlgorithmId {
    /// All twelve algorithms in reporting order.
    pub const ALL: [HashAlgorithmId; 12] = [
        HashAlgorithmId::Sha1,
        HashAlgorithmId::Sha224,
        HashAlgorithmId::Sha256,
        HashAlgorithmId::Sha384,
        HashAlgorithmId::Sha512,
        HashAlgorithmId::Sha3_224,
        HashAlgorithmId::Sha3_256,
        HashAlgorithmId::Sha3_384,
        HashAlgorithmId::Sha3_512,
        HashAlgorithmId::Blake2b256,
        HashAlgorithmId::Blake2b384,
        HashAlgorithmId::Blake2b512,
    ];

    /// The three algorithms most common in deployed systems, one per family
    /// at 256 bits.
    pub const MAINSTREAM: [HashAlgorithmId; 3] = [
        HashAlgorithmId::Sha256,
        HashAlgorithmId::Sha3_256,
        HashAlgorithmId::Blake2b256,
    ];

    pub fn family(self) -> HashFamily {
        match self {
            HashAlgorithmId::Sha1 => HashFamily::Sha1,
            HashAlgorithmId::Sha224
            | HashAlgorithmId::Sha256
            | HashAlgorithmId::Sha384
            | HashAlgorithmId::Sha512 => HashFamily::Sha2,
            HashAlgorithmId::Sha3_224
            | HashAlgorithmId::Sha3_256
            | HashAlgorithmId::Sha3_384
            | HashAlgorithmId::Sha3_512 => HashFamily::Sha3,
            HashAlgorithmId::Blake2b256
            | HashAlgorithmId::Blake2b384
            | HashAlgorithmId::Blake2b512 => HashFamily::Blake2,
        }
    }

    /// Declared digest length in bits.
    pub fn output_bits(self) -> usize {
        match self {
            HashAlgorithmId::Sha1 => 160,
            HashAlgorithmId::Sha224 | HashAlgorithmId::Sha3_224 => 224,
            HashAlgorithmId::Sha256
            | HashAlgorithmId::Sha3_256
            | HashAlgorithmId::Blake2b256 => 256,
            HashAlgorithmId::Sha384
            | HashAlgorithmId::Sha3_384
            | HashAlgorithmId::Blake2b384 => 384,
            HashAlgorithmId::Sha512
            | HashAlgorithmId::Sha3_512
            | HashAlgorithmId::Blake2b512 => 512,
        }
    }

    pub fn output_bytes(self) -> usize {
        self.output_bits() / 8
    }

    /// Canonical name as printed in reports: `"SHA-256"`, `"SHA3-512"`,
    /// `"BLAKE2-384"`, ...
    pub fn name(self) -> &'static str {
        match self {
            HashAlgorithmId::Sha1 => "SHA-1",
            HashAlgorithmId::Sha224 => "SHA-224",
            HashAlgorithmId::Sha256 => "SHA-256",
            HashAlgorithmId::Sha384 => "SHA-384",
            HashAlgorithmId::Sha512 => "SHA-512",
            HashAlgorithmId::Sha3_224 => "SHA3-224",
            HashAlgorithmId::Sha3_256 => "SHA3-256",
            HashAlgorithmId::Sha3_384 => "SHA3-384",
            HashAlgorithmId::Sha3_512 => "SHA3-512",
            HashAlgorithmId::Blake2b256 => "BLAKE2-256",
            HashAlgorithmId::Blake2b384 => "BLAKE2-384",
            HashAlgorithmId::Blake2b512 => "BLAKE2-512",
        }
    }
}

impl fmt::Display for HashAlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HashAlgorithmId {
    type Err = Error;

    /// Parses a canonical algorithm name, case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        HashAlgorithmId::ALL
            .into_iter()
            .find(|alg| alg.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

/// A fixed-length digest value. Immutable once constructed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digest {
    bytes: Box<[u8]>,
}

impl Digest {
    pub fn from_bytes(bytes: impl Into<Box<[u8]>>) -> Self {
        Digest { bytes: bytes.into() }
    }

    /// The all-zero digest of the given algorithm's output length.
    pub fn zero(alg: HashAlgorithmId) -> Self {
        Digest { bytes: vec![0u8; alg.output_bytes()].into() }
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn bit_length(&self) -> usize {
        self.bytes.len() * 8
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bytes.iter() {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digest({self})")
    }
}

/// Computes the digest of `message` under the named algorithm.
///
/// Deterministic, and bit-for-bit equal to the published standard for every
/// algorithm. Messages are raw bytes; callers hashing text should pass its
/// UTF-8 encoding without a terminator.
pub fn compute_digest(alg: HashAlgorithmId, message: &[u8]) -> Digest {
    let bytes: Vec<u8> = match alg {
        HashAlgorithmId::Sha1 => Sha1::digest(message).to_vec(),
        HashAlgorithmId::Sha224 => Sha224::digest(message).to_vec(),
        HashAlgorithmId::Sha256 => Sha256::digest(message).to_vec(),
        HashAlgorithmId::Sha384 => Sha384::digest(message).to_vec(),
        HashAlgorithmId::Sha512 => Sha512::digest(message).to_vec(),
        HashAlgorithmId::Sha3_224 => Sha3_224::digest(message).to_vec(),
        HashAlgorithmId::Sha3_256 => Sha3_256::digest(message).to_vec(),
        HashAlgorithmId::Sha3_384 => Sha3_384::digest(message).to_vec(),
        HashAlgorithmId::Sha3_512 => Sha3_512::digest(message).to_vec(),
        HashAlgorithmId::Blake2b256 => Blake2b::<U32>::digest(message).to_vec(),
        HashAlgorithmId::Blake2b384 => Blake2b::<U48>::digest(message).to_vec(),
        HashAlgorithmId::Blake2b512 => Blake2b::<U64>::digest(message).to_vec(),
    };
    debug_assert_eq!(bytes.len(), alg.output_bytes());
    Digest::from_bytes(bytes)
}

/// The twelve algorithm identifiers in reporting order.
pub fn list_algorithms() -> &'static [HashAlgorithmId] {
    &HashAlgorithmId::ALL
}
