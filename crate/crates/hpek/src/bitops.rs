//! Bit-level primitives on digests: XOR difference, population count, and
//! leading-zero-bit count.
//!
//! Bit order convention: "first k bits" means digest byte 0 first,
//! most-significant bit first within each byte — the order in which a
//! digest's conventional hex rendering is read.

use crate::error::{Error, Result};
use crate::hash_suite::Digest;

/// XOR of two equal-length digests together with its Hamming weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitDifference {
    xor_bytes: Vec<u8>,
    ones: u64,
    bit_length: usize,
}

impl BitDifference {
    pub fn xor_bytes(&self) -> &[u8] {
        &self.xor_bytes
    }

    /// Number of differing bits.
    pub fn ones(&self) -> u64 {
        self.ones
    }

    pub fn bit_length(&self) -> usize {
        self.bit_length
    }
}

/// Byte-wise XOR of two digests of equal bit length.
pub fn xor_difference(a: &Digest, b: &Digest) -> Result<BitDifference> {
    if a.bit_length() != b.bit_length() {
        return Err(Error::LengthMismatch {
            left: a.bit_length(),
            right: b.bit_length(),
        });
    }
    let xor_bytes: Vec<u8> = a
        .as_bytes()
        .iter()
        .zip(b.as_bytes())
        .map(|(x, y)| x ^ y)
        .collect();
    let ones = ones_count(&xor_bytes);
    Ok(BitDifference {
        ones,
        bit_length: a.bit_length(),
        xor_bytes,
    })
}

/// Hamming weight of a byte string.
pub fn ones_count(bytes: &[u8]) -> u64 {
    let mut chunks = bytes.chunks_exact(8);
    let mut total: u64 = 0;
    for chunk in &mut chunks {
        let word = u64::from_ne_bytes(chunk.try_into().unwrap());
        total += u64::from(word.count_ones());
    }
    for &b in chunks.remainder() {
        total += u64::from(b.count_ones());
    }
    total
}

/// Number of consecutive zero bits at the front of the digest, scanning
/// byte 0 MSB-first. Returns the full bit length for the all-zero digest.
pub fn leading_zero_bits(d: &Digest) -> u32 {
    let mut count = 0u32;
    for &b in d.as_bytes() {
        let lz = b.leading_zeros();
        count += lz;
        if lz < 8 {
            break;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hash_suite::{compute_digest, HashAlgorithmId};
    use proptest::prelude::*;
    use rand::{RngCore, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn naive_ones(bytes: &[u8]) -> u64 {
        let mut n = 0;
        for &b in bytes {
            for bit in 0..8 {
                n += u64::from((b >> bit) & 1);
            }
        }
        n
    }

    fn naive_leading_zeros(bytes: &[u8]) -> u32 {
        let mut n = 0;
        for &b in bytes {
            for bit in (0..8).rev() {
                if (b >> bit) & 1 == 1 {
                    return n;
                }
                n += 1;
            }
        }
        n
    }

    #[test]
    fn xor_identity_and_complement() {
        let x = compute_digest(HashAlgorithmId::Sha256, b"x");
        let same = xor_difference(&x, &x).unwrap();
        assert_eq!(same.ones(), 0);
        assert!(same.xor_bytes().iter().all(|&b| b == 0));

        let zeros = Digest::from_bytes(vec![0u8; 32]);
        let ones = Digest::from_bytes(vec![0xFFu8; 32]);
        let diff = xor_difference(&zeros, &ones).unwrap();
        assert_eq!(diff.ones(), 256);
        assert!(diff.xor_bytes().iter().all(|&b| b == 0xFF));
    }

    #[test]
    fn xor_nibble_complement() {
        let a = Digest::from_bytes(vec![0xF0u8]);
        let b = Digest::from_bytes(vec![0x0Fu8]);
        let diff = xor_difference(&a, &b).unwrap();
        assert_eq!(diff.xor_bytes(), &[0xFF]);
        assert_eq!(diff.ones(), 8);
    }

    #[test]
    fn xor_length_mismatch_is_rejected() {
        let a = compute_digest(HashAlgorithmId::Sha256, b"a");
        let b = compute_digest(HashAlgorithmId::Sha512, b"b");
        assert!(matches!(
            xor_difference(&a, &b),
            Err(Error::LengthMismatch { left: 256, right: 512 })
        ));
    }

    #[test]
    fn ones_count_basics() {
        assert_eq!(ones_count(&[0u8; 32]), 0);
        assert_eq!(ones_count(&[0x01, 0x02, 0x04]), 3);
        assert_eq!(ones_count(&[]), 0);
    }

    #[test]
    fn ones_count_matches_bit_scan_on_random_strings() {
        let mut rng = ChaCha20Rng::seed_from_u64(0xB17C0);
        for _ in 0..2_000 {
            let len = (rng.next_u32() % 96) as usize;
            let mut buf = vec![0u8; len];
            rng.fill_bytes(&mut buf);
            assert_eq!(ones_count(&buf), naive_ones(&buf));
        }
    }

    #[test]
    fn leading_zero_bits_cases() {
        let all_zero = Digest::from_bytes(vec![0u8; 32]);
        assert_eq!(leading_zero_bits(&all_zero), 256);

        let mut bytes = vec![0xAAu8; 32];
        bytes[0] = 0x01;
        assert_eq!(leading_zero_bits(&Digest::from_bytes(bytes)), 7);

        let d = Digest::from_bytes(vec![0x00, 0x3F, 0x12, 0x90]);
        assert_eq!(leading_zero_bits(&d), 10);
    }

    proptest! {
        #[test]
        fn xor_symmetry(a in proptest::collection::vec(any::<u8>(), 1..64),
                        b in proptest::collection::vec(any::<u8>(), 1..64)) {
            let n = a.len().min(b.len());
            let da = Digest::from_bytes(a[..n].to_vec());
            let db = Digest::from_bytes(b[..n].to_vec());
            let ab = xor_difference(&da, &db).unwrap();
            let ba = xor_difference(&db, &da).unwrap();
            prop_assert_eq!(ab.ones(), ba.ones());
            prop_assert_eq!(ab.xor_bytes(), ba.xor_bytes());
        }

        #[test]
        fn xor_zero_iff_equal(a in proptest::collection::vec(any::<u8>(), 1..64),
                              b in proptest::collection::vec(any::<u8>(), 1..64)) {
            let n = a.len().min(b.len());
            let da = Digest::from_bytes(a[..n].to_vec());
            let db = Digest::from_bytes(b[..n].to_vec());
            let diff = xor_difference(&da, &db).unwrap();
            prop_assert_eq!(diff.ones() == 0, da == db);
        }

        #[test]
        fn hamming_triangle_inequality(a in proptest::collection::vec(any::<u8>(), 32),
                                       b in proptest::collection::vec(any::<u8>(), 32),
                                       c in proptest::collection::vec(any::<u8>(), 32)) {
            let (da, db, dc) = (
                Digest::from_bytes(a),
                Digest::from_bytes(b),
                Digest::from_bytes(c),
            );
            let ac = xor_difference(&da, &dc).unwrap().ones();
            let ab = xor_difference(&da, &db).unwrap().ones();
            let bc = xor_difference(&db, &dc).unwrap().ones();
            prop_assert!(ac <= ab + bc);
        }

        #[test]
        fn ones_count_equals_naive(bytes in proptest::collection::vec(any::<u8>(), 0..256)) {
            prop_assert_eq!(ones_count(&bytes), naive_ones(&bytes));
        }

        #[test]
        fn leading_zeros_equals_naive(bytes in proptest::collection::vec(any::<u8>(), 0..64)) {
            let d = Digest::from_bytes(bytes.clone());
            prop_assert_eq!(leading_zero_bits(&d), naive_leading_zeros(&bytes));
        }

        // leading_zero_bits(d) >= k exactly when the first k bits, read as a
        // masked prefix, are zero.
        #[test]
        fn prefix_mask_equivalence(bytes in proptest::collection::vec(any::<u8>(), 1..64),
                                   k in 0u32..64) {
            let d = Digest::from_bytes(bytes.clone());
            let k = k.min(d.bit_length() as u32);
            let full = (k / 8) as usize;
            let rem = k % 8;
            let mut prefix_zero = bytes[..full].iter().all(|&b| b == 0);
            if prefix_zero && rem > 0 {
                prefix_zero = bytes[full] >> (8 - rem) == 0;
            }
            prop_assert_eq!(leading_zero_bits(&d) >= k, prefix_zero);
        }
    }
}
