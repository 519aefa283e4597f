//! A minimal block chain over the proof-of-work search: each block stores a
//! previous-block hash, opaque transactions, a generation time, the nonce
//! found by the search, and the qualifying digest as its block hash.
//!
//! Blocks are linked by recomputing every block's digest chain from its
//! canonical serialization, so any mutation of any field is detectable.

use std::io::{Read, Write};

use crate::bitops::leading_zero_bits;
use crate::error::{Error, Result};
use crate::hash_suite::{compute_digest, Digest, HashAlgorithmId};
use crate::pow::{default_max_iterations, pow_search};

/// File magic for exported chains.
pub const CHAIN_MAGIC: &[u8; 5] = b"HPEK1";

/// One mined block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub previous_hash: Digest,
    pub transactions: Vec<Vec<u8>>,
    /// Unix seconds, UTC.
    pub generation_time: u64,
    pub nonce: u64,
    pub block_hash: Digest,
}

/// An ordered block chain mined at a fixed algorithm and difficulty.
#[derive(Debug, Clone)]
pub struct Chain {
    pub alg: HashAlgorithmId,
    pub k: u32,
    pub blocks: Vec<Block>,
}

/// Why verification rejected a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    /// The genesis block's previous hash is not the all-zero digest.
    GenesisPreviousHash,
    /// A block's previous hash does not equal its predecessor's block hash.
    BrokenLinkage,
    /// A block's content cannot be canonically serialized.
    MalformedContent,
    /// A nonce of zero or beyond the difficulty's iteration bound.
    NonceOutOfRange,
    /// An earlier iteration of the block's digest chain already qualified.
    NonceNotMinimal,
    /// The replayed digest chain does not reproduce the stored block hash.
    HashMismatch,
    /// The stored block hash does not have the required leading zero bits.
    DifficultyNotMet,
}

impl std::fmt::Display for FailureReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FailureReason::GenesisPreviousHash => "genesis previous hash is not all-zero",
            FailureReason::BrokenLinkage => "previous hash does not match prior block",
            FailureReason::MalformedContent => "block content cannot be serialized",
            FailureReason::NonceOutOfRange => "nonce is zero or beyond the iteration bound",
            FailureReason::NonceNotMinimal => "an earlier iteration already met the target",
            FailureReason::HashMismatch => "replayed digest differs from stored block hash",
            FailureReason::DifficultyNotMet => "block hash misses the difficulty target",
        };
        f.write_str(s)
    }
}

/// Outcome of verifying a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainReport {
    pub valid: bool,
    pub failing_index: Option<usize>,
    pub reason: Option<FailureReason>,
}

impl ChainReport {
    fn ok() -> Self {
        ChainReport { valid: true, failing_index: None, reason: None }
    }

    fn fail(index: usize, reason: FailureReason) -> Self {
        ChainReport { valid: false, failing_index: Some(index), reason: Some(reason) }
    }
}

/// Deterministic, injective block serialization:
/// previous hash bytes, 8-byte big-endian generation time, 4-byte big-endian
/// transaction count, then each transaction as a 4-byte big-endian length
/// followed by its bytes.
pub fn canonical_block_content(
    previous_hash: &Digest,
    transactions: &[Vec<u8>],
    generation_time: u64,
) -> Result<Vec<u8>> {
    if transactions.len() > u32::MAX as usize {
        return Err(Error::InvalidInput("too many transactions for one block".into()));
    }
    let mut content = Vec::with_capacity(
        previous_hash.as_bytes().len()
            + 12
            + transactions.iter().map(|t| t.len() + 4).sum::<usize>(),
    );
    content.extend_from_slice(previous_hash.as_bytes());
    content.extend_from_slice(&generation_time.to_be_bytes());
    content.extend_from_slice(&(transactions.len() as u32).to_be_bytes());
    for tx in transactions {
        let len: u32 = tx
            .len()
            .try_into()
            .map_err(|_| Error::InvalidInput("transaction exceeds 2^32 - 1 bytes".into()))?;
        content.extend_from_slice(&len.to_be_bytes());
        content.extend_from_slice(tx);
    }
    Ok(content)
}

/// Inverse of [`canonical_block_content`]; `digest_bytes` fixes the width of
/// the leading previous-hash field.
pub fn decode_block_content(
    content: &[u8],
    digest_bytes: usize,
) -> Result<(Digest, u64, Vec<Vec<u8>>)> {
    let malformed = |what: &str| Error::MalformedChainFile(format!("block content: {what}"));
    if content.len() < digest_bytes + 12 {
        return Err(malformed("truncated header"));
    }
    let previous_hash = Digest::from_bytes(content[..digest_bytes].to_vec());
    let mut at = digest_bytes;
    let generation_time = u64::from_be_bytes(content[at..at + 8].try_into().unwrap());
    at += 8;
    let count = u32::from_be_bytes(content[at..at + 4].try_into().unwrap()) as usize;
    at += 4;
    let mut transactions = Vec::with_capacity(count.min(1 << 16));
    for _ in 0..count {
        if content.len() - at < 4 {
            return Err(malformed("truncated transaction length"));
        }
        let len = u32::from_be_bytes(content[at..at + 4].try_into().unwrap()) as usize;
        at += 4;
        if content.len() - at < len {
            return Err(malformed("truncated transaction body"));
        }
        transactions.push(content[at..at + len].to_vec());
        at += len;
    }
    if at != content.len() {
        return Err(malformed("trailing bytes"));
    }
    Ok((previous_hash, generation_time, transactions))
}

impl Chain {
    pub fn new(alg: HashAlgorithmId, k: u32) -> Result<Self> {
        if k as usize > alg.output_bits() {
            return Err(Error::InvalidInput(format!(
                "difficulty k = {k} exceeds {} digest length",
                alg.name()
            )));
        }
        Ok(Chain { alg, k, blocks: Vec::new() })
    }

    /// Previous hash for the next block: all zeros at genesis, otherwise the
    /// tip's block hash.
    fn next_previous_hash(&self) -> Digest {
        match self.blocks.last() {
            Some(block) => block.block_hash.clone(),
            None => Digest::zero(self.alg),
        }
    }

    /// Mines and appends a block, returning a reference to it.
    pub fn mine_block(
        &mut self,
        transactions: Vec<Vec<u8>>,
        generation_time: u64,
    ) -> Result<&Block> {
        let previous_hash = self.next_previous_hash();
        let content = canonical_block_content(&previous_hash, &transactions, generation_time)?;
        let solution = pow_search(self.alg, &content, self.k, default_max_iterations(self.k))?;
        self.blocks.push(Block {
            previous_hash,
            transactions,
            generation_time,
            nonce: solution.nonce,
            block_hash: solution.digest,
        });
        Ok(self.blocks.last().unwrap())
    }
}

/// Recomputes every block's digest chain from its canonical content and
/// checks linkage, difficulty, nonce minimality, and hash correctness.
/// Failures are reported, not raised.
pub fn verify_chain(chain: &Chain) -> ChainReport {
    let bound = default_max_iterations(chain.k);
    for (i, block) in chain.blocks.iter().enumerate() {
        let expected_prev = if i == 0 {
            Digest::zero(chain.alg)
        } else {
            chain.blocks[i - 1].block_hash.clone()
        };
        if block.previous_hash != expected_prev {
            let reason = if i == 0 {
                FailureReason::GenesisPreviousHash
            } else {
                FailureReason::BrokenLinkage
            };
            return ChainReport::fail(i, reason);
        }
        if block.nonce == 0 || block.nonce > bound {
            return ChainReport::fail(i, FailureReason::NonceOutOfRange);
        }
        let content = match canonical_block_content(
            &block.previous_hash,
            &block.transactions,
            block.generation_time,
        ) {
            Ok(content) => content,
            Err(_) => return ChainReport::fail(i, FailureReason::MalformedContent),
        };
        let mut digest = compute_digest(chain.alg, &content);
        for _ in 1..block.nonce {
            if leading_zero_bits(&digest) >= chain.k {
                return ChainReport::fail(i, FailureReason::NonceNotMinimal);
            }
            digest = compute_digest(chain.alg, digest.as_bytes());
        }
        if digest != block.block_hash {
            return ChainReport::fail(i, FailureReason::HashMismatch);
        }
        if leading_zero_bits(&digest) < chain.k {
            return ChainReport::fail(i, FailureReason::DifficultyNotMet);
        }
    }
    ChainReport::ok()
}

/// Writes the chain in the binary interchange format: magic `HPEK1`, the
/// algorithm name (1-byte length prefix), big-endian `k` and block count,
/// then per block its canonical content (4-byte length prefix), nonce, and
/// block hash.
pub fn export_chain<W: Write>(chain: &Chain, writer: &mut W) -> Result<()> {
    writer.write_all(CHAIN_MAGIC)?;
    let name = chain.alg.name().as_bytes();
    writer.write_all(&[name.len() as u8])?;
    writer.write_all(name)?;
    writer.write_all(&chain.k.to_be_bytes())?;
    writer.write_all(&(chain.blocks.len() as u32).to_be_bytes())?;
    for block in &chain.blocks {
        let content = canonical_block_content(
            &block.previous_hash,
            &block.transactions,
            block.generation_time,
        )?;
        writer.write_all(&(content.len() as u32).to_be_bytes())?;
        writer.write_all(&content)?;
        writer.write_all(&block.nonce.to_be_bytes())?;
        writer.write_all(block.block_hash.as_bytes())?;
    }
    Ok(())
}

/// Reads a chain from the binary interchange format and re-verifies it
/// before accepting.
pub fn import_chain<R: Read>(reader: &mut R) -> Result<Chain> {
    let mut data = Vec::new();
    reader.read_to_end(&mut data)?;
    let malformed = |what: &str| Error::MalformedChainFile(what.to_string());

    let mut at = 0usize;
    let mut take = |n: usize| -> Result<&[u8]> {
        if data.len() - at < n {
            return Err(malformed("truncated file"));
        }
        let slice = &data[at..at + n];
        at += n;
        Ok(slice)
    };

    if take(5)? != CHAIN_MAGIC {
        return Err(malformed("bad magic"));
    }
    let name_len = take(1)?[0] as usize;
    let name = std::str::from_utf8(take(name_len)?)
        .map_err(|_| malformed("algorithm name is not UTF-8"))?;
    let alg: HashAlgorithmId = name.parse()?;
    let k = u32::from_be_bytes(take(4)?.try_into().unwrap());
    let count = u32::from_be_bytes(take(4)?.try_into().unwrap()) as usize;

    let mut chain = Chain::new(alg, k)?;
    for _ in 0..count {
        let content_len = u32::from_be_bytes(take(4)?.try_into().unwrap()) as usize;
        let content = take(content_len)?.to_vec();
        let nonce = u64::from_be_bytes(take(8)?.try_into().unwrap());
        let block_hash = Digest::from_bytes(take(alg.output_bytes())?.to_vec());
        let (previous_hash, generation_time, transactions) =
            decode_block_content(&content, alg.output_bytes())?;
        chain.blocks.push(Block {
            previous_hash,
            transactions,
            generation_time,
            nonce,
            block_hash,
        });
    }
    if at != data.len() {
        return Err(malformed("trailing bytes"));
    }

    let report = verify_chain(&chain);
    if !report.valid {
        return Err(Error::InvalidInput(format!(
            "imported chain fails verification at block {}: {}",
            report.failing_index.unwrap(),
            report.reason.unwrap()
        )));
    }
    Ok(chain)
}
