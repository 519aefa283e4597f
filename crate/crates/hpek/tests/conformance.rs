//! Conformance of every supported algorithm against reference digests
//! computed with an independent implementation of the published standards.

use hpek::{compute_digest, list_algorithms, HashAlgorithmId};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// xorshift64* byte stream; the reference digests below were produced by an
/// independent implementation fed the identical stream.
fn xorshift64star_stream(seed: u64, nbytes: usize) -> Vec<u8> {
    let mut x = seed;
    let mut out = Vec::with_capacity(nbytes + 8);
    while out.len() < nbytes {
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        out.extend_from_slice(&x.wrapping_mul(0x2545F4914F6CDD1D).to_le_bytes());
    }
    out.truncate(nbytes);
    out
}

const EMPTY_VECTORS: [(&str, &str); 12] = [
    ("SHA-1", "da39a3ee5e6b4b0d3255bfef95601890afd80709"),
    ("SHA-224", "d14a028c2a3a2bc9476102bb288234c415a2b01f828ea62ac5b3e42f"),
    ("SHA-256", "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"),
    ("SHA-384", "38b060a751ac96384cd9327eb1b1e36a21fdb71114be07434c0cc7bf63f6e1da274edebfe76f65fbd51ad2f14898b95b"),
    ("SHA-512", "cf83e1357eefb8bdf1542850d66d8007d620e4050b5715dc83f4a921d36ce9ce47d0d13c5d85f2b0ff8318d2877eec2f63b931bd47417a81a538327af927da3e"),
    ("SHA3-224", "6b4e03423667dbb73b6e15454f0eb1abd4597f9a1b078e3f5b5a6bc7"),
    ("SHA3-256", "a7ffc6f8bf1ed76651c14756a061d662f580ff4de43b49fa82d80a4b80f8434a"),
    ("SHA3-384", "0c63a75b845e4f7d01107d852e4c2485c51a50aaaa94fc61995e71bbee983a2ac3713831264adb47fb6bd1e058d5f004"),
    ("SHA3-512", "a69f73cca23a9ac5c8b567dc185a756e97c982164fe25859e0d1dcc1475c80a615b2123af1f5f94c11e3e9402c3ac558f500199d95b6d3e301758586281dcd26"),
    ("BLAKE2-256", "0e5751c026e543b2e8ab2eb06099daa1d1e5df47778f7787faab45cdf12fe3a8"),
    ("BLAKE2-384", "b32811423377f52d7862286ee1a72ee540524380fda1724a6f25d7978c6fd3244a6caf0498812673c5e05ef583825100"),
    ("BLAKE2-512", "786a02f742015903c6c6fd852552d272912f4740e15847618a86e217f71f5419d25e1031afee585313896444934eb04b903a685b1448b755d56f701afe9be2ce"),
];

const ABC_VECTORS: [(&str, &str); 12] = [
    ("SHA-1", "a9993e364706816aba3e25717850c26c9cd0d89d"),
    ("SHA-224", "23097d223405d8228642a477bda255b32aadbce4bda0b3f7e36c9da7"),
    ("SHA-256", "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"),
    ("SHA-384", "cb00753f45a35e8bb5a03d699ac65007272c32ab0eded1631a8b605a43ff5bed8086072ba1e7cc2358baeca134c825a7"),
    ("SHA-512", "ddaf35a193617abacc417349ae20413112e6fa4e89a97ea20a9eeee64b55d39a2192992a274fc1a836ba3c23a3feebbd454d4423643ce80e2a9ac94fa54ca49f"),
    ("SHA3-224", "e642824c3f8cf24ad09234ee7d3c766fc9a3a5168d0c94ad73b46fdf"),
    ("SHA3-256", "3a985da74fe225b2045c172d6bd390bd855f086e3e9d525b46bfe24511431532"),
    ("SHA3-384", "ec01498288516fc926459f58e2c6ad8df9b473cb0fc08c2596da7cf0e49be4b298d88cea927ac7f539f1edf228376d25"),
    ("SHA3-512", "b751850b1a57168a5693cd924b6b096e08f621827444f70d884f5d0240d2712e10e116e9192af3c91a7ec57647e3934057340b4cf408d5a56592f8274eec53f0"),
    ("BLAKE2-256", "bddd813c634239723171ef3fee98579b94964e3bb1cb3e427262c8c068d52319"),
    ("BLAKE2-384", "6f56a82c8e7ef526dfe182eb5212f7db9df1317e57815dbda46083fc30f54ee6c66ba83be64b302d7cba6ce15bb556f4"),
    ("BLAKE2-512", "ba80a53f981c4d0d6a2797b69f12f6e94c212f14685ac4b74b12bb6fdbffa2d17d87c5392aab792dc252d5de4533cc9518d38aa8dbf1925ab92386edd4009923"),
];

const MIB_VECTORS: [(&str, &str); 12] = [
    ("SHA-1", "7f4f4957acf791b8eab6c58b8e583fab0f3be9ab"),
    ("SHA-224", "1b7f1d1165900a155aba7b120e9b322b74681fb10671ec6a803f61b2"),
    ("SHA-256", "07e6be4717e722132dac92ae5d06eec90301cf7aa4aaf1759d00071b1694e1df"),
    ("SHA-384", "c6094d7336180c5aa39eb988d30e38838170c3fbb88feee7064df9ad4075624719e9cee4123f2d62b52645c444f916ec"),
    ("SHA-512", "bf274073aa2b8d9bb227d46bf7ca036d3c8103821b0e4e319654dfda7e30960141aa4631d4af919db927f5bb66454b3c636540e07d217549acbba7c537a38c54"),
    ("SHA3-224", "b50ee0ed3d9ca330417fbb8b5719f0d6af4813b751769a80b439c552"),
    ("SHA3-256", "6c2658ff38c3cffac46a22eff69b99fa68f60b744afb582f0e22fd959b2e8ff5"),
    ("SHA3-384", "24c9841c3ca8cf03a2cfc267dc872b745bf7150cf55eff89379f58dddafc2b2cf5f1328a89b2ebdeba2ce5237fad7d09"),
    ("SHA3-512", "7a082c424ac5107ca2f547330b420e629c0667ecd04676c26ec0d59c4ea85373e26135967fc717396e4349fa4078b8a35d9d27e6ff5d8eeefc98a4afb4ce3ee1"),
    ("BLAKE2-256", "a271195c969bd895d5b4e8dcd8794e7cc7ead54b7126bec13cc07aef2cc82441"),
    ("BLAKE2-384", "5c458fec1c9d3d21af26fff1ea4dc5ca116c6f848dc8c37a8c47395ae1cbb3960465d66a02bc6dd17717f9752f25be6e"),
    ("BLAKE2-512", "bdc49fee5c464d58b74298f370fd05402cd63afecba6432860634c7bce79af919a6b7bc9743d2bcfcb4589b80f8661a37b82f89f3539fd273ff0f114b4e3b1f8"),
];

fn check_vectors(message: &[u8], vectors: &[(&str, &str)]) {
    for (name, expected) in vectors {
        let alg: HashAlgorithmId = name.parse().unwrap();
        let digest = compute_digest(alg, message);
        assert_eq!(
            digest.to_string(),
            *expected,
            "{name} digest mismatch for {}-byte message",
            message.len()
        );
    }
}

#[test]
fn reference_digests_for_empty_message() {
    check_vectors(b"", &EMPTY_VECTORS);
}

#[test]
fn reference_digests_for_abc() {
    check_vectors(b"abc", &ABC_VECTORS);
}

#[test]
fn reference_digests_for_one_mib_pseudorandom_message() {
    let message = xorshift64star_stream(0x9E3779B97F4A7C15, 1 << 20);
    assert_eq!(message.len(), 1 << 20);
    check_vectors(&message, &MIB_VECTORS);
}

#[test]
fn output_length_contract_on_random_messages() {
    let mut rng = ChaCha20Rng::seed_from_u64(0x1E46);
    for _ in 0..1_000 {
        let len = (rng.next_u32() % 256) as usize;
        let mut message = vec![0u8; len];
        rng.fill_bytes(&mut message);
        for &alg in list_algorithms() {
            assert_eq!(
                compute_digest(alg, &message).bit_length(),
                alg.output_bits()
            );
        }
    }
}
