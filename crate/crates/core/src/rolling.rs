//! Constant-time block hashes via polynomial prefix hashing.
//!
//! Two independent polynomial hashes over the Mersenne prime 2^61-1 are
//! combined into one 122-bit fingerprint, so any length-`r` block hash comes
//! out of the precomputed prefix tables in O(1). Fingerprints only gate
//! bucketing; equal-fingerprint blocks are always confirmed by comparing the
//! actual contents.

const MOD: u64 = (1 << 61) - 1;
// Fixed bases keep every run of the library bit-identical.
const BASE_A: u64 = 1_000_000_007;
const BASE_B: u64 = 998_244_353;

#[inline]
fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD as u128) as u64
}

#[inline]
fn add_mod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MOD {
        s - MOD
    } else {
        s
    }
}

#[inline]
fn sub_mod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + MOD - b
    }
}

struct Lane {
    prefix: Vec<u64>,
    powers: Vec<u64>,
}

impl Lane {
    fn new(ids: &[u32], base: u64) -> Self {
        let n = ids.len();
        let mut prefix = Vec::with_capacity(n + 1);
        let mut powers = Vec::with_capacity(n + 1);
        prefix.push(0);
        powers.push(1);
        let mut h = 0u64;
        let mut p = 1u64;
        for &id in ids {
            // ids are shifted by 1 so the zero id still contributes.
            h = add_mod(mul_mod(h, base), id as u64 + 1);
            p = mul_mod(p, base);
            prefix.push(h);
            powers.push(p);
        }
        Lane { prefix, powers }
    }

    #[inline]
    fn range(&self, start: usize, len: usize) -> u64 {
        sub_mod(
            self.prefix[start + len],
            mul_mod(self.prefix[start], self.powers[len]),
        )
    }
}

/// Prefix tables for one symbol-id sequence.
pub(crate) struct PrefixHashes {
    a: Lane,
    b: Lane,
}

impl PrefixHashes {
    pub fn new(ids: &[u32]) -> Self {
        PrefixHashes { a: Lane::new(ids, BASE_A), b: Lane::new(ids, BASE_B) }
    }

    /// Combined fingerprint of `ids[start..start+len]`.
    #[inline]
    pub fn fingerprint(&self, start: usize, len: usize) -> u128 {
        ((self.a.range(start, len) as u128) << 64) | self.b.range(start, len) as u128
    }
}

/// `HashMap` state that reuses the fingerprint bits directly; the values
/// hashed here are already uniform 122-bit fingerprints.
#[derive(Clone, Default)]
pub(crate) struct FingerprintState;

pub(crate) struct FingerprintHasher(u64);

impl std::hash::Hasher for FingerprintHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, _bytes: &[u8]) {
        unreachable!("fingerprint keys hash through write_u128");
    }

    fn write_u128(&mut self, value: u128) {
        self.0 = (value as u64) ^ ((value >> 64) as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    }
}

impl std::hash::BuildHasher for FingerprintState {
    type Hasher = FingerprintHasher;

    fn build_hasher(&self) -> FingerprintHasher {
        FingerprintHasher(0)
    }
}
