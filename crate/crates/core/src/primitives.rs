//! Extendable-output hashing and keyed pseudorandom functions.
//!
//! Everything above this module talks to the [`Xof`] and [`KeyedPrf`]
//! traits; the concrete backends are SHAKE256 and KMAC256.

use tiny_keccak::{Hasher, IntoXof, Kmac, Shake, Xof as _};

/// An unkeyed hash with arbitrary-length output.
pub trait Xof: Send + Sync {
    /// Hashes the concatenation of `parts` and fills `out`.
    fn hash_into(&self, parts: &[&[u8]], out: &mut [u8]);

    /// Streaming reader over the output of `parts`.
    fn reader(&self, parts: &[&[u8]]) -> Box<dyn XofReader>;

    fn hash(&self, parts: &[&[u8]], len: usize) -> Vec<u8> {
        let mut out = vec![0u8; len];
        self.hash_into(parts, &mut out);
        out
    }
}

pub trait XofReader {
    fn read(&mut self, out: &mut [u8]);
}

/// A keyed function with arbitrary-length output.
pub trait KeyedPrf: Send + Sync {
    fn eval_into(&self, key: &[u8], parts: &[&[u8]], out: &mut [u8]);

    fn eval(&self, key: &[u8], parts: &[&[u8]], len: usize) -> Vec<u8> {
        let mut out = vec![0u8; len];
        self.eval_into(key, parts, &mut out);
        out
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Shake256;

struct ShakeReader(Shake);

impl XofReader for ShakeReader {
    fn read(&mut self, out: &mut [u8]) {
        self.0.squeeze(out);
    }
}

impl Xof for Shake256 {
    fn hash_into(&self, parts: &[&[u8]], out: &mut [u8]) {
        let mut h = Shake::v256();
        for p in parts {
            h.update(p);
        }
        h.finalize(out);
    }

    fn reader(&self, parts: &[&[u8]]) -> Box<dyn XofReader> {
        let mut h = Shake::v256();
        for p in parts {
            h.update(p);
        }
        Box::new(ShakeReader(h))
    }
}

/// KMAC256 in XOF mode with a fixed customization string.
#[derive(Debug, Clone, Copy)]
pub struct Kmac256 {
    customization: &'static [u8],
}

impl Kmac256 {
    pub const fn new(customization: &'static [u8]) -> Self {
        Self { customization }
    }
}

impl Default for Kmac256 {
    fn default() -> Self {
        Self::new(b"sternfs")
    }
}

impl KeyedPrf for Kmac256 {
    fn eval_into(&self, key: &[u8], parts: &[&[u8]], out: &mut [u8]) {
        let mut k = Kmac::v256(key, self.customization);
        for p in parts {
            k.update(p);
        }
        let mut xof = k.into_xof();
        xof.squeeze(out);
    }
}
