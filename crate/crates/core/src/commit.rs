//! Commitment functions `G: R -> M` and their three instantiations.
//!
//! * [`CommitmentScheme::hash`]: SHAKE256 over a domain tag and the input.
//!   This is what production signing uses.
//! * [`CommitmentScheme::srf`]: a lazily sampled small-range function `h ∘ g`.
//! * [`CommitmentScheme::feistel`]: a keyed 4-round Feistel permutation on
//!   `2m`-bit blocks, which can also be inverted.
//!
//! Every input to a commitment is a fixed-width byte string of
//! `input_len` bytes; shorter slot encodings are zero-padded with
//! [`pad_response`] first.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::gf2::{bytes_for, BitVector};
use crate::primitives::{KeyedPrf, Kmac256, Shake256, Xof};

const HASH_COMMIT_DOMAIN: &[u8] = b"sternfs/commit/v1";

/// Domain separation for a single commitment: which scheme, which
/// repetition, which response slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CommitTag {
    pub scheme: u8,
    pub repetition: u16,
    pub slot: u8,
}

impl CommitTag {
    pub fn to_bytes(self) -> [u8; 4] {
        let r = self.repetition.to_le_bytes();
        [self.scheme, r[0], r[1], self.slot]
    }
}

/// Zero-extends a slot encoding to `target_len` bytes.
pub fn pad_response(z: &[u8], target_len: usize) -> Result<Vec<u8>> {
    if z.len() > target_len {
        return Err(Error::Length {
            expected: target_len,
            actual: z.len(),
        });
    }
    let mut out = Vec::with_capacity(target_len);
    out.extend_from_slice(z);
    out.resize(target_len, 0);
    Ok(out)
}

/// Inverse of [`pad_response`]: keeps the first `len` bytes and rejects any
/// nonzero byte in the suffix.
pub fn strip_pad(padded: &[u8], len: usize) -> Result<&[u8]> {
    if padded.len() < len {
        return Err(Error::Truncated);
    }
    let (head, tail) = padded.split_at(len);
    if tail.iter().any(|&b| b != 0) {
        return Err(Error::Malformed("nonzero padding"));
    }
    Ok(head)
}

/// `SHAKE256(domain || z)` squeezed to `output_len` bytes.
pub fn hash_commit(xof: &dyn Xof, domain: &[u8], z: &[u8], output_len: usize) -> Vec<u8> {
    xof.hash(&[HASH_COMMIT_DOMAIN, domain, z], output_len)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommitmentKind {
    Hash,
    Srf,
    Feistel,
}

impl CommitmentKind {
    pub fn name(self) -> &'static str {
        match self {
            CommitmentKind::Hash => "hash",
            CommitmentKind::Srf => "srf",
            CommitmentKind::Feistel => "feistel",
        }
    }
}

#[derive(Clone)]
enum Backend {
    Hash(Arc<dyn Xof>),
    Srf(Arc<SmallRangeFunction>),
    Feistel(Arc<FeistelPermutation>),
}

/// A deterministic commitment function with fixed input and output widths.
#[derive(Clone)]
pub struct CommitmentScheme {
    input_len: usize,
    output_len: usize,
    backend: Backend,
}

impl fmt::Debug for CommitmentScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CommitmentScheme")
            .field("kind", &self.kind())
            .field("input_len", &self.input_len)
            .field("output_len", &self.output_len)
            .finish()
    }
}

impl CommitmentScheme {
    pub fn hash(input_len: usize, output_len: usize) -> Self {
        Self::hash_with(Arc::new(Shake256), input_len, output_len)
    }

    pub fn hash_with(xof: Arc<dyn Xof>, input_len: usize, output_len: usize) -> Self {
        Self {
            input_len,
            output_len,
            backend: Backend::Hash(xof),
        }
    }

    /// Commitments through `srf`. The tag is folded into the input of `g`.
    pub fn srf(srf: SmallRangeFunction, input_len: usize) -> Self {
        Self {
            input_len,
            output_len: srf.output_len(),
            backend: Backend::Srf(Arc::new(srf)),
        }
    }

    /// Commitments through a Feistel permutation. The tag is ignored: the
    /// slot-type byte inside each encoding already separates slots, and the
    /// map must stay a single permutation of the block space.
    pub fn feistel(p: FeistelPermutation) -> Self {
        let len = p.block_bytes();
        Self {
            input_len: len,
            output_len: len,
            backend: Backend::Feistel(Arc::new(p)),
        }
    }

    pub fn kind(&self) -> CommitmentKind {
        match self.backend {
            Backend::Hash(_) => CommitmentKind::Hash,
            Backend::Srf(_) => CommitmentKind::Srf,
            Backend::Feistel(_) => CommitmentKind::Feistel,
        }
    }

    pub fn input_len(&self) -> usize {
        self.input_len
    }

    pub fn output_len(&self) -> usize {
        self.output_len
    }

    pub fn feistel_permutation(&self) -> Option<&FeistelPermutation> {
        match &self.backend {
            Backend::Feistel(p) => Some(p),
            _ => None,
        }
    }

    /// `G(input)` for an input of exactly `input_len` bytes.
    pub fn evaluate(&self, tag: CommitTag, input: &[u8]) -> Result<Vec<u8>> {
        if input.len() != self.input_len {
            return Err(Error::Length {
                expected: self.input_len,
                actual: input.len(),
            });
        }
        match &self.backend {
            Backend::Hash(xof) => Ok(hash_commit(
                xof.as_ref(),
                &tag.to_bytes(),
                input,
                self.output_len,
            )),
            Backend::Srf(srf) => Ok(srf.evaluate_tagged(&tag.to_bytes(), input)),
            Backend::Feistel(p) => p.forward_bytes(input),
        }
    }

    /// Pads `z` to `input_len` and commits to it.
    pub fn commit(&self, tag: CommitTag, z: &[u8]) -> Result<Vec<u8>> {
        self.evaluate(tag, &pad_response(z, self.input_len)?)
    }

    /// `G⁻¹(x)`, available only for the Feistel instantiation.
    pub fn invert(&self, x: &[u8]) -> Result<Vec<u8>> {
        match &self.backend {
            Backend::Feistel(p) => p.inverse_bytes(x),
            _ => Err(Error::NotInvertible),
        }
    }
}

/// One round function of a Feistel network, mapping an `m`-bit half-block to
/// an `m`-bit output. Rounds are numbered 1 to 4.
pub trait RoundFunction: Send + Sync {
    fn round(&self, round: u8, half: &BitVector) -> BitVector;
}

/// Round functions drawn from a keyed PRF, `f_i(x) = PRF_K(i || m || x)`.
#[derive(Clone)]
pub struct PrfRoundFunction {
    key: Vec<u8>,
    prf: Arc<dyn KeyedPrf>,
}

impl PrfRoundFunction {
    pub fn new(key: &[u8]) -> Self {
        Self::with_prf(key, Arc::new(Kmac256::new(b"sternfs/feistel")))
    }

    pub fn with_prf(key: &[u8], prf: Arc<dyn KeyedPrf>) -> Self {
        Self {
            key: key.to_vec(),
            prf,
        }
    }
}

impl RoundFunction for PrfRoundFunction {
    fn round(&self, round: u8, half: &BitVector) -> BitVector {
        let m = half.len();
        let mut out = self.prf.eval(
            &self.key,
            &[&[round], &(m as u32).to_le_bytes(), &half.to_bytes()],
            bytes_for(m),
        );
        if !m.is_multiple_of(8) {
            if let Some(last) = out.last_mut() {
                *last &= (1u8 << (m % 8)) - 1;
            }
        }
        BitVector::from_bytes(&out, m).expect("masked PRF output")
    }
}

/// The all-zero round function. Four zero rounds compose to the identity.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroRoundFunction;

impl RoundFunction for ZeroRoundFunction {
    fn round(&self, _round: u8, half: &BitVector) -> BitVector {
        BitVector::zeros(half.len())
    }
}

/// Four-round Feistel permutation on `2m`-bit blocks.
///
/// Each round maps `(L, R)` to `(R, L ⊕ f_i(R))`. Bits `0..m` of a block are
/// the left half.
#[derive(Clone)]
pub struct FeistelPermutation {
    half_bits: usize,
    round_fn: Arc<dyn RoundFunction>,
}

impl fmt::Debug for FeistelPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FeistelPermutation")
            .field("half_bits", &self.half_bits)
            .finish_non_exhaustive()
    }
}

pub const FEISTEL_ROUNDS: u8 = 4;

impl FeistelPermutation {
    pub fn keyed(half_bits: usize, key: &[u8]) -> Result<Self> {
        Self::with_round_fn(half_bits, Arc::new(PrfRoundFunction::new(key)))
    }

    pub fn with_round_fn(half_bits: usize, round_fn: Arc<dyn RoundFunction>) -> Result<Self> {
        if half_bits == 0 {
            return Err(Error::InvalidParameter(
                "Feistel half-width must be positive".into(),
            ));
        }
        Ok(Self {
            half_bits,
            round_fn,
        })
    }

    /// Smallest keyed permutation whose block holds `bytes` bytes.
    pub fn for_block_bytes(bytes: usize, key: &[u8]) -> Result<Self> {
        Self::keyed(bytes * 4, key)
    }

    pub fn half_bits(&self) -> usize {
        self.half_bits
    }

    pub fn block_bits(&self) -> usize {
        2 * self.half_bits
    }

    pub fn block_bytes(&self) -> usize {
        bytes_for(self.block_bits())
    }

    fn split(&self, block: &BitVector) -> Result<(BitVector, BitVector)> {
        let m = self.half_bits;
        if block.len() != 2 * m {
            return Err(Error::Dimension {
                expected: 2 * m,
                actual: block.len(),
            });
        }
        let mut l = BitVector::zeros(m);
        let mut r = BitVector::zeros(m);
        for i in block.support() {
            if i < m {
                l.set(i, true);
            } else {
                r.set(i - m, true);
            }
        }
        Ok((l, r))
    }

    fn join(&self, l: &BitVector, r: &BitVector) -> BitVector {
        let m = self.half_bits;
        let mut out = BitVector::zeros(2 * m);
        for i in l.support() {
            out.set(i, true);
        }
        for i in r.support() {
            out.set(m + i, true);
        }
        out
    }

    pub fn forward(&self, block: &BitVector) -> Result<BitVector> {
        let (mut l, mut r) = self.split(block)?;
        for round in 1..=FEISTEL_ROUNDS {
            let f = self.round_fn.round(round, &r);
            let next_r = l.xor(&f)?;
            l = std::mem::replace(&mut r, next_r);
        }
        Ok(self.join(&l, &r))
    }

    pub fn inverse(&self, block: &BitVector) -> Result<BitVector> {
        let (mut l, mut r) = self.split(block)?;
        for round in (1..=FEISTEL_ROUNDS).rev() {
            let f = self.round_fn.round(round, &l);
            let prev_l = r.xor(&f)?;
            r = std::mem::replace(&mut l, prev_l);
        }
        Ok(self.join(&l, &r))
    }

    pub fn forward_bytes(&self, block: &[u8]) -> Result<Vec<u8>> {
        let v = BitVector::from_bytes(block, self.block_bits())?;
        Ok(self.forward(&v)?.to_bytes())
    }

    pub fn inverse_bytes(&self, block: &[u8]) -> Result<Vec<u8>> {
        let v = BitVector::from_bytes(block, self.block_bits())?;
        Ok(self.inverse(&v)?.to_bytes())
    }
}

pub fn feistel_forward(p: &FeistelPermutation, x: &BitVector) -> Result<BitVector> {
    p.forward(x)
}

pub fn feistel_inverse(p: &FeistelPermutation, x: &BitVector) -> Result<BitVector> {
    p.inverse(x)
}

#[derive(Default)]
struct SrfMemo {
    g: HashMap<Vec<u8>, u64>,
    h: HashMap<u64, Vec<u8>>,
    issued: HashSet<Vec<u8>>,
}

/// A function `h ∘ g` where `g` maps inputs uniformly into `0..range` and
/// `h` is a random injection from `0..range` into `output_len`-byte strings.
///
/// Both halves are derived from the seed on demand and memoized, so only the
/// points actually queried are ever materialized. `h` draws candidate values
/// from the seed and rejects any already issued to another index.
pub struct SmallRangeFunction {
    seed: [u8; 32],
    range: u64,
    output_len: usize,
    prf: Kmac256,
    memo: Mutex<SrfMemo>,
}

impl fmt::Debug for SmallRangeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmallRangeFunction")
            .field("range", &self.range)
            .field("output_len", &self.output_len)
            .finish_non_exhaustive()
    }
}

impl SmallRangeFunction {
    pub fn new(seed: [u8; 32], range: u64, output_len: usize) -> Result<Self> {
        if range == 0 {
            return Err(Error::InvalidParameter("SRF range must be positive".into()));
        }
        let bits = output_len.saturating_mul(8);
        if bits < 64 && range > (1u64 << bits) {
            return Err(Error::InvalidParameter(format!(
                "SRF range {range} exceeds the {output_len}-byte output space"
            )));
        }
        Ok(Self {
            seed,
            range,
            output_len,
            prf: Kmac256::new(b"sternfs/srf"),
            memo: Mutex::new(SrfMemo::default()),
        })
    }

    pub fn range(&self) -> u64 {
        self.range
    }

    pub fn output_len(&self) -> usize {
        self.output_len
    }

    fn sample_g(&self, key: &[u8]) -> u64 {
        // Rejection sampling keeps g exactly uniform on 0..range.
        let zone = u64::MAX - (u64::MAX % self.range);
        for ctr in 0u32.. {
            let b = self
                .prf
                .eval(&self.seed, &[b"g", &ctr.to_le_bytes(), key], 8);
            let v = u64::from_le_bytes(b.try_into().expect("8 bytes"));
            if v < zone {
                return v % self.range;
            }
        }
        unreachable!()
    }

    fn sample_h(&self, index: u64, issued: &HashSet<Vec<u8>>) -> Vec<u8> {
        for attempt in 0u32.. {
            let v = self.prf.eval(
                &self.seed,
                &[b"h", &index.to_le_bytes(), &attempt.to_le_bytes()],
                self.output_len,
            );
            if !issued.contains(&v) {
                return v;
            }
        }
        unreachable!()
    }

    /// `g(x)`.
    pub fn inner(&self, x: &[u8]) -> u64 {
        self.inner_tagged(&[], x)
    }

    fn inner_tagged(&self, tag: &[u8], x: &[u8]) -> u64 {
        let mut key = Vec::with_capacity(tag.len() + x.len() + 1);
        key.push(tag.len() as u8);
        key.extend_from_slice(tag);
        key.extend_from_slice(x);
        let mut memo = self.memo.lock().expect("srf memo poisoned");
        if let Some(&v) = memo.g.get(&key) {
            return v;
        }
        let v = self.sample_g(&key);
        memo.g.insert(key, v);
        v
    }

    /// `h(index)`.
    pub fn outer(&self, index: u64) -> Vec<u8> {
        assert!(index < self.range, "index outside the SRF range");
        let mut memo = self.memo.lock().expect("srf memo poisoned");
        if let Some(v) = memo.h.get(&index) {
            return v.clone();
        }
        let v = self.sample_h(index, &memo.issued);
        memo.issued.insert(v.clone());
        memo.h.insert(index, v.clone());
        v
    }

    pub fn evaluate(&self, x: &[u8]) -> Vec<u8> {
        self.outer(self.inner(x))
    }

    pub(crate) fn evaluate_tagged(&self, tag: &[u8], x: &[u8]) -> Vec<u8> {
        self.outer(self.inner_tagged(tag, x))
    }

    /// Number of distinct `h` values issued so far.
    pub fn image_size(&self) -> usize {
        self.memo.lock().expect("srf memo poisoned").h.len()
    }

    /// True when every memoized `h` value is distinct.
    pub fn is_injective_so_far(&self) -> bool {
        let memo = self.memo.lock().expect("srf memo poisoned");
        let distinct: HashSet<&Vec<u8>> = memo.h.values().collect();
        distinct.len() == memo.h.len()
    }
}

/// Samples an SRF on `domain_len`-byte strings with range size `r`.
pub fn sample_srf(seed: [u8; 32], domain_len: usize, r: u64) -> Result<SmallRangeFunction> {
    SmallRangeFunction::new(seed, r, domain_len)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollisionStats {
    pub range: u64,
    pub trials: usize,
    /// Queries needed for the first output collision in each trial.
    pub queries: Vec<u64>,
    pub median: f64,
}

impl CollisionStats {
    /// The `[0.5·√r, 4·√r]` birthday window.
    pub fn within_birthday_window(&self) -> bool {
        let root = (self.range as f64).sqrt();
        self.median >= 0.5 * root && self.median <= 4.0 * root
    }
}

fn median(values: &[u64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_unstable();
    let n = v.len();
    if n == 0 {
        0.0
    } else if n % 2 == 1 {
        v[n / 2] as f64
    } else {
        (v[n / 2 - 1] + v[n / 2]) as f64 / 2.0
    }
}

fn fresh_inputs<'a, R: Rng>(
    rng: &'a mut R,
    len: usize,
    seen: &'a mut HashSet<Vec<u8>>,
) -> impl Iterator<Item = Vec<u8>> + 'a {
    std::iter::repeat_with(move || loop {
        let mut x = vec![0u8; len];
        rng.fill_bytes(&mut x);
        if seen.insert(x.clone()) {
            return x;
        }
    })
}

/// For each trial, samples a fresh SRF and queries fresh distinct inputs
/// until two outputs collide.
pub fn srf_collision_experiment(
    domain_len: usize,
    r: u64,
    trials: usize,
    seed: u64,
) -> Result<CollisionStats> {
    if r < 4 {
        return Err(Error::InvalidParameter(
            "collision experiment needs r >= 4".into(),
        ));
    }
    if domain_len < 8 {
        return Err(Error::InvalidParameter(
            "domain must be at least 8 bytes".into(),
        ));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut queries = Vec::with_capacity(trials);
    for _ in 0..trials {
        let srf = sample_srf(rng.gen(), domain_len, r)?;
        let mut seen_in = HashSet::new();
        let mut seen_out = HashSet::new();
        let mut count = 0u64;
        for x in fresh_inputs(&mut rng, domain_len, &mut seen_in) {
            count += 1;
            if !seen_out.insert(srf.evaluate(&x)) {
                break;
            }
        }
        queries.push(count);
    }
    Ok(CollisionStats {
        range: r,
        trials,
        median: median(&queries),
        queries,
    })
}

/// A uniformly random permutation of `{0,1}^bits`, sampled lazily.
pub struct LazyPermutation {
    bits: u32,
    rng: ChaCha20Rng,
    map: HashMap<u64, u64>,
    used: HashSet<u64>,
}

impl LazyPermutation {
    pub fn new(bits: u32, seed: u64) -> Self {
        assert!((1..=63).contains(&bits));
        Self {
            bits,
            rng: ChaCha20Rng::seed_from_u64(seed),
            map: HashMap::new(),
            used: HashSet::new(),
        }
    }

    pub fn eval(&mut self, x: u64) -> u64 {
        if let Some(&y) = self.map.get(&x) {
            return y;
        }
        let bound = 1u64 << self.bits;
        let y = loop {
            let y = self.rng.gen_range(0..bound);
            if self.used.insert(y) {
                break y;
            }
        };
        self.map.insert(x, y);
        y
    }
}

/// Control for the collision experiment: queries `queries` distinct inputs to
/// a random permutation in each trial and returns how many trials saw an
/// output collision. Always zero for a permutation.
pub fn permutation_collision_control(bits: u32, queries: usize, trials: usize, seed: u64) -> usize {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut collided = 0;
    for _ in 0..trials {
        let mut p = LazyPermutation::new(bits, rng.next_u64());
        let mut inputs = HashSet::new();
        let mut outputs = HashSet::new();
        let mask = (1u64 << bits) - 1;
        while inputs.len() < queries {
            let x = rng.next_u64() & mask;
            if !inputs.insert(x) {
                continue;
            }
            if !outputs.insert(p.eval(x)) {
                collided += 1;
                break;
            }
        }
    }
    collided
}
