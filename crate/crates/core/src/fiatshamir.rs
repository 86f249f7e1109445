//! Fiat-Shamir signatures from the parallel-repeated Stern scheme.
//!
//! The challenge vector is never transmitted: signer and verifier both
//! derive it from `SHAKE256(tag || len(m) || m || x)`, reading the output two
//! bits at a time (`00 → 1`, `01 → 2`, `10 → 3`, `11` rejected).
//!
//! # Wire formats
//!
//! All integers are little-endian. The params block is
//! `n: u16, k: u16, w: u16, r: u16, commit_len: u8`.
//!
//! * Signature: `"STFS"`, version `u8 = 1`, params block, the `3r`
//!   commitments row-major, then for every repetition its two opened slots
//!   in ascending slot order, each as `slot_type: u8, len: u32, bytes`.
//! * Public key: `"STPK"`, params block, `H` row-major, `s`.
//! * Secret key: `"STSK"`, params block, `e`.

use rand::{CryptoRng, RngCore};

use crate::commit::{CommitmentScheme, FeistelPermutation, SmallRangeFunction};
use crate::error::{Error, Result};
use crate::gf2::{bytes_for, BitMatrix, BitVector};
use crate::idscheme::{
    self, flatten_commitments, parallel_verify, Challenge, Commitments, ParallelTranscript, Slot,
};
use crate::primitives::{Shake256, Xof, XofReader};
use crate::stern::{Stern, SternParams, SternPublicKey, SternSecretKey};

pub use crate::commit::{pad_response, strip_pad};

pub const SIGNATURE_MAGIC: &[u8; 4] = b"STFS";
pub const PUBLIC_KEY_MAGIC: &[u8; 4] = b"STPK";
pub const SECRET_KEY_MAGIC: &[u8; 4] = b"STSK";
pub const SIGNATURE_VERSION: u8 = 1;

const SIGN_CHALLENGE_DOMAIN: &[u8] = b"sternfs/fs-challenge/v1";
const ID_CHALLENGE_DOMAIN: &[u8] = b"sternfs/id-challenge/v1";

/// Reads trits from a byte stream, two bits at a time from the least
/// significant end of each byte.
pub fn challenges_from_stream(stream: &mut dyn XofReader, r: usize) -> Vec<Challenge> {
    let mut out = Vec::with_capacity(r);
    let mut buf = [0u8; 64];
    while out.len() < r {
        stream.read(&mut buf);
        for byte in buf {
            for j in 0..4 {
                if out.len() == r {
                    return out;
                }
                match (byte >> (2 * j)) & 0b11 {
                    0b11 => {}
                    v => out.push(v + 1),
                }
            }
        }
    }
    out
}

/// Maps hash output to challenge vectors in `{1,2,3}^r`.
#[derive(Clone)]
pub struct ChallengeDeriver {
    xof: std::sync::Arc<dyn Xof>,
}

impl Default for ChallengeDeriver {
    fn default() -> Self {
        Self {
            xof: std::sync::Arc::new(Shake256),
        }
    }
}

impl ChallengeDeriver {
    pub fn new(xof: std::sync::Arc<dyn Xof>) -> Self {
        Self { xof }
    }

    /// `c = H(x, m)` for signing.
    pub fn for_message(&self, x_bytes: &[u8], m: &[u8], r: usize) -> Vec<Challenge> {
        let len = (m.len() as u64).to_le_bytes();
        let mut reader = self.xof.reader(&[SIGN_CHALLENGE_DOMAIN, &len, m, x_bytes]);
        challenges_from_stream(reader.as_mut(), r)
    }

    /// `c = H(x)` for the non-interactive identification protocol.
    pub fn for_identification(&self, x_bytes: &[u8], r: usize) -> Vec<Challenge> {
        let mut reader = self.xof.reader(&[ID_CHALLENGE_DOMAIN, x_bytes]);
        challenges_from_stream(reader.as_mut(), r)
    }
}

pub fn derive_challenges(x_bytes: &[u8], m: &[u8], r: usize) -> Vec<Challenge> {
    ChallengeDeriver::default().for_message(x_bytes, m, r)
}

/// The parameter header shared by keys and signatures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParamsBlock {
    pub stern: SternParams,
    pub repetitions: u16,
    pub commit_len: u8,
}

impl ParamsBlock {
    pub const LEN: usize = 9;

    pub fn new(stern: SternParams, repetitions: usize, commit_len: usize) -> Result<Self> {
        stern.validate()?;
        let repetitions = u16::try_from(repetitions)
            .ok()
            .filter(|&r| r > 0)
            .ok_or_else(|| {
                Error::InvalidParameter(format!("repetitions {repetitions} not in 1..=65535"))
            })?;
        let commit_len = u8::try_from(commit_len)
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| {
                Error::InvalidParameter(format!("commitment length {commit_len} not in 1..=255"))
            })?;
        Ok(Self {
            stern,
            repetitions,
            commit_len,
        })
    }

    pub fn r(&self) -> usize {
        usize::from(self.repetitions)
    }

    pub fn encode(&self, out: &mut Vec<u8>) {
        for v in [self.stern.n, self.stern.k, self.stern.w, self.r()] {
            out.extend_from_slice(&(v as u16).to_le_bytes());
        }
        out.push(self.commit_len);
    }

    fn decode(reader: &mut Reader<'_>) -> Result<Self> {
        let n = reader.u16()?;
        let k = reader.u16()?;
        let w = reader.u16()?;
        let r = reader.u16()?;
        let c = reader.u8()?;
        Self::new(
            SternParams::new(n.into(), k.into(), w.into())?,
            r.into(),
            c.into(),
        )
    }
}

struct Reader<'a> {
    buf: &'a [u8],
}

impl<'a> Reader<'a> {
    fn new(buf: &'a [u8]) -> Self {
        Self { buf }
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.buf.len() < n {
            return Err(Error::Truncated);
        }
        let (head, tail) = self.buf.split_at(n);
        self.buf = tail;
        Ok(head)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(
            self.take(2)?.try_into().expect("2 bytes"),
        ))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(
            self.take(4)?.try_into().expect("4 bytes"),
        ))
    }

    fn magic(&mut self, magic: &[u8; 4]) -> Result<()> {
        if self.take(4)? != magic {
            return Err(Error::Malformed("bad magic"));
        }
        Ok(())
    }

    fn finish(self) -> Result<()> {
        if self.buf.is_empty() {
            Ok(())
        } else {
            Err(Error::Malformed("trailing bytes"))
        }
    }
}

/// A signature `(x, z)`: all commitments plus the opened slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub params: ParamsBlock,
    pub commitments: Vec<Commitments>,
    /// Per repetition, the two opened slots in ascending slot order. Each
    /// slot starts with its slot-type byte.
    pub opened: Vec<Vec<Slot>>,
}

impl Signature {
    pub fn first_message_bytes(&self) -> Vec<u8> {
        flatten_commitments(&self.commitments)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(SIGNATURE_MAGIC);
        out.push(SIGNATURE_VERSION);
        self.params.encode(&mut out);
        for c in self.commitments.iter().flatten() {
            out.extend_from_slice(c);
        }
        for slot in self.opened.iter().flatten() {
            let (tag, body) = slot.split_first().expect("slot carries a type byte");
            out.push(*tag);
            out.extend_from_slice(&(body.len() as u32).to_le_bytes());
            out.extend_from_slice(body);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut rd = Reader::new(bytes);
        rd.magic(SIGNATURE_MAGIC)?;
        if rd.u8()? != SIGNATURE_VERSION {
            return Err(Error::Malformed("unsupported signature version"));
        }
        let params = ParamsBlock::decode(&mut rd)?;
        let r = params.r();
        let clen = usize::from(params.commit_len);
        let width = params.stern.slot_width();
        let commitments = (0..r)
            .map(|_| (0..3).map(|_| rd.take(clen).map(<[u8]>::to_vec)).collect())
            .collect::<Result<Vec<Commitments>>>()?;
        let mut opened = Vec::with_capacity(r);
        for _ in 0..r {
            let mut pair: Vec<Slot> = Vec::with_capacity(2);
            for _ in 0..2 {
                let tag = rd.u8()?;
                let len = rd.u32()? as usize;
                if !(1..=3).contains(&tag) || pair.last().is_some_and(|p| p[0] >= tag) {
                    return Err(Error::Malformed("bad opened slot type"));
                }
                if len != width - 1 {
                    return Err(Error::Malformed("bad opened slot length"));
                }
                let mut slot = Vec::with_capacity(width);
                slot.push(tag);
                slot.extend_from_slice(rd.take(len)?);
                pair.push(slot);
            }
            opened.push(pair);
        }
        rd.finish()?;
        Ok(Self {
            params,
            commitments,
            opened,
        })
    }
}

fn check_commitment(params: &ParamsBlock, g: &CommitmentScheme) -> Result<()> {
    if g.output_len() != usize::from(params.commit_len) {
        return Err(Error::InvalidParameter(format!(
            "commitment output is {} bytes, parameters say {}",
            g.output_len(),
            params.commit_len
        )));
    }
    if g.input_len() < params.stern.slot_width() {
        return Err(Error::InvalidParameter(format!(
            "commitment input of {} bytes cannot hold a {}-byte slot",
            g.input_len(),
            params.stern.slot_width()
        )));
    }
    Ok(())
}

/// Signs `m`: commit, derive `c = H(x, m)`, open.
pub fn sign<R: RngCore + CryptoRng>(
    params: &ParamsBlock,
    pk: &SternPublicKey,
    sk: &SternSecretKey,
    m: &[u8],
    rng: &mut R,
    g: &CommitmentScheme,
) -> Result<Signature> {
    check_commitment(params, g)?;
    let scheme = Stern::new(params.stern)?;
    let (zs, xs) = idscheme::parallel_prove_first(&scheme, pk, sk, params.r(), rng, g)?;
    let challenges = derive_challenges(&flatten_commitments(&xs), m, params.r());
    let opened = idscheme::parallel_prove_second(&scheme, &zs, &challenges)?;
    Ok(Signature {
        params: *params,
        commitments: xs,
        opened,
    })
}

/// Recomputes the challenges and checks every repetition. Never fails on
/// untrusted input; any inconsistency is a rejection.
pub fn verify_signature(
    params: &ParamsBlock,
    pk: &SternPublicKey,
    m: &[u8],
    sig: &Signature,
    g: &CommitmentScheme,
) -> bool {
    if sig.params != *params
        || check_commitment(params, g).is_err()
        || !pk.params_match(&params.stern)
    {
        return false;
    }
    let r = params.r();
    if sig.commitments.len() != r || sig.opened.len() != r {
        return false;
    }
    let Ok(scheme) = Stern::new(params.stern) else {
        return false;
    };
    let challenges = derive_challenges(&sig.first_message_bytes(), m, r);
    let transcript = ParallelTranscript {
        commitments: sig.commitments.clone(),
        challenges,
        opened: sig.opened.clone(),
    };
    parallel_verify(&scheme, pk, &transcript, g).unwrap_or(false)
}

pub fn verify_signature_bytes(
    params: &ParamsBlock,
    pk: &SternPublicKey,
    m: &[u8],
    sig: &[u8],
    g: &CommitmentScheme,
) -> bool {
    Signature::from_bytes(sig).is_ok_and(|s| verify_signature(params, pk, m, &s, g))
}

/// Non-interactive identification with `c = H(x)`, without a message.
pub fn prove_identification<R: RngCore + CryptoRng>(
    params: &ParamsBlock,
    pk: &SternPublicKey,
    sk: &SternSecretKey,
    rng: &mut R,
    g: &CommitmentScheme,
) -> Result<ParallelTranscript> {
    check_commitment(params, g)?;
    let scheme = Stern::new(params.stern)?;
    let (zs, xs) = idscheme::parallel_prove_first(&scheme, pk, sk, params.r(), rng, g)?;
    let challenges =
        ChallengeDeriver::default().for_identification(&flatten_commitments(&xs), params.r());
    let opened = idscheme::parallel_prove_second(&scheme, &zs, &challenges)?;
    Ok(ParallelTranscript {
        commitments: xs,
        challenges,
        opened,
    })
}

/// Accepts iff the transcript's challenges are `H(x)` and it verifies.
pub fn verify_identification(
    params: &ParamsBlock,
    pk: &SternPublicKey,
    transcript: &ParallelTranscript,
    g: &CommitmentScheme,
) -> bool {
    let Ok(scheme) = Stern::new(params.stern) else {
        return false;
    };
    let expected = ChallengeDeriver::default()
        .for_identification(&transcript.first_message_bytes(), params.r());
    expected == transcript.challenges
        && transcript.repetitions() == params.r()
        && parallel_verify(&scheme, pk, transcript, g).unwrap_or(false)
}

pub fn encode_public_key(params: &ParamsBlock, pk: &SternPublicKey) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(PUBLIC_KEY_MAGIC);
    params.encode(&mut out);
    out.extend_from_slice(&pk.h.to_bytes());
    out.extend_from_slice(&pk.s.to_bytes());
    out
}

pub fn decode_public_key(bytes: &[u8]) -> Result<(ParamsBlock, SternPublicKey)> {
    let mut rd = Reader::new(bytes);
    rd.magic(PUBLIC_KEY_MAGIC)?;
    let params = ParamsBlock::decode(&mut rd)?;
    let p = params.stern;
    let h_len = p.redundancy() * bytes_for(p.n);
    let h = BitMatrix::from_bytes(rd.take(h_len)?, p.redundancy(), p.n)?;
    let s = BitVector::from_bytes(rd.take(bytes_for(p.redundancy()))?, p.redundancy())?;
    rd.finish()?;
    Ok((params, SternPublicKey { h, s }))
}

pub fn encode_secret_key(params: &ParamsBlock, sk: &SternSecretKey) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(SECRET_KEY_MAGIC);
    params.encode(&mut out);
    out.extend_from_slice(&sk.e.to_bytes());
    out
}

pub fn decode_secret_key(bytes: &[u8]) -> Result<(ParamsBlock, SternSecretKey)> {
    let mut rd = Reader::new(bytes);
    rd.magic(SECRET_KEY_MAGIC)?;
    let params = ParamsBlock::decode(&mut rd)?;
    let n = params.stern.n;
    let e = BitVector::from_bytes(rd.take(bytes_for(n))?, n)?;
    rd.finish()?;
    if e.weight() != params.stern.w {
        return Err(Error::Malformed("secret vector has the wrong weight"));
    }
    Ok((params, SternSecretKey { e }))
}

/// Which commitment function to instantiate for a parameter set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommitmentChoice {
    Hash,
    /// Keyed Feistel permutation on slot-width blocks. The commitment
    /// length is the slot width.
    Feistel {
        key: Vec<u8>,
    },
    /// Small-range function with `2^range_log2` range elements, seeded from
    /// `key`.
    Srf {
        key: Vec<u8>,
        range_log2: u32,
    },
}

impl CommitmentChoice {
    /// The commitment length this choice forces, if any.
    pub fn forced_commit_len(&self, params: &SternParams) -> Option<usize> {
        match self {
            CommitmentChoice::Feistel { .. } => Some(params.slot_width()),
            _ => None,
        }
    }

    pub fn build(&self, params: &SternParams, commit_len: usize) -> Result<CommitmentScheme> {
        let width = params.slot_width();
        match self {
            CommitmentChoice::Hash => Ok(CommitmentScheme::hash(width, commit_len)),
            CommitmentChoice::Feistel { key } => {
                if commit_len != width {
                    return Err(Error::InvalidParameter(format!(
                        "Feistel commitments are {width} bytes for these parameters, not {commit_len}"
                    )));
                }
                Ok(CommitmentScheme::feistel(
                    FeistelPermutation::for_block_bytes(width, key)?,
                ))
            }
            CommitmentChoice::Srf { key, range_log2 } => {
                if *range_log2 >= 64 {
                    return Err(Error::InvalidParameter(
                        "SRF range must be below 2^64".into(),
                    ));
                }
                let seed: [u8; 32] = Shake256
                    .hash(&[b"sternfs/srf-seed", key], 32)
                    .try_into()
                    .expect("32 bytes");
                let srf = SmallRangeFunction::new(seed, 1u64 << range_log2, commit_len)?;
                Ok(CommitmentScheme::srf(srf, width))
            }
        }
    }
}
