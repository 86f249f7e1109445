//! Commit-and-open identification schemes and their parallel repetition.
//!
//! A scheme commits to `n` response slots, receives a challenge `c`, and
//! opens the slots `I_c`. Verification splits into a relation check on the
//! opened values, which never looks at the commitments, and a recommitment
//! check of each opened slot against the first message.

use std::collections::BTreeSet;

use rand::{CryptoRng, RngCore};

use crate::commit::{CommitTag, CommitmentScheme};
use crate::error::{Error, Result};

/// Challenges are numbered from 1.
pub type Challenge = u8;

/// One encoded response slot.
pub type Slot = Vec<u8>;

/// The commitments `x_1..x_n` of one repetition.
pub type Commitments = Vec<Vec<u8>>;

pub trait CommitAndOpen {
    type PublicKey;
    type SecretKey;

    /// Identifier mixed into every commitment tag.
    fn scheme_id(&self) -> u8;

    /// Number of response slots `n`.
    fn slots(&self) -> usize;

    /// The challenge space, ascending.
    fn challenges(&self) -> Vec<Challenge>;

    /// Zero-based slot indices opened for `c`, ascending.
    fn opened_slots(&self, c: Challenge) -> Result<Vec<usize>>;

    /// Width in bytes of every encoded slot.
    fn slot_width(&self) -> usize;

    /// Samples the full response vector `z` for one round.
    fn sample_response<R: RngCore + CryptoRng>(
        &self,
        pk: &Self::PublicKey,
        sk: &Self::SecretKey,
        rng: &mut R,
    ) -> Result<Vec<Slot>>;

    /// The relation part of verification on the opened slots, given in the
    /// order of [`opened_slots`](Self::opened_slots). Malformed slots fail.
    fn check_relation(&self, pk: &Self::PublicKey, c: Challenge, opened: &[Slot]) -> bool;
}

pub fn commit_tag<S: CommitAndOpen + ?Sized>(
    scheme: &S,
    repetition: u16,
    slot: usize,
) -> CommitTag {
    CommitTag {
        scheme: scheme.scheme_id(),
        repetition,
        slot: slot as u8 + 1,
    }
}

/// Commits to every slot of one repetition.
pub fn commit_all<S: CommitAndOpen + ?Sized>(
    scheme: &S,
    g: &CommitmentScheme,
    repetition: u16,
    z: &[Slot],
) -> Result<Commitments> {
    z.iter()
        .enumerate()
        .map(|(j, slot)| g.commit(commit_tag(scheme, repetition, j), slot))
        .collect()
}

/// The slots `z_{I_c}`.
pub fn open<S: CommitAndOpen + ?Sized>(scheme: &S, z: &[Slot], c: Challenge) -> Result<Vec<Slot>> {
    let idx = scheme.opened_slots(c)?;
    idx.iter()
        .map(|&j| z.get(j).cloned().ok_or(Error::Malformed("missing slot")))
        .collect()
}

/// Full single-round verification: the relation holds and every opened slot
/// recommits to its commitment.
pub fn verify_round<S: CommitAndOpen + ?Sized>(
    scheme: &S,
    pk: &S::PublicKey,
    g: &CommitmentScheme,
    repetition: u16,
    c: Challenge,
    opened: &[Slot],
    x: &[Vec<u8>],
) -> bool {
    let Ok(idx) = scheme.opened_slots(c) else {
        return false;
    };
    if opened.len() != idx.len() || x.len() != scheme.slots() {
        return false;
    }
    if !scheme.check_relation(pk, c, opened) {
        return false;
    }
    idx.iter().zip(opened).all(|(&j, z)| {
        g.commit(commit_tag(scheme, repetition, j), z)
            .is_ok_and(|recommitted| recommitted == x[j])
    })
}

/// A transcript of the `r`-fold parallel repetition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelTranscript {
    pub commitments: Vec<Commitments>,
    pub challenges: Vec<Challenge>,
    pub opened: Vec<Vec<Slot>>,
}

impl ParallelTranscript {
    pub fn repetitions(&self) -> usize {
        self.commitments.len()
    }

    /// The commitments of all repetitions, row-major.
    pub fn first_message_bytes(&self) -> Vec<u8> {
        flatten_commitments(&self.commitments)
    }
}

pub fn flatten_commitments(x: &[Commitments]) -> Vec<u8> {
    x.iter().flatten().flatten().copied().collect()
}

/// Runs the first prover move `r` times with independent randomness.
pub fn parallel_prove_first<S: CommitAndOpen, R: RngCore + CryptoRng>(
    scheme: &S,
    pk: &S::PublicKey,
    sk: &S::SecretKey,
    r: usize,
    rng: &mut R,
    g: &CommitmentScheme,
) -> Result<(Vec<Vec<Slot>>, Vec<Commitments>)> {
    if r == 0 {
        return Err(Error::InvalidParameter(
            "at least one repetition required".into(),
        ));
    }
    let r16 = u16::try_from(r)
        .map_err(|_| Error::InvalidParameter(format!("{r} repetitions exceed u16")))?;
    let mut zs = Vec::with_capacity(r);
    let mut xs = Vec::with_capacity(r);
    for i in 0..r16 {
        let z = scheme.sample_response(pk, sk, rng)?;
        xs.push(commit_all(scheme, g, i, &z)?);
        zs.push(z);
    }
    Ok((zs, xs))
}

/// Opens every repetition for its challenge.
pub fn parallel_prove_second<S: CommitAndOpen>(
    scheme: &S,
    zs: &[Vec<Slot>],
    challenges: &[Challenge],
) -> Result<Vec<Vec<Slot>>> {
    if zs.len() != challenges.len() {
        return Err(Error::Dimension {
            expected: zs.len(),
            actual: challenges.len(),
        });
    }
    zs.iter()
        .zip(challenges)
        .map(|(z, &c)| open(scheme, z, c))
        .collect()
}

/// Accepts iff every repetition verifies. An empty transcript is an error.
pub fn parallel_verify<S: CommitAndOpen>(
    scheme: &S,
    pk: &S::PublicKey,
    transcript: &ParallelTranscript,
    g: &CommitmentScheme,
) -> Result<bool> {
    let r = transcript.repetitions();
    if r == 0 {
        return Err(Error::InvalidParameter("empty transcript".into()));
    }
    if transcript.challenges.len() != r
        || transcript.opened.len() != r
        || r > usize::from(u16::MAX) + 1
    {
        return Ok(false);
    }
    Ok((0..r).all(|i| {
        verify_round(
            scheme,
            pk,
            g,
            i as u16,
            transcript.challenges[i],
            &transcript.opened[i],
            &transcript.commitments[i],
        )
    }))
}

/// `VC` for a known full response: the challenges whose relation check
/// passes on `z_{I_c}`.
pub fn valid_challenge_set<S: CommitAndOpen>(
    scheme: &S,
    pk: &S::PublicKey,
    z_full: &[Slot],
) -> Vec<Challenge> {
    scheme
        .challenges()
        .into_iter()
        .filter(|&c| open(scheme, z_full, c).is_ok_and(|o| scheme.check_relation(pk, c, &o)))
        .collect()
}

/// Finds a coordinate at which the tuples of `set` take at least `gamma`
/// distinct values. Returns the smallest such coordinate and its smallest
/// `gamma` values, ascending.
///
/// Such a coordinate always exists once `|set| ≥ (γ−1)^r + 1`: otherwise
/// `set` would sit inside a product of `r` sets of size at most `γ−1`.
pub fn subset_coordinate_lemma<T: Ord + Clone>(
    set: &[Vec<T>],
    gamma: usize,
) -> Option<(usize, Vec<T>)> {
    let r = set.first()?.len();
    (0..r).find_map(|i| {
        let values: BTreeSet<&T> = set.iter().filter_map(|t| t.get(i)).collect();
        (values.len() >= gamma).then(|| (i, values.into_iter().take(gamma).cloned().collect()))
    })
}
