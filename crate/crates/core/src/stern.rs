//! Stern's identification scheme over syndrome decoding.
//!
//! Public key `(H, s)` with `H` a full-rank `(n−k)×n` parity-check matrix,
//! secret key `e` of weight `w` with `e·Hᵀ = s`. One round commits to
//!
//! * `z₁ = (σ, s′)` with `s′ = y·Hᵀ`,
//! * `z₂ = σ(y)`,
//! * `z₃ = σ(y ⊕ e)`,
//!
//! and opens the two slots other than the challenge.
//!
//! Every slot is encoded to the same width: one slot-type byte, the payload,
//! then zero padding. The `z₁` payload is `n` little-endian `u16` permutation
//! entries followed by the packed bits of `s′`.

use rand::{CryptoRng, RngCore};

use crate::commit::{CommitTag, CommitmentScheme};
use crate::error::{Error, Result};
use crate::gf2::{
    bytes_for, sample_full_rank_matrix, sample_weight_w_vector, syndrome, BitMatrix, BitVector,
    CoordPermutation,
};
use crate::idscheme::{self, Challenge, CommitAndOpen, Commitments, Slot};

/// Scheme identifier in commitment tags.
pub const STERN_SCHEME_ID: u8 = 0x01;

/// Tag scheme identifier for the simulator's dummy commitment.
pub const SIMULATOR_DUMMY_ID: u8 = 0xFF;

pub const CHALLENGES: [Challenge; 3] = [1, 2, 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SternParams {
    pub n: usize,
    pub k: usize,
    pub w: usize,
}

impl SternParams {
    pub fn new(n: usize, k: usize, w: usize) -> Result<Self> {
        let p = Self { n, k, w };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0 < self.k && self.k < self.n) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < k < n, got n={} k={}",
                self.n, self.k
            )));
        }
        if self.w > self.n {
            return Err(Error::InvalidParameter(format!(
                "weight {} exceeds n={}",
                self.w, self.n
            )));
        }
        if self.n > usize::from(u16::MAX) {
            return Err(Error::InvalidParameter(format!(
                "n={} exceeds 65535",
                self.n
            )));
        }
        Ok(())
    }

    /// `n − k`, the syndrome length.
    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    /// Payload width of `z₁`.
    pub fn slot1_payload(&self) -> usize {
        2 * self.n + bytes_for(self.redundancy())
    }

    /// Width of every encoded slot, including its type byte.
    pub fn slot_width(&self) -> usize {
        1 + self.slot1_payload().max(bytes_for(self.n))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SternPublicKey {
    pub h: BitMatrix,
    pub s: BitVector,
}

#[derive(Clone, PartialEq, Eq)]
pub struct SternSecretKey {
    pub e: BitVector,
}

impl std::fmt::Debug for SternSecretKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("SternSecretKey(..)")
    }
}

impl SternPublicKey {
    pub fn params_match(&self, params: &SternParams) -> bool {
        self.h.rows() == params.redundancy()
            && self.h.cols() == params.n
            && self.s.len() == params.redundancy()
    }

    /// True when `e` is a weight-`w` solution of `e·Hᵀ = s`.
    pub fn is_solution(&self, e: &BitVector, w: usize) -> bool {
        e.weight() == w && syndrome(&self.h, e).is_ok_and(|s| s == self.s)
    }
}

/// Checks both key invariants.
pub fn validate_keypair(params: &SternParams, pk: &SternPublicKey, sk: &SternSecretKey) -> bool {
    pk.params_match(params) && pk.h.rank() == params.redundancy() && pk.is_solution(&sk.e, params.w)
}

pub fn keygen<R: RngCore + CryptoRng>(
    params: &SternParams,
    rng: &mut R,
) -> Result<(SternPublicKey, SternSecretKey)> {
    params.validate()?;
    let h = sample_full_rank_matrix(rng, params.redundancy(), params.n)?;
    let e = sample_weight_w_vector(rng, params.n, params.w)?;
    let s = syndrome(&h, &e)?;
    Ok((SternPublicKey { h, s }, SternSecretKey { e }))
}

/// The full response of one round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SternResponse {
    pub sigma: CoordPermutation,
    pub s_prime: BitVector,
    /// `σ(y)`
    pub z2: BitVector,
    /// `σ(y ⊕ e)`
    pub z3: BitVector,
}

impl SternResponse {
    pub fn encode(&self, params: &SternParams) -> Vec<Slot> {
        vec![
            encode_slot1(params, &self.sigma, &self.s_prime),
            encode_vector_slot(params, 2, &self.z2),
            encode_vector_slot(params, 3, &self.z3),
        ]
    }

    pub fn decode(params: &SternParams, slots: &[Slot]) -> Result<Self> {
        let [s1, s2, s3] = slots else {
            return Err(Error::Malformed("expected three slots"));
        };
        let (sigma, s_prime) = decode_slot1(params, s1)?;
        Ok(Self {
            sigma,
            s_prime,
            z2: decode_vector_slot(params, 2, s2)?,
            z3: decode_vector_slot(params, 3, s3)?,
        })
    }
}

fn slot_frame(params: &SternParams, tag: u8) -> Vec<u8> {
    let mut out = Vec::with_capacity(params.slot_width());
    out.push(tag);
    out
}

pub fn encode_slot1(params: &SternParams, sigma: &CoordPermutation, s_prime: &BitVector) -> Slot {
    let mut out = slot_frame(params, 1);
    for &m in sigma.as_slice() {
        out.extend_from_slice(&m.to_le_bytes());
    }
    s_prime.write_bytes(&mut out);
    out.resize(params.slot_width(), 0);
    out
}

pub fn encode_vector_slot(params: &SternParams, tag: u8, v: &BitVector) -> Slot {
    let mut out = slot_frame(params, tag);
    v.write_bytes(&mut out);
    out.resize(params.slot_width(), 0);
    out
}

fn check_frame<'a>(
    params: &SternParams,
    tag: u8,
    slot: &'a [u8],
    payload: usize,
) -> Result<&'a [u8]> {
    if slot.len() != params.slot_width() {
        return Err(Error::Length {
            expected: params.slot_width(),
            actual: slot.len(),
        });
    }
    if slot[0] != tag {
        return Err(Error::Malformed("unexpected slot type"));
    }
    let body = &slot[1..];
    if body[payload..].iter().any(|&b| b != 0) {
        return Err(Error::Malformed("nonzero slot padding"));
    }
    Ok(&body[..payload])
}

pub fn decode_slot1(params: &SternParams, slot: &[u8]) -> Result<(CoordPermutation, BitVector)> {
    let body = check_frame(params, 1, slot, params.slot1_payload())?;
    let (perm, synd) = body.split_at(2 * params.n);
    let map = perm
        .chunks_exact(2)
        .map(|c| u16::from_le_bytes([c[0], c[1]]))
        .collect();
    Ok((
        CoordPermutation::from_map(map)?,
        BitVector::from_bytes(synd, params.redundancy())?,
    ))
}

pub fn decode_vector_slot(params: &SternParams, tag: u8, slot: &[u8]) -> Result<BitVector> {
    let body = check_frame(params, tag, slot, bytes_for(params.n))?;
    BitVector::from_bytes(body, params.n)
}

/// Stern's scheme for fixed code parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stern {
    pub params: SternParams,
}

impl Stern {
    pub fn new(params: SternParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params })
    }

    /// The honest response for explicit coins `(σ, y)`.
    pub fn response_with_coins(
        &self,
        pk: &SternPublicKey,
        sk: &SternSecretKey,
        sigma: CoordPermutation,
        y: &BitVector,
    ) -> Result<SternResponse> {
        let s_prime = syndrome(&pk.h, y)?;
        let z2 = sigma.apply(y)?;
        let z3 = sigma.apply(&y.xor(&sk.e)?)?;
        Ok(SternResponse {
            sigma,
            s_prime,
            z2,
            z3,
        })
    }

    /// First prover move: samples `σ` and `y`, returns `z` and its
    /// commitments.
    pub fn prover_first<R: RngCore + CryptoRng>(
        &self,
        pk: &SternPublicKey,
        sk: &SternSecretKey,
        rng: &mut R,
        g: &CommitmentScheme,
    ) -> Result<(SternResponse, Commitments)> {
        let z = self.sample(pk, sk, rng)?;
        let x = idscheme::commit_all(self, g, 0, &z.encode(&self.params))?;
        Ok((z, x))
    }

    fn sample<R: RngCore + CryptoRng>(
        &self,
        pk: &SternPublicKey,
        sk: &SternSecretKey,
        rng: &mut R,
    ) -> Result<SternResponse> {
        let sigma = CoordPermutation::random(rng, self.params.n);
        let y = BitVector::random(rng, self.params.n);
        self.response_with_coins(pk, sk, sigma, &y)
    }

    /// Second prover move: the two slots other than `c`, ascending.
    pub fn prover_second(&self, z: &SternResponse, c: Challenge) -> Result<Vec<Slot>> {
        idscheme::open(self, &z.encode(&self.params), c)
    }

    /// Single-round verification (repetition index 0).
    pub fn verify(
        &self,
        pk: &SternPublicKey,
        c: Challenge,
        opened: &[Slot],
        x: &[Vec<u8>],
        g: &CommitmentScheme,
    ) -> bool {
        idscheme::verify_round(self, pk, g, 0, c, opened, x)
    }

    /// Opened values for challenge `c` computed without the secret key.
    pub fn simulate_opened(
        &self,
        pk: &SternPublicKey,
        c: Challenge,
        coins: SimulatorCoins,
    ) -> Result<Vec<Slot>> {
        let p = &self.params;
        match (c, coins) {
            (1, SimulatorCoins::Weight { u, t }) => Ok(vec![
                encode_vector_slot(p, 2, &u),
                encode_vector_slot(p, 3, &u.xor(&t)?),
            ]),
            (2, SimulatorCoins::Permutation { sigma, v: t }) => {
                let s_prime = syndrome(&pk.h, &t)?.xor(&pk.s)?;
                let z3 = sigma.apply(&t)?;
                Ok(vec![
                    encode_slot1(p, &sigma, &s_prime),
                    encode_vector_slot(p, 3, &z3),
                ])
            }
            (3, SimulatorCoins::Permutation { sigma, v: y }) => {
                let s_prime = syndrome(&pk.h, &y)?;
                let z2 = sigma.apply(&y)?;
                Ok(vec![
                    encode_slot1(p, &sigma, &s_prime),
                    encode_vector_slot(p, 2, &z2),
                ])
            }
            (1..=3, _) => Err(Error::InvalidParameter(
                "simulator coins do not match challenge".into(),
            )),
            (c, _) => Err(Error::InvalidChallenge(c)),
        }
    }

    pub fn sample_simulator_coins<R: RngCore + CryptoRng>(
        &self,
        c: Challenge,
        rng: &mut R,
    ) -> Result<SimulatorCoins> {
        let n = self.params.n;
        match c {
            1 => Ok(SimulatorCoins::Weight {
                u: BitVector::random(rng, n),
                t: sample_weight_w_vector(rng, n, self.params.w)?,
            }),
            2 | 3 => Ok(SimulatorCoins::Permutation {
                sigma: CoordPermutation::random(rng, n),
                v: BitVector::random(rng, n),
            }),
            c => Err(Error::InvalidChallenge(c)),
        }
    }

    /// HVZK simulator: an accepting `(x, opened)` for challenge `c`. The
    /// unopened commitment is to an all-zero slot under a dummy tag.
    pub fn simulate<R: RngCore + CryptoRng>(
        &self,
        pk: &SternPublicKey,
        c: Challenge,
        rng: &mut R,
        g: &CommitmentScheme,
    ) -> Result<(Commitments, Vec<Slot>)> {
        let coins = self.sample_simulator_coins(c, rng)?;
        let opened = self.simulate_opened(pk, c, coins)?;
        let idx = self.opened_slots(c)?;
        let mut x = Vec::with_capacity(3);
        for j in 0..3 {
            let commitment = match idx.iter().position(|&i| i == j) {
                Some(pos) => g.commit(idscheme::commit_tag(self, 0, j), &opened[pos])?,
                None => g.commit(
                    CommitTag {
                        scheme: SIMULATOR_DUMMY_ID,
                        repetition: 0,
                        slot: j as u8 + 1,
                    },
                    &vec![0u8; self.params.slot_width()],
                )?,
            };
            x.push(commitment);
        }
        Ok((x, opened))
    }

    /// `σ⁻¹(z₂ ⊕ z₃)` from a full encoded response. The caller decides
    /// whether the result solves the syndrome-decoding instance.
    pub fn extract_slots(&self, z_full: &[Slot]) -> Result<BitVector> {
        let z = SternResponse::decode(&self.params, z_full)?;
        extract(&z)
    }
}

/// `σ⁻¹(z₂ ⊕ z₃)`.
pub fn extract(z: &SternResponse) -> Result<BitVector> {
    z.sigma.apply_inverse(&z.z2.xor(&z.z3)?)
}

/// Simulator randomness, one shape per challenge family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimulatorCoins {
    /// `c = 1`: `u` uniform, `t` of weight `w`.
    Weight { u: BitVector, t: BitVector },
    /// `c ∈ {2, 3}`: a permutation and a uniform vector.
    Permutation {
        sigma: CoordPermutation,
        v: BitVector,
    },
}

impl CommitAndOpen for Stern {
    type PublicKey = SternPublicKey;
    type SecretKey = SternSecretKey;

    fn scheme_id(&self) -> u8 {
        STERN_SCHEME_ID
    }

    fn slots(&self) -> usize {
        3
    }

    fn challenges(&self) -> Vec<Challenge> {
        CHALLENGES.to_vec()
    }

    fn opened_slots(&self, c: Challenge) -> Result<Vec<usize>> {
        match c {
            1 => Ok(vec![1, 2]),
            2 => Ok(vec![0, 2]),
            3 => Ok(vec![0, 1]),
            c => Err(Error::InvalidChallenge(c)),
        }
    }

    fn slot_width(&self) -> usize {
        self.params.slot_width()
    }

    fn sample_response<R: RngCore + CryptoRng>(
        &self,
        pk: &SternPublicKey,
        sk: &SternSecretKey,
        rng: &mut R,
    ) -> Result<Vec<Slot>> {
        Ok(self.sample(pk, sk, rng)?.encode(&self.params))
    }

    fn check_relation(&self, pk: &SternPublicKey, c: Challenge, opened: &[Slot]) -> bool {
        check_relation(&self.params, pk, c, opened).unwrap_or(false)
    }
}

fn check_relation(
    params: &SternParams,
    pk: &SternPublicKey,
    c: Challenge,
    opened: &[Slot],
) -> Result<bool> {
    if !pk.params_match(params) {
        return Ok(false);
    }
    let [a, b] = opened else {
        return Ok(false);
    };
    match c {
        1 => {
            let z2 = decode_vector_slot(params, 2, a)?;
            let z3 = decode_vector_slot(params, 3, b)?;
            Ok(z2.xor(&z3)?.weight() == params.w)
        }
        2 => {
            let (sigma, s_prime) = decode_slot1(params, a)?;
            let z3 = decode_vector_slot(params, 3, b)?;
            let lhs = syndrome(&pk.h, &sigma.apply_inverse(&z3)?)?;
            Ok(lhs == pk.s.xor(&s_prime)?)
        }
        3 => {
            let (sigma, s_prime) = decode_slot1(params, a)?;
            let z2 = decode_vector_slot(params, 2, b)?;
            Ok(syndrome(&pk.h, &sigma.apply_inverse(&z2)?)? == s_prime)
        }
        c => Err(Error::InvalidChallenge(c)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn setup(
        n: usize,
        k: usize,
        w: usize,
        seed: u64,
    ) -> (Stern, SternPublicKey, SternSecretKey, ChaCha20Rng) {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let params = SternParams::new(n, k, w).unwrap();
        let (pk, sk) = keygen(&params, &mut rng).unwrap();
        (Stern::new(params).unwrap(), pk, sk, rng)
    }

    fn g(st: &Stern) -> CommitmentScheme {
        CommitmentScheme::hash(st.params.slot_width(), 32)
    }

    #[test]
    fn params_validation() {
        assert!(SternParams::new(8, 0, 2).is_err());
        assert!(SternParams::new(8, 8, 2).is_err());
        assert!(SternParams::new(8, 4, 9).is_err());
        assert!(SternParams::new(8, 4, 0).is_ok());
        assert_eq!(
            SternParams::new(32, 16, 4).unwrap().slot_width(),
            1 + 64 + 2
        );
    }

    #[test]
    fn keygen_invariants() {
        let params = SternParams::new(8, 4, 2).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let (pk, sk) = keygen(&params, &mut rng).unwrap();
            assert!(validate_keypair(&params, &pk, &sk));
        }
        let params0 = SternParams::new(8, 4, 0).unwrap();
        let (pk, _) = keygen(&params0, &mut rng).unwrap();
        assert!(pk.s.is_zero());
    }

    #[test]
    fn prover_first_structure() {
        let (st, pk, sk, mut rng) = setup(32, 16, 4, 2);
        let g = g(&st);
        for _ in 0..200 {
            let (z, x) = st.prover_first(&pk, &sk, &mut rng, &g).unwrap();
            assert_eq!(
                x,
                idscheme::commit_all(&st, &g, 0, &z.encode(&st.params)).unwrap()
            );
            assert_eq!(z.z2.xor(&z.z3).unwrap().weight(), 4);
            assert_eq!(
                syndrome(&pk.h, &z.sigma.inverse().apply(&z.z2).unwrap()).unwrap(),
                z.s_prime
            );
        }
    }

    #[test]
    fn prover_second_opens_complement() {
        let (st, pk, sk, mut rng) = setup(16, 8, 3, 3);
        let (z, _) = st.prover_first(&pk, &sk, &mut rng, &g(&st)).unwrap();
        let slots = z.encode(&st.params);
        assert_eq!(
            st.prover_second(&z, 1).unwrap(),
            vec![slots[1].clone(), slots[2].clone()]
        );
        assert_eq!(
            st.prover_second(&z, 2).unwrap(),
            vec![slots[0].clone(), slots[2].clone()]
        );
        assert_eq!(
            st.prover_second(&z, 3).unwrap(),
            vec![slots[0].clone(), slots[1].clone()]
        );
        assert!(matches!(
            st.prover_second(&z, 0),
            Err(Error::InvalidChallenge(0))
        ));
        assert!(matches!(
            st.prover_second(&z, 4),
            Err(Error::InvalidChallenge(4))
        ));
    }

    #[test]
    fn perfect_completeness() {
        let (st, pk, sk, mut rng) = setup(24, 12, 3, 4);
        let g = g(&st);
        for _ in 0..10_000 / 3 + 1 {
            let (z, x) = st.prover_first(&pk, &sk, &mut rng, &g).unwrap();
            for c in CHALLENGES {
                assert!(st.verify(&pk, c, &st.prover_second(&z, c).unwrap(), &x, &g));
            }
        }
    }

    #[test]
    fn bit_flip_in_opened_slot_rejects() {
        let (st, pk, sk, mut rng) = setup(16, 8, 2, 5);
        let g = g(&st);
        let width = st.params.slot_width();
        for trial in 0..10_000 {
            let (z, x) = st.prover_first(&pk, &sk, &mut rng, &g).unwrap();
            let c = CHALLENGES[trial % 3];
            let mut opened = st.prover_second(&z, c).unwrap();
            let which = trial % 2;
            let bit = (trial * 7919) % (width * 8);
            opened[which][bit / 8] ^= 1 << (bit % 8);
            assert!(!st.verify(&pk, c, &opened, &x, &g));
        }
    }

    #[test]
    fn wrong_syndrome_rejects_challenge_two() {
        let (st, mut pk, sk, mut rng) = setup(16, 8, 2, 6);
        let g = g(&st);
        let (z, x) = st.prover_first(&pk, &sk, &mut rng, &g).unwrap();
        let opened = st.prover_second(&z, 2).unwrap();
        assert!(st.verify(&pk, 2, &opened, &x, &g));
        pk.s.flip(0);
        assert!(!st.verify(&pk, 2, &opened, &x, &g));
    }

    #[test]
    fn verify_handles_malformed_input() {
        let (st, pk, sk, mut rng) = setup(16, 8, 2, 7);
        let g = g(&st);
        let (z, x) = st.prover_first(&pk, &sk, &mut rng, &g).unwrap();
        let opened = st.prover_second(&z, 3).unwrap();
        assert!(!st.verify(&pk, 3, &opened[..1], &x, &g));
        assert!(!st.verify(&pk, 0, &opened, &x, &g));
        assert!(!st.verify(
            &pk,
            3,
            &[opened[0][..5].to_vec(), opened[1].clone()],
            &x,
            &g
        ));
        // Slots in the wrong order carry the wrong type bytes.
        assert!(!st.verify(&pk, 3, &[opened[1].clone(), opened[0].clone()], &x, &g));
    }

    #[test]
    fn simulated_transcripts_verify() {
        let (st, pk, _, mut rng) = setup(20, 10, 3, 8);
        let g = g(&st);
        for _ in 0..300 {
            for c in CHALLENGES {
                let (x, opened) = st.simulate(&pk, c, &mut rng, &g).unwrap();
                assert!(st.verify(&pk, c, &opened, &x, &g));
                if c == 3 {
                    let (sigma, s_prime) = decode_slot1(&st.params, &opened[0]).unwrap();
                    let z2 = decode_vector_slot(&st.params, 2, &opened[1]).unwrap();
                    assert_eq!(
                        s_prime,
                        syndrome(&pk.h, &sigma.apply_inverse(&z2).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn extraction_recovers_secret() {
        let (st, pk, sk, mut rng) = setup(32, 16, 4, 9);
        let g = g(&st);
        for _ in 0..1000 {
            let (z, _) = st.prover_first(&pk, &sk, &mut rng, &g).unwrap();
            let e = extract(&z).unwrap();
            assert_eq!(e, sk.e);
            assert!(pk.is_solution(&e, 4));
            assert_eq!(st.extract_slots(&z.encode(&st.params)).unwrap(), sk.e);
        }
    }

    #[test]
    fn extraction_from_slots_passing_all_checks_is_a_witness() {
        // Semi-mutated responses: re-randomize y and sigma but keep the
        // relations, and check that extraction still lands on a solution.
        let (st, pk, sk, mut rng) = setup(24, 12, 3, 10);
        for _ in 0..200 {
            let z = st.sample(&pk, &sk, &mut rng).unwrap().encode(&st.params);
            let vc = idscheme::valid_challenge_set(&st, &pk, &z);
            assert_eq!(vc, vec![1, 2, 3]);
            let e = st.extract_slots(&z).unwrap();
            assert!(pk.is_solution(&e, 3));
        }
    }

    #[test]
    fn partial_cheater_fails_a_check_and_extraction() {
        let (st, pk, sk, mut rng) = setup(24, 12, 3, 11);
        let mut z = st.sample(&pk, &sk, &mut rng).unwrap();
        // slot3 = σ(y): e′ = 0 passes 3 trivially, fails 1 and 2.
        z.z3 = z.z2.clone();
        let slots = z.encode(&st.params);
        let vc = idscheme::valid_challenge_set(&st, &pk, &slots);
        assert!(!vc.contains(&1));
        let e = st.extract_slots(&slots).unwrap();
        assert!(!pk.is_solution(&e, 3));
    }

    #[test]
    fn slot_decoding_rejects_garbage() {
        let params = SternParams::new(8, 4, 2).unwrap();
        let mut s1 = encode_slot1(
            &params,
            &CoordPermutation::identity(8),
            &BitVector::zeros(4),
        );
        assert!(decode_slot1(&params, &s1).is_ok());
        s1[1] = 1; // duplicate entry 1
        assert!(decode_slot1(&params, &s1).is_err());
        let mut s2 = encode_vector_slot(&params, 2, &BitVector::ones(8));
        assert!(decode_vector_slot(&params, 3, &s2).is_err());
        let last = s2.len() - 1;
        s2[last] = 1;
        assert!(decode_vector_slot(&params, 2, &s2).is_err());
    }
}
