//! Executable versions of the constructive steps in the security argument:
//! the special-soundness extractor over Feistel commitments, exact HVZK by
//! enumeration, and the statistical experiments.
//!
//! Every experiment is driven by a `u64` seed and is deterministic in it.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::commit::{
    permutation_collision_control, srf_collision_experiment, strip_pad, CollisionStats,
    CommitmentScheme, FeistelPermutation, ZeroRoundFunction,
};
use crate::error::{Error, Result};
use crate::fiatshamir::{derive_challenges, sign, verify_signature, ParamsBlock, Signature};
use crate::gf2::{sample_weight_w_vector, syndrome, BitVector, CoordPermutation};
use crate::idscheme::{
    self, flatten_commitments, open, subset_coordinate_lemma, Challenge, CommitAndOpen,
    Commitments, Slot,
};
use crate::stern::{
    keygen, SimulatorCoins, Stern, SternParams, SternPublicKey, SternResponse, SternSecretKey,
    CHALLENGES,
};

/// Largest `n` accepted by [`hvzk_exact_distance`].
pub const HVZK_MAX_N: usize = 4;

/// Output of [`extract_special_plus`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionResult {
    pub repetition: usize,
    /// Pairwise distinct, ascending, each passing its relation check.
    pub challenges: Vec<Challenge>,
    /// The inverted slots of that repetition.
    pub slots: Vec<Slot>,
    /// A weight-`w` solution of `e·Hᵀ = s`, when the slots yield one.
    pub witness: Option<BitVector>,
}

/// Inverts every commitment. Only the Feistel instantiation is invertible.
pub fn invert_commitments(x: &[Commitments], g: &CommitmentScheme) -> Result<Vec<Vec<Vec<u8>>>> {
    if g.feistel_permutation().is_none() {
        return Err(Error::NotInvertible);
    }
    x.iter()
        .map(|row| row.iter().map(|c| g.invert(c)).collect())
        .collect()
}

/// Inverts all commitments and returns the first repetition (smallest index)
/// whose slots pass the relation check for at least `gamma` challenges. The
/// smallest `gamma` passing challenges are reported.
pub fn extract_special_plus(
    stern: &Stern,
    pk: &SternPublicKey,
    x: &[Commitments],
    g: &CommitmentScheme,
    gamma: usize,
) -> Result<Option<ExtractionResult>> {
    if gamma == 0 || gamma > CHALLENGES.len() {
        return Err(Error::InvalidParameter(format!(
            "gamma {gamma} not in 1..=3"
        )));
    }
    let width = stern.slot_width();
    let preimages = invert_commitments(x, g)?;
    for (i, row) in preimages.iter().enumerate() {
        let Ok(slots) = row
            .iter()
            .map(|z| strip_pad(z, width).map(<[u8]>::to_vec))
            .collect::<Result<Vec<Slot>>>()
        else {
            continue;
        };
        if slots.len() != stern.slots() {
            continue;
        }
        let passing: Vec<Challenge> = CHALLENGES
            .iter()
            .copied()
            .filter(|&c| open(stern, &slots, c).is_ok_and(|o| stern.check_relation(pk, c, &o)))
            .collect();
        if passing.len() < gamma {
            continue;
        }
        let witness = stern
            .extract_slots(&slots)
            .ok()
            .filter(|e| pk.is_solution(e, stern.params.w));
        return Ok(Some(ExtractionResult {
            repetition: i,
            challenges: passing[..gamma].to_vec(),
            slots,
            witness,
        }));
    }
    Ok(None)
}

/// A finite distribution over opened-slot encodings.
pub type Distribution = BTreeMap<Vec<Slot>, BigRational>;

/// `½·Σ|p(v) − q(v)|`.
pub fn statistical_distance(p: &Distribution, q: &Distribution) -> BigRational {
    let mut sum = BigRational::zero();
    for (v, pv) in p {
        match q.get(v) {
            Some(qv) => sum += (pv - qv).abs(),
            None => sum += pv.clone(),
        }
    }
    for (v, qv) in q {
        if !p.contains_key(v) {
            sum += qv.clone();
        }
    }
    sum / BigRational::from_integer(BigInt::from(2))
}

/// Which simulator [`hvzk_exact_distance`] compares against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimulatorVariant {
    Correct,
    /// Uses weight `w + 1` for challenge 1. A negative control.
    BrokenWeight,
}

fn all_permutations(n: usize) -> Vec<CoordPermutation> {
    fn go(prefix: &mut Vec<u16>, used: &mut [bool], out: &mut Vec<Vec<u16>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i as u16);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut maps = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut maps);
    maps.into_iter()
        .map(|m| CoordPermutation::from_map(m).expect("valid permutation"))
        .collect()
}

fn all_vectors(n: usize) -> impl Iterator<Item = BitVector> {
    (0u32..1 << n).map(move |mask| {
        let bits: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        BitVector::from_bits(&bits)
    })
}

fn weighted(outcomes: Vec<Vec<Slot>>) -> Distribution {
    let total = BigInt::from(outcomes.len());
    let mut counts: BTreeMap<Vec<Slot>, u64> = BTreeMap::new();
    for o in outcomes {
        *counts.entry(o).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(k, c)| (k, BigRational::new(BigInt::from(c), total.clone())))
        .collect()
}

/// Exact distribution of the honest opened values for challenge `c`, over
/// all `n!·2ⁿ` prover coins.
pub fn honest_distribution(
    stern: &Stern,
    pk: &SternPublicKey,
    sk: &SternSecretKey,
    c: Challenge,
) -> Result<Distribution> {
    check_enumerable(&stern.params)?;
    let n = stern.params.n;
    let mut outcomes = Vec::new();
    for sigma in all_permutations(n) {
        for y in all_vectors(n) {
            let z = stern.response_with_coins(pk, sk, sigma.clone(), &y)?;
            outcomes.push(stern.prover_second(&z, c)?);
        }
    }
    Ok(weighted(outcomes))
}

/// Exact distribution of the simulator's opened values for challenge `c`,
/// over all simulator coins.
pub fn simulated_distribution(
    stern: &Stern,
    pk: &SternPublicKey,
    c: Challenge,
    variant: SimulatorVariant,
) -> Result<Distribution> {
    check_enumerable(&stern.params)?;
    let n = stern.params.n;
    let mut outcomes = Vec::new();
    match c {
        1 => {
            let w = match variant {
                SimulatorVariant::Correct => stern.params.w,
                SimulatorVariant::BrokenWeight => stern.params.w + 1,
            };
            if w > n {
                return Err(Error::InvalidParameter(format!("weight {w} exceeds n={n}")));
            }
            for u in all_vectors(n) {
                for t in all_vectors(n).filter(|t| t.weight() == w) {
                    let coins = SimulatorCoins::Weight { u: u.clone(), t };
                    outcomes.push(stern.simulate_opened(pk, c, coins)?);
                }
            }
        }
        2 | 3 => {
            for sigma in all_permutations(n) {
                for v in all_vectors(n) {
                    let coins = SimulatorCoins::Permutation {
                        sigma: sigma.clone(),
                        v,
                    };
                    outcomes.push(stern.simulate_opened(pk, c, coins)?);
                }
            }
        }
        c => return Err(Error::InvalidChallenge(c)),
    }
    Ok(weighted(outcomes))
}

fn check_enumerable(p: &SternParams) -> Result<()> {
    if p.n > HVZK_MAX_N {
        return Err(Error::TooLarge(format!(
            "n={} (enumeration supports n <= {HVZK_MAX_N})",
            p.n
        )));
    }
    Ok(())
}

/// Exact statistical distance between honest and simulated opened values,
/// one entry per challenge.
pub fn hvzk_exact_distance(
    stern: &Stern,
    pk: &SternPublicKey,
    sk: &SternSecretKey,
    variant: SimulatorVariant,
) -> Result<Vec<(Challenge, BigRational)>> {
    CHALLENGES
        .iter()
        .map(|&c| {
            let honest = honest_distribution(stern, pk, sk, c)?;
            let sim = simulated_distribution(stern, pk, c, variant)?;
            Ok((c, statistical_distance(&honest, &sim)))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletenessReport {
    pub trials: usize,
    pub failures: usize,
}

impl CompletenessReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Honest keygen/sign/verify cycles, each with fresh keys and a fresh random
/// message. `make_g` builds the commitment function per trial.
pub fn completeness_suite(
    params: &ParamsBlock,
    trials: usize,
    make_g: &dyn Fn(&mut ChaCha20Rng) -> Result<CommitmentScheme>,
    seed: u64,
) -> Result<CompletenessReport> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..trials {
        let g = make_g(&mut rng)?;
        let (pk, sk) = keygen(&params.stern, &mut rng)?;
        let mut m = vec![0u8; rng.gen_range(0..64)];
        rng.fill_bytes(&mut m);
        let sig = sign(params, &pk, &sk, &m, &mut rng, &g)?;
        let ok = verify_signature(params, &pk, &m, &sig, &g)
            && Signature::from_bytes(&sig.to_bytes()).is_ok_and(|s| s == sig);
        if !ok {
            failures += 1;
        }
    }
    Ok(CompletenessReport { trials, failures })
}

/// A Feistel commitment on slot-width blocks with a fresh random key.
pub fn random_feistel_commitment<R: RngCore>(
    params: &SternParams,
    rng: &mut R,
) -> Result<CommitmentScheme> {
    let mut key = [0u8; 32];
    rng.fill_bytes(&mut key);
    Ok(CommitmentScheme::feistel(
        FeistelPermutation::for_block_bytes(params.slot_width(), &key)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractionReport {
    pub trials: usize,
    /// Runs where the extractor returned a repetition.
    pub found: usize,
    /// Runs where the recovered witness equals the generating secret.
    pub recovered: usize,
    /// Runs where recommitting the inverted slots reproduced `x`.
    pub recommit_exact: usize,
}

impl ExtractionReport {
    pub fn passed(&self) -> bool {
        self.found == self.trials
            && self.recovered == self.trials
            && self.recommit_exact == self.trials
    }
}

/// Honest first messages under a fresh Feistel commitment; each is fed to
/// [`extract_special_plus`] and the witness compared to the secret key.
pub fn extraction_suite(
    params: &SternParams,
    r: usize,
    gamma: usize,
    trials: usize,
    seed: u64,
) -> Result<ExtractionReport> {
    let stern = Stern::new(*params)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut report = ExtractionReport {
        trials,
        found: 0,
        recovered: 0,
        recommit_exact: 0,
    };
    for _ in 0..trials {
        let g = random_feistel_commitment(params, &mut rng)?;
        let (pk, sk) = keygen(params, &mut rng)?;
        let (zs, xs) = idscheme::parallel_prove_first(&stern, &pk, &sk, r, &mut rng, &g)?;
        let inverted = invert_commitments(&xs, &g)?;
        let exact = inverted.iter().zip(&zs).enumerate().all(|(i, (row, z))| {
            row.iter().zip(z).enumerate().all(|(j, (pre, slot))| {
                pre == slot
                    && g.commit(idscheme::commit_tag(&stern, i as u16, j), pre)
                        .is_ok_and(|c| c == xs[i][j])
            })
        });
        report.recommit_exact += usize::from(exact);
        if let Some(res) = extract_special_plus(&stern, &pk, &xs, &g, gamma)? {
            report.found += 1;
            if res.witness.as_ref() == Some(&sk.e) {
                report.recovered += 1;
            }
        }
    }
    Ok(report)
}

/// A cheating response that answers exactly two of the three challenges
/// without knowing the secret.
pub fn cheating_response<R: RngCore>(
    stern: &Stern,
    pk: &SternPublicKey,
    skip: Challenge,
    rng: &mut R,
) -> Result<SternResponse> {
    let p = stern.params;
    let sigma = CoordPermutation::random(rng, p.n);
    let y = BitVector::random(rng, p.n);
    let t = sample_weight_w_vector(rng, p.n, p.w)?;
    let yt = y.xor(&t)?;
    let s_prime = match skip {
        // z₃ hides a weight-w vector that is not a solution.
        2 => syndrome(&pk.h, &y)?,
        // s′ is chosen to satisfy the challenge-2 equation instead.
        3 => syndrome(&pk.h, &yt)?.xor(&pk.s)?,
        c => return Err(Error::InvalidChallenge(c)),
    };
    Ok(SternResponse {
        z2: sigma.apply(&y)?,
        z3: sigma.apply(&yt)?,
        sigma,
        s_prime,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForgeryReport {
    pub runs: usize,
    pub queries: usize,
    pub forgeries: usize,
    /// Most repetitions any output signature answered correctly.
    pub best_matched: usize,
    /// `q·(2/3)^r`, the expected successes per run for this adversary.
    pub expected_per_run: f64,
}

impl ForgeryReport {
    pub fn passed(&self) -> bool {
        self.forgeries == 0
    }
}

/// A cheating repetition: the challenge it cannot answer, its slots and
/// their commitments.
type CheatState = (Challenge, Vec<Slot>, Commitments);

fn covers(skip: Challenge, c: Challenge) -> bool {
    c != skip
}

/// A random adversary with a budget of `queries` hash queries per run. Each
/// repetition holds a response answering two of three challenges. Every
/// query re-randomizes one repetition and hashes the new first message;
/// the query whose challenges are covered by the most repetitions is opened
/// and submitted.
pub fn forgery_smoke(
    params: &ParamsBlock,
    queries: usize,
    runs: usize,
    seed: u64,
) -> Result<ForgeryReport> {
    let stern = Stern::new(params.stern)?;
    let r = params.r();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut forgeries = 0;
    let mut best_matched = 0;
    for _ in 0..runs {
        let g = CommitmentScheme::hash(params.stern.slot_width(), usize::from(params.commit_len));
        let (pk, _sk) = keygen(&params.stern, &mut rng)?;
        let mut m = vec![0u8; 16];
        rng.fill_bytes(&mut m);

        let mut state: Vec<CheatState> = Vec::with_capacity(r);
        for i in 0..r {
            state.push(fresh_cheat(&stern, &pk, &g, i, &mut rng)?);
        }
        let mut best: Option<(usize, Vec<CheatState>, Vec<Challenge>)> = None;
        for q in 0..queries {
            if q > 0 {
                let i = rng.gen_range(0..r);
                state[i] = fresh_cheat(&stern, &pk, &g, i, &mut rng)?;
            }
            let xs: Vec<Commitments> = state.iter().map(|s| s.2.clone()).collect();
            let cs = derive_challenges(&flatten_commitments(&xs), &m, r);
            let matched = state
                .iter()
                .zip(&cs)
                .filter(|(s, &c)| covers(s.0, c))
                .count();
            if best.as_ref().is_none_or(|b| matched > b.0) {
                best = Some((matched, state.clone(), cs));
            }
        }
        let (matched, st, cs) = best.expect("at least one query");
        best_matched = best_matched.max(matched);
        let opened = st
            .iter()
            .zip(&cs)
            .map(|(s, &c)| open(&stern, &s.1, c))
            .collect::<Result<Vec<_>>>()?;
        let sig = Signature {
            params: *params,
            commitments: st.into_iter().map(|s| s.2).collect(),
            opened,
        };
        if verify_signature(params, &pk, &m, &sig, &g) {
            forgeries += 1;
        }
    }
    Ok(ForgeryReport {
        runs,
        queries,
        forgeries,
        best_matched,
        expected_per_run: queries as f64 * (2.0f64 / 3.0).powi(r as i32),
    })
}

fn fresh_cheat(
    stern: &Stern,
    pk: &SternPublicKey,
    g: &CommitmentScheme,
    rep: usize,
    rng: &mut ChaCha20Rng,
) -> Result<CheatState> {
    let skip = if rng.gen::<bool>() { 2 } else { 3 };
    let z = cheating_response(stern, pk, skip, rng)?.encode(&stern.params);
    let x = idscheme::commit_all(stern, g, rep as u16, &z)?;
    Ok((skip, z, x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaReport {
    /// Sets at or above the `(γ−1)^r + 1` threshold that were checked.
    pub checked: u64,
    pub counterexamples: u64,
}

fn product(c: usize, r: u32) -> Vec<Vec<u8>> {
    (0..c.pow(r))
        .map(|mut idx| {
            (0..r)
                .map(|_| {
                    let v = (idx % c) as u8 + 1;
                    idx /= c;
                    v
                })
                .collect()
        })
        .collect()
}

/// Checks one set: above threshold the lemma must return a coordinate; any
/// answer must name `gamma` distinct ascending values present at it; no
/// answer is allowed only when the set fits in a product of `(γ−1)`-sets.
fn lemma_holds(set: &[Vec<u8>], gamma: usize, r: u32) -> bool {
    let threshold = (gamma - 1).pow(r) + 1;
    match subset_coordinate_lemma(set, gamma) {
        Some((i, vals)) => {
            vals.len() == gamma
                && vals.windows(2).all(|w| w[0] < w[1])
                && vals.iter().all(|v| set.iter().any(|t| t[i] == *v))
        }
        None => {
            set.len() < threshold
                && (0..r as usize).all(|i| {
                    let mut seen: Vec<u8> = set.iter().map(|t| t[i]).collect();
                    seen.sort_unstable();
                    seen.dedup();
                    seen.len() < gamma
                })
        }
    }
}

/// Every subset of `C^r` for `|C| = c`. Feasible for `c^r ≤ 20`.
pub fn subset_lemma_exhaustive(c: usize, r: u32, gamma: usize) -> Result<LemmaReport> {
    let universe = product(c, r);
    if universe.len() > 20 {
        return Err(Error::TooLarge(format!("2^{} subsets", universe.len())));
    }
    if gamma < 2 {
        return Err(Error::InvalidParameter("gamma must be at least 2".into()));
    }
    let threshold = (gamma - 1).pow(r) + 1;
    let mut report = LemmaReport {
        checked: 0,
        counterexamples: 0,
    };
    for mask in 0u32..1 << universe.len() {
        let set: Vec<Vec<u8>> = universe
            .iter()
            .enumerate()
            .filter(|(j, _)| mask >> j & 1 == 1)
            .map(|(_, t)| t.clone())
            .collect();
        if set.len() >= threshold {
            report.checked += 1;
        }
        if !set.is_empty() && !lemma_holds(&set, gamma, r) {
            report.counterexamples += 1;
        }
    }
    Ok(report)
}

/// Random subsets of `C^r` whose sizes are uniform in
/// `[(γ−1)^r + 1, c^r]`.
pub fn subset_lemma_random(
    c: usize,
    r: u32,
    gamma: usize,
    samples: u64,
    seed: u64,
) -> Result<LemmaReport> {
    if gamma < 2 {
        return Err(Error::InvalidParameter("gamma must be at least 2".into()));
    }
    let universe = product(c, r);
    let threshold = (gamma - 1).pow(r) + 1;
    if threshold > universe.len() {
        return Err(Error::InvalidParameter(format!(
            "threshold {threshold} exceeds |C^r| = {}",
            universe.len()
        )));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut counterexamples = 0;
    for _ in 0..samples {
        let size = rng.gen_range(threshold..=universe.len());
        let set: Vec<Vec<u8>> = rand::seq::index::sample(&mut rng, universe.len(), size)
            .into_iter()
            .map(|j| universe[j].clone())
            .collect();
        if !lemma_holds(&set, gamma, r) {
            counterexamples += 1;
        }
    }
    Ok(LemmaReport {
        checked: samples,
        counterexamples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeistelReport {
    pub keys: usize,
    /// Keys whose permutation on `2m = 16` bits hit every output once.
    pub bijective_keys: usize,
    pub round_trips: usize,
    pub round_trip_failures: usize,
    pub zero_round_identity: bool,
}

impl FeistelReport {
    pub fn passed(&self) -> bool {
        self.bijective_keys == self.keys
            && self.round_trip_failures == 0
            && self.zero_round_identity
    }
}

fn u64_to_bits(v: u64, len: usize) -> BitVector {
    let bits: Vec<bool> = (0..len).map(|i| v >> i & 1 == 1).collect();
    BitVector::from_bits(&bits)
}

fn bits_to_u64(v: &BitVector) -> u64 {
    v.iter()
        .enumerate()
        .fold(0, |acc, (i, b)| acc | (u64::from(b) << i))
}

/// Exhaustive bijectivity at `m = 8` for `keys` random keys, `round_trips`
/// inverse-of-forward checks at `m = 64`, and the zero round function on
/// every 16-bit input.
pub fn feistel_checks(keys: usize, round_trips: usize, seed: u64) -> Result<FeistelReport> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut bijective_keys = 0;
    for _ in 0..keys {
        let key: [u8; 16] = rng.gen();
        let p = FeistelPermutation::keyed(8, &key)?;
        let mut hit = vec![false; 1 << 16];
        for v in 0..1u64 << 16 {
            let out = bits_to_u64(&p.forward(&u64_to_bits(v, 16))?) as usize;
            hit[out] = true;
        }
        if hit.iter().all(|&h| h) {
            bijective_keys += 1;
        }
    }

    let key: [u8; 16] = rng.gen();
    let p = FeistelPermutation::keyed(64, &key)?;
    let mut round_trip_failures = 0;
    for _ in 0..round_trips {
        let x = BitVector::random(&mut rng, 128);
        if p.inverse(&p.forward(&x)?)? != x {
            round_trip_failures += 1;
        }
    }

    let zero = FeistelPermutation::with_round_fn(8, Arc::new(ZeroRoundFunction))?;
    let mut zero_round_identity = true;
    for v in 0..1u64 << 16 {
        let x = u64_to_bits(v, 16);
        zero_round_identity &= zero.forward(&x)? == x;
    }

    Ok(FeistelReport {
        keys,
        bijective_keys,
        round_trips,
        round_trip_failures,
        zero_round_identity,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SrfReport {
    pub stats: Vec<CollisionStats>,
    pub control_trials: usize,
    pub control_collisions: usize,
}

impl SrfReport {
    pub fn passed(&self) -> bool {
        self.control_collisions == 0
            && self
                .stats
                .iter()
                .all(CollisionStats::within_birthday_window)
    }
}

/// Birthday experiment for each range `2^b`, `b ∈ log2_ranges`, plus a
/// random-permutation control on the same output space queried `4·√r` times.
pub fn srf_suite(log2_ranges: &[u32], trials: usize, seed: u64) -> Result<SrfReport> {
    let mut stats = Vec::with_capacity(log2_ranges.len());
    let mut control_collisions = 0;
    for (j, &b) in log2_ranges.iter().enumerate() {
        if !(2..=40).contains(&b) {
            return Err(Error::InvalidParameter(format!(
                "range exponent {b} not in 2..=40"
            )));
        }
        let r = 1u64 << b;
        stats.push(srf_collision_experiment(
            32,
            r,
            trials,
            seed.wrapping_add(j as u64),
        )?);
        let queries = (4.0 * (r as f64).sqrt()).ceil() as usize;
        control_collisions +=
            permutation_collision_control(b, queries, trials, seed.wrapping_add(1000 + j as u64));
    }
    Ok(SrfReport {
        stats,
        control_trials: trials * log2_ranges.len(),
        control_collisions,
    })
}

/// A flat `key=value` summary for machine consumption.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub experiment: String,
    pub passed: bool,
    pub fields: Vec<(String, String)>,
}

impl Summary {
    pub fn new(experiment: &str, passed: bool) -> Self {
        Self {
            experiment: experiment.to_string(),
            passed,
            fields: Vec::new(),
        }
    }

    pub fn field(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "experiment={}", self.experiment)?;
        for (k, v) in &self.fields {
            writeln!(f, "{k}={v}")?;
        }
        writeln!(f, "result={}", if self.passed { "pass" } else { "fail" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(
        n: usize,
        k: usize,
        w: usize,
        seed: u64,
    ) -> (Stern, SternPublicKey, SternSecretKey, ChaCha20Rng) {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let stern = Stern::new(SternParams::new(n, k, w).unwrap()).unwrap();
        let (pk, sk) = keygen(&stern.params, &mut rng).unwrap();
        (stern, pk, sk, rng)
    }

    #[test]
    fn inversion_recovers_padded_slots() {
        let (stern, pk, sk, mut rng) = setup(16, 8, 3, 1);
        let g = random_feistel_commitment(&stern.params, &mut rng).unwrap();
        let (zs, xs) = idscheme::parallel_prove_first(&stern, &pk, &sk, 4, &mut rng, &g).unwrap();
        let inv = invert_commitments(&xs, &g).unwrap();
        assert_eq!(inv, zs);
    }

    #[test]
    fn random_commitments_invert_but_fail_relations() {
        let (stern, pk, _, mut rng) = setup(16, 8, 3, 2);
        let g = random_feistel_commitment(&stern.params, &mut rng).unwrap();
        let width = stern.slot_width();
        let xs: Vec<Commitments> = (0..50)
            .map(|_| {
                (0..3)
                    .map(|_| {
                        let mut c = vec![0u8; width];
                        rng.fill_bytes(&mut c);
                        c
                    })
                    .collect()
            })
            .collect();
        let inv = invert_commitments(&xs, &g).unwrap();
        for (row, x) in inv.iter().zip(&xs) {
            for (j, pre) in row.iter().enumerate() {
                assert_eq!(
                    &g.feistel_permutation().unwrap().forward_bytes(pre).unwrap(),
                    &x[j]
                );
            }
        }
        assert_eq!(extract_special_plus(&stern, &pk, &xs, &g, 1).unwrap(), None);
    }

    #[test]
    fn hash_commitments_are_not_invertible() {
        let g = CommitmentScheme::hash(10, 16);
        assert_eq!(
            invert_commitments(&[vec![vec![0; 16]; 3]], &g),
            Err(Error::NotInvertible)
        );
    }

    #[test]
    fn extractor_on_honest_transcript() {
        let (stern, pk, sk, mut rng) = setup(16, 8, 3, 3);
        let g = random_feistel_commitment(&stern.params, &mut rng).unwrap();
        let (_, xs) = idscheme::parallel_prove_first(&stern, &pk, &sk, 5, &mut rng, &g).unwrap();
        let res = extract_special_plus(&stern, &pk, &xs, &g, 3)
            .unwrap()
            .unwrap();
        assert_eq!(res.repetition, 0);
        assert_eq!(res.challenges, vec![1, 2, 3]);
        assert_eq!(res.witness, Some(sk.e.clone()));
        let res2 = extract_special_plus(&stern, &pk, &xs, &g, 2)
            .unwrap()
            .unwrap();
        assert_eq!((res2.repetition, res2.challenges), (0, vec![1, 2]));
    }

    #[test]
    fn extractor_rejects_two_challenge_cheaters() {
        let (stern, pk, _, mut rng) = setup(16, 8, 3, 4);
        let g = random_feistel_commitment(&stern.params, &mut rng).unwrap();
        let xs: Vec<Commitments> = (0..6)
            .map(|i| {
                let skip = [2, 3][i % 2];
                let z = cheating_response(&stern, &pk, skip, &mut rng).unwrap();
                let slots = z.encode(&stern.params);
                let vc = idscheme::valid_challenge_set(&stern, &pk, &slots);
                assert_eq!(vc.len(), 2);
                assert!(!vc.contains(&skip));
                idscheme::commit_all(&stern, &g, i as u16, &slots).unwrap()
            })
            .collect();
        assert_eq!(extract_special_plus(&stern, &pk, &xs, &g, 3).unwrap(), None);
        let res = extract_special_plus(&stern, &pk, &xs, &g, 2)
            .unwrap()
            .unwrap();
        assert_eq!((res.repetition, res.challenges), (0, vec![1, 3]));
    }

    #[test]
    fn extraction_is_deterministic() {
        let a = extraction_suite(&SternParams::new(16, 8, 3).unwrap(), 3, 3, 20, 9).unwrap();
        let b = extraction_suite(&SternParams::new(16, 8, 3).unwrap(), 3, 3, 20, 9).unwrap();
        assert_eq!(a, b);
        assert!(a.passed());
    }

    #[test]
    fn permutation_enumeration() {
        let perms = all_permutations(4);
        assert_eq!(perms.len(), 24);
        let distinct: std::collections::BTreeSet<Vec<u16>> =
            perms.iter().map(|p| p.as_slice().to_vec()).collect();
        assert_eq!(distinct.len(), 24);
    }

    #[test]
    fn distance_properties() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let one = BigRational::from_integer(BigInt::from(1));
        let a = vec![vec![1u8]];
        let b = vec![vec![2u8]];
        let p: Distribution = [(a.clone(), one.clone())].into_iter().collect();
        let q: Distribution = [(a.clone(), half.clone()), (b.clone(), half.clone())]
            .into_iter()
            .collect();
        assert_eq!(statistical_distance(&p, &q), half);
        assert_eq!(statistical_distance(&q, &p), half);
        assert!(statistical_distance(&p, &p).is_zero());
        let disjoint: Distribution = [(b, one)].into_iter().collect();
        assert_eq!(
            statistical_distance(&p, &disjoint),
            BigRational::from_integer(BigInt::from(1))
        );
    }

    #[test]
    fn hvzk_exact_at_4_2_1() {
        let (stern, pk, sk, _) = setup(4, 2, 1, 5);
        for (c, d) in hvzk_exact_distance(&stern, &pk, &sk, SimulatorVariant::Correct).unwrap() {
            assert!(d.is_zero(), "challenge {c}: {d}");
        }
        let broken = hvzk_exact_distance(&stern, &pk, &sk, SimulatorVariant::BrokenWeight).unwrap();
        assert!(broken[0].1 > BigRational::zero());
        assert!(broken[1].1.is_zero() && broken[2].1.is_zero());
    }

    #[test]
    fn hvzk_rejects_large_n() {
        let (stern, pk, sk, _) = setup(5, 2, 1, 6);
        assert!(matches!(
            hvzk_exact_distance(&stern, &pk, &sk, SimulatorVariant::Correct),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn small_completeness_with_each_commitment() {
        let params = ParamsBlock::new(SternParams::new(32, 16, 4).unwrap(), 8, 24).unwrap();
        let hash =
            completeness_suite(&params, 50, &|_| Ok(CommitmentScheme::hash(67, 24)), 1).unwrap();
        assert!(hash.passed());
        let fp = ParamsBlock::new(params.stern, 8, params.stern.slot_width()).unwrap();
        let feistel =
            completeness_suite(&fp, 50, &|rng| random_feistel_commitment(&fp.stern, rng), 2)
                .unwrap();
        assert!(feistel.passed());
    }

    #[test]
    fn forgery_adversary_at_small_r_sometimes_wins() {
        // At r = 2 a single query succeeds with probability 4/9.
        let params = ParamsBlock::new(SternParams::new(16, 8, 2).unwrap(), 2, 16).unwrap();
        let rep = forgery_smoke(&params, 10, 20, 7).unwrap();
        assert!(rep.forgeries > 0);
        assert_eq!(rep.best_matched, 2);
    }

    #[test]
    fn lemma_small_exhaustive() {
        for r in 1..=2 {
            for gamma in 2..=3 {
                let rep = subset_lemma_exhaustive(3, r, gamma).unwrap();
                assert_eq!(rep.counterexamples, 0);
            }
        }
        // At r = 1 the threshold is γ: one 3-set, and three 2-sets plus the 3-set.
        assert_eq!(subset_lemma_exhaustive(3, 1, 3).unwrap().checked, 1);
        assert_eq!(subset_lemma_exhaustive(3, 1, 2).unwrap().checked, 4);
    }

    #[test]
    fn lemma_check_catches_bad_answers() {
        let set = vec![vec![1u8, 1], vec![1, 2], vec![2, 1], vec![2, 2], vec![3, 3]];
        assert!(lemma_holds(&set, 3, 2));
        assert!(lemma_holds(&set[..4], 3, 2));
    }

    #[test]
    fn feistel_checks_small() {
        let rep = feistel_checks(1, 100, 3).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn summary_format() {
        let s = Summary::new("demo", true).field("trials", 3);
        assert_eq!(s.to_string(), "experiment=demo\ntrials=3\nresult=pass\n");
    }
}
