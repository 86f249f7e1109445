//! Parameter selection from the concrete security bound
//!
//! ```text
//! Adv ≤ Adv_spp(t′, q_H) + q_H²·(γ−1)^r / |C|^r + (q_G + q_H)³ / |M|
//! ```
//!
//! with every hidden constant taken as 1. Boundary comparisons are done in
//! exact integer arithmetic; the `log₂` values are for display only. A term
//! that equals 1 exactly is flagged rather than accepted.

use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Number of commit-and-open slots in one Stern round.
pub const STERN_SLOTS: u64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SecurityTarget {
    pub lambda: u32,
    /// `log₂ q_H`
    pub log2_qh: u32,
    /// `log₂ q_G`
    pub log2_qg: u32,
    pub gamma: u32,
    pub challenge_size: u32,
}

impl SecurityTarget {
    /// `λ` bits with `q_H = q_G = 2^λ`, `γ = 3`, `|C| = 3`.
    pub fn new(lambda: u32) -> Result<Self> {
        let t = Self {
            lambda,
            log2_qh: lambda,
            log2_qg: lambda,
            gamma: 3,
            challenge_size: 3,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda == 0 {
            return Err(Error::InvalidParameter("lambda must be at least 1".into()));
        }
        if self.gamma < 2 {
            return Err(Error::InvalidParameter("gamma must be at least 2".into()));
        }
        if self.challenge_size < self.gamma {
            return Err(Error::InvalidParameter(format!(
                "challenge space {} smaller than gamma {}",
                self.challenge_size, self.gamma
            )));
        }
        Ok(())
    }
}

/// Where a bound term sits relative to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermStatus {
    Below,
    AtThreshold,
    Above,
}

impl TermStatus {
    fn from_cmp(lhs: &BigUint, rhs: &BigUint) -> Self {
        match lhs.cmp(rhs) {
            std::cmp::Ordering::Less => TermStatus::Below,
            std::cmp::Ordering::Equal => TermStatus::AtThreshold,
            std::cmp::Ordering::Greater => TermStatus::Above,
        }
    }

    pub fn is_ok(self) -> bool {
        self == TermStatus::Below
    }

    pub fn name(self) -> &'static str {
        match self {
            TermStatus::Below => "ok",
            TermStatus::AtThreshold => "threshold",
            TermStatus::Above => "insufficient",
        }
    }
}

fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

/// `q_H²·(γ−1)^r` against `|C|^r`.
fn challenge_status(log2_qh: u32, gamma: u32, c: u32, r: u64) -> TermStatus {
    let exp = u32::try_from(r).expect("repetition count fits u32");
    let lhs = pow2(2 * u64::from(log2_qh)) * BigUint::from(gamma - 1).pow(exp);
    let rhs = BigUint::from(c).pow(exp);
    TermStatus::from_cmp(&lhs, &rhs)
}

fn search_repetitions(target: &SecurityTarget, accept: impl Fn(TermStatus) -> bool) -> Result<u64> {
    target.validate()?;
    let (gamma, c) = (target.gamma, target.challenge_size);
    if c < gamma {
        return Err(Error::InvalidParameter(format!(
            "no repetition count works when |C| = {c} <= gamma - 1 = {}",
            gamma - 1
        )));
    }
    let ratio = (f64::from(c) / f64::from(gamma - 1)).log2();
    let mut r = ((2.0 * f64::from(target.log2_qh)) / ratio).floor().max(0.0) as u64;
    let status = |r| challenge_status(target.log2_qh, gamma, c, r);
    while !accept(status(r)) {
        r += 1;
    }
    while r > 0 && accept(status(r - 1)) {
        r -= 1;
    }
    Ok(r)
}

/// Smallest `r` with `q_H²·(γ−1)^r / |C|^r < 1`.
pub fn repetitions_for_target(target: &SecurityTarget) -> Result<u64> {
    search_repetitions(target, TermStatus::is_ok)
}

/// Smallest `r` with `2^{2λ}·((γ−1)/|C|)^r < 1`.
pub fn repetitions_for(lambda: u32, gamma: u32, challenge_size: u32) -> Result<u64> {
    repetitions_for_target(&SecurityTarget {
        lambda,
        log2_qh: lambda,
        log2_qg: lambda,
        gamma,
        challenge_size,
    })
}

/// `3λ` rounded up to whole bytes.
pub fn commit_bits_for(lambda: u32) -> Result<u64> {
    if lambda == 0 {
        return Err(Error::InvalidParameter("lambda must be at least 1".into()));
    }
    Ok((3 * u64::from(lambda)).div_ceil(8) * 8)
}

pub fn commit_bytes_for(lambda: u32) -> Result<usize> {
    Ok((commit_bits_for(lambda)? / 8) as usize)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub target: SecurityTarget,
    pub repetitions: u64,
    pub commit_bits: u64,
    /// `log₂(q_H²·(γ−1)^r / |C|^r)`
    pub log2_challenge_term: f64,
    pub challenge_status: TermStatus,
    /// `log₂(q_G³ / |M|)`
    pub log2_collision_term: f64,
    pub collision_status: TermStatus,
    /// `log₂((q_G + q_H)³ / |M|)`
    pub log2_collision_term_full: f64,
    pub collision_status_full: TermStatus,
    /// `3r + 3·|C|`, the extractor's additive running-time overhead.
    pub extractor_overhead: u64,
    /// Smallest `r` under the non-strict form `q_H²·2^r/3^r ≤ 1`.
    pub nonstrict_repetitions: u64,
}

impl BoundReport {
    /// True when both terms are strictly below 1.
    pub fn is_sufficient(&self) -> bool {
        self.challenge_status.is_ok() && self.collision_status.is_ok()
    }

    /// True when any term is exactly 1.
    pub fn has_threshold_flag(&self) -> bool {
        self.challenge_status == TermStatus::AtThreshold
            || self.collision_status == TermStatus::AtThreshold
    }
}

pub fn bound_report(target: &SecurityTarget, r: u64, commit_bits: u64) -> Result<BoundReport> {
    target.validate()?;
    let (qh, qg) = (u64::from(target.log2_qh), u64::from(target.log2_qg));
    let gamma = target.gamma;
    let c = target.challenge_size;

    let log2_challenge_term =
        2.0 * qh as f64 + r as f64 * (f64::from(gamma - 1) / f64::from(c)).log2();
    let challenge_status = challenge_status(target.log2_qh, gamma, c, r);

    let m = pow2(commit_bits);
    let collision_status = TermStatus::from_cmp(&pow2(3 * qg), &m);
    let sum = pow2(qg) + pow2(qh);
    let collision_status_full = TermStatus::from_cmp(&sum.pow(3), &m);
    let log2_sum = qg.max(qh) as f64 + (1.0 + 2f64.powf(-(qg.abs_diff(qh) as f64))).log2();

    let nonstrict_repetitions = search_repetitions(target, |s| s != TermStatus::Above)?;

    Ok(BoundReport {
        target: *target,
        repetitions: r,
        commit_bits,
        log2_challenge_term,
        challenge_status,
        log2_collision_term: 3.0 * qg as f64 - commit_bits as f64,
        collision_status,
        log2_collision_term_full: 3.0 * log2_sum - commit_bits as f64,
        collision_status_full,
        extractor_overhead: STERN_SLOTS * r + STERN_SLOTS * u64::from(c),
        nonstrict_repetitions,
    })
}

/// Report at the recommended `r` and `|M|` for a target.
pub fn recommend(target: &SecurityTarget) -> Result<BoundReport> {
    bound_report(
        target,
        repetitions_for_target(target)?,
        commit_bits_for(target.lambda)?,
    )
}

impl BoundReport {
    pub fn render_table(&self) -> String {
        let t = &self.target;
        let mut s = String::new();
        let _ = writeln!(s, "security target");
        let _ = writeln!(s, "  lambda                {:>8}", t.lambda);
        let _ = writeln!(s, "  gamma                 {:>8}", t.gamma);
        let _ = writeln!(s, "  |C|                   {:>8}", t.challenge_size);
        let _ = writeln!(s, "  log2 q_H              {:>8}", t.log2_qh);
        let _ = writeln!(s, "  log2 q_G              {:>8}", t.log2_qg);
        let _ = writeln!(s, "parameters");
        let _ = writeln!(s, "  repetitions r         {:>8}", self.repetitions);
        let _ = writeln!(s, "  commitment |M| bits   {:>8}", self.commit_bits);
        let _ = writeln!(
            s,
            "  commitment bytes      {:>8}",
            self.commit_bits.div_ceil(8)
        );
        let _ = writeln!(s, "bound terms (log2, O-constants = 1)");
        let _ = writeln!(
            s,
            "  q_H^2 (g-1)^r / |C|^r {:>8.3}  {}",
            self.log2_challenge_term,
            self.challenge_status.name()
        );
        let _ = writeln!(
            s,
            "  q_G^3 / |M|           {:>8.3}  {}",
            self.log2_collision_term,
            self.collision_status.name()
        );
        let _ = writeln!(
            s,
            "  (q_G+q_H)^3 / |M|     {:>8.3}  {}",
            self.log2_collision_term_full,
            self.collision_status_full.name()
        );
        let _ = writeln!(s, "reduction cost");
        let _ = writeln!(
            s,
            "  t' = O_n(t) + slots*r + slots*|C| = O_n(t) + {}",
            self.extractor_overhead
        );
        let _ = writeln!(s, "notes");
        let _ = writeln!(
            s,
            "  non-strict form (term <= 1) needs r >= {}",
            self.nonstrict_repetitions
        );
        let _ = writeln!(
            s,
            "  the O_n(t) polynomial and the signature min-entropy term are not computed"
        );
        s
    }

    pub fn render_kv(&self) -> String {
        let t = &self.target;
        let mut s = String::new();
        let pairs: [(&str, String); 17] = [
            ("lambda", t.lambda.to_string()),
            ("gamma", t.gamma.to_string()),
            ("challenge_size", t.challenge_size.to_string()),
            ("log2_qh", t.log2_qh.to_string()),
            ("log2_qg", t.log2_qg.to_string()),
            ("r", self.repetitions.to_string()),
            ("commit_bits", self.commit_bits.to_string()),
            ("commit_bytes", self.commit_bits.div_ceil(8).to_string()),
            (
                "log2_challenge_term",
                format!("{:.6}", self.log2_challenge_term),
            ),
            ("challenge_term", self.challenge_status.name().into()),
            (
                "log2_collision_term",
                format!("{:.6}", self.log2_collision_term),
            ),
            ("collision_term", self.collision_status.name().into()),
            (
                "log2_collision_term_full",
                format!("{:.6}", self.log2_collision_term_full),
            ),
            (
                "collision_term_full",
                self.collision_status_full.name().into(),
            ),
            ("extractor_overhead", self.extractor_overhead.to_string()),
            ("nonstrict_r", self.nonstrict_repetitions.to_string()),
            ("o_constants", "1".into()),
        ];
        for (k, v) in pairs {
            let _ = writeln!(s, "{k}={v}");
        }
        s
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_table())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repetitions_match_published_values() {
        assert_eq!(repetitions_for(64, 3, 3).unwrap(), 219);
        assert_eq!(repetitions_for(128, 3, 3).unwrap(), 438);
        // 2 / log2(1.5) = 3.419, strict inequality gives 4.
        assert_eq!(repetitions_for(1, 3, 3).unwrap(), 4);
    }

    #[test]
    fn repetitions_brute_force() {
        // Direct float evaluation of the defining inequality, away from
        // integer boundaries.
        for lambda in 1..=200u32 {
            let r = repetitions_for(lambda, 3, 3).unwrap();
            let f = |r: u64| 2.0 * f64::from(lambda) + r as f64 * (2.0f64 / 3.0).log2();
            assert!(f(r) < 0.0);
            assert!(f(r - 1) >= 0.0);
        }
    }

    #[test]
    fn exact_boundary_is_strict() {
        // gamma = 2, |C| = 4: 2^{2λ} < 4^r  <=>  r > λ.
        assert_eq!(repetitions_for(10, 2, 4).unwrap(), 11);
        let t = SecurityTarget {
            lambda: 10,
            log2_qh: 10,
            log2_qg: 10,
            gamma: 2,
            challenge_size: 4,
        };
        let rep = bound_report(&t, 10, 40).unwrap();
        assert_eq!(rep.challenge_status, TermStatus::AtThreshold);
        assert_eq!(rep.nonstrict_repetitions, 10);
    }

    #[test]
    fn impossible_targets() {
        assert!(repetitions_for(64, 4, 3).is_err());
        assert!(repetitions_for(64, 1, 3).is_err());
        assert!(repetitions_for(0, 3, 3).is_err());
    }

    #[test]
    fn commit_bits() {
        assert_eq!(commit_bits_for(64).unwrap(), 192);
        assert_eq!(commit_bits_for(128).unwrap(), 384);
        assert_eq!(commit_bits_for(8).unwrap(), 24);
        assert_eq!(commit_bytes_for(8).unwrap(), 3);
        assert_eq!(commit_bits_for(1).unwrap(), 8);
    }

    #[test]
    fn report_boundaries() {
        let t = SecurityTarget::new(64).unwrap();
        let ok = bound_report(&t, 219, 192).unwrap();
        assert!(ok.log2_challenge_term < 0.0);
        assert_eq!(ok.challenge_status, TermStatus::Below);
        let short = bound_report(&t, 218, 192).unwrap();
        assert!(short.log2_challenge_term >= 0.0);
        assert_eq!(short.challenge_status, TermStatus::Above);
        // 3·64 − 192 = 0
        assert_eq!(ok.log2_collision_term, 0.0);
        assert_eq!(ok.collision_status, TermStatus::AtThreshold);
        assert!(ok.has_threshold_flag());
        assert_eq!(ok.collision_status_full, TermStatus::Above);
        assert_eq!(ok.nonstrict_repetitions, 219);
        assert_eq!(ok.extractor_overhead, 3 * 219 + 9);
    }

    #[test]
    fn recommended_parameters_are_consistent() {
        let mut last_r = 0;
        for lambda in 1..=256 {
            let rep = recommend(&SecurityTarget::new(lambda).unwrap()).unwrap();
            assert!(rep.repetitions >= last_r);
            last_r = rep.repetitions;
            assert!(rep.challenge_status.is_ok());
            assert!(
                rep.collision_status.is_ok() || rep.collision_status == TermStatus::AtThreshold
            );
            assert!(rep.log2_challenge_term < 0.0);
            assert!(rep.log2_collision_term <= 0.0);
        }
    }

    #[test]
    fn rendering_contains_key_values() {
        let rep = recommend(&SecurityTarget::new(128).unwrap()).unwrap();
        let kv = rep.render_kv();
        assert!(kv.contains("r=438\n"));
        assert!(kv.contains("commit_bits=384\n"));
        assert!(rep.render_table().contains("438"));
    }
}
