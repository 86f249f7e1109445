#![allow(dead_code)]

use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sternfs::commit::CommitmentScheme;
use sternfs::fiatshamir::{encode_public_key, encode_secret_key, sign, ParamsBlock};
use sternfs::stern::{keygen, SternParams};

pub const GOLDEN_SEED: u64 = 0x5EED_0001;
pub const GOLDEN_MESSAGE: &[u8] = b"golden message";

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

pub fn golden_params() -> ParamsBlock {
    ParamsBlock::new(SternParams::new(16, 8, 3).unwrap(), 4, 16).unwrap()
}

pub fn golden_commitment() -> CommitmentScheme {
    let p = golden_params();
    CommitmentScheme::hash(p.stern.slot_width(), usize::from(p.commit_len))
}

/// `(pk, sk, sig)` bytes from the fixed seed.
pub fn golden_bytes() -> (Vec<u8>, Vec<u8>, Vec<u8>) {
    let params = golden_params();
    let mut rng = ChaCha20Rng::seed_from_u64(GOLDEN_SEED);
    let (pk, sk) = keygen(&params.stern, &mut rng).unwrap();
    let sig = sign(
        &params,
        &pk,
        &sk,
        GOLDEN_MESSAGE,
        &mut rng,
        &golden_commitment(),
    )
    .unwrap();
    (
        encode_public_key(&params, &pk),
        encode_secret_key(&params, &sk),
        sig.to_bytes(),
    )
}

/// Seed used for the CLI golden files.
pub const CLI_SEED: &str = "000102030405060708090a0b0c0d0e0f";

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_sternfs")
}
