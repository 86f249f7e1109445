//! Rewrites the golden files when `STERNFS_BLESS=1`; otherwise a no-op.

mod common;

use std::process::Command;

#[test]
fn bless() {
    if std::env::var("STERNFS_BLESS").as_deref() != Ok("1") {
        return;
    }
    let dir = common::golden_dir();
    std::fs::create_dir_all(&dir).unwrap();
    let (pk, sk, sig) = common::golden_bytes();
    std::fs::write(dir.join("lib_pk.bin"), pk).unwrap();
    std::fs::write(dir.join("lib_sk.bin"), sk).unwrap();
    std::fs::write(dir.join("lib_sig.bin"), sig).unwrap();
    std::fs::write(dir.join("message.txt"), common::GOLDEN_MESSAGE).unwrap();

    let run = |args: &[&str]| {
        let st = Command::new(common::bin()).args(args).status().unwrap();
        assert!(st.success());
    };
    let p = |name: &str| dir.join(name).to_str().unwrap().to_string();
    run(&[
        "keygen",
        "--lambda",
        "8",
        "--out-pk",
        &p("cli_pk.bin"),
        "--out-sk",
        &p("cli_sk.bin"),
        "--seed",
        common::CLI_SEED,
    ]);
    run(&[
        "sign",
        "--pk",
        &p("cli_pk.bin"),
        "--sk",
        &p("cli_sk.bin"),
        "--msg",
        &p("message.txt"),
        "--out",
        &p("cli_sig.bin"),
        "--seed",
        common::CLI_SEED,
    ]);
}
