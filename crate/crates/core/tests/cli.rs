use std::process::Command;

use boson_order::algebra::{BosonWord, Letter};
use boson_order::cli::{self, EXIT_COMPUTATION, EXIT_OK, EXIT_USAGE};
use proptest::prelude::*;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_boson-order"));
    cmd.env_remove("BOSON_ORDER_ENUM_CAP");
    cmd
}

fn run(args: &[&str]) -> cli::Outcome {
    let mut full = vec!["boson-order"];
    full.extend_from_slice(args);
    cli::run(full)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn printed_words_parse_back(letters in prop::collection::vec(
        prop_oneof![Just(Letter::Creation), Just(Letter::Annihilation)], 0..=12)) {
        let word = BosonWord::new(letters);
        prop_assert_eq!(cli::parse_word(&word.to_string()).unwrap(), word);
    }
}

#[test]
fn stirling_json_layout() {
    let out = run(&[
        "stirling", "--r", "1,1,1", "--s", "1,1,1", "--format", "json",
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(
        out.stdout,
        "{\"type\":{\"r\":[1,1,1],\"s\":[1,1,1]},\"d\":0,\"stirling\":{\"1\":\"1\",\"2\":\"3\",\"3\":\"1\"},\"bell\":\"5\",\"method\":\"recurrence\"}\n"
    );
}

#[test]
fn json_keys_are_numeric_order() {
    let out = run(&[
        "stirling",
        "--r",
        "1,1,1,1,1,1,1,1,1,1",
        "--s",
        "1,1,1,1,1,1,1,1,1,1",
        "--format",
        "json",
    ]);
    let pos = |key: &str| out.stdout.find(key).unwrap();
    assert!(pos("\"9\":") < pos("\"10\":"));
}

#[test]
fn csv_output() {
    let out = run(&[
        "stirling",
        "--word",
        "ad^3 a^2 ad^2 a^2",
        "--method",
        "rewrite",
        "--format",
        "csv",
    ]);
    assert_eq!(out.code, EXIT_OK);
    let first = out.stdout.lines().next().unwrap();
    assert_eq!(first, "k,S_k");
    let table = run(&["stirling", "--r", "2,3", "--s", "2,2", "--format", "csv"]);
    assert_eq!(out.stdout, table.stdout);
}

#[test]
fn every_method_gives_the_same_table() {
    let tables: Vec<String> = ["rewrite", "recurrence", "closed-form", "enumeration"]
        .iter()
        .map(|m| {
            run(&[
                "stirling", "--r", "2,1,3", "--s", "1,2,2", "--method", m, "--format", "csv",
            ])
            .stdout
        })
        .collect();
    assert!(tables.windows(2).all(|w| w[0] == w[1]), "{tables:?}");
}

#[test]
fn negative_excess_word() {
    let order = run(&["order", "--word", "a^2 ad"]);
    assert_eq!(order.code, EXIT_OK);
    assert!(order.stdout.contains("excess: -1"), "{}", order.stdout);
    assert!(
        order.stdout.contains("normal form: ad a^2 + 2 a"),
        "{}",
        order.stdout
    );
    let stirling = run(&["stirling", "--word", "a^2 ad", "--method", "rewrite"]);
    assert_eq!(stirling.code, EXIT_COMPUTATION);
    assert!(stirling.stderr.contains("-1"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        run(&["stirling", "--r", "2,2", "--s", "1"]).code,
        EXIT_USAGE
    );
    assert_eq!(run(&["order", "--word", "ad b"]).code, EXIT_USAGE);
    assert_eq!(
        run(&["order", "--word", "a", "--r", "1", "--s", "1"]).code,
        EXIT_USAGE
    );
    assert_eq!(run(&["order"]).code, EXIT_USAGE);
    assert_eq!(run(&["nonsense"]).code, EXIT_USAGE);
}

#[test]
fn binary_exit_codes() {
    let ok = bin()
        .args(["selfcheck", "--r", "2,2", "--s", "1,1", "--m-max", "4"])
        .output()
        .unwrap();
    assert_eq!(
        ok.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&ok.stdout)
    );
    let mismatch = bin()
        .args(["bell", "--r", "2,2", "--s", "1"])
        .output()
        .unwrap();
    assert_eq!(mismatch.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&mismatch.stderr).contains("error"));
    let too_large = bin()
        .args([
            "selfcheck",
            "--r",
            "3,2,1,3",
            "--s",
            "2,2,2,3",
            "--enum-cap",
            "1000",
        ])
        .output()
        .unwrap();
    assert_eq!(too_large.status.code(), Some(1));
    let non_canonical = bin()
        .args(["dobinski", "--r", "1,1", "--s", "2,1"])
        .output()
        .unwrap();
    assert_eq!(non_canonical.status.code(), Some(1));
}

#[test]
fn enum_cap_from_environment() {
    let capped = bin()
        .args([
            "colonies",
            "--r",
            "1,1,1,1",
            "--s",
            "1,1,1,1",
            "--count-only",
        ])
        .env("BOSON_ORDER_ENUM_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(1));
    let overridden = bin()
        .args([
            "colonies",
            "--r",
            "1,1,1,1",
            "--s",
            "1,1,1,1",
            "--count-only",
            "--enum-cap",
            "100",
        ])
        .env("BOSON_ORDER_ENUM_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(overridden.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&overridden.stdout).contains("total: 15"));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("boson-order-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bell.json");
    let out = bin()
        .args([
            "bell", "--r", "2,1", "--s", "1,1", "--format", "json", "--out",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"bell\":\"3\""), "{text}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn other_subcommands() {
    let d = run(&[
        "dobinski", "--r", "1,1", "--s", "1,1", "--x", "1", "--digits", "20",
    ]);
    assert_eq!(d.code, EXIT_OK);
    assert!(d.stdout.contains("value: 2"), "{}", d.stdout);
    let s = run(&["settlements", "--r", "2,2", "--s", "1,1", "--m", "3"]);
    assert!(
        s.stdout.contains("settlements: 12\nformula: 12"),
        "{}",
        s.stdout
    );
    let sur = run(&[
        "settlements",
        "--r",
        "2,2",
        "--s",
        "1,1",
        "--m",
        "2",
        "--surjective",
    ]);
    assert!(
        sur.stdout.contains("surjective settlements: 2\nformula: 2"),
        "{}",
        sur.stdout
    );
    let f = run(&["forests", "--arity", "2", "--n", "4"]);
    assert!(
        f.stdout.contains("forests: 73\ncolonies: 73"),
        "{}",
        f.stdout
    );
    let series = run(&["series", "--arity", "2", "--order", "4", "--format", "csv"]);
    assert_eq!(
        series.stdout,
        "n,forests,trees\n0,1,1\n1,1,1\n2,3,2\n3,13,6\n4,73,24\n"
    );
    let dot = run(&["colonies", "--r", "1,1", "--s", "1,1", "--dot"]);
    assert_eq!(dot.stdout.matches("digraph").count(), 2);
    let help = run(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("selfcheck"));
}
