//! Normal-order a few boson words and read off their Stirling tables.
//!
//! Run with `cargo run --example normal_order -- "ad^3 a^2 ad^2 a^2"`.

use boson_order::algebra::{self, RewriteStrategy};
use boson_order::cli::parse_word;

fn main() -> boson_order::Result<()> {
    let inputs: Vec<String> = match std::env::args().nth(1) {
        Some(w) => vec![w],
        None => vec![
            "a ad".into(),
            "ad a ad a".into(),
            "ad^3 a^2 ad^2 a^2".into(),
            "a^2 ad".into(),
        ],
    };
    for text in inputs {
        let word = parse_word(&text)?;
        let nf = algebra::normal_order(&word);
        // both engines must agree
        assert_eq!(
            nf,
            algebra::normal_order_with(&word, RewriteStrategy::SingleLetter)
        );
        println!("{text}  =  {}", nf.to_operator_string());
        match algebra::extract_stirling(&nf) {
            Ok((d, table)) => println!("    d = {d}, S = {table:?}"),
            Err(e) => println!("    no Stirling table: {e}"),
        }
    }
    Ok(())
}
