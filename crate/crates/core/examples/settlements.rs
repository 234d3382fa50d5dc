//! Counts settlements on m ground cells and compares with the product formula.

use boson_order::combinat::{self, DEFAULT_ENUM_CAP};
use boson_order::stirling;
use boson_order::StringType;

fn main() -> boson_order::Result<()> {
    let t = StringType::new(vec![2, 2], vec![1, 1])?;
    println!("type {t}");
    for m in 0..=5 {
        println!(
            "m = {m}: {} settlements (product {}), {} surjective",
            combinat::enumerate_settlements(&t, m, DEFAULT_ENUM_CAP)?,
            stirling::settlement_product(&t, m),
            combinat::count_surjective_settlements(&t, m, DEFAULT_ENUM_CAP)?,
        );
    }
    for s in combinat::settlements(&t, 2, DEFAULT_ENUM_CAP)? {
        println!("--{}", if s.is_surjective() { " surjective" } else { "" });
        print!("{}", s.to_text());
    }
    Ok(())
}
