//! Computes one Stirling table four ways and prints them side by side.

use boson_order::algebra;
use boson_order::combinat::{self, DEFAULT_ENUM_CAP};
use boson_order::stirling;
use boson_order::StringType;

fn main() -> boson_order::Result<()> {
    let t = StringType::new(vec![3, 2, 1, 3], vec![2, 2, 2, 3])?;
    let (_, rewritten) =
        algebra::extract_stirling(&algebra::normal_order(&algebra::word_from_type(&t)))?;
    let recurrence = stirling::stirling_recurrence(&t);
    let enumerated = combinat::count_colonies_by_free_legs(&t, DEFAULT_ENUM_CAP)?;

    println!("type {t}, d = {}", t.excess());
    println!(
        "{:>3} {:>10} {:>10} {:>10} {:>10}",
        "k", "rewrite", "recurrence", "closed", "colonies"
    );
    for k in t.first_s()..=t.total_s() {
        println!(
            "{k:>3} {:>10} {:>10} {:>10} {:>10}",
            rewritten.get(&k).cloned().unwrap_or_default(),
            recurrence.get(k),
            stirling::stirling_closed_form(&t, k)?,
            enumerated.get(&k).cloned().unwrap_or_default(),
        );
    }
    println!("Bell number {}", recurrence.bell());
    Ok(())
}
