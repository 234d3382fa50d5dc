//! Lists every colony of a small type, as text and as Graphviz DOT.
//!
//! `cargo run --example colonies -- --dot | dot -Tsvg > colonies.svg`

use boson_order::combinat::{self, DEFAULT_ENUM_CAP};
use boson_order::StringType;

fn main() -> boson_order::Result<()> {
    let dot = std::env::args().any(|a| a == "--dot");
    let t = StringType::new(vec![2, 1], vec![1, 2])?;
    let colonies = combinat::enumerate_colonies(&t, DEFAULT_ENUM_CAP)?;
    if dot {
        for c in &colonies {
            println!("{}", c.to_dot());
        }
        return Ok(());
    }
    for (i, c) in colonies.iter().enumerate() {
        println!(
            "colony {} of {t}: {} free legs, {} empty cells",
            i + 1,
            c.free_legs(),
            combinat::empty_cells(c)
        );
        print!("{}", c.to_text());
    }
    println!(
        "by free legs: {:?}",
        combinat::count_colonies_by_free_legs(&t, DEFAULT_ENUM_CAP)?
    );
    Ok(())
}
