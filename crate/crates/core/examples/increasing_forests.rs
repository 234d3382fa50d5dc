//! Maps (r,1) colonies to increasing r-ary forests and back.

use boson_order::combinat::{self, DEFAULT_ENUM_CAP};
use boson_order::StringType;

fn main() -> boson_order::Result<()> {
    let t = StringType::uniform(2, 1, 3)?;
    for c in combinat::enumerate_colonies(&t, DEFAULT_ENUM_CAP)? {
        let forest = combinat::colony_to_forest(&c)?;
        assert_eq!(combinat::forest_to_colony(&forest)?, c);
        let edges: Vec<String> = (1..=forest.vertex_count())
            .map(|v| match forest.parent(v) {
                Some((p, slot)) => format!("{v}<-{p}.{slot}"),
                None => format!("{v} root"),
            })
            .collect();
        println!("{}", edges.join(", "));
    }
    for r in 1..=3 {
        let counts: Vec<String> = (1..=5)
            .map(|n| {
                combinat::count_increasing_forests(r, n, DEFAULT_ENUM_CAP).map(|c| c.to_string())
            })
            .collect::<Result<_, _>>()?;
        println!("r = {r}: {}", counts.join(", "));
    }
    Ok(())
}
