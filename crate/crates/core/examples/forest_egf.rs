//! Tree and forest generating functions, and the explicit sum for B_{r,1}(n).

use boson_order::series;

fn main() -> boson_order::Result<()> {
    for r in 2..=4 {
        let trees = series::tree_series(r, 8)?;
        assert_eq!(trees, series::tree_series_closed_form(r, 8)?);
        let forests = series::forest_egf(r, 8)?;
        let t: Vec<String> = (0..=8)
            .map(|n| trees.egf_coefficient(n).to_string())
            .collect();
        let f: Vec<String> = (0..=8)
            .map(|n| forests.egf_coefficient(n).to_string())
            .collect();
        println!(
            "r = {r}\n  trees:   {}\n  forests: {}",
            t.join(", "),
            f.join(", ")
        );
        let approx = series::bell_r1_numeric(r, 5, 25)?;
        println!(
            "  explicit sum at n = 5: {} ({} terms)",
            approx.value, approx.terms_used
        );
    }
    Ok(())
}
