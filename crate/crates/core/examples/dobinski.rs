//! Evaluates Bell polynomials through their Dobiński series.

use boson_order::stirling;
use boson_order::StringType;
use num_rational::BigRational;
use num_traits::One;

fn main() -> boson_order::Result<()> {
    let x = BigRational::one();
    for (r, s) in [
        (vec![1, 1, 1], vec![1, 1, 1]),
        (vec![2, 2], vec![1, 1]),
        (vec![3, 1], vec![2, 2]),
    ] {
        let t = StringType::new(r, s)?;
        let approx = stirling::dobinski_eval(&t, &x, 40)?;
        println!(
            "{t}: B(1) = {} exactly, series gives {} after {} terms",
            stirling::bell_number(&t),
            approx.value,
            approx.terms_used
        );
    }

    let t = StringType::uniform(1, 1, 4)?;
    let half = BigRational::new(1.into(), 2.into());
    let approx = stirling::dobinski_eval(&t, &half, 30)?;
    println!(
        "{t}: B(1/2) = {} (series {})",
        stirling::bell_polynomial(&t).eval(&half),
        approx.value
    );
    Ok(())
}
