//! Coherent-state expectation values of normally ordered strings.

use boson_order::stirling;
use boson_order::StringType;
use num_complex::Complex;
use num_rational::BigRational;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn show(re: impl std::fmt::Display, im: impl std::fmt::Display) -> String {
    let im = im.to_string();
    match im.strip_prefix('-') {
        Some(abs) => format!("{re} - {abs}i"),
        None => format!("{re} + {im}i"),
    }
}

fn main() -> boson_order::Result<()> {
    let t = StringType::new(vec![3, 1], vec![1, 2])?;
    for z in [
        Complex::new(q(1, 1), q(0, 1)),
        Complex::new(q(0, 1), q(1, 1)),
        Complex::new(q(1, 2), q(-1, 3)),
    ] {
        let v = stirling::coherent_expectation(&t, &z, 25)?;
        println!("z = {}: {}", show(&z.re, &z.im), show(&v.re, &v.im));
    }
    Ok(())
}
