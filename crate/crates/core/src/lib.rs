//! Exact normal ordering of boson strings and the generalized Stirling and
//! Bell numbers that appear as its coefficients.
//!
//! A boson string `(a†)^{r_n} a^{s_n} ⋯ (a†)^{r_1} a^{s_1}` normal-orders to
//! `(a†)^{d_n} Σ_k S_{r,s}(k) (a†)^k a^k`. The crate computes the numbers
//! `S_{r,s}(k)` by four independent routes and checks them against each other:
//!
//! - [`algebra`]: term rewriting with the commutation relation `[a, a†] = 1`.
//! - [`stirling`]: the recurrence, the alternating closed form, the Bell
//!   polynomial operator recursion and Dobiński-type series.
//! - [`combinat`]: exhaustive enumeration of colonies of bugs, settlements and
//!   increasing forests.
//! - [`series`]: exact formal power series for the uniform `s = 1` case.
//!
//! The [`cli`] module holds the command-line front end used by the
//! `boson-order` binary.
//!
//! ```
//! use boson_order::{algebra, stirling, StringType};
//!
//! let t = StringType::uniform(1, 1, 3).unwrap();
//! let nf = algebra::normal_order(&algebra::word_from_type(&t));
//! let (d, table) = algebra::extract_stirling(&nf).unwrap();
//! assert_eq!(d, 0);
//! assert_eq!(table, stirling::stirling_recurrence(&t).values);
//! assert_eq!(stirling::bell_number(&t), 5u32.into());
//! ```

pub mod algebra;
pub mod arith;
pub mod cli;
pub mod combinat;
pub mod error;
pub mod series;
pub mod stirling;
mod types;

pub use error::{Error, Result};
pub use types::StringType;
