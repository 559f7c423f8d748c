//! Exact computations with higher-rank initial ideals, weight valuations,
//! Khovanskii bases, tropical prime cones and Newton-Okounkov polytopes.
//!
//! ```
//! use khova_core::polyhedra::{lattice_volume, newton_okounkov_body};
//! use khova_core::valuation::{khovanskii_test, ValuationContext};
//! use khova_core::{parse_polynomial, rat, Caps, Ideal, Vars, WeightMatrix};
//!
//! # fn main() -> khova_core::Result<()> {
//! let caps = Caps::default();
//! let vars = Vars::new(&["x", "y", "z"]);
//! let ideal = Ideal::parse(&vars, &["y^2*z - x^3 + 7*x*z^2 - 2*z^3"])?;
//! let m = WeightMatrix::from_ints(&[&[-1, -1, -1], &[-2, -3, 0]]);
//! let ctx = ValuationContext::presentation(&ideal, &m, &caps)?;
//!
//! assert_eq!(ctx.evaluate(&parse_polynomial("x", &vars)?)?.to_string(), "(-1, -2)");
//! assert!(khovanskii_test(&ctx, &caps)?.holds);
//! let body = newton_okounkov_body(&ctx, &caps)?;
//! assert_eq!(lattice_volume(&body, 1)?, rat(3));
//! # Ok(())
//! # }
//! ```

pub mod algebra;
pub mod error;
pub mod factor;
pub mod fixtures;
pub mod fm;
pub mod groebner;
pub mod initial;
pub mod linalg;
pub mod order;
pub mod parse;
pub mod polyhedra;
pub mod polynomial;
pub mod tropical;
pub mod valuation;

pub use algebra::{
    rat, rat_frac, weight_compare, weight_of_monomial, ExponentVector, RankVector, Rational,
    WeightMatrix,
};
pub use error::{Error, Result};
pub use groebner::{Caps, GroebnerContext, Ideal};
pub use order::{compare, MonomialOrder};
pub use parse::parse_polynomial;
pub use polyhedra::{Inequality, RationalPolyhedron};
pub use polynomial::{poly_arith, ArithOp, Polynomial, Vars};
