//! Gaussian hypergeometric series over prime fields, and the point counts of
//! Edwards, twisted Edwards, Legendre and Clausen curves they describe.
//!
//! The crate is layered bottom-up:
//!
//! * [`field`]: the prime field with primitive-root log tables, Legendre
//!   symbols, square roots and two-squares decompositions.
//! * [`characters`]: the multiplicative characters `χ_k`, valued exactly as
//!   roots of unity.
//! * [`charsums`]: Jacobi and Gauss sums, the binomial symbol, the general
//!   `ₙ₊₁Fₙ` evaluator and exact rational evaluators for the quadratic cases.
//! * [`curves`]: curve models, brute-force and closed-form point counts,
//!   the Edwards addition law and isogeny partners.

pub mod characters;
pub mod charsums;
pub mod curves;
pub mod error;
pub mod field;
pub mod rational;

pub use characters::{all_characters, CharValue, Character};
pub use charsums::{
    binomial_symbol, binomial_symbol_gauss, delta_char, delta_indicator, gauss_sum, hypergeometric_series,
    jacobi_sum, two_f_one_phi_eps_phi_exact, two_f_one_quadratic_exact, two_f_one_special_value,
    BinomialTable, ComplexVal, GaussSumTable, HypergeomParams, HypergeometricSeries, SpecialArgument,
};
pub use curves::{
    clausen_identity_check, count_points_brute, count_points_formula, edwards_add,
    isogenous_legendre_partner, twisted_partner_of_weierstrass, validate_model, AffinePoint, ClausenCheck,
    CountMethod, CountReport, CurveModel,
};
pub use error::{Error, Result};
pub use field::{two_squares_decomposition, FieldContext, TwoSquares};
pub use rational::ExactRational;
