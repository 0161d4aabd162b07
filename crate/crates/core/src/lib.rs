//! Exact-arithmetic toolkit for Fermat equations of signature (r, r, p),
//! that is, x^r + y^r = D*z^p with r a fixed prime > 5.
//!
//! The crate builds the maximal totally real subfield K of the r-th
//! cyclotomic field, factors x^r + y^r into the quadratic forms
//! f_j = x^2 + y^2 + alpha_j*x*y over O_K, tracks valuations at the unique
//! prime beta over r, decomposes the factor ideals, constructs the two Frey
//! curves attached to a putative solution, and derives the level data and
//! inertia/side conditions those curves feed into the modular method.
//!
//! Modules:
//! - [`ring`]: the ring O_K = Z[zeta_r + zeta_r^(-1)], norms, Galois action,
//!   beta-adic valuation.
//! - [`ideal`]: integral ideals as Hermite-normal-form lattices, prime
//!   splitting, ideal gcd/product, valuations at prime ideals.
//! - [`fermat`]: the factor profile of x^r + y^r and its ideal
//!   decomposition.
//! - [`frey`]: both Frey curves, their Weierstrass invariants, reduction
//!   types, level data and the j-valuation/inertia criteria.
//! - [`harness`]: end-to-end analysis, context enumeration, fixtures,
//!   brute-force search and the property sweep; all output JSON-ready.

pub mod arith;
pub mod error;
pub mod fermat;
pub mod frey;
pub mod harness;
pub mod ideal;
pub mod modpoly;
pub mod ring;

pub use error::{Error, Result};
pub use fermat::{
    build_factors, decompose_factors, valuation_balance_check, verify_pairwise_coprimality,
    FactorDecomposition, FactorProfile, SolutionContext,
};
pub use frey::{
    curve_invariants, eichler_shimura_condition, frey_type1, frey_type2, generic_invariants,
    inertia_criterion, j_beta_valuation, j_lambda_check, level_data, reduction_type, CurveKind,
    FreyCurve, LevelData, ReductionType,
};
pub use ideal::{factor_rational_prime, IdealHnf, PrimeIdeal};
pub use ring::{RingContext, RingElement};
pub use harness::{analyze, contexts, fixture_type2, search, sweep, to_sorted_json};
