//! Parametrized families: Hesse curves with two independent 3-isogenies,
//! the multiplicative-prime classification, the 18-isogeny family, rigged
//! parameter search and the discriminant square test.

mod delta;
mod family18;
mod hesse;
mod rigged;

pub use delta::{delta_square_test, x06_curve, x06_j};
pub use family18::{family18, family18_special_primes, Family18Member, MinimalityDrops};
pub use hesse::{
    classify_mult_primes, hesse, hesse_j, hesse_j_prime, hesse_j_second, j_pattern,
    theorem44_bound, three_isogeny_pair, HesseCurve, JPattern, MultPrimeClassification,
};
pub use rigged::{omega, search_rigged};
