//! Selmer ratios of small-degree isogenies over Q and their distribution
//! across quadratic twist families.

pub mod arith;
pub mod curves;
pub mod error;
pub mod families;
pub mod isogeny;
pub mod local;
pub mod report;
pub mod twist;

pub use arith::density::DensityPolynomial;
pub use arith::factor::{factor, Factorization};
pub use arith::poly::Poly;
pub use arith::zassenhaus::{factor_poly_small, rational_roots};
pub use arith::{valuation, Integer, Rational};
pub use error::{Error, Result};
pub use curves::{Invariants, IsoTransform, WeierstrassCurve, XMap};
pub use local::{is_split, tate, Kodaira, LocalData, PotentialKind, ReductionKind};
pub use isogeny::{
    alpha, division_polynomial, dual, global_selmer_ratio, local_selmer_ratio, rational_kernels,
    split_mult_ratio_check, velu, Isogeny, Place, SelmerRatio,
};
pub use twist::{
    class_of, class_representatives, generating_polynomial, joint_generating_polynomial,
    rank_report, sha_report, twist_isogeny, twist_report, Restriction, ShaStatement, SquareClass,
    TwistReport,
};
pub use twist::empirical::{empirical_verify, EmpiricalReport};
