//! Rank-2 wavelet filter banks with exact rational arithmetic.
//!
//! A genus-N bank is a pair of length-2N filters (h0, h1) satisfying the
//! shift-orthogonality (quadratic) condition and the linear condition
//! h0(1) = 2, h1(1) = 0. Every such bank is encoded by a single Laurent
//! polynomial parameter phi with N-1 free coefficients; the encoding and its
//! inverse are rational maps, so rounding phi to nearby fractions yields
//! banks whose perfect-reconstruction property holds exactly over Q while
//! staying close to the float-mode Daubechies prototypes.

pub mod bank;
pub mod daubechies;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod laurent;
pub mod linalg;
pub mod param;
pub mod rationalize;
pub mod scalar;
pub mod signal;

pub use bank::{MomentReport, PolyphaseMatrix2, QuadraticReport, WaveletBank2};
pub use error::{Error, Result};
pub use io::{AnyBank, AnyPair, AnyPhi};
pub use laurent::LaurentPoly;
pub use signal::{analyze, analyze_checked, synthesize, Signal};
pub use param::{
    build_theta, correct_to_canonical, pair_roundtrip_check, pair_to_phi,
    pair_to_phi_with_degree, phi_roundtrip_check, phi_to_pair, solve_system, CorrectionMatrix,
    HankelSystem, ParamPair, PhiParam,
};
pub use daubechies::generate;
pub use rationalize::{
    approximate_phi, bank_phi, best_rational_den, best_rational_eps, dyadic_round, f64_to_rat,
    rationalize_bank, screen, simplest_between, ApproxStrategy, RationalizationResult,
    SCREEN_BUDGET,
};
pub use scalar::{rat, Rat, Scalar, DEFAULT_TOL};
