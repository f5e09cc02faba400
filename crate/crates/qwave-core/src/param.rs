//! The parameter maps between phi in P-_N and canonical pairs (alpha, beta).
//!
//! Forward direction (`phi_to_pair`): build the Hankel matrix Theta from the
//! coefficients of phi, solve (Theta^T Theta + I) X = e1, set Y = Theta X,
//! and rotate the resulting pair into canonical position. Reverse direction
//! (`pair_to_phi`): phi is the negative-exponent part of beta~ / alpha,
//! computed through a truncated power series. Rational inputs stay rational
//! throughout both directions.
//!
//! Canonical pairs live in Omega0_N: alpha alpha~ + beta beta~ = 1 with
//! alpha(1) = 1, beta(1) = 0.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::{solve, Matrix};
use crate::scalar::Scalar;

/// phi = sum_{k=1..n} gamma_k z^(-k). The nominal degree n is part of the
/// value; trailing gammas may be zero.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiParam<S: Scalar> {
    n: usize,
    gammas: Vec<S>,
}

impl<S: Scalar> PhiParam<S> {
    pub fn new(n: usize, gammas: Vec<S>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("phi degree n must be >= 1".into()));
        }
        if gammas.len() != n {
            return Err(Error::InvalidParameter(format!(
                "expected {n} gammas, got {}",
                gammas.len()
            )));
        }
        Ok(PhiParam { n, gammas })
    }

    /// Reads phi off a Laurent polynomial supported in [-n, -1].
    pub fn from_poly(p: &LaurentPoly<S>, n: usize) -> Result<Self> {
        if let (Some(lo), Some(hi)) = (p.min_exp(), p.max_exp()) {
            if lo < -(n as i64) || hi > -1 {
                return Err(Error::DegreeMismatch(format!(
                    "support [{lo}, {hi}] outside [-{n}, -1]"
                )));
            }
        }
        let gammas = (1..=n as i64).map(|k| p.coeff(-k)).collect();
        Self::new(n, gammas)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// gamma_k for 1 <= k <= n.
    pub fn gamma(&self, k: usize) -> S {
        assert!(k >= 1 && k <= self.n);
        self.gammas[k - 1].clone()
    }

    pub fn gammas(&self) -> &[S] {
        &self.gammas
    }

    pub fn to_poly(&self) -> LaurentPoly<S> {
        let mut coeffs = self.gammas.clone();
        coeffs.reverse(); // gamma_n .. gamma_1 sit at exponents -n .. -1
        LaurentPoly::from_coeffs(-(self.n as i64), coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.gammas.iter().all(|g| g.is_zero())
    }

    /// Max |gamma_i - other.gamma_i| as f64. Degrees must match.
    pub fn distance_f64(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        self.gammas
            .iter()
            .zip(&other.gammas)
            .map(|(a, b)| (a.to_f64() - b.to_f64()).abs())
            .fold(0.0, f64::max)
    }
}

/// A pair (alpha, beta) of causal polynomials. Canonical members satisfy
/// alpha alpha~ + beta beta~ = 1, alpha(1) = 1, beta(1) = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamPair<S: Scalar> {
    pub alpha: LaurentPoly<S>,
    pub beta: LaurentPoly<S>,
}

impl<S: Scalar> ParamPair<S> {
    pub fn new(alpha: LaurentPoly<S>, beta: LaurentPoly<S>) -> Self {
        ParamPair { alpha, beta }
    }

    /// alpha alpha~ + beta beta~ minus 1; zero iff the pair is normalized.
    pub fn unit_defect(&self) -> LaurentPoly<S> {
        let aa = self.alpha.mul(&self.alpha.tilde());
        let bb = self.beta.mul(&self.beta.tilde());
        aa.add(&bb).sub(&LaurentPoly::one())
    }

    /// Largest polynomial degree present (0 for the zero pair).
    pub fn degree(&self) -> i64 {
        self.alpha.max_exp().unwrap_or(0).max(self.beta.max_exp().unwrap_or(0))
    }
}

/// The structured system behind the forward map: Theta is the Hankel matrix
/// of the gammas, delta = Theta^T Theta + I is symmetric positive definite
/// with every eigenvalue >= 1.
#[derive(Clone, Debug)]
pub struct HankelSystem<S: Scalar> {
    pub theta: Matrix<S>,
    pub delta: Matrix<S>,
}

/// Rotation-and-scale bringing a constant-defect pair to canonical position:
/// U = [[u11, u12], [-u12, u11]] with c = u11^2 + u12^2.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrectionMatrix<S: Scalar> {
    pub u11: S,
    pub u12: S,
    pub c: S,
}

/// Builds Theta[i][j] = gamma_{i+j} for 1 <= i+j <= n (zero elsewhere) and
/// delta = Theta^T Theta + I, both of size (n+1) x (n+1).
pub fn build_theta<S: Scalar>(phi: &PhiParam<S>) -> HankelSystem<S> {
    let n = phi.n();
    let mut theta = Matrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        for j in 0..=n {
            let k = i + j;
            if (1..=n).contains(&k) {
                theta.set(i, j, phi.gamma(k));
            }
        }
    }
    let delta = theta.transpose().matmul(&theta).add(&Matrix::identity(n + 1));
    HankelSystem { theta, delta }
}

/// Solves delta X = e1 and returns (X, Y) with Y = Theta X.
///
/// The uncorrected pair alpha0 = sum x_k z^k, beta0 = sum y_k z^k has
/// constant defect: alpha0 alpha0~ + beta0 beta0~ = x_0 = alpha0(1)^2 + beta0(1)^2.
pub fn solve_system<S: Scalar>(sys: &HankelSystem<S>) -> Result<(Vec<S>, Vec<S>)> {
    let n = sys.delta.rows();
    let mut e1 = vec![S::zero(); n];
    e1[0] = S::one();
    let x = solve(&sys.delta, &e1)?;
    let y = sys.theta.mul_vec(&x);
    Ok((x, y))
}

/// Rotates (alpha, beta) with constant defect c = alpha(1)^2 + beta(1)^2 > 0
/// into canonical position:
///
///   alpha' = (alpha a1 + beta b1) / c,   beta' = (-alpha b1 + beta a1) / c
///
/// where a1 = alpha(1), b1 = beta(1). One rational transform covers both the
/// normalization to unit constant and the rotation killing beta(1); the
/// result is rational whenever the input is.
pub fn correct_to_canonical<S: Scalar>(pair: &ParamPair<S>) -> Result<ParamPair<S>> {
    let a1 = pair.alpha.evaluate_at_one();
    let b1 = pair.beta.evaluate_at_one();
    let c = a1.clone() * a1.clone() + b1.clone() * b1.clone();
    if c.is_zero() {
        return Err(Error::DegeneratePair);
    }
    let alpha = pair
        .alpha
        .scale(&a1)
        .add(&pair.beta.scale(&b1))
        .scale(&(S::one() / c.clone()));
    let beta = pair
        .beta
        .scale(&a1)
        .sub(&pair.alpha.scale(&b1))
        .scale(&(S::one() / c));
    Ok(ParamPair::new(alpha, beta))
}

/// Forward map phi -> canonical pair in Omega0_n.
pub fn phi_to_pair<S: Scalar>(phi: &PhiParam<S>) -> Result<ParamPair<S>> {
    let sys = build_theta(phi);
    let (x, y) = solve_system(&sys)?;
    let alpha0 = LaurentPoly::from_coeffs(0, x);
    let beta0 = LaurentPoly::from_coeffs(0, y);
    correct_to_canonical(&ParamPair::new(alpha0, beta0))
}

/// Reverse map: phi = [beta~ / alpha]^- through a truncated power series.
///
/// Branch selection favors the larger constant term: with |alpha(0)| >=
/// |beta(0)| the quotient is expanded against 1/alpha, otherwise against
/// 1/beta with a sign flip. Both branches agree where both are defined.
/// The nominal degree of the result is max(1, deg alpha, deg beta).
pub fn pair_to_phi<S: Scalar>(pair: &ParamPair<S>) -> Result<PhiParam<S>> {
    let n = pair.degree().max(1) as usize;
    pair_to_phi_with_degree(pair, n)
}

/// Same as [`pair_to_phi`] with an explicit nominal degree for the output.
pub fn pair_to_phi_with_degree<S: Scalar>(pair: &ParamPair<S>, n: usize) -> Result<PhiParam<S>> {
    if n == 0 {
        return Err(Error::InvalidParameter("phi degree n must be >= 1".into()));
    }
    let a0 = pair.alpha.coeff(0);
    let b0 = pair.beta.coeff(0);
    if a0.is_zero() && b0.is_zero() {
        return Err(Error::DegeneratePair);
    }
    let depth = pair.degree().max(1) as usize;
    let phi_poly = if a0.abs() >= b0.abs() {
        let inv = pair.alpha.series_inverse_trunc(depth)?;
        inv.mul(&pair.beta.tilde()).neg_part()
    } else {
        let inv = pair.beta.series_inverse_trunc(depth)?;
        inv.mul(&pair.alpha.tilde()).neg_part().neg()
    };
    PhiParam::from_poly(&phi_poly, n)
}

/// Checks pair_to_phi(phi_to_pair(phi)) == phi. Exact equality in rational
/// mode, max |gamma| difference <= tol in float mode.
pub fn phi_roundtrip_check<S: Scalar>(phi: &PhiParam<S>, tol: f64) -> Result<()> {
    let pair = phi_to_pair(phi)?;
    let back = pair_to_phi_with_degree(&pair, phi.n())?;
    let residual = phi.distance_f64(&back);
    let ok = if S::EXACT { back == *phi } else { residual <= tol };
    if ok {
        Ok(())
    } else {
        Err(Error::RoundTripMismatch { residual })
    }
}

/// Recovers the correction matrix linking a pair to its canonical form.
///
/// Computes phi = pair_to_phi(pair), the canonical pair' = phi_to_pair(phi),
/// and verifies (alpha, beta) = (alpha', beta') U with U built from
/// u11 = alpha(1), u12 = beta(1) of the original pair.
pub fn pair_roundtrip_check<S: Scalar>(
    pair: &ParamPair<S>,
    tol: f64,
) -> Result<CorrectionMatrix<S>> {
    let phi = pair_to_phi(pair)?;
    let canonical = phi_to_pair(&phi)?;
    let u11 = pair.alpha.evaluate_at_one();
    let u12 = pair.beta.evaluate_at_one();
    let c = u11.clone() * u11.clone() + u12.clone() * u12.clone();
    // (alpha', beta') U as a row vector
    let alpha_rec = canonical.alpha.scale(&u11).sub(&canonical.beta.scale(&u12));
    let beta_rec = canonical.alpha.scale(&u12).add(&canonical.beta.scale(&u11));
    let residual = alpha_rec
        .sub(&pair.alpha)
        .max_abs_coeff_f64()
        .max(beta_rec.sub(&pair.beta).max_abs_coeff_f64());
    let ok = if S::EXACT {
        alpha_rec == pair.alpha && beta_rec == pair.beta
    } else {
        residual <= tol
    };
    if ok {
        Ok(CorrectionMatrix { u11, u12, c })
    } else {
        Err(Error::RoundTripMismatch { residual })
    }
}
