//! Finite-support signals and the two-channel transform.
//!
//! Analysis projects a signal onto the stride-2 shifts of each filter row;
//! synthesis sums the two projections. For any bank with zero quadratic
//! residual the composition is the identity, exactly over the rationals.
//! Signals extend by zero; there is no circular wrap.

use crate::bank::WaveletBank2;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalar::Scalar;

/// Finitely supported sequence, stored as the Laurent polynomial
/// F(z) = sum f_k z^k.
#[derive(Clone, Debug, PartialEq)]
pub struct Signal<S: Scalar>(LaurentPoly<S>);

impl<S: Scalar> Signal<S> {
    pub fn zero() -> Self {
        Signal(LaurentPoly::zero())
    }

    /// Unit impulse at the origin.
    pub fn delta() -> Self {
        Signal(LaurentPoly::one())
    }

    pub fn from_samples(start: i64, samples: Vec<S>) -> Self {
        Signal(LaurentPoly::from_coeffs(start, samples))
    }

    pub fn from_poly(p: LaurentPoly<S>) -> Self {
        Signal(p)
    }

    pub fn poly(&self) -> &LaurentPoly<S> {
        &self.0
    }

    pub fn sample(&self, k: i64) -> S {
        self.0.coeff(k)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// (first, last) indices of the nonzero window, if any.
    pub fn support(&self) -> Option<(i64, i64)> {
        Some((self.0.min_exp()?, self.0.max_exp()?))
    }

    pub fn add(&self, other: &Self) -> Self {
        Signal(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Signal(self.0.sub(&other.0))
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.0.max_abs_coeff_f64()
    }
}

/// Channel projections of `f`: the part carried by the stride-2 shifts of
/// h0 and the part carried by those of h1. Their sum reconstructs `f`.
///
/// For each row: correlate (F times H~), keep even-indexed coefficients in
/// place, filter back (times H), halve.
pub fn analyze<S: Scalar>(bank: &WaveletBank2<S>, f: &Signal<S>) -> (Signal<S>, Signal<S>) {
    let half = S::from_ratio(1, 2);
    let mut parts = Vec::with_capacity(2);
    for h in [bank.h0_poly(), bank.h1_poly()] {
        let corr = f.poly().mul(&h.tilde()).even_part();
        parts.push(Signal(corr.mul(&h).scale(&half)));
    }
    let high = parts.pop().expect("two parts");
    let low = parts.pop().expect("two parts");
    (low, high)
}

/// Like [`analyze`] but refuses banks whose quadratic residual is nonzero
/// (exact mode) or above `tol` (float mode).
pub fn analyze_checked<S: Scalar>(
    bank: &WaveletBank2<S>,
    f: &Signal<S>,
    tol: f64,
) -> Result<(Signal<S>, Signal<S>)> {
    let report = bank.check_quadratic();
    let ok = if S::EXACT { report.is_exact_zero() } else { report.within(tol) };
    if !ok {
        return Err(Error::NotParaunitary { residual: report.max_residual().to_f64() });
    }
    Ok(analyze(bank, f))
}

/// Sums the channel parts back into one signal.
pub fn synthesize<S: Scalar>(parts: &(Signal<S>, Signal<S>)) -> Signal<S> {
    parts.0.add(&parts.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};
    use num_traits::Zero;

    fn bank17() -> WaveletBank2<Rat> {
        WaveletBank2::from_h0(vec![rat(12, 17), rat(20, 17), rat(5, 17), rat(-3, 17)]).unwrap()
    }

    #[test]
    fn haar_delta_reconstructs() {
        let bank = WaveletBank2::<Rat>::haar();
        let f = Signal::delta();
        let parts = analyze(&bank, &f);
        assert_eq!(synthesize(&parts), f);
    }

    #[test]
    fn exact_reconstruction_rational_bank() {
        let bank = bank17();
        let samples: Vec<Rat> = [3, -7, 0, 11, 5, -2, 9, 1, -8, 4]
            .iter()
            .map(|&v| rat(v, 1))
            .collect();
        let f = Signal::from_samples(-3, samples);
        let parts = analyze(&bank, &f);
        assert_eq!(synthesize(&parts), f);
    }

    #[test]
    fn constant_signal_rides_the_low_channel() {
        // window of ones; deep interior of the high channel must vanish
        // because h1 sums to zero (finite support makes the edges nonzero)
        let bank = bank17();
        let len = 40i64;
        let f = Signal::from_samples(0, vec![rat(1, 1); len as usize]);
        let (_, high) = analyze(&bank, &f);
        let margin = 2 * bank.genus() as i64;
        for k in margin..len - margin {
            assert!(high.sample(k).is_zero(), "high[{k}] != 0");
        }
        // and reconstruction still holds everywhere, edges included
        let parts = analyze(&bank, &f);
        assert_eq!(synthesize(&parts), f);
    }

    #[test]
    fn perturbed_bank_breaks_reconstruction() {
        let mut taps = bank17().h0().to_vec();
        taps[0] = taps[0].clone() + rat(1, 1000000);
        let bad = WaveletBank2::from_h0(taps).unwrap();
        let f = Signal::from_samples(0, vec![rat(1, 1), rat(2, 1), rat(-1, 1), rat(5, 1)]);
        let parts = analyze(&bad, &f);
        assert_ne!(synthesize(&parts), f);
        assert!(matches!(
            analyze_checked(&bad, &f, 0.0),
            Err(Error::NotParaunitary { .. })
        ));
    }

    #[test]
    fn float_reconstruction_within_tolerance() {
        let bank = WaveletBank2::from_h0(vec![
            0.683012701892219,
            1.18301270189222,
            0.316987298107781,
            -0.183012701892219,
        ])
        .unwrap();
        let f = Signal::from_samples(0, vec![1.0, -2.0, 3.0, 0.5, -0.25, 4.0]);
        let parts = analyze_checked(&bank, &f, 1e-12).unwrap();
        let back = synthesize(&parts);
        assert!(back.sub(&f).max_abs_f64() < 1e-12);
    }
}
