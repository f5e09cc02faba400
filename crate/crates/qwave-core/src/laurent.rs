//! Laurent polynomials p(z) = sum c_k z^k with finite support.
//!
//! P+ is the subspace with no negative exponents, P- the one with only
//! negative exponents. The adjoint p~(z) = sum c_k z^(-k) (real
//! coefficients, so conjugation drops out) and the projections onto P+/P-
//! are the pieces the parameter maps are built from.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::fmt;

/// Immutable Laurent polynomial. Stored dense between the first and last
/// nonzero coefficient; the zero polynomial stores nothing.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<S: Scalar> {
    lowest: i64,
    coeffs: Vec<S>,
}

impl<S: Scalar> LaurentPoly<S> {
    pub fn zero() -> Self {
        LaurentPoly { lowest: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::from_coeffs(0, vec![c])
    }

    /// c * z^exp.
    pub fn monomial(exp: i64, c: S) -> Self {
        Self::from_coeffs(exp, vec![c])
    }

    /// Builds from a dense coefficient run starting at exponent `lowest`.
    /// Leading and trailing zeros are trimmed so equality is structural.
    pub fn from_coeffs(lowest: i64, coeffs: Vec<S>) -> Self {
        let mut lo = 0usize;
        let mut hi = coeffs.len();
        while lo < hi && coeffs[lo].is_zero() {
            lo += 1;
        }
        while hi > lo && coeffs[hi - 1].is_zero() {
            hi -= 1;
        }
        if lo == hi {
            return Self::zero();
        }
        LaurentPoly {
            lowest: lowest + lo as i64,
            coeffs: coeffs[lo..hi].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest exponent with nonzero coefficient. None for the zero polynomial.
    pub fn min_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.lowest)
        }
    }

    /// Largest exponent with nonzero coefficient. None for the zero polynomial.
    pub fn max_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.lowest + self.coeffs.len() as i64 - 1)
        }
    }

    /// Coefficient of z^exp (zero outside the stored window).
    pub fn coeff(&self, exp: i64) -> S {
        let idx = exp - self.lowest;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            S::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Iterates (exponent, coefficient) over the stored window.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &S)> {
        let lowest = self.lowest;
        self.coeffs.iter().enumerate().map(move |(i, c)| (lowest + i as i64, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lowest.min(other.lowest);
        let hi = (self.lowest + self.coeffs.len() as i64)
            .max(other.lowest + other.coeffs.len() as i64);
        let mut out = vec![S::zero(); (hi - lo) as usize];
        for (e, c) in self.terms() {
            out[(e - lo) as usize] = out[(e - lo) as usize].clone() + c.clone();
        }
        for (e, c) in other.terms() {
            out[(e - lo) as usize] = out[(e - lo) as usize].clone() + c.clone();
        }
        Self::from_coeffs(lo, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            lowest: self.lowest,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(self.lowest + other.lowest, out)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            lowest: self.lowest,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Multiplies by z^k.
    pub fn shifted(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { lowest: self.lowest + k, coeffs: self.coeffs.clone() }
    }

    /// Adjoint p~(z) = sum c_k z^(-k). Involution; reverses the window.
    pub fn tilde(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly {
            lowest: -(self.lowest + self.coeffs.len() as i64 - 1),
            coeffs,
        }
    }

    /// Projection onto P-: keeps exponents <= -1.
    pub fn neg_part(&self) -> Self {
        self.filter_exps(|e| e <= -1)
    }

    /// Projection onto P+: keeps exponents >= 0. p = neg_part(p) + pos_part(p).
    pub fn pos_part(&self) -> Self {
        self.filter_exps(|e| e >= 0)
    }

    /// Keeps only even exponents. Used by the stride-2 analysis step.
    pub fn even_part(&self) -> Self {
        self.filter_exps(|e| e % 2 == 0)
    }

    fn filter_exps(&self, keep: impl Fn(i64) -> bool) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if keep(self.lowest + i as i64) {
                    c.clone()
                } else {
                    S::zero()
                }
            })
            .collect();
        Self::from_coeffs(self.lowest, coeffs)
    }

    /// p(-z): flips the sign of odd-exponent coefficients.
    pub fn substitute_neg_z(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if (self.lowest + i as i64).rem_euclid(2) == 1 {
                    -c.clone()
                } else {
                    c.clone()
                }
            })
            .collect();
        Self::from_coeffs(self.lowest, coeffs)
    }

    /// p(1) = sum of all coefficients.
    pub fn evaluate_at_one(&self) -> S {
        let mut acc = S::zero();
        for c in &self.coeffs {
            acc = acc + c.clone();
        }
        acc
    }

    /// p(-1): alternating coefficient sum.
    pub fn evaluate_at_neg_one(&self) -> S {
        let mut acc = S::zero();
        for (e, c) in self.terms() {
            if e.rem_euclid(2) == 1 {
                acc = acc - c.clone();
            } else {
                acc = acc + c.clone();
            }
        }
        acc
    }

    /// Taylor coefficients of 1/p at the origin through degree n.
    ///
    /// Requires p with no negative exponents and p(0) != 0; exact in
    /// rational mode. The defining property: pos-part of p * inverse,
    /// truncated at degree n, equals 1.
    pub fn series_inverse_trunc(&self, n: usize) -> Result<Self> {
        if let Some(lo) = self.min_exp() {
            if lo < 0 {
                return Err(Error::NotCausal(lo));
            }
        }
        let a0 = self.coeff(0);
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let mut b = Vec::with_capacity(n + 1);
        b.push(S::one() / a0.clone());
        for k in 1..=n {
            let mut acc = S::zero();
            for j in 1..=k {
                let aj = self.coeff(j as i64);
                if aj.is_zero() {
                    continue;
                }
                acc = acc + aj * b[k - j].clone();
            }
            b.push(-acc / a0.clone());
        }
        Ok(Self::from_coeffs(0, b))
    }

    /// Keeps exponents in [0, n] only.
    pub fn truncate_deg(&self, n: i64) -> Self {
        self.filter_exps(|e| (0..=n).contains(&e))
    }

    /// Largest |coefficient|, converted to f64. Zero polynomial reports 0.
    pub fn max_abs_coeff_f64(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Largest |coefficient| in the scalar field itself.
    pub fn max_abs_coeff(&self) -> S {
        let mut best = S::zero();
        for c in &self.coeffs {
            let a = c.abs();
            if a > best {
                best = a;
            }
        }
        best
    }

    /// Coefficient-wise comparison with absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.sub(other).max_abs_coeff_f64() <= tol
    }

    /// Dense coefficient run as (lowest exponent, coefficients).
    pub fn to_dense(&self) -> (i64, Vec<S>) {
        (self.lowest, self.coeffs.clone())
    }
}

impl<S: Scalar> fmt::Debug for LaurentPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for LaurentPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};
    use num_traits::Zero;

    fn lp(lowest: i64, cs: &[(i64, i64)]) -> LaurentPoly<Rat> {
        LaurentPoly::from_coeffs(lowest, cs.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    #[test]
    fn trim_makes_equality_structural() {
        let a = LaurentPoly::from_coeffs(-2, vec![rat(0, 1), rat(1, 1), rat(0, 1)]);
        let b = LaurentPoly::monomial(-1, rat(1, 1));
        assert_eq!(a, b);
        assert!(LaurentPoly::<Rat>::from_coeffs(5, vec![rat(0, 1)]).is_zero());
    }

    #[test]
    fn tilde_involution_and_antihomomorphism() {
        let p = lp(-1, &[(1, 4), (2, 1), (3, 1)]);
        let q = lp(0, &[(1, 2), (0, 1), (5, 3)]);
        assert_eq!(p.tilde().tilde(), p);
        assert_eq!(p.mul(&q).tilde(), q.tilde().mul(&p.tilde()));
        assert_eq!(LaurentPoly::<Rat>::one().tilde(), LaurentPoly::one());
        assert_eq!(
            LaurentPoly::monomial(1, rat(1, 1)).tilde(),
            LaurentPoly::monomial(-1, rat(1, 1))
        );
    }

    #[test]
    fn tilde_of_affine() {
        // (16 + z)/17 -> (16 + z^-1)/17
        let p = lp(0, &[(16, 17), (1, 17)]);
        let expect = lp(-1, &[(1, 17), (16, 17)]);
        assert_eq!(p.tilde(), expect);
    }

    #[test]
    fn projections_split() {
        let p = lp(-1, &[(1, 1), (1, 1), (1, 1)]); // z^-1 + 1 + z
        assert_eq!(p.neg_part(), LaurentPoly::monomial(-1, rat(1, 1)));
        assert_eq!(p.neg_part().add(&p.pos_part()), p);
        assert!(lp(0, &[(5, 1)]).neg_part().is_zero());
        assert!(p.pos_part().neg_part().is_zero());
    }

    #[test]
    fn neg_part_of_expanded_product() {
        // 1/4 + 1/64 - z/64 - z^-1/4 projects to -z^-1/4
        let p = LaurentPoly::from_coeffs(-1, vec![rat(-1, 4), rat(17, 64), rat(-1, 64)]);
        assert_eq!(p.neg_part(), LaurentPoly::monomial(-1, rat(-1, 4)));
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = lp(0, &[(1, 1), (1, 1)]);
        let b = lp(0, &[(1, 1), (-1, 1)]);
        let expect = LaurentPoly::from_coeffs(0, vec![rat(1, 1), rat(0, 1), rat(-1, 1)]);
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn evaluate_at_one_sums_coefficients() {
        // (12 + 20z + 5z^2 - 3z^3)/17 evaluates to 2 at z=1
        let p = lp(0, &[(12, 17), (20, 17), (5, 17), (-3, 17)]);
        assert_eq!(p.evaluate_at_one(), rat(2, 1));
    }

    #[test]
    fn substitute_neg_z_flips_odd() {
        let p = lp(0, &[(1, 1), (1, 1)]);
        assert_eq!(p.substitute_neg_z(), lp(0, &[(1, 1), (-1, 1)]));
        let q = lp(-1, &[(1, 4), (0, 1), (2, 1)]); // z^-1/4 + 2z
        assert_eq!(q.substitute_neg_z(), lp(-1, &[(-1, 4), (0, 1), (-2, 1)]));
    }

    #[test]
    fn series_inverse_of_one_is_one() {
        let one = LaurentPoly::<Rat>::one();
        assert_eq!(one.series_inverse_trunc(3).unwrap(), one);
    }

    #[test]
    fn series_inverse_affine() {
        // 1/((16+z)/17) = 17/16 - (17/256) z + O(z^2)
        let p = lp(0, &[(16, 17), (1, 17)]);
        let inv = p.series_inverse_trunc(1).unwrap();
        assert_eq!(inv, lp(0, &[(17, 16), (-17, 256)]));
        // defining property at higher order
        let inv5 = p.series_inverse_trunc(5).unwrap();
        assert_eq!(p.mul(&inv5).truncate_deg(5), LaurentPoly::one());
    }

    #[test]
    fn series_inverse_rejects_zero_constant() {
        let z = LaurentPoly::monomial(1, rat(1, 1));
        assert!(matches!(
            z.series_inverse_trunc(1),
            Err(Error::ZeroConstantTerm)
        ));
        let zinv = LaurentPoly::monomial(-1, rat(1, 1));
        assert!(matches!(zinv.series_inverse_trunc(1), Err(Error::NotCausal(-1))));
    }

    #[test]
    fn float_mode_basics() {
        let p = LaurentPoly::<f64>::from_coeffs(0, vec![0.5, 0.5]);
        assert!((p.evaluate_at_one() - 1.0).abs() < 1e-15);
        let inv = p.series_inverse_trunc(2).unwrap();
        assert!(p.mul(&inv).truncate_deg(2).approx_eq(&LaurentPoly::one(), 1e-14));
    }

    #[test]
    fn even_part_keeps_even_exponents() {
        let p = lp(-2, &[(1, 1), (2, 1), (3, 1), (4, 1), (5, 1)]);
        let e = p.even_part();
        assert_eq!(e.coeff(-2), rat(1, 1));
        assert_eq!(e.coeff(0), rat(3, 1));
        assert_eq!(e.coeff(2), rat(5, 1));
        assert!(e.coeff(-1).is_zero() && e.coeff(1).is_zero());
    }
}
