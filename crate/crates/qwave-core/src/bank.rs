//! Rank-2 filter banks of genus N.
//!
//! h0 = (a_0, b_0, a_1, b_1, ..., a_{N-1}, b_{N-1}) carries the taps; h1 is
//! determined by reflection: h1[2k] = -b_{N-1-k}, h1[2k+1] = a_{N-1-k}.
//! A bank is valid when the shift-orthogonality (quadratic) condition
//! sum_k h0[k] h0[k+2r] = 2 delta_{r0} holds; canonical banks additionally
//! satisfy h0(1) = 2 and h1(1) = 0.
//!
//! The bridge to parameter pairs absorbs the sqrt(2) normalizations of the
//! unitary Haar factor into one rational transform: alpha = (a + b)/2,
//! beta = (b - a)/2 with a, b the even/odd tap polynomials.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::param::ParamPair;
use crate::scalar::Scalar;

/// Interleaved two-channel filter bank. Immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveletBank2<S: Scalar> {
    genus: usize,
    h0: Vec<S>,
    h1: Vec<S>,
}

/// 2x2 polyphase matrix A(z); paraunitary up to the constant 2 for valid
/// banks: A(z) A~(z) = 2 I.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyphaseMatrix2<S: Scalar> {
    pub entries: [[LaurentPoly<S>; 2]; 2],
}

/// Max absolute residuals of the three equivalent quadratic-condition forms.
#[derive(Clone, Debug)]
pub struct QuadraticReport<S: Scalar> {
    /// Shift-orthogonality sums over h0.
    pub shift: S,
    /// Polyphase identity A A~ - 2I.
    pub polyphase: S,
    /// Modulation identity h0 h0~ + h0(-z) h0(-z)~ - 4.
    pub modulation: S,
}

impl<S: Scalar> QuadraticReport<S> {
    pub fn max_residual(&self) -> S {
        let mut m = self.shift.clone();
        if self.polyphase > m {
            m = self.polyphase.clone();
        }
        if self.modulation > m {
            m = self.modulation.clone();
        }
        m
    }

    pub fn is_exact_zero(&self) -> bool {
        self.shift.is_zero() && self.polyphase.is_zero() && self.modulation.is_zero()
    }

    pub fn within(&self, tol: f64) -> bool {
        self.max_residual().to_f64() <= tol
    }
}

/// Moments M_p = sum_k h1[k] k^p for p = 0..=pmax.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentReport<S: Scalar> {
    pub values: Vec<S>,
}

impl<S: Scalar> MomentReport<S> {
    /// Largest |M_p| over p >= 1 (zero when only M_0 was requested).
    pub fn max_abs_above_zero(&self) -> S {
        let mut m = S::zero();
        for v in self.values.iter().skip(1) {
            let a = v.abs();
            if a > m {
                m = a;
            }
        }
        m
    }
}

impl<S: Scalar> WaveletBank2<S> {
    /// Builds the bank from its first row; the second row is the reflection
    /// dictated by the interleaved structure.
    pub fn from_h0(h0: Vec<S>) -> Result<Self> {
        if h0.len() < 2 || h0.len() % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "h0 length must be even and >= 2, got {}",
                h0.len()
            )));
        }
        let genus = h0.len() / 2;
        let mut h1 = vec![S::zero(); 2 * genus];
        for k in 0..genus {
            let j = genus - 1 - k;
            h1[2 * k] = -h0[2 * j + 1].clone();
            h1[2 * k + 1] = h0[2 * j].clone();
        }
        Ok(WaveletBank2 { genus, h0, h1 })
    }

    /// Accepts both rows, verifying h1 against the reflection of h0.
    pub fn from_rows(h0: Vec<S>, h1: Vec<S>) -> Result<Self> {
        if h1.len() != h0.len() {
            return Err(Error::InvalidParameter(format!(
                "row lengths differ: {} vs {}",
                h0.len(),
                h1.len()
            )));
        }
        let bank = Self::from_h0(h0)?;
        for (k, v) in h1.iter().enumerate() {
            if *v != bank.h1[k] {
                return Err(Error::StructureMismatch(k));
            }
        }
        Ok(bank)
    }

    /// Genus-1 bank (1, 1; -1, 1).
    pub fn haar() -> Self {
        Self::from_h0(vec![S::one(), S::one()]).expect("haar")
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn h0(&self) -> &[S] {
        &self.h0
    }

    pub fn h1(&self) -> &[S] {
        &self.h1
    }

    /// Even taps of h0 as a polynomial: a(z) = sum a_k z^k.
    pub fn a_poly(&self) -> LaurentPoly<S> {
        LaurentPoly::from_coeffs(0, self.h0.iter().step_by(2).cloned().collect())
    }

    /// Odd taps of h0 as a polynomial: b(z) = sum b_k z^k.
    pub fn b_poly(&self) -> LaurentPoly<S> {
        LaurentPoly::from_coeffs(0, self.h0.iter().skip(1).step_by(2).cloned().collect())
    }

    pub fn h0_poly(&self) -> LaurentPoly<S> {
        LaurentPoly::from_coeffs(0, self.h0.clone())
    }

    pub fn h1_poly(&self) -> LaurentPoly<S> {
        LaurentPoly::from_coeffs(0, self.h1.clone())
    }

    /// A(z) = [[a, b], [-z^(N-1) b~, z^(N-1) a~]].
    pub fn polyphase(&self) -> PolyphaseMatrix2<S> {
        let m = self.genus as i64 - 1;
        let a = self.a_poly();
        let b = self.b_poly();
        let c = b.tilde().neg().shifted(m);
        let d = a.tilde().shifted(m);
        PolyphaseMatrix2 { entries: [[a, b], [c, d]] }
    }

    /// Evaluates all three forms of the quadratic condition.
    pub fn check_quadratic(&self) -> QuadraticReport<S> {
        let two = S::from_int(2);

        // shift-orthogonality sums over h0
        let mut shift = S::zero();
        for r in 0..self.genus {
            let mut acc = S::zero();
            for k in 0..self.h0.len() - 2 * r {
                acc = acc + self.h0[k].clone() * self.h0[k + 2 * r].clone();
            }
            if r == 0 {
                acc = acc - two.clone();
            }
            let a = acc.abs();
            if a > shift {
                shift = a;
            }
        }

        // polyphase identity
        let p = self.polyphase();
        let e = &p.entries;
        let mut polyphase = S::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut entry = e[i][0].mul(&e[j][0].tilde()).add(&e[i][1].mul(&e[j][1].tilde()));
                if i == j {
                    entry = entry.sub(&LaurentPoly::constant(two.clone()));
                }
                let a = entry.max_abs_coeff();
                if a > polyphase {
                    polyphase = a;
                }
            }
        }

        // modulation identity
        let h = self.h0_poly();
        let hn = h.substitute_neg_z();
        let modu = h
            .mul(&h.tilde())
            .add(&hn.mul(&hn.tilde()))
            .sub(&LaurentPoly::constant(S::from_int(4)));
        let modulation = modu.max_abs_coeff();

        QuadraticReport { shift, polyphase, modulation }
    }

    /// (h0(1), h1(1)); canonical banks give (2, 0).
    pub fn check_linear(&self) -> (S, S) {
        (self.h0_poly().evaluate_at_one(), self.h1_poly().evaluate_at_one())
    }

    /// M_p = sum_k h1[k] k^p for p = 0..=pmax. Exact in rational mode.
    pub fn moments(&self, pmax: usize) -> MomentReport<S> {
        let mut values = vec![S::zero(); pmax + 1];
        for (k, c) in self.h1.iter().enumerate() {
            let kk = S::from_int(k as i64);
            let mut pw = S::one();
            for v in values.iter_mut() {
                *v = v.clone() + c.clone() * pw.clone();
                pw = pw * kk.clone();
            }
        }
        MomentReport { values }
    }

    /// Canonical parameter pair of a valid bank:
    /// alpha = (a + b)/2, beta = (b - a)/2.
    ///
    /// The quadratic condition is checked first: exact mode demands a zero
    /// residual, float mode compares against `tol`.
    pub fn to_param(&self, tol: f64) -> Result<ParamPair<S>> {
        let report = self.check_quadratic();
        let ok = if S::EXACT { report.is_exact_zero() } else { report.within(tol) };
        if !ok {
            return Err(Error::NotParaunitary { residual: report.max_residual().to_f64() });
        }
        let a = self.a_poly();
        let b = self.b_poly();
        let half = S::from_ratio(1, 2);
        let alpha = a.add(&b).scale(&half);
        let beta = b.sub(&a).scale(&half);
        Ok(ParamPair::new(alpha, beta))
    }

    /// Inverse of [`Self::to_param`]: a = alpha - beta, b = alpha + beta,
    /// taps interleaved. The pair must be supported in degrees [0, genus-1].
    pub fn from_param(pair: &ParamPair<S>, genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidParameter("genus must be >= 1".into()));
        }
        let a = pair.alpha.sub(&pair.beta);
        let b = pair.alpha.add(&pair.beta);
        for (name, p) in [("alpha - beta", &a), ("alpha + beta", &b)] {
            if let (Some(lo), Some(hi)) = (p.min_exp(), p.max_exp()) {
                if lo < 0 || hi > genus as i64 - 1 {
                    return Err(Error::DegreeMismatch(format!(
                        "{name} has support [{lo}, {hi}], outside [0, {}]",
                        genus - 1
                    )));
                }
            }
        }
        let mut h0 = Vec::with_capacity(2 * genus);
        for k in 0..genus as i64 {
            h0.push(a.coeff(k));
            h0.push(b.coeff(k));
        }
        Self::from_h0(h0)
    }
}
