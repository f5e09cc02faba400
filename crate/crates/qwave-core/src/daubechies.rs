//! Float-mode generation of the genus-N Daubechies bank.
//!
//! Standard recipe: the degree-(N-1) truncated binomial series
//! P(y) = sum_{k<N} C(N-1+k, k) y^k is the halfband factor in the variable
//! y = (2 - z - 1/z)/4. Its y-roots map to reciprocal z-pairs; taking the
//! branch inside the unit disk gives the minimal-phase spectral factor
//! q(z) = prod (1 - z_i z), and h0 follows from kappa (1+z)^N q(z) scaled so
//! h0(1) = 2. Root finding runs on the half-degree y-polynomial (simultaneous
//! iteration plus Newton polish); a final least-norm Newton step on the taps
//! pushes the quadratic and linear residuals down to the f64 floor, which
//! matters above genus ten where accumulated root error would otherwise show.

use crate::bank::WaveletBank2;
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix};
use num_complex::Complex64;

/// Largest genus the float generator accepts.
pub const MAX_GENUS: usize = 20;

const DK_MAX_ITERS: usize = 500;
const DK_TOL: f64 = 1e-14;

/// Binomial coefficient as exact f64 (all values used here are < 2^53).
fn binom(n: usize, k: usize) -> f64 {
    let kk = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..kk {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as f64
}

/// All roots of a real polynomial (ascending coefficients) by simultaneous
/// Durand-Kerner iteration with a deterministic start.
fn dk_roots(poly: &[f64]) -> Result<Vec<Complex64>> {
    let deg = poly.len() - 1;
    let lead = poly[deg];
    let monic: Vec<f64> = poly.iter().map(|c| c / lead).collect();
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..DK_MAX_ITERS {
        let mut max_step = 0.0f64;
        let prev = roots.clone();
        for i in 0..deg {
            let r = prev[i];
            let mut num = Complex64::new(0.0, 0.0);
            for &c in monic.iter().rev() {
                num = num * r + c;
            }
            let mut den = Complex64::new(1.0, 0.0);
            for (j, &s) in prev.iter().enumerate() {
                if j != i {
                    den *= r - s;
                }
            }
            if den.norm() == 0.0 {
                continue;
            }
            let step = num / den;
            roots[i] = r - step;
            max_step = max_step.max(step.norm());
        }
        if max_step < DK_TOL {
            return Ok(roots);
        }
    }
    Err(Error::RootFindingFailure(format!(
        "simultaneous iteration did not converge for degree {deg}"
    )))
}

/// A few Newton steps against the original coefficients.
fn newton_polish(poly: &[f64], mut r: Complex64) -> Complex64 {
    for _ in 0..3 {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &c in poly.iter().rev() {
            d = d * r + v;
            v = v * r + c;
        }
        if d.norm() == 0.0 {
            break;
        }
        r -= v / d;
    }
    r
}

/// Convolution of dense real polynomials.
fn conv(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Least-norm Newton projection onto the constraint set
/// {shift products r=1..N-1} + {h(1)=2} + {h(-1)=0}.
///
/// The norm condition sum h^2 = 2 is implied by these to second order, so it
/// stays out of the system; including it would make the Jacobian singular at
/// the solution (the gradient of h(1) lies in the span of the quadratic
/// gradients there).
fn polish_taps(genus: usize, h: &mut [f64]) -> Result<()> {
    let len = h.len();
    let rows = genus + 1;
    for _ in 0..3 {
        let mut jac = Matrix::<f64>::zeros(rows, len);
        let mut res = vec![0.0; rows];
        for r in 1..genus {
            let s = 2 * r;
            let mut acc = 0.0;
            for k in 0..len - s {
                acc += h[k] * h[k + s];
                let v0 = *jac.get(r - 1, k) + h[k + s];
                jac.set(r - 1, k, v0);
                let v1 = *jac.get(r - 1, k + s) + h[k];
                jac.set(r - 1, k + s, v1);
            }
            res[r - 1] = acc;
        }
        for k in 0..len {
            jac.set(genus - 1, k, 1.0);
            jac.set(genus, k, if k % 2 == 0 { 1.0 } else { -1.0 });
        }
        res[genus - 1] = h.iter().sum::<f64>() - 2.0;
        res[genus] = h
            .iter()
            .enumerate()
            .map(|(k, &v)| if k % 2 == 0 { v } else { -v })
            .sum::<f64>();

        // least-norm step: delta = J^T (J J^T)^{-1} (-res)
        let jt = jac.transpose();
        let jjt = jac.matmul(&jt);
        let neg_res: Vec<f64> = res.iter().map(|v| -v).collect();
        let lambda = solve(&jjt, &neg_res)?;
        let delta = jt.mul_vec(&lambda);
        for (k, d) in delta.iter().enumerate() {
            h[k] += d;
        }
    }
    Ok(())
}

/// Generates the float genus-N bank with h0(1) = 2 and the tap ordering and
/// signs of the standard published tables (h0[0] > 0, minimal phase).
pub fn generate(genus: usize) -> Result<WaveletBank2<f64>> {
    if genus == 0 || genus > MAX_GENUS {
        return Err(Error::UnsupportedGenus(genus));
    }
    if genus == 1 {
        return Ok(WaveletBank2::haar());
    }
    let m = genus - 1;

    // halfband factor in y
    let p_y: Vec<f64> = (0..=m).map(|k| binom(m + k, k)).collect();
    let y_roots: Vec<Complex64> = dk_roots(&p_y)?
        .into_iter()
        .map(|r| newton_polish(&p_y, r))
        .collect();

    // each y-root gives a reciprocal z-pair; keep the branch inside the disk
    let mut z_roots = Vec::with_capacity(m);
    for y in y_roots {
        let b = Complex64::new(2.0, 0.0) - y * 4.0;
        let disc = (b * b - 4.0).sqrt();
        let z1 = (b + disc) / 2.0;
        let z2 = (b - disc) / 2.0;
        let z = if z1.norm() < z2.norm() { z1 } else { z2 };
        if z.norm() >= 1.0 {
            return Err(Error::RootFindingFailure(format!(
                "spectral factor root on or outside the unit circle: |z| = {}",
                z.norm()
            )));
        }
        z_roots.push(z);
    }

    // assemble q(z) = prod (1 - z_i z) over real roots and conjugate pairs
    let mut reals: Vec<f64> = Vec::new();
    let mut pairs: Vec<Complex64> = Vec::new();
    for z in &z_roots {
        if z.im.abs() <= 1e-9 * z.norm().max(1e-300) {
            reals.push(z.re);
        } else if z.im > 0.0 {
            pairs.push(*z);
        }
    }
    if reals.len() + 2 * pairs.len() != m {
        return Err(Error::RootFindingFailure(format!(
            "root set is not closed under conjugation: {} real, {} pairs, degree {m}",
            reals.len(),
            pairs.len()
        )));
    }
    reals.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    pairs.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).expect("finite"));
    let mut q = vec![1.0];
    for r in &reals {
        q = conv(&q, &[1.0, -r]);
    }
    for w in &pairs {
        q = conv(&q, &[1.0, -2.0 * w.re, w.norm_sqr()]);
    }

    // h0 = kappa (1+z)^genus q(z), normalized to h0(1) = 2
    let binomials: Vec<f64> = (0..=genus).map(|k| binom(genus, k)).collect();
    let mut h = conv(&binomials, &q);
    let total: f64 = h.iter().sum();
    if !(total.is_finite() && total > 0.0) {
        return Err(Error::RootFindingFailure("spectral factor sums to a nonpositive value".into()));
    }
    for v in h.iter_mut() {
        *v *= 2.0 / total;
    }

    polish_taps(genus, &mut h)?;
    if h[0] <= 0.0 {
        return Err(Error::RootFindingFailure("leading tap is not positive".into()));
    }
    WaveletBank2::from_h0(h)
}
