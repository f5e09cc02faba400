//! Rational approximation of filter banks through the parameter domain.
//!
//! A float bank is first mapped to its parameter `phi`, the parameter
//! coefficients are replaced by nearby rationals, and the exact synthesis
//! path rebuilds a bank over the rationals. The reconstruction identities
//! hold exactly for the output bank no matter how coarse the approximation
//! is; only the distance to the input and the moment values change.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::bank::{MomentReport, WaveletBank2};
use crate::error::{Error, Result};
use crate::param::{phi_to_pair, PhiParam};
use crate::scalar::Rat;

/// Largest candidate grid the screening search will enumerate.
pub const SCREEN_BUDGET: usize = 100_000;

/// Coefficient-wise approximation rule.
#[derive(Clone, Debug, PartialEq)]
pub enum ApproxStrategy {
    /// Round each coefficient to the nearest multiple of `2^-bits`.
    Dyadic { bits: u32 },
    /// Smallest-denominator rational within `epsilon` of each coefficient.
    BestRational { epsilon: f64 },
    /// Closest rational with denominator at most `q` to each coefficient.
    MaxDenominator { q: u64 },
    /// Joint search over candidate tuples; see [`screen`].
    Screening { epsilon: f64, d_max: u64 },
}

impl FromStr for ApproxStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidStrategy(s.to_string());
        let (name, arg) = s.split_once(':').ok_or_else(bad)?;
        match name {
            "dyadic" => {
                let bits: u32 = arg.parse().map_err(|_| bad())?;
                if bits < 1 || bits > 4096 {
                    return Err(bad());
                }
                Ok(ApproxStrategy::Dyadic { bits })
            }
            "best" => {
                let epsilon: f64 = arg.parse().map_err(|_| bad())?;
                if !epsilon.is_finite() || epsilon <= 0.0 {
                    return Err(bad());
                }
                Ok(ApproxStrategy::BestRational { epsilon })
            }
            "maxden" => {
                let q: u64 = arg.parse().map_err(|_| bad())?;
                if q < 1 {
                    return Err(bad());
                }
                Ok(ApproxStrategy::MaxDenominator { q })
            }
            "screen" => {
                let (e, d) = arg.split_once(',').ok_or_else(bad)?;
                let epsilon: f64 = e.parse().map_err(|_| bad())?;
                let d_max: u64 = d.parse().map_err(|_| bad())?;
                if !epsilon.is_finite() || epsilon < 0.0 || d_max < 2 {
                    return Err(bad());
                }
                Ok(ApproxStrategy::Screening { epsilon, d_max })
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for ApproxStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ApproxStrategy::Dyadic { bits } => write!(f, "dyadic:{bits}"),
            ApproxStrategy::BestRational { epsilon } => write!(f, "best:{epsilon}"),
            ApproxStrategy::MaxDenominator { q } => write!(f, "maxden:{q}"),
            ApproxStrategy::Screening { epsilon, d_max } => write!(f, "screen:{epsilon},{d_max}"),
        }
    }
}

/// Exact rational value of a float. Infinite or NaN input is rejected.
pub fn f64_to_rat(x: f64) -> Result<Rat> {
    Rat::from_float(x).ok_or_else(|| Error::InvalidParameter(format!("non-finite value {x}")))
}

/// Round to the nearest multiple of `2^-bits`, ties away from zero.
pub fn dyadic_round(x: &Rat, bits: u32) -> Rat {
    let scale = Rat::from_integer(BigInt::one() << bits as usize);
    (x * &scale).round() / scale
}

/// The rational with smallest denominator in the closed interval `[lo, hi]`,
/// with ties in denominator broken toward the smaller numerator magnitude.
/// Stern-Brocot descent; both endpoints are admissible.
pub fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo <= hi, "empty interval");
    let ceil_lo = lo.ceil();
    let floor_hi = hi.floor();
    if ceil_lo <= floor_hi {
        // An integer is available. Smallest magnitude wins.
        let zero = Rat::zero();
        if ceil_lo <= zero && zero <= floor_hi {
            return zero;
        }
        return if ceil_lo > zero { ceil_lo } else { floor_hi };
    }
    // Both endpoints lie strictly between consecutive integers.
    let a = lo.floor();
    let inner = simplest_between(&(hi - &a).recip(), &(lo - &a).recip());
    a + inner.recip()
}

/// Smallest-denominator rational within `epsilon` of `x`.
pub fn best_rational_eps(x: f64, epsilon: f64) -> Result<Rat> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {epsilon}"
        )));
    }
    let xr = f64_to_rat(x)?;
    let er = f64_to_rat(epsilon)?;
    Ok(simplest_between(&(&xr - &er), &(&xr + &er)))
}

/// Closest rational to `x` among all fractions with denominator at most
/// `q_max`, by exact comparison. Ties prefer the smaller numerator
/// magnitude, then the smaller denominator.
pub fn best_rational_den(x: f64, q_max: u64) -> Result<Rat> {
    if q_max < 1 {
        return Err(Error::InvalidParameter(
            "denominator bound must be at least 1".to_string(),
        ));
    }
    let xr = f64_to_rat(x)?;
    let bound = BigInt::from(q_max);
    if xr.denom() <= &bound {
        return Ok(xr);
    }

    // Continued-fraction walk. Track consecutive convergents; once the
    // denominator bound is crossed, the best approximation is either the
    // last convergent inside the bound or the deepest semiconvergent.
    let mut rem = xr.clone();
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let mut a = rem.floor().to_integer();
    let (mut p_cur, mut q_cur) = (a.clone(), BigInt::one());
    loop {
        let frac = &rem - Rat::from_integer(a);
        // x has a finite expansion; the denominator bound is crossed first
        // because denom(x) > q_max.
        assert!(!frac.is_zero());
        rem = frac.recip();
        a = rem.floor().to_integer();
        let p_next = &a * &p_cur + &p_prev;
        let q_next = &a * &q_cur + &q_prev;
        if q_next > bound {
            let t = (&bound - &q_prev) / &q_cur;
            let semi = Rat::new(&t * &p_cur + &p_prev, &t * &q_cur + &q_prev);
            let conv = Rat::new(p_cur, q_cur);
            let d_semi = (&semi - &xr).abs();
            let d_conv = (&conv - &xr).abs();
            return Ok(if d_semi < d_conv {
                semi
            } else if d_conv < d_semi {
                conv
            } else if semi.numer().abs() != conv.numer().abs() {
                if semi.numer().abs() < conv.numer().abs() {
                    semi
                } else {
                    conv
                }
            } else if semi.denom() <= conv.denom() {
                semi
            } else {
                conv
            });
        }
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
    }
}

/// Apply a coefficient-wise strategy to a float parameter.
///
/// [`ApproxStrategy::Screening`] is a joint search over tuples and is not
/// coefficient-wise; request it through [`screen`] instead.
pub fn approximate_phi(phi: &PhiParam<f64>, strategy: &ApproxStrategy) -> Result<PhiParam<Rat>> {
    let mut gammas = Vec::with_capacity(phi.n());
    for k in 1..=phi.n() {
        let g = phi.gamma(k);
        let r = match strategy {
            ApproxStrategy::Dyadic { bits } => dyadic_round(&f64_to_rat(g)?, *bits),
            ApproxStrategy::BestRational { epsilon } => best_rational_eps(g, *epsilon)?,
            ApproxStrategy::MaxDenominator { q } => best_rational_den(g, *q)?,
            ApproxStrategy::Screening { .. } => {
                return Err(Error::InvalidStrategy(
                    "screening is a joint search over tuples; use the screen operation".to_string(),
                ))
            }
        };
        gammas.push(r);
    }
    PhiParam::new(phi.n(), gammas)
}

/// A rational bank synthesized from an approximated parameter, with the
/// figures used to rank candidates.
#[derive(Clone, Debug)]
pub struct RationalizationResult {
    pub phi_q: PhiParam<Rat>,
    pub bank: WaveletBank2<Rat>,
    /// Largest denominator over the lowpass taps.
    pub max_tap_denominator: BigInt,
    /// Exact moments of the highpass row, orders `0..genus`.
    pub moments: MomentReport<Rat>,
    /// Largest coefficient-wise distance from the input parameter.
    pub input_distance: f64,
}

/// Rebuild a bank from a rational parameter and collect ranking figures.
fn evaluate_candidate(
    phi_q: PhiParam<Rat>,
    genus: usize,
    reference: &PhiParam<f64>,
) -> Result<RationalizationResult> {
    let pair = phi_to_pair(&phi_q)?;
    let bank = WaveletBank2::from_param(&pair, genus)?;
    debug_assert!(bank.check_quadratic().is_exact_zero());
    let max_tap_denominator = bank
        .h0()
        .iter()
        .map(|t| t.denom().clone())
        .max()
        .expect("bank has taps");
    let moments = bank.moments(genus.saturating_sub(1));
    let mut input_distance = 0.0f64;
    for k in 1..=reference.n().min(phi_q.n()) {
        let exact = f64_to_rat(reference.gamma(k))?;
        let d = (exact - phi_q.gamma(k)).abs().to_f64().unwrap_or(f64::NAN);
        input_distance = input_distance.max(d);
    }
    Ok(RationalizationResult {
        phi_q,
        bank,
        max_tap_denominator,
        moments,
        input_distance,
    })
}

/// Full float-to-rational pipeline for one bank and one strategy.
///
/// `tol` gates the paraunitarity check on the float input.
pub fn rationalize_bank(
    bank: &WaveletBank2<f64>,
    strategy: &ApproxStrategy,
    tol: f64,
) -> Result<RationalizationResult> {
    let pair = bank.to_param(tol)?;
    let phi = pair_to_phi_of_genus(&pair, bank.genus())?;
    let phi_q = approximate_phi(&phi, strategy)?;
    evaluate_candidate(phi_q, bank.genus(), &phi)
}

/// Parameter of a bank's pair at the nominal degree genus - 1 (a genus-g
/// bank has g - 1 parameter coefficients; degree 1 is the floor so the
/// zero parameter of the trivial bank still has a slot).
fn pair_to_phi_of_genus<S: crate::scalar::Scalar>(
    pair: &crate::param::ParamPair<S>,
    genus: usize,
) -> Result<PhiParam<S>> {
    crate::param::pair_to_phi_with_degree(pair, genus.saturating_sub(1).max(1))
}

/// Parameter of a bank, gated by its paraunitarity check.
pub fn bank_phi<S: crate::scalar::Scalar>(
    bank: &WaveletBank2<S>,
    tol: f64,
) -> Result<PhiParam<S>> {
    let pair = bank.to_param(tol)?;
    pair_to_phi_of_genus(&pair, bank.genus())
}

/// Joint screening search.
///
/// Every coefficient of the float parameter is given a list of candidate
/// rationals within `epsilon`; the Cartesian product is synthesized exactly
/// and candidates whose largest tap denominator exceeds `d_max` are
/// dropped. Survivors are sorted by tap denominator, then by largest
/// nonzero-order moment, then coefficient-wise. Grids larger than `budget`
/// are refused rather than truncated.
pub fn screen(
    bank: &WaveletBank2<f64>,
    epsilon: f64,
    d_max: u64,
    budget: usize,
    tol: f64,
) -> Result<Vec<RationalizationResult>> {
    if !epsilon.is_finite() || epsilon < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "screening tolerance must be nonnegative, got {epsilon}"
        )));
    }
    if d_max < 2 {
        return Err(Error::InvalidParameter(
            "denominator cap must be at least 2".to_string(),
        ));
    }
    let pair = bank.to_param(tol)?;
    let phi = pair_to_phi_of_genus(&pair, bank.genus())?;
    let n = phi.n();

    let mut lists: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for k in 1..=n {
        let list = if n == 1 {
            exhaustive_candidates(phi.gamma(k), epsilon, d_max)?
        } else {
            convergent_candidates(phi.gamma(k), epsilon, d_max)?
        };
        if list.is_empty() {
            return Ok(Vec::new());
        }
        lists.push(list);
    }

    let total: usize = lists
        .iter()
        .try_fold(1usize, |acc, l| acc.checked_mul(l.len()))
        .unwrap_or(usize::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded {
            candidates: total,
            cap: budget,
        });
    }

    let d_bound = BigInt::from(d_max);
    let mut results: Vec<RationalizationResult> = (0..total)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut gammas = Vec::with_capacity(n);
            for list in &lists {
                gammas.push(list[idx % list.len()].clone());
                idx /= list.len();
            }
            let phi_q = PhiParam::new(n, gammas).ok()?;
            let r = evaluate_candidate(phi_q, bank.genus(), &phi).ok()?;
            (r.max_tap_denominator <= d_bound).then_some(r)
        })
        .collect();

    results.sort_by(|x, y| {
        x.max_tap_denominator
            .cmp(&y.max_tap_denominator)
            .then_with(|| {
                x.moments
                    .max_abs_above_zero()
                    .cmp(&y.moments.max_abs_above_zero())
            })
            .then_with(|| {
                for k in 1..=n {
                    let c = x.phi_q.gamma(k).cmp(&y.phi_q.gamma(k));
                    if c != std::cmp::Ordering::Equal {
                        return c;
                    }
                }
                std::cmp::Ordering::Equal
            })
    });
    Ok(results)
}

/// Every reduced fraction within `epsilon` of `x` whose denominator `q`
/// satisfies `q^2 <= 2 * d_max`. For a single-coefficient parameter the
/// tap denominator is `p^2 + q^2`, so larger `q` cannot survive the cap.
fn exhaustive_candidates(x: f64, epsilon: f64, d_max: u64) -> Result<Vec<Rat>> {
    let xr = f64_to_rat(x)?;
    let er = f64_to_rat(epsilon)?;
    let lo = &xr - &er;
    let hi = &xr + &er;
    let mut q_top = 1u64;
    let target = 2u128 * d_max as u128;
    while ((q_top + 1) as u128).pow(2) <= target {
        q_top += 1;
    }
    let mut out = Vec::new();
    for q in 1..=q_top {
        let qb = BigInt::from(q);
        let p_lo = (&lo * Rat::from_integer(qb.clone())).ceil().to_integer();
        let p_hi = (&hi * Rat::from_integer(qb.clone())).floor().to_integer();
        let mut p = p_lo;
        while p <= p_hi {
            if p.abs().gcd(&qb).is_one() {
                out.push(Rat::new(p.clone(), qb.clone()));
            }
            p += BigInt::one();
        }
    }
    Ok(out)
}

/// Continued-fraction convergents of `x` within `epsilon` and with
/// denominator at most `d_max`. A compact candidate list for joint
/// screening at higher genus, where exhaustive enumeration is too wide.
fn convergent_candidates(x: f64, epsilon: f64, d_max: u64) -> Result<Vec<Rat>> {
    let xr = f64_to_rat(x)?;
    let er = f64_to_rat(epsilon)?;
    let bound = BigInt::from(d_max);
    let mut out = Vec::new();
    let keep = |c: &Rat, out: &mut Vec<Rat>| {
        if (c - &xr).abs() <= er && c.denom() <= &bound {
            out.push(c.clone());
        }
    };

    let mut rem = xr.clone();
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let mut a = rem.floor().to_integer();
    let (mut p_cur, mut q_cur) = (a.clone(), BigInt::one());
    keep(&Rat::new(p_cur.clone(), q_cur.clone()), &mut out);
    loop {
        let frac = &rem - Rat::from_integer(a);
        if frac.is_zero() {
            break;
        }
        rem = frac.recip();
        a = rem.floor().to_integer();
        let p_next = &a * &p_cur + &p_prev;
        let q_next = &a * &q_cur + &q_prev;
        if q_next > bound {
            break;
        }
        keep(&Rat::new(p_next.clone(), q_next.clone()), &mut out);
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
    }
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::daubechies;
    use crate::scalar::rat;

    fn d2_float() -> WaveletBank2<f64> {
        daubechies::generate(2).unwrap()
    }

    #[test]
    fn strategy_parsing_round_trips() {
        for s in ["dyadic:6", "best:0.001", "maxden:100", "screen:0.02,100"] {
            let st: ApproxStrategy = s.parse().unwrap();
            assert_eq!(st.to_string(), s);
        }
        for s in [
            "dyadic:0", "dyadic:x", "best:-1", "best:0", "maxden:0", "screen:0.1", "screen:-1,9",
            "screen:0.1,1", "nope:3", "dyadic",
        ] {
            assert!(s.parse::<ApproxStrategy>().is_err(), "{s} should fail");
        }
    }

    #[test]
    fn dyadic_rounding_matches_hand_values() {
        let g = -(2.0 - 3.0f64.sqrt());
        let x = f64_to_rat(g).unwrap();
        assert_eq!(dyadic_round(&x, 2), rat(-1, 4));
        assert_eq!(dyadic_round(&x, 6), rat(-17, 64));
        assert_eq!(dyadic_round(&x, 9), rat(-137, 512));
    }

    #[test]
    fn simplest_rational_in_interval() {
        // Denominator grows as the interval shrinks around 2 - sqrt(3).
        assert_eq!(best_rational_eps(0.26794919, 1e-3).unwrap(), rat(11, 41));
        assert_eq!(best_rational_eps(0.26794919, 0.02).unwrap(), rat(1, 4));
        // Integer endpoints are admissible and zero is preferred.
        assert_eq!(simplest_between(&rat(-1, 2), &rat(1, 3)), rat(0, 1));
        assert_eq!(simplest_between(&rat(5, 2), &rat(7, 2)), rat(3, 1));
        assert_eq!(simplest_between(&rat(-7, 2), &rat(-5, 2)), rat(-3, 1));
        // Exactly representable input is returned verbatim once epsilon
        // is below the gap to any simpler fraction.
        assert_eq!(best_rational_eps(0.375, 1e-9).unwrap(), rat(3, 8));
    }

    #[test]
    fn denominator_capped_approximation() {
        let g = 2.0 - 3.0f64.sqrt();
        assert_eq!(best_rational_den(g, 4).unwrap(), rat(1, 4));
        assert_eq!(best_rational_den(g, 41).unwrap(), rat(11, 41));
        // 1/3 as a float is not 1/3 exactly; the capped search recovers it.
        assert_eq!(best_rational_den(1.0 / 3.0, 10).unwrap(), rat(1, 3));
        assert_eq!(best_rational_den(0.5, 100).unwrap(), rat(1, 2));
    }

    #[test]
    fn dyadic_pipeline_reproduces_reference_taps() {
        let bank = d2_float();
        let cases: [(u32, [(i64, i64); 4]); 3] = [
            (2, [(12, 17), (20, 17), (5, 17), (-3, 17)]),
            (6, [(3008, 4385), (5184, 4385), (1377, 4385), (-799, 4385)]),
            (
                9,
                [
                    (192000, 280913),
                    (332288, 280913),
                    (88913, 280913),
                    (-51375, 280913),
                ],
            ),
        ];
        for (bits, taps) in cases {
            let r = rationalize_bank(&bank, &ApproxStrategy::Dyadic { bits }, 1e-12).unwrap();
            let want: Vec<Rat> = taps.iter().map(|&(p, q)| rat(p, q)).collect();
            assert_eq!(r.bank.h0(), &want[..], "bits={bits}");
            assert!(r.bank.check_quadratic().is_exact_zero());
        }
    }

    #[test]
    fn screening_orders_by_tap_denominator() {
        let bank = d2_float();
        let results = screen(&bank, 0.02, 100, SCREEN_BUDGET, 1e-12).unwrap();
        let dens: Vec<i64> = results
            .iter()
            .map(|r| r.max_tap_denominator.to_i64().unwrap())
            .collect();
        assert_eq!(dens, vec![17, 53, 65]);
        assert_eq!(results[0].phi_q.gamma(1), rat(-1, 4));
        assert_eq!(results[1].phi_q.gamma(1), rat(-2, 7));
        assert_eq!(results[2].phi_q.gamma(1), rat(-3, 11));
    }

    #[test]
    fn screening_zero_tolerance_is_empty_for_irrational_parameter() {
        let bank = d2_float();
        let results = screen(&bank, 0.0, 1_000, SCREEN_BUDGET, 1e-12).unwrap();
        assert!(results.is_empty());
    }

    #[test]
    fn screening_haar_finds_the_exact_bank() {
        // Haar's parameter is exactly zero, so screening returns it alone
        // at denominator one.
        let haar = WaveletBank2::<f64>::from_h0(vec![1.0, 1.0]).unwrap();
        let results = screen(&haar, 0.01, 10, SCREEN_BUDGET, 1e-12).unwrap();
        assert_eq!(results.len(), 1);
        assert!(results[0].max_tap_denominator.is_one());
        assert_eq!(results[0].input_distance, 0.0);
    }

    #[test]
    fn screening_budget_is_enforced() {
        let bank = d2_float();
        let err = screen(&bank, 0.3, 5_000, 10, 1e-12).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn rationalize_rejects_screening_strategy() {
        let bank = d2_float();
        let err = rationalize_bank(
            &bank,
            &ApproxStrategy::Screening {
                epsilon: 0.1,
                d_max: 100,
            },
            1e-12,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidStrategy(_)));
    }

    #[test]
    fn genus_two_tap_denominator_is_sum_of_squares() {
        // gamma = -p/q gives taps over p^2 + q^2 (or half of it when both
        // p and q are odd).
        for (p, q) in [(1i64, 4i64), (2, 7), (3, 11), (1, 3)] {
            let phi_q = PhiParam::new(1, vec![rat(-p, q)]).unwrap();
            let pair = phi_to_pair(&phi_q).unwrap();
            let bank = WaveletBank2::from_param(&pair, 2).unwrap();
            let expect = [
                rat(q * q - p * q, p * p + q * q),
                rat(q * q + p * q, p * p + q * q),
                rat(p * p + p * q, p * p + q * q),
                rat(p * p - p * q, p * p + q * q),
            ];
            assert_eq!(bank.h0(), &expect[..], "p={p} q={q}");
        }
    }

    #[test]
    fn input_distance_reflects_strategy_coarseness() {
        let bank = d2_float();
        let coarse = rationalize_bank(&bank, &ApproxStrategy::Dyadic { bits: 2 }, 1e-12).unwrap();
        let fine = rationalize_bank(&bank, &ApproxStrategy::Dyadic { bits: 20 }, 1e-12).unwrap();
        assert!(coarse.input_distance > fine.input_distance);
        assert!(fine.input_distance < 1e-6);
        assert!(coarse.input_distance < 0.25);
    }

    #[test]
    fn moments_of_dyadic_two_candidate() {
        let bank = d2_float();
        let r = rationalize_bank(&bank, &ApproxStrategy::Dyadic { bits: 2 }, 1e-12).unwrap();
        assert!(r.moments.values[0].is_zero());
        assert_eq!(r.moments.values[1], rat(1, 17));
    }
}
