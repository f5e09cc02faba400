//! JSON and CSV forms of the public types.
//!
//! Rational scalars cross the boundary as "p/q" strings and floats as
//! JSON numbers, never the other way around. Bank files carry a field
//! tag, which is authoritative; parameter and pair files infer the mode
//! from their scalars. Mixed scalars are rejected, not coerced.

use serde::{Deserialize, Serialize};

use crate::bank::{MomentReport, WaveletBank2};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::param::{ParamPair, PhiParam};
use crate::rationalize::RationalizationResult;
use crate::scalar::{Rat, Scalar};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarDto {
    Text(String),
    Number(f64),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LaurentDto {
    pub lowest_exponent: i64,
    pub coefficients: Vec<ScalarDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhiDto {
    pub n: usize,
    pub gammas: Vec<ScalarDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairDto {
    pub alpha: LaurentDto,
    pub beta: LaurentDto,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BankDto {
    pub genus: usize,
    pub field: String,
    pub h0: Vec<ScalarDto>,
    pub h1: Vec<ScalarDto>,
}

/// A bank of either scalar mode, as read from a file.
#[derive(Clone, Debug)]
pub enum AnyBank {
    Rational(WaveletBank2<Rat>),
    Float(WaveletBank2<f64>),
}

#[derive(Clone, Debug)]
pub enum AnyPhi {
    Rational(PhiParam<Rat>),
    Float(PhiParam<f64>),
}

#[derive(Clone, Debug)]
pub enum AnyPair {
    Rational(ParamPair<Rat>),
    Float(ParamPair<f64>),
}

pub fn scalar_to_dto<S: Scalar>(x: &S) -> ScalarDto {
    if S::EXACT {
        ScalarDto::Text(format!("{x}"))
    } else {
        ScalarDto::Number(x.to_f64())
    }
}

fn dto_to_rat(dto: &ScalarDto) -> Result<Rat> {
    match dto {
        ScalarDto::Text(s) => s
            .trim()
            .parse::<Rat>()
            .map_err(|e| Error::Malformed(format!("bad rational {s:?}: {e}"))),
        ScalarDto::Number(x) => Err(Error::ModeMismatch(format!(
            "numeric scalar {x} in a rational context; rationals are \"p/q\" strings"
        ))),
    }
}

fn dto_to_f64(dto: &ScalarDto) -> Result<f64> {
    match dto {
        ScalarDto::Number(x) => Ok(*x),
        ScalarDto::Text(s) => Err(Error::ModeMismatch(format!(
            "string scalar {s:?} in a float context; floats are JSON numbers"
        ))),
    }
}

fn rat_list(dtos: &[ScalarDto]) -> Result<Vec<Rat>> {
    dtos.iter().map(dto_to_rat).collect()
}

fn f64_list(dtos: &[ScalarDto]) -> Result<Vec<f64>> {
    dtos.iter().map(dto_to_f64).collect()
}

/// Scalar mode of a file with no field tag: the first scalar decides and
/// the rest must agree. All-empty input defaults to rational.
fn infer_exact<'a>(mut scalars: impl Iterator<Item = &'a ScalarDto>) -> bool {
    match scalars.next() {
        Some(ScalarDto::Number(_)) => false,
        _ => true,
    }
}

pub fn laurent_to_dto<S: Scalar>(p: &LaurentPoly<S>) -> LaurentDto {
    match (p.min_exp(), p.max_exp()) {
        (Some(lo), Some(hi)) => LaurentDto {
            lowest_exponent: lo,
            coefficients: (lo..=hi).map(|e| scalar_to_dto(&p.coeff(e))).collect(),
        },
        _ => LaurentDto {
            lowest_exponent: 0,
            coefficients: Vec::new(),
        },
    }
}

fn dto_to_laurent_rat(dto: &LaurentDto) -> Result<LaurentPoly<Rat>> {
    Ok(LaurentPoly::from_coeffs(
        dto.lowest_exponent,
        rat_list(&dto.coefficients)?,
    ))
}

fn dto_to_laurent_f64(dto: &LaurentDto) -> Result<LaurentPoly<f64>> {
    Ok(LaurentPoly::from_coeffs(
        dto.lowest_exponent,
        f64_list(&dto.coefficients)?,
    ))
}

pub fn bank_to_dto<S: Scalar>(bank: &WaveletBank2<S>) -> BankDto {
    BankDto {
        genus: bank.genus(),
        field: S::FIELD_NAME.to_string(),
        h0: bank.h0().iter().map(scalar_to_dto).collect(),
        h1: bank.h1().iter().map(scalar_to_dto).collect(),
    }
}

pub fn phi_to_dto<S: Scalar>(phi: &PhiParam<S>) -> PhiDto {
    PhiDto {
        n: phi.n(),
        gammas: phi.gammas().iter().map(scalar_to_dto).collect(),
    }
}

pub fn pair_to_dto<S: Scalar>(pair: &ParamPair<S>) -> PairDto {
    PairDto {
        alpha: laurent_to_dto(&pair.alpha),
        beta: laurent_to_dto(&pair.beta),
    }
}

pub fn moments_to_dto<S: Scalar>(report: &MomentReport<S>) -> Vec<ScalarDto> {
    report.values.iter().map(scalar_to_dto).collect()
}

impl AnyBank {
    pub fn from_json(text: &str) -> Result<Self> {
        let dto: BankDto = serde_json::from_str(text)?;
        if dto.h0.len() != 2 * dto.genus {
            return Err(Error::Malformed(format!(
                "genus {} demands {} taps per row, got {}",
                dto.genus,
                2 * dto.genus,
                dto.h0.len()
            )));
        }
        match dto.field.as_str() {
            "rational" => Ok(AnyBank::Rational(WaveletBank2::from_rows(
                rat_list(&dto.h0)?,
                rat_list(&dto.h1)?,
            )?)),
            "float64" => Ok(AnyBank::Float(WaveletBank2::from_rows(
                f64_list(&dto.h0)?,
                f64_list(&dto.h1)?,
            )?)),
            other => Err(Error::Malformed(format!(
                "unknown field {other:?}; expected \"rational\" or \"float64\""
            ))),
        }
    }

    pub fn to_json(&self) -> String {
        let dto = match self {
            AnyBank::Rational(b) => bank_to_dto(b),
            AnyBank::Float(b) => bank_to_dto(b),
        };
        to_json_pretty(&dto)
    }

    pub fn genus(&self) -> usize {
        match self {
            AnyBank::Rational(b) => b.genus(),
            AnyBank::Float(b) => b.genus(),
        }
    }

    pub fn field_name(&self) -> &'static str {
        match self {
            AnyBank::Rational(_) => Rat::FIELD_NAME,
            AnyBank::Float(_) => f64::FIELD_NAME,
        }
    }
}

impl AnyPhi {
    pub fn from_json(text: &str) -> Result<Self> {
        let dto: PhiDto = serde_json::from_str(text)?;
        if infer_exact(dto.gammas.iter()) {
            Ok(AnyPhi::Rational(PhiParam::new(dto.n, rat_list(&dto.gammas)?)?))
        } else {
            Ok(AnyPhi::Float(PhiParam::new(dto.n, f64_list(&dto.gammas)?)?))
        }
    }

    pub fn to_json(&self) -> String {
        let dto = match self {
            AnyPhi::Rational(p) => phi_to_dto(p),
            AnyPhi::Float(p) => phi_to_dto(p),
        };
        to_json_pretty(&dto)
    }
}

impl AnyPair {
    pub fn from_json(text: &str) -> Result<Self> {
        let dto: PairDto = serde_json::from_str(text)?;
        let scalars = dto.alpha.coefficients.iter().chain(&dto.beta.coefficients);
        if infer_exact(scalars) {
            Ok(AnyPair::Rational(ParamPair::new(
                dto_to_laurent_rat(&dto.alpha)?,
                dto_to_laurent_rat(&dto.beta)?,
            )))
        } else {
            Ok(AnyPair::Float(ParamPair::new(
                dto_to_laurent_f64(&dto.alpha)?,
                dto_to_laurent_f64(&dto.beta)?,
            )))
        }
    }

    pub fn to_json(&self) -> String {
        let dto = match self {
            AnyPair::Rational(p) => pair_to_dto(p),
            AnyPair::Float(p) => pair_to_dto(p),
        };
        to_json_pretty(&dto)
    }
}

#[derive(Serialize)]
pub struct RationalizationDto {
    pub phi_q: PhiDto,
    pub bank: BankDto,
    pub max_tap_denominator: String,
    pub moment_report: Vec<ScalarDto>,
    pub input_distance: f64,
}

pub fn rationalization_to_dto(r: &RationalizationResult) -> RationalizationDto {
    RationalizationDto {
        phi_q: phi_to_dto(&r.phi_q),
        bank: bank_to_dto(&r.bank),
        max_tap_denominator: r.max_tap_denominator.to_string(),
        moment_report: moments_to_dto(&r.moments),
        input_distance: r.input_distance,
    }
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialization cannot fail")
}

pub fn to_json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serialization cannot fail")
}

/// Fifteen significant decimal digits, plain notation, mirroring the
/// source tables. Exact zero renders as "0.0".
pub fn fmt_decimal15(x: f64) -> String {
    if x == 0.0 {
        return "0.0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (14 - exp).clamp(0, 330) as usize;
    format!("{x:.decimals$}")
}

/// Value column for a scalar: exact fraction text in rational mode, the
/// shortest faithful float text otherwise.
pub fn fmt_value<S: Scalar>(x: &S) -> String {
    if S::EXACT {
        format!("{x}")
    } else {
        format!("{}", x.to_f64())
    }
}

/// Taps plus moments of one bank as CSV rows, mirroring the table layout:
/// one row per tap of each filter, then one row per moment order.
pub fn bank_to_csv<S: Scalar>(bank: &WaveletBank2<S>, pmax: usize) -> String {
    let mut out = String::from("row,value,decimal\n");
    for (name, taps) in [("h0", bank.h0()), ("h1", bank.h1())] {
        for (k, t) in taps.iter().enumerate() {
            push_csv_row(&mut out, &format!("{name}[{k}]"), t);
        }
    }
    let moments = bank.moments(pmax);
    for (p, m) in moments.values.iter().enumerate() {
        push_csv_row(&mut out, &format!("M{p}"), m);
    }
    out
}

fn push_csv_row<S: Scalar>(out: &mut String, label: &str, x: &S) {
    out.push_str(label);
    out.push(',');
    out.push_str(&fmt_value(x));
    out.push(',');
    out.push_str(&fmt_decimal15(x.to_f64()));
    out.push('\n');
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::rat;

    #[test]
    fn bank_json_round_trip_is_lossless_and_stable() {
        let bank = fixtures::GENUS2.columns[0].bank();
        let text = AnyBank::Rational(bank.clone()).to_json();
        assert!(text.contains("\"12/17\""));
        assert!(text.contains("\"rational\""));
        let back = AnyBank::from_json(&text).unwrap();
        match &back {
            AnyBank::Rational(b) => assert_eq!(b.h0(), bank.h0()),
            _ => panic!("mode lost"),
        }
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn float_bank_round_trips_through_json() {
        let bank = crate::daubechies::generate(3).unwrap();
        let text = AnyBank::Float(bank.clone()).to_json();
        let back = AnyBank::from_json(&text).unwrap();
        match back {
            AnyBank::Float(b) => assert_eq!(b.h0(), bank.h0()),
            _ => panic!("mode lost"),
        }
    }

    #[test]
    fn field_tag_is_authoritative() {
        let err = AnyBank::from_json(
            r#"{"genus":1,"field":"rational","h0":[1.0,1.0],"h1":[-1.0,1.0]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ModeMismatch(_)), "{err}");
        let err = AnyBank::from_json(
            r#"{"genus":1,"field":"float64","h0":["1","1"],"h1":["-1","1"]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ModeMismatch(_)), "{err}");
        let err = AnyBank::from_json(
            r#"{"genus":1,"field":"dyadic","h0":["1","1"],"h1":["-1","1"]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Malformed(_)), "{err}");
    }

    #[test]
    fn reflected_row_is_checked_on_ingest() {
        let err = AnyBank::from_json(
            r#"{"genus":1,"field":"rational","h0":["1","1"],"h1":["1","1"]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::StructureMismatch(_)), "{err}");
    }

    #[test]
    fn phi_mode_follows_first_scalar() {
        let p = AnyPhi::from_json(r#"{"n":2,"gammas":["-1/2","1/8"]}"#).unwrap();
        match p {
            AnyPhi::Rational(p) => {
                assert_eq!(p.gamma(1), rat(-1, 2));
                assert_eq!(p.gamma(2), rat(1, 8));
            }
            _ => panic!("expected rational"),
        }
        let p = AnyPhi::from_json(r#"{"n":1,"gammas":[-0.25]}"#).unwrap();
        assert!(matches!(p, AnyPhi::Float(_)));
        let err = AnyPhi::from_json(r#"{"n":2,"gammas":["-1/2",0.125]}"#).unwrap_err();
        assert!(matches!(err, Error::ModeMismatch(_)));
    }

    #[test]
    fn pair_json_round_trips() {
        let phi = fixtures::GENUS3.columns[0].phi_param();
        let pair = crate::param::phi_to_pair(&phi).unwrap();
        let text = AnyPair::Rational(pair.clone()).to_json();
        let back = AnyPair::from_json(&text).unwrap();
        match back {
            AnyPair::Rational(p) => {
                assert_eq!(p.alpha, pair.alpha);
                assert_eq!(p.beta, pair.beta);
            }
            _ => panic!("mode lost"),
        }
    }

    #[test]
    fn json_syntax_errors_surface_as_json_errors() {
        assert!(matches!(
            AnyBank::from_json("{not json").unwrap_err(),
            Error::Json(_)
        ));
    }

    #[test]
    fn decimal_rendering_matches_table_style() {
        assert_eq!(fmt_decimal15(0.683012701892219), "0.683012701892219");
        assert_eq!(fmt_decimal15(1.1830127018922194), "1.18301270189222");
        assert_eq!(fmt_decimal15(-0.183012701892219), "-0.183012701892219");
        assert_eq!(fmt_decimal15(0.0), "0.0");
        let twelve_17 = crate::scalar::Scalar::to_f64(&rat(12, 17));
        assert_eq!(fmt_decimal15(twelve_17), "0.705882352941177");
        assert_eq!(fmt_decimal15(0.0498174997368838), "0.0498174997368838");
    }

    #[test]
    fn csv_has_taps_then_moments() {
        let bank = fixtures::GENUS2.columns[0].bank();
        let csv = bank_to_csv(&bank, 1);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "row,value,decimal");
        assert_eq!(lines[1], "h0[0],12/17,0.705882352941177");
        assert_eq!(lines[5], "h1[0],3/17,0.176470588235294");
        assert_eq!(lines[9], "M0,0,0.0");
        assert_eq!(lines[10], "M1,1/17,0.0588235294117647");
    }
}
