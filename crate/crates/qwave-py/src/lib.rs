//! Python bindings. Build the cdylib and rename it to `qwave.so` (or
//! `qwave.pyd` on Windows) somewhere on `sys.path`; see python/smoke_test.py.
//!
//! Rational scalars cross the boundary as "p/q" strings, float scalars as
//! Python floats, mirroring the JSON formats of the core crate.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use pyo3::IntoPyObjectExt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qwave_core::{
    analyze, bank_phi, phi_to_pair, rationalize_bank, synthesize, AnyBank, AnyPhi, ApproxStrategy,
    Error, PhiParam, Rat, RationalizationResult, Scalar, Signal, WaveletBank2, SCREEN_BUDGET,
};

fn pyerr(e: Error) -> PyErr {
    match e.kind() {
        "not_paraunitary" | "round_trip_mismatch" | "singular_system" | "root_finding_failure"
        | "budget_exceeded" => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_rat(text: &str) -> PyResult<Rat> {
    text.trim()
        .parse::<Rat>()
        .map_err(|e| PyValueError::new_err(format!("bad rational {text:?}: {e}")))
}

/// Rational values become "p/q" strings, float values stay numbers.
fn scalar_py<S: Scalar>(py: Python<'_>, x: &S) -> PyResult<Py<PyAny>> {
    if S::EXACT {
        x.to_string().into_py_any(py)
    } else {
        x.to_f64().into_py_any(py)
    }
}

fn scalars_py<S: Scalar>(py: Python<'_>, xs: &[S]) -> PyResult<Py<PyAny>> {
    if S::EXACT {
        xs.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .into_py_any(py)
    } else {
        xs.iter()
            .map(|x| x.to_f64())
            .collect::<Vec<_>>()
            .into_py_any(py)
    }
}

fn float_view(bank: &AnyBank) -> PyResult<WaveletBank2<f64>> {
    match bank {
        AnyBank::Float(b) => Ok(b.clone()),
        AnyBank::Rational(b) => WaveletBank2::from_rows(
            b.h0().iter().map(Scalar::to_f64).collect(),
            b.h1().iter().map(Scalar::to_f64).collect(),
        )
        .map_err(pyerr),
    }
}

fn result_dict<'py>(py: Python<'py>, r: &RationalizationResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item(
        "phi",
        Py::new(
            py,
            Phi {
                inner: AnyPhi::Rational(r.phi_q.clone()),
            },
        )?,
    )?;
    d.set_item(
        "bank",
        Py::new(
            py,
            Bank {
                inner: AnyBank::Rational(r.bank.clone()),
            },
        )?,
    )?;
    d.set_item("max_tap_denominator", r.max_tap_denominator.to_string())?;
    d.set_item(
        "moment_report",
        r.moments
            .values
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>(),
    )?;
    d.set_item("input_distance", r.input_distance)?;
    Ok(d)
}

fn verify_dict<'py, S: Scalar>(
    py: Python<'py>,
    bank: &WaveletBank2<S>,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let quad = bank.check_quadratic();
    let (h0_one, h1_one) = bank.check_linear();
    let lin_res = (h0_one.clone() - S::from_int(2))
        .abs()
        .to_f64()
        .max(h1_one.abs().to_f64());
    let pass = if S::EXACT {
        quad.is_exact_zero() && h0_one == S::from_int(2) && h1_one == S::from_int(0)
    } else {
        quad.within(tol) && lin_res <= tol
    };
    let d = PyDict::new(py);
    d.set_item("field", S::FIELD_NAME)?;
    d.set_item("genus", bank.genus())?;
    d.set_item("shift_residual", scalar_py(py, &quad.shift)?)?;
    d.set_item("polyphase_residual", scalar_py(py, &quad.polyphase)?)?;
    d.set_item("modulation_residual", scalar_py(py, &quad.modulation)?)?;
    d.set_item("h0_at_one", scalar_py(py, &h0_one)?)?;
    d.set_item("h1_at_one", scalar_py(py, &h1_one)?)?;
    d.set_item("exact", S::EXACT)?;
    d.set_item("tolerance", tol)?;
    d.set_item("pass", pass)?;
    Ok(d)
}

fn pr_test_dict<'py, S: Scalar>(
    py: Python<'py>,
    bank: &WaveletBank2<S>,
    length: usize,
    trials: usize,
    seed: u64,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    if length == 0 || trials == 0 {
        return Err(PyValueError::new_err("length and trials must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_err = 0.0f64;
    let mut exact_ok = true;
    for _ in 0..trials {
        let samples: Vec<S> = (0..length)
            .map(|_| S::from_int(rng.gen_range(-99..=99)))
            .collect();
        let f = Signal::from_samples(0, samples);
        let diff = synthesize(&analyze(bank, &f)).sub(&f);
        if !diff.is_zero() {
            exact_ok = false;
        }
        max_err = max_err.max(diff.max_abs_f64());
    }
    let pass = if S::EXACT { exact_ok } else { max_err <= tol };
    let d = PyDict::new(py);
    d.set_item("field", S::FIELD_NAME)?;
    d.set_item("genus", bank.genus())?;
    d.set_item("seed", seed)?;
    d.set_item("trials", trials)?;
    d.set_item("length", length)?;
    d.set_item("exact", S::EXACT)?;
    d.set_item("max_abs_error", max_err)?;
    d.set_item("pass", pass)?;
    Ok(d)
}

/// A rank-2 filter bank in either scalar mode.
#[pyclass]
struct Bank {
    inner: AnyBank,
}

#[pymethods]
impl Bank {
    /// Build from the lowpass row. "p/q" strings give a rational bank,
    /// floats a float64 bank; the highpass row is the reflection of h0.
    #[new]
    fn new(h0: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(texts) = h0.extract::<Vec<String>>() {
            let taps = texts
                .iter()
                .map(|t| parse_rat(t))
                .collect::<PyResult<Vec<_>>>()?;
            let bank = WaveletBank2::from_h0(taps).map_err(pyerr)?;
            return Ok(Bank {
                inner: AnyBank::Rational(bank),
            });
        }
        let taps: Vec<f64> = h0.extract().map_err(|_| {
            PyValueError::new_err("expected a list of \"p/q\" strings or a list of floats")
        })?;
        let bank = WaveletBank2::from_h0(taps).map_err(pyerr)?;
        Ok(Bank {
            inner: AnyBank::Float(bank),
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Bank {
            inner: AnyBank::from_json(text).map_err(pyerr)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn genus(&self) -> usize {
        self.inner.genus()
    }

    #[getter]
    fn field(&self) -> &'static str {
        self.inner.field_name()
    }

    #[getter]
    fn h0(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        match &self.inner {
            AnyBank::Rational(b) => scalars_py(py, b.h0()),
            AnyBank::Float(b) => scalars_py(py, b.h0()),
        }
    }

    #[getter]
    fn h1(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        match &self.inner {
            AnyBank::Rational(b) => scalars_py(py, b.h1()),
            AnyBank::Float(b) => scalars_py(py, b.h1()),
        }
    }

    /// Quadratic and linear condition report; "pass" is exactness for a
    /// rational bank and residual <= tolerance for a float one.
    #[pyo3(signature = (tolerance = 1e-12))]
    fn verify<'py>(&self, py: Python<'py>, tolerance: f64) -> PyResult<Bound<'py, PyDict>> {
        match &self.inner {
            AnyBank::Rational(b) => verify_dict(py, b, tolerance),
            AnyBank::Float(b) => verify_dict(py, b, tolerance),
        }
    }

    /// Highpass moments M_0..M_pmax; pmax defaults to genus - 1.
    #[pyo3(signature = (pmax = None))]
    fn moments(&self, py: Python<'_>, pmax: Option<usize>) -> PyResult<Py<PyAny>> {
        match &self.inner {
            AnyBank::Rational(b) => {
                let p = pmax.unwrap_or(b.genus().saturating_sub(1));
                scalars_py(py, &b.moments(p).values)
            }
            AnyBank::Float(b) => {
                let p = pmax.unwrap_or(b.genus().saturating_sub(1));
                scalars_py(py, &b.moments(p).values)
            }
        }
    }

    #[pyo3(signature = (tolerance = 1e-12))]
    fn to_phi(&self, tolerance: f64) -> PyResult<Phi> {
        let inner = match &self.inner {
            AnyBank::Rational(b) => AnyPhi::Rational(bank_phi(b, tolerance).map_err(pyerr)?),
            AnyBank::Float(b) => AnyPhi::Float(bank_phi(b, tolerance).map_err(pyerr)?),
        };
        Ok(Phi { inner })
    }

    /// Rational approximation through the parameter map. Strategies:
    /// "dyadic:K", "best:EPS", "maxden:Q". Joint search lives in screen().
    #[pyo3(signature = (strategy, tolerance = 1e-12))]
    fn rationalize<'py>(
        &self,
        py: Python<'py>,
        strategy: &str,
        tolerance: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let strategy: ApproxStrategy = strategy.parse().map_err(pyerr)?;
        if matches!(strategy, ApproxStrategy::Screening { .. }) {
            return Err(PyValueError::new_err(
                "screening needs the joint search; call screen() instead",
            ));
        }
        let float = float_view(&self.inner)?;
        let r = rationalize_bank(&float, &strategy, tolerance).map_err(pyerr)?;
        result_dict(py, &r)
    }

    /// All rational banks with parameter within epsilon and tap denominators
    /// at most d_max, sorted by denominator then residual moment size.
    #[pyo3(signature = (epsilon, d_max, budget = SCREEN_BUDGET, tolerance = 1e-12))]
    fn screen<'py>(
        &self,
        py: Python<'py>,
        epsilon: f64,
        d_max: u64,
        budget: usize,
        tolerance: f64,
    ) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let float = float_view(&self.inner)?;
        let results = qwave_core::screen(&float, epsilon, d_max, budget, tolerance).map_err(pyerr)?;
        results.iter().map(|r| result_dict(py, r)).collect()
    }

    /// Analyze/synthesize round trip on seeded integer-valued signals.
    #[pyo3(signature = (length = 128, trials = 8, seed = 42, tolerance = 1e-12))]
    fn pr_test<'py>(
        &self,
        py: Python<'py>,
        length: usize,
        trials: usize,
        seed: u64,
        tolerance: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        match &self.inner {
            AnyBank::Rational(b) => pr_test_dict(py, b, length, trials, seed, tolerance),
            AnyBank::Float(b) => pr_test_dict(py, b, length, trials, seed, tolerance),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Bank(genus={}, field=\"{}\")",
            self.inner.genus(),
            self.inner.field_name()
        )
    }
}

/// The Laurent-polynomial parameter: coefficients gamma_1..gamma_n of the
/// strictly negative part.
#[pyclass]
struct Phi {
    inner: AnyPhi,
}

#[pymethods]
impl Phi {
    #[new]
    fn new(gammas: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(texts) = gammas.extract::<Vec<String>>() {
            let vals = texts
                .iter()
                .map(|t| parse_rat(t))
                .collect::<PyResult<Vec<_>>>()?;
            let phi = PhiParam::new(vals.len(), vals).map_err(pyerr)?;
            return Ok(Phi {
                inner: AnyPhi::Rational(phi),
            });
        }
        let vals: Vec<f64> = gammas.extract().map_err(|_| {
            PyValueError::new_err("expected a list of \"p/q\" strings or a list of floats")
        })?;
        let phi = PhiParam::new(vals.len(), vals).map_err(pyerr)?;
        Ok(Phi {
            inner: AnyPhi::Float(phi),
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Phi {
            inner: AnyPhi::from_json(text).map_err(pyerr)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn n(&self) -> usize {
        match &self.inner {
            AnyPhi::Rational(p) => p.n(),
            AnyPhi::Float(p) => p.n(),
        }
    }

    #[getter]
    fn gammas(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        match &self.inner {
            AnyPhi::Rational(p) => scalars_py(py, p.gammas()),
            AnyPhi::Float(p) => scalars_py(py, p.gammas()),
        }
    }

    /// Synthesize the bank this parameter encodes. The natural genus is
    /// n + 1; a larger genus pads with zero taps.
    #[pyo3(signature = (genus = None))]
    fn lift(&self, genus: Option<usize>) -> PyResult<Bank> {
        let inner = match &self.inner {
            AnyPhi::Rational(p) => {
                let pair = phi_to_pair(p).map_err(pyerr)?;
                let g = genus.unwrap_or(p.n() + 1);
                AnyBank::Rational(WaveletBank2::from_param(&pair, g).map_err(pyerr)?)
            }
            AnyPhi::Float(p) => {
                let pair = phi_to_pair(p).map_err(pyerr)?;
                let g = genus.unwrap_or(p.n() + 1);
                AnyBank::Float(WaveletBank2::from_param(&pair, g).map_err(pyerr)?)
            }
        };
        Ok(Bank { inner })
    }

    fn __repr__(&self) -> String {
        match &self.inner {
            AnyPhi::Rational(p) => {
                let gs: Vec<String> = p.gammas().iter().map(|g| g.to_string()).collect();
                format!("Phi(n={}, gammas={gs:?})", p.n())
            }
            AnyPhi::Float(p) => format!("Phi(n={}, gammas={:?})", p.n(), p.gammas()),
        }
    }
}

/// Float64 prototype bank with maximally flat lowpass response.
#[pyfunction]
fn generate(genus: usize) -> PyResult<Bank> {
    Ok(Bank {
        inner: AnyBank::Float(qwave_core::generate(genus).map_err(pyerr)?),
    })
}

#[pymodule]
fn qwave(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Bank>()?;
    m.add_class::<Phi>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add("SCREEN_BUDGET", SCREEN_BUDGET)?;
    Ok(())
}
