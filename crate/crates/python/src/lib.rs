//! Python bindings for `harmonic-core`.

use harmonic_core::growth::{self, BoundMode};
use harmonic_core::halfplane::{self, HalfPlanePoint, Side};
use harmonic_core::kernels::{self, KernelFamily, KernelSpec};
use harmonic_core::spectral;
use harmonic_core::summability::{self, LimitMethod, MeanKind, Schedule};
use harmonic_core::{DecayTag, Grid, SampledFunction, Spectrum, SupportSpec};
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(harmonic, HarmonicError, PyValueError);

fn err(e: harmonic_core::Error) -> PyErr {
    HarmonicError::new_err(e.to_string())
}

fn bad(msg: String) -> PyErr {
    HarmonicError::new_err(msg)
}

fn family(name: &str) -> PyResult<KernelFamily> {
    Ok(match name {
        "abel" => KernelFamily::Abel,
        "gauss" => KernelFamily::Gauss,
        "poisson" => KernelFamily::Poisson,
        "abel_plus" => KernelFamily::AbelPlus,
        "abel_minus" => KernelFamily::AbelMinus,
        other => return Err(bad(format!("unknown kernel family {other:?}"))),
    })
}

fn mean_kind(name: &str) -> PyResult<MeanKind> {
    match name {
        "abel" => Ok(MeanKind::Abel),
        "gauss" => Ok(MeanKind::Gauss),
        other => Err(bad(format!("unknown mean kind {other:?}"))),
    }
}

fn limit_method(name: &str) -> PyResult<LimitMethod> {
    match name {
        "last_value" => Ok(LimitMethod::LastValue),
        "richardson1" => Ok(LimitMethod::Richardson1),
        "richardson_log" => Ok(LimitMethod::RichardsonLog),
        other => Err(bad(format!("unknown limit method {other:?}"))),
    }
}

fn side(name: &str) -> PyResult<Side> {
    match name {
        "upper" => Ok(Side::Upper),
        "lower" => Ok(Side::Lower),
        other => Err(bad(format!("unknown side {other:?}"))),
    }
}

/// `"full_line"`, `"nonneg"`, `"nonpos"`, or an `(a, b)` interval.
fn support(kind: Option<&str>, interval: Option<(f64, f64)>) -> PyResult<SupportSpec> {
    match (kind, interval) {
        (_, Some((a, b))) => SupportSpec::interval(a, b).map_err(err),
        (None | Some("full_line"), None) => Ok(SupportSpec::FullLine),
        (Some("nonneg"), None) => Ok(SupportSpec::NonnegHalfline),
        (Some("nonpos"), None) => Ok(SupportSpec::NonposHalfline),
        (Some(other), None) => Err(bad(format!("unknown support {other:?}"))),
    }
}

fn decay(name: &str, tail: f64) -> PyResult<DecayTag> {
    match name {
        "schwartz" => Ok(DecayTag::SchwartzLike),
        "integrable" => Ok(DecayTag::Integrable { tail }),
        "bounded" => Ok(DecayTag::BoundedOnly),
        other => Err(bad(format!("unknown decay tag {other:?}"))),
    }
}

/// A symmetric lattice `[-R, R)^n` with `points` nodes per axis.
#[pyclass(name = "Grid", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGrid(Grid);

#[pymethods]
impl PyGrid {
    #[new]
    #[pyo3(signature = (half_width, points, dim = 1))]
    fn new(half_width: f64, points: usize, dim: usize) -> PyResult<Self> {
        Grid::new(dim, half_width, points).map(PyGrid).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn half_width(&self) -> f64 {
        self.0.half_width()
    }

    #[getter]
    fn points(&self) -> usize {
        self.0.points_per_axis()
    }

    #[getter]
    fn spacing(&self) -> f64 {
        self.0.spacing()
    }

    fn coordinates(&self) -> Vec<f64> {
        self.0.coordinates()
    }

    fn reciprocal(&self) -> PyResult<PyGrid> {
        self.0.reciprocal().map(PyGrid).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Grid(half_width={}, points={}, dim={})",
            self.0.half_width(),
            self.0.points_per_axis(),
            self.0.dim()
        )
    }
}

/// Samples of a function on a grid.
#[pyclass(name = "SampledFunction", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySampled(SampledFunction);

#[pymethods]
impl PySampled {
    #[new]
    #[pyo3(signature = (grid, values, decay = "schwartz", tail = 0.0))]
    fn new(grid: &PyGrid, values: Vec<Complex64>, decay: &str, tail: f64) -> PyResult<Self> {
        let tag = self::decay(decay, tail)?;
        SampledFunction::new(grid.0, values, tag).map(PySampled).map_err(err)
    }

    /// A sampled kernel, with jump metadata at its kinks.
    #[staticmethod]
    fn kernel(family: &str, t: f64, grid: &PyGrid) -> PyResult<Self> {
        let spec = KernelSpec::new(self::family(family)?, t, grid.0.dim()).map_err(err)?;
        spec.sample(grid.0).map(PySampled).map_err(err)
    }

    #[getter]
    fn grid(&self) -> PyGrid {
        PyGrid(*self.0.grid())
    }

    fn values(&self) -> Vec<Complex64> {
        self.0.values().to_vec()
    }

    fn integral(&self) -> PyResult<Complex64> {
        harmonic_core::sampled::integrate(&self.0).map_err(err)
    }

    fn convolve(&self, other: &PySampled) -> PyResult<PySampled> {
        harmonic_core::sampled::convolve(&self.0, &other.0).map(PySampled).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.values().len()
    }
}

/// Samples of a transform on a frequency lattice, with a declared support.
#[pyclass(name = "Spectrum", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySpectrum(Spectrum);

#[pymethods]
impl PySpectrum {
    #[new]
    #[pyo3(signature = (grid, values, support = None, interval = None))]
    fn new(
        grid: &PyGrid,
        values: Vec<Complex64>,
        support: Option<&str>,
        interval: Option<(f64, f64)>,
    ) -> PyResult<Self> {
        let s = self::support(support, interval)?;
        Spectrum::new(grid.0, values, s).map(PySpectrum).map_err(err)
    }

    #[getter]
    fn grid(&self) -> PyGrid {
        PyGrid(*self.0.grid())
    }

    #[getter]
    fn support(&self) -> String {
        self.0.support().label()
    }

    fn values(&self) -> Vec<Complex64> {
        self.0.values().to_vec()
    }

    fn frequencies(&self) -> Vec<f64> {
        self.0.frequencies()
    }

    fn project(&self, support: Option<&str>, interval: Option<(f64, f64)>) -> PyResult<PySpectrum> {
        let s = self::support(support, interval)?;
        spectral::project_spectrum(&self.0, s).map(PySpectrum).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.values().len()
    }
}

#[pyfunction]
fn poisson_kernel(t: f64, y: Vec<f64>) -> PyResult<f64> {
    kernels::poisson_kernel(t, &y).map_err(err)
}

#[pyfunction]
fn abel_kernel(t: f64, x: Vec<f64>) -> PyResult<f64> {
    kernels::abel_kernel(t, &x).map_err(err)
}

#[pyfunction]
fn gauss_kernel(s: f64, x: Vec<f64>) -> PyResult<f64> {
    kernels::gauss_kernel(s, &x).map_err(err)
}

/// Abel kernel rebuilt from Gaussian averages.
#[pyfunction]
#[pyo3(signature = (t, x, u_max = kernels::SUBORDINATION_U_MAX, points = kernels::SUBORDINATION_POINTS))]
fn abel_from_gaussians(t: f64, x: Vec<f64>, u_max: f64, points: usize) -> PyResult<f64> {
    kernels::abel_from_gaussians(t, &x, u_max, points)
        .map(|s| s.value)
        .map_err(err)
}

#[pyfunction]
fn forward_ft(f: &PySampled) -> PyResult<PySpectrum> {
    spectral::forward_ft(&f.0).map(PySpectrum).map_err(err)
}

#[pyfunction]
fn inverse_ft(spectrum: &PySpectrum) -> PyResult<PySampled> {
    spectral::inverse_ft(&spectrum.0).map(PySampled).map_err(err)
}

#[pyfunction]
fn abel_regularized_inverse(spectrum: &PySpectrum, t: f64, x: f64) -> PyResult<Complex64> {
    spectral::abel_regularized_inverse(&spectrum.0, t, x).map_err(err)
}

#[pyfunction]
fn abel_mean(h: &PySampled, t: f64) -> PyResult<Complex64> {
    summability::abel_mean(&h.0, t).map_err(err)
}

#[pyfunction]
fn gauss_mean(h: &PySampled, s: f64) -> PyResult<Complex64> {
    summability::gauss_mean(&h.0, s).map_err(err)
}

/// Means along `start * ratio^k` and the extrapolated limit, as a dict.
#[pyfunction]
#[pyo3(signature = (h, kind = "abel", start = 0.1, ratio = 0.5, count = 5, tol = 1e-3, method = "richardson_log"))]
#[allow(clippy::too_many_arguments)]
fn summability_verdict<'py>(
    py: Python<'py>,
    h: &PySampled,
    kind: &str,
    start: f64,
    ratio: f64,
    count: usize,
    tol: f64,
    method: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let schedule = Schedule::geometric(start, ratio, count, tol, limit_method(method)?).map_err(err)?;
    let r = summability::summability_verdict(&h.0, mean_kind(kind)?, &schedule).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("kind", r.kind.label())?;
    d.set_item("t_values", r.t_values)?;
    d.set_item("means", r.means)?;
    d.set_item("truncation", r.truncation)?;
    d.set_item("limit", r.limit_estimate)?;
    d.set_item("converged", r.converged)?;
    d.set_item("residual", r.residual)?;
    d.set_item("method", r.method_used.label())?;
    Ok(d)
}

#[pyfunction]
fn hardy_split(f: &PySampled) -> PyResult<(PySpectrum, PySpectrum)> {
    halfplane::hardy_split(&f.0)
        .map(|(p, q)| (PySpectrum(p), PySpectrum(q)))
        .map_err(err)
}

/// Extension into the half-plane the spectrum's support selects.
#[pyfunction]
fn evaluate(spectrum: &PySpectrum, x: f64, y: f64) -> PyResult<Complex64> {
    halfplane::evaluate(&spectrum.0, HalfPlanePoint::new(x, y)).map_err(err)
}

#[pyfunction]
fn evaluate_upper(spectrum: &PySpectrum, x: f64, y: f64) -> PyResult<Complex64> {
    halfplane::evaluate_upper(&spectrum.0, HalfPlanePoint::new(x, y)).map_err(err)
}

#[pyfunction]
fn evaluate_lower(spectrum: &PySpectrum, x: f64, y: f64) -> PyResult<Complex64> {
    halfplane::evaluate_lower(&spectrum.0, HalfPlanePoint::new(x, y)).map_err(err)
}

#[pyfunction]
fn cauchy_represent(f: &PySampled, side: &str, t: f64, x: f64) -> PyResult<Complex64> {
    halfplane::cauchy_represent(&f.0, self::side(side)?, t, x).map_err(err)
}

#[pyfunction]
fn poisson_extend(f: &PySampled, t: f64) -> PyResult<PySampled> {
    halfplane::poisson_extend(&f.0, t).map(PySampled).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (spectrum, x, y, h = 1e-3))]
fn cr_residual(spectrum: &PySpectrum, x: f64, y: f64, h: f64) -> PyResult<f64> {
    halfplane::cr_residual(&spectrum.0, HalfPlanePoint::new(x, y), h).map_err(err)
}

#[pyfunction]
fn evaluate_entire(spectrum: &PySpectrum, z: Complex64) -> PyResult<Complex64> {
    growth::evaluate_entire(&spectrum.0, z).map_err(err)
}

#[pyfunction]
fn envelope_bound(spectrum: &PySpectrum, y: f64) -> PyResult<f64> {
    growth::envelope_bound(&spectrum.0, y).map_err(err)
}

#[pyfunction]
fn theoretical_type(spectrum: &PySpectrum) -> PyResult<f64> {
    growth::theoretical_type(&spectrum.0).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (spectrum, y_samples = growth::TYPE_SAMPLES.to_vec()))]
fn estimate_type(spectrum: &PySpectrum, y_samples: Vec<f64>) -> PyResult<f64> {
    growth::estimate_type(&spectrum.0, &y_samples).map_err(err)
}

/// Checks `|f(x+iy)| <= B exp(sigma |y|)` on `points`; `b=None` measures `B` on the real axis.
#[pyfunction]
#[pyo3(signature = (spectrum, sigma, points, b = None, tol = 1e-6))]
fn check_pl_bound<'py>(
    py: Python<'py>,
    spectrum: &PySpectrum,
    sigma: f64,
    points: Vec<(f64, f64)>,
    b: Option<f64>,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let mode = match b {
        Some(b) => BoundMode::Supplied { b },
        None => BoundMode::default(),
    };
    let r = growth::check_pl_bound(&spectrum.0, sigma, mode, &points, tol).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("sigma", r.sigma)?;
    d.set_item("b", r.b)?;
    d.set_item("b_window_gap", r.b_window_gap)?;
    d.set_item("abs_values", r.abs_values)?;
    d.set_item("envelopes", r.envelopes)?;
    d.set_item("max_margin_violation", r.max_margin_violation)?;
    d.set_item("pass", r.pass)?;
    d.set_item("sigma_estimate", r.sigma_estimate)?;
    Ok(d)
}

#[pymodule]
fn harmonic(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("HarmonicError", m.py().get_type::<HarmonicError>())?;
    m.add_class::<PyGrid>()?;
    m.add_class::<PySampled>()?;
    m.add_class::<PySpectrum>()?;
    m.add_function(wrap_pyfunction!(poisson_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(abel_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(abel_from_gaussians, m)?)?;
    m.add_function(wrap_pyfunction!(forward_ft, m)?)?;
    m.add_function(wrap_pyfunction!(inverse_ft, m)?)?;
    m.add_function(wrap_pyfunction!(abel_regularized_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(abel_mean, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_mean, m)?)?;
    m.add_function(wrap_pyfunction!(summability_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(hardy_split, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_upper, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_lower, m)?)?;
    m.add_function(wrap_pyfunction!(cauchy_represent, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_extend, m)?)?;
    m.add_function(wrap_pyfunction!(cr_residual, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_entire, m)?)?;
    m.add_function(wrap_pyfunction!(envelope_bound, m)?)?;
    m.add_function(wrap_pyfunction!(theoretical_type, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_type, m)?)?;
    m.add_function(wrap_pyfunction!(check_pl_bound, m)?)?;
    Ok(())
}
