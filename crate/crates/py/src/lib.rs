//! Python bindings: parse a system document and run the same workflows as
//! the CLI. Reports carry the text, the JSON string and the exit status.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use tropdiff::frontend::commands::{self, Report};
use tropdiff::frontend::{json, parse_document};
use tropdiff::rational::parse_q;
use tropdiff::Error;

fn to_py(e: Error) -> PyErr {
    if e.is_precision() {
        PyArithmeticError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

#[pyclass(name = "Report", frozen)]
struct PyReport {
    #[pyo3(get)]
    status: String,
    #[pyo3(get)]
    exit_code: i32,
    #[pyo3(get)]
    text: String,
    #[pyo3(get)]
    json: String,
}

impl From<Report> for PyReport {
    fn from(r: Report) -> Self {
        PyReport {
            status: r.status.as_str().to_string(),
            exit_code: r.status.exit_code(),
            text: r.text,
            json: json::render(&r.json),
        }
    }
}

#[pymethods]
impl PyReport {
    fn __repr__(&self) -> String {
        format!("Report(status={:?})", self.status)
    }
}

#[pyclass(name = "Document", frozen)]
struct PyDocument {
    inner: tropdiff::frontend::Document,
}

#[pymethods]
impl PyDocument {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_document(text).map(|inner| PyDocument { inner }).map_err(to_py)
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.generators.iter().map(|(n, _)| n.clone()).collect()
    }

    /// Canonical text form.
    fn print(&self) -> String {
        self.inner.print()
    }

    fn to_json(&self) -> String {
        json::render(&json::document(&self.inner))
    }

    #[pyo3(signature = (deriv_bound = 0))]
    fn tropicalize(&self, deriv_bound: u32) -> PyResult<PyReport> {
        commands::tropicalize_cmd(&self.inner, deriv_bound).map(Into::into).map_err(to_py)
    }

    fn transform(&self, spec: &str) -> PyResult<PyReport> {
        let spec = self.inner.resolve_spec(spec).map_err(to_py)?;
        commands::transform_cmd(&self.inner, &spec).map(Into::into).map_err(to_py)
    }

    #[pyo3(signature = (candidate, order = None))]
    fn check(&self, candidate: &str, order: Option<&str>) -> PyResult<PyReport> {
        let order = match order {
            Some(s) => parse_q(s).ok_or_else(|| PyValueError::new_err(format!("'{s}' is not a rational")))?,
            None => commands::default_order().map_err(to_py)?,
        };
        commands::check_cmd(&self.inner, candidate, &order).map(Into::into).map_err(to_py)
    }

    #[pyo3(signature = (candidate, deriv_bound = 3, logs = false))]
    fn trop_check(&self, candidate: &str, deriv_bound: u32, logs: bool) -> PyResult<PyReport> {
        commands::trop_check_cmd(&self.inner, candidate, deriv_bound, logs)
            .map(Into::into)
            .map_err(to_py)
    }

    #[pyo3(signature = (window = 10, deriv_bound = 3))]
    fn search(&self, window: u32, deriv_bound: u32) -> PyResult<PyReport> {
        commands::search_cmd(&self.inner, window, deriv_bound).map(Into::into).map_err(to_py)
    }

    fn roundtrip(&self, spec: &str) -> PyResult<PyReport> {
        let spec = self.inner.resolve_spec(spec).map_err(to_py)?;
        commands::roundtrip_cmd(&self.inner, &spec).map(Into::into).map_err(to_py)
    }
}

/// Canonical form of a document given as text.
#[pyfunction]
fn canonical(text: &str) -> PyResult<String> {
    parse_document(text).map(|d| d.print()).map_err(to_py)
}

#[pymodule]
fn tropdiff_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDocument>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    Ok(())
}
