//! Python bindings. Rationals cross the boundary as `fractions.Fraction`
//! on the way out; on the way in anything whose `str()` reads as `p` or
//! `p/q` is accepted (ints, Fractions, strings).

use hamforms::cohomology::{self, BettiRow};
use hamforms::linalg::{format_rational, parse_rational};
use hamforms::paper_data::{self, FixtureSet};
use hamforms::{
    AlgebraVariant, CochainComplex, GenOrder, HamMonomial, LinearForm, Rational, VarOrder,
};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn to_py_err(e: hamforms::Error) -> PyErr {
    match e {
        hamforms::Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((format_rational(q),))
}

fn fractions<'py>(py: Python<'py>, v: &[Rational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    v.iter().map(|q| fraction(py, q)).collect()
}

fn rational_of(x: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let s = x.str()?.to_string();
    parse_rational(s.trim()).map_err(|e| PyValueError::new_err(format!("not a rational: {s}: {e}")))
}

fn variant_of(name: &str) -> PyResult<AlgebraVariant> {
    name.parse().map_err(PyValueError::new_err)
}

/// Dense exact rational matrix.
#[pyclass(name = "QMatrix", module = "hamforms_py")]
struct PyQMatrix {
    inner: hamforms::QMatrix,
}

#[pymethods]
impl PyQMatrix {
    #[new]
    fn new(rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(rational_of).collect::<PyResult<Vec<_>>>())
            .collect::<PyResult<Vec<_>>>()?;
        let inner = if rows.is_empty() {
            hamforms::QMatrix::zeros(0, 0)
        } else {
            hamforms::QMatrix::from_rows(rows).map_err(to_py_err)?
        };
        Ok(PyQMatrix { inner })
    }

    /// Parses the `rows cols` header plus one line per row text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyQMatrix {
            inner: hamforms::QMatrix::parse(text, "<string>").map_err(to_py_err)?,
        })
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.cols()
    }

    fn rank(&self) -> usize {
        hamforms::rank(&self.inner)
    }

    /// `(reduced matrix, pivot columns)`.
    fn rref(&self) -> (PyQMatrix, Vec<usize>) {
        let r = hamforms::rref(&self.inner);
        (PyQMatrix { inner: r.matrix }, r.pivots)
    }

    /// Primitive integer basis of the right kernel, one list per vector.
    fn nullspace<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        hamforms::nullspace_basis(&self.inner)
            .iter()
            .map(|v| fractions(py, v))
            .collect()
    }

    fn matmul(&self, other: &PyQMatrix) -> PyResult<PyQMatrix> {
        Ok(PyQMatrix {
            inner: hamforms::linalg::mat_mul(&self.inner, &other.inner).map_err(to_py_err)?,
        })
    }

    fn __matmul__(&self, other: &PyQMatrix) -> PyResult<PyQMatrix> {
        self.matmul(other)
    }

    fn to_list<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        (0..self.inner.rows())
            .map(|i| fractions(py, self.inner.row(i)))
            .collect()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("QMatrix({}x{})", self.inner.rows(), self.inner.cols())
    }
}

/// Reduced Gröbner basis of an ideal generated by linear forms.
#[pyclass(name = "GroebnerBasis", module = "hamforms_py")]
struct PyGroebnerBasis {
    inner: hamforms::GroebnerBasis,
}

#[pymethods]
impl PyGroebnerBasis {
    /// Basis of the forms given by the columns of `m`, in `y1..y{rows}`.
    #[staticmethod]
    fn from_columns(m: &PyQMatrix) -> PyResult<Self> {
        let order = VarOrder::indexed("y", m.inner.rows());
        let forms: Vec<LinearForm> = m
            .inner
            .columns()
            .iter()
            .map(|c| LinearForm::from_vector(c))
            .collect();
        Ok(PyGroebnerBasis {
            inner: hamforms::gb_linear(&forms, &order).map_err(to_py_err)?,
        })
    }

    /// Basis of forms written like `3*y8-36*y9`, in `{prefix}1..{prefix}{nvars}`.
    #[staticmethod]
    #[pyo3(signature = (forms, nvars, prefix = "y"))]
    fn from_forms(forms: Vec<String>, nvars: usize, prefix: &str) -> PyResult<Self> {
        let order = VarOrder::indexed(prefix, nvars);
        let forms = forms
            .iter()
            .map(|f| hamforms::parse_form(f, &order).map_err(PyValueError::new_err))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyGroebnerBasis {
            inner: hamforms::gb_linear(&forms, &order).map_err(to_py_err)?,
        })
    }

    fn normal_form(&self, form: &str) -> PyResult<String> {
        let f = hamforms::parse_form(form, self.inner.order()).map_err(PyValueError::new_err)?;
        Ok(hamforms::normal_form(&f, &self.inner)
            .display(self.inner.order())
            .to_string())
    }

    fn is_member(&self, form: &str) -> PyResult<bool> {
        let f = hamforms::parse_form(form, self.inner.order()).map_err(PyValueError::new_err)?;
        Ok(hamforms::groebner::is_member(&f, &self.inner))
    }

    fn generators(&self) -> Vec<String> {
        self.inner
            .generators()
            .iter()
            .map(|g| g.display(self.inner.order()).to_string())
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("GroebnerBasis({} generators)", self.inner.len())
    }
}

fn row_dict<'py>(py: Python<'py>, r: &BettiRow) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("degree", r.degree)?;
    d.set_item("dim", r.dim)?;
    d.set_item("rank_in", r.rank_in)?;
    d.set_item("rank_out", r.rank_out)?;
    d.set_item("betti", r.betti)?;
    Ok(d)
}

/// Betti rows of the Sp-basic complex, one dict per degree.
#[pyfunction]
#[pyo3(signature = (variant, weight, degrees = None))]
fn betti_table<'py>(
    py: Python<'py>,
    variant: &str,
    weight: i64,
    degrees: Option<(usize, usize)>,
) -> PyResult<Bound<'py, PyList>> {
    let v = variant_of(variant)?;
    let rows = py.detach(|| {
        let c = CochainComplex::new(v, weight, GenOrder::Standard);
        let range = match degrees {
            Some((a, b)) => a..=b,
            None => cohomology::support(&c)?.unwrap_or(0..=0),
        };
        cohomology::betti_table(&c, range)
    });
    let rows = rows.map_err(to_py_err)?;
    let out = PyList::empty(py);
    for r in &rows {
        out.append(row_dict(py, r)?)?;
    }
    Ok(out)
}

/// Runs the omega-wedge coboundary test and returns the certificate.
#[pyfunction]
#[pyo3(signature = (reversed = false))]
fn kontsevich_check<'py>(py: Python<'py>, reversed: bool) -> PyResult<Bound<'py, PyDict>> {
    let order = if reversed {
        GenOrder::Reversed
    } else {
        GenOrder::Standard
    };
    let cert = py
        .detach(|| cohomology::kontsevich_check(order))
        .map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("verdict", cert.verdict)?;
    d.set_item("h", cert.h.to_string())?;
    d.set_item("h_coords", fractions(py, &cert.h_coords)?)?;
    d.set_item("image_vector", fractions(py, &cert.image_vector)?)?;
    d.set_item("residual", fractions(py, &cert.residual)?)?;
    d.set_item("image_rank", cert.image_rank)?;
    d.set_item("augmented_rank", cert.augmented_rank)?;
    Ok(d)
}

/// `{x^a y^b/(a!b!), x^c y^d/(c!d!)}` as a dict `{(a', b'): Fraction}`.
#[pyfunction]
fn poisson_bracket<'py>(
    py: Python<'py>,
    p: (u32, u32),
    q: (u32, u32),
) -> PyResult<Bound<'py, PyDict>> {
    let r = hamforms::poisson_bracket(
        HamMonomial { a: p.0, b: p.1 },
        HamMonomial { a: q.0, b: q.1 },
    );
    let d = PyDict::new(py);
    for (m, c) in r.terms() {
        d.set_item((m.a, m.b), fraction(py, c)?)?;
    }
    Ok(d)
}

/// Replays the reference fixtures; returns the passed checks or raises
/// `ValueError` naming the first mismatch.
#[pyfunction]
#[pyo3(signature = (only = None, fixtures = None))]
fn verify_paper(
    py: Python<'_>,
    only: Option<&str>,
    fixtures: Option<&str>,
) -> PyResult<Vec<String>> {
    let (w10, w8) = match only {
        None => (true, true),
        Some("w10") => (true, false),
        Some("w8") => (false, true),
        Some(o) => {
            return Err(PyValueError::new_err(format!(
                "only must be 'w10' or 'w8', got {o:?}"
            )))
        }
    };
    let fixtures = fixtures.map(str::to_string);
    py.detach(move || {
        let fx = match fixtures {
            Some(p) => paper_data::load_fixtures(p)?,
            None => FixtureSet::builtin()?,
        };
        let mut lines = Vec::new();
        for (run, replay) in [
            (w10, paper_data::replay_w10 as fn(&FixtureSet) -> _),
            (w8, paper_data::replay_w8_and_final),
        ] {
            if run {
                let r = replay(&fx)?;
                lines.extend(r.to_string().lines().map(str::to_string));
            }
        }
        Ok(lines)
    })
    .map_err(to_py_err)
}

#[pymodule]
fn hamforms_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQMatrix>()?;
    m.add_class::<PyGroebnerBasis>()?;
    m.add_function(wrap_pyfunction!(betti_table, m)?)?;
    m.add_function(wrap_pyfunction!(kontsevich_check, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(verify_paper, m)?)?;
    Ok(())
}
