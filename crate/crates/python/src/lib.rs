//! Python bindings for `fpa`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fpa::equiv::{self, EquivalenceReport, GeneratorMap};
use fpa::grading;
use fpa::ncgb::{self, Verdict};
use fpa::peirce::{
    peirce_component_presentation, peirce_component_presentation_unchecked, stored_witnesses, IdempotentSpec,
};
use fpa::presio::{self, format_polynomial, print_canonical};

create_exception!(fpa_py, FpaError, PyValueError);

fn err(e: fpa::Error) -> PyErr {
    FpaError::new_err(e.to_string())
}

/// A finite presentation over Q.
#[pyclass(name = "Presentation", module = "fpa_py", from_py_object)]
#[derive(Clone)]
struct PyPresentation {
    inner: presio::Presentation,
}

#[pymethods]
impl PyPresentation {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let inner = presio::parse_presentation(text).map_err(err)?;
        Ok(PyPresentation { inner })
    }

    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| FpaError::new_err(format!("{path}: {e}")))?;
        Self::parse(&text)
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.generators().to_vec()
    }

    #[getter]
    fn relations(&self) -> Vec<String> {
        let ord = self.inner.default_order();
        self.inner
            .relations()
            .iter()
            .map(|r| format_polynomial(r.poly(), self.inner.generators(), &ord))
            .collect()
    }

    fn is_homogeneous(&self) -> bool {
        self.inner.is_homogeneous()
    }

    fn expand_schemas(&self, max_deg: usize) -> Self {
        PyPresentation {
            inner: presio::expand_schemas(&self.inner, max_deg),
        }
    }

    fn canonical(&self) -> String {
        print_canonical(&self.inner)
    }

    fn __str__(&self) -> String {
        self.canonical()
    }

    fn __repr__(&self) -> String {
        format!(
            "Presentation(generators={:?}, relations={})",
            self.inner.generators(),
            self.inner.relations().len()
        )
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// A truncated rewriting system.
#[pyclass(name = "RewriteSystem", module = "fpa_py")]
struct PyRewriteSystem {
    inner: ncgb::RewriteSystem,
    presentation: presio::Presentation,
}

#[pymethods]
impl PyRewriteSystem {
    #[getter]
    fn rules(&self) -> Vec<(String, String)> {
        let (names, ord) = (self.presentation.generators(), self.inner.order());
        self.inner
            .rules()
            .iter()
            .map(|r| {
                (
                    presio::format_word(&r.lhs, names),
                    format_polynomial(&r.rhs, names, ord),
                )
            })
            .collect()
    }

    #[getter]
    fn complete(&self) -> bool {
        self.inner.is_complete()
    }

    #[getter]
    fn homogeneous(&self) -> bool {
        self.inner.is_homogeneous()
    }

    #[getter]
    fn degenerate(&self) -> bool {
        self.inner.is_degenerate()
    }

    #[getter]
    fn truncation_degree(&self) -> usize {
        self.inner.truncation_degree()
    }

    /// Normal form of a polynomial written over the generators.
    fn reduce(&self, element: &str) -> PyResult<String> {
        let p = presio::parse_polynomial(&self.presentation, element).map_err(err)?;
        Ok(format_polynomial(
            &self.inner.reduce(&p),
            self.presentation.generators(),
            self.inner.order(),
        ))
    }

    fn member(&self, element: &str) -> PyResult<String> {
        let p = presio::parse_polynomial(&self.presentation, element).map_err(err)?;
        Ok(ncgb::ideal_member(&p, &self.inner).map_err(err)?.to_string())
    }

    fn hilbert(&self, max_d: usize) -> PyResult<(Vec<u128>, bool)> {
        let h = ncgb::hilbert_profile(&self.inner, max_d).map_err(err)?;
        Ok((h.dims, h.exact))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

fn system(p: &presio::Presentation, max_deg: usize) -> PyResult<ncgb::RewriteSystem> {
    ncgb::complete_truncated(&p.relation_polys(), &p.default_order(), max_deg).map_err(err)
}

/// Completes the relations up to `max_deg`.
#[pyfunction]
fn groebner(p: &PyPresentation, max_deg: usize) -> PyResult<PyRewriteSystem> {
    Ok(PyRewriteSystem {
        inner: system(&p.inner, max_deg)?,
        presentation: p.inner.clone(),
    })
}

/// Normal-word counts in degrees `0..=max_deg` and whether they are exact.
#[pyfunction]
fn hilbert(p: &PyPresentation, max_deg: usize) -> PyResult<(Vec<u128>, bool)> {
    let h = ncgb::hilbert_profile(&system(&p.inner, max_deg)?, max_deg).map_err(err)?;
    Ok((h.dims, h.exact))
}

/// `"member"`, `"non-member-up-to-degree"` or `"unknown"`.
#[pyfunction]
fn member(p: &PyPresentation, element: &str, max_deg: usize) -> PyResult<String> {
    let q = presio::parse_polynomial(&p.inner, element).map_err(err)?;
    let v: Verdict = ncgb::ideal_member(&q, &system(&p.inner, max_deg)?).map_err(err)?;
    Ok(v.to_string())
}

#[pyfunction]
#[pyo3(signature = (p, max_deg, simplify = true))]
fn even_part(p: &PyPresentation, max_deg: usize, simplify: bool) -> PyResult<PyPresentation> {
    let inner = grading::even_part_presentation(&p.inner, max_deg, simplify).map_err(err)?;
    Ok(PyPresentation { inner })
}

#[pyfunction]
fn simplify(p: &PyPresentation, max_deg: usize) -> PyResult<PyPresentation> {
    let inner = equiv::tietze_simplify(&p.inner.plain(), max_deg).map_err(err)?;
    Ok(PyPresentation { inner })
}

fn report_dict<'py>(py: Python<'py>, r: &EquivalenceReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    let rows: Vec<(usize, u128, u128)> = r.rows.iter().map(|x| (x.degree, x.first, x.second)).collect();
    let memberships: Vec<(String, String, String)> = r
        .memberships
        .iter()
        .map(|m| (m.relation.clone(), m.image.clone(), m.verdict.to_string()))
        .collect();
    d.set_item("verdict", r.verdict.to_string())?;
    d.set_item("degree_bound", r.degree_bound)?;
    d.set_item("ratio", r.ratio)?;
    d.set_item("exact", r.exact)?;
    d.set_item("rows", rows)?;
    d.set_item("memberships", memberships)?;
    Ok(d)
}

/// Compares `dims(second)[d]` with `dims(first)[ratio * d]` for `d <= max_d`.
#[pyfunction]
#[pyo3(signature = (first, second, max_d, ratio = 1))]
fn compare_hilbert<'py>(
    py: Python<'py>,
    first: &PyPresentation,
    second: &PyPresentation,
    max_d: usize,
    ratio: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let r = equiv::compare_hilbert(&first.inner, &second.inner, max_d, ratio).map_err(err)?;
    report_dict(py, &r)
}

/// Checks that `mapping` (e.g. `"a = x*y, b = y^2"`) sends every source
/// relation into the target ideal.
#[pyfunction]
fn check_map<'py>(
    py: Python<'py>,
    source: &PyPresentation,
    target: &PyPresentation,
    mapping: &str,
    max_deg: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let gm = GeneratorMap::parse(&source.inner, &target.inner, mapping).map_err(err)?;
    let r = equiv::check_generator_map(&source.inner, &target.inner, &gm, max_deg).map_err(err)?;
    report_dict(py, &r)
}

/// Presentation of the corner algebra from the stored idempotent and
/// witnesses.
#[pyfunction]
#[pyo3(signature = (p, max_deg, simplify = true, force = false))]
fn peirce<'py>(
    py: Python<'py>,
    p: &PyPresentation,
    max_deg: usize,
    simplify: bool,
    force: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let spec = IdempotentSpec::of(&p.inner).map_err(err)?;
    let (we, wf) = stored_witnesses(&p.inner).map_err(err)?;
    let out = if force {
        peirce_component_presentation_unchecked(&p.inner, spec, &we, &wf, max_deg, simplify)
    } else {
        peirce_component_presentation(&p.inner, spec, &we, &wf, max_deg, simplify)
    }
    .map_err(err)?;
    let y = &out.presentation;
    let ord = y.default_order();
    let d = PyDict::new(py);
    d.set_item("presentation", PyPresentation { inner: y.clone() })?;
    d.set_item("witnesses", out.witnesses.to_string())?;
    d.set_item("e_y", format_polynomial(&out.e_y, y.generators(), &ord))?;
    d.set_item("f_y", format_polynomial(&out.f_y, y.generators(), &ord))?;
    d.set_item("unit_check", out.unit_check.map(|v| v.to_string()))?;
    d.set_item("omega_generators", out.omega.generators().to_vec())?;
    d.set_item("warnings", out.warnings)?;
    Ok(d)
}

#[pymodule]
fn fpa_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("FpaError", m.py().get_type::<FpaError>())?;
    m.add_class::<PyPresentation>()?;
    m.add_class::<PyRewriteSystem>()?;
    m.add_function(wrap_pyfunction!(groebner, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(member, m)?)?;
    m.add_function(wrap_pyfunction!(even_part, m)?)?;
    m.add_function(wrap_pyfunction!(simplify, m)?)?;
    m.add_function(wrap_pyfunction!(compare_hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(check_map, m)?)?;
    m.add_function(wrap_pyfunction!(peirce, m)?)?;
    Ok(())
}
