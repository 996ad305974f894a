//! Python bindings. Sheet labels are 1-based on this side, as in the JSON
//! reports; subset ranks stay 0-based.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use prym_core::correspondence::{
    build_grid_matrix, build_subset_matrix, identity_report, FiberCorrespondence,
};
use prym_core::covering::{required_ramification, riemann_hurwitz_genus as rh_genus};
use prym_core::output::{canonical_json, report_table};
use prym_core::perm::{self, colex_rank as rank, colex_unrank as unrank};
use prym_core::{assemble, ModelChoice, PrymReport, Scenario};

create_exception!(prym, PrymError, PyValueError, "Validation or schema error from the core library.");

fn err(e: prym_core::Error) -> PyErr {
    PrymError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, value: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match value {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => return Err(PrymError::new_err(format!("non-integral number {n} in report"))),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                dict.set_item(k, to_py(py, v)?)?;
            }
            dict.into_any()
        }
    })
}

fn zero_based(labels: &[usize]) -> PyResult<Vec<usize>> {
    labels
        .iter()
        .map(|&x| x.checked_sub(1).ok_or_else(|| PrymError::new_err("labels are 1-based")))
        .collect()
}

fn one_based(labels: Vec<usize>) -> Vec<usize> {
    labels.into_iter().map(|x| x + 1).collect()
}

/// Permutation of `{1, .., n}` given by its list of images.
#[pyclass(module = "prym", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
pub struct Permutation(perm::Permutation);

#[pymethods]
impl Permutation {
    #[new]
    fn new(images: Vec<usize>) -> PyResult<Self> {
        perm::Permutation::from_one_based(&images).map(Self).map_err(err)
    }

    #[staticmethod]
    fn identity(degree: usize) -> Self {
        Self(perm::Permutation::identity(degree))
    }

    #[staticmethod]
    #[pyo3(signature = (degree, cycles))]
    fn from_cycles(degree: usize, cycles: Vec<Vec<usize>>) -> PyResult<Self> {
        perm::Permutation::from_cycles(degree, &cycles).map(Self).map_err(err)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn images(&self) -> Vec<usize> {
        self.0.one_based()
    }

    fn __call__(&self, x: usize) -> PyResult<usize> {
        if x == 0 || x > self.0.degree() {
            return Err(PrymError::new_err(format!("{x} is not in 1..={}", self.0.degree())));
        }
        Ok(self.0.apply(x - 1) + 1)
    }

    fn cycles(&self) -> Vec<Vec<usize>> {
        self.0.cycles().into_iter().map(one_based).collect()
    }

    fn cycle_type(&self) -> Vec<usize> {
        self.0.cycle_type().parts().to_vec()
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    /// `self * other` applies `other` first.
    fn __mul__(&self, other: &Permutation) -> PyResult<Self> {
        perm::compose(&self.0, &other.0).map(Self).map_err(err)
    }

    /// Action on `k`-subsets, indexed by colex rank (1-based).
    fn induced(&self, k: usize) -> PyResult<Self> {
        perm::induced_subset_action(&self.0, k).map(Self).map_err(err)
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.images().hash(&mut h);
        h.finish()
    }

    fn __repr__(&self) -> String {
        format!("Permutation({:?})", self.0.one_based())
    }
}

#[pyfunction]
fn compose(a: &Permutation, b: &Permutation) -> PyResult<Permutation> {
    a.__mul__(b)
}

#[pyfunction]
fn cycle_type(p: &Permutation) -> Vec<usize> {
    p.cycle_type()
}

#[pyfunction]
fn induced_subset_action(p: &Permutation, k: usize) -> PyResult<Permutation> {
    p.induced(k)
}

/// Orbits of the group generated by `generators` on `{1, .., degree}`.
#[pyfunction]
fn orbits(degree: usize, generators: Vec<Py<Permutation>>) -> PyResult<Vec<Vec<usize>>> {
    let gens: Vec<perm::Permutation> = generators.iter().map(|g| g.get().0.clone()).collect();
    let orbs = perm::orbits(degree, &gens).map_err(err)?;
    Ok(orbs.into_iter().map(one_based).collect())
}

#[pyfunction]
fn colex_rank(subset: Vec<usize>) -> PyResult<u64> {
    let mut s = zero_based(&subset)?;
    s.sort_unstable();
    s.dedup();
    if s.len() != subset.len() {
        return Err(PrymError::new_err("subset has repeated labels"));
    }
    Ok(rank(&s))
}

#[pyfunction]
fn colex_unrank(k: usize, rank: u64) -> Vec<usize> {
    one_based(unrank(k, rank))
}

#[pyfunction]
fn riemann_hurwitz_genus(degree: u64, base_genus: u64, w: u64) -> PyResult<u64> {
    rh_genus(degree, base_genus, w).map_err(err)
}

#[pyfunction]
fn ramification_needed(degree: u64, base_genus: u64, genus: u64) -> PyResult<u64> {
    required_ramification(degree, base_genus, genus).map_err(err)
}

/// A symmetric correspondence restricted to a generic fiber.
#[pyclass(module = "prym", frozen, skip_from_py_object)]
pub struct Correspondence(FiberCorrespondence);

#[pymethods]
impl Correspondence {
    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    #[getter]
    fn bidegree(&self) -> usize {
        self.0.bidegree
    }

    fn matrix(&self) -> Vec<Vec<i64>> {
        self.0.matrix.rows()
    }

    fn point_names(&self) -> Vec<String> {
        (0..self.0.size()).map(|i| self.0.kind.point_name(i)).collect()
    }

    /// Discovered `D² = aI + bD + cU` with its exponent, as a dict.
    fn identity<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let report = identity_report(&self.0).map_err(err)?;
        to_py(py, &serde_json::to_value(&report).expect("identity serializes"))
    }

    fn __repr__(&self) -> String {
        format!("Correspondence({:?}, size={}, bidegree={})", self.0.kind, self.0.size(), self.0.bidegree)
    }
}

#[pyfunction]
fn subset_correspondence(n: usize) -> PyResult<Correspondence> {
    build_subset_matrix(n).map(Correspondence).map_err(err)
}

#[pyfunction]
fn grid_correspondence(m: usize) -> PyResult<Correspondence> {
    build_grid_matrix(m).map(Correspondence).map_err(err)
}

#[pyclass(module = "prym", frozen, skip_from_py_object)]
pub struct Report(PrymReport);

#[pymethods]
impl Report {
    #[getter]
    fn verified(&self) -> bool {
        self.0.verified()
    }

    #[getter]
    fn q(&self) -> Option<u64> {
        self.0.q
    }

    /// Genus of the curve under the verdict model.
    #[getter]
    fn genus(&self) -> u64 {
        self.0.primary().genus
    }

    /// `dim P` as `"p"` or `"p/q"`, `None` if it could not be computed.
    #[getter]
    fn dim_p(&self) -> Option<String> {
        self.0.primary().dim_p.as_ref().map(ToString::to_string)
    }

    fn to_json(&self) -> String {
        canonical_json(&self.0).expect("report serializes")
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &serde_json::to_value(&self.0).expect("report serializes"))
    }

    fn table(&self) -> String {
        report_table(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Report({}, verified={})", self.0.scenario.label(), self.0.verified())
    }
}

fn with_model(scenario: Scenario, model: Option<&str>) -> PyResult<Scenario> {
    match model {
        None => Ok(scenario),
        Some(m) => {
            let choice: ModelChoice = m.parse().map_err(err)?;
            Ok(scenario.with_model(choice))
        }
    }
}

#[pyfunction]
#[pyo3(signature = (n, gx, model = None))]
fn pn_case(n: usize, gx: u64, model: Option<&str>) -> PyResult<Report> {
    let scenario = with_model(Scenario::pn_case(n, gx).map_err(err)?, model)?;
    assemble(&scenario).map(Report).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (g, model = None))]
fn hyperelliptic(g: u64, model: Option<&str>) -> PyResult<Report> {
    let scenario = with_model(Scenario::hyperelliptic(g), model)?;
    assemble(&scenario).map(Report).map_err(err)
}

/// Assembles a report from scenario JSON text.
#[pyfunction]
fn run_scenario(text: &str) -> PyResult<Report> {
    let scenario = Scenario::from_json(text).map_err(err)?;
    assemble(&scenario).map(Report).map_err(err)
}

#[pymodule]
pub fn prym(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("PrymError", m.py().get_type::<PrymError>())?;
    m.add_class::<Permutation>()?;
    m.add_class::<Correspondence>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(compose, m)?)?;
    m.add_function(wrap_pyfunction!(cycle_type, m)?)?;
    m.add_function(wrap_pyfunction!(induced_subset_action, m)?)?;
    m.add_function(wrap_pyfunction!(orbits, m)?)?;
    m.add_function(wrap_pyfunction!(colex_rank, m)?)?;
    m.add_function(wrap_pyfunction!(colex_unrank, m)?)?;
    m.add_function(wrap_pyfunction!(riemann_hurwitz_genus, m)?)?;
    m.add_function(wrap_pyfunction!(ramification_needed, m)?)?;
    m.add_function(wrap_pyfunction!(subset_correspondence, m)?)?;
    m.add_function(wrap_pyfunction!(grid_correspondence, m)?)?;
    m.add_function(wrap_pyfunction!(pn_case, m)?)?;
    m.add_function(wrap_pyfunction!(hyperelliptic, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    Ok(())
}
