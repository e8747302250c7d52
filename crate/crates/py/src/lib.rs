//! Python bindings.
//!
//! Exposes instances, the ideal predicates, and the claim suite to Python.
//! Scalar results come back as native types; structured reports come back
//! as JSON strings with stable key order, ready for `json.loads`.
//!
//! ```python
//! import proxring_py as px
//! inst = px.fixture("F-Z4p")
//! report = json.loads(inst.classify_json("W0"))
//! ```

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use proxring::format::{parse_instance as parse_doc, serialize_instance, ParsedInstance};
use proxring::harness::{
    all_fixtures, generate_with, run_theorem_suite, Family, GenParams, SuiteRunner, TheoremFinding,
    ALL_THEOREMS,
};
use proxring::{PointSet, MAX_POINTS};

fn to_py_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_string<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string_pretty(value).map_err(to_py_err)
}

/// A parsed instance: space, tables, carrier, and named ideals.
#[pyclass]
struct Instance {
    parsed: ParsedInstance,
}

impl Instance {
    fn point_set(&self, members: Vec<usize>) -> PyResult<PointSet> {
        let n = self.parsed.instance.n_points();
        for &i in &members {
            if i >= n {
                return Err(PyValueError::new_err(format!(
                    "point index {i} out of range for {n} points"
                )));
            }
        }
        Ok(PointSet::from_indices(members))
    }

    /// Resolves either a named ideal or an explicit index list.
    fn resolve(&self, ideal: &Bound<'_, PyAny>) -> PyResult<PointSet> {
        if let Ok(name) = ideal.extract::<String>() {
            return self
                .parsed
                .ideals
                .get(&name)
                .copied()
                .ok_or_else(|| PyKeyError::new_err(format!("no ideal named `{name}`")));
        }
        self.point_set(ideal.extract::<Vec<usize>>()?)
    }
}

#[pymethods]
impl Instance {
    #[getter]
    fn n_points(&self) -> usize {
        self.parsed.instance.n_points()
    }

    #[getter]
    fn point_names(&self) -> Vec<String> {
        self.parsed.point_names.clone()
    }

    #[getter]
    fn carrier(&self) -> Vec<usize> {
        self.parsed.instance.carrier().to_vec()
    }

    #[getter]
    fn ideal_names(&self) -> Vec<String> {
        self.parsed.ideals.keys().cloned().collect()
    }

    fn fingerprint(&self) -> String {
        self.parsed.instance.fingerprint()
    }

    fn add(&self, a: usize, b: usize) -> PyResult<usize> {
        if a.max(b) >= self.n_points() {
            return Err(PyValueError::new_err("point index out of range"));
        }
        Ok(self.parsed.instance.add(a, b))
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        if a.max(b) >= self.n_points() {
            return Err(PyValueError::new_err("point index out of range"));
        }
        Ok(self.parsed.instance.mul(a, b))
    }

    /// Points sharing a feature with the given set.
    fn upper_approx(&self, members: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(self
            .parsed
            .instance
            .space()
            .upper_approx(self.point_set(members)?)
            .to_vec())
    }

    fn descriptive_intersection(&self, a: Vec<usize>, b: Vec<usize>) -> PyResult<Vec<usize>> {
        let a = self.point_set(a)?;
        let b = self.point_set(b)?;
        Ok(self
            .parsed
            .instance
            .space()
            .descriptive_intersection(a, b)
            .map_err(to_py_err)?
            .to_vec())
    }

    fn near(&self, a: Vec<usize>, b: Vec<usize>) -> PyResult<bool> {
        let a = self.point_set(a)?;
        let b = self.point_set(b)?;
        self.parsed.instance.space().near(a, b).map_err(to_py_err)
    }

    /// Structure flags and identities as JSON.
    fn check_structure_json(&self) -> PyResult<String> {
        json_string(self.parsed.instance.flags())
    }

    fn is_ring(&self) -> bool {
        self.parsed.instance.flags().ring
    }

    fn is_approx_ideal(&self, ideal: &Bound<'_, PyAny>) -> PyResult<bool> {
        let w = self.resolve(ideal)?;
        Ok(proxring::is_approx_ideal(&self.parsed.instance, w)
            .map_err(to_py_err)?
            .holds)
    }

    fn is_prime(&self, ideal: &Bound<'_, PyAny>) -> PyResult<bool> {
        let w = self.resolve(ideal)?;
        Ok(proxring::is_prime(&self.parsed.instance, w)
            .map_err(to_py_err)?
            .holds)
    }

    fn is_primary(&self, ideal: &Bound<'_, PyAny>) -> PyResult<bool> {
        let w = self.resolve(ideal)?;
        Ok(proxring::is_primary(&self.parsed.instance, w)
            .map_err(to_py_err)?
            .holds)
    }

    fn is_one_absorbing_primary(&self, ideal: &Bound<'_, PyAny>) -> PyResult<bool> {
        let w = self.resolve(ideal)?;
        Ok(proxring::is_one_absorbing_primary(&self.parsed.instance, w)
            .map_err(to_py_err)?
            .holds)
    }

    fn radical(&self, ideal: &Bound<'_, PyAny>) -> PyResult<Vec<usize>> {
        let w = self.resolve(ideal)?;
        Ok(proxring::radical(&self.parsed.instance, w)
            .map_err(to_py_err)?
            .to_vec())
    }

    fn colon(&self, ideal: &Bound<'_, PyAny>, element: usize) -> PyResult<Vec<usize>> {
        let w = self.resolve(ideal)?;
        Ok(proxring::colon(&self.parsed.instance, w, element)
            .map_err(to_py_err)?
            .to_vec())
    }

    /// Full classification report as JSON.
    fn classify_json(&self, ideal: &Bound<'_, PyAny>) -> PyResult<String> {
        let w = self.resolve(ideal)?;
        json_string(&proxring::classify_ideal(&self.parsed.instance, w).map_err(to_py_err)?)
    }

    /// Every subset of the carrier satisfying the ideal axioms.
    fn enumerate_ideals(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(proxring::enumerate_ideals(&self.parsed.instance)
            .map_err(to_py_err)?
            .into_iter()
            .map(|s| s.to_vec())
            .collect())
    }

    /// Quotient structure as JSON; `strict` switches the zero-coset test
    /// from the upper approximation to the ideal itself.
    #[pyo3(signature = (ideal, strict = false))]
    fn quotient_json(&self, ideal: &Bound<'_, PyAny>, strict: bool) -> PyResult<String> {
        let w = self.resolve(ideal)?;
        let mode = if strict {
            proxring::ZeroTestMode::Strict
        } else {
            proxring::ZeroTestMode::Descriptive
        };
        json_string(&proxring::quotient(&self.parsed.instance, w, mode).map_err(to_py_err)?)
    }

    /// Canonical instance-file rendering of this instance.
    fn serialize(&self) -> String {
        serialize_instance(&self.parsed)
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(points={}, carrier={:?}, fingerprint='{}')",
            self.n_points(),
            self.parsed.instance.carrier().to_vec(),
            self.fingerprint()
        )
    }
}

/// Parses an instance-file document.
#[pyfunction]
#[pyo3(signature = (text, max_points = MAX_POINTS))]
fn parse_instance(text: &str, max_points: usize) -> PyResult<Instance> {
    Ok(Instance {
        parsed: parse_doc(text, max_points).map_err(to_py_err)?,
    })
}

/// Builds a built-in fixture by name.
#[pyfunction]
fn fixture(name: &str) -> PyResult<Instance> {
    Ok(Instance {
        parsed: proxring::harness::fixture(name).map_err(to_py_err)?,
    })
}

#[pyfunction]
fn fixture_names() -> Vec<String> {
    proxring::harness::FIXTURE_NAMES
        .iter()
        .map(|s| s.to_string())
        .collect()
}

/// Builds the pointwise product of two instances.
#[pyfunction]
fn product(left: &Instance, right: &Instance) -> PyResult<Instance> {
    let inst =
        proxring::product_instance(&left.parsed.instance, &right.parsed.instance, MAX_POINTS)
            .map_err(to_py_err)?;
    let point_names = (0..inst.n_points()).map(|i| format!("p{i}")).collect();
    Ok(Instance {
        parsed: ParsedInstance {
            instance: inst,
            point_names,
            ideals: Default::default(),
        },
    })
}

/// Runs the claim suite over the fixtures plus a generated family and
/// returns the findings as JSON.
#[pyfunction]
#[pyo3(signature = (family = "modular", n_points = 8, samples = 100, seed = 0))]
fn run_suite_json(family: &str, n_points: usize, samples: usize, seed: u64) -> PyResult<String> {
    let family: Family = family.parse().map_err(to_py_err)?;
    let params = GenParams {
        family,
        n_min: if family == Family::Exhaustive { 1 } else { 2 },
        n_max: n_points,
        alphabet: 3,
        samples,
        seed,
    };
    let mut runner = SuiteRunner::new(&ALL_THEOREMS);
    let mut findings: Vec<TheoremFinding> = Vec::new();
    let mut sink = |f: TheoremFinding| findings.push(f);
    for (_, parsed) in all_fixtures() {
        runner.push(&parsed.instance, &mut sink);
    }
    generate_with(&params, |inst| runner.push(&inst, &mut sink)).map_err(to_py_err)?;
    findings.sort_by(|a, b| (&a.fingerprint, a.theorem).cmp(&(&b.fingerprint, b.theorem)));
    json_string(&findings)
}

/// Runs the claim suite over explicit instances and returns findings JSON.
#[pyfunction]
fn run_suite_on_json(instances: Vec<PyRef<'_, Instance>>) -> PyResult<String> {
    let insts: Vec<proxring::AlgebraInstance> = instances
        .iter()
        .map(|i| i.parsed.instance.clone())
        .collect();
    json_string(&run_theorem_suite(&insts, &ALL_THEOREMS))
}

#[pymodule]
fn proxring_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("MAX_POINTS", MAX_POINTS)?;
    m.add_class::<Instance>()?;
    m.add_function(wrap_pyfunction!(parse_instance, m)?)?;
    m.add_function(wrap_pyfunction!(fixture, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    m.add_function(wrap_pyfunction!(product, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite_json, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite_on_json, m)?)?;
    Ok(())
}
