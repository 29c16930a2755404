//! Python bindings: a `Model` class wrapping the finite ideal-topology
//! kernel, plus module-level functions for the literature corpus, the
//! enumerators, the theorem suite, and the model miner.
//!
//! Sets cross the boundary as lists of point labels, families as lists of
//! sets, and reports as plain dicts, so the Python side needs no wrapper
//! types beyond `Model` itself.

// the #[pymethods] expansion inserts Into::into on error paths that are
// already PyErr, tripping this lint on every fallible method
#![allow(clippy::useless_conversion)]

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use idyn_core::corpus;
use idyn_core::dynamics::{
    check_transitive, forward_union, nonwandering_set, orbit, transitive_points, Direction,
    DynamicalSystem, OrbitDensity, TransitivityKind,
};
use idyn_core::falsify::{
    enumerate_topologies, mine as mine_models, run_registry_suite, MinePredicate, ModelSpace,
    TargetStatus,
};
use idyn_core::genopen::{k_closure, k_opens, OpenKind};
use idyn_core::ideal::{classify, i_opens, local_function, psi, star_operators, star_topology};
use idyn_core::model::Model as CoreModel;
use idyn_core::topology::Subset;

fn value_err(msg: impl Into<String>) -> PyErr {
    PyValueError::new_err(msg.into())
}

/// A finite model: ground set, topology, ideal, self-map.
#[pyclass]
struct Model {
    inner: CoreModel,
}

impl Model {
    fn subset_from_labels(&self, labels: Vec<String>) -> PyResult<Subset> {
        let g = self.inner.ground();
        let mut bits = 0u32;
        for l in labels {
            let idx = g
                .index_of(&l)
                .ok_or_else(|| value_err(format!("unknown point `{l}`")))?;
            bits |= 1 << idx;
        }
        Ok(g.subset_from_bits(bits))
    }

    fn labels_of(&self, s: Subset) -> Vec<String> {
        s.iter()
            .map(|i| self.inner.ground().label(i).to_string())
            .collect()
    }

    fn family_labels(&self, fam: &idyn_core::topology::SetFamily) -> Vec<Vec<String>> {
        fam.iter().map(|s| self.labels_of(s)).collect()
    }

    fn point_index(&self, label: &str) -> PyResult<usize> {
        self.inner
            .ground()
            .index_of(label)
            .ok_or_else(|| value_err(format!("unknown point `{label}`")))
    }

    fn system(&self) -> DynamicalSystem {
        DynamicalSystem::new(self.inner.clone())
    }

    fn kind(&self, query: &str) -> PyResult<TransitivityKind> {
        TransitivityKind::parse(query)
            .ok_or_else(|| value_err(format!("unknown transitivity query `{query}`")))
    }
}

#[pymethods]
impl Model {
    /// Parse the line-oriented model format (points/opens/ideal/map lines).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Model> {
        CoreModel::parse(text)
            .map(|inner| Model { inner })
            .map_err(|e| value_err(e.to_string()))
    }

    /// Read and parse a model file.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Model> {
        let text =
            std::fs::read_to_string(path).map_err(|e| value_err(format!("{path}: {e}")))?;
        Model::parse(&text)
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.inner.name.clone()
    }

    fn points(&self) -> Vec<String> {
        self.inner.ground().labels().to_vec()
    }

    fn opens(&self) -> Vec<Vec<String>> {
        self.family_labels(self.inner.topology().opens())
    }

    fn ideal_members(&self) -> Vec<Vec<String>> {
        self.family_labels(self.inner.ideal().members())
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Model({})", self.inner.to_compact())
    }

    /// Decide a transitivity variant, e.g. `"i-transitive"` or
    /// `"semi-i-transitive"`. Returns `{"holds": bool, "witness": ...}`.
    fn check_transitive<'py>(&self, py: Python<'py>, query: &str) -> PyResult<Bound<'py, PyDict>> {
        let kind = self.kind(query)?;
        let v = check_transitive(&self.system(), kind).map_err(|e| value_err(e.to_string()))?;
        let out = PyDict::new_bound(py);
        out.set_item("holds", v.holds)?;
        match v.witness {
            Some(w) => {
                let witness = PyDict::new_bound(py);
                witness.set_item("U", self.labels_of(w.u))?;
                witness.set_item("V", self.labels_of(w.v))?;
                witness.set_item("n_range", (w.n_range.0, w.n_range.1))?;
                out.set_item("witness", witness)?;
            }
            None => out.set_item("witness", py.None())?,
        }
        Ok(out)
    }

    fn closure(&self, set: Vec<String>) -> PyResult<Vec<String>> {
        let a = self.subset_from_labels(set)?;
        Ok(self.labels_of(self.inner.topology().closure(a)))
    }

    fn interior(&self, set: Vec<String>) -> PyResult<Vec<String>> {
        let a = self.subset_from_labels(set)?;
        Ok(self.labels_of(self.inner.topology().interior(a)))
    }

    fn local_function(&self, set: Vec<String>) -> PyResult<Vec<String>> {
        let a = self.subset_from_labels(set)?;
        Ok(self.labels_of(local_function(
            self.inner.topology(),
            self.inner.ideal(),
            a,
        )))
    }

    fn psi(&self, set: Vec<String>) -> PyResult<Vec<String>> {
        let a = self.subset_from_labels(set)?;
        Ok(self.labels_of(psi(self.inner.topology(), self.inner.ideal(), a)))
    }

    /// `(Cl*(A), Int*(A))`.
    fn star_operators(&self, set: Vec<String>) -> PyResult<(Vec<String>, Vec<String>)> {
        let a = self.subset_from_labels(set)?;
        let (cl, int) = star_operators(self.inner.topology(), self.inner.ideal(), a);
        Ok((self.labels_of(cl), self.labels_of(int)))
    }

    fn star_topology(&self) -> Vec<Vec<String>> {
        let star = star_topology(self.inner.topology(), self.inner.ideal());
        self.family_labels(star.opens())
    }

    /// The kind-open family: kind is one of open/semi/pre/b/beta.
    fn k_opens(&self, kind: &str) -> PyResult<Vec<Vec<String>>> {
        let k = OpenKind::parse(kind).ok_or_else(|| value_err(format!("unknown kind `{kind}`")))?;
        Ok(self.family_labels(&k_opens(self.inner.topology(), k)))
    }

    fn k_closure(&self, kind: &str, set: Vec<String>) -> PyResult<Vec<String>> {
        let k = OpenKind::parse(kind).ok_or_else(|| value_err(format!("unknown kind `{kind}`")))?;
        let a = self.subset_from_labels(set)?;
        Ok(self.labels_of(k_closure(self.inner.topology(), k, a)))
    }

    fn i_opens(&self) -> Vec<Vec<String>> {
        self.family_labels(&i_opens(self.inner.topology(), self.inner.ideal()))
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let c = classify(self.inner.topology(), self.inner.ideal());
        let out = PyDict::new_bound(py);
        out.set_item("codense", c.codense)?;
        out.set_item("completely_codense", c.completely_codense)?;
        out.set_item("compatible", c.compatible)?;
        out.set_item("hayashi_samuel", c.hayashi_samuel)?;
        out.set_item("proper_ideal", self.inner.ideal().is_proper())?;
        Ok(out)
    }

    /// Density flags of a subset: dense, i_dense, star_dense, nowhere_dense.
    fn density<'py>(&self, py: Python<'py>, set: Vec<String>) -> PyResult<Bound<'py, PyDict>> {
        let a = self.subset_from_labels(set)?;
        let st = idyn_core::density::density_status(self.inner.topology(), self.inner.ideal(), a);
        let out = PyDict::new_bound(py);
        out.set_item("dense", st.dense)?;
        out.set_item("i_dense", st.i_dense)?;
        out.set_item("star_dense", st.star_dense)?;
        out.set_item("nowhere_dense", st.nowhere_dense)?;
        Ok(out)
    }

    /// The (plain or ideal-graded) non-wandering set for a kind.
    #[pyo3(signature = (kind = "open", ideal_graded = false))]
    fn omega(&self, kind: &str, ideal_graded: bool) -> PyResult<Vec<String>> {
        let base = OpenKind::parse(kind).ok_or_else(|| value_err(format!("unknown kind `{kind}`")))?;
        let tk = TransitivityKind { base, ideal_graded };
        let s = nonwandering_set(&self.system(), tk).map_err(|e| value_err(e.to_string()))?;
        Ok(self.labels_of(s))
    }

    /// Points whose orbit is dense / i-dense / star-dense.
    #[pyo3(signature = (graded = "dense"))]
    fn transitive_points(&self, graded: &str) -> PyResult<Vec<String>> {
        let od = OrbitDensity::parse(graded)
            .ok_or_else(|| value_err(format!("unknown grading `{graded}`")))?;
        let s = transitive_points(&self.system(), od).map_err(|e| value_err(e.to_string()))?;
        Ok(self.labels_of(s))
    }

    /// The orbit sequence of a point up to its first repetition.
    fn orbit(&self, point: &str) -> PyResult<Vec<String>> {
        let x = self.point_index(point)?;
        let (seq, _) = orbit(&self.system(), x).map_err(|e| value_err(e.to_string()))?;
        Ok(seq
            .into_iter()
            .map(|i| self.inner.ground().label(i).to_string())
            .collect())
    }

    #[pyo3(signature = (set, direction = "forward"))]
    fn forward_union(&self, set: Vec<String>, direction: &str) -> PyResult<Vec<String>> {
        let a = self.subset_from_labels(set)?;
        let dir = match direction {
            "forward" => Direction::Forward,
            "backward" => Direction::Backward,
            other => return Err(value_err(format!("unknown direction `{other}`"))),
        };
        Ok(self.labels_of(forward_union(&self.system(), a, dir)))
    }

    fn is_continuous(&self) -> bool {
        self.inner
            .topology()
            .is_continuous(self.inner.map())
            .holds
    }

    fn is_open_map(&self) -> bool {
        self.inner.topology().is_open_map(self.inner.map()).holds
    }

    /// Iterate structure of the map: `(preperiod, period)`.
    fn iterate_horizon(&self) -> (u32, u32) {
        (self.inner.map().preperiod(), self.inner.map().period())
    }
}

/// Replay the built-in literature corpus; returns one dict per claim.
#[pyfunction]
fn paper_corpus(py: Python<'_>) -> PyResult<Bound<'_, PyList>> {
    let report = corpus::run();
    let rows = PyList::empty_bound(py);
    for r in &report.rows {
        let row = PyDict::new_bound(py);
        row.set_item("entry", r.entry)?;
        row.set_item("query", &r.query)?;
        row.set_item("printed_value", r.paper_value)?;
        row.set_item("computed_value", &r.computed)?;
        row.set_item(
            "registered_discrepancy",
            r.provenance == corpus::Provenance::RegisteredDiscrepancy,
        )?;
        row.set_item("matched", r.matched())?;
        rows.append(row)?;
    }
    Ok(rows)
}

/// Number of topologies on a labeled ground set of `n` points (n <= 5).
#[pyfunction]
fn count_topologies(n: usize) -> PyResult<usize> {
    enumerate_topologies(n)
        .map(|v| v.len())
        .map_err(|e| value_err(e.to_string()))
}

/// Run the theorem suite over every model on up to `size` points.
#[pyfunction]
#[pyo3(signature = (size = 3, include_suspect = false))]
fn run_suite(py: Python<'_>, size: usize, include_suspect: bool) -> PyResult<Bound<'_, PyDict>> {
    let report = run_registry_suite(ModelSpace::up_to(size), include_suspect)
        .map_err(|e| value_err(e.to_string()))?;
    let out = PyDict::new_bound(py);
    out.set_item("instances", report.instances)?;
    out.set_item("sound_violations", report.sound_violations())?;
    out.set_item("canonical_text", report.canonical_text())?;
    let outcomes = PyList::empty_bound(py);
    for o in &report.outcomes {
        let row = PyDict::new_bound(py);
        row.set_item("id", o.id)?;
        row.set_item(
            "status",
            match o.status {
                TargetStatus::Sound => "sound",
                TargetStatus::Suspect => "suspect",
            },
        )?;
        row.set_item("applicable", o.applicable)?;
        row.set_item("violations", o.violations)?;
        row.set_item(
            "first_witness",
            o.first_witness.as_ref().map(|w| (w.model.clone(), w.witness.clone())),
        )?;
        outcomes.append(row)?;
    }
    out.set_item("outcomes", outcomes)?;
    Ok(out)
}

/// Search the model space for a conjunction of flags such as
/// `"transitive & !i_transitive"`. Returns the model files of the witnesses.
#[pyfunction]
#[pyo3(signature = (size, predicate, limit = None))]
fn mine(size: usize, predicate: &str, limit: Option<usize>) -> PyResult<Vec<String>> {
    let pred = MinePredicate::parse(predicate).map_err(|e| value_err(e.to_string()))?;
    let space = ModelSpace { max_points: size, continuous_only: false, proper_ideals_only: true };
    let found = mine_models(space, &pred, limit).map_err(|e| value_err(e.to_string()))?;
    Ok(found.into_iter().map(|m| m.to_text()).collect())
}

#[pymodule]
fn idyn(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Model>()?;
    m.add_function(wrap_pyfunction!(paper_corpus, m)?)?;
    m.add_function(wrap_pyfunction!(count_topologies, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(mine, m)?)?;
    Ok(())
}
