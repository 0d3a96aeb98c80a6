//! Python bindings. Variance matrices cross the boundary as nested 4×4 lists.

use std::path::PathBuf;

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use squeezed_bath as core;
use squeezed_bath::{
    ChannelScenario, ChannelTime, EnvironmentModeSpec, Lifetime, TableFormat, TwoModeSqueezedSpec,
    VarianceMatrix,
};

type Rows = [[f64; 4]; 4];

fn to_py(err: core::Error) -> PyErr {
    match err {
        core::Error::Io { .. } => PyIOError::new_err(err.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn matrix(rows: Rows) -> PyResult<VarianceMatrix> {
    VarianceMatrix::from_rows(rows).map_err(to_py)
}

fn table_format(name: &str) -> PyResult<TableFormat> {
    name.parse().map_err(PyValueError::new_err)
}

#[pyclass(frozen, skip_from_py_object, module = "squeezed_bath")]
#[derive(Clone, Copy)]
struct Verdict {
    #[pyo3(get)]
    delta: f64,
    #[pyo3(get)]
    separable: bool,
    #[pyo3(get)]
    oracle_nu: f64,
}

#[pymethods]
impl Verdict {
    fn __repr__(&self) -> String {
        format!(
            "Verdict(delta={}, separable={}, oracle_nu={})",
            self.delta,
            if self.separable { "True" } else { "False" },
            self.oracle_nu
        )
    }
}

/// Two-mode squeezed state with a squeezed thermal reservoir on each mode.
#[pyclass(frozen, module = "squeezed_bath")]
struct Scenario {
    inner: ChannelScenario,
}

#[pymethods]
impl Scenario {
    #[new]
    #[pyo3(signature = (sc, nbar, se1=0.0, se2=0.0, phi1=0.0, phi2=0.0))]
    fn new(sc: f64, nbar: f64, se1: f64, se2: f64, phi1: f64, phi2: f64) -> PyResult<Self> {
        let inner = ChannelScenario::new(
            TwoModeSqueezedSpec::new(sc).map_err(to_py)?,
            EnvironmentModeSpec::new(nbar, se1, phi1).map_err(to_py)?,
            EnvironmentModeSpec::new(nbar, se2, phi2).map_err(to_py)?,
        );
        Ok(Self { inner })
    }

    fn evolve(&self, r: f64) -> PyResult<Rows> {
        let t = ChannelTime::new(r).map_err(to_py)?;
        Ok(core::evolve(&self.inner, t).to_rows())
    }

    fn delta(&self, r: f64) -> PyResult<f64> {
        Ok(self.verdict(r)?.delta)
    }

    fn verdict(&self, r: f64) -> PyResult<Verdict> {
        let t = ChannelTime::new(r).map_err(to_py)?;
        let v = core::verdict(&core::evolve(&self.inner, t)).map_err(to_py)?;
        Ok(Verdict {
            delta: v.delta,
            separable: v.separable,
            oracle_nu: v.oracle_nu,
        })
    }

    /// Normalised separation time, or None when there is no finite crossing.
    fn lifetime(&self) -> PyResult<Option<f64>> {
        Ok(core::separation_time(&self.inner).map_err(to_py)?.r())
    }

    /// "separates", "never-separable" or "initially-separable".
    fn lifetime_status(&self) -> PyResult<&'static str> {
        Ok(match core::separation_time(&self.inner).map_err(to_py)? {
            Lifetime::Separates(_) => "separates",
            Lifetime::NeverSeparable => "never-separable",
            Lifetime::InitiallySeparable => "initially-separable",
        })
    }

    /// Rows of `(r, delta, separable, oracle_nu)` on a uniform grid.
    #[pyo3(signature = (points=401))]
    fn sweep(&self, points: usize) -> PyResult<Vec<(f64, f64, bool, f64)>> {
        let grid = core::uniform_grid(points).map_err(to_py)?;
        let res = core::SweepResult::compute(&self.inner, &grid).map_err(to_py)?;
        Ok(res
            .rows
            .iter()
            .map(|row| (row.r, row.delta, row.separable, row.oracle_nu))
            .collect())
    }

    #[pyo3(signature = (path, points=401, format="csv"))]
    fn write_sweep(&self, path: PathBuf, points: usize, format: &str) -> PyResult<usize> {
        let request = core::SweepRequest {
            scenario: self.inner,
            grid: core::uniform_grid(points).map_err(to_py)?,
            output_path: path,
            format: table_format(format)?,
        };
        Ok(core::run_sweep(&request).map_err(to_py)?.rows.len())
    }
}

#[pyfunction]
fn tmss_variance(sc: f64) -> PyResult<Rows> {
    let spec = TwoModeSqueezedSpec::new(sc).map_err(to_py)?;
    Ok(core::tmss_variance(&spec).to_rows())
}

/// `[[a-, b], [b, a+]]` of a squeezed thermal reservoir mode.
#[pyfunction]
#[pyo3(signature = (nbar, se, phi=0.0))]
fn squeezed_thermal_variance(nbar: f64, se: f64, phi: f64) -> PyResult<[[f64; 2]; 2]> {
    let env = EnvironmentModeSpec::new(nbar, se, phi).map_err(to_py)?;
    let r = core::squeezed_thermal_variance(&env);
    Ok([[r.a_minus(), r.b()], [r.b(), r.a_plus()]])
}

#[pyfunction]
#[pyo3(signature = (nbar, se, phi=0.0))]
fn mean_excitation(nbar: f64, se: f64, phi: f64) -> PyResult<f64> {
    let env = EnvironmentModeSpec::new(nbar, se, phi).map_err(to_py)?;
    Ok(core::mean_excitation(&env))
}

#[pyfunction]
fn eval_characteristic(v: Rows, z: [f64; 4]) -> PyResult<f64> {
    Ok(core::eval_characteristic(&matrix(v)?, z))
}

#[pyfunction]
fn is_physical(v: Rows) -> PyResult<bool> {
    Ok(core::is_physical(&matrix(v)?))
}

#[pyfunction]
fn simon_delta(v: Rows) -> PyResult<f64> {
    core::simon_delta(&matrix(v)?).map_err(to_py)
}

#[pyfunction]
fn ppt_oracle(v: Rows) -> PyResult<f64> {
    core::ppt_oracle(&matrix(v)?).map_err(to_py)
}

#[pyfunction]
fn normalized_time(gamma: f64, tau: f64) -> PyResult<f64> {
    Ok(core::normalized_time(gamma, tau).map_err(to_py)?.r())
}

#[pyfunction]
fn block_delta(n1: f64, n2: f64, m1: f64, m2: f64, c1: f64, c2: f64) -> PyResult<f64> {
    core::block_delta(n1, n2, m1, m2, c1, c2).map_err(to_py)
}

#[pyfunction]
fn lemma1_separable(n1: f64, n2: f64, c1: f64, c2: f64) -> PyResult<bool> {
    core::lemma1_separable(n1, n2, c1, c2).map_err(to_py)
}

/// `(n, c, c_prime, c_mean, c_diff)`
#[pyfunction]
fn reduce_to_symmetric(n1: f64, n2: f64, c1: f64, c2: f64) -> PyResult<(f64, f64, f64, f64, f64)> {
    let f = core::reduce_to_symmetric(n1, n2, c1, c2).map_err(to_py)?;
    Ok((f.n, f.c, f.c_prime, f.c_mean(), f.c_diff()))
}

#[pyfunction]
fn e_factor(r2: f64, mu: f64, n_tilde: f64) -> f64 {
    core::e_factor(r2, mu, n_tilde)
}

/// `(gap, E)` for a squeezed reservoir on mode a and a thermal one on mode b.
#[pyfunction]
fn monotonicity_gap(sc: f64, nbar: f64, se1: f64, r: f64) -> PyResult<(f64, f64)> {
    let spec = TwoModeSqueezedSpec::new(sc).map_err(to_py)?;
    let env_a = EnvironmentModeSpec::new(nbar, se1, 0.0).map_err(to_py)?;
    let env_b = EnvironmentModeSpec::thermal(nbar).map_err(to_py)?;
    let t = ChannelTime::new(r).map_err(to_py)?;
    let g = core::monotonicity_gap(&spec, &env_a, &env_b, t).map_err(to_py)?;
    Ok((g.gap, g.e))
}

/// Rows of `(r, delta_thermal, delta_squeezed)`.
#[pyfunction]
#[pyo3(signature = (points=401))]
fn figure1(points: usize) -> PyResult<Vec<(f64, f64, f64)>> {
    let table = core::Figure1Table::compute(points).map_err(to_py)?;
    Ok(table
        .rows
        .iter()
        .map(|row| (row.r, row.delta_thermal, row.delta_squeezed))
        .collect())
}

#[pyfunction]
#[pyo3(signature = (path, points=401, format="csv"))]
fn write_figure1(path: PathBuf, points: usize, format: &str) -> PyResult<usize> {
    let table = core::Figure1Table::compute(points).map_err(to_py)?;
    table.write(&path, table_format(format)?).map_err(to_py)?;
    Ok(table.rows.len())
}

#[pymodule]
#[pyo3(name = "squeezed_bath")]
fn squeezed_bath_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Scenario>()?;
    m.add_class::<Verdict>()?;
    m.add_function(wrap_pyfunction!(tmss_variance, m)?)?;
    m.add_function(wrap_pyfunction!(squeezed_thermal_variance, m)?)?;
    m.add_function(wrap_pyfunction!(mean_excitation, m)?)?;
    m.add_function(wrap_pyfunction!(eval_characteristic, m)?)?;
    m.add_function(wrap_pyfunction!(is_physical, m)?)?;
    m.add_function(wrap_pyfunction!(simon_delta, m)?)?;
    m.add_function(wrap_pyfunction!(ppt_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(normalized_time, m)?)?;
    m.add_function(wrap_pyfunction!(block_delta, m)?)?;
    m.add_function(wrap_pyfunction!(lemma1_separable, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_to_symmetric, m)?)?;
    m.add_function(wrap_pyfunction!(e_factor, m)?)?;
    m.add_function(wrap_pyfunction!(monotonicity_gap, m)?)?;
    m.add_function(wrap_pyfunction!(figure1, m)?)?;
    m.add_function(wrap_pyfunction!(write_figure1, m)?)?;
    Ok(())
}
