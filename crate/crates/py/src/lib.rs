//! Python bindings for `josephus-nim-core`.
//!
//! Positions are passed as two integers `x, y`; moves as `(pile, count)`
//! tuples where `pile` is `"p1"` or `"p2"`. Domain and rule errors raise
//! `ValueError`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use josephus_nim_core::cli::{run_suite, Suite};
use josephus_nim_core::engine::{self, GrundySource};
use josephus_nim_core::{classes, josephus, verify, Family, GameError, MoveAction, Pile, Position};

fn value_error(e: GameError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_pile(pile: &str) -> PyResult<Pile> {
    match pile {
        "p1" => Ok(Pile::PileOne),
        "p2" => Ok(Pile::PileTwo),
        other => Err(PyValueError::new_err(format!(
            "unknown pile '{other}', expected 'p1' or 'p2'"
        ))),
    }
}

fn move_tuple(m: MoveAction) -> (&'static str, u64) {
    (m.pile.label(), m.count)
}

fn query(s: u64, v: u64) -> PyResult<josephus::FsQuery> {
    josephus::FsQuery::new(s, v).map_err(value_error)
}

fn to_python<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyfunction]
fn total_weight(x: u64, y: u64) -> i128 {
    Position::new(x, y).total_weight()
}

#[pyfunction]
fn removal_bound(x: u64, y: u64) -> i128 {
    Position::new(x, y).removal_bound()
}

#[pyfunction]
fn legal_moves(x: u64, y: u64) -> Vec<(&'static str, u64)> {
    Position::new(x, y)
        .legal_moves()
        .into_iter()
        .map(move_tuple)
        .collect()
}

#[pyfunction]
fn apply_move(x: u64, y: u64, pile: &str, count: u64) -> PyResult<(u64, u64)> {
    let next = Position::new(x, y)
        .apply_move(MoveAction::new(parse_pile(pile)?, count))
        .map_err(value_error)?;
    Ok((next.x, next.y))
}

#[pyfunction]
fn is_terminal(x: u64, y: u64) -> bool {
    Position::new(x, y).is_terminal()
}

#[pyfunction]
fn mex(values: Vec<u32>) -> u32 {
    engine::mex(values)
}

/// Brute-force Grundy value.
#[pyfunction]
fn grundy(x: u64, y: u64) -> u32 {
    engine::grundy(Position::new(x, y))
}

#[pyfunction]
fn is_p_position(x: u64, y: u64) -> bool {
    engine::is_p_position(Position::new(x, y))
}

#[pyfunction]
fn winning_moves(x: u64, y: u64) -> Vec<(&'static str, u64)> {
    let mut memo = engine::GrundyMemo::new();
    engine::winning_moves(&mut memo, Position::new(x, y))
        .into_iter()
        .map(move_tuple)
        .collect()
}

#[pyfunction]
fn best_move(x: u64, y: u64) -> PyResult<(&'static str, u64)> {
    let mut memo = engine::GrundyMemo::new();
    engine::best_move(&mut memo, Position::new(x, y))
        .map(move_tuple)
        .map_err(value_error)
}

/// Closed-form Grundy value.
#[pyfunction]
fn grundy_closed(x: u64, y: u64) -> u64 {
    classes::grundy_closed(Position::new(x, y))
}

#[pyfunction]
fn odd_part(d: u64) -> PyResult<(u64, u32)> {
    classes::odd_part(d).map_err(value_error)
}

/// The family holding a position.
#[pyclass(frozen, eq, skip_from_py_object, module = "josephus_nim")]
#[derive(Clone, PartialEq, Eq)]
struct GrundyClass {
    inner: classes::GrundyClass,
}

#[pymethods]
impl GrundyClass {
    #[new]
    fn new(s: u64, family: &str, param1: u64, param2: u64) -> PyResult<Self> {
        let family = match family {
            "N" => Family::N {
                n: u32::try_from(param1).map_err(|_| PyValueError::new_err("n too large"))?,
                m: param2,
            },
            "A" => Family::A {
                k: param1,
                j: param2,
            },
            "B" => Family::B {
                k: param1,
                j: param2,
            },
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown family '{other}', expected 'N', 'A' or 'B'"
                )))
            }
        };
        let inner = classes::GrundyClass::new(s, family).map_err(value_error)?;
        Ok(GrundyClass { inner })
    }

    #[getter]
    fn s(&self) -> u64 {
        self.inner.s()
    }

    #[getter]
    fn family(&self) -> &'static str {
        self.inner.family().letter()
    }

    /// `(n, m)` for family N, `(k, j)` for A and B.
    #[getter]
    fn params(&self) -> (u64, u64) {
        self.inner.family().params()
    }

    fn position(&self) -> PyResult<(u64, u64)> {
        let p = self.inner.position().map_err(value_error)?;
        Ok((p.x, p.y))
    }

    fn __repr__(&self) -> String {
        format!("GrundyClass({})", self.inner)
    }
}

#[pyfunction]
fn classify(x: u64, y: u64) -> GrundyClass {
    GrundyClass {
        inner: classes::classify(Position::new(x, y)),
    }
}

#[pyfunction]
fn enumerate_class(s: u64, x_max: u64, y_max: u64) -> Vec<(u64, u64)> {
    classes::enumerate_class(s, x_max, y_max)
        .into_iter()
        .map(|p| (p.x, p.y))
        .collect()
}

/// Dense brute-force Grundy table.
#[pyclass(module = "josephus_nim")]
struct GrundyTable {
    inner: engine::GrundyTable,
}

#[pymethods]
impl GrundyTable {
    #[new]
    fn new(x_max: u64, y_max: u64) -> Self {
        GrundyTable {
            inner: engine::GrundyTable::build(x_max, y_max),
        }
    }

    #[getter]
    fn x_max(&self) -> u64 {
        self.inner.x_max()
    }

    #[getter]
    fn y_max(&self) -> u64 {
        self.inner.y_max()
    }

    fn get(&mut self, x: u64, y: u64) -> PyResult<u32> {
        let p = Position::new(x, y);
        if !self.inner.contains(p) {
            return Err(PyValueError::new_err(format!("{p} is outside the table")));
        }
        Ok(self.inner.grundy(p))
    }

    /// Overwrite one entry; only for exercising the verification checks.
    fn set(&mut self, x: u64, y: u64, value: u32) -> PyResult<()> {
        let p = Position::new(x, y);
        if !self.inner.contains(p) {
            return Err(PyValueError::new_err(format!("{p} is outside the table")));
        }
        self.inner.set(p, value);
        Ok(())
    }

    fn rows(&self) -> Vec<Vec<u32>> {
        self.inner.rows()
    }

    /// Checks the table against the closed form; returns the report as a dict.
    fn check_equivalence<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &verify::check_grundy_equivalence(&self.inner))
    }
}

#[pyfunction]
fn elimination_order(v: u64) -> PyResult<Vec<u64>> {
    Ok(josephus::elimination_order(v)
        .map_err(value_error)?
        .as_slice()
        .to_vec())
}

#[pyfunction]
fn f_s_simulated(s: u64, v: u64) -> PyResult<u64> {
    Ok(josephus::f_s_simulated(query(s, v)?))
}

#[pyfunction]
fn f_s_closed(s: u64, v: u64) -> PyResult<u64> {
    Ok(josephus::f_s_closed(query(s, v)?))
}

#[pyfunction]
fn f_s_recursive(s: u64, v: u64) -> PyResult<u64> {
    Ok(josephus::f_s_recursive(query(s, v)?))
}

#[pyfunction]
fn survivor(v: u64) -> PyResult<u64> {
    josephus::survivor(v).map_err(value_error)
}

/// Runs a verification suite and returns its reports as a list of dicts.
///
/// `suite` is one of grundy, partition, moves, correspondence, josephus,
/// inclusions, all. Unset bounds use the suite defaults.
#[pyfunction]
#[pyo3(signature = (suite, xmax=None, ymax=None, vmax=None, smax=None))]
fn run_verification<'py>(
    py: Python<'py>,
    suite: &str,
    xmax: Option<u64>,
    ymax: Option<u64>,
    vmax: Option<u64>,
    smax: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let suite = match suite {
        "grundy" => Suite::Grundy,
        "partition" => Suite::Partition,
        "moves" => Suite::Moves,
        "correspondence" => Suite::Correspondence,
        "josephus" => Suite::Josephus,
        "inclusions" => Suite::Inclusions,
        "all" => Suite::All,
        other => return Err(PyValueError::new_err(format!("unknown suite '{other}'"))),
    };
    let reports = py.detach(|| run_suite(suite, xmax, ymax, vmax, smax));
    to_python(py, &reports)
}

#[pymodule]
fn josephus_nim(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<GrundyClass>()?;
    m.add_class::<GrundyTable>()?;
    m.add_function(wrap_pyfunction!(total_weight, m)?)?;
    m.add_function(wrap_pyfunction!(removal_bound, m)?)?;
    m.add_function(wrap_pyfunction!(legal_moves, m)?)?;
    m.add_function(wrap_pyfunction!(apply_move, m)?)?;
    m.add_function(wrap_pyfunction!(is_terminal, m)?)?;
    m.add_function(wrap_pyfunction!(mex, m)?)?;
    m.add_function(wrap_pyfunction!(grundy, m)?)?;
    m.add_function(wrap_pyfunction!(is_p_position, m)?)?;
    m.add_function(wrap_pyfunction!(winning_moves, m)?)?;
    m.add_function(wrap_pyfunction!(best_move, m)?)?;
    m.add_function(wrap_pyfunction!(grundy_closed, m)?)?;
    m.add_function(wrap_pyfunction!(odd_part, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_class, m)?)?;
    m.add_function(wrap_pyfunction!(elimination_order, m)?)?;
    m.add_function(wrap_pyfunction!(f_s_simulated, m)?)?;
    m.add_function(wrap_pyfunction!(f_s_closed, m)?)?;
    m.add_function(wrap_pyfunction!(f_s_recursive, m)?)?;
    m.add_function(wrap_pyfunction!(survivor, m)?)?;
    m.add_function(wrap_pyfunction!(run_verification, m)?)?;
    Ok(())
}
