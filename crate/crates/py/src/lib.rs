//! Python bindings: the combinatorial helpers as plain functions, and a
//! stateful `Engine` wrapping a session so repeated queries share caches.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use skostka::combinatorics::{
    self, BiComposition, Composition, Label, Partition, RhoShape,
};
use skostka::registry::{self, Session, Thm13Params};
use skostka::rep::{end_algebra, vertex_shape_of};
use skostka::sylow::{self, Perm};
use skostka::tabloids;
use skostka::{Caps, Error};
use std::sync::Mutex;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Invalid(_) | Error::SizeMismatch(_) | Error::BadPrime(_) => {
            PyValueError::new_err(e.to_string())
        }
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn comp(parts: Vec<u32>) -> Composition {
    Composition::new(parts)
}

fn partition(parts: Vec<u32>) -> PyResult<Partition> {
    Partition::new(parts).map_err(to_py_err)
}

fn shape(alpha: Vec<u32>, beta: Vec<u32>) -> BiComposition {
    BiComposition::new(comp(alpha), comp(beta))
}

/// Dominance order on pairs of partitions.
#[pyfunction]
fn dominates(
    lambda: Vec<u32>,
    nu: Vec<u32>,
    alpha: Vec<u32>,
    beta: Vec<u32>,
) -> PyResult<bool> {
    combinatorics::dominates(&shape(lambda, nu), &shape(alpha, beta)).map_err(to_py_err)
}

/// The p-adic expansion of a partition, as the list of its layers.
#[pyfunction]
fn padic_expansion(lambda: Vec<u32>, p: u64) -> PyResult<Vec<Vec<u32>>> {
    let e = combinatorics::padic_expansion(&partition(lambda)?, p).map_err(to_py_err)?;
    Ok(e.layers.iter().map(|l| l.parts().to_vec()).collect())
}

#[pyfunction]
fn conjugate(lambda: Vec<u32>) -> PyResult<Vec<u32>> {
    Ok(partition(lambda)?.conjugate().parts().to_vec())
}

/// Vertex shape of `Y(lambda|p mu)` as the multiplicity vector
/// `(n_0, n_1, ...)` of block sizes `(1, p, ...)`.
#[pyfunction]
fn vertex_shape(lambda: Vec<u32>, mu: Vec<u32>, p: u64) -> PyResult<Vec<u32>> {
    let rho = combinatorics::vertex_shape(&partition(lambda)?, &partition(mu)?, p)
        .map_err(to_py_err)?;
    Ok(rho.mults().to_vec())
}

#[pyfunction]
fn ell_p(lambda: Vec<u32>, mu: Vec<u32>, p: u64) -> PyResult<usize> {
    combinatorics::ell_p(&partition(lambda)?, &partition(mu)?, p).map_err(to_py_err)
}

/// All labels `(lambda, mu)` of degree n, most dominant first.
#[pyfunction]
fn labels(n: u32, p: u64) -> PyResult<Vec<(Vec<u32>, Vec<u32>)>> {
    Ok(combinatorics::labels(n, p)
        .map_err(to_py_err)?
        .into_iter()
        .map(|l| (l.lambda.parts().to_vec(), l.mu.parts().to_vec()))
        .collect())
}

/// The index set Lambda((alpha|beta), rho): a list of
/// (gammas, deltas) pairs of layer tuples.
#[pyfunction]
fn lambda_set(
    alpha: Vec<u32>,
    beta: Vec<u32>,
    rho_mults: Vec<u32>,
    p: u64,
) -> PyResult<Vec<(Vec<Vec<u32>>, Vec<Vec<u32>>)>> {
    let rho = RhoShape::new(p, rho_mults);
    let ls = combinatorics::lambda_set(&shape(alpha, beta), &rho).map_err(to_py_err)?;
    Ok(ls
        .entries
        .into_iter()
        .map(|e| {
            let levels = rho.levels().max(1);
            (
                (0..levels).map(|i| e.gamma(i).parts().to_vec()).collect(),
                (0..levels).map(|i| e.delta(i).parts().to_vec()).collect(),
            )
        })
        .collect())
}

/// All canonical tabloids of a shape, each as (alpha_rows, beta_rows).
#[pyfunction]
#[pyo3(signature = (alpha, beta, cap = 100_000))]
fn enumerate_tabloids(
    alpha: Vec<u32>,
    beta: Vec<u32>,
    cap: u64,
) -> PyResult<Vec<(Vec<Vec<u32>>, Vec<Vec<u32>>)>> {
    let ts = tabloids::enumerate_tabloids(&shape(alpha, beta), cap).map_err(to_py_err)?;
    Ok(ts
        .into_iter()
        .map(|t| (t.alpha_rows, t.beta_rows))
        .collect())
}

/// Tabloids fixed by the group generated by permutations given as image
/// vectors on 1..n.
#[pyfunction]
#[pyo3(signature = (alpha, beta, gens, cap = 100_000))]
fn fixed_tabloids(
    alpha: Vec<u32>,
    beta: Vec<u32>,
    gens: Vec<Vec<u32>>,
    cap: u64,
) -> PyResult<Vec<(Vec<Vec<u32>>, Vec<Vec<u32>>)>> {
    let perms: Vec<Perm> = gens
        .into_iter()
        .map(Perm::from_images)
        .collect::<skostka::Result<_>>()
        .map_err(to_py_err)?;
    let ts = tabloids::fixed_tabloids(&shape(alpha, beta), &perms, cap).map_err(to_py_err)?;
    Ok(ts
        .into_iter()
        .map(|t| (t.alpha_rows, t.beta_rows))
        .collect())
}

/// Generators of the Sylow subgroup `P_rho`, as image vectors.
#[pyfunction]
fn sylow_generators(rho_mults: Vec<u32>, p: u64) -> PyResult<Vec<Vec<u32>>> {
    let ps = sylow::sylow_generators(&RhoShape::new(p, rho_mults));
    Ok(ps
        .gens
        .iter()
        .map(|g| (1..=ps.degree).map(|x| g.apply(x)).collect())
        .collect())
}

/// A cached engine: one characteristic, shared decompositions and
/// registries across calls.
#[pyclass]
struct Engine {
    session: Mutex<Session>,
}

#[pymethods]
impl Engine {
    #[new]
    #[pyo3(signature = (p = 3, seed = 2024, cap = None))]
    fn new(p: u64, seed: u64, cap: Option<u64>) -> PyResult<Self> {
        let mut caps = Caps::default();
        if let Some(c) = cap {
            caps.rep_dim = c;
        }
        Ok(Engine {
            session: Mutex::new(Session::new(p, caps, seed).map_err(to_py_err)?),
        })
    }

    /// Decompose M(alpha|beta): a list of dicts with label, dim, vertex,
    /// and End dimension.
    fn decompose<'py>(
        &self,
        py: Python<'py>,
        alpha: Vec<u32>,
        beta: Vec<u32>,
    ) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let mut s = self.session.lock().unwrap();
        let sh = shape(alpha, beta);
        let labeled = s.labeled_decomposition(&sh).map_err(to_py_err)?;
        let raw = s.decompose_shape(&sh).map_err(to_py_err)?;
        let mut out = Vec::new();
        for (u, (label, dim)) in raw.iter().zip(labeled.iter()) {
            let d = PyDict::new(py);
            d.set_item("lambda", label.lambda.parts().to_vec())?;
            d.set_item("mu", label.mu.parts().to_vec())?;
            d.set_item("dim", dim)?;
            d.set_item(
                "vertex",
                vertex_shape_of(u).map_err(to_py_err)?.mults().to_vec(),
            )?;
            d.set_item("end_dim", end_algebra(u).map_err(to_py_err)?.dim)?;
            out.push(d);
        }
        Ok(out)
    }

    /// `[M(alpha|beta) : Y(lambda|p mu)]` by decomposition and matching.
    fn signed_kostka(
        &self,
        alpha: Vec<u32>,
        beta: Vec<u32>,
        lambda: Vec<u32>,
        mu: Vec<u32>,
    ) -> PyResult<u64> {
        let mut s = self.session.lock().unwrap();
        let label = Label::new(partition(lambda)?, partition(mu)?);
        s.signed_kostka(&shape(alpha, beta), &label).map_err(to_py_err)
    }

    /// The same multiplicity through the layer recursion.
    fn klyachko_kostka(
        &self,
        alpha: Vec<u32>,
        beta: Vec<u32>,
        lambda: Vec<u32>,
        mu: Vec<u32>,
    ) -> PyResult<u64> {
        let mut s = self.session.lock().unwrap();
        let label = Label::new(partition(lambda)?, partition(mu)?);
        s.klyachko_kostka(&shape(alpha, beta), &label)
            .map_err(to_py_err)
    }

    /// The full table of a degree as a JSON-compatible dict; with
    /// `cross_check` the recursion must agree entry by entry.
    #[pyo3(signature = (n, cross_check = false))]
    fn kostka_table<'py>(
        &self,
        py: Python<'py>,
        n: u32,
        cross_check: bool,
    ) -> PyResult<Bound<'py, PyAny>> {
        let mut s = self.session.lock().unwrap();
        let table = s.k_table(n, cross_check).map_err(to_py_err)?;
        json_to_py(py, &serde_json::to_value(&table).unwrap())
    }

    /// Run a named verifier; returns the report as a dict.
    #[pyo3(signature = (name, **kwargs))]
    fn verify<'py>(
        &self,
        py: Python<'py>,
        name: &str,
        kwargs: Option<&Bound<'py, PyDict>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let get = |key: &str, default: u32| -> PyResult<u32> {
            match kwargs {
                Some(kw) => match kw.get_item(key)? {
                    Some(v) => v.extract::<u32>(),
                    None => Ok(default),
                },
                None => Ok(default),
            }
        };
        let mut s = self.session.lock().unwrap();
        let report = match name {
            "thm1.1" => registry::verify_thm_1_1(&mut s, get("n", 3)?),
            "thm1.2" => registry::verify_thm_1_2(&mut s, get("n", 2)?),
            "thm1.3" => {
                let params = Thm13Params {
                    pi: comp(vec![get("pi1", 1)?]),
                    pi_tilde: Composition::empty(),
                    lambda: Partition::new(vec![get("pi1", 1)?]).map_err(to_py_err)?,
                    mu: Partition::empty(),
                    phi: comp(vec![1]),
                    phi_tilde: Composition::empty(),
                    alpha: Partition::new(vec![1]).map_err(to_py_err)?,
                    beta: Partition::empty(),
                    k: get("k", 1)?,
                };
                registry::verify_thm_1_3(&mut s, &params)
            }
            "thm1.4" => registry::verify_thm_1_4(&mut s, get("n_max", 3)?, &[]),
            "labels" => registry::verify_labels(&mut s, get("n_max", 4)?),
            "example6.1" => registry::verify_example_6_1(&mut s, get("m", 1)?, get("c", 1)?),
            "lemma6.1" => registry::verify_lemma_6_1(&mut s, get("m_max", 2)?),
            "klyachko" => registry::verify_klyachko(&mut s, get("n", 3)?),
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown statement {:?}",
                    other
                )))
            }
        }
        .map_err(to_py_err)?;
        json_to_py(py, &serde_json::to_value(&report).unwrap())
    }
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    use serde_json::Value;
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else {
                n.as_f64().unwrap().into_pyobject(py)?.into_any()
            }
        }
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(a) => {
            let list = pyo3::types::PyList::empty(py);
            for x in a {
                list.append(json_to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(o) => {
            let d = PyDict::new(py);
            for (k, x) in o {
                d.set_item(k, json_to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

#[pymodule]
fn _skostka(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(dominates, m)?)?;
    m.add_function(wrap_pyfunction!(padic_expansion, m)?)?;
    m.add_function(wrap_pyfunction!(conjugate, m)?)?;
    m.add_function(wrap_pyfunction!(vertex_shape, m)?)?;
    m.add_function(wrap_pyfunction!(ell_p, m)?)?;
    m.add_function(wrap_pyfunction!(labels, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_set, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_tabloids, m)?)?;
    m.add_function(wrap_pyfunction!(fixed_tabloids, m)?)?;
    m.add_function(wrap_pyfunction!(sylow_generators, m)?)?;
    m.add_class::<Engine>()?;
    Ok(())
}
