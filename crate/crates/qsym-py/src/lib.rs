//! Python bindings: polynomials in the u_{ij}, the relation families, named
//! sets, normal forms and the word problem.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use qsym_core::algebra::{self, Size};
use qsym_core::groebner::{self, CheckConfig};
use qsym_core::relations;

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn size(n: u16) -> PyResult<Size> {
    Size::new(n).map_err(value_err)
}

/// A polynomial in the generators u[i,j] of the free algebra on n² variables.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Polynomial {
    inner: algebra::Polynomial,
}

#[pymethods]
impl Polynomial {
    /// Parse from the canonical grammar, e.g. "u[2,2]*u[3,3] - 1/2".
    #[new]
    fn new(text: &str, n: u16) -> PyResult<Self> {
        Ok(Polynomial {
            inner: algebra::parse_polynomial(text, size(n)?).map_err(value_err)?,
        })
    }

    #[getter]
    fn n(&self) -> u16 {
        self.inner.size().get()
    }

    fn degree(&self) -> Option<usize> {
        self.inner.lm().map(|m| m.degree())
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// The transpose involution u[i,j] -> u[j,i] (order-preserving on words).
    fn transpose(&self) -> Self {
        Polynomial {
            inner: self.inner.transpose(),
        }
    }

    /// The *-involution: transpose entries and reverse words.
    fn star(&self) -> Self {
        Polynomial {
            inner: self.inner.star(),
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({:?}, n={})", self.inner.to_string(), self.n())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.inner.to_string().hash(&mut h);
        h.finish()
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(Polynomial {
            inner: self.inner.try_add(&other.inner).map_err(value_err)?,
        })
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        Ok(Polynomial {
            inner: self.inner.try_sub(&other.inner).map_err(value_err)?,
        })
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(Polynomial {
            inner: self.inner.try_mul(&other.inner).map_err(value_err)?,
        })
    }

    fn __neg__(&self) -> Self {
        Polynomial {
            inner: self.inner.neg(),
        }
    }
}

/// Build one relation-family instance, e.g. make_relation("rinj", [2, 3], 4).
#[pyfunction]
fn make_relation(family: &str, indices: Vec<u16>, n: u16) -> PyResult<Polynomial> {
    let family: relations::Family = family.parse().map_err(value_err)?;
    Ok(Polynomial {
        inner: relations::make_relation(family, &indices, size(n)?).map_err(value_err)?,
    })
}

/// The canonical form of a named set: "Fpp", "Fp", "F", "B" or "G".
#[pyfunction]
fn named_set(name: &str, n: u16) -> PyResult<Vec<Polynomial>> {
    let which: relations::NamedSet = name.parse().map_err(value_err)?;
    let basis = relations::named_set(which, size(n)?).map_err(value_err)?;
    Ok(basis
        .elements()
        .iter()
        .map(|p| Polynomial { inner: p.clone() })
        .collect())
}

/// Normal form modulo a named set (default: the Gröbner basis G).
#[pyfunction]
#[pyo3(signature = (poly, basis = "G"))]
fn normal_form(poly: &Polynomial, basis: &str) -> PyResult<Polynomial> {
    let which: relations::NamedSet = basis.parse().map_err(value_err)?;
    let basis = relations::named_set(which, poly.inner.size()).map_err(value_err)?;
    let (nf, _) = groebner::normal_form(&poly.inner, &basis, false);
    Ok(Polynomial { inner: nf })
}

/// Decide whether two polynomials are equal modulo the ideal of quantum
/// symmetries; returns (equivalent, lhs_nf, rhs_nf).
#[pyfunction]
fn word_problem(lhs: &Polynomial, rhs: &Polynomial) -> PyResult<(bool, Polynomial, Polynomial)> {
    let result =
        relations::word_problem(&lhs.inner, &rhs.inner, lhs.inner.size()).map_err(value_err)?;
    Ok((
        result.equivalent,
        Polynomial {
            inner: result.lhs_nf,
        },
        Polynomial {
            inner: result.rhs_nf,
        },
    ))
}

/// Check the Gröbner property of a named set by reducing every overlap
/// relation.
#[pyfunction]
fn is_groebner(name: &str, n: u16) -> PyResult<bool> {
    let which: relations::NamedSet = name.parse().map_err(value_err)?;
    let basis = relations::named_set(which, size(n)?).map_err(value_err)?;
    let report = groebner::check_basis(&basis, &CheckConfig::default());
    Ok(report.failures.is_empty() && report.certificate_failures == 0)
}

#[pymodule]
fn qsym(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polynomial>()?;
    m.add_function(wrap_pyfunction!(make_relation, m)?)?;
    m.add_function(wrap_pyfunction!(named_set, m)?)?;
    m.add_function(wrap_pyfunction!(normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(word_problem, m)?)?;
    m.add_function(wrap_pyfunction!(is_groebner, m)?)?;
    Ok(())
}
