//! Python bindings for the signature-(r, r, p) toolkit.
//!
//! Exposes the ring, factor-profile and Frey-curve types plus the harness
//! entry points. Harness reports come back as JSON strings (sorted keys,
//! big integers as decimal strings), identical to the CLI output; the
//! structured types cover interactive experimentation:
//!
//!     import rrp_py
//!     ring = rrp_py.Ring(7)
//!     prof = ring.factors(2, 1)
//!     curve = ring.frey_type1(2, 1)
//!     print(curve.beta_valuations())

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use std::sync::Arc;

use rrp_core::{harness, ring::RingContext, RingElement};

fn to_py_err(e: rrp_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// The ring of integers of the real cyclotomic field for a fixed prime r.
#[pyclass(frozen)]
struct Ring {
    ctx: Arc<RingContext>,
}

#[pymethods]
impl Ring {
    #[new]
    fn new(r: u64) -> PyResult<Self> {
        Ok(Ring {
            ctx: RingContext::new(r).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn r(&self) -> u64 {
        self.ctx.r()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.ctx.degree()
    }

    /// Ascending coefficients of the minimal polynomial of the generator.
    fn min_poly(&self) -> Vec<BigInt> {
        self.ctx.min_poly().to_vec()
    }

    /// alpha_j = zeta^j + zeta^(-j), 0 <= j <= degree.
    fn alpha(&self, j: usize) -> PyResult<Element> {
        Ok(Element {
            inner: self.ctx.alpha(j).map_err(to_py_err)?,
        })
    }

    /// Element from power-basis coefficients.
    fn element(&self, coeffs: Vec<BigInt>) -> Element {
        Element {
            inner: self.ctx.element(coeffs),
        }
    }

    fn integer(&self, n: BigInt) -> Element {
        Element {
            inner: self.ctx.integer(n),
        }
    }

    /// Splitting of a rational prime: list of (q, e, f, lattice_norm).
    fn factor_prime(&self, q: u64) -> PyResult<Vec<(u64, u32, u32, BigInt)>> {
        let primes = rrp_core::factor_rational_prime(&self.ctx, q).map_err(to_py_err)?;
        Ok(primes
            .into_iter()
            .map(|(p, _)| (p.q(), p.e(), p.f(), p.lattice().norm()))
            .collect())
    }

    /// Factor profile of x^r + y^r for coprime (x, y).
    fn factors(&self, x: BigInt, y: BigInt) -> PyResult<Profile> {
        Ok(Profile {
            inner: rrp_core::build_factors(&self.ctx, &x, &y).map_err(to_py_err)?,
        })
    }

    /// First Frey curve for coprime (x, y).
    fn frey_type1(&self, x: BigInt, y: BigInt) -> PyResult<Curve> {
        let profile = rrp_core::build_factors(&self.ctx, &x, &y).map_err(to_py_err)?;
        Ok(Curve {
            inner: rrp_core::frey_type1(&profile).map_err(to_py_err)?,
        })
    }

    /// Second Frey curve; requires r | z.
    fn frey_type2(&self, x: BigInt, y: BigInt, p: u64, z: BigInt) -> PyResult<Curve> {
        let profile = rrp_core::build_factors(&self.ctx, &x, &y).map_err(to_py_err)?;
        Ok(Curve {
            inner: rrp_core::frey_type2(&profile, p, &z).map_err(to_py_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("Ring(r={}, degree={})", self.ctx.r(), self.ctx.degree())
    }
}

/// An algebraic integer in the power basis of the ring generator.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct Element {
    inner: RingElement,
}

#[pymethods]
impl Element {
    fn coeffs(&self) -> Vec<BigInt> {
        self.inner.coeffs().to_vec()
    }

    fn norm(&self) -> BigInt {
        self.inner.norm()
    }

    fn beta_valuation(&self) -> PyResult<u64> {
        self.inner.beta_valuation().map_err(to_py_err)
    }

    /// Image under zeta -> zeta^i; i must be coprime to r.
    fn galois(&self, i: u64) -> PyResult<Element> {
        Ok(Element {
            inner: self.inner.galois(i).map_err(to_py_err)?,
        })
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __add__(&self, other: &Element) -> Element {
        Element {
            inner: &self.inner + &other.inner,
        }
    }

    fn __sub__(&self, other: &Element) -> Element {
        Element {
            inner: &self.inner - &other.inner,
        }
    }

    fn __mul__(&self, other: &Element) -> Element {
        Element {
            inner: &self.inner * &other.inner,
        }
    }

    fn __neg__(&self) -> Element {
        Element {
            inner: -&self.inner,
        }
    }

    fn __eq__(&self, other: &Element) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("{}", self.inner)
    }
}

/// Factor profile of x^r + y^r: the f_j with their beta-adic valuations.
#[pyclass]
struct Profile {
    inner: rrp_core::FactorProfile,
}

#[pymethods]
impl Profile {
    /// Per-factor beta valuations; index 0 is (x+y)^2 and may be None.
    fn beta_valuations(&self) -> Vec<Option<u64>> {
        self.inner.beta_valuations().to_vec()
    }

    /// Common beta valuation of the f_j, j >= 1.
    #[getter]
    fn e(&self) -> u64 {
        self.inner.e()
    }

    /// v_r(x + y), or None when x + y = 0.
    #[getter]
    fn e0(&self) -> Option<u64> {
        self.inner.e0()
    }

    fn factor(&self, j: usize) -> Element {
        Element {
            inner: self.inner.factor(j).clone(),
        }
    }

    fn product_identity_holds(&self) -> bool {
        self.inner.product_identity_holds()
    }

    fn beta_profile_consistent(&self) -> bool {
        self.inner.beta_profile_consistent()
    }

    /// Pairwise ideal gcds as (i, j, gcd_norm, is_power_of_r).
    fn pairwise_gcd_norms(&self) -> PyResult<Vec<(usize, usize, BigInt, bool)>> {
        let pairs = rrp_core::verify_pairwise_coprimality(&self.inner).map_err(to_py_err)?;
        Ok(pairs
            .into_iter()
            .map(|p| (p.i, p.j, p.gcd_norm, p.power_of_r))
            .collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Profile(x={}, y={}, e={}, e0={:?})",
            self.inner.x(),
            self.inner.y(),
            self.inner.e(),
            self.inner.e0()
        )
    }
}

/// A Frey curve with exact invariants.
#[pyclass]
struct Curve {
    inner: rrp_core::FreyCurve,
}

#[pymethods]
impl Curve {
    #[getter]
    fn kind(&self) -> String {
        self.inner.kind().to_string()
    }

    fn a(&self) -> Element {
        Element {
            inner: self.inner.a().clone(),
        }
    }

    fn b(&self) -> Element {
        Element {
            inner: self.inner.b().clone(),
        }
    }

    fn c(&self) -> Element {
        Element {
            inner: self.inner.c().clone(),
        }
    }

    /// Beta valuations as the tuple (a, b, c, c4, c6_or_None, disc).
    fn beta_valuations(&self) -> (u64, u64, u64, u64, Option<u64>, u64) {
        let v = self.inner.beta_valuations();
        (v.a, v.b, v.c, v.c4, v.c6, v.disc)
    }

    /// v_beta(j) for a type-2 curve with k = v_r(z).
    fn j_beta_valuation(&self, p: u64, k: u64) -> PyResult<i64> {
        rrp_core::j_beta_valuation(&self.inner, p, k).map_err(to_py_err)
    }

    /// (invariant_form, lambda_form, ratio_relation) for a type-1 curve.
    fn j_lambda_check(&self) -> PyResult<(bool, bool, bool)> {
        let rep = rrp_core::j_lambda_check(&self.inner).map_err(to_py_err)?;
        Ok((rep.invariant_form, rep.lambda_form, rep.ratio_relation))
    }

    fn __repr__(&self) -> String {
        format!("Curve(kind={})", self.inner.kind())
    }
}

/// Full analysis report as a JSON string; see the CLI for the schema.
#[pyfunction]
#[pyo3(signature = (r, x, y, p, d=None, z=None))]
fn analyze_json(
    r: u64,
    x: BigInt,
    y: BigInt,
    p: u64,
    d: Option<BigInt>,
    z: Option<BigInt>,
) -> PyResult<String> {
    let report = harness::analyze(r, &x, &y, p, d, z).map_err(to_py_err)?;
    Ok(harness::to_sorted_json(&report))
}

/// Candidate (D, z) contexts as a JSON string.
#[pyfunction]
fn contexts_json(r: u64, x: BigInt, y: BigInt, p: u64) -> PyResult<String> {
    let report = harness::contexts(r, &x, &y, p).map_err(to_py_err)?;
    Ok(harness::to_sorted_json(&report))
}

/// Deterministic type-2 fixture (x, y) with v_r(x + y) = p*k - 1.
#[pyfunction]
#[pyo3(signature = (r, p, k, seed=0))]
fn fixture_type2(r: u64, p: u64, k: u64, seed: u64) -> PyResult<(BigInt, BigInt)> {
    let rep = harness::fixture_type2(r, p, k, seed).map_err(to_py_err)?;
    let x: BigInt = rep.x.parse().expect("report x is decimal");
    let y: BigInt = rep.y.parse().expect("report y is decimal");
    Ok((x, y))
}

/// Exhaustive primitive-solution scan as a JSON string.
#[pyfunction]
fn search_json(r: u64, d: BigInt, p: u64, bound: u64) -> PyResult<String> {
    let report = harness::search(r, &d, p, bound).map_err(to_py_err)?;
    Ok(harness::to_sorted_json(&report))
}

/// Batch property sweep as a JSON string.
#[pyfunction]
fn sweep_json(r_list: Vec<u64>, bound: u64) -> PyResult<String> {
    let report = harness::sweep(&r_list, bound).map_err(to_py_err)?;
    Ok(harness::to_sorted_json(&report))
}

/// True iff v(j) < 0 and p does not divide v(j).
#[pyfunction]
fn inertia_criterion(j_valuation: i64, p: u64) -> bool {
    rrp_core::inertia_criterion(j_valuation, p)
}

/// True iff p divides neither r - 1 nor r + 1.
#[pyfunction]
fn eichler_shimura_condition(r: u64, p: u64) -> bool {
    rrp_core::eichler_shimura_condition(r, p)
}

#[pymodule]
fn rrp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Ring>()?;
    m.add_class::<Element>()?;
    m.add_class::<Profile>()?;
    m.add_class::<Curve>()?;
    m.add_function(wrap_pyfunction!(analyze_json, m)?)?;
    m.add_function(wrap_pyfunction!(contexts_json, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_type2, m)?)?;
    m.add_function(wrap_pyfunction!(search_json, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_json, m)?)?;
    m.add_function(wrap_pyfunction!(inertia_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(eichler_shimura_condition, m)?)?;
    Ok(())
}
