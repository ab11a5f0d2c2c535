//! Python bindings: polynomials, Schur and Hecke elements, the counting oracle and the
//! verification suites.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use vtschur::flag_oracle::{FlagOracle, Guards};
use vtschur::galois::{descent_suite, equivariance_check, Sigma};
use vtschur::hecke::{hecke_mul, verify_hecke, HeckeElt, Permutation};
use vtschur::jparity::{verify_hat_relations, verify_tilde_relations};
use vtschur::laurent::{qbinom, rational};
use vtschur::report::Report;
use vtschur::schur::{self as schur_mod, oracle_compare, verify_s_relations, Basis, SchurElt};
use vtschur::stab::{stab_suite, stabilization_check, ShiftMode, WeightWindow};
use vtschur::tensor::{commute_check, product_via_operators};
use vtschur::uvt::{hopf_checks, verify_star_relations, verify_u_relations};
use vtschur::{Error, IntMatrix};

fn err(e: Error) -> PyErr {
    match e {
        Error::GuardExceeded(_) | Error::FitInconsistent(_) | Error::RankNotStable(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn matrix(rows: Vec<Vec<i64>>) -> PyResult<IntMatrix> {
    IntMatrix::from_rows(&rows).map_err(err)
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

fn report_to_py<'py>(py: Python<'py>, rep: &Report) -> PyResult<Bound<'py, PyAny>> {
    json_to_py(py, &rep.to_json())
}

/// Laurent polynomial in `v, t` with integer coefficients.
#[pyclass(name = "Poly", from_py_object)]
#[derive(Clone)]
struct PyPoly(vtschur::Poly);

#[pymethods]
impl PyPoly {
    /// Parse the canonical form, e.g. `"1*v^2*t^0 + -1*v^-2*t^1"`.
    #[new]
    #[pyo3(signature = (text="0"))]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyPoly).map_err(err)
    }

    #[staticmethod]
    fn monomial(a: i64, b: i64) -> Self {
        PyPoly(vtschur::Poly::vt(a, b))
    }

    /// `{(a, b): c}` for the terms `c v^a t^b`.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (a, b, c) in self.0.terms() {
            d.set_item((a, b), *c)?;
        }
        Ok(d)
    }

    fn bar(&self) -> Self {
        PyPoly(self.0.bar())
    }

    fn sigma(&self) -> Self {
        PyPoly(self.0.sigma())
    }

    /// Rewrite in `r = vt`, `s = v^{-1}t`.
    fn to_rs(&self) -> PyResult<String> {
        self.0.to_rs().map(|p| p.to_string()).map_err(err)
    }

    /// Value at `v^2 = q`, a polynomial in `t`.
    fn eval_q(&self, q: i64) -> PyResult<String> {
        self.0.eval_q(q).map(|p| p.to_string()).map_err(err)
    }

    /// Exact value at rational `v, t`, as `fractions.Fraction`.
    fn specialize<'py>(
        &self,
        py: Python<'py>,
        v: (i64, i64),
        t: (i64, i64),
    ) -> PyResult<Bound<'py, PyAny>> {
        if v.1 == 0 || t.1 == 0 {
            return Err(PyValueError::new_err("zero denominator"));
        }
        let x = self.0.specialize(&rational(v.0, v.1), &rational(t.0, t.1)).map_err(err)?;
        py.import("fractions")?.getattr("Fraction")?.call1((x.to_string(),))
    }

    fn __add__(&self, other: &Self) -> Self {
        PyPoly(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        PyPoly(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyPoly(&self.0 * &other.0)
    }

    fn __neg__(&self) -> Self {
        PyPoly(-&self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.0)
    }
}

/// Element of the q-Schur algebra `S(n, d)`.
#[pyclass(name = "SchurElt", from_py_object)]
#[derive(Clone)]
struct PySchur(SchurElt);

fn basis_name(b: Basis) -> &'static str {
    match b {
        Basis::Braced => "braced",
        Basis::E => "e",
    }
}

#[pymethods]
impl PySchur {
    /// Braced basis element `{A}`.
    #[staticmethod]
    fn basis(rows: Vec<Vec<i64>>) -> PyResult<Self> {
        SchurElt::basis_elt(&matrix(rows)?).map(PySchur).map_err(err)
    }

    #[staticmethod]
    fn unit(n: usize, d: usize) -> Self {
        PySchur(SchurElt::unit(n, d))
    }

    #[staticmethod]
    #[pyo3(signature = (n, d, generator))]
    fn generator(n: usize, d: usize, generator: &str) -> PyResult<Self> {
        let g = parse_gen(n, generator)?;
        schur_mod::gen_elt(n, d, g, None).map(PySchur).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        SchurElt::from_json(&v).map(PySchur).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        self.0.to_json().map(|v| v.to_string()).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn d(&self) -> usize {
        self.0.d()
    }

    #[getter]
    fn basis_kind(&self) -> &'static str {
        basis_name(self.0.basis())
    }

    /// Same element in the `"braced"` or `"e"` basis.
    fn to_basis(&self, basis: &str) -> PyResult<Self> {
        let b = match basis {
            "braced" => Basis::Braced,
            "e" => Basis::E,
            _ => return Err(PyValueError::new_err(format!("unknown basis {basis:?}"))),
        };
        Ok(PySchur(self.0.to_basis(b)))
    }

    /// `[(matrix rows, Poly)]` in canonical order.
    fn terms(&self) -> Vec<(Vec<Vec<i64>>, PyPoly)> {
        self.0.terms().map(|(a, c)| (a.to_rows(), PyPoly(c.clone()))).collect()
    }

    fn coeff(&self, rows: Vec<Vec<i64>>) -> PyResult<PyPoly> {
        Ok(PyPoly(self.0.coeff(&matrix(rows)?)))
    }

    fn sigma(&self) -> Self {
        PySchur(self.0.sigma())
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.add(&other.0).map(PySchur).map_err(err)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.0.sub(&other.0).map(PySchur).map_err(err)
    }

    /// Product in `S(n, d)`; needs `n >= d`.
    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        product_via_operators(&self.0, &other.0).map(PySchur).map_err(err)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SchurElt(n={}, d={}, {})", self.0.n(), self.0.d(), self.0)
    }
}

/// `"E1"`, `"F2"`, `"A1"`, `"A1^-1"`, `"B3"`, ...
fn parse_gen(n: usize, s: &str) -> PyResult<vtschur::words::Gen> {
    vtschur::words::Gen::all(n)
        .into_iter()
        .find(|g| g.to_string() == s)
        .ok_or_else(|| PyValueError::new_err(format!("unknown generator {s:?} for n = {n}")))
}

/// Element of the Hecke algebra `H_d(v, t)` in the `T_w` basis.
#[pyclass(name = "HeckeElt", from_py_object)]
#[derive(Clone)]
struct PyHecke(HeckeElt);

#[pymethods]
impl PyHecke {
    #[staticmethod]
    fn one(d: usize) -> Self {
        PyHecke(HeckeElt::one(d))
    }

    /// `T_i`, `1 <= i < d`.
    #[staticmethod]
    fn generator(d: usize, i: usize) -> PyResult<Self> {
        HeckeElt::generator(d, i).map(PyHecke).map_err(err)
    }

    /// `T_w` for `w` in one-line notation.
    #[staticmethod]
    fn basis(perm: Vec<usize>) -> PyResult<Self> {
        Permutation::new(perm).map(|w| PyHecke(HeckeElt::basis(w))).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        HeckeElt::from_json(&v).map(PyHecke).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        self.0.to_json().map(|v| v.to_string()).map_err(err)
    }

    #[getter]
    fn d(&self) -> usize {
        self.0.d()
    }

    fn terms(&self) -> Vec<(Vec<usize>, PyPoly)> {
        self.0.terms().map(|(w, c)| (w.image().to_vec(), PyPoly(c.clone()))).collect()
    }

    fn coeff(&self, perm: Vec<usize>) -> PyResult<PyPoly> {
        let w = Permutation::new(perm).map_err(err)?;
        Ok(PyPoly(self.0.coeff(&w)))
    }

    fn sigma(&self) -> Self {
        PyHecke(self.0.sigma())
    }

    fn __add__(&self, other: &Self) -> Self {
        PyHecke(self.0.add(&other.0))
    }

    fn __sub__(&self, other: &Self) -> Self {
        PyHecke(self.0.sub(&other.0))
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        hecke_mul(&self.0, &other.0).map(PyHecke).map_err(err)
    }

    fn scale(&self, c: &PyPoly) -> Self {
        PyHecke(self.0.scale(&c.0))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("HeckeElt(d={}, {})", self.0.d(), self.0)
    }
}

/// Matrices indexing the basis of `S(n, d)`.
#[pyfunction]
fn theta(n: usize, d: usize) -> Vec<Vec<Vec<i64>>> {
    schur_mod::theta(n, d).iter().map(IntMatrix::to_rows).collect()
}

/// Gaussian binomial `[n k]` in `v, t`.
#[pyfunction(name = "qbinom")]
fn py_qbinom(n: i64, k: i64) -> PyResult<PyPoly> {
    qbinom(n, k).map(PyPoly).map_err(err)
}

/// `{B} * x` for an upper Chevalley matrix `B`.
#[pyfunction]
fn mult_chev_e(b: Vec<Vec<i64>>, x: &PySchur) -> PyResult<PySchur> {
    schur_mod::mult_chev_e(&matrix(b)?, &x.0).map(PySchur).map_err(err)
}

/// `{C} * x` for a lower Chevalley matrix `C`.
#[pyfunction]
fn mult_chev_f(c: Vec<Vec<i64>>, x: &PySchur) -> PyResult<PySchur> {
    schur_mod::mult_chev_f(&matrix(c)?, &x.0).map(PySchur).map_err(err)
}

/// `e_B * e_A` in the e-basis; coefficients are polynomials in `v^2 = q`.
#[pyfunction]
fn e_product(b: Vec<Vec<i64>>, a: Vec<Vec<i64>>) -> PyResult<PySchur> {
    schur_mod::e_product(&matrix(b)?, &matrix(a)?).map(PySchur).map_err(err)
}

/// Orbit counts `{C: count}` of the convolution `e_B * e_A` over `F_p`.
#[pyfunction]
fn convolve_count(p: u64, b: Vec<Vec<i64>>, a: Vec<Vec<i64>>) -> PyResult<Vec<(Vec<Vec<i64>>, i64)>> {
    let (b, a) = (matrix(b)?, matrix(a)?);
    let o = FlagOracle::new(p, b.rows(), b.total() as usize, &Guards::default()).map_err(err)?;
    let counts = o.convolve_count(&b, &a).map_err(err)?;
    Ok(counts.into_iter().map(|(c, k)| (c.to_rows(), k)).collect())
}

fn shift_mode(mode: &str, m: usize) -> PyResult<ShiftMode> {
    match mode {
        "I" => Ok(ShiftMode::I),
        "2I" => Ok(ShiftMode::TwoI),
        "2I'" => Ok(ShiftMode::TwoIPrime(m)),
        _ => Err(PyValueError::new_err(format!("mode {mode:?} is not I, 2I or 2I'"))),
    }
}

/// Fit the products of shifted matrices; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (a1, a2, shifts=vec![3, 4, 5], mode="I", m=1))]
fn stab_fit<'py>(
    py: Python<'py>,
    a1: Vec<Vec<i64>>,
    a2: Vec<Vec<i64>>,
    shifts: Vec<i64>,
    mode: &str,
    m: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let rep = stabilization_check(&matrix(a1)?, &matrix(a2)?, &shifts, shift_mode(mode, m)?).map_err(err)?;
    report_to_py(py, &rep)
}

/// Run a verification suite and return its report as a dict.
#[pyfunction]
#[pyo3(signature = (suite, n=2, d=2, m=1, primes=vec![3, 5, 7], window=4))]
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    n: usize,
    d: usize,
    m: usize,
    primes: Vec<u64>,
    window: i64,
) -> PyResult<Bound<'py, PyAny>> {
    let g = Guards::default();
    if n > g.max_n || d > g.max_d {
        return Err(err(Error::GuardExceeded(format!("n={n}, d={d}"))));
    }
    let rep = match suite {
        "schur" => verify_s_relations(n, d),
        "hecke" => verify_hecke(d),
        "duality" => commute_check(n, d),
        "uvt" => verify_u_relations(n, d),
        "hopf" => hopf_checks(n, d),
        "star" => verify_star_relations(n, d),
        "jparity-tilde" => verify_tilde_relations(n, d, m),
        "jparity-hat" => verify_hat_relations(n, d, m),
        "equivariance" => equivariance_check(n, d),
        "descend" => descent_suite(n, d),
        "oracle" => oracle_compare(n, d, &primes, &g),
        "stab" => WeightWindow::new(window, 2).and_then(|w| stab_suite(n, w, &[3, 4, 5])),
        _ => return Err(PyValueError::new_err(format!("unknown suite {suite:?}"))),
    }
    .map_err(err)?;
    report_to_py(py, &rep)
}

#[pymodule]
fn vtschur_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PySchur>()?;
    m.add_class::<PyHecke>()?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(py_qbinom, m)?)?;
    m.add_function(wrap_pyfunction!(mult_chev_e, m)?)?;
    m.add_function(wrap_pyfunction!(mult_chev_f, m)?)?;
    m.add_function(wrap_pyfunction!(e_product, m)?)?;
    m.add_function(wrap_pyfunction!(convolve_count, m)?)?;
    m.add_function(wrap_pyfunction!(stab_fit, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
