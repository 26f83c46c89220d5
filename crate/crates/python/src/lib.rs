//! Python bindings: `import valhilbert`.

use num_bigint::BigUint;
use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use valhilbert::hilbert::{epsilon_at, epsilon_threshold, plateau_decomposition};
use valhilbert::quasifit::difference_reduce;
use valhilbert::theta::{check_sequence_invariants, multiplicity_from_theta, theta_from_multiplicity};
use valhilbert::{
    alpha_table, build_value_sequence, expand_theta, AlphaEvaluator, DimensionModel, Error, ModelCandidate,
    Multiplicity, RefutationCertificate, RefutationOutcome, ThetaSpec, ValueSequence,
};

create_exception!(valhilbert, PrecisionError, PyValueError, "Digit prefix or value sequence too short.");
create_exception!(valhilbert, MalformedCertificate, PyValueError, "Certificate is structurally invalid.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InsufficientPrecision { .. } | Error::SequenceTooShort { .. } => PrecisionError::new_err(e.to_string()),
        Error::MalformedCertificate(_) => MalformedCertificate::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// The parameter theta: a non-negative rational, infinity, or an explicit
/// digit prefix.
#[pyclass(name = "Theta", module = "valhilbert", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyTheta(ThetaSpec);

#[pymethods]
impl PyTheta {
    /// Parses `"p/q"`, `"p"`, `"inf"` or `"e2:b3b4..."`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyTheta).map_err(to_py)
    }

    #[staticmethod]
    fn from_multiplicity(c: BigRational) -> PyResult<Self> {
        theta_from_multiplicity(&c).map(PyTheta).map_err(to_py)
    }

    #[staticmethod]
    fn from_bits(e2: BigUint, bits: Vec<bool>) -> Self {
        PyTheta(ThetaSpec::bits(e2, bits))
    }

    /// Exact value as a `Fraction`, or `None` for infinity and prefixes.
    #[getter]
    fn value(&self) -> Option<BigRational> {
        self.0.exact_value().cloned()
    }

    #[getter]
    fn is_infinite(&self) -> bool {
        self.0.is_infinite()
    }

    /// `1/(2 + theta)`, or the interval `(lo, hi]` for a prefix.
    fn multiplicity<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        match multiplicity_from_theta(&self.0) {
            Multiplicity::Exact(c) => Ok(c.into_pyobject(py)?.into_any()),
            Multiplicity::Interval { lo, hi } => Ok((lo, hi).into_pyobject(py)?.into_any()),
        }
    }

    /// `(e_2, [e_3, ..., e_upto])`.
    fn digits(&self, upto: usize) -> PyResult<(BigUint, Vec<BigUint>)> {
        let exp = expand_theta(&self.0, upto).map_err(to_py)?;
        let mut d = exp.digits().to_vec();
        let e2 = d.remove(0);
        Ok((e2, d))
    }

    fn sequence(&self, upto: usize) -> PyResult<PySequence> {
        build_value_sequence(&self.0, upto).map(PySequence::wrap).map_err(to_py)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Theta('{}')", self.0)
    }
}

fn theta_arg(obj: &Bound<'_, PyAny>) -> PyResult<ThetaSpec> {
    if let Ok(t) = obj.cast::<PyTheta>() {
        return Ok(t.get().0.clone());
    }
    if let Ok(s) = obj.extract::<String>() {
        return s.parse().map_err(to_py);
    }
    let q: BigRational = obj.extract()?;
    ThetaSpec::rational(q).map_err(to_py)
}

/// Values `r_0, ..., r_I` with a cached evaluator for `alpha`.
#[pyclass(name = "ValueSequence", module = "valhilbert", frozen)]
struct PySequence {
    eval: AlphaEvaluator,
}

impl PySequence {
    fn wrap(vs: ValueSequence) -> Self {
        PySequence {
            eval: AlphaEvaluator::new(&vs),
        }
    }

    fn vs(&self) -> &ValueSequence {
        self.eval.sequence()
    }
}

#[pymethods]
impl PySequence {
    /// Shortest sequence with `r_I > n`.
    #[staticmethod]
    fn covering(theta: &Bound<'_, PyAny>, n: BigUint) -> PyResult<Self> {
        ValueSequence::covering(&theta_arg(theta)?, &n).map(Self::wrap).map_err(to_py)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        ValueSequence::from_json(text).map(Self::wrap).map_err(to_py)
    }

    fn to_json(&self) -> String {
        self.vs().to_json()
    }

    #[getter]
    fn theta(&self) -> PyTheta {
        PyTheta(self.vs().theta().clone())
    }

    #[getter]
    fn values(&self) -> Vec<BigUint> {
        self.vs().values().to_vec()
    }

    fn __len__(&self) -> usize {
        self.vs().values().len()
    }

    fn __getitem__(&self, i: usize) -> PyResult<BigUint> {
        self.vs()
            .get(i)
            .cloned()
            .ok_or_else(|| pyo3::exceptions::PyIndexError::new_err(i))
    }

    /// `alpha(n)` for `n < r_I`.
    fn alpha(&self, n: BigUint) -> PyResult<BigUint> {
        self.eval.alpha(&n).map_err(to_py)
    }

    /// `alpha(r_i - 1) = 2^(i-1)`.
    fn head(&self, i: usize) -> Option<BigUint> {
        self.eval.head(i).cloned()
    }

    /// `([alpha(n)], [l(R/I_n)])` for `0 <= n <= n_max`.
    fn table(&self, n_max: u64) -> PyResult<(Vec<u64>, Vec<u128>)> {
        let t = alpha_table(self.vs(), n_max).map_err(to_py)?;
        Ok((t.alpha_values().to_vec(), t.cumulative_values().to_vec()))
    }

    /// `[(i, lo, hi, 2^i)]`; empty plateaus have `lo = hi + 1`.
    fn plateaus(&self) -> Vec<(usize, BigUint, BigUint, BigUint)> {
        plateau_decomposition(self.vs())
            .into_iter()
            .map(|p| (p.level, p.lo, p.hi, p.value))
            .collect()
    }

    /// `{family: passed}` for the four inequality families.
    fn invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for f in check_sequence_invariants(self.vs()).families {
            d.set_item(f.family.to_string(), f.passed())?;
        }
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("ValueSequence(theta='{}', len={})", self.vs().theta(), self.vs().values().len())
    }
}

/// `alpha(n)` for any non-negative `n`.
#[pyfunction]
fn alpha(theta: &Bound<'_, PyAny>, n: BigUint) -> PyResult<BigUint> {
    let vs = ValueSequence::covering(&theta_arg(theta)?, &n).map_err(to_py)?;
    valhilbert::alpha_at(&vs, &n).map_err(to_py)
}

/// Subset-count evaluation of `alpha(n)`, independent of the recursion.
#[pyfunction]
fn alpha_bruteforce(theta: &Bound<'_, PyAny>, n: u64) -> PyResult<u64> {
    let vs = ValueSequence::covering(&theta_arg(theta)?, &BigUint::from(n)).map_err(to_py)?;
    valhilbert::alpha_bruteforce(&vs, n).map_err(to_py)
}

#[pyfunction]
fn epsilon(theta: &Bound<'_, PyAny>, i: usize) -> PyResult<BigRational> {
    epsilon_at(&theta_arg(theta)?, i).map(|e| e.value).map_err(to_py)
}

/// `N(eps)`: from this index on, every `epsilon_i` is below `eps`.
#[pyfunction]
fn threshold(theta: &Bound<'_, PyAny>, eps: BigRational) -> PyResult<usize> {
    epsilon_threshold(&theta_arg(theta)?, &eps).map_err(to_py)
}

/// Certificate JSON refuting the model, or `None` when inconclusive.
#[pyfunction]
#[pyo3(signature = (theta, degree, period, bound, cumulative = false))]
fn refute(
    theta: &Bound<'_, PyAny>,
    degree: usize,
    period: u64,
    bound: BigRational,
    cumulative: bool,
) -> PyResult<Option<String>> {
    let theta = theta_arg(theta)?;
    let stated = ModelCandidate::new(degree, period, bound).map_err(to_py)?;
    let candidate = if cumulative { difference_reduce(&stated) } else { stated };
    let upto = theta.exact_upto().unwrap_or(8).clamp(2, 8);
    let vs = build_value_sequence(&theta, upto).map_err(to_py)?;
    match valhilbert::refute(&vs, &candidate).map_err(to_py)? {
        RefutationOutcome::Refuted(cert) => Ok(Some(cert.to_json())),
        RefutationOutcome::Inconclusive { .. } => Ok(None),
    }
}

#[pyfunction]
fn verify_certificate(json: &str) -> PyResult<bool> {
    let cert = RefutationCertificate::from_json(json).map_err(to_py)?;
    valhilbert::verify_certificate(&cert).map_err(to_py)
}

/// `{"conductor", "u", "t", "square_bound"}`.
#[pyfunction]
fn conductor<'py>(py: Python<'py>, gens: Vec<u64>) -> PyResult<Bound<'py, PyDict>> {
    let w = valhilbert::conductor(&gens).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("conductor", w.conductor)?;
    d.set_item("u", w.u)?;
    d.set_item("t", w.t)?;
    d.set_item("square_bound", w.square_bound)?;
    Ok(d)
}

/// `(c, b, n1)` with `l(R/I_n) = c n + b` for `n >= n1`.
#[pyfunction]
fn eventual_linear(dims: Vec<u64>, residue_degree: u64) -> PyResult<(u64, i128, usize)> {
    let tail = valhilbert::semigroup::eventual_linear(&DimensionModel::new(dims, Some(residue_degree))).map_err(to_py)?;
    Ok((tail.c, tail.b, tail.n1))
}

#[pymodule(name = "valhilbert")]
fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTheta>()?;
    m.add_class::<PySequence>()?;
    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_bruteforce, m)?)?;
    m.add_function(wrap_pyfunction!(epsilon, m)?)?;
    m.add_function(wrap_pyfunction!(threshold, m)?)?;
    m.add_function(wrap_pyfunction!(refute, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(conductor, m)?)?;
    m.add_function(wrap_pyfunction!(eventual_linear, m)?)?;
    m.add("PrecisionError", m.py().get_type::<PrecisionError>())?;
    m.add("MalformedCertificate", m.py().get_type::<MalformedCertificate>())?;
    Ok(())
}
