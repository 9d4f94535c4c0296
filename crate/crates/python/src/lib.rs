//! Python bindings: `import polygen`.
//!
//! Polynomials cross the boundary as `Poly` objects; rationals cross as
//! `"p/q"` strings (plain integers are accepted on input). Check reports are
//! returned as JSON text in the same shape the CLI emits.

use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use polygen::cli::{family_names, FamilyArgs, KernelKind};
use polygen::closedform::{self, ApostolKind, ChebyshevKind, CsKind, DicksonKind, KPart, NumberKind};
use polygen::exact::{parse_rational, Value, ValueJson};
use polygen::identities::{self, Bounds, CheckId, Suite};
use polygen::{CPoly, Convention, Error, MultiPoly, Rational, Var};

create_exception!(polygen, PolygenError, PyValueError, "Invalid input: usage, domain, range or arity error.");
create_exception!(polygen, SingularityError, PyArithmeticError, "A requested quantity has a pole.");
create_exception!(polygen, ConsistencyError, PyRuntimeError, "An internal consistency check failed.");

fn err(e: Error) -> PyErr {
    match e {
        Error::Singularity(m) => SingularityError::new_err(m),
        Error::Internal(m) => ConsistencyError::new_err(m),
        other => PolygenError::new_err(other.to_string()),
    }
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(i) = obj.extract::<i64>() {
        return Ok(Rational::from_integer(i.into()));
    }
    let s: String = obj.extract()?;
    parse_rational(&s).map_err(err)
}

fn var(name: &str) -> PyResult<Var> {
    name.parse().map_err(err)
}

/// An exact polynomial over the rationals, real or complex (`re + i*im`).
#[pyclass(name = "Poly", module = "polygen", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct Poly {
    value: Value,
}

impl Poly {
    fn real(p: MultiPoly) -> Self {
        Poly { value: Value::Real(p) }
    }

    fn complex(&self) -> CPoly {
        self.value.clone().into_complex()
    }

    fn combine(
        &self,
        other: &Poly,
        real: impl Fn(&MultiPoly, &MultiPoly) -> polygen::Result<MultiPoly>,
        cplx: impl Fn(&CPoly, &CPoly) -> polygen::Result<CPoly>,
    ) -> PyResult<Poly> {
        let value = match (&self.value, &other.value) {
            (Value::Real(a), Value::Real(b)) => Value::Real(real(a, b).map_err(err)?),
            _ => Value::Complex(cplx(&self.complex(), &other.complex()).map_err(err)?),
        };
        Ok(Poly { value })
    }

    fn map_parts(&self, f: impl Fn(&MultiPoly) -> polygen::Result<MultiPoly>) -> PyResult<Poly> {
        let value = match &self.value {
            Value::Real(p) => Value::Real(f(p).map_err(err)?),
            Value::Complex(c) => Value::Complex(c.try_map(f).map_err(err)?),
        };
        Ok(Poly { value })
    }
}

#[pymethods]
impl Poly {
    /// The integer or rational constant `c` (e.g. `Poly.constant("3/4")`).
    #[staticmethod]
    fn constant(c: &Bound<'_, PyAny>) -> PyResult<Poly> {
        Ok(Poly::real(MultiPoly::constant(rational(c)?)))
    }

    /// The alphabet symbol `name`: x, y, s, a, b, lambda, alpha, u1..u8.
    #[staticmethod]
    fn var(name: &str) -> PyResult<Poly> {
        Ok(Poly::real(MultiPoly::var(var(name)?)))
    }

    /// The imaginary unit.
    #[staticmethod]
    fn i() -> Poly {
        Poly { value: Value::Complex(CPoly::i()) }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Poly> {
        let j: ValueJson = serde_json::from_str(text).map_err(|e| PolygenError::new_err(e.to_string()))?;
        Ok(Poly { value: Value::try_from(&j).map_err(err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&ValueJson::from(&self.value)).map_err(|e| ConsistencyError::new_err(e.to_string()))
    }

    #[getter]
    fn is_complex(&self) -> bool {
        matches!(self.value, Value::Complex(_))
    }

    /// Real part.
    #[getter]
    fn re(&self) -> Poly {
        Poly::real(self.complex().re)
    }

    /// Imaginary part.
    #[getter]
    fn im(&self) -> Poly {
        Poly::real(self.complex().im)
    }

    fn conj(&self) -> Poly {
        match &self.value {
            Value::Real(_) => self.clone(),
            Value::Complex(c) => Poly { value: Value::Complex(c.conj()) },
        }
    }

    /// The value as a `"p/q"` string if the polynomial is constant and real.
    fn as_constant(&self) -> Option<String> {
        match &self.value {
            Value::Real(p) => p.as_constant().map(|c| c.to_string()),
            Value::Complex(c) => c.as_constant().map(|c| c.to_string()),
        }
    }

    fn partial(&self, name: &str) -> PyResult<Poly> {
        let v = var(name)?;
        self.map_parts(|p| p.partial(v))
    }

    /// Replaces the symbol `name` by the real polynomial `value`.
    fn substitute(&self, name: &str, value: &Poly) -> PyResult<Poly> {
        let v = var(name)?;
        let q = match &value.value {
            Value::Real(q) => q.clone(),
            Value::Complex(_) => return Err(PolygenError::new_err("substitution value must be real")),
        };
        self.map_parts(|p| p.substitute(v, &q))
    }

    /// Image in the ring where `s^2 = 1 - x^2`.
    fn reduce_s(&self) -> PyResult<Poly> {
        self.map_parts(|p| Ok(p.reduce_s()))
    }

    fn __add__(&self, other: &Poly) -> PyResult<Poly> {
        self.combine(other, |a, b| a.try_add(b), |a, b| a.try_add(b))
    }

    fn __sub__(&self, other: &Poly) -> PyResult<Poly> {
        self.combine(other, |a, b| a.try_sub(b), |a, b| a.try_sub(b))
    }

    fn __mul__(&self, other: &Poly) -> PyResult<Poly> {
        self.combine(other, |a, b| a.try_mul(b), |a, b| a.try_mul(b))
    }

    fn __neg__(&self) -> PyResult<Poly> {
        let m1 = Rational::from_integer((-1).into());
        self.map_parts(|p| Ok(p.scale(&m1)))
    }

    fn __pow__(&self, e: u32, _modulo: Option<u32>) -> Poly {
        let value = match &self.value {
            Value::Real(p) => Value::Real(p.pow(e)),
            Value::Complex(c) => Value::Complex(c.pow(e)),
        };
        Poly { value }
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{DefaultHasher, Hash, Hasher};
        let mut h = DefaultHasher::new();
        self.value.canonical_string().hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.value.canonical_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.value.canonical_string())
    }
}

fn family_args(family: &str, params: Option<&Bound<'_, PyDict>>) -> PyResult<FamilyArgs> {
    let mut a = FamilyArgs::named(family);
    if let Some(params) = params {
        for (k, v) in params.iter() {
            let key: String = k.extract()?;
            match key.as_str() {
                "k" => a.k = Some(v.extract()?),
                "j" => a.j = Some(v.extract()?),
                "r" => a.r = Some(v.extract()?),
                "z" => a.z = Some(v.extract()?),
                "lambda" | "lam" => a.lambda = Some(rational(&v)?),
                "alpha" => a.alpha = Some(rational(&v)?),
                "a" => a.a = Some(rational(&v)?),
                "b" => a.b = Some(rational(&v)?),
                "kernel" => {
                    let s: String = v.extract()?;
                    a.kernel = Some(match s.as_str() {
                        "bernoulli" => KernelKind::Bernoulli,
                        "euler" => KernelKind::Euler,
                        other => return Err(PolygenError::new_err(format!("unknown kernel `{other}`"))),
                    });
                }
                other => return Err(PolygenError::new_err(format!("unknown parameter `{other}`"))),
            }
        }
    }
    Ok(a)
}

/// Canonical family names accepted by `expand`, `table` and `series`.
#[pyfunction]
fn families() -> Vec<&'static str> {
    family_names().collect()
}

/// Member `n` of a family from its explicit formula, e.g.
/// `expand("apostol-bernoulli", 3, k=2, lam="1/2")`.
#[pyfunction]
#[pyo3(signature = (family, n, **params))]
fn expand(family: &str, n: usize, params: Option<&Bound<'_, PyDict>>) -> PyResult<Poly> {
    let fam = family_args(family, params)?.resolve().map_err(err)?;
    Ok(Poly { value: fam.value(n).map_err(err)? })
}

/// Members `n_lo..=n_hi` of a family.
#[pyfunction]
#[pyo3(signature = (family, n_lo, n_hi, **params))]
fn table(family: &str, n_lo: usize, n_hi: usize, params: Option<&Bound<'_, PyDict>>) -> PyResult<Vec<Poly>> {
    if n_lo > n_hi {
        return Err(PolygenError::new_err(format!("empty range {n_lo}..{n_hi}")));
    }
    let fam = family_args(family, params)?.resolve().map_err(err)?;
    let values = fam.values(n_lo..=n_hi).map_err(err)?;
    Ok(values.into_iter().map(|value| Poly { value }).collect())
}

/// The family's generating function to `order`: `(convention, coeffs)` where
/// `coeffs[n]` is the n-th family member (`"egf"`) or t^n coefficient (`"ogf"`).
#[pyfunction]
#[pyo3(signature = (family, order, **params))]
fn series(family: &str, order: usize, params: Option<&Bound<'_, PyDict>>) -> PyResult<(&'static str, Vec<Poly>)> {
    let fam = family_args(family, params)?.resolve().map_err(err)?;
    let s = fam.series(order).map_err(err)?;
    let conv = match s.convention() {
        Convention::Egf => "egf",
        Convention::Ogf => "ogf",
    };
    let coeffs = (0..=order)
        .map(|n| s.egf_coeff(n).map(|value| Poly { value }))
        .collect::<polygen::Result<Vec<_>>>()
        .map_err(err)?;
    Ok((conv, coeffs))
}

/// `C_n` (`kind="C"`) or `S_n` (`kind="S"`), the parts of `(x + iy)^n`.
#[pyfunction]
fn cs_poly(kind: &str, n: usize) -> PyResult<Poly> {
    let k = match kind {
        "C" | "c" => CsKind::C,
        "S" | "s" => CsKind::S,
        _ => return Err(PolygenError::new_err("kind must be 'C' or 'S'")),
    };
    Ok(Poly::real(closedform::cs_poly(k, n)))
}

/// `T_n(x)` for `kind="T"`, `U_{n-1}(x)` for `kind="U"` (n >= 1).
#[pyfunction]
fn chebyshev(kind: &str, n: usize) -> PyResult<Poly> {
    let k = match kind {
        "T" | "t" => ChebyshevKind::T,
        "U" | "u" => ChebyshevKind::U,
        _ => return Err(PolygenError::new_err("kind must be 'T' or 'U'")),
    };
    Ok(Poly::real(closedform::chebyshev(k, n).map_err(err)?))
}

/// Dickson `D_n(x, alpha)` (`kind="D"`) or `E_n(x, alpha)` (`kind="E"`).
#[pyfunction]
#[pyo3(signature = (kind, n, alpha = None))]
fn dickson(kind: &str, n: usize, alpha: Option<&Bound<'_, PyAny>>) -> PyResult<Poly> {
    let k = match kind {
        "D" | "d" => DicksonKind::D,
        "E" | "e" => DicksonKind::E,
        _ => return Err(PolygenError::new_err("kind must be 'D' or 'E'")),
    };
    let alpha = alpha.map(rational).transpose()?.unwrap_or_else(|| Rational::from_integer(1.into()));
    Ok(Poly::real(closedform::dickson(k, n, &alpha)))
}

#[pyfunction]
fn gould_hopper(n: usize, j: usize) -> PyResult<Poly> {
    Ok(Poly::real(closedform::gould_hopper(n, j).map_err(err)?))
}

#[pyfunction]
fn hermite_gen(n: usize, r: usize) -> PyResult<Poly> {
    Ok(Poly::real(closedform::hermite_gen(n, r).map_err(err)?))
}

/// `k1`, `k2` or the complex `K` polynomial (`part` in {"k1", "k2", "K"}).
#[pyfunction]
fn kpoly(part: &str, n: usize, r: usize) -> PyResult<Poly> {
    let p = match part {
        "k1" => KPart::K1,
        "k2" => KPart::K2,
        "K" | "k" => KPart::K,
        _ => return Err(PolygenError::new_err("part must be 'k1', 'k2' or 'K'")),
    };
    Ok(Poly { value: closedform::kpoly(p, n, r).map_err(err)? })
}

/// `(x + iy)^n`, or its conjugate.
#[pyfunction]
#[pyo3(signature = (n, conjugate = false))]
fn npoly(n: usize, conjugate: bool) -> Poly {
    Poly { value: Value::Complex(closedform::npoly(n, conjugate)) }
}

/// Apostol-Bernoulli (`kind="B"`) or Apostol-Euler (`kind="E"`) polynomial
/// of order `k` and parameter `lam`.
#[pyfunction]
#[pyo3(signature = (kind, n, k, lam = None))]
fn apostol(kind: &str, n: usize, k: i64, lam: Option<&Bound<'_, PyAny>>) -> PyResult<Poly> {
    let kk = match kind {
        "B" | "b" => ApostolKind::B,
        "E" | "e" => ApostolKind::E,
        _ => return Err(PolygenError::new_err("kind must be 'B' or 'E'")),
    };
    let lam = lam.map(rational).transpose()?.unwrap_or_else(|| Rational::from_integer(1.into()));
    Ok(Poly::real(closedform::apostol(kk, n, k, &lam).map_err(err)?))
}

/// Bernoulli, Euler or Stirling-second-kind numbers as `"p/q"` strings.
#[pyfunction]
#[pyo3(signature = (kind, n, k = 0))]
fn number_seq(kind: &str, n: usize, k: usize) -> PyResult<String> {
    let kk = match kind {
        "bernoulli" => NumberKind::Bernoulli,
        "euler" => NumberKind::Euler,
        "stirling2" => NumberKind::Stirling2,
        _ => return Err(PolygenError::new_err("kind must be 'bernoulli', 'euler' or 'stirling2'")),
    };
    Ok(closedform::number_seq(kk, n, k).map_err(err)?.to_string())
}

/// Identifiers of every executable identity check.
#[pyfunction]
fn check_ids() -> Vec<&'static str> {
    CheckId::ALL.iter().map(|c| c.name()).collect()
}

/// Runs one identity check and returns its JSON report.
#[pyfunction]
#[pyo3(signature = (id, n_max = None, r_max = None, z_max = None))]
fn run_check(id: &str, n_max: Option<usize>, r_max: Option<usize>, z_max: Option<usize>) -> PyResult<String> {
    let id: CheckId = id.parse().map_err(err)?;
    let report = identities::run_check(id, &Bounds { n_max, r_max, z_max }).map_err(err)?;
    serde_json::to_string(&report).map_err(|e| ConsistencyError::new_err(e.to_string()))
}

/// Runs a suite and returns a JSON array of reports in catalog order.
#[pyfunction]
#[pyo3(signature = (suite = "all", n_max = None, r_max = None, z_max = None))]
fn run_suite(suite: &str, n_max: Option<usize>, r_max: Option<usize>, z_max: Option<usize>) -> PyResult<String> {
    let suite: Suite = suite.parse().map_err(err)?;
    let reports = identities::run_suite(suite, &Bounds { n_max, r_max, z_max }).map_err(err)?;
    serde_json::to_string(&reports).map_err(|e| ConsistencyError::new_err(e.to_string()))
}

#[pymodule]
#[pyo3(name = "polygen")]
fn polygen_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<Poly>()?;
    m.add("PolygenError", py.get_type::<PolygenError>())?;
    m.add("SingularityError", py.get_type::<SingularityError>())?;
    m.add("ConsistencyError", py.get_type::<ConsistencyError>())?;
    m.add_function(wrap_pyfunction!(families, m)?)?;
    m.add_function(wrap_pyfunction!(expand, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(series, m)?)?;
    m.add_function(wrap_pyfunction!(cs_poly, m)?)?;
    m.add_function(wrap_pyfunction!(chebyshev, m)?)?;
    m.add_function(wrap_pyfunction!(dickson, m)?)?;
    m.add_function(wrap_pyfunction!(gould_hopper, m)?)?;
    m.add_function(wrap_pyfunction!(hermite_gen, m)?)?;
    m.add_function(wrap_pyfunction!(kpoly, m)?)?;
    m.add_function(wrap_pyfunction!(npoly, m)?)?;
    m.add_function(wrap_pyfunction!(apostol, m)?)?;
    m.add_function(wrap_pyfunction!(number_seq, m)?)?;
    m.add_function(wrap_pyfunction!(check_ids, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
