//! Python bindings: fields, cyclotomic values, Selberg sums and the
//! verification suites. Reports come back as plain dicts.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyComplex;

use selberg_core::aevw::SeriesReading;
use selberg_core::selberg::family_poly;
use selberg_core::verify::{self, AevwGrid, FieldHeader, SeriesSpec};
use selberg_core::{CycFrac as CoreFrac, CycInt as CoreInt, Error, GaussContext, Poly};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (v.to_string(),))?.unbind())
}

/// An element of Z[ζ_N].
#[pyclass(name = "CycInt", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCycInt(CoreInt);

#[pymethods]
impl PyCycInt {
    /// N of the ring.
    #[getter]
    #[allow(non_snake_case)]
    fn N(&self) -> u64 {
        self.0.ring().n()
    }

    /// Coefficients on the power basis, as decimal strings.
    #[getter]
    fn coeffs(&self) -> Vec<String> {
        self.0.coeffs().iter().map(|c| c.to_string()).collect()
    }

    /// The value as an int when it is a rational integer, else None.
    fn as_integer(&self, py: Python<'_>) -> PyResult<Option<Py<PyAny>>> {
        match self.0.as_integer() {
            Some(v) => Ok(Some(py.import("builtins")?.call_method1("int", (v.to_string(),))?.unbind())),
            None => Ok(None),
        }
    }

    /// Image under ζ_N ↦ e^{2πiσ/N}.
    #[pyo3(signature = (sigma = 1))]
    fn embed<'py>(&self, py: Python<'py>, sigma: i64) -> Bound<'py, PyComplex> {
        let z = self.0.embed(sigma);
        PyComplex::from_doubles(py, z.re, z.im)
    }

    fn __add__(&self, o: &PyCycInt) -> PyResult<PyCycInt> {
        self.0.try_add(&o.0).map(PyCycInt).map_err(err)
    }

    fn __sub__(&self, o: &PyCycInt) -> PyResult<PyCycInt> {
        self.0.try_sub(&o.0).map(PyCycInt).map_err(err)
    }

    fn __mul__(&self, o: &PyCycInt) -> PyResult<PyCycInt> {
        self.0.try_mul(&o.0).map(PyCycInt).map_err(err)
    }

    fn __eq__(&self, o: &PyCycInt) -> bool {
        self.0 == o.0
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

/// A quotient of two elements of Z[ζ_N].
#[pyclass(name = "CycFrac", frozen)]
struct PyCycFrac(CoreFrac);

#[pymethods]
impl PyCycFrac {
    #[getter]
    fn num(&self) -> PyCycInt {
        PyCycInt(self.0.num.clone())
    }

    #[getter]
    fn den(&self) -> PyCycInt {
        PyCycInt(self.0.den.clone())
    }

    #[pyo3(signature = (sigma = 1))]
    fn embed<'py>(&self, py: Python<'py>, sigma: i64) -> Bound<'py, PyComplex> {
        let z = self.0.embed(sigma);
        PyComplex::from_doubles(py, z.re, z.im)
    }

    fn equals_int(&self, o: &PyCycInt) -> bool {
        self.0.equals_int(&o.0)
    }

    fn __eq__(&self, o: &PyCycFrac) -> bool {
        self.0.equals(&o.0)
    }

    fn __repr__(&self) -> String {
        format!("CycFrac({:?} / {:?})", self.0.num, self.0.den)
    }
}

/// F_q with its character group and the ring Z[ζ_N], N = p(q-1).
///
/// Polynomials are given as coefficient lists, lowest degree first, or in the
/// "c0,c1,..." string syntax.
#[pyclass(name = "Context", frozen)]
struct PyContext(GaussContext);

impl PyContext {
    fn poly(&self, r: &Bound<'_, PyAny>) -> PyResult<Poly> {
        let f = self.0.field();
        if let Ok(s) = r.extract::<String>() {
            return Poly::parse(f, &s).map_err(err);
        }
        let coeffs: Vec<i64> = r.extract()?;
        Ok(Poly::from_ints(f, &coeffs))
    }
}

#[pymethods]
impl PyContext {
    #[new]
    #[pyo3(signature = (p, e = 1, threads = None, budget = None))]
    fn new(p: u32, e: u32, threads: Option<usize>, budget: Option<u64>) -> PyResult<Self> {
        let mut ctx = GaussContext::new(p, e).map_err(err)?;
        if let Some(t) = threads {
            ctx = ctx.with_threads(t).map_err(err)?;
        }
        if let Some(b) = budget {
            ctx = ctx.with_budget(b).map_err(err)?;
        }
        Ok(PyContext(ctx))
    }

    #[getter]
    fn q(&self) -> u32 {
        self.0.q()
    }

    #[getter]
    #[allow(non_snake_case)]
    fn N(&self) -> u64 {
        self.0.n()
    }

    /// p, e, q, modulus, generator and N.
    fn info(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &serde_json::to_value(FieldHeader::of(&self.0)).expect("serializes"))
    }

    /// x^e0 (x-1)^e1 in coefficient syntax.
    fn family(&self, e0: u32, e1: u32) -> String {
        family_poly(&self.0, e0, e1).format(self.0.field())
    }

    fn gauss_sum(&self, chi: i64) -> PyCycInt {
        PyCycInt(self.0.gauss_sum(self.0.character(chi)))
    }

    fn jacobi_sum(&self, chi1: i64, chi2: i64) -> PyCycInt {
        PyCycInt(self.0.jacobi_sum(self.0.character(chi1), self.0.character(chi2)))
    }

    /// Se(r, χ₁, χ₂, i) by enumeration; χ is given by its exponent m, χ(g) = ζ^m.
    fn selberg(&self, r: &Bound<'_, PyAny>, chi1: i64, chi2: i64, i: i64) -> PyResult<PyCycInt> {
        let r = self.poly(r)?;
        self.0.selberg(&r, self.0.character(chi1), self.0.character(chi2), i).map(PyCycInt).map_err(err)
    }

    /// Closed form for the family x^e0 (x-1)^e1; returns (value, branch).
    fn closed_form(&self, e0: u32, e1: u32, chi1: i64, chi2: i64, i: usize) -> PyResult<(PyCycFrac, String)> {
        let p = self.0.classify(e0, e1, self.0.character(chi1), self.0.character(chi2));
        let (v, b) = self.0.closed_form(&p, i).map_err(err)?;
        let b = serde_json::to_value(b).expect("serializes").as_str().unwrap_or_default().to_string();
        Ok((PyCycFrac(v), b))
    }

    /// Predicted generating series Σ_l Se(i0 + l n) X^l as {"num": .., "den": ..}.
    fn predicted_series(&self, py: Python<'_>, e0: u32, e1: u32, chi1: i64, chi2: i64, i0: usize) -> PyResult<Py<PyAny>> {
        let p = self.0.classify(e0, e1, self.0.character(chi1), self.0.character(chi2));
        let (f, _) = self.0.predicted_series(&p, i0, SeriesReading::Consistent).map_err(err)?;
        to_py(py, &serde_json::to_value(f.to_json().map_err(err)?).expect("serializes"))
    }

    /// Window, rational fit and singularities of a generating series.
    #[pyo3(signature = (r, chi1, chi2, i0 = 0, length = 6, dmax_num = None, dmax_den = None))]
    #[allow(clippy::too_many_arguments)]
    fn series_analyze(
        &self,
        py: Python<'_>,
        r: &Bound<'_, PyAny>,
        chi1: i64,
        chi2: i64,
        i0: usize,
        length: usize,
        dmax_num: Option<usize>,
        dmax_den: Option<usize>,
    ) -> PyResult<Py<PyAny>> {
        let r = self.poly(r)?;
        let (dn, dd) = SeriesSpec::auto_degrees(length);
        let spec = SeriesSpec {
            r: r.format(self.0.field()),
            chi1,
            chi2,
            i0,
            len: length,
            dmax_num: dmax_num.unwrap_or(dn),
            dmax_den: dmax_den.unwrap_or(dd),
        };
        to_py(py, &verify::series_analyze(&self.0, &spec).map_err(err)?)
    }

    /// The χ₂ = 1 series and the checks on them.
    fn lseries(&self, py: Python<'_>, r: &Bound<'_, PyAny>, chi1: i64) -> PyResult<Py<PyAny>> {
        let r = self.poly(r)?;
        let rep = self.0.lseries_analyze(&r, self.0.character(chi1), None).map_err(err)?;
        to_py(py, &serde_json::to_value(rep).expect("serializes"))
    }

    /// Runs a verification suite on its default grid and returns the report.
    fn verify(&self, py: Python<'_>, suite: &str) -> PyResult<Py<PyAny>> {
        let c = &self.0;
        let rep = match suite {
            "pellet" => verify::pellet(c, 4),
            "gauss-jacobi" => verify::gauss_jacobi(c),
            "dh" => verify::dh(c, 3, &verify::default_dh_rs(c)),
            "anderson" => verify::anderson(c, 3, false),
            "stability" => verify::stability(c, &[1, 2], &verify::default_stability_rs(c), 4),
            "theorem1" => {
                let mut mats = verify::generator_matrices(c);
                mats.extend(verify::random_matrices(c, 10, 1));
                verify::theorem1(c, &mats, &verify::default_theorem1_rs(c), 4)
            }
            "aevw" => verify::aevw(c, &AevwGrid::standard(if c.q() > 11 { 4 } else { 5 })),
            other => return Err(PyValueError::new_err(format!("unknown suite {other:?}"))),
        }
        .map_err(err)?;
        to_py(py, &serde_json::to_value(&rep).expect("serializes"))
    }
}

#[pymodule]
fn selberg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyContext>()?;
    m.add_class::<PyCycInt>()?;
    m.add_class::<PyCycFrac>()?;
    Ok(())
}
