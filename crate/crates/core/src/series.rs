//! Generating series Σ_{i ≡ i₀ (n)} Se(r, χ₁, χ₂, i) T^{(i-i₀)/n}: coefficient
//! windows, exact Padé fits, numeric singularities and the χ₂ = 1 L-series.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use serde::Serialize;

use crate::chars::MulCharacter;
use crate::context::GaussContext;
use crate::cyclo::{CycFrac, CycInt, CycIntJson};
use crate::error::{Error, Result};
use crate::poly::{conductor_support, factor, Poly, RationalFunc};
use crate::selberg::Weighting;

/// Se values at i = i₀ + ℓn for ℓ = 0..len.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeriesWindow {
    pub i0: usize,
    pub n: usize,
    pub coeffs: Vec<CycInt>,
}

impl PowerSeriesWindow {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the ℓ-th coefficient.
    pub fn degree(&self, l: usize) -> usize {
        self.i0 + l * self.n
    }
}

/// num(X) / den(X) with den(0) ≠ 0.
#[derive(Clone, Debug)]
pub struct RationalFn {
    pub num: Vec<CycFrac>,
    pub den: Vec<CycFrac>,
}

fn trim(v: &mut Vec<CycFrac>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl RationalFn {
    pub fn new(mut num: Vec<CycFrac>, mut den: Vec<CycFrac>) -> Result<RationalFn> {
        if den.first().is_none_or(|c| c.is_zero()) {
            return Err(Error::Precondition("denominator needs a nonzero constant term".into()));
        }
        if num.is_empty() {
            num.push(CycFrac::zero(den[0].ring()));
        }
        trim(&mut num);
        trim(&mut den);
        Ok(RationalFn { num, den })
    }

    pub fn from_ints(num: Vec<CycInt>, den: Vec<CycInt>) -> Result<RationalFn> {
        RationalFn::new(num.into_iter().map(CycFrac::from_int).collect(), den.into_iter().map(CycFrac::from_int).collect())
    }

    pub fn num_degree(&self) -> usize {
        self.num.len() - 1
    }

    pub fn den_degree(&self) -> usize {
        self.den.len() - 1
    }

    /// Integral numerator and denominator with the same quotient: every
    /// coefficient is multiplied by the product of the distinct denominators.
    pub fn to_integral(&self) -> Result<(Vec<CycInt>, Vec<CycInt>)> {
        let mut dens: Vec<CycInt> = Vec::new();
        for c in self.num.iter().chain(&self.den) {
            if !c.den.is_one() && !dens.contains(&c.den) {
                dens.push(c.den.clone());
            }
        }
        let clear = |c: &CycFrac| -> Result<CycInt> {
            let mut acc = c.num.clone();
            for d in &dens {
                if *d != c.den {
                    acc = acc.try_mul(d)?;
                }
            }
            Ok(acc)
        };
        let num = self.num.iter().map(clear).collect::<Result<Vec<_>>>()?;
        let den = self.den.iter().map(clear).collect::<Result<Vec<_>>>()?;
        Ok((num, den))
    }

    /// First `count` Taylor coefficients at X = 0.
    pub fn taylor(&self, count: usize) -> Result<Vec<CycFrac>> {
        let (num, den) = self.to_integral()?;
        let ring = den[0].ring().clone();
        // u_k = c_k D₀^{k+1} satisfies u_k = D₀^k N_k - Σ_j D_j D₀^{j-1} u_{k-j}.
        let d0 = &den[0];
        let mut d0_pows = vec![ring.one()];
        for _ in 0..=count {
            let next = d0_pows.last().unwrap().try_mul(d0)?;
            d0_pows.push(next);
        }
        let mut u: Vec<CycInt> = Vec::with_capacity(count);
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            let mut acc = match num.get(k) {
                Some(nk) => d0_pows[k].try_mul(nk)?,
                None => ring.zero(),
            };
            for j in 1..den.len().min(k + 1) {
                let term = den[j].try_mul(&d0_pows[j - 1])?.try_mul(&u[k - j])?;
                acc = acc.try_sub(&term)?;
            }
            out.push(CycFrac::new(acc.clone(), d0_pows[k + 1].clone())?);
            u.push(acc);
        }
        Ok(out)
    }

    /// True iff the Taylor expansion reproduces every window coefficient.
    pub fn matches(&self, coeffs: &[CycInt]) -> Result<bool> {
        let t = self.taylor(coeffs.len())?;
        Ok(t.iter().zip(coeffs).all(|(a, b)| a.equals_int(b)))
    }

    /// Same function: num·den' = num'·den as polynomials.
    pub fn equivalent(&self, o: &RationalFn) -> Result<bool> {
        let lhs = poly_mul_frac(&self.num, &o.den)?;
        let rhs = poly_mul_frac(&o.num, &self.den)?;
        Ok(poly_eq(&lhs, &rhs))
    }

    /// Denominators agree up to a constant factor.
    pub fn same_denominator(&self, o: &RationalFn) -> Result<bool> {
        if self.den.len() != o.den.len() {
            return Ok(false);
        }
        for (a, b) in self.den.iter().zip(&o.den) {
            if !a.try_mul(&o.den[0])?.equals(&b.try_mul(&self.den[0])?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Denominator coefficients in one complex embedding.
    pub fn den_embedded(&self, sigma: i64) -> Vec<Complex64> {
        self.den.iter().map(|c| c.embed(sigma)).collect()
    }

    pub fn to_json(&self) -> Result<RationalFnJson> {
        let (num, den) = self.to_integral()?;
        Ok(RationalFnJson { num: num.iter().map(CycInt::to_json).collect(), den: den.iter().map(CycInt::to_json).collect() })
    }
}

/// Integral numerator and denominator coefficient lists.
#[derive(Clone, Debug, Serialize)]
pub struct RationalFnJson {
    pub num: Vec<CycIntJson>,
    pub den: Vec<CycIntJson>,
}

fn poly_mul_frac(a: &[CycFrac], b: &[CycFrac]) -> Result<Vec<CycFrac>> {
    crate::aevw::poly_mul(a, b)
}

fn poly_eq(a: &[CycFrac], b: &[CycFrac]) -> bool {
    let len = a.len().max(b.len());
    (0..len).all(|k| match (a.get(k), b.get(k)) {
        (Some(x), Some(y)) => x.equals(y),
        (Some(x), None) | (None, Some(x)) => x.is_zero(),
        (None, None) => true,
    })
}

/// Determinant by cofactor expansion along the first row.
fn det(m: &[Vec<CycInt>]) -> Result<CycInt> {
    match m.len() {
        0 => Err(Error::Precondition("empty matrix".into())),
        1 => Ok(m[0][0].clone()),
        size => {
            let mut acc = m[0][0].ring().zero();
            for col in 0..size {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<CycInt>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = m[0][col].try_mul(&det(&minor)?)?;
                acc = if col % 2 == 0 { acc.try_add(&term)? } else { acc.try_sub(&term)? };
            }
            Ok(acc)
        }
    }
}

/// Padé fit with numerator degree dn and denominator degree dd, using every
/// remaining coefficient for validation. None if the system is singular or
/// the fit is inconsistent.
fn pade(c: &[CycInt], dn: usize, dd: usize) -> Result<Option<RationalFn>> {
    let ring = c[0].ring().clone();
    let at = |k: isize| if k < 0 { ring.zero() } else { c[k as usize].clone() };
    let den: Vec<CycInt> = if dd == 0 {
        vec![ring.one()]
    } else {
        // Σ_{j=0}^{dd} b_j c_{k-j} = 0 for k = dn+1..=dn+dd, solved by Cramer with b₀ = det.
        let rows: Vec<isize> = (dn + 1..=dn + dd).map(|k| k as isize).collect();
        let m: Vec<Vec<CycInt>> = rows.iter().map(|&k| (1..=dd).map(|j| at(k - j as isize)).collect()).collect();
        let b0 = det(&m)?;
        if b0.is_zero() {
            return Ok(None);
        }
        let mut den = vec![b0];
        for col in 0..dd {
            let mj: Vec<Vec<CycInt>> = m
                .iter()
                .zip(&rows)
                .map(|(row, &k)| {
                    let mut row = row.clone();
                    row[col] = -at(k);
                    row
                })
                .collect();
            den.push(det(&mj)?);
        }
        den
    };
    let conv = |k: usize| -> Result<CycInt> {
        let mut acc = ring.zero();
        for (j, b) in den.iter().enumerate().take(k + 1) {
            acc = acc.try_add(&b.try_mul(&c[k - j])?)?;
        }
        Ok(acc)
    };
    let num = (0..=dn).map(conv).collect::<Result<Vec<_>>>()?;
    for k in dn + 1..c.len() {
        if !conv(k)?.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(RationalFn::from_ints(num, den)?))
}

/// Smallest-degree rational function (total degree first, then denominator
/// degree) with num ≤ dmax_num, den ≤ dmax_den reproducing the window.
pub fn rational_reconstruct(window: &PowerSeriesWindow, dmax_num: usize, dmax_den: usize) -> Result<Option<RationalFn>> {
    if window.len() < dmax_num + dmax_den + 2 {
        return Err(Error::Precondition(format!(
            "window of length {} is too short for degrees ({dmax_num}, {dmax_den}); need {}",
            window.len(),
            dmax_num + dmax_den + 2
        )));
    }
    for total in 0..=dmax_num + dmax_den {
        for dd in 0..=total.min(dmax_den) {
            let dn = total - dd;
            if dn > dmax_num {
                continue;
            }
            if let Some(fit) = pade(&window.coeffs, dn, dd)? {
                return Ok(Some(fit));
            }
        }
    }
    Ok(None)
}

/// Roots of a complex polynomial (lowest coefficient first) from the
/// eigenvalues of its companion matrix.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.len() > 1 && c.last().is_some_and(|v| v.norm() == 0.0) {
        c.pop();
    }
    let d = c.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let lead = c[d];
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..d {
        m[(i, d - 1)] = -c[i] / lead;
    }
    let schur = m.schur();
    let (_, t) = schur.unpack();
    (0..d).map(|i| t[(i, i)]).collect()
}

/// A root with its multiplicity.
#[derive(Clone, Debug, Serialize)]
pub struct Singularity {
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    pub multiplicity: usize,
    /// log_q |root|
    pub log_q_abs: f64,
}

/// Groups numerically close roots; repeated roots split at about eps^{1/m}.
pub fn cluster_roots(roots: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for &r in roots {
        match groups.iter_mut().find(|g| (g[0] - r).norm() <= tol * r.norm().max(1.0)) {
            Some(g) => g.push(r),
            None => groups.push(vec![r]),
        }
    }
    let mut out: Vec<(Complex64, usize)> = groups
        .into_iter()
        .map(|g| {
            let k = g.len();
            (g.iter().sum::<Complex64>() / k as f64, k)
        })
        .collect();
    out.sort_by(|a, b| a.0.norm().total_cmp(&b.0.norm()).then(a.0.arg().total_cmp(&b.0.arg())));
    out
}

/// The claim that there is at most one singularity in |T| < q^{-n/2}, simple
/// and at the expected point.
#[derive(Clone, Debug, Serialize)]
pub struct LocationCheck {
    pub expected_re: f64,
    pub expected_im: f64,
    pub roots_inside: usize,
    /// None when no root lies inside.
    pub at_expected: Option<bool>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularityReport {
    pub embedding: i64,
    pub q: u32,
    pub n: u32,
    /// q^{-n/2}
    pub half_radius: f64,
    pub roots: Vec<Singularity>,
    pub location: Option<LocationCheck>,
}

/// Roots of the denominator in embedding σ. With `expected`, also checks that
/// exactly one simple root lies in |T| < q^{-n/2} and that it is the given point.
pub fn singularity_report(fun: &RationalFn, q: u32, n: u32, sigma: i64, expected: Option<&CycFrac>) -> Result<SingularityReport> {
    if fun.den_degree() == 0 {
        return Err(Error::Precondition("denominator is constant".into()));
    }
    let roots = cluster_roots(&complex_roots(&fun.den_embedded(sigma)), 1e-4);
    let lq = (q as f64).ln();
    let half_radius = (q as f64).powf(-(n as f64) / 2.0);
    let singular: Vec<Singularity> = roots
        .iter()
        .map(|(r, k)| Singularity { re: r.re, im: r.im, abs: r.norm(), multiplicity: *k, log_q_abs: r.norm().ln() / lq })
        .collect();
    let location = expected.map(|e| {
        let z = e.embed(sigma);
        let inside: Vec<&Singularity> = singular.iter().filter(|s| s.abs < half_radius * (1.0 - 1e-9)).collect();
        let count = inside.iter().map(|s| s.multiplicity).sum();
        let at_expected = (count == 1).then(|| (Complex64::new(inside[0].re, inside[0].im) - z).norm() <= 1e-6 * z.norm().max(1.0));
        let holds = count == 0 || at_expected == Some(true);
        LocationCheck { expected_re: z.re, expected_im: z.im, roots_inside: count, at_expected, holds }
    });
    Ok(SingularityReport { embedding: sigma, q, n, half_radius, roots: singular, location })
}

impl GaussContext {
    /// Se(r, χ₁, χ₂, i₀ + ℓn) for ℓ < count, n = ord(χ₂).
    pub fn series_coeffs(&self, r: &Poly, chi1: MulCharacter, chi2: MulCharacter, i0: usize, count: usize) -> Result<PowerSeriesWindow> {
        let n = chi2.order() as usize;
        if count > 0 {
            self.check_budget(i0 + (count - 1) * n)?;
        }
        let coeffs = (0..count).map(|l| self.selberg(r, chi1, chi2, (i0 + l * n) as i64)).collect::<Result<Vec<_>>>()?;
        Ok(PowerSeriesWindow { i0, n, coeffs })
    }

    /// q^{-1}(-τ(χ₂^{-1}))^{-n}.
    pub fn expected_singularity(&self, chi2: MulCharacter) -> Result<CycFrac> {
        let n = chi2.order() as u64;
        let num = if n.is_multiple_of(2) { self.ring().one() } else { -self.ring().one() };
        CycFrac::new(num, self.tau(chi2.inv()).pow(n).scale(self.q() as i64))
    }

    /// Σ_{deg c = i} χ₁(r/c) over monic c (no Möbius weight).
    pub fn lseries_coeff(&self, r: &Poly, chi1: MulCharacter, i: usize) -> Result<CycInt> {
        let rf = RationalFunc::from_poly(self.field(), r.clone());
        let prof = self.profile(&rf, i, Weighting::Unit, false)?;
        Ok(prof.evaluate(self, chi1, self.character(0)))
    }

    /// Both coefficient sequences of the χ₂ = 1 series and the checks on them.
    pub fn lseries_analyze(&self, r: &Poly, chi1: MulCharacter, max_degree: Option<usize>) -> Result<LSeriesReport> {
        let f = self.field();
        if r.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let n1 = chi1.order();
        let modulus = factor(f, r)?.factors.iter().fold(Poly::one(f), |acc, (pi, _)| acc.mul(f, pi));
        let r0 = conductor_support(f, r, n1)?;
        let deg_mod = modulus.degree();
        let deg_r0 = r0.degree();
        let principal = deg_r0 == 0;
        let primitive = !principal && deg_mod == deg_r0;
        let even = chi1.pow(r.degree() as i64).is_trivial();
        let top = max_degree.unwrap_or(deg_mod + 2);
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut computed = 0;
        for i in 0..=top {
            if self.check_budget(i).is_err() {
                break;
            }
            a.push(self.lseries_coeff(r, chi1, i)?);
            b.push(self.selberg(r, chi1, self.character(0), i as i64)?);
            computed = i;
        }
        let vanish = |s: &[CycInt]| -> Option<usize> {
            let last = s.iter().rposition(|v| !v.is_zero());
            match last {
                Some(k) if k + 1 == s.len() => None,
                Some(k) => Some(k + 1),
                None => Some(0),
            }
        };
        // Σb·Σa truncated
        let ring = self.ring();
        let mut product = Vec::new();
        for k in 0..a.len() {
            let mut acc = ring.zero();
            for j in 0..=k {
                acc = acc.try_add(&a[j].try_mul(&b[k - j])?)?;
            }
            product.push(acc);
        }
        let product_is_one = product.iter().enumerate().all(|(k, v)| if k == 0 { v.is_one() } else { v.is_zero() });

        let primes: Vec<usize> = factor(f, &modulus)?.factors.iter().map(|(p, _)| p.degree()).collect();
        let principal_forms = if principal {
            let q = BigInt::from(self.q());
            let len = b.len();
            // ∏(1 - T^d) and 1/∏(1 - T^d) as integer series
            let mut prod = vec![BigInt::from(0); len];
            prod[0] = BigInt::from(1);
            let mut quot = prod.clone();
            for &d in &primes {
                for k in (d..len).rev() {
                    let v = prod[k - d].clone();
                    prod[k] -= v;
                }
                for k in d..len {
                    let v = quot[k - d].clone();
                    quot[k] += v;
                }
            }
            let times_linear = |s: &[BigInt]| -> Vec<BigInt> {
                (0..len).map(|k| if k == 0 { s[0].clone() } else { &s[k] - &q * &s[k - 1] }).collect()
            };
            let matches = |s: &[BigInt]| b.iter().zip(s).all(|(x, y)| *x == ring.from_int(y.clone()));
            let (p_series, q_series) = (times_linear(&prod), times_linear(&quot));
            Some(PrincipalForms { product_matches: matches(&p_series), quotient_matches: matches(&q_series) })
        } else {
            None
        };

        let weil = if principal {
            None
        } else {
            let poly_top = a.iter().rposition(|v| !v.is_zero()).unwrap_or(0);
            let complete = computed >= deg_mod;
            let mut embeddings = Vec::new();
            let mut all_hold = complete;
            let mut literal = complete;
            for sigma in self.embeddings() {
                let coeffs: Vec<Complex64> = a[..=poly_top].iter().map(|c| c.embed(sigma)).collect();
                let inv: Vec<f64> = complex_roots(&coeffs).iter().map(|z| 1.0 / z.norm()).collect();
                let sq = (self.q() as f64).sqrt();
                let mut trivial = 0;
                let mut ok = true;
                for &m in &inv {
                    if (m - sq).abs() <= 1e-6 * sq {
                        continue;
                    }
                    literal = false;
                    if even && (m - 1.0).abs() <= 1e-6 && trivial == 0 {
                        trivial += 1;
                        continue;
                    }
                    ok = false;
                }
                if primitive {
                    all_hold &= ok;
                }
                let mut mags = inv;
                mags.sort_by(f64::total_cmp);
                embeddings.push(WeilEmbedding { embedding: sigma, inverse_root_abs: mags, holds: ok });
            }
            Some(WeilReport {
                degree: poly_top,
                holds: primitive.then_some(all_hold),
                literal_holds: primitive.then_some(literal),
                embeddings,
            })
        };

        let family = family_exponents(self, r)?;
        let a1_jacobi = match (family, a.get(1)) {
            (Some((e0, e1)), Some(a1)) if e0 > 0 && e1 > 0 => {
                let sign = if e1 % 2 == 1 { self.char_sign(chi1) } else { 1 };
                let j = self.jacobi_sum(chi1.pow(e0 as i64), chi1.pow(e1 as i64)).scale(sign);
                Some(*a1 == j)
            }
            _ => None,
        };
        Ok(LSeriesReport {
            r: r.format(f),
            chi1: chi1.exponent(),
            chi1_order: n1,
            modulus: modulus.format(f),
            conductor: r0.format(f),
            deg_modulus: deg_mod,
            deg_conductor: deg_r0,
            principal,
            primitive,
            even,
            max_degree: computed,
            a: a.iter().map(CycInt::to_json).collect(),
            b: b.iter().map(CycInt::to_json).collect(),
            a_vanishes_from: vanish(&a),
            b_vanishes_from: vanish(&b),
            product_is_one,
            principal_forms,
            weil,
            a1_jacobi,
        })
    }
}

/// (e₀, e₁) when r = x^{e₀}(x-1)^{e₁}.
pub fn family_exponents(ctx: &GaussContext, r: &Poly) -> Result<Option<(u32, u32)>> {
    let f = ctx.field();
    if r.degree() == 0 || !r.is_monic(f) {
        return Ok(None);
    }
    let x = Poly::x(f);
    let x1 = Poly::from_ints(f, &[-1, 1]);
    let (mut e0, mut e1) = (0, 0);
    for (pi, e) in &factor(f, r)?.factors {
        if *pi == x {
            e0 = *e;
        } else if *pi == x1 {
            e1 = *e;
        } else {
            return Ok(None);
        }
    }
    Ok(Some((e0, e1)))
}

#[derive(Clone, Debug, Serialize)]
pub struct PrincipalForms {
    /// Σb = (1 - qT)∏(1 - T^{deg π})
    pub product_matches: bool,
    /// Σb = (1 - qT)/∏(1 - T^{deg π})
    pub quotient_matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeilEmbedding {
    pub embedding: i64,
    pub inverse_root_abs: Vec<f64>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeilReport {
    /// Degree of Σ a_i T^i.
    pub degree: usize,
    /// All inverse roots of magnitude √q (one trivial root 1 allowed for even
    /// symbols); None unless the symbol is primitive.
    pub holds: Option<bool>,
    /// Every inverse root of magnitude √q, with no exception for even symbols.
    pub literal_holds: Option<bool>,
    pub embeddings: Vec<WeilEmbedding>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LSeriesReport {
    pub r: String,
    pub chi1: u32,
    pub chi1_order: u32,
    /// rad(r)
    pub modulus: String,
    /// Primes of r whose multiplicity is not divisible by ord(χ₁).
    pub conductor: String,
    pub deg_modulus: usize,
    pub deg_conductor: usize,
    pub principal: bool,
    pub primitive: bool,
    /// χ₁^{deg r} trivial: the symbol is trivial on constants.
    pub even: bool,
    pub max_degree: usize,
    /// Σ_{deg c = i} χ₁(r/c)
    pub a: Vec<CycIntJson>,
    /// Se(r, χ₁, 1, i)
    pub b: Vec<CycIntJson>,
    /// Smallest d with all computed coefficients from degree d on zero.
    pub a_vanishes_from: Option<usize>,
    pub b_vanishes_from: Option<usize>,
    pub product_is_one: bool,
    pub principal_forms: Option<PrincipalForms>,
    pub weil: Option<WeilReport>,
    /// a₁ = χ₁(-1)^{e₁} J(χ₁^{e₀}, χ₁^{e₁}) for r = x^{e₀}(x-1)^{e₁}.
    pub a1_jacobi: Option<bool>,
}
