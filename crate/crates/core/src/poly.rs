//! Polynomials over F_q: arithmetic, resultants, discriminants, factorization
//! by trial division, the Möbius function and rankable monic enumeration.

use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::ff::{Field, FieldElement};

/// A polynomial over F_q, lowest degree first, trailing zeros stripped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    pub(crate) coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field.one())
    }

    /// The monomial x.
    pub fn x(field: &Field) -> Poly {
        Poly { coeffs: vec![field.zero(), field.one()] }
    }

    /// x - a.
    pub fn linear(field: &Field, a: FieldElement) -> Poly {
        Poly::from_coeffs(vec![field.neg(a), field.one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Integer coefficients, reduced into the prime field.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; only for callers that
    /// have already excluded zero.
    pub fn degree(&self) -> usize {
        self.deg().unwrap_or(0)
    }

    pub fn lc(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn is_monic(&self, field: &Field) -> bool {
        self.lc() == field.one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, field: &Field, o: &Poly) -> Poly {
        let len = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..len).map(|k| field.add(self.coeff(k), o.coeff(k))).collect())
    }

    pub fn sub(&self, field: &Field, o: &Poly) -> Poly {
        let len = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..len).map(|k| field.sub(self.coeff(k), o.coeff(k))).collect())
    }

    pub fn neg(&self, field: &Field) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|&c| field.neg(c)).collect() }
    }

    pub fn scale(&self, field: &Field, c: FieldElement) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, field: &Field, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, field: &Field, mut k: u32) -> Poly {
        let mut acc = Poly::one(field);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(field, &base);
            }
        }
        acc
    }

    /// Quotient and remainder.
    pub fn divrem(&self, field: &Field, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.deg().ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv = field.inv(d.lc())?;
        let mut quot = vec![field.zero(); r.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = field.mul(r[k + dd], inv);
            quot[k] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[k + j] = field.sub(r[k + j], field.mul(c, dc));
            }
        }
        r.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(r)))
    }

    pub fn rem(&self, field: &Field, d: &Poly) -> Result<Poly> {
        let mut r = self.coeffs.clone();
        rem_in_place(field, &mut r, d)?;
        Ok(Poly { coeffs: r })
    }

    pub fn divides(&self, field: &Field, f: &Poly) -> bool {
        f.rem(field, self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn monic(&self, field: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = field.inv(self.lc()).expect("nonzero leading coefficient");
        self.scale(field, inv)
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, field: &Field, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(field, &b).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r);
        }
        a.monic(field)
    }

    pub fn eval(&self, field: &Field, x: FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(field.zero(), |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn derivative(&self, field: &Field) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| field.mul(field.from_int(k as i64), c))
                .collect(),
        )
    }

    /// self(inner(x)).
    pub fn compose(&self, field: &Field, inner: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &c| acc.mul(field, inner).add(field, &Poly::constant(c)))
    }

    pub fn format(&self, field: &Field) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs.iter().map(|&c| field.format(c)).collect::<Vec<_>>().join(",")
    }

    /// Parses the `c0,c1,...` coefficient syntax (low degree first). Field
    /// elements are integers when e = 1 or bracketed digit vectors.
    pub fn parse(field: &Field, s: &str) -> Result<Poly> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Poly::zero());
        }
        s.split(',').map(|t| field.parse(t)).collect::<Result<Vec<_>>>().map(Poly::from_coeffs)
    }
}

pub(crate) fn rem_in_place(field: &Field, r: &mut Vec<FieldElement>, d: &Poly) -> Result<()> {
    let dd = d.deg().ok_or(Error::DivisionByZero)?;
    if r.len() > dd {
        let monic = d.lc() == field.one();
        let inv = if monic { field.one() } else { field.inv(d.lc())? };
        for k in (dd..r.len()).rev() {
            let top = r[k];
            if top.is_zero() {
                continue;
            }
            let c = if monic { top } else { field.mul(top, inv) };
            let base = k - dd;
            for (j, &dc) in d.coeffs[..dd].iter().enumerate() {
                r[base + j] = field.sub(r[base + j], field.mul(c, dc));
            }
        }
        r.truncate(dd);
    }
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.index().to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A quotient num/den of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunc {
    pub num: Poly,
    pub den: Poly,
}

impl RationalFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RationalFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunc { num, den })
    }

    pub fn from_poly(field: &Field, p: Poly) -> RationalFunc {
        RationalFunc { num: p, den: Poly::one(field) }
    }

    pub fn mul(&self, field: &Field, o: &RationalFunc) -> RationalFunc {
        RationalFunc { num: self.num.mul(field, &o.num), den: self.den.mul(field, &o.den) }
    }

    pub fn add(&self, field: &Field, o: &RationalFunc) -> RationalFunc {
        RationalFunc {
            num: self.num.mul(field, &o.den).add(field, &o.num.mul(field, &self.den)),
            den: self.den.mul(field, &o.den),
        }
    }
}

/// η(i) = +1 for i ≡ 0,1 (mod 4), -1 for i ≡ 2,3 (mod 4).
pub fn eta(i: u64) -> i64 {
    if i % 4 < 2 {
        1
    } else {
        -1
    }
}

/// Resultant by the Euclidean recursion
/// R(f, g) = lc(f)^(deg g - deg s) R(f, s) for g ≡ s (mod f), together with
/// reciprocity R(g, f) = (-1)^(deg f deg g) R(f, g).
pub fn resultant(field: &Field, f: &Poly, g: &Poly) -> FieldElement {
    let mut a = f.coeffs.clone();
    let mut b = g.coeffs.clone();
    let mut acc = field.one();
    loop {
        let (da, db) = (a.len().checked_sub(1), b.len().checked_sub(1));
        match (da, db) {
            (None, Some(0)) | (Some(0), None) => return acc,
            (None, _) | (_, None) => return field.zero(),
            (Some(0), Some(db)) => {
                return field.mul(acc, field.pow(a[0], db as i64).expect("nonnegative exponent"))
            }
            (Some(da), Some(0)) => {
                return field.mul(acc, field.pow(b[0], da as i64).expect("nonnegative exponent"))
            }
            (Some(da), Some(db)) => {
                if db < da {
                    if (da * db) % 2 == 1 {
                        acc = field.neg(acc);
                    }
                    std::mem::swap(&mut a, &mut b);
                    continue;
                }
                let divisor = Poly { coeffs: a.clone() };
                rem_in_place(field, &mut b, &divisor).expect("nonzero divisor");
                match b.len().checked_sub(1) {
                    None => return field.zero(),
                    Some(ds) => {
                        let lc = a[da];
                        acc = field.mul(acc, field.pow(lc, (db - ds) as i64).expect("nonnegative"));
                    }
                }
            }
        }
    }
}

/// D(f) = η(deg f) R(f, f′) for monic f; 1 when deg f <= 1.
pub fn discriminant(field: &Field, f: &Poly) -> Result<FieldElement> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic(field) {
        return Err(Error::NotMonic);
    }
    let d = f.degree();
    if d <= 1 {
        return Ok(field.one());
    }
    let r = resultant(field, f, &f.derivative(field));
    Ok(if eta(d as u64) < 0 { field.neg(r) } else { r })
}

/// Number of monic polynomials of degree i, or None if it overflows u64.
pub fn monic_count(field: &Field, i: usize) -> Option<u64> {
    (field.q() as u64).checked_pow(i as u32)
}

/// The k-th monic polynomial of degree i: the base-q digits of k (least
/// significant first) are the element indices of c0, .., c_{i-1}.
pub fn monic_unrank(field: &Field, i: usize, k: u64) -> Result<Poly> {
    let count = monic_count(field, i).ok_or_else(|| Error::Overflow("q^i".into()))?;
    if k >= count {
        return Err(Error::IndexOutOfRange { index: k, count });
    }
    let mut out = Vec::with_capacity(i + 1);
    unrank_into(field, i, k, &mut out);
    Ok(Poly { coeffs: out })
}

pub(crate) fn unrank_into(field: &Field, i: usize, mut k: u64, out: &mut Vec<FieldElement>) {
    out.clear();
    let q = field.q() as u64;
    for _ in 0..i {
        out.push(field.element((k % q) as u32).expect("digit below q"));
        k /= q;
    }
    out.push(field.one());
}

/// Inverse of [`monic_unrank`].
pub fn monic_rank(field: &Field, f: &Poly) -> Result<u64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic(field) {
        return Err(Error::NotMonic);
    }
    let q = field.q() as u64;
    Ok(f.coeffs[..f.degree()].iter().rev().fold(0u64, |acc, c| acc * q + c.index() as u64))
}

/// The k-th polynomial of degree < len (all coefficients free, base-q digits).
pub fn residue_unrank(field: &Field, len: usize, mut k: u64) -> Poly {
    let q = field.q() as u64;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(field.element((k % q) as u32).expect("digit below q"));
        k /= q;
    }
    Poly::from_coeffs(out)
}

/// Lazily built table of monic irreducibles by degree.
#[derive(Default)]
pub struct IrreducibleCache {
    by_degree: RwLock<Vec<Arc<Vec<Poly>>>>,
}

impl IrreducibleCache {
    /// Monic irreducibles of degree d, in rank order.
    pub fn of_degree(&self, field: &Field, d: usize) -> Arc<Vec<Poly>> {
        if let Some(v) = self.by_degree.read().unwrap().get(d) {
            return v.clone();
        }
        let mut table = self.by_degree.write().unwrap();
        while table.len() <= d {
            let deg = table.len();
            let list = if deg == 0 {
                Vec::new()
            } else {
                let count = monic_count(field, deg).expect("degree within budget");
                (0..count)
                    .map(|k| monic_unrank(field, deg, k).unwrap())
                    .filter(|f| {
                        (1..=deg / 2).all(|e| table[e].iter().all(|pi| !pi.divides(field, f)))
                    })
                    .collect()
            };
            table.push(Arc::new(list));
        }
        table[d].clone()
    }
}

/// A factorization unit · ∏ π^e into distinct monic irreducibles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPoly {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, u32)>,
}

impl FactoredPoly {
    pub fn expand(&self, field: &Field) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit), |acc, (pi, e)| acc.mul(field, &pi.pow(field, *e)))
    }

    pub fn multiplicity(&self, pi: &Poly) -> u32 {
        self.factors.iter().find(|(b, _)| b == pi).map_or(0, |(_, e)| *e)
    }
}

/// Factorization by trial division against all monic irreducibles of degree
/// up to deg f / 2; the cofactor left over is irreducible.
pub fn factor(field: &Field, f: &Poly) -> Result<FactoredPoly> {
    let deg = f.deg().ok_or(Error::ZeroPolynomial)?;
    let unit = f.lc();
    let mut rest = f.monic(field);
    let mut factors = Vec::new();
    'outer: for d in 1..=deg / 2 {
        for pi in field.irreducibles().of_degree(field, d).iter() {
            if 2 * d > rest.degree() {
                break 'outer;
            }
            let mut mult = 0;
            loop {
                let (quot, r) = rest.divrem(field, pi)?;
                if !r.is_zero() {
                    break;
                }
                rest = quot;
                mult += 1;
            }
            if mult > 0 {
                factors.push((pi.clone(), mult));
            }
        }
    }
    if rest.degree() > 0 {
        match factors.iter_mut().find(|(b, _)| *b == rest) {
            Some(entry) => entry.1 += 1,
            None => factors.push((rest, 1)),
        }
    }
    factors.sort();
    Ok(FactoredPoly { unit, factors })
}

pub fn is_irreducible(field: &Field, f: &Poly) -> Result<bool> {
    let fact = factor(field, f)?;
    Ok(fact.factors.len() == 1 && fact.factors[0].1 == 1)
}

/// Möbius function: 0 unless squarefree, else (-1)^(number of prime factors).
pub fn mobius(field: &Field, f: &Poly) -> Result<i8> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Ok(1);
    }
    if f.gcd(field, &f.derivative(field)).degree() > 0 {
        return Ok(0);
    }
    let k = factor(field, f)?.factors.len();
    Ok(if k % 2 == 0 { 1 } else { -1 })
}

/// ∏ π over the monic primes π | r whose multiplicity is not divisible by n.
pub fn conductor_support(field: &Field, r: &Poly, n: u32) -> Result<Poly> {
    if n == 0 {
        return Err(Error::Precondition("character order must be positive".into()));
    }
    let fact = factor(field, r)?;
    Ok(fact
        .factors
        .iter()
        .filter(|(_, e)| e % n != 0)
        .fold(Poly::one(field), |acc, (pi, _)| acc.mul(field, pi)))
}

/// Möbius values of every monic polynomial of degree i, indexed by rank,
/// computed by sieving with the irreducibles of degree <= i.
pub fn mobius_sieve(field: &Field, i: usize) -> Result<Vec<i8>> {
    let count = monic_count(field, i).ok_or_else(|| Error::Overflow("q^i".into()))?;
    let mut table = vec![1i8; count as usize];
    for d in 1..=i {
        let cofactors = monic_count(field, i - d).unwrap();
        for pi in field.irreducibles().of_degree(field, d).iter() {
            for k in 0..cofactors {
                let c = pi.mul(field, &monic_unrank(field, i - d, k)?);
                let idx = monic_rank(field, &c)? as usize;
                table[idx] = -table[idx];
            }
            if 2 * d <= i {
                let sq = pi.mul(field, pi);
                for k in 0..monic_count(field, i - 2 * d).unwrap() {
                    let c = sq.mul(field, &monic_unrank(field, i - 2 * d, k)?);
                    table[monic_rank(field, &c)? as usize] = 0;
                }
            }
        }
    }
    // A sign flip after zeroing leaves -0 = 0, so the order above is harmless.
    Ok(table)
}
