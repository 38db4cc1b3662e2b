//! Exact arithmetic in Z[ζ_N].
//!
//! Elements are stored as their canonical remainder modulo the cyclotomic
//! polynomial Φ_N (length φ(N)), so equality is a componentwise check.
//! Reduction folds exponents modulo N first (Φ_N divides x^N - 1) and then
//! applies a table of the remainders x^k mod Φ_N for φ(N) <= k < N.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rings with N * φ(N) above this use long division instead of a remainder table.
const TABLE_LIMIT: u64 = 1 << 24;

fn poly_mul_i128(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient of `num` by the monic polynomial `den`.
fn poly_div_exact_i128(num: &[i128], den: &[i128]) -> Result<Vec<i128>> {
    let dd = den.len() - 1;
    let mut r = num.to_vec();
    let mut quot = vec![0i128; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = r[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                r[k + j] = d
                    .checked_mul(c)
                    .and_then(|t| r[k + j].checked_sub(t))
                    .ok_or_else(|| Error::Overflow("cyclotomic polynomial".into()))?;
            }
        }
    }
    if r.iter().any(|&c| c != 0) {
        return Err(Error::Precondition("inexact cyclotomic division".into()));
    }
    Ok(quot)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Φ_N as an integer coefficient vector, low degree first.
pub fn cyclotomic_poly(n: u64) -> Result<Vec<i64>> {
    if n == 0 {
        return Err(Error::Precondition("cyclotomic index must be positive".into()));
    }
    let mut memo: BTreeMap<u64, Vec<i128>> = BTreeMap::new();
    for d in divisors(n) {
        let mut xd = vec![0i128; d as usize + 1];
        xd[0] = -1;
        xd[d as usize] = 1;
        let mut den = vec![1i128];
        for (&e, phi_e) in &memo {
            if d % e == 0 {
                den = poly_mul_i128(&den, phi_e);
            }
        }
        let phi = poly_div_exact_i128(&xd, &den)?;
        memo.insert(d, phi);
    }
    memo.remove(&n)
        .unwrap()
        .into_iter()
        .map(|c| i64::try_from(c).map_err(|_| Error::Overflow("Φ_N coefficient".into())))
        .collect()
}

/// The ring Z[ζ_N].
pub struct CycRing {
    n: u64,
    phi: usize,
    cyclo_poly: Vec<i64>,
    /// Rows are x^k mod Φ_N for k in [φ, N), built on first use.
    table: OnceLock<Option<Vec<Vec<i64>>>>,
}

impl fmt::Debug for CycRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycRing(N = {}, φ = {})", self.n, self.phi)
    }
}

impl CycRing {
    pub fn new(n: u64) -> Result<Arc<CycRing>> {
        let cyclo_poly = cyclotomic_poly(n)?;
        let phi = cyclo_poly.len() - 1;
        // ∏_{d | N} Φ_d = x^N - 1.
        let mut prod = vec![1i128];
        for d in divisors(n) {
            let pd: Vec<i128> = cyclotomic_poly(d)?.into_iter().map(i128::from).collect();
            prod = poly_mul_i128(&prod, &pd);
        }
        let mut expected = vec![0i128; n as usize + 1];
        expected[0] = -1;
        expected[n as usize] = 1;
        if prod != expected {
            return Err(Error::Precondition(format!("Φ_{n} failed the product check")));
        }
        Ok(Arc::new(CycRing { n, phi, cyclo_poly, table: OnceLock::new() }))
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// φ(N), the rank of Z[ζ_N] over Z.
    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn cyclo_poly(&self) -> &[i64] {
        &self.cyclo_poly
    }

    fn table(&self) -> Option<&Vec<Vec<i64>>> {
        self.table
            .get_or_init(|| {
                if self.n.saturating_mul(self.phi as u64) > TABLE_LIMIT {
                    return None;
                }
                let phi = self.phi;
                let mut rows = Vec::with_capacity(self.n as usize - phi);
                // x^φ = -Σ_{j<φ} Φ_j x^j
                let mut cur: Vec<i128> = self.cyclo_poly[..phi].iter().map(|&c| -(c as i128)).collect();
                for _ in phi..self.n as usize {
                    rows.push(cur.iter().map(|&c| i64::try_from(c).ok()).collect::<Option<Vec<_>>>()?);
                    // multiply by x and reduce the overflow term
                    let top = cur[phi - 1];
                    for j in (1..phi).rev() {
                        cur[j] = cur[j - 1] - top * self.cyclo_poly[j] as i128;
                    }
                    cur[0] = -top * self.cyclo_poly[0] as i128;
                }
                Some(rows)
            })
            .as_ref()
    }

    /// Canonical remainder of a vector indexed by exponents modulo N.
    fn reduce_folded(self: &Arc<Self>, folded: Vec<BigInt>) -> CycInt {
        debug_assert_eq!(folded.len(), self.n as usize);
        let phi = self.phi;
        if let Some(table) = self.table() {
            let mut out: Vec<BigInt> = folded[..phi].to_vec();
            for (k, c) in folded.iter().enumerate().skip(phi) {
                if c.is_zero() {
                    continue;
                }
                for (o, &t) in out.iter_mut().zip(&table[k - phi]) {
                    if t != 0 {
                        *o += c * t;
                    }
                }
            }
            return CycInt { ring: self.clone(), coeffs: out };
        }
        let mut r = folded;
        for k in (phi..r.len()).rev() {
            let c = std::mem::take(&mut r[k]);
            if c.is_zero() {
                continue;
            }
            for (j, &d) in self.cyclo_poly[..phi].iter().enumerate() {
                if d != 0 {
                    r[k - phi + j] -= &c * d;
                }
            }
        }
        r.truncate(phi);
        CycInt { ring: self.clone(), coeffs: r }
    }

    fn reduce_folded_i128(self: &Arc<Self>, folded: &[i128]) -> Option<CycInt> {
        let phi = self.phi;
        let table = self.table()?;
        let mut out: Vec<i128> = folded[..phi].to_vec();
        for (k, &c) in folded.iter().enumerate().skip(phi) {
            if c == 0 {
                continue;
            }
            for (o, &t) in out.iter_mut().zip(&table[k - phi]) {
                *o = o.checked_add(c.checked_mul(t as i128)?)?;
            }
        }
        Some(CycInt { ring: self.clone(), coeffs: out.into_iter().map(BigInt::from).collect() })
    }

    pub fn zero(self: &Arc<Self>) -> CycInt {
        CycInt { ring: self.clone(), coeffs: vec![BigInt::zero(); self.phi] }
    }

    pub fn one(self: &Arc<Self>) -> CycInt {
        self.from_int(1)
    }

    pub fn from_int<T: Into<BigInt>>(self: &Arc<Self>, v: T) -> CycInt {
        let mut z = self.zero();
        z.coeffs[0] = v.into();
        z
    }

    /// ζ_N^k, k taken modulo N.
    pub fn root_of_unity(self: &Arc<Self>, k: i64) -> CycInt {
        let mut bins = vec![0i64; self.n as usize];
        bins[k.rem_euclid(self.n as i64) as usize] = 1;
        self.from_bins(&bins)
    }

    /// Σ_k bins[k] ζ_N^k for a vector of length N.
    pub fn from_bins(self: &Arc<Self>, bins: &[i64]) -> CycInt {
        assert_eq!(bins.len(), self.n as usize, "bin vector must have length N");
        let wide: Vec<i128> = bins.iter().map(|&b| b as i128).collect();
        self.reduce_folded_i128(&wide)
            .unwrap_or_else(|| self.reduce_folded(bins.iter().map(|&b| BigInt::from(b)).collect()))
    }

    /// Builds an element from explicit canonical coefficients.
    pub fn from_coeffs(self: &Arc<Self>, coeffs: Vec<BigInt>) -> Result<CycInt> {
        if coeffs.len() != self.phi {
            return Err(Error::Precondition(format!(
                "expected {} coefficients, got {}",
                self.phi,
                coeffs.len()
            )));
        }
        Ok(CycInt { ring: self.clone(), coeffs })
    }

    pub fn same(&self, other: &CycRing) -> bool {
        std::ptr::eq(self, other) || self.n == other.n
    }
}

/// An element of Z[ζ_N] in canonical form.
#[derive(Clone)]
pub struct CycInt {
    ring: Arc<CycRing>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.coeffs == other.coeffs
    }
}

impl Eq for CycInt {}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt[N={}](", self.ring.n)?;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}·ζ^{k}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl CycInt {
    pub fn ring(&self) -> &Arc<CycRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    fn check(&self, other: &CycInt) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring.n, other.ring.n))
        }
    }

    pub fn try_add(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycInt { ring: self.ring.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycInt { ring: self.ring.clone(), coeffs })
    }

    fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    pub fn try_mul(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        let n = self.ring.n as usize;
        let phi = self.ring.phi;
        // Convolution folded modulo N: exponents reach 2φ - 2, which may exceed N.
        let log_phi = 64 - (phi as u64).leading_zeros() as u64;
        if self.max_bits() + other.max_bits() + 2 * log_phi + 40 < 126 {
            let a: Vec<i128> = self.coeffs.iter().map(|c| c.to_i128().unwrap()).collect();
            let b: Vec<i128> = other.coeffs.iter().map(|c| c.to_i128().unwrap()).collect();
            let mut folded = vec![0i128; n];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    folded[(i + j) % n] += x * y;
                }
            }
            if let Some(r) = self.ring.reduce_folded_i128(&folded) {
                return Ok(r);
            }
        }
        let mut folded = vec![BigInt::zero(); n];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    folded[(i + j) % n] += x * y;
                }
            }
        }
        Ok(self.ring.reduce_folded(folded))
    }

    pub fn scale<T: Into<BigInt>>(&self, k: T) -> CycInt {
        let k = k.into();
        CycInt { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| c * &k).collect() }
    }

    pub fn pow(&self, mut k: u64) -> CycInt {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image under the Galois automorphism ζ ↦ ζ^a (a coprime to N).
    pub fn galois(&self, a: i64) -> CycInt {
        let n = self.ring.n as i64;
        let mut folded = vec![BigInt::zero(); n as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                folded[(k as i64 * a).rem_euclid(n) as usize] += c;
            }
        }
        self.ring.reduce_folded(folded)
    }

    /// Complex conjugation, ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> CycInt {
        self.galois(-1)
    }

    /// Value under ζ_N ↦ exp(2πiσ/N).
    pub fn embed(&self, sigma: i64) -> Complex64 {
        let n = self.ring.n as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let angle = 2.0 * std::f64::consts::PI * ((k as i64 * sigma).rem_euclid(self.ring.n as i64)) as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle)
            })
            .sum()
    }

    /// Embedding with σ = 1.
    pub fn to_complex(&self) -> Complex64 {
        self.embed(1)
    }

    pub fn to_json(&self) -> CycIntJson {
        CycIntJson { n: self.ring.n, coeffs: self.coeffs.iter().map(|c| c.to_string()).collect() }
    }

    /// Largest absolute coefficient, mainly for diagnostics.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

/// Integers coprime to N in [1, N): the embedding indices.
pub fn embedding_indices(n: u64) -> Vec<i64> {
    (1..n.max(2)).filter(|&k| k.gcd(&n) == 1).map(|k| k as i64).collect()
}

/// JSON form of a [`CycInt`]: `{"N": .., "coeffs": ["..", ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CycIntJson {
    #[serde(rename = "N")]
    pub n: u64,
    pub coeffs: Vec<String>,
}

impl CycIntJson {
    pub fn decode(&self, ring: &Arc<CycRing>) -> Result<CycInt> {
        if self.n != ring.n {
            return Err(Error::RingMismatch(self.n, ring.n));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        ring.from_coeffs(coeffs)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycInt> for &CycInt {
            type Output = CycInt;
            fn $method(self, rhs: &CycInt) -> CycInt {
                self.$checked(rhs).expect("operands from different cyclotomic rings")
            }
        }
        impl $tr<CycInt> for CycInt {
            type Output = CycInt;
            fn $method(self, rhs: CycInt) -> CycInt {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

/// A formal quotient num/den in the fraction field of Z[ζ_N]. Never reduced;
/// equality is cross-multiplication.
#[derive(Clone, Debug)]
pub struct CycFrac {
    pub num: CycInt,
    pub den: CycInt,
}

impl CycFrac {
    pub fn new(num: CycInt, den: CycInt) -> Result<CycFrac> {
        num.check(&den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(CycFrac { num, den })
    }

    pub fn from_int(x: CycInt) -> CycFrac {
        let den = x.ring.one();
        CycFrac { num: x, den }
    }

    pub fn ring(&self) -> &Arc<CycRing> {
        self.num.ring()
    }

    pub fn zero(ring: &Arc<CycRing>) -> CycFrac {
        CycFrac::from_int(ring.zero())
    }

    pub fn one(ring: &Arc<CycRing>) -> CycFrac {
        CycFrac::from_int(ring.one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn try_add(&self, o: &CycFrac) -> Result<CycFrac> {
        if self.den == o.den {
            return CycFrac::new(self.num.try_add(&o.num)?, self.den.clone());
        }
        let num = self.num.try_mul(&o.den)?.try_add(&o.num.try_mul(&self.den)?)?;
        CycFrac::new(num, self.den.try_mul(&o.den)?)
    }

    pub fn try_sub(&self, o: &CycFrac) -> Result<CycFrac> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &CycFrac) -> Result<CycFrac> {
        CycFrac::new(self.num.try_mul(&o.num)?, self.den.try_mul(&o.den)?)
    }

    pub fn inv(&self) -> Result<CycFrac> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(CycFrac { num: self.den.clone(), den: self.num.clone() })
    }

    pub fn try_div(&self, o: &CycFrac) -> Result<CycFrac> {
        self.try_mul(&o.inv()?)
    }

    pub fn neg(&self) -> CycFrac {
        CycFrac { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul_int(&self, x: &CycInt) -> CycFrac {
        CycFrac { num: &self.num * x, den: self.den.clone() }
    }

    pub fn pow(&self, k: i64) -> Result<CycFrac> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let k = k.unsigned_abs();
        Ok(CycFrac { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// Exact equality a/b = c/d ⇔ ad = cb.
    pub fn equals(&self, o: &CycFrac) -> bool {
        self.num.ring().same(o.num.ring()) && &self.num * &o.den == &o.num * &self.den
    }

    pub fn equals_int(&self, x: &CycInt) -> bool {
        self.num == x * &self.den
    }

    /// Returns the quotient as a ring element when the denominator divides exactly
    /// in the trivial sense (den = ±1); otherwise None.
    pub fn as_int(&self) -> Option<CycInt> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else if (-&self.den).is_one() {
            Some(-&self.num)
        } else {
            None
        }
    }

    pub fn embed(&self, sigma: i64) -> Complex64 {
        self.num.embed(sigma) / self.den.embed(sigma)
    }

    pub fn to_complex(&self) -> Complex64 {
        self.embed(1)
    }
}

impl PartialEq for CycFrac {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1).unwrap(), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2).unwrap(), vec![1, 1]);
        assert_eq!(cyclotomic_poly(4).unwrap(), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(7).unwrap(), vec![1; 7]);
        assert_eq!(cyclotomic_poly(12).unwrap(), vec![1, 0, -1, 0, 1]);
        let p105 = cyclotomic_poly(105).unwrap();
        assert_eq!(p105[7], -2);
        assert!(cyclotomic_poly(0).is_err());
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..200u64 {
            let tot = (1..=n).filter(|k| k.gcd(&n) == 1).count();
            assert_eq!(cyclotomic_poly(n).unwrap().len() - 1, tot, "N = {n}");
        }
    }

    #[test]
    fn roots_of_unity() {
        let r = CycRing::new(4).unwrap();
        assert!(r.root_of_unity(0).is_one());
        assert!(r.root_of_unity(4).is_one());
        assert_eq!(r.root_of_unity(2), r.from_int(-1));
        let z = r.root_of_unity(1);
        assert_eq!(&z * &z, r.from_int(-1));
        let e = z.to_complex();
        assert!((e - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        assert!((r.one().to_complex() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        for n in [2u64, 3, 12, 20, 72, 156] {
            let r = CycRing::new(n).unwrap();
            let total = (0..n as i64).fold(r.zero(), |acc, k| &acc + &r.root_of_unity(k));
            assert!(total.is_zero(), "N = {n}");
            for k in 0..n as i64 {
                for s in embedding_indices(n) {
                    assert!((r.root_of_unity(k).embed(s).norm() - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn conj_and_galois() {
        let r = CycRing::new(20).unwrap();
        for k in 0..20 {
            let z = r.root_of_unity(k);
            assert_eq!(z.conj(), r.root_of_unity(-k));
            assert_eq!(z.conj().conj(), z);
            assert_eq!(z.galois(3), r.root_of_unity(3 * k));
        }
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = CycRing::new(5).unwrap().one();
        let b = CycRing::new(7).unwrap().one();
        assert_eq!(a.try_add(&b), Err(Error::RingMismatch(5, 7)));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn long_division_path_matches_table_path() {
        let r = CycRing::new(36).unwrap();
        let bins: Vec<i64> = (0..36).map(|k| (k * k % 7) as i64 - 3).collect();
        let via_table = r.from_bins(&bins);
        let via_division = r.reduce_folded(bins.iter().map(|&b| BigInt::from(b)).collect());
        assert_eq!(via_table, via_division);
    }

    #[test]
    fn big_coefficients_use_bigint() {
        let r = CycRing::new(12).unwrap();
        let big = r.from_int(BigInt::from(1u8) << 100u32) + r.root_of_unity(1);
        let sq = &big * &big;
        let expected = r.from_int(BigInt::from(1u8) << 200u32)
            + r.root_of_unity(1).scale(BigInt::from(1u8) << 101u32)
            + r.root_of_unity(2);
        assert_eq!(sq, expected);
    }

    #[test]
    fn fractions() {
        let r = CycRing::new(20).unwrap();
        let tau_like = &r.root_of_unity(3) + &r.root_of_unity(7).scale(2);
        let q = CycFrac::from_int(r.from_int(5));
        let same = CycFrac::new(r.from_int(5) * tau_like.clone(), tau_like.clone()).unwrap();
        assert!(q.equals(&same));
        let x = CycFrac::new(tau_like.clone(), r.from_int(3)).unwrap();
        let inv = x.inv().unwrap();
        assert_eq!(inv.num, r.from_int(3));
        assert!(x.try_mul(&inv).unwrap().equals(&CycFrac::one(&r)));
        assert!(CycFrac::zero(&r).inv().is_err());
        assert!(CycFrac::new(r.one(), r.zero()).is_err());
        let s = x.try_add(&x).unwrap();
        assert!(s.equals(&x.try_mul(&CycFrac::from_int(r.from_int(2))).unwrap()));
    }

    #[test]
    fn json_roundtrip() {
        let r = CycRing::new(20).unwrap();
        let x = &r.root_of_unity(3) - &r.root_of_unity(11).scale(4);
        let j = x.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: CycIntJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.decode(&r).unwrap(), x);
    }

    fn arb_elem(n: u64) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-20i64..20, n as usize)
    }

    proptest! {
        #[test]
        fn embedding_is_a_homomorphism(a in arb_elem(60), b in arb_elem(60), s in 0usize..16) {
            let r = CycRing::new(60).unwrap();
            let x = r.from_bins(&a);
            let y = r.from_bins(&b);
            let sigma = embedding_indices(60)[s];
            let lhs = (&x * &y).embed(sigma);
            let rhs = x.embed(sigma) * y.embed(sigma);
            prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
        }

        #[test]
        fn zero_iff_embedding_vanishes(a in arb_elem(20), b in arb_elem(20)) {
            let r = CycRing::new(20).unwrap();
            let d = &r.from_bins(&a) - &r.from_bins(&b);
            let vanishes = embedding_indices(20).iter().all(|&s| d.embed(s).norm() < 1e-6);
            prop_assert_eq!(d.is_zero(), vanishes);
        }

        #[test]
        fn ring_laws(a in arb_elem(36), b in arb_elem(36), c in arb_elem(36)) {
            let r = CycRing::new(36).unwrap();
            let (x, y, z) = (r.from_bins(&a), r.from_bins(&b), r.from_bins(&c));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        }
    }
}
