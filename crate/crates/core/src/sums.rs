//! Gauss and Jacobi sums over F_q, the global Gauss sum g(r, χ, c), its
//! closed form, and the Anderson L-function identity check.

use serde::Serialize;

use crate::chars::MulCharacter;
use crate::context::GaussContext;
use crate::cyclo::{CycFrac, CycInt, CycIntJson};
use crate::error::{Error, Result};
use crate::poly::{self, conductor_support, discriminant, factor, monic_count, resultant, Poly, RationalFunc};

impl GaussContext {
    /// τ(χ) = Σ_{a≠0} χ(a) e_o(a), from the cache.
    pub fn gauss_sum(&self, chi: MulCharacter) -> CycInt {
        self.tau(chi).clone()
    }

    /// J(χ₁, χ₂) = Σ_{a≠0,1} χ₁(a) χ₂(1 - a).
    pub fn jacobi_sum(&self, chi1: MulCharacter, chi2: MulCharacter) -> CycInt {
        let f = self.field();
        let mut bins = vec![0i64; self.n() as usize];
        let n = self.n();
        for a in f.elements().filter(|&a| !a.is_zero() && a != f.one()) {
            let b = f.sub(f.one(), a);
            let k = self.char_exponent(chi1, a).unwrap() + self.char_exponent(chi2, b).unwrap();
            bins[(k % n) as usize] += 1;
        }
        self.ring().from_bins(&bins)
    }

    /// g(r, χ, c) = Σ_{deg d < deg c} χ(d/c) e(rd/c) by direct summation.
    pub fn global_gauss(&self, r: &Poly, chi: MulCharacter, c: &Poly) -> Result<CycInt> {
        if c.is_zero() || r.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.field();
        let dc = c.degree();
        if dc == 0 {
            return Ok(self.ring().one());
        }
        let count = monic_count(f, dc).ok_or_else(|| Error::Overflow("q^deg c".into()))?;
        if count > self.budget() {
            return Err(Error::BudgetExceeded { needed: count as u128, budget: self.budget() });
        }
        let n = self.n();
        let mut bins = vec![0i64; n as usize];
        for k in 0..count {
            let d = poly::residue_unrank(f, dc, k);
            let Some(sym) = self.char_exponent(chi, resultant(f, c, &d)) else {
                continue;
            };
            let rd = RationalFunc { num: r.mul(f, &d), den: c.clone() };
            let add = self.additive_e_exponent(&rd)?;
            bins[((sym + add) % n) as usize] += 1;
        }
        Ok(self.ring().from_bins(&bins))
    }

    fn dh_prefix(&self, r: &Poly, chi: MulCharacter, c: &Poly) -> Result<Option<(CycInt, usize)>> {
        let f = self.field();
        if c.is_zero() || r.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !c.is_monic(f) {
            return Err(Error::NotMonic);
        }
        let rc = resultant(f, c, r);
        if rc.is_zero() {
            return Err(Error::NotCoprime);
        }
        if poly::mobius(f, c)? == 0 {
            return Ok(None);
        }
        let mu = poly::mobius(f, c)?;
        let deg = c.degree();
        let minus_tau = -self.tau(chi);
        let core = &self.char_value(chi.inv(), rc).scale(mu as i64) * &minus_tau.pow(deg as u64);
        Ok(Some((core, deg)))
    }

    /// μ(c) χ^{-1}(R(c, r)) χ(R(c, c′)) (-τ(χ))^{deg c}.
    pub fn dh_evaluate(&self, r: &Poly, chi: MulCharacter, c: &Poly) -> Result<CycInt> {
        let Some((core, _)) = self.dh_prefix(r, chi, c)? else {
            return Ok(self.ring().zero());
        };
        let f = self.field();
        Ok(&core * &self.char_value(chi, resultant(f, c, &c.derivative(f))))
    }

    /// The same closed form with χ(η(deg c)) χ(D(c)) in place of χ(c′/c).
    pub fn dh_evaluate_disc(&self, r: &Poly, chi: MulCharacter, c: &Poly) -> Result<CycInt> {
        let Some((core, deg)) = self.dh_prefix(r, chi, c)? else {
            return Ok(self.ring().zero());
        };
        let f = self.field();
        let eta = f.from_int(poly::eta(deg as u64));
        let d = discriminant(f, c)?;
        Ok(&(&core * &self.char_value(chi, eta)) * &self.char_value(chi, d))
    }

    /// g(1, ω, c) = μ(c)² ω(η(deg c)) τ(ω)^{deg c}.
    pub fn dh_quadratic(&self, c: &Poly) -> Result<CycInt> {
        let f = self.field();
        if !c.is_monic(f) {
            return Err(Error::NotMonic);
        }
        if poly::mobius(f, c)? == 0 {
            return Ok(self.ring().zero());
        }
        let deg = c.degree();
        let omega = self.omega();
        let eta = f.from_int(poly::eta(deg as u64));
        Ok(&self.char_value(omega, eta) * &self.tau(omega).pow(deg as u64))
    }

    /// Compares Σ_{g monic, deg g = deg f_o - 1} χ(f/g) with the closed
    /// form under both readings of the τ(χ^{-1}) exponent.
    pub fn anderson_identity_check(&self, f: &Poly, chi: MulCharacter) -> Result<AndersonReport> {
        let field = self.field();
        if !f.is_monic(field) {
            return Err(Error::NotMonic);
        }
        let n = chi.order();
        let fo = conductor_support(field, f, n)?;
        if fo.degree() == 0 {
            return Err(Error::Precondition(if chi.is_trivial() {
                "χ(f/·) is principal".into()
            } else {
                "conductor f_o = 1".into()
            }));
        }
        let lhs_deg = fo.degree() - 1;
        let count = self.check_budget(lhs_deg)?;
        let nn = self.n();
        let mut bins = vec![0i64; nn as usize];
        let mut buf = Vec::new();
        for k in 0..count {
            poly::unrank_into(field, lhs_deg, k, &mut buf);
            let g = Poly::from_coeffs(buf.clone());
            if let Some(e) = self.char_exponent(chi, resultant(field, &g, f)) {
                bins[e as usize] += 1;
            }
        }
        let lhs = self.ring().from_bins(&bins);

        let fact = factor(field, f)?;
        let mut den = self.ring().one();
        for (pi, mult) in &fact.factors {
            if mult % n != 0 {
                den = &den * &self.tau(chi.pow(-(*mult as i64))).pow(pi.degree() as u64);
            }
        }
        let fo_prime = fo.derivative(field);
        let base = &self.char_value(self.omega(), discriminant(field, &fo)?)
            * &self.char_value(chi, resultant(field, &fo_prime, f));
        let tau_inv = self.tau(chi.inv());
        let rhs_for = |k: usize| CycFrac::new(&base * &tau_inv.pow(k as u64), den.clone());
        let exp_f = f.degree() - 1;
        let exp_fo = lhs_deg;
        let rhs_f = rhs_for(exp_f)?;
        let rhs_fo = rhs_for(exp_fo)?;
        let lhs_frac = CycFrac::from_int(lhs.clone());
        let q = self.q() as f64;
        let log_ratio = |rhs: &CycFrac| {
            if lhs.is_zero() {
                return None;
            }
            let v = (lhs.to_complex().norm() / rhs.to_complex().norm()).ln() / q.ln();
            Some((v * 2.0).round() / 2.0)
        };
        Ok(AndersonReport {
            log_q_ratio_deg_f: log_ratio(&rhs_f),
            log_q_ratio_deg_fo: log_ratio(&rhs_fo),
            f: f.format(field),
            chi: chi.exponent(),
            conductor: fo.format(field),
            lhs_degree: lhs_deg,
            lhs_abs: lhs.to_complex().norm(),
            rhs_deg_f_abs: rhs_f.to_complex().norm(),
            rhs_deg_fo_abs: rhs_fo.to_complex().norm(),
            matches_deg_f: lhs_frac.equals(&rhs_f),
            matches_deg_fo: lhs_frac.equals(&rhs_fo),
            lhs: lhs.to_json(),
        })
    }
}

/// Outcome of one Anderson identity comparison.
#[derive(Clone, Debug, Serialize)]
pub struct AndersonReport {
    pub f: String,
    pub chi: u32,
    pub conductor: String,
    pub lhs_degree: usize,
    pub lhs: CycIntJson,
    pub lhs_abs: f64,
    /// |RHS| with exponent deg f - 1.
    pub rhs_deg_f_abs: f64,
    /// |RHS| with exponent deg f_o - 1.
    pub rhs_deg_fo_abs: f64,
    /// log_q(|LHS| / |RHS|) rounded to a half-integer, per reading.
    pub log_q_ratio_deg_f: Option<f64>,
    pub log_q_ratio_deg_fo: Option<f64>,
    pub matches_deg_f: bool,
    pub matches_deg_fo: bool,
}
