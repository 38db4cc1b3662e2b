//! Multiplicative characters of F_q^×, the additive character e on F_q(x)
//! and the Dirichlet symbol χ(f/g) = χ(R(g, f)).

use num_integer::Integer;
use serde::Serialize;

use crate::context::GaussContext;
use crate::cyclo::CycInt;
use crate::error::{Error, Result};
use crate::poly::{resultant, Poly, RationalFunc};

/// χ_m: g^k ↦ ζ_{q-1}^{mk} for the fixed generator g.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MulCharacter {
    m: u32,
    group_order: u32,
}

impl MulCharacter {
    /// χ_m in the character group of a cyclic group of order `group_order`.
    pub fn new(m: i64, group_order: u32) -> MulCharacter {
        MulCharacter { m: m.rem_euclid(group_order as i64) as u32, group_order }
    }

    pub fn exponent(self) -> u32 {
        self.m
    }

    pub fn group_order(self) -> u32 {
        self.group_order
    }

    /// Order of χ in the character group.
    pub fn order(self) -> u32 {
        self.group_order / self.m.gcd(&self.group_order)
    }

    pub fn is_trivial(self) -> bool {
        self.m == 0
    }

    pub fn pow(self, k: i64) -> MulCharacter {
        let g = self.group_order as i64;
        MulCharacter::new((self.m as i64 * k.rem_euclid(g)) % g, self.group_order)
    }

    pub fn mul(self, o: MulCharacter) -> MulCharacter {
        MulCharacter::new(self.m as i64 + o.m as i64, self.group_order)
    }

    pub fn inv(self) -> MulCharacter {
        self.pow(-1)
    }
}

/// χ₀ generating ⟨χ₁, χ₂²⟩ with χ₁ = χ₀^a and χ₂² = χ₀^b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CharTriple {
    pub chi0: MulCharacter,
    pub chi1: MulCharacter,
    pub chi2: MulCharacter,
    pub a: u32,
    pub b: u32,
    /// ord(χ₂)
    pub n: u32,
    /// ord(χ₁)
    pub n_prime: u32,
}

/// χ₀ = χ_{gcd(m₁, 2m₂, q-1)} with the least a, b >= 0.
pub fn char_decompose(chi1: MulCharacter, chi2: MulCharacter) -> CharTriple {
    let g = chi1.group_order;
    let m0 = chi1.m.gcd(&(2 * chi2.m)).gcd(&g);
    let chi0 = MulCharacter::new(m0 as i64, g);
    let ord0 = chi0.order();
    let (a, b) = if chi0.is_trivial() {
        (0, 0)
    } else {
        ((chi1.m / m0) % ord0, ((2 * chi2.m) % g / m0) % ord0)
    };
    debug_assert_eq!(chi0.pow(a as i64), chi1);
    debug_assert_eq!(chi0.pow(b as i64), chi2.pow(2));
    CharTriple { chi0, chi1, chi2, a, b, n: chi2.order(), n_prime: chi1.order() }
}

/// Least f in [0, ord ψ) with χ ψ^f = 1, or None when χ ∉ ⟨ψ⟩.
pub fn char_subgroup_log(chi: MulCharacter, psi: MulCharacter) -> Option<u32> {
    (0..psi.order()).find(|&f| chi.mul(psi.pow(f as i64)).is_trivial())
}

impl GaussContext {
    /// e(f) = e_o(u), u the coefficient of x^{-1} in the expansion of f at ∞.
    pub fn additive_e(&self, f: &RationalFunc) -> Result<CycInt> {
        Ok(self.zeta(self.additive_e_exponent(f)? as i64))
    }

    pub(crate) fn additive_e_exponent(&self, f: &RationalFunc) -> Result<u64> {
        let field = self.field();
        let den_deg = f.den.deg().ok_or(Error::DivisionByZero)?;
        if den_deg == 0 {
            return Ok(0);
        }
        let s = f.num.rem(field, &f.den)?;
        let u = field.div(s.coeff(den_deg - 1), f.den.lc())?;
        Ok(self.additive_exponent(u))
    }

    /// χ(f/g) = χ(R(g, f)); zero iff f and g share a factor.
    pub fn dirichlet_symbol(&self, chi: MulCharacter, f: &Poly, g: &Poly) -> Result<CycInt> {
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.char_value(chi, resultant(self.field(), g, f)))
    }

    /// χ(u/v / g) = χ(R(g,u)) χ^{-1}(R(g,v)); errors when v shares a factor with g.
    pub fn dirichlet_symbol_rational(&self, chi: MulCharacter, f: &RationalFunc, g: &Poly) -> Result<CycInt> {
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let field = self.field();
        let rv = resultant(field, g, &f.den);
        if rv.is_zero() {
            return Err(Error::PoleClash);
        }
        let ru = resultant(field, g, &f.num);
        Ok(&self.char_value(chi, ru) * &self.char_value(chi.inv(), rv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::residue_unrank;

    #[test]
    fn character_values() {
        for (p, e) in [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1)] {
            let ctx = GaussContext::new(p, e).unwrap();
            let f = ctx.field().clone();
            let omega = ctx.omega();
            assert_eq!(ctx.char_value(omega, f.generator()), ctx.ring().from_int(-1));
            for chi in ctx.characters() {
                assert!(ctx.char_value(chi, f.zero()).is_zero());
                let mut total = ctx.ring().zero();
                for a in f.elements().skip(1) {
                    if chi.is_trivial() {
                        assert!(ctx.char_value(chi, a).is_one());
                    }
                    total = &total + &ctx.char_value(chi, a);
                    for b in f.elements().skip(1) {
                        assert_eq!(
                            ctx.char_value(chi, f.mul(a, b)),
                            &ctx.char_value(chi, a) * &ctx.char_value(chi, b)
                        );
                    }
                }
                if !chi.is_trivial() {
                    assert!(total.is_zero());
                }
                let minus_one = f.neg(f.one());
                assert_eq!(ctx.char_value(chi, minus_one), ctx.ring().from_int(ctx.char_sign(chi)));
            }
        }
    }

    #[test]
    fn additive_character() {
        let ctx = GaussContext::new(3, 2).unwrap();
        let f = ctx.field().clone();
        let total = f.elements().fold(ctx.ring().zero(), |acc, t| {
            let e = ctx.additive_e(&RationalFunc::from_poly(&f, Poly::constant(t))).unwrap();
            // constants have no x^{-1} term
            assert!(e.is_one());
            &acc + &ctx.zeta(ctx.additive_exponent(t) as i64)
        });
        assert!(total.is_zero());
        let one_over_x = RationalFunc::new(Poly::one(&f), Poly::x(&f)).unwrap();
        assert_eq!(ctx.additive_e(&one_over_x).unwrap(), ctx.zeta(ctx.additive_exponent(f.one()) as i64));
        let c = Poly::from_ints(&f, &[1, 1, 0, 1]);
        let d = Poly::from_ints(&f, &[2, 1]);
        assert!(ctx.additive_e(&RationalFunc::new(d, c).unwrap()).unwrap().is_one());
        assert!(ctx.additive_e(&RationalFunc { num: Poly::one(&f), den: Poly::zero() }).is_err());
    }

    #[test]
    fn additive_character_ignores_polynomial_part() {
        let ctx = GaussContext::new(5, 1).unwrap();
        let f = ctx.field().clone();
        let den = Poly::from_ints(&f, &[1, 2, 1]);
        for k in 0..125 {
            let num = residue_unrank(&f, 3, k);
            let base = RationalFunc::new(num, den.clone()).unwrap();
            for h in 0..25 {
                let hp = RationalFunc::from_poly(&f, residue_unrank(&f, 2, h));
                let shifted = base.add(&f, &hp);
                assert_eq!(ctx.additive_e(&shifted).unwrap(), ctx.additive_e(&base).unwrap());
            }
        }
    }

    #[test]
    fn symbol_examples() {
        let ctx = GaussContext::new(5, 1).unwrap();
        let f = ctx.field().clone();
        let x = Poly::x(&f);
        for chi in ctx.characters() {
            for k in 0..125 {
                let g = residue_unrank(&f, 3, k);
                assert_eq!(
                    ctx.dirichlet_symbol(chi, &g, &x).unwrap(),
                    ctx.char_value(chi, g.eval(&f, f.zero()))
                );
            }
        }
        let chi = ctx.character(1);
        let g = Poly::from_ints(&f, &[-1, 1]).mul(&f, &Poly::from_ints(&f, &[2, 1]));
        let h = Poly::from_ints(&f, &[-1, 1]).mul(&f, &Poly::from_ints(&f, &[3, 1]));
        assert!(ctx.dirichlet_symbol(chi, &h, &g).unwrap().is_zero());
        assert!(ctx.dirichlet_symbol(chi, &h, &Poly::zero()).is_err());
    }

    #[test]
    fn symbol_depends_on_residue_and_is_multiplicative() {
        let ctx = GaussContext::new(5, 1).unwrap();
        let f = ctx.field().clone();
        let polys: Vec<Poly> = (0..125).map(|k| residue_unrank(&f, 3, k)).collect();
        let moduli: Vec<Poly> = polys.iter().filter(|g| g.is_monic(&f) && g.deg().is_some_and(|d| (1..=2).contains(&d))).cloned().collect();
        for chi in [ctx.character(1), ctx.omega()] {
            for g in &moduli {
                for a in polys.iter().take(25) {
                    let base = ctx.dirichlet_symbol(chi, a, g).unwrap();
                    for h in polys.iter().take(25) {
                        let shifted = a.add(&f, &h.mul(&f, g));
                        assert_eq!(ctx.dirichlet_symbol(chi, &shifted, g).unwrap(), base);
                        let prod = ctx.dirichlet_symbol(chi, &a.mul(&f, h), g).unwrap();
                        assert_eq!(prod, &base * &ctx.dirichlet_symbol(chi, h, g).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn rational_symbol() {
        let ctx = GaussContext::new(7, 1).unwrap();
        let f = ctx.field().clone();
        let chi = ctx.character(1);
        let g = Poly::from_ints(&f, &[1, 0, 1]);
        let u = Poly::from_ints(&f, &[1, 1]);
        let v = Poly::from_ints(&f, &[2, 1]);
        let direct = ctx.dirichlet_symbol_rational(chi, &RationalFunc::new(u.clone(), v.clone()).unwrap(), &g).unwrap();
        let prod = ctx.dirichlet_symbol(chi, &u, &g).unwrap();
        assert_eq!(&direct * &ctx.dirichlet_symbol(chi, &v, &g).unwrap(), prod);
        let clash = RationalFunc::new(u, g.clone()).unwrap();
        assert_eq!(ctx.dirichlet_symbol_rational(chi, &clash, &g), Err(Error::PoleClash));
    }

    #[test]
    fn decomposition() {
        let ctx = GaussContext::new(13, 1).unwrap();
        let t = char_decompose(ctx.character(4), ctx.character(3));
        assert_eq!(t.chi0, ctx.character(2));
        assert_eq!((t.a, t.b), (2, 3));
        let ctx5 = GaussContext::new(5, 1).unwrap();
        let w = ctx5.omega();
        let t = char_decompose(w, w);
        assert_eq!((t.chi0, t.a, t.b), (w, 1, 0));
        for m2 in 0..4 {
            let t = char_decompose(ctx5.character(0), ctx5.character(m2));
            assert_eq!(t.a, 0);
            assert_eq!(t.chi0, ctx5.character((2 * m2).gcd(&4)));
        }
        for c1 in ctx.characters() {
            for c2 in ctx.characters() {
                let t = char_decompose(c1, c2);
                assert_eq!(t.chi0.pow(t.a as i64), c1);
                assert_eq!(t.chi0.pow(t.b as i64), c2.pow(2));
                assert!(t.a < t.chi0.order().max(1) && t.b < t.chi0.order().max(1));
            }
        }
    }

    #[test]
    fn subgroup_logs() {
        let ctx = GaussContext::new(13, 1).unwrap();
        let psi = ctx.character(5);
        assert_eq!(char_subgroup_log(ctx.character(0), psi), Some(0));
        assert_eq!(char_subgroup_log(psi.inv(), psi), Some(1));
        assert_eq!(char_subgroup_log(ctx.character(3), ctx.omega()), None);
    }
}
