//! Characters of F^x = p^Z x Z_p^x and their local factors: Gauss sums,
//! L/epsilon/gamma factors, Tate integrals, and the stability check for
//! highly ramified twists.
//!
//! The unramified part is a SymbolField value (a formal symbol or an exact
//! cyclotomic); the finite part is a character of (Z/p^k)^x given by the
//! image of a fixed generator. The additive character is normalized by
//! psi(a/p^k) = zeta_{p^k}^{-a}: trivial on Z_p, nontrivial on p^{-1}Z_p.

use crate::algebra::{geometric_sum, Cyclo, SumRange, SymbolField, SymbolRegistry};
use crate::arith::{rat_i64, residue_mod_pk, unit_group_generator, valuation, Rational};
use crate::{Error, Result};

/// Additive character psi^twist with psi(a/p^k) = zeta_{p^k}^{-a}.
#[derive(Clone, Debug)]
pub struct AdditiveCharacter {
    pub p: u64,
    /// psi^m(x) = psi(m x); m = -1 gives the inverse character.
    pub twist: i64,
}

impl AdditiveCharacter {
    pub fn standard(p: u64) -> Self {
        AdditiveCharacter { p, twist: 1 }
    }

    pub fn inverse(&self) -> Self {
        AdditiveCharacter { p: self.p, twist: -self.twist }
    }

    pub fn twisted(&self, m: i64) -> Self {
        AdditiveCharacter { p: self.p, twist: self.twist * m }
    }

    /// Exact value at a rational with p-power denominator.
    pub fn eval(&self, x: &Rational) -> Cyclo {
        let y = x * rat_i64(self.twist);
        match valuation(&y, self.p) {
            None => Cyclo::one(),
            Some(v) if v >= 0 => Cyclo::one(),
            Some(v) => {
                let k = (-v) as u32;
                let pk = self.p.pow(k);
                // y = a / p^k with a the residue of y * p^k
                let a = residue_mod_pk(&(y * crate::arith::power_rat(self.p, k as i64)), self.p, k);
                Cyclo::root_of_unity(pk as u32, -(a as i64))
            }
        }
    }
}

/// Finite-order character of (Z/p^k)^x, given by a generator image.
#[derive(Clone, Debug)]
pub struct FinitePart {
    pub p: u64,
    pub k: u32,
    /// The fixed generator of the cyclic group (Z/p^k)^x.
    pub generator: u64,
    /// chi(generator) = zeta_{phi(p^k)}^{exponent}.
    pub exponent: u64,
    order: u64,
}

impl FinitePart {
    pub fn trivial(p: u64) -> Self {
        FinitePart { p, k: 0, generator: 1, exponent: 0, order: 1 }
    }

    pub fn new(p: u64, k: u32, exponent: u64) -> Self {
        assert!(k >= 1);
        let generator = unit_group_generator(p, k);
        let order = p.pow(k - 1) * (p - 1);
        FinitePart { p, k, generator, exponent: exponent % order, order }
    }

    pub fn group_order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }

    /// Discrete log of a unit residue with respect to the generator.
    fn dlog(&self, unit: u64) -> u64 {
        let m = self.p.pow(self.k);
        let mut x = 1u64;
        for e in 0..self.order {
            if x == unit % m {
                return e;
            }
            x = x * self.generator % m;
        }
        panic!("not a unit mod p^k: {unit}")
    }

    pub fn eval_unit(&self, unit: u64) -> Cyclo {
        if self.k == 0 {
            return Cyclo::one();
        }
        let e = self.dlog(unit);
        Cyclo::root_of_unity(self.order as u32, (e * self.exponent % self.order) as i64)
    }

    /// Conductor exponent: smallest c with the character trivial on 1+p^c.
    pub fn conductor(&self) -> u32 {
        if self.exponent == 0 {
            return 0;
        }
        'outer: for c in 1..=self.k {
            let m = self.p.pow(self.k);
            let step = self.p.pow(c);
            let mut u = 1 + step;
            while u < m {
                if !self.eval_unit(u).is_one() {
                    continue 'outer;
                }
                u += step;
            }
            return c;
        }
        self.k
    }

    pub fn inverse(&self) -> FinitePart {
        let mut out = self.clone();
        out.exponent = (self.order - self.exponent) % self.order;
        out
    }

    /// Product of two finite parts at the same prime (lifting to max level).
    pub fn mul(&self, other: &FinitePart) -> FinitePart {
        assert_eq!(self.p, other.p);
        if self.k == 0 {
            return other.clone();
        }
        if other.k == 0 {
            return self.clone();
        }
        let k = self.k.max(other.k);
        let lifted = |fp: &FinitePart| -> FinitePart {
            if fp.k == k {
                fp.clone()
            } else {
                let up = FinitePart::new(fp.p, k, 0);
                let gen_res = up.generator % fp.p.pow(fp.k);
                let e = fp.dlog(gen_res) * fp.exponent % fp.order;
                // zeta_{fp.order}^e = zeta_{up.order}^{e * up.order / fp.order}
                let scaled = e % fp.order * (up.order / fp.order) % up.order;
                FinitePart { exponent: scaled, ..up }
            }
        };
        let a = lifted(self);
        let b = lifted(other);
        FinitePart { exponent: (a.exponent + b.exponent) % a.order, ..a }
    }
}

/// Character of F^x: unramified value at the uniformizer times a finite part.
#[derive(Clone, Debug)]
pub struct PadicCharacter {
    pub reg: SymbolRegistry,
    pub p: u64,
    /// chi(p) as a SymbolField (formal symbol or cyclotomic constant).
    pub value_at_p: SymbolField,
    pub finite: FinitePart,
}

impl PadicCharacter {
    pub fn unramified(reg: &SymbolRegistry, p: u64, value_at_p: SymbolField) -> Self {
        PadicCharacter { reg: reg.clone(), p, value_at_p, finite: FinitePart::trivial(p) }
    }

    pub fn trivial(reg: &SymbolRegistry, p: u64) -> Self {
        Self::unramified(reg, p, SymbolField::one(reg))
    }

    pub fn new(reg: &SymbolRegistry, p: u64, value_at_p: SymbolField, finite: FinitePart) -> Self {
        PadicCharacter { reg: reg.clone(), p, value_at_p, finite }
    }

    pub fn conductor(&self) -> u32 {
        self.finite.conductor()
    }

    pub fn is_unramified(&self) -> bool {
        self.conductor() == 0
    }

    pub fn inverse(&self) -> Result<PadicCharacter> {
        Ok(PadicCharacter {
            reg: self.reg.clone(),
            p: self.p,
            value_at_p: self.value_at_p.inverse()?,
            finite: self.finite.inverse(),
        })
    }

    pub fn mul(&self, other: &PadicCharacter) -> PadicCharacter {
        assert_eq!(self.p, other.p);
        PadicCharacter {
            reg: self.reg.clone(),
            p: self.p,
            value_at_p: self.value_at_p.mul(&other.value_at_p),
            finite: self.finite.mul(&other.finite),
        }
    }

    /// chi(x) = value_at_p^{v(x)} * finite(unit part of x).
    pub fn eval(&self, x: &Rational) -> Result<SymbolField> {
        let v = valuation(x, self.p).ok_or_else(|| Error::Config("character at 0".into()))?;
        let mut out = self.value_at_p.pow(v as i32)?;
        if self.finite.k > 0 {
            let unit = crate::arith::unit_part(x, self.p);
            let res = residue_mod_pk(&unit, self.p, self.finite.k);
            out = out.scale(&self.finite.eval_unit(res));
        }
        Ok(out)
    }

    pub fn eval_i64(&self, x: i64) -> Result<SymbolField> {
        self.eval(&rat_i64(x))
    }

    /// chi(-1) as a scalar.
    pub fn value_at_minus_one(&self) -> Cyclo {
        if self.finite.k == 0 {
            Cyclo::one()
        } else {
            let m = self.p.pow(self.finite.k);
            self.finite.eval_unit(m - 1)
        }
    }
}

/// Gauss sum g(chi, psi) = sum over units a mod p^c of chi(a)^{-1} psi(-a/p^c);
/// formally 1 for unramified chi.
pub fn gauss_sum(chi: &PadicCharacter, psi: &AdditiveCharacter) -> Cyclo {
    let c = chi.conductor();
    if c == 0 {
        return Cyclo::one();
    }
    let p = chi.p;
    let m = p.pow(c);
    let inv = chi.finite.inverse();
    let mut acc = Cyclo::zero();
    for a in 1..m {
        if a % p == 0 {
            continue;
        }
        let res = a % p.pow(chi.finite.k);
        let chi_val = inv.eval_unit(res);
        let psi_val = psi.eval(&(rat_i64(-(a as i64)) * crate::arith::power_rat(p, -(c as i64))));
        acc = acc.add(&chi_val.mul(&psi_val));
    }
    acc
}

/// The triple (L, eps, gamma) as SymbolField elements in X = q^{-s}.
pub struct LocalFactors {
    pub l: SymbolField,
    pub eps: SymbolField,
    pub gamma: SymbolField,
}

/// L(s, chi) in X.
pub fn l_factor(chi: &PadicCharacter, x_id: usize) -> SymbolField {
    let reg = &chi.reg;
    if chi.is_unramified() {
        let x = SymbolField::symbol(reg, x_id);
        SymbolField::one(reg)
            .div(&SymbolField::one(reg).sub(&chi.value_at_p.mul(&x)))
            .expect("nonzero")
    } else {
        SymbolField::one(reg)
    }
}

/// eps(s, chi, psi) = (q^{1/2} X)^{c(chi)} * eps(1/2, chi, psi), with
/// eps(1/2, chi, psi) read off the Gauss-sum relation
/// g(chi, psi) = q^{c/2} chi(p)^{-c} eps(1/2, chi, psi^{-1}).
pub fn eps_factor(chi: &PadicCharacter, psi: &AdditiveCharacter, x_id: usize) -> Result<SymbolField> {
    let reg = &chi.reg;
    let c = chi.conductor() as i32;
    if c == 0 {
        return Ok(SymbolField::one(reg));
    }
    let g = gauss_sum(chi, &psi.inverse());
    let central = SymbolField::from_cyclo(reg, g)
        .mul(&SymbolField::q_half_pow(reg, -c))
        .mul(&chi.value_at_p.pow(c)?);
    let shift = SymbolField::symbol_pow(reg, x_id, c).mul(&SymbolField::q_half_pow(reg, c));
    Ok(central.mul(&shift))
}

/// gamma(s, chi, psi) = eps(s, chi, psi) L(1-s, chi^{-1}) / L(s, chi).
pub fn gamma_factor(
    chi: &PadicCharacter,
    psi: &AdditiveCharacter,
    x_id: usize,
) -> Result<SymbolField> {
    let reg = &chi.reg;
    let eps = eps_factor(chi, psi, x_id)?;
    let chi_inv = chi.inverse()?;
    // L(1-s, chi^{-1}): substitute q^{-(1-s)} = q^{-1} X^{-1}
    let l_dual = if chi_inv.is_unramified() {
        let xinv = SymbolField::symbol_pow(reg, x_id, -1).mul(&SymbolField::q_pow(reg, -1));
        SymbolField::one(reg)
            .div(&SymbolField::one(reg).sub(&chi_inv.value_at_p.mul(&xinv)))
            .expect("nonzero")
    } else {
        SymbolField::one(reg)
    };
    let l = l_factor(chi, x_id);
    eps.mul(&l_dual).div(&l)
}

/// All three local factors.
pub fn local_factors(
    chi: &PadicCharacter,
    psi: &AdditiveCharacter,
    x_id: usize,
) -> Result<LocalFactors> {
    Ok(LocalFactors {
        l: l_factor(chi, x_id),
        eps: eps_factor(chi, psi, x_id)?,
        gamma: gamma_factor(chi, psi, x_id)?,
    })
}

/// Substitute X -> q^{-half/2} (the point s = half/2).
pub fn at_s_half_units(f: &SymbolField, x_id: usize, half: i32) -> Result<SymbolField> {
    let reg = f.reg();
    let val = SymbolField::q_half_pow(reg, -half);
    f.substitute(x_id, &val)
}

pub fn gamma_at_half(
    chi: &PadicCharacter,
    psi: &AdditiveCharacter,
    x_id: usize,
) -> Result<SymbolField> {
    at_s_half_units(&gamma_factor(chi, psi, x_id)?, x_id, 1)
}

pub fn gamma_at_one(
    chi: &PadicCharacter,
    psi: &AdditiveCharacter,
    x_id: usize,
) -> Result<SymbolField> {
    at_s_half_units(&gamma_factor(chi, psi, x_id)?, x_id, 2)
}

/// Basic functions entering the supported Tate integrals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasicFunction {
    IndicatorIntegers,
    IndicatorUnits,
    /// 1_{1 + p^l Z_p}
    IndicatorOnePlus(u32),
    /// Fourier transform of one of the above (with respect to psi).
    Fourier(Box<BasicFunction>),
}

/// Tate integral Z(s, phi, chi) = int phi(a) chi(a) |a|^s d^x a with
/// vol(Z_p^x) = 1, as a SymbolField in X = q^{-s}.
pub fn tate_integral(
    phi: &BasicFunction,
    chi: &PadicCharacter,
    psi: &AdditiveCharacter,
    x_id: usize,
) -> Result<SymbolField> {
    let reg = &chi.reg;
    let p = chi.p;
    let x = SymbolField::symbol(reg, x_id);
    match phi {
        BasicFunction::IndicatorIntegers => {
            if chi.is_unramified() {
                geometric_sum(&SymbolField::one(reg), &chi.value_at_p.mul(&x), SumRange::From(0))
            } else {
                Ok(SymbolField::zero(reg))
            }
        }
        BasicFunction::IndicatorUnits => {
            if chi.is_unramified() {
                Ok(SymbolField::one(reg))
            } else {
                Ok(SymbolField::zero(reg))
            }
        }
        BasicFunction::IndicatorOnePlus(l) => {
            if chi.conductor() <= *l {
                // multiplicative volume of 1 + p^l: 1/((q-1) q^{l-1})
                let vol = Rational::new(1.into(), ((p - 1) * p.pow(l - 1)).into());
                Ok(SymbolField::from_rational(reg, vol))
            } else {
                Ok(SymbolField::zero(reg))
            }
        }
        BasicFunction::Fourier(inner) => tate_integral_fourier(inner, chi, psi, x_id),
    }
}

/// Pointwise value of the Fourier transform of a basic function at y,
/// with the self-dual additive measure (vol(Z_p) = 1).
pub fn fourier_value(phi: &BasicFunction, y: &Rational, psi: &AdditiveCharacter) -> Cyclo {
    let p = psi.p;
    match phi {
        BasicFunction::IndicatorIntegers => {
            if valuation(y, p).map_or(true, |v| v >= 0) {
                Cyclo::one()
            } else {
                Cyclo::zero()
            }
        }
        BasicFunction::IndicatorUnits => {
            // 1_{o^x} = 1_o - 1_{p o}: hat = 1_o(y) - p^{-1} 1_{p^{-1} o}(y)
            let a = fourier_value(&BasicFunction::IndicatorIntegers, y, psi);
            let in_pinv = valuation(y, p).map_or(true, |v| v >= -1);
            let b = if in_pinv {
                Cyclo::from_rational(Rational::new(1.into(), p.into()))
            } else {
                Cyclo::zero()
            };
            a.sub(&b)
        }
        BasicFunction::IndicatorOnePlus(l) => {
            // int_{1+p^l} psi(-ty) dt = psi(-y) q^{-l} 1_{v(y) >= -l}
            if valuation(y, p).map_or(true, |v| v >= -(*l as i64)) {
                let vol = Rational::new(1.into(), p.pow(*l).into());
                psi.eval(&(-y)).scale(&vol)
            } else {
                Cyclo::zero()
            }
        }
        BasicFunction::Fourier(_) => panic!("double Fourier transform not supported pointwise"),
    }
}

fn tate_integral_fourier(
    inner: &BasicFunction,
    chi: &PadicCharacter,
    psi: &AdditiveCharacter,
    x_id: usize,
) -> Result<SymbolField> {
    let reg = &chi.reg;
    let p = chi.p;
    let x = SymbolField::symbol(reg, x_id);
    match inner {
        BasicFunction::IndicatorIntegers => {
            tate_integral(&BasicFunction::IndicatorIntegers, chi, psi, x_id)
        }
        BasicFunction::IndicatorUnits => {
            let base = tate_integral(&BasicFunction::IndicatorIntegers, chi, psi, x_id)?;
            let pm1 = SymbolField::from_rational(reg, Rational::new(1.into(), p.into()));
            let shell = if chi.is_unramified() {
                chi.value_at_p.pow(-1)?.mul(&x.pow(-1)?)
            } else {
                SymbolField::zero(reg)
            };
            Ok(base.sub(&pm1.mul(&shell.add(&base))))
        }
        BasicFunction::IndicatorOnePlus(l) => {
            // hat(y) = psi(-y) q^{-l} on v(y) >= -l; shell-by-shell sum with
            // exact unit sums where psi is nontrivial.
            let l = *l;
            let c = chi.conductor();
            let mut acc = SymbolField::zero(reg);
            let ql = SymbolField::from_rational(reg, Rational::new(1.into(), p.pow(l).into()));
            for v in -(l as i64)..0 {
                let k = (-v) as u32;
                let m = p.pow(k);
                if c > k {
                    continue;
                }
                let mut shell_sum = Cyclo::zero();
                for u in 1..m {
                    if u % p == 0 {
                        continue;
                    }
                    let cu = if chi.finite.k == 0 {
                        Cyclo::one()
                    } else {
                        chi.finite.eval_unit(u % p.pow(chi.finite.k))
                    };
                    let pv = psi.eval(&(rat_i64(-(u as i64)) * crate::arith::power_rat(p, v)));
                    shell_sum = shell_sum.add(&cu.mul(&pv));
                }
                // each unit class mod p^k carries multiplicative volume 1/phi(p^k)
                let phi_pk = Rational::new(1.into(), ((p - 1) * p.pow(k - 1)).into());
                let term = SymbolField::from_cyclo(reg, shell_sum.scale(&phi_pk))
                    .mul(&chi.value_at_p.pow(v as i32)?)
                    .mul(&x.pow(v as i32)?);
                acc = acc.add(&term);
            }
            if c == 0 {
                let tail = geometric_sum(
                    &SymbolField::one(reg),
                    &chi.value_at_p.mul(&x),
                    SumRange::From(0),
                )?;
                acc = acc.add(&tail);
            }
            Ok(ql.mul(&acc))
        }
        BasicFunction::Fourier(_) => Err(Error::Unsupported("nested Fourier transform".into())),
    }
}

/// Outcome of the epsilon-stability check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilityOutcome {
    Holds,
    Fails,
    /// Twist conductor below the threshold; check skipped.
    BelowThreshold,
}

/// For sigma = (chi1, chi2) principal-series data and a deeply ramified
/// twisting character chi: c(sigma x chi) = 2 c(chi) and
/// eps(s, sigma x chi, psi) = eps(s, chi, psi) eps(s, omega_sigma chi, psi).
pub fn stability_check(
    sigma: (&PadicCharacter, &PadicCharacter),
    chi: &PadicCharacter,
    psi: &AdditiveCharacter,
    x_id: usize,
    threshold: u32,
) -> Result<StabilityOutcome> {
    let (chi1, chi2) = sigma;
    if chi.conductor() < threshold.max(1) {
        return Ok(StabilityOutcome::BelowThreshold);
    }
    let t1 = chi1.mul(chi);
    let t2 = chi2.mul(chi);
    let cond_ok = t1.conductor() + t2.conductor() == 2 * chi.conductor();
    let lhs = eps_factor(&t1, psi, x_id)?.mul(&eps_factor(&t2, psi, x_id)?);
    let omega = chi1.mul(chi2);
    let rhs = eps_factor(chi, psi, x_id)?.mul(&eps_factor(&omega.mul(chi), psi, x_id)?);
    if cond_ok && crate::algebra::ratfun_eq(&lhs, &rhs)? {
        Ok(StabilityOutcome::Holds)
    } else {
        Ok(StabilityOutcome::Fails)
    }
}

/// All finite-part characters modulo p^k (by generator-image exponent).
pub fn all_finite_parts(p: u64, k: u32) -> Vec<FinitePart> {
    if k == 0 {
        return vec![FinitePart::trivial(p)];
    }
    let order = p.pow(k - 1) * (p - 1);
    (0..order).map(|e| FinitePart::new(p, k, e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratfun_eq;

    fn setup(p: u64) -> (SymbolRegistry, AdditiveCharacter) {
        (SymbolRegistry::new(&["X", "alpha"]), AdditiveCharacter::standard(p))
    }

    #[test]
    fn psi_normalization() {
        let psi = AdditiveCharacter::standard(3);
        assert!(psi.eval(&rat_i64(5)).is_one());
        assert_eq!(
            psi.eval(&Rational::new(1.into(), 3.into())),
            Cyclo::root_of_unity(3, -1)
        );
    }

    #[test]
    fn trivial_gauss_sum_is_one() {
        let (reg, psi) = setup(5);
        let chi = PadicCharacter::trivial(&reg, 5);
        assert!(gauss_sum(&chi, &psi).is_one());
    }

    #[test]
    fn gauss_sum_norms() {
        // |g(chi,psi)|^2 = q^{c(chi)} for primitive characters.
        let (reg, psi) = setup(5);
        let chi = PadicCharacter::new(&reg, 5, SymbolField::one(&reg), FinitePart::new(5, 1, 1));
        let g = gauss_sum(&chi, &psi);
        assert_eq!(g.norm_squared(), Cyclo::from_i64(5));

        let (reg3, psi3) = setup(3);
        let chi3 = PadicCharacter::new(&reg3, 3, SymbolField::one(&reg3), FinitePart::new(3, 1, 1));
        let g3 = gauss_sum(&chi3, &psi3);
        assert_eq!(g3.norm_squared(), Cyclo::from_i64(3));
    }

    #[test]
    fn unramified_l_factor_and_eps() {
        let (reg, psi) = setup(3);
        let alpha = SymbolField::symbol(&reg, reg.id("alpha"));
        let chi = PadicCharacter::unramified(&reg, 3, alpha.clone());
        let x_id = reg.id("X");
        let lf = local_factors(&chi, &psi, x_id).unwrap();
        let x = SymbolField::symbol(&reg, x_id);
        let expect = SymbolField::one(&reg)
            .div(&SymbolField::one(&reg).sub(&alpha.mul(&x)))
            .unwrap();
        assert!(ratfun_eq(&lf.l, &expect).unwrap());
        assert!(lf.eps.is_one());
    }

    #[test]
    fn gamma_functional_equation_sweep() {
        // gamma(1/2,chi,psi) gamma(1/2,chi^{-1},psi) = chi(-1)
        for p in [3u64, 5] {
            let (reg, psi) = setup(p);
            let x_id = reg.id("X");
            for k in 0..=2u32 {
                for fp in all_finite_parts(p, k) {
                    let chi = PadicCharacter::new(&reg, p, SymbolField::one(&reg), fp);
                    let g1 = gamma_at_half(&chi, &psi, x_id).unwrap();
                    let g2 = gamma_at_half(&chi.inverse().unwrap(), &psi, x_id).unwrap();
                    let lhs = g1.mul(&g2);
                    let rhs = SymbolField::from_cyclo(&reg, chi.value_at_minus_one());
                    assert!(
                        lhs.eq_at_prime(&rhs, p).unwrap(),
                        "functional equation failed p={p} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn tate_integral_matches_l_factor() {
        let (reg, psi) = setup(3);
        let x_id = reg.id("X");
        let alpha = SymbolField::symbol(&reg, reg.id("alpha"));
        let chi = PadicCharacter::unramified(&reg, 3, alpha);
        let z = tate_integral(&BasicFunction::IndicatorIntegers, &chi, &psi, x_id).unwrap();
        let l = l_factor(&chi, x_id);
        assert!(ratfun_eq(&z, &l).unwrap());
    }

    #[test]
    fn tate_one_plus_volume() {
        let (reg, psi) = setup(3);
        let x_id = reg.id("X");
        let chi = PadicCharacter::new(&reg, 3, SymbolField::one(&reg), FinitePart::new(3, 1, 1));
        let z = tate_integral(&BasicFunction::IndicatorOnePlus(2), &chi, &psi, x_id).unwrap();
        let expect = SymbolField::from_rational(&reg, Rational::new(1.into(), 6.into()));
        assert!(ratfun_eq(&z, &expect).unwrap());
    }

    #[test]
    fn tate_functional_equation_on_family() {
        // With the psi(-xy) Fourier kernel the functional equation reads
        // Z(1-s, hat phi, chi^{-1}) = gamma(s, chi, psi^{-1}) Z(s, phi, chi).
        let p = 3u64;
        let reg = SymbolRegistry::new(&["X", "alpha"]);
        let psi = AdditiveCharacter::standard(p);
        let x_id = reg.id("X");
        for l in 1..=2u32 {
            let phi = BasicFunction::IndicatorOnePlus(l);
            let hat = BasicFunction::Fourier(Box::new(phi.clone()));
            for ramified in [false, true] {
                let chi = if ramified {
                    PadicCharacter::new(&reg, p, SymbolField::one(&reg), FinitePart::new(p, 1, 1))
                } else {
                    PadicCharacter::unramified(&reg, p, SymbolField::symbol(&reg, reg.id("alpha")))
                };
                let z = tate_integral(&phi, &chi, &psi, x_id).unwrap();
                let zh = tate_integral(&hat, &chi.inverse().unwrap(), &psi, x_id).unwrap();
                let x_flip =
                    SymbolField::q_pow(&reg, -1).mul(&SymbolField::symbol_pow(&reg, x_id, -1));
                let zh_flipped = zh.substitute(x_id, &x_flip).unwrap();
                let gamma = gamma_factor(&chi, &psi.inverse(), x_id).unwrap();
                let rhs = gamma.mul(&z);
                assert!(
                    zh_flipped.eq_at_prime(&rhs, p).unwrap(),
                    "Tate functional equation failed (l={l}, ramified={ramified})"
                );
            }
        }
    }

    #[test]
    fn eps_twist_covariance() {
        // eps(1/2, chi, psi^a) = chi(a) eps(1/2, chi, psi) for unit a.
        let p = 5u64;
        let reg = SymbolRegistry::new(&["X"]);
        let x_id = reg.id("X");
        let psi = AdditiveCharacter::standard(p);
        let chi = PadicCharacter::new(&reg, p, SymbolField::one(&reg), FinitePart::new(p, 1, 2));
        for a in [2i64, 3, 4] {
            let lhs =
                at_s_half_units(&eps_factor(&chi, &psi.twisted(a), x_id).unwrap(), x_id, 1).unwrap();
            let rhs = at_s_half_units(&eps_factor(&chi, &psi, x_id).unwrap(), x_id, 1)
                .unwrap()
                .mul(&chi.eval_i64(a).unwrap());
            assert!(lhs.eq_at_prime(&rhs, p).unwrap());
        }
    }

    #[test]
    fn stability_for_deep_twists() {
        let p = 3u64;
        let reg = SymbolRegistry::new(&["X", "a1", "a2"]);
        let x_id = reg.id("X");
        let psi = AdditiveCharacter::standard(p);
        let s1 = PadicCharacter::unramified(&reg, p, SymbolField::symbol(&reg, reg.id("a1")));
        let s2 = PadicCharacter::unramified(&reg, p, SymbolField::symbol(&reg, reg.id("a2")));
        let chi = PadicCharacter::new(&reg, p, SymbolField::one(&reg), FinitePart::new(p, 2, 1));
        assert_eq!(
            stability_check((&s1, &s2), &chi, &psi, x_id, 2).unwrap(),
            StabilityOutcome::Holds
        );
        let chi0 = PadicCharacter::new(&reg, p, SymbolField::one(&reg), FinitePart::new(p, 1, 1));
        let chi3 = PadicCharacter::new(&reg, p, SymbolField::one(&reg), FinitePart::new(p, 3, 1));
        assert_eq!(
            stability_check((&chi0, &chi0.inverse().unwrap()), &chi3, &psi, x_id, 2).unwrap(),
            StabilityOutcome::Holds
        );
        let triv = PadicCharacter::trivial(&reg, p);
        assert_eq!(
            stability_check((&s1, &s2), &triv, &psi, x_id, 2).unwrap(),
            StabilityOutcome::BelowThreshold
        );
    }

    #[test]
    fn conductor_detection() {
        let p = 3u64;
        // order-2 character at level 2 factors through level 1
        let fp = FinitePart::new(p, 2, 3);
        assert_eq!(fp.conductor(), 1);
        let fp2 = FinitePart::new(p, 2, 1);
        assert_eq!(fp2.conductor(), 2);
    }
}
