//! Rational functions in the registry symbols: a Laurent-polynomial
//! numerator over a product of tracked denominator factors.
//!
//! Denominator factors are kept monic under the term order and cancelled
//! against the numerator by exact division whenever possible, so the stored
//! form is deterministic. Equality is decided by cross-multiplication, which
//! is sound and complete independently of any remaining common factors.

use std::fmt;

use crate::algebra::cyclo::Cyclo;
use crate::algebra::poly::{Poly, SymbolId, SymbolRegistry};
use crate::arith::Rational;
use crate::Error;

#[derive(Clone, PartialEq, Eq)]
pub struct SymbolField {
    pub num: Poly,
    /// Monic factors with multiplicities, sorted for determinism.
    pub den: Vec<(Poly, u32)>,
}

impl SymbolField {
    pub fn zero(reg: &SymbolRegistry) -> Self {
        SymbolField { num: Poly::zero(reg), den: Vec::new() }
    }

    pub fn one(reg: &SymbolRegistry) -> Self {
        SymbolField { num: Poly::one(reg), den: Vec::new() }
    }

    pub fn from_poly(p: Poly) -> Self {
        SymbolField { num: p, den: Vec::new() }
    }

    pub fn from_cyclo(reg: &SymbolRegistry, c: Cyclo) -> Self {
        SymbolField { num: Poly::constant(reg, c), den: Vec::new() }
    }

    pub fn from_rational(reg: &SymbolRegistry, r: Rational) -> Self {
        Self::from_cyclo(reg, Cyclo::from_rational(r))
    }

    pub fn from_i64(reg: &SymbolRegistry, n: i64) -> Self {
        Self::from_cyclo(reg, Cyclo::from_i64(n))
    }

    pub fn symbol(reg: &SymbolRegistry, id: SymbolId) -> Self {
        Self::from_poly(Poly::symbol(reg, id))
    }

    pub fn symbol_pow(reg: &SymbolRegistry, id: SymbolId, k: i32) -> Self {
        Self::from_poly(Poly::monomial(reg, &[(id, k)], Cyclo::one()))
    }

    pub fn q_pow(reg: &SymbolRegistry, k: i32) -> Self {
        Self::from_poly(Poly::q_pow(reg, k))
    }

    pub fn q_half_pow(reg: &SymbolRegistry, half_exp: i32) -> Self {
        Self::from_poly(Poly::q_half_pow(reg, half_exp))
    }

    pub fn reg(&self) -> &SymbolRegistry {
        &self.num.reg
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Nonzero single-term numerator and empty denominator.
    pub fn as_monomial(&self) -> Option<(Vec<i32>, Cyclo)> {
        if self.den.is_empty() && self.num.num_terms() == 1 {
            let (e, c) = self.num.terms.iter().next().unwrap();
            Some((e.clone(), c.clone()))
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num == Poly::one(self.reg())
    }

    fn den_poly(&self) -> Poly {
        let mut p = Poly::one(self.reg());
        for (f, m) in &self.den {
            p = p.mul(&f.pow(*m));
        }
        p
    }

    /// Make each denominator factor monic (leading coefficient 1 under the
    /// term order), folding scalars into the numerator, cancel factors that
    /// divide the numerator exactly, and sort.
    fn normalize(mut self) -> Self {
        if self.num.is_zero() {
            return SymbolField { num: self.num, den: Vec::new() };
        }
        let mut num = self.num;
        let mut den: Vec<(Poly, u32)> = Vec::new();
        for (f, mult) in self.den.drain(..) {
            let mut f = f;
            // monomial factors fold straight into the numerator
            if f.num_terms() == 1 {
                let (e, c) = f.terms.iter().next().unwrap();
                let inv_e: Vec<i32> = e.iter().map(|k| -k).collect();
                let inv_c = c.inverse().expect("nonzero factor");
                let shift = Poly::monomial(
                    &num.reg.clone(),
                    &crate::algebra::poly::id_pairs(&inv_e),
                    inv_c,
                );
                for _ in 0..mult {
                    num = num.mul(&shift);
                }
                continue;
            }
            let lead = f.leading().unwrap().1.clone();
            if !lead.is_one() {
                let inv = lead.inverse().expect("nonzero leading coefficient");
                f = f.scale(&inv);
                let c = Poly::constant(&num.reg.clone(), lead.pow(mult as i64).expect("pow"))
                    .try_exact_div(&Poly::one(&num.reg))
                    .unwrap();
                // dividing num by lead^mult
                num = num.scale(&c.constant_value().unwrap().inverse().unwrap());
            }
            let mut remaining = mult;
            while remaining > 0 {
                if let Some(q) = num.try_exact_div(&f) {
                    num = q;
                    remaining -= 1;
                } else {
                    break;
                }
            }
            if remaining > 0 {
                if let Some(slot) = den.iter_mut().find(|(g, _)| *g == f) {
                    slot.1 += remaining;
                } else {
                    den.push((f, remaining));
                }
            }
        }
        den.sort_by(|a, b| {
            a.0.terms
                .iter()
                .next_back()
                .map(|(e, _)| e.clone())
                .cmp(&b.0.terms.iter().next_back().map(|(e, _)| e.clone()))
                .then(a.0.num_terms().cmp(&b.0.num_terms()))
                .then(a.1.cmp(&b.1))
        });
        SymbolField { num, den }
    }

    pub fn add(&self, other: &SymbolField) -> SymbolField {
        self.reg().check_same(other.reg()).expect("same registry");
        // union of denominator multisets
        let mut union: Vec<(Poly, u32)> = self.den.clone();
        for (f, m) in &other.den {
            if let Some(slot) = union.iter_mut().find(|(g, _)| g == f) {
                slot.1 = slot.1.max(*m);
            } else {
                union.push((f.clone(), *m));
            }
        }
        let mul_missing = |num: &Poly, have: &[(Poly, u32)]| {
            let mut p = num.clone();
            for (f, m) in &union {
                let held = have.iter().find(|(g, _)| g == f).map(|(_, k)| *k).unwrap_or(0);
                for _ in held..*m {
                    p = p.mul(f);
                }
            }
            p
        };
        let n = mul_missing(&self.num, &self.den).add(&mul_missing(&other.num, &other.den));
        SymbolField { num: n, den: union }.normalize()
    }

    pub fn sub(&self, other: &SymbolField) -> SymbolField {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymbolField {
        SymbolField { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &SymbolField) -> SymbolField {
        self.reg().check_same(other.reg()).expect("same registry");
        let mut den = self.den.clone();
        for (f, m) in &other.den {
            if let Some(slot) = den.iter_mut().find(|(g, _)| g == f) {
                slot.1 += m;
            } else {
                den.push((f.clone(), *m));
            }
        }
        SymbolField { num: self.num.mul(&other.num), den }.normalize()
    }

    pub fn inverse(&self) -> Result<SymbolField, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut num = Poly::one(self.reg());
        for (f, m) in &self.den {
            num = num.mul(&f.pow(*m));
        }
        Ok(SymbolField { num, den: vec![(self.num.clone(), 1)] }.normalize())
    }

    pub fn div(&self, other: &SymbolField) -> Result<SymbolField, Error> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, k: i32) -> Result<SymbolField, Error> {
        if k == 0 {
            return Ok(SymbolField::one(self.reg()));
        }
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = SymbolField::one(self.reg());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Cyclo) -> SymbolField {
        SymbolField { num: self.num.scale(c), den: self.den.clone() }.normalize()
    }

    /// Decidable equality: cross-multiplication of the stored forms.
    pub fn eq_ratfun(&self, other: &SymbolField) -> Result<bool, Error> {
        self.reg().check_same(other.reg())?;
        let lhs = self.num.mul(&other.den_poly());
        let rhs = other.num.mul(&self.den_poly());
        Ok(lhs == rhs)
    }

    /// Substitute a symbol by another SymbolField value.
    pub fn substitute(&self, id: SymbolId, value: &SymbolField) -> Result<SymbolField, Error> {
        self.reg().check_same(value.reg())?;
        let sub_poly = |p: &Poly| -> Result<SymbolField, Error> {
            let mut acc = SymbolField::zero(self.reg());
            for (e, c) in &p.terms {
                let mut t = SymbolField::from_cyclo(self.reg(), c.clone());
                let k = e[id];
                if k != 0 {
                    t = t.mul(&value.pow(k)?);
                }
                let mut rest = e.clone();
                rest[id] = 0;
                let shift = Poly::monomial(
                    self.reg(),
                    &crate::algebra::poly::id_pairs(&rest),
                    Cyclo::one(),
                );
                acc = acc.add(&t.mul(&SymbolField::from_poly(shift)));
            }
            Ok(acc)
        };
        let mut out = sub_poly(&self.num)?;
        for (f, m) in &self.den {
            let fv = sub_poly(f)?;
            if fv.is_zero() {
                return Err(Error::DivisionByZero);
            }
            out = out.div(&fv.pow(*m as i32)?)?;
        }
        Ok(out)
    }

    /// Apply the unitarity involution: conjugate coefficients and invert the
    /// listed symbols.
    pub fn involute(&self, inverted: &[SymbolId]) -> SymbolField {
        let num = self.num.involute(inverted);
        let den = self.den.iter().map(|(f, m)| (f.involute(inverted), *m)).collect();
        SymbolField { num, den }.normalize()
    }

    /// Evaluate at cyclotomic symbol values.
    pub fn eval_cyclo(&self, values: &[Option<Cyclo>]) -> Result<Cyclo, Error> {
        let mut acc = self.num.eval_cyclo(values)?;
        for (f, m) in &self.den {
            let v = f.eval_cyclo(values)?;
            if v.is_zero() {
                return Err(Error::DivisionByZero);
            }
            acc = acc.mul(&v.pow(-(*m as i64))?);
        }
        Ok(acc)
    }

    /// Bind the formal q to a concrete prime: every monomial Q^k becomes
    /// p^{floor(k/2)} * Q^{k mod 2}. Identities at a concrete residue field
    /// size are compared after this reduction.
    pub fn reduce_q_to_prime(&self, p: u64) -> SymbolField {
        let reduce_poly = |poly: &Poly| -> Poly {
            let mut out = Poly::zero(&poly.reg);
            for (e, c) in &poly.terms {
                let k = e[crate::algebra::poly::Q_SYMBOL];
                let a = k.div_euclid(2);
                let r = k.rem_euclid(2);
                let mut e2 = e.clone();
                e2[crate::algebra::poly::Q_SYMBOL] = r;
                let scale = if a >= 0 {
                    Rational::from_integer(num_bigint::BigInt::from(p).pow(a as u32))
                } else {
                    Rational::new(1.into(), num_bigint::BigInt::from(p).pow((-a) as u32))
                };
                let t = Poly { reg: poly.reg.clone(), terms: [(e2, c.scale(&scale))].into_iter().collect() };
                out = out.add(&t);
            }
            out
        };
        let num = reduce_poly(&self.num);
        let den = self.den.iter().map(|(f, m)| (reduce_poly(f), *m)).collect();
        SymbolField { num, den }.normalize()
    }

    /// Equality after binding q to the prime p.
    pub fn eq_at_prime(&self, other: &SymbolField, p: u64) -> Result<bool, Error> {
        self.reduce_q_to_prime(p).eq_ratfun(&other.reduce_q_to_prime(p))
    }

    /// Canonical text serialization (sorted monomials, explicit names).
    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push('[');
        s.push_str(&self.num.render());
        s.push(']');
        for (f, m) in &self.den {
            s.push_str(" / [");
            s.push_str(&f.render());
            s.push(']');
            if *m != 1 {
                s.push('^');
                s.push_str(&m.to_string());
            }
        }
        s
    }
}

impl fmt::Debug for SymbolField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Decides whether f and g agree as rational functions.
pub fn ratfun_eq(f: &SymbolField, g: &SymbolField) -> Result<bool, Error> {
    f.eq_ratfun(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumRange {
    /// m0..=m1 inclusive.
    Finite(i64, i64),
    /// m0..infinity.
    From(i64),
}

/// Closed form of `coefficient * sum_{m in range} ratio^m`.
///
/// For an infinite range the ratio must be a non-constant monomial, which is
/// the formal-convergence regime used by the torus sums.
pub fn geometric_sum(
    coefficient: &SymbolField,
    ratio: &SymbolField,
    range: SumRange,
) -> Result<SymbolField, Error> {
    let reg = coefficient.reg().clone();
    coefficient.reg().check_same(ratio.reg())?;
    match range {
        SumRange::Finite(m0, m1) => {
            if m1 < m0 {
                return Ok(SymbolField::zero(&reg));
            }
            if ratio.is_one() {
                let n = Cyclo::from_i64(m1 - m0 + 1);
                return Ok(coefficient.scale(&n));
            }
            // coefficient * (r^{m0} - r^{m1+1}) / (1 - r)
            let head = ratio.pow(m0 as i32)?.sub(&ratio.pow(m1 as i32 + 1)?);
            let denom = SymbolField::one(&reg).sub(ratio);
            coefficient.mul(&head).div(&denom)
        }
        SumRange::From(m0) => {
            match ratio.as_monomial() {
                Some((e, _)) if e.iter().any(|&k| k != 0) => {}
                _ => {
                    return Err(Error::Divergent(
                        "infinite geometric sum requires a non-constant monomial ratio".into(),
                    ))
                }
            }
            let denom = SymbolField::one(&reg).sub(ratio);
            coefficient.mul(&ratio.pow(m0 as i32)?).div(&denom)
        }
    }
}

/// zeta_F(k) = 1/(1 - q^{-k}) as a SymbolField.
pub fn zeta_f(reg: &SymbolRegistry, k: i32) -> SymbolField {
    SymbolField::one(reg)
        .div(&SymbolField::one(reg).sub(&SymbolField::q_pow(reg, -k)))
        .expect("nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_fraction_recombination() {
        // 1/((1-bx)(1-x/b)) == b/(b^2-1) * [ b/(1-bx) - (1/b)/(1-x/b) ] -ish;
        // verify by rebuilding from the two-term split.
        let reg = SymbolRegistry::new(&["b", "x"]);
        let b = SymbolField::symbol(&reg, reg.id("b"));
        let x = SymbolField::symbol(&reg, reg.id("x"));
        let one = SymbolField::one(&reg);
        let f1 = one.sub(&b.mul(&x));
        let f2 = one.sub(&x.div(&b).unwrap());
        let orig = one.div(&f1.mul(&f2)).unwrap();
        // partial fractions: 1/((1-bx)(1-b^{-1}x)) = A/(1-bx) + B/(1-b^{-1}x)
        // with A = b^2/(b^2-1), B = -1/(b^2-1).
        let b2 = b.mul(&b);
        let denom = b2.sub(&one);
        let a = b2.div(&denom).unwrap();
        let bb = one.neg().div(&denom).unwrap();
        let rebuilt = a.div(&f1).unwrap().add(&bb.div(&f2).unwrap());
        assert!(ratfun_eq(&orig, &rebuilt).unwrap());
    }

    #[test]
    fn distinct_l_factors_differ() {
        let reg = SymbolRegistry::new(&["X"]);
        let x = SymbolField::symbol(&reg, reg.id("X"));
        let one = SymbolField::one(&reg);
        let f = one.div(&one.sub(&SymbolField::q_pow(&reg, 1).mul(&x))).unwrap();
        let g = one.div(&one.sub(&SymbolField::q_pow(&reg, 2).mul(&x))).unwrap();
        assert!(!ratfun_eq(&f, &g).unwrap());
    }

    #[test]
    fn geometric_series_basic() {
        let reg = SymbolRegistry::new(&["X"]);
        let x = SymbolField::symbol(&reg, reg.id("X"));
        let one = SymbolField::one(&reg);
        let s = geometric_sum(&one, &x, SumRange::From(0)).unwrap();
        let expect = one.div(&one.sub(&x)).unwrap();
        assert!(ratfun_eq(&s, &expect).unwrap());

        let s2 = geometric_sum(&one, &x, SumRange::Finite(0, 2)).unwrap();
        let expect2 = one.add(&x).add(&x.mul(&x));
        assert!(ratfun_eq(&s2, &expect2).unwrap());
    }

    #[test]
    fn infinite_sum_with_unit_ratio_diverges() {
        let reg = SymbolRegistry::new(&[]);
        let one = SymbolField::one(&reg);
        assert!(matches!(
            geometric_sum(&one, &one, SumRange::From(0)),
            Err(Error::Divergent(_))
        ));
    }

    #[test]
    fn q_relation() {
        // Q^2 and q are the same stored monomial.
        let reg = SymbolRegistry::new(&[]);
        let q = SymbolField::q_pow(&reg, 1);
        let qq = SymbolField::q_half_pow(&reg, 1).pow(2).unwrap();
        assert!(ratfun_eq(&q, &qq).unwrap());
        assert!(q.sub(&qq).is_zero());
    }

    #[test]
    fn substitution_identity_case() {
        // (1-x^2 g^2)/(1-g^2) is unchanged by substituting g by itself.
        let reg = SymbolRegistry::new(&["g", "x"]);
        let g = SymbolField::symbol(&reg, reg.id("g"));
        let x = SymbolField::symbol(&reg, reg.id("x"));
        let one = SymbolField::one(&reg);
        let f = one.sub(&x.mul(&x).mul(&g.mul(&g))).div(&one.sub(&g.mul(&g))).unwrap();
        let h = f.substitute(reg.id("g"), &g).unwrap();
        assert!(ratfun_eq(&f, &h).unwrap());
    }
}
