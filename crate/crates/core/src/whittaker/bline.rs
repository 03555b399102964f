//! Exact integration along one p-adic coordinate of a function whose value
//! depends on the coordinate only through the valuations of finitely many
//! affine forms.
//!
//! The integral over {t : val(t) >= -depth} is computed by refining the
//! line into cells on which every form has constant valuation; around a
//! shared critical point the annular values form a geometric progression
//! and the tail is summed in closed form.

use num_traits::Zero;

use crate::algebra::{geometric_sum, ratfun_eq, SumRange, SymbolField, SymbolRegistry};
use crate::arith::{power_rat, valuation, Rational};
use crate::{Error, Result};

/// a + b t.
#[derive(Clone, Debug)]
pub struct AffineForm {
    pub a: Rational,
    pub b: Rational,
}

impl AffineForm {
    pub fn constant(a: Rational) -> Self {
        AffineForm { a, b: Rational::zero() }
    }

    fn at(&self, t: &Rational) -> Rational {
        &self.a + &self.b * t
    }
}

/// Value of the integrand on a stratum, as a function of the forms'
/// valuations (None encodes an identically-zero form).
pub type StratumEval<'a> = dyn Fn(&[Option<i64>]) -> Result<SymbolField> + 'a;

pub fn line_integral(
    reg: &SymbolRegistry,
    p: u64,
    forms: &[AffineForm],
    depth: i64,
    eval: &StratumEval,
) -> Result<SymbolField> {
    cell_sum(reg, p, forms, &Rational::zero(), -depth, eval, 0)
}

/// Integral over the cell {t : val(t - center) >= k}.
fn cell_sum(
    reg: &SymbolRegistry,
    p: u64,
    forms: &[AffineForm],
    center: &Rational,
    k: i64,
    eval: &StratumEval,
    recursion: u32,
) -> Result<SymbolField> {
    if recursion > 64 {
        return Err(Error::Truncation("line integral did not stratify".into()));
    }
    // classify the forms on this cell
    let mut vals: Vec<Option<i64>> = Vec::with_capacity(forms.len());
    let mut critical: Vec<usize> = Vec::new();
    for (ix, f) in forms.iter().enumerate() {
        if f.b.is_zero() {
            vals.push(valuation(&f.a, p));
            continue;
        }
        let at_center = f.at(center);
        let vb = valuation(&f.b, p).unwrap();
        match valuation(&at_center, p) {
            Some(v0) if v0 < vb + k => vals.push(Some(v0)),
            _ => {
                // the form can change valuation inside the cell
                critical.push(ix);
                vals.push(None);
            }
        }
    }
    if critical.is_empty() {
        let vol = SymbolField::q_half_pow(reg, -2 * k as i32);
        return Ok(eval(&vals)?.mul(&vol));
    }
    // if every critical form vanishes at the same exact point, sum annuli
    let t0 = {
        let f = &forms[critical[0]];
        -&f.a / &f.b
    };
    let shared = critical.iter().all(|&ix| {
        let f = &forms[ix];
        f.at(&t0).is_zero()
    });
    let t0_in_cell = valuation(&(&t0 - center), p).map_or(true, |v| v >= k);
    if shared && t0_in_cell {
        return annulus_tower(reg, p, forms, &t0, k, &critical, eval);
    }
    // otherwise split into p subcells
    let mut acc = SymbolField::zero(reg);
    let step = power_rat(p, k);
    for i in 0..p {
        let c2 = center + Rational::from_integer(i.into()) * &step;
        acc = acc.add(&cell_sum(reg, p, forms, &c2, k + 1, eval, recursion + 1)?);
    }
    Ok(acc)
}

/// Sum over the annuli val(t - t0) = m, m >= k, where the critical forms
/// have valuation val(b) + m and the others are constant. The values
/// eventually follow a geometric progression in m; the finite head is
/// summed directly and the tail in closed form.
fn annulus_tower(
    reg: &SymbolRegistry,
    p: u64,
    forms: &[AffineForm],
    t0: &Rational,
    k: i64,
    critical: &[usize],
    eval: &StratumEval,
) -> Result<SymbolField> {
    let value_at = |m: i64| -> Result<SymbolField> {
        let mut vals: Vec<Option<i64>> = Vec::with_capacity(forms.len());
        for (ix, f) in forms.iter().enumerate() {
            if critical.contains(&ix) {
                vals.push(Some(valuation(&f.b, p).unwrap() + m));
            } else if f.b.is_zero() {
                vals.push(valuation(&f.a, p));
            } else {
                vals.push(valuation(&f.at(t0), p));
            }
        }
        eval(&vals)
    };
    // The stratum value depends on m through valuations that are affine in
    // m with slopes 0 or 1, compared against each other and small
    // constants. Every comparison therefore flips at most once, no later
    // than the magnitude of the initial data; past that bound the value is
    // exactly geometric (or exactly zero).
    let initial_vals: Vec<i64> = {
        let mut out = Vec::new();
        for (ix, f) in forms.iter().enumerate() {
            let v = if critical.contains(&ix) {
                Some(valuation(&f.b, p).unwrap() + k)
            } else if f.b.is_zero() {
                valuation(&f.a, p)
            } else {
                valuation(&f.at(t0), p)
            };
            if let Some(v) = v {
                out.push(v);
            }
        }
        out
    };
    let spread = initial_vals.iter().map(|v| v.abs()).max().unwrap_or(0);
    let flip_bound = k + 2 * spread + 8;
    let unit_fraction = SymbolField::one(reg).sub(&SymbolField::q_pow(reg, -1));
    let mut total = SymbolField::zero(reg);
    let mut m = k;
    while m < flip_bound {
        let v0 = value_at(m)?;
        let vol = SymbolField::q_half_pow(reg, -2 * m as i32).mul(&unit_fraction);
        total = total.add(&v0.mul(&vol));
        m += 1;
    }
    // beyond the flip bound the value is geometric; certify with 3 ratios
    let m0 = flip_bound;
    let first = value_at(m0)?;
    if first.is_zero() {
        for extra in 1..4 {
            if !value_at(m0 + extra)?.is_zero() {
                return Err(Error::Truncation("tower value not stable past flip bound".into()));
            }
        }
        return Ok(total);
    }
    let v1 = value_at(m0 + 1)?;
    let v2 = value_at(m0 + 2)?;
    let v3 = value_at(m0 + 3)?;
    let ratio = v1.div(&first)?;
    let r2 = v2.div(&v1)?;
    let r3 = v3.div(&v2)?;
    if ratio.as_monomial().is_none() || !ratfun_eq(&ratio, &r2)? || !ratfun_eq(&r2, &r3)? {
        return Err(Error::Truncation("annulus tower did not become geometric".into()));
    }
    // tail: sum_{m >= m0} q^{-m} (1 - 1/q) first ratio^{m - m0}
    let coeff = first
        .mul(&unit_fraction)
        .mul(&SymbolField::q_half_pow(reg, -2 * m0 as i32));
    let tail = geometric_sum(&coeff, &ratio.mul(&SymbolField::q_pow(reg, -1)), SumRange::From(0))?;
    Ok(total.add(&tail))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn characteristic_function_volume() {
        // integral over val(t) >= -1 of 1_{val(t) >= 0}: value 1.
        let reg = SymbolRegistry::new(&[]);
        let forms = vec![AffineForm { a: Rational::zero(), b: rat(1, 1) }];
        let got = line_integral(&reg, 3, &forms, 1, &|vals| {
            let ok = vals[0].map_or(true, |v| v >= 0);
            Ok(if ok { SymbolField::one(&reg) } else { SymbolField::zero(&reg) })
        })
        .unwrap();
        assert!(ratfun_eq(&got, &SymbolField::one(&reg)).unwrap());
    }

    #[test]
    fn geometric_tower_around_point() {
        // integral over val(t) >= 0 of q^{-val(t-1)} d t: annuli around 1:
        // sum_{m>=0} q^{-m}(1-1/q) q^{-m} = (1-1/q)/(1-q^{-2}).
        let reg = SymbolRegistry::new(&[]);
        let forms = vec![AffineForm { a: rat(-1, 1), b: rat(1, 1) }];
        let got = line_integral(&reg, 3, &forms, 0, &|vals| {
            let v = vals[0].expect("finite");
            Ok(SymbolField::q_half_pow(&reg, -2 * v as i32))
        })
        .unwrap();
        let one = SymbolField::one(&reg);
        let expect = one
            .sub(&SymbolField::q_pow(&reg, -1))
            .div(&one.sub(&SymbolField::q_pow(&reg, -2)))
            .unwrap();
        assert!(ratfun_eq(&got, &expect).unwrap());
    }

    #[test]
    fn psi_style_cancellation() {
        // integral over val(t) >= -2 of 1_{val(t) >= 0}: the box is bigger
        // than the support; subdivision must find the support exactly.
        let reg = SymbolRegistry::new(&[]);
        let forms = vec![AffineForm { a: Rational::zero(), b: rat(1, 1) }];
        let got = line_integral(&reg, 5, &forms, 2, &|vals| {
            let ok = vals[0].map_or(true, |v| v >= 0);
            Ok(if ok { SymbolField::one(&reg) } else { SymbolField::zero(&reg) })
        })
        .unwrap();
        assert!(ratfun_eq(&got, &SymbolField::one(&reg)).unwrap());
    }
}
