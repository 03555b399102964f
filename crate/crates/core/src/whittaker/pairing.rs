//! The level-l pairing of the ordinary Whittaker vector against its
//! contragredient translate: closed form for n <= 3 and the defining torus
//! sum for n = 2.

use crate::algebra::{geometric_sum, zeta_f, SumRange, SymbolField};
use crate::chars::{gamma_at_one, l_factor, AdditiveCharacter};
use crate::padic::RationalMatrix;
use crate::{Error, Result};

use super::sections::{whittaker_value_auto, PrincipalSeries, SectionKind};

/// [GL_n(Z_p) : I0(p^l)] = q^{n(n^2-1) l / 6} gamma_n^{-1} with
/// gamma_n = prod_{i<=n} zeta(i) / zeta(1).
pub fn iwahori_index(reg: &crate::algebra::SymbolRegistry, n: u32, l: u32) -> Result<SymbolField> {
    let e = (n * (n * n - 1) / 6 * l) as i32;
    let mut gamma_inv = SymbolField::one(reg);
    for i in 2..=n as i32 {
        gamma_inv = gamma_inv.mul(&zeta_f(reg, 1)).div(&zeta_f(reg, i))?;
    }
    Ok(SymbolField::q_pow(reg, e).mul(&gamma_inv))
}

/// L(1, pi x pi-dual) = prod_{i,j} L(1, mu_i mu_j^{-1}).
pub fn adjoint_l_at_one(ps: &PrincipalSeries, x_id: usize) -> Result<SymbolField> {
    let reg = ps.reg();
    let mut out = SymbolField::one(reg);
    for i in 0..ps.rank() {
        for j in 0..ps.rank() {
            let chi = ps.chars[i].mul(&ps.chars[j].inverse()?);
            let lf = l_factor(&chi, x_id);
            out = out.mul(&lf.substitute(x_id, &SymbolField::q_pow(reg, -1))?);
        }
    }
    Ok(out)
}

/// The closed form of the normalized level-l pairing:
/// zeta(1)^n / L(1, pi x pi-dual) * alpha^l / [GL_n : I0(p^l)]
/// * prod_{i<j} mu_i(-1) / gamma(1, mu_i^{-1} mu_j, psi).
pub fn ord_pairing_closed(ps: &PrincipalSeries, l: u32, x_id: usize) -> Result<SymbolField> {
    let reg = ps.reg();
    let n = ps.rank() as u32;
    let psi = AdditiveCharacter::standard(ps.p);
    let mut out = zeta_f(reg, 1).pow(n as i32)?.div(&adjoint_l_at_one(ps, x_id)?)?;
    let alpha = super::sections::up_eigenvalue(ps)?;
    out = out.mul(&alpha.pow(l as i32)?);
    out = out.div(&iwahori_index(reg, n, l)?)?;
    for i in 0..ps.rank() {
        for j in i + 1..ps.rank() {
            let chi = ps.chars[i].inverse()?.mul(&ps.chars[j]);
            let g = gamma_at_one(&chi, &psi, x_id)?;
            let sign = ps.chars[i].value_at_minus_one();
            out = out.mul(&SymbolField::from_cyclo(reg, sign)).div(&g)?;
        }
    }
    Ok(out)
}

/// The defining sum for n = 2:
/// B^[l] = zeta(2)/L(1, pi x pi-dual) *
///         sum_v W^ord(diag(p^v, 1)) [pi-dual(D^{-l}) W~^ord](diag(p^v, 1)).
pub fn ord_pairing_oracle_rank2(ps: &PrincipalSeries, l: u32, x_id: usize) -> Result<SymbolField> {
    if ps.rank() != 2 {
        return Err(Error::Unsupported("pairing oracle implemented for rank 2".into()));
    }
    let reg = ps.reg().clone();
    let p = ps.p;
    let d_inv_l = matrix_power(&RationalMatrix::up_diagonal(2, p).inverse()?, l as i64);
    let w2 = RationalMatrix::weyl_longest(2);
    let f = |v: i64| -> Result<SymbolField> {
        let t = RationalMatrix::diag_p_powers(p, &[v, 0]);
        let w_first = whittaker_value_auto(ps, SectionKind::Ordinary, 1, &t, 1, 8)?;
        if w_first.is_zero() {
            return Ok(w_first);
        }
        // [pi-dual(D^{-l}) W~](t) = W(w_2 (t D^{-l})^{-T})
        let arg = w2.mul(&t.mul(&d_inv_l).transpose_inverse()?);
        let w_second = whittaker_value_auto(ps, SectionKind::Ordinary, 1, &arg, 1, 12)?;
        Ok(w_first.mul(&w_second))
    };
    let total = sum_valuation_lattice(&reg, &f, -(2 * l as i64 + 4), 28)?;
    zeta_f(&reg, 2).div(&adjoint_l_at_one(ps, x_id)?).map(|z| z.mul(&total))
}

pub fn matrix_power(m: &RationalMatrix, e: i64) -> RationalMatrix {
    let mut acc = RationalMatrix::identity(m.n);
    let base = if e >= 0 { m.clone() } else { m.inverse().expect("invertible") };
    for _ in 0..e.unsigned_abs() {
        acc = acc.mul(&base);
    }
    acc
}

/// Exact sum over a valuation lattice: probes the support from below,
/// sums the irregular head, then closes the geometric tail once four
/// consecutive ratios stabilize to a fixed monomial.
pub fn sum_valuation_lattice(
    reg: &crate::algebra::SymbolRegistry,
    f: &dyn Fn(i64) -> Result<SymbolField>,
    lo: i64,
    window: i64,
) -> Result<SymbolField> {
    let mut start = lo;
    loop {
        let v = f(start)?;
        if !v.is_zero() {
            break;
        }
        start += 1;
        if start > lo + window {
            return Ok(SymbolField::zero(reg));
        }
    }
    let mut values = vec![f(start)?];
    let mut v = start;
    loop {
        v += 1;
        if v > start + window {
            return Err(Error::Truncation("no geometric tail in valuation sum".into()));
        }
        values.push(f(v)?);
        let k = values.len();
        if k < 4 {
            continue;
        }
        let ratio_of = |a: &SymbolField, b: &SymbolField| -> Result<Option<SymbolField>> {
            if a.is_zero() || b.is_zero() {
                return Ok(None);
            }
            let r = b.div(a)?;
            Ok(if r.as_monomial().is_some() { Some(r) } else { None })
        };
        let (Some(r1), Some(r2), Some(r3)) = (
            ratio_of(&values[k - 4], &values[k - 3])?,
            ratio_of(&values[k - 3], &values[k - 2])?,
            ratio_of(&values[k - 2], &values[k - 1])?,
        ) else {
            continue;
        };
        if crate::algebra::ratfun_eq(&r1, &r2)? && crate::algebra::ratfun_eq(&r2, &r3)? {
            let mut total = SymbolField::zero(reg);
            for val in &values[..k - 4] {
                total = total.add(val);
            }
            let tail = geometric_sum(&values[k - 4], &r1, SumRange::From(0))?;
            return Ok(total.add(&tail));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SymbolRegistry;
    use crate::chars::PadicCharacter;
    use crate::padic::{coset_reps, in_pattern, CongruencePattern, CosetFamily};

    fn formal_ps2(reg: &SymbolRegistry, p: u64) -> PrincipalSeries {
        PrincipalSeries::new(vec![
            PadicCharacter::unramified(reg, p, SymbolField::symbol(reg, reg.id("m1"))),
            PadicCharacter::unramified(reg, p, SymbolField::symbol(reg, reg.id("m2"))),
        ])
    }

    #[test]
    fn iwahori_index_matches_enumeration() {
        // [GL2(Z_3) : I0(3)] = q(1 + 1/q) = 4
        let reg = SymbolRegistry::new(&["X"]);
        let idx = iwahori_index(&reg, 2, 1).unwrap();
        let reps = coset_reps(&CosetFamily::IwahoriCells { n: 2 }, 3, 100_000).unwrap();
        assert_eq!(reps.len(), 4);
        assert!(idx.eq_at_prime(&SymbolField::from_i64(&reg, reps.len() as i64), 3).unwrap());
        assert!(crate::padic::verify_transversal(&reps, |g| in_pattern(
            g,
            &CongruencePattern::I0 { n: 2, l: 1 },
            3
        )));
    }

    #[test]
    fn rank1_pairing_is_trivial() {
        let reg = SymbolRegistry::new(&["X", "m1", "m2"]);
        let ps = PrincipalSeries::new(vec![PadicCharacter::unramified(
            &reg,
            3,
            SymbolField::symbol(&reg, reg.id("m1")),
        )]);
        let closed = ord_pairing_closed(&ps, 2, reg.id("X")).unwrap();
        assert!(closed.is_one());
    }

    #[test]
    fn rank2_closed_form_matches_torus_sum() {
        let p = 3u64;
        let reg = SymbolRegistry::new(&["X", "m1", "m2"]);
        let ps = formal_ps2(&reg, p);
        let x_id = reg.id("X");
        for l in [1u32, 2] {
            let closed = ord_pairing_closed(&ps, l, x_id).unwrap();
            let oracle = ord_pairing_oracle_rank2(&ps, l, x_id).unwrap();
            assert!(closed.eq_at_prime(&oracle, p).unwrap(), "pairing mismatch at l = {l}");
        }
    }
}
