//! Sections of principal series and exact Whittaker values.

use num_traits::Zero;

use crate::algebra::{Cyclo, SymbolField};
use crate::arith::{power_rat, valuation, Rational};
use crate::chars::{AdditiveCharacter, PadicCharacter};
use crate::padic::{bruhat_decompose, RationalMatrix};
use crate::whittaker::bline::AffineForm;
use crate::{Error, Result};

/// Principal series I(mu_1, ..., mu_n), n <= 3.
#[derive(Clone)]
pub struct PrincipalSeries {
    pub p: u64,
    pub chars: Vec<PadicCharacter>,
}

impl PrincipalSeries {
    pub fn new(chars: Vec<PadicCharacter>) -> Self {
        assert!(!chars.is_empty() && chars.len() <= 3);
        let p = chars[0].p;
        assert!(chars.iter().all(|c| c.p == p));
        PrincipalSeries { p, chars }
    }

    pub fn rank(&self) -> usize {
        self.chars.len()
    }

    pub fn reg(&self) -> &crate::algebra::SymbolRegistry {
        &self.chars[0].reg
    }

    /// The contragredient I(mu_1^{-1}, ..., mu_n^{-1}).
    pub fn dual(&self) -> Result<PrincipalSeries> {
        Ok(PrincipalSeries {
            p: self.p,
            chars: self.chars.iter().map(|c| c.inverse()).collect::<Result<Vec<_>>>()?,
        })
    }

    /// Level of exact right invariance of the ordinary section:
    /// max(1, conductors).
    pub fn invariance_level(&self) -> u32 {
        self.chars.iter().map(|c| c.conductor()).max().unwrap_or(0).max(1)
    }

    pub fn max_conductor(&self) -> u32 {
        self.chars.iter().map(|c| c.conductor()).max().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectionKind {
    /// Supported on the big cell: value on t u w_n v with integral v.
    Ordinary,
    /// Spherical section (Iwasawa value), GL_n(Z_p)-invariant.
    Spherical,
}

/// Ordinary section value at g: zero off B w_n N(Z_p); otherwise the
/// half-density character value of the diagonal part.
pub fn ord_section_eval(ps: &PrincipalSeries, g: &RationalMatrix) -> Result<SymbolField> {
    let reg = ps.reg();
    let n = ps.rank();
    assert_eq!(g.n, n);
    let Some(cell) = bruhat_decompose(g)? else {
        return Ok(SymbolField::zero(reg));
    };
    let p = ps.p;
    for i in 0..n {
        for j in i + 1..n {
            if valuation(cell.v.at(i, j), p).map_or(false, |v| v < 0) {
                return Ok(SymbolField::zero(reg));
            }
        }
    }
    section_character_value(ps, &cell.t)
}

/// prod_i mu_i(t_i) |t_i|^{(n+1-2i)/2} as a SymbolField.
fn section_character_value(ps: &PrincipalSeries, t: &[Rational]) -> Result<SymbolField> {
    let reg = ps.reg();
    let n = ps.rank() as i64;
    let p = ps.p;
    let mut out = SymbolField::one(reg);
    let mut q_half_exponent: i64 = 0;
    for (i, ti) in t.iter().enumerate() {
        let v = valuation(ti, p).ok_or_else(|| Error::Config("singular diagonal".into()))?;
        // |t_i|^{(n+1-2i)/2} = Q^{-v (n+1-2i)} with i starting at 1
        q_half_exponent -= v * (n + 1 - 2 * (i as i64 + 1));
        out = out.mul(&ps.chars[i].eval(ti)?);
    }
    Ok(out.mul(&SymbolField::q_half_pow(reg, q_half_exponent as i32)))
}

/// Spherical section value via the Iwasawa decomposition g = t u k.
pub fn spherical_section_eval(ps: &PrincipalSeries, g: &RationalMatrix) -> Result<SymbolField> {
    let t = iwasawa_diagonal(g, ps.p)?;
    section_character_value(ps, &t)
}

/// Diagonal part of g = t u k with k in GL_n(Z_p), by bottom-up column
/// reduction using only GL_n(Z_p) column operations.
pub fn iwasawa_diagonal(g: &RationalMatrix, p: u64) -> Result<Vec<Rational>> {
    let n = g.n;
    let mut h = g.clone();
    let mut diag = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        // pivot: entry of minimal valuation among h[i][0..=i]
        let mut best: Option<(usize, i64)> = None;
        for j in 0..=i {
            if let Some(v) = valuation(h.at(i, j), p) {
                if best.map_or(true, |(_, bv)| v < bv) {
                    best = Some((j, v));
                }
            }
        }
        let Some((jp, _)) = best else {
            return Err(Error::Config("singular matrix in iwasawa".into()));
        };
        // swap columns jp and i
        if jp != i {
            for r in 0..n {
                let a = h.at(r, jp).clone();
                let b = h.at(r, i).clone();
                h.set(r, jp, b);
                h.set(r, i, a);
            }
        }
        // clear the row to the left with integral multiples
        let pivot = h.at(i, i).clone();
        for j in 0..i {
            let f = h.at(i, j) / &pivot;
            debug_assert!(valuation(&f, p).map_or(true, |v| v >= 0));
            if f.is_zero() {
                continue;
            }
            for r in 0..n {
                let v = h.at(r, j) - &f * h.at(r, i);
                h.set(r, j, v);
            }
        }
        diag[i] = pivot;
    }
    Ok(diag)
}

/// Eigenvalue of the level-raising operator on the ordinary section:
/// prod_i (mu_i(p) q^{i - (n+1)/2})^{i-1}.
pub fn up_eigenvalue(ps: &PrincipalSeries) -> Result<SymbolField> {
    let reg = ps.reg();
    let n = ps.rank() as i32;
    let mut out = SymbolField::one(reg);
    for i in 1..=n {
        let base = ps.chars[(i - 1) as usize]
            .value_at_p
            .mul(&SymbolField::q_half_pow(reg, 2 * i - (n + 1)));
        out = out.mul(&base.pow(i - 1)?);
    }
    Ok(out)
}

/// Truncation control for the lattice sums.
#[derive(Clone, Debug)]
pub struct LatticeOptions {
    /// Denominator depth per coordinate, in the order (1,2), (1,3), (2,3)
    /// for n = 3 and (1,2) for n = 2.
    pub depth: Vec<i64>,
    /// Re-run with all depths + 1 and compare (support verification).
    pub verify_support: bool,
}

impl LatticeOptions {
    pub fn integral(n: usize) -> Self {
        LatticeOptions { depth: vec![0; n * (n - 1) / 2], verify_support: false }
    }

    pub fn with_depth(depth: Vec<i64>) -> Self {
        LatticeOptions { depth, verify_support: false }
    }

    pub fn verified(mut self) -> Self {
        self.verify_support = true;
        self
    }
}

/// W(g) = int_{N} section(w_n u g) conj(psi^kernel(u)) du as an exact
/// finite sum. The truncation level of each coordinate is derived from the
/// section's exact right-invariance, so the sum equals the integral over
/// the box of unipotents with entries of valuation >= -depth; `depth` must
/// contain the support (verifiable with `verify_support`).
pub fn whittaker_value(
    ps: &PrincipalSeries,
    section: SectionKind,
    kernel: i64,
    g: &RationalMatrix,
    opts: &LatticeOptions,
) -> Result<SymbolField> {
    let value = lattice_sum(ps, section, kernel, g, &opts.depth)?;
    if opts.verify_support {
        let deeper: Vec<i64> = opts.depth.iter().map(|a| a + 1).collect();
        let check = lattice_sum(ps, section, kernel, g, &deeper)?;
        if !crate::algebra::ratfun_eq(&value, &check)? {
            return Err(Error::Truncation(format!(
                "lattice sum unstable at depths {:?}",
                opts.depth
            )));
        }
    }
    Ok(value)
}

/// Stability search: evaluate at increasing depth until two consecutive
/// depths agree, per the double-and-compare contract.
pub fn whittaker_value_auto(
    ps: &PrincipalSeries,
    section: SectionKind,
    kernel: i64,
    g: &RationalMatrix,
    start_depth: i64,
    max_depth: i64,
) -> Result<SymbolField> {
    let k = ps.rank() * (ps.rank() - 1) / 2;
    let mut prev = lattice_sum(ps, section, kernel, g, &vec![start_depth; k])?;
    let mut d = start_depth;
    while d < max_depth {
        d += 1;
        let cur = lattice_sum(ps, section, kernel, g, &vec![d; k])?;
        if crate::algebra::ratfun_eq(&prev, &cur)? {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Truncation(format!("no stability by depth {max_depth}")))
}

/// Minimal B >= 0 with p^B xi inside the invariance lattice
/// {upper: integral, diagonal and lower: valuation >= level}.
fn required_level(xi: &RationalMatrix, p: u64, level: u32) -> i64 {
    let n = xi.n;
    let mut need = 0i64;
    for i in 0..n {
        for j in 0..n {
            let e = xi.at(i, j);
            if e.is_zero() {
                continue;
            }
            let floor = if i < j { 0 } else { level as i64 };
            let v = valuation(e, p).unwrap();
            need = need.max(floor - v);
        }
    }
    need
}

fn lattice_sum(
    ps: &PrincipalSeries,
    section: SectionKind,
    kernel: i64,
    g: &RationalMatrix,
    depth: &[i64],
) -> Result<SymbolField> {
    let n = ps.rank();
    let p = ps.p;
    match n {
        1 => {
            // no unipotent coordinates
            let w = RationalMatrix::weyl_longest(1);
            section_value(ps, section, &w.mul(g))
        }
        2 => {
            let a12 = depth[0];
            let level = invariance_for(ps, section);
            let ginv = g.inverse()?;
            let r12 = required_level(&conj_basis(&ginv, g, 0, 1), p, level);
            sum_over_box(ps, section, kernel, g, &[(0, 1, a12, r12)])
        }
        3 => lattice_sum_rank3(ps, section, kernel, g, depth),
        _ => Err(Error::Unsupported("rank > 3".into())),
    }
}

/// Rank-3 sum in group coordinates u = n13(b) n12(a) n23(c): the center
/// coordinate b is integrated exactly along its line (the Bruhat data of
/// u g is affine in b), and (a, c) range over boxes whose cell levels are
/// the section's exact invariance levels.
fn lattice_sum_rank3(
    ps: &PrincipalSeries,
    section: SectionKind,
    kernel: i64,
    g: &RationalMatrix,
    depth: &[i64],
) -> Result<SymbolField> {
    if section == SectionKind::Ordinary && ps.max_conductor() > 0 {
        // ramified finite parts need unit tracking along the line; fall
        // back to the plain box sum (small cases only)
        return lattice_sum_rank3_brute(ps, section, kernel, g, depth);
    }
    let reg = ps.reg().clone();
    let p = ps.p;
    let (a12, a13, a23) = (depth[0], depth[1], depth[2]);
    // the b-line must contain the support and its (a, c)-cell translates
    let b_depth = a13.max(a12 + a23) + 1;
    let level = invariance_for(ps, section);
    let ginv = g.inverse()?;
    let r12 = required_level(&conj_basis(&ginv, g, 0, 1), p, level);
    let r23 = required_level(&conj_basis(&ginv, g, 1, 2), p, level);
    let psi = AdditiveCharacter::standard(p).twisted(-kernel);
    let det_g = g.det();
    let det_val = valuation(&det_g, p).ok_or_else(|| Error::Config("singular g".into()))?;
    let n_total = (a12 + r12 + a23 + r23) as u32;
    let _ = p.checked_pow(n_total).ok_or(Error::Resource(usize::MAX))?;
    let chars_at_p: Vec<SymbolField> = ps.chars.iter().map(|c| c.value_at_p.clone()).collect();
    let mut acc = SymbolField::zero(&reg);
    let range_a = p.pow((a12 + r12) as u32) as i64;
    let range_c = p.pow((a23 + r23) as u32) as i64;
    for ia in 0..range_a {
        let a = power_rat(p, -a12) * Rational::from_integer(ia.into());
        for ic in 0..range_c {
            let c = power_rat(p, -a23) * Rational::from_integer(ic.into());
            // M(b) = u g with u = n13(b) n12(a) n23(c):
            // row1 = g1 + a g2 + (ac + b) g3, row2 = g2 + c g3, row3 = g3
            let row = |i: usize, j: usize| g.at(i, j).clone();
            let m1 = |j: usize| row(0, j) + &a * row(1, j) + &a * &c * row(2, j);
            let m2 = |j: usize| row(1, j) + &c * row(2, j);
            // affine in b: m1j(b) = m1(j) + b g3j
            let f = |j: usize| AffineForm { a: m1(j), b: row(2, j) };
            let d1 = f(0);
            // delta2(b) = m11(b) m22 - m12(b) m21
            let d2 = AffineForm {
                a: &m1(0) * &m2(1) - &m1(1) * &m2(0),
                b: &row(2, 0) * &m2(1) - &row(2, 1) * &m2(0),
            };
            let n12f = f(1);
            let n13f = f(2);
            // N23(b) = m11(b) m23 - m21 m13(b)
            let n23f = AffineForm {
                a: &m1(0) * &m2(2) - &m2(0) * &m1(2),
                b: &row(2, 0) * &m2(2) - &m2(0) * &row(2, 2),
            };
            let forms = [d1, d2, n12f, n13f, n23f];
            let value = crate::whittaker::bline::line_integral(
                &reg,
                p,
                &forms,
                b_depth,
                &|vals: &[Option<i64>]| -> Result<SymbolField> {
                    let (Some(v1), Some(v2)) = (vals[0], vals[1]) else {
                        return Ok(SymbolField::zero(&reg));
                    };
                    let ok = vals[2].map_or(true, |v| v >= v1)
                        && vals[3].map_or(true, |v| v >= v1)
                        && vals[4].map_or(true, |v| v >= v2);
                    if !ok {
                        return Ok(SymbolField::zero(&reg));
                    }
                    // t = (delta3/delta2, delta2/delta1, delta1)
                    let tv = [det_val - v2, v2 - v1, v1];
                    let mut out = SymbolField::one(&reg);
                    let mut qh: i64 = 0;
                    for (i, &t) in tv.iter().enumerate() {
                        out = out.mul(&chars_at_p[i].pow(t as i32)?);
                        qh -= t * (3 + 1 - 2 * (i as i64 + 1));
                    }
                    Ok(out.mul(&SymbolField::q_half_pow(&reg, qh as i32)))
                },
            )?;
            if value.is_zero() {
                continue;
            }
            let phase = psi.eval(&(&a + &c));
            acc = acc.add(&value.scale(&phase));
        }
    }
    // measure of the (a, c) cells
    Ok(acc.mul(&SymbolField::q_half_pow(&reg, -2 * (r12 + r23) as i32)))
}

/// Test access to both rank-3 paths.
pub fn lattice_sum_public(
    ps: &PrincipalSeries,
    section: SectionKind,
    kernel: i64,
    g: &RationalMatrix,
    depth: &[i64],
    brute: bool,
) -> Result<SymbolField> {
    if brute {
        lattice_sum_rank3_brute(ps, section, kernel, g, depth)
    } else {
        lattice_sum_rank3(ps, section, kernel, g, depth)
    }
}

/// Plain box sum over all three coordinates (for ramified finite parts and
/// cross-validation); cost grows quickly with the depths.
fn lattice_sum_rank3_brute(
    ps: &PrincipalSeries,
    section: SectionKind,
    kernel: i64,
    g: &RationalMatrix,
    depth: &[i64],
) -> Result<SymbolField> {
    let p = ps.p;
    let (a12, a13, a23) = (depth[0], depth[1], depth[2]);
    let a13 = a13.max(a12 + a23);
    let level = invariance_for(ps, section);
    let ginv = g.inverse()?;
    let r12 = required_level(&conj_basis(&ginv, g, 0, 1), p, level);
    let r13 = required_level(&conj_basis(&ginv, g, 0, 2), p, level);
    let r23 = required_level(&conj_basis(&ginv, g, 1, 2), p, level);
    let b12 = r12.max(r13 + a23);
    sum_over_box(
        ps,
        section,
        kernel,
        g,
        &[(0, 1, a12, b12), (0, 2, a13, r13), (1, 2, a23, r23)],
    )
}

fn invariance_for(ps: &PrincipalSeries, section: SectionKind) -> u32 {
    match section {
        SectionKind::Ordinary => ps.invariance_level(),
        SectionKind::Spherical => 0,
    }
}

/// g^{-1} E_{ij} g.
fn conj_basis(ginv: &RationalMatrix, g: &RationalMatrix, i: usize, j: usize) -> RationalMatrix {
    let n = g.n;
    let mut e = RationalMatrix::zero(n);
    e.set(i, j, Rational::from_integer(1.into()));
    ginv.mul(&e).mul(g)
}

fn section_value(
    ps: &PrincipalSeries,
    section: SectionKind,
    x: &RationalMatrix,
) -> Result<SymbolField> {
    match section {
        SectionKind::Ordinary => ord_section_eval(ps, x),
        SectionKind::Spherical => spherical_section_eval(ps, x),
    }
}

/// Exact sum over the coordinate box: coordinates (i, j, depth A, level B)
/// enumerate u with u_{ij} in p^{-A} Z / p^{B} Z; the measure of each
/// representative is q^{-B}. For n = 3 the coordinates are taken in the
/// group order u = n13(b) n12(a) n23(c).
fn sum_over_box(
    ps: &PrincipalSeries,
    section: SectionKind,
    kernel: i64,
    g: &RationalMatrix,
    coords: &[(usize, usize, i64, i64)],
) -> Result<SymbolField> {
    let n = ps.rank();
    let reg = ps.reg();
    let p = ps.p;
    let psi = AdditiveCharacter::standard(p).twisted(-kernel);
    let w = RationalMatrix::weyl_longest(n);
    let wg = w.mul(g);
    let mut total_b: i64 = 0;
    let mut ranges = Vec::new();
    for &(_, _, a, b) in coords {
        total_b += b;
        let count = (a + b) as u64;
        ranges.push(p.checked_pow(count as u32).ok_or(Error::Resource(usize::MAX))? as i64);
    }
    let measure = SymbolField::q_half_pow(reg, -2 * total_b as i32);
    let mut acc = crate::algebra::Poly::zero(reg);
    let mut acc_den: Vec<(SymbolField, Cyclo)> = Vec::new();
    let mut idx = vec![0i64; coords.len()];
    loop {
        // coordinate values: p^{-A} * index
        let vals: Vec<Rational> = coords
            .iter()
            .zip(idx.iter())
            .map(|(&(_, _, a, _), &k)| power_rat(p, -a) * Rational::from_integer(k.into()))
            .collect();
        // u in group coordinates; psi sees the superdiagonal entries
        let mut u = RationalMatrix::identity(n);
        let mut psi_arg = Rational::zero();
        match n {
            2 => {
                u.set(0, 1, vals[0].clone());
                psi_arg += &vals[0];
            }
            3 => {
                let (a12, b13, c23) = (vals[0].clone(), vals[1].clone(), vals[2].clone());
                u.set(0, 1, a12.clone());
                u.set(1, 2, c23.clone());
                u.set(0, 2, &b13 + &a12 * &c23);
                psi_arg += &a12;
                psi_arg += &c23;
            }
            _ => unreachable!(),
        }
        // w_n u g = (w_n u w_n) w_n g: row-permuted u times the fixed w g
        let wuw = w.mul(&u).mul(&w);
        let x = wuw.mul(&wg);
        let val = section_value(ps, section, &x)?;
        if !val.is_zero() {
            let phase = psi.eval(&psi_arg);
            let term = val.scale(&phase);
            if term.den.is_empty() {
                acc = acc.add(&term.num);
            } else {
                acc_den.push((term, Cyclo::one()));
            }
        }
        // advance the mixed-radix index
        let mut done = true;
        for k in 0..idx.len() {
            idx[k] += 1;
            if idx[k] < ranges[k] {
                done = false;
                break;
            }
            idx[k] = 0;
        }
        if done {
            break;
        }
    }
    let mut out = SymbolField::from_poly(acc);
    for (t, _) in acc_den {
        out = out.add(&t);
    }
    Ok(out.mul(&measure))
}
