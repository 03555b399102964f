//! Cyclotomic numbers with exact rational coordinates.
//!
//! An element of order `m` lives in Q[x]/Φ_m(x) and is stored on the power
//! basis 1, ζ, ..., ζ^{φ(m)-1}, reduced modulo the cyclotomic polynomial, so
//! equality is coefficient equality. Elements of different orders are merged
//! by embedding into the lcm order.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::Rational;

/// Reduction data for one cyclotomic order: Φ_m and the expansions of
/// x^j for φ(m) <= j < m on the power basis.
struct CycloTable {
    phi: usize,
    /// reduction[j] = coordinates of x^{phi + j} for 0 <= j < order - phi.
    reduction: Vec<Vec<Rational>>,
}

fn euler_phi(m: u32) -> usize {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

/// Cyclotomic polynomial Φ_m as integer coefficients (ascending).
fn cyclotomic_poly(m: u32) -> Vec<BigInt> {
    // Φ_m = (x^m - 1) / prod_{d | m, d < m} Φ_d, computed by exact division.
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let phid = cyclotomic_poly(d);
            num = poly_exact_div(&num, &phid);
        }
    }
    num
}

/// Exact division of integer polynomials (ascending coefficients).
fn poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        quot[k] = c.clone();
        for i in 0..=dd {
            rem[k + i] -= &c * &den[i];
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division not exact");
    quot
}

fn table(order: u32) -> Arc<CycloTable> {
    static TABLES: OnceLock<Mutex<HashMap<u32, Arc<CycloTable>>>> = OnceLock::new();
    let map = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().unwrap();
    guard
        .entry(order)
        .or_insert_with(|| {
            let phi = euler_phi(order);
            let phim = cyclotomic_poly(order);
            assert_eq!(phim.len(), phi + 1);
            // x^{phi+j} = x * x^{phi+j-1} reduced via x^phi = -(lower part).
            let head: Vec<Rational> = phim[..phi]
                .iter()
                .map(|c| Rational::from_integer(-c.clone()))
                .collect();
            // Rows for x^{phi}..x^{max(2phi-2, order-1)}: products of two
            // reduced elements reach degree 2phi-2, and basis_coords asks for
            // exponents below `order`.
            let rows = (phi.saturating_sub(1)).max(order as usize - phi).max(1);
            let mut reduction: Vec<Vec<Rational>> = Vec::new();
            let mut cur = head.clone();
            reduction.push(cur.clone());
            for _ in 1..rows {
                // multiply cur by x, reduce the overflow term
                let overflow = cur[phi - 1].clone();
                let mut next = vec![Rational::zero(); phi];
                for i in (1..phi).rev() {
                    next[i] = cur[i - 1].clone();
                }
                for i in 0..phi {
                    next[i] += &overflow * &head[i];
                }
                cur = next;
                reduction.push(cur.clone());
            }
            Arc::new(CycloTable { phi, reduction })
        })
        .clone()
}

/// Exact cyclotomic number.
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclo {
    order: u32,
    /// φ(order) coordinates on the power basis.
    coords: Vec<Rational>,
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo { order: 1, coords: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        Cyclo { order: 1, coords: vec![Rational::one()] }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclo { order: 1, coords: vec![r] }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// Coordinates of ζ_m^k on the power basis of order m.
    fn basis_coords(m: u32, k: i64) -> Vec<Rational> {
        let kk = k.rem_euclid(m as i64) as usize;
        let t = table(m);
        if kk < t.phi {
            let mut coords = vec![Rational::zero(); t.phi];
            coords[kk] = Rational::one();
            coords
        } else {
            t.reduction[kk - t.phi].clone()
        }
    }

    /// Primitive m-th root of unity raised to the k-th power.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m >= 1);
        Cyclo { order: m, coords: Self::basis_coords(m, k) }.trimmed()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coords[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.order == 1 {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    /// Ring embedding into a multiple order.
    pub fn embed(&self, target: u32) -> Result<Self, crate::Error> {
        if target % self.order != 0 {
            return Err(crate::Error::Config(format!(
                "cannot embed order {} into non-multiple order {}",
                self.order, target
            )));
        }
        Ok(self.embed_raw(target).trimmed())
    }

    /// Reduce to the smallest representation we can detect cheaply
    /// (rational elements drop to order 1, so equality stays canonical).
    fn trimmed(mut self) -> Self {
        if self.order > 1 && self.coords[1..].iter().all(|c| c.is_zero()) {
            // Constant coordinate: genuinely rational only when the constant
            // term of the power basis is the only contribution, which holds
            // since the basis starts with 1.
            self = Cyclo { order: 1, coords: vec![self.coords[0].clone()] };
        }
        self
    }

    /// Raw embedding into a multiple order without the rational collapse.
    fn embed_raw(&self, target: u32) -> Cyclo {
        if self.order == target {
            return self.clone();
        }
        let step = (target / self.order) as i64;
        let mut coords = vec![Rational::zero(); table(target).phi];
        for (j, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                let term = Cyclo::basis_coords(target, j as i64 * step);
                for (a, b) in coords.iter_mut().zip(term.iter()) {
                    *a += c * b;
                }
            }
        }
        Cyclo { order: target, coords }
    }

    fn lift(a: &Cyclo, b: &Cyclo) -> (Cyclo, Cyclo) {
        if a.order == b.order {
            (a.clone(), b.clone())
        } else {
            let m = num_integer::lcm(a.order, b.order);
            (a.embed_raw(m), b.embed_raw(m))
        }
    }

    pub fn add(&self, other: &Cyclo) -> Cyclo {
        let (mut a, b) = Self::lift(self, other);
        for (x, y) in a.coords.iter_mut().zip(b.coords.iter()) {
            *x += y;
        }
        a.trimmed()
    }

    pub fn sub(&self, other: &Cyclo) -> Cyclo {
        let (mut a, b) = Self::lift(self, other);
        for (x, y) in a.coords.iter_mut().zip(b.coords.iter()) {
            *x -= y;
        }
        a.trimmed()
    }

    pub fn neg(&self) -> Cyclo {
        let mut a = self.clone();
        for x in a.coords.iter_mut() {
            *x = -x.clone();
        }
        a
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        if self.is_zero() || other.is_zero() {
            return Cyclo::zero();
        }
        let (a, b) = Self::lift(self, other);
        if a.order == 1 {
            return Cyclo { order: 1, coords: vec![&a.coords[0] * &b.coords[0]] };
        }
        let t = table(a.order);
        let phi = t.phi;
        let mut raw = vec![Rational::zero(); 2 * phi - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        let mut coords: Vec<Rational> = raw[..phi].to_vec();
        for (j, c) in raw[phi..].iter().enumerate() {
            if !c.is_zero() {
                for (i, r) in t.reduction[j].iter().enumerate() {
                    coords[i] += c * r;
                }
            }
        }
        Cyclo { order: a.order, coords }.trimmed()
    }

    pub fn scale(&self, r: &Rational) -> Cyclo {
        let mut a = self.clone();
        for x in a.coords.iter_mut() {
            *x *= r;
        }
        a.trimmed()
    }

    /// Complex conjugation, ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Cyclo {
        if self.order == 1 {
            return self.clone();
        }
        let m = self.order;
        let mut acc = Cyclo { order: m, coords: vec![Rational::zero(); table(m).phi] };
        for (j, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                let term = Cyclo::basis_coords(m, -(j as i64));
                for (a, b) in acc.coords.iter_mut().zip(term.iter()) {
                    *a += c * b;
                }
            }
        }
        acc.trimmed()
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    pub fn inverse(&self) -> Result<Cyclo, crate::Error> {
        if self.is_zero() {
            return Err(crate::Error::DivisionByZero);
        }
        if self.order == 1 {
            return Ok(Cyclo { order: 1, coords: vec![self.coords[0].recip()] });
        }
        let m = self.order;
        let phim: Vec<Rational> = cyclotomic_poly(m)
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let f: Vec<Rational> = self.coords.clone();
        let inv = poly_mod_inverse(&f, &phim).ok_or(crate::Error::DivisionByZero)?;
        let phi = table(m).phi;
        let mut coords = inv;
        coords.resize(phi, Rational::zero());
        Ok(Cyclo { order: m, coords }.trimmed())
    }

    pub fn pow(&self, e: i64) -> Result<Cyclo, crate::Error> {
        if e == 0 {
            return Ok(Cyclo::one());
        }
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Cyclo::one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Squared complex absolute value as a cyclotomic (self * conj).
    pub fn norm_squared(&self) -> Cyclo {
        self.mul(&self.conj())
    }

    /// Deterministic text form used in reports.
    pub fn render(&self) -> String {
        if self.order == 1 {
            return format!("{}", self.coords[0]);
        }
        let mut parts = Vec::new();
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j == 0 {
                parts.push(format!("{}", c));
            } else if c.is_one() {
                parts.push(format!("z{}^{}", self.order, j));
            } else {
                parts.push(format!("({})*z{}^{}", c, self.order, j));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Numeric value as (re, im) for float oracles.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coords.iter().enumerate() {
            let v = rational_to_f64(c);
            let ang = 2.0 * std::f64::consts::PI * j as f64 / self.order as f64;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Good enough for oracle tolerances; values stay small in practice.
    let nf: f64 = n.to_string().parse().unwrap_or(f64::NAN);
    let df: f64 = d.to_string().parse().unwrap_or(f64::NAN);
    nf / df
}

/// Inverse of f modulo the monic polynomial g over Q, both ascending.
fn poly_mod_inverse(f: &[Rational], g: &[Rational]) -> Option<Vec<Rational>> {
    // Extended Euclid on (g, f).
    let trim = |mut v: Vec<Rational>| {
        while v.len() > 1 && v.last().unwrap().is_zero() {
            v.pop();
        }
        v
    };
    let mut r0 = trim(g.to_vec());
    let mut r1 = trim(f.to_vec());
    let mut s0: Vec<Rational> = vec![Rational::zero()];
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        // divide r0 by r1
        let mut rem = r0.clone();
        let mut q = vec![Rational::zero(); rem.len().saturating_sub(r1.len()) + 1];
        while rem.len() >= r1.len() && !(rem.len() == 1 && rem[0].is_zero()) {
            let shift = rem.len() - r1.len();
            let c = rem.last().unwrap() / r1.last().unwrap();
            q[shift] += &c;
            for i in 0..r1.len() {
                let t = &c * &r1[i];
                rem[shift + i] -= t;
            }
            rem = trim(rem);
            if rem.len() == 1 && rem[0].is_zero() {
                break;
            }
            if rem.len() < r1.len() {
                break;
            }
        }
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = trim(rem);
        s0 = s1;
        s1 = trim(s2);
    }
    // r0 = gcd; invertible iff constant
    if r0.len() != 1 || r0[0].is_zero() {
        return None;
    }
    let c = r0[0].recip();
    Some(s0.iter().map(|x| x * &c).collect())
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn third_root_relation() {
        // 1 + ζ3 + ζ3^2 = 0
        let z = Cyclo::root_of_unity(3, 1);
        let s = Cyclo::one().add(&z).add(&z.mul(&z));
        assert!(s.is_zero());
    }

    #[test]
    fn embed_zeta3_into_order_six() {
        let z3 = Cyclo::root_of_unity(3, 1);
        let embedded = z3.embed(6).unwrap();
        assert_eq!(embedded, Cyclo::root_of_unity(6, 2));
    }

    #[test]
    fn embed_rejects_non_multiple() {
        let z3 = Cyclo::root_of_unity(3, 1);
        assert!(z3.embed(4).is_err());
    }

    #[test]
    fn conj_commutes_with_embed() {
        for k in 0..5 {
            let v = Cyclo::root_of_unity(5, k).scale(&rat(3, 7)).add(&Cyclo::root_of_unity(5, 2 * k));
            let lhs = v.embed(15).unwrap().conj();
            let rhs = v.conj().embed(15).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let v = Cyclo::root_of_unity(7, 3).add(&Cyclo::from_i64(2));
        let inv = v.inverse().unwrap();
        assert!(v.mul(&inv).is_one());
    }

    #[test]
    fn conj_is_involutive_automorphism() {
        let a = Cyclo::root_of_unity(12, 5).add(&Cyclo::from_i64(1));
        let b = Cyclo::root_of_unity(12, 7).scale(&rat(-2, 3));
        assert_eq!(a.conj().conj(), a);
        assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
    }
}
