//! Independent numeric oracle for the Ichino-Ikeda integral over U(2):
//! Haar-measure quadrature of the matrix-coefficient integrand.
//!
//! U(2) is parametrized as a center phase times SU(2) Euler angles. The
//! periodic directions use uniform grids (exact for trigonometric
//! polynomials once the grid exceeds the frequency content) and the polar
//! angle uses Gauss-Legendre with order doubling until the value is stable.

use crate::algebra::{Cyclo, Poly};
use crate::{Error, Result};

use super::invariants::{build_p_dual, build_w_h};
use super::{pair_gl3, ArchVars};

#[derive(Clone, Copy, Debug)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
    const ONE: C64 = C64 { re: 1.0, im: 0.0 };

    fn new(re: f64, im: f64) -> Self {
        C64 { re, im }
    }

    fn from_polar(r: f64, theta: f64) -> Self {
        C64 { re: r * theta.cos(), im: r * theta.sin() }
    }

    fn add(self, o: C64) -> C64 {
        C64::new(self.re + o.re, self.im + o.im)
    }

    fn mul(self, o: C64) -> C64 {
        C64::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }

    fn conj(self) -> C64 {
        C64::new(self.re, -self.im)
    }

    fn scale(self, s: f64) -> C64 {
        C64::new(self.re * s, self.im * s)
    }

    fn powi(self, mut k: i32) -> C64 {
        assert!(k >= 0);
        let mut acc = C64::ONE;
        let mut base = self;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            k >>= 1;
        }
        acc
    }
}

/// The integrand ell_Pi(Pi(iota(h), h) W^H (x) W^{H theta}) as a polynomial
/// in the symbolic unitary entries h_ij and conjugates c_ij. The dual
/// copy's tensor slot is renamed to (X1, Y1) so the two slots stay
/// distinguishable, then contracted by the l_d rule.
fn integrand_poly_fixed(v: &ArchVars, a: u32, b: u32, n: u32, l: u32) -> Result<Poly> {
    let w_h = build_w_h(v, a, b, n, l);
    let h = |i: usize, j: usize| v.var(v.h[i][j]);
    let c = |i: usize, j: usize| v.var(v.c[i][j]);
    let zero = Poly::zero(&v.reg);
    let gx = [
        [h(0, 0), zero.clone(), h(0, 1)],
        [zero.clone(), Poly::one(&v.reg), zero.clone()],
        [h(1, 0), zero.clone(), h(1, 1)],
    ];
    let gy = [
        [c(0, 0), zero.clone(), c(0, 1)],
        [zero.clone(), Poly::one(&v.reg), zero.clone()],
        [c(1, 0), zero.clone(), c(1, 1)],
    ];
    let mut subs = Vec::new();
    for j in 0..3 {
        let mut fx = Poly::zero(&v.reg);
        let mut fy = Poly::zero(&v.reg);
        for i in 0..3 {
            fx = fx.add(&v.var(v.x[i]).mul(&gx[i][j]));
            fy = fy.add(&v.var(v.y[i]).mul(&gy[i][j]));
        }
        subs.push((v.x[j], fx));
        subs.push((v.y[j], fy));
    }
    let sx = v.var(v.x2cap).mul(&h(0, 0)).add(&v.var(v.y2cap).mul(&h(1, 0)));
    let sy = v.var(v.x2cap).mul(&h(0, 1)).add(&v.var(v.y2cap).mul(&h(1, 1)));
    subs.push((v.x2cap, sx));
    subs.push((v.y2cap, sy));
    let moved = w_h.substitute_poly(&subs);
    let det_conj = c(0, 0).mul(&c(1, 1)).sub(&c(0, 1).mul(&c(1, 0)));
    let twisted = moved.mul(&det_conj.pow(b - l));

    // The dual vector must be the harmonic representative (the pairing only
    // descends to the quotient against harmonics); it equals the theta image
    // of W^H. Its slot is renamed (X2, Y2) -> (X1, Y1).
    let dual = build_p_dual(v, a, b, n, l);
    let dual_renamed =
        dual.substitute_poly(&[(v.x2cap, v.var(v.x1cap)), (v.y2cap, v.var(v.y1cap))]);
    // contract the (x, y) block
    let paired = pair_gl3(v, a, b, &twisted, &dual_renamed);
    // contract slot (X2,Y2) of the moved copy against (X1,Y1) of the dual
    let d = a - n + b - l;
    let mut out = Poly::zero(&v.reg);
    for (e, coef) in &paired.terms {
        let i = e[v.x2cap] as u32;
        let j = e[v.x1cap] as u32;
        debug_assert_eq!(e[v.x2cap] + e[v.y2cap], d as i32);
        debug_assert_eq!(e[v.x1cap] + e[v.y1cap], d as i32);
        if i + j != d {
            continue;
        }
        let sign = if i % 2 == 0 { 1i64 } else { -1 };
        let w = crate::arith::Rational::new(sign.into(), super::binomial(d, i));
        let mut e2 = e.clone();
        e2[v.x2cap] = 0;
        e2[v.y2cap] = 0;
        e2[v.x1cap] = 0;
        e2[v.y1cap] = 0;
        let term = Poly {
            reg: v.reg.clone(),
            terms: [(e2, coef.scale(&w))].into_iter().collect(),
        };
        out = out.add(&term);
    }
    Ok(out)
}

fn cyclo_to_c64(c: &Cyclo) -> C64 {
    let (re, im) = c.to_complex();
    C64::new(re, im)
}

/// Evaluate the integrand polynomial at a concrete unitary matrix.
fn eval_at(v: &ArchVars, poly: &[(Vec<i32>, C64)], h: [[C64; 2]; 2]) -> C64 {
    let mut vals = vec![C64::ONE; v.reg.len()];
    for i in 0..2 {
        for j in 0..2 {
            vals[v.h[i][j]] = h[i][j];
            vals[v.c[i][j]] = h[i][j].conj();
        }
    }
    let mut acc = C64::ZERO;
    for (e, coef) in poly {
        let mut t = *coef;
        for (id, k) in e.iter().enumerate() {
            if *k != 0 {
                t = t.mul(vals[id].powi(*k));
            }
        }
        acc = acc.add(t);
    }
    acc
}

fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    // Newton iteration on Legendre polynomials, nodes on (-1, 1).
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Quadrature of the integrand over U(2) with Haar measure 1.
fn quadrature_pass(
    v: &ArchVars,
    poly: &[(Vec<i32>, C64)],
    grid: usize,
    theta_order: usize,
) -> f64 {
    let tau = 2.0 * std::f64::consts::PI;
    let (tn, tw) = gauss_legendre(theta_order);
    let mut total = 0.0;
    // h = e^{i phi} * [[e^{i al} cos t, e^{i be} sin t],
    //                  [-e^{-i be} sin t, e^{-i al} cos t]]
    for gi in 0..grid {
        let phi = tau * gi as f64 / grid as f64;
        let zphi = C64::from_polar(1.0, phi);
        for ai in 0..grid {
            let al = tau * ai as f64 / grid as f64;
            for bi in 0..grid {
                let be = tau * bi as f64 / grid as f64;
                for (k, &t) in tn.iter().enumerate() {
                    // map (-1,1) -> (0, pi/2)
                    let theta = (t + 1.0) * std::f64::consts::FRAC_PI_4;
                    let (ct, st) = (theta.cos(), theta.sin());
                    let su = [
                        [C64::from_polar(ct, al), C64::from_polar(st, be)],
                        [C64::from_polar(st, -be).scale(-1.0), C64::from_polar(ct, -al)],
                    ];
                    let h = [
                        [su[0][0].mul(zphi), su[0][1].mul(zphi)],
                        [su[1][0].mul(zphi), su[1][1].mul(zphi)],
                    ];
                    let val = eval_at(v, poly, h);
                    // SU(2) Haar: (1/(2 pi^2)) sin t cos t dt dal dbe over
                    // t in (0, pi/2), al, be in (0, 2pi); phi weight 1/(2pi).
                    let jac = st * ct * std::f64::consts::FRAC_PI_4; // dt from GL map
                    total += val.re * tw[k] * jac;
                }
            }
        }
    }
    let norm = (tau / grid as f64).powi(3) / (2.0 * std::f64::consts::PI.powi(2))
        / (2.0 * std::f64::consts::PI);
    total * norm
}

/// Numeric Ichino-Ikeda value by Haar quadrature, with order doubling until
/// two passes agree to `tol`.
pub fn ichino_ikeda_numeric(a: u32, b: u32, n: u32, l: u32, tol: f64) -> Result<f64> {
    let v = ArchVars::new();
    let poly = integrand_poly_fixed(&v, a, b, n, l)?;
    let terms: Vec<(Vec<i32>, C64)> =
        poly.terms.iter().map(|(e, c)| (e.clone(), cyclo_to_c64(c))).collect();
    // frequency content: total degree in each phase bounded by the full
    // polynomial degree; grid must exceed it.
    let max_deg: i32 = poly
        .terms
        .keys()
        .map(|e| e.iter().map(|k| k.abs()).sum::<i32>())
        .max()
        .unwrap_or(0);
    let base_grid = (max_deg as usize + 2).next_power_of_two().max(4);
    let mut theta_order = 6;
    let mut prev = quadrature_pass(&v, &terms, base_grid, theta_order);
    for _ in 0..4 {
        theta_order *= 2;
        let cur = quadrature_pass(&v, &terms, base_grid, theta_order);
        if (cur - prev).abs() <= tol * prev.abs().max(1.0) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Numeric(format!("quadrature did not stabilize to {tol}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compactrep::invariants::compute_c_nl;
    use crate::compactrep::invariants::ichino_ikeda_algebraic;
    use crate::arith::Rational;

    fn rational_to_f64(r: &Rational) -> f64 {
        crate::algebra::cyclo::rational_to_f64(r)
    }

    #[test]
    fn numeric_matches_algebraic_small() {
        let v = ArchVars::new();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        use rand::SeedableRng;
        for (a, b, n, l) in [(0u32, 0u32, 0u32, 0u32), (1, 1, 0, 1), (2, 2, 1, 1)] {
            let c = compute_c_nl(&v, a, b, &mut rng).unwrap();
            let alg = rational_to_f64(&ichino_ikeda_algebraic(a, b, n, l, &c).unwrap());
            let num = ichino_ikeda_numeric(a, b, n, l, 1e-8).unwrap();
            let denom = alg.abs().max(1e-12);
            assert!(
                ((num - alg) / denom).abs() < 1e-6,
                "(a,b,n,l)=({a},{b},{n},{l}): num={num} alg={alg}"
            );
        }
    }
}
