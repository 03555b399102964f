//! Polynomial models of U(2) and U(3) irreducibles, their pairings and
//! involutions, invariant vectors, branching operators, the constants
//! a^{(m)} and c_{n,l}, the Ichino-Ikeda integral over U(2), and the
//! archimedean L-factor products.
//!
//! Conventions. GL(3) acts on polynomials in the 2x3 matrix of variables
//! (x; y) by x -> x g, y -> y (g^T)^{-1}; P_{a,b} is the span of monomials
//! of degree a in x and b in y. The U(3) irreducible with highest weight
//! (a, 0, -b) is the quotient of P_{a,b} by (x.y) P_{a-1,b-1}, and its dual
//! is the kernel of the Laplacian Delta = sum d^2/dx_i dy_i. GL(2) acts on
//! two-variable forms by (X, Y) -> (X, Y) h.

pub mod arch;
pub mod invariants;
pub mod quadrature;

pub use arch::{arch_l_data, ArchData, PiRational};
pub use invariants::{
    branch_nabla, coefficient_a, compute_c_nl, ichino_ikeda_algebraic, invariant_vectors,
    InvariantVectors,
};
pub use quadrature::ichino_ikeda_numeric;

use num_traits::Zero;

use crate::algebra::{Cyclo, Poly, SymbolRegistry};
use crate::arith::Rational;
use crate::padic::RationalMatrix;
use crate::{Error, Result};

/// Names of the model variables: the U(3) coordinates, the GL(2) tensor
/// slot (X2, Y2), the branching target (X1, Y1), and the symbolic unitary
/// group entries used by the quadrature precomputation.
pub const ARCH_VARS: [&str; 18] = [
    "x1", "x2", "x3", "y1", "y2", "y3", "X1", "Y1", "X2", "Y2", "h11", "h12", "h21", "h22",
    "c11", "c12", "c21", "c22",
];

pub fn arch_registry() -> SymbolRegistry {
    SymbolRegistry::new(&ARCH_VARS)
}

/// Variable ids for one registry, resolved once.
#[derive(Clone)]
pub struct ArchVars {
    pub reg: SymbolRegistry,
    pub x: [usize; 3],
    pub y: [usize; 3],
    pub x1cap: usize,
    pub y1cap: usize,
    pub x2cap: usize,
    pub y2cap: usize,
    pub h: [[usize; 2]; 2],
    pub c: [[usize; 2]; 2],
}

impl ArchVars {
    pub fn new() -> Self {
        let reg = arch_registry();
        ArchVars {
            x: [reg.id("x1"), reg.id("x2"), reg.id("x3")],
            y: [reg.id("y1"), reg.id("y2"), reg.id("y3")],
            x1cap: reg.id("X1"),
            y1cap: reg.id("Y1"),
            x2cap: reg.id("X2"),
            y2cap: reg.id("Y2"),
            h: [[reg.id("h11"), reg.id("h12")], [reg.id("h21"), reg.id("h22")]],
            c: [[reg.id("c11"), reg.id("c12")], [reg.id("c21"), reg.id("c22")]],
            reg,
        }
    }

    pub fn var(&self, id: usize) -> Poly {
        Poly::symbol(&self.reg, id)
    }
}

impl Default for ArchVars {
    fn default() -> Self {
        Self::new()
    }
}

/// Homogeneous two-variable form of degree n in the (X2, Y2) slot.
#[derive(Clone, Debug, PartialEq)]
pub struct Gl2Poly {
    pub n: u32,
    pub poly: Poly,
}

/// Polynomial of bidegree (a, b) in (x; y), possibly tensored with GL(2)
/// slots.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPolynomial {
    pub a: u32,
    pub b: u32,
    pub poly: Poly,
}

/// A bidegree-(a,b) class together with its harmonic representative.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicClass {
    pub a: u32,
    pub b: u32,
    pub representative: Poly,
    pub harmonic: Poly,
}

/// The Laplacian sum_i d^2/(dx_i dy_i) applied to the (x, y) variables.
pub fn laplacian(v: &ArchVars, p: &Poly) -> Poly {
    let mut out = Poly::zero(&v.reg);
    for i in 0..3 {
        out = out.add(&p.derivative(v.x[i]).derivative(v.y[i]));
    }
    out
}

/// x1 y1 + x2 y2 + x3 y3.
pub fn radial(v: &ArchVars) -> Poly {
    let mut out = Poly::zero(&v.reg);
    for i in 0..3 {
        out = out.add(&v.var(v.x[i]).mul(&v.var(v.y[i])));
    }
    out
}

/// Monomial basis of P_{a,b} (pure (x, y) part).
pub fn monomial_basis(v: &ArchVars, a: u32, b: u32) -> Vec<Poly> {
    let mut out = Vec::new();
    for xe in compositions(a, 3) {
        for ye in compositions(b, 3) {
            let mut exps = Vec::new();
            for i in 0..3 {
                exps.push((v.x[i], xe[i] as i32));
                exps.push((v.y[i], ye[i] as i32));
            }
            out.push(Poly::monomial(&v.reg, &exps, Cyclo::one()));
        }
    }
    out
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for head in 0..=total {
        for mut rest in compositions(total - head, parts - 1) {
            let mut v = vec![head];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Exact solve: the unique harmonic Q with Q == P mod (x.y) P_{a-1,b-1}.
/// The GL(2) slots (X1, Y1, X2, Y2, h, c) are treated as scalars: the
/// projection is applied coefficient-wise over them.
pub fn harmonic_project(v: &ArchVars, a: u32, b: u32, p: &Poly) -> Result<HarmonicClass> {
    if a == 0 || b == 0 {
        // Delta annihilates everything of bidegree (a, 0) or (0, b).
        return Ok(HarmonicClass { a, b, representative: p.clone(), harmonic: p.clone() });
    }
    // Solve Delta(P) = Delta(r R) for R in P_{a-1,b-1} tensored with the
    // scalar slots appearing in P, then Q = P - r R.
    let r = radial(v);
    let basis = monomial_basis(v, a - 1, b - 1);
    let dim = basis.len();
    // target space basis: monomials of P_{a-1,b-1}
    let target = monomial_basis(v, a - 1, b - 1);
    let index_of = |mono: &Poly| -> usize {
        let key = mono.terms.keys().next().unwrap();
        target
            .iter()
            .position(|t| t.terms.keys().next().unwrap() == key)
            .expect("monomial in target basis")
    };
    // matrix of R -> Delta(r R) in the monomial bases (xy-part only)
    let mut mat = vec![vec![Rational::from_integer(0.into()); dim]; dim];
    for (j, bj) in basis.iter().enumerate() {
        let img = laplacian(v, &r.mul(bj));
        for (e, coef) in &img.terms {
            let mono = Poly { reg: v.reg.clone(), terms: [(e.clone(), Cyclo::one())].into_iter().collect() };
            let i = index_of(&mono);
            mat[i][j] = coef.as_rational().cloned().ok_or_else(|| {
                Error::Internal("non-rational coefficient in harmonic solve".into())
            })?;
        }
    }
    let lu = LuSolver::new(mat)?;
    // split P by the scalar-slot (non-xy) exponents and project each piece
    let xy_ids: Vec<usize> = v.x.iter().chain(v.y.iter()).cloned().collect();
    let mut pieces: std::collections::BTreeMap<Vec<i32>, Poly> = std::collections::BTreeMap::new();
    for (e, coef) in &p.terms {
        let mut scalar = e.clone();
        let mut xy = vec![0i32; e.len()];
        for &id in &xy_ids {
            xy[id] = e[id];
            scalar[id] = 0;
        }
        let entry = pieces.entry(scalar).or_insert_with(|| Poly::zero(&v.reg));
        let mono = Poly {
            reg: v.reg.clone(),
            terms: [(xy, coef.clone())].into_iter().collect(),
        };
        *entry = entry.add(&mono);
    }
    let mut harmonic = Poly::zero(&v.reg);
    for (scalar, piece) in pieces {
        let rhs_poly = laplacian(v, &piece);
        let mut rhs = vec![Rational::from_integer(0.into()); dim];
        for (e, coef) in &rhs_poly.terms {
            let mono = Poly { reg: v.reg.clone(), terms: [(e.clone(), Cyclo::one())].into_iter().collect() };
            rhs[index_of(&mono)] = coef
                .as_rational()
                .cloned()
                .ok_or_else(|| Error::Internal("non-rational coefficient".into()))?;
        }
        let sol = lu.solve(&rhs)?;
        let mut rr = Poly::zero(&v.reg);
        for (j, c) in sol.iter().enumerate() {
            if !c.is_zero() {
                rr = rr.add(&basis[j].scale(&Cyclo::from_rational(c.clone())));
            }
        }
        let q = piece.sub(&r.mul(&rr));
        let shift = Poly {
            reg: v.reg.clone(),
            terms: [(scalar, Cyclo::one())].into_iter().collect(),
        };
        harmonic = harmonic.add(&q.mul(&shift));
    }
    Ok(HarmonicClass { a, b, representative: p.clone(), harmonic })
}

/// Exact LU solver over the rationals, reusable for several right sides.
pub struct LuSolver {
    n: usize,
    lu: Vec<Vec<Rational>>,
    perm: Vec<usize>,
}

impl LuSolver {
    pub fn new(mut mat: Vec<Vec<Rational>>) -> Result<Self> {
        let n = mat.len();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !mat[r][col].is_zero())
                .ok_or_else(|| Error::Internal("singular projection matrix".into()))?;
            mat.swap(col, pivot);
            perm.swap(col, pivot);
            let inv = mat[col][col].recip();
            for r in col + 1..n {
                let f = &mat[r][col] * &inv;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = &mat[r][c] - &f * &mat[col][c];
                    mat[r][c] = v;
                }
                mat[r][col] = f;
            }
        }
        Ok(LuSolver { n, lu: mat, perm })
    }

    pub fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.n;
        let mut b: Vec<Rational> = self.perm.iter().map(|&i| rhs[i].clone()).collect();
        for r in 1..n {
            for c in 0..r {
                let v = &b[r] - &self.lu[r][c] * &b[c];
                b[r] = v;
            }
        }
        for r in (0..n).rev() {
            for c in r + 1..n {
                let v = &b[r] - &self.lu[r][c] * &b[c];
                b[r] = v;
            }
            b[r] = &b[r] / &self.lu[r][r];
        }
        Ok(b)
    }
}

/// Dimension of the harmonic subspace of P_{a,b} computed from the kernel of
/// the Laplacian (rank computation over Q).
pub fn harmonic_dimension(v: &ArchVars, a: u32, b: u32) -> usize {
    let basis = monomial_basis(v, a, b);
    if a == 0 || b == 0 {
        return basis.len();
    }
    let target = monomial_basis(v, a - 1, b - 1);
    let index_of = |key: &Vec<i32>| -> usize {
        target.iter().position(|t| t.terms.keys().next().unwrap() == key).unwrap()
    };
    let mut mat: Vec<Vec<Rational>> =
        vec![vec![Rational::from_integer(0.into()); basis.len()]; target.len()];
    for (j, bj) in basis.iter().enumerate() {
        for (e, c) in &laplacian(v, bj).terms {
            mat[index_of(e)][j] = c.as_rational().unwrap().clone();
        }
    }
    let rank = rank_of(&mut mat);
    basis.len() - rank
}

fn rank_of(mat: &mut [Vec<Rational>]) -> usize {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !mat[r][col].is_zero());
        let Some(p) = pivot else { continue };
        mat.swap(rank, p);
        let inv = mat[rank][col].recip();
        for r in 0..rows {
            if r != rank && !mat[r][col].is_zero() {
                let f = &mat[r][col] * &inv;
                for c in col..cols {
                    let v = &mat[r][c] - &f * &mat[rank][c];
                    mat[r][c] = v;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// GL(3) action: x -> x g, y -> y (g^T)^{-1}, entries exact rationals.
pub fn act_gl3(v: &ArchVars, g: &RationalMatrix, p: &Poly) -> Result<Poly> {
    assert_eq!(g.n, 3);
    let ginv_t = g.inverse()?.transpose();
    let mut subs = Vec::new();
    for j in 0..3 {
        // x_j -> sum_i x_i g_{ij}
        let mut form = Poly::zero(&v.reg);
        for i in 0..3 {
            form = form.add(&v.var(v.x[i]).scale(&Cyclo::from_rational(g.at(i, j).clone())));
        }
        subs.push((v.x[j], form));
        let mut formy = Poly::zero(&v.reg);
        for i in 0..3 {
            formy = formy.add(&v.var(v.y[i]).scale(&Cyclo::from_rational(ginv_t.at(i, j).clone())));
        }
        subs.push((v.y[j], formy));
    }
    Ok(p.substitute_poly(&subs))
}

/// GL(2) action on the (X2, Y2) slot: (X, Y) -> (X, Y) h.
pub fn act_gl2_slot(v: &ArchVars, h: &RationalMatrix, p: &Poly) -> Poly {
    assert_eq!(h.n, 2);
    let x = v.var(v.x2cap);
    let y = v.var(v.y2cap);
    let fx = x
        .scale(&Cyclo::from_rational(h.at(0, 0).clone()))
        .add(&y.scale(&Cyclo::from_rational(h.at(1, 0).clone())));
    let fy = x
        .scale(&Cyclo::from_rational(h.at(0, 1).clone()))
        .add(&y.scale(&Cyclo::from_rational(h.at(1, 1).clone())));
    p.substitute_poly(&[(v.x2cap, fx), (v.y2cap, fy)])
}

/// iota: GL(2) -> GL(3), [[a,b],[c,d]] -> [[a,0,b],[0,1,0],[c,0,d]].
pub fn iota(h: &RationalMatrix) -> RationalMatrix {
    assert_eq!(h.n, 2);
    let mut g = RationalMatrix::identity(3);
    g.set(0, 0, h.at(0, 0).clone());
    g.set(0, 2, h.at(0, 1).clone());
    g.set(2, 0, h.at(1, 0).clone());
    g.set(2, 2, h.at(1, 1).clone());
    g
}

/// The pairing l_n on degree-n two-variable forms over one shared slot:
/// l_n(X^i Y^{n-i} (x) X^j Y^{n-j}) = (-1)^i / binom(n, i) when i + j = n.
pub fn pair_gl2(v: &ArchVars, n: u32, p: &Gl2Poly, q: &Gl2Poly) -> Result<Rational> {
    if p.n != n || q.n != n {
        return Err(Error::Config("degree mismatch in pair_gl2".into()));
    }
    let xid = v.x2cap;
    let yid = v.y2cap;
    let mut acc = Rational::from_integer(0.into());
    for (e1, c1) in &p.poly.terms {
        let i = e1[xid] as u32;
        for (e2, c2) in &q.poly.terms {
            let j = e2[xid] as u32;
            if i + j != n {
                continue;
            }
            debug_assert_eq!(e1[yid] as u32, n - i);
            debug_assert_eq!(e2[yid] as u32, n - j);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let w = Rational::new(sign.into(), binomial(n, i).into());
            let prod = c1.mul(c2);
            let r = prod
                .as_rational()
                .cloned()
                .ok_or_else(|| Error::Internal("non-rational pairing input".into()))?;
            acc += w * r;
        }
    }
    Ok(acc)
}

pub fn binomial(n: u32, k: u32) -> num_bigint::BigInt {
    if k > n {
        return 0.into();
    }
    let mut num = num_bigint::BigInt::from(1);
    for i in 0..k {
        num *= n - i;
        num /= i + 1;
    }
    num
}

pub fn factorial(n: u32) -> num_bigint::BigInt {
    let mut out = num_bigint::BigInt::from(1);
    for i in 2..=n {
        out *= i;
    }
    out
}

/// Differential-operator pairing l_{b,a}(Q (x) P) = Q(d/dy, d/dx) P / (a! b!)
/// contracted over the (x, y) variables; the GL(2) slots of both arguments
/// multiply through and are returned as a polynomial in those slots.
///
/// Monomials contract when the x-exponents of Q match the y-exponents of P
/// and vice versa, with value prod n_i! m_i! / (a! b!).
pub fn pair_gl3(v: &ArchVars, a: u32, b: u32, q: &Poly, p: &Poly) -> Poly {
    let mut out = Poly::zero(&v.reg);
    let norm = Rational::new(1.into(), factorial(a) * factorial(b));
    for (eq, cq) in &q.terms {
        for (ep, cp) in &p.terms {
            let mut ok = true;
            let mut weight = Rational::from_integer(1.into());
            for i in 0..3 {
                let nq = eq[v.x[i]];
                let mq = eq[v.y[i]];
                let np = ep[v.x[i]];
                let mp = ep[v.y[i]];
                if nq != mp || mq != np {
                    ok = false;
                    break;
                }
                weight *= Rational::from_integer(factorial(nq as u32) * factorial(mq as u32));
            }
            if !ok {
                continue;
            }
            // residual exponents on the scalar slots
            let mut e = vec![0i32; eq.len()];
            for id in 0..eq.len() {
                if v.x.contains(&id) || v.y.contains(&id) {
                    continue;
                }
                e[id] = eq[id] + ep[id];
            }
            let coef = cq.mul(cp).scale(&(weight.clone() * &norm));
            let term = Poly { reg: v.reg.clone(), terms: [(e, coef)].into_iter().collect() };
            out = out.add(&term);
        }
    }
    out
}

/// Scalar form of pair_gl3 when no GL(2) slots remain.
pub fn pair_gl3_scalar(v: &ArchVars, a: u32, b: u32, q: &Poly, p: &Poly) -> Result<Rational> {
    let out = pair_gl3(v, a, b, q, p);
    out.constant_value()
        .and_then(|c| c.as_rational().cloned())
        .ok_or_else(|| Error::Internal("pair_gl3 left residual slots".into()))
}

/// The theta involution on the (x, y) block: swap the x-row and y-row.
pub fn theta_swap_xy(v: &ArchVars, p: &Poly) -> Poly {
    let mut subs = Vec::new();
    for i in 0..3 {
        subs.push((v.x[i], v.var(v.y[i])));
        subs.push((v.y[i], v.var(v.x[i])));
    }
    p.substitute_poly(&subs)
}

/// The theta involution on the (X2, Y2) slot: P(X, Y) -> P(-Y, X).
pub fn theta_swap_slot(v: &ArchVars, p: &Poly) -> Poly {
    let x = v.var(v.x2cap);
    let y = v.var(v.y2cap);
    p.substitute_poly(&[(v.x2cap, y.neg()), (v.y2cap, x)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn pair_gl2_examples() {
        let v = ArchVars::new();
        // n = 2: l(XY (x) XY) = -1/2
        let xy = Gl2Poly {
            n: 2,
            poly: Poly::monomial(&v.reg, &[(v.x2cap, 1), (v.y2cap, 1)], Cyclo::one()),
        };
        assert_eq!(pair_gl2(&v, 2, &xy, &xy).unwrap(), rat(-1, 2));
        // n = 0: l(1 (x) 1) = 1
        let one = Gl2Poly { n: 0, poly: Poly::one(&v.reg) };
        assert_eq!(pair_gl2(&v, 0, &one, &one).unwrap(), rat(1, 1));
        // degree mismatch errors
        assert!(pair_gl2(&v, 2, &one, &xy).is_err());
    }

    #[test]
    fn pair_gl2_of_invariant_tensor() {
        // P_n = (X1 Y2 - Y1 X2)^n pairs with itself to n + 1 under l (x) l.
        // With one shared slot this is the contraction sum_i,j computed in
        // the two-slot expansion; here we verify n = 4 by expanding in the
        // (X2, Y2) slot against the (X1, Y1) slot.
        let v = ArchVars::new();
        let n = 4u32;
        let pn = v
            .var(v.x1cap)
            .mul(&v.var(v.y2cap))
            .sub(&v.var(v.y1cap).mul(&v.var(v.x2cap)))
            .pow(n);
        // expand P_n = sum_i binom(n,i) X1^i Y1^{n-i} (x) Y2^i (-X2)^{n-i};
        // pairing slot-wise: l(P_n (x) P_n) over both slots equals n+1.
        // Contract the X2,Y2 slot of the two copies and then the X1,Y1 slot.
        let mut total = Rational::from_integer(0.into());
        for i in 0..=n {
            for j in 0..=n {
                // coefficient of X1^i Y1^{n-i} in first copy: binom * (Y2)^i (-X2)^{n-i}
                let ci = Rational::from_integer(binomial(n, i));
                let cj = Rational::from_integer(binomial(n, j));
                // slot-2 pairing of Y2^i(-X2)^{n-i} against Y2^j(-X2)^{n-j}:
                // nonzero iff (n-i)+(n-j) = n i.e. i+j = n
                if i + j != n {
                    continue;
                }
                let sign2 = if (n - i) % 2 == 0 { 1i64 } else { -1 };
                let signs = Rational::from_integer(((-1i64).pow(((n - i) + (n - j)) as u32) * sign2).into());
                let w2 = Rational::new(1.into(), binomial(n, n - i).into());
                // slot-1 pairing of X1^i Y1^{n-i} against X1^j Y1^{n-j}: i+j = n
                let sign1 = if i % 2 == 0 { 1i64 } else { -1 };
                let w1 = Rational::new(sign1.into(), binomial(n, i).into());
                total += ci * cj * w1 * (w2 * signs);
            }
        }
        assert_eq!(total, rat(n as i64 + 1, 1));
        let _ = pn; // the expansion used above mirrors this tensor
    }

    #[test]
    fn pair_gl3_monomial_rule() {
        let v = ArchVars::new();
        // a = b = 1: q = x1 y1, p = x1 y1: matched with value 1/(1! 1!) = 1
        let q = Poly::monomial(&v.reg, &[(v.x[0], 1), (v.y[0], 1)], Cyclo::one());
        assert_eq!(pair_gl3_scalar(&v, 1, 1, &q, &q).unwrap(), rat(1, 1));
        // mismatched monomials pair to zero
        let p2 = Poly::monomial(&v.reg, &[(v.x[1], 1), (v.y[0], 1)], Cyclo::one());
        assert_eq!(pair_gl3_scalar(&v, 1, 1, &q, &p2).unwrap(), rat(0, 1));
    }

    #[test]
    fn pair_gl3_invariance_under_gl3() {
        let v = ArchVars::new();
        let (a, b) = (2u32, 1u32);
        // random-ish integer matrices with nonzero determinant
        let gs = vec![
            RationalMatrix::from_i64_rows(&[vec![1, 2, 0], vec![0, 1, 3], vec![1, 0, 1]]),
            RationalMatrix::from_i64_rows(&[vec![2, 1, 1], vec![1, 1, 0], vec![0, 1, 1]]),
            RationalMatrix::from_i64_rows(&[vec![1, 0, 0], vec![4, 1, 0], vec![2, -3, 1]]),
            RationalMatrix::from_i64_rows(&[vec![0, 1, 0], vec![-1, 0, 2], vec![0, 0, -1]]),
            RationalMatrix::from_i64_rows(&[vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5]]),
        ];
        let q = Poly::monomial(&v.reg, &[(v.x[0], 1), (v.x[2], 1), (v.y[1], 1)], Cyclo::one());
        let p = Poly::monomial(&v.reg, &[(v.x[1], 1), (v.y[0], 1), (v.y[2], 1)], Cyclo::one())
            .add(&Poly::monomial(&v.reg, &[(v.x[0], 1), (v.y[0], 2)], Cyclo::from_i64(2)));
        // q in P_{b,a} = P_{1,2}: x-degree 2? q above has x-degree 2, y-degree 1;
        // p has x-degree 1, y-degree 2. Contraction demands opposite degrees.
        for g in gs {
            let lhs = pair_gl3_scalar(&v, a, b, &act_gl3(&v, &g, &q).unwrap(), &act_gl3(&v, &g, &p).unwrap())
                .unwrap();
            let rhs = pair_gl3_scalar(&v, a, b, &q, &p).unwrap();
            assert_eq!(lhs, rhs, "pairing not invariant under {:?}", g);
        }
    }

    #[test]
    fn harmonic_projection_basics() {
        let v = ArchVars::new();
        // already harmonic: x1^a y3^b
        let p = Poly::monomial(&v.reg, &[(v.x[0], 2), (v.y[2], 2)], Cyclo::one());
        let h = harmonic_project(&v, 2, 2, &p).unwrap();
        assert_eq!(h.harmonic, p);
        // the radial generator projects to zero at (1,1)
        let r = radial(&v);
        let h0 = harmonic_project(&v, 1, 1, &r).unwrap();
        assert!(h0.harmonic.is_zero());
        // random P: harmonic part is Delta-closed and P - Q divisible by r
        let p2 = Poly::monomial(&v.reg, &[(v.x[0], 1), (v.x[1], 1), (v.y[0], 1), (v.y[1], 1)], Cyclo::one())
            .add(&Poly::monomial(&v.reg, &[(v.x[2], 2), (v.y[2], 2)], Cyclo::from_i64(3)));
        let h2 = harmonic_project(&v, 2, 2, &p2).unwrap();
        assert!(laplacian(&v, &h2.harmonic).is_zero());
        let diff = p2.sub(&h2.harmonic);
        assert!(diff.try_exact_div(&radial(&v)).is_some());
    }

    #[test]
    fn harmonic_dimension_formula() {
        let v = ArchVars::new();
        for a in 0..=4u32 {
            for b in 0..=4u32 {
                let expect = ((a + b + 2) * (a + 1) * (b + 1) / 2) as usize;
                assert_eq!(harmonic_dimension(&v, a, b), expect, "dim H_{{{a},{b}}}");
            }
        }
    }
}
