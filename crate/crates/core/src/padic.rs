//! Exact p-adic utilities on rational matrices: valuations, congruence
//! subgroup membership, big-cell Bruhat decomposition, and coset
//! transversals. All arithmetic is over arbitrary-precision rationals; the
//! prime only enters through valuation queries.

use num_traits::{One, Zero};

use crate::arith::{power_rat, rat_i64, valuation, Rational};
use crate::{Error, Result};

pub use crate::arith::valuation as rational_valuation;

/// Square matrix with exact rational entries.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    pub n: usize,
    entries: Vec<Rational>,
}

impl std::fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zero(n: usize) -> Self {
        RationalMatrix { n, entries: vec![Rational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n));
        RationalMatrix { n, entries: rows.iter().flatten().cloned().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            &rows.iter().map(|r| r.iter().map(|&x| rat_i64(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        )
    }

    /// Diagonal matrix with entries p^{e_i}.
    pub fn diag_p_powers(p: u64, exps: &[i64]) -> Self {
        let n = exps.len();
        let mut m = Self::zero(n);
        for i in 0..n {
            *m.at_mut(i, i) = power_rat(p, exps[i]);
        }
        m
    }

    pub fn diag(entries: &[Rational]) -> Self {
        let n = entries.len();
        let mut m = Self::zero(n);
        for i in 0..n {
            *m.at_mut(i, i) = entries[i].clone();
        }
        m
    }

    /// Longest Weyl element: ones on the antidiagonal.
    pub fn weyl_longest(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            *m.at_mut(i, n - 1 - i) = Rational::one();
        }
        m
    }

    /// D_{n,p} = diag(p^{n-1}, ..., p, 1).
    pub fn up_diagonal(n: usize, p: u64) -> Self {
        let exps: Vec<i64> = (0..n).map(|i| (n - 1 - i) as i64).collect();
        Self::diag_p_powers(p, &exps)
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = RationalMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> RationalMatrix {
        let n = self.n;
        let mut out = RationalMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.at(i, j).clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> RationalMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e *= c;
        }
        out
    }

    pub fn det(&self) -> Rational {
        // Fraction-free-ish Gaussian elimination on a copy.
        let n = self.n;
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.at(r, col).is_zero());
            let Some(pr) = pivot else {
                return Rational::zero();
            };
            if pr != col {
                for j in 0..n {
                    let a = m.at(pr, j).clone();
                    let b = m.at(col, j).clone();
                    m.set(pr, j, b);
                    m.set(col, j, a);
                }
                det = -det;
            }
            let p = m.at(col, col).clone();
            det *= &p;
            for r in col + 1..n {
                let f = m.at(r, col) / &p;
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = m.at(r, j) - &f * m.at(col, j);
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<RationalMatrix> {
        let n = self.n;
        let mut m = self.clone();
        let mut inv = RationalMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.at(r, col).is_zero());
            let Some(pr) = pivot else {
                return Err(Error::Config("singular matrix".into()));
            };
            if pr != col {
                for j in 0..n {
                    let a = m.at(pr, j).clone();
                    let b = m.at(col, j).clone();
                    m.set(pr, j, b);
                    m.set(col, j, a);
                    let a = inv.at(pr, j).clone();
                    let b = inv.at(col, j).clone();
                    inv.set(pr, j, b);
                    inv.set(col, j, a);
                }
            }
            let p = m.at(col, col).clone();
            for j in 0..n {
                let v = m.at(col, j) / &p;
                m.set(col, j, v);
                let v = inv.at(col, j) / &p;
                inv.set(col, j, v);
            }
            for r in 0..n {
                if r == col || m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).clone();
                for j in 0..n {
                    let v = m.at(r, j) - &f * m.at(col, j);
                    m.set(r, j, v);
                    let v = inv.at(r, j) - &f * inv.at(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }

    pub fn transpose_inverse(&self) -> Result<RationalMatrix> {
        Ok(self.inverse()?.transpose())
    }

    pub fn is_integral(&self, p: u64) -> bool {
        self.entries.iter().all(|e| valuation(e, p).map_or(true, |v| v >= 0))
    }

    /// In GL_n(Z_p): integral entries and unit determinant.
    pub fn is_unimodular(&self, p: u64) -> bool {
        self.is_integral(p) && valuation(&self.det(), p) == Some(0)
    }
}

/// Congruence-subgroup membership patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CongruencePattern {
    /// K0(p^k) in GL_n: unimodular with bottom-row entries g_{nj} in p^k for j < n.
    K0 { n: usize, k: u32 },
    /// K1(p^k): K0(p^k) with g_{nn} - 1 in p^k.
    K1 { n: usize, k: u32 },
    /// I0(p^l): unimodular with g_{ij} in p^{l(i-j)} below the diagonal.
    I0 { n: usize, l: u32 },
    /// I1(p^l): I0(p^l) with g_{ii} - 1 in p^l.
    I1 { n: usize, l: u32 },
    /// 2x2 lower-triangular slice of I1(p^l) (upper-right entry exactly 0).
    I1Minus { l: u32 },
    /// Integral upper-triangular unipotent.
    UpperUnipotent { n: usize },
    /// Integral lower-triangular unipotent.
    LowerUnipotent { n: usize },
}

impl CongruencePattern {
    pub fn size(&self) -> usize {
        match self {
            CongruencePattern::K0 { n, .. }
            | CongruencePattern::K1 { n, .. }
            | CongruencePattern::I0 { n, .. }
            | CongruencePattern::I1 { n, .. }
            | CongruencePattern::UpperUnipotent { n }
            | CongruencePattern::LowerUnipotent { n } => *n,
            CongruencePattern::I1Minus { .. } => 2,
        }
    }
}

fn val_at_least(x: &Rational, p: u64, k: i64) -> bool {
    valuation(x, p).map_or(true, |v| v >= k)
}

/// Exact membership test for the pattern.
pub fn in_pattern(g: &RationalMatrix, pattern: &CongruencePattern, p: u64) -> bool {
    if g.n != pattern.size() {
        return false;
    }
    let n = g.n;
    match pattern {
        CongruencePattern::K0 { k, .. } | CongruencePattern::K1 { k, .. } => {
            if !g.is_unimodular(p) {
                return false;
            }
            for j in 0..n - 1 {
                if !val_at_least(g.at(n - 1, j), p, *k as i64) {
                    return false;
                }
            }
            if let CongruencePattern::K1 { k, .. } = pattern {
                if !val_at_least(&(g.at(n - 1, n - 1) - Rational::one()), p, *k as i64) {
                    return false;
                }
            }
            true
        }
        CongruencePattern::I0 { l, .. } | CongruencePattern::I1 { l, .. } => {
            if !g.is_unimodular(p) {
                return false;
            }
            for i in 0..n {
                for j in 0..i {
                    if !val_at_least(g.at(i, j), p, (*l as i64) * (i as i64 - j as i64)) {
                        return false;
                    }
                }
            }
            if let CongruencePattern::I1 { l, .. } = pattern {
                for i in 0..n {
                    if !val_at_least(&(g.at(i, i) - Rational::one()), p, *l as i64) {
                        return false;
                    }
                }
            }
            true
        }
        CongruencePattern::I1Minus { l } => {
            g.at(0, 1).is_zero()
                && in_pattern(g, &CongruencePattern::I1 { n: 2, l: *l }, p)
        }
        CongruencePattern::UpperUnipotent { .. } => {
            for i in 0..n {
                for j in 0..n {
                    let e = g.at(i, j);
                    match i.cmp(&j) {
                        std::cmp::Ordering::Less => {
                            if !val_at_least(e, p, 0) {
                                return false;
                            }
                        }
                        std::cmp::Ordering::Equal => {
                            if !e.is_one() {
                                return false;
                            }
                        }
                        std::cmp::Ordering::Greater => {
                            if !e.is_zero() {
                                return false;
                            }
                        }
                    }
                }
            }
            true
        }
        CongruencePattern::LowerUnipotent { .. } => {
            in_pattern(&g.transpose(), &CongruencePattern::UpperUnipotent { n }, p)
        }
    }
}

/// Result of the big-cell decomposition g = t * u * w_n * v.
#[derive(Clone, Debug)]
pub struct BruhatBigCell {
    pub t: Vec<Rational>,
    pub u: RationalMatrix,
    pub v: RationalMatrix,
}

/// Big Bruhat cell decomposition: g = t*u*w_n*v with t diagonal and u, v
/// unit upper-triangular unipotent; `None` when g lies outside the cell.
pub fn bruhat_decompose(g: &RationalMatrix) -> Result<Option<BruhatBigCell>> {
    let n = g.n;
    if g.det().is_zero() {
        return Err(Error::Config("singular matrix in bruhat_decompose".into()));
    }
    // g = U * w * v with U upper-triangular iff M := w*g admits M = L*v
    // (L lower-triangular, v unit upper-triangular), the Crout LU form,
    // which exists iff the leading principal minors of M are nonzero.
    let w = RationalMatrix::weyl_longest(n);
    let m = w.mul(g);
    let mut l = RationalMatrix::zero(n);
    let mut v = RationalMatrix::identity(n);
    // Crout: column by column.
    let mut work = m.clone();
    for k in 0..n {
        // L column k
        for i in k..n {
            l.set(i, k, work.at(i, k).clone());
        }
        if l.at(k, k).is_zero() {
            return Ok(None);
        }
        // v row k
        for j in k + 1..n {
            let val = work.at(k, j) / l.at(k, k);
            v.set(k, j, val);
        }
        // eliminate
        for i in k + 1..n {
            for j in k + 1..n {
                let sub = l.at(i, k) * v.at(k, j);
                let val = work.at(i, j) - sub;
                work.set(i, j, val);
            }
        }
    }
    // g = w^{-1} L v_with w_n: U = w * L * w  (upper-triangular), g = U w v.
    let u_full = w.mul(&l).mul(&w);
    let mut t = Vec::with_capacity(n);
    for i in 0..n {
        t.push(u_full.at(i, i).clone());
    }
    let mut u = RationalMatrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            u.set(i, j, u_full.at(i, j) / &t[i]);
        }
    }
    Ok(Some(BruhatBigCell { t, u, v }))
}

impl BruhatBigCell {
    pub fn recompose(&self) -> RationalMatrix {
        let n = self.t.len();
        let tm = RationalMatrix::diag(&self.t);
        tm.mul(&self.u).mul(&RationalMatrix::weyl_longest(n)).mul(&self.v)
    }
}

/// Coset transversal families.
#[derive(Clone, Debug)]
pub enum CosetFamily {
    /// Lower-unipotent transversal of K0-type level raising: entries
    /// (i,j), i>j given by p^{l(i-j)} * v_ij with v_ij mod p^{i-j}.
    SigmaLower { n: usize, l: u32 },
    /// Transversal of the Iwahori subgroup in GL_n(Z_p).
    IwahoriCells { n: usize },
    /// Transversal of K0(p^k) in GL_2(Z_p) (projective line over Z/p^k).
    K0Quotient { k: u32 },
    /// U_p summation set: integral upper unipotents with u_ij mod p^{j-i}.
    UpTransversal { n: usize },
}

pub const DEFAULT_ENUM_CAP: usize = 1_000_000;

/// Exact, duplicate-free transversal for the family.
pub fn coset_reps(family: &CosetFamily, p: u64, cap: usize) -> Result<Vec<RationalMatrix>> {
    let reps = match family {
        CosetFamily::SigmaLower { n, l } => {
            let coords: Vec<(usize, usize)> =
                (0..*n).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
            let sizes: Vec<u64> = coords.iter().map(|(i, j)| p.pow((i - j) as u32)).collect();
            let total: usize = sizes.iter().map(|&s| s as usize).product();
            check_cap(total, cap)?;
            let mut out = Vec::with_capacity(total);
            let mut idx = vec![0u64; coords.len()];
            loop {
                let mut m = RationalMatrix::identity(*n);
                for (c, (i, j)) in coords.iter().enumerate() {
                    let scale = power_rat(p, (*l as i64) * (*i as i64 - *j as i64));
                    m.set(*i, *j, scale * rat_i64(idx[c] as i64));
                }
                out.push(m);
                if !advance(&mut idx, &sizes) {
                    break;
                }
            }
            out
        }
        CosetFamily::UpTransversal { n } => {
            let coords: Vec<(usize, usize)> =
                (0..*n).flat_map(|i| (i + 1..*n).map(move |j| (i, j))).collect();
            let sizes: Vec<u64> = coords.iter().map(|(i, j)| p.pow((j - i) as u32)).collect();
            let total: usize = sizes.iter().map(|&s| s as usize).product();
            check_cap(total, cap)?;
            let mut out = Vec::with_capacity(total);
            let mut idx = vec![0u64; coords.len()];
            loop {
                let mut m = RationalMatrix::identity(*n);
                for (c, (i, j)) in coords.iter().enumerate() {
                    m.set(*i, *j, rat_i64(idx[c] as i64));
                }
                out.push(m);
                if !advance(&mut idx, &sizes) {
                    break;
                }
            }
            out
        }
        CosetFamily::IwahoriCells { n } => {
            // Bruhat cells of GL_n(F_p)/B: w runs over permutations, the cell
            // contributes u*w with u in N cap w N^- w^{-1} over F_p residues.
            let mut out = Vec::new();
            for perm in permutations(*n) {
                let mut wm = RationalMatrix::zero(*n);
                for (i, &pi) in perm.iter().enumerate() {
                    wm.set(i, pi, Rational::one());
                }
                // positions (i,j), i<j with perm(i) > perm(j): inversions
                let inv_pos: Vec<(usize, usize)> = (0..*n)
                    .flat_map(|i| (i + 1..*n).map(move |j| (i, j)))
                    .filter(|(i, j)| perm[*i] > perm[*j])
                    .collect();
                let sizes: Vec<u64> = vec![p; inv_pos.len()];
                let total: usize = sizes.iter().map(|&s| s as usize).product();
                check_cap(out.len() + total, cap)?;
                let mut idx = vec![0u64; inv_pos.len()];
                loop {
                    let mut u = RationalMatrix::identity(*n);
                    for (c, (i, j)) in inv_pos.iter().enumerate() {
                        u.set(*i, *j, rat_i64(idx[c] as i64));
                    }
                    out.push(u.mul(&wm));
                    if !advance(&mut idx, &sizes) {
                        break;
                    }
                }
            }
            out
        }
        CosetFamily::K0Quotient { k } => {
            // P^1(Z/p^k): [c : 1] for c mod p^k and [1 : p*d] for d mod p^{k-1}.
            let pk = p.pow(*k) as usize;
            let pk1 = p.pow(*k - 1) as usize;
            check_cap(pk + pk1, cap)?;
            let mut out = Vec::with_capacity(pk + pk1);
            for c in 0..pk {
                out.push(RationalMatrix::from_i64_rows(&[vec![1, 0], vec![c as i64, 1]]));
            }
            for d in 0..pk1 {
                out.push(RationalMatrix::from_i64_rows(&[
                    vec![p as i64 * d as i64, 1],
                    vec![-1, 0],
                ]));
            }
            out
        }
    };
    Ok(reps)
}

fn check_cap(total: usize, cap: usize) -> Result<()> {
    if total > cap {
        Err(Error::Resource(cap))
    } else {
        Ok(())
    }
}

fn advance(idx: &mut [u64], sizes: &[u64]) -> bool {
    for i in 0..idx.len() {
        idx[i] += 1;
        if idx[i] < sizes[i] {
            return true;
        }
        idx[i] = 0;
    }
    false
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut v = rest.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

/// All the families here represent left cosets r*H, so distinctness is
/// r_j^{-1} * r_i failing the membership predicate for i != j.
pub fn verify_transversal(
    reps: &[RationalMatrix],
    member: impl Fn(&RationalMatrix) -> bool,
) -> bool {
    for (i, a) in reps.iter().enumerate() {
        for (j, b) in reps.iter().enumerate() {
            if i == j {
                continue;
            }
            let q = match b.inverse() {
                Ok(binv) => binv.mul(a),
                Err(_) => return false,
            };
            if member(&q) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn bruhat_of_weyl_is_trivial() {
        let w = RationalMatrix::weyl_longest(3);
        let d = bruhat_decompose(&w).unwrap().unwrap();
        assert!(d.t.iter().all(|t| t.is_one()));
        assert_eq!(d.u, RationalMatrix::identity(3));
        assert_eq!(d.v, RationalMatrix::identity(3));
    }

    #[test]
    fn bruhat_recovers_unipotent() {
        let w = RationalMatrix::weyl_longest(3);
        let mut v = RationalMatrix::identity(3);
        v.set(0, 1, rat(2, 1));
        v.set(1, 2, rat(-3, 1));
        v.set(0, 2, rat(5, 1));
        let g = w.mul(&v);
        let d = bruhat_decompose(&g).unwrap().unwrap();
        assert!(d.t.iter().all(|t| t.is_one()));
        assert_eq!(d.u, RationalMatrix::identity(3));
        assert_eq!(d.v, v);
        assert_eq!(d.recompose(), g);
    }

    #[test]
    fn bruhat_of_zeta_test_matrix() {
        // t_l for l = 1, p = 3 lies in the big cell; round trip must be exact.
        let p = 3i64;
        let l = 1u32;
        let pl = p.pow(l);
        let g = RationalMatrix::from_rows(&[
            vec![rat(0, 1), rat(0, 1), rat(-1, pl)],
            vec![rat(0, 1), rat(pl, 1), rat(1, 1)],
            vec![rat(pl * pl, 1), rat(pl, 1), rat(0, 1)],
        ]);
        let d = bruhat_decompose(&g).unwrap().unwrap();
        assert_eq!(d.recompose(), g);
        // The factorization w*diag(p^{2l}, p^l, -p^{-l})*v reads here as
        // t = (-p^{-l}, p^l, p^{2l}) after moving the Weyl element right.
        let vals: Vec<i64> = d.t.iter().map(|t| valuation(t, 3).unwrap()).collect();
        assert_eq!(vals, vec![-(l as i64), l as i64, 2 * l as i64]);
    }

    #[test]
    fn pattern_examples() {
        let p = 3;
        assert!(in_pattern(&RationalMatrix::identity(2), &CongruencePattern::I1 { n: 2, l: 2 }, p));
        let d = RationalMatrix::from_rows(&[vec![rat(4, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]]);
        assert!(in_pattern(&d, &CongruencePattern::I1 { n: 2, l: 1 }, p));
        assert!(!in_pattern(&d, &CongruencePattern::I1 { n: 2, l: 2 }, p));
        // [[1,0],[p^l b, 1]] with unit b lies in I1minus(p^l)
        let m = RationalMatrix::from_rows(&[vec![rat(1, 1), rat(0, 1)], vec![rat(6, 1), rat(1, 1)]]);
        assert!(in_pattern(&m, &CongruencePattern::I1Minus { l: 1 }, p));
        assert!(!in_pattern(&m, &CongruencePattern::I1Minus { l: 2 }, p));
    }

    #[test]
    fn pattern_inclusions() {
        // I1(p^l) subset I0(p^l) subset GL_n(Z_p) on sampled matrices.
        let p = 3;
        for l in 1..3u32 {
            for reps in coset_reps(&CosetFamily::SigmaLower { n: 3, l }, p, 100_000).unwrap() {
                if in_pattern(&reps, &CongruencePattern::I1 { n: 3, l }, p) {
                    assert!(in_pattern(&reps, &CongruencePattern::I0 { n: 3, l }, p));
                }
                if in_pattern(&reps, &CongruencePattern::I0 { n: 3, l }, p) {
                    assert!(reps.is_unimodular(p));
                }
            }
        }
    }

    #[test]
    fn sigma_lower_cardinalities() {
        let p = 3;
        let s2 = coset_reps(&CosetFamily::SigmaLower { n: 2, l: 1 }, p, 100_000).unwrap();
        assert_eq!(s2.len(), 3);
        // entries v_ij mod p^{i-j} give p * p^2 * p = p^4 for n = 3
        let s3 = coset_reps(&CosetFamily::SigmaLower { n: 3, l: 1 }, p, 100_000).unwrap();
        assert_eq!(s3.len(), 81);
    }

    #[test]
    fn k0_quotient_cardinality_and_transversality() {
        let p = 3;
        let reps = coset_reps(&CosetFamily::K0Quotient { k: 1 }, p, 100_000).unwrap();
        assert_eq!(reps.len(), 4);
        assert!(verify_transversal(&reps, |g| {
            in_pattern(g, &CongruencePattern::K0 { n: 2, k: 1 }, p)
        }));
        let reps2 = coset_reps(&CosetFamily::K0Quotient { k: 2 }, p, 100_000).unwrap();
        assert_eq!(reps2.len(), 12);
        assert!(verify_transversal(&reps2, |g| {
            in_pattern(g, &CongruencePattern::K0 { n: 2, k: 2 }, p)
        }));
    }

    #[test]
    fn iwahori_cells_count() {
        let p = 3;
        let reps = coset_reps(&CosetFamily::IwahoriCells { n: 2 }, p, 100_000).unwrap();
        assert_eq!(reps.len(), 4);
        assert!(verify_transversal(&reps, |g| {
            in_pattern(g, &CongruencePattern::I0 { n: 2, l: 1 }, p)
        }));
        let reps3 = coset_reps(&CosetFamily::IwahoriCells { n: 3 }, p, 100_000).unwrap();
        assert_eq!(reps3.len(), 52);
    }

    #[test]
    fn enumeration_cap() {
        assert!(matches!(
            coset_reps(&CosetFamily::SigmaLower { n: 3, l: 1 }, 101, 1000),
            Err(Error::Resource(_))
        ));
    }
}
