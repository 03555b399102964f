//! Multivariate Laurent polynomials over cyclotomic coefficients, tied to a
//! shared symbol registry. Terms are kept in a BTreeMap keyed by exponent
//! vector, so the representation (and its text form) is canonical.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::cyclo::Cyclo;
use crate::arith::Rational;
use crate::Error;

/// Shared set of symbol names. Symbol 0 is always `Q`, the formal square
/// root of q: the registry identity is Q^2 = q, and all q-powers are stored
/// as Q-exponents.
#[derive(Debug)]
pub struct RegistryInner {
    names: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct SymbolRegistry(Arc<RegistryInner>);

pub type SymbolId = usize;

pub const Q_SYMBOL: SymbolId = 0;

impl SymbolRegistry {
    /// Registry with `Q` plus the given extra symbols.
    pub fn new(extra: &[&str]) -> Self {
        let mut names = vec!["Q".to_string()];
        for n in extra {
            assert!(*n != "Q" && *n != "q", "Q/q are reserved");
            assert!(!names.iter().any(|x| x == n), "duplicate symbol {n}");
            names.push((*n).to_string());
        }
        SymbolRegistry(Arc::new(RegistryInner { names }))
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn id(&self, name: &str) -> SymbolId {
        if name == "q" {
            return Q_SYMBOL;
        }
        self.0
            .names
            .iter()
            .position(|n| n == name)
            .unwrap_or_else(|| panic!("unknown symbol {name}"))
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.0.names[id]
    }

    pub fn same(&self, other: &SymbolRegistry) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn check_same(&self, other: &SymbolRegistry) -> Result<(), Error> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::Config("mismatched symbol registries".into()))
        }
    }
}

/// Exponent vector, one entry per registry symbol (Laurent: i32).
pub type Expo = Vec<i32>;

#[derive(Clone)]
pub struct Poly {
    pub reg: SymbolRegistry,
    pub terms: BTreeMap<Expo, Cyclo>,
}

impl Poly {
    pub fn zero(reg: &SymbolRegistry) -> Self {
        Poly { reg: reg.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(reg: &SymbolRegistry, c: Cyclo) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; reg.len()], c);
        }
        Poly { reg: reg.clone(), terms }
    }

    pub fn one(reg: &SymbolRegistry) -> Self {
        Self::constant(reg, Cyclo::one())
    }

    pub fn monomial(reg: &SymbolRegistry, exps: &[(SymbolId, i32)], c: Cyclo) -> Self {
        let mut e = vec![0; reg.len()];
        for (id, k) in exps {
            e[*id] += k;
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly { reg: reg.clone(), terms }
    }

    pub fn symbol(reg: &SymbolRegistry, id: SymbolId) -> Self {
        Self::monomial(reg, &[(id, 1)], Cyclo::one())
    }

    /// q = Q^2.
    pub fn q_pow(reg: &SymbolRegistry, k: i32) -> Self {
        Self::monomial(reg, &[(Q_SYMBOL, 2 * k)], Cyclo::one())
    }

    pub fn q_half_pow(reg: &SymbolRegistry, half_exponent: i32) -> Self {
        Self::monomial(reg, &[(Q_SYMBOL, half_exponent)], Cyclo::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Cyclo> {
        if self.terms.is_empty() {
            Some(Cyclo::zero())
        } else if self.is_constant() {
            Some(self.terms.values().next().unwrap().clone())
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_term(&mut self, e: Expo, c: Cyclo) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert!(self.reg.same(&other.reg));
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert!(self.reg.same(&other.reg));
        let mut out = Poly::zero(&self.reg);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Expo = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.insert_term(e, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Cyclo) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.reg);
        }
        let mut out = Poly::zero(&self.reg);
        for (e, x) in &self.terms {
            out.insert_term(e.clone(), x.mul(c));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.reg);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Coefficient-wise complex conjugation together with inversion of the
    /// listed symbols (the registry involution used for unitarity).
    pub fn involute(&self, inverted: &[SymbolId]) -> Poly {
        let mut out = Poly::zero(&self.reg);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            for id in inverted {
                e2[*id] = -e2[*id];
            }
            out.insert_term(e2, c.conj());
        }
        out
    }

    /// Leading term under the BTreeMap (lex) order.
    pub fn leading(&self) -> Option<(&Expo, &Cyclo)> {
        self.terms.iter().next_back()
    }

    /// Extract the per-symbol minimum exponents (monomial content shift),
    /// returning (shift, shifted poly with all exponents >= 0).
    pub fn strip_monomial_content(&self) -> (Expo, Poly) {
        if self.terms.is_empty() {
            return (vec![0; self.reg.len()], self.clone());
        }
        let n = self.reg.len();
        let mut mins = vec![i32::MAX; n];
        for e in self.terms.keys() {
            for i in 0..n {
                mins[i] = mins[i].min(e[i]);
            }
        }
        let mut out = Poly::zero(&self.reg);
        for (e, c) in &self.terms {
            let e2: Expo = e.iter().zip(mins.iter()).map(|(a, m)| a - m).collect();
            out.terms.insert(e2, c.clone());
        }
        (mins, out)
    }

    /// Exact-divisibility test; returns the quotient when `self = q * div`.
    pub fn try_exact_div(&self, div: &Poly) -> Option<Poly> {
        assert!(self.reg.same(&div.reg));
        if div.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero(&self.reg));
        }
        let (sa, a) = self.strip_monomial_content();
        let (sb, b) = div.strip_monomial_content();
        let mut rem = a;
        let mut quot = Poly::zero(&self.reg);
        let (eb, cb) = {
            let (e, c) = b.leading().unwrap();
            (e.clone(), c.clone())
        };
        let cb_inv = cb.inverse().ok()?;
        while !rem.is_zero() {
            let (ea, ca) = {
                let (e, c) = rem.leading().unwrap();
                (e.clone(), c.clone())
            };
            let diff: Expo = ea.iter().zip(eb.iter()).map(|(x, y)| x - y).collect();
            if diff.iter().any(|&d| d < 0) {
                return None;
            }
            let coef = ca.mul(&cb_inv);
            let t = Poly::monomial(&self.reg, &id_pairs(&diff), coef);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(&b));
        }
        // reapply the monomial shift difference
        let shift: Expo = sa.iter().zip(sb.iter()).map(|(x, y)| x - y).collect();
        Some(quot.mul(&Poly::monomial(&self.reg, &id_pairs(&shift), Cyclo::one())))
    }

    /// Formal partial derivative with respect to a symbol (polynomial
    /// exponents only).
    pub fn derivative(&self, id: SymbolId) -> Poly {
        let mut out = Poly::zero(&self.reg);
        for (e, c) in &self.terms {
            let k = e[id];
            if k == 0 {
                continue;
            }
            assert!(k > 0, "derivative of Laurent exponent");
            let mut e2 = e.clone();
            e2[id] -= 1;
            out.insert_term(e2, c.scale(&Rational::from_integer(k.into())));
        }
        out
    }

    /// Substitute each listed symbol by a polynomial (exponents of the
    /// substituted symbols must be non-negative).
    pub fn substitute_poly(&self, subs: &[(SymbolId, Poly)]) -> Poly {
        let mut out = Poly::zero(&self.reg);
        'terms: for (e, c) in &self.terms {
            let mut term = Poly::constant(&self.reg, c.clone());
            let mut rest = e.clone();
            for (id, rep) in subs {
                let k = e[*id];
                rest[*id] = 0;
                if k != 0 {
                    assert!(k >= 0, "polynomial substitution into Laurent exponent");
                    term = term.mul(&rep.pow(k as u32));
                    if term.is_zero() {
                        continue 'terms;
                    }
                }
            }
            let shift = Poly { reg: self.reg.clone(), terms: [(rest, Cyclo::one())].into_iter().collect() };
            out = out.add(&term.mul(&shift));
        }
        out
    }

    /// Evaluate symbols at cyclotomic values (all listed symbols must cover
    /// every symbol occurring in the poly; values of symbols with negative
    /// exponents must be nonzero).
    pub fn eval_cyclo(&self, values: &[Option<Cyclo>]) -> Result<Cyclo, Error> {
        let mut acc = Cyclo::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (id, k) in e.iter().enumerate() {
                if *k != 0 {
                    let v = values[id]
                        .as_ref()
                        .ok_or_else(|| Error::Config(format!("symbol {} not assigned", self.reg.name(id))))?;
                    t = t.mul(&v.pow(*k as i64)?);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Canonical text form: terms in map order, exponents by symbol name.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut piece = String::new();
            let coef = c.render();
            piece.push('(');
            piece.push_str(&coef);
            piece.push(')');
            for (id, k) in e.iter().enumerate() {
                if *k != 0 {
                    piece.push('*');
                    piece.push_str(self.reg.name(id));
                    if *k != 1 {
                        piece.push('^');
                        piece.push_str(&k.to_string());
                    }
                }
            }
            parts.push(piece);
        }
        parts.join(" + ")
    }
}

pub fn id_pairs(e: &Expo) -> Vec<(SymbolId, i32)> {
    e.iter().enumerate().filter(|(_, k)| **k != 0).map(|(i, k)| (i, *k)).collect()
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.reg.same(&other.reg) && self.terms == other.terms
    }
}

impl Eq for Poly {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division_of_difference_of_squares() {
        let reg = SymbolRegistry::new(&["x"]);
        let x = Poly::symbol(&reg, reg.id("x"));
        let one = Poly::one(&reg);
        let num = x.mul(&x).sub(&one);
        let den = x.sub(&one);
        let q = num.try_exact_div(&den).unwrap();
        assert_eq!(q, x.add(&one));
        assert!(num.try_exact_div(&x.add(&Poly::constant(&reg, Cyclo::from_i64(2)))).is_none());
    }

    #[test]
    fn derivative_product_rule_spot() {
        let reg = SymbolRegistry::new(&["x", "y"]);
        let x = Poly::symbol(&reg, reg.id("x"));
        let y = Poly::symbol(&reg, reg.id("y"));
        let f = x.mul(&x).mul(&y);
        let fx = f.derivative(reg.id("x"));
        assert_eq!(fx, x.mul(&y).scale(&Cyclo::from_i64(2)));
    }
}
