//! Small helpers on arbitrary-precision rationals.

use num_bigint::BigInt;
use num_traits::Zero;

pub type Rational = num_rational::BigRational;

pub fn rat_i64(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// p-adic valuation of a nonzero integer.
fn int_valuation(mut n: BigInt, p: u64) -> i64 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut v = 0;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&n, &p);
        if r.is_zero() {
            n = q;
            v += 1;
        } else {
            return v;
        }
    }
}

/// Exact p-adic valuation; None encodes +infinity (x = 0).
pub fn valuation(x: &Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(int_valuation(x.numer().clone(), p) - int_valuation(x.denom().clone(), p))
}

/// x = unit * p^v; returns the unit part (p-adic unit rational).
pub fn unit_part(x: &Rational, p: u64) -> Rational {
    let v = valuation(x, p).expect("unit part of zero");
    x * power_rat(p, -v)
}

pub fn power_rat(p: u64, e: i64) -> Rational {
    let base = BigInt::from(p);
    if e >= 0 {
        Rational::from_integer(base.pow(e as u32))
    } else {
        Rational::new(1.into(), base.pow((-e) as u32))
    }
}

/// Reduce a p-integral rational to a residue in [0, p^k) modulo p^k.
pub fn residue_mod_pk(x: &Rational, p: u64, k: u32) -> u64 {
    let pk = BigInt::from(p).pow(k);
    let num = x.numer();
    let den = x.denom();
    assert!(
        valuation(&Rational::from_integer(den.clone()), p).map_or(true, |v| v == 0) || den.is_zero(),
        "residue of non p-integral rational"
    );
    let den_inv = mod_inverse(&num_integer::Integer::mod_floor(den, &pk), &pk)
        .expect("denominator invertible mod p^k");
    let r = num_integer::Integer::mod_floor(&(num * den_inv), &pk);
    let digits = r.to_u64_digits();
    if digits.1.is_empty() {
        0
    } else {
        digits.1[0]
    }
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = num_integer::Integer::extended_gcd(a, m);
    if e.gcd != BigInt::from(1) {
        return None;
    }
    Some(num_integer::Integer::mod_floor(&e.x, m))
}

pub fn mod_inverse_u64(a: u64, m: u64) -> Option<u64> {
    let r = mod_inverse(&BigInt::from(a), &BigInt::from(m))?;
    let d = r.to_u64_digits();
    Some(if d.1.is_empty() { 0 } else { d.1[0] })
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mm = m as u128;
    let mut bb = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % mm;
        }
        bb = bb * bb % mm;
        e >>= 1;
        b = 0;
    }
    let _ = b;
    acc as u64
}

/// Smallest generator of the cyclic group (Z/p^k)^x for odd prime p.
pub fn unit_group_generator(p: u64, k: u32) -> u64 {
    assert!(p % 2 == 1 && p > 2);
    let m = p.pow(k);
    let order = p.pow(k - 1) * (p - 1);
    let prime_factors = distinct_prime_factors(order);
    'outer: for g in 2..m {
        if g % p == 0 {
            continue;
        }
        for &q in &prime_factors {
            if pow_mod(g, order / q, m) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("cyclic group has a generator")
}

pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&rat(9, 2), 3), Some(2));
        assert_eq!(valuation(&rat(0, 1), 5), None);
        for l in 1..5 {
            assert_eq!(valuation(&power_rat(7, -l), 7), Some(-l));
        }
    }

    #[test]
    fn generator_of_units() {
        // (Z/9)^x is cyclic of order 6 generated by 2.
        assert_eq!(unit_group_generator(3, 2), 2);
        let g = unit_group_generator(5, 2);
        let mut seen = std::collections::HashSet::new();
        let mut x = 1u64;
        for _ in 0..20 {
            x = x * g % 25;
            seen.insert(x);
        }
        assert_eq!(seen.len(), 20);
    }

    #[test]
    fn residue_of_rational() {
        // 1/2 mod 9 = 5
        assert_eq!(residue_mod_pk(&rat(1, 2), 3, 2), 5);
    }
}
