//! Integer factorization: trial division below 10^6, then Pollard rho (Brent)
//! with Miller-Rabin for the remaining cofactors.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

use super::{small_primes, Integer};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    /// Primes strictly increasing, exponents at least one.
    pub factors: Vec<(Integer, u32)>,
}

impl Factorization {
    pub fn value(&self) -> Integer {
        let mut v = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            v *= num_traits::pow(p.clone(), *e as usize);
        }
        v
    }

    pub fn primes(&self) -> Vec<Integer> {
        self.factors.iter().map(|(p, _)| p.clone()).collect()
    }

    /// The primes as machine words; errors if one does not fit.
    pub fn primes_u64(&self) -> Result<Vec<u64>> {
        self.factors.iter().map(|(p, _)| super::to_u64(p)).collect()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        let p = BigInt::from(p);
        self.factors
            .iter()
            .find(|(q, _)| *q == p)
            .map_or(0, |(_, e)| *e)
    }
}

pub fn factor(n: &Integer) -> Result<Factorization> {
    factor_with_hints(n, &[])
}

/// Factor `n`, dividing out the `hints` first. Hints need not divide `n`.
pub fn factor_with_hints(n: &Integer, hints: &[u64]) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::input("cannot factor zero"));
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut acc: BTreeMap<Integer, u32> = BTreeMap::new();
    for &h in hints {
        if h < 2 {
            continue;
        }
        let hb = BigInt::from(h);
        loop {
            let (q, r) = m.div_rem(&hb);
            if !r.is_zero() {
                break;
            }
            m = q;
            *acc.entry(hb.clone()).or_default() += 1;
        }
    }
    if !m.is_one() {
        for (p, e) in factor_positive(&m) {
            *acc.entry(p).or_default() += e;
        }
    }
    Ok(Factorization {
        sign,
        factors: acc.into_iter().collect(),
    })
}

fn factor_positive(n: &Integer) -> Vec<(Integer, u32)> {
    let mut out: BTreeMap<Integer, u32> = BTreeMap::new();
    if let Some(v) = n.to_u64() {
        for (p, e) in factor_u64(v) {
            *out.entry(BigInt::from(p)).or_default() += e;
        }
        return out.into_iter().collect();
    }
    let mut m = n.clone();
    for &p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        if (&m % p).is_zero() {
            let mut e = 0;
            while (&m % p).is_zero() {
                m /= p;
                e += 1;
            }
            out.insert(pb, e);
            if let Some(v) = m.to_u64() {
                for (q, e) in factor_u64(v) {
                    *out.entry(BigInt::from(q)).or_default() += e;
                }
                return out.into_iter().collect();
            }
        }
    }
    let mut stack = vec![m];
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if let Some(v) = c.to_u64() {
            for (q, e) in factor_u64(v) {
                *out.entry(BigInt::from(q)).or_default() += e;
            }
        } else if is_prime(&c) {
            *out.entry(c).or_default() += 1;
        } else {
            let d = rho_big(&c);
            stack.push(&c / &d);
            stack.push(d);
        }
    }
    out.into_iter().collect()
}

pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: BTreeMap<u64, u32> = BTreeMap::new();
    for &p in small_primes() {
        if p * p > n {
            break;
        }
        while n % p == 0 {
            n /= p;
            *out.entry(p).or_default() += 1;
        }
    }
    let mut stack = vec![n];
    while let Some(c) = stack.pop() {
        if c == 1 {
            continue;
        }
        if is_prime_u64(c) {
            *out.entry(c).or_default() += 1;
        } else {
            let d = rho_u64(c);
            stack.push(c / d);
            stack.push(d);
        }
    }
    out.into_iter().collect()
}

fn mulm(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powm(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b, m);
        }
        b = mulm(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'base: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with the first twenty prime bases; deterministic below 3.3e24.
pub fn is_prime(n: &Integer) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if n.is_negative() {
        return false;
    }
    const BASES: [u64; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    for p in BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'base: for a in BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

fn rho_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mulm(x, x, n) + c) % n;
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..128.min(r - k) {
                    y = f(y);
                    q = mulm(q, x.abs_diff(y), n);
                }
                g = num_integer::gcd(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = num_integer::gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn rho_big(n: &Integer) -> Integer {
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut y, mut r, mut q, mut g) = (BigInt::from(2), 1u64, one.clone(), one.clone());
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..128.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}
