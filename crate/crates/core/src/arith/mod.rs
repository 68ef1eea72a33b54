//! Exact arithmetic: integers, rationals, valuations, square classes,
//! polynomials over Q and over prime fields, factorization.

pub mod density;
pub mod factor;
pub mod modp;
pub mod poly;
pub mod sturm;
pub mod zassenhaus;

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Integer {
    BigInt::from(n)
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from(n: &Integer) -> Rational {
    Rational::from_integer(n.clone())
}

/// Residue of `n` modulo `p` in `[0, p)`.
pub fn mod_u64(n: &Integer, p: u64) -> u64 {
    let r = (n % p).to_i128().expect("residue fits");
    r.rem_euclid(p as i128) as u64
}

/// Residue of a rational with denominator prime to `p`.
pub fn rat_mod(q: &Rational, p: u64) -> Option<u64> {
    let d = mod_u64(q.denom(), p);
    if d == 0 {
        return None;
    }
    let n = mod_u64(q.numer(), p);
    Some(mul_mod(n, inv_mod(d, p)?, p))
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut t, mut nt) = (0i128, 1i128);
    let (mut r, mut nr) = (p as i128, (a % p) as i128);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i128) as u64)
}

/// Whether `a` is a nonzero square modulo the odd prime `p`.
pub fn is_qr(a: u64, p: u64) -> bool {
    let a = a % p;
    a != 0 && pow_mod(a, (p - 1) / 2, p) == 1
}

/// Least positive quadratic non-residue modulo the odd prime `p`.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&a| !is_qr(a, p)).expect("odd prime has a non-residue")
}

/// Exponent of `p` in the nonzero integer `n`.
pub fn valuation_int(n: &Integer, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(q: &Rational, p: u64) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::input("valuation of zero"));
    }
    Ok(valuation_int(q.numer(), p) as i64 - valuation_int(q.denom(), p) as i64)
}

/// Valuation with `None` standing for +infinity.
pub fn ord(q: &Rational, p: u64) -> Option<i64> {
    valuation(q, p).ok()
}

pub fn is_square_int(n: &Integer) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

pub fn is_square(q: &Rational) -> bool {
    is_square_int(q.numer()) && is_square_int(q.denom())
}

/// Squarefree integer in the square class of a nonzero rational.
pub fn squarefree_part(q: &Rational) -> Result<Integer> {
    if q.is_zero() {
        return Err(Error::input("square class of zero"));
    }
    let f = factor::factor(&(q.numer() * q.denom()))?;
    let mut s = BigInt::from(f.sign);
    for (p, e) in &f.factors {
        if e % 2 == 1 {
            s *= p;
        }
    }
    Ok(s)
}

pub fn is_squarefree(n: &Integer) -> Result<bool> {
    Ok(factor::factor(n)?.factors.iter().all(|(_, e)| *e == 1))
}

/// "p/q" rendering, with integers shown without a denominator.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::input(format!("malformed rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::input("zero denominator"));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Primes up to `n` inclusive.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 2 {
        return vec![];
    }
    let mut comp = vec![false; n + 1];
    let mut out = vec![];
    for i in 2..=n {
        if !comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                comp[j] = true;
                j += i;
            }
        }
    }
    out
}

pub(crate) fn small_primes() -> &'static [u64] {
    static P: OnceLock<Vec<u64>> = OnceLock::new();
    P.get_or_init(|| primes_up_to(1_000_000))
}

pub(crate) fn sign_of(n: &Integer) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub(crate) fn sign_rat(q: &Rational) -> i32 {
    sign_of(q.numer())
}

pub(crate) fn to_u64(n: &Integer) -> Result<u64> {
    n.to_u64()
        .ok_or_else(|| Error::Unsupported(format!("prime {n} exceeds 64 bits")))
}

pub(crate) fn pow_rat(q: &Rational, e: i32) -> Rational {
    num_traits::pow::Pow::pow(q, e)
}
