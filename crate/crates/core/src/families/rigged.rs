use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith::factor::{factor_u64, is_prime_u64};
use crate::error::{Error, Result};

/// Number of distinct prime factors.
pub fn omega(n: u64) -> usize {
    if n <= 1 {
        return 0;
    }
    factor_u64(n).len()
}

fn omega_big(n: u128) -> Result<usize> {
    if n <= u64::MAX as u128 {
        return Ok(omega(n as u64));
    }
    Ok(crate::arith::factor::factor(&BigInt::from(n))?.factors.len())
}

fn crt(r1: u128, m1: u128, r2: u128, m2: u128) -> u128 {
    // m1, m2 coprime
    let mut x = r1;
    while x % m2 != r2 {
        x += m1;
    }
    x % (m1 * m2)
}

const SLACK: usize = 9;

/// Integers `2 <= u <= bound` with `omega(u - 1)` and `omega(u^2 + u + 1)`
/// in `m..=m + 9`, found by forcing `m - 1` primes into each factor.
pub fn search_rigged(m: usize, bound: u64) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::input("target must be at least 1"));
    }
    if bound > 100_000_000 {
        return Err(Error::input("bound must be at most 10^8"));
    }
    let qs: Vec<u64> = (7..).filter(|&q| q % 3 == 1 && is_prime_u64(q)).take(m - 1).collect();
    let ps: Vec<u64> = (2..).filter(|&p| p % 3 == 2 && is_prime_u64(p)).take(m - 1).collect();
    let mut residues: Vec<(u128, u128)> = vec![(0, 1)];
    for &p in &ps {
        residues = residues
            .into_iter()
            .map(|(r, md)| (crt(r, md, 1 % p as u128, p as u128), md * p as u128))
            .collect();
    }
    for &q in &qs {
        let roots: Vec<u128> = (0..q as u128).filter(|a| (a * a + a + 1) % q as u128 == 0).collect();
        residues = residues
            .into_iter()
            .flat_map(|(r, md)| roots.iter().map(move |&a| (crt(r, md, a, q as u128), md * q as u128)))
            .collect();
    }
    let modulus = residues[0].1;
    let mut cands: Vec<u64> = vec![];
    for &(r, _) in &residues {
        let mut u = r;
        while u < 2 {
            u += modulus;
        }
        while u <= bound as u128 {
            cands.push(u as u64);
            u += modulus;
        }
    }
    cands.sort_unstable();
    cands.dedup();
    let keep: Vec<Option<u64>> = cands
        .par_iter()
        .map(|&u| -> Result<Option<u64>> {
            let w1 = omega(u - 1);
            let uu = u as u128;
            let w2 = omega_big(uu * uu + uu + 1)?;
            let ok = (m..=m + SLACK).contains(&w1) && (m..=m + SLACK).contains(&w2);
            Ok(ok.then_some(u))
        })
        .collect::<Result<_>>()?;
    Ok(keep.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_hits() {
        let r = search_rigged(1, 50).unwrap();
        assert_eq!(r[0], 3);
        assert!(!r.contains(&2));
        let r3 = search_rigged(3, 200_000).unwrap();
        assert!(!r3.is_empty());
        for &u in &r3 {
            assert!(omega(u - 1) >= 3);
            let v = u * u + u + 1;
            assert!(omega(v) >= 3);
            for (p, _) in factor_u64(v) {
                assert!(p == 3 || p % 3 == 1, "u = {u}, p = {p}");
            }
        }
        assert!(r3.windows(2).all(|w| w[0] < w[1]));
    }
}
