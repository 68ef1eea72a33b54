//! Brute-force check of the predicted distribution over all squarefree
//! twists with `|s| <= N`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

use super::{class_of, joint_polynomial, twist_isogenies_with_hints, Restriction};
use crate::arith::density::DensityPolynomial;
use crate::arith::zassenhaus::rational_roots;
use crate::arith::{squarefree_part, Rational};
use crate::error::{Error, Result};
use crate::isogeny::{dual, global_selmer_ratio, Isogeny, Place};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalReport {
    pub bound: u64,
    /// Twists counted.
    pub total: u64,
    /// Twists skipped because a kernel point becomes rational.
    pub excluded: Vec<i64>,
    pub counts: BTreeMap<Vec<i64>, u64>,
    pub expected: DensityPolynomial,
    /// Largest `|count/total - expected|` over all exponent vectors.
    pub max_deviation: Rational,
    /// Local class vectors seen.
    pub buckets: usize,
    /// Class vectors on which the global exponents were not constant.
    pub locality_violations: usize,
}

impl EmpiricalReport {
    pub fn frequency(&self, exps: &[i64]) -> Rational {
        let c = self.counts.get(exps).copied().unwrap_or(0);
        Rational::new(c.into(), self.total.into())
    }

    pub fn max_deviation_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.max_deviation.to_f64().unwrap_or(f64::NAN)
    }
}

/// Twists `s` for which some kernel point of `phi` or its dual is rational
/// on `E_s`, i.e. `s` is the square class of `F(x0)` for a rational root `x0`.
pub fn torsion_exceptions(phi: &Isogeny) -> Result<BTreeSet<BigInt>> {
    let mut out = BTreeSet::new();
    let d = dual(phi)?;
    for iso in [phi, &d] {
        let f = iso.domain().two_division_cubic();
        for x0 in rational_roots(iso.kernel())? {
            let y2 = f.eval(&x0);
            if !y2.is_zero() {
                out.insert(squarefree_part(&y2)?);
            }
        }
    }
    Ok(out)
}

fn spf_sieve(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Prime factors of `n` if squarefree.
fn squarefree_primes(mut n: usize, spf: &[u32]) -> Option<Vec<u64>> {
    let mut ps = vec![];
    while n > 1 {
        let p = spf[n] as usize;
        n /= p;
        if n % p == 0 {
            return None;
        }
        ps.push(p as u64);
    }
    Some(ps)
}

type Partial = (BTreeMap<Vec<i64>, u64>, BTreeMap<Vec<i64>, BTreeSet<Vec<i64>>>);

/// Tabulate global Selmer exponents over squarefree `|s| <= bound` and
/// compare with the joint density polynomial.
pub fn empirical_verify(isogenies: &[Isogeny], bound: u64) -> Result<EmpiricalReport> {
    if isogenies.is_empty() {
        return Err(Error::input("no isogenies given"));
    }
    if bound == 0 || bound > 50_000_000 {
        return Err(Error::input("bound must be in 1..=50000000"));
    }
    let refs: Vec<&Isogeny> = isogenies.iter().collect();
    let expected = joint_polynomial(&refs, &Restriction::none())?;
    let mut places: BTreeSet<Place> = BTreeSet::new();
    let mut excluded_set: BTreeSet<BigInt> = BTreeSet::new();
    for phi in isogenies {
        places.extend(phi.relevant_places());
        excluded_set.extend(torsion_exceptions(phi)?);
    }
    let places: Vec<Place> = places.into_iter().collect();
    let spf = spf_sieve(bound as usize);

    let mut excluded = vec![];
    let mut candidates: Vec<(i64, Vec<u64>)> = vec![];
    for a in 1..=bound as usize {
        let Some(ps) = squarefree_primes(a, &spf) else { continue };
        for s in [a as i64, -(a as i64)] {
            if excluded_set.contains(&BigInt::from(s)) {
                excluded.push(s);
            } else {
                candidates.push((s, ps.clone()));
            }
        }
    }
    excluded.sort();

    let run = |(s, ps): &(i64, Vec<u64>)| -> Result<(Vec<i64>, Vec<i64>)> {
        let si = BigInt::from(*s);
        let key: Vec<i64> = places.iter().map(|&v| class_of(&si, v)).collect();
        let mut exps = Vec::with_capacity(isogenies.len());
        for t in twist_isogenies_with_hints(isogenies, &si, ps)? {
            exps.push(global_selmer_ratio(&t)?.exponent);
        }
        Ok((key, exps))
    };

    let partials: Vec<Partial> = candidates
        .par_chunks(512)
        .map(|chunk| -> Result<Partial> {
            let mut counts = BTreeMap::new();
            let mut buckets: BTreeMap<Vec<i64>, BTreeSet<Vec<i64>>> = BTreeMap::new();
            for c in chunk {
                let (key, exps) = run(c)?;
                *counts.entry(exps.clone()).or_insert(0) += 1;
                buckets.entry(key).or_default().insert(exps);
            }
            Ok((counts, buckets))
        })
        .collect::<Result<_>>()?;

    let mut counts: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    let mut buckets: BTreeMap<Vec<i64>, BTreeSet<Vec<i64>>> = BTreeMap::new();
    for (c, b) in partials {
        for (k, v) in c {
            *counts.entry(k).or_insert(0) += v;
        }
        for (k, v) in b {
            buckets.entry(k).or_default().extend(v);
        }
    }
    let total = candidates.len() as u64;
    let mut support: BTreeSet<Vec<i64>> = counts.keys().cloned().collect();
    support.extend(expected.support());
    let max_deviation = support
        .iter()
        .map(|e| {
            let f = Rational::new(counts.get(e).copied().unwrap_or(0).into(), total.max(1).into());
            (f - expected.coeff(e)).abs()
        })
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(EmpiricalReport {
        bound,
        total,
        excluded,
        counts,
        expected,
        max_deviation,
        buckets: buckets.len(),
        locality_violations: buckets.values().filter(|v| v.len() > 1).count(),
    })
}
