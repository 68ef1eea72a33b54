use num_integer::Integer as _;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

use crate::arith::factor::factor;
use crate::arith::{int, ord, valuation, Integer, Rational};
use crate::curves::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::isogeny::{rational_kernels, velu_with_hints, Isogeny};

/// Differences `v_p(disc of the given model) - v_p(minimal disc)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinimalityDrops {
    pub e1_at_2: i64,
    pub e2_at_2: i64,
    pub e2_at_3: i64,
}

/// A member `E' <- E -> E''` of the family of curves with an 18-isogeny.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family18Member {
    pub m: Integer,
    pub n: Integer,
    /// `y^2 - m^3 xy = x^3 + (-2n^6 + n^3 m^3) x^2 + (n^12 - n^9 m^3) x`.
    pub e1_model: WeierstrassCurve,
    pub e2_model: WeierstrassCurve,
    pub e1: WeierstrassCurve,
    pub e: WeierstrassCurve,
    pub e2: WeierstrassCurve,
    /// `E -> E'`.
    pub phi1: Isogeny,
    /// `E -> E''`.
    pub phi2: Isogeny,
    pub is_14a_exception: bool,
    pub drops: MinimalityDrops,
    pub hints: Vec<u64>,
}

fn models(m: &Integer, n: &Integer) -> Result<(WeierstrassCurve, WeierstrassCurve)> {
    let q = |x: &Integer| Rational::from_integer(x.clone());
    let m3 = m * m * m;
    let n3 = n * n * n;
    let n6 = &n3 * &n3;
    let e1 = WeierstrassCurve::from_coeffs([
        q(&-&m3),
        q(&(-2 * &n6 + &n3 * &m3)),
        Rational::zero(),
        q(&(&n6 * &n6 - &n6 * &n3 * &m3)),
        Rational::zero(),
    ])?;
    let p = |b: &Integer, e: u32| num_traits::pow(b.clone(), e as usize);
    let a2 = -6 * p(m, 5) * n + 6 * p(m, 4) * p(n, 2) - 23 * &m3 * &n3 - 12 * p(m, 2) * p(n, 4)
        - 24 * m * p(n, 5)
        - 2 * &n6;
    let a4 = -(n * p(&(m - n), 9) * (m * m + m * n + n * n));
    let e2 = WeierstrassCurve::from_coeffs([q(&-&m3), q(&a2), Rational::zero(), q(&a4), Rational::zero()])?;
    Ok((e1, e2))
}

fn is_exception(m: &Integer, n: &Integer) -> bool {
    [(1, -1), (1, 2), (2, -1), (1, 4)].iter().any(|&(a, b)| {
        let (a, b) = (int(a), int(b));
        (n == &a && m == &b) || (n == &-&a && m == &-&b)
    })
}

fn family_hints(m: &Integer, n: &Integer) -> Result<Vec<u64>> {
    let mut h: BTreeSet<u64> = [2, 3].into();
    for x in [
        m.clone(),
        n.clone(),
        m - n,
        2 * n + m,
        n * n + n * m + m * m,
        4 * n * n - 2 * n * m + m * m,
    ] {
        if !x.is_zero() {
            h.extend(factor(&x)?.primes_u64()?);
        }
    }
    Ok(h.into_iter().collect())
}

fn find_kernel_to(src: &WeierstrassCurve, target: &WeierstrassCurve, hints: &[u64]) -> Result<Option<Isogeny>> {
    for k in rational_kernels(src, 3)? {
        let iso = velu_with_hints(src, &k, 3, hints)?;
        if iso.codomain() == target {
            return Ok(Some(iso));
        }
    }
    Ok(None)
}

pub fn family18(m: &Integer, n: &Integer) -> Result<Family18Member> {
    if !m.gcd(n).is_one() {
        return Err(Error::input(format!("{m} and {n} are not coprime")));
    }
    let (e1_model, e2_model) = models(m, n)?;
    let hints = family_hints(m, n)?;
    let (e1, _) = e1_model.minimal_model_with_hints(&hints)?;
    let (e2, _) = e2_model.minimal_model_with_hints(&hints)?;
    let mut middle = None;
    for k in rational_kernels(&e1, 3)? {
        let c = velu_with_hints(&e1, &k, 3, &hints)?.codomain().clone();
        if let Some(phi2) = find_kernel_to(&c, &e2, &hints)? {
            middle = Some((c, phi2));
            break;
        }
    }
    let (e, phi2) = middle.ok_or_else(|| Error::invariant("no 3-isogeny chain E' - E - E''"))?;
    let phi1 = find_kernel_to(&e, &e1, &hints)?
        .ok_or_else(|| Error::invariant("no 3-isogeny from E to E'"))?;
    let drop = |model: &WeierstrassCurve, min: &WeierstrassCurve, p| -> Result<i64> {
        Ok(valuation(&model.discriminant(), p)? - valuation(&min.discriminant(), p)?)
    };
    let drops = MinimalityDrops {
        e1_at_2: drop(&e1_model, &e1, 2)?,
        e2_at_2: drop(&e2_model, &e2, 2)?,
        e2_at_3: drop(&e2_model, &e2, 3)?,
    };
    Ok(Family18Member {
        is_14a_exception: is_exception(m, n),
        m: m.clone(),
        n: n.clone(),
        e1_model,
        e2_model,
        e1,
        e,
        e2,
        phi1,
        phi2,
        drops,
        hints,
    })
}

fn j_vals(member: &Family18Member, p: u64) -> (i64, i64, i64) {
    let v = |c: &WeierstrassCurve| ord(&c.j_invariant(), p).unwrap_or(i64::MAX);
    (v(&member.e), v(&member.e1), v(&member.e2))
}

/// Primes `p >= 5` of `(n^2+nm+m^2)(4n^2-2nm+m^2)`, checked to satisfy
/// `v(j) = 3v(j') = 3v(j'')`, and primes of the denominator of
/// `disc(E')/disc(E'')` (3 only above order 24), checked to satisfy
/// `9v(j') = 3v(j) = v(j'')`.
pub fn family18_special_primes(member: &Family18Member) -> Result<(Vec<u64>, Vec<u64>)> {
    if member.is_14a_exception {
        return Err(Error::input("member is a twist of a curve in class 14a"));
    }
    let (m, n) = (&member.m, &member.n);
    let forms = (n * n + n * m + m * m) * (4 * n * n - 2 * n * m + m * m);
    let mut case2 = vec![];
    for p in factor(&forms)?.primes_u64()? {
        if p < 5 {
            continue;
        }
        let (vj, vj1, vj2) = j_vals(member, p);
        if !(vj < 0 && vj == 3 * vj1 && vj1 == vj2) {
            return Err(Error::invariant(format!("prime {p} fails the equal-valuation pattern")));
        }
        case2.push(p);
    }
    let num = num_traits::pow(m.clone(), 8) * num_traits::pow(n.clone(), 16);
    let den: Integer = num_traits::pow(m - n, 16) * num_traits::pow(m + 2 * n, 8);
    let den = &den / den.gcd(&num);
    let mut case3 = vec![];
    for (p, e) in factor(&den)?.factors {
        let p = crate::arith::to_u64(&p)?;
        if p == 3 && e <= 24 {
            continue;
        }
        let (vj, vj1, vj2) = j_vals(member, p);
        if !(vj < 0 && 9 * vj1 == 3 * vj && 3 * vj == vj2) {
            return Err(Error::invariant(format!("prime {p} fails the 9:3:1 pattern")));
        }
        case3.push(p);
    }
    Ok((case2, case3))
}
