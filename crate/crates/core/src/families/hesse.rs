use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::arith::poly::Poly;
use crate::arith::zassenhaus::rational_roots;
use crate::arith::{ord, pow_rat, rat, ratio, squarefree_part, valuation_int, Integer, Rational};
use crate::curves::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::isogeny::{rational_kernels, velu_with_hints, Isogeny};
use crate::local::{tate, PotentialKind, ReductionKind};

/// The curve `v(x^3 + y^3 + z^3) = 3uxyz` with its two 3-isogenies, labelled
/// by the codomain j-invariants: `phi1` reaches `hesse_j_prime` (its kernel
/// is the copy of `mu_3`), `phi2` reaches `hesse_j_second` (its kernel is the
/// rational 3-torsion).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HesseCurve {
    pub u: Integer,
    pub v: Integer,
    pub curve: WeierstrassCurve,
    pub phi1: Isogeny,
    pub phi2: Isogeny,
}

fn r(n: &Integer) -> Rational {
    Rational::from_integer(n.clone())
}

pub fn hesse_j(u: &Integer, v: &Integer) -> Result<Rational> {
    let (u, v) = (r(u), r(v));
    let q = &u * &u + &u * &v + &v * &v;
    let num = rat(27)
        * pow_rat(&u, 3)
        * pow_rat(&(&u + rat(2) * &v), 3)
        * pow_rat(&(&u * &u - rat(2) * &u * &v + rat(4) * &v * &v), 3);
    let den = pow_rat(&v, 3) * pow_rat(&(&u - &v), 3) * pow_rat(&q, 3);
    if den.is_zero() {
        return Err(Error::input("degenerate Hesse parameters"));
    }
    Ok(num / den)
}

pub fn hesse_j_prime(u: &Integer, v: &Integer) -> Result<Rational> {
    let (u, v) = (r(u), r(v));
    let q = &u * &u + &u * &v + &v * &v;
    let num = rat(27) * pow_rat(&u, 3) * pow_rat(&(rat(9) * pow_rat(&u, 3) - rat(8) * pow_rat(&v, 3)), 3);
    let den = pow_rat(&v, 9) * (&u - &v) * q;
    if den.is_zero() {
        return Err(Error::input("degenerate Hesse parameters"));
    }
    Ok(num / den)
}

pub fn hesse_j_second(u: &Integer, v: &Integer) -> Result<Rational> {
    let (u, v) = (r(u), r(v));
    let q = &u * &u + &u * &v + &v * &v;
    let cub = pow_rat(&u, 3) + rat(78) * &u * &u * &v + rat(84) * &u * &v * &v + rat(80) * pow_rat(&v, 3);
    let num = rat(3) * pow_rat(&(&u + rat(2) * &v), 3) * pow_rat(&cub, 3);
    let den = &v * pow_rat(&(&u - &v), 9) * q;
    if den.is_zero() {
        return Err(Error::input("degenerate Hesse parameters"));
    }
    Ok(num / den)
}

/// Weierstrass model of the Hesse cubic, sending the flex `(1:-1:0)` to infinity.
fn hesse_weierstrass(u: &Integer, v: &Integer) -> Result<WeierstrassCurve> {
    // with s = x + y, d = x - y and the flex tangent T = s + kz set to 1,
    // the cubic becomes 3d^2 = 3kz(1 - kz)^2 - (1 - kz)^3 - 4z^3
    let k = Rational::new(u.clone(), v.clone());
    let z = Poly::x();
    let l = &Poly::one() - &z.scale(&k);
    let g = &(&(&z * &(&l * &l)).scale(&(rat(3) * &k)) - &l.pow(3)) - &z.pow(3).scale(&rat(4));
    let g = g.scale(&ratio(1, 3));
    let c3 = g.coeff(3);
    if c3.is_zero() {
        return Err(Error::input("degenerate Hesse parameters"));
    }
    // Y = c3 d, X = c3 z
    WeierstrassCurve::from_coeffs([
        Rational::zero(),
        g.coeff(2),
        Rational::zero(),
        g.coeff(1) * &c3,
        g.coeff(0) * &c3 * &c3,
    ])
}

/// Square class of the field of definition of a 3-kernel point `x0`.
fn kernel_class(e: &WeierstrassCurve, kernel: &Poly) -> Result<Integer> {
    let roots = rational_roots(kernel)?;
    let x0 = roots
        .first()
        .ok_or_else(|| Error::input("kernel has no rational root"))?;
    squarefree_part(&e.two_division_cubic().eval(x0))
}

/// The two independent 3-isogenies of `e`, ordered so that the first has
/// kernel field unramified at 3.
pub fn three_isogeny_pair(e: &WeierstrassCurve, hints: &[u64]) -> Result<(Isogeny, Isogeny)> {
    let (e, _) = e.minimal_model_with_hints(hints)?;
    let ks = rational_kernels(&e, 3)?;
    if ks.len() != 2 {
        return Err(Error::input(format!(
            "expected two rational 3-kernels, found {}",
            ks.len()
        )));
    }
    let mut tagged = vec![];
    for k in ks {
        let s = kernel_class(&e, &k)?;
        let ram = valuation_int(&s, 3) % 2 == 1;
        tagged.push((ram, velu_with_hints(&e, &k, 3, hints)?));
    }
    if tagged[0].0 == tagged[1].0 {
        return Err(Error::invariant("3-kernel fields are not distinguished at 3"));
    }
    tagged.sort_by_key(|t| t.0);
    let b = tagged.pop().unwrap().1;
    let a = tagged.pop().unwrap().1;
    Ok((a, b))
}

fn hesse_hints(u: &Integer, v: &Integer) -> Result<Vec<u64>> {
    let mut h = vec![2, 3];
    let q = u * u + u * v + v * v;
    let w = u * u - 2 * u * v + 4 * v * v;
    for n in [u.clone(), v.clone(), u - v, u + 2 * v, q, w] {
        if !n.is_zero() {
            h.extend(crate::arith::factor::factor(&n)?.primes_u64()?);
        }
    }
    h.sort();
    h.dedup();
    Ok(h)
}

pub fn hesse(u: &Integer, v: &Integer) -> Result<HesseCurve> {
    if !u.gcd(v).is_one() {
        return Err(Error::input(format!("{u} and {v} are not coprime")));
    }
    if v.is_zero() || u == v {
        return Err(Error::input("degenerate Hesse parameters"));
    }
    let hints = hesse_hints(u, v)?;
    let raw = hesse_weierstrass(u, v)?;
    let (curve, _) = raw.minimal_model_with_hints(&hints)?;
    let j = hesse_j(u, v)?;
    if curve.j_invariant() != j {
        return Err(Error::invariant("Hesse model j-invariant mismatch"));
    }
    let (j1, j2) = (hesse_j_prime(u, v)?, hesse_j_second(u, v)?);
    let mut phi1 = None;
    let mut phi2 = None;
    for k in rational_kernels(&curve, 3)? {
        let s = kernel_class(&curve, &k)?;
        let iso = velu_with_hints(&curve, &k, 3, &hints)?;
        let jc = iso.codomain().j_invariant();
        if s == BigInt::from(-3) && jc == j1 && phi1.is_none() {
            phi1 = Some(iso);
        } else if s.is_one() && jc == j2 && phi2.is_none() {
            phi2 = Some(iso);
        }
    }
    match (phi1, phi2) {
        (Some(phi1), Some(phi2)) => Ok(HesseCurve {
            u: u.clone(),
            v: v.clone(),
            curve,
            phi1,
            phi2,
        }),
        _ => Err(Error::invariant("Hesse isogenies do not match the j-formulas")),
    }
}

/// Valuation pattern of `(v(j), v(j'), v(j''))` at a multiplicative prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JPattern {
    /// `v(j) = 3v(j')`, `3v(j) = v(j'')`.
    P1,
    /// `v(j) = 3v(j')`, `v(j) = 3v(j'')`.
    P2,
    /// `3v(j) = v(j')`, `v(j) = 3v(j'')`.
    P3,
}

pub fn j_pattern(vj: i64, vj1: i64, vj2: i64) -> Option<JPattern> {
    if vj == 3 * vj1 && 3 * vj == vj2 {
        Some(JPattern::P1)
    } else if vj == 3 * vj1 && vj == 3 * vj2 {
        Some(JPattern::P2)
    } else if 3 * vj == vj1 && vj == 3 * vj2 {
        Some(JPattern::P3)
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultPrimeClassification {
    pub s0: Integer,
    pub patterns: BTreeMap<u64, JPattern>,
    /// Whether the twist by `s0` is split multiplicative at each prime.
    pub split: BTreeMap<u64, bool>,
    pub omega1_sp: usize,
    pub omega2_sp: usize,
}

impl MultPrimeClassification {
    pub fn primes(&self, pattern: JPattern) -> Vec<u64> {
        self.patterns
            .iter()
            .filter(|(_, &q)| q == pattern)
            .map(|(&p, _)| p)
            .collect()
    }
}

/// Sort the potentially multiplicative primes of the common domain into the
/// three valuation patterns and count split primes on the twist by `s0`.
pub fn classify_mult_primes(phi1: &Isogeny, phi2: &Isogeny, s0: &Integer) -> Result<MultPrimeClassification> {
    if phi1.domain() != phi2.domain() || phi1.degree() != 3 || phi2.degree() != 3 {
        return Err(Error::input("need two 3-isogenies with a common domain"));
    }
    if s0.is_zero() || !crate::arith::is_squarefree(s0)? {
        return Err(Error::input(format!("twist parameter {s0} is not squarefree")));
    }
    let e = phi1.domain();
    let j = e.j_invariant();
    let mut hints = phi1.hints();
    hints.extend(crate::arith::factor::factor(s0)?.primes_u64()?);
    let (es, _) = e.twist_minimal(s0, &hints)?;
    let mut patterns = BTreeMap::new();
    let mut split = BTreeMap::new();
    for &p in phi1.bad_primes() {
        let Some(vj) = ord(&j, p).filter(|v| *v < 0) else { continue };
        let vj1 = ord(&phi1.codomain().j_invariant(), p).unwrap_or(i64::MAX);
        let vj2 = ord(&phi2.codomain().j_invariant(), p).unwrap_or(i64::MAX);
        let pat = j_pattern(vj, vj1, vj2).ok_or_else(|| {
            Error::invariant(format!("j-valuations ({vj}, {vj1}, {vj2}) at {p} fit no pattern"))
        })?;
        patterns.insert(p, pat);
        let ld = tate(&es, p)?;
        debug_assert_eq!(ld.potential_kind, PotentialKind::Multiplicative);
        split.insert(p, ld.kind == ReductionKind::SplitMultiplicative);
    }
    let count = |pat| {
        patterns
            .iter()
            .filter(|(p, &q)| q == pat && split[*p])
            .count()
    };
    Ok(MultPrimeClassification {
        s0: s0.clone(),
        omega1_sp: count(JPattern::P1),
        omega2_sp: count(JPattern::P2),
        patterns,
        split,
    })
}

/// `max(0, min(2 w1, 2 w2 - 1))`; rejects `s0` split at a third-pattern prime.
pub fn theorem44_bound(c: &MultPrimeClassification) -> Result<i64> {
    if c.patterns
        .iter()
        .any(|(p, &q)| q == JPattern::P3 && c.split[p])
    {
        return Err(Error::input("s0 is split at a third-pattern prime"));
    }
    let b = (2 * c.omega1_sp as i64).min(2 * c.omega2_sp as i64 - 1);
    Ok(b.max(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn formulas_agree_with_model() {
        for (u, v) in [(2, 1), (3, 1), (-1, 2), (5, -3), (0, 1), (1, -1)] {
            let h = hesse(&int(u), &int(v)).unwrap();
            assert_eq!(h.curve.j_invariant(), hesse_j(&int(u), &int(v)).unwrap());
            assert_eq!(h.phi1.codomain().j_invariant(), hesse_j_prime(&int(u), &int(v)).unwrap());
            assert_eq!(h.phi2.codomain().j_invariant(), hesse_j_second(&int(u), &int(v)).unwrap());
        }
        assert!(hesse(&int(1), &int(1)).is_err());
        assert!(hesse(&int(2), &int(4)).is_err());
        assert!(hesse(&int(3), &int(0)).is_err());
    }

    #[test]
    fn unramified_rule_picks_rational_kernel() {
        let h = hesse(&int(3), &int(1)).unwrap();
        let (a, b) = three_isogeny_pair(&h.curve, &[2, 3, 13]).unwrap();
        assert_eq!(a, h.phi2);
        assert_eq!(b, h.phi1);
    }

    #[test]
    fn v_equal_one_partition() {
        for u in [3i64, 4, 7, 10, -5] {
            let h = hesse(&int(u), &int(1)).unwrap();
            let c = classify_mult_primes(&h.phi1, &h.phi2, &int(1)).unwrap();
            // away from 3, where the factor 27 in j can cancel the pole
            let primes = |n: i64| -> Vec<u64> {
                let ps = crate::arith::factor::factor(&int(n)).unwrap().primes_u64().unwrap();
                ps.into_iter().filter(|&p| p != 3).collect()
            };
            let got = |pat| -> Vec<u64> { c.primes(pat).into_iter().filter(|&p| p != 3).collect() };
            assert_eq!(got(JPattern::P1), primes(u - 1), "u = {u}");
            assert_eq!(got(JPattern::P2), primes(u * u + u + 1), "u = {u}");
            assert!(c.primes(JPattern::P3).is_empty());
        }
    }

    #[test]
    fn pattern_of_14a1_at_2() {
        let e = WeierstrassCurve::from_ints([1, 0, 1, 4, -6]).unwrap();
        let (a, b) = three_isogeny_pair(&e, &[2, 3, 7]).unwrap();
        assert_eq!(ord(&a.codomain().j_invariant(), 2), Some(-18));
        assert_eq!(ord(&b.codomain().j_invariant(), 2), Some(-2));
        assert_eq!(classify_mult_primes(&a, &b, &int(1)).unwrap().patterns[&2], JPattern::P3);
        // with the Hesse j-formula labelling the roles swap
        assert_eq!(classify_mult_primes(&b, &a, &int(1)).unwrap().patterns[&2], JPattern::P1);
    }

    #[test]
    fn bound_arithmetic() {
        let mk = |w1, w2| MultPrimeClassification {
            s0: int(1),
            patterns: BTreeMap::new(),
            split: BTreeMap::new(),
            omega1_sp: w1,
            omega2_sp: w2,
        };
        assert_eq!(theorem44_bound(&mk(0, 0)).unwrap(), 0);
        assert_eq!(theorem44_bound(&mk(2, 2)).unwrap(), 3);
        assert_eq!(theorem44_bound(&mk(1, 5)).unwrap(), 2);
    }
}
