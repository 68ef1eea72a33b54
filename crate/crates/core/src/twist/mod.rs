//! Quadratic twist families: local square classes, per-class Selmer ratios,
//! generating polynomials, rank and Sha reports.

pub mod empirical;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::arith::density::DensityPolynomial;
use crate::arith::factor::factor;
use crate::arith::{is_qr, least_nonresidue, mod_u64, pow_rat, rat, valuation_int, Integer, Rational};
use crate::curves::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::isogeny::{local_exponent, velu_with_hints, Isogeny, Place};

/// A class in `Q_v^* / Q_v^*2`, named by its canonical integer representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    pub place: Place,
    pub rep: i64,
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.place {
            Place::Infinite => write!(f, "inf:{}", if self.rep > 0 { "+" } else { "-" }),
            Place::Prime(p) => write!(f, "{p}:{}", self.rep),
        }
    }
}

/// Canonical representatives: `±1` at infinity, `{1, u, p, up}` at odd p with
/// `u` the least non-residue, `{1, 3, 5, 7, 2, 6, 10, 14}` at 2.
pub fn class_representatives(place: Place) -> Vec<i64> {
    match place {
        Place::Infinite => vec![1, -1],
        Place::Prime(2) => vec![1, 3, 5, 7, 2, 6, 10, 14],
        Place::Prime(p) => {
            let u = least_nonresidue(p) as i64;
            let p = p as i64;
            vec![1, u, p, u * p]
        }
    }
}

/// Measure of the set of squarefree integers in a class, normalized per place.
pub fn class_measure(place: Place, rep: i64) -> Rational {
    match place {
        Place::Infinite => Rational::new(1.into(), 2.into()),
        Place::Prime(2) => {
            if rep % 2 == 0 {
                Rational::new(1.into(), 12.into())
            } else {
                Rational::new(1.into(), 6.into())
            }
        }
        Place::Prime(p) => {
            let den = BigInt::from(2 * p + 2);
            if rep % p as i64 == 0 {
                Rational::new(1.into(), den)
            } else {
                Rational::new(BigInt::from(p), den)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMeasure {
    pub place: Place,
    pub measures: BTreeMap<i64, Rational>,
}

pub fn class_measures(place: Place) -> ClassMeasure {
    ClassMeasure {
        place,
        measures: class_representatives(place)
            .into_iter()
            .map(|r| (r, class_measure(place, r)))
            .collect(),
    }
}

/// Canonical representative of the class of the nonzero integer `s` at `place`.
pub fn class_of(s: &Integer, place: Place) -> i64 {
    assert!(!s.is_zero());
    match place {
        Place::Infinite => {
            if s.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) => {
            let v = valuation_int(s, p);
            let unit = s / num_traits::pow(BigInt::from(p), v as usize);
            let base = if p == 2 {
                mod_u64(&unit, 8) as i64
            } else if is_qr(mod_u64(&unit, p), p) {
                1
            } else {
                least_nonresidue(p) as i64
            };
            if v % 2 == 1 {
                base * p as i64
            } else {
                base
            }
        }
    }
}

/// One pinned class per place, e.g. `"2:1,inf:+,5:1"`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Restriction(pub BTreeMap<Place, i64>);

impl Restriction {
    pub fn none() -> Self {
        Restriction::default()
    }

    pub fn get(&self, place: Place) -> Option<i64> {
        self.0.get(&place).copied()
    }

    pub fn contains(&self, s: &Integer) -> bool {
        self.0.iter().all(|(&v, &r)| class_of(s, v) == r)
    }
}

impl FromStr for Restriction {
    type Err = Error;
    fn from_str(spec: &str) -> Result<Self> {
        let mut out = BTreeMap::new();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (pl, rep) = item
                .split_once(':')
                .ok_or_else(|| Error::input(format!("restriction item {item:?} lacks ':'")))?;
            let place: Place = pl.parse()?;
            let rep: i64 = match (place, rep.trim()) {
                (Place::Infinite, "+" | "1" | "+1") => 1,
                (Place::Infinite, "-" | "-1") => -1,
                (_, r) => r
                    .parse()
                    .map_err(|_| Error::input(format!("bad class representative {r:?}")))?,
            };
            if !class_representatives(place).contains(&rep) {
                return Err(Error::input(format!(
                    "{rep} is not a canonical class representative at {place}"
                )));
            }
            if out.insert(place, rep).is_some() {
                return Err(Error::input(format!("place {place} restricted twice")));
            }
        }
        Ok(Restriction(out))
    }
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(&place, &rep)| SquareClass { place, rep }.to_string())
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The isogeny between the twists by `s`; `hints` may list primes of `s`.
pub fn twist_isogeny_with_hints(phi: &Isogeny, s: &Integer, hints: &[u64]) -> Result<Isogeny> {
    let mut h = phi.hints();
    h.extend_from_slice(hints);
    let (es, map) = phi.domain().twist_minimal(s, &h)?;
    let k = map.push_roots(phi.kernel());
    velu_with_hints(&es, &k, phi.degree(), &h)
}

/// Twists of several isogenies sharing a domain, minimizing the twisted
/// domain once.
pub fn twist_isogenies_with_hints(phis: &[Isogeny], s: &Integer, hints: &[u64]) -> Result<Vec<Isogeny>> {
    let Some(first) = phis.first() else { return Ok(vec![]) };
    let mut h = first.hints();
    for phi in &phis[1..] {
        if phi.domain() != first.domain() {
            return Err(Error::input("isogenies do not share a domain"));
        }
        h.extend(phi.hints());
    }
    h.extend_from_slice(hints);
    let (es, map) = first.domain().twist_minimal(s, &h)?;
    phis.iter()
        .map(|phi| crate::isogeny::velu_on_minimal(es.clone(), map.push_roots(phi.kernel()), phi.degree(), &h))
        .collect()
}

pub fn twist_isogeny(phi: &Isogeny, s: &Integer) -> Result<Isogeny> {
    if s.is_zero() || !crate::arith::is_squarefree(s)? {
        return Err(Error::input(format!("twist parameter {s} is not squarefree")));
    }
    let ps = factor(s)?.primes_u64()?;
    twist_isogeny_with_hints(phi, s, &ps)
}

/// Exponent `t_v(phi_s)` for each class representative `s` at `place`.
pub fn local_profile(phi: &Isogeny, place: Place) -> Result<BTreeMap<i64, i64>> {
    let mut out = BTreeMap::new();
    for rep in class_representatives(place) {
        let s = BigInt::from(rep);
        let ps = factor(&s)?.primes_u64()?;
        let ts = twist_isogeny_with_hints(phi, &s, &ps)?;
        out.insert(rep, local_exponent(&ts, place)?);
    }
    Ok(out)
}

fn place_classes(place: Place, restriction: &Restriction) -> Vec<(i64, Rational)> {
    match restriction.get(place) {
        Some(rep) => vec![(rep, Rational::one())],
        None => class_representatives(place)
            .into_iter()
            .map(|r| (r, class_measure(place, r)))
            .collect(),
    }
}

/// Joint density polynomial of several isogenies sharing a domain.
pub fn joint_polynomial(isogenies: &[&Isogeny], restriction: &Restriction) -> Result<DensityPolynomial> {
    let k = isogenies.len();
    if k == 0 {
        return Err(Error::input("no isogenies given"));
    }
    for phi in isogenies {
        if phi.degree() == 2 {
            return Err(Error::input("density polynomials need odd degree"));
        }
        if phi.domain() != isogenies[0].domain() {
            return Err(Error::input("isogenies do not share a domain"));
        }
    }
    let mut places: BTreeSet<Place> = BTreeSet::new();
    let relevant: Vec<BTreeSet<Place>> = isogenies
        .iter()
        .map(|phi| phi.relevant_places().into_iter().collect())
        .collect();
    for r in &relevant {
        places.extend(r.iter().copied());
    }
    let mut total = DensityPolynomial::one(k);
    for place in places {
        let classes = place_classes(place, restriction);
        let mut factor_poly = DensityPolynomial::zero(k);
        let profiles: Vec<Option<BTreeMap<i64, i64>>> = isogenies
            .iter()
            .zip(&relevant)
            .map(|(phi, rel)| {
                if rel.contains(&place) {
                    local_profile(phi, place).map(Some)
                } else {
                    Ok(None)
                }
            })
            .collect::<Result<_>>()?;
        for (rep, mu) in classes {
            let exps = profiles
                .iter()
                .map(|p| p.as_ref().map_or(0, |m| m[&rep]))
                .collect();
            factor_poly.add_term(exps, mu);
        }
        total = total.mul(&factor_poly);
    }
    Ok(total)
}

pub fn generating_polynomial(phi: &Isogeny) -> Result<DensityPolynomial> {
    joint_polynomial(&[phi], &Restriction::none())
}

pub fn joint_generating_polynomial(phi1: &Isogeny, phi2: &Isogeny) -> Result<DensityPolynomial> {
    joint_polynomial(&[phi1, phi2], &Restriction::none())
}

/// Density of `T_m` for each `m` in the support of an arity-one polynomial.
pub fn t_m_densities(poly: &DensityPolynomial) -> BTreeMap<i64, Rational> {
    poly.terms().iter().map(|(e, c)| (e[0], c.clone())).collect()
}

/// `max(0, 1 - 3^n / 2)`: lower bound for the proportion with trivial
/// Selmer group inside a class of average Selmer size `1 + 3^n`.
pub fn selmer_trivial_proportion(n: i64) -> Rational {
    let v = Rational::one() - pow_rat(&rat(3), n as i32) / rat(2);
    if v.is_negative() {
        Rational::zero()
    } else {
        v
    }
}

/// `k + 3^-k` for `k = |m|`.
pub fn average_rank_bound(m: i64) -> Rational {
    let k = m.abs();
    rat(k) + pow_rat(&rat(3), -(k as i32))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub average_rank_upper_bound: Rational,
    pub rank_zero_lower_bound: Rational,
}

/// Rank bounds from a density polynomial of 3-isogeny exponents (arity 1 or 2).
pub fn rank_report_from(poly: &DensityPolynomial) -> RankReport {
    let mut avg = Rational::zero();
    let mut zero = Rational::zero();
    for (e, d) in poly.terms() {
        let k = e.iter().map(|m| m.abs()).min().unwrap();
        avg += d * average_rank_bound(k);
        zero += d * selmer_trivial_proportion(k);
    }
    RankReport {
        average_rank_upper_bound: avg,
        rank_zero_lower_bound: zero,
    }
}

pub fn rank_report(phi: &Isogeny, phi2: Option<&Isogeny>) -> Result<RankReport> {
    rank_report_restricted(phi, phi2, &Restriction::none())
}

pub fn rank_report_restricted(
    phi: &Isogeny,
    phi2: Option<&Isogeny>,
    restriction: &Restriction,
) -> Result<RankReport> {
    let mut isos = vec![phi];
    isos.extend(phi2);
    if isos.iter().any(|p| p.degree() != 3) {
        return Err(Error::input("rank bounds need 3-isogenies"));
    }
    Ok(rank_report_from(&joint_polynomial(&isos, restriction)?))
}

/// Which curve a Sha statement is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShaTarget {
    /// Domain of the isogeny whose ratio is large.
    Domain,
    /// Codomain of the isogeny whose ratio is small.
    Codomain,
}

impl ShaTarget {
    pub fn as_str(self) -> &'static str {
        match self {
            ShaTarget::Domain => "domain",
            ShaTarget::Codomain => "codomain",
        }
    }
}

/// On a set of twists of density at least `density`, the twist of `curve`
/// has `|Sha[ell]| >= ell^min_order_exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShaStatement {
    pub target: ShaTarget,
    pub curve: WeierstrassCurve,
    pub ell: u32,
    pub min_order_exponent: i64,
    pub density: Rational,
}

fn independent(psi: &Isogeny, phi: &Isogeny) -> bool {
    psi.degree() != phi.degree() || psi.kernel() != phi.kernel()
}

pub fn sha_report(psi: &Isogeny, phi: &Isogeny) -> Result<Vec<ShaStatement>> {
    sha_report_restricted(psi, phi, &Restriction::none())
}

/// Sha lower bounds from the joint distribution of `(t(psi_s), t(phi_s))`.
pub fn sha_report_restricted(
    psi: &Isogeny,
    phi: &Isogeny,
    restriction: &Restriction,
) -> Result<Vec<ShaStatement>> {
    if psi.degree() == 2 || phi.degree() != 3 {
        return Err(Error::input("need psi of odd degree and phi of degree 3"));
    }
    if !independent(psi, phi) {
        return Err(Error::input("psi and phi have the same kernel"));
    }
    let joint = joint_polynomial(&[psi, phi], restriction)?;
    let mut agg: BTreeMap<(ShaTarget, i64), Rational> = BTreeMap::new();
    for (e, d) in joint.terms() {
        let (k, n) = (e[0], e[1]);
        if k.abs() <= n.abs() {
            continue;
        }
        let dens = d * selmer_trivial_proportion(n);
        if dens.is_zero() {
            continue;
        }
        let target = if k < 0 { ShaTarget::Codomain } else { ShaTarget::Domain };
        *agg.entry((target, k.abs() - n.abs())).or_insert_with(Rational::zero) += dens;
    }
    Ok(agg
        .into_iter()
        .map(|((target, exp), density)| ShaStatement {
            curve: match target {
                ShaTarget::Domain => psi.domain().clone(),
                ShaTarget::Codomain => psi.codomain().clone(),
            },
            target,
            ell: psi.degree(),
            min_order_exponent: exp,
            density,
        })
        .collect())
}

/// Local classes on which both 3-isogenies have trivial ratio (ratio set
/// `{1, 3}` at 3), one per finite relevant place.
pub fn trivializing_classes(phi1: &Isogeny, phi2: &Isogeny) -> Result<BTreeMap<Place, i64>> {
    if phi1.degree() != 3 || phi2.degree() != 3 || !independent(phi1, phi2) {
        return Err(Error::input("need two independent 3-isogenies"));
    }
    if phi1.domain() != phi2.domain() {
        return Err(Error::input("isogenies do not share a domain"));
    }
    let mut places: BTreeSet<Place> = phi1.relevant_places().into_iter().collect();
    places.extend(phi2.relevant_places());
    let mut out = BTreeMap::new();
    for place in places {
        let Place::Prime(p) = place else { continue };
        let a = local_profile(phi1, place)?;
        let b = local_profile(phi2, place)?;
        let hit = class_representatives(place).into_iter().find(|r| {
            let (x, y) = (a[r], b[r]);
            if p == 3 {
                (x.min(y), x.max(y)) == (0, 1)
            } else {
                x == 0 && y == 0
            }
        });
        match hit {
            Some(r) => {
                out.insert(place, r);
            }
            None => {
                return Err(Error::invariant(format!(
                    "no trivializing class at {place}"
                )))
            }
        }
    }
    Ok(out)
}

/// Per-isogeny summary within a twist report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyDensity {
    pub isogeny: Isogeny,
    pub polynomial: DensityPolynomial,
    pub t_m: BTreeMap<i64, Rational>,
    /// `ell^m` when the distribution is concentrated on one value of `m`.
    pub ratio_on_class: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistReport {
    pub restriction: Restriction,
    pub isogenies: Vec<IsogenyDensity>,
    pub joint: Option<DensityPolynomial>,
    pub rank: Option<RankReport>,
    pub sha: Vec<ShaStatement>,
}

/// Full report for one or two isogenies sharing a domain.
pub fn twist_report(isogenies: &[Isogeny], restriction: &Restriction) -> Result<TwistReport> {
    if isogenies.is_empty() || isogenies.len() > 2 {
        return Err(Error::input("twist reports take one or two isogenies"));
    }
    let refs: Vec<&Isogeny> = isogenies.iter().collect();
    let joint = joint_polynomial(&refs, restriction)?;
    let mut per = vec![];
    for (i, phi) in isogenies.iter().enumerate() {
        let poly = joint.marginal(i)?;
        let t_m = t_m_densities(&poly);
        let ratio_on_class = (t_m.len() == 1).then(|| {
            let m = *t_m.keys().next().unwrap();
            pow_rat(&rat(phi.degree() as i64), m as i32)
        });
        per.push(IsogenyDensity {
            isogeny: phi.clone(),
            polynomial: poly,
            t_m,
            ratio_on_class,
        });
    }
    let threes: Vec<usize> = (0..isogenies.len()).filter(|&i| isogenies[i].degree() == 3).collect();
    let rank = if threes.is_empty() {
        None
    } else if threes.len() == isogenies.len() {
        Some(rank_report_from(&joint))
    } else {
        Some(rank_report_from(&joint.marginal(threes[0])?))
    };
    let mut sha = vec![];
    if isogenies.len() == 2 {
        let (a, b) = (&isogenies[0], &isogenies[1]);
        if b.degree() == 3 && independent(a, b) {
            sha.extend(sha_report_restricted(a, b, restriction)?);
        }
        if a.degree() == 3 && independent(a, b) && b.degree() != 2 {
            sha.extend(sha_report_restricted(b, a, restriction)?);
        }
    }
    Ok(TwistReport {
        restriction: restriction.clone(),
        isogenies: per,
        joint: (isogenies.len() == 2).then_some(joint),
        rank,
        sha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};
    use crate::isogeny::rational_kernels;

    #[test]
    fn measures_sum_to_one() {
        for place in [Place::Infinite, Place::Prime(2), Place::Prime(3), Place::Prime(7), Place::Prime(13)] {
            let m = class_measures(place);
            let total: Rational = m.measures.values().sum();
            assert_eq!(total, rat(1), "{place}");
        }
        assert_eq!(class_representatives(Place::Prime(7)), vec![1, 3, 7, 21]);
        assert_eq!(class_measure(Place::Prime(7), 3), ratio(7, 16));
        assert_eq!(class_measure(Place::Prime(7), 21), ratio(1, 16));
    }

    #[test]
    fn class_lookup() {
        assert_eq!(class_of(&int(-5), Place::Infinite), -1);
        assert_eq!(class_of(&int(17), Place::Prime(2)), 1);
        assert_eq!(class_of(&int(-6), Place::Prime(2)), 10);
        assert_eq!(class_of(&int(6), Place::Prime(3)), 3 * 2);
        assert_eq!(class_of(&int(10), Place::Prime(7)), 3);
        for place in [Place::Prime(2), Place::Prime(5), Place::Prime(7), Place::Infinite] {
            for r in class_representatives(place) {
                assert_eq!(class_of(&int(r), place), r);
            }
        }
    }

    #[test]
    fn restriction_syntax() {
        let r: Restriction = "2:1,inf:+,5:1".parse().unwrap();
        assert_eq!(r.get(Place::Infinite), Some(1));
        assert_eq!(r.to_string(), "inf:+,2:1,5:1");
        assert!(r.contains(&int(41)));
        assert!(!r.contains(&int(-41)));
        assert!("2:4".parse::<Restriction>().is_err());
        assert!("2:1,2:3".parse::<Restriction>().is_err());
        assert!("x".parse::<Restriction>().is_err());
    }

    #[test]
    fn proportions() {
        assert_eq!(selmer_trivial_proportion(-1), ratio(5, 6));
        assert_eq!(selmer_trivial_proportion(0), ratio(1, 2));
        assert_eq!(selmer_trivial_proportion(1), rat(0));
        assert_eq!(average_rank_bound(-1), ratio(4, 3));
    }

    #[test]
    fn profile_14a1_infinity() {
        let e = WeierstrassCurve::from_ints([1, 0, 1, 4, -6]).unwrap();
        for k in rational_kernels(&e, 3).unwrap() {
            let phi = crate::isogeny::velu(&e, &k, 3).unwrap();
            let inf = local_profile(&phi, Place::Infinite).unwrap();
            let vals: BTreeSet<i64> = inf.values().copied().collect();
            assert!(vals == BTreeSet::from([0, -1]) || vals == BTreeSet::from([0]));
        }
    }
}
