//! Isogenies of prime degree 2, 3, 5, 7: division polynomials, rational
//! kernels, Velu's formulas, duals and local/global Selmer ratios.

use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::arith::poly::Poly;
use crate::arith::sturm::all_roots_real_with_positive;
use crate::arith::zassenhaus::{factor_poly_small, rational_roots};
use crate::arith::{ord, pow_rat, rat, valuation, Rational};
use crate::curves::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::local::{tate, PotentialKind, ReductionKind};

pub const SUPPORTED_DEGREES: [u32; 4] = [2, 3, 5, 7];

/// A place of Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinite,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" || s == "oo" {
            return Ok(Place::Infinite);
        }
        let p: u64 = s
            .parse()
            .map_err(|_| Error::input(format!("bad place {s:?}")))?;
        if !crate::arith::factor::is_prime_u64(p) {
            return Err(Error::input(format!("{p} is not prime")));
        }
        Ok(Place::Prime(p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isogeny {
    domain: WeierstrassCurve,
    codomain: WeierstrassCurve,
    degree: u32,
    kernel: Poly,
    scaling: Rational,
    bad_primes: Vec<u64>,
}

/// Global ratio `c = base^exponent` with its per-place exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelmerRatio {
    pub base: u32,
    pub exponent: i64,
    pub local: BTreeMap<Place, i64>,
}

impl SelmerRatio {
    pub fn value(&self) -> Rational {
        pow_rat(&rat(self.base as i64), self.exponent as i32)
    }
}

impl Isogeny {
    /// Global minimal model of the domain.
    pub fn domain(&self) -> &WeierstrassCurve {
        &self.domain
    }
    /// Global minimal model of the codomain.
    pub fn codomain(&self) -> &WeierstrassCurve {
        &self.codomain
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    /// Monic kernel polynomial in the coordinates of `domain()`.
    pub fn kernel(&self) -> &Poly {
        &self.kernel
    }
    /// `lambda` with pullback of the codomain differential equal to
    /// `lambda` times the domain differential.
    pub fn scaling(&self) -> &Rational {
        &self.scaling
    }
    /// Primes of bad reduction, shared by domain and codomain.
    pub fn bad_primes(&self) -> &[u64] {
        &self.bad_primes
    }

    /// Places where the local ratio can be nontrivial: infinity and `p | l * disc`.
    pub fn relevant_places(&self) -> Vec<Place> {
        let mut ps: BTreeSet<u64> = self.bad_primes.iter().copied().collect();
        ps.insert(self.degree as u64);
        std::iter::once(Place::Infinite)
            .chain(ps.into_iter().map(Place::Prime))
            .collect()
    }

    pub(crate) fn hints(&self) -> Vec<u64> {
        let mut h = self.bad_primes.clone();
        h.extend([2, 3, self.degree as u64]);
        h.sort();
        h.dedup();
        h
    }

    /// Rational function `N/D` giving the x-coordinate map into `codomain()`.
    pub fn x_map(&self) -> (Poly, Poly) {
        let e = &self.domain;
        let h = &self.kernel;
        let (n, d) = if self.degree == 2 {
            let x0 = -h.coeff(0);
            let t = velu_sums_two(e, &x0).0;
            (&(&Poly::x() * h) + &Poly::constant(t), h.clone())
        } else {
            let ell = rat(self.degree as i64);
            let sigma = -h.coeff(h.degree().unwrap() - 1);
            let f = e.two_division_cubic();
            let half_fp = f.derivative().scale(&Rational::new(1.into(), 2.into()));
            let (h1, h2) = (h.derivative(), h.derivative().derivative());
            let lin = Poly::new(vec![-rat(2) * sigma, ell]);
            let n = &(&(&lin * &(h * h)) - &(&f * &(&(&h2 * h) - &(&h1 * &h1))))
                - &(&half_fp * &(&h1 * h));
            (n, h * h)
        };
        // into the minimal model of the codomain
        let raw = self.raw_codomain_transform();
        let m = raw.x_map();
        (
            &n.scale(&m.scale) + &d.scale(&m.shift),
            d,
        )
    }

    fn raw_codomain_transform(&self) -> crate::curves::IsoTransform {
        let raw = velu_codomain(&self.domain, &self.kernel, self.degree).expect("validated kernel");
        raw.transform_to(&self.codomain, &self.scaling)
            .expect("stored codomain is reachable")
    }
}

fn f_table(e: &WeierstrassCurve, n: usize) -> Vec<Poly> {
    let (b2, b4, b6, b8) = (e.b2(), e.b4(), e.b6(), e.b8());
    let big_f = e.two_division_cubic();
    let f2sq = &big_f * &big_f;
    let mut f: Vec<Poly> = vec![Poly::zero(), Poly::one(), Poly::one()];
    f.push(Poly::new(vec![
        b8.clone(),
        rat(3) * &b6,
        rat(3) * &b4,
        b2.clone(),
        rat(3),
    ]));
    f.push(Poly::new(vec![
        &b4 * &b8 - &b6 * &b6,
        &b2 * &b8 - &b4 * &b6,
        rat(10) * &b8,
        rat(10) * &b6,
        rat(5) * &b4,
        b2.clone(),
        rat(2),
    ]));
    for k in 5..=n {
        let m = k / 2;
        let next = if k % 2 == 1 {
            let a = &f[m + 2] * &f[m].pow(3);
            let b = &f[m - 1] * &f[m + 1].pow(3);
            if m % 2 == 0 {
                &(&f2sq * &a) - &b
            } else {
                &a - &(&f2sq * &b)
            }
        } else {
            let inner = &(&f[m + 2] * &f[m - 1].pow(2)) - &(&f[m - 2] * &f[m + 1].pow(2));
            &f[m] * &inner
        };
        f.push(next);
    }
    f
}

fn check_degree(ell: u32) -> Result<()> {
    if SUPPORTED_DEGREES.contains(&ell) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("isogeny degree {ell}")))
    }
}

/// The l-division polynomial; for l = 2 the cubic `4x^3 + b2 x^2 + 2 b4 x + b6`.
pub fn division_polynomial(e: &WeierstrassCurve, ell: u32) -> Result<Poly> {
    check_degree(ell)?;
    if ell == 2 {
        return Ok(e.two_division_cubic());
    }
    Ok(f_table(e, ell as usize).swap_remove(ell as usize))
}

/// `D^d h(N/D) mod h` vanishes, with `x(2P) = N/D`.
fn closed_under_doubling(e: &WeierstrassCurve, h: &Poly) -> bool {
    let n = Poly::new(vec![-e.b8(), rat(-2) * e.b6(), -e.b4(), rat(0), rat(1)]).rem(h);
    let d = e.two_division_cubic().rem(h);
    if d.gcd(h).deg() > 0 {
        return false;
    }
    let deg = h.degree().unwrap();
    let mut acc = Poly::zero();
    let mut npow = vec![Poly::one()];
    for i in 1..=deg {
        npow.push((&npow[i - 1] * &n).rem(h));
    }
    let mut dpow = vec![Poly::one()];
    for i in 1..=deg {
        dpow.push((&dpow[i - 1] * &d).rem(h));
    }
    for (i, c) in h.coeffs().iter().enumerate() {
        acc = &acc + &(&npow[i] * &dpow[deg - i]).scale(c);
    }
    acc.rem(h).is_zero()
}

/// Kernel polynomials of all rational cyclic subgroups of order `ell`.
pub fn rational_kernels(e: &WeierstrassCurve, ell: u32) -> Result<Vec<Poly>> {
    check_degree(ell)?;
    let psi = division_polynomial(e, ell)?;
    if ell <= 3 {
        let mut roots = rational_roots(&psi)?;
        roots.dedup();
        return Ok(roots.iter().map(Poly::linear_root).collect());
    }
    let d = ((ell - 1) / 2) as usize;
    let mut pieces: Vec<Poly> = vec![];
    for t in 1..=d {
        pieces.extend(factor_poly_small(&psi, t)?);
    }
    let mut out = vec![];
    let n = pieces.len();
    for mask in 1u32..(1 << n) {
        let sel: Vec<&Poly> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &pieces[i]).collect();
        if sel.iter().map(|p| p.degree().unwrap()).sum::<usize>() != d {
            continue;
        }
        let h = sel.iter().fold(Poly::one(), |acc, p| &acc * *p);
        if closed_under_doubling(e, &h) {
            out.push(h);
        }
    }
    out.sort_by_key(|p| p.to_string());
    Ok(out)
}

fn velu_sums_two(e: &WeierstrassCurve, x0: &Rational) -> (Rational, Rational) {
    let half = Rational::new(1.into(), 2.into());
    let t = rat(3) * x0 * x0 + &half * e.b2() * x0 + &half * e.b4();
    let w = x0 * &t;
    (t, w)
}

/// Velu codomain in the coordinates of `e`, with normalized differential.
fn velu_codomain(e: &WeierstrassCurve, h: &Poly, ell: u32) -> Result<WeierstrassCurve> {
    let (t, w) = if ell == 2 {
        velu_sums_two(e, &-h.coeff(0))
    } else {
        let d = h.degree().unwrap();
        let c = |k: usize| if k <= d { h.coeff(d - k) } else { Rational::zero() };
        let s1 = -c(1);
        let s2 = c(2);
        let s3 = -c(3);
        let n = rat(d as i64);
        let p1 = s1.clone();
        let p2 = &s1 * &s1 - rat(2) * &s2;
        let p3 = &s1 * &s1 * &s1 - rat(3) * &s1 * &s2 + rat(3) * &s3;
        let t = rat(6) * &p2 + e.b2() * &p1 + &n * e.b4();
        let w = rat(10) * &p3 + rat(2) * e.b2() * &p2 + rat(3) * e.b4() * &p1 + &n * e.b6();
        (t, w)
    };
    let [a1, a2, a3, a4, a6] = e.coeffs().clone();
    WeierstrassCurve::new(
        a1,
        a2,
        a3,
        a4 - rat(5) * &t,
        a6 - e.b2() * &t - rat(7) * &w,
    )
}

fn validate_kernel(e: &WeierstrassCurve, h: &Poly, ell: u32) -> Result<()> {
    check_degree(ell)?;
    let want = if ell == 2 { 1 } else { ((ell - 1) / 2) as usize };
    if !h.is_monic() || h.degree() != Some(want) {
        return Err(Error::input(format!(
            "kernel polynomial must be monic of degree {want}"
        )));
    }
    if !h.divides(&division_polynomial(e, ell)?) {
        return Err(Error::input("kernel polynomial does not divide the division polynomial"));
    }
    if ell >= 5 && !closed_under_doubling(e, h) {
        return Err(Error::input("kernel polynomial does not define a subgroup"));
    }
    Ok(())
}

/// Isogeny with the given kernel; both ends are returned as global minimal
/// models and the kernel is moved into the minimal domain coordinates.
pub fn velu(e: &WeierstrassCurve, kernel: &Poly, ell: u32) -> Result<Isogeny> {
    velu_with_hints(e, kernel, ell, &[])
}

pub fn velu_with_hints(e: &WeierstrassCurve, kernel: &Poly, ell: u32, hints: &[u64]) -> Result<Isogeny> {
    validate_kernel(e, kernel, ell)?;
    let mut hints: Vec<u64> = hints.to_vec();
    hints.extend([2, 3, ell as u64]);
    let (dom, t) = e.minimal_model_with_hints(&hints)?;
    let h = t.x_map().push_roots(kernel);
    velu_on_minimal(dom, h, ell, &hints)
}

/// Velu on a domain already in minimal form, with a kernel known to be valid.
pub(crate) fn velu_on_minimal(dom: WeierstrassCurve, h: Poly, ell: u32, hints: &[u64]) -> Result<Isogeny> {
    let mut hints: Vec<u64> = hints.to_vec();
    hints.extend([2, 3, ell as u64]);
    let raw = velu_codomain(&dom, &h, ell)?;
    let bad_primes = dom.discriminant_primes(&hints)?;
    hints.extend(bad_primes.iter().copied());
    let (cod, tc) = raw.minimal_model_with_hints(&hints)?;
    Ok(Isogeny {
        domain: dom,
        codomain: cod,
        degree: ell,
        kernel: h,
        scaling: tc.u,
        bad_primes,
    })
}

/// Whether `k` (a kernel on the codomain) is the image of the l-torsion.
fn kills_image(phi: &Isogeny, k: &Poly) -> Result<bool> {
    let psi = division_polynomial(&phi.domain, phi.degree)?;
    let g = psi.div_rem(&phi.kernel).0;
    if g.deg() <= 0 {
        return Ok(true);
    }
    let (n, d) = phi.x_map();
    let (n, d) = (n.rem(&g), d.rem(&g));
    let deg = k.degree().unwrap();
    let mut acc = Poly::zero();
    for (i, c) in k.coeffs().iter().enumerate() {
        let term = (&n.pow(i as u32) * &d.pow((deg - i) as u32)).rem(&g);
        acc = &acc + &term.scale(c);
    }
    Ok(acc.rem(&g).is_zero())
}

/// The dual isogeny, found among the rational kernels of the codomain.
pub fn dual(phi: &Isogeny) -> Result<Isogeny> {
    let hints = phi.hints();
    for k in rational_kernels(&phi.codomain, phi.degree)? {
        let cand = velu_with_hints(&phi.codomain, &k, phi.degree, &hints)?;
        if cand.codomain == phi.domain && kills_image(phi, &k)? {
            return Ok(cand);
        }
    }
    Err(Error::invariant("no dual isogeny among codomain kernels"))
}

/// `alpha_p = p^{v_p(lambda)}`.
pub fn alpha(phi: &Isogeny, p: u64) -> Rational {
    let v = valuation(&phi.scaling, p).expect("nonzero scaling");
    pow_rat(&rat(p as i64), v as i32)
}

/// Local Selmer ratio `c_p(phi)`.
pub fn local_selmer_ratio(phi: &Isogeny, place: Place) -> Result<Rational> {
    match place {
        Place::Prime(p) => {
            if !phi.bad_primes.contains(&p) && p != phi.degree as u64 {
                return Ok(Rational::one());
            }
            let c = tate(&phi.domain, p)?.tamagawa;
            let c2 = tate(&phi.codomain, p)?.tamagawa;
            Ok(Rational::new(c2.into(), c.into()) * alpha(phi, p))
        }
        Place::Infinite => {
            if phi.degree == 2 {
                return Err(Error::input("the infinite place needs odd degree"));
            }
            let f = phi.domain.two_division_cubic();
            if all_roots_real_with_positive(&phi.kernel, &f) {
                Ok(Rational::new(1.into(), phi.degree.into()))
            } else {
                Ok(Rational::one())
            }
        }
    }
}

/// `k` with `q = base^k`.
pub fn exact_log(q: &Rational, base: u32) -> Result<i64> {
    if !q.is_positive() {
        return Err(Error::invariant("ratio is not positive"));
    }
    let b = base as u64;
    let v = valuation(q, b)?;
    if pow_rat(&rat(base as i64), v as i32) != *q {
        return Err(Error::invariant(format!(
            "ratio {q} is not a power of {base}"
        )));
    }
    Ok(v)
}

/// Per-place exponent `t_v(phi)`.
pub fn local_exponent(phi: &Isogeny, place: Place) -> Result<i64> {
    exact_log(&local_selmer_ratio(phi, place)?, phi.degree)
}

pub fn global_selmer_ratio(phi: &Isogeny) -> Result<SelmerRatio> {
    if phi.degree == 2 {
        return Err(Error::input("global ratio needs odd degree"));
    }
    let mut local = BTreeMap::new();
    for v in phi.relevant_places() {
        local.insert(v, local_exponent(phi, v)?);
    }
    Ok(SelmerRatio {
        base: phi.degree,
        exponent: local.values().sum(),
        local,
    })
}

/// `v_p(j')/v_p(j)` when split multiplicative, else 1.
pub fn split_mult_ratio_check(phi: &Isogeny, p: u64) -> Result<Rational> {
    if p == phi.degree as u64 {
        return Err(Error::input("prime divides the degree"));
    }
    let ld = tate(&phi.domain, p)?;
    if ld.potential_kind != PotentialKind::Multiplicative {
        return Err(Error::input(format!(
            "reduction at {p} is potentially good"
        )));
    }
    if ld.kind != ReductionKind::SplitMultiplicative {
        return Ok(Rational::one());
    }
    let vj = ord(&phi.domain.j_invariant(), p).unwrap();
    let vj2 = ord(&phi.codomain.j_invariant(), p).unwrap();
    Ok(Rational::new(vj2.into(), vj.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn curve(a: [i64; 5]) -> WeierstrassCurve {
        WeierstrassCurve::from_ints(a).unwrap()
    }

    #[test]
    fn small_division_polynomials() {
        let e = curve([0, 0, 0, 1, 0]);
        assert_eq!(division_polynomial(&e, 3).unwrap(), Poly::from_ints(&[-1, 0, 6, 0, 3]));
        assert_eq!(division_polynomial(&e, 5).unwrap().degree(), Some(12));
        assert_eq!(division_polynomial(&e, 7).unwrap().degree(), Some(24));
        assert_eq!(division_polynomial(&e, 2).unwrap(), Poly::from_ints(&[0, 4, 0, 4]));
        assert!(division_polynomial(&e, 11).is_err());
        assert!(rational_kernels(&e, 3).unwrap().is_empty());
    }

    /// psi_n via the classical recurrence on the bivariate psi with
    /// psi_2 = 2y + a1 x + a3, evaluated at a rational point.
    fn psi_at_point(e: &WeierstrassCurve, x: &Rational, y: &Rational, n: usize) -> Rational {
        let f = division_polynomial(e, 3).unwrap();
        let psi2 = rat(2) * y + e.a1() * x + e.a3();
        let b = (e.b2(), e.b4(), e.b6(), e.b8());
        let psi4_over = Poly::new(vec![
            &b.1 * &b.3 - &b.2 * &b.2,
            &b.0 * &b.3 - &b.1 * &b.2,
            rat(10) * &b.3,
            rat(10) * &b.2,
            rat(5) * &b.1,
            b.0.clone(),
            rat(2),
        ]);
        let mut p = vec![rat(0), rat(1), psi2.clone(), f.eval(x), psi4_over.eval(x) * &psi2];
        for k in 5..=n {
            let m = k / 2;
            let v = if k % 2 == 1 {
                &p[m + 2] * pow_rat(&p[m], 3) - &p[m - 1] * pow_rat(&p[m + 1], 3)
            } else {
                &p[m] * (&p[m + 2] * &p[m - 1] * &p[m - 1] - &p[m - 2] * &p[m + 1] * &p[m + 1])
                    / &psi2
            };
            p.push(v);
        }
        p[n].clone()
    }

    #[test]
    fn univariate_matches_bivariate_recurrence() {
        // points on 14a1 and on y^2 = x^3 + 1
        let cases = [([1, 0, 1, 4, -6], (9, 23)), ([0, 0, 0, 0, 1], (2, 3))];
        for (a, (x, y)) in cases {
            let e = curve(a);
            let (x, y) = (rat(x), rat(y));
            assert!(&y * &y + e.a1() * &x * &y + e.a3() * &y
                == &x * &x * &x + e.a2() * &x * &x + e.a4() * &x + e.a6());
            let psi2 = rat(2) * &y + e.a1() * &x + e.a3();
            for n in [3usize, 5, 7] {
                let v = division_polynomial(&e, n as u32).unwrap().eval(&x);
                assert_eq!(v, psi_at_point(&e, &x, &y, n), "n = {n}");
            }
            let f = f_table(&e, 6);
            assert_eq!(f[6].eval(&x) * &psi2, psi_at_point(&e, &x, &y, 6));
        }
    }

    #[test]
    fn kernels_14a1() {
        let e = curve([1, 0, 1, 4, -6]);
        let ks = rational_kernels(&e, 3).unwrap();
        assert_eq!(ks.len(), 2);
        let k2 = rational_kernels(&e, 2).unwrap();
        assert_eq!(k2.len(), 1);
        for k in &ks {
            let phi = velu(&e, k, 3).unwrap();
            let d = dual(&phi).unwrap();
            assert_eq!(d.codomain(), phi.domain());
            assert_eq!(dual(&d).unwrap().kernel(), phi.kernel());
            assert_eq!(alpha(&phi, 3) * alpha(&d, 3), rat(3));
            assert_eq!((phi.scaling() * d.scaling()).abs(), rat(3));
        }
    }

    #[test]
    fn five_isogeny_50b3() {
        let e = curve([1, 1, 1, -13, -219]);
        let ks = rational_kernels(&e, 5).unwrap();
        assert_eq!(ks.len(), 1);
        assert_eq!(ks[0].degree(), Some(2));
        let psi5 = division_polynomial(&e, 5).unwrap();
        assert_eq!(factor_poly_small(&psi5, 2).unwrap().len(), 1);
        let psi = velu(&e, &ks[0], 5).unwrap();
        assert_eq!(alpha(&psi, 5), rat(5));
        assert_eq!(alpha(&psi, 2), rat(1));
        assert_eq!(local_selmer_ratio(&psi, Place::Prime(2)).unwrap(), rat(5));
        assert_eq!(local_selmer_ratio(&psi, Place::Infinite).unwrap(), rat(1));
        let g = global_selmer_ratio(&psi).unwrap();
        assert_eq!(g.value(), rat(25));
        let phis = rational_kernels(&e, 3).unwrap();
        assert_eq!(phis.len(), 1);
        let phi = velu(&e, &phis[0], 3).unwrap();
        assert_eq!(local_selmer_ratio(&phi, Place::Prime(2)).unwrap(), rat(3));
        assert_eq!(local_selmer_ratio(&phi, Place::Prime(5)).unwrap(), rat(1));
        assert_eq!(local_selmer_ratio(&phi, Place::Infinite).unwrap(), ratio(1, 3));
        assert_eq!(global_selmer_ratio(&phi).unwrap().value(), rat(1));
    }

    /// Brute-force search for monic quadratic divisors `x^2 + bx + c` with
    /// `b, c` drawn from a bounded set of rationals.
    #[test]
    fn no_quadratic_five_kernel_on_x3_plus_1() {
        let e = curve([0, 0, 0, 0, 1]);
        let psi5 = division_polynomial(&e, 5).unwrap();
        assert!(factor_poly_small(&psi5, 2).unwrap().is_empty());
        let mut vals = vec![];
        for n in -12i64..=12 {
            for d in [1i64, 2, 3, 4, 5, 6, 9, 12] {
                vals.push(ratio(n, d));
            }
        }
        vals.sort();
        vals.dedup();
        for b in &vals {
            for c in &vals {
                let q = Poly::new(vec![c.clone(), b.clone(), rat(1)]);
                assert!(!q.divides(&psi5));
            }
        }
        assert!(rational_kernels(&e, 5).unwrap().is_empty());
    }

    #[test]
    fn bad_kernels_rejected() {
        let e = curve([1, 0, 1, 4, -6]);
        assert!(velu(&e, &Poly::from_ints(&[1, 1]), 3).is_err());
        assert!(velu(&e, &Poly::from_ints(&[1, 1, 1]), 3).is_err());
        assert!(velu(&e, &Poly::from_ints(&[1, 1]), 11).is_err());
    }

    #[test]
    fn split_multiplicative_formula_14a1() {
        let e = curve([1, 0, 1, 4, -6]);
        // 14a1 is nonsplit at 2; the twist by 5 is split there
        let (e5, map) = e.twist_minimal(&5.into(), &[]).unwrap();
        let mut seen = vec![];
        for k in rational_kernels(&e, 3).unwrap() {
            let phi = velu(&e, &k, 3).unwrap();
            let phi5 = velu(&e5, &map.push_roots(&k), 3).unwrap();
            assert_eq!(split_mult_ratio_check(&phi, 2).unwrap(), rat(1));
            assert_eq!(local_selmer_ratio(&phi, Place::Prime(2)).unwrap(), rat(1));
            for (f, p) in [(&phi, 7u64), (&phi5, 2)] {
                let lhs = split_mult_ratio_check(f, p).unwrap();
                assert_eq!(lhs, local_selmer_ratio(f, Place::Prime(p)).unwrap());
                seen.push((p, lhs));
            }
            assert!(split_mult_ratio_check(&phi, 3).is_err());
            assert!(split_mult_ratio_check(&phi, 5).is_err());
        }
        assert!(seen.contains(&(2, rat(3))));
        assert!(seen.contains(&(2, ratio(1, 3))));
        assert!(seen.contains(&(7, ratio(1, 3))));
    }

    #[test]
    fn places() {
        assert_eq!("inf".parse::<Place>().unwrap(), Place::Infinite);
        assert_eq!("7".parse::<Place>().unwrap(), Place::Prime(7));
        assert!("8".parse::<Place>().is_err());
        assert_eq!(Place::Prime(5).to_string(), "5");
    }
}
