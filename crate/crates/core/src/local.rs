//! Tate's algorithm: Kodaira symbol, Tamagawa number and reduction type.

use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;

use crate::arith::modp::Fp;
use crate::arith::{inv_mod, is_qr, mod_u64, Integer};
use crate::curves::WeierstrassCurve;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kodaira {
    I0,
    I(u32),
    II,
    III,
    IV,
    I0Star,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I0 => write!(f, "I0"),
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::I0Star => write!(f, "I0*"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

impl ReductionKind {
    pub fn is_multiplicative(self) -> bool {
        matches!(
            self,
            ReductionKind::SplitMultiplicative | ReductionKind::NonsplitMultiplicative
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ReductionKind::Good => "good",
            ReductionKind::SplitMultiplicative => "split-multiplicative",
            ReductionKind::NonsplitMultiplicative => "nonsplit-multiplicative",
            ReductionKind::Additive => "additive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PotentialKind {
    Good,
    Multiplicative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalData {
    pub p: u64,
    pub kodaira: Kodaira,
    pub tamagawa: u32,
    pub kind: ReductionKind,
    pub potential_kind: PotentialKind,
    pub v_delta_min: u32,
}

struct Model {
    a1: Integer,
    a2: Integer,
    a3: Integer,
    a4: Integer,
    a6: Integer,
}

impl Model {
    fn b(&self) -> (Integer, Integer, Integer, Integer) {
        let b2 = &self.a1 * &self.a1 + 4 * &self.a2;
        let b4 = 2 * &self.a4 + &self.a1 * &self.a3;
        let b6 = &self.a3 * &self.a3 + 4 * &self.a6;
        let b8 = &self.a1 * &self.a1 * &self.a6 + 4 * &self.a2 * &self.a6
            - &self.a1 * &self.a3 * &self.a4
            + &self.a2 * &self.a3 * &self.a3
            - &self.a4 * &self.a4;
        (b2, b4, b6, b8)
    }

    fn c4_disc(&self) -> (Integer, Integer) {
        let (b2, b4, b6, b8) = self.b();
        let c4 = &b2 * &b2 - 24 * &b4;
        let d = -(&b2 * &b2 * &b8) - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6;
        (c4, d)
    }

    /// Integral change of variables with u = 1.
    fn rst(&mut self, r: &Integer, s: &Integer, t: &Integer) {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let na1 = a1 + 2 * s;
        let na2 = a2 - s * a1 + 3 * r - s * s;
        let na3 = a3 + r * a1 + 2 * t;
        let na4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        let na6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        *self = Model {
            a1: na1,
            a2: na2,
            a3: na3,
            a4: na4,
            a6: na6,
        };
    }
}

fn val(x: &Integer, p: u64) -> u32 {
    if x.is_zero() {
        u32::MAX
    } else {
        crate::arith::valuation_int(x, p)
    }
}

fn divides(x: &Integer, p: u64) -> bool {
    (x % p).is_zero()
}

/// Whether `a X^2 + b X + c` has a root modulo `p`.
fn quad_roots(a: &Integer, b: &Integer, c: &Integer, p: u64) -> bool {
    let (a, b, c) = (mod_u64(a, p), mod_u64(b, p), mod_u64(c, p));
    if a == 0 {
        return b != 0 || c == 0;
    }
    if p == 2 {
        return c == 0 || (a + b + c) % 2 == 0;
    }
    let disc = (crate::arith::mul_mod(b, b, p) + p - crate::arith::mul_mod(4 % p, crate::arith::mul_mod(a, c, p), p)) % p;
    disc == 0 || is_qr(disc, p)
}

fn cubic_roots(b: &Integer, c: &Integer, d: &Integer, p: u64) -> usize {
    let fp = Fp::new(p);
    let f = fp.from_integers(&[d.clone(), c.clone(), b.clone(), BigInt::from(1)]);
    fp.count_roots(&f)
}

fn inv(x: &Integer, p: u64) -> Integer {
    BigInt::from(inv_mod(mod_u64(x, p), p).expect("unit modulo p"))
}

fn reduce(x: &Integer, p: u64) -> Integer {
    BigInt::from(mod_u64(x, p))
}

/// Local data of `e` at the prime `p`.
pub fn tate(e: &WeierstrassCurve, p: u64) -> Result<LocalData> {
    if p < 2 || !crate::arith::factor::is_prime_u64(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    let (ei, _) = e.integral_model();
    let [a1, a2, a3, a4, a6] = ei.coeffs().clone().map(|c| c.to_integer());
    let mut m = Model { a1, a2, a3, a4, a6 };
    // v(j) = 3 v(c4) - v(disc)
    let potential_kind = {
        let (c4, disc) = m.c4_disc();
        if !c4.is_zero() && 3 * val(&c4, p) as i64 - (val(&disc, p) as i64) < 0 {
            PotentialKind::Multiplicative
        } else {
            PotentialKind::Good
        }
    };
    let pb = BigInt::from(p);
    let p2 = &pb * &pb;
    let half = if p == 2 { BigInt::zero() } else { inv(&BigInt::from(2), p) };
    let done = |kodaira, tamagawa, kind, vd: u32| LocalData {
        p,
        kodaira,
        tamagawa,
        kind,
        potential_kind,
        v_delta_min: vd,
    };
    loop {
        let (c4, disc) = m.c4_disc();
        let vd = val(&disc, p);
        if vd == 0 {
            return Ok(done(Kodaira::I0, 1, ReductionKind::Good, 0));
        }
        let (b2, b4, b6, _) = m.b();
        let (r, t) = if p == 2 {
            if divides(&b2, p) {
                let r = reduce(&m.a4, p);
                let t = reduce(&(&r * (1 + &m.a2 + &m.a4) + &m.a6), p);
                (r, t)
            } else {
                let r = reduce(&m.a3, p);
                let t = reduce(&(&r + &m.a4), p);
                (r, t)
            }
        } else if p == 3 {
            let r = if divides(&b2, p) { reduce(&-&b6, p) } else { reduce(&-(&b2 * &b4), p) };
            let t = reduce(&(&m.a1 * &r + &m.a3), p);
            (r, t)
        } else {
            let c6 = -(&b2 * &b2 * &b2) + 36 * &b2 * &b4 - 216 * &b6;
            let r = if divides(&c4, p) {
                reduce(&(-inv(&BigInt::from(12), p) * &b2), p)
            } else {
                reduce(&(-inv(&(12 * &c4), p) * (&c6 + &b2 * &c4)), p)
            };
            let t = reduce(&(-&half * (&m.a1 * &r + &m.a3)), p);
            (r, t)
        };
        m.rst(&r, &BigInt::zero(), &t);
        let (c4, _) = m.c4_disc();
        let (_, _, b6, b8) = m.b();

        if !divides(&c4, p) {
            let split = quad_roots(&BigInt::from(1), &m.a1, &-&m.a2, p);
            let (kind, c) = if split {
                (ReductionKind::SplitMultiplicative, vd)
            } else {
                (ReductionKind::NonsplitMultiplicative, if vd % 2 == 0 { 2 } else { 1 })
            };
            return Ok(done(Kodaira::I(vd), c, kind, vd));
        }
        if val(&m.a6, p) < 2 {
            return Ok(done(Kodaira::II, 1, ReductionKind::Additive, vd));
        }
        if val(&b8, p) < 3 {
            return Ok(done(Kodaira::III, 2, ReductionKind::Additive, vd));
        }
        if val(&b6, p) < 3 {
            let a3t = &m.a3 / &pb;
            let a6t = &m.a6 / &p2;
            let c = if quad_roots(&BigInt::from(1), &a3t, &-a6t, p) { 3 } else { 1 };
            return Ok(done(Kodaira::IV, c, ReductionKind::Additive, vd));
        }

        let (s, t) = if p == 2 {
            (reduce(&m.a2, 2), 2 * reduce(&(&m.a6 / 4), 2))
        } else {
            (reduce(&(-&m.a1 * &half), p), &pb * reduce(&(-(&m.a3 / &pb) * &half), p))
        };
        m.rst(&BigInt::zero(), &s, &t);

        let b = &m.a2 / &pb;
        let c = &m.a4 / &p2;
        let d = &m.a6 / (&p2 * &pb);
        let w = 27 * &d * &d - &b * &b * &c * &c + 4 * &b * &b * &b * &d - 18 * &b * &c * &d
            + 4 * &c * &c * &c;
        let x = 3 * &c - &b * &b;
        if !divides(&w, p) {
            let n = 1 + cubic_roots(&b, &c, &d, p) as u32;
            return Ok(done(Kodaira::I0Star, n, ReductionKind::Additive, vd));
        }
        if !divides(&x, p) {
            let r0 = if p == 2 {
                c.clone()
            } else if p == 3 {
                &b * &c
            } else {
                (&b * &c - 9 * &d) * inv(&(2 * &x), p)
            };
            let r = &pb * reduce(&r0, p);
            m.rst(&r, &BigInt::zero(), &BigInt::zero());
            let (mut ix, mut iy) = (3u32, 3u32);
            let mut mx = p2.clone();
            let mut my = p2.clone();
            let cp;
            loop {
                let a3t = &m.a3 / &my;
                let a6t = &m.a6 / (&mx * &my);
                if !divides(&(&a3t * &a3t + 4 * &a6t), p) {
                    cp = if quad_roots(&BigInt::from(1), &a3t, &-&a6t, p) { 4 } else { 2 };
                    break;
                }
                let t = if p == 2 {
                    &my * reduce(&a6t, 2)
                } else {
                    &my * reduce(&(-&a3t * &half), p)
                };
                m.rst(&BigInt::zero(), &BigInt::zero(), &t);
                my *= &pb;
                iy += 1;
                let a2t = &m.a2 / &pb;
                let a4t = &m.a4 / (&pb * &mx);
                let a6t = &m.a6 / (&mx * &my);
                if !divides(&(&a4t * &a4t - 4 * &a6t * &a2t), p) {
                    cp = if quad_roots(&a2t, &a4t, &a6t, p) { 4 } else { 2 };
                    break;
                }
                let r = if p == 2 {
                    &mx * reduce(&(&a6t * &a2t), 2)
                } else {
                    &mx * reduce(&(-&a4t * inv(&(2 * &a2t), p)), p)
                };
                m.rst(&r, &BigInt::zero(), &BigInt::zero());
                mx *= &pb;
                ix += 1;
            }
            return Ok(done(Kodaira::IStar(ix + iy - 5), cp, ReductionKind::Additive, vd));
        }
        let rp = if p == 3 { -&d } else { -&b * inv(&BigInt::from(3), p) };
        let r = &pb * reduce(&rp, p);
        m.rst(&r, &BigInt::zero(), &BigInt::zero());
        let a3t = &m.a3 / &p2;
        let a6t = &m.a6 / (&p2 * &p2);
        if !divides(&(&a3t * &a3t + 4 * &a6t), p) {
            let c = if quad_roots(&BigInt::from(1), &a3t, &-&a6t, p) { 3 } else { 1 };
            return Ok(done(Kodaira::IVStar, c, ReductionKind::Additive, vd));
        }
        let t = if p == 2 {
            &p2 * reduce(&a6t, 2)
        } else {
            &p2 * reduce(&(-&a3t * &half), p)
        };
        m.rst(&BigInt::zero(), &BigInt::zero(), &t);
        if val(&m.a4, p) < 4 {
            return Ok(done(Kodaira::IIIStar, 2, ReductionKind::Additive, vd));
        }
        if val(&m.a6, p) < 6 {
            return Ok(done(Kodaira::IIStar, 1, ReductionKind::Additive, vd));
        }
        // not minimal at p: scale by u = p and restart
        m = Model {
            a1: &m.a1 / &pb,
            a2: &m.a2 / &p2,
            a3: &m.a3 / (&p2 * &pb),
            a4: &m.a4 / (&p2 * &p2),
            a6: &m.a6 / (&p2 * &p2 * &p2),
        };
        if m.c4_disc().1.is_zero() {
            return Err(Error::invariant("degenerate model in Tate's algorithm"));
        }
    }
}

/// Whether the multiplicative reduction of `e` at `p` is split.
pub fn is_split(e: &WeierstrassCurve, p: u64) -> Result<bool> {
    let ld = tate(e, p)?;
    match ld.kind {
        ReductionKind::SplitMultiplicative => Ok(true),
        ReductionKind::NonsplitMultiplicative => Ok(false),
        _ => Err(Error::input(format!("reduction at {p} is not multiplicative"))),
    }
}

/// Local data at every prime dividing the minimal discriminant.
pub fn bad_primes_data(e: &WeierstrassCurve, hints: &[u64]) -> Result<Vec<LocalData>> {
    let (min, _) = e.minimal_model_with_hints(hints)?;
    min.discriminant_primes(hints)?
        .into_iter()
        .map(|p| tate(&min, p))
        .collect()
}
