//! Long Weierstrass models over Q, isomorphisms, twists and minimal models.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::arith::factor::factor_with_hints;
use crate::arith::poly::Poly;
use crate::arith::{
    format_rational, is_square, parse_rational, pow_rat, rat, rat_from, valuation_int, Integer,
    Rational,
};
use crate::error::{Error, Result};

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` with nonzero discriminant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassCurve {
    a: [Rational; 5],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub b2: Rational,
    pub b4: Rational,
    pub b6: Rational,
    pub b8: Rational,
    pub c4: Rational,
    pub c6: Rational,
    pub discriminant: Rational,
    pub j: Rational,
}

/// Change of variables `x = u^2 x' + r`, `y = u^3 y' + u^2 s x' + t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoTransform {
    pub u: Rational,
    pub r: Rational,
    pub s: Rational,
    pub t: Rational,
}

/// Affine map on x-coordinates, `x' = scale * x + shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XMap {
    pub scale: Rational,
    pub shift: Rational,
}

impl XMap {
    pub fn apply(&self, x: &Rational) -> Rational {
        &self.scale * x + &self.shift
    }

    /// Image of a polynomial's roots: returns the monic polynomial whose
    /// roots are `scale * a + shift` for roots `a` of `h`.
    pub fn push_roots(&self, h: &Poly) -> Poly {
        let inv = self.scale.recip();
        h.compose_affine(&inv, &(-&self.shift * &inv)).monic()
    }
}

impl IsoTransform {
    pub fn identity() -> Self {
        IsoTransform {
            u: Rational::one(),
            r: Rational::zero(),
            s: Rational::zero(),
            t: Rational::zero(),
        }
    }

    pub fn new(u: Rational, r: Rational, s: Rational, t: Rational) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::input("transform with u = 0"));
        }
        Ok(IsoTransform { u, r, s, t })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `self` followed by `next`.
    pub fn compose(&self, next: &IsoTransform) -> IsoTransform {
        let u2 = &self.u * &self.u;
        IsoTransform {
            u: &self.u * &next.u,
            r: &self.r + &u2 * &next.r,
            s: &self.s + &self.u * &next.s,
            t: &self.t + &u2 * &self.s * &next.r + &u2 * &self.u * &next.t,
        }
    }

    pub fn inverse(&self) -> IsoTransform {
        let ui = self.u.recip();
        let ui2 = &ui * &ui;
        IsoTransform {
            r: -&self.r * &ui2,
            s: -&self.s * &ui,
            t: (&self.r * &self.s - &self.t) * &ui2 * &ui,
            u: ui,
        }
    }

    /// New x-coordinate of a point with old x-coordinate `x`.
    pub fn x_map(&self) -> XMap {
        let ui2 = (&self.u * &self.u).recip();
        XMap {
            shift: -&self.r * &ui2,
            scale: ui2,
        }
    }
}

impl WeierstrassCurve {
    pub fn new(a1: Rational, a2: Rational, a3: Rational, a4: Rational, a6: Rational) -> Result<Self> {
        let e = WeierstrassCurve {
            a: [a1, a2, a3, a4, a6],
        };
        if e.discriminant().is_zero() {
            return Err(Error::Singular);
        }
        Ok(e)
    }

    pub fn from_coeffs(a: [Rational; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a;
        Self::new(a1, a2, a3, a4, a6)
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self> {
        Self::from_coeffs(a.map(rat))
    }

    /// Parse `"a1,a2,a3,a4,a6"` with integer or `p/q` entries.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 5 {
            return Err(Error::input(format!(
                "expected five comma-separated coefficients, got {s:?}"
            )));
        }
        let v: Vec<Rational> = parts.iter().map(|p| parse_rational(p)).collect::<Result<_>>()?;
        Self::from_coeffs(v.try_into().unwrap())
    }

    pub fn coeffs(&self) -> &[Rational; 5] {
        &self.a
    }

    pub fn a1(&self) -> &Rational {
        &self.a[0]
    }
    pub fn a2(&self) -> &Rational {
        &self.a[1]
    }
    pub fn a3(&self) -> &Rational {
        &self.a[2]
    }
    pub fn a4(&self) -> &Rational {
        &self.a[3]
    }
    pub fn a6(&self) -> &Rational {
        &self.a[4]
    }

    fn int_coeffs(&self) -> Option<[&Integer; 5]> {
        if self.is_integral() {
            Some([0, 1, 2, 3, 4].map(|i| self.a[i].numer()))
        } else {
            None
        }
    }

    pub fn b2(&self) -> Rational {
        self.a1() * self.a1() + rat(4) * self.a2()
    }
    pub fn b4(&self) -> Rational {
        rat(2) * self.a4() + self.a1() * self.a3()
    }
    pub fn b6(&self) -> Rational {
        self.a3() * self.a3() + rat(4) * self.a6()
    }
    pub fn b8(&self) -> Rational {
        let [a1, a2, a3, a4, a6] = &self.a;
        a1 * a1 * a6 + rat(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    }
    pub fn c4(&self) -> Rational {
        if let Some(a) = self.int_coeffs() {
            return Rational::from_integer(int_invariants(a).0);
        }
        let b2 = self.b2();
        &b2 * &b2 - rat(24) * self.b4()
    }
    pub fn c6(&self) -> Rational {
        if let Some(a) = self.int_coeffs() {
            return Rational::from_integer(int_invariants(a).1);
        }
        let (b2, b4, b6) = (self.b2(), self.b4(), self.b6());
        -(&b2 * &b2 * &b2) + rat(36) * &b2 * &b4 - rat(216) * b6
    }
    pub fn discriminant(&self) -> Rational {
        if let Some(a) = self.int_coeffs() {
            return Rational::from_integer(int_invariants(a).2);
        }
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(&b2 * &b2 * &b8) - rat(8) * &b4 * &b4 * &b4 - rat(27) * &b6 * &b6
            + rat(9) * &b2 * &b4 * &b6
    }
    pub fn j_invariant(&self) -> Rational {
        let c4 = self.c4();
        &c4 * &c4 * &c4 / self.discriminant()
    }

    pub fn invariants(&self) -> Invariants {
        Invariants {
            b2: self.b2(),
            b4: self.b4(),
            b6: self.b6(),
            b8: self.b8(),
            c4: self.c4(),
            c6: self.c6(),
            discriminant: self.discriminant(),
            j: self.j_invariant(),
        }
    }

    /// `4x^3 + b2 x^2 + 2 b4 x + b6`, whose roots are the 2-torsion x-coordinates.
    pub fn two_division_cubic(&self) -> Poly {
        Poly::new(vec![self.b6(), rat(2) * self.b4(), self.b2(), rat(4)])
    }

    pub fn is_integral(&self) -> bool {
        self.a.iter().all(|c| c.is_integer())
    }

    /// The model obtained by the change of variables `t`.
    pub fn transform(&self, t: &IsoTransform) -> Self {
        let [a1, a2, a3, a4, a6] = &self.a;
        let IsoTransform { u, r, s, t } = t;
        let two = rat(2);
        let three = rat(3);
        let na1 = (a1 + &two * s) / u;
        let na2 = (a2 - s * a1 + &three * r - s * s) / pow_rat(u, 2);
        let na3 = (a3 + r * a1 + &two * t) / pow_rat(u, 3);
        let na4 = (a4 - s * a3 + &two * r * a2 - (t + r * s) * a1 + &three * r * r - &two * s * t)
            / pow_rat(u, 4);
        let na6 = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / pow_rat(u, 6);
        WeierstrassCurve {
            a: [na1, na2, na3, na4, na6],
        }
    }

    /// The transform with scaling `u` taking `self` to `target`, if one exists.
    pub fn transform_to(&self, target: &Self, u: &Rational) -> Option<IsoTransform> {
        let [a1, a2, a3, ..] = &self.a;
        let s = (u * target.a1() - a1) / rat(2);
        let r = (pow_rat(u, 2) * target.a2() - a2 + &s * a1 + &s * &s) / rat(3);
        let t = (pow_rat(u, 3) * target.a3() - a3 - &r * a1) / rat(2);
        let tr = IsoTransform {
            u: u.clone(),
            r,
            s,
            t,
        };
        (self.transform(&tr) == *target).then_some(tr)
    }

    /// Q-isomorphism test via `c4`, `c6`.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        let (c4, c6, d4, d6) = (self.c4(), self.c6(), other.c4(), other.c6());
        if self.j_invariant() != other.j_invariant() {
            return false;
        }
        if c4.is_zero() {
            return is_nth_power(&(c6 / d6), 6);
        }
        if c6.is_zero() {
            return is_nth_power(&(c4 / d4), 4);
        }
        is_square(&((&c6 * &d4) / (&d6 * &c4)))
    }

    /// Rescale by `u = 1/D` so that all coefficients are integers.
    pub fn integral_model(&self) -> (Self, IsoTransform) {
        if self.is_integral() {
            return (self.clone(), IsoTransform::identity());
        }
        let mut d = BigInt::one();
        for c in &self.a {
            d = d.lcm(c.denom());
        }
        let t = IsoTransform {
            u: Rational::new(BigInt::one(), d),
            ..IsoTransform::identity()
        };
        (self.transform(&t), t)
    }

    pub fn minimal_model(&self) -> Result<(Self, IsoTransform)> {
        self.minimal_model_with_hints(&[])
    }

    /// Global minimal model (Laska-Kraus-Connell). `hints` are primes tried
    /// before general factoring of the relevant gcd.
    pub fn minimal_model_with_hints(&self, hints: &[u64]) -> Result<(Self, IsoTransform)> {
        let (e, t0) = self.integral_model();
        let c4 = e.c4().to_integer();
        let c6 = e.c6().to_integer();
        let disc = e.discriminant().to_integer();
        let g = (&c6 * &c6).gcd(&disc);
        let mut u = BigInt::one();
        for (p, v) in factor_with_hints(&g, hints)?.factors {
            let mut d = v / 12;
            if d == 0 {
                continue;
            }
            if p == BigInt::from(2) {
                let a = &c4 >> (4 * d);
                let b = &c6 >> (6 * d);
                let b32 = b.mod_floor(&BigInt::from(32));
                let ok = b.mod_floor(&BigInt::from(4)) == BigInt::from(3)
                    || (a.mod_floor(&BigInt::from(16)).is_zero()
                        && (b32.is_zero() || b32 == BigInt::from(8)));
                if !ok {
                    d -= 1;
                }
            } else if p == BigInt::from(3) {
                let b = &c6 / num_traits::pow(BigInt::from(3), 6 * d as usize);
                if !b.is_zero() && valuation_int(&b, 3) == 2 {
                    d -= 1;
                }
            }
            u *= num_traits::pow(p, d as usize);
        }
        let u4 = num_traits::pow(u.clone(), 4);
        let c4m = &c4 / &u4;
        let c6m = &c6 / (&u4 * &u * &u);
        let min = from_c4_c6(&c4m, &c6m)?;
        let ut = &t0.u * rat_from(&u);
        let tr = self
            .transform_to(&min, &ut)
            .ok_or_else(|| Error::invariant("minimal model not reachable by a transform"))?;
        Ok((min, tr))
    }

    /// Short model `y^2 = x^3 - 27 c4 s^2 x - 54 c6 s^3` of the twist by `s`,
    /// with `x_short = s(36 x + 3 b2)`.
    pub fn short_twist(&self, s: &Integer) -> Result<(Self, XMap)> {
        if s.is_zero() {
            return Err(Error::input("twist by zero"));
        }
        let s = rat_from(s);
        let a4 = rat(-27) * self.c4() * &s * &s;
        let a6 = rat(-54) * self.c6() * &s * &s * &s;
        let e = Self::new(rat(0), rat(0), rat(0), a4, a6)?;
        let map = XMap {
            scale: rat(36) * &s,
            shift: rat(3) * self.b2() * &s,
        };
        Ok((e, map))
    }

    /// Quadratic twist by the squarefree integer `s`, in short form.
    pub fn quadratic_twist(&self, s: &Integer) -> Result<Self> {
        check_squarefree(s)?;
        Ok(self.short_twist(s)?.0)
    }

    /// Minimal model of the twist by `s` and the induced x-coordinate map.
    pub fn twist_minimal(&self, s: &Integer, hints: &[u64]) -> Result<(Self, XMap)> {
        let (e, m) = self.short_twist(s)?;
        let (min, t) = e.minimal_model_with_hints(hints)?;
        let tm = t.x_map();
        Ok((
            min,
            XMap {
                scale: &tm.scale * &m.scale,
                shift: &tm.scale * &m.shift + &tm.shift,
            },
        ))
    }

    /// Primes dividing the discriminant of this model (numerator and denominator).
    pub fn discriminant_primes(&self, hints: &[u64]) -> Result<Vec<u64>> {
        let d = self.discriminant();
        factor_with_hints(&(d.numer() * d.denom()), hints)?.primes_u64()
    }

    /// `[a1, a2, a3, a4, a6]` as exact strings.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.a.iter().map(format_rational).collect()
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.coeff_strings().join(","))
    }
}

/// `(c4, c6, disc)` of an integral model.
fn int_invariants([a1, a2, a3, a4, a6]: [&Integer; 5]) -> (Integer, Integer, Integer) {
    let b2: Integer = a1 * a1 + 4 * a2;
    let b4: Integer = 2 * a4 + a1 * a3;
    let b6: Integer = a3 * a3 + 4 * a6;
    let b8: Integer = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    let c4 = &b2 * &b2 - 24 * &b4;
    let c6 = -(&b2 * &b2 * &b2) + 36 * &b2 * &b4 - 216 * &b6;
    let d = -(&b2 * &b2 * &b8) - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6;
    (c4, c6, d)
}

fn check_squarefree(s: &Integer) -> Result<()> {
    if s.is_zero() {
        return Err(Error::input("twist parameter must be nonzero"));
    }
    if !crate::arith::is_squarefree(s)? {
        return Err(Error::input(format!("twist parameter {s} is not squarefree")));
    }
    Ok(())
}

fn is_nth_power(q: &Rational, n: u32) -> bool {
    let root = |v: &BigInt| {
        if v.is_negative() {
            if n % 2 == 0 {
                return false;
            }
            let r = -((-v).nth_root(n));
            return num_traits::pow(r, n as usize) == *v;
        }
        num_traits::pow(v.nth_root(n), n as usize) == *v
    };
    root(q.numer()) && root(q.denom())
}

/// Reduced integral model with given `c4`, `c6` (which must satisfy Kraus's conditions).
fn from_c4_c6(c4: &Integer, c6: &Integer) -> Result<WeierstrassCurve> {
    let twelve = BigInt::from(12);
    let mut b2 = (-c6).mod_floor(&twelve);
    if b2 > BigInt::from(6) {
        b2 -= &twelve;
    }
    let (b4, r4) = (&b2 * &b2 - c4).div_rem(&BigInt::from(24));
    let num6: BigInt = -(&b2 * &b2 * &b2) + BigInt::from(36) * &b2 * &b4 - c6;
    let (b6, r6) = num6.div_rem(&BigInt::from(216));
    if !r4.is_zero() || !r6.is_zero() {
        return Err(Error::invariant("c-invariants fail integrality"));
    }
    let two = BigInt::from(2);
    let a1 = b2.mod_floor(&two);
    let a3 = b6.mod_floor(&two);
    let a2 = (&b2 - &a1) / 4;
    let a4 = (&b4 - &a1 * &a3) / 2;
    let a6 = (&b6 - &a3) / 4;
    WeierstrassCurve::from_coeffs([a1, a2, a3, a4, a6].map(Rational::from_integer))
}
