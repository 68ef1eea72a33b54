//! Polynomials over F_p for word-sized p, with distinct-degree and
//! Cantor-Zassenhaus equal-degree factorization.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{inv_mod, mul_mod, rat_mod, Integer, Rational};

/// Coefficients in increasing degree order, reduced, no trailing zeros.
pub type FpPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    pub fn trim(&self, mut a: FpPoly) -> FpPoly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn from_integers(&self, c: &[Integer]) -> FpPoly {
        self.trim(c.iter().map(|v| super::mod_u64(v, self.p)).collect())
    }

    /// Reduction of a rational polynomial; `None` if a denominator vanishes.
    pub fn from_rationals(&self, c: &[Rational]) -> Option<FpPoly> {
        let v: Option<Vec<u64>> = c.iter().map(|q| rat_mod(q, self.p)).collect();
        v.map(|v| self.trim(v))
    }

    pub fn deg(a: &FpPoly) -> isize {
        a.len() as isize - 1
    }

    pub fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.len().max(b.len());
        let p = self.p;
        self.trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
                .collect(),
        )
    }

    pub fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.len().max(b.len());
        let p = self.p;
        self.trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
                .collect(),
        )
    }

    pub fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let p = self.p as u128;
        let mut out = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u128 * y as u128) % p;
            }
        }
        self.trim(out.into_iter().map(|v| v as u64).collect())
    }

    pub fn scale(&self, a: &FpPoly, c: u64) -> FpPoly {
        self.trim(a.iter().map(|&x| mul_mod(x, c, self.p)).collect())
    }

    pub fn monic(&self, a: &FpPoly) -> FpPoly {
        match a.last() {
            None => vec![],
            Some(&l) => self.scale(a, inv_mod(l, self.p).expect("nonzero lead")),
        }
    }

    pub fn div_rem(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let p = self.p;
        let db = b.len() - 1;
        if a.len() <= db {
            return (vec![], a.clone());
        }
        let inv = inv_mod(*b.last().unwrap(), p).unwrap();
        let mut r = a.clone();
        let mut q = vec![0u64; a.len() - db];
        for i in (0..q.len()).rev() {
            let c = mul_mod(r[i + db], inv, p);
            if c == 0 {
                continue;
            }
            for (j, &bc) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + p - mul_mod(c, bc, p)) % p;
            }
            q[i] = c;
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        self.div_rem(a, b).1
    }

    pub fn gcd(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g` monic.
    pub fn ext_gcd(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], vec![]);
        let (mut t0, mut t1) = (vec![], vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let l = inv_mod(*r0.last().unwrap(), self.p).unwrap();
        (self.scale(&r0, l), self.scale(&s0, l), self.scale(&t0, l))
    }

    pub fn derivative(&self, a: &FpPoly) -> FpPoly {
        self.trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    pub fn mulmod(&self, a: &FpPoly, b: &FpPoly, m: &FpPoly) -> FpPoly {
        self.rem(&self.mul(a, b), m)
    }

    pub fn powmod(&self, base: &FpPoly, e: &BigUint, m: &FpPoly) -> FpPoly {
        let mut r = self.rem(&vec![1], m);
        let b = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            r = self.mulmod(&r, &r, m);
            if e.bit(i) {
                r = self.mulmod(&r, &b, m);
            }
        }
        r
    }

    pub fn eval(&self, a: &FpPoly, x: u64) -> u64 {
        let mut acc = 0;
        for &c in a.iter().rev() {
            acc = (mul_mod(acc, x, self.p) + c) % self.p;
        }
        acc
    }

    /// Number of distinct roots in F_p.
    pub fn count_roots(&self, a: &FpPoly) -> usize {
        if a.is_empty() {
            return self.p as usize;
        }
        if a.len() == 1 {
            return 0;
        }
        let xp = self.powmod(&vec![0, 1], &BigUint::from(self.p), a);
        let g = self.gcd(a, &self.sub(&xp, &vec![0, 1]));
        g.len() - 1
    }

    pub fn has_root(&self, a: &FpPoly) -> bool {
        if self.p < 64 {
            return (0..self.p).any(|x| self.eval(a, x) == 0);
        }
        self.count_roots(a) > 0
    }

    pub fn is_squarefree(&self, a: &FpPoly) -> bool {
        self.gcd(a, &self.derivative(a)).len() == 1
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(d, product of all irreducible factors of degree d)`.
    pub fn ddf(&self, f: &FpPoly) -> Vec<(usize, FpPoly)> {
        let mut out = vec![];
        let mut f = f.clone();
        let x = vec![0u64, 1];
        let pe = BigUint::from(self.p);
        let mut h = self.rem(&x, &f);
        let mut d = 0;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                out.push((f.len() - 1, f.clone()));
                break;
            }
            h = self.powmod(&h, &pe, &f);
            let g = self.gcd(&f, &self.sub(&h, &x));
            if g.len() > 1 {
                f = self.div_rem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((d, g));
            }
        }
        out
    }

    /// Equal-degree splitting for odd p.
    pub fn edf(&self, f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.clone()];
        }
        let e = (BigUint::from(self.p).pow(d as u32) - BigUint::one()) >> 1;
        loop {
            let a: FpPoly = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = self.sub(&self.powmod(&a, &e, f), &vec![1]);
            let g = self.gcd(f, &b);
            if g.len() > 1 && g.len() < f.len() {
                let q = self.div_rem(f, &g).0;
                let mut out = self.edf(&g, d, rng);
                out.extend(self.edf(&self.monic(&q), d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a squarefree polynomial, p odd.
    pub fn factor_squarefree(&self, f: &FpPoly, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let f = self.monic(f);
        let mut out = vec![];
        for (d, g) in self.ddf(&f) {
            out.extend(self.edf(&g, d, rng));
        }
        out.sort();
        out
    }
}
