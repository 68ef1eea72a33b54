//! Small-degree factor extraction over Q: factor modulo a good prime, Hensel
//! lift, recombine subsets whose degree stays within the target.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{FpPoly, Fp};
use super::poly::Poly;
use super::{primes_up_to, Integer, Rational};
use crate::error::{Error, Result};

/// Largest input degree accepted (psi_7 has degree 24).
pub const MAX_DEGREE: usize = 24;

/// All monic irreducible factors over Q of degree exactly `target_degree`.
pub fn factor_poly_small(f: &Poly, target_degree: usize) -> Result<Vec<Poly>> {
    if f.is_zero() {
        return Err(Error::input("cannot factor the zero polynomial"));
    }
    if !(1..=3).contains(&target_degree) {
        return Err(Error::input("target degree must be 1, 2 or 3"));
    }
    let d = f.degree().unwrap();
    if d > MAX_DEGREE {
        return Err(Error::Unsupported(format!(
            "polynomial degree {d} exceeds cap {MAX_DEGREE}"
        )));
    }
    let mut out: Vec<Poly> = small_factors(f, target_degree)
        .into_iter()
        .filter(|g| g.degree() == Some(target_degree))
        .collect();
    out.sort_by(|a, b| a.to_string().cmp(&b.to_string()));
    Ok(out)
}

/// Rational roots listed with multiplicity, in increasing order.
pub fn rational_roots(f: &Poly) -> Result<Vec<Rational>> {
    let mut roots = vec![];
    for lin in factor_poly_small(f, 1)? {
        let r = -lin.coeff(0);
        let mut g = f.clone();
        let l = Poly::linear_root(&r);
        loop {
            let (q, rem) = g.div_rem(&l);
            if !rem.is_zero() {
                break;
            }
            roots.push(r.clone());
            g = q;
        }
    }
    roots.sort();
    Ok(roots)
}

/// Irreducible monic factors of degree at most `max_deg`.
fn small_factors(f: &Poly, max_deg: usize) -> Vec<Poly> {
    let sf = f.squarefree_part();
    let n = sf.degree().unwrap();
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![sf];
    }
    let g = sf.primitive_integer();
    let lc = g.last().unwrap().clone();
    let (p, modular) = choose_prime(&g);
    let bound = coefficient_bound(&g);
    let mut k = 1u32;
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(&g, &modular, p, k);
    recombine(&g, lc, lifted, &pk, max_deg)
}

/// Pick a good prime for `g`, preferring the one with fewest modular factors.
fn choose_prime(g: &[Integer]) -> (u64, Vec<FpPoly>) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for p in primes_up_to(100_000).into_iter().skip(1) {
        let fp = Fp::new(p);
        if (g.last().unwrap() % p).is_zero() {
            continue;
        }
        let gp = fp.from_integers(g);
        if !fp.is_squarefree(&gp) {
            continue;
        }
        let fs = fp.factor_squarefree(&gp, &mut rng);
        if best.as_ref().map_or(true, |(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 6 || best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    best.expect("a good prime exists below 10^5")
}

/// 2 * |lc| * 2^deg * ||g||_2, rounded up.
fn coefficient_bound(g: &[Integer]) -> Integer {
    let norm2: BigInt = g.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1;
    let lc = g.last().unwrap().abs();
    (norm * lc * 2) << (g.len() - 1)
}

fn to_fp(v: &[Integer], p: u64) -> FpPoly {
    Fp::new(p).from_integers(v)
}

fn poly_mul_mod(a: &[Integer], b: &[Integer], m: &Integer) -> Vec<Integer> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out.iter().map(|c| c.mod_floor(m)).collect()
}

/// Lift monic modular factors of `lc^-1 g` to modulus `p^k`.
fn hensel_lift(g: &[Integer], factors: &[FpPoly], p: u64, k: u32) -> Vec<Vec<Integer>> {
    let pb = BigInt::from(p);
    let pk = num_traits::pow(pb.clone(), k as usize);
    let lc = g.last().unwrap();
    let lc_inv = mod_inverse(&lc.mod_floor(&pk), &pk);
    let mut target: Vec<Integer> = g.iter().map(|c| (c * &lc_inv).mod_floor(&pk)).collect();
    let fp = Fp::new(p);
    let mut out = vec![];
    for (idx, a0) in factors.iter().enumerate() {
        if idx + 1 == factors.len() {
            out.push(target.clone());
            break;
        }
        let rest_mod = factors[idx + 1..]
            .iter()
            .fold(vec![1u64], |acc, h| fp.mul(&acc, h));
        let (a, b) = lift_pair(&target, a0, &rest_mod, p, k);
        out.push(a);
        target = b;
    }
    out
}

/// Linear Hensel lifting of `t = a*b (mod p)` with `t` monic modulo `p^k`.
fn lift_pair(
    t: &[Integer],
    a0: &FpPoly,
    b0: &FpPoly,
    p: u64,
    k: u32,
) -> (Vec<Integer>, Vec<Integer>) {
    let fp = Fp::new(p);
    let pb = BigInt::from(p);
    let (_, s, tt) = fp.ext_gcd(a0, b0);
    let mut a: Vec<Integer> = a0.iter().map(|&c| BigInt::from(c)).collect();
    let mut b: Vec<Integer> = b0.iter().map(|&c| BigInt::from(c)).collect();
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let prod = poly_mul_mod(&a, &b, &next);
        let diff: Vec<Integer> = (0..t.len())
            .map(|i| {
                let x = t.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default();
                x.mod_floor(&next) / &pj
            })
            .collect();
        let e = to_fp(&diff, p);
        let a_mod = to_fp(&a, p);
        let b_mod = to_fp(&b, p);
        let te = fp.mul(&tt, &e);
        let (q, da) = fp.div_rem(&te, &a_mod);
        let db = fp.rem(&fp.add(&fp.mul(&s, &e), &fp.mul(&q, &b_mod)), &b_mod);
        add_scaled(&mut a, &da, &pj);
        add_scaled(&mut b, &db, &pj);
        pj = next;
    }
    (a, b)
}

fn add_scaled(a: &mut Vec<Integer>, d: &FpPoly, s: &Integer) {
    for (i, &c) in d.iter().enumerate() {
        if i >= a.len() {
            a.push(BigInt::zero());
        }
        a[i] += s * BigInt::from(c);
    }
}

fn mod_inverse(a: &Integer, m: &Integer) -> Integer {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn symmetric(c: &Integer, m: &Integer) -> Integer {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn recombine(
    g: &[Integer],
    lc: Integer,
    mut lifted: Vec<Vec<Integer>>,
    pk: &Integer,
    max_deg: usize,
) -> Vec<Poly> {
    let mut found = vec![];
    let mut cur = Poly::from_integers(g);
    let mut lc = lc;
    let mut size = 1;
    'outer: while size <= lifted.len() {
        let degs: Vec<usize> = lifted.iter().map(|h| h.len() - 1).collect();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let total: usize = idx.iter().map(|&i| degs[i]).sum();
            if total <= max_deg {
                let mut h = vec![lc.clone()];
                for &i in &idx {
                    h = poly_mul_mod(&h, &lifted[i], pk);
                }
                let hs: Vec<Integer> = h.iter().map(|c| symmetric(c, pk)).collect();
                let cand = Poly::from_integers(&hs);
                let cand = Poly::from_integers(&cand.primitive_integer());
                if cand.deg() > 0 {
                    let (q, r) = cur.div_rem(&cand);
                    if r.is_zero() && q.coeffs().iter().all(|c| c.is_integer()) {
                        lc = q.lc().to_integer();
                        found.push(cand.monic());
                        cur = q;
                        for &i in idx.iter().rev() {
                            lifted.remove(i);
                        }
                        continue 'outer;
                    }
                }
            }
            if !next_subset(&mut idx, lifted.len()) {
                break;
            }
        }
        size += 1;
    }
    found
}

fn next_subset(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Degrees of the irreducible factors of `f` modulo `p`, if `p` is good.
pub fn degree_multiset_mod_p(f: &Poly, p: u64) -> Option<Vec<usize>> {
    let fp = Fp::new(p);
    let g = fp.from_rationals(f.coeffs())?;
    if g.len() != f.coeffs().len() || !fp.is_squarefree(&g) {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut d: Vec<usize> = fp
        .factor_squarefree(&g, &mut rng)
        .iter()
        .map(|h| h.len() - 1)
        .collect();
    d.sort();
    Some(d)
}
