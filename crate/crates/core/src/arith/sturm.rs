//! Exact real-root sign analysis via signed remainder sequences.

use super::poly::Poly;
use super::sign_rat;

fn signed_remainder_sequence(a: &Poly, b: &Poly) -> Vec<Poly> {
    let mut seq = vec![a.clone()];
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        seq.push(y.clone());
        let r = x.rem(&y);
        x = y;
        y = -&r;
    }
    seq
}

fn variations(signs: impl Iterator<Item = i32>) -> i64 {
    let mut last = 0;
    let mut v = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

fn sign_at_infinity(p: &Poly, positive: bool) -> i32 {
    let s = sign_rat(&p.lc());
    if positive || p.deg() % 2 == 0 {
        s
    } else {
        -s
    }
}

/// Tarski query: #{x real : p(x) = 0, q(x) > 0} - #{x real : p(x) = 0, q(x) < 0}.
pub fn tarski_query(q: &Poly, p: &Poly) -> i64 {
    assert!(!p.is_zero());
    let seq = signed_remainder_sequence(p, &(&p.derivative() * q));
    variations(seq.iter().map(|f| sign_at_infinity(f, false)))
        - variations(seq.iter().map(|f| sign_at_infinity(f, true)))
}

/// Number of distinct real roots.
pub fn count_real_roots(p: &Poly) -> usize {
    tarski_query(&Poly::one(), p) as usize
}

/// True iff every root of `h` is real, simple, and `f` is positive there.
pub fn all_roots_real_with_positive(h: &Poly, f: &Poly) -> bool {
    let d = h.deg() as i64;
    if d <= 0 {
        return true;
    }
    tarski_query(&Poly::one(), h) == d && tarski_query(f, h) == d
}
