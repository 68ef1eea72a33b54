use num_traits::Zero;

use crate::arith::poly::Poly;
use crate::arith::zassenhaus::rational_roots;
use crate::arith::{is_square, pow_rat, rat, Rational};
use crate::curves::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::isogeny::{rational_kernels, velu};

/// Whether `disc(E) * disc(E')` is a square, for `E` with exactly one rational
/// 2-torsion point and a rational 3-isogeny, and `E'` its 2-isogenous curve.
pub fn delta_square_test(e: &WeierstrassCurve) -> Result<bool> {
    let (e, _) = e.minimal_model()?;
    let mut xs = rational_roots(&e.two_division_cubic())?;
    xs.dedup();
    if xs.len() != 1 {
        return Err(Error::input(format!(
            "curve has {} rational 2-torsion points, need exactly one",
            xs.len()
        )));
    }
    if rational_kernels(&e, 3)?.is_empty() {
        return Err(Error::input("curve has no rational 3-isogeny"));
    }
    let two = velu(&e, &Poly::linear_root(&xs[0]), 2)?;
    Ok(is_square(&(e.discriminant() * two.codomain().discriminant())))
}

/// `(t+6)^3 (t^3+18t^2+84t+24)^3 / (t (t+8)^3 (t+9)^2)`.
pub fn x06_j(t: &Rational) -> Result<Rational> {
    let den = t * pow_rat(&(t + rat(8)), 3) * pow_rat(&(t + rat(9)), 2);
    if den.is_zero() {
        return Err(Error::input("t must avoid 0, -8, -9"));
    }
    let cubic = pow_rat(t, 3) + rat(18) * t * t + rat(84) * t + rat(24);
    Ok(pow_rat(&(t + rat(6)), 3) * pow_rat(&cubic, 3) / den)
}

/// A curve with j-invariant `x06_j(t)`.
pub fn x06_curve(t: &Rational) -> Result<WeierstrassCurve> {
    let j = x06_j(t)?;
    if j.is_zero() {
        return WeierstrassCurve::from_ints([0, 0, 1, 0, 0]);
    }
    if j == rat(1728) {
        return WeierstrassCurve::from_ints([0, 0, 0, 1, 0]);
    }
    let d = &j - rat(1728);
    WeierstrassCurve::from_coeffs([
        rat(1),
        Rational::zero(),
        Rational::zero(),
        rat(-36) / &d,
        rat(-1) / &d,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{ratio, squarefree_part};

    #[test]
    fn x06_curves_have_six_isogeny_structure() {
        for t in [ratio(1, 1), ratio(-1, 1), ratio(2, 1), ratio(1, 2), ratio(-3, 1), ratio(5, 3), ratio(-10, 1)] {
            let e = x06_curve(&t).unwrap();
            assert_eq!(e.j_invariant(), x06_j(&t).unwrap());
            let (m, _) = e.minimal_model().unwrap();
            assert!(!rational_kernels(&m, 3).unwrap().is_empty(), "t = {t}");
            let mut xs = rational_roots(&m.two_division_cubic()).unwrap();
            xs.dedup();
            if xs.len() != 1 {
                continue;
            }
            // disc(E) lies in t(t+8) Q*^2
            let lhs = squarefree_part(&m.discriminant()).unwrap();
            let rhs = squarefree_part(&(&t * (&t + rat(8)))).unwrap();
            assert_eq!(lhs, rhs, "t = {t}");
            assert!(!delta_square_test(&m).unwrap());
        }
        for t in [0i64, -8, -9] {
            assert!(x06_j(&rat(t)).is_err());
        }
    }

    #[test]
    fn rejects_without_hypotheses() {
        let e = WeierstrassCurve::from_ints([0, 0, 1, -1, 0]).unwrap();
        assert!(delta_square_test(&e).is_err());
    }
}
