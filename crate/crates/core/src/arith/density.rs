//! Finitely supported Laurent polynomials with rational coefficients, used as
//! generating functions of twist densities.

use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use super::{format_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityPolynomial {
    arity: usize,
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl DensityPolynomial {
    pub fn zero(arity: usize) -> Self {
        assert!(arity > 0);
        DensityPolynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::monomial(vec![0; arity], Rational::one())
    }

    pub fn monomial(exps: Vec<i64>, c: Rational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// Build from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Vec<i64>, Rational)>) -> Self {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: Rational) {
        assert_eq!(exps.len(), self.arity, "exponent arity mismatch");
        let e = self.terms.entry(exps).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Rational> {
        &self.terms
    }

    pub fn coeff(&self, exps: &[i64]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    /// Value at the all-ones point.
    pub fn total(&self) -> Rational {
        self.terms.values().sum()
    }

    pub fn is_distribution(&self) -> bool {
        self.total().is_one()
            && self
                .terms
                .values()
                .all(|c| c.is_positive() && c <= &Rational::one())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.arity, o.arity, "arity mismatch");
        let mut out = Self::zero(self.arity);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let e = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }

    /// Sum out every variable except `axis`.
    pub fn marginal(&self, axis: usize) -> Result<Self> {
        if axis >= self.arity {
            return Err(Error::input("marginal axis out of range"));
        }
        Ok(Self::from_terms(
            1,
            self.terms.iter().map(|(e, c)| (vec![e[axis]], c.clone())),
        ))
    }
}

const VARS: [&str; 4] = ["x", "y", "z", "w"];

impl fmt::Display for DensityPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mut parts = vec![];
            let a = c.abs();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    let v = VARS.get(i).map_or_else(|| format!("x{i}"), |s| s.to_string());
                    if x == 1 {
                        v
                    } else {
                        format!("{v}^{x}")
                    }
                })
                .collect();
            if !a.is_one() || mono.is_empty() {
                parts.push(format_rational(&a));
            }
            parts.extend(mono);
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn place(terms: &[(i64, i64, i64, i64)]) -> DensityPolynomial {
        DensityPolynomial::from_terms(
            2,
            terms.iter().map(|&(a, b, n, d)| (vec![a, b], ratio(n, d))),
        )
    }

    #[test]
    fn product_of_place_factors() {
        // place factors whose product is a known six-term joint distribution
        let inf3 = place(&[(-1, 1, 1, 2), (0, 0, 1, 2)]);
        let two = place(&[(0, 0, 5, 6), (1, -1, 1, 6)]);
        let seven = place(&[(0, 0, 9, 16), (-1, -1, 7, 16)]);
        let j = inf3.mul(&two).mul(&seven);
        assert!(j.is_distribution());
        assert_eq!(j.terms().len(), 6);
        assert_eq!(j.coeff(&[0, 0]), ratio(9, 32));
        assert_eq!(j.coeff(&[-1, 1]), ratio(15, 64));
        assert_eq!(j.marginal(0).unwrap().total(), ratio(1, 1));
        assert_eq!(
            j.marginal(1).unwrap().to_string(),
            "7/192*x^-2 + 17/64*x^-1 + 89/192 + 15/64*x"
        );
    }

    #[test]
    fn display_forms() {
        let p = DensityPolynomial::from_terms(
            1,
            vec![(vec![-2], ratio(35, 192)), (vec![0], ratio(61, 192)), (vec![1], ratio(3, 64))],
        );
        assert_eq!(p.to_string(), "35/192*x^-2 + 61/192 + 3/64*x");
        assert_eq!(DensityPolynomial::one(2).to_string(), "1");
    }
}
