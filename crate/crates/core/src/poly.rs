//! Integer-coefficient Laurent polynomials in one variable `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::ser::{Serialize, SerializeSeq, Serializer};

/// A Laurent polynomial with integer coefficients. Zero coefficients are
/// never stored; the empty map is the zero polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The monomial `coeff * t^exp`.
    pub fn term(exp: i64, coeff: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    /// Nonzero terms in decreasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().rev().map(|(&e, &c)| (e, c))
    }

    /// Exponents with nonzero coefficient, decreasing.
    pub fn support(&self) -> Vec<i64> {
        self.coeffs.keys().rev().copied().collect()
    }

    /// Value at `t = 1`: the coefficient sum.
    pub fn evaluate_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// `Σ|b_i|` over the coefficients.
    pub fn abs_coeff_sum(&self) -> u64 {
        self.coeffs.values().map(|c| c.unsigned_abs()).sum()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &rhs.coeffs {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &rhs.coeffs {
            out.add_term(e, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

/// Serializes as a list of `[exponent, coefficient]` pairs, exponents
/// decreasing. The zero polynomial is the empty list.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (e, c) in self.terms() {
            seq.serialize_element(&(e, c))?;
        }
        seq.end()
    }
}

/// Text form with decreasing exponents, e.g. `t^4 - 2t^2 + 1`; zero prints
/// as `0` and negative exponents as `t^-2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (exp, coeff)) in self.terms().enumerate() {
            if i == 0 {
                if coeff < 0 {
                    write!(f, "-")?;
                }
            } else if coeff < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = coeff.unsigned_abs();
            if mag != 1 || exp == 0 {
                write!(f, "{mag}")?;
            }
            match exp {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{exp}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_collapses() {
        let mut p = LaurentPoly::term(2, 3);
        p.add_term(2, -3);
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn display_matches_conventions() {
        let p = LaurentPoly::from_terms([(4, 1), (2, -2), (0, 1)]);
        assert_eq!(p.to_string(), "t^4 - 2t^2 + 1");
        assert_eq!(
            LaurentPoly::from_terms([(2, 1), (0, 1)]).to_string(),
            "t^2 + 1"
        );
        assert_eq!(
            LaurentPoly::from_terms([(-2, -1), (1, 3)]).to_string(),
            "3t - t^-2"
        );
        assert_eq!(LaurentPoly::term(1, -1).to_string(), "-t");
        assert_eq!(LaurentPoly::term(0, -4).to_string(), "-4");
    }

    #[test]
    fn sums_and_differences() {
        let p = LaurentPoly::from_terms([(4, 1), (2, -2), (0, 1)]);
        assert_eq!(p.evaluate_at_one(), 0);
        assert_eq!(p.abs_coeff_sum(), 4);
        let q = LaurentPoly::from_terms([(2, -2)]);
        assert_eq!((&p - &q), LaurentPoly::from_terms([(4, 1), (0, 1)]));
        assert_eq!((&p + &(-&p)), LaurentPoly::zero());
        assert_eq!(p.support(), vec![4, 2, 0]);
    }

    #[test]
    fn json_form_is_exponent_coefficient_pairs() {
        let p = LaurentPoly::from_terms([(4, 1), (2, -2), (0, 1)]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[4,1],[2,-2],[0,1]]");
    }
}
