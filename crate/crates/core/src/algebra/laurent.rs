//! Laurent polynomials: finitely many rational coefficients on integer
//! exponents, bounded below and above.
//!
//! These carry the determinants `det(y - K)` after the substitution
//! `y = 2 + q + q^{-1}`, where negative exponents are unavoidable.
//! Normalization records the minimal exponent and keeps both extreme
//! coefficients nonzero, so structural equality is semantic equality.

use super::poly::Poly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    /// Exponent of `coeffs[0]`; irrelevant (kept 0) for the zero polynomial.
    min_exp: isize,
    coeffs: Vec<BigRational>,
}

impl LaurentPoly {
    pub fn new(min_exp: isize, coeffs: Vec<BigRational>) -> Self {
        let mut lp = LaurentPoly { min_exp, coeffs };
        lp.normalize();
        lp
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.min_exp += lead_zeros as isize;
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    pub fn zero() -> Self {
        LaurentPoly {
            min_exp: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(BigRational::from_integer(BigInt::from(1)))
    }

    pub fn constant(c: BigRational) -> Self {
        LaurentPoly::new(0, vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        LaurentPoly::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// `c * q^exp`.
    pub fn monomial(c: BigRational, exp: isize) -> Self {
        LaurentPoly::new(exp, vec![c])
    }

    /// Convenience constructor from `(exponent, integer coefficient)` pairs.
    pub fn from_terms(terms: &[(isize, i64)]) -> Self {
        let mut lp = LaurentPoly::zero();
        for &(e, c) in terms {
            lp = &lp + &LaurentPoly::monomial(BigRational::from_integer(BigInt::from(c)), e);
        }
        lp
    }

    /// `2 + q + q^{-1}` minus an integer, the diagonal entry of `y - K`.
    pub fn y_minus(c: i64) -> Self {
        LaurentPoly::from_terms(&[(-1, 1), (0, 2 - c), (1, 1)])
    }

    pub fn from_poly(p: &Poly) -> Self {
        LaurentPoly::new(0, p.coeffs().to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<isize> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_exp)
        }
    }

    pub fn max_exp(&self) -> Option<isize> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_exp + self.coeffs.len() as isize - 1)
        }
    }

    pub fn coeff(&self, exp: isize) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let idx = exp - self.min_exp;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            BigRational::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: isize) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            min_exp: self.min_exp + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Write as `q^shift * p` with `p` an ordinary polynomial having a
    /// nonzero constant term; the zero polynomial gives `(0, 0)`.
    pub fn to_poly_with_shift(&self) -> (Poly, isize) {
        if self.is_zero() {
            return (Poly::zero(), 0);
        }
        (Poly::new(self.coeffs.clone()), self.min_exp)
    }

    /// Exact quotient, or `None` when the divisor leaves a remainder.
    /// Exponent shifts divide out, so this reduces to ordinary polynomial
    /// division of the coefficient windows.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (num, ns) = self.to_poly_with_shift();
        let (den, ds) = divisor.to_poly_with_shift();
        let quot = num.exact_div(&den)?;
        Some(LaurentPoly::new(ns - ds, quot.coeffs().to_vec()))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(rhs.min_exp);
        let hi = (self.min_exp + self.coeffs.len() as isize)
            .max(rhs.min_exp + rhs.coeffs.len() as isize);
        let mut coeffs = vec![BigRational::zero(); (hi - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.min_exp - lo) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.min_exp - lo) as usize + i] += c;
        }
        LaurentPoly::new(lo, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.min_exp + rhs.min_exp, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.min_exp + i as isize;
            use num_traits::Signed;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            use num_traits::One;
            let show = e == 0 || !mag.is_one();
            if show {
                if mag.denom().is_one() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
            }
            match e {
                0 => {}
                1 => write!(f, "{}q", if show { "*" } else { "" })?,
                _ => write!(f, "{}q^{}", if show { "*" } else { "" }, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_trims_both_ends() {
        let lp = LaurentPoly::new(
            -2,
            vec![
                BigRational::zero(),
                BigRational::from_integer(BigInt::from(3)),
                BigRational::zero(),
            ],
        );
        assert_eq!(lp.min_exp(), Some(-1));
        assert_eq!(lp.max_exp(), Some(-1));
    }

    #[test]
    fn equality_after_common_shift() {
        // q + q^{-1} built two different ways
        let a = LaurentPoly::from_terms(&[(-1, 1), (1, 1)]);
        let b = &LaurentPoly::from_terms(&[(-2, 1), (0, 1)])
            * &LaurentPoly::monomial(BigRational::from_integer(BigInt::from(1)), 1);
        assert_eq!(a, b);
    }

    #[test]
    fn y_minus_two_is_q_plus_qinv() {
        assert_eq!(
            LaurentPoly::y_minus(2),
            LaurentPoly::from_terms(&[(-1, 1), (1, 1)])
        );
    }

    #[test]
    fn mul_collects_exponents() {
        // (q + q^{-1})^2 = q^2 + 2 + q^{-2}
        let s = LaurentPoly::from_terms(&[(-1, 1), (1, 1)]);
        let sq = &s * &s;
        assert_eq!(sq, LaurentPoly::from_terms(&[(-2, 1), (0, 2), (2, 1)]));
    }

    #[test]
    fn exact_division() {
        // (q^{-2} - q^2) / (q^{-1} - q) = q^{-1} + q
        let num = LaurentPoly::from_terms(&[(-2, 1), (2, -1)]);
        let den = LaurentPoly::from_terms(&[(-1, 1), (1, -1)]);
        assert_eq!(
            num.exact_div(&den).unwrap(),
            LaurentPoly::from_terms(&[(-1, 1), (1, 1)])
        );
        // remainder cases give None
        let odd = LaurentPoly::from_terms(&[(-1, 1), (0, 1)]);
        assert!(odd.exact_div(&den).is_none());
        assert!(num.exact_div(&LaurentPoly::zero()).is_none());
    }
}
