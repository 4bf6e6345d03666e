//! Dense univariate polynomials with arbitrary-precision rational coefficients.
//!
//! The formal variable is anonymous; callers document whether it stands for
//! `z`, `q` or `y`. Coefficients are stored from degree 0 upward and the
//! highest-degree coefficient is kept nonzero, so the zero polynomial is the
//! empty coefficient vector and its degree is `None` rather than a numeric
//! sentinel.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial over the rationals, always trimmed of trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    /// Build from low-to-high coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `c * x^exp`.
    pub fn monomial(c: BigRational, exp: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); exp + 1];
        coeffs[exp] = c;
        Poly { coeffs }
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// The polynomial `1 - x^d`.
    pub fn one_minus_power(d: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); d + 1];
        coeffs[0] = BigRational::one();
        coeffs[d] = -BigRational::one();
        Poly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Coefficient of `x^i` (zero beyond the stored range).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor (callers guard).
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / &lead;
            if !q.is_zero() {
                for i in 0..dd {
                    let t = &q * &divisor.coeffs[i];
                    rem[k + i] -= t;
                }
                quo[k] = q;
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (Poly::new(quo), Poly::new(rem))
    }

    /// Exact quotient, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.into_monic()
    }

    /// Scale so the leading coefficient is 1 (zero stays zero).
    pub fn into_monic(self) -> Poly {
        match self.leading_coeff() {
            None => self,
            Some(lc) if lc.is_one() => self,
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Substitute `x -> x^2`, spreading coefficients over even exponents.
    pub fn inflate_square(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); 2 * (self.coeffs.len() - 1) + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c.clone();
        }
        Poly { coeffs }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::new(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::new(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = c.is_negative();
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", fmt_rational(&mag))?;
            }
            if i == 1 {
                write!(f, "{}q", if show_coeff { "*" } else { "" })?;
            } else if i > 1 {
                write!(f, "{}q^{}", if show_coeff { "*" } else { "" }, i)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_degree_is_none() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::from_ints(&[0, 0, 0]).degree(), None);
        assert_eq!(Poly::from_ints(&[5]).degree(), Some(0));
        assert_eq!(Poly::from_ints(&[0, 0, 3]).degree(), Some(2));
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = Poly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.coeffs().len(), 2);
    }

    #[test]
    fn mul_and_div_round_trip() {
        let a = Poly::from_ints(&[1, 0, -1]); // 1 - q^2
        let b = Poly::from_ints(&[1, 1, 1]); // 1 + q + q^2
        let prod = &a * &b;
        let (q, r) = prod.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, a);
    }

    #[test]
    fn exact_div_detects_remainder() {
        let a = Poly::from_ints(&[1, 1]);
        let b = Poly::from_ints(&[1, 0, 1]);
        assert!(b.exact_div(&a).is_none());
        // (1 - q^6) / (1 - q) = 1 + q + ... + q^5
        let num = Poly::one_minus_power(6);
        let den = Poly::one_minus_power(1);
        let q = num.exact_div(&den).unwrap();
        assert_eq!(q, Poly::from_ints(&[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn gcd_is_monic() {
        let a = Poly::one_minus_power(6);
        let b = Poly::one_minus_power(4);
        let g = a.gcd(&b);
        // gcd(1-q^6, 1-q^4) = q^2 - 1 after monic normalization
        assert_eq!(g, Poly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn display_readable() {
        let p = Poly::from_ints(&[1, -1, 0, 2]);
        assert_eq!(p.to_string(), "1 - q + 2*q^3");
    }
}
