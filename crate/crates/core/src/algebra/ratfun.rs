//! Exact rational functions in one variable.
//!
//! Stored in canonical form: numerator and denominator share no polynomial
//! factor and the denominator is monic, so derived equality coincides with
//! mathematical equality. The variable is anonymous; `z`, `q` and `y` are
//! naming conventions of the callers, and the substitutions between them
//! are explicit operations.

use super::poly::Poly;
use super::power_series::PowerSeries;
use crate::error::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Build `num/den`, reducing to canonical form. Errors on a zero
    /// denominator.
    pub fn new(num: Poly, den: Poly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num: Poly::zero(),
                den: Poly::one(),
            });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        RationalFunction::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Poly::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RationalFunction::from_poly(Poly::constant(c))
    }

    /// The variable itself.
    pub fn var() -> Self {
        RationalFunction::from_poly(Poly::from_ints(&[0, 1]))
    }

    /// Quotient of `1 - q^a` by `1 - q^b`.
    pub fn cyclo_ratio(a: usize, b: usize) -> Self {
        RationalFunction::new(Poly::one_minus_power(a), Poly::one_minus_power(b))
            .expect("denominator nonzero")
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is the constant 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn eval_origin(&self) -> Result<BigRational, Error> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        Ok(self.num.coeff(0) / d0)
    }

    pub fn recip(&self) -> Result<Self, Error> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalFunction::new(self.num.scale(c), self.den.clone()).expect("denominator unchanged")
    }

    /// Formal power-series expansion at the origin through `order`.
    ///
    /// Requires a nonzero constant term in the denominator.
    pub fn expand(&self, order: usize) -> Result<PowerSeries, Error> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        let mut coeffs = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = self.num.coeff(k);
            for j in 1..=k {
                let dj = self.den.coeff(j);
                if !dj.is_zero() {
                    acc -= dj * &coeffs[k - j];
                }
            }
            coeffs.push(acc / &d0);
        }
        Ok(PowerSeries::new(coeffs, order))
    }

    /// Evaluate at `z = q/(1+q)^2`, returning an exact rational function
    /// in `q`. Denominators are cleared by `(1+q)^{2m}` with
    /// `m = max(deg num, deg den)`.
    pub fn substitute_z(&self) -> Self {
        if self.is_zero() {
            return RationalFunction::zero();
        }
        let m = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        let one_plus_q_sq = Poly::from_ints(&[1, 2, 1]); // (1+q)^2
        let apply = |p: &Poly| -> Poly {
            let mut acc = Poly::zero();
            for i in 0..=p.degree().unwrap_or(0) {
                let c = p.coeff(i);
                if c.is_zero() {
                    continue;
                }
                // c * q^i * (1+q)^{2(m-i)}
                let term = one_plus_q_sq.pow(m - i).shift_up(i).scale(&c);
                acc = &acc + &term;
            }
            acc
        };
        RationalFunction::new(apply(&self.num), apply(&self.den))
            .expect("denominator stays nonzero under substitution")
    }

    /// Substitute `q -> q^2`.
    pub fn substitute_square(&self) -> Self {
        RationalFunction::new(self.num.inflate_square(), self.den.inflate_square())
            .expect("denominator stays nonzero")
    }

    pub fn pow(&self, e: usize) -> Self {
        RationalFunction::new(self.num.pow(e), self.den.pow(e)).expect("denominator nonzero")
    }
}

/// Cross-multiplication equality: `num(a)*den(b) == num(b)*den(a)`.
///
/// With canonical storage this agrees with `==`, but it is the definition
/// every identity check goes through.
pub fn ratfun_equal(a: &RationalFunction, b: &RationalFunction) -> bool {
    &a.num * &b.den == &b.num * &a.den
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero product")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero product")
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero product")
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division of rational functions by zero");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
            .expect("nonzero denominator")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() && self.den.coeff(0).is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self)
    }
}

/// `q^k` as a helper for assembling closed forms.
pub fn q_power(k: usize) -> RationalFunction {
    RationalFunction::from_poly(Poly::monomial(BigRational::from_integer(BigInt::one()), k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_ints(num), Poly::from_ints(den)).unwrap()
    }

    #[test]
    fn canonical_reduction() {
        // (1-q^2)/(1-q^3) reduces to (1+q)/(1+q+q^2)
        let f = rf(&[1, 0, -1], &[1, 0, 0, -1]);
        assert_eq!(f.num(), &Poly::from_ints(&[1, 1]));
        assert_eq!(f.den(), &Poly::from_ints(&[1, 1, 1]));
    }

    #[test]
    fn ratfun_equal_cancels_common_factors() {
        // 1/(1-q) vs (1+q)/(1-q^2)
        let a = rf(&[1], &[1, -1]);
        let b = rf(&[1, 1], &[1, 0, -1]);
        assert!(ratfun_equal(&a, &b));
        assert_eq!(a, b);
        // q vs q^2
        assert!(!ratfun_equal(&rf(&[0, 1], &[1]), &rf(&[0, 0, 1], &[1])));
    }

    #[test]
    fn fork_path_series_identity_n4() {
        // (1+q^{n-1})/(1+q^n) = 2(1-q^{2n-1})/(1-q^{2n}) - (1-q^{n-1})/(1-q^n), n = 4
        let lhs = rf(&[1, 0, 0, 1], &[1, 0, 0, 0, 1]);
        let two = RationalFunction::constant(BigRational::from_integer(BigInt::from(2)));
        let rhs =
            &(&two * &RationalFunction::cyclo_ratio(7, 8)) - &RationalFunction::cyclo_ratio(3, 4);
        assert!(ratfun_equal(&lhs, &rhs));
    }

    #[test]
    fn expand_geometric() {
        let f = rf(&[1], &[1, -1]);
        let s = f.expand(3).unwrap();
        assert_eq!(
            s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            vec!["1", "1", "1", "1"]
        );
    }

    #[test]
    fn expand_derived_long_division() {
        // (1-q^2)/(1-q^3) through order 6: frozen by hand long division
        let f = rf(&[1, 0, -1], &[1, 0, 0, -1]);
        let s = f.expand(6).unwrap();
        let expect: Vec<i64> = vec![1, 0, -1, 1, 0, -1, 1];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(s.coeff(k), BigRational::from_integer(BigInt::from(*e)));
        }
    }

    #[test]
    fn expand_polynomial_pads() {
        let f = rf(&[1, 1], &[1]);
        let s = f.expand(2).unwrap();
        assert_eq!(s.coeff(0), BigRational::one());
        assert_eq!(s.coeff(1), BigRational::one());
        assert!(s.coeff(2).is_zero());
    }

    #[test]
    fn expand_rejects_pole_at_origin() {
        let f = RationalFunction {
            num: Poly::one(),
            den: Poly::from_ints(&[0, 1]),
        };
        assert!(matches!(f.expand(3), Err(Error::PoleAtOrigin)));
    }

    #[test]
    fn substitute_z_constants_and_var() {
        assert!(ratfun_equal(
            &RationalFunction::one().substitute_z(),
            &RationalFunction::one()
        ));
        // z -> q/(1+q)^2
        let z = RationalFunction::var();
        let expect = rf(&[0, 1], &[1, 2, 1]);
        assert!(ratfun_equal(&z.substitute_z(), &expect));
    }

    #[test]
    fn substitute_z_geometric() {
        // 1/(1-z) -> (1+q)^2 / (1+q+q^2)
        let f = rf(&[1], &[1, -1]);
        let expect = rf(&[1, 2, 1], &[1, 1, 1]);
        assert!(ratfun_equal(&f.substitute_z(), &expect));
    }
}
