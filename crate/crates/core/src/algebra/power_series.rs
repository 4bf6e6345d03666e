//! Truncated formal power series with exact rational coefficients.

use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;

/// A power series known through a fixed truncation order: exactly
/// `order + 1` stored coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    /// Build from coefficients, padding with zeros or truncating to
    /// `order + 1` entries.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries::new(Vec::new(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> PowerSeries {
        PowerSeries::new(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    pub fn add(&self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        PowerSeries { coeffs }
    }

    pub fn sub(&self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        PowerSeries { coeffs }
    }

    /// Product truncated to the shorter order.
    pub fn mul(&self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for i in 0..=order {
            let a = self.coeff(i);
            if a.is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                let b = rhs.coeff(j);
                if !b.is_zero() {
                    coeffs[i + j] += &a * &b;
                }
            }
        }
        PowerSeries { coeffs }
    }

    /// Substitute `q -> q^2`, interleaving zeros; result keeps the
    /// requested order.
    pub fn inflate_square(&self, order: usize) -> PowerSeries {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if 2 * i <= order {
                coeffs[2 * i] = c.clone();
            }
        }
        PowerSeries { coeffs }
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PowerSeries{:?}",
            self.coeffs
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
        )
    }
}
