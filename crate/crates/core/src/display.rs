//! Display-only decimal rendering of measure weights at roots of unity.
//!
//! The weight of a cyclotomic measure at the point `exp(i*pi*j/L)` is
//! `A + B*sin^2(pi*j/L)` with rational `A`, `B`; only the `sin^2` factor is
//! irrational. It is rendered here to any requested number of decimal
//! digits through rational Taylor partial sums (Machin's formula for pi,
//! alternating-series tails for the error bound). Nothing in the exact
//! computation path ever consumes these decimals.

use crate::algebra::{rat, ratio, BigRational};
use crate::measures::{CycloMeasure, MeasureAtom};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `pi` as a rational with error below `10^-(digits+guard)`.
fn pi_rational(scale_digits: usize) -> BigRational {
    // Machin: pi = 16 arctan(1/5) - 4 arctan(1/239).
    let arctan_inv = |d: i64| -> BigRational {
        let x = ratio(1, d);
        let x2 = &x * &x;
        let mut term = x;
        let mut acc = BigRational::zero();
        let mut k = 0i64;
        let threshold = BigRational::new(BigInt::one(), BigInt::from(10).pow(scale_digits as u32));
        loop {
            let contrib = &term / rat(2 * k + 1);
            if contrib.abs() < threshold {
                break;
            }
            if k % 2 == 0 {
                acc += contrib;
            } else {
                acc -= contrib;
            }
            term = &term * &x2;
            k += 1;
        }
        acc
    };
    arctan_inv(5) * rat(16) - arctan_inv(239) * rat(4)
}

/// `cos(x)` for rational `x` in `[0, 7]` by Taylor partial sums.
fn cos_rational(x: &BigRational, scale_digits: usize) -> BigRational {
    let x2 = x * x;
    let mut term = BigRational::one();
    let mut acc = BigRational::zero();
    let threshold = BigRational::new(BigInt::one(), BigInt::from(10).pow(scale_digits as u32));
    let mut k = 0i64;
    loop {
        if term.abs() < threshold && k > 4 {
            break;
        }
        if k % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
        k += 1;
        term = term * &x2 / rat((2 * k - 1) * 2 * k);
    }
    acc
}

/// Decimal rendering of a rational to `digits` places, rounded half-up so
/// that guarded approximations of exact decimals render stably.
pub fn decimal_string(x: &BigRational, digits: usize) -> String {
    let neg = x.is_negative();
    let x = x.abs();
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = (x * BigRational::from_integer(scale.clone()) + ratio(1, 2)).to_integer();
    let (int_part, frac_part) = scaled.div_rem(&scale);
    let mut frac = frac_part.to_string();
    while frac.len() < digits {
        frac.insert(0, '0');
    }
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

/// `sin^2(pi * j / l)` to `digits` decimal places.
pub fn sin_squared_decimal(j: u64, l: u64, digits: usize) -> String {
    let guard = digits + 10;
    let pi = pi_rational(guard);
    // sin^2(t) = (1 - cos(2t))/2 with 2t = 2 pi j / l reduced mod 2 pi.
    let frac = ratio(2 * (j % l) as i64, l as i64); // in [0, 2)
    let angle = pi * frac;
    let s2 = (BigRational::one() - cos_rational(&angle, guard)) / rat(2);
    decimal_string(&s2, digits)
}

/// One rendered support point of a measure.
pub struct PointWeight {
    /// Point as `exp(i*pi*j/L)`.
    pub label: String,
    pub decimal: String,
}

/// Decimal weights of the root-of-unity part of a measure, plus a rendering
/// of any continuous (circle) part. Weight at `exp(i*pi*j/L)` is
/// `A + B*sin^2(pi*j/L)` where `A` collects `d_n` contributions and `B` the
/// `alpha d_n` ones.
pub fn point_weights(m: &CycloMeasure, digits: usize) -> (Vec<PointWeight>, Option<String>) {
    let mut l: u64 = 1;
    let mut continuous: Vec<String> = Vec::new();
    for (atom, c) in m.terms() {
        match atom {
            MeasureAtom::UniformRoots(n) | MeasureAtom::AlphaRoots(n) => {
                l = l.lcm(&(*n as u64));
            }
            MeasureAtom::UniformCircle => {
                continuous.push(format!("({})*d", fraction(c)));
            }
            MeasureAtom::AlphaCircle => {
                continuous.push(format!("({})*alpha*d", fraction(c)));
            }
        }
    }
    let guard = digits + 10;
    let pi = pi_rational(guard);
    let mut points = Vec::new();
    for j in 0..2 * l {
        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        for (atom, c) in m.terms() {
            match atom {
                MeasureAtom::UniformRoots(n) => {
                    let n = *n as u64;
                    if (j * n).is_multiple_of(l) {
                        a += c / rat(2 * n as i64);
                    }
                }
                MeasureAtom::AlphaRoots(n) => {
                    let n = *n as u64;
                    if (j * n).is_multiple_of(l) {
                        // alpha(u) = 2 sin^2(theta): weight 2 sin^2 / (2n)
                        b += c / rat(n as i64);
                    }
                }
                _ => {}
            }
        }
        if a.is_zero() && b.is_zero() {
            continue;
        }
        let s2 = {
            let frac = ratio(2 * (j % l) as i64, l as i64);
            let angle = &pi * frac;
            (BigRational::one() - cos_rational(&angle, guard)) / rat(2)
        };
        let value = a + b * s2;
        // alpha kills the points at ±1; don't print vanishing weights.
        let tiny = BigRational::new(BigInt::one(), BigInt::from(10).pow(digits as u32 + 5));
        if value.abs() < tiny {
            continue;
        }
        points.push(PointWeight {
            label: format!("exp(i*pi*{j}/{l})"),
            decimal: decimal_string(&value, digits),
        });
    }
    let cont = if continuous.is_empty() {
        None
    } else {
        Some(continuous.join(" + "))
    };
    (points, cont)
}

fn fraction(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}
