//! From loop counts to closed forms: the Poincaré series as an exact
//! rational function, the Jones `Θ`-series, and the `T`-series.
//!
//! The Poincaré series is computed once and for all from the even block `L`
//! of the squared adjacency matrix by the Cramer ratio
//! `f(z) = det(1 - zK) / det(1 - zL)`, where `K` drops the distinguished
//! row and column. The tail recursions provide an independent route to the
//! same series; their agreement is part of the verification suite.

use crate::algebra::{
    poly_det, rat, ratfun_equal, BigRational, LaurentPoly, Poly, PowerSeries, RationalFunction,
};
use crate::graphs::{decompose, loop_counts_upto, BipartiteDecomposition, BipartiteGraph};
use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

/// Default truncation order for series identities; exceeds twice the
/// largest period (30) occurring in the catalog.
pub const DEFAULT_ORDER: usize = 40;

/// All series data attached to a graph.
///
/// `poincare` is a rational function of `z`, the rest live in `q`. The two
/// truncations are computed from loop counts alone (integer matrix powers
/// plus moment inversion) so they are independent witnesses for the
/// closed-form pipeline.
#[derive(Clone, Debug)]
pub struct SeriesBundle {
    pub poincare: RationalFunction,
    pub theta: RationalFunction,
    pub t_series: RationalFunction,
    pub stieltjes_mu: PowerSeries,
    pub stieltjes_eps: PowerSeries,
}

/// Poincaré series from the even-block decomposition:
/// `det(1 - zK) / det(1 - zL)`.
pub fn poincare_resolvent(d: &BipartiteDecomposition) -> RationalFunction {
    let det_l = char_det(&d.l);
    let k: Vec<Vec<i64>> = d.l[1..].iter().map(|row| row[1..].to_vec()).collect();
    let det_k = char_det(&k);
    RationalFunction::new(det_k, det_l).expect("det(1 - zL) is nonzero")
}

/// `det(1 - zM)` for an integer matrix, as a polynomial in `z`.
fn char_det(m: &[Vec<i64>]) -> Poly {
    let n = m.len();
    let entries: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let diag = if i == j {
                        LaurentPoly::one()
                    } else {
                        LaurentPoly::zero()
                    };
                    &diag - &LaurentPoly::monomial(rat(m[i][j]), 1)
                })
                .collect()
        })
        .collect();
    let det = poly_det(&entries).expect("square by construction");
    let (p, shift) = det.to_poly_with_shift();
    assert!(
        shift >= 0,
        "characteristic determinant has no negative powers"
    );
    p.shift_up(shift as usize)
}

/// Jones series of a graph with Poincaré series `f`:
/// `Θ(q) = q + (1-q)/(1+q) * f(q/(1+q)^2)`.
pub fn jones_theta(f: &RationalFunction) -> RationalFunction {
    let q = RationalFunction::var();
    let ratio = RationalFunction::new(Poly::from_ints(&[1, -1]), Poly::from_ints(&[1, 1]))
        .expect("1+q nonzero");
    &q + &(&ratio * &f.substitute_z())
}

/// `T(q) = (Θ(q) - q)/(1 - q)`.
pub fn t_series(theta: &RationalFunction) -> RationalFunction {
    let q = RationalFunction::var();
    let one_minus_q = RationalFunction::from_poly(Poly::from_ints(&[1, -1]));
    &(theta - &q) / &one_minus_q
}

/// The full pipeline for a finite graph.
pub fn graph_t_series(g: &BipartiteGraph) -> RationalFunction {
    t_series(&jones_theta(&poincare_resolvent(&decompose(g))))
}

/// Moments of the circle measure recovered from loop counts.
///
/// If `m_{2k}` are the loop counts, the even circle moments `e_{2j}` are the
/// unique symmetric solution of
/// `m_j = sum_i C(j, i) e_{j - 2i}` with `e_{-k} = e_k` and all odd moments
/// zero; the system is triangular and inverts exactly.
#[allow(clippy::needless_range_loop)] // e is read while it is being built
pub fn circle_moments_from_loops(loops: &[BigInt]) -> Vec<BigRational> {
    let mut e: Vec<BigRational> = Vec::with_capacity(loops.len());
    for (k, m) in loops.iter().enumerate() {
        // Solve for e_{2k} given e_0 .. e_{2k-2}.
        let j = 2 * k;
        let mut acc = BigRational::from_integer(m.clone());
        if k > 0 {
            acc -= BigRational::from_integer(binomial(BigInt::from(j), BigInt::from(k))) * &e[0];
            for i in 1..k {
                let c = binomial(BigInt::from(j), BigInt::from(k - i));
                acc -= BigRational::from_integer(c * BigInt::from(2)) * &e[i];
            }
            acc /= rat(2);
        }
        e.push(acc);
    }
    e
}

/// Loop counts reconstructed from even circle moments:
/// `m_j = sum C(j,i) e_{|j-2i|}`.
pub fn loops_from_circle_moments(e: &[BigRational], k_max: usize) -> Vec<BigRational> {
    (0..=k_max)
        .map(|k| {
            let j = 2 * k;
            let mut acc = BigRational::zero();
            for i in 0..=j {
                let half = (j as i64 - 2 * i as i64).unsigned_abs() as usize / 2;
                let c = binomial(BigInt::from(j), BigInt::from(i));
                acc += BigRational::from_integer(c) * &e[half];
            }
            acc
        })
        .collect()
}

/// Assemble the series bundle for a finite graph through the given order.
pub fn bundle(g: &BipartiteGraph, order: usize) -> SeriesBundle {
    let poincare = poincare_resolvent(&decompose(g));
    let theta = jones_theta(&poincare);
    let t = t_series(&theta);
    let loops = loop_counts_upto(g, order / 2 + 1);
    // sigma(z) = f(z^2): loop counts interleaved with zeros.
    let mut mu = vec![BigRational::zero(); order + 1];
    for (k, m) in loops.iter().enumerate() {
        if 2 * k <= order {
            mu[2 * k] = BigRational::from_integer(m.clone());
        }
    }
    let eps_even = circle_moments_from_loops(&loops);
    let mut eps = vec![BigRational::zero(); order + 1];
    for (j, e) in eps_even.iter().enumerate() {
        if 2 * j <= order {
            eps[2 * j] = e.clone();
        }
    }
    SeriesBundle {
        poincare,
        theta,
        t_series: t,
        stieltjes_mu: PowerSeries::new(mu, order),
        stieltjes_eps: PowerSeries::new(eps, order),
    }
}

/// Check the two structural links through the given order:
/// the moment series of the real spectral measure is `f(z^2)`, and the
/// circle Stieltjes transform satisfies `2S(q) = Θ(q^2) - q^2 + 1`.
pub fn verify_stieltjes_links(b: &SeriesBundle, order: usize) -> bool {
    // sigma(z) = f(z^2)
    let f_series = match b.poincare.expand(order / 2) {
        Ok(s) => s,
        Err(_) => return false,
    };
    if f_series.inflate_square(order) != b.stieltjes_mu.truncate(order) {
        return false;
    }
    // 2S(q) - 1 = Θ(q^2) - q^2
    let theta_sq = b.theta.substitute_square();
    let q2 = RationalFunction::from_poly(Poly::from_ints(&[0, 0, 1]));
    let rhs = match (&theta_sq - &q2).expand(order) {
        Ok(s) => s,
        Err(_) => return false,
    };
    let two = PowerSeries::new(vec![rat(2)], order);
    let one = PowerSeries::new(vec![rat(1)], order);
    let lhs = b.stieltjes_eps.truncate(order).mul(&two).sub(&one);
    lhs == rhs
}

/// The bundle consistency checks plus closed-form agreement, as one named
/// predicate for the verification suite.
pub fn t_matches(g: &BipartiteGraph, expected: &RationalFunction) -> bool {
    ratfun_equal(&graph_t_series(g), expected)
}

/// Express `f` with `f(0) = 1` as a finite product of `(1 - q^d)^{x_d}`,
/// peeling the exponents off the power-series expansion degree by degree.
///
/// Returns `None` when `f` is not such a product (the representation, when
/// it exists, is unique, and the result is verified exactly before being
/// returned).
pub fn cyclo_product_form(f: &RationalFunction) -> Option<Vec<(usize, i64)>> {
    if f.is_zero() {
        return None;
    }
    match f.eval_origin() {
        Ok(v) if v.is_one() => {}
        _ => return None,
    }
    let deg_bound = f.num().degree().unwrap_or(0) + f.den().degree().unwrap_or(0);
    let order = 2 * deg_bound + 2;
    let mut g = f.expand(order).ok()?;
    let mut exponents: Vec<(usize, i64)> = Vec::new();
    // Total weighted degree of the unreduced factor product; bounded by a
    // small multiple of the reduced degree for every true factorization,
    // and the exact-verification cost is quadratic in it.
    let mut weighted_degree = 0usize;
    for d in 1..=order.max(1) {
        if d > order {
            break;
        }
        let c = g.coeff(d);
        if c.is_zero() {
            continue;
        }
        if !c.denom().is_one() {
            return None;
        }
        let x: i64 = {
            let n = c.numer();
            i64::try_from(n.clone()).ok()?
        };
        // In a true factorization, inverting the cyclotomic-multiplicity
        // relation bounds every exponent by the total reduced degree;
        // a larger candidate means the series is not such a product, and
        // raising 1 - q^d to a runaway power must not be attempted.
        if x.unsigned_abs() as usize > deg_bound.max(1) {
            return None;
        }
        weighted_degree += d * x.unsigned_abs() as usize;
        if weighted_degree > 6 * deg_bound + 12 {
            return None;
        }
        // g starts 1 + x q^d; multiplying by (1 - q^d)^x clears that term.
        let base = RationalFunction::from_poly(Poly::one_minus_power(d));
        let correction = if x > 0 {
            base.pow(x as usize)
        } else {
            base.pow((-x) as usize).recip().ok()?
        };
        let corr_series = correction.expand(order).ok()?;
        g = g.mul(&corr_series);
        exponents.push((d, -x));
        if exponents.len() > 64 {
            return None;
        }
    }
    // Exact verification: product of the factors must equal f.
    let mut prod = RationalFunction::one();
    for &(d, x) in &exponents {
        let base = RationalFunction::from_poly(Poly::one_minus_power(d));
        let piece = if x >= 0 {
            base.pow(x as usize)
        } else {
            base.pow((-x) as usize).recip().ok()?
        };
        prod = &prod * &piece;
    }
    if ratfun_equal(&prod, f) {
        Some(exponents)
    } else {
        None
    }
}

/// Human-readable factored form: `(1-q^6)(1-q^8)/((1-q^3)(1-q^12))`,
/// falling back to the raw `num/den` display when the series is not a pure
/// cyclotomic product.
pub fn factored_display(f: &RationalFunction) -> String {
    match cyclo_product_form(f) {
        Some(factors) => {
            let piece = |d: usize, x: i64| -> String {
                let inner = if d == 1 {
                    "1-q".to_string()
                } else {
                    format!("1-q^{d}")
                };
                if x == 1 {
                    format!("({inner})")
                } else {
                    format!("({inner})^{x}")
                }
            };
            let num_pieces: Vec<String> = factors
                .iter()
                .filter(|&&(_, x)| x > 0)
                .map(|&(d, x)| piece(d, x))
                .collect();
            let den_pieces: Vec<String> = factors
                .iter()
                .filter(|&&(_, x)| x < 0)
                .map(|&(d, x)| piece(d, -x))
                .collect();
            let num = num_pieces.concat();
            let den = if den_pieces.len() == 1 {
                den_pieces.concat()
            } else {
                format!("({})", den_pieces.concat())
            };
            match (num_pieces.is_empty(), den_pieces.is_empty()) {
                (true, true) => "1".to_string(),
                (false, true) => num,
                (true, false) => format!("1/{den}"),
                (false, false) => format!("{num}/{den}"),
            }
        }
        None => f.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{build_graph, GraphName};

    fn t_of(name: GraphName) -> RationalFunction {
        graph_t_series(&build_graph(&name).unwrap())
    }

    #[test]
    fn resolvent_single_edge_is_geometric() {
        let g = build_graph(&GraphName::A(2)).unwrap();
        let f = poincare_resolvent(&decompose(&g));
        let expect = RationalFunction::new(Poly::one(), Poly::from_ints(&[1, -1])).unwrap();
        assert!(ratfun_equal(&f, &expect));
    }

    #[test]
    fn resolvent_a3() {
        // A(3): L = [[1,1],[1,1]], K = [1]: f = (1-z)/(1-2z)
        let g = build_graph(&GraphName::A(3)).unwrap();
        let f = poincare_resolvent(&decompose(&g));
        let expect =
            RationalFunction::new(Poly::from_ints(&[1, -1]), Poly::from_ints(&[1, -2])).unwrap();
        assert!(ratfun_equal(&f, &expect));
        // Loop counts 1, 1, 2, 4, 8 frozen from the matrix-power oracle.
        let s = f.expand(4).unwrap();
        for (k, m) in [1i64, 1, 2, 4, 8].iter().enumerate() {
            assert_eq!(s.coeff(k), rat(*m));
        }
    }

    #[test]
    fn e6_poincare_expansion() {
        // Frozen from the walk oracle: the branch point sits at distance 2
        // from the base vertex, so length-6 walks already deviate from the
        // Catalan numbers (the excursion UUUDDD realizes twice).
        let g = build_graph(&GraphName::E6).unwrap();
        let f = poincare_resolvent(&decompose(&g));
        let s = f.expand(5).unwrap();
        for (k, m) in [1i64, 1, 2, 6, 21, 77].iter().enumerate() {
            assert_eq!(s.coeff(k), rat(*m), "coefficient {k}");
        }
    }

    #[test]
    fn theta_of_single_edge_matches_t_form() {
        // T(A(2)) = (1-q^2)/(1-q^3)
        assert!(ratfun_equal(
            &t_of(GraphName::A(2)),
            &RationalFunction::cyclo_ratio(2, 3)
        ));
    }

    #[test]
    fn t_closed_forms_for_paths_and_forks() {
        // A(4): (1-q^4)/(1-q^5); D(5): (1+q^3)/(1+q^4)
        assert!(ratfun_equal(
            &t_of(GraphName::A(4)),
            &RationalFunction::cyclo_ratio(4, 5)
        ));
        let d5 = RationalFunction::new(
            Poly::from_ints(&[1, 0, 0, 1]),
            Poly::from_ints(&[1, 0, 0, 0, 1]),
        )
        .unwrap();
        assert!(ratfun_equal(&t_of(GraphName::D(5)), &d5));
    }

    #[test]
    fn t_e6_matches_closed_form() {
        let num = &Poly::one_minus_power(6) * &Poly::one_minus_power(8);
        let den = &Poly::one_minus_power(3) * &Poly::one_minus_power(12);
        let expect = RationalFunction::new(num, den).unwrap();
        assert!(ratfun_equal(&t_of(GraphName::E6), &expect));
    }

    #[test]
    fn t_e8ext_matches_closed_form() {
        let num = Poly::one_minus_power(30);
        let den =
            &(&Poly::one_minus_power(6) * &Poly::one_minus_power(10)) * &Poly::one_minus_power(15);
        let expect = RationalFunction::new(num, den).unwrap();
        assert!(ratfun_equal(&t_of(GraphName::E8Ext), &expect));
    }

    #[test]
    fn theta_constant_gives_t_one() {
        // Θ(q) = q + (1 - q) has T = 1.
        let theta = RationalFunction::from_poly(Poly::from_ints(&[1]));
        assert!(ratfun_equal(&t_series(&theta), &RationalFunction::one()));
    }

    #[test]
    fn stieltjes_links_hold() {
        for name in [GraphName::A(2), GraphName::E7, GraphName::D1Ext(6)] {
            let g = build_graph(&name).unwrap();
            let b = bundle(&g, DEFAULT_ORDER);
            assert!(verify_stieltjes_links(&b, DEFAULT_ORDER), "{name}");
        }
    }

    #[test]
    fn corrupted_theta_fails_stieltjes() {
        let g = build_graph(&GraphName::A(2)).unwrap();
        let mut b = bundle(&g, 10);
        b.theta = &b.theta + &RationalFunction::from_poly(Poly::from_ints(&[0, 0, 0, 1]));
        assert!(!verify_stieltjes_links(&b, 10));
    }

    #[test]
    fn moment_inversion_round_trips() {
        let g = build_graph(&GraphName::E7).unwrap();
        let loops = loop_counts_upto(&g, 12);
        let e = circle_moments_from_loops(&loops);
        let back = loops_from_circle_moments(&e, 12);
        for (k, m) in loops.iter().enumerate() {
            assert_eq!(back[k], BigRational::from_integer(m.clone()));
        }
    }

    #[test]
    fn product_form_bails_out_quickly_on_non_products() {
        // Poincaré and Jones series are not cyclotomic products; the
        // peeling must reject them instead of building runaway powers.
        for name in [GraphName::A(8), GraphName::D(12), GraphName::E8Ext] {
            let g = build_graph(&name).unwrap();
            let f = poincare_resolvent(&decompose(&g));
            assert!(cyclo_product_form(&f).is_none(), "{name} poincare");
            let theta = jones_theta(&f);
            assert!(cyclo_product_form(&theta).is_none(), "{name} theta");
        }
    }

    #[test]
    fn product_form_recovers_displays() {
        let t6 = t_of(GraphName::E6);
        let mut factors = cyclo_product_form(&t6).unwrap();
        factors.sort();
        assert_eq!(factors, vec![(3, -1), (6, 1), (8, 1), (12, -1)]);
        assert_eq!(factored_display(&t6), "(1-q^6)(1-q^8)/((1-q^3)(1-q^12))");
        // 1 + q is (1-q^2)/(1-q).
        let f = RationalFunction::from_poly(Poly::from_ints(&[1, 1]));
        assert_eq!(cyclo_product_form(&f).unwrap(), vec![(1, -1), (2, 1)]);
        // A non-cyclotomic root (1 - q - q^2) defeats the peeling and the
        // display falls back to the raw quotient.
        let fib = RationalFunction::new(Poly::one(), Poly::from_ints(&[1, -1, -1])).unwrap();
        assert!(cyclo_product_form(&fib).is_none());
        // Canonical storage scales the denominator monic.
        assert_eq!(factored_display(&fib), "(-1) / (-1 + q + q^2)");
    }

    #[test]
    fn den_divides_char_poly_of_l() {
        for name in [GraphName::E8, GraphName::D(7), GraphName::A1Ext(10)] {
            let g = build_graph(&name).unwrap();
            let d = decompose(&g);
            let f = poincare_resolvent(&d);
            let det_l = super::char_det(&d.l);
            assert!(det_l.exact_div(f.den()).is_some(), "{name}");
        }
    }
}
