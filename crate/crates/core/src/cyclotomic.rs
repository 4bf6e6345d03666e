//! Deciding cyclotomicity: is a `T`-series a rational combination of the
//! elementary series `T(d_n)`, `T(α·d_m)` over divisors of its period?
//!
//! Multiplying by `(1 - q)(1 - q^N)` turns every candidate into a degree-N
//! polynomial whose coefficients satisfy the palindrome `c_k = c_{N-k}`, so
//! the question becomes a finite linear system over the columns
//! `c_0 .. c_{N/2}`. Feasible instances come back with exact coefficients;
//! infeasible ones come back with a row-combination certificate `λ` with
//! `λᵀA = 0` and `λᵀb ≠ 0`, checkable by direct multiplication.

use crate::algebra::{rat, BigRational, Poly, RationalFunction};
use crate::error::Error;
use crate::graphs::{build_graph, GraphName};
use crate::measures::{CycloMeasure, MeasureAtom};
use crate::series::graph_t_series;
use num_traits::Zero;
use std::fmt;

/// Default search bound for [`infer_period`].
pub const PERIOD_BOUND: u32 = 120;

/// Row label of the linear system: `P(n)` is `(1-q)(1-q^N) T(d_n)`,
/// `Q(m)` is `(1-q)(1-q^N) T(α·d_m)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisLabel {
    P(u32),
    Q(u32),
}

impl BasisLabel {
    pub fn atom(&self) -> MeasureAtom {
        match *self {
            BasisLabel::P(n) => MeasureAtom::UniformRoots(n),
            BasisLabel::Q(m) => MeasureAtom::AlphaRoots(m),
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::P(n) => write!(f, "P_{n}"),
            BasisLabel::Q(m) => write!(f, "Q_{m}"),
        }
    }
}

/// A decomposition question: does `target_t` lie in the span of the
/// divisor basis for this period?
#[derive(Clone, Debug)]
pub struct DecompositionProblem {
    pub target_t: RationalFunction,
    pub period: u32,
}

/// The assembled linear system.
#[derive(Clone, Debug)]
pub struct SystemMatrix {
    pub period: u32,
    pub labels: Vec<BasisLabel>,
    /// Full degree-N polynomials, one per label.
    pub row_polys: Vec<Poly>,
    pub rhs_poly: Poly,
    /// Coefficient rows restricted to columns `c_0 .. c_{N/2}`.
    pub rows: Vec<Vec<BigRational>>,
    pub rhs: Vec<BigRational>,
}

/// Outcome of the solve.
#[derive(Clone, Debug)]
pub enum Decomposition {
    Feasible {
        /// Coefficient per basis label, from reduced-row-echelon
        /// back-substitution with free variables set to zero.
        coefficients: Vec<(BasisLabel, BigRational)>,
        null_space_dim: usize,
    },
    Infeasible {
        /// Certificate over the equations `c_0 .. c_{N/2}`:
        /// `witness ᵀ A = 0` but `witness ᵀ b != 0`.
        witness: Vec<BigRational>,
    },
}

impl Decomposition {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Decomposition::Feasible { .. })
    }

    /// The solution as a measure (feasible outcomes only).
    pub fn measure(&self) -> Option<CycloMeasure> {
        match self {
            Decomposition::Feasible { coefficients, .. } => {
                let mut m = CycloMeasure::new();
                for (label, c) in coefficients {
                    m.add_term(label.atom(), c.clone());
                }
                Some(m)
            }
            Decomposition::Infeasible { .. } => None,
        }
    }
}

fn divisors(n: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

/// `(1-q)(1-q^N) * t`, required to be a polynomial of degree <= N.
fn clear_denominator(t: &RationalFunction, period: u32) -> Result<Poly, Error> {
    let n = period as usize;
    let clear = RationalFunction::from_poly(&Poly::one_minus_power(1) * &Poly::one_minus_power(n));
    let cleared = &clear * t;
    if !cleared.is_polynomial() {
        return Err(Error::PeriodMismatch {
            period,
            reason: "clearing (1-q)(1-q^N) leaves a true denominator".into(),
        });
    }
    let p = cleared.num().clone();
    if p.degree().is_some_and(|d| d > n) {
        return Err(Error::PeriodMismatch {
            period,
            reason: format!("cleared polynomial has degree {} > N", p.degree().unwrap()),
        });
    }
    Ok(p)
}

fn palindrome_ok(p: &Poly, n: usize) -> bool {
    (0..=n / 2).all(|k| p.coeff(k) == p.coeff(n - k))
}

/// Assemble rows `P_n` (`n | N`), `Q_m` (`m | N`, `m >= 2`) and the cleared
/// target, verify the palindrome property, and restrict to the first half
/// of the columns.
pub fn build_system(problem: &DecompositionProblem) -> Result<SystemMatrix, Error> {
    let period = problem.period;
    let n = period as usize;
    let rhs_poly = clear_denominator(&problem.target_t, period)?;
    if !palindrome_ok(&rhs_poly, n) {
        return Err(Error::PeriodMismatch {
            period,
            reason: "target coefficients are not palindromic".into(),
        });
    }
    let mut labels = Vec::new();
    for d in divisors(period) {
        labels.push(BasisLabel::P(d));
    }
    for d in divisors(period) {
        if d >= 2 {
            labels.push(BasisLabel::Q(d));
        }
    }
    let mut row_polys = Vec::with_capacity(labels.len());
    for label in &labels {
        let t = CycloMeasure::atom(label.atom()).t_series();
        let p = clear_denominator(&t, period)
            .map_err(|e| Error::Internal(format!("basis row {label}: {e}")))?;
        if !palindrome_ok(&p, n) {
            return Err(Error::Internal(format!(
                "basis row {label} violates the palindrome c_k = c_{{N-k}}"
            )));
        }
        row_polys.push(p);
    }
    let cols = n / 2 + 1;
    let rows: Vec<Vec<BigRational>> = row_polys
        .iter()
        .map(|p| (0..cols).map(|k| p.coeff(k)).collect())
        .collect();
    let rhs: Vec<BigRational> = (0..cols).map(|k| rhs_poly.coeff(k)).collect();
    Ok(SystemMatrix {
        period,
        labels,
        row_polys,
        rhs_poly,
        rows,
        rhs,
    })
}

/// Exact Gaussian elimination. Equations are the columns `c_k`; unknowns
/// are the basis labels in display order (all `P_n`, then all `Q_m`).
// Row operations touch three matrices in lockstep; indexed loops are
// simpler than any zip here.
#[allow(clippy::needless_range_loop)]
pub fn solve(sys: &SystemMatrix) -> Decomposition {
    let n_unk = sys.labels.len();
    let n_eq = sys.rhs.len();
    // a[k][j] = coefficient of unknown j in equation k
    let mut a: Vec<Vec<BigRational>> = (0..n_eq)
        .map(|k| (0..n_unk).map(|j| sys.rows[j][k].clone()).collect())
        .collect();
    let mut b: Vec<BigRational> = sys.rhs.clone();
    // Row-operation tracker: reduced row i = sum_j e[i][j] * original row j.
    let mut e: Vec<Vec<BigRational>> = (0..n_eq)
        .map(|i| {
            (0..n_eq)
                .map(|j| if i == j { rat(1) } else { rat(0) })
                .collect()
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0usize;
    for col in 0..n_unk {
        let Some(piv) = (r..n_eq).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        b.swap(r, piv);
        e.swap(r, piv);
        let inv = a[r][col].clone().recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        b[r] *= &inv;
        for x in e[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n_eq {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col].clone();
            for j in 0..n_unk {
                let t = &factor * &a[r][j];
                a[i][j] -= t;
            }
            let t = &factor * &b[r];
            b[i] -= t;
            for j in 0..n_eq {
                let t = &factor * &e[r][j];
                e[i][j] -= t;
            }
        }
        pivots.push((r, col));
        r += 1;
        if r == n_eq {
            break;
        }
    }
    // Inconsistent row: all-zero coefficients with nonzero right side.
    for i in r..n_eq {
        if !b[i].is_zero() {
            debug_assert!(a[i].iter().all(|x| x.is_zero()));
            return Decomposition::Infeasible {
                witness: e[i].clone(),
            };
        }
    }
    let mut x = vec![BigRational::zero(); n_unk];
    for &(row, col) in &pivots {
        x[col] = b[row].clone();
    }
    let coefficients = sys
        .labels
        .iter()
        .zip(&x)
        .map(|(l, c)| (*l, c.clone()))
        .collect();
    Decomposition::Feasible {
        coefficients,
        null_space_dim: n_unk - pivots.len(),
    }
}

/// Check a feasible solution by reconstructing the target polynomial.
pub fn verify_solution(sys: &SystemMatrix, coefficients: &[(BasisLabel, BigRational)]) -> bool {
    if coefficients.len() != sys.labels.len() {
        return false;
    }
    let mut acc = Poly::zero();
    for ((label, c), (sys_label, poly)) in coefficients
        .iter()
        .zip(sys.labels.iter().zip(&sys.row_polys))
    {
        if label != sys_label {
            return false;
        }
        acc = &acc + &poly.scale(c);
    }
    acc == sys.rhs_poly
}

/// Check an infeasibility certificate by direct multiplication.
pub fn verify_witness(sys: &SystemMatrix, witness: &[BigRational]) -> bool {
    if witness.len() != sys.rhs.len() {
        return false;
    }
    let combo = |col_values: &dyn Fn(usize) -> BigRational| -> BigRational {
        witness
            .iter()
            .enumerate()
            .map(|(k, w)| w * col_values(k))
            .sum()
    };
    for row in &sys.rows {
        let dot: BigRational = combo(&|k| row[k].clone());
        if !dot.is_zero() {
            return false;
        }
    }
    let rhs_dot: BigRational = combo(&|k| sys.rhs[k].clone());
    !rhs_dot.is_zero()
}

/// Smallest `N` such that `(1-q)(1-q^N) t` is a polynomial of degree <= N,
/// searching upward from 1.
pub fn infer_period(t: &RationalFunction) -> Result<u32, Error> {
    infer_period_bounded(t, PERIOD_BOUND)
}

pub fn infer_period_bounded(t: &RationalFunction, bound: u32) -> Result<u32, Error> {
    if t.is_zero() {
        return Ok(1);
    }
    // t is stored reduced, so clearing gives a polynomial iff
    // den | (1-q)(1-q^N), and then the degree is exactly
    // deg num + 1 + N - deg den; the bound "<= N" does not depend on N.
    let deg_num = t.num().degree().unwrap_or(0);
    let deg_den = t.den().degree().unwrap_or(0);
    if deg_num + 1 > deg_den {
        return Err(Error::PeriodNotFound { bound });
    }
    for n in 1..=bound {
        let clear = &Poly::one_minus_power(1) * &Poly::one_minus_power(n as usize);
        if clear.exact_div(t.den()).is_some() {
            debug_assert!(clear_denominator(t, n).is_ok());
            return Ok(n);
        }
    }
    Err(Error::PeriodNotFound { bound })
}

/// Result of [`decompose_graph`]: the inferred period plus the outcome.
#[derive(Clone, Debug)]
pub struct GraphDecomposition {
    pub graph: GraphName,
    pub period: u32,
    pub decomposition: Decomposition,
}

/// Full pipeline: graph → T-series → inferred period → system → solve.
///
/// The period is always inferred, never hardcoded, so every catalog entry
/// exercises the search.
pub fn decompose_graph(name: &GraphName) -> Result<GraphDecomposition, Error> {
    decompose_graph_with_period(name, None)
}

pub fn decompose_graph_with_period(
    name: &GraphName,
    period_override: Option<u32>,
) -> Result<GraphDecomposition, Error> {
    let g = build_graph(name)?;
    let t = graph_t_series(&g);
    let period = match period_override {
        Some(p) => p,
        None => infer_period(&t)?,
    };
    let problem = DecompositionProblem {
        target_t: t,
        period,
    };
    let sys = build_system(&problem)?;
    let decomposition = solve(&sys);
    // Self-check both outcomes before handing them out.
    match &decomposition {
        Decomposition::Feasible { coefficients, .. } => {
            if !verify_solution(&sys, coefficients) {
                return Err(Error::Internal(format!(
                    "solver returned a non-solution for {name}"
                )));
            }
        }
        Decomposition::Infeasible { witness } => {
            if !verify_witness(&sys, witness) {
                return Err(Error::Internal(format!(
                    "solver returned a bad infeasibility witness for {name}"
                )));
            }
        }
    }
    Ok(GraphDecomposition {
        graph: *name,
        period,
        decomposition,
    })
}
