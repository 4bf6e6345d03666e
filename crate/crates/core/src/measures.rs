//! Cyclotomic measures on the unit circle and the graph → measure catalog.
//!
//! Four atoms span everything: the uniform measure `d` on the circle, the
//! uniform measure `d_n` on `2n`-th roots of unity, and their `α`-weighted
//! versions with density `α(u) = 2·Im(u)^2 = 1 - (u^2 + u^{-2})/2`. The
//! density is only ever used through its action on moments,
//! `m_k -> m_k - (m_{k+2} + m_{k-2})/2`, which keeps every number rational.
//! Derived measures from the catalog are expanded into this basis:
//! `d'_n = 2 d_{2n} - d_n` and the Dirac pair `(δ_i + δ_{-i})/2 = d'_1`.

use crate::algebra::{rat, ratio, BigRational, Poly, PowerSeries, RationalFunction};
use crate::error::Error;
use crate::graphs::{build_graph, loop_counts_upto, truncate_infinite, BipartiteGraph, GraphName};
use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Basis measure on the unit circle.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum MeasureAtom {
    /// `d`: uniform on the whole circle.
    UniformCircle,
    /// `d_n`: uniform on the `2n`-th roots of unity (`n >= 1`).
    UniformRoots(u32),
    /// `α·d`: semicircle pushforward.
    AlphaCircle,
    /// `α·d_n` (`n >= 2`; `α·d_1` is the null measure and is excluded).
    AlphaRoots(u32),
}

impl MeasureAtom {
    fn validate(&self) {
        match *self {
            MeasureAtom::UniformRoots(n) => assert!(n >= 1, "d_n needs n >= 1"),
            MeasureAtom::AlphaRoots(n) => {
                assert!(n >= 2, "alpha d_n needs n >= 2 (alpha d_1 is null)")
            }
            _ => {}
        }
    }

    /// `∫ u^k` against this atom.
    pub fn moment(&self, k: i64) -> BigRational {
        fn uniform_roots(n: u32, k: i64) -> BigRational {
            if k.rem_euclid(2 * n as i64) == 0 {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        }
        fn uniform_circle(k: i64) -> BigRational {
            if k == 0 {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        }
        match *self {
            MeasureAtom::UniformCircle => uniform_circle(k),
            MeasureAtom::UniformRoots(n) => uniform_roots(n, k),
            MeasureAtom::AlphaCircle => {
                uniform_circle(k) - (uniform_circle(k + 2) + uniform_circle(k - 2)) / rat(2)
            }
            MeasureAtom::AlphaRoots(n) => {
                uniform_roots(n, k) - (uniform_roots(n, k + 2) + uniform_roots(n, k - 2)) / rat(2)
            }
        }
    }

    /// Exact closed-form `T`-series of the atom.
    pub fn t_series(&self) -> RationalFunction {
        match *self {
            // T(d) = 1/(1-q)
            MeasureAtom::UniformCircle => {
                RationalFunction::new(Poly::one(), Poly::from_ints(&[1, -1])).unwrap()
            }
            // T(d_n) = (1+q^n) / ((1-q)(1-q^n))
            MeasureAtom::UniformRoots(n) => {
                let n = n as usize;
                let mut num = vec![0i64; n + 1];
                num[0] = 1;
                num[n] = 1;
                let den = &Poly::one_minus_power(1) * &Poly::one_minus_power(n);
                RationalFunction::new(Poly::from_ints(&num), den).unwrap()
            }
            // T(α·d) = 1
            MeasureAtom::AlphaCircle => RationalFunction::one(),
            // T(α·d_n) = (1-q^{n-1}) / (1-q^n)
            MeasureAtom::AlphaRoots(n) => RationalFunction::cyclo_ratio(n as usize - 1, n as usize),
        }
    }

    /// JSON/display key, e.g. `AlphaRoots(3)`.
    pub fn key(&self) -> String {
        match *self {
            MeasureAtom::UniformCircle => "UniformCircle".to_string(),
            MeasureAtom::UniformRoots(n) => format!("UniformRoots({n})"),
            MeasureAtom::AlphaCircle => "AlphaCircle".to_string(),
            MeasureAtom::AlphaRoots(n) => format!("AlphaRoots({n})"),
        }
    }

    /// Mathematical display name, e.g. `alpha*d_3`.
    pub fn pretty(&self) -> String {
        match *self {
            MeasureAtom::UniformCircle => "d".to_string(),
            MeasureAtom::UniformRoots(n) => format!("d_{n}"),
            MeasureAtom::AlphaCircle => "alpha*d".to_string(),
            MeasureAtom::AlphaRoots(n) => format!("alpha*d_{n}"),
        }
    }
}

/// Finite rational linear combination of measure atoms.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CycloMeasure {
    terms: BTreeMap<MeasureAtom, BigRational>,
}

impl CycloMeasure {
    pub fn new() -> Self {
        CycloMeasure {
            terms: BTreeMap::new(),
        }
    }

    pub fn atom(atom: MeasureAtom) -> Self {
        let mut m = CycloMeasure::new();
        m.add_term(atom, BigRational::one());
        m
    }

    pub fn add_term(&mut self, atom: MeasureAtom, coeff: BigRational) {
        atom.validate();
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(atom).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&atom);
        }
    }

    pub fn from_terms(terms: &[(MeasureAtom, BigRational)]) -> Self {
        let mut m = CycloMeasure::new();
        for (atom, c) in terms {
            m.add_term(*atom, c.clone());
        }
        m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MeasureAtom, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut m = CycloMeasure::new();
        for (atom, coeff) in &self.terms {
            m.add_term(*atom, coeff * c);
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = self.clone();
        for (atom, coeff) in &other.terms {
            m.add_term(*atom, coeff.clone());
        }
        m
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    /// Every atom has mass 1, so the total mass is the coefficient sum
    /// (equivalently the 0-th moment).
    pub fn total_mass(&self) -> BigRational {
        self.terms.values().sum()
    }

    /// `∫ u^k dm` by linearity.
    pub fn moment(&self, k: i64) -> BigRational {
        self.terms.iter().map(|(atom, c)| c * atom.moment(k)).sum()
    }

    /// `∫ (u + u^{-1})^k dm` by binomial expansion.
    pub fn pushforward_moment(&self, k: u32) -> BigRational {
        let mut acc = BigRational::zero();
        for j in 0..=k {
            let c = binomial(BigInt::from(k), BigInt::from(j));
            acc += BigRational::from_integer(c) * self.moment(k as i64 - 2 * j as i64);
        }
        acc
    }

    /// Exact `T`-series, extended from the atoms by linearity.
    pub fn t_series(&self) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        for (atom, c) in &self.terms {
            acc = &acc + &atom.t_series().scale(c);
        }
        acc
    }

    /// Truncated `T`-series reconstructed from moments alone, per the
    /// defining formula `T(q) = (2S(q^{1/2}) - 1)/(1 - q)`; the square root
    /// is realized by reindexing the even moment sequence, never by formal
    /// fractional powers. `None` if any odd moment is nonzero.
    pub fn t_series_from_moments(&self, order: usize) -> Option<PowerSeries> {
        let mut even = Vec::with_capacity(order + 1);
        for j in 0..=order {
            if !self.moment(2 * j as i64 - 1).is_zero() {
                return None;
            }
            even.push(self.moment(2 * j as i64));
        }
        // E(q) = 2S(q^{1/2}) - 1 = 1 + 2 sum_{j>=1} e_{2j} q^j
        let mut e_coeffs = vec![BigRational::zero(); order + 1];
        e_coeffs[0] = BigRational::one();
        for (j, m) in even.iter().enumerate().skip(1) {
            e_coeffs[j] = m * rat(2);
        }
        let e = PowerSeries::new(e_coeffs, order);
        let geom = PowerSeries::new(vec![BigRational::one(); order + 1], order);
        Some(e.mul(&geom))
    }

    /// Measure equality, decided on moments.
    ///
    /// Circle atoms must cancel exactly (they cannot be imitated by atoms
    /// of finite support); the rest is supported on `2L`-th roots of unity
    /// with `L` the lcm of the root orders, so moments `0..=2L` decide.
    pub fn equivalent(&self, other: &Self) -> bool {
        let diff = self.sub(other);
        let mut lcm: u64 = 1;
        for (atom, c) in &diff.terms {
            match atom {
                MeasureAtom::UniformCircle | MeasureAtom::AlphaCircle => {
                    if !c.is_zero() {
                        return false;
                    }
                }
                MeasureAtom::UniformRoots(n) | MeasureAtom::AlphaRoots(n) => {
                    lcm = lcm.lcm(&(*n as u64));
                }
            }
        }
        (0..=2 * lcm as i64).all(|k| diff.moment(k).is_zero())
    }
}

impl fmt::Display for CycloMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (atom, c) in &self.terms {
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
            if mag.is_one() {
                write!(f, "{}", atom.pretty())?;
            } else if mag.denom().is_one() {
                write!(f, "{}*{}", mag.numer(), atom.pretty())?;
            } else {
                write!(f, "({}/{})*{}", mag.numer(), mag.denom(), atom.pretty())?;
            }
        }
        Ok(())
    }
}

/// `d'_n = 2 d_{2n} - d_n`.
pub fn d_prime(n: u32) -> CycloMeasure {
    CycloMeasure::from_terms(&[
        (MeasureAtom::UniformRoots(2 * n), rat(2)),
        (MeasureAtom::UniformRoots(n), rat(-1)),
    ])
}

/// `α·d'_n = 2 α·d_{2n} - α·d_n`; the `n = 1` case drops the null term.
pub fn alpha_d_prime(n: u32) -> CycloMeasure {
    let mut m = CycloMeasure::new();
    m.add_term(MeasureAtom::AlphaRoots(2 * n), rat(2));
    if n >= 2 {
        m.add_term(MeasureAtom::AlphaRoots(n), rat(-1));
    }
    m
}

/// A catalog entry: either an explicit cyclotomic measure or the marker
/// that none exists, with the exact `T`-series kept in both cases.
#[derive(Clone, Debug)]
pub enum CatalogMeasure {
    Cyclotomic(CycloMeasure),
    /// No cyclotomic expression exists; the `T`-series is still exact.
    NonCyclotomic {
        t_series: RationalFunction,
    },
}

#[derive(Clone, Debug)]
pub struct MeasureCatalogEntry {
    pub graph: GraphName,
    pub measure: CatalogMeasure,
}

/// T-series of E7 and E8 in closed form.
fn exceptional_t(name: &GraphName) -> RationalFunction {
    let product = |ds: &[usize]| -> Poly {
        ds.iter()
            .fold(Poly::one(), |acc, &d| &acc * &Poly::one_minus_power(d))
    };
    match name {
        // T7 = (1-q^9)(1-q^12) / ((1-q^4)(1-q^18))
        GraphName::E7 => RationalFunction::new(product(&[9, 12]), product(&[4, 18])).unwrap(),
        // T8 = (1-q^10)(1-q^15)(1-q^18) / ((1-q^5)(1-q^9)(1-q^30))
        GraphName::E8 => {
            RationalFunction::new(product(&[10, 15, 18]), product(&[5, 9, 30])).unwrap()
        }
        _ => unreachable!("only E7 and E8 lack cyclotomic measures"),
    }
}

/// The graph → measure catalog.
pub fn catalog_measure(name: &GraphName) -> Result<MeasureCatalogEntry, Error> {
    use MeasureAtom::*;
    let half = ratio(1, 2);
    let measure = match *name {
        // A(n) = A_{m-1} with m = n+1: alpha d_{n+1}
        GraphName::A(n) => {
            if n < 1 {
                return Err(Error::InvalidParameter("A(n) needs n >= 1".into()));
            }
            CatalogMeasure::Cyclotomic(CycloMeasure::atom(AlphaRoots(n + 1)))
        }
        // D(n) = D_{m+1} with m = n-1: alpha d'_{n-1}
        GraphName::D(n) => {
            if n < 3 {
                return Err(Error::InvalidParameter("D(n) needs n >= 3".into()));
            }
            CatalogMeasure::Cyclotomic(alpha_d_prime(n - 1))
        }
        GraphName::E6 => {
            // alpha d_12 + (d_12 - d_6 - d_4 + d_3)/2
            let mut m = CycloMeasure::atom(AlphaRoots(12));
            m.add_term(UniformRoots(12), half.clone());
            m.add_term(UniformRoots(6), -half.clone());
            m.add_term(UniformRoots(4), -half.clone());
            m.add_term(UniformRoots(3), half.clone());
            CatalogMeasure::Cyclotomic(m)
        }
        GraphName::E7 | GraphName::E8 => CatalogMeasure::NonCyclotomic {
            t_series: exceptional_t(name),
        },
        // 2n-gon: d_n
        GraphName::A1Ext(v) => {
            if v < 4 || v % 2 != 0 {
                return Err(Error::InvalidParameter(
                    "A1ext needs an even count >= 4".into(),
                ));
            }
            CatalogMeasure::Cyclotomic(CycloMeasure::atom(UniformRoots(v / 2)))
        }
        // D1ext(n) = D_{m+2}^{(1)} with m = n-2: (d'_1 + d_{n-2})/2
        GraphName::D1Ext(n) => {
            if n < 4 {
                return Err(Error::InvalidParameter("D1ext(n) needs n >= 4".into()));
            }
            let mut m = d_prime(1);
            m.add_term(UniformRoots(n - 2), BigRational::one());
            CatalogMeasure::Cyclotomic(m.scale(&half))
        }
        GraphName::E6Ext => {
            let mut m = CycloMeasure::atom(AlphaRoots(3));
            m.add_term(UniformRoots(2), half.clone());
            m.add_term(UniformRoots(3), -half.clone());
            CatalogMeasure::Cyclotomic(m)
        }
        GraphName::E7Ext => {
            let mut m = CycloMeasure::atom(AlphaRoots(4));
            m.add_term(UniformRoots(3), half.clone());
            m.add_term(UniformRoots(4), -half.clone());
            CatalogMeasure::Cyclotomic(m)
        }
        GraphName::E8Ext => {
            let mut m = CycloMeasure::atom(AlphaRoots(6));
            m.add_term(UniformRoots(5), half.clone());
            m.add_term(UniformRoots(6), -half.clone());
            CatalogMeasure::Cyclotomic(m)
        }
        GraphName::AInf => CatalogMeasure::Cyclotomic(CycloMeasure::atom(AlphaCircle)),
        GraphName::DInf => {
            // (d'_1 + d)/2
            let mut m = d_prime(1);
            m.add_term(UniformCircle, BigRational::one());
            CatalogMeasure::Cyclotomic(m.scale(&half))
        }
        GraphName::AZz => CatalogMeasure::Cyclotomic(CycloMeasure::atom(UniformCircle)),
        GraphName::F(_, _, _) => {
            return Err(Error::UnknownGraph(format!(
                "{name} has no catalog measure entry; only the named ADE families do"
            )));
        }
    };
    Ok(MeasureCatalogEntry {
        graph: *name,
        measure,
    })
}

/// Check that the pushforward moments of `m` equal the loop counts of the
/// graph for all `k <= k_max`. Symbolic names go through truncations with
/// the stability window `size = 2 k_max + 2`.
pub fn verify_measure(name: &GraphName, m: &CycloMeasure, k_max: usize) -> Result<bool, Error> {
    let g: BipartiteGraph = if name.is_symbolic() {
        truncate_infinite(name, 2 * k_max as u32 + 2)?
    } else {
        build_graph(name)?
    };
    Ok(verify_measure_against_graph(&g, m, k_max))
}

/// The same check against an already-built graph.
pub fn verify_measure_against_graph(g: &BipartiteGraph, m: &CycloMeasure, k_max: usize) -> bool {
    let loops = loop_counts_upto(g, k_max);
    (0..=k_max)
        .all(|k| m.pushforward_moment(2 * k as u32) == BigRational::from_integer(loops[k].clone()))
}
