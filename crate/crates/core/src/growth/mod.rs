//! Spherical growth series `W(t) = Σ_w t^{|w|}` and its radius of
//! convergence ρ.
//!
//! For a right-angled system the series is rational:
//! `W(t) = (1+t)^n / Σ_C (−t)^{|C|} (1+t)^{n−|C|}`, the sum running over the
//! cliques of the commutation graph (including the empty clique). Every
//! series built here is checked term by term against enumerated sphere
//! counts before it is returned.

mod poly;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub use poly::IntPoly;

use crate::coxeter::{CoxeterSystem, GenSet};
use crate::error::{Error, Result};
use crate::rational::{int, ratio, to_f64};

/// Number of Taylor coefficients compared against enumeration, capacity
/// permitting.
pub const CHECKED_TERMS: usize = 12;

/// A rational function `numerator / denominator` with integer coefficients
/// and `denominator(0) > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    numerator: IntPoly,
    denominator: IntPoly,
    /// Number of leading coefficients confirmed by enumeration.
    checked_terms: usize,
}

impl RationalSeries {
    /// Reduces to lowest terms; fails when `denominator(0) = 0`.
    pub fn new(numerator: IntPoly, denominator: IntPoly) -> Result<Self> {
        if denominator.coeff(0).is_zero() {
            return Err(Error::input("denominator must not vanish at t = 0"));
        }
        let g = numerator.gcd(&denominator);
        let (mut n, mut d) = if g.degree().unwrap_or(0) > 0 {
            (
                numerator.div_exact(&g).unwrap_or(numerator.clone()),
                denominator.div_exact(&g).unwrap_or(denominator.clone()),
            )
        } else {
            (numerator, denominator)
        };
        if d.coeff(0).is_negative() {
            let minus = -BigInt::one();
            n = n.scale(&minus);
            d = d.scale(&minus);
        }
        Ok(RationalSeries {
            numerator: n,
            denominator: d,
            checked_terms: 0,
        })
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.denominator
    }

    pub fn checked_terms(&self) -> usize {
        self.checked_terms
    }

    /// Taylor coefficients `a_0, …, a_n`, by exact power-series division.
    pub fn taylor(&self, n: usize) -> Vec<BigRational> {
        let d0 = BigRational::from_integer(self.denominator.coeff(0));
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = BigRational::from_integer(self.numerator.coeff(k));
            for j in 1..=k.min(self.denominator.degree().unwrap_or(0)) {
                acc -= BigRational::from_integer(self.denominator.coeff(j)) * &out[k - j];
            }
            out.push(acc / &d0);
        }
        out
    }

    /// Taylor coefficients as integers; `None` if any is fractional.
    pub fn integer_taylor(&self, n: usize) -> Option<Vec<BigInt>> {
        self.taylor(n)
            .into_iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Exact value at a rational point; `None` at a pole.
    pub fn eval_rational(&self, t: &BigRational) -> Option<BigRational> {
        let d = self.denominator.eval_rational(t);
        (!d.is_zero()).then(|| self.numerator.eval_rational(t) / d)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.numerator.eval(t) / self.denominator.eval(t)
    }

    /// Radius of convergence: the smallest positive root of the
    /// denominator, or `+∞` for a polynomial.
    pub fn rho(&self) -> Result<Rho> {
        rho_of_denominator(&self.denominator)
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

/// Cliques of the commutation graph, including the empty one.
pub fn cliques(sys: &CoxeterSystem) -> Vec<GenSet> {
    fn extend(sys: &CoxeterSystem, current: GenSet, candidates: GenSet, out: &mut Vec<GenSet>) {
        out.push(current);
        for s in candidates.iter() {
            let mut next = current;
            next.insert(s);
            let remaining = candidates
                .intersection(sys.strict_commuting(s))
                .iter()
                .filter(|&t| t > s)
                .collect();
            extend(sys, next, remaining, out);
        }
    }
    let mut out = Vec::new();
    extend(sys, GenSet::EMPTY, sys.all(), &mut out);
    out
}

/// `W(t)` in lowest terms, verified against enumerated sphere counts for the
/// first [`CHECKED_TERMS`] coefficients (fewer if the ball cap intervenes).
pub fn growth_series(sys: &CoxeterSystem) -> Result<RationalSeries> {
    let n = sys.rank();
    let one_plus_t = IntPoly::one_plus_t();
    let minus_t = IntPoly::from_i64(&[0, -1]);
    let mut denominator = IntPoly::default();
    for c in cliques(sys) {
        let k = c.len();
        denominator = denominator.add(&minus_t.pow(k).mul(&one_plus_t.pow(n - k)));
    }
    let mut series = RationalSeries::new(one_plus_t.pow(n), denominator)?;

    let predicted = series
        .integer_taylor(CHECKED_TERMS)
        .ok_or_else(|| Error::Internal("growth series has fractional coefficients".into()))?;
    let mut terms = 0;
    let mut total = BigInt::zero();
    let cap = BigInt::from(sys.ball_cap());
    for a in &predicted {
        total += a;
        if total > cap {
            break;
        }
        terms += 1;
    }
    if terms > 0 {
        let counts = sys.sphere_counts(terms - 1)?;
        for (k, (a, b)) in predicted.iter().zip(&counts).enumerate() {
            if *a != BigInt::from(*b) {
                return Err(Error::Internal(format!(
                    "growth series coefficient {k} is {a} but enumeration gives {b}"
                )));
            }
        }
    }
    series.checked_terms = terms;
    Ok(series)
}

/// The radius of convergence of `W(t)`.
///
/// For an infinite group ρ is the unique root of the square-free part of the
/// denominator inside an exact rational bracket `(lo, hi]` of width below
/// `10⁻¹²`, and no root lies in `(0, lo]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rho {
    Infinite,
    Root {
        square_free: IntPoly,
        lo: BigRational,
        hi: BigRational,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RhoSummary {
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
}

pub const GRID_STEPS: i64 = 10_000;
pub const BISECTION_WIDTH: f64 = 1e-12;

fn rho_of_denominator(denominator: &IntPoly) -> Result<Rho> {
    if denominator.degree().unwrap_or(0) == 0 {
        return Ok(Rho::Infinite);
    }
    let sf = denominator.square_free_part();
    let zero = BigRational::zero();
    let base = sf.sign_at(&zero);
    // Grid scan for the first sign change or exact root in (0, 1].
    let mut bracket = None;
    let mut prev = zero.clone();
    for k in 1..=GRID_STEPS {
        let t = ratio(k, GRID_STEPS);
        let sign = sf.sign_at(&t);
        if sign == Ordering::Equal {
            bracket = Some((t.clone(), t));
            break;
        }
        if sign != base {
            bracket = Some((prev, t));
            break;
        }
        prev = t;
    }
    let Some((mut lo, mut hi)) = bracket else {
        if sf.count_roots(&zero, &int(1)) > 0 {
            return Err(Error::Internal(
                "denominator has a root in (0, 1] missed by the grid scan".into(),
            ));
        }
        return Ok(Rho::Infinite);
    };
    if lo != hi {
        let width = BigRational::new(BigInt::one(), BigInt::from(10u64.pow(13)));
        let two = int(2);
        while &hi - &lo > width {
            let mid = (&lo + &hi) / &two;
            match sf.sign_at(&mid) {
                Ordering::Equal => {
                    lo = mid.clone();
                    hi = mid;
                    break;
                }
                s if s == base => lo = mid,
                _ => hi = mid,
            }
        }
    }
    // Certificate: nothing in (0, lo) besides, and exactly one root in [lo, hi].
    let below = if lo == hi {
        sf.count_roots(&zero, &lo) - 1
    } else {
        sf.count_roots(&zero, &lo)
    };
    if below != 0 {
        return Err(Error::Internal(format!(
            "{below} root(s) of the denominator lie below the located bracket"
        )));
    }
    Ok(Rho::Root {
        square_free: sf,
        lo,
        hi,
    })
}

impl Rho {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Rho::Infinite)
    }

    /// Midpoint of the bracket, or `+∞`.
    pub fn value(&self) -> f64 {
        match self {
            Rho::Infinite => f64::INFINITY,
            Rho::Root { lo, hi, .. } => to_f64(&((lo + hi) / int(2))),
        }
    }

    pub fn summary(&self) -> RhoSummary {
        match self {
            Rho::Infinite => RhoSummary {
                value: f64::INFINITY,
                lo: f64::INFINITY,
                hi: f64::INFINITY,
            },
            Rho::Root { lo, hi, .. } => RhoSummary {
                value: self.value(),
                lo: to_f64(lo),
                hi: to_f64(hi),
            },
        }
    }

    /// Exact comparison of a rational `x > 0` with ρ.
    pub fn compare(&self, x: &BigRational) -> Ordering {
        match self {
            Rho::Infinite => Ordering::Less,
            Rho::Root { square_free, lo, hi } => {
                if x < lo {
                    Ordering::Less
                } else if x > hi {
                    Ordering::Greater
                } else {
                    let at_zero = square_free.sign_at(&BigRational::zero());
                    match square_free.sign_at(x) {
                        Ordering::Equal => Ordering::Equal,
                        s if s == at_zero => Ordering::Less,
                        _ => Ordering::Greater,
                    }
                }
            }
        }
    }

    /// Whether `q ∈ [ρ, ρ⁻¹]`, decided exactly. Empty when ρ = +∞.
    pub fn interval_contains(&self, q: &BigRational) -> bool {
        if self.is_infinite() || !q.is_positive() {
            return false;
        }
        self.compare(q) != Ordering::Less && self.compare(&q.recip()) != Ordering::Less
    }
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rho::Infinite => f.write_str("inf"),
            Rho::Root { .. } => write!(f, "{:.12}", self.value()),
        }
    }
}

/// ρ of the system's growth series.
pub fn rho(sys: &CoxeterSystem) -> Result<Rho> {
    let r = growth_series(sys)?.rho()?;
    if !sys.is_finite() && r.is_infinite() {
        return Err(Error::Internal(
            "infinite group but the growth series has no pole in (0, 1]".into(),
        ));
    }
    Ok(r)
}

/// `Σ_{n ≤ radius} a_n qⁿ` with exact sphere counts from the series.
pub fn partial_sum(series: &RationalSeries, q: &BigRational, radius: usize) -> BigRational {
    let mut acc = BigRational::zero();
    let mut power = BigRational::one();
    for a in series.taylor(radius) {
        acc += a * &power;
        power *= q;
    }
    acc
}

pub fn rational_to_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn approx(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::catalog;

    #[test]
    fn named_series() {
        let s = growth_series(&catalog::free_product(1)).unwrap();
        assert_eq!(s.to_string(), "(1 + t) / (1)");
        let s = growth_series(&catalog::free_product(3)).unwrap();
        assert_eq!(s.to_string(), "(1 + t) / (1 - 2t)");
        assert_eq!(s.checked_terms(), CHECKED_TERMS + 1);
        let s = growth_series(&catalog::z2_free_z2_squared()).unwrap();
        assert_eq!(s.to_string(), "(1 + 2t + t^2) / (1 - t - t^2)");
        let s = growth_series(&catalog::pentagon()).unwrap();
        assert_eq!(s.to_string(), "(1 + 2t + t^2) / (1 - 3t + t^2)");
        let s = growth_series(&catalog::abelian(2)).unwrap();
        assert_eq!(s.to_string(), "(1 + 2t + t^2) / (1)");
    }

    #[test]
    fn rho_values() {
        let r = rho(&catalog::free_product(3)).unwrap();
        assert_eq!(r.compare(&ratio(1, 2)), Ordering::Equal);
        assert!((r.value() - 0.5).abs() < 1e-12);
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        let r = rho(&catalog::z2_free_z2_squared()).unwrap();
        assert!((r.value() - golden).abs() < 1e-12);
        assert_eq!(r.compare(&ratio(618, 1000)), Ordering::Less);
        assert_eq!(r.compare(&ratio(619, 1000)), Ordering::Greater);
        assert!(rho(&catalog::abelian(3)).unwrap().is_infinite());
        assert!(rho(&catalog::infinite_dihedral()).unwrap().value() == 1.0);
    }

    #[test]
    fn capacity_limits_check() {
        let sys = catalog::free_product(4).with_ball_cap(100);
        let s = growth_series(&sys).unwrap();
        assert!(s.checked_terms() < CHECKED_TERMS);
        assert!(s.checked_terms() > 2);
    }

    #[test]
    fn partial_sums() {
        let s = growth_series(&catalog::free_product(3)).unwrap();
        // 1 + 1.5n at q = 1/2
        assert_eq!(partial_sum(&s, &ratio(1, 2), 4), int(7));
        assert_eq!(s.eval_rational(&ratio(1, 4)), Some(ratio(5, 2)));
    }
}
