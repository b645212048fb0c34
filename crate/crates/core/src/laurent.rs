//! Laurent polynomials in `u = q^{1/2}` with exact rational coefficients.
//!
//! The Hecke parameter `p = (q − 1)/q^{1/2}` is the ring element `u − u⁻¹`,
//! so every structure constant of the normalized Hecke algebra lives here and
//! identities become decidable equalities.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    /// exponent → nonzero coefficient
    terms: BTreeMap<i32, BigRational>,
}

impl LaurentPoly {
    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn monomial(c: BigRational, exponent: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        LaurentPoly { terms }
    }

    /// `u^k`
    pub fn u_pow(k: i32) -> Self {
        Self::monomial(BigRational::one(), k)
    }

    /// The Hecke parameter `p = u − u⁻¹`.
    pub fn hecke_p() -> Self {
        Self::u_pow(1) - Self::u_pow(-1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coefficient(&self, exponent: i32) -> BigRational {
        self.terms.get(&exponent).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == 0)
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exponent: i32, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Substitutes `u → u⁻¹`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, v)| (-e, v.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Evaluates at a real `u`.
    pub fn eval(&self, u: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&k, c)| c.to_f64().unwrap_or(f64::NAN) * u.powi(k))
            .sum()
    }

    /// Evaluates at `u = √q`, i.e. at the parameter `q`.
    pub fn eval_at_q(&self, q: f64) -> f64 {
        self.eval(q.sqrt())
    }

    /// Exact evaluation at a rational `q`, valid when only even powers of
    /// `u` occur.
    pub fn eval_even_at_q(&self, q: &BigRational) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (&k, c) in &self.terms {
            if k % 2 != 0 {
                return None;
            }
            let half = k / 2;
            let power = if half >= 0 {
                num_traits::pow(q.clone(), half as usize)
            } else {
                num_traits::pow(q.recip(), (-half) as usize)
            };
            acc += c * power;
        }
        Some(acc)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        Self::u_pow(0)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&k, c) in &rhs.terms {
            self.add_term(k, c);
        }
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                out.add_term(a + b, &(ca * cb));
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl From<BigRational> for LaurentPoly {
    fn from(c: BigRational) -> Self {
        LaurentPoly::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending powers of `u`, e.g. `u^2 - 1 + 3/2*u^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&k, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = magnitude.is_one();
            match k {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !unit {
                        write!(f, "{magnitude}*")?;
                    }
                    if k == 1 {
                        f.write_str("u")?;
                    } else {
                        write!(f, "u^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn p_squared() {
        let p = LaurentPoly::hecke_p();
        let p2 = &p * &p;
        // u² − 2 + u⁻²
        assert_eq!(p2.coefficient(2), r(1, 1));
        assert_eq!(p2.coefficient(0), r(-2, 1));
        assert_eq!(p2.coefficient(-2), r(1, 1));
        assert_eq!(p.invert_variable(), -p.clone());
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let a = LaurentPoly::u_pow(3);
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).terms().count(), 0);
    }

    #[test]
    fn display() {
        let x = LaurentPoly::u_pow(2) - LaurentPoly::one() + LaurentPoly::monomial(r(3, 2), -1);
        assert_eq!(x.to_string(), "u^2 - 1 + 3/2*u^-1");
        assert_eq!(LaurentPoly::hecke_p().to_string(), "u - u^-1");
        assert_eq!((-LaurentPoly::u_pow(1)).to_string(), "-u");
    }

    #[test]
    fn evaluation() {
        let p = LaurentPoly::hecke_p();
        let q: f64 = 0.25;
        assert!((p.eval_at_q(q) - (q - 1.0) / q.sqrt()).abs() < 1e-15);
        let q2 = &p * &p; // (q−1)²/q
        assert_eq!(q2.eval_even_at_q(&r(1, 4)), Some(r(9, 4)));
        assert_eq!(p.eval_even_at_q(&r(1, 4)), None);
    }
}
