use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A polynomial in `t` with integer coefficients, lowest degree first and no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `1 + t`
    pub fn one_plus_t() -> Self {
        Self::from_i64(&[1, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Gcd of the coefficients, positive; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        let sign = if self.0.last().is_some_and(|l| l.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        Self::new(self.0.iter().map(|x| x / &c * &sign).collect())
    }

    pub fn eval_rational(&self, t: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * t + BigRational::from_integer(c.clone())
        })
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| {
            acc * t + num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN)
        })
    }

    pub fn sign_at(&self, t: &BigRational) -> Ordering {
        self.eval_rational(t).cmp(&BigRational::zero())
    }

    fn to_rational(&self) -> Vec<BigRational> {
        self.0.iter().map(|c| BigRational::from_integer(c.clone())).collect()
    }

    fn from_rational(coeffs: Vec<BigRational>) -> Self {
        let lcm = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        Self::new(
            coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
                .collect(),
        )
        .primitive()
    }

    /// Quotient and remainder over the rationals.
    fn divrem_rational(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem: Vec<BigRational> = a.to_vec();
        let db = b.len() - 1;
        let lead = b[db].clone();
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let mut quot = vec![BigRational::zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + db] / &lead;
            if !c.is_zero() {
                for (j, bj) in b.iter().enumerate() {
                    rem[k + j] -= &c * bj;
                }
            }
            quot[k] = c;
        }
        rem.truncate(db);
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
        (quot, rem)
    }

    /// Exact division; `None` when `other` does not divide `self` over Z.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = Self::divrem_rational(&self.to_rational(), &other.to_rational());
        if !r.is_empty() || q.iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(Self::new(q.into_iter().map(|c| c.to_integer()).collect()))
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.to_rational();
        let mut b = other.to_rational();
        while !b.is_empty() {
            let (_, r) = Self::divrem_rational(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            return Self::default();
        }
        Self::from_rational(a)
    }

    /// The product of the distinct irreducible factors, `p / gcd(p, p')`.
    pub fn square_free_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.primitive();
        }
        self.primitive()
            .div_exact(&g)
            .expect("gcd divides its argument")
            .primitive()
    }

    /// Sturm sequence of a square-free polynomial.
    pub fn sturm_sequence(&self) -> Vec<Vec<BigRational>> {
        let mut seq = vec![self.to_rational(), self.derivative().to_rational()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_empty() {
                seq.pop();
                break;
            }
            let (_, r) = Self::divrem_rational(&seq[n - 2], &seq[n - 1]);
            if r.is_empty() {
                break;
            }
            seq.push(r.into_iter().map(|c| -c).collect());
        }
        seq
    }

    /// Number of distinct real roots in `(a, b]`, by Sturm's theorem.
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        let seq = self.sturm_sequence();
        let changes = |t: &BigRational| -> usize {
            let signs: Vec<Ordering> = seq
                .iter()
                .map(|p| {
                    p.iter()
                        .rev()
                        .fold(BigRational::zero(), |acc, c| acc * t + c)
                        .cmp(&BigRational::zero())
                })
                .filter(|o| *o != Ordering::Equal)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        changes(a).saturating_sub(changes(b))
    }
}

impl fmt::Display for IntPoly {
    /// Ascending degree, e.g. `1 - t - t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let unit = magnitude.is_one();
            match k {
                0 => write!(f, "{magnitude}")?,
                1 if unit => f.write_str("t")?,
                1 => write!(f, "{magnitude}t")?,
                _ if unit => write!(f, "t^{k}")?,
                _ => write!(f, "{magnitude}t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn arithmetic() {
        let a = IntPoly::from_i64(&[1, 1]);
        let b = IntPoly::from_i64(&[1, -2]);
        let ab = a.mul(&b);
        assert_eq!(ab, IntPoly::from_i64(&[1, -1, -2]));
        assert_eq!(ab.div_exact(&a), Some(b.clone()));
        assert_eq!(ab.gcd(&a.pow(2)), a);
        assert_eq!(IntPoly::from_i64(&[1, 2, 1]).square_free_part(), a);
        assert_eq!(ab.to_string(), "1 - t - 2t^2");
        assert_eq!(IntPoly::from_i64(&[0, 0, 3]).to_string(), "3t^2");
    }

    #[test]
    fn sturm_counts() {
        // (1 − 2t)(1 + t): roots 1/2 and −1.
        let p = IntPoly::from_i64(&[1, -1, -2]);
        assert_eq!(p.count_roots(&ratio(0, 1), &ratio(1, 1)), 1);
        assert_eq!(p.count_roots(&ratio(-2, 1), &ratio(1, 1)), 2);
        assert_eq!(p.count_roots(&ratio(0, 1), &ratio(1, 4)), 0);
        assert_eq!(p.count_roots(&ratio(1, 4), &ratio(1, 2)), 1);
    }
}
