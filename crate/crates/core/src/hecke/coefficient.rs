use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::laurent::LaurentPoly;

/// Scalars a Hecke element can carry: exact Laurent polynomials in
/// `u = q^{1/2}` or floating-point numbers at a fixed `q`.
pub trait Coefficient: Clone + Debug + PartialEq + Zero + One + Send + Sync {
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(&other.neg_ref());
        out
    }

    /// Complex conjugation; both coefficient rings are real.
    fn conj(&self) -> Self {
        self.clone()
    }

    /// Equality up to `tol` (relative for floats); exact equality for
    /// Laurent polynomials.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;

    fn from_i64(n: i64) -> Self;

    fn is_exact() -> bool;
}

impl Coefficient for f64 {
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol * self.abs().max(other.abs()).max(1.0)
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn is_exact() -> bool {
        false
    }
}

impl Coefficient for LaurentPoly {
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn from_i64(n: i64) -> Self {
        LaurentPoly::from_int(n)
    }

    fn is_exact() -> bool {
        true
    }
}

/// `base^k` for `k ≥ 0`.
pub fn coefficient_pow<C: Coefficient>(base: &C, k: usize) -> C {
    let mut out = C::one();
    for _ in 0..k {
        out = out.mul_ref(base);
    }
    out
}
