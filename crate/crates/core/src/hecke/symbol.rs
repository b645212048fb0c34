//! Symbols and truncated operators on `ℓ²(B_R)`, the span of `δ_w` for `w`
//! in a ball. Every truncated quantity carries an exactness flag: a value is
//! exact when the untruncated computation never leaves the ball.

use std::sync::Arc;

use super::coefficient::Coefficient;
use super::element::{HeckeAlgebra, HeckeElement};
use crate::coxeter::{Ball, CoxeterSystem, GeneratorId, Side};
use crate::error::{Error, Result};

/// A function on the ball, indexed like `ball.elements()`.
pub type BallVector<C> = Vec<C>;

/// `(T_s ξ)(y)` (left) or `(T^r_s ξ)(y)` (right) for every `y` in the ball.
///
/// `(T_s ξ)(y) = ξ(sy) + [|sy| < |y|]·p·ξ(y)`, and symmetrically on the right.
/// Entries whose value would need `ξ` outside the ball are `None`.
pub fn apply_generator<C: Coefficient>(
    sys: &CoxeterSystem,
    ball: &Ball,
    xi: &[C],
    s: GeneratorId,
    side: Side,
    p: &C,
) -> Result<Vec<Option<C>>> {
    if xi.len() != ball.len() {
        return Err(Error::input(format!(
            "vector has {} entries but the ball has {}",
            xi.len(),
            ball.len()
        )));
    }
    sys.check_generator(s)?;
    Ok(ball
        .elements()
        .iter()
        .enumerate()
        .map(|(i, y)| {
            let (sy, delta) = sys.mult_gen(y, s, side);
            let j = ball.index_of(&sy)?;
            let mut value = xi[j].clone();
            if delta < 0 {
                value.add_assign_ref(&p.mul_ref(&xi[i]));
            }
            Some(value)
        })
        .collect())
}

/// The symbol `a δ₁` of a Hecke element, restricted to the ball. Terms outside
/// the ball are reported as an error rather than dropped.
pub fn symbol_on_ball<C: Coefficient>(a: &HeckeElement<C>, ball: &Ball) -> Result<BallVector<C>> {
    let mut out = vec![C::zero(); ball.len()];
    for (w, c) in a.terms() {
        let i = ball.index_of(w).ok_or_else(|| {
            Error::input(format!(
                "term {} lies outside the radius-{} ball",
                a.system().format_element(w),
                ball.radius()
            ))
        })?;
        out[i] = c.clone();
    }
    Ok(out)
}

/// A truncated action on `ℓ²(B_R)` stored as sparse columns.
///
/// `columns[w]` lists `(v, M[v][w])`. Column `w` is exact when the full image
/// of `δ_w` lies inside the ball, so no mass was discarded.
#[derive(Debug, Clone)]
pub struct ActionMatrix<C> {
    columns: Vec<Vec<(usize, C)>>,
    exact: Vec<bool>,
}

impl<C: Coefficient> ActionMatrix<C> {
    pub fn identity(n: usize) -> Self {
        ActionMatrix {
            columns: (0..n).map(|i| vec![(i, C::one())]).collect(),
            exact: vec![true; n],
        }
    }

    /// Left action `δ_w ↦ a·T_w` or right action `δ_w ↦ T_w·a`, truncated
    /// to the ball.
    pub fn of_element(a: &HeckeElement<C>, ball: &Ball, side: Side) -> Result<Self> {
        let alg: &Arc<HeckeAlgebra<C>> = a.algebra();
        let mut columns = Vec::with_capacity(ball.len());
        let mut exact = Vec::with_capacity(ball.len());
        for w in ball.elements() {
            let tw = alg.t(w.clone());
            let image = match side {
                Side::Left => a.mul(&tw)?,
                Side::Right => tw.mul(a)?,
            };
            let mut col = Vec::with_capacity(image.support_len());
            let mut inside = true;
            for (v, c) in image.terms() {
                match ball.index_of(v) {
                    Some(i) => col.push((i, c.clone())),
                    None => inside = false,
                }
            }
            col.sort_by_key(|&(i, _)| i);
            columns.push(col);
            exact.push(inside);
        }
        Ok(ActionMatrix { columns, exact })
    }

    /// Action of a single generator; cheaper than the general constructor.
    pub fn of_generator(alg: &Arc<HeckeAlgebra<C>>, ball: &Ball, s: GeneratorId, side: Side) -> Result<Self> {
        let sys = alg.system();
        sys.check_generator(s)?;
        let mut columns = Vec::with_capacity(ball.len());
        let mut exact = Vec::with_capacity(ball.len());
        for (j, w) in ball.elements().iter().enumerate() {
            let (sw, delta) = sys.mult_gen(w, s, side);
            let mut col = Vec::with_capacity(2);
            let inside = match ball.index_of(&sw) {
                Some(i) => {
                    col.push((i, C::one()));
                    true
                }
                None => false,
            };
            if delta < 0 {
                col.push((j, alg.p().clone()));
            }
            col.sort_by_key(|&(i, _)| i);
            columns.push(col);
            exact.push(inside);
        }
        Ok(ActionMatrix { columns, exact })
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, C)] {
        &self.columns[j]
    }

    pub fn is_exact_column(&self, j: usize) -> bool {
        self.exact[j]
    }

    pub fn exact_columns(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(|&j| self.exact[j])
    }

    pub fn entry(&self, i: usize, j: usize) -> C {
        self.columns[j]
            .iter()
            .find(|&&(r, _)| r == i)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(C::zero)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::input(format!(
                "matrix dimensions differ: {} vs {}",
                self.dim(),
                other.dim()
            )))
        }
    }

    /// `self · other`. A product column is exact when the factor column is
    /// exact and every column of `self` it touches is exact.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.dim();
        let mut columns = Vec::with_capacity(n);
        let mut exact = Vec::with_capacity(n);
        let mut acc: Vec<Option<C>> = vec![None; n];
        for j in 0..n {
            let mut inside = other.exact[j];
            let mut touched = Vec::new();
            for (k, b) in &other.columns[j] {
                inside &= self.exact[*k];
                for (i, a) in &self.columns[*k] {
                    let term = a.mul_ref(b);
                    match &mut acc[*i] {
                        Some(x) => x.add_assign_ref(&term),
                        slot @ None => {
                            *slot = Some(term);
                            touched.push(*i);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let col = touched
                .into_iter()
                .filter_map(|i| acc[i].take().filter(|c| !c.is_zero()).map(|c| (i, c)))
                .collect();
            columns.push(col);
            exact.push(inside);
        }
        Ok(ActionMatrix { columns, exact })
    }

    /// `self − other`; exact where both are.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut columns = Vec::with_capacity(self.dim());
        for (a, b) in self.columns.iter().zip(&other.columns) {
            let mut merged: Vec<(usize, C)> = a.clone();
            for (i, c) in b {
                match merged.iter_mut().find(|(r, _)| r == i) {
                    Some((_, x)) => *x = x.sub_ref(c),
                    None => merged.push((*i, c.neg_ref())),
                }
            }
            merged.retain(|(_, c)| !c.is_zero());
            merged.sort_by_key(|&(i, _)| i);
            columns.push(merged);
        }
        let exact = self.exact.iter().zip(&other.exact).map(|(a, b)| *a && *b).collect();
        Ok(ActionMatrix { columns, exact })
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Whether every exact column is identically zero.
    pub fn vanishes_on_exact_columns(&self) -> bool {
        self.exact_columns()
            .all(|j| self.columns[j].iter().all(|(_, c)| c.is_zero()))
    }
}

impl ActionMatrix<f64> {
    /// Frobenius norm over the exact columns only.
    pub fn exact_frobenius_norm(&self) -> f64 {
        self.exact_columns()
            .flat_map(|j| self.columns[j].iter().map(|(_, c)| c * c))
            .sum::<f64>()
            .sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::catalog;
    use crate::laurent::LaurentPoly;

    #[test]
    fn unit_acts_as_identity() {
        let sys = Arc::new(catalog::free_product(3));
        let alg = HeckeAlgebra::numeric(sys.clone(), 0.3).unwrap();
        let ball = sys.ball(3).unwrap();
        let m = ActionMatrix::of_element(&alg.unit(), &ball, Side::Left).unwrap();
        assert!(m.exact_columns().count() == ball.len());
        for j in 0..ball.len() {
            assert_eq!(m.column(j), &[(j, 1.0)]);
        }
    }

    #[test]
    fn generator_column_lengthening() {
        let sys = Arc::new(catalog::pentagon());
        let alg = HeckeAlgebra::numeric(sys.clone(), 0.3).unwrap();
        let ball = sys.ball(3).unwrap();
        let s = GeneratorId(0);
        let m = ActionMatrix::of_generator(&alg, &ball, s, Side::Left).unwrap();
        let general = ActionMatrix::of_element(&alg.generator(s), &ball, Side::Left).unwrap();
        for (j, w) in ball.elements().iter().enumerate() {
            assert_eq!(m.column(j), general.column(j));
            assert_eq!(m.is_exact_column(j), general.is_exact_column(j));
            let (sw, delta) = sys.mult_gen(w, s, Side::Left);
            if delta > 0 && sw.len() <= 3 {
                assert_eq!(m.column(j), &[(ball.index_of(&sw).unwrap(), 1.0)]);
            }
        }
    }

    #[test]
    fn left_and_right_actions_commute_exactly() {
        let sys = Arc::new(catalog::z2_free_z2_squared());
        let alg = HeckeAlgebra::exact(sys.clone());
        let ball = sys.ball(4).unwrap();
        for s in sys.generators() {
            for t in sys.generators() {
                let l = ActionMatrix::of_generator(&alg, &ball, s, Side::Left).unwrap();
                let r = ActionMatrix::of_generator(&alg, &ball, t, Side::Right).unwrap();
                let c = l.commutator(&r).unwrap();
                assert!(c.exact_columns().count() > 0);
                assert!(c.vanishes_on_exact_columns());
            }
        }
    }

    #[test]
    fn generator_action_on_symbol_matches_product() {
        let sys = Arc::new(catalog::free_product(3));
        let alg = HeckeAlgebra::exact(sys.clone());
        let ball = sys.ball(3).unwrap();
        let a = alg
            .t(sys.parse_element("s t").unwrap())
            .add(&alg.t(sys.parse_element("u").unwrap()).scale(&LaurentPoly::u_pow(2)))
            .unwrap();
        let xi = symbol_on_ball(&a, &ball).unwrap();
        let s = GeneratorId(0);
        let applied = apply_generator(&sys, &ball, &xi, s, Side::Right, alg.p()).unwrap();
        let product = symbol_on_ball(&a.mul(&alg.generator(s)).unwrap(), &ball).unwrap();
        for (i, v) in applied.iter().enumerate() {
            if let Some(v) = v {
                assert_eq!(v, &product[i]);
            }
        }
    }
}
