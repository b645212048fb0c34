use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::coefficient::{coefficient_pow, Coefficient};
use crate::coxeter::{CoxeterSystem, Element, GeneratorId, Side};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// The Hecke algebra of a right-angled system at one parameter, presented
/// in the normalized basis `T_w = q^{−|w|/2} T̃_w`:
///
/// `T_s T_w = T_{sw}` if |sw| > |w|, and `T_{sw} + p T_w` otherwise.
#[derive(Debug, Clone)]
pub struct HeckeAlgebra<C> {
    sys: Arc<CoxeterSystem>,
    /// `q^{1/2}`
    u: C,
    p: C,
    /// Set on the target of `j`: the formal variable there is `(q⁻¹)^{1/2}`,
    /// i.e. `u⁻¹` in terms of the source algebra.
    dual: bool,
}

pub type ExactAlgebra = HeckeAlgebra<LaurentPoly>;
pub type NumericAlgebra = HeckeAlgebra<f64>;

impl<C: PartialEq> PartialEq for HeckeAlgebra<C> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.sys, &other.sys) || self.sys == other.sys)
            && self.u == other.u
            && self.p == other.p
            && self.dual == other.dual
    }
}

impl HeckeAlgebra<LaurentPoly> {
    /// Generic parameter: `u` is a formal variable and `p = u − u⁻¹`.
    pub fn exact(sys: Arc<CoxeterSystem>) -> Arc<Self> {
        Arc::new(HeckeAlgebra {
            sys,
            u: LaurentPoly::u_pow(1),
            p: LaurentPoly::hecke_p(),
            dual: false,
        })
    }

    /// The algebra at `q⁻¹`, target of the isomorphism `j`. It is written in
    /// its own variable `v = u⁻¹`, so its structure constant is `v − v⁻¹`,
    /// which is `−p` in the source variable.
    pub fn inverse_parameter(&self) -> Arc<Self> {
        Arc::new(HeckeAlgebra {
            sys: self.sys.clone(),
            u: self.u.clone(),
            p: self.p.clone(),
            dual: !self.dual,
        })
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    /// Evaluates the formal variable at `u = √q`.
    pub fn specialize(&self, q: f64) -> Arc<NumericAlgebra> {
        Arc::new(HeckeAlgebra {
            sys: self.sys.clone(),
            u: self.u.eval_at_q(q),
            p: self.p.eval_at_q(q),
            dual: false,
        })
    }
}

impl HeckeAlgebra<f64> {
    pub fn numeric(sys: Arc<CoxeterSystem>, q: f64) -> Result<Arc<Self>> {
        if !(q > 0.0 && q.is_finite()) {
            return Err(Error::input(format!("q must be a positive real, got {q}")));
        }
        let u = q.sqrt();
        Ok(Arc::new(HeckeAlgebra {
            sys,
            u,
            p: (q - 1.0) / u,
            dual: false,
        }))
    }

    pub fn q(&self) -> f64 {
        self.u * self.u
    }
}

impl<C: Coefficient> HeckeAlgebra<C> {
    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    pub fn system_arc(&self) -> &Arc<CoxeterSystem> {
        &self.sys
    }

    pub fn p(&self) -> &C {
        &self.p
    }

    pub fn u(&self) -> &C {
        &self.u
    }

    pub fn zero(self: &Arc<Self>) -> HeckeElement<C> {
        HeckeElement {
            alg: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(self: &Arc<Self>) -> HeckeElement<C> {
        self.t(Element::identity())
    }

    pub fn scalar(self: &Arc<Self>, c: C) -> HeckeElement<C> {
        self.term(Element::identity(), c)
    }

    /// The normalized basis element `T_w`.
    pub fn t(self: &Arc<Self>, w: Element) -> HeckeElement<C> {
        self.term(w, C::one())
    }

    /// The unnormalized basis element `T̃_w = u^{|w|} T_w`.
    pub fn t_tilde(self: &Arc<Self>, w: Element) -> HeckeElement<C> {
        let c = coefficient_pow(&self.u, w.len());
        self.term(w, c)
    }

    pub fn generator(self: &Arc<Self>, s: GeneratorId) -> HeckeElement<C> {
        self.t(self.sys.element_of_generator(s))
    }

    pub fn term(self: &Arc<Self>, w: Element, c: C) -> HeckeElement<C> {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        HeckeElement {
            alg: self.clone(),
            terms,
        }
    }

    /// Builds an element from (element, coefficient) pairs, summing repeats.
    pub fn from_terms(self: &Arc<Self>, terms: impl IntoIterator<Item = (Element, C)>) -> Result<HeckeElement<C>> {
        let mut out = self.zero();
        for (w, c) in terms {
            self.sys.check_element(&w)?;
            out.add_term(w, &c);
        }
        Ok(out)
    }
}

/// A finitely supported element of the Hecke algebra, in the normalized
/// basis. Zero coefficients are never stored.
#[derive(Clone)]
pub struct HeckeElement<C> {
    alg: Arc<HeckeAlgebra<C>>,
    terms: BTreeMap<Element, C>,
}

pub type ExactHecke = HeckeElement<LaurentPoly>;
pub type NumericHecke = HeckeElement<f64>;

impl<C: Coefficient> PartialEq for HeckeElement<C> {
    fn eq(&self, other: &Self) -> bool {
        *self.alg == *other.alg && self.terms == other.terms
    }
}

impl<C: Coefficient> fmt::Debug for HeckeElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sys = self.alg.system();
        f.debug_map()
            .entries(self.terms.iter().map(|(w, c)| (sys.format_element(w), c)))
            .finish()
    }
}

impl<C: Coefficient> HeckeElement<C> {
    pub fn algebra(&self) -> &Arc<HeckeAlgebra<C>> {
        &self.alg
    }

    pub fn system(&self) -> &CoxeterSystem {
        self.alg.system()
    }

    /// Terms in ShortLex order of the basis elements.
    pub fn terms(&self) -> impl Iterator<Item = (&Element, &C)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Element) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    fn add_term(&mut self, w: Element, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                existing.add_assign_ref(c);
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg {
            Ok(())
        } else {
            Err(Error::input(
                "Hecke elements belong to different algebras (system or parameter differ)",
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&C::one().neg_ref()))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = self.alg.zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &x.mul_ref(c));
        }
        out
    }

    /// Multiplies by `T_s` on the given side, using the generator rule.
    pub fn mul_generator(&self, s: GeneratorId, side: Side) -> Self {
        let sys = self.alg.system();
        let p = self.alg.p();
        let mut out = self.alg.zero();
        for (x, c) in &self.terms {
            let (sx, delta) = sys.mult_gen(x, s, side);
            out.add_term(sx, c);
            if delta < 0 {
                out.add_term(x.clone(), &c.mul_ref(p));
            }
        }
        out
    }

    /// Product in the Hecke algebra. Each basis element `T_v` of the left
    /// factor is applied to `other` one generator at a time, peeling letters
    /// off the right end of the canonical word of `v`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let mut out = self.alg.zero();
        for (v, cv) in &self.terms {
            let mut current = other.scale(cv);
            for &s in v.letters().iter().rev() {
                current = current.mul_generator(s, Side::Left);
            }
            for (w, c) in current.terms {
                out.add_term(w, &c);
            }
        }
        Ok(out)
    }

    /// The involution `T_w ↦ T_{w⁻¹}`, conjugate-linear in the coefficients.
    pub fn star(&self) -> Self {
        let sys = self.alg.system();
        let mut out = self.alg.zero();
        for (w, c) in &self.terms {
            out.add_term(sys.inverse(w), &c.conj());
        }
        out
    }

    /// The state φ(a) = ⟨a δ₁, δ₁⟩: the coefficient of the identity.
    pub fn state_phi(&self) -> C {
        self.coefficient(&Element::identity())
    }

    /// ℓ²(W) inner product of symbols, Σ a(w) conj(b(w)).
    pub fn inner(&self, other: &Self) -> Result<C> {
        self.same_algebra(other)?;
        let mut acc = C::zero();
        for (w, a) in &self.terms {
            if let Some(b) = other.terms.get(w) {
                acc.add_assign_ref(&a.mul_ref(&b.conj()));
            }
        }
        Ok(acc)
    }
}

impl HeckeElement<f64> {
    pub fn l2_norm(&self) -> f64 {
        self.terms.values().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl HeckeElement<LaurentPoly> {
    /// The isomorphism `j : C_q[W] → C_{q⁻¹}[W]`, `T_w ↦ (−1)^{|w|} T_w`.
    /// Coefficients are rewritten in the target variable `v = u⁻¹`; the
    /// target's structure constant `v − v⁻¹` equals `−p`.
    pub fn j_iso(&self) -> Self {
        let target = self.alg.inverse_parameter();
        let mut out = target.zero();
        for (w, c) in &self.terms {
            let c = c.invert_variable();
            let c = if w.sign() < 0 { -c } else { c };
            out.add_term(w.clone(), &c);
        }
        out
    }

    /// Evaluates all coefficients at `u = √q`, where `u` is this element's
    /// own algebra variable.
    pub fn specialize(&self, q: f64) -> HeckeElement<f64> {
        let alg = self.alg.specialize(q);
        let mut out = alg.zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &c.eval_at_q(q));
        }
        out
    }

    pub fn l2_norm_at(&self, q: f64) -> f64 {
        self.specialize(q).l2_norm()
    }
}

impl<C: Coefficient + fmt::Display> HeckeElement<C> {
    /// Canonical printed form: terms in ShortLex order, e.g.
    /// `T(1) + (u - u^-1)*T(s)`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let sys = self.alg.system();
        self.terms
            .iter()
            .map(|(w, c)| {
                let word = sys.format_element(w);
                if c.is_one() {
                    format!("T({word})")
                } else {
                    format!("({c})*T({word})")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::catalog;
    use num_traits::{One, Zero};

    fn exact(sys: CoxeterSystem) -> Arc<ExactAlgebra> {
        HeckeAlgebra::exact(Arc::new(sys))
    }

    fn t(alg: &Arc<ExactAlgebra>, w: &str) -> ExactHecke {
        alg.t(alg.system().parse_element(w).unwrap())
    }

    #[test]
    fn generator_squared() {
        let alg = exact(catalog::free_product(3));
        let ts = t(&alg, "s");
        let sq = ts.mul(&ts).unwrap();
        let expected = alg.unit().add(&ts.scale(alg.p())).unwrap();
        assert_eq!(sq, expected);
        assert_eq!(sq.state_phi(), LaurentPoly::one());
    }

    #[test]
    fn lengthening_product_is_basis_element() {
        let alg = exact(catalog::free_product(3));
        assert_eq!(t(&alg, "s").mul(&t(&alg, "t u")).unwrap(), t(&alg, "s t u"));
    }

    #[test]
    fn associativity_instance_in_dihedral() {
        let alg = exact(catalog::infinite_dihedral());
        let (ts, tt) = (t(&alg, "s"), t(&alg, "t"));
        let left = ts.mul(&tt).unwrap().mul(&tt).unwrap();
        let right = ts.mul(&tt.mul(&tt).unwrap()).unwrap();
        let expected = ts.add(&t(&alg, "s t").scale(alg.p())).unwrap();
        assert_eq!(left, right);
        assert_eq!(left, expected);
    }

    #[test]
    fn star_examples() {
        let alg = exact(catalog::free_product(3));
        assert_eq!(alg.unit().star(), alg.unit());
        assert_eq!(t(&alg, "s t").star(), t(&alg, "t s"));
        let a = t(&alg, "s t").add(&t(&alg, "u").scale(&LaurentPoly::u_pow(3))).unwrap();
        assert_eq!(a.star().star(), a);
    }

    #[test]
    fn t_tilde_rescales() {
        let alg = exact(catalog::pentagon());
        let w = alg.system().parse_element("s u").unwrap();
        assert_eq!(alg.t_tilde(w.clone()), alg.t(w).scale(&LaurentPoly::u_pow(2)));
    }

    #[test]
    fn j_examples() {
        let alg = exact(catalog::free_product(3));
        assert_eq!(alg.unit().j_iso(), alg.inverse_parameter().unit());
        let ts = t(&alg, "s");
        let lhs = ts.mul(&ts).unwrap().j_iso();
        let js = ts.j_iso();
        let rhs = js.mul(&js).unwrap();
        assert_eq!(lhs, rhs);
        // T_1 + (u⁻¹ − u)(−1) T_s
        let target = alg.inverse_parameter();
        let s = alg.system().parse_element("s").unwrap();
        let expected = target
            .unit()
            .add(&target.term(s, -(LaurentPoly::u_pow(-1) - LaurentPoly::u_pow(1))))
            .unwrap();
        assert_eq!(lhs, expected);
        assert_eq!(ts.j_iso().j_iso(), ts);
    }

    #[test]
    fn phi_vanishes_off_identity() {
        let alg = exact(catalog::pentagon());
        assert!(t(&alg, "s t").state_phi().is_zero());
        assert_eq!(alg.unit().state_phi(), LaurentPoly::one());
    }

    #[test]
    fn inner_products() {
        let sys = Arc::new(catalog::free_product(3));
        let alg = HeckeAlgebra::numeric(sys.clone(), 0.25).unwrap();
        let s = sys.parse_element("s").unwrap();
        let tt = sys.parse_element("t").unwrap();
        assert_eq!(alg.t(s.clone()).inner(&alg.t(s.clone())).unwrap(), 1.0);
        assert_eq!(alg.t(s.clone()).inner(&alg.t(tt)).unwrap(), 0.0);
        let x = alg.unit().add(&alg.t(s).scale(alg.p())).unwrap();
        let p = *alg.p();
        assert!((x.l2_norm().powi(2) - (1.0 + p * p)).abs() < 1e-12);
    }

    #[test]
    fn mixed_algebras_rejected() {
        let a = exact(catalog::free_product(3));
        let b = exact(catalog::pentagon());
        assert!(a.unit().mul(&b.unit()).is_err());
        let n1 = HeckeAlgebra::numeric(Arc::new(catalog::free_product(3)), 0.5).unwrap();
        let n2 = HeckeAlgebra::numeric(Arc::new(catalog::free_product(3)), 0.25).unwrap();
        assert!(n1.unit().add(&n2.unit()).is_err());
    }

    #[test]
    fn text_form() {
        let alg = exact(catalog::free_product(3));
        let ts = t(&alg, "s");
        assert_eq!(ts.mul(&ts).unwrap().to_text(), "T(1) + (u - u^-1)*T(s)");
    }
}
