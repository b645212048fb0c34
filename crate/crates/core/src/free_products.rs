//! Free products `W = Z₂^{k₁} ∗ ⋯ ∗ Z₂^{kₙ}` and the atomic part of their
//! Hecke-von Neumann algebras.
//!
//! `N_q(Z₂^k)` is commutative, `L^∞` of the measure `μ_k(w) = q^{|w|}/(q+1)^k`
//! on `Z₂^k`. Free products of such algebras are folded pairwise: atoms `x`,
//! `y` with `μ_X(x) + μ_Y(y) > 1` survive with weight `μ_X(x) + μ_Y(y) − 1`
//! next to a diffuse interpolated free group factor.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::center::{classify, Classification};
use crate::coxeter::{catalog, CoxeterSystem, Element, GenSet};
use crate::error::{Error, Result};
use crate::growth::{rational_to_string, rho};
use crate::hecke::{ExactHecke, HeckeAlgebra, NumericHecke};
use crate::laurent::LaurentPoly;
use crate::rational::{int, pow_i};

/// Ranks `(k₁, …, kₙ)` of the free factors `Z₂^{kᵢ}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeFactorSpec {
    ranks: Vec<usize>,
}

impl FreeFactorSpec {
    pub fn new(ranks: Vec<usize>) -> Result<Self> {
        if ranks.len() < 2 {
            return Err(Error::input("a free product needs at least two factors"));
        }
        if ranks.contains(&0) {
            return Err(Error::input("every factor rank must be positive"));
        }
        if ranks.iter().sum::<usize>() > crate::coxeter::MAX_GENERATORS {
            return Err(Error::input("too many generators in total"));
        }
        Ok(FreeFactorSpec { ranks })
    }

    /// Parses `2,1` or `2 1`.
    pub fn parse(text: &str) -> Result<Self> {
        let ranks = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::input(format!("invalid rank {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ranks)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// The right-angled system whose commutation graph is the disjoint union
    /// of cliques of sizes `kᵢ`.
    pub fn system(&self) -> CoxeterSystem {
        catalog::disjoint_cliques(&self.ranks)
    }

    /// Generator sets of the blocks, in order.
    pub fn blocks(&self, sys: &CoxeterSystem) -> Vec<GenSet> {
        let mut out = Vec::new();
        let mut next = 0u8;
        for &k in &self.ranks {
            let set = (next..next + k as u8).map(crate::coxeter::GeneratorId).collect();
            out.push(set);
            next += k as u8;
        }
        debug_assert_eq!(next as usize, sys.rank());
        out
    }
}

/// Finitely many labelled points with positive masses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtomicMeasure {
    pub atoms: Vec<Atom>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Atom {
    pub label: Vec<String>,
    #[serde(serialize_with = "serialize_rational")]
    pub mass: BigRational,
}

fn serialize_rational<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_to_string(x))
}

impl AtomicMeasure {
    pub fn total(&self) -> BigRational {
        self.atoms.iter().fold(BigRational::zero(), |acc, a| acc + &a.mass)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

fn require_positive(q: &BigRational) -> Result<()> {
    if q.is_positive() {
        Ok(())
    } else {
        Err(Error::input("q must be positive"))
    }
}

/// `μ(w) = q^{|w|}/(q+1)^k` on the elements of the special subgroup of a
/// clique of `k` generators, labelled by canonical words.
pub fn clique_measure(sys: &CoxeterSystem, block: GenSet, q: &BigRational) -> Result<AtomicMeasure> {
    require_positive(q)?;
    let members: Vec<_> = block.iter().collect();
    for (i, &s) in members.iter().enumerate() {
        for &t in &members[i + 1..] {
            if !sys.commutes(s, t) {
                return Err(Error::input(format!(
                    "{} is not a clique of commuting generators",
                    sys.describe_set(block)
                )));
            }
        }
    }
    let k = members.len() as i32;
    let denom = pow_i(&(q + BigRational::one()), k);
    let mut atoms = Vec::with_capacity(1 << members.len());
    for mask in 0u64..(1u64 << members.len()) {
        let word: Vec<_> = members
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &s)| s)
            .collect();
        let w = sys.normalize(&crate::coxeter::Word(word))?;
        atoms.push((w.clone(), pow_i(q, w.len() as i32) / &denom));
    }
    atoms.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(AtomicMeasure {
        atoms: atoms
            .into_iter()
            .map(|(w, mass)| Atom {
                label: vec![sys.format_element(&w)],
                mass,
            })
            .collect(),
    })
}

/// `μ_k` on `Z₂^k` with generators named as in [`catalog::abelian`].
pub fn mu_k(k: usize, q: &BigRational) -> Result<AtomicMeasure> {
    if k == 0 || k > crate::coxeter::MAX_GENERATORS {
        return Err(Error::input(format!(
            "k must be between 1 and {}",
            crate::coxeter::MAX_GENERATORS
        )));
    }
    let sys = catalog::abelian(k);
    clique_measure(&sys, sys.all(), q)
}

/// The projections `e₊ = (u T_s + 1)/(u² + 1)` and `e₋ = 1 − e₊` in the
/// Hecke algebra of `Z₂ = ⟨s⟩`.
#[derive(Debug, Clone)]
pub struct Z2Idempotents {
    /// `f₊ = (u² + 1) e₊ = u T_s + 1`, exact.
    pub f_plus: ExactHecke,
    /// `f₋ = (u² + 1) e₋ = u² − u T_s`, exact.
    pub f_minus: ExactHecke,
    /// Identities verified in the Laurent ring, by name.
    pub exact_checks: Vec<(String, bool)>,
    /// `e₊`, `e₋` at the given `q`.
    pub e_plus: NumericHecke,
    pub e_minus: NumericHecke,
    /// Identities verified numerically at `q`, by name, with residuals.
    pub numeric_checks: Vec<(String, f64)>,
}

impl Z2Idempotents {
    pub fn passed(&self, tol: f64) -> bool {
        self.exact_checks.iter().all(|(_, ok)| *ok) && self.numeric_checks.iter().all(|(_, r)| *r <= tol)
    }
}

/// Builds and checks the two minimal projections of `N_q(Z₂)`.
///
/// `e₊` has coefficients `u/(u²+1)` outside the Laurent ring, so the exact
/// checks are on the scaled elements `f± = (u²+1) e±`: `f±² = (u²+1) f±`,
/// `f₊ f₋ = 0`, `f±* = f±`, `f₊ + f₋ = u² + 1`, `φ(f₊) = 1`, `φ(f₋) = u²`.
pub fn hvn_z2_idempotents(q: f64) -> Result<Z2Idempotents> {
    let sys = Arc::new(catalog::free_product(1));
    let s = sys.element_of_generator(crate::coxeter::GeneratorId(0));
    let alg = HeckeAlgebra::exact(sys.clone());
    let u = LaurentPoly::u_pow(1);
    let u2_plus_1 = LaurentPoly::u_pow(2) + LaurentPoly::one();
    let ts = alg.t(s.clone());
    let f_plus = ts.scale(&u).add(&alg.unit())?;
    let f_minus = alg.scalar(LaurentPoly::u_pow(2)).sub(&ts.scale(&u))?;
    let exact_checks = vec![
        (
            "f+^2 = (u^2+1) f+".to_string(),
            f_plus.mul(&f_plus)? == f_plus.scale(&u2_plus_1),
        ),
        (
            "f-^2 = (u^2+1) f-".to_string(),
            f_minus.mul(&f_minus)? == f_minus.scale(&u2_plus_1),
        ),
        ("f+ f- = 0".to_string(), f_plus.mul(&f_minus)?.is_zero()),
        ("f- f+ = 0".to_string(), f_minus.mul(&f_plus)?.is_zero()),
        ("f+* = f+".to_string(), f_plus.star() == f_plus),
        ("f-* = f-".to_string(), f_minus.star() == f_minus),
        (
            "f+ + f- = u^2 + 1".to_string(),
            f_plus.add(&f_minus)? == alg.scalar(u2_plus_1.clone()),
        ),
        ("phi(f+) = 1".to_string(), f_plus.state_phi() == LaurentPoly::one()),
        (
            "phi(f-) = u^2".to_string(),
            f_minus.state_phi() == LaurentPoly::u_pow(2),
        ),
    ];

    let num = HeckeAlgebra::numeric(sys.clone(), q)?;
    let norm = 1.0 / (q + 1.0);
    let e_plus = f_plus.specialize(q).scale(&norm);
    let e_plus = num.from_terms(e_plus.terms().map(|(w, c)| (w.clone(), *c)))?;
    let e_minus = num.unit().sub(&e_plus)?;
    let dist = |a: &NumericHecke, b: &NumericHecke| -> Result<f64> { Ok(a.sub(b)?.max_abs_coefficient()) };
    let numeric_checks = vec![
        ("e+^2 = e+".to_string(), dist(&e_plus.mul(&e_plus)?, &e_plus)?),
        ("e-^2 = e-".to_string(), dist(&e_minus.mul(&e_minus)?, &e_minus)?),
        ("e+ e- = 0".to_string(), e_plus.mul(&e_minus)?.max_abs_coefficient()),
        ("e+* = e+".to_string(), dist(&e_plus.star(), &e_plus)?),
        ("phi(e+) = 1/(q+1)".to_string(), (e_plus.state_phi() - norm).abs()),
        ("phi(e-) = q/(q+1)".to_string(), (e_minus.state_phi() - q * norm).abs()),
    ];
    Ok(Z2Idempotents {
        f_plus,
        f_minus,
        exact_checks,
        e_plus,
        e_minus,
        numeric_checks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub ranks: Vec<usize>,
    pub q: String,
    /// Block order used for folding (indices into `ranks`).
    pub fold_order: Vec<usize>,
    /// Surviving atoms after each fold step.
    pub atoms_per_step: Vec<usize>,
    /// Presence of the diffuse summand `L(F_s)`; `s` is not computed.
    pub diffuse_part: bool,
    pub diffuse_label: String,
    /// Atoms labelled by one canonical word per block, in the original block
    /// order.
    pub atoms: AtomicMeasure,
}

/// Iterated pairwise decomposition of `N_q(∗ᵢ Z₂^{kᵢ})` into a diffuse part
/// and atoms.
///
/// Blocks are folded in order of decreasing rank so the first factor has at
/// least four atoms. Each step keeps pairs whose masses sum to more than 1,
/// with weight `mass − 1`.
pub fn dykema_decompose(spec: &FreeFactorSpec, q: &BigRational) -> Result<DecompositionReport> {
    require_positive(q)?;
    if spec.ranks.iter().all(|&k| k < 2) {
        return Err(Error::precondition(
            "the fold requires some factor Z2^k with k ≥ 2 (all ranks are 1)",
        ));
    }
    let sys = spec.system();
    let blocks = spec.blocks(&sys);
    let mut order: Vec<usize> = (0..spec.ranks.len()).collect();
    order.sort_by(|&a, &b| spec.ranks[b].cmp(&spec.ranks[a]).then(a.cmp(&b)));

    let measures = blocks
        .iter()
        .map(|&b| clique_measure(&sys, b, q))
        .collect::<Result<Vec<_>>>()?;

    let one = BigRational::one();
    let mut current: Vec<(Vec<usize>, BigRational)> = measures[order[0]]
        .atoms
        .iter()
        .enumerate()
        .map(|(i, a)| (vec![i], a.mass.clone()))
        .collect();
    let mut atoms_per_step = Vec::new();
    for &b in &order[1..] {
        let mut next = Vec::new();
        for (label, m) in &current {
            for (j, a) in measures[b].atoms.iter().enumerate() {
                let w = m + &a.mass - &one;
                if w.is_positive() {
                    let mut l = label.clone();
                    l.push(j);
                    next.push((l, w));
                }
            }
        }
        atoms_per_step.push(next.len());
        current = next;
    }

    let mut atoms: Vec<Atom> = current
        .into_iter()
        .map(|(label, mass)| {
            let mut words = vec![String::new(); order.len()];
            for (pos, &b) in order.iter().enumerate() {
                words[b] = measures[b].atoms[label[pos]].label[0].clone();
            }
            Atom { label: words, mass }
        })
        .collect();
    atoms.sort_by(|a, b| a.label.cmp(&b.label));
    let atoms = AtomicMeasure { atoms };
    Ok(DecompositionReport {
        ranks: spec.ranks.clone(),
        q: rational_to_string(q),
        fold_order: order,
        atoms_per_step,
        diffuse_part: atoms.total() < one,
        diffuse_label: "L(F_s), s >= 1".into(),
        atoms,
    })
}

/// `Σᵢ (q/(q+1))^{kᵢ} > n − 1`, evaluated at `max(q, q⁻¹)`.
pub fn closed_form_condition(spec: &FreeFactorSpec, q: &BigRational) -> Result<bool> {
    require_positive(q)?;
    let q = if *q < BigRational::one() { q.recip() } else { q.clone() };
    let ratio = &q / (&q + BigRational::one());
    let sum = spec
        .ranks
        .iter()
        .fold(BigRational::zero(), |acc, &k| acc + pow_i(&ratio, k as i32));
    Ok(sum > int(spec.ranks.len() as i64 - 1))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossValidation {
    pub ranks: Vec<usize>,
    pub q: String,
    pub rho: f64,
    pub closed_form: bool,
    /// `max(q, q⁻¹) > ρ⁻¹`, decided exactly.
    pub outside_interval: bool,
    pub classification: String,
    /// Atom count from the fold; `None` when the fold does not apply.
    pub dykema_atoms: Option<usize>,
    pub agree: bool,
}

/// Compares the closed-form condition with the growth-series criterion,
/// with [`classify`], and with the fold.
pub fn cross_validate_with_rho(spec: &FreeFactorSpec, q: &BigRational) -> Result<CrossValidation> {
    let sys = spec.system();
    let r = rho(&sys)?;
    let closed = closed_form_condition(spec, q)?;
    let big = if *q < BigRational::one() { q.recip() } else { q.clone() };
    let outside = r.compare(&big.recip()) == std::cmp::Ordering::Less;
    let class = classify(&sys, q)?.classification;
    let dykema_atoms = match dykema_decompose(spec, q) {
        Ok(d) => Some(d.atoms.len()),
        Err(Error::Precondition(_)) => None,
        Err(e) => return Err(e),
    };
    let class_agrees = match class {
        Classification::FactorPlusC => closed,
        Classification::Factor => !closed,
        Classification::NotApplicable { .. } => false,
    };
    let agree = closed == outside && class_agrees && dykema_atoms.is_none_or(|n| n == usize::from(closed));
    Ok(CrossValidation {
        ranks: spec.ranks.clone(),
        q: rational_to_string(q),
        rho: r.value(),
        closed_form: closed,
        outside_interval: outside,
        classification: class.label().to_string(),
        dykema_atoms,
        agree,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FreenessReport {
    pub checked: usize,
    pub witnesses: Vec<String>,
}

/// Checks that alternating products of centered elements from different
/// blocks have vanishing state, exactly, for total word length up to
/// `max_len`. Each block contributes `T_w` (`w ≠ 1`) and the centered
/// squares `T_w T_w − φ(T_w T_w)`.
pub fn freeness_test(sys: &Arc<CoxeterSystem>, partition: &[GenSet], max_len: usize) -> Result<FreenessReport> {
    let mut covered = GenSet::EMPTY;
    for &b in partition {
        if b.is_empty() || !covered.intersection(b).is_empty() {
            return Err(Error::input("partition blocks must be nonempty and disjoint"));
        }
        covered = covered.union(b);
    }
    if covered != sys.all() {
        return Err(Error::input("partition must cover every generator"));
    }
    for (i, &a) in partition.iter().enumerate() {
        for &b in &partition[i + 1..] {
            for s in a.iter() {
                for t in b.iter() {
                    if sys.commutes(s, t) {
                        return Err(Error::input(format!(
                            "{} and {} commute, so the blocks are not free factors",
                            sys.name(s),
                            sys.name(t)
                        )));
                    }
                }
            }
        }
    }
    let alg = HeckeAlgebra::exact(sys.clone());
    let ball = sys.ball(max_len)?;
    // Centered elements of each block, with the word length they consume.
    let mut pieces: Vec<Vec<(usize, ExactHecke)>> = Vec::new();
    for &b in partition {
        let mut list = Vec::new();
        for w in ball.elements() {
            if w.is_identity() || !sys.support(w).is_subset(b) {
                continue;
            }
            let t = alg.t(w.clone());
            list.push((w.len(), t.clone()));
            if 2 * w.len() <= max_len {
                let sq = t.mul(&t)?;
                let centered = sq.sub(&alg.scalar(sq.state_phi()))?;
                if !centered.is_zero() {
                    list.push((2 * w.len(), centered));
                }
            }
        }
        pieces.push(list);
    }
    let mut checked = 0;
    let mut witnesses = Vec::new();
    // Depth-first over alternating sequences.
    let mut stack: Vec<(usize, usize, ExactHecke, Vec<String>)> = Vec::new();
    for (bi, list) in pieces.iter().enumerate() {
        for (k, (len, x)) in list.iter().enumerate() {
            stack.push((bi, *len, x.clone(), vec![format!("b{bi}#{k}")]));
        }
    }
    while let Some((last, used, product, trail)) = stack.pop() {
        checked += 1;
        if !product.state_phi().is_zero() {
            witnesses.push(trail.join(" "));
        }
        for (bi, list) in pieces.iter().enumerate() {
            if bi == last {
                continue;
            }
            for (k, (len, x)) in list.iter().enumerate() {
                if used + len <= max_len {
                    let mut t = trail.clone();
                    t.push(format!("b{bi}#{k}"));
                    stack.push((bi, used + len, product.mul(x)?, t));
                }
            }
        }
    }
    Ok(FreenessReport { checked, witnesses })
}

/// The finest free-product decomposition: connected components of the
/// commutation graph.
pub fn free_factor_blocks(sys: &CoxeterSystem) -> Vec<GenSet> {
    let mut assigned = GenSet::EMPTY;
    let mut blocks = Vec::new();
    for s in sys.generators() {
        if assigned.contains(s) {
            continue;
        }
        let mut block = GenSet::single(s);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for y in sys.strict_commuting(x).iter() {
                if !block.contains(y) {
                    block.insert(y);
                    stack.push(y);
                }
            }
        }
        assigned = assigned.union(block);
        blocks.push(block);
    }
    blocks
}

/// The longest element of a clique block.
pub fn longest_element(sys: &CoxeterSystem, block: GenSet) -> Result<Element> {
    sys.normalize(&crate::coxeter::Word(block.iter().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn measures() {
        let m = mu_k(1, &ratio(1, 1)).unwrap();
        assert_eq!(m.atoms[0].mass, ratio(1, 2));
        assert_eq!(m.atoms[1].mass, ratio(1, 2));
        let m = mu_k(2, &ratio(2, 1)).unwrap();
        let masses: Vec<_> = m.atoms.iter().map(|a| a.mass.clone()).collect();
        assert_eq!(masses, vec![ratio(1, 9), ratio(2, 9), ratio(2, 9), ratio(4, 9)]);
        for k in 1..=6 {
            for q in [ratio(1, 3), ratio(1, 1), ratio(2, 1), ratio(5, 1)] {
                assert_eq!(mu_k(k, &q).unwrap().total(), BigRational::one());
            }
        }
    }

    #[test]
    fn idempotents() {
        let e = hvn_z2_idempotents(2.0).unwrap();
        assert!(e.passed(1e-12), "{:?} {:?}", e.exact_checks, e.numeric_checks);
    }

    #[test]
    fn dykema_examples() {
        let spec = FreeFactorSpec::new(vec![2, 1]).unwrap();
        let d = dykema_decompose(&spec, &ratio(3, 1)).unwrap();
        assert_eq!(d.atoms.len(), 1);
        assert_eq!(d.atoms.atoms[0].mass, ratio(5, 16));
        assert_eq!(
            d.atoms.atoms[0].label,
            vec!["a1_1.a1_2".to_string(), "a2_1".to_string()]
        );
        assert!(dykema_decompose(&spec, &ratio(1, 1)).unwrap().atoms.is_empty());
        let spec = FreeFactorSpec::new(vec![2, 2]).unwrap();
        assert!(dykema_decompose(&spec, &ratio(1, 1)).unwrap().atoms.is_empty());
        let spec = FreeFactorSpec::new(vec![1, 1, 1]).unwrap();
        assert!(matches!(
            dykema_decompose(&spec, &ratio(3, 1)),
            Err(Error::Precondition(_))
        ));
        assert!(FreeFactorSpec::new(vec![2]).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let s111 = FreeFactorSpec::new(vec![1, 1, 1]).unwrap();
        assert!(closed_form_condition(&s111, &ratio(3, 1)).unwrap());
        let s21 = FreeFactorSpec::new(vec![2, 1]).unwrap();
        assert!(!closed_form_condition(&s21, &ratio(3, 2)).unwrap());
        assert!(closed_form_condition(&s21, &ratio(2, 1)).unwrap());
        assert!(closed_form_condition(&s21, &ratio(1, 2)).unwrap());
    }

    #[test]
    fn cross_validation() {
        for ranks in [vec![2, 1], vec![1, 1, 1], vec![2, 2]] {
            let spec = FreeFactorSpec::new(ranks).unwrap();
            for q in [ratio(1, 1), ratio(3, 2), ratio(2, 1), ratio(3, 1), ratio(1, 3)] {
                let v = cross_validate_with_rho(&spec, &q).unwrap();
                assert!(v.agree, "{v:?}");
            }
        }
    }

    #[test]
    fn freeness() {
        let sys = Arc::new(catalog::z2_free_z2_squared());
        let blocks = free_factor_blocks(&sys);
        assert_eq!(blocks.len(), 2);
        let r = freeness_test(&sys, &blocks, 5).unwrap();
        assert!(r.witnesses.is_empty());
        assert!(r.checked > 10);
        let bad = [sys.all()];
        assert!(freeness_test(&sys, &bad, 3).is_ok());
        let t = sys.generator("t").unwrap();
        let u = sys.generator("u").unwrap();
        let split = [
            GenSet::single(sys.generator("s").unwrap()),
            GenSet::single(t),
            GenSet::single(u),
        ];
        assert!(freeness_test(&sys, &split, 3).is_err());
    }
}
