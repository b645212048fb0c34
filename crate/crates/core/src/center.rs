//! The center of the Hecke-von Neumann algebra: factoriality classification
//! and numerical certificates for the radial symbol `ζ(w) = q^{|w|/2}`.
//!
//! For an irreducible infinite system with `|S| ≥ 3` the algebra is a factor
//! exactly when `q ∈ [ρ, ρ⁻¹]`; otherwise the center is two-dimensional and,
//! for `q < ρ`, `W(q)⁻¹ T(ζ)` is the nontrivial central projection.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cosets::InfinitePair;
use crate::coxeter::{Ball, CoxeterSystem, Element, GeneratorId, Side};
use crate::error::{Error, Result};
use crate::growth::{growth_series, partial_sum, rational_to_string, rho, Rho};
use crate::hecke::{apply_generator, Coefficient};
use crate::laurent::LaurentPoly;
use crate::rational::to_f64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    Factor,
    #[serde(rename = "factor_plus_C")]
    FactorPlusC,
    NotApplicable {
        reason: String,
    },
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::Factor => "factor",
            Classification::FactorPlusC => "factor_plus_C",
            Classification::NotApplicable { .. } => "not_applicable",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::NotApplicable { reason } => write!(f, "not_applicable ({reason})"),
            other => f.write_str(other.label()),
        }
    }
}

/// Classification of one irreducible component, or of the block of all
/// single-generator components taken together.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentClass {
    pub generators: String,
    pub rank: usize,
    pub rho: Option<f64>,
    pub classification: Classification,
    pub center_dimension: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CenterReport {
    pub q: String,
    /// ρ of the whole system; `None` stands for `+∞`.
    pub rho: Option<f64>,
    pub classification: Classification,
    pub center_dimension: Option<u64>,
    pub components: Vec<ComponentClass>,
    pub residuals: BTreeMap<String, f64>,
    pub radii: Vec<usize>,
}

fn finite_rho(r: &Rho) -> Option<f64> {
    (!r.is_infinite()).then(|| r.value())
}

/// Classifies the center at an exact parameter `q > 0`.
///
/// Components with at least three generators are factors for
/// `q ∈ [ρ_C, ρ_C⁻¹]` and have a two-dimensional center otherwise.
/// Single-generator components together form `Z₂^k`, whose algebra is
/// commutative of dimension `2^k`. Infinite dihedral components are outside
/// the criterion. The center of the whole algebra is the tensor product of
/// the component centers.
pub fn classify(sys: &CoxeterSystem, q: &BigRational) -> Result<CenterReport> {
    if !q.is_positive() {
        return Err(Error::input("q must be positive"));
    }
    let mut components = Vec::new();
    let mut singletons = Vec::new();
    let mut dihedral = false;
    for &c in sys.components() {
        match c.len() {
            1 => singletons.push(c),
            2 => {
                dihedral = true;
                components.push(ComponentClass {
                    generators: sys.describe_set(c),
                    rank: 2,
                    rho: Some(1.0),
                    classification: Classification::NotApplicable {
                        reason: "infinite dihedral component: the criterion requires |S| ≥ 3".into(),
                    },
                    center_dimension: None,
                });
            }
            rank => {
                let sub = sys.restrict(c);
                let r = rho(&sub)?;
                let (classification, dim) = if r.interval_contains(q) {
                    (Classification::Factor, 1)
                } else {
                    (Classification::FactorPlusC, 2)
                };
                components.push(ComponentClass {
                    generators: sys.describe_set(c),
                    rank,
                    rho: finite_rho(&r),
                    classification,
                    center_dimension: Some(dim),
                });
            }
        }
    }
    if !singletons.is_empty() {
        let k = singletons.len();
        let set = singletons
            .iter()
            .fold(crate::coxeter::GenSet::EMPTY, |a, b| a.union(*b));
        components.push(ComponentClass {
            generators: sys.describe_set(set),
            rank: k,
            rho: None,
            classification: Classification::NotApplicable {
                reason: format!(
                    "finite abelian factor Z2^{k}: commutative algebra of dimension {}",
                    1u64 << k
                ),
            },
            center_dimension: Some(1u64 << k),
        });
    }

    let center_dimension = if dihedral {
        None
    } else {
        components
            .iter()
            .try_fold(1u64, |acc, c| c.center_dimension.map(|d| acc.saturating_mul(d)))
    };
    let classification = if dihedral {
        Classification::NotApplicable {
            reason: "a component is infinite dihedral; the criterion requires |S| ≥ 3".into(),
        }
    } else if sys.is_finite() {
        Classification::NotApplicable {
            reason: format!(
                "finite group: commutative algebra of dimension {}",
                center_dimension.unwrap_or(0)
            ),
        }
    } else {
        match center_dimension {
            Some(1) => Classification::Factor,
            Some(2) if sys.is_irreducible() => Classification::FactorPlusC,
            Some(d) => Classification::NotApplicable {
                reason: format!("reducible system: center of dimension {d} is the tensor product of component centers"),
            },
            None => Classification::NotApplicable {
                reason: "center dimension unknown".into(),
            },
        }
    };
    Ok(CenterReport {
        q: rational_to_string(q),
        rho: finite_rho(&rho(sys)?),
        classification,
        center_dimension,
        components,
        residuals: BTreeMap::new(),
        radii: Vec::new(),
    })
}

/// The radial vector `ζ(w) = q^{|w|/2}` on a ball.
#[derive(Debug, Clone)]
pub struct ZetaSymbol {
    pub ball: Ball,
    pub values: Vec<f64>,
    /// `Σ_{|w| ≤ R} q^{|w|}`, exact.
    pub partial_norm_sq: BigRational,
}

fn require_q_at_most_one(q: &BigRational) -> Result<()> {
    if !q.is_positive() {
        return Err(Error::input("q must be positive"));
    }
    if *q > BigRational::one() {
        return Err(Error::precondition(format!(
            "q = {} > 1: apply j and work at q⁻¹ = {}",
            rational_to_string(q),
            rational_to_string(&q.recip())
        )));
    }
    Ok(())
}

pub fn zeta_symbol(sys: &CoxeterSystem, q: &BigRational, radius: usize) -> Result<ZetaSymbol> {
    require_q_at_most_one(q)?;
    let ball = sys.ball(radius)?;
    let root = to_f64(q).sqrt();
    let values = ball.elements().iter().map(|w| root.powi(w.len() as i32)).collect();
    let mut partial = BigRational::zero();
    let mut power = BigRational::one();
    for a in ball.sphere_counts() {
        partial += BigRational::from_integer(a.into()) * &power;
        power *= q;
    }
    Ok(ZetaSymbol {
        ball,
        values,
        partial_norm_sq: partial,
    })
}

/// `ζ` in the formal ring: `ζ(w) = u^{|w|}`.
pub fn zeta_exact(ball: &Ball) -> Vec<LaurentPoly> {
    ball.elements()
        .iter()
        .map(|w| LaurentPoly::u_pow(w.len() as i32))
        .collect()
}

/// Partial sums `‖ζ_r‖² = Σ_{n ≤ r} a_n qⁿ` for `r = 0..=radius`, with the
/// sphere counts taken from the verified growth series.
pub fn zeta_partial_norms(sys: &CoxeterSystem, q: &BigRational, radius: usize) -> Result<Vec<BigRational>> {
    require_q_at_most_one(q)?;
    let series = growth_series(sys)?;
    let mut out = Vec::with_capacity(radius + 1);
    let mut acc = BigRational::zero();
    let mut power = BigRational::one();
    for a in series.taylor(radius) {
        acc += a * &power;
        power *= q;
        out.push(acc.clone());
    }
    Ok(out)
}

/// Checks `ξ(sw) = ξ(ws)` and `ξ(sws) = ξ(w) + p ξ(sw)` for every `w` in the
/// ball with `|sws| = |w| + 2` and `sws` in the ball. Returns violations.
pub fn check_symbol_commutation<C: Coefficient>(
    sys: &CoxeterSystem,
    ball: &Ball,
    s: GeneratorId,
    xi: &[C],
    p: &C,
) -> Result<Vec<Element>> {
    sys.check_generator(s)?;
    if xi.len() != ball.len() {
        return Err(Error::input("symbol length does not match the ball"));
    }
    let tol = 1e-12;
    let mut witnesses = Vec::new();
    for (i, w) in ball.elements().iter().enumerate() {
        let (sw, d1) = sys.mult_gen(w, s, Side::Left);
        if d1 < 0 {
            continue;
        }
        let (sws, d2) = sys.mult_gen(&sw, s, Side::Right);
        if d2 < 0 {
            continue;
        }
        let Some(k) = ball.index_of(&sws) else {
            continue;
        };
        let ws = sys.mult_gen(w, s, Side::Right).0;
        let (j_sw, j_ws) = match (ball.index_of(&sw), ball.index_of(&ws)) {
            (Some(a), Some(b)) => (a, b),
            _ => continue,
        };
        let mut rhs = xi[i].clone();
        rhs.add_assign_ref(&p.mul_ref(&xi[j_sw]));
        if !xi[j_sw].approx_eq(&xi[j_ws], tol) || !xi[k].approx_eq(&rhs, tol) {
            witnesses.push(w.clone());
        }
    }
    Ok(witnesses)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CosetCheck {
    pub w0: String,
    /// Coset elements inside the ball that were compared.
    pub checked: usize,
    pub witnesses: Vec<String>,
}

/// Checks `ξ(x) = ξ(w₀)·u^{|x| − |w₀|}` on `DwD ∩ ball`, where `w₀` is the
/// shortest element of the coset and `u = q^{1/2}`.
pub fn double_coset_symbol_check<C: Coefficient>(
    sys: &CoxeterSystem,
    ball: &Ball,
    pair: InfinitePair,
    w: &Element,
    xi: &[C],
    u: &C,
) -> Result<CosetCheck> {
    if xi.len() != ball.len() {
        return Err(Error::input("symbol length does not match the ball"));
    }
    let info = sys.shortest_rep(pair, w)?;
    if !info.nondegenerate {
        return Err(Error::precondition(format!(
            "the coset must be non-degenerate, but w0 = {} centralizes <{}, {}>",
            sys.format_element(&info.w0),
            sys.name(pair.s()),
            sys.name(pair.t())
        )));
    }
    let Some(i0) = ball.index_of(&info.w0) else {
        return Err(Error::input("the shortest coset element lies outside the ball"));
    };
    let base = xi[i0].clone();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(i0);
    queue.push_back(i0);
    let mut witnesses = Vec::new();
    let mut powers: Vec<C> = vec![C::one()];
    while let Some(i) = queue.pop_front() {
        let x = ball.get(i);
        let k = x.len() - info.w0.len();
        while powers.len() <= k {
            let next = powers.last().expect("nonempty").mul_ref(u);
            powers.push(next);
        }
        let expected = base.mul_ref(&powers[k]);
        if !xi[i].approx_eq(&expected, 1e-12) {
            witnesses.push(sys.format_element(x));
        }
        for g in [pair.s(), pair.t()] {
            for side in [Side::Left, Side::Right] {
                let (y, _) = sys.mult_gen(x, g, side);
                if let Some(j) = ball.index_of(&y) {
                    if seen.insert(j) {
                        queue.push_back(j);
                    }
                }
            }
        }
    }
    Ok(CosetCheck {
        w0: sys.format_element(&info.w0),
        checked: seen.len(),
        witnesses,
    })
}

/// Shortest representatives of the non-degenerate `D`-double cosets meeting
/// the ball.
pub fn nondegenerate_cosets(sys: &CoxeterSystem, ball: &Ball, pair: InfinitePair) -> Result<Vec<Element>> {
    let mut reps = BTreeSet::new();
    for w in ball.elements() {
        let info = sys.shortest_rep(pair, w)?;
        if info.nondegenerate {
            reps.insert(info.w0);
        }
    }
    Ok(reps.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecurrenceReport {
    pub q: f64,
    pub p: f64,
    pub values: Vec<f64>,
    /// Coefficient of the mode `q^{n/2}`.
    pub alpha: f64,
    /// Coefficient of the mode `(−q^{−1/2})^n`.
    pub beta: f64,
    pub admissible: bool,
}

/// Iterates `f(n+2) = p f(n+1) + f(n)` and splits `f` into the modes
/// `α q^{n/2} + β (−q^{−1/2})^n`.
///
/// The two mode ratios differ by `q^{1/2} + q^{−1/2} ≥ 2`, so the split
/// exists for every `q > 0` (at `q = 1` the modes are `1` and `(−1)^n`).
/// Square-summability along the coset forces `β = 0` for `q ≤ 1` and
/// `α = 0` for `q > 1`.
pub fn coset_recurrence(q: f64, f0: f64, f1: f64, n: usize) -> Result<RecurrenceReport> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::input(format!("q must be a positive real, got {q}")));
    }
    let r = q.sqrt();
    let p = (q - 1.0) / r;
    let mut values = vec![f0, f1];
    while values.len() < n + 1 {
        let k = values.len();
        values.push(p * values[k - 1] + values[k - 2]);
    }
    values.truncate(n + 1);
    let second = -1.0 / r;
    let beta = (f0 * r - f1) / (r - second);
    let alpha = f0 - beta;
    let scale = f0.abs().max(f1.abs()).max(1.0);
    let tol = 1e-12 * scale;
    let admissible = if q <= 1.0 {
        beta.abs() <= tol
    } else {
        alpha.abs() <= tol
    };
    Ok(RecurrenceReport {
        q,
        p,
        values,
        alpha,
        beta,
        admissible,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionReport {
    pub q: String,
    pub radius: usize,
    pub inner_radius: usize,
    pub growth_at_q: f64,
    pub partial_norm_sq: f64,
    /// `(W(q) − ‖ζ_R‖²)/W(q)`, exact before conversion.
    pub tail_bound: f64,
    /// Vertices and generators where `T^r_s ζ = q^{1/2} ζ` was checked exactly.
    pub eigen_checks: usize,
    pub eigen_violations: Vec<String>,
    /// `‖P² − P‖` on the inner block.
    pub idempotence_residual: f64,
    /// `max_s ‖[T_s, P]‖` on the inner block.
    pub commutator_residual: f64,
    /// `max_y |(T(ζ)ζ)(y)/ζ(y) − W(q)| / W(q)` on the inner block.
    pub eigenvalue_residual: f64,
    /// `max |P[x][y] − P[y][x]|` over the computed block.
    pub symmetry_residual: f64,
}

impl ProjectionReport {
    pub fn passed(&self) -> bool {
        self.eigen_violations.is_empty()
            && self.idempotence_residual < self.tail_bound
            && self.commutator_residual < 1e-9
            && self.symmetry_residual < 1e-9
            && self.eigenvalue_residual <= self.tail_bound + 1e-9
    }
}

/// Right multiplication table on a ball: `ys` as an index (if inside) and
/// whether the length dropped.
fn right_table(sys: &CoxeterSystem, ball: &Ball, rows: usize) -> Vec<Vec<(Option<usize>, bool)>> {
    ball.elements()[..rows]
        .iter()
        .map(|y| {
            sys.generators()
                .map(|s| {
                    let (ys, delta) = sys.mult_gen(y, s, Side::Right);
                    (ball.index_of(&ys), delta < 0)
                })
                .collect()
        })
        .collect()
}

/// Numerical certificate that `P = W(q)⁻¹ T(ζ)` is a central projection.
///
/// The columns `T(ζ)δ_x = ζ·T_x` for `x ∈ B_{c+1}` (`c = inner_radius`) are
/// computed by honest right actions of the generators on `ζ` over a ball
/// large enough that every entry with row in `B_R` is exact. The checks:
/// the exact eigen-relation `T^r_s ζ = q^{1/2}ζ` on `B_{R−1}`, `‖P² − P‖` on
/// the block `B_c × B_c` with the inner sum over `B_R`, the commutator with
/// each left generator on the same block, and `T(ζ)ζ ≈ W(q)ζ` on `B_c`.
pub fn verify_central_projection(
    sys: &CoxeterSystem,
    q: &BigRational,
    radius: usize,
    inner_radius: usize,
) -> Result<ProjectionReport> {
    if !sys.is_irreducible() || sys.is_finite() || sys.rank() < 3 {
        return Err(Error::precondition(
            "central projection certificate requires an irreducible infinite system with |S| ≥ 3",
        ));
    }
    if !q.is_positive() {
        return Err(Error::input("q must be positive"));
    }
    let series = growth_series(sys)?;
    let r = series.rho()?;
    if r.compare(q) != std::cmp::Ordering::Less {
        return Err(Error::precondition(format!(
            "q = {} ≥ ρ ≈ {r}: no central projection exists since ζ is not square-summable",
            rational_to_string(q)
        )));
    }
    if radius < inner_radius + 2 {
        return Err(Error::input(format!(
            "radius must be at least inner radius + 2 = {}",
            inner_radius + 2
        )));
    }

    // (a) exact eigen-relation on B_{R−1}.
    let ball_r = sys.ball(radius)?;
    let zeta_x = zeta_exact(&ball_r);
    let u = LaurentPoly::u_pow(1);
    let p_exact = LaurentPoly::hecke_p();
    let mut eigen_checks = 0;
    let mut eigen_violations = Vec::new();
    let interior = ball_r.size_up_to(radius - 1);
    for s in sys.generators() {
        let applied = apply_generator(sys, &ball_r, &zeta_x, s, Side::Right, &p_exact)?;
        for i in 0..interior {
            eigen_checks += 1;
            let expected = &u * &zeta_x[i];
            if applied[i].as_ref() != Some(&expected) {
                eigen_violations.push(format!("{} at {}", sys.name(s), sys.format_element(ball_r.get(i))));
            }
        }
    }

    // Columns of T(ζ) over a ball where all needed entries are exact.
    let outer = radius + inner_radius + 1;
    let big = sys.ball(outer)?;
    let table = right_table(sys, &big, big.size_up_to(outer - 1));
    let qf = to_f64(q);
    let root = qf.sqrt();
    let p = (qf - 1.0) / root;
    let zeta: Vec<f64> = big.elements().iter().map(|w| root.powi(w.len() as i32)).collect();
    let block = big.size_up_to(inner_radius + 1);
    let rows = ball_r.len();
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(block);
    for x in &big.elements()[..block] {
        let mut v = zeta.clone();
        let mut valid = big.len();
        for &s in x.letters() {
            valid = big.size_up_to(big.elements()[valid - 1].len() - 1);
            let mut next = vec![f64::NAN; big.len()];
            for (i, entry) in next.iter_mut().enumerate().take(valid) {
                let (ys, shorter) = table[i][s.index()];
                let j = ys.expect("row index stays inside the ball");
                *entry = v[j] + if shorter { p * v[i] } else { 0.0 };
            }
            v = next;
        }
        v.truncate(rows);
        columns.push(v);
    }

    let w_exact = series
        .eval_rational(q)
        .ok_or_else(|| Error::Internal("growth series has a pole at q".into()))?;
    let w = to_f64(&w_exact);
    let partial = partial_sum(&series, q, radius);
    let tail_bound = to_f64(&((&w_exact - &partial) / &w_exact));

    let inner = big.size_up_to(inner_radius);
    let dot = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };

    let mut symmetry_residual: f64 = 0.0;
    for (x, col) in columns.iter().enumerate() {
        for (y, other) in columns.iter().enumerate() {
            symmetry_residual = symmetry_residual.max((col[y] - other[x]).abs() / w);
        }
    }

    let mut frob = 0.0;
    for x in 0..inner {
        for y in 0..inner {
            let p2 = dot(&columns[y], &columns[x]) / (w * w);
            let d = p2 - columns[x][y] / w;
            frob += d * d;
        }
    }
    let idempotence_residual = frob.sqrt();

    let mut commutator_residual: f64 = 0.0;
    for s in sys.generators() {
        let mut frob = 0.0;
        for x in 0..inner {
            let (sx, dx) = sys.mult_gen(big.get(x), s, Side::Left);
            let sx = big.index_of(&sx).expect("inside the block");
            for y in 0..inner {
                let (sy, dy) = sys.mult_gen(big.get(y), s, Side::Left);
                let sy = big.index_of(&sy).expect("inside the block");
                let left = columns[x][sy] + if dy < 0 { p * columns[x][y] } else { 0.0 };
                let right = columns[sx][y] + if dx < 0 { p * columns[x][y] } else { 0.0 };
                let d = (left - right) / w;
                frob += d * d;
            }
        }
        commutator_residual = commutator_residual.max(frob.sqrt());
    }

    let mut eigenvalue_residual: f64 = 0.0;
    for y in 0..inner {
        let value = dot(&columns[y], &zeta[..rows]) / zeta[y];
        eigenvalue_residual = eigenvalue_residual.max((value - w).abs() / w);
    }

    Ok(ProjectionReport {
        q: rational_to_string(q),
        radius,
        inner_radius,
        growth_at_q: w,
        partial_norm_sq: to_f64(&partial),
        tail_bound,
        eigen_checks,
        eigen_violations,
        idempotence_residual,
        commutator_residual,
        eigenvalue_residual,
        symmetry_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::catalog;
    use crate::rational::ratio;

    #[test]
    fn classify_examples() {
        let free = catalog::free_product(3);
        let r = classify(&free, &ratio(1, 1)).unwrap();
        assert_eq!(r.classification, Classification::Factor);
        assert_eq!(r.center_dimension, Some(1));
        let r = classify(&free, &ratio(1, 4)).unwrap();
        assert_eq!(r.classification, Classification::FactorPlusC);
        assert_eq!(r.center_dimension, Some(2));
        assert_eq!(r.rho, Some(0.5));
        let r = classify(&catalog::abelian(2), &ratio(3, 7)).unwrap();
        assert_eq!(r.center_dimension, Some(4));
        assert_eq!(r.classification.label(), "not_applicable");
        let r = classify(&catalog::infinite_dihedral(), &ratio(1, 1)).unwrap();
        assert_eq!(r.center_dimension, None);
        assert_eq!(r.classification.label(), "not_applicable");
    }

    #[test]
    fn boundary_is_factor() {
        let free = catalog::free_product(3);
        assert_eq!(
            classify(&free, &ratio(1, 2)).unwrap().classification,
            Classification::Factor
        );
        assert_eq!(
            classify(&free, &ratio(2, 1)).unwrap().classification,
            Classification::Factor
        );
        assert_eq!(
            classify(&free, &ratio(201, 100)).unwrap().classification,
            Classification::FactorPlusC
        );
    }

    #[test]
    fn zeta_norms() {
        let free = catalog::free_product(3);
        let z = zeta_symbol(&free, &ratio(1, 2), 4).unwrap();
        assert_eq!(z.partial_norm_sq, ratio(7, 1));
        assert_eq!(z.values[0], 1.0);
        assert!(zeta_symbol(&free, &ratio(3, 2), 2).is_err());
        let norms = zeta_partial_norms(&free, &ratio(1, 2), 6).unwrap();
        for (n, x) in norms.iter().enumerate() {
            assert_eq!(*x, ratio(2 + 3 * n as i64, 2));
        }
    }

    #[test]
    fn symbol_commutation() {
        let sys = catalog::free_product(3);
        let ball = sys.ball(4).unwrap();
        let zeta = zeta_exact(&ball);
        let p = LaurentPoly::hecke_p();
        for s in sys.generators() {
            assert!(check_symbol_commutation(&sys, &ball, s, &zeta, &p).unwrap().is_empty());
        }
        let mut delta_s = vec![LaurentPoly::zero(); ball.len()];
        delta_s[ball.index_of(&sys.parse_element("s").unwrap()).unwrap()] = LaurentPoly::one();
        let w = check_symbol_commutation(&sys, &ball, GeneratorId(1), &delta_s, &p).unwrap();
        assert_eq!(w, vec![sys.parse_element("s").unwrap()]);
    }

    #[test]
    fn recurrence() {
        let r = coset_recurrence(0.25, 1.0, 0.5, 4).unwrap();
        assert!((r.values[2] - 0.25).abs() < 1e-15);
        assert!((r.alpha - 1.0).abs() < 1e-12 && r.beta.abs() < 1e-12);
        assert!(r.admissible);
        let r = coset_recurrence(0.25, 1.0, -2.0, 4).unwrap();
        assert!(r.alpha.abs() < 1e-12 && (r.beta - 1.0).abs() < 1e-12);
        assert!(!r.admissible);
        let r = coset_recurrence(1.0, 1.0, -1.0, 5).unwrap();
        assert_eq!(r.values, vec![1.0, -1.0, 1.0, -1.0, 1.0, -1.0]);
        assert!(r.alpha.abs() < 1e-12 && (r.beta - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projection_small() {
        let sys = catalog::free_product(3);
        let a = verify_central_projection(&sys, &ratio(1, 4), 5, 1).unwrap();
        let b = verify_central_projection(&sys, &ratio(1, 4), 6, 1).unwrap();
        assert!(a.passed(), "{a:?}");
        assert!(b.idempotence_residual < a.idempotence_residual);
        assert!(verify_central_projection(&sys, &ratio(1, 2), 5, 1).is_err());
    }
}
