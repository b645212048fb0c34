//! Double cosets of infinite dihedral special subgroups and the graph Γ(W,S).
//!
//! For `D = ⟨s,t⟩` with `m(s,t) = ∞`, the double coset `DwD` has a unique
//! shortest element `w₀`; the coset is degenerate when `w₀` commutes with
//! both `s` and `t`. Γ(W,S) joins `w` to `ws` and `sw` whenever some such `D`
//! containing `s` gives a non-degenerate `DwD`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::coxeter::{Ball, CoxeterSystem, Element, GenSet, GeneratorId, Side};
use crate::error::{Error, Result};

/// Two generators with `m(s,t) = ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfinitePair {
    s: GeneratorId,
    t: GeneratorId,
}

impl InfinitePair {
    pub fn new(sys: &CoxeterSystem, s: GeneratorId, t: GeneratorId) -> Result<Self> {
        sys.check_generator(s)?;
        sys.check_generator(t)?;
        if !sys.is_infinite_pair(s, t) {
            return Err(Error::input(format!(
                "({}, {}) is not an infinite pair: m(s,t) = ∞ with s ≠ t is required",
                sys.name(s),
                sys.name(t)
            )));
        }
        Ok(InfinitePair { s, t })
    }

    pub fn s(self) -> GeneratorId {
        self.s
    }

    pub fn t(self) -> GeneratorId {
        self.t
    }

    pub fn as_set(self) -> GenSet {
        [self.s, self.t].into_iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCosetInfo {
    pub pair: InfinitePair,
    pub w0: Element,
    pub commutes_s: bool,
    pub commutes_t: bool,
    pub nondegenerate: bool,
}

/// Order in which descents are stripped when computing `w₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StripOrder {
    /// Left descents first, smaller generator first.
    LeftFirst,
    /// Right descents first, larger generator first.
    RightFirst,
}

impl CoxeterSystem {
    /// The shortest element of `DwD` with its degeneracy data.
    pub fn shortest_rep(&self, pair: InfinitePair, w: &Element) -> Result<DoubleCosetInfo> {
        self.shortest_rep_with_order(pair, w, StripOrder::LeftFirst)
    }

    pub fn shortest_rep_with_order(
        &self,
        pair: InfinitePair,
        w: &Element,
        order: StripOrder,
    ) -> Result<DoubleCosetInfo> {
        self.check_element(w)?;
        let d = pair.as_set();
        let mut gens: Vec<GeneratorId> = d.iter().collect();
        let sides = match order {
            StripOrder::LeftFirst => [Side::Left, Side::Right],
            StripOrder::RightFirst => {
                gens.reverse();
                [Side::Right, Side::Left]
            }
        };
        let mut current = w.clone();
        'strip: loop {
            for side in sides {
                let descents = match side {
                    Side::Left => self.left_descents(&current),
                    Side::Right => self.right_descents(&current),
                };
                if let Some(&g) = gens.iter().find(|&&g| descents.contains(g)) {
                    current = self.mult_gen(&current, g, side).0;
                    continue 'strip;
                }
            }
            break;
        }
        let support = self.support(&current);
        let commutes_s = support.is_subset(self.centralizer_set(pair.s));
        let commutes_t = support.is_subset(self.centralizer_set(pair.t));
        Ok(DoubleCosetInfo {
            pair,
            w0: current,
            commutes_s,
            commutes_t,
            nondegenerate: !(commutes_s && commutes_t),
        })
    }

    /// Elements of `D` of length at most `bound`, as canonical elements.
    pub fn dihedral_elements(&self, pair: InfinitePair, bound: usize) -> Vec<Element> {
        let mut out = vec![Element::identity()];
        for first in [pair.s, pair.t] {
            let mut w = Element::identity();
            for k in 0..bound {
                let g = if k % 2 == 0 {
                    first
                } else if first == pair.s {
                    pair.t
                } else {
                    pair.s
                };
                w = self.mult_gen(&w, g, Side::Right).0;
                out.push(w.clone());
            }
        }
        out
    }

    /// Minimum of `d·w·d'` over `d, d' ∈ D` with `|d|, |d'| ≤ bound`, by
    /// exhaustive search. Oracle for [`CoxeterSystem::shortest_rep`].
    pub fn brute_force_min_rep(&self, pair: InfinitePair, w: &Element, bound: usize) -> Result<Element> {
        self.check_element(w)?;
        if bound < w.len() + 2 {
            return Err(Error::input(format!(
                "bound {bound} must be at least |w| + 2 = {}",
                w.len() + 2
            )));
        }
        let ds = self.dihedral_elements(pair, bound);
        let cap = self.ball_cap();
        if ds.len().saturating_mul(ds.len()) > cap {
            return Err(Error::Capacity {
                what: "double coset search".into(),
                cap,
            });
        }
        let mut best = w.clone();
        for d in &ds {
            let dw = self.multiply(d, w)?;
            for d2 in &ds {
                let x = self.multiply(&dw, d2)?;
                if (x.len(), &x) < (best.len(), &best) {
                    best = x;
                }
            }
        }
        Ok(best)
    }

    /// All infinite pairs `(s, t)` with `s < t`.
    pub fn infinite_pairs(&self) -> Vec<InfinitePair> {
        let mut out = Vec::new();
        for s in self.generators() {
            for t in self.generators() {
                if s < t && self.is_infinite_pair(s, t) {
                    out.push(InfinitePair { s, t });
                }
            }
        }
        out
    }

    /// Generators `s` for which some `D = ⟨s,t⟩` makes `DwD` non-degenerate.
    pub fn gamma_edge_generators(&self, w: &Element) -> GenSet {
        let mut out = GenSet::EMPTY;
        for pair in self.infinite_pairs() {
            if out.contains(pair.s) && out.contains(pair.t) {
                continue;
            }
            let info = self.shortest_rep(pair, w).expect("valid pair and element");
            if info.nondegenerate {
                out.insert(pair.s);
                out.insert(pair.t);
            }
        }
        out
    }

    /// Neighbours of `w` in Γ(W,S).
    pub fn gamma_neighbors(&self, w: &Element) -> Result<BTreeSet<Element>> {
        self.check_element(w)?;
        let mut out = BTreeSet::new();
        for s in self.gamma_edge_generators(w).iter() {
            out.insert(self.mult_gen(w, s, Side::Right).0);
            out.insert(self.mult_gen(w, s, Side::Left).0);
        }
        Ok(out)
    }

    /// Γ(W,S) restricted to the ball of the given radius.
    pub fn build_gamma_ball(&self, radius: usize) -> Result<GammaBallGraph> {
        let ball = self.ball(radius)?;
        let n = ball.len();
        let mut edges = BTreeSet::new();
        let mut uf = UnionFind::<usize>::new(n);
        for (i, w) in ball.elements().iter().enumerate() {
            for v in self.gamma_neighbors(w)? {
                if let Some(j) = ball.index_of(&v) {
                    edges.insert((i.min(j), i.max(j)));
                    uf.union(i, j);
                }
            }
        }
        // Relabel so component ids follow first appearance in ball order.
        let roots = uf.into_labeling();
        let mut relabel = std::collections::HashMap::new();
        let component = roots
            .iter()
            .map(|r| {
                let next = relabel.len();
                *relabel.entry(*r).or_insert(next)
            })
            .collect();
        let mut degrees = vec![0; n];
        for &(a, b) in &edges {
            degrees[a] += 1;
            degrees[b] += 1;
        }
        Ok(GammaBallGraph {
            ball,
            edges,
            component,
            degrees,
        })
    }

    /// Checks the connectivity statement for Γ(W,S) on a ball: all vertices
    /// of length at most `radius − slack` lie in one component, apart from
    /// the identity and, for `W ≅ Z₂ ∗ Z₂^k`, the free-factor generator.
    pub fn verify_component_structure(&self, radius: usize, slack: usize) -> Result<ComponentReport> {
        if !self.is_irreducible() || self.is_finite() {
            return Err(Error::domain(
                "Γ(W,S) component structure requires an irreducible infinite system",
            ));
        }
        if self.rank() < 3 {
            return Err(Error::domain(
                "Γ(W,S) component structure requires |S| ≥ 3 (the infinite dihedral group has no edges)",
            ));
        }
        let graph = self.build_gamma_ball(radius)?;
        let checked = radius.saturating_sub(slack);
        let mut expected = vec![Element::identity()];
        if let Some(s) = self.free_z2_factor_generator() {
            expected.push(self.element_of_generator(s));
        }
        let limit = graph.ball.size_up_to(checked);
        let mut labels: BTreeSet<usize> = BTreeSet::new();
        let mut isolated = Vec::new();
        for i in 0..limit {
            let w = graph.ball.get(i);
            if graph.degree(i) == 0 {
                isolated.push(w.clone());
            }
            if !expected.contains(w) {
                labels.insert(graph.component[i]);
            }
        }
        let main_component = labels.iter().next().copied();
        let exceptional_separate = expected.iter().all(|e| {
            let i = graph.ball.index_of(e).expect("exceptional vertices lie in the ball");
            i >= limit || Some(graph.component[i]) != main_component
        });
        let passed = labels.len() <= 1 && exceptional_separate && isolated == expected;
        Ok(ComponentReport {
            radius,
            slack,
            checked_radius: checked,
            checked_vertices: limit,
            components_among_checked: labels.len() + expected.len(),
            components_in_ball: graph.component_count(),
            exceptional: expected.iter().map(|e| self.format_element(e)).collect(),
            isolated: isolated.iter().map(|e| self.format_element(e)).collect(),
            edges: graph.edges.len(),
            passed,
        })
    }

    /// Support dichotomy on the ball: every `w ≠ 1` with `S(w) ≠ S` is
    /// either the free-factor generator of `Z₂ ∗ Z₂^k` or is joined to `ws`
    /// and `sw` for some `s ∉ S(w)`. Returns the violating elements.
    pub fn gamma_dichotomy_violations(&self, ball: &Ball) -> Vec<Element> {
        let free = self.free_z2_factor_generator().map(|s| self.element_of_generator(s));
        ball.elements()
            .iter()
            .filter(|w| !w.is_identity() && self.support(w) != self.all())
            .filter(|w| free.as_ref() != Some(*w))
            .filter(|w| {
                let outside = self.all().difference(self.support(w));
                let edge_gens = self.gamma_edge_generators(w);
                outside.intersection(edge_gens).is_empty()
            })
            .cloned()
            .collect()
    }
}

/// Γ(W,S) on a ball. Vertices are the ball's elements by index.
#[derive(Debug, Clone)]
pub struct GammaBallGraph {
    ball: Ball,
    /// Unordered pairs `(i, j)` with `i < j`.
    edges: BTreeSet<(usize, usize)>,
    component: Vec<usize>,
    degrees: Vec<usize>,
}

impl GammaBallGraph {
    pub fn radius(&self) -> usize {
        self.ball.radius()
    }

    pub fn ball(&self) -> &Ball {
        &self.ball
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn component_of(&self, i: usize) -> usize {
        self.component[i]
    }

    pub fn component_count(&self) -> usize {
        self.component.iter().max().map_or(0, |m| m + 1)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    /// One `u v` line per edge, using canonical element text.
    pub fn edge_list(&self, sys: &CoxeterSystem) -> String {
        let mut out = String::new();
        for &(a, b) in &self.edges {
            let _ = writeln!(
                out,
                "{} {}",
                sys.format_element(self.ball.get(a)),
                sys.format_element(self.ball.get(b))
            );
        }
        out
    }

    /// Whether scanning every vertex produces each edge from both ends.
    pub fn is_symmetric(&self, sys: &CoxeterSystem) -> Result<bool> {
        for &(a, b) in &self.edges {
            let (wa, wb) = (self.ball.get(a), self.ball.get(b));
            if !sys.gamma_neighbors(wa)?.contains(wb) || !sys.gamma_neighbors(wb)?.contains(wa) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub radius: usize,
    pub slack: usize,
    pub checked_radius: usize,
    pub checked_vertices: usize,
    /// Components meeting the checked vertices, counting each exceptional
    /// vertex separately.
    pub components_among_checked: usize,
    pub components_in_ball: usize,
    pub exceptional: Vec<String>,
    /// Checked vertices with no edges.
    pub isolated: Vec<String>,
    pub edges: usize,
    pub passed: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::catalog;

    fn pair(sys: &CoxeterSystem, s: &str, t: &str) -> InfinitePair {
        InfinitePair::new(sys, sys.generator(s).unwrap(), sys.generator(t).unwrap()).unwrap()
    }

    #[test]
    fn shortest_rep_examples() {
        let sys = catalog::free_product(3);
        let p = pair(&sys, "s", "t");
        let info = sys.shortest_rep(p, &sys.parse_element("s t s").unwrap()).unwrap();
        assert!(info.w0.is_identity());
        let info = sys.shortest_rep(p, &sys.parse_element("u").unwrap()).unwrap();
        assert_eq!(sys.format_element(&info.w0), "u");
        assert!(info.nondegenerate);

        let sys = catalog::z2_free_z2_squared();
        let info = sys
            .shortest_rep(pair(&sys, "s", "t"), &sys.parse_element("s").unwrap())
            .unwrap();
        assert!(info.w0.is_identity());
        assert!(!info.nondegenerate);
    }

    #[test]
    fn pair_validation() {
        let sys = catalog::z2_free_z2_squared();
        let (t, u) = (sys.generator("t").unwrap(), sys.generator("u").unwrap());
        assert!(InfinitePair::new(&sys, t, u).is_err());
        assert!(InfinitePair::new(&sys, t, t).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let sys = catalog::free_product(3);
        let p = pair(&sys, "s", "t");
        let w = sys.parse_element("s u").unwrap();
        assert_eq!(sys.format_element(&sys.brute_force_min_rep(p, &w, 4).unwrap()), "u");
        assert!(sys.brute_force_min_rep(p, &w, 3).is_err());
        let d = catalog::infinite_dihedral();
        let w = d.parse_element("s t").unwrap();
        assert!(d.brute_force_min_rep(pair(&d, "s", "t"), &w, 4).unwrap().is_identity());
    }

    #[test]
    fn neighbors() {
        let sys = catalog::free_product(3);
        assert!(sys.gamma_neighbors(&Element::identity()).unwrap().is_empty());
        let n = sys.gamma_neighbors(&sys.parse_element("u").unwrap()).unwrap();
        for w in ["u.s", "s.u", "u.t", "t.u"] {
            assert!(n.contains(&sys.parse_element(w).unwrap()), "{w}");
        }
        let sys = catalog::z2_free_z2_squared();
        assert!(sys
            .gamma_neighbors(&sys.parse_element("s").unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn gamma_ball_small() {
        let sys = catalog::free_product(3);
        let g = sys.build_gamma_ball(0).unwrap();
        assert_eq!(g.ball().len(), 1);
        assert!(g.edges().is_empty());
        let g = sys.build_gamma_ball(4).unwrap();
        assert!(g.is_symmetric(&sys).unwrap());
        assert_eq!(g.degree(0), 0);
        let main = g.component_of(1);
        for i in 1..g.ball().size_up_to(2) {
            assert_eq!(g.component_of(i), main);
        }
        assert!(g.edge_list(&sys).lines().all(|l| l.split(' ').count() == 2));
    }

    #[test]
    fn component_structure() {
        let sys = catalog::z2_free_z2_squared();
        let r = sys.verify_component_structure(5, 2).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.isolated, vec!["1".to_string(), "s".to_string()]);
        assert!(catalog::infinite_dihedral().verify_component_structure(4, 2).is_err());
        assert!(catalog::abelian(3).verify_component_structure(4, 2).is_err());
    }
}
