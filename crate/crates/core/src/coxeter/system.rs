use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported generating set; generator sets are packed into a `u64`.
pub const MAX_GENERATORS: usize = 64;

/// Default cap on the number of elements a ball enumeration may produce.
pub const DEFAULT_BALL_CAP: usize = 1_000_000;

/// Index of a generator in the ordered generator list of its system.
///
/// The derived ordering is the input order, which is also the letter order
/// used for ShortLex comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId(pub u8);

impl GeneratorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    fn bit(self) -> u64 {
        1u64 << self.0
    }
}

/// A subset of the generators, packed as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GenSet(pub u64);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn single(s: GeneratorId) -> Self {
        GenSet(s.bit())
    }

    pub fn contains(self, s: GeneratorId) -> bool {
        self.0 & s.bit() != 0
    }

    pub fn insert(&mut self, s: GeneratorId) {
        self.0 |= s.bit();
    }

    pub fn remove(&mut self, s: GeneratorId) {
        self.0 &= !s.bit();
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: GenSet) -> GenSet {
        GenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GenSet) -> GenSet {
        GenSet(self.0 & other.0)
    }

    pub fn difference(self, other: GenSet) -> GenSet {
        GenSet(self.0 & !other.0)
    }

    /// Members in increasing generator order.
    pub fn iter(self) -> impl Iterator<Item = GeneratorId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            Some(GeneratorId(i as u8))
        })
    }
}

impl FromIterator<GeneratorId> for GenSet {
    fn from_iter<I: IntoIterator<Item = GeneratorId>>(iter: I) -> Self {
        let mut set = GenSet::EMPTY;
        for s in iter {
            set.insert(s);
        }
        set
    }
}

/// A right-angled Coxeter system: an ordered list of involutive generators
/// together with the symmetric relation "m(s,t) = 2". Every pair not marked
/// as commuting has m(s,t) = ∞.
#[derive(Clone)]
pub struct CoxeterSystem {
    names: Vec<String>,
    /// `commuting[s]`: generators t ≠ s with m(s,t) = 2.
    commuting: Vec<GenSet>,
    components: Vec<GenSet>,
    ball_cap: usize,
}

impl PartialEq for CoxeterSystem {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.commuting == other.commuting
    }
}

impl Eq for CoxeterSystem {}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("generators", &self.names)
            .field("commuting_pairs", &self.commuting_pairs_named())
            .finish()
    }
}

impl CoxeterSystem {
    /// Builds a system from generator names and index pairs of commuting
    /// generators.
    pub fn new(names: Vec<String>, commuting_pairs: &[(usize, usize)]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::input("a Coxeter system needs at least one generator"));
        }
        if names.len() > MAX_GENERATORS {
            return Err(Error::input(format!(
                "{} generators requested, at most {MAX_GENERATORS} are supported",
                names.len()
            )));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() || name == "1" || name.chars().any(|c| c.is_whitespace() || "(),.*+/".contains(c)) {
                return Err(Error::input(format!("invalid generator name {name:?}")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::input(format!("duplicate generator {name:?}")));
            }
        }
        let n = names.len();
        let mut commuting = vec![GenSet::EMPTY; n];
        let mut pairs_seen = HashSet::new();
        for &(a, b) in commuting_pairs {
            if a >= n || b >= n {
                return Err(Error::input(format!("commuting pair ({a}, {b}) out of range")));
            }
            if a == b {
                return Err(Error::input(format!(
                    "self pair ({}, {}) is not allowed; m(s,s) = 1 is implicit",
                    names[a], names[b]
                )));
            }
            if !pairs_seen.insert((a.min(b), a.max(b))) {
                return Err(Error::input(format!(
                    "duplicate commuting pair ({}, {})",
                    names[a], names[b]
                )));
            }
            commuting[a].insert(GeneratorId(b as u8));
            commuting[b].insert(GeneratorId(a as u8));
        }
        let components = non_commutation_components(&commuting);
        Ok(CoxeterSystem {
            names,
            commuting,
            components,
            ball_cap: DEFAULT_BALL_CAP,
        })
    }

    /// Builds a system from generator names and name pairs.
    pub fn from_named_pairs<S: AsRef<str>>(names: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let index = |s: &str| -> Result<usize> {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| Error::input(format!("unknown generator {s:?} in commuting pair")))
        };
        let pairs = pairs
            .iter()
            .map(|(a, b)| Ok((index(a.as_ref())?, index(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        CoxeterSystem::new(names, &pairs)
    }

    pub fn with_ball_cap(mut self, cap: usize) -> Self {
        self.ball_cap = cap;
        self
    }

    pub fn ball_cap(&self) -> usize {
        self.ball_cap
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn generators(&self) -> impl Iterator<Item = GeneratorId> + '_ {
        (0..self.rank()).map(|i| GeneratorId(i as u8))
    }

    pub fn all(&self) -> GenSet {
        if self.rank() == 64 {
            GenSet(u64::MAX)
        } else {
            GenSet((1u64 << self.rank()) - 1)
        }
    }

    pub fn name(&self, s: GeneratorId) -> &str {
        &self.names[s.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator(&self, name: &str) -> Option<GeneratorId> {
        self.names.iter().position(|n| n == name).map(|i| GeneratorId(i as u8))
    }

    pub fn check_generator(&self, s: GeneratorId) -> Result<()> {
        if s.index() < self.rank() {
            Ok(())
        } else {
            Err(Error::input(format!(
                "generator index {} out of range for a system with {} generators",
                s.0,
                self.rank()
            )))
        }
    }

    /// m(s,t) = 2 for distinct s, t. A generator is not reported as
    /// commuting with itself here; see [`CoxeterSystem::centralizer_set`].
    pub fn commutes(&self, s: GeneratorId, t: GeneratorId) -> bool {
        self.commuting[s.index()].contains(t)
    }

    /// Generators t ≠ s with m(s,t) = 2.
    pub fn strict_commuting(&self, s: GeneratorId) -> GenSet {
        self.commuting[s.index()]
    }

    /// C(s) = {s} ∪ {t : m(s,t) = 2}; its special subgroup is the
    /// centralizer of s.
    pub fn centralizer_set(&self, s: GeneratorId) -> GenSet {
        let mut c = self.commuting[s.index()];
        c.insert(s);
        c
    }

    /// m(s,t) = ∞.
    pub fn is_infinite_pair(&self, s: GeneratorId, t: GeneratorId) -> bool {
        s != t && !self.commutes(s, t)
    }

    pub fn commuting_pairs(&self) -> Vec<(GeneratorId, GeneratorId)> {
        let mut out = Vec::new();
        for s in self.generators() {
            for t in self.commuting[s.index()].iter() {
                if s < t {
                    out.push((s, t));
                }
            }
        }
        out
    }

    fn commuting_pairs_named(&self) -> Vec<(&str, &str)> {
        self.commuting_pairs()
            .into_iter()
            .map(|(s, t)| (self.name(s), self.name(t)))
            .collect()
    }

    /// Irreducible components: connected components of the graph whose
    /// edges are the pairs with m(s,t) = ∞. Ordered by smallest member.
    pub fn components(&self) -> &[GenSet] {
        &self.components
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    /// A right-angled system is finite exactly when all generators commute.
    pub fn is_finite(&self) -> bool {
        self.generators().all(|s| self.centralizer_set(s) == self.all())
    }

    /// The special subsystem on a subset of generators, with generators
    /// renumbered in their original relative order.
    pub fn restrict(&self, subset: GenSet) -> CoxeterSystem {
        let members: Vec<GeneratorId> = subset.iter().collect();
        let names = members.iter().map(|&s| self.name(s).to_string()).collect();
        let mut pairs = Vec::new();
        for (i, &s) in members.iter().enumerate() {
            for (j, &t) in members.iter().enumerate().skip(i + 1) {
                if self.commutes(s, t) {
                    pairs.push((i, j));
                }
            }
        }
        CoxeterSystem::new(names, &pairs)
            .expect("restriction of a valid system is valid")
            .with_ball_cap(self.ball_cap)
    }

    /// Detects W ≅ Z₂ ∗ Z₂^k (k ≥ 2): one generator commuting with nothing
    /// while all the others pairwise commute. Returns the free-factor
    /// generator.
    pub fn free_z2_factor_generator(&self) -> Option<GeneratorId> {
        if self.rank() < 3 {
            return None;
        }
        let isolated: Vec<GeneratorId> = self
            .generators()
            .filter(|&s| self.strict_commuting(s).is_empty())
            .collect();
        let [s] = isolated.as_slice() else {
            return None;
        };
        let rest = self.all().difference(GenSet::single(*s));
        rest.iter()
            .all(|t| rest.is_subset(self.centralizer_set(t)))
            .then_some(*s)
    }

    pub fn describe_set(&self, set: GenSet) -> String {
        let names: Vec<&str> = set.iter().map(|s| self.name(s)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

fn non_commutation_components(commuting: &[GenSet]) -> Vec<GenSet> {
    let n = commuting.len();
    let mut assigned = GenSet::EMPTY;
    let mut components = Vec::new();
    for start in 0..n {
        let start = GeneratorId(start as u8);
        if assigned.contains(start) {
            continue;
        }
        let mut component = GenSet::single(start);
        let mut stack = vec![start];
        while let Some(s) = stack.pop() {
            for t in 0..n {
                let t = GeneratorId(t as u8);
                if t != s && !commuting[s.index()].contains(t) && !component.contains(t) {
                    component.insert(t);
                    stack.push(t);
                }
            }
        }
        assigned = assigned.union(component);
        components.push(component);
    }
    components
}

/// Small named systems used throughout the tests and the verification suite.
pub mod catalog {
    use super::CoxeterSystem;

    fn letters(n: usize) -> Vec<String> {
        const NAMES: [&str; 8] = ["s", "t", "u", "v", "w", "x", "y", "z"];
        (0..n)
            .map(|i| NAMES.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("g{i}")))
            .collect()
    }

    /// Z₂ ∗ ⋯ ∗ Z₂ with `n` factors; no generators commute.
    pub fn free_product(n: usize) -> CoxeterSystem {
        CoxeterSystem::new(letters(n), &[]).unwrap()
    }

    /// Z₂^n: all generators commute.
    pub fn abelian(n: usize) -> CoxeterSystem {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j));
            }
        }
        CoxeterSystem::new(letters(n), &pairs).unwrap()
    }

    /// The infinite dihedral group ⟨s, t⟩.
    pub fn infinite_dihedral() -> CoxeterSystem {
        free_product(2)
    }

    /// Z₂ ∗ Z₂²: `s` is the free factor, `t` and `u` commute.
    pub fn z2_free_z2_squared() -> CoxeterSystem {
        CoxeterSystem::new(letters(3), &[(1, 2)]).unwrap()
    }

    /// Commutation graph an `n`-cycle; `n = 5` is the right-angled pentagon
    /// group.
    pub fn cycle(n: usize) -> CoxeterSystem {
        let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        CoxeterSystem::new(letters(n), &pairs).unwrap()
    }

    pub fn pentagon() -> CoxeterSystem {
        cycle(5)
    }

    /// Commutation graph a path on `n` vertices.
    pub fn path(n: usize) -> CoxeterSystem {
        let pairs: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        CoxeterSystem::new(letters(n), &pairs).unwrap()
    }

    /// Z₂^{k₁} ∗ ⋯ ∗ Z₂^{kₙ}: commutation graph a disjoint union of cliques.
    /// Generator `j` of block `i` is named `a{i+1}_{j+1}`.
    pub fn disjoint_cliques(ranks: &[usize]) -> CoxeterSystem {
        let mut names = Vec::new();
        let mut pairs = Vec::new();
        for (i, &k) in ranks.iter().enumerate() {
            let first = names.len();
            for j in 0..k {
                names.push(format!("a{}_{}", i + 1, j + 1));
            }
            for a in first..names.len() {
                for b in a + 1..names.len() {
                    pairs.push((a, b));
                }
            }
        }
        CoxeterSystem::new(names, &pairs).unwrap()
    }

    /// The three systems named in the acceptance criteria.
    pub fn named_test_systems() -> Vec<(&'static str, CoxeterSystem)> {
        vec![
            ("free3", free_product(3)),
            ("z2*z2^2", z2_free_z2_squared()),
            ("pentagon", pentagon()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    #[test]
    fn rejects_self_and_duplicate_pairs() {
        let names = vec!["s".to_string(), "t".to_string()];
        assert!(CoxeterSystem::new(names.clone(), &[(0, 0)]).is_err());
        assert!(CoxeterSystem::new(names.clone(), &[(0, 1), (1, 0)]).is_err());
        assert!(CoxeterSystem::new(vec!["s".into(), "s".into()], &[]).is_err());
        assert!(CoxeterSystem::new(names, &[(0, 2)]).is_err());
    }

    #[test]
    fn components_and_irreducibility() {
        assert!(pentagon().is_irreducible());
        assert!(free_product(3).is_irreducible());
        let z2xz2 = abelian(2);
        assert_eq!(z2xz2.components().len(), 2);
        assert!(z2xz2.is_finite());
        assert!(!pentagon().is_finite());
        let cliques = disjoint_cliques(&[2, 1]);
        assert!(cliques.is_irreducible());
        // D∞ × D∞ is the 4-cycle.
        assert_eq!(cycle(4).components().len(), 2);
    }

    #[test]
    fn centralizer_contains_generator() {
        let sys = z2_free_z2_squared();
        let t = GeneratorId(1);
        let c = sys.centralizer_set(t);
        assert!(c.contains(t));
        assert!(c.contains(GeneratorId(2)));
        assert!(!c.contains(GeneratorId(0)));
    }

    #[test]
    fn detects_free_z2_factor_shape() {
        assert_eq!(z2_free_z2_squared().free_z2_factor_generator(), Some(GeneratorId(0)));
        assert_eq!(
            disjoint_cliques(&[3, 1]).free_z2_factor_generator(),
            Some(GeneratorId(3))
        );
        assert_eq!(free_product(3).free_z2_factor_generator(), None);
        assert_eq!(pentagon().free_z2_factor_generator(), None);
        assert_eq!(infinite_dihedral().free_z2_factor_generator(), None);
    }

    #[test]
    fn genset_iterates_in_order() {
        let set: GenSet = [GeneratorId(5), GeneratorId(1), GeneratorId(3)].into_iter().collect();
        let v: Vec<u8> = set.iter().map(|g| g.0).collect();
        assert_eq!(v, vec![1, 3, 5]);
        assert_eq!(set.len(), 3);
    }
}
