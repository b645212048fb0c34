use std::cmp::Ordering;
use std::fmt;

use super::system::{CoxeterSystem, GenSet, GeneratorId};
use crate::error::{Error, Result};

/// A possibly non-reduced word in the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<GeneratorId>);

impl Word {
    pub fn new(letters: Vec<GeneratorId>) -> Self {
        Word(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[GeneratorId] {
        &self.0
    }
}

impl From<&Element> for Word {
    fn from(e: &Element) -> Self {
        Word(e.0.clone())
    }
}

/// A group element, stored as its canonical word: the ShortLex-least
/// reduced expression under the generator order of its system.
///
/// The derived ordering is ShortLex (length first, then lexicographic),
/// which is the ordering used by ball enumeration and by all printers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element(Vec<GeneratorId>);

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Element {
    pub fn identity() -> Self {
        Element(Vec::new())
    }

    /// Wraps a word the caller guarantees to be canonical.
    pub(crate) fn from_canonical(letters: Vec<GeneratorId>) -> Self {
        Element(letters)
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Word length |w|.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[GeneratorId] {
        &self.0
    }

    pub fn last(&self) -> Option<GeneratorId> {
        self.0.last().copied()
    }

    /// (−1)^{|w|}
    pub fn sign(&self) -> i32 {
        if self.0.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Left and right descent sets of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DescentSets {
    pub left: GenSet,
    pub right: GenSet,
}

impl CoxeterSystem {
    pub fn check_word(&self, word: &Word) -> Result<()> {
        word.letters().iter().try_for_each(|&s| self.check_generator(s))
    }

    /// Rejects elements whose letters do not belong to this system.
    pub fn check_element(&self, a: &Element) -> Result<()> {
        a.letters().iter().try_for_each(|&s| {
            self.check_generator(s)
                .map_err(|_| Error::input("element does not belong to this Coxeter system"))
        })
    }

    /// Canonical form of the group element spelled by `word`.
    pub fn normalize(&self, word: &Word) -> Result<Element> {
        self.check_word(word)?;
        let mut reduced = Vec::with_capacity(word.len());
        for &s in word.letters() {
            match self.right_cancel_position(&reduced, s) {
                Some(i) => {
                    reduced.remove(i);
                }
                None => reduced.push(s),
            }
        }
        Ok(Element(self.lex_least(&reduced)))
    }

    /// Position of the occurrence of `s` in the reduced word `w` that
    /// cancels against a trailing `s`: the last occurrence, provided every
    /// letter after it commutes with `s`.
    fn right_cancel_position(&self, w: &[GeneratorId], s: GeneratorId) -> Option<usize> {
        let comm = self.strict_commuting(s);
        for (i, &x) in w.iter().enumerate().rev() {
            if x == s {
                return Some(i);
            }
            if !comm.contains(x) {
                return None;
            }
        }
        None
    }

    fn left_cancel_position(&self, w: &[GeneratorId], s: GeneratorId) -> Option<usize> {
        let comm = self.strict_commuting(s);
        for (i, &x) in w.iter().enumerate() {
            if x == s {
                return Some(i);
            }
            if !comm.contains(x) {
                return None;
            }
        }
        None
    }

    /// Lexicographically least word in the commutation class of a reduced
    /// word: repeatedly emit the smallest letter that can be moved to the
    /// front.
    fn lex_least(&self, w: &[GeneratorId]) -> Vec<GeneratorId> {
        let mut rest = w.to_vec();
        let mut out = Vec::with_capacity(w.len());
        while !rest.is_empty() {
            let mut best = 0;
            let mut seen = GenSet::EMPTY;
            for (i, &x) in rest.iter().enumerate() {
                if seen.is_subset(self.strict_commuting(x)) && x < rest[best] {
                    best = i;
                }
                seen.insert(x);
            }
            out.push(rest.remove(best));
        }
        out
    }

    /// Group product `ab`.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_element(a)?;
        self.check_element(b)?;
        let mut letters = a.0.clone();
        letters.extend_from_slice(&b.0);
        self.normalize(&Word(letters))
    }

    pub fn inverse(&self, a: &Element) -> Element {
        let reversed: Vec<GeneratorId> = a.0.iter().rev().copied().collect();
        Element(self.lex_least(&reversed))
    }

    /// `sa` or `as`, with the exact length change (+1 or −1).
    pub fn mult_gen(&self, a: &Element, s: GeneratorId, side: Side) -> (Element, i8) {
        let mut w = a.0.clone();
        let delta = match side {
            Side::Right => match self.right_cancel_position(&w, s) {
                Some(i) => {
                    w.remove(i);
                    -1
                }
                None => {
                    w.push(s);
                    1
                }
            },
            Side::Left => match self.left_cancel_position(&w, s) {
                Some(i) => {
                    w.remove(i);
                    -1
                }
                None => {
                    w.insert(0, s);
                    1
                }
            },
        };
        (Element(self.lex_least(&w)), delta)
    }

    /// Checked variant of [`CoxeterSystem::mult_gen`].
    pub fn try_mult_gen(&self, a: &Element, s: GeneratorId, side: Side) -> Result<(Element, i8)> {
        self.check_element(a)?;
        self.check_generator(s)?;
        Ok(self.mult_gen(a, s, side))
    }

    pub fn right_descents(&self, a: &Element) -> GenSet {
        let mut seen = GenSet::EMPTY;
        let mut out = GenSet::EMPTY;
        for &x in a.0.iter().rev() {
            if !seen.contains(x) && seen.is_subset(self.strict_commuting(x)) {
                out.insert(x);
            }
            seen.insert(x);
        }
        out
    }

    pub fn left_descents(&self, a: &Element) -> GenSet {
        let mut seen = GenSet::EMPTY;
        let mut out = GenSet::EMPTY;
        for &x in a.0.iter() {
            if !seen.contains(x) && seen.is_subset(self.strict_commuting(x)) {
                out.insert(x);
            }
            seen.insert(x);
        }
        out
    }

    pub fn descent_sets(&self, a: &Element) -> DescentSets {
        DescentSets {
            left: self.left_descents(a),
            right: self.right_descents(a),
        }
    }

    /// S(a): the generators occurring in any reduced expression of `a`.
    pub fn support(&self, a: &Element) -> GenSet {
        a.0.iter().copied().collect()
    }

    /// Whether `a` commutes with the generator `r`, decided by S(a) ⊆ C(r).
    pub fn commutes_with_gen(&self, a: &Element, r: GeneratorId) -> bool {
        self.support(a).is_subset(self.centralizer_set(r))
    }

    /// An element `u` with |vuw| = |v| + |u| + |w|, built as in the
    /// constructive proof: first append D_L(w) ∖ D_R(v) to `v`, obtaining
    /// `v'`, then append S ∖ D_R(v'), both in generator order.
    pub fn regular_join(&self, v: &Element, w: &Element) -> Result<Element> {
        self.check_element(v)?;
        self.check_element(w)?;
        if !self.is_irreducible() {
            return Err(Error::domain("regular join requires an irreducible system"));
        }
        if self.is_finite() {
            return Err(Error::domain("regular join requires an infinite system"));
        }
        let mut current = v.clone();
        let mut u = Vec::new();
        let first = self.left_descents(w).difference(self.right_descents(v));
        for s in first.iter() {
            let (next, delta) = self.mult_gen(&current, s, Side::Right);
            debug_assert_eq!(delta, 1);
            current = next;
            u.push(s);
        }
        let second = self.all().difference(self.right_descents(&current));
        for s in second.iter() {
            let (next, delta) = self.mult_gen(&current, s, Side::Right);
            debug_assert_eq!(delta, 1);
            current = next;
            u.push(s);
        }
        self.normalize(&Word(u))
    }

    /// Parses a word written as generator names separated by whitespace or
    /// dots; `1` or the empty string denote the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "1" {
            return Ok(Word::default());
        }
        trimmed
            .split(|c: char| c.is_whitespace() || c == '.')
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                self.generator(tok)
                    .ok_or_else(|| Error::input(format!("unknown generator {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn parse_element(&self, text: &str) -> Result<Element> {
        self.normalize(&self.parse_word(text)?)
    }

    /// Canonical text form: names joined by `.`, identity written `1`.
    pub fn format_element(&self, a: &Element) -> String {
        self.format_letters(a.letters())
    }

    pub fn format_word(&self, w: &Word) -> String {
        self.format_letters(w.letters())
    }

    fn format_letters(&self, letters: &[GeneratorId]) -> String {
        if letters.is_empty() {
            return "1".to_string();
        }
        letters.iter().map(|&s| self.name(s)).collect::<Vec<_>>().join(".")
    }

    /// Displayable view of an element.
    pub fn display<'a>(&'a self, a: &'a Element) -> ElementDisplay<'a> {
        ElementDisplay { sys: self, element: a }
    }

    pub fn element_of_generator(&self, s: GeneratorId) -> Element {
        Element(vec![s])
    }
}

pub struct ElementDisplay<'a> {
    sys: &'a CoxeterSystem,
    element: &'a Element,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.sys.format_element(self.element))
    }
}

#[cfg(test)]
mod tests {
    use super::super::system::catalog::*;
    use super::*;

    fn el(sys: &CoxeterSystem, s: &str) -> Element {
        sys.parse_element(s).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let free = free_product(3);
        assert_eq!(sys_fmt(&free, "s s t"), "t");
        let z2sq = abelian(2);
        assert_eq!(sys_fmt(&z2sq, "t s"), "s.t");
        let dih = infinite_dihedral();
        assert_eq!(sys_fmt(&dih, "s t s s t s"), "1");
    }

    fn sys_fmt(sys: &CoxeterSystem, w: &str) -> String {
        sys.format_element(&el(sys, w))
    }

    #[test]
    fn normalize_rejects_bad_generator() {
        let sys = free_product(2);
        assert!(sys.normalize(&Word(vec![GeneratorId(2)])).is_err());
        assert!(sys.parse_word("s q").is_err());
    }

    #[test]
    fn multiply_examples() {
        let free = free_product(3);
        let s = el(&free, "s");
        assert!(free.multiply(&s, &s).unwrap().is_identity());
        let dih = infinite_dihedral();
        let sts = el(&dih, "s t s");
        assert!(dih.multiply(&sts, &sts).unwrap().is_identity());
        let z2sq = abelian(2);
        let st = z2sq.multiply(&el(&z2sq, "s"), &el(&z2sq, "t")).unwrap();
        assert_eq!(z2sq.format_element(&st), "s.t");
        assert_eq!(st.len(), 2);
    }

    #[test]
    fn multiply_rejects_foreign_element() {
        let big = free_product(4);
        let small = free_product(2);
        let v = el(&big, "v");
        assert!(small.multiply(&v, &Element::identity()).is_err());
    }

    #[test]
    fn mult_gen_examples() {
        let free = free_product(3);
        let id = Element::identity();
        for s in free.generators() {
            let (e, d) = free.mult_gen(&id, s, Side::Left);
            assert_eq!((e.letters(), d), (&[s][..], 1));
        }
        let t = free.generator("t").unwrap();
        let (e, d) = free.mult_gen(&el(&free, "s t"), t, Side::Right);
        assert_eq!((free.format_element(&e), d), ("s".to_string(), -1));

        let sys = z2_free_z2_squared();
        let t = sys.generator("t").unwrap();
        let (e, d) = sys.mult_gen(&el(&sys, "t u"), t, Side::Right);
        assert_eq!((sys.format_element(&e), d), ("u".to_string(), -1));
    }

    #[test]
    fn descent_examples() {
        let free = free_product(3);
        let d = free.descent_sets(&Element::identity());
        assert!(d.left.is_empty() && d.right.is_empty());
        let d = free.descent_sets(&el(&free, "s t u"));
        assert_eq!(d.right, GenSet::single(free.generator("u").unwrap()));
        assert_eq!(d.left, GenSet::single(free.generator("s").unwrap()));
        let z2sq = abelian(2);
        assert_eq!(z2sq.right_descents(&el(&z2sq, "s t")), z2sq.all());
    }

    #[test]
    fn support_and_commutation_examples() {
        let free = free_product(3);
        assert!(free.support(&Element::identity()).is_empty());
        assert_eq!(free.support(&el(&free, "s t u")), free.all());
        let dih = infinite_dihedral();
        assert_eq!(dih.support(&el(&dih, "s t s")), dih.all());

        let sys = z2_free_z2_squared();
        let t = sys.generator("t").unwrap();
        assert!(sys.commutes_with_gen(&Element::identity(), t));
        assert!(sys.commutes_with_gen(&el(&sys, "u"), t));
        let s = free.generator("s").unwrap();
        assert!(!free.commutes_with_gen(&el(&free, "t"), s));
    }

    #[test]
    fn regular_join_examples() {
        let dih = infinite_dihedral();
        let s = el(&dih, "s");
        let u = dih.regular_join(&s, &s).unwrap();
        assert_eq!(dih.format_element(&u), "t");

        let free = free_product(3);
        let u = free.regular_join(&Element::identity(), &Element::identity()).unwrap();
        assert_eq!(free.format_element(&u), "s.t.u");

        let s = el(&free, "s");
        let u = free.regular_join(&s, &s).unwrap();
        assert_eq!(free.format_element(&u), "t.u");
        let vuw = free.multiply(&free.multiply(&s, &u).unwrap(), &s).unwrap();
        assert_eq!(vuw.len(), 4);

        assert!(abelian(3).regular_join(&s, &s).is_err());
        assert!(cycle(4)
            .regular_join(&Element::identity(), &Element::identity())
            .is_err());
    }

    #[test]
    fn inverse_is_reverse() {
        let sys = pentagon();
        let a = el(&sys, "s u w t");
        let inv = sys.inverse(&a);
        assert!(sys.multiply(&a, &inv).unwrap().is_identity());
    }

    #[test]
    fn shortlex_order() {
        let sys = free_product(3);
        let mut v = [el(&sys, "t s"), el(&sys, "u"), Element::identity(), el(&sys, "s t")];
        v.sort();
        let names: Vec<String> = v.iter().map(|e| sys.format_element(e)).collect();
        assert_eq!(names, vec!["1", "u", "s.t", "t.s"]);
    }
}
