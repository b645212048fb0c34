//! Independent brute-force oracles. Nothing here uses the normal-form
//! machinery except for the final conversion into an [`Element`], so
//! agreement with the fast paths is a genuine cross-check.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::coxeter::{CoxeterSystem, Element, GeneratorId, Side, Word};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Words reachable from `word` by deleting adjacent `ss` and swapping
/// adjacent commuting letters.
pub fn rewriting_closure(sys: &CoxeterSystem, word: &[GeneratorId]) -> BTreeSet<Vec<GeneratorId>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(word.to_vec());
    queue.push_back(word.to_vec());
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[i], w[i + 1]);
            let next = if a == b {
                let mut n = w.clone();
                n.drain(i..i + 2);
                n
            } else if sys.commutes(a, b) {
                let mut n = w.clone();
                n.swap(i, i + 1);
                n
            } else {
                continue;
            };
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// ShortLex-least word among the shortest words of the rewriting closure.
pub fn brute_force_normal_word(sys: &CoxeterSystem, word: &[GeneratorId]) -> Vec<GeneratorId> {
    rewriting_closure(sys, word)
        .into_iter()
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
        .unwrap_or_default()
}

/// Whether two words spell the same group element, decided by comparing
/// brute-force normal words.
pub fn brute_force_equal(sys: &CoxeterSystem, a: &[GeneratorId], b: &[GeneratorId]) -> bool {
    brute_force_normal_word(sys, a) == brute_force_normal_word(sys, b)
}

/// Sphere counts by breadth-first search over the Cayley graph, with a hash
/// set of visited elements.
pub fn bfs_sphere_counts(sys: &CoxeterSystem, n: usize, cap: usize) -> Result<Vec<u64>> {
    let mut seen: HashSet<Element> = HashSet::new();
    let mut frontier = vec![Element::identity()];
    seen.insert(Element::identity());
    let mut counts = vec![1u64];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &frontier {
            for s in sys.generators() {
                let (ws, _) = sys.mult_gen(w, s, Side::Right);
                if seen.insert(ws.clone()) {
                    next.push(ws);
                }
            }
        }
        if seen.len() > cap {
            return Err(Error::Capacity {
                what: "BFS sphere enumeration".into(),
                cap,
            });
        }
        counts.push(next.len() as u64);
        frontier = next;
    }
    Ok(counts)
}

/// Product of unnormalized basis elements `T̃_v · T̃_w` from the defining
/// recursion `T̃_s T̃_w = T̃_{sw}` if lengthening, `q T̃_{sw} + (q−1) T̃_w`
/// otherwise, with `q = u²`. Returns coefficients in the `T̃` basis.
pub fn tilde_product(sys: &CoxeterSystem, v: &Element, w: &Element) -> BTreeMap<Element, LaurentPoly> {
    let q = LaurentPoly::u_pow(2);
    let q_minus_one = &q - &LaurentPoly::from_int(1);
    let mut current: BTreeMap<Element, LaurentPoly> = BTreeMap::new();
    current.insert(w.clone(), LaurentPoly::from_int(1));
    for &s in v.letters().iter().rev() {
        let mut next: BTreeMap<Element, LaurentPoly> = BTreeMap::new();
        let mut add = |x: Element, c: LaurentPoly| {
            let entry = next.entry(x.clone()).or_default();
            *entry += c;
            if num_traits::Zero::is_zero(entry) {
                next.remove(&x);
            }
        };
        for (x, c) in &current {
            let (sx, delta) = sys.mult_gen(x, s, Side::Left);
            if delta > 0 {
                add(sx, c.clone());
            } else {
                add(sx, &q * c);
                add(x.clone(), &q_minus_one * c);
            }
        }
        current = next;
    }
    current
}

/// Normalizes a word by the oracle and converts it to an [`Element`].
pub fn brute_force_element(sys: &CoxeterSystem, word: &Word) -> Result<Element> {
    let w = brute_force_normal_word(sys, word.letters());
    let e = sys.normalize(&Word(w.clone()))?;
    if e.letters() != w.as_slice() {
        return Err(Error::Internal(format!(
            "oracle word {} is not canonical (canonical form {})",
            sys.format_word(&Word(w)),
            sys.format_element(&e)
        )));
    }
    Ok(e)
}

/// All words of length exactly `n` over the generators.
pub fn all_words(sys: &CoxeterSystem, n: usize) -> Vec<Vec<GeneratorId>> {
    let gens: Vec<GeneratorId> = sys.generators().collect();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                gens.iter().map(move |&s| {
                    let mut x = w.clone();
                    x.push(s);
                    x
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::catalog;

    #[test]
    fn closure_normal_words() {
        let sys = catalog::infinite_dihedral();
        let w = sys.parse_word("s t s s t s").unwrap();
        assert!(brute_force_normal_word(&sys, w.letters()).is_empty());
        let sys = catalog::abelian(2);
        let w = sys.parse_word("t s").unwrap();
        assert_eq!(
            brute_force_normal_word(&sys, w.letters()),
            sys.parse_word("s t").unwrap().0
        );
    }

    #[test]
    fn bfs_counts() {
        let sys = catalog::free_product(3);
        assert_eq!(bfs_sphere_counts(&sys, 4, 1000).unwrap(), vec![1, 3, 6, 12, 24]);
        let sys = catalog::pentagon();
        assert_eq!(bfs_sphere_counts(&sys, 3, 1000).unwrap(), vec![1, 5, 15, 40]);
    }

    #[test]
    fn tilde_square() {
        let sys = catalog::free_product(2);
        let s = sys.parse_element("s").unwrap();
        let prod = tilde_product(&sys, &s, &s);
        assert_eq!(prod[&Element::identity()], LaurentPoly::u_pow(2));
        assert_eq!(prod[&s], LaurentPoly::u_pow(2) - LaurentPoly::from_int(1));
    }
}
