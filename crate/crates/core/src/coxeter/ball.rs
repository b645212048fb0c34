use std::collections::HashMap;

use super::element::Element;
use super::system::{CoxeterSystem, GeneratorId};
use crate::error::{Error, Result};

/// All elements of word length at most `radius`, in ShortLex order, with a
/// reverse index.
#[derive(Debug, Clone)]
pub struct Ball {
    radius: usize,
    elements: Vec<Element>,
    /// `sphere_starts[k]` is the index of the first element of length k;
    /// one trailing entry holds the total size.
    sphere_starts: Vec<usize>,
    index: HashMap<Element, usize>,
}

impl Ball {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.index.contains_key(e)
    }

    /// Elements of length exactly `k`.
    pub fn sphere(&self, k: usize) -> &[Element] {
        if k > self.radius {
            return &[];
        }
        &self.elements[self.sphere_starts[k]..self.sphere_starts[k + 1]]
    }

    /// Number of elements of length at most `k`.
    pub fn size_up_to(&self, k: usize) -> usize {
        self.sphere_starts[k.min(self.radius) + 1]
    }

    pub fn sphere_counts(&self) -> Vec<u64> {
        self.sphere_starts.windows(2).map(|w| (w[1] - w[0]) as u64).collect()
    }
}

impl CoxeterSystem {
    /// Whether appending `s` to the canonical word `w` yields a canonical
    /// word of length |w| + 1. Every element of length n + 1 arises this way
    /// from exactly one element of length n (its canonical prefix).
    fn extends_canonically(&self, w: &Element, s: GeneratorId) -> bool {
        for &x in w.letters().iter().rev() {
            if x == s {
                return false;
            }
            if !self.commutes(x, s) {
                return true;
            }
            if x > s {
                return false;
            }
        }
        true
    }

    fn next_sphere(&self, sphere: &[Element]) -> Vec<Element> {
        let mut next = Vec::with_capacity(sphere.len() * self.rank());
        for w in sphere {
            for s in self.generators() {
                if self.extends_canonically(w, s) {
                    let mut letters = w.letters().to_vec();
                    letters.push(s);
                    next.push(Element::from_canonical(letters));
                }
            }
        }
        next
    }

    /// All elements with |w| ≤ radius, each once, sorted by ShortLex.
    pub fn ball(&self, radius: usize) -> Result<Ball> {
        let cap = self.ball_cap();
        let mut elements = vec![Element::identity()];
        let mut sphere_starts = vec![0, 1];
        for _ in 0..radius {
            let start = sphere_starts[sphere_starts.len() - 2];
            let next = self.next_sphere(&elements[start..]);
            if elements.len() + next.len() > cap {
                return Err(Error::Capacity {
                    what: format!("ball of radius {radius}"),
                    cap,
                });
            }
            elements.extend(next);
            sphere_starts.push(elements.len());
        }
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Ok(Ball {
            radius,
            elements,
            sphere_starts,
            index,
        })
    }

    /// a_k = #{w : |w| = k} for k = 0..=n.
    pub fn sphere_counts(&self, n: usize) -> Result<Vec<u64>> {
        let cap = self.ball_cap();
        let mut counts = vec![1u64];
        let mut total = 1usize;
        let mut sphere = vec![Element::identity()];
        for _ in 0..n {
            sphere = self.next_sphere(&sphere);
            total += sphere.len();
            if total > cap {
                return Err(Error::Capacity {
                    what: format!("sphere counts up to length {n}"),
                    cap,
                });
            }
            counts.push(sphere.len() as u64);
        }
        Ok(counts)
    }
}

#[cfg(test)]
mod tests {
    use super::super::system::catalog::*;
    use crate::coxeter::Word;

    #[test]
    fn ball_examples() {
        let free = free_product(3);
        assert_eq!(free.ball(0).unwrap().len(), 1);
        assert_eq!(free.ball(2).unwrap().len(), 10);
        assert_eq!(pentagon().ball(2).unwrap().len(), 21);
    }

    #[test]
    fn sphere_count_examples() {
        assert_eq!(abelian(2).sphere_counts(3).unwrap(), vec![1, 2, 1, 0]);
        assert_eq!(free_product(3).sphere_counts(4).unwrap(), vec![1, 3, 6, 12, 24]);
        assert_eq!(pentagon().sphere_counts(3).unwrap(), vec![1, 5, 15, 40]);
    }

    #[test]
    fn ball_is_sorted_canonical_and_matches_counts() {
        for (_, sys) in named_test_systems() {
            let ball = sys.ball(5).unwrap();
            assert!(ball.elements().windows(2).all(|w| w[0] < w[1]));
            for e in ball.elements() {
                assert_eq!(&sys.normalize(&Word::from(e)).unwrap(), e);
            }
            assert_eq!(ball.sphere_counts(), sys.sphere_counts(5).unwrap());
        }
    }

    #[test]
    fn capacity_guard() {
        let sys = free_product(4).with_ball_cap(100);
        assert!(sys.ball(10).is_err());
        assert!(sys.sphere_counts(10).is_err());
        assert!(sys.ball(2).is_ok());
    }
}
