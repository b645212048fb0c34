//! Evaluation of the Deletion, Exchange and Folding conditions on concrete
//! data. These characterize Coxeter groups among groups generated by
//! involutions; the property suites use them as a cross-check on the
//! normal-form machinery.

use serde::Serialize;

use super::element::Word;
use super::system::{CoxeterSystem, GeneratorId};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ConditionOutcome {
    /// The hypothesis of the condition does not hold for this input.
    NotApplicable,
    /// The conclusion holds; `witness` names the deleted positions (1-based)
    /// or the branch taken.
    Holds {
        witness: String,
    },
    Violated {
        detail: String,
    },
}

impl ConditionOutcome {
    pub fn is_violated(&self) -> bool {
        matches!(self, ConditionOutcome::Violated { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionsReport {
    pub deletion: ConditionOutcome,
    pub exchange_left: ConditionOutcome,
    pub exchange_right: ConditionOutcome,
    pub folding: ConditionOutcome,
}

impl ConditionsReport {
    pub fn passed(&self) -> bool {
        ![&self.deletion, &self.exchange_left, &self.exchange_right, &self.folding]
            .iter()
            .any(|c| c.is_violated())
    }
}

fn without(word: &[GeneratorId], skip: &[usize]) -> Word {
    Word(
        word.iter()
            .enumerate()
            .filter(|(i, _)| !skip.contains(i))
            .map(|(_, &x)| x)
            .collect(),
    )
}

impl CoxeterSystem {
    fn is_reduced_word(&self, w: &Word) -> Result<bool> {
        Ok(self.normalize(w)?.len() == w.len())
    }

    /// Evaluates the three conditions on `w` with the extra generators `s`
    /// (left) and `t` (right).
    pub fn check_conditions(&self, w: &Word, s: GeneratorId, t: GeneratorId) -> Result<ConditionsReport> {
        self.check_word(w)?;
        self.check_generator(s)?;
        self.check_generator(t)?;
        let letters = w.letters();
        let target = self.normalize(w)?;
        let reduced = target.len() == letters.len();

        let deletion = if reduced {
            ConditionOutcome::NotApplicable
        } else {
            let mut found = None;
            'outer: for i in 0..letters.len() {
                for j in i + 1..letters.len() {
                    if self.normalize(&without(letters, &[i, j]))? == target {
                        found = Some((i, j));
                        break 'outer;
                    }
                }
            }
            match found {
                Some((i, j)) => ConditionOutcome::Holds {
                    witness: format!("delete positions ({}, {})", i + 1, j + 1),
                },
                None => ConditionOutcome::Violated {
                    detail: format!("no deletion pair for {}", self.format_word(w)),
                },
            }
        };

        let exchange = |side_word: Word, label: &str| -> Result<ConditionOutcome> {
            if !reduced || self.is_reduced_word(&side_word)? {
                return Ok(ConditionOutcome::NotApplicable);
            }
            let product = self.normalize(&side_word)?;
            for i in 0..letters.len() {
                if self.normalize(&without(letters, &[i]))? == product {
                    return Ok(ConditionOutcome::Holds {
                        witness: format!("delete position {}", i + 1),
                    });
                }
            }
            Ok(ConditionOutcome::Violated {
                detail: format!("{label}: no single deletion of {} matches", self.format_word(w)),
            })
        };

        let mut sw = vec![s];
        sw.extend_from_slice(letters);
        let mut ws = letters.to_vec();
        ws.push(s);
        let exchange_left = exchange(Word(sw.clone()), "sw")?;
        let exchange_right = exchange(Word(ws), "ws")?;

        let mut wt = letters.to_vec();
        wt.push(t);
        let folding = if reduced && self.is_reduced_word(&Word(sw.clone()))? && self.is_reduced_word(&Word(wt))? {
            let mut swt = sw;
            swt.push(t);
            let swt = Word(swt);
            if self.normalize(&swt)? == target {
                ConditionOutcome::Holds {
                    witness: "swt = w".to_string(),
                }
            } else if self.is_reduced_word(&swt)? {
                ConditionOutcome::Holds {
                    witness: "swt reduced".to_string(),
                }
            } else {
                ConditionOutcome::Violated {
                    detail: format!("swt neither equals w nor is reduced for w = {}", self.format_word(w)),
                }
            }
        } else {
            ConditionOutcome::NotApplicable
        };

        Ok(ConditionsReport {
            deletion,
            exchange_left,
            exchange_right,
            folding,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::system::catalog::*;
    use super::*;

    #[test]
    fn folding_in_free_product() {
        let sys = free_product(3);
        let w = sys.parse_word("u").unwrap();
        let (s, t) = (GeneratorId(0), GeneratorId(1));
        let r = sys.check_conditions(&w, s, t).unwrap();
        assert_eq!(
            r.folding,
            ConditionOutcome::Holds {
                witness: "swt reduced".into()
            }
        );
    }

    #[test]
    fn exchange_in_dihedral() {
        let sys = infinite_dihedral();
        let w = sys.parse_word("s t").unwrap();
        let r = sys.check_conditions(&w, GeneratorId(0), GeneratorId(0)).unwrap();
        assert!(matches!(r.exchange_left, ConditionOutcome::Holds { .. }));
        assert!(r.passed());
    }

    #[test]
    fn deletion_pair() {
        let sys = infinite_dihedral();
        let w = sys.parse_word("s s").unwrap();
        let r = sys.check_conditions(&w, GeneratorId(0), GeneratorId(1)).unwrap();
        assert_eq!(
            r.deletion,
            ConditionOutcome::Holds {
                witness: "delete positions (1, 2)".into()
            }
        );
    }

    #[test]
    fn folding_equal_branch() {
        // w = 1 and s = t: swt = ss = 1 = w.
        let sys = free_product(2);
        let w = Word::default();
        let r = sys.check_conditions(&w, GeneratorId(0), GeneratorId(0)).unwrap();
        assert_eq!(
            r.folding,
            ConditionOutcome::Holds {
                witness: "swt = w".into()
            }
        );
    }
}
