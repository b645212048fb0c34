//! Right-angled Coxeter systems and exact word combinatorics.
//!
//! Elements are stored as canonical words (ShortLex-least reduced
//! expressions). In a right-angled system a word `ws` fails to be reduced
//! exactly when some occurrence of `s` in `w` is followed only by letters
//! commuting with `s`, and all reduced expressions of an element differ by
//! swaps of adjacent commuting letters; everything here rests on these two
//! facts.

mod ball;
mod conditions;
mod element;
mod system;

pub use ball::Ball;
pub use conditions::{ConditionOutcome, ConditionsReport};
pub use element::{DescentSets, Element, ElementDisplay, Side, Word};
pub use system::{catalog, CoxeterSystem, GenSet, GeneratorId, DEFAULT_BALL_CAP, MAX_GENERATORS};
