//! The Hecke algebra `C_q[W]` of a right-angled system.
//!
//! Elements are finite sums over the normalized basis `T_w`, with exact
//! coefficients in `Q[u, u⁻¹]` (`u² = q`) or floating-point coefficients at
//! a fixed `q`. The left regular representation on `ℓ²(W)` sends `T_w` to
//! `δ_w`; [`symbol`] provides its truncations to balls.

mod coefficient;
mod element;
pub mod expr;
pub mod symbol;

pub use coefficient::{coefficient_pow, Coefficient};
pub use element::{ExactAlgebra, ExactHecke, HeckeAlgebra, HeckeElement, NumericAlgebra, NumericHecke};
pub use expr::eval_expression;
pub use symbol::{apply_generator, symbol_on_ball, ActionMatrix, BallVector};
