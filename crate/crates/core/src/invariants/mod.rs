//! Knot invariants: Kauffman bracket and Jones polynomial, Legendrian data
//! from the grid-as-front picture, standard torus-knot grids and the bundled
//! fingerprint table.

mod bracket;
mod legendrian;
mod poly;
mod standard;
pub mod table;

pub use bracket::kauffman_bracket;
pub use legendrian::{corners, legendrian_data, max_tb_rotation_set, Corner, CornerInfo, LegendrianData};
pub use poly::LaurentPolynomial;
pub use standard::{standard_diagram, StandardDiagramParams};
pub use table::{fingerprint_id, identify, Bound, KnotRecord, KnotTable};

use thiserror::Error;

use crate::grid::GridDiagram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("Jones polynomial has a non-integral exponent of t")]
    NonIntegralExponent,
    #[error("standard diagram needs odd p >= 3 and j, k >= 1 with j + k = p (got p={p}, j={j}, k={k})")]
    InvalidParams { p: u32, j: u32, k: u32 },
    #[error("knot table has two records with the same fingerprint: {0} and {1}")]
    AmbiguousFingerprint(String, String),
    #[error("identification needs a knot, got {0} components")]
    NotAKnot(usize),
    #[error("knot table line {line}: {msg}")]
    TableSyntax { line: usize, msg: String },
}

/// `V(t) = (-A^3)^(-w) <D>` with `t = A^-4`.
pub fn jones(g: &GridDiagram) -> Result<LaurentPolynomial, InvariantError> {
    let w = g.writhe();
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    let in_a = kauffman_bracket(g).shift(-3 * w);
    let in_a = if sign < 0 { -&in_a } else { in_a };
    in_a.divide_exponents(-4).ok_or(InvariantError::NonIntegralExponent)
}

/// `V(t) -> V(t^-1)`.
pub fn jones_of_mirror(v: &LaurentPolynomial) -> LaurentPolynomial {
    v.substitute_power(-1)
}
