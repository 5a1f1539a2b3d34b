//! Standard minimal grids `G_{j,k}` for the left-hand `(p,2)` torus knot.
//!
//! The grid has size `n = p + 2`. X markings sit on the shifted diagonal
//! `x[r] = r - j - 1 (mod n)`. O markings sit on the main diagonal except
//! for rows `2..n-2`, whose columns are rotated left by `k - 1`. All `p`
//! crossings then lie on two slope-one lines: `k` on `col - row = -j` and
//! `j` on `col - row = k`.
//!
//! Shifting the O markings instead (`o[r] = r + j + 1`, X block rotated by
//! `j - 1`) also puts every crossing on two diagonals, but for `j = 1` that
//! grid does not lift while this one does.

use super::InvariantError;
use crate::grid::GridDiagram;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StandardDiagramParams {
    pub p: u32,
    pub j: u32,
    pub k: u32,
}

impl StandardDiagramParams {
    pub fn new(p: u32, j: u32, k: u32) -> Result<Self, InvariantError> {
        let ok = p >= 3 && p % 2 == 1 && j >= 1 && k >= 1 && j + k == p && p + 2 <= crate::grid::MAX_N as u32;
        if ok {
            Ok(StandardDiagramParams { p, j, k })
        } else {
            Err(InvariantError::InvalidParams { p, j, k })
        }
    }

    /// All `p - 1` parameter choices for a given `p`, by increasing `j`.
    pub fn all(p: u32) -> Result<Vec<Self>, InvariantError> {
        (1..p).map(|j| Self::new(p, j, p - j)).collect()
    }
}

pub fn standard_diagram(params: StandardDiagramParams) -> Result<GridDiagram, InvariantError> {
    let StandardDiagramParams { p, j, .. } = StandardDiagramParams::new(params.p, params.j, params.k)?;
    let (p, j) = (p as usize, j as usize);
    let k = p - j;
    let n = p + 2;
    let x: Vec<u8> = (0..n).map(|r| ((r + n - j - 1) % n) as u8).collect();
    let mut o: Vec<u8> = (0..n as u8).collect();
    let m = p - 2;
    for (r, slot) in o.iter_mut().enumerate().take(n - 2).skip(2) {
        *slot = (2 + (r - 2 + k - 1) % m) as u8;
    }
    Ok(GridDiagram::new(n, &x, &o).expect("standard diagram markings are valid"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::legendrian_data;
    use std::collections::BTreeMap;

    #[test]
    fn trefoil_grids() {
        let g = standard_diagram(StandardDiagramParams::new(3, 1, 2).unwrap()).unwrap();
        assert_eq!(g.x_cols(), &[3, 4, 0, 1, 2]);
        assert_eq!(g.o_cols(), &[0, 1, 2, 3, 4]);
        let g = standard_diagram(StandardDiagramParams::new(3, 2, 1).unwrap()).unwrap();
        assert_eq!(g.x_cols(), &[2, 3, 4, 0, 1]);
    }

    #[test]
    fn crossings_on_two_diagonals() {
        for p in [3, 5, 7, 9] {
            for params in StandardDiagramParams::all(p).unwrap() {
                let g = standard_diagram(params).unwrap();
                assert!(g.is_knot());
                let mut diag: BTreeMap<i32, u32> = BTreeMap::new();
                for c in g.crossings() {
                    *diag.entry(c.col as i32 - c.row as i32).or_default() += 1;
                }
                let want: BTreeMap<i32, u32> = [(-(params.j as i32), params.k), (params.k as i32, params.j)].into();
                assert_eq!(diag, want, "{params:?}");
                assert_eq!(legendrian_data(&g).r, params.k as i32 - params.j as i32);
            }
        }
    }

    #[test]
    fn invalid_params() {
        for (p, j, k) in [(4, 1, 3), (5, 0, 5), (5, 2, 2), (1, 1, 0), (11, 5, 6)] {
            assert_eq!(
                StandardDiagramParams::new(p, j, k),
                Err(InvariantError::InvalidParams { p, j, k })
            );
        }
        let raw = StandardDiagramParams { p: 5, j: 3, k: 3 };
        assert!(standard_diagram(raw).is_err());
    }
}
