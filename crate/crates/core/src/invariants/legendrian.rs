//! Legendrian front read off a grid: NE and SW corners are smoothed, NW and
//! SE corners become cusps, and the picture is turned 45 degrees
//! counterclockwise, so front height is `row + col`.

use serde::Serialize;

use crate::grid::GridDiagram;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LegendrianData {
    pub writhe: i32,
    pub down_cusps: u32,
    pub up_cusps: u32,
    /// SE corners. NW corners give the same number of left cusps.
    pub right_cusps: u32,
    pub tb: i32,
    pub r: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corner {
    NorthEast,
    NorthWest,
    SouthEast,
    SouthWest,
}

impl Corner {
    /// `east`: the horizontal segment leaves the corner toward larger
    /// columns. `north`: the vertical one leaves toward larger rows.
    fn classify(east: bool, north: bool) -> Corner {
        match (east, north) {
            (true, false) => Corner::NorthWest,
            (false, true) => Corner::SouthEast,
            (false, false) => Corner::NorthEast,
            (true, true) => Corner::SouthWest,
        }
    }

    pub fn is_cusp(self) -> bool {
        matches!(self, Corner::NorthWest | Corner::SouthEast)
    }
}

/// A corner of the grid knot, at a marking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CornerInfo {
    pub row: u8,
    pub col: u8,
    pub corner: Corner,
    /// Height increases as the knot passes through this corner.
    pub upward: bool,
}

/// Classifies all `2n` corners: X markings first by row, then O markings.
pub fn corners(g: &GridDiagram) -> Vec<CornerInfo> {
    let n = g.size();
    let (x, o) = (g.x_cols(), g.o_cols());
    let (xr, or) = (g.x_rows(), g.o_rows());
    let mut out = Vec::with_capacity(2 * n);
    for r in 0..n {
        let c = x[r] as usize;
        let east = o[r] as usize > c;
        let north = or[c] as usize > r;
        // Leaves along the vertical toward the O.
        out.push(CornerInfo {
            row: r as u8,
            col: c as u8,
            corner: Corner::classify(east, north),
            upward: north,
        });
    }
    for r in 0..n {
        let c = o[r] as usize;
        let east = x[r] as usize > c;
        let north = xr[c] as usize > r;
        // Leaves along the horizontal toward the X.
        out.push(CornerInfo {
            row: r as u8,
            col: c as u8,
            corner: Corner::classify(east, north),
            upward: east,
        });
    }
    out
}

pub fn legendrian_data(g: &GridDiagram) -> LegendrianData {
    let mut down = 0u32;
    let mut up = 0u32;
    let mut right = 0u32;
    for c in corners(g) {
        if c.corner.is_cusp() {
            if c.upward {
                up += 1;
            } else {
                down += 1;
            }
        }
        if c.corner == Corner::SouthEast {
            right += 1;
        }
    }
    let writhe = g.writhe();
    let cusps = (down + up) as i32;
    LegendrianData {
        writhe,
        down_cusps: down,
        up_cusps: up,
        right_cusps: right,
        tb: writhe - cusps / 2,
        r: (down as i32 - up as i32) / 2,
    }
}

/// `{ ±(p - 2 - 4t) : 0 <= t < (p - 2)/2 }`, sorted ascending.
pub fn max_tb_rotation_set(p: u32) -> Vec<i32> {
    let p = p as i32;
    let mut out: Vec<i32> = (0..)
        .take_while(|t| 2 * t < p - 2)
        .flat_map(|t| {
            let v = p - 2 - 4 * t;
            [v, -v]
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}
