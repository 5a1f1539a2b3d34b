//! Cube diagrams: validation of the flat and crossing conditions, the
//! lattice knot they carry, axis projections, and lifting a grid diagram by
//! searching for z-levels of its X-bends.
//!
//! Lattice edges run X -> Y parallel to z, Y -> Z parallel to x and Z -> X
//! parallel to y. In every projection the strand with the larger omitted
//! coordinate is over: in `(x,y)` y-parallel over x-parallel, in `(y,z)`
//! z-parallel over y-parallel, in `(z,x)` x-parallel over z-parallel.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{BendMask, GridDiagram, MAX_N};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "y")]
    Y,
    #[serde(rename = "z")]
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// Marking type; the declaration order is the JSON sort order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MarkType {
    X,
    Y,
    Z,
}

impl MarkType {
    /// Flats of this axis have a vertex of this type.
    pub fn axis(self) -> Axis {
        match self {
            MarkType::X => Axis::X,
            MarkType::Y => Axis::Y,
            MarkType::Z => Axis::Z,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubeMarking {
    #[serde(rename = "t")]
    pub kind: MarkType,
    /// `(x, y, z)` cell indices.
    #[serde(rename = "p")]
    pub pos: [u8; 3],
}

impl CubeMarking {
    fn sort_key(&self) -> (MarkType, u8, u8, u8) {
        (self.kind, self.pos[2], self.pos[1], self.pos[0])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("expected {expected} markings, got {got}")]
    WrongMarkingCount { expected: usize, got: usize },
    #[error("marking at {0:?} lies outside the cube")]
    OutOfRange([u8; 3]),
    #[error("{axis}-flat {index} does not hold exactly one X, Y and Z")]
    FlatCountViolation { axis: Axis, index: u8 },
    #[error("markings in {axis}-flat {index} do not form an axis-parallel right angle")]
    RightAngleViolation { axis: Axis, index: u8 },
    #[error("right angle in {axis}-flat {index} has a {found:?} vertex")]
    VertexTypeViolation { axis: Axis, index: u8, found: MarkType },
    #[error("crossing condition fails in the projection along {projection} at {position:?}")]
    CrossingViolation { projection: Axis, position: (u8, u8) },
    #[error("size {0} is not supported")]
    BadSize(usize),
}

/// A validated cube diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubeDiagram {
    n: usize,
    markings: Vec<CubeMarking>,
}

/// An oriented axis-parallel lattice edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeEdge {
    pub from: [u8; 3],
    pub to: [u8; 3],
    pub axis: Axis,
}

impl LatticeEdge {
    fn lo(&self) -> u8 {
        self.from[self.axis.index()].min(self.to[self.axis.index()])
    }

    fn hi(&self) -> u8 {
        self.from[self.axis.index()].max(self.to[self.axis.index()])
    }

    fn spans(&self, t: u8) -> bool {
        self.lo() < t && t < self.hi()
    }
}

/// Closed oriented lattice curves, one edge list per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeKnot {
    pub components: Vec<Vec<LatticeEdge>>,
}

impl LatticeKnot {
    pub fn edge_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }
}

/// A crossing in an axis projection, in the projected grid's `(row, col)`
/// coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProjectedCrossing {
    pub row: u8,
    pub col: u8,
    /// Axis the over-strand is parallel to.
    pub over: Axis,
    pub under: Axis,
    /// Omitted coordinate of the over- and under-strand.
    pub over_depth: u8,
    pub under_depth: u8,
}

/// Edges grouped by axis with each marking's successor resolved.
struct Edges {
    /// X -> Y, indexed by X's x coordinate.
    z_edges: Vec<LatticeEdge>,
    /// Y -> Z, indexed by Y's y coordinate.
    x_edges: Vec<LatticeEdge>,
    /// Z -> X, indexed by Z's z coordinate.
    y_edges: Vec<LatticeEdge>,
}

fn edges_of(n: usize, markings: &[CubeMarking]) -> Edges {
    let mut by = [vec![[0u8; 3]; n], vec![[0u8; 3]; n], vec![[0u8; 3]; n]];
    for m in markings {
        // Index each type by its own axis coordinate.
        by[m.kind as usize][m.pos[m.kind.axis().index()] as usize] = m.pos;
    }
    let [xs, ys, zs] = by;
    // Y sharing (x, y) with each X; Z sharing (y, z) with each Y; X sharing
    // (z, x) with each Z.
    let mut y_at_x = vec![[0u8; 3]; n];
    for y in &ys {
        y_at_x[y[0] as usize] = *y;
    }
    let mut z_at_y = vec![[0u8; 3]; n];
    for z in &zs {
        z_at_y[z[1] as usize] = *z;
    }
    let mut x_at_z = vec![[0u8; 3]; n];
    for x in &xs {
        x_at_z[x[2] as usize] = *x;
    }
    Edges {
        z_edges: xs
            .iter()
            .map(|&x| LatticeEdge {
                from: x,
                to: y_at_x[x[0] as usize],
                axis: Axis::Z,
            })
            .collect(),
        x_edges: ys
            .iter()
            .map(|&y| LatticeEdge {
                from: y,
                to: z_at_y[y[1] as usize],
                axis: Axis::X,
            })
            .collect(),
        y_edges: zs
            .iter()
            .map(|&z| LatticeEdge {
                from: z,
                to: x_at_z[z[2] as usize],
                axis: Axis::Y,
            })
            .collect(),
    }
}

/// Crossings of the projection along `axis`, reported in that projection's
/// grid coordinates. `over`/`under` follow the larger/smaller omitted
/// coordinate.
fn projection_crossings(n: usize, markings: &[CubeMarking], axis: Axis) -> Vec<ProjectedCrossing> {
    let e = edges_of(n, markings);
    // (vertical family, horizontal family, grid column axis, grid row axis)
    let (vert, horiz, col_axis, row_axis) = match axis {
        Axis::Z => (&e.y_edges, &e.x_edges, Axis::X, Axis::Y),
        Axis::X => (&e.z_edges, &e.y_edges, Axis::Y, Axis::Z),
        Axis::Y => (&e.x_edges, &e.z_edges, Axis::Z, Axis::X),
    };
    let a = axis.index();
    let mut out = Vec::new();
    for v in vert {
        let col = v.from[col_axis.index()];
        for h in horiz {
            let row = h.from[row_axis.index()];
            if v.spans(row) && h.spans(col) {
                let (vd, hd) = (v.from[a], h.from[a]);
                let (over, under, od, ud) = if vd > hd {
                    (v.axis, h.axis, vd, hd)
                } else {
                    (h.axis, v.axis, hd, vd)
                };
                out.push(ProjectedCrossing {
                    row,
                    col,
                    over,
                    under,
                    over_depth: od,
                    under_depth: ud,
                });
            }
        }
    }
    out.sort_by_key(|c| (c.row, c.col));
    out
}

/// Axis of the strand that must be over in the projection along `axis`.
fn required_over(axis: Axis) -> Axis {
    match axis {
        Axis::Z => Axis::Y,
        Axis::X => Axis::Z,
        Axis::Y => Axis::X,
    }
}

impl CubeDiagram {
    /// Checks the flat conditions, the right angles and their vertex types,
    /// then the crossing conditions in all three projections, reporting the
    /// first violation found in that order.
    pub fn validate(n: usize, markings: Vec<CubeMarking>) -> Result<CubeDiagram, CubeError> {
        if n == 0 || n > MAX_N {
            return Err(CubeError::BadSize(n));
        }
        if markings.len() != 3 * n {
            return Err(CubeError::WrongMarkingCount {
                expected: 3 * n,
                got: markings.len(),
            });
        }
        if let Some(m) = markings.iter().find(|m| m.pos.iter().any(|&c| c as usize >= n)) {
            return Err(CubeError::OutOfRange(m.pos));
        }
        // flat -> marking index per type
        let mut flats = [[[usize::MAX; 3]; MAX_N]; 3];
        let mut counts = [[[0u8; 3]; MAX_N]; 3];
        for (i, m) in markings.iter().enumerate() {
            for axis in Axis::ALL {
                let f = m.pos[axis.index()] as usize;
                counts[axis.index()][f][m.kind as usize] += 1;
                flats[axis.index()][f][m.kind as usize] = i;
            }
        }
        for axis in Axis::ALL {
            for f in 0..n {
                if counts[axis.index()][f] != [1, 1, 1] {
                    return Err(CubeError::FlatCountViolation { axis, index: f as u8 });
                }
            }
        }
        for axis in Axis::ALL {
            for f in 0..n {
                let pts = flats[axis.index()][f].map(|i| markings[i]);
                let vertex = pts.iter().position(|v| {
                    let others: Vec<_> = pts.iter().filter(|p| *p != v).collect();
                    others.len() == 2 && right_angle_at(v.pos, others[0].pos, others[1].pos)
                });
                match vertex {
                    None => return Err(CubeError::RightAngleViolation { axis, index: f as u8 }),
                    Some(v) if pts[v].kind.axis() != axis => {
                        return Err(CubeError::VertexTypeViolation {
                            axis,
                            index: f as u8,
                            found: pts[v].kind,
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        for axis in [Axis::Z, Axis::X, Axis::Y] {
            let want = required_over(axis);
            if let Some(c) = projection_crossings(n, &markings, axis)
                .into_iter()
                .find(|c| c.over != want)
            {
                return Err(CubeError::CrossingViolation {
                    projection: axis,
                    position: (c.row, c.col),
                });
            }
        }
        let mut markings = markings;
        markings.sort_by_key(CubeMarking::sort_key);
        Ok(CubeDiagram { n, markings })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Markings sorted by `(type, z, y, x)`.
    pub fn markings(&self) -> &[CubeMarking] {
        &self.markings
    }

    pub fn knot(&self) -> LatticeKnot {
        let e = edges_of(self.n, &self.markings);
        let all: Vec<LatticeEdge> = e.z_edges.iter().chain(&e.x_edges).chain(&e.y_edges).copied().collect();
        let mut used = vec![false; all.len()];
        let mut components = Vec::new();
        while let Some(start) = used.iter().position(|u| !u) {
            let mut comp = Vec::new();
            let mut i = start;
            while !used[i] {
                used[i] = true;
                comp.push(all[i]);
                let to = all[i].to;
                i = all
                    .iter()
                    .position(|e| e.from == to)
                    .expect("every marking starts exactly one edge");
            }
            components.push(comp);
        }
        LatticeKnot { components }
    }

    /// Projection along `axis` as a grid diagram plus its crossings.
    ///
    /// Along z the grid has columns = x and rows = y, X at the Z markings and
    /// O at the X markings. Along x: columns = y, rows = z, X at X markings,
    /// O at Y markings. Along y: columns = z, rows = x, X at Y markings, O at
    /// Z markings.
    pub fn project(&self, axis: Axis) -> (GridDiagram, Vec<ProjectedCrossing>) {
        let (grid_x, grid_o, col_axis, row_axis) = match axis {
            Axis::Z => (MarkType::Z, MarkType::X, Axis::X, Axis::Y),
            Axis::X => (MarkType::X, MarkType::Y, Axis::Y, Axis::Z),
            Axis::Y => (MarkType::Y, MarkType::Z, Axis::Z, Axis::X),
        };
        let mut x = [0u8; MAX_N];
        let mut o = [0u8; MAX_N];
        for m in &self.markings {
            let (row, col) = (m.pos[row_axis.index()] as usize, m.pos[col_axis.index()]);
            if m.kind == grid_x {
                x[row] = col;
            } else if m.kind == grid_o {
                o[row] = col;
            }
        }
        let g = GridDiagram::new(self.n, &x[..self.n], &o[..self.n])
            .expect("projection of a valid cube diagram is a grid diagram");
        (g, projection_crossings(self.n, &self.markings, axis))
    }

    /// `{"size": n, "markings": [{"t": "X", "p": [i, j, k]}, ...]}`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            size: usize,
            markings: &'a [CubeMarking],
        }
        serde_json::to_string(&Doc {
            size: self.n,
            markings: &self.markings,
        })
        .expect("plain data serialises")
    }

    pub fn from_json(s: &str) -> Result<CubeDiagram, CubeJsonError> {
        #[derive(Deserialize)]
        struct Doc {
            size: usize,
            markings: Vec<CubeMarking>,
        }
        let d: Doc = serde_json::from_str(s)?;
        Ok(CubeDiagram::validate(d.size, d.markings)?)
    }
}

#[derive(Debug, Error)]
pub enum CubeJsonError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] CubeError),
}

fn right_angle_at(v: [u8; 3], a: [u8; 3], b: [u8; 3]) -> bool {
    let diff = |p: [u8; 3]| -> Option<usize> {
        let d: Vec<usize> = (0..3).filter(|&i| p[i] != v[i]).collect();
        (d.len() == 1).then(|| d[0])
    };
    matches!((diff(a), diff(b)), (Some(i), Some(j)) if i != j)
}

// ---------------------------------------------------------------------------
// Lifting

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Error)]
pub enum NotLiftable {
    #[error("the X-bends admit no partial order")]
    NoPartialOrder,
    #[error("no ordering of the X-bends satisfies the crossing conditions")]
    NoValidExtension,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Error)]
pub enum LiftError {
    #[error("lifting is only supported for knots")]
    MultiComponentUnsupported,
    #[error(transparent)]
    NotLiftable(#[from] NotLiftable),
}

/// z-level of every X-bend, indexed by the row of its X marking.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelAssignment(pub Vec<u8>);

/// Ordering constraints on X-bend levels for one grid.
///
/// `before[b]` must all sit below `b`. For every `(b, pair)` in `between`,
/// `b` may not sit strictly between the two bends in `pair`: those are the
/// ends of a z-parallel edge that would cross `b` with the wrong strand on top
/// in the `(y,z)` or `(z,x)` projection.
#[derive(Debug, Clone)]
pub struct LiftConstraints {
    n: usize,
    before: [BendMask; MAX_N],
    between: Vec<Vec<BendMask>>,
    acyclic: bool,
}

impl LiftConstraints {
    pub fn new(g: &GridDiagram) -> Self {
        let n = g.size();
        let order = g.bend_order();
        let mut before = [0 as BendMask; MAX_N];
        for (b, slot) in before.iter_mut().enumerate().take(n) {
            *slot = order.below(b);
        }
        let between = between_constraints(g);
        LiftConstraints {
            n,
            before,
            between,
            acyclic: order.is_acyclic(),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.acyclic
    }

    /// Pairs of bends `b` may not sit strictly between.
    pub fn forbidden_pairs(&self, b: usize) -> &[BendMask] {
        &self.between[b]
    }

    #[inline]
    fn can_place(&self, placed: BendMask, b: usize) -> bool {
        self.before[b] & !placed == 0 && self.between[b].iter().all(|&pair| (placed & pair).count_ones() != 1)
    }

    /// Whether some level assignment satisfies every constraint. Placing
    /// bends bottom-up, feasibility only depends on the set already placed,
    /// so dead sets are memoised.
    pub fn feasible(&self) -> bool {
        if !self.acyclic {
            return false;
        }
        let mut dead = vec![false; 1 << self.n];
        self.search(0, &mut dead, &[None; MAX_N])
    }

    fn search(&self, placed: BendMask, dead: &mut [bool], pinned: &[Option<u8>; MAX_N]) -> bool {
        let full = ((1u32 << self.n) - 1) as BendMask;
        if placed == full {
            return true;
        }
        if dead[placed as usize] {
            return false;
        }
        let level = placed.count_ones() as usize;
        let free = full & !placed;
        let mut cands = free;
        if let Some(b) = pinned[level] {
            cands &= 1 << b;
        } else {
            for p in pinned.iter().take(self.n).flatten() {
                cands &= !(1 << p);
            }
        }
        let mut c = cands;
        while c != 0 {
            let b = c.trailing_zeros() as usize;
            c &= c - 1;
            if self.can_place(placed, b) && self.search(placed | (1 << b), dead, pinned) {
                return true;
            }
        }
        dead[placed as usize] = true;
        false
    }

    /// Lexicographically least valid assignment in bend-index order.
    pub fn least_assignment(&self) -> Option<LevelAssignment> {
        if !self.feasible() {
            return None;
        }
        let n = self.n;
        // pinned[level] = bend
        let mut pinned: [Option<u8>; MAX_N] = [None; MAX_N];
        let mut levels = vec![0u8; n];
        for (b, slot) in levels.iter_mut().enumerate() {
            let found = (0..n).find(|&lv| {
                if pinned[lv].is_some() {
                    return false;
                }
                pinned[lv] = Some(b as u8);
                let mut dead = vec![false; 1 << n];
                if self.search(0, &mut dead, &pinned) {
                    true
                } else {
                    pinned[lv] = None;
                    false
                }
            });
            *slot = found.expect("a feasible completion exists") as u8;
        }
        Some(LevelAssignment(levels))
    }

    /// Whether `levels` meets every constraint.
    pub fn admits(&self, levels: &[u8]) -> bool {
        (0..self.n).all(|b| {
            let lb = levels[b];
            (0..self.n).all(|a| self.before[b] & (1 << a) == 0 || levels[a] < lb)
                && self.between[b].iter().all(|&pair| {
                    let (p, q) = (pair.trailing_zeros() as usize, 15 - pair.leading_zeros() as usize);
                    let (lo, hi) = (levels[p].min(levels[q]), levels[p].max(levels[q]));
                    !(lo < lb && lb < hi)
                })
        })
    }
}

/// For each bend, the O-marking edges whose level span it must avoid.
fn between_constraints(g: &GridDiagram) -> Vec<Vec<BendMask>> {
    let n = g.size();
    let (o, xr, or) = (g.o_cols(), g.x_rows(), g.o_rows());
    let mut out = vec![Vec::new(); n];
    // The O at (r', c') carries the z-edge from the bend with its X in column
    // c' to the bend with its X in row r'.
    for r_o in 0..n {
        let b1 = xr[o[r_o] as usize] as usize;
        let pair: BendMask = (1 << b1) | (1 << r_o);
        for (b, list) in out.iter_mut().enumerate() {
            if b != b1 && b != r_o && shade(g, &or, b, r_o) != 0 {
                list.push(pair);
            }
        }
    }
    for list in &mut out {
        list.sort_unstable();
        list.dedup();
    }
    out
}

/// The O in row `r_o` lies left of bend `b`'s vertical segment.
pub(crate) const SHADE_LEFT: u8 = 1;
/// The O in row `r_o` lies above bend `b`'s horizontal segment.
pub(crate) const SHADE_ABOVE: u8 = 2;

/// Where the O in row `r_o` sits relative to the shaded regions of bend `b`.
///
/// Left of the vertical, its z-edge must pass in front of `b`'s y-parallel
/// edge in the `(y,z)` projection; above the horizontal, behind `b`'s
/// x-parallel edge in the `(z,x)` projection. Either way the edge may not span
/// `b`'s level.
#[inline]
pub(crate) fn shade(g: &GridDiagram, o_rows: &[u8; MAX_N], b: usize, r_o: usize) -> u8 {
    let (x, o) = (g.x_cols(), g.o_cols());
    let c_o = o[r_o] as usize;
    let cb = x[b] as usize;
    let (vlo, vhi) = minmax(b, o_rows[cb] as usize);
    let (hlo, hhi) = minmax(o[b] as usize, cb);
    let mut bits = 0;
    if vlo < r_o && r_o < vhi && c_o < cb {
        bits |= SHADE_LEFT;
    }
    if hlo < c_o && c_o < hhi && b < r_o {
        bits |= SHADE_ABOVE;
    }
    bits
}

fn minmax(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Markings of the cube over `g` with X-bend levels `levels`.
pub fn cube_markings(g: &GridDiagram, levels: &[u8]) -> Vec<CubeMarking> {
    let n = g.size();
    let (x, o) = (g.x_cols(), g.o_cols());
    let (xr, or) = (g.x_rows(), g.o_rows());
    let mut out = Vec::with_capacity(3 * n);
    for r in 0..n {
        let z = levels[r];
        out.push(CubeMarking {
            kind: MarkType::Z,
            pos: [x[r], r as u8, z],
        });
        out.push(CubeMarking {
            kind: MarkType::Y,
            pos: [o[r], r as u8, z],
        });
    }
    for c in 0..n {
        out.push(CubeMarking {
            kind: MarkType::X,
            pos: [c as u8, or[c], levels[xr[c] as usize]],
        });
    }
    out
}

/// Lifts `g` to a cube diagram whose `(x,y)` projection is `g` and whose
/// z-cube bends are the X-bends of `g`. The witness uses the
/// lexicographically least valid level assignment.
pub fn lift(g: &GridDiagram) -> Result<(CubeDiagram, LevelAssignment), LiftError> {
    if !g.is_knot() {
        return Err(LiftError::MultiComponentUnsupported);
    }
    let cons = LiftConstraints::new(g);
    if !cons.is_acyclic() {
        return Err(NotLiftable::NoPartialOrder.into());
    }
    let levels = cons.least_assignment().ok_or(NotLiftable::NoValidExtension)?;
    let cube = CubeDiagram::validate(g.size(), cube_markings(g, &levels.0))
        .expect("an admissible level assignment yields a valid cube diagram");
    Ok((cube, levels))
}

/// Same verdict as [`lift`] without building a witness.
pub fn lift_exists(g: &GridDiagram) -> Result<bool, LiftError> {
    if !g.is_knot() {
        return Err(LiftError::MultiComponentUnsupported);
    }
    Ok(LiftConstraints::new(g).feasible())
}
