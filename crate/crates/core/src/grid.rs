//! Grid diagrams: markings, oriented segments, crossings, X-bends and the
//! crossing-induced order on X-bends.
//!
//! Rows are indexed bottom to top and columns left to right. Markings sit at
//! cell centres, so every crossing between a vertical and a horizontal segment
//! is transversal. Vertical segments run from X to O, horizontal segments from
//! O to X, and the vertical strand is always the over-strand.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest grid size supported by the fixed-width representation.
pub const MAX_N: usize = 12;

/// Bit set over bend (row) indices.
pub type BendMask = u16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Marking {
    X,
    O,
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Marking::X => f.write_str("X"),
            Marking::O => f.write_str("O"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid size {0} outside 1..={MAX_N}")]
    BadSize(usize),
    #[error("expected {expected} {which} columns, got {got}")]
    LengthMismatch {
        which: Marking,
        expected: usize,
        got: usize,
    },
    #[error("{0} columns are not a permutation (row {1})")]
    NotAPermutation(Marking, usize),
    #[error("X and O share a cell in row {0}")]
    SharedCell(usize),
    #[error("malformed grid text: {0}")]
    Parse(String),
}

/// A size-`n` grid diagram with one X and one O in every row and column.
///
/// `x_cols[r]` and `o_cols[r]` give the columns of the X and O markings in
/// row `r`. Entries past `n` are zero so the derived `Eq`, `Hash` and `Ord`
/// only see the live prefix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridDiagram {
    n: u8,
    x: [u8; MAX_N],
    o: [u8; MAX_N],
}

impl fmt::Debug for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Grid{{x: {:?}, o: {:?}}}", self.x_cols(), self.o_cols())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis2 {
    Horizontal,
    Vertical,
}

/// An oriented grid segment. `fixed` is the row of a horizontal segment or
/// the column of a vertical one; the segment runs from `from` to `to` along
/// the other coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub axis: Axis2,
    pub fixed: u8,
    pub from: u8,
    pub to: u8,
}

impl Segment {
    pub fn lo(&self) -> u8 {
        self.from.min(self.to)
    }

    pub fn hi(&self) -> u8 {
        self.from.max(self.to)
    }

    /// +1 when the segment runs toward increasing coordinate.
    pub fn direction(&self) -> i8 {
        if self.to > self.from {
            1
        } else {
            -1
        }
    }

    /// True when `t` lies strictly between the endpoints.
    pub fn spans(&self, t: u8) -> bool {
        self.lo() < t && t < self.hi()
    }
}

/// A crossing at `(row, col)`. The over-strand is the vertical segment in
/// `col`, the under-strand the horizontal segment in `row`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub row: u8,
    pub col: u8,
    pub sign: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BendKind {
    X,
    O,
}

/// Two segments meeting at a marking. For an X-bend the incoming segment is
/// horizontal and the outgoing one vertical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bend {
    pub kind: BendKind,
    /// Corner marking as `(row, col)`.
    pub corner: (u8, u8),
    pub incoming: Segment,
    pub outgoing: Segment,
}

impl GridDiagram {
    /// Validating constructor.
    pub fn new(n: usize, x_cols: &[u8], o_cols: &[u8]) -> Result<Self, GridError> {
        if n == 0 || n > MAX_N {
            return Err(GridError::BadSize(n));
        }
        for (which, cols) in [(Marking::X, x_cols), (Marking::O, o_cols)] {
            if cols.len() != n {
                return Err(GridError::LengthMismatch {
                    which,
                    expected: n,
                    got: cols.len(),
                });
            }
            let mut seen = 0u32;
            for (r, &c) in cols.iter().enumerate() {
                if c as usize >= n || seen & (1 << c) != 0 {
                    return Err(GridError::NotAPermutation(which, r));
                }
                seen |= 1 << c;
            }
        }
        if let Some(r) = (0..n).find(|&r| x_cols[r] == o_cols[r]) {
            return Err(GridError::SharedCell(r));
        }
        Ok(Self::from_parts_unchecked(n, x_cols, o_cols))
    }

    /// Builds a grid without validation. The caller guarantees the
    /// invariants; used on hot enumeration paths.
    pub fn from_parts_unchecked(n: usize, x_cols: &[u8], o_cols: &[u8]) -> Self {
        let mut x = [0u8; MAX_N];
        let mut o = [0u8; MAX_N];
        x[..n].copy_from_slice(&x_cols[..n]);
        o[..n].copy_from_slice(&o_cols[..n]);
        GridDiagram { n: n as u8, x, o }
    }

    pub fn size(&self) -> usize {
        self.n as usize
    }

    pub fn x_cols(&self) -> &[u8] {
        &self.x[..self.n as usize]
    }

    pub fn o_cols(&self) -> &[u8] {
        &self.o[..self.n as usize]
    }

    /// Row of the X marking in each column.
    pub fn x_rows(&self) -> [u8; MAX_N] {
        invert(&self.x, self.size())
    }

    /// Row of the O marking in each column.
    pub fn o_rows(&self) -> [u8; MAX_N] {
        invert(&self.o, self.size())
    }

    /// Successor map on bends: the X-bend in row `r` is followed along the
    /// knot by the X-bend in row `next[r]`.
    pub fn bend_successor(&self) -> [u8; MAX_N] {
        let or = self.o_rows();
        let mut next = [0u8; MAX_N];
        for r in 0..self.size() {
            next[r] = or[self.x[r] as usize];
        }
        next
    }

    pub fn vertical_segment(&self, col: usize, x_rows: &[u8; MAX_N], o_rows: &[u8; MAX_N]) -> Segment {
        Segment {
            axis: Axis2::Vertical,
            fixed: col as u8,
            from: x_rows[col],
            to: o_rows[col],
        }
    }

    pub fn horizontal_segment(&self, row: usize) -> Segment {
        Segment {
            axis: Axis2::Horizontal,
            fixed: row as u8,
            from: self.o[row],
            to: self.x[row],
        }
    }

    /// All `2n` oriented segments: verticals by column, then horizontals by
    /// row.
    pub fn segments(&self) -> Vec<Segment> {
        let (xr, or) = (self.x_rows(), self.o_rows());
        let n = self.size();
        let mut out = Vec::with_capacity(2 * n);
        out.extend((0..n).map(|c| self.vertical_segment(c, &xr, &or)));
        out.extend((0..n).map(|r| self.horizontal_segment(r)));
        out
    }

    /// All crossings, sorted by `(row, col)`.
    pub fn crossings(&self) -> Vec<Crossing> {
        let mut out = Vec::new();
        self.for_each_crossing(|c| out.push(c));
        out
    }

    pub(crate) fn for_each_crossing(&self, mut f: impl FnMut(Crossing)) {
        let n = self.size();
        let (xr, or) = (self.x_rows(), self.o_rows());
        for r in 0..n {
            let (hlo, hhi) = minmax(self.o[r], self.x[r]);
            // O -> X
            let dh: i8 = if self.x[r] > self.o[r] { 1 } else { -1 };
            for c in (hlo + 1)..hhi {
                let (vlo, vhi) = minmax(xr[c as usize], or[c as usize]);
                if vlo < r as u8 && (r as u8) < vhi {
                    // X -> O
                    let dv: i8 = if or[c as usize] > xr[c as usize] { 1 } else { -1 };
                    f(Crossing {
                        row: r as u8,
                        col: c,
                        sign: -dv * dh,
                    });
                }
            }
        }
    }

    pub fn writhe(&self) -> i32 {
        let mut w = 0i32;
        self.for_each_crossing(|c| w += c.sign as i32);
        w
    }

    /// Number of closed loops traced by the segments.
    pub fn component_count(&self) -> usize {
        let next = self.bend_successor();
        let mut seen: BendMask = 0;
        let mut count = 0;
        for start in 0..self.size() {
            if seen & (1 << start) != 0 {
                continue;
            }
            count += 1;
            let mut b = start;
            while seen & (1 << b) == 0 {
                seen |= 1 << b;
                b = next[b] as usize;
            }
        }
        count
    }

    pub fn is_knot(&self) -> bool {
        let next = self.bend_successor();
        let mut b = next[0] as usize;
        let mut len = 1;
        while b != 0 {
            b = next[b] as usize;
            len += 1;
        }
        len == self.size()
    }

    /// The X-bend decomposition, indexed by the row of each X marking.
    pub fn x_bends(&self) -> Vec<Bend> {
        let (xr, or) = (self.x_rows(), self.o_rows());
        (0..self.size())
            .map(|r| Bend {
                kind: BendKind::X,
                corner: (r as u8, self.x[r]),
                incoming: self.horizontal_segment(r),
                outgoing: self.vertical_segment(self.x[r] as usize, &xr, &or),
            })
            .collect()
    }

    /// The O-bend decomposition, indexed by the row of each O marking.
    pub fn o_bends(&self) -> Vec<Bend> {
        let (xr, or) = (self.x_rows(), self.o_rows());
        (0..self.size())
            .map(|r| Bend {
                kind: BendKind::O,
                corner: (r as u8, self.o[r]),
                incoming: self.vertical_segment(self.o[r] as usize, &xr, &or),
                outgoing: self.horizontal_segment(r),
            })
            .collect()
    }

    /// Bend indices of the component through bend `start`, in knot order.
    pub fn knot_order(&self, start: usize) -> Vec<u8> {
        let next = self.bend_successor();
        let mut out = vec![start as u8];
        let mut b = next[start] as usize;
        while b != start {
            out.push(b as u8);
            b = next[b] as usize;
        }
        out
    }

    pub fn bend_order(&self) -> BendOrder {
        let n = self.size();
        let xr = self.x_rows();
        let mut below = [0 as BendMask; MAX_N];
        let mut edges = 0;
        self.for_each_crossing(|c| {
            let over = xr[c.col as usize] as usize;
            if below[over] & (1 << c.row) == 0 {
                edges += 1;
            }
            below[over] |= 1 << c.row;
        });
        BendOrder::from_below(n, below, edges)
    }

    /// Reflection `c -> n-1-c` of both marking columns.
    pub fn mirror(&self) -> GridDiagram {
        let n = self.size();
        let mut g = *self;
        for r in 0..n {
            g.x[r] = (n - 1) as u8 - self.x[r];
            g.o[r] = (n - 1) as u8 - self.o[r];
        }
        g
    }

    /// Rotation by a half turn, `(r, c) -> (n-1-r, n-1-c)`.
    pub fn rotate_half_turn(&self) -> GridDiagram {
        let n = self.size();
        let mut g = *self;
        for r in 0..n {
            g.x[n - 1 - r] = (n - 1) as u8 - self.x[r];
            g.o[n - 1 - r] = (n - 1) as u8 - self.o[r];
        }
        g
    }

    /// Torus translation: row `r` moves to `r + dr`, column `c` to `c + dc`.
    pub fn translate(&self, dr: usize, dc: usize) -> GridDiagram {
        let n = self.size();
        let mut g = *self;
        for r in 0..n {
            let nr = (r + dr) % n;
            g.x[nr] = ((self.x[r] as usize + dc) % n) as u8;
            g.o[nr] = ((self.o[r] as usize + dc) % n) as u8;
        }
        g
    }

    pub(crate) fn swap_rows(&self, a: usize, b: usize) -> GridDiagram {
        let mut g = *self;
        g.x.swap(a, b);
        g.o.swap(a, b);
        g
    }

    pub(crate) fn swap_cols(&self, a: usize, b: usize) -> GridDiagram {
        let mut g = *self;
        let swap = |c: &mut u8| {
            if *c as usize == a {
                *c = b as u8;
            } else if *c as usize == b {
                *c = a as u8;
            }
        };
        for r in 0..self.size() {
            swap(&mut g.x[r]);
            swap(&mut g.o[r]);
        }
        g
    }

    /// Marking at `(row, col)`, if any.
    pub fn marking_at(&self, row: usize, col: usize) -> Option<Marking> {
        if self.x[row] as usize == col {
            Some(Marking::X)
        } else if self.o[row] as usize == col {
            Some(Marking::O)
        } else {
            None
        }
    }

    /// Text form: `grid <n>`, `X: ...`, `O: ...`, newline terminated.
    pub fn to_text(&self) -> String {
        let join = |v: &[u8]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
        format!(
            "grid {}\nX: {}\nO: {}\n",
            self.n,
            join(self.x_cols()),
            join(self.o_cols())
        )
    }
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for GridDiagram {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |m: &str| GridError::Parse(m.to_string());
        let mut lines = s.lines();
        let n: usize = lines
            .next()
            .and_then(|l| l.strip_prefix("grid "))
            .ok_or_else(|| bad("expected `grid <n>`"))?
            .parse()
            .map_err(|_| bad("bad size"))?;
        let mut cols = |prefix: &str| -> Result<Vec<u8>, GridError> {
            let line = lines
                .next()
                .and_then(|l| l.strip_prefix(prefix))
                .ok_or_else(|| bad(&format!("expected `{prefix}` line")))?;
            line.split(' ')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u8>().map_err(|_| bad(&format!("bad column `{t}`"))))
                .collect()
        };
        let x = cols("X: ")?;
        let o = cols("O: ")?;
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(bad("trailing content"));
        }
        GridDiagram::new(n, &x, &o)
    }
}

/// The relation `b1 > b2` on X-bends, where `b1`'s vertical segment crosses
/// over `b2`'s horizontal segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BendOrder {
    n: usize,
    below: [BendMask; MAX_N],
    edge_count: usize,
    /// Strict transitive closure: `down[b]` holds every bend forced below `b`.
    down: [BendMask; MAX_N],
    up: [BendMask; MAX_N],
    acyclic: bool,
}

impl BendOrder {
    fn from_below(n: usize, below: [BendMask; MAX_N], edge_count: usize) -> Self {
        let mut down = below;
        // Warshall on bit rows.
        for k in 0..n {
            let kb = 1 << k;
            let dk = down[k];
            for row in down.iter_mut().take(n) {
                if *row & kb != 0 {
                    *row |= dk;
                }
            }
        }
        let mut up = [0 as BendMask; MAX_N];
        for (b, &d) in down.iter().enumerate().take(n) {
            for (a, u) in up.iter_mut().enumerate().take(n) {
                if d & (1 << a) != 0 {
                    *u |= 1 << b;
                }
            }
        }
        let acyclic = (0..n).all(|b| down[b] & (1 << b) == 0);
        BendOrder {
            n,
            below,
            edge_count,
            down,
            up,
            acyclic,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_acyclic(&self) -> bool {
        self.acyclic
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Bends that `b` crosses over directly.
    pub fn below(&self, b: usize) -> BendMask {
        self.below[b]
    }

    /// Every bend forced strictly below `b`.
    pub fn down_set(&self, b: usize) -> BendMask {
        self.down[b]
    }

    /// Every bend forced strictly above `b`.
    pub fn up_set(&self, b: usize) -> BendMask {
        self.up[b]
    }

    /// Direct edges `(over, under)` in lexicographic order.
    pub fn edges(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for a in 0..self.n {
            for b in 0..self.n {
                if self.below[a] & (1 << b) != 0 {
                    out.push((a as u8, b as u8));
                }
            }
        }
        out
    }

    /// Whether `levels` (bend -> level) respects every edge.
    pub fn is_extension(&self, levels: &[u8]) -> bool {
        self.edges()
            .iter()
            .all(|&(a, b)| levels[a as usize] > levels[b as usize])
    }
}

fn invert(p: &[u8; MAX_N], n: usize) -> [u8; MAX_N] {
    let mut inv = [0u8; MAX_N];
    for (i, &v) in p.iter().enumerate().take(n) {
        inv[v as usize] = i as u8;
    }
    inv
}

fn minmax(a: u8, b: u8) -> (u8, u8) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}
