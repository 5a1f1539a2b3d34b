//! Type 1 and Type 2 configurations: grid patterns that cannot occur in the
//! `(x,y)` projection of a cube diagram.
//!
//! Each X-bend `b` shades two regions: the rectangle left of its vertical
//! segment (strictly between the segment's rows, out to the left edge) and
//! the rectangle above its horizontal segment (strictly between the
//! segment's columns, up to the top edge). An O in either region carries a
//! z-edge that must not pass through `b`'s level.
//!
//! A Type 1 configuration at `b` is a stretch of the knot that avoids `b`,
//! starts at a bend forced below `b` (strand `a`), ends at a bend forced
//! above `b` (strand `b`) and only passes O markings in `b`'s shaded
//! regions. Some O on the stretch must then climb through `b`'s level.
//!
//! A Type 2 configuration is a pair of unordered bends where assuming either
//! order between them produces a Type 1 configuration.
//!
//! The pattern shapes are figure-derived: variant `a` uses only the region
//! left of the vertical, `b` only the region above the horizontal, and `c`
//! both. Type 2 variant `a` refutes both orders at the pair itself, `b` at
//! some third bend.

use std::fmt;

use crate::cube::{shade, SHADE_ABOVE, SHADE_LEFT};
use crate::grid::{BendMask, BendOrder, GridDiagram, MAX_N};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ObstructionKind {
    Type1A,
    Type1B,
    Type1C,
    Type2A,
    Type2B,
}

impl fmt::Display for ObstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObstructionKind::Type1A => "type1a",
            ObstructionKind::Type1B => "type1b",
            ObstructionKind::Type1C => "type1c",
            ObstructionKind::Type2A => "type2a",
            ObstructionKind::Type2B => "type2b",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionSide {
    LeftOfVertical,
    AboveHorizontal,
}

/// Closed cell rectangle `rows.0..=rows.1` by `cols.0..=cols.1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Region {
    pub bend: u8,
    pub side: RegionSide,
    pub rows: (u8, u8),
    pub cols: (u8, u8),
}

impl Region {
    pub fn contains(&self, row: u8, col: u8) -> bool {
        (self.rows.0..=self.rows.1).contains(&row) && (self.cols.0..=self.cols.1).contains(&col)
    }

    fn of(g: &GridDiagram, o_rows: &[u8; MAX_N], b: usize, side: RegionSide) -> Region {
        let n = g.size() as u8;
        let xb = g.x_cols()[b];
        match side {
            RegionSide::LeftOfVertical => {
                let (lo, hi) = minmax(b as u8, o_rows[xb as usize]);
                Region {
                    bend: b as u8,
                    side,
                    rows: (lo + 1, hi - 1),
                    cols: (0, xb - 1),
                }
            }
            RegionSide::AboveHorizontal => {
                let (lo, hi) = minmax(g.o_cols()[b], xb);
                Region {
                    bend: b as u8,
                    side,
                    rows: (b as u8 + 1, n - 1),
                    cols: (lo + 1, hi - 1),
                }
            }
        }
    }
}

/// A stretch of the knot between two bends, given by its bends in knot
/// order and the O markings between consecutive ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subpath {
    pub bends: Vec<u8>,
    pub o_markings: Vec<(u8, u8)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionMatch {
    pub kind: ObstructionKind,
    /// Bend index (row of its X).
    pub anchor: u8,
    /// Position of the anchor's X marking.
    pub position: (u8, u8),
    /// The other bend of a Type 2 pair.
    pub partner: Option<u8>,
    pub regions: Vec<Region>,
    /// One subpath for Type 1; one per refuted order for Type 2.
    pub witness: Vec<Subpath>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterVerdict {
    NoPartialOrder,
    Type1Found(Vec<ObstructionMatch>),
    Type2Found(Vec<ObstructionMatch>),
    Candidate,
}

/// Verdict without match details, as used by the enumeration engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VerdictKind {
    NoPartialOrder,
    Type1Found,
    Type2Found,
    Candidate,
}

impl VerdictKind {
    pub const ALL: [VerdictKind; 4] = [
        VerdictKind::NoPartialOrder,
        VerdictKind::Type1Found,
        VerdictKind::Type2Found,
        VerdictKind::Candidate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VerdictKind::NoPartialOrder => "NoPartialOrder",
            VerdictKind::Type1Found => "Type1Found",
            VerdictKind::Type2Found => "Type2Found",
            VerdictKind::Candidate => "Candidate",
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FilterVerdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            FilterVerdict::NoPartialOrder => VerdictKind::NoPartialOrder,
            FilterVerdict::Type1Found(_) => VerdictKind::Type1Found,
            FilterVerdict::Type2Found(_) => VerdictKind::Type2Found,
            FilterVerdict::Candidate => VerdictKind::Candidate,
        }
    }

    pub fn matches(&self) -> &[ObstructionMatch] {
        match self {
            FilterVerdict::Type1Found(m) | FilterVerdict::Type2Found(m) => m,
            _ => &[],
        }
    }
}

/// `<verdict> [kind@(row,col)]...`
impl fmt::Display for FilterVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind().name())?;
        for m in self.matches() {
            write!(f, " {}@({},{})", m.kind, m.position.0, m.position.1)?;
        }
        Ok(())
    }
}

/// Precomputed data shared by both detectors.
struct Ctx<'g> {
    g: &'g GridDiagram,
    n: usize,
    next: [u8; MAX_N],
    o_rows: [u8; MAX_N],
    down: [BendMask; MAX_N],
    up: [BendMask; MAX_N],
}

/// A bend forced below the anchor joined to one forced above it.
struct Hit {
    bits: u8,
    path: Subpath,
}

impl<'g> Ctx<'g> {
    fn new(g: &'g GridDiagram, order: &BendOrder) -> Self {
        let n = g.size();
        let mut down = [0; MAX_N];
        let mut up = [0; MAX_N];
        for b in 0..n {
            down[b] = order.down_set(b);
            up[b] = order.up_set(b);
        }
        Ctx {
            g,
            n,
            next: g.bend_successor(),
            o_rows: g.o_rows(),
            down,
            up,
        }
    }

    /// The O between bend `u` and its successor.
    fn o_after(&self, u: usize) -> (u8, u8) {
        (self.next[u], self.g.x_cols()[u])
    }

    /// Shortest stretch avoiding `anchor` that joins a bend in `lows` to a
    /// bend in `highs` through O markings shaded by `anchor`.
    fn stretch(&self, anchor: usize, lows: BendMask, highs: BendMask) -> Option<Hit> {
        if lows == 0 || highs == 0 {
            return None;
        }
        // Bends of the anchor's component, starting after it.
        let mut seq = [0u8; MAX_N];
        let mut len = 0;
        let mut u = self.next[anchor] as usize;
        while u != anchor {
            seq[len] = u as u8;
            len += 1;
            u = self.next[u] as usize;
        }
        let mut best: Option<(usize, usize)> = None;
        let mut start = 0;
        while start < len {
            // Maximal run seq[start..=end] joined by shaded O markings.
            let mut end = start;
            while end + 1 < len && self.link_shade(anchor, seq[end] as usize) != 0 {
                end += 1;
            }
            let (mut last_low, mut last_high) = (None, None);
            for (i, &b) in seq.iter().enumerate().take(end + 1).skip(start) {
                let bit = 1 << b;
                if lows & bit != 0 {
                    if let Some(h) = last_high {
                        consider(&mut best, h, i);
                    }
                    last_low = Some(i);
                }
                if highs & bit != 0 {
                    if let Some(l) = last_low {
                        consider(&mut best, l, i);
                    }
                    last_high = Some(i);
                }
            }
            start = end + 1;
        }
        let (i, j) = best?;
        let bends: Vec<u8> = seq[i..=j].to_vec();
        let (mut any, mut every) = (0, SHADE_LEFT | SHADE_ABOVE);
        let mut o_markings = Vec::with_capacity(j - i);
        for &b in &seq[i..j] {
            let s = self.link_shade(anchor, b as usize);
            any |= s;
            every &= s;
            o_markings.push(self.o_after(b as usize));
        }
        // A link shaded on both sides fits either pure variant.
        let bits = if every & SHADE_LEFT != 0 {
            SHADE_LEFT
        } else if every & SHADE_ABOVE != 0 {
            SHADE_ABOVE
        } else {
            any
        };
        Some(Hit {
            bits,
            path: Subpath { bends, o_markings },
        })
    }

    #[inline]
    fn link_shade(&self, anchor: usize, u: usize) -> u8 {
        shade(self.g, &self.o_rows, anchor, self.next[u] as usize)
    }

    fn regions(&self, anchor: usize, bits: u8) -> Vec<Region> {
        let mut out = Vec::with_capacity(2);
        if bits & SHADE_LEFT != 0 {
            out.push(Region::of(self.g, &self.o_rows, anchor, RegionSide::LeftOfVertical));
        }
        if bits & SHADE_ABOVE != 0 {
            out.push(Region::of(self.g, &self.o_rows, anchor, RegionSide::AboveHorizontal));
        }
        out
    }

    fn type1_at(&self, b: usize) -> Option<ObstructionMatch> {
        let hit = self.stretch(b, self.down[b], self.up[b])?;
        let kind = match hit.bits {
            SHADE_LEFT => ObstructionKind::Type1A,
            SHADE_ABOVE => ObstructionKind::Type1B,
            _ => ObstructionKind::Type1C,
        };
        Some(ObstructionMatch {
            kind,
            anchor: b as u8,
            position: (b as u8, self.g.x_cols()[b]),
            partner: None,
            regions: self.regions(b, hit.bits),
            witness: vec![hit.path],
        })
    }

    /// Refutes `L(lo) < L(hi)` by a stretch that needs the extra order.
    /// Anchors in `prefer` are tried first.
    fn refute(&self, lo: usize, hi: usize, prefer: [usize; 2]) -> Option<(usize, Hit)> {
        let a_set = (1 << lo) | self.down[lo];
        let b_set = (1 << hi) | self.up[hi];
        let touched = a_set | b_set;
        let try_anchor = |c: usize| -> Option<(usize, Hit)> {
            let bit = 1 << c;
            let lows = self.down[c] | if b_set & bit != 0 { a_set } else { 0 };
            let highs = self.up[c] | if a_set & bit != 0 { b_set } else { 0 };
            let hit = self.stretch(c, lows, highs)?;
            Some((c, hit))
        };
        for &c in &prefer {
            if let Some(h) = try_anchor(c) {
                return Some(h);
            }
        }
        (0..self.n)
            .filter(|&c| touched & (1 << c) != 0 && !prefer.contains(&c))
            .find_map(try_anchor)
    }

    fn type2_pair(&self, alpha: usize, beta: usize, plain: BendMask) -> Option<ObstructionMatch> {
        let related = (self.down[alpha] | self.up[alpha]) & (1 << beta) != 0;
        if related {
            return None;
        }
        // Anchors that already carry a Type 1 configuration refute nothing new.
        let usable = |r: &(usize, Hit)| plain & (1 << r.0) == 0;
        let first = self.refute(alpha, beta, [alpha, beta]).filter(usable)?;
        let second = self.refute(beta, alpha, [alpha, beta]).filter(usable)?;
        let at_pair = |c: usize| c == alpha || c == beta;
        let kind = if at_pair(first.0) && at_pair(second.0) {
            ObstructionKind::Type2A
        } else {
            ObstructionKind::Type2B
        };
        let mut regions = self.regions(first.0, first.1.bits);
        for r in self.regions(second.0, second.1.bits) {
            if !regions.contains(&r) {
                regions.push(r);
            }
        }
        Some(ObstructionMatch {
            kind,
            anchor: alpha as u8,
            position: (alpha as u8, self.g.x_cols()[alpha]),
            partner: Some(beta as u8),
            regions,
            witness: vec![first.1.path, second.1.path],
        })
    }
}

fn consider(best: &mut Option<(usize, usize)>, a: usize, b: usize) {
    if best.is_none_or(|(i, j)| b - a < j - i) {
        *best = Some((a, b));
    }
}

fn minmax(a: u8, b: u8) -> (u8, u8) {
    (a.min(b), a.max(b))
}

/// Every Type 1 configuration, at most one per anchor bend, by anchor row.
pub fn detect_type1(g: &GridDiagram) -> Vec<ObstructionMatch> {
    let order = g.bend_order();
    let ctx = Ctx::new(g, &order);
    (0..ctx.n).filter_map(|b| ctx.type1_at(b)).collect()
}

/// Every Type 2 configuration, at most one per unordered pair of bends.
pub fn detect_type2(g: &GridDiagram) -> Vec<ObstructionMatch> {
    let order = g.bend_order();
    let ctx = Ctx::new(g, &order);
    let plain = type1_mask(&ctx);
    let mut out = Vec::new();
    for alpha in 0..ctx.n {
        for beta in alpha + 1..ctx.n {
            out.extend(ctx.type2_pair(alpha, beta, plain));
        }
    }
    out
}

fn type1_mask(ctx: &Ctx) -> BendMask {
    (0..ctx.n)
        .filter(|&b| ctx.stretch(b, ctx.down[b], ctx.up[b]).is_some())
        .fold(0, |m, b| m | (1 << b))
}

/// NoPartialOrder, then Type 1, then Type 2.
pub fn filter(g: &GridDiagram) -> FilterVerdict {
    let order = g.bend_order();
    if !order.is_acyclic() {
        return FilterVerdict::NoPartialOrder;
    }
    let t1 = detect_type1(g);
    if !t1.is_empty() {
        return FilterVerdict::Type1Found(t1);
    }
    let t2 = detect_type2(g);
    if !t2.is_empty() {
        return FilterVerdict::Type2Found(t2);
    }
    FilterVerdict::Candidate
}

/// Same verdict as [`filter`], stopping at the first match.
pub fn filter_kind(g: &GridDiagram) -> VerdictKind {
    let order = g.bend_order();
    if !order.is_acyclic() {
        return VerdictKind::NoPartialOrder;
    }
    let ctx = Ctx::new(g, &order);
    if (0..ctx.n).any(|b| ctx.stretch(b, ctx.down[b], ctx.up[b]).is_some()) {
        return VerdictKind::Type1Found;
    }
    for alpha in 0..ctx.n {
        for beta in alpha + 1..ctx.n {
            if ctx.type2_pair(alpha, beta, 0).is_some() {
                return VerdictKind::Type2Found;
            }
        }
    }
    VerdictKind::Candidate
}
