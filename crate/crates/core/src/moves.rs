//! Cyclic permutations and commutations on grids, with orbit and
//! reachability closures.
//!
//! The grid is treated as living on a torus: rows `n-1` and `0` are
//! adjacent, as are columns `n-1` and `0`.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::grid::GridDiagram;
use crate::invariants::{
    fingerprint_id, jones, legendrian_data, standard_diagram, InvariantError, LaurentPolynomial, StandardDiagramParams,
};
use crate::search::{enumerate_grids, EnumSpec, Exec, JonesMode, RunControl, Sink, Stats, Visit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    /// The top row moves to the bottom.
    CyclicUp,
    /// The bottom row moves to the top.
    CyclicDown,
    /// The leftmost column moves to the right end.
    CyclicLeft,
    /// The rightmost column moves to the left end.
    CyclicRight,
    /// Swaps rows `i` and `i + 1 (mod n)`.
    CommuteRows(usize),
    /// Swaps columns `i` and `i + 1 (mod n)`.
    CommuteCols(usize),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::CyclicUp => f.write_str("up"),
            Move::CyclicDown => f.write_str("down"),
            Move::CyclicLeft => f.write_str("left"),
            Move::CyclicRight => f.write_str("right"),
            Move::CommuteRows(i) => write!(f, "row{i}"),
            Move::CommuteCols(i) => write!(f, "col{i}"),
        }
    }
}

impl std::str::FromStr for Move {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let idx = |rest: &str| rest.parse::<usize>().map_err(|_| format!("bad move index in {s:?}"));
        match s {
            "up" => Ok(Move::CyclicUp),
            "down" => Ok(Move::CyclicDown),
            "left" => Ok(Move::CyclicLeft),
            "right" => Ok(Move::CyclicRight),
            _ => {
                if let Some(rest) = s.strip_prefix("row") {
                    Ok(Move::CommuteRows(idx(rest)?))
                } else if let Some(rest) = s.strip_prefix("col") {
                    Ok(Move::CommuteCols(idx(rest)?))
                } else {
                    Err(format!("unknown move {s:?}"))
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lines {
    Rows,
    Cols,
}

impl fmt::Display for Lines {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lines::Rows => "rows",
            Lines::Cols => "columns",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("{lines} {index} and {index}+1 are interleaved")]
    InterleavedPair { lines: Lines, index: usize },
    #[error("{lines} {index} and {index}+1 have markings sharing a coordinate")]
    SharedCoordinate { lines: Lines, index: usize },
    #[error("index {index} out of range for a size-{n} grid")]
    IndexOutOfRange { index: usize, n: usize },
}

/// How the marking spans of two adjacent lines sit relative to each other.
fn classify_pair(a: (u8, u8), b: (u8, u8)) -> Option<bool> {
    let (a0, a1) = (a.0.min(a.1), a.0.max(a.1));
    let (b0, b1) = (b.0.min(b.1), b.0.max(b.1));
    if a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1 {
        return None;
    }
    let inside = |v: u8| a0 < v && v < a1;
    // Interleaved when exactly one end of `b` falls inside `a`.
    Some(inside(b0) != inside(b1))
}

pub fn apply_move(g: &GridDiagram, m: Move) -> Result<GridDiagram, MoveError> {
    let n = g.size();
    match m {
        Move::CyclicUp => Ok(g.translate(1, 0)),
        Move::CyclicDown => Ok(g.translate(n - 1, 0)),
        Move::CyclicLeft => Ok(g.translate(0, n - 1)),
        Move::CyclicRight => Ok(g.translate(0, 1)),
        Move::CommuteRows(i) | Move::CommuteCols(i) if i >= n => Err(MoveError::IndexOutOfRange { index: i, n }),
        Move::CommuteRows(i) => {
            let j = (i + 1) % n;
            let (x, o) = (g.x_cols(), g.o_cols());
            check_pair(Lines::Rows, i, (x[i], o[i]), (x[j], o[j]))?;
            Ok(g.swap_rows(i, j))
        }
        Move::CommuteCols(i) => {
            let j = (i + 1) % n;
            let (xr, or) = (g.x_rows(), g.o_rows());
            check_pair(Lines::Cols, i, (xr[i], or[i]), (xr[j], or[j]))?;
            Ok(g.swap_cols(i, j))
        }
    }
}

fn check_pair(lines: Lines, index: usize, a: (u8, u8), b: (u8, u8)) -> Result<(), MoveError> {
    match classify_pair(a, b) {
        None => Err(MoveError::SharedCoordinate { lines, index }),
        Some(true) => Err(MoveError::InterleavedPair { lines, index }),
        Some(false) => Ok(()),
    }
}

/// Which moves a closure uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveSet {
    Cyclic,
    All,
}

impl MoveSet {
    pub fn moves(self, n: usize) -> Vec<Move> {
        let mut out = vec![Move::CyclicUp, Move::CyclicDown, Move::CyclicLeft, Move::CyclicRight];
        if self == MoveSet::All && n > 1 {
            out.extend((0..n).map(Move::CommuteRows));
            out.extend((0..n).map(Move::CommuteCols));
        }
        out
    }
}

/// Every legal single move from `g`, in [`MoveSet::moves`] order.
pub fn neighbours(g: &GridDiagram, set: MoveSet) -> Vec<(Move, GridDiagram)> {
    set.moves(g.size())
        .into_iter()
        .filter_map(|m| apply_move(g, m).ok().map(|h| (m, h)))
        .collect()
}

/// All torus translates of `g`.
pub fn cyclic_orbit(g: &GridDiagram) -> BTreeSet<GridDiagram> {
    let n = g.size();
    (0..n)
        .flat_map(|dr| (0..n).map(move |dc| (dr, dc)))
        .map(|(dr, dc)| g.translate(dr, dc))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassKey {
    pub fingerprint_id: String,
    pub tb: i32,
    pub r: i32,
}

#[derive(Debug, Clone)]
pub struct OrbitReport {
    pub start: GridDiagram,
    pub move_set: MoveSet,
    /// Reached grids in ascending order.
    pub members: Vec<GridDiagram>,
    /// Member counts by knot fingerprint and Legendrian invariants.
    pub classes: BTreeMap<ClassKey, usize>,
}

impl OrbitReport {
    pub fn contains(&self, g: &GridDiagram) -> bool {
        self.members.binary_search(g).is_ok()
    }
}

pub fn class_key(g: &GridDiagram) -> ClassKey {
    let v = jones(g).expect("knot grids have integral Jones exponents");
    let l = legendrian_data(g);
    ClassKey {
        fingerprint_id: fingerprint_id(&v),
        tb: l.tb,
        r: l.r,
    }
}

/// Breadth-first closure of `g` under `set`.
pub fn closure(g: &GridDiagram, set: MoveSet) -> Vec<GridDiagram> {
    let mut seen: HashSet<GridDiagram> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(*g);
    queue.push_back(*g);
    while let Some(h) = queue.pop_front() {
        for (_, k) in neighbours(&h, set) {
            if seen.insert(k) {
                queue.push_back(k);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

pub fn reachability_class(g: &GridDiagram) -> OrbitReport {
    report(g, MoveSet::All)
}

pub fn report(g: &GridDiagram, set: MoveSet) -> OrbitReport {
    let members = closure(g, set);
    let mut classes = BTreeMap::new();
    if g.is_knot() {
        for m in &members {
            *classes.entry(class_key(m)).or_insert(0) += 1;
        }
    }
    OrbitReport {
        start: *g,
        move_set: set,
        members,
        classes,
    }
}

// ---------------------------------------------------------------------------
// Legendrian census

/// Census bucket key: knot fingerprint with the Legendrian invariants.
pub type BucketKey = (LaurentPolynomial, i32, i32);

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CensusBucket {
    pub count: u64,
    pub lifts_found: u64,
    /// Sorted members; empty unless the fingerprint was targeted.
    pub members: Vec<GridDiagram>,
    /// Move-reachability classes as sorted member lists, largest first.
    pub classes: Vec<Vec<GridDiagram>>,
}

/// A legal move that changes `(tb, r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveFinding {
    pub from: GridDiagram,
    pub mv: Move,
    pub to: GridDiagram,
    pub before: (i32, i32),
    pub after: (i32, i32),
}

#[derive(Debug, Clone, Default)]
pub struct CensusOptions {
    pub exec: Exec,
    /// Fingerprints whose buckets are decomposed into classes. `None` means
    /// every knot except the unknot.
    pub targets: Option<BTreeSet<LaurentPolynomial>>,
}

#[derive(Debug, Clone)]
pub struct Census {
    pub n: usize,
    pub buckets: BTreeMap<BucketKey, CensusBucket>,
    pub findings: Vec<MoveFinding>,
    pub stats: Stats,
}

impl Census {
    pub fn bucket(&self, v: &LaurentPolynomial, tb: i32, r: i32) -> Option<&CensusBucket> {
        self.buckets.get(&(v.clone(), tb, r))
    }

    /// Buckets of one knot type with the largest `tb`.
    pub fn max_tb_buckets(&self, v: &LaurentPolynomial) -> Vec<(&BucketKey, &CensusBucket)> {
        let of_v: Vec<_> = self.buckets.iter().filter(|(k, _)| &k.0 == v).collect();
        let top = of_v.iter().map(|(k, _)| k.1).max();
        of_v.into_iter().filter(|(k, _)| Some(k.1) == top).collect()
    }

    /// `fingerprint_id,tb,r,count,num_classes,lifts_found`; `num_classes` is
    /// blank for buckets that were only counted.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("fingerprint_id,tb,r,count,num_classes,lifts_found\n");
        for ((v, tb, r), b) in &self.buckets {
            let classes = if b.members.is_empty() {
                String::new()
            } else {
                b.classes.len().to_string()
            };
            out.push_str(&format!(
                "{},{tb},{r},{},{classes},{}\n",
                fingerprint_id(v),
                b.count,
                b.lifts_found
            ));
        }
        out
    }
}

struct CensusSink<'a> {
    targets: Option<&'a BTreeSet<LaurentPolynomial>>,
    unknot: &'a LaurentPolynomial,
    buckets: BTreeMap<BucketKey, CensusBucket>,
}

impl Sink for CensusSink<'_> {
    fn visit(&mut self, v: &Visit) {
        let Some(poly) = v.jones else { return };
        let l = legendrian_data(v.grid);
        let b = self.buckets.entry((poly.clone(), l.tb, l.r)).or_default();
        b.count += 1;
        b.lifts_found += v.lifted as u64;
        let wanted = match self.targets {
            Some(t) => t.contains(poly),
            None => poly != self.unknot,
        };
        if wanted {
            b.members.push(*v.grid);
        }
    }

    fn merge(&mut self, other: Self) {
        for (k, b) in other.buckets {
            let e = self.buckets.entry(k).or_default();
            e.count += b.count;
            e.lifts_found += b.lifts_found;
            e.members.extend(b.members);
        }
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Splits a sorted bucket into move-reachability classes, reporting moves
/// that leave the bucket's `(tb, r)`.
fn decompose(members: &[GridDiagram], tb_r: (i32, i32), findings: &mut Vec<MoveFinding>) -> Vec<Vec<GridDiagram>> {
    let mut parent: Vec<usize> = (0..members.len()).collect();
    for (i, g) in members.iter().enumerate() {
        for (m, h) in neighbours(g, MoveSet::All) {
            match members.binary_search(&h) {
                Ok(j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
                Err(_) => {
                    let l = legendrian_data(&h);
                    findings.push(MoveFinding {
                        from: *g,
                        mv: m,
                        to: h,
                        before: tb_r,
                        after: (l.tb, l.r),
                    });
                }
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<GridDiagram>> = BTreeMap::new();
    for (i, g) in members.iter().enumerate() {
        classes.entry(find(&mut parent, i)).or_default().push(*g);
    }
    let mut out: Vec<_> = classes.into_values().collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a[0].cmp(&b[0])));
    out
}

/// Every size-`n` knot grid bucketed by fingerprint, `tb` and `r`, with
/// targeted buckets decomposed into move-reachability classes.
pub fn census(n: usize, opts: &CensusOptions) -> Census {
    let spec = EnumSpec {
        jones: JonesMode::All,
        ..EnumSpec::new(n)
    };
    let unknot = LaurentPolynomial::one();
    let ctl = RunControl {
        exec: opts.exec,
        ..RunControl::default()
    };
    let (progress, sink) = enumerate_grids(&spec, Stats::default(), ctl, || CensusSink {
        targets: opts.targets.as_ref(),
        unknot: &unknot,
        buckets: BTreeMap::new(),
    })
    .expect("census sizes are validated by the caller");
    let mut buckets = sink.buckets;
    let mut findings = Vec::new();
    for ((_, tb, r), b) in buckets.iter_mut() {
        b.members.sort_unstable();
        if !b.members.is_empty() {
            b.classes = decompose(&b.members, (*tb, *r), &mut findings);
        }
    }
    findings.sort_by_key(|f| (f.from, f.mv));
    Census {
        n,
        buckets,
        findings,
        stats: progress.stats,
    }
}

/// Jones polynomial of the left-hand `(p,2)` torus knot.
pub fn left_torus_fingerprint(p: u32) -> Result<LaurentPolynomial, InvariantError> {
    let g = standard_diagram(StandardDiagramParams::new(p, 1, p - 1)?)?;
    jones(&g)
}

/// Census at the minimal size `p + 2` of the left-hand `(p,2)` torus knot,
/// decomposing only that knot's buckets.
pub fn legendrian_census(p: u32, exec: Exec) -> Result<Census, InvariantError> {
    let v = left_torus_fingerprint(p)?;
    let opts = CensusOptions {
        exec,
        targets: Some([v].into()),
    };
    Ok(census(p as usize + 2, &opts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> GridDiagram {
        GridDiagram::new(5, &[0, 1, 2, 3, 4], &[2, 3, 4, 0, 1]).unwrap()
    }

    #[test]
    fn full_rotation_is_identity() {
        let g = trefoil();
        let mut h = g;
        for _ in 0..5 {
            h = apply_move(&h, Move::CyclicDown).unwrap();
        }
        assert_eq!(h, g);
        let up = apply_move(&g, Move::CyclicUp).unwrap();
        assert_eq!(apply_move(&up, Move::CyclicDown).unwrap(), g);
    }

    #[test]
    fn cyclic_down_moves_bottom_row_to_top() {
        let g = trefoil();
        let h = apply_move(&g, Move::CyclicDown).unwrap();
        assert_eq!(h.x_cols()[4], g.x_cols()[0]);
        assert_eq!(h.o_cols()[0], g.o_cols()[1]);
        let h = apply_move(&g, Move::CyclicLeft).unwrap();
        assert_eq!(h.x_cols()[0], 4);
    }

    #[test]
    fn interleaving() {
        assert_eq!(classify_pair((0, 3), (1, 2)), Some(false));
        assert_eq!(classify_pair((0, 1), (2, 3)), Some(false));
        assert_eq!(classify_pair((0, 2), (1, 3)), Some(true));
        assert_eq!(classify_pair((3, 1), (0, 2)), Some(true));
        assert_eq!(classify_pair((0, 2), (2, 3)), None);
    }

    #[test]
    fn commutation_errors() {
        let g = trefoil();
        // Rows 0 and 1: columns {0,2} and {1,3}.
        assert_eq!(
            apply_move(&g, Move::CommuteRows(0)),
            Err(MoveError::InterleavedPair {
                lines: Lines::Rows,
                index: 0
            })
        );
        assert_eq!(
            apply_move(&g, Move::CommuteCols(7)),
            Err(MoveError::IndexOutOfRange { index: 7, n: 5 })
        );
        let u = GridDiagram::new(2, &[0, 1], &[1, 0]).unwrap();
        assert!(matches!(
            apply_move(&u, Move::CommuteRows(0)),
            Err(MoveError::SharedCoordinate { .. })
        ));
    }

    #[test]
    fn unknot_orbit() {
        let u = GridDiagram::new(2, &[0, 1], &[1, 0]).unwrap();
        assert_eq!(cyclic_orbit(&u).len(), 2);
        let rep = reachability_class(&u);
        assert_eq!(rep.members.len(), 2);
        assert!(rep.contains(&GridDiagram::new(2, &[1, 0], &[0, 1]).unwrap()));
    }

    #[test]
    fn move_names_round_trip() {
        for m in [
            Move::CyclicUp,
            Move::CyclicRight,
            Move::CommuteRows(3),
            Move::CommuteCols(0),
        ] {
            assert_eq!(m.to_string().parse::<Move>().unwrap(), m);
        }
        assert!("row".parse::<Move>().is_err());
    }
}
