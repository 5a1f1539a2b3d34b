//! Independent oracles and fixtures shared by the integration tests. Nothing
//! here calls the library routine it is used to check.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use cubik::cube::{CubeDiagram, CubeMarking, MarkType};
use cubik::grid::GridDiagram;
use cubik::invariants::LaurentPolynomial;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

pub fn grid(x: &[u8], o: &[u8]) -> GridDiagram {
    GridDiagram::new(x.len(), x, o).unwrap()
}

pub fn left_trefoil() -> GridDiagram {
    grid(&[3, 4, 0, 1, 2], &[0, 1, 2, 3, 4])
}

pub fn unknot() -> GridDiagram {
    grid(&[0, 1], &[1, 0])
}

pub fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn rec(n: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n as u8 {
            if !cur.contains(&v) {
                cur.push(v);
                rec(n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// Every legal size-`n` grid, by brute force over permutation pairs.
pub fn all_grids(n: usize) -> Vec<GridDiagram> {
    let perms = permutations(n);
    let mut out = Vec::new();
    for x in &perms {
        for o in &perms {
            if x.iter().zip(o).all(|(a, b)| a != b) {
                out.push(grid(x, o));
            }
        }
    }
    out
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_grid(rng: &mut StdRng, n: usize) -> GridDiagram {
    let mut x: Vec<u8> = (0..n as u8).collect();
    let mut o = x.clone();
    x.shuffle(rng);
    loop {
        o.shuffle(rng);
        if x.iter().zip(&o).all(|(a, b)| a != b) {
            return grid(&x, &o);
        }
    }
}

pub fn random_knot(rng: &mut StdRng, n: usize) -> GridDiagram {
    loop {
        let g = random_grid(rng, n);
        if components(&g) == 1 {
            return g;
        }
    }
}

/// Components by walking X -> O along rows and O -> X along columns.
pub fn components(g: &GridDiagram) -> usize {
    let n = g.size();
    let (x, o) = (g.x_cols(), g.o_cols());
    let mut seen = vec![false; n];
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut r = start;
        while !seen[r] {
            seen[r] = true;
            // Along row r to its O, then down/up column o[r] to that column's X.
            let col = o[r];
            r = (0..n).find(|&s| x[s] == col).unwrap();
        }
    }
    count
}

/// Crossings as `(row, col)` from every horizontal/vertical segment pair.
pub fn crossings(g: &GridDiagram) -> BTreeSet<(u8, u8)> {
    let n = g.size();
    let (x, o) = (g.x_cols(), g.o_cols());
    let rows_of = |c: u8| -> (u8, u8) {
        let a = (0..n).find(|&r| x[r] == c).unwrap() as u8;
        let b = (0..n).find(|&r| o[r] == c).unwrap() as u8;
        (a.min(b), a.max(b))
    };
    let mut out = BTreeSet::new();
    for r in 0..n as u8 {
        let (lo, hi) = (x[r as usize].min(o[r as usize]), x[r as usize].max(o[r as usize]));
        for c in lo + 1..hi {
            let (vlo, vhi) = rows_of(c);
            if vlo < r && r < vhi {
                out.insert((r, c));
            }
        }
    }
    out
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, i: usize) -> usize {
        if self.0[i] != i {
            let r = self.find(self.0[i]);
            self.0[i] = r;
        }
        self.0[i]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

const N: u8 = 0;
const E: u8 = 1;
const S: u8 = 2;
const W: u8 = 3;

/// Kauffman bracket `sum A^(a-b) d^(loops-1)` over all `2^c` states, with
/// `d = -A^2 - A^-2`. The A-smoothing of a vertical-over-horizontal crossing
/// joins N with E and S with W.
pub fn bracket_state_sum(g: &GridDiagram) -> LaurentPolynomial {
    let n = g.size();
    let (x, o) = (g.x_cols(), g.o_cols());
    let cross: Vec<(u8, u8)> = crossings(g).into_iter().collect();
    let mut port_ids: HashMap<(u8, u8, u8), usize> = HashMap::new();
    let mut port = |r: u8, c: u8, d: u8| {
        let k = port_ids.len();
        *port_ids.entry((r, c, d)).or_insert(k)
    };
    let mut fixed: Vec<(usize, usize)> = Vec::new();
    for r in 0..n as u8 {
        let (a, b) = (x[r as usize], o[r as usize]);
        let (lo, hi) = (a.min(b), a.max(b));
        let mut pts = vec![lo];
        pts.extend(cross.iter().filter(|p| p.0 == r).map(|p| p.1));
        pts.push(hi);
        for w in pts.windows(2) {
            fixed.push((port(r, w[0], E), port(r, w[1], W)));
        }
    }
    for c in 0..n as u8 {
        let a = (0..n).find(|&r| x[r] == c).unwrap() as u8;
        let b = (0..n).find(|&r| o[r] == c).unwrap() as u8;
        let (lo, hi) = (a.min(b), a.max(b));
        let mut pts = vec![lo];
        pts.extend(cross.iter().filter(|p| p.1 == c).map(|p| p.0));
        pts.push(hi);
        for w in pts.windows(2) {
            fixed.push((port(w[0], c, N), port(w[1], c, S)));
        }
    }
    // Corners join their horizontal and vertical arm.
    for r in 0..n as u8 {
        for c in [x[r as usize], o[r as usize]] {
            let other_c = if c == x[r as usize] {
                o[r as usize]
            } else {
                x[r as usize]
            };
            let h = if other_c > c { E } else { W };
            let other_r = (0..n).find(|&s| s as u8 != r && (x[s] == c || o[s] == c)).unwrap() as u8;
            let v = if other_r > r { N } else { S };
            fixed.push((port(r, c, h), port(r, c, v)));
        }
    }
    let cross_ports: Vec<[usize; 4]> = cross
        .iter()
        .map(|&(r, c)| [port(r, c, N), port(r, c, E), port(r, c, S), port(r, c, W)])
        .collect();
    let total = port_ids.len();
    let d = LaurentPolynomial::from_terms([(2, -1), (-2, -1)]);
    let mut sum = LaurentPolynomial::zero();
    for state in 0u32..1 << cross.len() {
        let mut dsu = Dsu((0..total).collect());
        for &(a, b) in &fixed {
            dsu.union(a, b);
        }
        let mut a_count = 0i32;
        for (i, p) in cross_ports.iter().enumerate() {
            if state & (1 << i) == 0 {
                a_count += 1;
                dsu.union(p[0], p[1]);
                dsu.union(p[2], p[3]);
            } else {
                dsu.union(p[0], p[3]);
                dsu.union(p[2], p[1]);
            }
        }
        let loops = (0..total).filter(|&i| dsu.find(i) == i).count();
        let b_count = cross.len() as i32 - a_count;
        let mut term = LaurentPolynomial::monomial(1, a_count - b_count);
        for _ in 1..loops {
            term = &term * &d;
        }
        sum += &term;
    }
    sum
}

/// Jones polynomial from the state sum, `t = A^-4`, writhe from crossing
/// signs worked out here.
pub fn jones_state_sum(g: &GridDiagram) -> LaurentPolynomial {
    let n = g.size();
    let (x, o) = (g.x_cols(), g.o_cols());
    let mut w = 0i32;
    for (r, c) in crossings(g) {
        // Horizontal runs X -> O, vertical runs O -> X.
        let h = if o[r as usize] > x[r as usize] { 1 } else { -1 };
        let xr = (0..n).find(|&s| x[s] == c).unwrap();
        let or = (0..n).find(|&s| o[s] == c).unwrap();
        let v = if xr > or { 1 } else { -1 };
        // Vertical over: sign is +1 when (over, under) is a right-handed pair.
        w += if h * v < 0 { 1 } else { -1 };
    }
    let b = bracket_state_sum(g);
    let mut v = LaurentPolynomial::zero();
    for (e, c) in b.terms() {
        let e2 = e - 3 * w;
        assert_eq!(e2 % 4, 0, "non-integral exponent");
        let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
        v.add_term(-e2 / 4, sign * c);
    }
    v
}

/// Cube markings for level assignment `levels`, built from scratch: the
/// X-bend in row `r` sits at height `levels[r]`, and the X marking of column
/// `c` shares the height of the bend whose X is in that column.
pub fn oracle_markings(g: &GridDiagram, levels: &[u8]) -> Vec<CubeMarking> {
    let n = g.size();
    let (x, o) = (g.x_cols(), g.o_cols());
    let mut out = Vec::new();
    for r in 0..n {
        out.push(CubeMarking {
            kind: MarkType::Z,
            pos: [x[r], r as u8, levels[r]],
        });
        out.push(CubeMarking {
            kind: MarkType::Y,
            pos: [o[r], r as u8, levels[r]],
        });
    }
    for c in 0..n as u8 {
        let xrow = (0..n).find(|&r| x[r] == c).unwrap();
        let orow = (0..n).find(|&r| o[r] == c).unwrap() as u8;
        out.push(CubeMarking {
            kind: MarkType::X,
            pos: [c, orow, levels[xrow]],
        });
    }
    out
}

/// Whether any bijection of rows to heights gives a valid cube.
pub fn lift_by_bijections(g: &GridDiagram) -> Option<Vec<u8>> {
    permutations(g.size())
        .into_iter()
        .find(|l| CubeDiagram::validate(g.size(), oracle_markings(g, l)).is_ok())
}
