//! Kauffman bracket by a left-to-right sweep over grid columns.
//!
//! The state at each vertical cut is a non-crossing perfect matching of the
//! strands crossing the cut (how the left part of a smoothed diagram connects
//! them), weighted by a polynomial in `A`. The vertical segment of a column is
//! slid through the cut from its lower to its upper marking. Passing an
//! active row is one crossing, resolved as
//! `A^-1 * identity + A * cup-cap`, since the A-smoothing of a
//! vertical-over-horizontal crossing joins the NE and SW ends pairwise.

use std::collections::HashMap;

use super::LaurentPolynomial;
use crate::grid::{GridDiagram, MAX_N};

/// Up to `MAX_N + 1` points live on a cut; each partner index takes a nibble.
type Matching = u64;

const MOVING: u8 = u8::MAX;

#[inline]
fn partner(m: Matching, i: usize) -> usize {
    ((m >> (4 * i)) & 0xF) as usize
}

#[inline]
fn set_partner(m: &mut Matching, i: usize, p: usize) {
    *m = (*m & !(0xF << (4 * i))) | ((p as u64) << (4 * i));
}

/// Removes positions `i` and `i + 1`, re-indexing the rest.
fn remove_pair(m: Matching, k: usize, i: usize) -> Matching {
    let mut out = 0;
    let mut j = 0;
    for a in 0..k {
        if a == i || a == i + 1 {
            continue;
        }
        let mut p = partner(m, a);
        if p > i + 1 {
            p -= 2;
        }
        set_partner(&mut out, j, p);
        j += 1;
    }
    out
}

/// Inserts a matched pair at positions `i`, `i + 1`.
fn insert_pair(m: Matching, k: usize, i: usize) -> Matching {
    let mut out = 0;
    for a in 0..k {
        let mut p = partner(m, a);
        if p >= i {
            p += 2;
        }
        let na = if a >= i { a + 2 } else { a };
        set_partner(&mut out, na, p);
    }
    set_partner(&mut out, i, i + 1);
    set_partner(&mut out, i + 1, i);
    out
}

/// Joins the strands at positions `i`, `i + 1` from the left. Returns the
/// new matching on `k - 2` points and whether a closed loop was formed.
fn contract(m: Matching, k: usize, i: usize) -> (Matching, bool) {
    let p = partner(m, i);
    if p == i + 1 {
        return (remove_pair(m, k, i), true);
    }
    let q = partner(m, i + 1);
    let mut joined = m;
    set_partner(&mut joined, p, q);
    set_partner(&mut joined, q, p);
    (remove_pair(joined, k, i), false)
}

/// Dense Laurent polynomial used inside the sweep.
#[derive(Clone, Debug, Default)]
struct Dense {
    lo: i32,
    c: Vec<i64>,
}

impl Dense {
    fn one() -> Self {
        Dense { lo: 0, c: vec![1] }
    }

    /// `self += other * A^shift`.
    fn add_shifted(&mut self, other: &Dense, shift: i32) {
        if other.c.is_empty() {
            return;
        }
        let olo = other.lo + shift;
        let ohi = olo + other.c.len() as i32;
        if self.c.is_empty() {
            self.lo = olo;
            self.c = other.c.clone();
            return;
        }
        let lo = self.lo.min(olo);
        let hi = (self.lo + self.c.len() as i32).max(ohi);
        if lo < self.lo || hi > self.lo + self.c.len() as i32 {
            let mut c = vec![0; (hi - lo) as usize];
            let off = (self.lo - lo) as usize;
            c[off..off + self.c.len()].copy_from_slice(&self.c);
            self.c = c;
            self.lo = lo;
        }
        let off = (olo - self.lo) as usize;
        for (dst, src) in self.c[off..].iter_mut().zip(&other.c) {
            *dst += src;
        }
    }

    fn shifted(&self, shift: i32) -> Dense {
        Dense {
            lo: self.lo + shift,
            c: self.c.clone(),
        }
    }

    /// Multiplies by the loop value `-A^2 - A^-2`.
    fn times_loop(&self) -> Dense {
        let mut c = vec![0; self.c.len() + 4];
        for (i, &v) in self.c.iter().enumerate() {
            c[i] -= v;
            c[i + 4] -= v;
        }
        Dense { lo: self.lo - 2, c }
    }

    fn into_poly(self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(self.c.into_iter().enumerate().map(|(i, v)| (self.lo + i as i32, v)))
    }
}

type States = HashMap<Matching, Dense>;

fn accumulate(states: &mut States, key: Matching, p: Dense) {
    match states.get_mut(&key) {
        Some(q) => q.add_shifted(&p, 0),
        None => {
            states.insert(key, p);
        }
    }
}

/// The sum over all smoothings of `A^(#A - #B) * d^(#loops)`, with no
/// normalisation.
fn unnormalised_bracket(g: &GridDiagram) -> LaurentPolynomial {
    let n = g.size();
    let (x, o) = (g.x_cols(), g.o_cols());
    let (xr, or) = (g.x_rows(), g.o_rows());

    let mut labels: Vec<u8> = Vec::with_capacity(MAX_N + 2);
    let mut states: States = HashMap::new();
    states.insert(0, Dense::one());

    for c in 0..n {
        let (lo, hi) = {
            let (a, b) = (xr[c], or[c]);
            (a.min(b) as usize, a.max(b) as usize)
        };
        let other_col = |r: usize| if x[r] as usize == c { o[r] } else { x[r] } as usize;

        // Lower corner.
        let mut pos = labels.iter().position(|&l| l as usize >= lo).unwrap_or(labels.len());
        if other_col(lo) < c {
            debug_assert_eq!(labels[pos] as usize, lo);
            labels[pos] = MOVING;
        } else {
            let k = labels.len();
            states = states.into_iter().map(|(m, p)| (insert_pair(m, k, pos), p)).collect();
            labels.insert(pos, MOVING);
            labels.insert(pos, lo as u8);
            pos += 1;
        }

        // Crossings with the rows strictly between.
        while pos + 1 < labels.len() && (labels[pos + 1] as usize) < hi {
            let k = labels.len();
            let mut next: States = HashMap::with_capacity(states.len() * 2);
            for (m, p) in states {
                let (joined, closed) = contract(m, k, pos);
                let e = insert_pair(joined, k - 2, pos);
                let q = if closed { p.times_loop() } else { p.shifted(0) };
                accumulate(&mut next, e, q.shifted(1));
                accumulate(&mut next, m, p.shifted(-1));
            }
            states = next;
            labels.swap(pos, pos + 1);
            pos += 1;
        }

        // Upper corner.
        if other_col(hi) < c {
            debug_assert_eq!(labels[pos + 1] as usize, hi);
            let k = labels.len();
            let mut next: States = HashMap::with_capacity(states.len());
            for (m, p) in states {
                let (joined, closed) = contract(m, k, pos);
                accumulate(&mut next, joined, if closed { p.times_loop() } else { p });
            }
            states = next;
            labels.drain(pos..pos + 2);
        } else {
            labels[pos] = hi as u8;
        }
    }
    debug_assert!(labels.is_empty());
    states.remove(&0).map(Dense::into_poly).unwrap_or_default()
}

/// The Kauffman bracket in the variable `A`, normalised so that a crossingless
/// circle has bracket 1.
pub fn kauffman_bracket(g: &GridDiagram) -> LaurentPolynomial {
    let loop_value = LaurentPolynomial::from_terms([(2, -1), (-2, -1)]);
    unnormalised_bracket(g)
        .div_exact(&loop_value)
        .expect("every state of a closed diagram has at least one loop")
}
