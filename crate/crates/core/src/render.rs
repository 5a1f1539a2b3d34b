//! Text and SVG pictures of grids, fronts and cubes.
//!
//! Grids print top row first. A vertical strand passing a horizontal one is
//! drawn as `-|-`, since verticals are always over. Fronts are the grid
//! turned 45 degrees counterclockwise: NW and SE corners become the cusps
//! `<` and `>`, NE and SW corners the smooth extremes `^` and `v`.

use std::fmt::Write;

use crate::cube::{Axis, CubeDiagram, MarkType};
use crate::grid::{Axis2, GridDiagram};
use crate::invariants::{corners, Corner};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Ascii,
    Svg,
}

pub fn grid(g: &GridDiagram, fmt: Format) -> String {
    match fmt {
        Format::Ascii => grid_ascii(g),
        Format::Svg => grid_svg(g),
    }
}

pub fn front(g: &GridDiagram, fmt: Format) -> String {
    match fmt {
        Format::Ascii => front_ascii(g),
        Format::Svg => front_svg(g),
    }
}

pub fn cube(c: &CubeDiagram, fmt: Format) -> String {
    match fmt {
        Format::Ascii => cube_ascii(c),
        Format::Svg => cube_svg(c),
    }
}

type Span = (u8, u8);

/// Horizontal span `(lo, hi)` of each row and vertical span of each column.
fn spans(g: &GridDiagram) -> (Vec<Span>, Vec<Span>) {
    let n = g.size();
    let mut rows = vec![(0, 0); n];
    let mut cols = vec![(0, 0); n];
    for s in g.segments() {
        match s.axis {
            Axis2::Horizontal => rows[s.fixed as usize] = (s.lo(), s.hi()),
            Axis2::Vertical => cols[s.fixed as usize] = (s.lo(), s.hi()),
        }
    }
    (rows, cols)
}

fn inside(v: usize, (lo, hi): Span) -> bool {
    lo as usize <= v && v <= hi as usize
}

fn grid_ascii(g: &GridDiagram) -> String {
    let n = g.size();
    let (x, o) = (g.x_cols(), g.o_cols());
    let (rows, cols) = spans(g);
    let mut out = String::new();
    for r in (0..n).rev() {
        for c in 0..n {
            if c > 0 {
                let joined = inside(c - 1, rows[r]) && inside(c, rows[r]);
                out.push(if joined { '-' } else { ' ' });
            }
            let ch = if x[r] as usize == c {
                'X'
            } else if o[r] as usize == c {
                'O'
            } else if inside(r, cols[c]) {
                '|'
            } else if inside(c, rows[r]) {
                '-'
            } else {
                '.'
            };
            out.push(ch);
        }
        out.push('\n');
    }
    out
}

const CELL: usize = 40;

fn svg_open(w: usize, h: usize) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    )
}

fn grid_svg(g: &GridDiagram) -> String {
    let n = g.size();
    let side = CELL * n;
    // Cell centre, row 0 at the bottom.
    let cx = |c: u8| CELL * c as usize + CELL / 2;
    let cy = |r: u8| side - CELL * r as usize - CELL / 2;
    let mut s = svg_open(side, side);
    s.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{side}\" height=\"{side}\" fill=\"white\" stroke=\"#888\"/>\n"
    ));
    let segs = g.segments();
    for seg in segs.iter().filter(|s| s.axis == Axis2::Horizontal) {
        let _ = writeln!(
            s,
            "<line class=\"h\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"2\"/>",
            cx(seg.lo()),
            cy(seg.fixed),
            cx(seg.hi()),
            cy(seg.fixed)
        );
    }
    // White casing breaks the horizontal strand under each vertical.
    for seg in segs.iter().filter(|s| s.axis == Axis2::Vertical) {
        let (x, y1, y2) = (cx(seg.fixed), cy(seg.hi()), cy(seg.lo()));
        let _ = writeln!(
            s,
            "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"white\" stroke-width=\"8\"/>",
            y1 + 10,
            y2 - 10
        );
        let _ = writeln!(
            s,
            "<line class=\"v\" x1=\"{x}\" y1=\"{y1}\" x2=\"{x}\" y2=\"{y2}\" stroke=\"black\" stroke-width=\"2\"/>"
        );
    }
    for r in 0..n as u8 {
        for (label, c) in [("X", g.x_cols()[r as usize]), ("O", g.o_cols()[r as usize])] {
            let _ = writeln!(
                s,
                "<text x=\"{}\" y=\"{}\" font-size=\"20\" text-anchor=\"middle\" dominant-baseline=\"central\">{label}</text>",
                cx(c),
                cy(r)
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Front canvas position of grid point `(row, col)`.
fn front_pos(n: usize, r: u8, c: u8) -> (usize, usize) {
    (c as usize + n - 1 - r as usize, c as usize + r as usize)
}

fn corner_char(k: Corner) -> char {
    match k {
        Corner::NorthWest => '<',
        Corner::SouthEast => '>',
        Corner::NorthEast => '^',
        Corner::SouthWest => 'v',
    }
}

fn front_ascii(g: &GridDiagram) -> String {
    let n = g.size();
    let side = 2 * n - 1;
    let mut canvas = vec![vec![' '; side]; side];
    for seg in g.segments() {
        for t in seg.lo() + 1..seg.hi() {
            let (r, c, ch) = match seg.axis {
                Axis2::Horizontal => (seg.fixed, t, '/'),
                Axis2::Vertical => (t, seg.fixed, '\\'),
            };
            let (px, py) = front_pos(n, r, c);
            let cell = &mut canvas[py][px];
            *cell = if *cell == ' ' { ch } else { '+' };
        }
    }
    for k in corners(g) {
        let (px, py) = front_pos(n, k.row, k.col);
        canvas[py][px] = corner_char(k.corner);
    }
    let mut out = String::new();
    for line in canvas.iter().rev() {
        let s: String = line.iter().collect();
        out.push_str(s.trim_end());
        out.push('\n');
    }
    out
}

fn front_svg(g: &GridDiagram) -> String {
    let n = g.size();
    let step = CELL / 2;
    let side = step * (2 * n);
    let at = |r: u8, c: u8| {
        let (px, py) = front_pos(n, r, c);
        (step * px + step, side - step * py - step)
    };
    let mut s = svg_open(side, side);
    for seg in g.segments() {
        let (a, b) = match seg.axis {
            Axis2::Horizontal => (at(seg.fixed, seg.lo()), at(seg.fixed, seg.hi())),
            Axis2::Vertical => (at(seg.lo(), seg.fixed), at(seg.hi(), seg.fixed)),
        };
        let _ = writeln!(
            s,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"2\"/>",
            a.0, a.1, b.0, b.1
        );
    }
    for k in corners(g).into_iter().filter(|k| k.corner.is_cusp()) {
        let (x, y) = at(k.row, k.col);
        let class = if k.corner == Corner::NorthWest {
            "cusp-left"
        } else {
            "cusp-right"
        };
        let _ = writeln!(
            s,
            "<circle class=\"{class}\" cx=\"{x}\" cy=\"{y}\" r=\"4\" fill=\"red\"/>"
        );
    }
    s.push_str("</svg>\n");
    s
}

/// One `z` slice per block, bottom level first, rows printed top first.
fn cube_ascii(c: &CubeDiagram) -> String {
    let n = c.size();
    let mut slabs = vec![vec![vec!['.'; n]; n]; n];
    for m in c.markings() {
        let [x, y, z] = m.pos.map(usize::from);
        slabs[z][y][x] = match m.kind {
            MarkType::X => 'X',
            MarkType::Y => 'Y',
            MarkType::Z => 'Z',
        };
    }
    let mut out = String::new();
    for (z, slab) in slabs.iter().enumerate() {
        let _ = writeln!(out, "z={z}");
        for row in slab.iter().rev() {
            let line: Vec<String> = row.iter().map(char::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    }
    out
}

fn cube_svg(c: &CubeDiagram) -> String {
    let n = c.size() as f64;
    let scale = CELL as f64;
    let (cos30, sin30) = (3f64.sqrt() / 2.0, 0.5);
    let half = n * scale * cos30;
    let top = (n + 0.5) * scale;
    // Isometric view with z up; cell centres sit at half-integer offsets.
    let iso = |p: [f64; 3]| {
        let (x, y, z) = (p[0] * scale, p[1] * scale, p[2] * scale);
        (half + (x - y) * cos30 + scale, top + (x + y) * sin30 - z)
    };
    let w = (2.0 * half + 2.0 * scale).ceil() as usize;
    let h = (top + n * scale + scale).ceil() as usize;
    let mut s = svg_open(w, h);
    let box_corners = |i: usize| [(i & 1) as f64 * n, (i >> 1 & 1) as f64 * n, (i >> 2 & 1) as f64 * n];
    for a in 0..8usize {
        for bit in [1, 2, 4] {
            let b = a | bit;
            if b != a {
                let (p, q) = (iso(box_corners(a)), iso(box_corners(b)));
                let _ = writeln!(
                    s,
                    "<line class=\"box\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#bbb\" stroke-width=\"1\"/>",
                    p.0, p.1, q.0, q.1
                );
            }
        }
    }
    let centre = |p: [u8; 3]| p.map(|v| v as f64 + 0.5);
    for comp in c.knot().components {
        for e in comp {
            let (p, q) = (iso(centre(e.from)), iso(centre(e.to)));
            let colour = match e.axis {
                Axis::X => "#c0392b",
                Axis::Y => "#27ae60",
                Axis::Z => "#2c3e50",
            };
            let _ = writeln!(
                s,
                "<line class=\"edge\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{colour}\" stroke-width=\"2\"/>",
                p.0, p.1, q.0, q.1
            );
        }
    }
    for m in c.markings() {
        let (x, y) = iso(centre(m.pos));
        let _ = writeln!(
            s,
            "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"12\" text-anchor=\"middle\">{:?}</text>",
            m.kind
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_ascii() {
        let u = GridDiagram::new(2, &[0, 1], &[1, 0]).unwrap();
        assert_eq!(grid(&u, Format::Ascii), "O-X\nX-O\n");
    }

    #[test]
    fn trefoil_front_has_cusps() {
        let g = GridDiagram::new(5, &[3, 4, 0, 1, 2], &[0, 1, 2, 3, 4]).unwrap();
        let f = front(&g, Format::Ascii);
        assert_eq!(f.matches('<').count(), f.matches('>').count());
        assert!(f.contains('<'));
    }
}
