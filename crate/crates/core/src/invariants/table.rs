//! Knot identification by Jones fingerprint.

use std::collections::HashMap;
use std::fmt;

use sha2::{Digest, Sha256};

use super::{jones, InvariantError, LaurentPolynomial};
use crate::grid::GridDiagram;

/// The bundled table. Its fingerprints are the Jones polynomials of
/// [`reference_grids`]; arc indices and cube numbers come from exhaustive
/// surveys up to size 7.
pub const BUNDLED_TABLE: &str = include_str!("../../data/knots.txt");

/// Bounds on a size-like quantity; exact when `lo == hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bound {
    pub lo: u32,
    pub hi: Option<u32>,
}

impl Bound {
    pub fn exact(v: u32) -> Self {
        Bound { lo: v, hi: Some(v) }
    }

    pub fn at_least(v: u32) -> Self {
        Bound { lo: v, hi: None }
    }

    pub fn value(&self) -> Option<u32> {
        match self.hi {
            Some(h) if h == self.lo => Some(h),
            _ => None,
        }
    }

    fn parse(s: &str) -> Option<Bound> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix(">=") {
            return rest.trim().parse().ok().map(Bound::at_least);
        }
        if let Some((a, b)) = s.split_once("..") {
            let (lo, hi) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
            return (lo <= hi).then_some(Bound { lo, hi: Some(hi) });
        }
        s.parse().ok().map(Bound::exact)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) if h == self.lo => write!(f, "{h}"),
            Some(h) => write!(f, "{}..{h}", self.lo),
            None => write!(f, ">={}", self.lo),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: String,
    pub jones: LaurentPolynomial,
    /// Arc index.
    pub alpha: Bound,
    /// Cube number, when recorded.
    pub cube: Option<Bound>,
}

impl KnotRecord {
    pub fn fingerprint(&self) -> String {
        self.jones.fingerprint_text()
    }

    pub fn fingerprint_id(&self) -> String {
        fingerprint_id(&self.jones)
    }

    pub fn to_line(&self) -> String {
        let mut s = format!("{}; {}; {}", self.name, self.alpha, self.fingerprint());
        if let Some(c) = self.cube {
            s.push_str(&format!("; {c}"));
        }
        s
    }
}

/// First 12 hex digits of the SHA-256 of the fingerprint text.
pub fn fingerprint_id(v: &LaurentPolynomial) -> String {
    let digest = Sha256::digest(v.fingerprint_text().as_bytes());
    digest.iter().take(6).map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, Default)]
pub struct KnotTable {
    records: Vec<KnotRecord>,
    by_fingerprint: HashMap<LaurentPolynomial, usize>,
}

impl KnotTable {
    pub fn bundled() -> &'static KnotTable {
        use std::sync::OnceLock;
        static TABLE: OnceLock<KnotTable> = OnceLock::new();
        TABLE.get_or_init(|| KnotTable::parse(BUNDLED_TABLE).expect("bundled knot table is well formed"))
    }

    pub fn from_records(records: Vec<KnotRecord>) -> Result<Self, InvariantError> {
        let mut by_fingerprint = HashMap::new();
        for (i, r) in records.iter().enumerate() {
            if let Some(&j) = by_fingerprint.get(&r.jones) {
                let first: &KnotRecord = &records[j];
                return Err(InvariantError::AmbiguousFingerprint(first.name.clone(), r.name.clone()));
            }
            by_fingerprint.insert(r.jones.clone(), i);
        }
        Ok(KnotTable {
            records,
            by_fingerprint,
        })
    }

    /// Lines are `name; alpha; e:c,e:c,...` with an optional fourth
    /// `; cube` field. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, InvariantError> {
        let mut records = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| InvariantError::TableSyntax {
                line: i + 1,
                msg: msg.to_string(),
            };
            let fields: Vec<&str> = line.split(';').map(str::trim).collect();
            if !(3..=4).contains(&fields.len()) {
                return Err(err("expected 3 or 4 ';'-separated fields"));
            }
            if fields[0].is_empty() {
                return Err(err("empty name"));
            }
            let alpha = Bound::parse(fields[1]).ok_or_else(|| err("bad arc index"))?;
            let jones = LaurentPolynomial::parse_fingerprint(fields[2]).ok_or_else(|| err("bad fingerprint"))?;
            let cube = match fields.get(3) {
                Some(c) => Some(Bound::parse(c).ok_or_else(|| err("bad cube number"))?),
                None => None,
            };
            records.push(KnotRecord {
                name: fields[0].to_string(),
                jones,
                alpha,
                cube,
            });
        }
        Self::from_records(records)
    }

    pub fn records(&self) -> &[KnotRecord] {
        &self.records
    }

    pub fn get(&self, name: &str) -> Option<&KnotRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn lookup(&self, v: &LaurentPolynomial) -> Option<&KnotRecord> {
        self.by_fingerprint.get(v).map(|&i| &self.records[i])
    }

    pub fn to_text(&self) -> String {
        self.records.iter().map(|r| r.to_line() + "\n").collect()
    }
}

/// The matching record, or `None` for a knot outside the table.
pub fn identify<'t>(g: &GridDiagram, table: &'t KnotTable) -> Result<Option<&'t KnotRecord>, InvariantError> {
    let c = g.component_count();
    if c != 1 {
        return Err(InvariantError::NotAKnot(c));
    }
    Ok(table.lookup(&jones(g)?))
}

/// Reference grids from which the bundled fingerprints are computed.
pub fn reference_grids() -> Vec<(String, GridDiagram)> {
    fn diag(n: usize, shift: usize) -> GridDiagram {
        let x: Vec<u8> = (0..n as u8).collect();
        let o: Vec<u8> = (0..n).map(|r| ((r + shift) % n) as u8).collect();
        GridDiagram::new(n, &x, &o).expect("diagonal torus grid")
    }
    let g = |n: usize, x: &[u8], o: &[u8]| GridDiagram::new(n, x, o).expect("reference grid");
    let fig8 = g(6, &[0, 1, 3, 2, 5, 4], &[2, 5, 0, 4, 3, 1]);
    let twist5 = g(7, &[0, 1, 2, 3, 4, 6, 5], &[2, 4, 6, 5, 0, 3, 1]);
    let mut out = vec![("unknot".to_string(), diag(2, 1))];
    for (name, n, s) in [
        ("3_1", 5, 2),
        ("5_1", 7, 2),
        ("7_1", 9, 2),
        ("8_19", 7, 3),
        ("10_124", 8, 3),
    ] {
        let left = diag(n, s);
        out.push((format!("{name}L"), left));
        out.push((format!("{name}R"), left.mirror()));
    }
    out.push(("4_1".to_string(), fig8));
    out.push(("5_2".to_string(), twist5));
    out.push(("m5_2".to_string(), twist5.mirror()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_parses_and_is_unambiguous() {
        let t = KnotTable::bundled();
        assert_eq!(t.records().len(), 14);
        assert_eq!(KnotTable::parse(&t.to_text()).unwrap().records(), t.records());
    }

    #[test]
    fn bundled_fingerprints_match_reference_grids() {
        let t = KnotTable::bundled();
        for (name, g) in reference_grids() {
            let rec = t.get(&name).unwrap_or_else(|| panic!("{name} missing"));
            assert_eq!(rec.jones, jones(&g).unwrap(), "{name}");
            assert!(rec.alpha.lo as usize <= g.size());
            assert!(rec.alpha.hi.is_some_and(|h| h as usize <= g.size()) || rec.alpha.hi.is_none());
        }
    }

    #[test]
    fn ambiguous_table_rejected() {
        let text = "a; 2; 0:1\nb; 2; 0:1\n";
        assert_eq!(
            KnotTable::parse(text).unwrap_err(),
            InvariantError::AmbiguousFingerprint("a".into(), "b".into())
        );
        assert!(matches!(
            KnotTable::parse("a; x; 0:1"),
            Err(InvariantError::TableSyntax { line: 1, .. })
        ));
    }

    #[test]
    fn bounds() {
        for s in ["5", ">=8", "8..9"] {
            assert_eq!(Bound::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(Bound::parse("9..8"), None);
    }

    #[test]
    fn identify_rejects_links() {
        let split = GridDiagram::new(4, &[0, 1, 2, 3], &[1, 0, 3, 2]).unwrap();
        assert_eq!(identify(&split, KnotTable::bundled()), Err(InvariantError::NotAKnot(2)));
    }
}
