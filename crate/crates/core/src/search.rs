//! Exhaustive enumeration of grid diagrams: generate, filter, lift,
//! identify.
//!
//! The space of size-`n` grids is walked by X permutation in lexicographic
//! order; for each one every O permutation avoiding it is generated by
//! backtracking, also in lexicographic order. A shard fixes a prefix of the
//! X permutation. Work is split over X permutations, and per-X results are
//! merged with an order-independent merge, so statistics and witnesses do not
//! depend on thread count or scheduling.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::cube::{lift, CubeDiagram, LiftConstraints};
use crate::grid::{GridDiagram, MAX_N};
use crate::invariants::{fingerprint_id, jones, KnotTable, LaurentPolynomial};
use crate::obstruction::{filter_kind, VerdictKind};

pub const CHECKPOINT_HEADER: &str = "CNSV1";
pub const THREADS_ENV: &str = "CUBIK_THREADS";

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("checkpoint I/O: {0}")]
    Io(#[from] io::Error),
    #[error("checkpoint line {line}: {msg}")]
    Checkpoint { line: usize, msg: String },
    #[error("checkpoint does not match this run: {0}")]
    Mismatch(String),
    #[error("grid size {0} outside 2..={MAX_N}")]
    BadSize(usize),
}

/// When to compute the Jones polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JonesMode {
    /// Only for grids that lift.
    Lifted,
    /// For every grid that reaches the lift stage.
    Candidates,
    /// For every knot grid.
    All,
}

impl JonesMode {
    fn name(self) -> &'static str {
        match self {
            JonesMode::Lifted => "lifted",
            JonesMode::Candidates => "candidates",
            JonesMode::All => "all",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "lifted" => Some(JonesMode::Lifted),
            "candidates" => Some(JonesMode::Candidates),
            "all" => Some(JonesMode::All),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumSpec {
    pub n: usize,
    /// Skip multi-component grids after counting them.
    pub knots_only: bool,
    /// Run the obstruction filters before lifting.
    pub filters: bool,
    pub jones: JonesMode,
    /// Fixed leading entries of `x_cols`.
    pub shard: Vec<u8>,
    /// First X-permutation rank (within the shard) to process.
    pub start_rank: u64,
    /// Run `lift` on every `k`-th filtered grid to confirm the filter's
    /// verdict.
    pub audit_every: Option<u64>,
}

impl EnumSpec {
    pub fn new(n: usize) -> Self {
        EnumSpec {
            n,
            knots_only: true,
            filters: true,
            jones: JonesMode::Lifted,
            shard: Vec::new(),
            start_rank: 0,
            audit_every: None,
        }
    }

    pub fn with_shard(mut self, shard: Vec<u8>) -> Self {
        self.shard = shard;
        self
    }

    pub fn shard_key(&self) -> String {
        if self.shard.is_empty() {
            "-".to_string()
        } else {
            join(&self.shard, ",")
        }
    }
}

/// Counts for grids of one knot type.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnotStats {
    /// Grids fingerprinted with this polynomial.
    pub grids: u64,
    pub lifted: u64,
    /// Least lifting grid.
    pub witness: Option<GridDiagram>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stats {
    pub visited: u64,
    pub knots: u64,
    /// Indexed like [`VerdictKind::ALL`]; only filled when filters run.
    pub verdicts: [u64; 4],
    pub lifted: u64,
    pub audited: u64,
    pub audit_violations: u64,
    pub per_knot: BTreeMap<LaurentPolynomial, KnotStats>,
}

impl Stats {
    pub fn merge(&mut self, other: Stats) {
        self.visited += other.visited;
        self.knots += other.knots;
        for (a, b) in self.verdicts.iter_mut().zip(other.verdicts) {
            *a += b;
        }
        self.lifted += other.lifted;
        self.audited += other.audited;
        self.audit_violations += other.audit_violations;
        for (k, v) in other.per_knot {
            let e = self.per_knot.entry(k).or_default();
            e.grids += v.grids;
            e.lifted += v.lifted;
            e.witness = match (e.witness, v.witness) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
        }
    }

    pub fn verdict(&self, v: VerdictKind) -> u64 {
        self.verdicts[v as usize]
    }
}

/// One processed grid, as seen by a [`Sink`].
#[derive(Debug, Clone, Copy)]
pub struct Visit<'a> {
    pub grid: &'a GridDiagram,
    pub is_knot: bool,
    pub verdict: Option<VerdictKind>,
    pub lifted: bool,
    pub jones: Option<&'a LaurentPolynomial>,
}

/// Per-worker accumulator. `merge` must not depend on argument order, or
/// parallel runs lose determinism.
pub trait Sink: Send + Sized {
    fn visit(&mut self, v: &Visit);
    fn merge(&mut self, other: Self);
}

impl Sink for () {
    fn visit(&mut self, _: &Visit) {}
    fn merge(&mut self, _: Self) {}
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Thread count: explicit, else `CUBIK_THREADS`, else all cores.
    Parallel(Option<usize>),
}

impl Exec {
    pub fn threads(self) -> usize {
        match self {
            Exec::Sequential => 1,
            Exec::Parallel(t) => t
                .or_else(|| std::env::var(THREADS_ENV).ok()?.parse().ok())
                .filter(|&t| t > 0)
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        }
    }
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel(None)
        } else {
            Exec::Sequential
        }
    }
}

/// Result of one enumeration call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Progress {
    pub stats: Stats,
    /// Rank of the next unprocessed X permutation.
    pub next_rank: u64,
    pub total_ranks: u64,
    /// X permutations processed by this call, excluding resumed work.
    pub processed: u64,
}

impl Progress {
    pub fn complete(&self) -> bool {
        self.next_rank >= self.total_ranks
    }
}

/// X permutations with the given prefix, in lexicographic order.
pub fn x_permutations(n: usize, prefix: &[u8]) -> Vec<[u8; MAX_N]> {
    let mut used = 0u32;
    for &p in prefix {
        if p as usize >= n || used & (1 << p) != 0 {
            return Vec::new();
        }
        used |= 1 << p;
    }
    let mut cur = [0u8; MAX_N];
    cur[..prefix.len()].copy_from_slice(prefix);
    let rest: Vec<u8> = (0..n as u8).filter(|v| used & (1 << v) == 0).collect();
    cur[prefix.len()..n].copy_from_slice(&rest);
    let mut out = Vec::new();
    loop {
        out.push(cur);
        if !next_permutation(&mut cur[prefix.len()..n]) {
            break;
        }
    }
    out
}

fn next_permutation(p: &mut [u8]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Calls `f` on every O permutation with `o[r] != x[r]`, in lexicographic
/// order.
pub fn for_each_o(n: usize, x: &[u8], mut f: impl FnMut(&[u8])) {
    fn rec(n: usize, x: &[u8], row: usize, used: u32, o: &mut [u8; MAX_N], f: &mut impl FnMut(&[u8])) {
        if row == n {
            f(&o[..n]);
            return;
        }
        for c in 0..n as u8 {
            if used & (1 << c) == 0 && c != x[row] {
                o[row] = c;
                rec(n, x, row + 1, used | (1 << c), o, f);
            }
        }
    }
    let mut o = [0u8; MAX_N];
    rec(n, x, 0, 0, &mut o, &mut f);
}

/// Jones polynomials cached by torus-translation class.
#[derive(Default)]
struct JonesCache {
    map: HashMap<GridDiagram, LaurentPolynomial>,
}

impl JonesCache {
    const LIMIT: usize = 1 << 16;

    fn get(&mut self, g: &GridDiagram) -> LaurentPolynomial {
        let n = g.size();
        let mut key = *g;
        for dr in 0..n {
            for dc in 0..n {
                key = key.min(g.translate(dr, dc));
            }
        }
        if let Some(v) = self.map.get(&key) {
            return v.clone();
        }
        let v = jones(g).expect("knot grids have integral Jones exponents");
        if self.map.len() >= Self::LIMIT {
            self.map.clear();
        }
        self.map.insert(key, v.clone());
        v
    }
}

struct Worker<S> {
    stats: Stats,
    sink: S,
    cache: JonesCache,
}

impl<S: Sink> Worker<S> {
    fn new(sink: S) -> Self {
        Worker {
            stats: Stats::default(),
            sink,
            cache: JonesCache::default(),
        }
    }

    fn process_x(&mut self, spec: &EnumSpec, x: &[u8]) {
        let n = spec.n;
        let mut local = 0u64;
        for_each_o(n, x, |o| {
            self.stats.visited += 1;
            let g = GridDiagram::from_parts_unchecked(n, x, o);
            let is_knot = g.is_knot();
            if !is_knot {
                if !spec.knots_only {
                    self.sink.visit(&Visit {
                        grid: &g,
                        is_knot,
                        verdict: None,
                        lifted: false,
                        jones: None,
                    });
                }
                return;
            }
            self.stats.knots += 1;
            let verdict = spec.filters.then(|| filter_kind(&g));
            if let Some(v) = verdict {
                self.stats.verdicts[v as usize] += 1;
            }
            let candidate = matches!(verdict, None | Some(VerdictKind::Candidate));
            let lifted = candidate && LiftConstraints::new(&g).feasible();
            if !candidate {
                if let Some(k) = spec.audit_every {
                    local += 1;
                    if local.is_multiple_of(k.max(1)) {
                        self.stats.audited += 1;
                        if LiftConstraints::new(&g).feasible() {
                            self.stats.audit_violations += 1;
                        }
                    }
                }
            }
            let want_jones = match spec.jones {
                JonesMode::Lifted => lifted,
                JonesMode::Candidates => candidate,
                JonesMode::All => true,
            };
            let v = want_jones.then(|| self.cache.get(&g));
            if lifted {
                self.stats.lifted += 1;
            }
            if let Some(v) = &v {
                let e = self.stats.per_knot.entry(v.clone()).or_default();
                e.grids += 1;
                if lifted {
                    e.lifted += 1;
                    if e.witness.is_none_or(|w| g < w) {
                        e.witness = Some(g);
                    }
                }
            }
            self.sink.visit(&Visit {
                grid: &g,
                is_knot,
                verdict,
                lifted,
                jones: v.as_ref(),
            });
        });
    }

    #[cfg(feature = "parallel")]
    fn merge(&mut self, other: Worker<S>) {
        self.stats.merge(other.stats);
        self.sink.merge(other.sink);
    }
}

/// Runs blocks of X permutations, on a private thread pool when parallel.
struct Runner {
    #[cfg(feature = "parallel")]
    pool: Option<rayon::ThreadPool>,
}

impl Runner {
    fn new(exec: Exec) -> Self {
        #[cfg(feature = "parallel")]
        {
            let pool = match exec {
                Exec::Sequential => None,
                Exec::Parallel(_) => Some(
                    rayon::ThreadPoolBuilder::new()
                        .num_threads(exec.threads())
                        .build()
                        .expect("thread pool"),
                ),
            };
            Runner { pool }
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = exec;
            Runner {}
        }
    }

    fn run_block<S: Sink>(
        &self,
        spec: &EnumSpec,
        xs: &[[u8; MAX_N]],
        make_sink: &(impl Fn() -> S + Sync),
    ) -> (Stats, S) {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            use rayon::prelude::*;
            let w = pool.install(|| {
                xs.par_iter()
                    .fold(
                        || Worker::new(make_sink()),
                        |mut w, x| {
                            w.process_x(spec, &x[..spec.n]);
                            w
                        },
                    )
                    .reduce(
                        || Worker::new(make_sink()),
                        |mut a, b| {
                            a.merge(b);
                            a
                        },
                    )
            });
            return (w.stats, w.sink);
        }
        let mut w = Worker::new(make_sink());
        for x in xs {
            w.process_x(spec, &x[..spec.n]);
        }
        (w.stats, w.sink)
    }
}

/// Controls for [`enumerate_grids`] beyond the spec itself.
pub type BlockCallback<'a> = &'a mut dyn FnMut(&Progress) -> Result<(), SearchError>;

#[derive(Default)]
pub struct RunControl<'a> {
    pub exec: Exec,
    /// Stop after this many X permutations.
    pub budget: Option<u64>,
    /// Called after every completed block with the progress so far.
    pub on_block: Option<BlockCallback<'a>>,
}

/// Enumerates the grids of `spec`, starting from `spec.start_rank` with
/// `initial` statistics.
pub fn enumerate_grids<S: Sink>(
    spec: &EnumSpec,
    initial: Stats,
    mut ctl: RunControl<'_>,
    make_sink: impl Fn() -> S + Sync,
) -> Result<(Progress, S), SearchError> {
    if !(2..=MAX_N).contains(&spec.n) {
        return Err(SearchError::BadSize(spec.n));
    }
    let xs = x_permutations(spec.n, &spec.shard);
    let total = xs.len() as u64;
    let threads = ctl.exec.threads();
    let mut progress = Progress {
        stats: initial,
        next_rank: spec.start_rank.min(total),
        total_ranks: total,
        processed: 0,
    };
    let mut sink = make_sink();
    let mut budget = ctl.budget.unwrap_or(u64::MAX);
    let block = match ctl.exec {
        Exec::Sequential => 1,
        Exec::Parallel(_) => (threads * 8) as u64,
    };

    let runner = Runner::new(ctl.exec);
    while progress.next_rank < total && budget > 0 {
        let len = block.min(budget).min(total - progress.next_rank);
        let lo = progress.next_rank as usize;
        let (stats, s) = runner.run_block(spec, &xs[lo..lo + len as usize], &make_sink);
        progress.stats.merge(stats);
        sink.merge(s);
        progress.next_rank += len;
        progress.processed += len;
        budget -= len;
        if let Some(cb) = ctl.on_block.as_mut() {
            cb(&progress)?;
        }
    }
    Ok((progress, sink))
}

/// Shortcut: a full unsharded run with no sink.
pub fn enumerate_all(spec: &EnumSpec, exec: Exec) -> Stats {
    let ctl = RunControl {
        exec,
        ..RunControl::default()
    };
    enumerate_grids(spec, Stats::default(), ctl, || ())
        .expect("an in-memory run cannot fail")
        .0
        .stats
}

/// Disjoint shards keyed by the first `prefix_len` entries of `x_cols`.
pub fn shard_space(n: usize, prefix_len: usize) -> Vec<EnumSpec> {
    let k = prefix_len.min(n);
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, prefix: &mut Vec<u8>, out: &mut Vec<EnumSpec>) {
        if prefix.len() == k {
            out.push(EnumSpec::new(n).with_shard(prefix.clone()));
            return;
        }
        for v in 0..n as u8 {
            if !prefix.contains(&v) {
                prefix.push(v);
                rec(n, k, prefix, out);
                prefix.pop();
            }
        }
    }
    rec(n, k, &mut prefix, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Checkpoints

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub n: usize,
    pub shard: Vec<u8>,
    pub filters: bool,
    pub jones: JonesMode,
    pub next_rank: u64,
    pub total_ranks: u64,
    pub stats: Stats,
}

impl Checkpoint {
    pub fn of(spec: &EnumSpec, p: &Progress) -> Self {
        Checkpoint {
            n: spec.n,
            shard: spec.shard.clone(),
            filters: spec.filters,
            jones: spec.jones,
            next_rank: p.next_rank,
            total_ranks: p.total_ranks,
            stats: p.stats.clone(),
        }
    }

    pub fn complete(&self) -> bool {
        self.next_rank >= self.total_ranks
    }

    pub fn to_text(&self) -> String {
        let s = &self.stats;
        let mut out = format!(
            "{CHECKPOINT_HEADER}\nn {}\nshard {}\nfilters {}\njones {}\nnext_rank {}\ntotal_ranks {}\n\
             visited {}\nknots {}\nverdicts {}\nlifted {}\naudit {} {}\n",
            self.n,
            if self.shard.is_empty() {
                "-".to_string()
            } else {
                join(&self.shard, ",")
            },
            self.filters as u8,
            self.jones.name(),
            self.next_rank,
            self.total_ranks,
            s.visited,
            s.knots,
            join(&s.verdicts, " "),
            s.lifted,
            s.audited,
            s.audit_violations,
        );
        for (v, k) in &s.per_knot {
            let w = match k.witness {
                Some(g) => format!("{};{}", join(g.x_cols(), ","), join(g.o_cols(), ",")),
                None => "-".to_string(),
            };
            out.push_str(&format!(
                "knot {} {} {} {}\n",
                v.fingerprint_text(),
                k.grids,
                k.lifted,
                w
            ));
        }
        out.push_str("end\n");
        out
    }

    pub fn parse(text: &str) -> Result<Self, SearchError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let bad = |line: usize, msg: &str| SearchError::Checkpoint {
            line,
            msg: msg.to_string(),
        };
        match lines.next() {
            Some((_, CHECKPOINT_HEADER)) => {}
            _ => return Err(bad(1, "missing CNSV1 header")),
        }
        let mut field = |name: &str| -> Result<(usize, String), SearchError> {
            let (i, l) = lines.next().ok_or_else(|| bad(0, "truncated"))?;
            let rest = l
                .strip_prefix(name)
                .and_then(|r| r.strip_prefix(' '))
                .ok_or_else(|| bad(i, &format!("expected {name}")))?;
            Ok((i, rest.to_string()))
        };
        let num = |(i, s): (usize, String)| -> Result<u64, SearchError> { s.parse().map_err(|_| bad(i, "bad number")) };
        let n = num(field("n")?)? as usize;
        let (i, shard) = field("shard")?;
        let shard = if shard == "-" {
            Vec::new()
        } else {
            parse_list(&shard, ',').ok_or_else(|| bad(i, "bad shard"))?
        };
        let filters = num(field("filters")?)? != 0;
        let (i, jm) = field("jones")?;
        let jones = JonesMode::parse(&jm).ok_or_else(|| bad(i, "bad jones mode"))?;
        let next_rank = num(field("next_rank")?)?;
        let total_ranks = num(field("total_ranks")?)?;
        let mut stats = Stats {
            visited: num(field("visited")?)?,
            knots: num(field("knots")?)?,
            ..Stats::default()
        };
        let (i, v) = field("verdicts")?;
        let v: Vec<u64> = parse_list(&v, ' ').ok_or_else(|| bad(i, "bad verdicts"))?;
        stats.verdicts = v.try_into().map_err(|_| bad(i, "expected 4 verdict counts"))?;
        stats.lifted = num(field("lifted")?)?;
        let (i, a) = field("audit")?;
        let a: Vec<u64> = parse_list(&a, ' ').ok_or_else(|| bad(i, "bad audit counts"))?;
        let [audited, violations]: [u64; 2] = a.try_into().map_err(|_| bad(i, "expected 2 audit counts"))?;
        stats.audited = audited;
        stats.audit_violations = violations;
        for (i, l) in lines.by_ref() {
            if l == "end" {
                return Ok(Checkpoint {
                    n,
                    shard,
                    filters,
                    jones,
                    next_rank,
                    total_ranks,
                    stats,
                });
            }
            let parts: Vec<&str> = l.split(' ').collect();
            let [tag, fp, grids, lifted, w] = parts[..] else {
                return Err(bad(i, "bad knot line"));
            };
            if tag != "knot" {
                return Err(bad(i, "expected knot or end"));
            }
            let v = LaurentPolynomial::parse_fingerprint(fp).ok_or_else(|| bad(i, "bad fingerprint"))?;
            let witness = if w == "-" {
                None
            } else {
                let (xs, os) = w.split_once(';').ok_or_else(|| bad(i, "bad witness"))?;
                let x: Vec<u8> = parse_list(xs, ',').ok_or_else(|| bad(i, "bad witness"))?;
                let o: Vec<u8> = parse_list(os, ',').ok_or_else(|| bad(i, "bad witness"))?;
                Some(GridDiagram::new(n, &x, &o).map_err(|e| bad(i, &e.to_string()))?)
            };
            stats.per_knot.insert(
                v,
                KnotStats {
                    grids: grids.parse().map_err(|_| bad(i, "bad count"))?,
                    lifted: lifted.parse().map_err(|_| bad(i, "bad count"))?,
                    witness,
                },
            );
        }
        Err(bad(0, "missing end line"))
    }

    pub fn load(path: &Path) -> Result<Option<Self>, SearchError> {
        match fs::read_to_string(path) {
            Ok(t) => Ok(Some(Self::parse(&t)?)),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Written to a temporary file and renamed into place.
    pub fn store(&self, path: &Path) -> Result<(), SearchError> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, self.to_text())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    fn check(&self, spec: &EnumSpec) -> Result<(), SearchError> {
        let same =
            self.n == spec.n && self.shard == spec.shard && self.filters == spec.filters && self.jones == spec.jones;
        if same {
            Ok(())
        } else {
            Err(SearchError::Mismatch(format!(
                "checkpoint is for n={} shard={} filters={} jones={}",
                self.n,
                if self.shard.is_empty() {
                    "-".into()
                } else {
                    join(&self.shard, ",")
                },
                self.filters,
                self.jones.name()
            )))
        }
    }
}

fn join<T: fmt::Display>(v: &[T], sep: &str) -> String {
    v.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(sep)
}

fn parse_list<T: std::str::FromStr>(s: &str, sep: char) -> Option<Vec<T>> {
    s.split(sep).map(|t| t.parse().ok()).collect()
}

/// Runs `spec` to completion or budget exhaustion, resuming from and
/// updating the checkpoint at `path`.
pub fn run_checkpointed(
    spec: &EnumSpec,
    exec: Exec,
    path: &Path,
    budget: Option<u64>,
) -> Result<Progress, SearchError> {
    let (start, initial) = match Checkpoint::load(path)? {
        Some(c) => {
            c.check(spec)?;
            (c.next_rank, c.stats)
        }
        None => (0, Stats::default()),
    };
    let spec = EnumSpec {
        start_rank: start,
        ..spec.clone()
    };
    let mut save = |p: &Progress| Checkpoint::of(&spec, p).store(path);
    let ctl = RunControl {
        exec,
        budget,
        on_block: Some(&mut save),
    };
    let (progress, ()) = enumerate_grids(&spec, initial, ctl, || ())?;
    Checkpoint::of(&spec, &progress).store(path)?;
    Ok(progress)
}

// ---------------------------------------------------------------------------
// Cube number survey

#[derive(Debug, Clone)]
pub struct SurveyOptions {
    pub min_n: usize,
    pub max_n: usize,
    pub filters: bool,
    pub exec: Exec,
    /// Shard each size by this many leading X entries.
    pub shard_len: usize,
    /// Directory for per-shard checkpoints.
    pub checkpoint_dir: Option<PathBuf>,
    /// Stop after this many X permutations in total.
    pub budget: Option<u64>,
}

impl SurveyOptions {
    pub fn new(max_n: usize) -> Self {
        SurveyOptions {
            min_n: 2,
            max_n,
            filters: true,
            exec: Exec::default(),
            shard_len: 0,
            checkpoint_dir: None,
            budget: None,
        }
    }
}

/// One knot type in a survey.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyResult {
    pub name: String,
    pub fingerprint_id: String,
    pub jones: LaurentPolynomial,
    /// Least size with a lifting grid, if any up to the survey's `max_n`.
    pub min_cube_size: Option<usize>,
    pub witness: Option<GridDiagram>,
    pub cube: Option<CubeDiagram>,
    /// Lifting grids per size.
    pub lifted: BTreeMap<usize, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeSummary {
    pub n: usize,
    pub stats: Stats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Survey {
    pub max_n: usize,
    pub complete: bool,
    pub sizes: Vec<SizeSummary>,
    pub results: Vec<SurveyResult>,
}

impl Survey {
    pub fn get(&self, name: &str) -> Option<&SurveyResult> {
        self.results.iter().find(|r| r.name == name)
    }

    /// `knot,fingerprint_id,min_cube_size,witness_file`. Knots that never
    /// lifted report `>max_n`.
    pub fn to_csv(&self, witness_dir: &str) -> String {
        let mut out = String::from("knot,fingerprint_id,min_cube_size,witness_file\n");
        for r in &self.results {
            let (size, file) = match r.min_cube_size {
                Some(s) => (s.to_string(), format!("{witness_dir}/{}.json", r.name)),
                None => (format!(">{}", self.max_n), String::new()),
            };
            out.push_str(&format!("{},{},{},{}\n", r.name, r.fingerprint_id, size, file));
        }
        out
    }
}

fn checkpoint_path(dir: &Path, spec: &EnumSpec) -> PathBuf {
    let key = if spec.shard.is_empty() {
        "all".to_string()
    } else {
        join(&spec.shard, "-")
    };
    dir.join(format!("n{}-{}.cnsv", spec.n, key))
}

/// Finds, for every knot that lifts at some size in `min_n..=max_n`, the
/// least such size and the least lifting grid there.
pub fn cube_number_survey(opts: &SurveyOptions, table: &KnotTable) -> Result<Survey, SearchError> {
    let mut sizes = Vec::new();
    let mut budget = opts.budget;
    let mut complete = true;
    if let Some(d) = &opts.checkpoint_dir {
        fs::create_dir_all(d)?;
    }
    for n in opts.min_n.max(2)..=opts.max_n {
        let mut total = Stats::default();
        for mut spec in shard_space(n, opts.shard_len) {
            spec.filters = opts.filters;
            let p = match &opts.checkpoint_dir {
                Some(d) => run_checkpointed(&spec, opts.exec, &checkpoint_path(d, &spec), budget)?,
                None => {
                    let ctl = RunControl {
                        exec: opts.exec,
                        budget,
                        on_block: None,
                    };
                    enumerate_grids(&spec, Stats::default(), ctl, || ())?.0
                }
            };
            if let Some(b) = budget.as_mut() {
                *b = b.saturating_sub(p.processed);
            }
            complete &= p.complete();
            total.merge(p.stats);
        }
        sizes.push(SizeSummary { n, stats: total });
    }

    let mut found: BTreeMap<LaurentPolynomial, SurveyResult> = BTreeMap::new();
    for s in &sizes {
        for (v, k) in &s.stats.per_knot {
            if k.lifted == 0 {
                continue;
            }
            let e = found.entry(v.clone()).or_insert_with(|| SurveyResult {
                name: String::new(),
                fingerprint_id: fingerprint_id(v),
                jones: v.clone(),
                min_cube_size: None,
                witness: None,
                cube: None,
                lifted: BTreeMap::new(),
            });
            e.lifted.insert(s.n, k.lifted);
            if e.min_cube_size.is_none() {
                e.min_cube_size = Some(s.n);
                e.witness = k.witness;
            }
        }
    }
    let mut results = Vec::new();
    for rec in table.records() {
        let mut r = found.remove(&rec.jones).unwrap_or_else(|| SurveyResult {
            name: String::new(),
            fingerprint_id: rec.fingerprint_id(),
            jones: rec.jones.clone(),
            min_cube_size: None,
            witness: None,
            cube: None,
            lifted: BTreeMap::new(),
        });
        r.name = rec.name.clone();
        results.push(r);
    }
    for (_, mut r) in found {
        r.name = format!("unknown-{}", r.fingerprint_id);
        results.push(r);
    }
    for r in &mut results {
        if let Some(g) = r.witness {
            r.cube = Some(lift(&g).expect("survey witnesses lift").0);
        }
    }
    Ok(Survey {
        max_n: opts.max_n,
        complete,
        sizes,
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_in_order() {
        let xs = x_permutations(3, &[]);
        assert_eq!(xs.len(), 6);
        assert_eq!(&xs[1][..3], &[0, 2, 1]);
        assert_eq!(x_permutations(4, &[2]).len(), 6);
        assert!(x_permutations(4, &[2, 2]).is_empty());
        let mut count = 0;
        for_each_o(4, &[0, 1, 2, 3], |_| count += 1);
        assert_eq!(count, 9);
    }

    #[test]
    fn size_two() {
        let stats = enumerate_all(&EnumSpec::new(2), Exec::Sequential);
        assert_eq!((stats.visited, stats.knots, stats.lifted), (2, 2, 2));
    }

    #[test]
    fn checkpoint_round_trip() {
        let spec = EnumSpec::new(4);
        let stats = enumerate_all(&spec, Exec::Sequential);
        let c = Checkpoint::of(
            &spec,
            &Progress {
                stats,
                next_rank: 24,
                total_ranks: 24,
                processed: 24,
            },
        );
        assert_eq!(Checkpoint::parse(&c.to_text()).unwrap(), c);
        assert!(Checkpoint::parse("CNSV2\n").is_err());
    }

    #[test]
    fn shards() {
        assert_eq!(shard_space(5, 0).len(), 1);
        assert_eq!(shard_space(5, 1).len(), 5);
        assert_eq!(shard_space(5, 2).len(), 20);
    }
}
