use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use cubik::cube::{lift, Axis, CubeDiagram, LiftError};
use cubik::grid::GridDiagram;
use cubik::invariants::{
    fingerprint_id, identify, jones, legendrian_data, standard_diagram, KnotTable, StandardDiagramParams,
};
use cubik::moves::{apply_move, census, legendrian_census, neighbours, report, Census, CensusOptions, Move, MoveSet};
use cubik::obstruction::filter;
use cubik::render::{self, Format};
use cubik::search::{
    cube_number_survey, enumerate_grids, run_checkpointed, EnumSpec, Exec, JonesMode, Progress, RunControl, Stats,
    SurveyOptions,
};

#[derive(Parser)]
#[command(name = "cubik", version, about = "Grid and cube diagrams of knots")]
struct Cli {
    /// Worker threads for searches (default: CUBIK_THREADS or all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomised commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory for resumable search checkpoints.
    #[arg(long, global = true)]
    checkpoint_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a grid file or cube JSON file.
    Validate(Input),
    /// Lift a grid to a cube diagram and print its JSON.
    Lift {
        #[command(flatten)]
        input: Input,
        /// Exit 1 if the grid does not lift.
        #[arg(long)]
        expect_lift: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Print the obstruction filter verdict.
    Obstruct(Input),
    /// Writhe, Legendrian invariants, Jones polynomial and knot name.
    Invariants(Input),
    /// Jones polynomial fingerprint.
    Jones(Input),
    /// Enumerate every grid of one size and print statistics.
    Enumerate {
        #[arg(long, short)]
        n: usize,
        /// Fixed leading X columns, comma separated.
        #[arg(long, value_delimiter = ',')]
        shard: Vec<u8>,
        #[arg(long)]
        no_filters: bool,
        /// Fingerprint every knot, not only lifting grids.
        #[arg(long)]
        jones_all: bool,
        /// Stop after this many X permutations.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Least lifting size of every knot type up to a size.
    Survey {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        min_n: usize,
        /// Shard each size by this many leading X columns.
        #[arg(long, default_value_t = 0)]
        shard_len: usize,
        #[arg(long)]
        no_filters: bool,
        #[arg(long)]
        budget: Option<u64>,
        /// Directory for results.csv and witness cubes.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Legendrian census of minimal grids of the left-hand (p,2) torus knot.
    Census {
        #[arg(long, short)]
        p: u32,
        /// Also print the reachability class sizes of each bucket.
        #[arg(long)]
        classes: bool,
        /// Decompose the buckets of every nontrivial knot of that size.
        #[arg(long)]
        all_knots: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Apply moves, or report an orbit.
    Moves {
        #[command(flatten)]
        input: Input,
        /// Moves to apply in order, e.g. `up,row2,col0`.
        #[arg(long, value_delimiter = ',')]
        apply: Vec<String>,
        /// Apply this many random legal moves (uses --seed).
        #[arg(long)]
        random: Option<usize>,
        /// Report the closure under cyclic or all moves.
        #[arg(long, value_enum)]
        orbit: Option<OrbitKind>,
    },
    /// Draw a grid, its front, or a cube.
    Render {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Kind::Grid)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = OutFormat::Ascii)]
        format: OutFormat,
    },
}

#[derive(Args)]
struct Input {
    /// Grid text file or cube JSON file.
    path: Option<PathBuf>,
    /// Standard diagram of the left-hand (p,2) torus knot, as `p,j,k`.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    standard: Vec<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrbitKind {
    Cyclic,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Grid,
    Front,
    Cube,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Ascii,
    Svg,
}

enum Loaded {
    Grid(GridDiagram),
    Cube(CubeDiagram),
}

impl Input {
    fn load(&self) -> Result<Loaded> {
        match (&self.path, self.standard.as_slice()) {
            (Some(_), [_, ..]) => bail!("give either a file or --standard, not both"),
            (None, []) => bail!("no input: give a file or --standard p,j,k"),
            (None, &[p, j, k]) => Ok(Loaded::Grid(standard_diagram(StandardDiagramParams::new(p, j, k)?)?)),
            (None, _) => bail!("--standard takes three numbers p,j,k"),
            (Some(path), []) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                if text.trim_start().starts_with('{') {
                    Ok(Loaded::Cube(CubeDiagram::from_json(&text)?))
                } else {
                    Ok(Loaded::Grid(text.parse()?))
                }
            }
        }
    }

    fn grid(&self) -> Result<GridDiagram> {
        match self.load()? {
            Loaded::Grid(g) => Ok(g),
            Loaded::Cube(c) => Ok(c.project(Axis::Z).0),
        }
    }
}

fn exec(threads: Option<usize>) -> Exec {
    match threads {
        Some(1) => Exec::Sequential,
        Some(t) => Exec::Parallel(Some(t)),
        None => Exec::default(),
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_stats(n: usize, p: &Progress) {
    let s: &Stats = &p.stats;
    println!("n={n} visited={} knots={} lifted={}", s.visited, s.knots, s.lifted);
    println!(
        "no_partial_order={} type1={} type2={} candidate={}",
        s.verdicts[0], s.verdicts[1], s.verdicts[2], s.verdicts[3]
    );
    if s.audited > 0 {
        println!("audited={} audit_violations={}", s.audited, s.audit_violations);
    }
    let table = KnotTable::bundled();
    for (v, k) in &s.per_knot {
        let name = table.lookup(v).map_or("unknown", |r| r.name.as_str());
        println!(
            "knot {name} {} grids={} lifted={}",
            fingerprint_id(v),
            k.grids,
            k.lifted
        );
    }
    if !p.complete() {
        println!("stopped at rank {} of {}", p.next_rank, p.total_ranks);
    }
}

fn census_report(c: &Census, classes: bool) -> String {
    let mut out = c.to_csv();
    if classes {
        for ((v, tb, r), b) in &c.buckets {
            if !b.members.is_empty() {
                let sizes: Vec<String> = b.classes.iter().map(|k| k.len().to_string()).collect();
                out.push_str(&format!(
                    "# {} tb={tb} r={r} classes={}\n",
                    fingerprint_id(v),
                    sizes.join(" ")
                ));
            }
        }
    }
    for f in &c.findings {
        out.push_str(&format!(
            "# finding: {} changes (tb, r) from {:?} to {:?} at {:?}\n",
            f.mv, f.before, f.after, f.from
        ));
    }
    out
}

fn run(cli: Cli) -> Result<ExitCode> {
    let table = KnotTable::bundled();
    match cli.cmd {
        Cmd::Validate(input) => match input.load()? {
            Loaded::Grid(g) => println!("grid n={} components={}", g.size(), g.component_count()),
            Loaded::Cube(c) => println!("cube n={} components={}", c.size(), c.knot().components.len()),
        },
        Cmd::Lift {
            input,
            expect_lift,
            out,
        } => {
            let g = input.grid()?;
            match lift(&g) {
                Ok((cube, _)) => write_out(out.as_deref(), &format!("{}\n", cube.to_json()))?,
                Err(e @ LiftError::NotLiftable(_)) => {
                    println!("not liftable: {e}");
                    if expect_lift {
                        return Ok(ExitCode::from(1));
                    }
                }
                Err(e) => return Err(e.into()),
            }
        }
        Cmd::Obstruct(input) => println!("{}", filter(&input.grid()?)),
        Cmd::Invariants(input) => {
            let g = input.grid()?;
            let l = legendrian_data(&g);
            println!("n={} components={} writhe={}", g.size(), g.component_count(), l.writhe);
            println!("tb={} r={}", l.tb, l.r);
            if g.is_knot() {
                let v = jones(&g)?;
                println!("jones={v}");
                let name = identify(&g, table)?.map_or("unknown", |r| r.name.as_str());
                println!("knot={name} fingerprint_id={}", fingerprint_id(&v));
            }
        }
        Cmd::Jones(input) => {
            let v = jones(&input.grid()?)?;
            println!("{} {}", fingerprint_id(&v), v.fingerprint_text());
        }
        Cmd::Enumerate {
            n,
            shard,
            no_filters,
            jones_all,
            budget,
        } => {
            let spec = EnumSpec {
                filters: !no_filters,
                jones: if jones_all { JonesMode::All } else { JonesMode::Lifted },
                ..EnumSpec::new(n).with_shard(shard)
            };
            let ex = exec(cli.threads);
            let progress = match &cli.checkpoint_dir {
                Some(d) => {
                    fs::create_dir_all(d)?;
                    let path = d.join(format!("n{n}-{}.cnsv", spec.shard_key().replace(',', "-")));
                    run_checkpointed(&spec, ex, &path, budget)?
                }
                None => {
                    let ctl = RunControl {
                        exec: ex,
                        budget,
                        on_block: None,
                    };
                    enumerate_grids(&spec, Stats::default(), ctl, || ())?.0
                }
            };
            print_stats(n, &progress);
        }
        Cmd::Survey {
            max_n,
            min_n,
            shard_len,
            no_filters,
            budget,
            out,
        } => {
            let opts = SurveyOptions {
                min_n,
                max_n,
                filters: !no_filters,
                exec: exec(cli.threads),
                shard_len,
                checkpoint_dir: cli.checkpoint_dir.clone(),
                budget,
            };
            let survey = cube_number_survey(&opts, table)?;
            let csv = survey.to_csv("witnesses");
            if let Some(dir) = &out {
                fs::create_dir_all(dir.join("witnesses"))?;
                fs::write(dir.join("results.csv"), &csv)?;
                for r in &survey.results {
                    if let Some(c) = &r.cube {
                        fs::write(
                            dir.join(format!("witnesses/{}.json", r.name)),
                            format!("{}\n", c.to_json()),
                        )?;
                    }
                }
            }
            print!("{csv}");
            if !survey.complete {
                eprintln!("budget exhausted; rerun with the same --checkpoint-dir to continue");
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Census {
            p,
            classes,
            all_knots,
            out,
        } => {
            let c = if all_knots {
                StandardDiagramParams::new(p, 1, p - 1)?;
                let opts = CensusOptions {
                    exec: exec(cli.threads),
                    targets: None,
                };
                census(p as usize + 2, &opts)
            } else {
                legendrian_census(p, exec(cli.threads))?
            };
            write_out(out.as_deref(), &census_report(&c, classes))?;
        }
        Cmd::Moves {
            input,
            apply,
            random,
            orbit,
        } => {
            let mut g = input.grid()?;
            for m in &apply {
                let m: Move = m.parse().map_err(|e: String| anyhow!(e))?;
                g = apply_move(&g, m).with_context(|| format!("move {m}"))?;
            }
            if let Some(k) = random {
                let mut rng = StdRng::seed_from_u64(cli.seed);
                for _ in 0..k {
                    let options = neighbours(&g, MoveSet::All);
                    let (m, h) = options[rng.gen_range(0..options.len())];
                    println!("{m}");
                    g = h;
                }
            }
            match orbit {
                None => print!("{}", g.to_text()),
                Some(kind) => {
                    let set = match kind {
                        OrbitKind::Cyclic => MoveSet::Cyclic,
                        OrbitKind::All => MoveSet::All,
                    };
                    let rep = report(&g, set);
                    println!("members={}", rep.members.len());
                    for (k, count) in &rep.classes {
                        println!("class {} tb={} r={} count={count}", k.fingerprint_id, k.tb, k.r);
                    }
                }
            }
        }
        Cmd::Render { input, kind, format } => {
            let fmt = match format {
                OutFormat::Ascii => Format::Ascii,
                OutFormat::Svg => Format::Svg,
            };
            let text = match (input.load()?, kind) {
                (Loaded::Cube(c), Kind::Cube) => render::cube(&c, fmt),
                (Loaded::Grid(g), Kind::Cube) => {
                    let (c, _) = lift(&g).context("grid does not lift to a cube")?;
                    render::cube(&c, fmt)
                }
                (loaded, Kind::Grid | Kind::Front) => {
                    let g = match loaded {
                        Loaded::Grid(g) => g,
                        Loaded::Cube(c) => c.project(Axis::Z).0,
                    };
                    if kind == Kind::Grid {
                        render::grid(&g, fmt)
                    } else {
                        render::front(&g, fmt)
                    }
                }
            };
            print!("{text}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
