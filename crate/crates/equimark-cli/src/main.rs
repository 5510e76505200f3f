//! `equimark` — generate, verify, reduce, render, and exchange
//! symmetry-equivariant generating sets for monomial map kernels.
//!
//! Exit codes: 0 success (and, for `verify`/`selftest`, every check
//! passed), 1 a verification check failed, 2 usage or input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use equimark::generators::{
    lattice_generators, lattice_generators_compact, laurent_width2_pair, markov_width2,
    multirow_lattice_generators, phi_markov_basis, psi_kernel_families, quad_generators,
    GeneratorSet,
};
use equimark::io::{
    export_moves, export_truncation, generators_from_text, generators_to_text, import_4ti2,
    moves_from_rows, ring_variables, BoxShape,
};
use equimark::maps::{MapSpec, MatchingTable, TruncationMatrix};
use equimark::symmetry::orbit_reduce;
use equimark::tables::{ExponentTable, MultiDegree, RingTag};
use equimark::verify::{groebner_check, lattice_span_check, markov_check, WeightOrder};
use equimark::{Error, Int, Result};
use equimark_cli::acceptance;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Equivariant generating sets for kernels of monomial maps, verified at
/// finite truncations with exact integer arithmetic.
#[derive(Parser)]
#[command(name = "equimark", version, max_term_width = 100)]
struct Cli {
    /// Write the primary output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Seed for randomized verification (weight-order sampling).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a generating family as a genset text file.
    Gens {
        #[command(subcommand)]
        family: FamilyCmd,
    },

    /// Print the linearized map matrix at a truncation, in 4ti2 matrix
    /// format: one row per target dimension, one column per domain tuple
    /// in lexicographic order.
    Truncate {
        /// Number of columns retained.
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        map: MapArgs,
    },

    /// Read a 4ti2 move file (one row per move, one column per ring
    /// variable in lexicographic order) and reduce the moves to canonical
    /// orbit representatives under column relabeling and sign.
    Reduce {
        /// Column range of the move file's ring (variables in 1..=n).
        #[arg(long)]
        n: u32,
        /// Tuple width of the ring the moves live in.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Move file (stdin when omitted).
        file: Option<PathBuf>,
    },

    /// Check a generation claim at a finite truncation; exits 1 when the
    /// check fails.
    Verify {
        #[command(subcommand)]
        check: VerifyCmd,
    },

    /// Draw a monomial as stacked unit boxes.
    Render {
        /// Output flavor.
        #[arg(long, value_enum)]
        format: RenderFormat,
        /// Which ring the input monomial lives in: `x` is a plain
        /// multidegree, `z` a slot-by-column table (needs the map
        /// exponents), `y` a width-2 tuple monomial (needs the map
        /// exponents).
        #[arg(long, value_enum)]
        ring: RingChoice,
        #[command(flatten)]
        map: MapArgs,
        /// Monomial file, one `i1 .. ir : c` entry per line (stdin when
        /// omitted).
        file: Option<PathBuf>,
    },

    /// Convert a genset file to a 4ti2 move file (one row per move, one
    /// column per ring variable in 1..=n, lexicographic).
    Export {
        #[arg(long, value_enum)]
        format: ExchangeFormat,
        /// Column range of the output (default: the set's width).
        #[arg(long)]
        n: Option<u32>,
        /// Genset file to convert.
        file: PathBuf,
    },

    /// Convert a 4ti2 move file to readable move blocks.
    Import {
        #[arg(long, value_enum)]
        format: ExchangeFormat,
        /// Column range of the move file's ring.
        #[arg(long)]
        n: u32,
        /// Tuple width of the ring the moves live in.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Move file (stdin when omitted).
        file: Option<PathBuf>,
    },

    /// Run the built-in acceptance suite (one line per criterion); exits 1
    /// when any criterion fails.
    Selftest,
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Lattice generating family of a map kernel.
    Lattice(MapArgs),
    /// Compact lattice family of a single-row map kernel.
    LatticeCompact(MapArgs),
    /// Markov basis of a width-2 map kernel.
    Markov2(WidthTwoArgs),
    /// Two-move Laurent generating set of a width-2 map kernel.
    Laurent2(WidthTwoArgs),
    /// Markov basis of the splitting-map kernel (width-2 tuples).
    Phi,
    /// Markov families of a width-2 exponent-map kernel.
    Psi(WidthTwoArgs),
    /// Quadratic swap moves for width-k tuples.
    Quad {
        /// Tuple width.
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Decide by Hermite normal form whether the moves span the kernel
    /// lattice at truncation n (moves expanded in n + slack columns).
    Span {
        #[command(flatten)]
        source: SetSource,
        /// Truncation at which the kernel is computed.
        #[arg(long)]
        n: u32,
        /// Extra columns the moves may act through.
        #[arg(long, default_value_t = 2)]
        slack: u32,
    },

    /// Decide by exhaustive fiber search whether the moves connect every
    /// fiber of the map up to a total-degree cap.
    Markov {
        #[command(flatten)]
        source: SetSource,
        /// Truncation at which fibers are enumerated.
        #[arg(long)]
        n: u32,
        /// Extra columns the moves may act through.
        #[arg(long, default_value_t = 2)]
        slack: u32,
        /// Largest fiber total degree searched.
        #[arg(long, default_value_t = 4)]
        degree_cap: i64,
    },

    /// Check that reduction by the moves is confluent to the fiber minimum
    /// under randomly sampled weight orders (seeded by --seed).
    Groebner {
        #[command(flatten)]
        source: SetSource,
        /// Truncation at which fibers are enumerated.
        #[arg(long)]
        n: u32,
        /// Extra columns the moves may act through.
        #[arg(long, default_value_t = 1)]
        slack: u32,
        /// Largest fiber total degree searched.
        #[arg(long, default_value_t = 4)]
        degree_cap: i64,
        /// Number of random weight orders to try.
        #[arg(long, default_value_t = 25)]
        orders: usize,
        /// Weights are sampled uniformly from 0..=max-weight.
        #[arg(long, default_value_t = 1000)]
        max_weight: u64,
    },
}

/// Where a verification gets its generating set.
#[derive(Args)]
struct SetSource {
    /// Read the set from a genset file instead of generating a family.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["family", "a", "b", "exponents", "m", "k"])]
    genset: Option<PathBuf>,
    /// Family to generate (defaults to the natural family for the check).
    #[arg(long, value_enum)]
    family: Option<FamilyName>,
    #[command(flatten)]
    map: MapArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Lattice,
    LatticeCompact,
    Markov2,
    Laurent2,
    Phi,
    Psi,
    Quad,
}

/// Map description: either `--a/--b` for the width-2 single-row shape or
/// an explicit `--exponents` matrix.
#[derive(Args, Clone, Default)]
struct MapArgs {
    /// First exponent of a width-2 single-row map (requires --b).
    #[arg(long, conflicts_with = "exponents")]
    a: Option<u64>,
    /// Second exponent of a width-2 single-row map.
    #[arg(long, requires = "a", conflicts_with = "exponents")]
    b: Option<u64>,
    /// Exponent rows, e.g. "3,1;1,2": rows separated by `;`, entries by `,`.
    #[arg(long, value_name = "ROWS")]
    exponents: Option<String>,
    /// Expected number of rows (cross-checked).
    #[arg(long)]
    m: Option<usize>,
    /// Expected row width (cross-checked).
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct WidthTwoArgs {
    /// Larger exponent.
    #[arg(long)]
    a: u64,
    /// Smaller exponent.
    #[arg(long)]
    b: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Ascii,
    Tikz,
}

#[derive(Clone, Copy, ValueEnum)]
enum RingChoice {
    X,
    Z,
    Y,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExchangeFormat {
    #[value(name = "4ti2")]
    Fourti2,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

impl MapArgs {
    fn to_spec(&self) -> Result<MapSpec> {
        let spec = match (self.a, &self.exponents) {
            (Some(a), None) => {
                let b = self.b.ok_or_else(|| usage("--a needs --b"))?;
                MapSpec::width2(a, b)?
            }
            (None, Some(rows)) => {
                let rows: Result<Vec<Vec<u64>>> = rows.split(';').map(parse_exponent_row).collect();
                MapSpec::multi_row(rows?)?
            }
            (None, None) => {
                return Err(usage(
                    "describe the map with --a/--b (width-2 single row) or --exponents",
                ))
            }
            (Some(_), Some(_)) => return Err(usage("--a/--b and --exponents are exclusive")),
        };
        if let Some(m) = self.m {
            if m != spec.m() {
                return Err(usage(format!("--m {m} does not match the {} exponent rows", spec.m())));
            }
        }
        if let Some(k) = self.k {
            if k != spec.k() {
                return Err(usage(format!("--k {k} does not match the row width {}", spec.k())));
            }
        }
        Ok(spec)
    }

    fn width2_pair(&self) -> Result<(u64, u64)> {
        self.to_spec()?.width2_pair()
    }
}

fn parse_exponent_row(row: &str) -> Result<Vec<u64>> {
    row.split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| usage(format!("invalid exponent `{}`", tok.trim())))
        })
        .collect()
}

fn build_family(name: FamilyName, map: &MapArgs) -> Result<GeneratorSet> {
    match name {
        FamilyName::Lattice => {
            let spec = map.to_spec()?;
            if spec.m() == 1 {
                lattice_generators(&spec)
            } else {
                multirow_lattice_generators(&spec)
            }
        }
        FamilyName::LatticeCompact => lattice_generators_compact(&map.to_spec()?),
        FamilyName::Markov2 => {
            let (a, b) = map.width2_pair()?;
            markov_width2(a, b)
        }
        FamilyName::Laurent2 => {
            let (a, b) = map.width2_pair()?;
            laurent_width2_pair(a, b)
        }
        FamilyName::Phi => phi_markov_basis(),
        FamilyName::Psi => {
            let (a, b) = map.width2_pair()?;
            psi_kernel_families(a, b)
        }
        FamilyName::Quad => {
            let k = map
                .k
                .ok_or_else(|| usage("the quad family needs --k (tuple width)"))?;
            quad_generators(k)
        }
    }
}

impl FamilyCmd {
    fn build(&self) -> Result<GeneratorSet> {
        let width2 = |w: &WidthTwoArgs| MapArgs {
            a: Some(w.a),
            b: Some(w.b),
            ..MapArgs::default()
        };
        match self {
            FamilyCmd::Lattice(map) => build_family(FamilyName::Lattice, map),
            FamilyCmd::LatticeCompact(map) => build_family(FamilyName::LatticeCompact, map),
            FamilyCmd::Markov2(w) => build_family(FamilyName::Markov2, &width2(w)),
            FamilyCmd::Laurent2(w) => build_family(FamilyName::Laurent2, &width2(w)),
            FamilyCmd::Phi => build_family(FamilyName::Phi, &MapArgs::default()),
            FamilyCmd::Psi(w) => build_family(FamilyName::Psi, &width2(w)),
            FamilyCmd::Quad { k } => build_family(
                FamilyName::Quad,
                &MapArgs { k: Some(*k), ..MapArgs::default() },
            ),
        }
    }
}

impl SetSource {
    fn resolve(&self, natural: FamilyName) -> Result<GeneratorSet> {
        if let Some(path) = &self.genset {
            return generators_from_text(&read_file(path)?);
        }
        build_family(self.family.unwrap_or(natural), &self.map)
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn read_input(file: Option<&Path>) -> Result<String> {
    match file {
        Some(path) => read_file(path),
        None => std::io::read_to_string(std::io::stdin())
            .map_err(|e| usage(format!("cannot read stdin: {e}"))),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn exit_for(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // Ignore a second initialization (tests may run several commands in
        // one process); the pool size only needs to be set once.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let out = cli.out.as_deref();
    match &cli.cmd {
        Cmd::Gens { family } => {
            let g = family.build()?;
            emit(out, &generators_to_text(&g))?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Truncate { n, map } => {
            let spec = map.to_spec()?;
            let t = TruncationMatrix::build(&spec, *n)?;
            emit(out, &export_truncation(&t).to_text())?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Reduce { n, k, file } => {
            let rows = import_4ti2(&read_input(file.as_deref())?)?;
            let moves = moves_from_rows(RingTag::Y { k: *k }, *n, &rows)?;
            let classes = orbit_reduce(&moves)?;
            let mut text = String::new();
            for (canon, _) in &classes {
                text.push_str("move\n");
                text.push_str(&canon.to_text());
            }
            emit(out, &text)?;
            let sizes: Vec<usize> = classes.iter().map(|(_, s)| *s).collect();
            eprintln!(
                "{} moves reduced to {} orbit classes (sizes {:?})",
                moves.len(),
                classes.len(),
                sizes
            );
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Verify { check } => run_verify(check, cli.seed, out),

        Cmd::Render { format, ring, map, file } => {
            let text = read_input(file.as_deref())?;
            let shape = match ring {
                RingChoice::X => {
                    let t = ExponentTable::parse(RingTag::X { m: 1 }, &text)?;
                    BoxShape::from_multidegree(&MultiDegree::new(t)?)?
                }
                RingChoice::Z => {
                    let spec = map.to_spec()?;
                    let t = ExponentTable::parse(RingTag::Z { k: spec.k() }, &text)?;
                    BoxShape::from_matching(&MatchingTable::new(t)?, &spec)?
                }
                RingChoice::Y => {
                    let spec = map.to_spec()?;
                    let t = ExponentTable::parse(RingTag::Y { k: spec.k() }, &text)?;
                    BoxShape::from_y_monomial(&t, &spec)?
                }
            };
            let rendered = match format {
                RenderFormat::Ascii => shape.ascii(),
                RenderFormat::Tikz => shape.tikz(),
            };
            emit(out, &rendered)?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Export { format: ExchangeFormat::Fourti2, n, file } => {
            let g = generators_from_text(&read_file(file)?)?;
            let n = n.unwrap_or_else(|| g.width());
            emit(out, &export_moves(&g, n)?.to_text())?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Import { format: ExchangeFormat::Fourti2, n, k, file } => {
            let rows = import_4ti2(&read_input(file.as_deref())?)?;
            let moves = moves_from_rows(RingTag::Y { k: *k }, *n, &rows)?;
            let mut text = String::new();
            for m in &moves {
                text.push_str("move\n");
                text.push_str(&m.to_text());
            }
            emit(out, &text)?;
            let n = moves.len();
            eprintln!("{n} move{}", if n == 1 { "" } else { "s" });
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Selftest => {
            let reports = acceptance::run_all()?;
            let mut text = String::new();
            let mut pass = true;
            for r in &reports {
                text.push_str(&r.one_line());
                text.push('\n');
                pass &= r.pass;
            }
            emit(out, &text)?;
            Ok(exit_for(pass))
        }
    }
}

fn run_verify(cmd: &VerifyCmd, seed: u64, out: Option<&Path>) -> Result<ExitCode> {
    match cmd {
        VerifyCmd::Span { source, n, slack } => {
            let g = source.resolve(FamilyName::Lattice)?;
            let report = lattice_span_check(&g, *n, *slack)?;
            emit(out, &report.to_text())?;
            Ok(exit_for(report.passed()))
        }

        VerifyCmd::Markov { source, n, slack, degree_cap } => {
            let g = source.resolve(FamilyName::Markov2)?;
            let report = markov_check(&g, *n, *slack, *degree_cap as Int)?;
            emit(out, &report.to_text())?;
            Ok(exit_for(report.passed()))
        }

        VerifyCmd::Groebner { source, n, slack, degree_cap, orders, max_weight } => {
            let g = source.resolve(FamilyName::Psi)?;
            let vars = ring_variables(g.ring(), n + slack);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut text = String::new();
            let mut pass = true;
            for _ in 0..*orders {
                let order = WeightOrder::random(&vars, *max_weight, &mut rng);
                let report = groebner_check(&g, &order, *n, *slack, *degree_cap as Int)?;
                pass &= report.passed();
                text.push_str(&report.to_text());
                text.push('\n');
            }
            emit(out, &text)?;
            Ok(exit_for(pass))
        }
    }
}
