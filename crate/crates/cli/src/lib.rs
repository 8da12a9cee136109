//! The `plycover` command line.
//!
//! Exit codes: 0 success, 1 usage or I/O error (and failed checks), 2
//! infeasible instance, 3 ply budget exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use plycover::format::{
    check_solution, parse_instance, parse_solution, write_instance, write_solution, Instance, Kind, SolutionFile,
    SolutionKind,
};
use plycover::generate::{generate, Distribution, GenConfig};
use plycover::geom::ply_disks;
use plycover::interval::{count_overlapping_pairs, solve_intervals_unsorted};
use plycover::oracle::{exact_3color_cover, exact_intervals, exact_min_ply_disks, exact_min_ply_rects};
use plycover::slab::{solve_mpc_disks, solve_mpc_rects};
use plycover::svg::render_svg;
use plycover::tricolor::solve_3color;
use plycover::{CoverSolution, Mode, Rational, SolveError, DEFAULT_EPS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "plycover", version, about = "Minimum ply and minimum membership covering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SolveKind {
    Rects,
    Disks,
    #[value(name = "3color")]
    ThreeColor,
    Intervals,
}

impl SolveKind {
    fn solution_kind(self) -> SolutionKind {
        match self {
            SolveKind::Rects => SolutionKind::Rects,
            SolveKind::Disks => SolutionKind::Disks,
            SolveKind::ThreeColor => SolutionKind::ThreeColor,
            SolveKind::Intervals => SolutionKind::Intervals,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Mpc,
    Mmsc,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Mpc => Mode::Mpc,
            ModeArg::Mmsc => Mode::Mmsc,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Rects,
    Disks,
    Intervals,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Rects => Kind::Rects,
            KindArg::Disks => Kind::Disks,
            KindArg::Intervals => Kind::Intervals,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance and write a solution file.
    Solve {
        #[arg(long, value_enum)]
        kind: SolveKind,
        #[arg(long, value_enum, default_value = "mpc")]
        mode: ModeArg,
        #[arg(long = "in")]
        input: PathBuf,
        /// Solution file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest per-slab ply budget to try.
        #[arg(long)]
        ell_max: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        /// Record the solver's wall-clock time in the solution file.
        #[arg(long)]
        timing: bool,
    },
    /// Solve a small instance exactly by exhaustive search.
    Oracle {
        #[arg(long, value_enum)]
        kind: SolveKind,
        #[arg(long, value_enum, default_value = "mpc")]
        mode: ModeArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Number of points.
        #[arg(long)]
        n: usize,
        /// Number of objects.
        #[arg(long)]
        m: usize,
        /// uniform, clustered, slab-stress or chain.
        #[arg(long = "dist", default_value = "uniform")]
        distribution: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        allow_uncovered: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a solution file against its instance.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
    /// Draw an instance, and optionally a solution, as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        solution: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the solver on instances of doubling size and print CSV.
    Bench {
        #[arg(long, value_enum, default_value = "intervals")]
        kind: SolveKind,
        #[arg(long, value_enum, default_value = "mmsc")]
        mode: ModeArg,
        #[arg(long = "dist", default_value = "chain")]
        distribution: String,
        /// Smallest object count is 2^from.
        #[arg(long, default_value_t = 10)]
        from: u32,
        /// Largest object count is 2^to.
        #[arg(long, default_value_t = 16)]
        to: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::Infeasible { .. } | SolveError::NotThreeColorable => EXIT_INFEASIBLE,
            SolveError::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| usage(e.to_string())),
    }
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map(|f| f.instance).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Rejects kind and mode combinations the solvers do not define.
fn check_request(kind: SolveKind, mode: Mode, instance: &Instance) -> Result<(), Failure> {
    if mode == Mode::Mmsc && kind != SolveKind::Intervals {
        return Err(usage("--mode mmsc is only available for --kind intervals"));
    }
    let expected = kind.solution_kind().instance_kind();
    if instance.kind() != expected {
        return Err(usage(format!("--kind {kind:?} needs a {expected:?} instance, got {:?}", instance.kind())));
    }
    Ok(())
}

fn solve_instance(kind: SolveKind, mode: Mode, instance: &Instance, ell_max: Option<usize>, eps: f64) -> Result<CoverSolution, SolveError> {
    match (kind, instance) {
        (SolveKind::Rects, Instance::Rects { points, objects }) => solve_mpc_rects(points, objects, ell_max),
        (SolveKind::Disks, Instance::Disks { points, objects }) => solve_mpc_disks(points, objects, ell_max, eps),
        (SolveKind::ThreeColor, Instance::Disks { points, objects }) => solve_3color(points, objects, eps),
        (SolveKind::Intervals, Instance::Intervals { points, objects }) => solve_intervals_unsorted(points, objects, mode),
        _ => unreachable!("kind checked by check_request"),
    }
}

fn oracle_instance(kind: SolveKind, mode: Mode, instance: &Instance, eps: f64) -> Result<CoverSolution, SolveError> {
    let plain = |(opt, chosen): (usize, Vec<usize>)| CoverSolution {
        chosen,
        objective: Rational::from_integer(opt.into()),
        colors: None,
        ell: None,
    };
    match (kind, instance) {
        (SolveKind::Rects, Instance::Rects { points, objects }) => exact_min_ply_rects(points, objects).map(plain),
        (SolveKind::Disks, Instance::Disks { points, objects }) => exact_min_ply_disks(points, objects, eps).map(plain),
        (SolveKind::ThreeColor, Instance::Disks { points, objects }) => {
            let classes = exact_3color_cover(points, objects, eps)?.ok_or(SolveError::NotThreeColorable)?;
            let mut tagged: Vec<(usize, u8)> = Vec::new();
            for (a, class) in classes.iter().enumerate() {
                tagged.extend(class.iter().map(|&d| (d, a as u8 + 1)));
            }
            tagged.sort_unstable();
            let (chosen, colors): (Vec<usize>, Vec<u8>) = tagged.into_iter().unzip();
            let picked: Vec<_> = chosen.iter().map(|&i| objects[i]).collect();
            Ok(CoverSolution {
                objective: Rational::from_integer(ply_disks(&picked, eps).into()),
                chosen,
                colors: Some(colors),
                ell: None,
            })
        }
        (SolveKind::Intervals, Instance::Intervals { points, objects }) => {
            exact_intervals(points, objects, mode).map(|(objective, chosen)| CoverSolution { chosen, objective, colors: None, ell: None })
        }
        _ => unreachable!("kind checked by check_request"),
    }
}

fn solution_file(kind: SolveKind, mode: Mode, sol: CoverSolution, wallclock_ms: Option<f64>) -> SolutionFile {
    SolutionFile {
        kind: kind.solution_kind(),
        mode,
        chosen: sol.chosen,
        objective: sol.objective.to_string(),
        colors: sol.colors,
        ell: sol.ell,
        wallclock_ms,
    }
}

fn distribution(name: &str) -> Result<Distribution, Failure> {
    name.parse().map_err(|e: plycover::generate::GenError| usage(e.to_string()))
}

fn bench(
    kind: SolveKind,
    mode: Mode,
    dist: Distribution,
    range: (u32, u32),
    seed: u64,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let instance_kind = kind.solution_kind().instance_kind();
    let mut csv = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| usage(e.to_string());
    csv.write_record(["kind", "n", "m", "M", "objective", "wallclock_ms", "seed"]).map_err(io)?;
    for exp in range.0..=range.1 {
        let m = 1usize << exp;
        let cfg = GenConfig { kind: instance_kind, n: m, m, distribution: dist, seed, allow_uncovered: false };
        let instance = generate(&cfg).map_err(|e| usage(e.to_string()))?.instance;
        let pairs = match &instance {
            Instance::Intervals { objects, .. } => count_overlapping_pairs(objects).to_string(),
            _ => String::new(),
        };
        check_request(kind, mode, &instance)?;
        let start = Instant::now();
        let sol = solve_instance(kind, mode, &instance, None, DEFAULT_EPS)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        csv.write_record([
            kind.to_possible_value().expect("named").get_name().to_string(),
            instance.point_count().to_string(),
            m.to_string(),
            pairs,
            sol.objective.to_string(),
            format!("{ms:.3}"),
            seed.to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = csv.into_inner().map_err(|e| usage(e.to_string()))?;
    emit(out, &String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn execute(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve { kind, mode, input, out, ell_max, eps, timing } => {
            let mode = Mode::from(mode);
            let instance = load_instance(&input)?;
            check_request(kind, mode, &instance)?;
            let start = Instant::now();
            let sol = solve_instance(kind, mode, &instance, ell_max, eps)?;
            let ms = timing.then(|| start.elapsed().as_secs_f64() * 1e3);
            emit(out.as_deref(), &write_solution(&solution_file(kind, mode, sol, ms)))
        }
        Command::Oracle { kind, mode, input, out, eps } => {
            let mode = Mode::from(mode);
            let instance = load_instance(&input)?;
            check_request(kind, mode, &instance)?;
            let sol = oracle_instance(kind, mode, &instance, eps)?;
            emit(out.as_deref(), &write_solution(&solution_file(kind, mode, sol, None)))
        }
        Command::Gen { kind, n, m, distribution: name, seed, allow_uncovered, out } => {
            let cfg = GenConfig { kind: kind.into(), n, m, distribution: distribution(&name)?, seed, allow_uncovered };
            let file = generate(&cfg).map_err(|e| usage(e.to_string()))?;
            emit(out.as_deref(), &write_instance(&file))
        }
        Command::Check { input, solution, eps } => {
            let instance = load_instance(&input)?;
            let sol = parse_solution(&read(&solution)?).map_err(|e| usage(format!("{}: {e}", solution.display())))?;
            let objective = check_solution(&instance, &sol, eps).map_err(|e| usage(format!("check failed: {e}")))?;
            println!("ok: objective {objective}");
            Ok(())
        }
        Command::Render { input, solution, out } => {
            let instance = load_instance(&input)?;
            let sol = match solution {
                Some(path) => Some(parse_solution(&read(&path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?),
                None => None,
            };
            emit(out.as_deref(), &render_svg(&instance, sol.as_ref()))
        }
        Command::Bench { kind, mode, distribution: name, from, to, seed, out } => {
            if from > to || to > 24 {
                return Err(usage("need --from <= --to <= 24"));
            }
            bench(kind, mode.into(), distribution(&name)?, (from, to), seed, out.as_deref())
        }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
