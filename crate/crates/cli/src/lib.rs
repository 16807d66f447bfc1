//! Command-line front end: graph files in, text summaries and JSON run
//! reports out.

pub mod report;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pfaffamp::algebra::gaussian::format_gaussian;
use pfaffamp::integrate::{constants_from_results, feynman_trick_check, TrickMethod};
use pfaffamp::symanzik::{first_symanzik_det, first_symanzik_trees};
use pfaffamp::twistor::{build_propagator_forms, pfaffian_symanzik_ratio, quadratic_rank_check};
use pfaffamp::{
    cycle_basis, integrate, parse_graph, route_momenta, second_symanzik, Error, Graph, IntegrationConfig, Method,
    MomentumDensity,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use report::RunReport;
use report::{Constants, EdgeRank, GraphSummary, InputRecord, PfaffianCheck, ReportError, SymbolicChecks};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "pfaffamp",
    version,
    about = "Symanzik, twistor-pfaffian and momentum-space amplitudes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first and second Symanzik polynomials.
    Symanzik(GraphArgs),
    /// Check Pf(Σ a_e Q_e)² = λ² S₂² exactly.
    TwistorCheck {
        #[command(flatten)]
        graph: GraphArgs,
        /// Random rational points at which the identity is also evaluated.
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Monte Carlo estimates of the amplitude.
    Integrate {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        #[command(flatten)]
        mc: McArgs,
        /// Importance scale for the direct method [default: geometric mean mass].
        #[arg(long)]
        scale: Option<f64>,
        #[arg(long, value_enum, default_value_t = DensityArg::StudentT)]
        momentum_density: DensityArg,
    },
    /// Compare 1/ΠA with the simplex integral of the Feynman trick.
    FeynmanCheck {
        /// The positive denominators A_1 .. A_N, N even.
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        values: Vec<f64>,
        #[command(flatten)]
        mc: McArgs,
        /// Use Monte Carlo even for N = 2.
        #[arg(long)]
        monte_carlo: bool,
        /// Absolute tolerance of the N = 2 quadrature.
        #[arg(long, default_value_t = 1e-13)]
        tolerance: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Graph specification file (JSON).
    pub path: PathBuf,
    /// Reject binary floating point numbers in the input.
    #[arg(long)]
    pub exact: bool,
    /// Write the JSON run report here.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub batch_size: u64,
    /// Dirichlet concentration of the simplex sampler; 1 is uniform.
    #[arg(long, default_value_t = 0.5)]
    pub concentration: f64,
}

impl McArgs {
    fn config(&self) -> IntegrationConfig {
        IntegrationConfig {
            samples: self.samples,
            seed: self.seed,
            batch_size: self.batch_size,
            concentration: self.concentration,
            ..IntegrationConfig::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Parametric,
    Pfaffian,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Direct => vec![Method::Direct],
            MethodArg::Parametric => vec![Method::Parametric],
            MethodArg::Pfaffian => vec![Method::Pfaffian],
            MethodArg::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DensityArg {
    StudentT,
    Cauchy,
}

/// What a command produced: the report, the text for stdout and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub report: RunReport,
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Structural(_) | Error::Validation(_) | Error::Parse(_) | Error::ConvergenceRisk(_) => EXIT_VALIDATION,
        Error::UnsupportedTopology { .. } => EXIT_UNSUPPORTED,
        Error::InvariantViolation(_) | Error::Degenerate(_) | Error::InsufficientPrecision { .. } => EXIT_INVARIANT,
    }
}

struct Run {
    report: RunReport,
    stdout: String,
    stderr: String,
    exit_code: i32,
}

impl Run {
    fn new(name: &str, args: &[String]) -> Self {
        Run {
            report: RunReport::new(name, args.to_vec()),
            stdout: String::new(),
            stderr: String::new(),
            exit_code: EXIT_OK,
        }
    }

    fn fail(&mut self, context: &str, err: &Error) {
        let _ = writeln!(self.stderr, "error: {context}: {err}");
        self.report.errors.push(ReportError::new(context, err));
        if self.exit_code == EXIT_OK {
            self.exit_code = exit_code(err);
        }
    }

    fn finish(self) -> Outcome {
        Outcome {
            report: self.report,
            stdout: self.stdout,
            stderr: self.stderr,
            exit_code: self.exit_code,
        }
    }

    /// Reads and validates the graph, recording the input hash.
    fn load(&mut self, args: &GraphArgs) -> anyhow::Result<Option<Graph>> {
        let bytes =
            std::fs::read(&args.path).map_err(|e| anyhow::anyhow!("cannot read {}: {e}", args.path.display()))?;
        self.report.input = Some(InputRecord::new(&args.path.display().to_string(), &bytes));
        let text = match String::from_utf8(bytes) {
            Ok(t) => t,
            Err(_) => {
                self.fail("input", &Error::Parse("graph file is not UTF-8".into()));
                return Ok(None);
            }
        };
        match parse_graph(&text, args.exact) {
            Ok(g) => {
                self.report.graph = Some(GraphSummary {
                    vertices: g.n_vertices(),
                    edges: g.n_edges(),
                    loops: g.loop_number(),
                });
                Ok(Some(g))
            }
            Err(e) => {
                self.fail("input", &e);
                Ok(None)
            }
        }
    }
}

/// Runs a parsed command. `args` is the raw argument list recorded in the
/// report. Only I/O failures surface as `Err`.
pub fn run(cli: Cli, args: &[String]) -> anyhow::Result<Outcome> {
    let (outcome, output) = match cli.command {
        Command::Symanzik(g) => (cmd_symanzik(&g, args)?, g.output),
        Command::TwistorCheck { graph, points, seed } => (cmd_twistor_check(&graph, points, seed, args)?, graph.output),
        Command::Integrate {
            graph,
            method,
            mc,
            scale,
            momentum_density,
        } => {
            let cfg = IntegrationConfig {
                scale,
                momentum_density: match momentum_density {
                    DensityArg::StudentT => MomentumDensity::StudentT,
                    DensityArg::Cauchy => MomentumDensity::Cauchy,
                },
                ..mc.config()
            };
            let mut outcome = cmd_integrate(&graph, method, cfg, args)?;
            if graph.output.is_none() {
                outcome.stdout = outcome.report.to_json();
            }
            (outcome, graph.output)
        }
        Command::FeynmanCheck {
            values,
            mc,
            monte_carlo,
            tolerance,
            output,
        } => (cmd_feynman_check(&values, &mc, monte_carlo, tolerance, args), output),
    };
    if let Some(path) = output {
        std::fs::write(&path, outcome.report.to_json())
            .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?;
    }
    Ok(outcome)
}

fn symbolic_checks(g: &Graph) -> Result<SymbolicChecks, Error> {
    let basis = cycle_basis(g);
    let pair = second_symanzik(g, &basis)?;
    let trees = first_symanzik_trees(g);
    Ok(SymbolicChecks {
        s1_oracle_match: Some(first_symanzik_det(g, &basis)? == trees),
        s1: Some(pair.s1.to_string()),
        s2: Some(pair.s2.to_string()),
        ..SymbolicChecks::default()
    })
}

pub fn cmd_symanzik(args: &GraphArgs, argv: &[String]) -> anyhow::Result<Outcome> {
    let mut run = Run::new("symanzik", argv);
    let Some(g) = run.load(args)? else {
        return Ok(run.finish());
    };
    match symbolic_checks(&g) {
        Ok(checks) => {
            let matched = checks.s1_oracle_match == Some(true);
            let _ = writeln!(run.stdout, "S1 = {}", checks.s1.as_deref().unwrap_or(""));
            let _ = writeln!(run.stdout, "S2 = {}", checks.s2.as_deref().unwrap_or(""));
            let _ = writeln!(
                run.stdout,
                "S1 spanning tree oracle: {}",
                if matched { "match" } else { "MISMATCH" }
            );
            if !matched {
                run.fail(
                    "symanzik",
                    &Error::InvariantViolation("det(Σ a M) differs from the spanning tree sum".into()),
                );
            }
            run.report.symbolic = Some(checks);
        }
        Err(e) => run.fail("symanzik", &e),
    }
    Ok(run.finish())
}

fn twistor_checks(g: &Graph, points: usize, seed: u64) -> Result<SymbolicChecks, Error> {
    let basis = cycle_basis(g);
    let routing = route_momenta(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ratio = pfaffian_symanzik_ratio(g, &basis, &routing, points, &mut rng)?;
    let mut checks = symbolic_checks(g)?;
    checks.pfaffian = Some(PfaffianCheck {
        lambda_sq: format_gaussian(&ratio.lambda_sq),
        identity_holds: ratio.identity_holds,
        max_point_residual: ratio.max_point_residual,
        points_checked: ratio.points_checked,
    });
    for p in build_propagator_forms(g, &basis, &routing)? {
        checks.ranks.push(EdgeRank {
            edge: g.edges()[p.edge].id.clone(),
            form_rank: p.rank(),
            hessian_rank: quadratic_rank_check(&p.form).ok(),
        });
    }
    Ok(checks)
}

pub fn cmd_twistor_check(args: &GraphArgs, points: usize, seed: u64, argv: &[String]) -> anyhow::Result<Outcome> {
    let mut run = Run::new("twistor-check", argv);
    run.report.seed = Some(seed);
    let Some(g) = run.load(args)? else {
        return Ok(run.finish());
    };
    match twistor_checks(&g, points, seed) {
        Ok(checks) => {
            let pf = checks.pfaffian.as_ref().expect("set above");
            let residual_zero = pf.identity_holds && pf.max_point_residual == 0.0;
            let _ = writeln!(run.stdout, "lambda^2 = {}", pf.lambda_sq);
            let _ = writeln!(
                run.stdout,
                "residual = {} (polynomial identity {}, max point residual {:e} over {} points)",
                if residual_zero { "0" } else { "nonzero" },
                if pf.identity_holds { "holds" } else { "fails" },
                pf.max_point_residual,
                pf.points_checked
            );
            let _ = writeln!(run.stdout, "{}", if residual_zero { "PASS" } else { "FAIL" });
            if !residual_zero {
                run.fail(
                    "twistor-check",
                    &Error::InvariantViolation("Pf² − λ² S₂² does not vanish".into()),
                );
            }
            run.report.symbolic = Some(checks);
        }
        Err(e) => {
            let _ = writeln!(run.stdout, "FAIL");
            run.fail("twistor-check", &e);
        }
    }
    Ok(run.finish())
}

pub fn cmd_integrate(
    args: &GraphArgs,
    method: MethodArg,
    cfg: IntegrationConfig,
    argv: &[String],
) -> anyhow::Result<Outcome> {
    let mut run = Run::new("integrate", argv);
    run.report.seed = Some(cfg.seed);
    run.report.config = Some(cfg.clone());
    if let Err(e) = cfg.validate() {
        run.fail("config", &e);
        return Ok(run.finish());
    }
    let Some(g) = run.load(args)? else {
        return Ok(run.finish());
    };
    for m in method.methods() {
        match integrate(&g, m, &cfg) {
            Ok(r) => {
                let _ = writeln!(
                    run.stdout,
                    "{:<10} {:.6e} ± {:.2e}  ({} samples)",
                    m.name(),
                    r.estimate,
                    r.std_error,
                    r.n_samples
                );
                run.report.results.push(r);
            }
            Err(e) => run.fail(m.name(), &e),
        }
    }
    if method == MethodArg::All && run.report.results.len() == 3 {
        let [d, p, f] = [0, 1, 2].map(|i| run.report.results[i].clone());
        match constants_from_results(d, p, f) {
            Ok(c) => {
                let _ = writeln!(
                    run.stdout,
                    "c_hat = {:.6} ± {:.2e}, C_hat = {:.6} ± {:.2e}",
                    c.c_hat.value, c.c_hat.std_error, c.big_c_hat.value, c.big_c_hat.std_error
                );
                run.report.constants = Some(Constants {
                    c_hat: c.c_hat,
                    big_c_hat: c.big_c_hat,
                });
            }
            Err(e) => run.fail("constants", &e),
        }
    }
    if g.is_twistor_topology() && method != MethodArg::Direct {
        match twistor_checks(&g, 0, cfg.seed) {
            Ok(checks) => run.report.symbolic = Some(checks),
            Err(e) => run.fail("symbolic", &e),
        }
    }
    Ok(run.finish())
}

pub fn cmd_feynman_check(values: &[f64], mc: &McArgs, monte_carlo: bool, tolerance: f64, argv: &[String]) -> Outcome {
    let mut run = Run::new("feynman-check", argv);
    let method = if values.len() == 2 && !monte_carlo {
        TrickMethod::Quadrature { tolerance }
    } else {
        run.report.seed = Some(mc.seed);
        run.report.config = Some(mc.config());
        TrickMethod::MonteCarlo(mc.config())
    };
    match feynman_trick_check(values, &method) {
        Ok(check) => {
            let _ = writeln!(run.stdout, "lhs = {:.12e}", check.lhs);
            let _ = writeln!(run.stdout, "rhs = {:.12e} ± {:.2e}", check.rhs, check.rhs_std_error);
            let _ = writeln!(run.stdout, "relative gap = {:.3e}", check.relative_gap);
            run.report.feynman = Some(check);
        }
        Err(e) => run.fail("feynman-check", &e),
    }
    run.finish()
}
