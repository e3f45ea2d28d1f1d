//! `duality`: finite-scale duality computations from the command line.
//!
//! Exit codes: 0 ok, 1 property violated (with a counterexample in the
//! report), 2 usage, 3 cap exceeded or runtime error.

mod inputs;
mod report;
mod run;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use duality_core::caps::Caps;

use report::{CliError, Rendered, SCHEMA};
use run::FboxMode;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Full,
    Binary,
}

impl Mode {
    fn fbox(self) -> FboxMode {
        match self {
            Mode::Full => FboxMode::Full,
            Mode::Binary => FboxMode::Binary,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "duality",
    version,
    about = "Finite-scale computations around Stone and Birkhoff duality",
    after_help = "Inputs named --in, --left, --right, --sig accept a file path or a JSON literal."
)]
struct Cli {
    /// Output format; dot is available for space-valued payloads only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cap on admissible points per enumeration.
    #[arg(long, global = true)]
    max_points: Option<usize>,
    /// Cap on search nodes visited while enumerating points.
    #[arg(long, global = true)]
    max_nodes: Option<u64>,
    /// Cap on elements in a realized lattice or generated algebra.
    #[arg(long, global = true)]
    max_elements: Option<usize>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dual space of a finite algebra.
    Dual {
        #[command(subcommand)]
        which: DualCmd,
    },
    /// Hyperspace of all subsets of a finite discrete space.
    Vietoris {
        /// Number of points of a discrete base space.
        #[arg(long)]
        points: Option<usize>,
        /// Base space as a poset (must be discrete).
        #[arg(long = "in")]
        input: Option<String>,
    },
    /// Upset hyperspace of a finite poset, ordered by reverse inclusion.
    Smyth {
        #[arg(long = "in")]
        input: String,
    },
    /// The algebra freely generated by diamond tokens over a powerset.
    Ma {
        /// Atom count of the base Boolean algebra.
        #[arg(long)]
        atoms: usize,
    },
    /// The tower of free algebras with one diamond layer per level.
    Tower {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        depth: usize,
    },
    /// The lattice presented by box tokens over a lattice.
    Fbox {
        /// The index lattice, as the poset of all its elements.
        #[arg(long = "in")]
        input: String,
        /// How the meet scheme is instantiated.
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
    },
    /// The lattice presented by arrow tokens over a pair of lattices.
    Farrow {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Also impose joins at join-irreducible first arguments.
        #[arg(long)]
        at_primes: bool,
    },
    /// Retraction conditions for a sublattice.
    Erp {
        #[arg(long = "in")]
        input: String,
        /// Comma-separated element names of the sublattice.
        #[arg(long)]
        sub: String,
    },
    /// First-order structures: evaluation and enumeration.
    Fo {
        #[command(subcommand)]
        which: FoCmd,
    },
    /// Quantifiers as operations between model-space algebras.
    Layer {
        #[command(subcommand)]
        which: LayerCmd,
    },
    /// Property verification sweeps.
    Verify {
        #[command(subcommand)]
        which: VerifyCmd,
    },
    /// Fraction of assignments satisfying a formula in a structure.
    Pairing {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        sig: Option<String>,
        #[arg(long)]
        phi: String,
        /// Number of assignment variables v1..vn.
        #[arg(long)]
        window: usize,
    },
    /// The graded logic over measures.
    Prob {
        #[command(subcommand)]
        which: ProbCmd,
    },
}

#[derive(Subcommand)]
enum DualCmd {
    /// Atom space of a Boolean algebra.
    Ba {
        /// `{"atoms": [names]}` or the poset of all elements.
        #[arg(long = "in")]
        input: String,
    },
    /// Join-irreducible poset of a distributive lattice.
    Dl {
        /// The poset of all lattice elements.
        #[arg(long = "in")]
        input: String,
    },
}

#[derive(Subcommand)]
enum FoCmd {
    /// Evaluate a formula in a structure.
    Eval {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        sig: Option<String>,
        #[arg(long)]
        phi: String,
        /// Comma-separated 1-based values for the free variables, in
        /// variable order.
        #[arg(long)]
        assignment: Option<String>,
    },
    /// Enumerate structures up to a size bound.
    Enum {
        #[arg(long)]
        sig: Option<String>,
        #[arg(long)]
        max_size: usize,
        /// Keep one structure per isomorphism class.
        #[arg(long)]
        up_to_iso: bool,
        /// Sentences every structure must satisfy (repeatable).
        #[arg(long = "theory")]
        theory: Vec<String>,
    },
}

#[derive(Clone, clap::Args)]
struct LayerArgs {
    #[arg(long)]
    sig: Option<String>,
    /// Enumerate structures up to this universe size.
    #[arg(long)]
    sizes: usize,
    /// Number of assignment variables v1..vn.
    #[arg(long, default_value_t = 1)]
    window: usize,
    /// The variable being forgotten (defaults to the last window variable).
    #[arg(long)]
    var: Option<usize>,
    /// Generating formulas for the algebra (repeatable; default P(v1)).
    #[arg(long = "phi")]
    phis: Vec<String>,
}

impl LayerArgs {
    fn var(&self) -> usize {
        self.var.unwrap_or(self.window)
    }
}

#[derive(Subcommand)]
enum LayerCmd {
    /// The algebra generated by direct images under forgetting a variable.
    Exists {
        #[command(flatten)]
        args: LayerArgs,
    },
    /// The algebra generated by counting witnesses in a semiring.
    Semiring {
        #[command(flatten)]
        args: LayerArgs,
        /// boolean, z2..z12, or a JSON table.
        #[arg(long)]
        semiring: String,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Forgetting a variable presents the dual of the existential layer.
    Exists {
        #[command(flatten)]
        args: LayerArgs,
    },
    /// The measure map presents the dual of the counting layer.
    Semiring {
        #[command(flatten)]
        args: LayerArgs,
        #[arg(long, default_value = "boolean")]
        semiring: String,
    },
    /// Dual spaces of box-token lattices are filter spaces.
    Fbox {
        /// Sweep all lattices with at most this many join-irreducibles.
        #[arg(long, default_value_t = 3)]
        max_ji: usize,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
    },
    /// Points of arrow-token lattices are monotone maps.
    Farrow {
        #[arg(long, default_value_t = 2)]
        max_ji: usize,
    },
    /// Retraction conditions match brute-force search and dualize.
    Erp {
        /// Sweep all lattices with at most this many elements.
        #[arg(long, default_value_t = 5)]
        max_elems: usize,
    },
    /// The nine inference rules of the graded logic are sound.
    Rules {
        #[arg(long)]
        sig: Option<String>,
        #[arg(long, default_value_t = 2)]
        sizes: usize,
        #[arg(long, default_value_t = 1)]
        window: usize,
        /// Grade grid denominator.
        #[arg(long, default_value_t = 4)]
        qgrid: i64,
        #[arg(long = "phi")]
        phis: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ProbCmd {
    /// Does the structure's measure satisfy a graded formula?
    Sat {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        sig: Option<String>,
        /// Graded formula, e.g. "P>=1/2 {P(v1)}".
        #[arg(long)]
        pi: String,
        #[arg(long)]
        window: usize,
    },
}

fn env_cap<T: std::str::FromStr>(name: &str) -> Option<T> {
    std::env::var(name).ok()?.parse().ok()
}

fn build_caps(cli: &Cli) -> Caps {
    let default = Caps::default();
    let mut caps = default;
    if let Some(v) = env_cap("DUALITY_MAX_POINTS") {
        caps.max_points = v;
    }
    if let Some(v) = env_cap("DUALITY_MAX_NODES") {
        caps.max_nodes = v;
    }
    if let Some(v) = env_cap("DUALITY_MAX_ELEMENTS") {
        caps.max_elements = v;
    }
    if let Some(v) = cli.max_points {
        caps.max_points = v;
    }
    if let Some(v) = cli.max_nodes {
        caps.max_nodes = v;
    }
    if let Some(v) = cli.max_elements {
        caps.max_elements = v;
    }
    if caps.max_points > default.max_points
        || caps.max_nodes > default.max_nodes
        || caps.max_elements > default.max_elements
    {
        eprintln!("warning: caps raised above the defaults; enumerations may blow up");
    }
    caps
}

fn dispatch(cli: &Cli, caps: &Caps) -> Result<Rendered, CliError> {
    match &cli.command {
        Cmd::Dual { which } => match which {
            DualCmd::Ba { input } => run::dual_ba_cmd(input),
            DualCmd::Dl { input } => run::dual_dl_cmd(input),
        },
        Cmd::Vietoris { points, input } => run::vietoris_cmd(*points, input.as_deref(), caps),
        Cmd::Smyth { input } => run::smyth_cmd(input, caps),
        Cmd::Ma { atoms } => run::ma_cmd(*atoms, caps),
        Cmd::Tower { vars, depth } => run::tower_cmd(*vars, *depth, caps),
        Cmd::Fbox { input, mode } => run::fbox_cmd(input, mode.fbox(), caps),
        Cmd::Farrow {
            left,
            right,
            at_primes,
        } => run::farrow_cmd(left, right, *at_primes, caps),
        Cmd::Erp { input, sub } => run::erp_cmd(input, sub),
        Cmd::Fo { which } => match which {
            FoCmd::Eval {
                input,
                sig,
                phi,
                assignment,
            } => run::fo_eval_cmd(input, sig.as_deref(), phi, assignment.as_deref()),
            FoCmd::Enum {
                sig,
                max_size,
                up_to_iso,
                theory,
            } => run::fo_enum_cmd(sig.as_deref(), *max_size, *up_to_iso, theory, caps),
        },
        Cmd::Layer { which } => match which {
            LayerCmd::Exists { args } => run::layer_cmd(
                None,
                args.sig.as_deref(),
                args.sizes,
                args.window,
                args.var(),
                &args.phis,
                caps,
            ),
            LayerCmd::Semiring { args, semiring } => run::layer_cmd(
                Some(semiring),
                args.sig.as_deref(),
                args.sizes,
                args.window,
                args.var(),
                &args.phis,
                caps,
            ),
        },
        Cmd::Verify { which } => match which {
            VerifyCmd::Exists { args } => run::verify_quantifier_cmd(
                None,
                args.sig.as_deref(),
                args.sizes,
                args.window,
                args.var(),
                &args.phis,
                caps,
            ),
            VerifyCmd::Semiring { args, semiring } => run::verify_quantifier_cmd(
                Some(semiring),
                args.sig.as_deref(),
                args.sizes,
                args.window,
                args.var(),
                &args.phis,
                caps,
            ),
            VerifyCmd::Fbox { max_ji, mode } => run::verify_fbox_cmd(*max_ji, mode.fbox(), caps),
            VerifyCmd::Farrow { max_ji } => run::verify_farrow_cmd(*max_ji, caps),
            VerifyCmd::Erp { max_elems } => run::verify_erp_cmd(*max_elems, caps),
            VerifyCmd::Rules {
                sig,
                sizes,
                window,
                qgrid,
                phis,
            } => run::verify_rules_cmd(sig.as_deref(), *sizes, *window, *qgrid, phis, caps),
        },
        Cmd::Pairing {
            input,
            sig,
            phi,
            window,
        } => run::pairing_cmd(input, sig.as_deref(), phi, *window, caps),
        Cmd::Prob { which } => match which {
            ProbCmd::Sat {
                input,
                sig,
                pi,
                window,
            } => run::prob_sat_cmd(input, sig.as_deref(), pi, *window, caps),
        },
    }
}

fn render(rendered: &Rendered, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&rendered.report.to_json())
            .expect("report serializes")),
        Format::Table => {
            let mut lines = vec![format!(
                "{} [{}]",
                rendered.report.command,
                rendered.report.status.label()
            )];
            lines.extend(rendered.table.iter().cloned());
            if let Some(ce) = &rendered.report.counterexample {
                lines.push(format!("counterexample: {ce}"));
            }
            Ok(lines.join("\n"))
        }
        Format::Dot => rendered.dot.clone().ok_or_else(|| {
            CliError::Usage("dot output is only available for space-valued payloads".into())
        }),
    }
}

fn main() {
    let cli = Cli::parse();
    let caps = build_caps(&cli);
    match dispatch(&cli, &caps) {
        Ok(rendered) => match render(&rendered, cli.format) {
            Ok(text) => {
                println!("{text}");
                std::process::exit(rendered.report.status.exit_code());
            }
            Err(e) => fail(e),
        },
        Err(e) => fail(e),
    }
}

fn fail(e: CliError) -> ! {
    let doc = json!({
        "schema": SCHEMA,
        "status": e.status().label(),
        "message": e.message(),
    });
    println!("{}", serde_json::to_string_pretty(&doc).expect("error serializes"));
    eprintln!("error: {}", e.message());
    std::process::exit(e.exit_code());
}
