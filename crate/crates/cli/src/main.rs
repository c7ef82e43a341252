//! `bihom`: check, construct, cohomology, deformation and search commands
//! over algebra documents.
//!
//! Exit status: 0 when every check passes, 1 when a mathematical check or
//! hypothesis fails, 2 for unreadable or invalid input.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use bihom_core::cohomology::Variant;
use bihom_core::constructions::{CollapseOrder, XiTerm};
use bihom_core::search::{Target, DEFAULT_BUDGET};
use bihom_core::Field;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::io::{parse_field, Format};

#[derive(Parser)]
#[command(name = "bihom", version, about = "Exact computations with BiHom-Novikov algebras")]
struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Field for documents that do not declare one (`rational` or `prime:p`).
    #[arg(long, global = true, env = "BIHOM_FIELD", default_value = "rational", value_parser = parse_field)]
    field: Field,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check class membership; defaults to the document's expected kinds.
    Check {
        /// Document path, or `bundled:NAME`.
        input: String,
        /// Class to check; repeatable.
        #[arg(long = "class")]
        classes: Vec<String>,
    },
    /// Build a new algebra from a document.
    Construct(ConstructArgs),
    /// Dimensions of the cochain, cocycle and coboundary spaces.
    Cohomology {
        input: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Composition)]
        variant: VariantArg,
    },
    /// Truncated formal deformations.
    Deform {
        #[command(subcommand)]
        command: DeformCommand,
    },
    /// Exhaustive search over the prime field given by `--field`.
    Search(SearchArgs),
    /// The bundled example documents.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Composition,
    Literal,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Composition => Variant::Composition,
            VariantArg::Literal => Variant::Literal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum XiTermArg {
    Twisted,
    Plain,
}

impl From<XiTermArg> for XiTerm {
    fn from(v: XiTermArg) -> Self {
        match v {
            XiTermArg::Twisted => XiTerm::Twisted,
            XiTermArg::Plain => XiTerm::Plain,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CollapseArg {
    AlphaBeta,
    BetaAlpha,
}

impl From<CollapseArg> for CollapseOrder {
    fn from(v: CollapseArg) -> Self {
        match v {
            CollapseArg::AlphaBeta => CollapseOrder::AlphaBeta,
            CollapseArg::BetaAlpha => CollapseOrder::BetaAlpha,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    QuadraticNovikov,
    Rigid,
    RotaBaxter,
}

impl From<TargetArg> for Target {
    fn from(v: TargetArg) -> Self {
        match v {
            TargetArg::QuadraticNovikov => Target::QuadraticNovikov,
            TargetArg::Rigid => Target::Rigid,
            TargetArg::RotaBaxter => Target::RotaBaxter,
        }
    }
}

/// Matrix arguments accept `id`, `zero`, `diag:a,b` or rows `a,b;c,d`.
#[derive(Args)]
#[command(group(clap::ArgGroup::new("construction").required(true)))]
struct ConstructArgs {
    input: String,
    /// `x * y = alpha(x) D(beta(y))` on a commutative associative algebra.
    #[arg(long, group = "construction")]
    derivation_product: bool,
    /// Derivation product plus `xi` times the twisted product.
    #[arg(long, group = "construction")]
    xi_family: bool,
    /// The sub-adjacent BiHom-Lie bracket.
    #[arg(long, group = "construction")]
    subadjacent: bool,
    /// `x * y = alpha(x) beta(y)` on a Novikov algebra.
    #[arg(long, group = "construction")]
    yau_twist: bool,
    /// Untwist an involutive algebra.
    #[arg(long, group = "construction")]
    involutive_collapse: bool,
    /// The Lie bracket `[alpha^-1 x, beta^-1 y]` of a regular algebra.
    #[arg(long, group = "construction")]
    regular_lie: bool,
    /// `x * y = P(x) y + x P(y) + weight x y`.
    #[arg(long, group = "construction")]
    rota_baxter: bool,
    /// Sub-adjacent bracket with the form `B(alpha x, y)`.
    #[arg(long, group = "construction")]
    induced_form: bool,
    /// The bracket `[alpha x, beta y]` with the form `B(alpha x, y)`.
    #[arg(long, group = "construction")]
    quadratic_hom_lie: bool,
    /// Involutive collapse keeping the bilinear form.
    #[arg(long, group = "construction")]
    quadratic_collapse: bool,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    /// Defaults to the document's derivation block.
    #[arg(long)]
    derivation: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
    #[arg(long, value_enum, default_value_t = XiTermArg::Twisted)]
    xi_term: XiTermArg,
    /// Defaults to the document's rota_baxter block.
    #[arg(long)]
    operator: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
    #[arg(long, value_enum, default_value_t = CollapseArg::AlphaBeta)]
    collapse_order: CollapseArg,
    /// Write the document here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum DeformCommand {
    /// Deformation equations up to `--order` (default: the document's order).
    Verify {
        input: String,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Whether `G_1` is a 2-cocycle.
    Cocycle { input: String },
    /// Whether two deformations of one base have cohomologous `G_1`.
    Compare { first: String, second: String },
    /// The `H^2 = 0` rigidity certificate.
    Rigidity { input: String },
    /// Transport along `phi_t = id + phi_1 t + ...`.
    Transport {
        input: String,
        /// `phi_1`, `phi_2`, ... in order; repeatable.
        #[arg(long = "phi", required = true)]
        phis: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long = "dim")]
    dimension: usize,
    #[arg(long, value_enum)]
    target: TargetArg,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Report every instance rather than one per isomorphism class.
    #[arg(long)]
    all: bool,
    /// Base algebra for the rota-baxter target.
    #[arg(long)]
    base: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
    /// Directory for the emitted documents.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CorpusCommand {
    List,
    Show { name: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
