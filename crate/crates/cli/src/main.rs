//! `tricat`: reads documents from files named by flags and writes one JSON
//! document to standard output.
//!
//! Exit codes: 0 success, 1 malformed input, 2 violated mathematical
//! condition, 3 internal failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod io;


#[derive(Parser)]
#[command(name = "tricat", version, about = "Chain complexes of abelian groups, fractions, butterflies and coherence paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Presentations of finitely generated abelian groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Length-3 complexes and chain maps.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// The derived hom group between two complexes.
    Dhom {
        /// Source complex.
        a: PathBuf,
        /// Target complex.
        b: PathBuf,
    },
    /// Fractions, roofs and diamonds.
    #[command(subcommand)]
    Frac(FracCmd),
    /// Butterflies between length-2 complexes.
    #[command(subcommand)]
    Butterfly(ButterflyCmd),
    /// Coherence paths and 2-cells.
    #[command(subcommand)]
    Coh(CohCmd),
    /// Built-in checks.
    #[command(subcommand)]
    Selftest(SelftestCmd),
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Smith normal form of a group's relation matrix.
    Snf(Input),
    /// Kernel of a hom, as its inclusion.
    Kernel(Input),
    /// Cokernel of a hom, as its projection.
    Cokernel(Input),
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// One cohomology group of a complex.
    Cohomology {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true, value_parser = clap::value_parser!(i32).range(-2..=0))]
        degree: i32,
    },
    /// Whether a chain map is a quasi-isomorphism.
    QuasiIso(Input),
    /// The long exact cohomology sequence of a short exact sequence.
    Les {
        /// Inclusion chain map.
        #[arg(long)]
        incl: PathBuf,
        /// Projection chain map.
        #[arg(long)]
        proj: PathBuf,
    },
}

#[derive(Subcommand)]
enum FracCmd {
    /// `second ∘ first`.
    Compose(Pair),
    /// The derived hom class of a fraction.
    Class(Input),
    /// Whether two fractions have the same class.
    Equiv(Pair),
    /// Validates a roof and compares the classes of its endpoints.
    RoofCheck(Input),
    /// Validates a diamond.
    DiamondCheck(Input),
}

#[derive(Subcommand)]
enum ButterflyCmd {
    /// Assembles and checks a butterfly, or strictifies a chain map.
    Make(MakeButterfly),
    /// `second ∘ first`.
    Compose(Pair),
    /// Whether both diagonals are short exact.
    Flippable(Input),
    /// The roof complex of a butterfly out of a product of truncations.
    RoofComplex(RoofComplexArgs),
}

#[derive(Subcommand)]
enum CohCmd {
    /// The shuffle path λ for positive words.
    Lambda(Words),
    /// λ followed by cancellation, for signed words.
    LambdaTilde(Words),
    /// The 2-cell comparing the two ways to merge three positive words.
    Psi(Words),
    /// The 2-cell relating λ to the braiding, for positive words.
    Phi(Words),
    /// ψ for signed words.
    PsiTilde(Words),
    /// φ for signed words.
    PhiTilde(Words),
}

#[derive(Subcommand)]
enum SelftestCmd {
    /// Runs the acceptance suite.
    Acceptance,
}

#[derive(Args)]
struct Input {
    /// Input document, `-` for standard input.
    #[arg(long, short)]
    input: PathBuf,
}

#[derive(Args)]
struct Pair {
    #[arg(long)]
    first: PathBuf,
    #[arg(long)]
    second: PathBuf,
}

#[derive(Args)]
struct MakeButterfly {
    /// A chain map between complexes with zero top term, to strictify.
    #[arg(long, conflicts_with_all = ["source", "target", "kappa", "iota", "rho", "jmath"])]
    strict: Option<PathBuf>,
    #[arg(long, requires_all = ["target", "kappa", "iota", "rho", "jmath"])]
    source: Option<PathBuf>,
    #[arg(long)]
    target: Option<PathBuf>,
    /// Hom from the source's degree -1 group into the center.
    #[arg(long)]
    kappa: Option<PathBuf>,
    /// Hom from the target's degree -1 group into the center.
    #[arg(long)]
    iota: Option<PathBuf>,
    /// Hom from the center onto the source's degree 0 group.
    #[arg(long)]
    rho: Option<PathBuf>,
    /// Hom from the center to the target's degree 0 group.
    #[arg(long)]
    jmath: Option<PathBuf>,
}

#[derive(Args)]
struct RoofComplexArgs {
    /// A strict chain map `A -> B`; builds its butterfly and degree-0 maps.
    #[arg(long, conflicts_with_all = ["butterfly", "a", "b", "to_a", "to_b"])]
    from_map: Option<PathBuf>,
    #[arg(long, requires_all = ["a", "b", "to_a", "to_b"])]
    butterfly: Option<PathBuf>,
    #[arg(long)]
    a: Option<PathBuf>,
    #[arg(long)]
    b: Option<PathBuf>,
    /// Hom from the target's degree 0 group to `A^0`.
    #[arg(long)]
    to_a: Option<PathBuf>,
    /// Hom from the target's degree 0 group to `B^0`.
    #[arg(long)]
    to_b: Option<PathBuf>,
}

#[derive(Args)]
struct Words {
    #[arg(long, allow_hyphen_values = true)]
    w1: String,
    #[arg(long, allow_hyphen_values = true)]
    w2: String,
    #[arg(long, allow_hyphen_values = true)]
    w3: Option<String>,
    /// Ordered letters, e.g. `a,b,c`.
    #[arg(long, conflicts_with = "lex")]
    alphabet: Option<String>,
    /// Use the letters of the words in lexicographic order.
    #[arg(long)]
    lex: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(out) => {
            print!("{}", out.doc.to_json());
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("tricat: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
