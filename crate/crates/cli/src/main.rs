mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "qbbw", version, about = "Build, verify and compare gl(m|n) and U_q(gl(m|n)) modules")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a module and write its JSON artifact.
    Build(BuildCmd),
    /// Check a family of identities and report pass/fail per identity.
    Verify(VerifyCmd),
    /// Compare dimension and character of two artifacts.
    Compare(CompareCmd),
    /// Print the character of a module.
    Character(CharacterCmd),
    /// Dump the operators of the ambient realization.
    Export(BuildCmd),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Kac,
    Bbw,
    /// Classical realization on a projective patch.
    #[value(name = "prop2")]
    Projective,
    /// Classical Kac-type realization on a Grassmann algebra.
    #[value(name = "prop3")]
    KacType,
    /// Quantum polynomial realization with parameters c and k.
    #[value(name = "prop4")]
    Polynomial,
    /// Quantum realization induced from the Levi fiber.
    #[value(name = "prop5")]
    Induced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Corrected,
    Literal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Relations,
    QuantumRelations,
    Realization,
    Jacobi,
    #[value(name = "lemma1")]
    RootVectors,
    TensorOperator,
    Factorization,
    OmnOa,
    Coherent,
}

#[derive(Args, Clone, Debug)]
pub struct Target {
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Highest weight, e.g. "1,0|2".
    #[arg(long)]
    pub lambda: Option<String>,
    #[arg(long, value_enum, default_value = "kac")]
    pub route: RouteArg,
    /// Build the quantum module on the kac route.
    #[arg(long)]
    pub quantum: bool,
    /// Parameter c of the polynomial realization.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub c: i64,
    /// Degree k of the polynomial realization.
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    /// Largest truncation degree tried by the projective routes.
    #[arg(long)]
    pub degree_cap: Option<u32>,
    /// Largest closure dimension.
    #[arg(long, default_value_t = 200_000)]
    pub limit: usize,
    /// Evaluate matrices at a rational q, e.g. "3/2".
    #[arg(long)]
    pub eval_q: Option<String>,
    #[arg(long, value_enum, default_value = "corrected")]
    pub convention: ConventionArg,
}

#[derive(Args)]
struct BuildCmd {
    #[command(flatten)]
    target: Target,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyCmd {
    #[arg(long, value_enum, default_value = "relations")]
    suite: Suite,
    #[command(flatten)]
    target: Target,
    /// Verify the module stored in an artifact instead of building one.
    #[arg(long)]
    artifact: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CompareCmd {
    a: PathBuf,
    b: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CharacterCmd {
    #[command(flatten)]
    target: Target,
    #[arg(long)]
    artifact: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Build(c) => run::build(&c.target).and_then(|v| run::emit(&v, c.output.as_deref()).map(|_| 0)),
        Cmd::Export(c) => run::export(&c.target).and_then(|v| run::emit(&v, c.output.as_deref()).map(|_| 0)),
        Cmd::Verify(c) => run::verify(c.suite, &c.target, c.artifact.as_deref())
            .and_then(|(v, ok)| run::emit(&v, c.output.as_deref()).map(|_| if ok { 0 } else { 1 })),
        Cmd::Compare(c) => run::compare(&c.a, &c.b).and_then(|(v, same)| run::emit(&v, c.output.as_deref()).map(|_| if same { 0 } else { 1 })),
        Cmd::Character(c) => run::character(&c.target, c.artifact.as_deref()).and_then(|v| run::emit(&v, c.output.as_deref()).map(|_| 0)),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(run::exit_code(&e))
        }
    }
}
