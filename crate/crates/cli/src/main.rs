use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nl_dichromate_cli::{run, Command, InputKind, Oracle, OutputFormat, RunConfig};

/// NL-coflow, NL-flow and dichromate polynomials of digraphs and rational
/// matrices.
#[derive(Parser)]
#[command(name = "nlpoly", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest number of arcs or elements to enumerate.
    #[arg(long, global = true, default_value_t = 16)]
    cap: usize,

    /// Route for `coflow`; digraphs default to graphic, matrices to matroid.
    #[arg(long, global = true, value_enum)]
    oracle: Option<OracleArg>,

    /// Input format; detected from the contents when omitted.
    #[arg(long, global = true, value_enum)]
    input_kind: Option<Kind>,
}

#[derive(Subcommand)]
enum Cmd {
    /// NL-coflow polynomial ψ.
    Coflow { input: PathBuf },
    /// NL-flow polynomial φ.
    Flow { input: PathBuf },
    /// Dichromate Ω for a basis (lexicographically first by default).
    Dichromate {
        input: PathBuf,
        /// Comma-separated 1-based columns or arcs.
        #[arg(long, value_delimiter = ',')]
        basis: Option<Vec<usize>>,
    },
    /// Number of acyclic k-colorings, by enumeration.
    Colorings {
        input: PathBuf,
        #[arg(long)]
        k: u64,
    },
    /// Verify the structural identities on the input.
    Check { input: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Graphic,
    Matroid,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Digraph,
    Matrix,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, input, basis, k) = match cli.command {
        Cmd::Coflow { input } => (Command::Coflow, input, None, None),
        Cmd::Flow { input } => (Command::Flow, input, None, None),
        Cmd::Dichromate { input, basis } => (Command::Dichromate, input, basis, None),
        Cmd::Colorings { input, k } => (Command::Colorings, input, None, Some(k)),
        Cmd::Check { input } => (Command::Check, input, None, None),
    };
    let mut config = RunConfig::new(command, input);
    config.basis = basis;
    config.k = k;
    config.cap = cli.cap;
    config.format = match cli.format {
        Format::Text => OutputFormat::Text,
        Format::Json => OutputFormat::Json,
    };
    config.oracle = cli.oracle.map(|o| match o {
        OracleArg::Graphic => Oracle::Graphic,
        OracleArg::Matroid => Oracle::Matroid,
        OracleArg::Both => Oracle::Both,
    });
    config.input_kind = cli.input_kind.map(|k| match k {
        Kind::Digraph => InputKind::Digraph,
        Kind::Matrix => InputKind::Matrix,
    });

    let out = run(&config);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.status)
}
