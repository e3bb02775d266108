use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ddbar_cli::commands::{self, Filtrations, PageOptions};
use ddbar_cli::report::Report;
use ddbar_cli::{Failure, Outcome};

#[derive(Parser)]
#[command(name = "ddbar", version, about = "Exact cohomology and page-1 classification of double complexes")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum FiltrationArg {
    Col,
    Row,
    Both,
}

#[derive(clap::Args, Clone, Copy)]
struct PageArgs {
    #[arg(long, value_enum, default_value_t = FiltrationArg::Both)]
    filtration: FiltrationArg,
    /// Last page to print.
    #[arg(long = "max-page")]
    max_page: Option<usize>,
}

impl PageArgs {
    fn options(self) -> PageOptions {
        let filtration = match self.filtration {
            FiltrationArg::Col => Filtrations::Column,
            FiltrationArg::Row => Filtrations::Row,
            FiltrationArg::Both => Filtrations::Both,
        };
        PageOptions { filtration, max_page: self.max_page }
    }
}

#[derive(Subcommand)]
enum Verb {
    /// Check the double-complex identities.
    Validate { input: String },
    /// Dolbeault, del, Bott-Chern, Aeppli and de Rham dimensions.
    Cohomology { input: String },
    /// Pages of the filtration spectral sequences.
    Fss {
        input: String,
        #[command(flatten)]
        pages: PageArgs,
    },
    /// Tables, spectral sequences, purity and the verdict.
    Classify {
        input: String,
        #[command(flatten)]
        pages: PageArgs,
    },
    /// Squares and zigzags with multiplicities.
    Decompose { input: String },
    /// A Lie algebra, its CE cohomology and its invariant bicomplex.
    Lie {
        input: String,
        /// Subalgebra file, or catalog:su2, for relative cohomology.
        #[arg(long)]
        sub: Option<String>,
        #[command(flatten)]
        pages: PageArgs,
    },
    /// The twisted complex of solvable data.
    Solv {
        input: String,
        #[command(flatten)]
        pages: PageArgs,
    },
    /// The complex of splitting-type data.
    Splitting {
        input: String,
        #[command(flatten)]
        pages: PageArgs,
    },
    /// The E_2 model of a semisimple algebra with given Betti numbers.
    Ssmodel {
        #[arg(long)]
        algebra: String,
        /// Comma-separated, starting with 1.
        #[arg(long)]
        betti: String,
        #[arg(long)]
        sub: Option<String>,
    },
    /// Seeded cross-route property checks.
    Selftest {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Where the first counterexample is written.
        #[arg(long, default_value = "selftest-counterexample.bicomplex")]
        dump: PathBuf,
    },
}

fn run(verb: Verb) -> Outcome<Report> {
    match verb {
        Verb::Validate { input } => commands::validate(&input),
        Verb::Cohomology { input } => commands::cohomology(&input),
        Verb::Fss { input, pages } => commands::fss(&input, pages.options()),
        Verb::Classify { input, pages } => commands::classify(&input, pages.options()),
        Verb::Decompose { input } => commands::decompose(&input),
        Verb::Lie { input, sub, pages } => commands::lie(&input, sub.as_deref(), pages.options()),
        Verb::Solv { input, pages } => commands::solv(&input, pages.options()),
        Verb::Splitting { input, pages } => commands::splitting(&input, pages.options()),
        Verb::Ssmodel { algebra, betti, sub } => {
            let b = ddbar::text::usize_list(&betti)
                .ok_or_else(|| Failure::parse(format!("--betti expects comma-separated counts, got `{betti}`")))?;
            commands::ssmodel(&algebra, &b, sub.as_deref())
        }
        Verb::Selftest { seed, count, dump } => commands::selftest(seed, count, &dump),
    }
}

fn emit(r: &Report, format: Format) {
    let text = match format {
        Format::Text => r.to_text(),
        Format::Machine => r.to_machine(),
    };
    let _ = std::io::stdout().write_all(text.as_bytes());
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
    match run(cli.verb) {
        Ok(r) => {
            emit(&r, cli.format);
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(r) = &f.report {
                emit(r, cli.format);
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
