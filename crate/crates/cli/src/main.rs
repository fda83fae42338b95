//! `strelkit`: command-line front end for string algebras, linear relations
//! and Kronecker modules.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod load;
mod report;

#[derive(Parser)]
#[command(name = "strelkit", version, about = "String algebras, linear relations and Kronecker modules")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Clone)]
struct AlgebraArg {
    /// Presentation file, or one of the built-ins `lambda2`, `truncated-loops`, `a1`.
    #[arg(long, global = true, default_value = "lambda2")]
    algebra: String,
}

#[derive(Subcommand)]
enum Verb {
    /// Check the string-algebra axioms of a presentation file.
    Validate { file: String },
    /// Word utilities.
    Word {
        #[command(subcommand)]
        op: WordOp,
        #[command(flatten)]
        algebra: AlgebraArg,
    },
    /// Sharp/flat calculus of a relation file.
    Rel { op: RelOp, file: String },
    /// Kronecker modules.
    Kron {
        #[command(subcommand)]
        op: KronOp,
    },
    /// String and band modules.
    Module {
        #[command(subcommand)]
        op: ModuleOp,
        #[command(flatten)]
        algebra: AlgebraArg,
    },
    /// Evaluate a refined functor on a representation.
    Functor {
        kind: FunctorKind,
        /// The word `B`.
        b: String,
        /// The word `D`.
        d: String,
        /// Representation file.
        #[arg(long)]
        module: String,
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Use the opposite sign table.
        #[arg(long)]
        negate_signs: bool,
    },
    /// Decide Σ-pure-injectivity of M(C); exit status 1 when the answer is no.
    Sigma {
        word: String,
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Print the side-word families and, for a negative answer, a 10-step descending chain.
        #[arg(long)]
        certificate: bool,
    },
    /// List finite words up to inversion with dim M(C) and indecomposability.
    Enumerate {
        #[arg(long)]
        max_len: usize,
        #[command(flatten)]
        algebra: AlgebraArg,
    },
}

#[derive(Subcommand)]
enum WordOp {
    /// Validate a word and print its canonical form.
    Check { word: String },
    /// The inverse word `C^-1`.
    Inverse { word: String },
    /// Compare two words of the same head and sign.
    Compare { a: String, b: String },
    /// `C_{<=i}`, `C_{>i}` and the side words at position `i`.
    Slice {
        word: String,
        #[arg(allow_hyphen_values = true)]
        i: i64,
    },
    /// The shifted word `C[n]` of a two-sided word.
    Shift {
        word: String,
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// Report the period of a word, if any.
    Periodic { word: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum RelOp {
    Sharpflat,
    Split,
    Taction,
}

#[derive(Subcommand)]
enum KronOp {
    /// Decompose a Kronecker module file into standard blocks.
    Decompose { file: String },
}

#[derive(Subcommand)]
enum ModuleOp {
    /// The string module `M(C)`.
    String {
        word: String,
    },
    /// The band module `M(C, T)` for a periodic word and an automorphism matrix.
    Band {
        word: String,
        #[arg(long)]
        t_matrix: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctorKind {
    #[value(name = "F")]
    F,
    #[value(name = "G")]
    G,
}

fn run(cli: Cli) -> anyhow::Result<report::Report> {
    use commands as c;
    match cli.verb {
        Verb::Validate { file } => c::validate(&file),
        Verb::Word { op, algebra } => {
            let p = load::presentation(&algebra.algebra)?;
            match op {
                WordOp::Check { word } => c::word_check(&p, &word),
                WordOp::Inverse { word } => c::word_inverse(&p, &word),
                WordOp::Compare { a, b } => c::word_compare(&p, &a, &b),
                WordOp::Slice { word, i } => c::word_slice(&p, &word, i),
                WordOp::Shift { word, n } => c::word_shift(&p, &word, n),
                WordOp::Periodic { word } => c::word_periodic(&p, &word),
            }
        }
        Verb::Rel { op, file } => {
            let rel = load::relation(&file)?;
            match op {
                RelOp::Sharpflat => c::rel_sharpflat(&rel),
                RelOp::Split => c::rel_split(&rel),
                RelOp::Taction => c::rel_taction(&rel),
            }
        }
        Verb::Kron { op: KronOp::Decompose { file } } => c::kron_decompose(&load::kronecker(&file)?),
        Verb::Module { op, algebra } => {
            let p = load::presentation(&algebra.algebra)?;
            match op {
                ModuleOp::String { word } => c::module_string(&p, &word),
                ModuleOp::Band { word, t_matrix } => c::module_band(&p, &word, &t_matrix),
            }
        }
        Verb::Functor { kind, b, d, module, algebra, negate_signs } => {
            let p = load::presentation(&algebra.algebra)?;
            c::functor(&p, matches!(kind, FunctorKind::G), &b, &d, &module, negate_signs)
        }
        Verb::Sigma { word, algebra, certificate } => {
            let p = load::presentation(&algebra.algebra)?;
            c::sigma(&p, &word, certificate)
        }
        Verb::Enumerate { max_len, algebra } => c::enumerate(&load::presentation(&algebra.algebra)?, max_len),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let machine = cli.machine;
    match run(cli) {
        Ok(r) => r.emit(machine),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
