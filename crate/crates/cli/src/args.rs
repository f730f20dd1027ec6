//! Command-line argument definitions.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};

use crate::{CharacterSelector, Command, FieldSelector, Format, PresentationKind, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "milnor",
    version,
    about = "Exact first homology of Milnor fibers of the deleted monomial arrangements A_p"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Sub,

    /// Output format: text or structured (JSON).
    #[arg(long, global = true, default_value = "text")]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<String>,

    /// Worker threads for independent rank computations.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Suppress progress messages on standard error.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Debug, Args)]
struct ArrangementArgs {
    /// The prime p of the arrangement A_p.
    #[arg(long = "p")]
    p: usize,

    /// Multiplicities in hyperplane order H1,H2,H12:1..,H13:1..,H23:1..
    #[arg(long, value_delimiter = ',')]
    mult: Option<Vec<u64>>,

    /// deconed, cone or alternate (odd p).
    #[arg(long, default_value = "deconed")]
    presentation: PresentationKind,
}

#[derive(Debug, Args)]
struct CharacterArgs {
    /// Use the character lambda_a^(N/k); k must divide N.
    #[arg(long, conflicts_with_all = ["char_file", "exps"])]
    k: Option<u64>,

    /// Read the character from a JSON file.
    #[arg(long = "char-file", value_name = "PATH", conflicts_with = "exps")]
    char_file: Option<String>,

    /// Explicit exponents, one per generator, of a primitive root of order --order.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    exps: Option<Vec<i64>>,

    /// Order of the root for --exps (default: N of the arrangement).
    #[arg(long, requires = "exps")]
    order: Option<u64>,

    /// Q(zeta) or F<q> for a prime q.
    #[arg(long)]
    field: Option<FieldSelector>,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Print a presentation of the fundamental group.
    Present {
        #[command(flatten)]
        arr: ArrangementArgs,
    },
    /// Print the Alexander matrix, or its evaluation at a character.
    Alexander {
        #[command(flatten)]
        arr: ArrangementArgs,
        #[command(flatten)]
        ch: CharacterArgs,
    },
    /// Depth of a character: dim H1(G; K_t).
    Depth {
        #[command(flatten)]
        arr: ArrangementArgs,
        #[command(flatten)]
        ch: CharacterArgs,
    },
    /// Test sample points of the one-dimensional components C_i.
    Charvar {
        #[arg(long = "p")]
        p: usize,
        /// Q(zeta) or F<q>.
        #[arg(long)]
        field: Option<FieldSelector>,
        /// The torus parameter u runs over the roots of unity of this order.
        #[arg(long, default_value_t = 3)]
        u_order: u64,
        /// Only the component C_i.
        #[arg(long)]
        component: Option<usize>,
    },
    /// First homology of the Milnor fiber: integral, or over --field.
    Milnor {
        #[arg(long = "p")]
        p: usize,
        #[arg(long, value_delimiter = ',')]
        mult: Option<Vec<u64>>,
        #[arg(long)]
        field: Option<FieldSelector>,
    },
    /// Smith normal form of an integer matrix file (sparse or dense text).
    Snf {
        file: String,
    },
    /// Replay all known checks for A_p.
    Verify {
        #[arg(long = "p")]
        p: usize,
        /// Refuse primes above this bound.
        #[arg(long, default_value_t = 5)]
        max_p: usize,
    },
}

fn character_selector(ch: &CharacterArgs) -> Option<CharacterSelector> {
    if let Some(k) = ch.k {
        return Some(CharacterSelector::Power { k });
    }
    if let Some(path) = &ch.char_file {
        return Some(CharacterSelector::File { path: path.clone() });
    }
    ch.exps.as_ref().map(|e| CharacterSelector::Exponents {
        order: ch.order.unwrap_or(0),
        exponents: e.clone(),
    })
}

impl Cli {
    pub fn into_config(self) -> RunConfig {
        let mut cfg = match self.command {
            Sub::Present { arr } => {
                let mut c = RunConfig::new(Command::Present, arr.p);
                c.multiplicities = arr.mult;
                c.presentation = arr.presentation;
                c
            }
            Sub::Alexander { arr, ch } => {
                let mut c = RunConfig::new(Command::Alexander, arr.p);
                c.multiplicities = arr.mult;
                c.presentation = arr.presentation;
                c.character = character_selector(&ch);
                c.field = ch.field;
                c
            }
            Sub::Depth { arr, ch } => {
                let mut c = RunConfig::new(Command::Depth, arr.p);
                c.multiplicities = arr.mult;
                c.presentation = arr.presentation;
                c.character = character_selector(&ch);
                c.field = ch.field;
                c
            }
            Sub::Charvar {
                p,
                field,
                u_order,
                component,
            } => {
                let mut c = RunConfig::new(Command::Charvar { u_order, component }, p);
                c.field = field;
                c
            }
            Sub::Milnor { p, mult, field } => {
                let mut c = RunConfig::new(Command::Milnor, p);
                c.multiplicities = mult;
                c.field = field;
                c
            }
            Sub::Snf { file } => RunConfig::new(Command::Snf { path: file }, 0),
            Sub::Verify { p, max_p } => RunConfig::new(Command::Verify { max_p }, p),
        };
        cfg.format = self.format;
        cfg.out = self.out;
        cfg.threads = self.threads;
        cfg.quiet = self.quiet;
        cfg
    }
}

/// Parses a full argument list (program name first).
pub fn parse_args<I, T>(args: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(args).map(Cli::into_config)
}
