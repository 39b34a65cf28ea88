use clap::{Args, Parser, Subcommand, ValueEnum};
use spinpic_core::{Error, GeneratorId, Result, TorsionCase};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "spinpic",
    version,
    about = "Exact Picard-group relations on moduli of r-spin curves"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

/// Exactly one of `--g N` or `--generic-g`.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct GenusArgs {
    /// Finite genus (at least 2).
    #[arg(long)]
    pub g: Option<u64>,
    /// Residue-mode basis valid for every large genus.
    #[arg(long)]
    pub generic_g: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Special-case relation table for level r, checked against the printed rows.
    Table {
        #[arg(long)]
        r: u64,
    },
    /// Main relation for one divisor s of r, or for all of them.
    Relation {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: Option<u64>,
        #[command(flatten)]
        genus: GenusArgs,
    },
    /// Relation built in the level-s basis and pulled back, compared with the main one.
    Bis {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: Option<u64>,
        #[command(flatten)]
        genus: GenusArgs,
    },
    /// Pairing-calculus derivation of the main relation with its proof trace.
    Derive {
        #[arg(long)]
        r: u64,
        /// Defaults to r.
        #[arg(long)]
        s: Option<u64>,
        #[command(flatten)]
        genus: GenusArgs,
    },
    /// Boundary strata with node orders, ramification and component counts.
    Boundary {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        r: u64,
    },
    /// Number of irreducible components of the pointed spin stack.
    Components {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        r: u64,
        /// Marking types, comma separated.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        m: Vec<i64>,
    },
    /// Torsion certificate on the open locus.
    Torsion {
        #[arg(long)]
        r: u64,
        #[arg(long, value_enum)]
        case: CaseArg,
        /// Intermediate level for cases 3 and 4.
        #[arg(long)]
        s: Option<u64>,
    },
    /// Presented open-locus group and its invariant factors.
    Presentation {
        #[arg(long)]
        r: u64,
    },
    /// Genus-one Chow rings, component presentation and order bounds.
    Genus1 {
        #[arg(long)]
        r: u64,
    },
    /// Pull a level-s class back to level r and compare with the direct computation.
    Pullback {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: u64,
        /// delta | pairing | main | lambda | gamma:J | alpha:I | sigma:K
        #[arg(long)]
        symbol: String,
        #[command(flatten)]
        genus: GenusArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    #[value(name = "4")]
    Four,
    Composite,
}

impl From<CaseArg> for TorsionCase {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::One => TorsionCase::EvenLevel,
            CaseArg::Two => TorsionCase::DivisibleByThree,
            CaseArg::Three => TorsionCase::EvenQuotient,
            CaseArg::Four => TorsionCase::QuotientDivisibleByThree,
            CaseArg::Composite => TorsionCase::Composite,
        }
    }
}

/// Class named by `--symbol`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbol {
    Delta,
    Pairing,
    Main,
    Generator(GeneratorId),
}

impl Symbol {
    pub fn parse(raw: &str) -> Result<Symbol> {
        let bad = || {
            Error::usage(format!("unknown symbol {raw:?}; expected delta, pairing, main, lambda, gamma:J, alpha:I or sigma:K"))
        };
        let index = |v: &str| v.parse::<u64>().map_err(|_| bad());
        Ok(match raw.split_once(':') {
            None => match raw {
                "delta" => Symbol::Delta,
                "pairing" => Symbol::Pairing,
                "main" => Symbol::Main,
                "lambda" => Symbol::Generator(GeneratorId::Lambda),
                _ => return Err(bad()),
            },
            Some(("gamma", v)) => Symbol::Generator(GeneratorId::Gamma(index(v)?)),
            Some(("alpha", v)) => Symbol::Generator(GeneratorId::Alpha(index(v)?)),
            Some(("sigma", v)) => Symbol::Generator(GeneratorId::AlphaResidue(index(v)?)),
            Some(_) => return Err(bad()),
        })
    }
}
