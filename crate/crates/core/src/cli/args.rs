use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineKind {
    Delta,
    Naive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Recognise Hilbert polynomials and recover their Macaulay partition λ.
#[derive(Debug, Parser)]
#[command(name = "hilbert-lambda", version)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Recovery engine.
    #[arg(long, global = true, value_enum, default_value_t = EngineKind::Delta)]
    pub engine: EngineKind,

    /// Largest partition size the naive engine searches.
    #[arg(long = "r-max", global = true, default_value_t = 10,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub r_max: u64,

    /// Number of ring variables; reports whether λ_1 <= N.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub ambient: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for `random`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[arg(short, long, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recover λ from a polynomial. Reads one polynomial per line from stdin
    /// when no polynomial (or "-") is given.
    Recover {
        #[arg(allow_hyphen_values = true)]
        polynomial: Option<String>,
    },
    /// Print the Hilbert polynomial of a partition, e.g. "(2^3,1)" or "[2,2,2,1]".
    Build {
        #[arg(allow_hyphen_values = true)]
        partition: String,
    },
    /// Exit 0 iff the polynomial is a Hilbert polynomial. Reads stdin like
    /// `recover` when no polynomial is given.
    Check {
        #[arg(allow_hyphen_values = true)]
        polynomial: Option<String>,
    },
    /// Draw a uniformly random partition with λ_1 <= MAX_PART and r <= MAX_LEN.
    Random {
        #[arg(default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        max_part: u64,
        #[arg(default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        max_len: u64,
        /// Number of draws.
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Time both engines on λ = (DEGREE + 1, DEGREE, ..., 1).
    Bench {
        #[arg(default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        degree: u64,
        #[arg(default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        reps: u64,
    },
}
