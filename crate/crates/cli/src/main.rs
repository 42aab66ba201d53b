use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

mod commands;

/// Key exchange from the class group action on ordinary elliptic curves.
#[derive(Parser, Debug)]
#[command(name = "crs", version, about)]
struct Cli {
    /// Seed for every random choice; outputs are reproducible under a fixed seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct ParamsArg {
    /// System parameter file.
    #[arg(long, env = "CRS_PARAMS")]
    params: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parameter search, classification and bound optimisation.
    #[command(subcommand)]
    Params(ParamsCommand),
    /// Generate a key pair: writes PREFIX.priv and PREFIX.pub.
    Keygen {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recompute the public key of a private key.
    Pub {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long = "priv")]
        private: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Derive the shared secret with a peer.
    Dh {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long = "priv")]
        private: PathBuf,
        #[arg(long = "pub")]
        public: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Use the peer key without validating it.
        #[arg(long)]
        no_validate: bool,
    },
    /// Check that a public key lies in the isogeny class with End = O_K.
    Validate {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long = "pub")]
        public: PathBuf,
    },
    /// Certify a toy parameter set against the class group oracle.
    Verify {
        #[command(flatten)]
        params: ParamsArg,
    },
    /// Orbit of E0 under the listed primes in DOT format.
    Graph {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time one isogeny step per prime and fit a cost model.
    Bench {
        #[command(flatten)]
        params: ParamsArg,
        /// Primes to time, comma separated; default all up to --ell-max.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 50)]
        ell_max: u64,
        #[arg(long, default_value_t = 3)]
        reps: u32,
        /// Cost file to write.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ParamsCommand {
    /// Search a toy curve and build a parameter set around it.
    Search {
        /// Field size in bits; a prime is drawn at random.
        #[arg(long, conflicts_with = "q")]
        bits: Option<u32>,
        /// Field characteristic.
        #[arg(long)]
        q: Option<u64>,
        /// Constraint file (`require ℓ`, `forbid supersingular`, `bits = k`, `budget = n`).
        #[arg(long)]
        constraints: Option<PathBuf>,
        /// Least number of Elkies primes with a nonzero bound.
        #[arg(long, default_value_t = 0)]
        require: usize,
        #[arg(long, default_value_t = 31)]
        ell_max: u64,
        #[arg(long, default_value_t = 13)]
        elkies_max: u64,
        #[arg(long, default_value_t = 3)]
        r_max: u32,
        /// Uniform walk bound.
        #[arg(long, default_value_t = 3)]
        bound: u64,
        /// Moduli tried in parallel.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Moduli tried before giving up.
        #[arg(long, default_value_t = 200)]
        attempts: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the primes up to --ell-max for a parameter file or a (q, t) pair.
    Classify {
        #[arg(long, env = "CRS_PARAMS", conflicts_with_all = ["q", "t"])]
        params: Option<PathBuf>,
        #[arg(long, requires = "t")]
        q: Option<String>,
        #[arg(long, requires = "q", allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, default_value_t = 1800)]
        ell_max: u64,
        #[arg(long, default_value_t = 9)]
        r_max: u32,
        #[arg(long, default_value_t = 380)]
        elkies_max: u64,
    },
    /// Optimise walk bounds for n bits of security, a key space of 2^(2n).
    Optimize {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long, default_value_t = 128)]
        security: u32,
        /// Cost file from `bench`; the published timings when omitted.
        #[arg(long)]
        cost: Option<PathBuf>,
        /// Parameter file with the new bounds.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
