//! Command-line parsing into a validated [`RunConfig`].

use std::ffi::OsString;
use std::path::PathBuf;

use cechss::RingSpec;
use clap::{Args, Parser, Subcommand};

/// What to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    /// The E2 page up to a total degree, optionally with the positional
    /// stability report.
    E2 { stability: bool },
    /// The total differential out of one bidegree.
    D1,
    /// The closed-form four-manifold report.
    FourManifold,
    /// Slice dimensions of the presented algebra against brute force.
    Oracle { max_vertices: usize },
    /// A fixed battery of internal consistency checks.
    Selftest,
}

/// Where the coefficient algebra comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSource {
    /// `sphere:d`, `product_spheres:k,l` or `four_manifold:[[..],..]`
    Builtin(String),
    /// a JSON algebra file
    File(PathBuf),
}

impl AlgebraSource {
    const BUILTIN_KINDS: [&'static str; 3] = ["sphere", "product_spheres", "four_manifold"];

    pub fn parse(text: &str) -> AlgebraSource {
        match text.split_once(':') {
            Some((kind, _)) if Self::BUILTIN_KINDS.contains(&kind.trim()) => AlgebraSource::Builtin(text.to_string()),
            _ => AlgebraSource::File(PathBuf::from(text)),
        }
    }
}

/// A fully validated invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    /// absent only for `selftest`, which then uses its built-in list
    pub algebra: Option<AlgebraSource>,
    pub ring: RingSpec,
    pub max_degree: usize,
    /// required for `d1` and only accepted there
    pub bidegree: Option<(i64, usize)>,
    pub output: Option<PathBuf>,
    /// append E1 basis labels to an `e2` table
    pub emit_labels: bool,
    pub parallel: bool,
}

#[derive(Debug, Parser)]
#[command(
    name = "cechss",
    version,
    about = "Exact E2 pages of the Čech spectral sequence for Emb(S¹, M)"
)]
struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Built-in algebra (`sphere:5`, `product_spheres:13,8`,
    /// `four_manifold:[[1,0],[0,1]]`) or the path of an algebra file
    #[arg(long, short = 'a')]
    algebra: String,
    /// Coefficient ring: Q, Z or F<p> for a prime p
    #[arg(long, short = 'r', default_value = "Q", value_parser = parse_ring)]
    ring: RingSpec,
    /// Write the result here instead of standard output
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
    /// Run table computations on a worker pool (capped by CECHSS_THREADS)
    #[arg(long)]
    parallel: bool,
}

#[derive(Debug, Subcommand)]
enum CommandArgs {
    /// Print the nonzero E2 entries of total degree at most T
    E2 {
        #[command(flatten)]
        common: CommonArgs,
        /// Largest total degree p+q to compute
        #[arg(long, short = 't', default_value_t = 9)]
        max_degree: usize,
        /// Append the positional stability report
        #[arg(long)]
        stability: bool,
        /// Append the E1 basis labels of every nonzero bidegree
        #[arg(long)]
        emit_labels: bool,
    },
    /// Dump the matrix of td out of one bidegree
    D1 {
        #[command(flatten)]
        common: CommonArgs,
        /// Source bidegree `p,q`, e.g. `-3,21`
        #[arg(long, allow_hyphen_values = true, value_parser = parse_bidegree)]
        bidegree: (i64, usize),
    },
    /// Evaluate the four-manifold criterion from the intersection form
    #[command(name = "fourmanifold")]
    FourManifold {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compare slice dimensions with a brute-force computation
    Oracle {
        #[command(flatten)]
        common: CommonArgs,
        /// Largest number of vertices to compare
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
    },
    /// Run the built-in consistency checks
    Selftest {
        /// Restrict the checks to one algebra
        #[arg(long, short = 'a')]
        algebra: Option<String>,
        /// Coefficient ring used with --algebra
        #[arg(long, short = 'r', default_value = "Q", value_parser = parse_ring)]
        ring: RingSpec,
    },
}

fn parse_ring(s: &str) -> Result<RingSpec, String> {
    s.parse::<RingSpec>().map_err(|e| e.to_string())
}

fn parse_bidegree(s: &str) -> Result<(i64, usize), String> {
    let (p, q) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `p,q`, got `{s}`"))?;
    let p: i64 = p.trim().parse().map_err(|_| format!("bad p in `{s}`"))?;
    let q: usize = q.trim().parse().map_err(|_| format!("bad q in `{s}`"))?;
    if p > 0 {
        return Err(format!("p must be ≤ 0 in `{s}`"));
    }
    Ok((p, q))
}

/// Parses an argument vector (including the program name).
pub fn parse_config<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let common = |c: CommonArgs| (Some(AlgebraSource::parse(&c.algebra)), c.ring, c.output, c.parallel);
    let config = match cli.command {
        CommandArgs::E2 {
            common: c,
            max_degree,
            stability,
            emit_labels,
        } => {
            let (algebra, ring, output, parallel) = common(c);
            RunConfig {
                command: Command::E2 { stability },
                algebra,
                ring,
                max_degree,
                bidegree: None,
                output,
                emit_labels,
                parallel,
            }
        }
        CommandArgs::D1 { common: c, bidegree } => {
            let (algebra, ring, output, parallel) = common(c);
            RunConfig {
                command: Command::D1,
                algebra,
                ring,
                max_degree: 0,
                bidegree: Some(bidegree),
                output,
                emit_labels: false,
                parallel,
            }
        }
        CommandArgs::FourManifold { common: c } => {
            let (algebra, ring, output, parallel) = common(c);
            RunConfig {
                command: Command::FourManifold,
                algebra,
                ring,
                max_degree: 0,
                bidegree: None,
                output,
                emit_labels: false,
                parallel,
            }
        }
        CommandArgs::Oracle { common: c, max_vertices } => {
            let (algebra, ring, output, parallel) = common(c);
            RunConfig {
                command: Command::Oracle { max_vertices },
                algebra,
                ring,
                max_degree: 0,
                bidegree: None,
                output,
                emit_labels: false,
                parallel,
            }
        }
        CommandArgs::Selftest { algebra, ring } => RunConfig {
            command: Command::Selftest,
            algebra: algebra.as_deref().map(AlgebraSource::parse),
            ring,
            max_degree: 0,
            bidegree: None,
            output: None,
            emit_labels: false,
            parallel: false,
        },
    };
    Ok(config)
}
