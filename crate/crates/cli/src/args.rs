use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact analysis of point configurations on spheres.
///
/// Exit codes: 0 = property holds / success, 1 = property fails,
/// 2 = malformed input, 3 = resource limit.
#[derive(Debug, Parser)]
#[command(name = "balanced", version)]
pub struct Cli {
    /// Worker threads for parallel steps (balance checks, enumeration).
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a named configuration and write its JSON.
    Construct {
        #[command(subcommand)]
        what: Construct,
        /// Output file (default: stdout).
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Test a property of a configuration.
    Check {
        #[command(subcommand)]
        what: Check,
    },
    /// Isometry group of a configuration as JSON {order, generators, orbits}.
    Symmetry {
        file: PathBuf,
        /// Print only the order and the orbits.
        #[arg(long)]
        orbits: bool,
        /// Print the stabilizer of this point instead, with its fixed-subspace dimension.
        #[arg(long)]
        stabilizer: Option<usize>,
    },
    /// Inverse-power energy sum over pairs, |x - y|^(-s).
    Energy {
        file: PathBuf,
        #[arg(short = 's', long = "exponent")]
        s: f64,
    },
    /// Tangential components of the net forces for the r^(-s) potential.
    Force {
        file: PathBuf,
        #[arg(short = 's', long = "exponent")]
        s: f64,
    },
    /// Energy of the cube as one facet is rotated: the cube is a saddle.
    SaddleDemo {
        #[arg(short = 's', long = "exponent", default_value_t = 1.0)]
        s: f64,
        /// Sample count on (0, pi/4].
        #[arg(long, default_value_t = 90)]
        samples: usize,
    },
    /// Short vectors of a lattice (bundled name or lattice JSON file).
    Lattice {
        lattice: String,
        /// Norm to enumerate (default: the minimal norm).
        #[arg(long)]
        norm: Option<i64>,
        /// Include the vectors themselves, not just the count.
        #[arg(long)]
        vectors: bool,
        /// Permit enumerations known to take minutes (the Leech lattice).
        #[arg(long)]
        allow_slow: bool,
    },
    /// Full analysis report.
    Report {
        file: PathBuf,
        /// Largest design strength tested.
        #[arg(long, default_value_t = 12)]
        cap: usize,
        /// Tolerance for float-only configurations.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// Normalized edge midpoints of the regular n-simplex.
    SimplexMidpoints { n: usize },
    /// C7 with the tetrahedron {12, 34, 56, 78} inverted.
    C7prime,
    /// Spectral embedding of a strongly regular graph.
    SrgEmbedding {
        /// Adjacency text file, or `paulus` for the bundled (25,12,5,6) graph.
        graph: String,
        #[arg(long, value_enum, default_value_t = Eigen::R)]
        eigen: Eigen,
        /// Use the complement graph.
        #[arg(long)]
        complement: bool,
    },
    /// Minimal vectors of a lattice scaled to the unit sphere.
    Kissing {
        /// Bundled lattice (z<N>, d4, e8, k12, leech) or lattice JSON file.
        lattice: String,
        #[arg(long)]
        allow_slow: bool,
    },
    /// A configuration together with its antipodes.
    AntipodalUnion { file: PathBuf },
    /// cube, cross-polytope:N, simplex:N, poles-and-ring:K
    Polytope { name: String },
    /// The bundled (25,12,5,6) adjacency matrix as text.
    PaulusGraph {
        #[arg(long)]
        complement: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Eigen {
    R,
    S,
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// Shell-sum balance test (exit 1 if unbalanced).
    Balanced(FileArgs),
    /// Spherical design strength up to --cap.
    Design(CapArgs),
    /// Distance counts against design strength (exit 1 if the theorem does not apply).
    Theorem1(CapArgs),
    /// Stabilizer fixed-subspace test (exit 1 if not group-balanced).
    GroupBalanced { file: PathBuf },
    /// Euclidean centroid test for finite or periodic point sets (exit 1 if unbalanced).
    Euclidean { file: PathBuf },
    /// Strongly regular parameters of a graph (exit 1 if not strongly regular).
    Srg {
        /// Adjacency text file, or `paulus`.
        graph: String,
    },
}

#[derive(Debug, Args)]
pub struct FileArgs {
    pub file: PathBuf,
    /// Tolerance for float-only configurations.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct CapArgs {
    pub file: PathBuf,
    #[arg(long, default_value_t = 12)]
    pub cap: usize,
    /// Tolerance for float-only configurations.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}
