//! Exact analysis of finite point configurations on spheres: balance under all
//! pair potentials, spherical design strength, isometry groups and
//! group-balance, named constructions, lattice kissing configurations, and a
//! floating-point companion for energies and forces.
//!
//! Configurations are carried as rational Gram matrices; every verdict except
//! those in [`numerics`] is computed in exact arithmetic.

#![allow(clippy::needless_range_loop)]

pub mod assets;
pub mod balance;
pub mod config;
pub mod constructors;
pub mod designs;
pub mod error;
pub mod exact;
pub mod io;
pub mod lattice;
pub mod numerics;
pub mod report;
pub mod symmetry;

pub use balance::{check_balanced, check_balanced_euclidean, shell_decomposition, BalanceReport, ShellDecomposition};
pub use config::{inner_product_spectrum, Configuration, GramMatrix};
pub use constructors::{EigenChoice, Polytope, PolytopeConfig, SrgParams};
pub use designs::{design_strength, theorem1_check, DesignVerdict, TheoremOneVerdict};
pub use error::{Error, Result};
pub use exact::{Matrix, Rational};
pub use io::{ConfigInput, EuclideanInput};
pub use lattice::{LatticeGram, ShortVectorSet};
pub use numerics::{CoordinateSet, ForceReport};
pub use report::AnalysisReport;
pub use symmetry::{ColoredGraph, GroupSummary, Permutation, PermutationGroup};
