//! Data shipped with the crate.

use crate::error::Result;
use crate::io::{parse_adjacency, parse_lattice};
use crate::lattice::LatticeGram;

pub const PAULUS_ADJACENCY: &str = include_str!("../assets/paulus_25_12_5_6.txt");
pub const D4_GRAM: &str = include_str!("../assets/d4.json");
pub const E8_GRAM: &str = include_str!("../assets/e8.json");
pub const K12_GRAM: &str = include_str!("../assets/k12.json");
pub const LEECH_GRAM: &str = include_str!("../assets/leech.json");

/// A (25, 12, 5, 6) strongly regular graph with trivial automorphism group.
pub fn paulus_adjacency() -> Vec<Vec<u8>> {
    parse_adjacency(PAULUS_ADJACENCY).expect("bundled adjacency matrix parses")
}

/// Bundled lattices by name: `z<N>`, `d4`, `e8`, `k12`, `leech`.
pub fn bundled_lattice(name: &str) -> Result<LatticeGram> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "d4" => parse_lattice(D4_GRAM),
        "e8" => parse_lattice(E8_GRAM),
        "k12" => parse_lattice(K12_GRAM),
        "leech" | "leech24" => parse_lattice(LEECH_GRAM),
        _ => match lower.strip_prefix('z').and_then(|d| d.parse::<usize>().ok()) {
            Some(n) if n > 0 => LatticeGram::integer(n),
            _ => Err(crate::Error::Parse(format!("unknown bundled lattice `{name}`"))),
        },
    }
}

/// Bundled lattices whose kissing number is a slow enumeration.
pub fn is_slow_lattice(name: &str) -> bool {
    matches!(name.to_ascii_lowercase().as_str(), "leech" | "leech24")
}
