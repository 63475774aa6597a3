//! One-stop analysis of a configuration.

use serde::Serialize;

use crate::balance::check_balanced;
use crate::config::{inner_product_spectrum, Configuration};
use crate::designs::{design_strength, design_strength_float, theorem1_check, theorem1_check_float};
use crate::error::Result;
use crate::exact::format_rational;
use crate::numerics::{check_balanced_float, CoordinateSet};
use crate::symmetry::{group_balance_with, isometry_group};

/// Verdicts for one configuration. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub label: Option<String>,
    pub n: usize,
    pub ambient_dim: usize,
    /// Distinct off-diagonal inner products; exact strings, or decimals in float mode.
    pub spectrum: Vec<String>,
    pub balanced: bool,
    pub design_strength: usize,
    pub cap: usize,
    pub distance_counts: Vec<usize>,
    pub theorem1_applies: bool,
    /// `None` in float mode, where no symmetry computation is done.
    pub symmetry_order: Option<String>,
    pub orbit_sizes: Option<Vec<usize>>,
    pub group_balanced: Option<bool>,
    pub witnesses: Option<Vec<usize>>,
    pub exact: bool,
}

impl AnalysisReport {
    fn assert_consistent(&self) {
        assert!(
            !self.theorem1_applies || self.balanced,
            "distance-count condition applies but configuration is unbalanced"
        );
        assert!(self.group_balanced != Some(true) || self.balanced, "group-balanced but unbalanced");
    }

    pub fn to_json(&self) -> String {
        crate::io::to_pretty(self)
    }
}

pub fn analyze(c: &Configuration, cap: usize) -> Result<AnalysisReport> {
    let balance = check_balanced(c);
    let design = design_strength(c, cap)?;
    let t1 = theorem1_check(c, cap)?;
    let group = isometry_group(c);
    let gb = group_balance_with(c, &group)?;
    let mut orbit_sizes: Vec<usize> = gb.orbits.iter().map(|o| o.orbit.len()).collect();
    orbit_sizes.sort_unstable();
    let r = AnalysisReport {
        label: c.label().map(str::to_string),
        n: c.len(),
        ambient_dim: c.ambient_dim(),
        spectrum: inner_product_spectrum(c).iter().map(format_rational).collect(),
        balanced: balance.balanced,
        design_strength: design.strength,
        cap,
        distance_counts: t1.per_point_k.clone(),
        theorem1_applies: t1.applies,
        symmetry_order: Some(group.order().to_string()),
        orbit_sizes: Some(orbit_sizes),
        group_balanced: Some(gb.group_balanced),
        witnesses: Some(gb.witnesses),
        exact: true,
    };
    r.assert_consistent();
    Ok(r)
}

/// Float-mode analysis for configurations with irrational inner products.
pub fn analyze_float(p: &CoordinateSet, cap: usize, tol: f64) -> Result<AnalysisReport> {
    let balance = check_balanced_float(p, tol)?;
    let design = design_strength_float(p, cap, tol)?;
    let t1 = theorem1_check_float(p, cap, tol)?;
    let mut spectrum: Vec<f64> = Vec::new();
    let g = p.gram();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if !spectrum.iter().any(|&u| (u - g[i][j]).abs() <= tol) {
                spectrum.push(g[i][j]);
            }
        }
    }
    spectrum.sort_by(f64::total_cmp);
    let r = AnalysisReport {
        label: p.label().map(str::to_string),
        n: p.len(),
        ambient_dim: p.span_dim(tol),
        spectrum: spectrum.iter().map(|u| format!("{u:.12}")).collect(),
        balanced: balance.balanced,
        design_strength: design.strength,
        cap,
        distance_counts: t1.per_point_k.clone(),
        theorem1_applies: t1.applies,
        symmetry_order: None,
        orbit_sizes: None,
        group_balanced: None,
        witnesses: None,
        exact: false,
    };
    r.assert_consistent();
    Ok(r)
}
