//! Budget settings: defaults, then an optional TOML file, then flags and
//! `UCAT_BUDGET_VERTICES`.
//!
//! ```toml
//! [budget]
//! max_vertices = 16
//! max_k = 6
//! pivot_cap = 20000
//! ```

use std::path::Path;

use serde::Deserialize;
use ucat::exact::Budget;

use crate::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    budget: BudgetSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct BudgetSection {
    max_vertices: Option<usize>,
    max_k: Option<usize>,
    pivot_cap: Option<usize>,
}

/// Overrides given on the command line (or through the environment).
#[derive(Debug, Default, Clone, Copy)]
pub struct BudgetFlags {
    pub max_vertices: Option<usize>,
    pub max_k: Option<usize>,
    pub pivot_cap: Option<usize>,
}

pub fn resolve_budget(config: Option<&Path>, flags: BudgetFlags) -> Result<Budget, CliError> {
    let mut budget = Budget::default();
    if let Some(path) = config {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let file: ConfigFile = toml::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        apply(&mut budget, file.budget.max_vertices, file.budget.max_k, file.budget.pivot_cap);
    }
    apply(&mut budget, flags.max_vertices, flags.max_k, flags.pivot_cap);
    Ok(budget)
}

fn apply(budget: &mut Budget, max_vertices: Option<usize>, max_k: Option<usize>, pivot_cap: Option<usize>) {
    if let Some(v) = max_vertices {
        budget.max_vertices = v;
    }
    if let Some(k) = max_k {
        budget.max_k = k;
    }
    if let Some(c) = pivot_cap {
        budget.pivot_cap = c;
    }
}
