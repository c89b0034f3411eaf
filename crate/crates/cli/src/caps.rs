//! Search and size caps, layered as built-in profile < `CELLFILL_CAPS` <
//! `--caps` file < individual flags.

use crate::CliError;
use cellfill::filling::{RhoOptions, DEFAULT_NODE_CAP};
use serde::{Deserialize, Serialize};

pub const CAPS_ENV: &str = "CELLFILL_CAPS";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    pub dim_cap: usize,
    pub support_cap: usize,
    pub box_bound: i64,
    pub search_budget: usize,
    pub node_cap: usize,
    pub loop_cap: usize,
    pub degree_cap: u128,
    pub step_cap: usize,
    pub basis_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            dim_cap: 24,
            support_cap: 3,
            box_bound: 1,
            search_budget: 400,
            node_cap: DEFAULT_NODE_CAP,
            loop_cap: 6,
            degree_cap: cellfill::covers::DEFAULT_DEGREE_CAP,
            step_cap: 100_000,
            basis_cap: 20_000,
        }
    }
}

impl Caps {
    pub fn profile(name: &str) -> Result<Caps, CliError> {
        let d = Caps::default();
        match name {
            "default" => Ok(d),
            "quick" => Ok(Caps {
                dim_cap: 12,
                support_cap: 2,
                search_budget: 100,
                node_cap: 1_000,
                loop_cap: 4,
                ..d
            }),
            "thorough" => Ok(Caps {
                dim_cap: 40,
                support_cap: 6,
                box_bound: 2,
                search_budget: 5_000,
                node_cap: 100_000,
                loop_cap: 10,
                degree_cap: 1 << 16,
                ..d
            }),
            other => Err(CliError::Usage(format!("unknown cap profile {other:?}"))),
        }
    }

    /// A profile name or an inline JSON object.
    pub fn from_spec(spec: &str) -> Result<Caps, CliError> {
        if spec.trim_start().starts_with('{') {
            serde_json::from_str(spec).map_err(|e| CliError::Usage(format!("bad caps JSON: {e}")))
        } else {
            Caps::profile(spec.trim())
        }
    }

    pub fn positive(&self) -> Result<(), CliError> {
        let all = [
            self.dim_cap,
            self.support_cap,
            self.search_budget,
            self.node_cap,
            self.loop_cap,
            self.step_cap,
            self.basis_cap,
        ];
        if all.contains(&0) || self.box_bound <= 0 || self.degree_cap == 0 {
            return Err(CliError::Usage("caps must be positive".into()));
        }
        Ok(())
    }

    pub fn rho_options(&self, seed: Option<u64>) -> RhoOptions {
        RhoOptions {
            dim_cap: self.dim_cap,
            support_cap: self.support_cap,
            box_bound: self.box_bound,
            search_budget: self.search_budget,
            node_cap: self.node_cap,
            integer: true,
            sampling: seed.map(|s| (s, self.search_budget)),
            basis_cap: self.basis_cap,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_json_overrides_defaults() {
        let c = Caps::from_spec(r#"{"dim_cap": 7}"#).unwrap();
        assert_eq!(c.dim_cap, 7);
        assert_eq!(c.node_cap, DEFAULT_NODE_CAP);
        assert!(Caps::from_spec(r#"{"bogus": 1}"#).is_err());
        assert!(Caps::from_spec("huge").is_err());
        assert!(Caps {
            loop_cap: 0,
            ..Caps::default()
        }
        .positive()
        .is_err());
    }
}
