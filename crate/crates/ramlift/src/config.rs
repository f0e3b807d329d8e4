//! Runtime limits and tolerances, overridable via `RAMLIFT_CAP` / `RAMLIFT_TOL`.

use num::BigRational;

use crate::ratio;

/// Caps and tolerances threaded through the enumeration-heavy operations.
#[derive(Debug, Clone)]
pub struct Config {
    /// Cap on exact joint enumerations (labelings, coverings).
    pub enum_cap: u64,
    /// Cap on enumerated symmetric-group degree for uniform distributions.
    pub sr_cap: usize,
    /// Cap on finite group order (5040 = |S7|).
    pub group_order_cap: usize,
    /// Target width of root brackets. Default 2^-40.
    pub bracket_tol: BigRational,
    /// Slack used by verdict comparisons (1e-9, from the acceptance criteria).
    pub verdict_slack: BigRational,
    /// Radius cap for the universal-cover ball iteration.
    pub rho_radius_cap: usize,
    /// Node cap for the universal-cover ball (the ball grows like (Delta-1)^R,
    /// so the radius cap alone is unreachable for Delta >= 3; the cap only
    /// widens the reported bracket, never the certified upper bound).
    pub rho_node_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            enum_cap: 1_000_000,
            sr_cap: 8,
            group_order_cap: 5040,
            bracket_tol: ratio::pow2(-40),
            verdict_slack: ratio::rat(1, 1_000_000_000),
            rho_radius_cap: 40,
            rho_node_cap: 20_000,
        }
    }
}

impl Config {
    /// Default config with `RAMLIFT_CAP` and `RAMLIFT_TOL` environment
    /// overrides applied (ignored when unset or unparsable).
    pub fn from_env() -> Self {
        let mut cfg = Config::default();
        if let Ok(v) = std::env::var("RAMLIFT_CAP") {
            if let Ok(cap) = v.trim().parse::<u64>() {
                cfg.enum_cap = cap;
            }
        }
        if let Ok(v) = std::env::var("RAMLIFT_TOL") {
            if let Ok(t) = ratio::parse_rational(v.trim()) {
                if t > ratio::rat(0, 1) {
                    cfg.bracket_tol = t;
                }
            }
        }
        cfg
    }
}
