//! Configuration resolution: defaults, an optional JSON config file, and
//! command-line overrides, merged in that order (flags win).

use groupderiv_core::{groups, Tolerances};
use serde::{Deserialize, Serialize};

/// The suites a check can belong to, in reporting order.
pub const SUITES: [&str; 4] = ["axioms", "homspace", "derivative", "theorems"];

/// Default root seed; every check derives its own child seed from this and
/// its id, so reports are reproducible and independent of check order.
pub const DEFAULT_SEED: u64 = 42;

/// Default sample count for pairwise law checks. Radius sweeps use
/// [`ResolvedConfig::sweep_count`] samples per radius instead.
pub const DEFAULT_SAMPLES: usize = 10_000;

/// Default probe-set size for the bounded sup metric.
pub const DEFAULT_PROBE_POINTS: usize = 64;

/// Optional JSON config file contents. Every field may be omitted; present
/// fields override defaults and are themselves overridden by flags.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    /// Suite name: one of `axioms`, `homspace`, `derivative`, `theorems`,
    /// `all`.
    pub suite: Option<String>,
    /// Root seed.
    pub seed: Option<u64>,
    /// Pairwise sample count.
    pub samples: Option<usize>,
    /// Probe-set size.
    pub probe_points: Option<usize>,
    /// Restrict to these groups (registry names).
    pub groups: Option<Vec<String>>,
    /// Tolerance overrides by name.
    pub tolerances: Option<TolerancePatch>,
}

/// Partial tolerance override; field names match the CLI override names
/// (`fact` adjusts the absolute factorization term).
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolerancePatch {
    /// Floating-point layer slack.
    pub fp: Option<f64>,
    /// Homomorphism-law relative residual bound.
    pub hom: Option<f64>,
    /// Factorization absolute allowance.
    pub fact: Option<f64>,
    /// Factorization relative allowance.
    pub fact_rel: Option<f64>,
    /// Root round-trip bound.
    pub root: Option<f64>,
    /// Default tail bound for limit-style checks.
    pub limit: Option<f64>,
}

impl TolerancePatch {
    fn apply(&self, t: &mut Tolerances) {
        if let Some(v) = self.fp {
            t.fp = v;
        }
        if let Some(v) = self.hom {
            t.hom = v;
        }
        if let Some(v) = self.fact {
            t.fact_abs = v;
        }
        if let Some(v) = self.fact_rel {
            t.fact_rel = v;
        }
        if let Some(v) = self.root {
            t.root = v;
        }
        if let Some(v) = self.limit {
            t.limit = v;
        }
    }

    /// Parses one `name=value` override; names: `fp`, `hom`, `fact`,
    /// `fact-rel`, `root`, `limit`.
    pub fn parse_override(&mut self, s: &str) -> Result<(), String> {
        let (name, value) = s
            .split_once('=')
            .ok_or_else(|| format!("tolerance override '{s}' must look like name=value"))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| format!("tolerance value in '{s}' is not a number"))?;
        if !(value > 0.0) || !value.is_finite() {
            return Err(format!("tolerance value in '{s}' must be positive and finite"));
        }
        let slot = match name.trim() {
            "fp" => &mut self.fp,
            "hom" => &mut self.hom,
            "fact" => &mut self.fact,
            "fact-rel" | "fact_rel" => &mut self.fact_rel,
            "root" => &mut self.root,
            "limit" => &mut self.limit,
            other => {
                return Err(format!(
                    "unknown tolerance '{other}' (expected fp, hom, fact, fact-rel, root, limit)"
                ))
            }
        };
        *slot = Some(value);
        Ok(())
    }
}

/// Command-line inputs that participate in resolution.
#[derive(Clone, Debug, Default)]
pub struct CliOverrides {
    /// Positional suite argument (wins over the flag and the file).
    pub suite_positional: Option<String>,
    /// `--suite` flag.
    pub suite_flag: Option<String>,
    /// `--seed` flag.
    pub seed: Option<u64>,
    /// `--samples` flag.
    pub samples: Option<usize>,
    /// `--probe-points` flag.
    pub probe_points: Option<usize>,
    /// Repeated `--group` flags.
    pub groups: Vec<String>,
    /// Repeated `--tolerance` flags, unparsed.
    pub tolerances: Vec<String>,
}

/// The fully resolved run configuration, echoed verbatim in the report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResolvedConfig {
    /// Selected suite (`all` or one of [`SUITES`]).
    pub suite: String,
    /// Root seed.
    pub seed: u64,
    /// Pairwise sample count.
    pub samples: usize,
    /// Probe-set size.
    pub probe_points: usize,
    /// Group restriction; empty means every group.
    pub groups: Vec<String>,
    /// Working tolerances after overrides.
    pub tolerances: Tolerances,
}

impl Default for ResolvedConfig {
    fn default() -> Self {
        ResolvedConfig {
            suite: String::from("all"),
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            probe_points: DEFAULT_PROBE_POINTS,
            groups: Vec::new(),
            tolerances: Tolerances::default(),
        }
    }
}

impl ResolvedConfig {
    /// Samples per radius for sweep-style checks: pairwise count scaled
    /// down a hundredfold and clamped to a practical window.
    pub fn sweep_count(&self) -> usize {
        (self.samples / 100).clamp(20, 200)
    }
}

/// Validates a suite name.
pub fn validate_suite(name: &str) -> Result<String, String> {
    if name == "all" || SUITES.contains(&name) {
        Ok(String::from(name))
    } else {
        Err(format!(
            "unknown suite '{name}' (expected all, {})",
            SUITES.join(", ")
        ))
    }
}

/// Merges defaults, an optional config file, and command-line overrides
/// into a [`ResolvedConfig`]. Flag beats file beats default; the positional
/// suite beats the `--suite` flag.
pub fn resolve(file: Option<FileConfig>, cli: &CliOverrides) -> Result<ResolvedConfig, String> {
    let file = file.unwrap_or_default();
    let mut out = ResolvedConfig::default();

    // Every supplied suite is validated, including ones that lose the
    // precedence race; a typo should never be silently ignored.
    for candidate in [&cli.suite_positional, &cli.suite_flag, &file.suite] {
        if let Some(s) = candidate {
            validate_suite(s)?;
        }
    }
    let suite = cli
        .suite_positional
        .clone()
        .or_else(|| cli.suite_flag.clone())
        .or(file.suite)
        .unwrap_or_else(|| String::from("all"));
    out.suite = validate_suite(&suite)?;

    out.seed = cli.seed.or(file.seed).unwrap_or(DEFAULT_SEED);
    out.samples = cli.samples.or(file.samples).unwrap_or(DEFAULT_SAMPLES);
    if out.samples == 0 {
        return Err(String::from("samples must be positive"));
    }
    out.probe_points = cli
        .probe_points
        .or(file.probe_points)
        .unwrap_or(DEFAULT_PROBE_POINTS);
    if out.probe_points == 0 {
        return Err(String::from("probe-points must be positive"));
    }

    out.groups = if !cli.groups.is_empty() {
        cli.groups.clone()
    } else {
        file.groups.unwrap_or_default()
    };
    out.groups.sort();
    out.groups.dedup();
    for g in &out.groups {
        groups::lookup(g).map_err(|_| {
            format!(
                "unknown group '{g}' (expected one of: {})",
                groups::standard_names().join(", ")
            )
        })?;
    }

    let mut patch = file.tolerances.unwrap_or_default();
    for s in &cli.tolerances {
        patch.parse_override(s)?;
    }
    patch.apply(&mut out.tolerances);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_stable() {
        let cfg = resolve(None, &CliOverrides::default()).unwrap();
        assert_eq!(cfg.suite, "all");
        assert_eq!(cfg.seed, DEFAULT_SEED);
        assert_eq!(cfg.samples, DEFAULT_SAMPLES);
        assert_eq!(cfg.probe_points, DEFAULT_PROBE_POINTS);
        assert!(cfg.groups.is_empty());
        assert_eq!(cfg.tolerances, Tolerances::default());
    }

    #[test]
    fn flags_beat_file_beats_default() {
        let file = FileConfig {
            suite: Some(String::from("axioms")),
            seed: Some(7),
            samples: Some(500),
            ..FileConfig::default()
        };
        let cli = CliOverrides {
            seed: Some(9),
            ..CliOverrides::default()
        };
        let cfg = resolve(Some(file), &cli).unwrap();
        assert_eq!(cfg.suite, "axioms");
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.samples, 500);

        let cli = CliOverrides {
            suite_positional: Some(String::from("theorems")),
            suite_flag: None,
            ..CliOverrides::default()
        };
        let file = FileConfig {
            suite: Some(String::from("axioms")),
            ..FileConfig::default()
        };
        assert_eq!(resolve(Some(file), &cli).unwrap().suite, "theorems");
    }

    #[test]
    fn tolerance_overrides_parse_and_apply() {
        let cli = CliOverrides {
            tolerances: vec![String::from("fp=1e-8"), String::from("fact=1e-30")],
            ..CliOverrides::default()
        };
        let cfg = resolve(None, &cli).unwrap();
        assert_eq!(cfg.tolerances.fp, 1e-8);
        assert_eq!(cfg.tolerances.fact_abs, 1e-30);
        assert_eq!(cfg.tolerances.hom, Tolerances::default().hom);

        for bad in ["fp", "fp=banana", "nope=1e-3", "fp=-1.0"] {
            let cli = CliOverrides {
                tolerances: vec![String::from(bad)],
                ..CliOverrides::default()
            };
            assert!(resolve(None, &cli).is_err(), "{bad} should be rejected");
        }
    }

    #[test]
    fn bad_groups_and_suites_are_rejected() {
        let cli = CliOverrides {
            suite_positional: Some(String::from("nope")),
            ..CliOverrides::default()
        };
        assert!(resolve(None, &cli).is_err());

        let cli = CliOverrides {
            groups: vec![String::from("circle"), String::from("klein-bottle")],
            ..CliOverrides::default()
        };
        assert!(resolve(None, &cli).is_err());

        let cli = CliOverrides {
            groups: vec![String::from("circle"), String::from("matrix-add:2")],
            ..CliOverrides::default()
        };
        let cfg = resolve(None, &cli).unwrap();
        assert_eq!(cfg.groups, vec!["circle", "matrix-add:2"]);
    }
}
