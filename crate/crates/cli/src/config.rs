use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;
use g2torus::FdConfig;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::Value;

/// Flags shared by every subcommand. Each can also be set through an
/// environment variable with the `G2TORUS_` prefix.
#[derive(Args, Clone, Debug)]
pub struct RunArgs {
    /// Seed for every random sample.
    #[arg(long, global = true, env = "G2TORUS_SEED", default_value_t = 7)]
    pub seed: u64,
    /// Number of random points or draws per sampled check.
    #[arg(long, global = true, env = "G2TORUS_SAMPLES", default_value_t = 3)]
    pub samples: usize,
    /// Tolerance for first- and second-order finite-difference checks.
    #[arg(long, global = true, env = "G2TORUS_TOL", default_value_t = 1e-5)]
    pub tol: f64,
    /// Tolerance for third-order finite-difference checks (relative).
    #[arg(
        long = "tol-third",
        global = true,
        env = "G2TORUS_TOL_THIRD",
        default_value_t = 1e-3
    )]
    pub tol_third: f64,
    /// Tolerance for closed-form identities evaluated in floating point.
    #[arg(
        long = "tol-exact",
        global = true,
        env = "G2TORUS_TOL_EXACT",
        default_value_t = 1e-10
    )]
    pub tol_exact: f64,
    /// Relative step of first-derivative stencils; second and third orders use 10x and 100x.
    #[arg(
        long = "fd-step",
        global = true,
        env = "G2TORUS_FD_STEP",
        default_value_t = 1e-4
    )]
    pub fd_step: f64,
    /// Use exact rational arithmetic where the check supports it.
    #[arg(long, global = true, env = "G2TORUS_EXACT")]
    pub exact: bool,
    /// Write the JSON report to this path ("-" for stdout).
    #[arg(long, global = true, env = "G2TORUS_JSON")]
    pub json: Option<PathBuf>,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    pub tol_first: f64,
    pub tol_third: f64,
    pub tol_exact: f64,
    pub fd_step: f64,
    pub exact: bool,
}

impl RunConfig {
    pub fn from_args(a: &RunArgs) -> Result<Self, String> {
        for (name, v) in [
            ("tol", a.tol),
            ("tol-third", a.tol_third),
            ("tol-exact", a.tol_exact),
            ("fd-step", a.fd_step),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(format!("--{name} must be positive and finite, got {v}"));
            }
        }
        if a.samples == 0 {
            return Err("--samples must be at least 1".into());
        }
        Ok(RunConfig {
            seed: a.seed,
            samples: a.samples,
            tol_first: a.tol,
            tol_third: a.tol_third,
            tol_exact: a.tol_exact,
            fd_step: a.fd_step,
            exact: a.exact,
        })
    }

    pub fn fd(&self) -> FdConfig {
        FdConfig {
            first: self.fd_step,
            second: 10.0 * self.fd_step,
            third: 100.0 * self.fd_step,
            richardson: true,
        }
    }

    /// Second-derivative comparisons carry one more order of step error.
    pub fn tol_second(&self) -> f64 {
        10.0 * self.tol_first
    }

    /// Independent stream per check so adding a check never shifts another.
    pub fn rng(&self, stream: u64) -> StdRng {
        StdRng::seed_from_u64(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ stream)
    }

    pub fn to_map(&self) -> BTreeMap<String, Value> {
        let mut m = BTreeMap::new();
        m.insert("seed".into(), Value::from(self.seed));
        m.insert("samples".into(), Value::from(self.samples));
        m.insert("tol_first".into(), Value::from(self.tol_first));
        m.insert("tol_third".into(), Value::from(self.tol_third));
        m.insert("tol_exact".into(), Value::from(self.tol_exact));
        m.insert("fd_step".into(), Value::from(self.fd_step));
        m.insert(
            "mode".into(),
            Value::from(if self.exact { "exact" } else { "float" }),
        );
        m
    }
}
