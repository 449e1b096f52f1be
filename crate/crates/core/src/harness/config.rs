//! Run configuration in a flat `key = value` text format.
//!
//! Keys use dotted section names; `#` starts a comment and blank lines are
//! ignored. Floats are written with Rust's shortest round-trip formatting,
//! so `parse(to_text(c)) == c` exactly.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::diagnostics::DiagnosticsConfig;
use crate::error::{Error, Result};
use crate::field::GridSpec;
use crate::solver::{InitialData, InitialFamily, Params, StepperConfig};

/// Every configuration key with a one-line description.
pub const KEYS: [(&str, &str); 18] = [
    ("grid.n", "grid points per direction (power of two, >= 8)"),
    ("grid.dealias", "fraction of the Nyquist wavenumber kept after products"),
    ("physics.chi", "vortex viscosity chi (> 0)"),
    ("physics.nu", "angular viscosity nu (> 0)"),
    ("physics.beta", "temperature dissipation exponent beta in [0, 2]"),
    ("physics.alpha", "velocity dissipation exponent alpha in [0, 2]; 0 disables it"),
    ("init.family", "random-bandlimited | taylor-green | buoyant-blob | zero"),
    ("init.amplitude", "RMS (random) or peak amplitude of the initial data"),
    ("init.seed", "seed of the random initial data"),
    ("time.t_end", "final time"),
    ("stepper.cfl", "Courant number in (0, 1]"),
    ("stepper.dt_max", "upper bound on the time step"),
    ("output.every", "time between diagnostics records"),
    ("output.dir", "run directory"),
    ("output.checkpoint", "write a final checkpoint (true | false)"),
    ("diag.k", "regularity k of the |Lambda^k theta| diagnostic, 1/2 < k <= (r-2)/r"),
    ("diag.r", "integrability r of the Gamma and omega diagnostics, 4 < r < inf"),
    ("diag.s", "Sobolev index of the H^s diagnostics"),
];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub dealias: f64,
    pub params: Params,
    pub init: InitialData,
    pub t_end: f64,
    pub stepper: StepperConfig,
    pub output_every: f64,
    pub output_dir: PathBuf,
    pub checkpoint: bool,
    pub diag: DiagnosticsConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: 64,
            dealias: 2.0 / 3.0,
            params: Params::default(),
            init: InitialData {
                family: InitialFamily::RandomBandlimited,
                amplitude: 0.2,
                seed: 1,
            },
            t_end: 2.0,
            stepper: StepperConfig::default(),
            output_every: 0.05,
            output_dir: PathBuf::from("runs/default"),
            checkpoint: true,
            diag: DiagnosticsConfig::default(),
        }
    }
}

fn bad(key: &str, message: impl Into<String>) -> Error {
    Error::Config {
        key: key.into(),
        message: message.into(),
    }
}

fn float(key: &str, value: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .map_err(|_| bad(key, format!("expected a number, got `{value}`")))
}

impl RunConfig {
    pub fn grid(&self) -> Result<GridSpec> {
        GridSpec::with_dealias(self.n, self.dealias)
    }

    /// Sets one key from its text form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key {
            "grid.n" => {
                self.n = value
                    .parse()
                    .map_err(|_| bad(key, format!("expected an integer, got `{value}`")))?
            }
            "grid.dealias" => self.dealias = float(key, value)?,
            "physics.chi" => self.params.chi = float(key, value)?,
            "physics.nu" => self.params.nu = float(key, value)?,
            "physics.beta" => self.params.beta = float(key, value)?,
            "physics.alpha" => self.params.velocity_dissipation_alpha = float(key, value)?,
            "init.family" => {
                self.init.family = value.parse().map_err(|e: Error| bad(key, e.to_string()))?
            }
            "init.amplitude" => self.init.amplitude = float(key, value)?,
            "init.seed" => {
                self.init.seed = value
                    .parse()
                    .map_err(|_| bad(key, format!("expected an unsigned integer, got `{value}`")))?
            }
            "time.t_end" => self.t_end = float(key, value)?,
            "stepper.cfl" => self.stepper.cfl = float(key, value)?,
            "stepper.dt_max" => self.stepper.dt_max = float(key, value)?,
            "output.every" => self.output_every = float(key, value)?,
            "output.dir" => self.output_dir = PathBuf::from(value),
            "output.checkpoint" => {
                self.checkpoint = match value {
                    "true" => true,
                    "false" => false,
                    _ => return Err(bad(key, format!("expected true or false, got `{value}`"))),
                }
            }
            "diag.k" => self.diag.k = float(key, value)?,
            "diag.r" => self.diag.r = float(key, value)?,
            "diag.s" => self.diag.s = float(key, value)?,
            _ => return Err(bad(key, "unknown key")),
        }
        Ok(())
    }

    /// Text form of one key.
    pub fn get(&self, key: &str) -> Result<String> {
        Ok(match key {
            "grid.n" => self.n.to_string(),
            "grid.dealias" => self.dealias.to_string(),
            "physics.chi" => self.params.chi.to_string(),
            "physics.nu" => self.params.nu.to_string(),
            "physics.beta" => self.params.beta.to_string(),
            "physics.alpha" => self.params.velocity_dissipation_alpha.to_string(),
            "init.family" => self.init.family.to_string(),
            "init.amplitude" => self.init.amplitude.to_string(),
            "init.seed" => self.init.seed.to_string(),
            "time.t_end" => self.t_end.to_string(),
            "stepper.cfl" => self.stepper.cfl.to_string(),
            "stepper.dt_max" => self.stepper.dt_max.to_string(),
            "output.every" => self.output_every.to_string(),
            "output.dir" => self.output_dir.display().to_string(),
            "output.checkpoint" => self.checkpoint.to_string(),
            "diag.k" => self.diag.k.to_string(),
            "diag.r" => self.diag.r.to_string(),
            "diag.s" => self.diag.s.to_string(),
            _ => return Err(bad(key, "unknown key")),
        })
    }

    /// Applies a `key=value` override.
    pub fn apply_override(&mut self, assignment: &str) -> Result<()> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| bad(assignment, "override must have the form key=value"))?;
        self.set(key.trim(), value)
    }

    /// Parses the text format on top of the defaults and validates.
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                bad(&format!("line {}", lineno + 1), format!("expected `key = value`, got `{line}`"))
            })?;
            c.set(key.trim(), value)?;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (key, _) in KEYS {
            let _ = writeln!(out, "{key} = {}", self.get(key).expect("listed key"));
        }
        out
    }

    /// Schema with defaults, as printed by `--help-config`.
    pub fn help_text() -> String {
        let d = Self::default();
        let mut out = String::from("# configuration keys (defaults shown)\n");
        for (key, doc) in KEYS {
            let _ = writeln!(out, "# {doc}\n{key} = {}\n", d.get(key).expect("listed key"));
        }
        out
    }

    /// Checks every key; errors name the offending key.
    pub fn validate(&self) -> Result<()> {
        self.grid().map_err(|e| bad("grid.n / grid.dealias", e.to_string()))?;
        let p = &self.params;
        if !(p.chi > 0.0 && p.chi.is_finite()) {
            return Err(bad("physics.chi", format!("must be > 0, got {}", p.chi)));
        }
        if !(p.nu > 0.0 && p.nu.is_finite()) {
            return Err(bad("physics.nu", format!("must be > 0, got {}", p.nu)));
        }
        if !(0.0..=2.0).contains(&p.beta) {
            return Err(bad("physics.beta", format!("must lie in [0, 2], got {}", p.beta)));
        }
        if !(0.0..=2.0).contains(&p.velocity_dissipation_alpha) {
            return Err(bad(
                "physics.alpha",
                format!("must lie in [0, 2], got {}", p.velocity_dissipation_alpha),
            ));
        }
        if !(self.init.amplitude >= 0.0 && self.init.amplitude.is_finite()) {
            return Err(bad("init.amplitude", "must be finite and >= 0"));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(bad("time.t_end", format!("must be > 0, got {}", self.t_end)));
        }
        if !(self.stepper.cfl > 0.0 && self.stepper.cfl <= 1.0) {
            return Err(bad("stepper.cfl", format!("must lie in (0, 1], got {}", self.stepper.cfl)));
        }
        if !(self.stepper.dt_max > 0.0 && self.stepper.dt_max.is_finite()) {
            return Err(bad("stepper.dt_max", format!("must be > 0, got {}", self.stepper.dt_max)));
        }
        if !(self.output_every > 0.0 && self.output_every.is_finite()) {
            return Err(bad("output.every", format!("must be > 0, got {}", self.output_every)));
        }
        self.diag.validate().map_err(|e| bad("diag", e.to_string()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_lossless() {
        let mut c = RunConfig::default();
        c.set("physics.beta", "0.7500000000000001").unwrap();
        c.set("stepper.dt_max", "0.1").unwrap();
        c.set("output.dir", "out/x y").unwrap();
        assert_eq!(RunConfig::parse(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn errors_name_the_key() {
        let e = RunConfig::parse("physics.chi = 0").unwrap_err();
        assert!(matches!(e, Error::Config { ref key, .. } if key == "physics.chi"), "{e}");
        let e = RunConfig::parse("physics.bogus = 1").unwrap_err();
        assert!(matches!(e, Error::Config { ref key, .. } if key == "physics.bogus"));
        assert!(RunConfig::parse("grid.n = 48").is_err());
        assert!(RunConfig::parse("diag.k = 0.9").is_err());
    }

    #[test]
    fn comments_and_overrides() {
        let mut c = RunConfig::parse("# note\n\ngrid.n = 32 # small\n").unwrap();
        assert_eq!(c.n, 32);
        c.apply_override("init.family=taylor-green").unwrap();
        assert_eq!(c.init.family, InitialFamily::TaylorGreen);
        assert!(c.apply_override("init.family").is_err());
    }

    #[test]
    fn help_lists_every_key() {
        let h = RunConfig::help_text();
        assert!(KEYS.iter().all(|(k, _)| h.contains(k)));
    }
}
