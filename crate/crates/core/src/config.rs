//! Declarative experiment manifests.
//!
//! A config is a single text file of `key = value` lines grouped by
//! `[section]` headers, with `#` comments. Numbers parse as decimal with
//! exponent notation. Sections: `field`, `field2`, `dreibein`, `medium`,
//! `sampling`, `tolerances`, `trace`.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::gauge::GaugePotential;
use crate::optics::OpticalMedium;
use crate::radial::{self, RadialProfile};
use crate::synthetic;
use crate::tensor3::norm;
use crate::transcribe::Dreibein;

/// Parsed `[section]` / `key = value` structure, order-insensitive.
#[derive(Clone, Debug, Default)]
pub struct RawConfig {
    sections: BTreeMap<String, BTreeMap<String, String>>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<RawConfig> {
        let mut sections: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        let mut current = String::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                current = name.trim().to_string();
                sections.entry(current.clone()).or_default();
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "line {}: expected 'key = value', got '{line}'",
                    lineno + 1
                )));
            };
            if current.is_empty() {
                return Err(Error::Config(format!(
                    "line {}: key outside any [section]",
                    lineno + 1
                )));
            }
            sections
                .get_mut(&current)
                .expect("section created above")
                .insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(RawConfig { sections })
    }

    pub fn load(path: &Path) -> Result<RawConfig> {
        RawConfig::parse(&std::fs::read_to_string(path)?)
    }

    pub fn has_section(&self, section: &str) -> bool {
        self.sections.contains_key(section)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections.get(section)?.get(key).map(String::as_str)
    }

    pub fn require(&self, section: &str, key: &str) -> Result<&str> {
        self.get(section, key)
            .ok_or_else(|| Error::Config(format!("missing required key '{key}' in [{section}]")))
    }

    pub fn get_f64(&self, section: &str, key: &str) -> Result<Option<f64>> {
        match self.get(section, key) {
            None => Ok(None),
            Some(s) => s
                .parse::<f64>()
                .map(Some)
                .map_err(|_| Error::Config(format!("[{section}] {key} = '{s}' is not a number"))),
        }
    }

    pub fn get_u64(&self, section: &str, key: &str) -> Result<Option<u64>> {
        match self.get(section, key) {
            None => Ok(None),
            Some(s) => s
                .parse::<u64>()
                .map(Some)
                .map_err(|_| Error::Config(format!("[{section}] {key} = '{s}' is not an integer"))),
        }
    }

    pub fn get_vec3(&self, section: &str, key: &str) -> Result<Option<[f64; 3]>> {
        match self.get(section, key) {
            None => Ok(None),
            Some(s) => {
                let parts: Vec<&str> = s.split(',').map(str::trim).collect();
                if parts.len() != 3 {
                    return Err(Error::Config(format!(
                        "[{section}] {key} = '{s}' is not three comma-separated numbers"
                    )));
                }
                let mut v = [0.0; 3];
                for (i, p) in parts.iter().enumerate() {
                    v[i] = p.parse::<f64>().map_err(|_| {
                        Error::Config(format!("[{section}] {key}: '{p}' is not a number"))
                    })?;
                }
                Ok(Some(v))
            }
        }
    }
}

/// Field construction from a `[field]`-style section.
pub fn build_potential(raw: &RawConfig, section: &str) -> Result<GaugePotential> {
    let kind = raw.require(section, "kind")?;
    let scale = raw.get_f64(section, "scale")?.unwrap_or(1.0);
    let a = match kind {
        "zero" => GaugePotential::zero(),
        "wu_yang_monopole" => radial::wu_yang_monopole(),
        "power_law" => {
            let q = raw
                .get_f64(section, "q")?
                .ok_or_else(|| Error::Config(format!("[{section}] power_law requires q")))?;
            radial::ansatz_potential(&RadialProfile::power_law(q))
        }
        "random_poly" => {
            let seed = raw.get_u64(section, "seed")?.unwrap_or(0);
            let amplitude = raw
                .get_f64(section, "amplitude")?
                .unwrap_or(synthetic::POTENTIAL_AMPLITUDE);
            synthetic::random_potential(seed, amplitude)
        }
        "conformal" => {
            let medium = build_medium_named(raw.require(section, "medium")?)?;
            medium.gauge_potential().ok_or_else(|| {
                Error::Config(format!(
                    "[{section}] medium '{}' has no isotropic index",
                    medium.name()
                ))
            })?
        }
        other => {
            return Err(Error::Config(format!(
                "[{section}] unknown field kind '{other}'"
            )))
        }
    };
    Ok(if scale == 1.0 { a } else { a.scaled(scale) })
}

/// Whether the configured potential is expected to solve the flat static
/// field equations (so the verify sweep gates on that residual). Defaults
/// by kind: the monopole, the vacuum, and power laws with q ∈ {0, 1, 2}
/// are solutions; random polynomials are not, and conformal potentials
/// solve the curved equation on their own medium, not the flat one.
/// Override with `expect_solution = true|false`.
pub fn expect_flat_solution(raw: &RawConfig, section: &str) -> Result<bool> {
    if let Some(v) = raw.get(section, "expect_solution") {
        return match v {
            "true" | "1" => Ok(true),
            "false" | "0" => Ok(false),
            other => Err(Error::Config(format!(
                "[{section}] expect_solution = '{other}' is not a boolean"
            ))),
        };
    }
    let kind = raw.require(section, "kind")?;
    Ok(match kind {
        // scaling a claimed solution does not waive the check: a scaled
        // monopole is configured as "the monopole, perturbed" and must flag
        "zero" | "wu_yang_monopole" => true,
        "power_law" => {
            let q = raw.get_f64(section, "q")?.unwrap_or(f64::NAN);
            q == 0.0 || q == 1.0 || q == 2.0
        }
        _ => false,
    })
}

/// Frame construction from the `[dreibein]` section (trivial by default).
pub fn build_dreibein(raw: &RawConfig) -> Result<Dreibein> {
    if !raw.has_section("dreibein") {
        return Ok(Dreibein::trivial());
    }
    let kind = raw.get("dreibein", "kind").unwrap_or("trivial");
    match kind {
        "trivial" => Ok(Dreibein::trivial()),
        "radial_power" => {
            let q = raw.get_f64("dreibein", "q")?.unwrap_or(1.0);
            let f = ScalarField::new(move |x| norm(x).powf(-q))
                .with_grad(move |x, dir| {
                    let r = norm(x);
                    -q * r.powf(-q - 2.0) * x[dir]
                })
                .with_domain(crate::field::Domain::excluding_point([0.0; 3]));
            Ok(Dreibein::isotropic(f))
        }
        "conformal" => {
            let medium = build_medium_named(raw.require("dreibein", "medium")?)?;
            medium.frame().ok_or_else(|| {
                Error::Config(format!(
                    "[dreibein] medium '{}' has no isotropic index",
                    medium.name()
                ))
            })
        }
        "random_poly" => {
            let seed = raw.get_u64("dreibein", "seed")?.unwrap_or(0);
            let amplitude = raw
                .get_f64("dreibein", "amplitude")?
                .unwrap_or(synthetic::FRAME_AMPLITUDE);
            Ok(synthetic::random_dreibein(seed, amplitude))
        }
        other => Err(Error::Config(format!("[dreibein] unknown kind '{other}'"))),
    }
}

/// Media selectable by name.
pub fn build_medium_named(name: &str) -> Result<OpticalMedium> {
    match name {
        "euclidean" => Ok(OpticalMedium::euclidean()),
        "fisheye" => Ok(OpticalMedium::fish_eye()),
        "fisheye-textbook" => Ok(OpticalMedium::fish_eye_textbook()),
        "poincare-ball" => Ok(OpticalMedium::poincare_ball()),
        "poincare-ball-exterior" => Ok(OpticalMedium::poincare_ball_exterior()),
        "hyperbolic-textbook" => Ok(OpticalMedium::hyperbolic_textbook()),
        other => Err(Error::Config(format!("unknown medium '{other}'"))),
    }
}

pub fn build_medium(raw: &RawConfig) -> Result<Option<OpticalMedium>> {
    if !raw.has_section("medium") {
        return Ok(None);
    }
    build_medium_named(raw.require("medium", "kind")?).map(Some)
}

/// Sampling policy: seeded points in a radial shell or a box.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct Sampling {
    pub count: usize,
    pub seed: u64,
    pub r_min: f64,
    pub r_max: f64,
    /// When set, sample the cube [−box, box]³ instead of the shell.
    pub box_half: Option<f64>,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            count: 100,
            seed: 42,
            r_min: 0.5,
            r_max: 5.0,
            box_half: None,
        }
    }
}

impl Sampling {
    pub fn from_config(raw: &RawConfig) -> Result<Sampling> {
        let mut s = Sampling::default();
        if let Some(c) = raw.get_u64("sampling", "count")? {
            s.count = c as usize;
        }
        if let Some(v) = raw.get_u64("sampling", "seed")? {
            s.seed = v;
        }
        if let Some(v) = raw.get_f64("sampling", "r_min")? {
            s.r_min = v;
        }
        if let Some(v) = raw.get_f64("sampling", "r_max")? {
            s.r_max = v;
        }
        s.box_half = raw.get_f64("sampling", "box")?;
        if s.count == 0 {
            return Err(Error::Config("[sampling] count must be positive".into()));
        }
        if !(s.r_min > 0.0 && s.r_max > s.r_min) {
            return Err(Error::Config(format!(
                "[sampling] invalid shell {} .. {}",
                s.r_min, s.r_max
            )));
        }
        Ok(s)
    }

    pub fn points(&self) -> Vec<[f64; 3]> {
        let mut rng = crate::rng::Lcg64::new(self.seed);
        (0..self.count)
            .map(|_| match self.box_half {
                Some(half) => rng.point_in_box(half),
                None => rng.point_in_shell(self.r_min, self.r_max),
            })
            .collect()
    }
}

/// Tolerances for the verification sweeps.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct Tolerances {
    /// Finite-difference paths.
    pub fd: f64,
    /// Analytic-derivative paths.
    pub analytic: f64,
    /// Relative spread allowed for constant-curvature checks.
    pub spread: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            fd: 1e-6,
            analytic: 1e-10,
            spread: 1e-5,
        }
    }
}

impl Tolerances {
    pub fn from_config(raw: &RawConfig) -> Result<Tolerances> {
        let mut t = Tolerances::default();
        if let Some(v) = raw.get_f64("tolerances", "fd")? {
            t.fd = v;
        }
        if let Some(v) = raw.get_f64("tolerances", "analytic")? {
            t.analytic = v;
        }
        if let Some(v) = raw.get_f64("tolerances", "spread")? {
            t.spread = v;
        }
        Ok(t)
    }
}

/// Probe-trace setup from the `[trace]` section.
#[derive(Clone, Debug)]
pub struct TraceConfig {
    pub kind: TraceKind,
    pub launch: [f64; 3],
    pub span: (f64, f64),
    pub step: f64,
    pub rays: usize,
    pub seed: u64,
    /// Metric norm of the launch velocity.
    pub speed: f64,
    pub isospin: [f64; 3],
    pub exit_radius: Option<f64>,
    /// Override the span end with the medium's focal arc length.
    pub to_focus: bool,
    /// Keep every Nth sample in the CSV export (the last is always kept).
    pub csv_stride: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceKind {
    /// Pure geodesic flow of the configured medium.
    Geodesic,
    /// Parallel-transport probe with isospin precession in the configured field.
    Wong,
    /// Generalized-Lorentz-force probe with isospin precession.
    WongLorentz,
}

impl TraceConfig {
    pub fn from_config(raw: &RawConfig) -> Result<TraceConfig> {
        if !raw.has_section("trace") {
            return Err(Error::Config("missing [trace] section".into()));
        }
        let kind = match raw.get("trace", "kind").unwrap_or("geodesic") {
            "geodesic" => TraceKind::Geodesic,
            "wong" => TraceKind::Wong,
            "wong_lorentz" => TraceKind::WongLorentz,
            other => return Err(Error::Config(format!("[trace] unknown kind '{other}'"))),
        };
        let launch = raw.get_vec3("trace", "launch")?.unwrap_or([1.0, 0.0, 0.0]);
        let span = match raw.get("trace", "span") {
            None => (0.0, 10.0),
            Some(s) => {
                let parts: Vec<&str> = s.split(',').map(str::trim).collect();
                if parts.len() != 2 {
                    return Err(Error::Config(format!(
                        "[trace] span = '{s}' is not 'start, end'"
                    )));
                }
                let lo = parts[0].parse::<f64>().map_err(|_| {
                    Error::Config(format!("[trace] span start '{}' is not a number", parts[0]))
                })?;
                let hi = parts[1].parse::<f64>().map_err(|_| {
                    Error::Config(format!("[trace] span end '{}' is not a number", parts[1]))
                })?;
                (lo, hi)
            }
        };
        let step = raw.get_f64("trace", "step")?.unwrap_or(1e-3);
        let rays = raw.get_u64("trace", "rays")?.unwrap_or(5) as usize;
        let seed = raw.get_u64("trace", "seed")?.unwrap_or(1);
        let speed = raw.get_f64("trace", "speed")?.unwrap_or(1.0);
        let isospin = raw.get_vec3("trace", "isospin")?.unwrap_or([0.0, 0.0, 1.0]);
        let exit_radius = raw.get_f64("trace", "exit_radius")?;
        let to_focus = matches!(raw.get("trace", "focus"), Some("true") | Some("1"));
        let csv_stride = raw.get_u64("trace", "csv_stride")?.unwrap_or(1) as usize;
        if rays == 0 {
            return Err(Error::Config("[trace] rays must be positive".into()));
        }
        if !step.is_finite() || step <= 0.0 {
            return Err(Error::Config("[trace] step must be positive".into()));
        }
        if csv_stride == 0 {
            return Err(Error::Config("[trace] csv_stride must be positive".into()));
        }
        Ok(TraceConfig {
            kind,
            launch,
            span,
            step,
            rays,
            seed,
            speed,
            isospin,
            exit_radius,
            to_focus,
            csv_stride,
        })
    }
}
