//! Numerical Whitney (a), (b) and Verdier (w) checks on pairs of parametric manifolds.
//!
//! A pair `(X, Y)` with base point `y ∈ Y ⊆ ∂X` is swept over dyadic radii
//! `r_i = 2⁻ⁱ r₀`. At each radius the largest value of the tested quantity over
//! sampled `x ∈ X`, `z ∈ Y` in the ball `B(y, r_i)` is recorded:
//!
//! * (a): `δ(T_z Y, T_x X)`
//! * (b): `δ(ℝ·(x − z), T_x X)`
//! * (w): `δ(T_z Y, T_x X) / ‖z − x‖`
//!
//! Sheets of a discrete family are enumerated while `max(t, 1/t) ≤ 1/r_i²`.
//! The verdict rules are in [`check::judge`].

pub mod check;
pub mod expr;
pub mod linalg;
pub mod manifold;

use std::collections::BTreeMap;

use num_traits::Float;
use serde::Deserialize;
use thiserror::Error;

pub use check::{check_condition, judge, sweep, Condition, ScaleRow, ScaleSweep, Verdict, VerdictKind, TOL_FAIL, TOL_HOLD};
pub use expr::Expr;
pub use linalg::{gram_schmidt, subspace_distance};
pub use manifold::{halton, Direction, Family, ParamManifold, Sample};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WhitneyError {
    #[error("parse error in '{src}' at byte {pos}: {msg}")]
    Parse { src: String, pos: usize, msg: String },
    #[error("Jacobian is rank deficient (column {column} depends on the previous ones)")]
    RankDeficient { column: usize },
    #[error("no point of X within {scale} of the base point")]
    EmptySample { scale: f64 },
    #[error("base point is not in the frontier of X: no point of X within r0 = {r0}")]
    NotInFrontier { r0: f64 },
    #[error("unknown gallery pair '{0}' (expected exp-curves, stacked-lines, spiral or half-plane)")]
    UnknownGallery(String),
    #[error("invalid pair specification: {0}")]
    Spec(String),
}

pub const DEFAULT_R0: f64 = 0.25;
pub const DEFAULT_SCALES: usize = 10;
pub const DEFAULT_SAMPLES: usize = 64;

#[derive(Clone, Debug)]
pub struct PairSpec<T> {
    pub name: String,
    pub x: ParamManifold<T>,
    pub y: ParamManifold<T>,
    pub base_point: Vec<T>,
    pub r0: T,
    pub scales: usize,
    pub samples: usize,
    /// Offset into the Halton sequence.
    pub seed: u64,
    /// Documented verdicts, if any.
    pub expect: Vec<(Condition, VerdictKind)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyJson {
    #[serde(default = "default_family_name")]
    name: String,
    family: String,
    base: f64,
    direction: Direction,
}

fn default_family_name() -> String {
    "t".into()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ChartJson {
    params: Vec<String>,
    #[serde(rename = "box")]
    bounds: Vec<[f64; 2]>,
    coords: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifoldJson {
    ambient: usize,
    charts: Vec<ChartJson>,
    family: Option<FamilyJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairJson {
    name: String,
    x: ManifoldJson,
    y: ManifoldJson,
    base_point: Vec<f64>,
    r0: Option<f64>,
    scales: Option<usize>,
    samples: Option<usize>,
    #[serde(default)]
    expect: BTreeMap<String, String>,
}

fn cast<T: Float>(v: f64) -> Result<T, WhitneyError> {
    T::from(v).ok_or_else(|| WhitneyError::Spec(format!("{v} is not representable")))
}

impl ManifoldJson {
    fn build<T: Float>(&self) -> Result<ParamManifold<T>, WhitneyError> {
        let family = match &self.family {
            None => None,
            Some(f) => {
                if f.family != "geometric" {
                    return Err(WhitneyError::Spec(format!("unsupported family '{}'", f.family)));
                }
                if !(f.base > 1.0) {
                    return Err(WhitneyError::Spec("geometric family base must exceed 1".into()));
                }
                Some(Family { name: f.name.clone(), base: cast(f.base)?, direction: f.direction })
            }
        };
        let mut charts = Vec::new();
        for c in &self.charts {
            let bounds = c.bounds.iter().map(|&[lo, hi]| Ok((cast(lo)?, cast(hi)?))).collect::<Result<Vec<_>, WhitneyError>>()?;
            charts.push((
                c.params.iter().map(String::as_str).collect(),
                bounds,
                c.coords.iter().map(String::as_str).collect(),
            ));
        }
        ParamManifold::new(self.ambient, charts, family)
    }
}

impl<T: Float> PairSpec<T> {
    pub fn from_json(src: &str) -> Result<Self, WhitneyError> {
        let j: PairJson = serde_json::from_str(src).map_err(|e| WhitneyError::Spec(e.to_string()))?;
        let x = j.x.build()?;
        let y = j.y.build()?;
        if x.ambient != y.ambient || j.base_point.len() != x.ambient {
            return Err(WhitneyError::Spec("X, Y and the base point must share the ambient dimension".into()));
        }
        let mut expect = Vec::new();
        for (c, v) in &j.expect {
            expect.push((c.parse()?, v.parse()?));
        }
        let spec = PairSpec {
            name: j.name,
            x,
            y,
            base_point: j.base_point.iter().map(|&v| cast(v)).collect::<Result<_, _>>()?,
            r0: cast(j.r0.unwrap_or(DEFAULT_R0))?,
            scales: j.scales.unwrap_or(DEFAULT_SCALES),
            samples: j.samples.unwrap_or(DEFAULT_SAMPLES),
            seed: 0,
            expect,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks numerically that the base point lies in `cl X` (a point of `X` within
    /// `r0`) and on `Y`.
    pub fn validate(&self) -> Result<(), WhitneyError> {
        if self.scales == 0 || self.samples == 0 || !(self.r0 > T::zero()) {
            return Err(WhitneyError::Spec("need r0 > 0, scales > 0 and samples > 0".into()));
        }
        let cap = (self.r0 * self.r0).recip();
        if self.x.sample_near(&self.base_point, self.r0, cap, 1, 0).is_empty() {
            return Err(WhitneyError::NotInFrontier { r0: self.r0.to_f64().unwrap_or(f64::NAN) });
        }
        let on_y = self.y.foot(&self.base_point, cap).map(|f| linalg::norm(&linalg::sub(&f.point, &self.base_point)));
        let tol = T::epsilon().sqrt();
        if !on_y.is_some_and(|d| d <= tol) {
            return Err(WhitneyError::Spec("base point does not lie on Y".into()));
        }
        Ok(())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

pub const GALLERY: [&str; 4] = ["exp-curves", "stacked-lines", "spiral", "half-plane"];

/// Source of a builtin gallery pair.
pub fn gallery_source(name: &str) -> Result<&'static str, WhitneyError> {
    Ok(match name {
        "exp-curves" => include_str!("../../../../data/gallery/exp-curves.json"),
        "stacked-lines" => include_str!("../../../../data/gallery/stacked-lines.json"),
        "spiral" => include_str!("../../../../data/gallery/spiral.json"),
        "half-plane" => include_str!("../../../../data/gallery/half-plane.json"),
        other => return Err(WhitneyError::UnknownGallery(other.to_string())),
    })
}

pub fn gallery<T: Float>(name: &str) -> Result<PairSpec<T>, WhitneyError> {
    PairSpec::from_json(gallery_source(name)?)
}

/// Largest discrepancy between forward-mode and central-difference Jacobians over
/// `probes` Halton points per chart, relative to `max(|J|, 1)`. Sheets cycle through
/// the first `sheets` family members.
pub fn jacobian_fd_error<T: Float>(m: &ParamManifold<T>, probes: usize, sheets: usize) -> f64 {
    let h = T::epsilon().cbrt();
    let mut worst = 0.0f64;
    let all = m.sheets(T::infinity());
    for chart in 0..m.charts.len() {
        let dom = &m.charts[chart].domain;
        for i in 0..probes {
            let sheet = all[i % sheets.clamp(1, all.len())];
            let p: Vec<T> = dom
                .iter()
                .enumerate()
                .map(|(j, &(lo, hi))| {
                    // keep the stencil inside the box
                    let margin = h * (T::one() + T::one());
                    lo + margin + (hi - lo - margin - margin) * halton::<T>(i as u64 + 1, [2, 3, 5, 7][j % 4])
                })
                .collect();
            let scale = p.iter().fold(T::one(), |s, &v| s.max(v.abs()));
            let ad = m.jacobian(chart, &p, sheet);
            let fd = m.jacobian_fd(chart, &p, sheet, h * scale);
            for (ca, cf) in ad.iter().zip(&fd) {
                for (&a, &f) in ca.iter().zip(cf) {
                    let a = a.to_f64().unwrap_or(f64::NAN);
                    let f = f.to_f64().unwrap_or(f64::NAN);
                    worst = worst.max((a - f).abs() / a.abs().max(1.0));
                }
            }
        }
    }
    worst
}
