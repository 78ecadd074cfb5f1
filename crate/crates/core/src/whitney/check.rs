//! Scale sweeps for Whitney (a), (b) and Verdier (w), and the verdict rules.

use std::fmt;
use std::str::FromStr;

use num_traits::Float;
use serde::Serialize;

use super::linalg::{norm, sub, subspace_distance};
use super::manifold::Sample;
use super::{PairSpec, WhitneyError};

pub const TOL_HOLD: f64 = 1e-2;
pub const TOL_FAIL: f64 = 1e-1;
pub const TREND_WINDOW: usize = 4;
/// (w) holds when the last window stays within this factor of the sweep median.
pub const W_BOUND_FACTOR: f64 = 2.0;
/// (w) fails when the ratio grows by at least this factor across the sweep.
pub const W_GROWTH_FACTOR: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    A,
    B,
    W,
}

impl FromStr for Condition {
    type Err = WhitneyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a" | "A" => Ok(Condition::A),
            "b" | "B" => Ok(Condition::B),
            "w" | "W" => Ok(Condition::W),
            _ => Err(WhitneyError::Spec(format!("unknown condition '{s}', expected a, b or w"))),
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::A => "a",
            Condition::B => "b",
            Condition::W => "w",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    #[serde(rename = "HOLDS")]
    Holds,
    #[serde(rename = "FAILS")]
    Fails,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl FromStr for VerdictKind {
    type Err = WhitneyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "HOLDS" => Ok(VerdictKind::Holds),
            "FAILS" => Ok(VerdictKind::Fails),
            "INCONCLUSIVE" => Ok(VerdictKind::Inconclusive),
            _ => Err(WhitneyError::Spec(format!("unknown verdict '{s}'"))),
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Holds => "HOLDS",
            VerdictKind::Fails => "FAILS",
            VerdictKind::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScaleRow<T> {
    pub scale: T,
    pub quantity_max: T,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScaleSweep<T> {
    pub condition: Condition,
    pub rows: Vec<ScaleRow<T>>,
    /// Sample points skipped because the Jacobian was rank deficient there.
    pub rank_deficient: usize,
}

impl<T: Float + fmt::Display> ScaleSweep<T> {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("scale,quantity_max,samples\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{}\n", r.scale, r.quantity_max, r.samples));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    /// How far the deciding statistic is past its threshold, as a factor
    /// (`inf` when the statistic is exactly zero on the holding side).
    pub margin: f64,
    pub final_max: f64,
    pub median: f64,
    /// Last over first maximum.
    pub growth: f64,
    /// Maxima over the trend window are non-increasing.
    pub decreasing: bool,
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).expect("finite quantities"));
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        (s[n / 2 - 1] + s[n / 2]) / 2.0
    }
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if num > 0.0 {
        f64::INFINITY
    } else {
        1.0
    }
}

/// Applies the verdict rules to a sweep of per-scale maxima.
pub fn judge(condition: Condition, maxima: &[f64]) -> Verdict {
    let n = maxima.len();
    let last = maxima.last().copied().unwrap_or(0.0);
    let med = if n == 0 { 0.0 } else { median(maxima) };
    let window = &maxima[n.saturating_sub(TREND_WINDOW)..];
    let decreasing = window.windows(2).all(|w| w[1] <= w[0]);
    let growth = ratio(last, maxima.first().copied().unwrap_or(0.0));
    let (kind, margin) = match condition {
        Condition::A | Condition::B => {
            if n >= TREND_WINDOW && last < TOL_HOLD && decreasing {
                (VerdictKind::Holds, ratio(TOL_HOLD, last))
            } else if n > 0 && maxima.iter().all(|&m| m >= TOL_FAIL) {
                (VerdictKind::Fails, last / TOL_FAIL)
            } else {
                (VerdictKind::Inconclusive, 1.0)
            }
        }
        Condition::W => {
            let window_max = window.iter().copied().fold(0.0, f64::max);
            if n > 0 && growth >= W_GROWTH_FACTOR {
                (VerdictKind::Fails, growth / W_GROWTH_FACTOR)
            } else if n >= TREND_WINDOW && window_max <= W_BOUND_FACTOR * med {
                let margin = if window_max == 0.0 { f64::INFINITY } else { W_BOUND_FACTOR * med / window_max };
                (VerdictKind::Holds, margin)
            } else {
                (VerdictKind::Inconclusive, 1.0)
            }
        }
    };
    Verdict { kind, margin, final_max: last, median: med, growth, decreasing }
}

struct Probe<T> {
    point: Vec<T>,
    tangent: Vec<Vec<T>>,
}

fn probes<T: Float>(spec: &PairSpec<T>, on_x: bool, samples: &[Sample<T>], skipped: &mut usize) -> Vec<Probe<T>> {
    let m = if on_x { &spec.x } else { &spec.y };
    samples
        .iter()
        .filter_map(|s| match m.tangent_space(s.chart, &s.params, s.sheet) {
            Ok(tangent) => Some(Probe { point: s.point.clone(), tangent }),
            Err(_) => {
                *skipped += 1;
                None
            }
        })
        .collect()
}

/// Sweeps the scale schedule and records, per scale, the largest tested quantity
/// over sampled pairs `x ∈ X`, `z ∈ Y` within the ball of that radius around the
/// base point. Every `x` is also paired with its nearest point on `Y`.
pub fn sweep<T: Float>(condition: Condition, spec: &PairSpec<T>) -> Result<ScaleSweep<T>, WhitneyError> {
    let y0 = &spec.base_point;
    let mut rows = Vec::with_capacity(spec.scales);
    let mut rank_deficient = 0;
    let two = T::one() + T::one();
    let mut r = spec.r0;
    for i in 0..spec.scales {
        if i > 0 {
            r = r / two;
        }
        let cap = (r * r).recip();
        let xs = spec.x.sample_near(y0, r, cap, spec.samples, spec.seed);
        if xs.is_empty() {
            return Err(WhitneyError::EmptySample { scale: r.to_f64().unwrap_or(f64::NAN) });
        }
        let mut zs = spec.y.sample_near(y0, r, cap, spec.samples, spec.seed);
        for x in &xs {
            if let Some(f) = spec.y.foot(&x.point, cap) {
                if norm(&sub(&f.point, y0)) <= r {
                    zs.push(f);
                }
            }
        }
        let xp = probes(spec, true, &xs, &mut rank_deficient);
        let zp = probes(spec, false, &zs, &mut rank_deficient);
        let mut best = T::zero();
        let mut count = 0;
        for x in &xp {
            for z in &zp {
                let q = match condition {
                    Condition::A => subspace_distance(&z.tangent, &x.tangent),
                    Condition::B | Condition::W => {
                        let d = sub(&x.point, &z.point);
                        let len = norm(&d);
                        if !(len > T::zero()) {
                            continue;
                        }
                        if condition == Condition::B {
                            let u: Vec<T> = d.iter().map(|&v| v / len).collect();
                            subspace_distance(&[u], &x.tangent)
                        } else {
                            subspace_distance(&z.tangent, &x.tangent) / len
                        }
                    }
                };
                count += 1;
                if q > best {
                    best = q;
                }
            }
        }
        rows.push(ScaleRow { scale: r, quantity_max: best, samples: count });
    }
    Ok(ScaleSweep { condition, rows, rank_deficient })
}

/// Runs the sweep and judges it.
pub fn check_condition<T: Float>(condition: Condition, spec: &PairSpec<T>) -> Result<(Verdict, ScaleSweep<T>), WhitneyError> {
    let s = sweep(condition, spec)?;
    let maxima: Vec<f64> = s.rows.iter().map(|r| r.quantity_max.to_f64().unwrap_or(f64::NAN)).collect();
    Ok((judge(condition, &maxima), s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rules() {
        let v = judge(Condition::A, &[0.5, 0.1, 0.01, 0.005, 0.001]);
        assert_eq!(v.kind, VerdictKind::Holds);
        assert!((v.margin - 10.0).abs() < 1e-12);
        assert_eq!(judge(Condition::B, &[1.0; 6]).kind, VerdictKind::Fails);
        assert_eq!(judge(Condition::A, &[1.0, 0.05, 0.2, 0.05]).kind, VerdictKind::Inconclusive);
        assert_eq!(judge(Condition::W, &[0.0; 6]).kind, VerdictKind::Holds);
        assert_eq!(judge(Condition::W, &[1.0, 2.0, 4.0, 8.0, 16.0]).kind, VerdictKind::Fails);
        assert_eq!(judge(Condition::W, &[3.0, 3.1, 2.9, 3.0, 3.0]).kind, VerdictKind::Holds);
    }
}
