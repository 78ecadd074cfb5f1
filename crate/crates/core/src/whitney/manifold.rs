//! Parametric manifolds: charts from parameter boxes into ℝⁿ, optionally indexed by
//! a discrete geometric family of sheets.

use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::expr::Expr;
use super::linalg::{dot, gram_schmidt, norm, solve, sub};
use super::WhitneyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `t ∈ {base^k}`
    Divergent,
    /// `t ∈ {base^-k}`
    Convergent,
}

/// Discrete sheet parameter `t` ranging over a geometric sequence, `k = 0, 1, 2, …`.
#[derive(Clone, Debug, PartialEq)]
pub struct Family<T> {
    pub name: String,
    pub base: T,
    pub direction: Direction,
}

/// Hard limit on enumerated sheets, whatever the cap.
pub const MAX_SHEETS: usize = 128;

impl<T: Float> Family<T> {
    pub fn value(&self, k: usize) -> T {
        let p = self.base.powi(k as i32);
        match self.direction {
            Direction::Divergent => p,
            Direction::Convergent => p.recip(),
        }
    }

    /// Sheet values whose magnitude `max(t, 1/t)` is at most `cap`.
    pub fn values_up_to(&self, cap: T) -> Vec<T> {
        (0..MAX_SHEETS)
            .map(|k| (k, self.base.powi(k as i32)))
            .take_while(|&(_, m)| m <= cap && m.is_finite())
            .map(|(k, _)| self.value(k))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Chart<T> {
    pub params: Vec<String>,
    /// Open parameter box.
    pub domain: Vec<(T, T)>,
    /// One expression per ambient coordinate, over `params` followed by the family
    /// variable if there is one.
    pub coords: Vec<Expr<T>>,
}

#[derive(Clone, Debug)]
pub struct ParamManifold<T> {
    pub ambient: usize,
    pub intrinsic: usize,
    pub charts: Vec<Chart<T>>,
    pub family: Option<Family<T>>,
}

/// A point of the manifold with where it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample<T> {
    pub chart: usize,
    pub sheet: Option<T>,
    pub params: Vec<T>,
    pub point: Vec<T>,
}

const GRID: usize = 64;
const REFINE_STEPS: usize = 48;

fn c<T: Float>(x: f64) -> T {
    T::from(x).expect("representable constant")
}

/// Radical inverse of `i` in base `b`: the Halton sequence coordinate.
pub fn halton<T: Float>(mut i: u64, b: u64) -> T {
    let (mut f, mut r) = (T::one(), T::zero());
    let bt = T::from(b).expect("small base");
    while i > 0 {
        f = f / bt;
        r = r + f * T::from(i % b).expect("digit");
        i /= b;
    }
    r
}

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

impl<T: Float> ParamManifold<T> {
    /// Builds a manifold from coordinate expression strings. Each chart is
    /// `(parameter names, open box, coordinate expressions)`.
    pub fn new(
        ambient: usize,
        charts: Vec<(Vec<&str>, Vec<(T, T)>, Vec<&str>)>,
        family: Option<Family<T>>,
    ) -> Result<Self, WhitneyError> {
        let mut out = Vec::new();
        let mut intrinsic = None;
        for (params, domain, coords) in charts {
            if coords.len() != ambient {
                return Err(WhitneyError::Spec(format!(
                    "chart has {} coordinates, ambient dimension is {ambient}",
                    coords.len()
                )));
            }
            if domain.len() != params.len() || domain.iter().any(|&(lo, hi)| !(lo < hi)) {
                return Err(WhitneyError::Spec("parameter box must give lo < hi for every parameter".into()));
            }
            if *intrinsic.get_or_insert(params.len()) != params.len() {
                return Err(WhitneyError::Spec("charts disagree on the intrinsic dimension".into()));
            }
            let mut vars = params.clone();
            if let Some(f) = &family {
                vars.push(f.name.as_str());
            }
            let coords = coords.iter().map(|s| Expr::parse(s, &vars)).collect::<Result<Vec<_>, _>>()?;
            out.push(Chart { params: params.iter().map(|s| s.to_string()).collect(), domain, coords });
        }
        let intrinsic = intrinsic.ok_or_else(|| WhitneyError::Spec("manifold needs at least one chart".into()))?;
        Ok(ParamManifold { ambient, intrinsic, charts: out, family })
    }

    fn args(&self, params: &[T], sheet: Option<T>) -> Vec<T> {
        let mut a = params.to_vec();
        if let Some(t) = sheet {
            a.push(t);
        }
        a
    }

    pub fn point(&self, chart: usize, params: &[T], sheet: Option<T>) -> Vec<T> {
        let a = self.args(params, sheet);
        self.charts[chart].coords.iter().map(|e| e.eval(&a)).collect()
    }

    /// Jacobian columns `∂φ/∂p_j`, by forward mode.
    pub fn jacobian(&self, chart: usize, params: &[T], sheet: Option<T>) -> Vec<Vec<T>> {
        let a = self.args(params, sheet);
        (0..self.intrinsic)
            .map(|j| self.charts[chart].coords.iter().map(|e| e.derivative(&a, j)).collect())
            .collect()
    }

    /// Jacobian columns by central differences with step `h`.
    pub fn jacobian_fd(&self, chart: usize, params: &[T], sheet: Option<T>, h: T) -> Vec<Vec<T>> {
        let two = c::<T>(2.0);
        (0..self.intrinsic)
            .map(|j| {
                let (mut p, mut m) = (params.to_vec(), params.to_vec());
                p[j] = p[j] + h;
                m[j] = m[j] - h;
                let (fp, fm) = (self.point(chart, &p, sheet), self.point(chart, &m, sheet));
                fp.iter().zip(&fm).map(|(&a, &b)| (a - b) / (two * h)).collect()
            })
            .collect()
    }

    /// Orthonormal basis of the tangent space at the given parameters.
    pub fn tangent_space(&self, chart: usize, params: &[T], sheet: Option<T>) -> Result<Vec<Vec<T>>, WhitneyError> {
        gram_schmidt(&self.jacobian(chart, params, sheet))
    }

    /// Sheets with magnitude at most `cap`; a single `None` sheet without a family.
    pub fn sheets(&self, cap: T) -> Vec<Option<T>> {
        match &self.family {
            None => vec![None],
            Some(f) => f.values_up_to(cap).into_iter().map(Some).collect(),
        }
    }

    /// Parameters of a point of the chart (on the given sheet) nearest to `target`:
    /// grid search over the box, then coordinate-wise golden-section refinement.
    pub fn nearest(&self, chart: usize, sheet: Option<T>, target: &[T]) -> (Vec<T>, T) {
        let dom = &self.charts[chart].domain;
        let k = dom.len();
        let dist = |p: &[T]| norm(&sub(&self.point(chart, p, sheet), target));
        let grid = if k == 1 { GRID } else { (GRID as f64).powf(1.0 / k as f64).ceil().max(8.0) as usize };
        let cell: Vec<T> = dom.iter().map(|&(lo, hi)| (hi - lo) / T::from(grid).expect("grid size")).collect();
        let center = |i: usize, j: usize| dom[j].0 + cell[j] * (T::from(i).expect("index") + c(0.5));
        let mut best = (vec![T::zero(); k], T::infinity());
        let total = grid.pow(k as u32);
        for idx in 0..total {
            let mut rem = idx;
            let p: Vec<T> = (0..k)
                .map(|j| {
                    let i = rem % grid;
                    rem /= grid;
                    center(i, j)
                })
                .collect();
            let d = dist(&p);
            if d < best.1 {
                best = (p, d);
            }
        }
        let golden = c::<T>(0.618_033_988_749_894_9);
        let mut p = best.0;
        for _ in 0..2 {
            for j in 0..k {
                let lo = (p[j] - cell[j]).max(dom[j].0);
                let hi = (p[j] + cell[j]).min(dom[j].1);
                let (mut a, mut b) = (lo, hi);
                for _ in 0..REFINE_STEPS {
                    let x1 = b - golden * (b - a);
                    let x2 = a + golden * (b - a);
                    let mut q1 = p.clone();
                    q1[j] = x1;
                    let mut q2 = p.clone();
                    q2[j] = x2;
                    if dist(&q1) <= dist(&q2) {
                        b = x2;
                    } else {
                        a = x1;
                    }
                }
                let mut q = p.clone();
                q[j] = (a + b) / c(2.0);
                if dist(&q) <= dist(&p) {
                    p = q;
                }
            }
        }
        // Gauss-Newton polish on the normal equations Jᵀ(φ(p) − target) = 0
        for _ in 0..6 {
            let jac = self.jacobian(chart, &p, sheet);
            let res = sub(&self.point(chart, &p, sheet), target);
            let a: Vec<Vec<T>> = (0..k).map(|i| (0..k).map(|j| dot(&jac[i], &jac[j])).collect()).collect();
            let b: Vec<T> = (0..k).map(|i| -dot(&jac[i], &res)).collect();
            let Some(step) = solve(a, b) else { break };
            let q: Vec<T> = p.iter().zip(&step).map(|(&x, &s)| x + s).collect();
            let inside = q.iter().zip(dom).all(|(&x, &(lo, hi))| lo < x && x < hi);
            if !inside || !(dist(&q) <= dist(&p)) {
                break;
            }
            p = q;
        }
        let d = dist(&p);
        (p, d)
    }

    /// Points within distance `r` of `target`: for every chart and every sheet of
    /// magnitude at most `cap` that comes within `r`, the nearest point plus Halton
    /// points of a parameter window sized by the Jacobian there. `count` Halton
    /// points are shared round-robin among those sheets, starting at index `offset`.
    pub fn sample_near(&self, target: &[T], r: T, cap: T, count: usize, offset: u64) -> Vec<Sample<T>> {
        let mut near = Vec::new();
        for chart in 0..self.charts.len() {
            for sheet in self.sheets(cap) {
                let (p, d) = self.nearest(chart, sheet, target);
                if d <= r {
                    near.push((chart, sheet, p));
                }
            }
        }
        let mut out = Vec::new();
        if near.is_empty() {
            return out;
        }
        let mut windows = Vec::with_capacity(near.len());
        for (chart, sheet, p) in &near {
            let jac = self.jacobian(*chart, p, *sheet);
            let dom = &self.charts[*chart].domain;
            let w: Vec<(T, T)> = (0..p.len())
                .map(|j| {
                    let speed = norm(&jac[j]).max(T::min_positive_value());
                    let h = (r / speed).min(dom[j].1 - dom[j].0);
                    ((p[j] - h).max(dom[j].0), (p[j] + h).min(dom[j].1))
                })
                .collect();
            windows.push(w);
            out.push(Sample { chart: *chart, sheet: *sheet, params: p.clone(), point: self.point(*chart, p, *sheet) });
        }
        for i in 0..count {
            let which = i % near.len();
            let (chart, sheet, _) = &near[which];
            let idx = offset + 1 + (i / near.len()) as u64;
            let params: Vec<T> = windows[which]
                .iter()
                .enumerate()
                .map(|(j, &(lo, hi))| lo + (hi - lo) * halton::<T>(idx, PRIMES[j % PRIMES.len()]))
                .collect();
            let point = self.point(*chart, &params, *sheet);
            if norm(&sub(&point, target)) <= r {
                out.push(Sample { chart: *chart, sheet: *sheet, params, point });
            }
        }
        out
    }

    /// Nearest point of the manifold (over every chart and capped sheet) to `x`.
    pub fn foot(&self, x: &[T], cap: T) -> Option<Sample<T>> {
        let mut best: Option<(Sample<T>, T)> = None;
        for chart in 0..self.charts.len() {
            for sheet in self.sheets(cap) {
                let (p, d) = self.nearest(chart, sheet, x);
                if best.as_ref().map_or(true, |b| d < b.1) {
                    let point = self.point(chart, &p, sheet);
                    best = Some((Sample { chart, sheet, params: p, point }, d));
                }
            }
        }
        best.map(|b| b.0)
    }
}
