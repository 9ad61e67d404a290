//! Minimization of the conditional entropy over measurement directions.
//!
//! A uniform (θ, φ) grid over the upper hemisphere is the oracle. Each basin
//! it finds is refined with the analytic gradient: Armijo descent on the
//! sphere, then a Newton polish once the descent stalls at rounding level.
//! Where the gradient is undefined the refinement falls back to compass search.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nalgebra::{Matrix2, SymmetricEigen, Vector2, Vector3};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{bound_report, t0_squared, BoundReport};
use crate::closed_forms::{classify, kernel_class_minimum, ClassKind};
use crate::error::{DiscordError, Result};
use crate::measurement::{conditional_entropy_at, raw_terms, weights_from_terms, MeasurementDirection};
use crate::state::{canonicalize, qubit_entropy, BlochTriple, DensityMatrix};

/// One degree.
pub const DEFAULT_RESOLUTION: f64 = PI / 180.0;
/// Coarsest accepted grid step.
pub const MAX_RESOLUTION: f64 = PI / 8.0;
/// Target tangential residual |A⃗ − (n̂ᵗA⃗)n̂| of the refinement.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const MIN_TOLERANCE: f64 = 1e-12;
pub const MAX_TOLERANCE: f64 = 1e-3;
pub const MAX_ITERATIONS: usize = 200;
/// Weights, probabilities or |x ± Tn̂| at or below this make A⃗ undefined.
pub const DEGENERATE_TOL: f64 = 1e-12;
/// Residual below which a refined point counts as stationary.
pub const STATIONARY_TOL: f64 = 1e-7;
/// Refined points closer than this (radians, n̂ ~ −n̂) are merged.
pub const MERGE_DISTANCE: f64 = 1e-4;
/// |discordUB − discord| at or below this marks the bound as saturated.
pub const SATURATION_TOL: f64 = 1e-6;

const MAX_SEEDS: usize = 8;
const MAX_SCAN_SEEDS: usize = 64;
const PLATEAU_TOL: f64 = 1e-13;
const PLATEAU_SPREAD: f64 = 0.1;
const ARMIJO_C: f64 = 1e-4;
const GD_BURST: usize = 20;
const MAX_STEP_ANGLE: f64 = 0.5;
const FD_STEP: f64 = 1e-6;
const COMPASS_START: f64 = 1e-2;
const COMPASS_END: f64 = 1e-9;
const COMPASS_MAX_EVALUATIONS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerOptions {
    /// Grid step in radians, in (0, π/8].
    pub resolution: f64,
    /// Residual target in [1e-12, 1e-3].
    pub tolerance: f64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self { resolution: DEFAULT_RESOLUTION, tolerance: DEFAULT_TOLERANCE }
    }
}

impl OptimizerOptions {
    pub fn new(resolution: f64, tolerance: f64) -> Result<Self> {
        check_resolution(resolution)?;
        if !(MIN_TOLERANCE..=MAX_TOLERANCE).contains(&tolerance) {
            return Err(DiscordError::InvalidParameter(format!(
                "tolerance {tolerance:e} outside [{MIN_TOLERANCE:e}, {MAX_TOLERANCE:e}]"
            )));
        }
        Ok(Self { resolution, tolerance })
    }
}

fn check_resolution(resolution: f64) -> Result<()> {
    if resolution > 0.0 && resolution <= MAX_RESOLUTION {
        Ok(())
    } else {
        Err(DiscordError::InvalidParameter(format!("resolution {resolution} rad outside (0, π/8]")))
    }
}

/// First-order information at a direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StationaryDiagnostics {
    /// A⃗; the Euclidean gradient of S is −A⃗/4.
    pub a_vec: [f64; 3],
    /// The Lagrange scalar A in A⃗ = A n̂, from its own closed expression.
    pub a_scalar: f64,
    /// |A⃗ − (n̂ᵗA⃗)n̂|.
    pub residual: f64,
    /// ∂S/∂θ in bits.
    pub grad_theta: f64,
    /// ∂S/∂φ in bits.
    pub grad_phi: f64,
}

struct Terms {
    p: [f64; 2],
    w: [f64; 4],
    plus: f64,
    minus: f64,
    tn: Vector3<f64>,
}

fn terms(t: &BlochTriple, n: &Vector3<f64>) -> Option<Terms> {
    let (p0, p1, plus, minus) = raw_terms(t, n);
    let w = weights_from_terms(p0, p1, plus, minus);
    let ok = [p0, p1, plus, minus, w[0], w[1], w[2], w[3]].iter().all(|&v| v > DEGENERATE_TOL);
    ok.then(|| Terms { p: [p0, p1], w, plus, minus, tn: t.t * n })
}

fn a_from_terms(t: &BlochTriple, k: &Terms) -> Vector3<f64> {
    let [p0, p1] = k.p;
    let [w1, w2, w3, w4] = k.w;
    let z_plus = (k.tn + t.x) / k.plus;
    let z_minus = (k.tn - t.x) / k.minus;
    let tt = t.t.transpose();
    t.y * (w1 * w2 * p1 * p1 / (w3 * w4 * p0 * p0)).log2()
        + tt * z_plus * (w1 / w2).log2()
        + tt * z_minus * (w3 / w4).log2()
}

/// A⃗ at `n`, or `None` where it is undefined.
fn a_vector(t: &BlochTriple, n: &Vector3<f64>) -> Option<Vector3<f64>> {
    terms(t, n).map(|k| a_from_terms(t, &k))
}

fn tangential(a: &Vector3<f64>, n: &Vector3<f64>) -> Vector3<f64> {
    a - n * n.dot(a)
}

/// A⃗, the Lagrange scalar, the tangential residual and the angular
/// gradient at `n`. `None` at degenerate points (some wᵢ, p_k or |x ± Tn̂|
/// vanishes), where the logarithms or unit vectors are undefined.
pub fn stationary_vector(t: &BlochTriple, n: &MeasurementDirection) -> Option<StationaryDiagnostics> {
    let v = n.vector();
    let k = terms(t, v)?;
    let a = a_from_terms(t, &k);
    let [p0, p1] = k.p;
    let [w1, w2, w3, w4] = k.w;
    let s = conditional_entropy_at(t, v);
    let z_plus = (k.tn + t.x) / k.plus;
    let z_minus = (k.tn - t.x) / k.minus;
    let a_scalar = -(w1 / w2).log2() * t.x.dot(&z_plus) + (w3 / w4).log2() * t.x.dot(&z_minus)
        - 4.0 * s
        - (w1 * w2 * w3 * w4 / (p0 * p0 * p1 * p1)).log2();
    let (d_theta, d_phi) = n.angle_derivatives();
    Some(StationaryDiagnostics {
        a_vec: [a[0], a[1], a[2]],
        a_scalar,
        residual: tangential(&a, v).norm(),
        grad_theta: -0.25 * d_theta.dot(&a),
        grad_phi: -0.25 * d_phi.dot(&a),
    })
}

/// Orthonormal basis of the tangent plane at unit `n`.
fn tangent_basis(n: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let k = n.iamin();
    let mut a = Vector3::zeros();
    a[k] = 1.0;
    let e1 = (a - n * n[k]).normalize();
    (e1, n.cross(&e1))
}

/// Picks the representative of {n̂, −n̂} in the closed upper hemisphere.
fn upper(n: Vector3<f64>) -> Vector3<f64> {
    let flip = n[2] < 0.0 || (n[2] == 0.0 && (n[1] < 0.0 || (n[1] == 0.0 && n[0] < 0.0)));
    if flip {
        -n
    } else {
        n
    }
}

fn direction(v: Vector3<f64>) -> MeasurementDirection {
    MeasurementDirection::new(upper(v)).expect("unit vector")
}

/// Rows i = 0..=n_theta at θ = i·Δθ; row 0 is the single pole point, other
/// rows hold n_phi points at φ = j·Δφ. Flat index order is θ-major.
struct Grid {
    n_theta: usize,
    n_phi: usize,
    d_theta: f64,
    d_phi: f64,
}

impl Grid {
    fn new(resolution: f64) -> Self {
        let n_theta = (FRAC_PI_2 / resolution - 1e-9).ceil().max(1.0) as usize;
        let mut n_phi = (TAU / resolution - 1e-9).ceil().max(4.0) as usize;
        n_phi += n_phi % 2;
        Self { n_theta, n_phi, d_theta: FRAC_PI_2 / n_theta as f64, d_phi: TAU / n_phi as f64 }
    }

    fn len(&self) -> usize {
        1 + self.n_theta * self.n_phi
    }

    fn coords(&self, idx: usize) -> (usize, usize) {
        if idx == 0 {
            (0, 0)
        } else {
            (1 + (idx - 1) / self.n_phi, (idx - 1) % self.n_phi)
        }
    }

    fn index(&self, i: usize, j: usize) -> usize {
        if i == 0 {
            0
        } else {
            1 + (i - 1) * self.n_phi + j
        }
    }

    fn point(&self, idx: usize) -> Vector3<f64> {
        let (i, j) = self.coords(idx);
        *MeasurementDirection::from_angles(i as f64 * self.d_theta, j as f64 * self.d_phi).vector()
    }

    /// Grid neighbours, wrapping in φ and across the equator to the antipode.
    fn neighbors(&self, idx: usize) -> Vec<usize> {
        let (i, j) = self.coords(idx);
        if i == 0 {
            return (0..self.n_phi).map(|j| self.index(1, j)).collect();
        }
        let np = self.n_phi;
        let mut out = vec![self.index(i, (j + 1) % np), self.index(i, (j + np - 1) % np), self.index(i - 1, j)];
        if i < self.n_theta {
            out.push(self.index(i + 1, j));
        } else {
            out.push(self.index(i - 1, (j + np / 2) % np));
            out.push(self.index(i, (j + np / 2) % np));
        }
        out
    }

    fn evaluate<F: Fn(&Vector3<f64>) -> f64 + Sync>(&self, f: F) -> Vec<f64> {
        (0..self.len()).into_par_iter().map(|idx| f(&self.point(idx))).collect()
    }

    /// One representative per connected plateau of local minima, sorted by
    /// value then grid order, at most `cap` of them.
    fn basin_seeds(&self, values: &[f64], cap: usize) -> Vec<usize> {
        let is_min: Vec<bool> = (0..self.len())
            .map(|idx| {
                let v = values[idx];
                v.is_finite() && self.neighbors(idx).iter().all(|&m| !(values[m] + PLATEAU_TOL < v))
            })
            .collect();
        let mut parent: Vec<usize> = (0..self.len()).collect();
        fn root(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        for idx in (0..self.len()).filter(|&i| is_min[i]) {
            for m in self.neighbors(idx) {
                if is_min[m] {
                    let (ra, rb) = (root(&mut parent, idx), root(&mut parent, m));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for idx in (0..self.len()).filter(|&i| is_min[i]) {
            members[root(&mut parent, idx)].push(idx);
        }
        let mut seeds = Vec::new();
        for group in members.iter().filter(|g| !g.is_empty()) {
            let best = *group.iter().min_by(|&&a, &&b| values[a].total_cmp(&values[b]).then(a.cmp(&b))).expect("non-empty");
            seeds.push(best);
            // an extended plateau, such as a circle of minimizers, gets a
            // second representative at its far end
            let p = self.point(best);
            let far = group.iter().copied().max_by(|&a, &b| {
                axis_angle(&p, &self.point(a)).total_cmp(&axis_angle(&p, &self.point(b))).then(b.cmp(&a))
            });
            if let Some(far) = far.filter(|&f| axis_angle(&p, &self.point(f)) > PLATEAU_SPREAD) {
                seeds.push(far);
            }
        }
        seeds.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        seeds.truncate(cap);
        seeds
    }
}

fn axis_angle(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    a.cross(b).norm().atan2(a.dot(b).abs())
}

fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (idx, v) in values.iter().enumerate() {
        if v.total_cmp(&values[best]) == Ordering::Less {
            best = idx;
        }
    }
    best
}

/// Best grid point over θ ∈ [0, π/2], φ ∈ [0, 2π) at the given angular step.
/// Ties go to the smallest θ, then the smallest φ.
pub fn grid_minimize(t: &BlochTriple, resolution: f64) -> Result<(MeasurementDirection, f64)> {
    check_resolution(resolution)?;
    let grid = Grid::new(resolution);
    let values = grid.evaluate(|n| conditional_entropy_at(t, n));
    let best = argmin(&values);
    Ok((MeasurementDirection::new(grid.point(best))?, values[best]))
}

/// Output of [`refine_minimum`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refined {
    pub direction: MeasurementDirection,
    pub value: f64,
    /// `None` when the final point is degenerate.
    pub diagnostics: Option<StationaryDiagnostics>,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Converged,
    Degenerate,
    Stalled,
}

struct Walker<'a> {
    t: &'a BlochTriple,
    n: Vector3<f64>,
    s: f64,
    ceiling: f64,
    iterations: usize,
}

/// Gradient of S in the chart u ↦ normalize(n + u₁e₁ + u₂e₂) at `u`.
fn chart_gradient(t: &BlochTriple, n: &Vector3<f64>, e: &(Vector3<f64>, Vector3<f64>), u: Vector2<f64>) -> Option<Vector2<f64>> {
    let m = n + e.0 * u[0] + e.1 * u[1];
    let len = m.norm();
    let nm = m / len;
    let a = a_vector(t, &nm)?;
    let d = |ei: &Vector3<f64>| -0.25 * a.dot(&(ei - nm * nm.dot(ei))) / len;
    Some(Vector2::new(d(&e.0), d(&e.1)))
}

/// Chart gradient and its central-difference Jacobian at u = 0.
fn chart_jacobian(t: &BlochTriple, n: &Vector3<f64>, e: &(Vector3<f64>, Vector3<f64>)) -> Option<(Vector2<f64>, Matrix2<f64>)> {
    let g = chart_gradient(t, n, e, Vector2::zeros())?;
    let mut h = Matrix2::zeros();
    for k in 0..2 {
        let mut du = Vector2::zeros();
        du[k] = FD_STEP;
        let col = (chart_gradient(t, n, e, du)? - chart_gradient(t, n, e, -du)?) / (2.0 * FD_STEP);
        h.set_column(k, &col);
    }
    Some((g, (h + h.transpose()) * 0.5))
}

/// Newton step for a minimum (Hessian shifted to positive definite) or, with
/// `minimize = false`, a Levenberg-Marquardt step towards any root of g.
fn newton_step(g: &Vector2<f64>, h: &Matrix2<f64>, minimize: bool) -> Option<Vector2<f64>> {
    let scale = 1.0 + h.abs().max();
    if minimize {
        let lo = SymmetricEigen::new(*h).eigenvalues.min();
        let shift = if lo > 1e-10 * scale { 0.0 } else { 1e-8 * scale - lo };
        (h + Matrix2::identity() * shift).try_inverse().map(|inv| -(inv * g))
    } else {
        let hth = h.transpose() * h + Matrix2::identity() * (1e-14 * scale * scale);
        hth.try_inverse().map(|inv| -(inv * h.transpose() * g))
    }
}

fn residual_at(t: &BlochTriple, n: &Vector3<f64>) -> Option<f64> {
    a_vector(t, n).map(|a| tangential(&a, n).norm())
}

impl Walker<'_> {
    fn value(&self, n: &Vector3<f64>) -> f64 {
        conditional_entropy_at(self.t, n)
    }

    /// Alternates short bursts of Armijo descent with Newton polishing until
    /// the residual target is met, progress stops, or the budget runs out.
    /// Returns `true` if it stopped on a degenerate point.
    fn descend(&mut self, tolerance: f64) -> bool {
        loop {
            let (outcome, moved_gd) = self.gradient_steps(tolerance);
            match outcome {
                Outcome::Converged => return false,
                Outcome::Degenerate => return true,
                _ => {}
            }
            let (outcome, moved_newton) = self.polish(tolerance, true);
            match outcome {
                Outcome::Converged => return false,
                Outcome::Degenerate => return true,
                _ => {}
            }
            if self.iterations >= MAX_ITERATIONS || moved_gd + moved_newton == 0 {
                return false;
            }
        }
    }

    fn gradient_steps(&mut self, tolerance: f64) -> (Outcome, usize) {
        let mut alpha: f64 = 1.0;
        let mut moved = 0;
        while moved < GD_BURST && self.iterations < MAX_ITERATIONS {
            let Some(a) = a_vector(self.t, &self.n) else { return (Outcome::Degenerate, moved) };
            let g = tangential(&a, &self.n) * -0.25;
            let g_norm = g.norm();
            if 4.0 * g_norm <= tolerance {
                return (Outcome::Converged, moved);
            }
            let mut step = (2.0 * alpha).min(MAX_STEP_ANGLE / g_norm);
            let mut accepted = false;
            while step * g_norm > 1e-15 {
                let cand = (self.n - g * step).normalize();
                let sc = self.value(&cand);
                if sc <= self.s - ARMIJO_C * step * g_norm * g_norm {
                    self.n = cand;
                    self.s = sc;
                    alpha = step;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            self.iterations += 1;
            if !accepted {
                return (Outcome::Stalled, moved);
            }
            moved += 1;
        }
        (Outcome::Stalled, moved)
    }

    /// Newton iterations on the tangential gradient. When minimizing, a step
    /// must lower S, or lower the residual while S moves by rounding only, and
    /// S never exceeds the ceiling. Otherwise any residual decrease is taken.
    fn polish(&mut self, tolerance: f64, minimize: bool) -> (Outcome, usize) {
        let mut moved = 0;
        while self.iterations < MAX_ITERATIONS {
            let Some(r) = residual_at(self.t, &self.n) else { return (Outcome::Degenerate, moved) };
            if r <= tolerance {
                return (Outcome::Converged, moved);
            }
            let e = tangent_basis(&self.n);
            let Some((g, h)) = chart_jacobian(self.t, &self.n, &e) else { return (Outcome::Degenerate, moved) };
            let Some(mut du) = newton_step(&g, &h, minimize) else { return (Outcome::Stalled, moved) };
            if du.norm() > MAX_STEP_ANGLE {
                du *= MAX_STEP_ANGLE / du.norm();
            }
            self.iterations += 1;
            let slack = 4.0 * f64::EPSILON * (1.0 + self.s.abs());
            let mut accepted = false;
            for _ in 0..40 {
                let cand = (self.n + e.0 * du[0] + e.1 * du[1]).normalize();
                let sc = self.value(&cand);
                let rc = residual_at(self.t, &cand);
                let ok = if minimize {
                    sc <= self.ceiling && (sc < self.s - slack || (sc <= self.s + slack && rc.is_some_and(|rc| rc < r)))
                } else {
                    rc.is_some_and(|rc| rc < r)
                };
                if ok {
                    self.n = cand;
                    self.s = sc;
                    accepted = true;
                    break;
                }
                du *= 0.5;
            }
            if !accepted {
                return (Outcome::Stalled, moved);
            }
            moved += 1;
        }
        (Outcome::Stalled, moved)
    }

    /// Derivative-free descent with a shrinking step, for degenerate points.
    fn compass(&mut self) {
        let mut step = COMPASS_START;
        let mut evaluations = 0;
        while step >= COMPASS_END && evaluations < COMPASS_MAX_EVALUATIONS {
            let (e1, e2) = tangent_basis(&self.n);
            let mut improved = false;
            for d in [e1, -e1, e2, -e2] {
                let cand = (self.n + d * step).normalize();
                let sc = self.value(&cand);
                evaluations += 1;
                if sc < self.s {
                    self.n = cand;
                    self.s = sc;
                    improved = true;
                    break;
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
    }

    fn finish(self) -> Refined {
        let direction = direction(self.n);
        Refined {
            direction,
            value: conditional_entropy_at(self.t, direction.vector()),
            diagnostics: stationary_vector(self.t, &direction),
            iterations: self.iterations,
        }
    }
}

/// Local descent from `n0` until the residual is at most `tolerance` or the
/// iteration budget is spent. The returned value never exceeds S(n0) + 1e-12;
/// on non-convergence the best iterate is returned with its residual.
pub fn refine_minimum(t: &BlochTriple, n0: &MeasurementDirection, tolerance: f64) -> Refined {
    let n = *n0.vector();
    let s = conditional_entropy_at(t, &n);
    let mut w = Walker { t, n, s, ceiling: s + 1e-12, iterations: 0 };
    for _ in 0..3 {
        if !w.descend(tolerance) {
            break;
        }
        w.compass();
    }
    w.finish()
}

/// A stationary direction of the conditional entropy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationaryPoint {
    pub direction: MeasurementDirection,
    pub value: f64,
    pub residual: f64,
}

/// Every stationary direction reachable from a local minimum of the
/// gradient norm on the grid, refined to a root of the gradient, merged up
/// to [`MERGE_DISTANCE`], and sorted by value.
pub fn stationary_scan(t: &BlochTriple, resolution: f64) -> Result<Vec<StationaryPoint>> {
    check_resolution(resolution)?;
    let grid = Grid::new(resolution);
    let residuals = grid.evaluate(|n| residual_at(t, n).unwrap_or(f64::INFINITY));
    let seeds = grid.basin_seeds(&residuals, MAX_SCAN_SEEDS);
    let found: Vec<Option<StationaryPoint>> = seeds
        .par_iter()
        .map(|&idx| {
            let n = grid.point(idx);
            let mut w = Walker { t, n, s: conditional_entropy_at(t, &n), ceiling: f64::INFINITY, iterations: 0 };
            w.polish(MIN_TOLERANCE, false);
            let r = w.finish();
            let residual = r.diagnostics?.residual;
            (residual <= STATIONARY_TOL).then_some(StationaryPoint { direction: r.direction, value: r.value, residual })
        })
        .collect();
    let mut points: Vec<StationaryPoint> = Vec::new();
    for p in found.into_iter().flatten() {
        if points.iter().all(|q| q.direction.axis_distance(&p.direction) >= MERGE_DISTANCE) {
            points.push(p);
        }
    }
    points.sort_by(|a, b| {
        let (ta, pa) = a.direction.angles();
        let (tb, pb) = b.direction.angles();
        a.value.total_cmp(&b.value).then(ta.total_cmp(&tb)).then(pa.total_cmp(&pb))
    });
    Ok(points)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "closed-form")]
    ClosedForm,
    #[serde(rename = "grid+refine")]
    GridRefine,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed-form",
            Method::GridRefine => "grid+refine",
        })
    }
}

/// Minimum of the conditional entropy and where it is attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub direction: MeasurementDirection,
    pub value: f64,
    pub method: Method,
    pub class: ClassKind,
    pub diagnostics: Option<StationaryDiagnostics>,
    pub iterations: usize,
}

/// min over n̂ of S(ρᴬ|{Π_k}), in closed form when the canonical form lies
/// in a solvable class and by grid search plus refinement otherwise.
pub fn min_conditional_entropy(t: &BlochTriple, opts: &OptimizerOptions) -> Minimum {
    let class = classify(&canonicalize(t)).kind;
    if class.has_closed_form() {
        if let Ok((value, n)) = kernel_class_minimum(t) {
            let direction = direction(*n.vector());
            return Minimum {
                direction,
                value,
                method: Method::ClosedForm,
                class,
                diagnostics: stationary_vector(t, &direction),
                iterations: 0,
            };
        }
    }
    grid_refine(t, opts, class)
}

/// The numerical path alone, bypassing every closed form: grid search,
/// refinement from every grid basin and from the bound direction, best
/// refined value.
pub fn grid_refine_minimum(t: &BlochTriple, opts: &OptimizerOptions) -> Minimum {
    grid_refine(t, opts, classify(&canonicalize(t)).kind)
}

fn grid_refine(t: &BlochTriple, opts: &OptimizerOptions, class: ClassKind) -> Minimum {
    let grid = Grid::new(opts.resolution);
    let values = grid.evaluate(|n| conditional_entropy_at(t, n));
    let mut starts: Vec<Vector3<f64>> = grid.basin_seeds(&values, MAX_SEEDS).into_iter().map(|i| grid.point(i)).collect();
    let best_grid = grid.point(argmin(&values));
    if starts.first() != Some(&best_grid) {
        starts.insert(0, best_grid);
    }
    starts.push(*t0_squared(t).1.vector());
    let refined: Vec<Refined> = starts
        .par_iter()
        .map(|n| refine_minimum(t, &MeasurementDirection::new(*n).expect("unit"), opts.tolerance))
        .collect();
    let mut best = refined[0];
    for r in &refined[1..] {
        if r.value < best.value {
            best = *r;
        }
    }
    Minimum {
        direction: best.direction,
        value: best.value,
        method: Method::GridRefine,
        class,
        diagnostics: best.diagnostics,
        iterations: best.iterations,
    }
}

/// Correlation measures of a two-qubit state, in bits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DiscordReport {
    pub mutual_information: f64,
    pub classical_correlation: f64,
    pub discord: f64,
    pub optimal_direction: MeasurementDirection,
    pub min_conditional_entropy: f64,
    pub method: Method,
    pub class: ClassKind,
    pub entropy_a: f64,
    pub entropy_b: f64,
    pub entropy_ab: f64,
    /// `None` when the optimum sits on a degenerate point.
    pub diagnostics: Option<StationaryDiagnostics>,
    pub bounds: BoundReport,
}

/// C = S(ρᴬ) − min S(ρᴬ|{Π_k}) and D = I − C with default options.
pub fn quantum_discord(rho: &DensityMatrix) -> DiscordReport {
    quantum_discord_with(rho, &OptimizerOptions::default())
}

pub fn quantum_discord_with(rho: &DensityMatrix, opts: &OptimizerOptions) -> DiscordReport {
    let t = rho.triple();
    let (entropy_a, entropy_b, entropy_ab) = (qubit_entropy(&t.x), qubit_entropy(&t.y), rho.entropy());
    let mutual_information = entropy_a + entropy_b - entropy_ab;
    let m = min_conditional_entropy(&t, opts);
    let classical_correlation = entropy_a - m.value;
    let discord = mutual_information - classical_correlation;
    let mut bounds = bound_report(&t, entropy_a, entropy_b, entropy_ab);
    bounds.saturated = (bounds.discord_ub - discord).abs() <= SATURATION_TOL;
    DiscordReport {
        mutual_information,
        classical_correlation,
        discord,
        optimal_direction: m.direction,
        min_conditional_entropy: m.value,
        method: m.method,
        class: m.class,
        entropy_a,
        entropy_b,
        entropy_ab,
        diagnostics: m.diagnostics,
        bounds,
    }
}

pub fn classical_correlation(rho: &DensityMatrix) -> f64 {
    quantum_discord(rho).classical_correlation
}
