use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::numeric::{rk4, simpson_vec, Trajectory};
use crate::algebra::{parse_bi, rational, Rational};
use crate::derivation::PlanarDerivation;
use crate::error::{Error, Result};

/// Which broken-line path from `(x0, y0)` the rectifying integrals follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PathChoice {
    /// Along `x = x0` to height `y`, then horizontally to `x`.
    VerticalFirst,
    /// Along `y = y0` to `x`, then vertically to `y`.
    HorizontalFirst,
}

#[derive(Debug, Clone, Serialize)]
pub struct FlowCheckReport {
    /// `max |F(x(t), y(t)) - (t, 0)|` over the sampled trajectory.
    pub max_defect: f64,
    /// Max distance from the reference solution, when one was supplied.
    pub trajectory_error: Option<f64>,
    /// Max `|(x(t+h) - x(t))/h - d(x)|` over steps, same for `y`.
    pub derivative_mismatch: f64,
    pub steps: usize,
    pub t_end: f64,
    pub tolerance: f64,
    pub quadrature_tolerance: f64,
    pub path: PathChoice,
    pub passed: bool,
}

impl std::fmt::Display for FlowCheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "steps: {}, t_end: {}", self.steps, self.t_end)?;
        writeln!(f, "path: {:?}", self.path)?;
        writeln!(f, "max |F(x(t), y(t)) - (t, 0)|: {:.3e}", self.max_defect)?;
        if let Some(e) = self.trajectory_error {
            writeln!(f, "max trajectory error: {e:.3e}")?;
        }
        writeln!(f, "max finite-difference mismatch: {:.3e}", self.derivative_mismatch)?;
        write!(f, "{}", if self.passed { "PASS" } else { "FAIL" })
    }
}

const QUADRATURE_TOL: f64 = 1e-9;
pub(crate) const REPORT_TOL: f64 = 1e-6;
const PATH_SAMPLES: usize = 64;

struct Rectifier {
    f1: crate::algebra::bipoly::F64BiPoly,
    f2: crate::algebra::bipoly::F64BiPoly,
    g1: crate::algebra::bipoly::F64BiPoly,
    g2: crate::algebra::bipoly::F64BiPoly,
    x0: f64,
    y0: f64,
}

impl Rectifier {
    fn delta(&self, x: f64, y: f64) -> f64 {
        self.f1.eval(x, y) * self.g2.eval(x, y) - self.f2.eval(x, y) * self.g1.eval(x, y)
    }

    /// Integrand of `(dF1, dF2)` along `dx` at `(r, y)`.
    fn along_x(&self, r: f64, y: f64) -> [f64; 2] {
        let det = self.delta(r, y);
        [self.g2.eval(r, y) / det, -self.f2.eval(r, y) / det]
    }

    /// Integrand of `(dF1, dF2)` along `dy` at `(x, s)`.
    fn along_y(&self, x: f64, s: f64) -> [f64; 2] {
        let det = self.delta(x, s);
        [-self.g1.eval(x, s) / det, self.f1.eval(x, s) / det]
    }

    /// `Δ` keeps one strict sign along the segment.
    fn segment_clear(&self, from: (f64, f64), to: (f64, f64)) -> bool {
        let reference = self.delta(from.0, from.1);
        if reference == 0.0 || !reference.is_finite() {
            return false;
        }
        (0..=PATH_SAMPLES).all(|i| {
            let s = i as f64 / PATH_SAMPLES as f64;
            let v = self.delta(from.0 + s * (to.0 - from.0), from.1 + s * (to.1 - from.1));
            v.is_finite() && v * reference.signum() > 0.0
        })
    }

    fn path_clear(&self, path: PathChoice, x: f64, y: f64) -> bool {
        let corner = match path {
            PathChoice::VerticalFirst => (self.x0, y),
            PathChoice::HorizontalFirst => (x, self.y0),
        };
        self.segment_clear((self.x0, self.y0), corner) && self.segment_clear(corner, (x, y))
    }

    fn eval(&self, path: PathChoice, x: f64, y: f64) -> [f64; 2] {
        let (vert, horiz) = match path {
            PathChoice::VerticalFirst => (
                simpson_vec(|s| self.along_y(self.x0, s), self.y0, y, QUADRATURE_TOL),
                simpson_vec(|r| self.along_x(r, y), self.x0, x, QUADRATURE_TOL),
            ),
            PathChoice::HorizontalFirst => (
                simpson_vec(|s| self.along_y(x, s), self.y0, y, QUADRATURE_TOL),
                simpson_vec(|r| self.along_x(r, self.y0), self.x0, x, QUADRATURE_TOL),
            ),
        };
        [vert[0] + horiz[0], vert[1] + horiz[1]]
    }
}

/// Integrates `d` from `(x0, y0)` and measures how far the rectifying map
/// built from the commuting pair `(d, delta)` is from sending the trajectory
/// to `(t, 0)`.
pub fn rectification_defect(
    d: &PlanarDerivation,
    delta: &PlanarDerivation,
    x0: &Rational,
    y0: &Rational,
    t_end: f64,
    steps: usize,
) -> Result<FlowCheckReport> {
    rectification_defect_with_reference(d, delta, x0, y0, t_end, steps, None)
}

/// As [`rectification_defect`], also comparing the numeric trajectory with
/// `reference(t)`.
pub fn rectification_defect_with_reference(
    d: &PlanarDerivation,
    delta: &PlanarDerivation,
    x0: &Rational,
    y0: &Rational,
    t_end: f64,
    steps: usize,
    reference: Option<&(dyn Fn(f64) -> (f64, f64) + Sync)>,
) -> Result<FlowCheckReport> {
    if !d.commutes_with(delta) {
        return Err(Error::HypothesisViolation(format!("{d} and {delta} do not commute")));
    }
    if steps == 0 {
        return Err(Error::invalid("steps must be positive"));
    }
    if d.determinant(delta).eval(x0, y0).is_zero() {
        return Err(Error::HypothesisViolation(format!(
            "d and delta are parallel at ({}, {})",
            rational::format(x0),
            rational::format(y0)
        )));
    }
    let rect = Rectifier {
        f1: d.act_x.to_f64_evaluator(),
        f2: d.act_y.to_f64_evaluator(),
        g1: delta.act_x.to_f64_evaluator(),
        g2: delta.act_y.to_f64_evaluator(),
        x0: rational::to_f64(x0),
        y0: rational::to_f64(y0),
    };
    let trajectory = rk4(|x, y| (rect.f1.eval(x, y), rect.f2.eval(x, y)), rect.x0, rect.y0, t_end, steps);
    if !trajectory.is_finite() {
        let (_, x, y) = trajectory.points.iter().copied().find(|(_, x, y)| !(x.is_finite() && y.is_finite())).unwrap();
        return Err(Error::SingularDelta { x, y });
    }

    let path = [PathChoice::VerticalFirst, PathChoice::HorizontalFirst]
        .into_iter()
        .find(|p| trajectory.points.par_iter().all(|&(_, x, y)| rect.path_clear(*p, x, y)));
    let Some(path) = path else {
        let (_, x, y) = trajectory
            .points
            .iter()
            .copied()
            .find(|&(_, x, y)| !rect.path_clear(PathChoice::VerticalFirst, x, y))
            .unwrap_or(trajectory.last());
        return Err(Error::SingularDelta { x, y });
    };

    let max_defect = trajectory
        .points
        .par_iter()
        .map(|&(t, x, y)| {
            let [u, v] = rect.eval(path, x, y);
            (u - t).abs().max(v.abs())
        })
        .reduce(|| 0.0, f64::max);
    let trajectory_error = reference.map(|r| max_distance(&trajectory, r));
    let derivative_mismatch = finite_difference_mismatch(&trajectory, &rect);
    let passed = max_defect.is_finite()
        && max_defect < REPORT_TOL
        && trajectory_error.is_none_or(|e| e < REPORT_TOL);
    Ok(FlowCheckReport {
        max_defect,
        trajectory_error,
        derivative_mismatch,
        steps,
        t_end,
        tolerance: REPORT_TOL,
        quadrature_tolerance: QUADRATURE_TOL,
        path,
        passed,
    })
}

fn max_distance(tr: &Trajectory, reference: &(dyn Fn(f64) -> (f64, f64) + Sync)) -> f64 {
    tr.points
        .par_iter()
        .map(|&(t, x, y)| {
            let (rx, ry) = reference(t);
            (x - rx).abs().max((y - ry).abs())
        })
        .reduce(|| 0.0, f64::max)
}

fn finite_difference_mismatch(tr: &Trajectory, rect: &Rectifier) -> f64 {
    tr.points
        .windows(2)
        .map(|w| {
            let (t0, x0, y0) = w[0];
            let (t1, x1, y1) = w[1];
            let h = t1 - t0;
            let dx = (x1 - x0) / h - rect.f1.eval(x0, y0);
            let dy = (y1 - y0) / h - rect.f2.eval(x0, y0);
            dx.abs().max(dy.abs())
        })
        .fold(0.0, f64::max)
}

/// `d = (1 + x², -2xy)` with its companion `(0, y)` and closed-form flow.
#[derive(Debug, Clone)]
pub struct ExampleFixture {
    pub d: PlanarDerivation,
    pub delta: PlanarDerivation,
}

impl ExampleFixture {
    /// `x = tan(t + atan x0)`, `y = y0 (1 + x0²) cos²(t + atan x0)`.
    pub fn solution(&self, x0: f64, y0: f64, t: f64) -> (f64, f64) {
        let phase = t + x0.atan();
        (phase.tan(), y0 * (1.0 + x0 * x0) * phase.cos().powi(2))
    }
}

pub fn example_fixture() -> ExampleFixture {
    let p = |s: &str| parse_bi(s).expect("fixture literal");
    ExampleFixture {
        d: PlanarDerivation::new(p("1 + x^2"), p("-2*x*y")),
        delta: PlanarDerivation::new(p("0"), p("y")),
    }
}
