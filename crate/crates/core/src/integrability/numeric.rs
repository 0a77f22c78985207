/// Samples `(t, x, y)` of a numerically integrated flow, including `t = 0`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub points: Vec<(f64, f64, f64)>,
}

impl Trajectory {
    pub fn last(&self) -> (f64, f64, f64) {
        *self.points.last().expect("trajectory holds the initial point")
    }

    pub fn is_finite(&self) -> bool {
        self.points.iter().all(|(_, x, y)| x.is_finite() && y.is_finite())
    }
}

/// Classical fourth-order Runge–Kutta with `steps` equal steps on `[0, t_end]`.
pub fn rk4(field: impl Fn(f64, f64) -> (f64, f64), x0: f64, y0: f64, t_end: f64, steps: usize) -> Trajectory {
    let steps = steps.max(1);
    let h = t_end / steps as f64;
    let mut points = Vec::with_capacity(steps + 1);
    let (mut x, mut y) = (x0, y0);
    points.push((0.0, x, y));
    for i in 1..=steps {
        let (k1x, k1y) = field(x, y);
        let (k2x, k2y) = field(x + 0.5 * h * k1x, y + 0.5 * h * k1y);
        let (k3x, k3y) = field(x + 0.5 * h * k2x, y + 0.5 * h * k2y);
        let (k4x, k4y) = field(x + h * k3x, y + h * k3y);
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        points.push((i as f64 * h, x, y));
    }
    Trajectory { points }
}

const MAX_DEPTH: u32 = 48;

/// Adaptive Simpson quadrature of a scalar integrand to absolute tolerance `tol`.
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    simpson_vec(|s| [f(s)], a, b, tol)[0]
}

/// Vector-valued adaptive Simpson; the error test uses the max norm.
pub(crate) fn simpson_vec<const N: usize>(f: impl Fn(f64) -> [f64; N], a: f64, b: f64, tol: f64) -> [f64; N] {
    if a == b {
        return [0.0; N];
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson_rule(a, b, &fa, &fm, &fb);
    recurse(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

fn simpson_rule<const N: usize>(a: f64, b: f64, fa: &[f64; N], fm: &[f64; N], fb: &[f64; N]) -> [f64; N] {
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = (b - a) / 6.0 * (fa[i] + 4.0 * fm[i] + fb[i]);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn recurse<const N: usize>(
    f: &impl Fn(f64) -> [f64; N],
    a: f64,
    b: f64,
    fa: [f64; N],
    fm: [f64; N],
    fb: [f64; N],
    whole: [f64; N],
    tol: f64,
    depth: u32,
) -> [f64; N] {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_rule(a, m, &fa, &flm, &fm);
    let right = simpson_rule(m, b, &fm, &frm, &fb);
    let mut err: f64 = 0.0;
    for i in 0..N {
        err = err.max((left[i] + right[i] - whole[i]).abs());
    }
    if depth == 0 || err <= 15.0 * tol || !err.is_finite() {
        let mut out = [0.0; N];
        for i in 0..N {
            out[i] = left[i] + right[i] + (left[i] + right[i] - whole[i]) / 15.0;
        }
        return out;
    }
    let l = recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1);
    let r = recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = l[i] + r[i];
    }
    out
}
