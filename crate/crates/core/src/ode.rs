//! Warping functions of model spaces.
//!
//! For a nonpositive curvature profile `R`, the Jacobi solution
//! `J'' + R(t) J = 0`, `J(0) = 0`, `J'(0) = 1` determines the metric
//! `dr^2 + J(r)^2 g_{S^{n-1}}`. `J` grows like `e^{sqrt(kappa) t}` and
//! overflows doubles near `t ~ 700/sqrt(kappa)`, so the solve carries
//! `(log J, S)` with `S = J'/J`, the coupled system
//!
//! ```text
//! d(log J)/dt = S,         dS/dt = -S^2 - R(t),
//! ```
//!
//! the second line being the Riccati reduction of the Jacobi equation.
//! The Riccati equation is singular at `t = 0` (`S ~ 1/t`), so integration
//! starts from a series seed at a small handoff radius `t_series` and runs
//! on a log-spaced output grid. For `R <= 0` one has `J(t) >= t` and `S > 0`
//! for all `t`; a sign change of `S` (conjugate point) is reported as an
//! integrator/profile bug.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmath;
use crate::profiles::CurvatureProfile;
use crate::rk::{StepOpts, Stepper};

/// Grid density: output points per factor of 10 in `t`.
const POINTS_PER_DECADE: f64 = 512.0;

/// Numerically integrated `(log J, S)` on a log-spaced radial grid.
#[derive(Debug, Clone)]
pub struct WarpingSolution {
    grid: Vec<f64>,
    log_j: Vec<f64>,
    s: Vec<f64>,
    t_series: f64,
    tol: f64,
    profile: CurvatureProfile,
}

/// Series-to-integrator handoff radius for a profile.
pub fn series_handoff(profile: &CurvatureProfile) -> f64 {
    match profile.tail() {
        Some(t) => fmath::fmin(1e-3, t.r_join / 10.0),
        None => 1e-3,
    }
}

/// Jacobi series `(J, J')` near the origin, from the local expansion of the
/// profile `R(t) ~ r0 + r1 t`. With the inner region constant (the standard
/// profiles), `r1 = 0` and the series is the exact `sinh`-type expansion.
fn jacobi_series(r0: f64, r1: f64, t: f64) -> (f64, f64) {
    let a3 = -r0 / 6.0;
    let a4 = -r1 / 12.0;
    let a5 = r0 * r0 / 120.0;
    let a6 = r0 * r1 / 120.0;
    let a7 = -r0 * r0 * r0 / 5040.0 + r1 * r1 / 504.0;
    let t2 = t * t;
    let j = t * (1.0 + t2 * (a3 + t * (a4 + t * (a5 + t * (a6 + t * a7)))));
    let jp = 1.0
        + t2 * (3.0 * a3 + t * (4.0 * a4 + t * (5.0 * a5 + t * (6.0 * a6 + t * 7.0 * a7))));
    (j, jp)
}

/// Integrate the warping system for `profile` out to `r_max`.
///
/// `tol` is the per-step relative error target of the embedded stepper,
/// restricted to `(1e-14, 1e-4)`.
pub fn solve_warping(
    profile: &CurvatureProfile,
    r_max: f64,
    tol: f64,
) -> Result<WarpingSolution> {
    if !(tol > 1e-14 && tol < 1e-4) {
        return Err(Error::OutOfRange { what: "tol", value: tol, lo: 1e-14, hi: 1e-4 });
    }
    let t_series = series_handoff(profile);
    if !(r_max.is_finite() && r_max > t_series) {
        return Err(Error::InvalidParameter(format!(
            "r_max = {r_max} must exceed the series handoff {t_series}"
        )));
    }

    let grid = build_grid(profile, t_series, r_max);

    let r0 = profile.value_at_origin();
    let r1 = profile.origin_slope(t_series);
    let (j, jp) = jacobi_series(r0, r1, t_series);
    let mut y = [fmath::ln(j), jp / j];

    let mut log_j = Vec::with_capacity(grid.len());
    let mut s = Vec::with_capacity(grid.len());
    log_j.push(y[0]);
    s.push(y[1]);

    let mut stepper: Stepper<2> = Stepper::new(StepOpts {
        rtol: tol,
        atol: tol * 1e-4,
        max_steps: 50_000_000,
    });
    let mut rhs = |t: f64, y: &[f64; 2]| [y[1], -y[1] * y[1] - profile.eval(t)];
    for w in grid.windows(2) {
        stepper.advance(
            w[0],
            w[1],
            &mut y,
            &mut rhs,
            &mut |_, _| f64::INFINITY,
            &mut |_, _, _, _| true,
        )?;
        if !(y[1] > 0.0) {
            return Err(Error::ConjugatePoint { t: w[1] });
        }
        log_j.push(y[0]);
        s.push(y[1]);
    }

    Ok(WarpingSolution { grid, log_j, s, t_series, tol, profile: profile.clone() })
}

/// Log-spaced grid from `t_series` to `r_max` with profile breakpoints
/// inserted, so integration never steps across a curvature kink.
fn build_grid(profile: &CurvatureProfile, t_series: f64, r_max: f64) -> Vec<f64> {
    let du = core::f64::consts::LN_10 / POINTS_PER_DECADE;
    let u0 = fmath::ln(t_series);
    let u1 = fmath::ln(r_max);
    let mut grid = Vec::new();
    grid.push(t_series);
    let mut i = 1usize;
    loop {
        let u = u0 + i as f64 * du;
        if u >= u1 - 0.5 * du {
            break;
        }
        grid.push(fmath::exp(u));
        i += 1;
    }
    grid.push(r_max);
    for b in profile.breakpoints(t_series, r_max) {
        let pos = grid.partition_point(|&t| t < b);
        // Only insert if not already resolved by a nearby grid point.
        let near = (pos > 0 && (b - grid[pos - 1]).abs() < 1e-12 * b)
            || (pos < grid.len() && (grid[pos] - b).abs() < 1e-12 * b);
        if !near {
            grid.insert(pos, b);
        }
    }
    grid
}

impl WarpingSolution {
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn log_j_values(&self) -> &[f64] {
        &self.log_j
    }

    pub fn s_values(&self) -> &[f64] {
        &self.s
    }

    pub fn t_series(&self) -> f64 {
        self.t_series
    }

    pub fn r_max(&self) -> f64 {
        self.grid[self.grid.len() - 1]
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn profile(&self) -> &CurvatureProfile {
        &self.profile
    }

    /// `(log J(t), S(t))` by cubic Hermite interpolation in `log t`, with
    /// the exact ODE right-hand side supplying the endpoint slopes.
    pub fn eval(&self, t: f64) -> Result<(f64, f64)> {
        if !(t >= self.t_series && t <= self.r_max()) {
            return Err(Error::OutOfRange {
                what: "t",
                value: t,
                lo: self.t_series,
                hi: self.r_max(),
            });
        }
        Ok(self.sample(t))
    }

    pub fn log_j_at(&self, t: f64) -> Result<f64> {
        Ok(self.eval(t)?.0)
    }

    pub fn s_at(&self, t: f64) -> Result<f64> {
        Ok(self.eval(t)?.1)
    }

    /// Interpolation core; clamps `t` into the solved range (callers that
    /// need range errors go through [`WarpingSolution::eval`]).
    pub(crate) fn sample(&self, t: f64) -> (f64, f64) {
        let t = fmath::fmax(self.t_series, fmath::fmin(t, self.r_max()));
        let idx = match self.grid.binary_search_by(|g| g.partial_cmp(&t).unwrap()) {
            Ok(i) => return (self.log_j[i], self.s[i]),
            Err(i) => i.clamp(1, self.grid.len() - 1) - 1,
        };
        let (ta, tb) = (self.grid[idx], self.grid[idx + 1]);
        let (ua, ub) = (fmath::ln(ta), fmath::ln(tb));
        let hu = ub - ua;
        let x = (fmath::ln(t) - ua) / hu;

        // d/du = t d/dt along the solution.
        let sa = self.s[idx];
        let sb = self.s[idx + 1];
        let ra = self.profile.eval(ta);
        let rb = self.profile.eval(tb);
        let dlj_a = ta * sa;
        let dlj_b = tb * sb;
        let ds_a = ta * (-sa * sa - ra);
        let ds_b = tb * (-sb * sb - rb);

        let log_j = hermite(self.log_j[idx], dlj_a * hu, self.log_j[idx + 1], dlj_b * hu, x);
        let s = hermite(sa, ds_a * hu, sb, ds_b * hu, x);
        (log_j, s)
    }

    /// `log J` extended below the series handoff by the origin expansion;
    /// used for volume integrals over a whole ball.
    pub(crate) fn log_j_extended(&self, t: f64) -> f64 {
        if t >= self.t_series {
            return self.sample(t).0;
        }
        let r0 = self.profile.value_at_origin();
        let r1 = self.profile.origin_slope(self.t_series);
        let (j, _) = jacobi_series(r0, r1, fmath::fmax(t, 0.0));
        fmath::ln(fmath::fmax(j, f64::MIN_POSITIVE))
    }
}

/// Cubic Hermite on the unit interval; `m0`, `m1` are slopes scaled by the
/// interval length.
#[inline]
fn hermite(y0: f64, m0: f64, y1: f64, m1: f64, x: f64) -> f64 {
    let x2 = x * x;
    let x3 = x2 * x;
    y0 * (2.0 * x3 - 3.0 * x2 + 1.0)
        + m0 * (x3 - 2.0 * x2 + x)
        + y1 * (-2.0 * x3 + 3.0 * x2)
        + m1 * (x3 - x2)
}

/// Result of the two-term tail fit `S(t) ~ a - b/t^2`.
#[derive(Debug, Clone, Copy)]
pub struct TailFit {
    /// Recovered curvature scale, `a^2`.
    pub kappa: f64,
    /// Recovered inverse-square coefficient, `2ab`.
    pub beta: f64,
    /// Root-mean-square residual of the fit.
    pub rms_residual: f64,
}

/// Least-squares fit of the integrated `S` against `a - b/t^2` on
/// `[t_lo, t_hi]`, recovering the tail parameters via the Riccati asymptote
/// `S(t) = sqrt(kappa) - beta / (2 sqrt(kappa) t^2) + O(1/t^3)`.
///
/// Fails with [`Error::TailNotAsymptotic`] when the residual shows the
/// window starts before the asymptote has set in.
pub fn riccati_tail_fit(w: &WarpingSolution, t_lo: f64, t_hi: f64) -> Result<TailFit> {
    let tail = w.profile().require_tail("riccati_tail_fit")?;
    if !(t_lo >= tail.r_join) {
        return Err(Error::Precondition(format!(
            "fit window must start in the tail region (t_lo = {t_lo} < r_join = {})",
            tail.r_join
        )));
    }
    if !(t_lo < t_hi && t_hi <= w.r_max()) {
        return Err(Error::OutOfRange { what: "t_hi", value: t_hi, lo: t_lo, hi: w.r_max() });
    }

    if w.grid.iter().filter(|&&t| t >= t_lo && t <= t_hi).count() < 8 {
        return Err(Error::InvalidParameter(format!(
            "fit window [{t_lo}, {t_hi}] covers fewer than 8 grid points"
        )));
    }

    // Weighted least squares for S = a - b x, x = 1/t^2, on uniform samples.
    // The model error is the O(1/t^3) Riccati remainder, so weights ~ t^6
    // keep it from biasing the fit toward the small-t edge of the window.
    const SAMPLES: usize = 1024;
    let (mut sw, mut sx, mut sxx, mut sy, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let sample_at = |i: usize| {
        let t = t_lo + (t_hi - t_lo) * i as f64 / (SAMPLES - 1) as f64;
        (t, w.sample(t).1)
    };
    for i in 0..SAMPLES {
        let (t, s) = sample_at(i);
        let x = 1.0 / (t * t);
        let wt = (t / t_hi) * (t / t_hi);
        let wt = wt * wt * wt;
        sw += wt;
        sx += wt * x;
        sxx += wt * x * x;
        sy += wt * s;
        sxy += wt * x * s;
    }
    let det = sw * sxx - sx * sx;
    if fmath::abs(det) < 1e-300 {
        return Err(Error::NoConvergence("degenerate tail-fit system".into()));
    }
    let a = (sxx * sy - sx * sxy) / det;
    let b = -(sw * sxy - sx * sy) / det;

    let mut ss = 0.0;
    for i in 0..SAMPLES {
        let (t, s) = sample_at(i);
        let r = s - (a - b / (t * t));
        ss += r * r;
    }
    let rms = fmath::sqrt(ss / SAMPLES as f64);
    let threshold = 1e-4 * fmath::fmax(fmath::abs(a), 1e-12);
    if rms > threshold {
        return Err(Error::TailNotAsymptotic { residual: rms, threshold });
    }
    if !(a > 0.0) {
        return Err(Error::TailNotAsymptotic { residual: rms, threshold });
    }
    Ok(TailFit { kappa: a * a, beta: 2.0 * a * b, rms_residual: rms })
}
