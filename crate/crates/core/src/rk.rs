//! Embedded Dormand-Prince 5(4) stepping with per-step error control.
//!
//! One small fixed-order method serves every integration in the crate: the
//! Riccati system for the warping function, radial eigenfunction shooting,
//! and Pruefer phase transport. State vectors are tiny (`N <= 2`), so the
//! stepper works on stack arrays and reports progress through a callback
//! after every accepted step.

use crate::error::{Error, Result};
use crate::fmath;

// Dormand-Prince 5(4) tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;

// Fifth-order weights; the seventh stage lands on the solution itself.
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;

// Embedded fourth-order weights for the error estimate.
const E1: f64 = 5179.0 / 57600.0;
const E3: f64 = 7571.0 / 16695.0;
const E4: f64 = 393.0 / 640.0;
const E5: f64 = -92097.0 / 339200.0;
const E6: f64 = 187.0 / 2100.0;
const E7: f64 = 1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_SCALE: f64 = 0.2;
const MAX_SCALE: f64 = 5.0;

pub(crate) struct StepOpts {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

/// Stepper state that persists across consecutive `advance` calls, so that
/// a solve split into output segments keeps its adapted step size.
pub(crate) struct Stepper<const N: usize> {
    h: f64,
    steps: usize,
    opts: StepOpts,
}

impl<const N: usize> Stepper<N> {
    pub fn new(opts: StepOpts) -> Self {
        Stepper { h: 0.0, steps: 0, opts }
    }

    /// Integrate `y` from `t0` to `t1` (`t1 > t0`).
    ///
    /// `cap` bounds the next step size (return `f64::INFINITY` for no bound);
    /// `on_step` runs after every accepted step with the previous state and
    /// the new mutable state, which callers may rescale (for linear systems)
    /// or record. Returning `false` from `on_step` stops the integration
    /// early (for shots whose outcome is already decided).
    pub fn advance<F, C, O>(
        &mut self,
        t0: f64,
        t1: f64,
        y: &mut [f64; N],
        rhs: &mut F,
        cap: &mut C,
        on_step: &mut O,
    ) -> Result<()>
    where
        F: FnMut(f64, &[f64; N]) -> [f64; N],
        C: FnMut(f64, &[f64; N]) -> f64,
        O: FnMut(f64, &[f64; N], f64, &mut [f64; N]) -> bool,
    {
        let mut t = t0;
        let done = |t: f64| t1 - t <= 1e-15 * fmath::fmax(fmath::abs(t1), 1.0e-12);
        if done(t) {
            return Ok(());
        }
        if self.h <= 0.0 {
            self.h = t1 - t0;
        }

        while !done(t) {
            if self.steps >= self.opts.max_steps {
                return Err(Error::StepBudget { t });
            }
            self.steps += 1;

            let mut h = self.h;
            let c = cap(t, y);
            if c.is_finite() && c > 0.0 {
                h = fmath::fmin(h, c);
            }
            h = fmath::fmin(h, t1 - t);

            // Stages.
            let k1 = rhs(t, y);
            let mut ys = stage(y, &[(&k1, A21)], h);
            let k2 = rhs(t + C2 * h, &ys);
            ys = stage(y, &[(&k1, A31), (&k2, A32)], h);
            let k3 = rhs(t + C3 * h, &ys);
            ys = stage(y, &[(&k1, A41), (&k2, A42), (&k3, A43)], h);
            let k4 = rhs(t + C4 * h, &ys);
            ys = stage(y, &[(&k1, A51), (&k2, A52), (&k3, A53), (&k4, A54)], h);
            let k5 = rhs(t + C5 * h, &ys);
            ys = stage(
                y,
                &[(&k1, A61), (&k2, A62), (&k3, A63), (&k4, A64), (&k5, A65)],
                h,
            );
            let k6 = rhs(t + h, &ys);
            let ynew = stage(y, &[(&k1, B1), (&k3, B3), (&k4, B4), (&k5, B5), (&k6, B6)], h);
            let k7 = rhs(t + h, &ynew);

            // Error against the embedded fourth-order solution.
            let mut err_norm: f64 = 0.0;
            for i in 0..N {
                let y4 = y[i]
                    + h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i]
                        + E7 * k7[i]);
                let e = fmath::abs(ynew[i] - y4);
                let scale = self.opts.atol
                    + self.opts.rtol * fmath::fmax(fmath::abs(y[i]), fmath::abs(ynew[i]));
                err_norm = fmath::fmax(err_norm, e / scale);
            }

            if !err_norm.is_finite() {
                // Overflowed stage: retreat hard.
                self.h = h * MIN_SCALE;
                continue;
            }

            if err_norm <= 1.0 {
                let t_prev = t;
                let y_prev = *y;
                t += h;
                *y = ynew;
                let keep_going = on_step(t_prev, &y_prev, t, y);
                let scale = if err_norm == 0.0 {
                    MAX_SCALE
                } else {
                    fmath::fmin(
                        MAX_SCALE,
                        fmath::fmax(MIN_SCALE, SAFETY * fmath::powf(err_norm, -0.2)),
                    )
                };
                self.h = h * scale;
                if !keep_going {
                    return Ok(());
                }
            } else {
                let shrink = fmath::fmax(MIN_SCALE, SAFETY * fmath::powf(err_norm, -0.2));
                let hn = h * shrink;
                let floor = 4.0 * f64::EPSILON * fmath::fmax(fmath::abs(t), 1e-6);
                if hn < floor {
                    return Err(Error::StepUnderflow { t, h: hn });
                }
                self.h = hn;
            }
        }
        Ok(())
    }
}

#[inline]
fn stage<const N: usize>(y: &[f64; N], terms: &[(&[f64; N], f64)], h: f64) -> [f64; N] {
    let mut out = *y;
    for (k, a) in terms {
        for i in 0..N {
            out[i] += h * a * k[i];
        }
    }
    out
}
