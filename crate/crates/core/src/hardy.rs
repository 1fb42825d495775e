//! The borderline Hardy eigenvalue problem and Hardy-type weights on
//! rotationally symmetric manifolds.
//!
//! The 1D problem on `[R, 2kR]` with Dirichlet ends,
//!
//! ```text
//! -phi'' - (1 + delta) / (4 x^2) phi = lambda phi,
//! ```
//!
//! sits just past the critical inverse-square coupling `1/4`. Its first
//! eigenvalue turns negative once the interval is long enough on a log
//! scale; the explicit test function `phi = chi(x) sqrt(x)` (piecewise
//! linear `chi`) certifies this via the quadratic-form bound
//! `3 - (delta/4) log(k/2)`.
//!
//! The solver works in the logarithmic variable `s = log(x/R)`: with
//! `phi = sqrt(x) psi(s)` the problem becomes
//!
//! ```text
//! -psi'' - (delta/4) psi = (lambda R^2) e^{2s} psi    on [0, log 2k],
//! ```
//!
//! so the unknown is `Lambda = lambda R^2` and the exact scaling
//! `lambda(delta, k, R) = lambda(delta, k, 1) / R^2` is built in.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmath;
use crate::ode::{solve_warping, WarpingSolution};
use crate::profiles::{CurvatureProfile, ProfileKind};
use crate::quad;
use crate::rk::{StepOpts, Stepper};

/// The interval `[R, 2kR]` with supercriticality `delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardyProblem {
    pub r: f64,
    pub k: f64,
    pub delta: f64,
}

/// Quadratic-form value of the explicit test function, with the closed-form
/// upper bound it must respect.
#[derive(Debug, Clone, Copy)]
pub struct TestQuotient {
    /// `int |phi'|^2 - (1 + delta) |phi|^2 / (4 x^2) dx` by quadrature.
    pub numerator: f64,
    /// `3 - (delta / 4) log(k / 2)`.
    pub bound: f64,
    /// `int |phi|^2 dx`, for Rayleigh-quotient comparisons.
    pub mass: f64,
}

impl HardyProblem {
    pub fn new(r: f64, k: f64, delta: f64) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidParameter(format!("R must be positive, got {r}")));
        }
        if !(k.is_finite() && k > 2.0) {
            return Err(Error::InvalidParameter(format!("k must exceed 2, got {k}")));
        }
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::InvalidParameter(format!("delta must be positive, got {delta}")));
        }
        Ok(HardyProblem { r, k, delta })
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.r, 2.0 * self.k * self.r)
    }

    /// Cutoff `chi`: ramps on `[R, 2R]` and `[kR, 2kR]`, plateau between.
    pub fn chi(&self, x: f64) -> (f64, f64) {
        let (r, k) = (self.r, self.k);
        if x < r || x > 2.0 * k * r {
            (0.0, 0.0)
        } else if x <= 2.0 * r {
            ((x - r) / r, 1.0 / r)
        } else if x <= k * r {
            (1.0, 0.0)
        } else {
            (-(x - 2.0 * k * r) / (k * r), -1.0 / (k * r))
        }
    }

    /// Evaluate the quadratic form of `phi = chi sqrt(x)` by adaptive
    /// quadrature with the `chi` breakpoints forced onto panel boundaries,
    /// together with the closed-form bound. The numerator is independent of
    /// `R` (every term is scale invariant).
    pub fn test_quotient(&self) -> Result<TestQuotient> {
        let (a, b) = self.interval();
        let one_plus_delta = 1.0 + self.delta;
        let mut form = |x: f64| {
            let (chi, dchi) = self.chi(x);
            let sq = fmath::sqrt(x);
            let phi = chi * sq;
            let dphi = dchi * sq + chi / (2.0 * sq);
            dphi * dphi - one_plus_delta * phi * phi / (4.0 * x * x)
        };
        let pts = [a, 2.0 * self.r, self.k * self.r, b];
        let scale = 3.0 + 0.25 * self.delta * fmath::ln(self.k);
        let numerator = quad::integrate_with_breakpoints(&mut form, &pts, 1e-11 * scale, 1e-12)?;
        let mut mass_f = |x: f64| {
            let (chi, _) = self.chi(x);
            chi * chi * x
        };
        let mass = quad::integrate_with_breakpoints(&mut mass_f, &pts, 0.0, 1e-11)?;
        let bound = 3.0 - 0.25 * self.delta * fmath::ln(self.k / 2.0);
        Ok(TestQuotient { numerator, bound, mass })
    }

    /// First Dirichlet eigenvalue, signed (negative in the supercritical
    /// long-interval regime).
    pub fn first_eigenvalue(&self, tol: f64) -> Result<f64> {
        let (lambda_scaled, _) = self.solve_scaled(tol, false)?;
        Ok(lambda_scaled / (self.r * self.r))
    }

    /// First eigenvalue together with the sampled eigenfunction.
    pub fn eigenfunction(&self, tol: f64) -> Result<HardyMode> {
        let (lambda_scaled, samples) = self.solve_scaled(tol, true)?;
        Ok(HardyMode {
            problem: *self,
            eigenvalue: lambda_scaled / (self.r * self.r),
            samples: samples.expect("recording solve returns samples"),
        })
    }

    /// Bisection on `Lambda = lambda R^2` in the log variable. The node
    /// count of the shot solution is the bracket predicate, so only integer
    /// information crosses the bisection boundary.
    fn solve_scaled(&self, tol: f64, record: bool) -> Result<(f64, Option<Vec<(f64, f64, f64)>>)> {
        if !(tol > 0.0 && tol <= 1e-2) {
            return Err(Error::OutOfRange { what: "tol", value: tol, lo: 0.0, hi: 1e-2 });
        }
        // lambda >= -max V = -(1+delta)/(4R^2), so Lambda_lo is a safe
        // node-free lower bracket without integrating it.
        let mut lo = -0.25 * (1.0 + self.delta) - 1.0;
        let mut hi = fmath::fmax(1.0, self.delta);
        let mut expansions = 0;
        while self.shoot_scaled(hi, false)?.0 == 0 {
            lo = hi;
            hi *= 4.0;
            expansions += 1;
            if expansions > 100 {
                return Err(Error::BracketFailure(
                    "no node transition while expanding the Hardy bracket".into(),
                ));
            }
        }

        // The stopping rule must not involve R: bisection runs on the
        // R-free unknown Lambda, which is what makes the 1/R^2 scaling law
        // exact across problem instances.
        let rel_target = 1e-12;
        let mut iters = 0;
        loop {
            let width = hi - lo;
            let mid = 0.5 * (lo + hi);
            if width <= fmath::fmax(fmath::abs(mid) * rel_target, 1e-30) {
                break;
            }
            iters += 1;
            if iters > 1500 {
                return Err(Error::NoConvergence(format!(
                    "Hardy bisection stalled at bracket [{lo}, {hi}]"
                )));
            }
            if self.shoot_scaled(mid, false)?.0 >= 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }

        let lambda_scaled = 0.5 * (lo + hi);
        if record {
            let (_, samples) = self.shoot_scaled(lo, true)?;
            Ok((lambda_scaled, samples))
        } else {
            Ok((lambda_scaled, None))
        }
    }

    /// Integrate `psi'' = -(delta/4 + Lambda e^{2s}) psi` from `psi(0) = 0`,
    /// `psi'(0) = 1`, counting interior sign changes. Rescales the linear
    /// state to dodge overflow in deep-negative-`Lambda` shots.
    fn shoot_scaled(&self, lambda_scaled: f64, record: bool) -> Result<(u32, Option<Vec<(f64, f64, f64)>>)> {
        let s_max = fmath::ln(2.0 * self.k);
        let delta4 = 0.25 * self.delta;
        let mut y = [0.0f64, 1.0];
        let mut nodes = 0u32;
        let mut last_sign = 1.0f64;
        let mut log_scale = 0.0f64;
        let mut max_log = f64::NEG_INFINITY;
        let mut samples: Vec<(f64, f64, f64, f64)> = Vec::new();
        if record {
            samples.push((0.0, y[0], y[1], log_scale));
        }
        let sample_cap = s_max / 3000.0;

        let mut stepper: Stepper<2> = Stepper::new(StepOpts {
            rtol: 1e-12,
            atol: 1e-16,
            max_steps: 30_000_000,
        });
        let mut rhs = |s: f64, y: &[f64; 2]| {
            let coeff = delta4 + lambda_scaled * fmath::exp(2.0 * s);
            [y[1], -coeff * y[0]]
        };
        let mut cap = |s: f64, _y: &[f64; 2]| {
            let coeff = delta4 + lambda_scaled * fmath::exp(2.0 * s);
            let c = if coeff > 0.0 {
                0.5 * core::f64::consts::PI / fmath::sqrt(fmath::fmax(coeff, 1.0))
            } else {
                2.0 / fmath::sqrt(fmath::fmax(-coeff, 1.0))
            };
            if record {
                fmath::fmin(c, sample_cap)
            } else {
                c
            }
        };
        let mut on_step = |_sp: f64, _yp: &[f64; 2], s: f64, y: &mut [f64; 2]| {
            let mag = fmath::fmax(fmath::abs(y[0]), fmath::abs(y[1]));
            if mag > 0.0 && !(1e-100..=1e100).contains(&mag) {
                y[0] /= mag;
                y[1] /= mag;
                log_scale += fmath::ln(mag);
            }
            if y[0] != 0.0 {
                let sign = if y[0] > 0.0 { 1.0 } else { -1.0 };
                if sign != last_sign {
                    nodes += 1;
                    last_sign = sign;
                }
                max_log = fmath::fmax(max_log, fmath::ln(fmath::abs(y[0])) + log_scale);
            }
            if record {
                samples.push((s, y[0], y[1], log_scale));
                return true;
            }
            // The bracket predicate only asks whether a node exists, so a
            // confirmed first node ends the shot. Past the turning point
            // psi'' = -coeff psi is convex away from the axis: once psi and
            // psi' share a sign no node can follow either, and stopping
            // there dodges an exponential stretch that alone can dwarf the
            // whole solve for large k.
            if nodes >= 1 {
                return false;
            }
            let coeff = delta4 + lambda_scaled * fmath::exp(2.0 * s);
            !(coeff < 0.0 && y[0] * y[1] > 0.0)
        };
        stepper.advance(0.0, s_max, &mut y, &mut rhs, &mut cap, &mut on_step)?;

        let out = if record {
            Some(
                samples
                    .iter()
                    .map(|&(s, p, dp, ls)| {
                        let f = fmath::exp(ls - max_log);
                        (s, p * f, dp * f)
                    })
                    .collect(),
            )
        } else {
            None
        };
        Ok((nodes, out))
    }
}

/// First Hardy eigenfunction, sampled in the log variable.
#[derive(Debug, Clone)]
pub struct HardyMode {
    pub problem: HardyProblem,
    /// Signed first eigenvalue `lambda_1`.
    pub eigenvalue: f64,
    samples: Vec<(f64, f64, f64)>, // (s, psi, psi') with max |psi| = 1
}

impl HardyMode {
    /// `(phi(x), phi'(x))` on `[R, 2kR]`, from `phi = sqrt(x) psi(log(x/R))`.
    pub fn eval_phi(&self, x: f64) -> (f64, f64) {
        let s = fmath::ln(x / self.problem.r);
        let (psi, dpsi) = self.eval_psi(s);
        let sq = fmath::sqrt(x);
        (sq * psi, (0.5 * psi + dpsi) / sq)
    }

    fn eval_psi(&self, s: f64) -> (f64, f64) {
        let n = self.samples.len();
        let s = fmath::fmax(self.samples[0].0, fmath::fmin(s, self.samples[n - 1].0));
        let idx = self.samples.partition_point(|p| p.0 <= s).clamp(1, n - 1) - 1;
        let (sa, pa, da) = self.samples[idx];
        let (sb, pb, db) = self.samples[idx + 1];
        let w = sb - sa;
        if w == 0.0 {
            return (pa, da);
        }
        let x = (s - sa) / w;
        let (x2, x3) = (x * x, x * x * x);
        let p = pa * (2.0 * x3 - 3.0 * x2 + 1.0)
            + da * w * (x3 - 2.0 * x2 + x)
            + pb * (-2.0 * x3 + 3.0 * x2)
            + db * w * (x3 - x2);
        let d = (pa * (6.0 * x2 - 6.0 * x)
            + da * w * (3.0 * x2 - 4.0 * x + 1.0)
            + pb * (6.0 * x - 6.0 * x2)
            + db * w * (3.0 * x2 - 2.0 * x))
            / w;
        (p, d)
    }
}

/// Rotationally symmetric manifold `(R^n, dr^2 + h(r)^2 g_{S^{n-1}})` built
/// from a radial curvature profile `K` via `h'' + K h = 0`, `h(0) = 0`,
/// `h'(0) = 1`. The ratio `A = h'/h` drives the radial identities
/// `Delta r = (n-1) A`, `|nabla dr|^2 = (n-1) A^2`,
/// `Ric(nabla r, nabla r) = (n-1) K`.
#[derive(Debug, Clone)]
pub struct RotSymManifold {
    n: u32,
    warping: WarpingSolution,
}

/// `int |grad u|^2` against the two lower bounds of the Hardy-type
/// inequality: the interior weight integral and the boundary correction.
#[derive(Debug, Clone, Copy)]
pub struct HardyInequality {
    pub lhs: f64,
    pub rhs_interior: f64,
    pub rhs_boundary: f64,
}

/// Radial C^2 bump `u(r) = amplitude * (1 - ((r - center)/width)^2)^3` on
/// `|r - center| < width`, zero outside.
#[derive(Debug, Clone, Copy)]
pub struct RadialBump {
    pub center: f64,
    pub width: f64,
    pub amplitude: f64,
}

impl RadialBump {
    pub fn new(center: f64, width: f64, amplitude: f64) -> Result<Self> {
        if !(width.is_finite() && width > 0.0 && center.is_finite() && amplitude.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "bad bump (center {center}, width {width}, amplitude {amplitude})"
            )));
        }
        Ok(RadialBump { center, width, amplitude })
    }

    /// `(u(r), u'(r))`.
    pub fn eval(&self, r: f64) -> (f64, f64) {
        let s = (r - self.center) / self.width;
        if fmath::abs(s) >= 1.0 {
            return (0.0, 0.0);
        }
        let q = 1.0 - s * s;
        (self.amplitude * q * q * q, -6.0 * self.amplitude * s * q * q / self.width)
    }

    pub fn support(&self) -> (f64, f64) {
        (self.center - self.width, self.center + self.width)
    }
}

impl RotSymManifold {
    /// Solve the warping problem for a radial-curvature profile out to
    /// `r_max`.
    pub fn new(n: u32, curvature: &CurvatureProfile, r_max: f64, tol: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("dimension n = {n} must be >= 2")));
        }
        if curvature.kind() != ProfileKind::RadialCurvature {
            return Err(Error::InvalidParameter(
                "a RotSymManifold needs a profile of kind radial_curvature".into(),
            ));
        }
        let warping = solve_warping(curvature, r_max, tol)?;
        Ok(RotSymManifold { n, warping })
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn warping(&self) -> &WarpingSolution {
        &self.warping
    }

    pub fn curvature(&self) -> &CurvatureProfile {
        self.warping.profile()
    }

    /// `A(r) = h'(r)/h(r)`.
    pub fn a_ratio(&self, r: f64) -> Result<f64> {
        self.warping.s_at(r)
    }

    /// The Hardy-type weight
    /// `W(r) = 1/(4r^2) + (n-1)(n-3)/4 A(r)^2 - (n-1)/2 K(r)`,
    /// which tends to `(n-1)^2 kappa / 4 + (1 - (n-1)^2 beta) / (4 r^2)`
    /// along a `-kappa + beta/r^2` tail.
    pub fn hardy_weight(&self, r: f64) -> Result<f64> {
        let a = self.warping.s_at(r)?;
        Ok(self.weight_clamped(r, a))
    }

    fn weight_clamped(&self, r: f64, a: f64) -> f64 {
        let nm1 = (self.n - 1) as f64;
        let nm3 = self.n as f64 - 3.0;
        let k = self.warping.profile().eval(r);
        0.25 / (r * r) + 0.25 * nm1 * nm3 * a * a - 0.5 * nm1 * k
    }

    /// Quadrature check of the Hardy-type inequality on the exterior of the
    /// geodesic ball of radius `r_boundary`:
    ///
    /// ```text
    /// int |grad u|^2 >= int W u^2 + 1/2 int_{boundary} (Delta r - 1/R) u^2,
    /// ```
    ///
    /// for a radial test bump. Requires the mean-curvature hypothesis
    /// `(n-1) A(R) >= (n-1)/R` (automatic for `K <= 0`) and the bump support
    /// inside the solved range. Returns the three integrals; both
    /// inequalities (`lhs >= interior + boundary` and `lhs >= interior`)
    /// are the caller's to assert.
    pub fn verify_hardy_inequality(
        &self,
        r_boundary: f64,
        bump: &RadialBump,
    ) -> Result<HardyInequality> {
        let w = &self.warping;
        if !(r_boundary >= w.t_series() && r_boundary <= w.r_max()) {
            return Err(Error::OutOfRange {
                what: "r_boundary",
                value: r_boundary,
                lo: w.t_series(),
                hi: w.r_max(),
            });
        }
        let (_, hi_supp) = bump.support();
        if hi_supp > w.r_max() {
            return Err(Error::Precondition(format!(
                "bump support reaches {hi_supp}, beyond the solved range {}",
                w.r_max()
            )));
        }
        let a_boundary = w.s_at(r_boundary)?;
        if a_boundary < 1.0 / r_boundary - 1e-12 {
            return Err(Error::Precondition(format!(
                "mean-curvature hypothesis fails: A({r_boundary}) = {a_boundary} < 1/R"
            )));
        }

        let nm1 = (self.n - 1) as f64;
        let lo = fmath::fmax(r_boundary, bump.support().0);
        let hi = hi_supp;
        let omega = crate::unit_sphere_area(self.n);
        if hi <= lo {
            // Support entirely inside the ball: every integral vanishes.
            return Ok(HardyInequality { lhs: 0.0, rhs_interior: 0.0, rhs_boundary: 0.0 });
        }

        let density = |r: f64| fmath::exp(nm1 * w.sample(r).0);
        let mut grad = |r: f64| {
            let (_, du) = bump.eval(r);
            du * du * density(r)
        };
        let mut weight = |r: f64| {
            let (u, _) = bump.eval(r);
            let a = w.sample(r).1;
            self.weight_clamped(r, a) * u * u * density(r)
        };
        let mut pts: Vec<f64> = alloc::vec![lo, bump.center, hi];
        pts.retain(|&p| p >= lo && p <= hi);
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let lhs = omega * quad::integrate_with_breakpoints(&mut grad, &pts, 1e-13, 1e-11)?;
        let rhs_interior = omega * quad::integrate_with_breakpoints(&mut weight, &pts, 1e-13, 1e-11)?;

        let (u_b, _) = bump.eval(r_boundary);
        let rhs_boundary = 0.5
            * (nm1 * a_boundary - 1.0 / r_boundary)
            * u_b
            * u_b
            * density(r_boundary)
            * omega;
        Ok(HardyInequality { lhs, rhs_interior, rhs_boundary })
    }
}
