//! Radial Dirichlet eigenvalue problems on model-space balls.
//!
//! The first Dirichlet eigenfunction of a geodesic ball `B(L)` in the model
//! space `(R^n, dr^2 + J(r)^2 g_{S^{n-1}})` is radial, `psi(y) = h(r(y))`,
//! and `h` solves
//!
//! ```text
//! -h'' - (n-1) S(x) h' = lambda h     on (0, L],   h(L) = 0,
//! ```
//!
//! with regular-center data `h(0) = 1`, `h'(0) = 0` and the balance
//! `-n h''(0) = lambda h(0)`. Eigenvalues are found by shooting from a
//! series seed with node-count bisection.
//!
//! Counting eigenvalues below an energy runs instead on the unitarily
//! equivalent 1D Schroedinger operator `-u'' + V u` obtained from
//! `u = J^{(n-1)/2} h`, with effective potential
//!
//! ```text
//! V(x) = (n-1)(n-3)/4 * S(x)^2 - (n-1)/2 * R(x),
//! ```
//!
//! which eliminates the exponentially large volume weight. The count on
//! `[eps, L]` with Dirichlet cutoffs is the floor of the Pruefer phase
//! `theta(L)/pi`, where `theta' = cos^2 theta + (E - V) sin^2 theta` and
//! `theta(eps) = 0`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmath;
use crate::ode::WarpingSolution;
use crate::rk::{StepOpts, Stepper};

/// Dimension plus warping data: the rotationally symmetric model space.
#[derive(Debug, Clone)]
pub struct ModelSpace {
    n: u32,
    warping: WarpingSolution,
}

impl ModelSpace {
    pub fn new(n: u32, warping: WarpingSolution) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("dimension n = {n} must be >= 2")));
        }
        Ok(ModelSpace { n, warping })
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn warping(&self) -> &WarpingSolution {
        &self.warping
    }

    /// Bottom of the essential spectrum, `(n-1)^2 kappa / 4`.
    pub fn essential_bottom(&self) -> Result<f64> {
        let tail = self.warping.profile().require_tail("essential_bottom")?;
        let nm1 = (self.n - 1) as f64;
        Ok(nm1 * nm1 * tail.kappa / 4.0)
    }

    /// Volume density `J(r)^{n-1}` of the warped metric.
    pub fn volume_density(&self, r: f64) -> Result<f64> {
        let lj = self.warping.log_j_at(r)?;
        Ok(fmath::exp((self.n - 1) as f64 * lj))
    }

    /// Effective potential of the Liouville-transformed operator.
    pub fn effective_potential(&self, x: f64) -> Result<f64> {
        self.warping.eval(x)?;
        Ok(self.potential_clamped(x))
    }

    pub(crate) fn potential_clamped(&self, x: f64) -> f64 {
        let nm1 = (self.n - 1) as f64;
        let nm3 = self.n as f64 - 3.0;
        let (_, s) = self.warping.sample(x);
        let r = self.warping.profile().eval(x);
        0.25 * nm1 * nm3 * s * s - 0.5 * nm1 * r
    }
}

#[derive(Debug, Clone, Copy)]
struct RawSample {
    x: f64,
    h: f64,
    hp: f64,
    log_scale: f64,
}

/// One Dirichlet eigenvalue with its sampled radial eigenfunction.
///
/// Samples are normalized so that `max |h| = 1`.
#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Converged eigenvalue (bracket midpoint).
    pub eigenvalue: f64,
    /// Ball radius `L`.
    pub radius: f64,
    /// Interior node count of the reported eigenfunction.
    pub node_count: u32,
    /// Radius below which the center series replaces integration.
    pub eps_origin: f64,
    /// Achieved eigenvalue tolerance (half the final bracket width).
    pub tol: f64,
    /// `|h(L)| / max |h|` of the reported run.
    pub dirichlet_residual: f64,
    n: u32,
    samples: Vec<(f64, f64, f64)>, // (x, h, h') normalized
}

impl EigenResult {
    /// Sampled `(r, h(r))` pairs of the normalized eigenfunction.
    pub fn h_samples(&self) -> Vec<(f64, f64)> {
        self.samples.iter().map(|&(x, h, _)| (x, h)).collect()
    }

    /// Normalized eigenfunction value at `r` (cubic Hermite between samples,
    /// center series below the first one).
    pub fn h_at(&self, r: f64) -> f64 {
        self.h_and_hp_at(r).0
    }

    pub(crate) fn h_and_hp_at(&self, r: f64) -> (f64, f64) {
        let first = self.samples[0];
        if r <= first.0 {
            // h(x) ~ h0 (1 - lambda x^2 / 2n) near the regular center.
            let lam = self.eigenvalue;
            let nf = self.n as f64;
            let h0 = first.1 / (1.0 - lam * first.0 * first.0 / (2.0 * nf));
            return (h0 * (1.0 - lam * r * r / (2.0 * nf)), -h0 * lam * r / nf);
        }
        let last = self.samples[self.samples.len() - 1];
        if r >= last.0 {
            return (last.1, last.2);
        }
        let idx = self.samples.partition_point(|s| s.0 <= r) - 1;
        let (xa, ha, hpa) = self.samples[idx];
        let (xb, hb, hpb) = self.samples[idx + 1];
        let w = xb - xa;
        let x = (r - xa) / w;
        let x2 = x * x;
        let x3 = x2 * x;
        let h = ha * (2.0 * x3 - 3.0 * x2 + 1.0)
            + hpa * w * (x3 - 2.0 * x2 + x)
            + hb * (-2.0 * x3 + 3.0 * x2)
            + hpb * w * (x3 - x2);
        let hp = (ha * (6.0 * x2 - 6.0 * x)
            + hpa * w * (3.0 * x2 - 4.0 * x + 1.0)
            + hb * (6.0 * x - 6.0 * x2)
            + hpb * w * (3.0 * x2 - 2.0 * x))
            / w;
        (h, hp)
    }
}

struct Shot {
    nodes: u32,
    end_norm: f64,
    samples: Option<Vec<RawSample>>,
}

/// Integrate the radial equation at trial eigenvalue `lambda`, counting sign
/// changes of `h`. The pair `(h, h')` is rescaled whenever it leaves
/// `[1e-6, 1e6]` (the equation is linear), with the accumulated log scale
/// tracked so samples can be renormalized afterwards. Integration accuracy
/// follows the eigenvalue tolerance: bracket placement is decided by the
/// end sign of these shots, so their error must stay below `tol`.
fn shoot(m: &ModelSpace, l: f64, lambda: f64, tol: f64, record: bool) -> Result<Shot> {
    let w = m.warping();
    let x0 = w.t_series();
    let nf = m.n as f64;
    let nm1 = nf - 1.0;

    // Center series h = 1 + c2 x^2 + c4 x^4 with S ~ 1/x - R(0) x / 3.
    let r0 = w.profile().value_at_origin();
    let c2 = -lambda / (2.0 * nf);
    let c4 = c2 * (2.0 * nm1 * r0 / 3.0 - lambda) / (4.0 * nf + 8.0);
    let mut y = [
        1.0 + c2 * x0 * x0 + c4 * x0 * x0 * x0 * x0,
        2.0 * c2 * x0 + 4.0 * c4 * x0 * x0 * x0,
    ];

    let mut log_scale = 0.0f64;
    let mut nodes = 0u32;
    let mut last_sign = 1.0f64;
    let mut max_log = fmath::ln(fmath::abs(y[0]));
    let mut samples: Vec<RawSample> = Vec::new();
    if record {
        samples.push(RawSample { x: x0, h: y[0], hp: y[1], log_scale });
    }

    let osc_cap = 0.5 * core::f64::consts::PI / fmath::sqrt(fmath::fmax(lambda, 1.0));
    let sample_cap = |x: f64| fmath::fmax(2e-3 * x, 1e-4);

    let rtol = fmath::fmax(2e-14, fmath::fmin(1e-10, tol * 1e-3));
    let mut stepper: Stepper<2> = Stepper::new(StepOpts {
        rtol,
        atol: rtol * 1e-6,
        max_steps: 20_000_000,
    });
    let mut rhs = |x: f64, y: &[f64; 2]| {
        let (_, s) = w.sample(x);
        [y[1], -nm1 * s * y[1] - lambda * y[0]]
    };
    let mut cap = |x: f64, _y: &[f64; 2]| {
        let c = fmath::fmin(osc_cap, 0.1 * x + 0.5);
        if record {
            fmath::fmin(c, sample_cap(x))
        } else {
            c
        }
    };
    let mut on_step = |_tp: f64, _yp: &[f64; 2], x: f64, y: &mut [f64; 2]| {
        let mag = fmath::fmax(fmath::abs(y[0]), fmath::abs(y[1]));
        if mag > 0.0 && !(1e-6..=1e6).contains(&mag) {
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
            samples.push(RawSample { x, h: y[0], hp: y[1], log_scale });
        }
        true
    };
    stepper.advance(x0, l, &mut y, &mut rhs, &mut cap, &mut on_step)?;

    let end_norm = if y[0] == 0.0 {
        0.0
    } else {
        fmath::exp(fmath::ln(fmath::abs(y[0])) + log_scale - max_log)
    };
    let samples = if record {
        let normalized = samples
            .iter()
            .map(|s| {
                let f = fmath::exp(s.log_scale - max_log);
                RawSample { x: s.x, h: s.h * f, hp: s.hp * f, log_scale: 0.0 }
            })
            .collect();
        Some(normalized)
    } else {
        None
    };
    Ok(Shot { nodes, end_norm, samples })
}

/// Dirichlet eigenvalue of `B(L)` whose eigenfunction has `nodes` interior
/// nodes (`nodes = 0` is the first eigenvalue).
pub fn dirichlet_eigen(m: &ModelSpace, l: f64, nodes: u32, tol: f64) -> Result<EigenResult> {
    let w = m.warping();
    if !(l > 10.0 * w.t_series() && l <= w.r_max()) {
        return Err(Error::OutOfRange { what: "L", value: l, lo: 10.0 * w.t_series(), hi: w.r_max() });
    }
    if !(tol > 0.0 && tol <= 1e-2) {
        return Err(Error::OutOfRange { what: "tol", value: tol, lo: 0.0, hi: 1e-2 });
    }

    // lambda = 0 gives h identically 1: zero nodes, a guaranteed lower bracket.
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    let mut expansions = 0;
    loop {
        let shot = shoot(m, l, hi, tol, false)?;
        if shot.nodes > nodes {
            break;
        }
        lo = hi;
        hi *= 2.0;
        expansions += 1;
        if expansions > 120 {
            return Err(Error::BracketFailure(format!(
                "no eigenfunction with {} nodes below lambda = {hi:e} on [0, {l}]",
                nodes + 1
            )));
        }
    }

    let mut end_norm = f64::INFINITY;
    let mut iters = 0;
    loop {
        let width = hi - lo;
        if width <= tol && end_norm <= tol {
            break;
        }
        if width <= 8.0 * f64::EPSILON * fmath::fmax(fmath::abs(hi), 1e-12) {
            break;
        }
        iters += 1;
        if iters > 500 {
            return Err(Error::NoConvergence(format!(
                "eigenvalue bisection stalled at bracket [{lo}, {hi}]"
            )));
        }
        let mid = 0.5 * (lo + hi);
        let shot = shoot(m, l, mid, tol, false)?;
        if shot.nodes > nodes {
            hi = mid;
        } else {
            lo = mid;
            end_norm = shot.end_norm;
        }
    }

    let reported = shoot(m, l, lo, tol, true)?;
    let samples = reported
        .samples
        .expect("recording run returns samples")
        .iter()
        .map(|s| (s.x, s.h, s.hp))
        .collect();
    Ok(EigenResult {
        eigenvalue: 0.5 * (lo + hi),
        radius: l,
        node_count: reported.nodes,
        eps_origin: w.t_series(),
        tol: fmath::fmax(0.5 * (hi - lo), f64::EPSILON * fmath::abs(hi)),
        dirichlet_residual: reported.end_norm,
        n: m.n,
        samples,
    })
}

/// First (ground-state) Dirichlet eigenvalue of the ball `B(L)`.
pub fn first_dirichlet_eigen(m: &ModelSpace, l: f64, tol: f64) -> Result<EigenResult> {
    dirichlet_eigen(m, l, 0, tol)
}

/// Report of the radial monotonicity check on an eigenfunction:
/// `h > 0` on `[0, L)` and every sampled difference quotient of `h`
/// negative on `(eps_origin, L]`, up to a tolerance band that absorbs
/// solver noise of size `tol * max|h|`.
#[derive(Debug, Clone)]
pub struct Lemma21Report {
    pub positive_ok: bool,
    pub decreasing_ok: bool,
    /// Tolerance band applied to both checks, in units of `max |h| = 1`.
    pub band: f64,
    /// `(x, offending value)` for each violation.
    pub violations: Vec<(f64, f64)>,
}

impl Lemma21Report {
    pub fn pass(&self) -> bool {
        self.positive_ok && self.decreasing_ok
    }
}

/// Check positivity and strict radial decrease of an eigenfunction.
///
/// A ground state (`node_count = 0`) must pass; an excited state fails on
/// both counts.
pub fn check_lemma21(res: &EigenResult) -> Lemma21Report {
    let band = 10.0 * fmath::fmax(res.tol, 1e-14);
    let mut report =
        Lemma21Report { positive_ok: true, decreasing_ok: true, band, violations: Vec::new() };
    for &(x, h, _) in &res.samples {
        if x < res.radius * (1.0 - 1e-9) && h <= -band {
            report.positive_ok = false;
            report.violations.push((x, h));
        }
    }
    for w in res.samples.windows(2) {
        let (xa, ha, _) = w[0];
        let (xb, hb, _) = w[1];
        if xb <= res.eps_origin {
            continue;
        }
        if hb - ha >= band {
            report.decreasing_ok = false;
            report.violations.push((0.5 * (xa + xb), (hb - ha) / (xb - xa)));
        }
    }
    report
}

/// Number of Dirichlet eigenvalues strictly below `e` of
/// `-u'' + V u` on `[eps_origin, l]`, by Pruefer phase integration.
pub fn count_eigenvalues_below(m: &ModelSpace, l: f64, e: f64, eps_origin: f64) -> Result<u32> {
    let w = m.warping();
    if !(eps_origin >= w.t_series()) {
        return Err(Error::OutOfRange {
            what: "eps_origin",
            value: eps_origin,
            lo: w.t_series(),
            hi: l,
        });
    }
    if !(l > eps_origin && l <= w.r_max()) {
        return Err(Error::OutOfRange { what: "L", value: l, lo: eps_origin, hi: w.r_max() });
    }

    let mut theta = [0.0f64];
    let mut stepper: Stepper<1> = Stepper::new(StepOpts {
        rtol: 1e-10,
        atol: 1e-10,
        max_steps: 40_000_000,
    });
    let mut rhs = |x: f64, y: &[f64; 1]| {
        let v = m.potential_clamped(x);
        let (sn, cs) = (fmath::sin(y[0]), fmath::cos(y[0]));
        [cs * cs + (e - v) * sn * sn]
    };
    // Resolve the local oscillation wavelength on the classically allowed
    // side, the relaxation rate on the forbidden side, and the variation
    // scale of V itself.
    let mut cap = |x: f64, _y: &[f64; 1]| {
        let v = m.potential_clamped(x);
        let osc = 0.5 * core::f64::consts::PI / fmath::sqrt(fmath::fmax(e - v, 1.0));
        let relax = 2.0 / fmath::sqrt(fmath::fmax(v - e, 1.0));
        fmath::fmin(fmath::fmin(osc, relax), 0.2 * (x + 1.0))
    };
    stepper.advance(eps_origin, l, &mut theta, &mut rhs, &mut cap, &mut |_, _, _, _| true)?;

    let count = fmath::floor(theta[0] / core::f64::consts::PI);
    Ok(if count > 0.0 { count as u32 } else { 0 })
}

/// Growth behavior of an eigenvalue-count curve over its last two decades.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Growing,
    Saturated,
    Inconclusive,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Growing => "growing",
            Classification::Saturated => "saturated",
            Classification::Inconclusive => "inconclusive",
        }
    }
}

/// Eigenvalue count `N(L, E)` as a function of the truncation radius `L`.
#[derive(Debug, Clone)]
pub struct CountCurve {
    pub n: u32,
    pub kappa: f64,
    pub beta: f64,
    pub threshold_energy: f64,
    pub eps_origin: f64,
    pub points: Vec<(f64, u32)>,
    pub classification: Classification,
}

/// Evaluate the count at every radius in `l_list` and classify the growth.
///
/// Counts are computed at both `eps_origin` and `eps_origin / 4`; any
/// disagreement marks the cutoff as unresolved and the curve inconclusive.
/// `Growing` means the count rises across the last two decades of `L`
/// (strictly per decade when `beta (n-1)^2 >= 4`, where the expected gain
/// per decade is large; over the two decades combined otherwise);
/// `Saturated` means it is constant there.
pub fn count_curve(
    m: &ModelSpace,
    e: f64,
    l_list: &[f64],
    eps_origin: f64,
) -> Result<CountCurve> {
    let tail = m.warping().profile().require_tail("count_curve")?;
    if l_list.is_empty() {
        return Err(Error::InvalidParameter("empty L list".into()));
    }
    for w in l_list.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::InvalidParameter("L list must be strictly increasing".into()));
        }
    }
    if eps_origin < 4.0 * m.warping().t_series() {
        return Err(Error::Precondition(format!(
            "eps_origin = {eps_origin} must be at least 4 * t_series = {} for the cutoff \
             convergence check",
            4.0 * m.warping().t_series()
        )));
    }

    let mut points = Vec::with_capacity(l_list.len());
    let mut consistent = true;
    for &l in l_list {
        let c = count_eigenvalues_below(m, l, e, eps_origin)?;
        let c_fine = count_eigenvalues_below(m, l, e, eps_origin / 4.0)?;
        if c != c_fine {
            consistent = false;
        }
        points.push((l, c));
    }

    let classification = classify(m.n, tail.beta, &points, consistent);
    Ok(CountCurve {
        n: m.n,
        kappa: tail.kappa,
        beta: tail.beta,
        threshold_energy: e,
        eps_origin,
        points,
        classification,
    })
}

fn classify(n: u32, beta: f64, points: &[(f64, u32)], consistent: bool) -> Classification {
    if !consistent || points.len() < 2 {
        return Classification::Inconclusive;
    }
    let lmax = points[points.len() - 1].0;
    if lmax < points[0].0 * 99.9 {
        return Classification::Inconclusive;
    }
    let cut = lmax / 100.0 * (1.0 - 1e-9);
    let tail: Vec<&(f64, u32)> = points.iter().filter(|p| p.0 >= cut).collect();
    if tail.iter().all(|p| p.1 == tail[0].1) {
        return Classification::Saturated;
    }
    let count_at_or_below = |l: f64| -> Option<u32> {
        points.iter().filter(|p| p.0 <= l * (1.0 + 1e-9)).map(|p| p.1).next_back()
    };
    let c_end = points[points.len() - 1].1;
    let (c_mid, c_lo) = match (count_at_or_below(lmax / 10.0), count_at_or_below(lmax / 100.0)) {
        (Some(m), Some(l)) => (m, l),
        _ => return Classification::Inconclusive,
    };
    let nm1 = (n - 1) as f64;
    let fast = beta * nm1 * nm1 >= 4.0;
    let growing = if fast { c_end > c_mid && c_mid > c_lo } else { c_end > c_lo };
    if growing {
        Classification::Growing
    } else {
        Classification::Inconclusive
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode::solve_warping;
    use crate::profiles::{CurvatureProfile, ProfileKind};

    fn flat_model(n: u32, r_max: f64) -> ModelSpace {
        let p = CurvatureProfile::flat(ProfileKind::ModelLowerBound);
        ModelSpace::new(n, solve_warping(&p, r_max, 1e-10).unwrap()).unwrap()
    }

    #[test]
    fn flat_three_ball_ground_state_is_pi_squared_over_l_squared() {
        // n = 3 flat: h = sin(sqrt(lambda) r) / r, lambda_1(B(pi)) = 1.
        let m = flat_model(3, 4.0);
        let res = first_dirichlet_eigen(&m, core::f64::consts::PI, 1e-9).unwrap();
        assert!((res.eigenvalue - 1.0).abs() < 1e-8, "lambda = {}", res.eigenvalue);
        assert_eq!(res.node_count, 0);
        assert!(res.dirichlet_residual < 1e-6);
        // h(r) = sin(r)/r against samples.
        let h = res.h_at(1.5);
        assert!((h - 1.5f64.sin() / 1.5).abs() < 1e-6, "h(1.5) = {h}");
    }

    #[test]
    fn second_eigenvalue_has_one_node_and_fails_monotonicity() {
        let m = flat_model(3, 4.0);
        let l = core::f64::consts::PI;
        let e2 = dirichlet_eigen(&m, l, 1, 1e-9).unwrap();
        // n = 3 flat B(pi): lambda_k = k^2.
        assert!((e2.eigenvalue - 4.0).abs() < 1e-7, "lambda_2 = {}", e2.eigenvalue);
        assert_eq!(e2.node_count, 1);
        assert!(!check_lemma21(&e2).pass());
        let e1 = first_dirichlet_eigen(&m, l, 1e-9).unwrap();
        assert!(check_lemma21(&e1).pass());
    }

    #[test]
    fn effective_potential_matches_constant_curvature_forms() {
        // n = 3, kappa = 1, beta = 2: V = -R = 1 - 2/x^2 in the tail.
        let p = CurvatureProfile::with_tail(1.0, 2.0, 2.0, ProfileKind::ModelLowerBound).unwrap();
        let m = ModelSpace::new(3, solve_warping(&p, 20.0, 1e-10).unwrap()).unwrap();
        let v = m.effective_potential(10.0).unwrap();
        assert!((v - 0.98).abs() < 1e-12, "V(10) = {v}");

        // n = 2 hyperbolic: V = 1/2 - coth(x)^2 / 4 -> 1/4.
        let hyp = CurvatureProfile::with_tail(1.0, 0.0, 1.0, ProfileKind::ModelLowerBound).unwrap();
        let m2 = ModelSpace::new(2, solve_warping(&hyp, 40.0, 1e-10).unwrap()).unwrap();
        let coth = |x: f64| 1.0 / x.tanh();
        for x in [1.0, 3.0, 30.0] {
            let v = m2.effective_potential(x).unwrap();
            let exact = 0.5 - coth(x) * coth(x) / 4.0;
            assert!((v - exact).abs() < 1e-7, "V({x}) = {v} vs {exact}");
        }
        assert!(m.effective_potential(1e-4).is_err());
    }

    #[test]
    fn counts_vanish_below_the_potential_floor() {
        // n = 3 hyperbolic: V = 1 everywhere, so no spectrum below 1/2.
        let hyp = CurvatureProfile::with_tail(1.0, 0.0, 1.0, ProfileKind::ModelLowerBound).unwrap();
        let m = ModelSpace::new(3, solve_warping(&hyp, 100.0, 1e-9).unwrap()).unwrap();
        assert_eq!(count_eigenvalues_below(&m, 100.0, 0.5, 0.01).unwrap(), 0);
        // And plenty above the floor on a long interval.
        assert!(count_eigenvalues_below(&m, 100.0, 2.0, 0.01).unwrap() > 10);
    }

    #[test]
    fn count_is_monotone_in_energy_and_radius() {
        let p = CurvatureProfile::with_tail(1.0, 2.0, 2.0, ProfileKind::ModelLowerBound).unwrap();
        let m = ModelSpace::new(2, solve_warping(&p, 200.0, 1e-9).unwrap()).unwrap();
        let mut prev = 0;
        for e in [0.05, 0.15, 0.2499, 0.4, 1.0] {
            let c = count_eigenvalues_below(&m, 200.0, e, 0.02).unwrap();
            assert!(c >= prev, "count not monotone in E");
            prev = c;
        }
        let mut prev = 0;
        for l in [10.0, 40.0, 120.0, 200.0] {
            let c = count_eigenvalues_below(&m, l, 1.0, 0.02).unwrap();
            assert!(c >= prev, "count not monotone in L");
            prev = c;
        }
    }

    #[test]
    fn domain_monotonicity_of_the_ground_state() {
        let m = flat_model(2, 3.0);
        let a = first_dirichlet_eigen(&m, 1.0, 1e-8).unwrap();
        let b = first_dirichlet_eigen(&m, 2.0, 1e-8).unwrap();
        let c = first_dirichlet_eigen(&m, 3.0, 1e-8).unwrap();
        assert!(a.eigenvalue > b.eigenvalue && b.eigenvalue > c.eigenvalue);
    }

    #[test]
    fn count_curve_requires_tail_and_wide_spans() {
        let flat = CurvatureProfile::flat(ProfileKind::ModelLowerBound);
        let m = ModelSpace::new(2, solve_warping(&flat, 200.0, 1e-9).unwrap()).unwrap();
        assert!(matches!(
            count_curve(&m, 0.1, &[10.0, 100.0], 0.02),
            Err(Error::MissingTail(_))
        ));

        let p = CurvatureProfile::with_tail(1.0, 0.5, 1.0, ProfileKind::ModelLowerBound).unwrap();
        let m = ModelSpace::new(2, solve_warping(&p, 50.0, 1e-9).unwrap()).unwrap();
        let curve = count_curve(&m, 0.2, &[10.0, 50.0], 0.02).unwrap();
        assert_eq!(curve.classification, Classification::Inconclusive);
    }
}
