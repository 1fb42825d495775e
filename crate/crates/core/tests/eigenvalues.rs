//! Radial eigenvalue solver against independent oracles and the counting
//! machinery against its own consistency relations.

use warpspec::eigen::{
    check_lemma21, count_eigenvalues_below, first_dirichlet_eigen, ModelSpace,
};
use warpspec::ode::solve_warping;
use warpspec::profiles::{CurvatureProfile, ProfileKind};

fn model(n: u32, kappa: f64, beta: f64, r_join: f64, r_max: f64) -> ModelSpace {
    let p = CurvatureProfile::with_tail(kappa, beta, r_join, ProfileKind::ModelLowerBound).unwrap();
    ModelSpace::new(n, solve_warping(&p, r_max, 1e-10).unwrap()).unwrap()
}

fn flat_model(n: u32, r_max: f64) -> ModelSpace {
    let p = CurvatureProfile::flat(ProfileKind::ModelLowerBound);
    ModelSpace::new(n, solve_warping(&p, r_max, 1e-10).unwrap()).unwrap()
}

/// Order-zero Bessel function by its power series (fine for x <= 3).
fn bessel_j0(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..60 {
        term *= -q / ((m * m) as f64);
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum
}

/// First zero of J_0 by bisection on [2, 3]: an oracle independent of the
/// shooting solver.
fn bessel_j0_first_zero() -> f64 {
    let (mut a, mut b) = (2.0f64, 3.0f64);
    assert!(bessel_j0(a) > 0.0 && bessel_j0(b) < 0.0);
    for _ in 0..60 {
        let mid = 0.5 * (a + b);
        if bessel_j0(mid) > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

#[test]
fn flat_disk_ground_state_is_the_squared_bessel_zero() {
    let m = flat_model(2, 1.5);
    let res = first_dirichlet_eigen(&m, 1.0, 1e-8).unwrap();
    let j01 = bessel_j0_first_zero();
    assert!(
        (res.eigenvalue - j01 * j01).abs() < 1e-4,
        "lambda = {}, j01^2 = {}",
        res.eigenvalue,
        j01 * j01
    );
    assert!(res.dirichlet_residual <= res.tol.max(1e-8) * 10.0);
}

#[test]
fn hyperbolic_plane_eigenvalues_decrease_toward_one_quarter() {
    let m = model(2, 1.0, 0.0, 1.0, 25.0);
    let mut prev = f64::INFINITY;
    for l in [5.0, 10.0, 20.0] {
        let res = first_dirichlet_eigen(&m, l, 1e-8).unwrap();
        assert!(res.eigenvalue > 0.25, "lambda(B({l})) = {} <= 1/4", res.eigenvalue);
        assert!(res.eigenvalue < prev, "domain monotonicity failed at L = {l}");
        prev = res.eigenvalue;
    }
    // Converged well toward the essential bottom by L = 20.
    assert!(prev < 0.30, "lambda(B(20)) = {prev}");
}

#[test]
fn ground_states_are_positive_and_radially_decreasing() {
    for n in [2u32, 3, 5] {
        for beta in [0.0, 2.0] {
            let r_join = if beta == 0.0 { 1.0 } else { 2.0 };
            let m = model(n, 1.0, beta, r_join, 12.0);
            let res = first_dirichlet_eigen(&m, 10.0, 1e-8).unwrap();
            assert_eq!(res.node_count, 0);
            let rep = check_lemma21(&res);
            assert!(
                rep.pass(),
                "n = {n}, beta = {beta}: monotonicity violations {:?}",
                rep.violations.first()
            );
        }
    }
}

#[test]
fn no_bound_states_below_the_hyperbolic_threshold() {
    // n = 2, kappa = 1, beta = 0: V >= 1/4 - O(e^{-2x}); nothing below 1/4.
    let m = model(2, 1.0, 0.0, 1.0, 1000.0);
    let c = count_eigenvalues_below(&m, 1000.0, 0.25 - 1e-9, 0.01).unwrap();
    assert_eq!(c, 0);
}

#[test]
fn supercritical_counts_grow_with_the_truncation_radius() {
    // The documented example: n = 2, kappa = 1, beta = 30, r_join = 6.
    let m = model(2, 1.0, 30.0, 6.0, 1000.0);
    let e = 0.25 - 1e-9;
    let c1 = count_eigenvalues_below(&m, 100.0, e, 0.05).unwrap();
    let c2 = count_eigenvalues_below(&m, 1000.0, e, 0.05).unwrap();
    assert!(c2 > c1, "counts {c1} -> {c2} did not grow");
    assert!(c1 >= 2, "count at L = 100 suspiciously small: {c1}");
}

#[test]
fn shooting_and_counting_agree_on_the_ground_state_location() {
    // The Pruefer count runs with a Dirichlet cutoff at eps, whose spectrum
    // sits slightly above the regular-center one; the band accounts for the
    // cutoff shift (Hadamard: eps |u'(0)|^2 / ||u||^2 for n = 3, a log-law
    // for n = 2).
    let tol = 1e-8;
    let eps = 1e-3;

    // n = 3: estimate the shift from the solved eigenfunction itself.
    let m = model(3, 1.0, 2.0, 2.0, 12.0);
    let res = first_dirichlet_eigen(&m, 10.0, tol).unwrap();
    let w = m.warping();
    let (mut norm2, mut prev_x) = (0.0, w.t_series());
    for &(x, h) in res.h_samples().iter().skip(1) {
        let lj = w.log_j_at(x.max(w.t_series())).unwrap();
        let u = (2.0 * lj / 2.0).exp() * h; // J^{(n-1)/2} h with n = 3
        norm2 += u * u * (x - prev_x);
        prev_x = x;
    }
    // u'(0) = h(0) J'(0) = 1 in normalized units.
    let shift = eps / norm2;
    let band = (10.0 * shift).max(100.0 * tol);
    let lam = res.eigenvalue;
    assert_eq!(count_eigenvalues_below(&m, 10.0, lam - band, eps).unwrap(), 0);
    assert!(count_eigenvalues_below(&m, 10.0, lam + band, eps).unwrap() >= 1);

    // n = 5: the cutoff shift is O(eps^3); a plain 100 tol band does it.
    let m5 = model(5, 1.0, 2.0, 2.0, 12.0);
    let res5 = first_dirichlet_eigen(&m5, 10.0, tol).unwrap();
    let band5 = 100.0 * tol;
    assert_eq!(count_eigenvalues_below(&m5, 10.0, res5.eigenvalue - band5, eps).unwrap(), 0);
    assert!(count_eigenvalues_below(&m5, 10.0, res5.eigenvalue + band5, eps).unwrap() >= 1);

    // n = 2: the critical -1/(4x^2) center makes the shift O(1/log(1/eps)).
    let m2 = flat_model(2, 1.5);
    let res2 = first_dirichlet_eigen(&m2, 1.0, tol).unwrap();
    let band2 = 4.0 * res2.eigenvalue / (1.0 / eps).ln();
    assert_eq!(count_eigenvalues_below(&m2, 1.0, res2.eigenvalue - band2, eps).unwrap(), 0);
    assert!(count_eigenvalues_below(&m2, 1.0, res2.eigenvalue + band2, eps).unwrap() >= 1);
}

#[test]
fn liouville_transform_residual_is_small_in_the_weak_form() {
    // u = J^{(n-1)/2} h must satisfy -u'' + V u = lambda u. Test it weakly:
    // for compactly supported C^2 bumps phi, integrating by parts twice,
    // int u (-phi'' + (V - lambda) phi) dx = 0 up to solver accuracy.
    let tol = 1e-8;
    let m = model(3, 1.0, 2.0, 2.0, 12.0);
    let res = first_dirichlet_eigen(&m, 10.0, tol).unwrap();
    let lam = res.eigenvalue;
    let w = m.warping();

    let u = |x: f64| (w.log_j_at(x).unwrap()).exp() * res.h_at(x); // n = 3
    // phi = (1 - s^2)^3, phi'' = (1 - s^2)(30 s^2 - 6) / width^2.
    let phi = |x: f64, c: f64, wd: f64| {
        let s = (x - c) / wd;
        if s.abs() >= 1.0 {
            (0.0, 0.0)
        } else {
            let q = 1.0 - s * s;
            (q * q * q, q * (30.0 * s * s - 6.0) / (wd * wd))
        }
    };

    let mut worst: f64 = 0.0;
    for (c, wd) in [(1.5, 1.2), (3.0, 2.0), (5.0, 3.0), (8.0, 1.5)] {
        let steps = 4000;
        let (a, b) = (c - wd, c + wd);
        let dx = (b - a) / steps as f64;
        // Simpson over a uniform grid.
        let mut resid = 0.0;
        let mut phi_norm2 = 0.0;
        let mut u_norm2 = 0.0;
        let integrand = |x: f64| {
            let (p, ddp) = phi(x, c, wd);
            let v = m.effective_potential(x).unwrap();
            u(x) * (-ddp + (v - lam) * p)
        };
        for i in 0..steps {
            let xa = a + i as f64 * dx;
            let xm = xa + 0.5 * dx;
            let xb = xa + dx;
            resid += dx / 6.0 * (integrand(xa) + 4.0 * integrand(xm) + integrand(xb));
            let (p, _) = phi(xm, c, wd);
            phi_norm2 += p * p * dx;
            u_norm2 += u(xm) * u(xm) * dx;
        }
        let ratio = resid.abs() / (phi_norm2.sqrt() * u_norm2.sqrt());
        worst = worst.max(ratio);
    }
    assert!(worst <= 100.0 * tol, "weak residual ratio {worst:e}");
}
