// Temporary numerical probe; deleted before finalizing.
use warpspec::eigen::{count_eigenvalues_below, first_dirichlet_eigen, ModelSpace};
use warpspec::experiments::{threshold_sweep, transplant_check, verify_prop22};
use warpspec::hardy::HardyProblem;
use warpspec::ode::{riccati_tail_fit, solve_warping};
use warpspec::profiles::{CurvatureProfile, ProfileKind};

#[test]
#[ignore]
fn probe() {
    let t0 = std::time::Instant::now();
    // 1. hyperbolic closed form
    let hyp = CurvatureProfile::with_tail(1.0, 0.0, 1.0, ProfileKind::ModelLowerBound).unwrap();
    let w = solve_warping(&hyp, 750.0, 1e-11).unwrap();
    for t in [1.0f64, 5.0, 20.0, 100.0, 700.0] {
        let (lj, s) = w.eval(t).unwrap();
        let lj_exact = t + (-(-2.0 * t).exp()).ln_1p() - std::f64::consts::LN_2;
        let s_exact = 1.0 / t.tanh();
        println!(
            "t={t}: rel(logJ)={:.3e} rel(S)={:.3e}",
            ((lj - lj_exact) / lj_exact).abs(),
            ((s - s_exact) / s_exact).abs()
        );
    }
    println!("hyperbolic warp: {:?}", t0.elapsed());

    // 2. tail fits
    for (ka, be, rj) in [(1.0, 0.5, 1.0), (1.0, 2.0, 2.0), (4.0, 1.0, 1.0)] {
        let p = CurvatureProfile::with_tail(ka, be, rj, ProfileKind::ModelLowerBound).unwrap();
        let w = solve_warping(&p, 200.0, 1e-12).unwrap();
        let fit = riccati_tail_fit(&w, 50.0, 200.0).unwrap();
        println!(
            "kappa {ka} beta {be}: khat rel {:.3e}, bhat rel {:.3e}, rms {:.3e}",
            (fit.kappa - ka).abs() / ka,
            if be > 0.0 { (fit.beta - be).abs() / be } else { fit.beta.abs() },
            fit.rms_residual
        );
    }

    // 3. flat n=2 disk eigenvalue vs j01^2
    let t1 = std::time::Instant::now();
    let flat = CurvatureProfile::flat(ProfileKind::ModelLowerBound);
    let m2 = ModelSpace::new(2, solve_warping(&flat, 1.5, 1e-10).unwrap()).unwrap();
    let e = first_dirichlet_eigen(&m2, 1.0, 1e-8).unwrap();
    println!(
        "flat n2 L=1: {} (j01^2 = 5.783185962946785), diff {:.2e}, residual {:.1e}, t={:?}",
        e.eigenvalue,
        (e.eigenvalue - 5.783185962946785f64).abs(),
        e.dirichlet_residual,
        t1.elapsed()
    );

    // 4. criterion-7 sweep (most expensive)
    let t2 = std::time::Instant::now();
    let ls = [100.0, 1000.0, 10000.0];
    for (n, betas) in [(2u32, vec![0.5, 30.0]), (3u32, vec![0.1, 10.0])] {
        let out = threshold_sweep(n, 1.0, &betas, &ls, 0.05, 1e-8).unwrap();
        for o in &out {
            println!(
                "n={n} beta={}: counts {:?} -> {:?} (predicted {:?})",
                o.beta,
                o.curve.points.iter().map(|p| p.1).collect::<Vec<_>>(),
                o.curve.classification,
                o.predicted
            );
        }
    }
    println!("sweep: {:?}", t2.elapsed());

    // 5. prop22
    let t3 = std::time::Instant::now();
    let p = CurvatureProfile::with_tail(1.0, 2.0, 2.0, ProfileKind::ModelLowerBound).unwrap();
    let rep = verify_prop22(3, &p, 6.0, 15.0, &[5.0, 10.0, 20.0, 40.0], 1e-8).unwrap();
    for row in &rep.rows {
        println!(
            "R={}: lambda1={:.6e} lambda_d={:.9} gap={:.9} margin={:.3e} pass={}",
            row.r, row.lambda1, row.lambda_d, row.gap_target, row.margin, row.pass
        );
    }
    println!("r_star = {:?}, prop22: {:?}", rep.r_star, t3.elapsed());

    // 6. transplant criterion-9 parameters
    let t4 = std::time::Instant::now();
    let model = CurvatureProfile::with_tail(1.0, 2.0, 2.0, ProfileKind::ModelLowerBound).unwrap();
    let target = CurvatureProfile::with_tail(1.0, 3.0, 2.0, ProfileKind::RadialCurvature).unwrap();
    match transplant_check(3, &model, &target, 1.0, 50.0, 1e-8) {
        Ok(rep) => println!(
            "transplant: q={:.9} lam={:.9} margin={:.4e} corr={:.4e} volw={:.4} h0={:.6} t={:?}",
            rep.quotient,
            rep.lambda_d_model,
            rep.margin,
            rep.correction,
            rep.vol_w,
            rep.h_center,
            t4.elapsed()
        ),
        Err(e) => println!("transplant FAILED: {e}"),
    }

    // 7. hardy delta=1 worst case
    let t5 = std::time::Instant::now();
    let k1 = (2.0 * (12.0f64).exp()).ceil() + 1.0;
    let hp = HardyProblem::new(1.0, k1, 1.0).unwrap();
    let ev = hp.first_eigenvalue(1e-8).unwrap();
    let q = hp.test_quotient().unwrap();
    println!(
        "delta=1 k={k1}: ev={ev:.6e} (Rayleigh {:.6e}), num={:.6} bound={:.6}, t={:?}",
        q.numerator / q.mass,
        q.numerator,
        q.bound,
        t5.elapsed()
    );

    // 8. n=2 count at threshold with beta=30 r_join=6 (spec example)
    let t6 = std::time::Instant::now();
    let p30 = CurvatureProfile::with_tail(1.0, 30.0, 6.0, ProfileKind::ModelLowerBound).unwrap();
    let m30 = ModelSpace::new(2, solve_warping(&p30, 10_000.0, 1e-9).unwrap()).unwrap();
    let e_thr = 0.25 - 1e-9;
    let counts: Vec<u32> = [100.0, 1000.0, 10000.0]
        .iter()
        .map(|&l| count_eigenvalues_below(&m30, l, e_thr, 0.05).unwrap())
        .collect();
    println!("beta=30 r_join=6 counts: {counts:?}, t={:?}", t6.elapsed());

    println!("TOTAL {:?}", t0.elapsed());
}

#[test]
#[ignore]
fn probe_eps_sensitivity() {
    // n=3 beta=10: counts at both cutoffs per L.
    let r_join = (10.0f64).sqrt() * 1.01;
    let p = CurvatureProfile::with_tail(1.0, 10.0, r_join, ProfileKind::ModelLowerBound).unwrap();
    let m = ModelSpace::new(3, solve_warping(&p, 10_000.0, 1e-8).unwrap()).unwrap();
    let e = 1.0 - 1e-9;
    for eps in [0.2, 0.1, 0.05, 0.025, 0.0125, 0.05 / 16.0] {
        let counts: Vec<u32> = [100.0, 1000.0, 10000.0]
            .iter()
            .map(|&l| count_eigenvalues_below(&m, l, e, eps).unwrap())
            .collect();
        println!("n=3 beta=10 eps={eps}: {counts:?}");
    }
    // same for n=2 beta=30
    let r_join = (30.0f64).sqrt() * 1.01;
    let p = CurvatureProfile::with_tail(1.0, 30.0, r_join, ProfileKind::ModelLowerBound).unwrap();
    let m = ModelSpace::new(2, solve_warping(&p, 10_000.0, 1e-8).unwrap()).unwrap();
    let e = 0.25 - 1e-9;
    for eps in [0.2, 0.1, 0.05, 0.025, 0.0125, 0.05 / 16.0] {
        let counts: Vec<u32> = [100.0, 1000.0, 10000.0]
            .iter()
            .map(|&l| count_eigenvalues_below(&m, l, e, eps).unwrap())
            .collect();
        println!("n=2 beta=30 eps={eps}: {counts:?}");
    }
}
