use qscope_core::forward_solver::{solve_forward, Manufactured};
use qscope_core::grid_fields::{dist_to_zero_set, make_grid, RegionMask, ScalarField};
use qscope_core::internal_data::{synthesize, NoiseModel};
use qscope_core::reconstruction::{reconstruct_w_from, recover_q, roundtrip, ReconOptions};

#[test]
fn recover_q_algebra() {
    let g = make_grid(33).unwrap();
    let w = ScalarField::from_fn(g, |x: f64, y: f64| x.cos() * y.cos());
    let d = synthesize(&ScalarField::constant(g, 2.0), &w).unwrap();
    let q = recover_q(&d, &w, &ReconOptions::default()).unwrap();
    assert!(q.values().iter().all(|&v| (v - 2.0).abs() < 1e-14));
    let z = synthesize(&ScalarField::constant(g, 2.0), &ScalarField::zeros(g)).unwrap();
    assert_eq!(
        recover_q(&z, &w, &ReconOptions::default())
            .unwrap()
            .max_abs(),
        0.0
    );
}

#[test]
fn k1_round_trip() {
    let g = make_grid(257).unwrap();
    let rt = roundtrip(
        &Manufactured::K1.problem::<f64>(g),
        NoiseModel::None,
        0.0,
        0,
        &ReconOptions::default(),
    )
    .unwrap();
    let s = &rt.summary;
    assert!(s.converged, "{s:?}");
    assert_eq!(s.trust_count, g.len());
    let exact = Manufactured::K1.exact_field::<f64>(g).unwrap();
    assert!(rt.recon.w.sub(&exact).unwrap().max_abs() <= 1e-3);
    assert!(s.q_rel_linf_trust <= 1e-3, "{s:?}");
}

#[test]
fn k2_round_trip_and_bands() {
    let g = make_grid(257).unwrap();
    let opts = ReconOptions::default();
    let p = Manufactured::K2.problem::<f64>(g);
    let rt = roundtrip(&p, NoiseModel::None, 0.0, 0, &opts).unwrap();
    let s = &rt.summary;
    assert!(s.converged, "{s:?}");
    assert!(s.w_linf_trust <= 5e-3, "{s:?}");
    assert!(s.q_rel_linf_trust <= 1e-2, "{s:?}");

    // Sup error over {dist ≥ δ} shrinks as δ grows.
    let dist = dist_to_zero_set(&rt.u);
    let err = rt.recon.q_rec.sub(&p.q).unwrap().abs();
    let sup_beyond = |delta: f64| {
        RegionMask::threshold(&dist, delta)
            .indices()
            .map(|k| err[k])
            .fold(0.0f64, f64::max)
    };
    assert!(sup_beyond(0.05) >= sup_beyond(0.1) && sup_beyond(0.1) >= sup_beyond(0.2));

    // Same data in, same bits out.
    let again = reconstruct_w_from(&rt.data, &p.a, &p.g, &opts, None).unwrap();
    assert_eq!(again.q_rec, rt.recon.q_rec);
}

#[test]
fn exact_solution_is_a_fixed_point() {
    let g = make_grid(129).unwrap();
    let p = Manufactured::K1.problem::<f64>(g);
    let (u, _) = solve_forward(&p, 1e-13).unwrap();
    let d = synthesize(&p.q, &u).unwrap();
    let opts = ReconOptions {
        max_picard: 1,
        ..ReconOptions::default()
    };
    let r = reconstruct_w_from(&d, &p.a, &p.g, &opts, Some(&u)).unwrap();
    assert!(r.history[0] < 1e-9, "{:?}", r.history);
    let w_star = Manufactured::K1.exact_field::<f64>(g).unwrap();
    let d_star = synthesize(&p.q, &w_star).unwrap();
    let r = reconstruct_w_from(&d_star, &p.a, &p.g, &opts, Some(&w_star)).unwrap();
    assert!(r.history[0] < 1e-4, "{:?}", r.history);
}

#[test]
fn converged_iterate_is_stationary() {
    let g = make_grid(65).unwrap();
    let p = Manufactured::K2.problem::<f64>(g);
    let opts = ReconOptions::default();
    let rt = roundtrip(&p, NoiseModel::None, 0.0, 0, &opts).unwrap();
    let once = ReconOptions {
        max_picard: 1,
        damping: 1.0,
        ..opts
    };
    let r = reconstruct_w_from(&rt.data, &p.a, &p.g, &once, Some(&rt.recon.w_signed)).unwrap();
    assert!(r.history[0] <= opts.picard_tol, "{:?}", r.history);
}

#[test]
fn unsigned_iteration_stays_nonnegative() {
    let g = make_grid(65).unwrap();
    let p = Manufactured::K1.problem::<f64>(g);
    let (u, _) = solve_forward(&p, 1e-12).unwrap();
    let d = synthesize(&p.q, &u).unwrap();
    let mut w: Option<ScalarField<f64>> = None;
    let step = ReconOptions {
        sign_recovery: false,
        max_picard: 1,
        ..ReconOptions::default()
    };
    for _ in 0..30 {
        let r = reconstruct_w_from(&d, &p.a, &p.g, &step, w.as_ref()).unwrap();
        assert!(r.w_signed.min_value() >= -1e-8);
        w = Some(r.w_signed);
    }
    let w = w.unwrap();
    assert!(w.sub(&u).unwrap().max_abs() < 1e-4);
}

#[test]
fn noisy_k2_reports_bands() {
    let g = make_grid(65).unwrap();
    let rt = roundtrip(
        &Manufactured::K2.problem::<f64>(g),
        NoiseModel::Deterministic,
        1e-3,
        0,
        &ReconOptions::default(),
    )
    .unwrap();
    let s = rt.summary;
    assert!((s.data_err - 1e-3).abs() < 1e-4);
    assert!(s.band_sup.iter().all(|v| v.is_finite() && *v >= 0.0));
    assert!(s.band_sup[3] <= s.band_sup[0]);
}
