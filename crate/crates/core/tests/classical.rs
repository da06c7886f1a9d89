//! Covariant flow tests against closed-form oracles.

use hr13_core::classical::{
    conventional_ht_crosscheck, frame_fix, free_flow_with_proper_time, lorentz_force_flow,
    p2_rate_prediction, pi_upper, reversibility_defect, symplectic_defect, two_body_evolve,
    two_body_reduce, EmField, FlowConfig, PhasePoint, Potential, TwoBodyState,
};
use hr13_core::minkowski::dot;
use hr13_core::Units;
use hr13_testkit::constant_field::ConstantFieldSolution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn units() -> Units {
    Units::natural()
}

#[test]
fn free_flow_is_straight_line() {
    let initial = PhasePoint {
        x: [0.1, -0.4, 0.2, 0.0],
        p: [1.3, 0.5, -0.2, 0.1],
    };
    let cfg = FlowConfig::new(0.01, 500);
    let traj = lorentz_force_flow(initial, &EmField::Free, 0.0, 2.0, &cfg).unwrap();
    let end = traj.last_point();
    let s = 5.0;
    for mu in 0..4 {
        let want = initial.x[mu] + initial.p[mu] * s / 2.0;
        assert!((end.x[mu] - want).abs() < 1e-10, "x[{mu}]");
        assert!((end.p[mu] - initial.p[mu]).abs() < 1e-13, "p[{mu}]");
    }
}

#[test]
fn proper_time_rates() {
    // m_E = m gives tau = s; m_E = 2m gives dtau/ds = 2
    let m = 1.0;
    for (m_e, rate) in [(1.0, 1.0), (2.0, 2.0)] {
        let initial = PhasePoint {
            x: [0.0; 4],
            p: [m_e, 0.0, 0.0, 0.0],
        };
        let cfg = FlowConfig::new(0.01, 100);
        let traj = free_flow_with_proper_time(initial, m, m_e, &cfg).unwrap();
        let last = traj.samples.last().unwrap();
        assert!((last.tau.unwrap() - rate * last.s).abs() < 1e-12);
    }
    // rest frame: x^0(s) = x^0(0) + c s, spatial x constant
    let initial = PhasePoint {
        x: [0.3, 1.0, 2.0, 3.0],
        p: [1.0, 0.0, 0.0, 0.0],
    };
    let traj = free_flow_with_proper_time(initial, 1.0, 1.0, &FlowConfig::new(0.01, 200)).unwrap();
    let end = traj.last_point();
    assert!((end.x[0] - (0.3 + 2.0)).abs() < 1e-11);
    for i in 1..4 {
        assert!((end.x[i] - initial.x[i]).abs() < 1e-13);
    }
}

#[test]
fn proper_time_rejects_off_shell_and_spacelike() {
    let cfg = FlowConfig::new(0.01, 10);
    let spacelike = PhasePoint {
        x: [0.0; 4],
        p: [0.1, 1.0, 0.0, 0.0],
    };
    assert!(free_flow_with_proper_time(spacelike, 1.0, 1.0, &cfg).is_err());
    let off_shell = PhasePoint {
        x: [0.0; 4],
        p: [1.5, 0.0, 0.0, 0.0],
    };
    assert!(free_flow_with_proper_time(off_shell, 1.0, 1.0, &cfg).is_err());
}

#[test]
fn cyclotron_matches_closed_form() {
    // constant B along z, e = m = c = 1, B = 1; period in s is 2 pi m c / (e B)
    let pi0 = [1.01f64.sqrt(), 0.1, 0.0, 0.0];
    let initial = PhasePoint {
        x: [0.0; 4],
        p: pi0, // A(0) = 0 in symmetric gauge
    };
    let field = EmField::ConstantB([0.0, 0.0, 1.0]);
    let n_steps = (2.0 * PI / 1e-3).round() as usize;
    let cfg = FlowConfig::new(1e-3, n_steps);
    let traj = lorentz_force_flow(initial, &field, 1.0, 1.0, &cfg).unwrap();

    let oracle = ConstantFieldSolution::new([0.0; 3], [0.0, 0.0, 1.0], 1.0, 1.0, 1.0, [0.0; 4], pi0);
    let mut worst = 0.0f64;
    for sample in traj.samples.iter().step_by(37) {
        let (x_ref, pi_ref) = oracle.eval(sample.s);
        let pi_num = pi_upper(&sample.point, &field, 1.0, &units());
        for mu in 0..4 {
            worst = worst.max((sample.point.x[mu] - x_ref[mu]).abs());
            worst = worst.max((pi_num[mu] - pi_ref[mu]).abs());
        }
    }
    assert!(worst <= 1e-6, "deviation from closed form {worst}");
    // pi.pi = -1 conserved
    assert!(traj.meta.pi2_rel_drift <= 1e-10, "{}", traj.meta.pi2_rel_drift);
}

#[test]
fn pi2_conserved_over_1e4_steps() {
    let initial = PhasePoint {
        x: [0.0; 4],
        p: [1.01f64.sqrt(), 0.1, 0.0, 0.0],
    };
    let field = EmField::ConstantB([0.0, 0.0, 1.0]);
    let cfg = FlowConfig::new(1e-3, 10_000);
    let traj = lorentz_force_flow(initial, &field, 1.0, 1.0, &cfg).unwrap();
    assert!(traj.meta.pi2_rel_drift <= 1e-8, "{}", traj.meta.pi2_rel_drift);
    assert!(traj.meta.h_rel_drift <= 1e-9, "{}", traj.meta.h_rel_drift);
}

#[test]
fn constant_e_hyperbolic_and_p2_evolution() {
    let e_field = [0.5, 0.0, 0.0];
    let field = EmField::ConstantE(e_field);
    let pi0 = [1.2, 0.0, 0.3, 0.0];
    let x0 = [0.0, 0.7, 0.0, 0.0];
    let p_init = {
        // p = pi + (e/c) A(x0); A^0 = -E.x = -0.35
        let a0 = -0.5 * 0.7;
        [pi0[0] + a0, pi0[1], pi0[2], pi0[3]]
    };
    let initial = PhasePoint { x: x0, p: p_init };
    let cfg = FlowConfig::new(1e-3, 2_000);
    let traj = lorentz_force_flow(initial, &field, 1.0, 1.0, &cfg).unwrap();

    let oracle = ConstantFieldSolution::new(e_field, [0.0; 3], 1.0, 1.0, 1.0, x0, pi0);
    let s_end = 2.0;
    let (x_ref, pi_ref) = oracle.eval(s_end);
    let end = traj.last_point();
    let pi_end = pi_upper(end, &field, 1.0, &units());
    for mu in 0..4 {
        assert!((end.x[mu] - x_ref[mu]).abs() < 1e-6, "x[{mu}]");
        assert!((pi_end[mu] - pi_ref[mu]).abs() < 1e-6, "pi[{mu}]");
    }
    // p.p evolves by the analytically predicted amount: p = pi + (e/c)A(x)
    let a_end = field.a_upper(&x_ref);
    let p_ref = [
        pi_ref[0] + a_end[0],
        pi_ref[1] + a_end[1],
        pi_ref[2] + a_end[2],
        pi_ref[3] + a_end[3],
    ];
    let p2_ref = dot(&p_ref, &p_ref);
    assert!(
        (traj.meta.p2_final - p2_ref).abs() <= 1e-6,
        "p2 {} vs {}",
        traj.meta.p2_final,
        p2_ref
    );
    // and it really does evolve
    assert!((traj.meta.p2_final - traj.meta.p2_initial).abs() > 1e-3);
    // while pi.pi stays put
    assert!(traj.meta.pi2_rel_drift <= 1e-9);
}

#[test]
fn ht_crosscheck_free_identical() {
    // on-shell initial momentum: the conventional picture reads pi^0 off the
    // spatial momentum, so both flows trace the same straight line
    let p_spatial: [f64; 3] = [0.4, 0.3, -0.2];
    let p0 = (1.0 + p_spatial.iter().map(|v| v * v).sum::<f64>()).sqrt();
    let initial = PhasePoint {
        x: [0.0, 0.2, -0.1, 0.0],
        p: [p0, p_spatial[0], p_spatial[1], p_spatial[2]],
    };
    let cfg = FlowConfig::new(5e-3, 400);
    let res = conventional_ht_crosscheck(initial, &EmField::Free, 0.0, 1.0, &cfg).unwrap();
    assert!(res.max_spatial_deviation < 1e-9, "{}", res.max_spatial_deviation);
}

#[test]
fn ht_crosscheck_constant_b_converges_at_order_two() {
    let initial = PhasePoint {
        x: [0.0; 4],
        p: [1.01f64.sqrt(), 0.1, 0.0, 0.0],
    };
    let field = EmField::ConstantB([0.0, 0.0, 1.0]);
    // one cyclotron period at step 1e-3
    let n = (2.0 * PI / 1e-3).round() as usize;
    let dev_h = conventional_ht_crosscheck(initial, &field, 1.0, 1.0, &FlowConfig::new(1e-3, n))
        .unwrap()
        .max_spatial_deviation;
    assert!(dev_h <= 1e-6, "deviation {dev_h}");
    let dev_h2 =
        conventional_ht_crosscheck(initial, &field, 1.0, 1.0, &FlowConfig::new(5e-4, 2 * n))
            .unwrap()
            .max_spatial_deviation;
    let order = (dev_h / dev_h2).log2();
    assert!(order >= 1.9, "observed order {order}");
}

#[test]
fn crossed_fields_drift_velocity() {
    // |E| < |B|: guiding-center drift v = E x B / B^2 = -(E/B) y_hat
    let e_mag = 0.3;
    let b_mag = 1.0;
    let field = EmField::Crossed {
        e: [e_mag, 0.0, 0.0],
        b: [0.0, 0.0, b_mag],
    };
    // on-shell pi(0) so the H_t picture follows the same worldline
    let pi0 = [1.05f64.sqrt(), 0.2, 0.1, 0.0];
    let initial = PhasePoint {
        x: [0.0; 4],
        p: pi0,
    };
    // one gyration period of the drift frame: omega' = e sqrt(B^2-E^2)/(m c)
    let omega = (b_mag * b_mag - e_mag * e_mag).sqrt();
    let period = 2.0 * PI / omega;
    let steps = (period / 1e-3).round() as usize;
    let cfg = FlowConfig::new(period / steps as f64, steps);
    let traj = lorentz_force_flow(initial, &field, 1.0, 1.0, &cfg).unwrap();
    let start = &traj.samples[0].point;
    let end = traj.last_point();
    let dt = (end.x[0] - start.x[0]) / 1.0;
    let vy = (end.x[2] - start.x[2]) / dt;
    let vx = (end.x[1] - start.x[1]) / dt;
    let want = -(e_mag / b_mag);
    assert!((vy - want).abs() <= 1e-6, "vy {vy} want {want}");
    assert!(vx.abs() <= 1e-6, "vx {vx}");

    // the conventional picture shows the same drift
    let res = conventional_ht_crosscheck(initial, &field, 1.0, 1.0, &cfg).unwrap();
    let first = res.conventional.first().unwrap();
    let last = res.conventional.last().unwrap();
    let vy_ht = (last.x[1] - first.x[1]) / (last.t - first.t);
    let _ = vy_ht; // x index 1 is the y spatial component here
    let vy_ht = (last.x[1] - first.x[1]) / (last.t - first.t);
    assert!((vy_ht - want).abs() <= 1e-5, "H_t drift {vy_ht}");
}

#[test]
fn plane_wave_h_conserved() {
    let field = EmField::plane_wave(0.2, [1.0, 0.0, 0.0, 1.0], [0.0, 1.0, 0.0, 0.0]);
    let initial = PhasePoint {
        x: [0.0; 4],
        p: [1.3, 0.1, 0.05, 0.2],
    };
    let cfg = FlowConfig::new(1e-4, 10_000);
    let traj = lorentz_force_flow(initial, &field, 1.0, 1.0, &cfg).unwrap();
    assert!(traj.meta.h_rel_drift <= 1e-9, "H drift {}", traj.meta.h_rel_drift);
}

#[test]
fn symplectic_form_preserved_on_random_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let field = EmField::Crossed {
        e: [0.2, 0.0, 0.1],
        b: [0.0, 0.3, 1.0],
    };
    for _ in 0..5 {
        let point = PhasePoint {
            x: [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ],
            p: [
                rng.gen_range(1.0..2.0),
                rng.gen_range(-0.5..0.5),
                rng.gen_range(-0.5..0.5),
                rng.gen_range(-0.5..0.5),
            ],
        };
        let defect = symplectic_defect(&point, &field, 1.0, 1.0, &FlowConfig::new(1e-2, 1)).unwrap();
        assert!(defect <= 1e-9, "J^T Omega J defect {defect}");
    }
}

#[test]
fn reversibility_within_1e9() {
    let field = EmField::ConstantB([0.0, 0.0, 1.0]);
    let initial = PhasePoint {
        x: [0.0; 4],
        p: [1.2, 0.3, -0.1, 0.05],
    };
    let err = reversibility_defect(initial, &field, 1.0, 1.0, &FlowConfig::new(1e-3, 2_000)).unwrap();
    assert!(err <= 1e-9, "return error {err}");
}

#[test]
fn p2_rate_matches_trajectory_finite_difference() {
    let field = EmField::Crossed {
        e: [0.4, 0.0, 0.0],
        b: [0.0, 0.0, 1.0],
    };
    let initial = PhasePoint {
        x: [0.0, 0.3, 0.0, 0.0],
        p: [1.4, 0.2, 0.1, 0.0],
    };
    let check = |h: f64| -> f64 {
        let cfg = FlowConfig::new(h, (1.0 / h) as usize);
        let traj = lorentz_force_flow(initial, &field, 1.0, 1.0, &cfg).unwrap();
        let p2: Vec<f64> = traj.samples.iter().map(|s| dot(&s.point.p, &s.point.p)).collect();
        let mut worst = 0.0f64;
        for k in 1..traj.samples.len() - 1 {
            let fd = (p2[k + 1] - p2[k - 1]) / (2.0 * h);
            let pred = p2_rate_prediction(&traj.samples[k].point, &field, 1.0, 1.0, &units());
            worst = worst.max((fd - pred).abs());
        }
        worst
    };
    // second-order regression: error shrinks ~4x when the step halves
    let e1 = check(2e-3);
    let e2 = check(1e-3);
    assert!(e1 / e2 > 3.0, "ratio {} ({e1} vs {e2})", e1 / e2);
    assert!(e1 < 1e-4, "absolute regression bound {e1}");
}

#[test]
fn two_body_harmonic_oscillation() {
    // unequal masses; k chosen so omega = sqrt(k/mu) = 1
    let st = TwoBodyState {
        a: PhasePoint {
            x: [0.25, 1.0, 0.0, 0.0],
            p: [1.0, 0.1, 0.55, 0.0],
        },
        b: PhasePoint {
            x: [-0.25, 0.0, 0.0, 0.0],
            p: [1.1, -0.1, 0.75, 0.0],
        },
        m_a: 1.0,
        m_b: 2.0,
    };
    let fixed = frame_fix(&st).unwrap();
    let mu = 2.0 / 3.0;
    let k_spring = mu; // omega = 1
    let cfg = FlowConfig::new(1e-3, 10_000);
    let traj = two_body_evolve(&fixed.state, &Potential::Harmonic { k: k_spring }, &cfg).unwrap();
    // r^0, q^0 stay pinned at zero
    assert!(traj.time_component_drift.0 <= 1e-10, "{:?}", traj.time_component_drift);
    assert!(traj.time_component_drift.1 <= 1e-10);
    // potential-sector energy conserved (quadratic H, midpoint)
    assert!(traj.rel.meta.h_rel_drift <= 1e-10);
    // total energy p^0 c constant in the free cm sector
    let p0_first = traj.cm.samples[0].point.p[0];
    let p0_last = traj.cm.last_point().p[0];
    assert!((p0_first - p0_last).abs() <= 1e-12);
    // x^0 grows as (p^0/m) s
    let m_tot = 3.0;
    let cm_end = traj.cm.last_point();
    let want = traj.cm.samples[0].point.x[0] + p0_first / m_tot * 10.0;
    assert!((cm_end.x[0] - want).abs() < 1e-12);

    // measured frequency from the three-point recurrence
    // r(s+h) + r(s-h) = 2 cos(omega h) r(s)
    let rs: Vec<f64> = traj.rel.samples.iter().map(|s| s.point.x[1]).collect();
    let h = 1e-3;
    let mut ratios = Vec::new();
    for k in 1..rs.len() - 1 {
        if rs[k].abs() > 0.3 {
            ratios.push((rs[k + 1] + rs[k - 1]) / (2.0 * rs[k]));
        }
    }
    ratios.sort_by(|a, b| a.total_cmp(b));
    let omega_est = ratios[ratios.len() / 2].acos() / h;
    assert!(
        (omega_est - 1.0).abs() <= 1e-6,
        "omega {omega_est} (expected 1 +- 1e-6)"
    );
}

#[test]
fn two_body_free_relative_motion_linear() {
    let st = TwoBodyState {
        a: PhasePoint {
            x: [0.0, 1.0, 0.0, 0.0],
            p: [1.0, 0.0, 0.3, 0.0],
        },
        b: PhasePoint {
            x: [0.0, 0.0, 0.0, 0.0],
            p: [1.0, 0.0, -0.3, 0.0],
        },
        m_a: 1.0,
        m_b: 2.0,
    };
    let fixed = frame_fix(&st).unwrap();
    let red0 = two_body_reduce(&fixed.state);
    let cfg = FlowConfig::new(1e-2, 100);
    let traj = two_body_evolve(&fixed.state, &Potential::None, &cfg).unwrap();
    let end = traj.rel.last_point();
    let mu = red0.mu_red;
    for m in 0..4 {
        let want = red0.r[m] + red0.q[m] / mu * 1.0;
        assert!((end.x[m] - want).abs() < 1e-11, "r[{m}]");
        assert!((end.p[m] - red0.q[m]).abs() < 1e-13, "q[{m}]");
    }
}
