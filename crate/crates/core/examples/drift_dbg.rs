use hr13_core::classical::*;
use std::f64::consts::PI;
fn main() {
    let e_mag = 0.3; let b_mag = 1.0;
    let field = EmField::Crossed { e: [e_mag,0.0,0.0], b: [0.0,0.0,b_mag] };
    let pi0 = [1.2, 0.2, 0.1, 0.0];
    let initial = PhasePoint { x: [0.0;4], p: pi0 };
    let omega = (b_mag*b_mag - e_mag*e_mag).sqrt();
    let period = 2.0*PI/omega;
    let steps = (period/1e-3).round() as usize;
    let cfg = FlowConfig::new(period/steps as f64, steps);
    let traj = lorentz_force_flow(initial, &field, 1.0, 1.0, &cfg).unwrap();
    let s0 = &traj.samples[0].point; let e = traj.last_point();
    let dt = e.x[0]-s0.x[0];
    println!("dt={} dx={:?}", dt, [e.x[1]-s0.x[1], e.x[2]-s0.x[2], e.x[3]-s0.x[3]]);
    println!("vx={} vy={}", (e.x[1]-s0.x[1])/dt, (e.x[2]-s0.x[2])/dt);
    let piend = pi_upper(e, &field, 1.0, &hr13_core::Units::natural());
    println!("pi end={:?} pi0={:?}", piend, pi0);
}
