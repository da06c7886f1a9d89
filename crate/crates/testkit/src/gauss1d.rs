//! Dense-quadrature statistics of one-axis Gaussian packets under the
//! position-multiplication action.
//!
//! The packet is psi(x) = exp(-alpha (x - x0)^2 + i pbar x / hbar) with
//! alpha = a - i b (a = 1/(4 sigma^2), b the chirp).  Momentum moments come
//! from analytic derivatives integrated on a dense trapezoid grid:
//!
//! ```text
//! <P^2> = hbar^2 int |psi'|^2 / int |psi|^2
//! <P^4> = hbar^4 int |psi''|^2 / int |psi|^2
//! ```
//!
//! and the same for phi = x psi (the packet after an X action).

use num_complex::Complex64;

/// Gaussian packet parameters on one axis.
#[derive(Debug, Clone, Copy)]
pub struct GaussPacket {
    pub sigma: f64,
    pub chirp: f64,
    pub center: f64,
    pub momentum: f64,
    pub hbar: f64,
}

/// First and second moments of P and P^2 for a normalized wavefunction.
#[derive(Debug, Clone, Copy)]
pub struct AxisStats {
    pub p_mean: f64,
    pub p2_mean: f64,
    pub p2_var: f64,
}

struct Derivs {
    psi: Complex64,
    d1: Complex64,
    d2: Complex64,
}

impl GaussPacket {
    fn alpha(&self) -> Complex64 {
        Complex64::new(1.0 / (4.0 * self.sigma * self.sigma), -self.chirp)
    }

    fn derivs(&self, x: f64) -> Derivs {
        let dx = x - self.center;
        let alpha = self.alpha();
        let i = Complex64::new(0.0, 1.0);
        let log_d1 = -2.0 * alpha * dx + i * self.momentum / self.hbar;
        let psi = (-alpha * dx * dx + i * self.momentum * x / self.hbar).exp();
        let d1 = log_d1 * psi;
        let d2 = (log_d1 * log_d1 - 2.0 * alpha) * psi;
        Derivs { psi, d1, d2 }
    }

    /// Momentum statistics of the bare packet (apply_x = false) or of the
    /// renormalized x * psi (apply_x = true), by dense trapezoid quadrature.
    pub fn stats(&self, apply_x: bool, n_points: usize) -> AxisStats {
        let width = 14.0 * self.sigma + self.center.abs();
        let lo = self.center - width;
        let hi = self.center + width;
        let h = (hi - lo) / (n_points - 1) as f64;
        let mut norm = 0.0;
        let mut m1 = 0.0; // Im(conj(f) f') for <P>
        let mut m2 = 0.0; // |f'|^2
        let mut m4 = 0.0; // |f''|^2
        for k in 0..n_points {
            let x = lo + k as f64 * h;
            let w = if k == 0 || k == n_points - 1 { 0.5 } else { 1.0 };
            let d = self.derivs(x);
            let (f, f1, f2) = if apply_x {
                // phi = x psi, phi' = psi + x psi', phi'' = 2 psi' + x psi''
                (x * d.psi, d.psi + x * d.d1, 2.0 * d.d1 + x * d.d2)
            } else {
                (d.psi, d.d1, d.d2)
            };
            norm += w * f.norm_sqr();
            m1 += w * (f.conj() * f1).im;
            m2 += w * f1.norm_sqr();
            m4 += w * f2.norm_sqr();
        }
        let p_mean = self.hbar * m1 / norm;
        let p2_mean = self.hbar * self.hbar * m2 / norm;
        let p4_mean = self.hbar.powi(4) * m4 / norm;
        AxisStats {
            p_mean,
            p2_mean,
            p2_var: p4_mean - p2_mean * p2_mean,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_gaussian_moments() {
        let packet = GaussPacket {
            sigma: 2.0,
            chirp: 0.0,
            center: 0.0,
            momentum: 0.7,
            hbar: 1.0,
        };
        let st = packet.stats(false, 60_001);
        assert!((st.p_mean - 0.7).abs() < 1e-10);
        // <dp^2> = hbar^2/(4 sigma^2)
        let want = 0.7 * 0.7 + 1.0 / 16.0;
        assert!((st.p2_mean - want).abs() < 1e-10, "{}", st.p2_mean);
    }

    #[test]
    fn centered_real_packet_shift_is_half_hbar2_over_x2() {
        // exact: <P^2> shift under x-multiplication = hbar^2 / (2 <x^2>)
        let packet = GaussPacket {
            sigma: 1.5,
            chirp: 0.0,
            center: 0.0,
            momentum: 0.9,
            hbar: 1.0,
        };
        let before = packet.stats(false, 80_001);
        let after = packet.stats(true, 80_001);
        let v = 1.5f64 * 1.5;
        let want = 1.0 / (2.0 * v);
        assert!(
            ((after.p2_mean - before.p2_mean) - want).abs() < 1e-9,
            "shift {}",
            after.p2_mean - before.p2_mean
        );
        assert!(after.p2_var > before.p2_var);
    }

    #[test]
    fn chirped_displaced_packet_matches_closed_form() {
        let (sigma, b, x0, pbar) = (1.2, 0.35, 3.0, 0.8);
        let packet = GaussPacket {
            sigma,
            chirp: b,
            center: x0,
            momentum: pbar,
            hbar: 1.0,
        };
        let before = packet.stats(false, 120_001);
        let after = packet.stats(true, 120_001);
        let v = sigma * sigma;
        let shift = after.p2_mean - before.p2_mean;
        let want = (0.5 + 8.0 * b * b * v * v + 8.0 * b * v * x0 * pbar) / (x0 * x0 + v);
        assert!((shift - want).abs() < 1e-8, "shift {shift} want {want}");
        // the p-linear response is 2 pbar * (shift of <P>)
        let dp_mean = after.p_mean - before.p_mean;
        let want_dp = 4.0 * b * v * x0 / (x0 * x0 + v);
        assert!((dp_mean - want_dp).abs() < 1e-9, "dp {dp_mean} want {want_dp}");
    }
}
