//! Direct lattice mode sums for the scalar two-point function.
//!
//! The equal-time vacuum correlator on a cubic momentum lattice with spacing
//! dp, modes n in [-k, k]^3 and box volume V = (2 pi / dp)^3 is
//!
//! ```text
//! C(r) = sum_p cos(p . r) / (2 E_p V),   E_p = c sqrt(|p|^2 + m_E^2 c^2)
//! ```
//!
//! computed here by brute force; the zero mode is excluded at m_E = 0.

use std::f64::consts::PI;

pub fn correlator_sum(dp: f64, k: i32, m_e: f64, c: f64, dr: [f64; 3]) -> f64 {
    let volume = (2.0 * PI / dp).powi(3);
    let mut total = 0.0;
    for nx in -k..=k {
        for ny in -k..=k {
            for nz in -k..=k {
                if m_e == 0.0 && nx == 0 && ny == 0 && nz == 0 {
                    continue;
                }
                let p = [nx as f64 * dp, ny as f64 * dp, nz as f64 * dp];
                let p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
                let energy = c * (p2 + m_e * m_e * c * c).sqrt();
                let phase = p[0] * dr[0] + p[1] * dr[1] + p[2] * dr[2];
                total += phase.cos() / (2.0 * energy * volume);
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_shell_value() {
        // k = 0 lattice with m_E > 0 has only the zero mode:
        // C = 1 / (2 m_E c^2 V)
        let dp = 0.5;
        let v = (2.0 * PI / dp).powi(3);
        let got = correlator_sum(dp, 0, 2.0, 1.0, [0.3, 0.0, 0.0]);
        assert!((got - 1.0 / (4.0 * v)).abs() < 1e-15);
    }
}
