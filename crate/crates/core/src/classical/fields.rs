//! Electromagnetic field configurations A^mu(x) with F_{mu nu} = d_mu A_nu - d_nu A_mu.
//!
//! Component conventions (natural units): a constant magnetic field B gives
//! F_{ij} = eps_{ijk} B_k; a constant electric field E gives F_{0i} = -E_i,
//! so that the flow of pi reduces to d(pi_vec)/dt = e (E + v x B) in the slow
//! limit.  Analytic closures carry exact gradients; anything else falls back
//! to central finite differences with step h = 1e-5 (1 + |x|).

use crate::minkowski::{dot, eps3, eta, FourVec};
use std::sync::Arc;

/// Potential map x -> A^mu with analytic or finite-difference gradients.
#[derive(Clone)]
pub enum EmField {
    /// A = 0.
    Free,
    /// Constant magnetic field, symmetric gauge A_vec = B x r / 2.
    ConstantB([f64; 3]),
    /// Constant electric field, A^0 = -E.r.
    ConstantE([f64; 3]),
    /// Superposed constant E and B.
    Crossed { e: [f64; 3], b: [f64; 3] },
    /// A^mu = pol^mu * amplitude * cos(k.x); k lightlike, pol.k = 0.
    PlaneWave {
        amplitude: f64,
        wave_k: FourVec,
        polarization: FourVec,
    },
    /// Arbitrary potential closure; gradients by central differences.
    Numeric(Arc<dyn Fn(&FourVec) -> FourVec + Send + Sync>),
}

impl std::fmt::Debug for EmField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EmField::Free => write!(f, "Free"),
            EmField::ConstantB(b) => write!(f, "ConstantB({b:?})"),
            EmField::ConstantE(e) => write!(f, "ConstantE({e:?})"),
            EmField::Crossed { e, b } => write!(f, "Crossed {{ e: {e:?}, b: {b:?} }}"),
            EmField::PlaneWave {
                amplitude,
                wave_k,
                polarization,
            } => write!(
                f,
                "PlaneWave {{ a: {amplitude}, k: {wave_k:?}, pol: {polarization:?} }}"
            ),
            EmField::Numeric(_) => write!(f, "Numeric(..)"),
        }
    }
}

impl EmField {
    /// A^mu at x.
    pub fn a_upper(&self, x: &FourVec) -> FourVec {
        match self {
            EmField::Free => [0.0; 4],
            EmField::ConstantB(b) => {
                let r = [x[1], x[2], x[3]];
                let half_cross = [
                    0.5 * (b[1] * r[2] - b[2] * r[1]),
                    0.5 * (b[2] * r[0] - b[0] * r[2]),
                    0.5 * (b[0] * r[1] - b[1] * r[0]),
                ];
                [0.0, half_cross[0], half_cross[1], half_cross[2]]
            }
            EmField::ConstantE(e) => {
                [-(e[0] * x[1] + e[1] * x[2] + e[2] * x[3]), 0.0, 0.0, 0.0]
            }
            EmField::Crossed { e, b } => {
                let ae = EmField::ConstantE(*e).a_upper(x);
                let ab = EmField::ConstantB(*b).a_upper(x);
                [ae[0] + ab[0], ae[1] + ab[1], ae[2] + ab[2], ae[3] + ab[3]]
            }
            EmField::PlaneWave {
                amplitude,
                wave_k,
                polarization,
            } => {
                let phase = dot(wave_k, x);
                let v = amplitude * phase.cos();
                [
                    polarization[0] * v,
                    polarization[1] * v,
                    polarization[2] * v,
                    polarization[3] * v,
                ]
            }
            EmField::Numeric(a) => a(x),
        }
    }

    /// Gradient grad[mu][nu] = d_mu A^nu at x.
    pub fn grad_a(&self, x: &FourVec) -> [[f64; 4]; 4] {
        match self {
            EmField::Free => [[0.0; 4]; 4],
            EmField::ConstantB(b) => {
                // d_l (B x r)^i / 2 = eps_{ijl} B_j / 2
                let mut g = [[0.0; 4]; 4];
                for l in 0..3 {
                    for i in 0..3 {
                        let mut v = 0.0;
                        for (j, bj) in b.iter().enumerate() {
                            v += 0.5 * eps3(i, j, l) * bj;
                        }
                        g[l + 1][i + 1] = v;
                    }
                }
                g
            }
            EmField::ConstantE(e) => {
                let mut g = [[0.0; 4]; 4];
                for i in 0..3 {
                    g[i + 1][0] = -e[i];
                }
                g
            }
            EmField::Crossed { e, b } => {
                let ge = EmField::ConstantE(*e).grad_a(x);
                let gb = EmField::ConstantB(*b).grad_a(x);
                let mut g = [[0.0; 4]; 4];
                for mu in 0..4 {
                    for nu in 0..4 {
                        g[mu][nu] = ge[mu][nu] + gb[mu][nu];
                    }
                }
                g
            }
            EmField::PlaneWave {
                amplitude,
                wave_k,
                polarization,
            } => {
                let phase = dot(wave_k, x);
                let dv = -amplitude * phase.sin();
                let k_lower = crate::minkowski::lower(wave_k);
                let mut g = [[0.0; 4]; 4];
                for mu in 0..4 {
                    for nu in 0..4 {
                        g[mu][nu] = polarization[nu] * dv * k_lower[mu];
                    }
                }
                g
            }
            EmField::Numeric(a) => {
                let xmax = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                let h = 1e-5 * (1.0 + xmax);
                let mut g = [[0.0; 4]; 4];
                for mu in 0..4 {
                    let mut xp = *x;
                    let mut xm = *x;
                    xp[mu] += h;
                    xm[mu] -= h;
                    let ap = a(&xp);
                    let am = a(&xm);
                    for nu in 0..4 {
                        g[mu][nu] = (ap[nu] - am[nu]) / (2.0 * h);
                    }
                }
                g
            }
        }
    }

    /// Field tensor F_{mu nu} = d_mu A_nu - d_nu A_mu (both indices lower).
    pub fn f_lower(&self, x: &FourVec) -> [[f64; 4]; 4] {
        let g = self.grad_a(x);
        let mut f = [[0.0; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                f[mu][nu] = eta(nu) * g[mu][nu] - eta(mu) * g[nu][mu];
            }
        }
        f
    }

    /// Mixed tensor F^mu_nu = eta^{mu rho} F_{rho nu}.
    pub fn f_mixed(&self, x: &FourVec) -> [[f64; 4]; 4] {
        let f = self.f_lower(x);
        let mut out = [[0.0; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                out[mu][nu] = eta(mu) * f[mu][nu];
            }
        }
        out
    }

    /// Lightlike-k plane wave with validated transversality.
    pub fn plane_wave(amplitude: f64, wave_k: FourVec, polarization: FourVec) -> EmField {
        let kk = dot(&wave_k, &wave_k);
        let ke = dot(&wave_k, &polarization);
        assert!(
            kk.abs() < 1e-12 && ke.abs() < 1e-12,
            "plane wave needs lightlike k (k.k = {kk}) and transverse polarization (k.eps = {ke})"
        );
        EmField::PlaneWave {
            amplitude,
            wave_k,
            polarization,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_b_gives_f12() {
        let f = EmField::ConstantB([0.0, 0.0, 1.5]).f_lower(&[0.3, 1.0, -2.0, 0.7]);
        assert!((f[1][2] - 1.5).abs() < 1e-15);
        assert!((f[2][1] + 1.5).abs() < 1e-15);
        assert!(f[0][1].abs() < 1e-15);
    }

    #[test]
    fn constant_e_gives_f0i() {
        let f = EmField::ConstantE([2.0, 0.0, 0.0]).f_lower(&[0.0, 1.0, 0.0, 0.0]);
        assert!((f[0][1] + 2.0).abs() < 1e-15);
        assert!((f[1][0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn finite_difference_matches_analytic_form() {
        let analytic = EmField::Crossed {
            e: [0.4, 0.0, 0.0],
            b: [0.0, 0.0, 1.0],
        };
        let numeric = EmField::Numeric(Arc::new(move |x: &FourVec| {
            EmField::Crossed {
                e: [0.4, 0.0, 0.0],
                b: [0.0, 0.0, 1.0],
            }
            .a_upper(x)
        }));
        let x = [0.2, 0.7, -1.0, 0.4];
        let fa = analytic.f_lower(&x);
        let fn_ = numeric.f_lower(&x);
        for mu in 0..4 {
            for nu in 0..4 {
                assert!(
                    (fa[mu][nu] - fn_[mu][nu]).abs() <= 1e-10,
                    "({mu},{nu}): {} vs {}",
                    fa[mu][nu],
                    fn_[mu][nu]
                );
                // F antisymmetric at every sampled point
                assert!((fn_[mu][nu] + fn_[nu][mu]).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn plane_wave_validation() {
        // k = (1,0,0,1) lightlike, polarization along x
        let f = EmField::plane_wave(0.3, [1.0, 0.0, 0.0, 1.0], [0.0, 1.0, 0.0, 0.0]);
        let x = [0.5, 0.1, 0.2, -0.3];
        let fl = f.f_lower(&x);
        for mu in 0..4 {
            for nu in 0..4 {
                assert!((fl[mu][nu] + fl[nu][mu]).abs() < 1e-14);
            }
        }
    }
}
