//! Closed-form covariant motion in a constant electromagnetic field.
//!
//! For constant F the kinetic four-vector obeys a linear system,
//! d pi^mu/ds = Omega^mu_nu pi^nu with Omega = (q/mc) F^mu_nu, so
//!
//! ```text
//! pi(s) = exp(Omega s) pi(0)
//! x(s)  = x(0) + (1/m) [ int_0^s exp(Omega u) du ] pi(0)
//! ```
//!
//! with the integral read off an augmented matrix exponential
//! exp([[Omega, I], [0, 0]] s) = [[exp(Omega s), int exp], [0, I]].
//!
//! Metric diag{-1,1,1,1}; components F_{0i} = -E_i, F_{ij} = eps_{ijk} B_k,
//! built here directly and independently of any field-object code.

use crate::expm::{expm, matvec, Mat};

/// Exact trajectory of a charge in constant E and B fields.
pub struct ConstantFieldSolution {
    augmented: Mat, // [[Omega, I],[0,0]], 8x8
    x0: [f64; 4],
    pi0: [f64; 4],
    m: f64,
}

/// Mixed field tensor F^mu_nu for constant fields.
pub fn f_mixed(e: [f64; 3], b: [f64; 3]) -> [[f64; 4]; 4] {
    let mut f_lower = [[0.0; 4]; 4];
    for i in 0..3 {
        f_lower[0][i + 1] = -e[i];
        f_lower[i + 1][0] = e[i];
    }
    // F_{ij} = eps_{ijk} B_k
    f_lower[1][2] = b[2];
    f_lower[2][1] = -b[2];
    f_lower[2][3] = b[0];
    f_lower[3][2] = -b[0];
    f_lower[3][1] = b[1];
    f_lower[1][3] = -b[1];
    let mut f = [[0.0; 4]; 4];
    for mu in 0..4 {
        let sign = if mu == 0 { -1.0 } else { 1.0 };
        for nu in 0..4 {
            f[mu][nu] = sign * f_lower[mu][nu];
        }
    }
    f
}

impl ConstantFieldSolution {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        e: [f64; 3],
        b: [f64; 3],
        charge: f64,
        m: f64,
        c: f64,
        x0: [f64; 4],
        pi0: [f64; 4],
    ) -> Self {
        let f = f_mixed(e, b);
        let mut augmented = vec![vec![0.0; 8]; 8];
        for mu in 0..4 {
            for nu in 0..4 {
                augmented[mu][nu] = charge / (m * c) * f[mu][nu];
            }
            augmented[mu][4 + mu] = 1.0;
        }
        ConstantFieldSolution {
            augmented,
            x0,
            pi0,
            m,
        }
    }

    /// (x(s), pi(s)).
    pub fn eval(&self, s: f64) -> ([f64; 4], [f64; 4]) {
        let scaled: Mat = self
            .augmented
            .iter()
            .map(|row| row.iter().map(|v| v * s).collect())
            .collect();
        let e = expm(&scaled);
        // top-left block: exp(Omega s); top-right: integral
        let mut pi = [0.0; 4];
        let mut x = self.x0;
        let exp_block: Mat = (0..4).map(|i| e[i][0..4].to_vec()).collect();
        let int_block: Mat = (0..4).map(|i| e[i][4..8].to_vec()).collect();
        let pi_new = matvec(&exp_block, &self.pi0);
        let drift = matvec(&int_block, &self.pi0);
        for mu in 0..4 {
            pi[mu] = pi_new[mu];
            x[mu] += drift[mu] / self.m;
        }
        (x, pi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_magnetic_rotation_preserves_pi_norm() {
        let sol = ConstantFieldSolution::new(
            [0.0; 3],
            [0.0, 0.0, 1.0],
            1.0,
            1.0,
            1.0,
            [0.0; 4],
            [1.01f64.sqrt(), 0.1, 0.0, 0.0],
        );
        let (_, pi) = sol.eval(3.7);
        let n = -pi[0] * pi[0] + pi[1] * pi[1] + pi[2] * pi[2] + pi[3] * pi[3];
        assert!((n + 1.0).abs() < 1e-12, "pi.pi = {n}");
        // pi^0 untouched by a pure magnetic field
        assert!((pi[0] - 1.01f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn free_limit_is_straight_line() {
        let sol =
            ConstantFieldSolution::new([0.0; 3], [0.0; 3], 1.0, 2.0, 1.0, [0.0; 4], [1.0, 0.5, 0.0, 0.0]);
        let (x, pi) = sol.eval(4.0);
        assert!((x[0] - 2.0).abs() < 1e-13); // pi^0 s / m
        assert!((x[1] - 1.0).abs() < 1e-13);
        assert!((pi[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn pure_electric_hyperbolic_motion() {
        // constant E along x: pi^0, pi^1 follow a boost rotation
        let e0 = 0.8;
        let sol = ConstantFieldSolution::new(
            [e0, 0.0, 0.0],
            [0.0; 3],
            1.0,
            1.0,
            1.0,
            [0.0; 4],
            [1.0, 0.0, 0.0, 0.0],
        );
        let s = 1.3;
        let (_, pi) = sol.eval(s);
        // d pi^0/ds = e0 pi^1, d pi^1/ds = e0 pi^0 -> cosh/sinh
        assert!((pi[0] - (e0 * s).cosh()).abs() < 1e-12);
        assert!((pi[1] - (e0 * s).sinh()).abs() < 1e-12);
    }
}
