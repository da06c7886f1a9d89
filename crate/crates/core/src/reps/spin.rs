//! Finite-dimensional (s_L, s_R) spin sector and its Casimir invariants.
//!
//! The six generators S_{mu nu} are assembled from two commuting su(2)
//! triples A_k (left) and B_k (right), realized as standard spin matrices in
//! the |s, m_s> basis of each chirality:
//!
//! ```text
//! S_ij  = eps_ijk (A_k + B_k)          S_ij^+- = 1/2 (S_ij -++ i eps_ij^k S_0k) = eps_ijk A_k / B_k
//! S_0k  = -i (A_k - B_k)
//! ```
//!
//! Rotations are Hermitian, boosts anti-Hermitian; the brackets close on the
//! Lorentz pattern in i*hbar units.  The quadratic Casimir is
//! (1/2) S_{mu nu} S^{mu nu}; the dual contraction (1/4) eps^{mu nu rho sigma}
//! S_{mu nu} S_{rho sigma} is taken with an overall factor i (convention
//! eps^{0123} = 1) which makes it Hermitian with real eigenvalues
//! 2 hbar^2 [s_L(s_L+1) - s_R(s_R+1)] alongside 2 hbar^2 [s_L(s_L+1) + s_R(s_R+1)].

use crate::linop::LinearOperator;
use crate::minkowski::eps3;
use crate::reps::RepsError;
use crate::Units;
use num_complex::Complex64;

/// Finite-dimensional spin representation labeled by (s_L, s_R).
#[derive(Debug, Clone)]
pub struct SpinRep {
    /// 2 s_L.
    pub two_s_left: u32,
    /// 2 s_R.
    pub two_s_right: u32,
    pub units: Units,
    dim: usize,
    /// S_{mu nu} for mu < nu, keyed by (mu, nu).
    s: Vec<((usize, usize), LinearOperator)>,
}

/// Standard su(2) spin matrices (Sx, Sy, Sz) for doubled spin `two_s`,
/// in the |s, m> basis ordered m = s, s-1, ..., -s.
pub fn su2_triple(two_s: u32, hbar: f64) -> [LinearOperator; 3] {
    let dim = two_s as usize + 1;
    let s = two_s as f64 / 2.0;
    let mut plus = Vec::new(); // S+ entries
    let mut z = Vec::new();
    for i in 0..dim {
        let m = s - i as f64;
        z.push((i, i, Complex64::new(hbar * m, 0.0)));
        if i > 0 {
            // S+ |s, m> = hbar sqrt(s(s+1) - m(m+1)) |s, m+1>
            let amp = hbar * (s * (s + 1.0) - m * (m + 1.0)).sqrt();
            plus.push((i - 1, i, Complex64::new(amp, 0.0)));
        }
    }
    let sp = LinearOperator::from_triplets(dim, plus);
    let sm = sp.adjoint();
    let sx = sp.add(&sm).scale(Complex64::new(0.5, 0.0));
    let sy = sp.sub(&sm).scale(Complex64::new(0.0, -0.5));
    let sz = LinearOperator::from_triplets(dim, z);
    [sx, sy, sz]
}

impl SpinRep {
    /// Build from half-integer labels; rejects anything that is not a
    /// non-negative half-integer.
    pub fn build(s_left: f64, s_right: f64, units: Units) -> Result<Self, RepsError> {
        let two_s_left = doubled(s_left)?;
        let two_s_right = doubled(s_right)?;
        Ok(Self::build_doubled(two_s_left, two_s_right, units))
    }

    pub fn build_doubled(two_s_left: u32, two_s_right: u32, units: Units) -> Self {
        let dl = two_s_left as usize + 1;
        let dr = two_s_right as usize + 1;
        let dim = dl * dr;
        let il = LinearOperator::identity(dl);
        let ir = LinearOperator::identity(dr);
        let left = su2_triple(two_s_left, units.hbar);
        let right = su2_triple(two_s_right, units.hbar);
        let a: Vec<LinearOperator> = left.iter().map(|o| o.kron(&ir)).collect();
        let b: Vec<LinearOperator> = right.iter().map(|o| il.kron(o)).collect();
        let label = format!("spin[(2sL,2sR)=({two_s_left},{two_s_right})]");
        let mut s = Vec::with_capacity(6);
        for k in 0..3usize {
            // S_{0,k+1} = -i (A_k - B_k)
            let boost = a[k].sub(&b[k]).scale(Complex64::new(0.0, -1.0));
            s.push(((0, k + 1), boost.with_label(label.clone())));
        }
        for i in 1..4usize {
            for j in (i + 1)..4 {
                // S_ij = eps_ijk (A_k + B_k)
                let mut rot = LinearOperator::zero(dim);
                for k in 0..3usize {
                    let e = eps3(i - 1, j - 1, k);
                    if e != 0.0 {
                        rot = rot.add(&a[k].add(&b[k]).scale(Complex64::new(e, 0.0)));
                    }
                }
                s.push(((i, j), rot.with_label(label.clone())));
            }
        }
        s.sort_by_key(|e| e.0);
        SpinRep {
            two_s_left,
            two_s_right,
            units,
            dim,
            s,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn s_left(&self) -> f64 {
        self.two_s_left as f64 / 2.0
    }

    pub fn s_right(&self) -> f64 {
        self.two_s_right as f64 / 2.0
    }

    /// S_{mu nu} with antisymmetric index normalization.
    pub fn shat(&self, mu: usize, nu: usize) -> LinearOperator {
        assert!(mu < 4 && nu < 4 && mu != nu);
        if mu < nu {
            self.stored(mu, nu).clone()
        } else {
            self.stored(nu, mu).scale(Complex64::new(-1.0, 0.0))
        }
    }

    fn stored(&self, mu: usize, nu: usize) -> &LinearOperator {
        &self
            .s
            .iter()
            .find(|e| e.0 == (mu, nu))
            .expect("stored index pair")
            .1
    }
}

fn doubled(s: f64) -> Result<u32, RepsError> {
    let two = 2.0 * s;
    if s < 0.0 || !two.is_finite() || two.fract() != 0.0 || two > u32::MAX as f64 {
        return Err(RepsError::InvalidSpin(s));
    }
    Ok(two as u32)
}

/// Both Casimir scalars of a spin representation.
///
/// C1 = (1/2) S_{mu nu} S^{mu nu}; C2 = (i/4) eps^{mu nu rho sigma}
/// S_{mu nu} S_{rho sigma} with eps^{0123} = 1 (the factor i makes the dual
/// contraction Hermitian; see module docs).  Errors when either operator
/// fails to be a scalar multiple of the identity.
pub fn casimir_spin(rep: &SpinRep) -> Result<(f64, f64), RepsError> {
    let minus = Complex64::new(-1.0, 0.0);
    // C1 = sum_{mu<nu} eta^mu eta^nu S_{mu nu}^2
    let mut c1 = LinearOperator::zero(rep.dim());
    for mu in 0..4usize {
        for nu in (mu + 1)..4 {
            let s = rep.shat(mu, nu);
            let sq = s.matmul(&s);
            let sign = if mu == 0 { minus } else { Complex64::new(1.0, 0.0) };
            c1 = c1.add(&sq.scale(sign));
        }
    }
    // C2_raw = 2 (S01 S23 - S02 S13 + S03 S12); C2 = i * C2_raw
    let t1 = rep.shat(0, 1).matmul(&rep.shat(2, 3));
    let t2 = rep.shat(0, 2).matmul(&rep.shat(1, 3));
    let t3 = rep.shat(0, 3).matmul(&rep.shat(1, 2));
    let c2 = t1
        .add(&t2.scale(minus))
        .add(&t3)
        .scale(Complex64::new(0.0, 2.0));

    let scale = c1.max_abs().max(c2.max_abs()).max(1.0);
    let tol = 1e-12 * scale;
    let l1 = c1
        .as_scalar(tol)
        .ok_or(RepsError::NonScalarCasimir { which: "C1" })?;
    let l2 = c2
        .as_scalar(tol)
        .ok_or(RepsError::NonScalarCasimir { which: "C2" })?;
    Ok((l1.re, l2.re))
}

/// Closed-form Casimir eigenvalues 2 hbar^2 [s_L(s_L+1) +- s_R(s_R+1)].
pub fn casimir_spin_expected(s_left: f64, s_right: f64, hbar: f64) -> (f64, f64) {
    let l = s_left * (s_left + 1.0);
    let r = s_right * (s_right + 1.0);
    (2.0 * hbar * hbar * (l + r), 2.0 * hbar * hbar * (l - r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_rep_is_one_dimensional_and_null() {
        let rep = SpinRep::build(0.0, 0.0, Units::natural()).unwrap();
        assert_eq!(rep.dim(), 1);
        for mu in 0..4 {
            for nu in (mu + 1)..4 {
                assert_eq!(rep.shat(mu, nu).nnz(), 0);
            }
        }
        assert_eq!(casimir_spin(&rep).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn half_zero_rotation_eigenvalues() {
        // (1/2, 0): dim 2, S_12 = A_3 has eigenvalues +- hbar/2
        let rep = SpinRep::build(0.5, 0.0, Units::natural()).unwrap();
        assert_eq!(rep.dim(), 2);
        let s12 = rep.shat(1, 2);
        assert!((s12.entry(0, 0).re - 0.5).abs() < 1e-15);
        assert!((s12.entry(1, 1).re + 0.5).abs() < 1e-15);
    }

    #[test]
    fn invalid_spin_rejected() {
        assert!(SpinRep::build(0.3, 0.0, Units::natural()).is_err());
        assert!(SpinRep::build(-0.5, 0.0, Units::natural()).is_err());
    }

    #[test]
    fn casimir_table_small_spins() {
        for (sl, sr) in [(0.0, 0.0), (0.5, 0.0), (0.0, 0.5), (0.5, 0.5), (1.0, 0.5), (1.0, 1.0)] {
            let rep = SpinRep::build(sl, sr, Units::natural()).unwrap();
            let (c1, c2) = casimir_spin(&rep).unwrap();
            let (e1, e2) = casimir_spin_expected(sl, sr, 1.0);
            assert!((c1 - e1).abs() < 1e-12, "C1({sl},{sr}) = {c1}, want {e1}");
            assert!((c2 - e2).abs() < 1e-12, "C2({sl},{sr}) = {c2}, want {e2}");
        }
        // the quoted pair: (1/2, 0) -> (3/2, 3/2) in hbar^2 units
        let rep = SpinRep::build(0.5, 0.0, Units::natural()).unwrap();
        let (c1, c2) = casimir_spin(&rep).unwrap();
        assert!((c1 - 1.5).abs() < 1e-14 && (c2 - 1.5).abs() < 1e-14);
    }

    #[test]
    fn chiral_projections_recover_su2_triples() {
        // S_ij^+- = 1/2 (S_ij +- i eps_ij^k S_0k) must hit A / B parts only
        let rep = SpinRep::build(0.5, 0.5, Units::natural()).unwrap();
        let half = Complex64::new(0.5, 0.0);
        // (i,j) = (1,2), eps_12^3 = 1: S12^+ = (S12 + i S03)/2
        let s12 = rep.shat(1, 2);
        let s03 = rep.shat(0, 3);
        let plus = s12.add(&s03.scale(Complex64::new(0.0, 1.0))).scale(half);
        let minus = s12.sub(&s03.scale(Complex64::new(0.0, 1.0))).scale(half);
        // plus acts on the left factor only: commutes with right-factor A3
        let a3 = su2_triple(1, 1.0)[2].kron(&LinearOperator::identity(2));
        let b3 = LinearOperator::identity(2).kron(&su2_triple(1, 1.0)[2]);
        assert!(plus.sub(&a3).max_abs() < 1e-14);
        assert!(minus.sub(&b3).max_abs() < 1e-14);
    }
}
