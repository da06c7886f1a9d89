//! Truncated four-mode oscillator realization of the Heisenberg sector.
//!
//! One bosonic mode per spacetime index, occupations 0..=cutoff.  With
//! per-mode ladder operators a, a\dagger:
//!
//! ```text
//! X_mu = sqrt(hbar/2) (a_mu + a_mu^+)           (all mu)
//! P_i  =  i sqrt(hbar/2) (a_i^+ - a_i)          (spatial)
//! P_0  = -i sqrt(hbar/2) (a_0^+ - a_0)          (sign flipped on mode 0)
//! ```
//!
//! so that [X_mu, P_nu] = i hbar eta_{mu nu} on every state whose occupations
//! stay clear of the truncation edge.  All operators are Hermitian; the
//! indefinite metric enters only through eta in the brackets.  "Interior"
//! means occupation <= cutoff-2 in every mode; ladder algebra is exact there
//! and every exactness contract is scoped to it.

use crate::linop::LinearOperator;
use crate::reps::RepsError;
use crate::Units;
use num_complex::Complex64;

/// Irreducible Heisenberg-sector representation with Newtonian mass m.
#[derive(Debug, Clone)]
pub struct HeisenbergRep {
    /// Casimir eigenvalue of the central generator.
    pub m: f64,
    /// Maximum occupation per mode; stored occupations run 0..=cutoff.
    pub cutoff: usize,
    pub units: Units,
    dim: usize,
    xhat: Vec<LinearOperator>,
    phat: Vec<LinearOperator>,
    mhat: LinearOperator,
}

impl HeisenbergRep {
    /// Four-mode truncated oscillator realization.
    ///
    /// Rejects cutoff < 4 (no usable interior) and non-positive mass.
    pub fn build(m: f64, cutoff: usize, units: Units) -> Result<Self, RepsError> {
        if m <= 0.0 || !m.is_finite() {
            return Err(RepsError::NonPositiveMass(m));
        }
        if cutoff < 4 {
            return Err(RepsError::CutoffTooSmall(cutoff));
        }
        let levels = cutoff + 1;
        let dim = levels.pow(4);
        let k = (units.hbar / 2.0).sqrt();
        let mut xhat = Vec::with_capacity(4);
        let mut phat = Vec::with_capacity(4);
        for mu in 0..4usize {
            let stride = levels.pow(3 - mu as u32);
            let mut xt = Vec::new();
            let mut pt = Vec::new();
            let psign = if mu == 0 { -1.0 } else { 1.0 };
            for idx in 0..dim {
                let n = (idx / stride) % levels;
                if n > 0 {
                    // lowering: |n> -> sqrt(n) |n-1>
                    let amp = (n as f64).sqrt();
                    xt.push((idx - stride, idx, Complex64::new(k * amp, 0.0)));
                    pt.push((idx - stride, idx, Complex64::new(0.0, -psign * k * amp)));
                }
                if n + 1 < levels {
                    // raising: |n> -> sqrt(n+1) |n+1>
                    let amp = ((n + 1) as f64).sqrt();
                    xt.push((idx + stride, idx, Complex64::new(k * amp, 0.0)));
                    pt.push((idx + stride, idx, Complex64::new(0.0, psign * k * amp)));
                }
            }
            let label = format!("osc4[cutoff={cutoff}]");
            xhat.push(LinearOperator::from_triplets(dim, xt).with_label(label.clone()));
            phat.push(LinearOperator::from_triplets(dim, pt).with_label(label));
        }
        let mhat = LinearOperator::scalar(dim, Complex64::new(m, 0.0));
        Ok(HeisenbergRep {
            m,
            cutoff,
            units,
            dim,
            xhat,
            phat,
            mhat,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn xhat(&self, mu: usize) -> &LinearOperator {
        &self.xhat[mu]
    }

    pub fn phat(&self, mu: usize) -> &LinearOperator {
        &self.phat[mu]
    }

    pub fn mhat(&self) -> &LinearOperator {
        &self.mhat
    }

    /// Orbital generator L_{mu nu} = X_mu P_nu - P_mu X_nu.
    pub fn lhat(&self, mu: usize, nu: usize) -> LinearOperator {
        self.xhat[mu]
            .matmul(&self.phat[nu])
            .sub(&self.phat[mu].matmul(&self.xhat[nu]))
    }

    /// P.P = eta^{mu nu} P_mu P_nu.
    pub fn p_dot_p(&self) -> LinearOperator {
        let mut out = self.phat[0].matmul(&self.phat[0]).scale(Complex64::new(-1.0, 0.0));
        for i in 1..4 {
            out = out.add(&self.phat[i].matmul(&self.phat[i]));
        }
        out
    }

    pub fn occupations(&self, index: usize) -> [usize; 4] {
        let levels = self.cutoff + 1;
        let mut occ = [0usize; 4];
        let mut rest = index;
        for mu in (0..4).rev() {
            occ[mu] = rest % levels;
            rest /= levels;
        }
        occ
    }

    pub fn index(&self, occ: [usize; 4]) -> usize {
        let levels = self.cutoff + 1;
        occ.iter().fold(0, |acc, &n| acc * levels + n)
    }

    /// True for states with every occupation <= cutoff-2.
    pub fn interior_mask(&self) -> Vec<bool> {
        (0..self.dim)
            .map(|i| self.occupations(i).iter().all(|&n| n + 2 <= self.cutoff))
            .collect()
    }

    pub fn vacuum(&self) -> Vec<Complex64> {
        let mut v = vec![Complex64::ZERO; self.dim];
        v[0] = Complex64::new(1.0, 0.0);
        v
    }

    /// Truncated, renormalized product coherent state with per-mode
    /// displacement alpha_mu.
    pub fn coherent_state(&self, alpha: [Complex64; 4]) -> Vec<Complex64> {
        let levels = self.cutoff + 1;
        // per-mode amplitudes alpha^n / sqrt(n!)
        let mut per_mode: Vec<Vec<Complex64>> = Vec::with_capacity(4);
        for a in alpha {
            let mut amps = Vec::with_capacity(levels);
            let mut cur = Complex64::new(1.0, 0.0);
            for n in 0..levels {
                if n > 0 {
                    cur *= a / (n as f64).sqrt();
                }
                amps.push(cur);
            }
            per_mode.push(amps);
        }
        let mut v = vec![Complex64::ZERO; self.dim];
        for (idx, slot) in v.iter_mut().enumerate() {
            let occ = self.occupations(idx);
            *slot = (0..4).map(|mu| per_mode[mu][occ[mu]]).product();
        }
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v {
            *z /= norm;
        }
        v
    }
}
