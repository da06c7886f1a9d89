//! Concrete operator representations of H_R(1,3) and their checks.
//!
//! A full irreducible representation is a product of a truncated-oscillator
//! Heisenberg sector ([`HeisenbergRep`]) and a finite-dimensional spin sector
//! ([`SpinRep`]), with
//!
//! ```text
//! Y_mu = m X_mu        E_mu = c P_mu        M = m
//! J'_{mu nu} = c (L_{mu nu} + S_{mu nu}),   L_{mu nu} = X_mu P_nu - P_mu X_nu
//! ```
//!
//! Composite systems are product representations with every abstract
//! generator acting as G_a x I + I x G_b; the center of mass, total momentum
//! and relative pair come out of the same bookkeeping.
//!
//! [`check_eq3_brackets`] verifies every bracket of the structure table as a
//! matrix identity on interior states by applying both sides to each interior
//! basis vector; the truncated ladder algebra is exact there, so the relative
//! deviation is pure floating round-off.

mod heisenberg;
mod spin;

pub use heisenberg::HeisenbergRep;
pub use spin::{casimir_spin, casimir_spin_expected, su2_triple, SpinRep};

use crate::algebra::{bracket, GeneratorId};
use crate::linop::LinearOperator;
use crate::Units;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RepsError {
    #[error("cutoff {0} too small: need cutoff >= 4 so interior states exist")]
    CutoffTooSmall(usize),
    #[error("mass must be positive and finite, got {0}")]
    NonPositiveMass(f64),
    #[error("spin {0} is not a non-negative half-integer")]
    InvalidSpin(f64),
    #[error("casimir {which} is not a scalar multiple of the identity")]
    NonScalarCasimir { which: &'static str },
    #[error("representation dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// A representation that realizes all 15 generators as operators.
pub trait Eq3Rep {
    fn dim(&self) -> usize;
    fn units(&self) -> Units;
    /// Operator realizing the abstract generator.
    fn generator(&self, g: GeneratorId) -> LinearOperator;
    /// Columns on which ladder algebra is exact.
    fn interior_mask(&self) -> Vec<bool>;
    fn describe(&self) -> String;
}

/// Full irreducible representation: Heisenberg sector x spin sector.
#[derive(Debug, Clone)]
pub struct FullRep {
    pub heisenberg: HeisenbergRep,
    pub spin: SpinRep,
    dim: usize,
    ident_h: LinearOperator,
    ident_s: LinearOperator,
}

impl FullRep {
    pub fn new(heisenberg: HeisenbergRep, spin: SpinRep) -> Self {
        let dim = heisenberg.dim() * spin.dim();
        let ident_h = LinearOperator::identity(heisenberg.dim());
        let ident_s = LinearOperator::identity(spin.dim());
        FullRep {
            heisenberg,
            spin,
            dim,
            ident_h,
            ident_s,
        }
    }

    /// Spin-zero convenience constructor.
    pub fn spinless(heisenberg: HeisenbergRep) -> Self {
        let units = heisenberg.units;
        Self::new(heisenberg, SpinRep::build_doubled(0, 0, units))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mass(&self) -> f64 {
        self.heisenberg.m
    }

    /// X_mu on the product space.
    pub fn xhat(&self, mu: usize) -> LinearOperator {
        self.heisenberg.xhat(mu).kron(&self.ident_s)
    }

    pub fn phat(&self, mu: usize) -> LinearOperator {
        self.heisenberg.phat(mu).kron(&self.ident_s)
    }

    pub fn mhat(&self) -> LinearOperator {
        LinearOperator::scalar(self.dim, Complex64::new(self.mass(), 0.0))
    }

    /// Orbital part L_{mu nu} x I.
    pub fn lhat(&self, mu: usize, nu: usize) -> LinearOperator {
        self.heisenberg.lhat(mu, nu).kron(&self.ident_s)
    }

    /// Spin part I x S_{mu nu}.
    pub fn shat(&self, mu: usize, nu: usize) -> LinearOperator {
        self.ident_h.kron(&self.spin.shat(mu, nu))
    }

    /// J_{mu nu} = L_{mu nu} x I + I x S_{mu nu} (units of hbar; J' = c J).
    pub fn jhat(&self, mu: usize, nu: usize) -> LinearOperator {
        self.lhat(mu, nu).add(&self.shat(mu, nu))
    }
}

impl Eq3Rep for FullRep {
    fn dim(&self) -> usize {
        self.dim
    }

    fn units(&self) -> Units {
        self.heisenberg.units
    }

    fn generator(&self, g: GeneratorId) -> LinearOperator {
        let c = self.units().c;
        match g {
            GeneratorId::JPrime(mu, nu) => self
                .jhat(mu as usize, nu as usize)
                .scale(Complex64::new(c, 0.0)),
            GeneratorId::Y(mu) => self.xhat(mu as usize).scale(Complex64::new(self.mass(), 0.0)),
            GeneratorId::E(mu) => self.phat(mu as usize).scale(Complex64::new(c, 0.0)),
            GeneratorId::M => self.mhat(),
        }
    }

    fn interior_mask(&self) -> Vec<bool> {
        let hm = self.heisenberg.interior_mask();
        let sd = self.spin.dim();
        let mut mask = Vec::with_capacity(self.dim);
        for h in hm {
            for _ in 0..sd {
                mask.push(h);
            }
        }
        mask
    }

    fn describe(&self) -> String {
        format!(
            "full[m={}, cutoff={}, (sL,sR)=({},{})]",
            self.mass(),
            self.heisenberg.cutoff,
            self.spin.s_left(),
            self.spin.s_right()
        )
    }
}

impl Eq3Rep for HeisenbergRep {
    fn dim(&self) -> usize {
        self.dim()
    }

    fn units(&self) -> Units {
        self.units
    }

    fn generator(&self, g: GeneratorId) -> LinearOperator {
        let c = self.units.c;
        match g {
            GeneratorId::JPrime(mu, nu) => self
                .lhat(mu as usize, nu as usize)
                .scale(Complex64::new(c, 0.0)),
            GeneratorId::Y(mu) => self.xhat(mu as usize).scale(Complex64::new(self.m, 0.0)),
            GeneratorId::E(mu) => self.phat(mu as usize).scale(Complex64::new(c, 0.0)),
            GeneratorId::M => self.mhat().clone(),
        }
    }

    fn interior_mask(&self) -> Vec<bool> {
        self.interior_mask()
    }

    fn describe(&self) -> String {
        format!("heisenberg[m={}, cutoff={}]", self.m, self.cutoff)
    }
}

/// Composite (two-particle) representation on the tensor product of two full
/// representations: every generator acts as G_a x I + I x G_b.
#[derive(Debug, Clone)]
pub struct ProductRep {
    pub a: FullRep,
    pub b: FullRep,
    ident_a: LinearOperator,
    ident_b: LinearOperator,
}

impl ProductRep {
    pub fn new(a: FullRep, b: FullRep) -> Self {
        let ident_a = LinearOperator::identity(a.dim());
        let ident_b = LinearOperator::identity(b.dim());
        ProductRep {
            a,
            b,
            ident_a,
            ident_b,
        }
    }

    pub fn dim(&self) -> usize {
        self.a.dim() * self.b.dim()
    }

    /// Additive Newtonian mass m = m_a + m_b.
    pub fn total_mass(&self) -> f64 {
        self.a.mass() + self.b.mass()
    }

    /// Reduced mass m_a m_b / (m_a + m_b).
    pub fn reduced_mass(&self) -> f64 {
        self.a.mass() * self.b.mass() / self.total_mass()
    }

    fn lift_a(&self, op: &LinearOperator) -> LinearOperator {
        op.kron(&self.ident_b)
    }

    fn lift_b(&self, op: &LinearOperator) -> LinearOperator {
        self.ident_a.kron(op)
    }

    /// Center of mass X = (m_a X_a + m_b X_b) / m.
    pub fn x_cm(&self, mu: usize) -> LinearOperator {
        let m = self.total_mass();
        self.lift_a(&self.a.xhat(mu))
            .scale(Complex64::new(self.a.mass() / m, 0.0))
            .add(
                &self
                    .lift_b(&self.b.xhat(mu))
                    .scale(Complex64::new(self.b.mass() / m, 0.0)),
            )
    }

    /// Total momentum P = P_a + P_b.
    pub fn p_tot(&self, mu: usize) -> LinearOperator {
        self.lift_a(&self.a.phat(mu)).add(&self.lift_b(&self.b.phat(mu)))
    }

    /// Relative position R = X_a - X_b.
    pub fn r_rel(&self, mu: usize) -> LinearOperator {
        self.lift_a(&self.a.xhat(mu)).sub(&self.lift_b(&self.b.xhat(mu)))
    }

    /// Relative pair partner Q = (m_a P_b - m_b P_a) / m.
    ///
    /// Satisfies [R_mu, Q_nu] = -i hbar eta_{mu nu}; its sign flip
    /// [`Self::q_canonical`] is the momentum canonically conjugate to R.
    pub fn q_rel(&self, mu: usize) -> LinearOperator {
        let m = self.total_mass();
        self.lift_b(&self.b.phat(mu))
            .scale(Complex64::new(self.a.mass() / m, 0.0))
            .sub(
                &self
                    .lift_a(&self.a.phat(mu))
                    .scale(Complex64::new(self.b.mass() / m, 0.0)),
            )
    }

    /// Canonical relative momentum (m_b P_a - m_a P_b) / m, conjugate to R.
    pub fn q_canonical(&self, mu: usize) -> LinearOperator {
        self.q_rel(mu).scale(Complex64::new(-1.0, 0.0))
    }

    /// Spin generator of constituent a, lifted to the composite space.
    pub fn s_a(&self, mu: usize, nu: usize) -> LinearOperator {
        self.lift_a(&self.a.shat(mu, nu))
    }

    pub fn s_b(&self, mu: usize, nu: usize) -> LinearOperator {
        self.lift_b(&self.b.shat(mu, nu))
    }

    /// Additive J_{mu nu} of the product representation (hbar units).
    pub fn jhat_additive(&self, mu: usize, nu: usize) -> LinearOperator {
        self.lift_a(&self.a.jhat(mu, nu)).add(&self.lift_b(&self.b.jhat(mu, nu)))
    }

    /// Center-of-mass orbital generator X_mu P_nu - P_mu X_nu.
    pub fn l_cm(&self, mu: usize, nu: usize) -> LinearOperator {
        self.x_cm(mu)
            .matmul(&self.p_tot(nu))
            .sub(&self.p_tot(mu).matmul(&self.x_cm(nu)))
    }

    /// Composite spin tensor S_{mu nu} = S_a + S_b + (R_mu Qc_nu - Qc_mu R_nu),
    /// built with the canonical relative momentum Qc so that J = L_cm + S
    /// reproduces the additive J of the product representation on interior
    /// states.
    pub fn composite_spin_tensor(&self, mu: usize, nu: usize) -> LinearOperator {
        let orbital = self
            .r_rel(mu)
            .matmul(&self.q_canonical(nu))
            .sub(&self.q_canonical(mu).matmul(&self.r_rel(nu)));
        self.s_a(mu, nu).add(&self.s_b(mu, nu)).add(&orbital)
    }
}

impl Eq3Rep for ProductRep {
    fn dim(&self) -> usize {
        self.dim()
    }

    fn units(&self) -> Units {
        self.a.units()
    }

    fn generator(&self, g: GeneratorId) -> LinearOperator {
        self.lift_a(&self.a.generator(g)).add(&self.lift_b(&self.b.generator(g)))
    }

    fn interior_mask(&self) -> Vec<bool> {
        let ma = self.a.interior_mask();
        let mb = self.b.interior_mask();
        let mut mask = Vec::with_capacity(self.dim());
        for &ka in &ma {
            for &kb in &mb {
                mask.push(ka && kb);
            }
        }
        mask
    }

    fn describe(&self) -> String {
        format!("product[{} x {}]", self.a.describe(), self.b.describe())
    }
}

/// Outcome of one bracket identity check.
#[derive(Debug, Clone)]
pub struct BracketCheck {
    pub a: GeneratorId,
    pub b: GeneratorId,
    pub relative_deviation: f64,
}

/// Report for a full structure-table sweep on a representation.
#[derive(Debug, Clone)]
pub struct BracketSuiteReport {
    pub rep: String,
    pub checks: Vec<BracketCheck>,
    pub max_relative_deviation: f64,
}

impl BracketSuiteReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_relative_deviation <= tol
    }
}

/// Verify every bracket of the structure table as a matrix identity
/// restricted to interior states.
///
/// For each ordered pair (a, b) the defect ([A,B] - sum coeff ihc G) is
/// applied to every interior basis vector; the reported deviation is the
/// worst defect norm relative to the size of the operands' action.
pub fn check_eq3_brackets<R: Eq3Rep>(rep: &R) -> BracketSuiteReport {
    let units = rep.units();
    let gens = GeneratorId::all();
    let ops: BTreeMap<GeneratorId, LinearOperator> =
        gens.iter().map(|&g| (g, rep.generator(g))).collect();
    let interior: Vec<usize> = rep
        .interior_mask()
        .iter()
        .enumerate()
        .filter_map(|(i, &k)| k.then_some(i))
        .collect();
    let ihc = Complex64::new(0.0, units.hbar * units.c);

    let mut checks = Vec::with_capacity(gens.len() * gens.len());
    let mut worst: f64 = 0.0;
    for &ga in &gens {
        for &gb in &gens {
            let lhs_a = &ops[&ga];
            let lhs_b = &ops[&gb];
            let expected = bracket(ga, gb);
            let mut num: f64 = 0.0;
            let mut den: f64 = 0.0;
            for &j in &interior {
                let mut ej = BTreeMap::new();
                ej.insert(j, Complex64::new(1.0, 0.0));
                let ab = lhs_a.apply_sparse(&lhs_b.apply_sparse(&ej));
                let ba = lhs_b.apply_sparse(&lhs_a.apply_sparse(&ej));
                let mut rhs: BTreeMap<usize, Complex64> = BTreeMap::new();
                for (&g, &q) in expected.iter() {
                    let coeff = ihc * q.to_f64().unwrap();
                    for (r, v) in ops[&g].column(j) {
                        *rhs.entry(r).or_insert(Complex64::ZERO) += coeff * v;
                    }
                }
                let mut defect2 = 0.0;
                let mut keys: Vec<usize> =
                    ab.keys().chain(ba.keys()).chain(rhs.keys()).copied().collect();
                keys.sort_unstable();
                keys.dedup();
                for r in keys {
                    let d = ab.get(&r).copied().unwrap_or(Complex64::ZERO)
                        - ba.get(&r).copied().unwrap_or(Complex64::ZERO)
                        - rhs.get(&r).copied().unwrap_or(Complex64::ZERO);
                    defect2 += d.norm_sqr();
                }
                let scale2: f64 = ab.values().map(|v| v.norm_sqr()).sum::<f64>()
                    + ba.values().map(|v| v.norm_sqr()).sum::<f64>()
                    + rhs.values().map(|v| v.norm_sqr()).sum::<f64>();
                num = num.max(defect2.sqrt());
                den = den.max(scale2.sqrt());
            }
            let rel = num / den.max(f64::MIN_POSITIVE);
            worst = worst.max(rel);
            checks.push(BracketCheck {
                a: ga,
                b: gb,
                relative_deviation: rel,
            });
        }
    }
    BracketSuiteReport {
        rep: rep.describe(),
        checks,
        max_relative_deviation: worst,
    }
}

/// Verify the Lorentz-sector brackets of a bare spin representation
/// (i hbar units); returns the worst relative deviation.
pub fn check_spin_brackets(rep: &SpinRep) -> f64 {
    let ih = Complex64::new(0.0, rep.units.hbar);
    let mut worst: f64 = 0.0;
    for mu in 0..4usize {
        for nu in (mu + 1)..4 {
            for rho in 0..4usize {
                for sigma in (rho + 1)..4 {
                    let sa = rep.shat(mu, nu);
                    let sb = rep.shat(rho, sigma);
                    let comm = sa.commutator(&sb);
                    let mut rhs = LinearOperator::zero(rep.dim());
                    let pattern = bracket(
                        GeneratorId::JPrime(mu as u8, nu as u8),
                        GeneratorId::JPrime(rho as u8, sigma as u8),
                    );
                    for (&g, &q) in pattern.iter() {
                        if let GeneratorId::JPrime(al, be) = g {
                            rhs = rhs.add(
                                &rep.shat(al as usize, be as usize)
                                    .scale(ih * q.to_f64().unwrap()),
                            );
                        }
                    }
                    let defect = comm.sub(&rhs).max_abs();
                    let scale = sa.max_abs() * sb.max_abs();
                    worst = worst.max(defect / scale.max(f64::MIN_POSITIVE));
                }
            }
        }
    }
    worst
}

/// [X_mu, P.P] on the Heisenberg sector; equals 2 i hbar P_mu on interior
/// states, so no position action preserves a P.P eigenspace.
pub fn onshell_violation_commutator(rep: &HeisenbergRep, mu: usize) -> LinearOperator {
    rep.xhat(mu).commutator(&rep.p_dot_p())
}

/// Rep-level contraction diagnostics over a sweep of c values.
#[derive(Debug, Clone)]
pub struct RepContractionReport {
    pub cs: Vec<f64>,
    /// max_i || K_i - P_i T ||_F on interior columns, per c.
    pub boost_residuals: Vec<f64>,
    /// Fitted decay power of the boost residual in 1/c.
    pub boost_fitted_power: f64,
    /// Worst relative deviation of [U, H] = -i hbar M over the sweep.
    pub uh_deviation: f64,
    /// Worst relative deviation of [K_i, Y_j] = -i hbar d_ij U over the sweep.
    pub ky_deviation: f64,
}

/// Representation-level contraction statements on a full rep: the rescaled
/// boost K_i = J'_{i0}/c^2 equals P_i T plus an O(1/c) remainder in operator
/// norm on interior states, while [U, H] = -i hbar M and
/// [K_i, Y_j] = -i hbar d_ij U hold at every c.
pub fn check_rep_contraction(rep: &FullRep, cs: &[f64]) -> RepContractionReport {
    assert!(cs.windows(2).all(|w| w[1] > w[0] && w[0] > 0.0));
    let hbar = rep.units().hbar;
    let m = rep.mass();
    let interior = rep.interior_mask();
    let n_interior = interior.iter().filter(|&&k| k).count() as f64;

    let x0 = rep.xhat(0);
    let p0 = rep.phat(0);
    let mhat = rep.mhat();
    let mut boost_residuals = Vec::with_capacity(cs.len());
    let mut uh_dev: f64 = 0.0;
    let mut ky_dev: f64 = 0.0;
    for &c in cs {
        let u = x0.scale(Complex64::new(-m / c, 0.0));
        let h = p0.scale(Complex64::new(-c, 0.0));
        // [U, H] + i hbar M must vanish
        let uh = u.commutator(&h).add(&mhat.scale(Complex64::new(0.0, hbar)));
        let uh_scale = (m * hbar * n_interior.sqrt()).max(f64::MIN_POSITIVE);
        uh_dev = uh_dev.max(uh.frobenius_on_columns(&interior) / uh_scale);

        let mut worst_boost: f64 = 0.0;
        for i in 1..4usize {
            // K_i = J'_{i0}/c^2 = -(L(0,i) + S(0,i))/c
            let k_i = rep.jhat(0, i).scale(Complex64::new(-1.0 / c, 0.0));
            let t = x0.scale(Complex64::new(-1.0 / c, 0.0));
            let pt = rep.phat(i).matmul(&t);
            worst_boost = worst_boost.max(k_i.sub(&pt).frobenius_on_columns(&interior));
            // [K_i, Y_j] = -i hbar d_ij U
            for j in 1..4usize {
                let y_j = rep.xhat(j).scale(Complex64::new(m, 0.0));
                let rhs = if i == j {
                    u.scale(Complex64::new(0.0, -hbar))
                } else {
                    LinearOperator::zero(rep.dim())
                };
                let defect = k_i.commutator(&y_j).sub(&rhs).frobenius_on_columns(&interior);
                let scale = k_i.max_abs() * y_j.max_abs();
                ky_dev = ky_dev.max(defect / scale.max(f64::MIN_POSITIVE));
            }
        }
        boost_residuals.push(worst_boost);
    }
    let pts: Vec<(f64, f64)> = cs
        .iter()
        .zip(&boost_residuals)
        .filter(|(_, &r)| r > 0.0)
        .map(|(&c, &r)| (-c.ln(), r.ln()))
        .collect();
    let boost_fitted_power = if pts.len() < 2 {
        f64::INFINITY
    } else {
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        (n * sxy - sx * sy) / (n * sxx - sx * sx)
    };
    RepContractionReport {
        cs: cs.to_vec(),
        boost_residuals,
        boost_fitted_power,
        uh_deviation: uh_dev,
        ky_deviation: ky_dev,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_bracket_suite_small() {
        let rep = HeisenbergRep::build(1.3, 4, Units::natural()).unwrap();
        let report = check_eq3_brackets(&rep);
        assert!(
            report.passes(1e-12),
            "max deviation {}",
            report.max_relative_deviation
        );
    }

    #[test]
    fn spin_bracket_suite() {
        for (sl, sr) in [(0.5, 0.0), (0.5, 0.5), (1.0, 0.5)] {
            let rep = SpinRep::build(sl, sr, Units::natural()).unwrap();
            let dev = check_spin_brackets(&rep);
            assert!(dev <= 1e-12, "({sl},{sr}) deviation {dev}");
        }
    }

    #[test]
    fn full_rep_bracket_suite() {
        let h = HeisenbergRep::build(0.7, 4, Units::with_c(2.0)).unwrap();
        let s = SpinRep::build(0.5, 0.0, Units::with_c(2.0)).unwrap();
        let report = check_eq3_brackets(&FullRep::new(h, s));
        assert!(
            report.passes(1e-12),
            "max deviation {}",
            report.max_relative_deviation
        );
    }

    #[test]
    fn product_rep_masses() {
        let mk = |m: f64| FullRep::spinless(HeisenbergRep::build(m, 4, Units::natural()).unwrap());
        let prod = ProductRep::new(mk(1.0), mk(1.0));
        assert_eq!(prod.total_mass(), 2.0);
        assert_eq!(prod.reduced_mass(), 0.5);
    }

    #[test]
    fn onshell_commutator_equals_2ihp_on_interior() {
        let rep = HeisenbergRep::build(1.0, 5, Units::natural()).unwrap();
        let interior = rep.interior_mask();
        for mu in 0..4 {
            let comm = onshell_violation_commutator(&rep, mu);
            let want = rep.phat(mu).scale(Complex64::new(0.0, 2.0));
            let dev = comm.sub(&want).frobenius_on_columns(&interior);
            assert!(dev < 1e-12, "mu={mu}: {dev}");
            assert!(comm.max_abs() > 0.0, "commutator must not vanish");
        }
    }
}
