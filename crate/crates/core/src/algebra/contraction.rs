//! The c-parameterized contraction family of H_R(1,3).
//!
//! Rescaled basis (spatial indices i,j,k in 1..=3):
//!
//! ```text
//! K_i  = J'_{i0} / c^2      P_i = E_i / c      U = -Y_0 / c
//! J_ij = J'_{ij} / c        H   = -E_0         Yc_i = Y_i       M -> M
//! ```
//!
//! Every bracket of rescaled generators is a rational multiple of an integer
//! power of c, in units of i*hbar; the arithmetic stays exact.  As c -> inf
//! the set {J_ij, K_i, P_i, H} closes into a Galilean algebra without central
//! extension, and {J_ij, Yc_i, P_i, M} into H_R(3).  The limit table is
//! hard-coded as an independent fixture, not derived through the same code
//! path as the rescaling map.

use super::{bracket, GeneratorId};
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Generator of the contracted (rescaled) basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CGen {
    /// Spatial rotation J_ij with i < j (1-based spatial indices).
    J(u8, u8),
    /// Boost K_i.
    K(u8),
    /// Spatial momentum P_i.
    P(u8),
    /// Hamiltonian H = -E_0.
    H,
    /// Unrescaled spatial Y_i.
    Yc(u8),
    /// U = -Y_0/c.
    U,
    /// Central charge, unchanged.
    M,
}

impl CGen {
    pub fn all() -> Vec<CGen> {
        let mut v = Vec::with_capacity(15);
        for i in 1..=3u8 {
            for j in (i + 1)..=3 {
                v.push(CGen::J(i, j));
            }
        }
        for i in 1..=3u8 {
            v.push(CGen::K(i));
        }
        for i in 1..=3u8 {
            v.push(CGen::P(i));
        }
        v.push(CGen::H);
        for i in 1..=3u8 {
            v.push(CGen::Yc(i));
        }
        v.push(CGen::U);
        v.push(CGen::M);
        v
    }
}

impl fmt::Display for CGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CGen::J(i, j) => write!(f, "J({i},{j})"),
            CGen::K(i) => write!(f, "K({i})"),
            CGen::P(i) => write!(f, "P({i})"),
            CGen::H => write!(f, "H"),
            CGen::Yc(i) => write!(f, "Y({i})"),
            CGen::U => write!(f, "U"),
            CGen::M => write!(f, "M"),
        }
    }
}

/// Monomial coefficient q * c^k, in units of i*hbar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CMono {
    pub q: Rational64,
    pub cpow: i32,
}

impl CMono {
    pub fn new(q: Rational64, cpow: i32) -> Self {
        CMono { q, cpow }
    }

    pub fn int(n: i64, cpow: i32) -> Self {
        CMono::new(Rational64::from_integer(n), cpow)
    }

    pub fn mul(self, other: CMono) -> CMono {
        CMono::new(self.q * other.q, self.cpow + other.cpow)
    }

    pub fn eval(self, c: f64) -> f64 {
        self.q.to_f64().unwrap() * c.powi(self.cpow)
    }
}

/// Sum of monomials in c, normalized (one entry per power, no zeros).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CCoeff(Vec<CMono>);

impl CCoeff {
    pub fn zero() -> Self {
        CCoeff(Vec::new())
    }

    pub fn add_mono(&mut self, m: CMono) {
        if m.q.is_zero() {
            return;
        }
        if let Some(e) = self.0.iter_mut().find(|e| e.cpow == m.cpow) {
            e.q += m.q;
        } else {
            self.0.push(m);
            self.0.sort_by_key(|e| e.cpow);
        }
        self.0.retain(|e| !e.q.is_zero());
    }

    pub fn eval(&self, c: f64) -> f64 {
        self.0.iter().map(|m| m.eval(c)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// The c-independent part (power zero), if that is all there is.
    pub fn constant_part(&self) -> Option<Rational64> {
        match self.0.as_slice() {
            [] => Some(Rational64::zero()),
            [m] if m.cpow == 0 => Some(m.q),
            _ => None,
        }
    }

    pub fn monomials(&self) -> &[CMono] {
        &self.0
    }
}

impl fmt::Display for CCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})c^{}", m.q, m.cpow)?;
        }
        Ok(())
    }
}

/// Linear combination of contracted generators with c-monomial coefficients.
pub type CComb = BTreeMap<CGen, CCoeff>;

/// Express a contracted generator in the original basis: g_c = mono * g_orig.
pub fn to_original(g: CGen) -> (GeneratorId, CMono) {
    use GeneratorId as G;
    match g {
        // K_i = J'_{i0}/c^2 = -J'_{0i}/c^2 in mu<nu storage
        CGen::K(i) => (G::JPrime(0, i), CMono::int(-1, -2)),
        CGen::P(i) => (G::E(i), CMono::int(1, -1)),
        CGen::U => (G::Y(0), CMono::int(-1, -1)),
        CGen::J(i, j) => (G::JPrime(i, j), CMono::int(1, -1)),
        CGen::H => (G::E(0), CMono::int(-1, 0)),
        CGen::Yc(i) => (G::Y(i), CMono::int(1, 0)),
        CGen::M => (G::M, CMono::int(1, 0)),
    }
}

/// Inverse of [`to_original`]: g_orig = mono * g_c.
pub fn from_original(g: GeneratorId) -> (CGen, CMono) {
    use GeneratorId as G;
    match g {
        G::JPrime(0, i) => (CGen::K(i), CMono::int(-1, 2)),
        G::JPrime(i, j) => (CGen::J(i, j), CMono::int(1, 1)),
        G::E(0) => (CGen::H, CMono::int(-1, 0)),
        G::E(i) => (CGen::P(i), CMono::int(1, 1)),
        G::Y(0) => (CGen::U, CMono::int(-1, 1)),
        G::Y(i) => (CGen::Yc(i), CMono::int(1, 0)),
        G::M => (CGen::M, CMono::int(1, 0)),
    }
}

/// Contracted basis at a finite rescaling parameter c > 0.
///
/// The bracket structure is induced from the H_R(1,3) table through the
/// rescaling map; coefficients stay exact as rationals times powers of c.
#[derive(Debug, Clone, Copy)]
pub struct ContractedBasis {
    pub c: f64,
}

impl ContractedBasis {
    pub fn new(c: f64) -> Self {
        assert!(c > 0.0 && c.is_finite(), "contraction parameter must be finite and positive");
        ContractedBasis { c }
    }

    /// Exact bracket of rescaled generators, expressed in the rescaled basis.
    ///
    /// Coefficients are in units of i*hbar (the i*hbar*c of the underlying
    /// bracket contributes one positive power of c).
    pub fn bracket(a: CGen, b: CGen) -> CComb {
        let (ga, ma) = to_original(a);
        let (gb, mb) = to_original(b);
        let mut out = CComb::new();
        for (&g, &q) in bracket(ga, gb).iter() {
            let (cg, mg) = from_original(g);
            // ma*mb from the rescaled operands, one factor c from ihc -> ih,
            // mg from re-expressing the result.
            let mono = ma.mul(mb).mul(CMono::new(q, 1)).mul(mg);
            out.entry(cg).or_insert_with(CCoeff::zero).add_mono(mono);
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Numeric evaluation of [`Self::bracket`] at this basis' c.
    pub fn bracket_at(&self, a: CGen, b: CGen) -> BTreeMap<CGen, f64> {
        Self::bracket(a, b)
            .into_iter()
            .map(|(g, coeff)| (g, coeff.eval(self.c)))
            .collect()
    }

    /// Map a contracted bracket back through the inverse rescaling and
    /// compare with the original bracket; exact, returns the mismatch pairs.
    pub fn roundtrip_failures() -> Vec<(CGen, CGen)> {
        let gens = CGen::all();
        let mut bad = Vec::new();
        for &a in &gens {
            for &b in &gens {
                let (ga, ma) = to_original(a);
                let (gb, mb) = to_original(b);
                // original bracket scaled by the operand monomials (units ihc)
                let want: BTreeMap<GeneratorId, CCoeff> = bracket(ga, gb)
                    .iter()
                    .map(|(&g, &q)| {
                        let mut cc = CCoeff::zero();
                        cc.add_mono(ma.mul(mb).mul(CMono::new(q, 0)));
                        (g, cc)
                    })
                    .collect();
                // contracted bracket pushed back to the original basis
                // (divide out the ihc -> ih unit change: one power of c)
                let mut got: BTreeMap<GeneratorId, CCoeff> = BTreeMap::new();
                for (cg, coeff) in Self::bracket(a, b) {
                    let (g, mono) = to_original(cg);
                    let e = got.entry(g).or_insert_with(CCoeff::zero);
                    for m in coeff.monomials() {
                        e.add_mono(m.mul(mono).mul(CMono::int(1, -1)));
                    }
                }
                got.retain(|_, v| !v.is_zero());
                if got != want {
                    bad.push((a, b));
                }
            }
        }
        bad
    }
}

/// Hard-coded c -> infinity target: Galilean (no central extension) plus
/// H_R(3) brackets, in units of i*hbar.
///
/// Kept independent of [`ContractedBasis::bracket`] on purpose: the limit is
/// a fixture to compare against, not something derived by the same code.
pub fn target_bracket(a: CGen, b: CGen) -> BTreeMap<CGen, Rational64> {
    use CGen::*;
    let mut out: BTreeMap<CGen, Rational64> = BTreeMap::new();
    let mut put = |g: CGen, n: i64| {
        if n != 0 {
            *out.entry(g).or_insert_with(Rational64::zero) += Rational64::from_integer(n);
        }
    };
    // normalized spatial rotation reference
    let jn = |i: u8, j: u8| -> Option<(CGen, i64)> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => Some((J(i, j), 1)),
            Greater => Some((J(j, i), -1)),
            Equal => None,
        }
    };
    let delta = |i: u8, j: u8| -> i64 { i64::from(i == j) };
    match (a, b) {
        (J(i, j), J(k, l)) => {
            // so(3): d_jl J_ik + d_ik J_jl - d_il J_jk - d_jk J_il
            for (coef, m, n) in [
                (delta(j, l), i, k),
                (delta(i, k), j, l),
                (-delta(i, l), j, k),
                (-delta(j, k), i, l),
            ] {
                if coef != 0 {
                    if let Some((g, s)) = jn(m, n) {
                        put(g, coef * s);
                    }
                }
            }
        }
        // vectors under rotations: d_ik V_j - d_jk V_i
        (J(i, j), K(k)) => {
            put(K(j), delta(i, k));
            put(K(i), -delta(j, k));
        }
        (K(k), J(i, j)) => {
            put(K(j), -delta(i, k));
            put(K(i), delta(j, k));
        }
        (J(i, j), P(k)) => {
            put(P(j), delta(i, k));
            put(P(i), -delta(j, k));
        }
        (P(k), J(i, j)) => {
            put(P(j), -delta(i, k));
            put(P(i), delta(j, k));
        }
        (J(i, j), Yc(k)) => {
            put(Yc(j), delta(i, k));
            put(Yc(i), -delta(j, k));
        }
        (Yc(k), J(i, j)) => {
            put(Yc(j), -delta(i, k));
            put(Yc(i), delta(j, k));
        }
        // Galilean sector: [K_i, H] = -P_i; boosts and momenta commute.
        (K(i), H) => put(P(i), -1),
        (H, K(i)) => put(P(i), 1),
        // H_R(3) sector: [Y_i, P_j] = d_ij M.
        (Yc(i), P(j)) => put(M, delta(i, j)),
        (P(j), Yc(i)) => put(M, -delta(i, j)),
        // extra nontrivial products of the full set
        (K(i), Yc(j)) => put(U, -delta(i, j)),
        (Yc(j), K(i)) => put(U, delta(i, j)),
        (U, H) => put(M, -1),
        (H, U) => put(M, 1),
        // everything else vanishes in the limit
        _ => {}
    }
    out
}

/// Per-pair outcome of the contraction sweep.
#[derive(Debug, Clone)]
pub struct PairDecay {
    pub a: CGen,
    pub b: CGen,
    /// Deviation from the target bracket at each swept c.
    pub deviations: Vec<f64>,
    /// True when the bracket matches the target identically (all c).
    pub exact: bool,
    /// Fitted power p of a deviation ~ c^{-p} decay (None when exact).
    pub fitted_power: Option<f64>,
    pub monotone: bool,
}

/// Convergence report of the contraction sweep.
#[derive(Debug, Clone)]
pub struct ContractionReport {
    pub cs: Vec<f64>,
    pub pairs: Vec<PairDecay>,
}

impl ContractionReport {
    pub fn all_monotone(&self) -> bool {
        self.pairs.iter().all(|p| p.monotone)
    }

    pub fn min_fitted_power(&self) -> Option<f64> {
        self.pairs
            .iter()
            .filter_map(|p| p.fitted_power)
            .min_by(|a, b| a.total_cmp(b))
    }

    pub fn failures(&self) -> Vec<&PairDecay> {
        self.pairs
            .iter()
            .filter(|p| !p.monotone || p.fitted_power.is_some_and(|f| f < 1.0))
            .collect()
    }
}

/// Sweep an increasing sequence of c values and report, for every generator
/// pair, the deviation from the Galilean/H_R(3) target and the fitted power
/// of 1/c.  Deviations must decay monotonically with fitted power >= 1;
/// non-monotone decay flags a structure-table bug.
pub fn contraction_limit_check(cs: &[f64]) -> ContractionReport {
    assert!(cs.len() >= 2, "need at least two c values");
    assert!(
        cs.windows(2).all(|w| w[1] > w[0] && w[0] > 0.0),
        "c sequence must be positive and strictly increasing"
    );
    let gens = CGen::all();
    let mut pairs = Vec::new();
    for &a in &gens {
        for &b in &gens {
            let cb = ContractedBasis::bracket(a, b);
            let target = target_bracket(a, b);
            // union of generators appearing on either side
            let mut support: Vec<CGen> = cb.keys().copied().collect();
            for g in target.keys() {
                if !support.contains(g) {
                    support.push(*g);
                }
            }
            let deviations: Vec<f64> = cs
                .iter()
                .map(|&c| {
                    support
                        .iter()
                        .map(|g| {
                            let got = cb.get(g).map_or(0.0, |cc| cc.eval(c));
                            let want = target.get(g).map_or(0.0, |q| q.to_f64().unwrap());
                            (got - want).abs()
                        })
                        .sum()
                })
                .collect();
            let exact = deviations.iter().all(|&d| d == 0.0);
            let monotone = exact
                || deviations
                    .windows(2)
                    .all(|w| w[1] < w[0] || (w[0] == 0.0 && w[1] == 0.0));
            let fitted_power = if exact {
                None
            } else {
                Some(fit_inverse_power(cs, &deviations))
            };
            pairs.push(PairDecay {
                a,
                b,
                deviations,
                exact,
                fitted_power,
                monotone,
            });
        }
    }
    ContractionReport {
        cs: cs.to_vec(),
        pairs,
    }
}

/// Least-squares slope of log(dev) against log(1/c).
fn fit_inverse_power(cs: &[f64], devs: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = cs
        .iter()
        .zip(devs)
        .filter(|(_, &d)| d > 0.0)
        .map(|(&c, &d)| (-c.ln(), d.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::INFINITY;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn u_h_bracket_is_central_for_every_c() {
        // [U, H] = -ih M independent of c
        let cb = ContractedBasis::bracket(CGen::U, CGen::H);
        assert_eq!(cb.len(), 1);
        assert_eq!(cb[&CGen::M].constant_part(), Some(q(-1)));
    }

    #[test]
    fn boost_y_bracket() {
        // [K_i, Y_j] = -ih d_ij U
        let cb = ContractedBasis::bracket(CGen::K(1), CGen::Yc(1));
        assert_eq!(cb[&CGen::U].constant_part(), Some(q(-1)));
        assert!(ContractedBasis::bracket(CGen::K(1), CGen::Yc(2)).is_empty());
    }

    #[test]
    fn residual_boost_momentum_bracket_decays_as_c2() {
        // [K_i, P_i] = -ih H / c^2 exactly
        let cb = ContractedBasis::bracket(CGen::K(1), CGen::P(1));
        assert_eq!(cb.len(), 1);
        let coeff = &cb[&CGen::H];
        assert_eq!(coeff.monomials(), &[CMono::int(-1, -2)]);
    }

    #[test]
    fn galilean_boosts_commute_in_limit() {
        let cb = ContractedBasis::bracket(CGen::K(1), CGen::K(2));
        // -ih J_12 / c^2 at finite c
        assert_eq!(cb[&CGen::J(1, 2)].monomials(), &[CMono::int(-1, -2)]);
        assert!(target_bracket(CGen::K(1), CGen::K(2)).is_empty());
    }

    #[test]
    fn heisenberg_sector_is_exact() {
        // [Y_i, P_j] = ih d_ij M at every finite c already
        let cb = ContractedBasis::bracket(CGen::Yc(2), CGen::P(2));
        assert_eq!(cb[&CGen::M].constant_part(), Some(q(1)));
    }

    #[test]
    fn roundtrip_reproduces_original_table() {
        assert!(ContractedBasis::roundtrip_failures().is_empty());
    }

    #[test]
    fn sweep_decays_with_power_at_least_one() {
        let cs: Vec<f64> = (1..=6).map(|k| 10f64.powi(k)).collect();
        let report = contraction_limit_check(&cs);
        assert!(report.all_monotone());
        if let Some(p) = report.min_fitted_power() {
            assert!(p >= 1.0, "min fitted power {p}");
        }
        assert!(report.failures().is_empty());
    }
}
