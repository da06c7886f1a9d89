//! Exact structure constants of H_R(1,3).
//!
//! Generators: six Lorentz rotations J'_{mu nu} (stored with mu < nu), four
//! momentum-translation generators Y_mu, four position-translation generators
//! E_mu, and the central charge M.  Brackets, with eta = diag{-1,1,1,1} and
//! every coefficient an exact rational multiple of the symbolic unit i*hbar*c:
//!
//! ```text
//! [J'_{mu nu}, J'_{rho sigma}] = ihc (eta_{nu sigma} J'_{mu rho} + eta_{mu rho} J'_{nu sigma}
//!                                     - eta_{mu sigma} J'_{nu rho} - eta_{nu rho} J'_{mu sigma})
//! [J'_{mu nu}, Y_rho]          = ihc (eta_{mu rho} Y_nu - eta_{nu rho} Y_mu)
//! [J'_{mu nu}, E_rho]          = ihc (eta_{mu rho} E_nu - eta_{nu rho} E_mu)
//! [Y_mu, E_nu]                 = ihc eta_{mu nu} M
//! ```
//!
//! [Y,Y], [E,E] and [M, anything] vanish (Heisenberg-Weyl extension).
//! Numerical values of hbar and c are injected only at evaluation time; the
//! table itself is exact, so antisymmetry and the Jacobi identity are checked
//! with zero tolerance.

pub mod contraction;

use num_rational::Rational64;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Abstract basis element of H_R(1,3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorId {
    /// Lorentz rotation J'_{mu nu}, stored with mu < nu.
    JPrime(u8, u8),
    /// Momentum-translation generator Y_mu.
    Y(u8),
    /// Position-translation generator E_mu.
    E(u8),
    /// Central charge.
    M,
}

impl GeneratorId {
    /// All 15 generators in a fixed canonical order.
    pub fn all() -> Vec<GeneratorId> {
        let mut v = Vec::with_capacity(15);
        for mu in 0..4u8 {
            for nu in (mu + 1)..4 {
                v.push(GeneratorId::JPrime(mu, nu));
            }
        }
        for mu in 0..4u8 {
            v.push(GeneratorId::Y(mu));
        }
        for mu in 0..4u8 {
            v.push(GeneratorId::E(mu));
        }
        v.push(GeneratorId::M);
        v
    }

    pub fn is_valid(&self) -> bool {
        match *self {
            GeneratorId::JPrime(mu, nu) => mu < nu && nu < 4,
            GeneratorId::Y(mu) | GeneratorId::E(mu) => mu < 4,
            GeneratorId::M => true,
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GeneratorId::JPrime(mu, nu) => write!(f, "J'({mu},{nu})"),
            GeneratorId::Y(mu) => write!(f, "Y({mu})"),
            GeneratorId::E(mu) => write!(f, "E({mu})"),
            GeneratorId::M => write!(f, "M"),
        }
    }
}

/// Metric component as an exact rational.
#[inline]
fn eta_q(mu: u8, nu: u8) -> Rational64 {
    if mu != nu {
        Rational64::zero()
    } else if mu == 0 {
        Rational64::from_integer(-1)
    } else {
        Rational64::from_integer(1)
    }
}

/// Normalize an antisymmetric J' reference: J'_{nu mu} = -J'_{mu nu}.
///
/// Returns `None` for mu == nu (the generator vanishes identically).
#[inline]
fn jp(mu: u8, nu: u8) -> Option<(GeneratorId, i64)> {
    use std::cmp::Ordering::*;
    match mu.cmp(&nu) {
        Less => Some((GeneratorId::JPrime(mu, nu), 1)),
        Greater => Some((GeneratorId::JPrime(nu, mu), -1)),
        Equal => None,
    }
}

/// Linear combination of generators with exact rational coefficients.
///
/// The overall unit (i*hbar*c for a single bracket, (i*hbar*c)^2 for a Jacobi
/// residual) is carried by context, not stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinComb(BTreeMap<GeneratorId, Rational64>);

impl LinComb {
    pub fn zero() -> Self {
        LinComb(BTreeMap::new())
    }

    pub fn term(g: GeneratorId, q: Rational64) -> Self {
        let mut lc = LinComb::zero();
        lc.add_term(g, q);
        lc
    }

    pub fn add_term(&mut self, g: GeneratorId, q: Rational64) {
        if q.is_zero() {
            return;
        }
        let entry = self.0.entry(g).or_insert_with(Rational64::zero);
        *entry += q;
        if entry.is_zero() {
            self.0.remove(&g);
        }
    }

    pub fn add(&mut self, other: &LinComb) {
        for (&g, &q) in other.iter() {
            self.add_term(g, q);
        }
    }

    pub fn scaled(&self, s: Rational64) -> LinComb {
        let mut out = LinComb::zero();
        for (&g, &q) in self.iter() {
            out.add_term(g, q * s);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GeneratorId, &Rational64)> {
        self.0.iter()
    }

    pub fn coeff(&self, g: GeneratorId) -> Rational64 {
        self.0.get(&g).copied().unwrap_or_else(Rational64::zero)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (g, q)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({q}) {g}")?;
        }
        Ok(())
    }
}

/// Exact bracket [a, b] in units of i*hbar*c.
///
/// Total on valid generator ids; an empty combination means zero.
pub fn bracket(a: GeneratorId, b: GeneratorId) -> LinComb {
    use GeneratorId::*;
    debug_assert!(a.is_valid() && b.is_valid());
    let mut out = LinComb::zero();
    match (a, b) {
        (JPrime(mu, nu), JPrime(rho, sigma)) => {
            // eta_{nu sigma} J'_{mu rho} + eta_{mu rho} J'_{nu sigma}
            //   - eta_{mu sigma} J'_{nu rho} - eta_{nu rho} J'_{mu sigma}
            let terms = [
                (eta_q(nu, sigma), mu, rho),
                (eta_q(mu, rho), nu, sigma),
                (-eta_q(mu, sigma), nu, rho),
                (-eta_q(nu, rho), mu, sigma),
            ];
            for (coef, i, j) in terms {
                if coef.is_zero() {
                    continue;
                }
                if let Some((g, sign)) = jp(i, j) {
                    out.add_term(g, coef * Rational64::from_integer(sign));
                }
            }
        }
        (JPrime(mu, nu), Y(rho)) => {
            out.add_term(Y(nu), eta_q(mu, rho));
            out.add_term(Y(mu), -eta_q(nu, rho));
        }
        (Y(rho), JPrime(mu, nu)) => {
            out.add_term(Y(nu), -eta_q(mu, rho));
            out.add_term(Y(mu), eta_q(nu, rho));
        }
        (JPrime(mu, nu), E(rho)) => {
            out.add_term(E(nu), eta_q(mu, rho));
            out.add_term(E(mu), -eta_q(nu, rho));
        }
        (E(rho), JPrime(mu, nu)) => {
            out.add_term(E(nu), -eta_q(mu, rho));
            out.add_term(E(mu), eta_q(nu, rho));
        }
        (Y(mu), E(nu)) => {
            out.add_term(M, eta_q(mu, nu));
        }
        (E(nu), Y(mu)) => {
            out.add_term(M, -eta_q(mu, nu));
        }
        // Y-Y, E-E and anything with the central M vanish.
        (Y(_), Y(_)) | (E(_), E(_)) | (M, _) | (_, M) => {}
    }
    out
}

/// Bracket of a linear combination with a single generator, by linearity.
pub fn bracket_comb(lhs: &LinComb, g: GeneratorId) -> LinComb {
    let mut out = LinComb::zero();
    for (&gi, &q) in lhs.iter() {
        out.add(&bracket(gi, g).scaled(q));
    }
    out
}

/// Jacobi residual [[a,b],c] + [[b,c],a] + [[c,a],b] in units of (i*hbar*c)^2.
///
/// Exactly empty for every triple of a Lie algebra; any nonzero entry flags a
/// structure-table bug.
pub fn jacobi_residual(a: GeneratorId, b: GeneratorId, c: GeneratorId) -> LinComb {
    let mut out = LinComb::zero();
    out.add(&bracket_comb(&bracket(a, b), c));
    out.add(&bracket_comb(&bracket(b, c), a));
    out.add(&bracket_comb(&bracket(c, a), b));
    out
}

/// Full bracket table over all ordered generator pairs.
///
/// Immutable after construction; safe for concurrent reads.
#[derive(Debug, Clone)]
pub struct StructureTable {
    entries: BTreeMap<(GeneratorId, GeneratorId), LinComb>,
}

impl StructureTable {
    /// Build the H_R(1,3) table from the bracket rules.
    pub fn standard() -> Self {
        let gens = GeneratorId::all();
        let mut entries = BTreeMap::new();
        for &a in &gens {
            for &b in &gens {
                entries.insert((a, b), bracket(a, b));
            }
        }
        StructureTable { entries }
    }

    pub fn entry(&self, a: GeneratorId, b: GeneratorId) -> &LinComb {
        &self.entries[&(a, b)]
    }

    /// entries(a,b) + entries(b,a) must cancel exactly for every pair.
    pub fn antisymmetry_failures(&self) -> Vec<(GeneratorId, GeneratorId)> {
        let gens = GeneratorId::all();
        let mut bad = Vec::new();
        for &a in &gens {
            for &b in &gens {
                let mut s = self.entry(a, b).clone();
                s.add(self.entry(b, a));
                if !s.is_zero() {
                    bad.push((a, b));
                }
            }
        }
        bad
    }

    /// Exhaustive Jacobi sweep over all unordered triples.
    ///
    /// Returns (number of triples checked, failing triples).
    pub fn jacobi_sweep(&self) -> (usize, Vec<(GeneratorId, GeneratorId, GeneratorId)>) {
        let gens = GeneratorId::all();
        let n = gens.len();
        let mut checked = 0;
        let mut bad = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    checked += 1;
                    if !jacobi_residual(gens[i], gens[j], gens[k]).is_zero() {
                        bad.push((gens[i], gens[j], gens[k]));
                    }
                }
            }
        }
        (checked, bad)
    }

    /// M must commute with all 15 generators.
    pub fn m_is_central(&self) -> bool {
        GeneratorId::all()
            .into_iter()
            .all(|g| self.entry(GeneratorId::M, g).is_zero())
    }

    /// The span of {J', E} must close under the bracket (Poincare subalgebra).
    pub fn poincare_closes(&self) -> bool {
        let sub: Vec<GeneratorId> = GeneratorId::all()
            .into_iter()
            .filter(|g| matches!(g, GeneratorId::JPrime(_, _) | GeneratorId::E(_)))
            .collect();
        for &a in &sub {
            for &b in &sub {
                let lc = self.entry(a, b);
                if lc
                    .iter()
                    .any(|(g, _)| matches!(g, GeneratorId::Y(_) | GeneratorId::M))
                {
                    return false;
                }
            }
        }
        true
    }
}
