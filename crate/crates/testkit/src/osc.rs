//! Untruncated ladder-operator oracle on occupation dictionaries.
//!
//! States are maps from four-mode occupation vectors to complex amplitudes;
//! operators act symbolically with exact sqrt(n) factors and no truncation,
//! so commutators computed here are exact on any finite state.  The mode-0
//! momentum carries the flipped sign that makes [X_0, P_0] = -i hbar.

use num_complex::Complex64;
use std::collections::BTreeMap;

pub type OscState = BTreeMap<[u32; 4], Complex64>;

pub fn basis_state(occ: [u32; 4]) -> OscState {
    let mut s = OscState::new();
    s.insert(occ, Complex64::new(1.0, 0.0));
    s
}

fn raise(mode: usize, state: &OscState) -> OscState {
    let mut out = OscState::new();
    for (occ, &amp) in state {
        let mut o = *occ;
        let n = o[mode] as f64;
        o[mode] += 1;
        *out.entry(o).or_insert(Complex64::ZERO) += amp * (n + 1.0).sqrt();
    }
    out
}

fn lower(mode: usize, state: &OscState) -> OscState {
    let mut out = OscState::new();
    for (occ, &amp) in state {
        if occ[mode] == 0 {
            continue;
        }
        let mut o = *occ;
        let n = o[mode] as f64;
        o[mode] -= 1;
        *out.entry(o).or_insert(Complex64::ZERO) += amp * n.sqrt();
    }
    out
}

pub fn add_scaled(a: &OscState, b: &OscState, w: Complex64) -> OscState {
    let mut out = a.clone();
    for (occ, &amp) in b {
        let e = out.entry(*occ).or_insert(Complex64::ZERO);
        *e += w * amp;
    }
    out.retain(|_, v| v.norm() > 0.0);
    out
}

/// X_mu = sqrt(hbar/2) (a + a^+) on mode mu.
pub fn apply_x(mu: usize, state: &OscState, hbar: f64) -> OscState {
    let k = Complex64::new((hbar / 2.0).sqrt(), 0.0);
    let mut out = OscState::new();
    for (occ, amp) in add_scaled(&lower(mu, state), &raise(mu, state), Complex64::new(1.0, 0.0)) {
        out.insert(occ, amp * k);
    }
    out
}

/// P_mu = +- i sqrt(hbar/2) (a^+ - a); minus sign on mode 0.
pub fn apply_p(mu: usize, state: &OscState, hbar: f64) -> OscState {
    let sign = if mu == 0 { -1.0 } else { 1.0 };
    let k = Complex64::new(0.0, sign * (hbar / 2.0).sqrt());
    let diff = add_scaled(&raise(mu, state), &lower(mu, state), Complex64::new(-1.0, 0.0));
    diff.into_iter().map(|(occ, amp)| (occ, amp * k)).collect()
}

/// [X_mu, P_nu] applied to a state, exactly.
pub fn commutator_xp(mu: usize, nu: usize, state: &OscState, hbar: f64) -> OscState {
    let xp = apply_x(mu, &apply_p(nu, state, hbar), hbar);
    let px = apply_p(nu, &apply_x(mu, state, hbar), hbar);
    add_scaled(&xp, &px, Complex64::new(-1.0, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_pair_on_vacuum() {
        let vac = basis_state([0; 4]);
        // [X_1, P_1] |0> = i hbar |0>
        let c = commutator_xp(1, 1, &vac, 1.0);
        assert_eq!(c.len(), 1);
        let amp = c[&[0, 0, 0, 0]];
        assert!((amp - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        // [X_0, P_0] |0> = -i hbar |0>
        let c0 = commutator_xp(0, 0, &vac, 1.0);
        assert!((c0[&[0, 0, 0, 0]] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        // off-diagonal vanishes
        assert!(commutator_xp(1, 2, &vac, 1.0).is_empty());
    }
}
