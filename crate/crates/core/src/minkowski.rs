//! Minkowski four-vector helpers, metric eta = diag{-1,+1,+1,+1}.
//!
//! Index convention: all `[f64; 4]` values are contravariant (upper-index)
//! components unless a function name says otherwise.  `lower` applies eta.

/// Spacetime dimension.
pub const DIM: usize = 4;

/// Diagonal metric component eta_{mu mu}.
#[inline]
pub fn eta(mu: usize) -> f64 {
    if mu == 0 {
        -1.0
    } else {
        1.0
    }
}

/// Contravariant four-vector.
pub type FourVec = [f64; 4];

/// 4x4 real matrix acting on four-vectors (row-major).
pub type Mat4 = [[f64; 4]; 4];

/// Minkowski inner product a.b = eta_{mu nu} a^mu b^nu.
#[inline]
pub fn dot(a: &FourVec, b: &FourVec) -> f64 {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

/// Lower the index: v_mu = eta_{mu nu} v^nu.
#[inline]
pub fn lower(v: &FourVec) -> FourVec {
    [-v[0], v[1], v[2], v[3]]
}

pub fn add(a: &FourVec, b: &FourVec) -> FourVec {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

pub fn sub(a: &FourVec, b: &FourVec) -> FourVec {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

pub fn scale(s: f64, v: &FourVec) -> FourVec {
    [s * v[0], s * v[1], s * v[2], s * v[3]]
}

/// Matrix-vector product (m v)^mu = m^mu_nu v^nu.
pub fn mat_apply(m: &Mat4, v: &FourVec) -> FourVec {
    let mut out = [0.0; 4];
    for (mu, row) in m.iter().enumerate() {
        out[mu] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3];
    }
    out
}

pub fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut s = 0.0;
            for (k, bk) in b.iter().enumerate() {
                s += a[i][k] * bk[j];
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn identity4() -> Mat4 {
    let mut m = [[0.0; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

/// Pure boost with velocity beta (|beta| < 1, units of c).
///
/// Maps a four-vector at rest in the primed frame to the unprimed one:
/// x'^0 = gamma (x^0 - beta.x), x'^i = x^i + [(gamma-1) b.x/|b|^2 - gamma x^0] beta^i.
pub fn boost_matrix(beta: [f64; 3]) -> Mat4 {
    let b2 = beta[0] * beta[0] + beta[1] * beta[1] + beta[2] * beta[2];
    if b2 == 0.0 {
        return identity4();
    }
    assert!(b2 < 1.0, "boost velocity must satisfy |beta| < 1");
    let gamma = 1.0 / (1.0 - b2).sqrt();
    let mut m = identity4();
    m[0][0] = gamma;
    for i in 0..3 {
        m[0][i + 1] = -gamma * beta[i];
        m[i + 1][0] = -gamma * beta[i];
        for j in 0..3 {
            m[i + 1][j + 1] = kron3(i, j) + (gamma - 1.0) * beta[i] * beta[j] / b2;
        }
    }
    m
}

#[inline]
fn kron3(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

/// Totally antisymmetric 3d symbol eps_{ijk} for i,j,k in 0..3.
#[inline]
pub fn eps3(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Check that a matrix preserves eta: L^T eta L = eta, within `tol`.
pub fn is_lorentz(m: &Mat4, tol: f64) -> bool {
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            let mut s = 0.0;
            for mu in 0..4 {
                s += m[mu][a] * eta(mu) * m[mu][b];
            }
            let want = if a == b { eta(a) } else { 0.0 };
            worst = worst.max((s - want).abs());
        }
    }
    worst <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_signature() {
        assert_eq!(dot(&[1.0, 0.0, 0.0, 0.0], &[1.0, 0.0, 0.0, 0.0]), -1.0);
        assert_eq!(dot(&[0.0, 1.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0]), 1.0);
    }

    #[test]
    fn boost_is_lorentz_and_kills_time_component() {
        let r = [0.5, 1.0, 0.0, 0.0];
        // r is spacelike; boosting along r_hat with beta = r0/|r| zeroes r'0
        let m = boost_matrix([0.5, 0.0, 0.0]);
        assert!(is_lorentz(&m, 1e-12));
        let r2 = mat_apply(&m, &r);
        assert!(r2[0].abs() < 1e-12, "r'0 = {}", r2[0]);
        // Minkowski norm preserved
        assert!((dot(&r2, &r2) - dot(&r, &r)).abs() < 1e-12);
    }

    #[test]
    fn eps3_cyclic() {
        assert_eq!(eps3(0, 1, 2), 1.0);
        assert_eq!(eps3(1, 0, 2), -1.0);
        assert_eq!(eps3(0, 0, 2), 0.0);
    }
}
