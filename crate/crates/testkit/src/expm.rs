//! Dense matrix exponential by scaling-and-squaring with a Taylor series.

/// Square dense matrix as nested Vecs (row major).
pub type Mat = Vec<Vec<f64>>;

pub fn identity(n: usize) -> Mat {
    let mut m = vec![vec![0.0; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn matvec(a: &Mat, x: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum())
        .collect()
}

fn inf_norm(a: &Mat) -> f64 {
    a.iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// exp(A) to near machine precision for modest-norm matrices.
pub fn expm(a: &Mat) -> Mat {
    let n = a.len();
    let norm = inf_norm(a);
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let scaled: Mat = a
        .iter()
        .map(|row| row.iter().map(|v| v * scale).collect())
        .collect();
    // Taylor: sum A^k / k!
    let mut result = identity(n);
    let mut term = identity(n);
    for k in 1..=24 {
        term = matmul(&term, &scaled);
        let inv = 1.0 / factorial(k);
        for i in 0..n {
            for j in 0..n {
                result[i][j] += term[i][j] * inv;
            }
        }
    }
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    result
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|v| v as f64).product()
}
