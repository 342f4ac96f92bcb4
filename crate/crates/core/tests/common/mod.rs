//! Independent reference implementations used to check the library.
//! Nothing here calls into the crate's linear algebra.

#![allow(dead_code)]

use ncrat::{Complex64, ComplexMatrix};

pub type Grid = Vec<Vec<Complex64>>;

pub fn grid(m: &ComplexMatrix) -> Grid {
    m.rows()
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// ascending.
pub fn jacobi_symmetric(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        let scale: f64 = (0..n).map(|i| a[i][i] * a[i][i]).sum::<f64>() + off;
        if off <= 1e-30 * scale.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Eigenvalues of a Hermitian matrix through the real embedding
/// `[[Re, -Im], [Im, Re]]`, which doubles every eigenvalue.
pub fn hermitian_eigenvalues(h: &Grid) -> Vec<f64> {
    let n = h.len();
    let real = (0..2 * n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    let z = h[i % n][j % n];
                    match (i < n, j < n) {
                        (true, true) | (false, false) => z.re,
                        (true, false) => -z.im,
                        (false, true) => z.im,
                    }
                })
                .collect()
        })
        .collect();
    jacobi_symmetric(real).into_iter().step_by(2).collect()
}

/// Singular values, descending, from the eigenvalues of `[[0, A], [A*, 0]]`.
pub fn singular_values(a: &Grid) -> Vec<f64> {
    let n = a.len();
    let dilation: Grid = (0..2 * n)
        .map(|i| {
            (0..2 * n)
                .map(|j| match (i < n, j < n) {
                    (true, false) => a[i][j - n],
                    (false, true) => a[j][i - n].conj(),
                    _ => Complex64::new(0.0, 0.0),
                })
                .collect()
        })
        .collect();
    let mut ev = hermitian_eigenvalues(&dilation);
    ev.reverse();
    ev.truncate(n);
    ev.into_iter().map(|x| x.max(0.0)).collect()
}

pub fn operator_norm(a: &Grid) -> f64 {
    singular_values(a)[0]
}

/// Gauss-Jordan elimination with partial pivoting.
pub fn inverse(a: &Grid) -> Option<Grid> {
    let n = a.len();
    let mut m: Grid = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&x, &y| m[x][col].norm().total_cmp(&m[y][col].norm()))?;
        if m[pivot][col].norm() == 0.0 {
            return None;
        }
        m.swap(col, pivot);
        let p = m[col][col];
        for v in m[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                if f != Complex64::new(0.0, 0.0) {
                    for c in 0..2 * n {
                        let sub = f * m[col][c];
                        m[r][c] -= sub;
                    }
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn matmul(a: &Grid, b: &Grid) -> Grid {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn frobenius_distance(a: &Grid, b: &Grid) -> f64 {
    a.iter().zip(b).flat_map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x - y).norm_sqr())).sum::<f64>().sqrt()
}

/// `∫ f dμ` for the semicircle law on `[-2, 2]`, via `x = 2 cos θ` and the
/// trapezoid rule, which converges geometrically for analytic `f`.
pub fn semicircle_integral(f: impl Fn(f64) -> Complex64, nodes: usize) -> Complex64 {
    let h = std::f64::consts::PI / nodes as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..nodes {
        let theta = k as f64 * h;
        acc += f(2.0 * theta.cos()) * theta.sin().powi(2);
    }
    acc * h * 2.0 / std::f64::consts::PI
}

/// `G(z) = ∫ 1/(z - x) dμ(x)` by quadrature.
pub fn stieltjes_quadrature(z: Complex64) -> Complex64 {
    semicircle_integral(|x| 1.0 / (z - x), 20_000)
}

/// Number of Dyck paths of length `2k`, counted by dynamic programming.
pub fn catalan(k: usize) -> u64 {
    let mut ways = vec![0u64; 2 * k + 2];
    ways[0] = 1;
    for _step in 0..2 * k {
        let mut next = vec![0u64; 2 * k + 2];
        for h in 0..=2 * k {
            if ways[h] == 0 {
                continue;
            }
            next[h + 1] += ways[h];
            if h > 0 {
                next[h - 1] += ways[h];
            }
        }
        ways = next;
    }
    ways[0]
}

/// Frozen oracle values, each re-derived by a test in `oracles.rs`.
pub mod frozen {
    /// `G(3)` for the semicircle law.
    pub const G3: f64 = 0.3819660112501051;
}
