//! Real-symmetric eigenvalues: Householder reduction, then implicit QL.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;
const MAX_ITER_PER_EIGENVALUE: usize = 50;

/// Symmetric matrix stored as its packed lower triangle, row by row.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![0.0; dim * (dim + 1) / 2] }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = Vec::with_capacity(dim * (dim + 1) / 2);
        for i in 0..dim {
            for j in 0..=i {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    /// From a row-major square matrix; only the lower triangle is read.
    pub fn from_row_major(dim: usize, values: &[f64]) -> Result<Self> {
        if values.len() != dim * dim {
            return Err(Error::invalid(format!("expected {} entries, got {}", dim * dim, values.len())));
        }
        Ok(Self::from_fn(dim, |i, j| values[i * dim + j]))
    }

    /// `XᵀX` for a row-major `rows × cols` matrix `X`.
    pub fn gram(rows: usize, cols: usize, x: &[f64]) -> Self {
        debug_assert_eq!(x.len(), rows * cols);
        let mut out = Self::zeros(cols);
        for r in 0..rows {
            let row = &x[r * cols..(r + 1) * cols];
            let mut k = 0;
            for i in 0..cols {
                let xi = row[i];
                for &xj in &row[..=i] {
                    out.entries[k] += xi * xj;
                    k += 1;
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn index(i: usize, j: usize) -> usize {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        i * (i + 1) / 2 + j
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[Self::index(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.entries[Self::index(i, j)] = value;
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_sq(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                s += self.get(i, j).powi(2);
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TridiagonalMatrix {
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() || off_diagonal.len() + 1 != diagonal.len() {
            return Err(Error::invalid(format!(
                "tridiagonal matrix needs n >= 1 diagonal and n - 1 off-diagonal entries, got {} and {}",
                diagonal.len(),
                off_diagonal.len()
            )));
        }
        Ok(Self { diagonal, off_diagonal })
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }
}

/// Orthogonal reduction to tridiagonal form (eigenvectors are not formed).
pub fn tridiagonalize(a: &SymmetricMatrix) -> TridiagonalMatrix {
    let n = a.dim();
    if n == 0 {
        return TridiagonalMatrix { diagonal: Vec::new(), off_diagonal: Vec::new() };
    }
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            m[i * n + j] = a.get(i, j);
        }
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];

    for i in (1..n).rev() {
        let l = i - 1;
        if l == 0 {
            e[i] = m[i * n];
            continue;
        }
        let scale: f64 = (0..=l).map(|k| m[i * n + k].abs()).sum();
        if scale == 0.0 {
            e[i] = m[i * n + l];
            continue;
        }
        let mut h = 0.0;
        for k in 0..=l {
            m[i * n + k] /= scale;
            h += m[i * n + k] * m[i * n + k];
        }
        let f = m[i * n + l];
        let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
        e[i] = scale * g;
        h -= f * g;
        m[i * n + l] = f - g;
        let mut f = 0.0;
        for j in 0..=l {
            let mut g = 0.0;
            for k in 0..=j {
                g += m[j * n + k] * m[i * n + k];
            }
            for k in j + 1..=l {
                g += m[k * n + j] * m[i * n + k];
            }
            e[j] = g / h;
            f += e[j] * m[i * n + j];
        }
        let hh = f / (h + h);
        for j in 0..=l {
            let f = m[i * n + j];
            let g = e[j] - hh * f;
            e[j] = g;
            for k in 0..=j {
                m[j * n + k] -= f * e[k] + g * m[i * n + k];
            }
        }
    }
    for i in 0..n {
        d[i] = m[i * n + i];
    }
    TridiagonalMatrix { diagonal: d, off_diagonal: e[1..].to_vec() }
}

/// All eigenvalues of `t`, ascending.
pub fn eigenvalues_tridiag(t: &TridiagonalMatrix, tol: f64) -> Result<Vec<f64>> {
    let n = t.dim();
    if t.off_diagonal.len() + 1 != n.max(1) {
        return Err(Error::invalid("malformed tridiagonal matrix"));
    }
    if !(tol >= 0.0) {
        return Err(Error::invalid(format!("tolerance must be >= 0, got {tol}")));
    }
    let tol = tol.max(f64::EPSILON);
    let mut d = t.diagonal.clone();
    let mut e = t.off_diagonal.clone();
    e.push(0.0);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= tol * dd || dd + e[m].abs() == dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iter == MAX_ITER_PER_EIGENVALUE {
                return Err(Error::IterationLimit { index: l });
            }
            iter += 1;

            // Wilkinson shift from the leading 2×2 block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn symmetric_eigenvalues(a: &SymmetricMatrix, tol: f64) -> Result<Vec<f64>> {
    if a.dim() == 0 {
        return Ok(Vec::new());
    }
    eigenvalues_tridiag(&tridiagonalize(a), tol)
}
