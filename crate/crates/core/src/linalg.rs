//! Small dense Hermitian matrices (dimension 2 or 4) and their spectra.
//!
//! Eigenvalues of 2×2 matrices use the closed form; 4×4 matrices are
//! diagonalized with cyclic complex Jacobi rotations, which keeps every
//! eigenvalue real by construction.

use num_complex::Complex64;

use crate::error::{DiscordError, Result};

/// Maximum allowed |m_ij - conj(m_ji)| for a matrix accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

const MAX_DIM: usize = 4;
const MAX_SWEEPS: usize = 64;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// A Hermitian matrix of dimension 2 or 4, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    entries: [C64; MAX_DIM * MAX_DIM],
}

impl HermitianMatrix {
    /// Builds a matrix from `dim * dim` row-major entries.
    ///
    /// The strictly lower triangle is overwritten with the conjugate of the
    /// upper triangle, and the diagonal's imaginary part is dropped, after
    /// checking both lie within [`HERMITIAN_TOL`].
    pub fn new(dim: usize, entries: &[C64]) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(DiscordError::BadShape(format!("dimension {dim} (expected 2 or 4)")));
        }
        if entries.len() != dim * dim {
            return Err(DiscordError::BadShape(format!(
                "{} entries for a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        let deviation = hermiticity_deviation(dim, entries);
        if !(deviation <= HERMITIAN_TOL) {
            return Err(DiscordError::NotHermitian { deviation });
        }
        let mut m = Self { dim, entries: [ZERO; MAX_DIM * MAX_DIM] };
        for i in 0..dim {
            m.entries[i * MAX_DIM + i] = C64::new(entries[i * dim + i].re, 0.0);
            for j in (i + 1)..dim {
                let z = entries[i * dim + j];
                m.entries[i * MAX_DIM + j] = z;
                m.entries[j * MAX_DIM + i] = z.conj();
            }
        }
        Ok(m)
    }

    pub fn from_rows4(rows: &[[C64; 4]; 4]) -> Result<Self> {
        let flat: Vec<C64> = rows.iter().flatten().copied().collect();
        Self::new(4, &flat)
    }

    pub fn from_rows2(rows: &[[C64; 2]; 2]) -> Result<Self> {
        let flat: Vec<C64> = rows.iter().flatten().copied().collect();
        Self::new(2, &flat)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::real_diagonal(&vec![1.0; dim])
    }

    pub fn real_diagonal(diag: &[f64]) -> Result<Self> {
        let dim = diag.len();
        let mut flat = vec![ZERO; dim * dim];
        for (i, d) in diag.iter().enumerate() {
            flat[i * dim + i] = C64::new(*d, 0.0);
        }
        Self::new(dim, &flat)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        debug_assert!(i < self.dim && j < self.dim);
        self.entries[i * MAX_DIM + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = *self;
        for z in out.entries.iter_mut() {
            *z *= factor;
        }
        out
    }

    /// Row-major copy of the entries.
    pub fn to_vec(&self) -> Vec<C64> {
        (0..self.dim)
            .flat_map(|i| (0..self.dim).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.to_vec()
            .iter()
            .zip(other.to_vec())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// max_{i,j} |m_ij − conj(m_ji)| over a row-major `dim × dim` slice.
pub fn hermiticity_deviation(dim: usize, entries: &[C64]) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..dim {
        for j in i..dim {
            let d = (entries[i * dim + j] - entries[j * dim + i].conj()).norm();
            dev = if d.is_nan() { f64::NAN } else { dev.max(d) };
        }
    }
    dev
}

/// Eigen-decomposition with eigenvalues in descending order; `vectors[k]`
/// is the unit eigenvector for `values[k]`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<C64>>,
}

impl HermitianEigen {
    /// Rebuilds V Λ V† as a row-major vector.
    pub fn reconstruct(&self) -> Vec<C64> {
        let n = self.values.len();
        let mut out = vec![ZERO; n * n];
        for (k, lambda) in self.values.iter().enumerate() {
            let v = &self.vectors[k];
            for i in 0..n {
                for j in 0..n {
                    out[i * n + j] += v[i] * v[j].conj() * *lambda;
                }
            }
        }
        out
    }
}

/// Real eigenvalues of `m`, sorted in descending order.
pub fn hermitian_eigenvalues(m: &HermitianMatrix) -> Vec<f64> {
    match m.dim {
        2 => {
            let a = m.get(0, 0).re;
            let d = m.get(1, 1).re;
            let z = m.get(0, 1);
            let mean = 0.5 * (a + d);
            let radius = (0.5 * (a - d)).hypot(z.norm());
            vec![mean + radius, mean - radius]
        }
        _ => hermitian_eigen(m).values,
    }
}

/// Full eigen-decomposition by cyclic Jacobi rotations.
pub fn hermitian_eigen(m: &HermitianMatrix) -> HermitianEigen {
    let n = m.dim;
    let mut a = [[ZERO; MAX_DIM]; MAX_DIM];
    let mut v = [[ZERO; MAX_DIM]; MAX_DIM];
    for i in 0..n {
        v[i][i] = ONE;
        for j in 0..n {
            a[i][j] = m.get(i, j);
        }
    }

    let scale: f64 = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| a[i][j].norm_sqr())
        .sum::<f64>()
        .sqrt();

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * 1e-2 * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                // Phase that makes the (p, q) entry real and positive.
                let phase = apq / r;
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + theta.hypot(1.0))
                };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                // Unitary acting on columns p, q:
                //   col_p' = c·e_p − s·conj(phase)·e_q
                //   col_q' = s·phase·e_p + c·e_q
                let g_pp = C64::new(c, 0.0);
                let g_qp = -phase.conj() * s;
                let g_pq = phase * s;
                let g_qq = C64::new(c, 0.0);

                // A ← A G
                for row in a.iter_mut().take(n) {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * g_pp + y * g_qp;
                    row[q] = x * g_pq + y * g_qq;
                }
                // A ← G† A
                for col in 0..n {
                    let (x, y) = (a[p][col], a[q][col]);
                    a[p][col] = g_pp.conj() * x + g_qp.conj() * y;
                    a[q][col] = g_pq.conj() * x + g_qq.conj() * y;
                }
                a[p][q] = ZERO;
                a[q][p] = ZERO;
                a[p][p] = C64::new(a[p][p].re, 0.0);
                a[q][q] = C64::new(a[q][q].re, 0.0);
                // V ← V G
                for row in v.iter_mut().take(n) {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * g_pp + y * g_qp;
                    row[q] = x * g_pq + y * g_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].re.total_cmp(&a[i][i].re));
    HermitianEigen {
        values: order.iter().map(|&k| a[k][k].re).collect(),
        vectors: order.iter().map(|&k| (0..n).map(|i| v[i][k]).collect()).collect(),
    }
}

/// The Pauli matrices σ₁, σ₂, σ₃ as row-major 2×2 arrays.
pub fn pauli(i: usize) -> [[C64; 2]; 2] {
    match i {
        0 => [[ZERO, ONE], [ONE, ZERO]],
        1 => [[ZERO, C64::new(0.0, -1.0)], [C64::new(0.0, 1.0), ZERO]],
        2 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => panic!("Pauli index {i} out of range"),
    }
}

pub const IDENTITY2: [[C64; 2]; 2] = [[ONE, ZERO], [ZERO, ONE]];

/// Kronecker product of two 2×2 matrices, A ⊗ B, with A acting on the
/// first (most significant) qubit.
pub fn kron2(a: &[[C64; 2]; 2], b: &[[C64; 2]; 2]) -> [[C64; 4]; 4] {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul4(a: &[[C64; 4]; 4], b: &[[C64; 4]; 4]) -> [[C64; 4]; 4] {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            if a[i][k] == ZERO {
                continue;
            }
            for j in 0..4 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn adjoint4(a: &[[C64; 4]; 4]) -> [[C64; 4]; 4] {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

/// Tr[m · op] for a 4×4 matrix and operator.
pub fn trace_product4(m: &HermitianMatrix, op: &[[C64; 4]; 4]) -> C64 {
    let mut acc = ZERO;
    for i in 0..4 {
        for k in 0..4 {
            acc += m.get(i, k) * op[k][i];
        }
    }
    acc
}

/// Partial trace over the second qubit of a 4×4 matrix.
pub fn partial_trace_second(m: &[[C64; 4]; 4]) -> [[C64; 2]; 2] {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = m[2 * i][2 * j] + m[2 * i + 1][2 * j + 1];
        }
    }
    out
}
