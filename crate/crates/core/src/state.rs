//! Two-qubit states: density matrices, the Bloch triple {x, y, T}, local
//! rotations, canonical (diagonal-T) form and random sampling.

use std::fmt;

use nalgebra::{Matrix3, Vector3, SVD};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::entropy::{binary_entropy_unchecked, von_neumann_entropy};
use crate::error::{DiscordError, Result};
use crate::linalg::{
    adjoint4, hermitian_eigenvalues, hermiticity_deviation, kron2, matmul4, pauli, trace_product4,
    HermitianMatrix, C64, IDENTITY2, ONE, ZERO,
};

/// Hermiticity and trace deviations accepted by [`validate`].
pub const STATE_TOL: f64 = 1e-8;
/// Smallest eigenvalue accepted by [`validate`].
pub const PSD_TOL: f64 = -1e-9;
/// Slack on |x|, |y| ≤ 1.
pub const BLOCH_NORM_TOL: f64 = 1e-9;
/// Orthogonality / determinant tolerance for [`Rotation`].
pub const ROTATION_TOL: f64 = 1e-10;

/// Hilbert–Schmidt parametrization of a two-qubit state:
/// ρ = ¼ (I⊗I + x·σ⊗I + I⊗y·σ + Σ t_ij σ_i⊗σ_j).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochTriple {
    pub x: Vector3<f64>,
    pub y: Vector3<f64>,
    pub t: Matrix3<f64>,
}

impl BlochTriple {
    pub fn new(x: Vector3<f64>, y: Vector3<f64>, t: Matrix3<f64>) -> Result<Self> {
        let all_finite = x.iter().chain(y.iter()).chain(t.iter()).all(|v| v.is_finite());
        if !all_finite {
            return Err(DiscordError::InvalidParameter("non-finite triple entry".into()));
        }
        for (name, v) in [("x", &x), ("y", &y)] {
            if v.norm() > 1.0 + BLOCH_NORM_TOL {
                return Err(DiscordError::NotAState(format!("|{name}| = {} exceeds 1", v.norm())));
            }
        }
        Ok(Self { x, y, t })
    }

    /// Triple with x = y = 0 and T = diag(t₁, t₂, t₃).
    pub fn bell_diagonal(t1: f64, t2: f64, t3: f64) -> Self {
        Self {
            x: Vector3::zeros(),
            y: Vector3::zeros(),
            t: Matrix3::from_diagonal(&Vector3::new(t1, t2, t3)),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.x - other.x)
            .abs()
            .max()
            .max((self.y - other.y).abs().max())
            .max((self.t - other.t).abs().max())
    }
}

/// Outcome of [`validate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateDiagnostics {
    pub hermiticity_deviation: f64,
    pub trace_deviation: f64,
    pub min_eigenvalue: f64,
    pub accepted: bool,
}

impl fmt::Display for StateDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "hermiticity deviation {:e}, trace deviation {:e}, min eigenvalue {:e}",
            self.hermiticity_deviation, self.trace_deviation, self.min_eigenvalue
        )
    }
}

/// Checks hermiticity, unit trace and positivity of a raw 4×4 matrix.
/// Never fails; the verdict is in [`StateDiagnostics::accepted`].
pub fn validate(raw: &[[C64; 4]; 4]) -> StateDiagnostics {
    let flat: Vec<C64> = raw.iter().flatten().copied().collect();
    let hermiticity_deviation = hermiticity_deviation(4, &flat);
    let trace_deviation = ((0..4).map(|i| raw[i][i]).sum::<C64>() - ONE).norm();
    let min_eigenvalue = if hermiticity_deviation.is_finite() && trace_deviation.is_finite() {
        let sym = symmetrize(raw);
        HermitianMatrix::new(4, &sym)
            .map(|m| hermitian_eigenvalues(&m)[3])
            .unwrap_or(f64::NAN)
    } else {
        f64::NAN
    };
    let accepted = hermiticity_deviation <= STATE_TOL
        && trace_deviation <= STATE_TOL
        && min_eigenvalue >= PSD_TOL;
    StateDiagnostics { hermiticity_deviation, trace_deviation, min_eigenvalue, accepted }
}

fn symmetrize(raw: &[[C64; 4]; 4]) -> Vec<C64> {
    let mut out = vec![ZERO; 16];
    for i in 0..4 {
        for j in 0..4 {
            out[i * 4 + j] = (raw[i][j] + raw[j][i].conj()) * 0.5;
        }
    }
    out
}

/// A validated two-qubit density operator ρᴬᴮ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(HermitianMatrix);

impl DensityMatrix {
    pub fn new(raw: &[[C64; 4]; 4]) -> Result<Self> {
        let diagnostics = validate(raw);
        if !diagnostics.accepted {
            return Err(DiscordError::Rejected(diagnostics));
        }
        Ok(Self(HermitianMatrix::new(4, &symmetrize(raw))?))
    }

    pub fn from_hermitian(m: &HermitianMatrix) -> Result<Self> {
        if m.dim() != 4 {
            return Err(DiscordError::BadShape(format!("dimension {}", m.dim())));
        }
        Self::new(&m.rows4())
    }

    pub fn from_triple(t: &BlochTriple) -> Result<Self> {
        Self::from_hermitian(&matrix_from_triple(t))
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.0
    }

    pub fn triple(&self) -> BlochTriple {
        triple_from_matrix(self)
    }

    pub fn entropy(&self) -> f64 {
        von_neumann_entropy(&self.0).expect("validated state has a well-defined entropy")
    }

    /// (U₁⊗U₂) ρ (U₁⊗U₂)†.
    pub fn conjugate_local(&self, u1: &Su2, u2: &Su2) -> Result<Self> {
        let u = kron2(&u1.0, &u2.0);
        let out = matmul4(&matmul4(&u, &self.0.rows4()), &adjoint4(&u));
        Self::new(&out)
    }
}

impl HermitianMatrix {
    pub fn rows4(&self) -> [[C64; 4]; 4] {
        assert_eq!(self.dim(), 4);
        let mut rows = [[ZERO; 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, z) in row.iter_mut().enumerate() {
                *z = self.get(i, j);
            }
        }
        rows
    }
}

fn local_operator(a: Option<usize>, b: Option<usize>) -> [[C64; 4]; 4] {
    let pa = a.map(pauli).unwrap_or(IDENTITY2);
    let pb = b.map(pauli).unwrap_or(IDENTITY2);
    kron2(&pa, &pb)
}

/// x_i = Tr ρ σ_i⊗I, y_j = Tr ρ I⊗σ_j, t_ij = Tr ρ σ_i⊗σ_j.
pub fn triple_from_matrix(rho: &DensityMatrix) -> BlochTriple {
    let m = rho.matrix();
    let mut x = Vector3::zeros();
    let mut y = Vector3::zeros();
    let mut t = Matrix3::zeros();
    for i in 0..3 {
        x[i] = trace_product4(m, &local_operator(Some(i), None)).re;
        y[i] = trace_product4(m, &local_operator(None, Some(i))).re;
        for j in 0..3 {
            t[(i, j)] = trace_product4(m, &local_operator(Some(i), Some(j))).re;
        }
    }
    BlochTriple { x, y, t }
}

/// Assembles ρ from its triple. Hermitian with unit trace by construction;
/// positivity is not checked here.
pub fn matrix_from_triple(t: &BlochTriple) -> HermitianMatrix {
    let mut acc = local_operator(None, None);
    let mut add = |op: [[C64; 4]; 4], coeff: f64| {
        if coeff != 0.0 {
            for i in 0..4 {
                for j in 0..4 {
                    acc[i][j] += op[i][j] * coeff;
                }
            }
        }
    };
    for i in 0..3 {
        add(local_operator(Some(i), None), t.x[i]);
        add(local_operator(None, Some(i)), t.y[i]);
        for j in 0..3 {
            add(local_operator(Some(i), Some(j)), t.t[(i, j)]);
        }
    }
    let flat: Vec<C64> = acc.iter().flatten().map(|z| z * 0.25).collect();
    HermitianMatrix::new(4, &flat).expect("Pauli expansion with real coefficients is Hermitian")
}

/// Single-qubit state (I + v·σ)/2.
pub fn qubit_from_bloch(v: &Vector3<f64>) -> HermitianMatrix {
    HermitianMatrix::from_rows2(&[
        [C64::new((1.0 + v[2]) / 2.0, 0.0), C64::new(v[0] / 2.0, -v[1] / 2.0)],
        [C64::new(v[0] / 2.0, v[1] / 2.0), C64::new((1.0 - v[2]) / 2.0, 0.0)],
    ])
    .expect("Bloch parametrization is Hermitian")
}

/// Reduced states (ρᴬ, ρᴮ).
pub fn marginals(t: &BlochTriple) -> (HermitianMatrix, HermitianMatrix) {
    (qubit_from_bloch(&t.x), qubit_from_bloch(&t.y))
}

/// Entropy of a qubit with coherence vector `v`: h₂((1+|v|)/2).
pub fn qubit_entropy(v: &Vector3<f64>) -> f64 {
    binary_entropy_unchecked(((1.0 + v.norm()) / 2.0).clamp(0.0, 1.0))
}

/// I(ρ) = S(ρᴬ) + S(ρᴮ) − S(ρᴬᴮ).
pub fn mutual_information(rho: &DensityMatrix) -> f64 {
    let t = rho.triple();
    qubit_entropy(&t.x) + qubit_entropy(&t.y) - rho.entropy()
}

/// A proper rotation in SO(3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation(Matrix3<f64>);

impl Rotation {
    pub fn new(m: Matrix3<f64>) -> Result<Self> {
        let ortho = (m.transpose() * m - Matrix3::identity()).abs().max();
        let det = m.determinant();
        if !(ortho <= ROTATION_TOL) || !((det - 1.0).abs() <= ROTATION_TOL) {
            return Err(DiscordError::InvalidRotation(format!(
                "orthogonality error {ortho:e}, determinant {det}"
            )));
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(Matrix3::identity())
    }

    /// Rotation by `angle` about `axis` (Rodrigues).
    pub fn about_axis(axis: &Vector3<f64>, angle: f64) -> Self {
        let unit = nalgebra::Unit::new_normalize(*axis);
        Self(*nalgebra::Rotation3::from_axis_angle(&unit, angle).matrix())
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }
}

/// A single-qubit unitary in SU(2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2(pub [[C64; 2]; 2]);

impl Su2 {
    /// a·I − i(b σ₁ + c σ₂ + d σ₃) for a unit quaternion (a, b, c, d).
    pub fn from_quaternion(q: [f64; 4]) -> Self {
        let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
        let [a, b, c, d] = q.map(|v| v / n);
        Self([
            [C64::new(a, -d), C64::new(-c, -b)],
            [C64::new(c, -b), C64::new(a, d)],
        ])
    }

    /// Haar-random element.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_quaternion(std::array::from_fn(|_| rng.sample(StandardNormal)))
    }

    /// The O ∈ SO(3) with U (a·σ) U† = (O a)·σ, i.e. O_ij = ½ Tr σ_i U σ_j U†.
    pub fn rotation(&self) -> Rotation {
        let u = self.0;
        let u_dag = [[u[0][0].conj(), u[1][0].conj()], [u[0][1].conj(), u[1][1].conj()]];
        let mul = |a: &[[C64; 2]; 2], b: &[[C64; 2]; 2]| -> [[C64; 2]; 2] {
            std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
        };
        let mut o = Matrix3::zeros();
        for j in 0..3 {
            let conj = mul(&mul(&u, &pauli(j)), &u_dag);
            for i in 0..3 {
                let prod = mul(&pauli(i), &conj);
                o[(i, j)] = 0.5 * (prod[0][0] + prod[1][1]).re;
            }
        }
        Rotation(o)
    }
}

/// x → O₁x, y → O₂y, T → O₁ T O₂ᵗ.
pub fn apply_local_rotations(t: &BlochTriple, o1: &Rotation, o2: &Rotation) -> BlochTriple {
    BlochTriple {
        x: o1.0 * t.x,
        y: o2.0 * t.y,
        t: o1.0 * t.t * o2.0.transpose(),
    }
}

/// Local-rotation representative with diagonal T.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalForm {
    /// Triple in the canonical frame; `t` is diagonal with |t₁| ≥ |t₂| ≥ |t₃|.
    pub triple: BlochTriple,
    /// Rotation applied to subsystem A.
    pub o1: Rotation,
    /// Rotation applied to subsystem B. A measurement direction n in the
    /// input frame corresponds to `o2 · n` in the canonical frame.
    pub o2: Rotation,
}

impl CanonicalForm {
    pub fn diagonal(&self) -> [f64; 3] {
        let t = &self.triple.t;
        [t[(0, 0)], t[(1, 1)], t[(2, 2)]]
    }
}

/// Diagonalizes T by a pair of proper rotations (SVD with determinant repair).
pub fn canonicalize(t: &BlochTriple) -> CanonicalForm {
    if t.t.iter().all(|v| *v == 0.0) {
        return CanonicalForm { triple: *t, o1: Rotation::identity(), o2: Rotation::identity() };
    }
    let svd = SVD::try_new(t.t, true, true, f64::EPSILON, 0)
        .expect("SVD of a finite 3x3 matrix converges");
    let (u, v_t) = (svd.u.unwrap(), svd.v_t.unwrap());
    let sv = svd.singular_values;

    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| sv[j].total_cmp(&sv[i]));
    let mut u_sorted = Matrix3::zeros();
    let mut v_sorted = Matrix3::zeros();
    let mut diag = Vector3::zeros();
    for (k, &src) in order.iter().enumerate() {
        u_sorted.set_column(k, &u.column(src));
        v_sorted.set_column(k, &v_t.row(src).transpose());
        diag[k] = sv[src];
    }
    // Flip the smallest-|t| column of U and/or V to make both proper.
    if u_sorted.determinant() < 0.0 {
        u_sorted.column_mut(2).neg_mut();
        diag[2] = -diag[2];
    }
    if v_sorted.determinant() < 0.0 {
        v_sorted.column_mut(2).neg_mut();
        diag[2] = -diag[2];
    }
    let o1 = Rotation(u_sorted.transpose());
    let o2 = Rotation(v_sorted.transpose());
    let rotated = apply_local_rotations(t, &o1, &o2);
    CanonicalForm {
        triple: BlochTriple { x: rotated.x, y: rotated.y, t: Matrix3::from_diagonal(&diag) },
        o1,
        o2,
    }
}

/// Random state ρ = G G† / Tr(G G†) with G a 4×rank complex Ginibre matrix.
/// `rank = None` draws a full-rank state.
pub fn random_state<R: Rng + ?Sized>(rank: Option<usize>, rng: &mut R) -> Result<DensityMatrix> {
    let rank = rank.unwrap_or(4);
    if !(1..=4).contains(&rank) {
        return Err(DiscordError::InvalidParameter(format!("rank {rank} outside 1..=4")));
    }
    let g: Vec<Vec<C64>> = (0..4)
        .map(|_| {
            (0..rank)
                .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect()
        })
        .collect();
    let mut rho = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            rho[i][j] = (0..rank).map(|k| g[i][k] * g[j][k].conj()).sum();
        }
    }
    let trace: f64 = (0..4).map(|i| rho[i][i].re).sum();
    for row in rho.iter_mut() {
        for z in row.iter_mut() {
            *z /= trace;
        }
    }
    DensityMatrix::new(&rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_2;

    fn bell_phi_plus() -> DensityMatrix {
        let h = C64::new(0.5, 0.0);
        let mut rows = [[ZERO; 4]; 4];
        for &(i, j) in &[(0, 0), (0, 3), (3, 0), (3, 3)] {
            rows[i][j] = h;
        }
        DensityMatrix::new(&rows).unwrap()
    }

    #[test]
    fn maximally_mixed_triple() {
        let rho = DensityMatrix::from_hermitian(&HermitianMatrix::identity(4).unwrap().scaled(0.25)).unwrap();
        let t = rho.triple();
        assert!(t.x.norm() < 1e-15 && t.y.norm() < 1e-15 && t.t.norm() < 1e-15);
        assert!(mutual_information(&rho).abs() < 1e-12);
    }

    #[test]
    fn bell_state_triple_and_information() {
        let rho = bell_phi_plus();
        let t = rho.triple();
        let expected = BlochTriple::bell_diagonal(1.0, -1.0, 1.0);
        assert!(t.max_abs_diff(&expected) < 1e-15);
        assert!((mutual_information(&rho) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_t_matches_explicit_layout() {
        let (t1, t2, t3) = (0.3, -0.2, 0.1);
        let (x, y) = (Vector3::new(0.1, 0.05, -0.2), Vector3::new(-0.1, 0.2, 0.15));
        let triple = BlochTriple { x, y, t: Matrix3::from_diagonal(&Vector3::new(t1, t2, t3)) };
        let m = matrix_from_triple(&triple);
        let q = |re: f64, im: f64| C64::new(re / 4.0, im / 4.0);
        let expected = [
            [q(1.0 + x[2] + y[2] + t3, 0.0), q(y[0], -y[1]), q(x[0], -x[1]), q(t1 - t2, 0.0)],
            [q(y[0], y[1]), q(1.0 + x[2] - y[2] - t3, 0.0), q(t1 + t2, 0.0), q(x[0], -x[1])],
            [q(x[0], x[1]), q(t1 + t2, 0.0), q(1.0 - x[2] + y[2] - t3, 0.0), q(y[0], -y[1])],
            [q(t1 - t2, 0.0), q(x[0], x[1]), q(y[0], y[1]), q(1.0 - x[2] - y[2] + t3, 0.0)],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert!((m.get(i, j) - expected[i][j]).norm() < 1e-15, "({i},{j})");
            }
        }
    }

    #[test]
    fn validate_examples() {
        let id = HermitianMatrix::identity(4).unwrap().scaled(0.25);
        assert!(validate(&id.rows4()).accepted);
        let neg = HermitianMatrix::real_diagonal(&[0.5, 0.6, -0.1, 0.0]).unwrap();
        let d = validate(&neg.rows4());
        assert!(!d.accepted);
        assert!((d.min_eigenvalue + 0.1).abs() < 1e-12);
        let mut skew = id.rows4();
        skew[0][1] = C64::new(0.0, 0.1);
        let d = validate(&skew);
        assert!(!d.accepted && d.hermiticity_deviation > 0.09);
        let mut nan = id.rows4();
        nan[2][2] = C64::new(f64::NAN, 0.0);
        assert!(!validate(&nan).accepted);
    }

    #[test]
    fn marginal_examples() {
        let t = BlochTriple::bell_diagonal(0.2, 0.1, 0.0);
        let (a, _) = marginals(&t);
        assert!((von_neumann_entropy(&a).unwrap() - 1.0).abs() < 1e-15);
        let pure = Vector3::new(0.0, 0.6, 0.8);
        assert!(qubit_entropy(&pure).abs() < 1e-15);
        assert!(von_neumann_entropy(&qubit_from_bloch(&pure)).unwrap().abs() < 1e-7);
    }

    #[test]
    fn product_state_has_no_mutual_information() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = Vector3::new(0.3, -0.2, 0.5);
        let y = Vector3::new(-0.1, 0.4, 0.2);
        let triple = BlochTriple { x, y, t: x * y.transpose() };
        let rho = DensityMatrix::from_triple(&triple).unwrap();
        assert!(mutual_information(&rho).abs() < 1e-12);
        let _ = Su2::random(&mut rng);
    }

    #[test]
    fn rotation_action() {
        let rz = Rotation::about_axis(&Vector3::z(), FRAC_PI_2);
        let t = BlochTriple::new(Vector3::x(), Vector3::zeros(), Matrix3::zeros()).unwrap();
        let out = apply_local_rotations(&t, &rz, &Rotation::identity());
        assert!((out.x - Vector3::y()).norm() < 1e-15);
        assert!(Rotation::new(Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0))).is_err());
        assert!(Rotation::new(rz.matrix() * 1.01).is_err());
    }

    #[test]
    fn su2_rotation_matches_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let (u1, u2) = (Su2::random(&mut rng), Su2::random(&mut rng));
            let rho = random_state(None, &mut rng).unwrap();
            let rotated = rho.conjugate_local(&u1, &u2).unwrap().triple();
            let via_triple = apply_local_rotations(&rho.triple(), &u1.rotation(), &u2.rotation());
            assert!(rotated.max_abs_diff(&via_triple) < 1e-12);
            assert!(Rotation::new(*u1.rotation().matrix()).is_ok());
        }
    }

    #[test]
    fn canonicalize_recovers_rotated_diagonal() {
        let alpha = 0.7;
        let rz = Rotation::about_axis(&Vector3::z(), alpha);
        let t = BlochTriple {
            x: Vector3::zeros(),
            y: Vector3::zeros(),
            t: rz.matrix() * Matrix3::from_diagonal(&Vector3::new(0.5, 0.3, 0.1)),
        };
        let c = canonicalize(&t);
        let d = c.diagonal();
        assert!((d[0] - 0.5).abs() < 1e-12 && (d[1] - 0.3).abs() < 1e-12 && (d[2] - 0.1).abs() < 1e-12);
        // O1·Rz must be diagonal (±1 entries) and so must O2.
        let residue = c.o1.matrix() * rz.matrix();
        assert!((residue.abs() - Matrix3::from_diagonal(&residue.diagonal().abs())).abs().max() < 1e-12);
        let back = apply_local_rotations(&t, &c.o1, &c.o2);
        assert!(back.max_abs_diff(&c.triple) < 1e-9);
    }

    #[test]
    fn canonicalize_already_diagonal_and_zero() {
        let t = BlochTriple::bell_diagonal(0.6, -0.4, 0.2);
        let c = canonicalize(&t);
        let d = c.diagonal();
        assert!((d[0].abs() - 0.6).abs() < 1e-12 && (d[1].abs() - 0.4).abs() < 1e-12);
        assert!((d[0] * d[1] * d[2] - 0.6 * -0.4 * 0.2).abs() < 1e-12);
        let zero = BlochTriple::new(Vector3::new(0.1, 0.0, 0.0), Vector3::zeros(), Matrix3::zeros()).unwrap();
        let c = canonicalize(&zero);
        assert_eq!(c.o1, Rotation::identity());
        assert_eq!(c.triple, zero);
    }

    #[test]
    fn canonicalize_locally_rotated_bell_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rho = bell_phi_plus().conjugate_local(&Su2::random(&mut rng), &Su2::random(&mut rng)).unwrap();
        let t = rho.triple();
        let c = canonicalize(&t);
        for v in c.diagonal() {
            assert!((v.abs() - 1.0).abs() < 1e-10);
        }
        assert!((c.triple.t.determinant() - t.t.determinant()).abs() < 1e-10);
    }

    #[test]
    fn random_state_ranks_and_determinism() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for rank in 1..=4 {
            let rho = random_state(Some(rank), &mut rng).unwrap();
            let ev = hermitian_eigenvalues(rho.matrix());
            assert_eq!(ev.iter().filter(|&&v| v > 1e-9).count(), rank);
        }
        let pure = random_state(Some(1), &mut rng).unwrap();
        assert!(pure.entropy().abs() < 1e-7);
        let a = random_state(None, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        let b = random_state(None, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        assert_eq!(a, b);
        assert!(random_state(Some(5), &mut rng).is_err());
    }

    #[test]
    fn rejects_oversized_bloch_vectors() {
        assert!(BlochTriple::new(Vector3::new(1.1, 0.0, 0.0), Vector3::zeros(), Matrix3::zeros()).is_err());
        let nan = BlochTriple::new(Vector3::new(f64::NAN, 0.0, 0.0), Vector3::zeros(), Matrix3::zeros());
        assert!(nan.is_err());
    }
}
