//! Families of states whose discord is known analytically.
//!
//! These double as fast paths for the optimizer and as oracles against it.

use nalgebra::{Matrix3, SymmetricEigen, Vector3};
use rand::Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::entropy::{neg_xlog2x, PROB_CLAMP_TOL};
use crate::error::{DiscordError, Result};
use crate::linalg::{C64, ZERO};
use crate::measurement::{h2_of_radius, MeasurementDirection};
use crate::state::{BlochTriple, CanonicalForm, DensityMatrix};

/// Tolerance on the defining equalities of every class predicate.
pub const CLASS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassKind {
    /// x = y = 0.
    BellDiagonal,
    /// Tᵗx = 0, y = 0, not covered by a more specific subclass.
    KernelClass,
    /// Tᵗx = 0, y = 0 with x₁ = x₂ = t₃ = 0 in the canonical frame.
    XSubclass,
    /// Tᵗx = 0, y = 0 with x₁ = t₂ = t₃ = 0: zero discord.
    ZeroDiscordIII,
    /// T = 0, y = 0: zero discord.
    ZeroDiscordIV,
    /// The two-parameter ρ(a, b) family. Never returned by [`classify`].
    AbFamily,
    Generic,
}

impl ClassKind {
    pub fn has_closed_form(self) -> bool {
        !matches!(self, ClassKind::Generic | ClassKind::AbFamily)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassTag {
    pub kind: ClassKind,
    /// BellDiagonal: [t₁, t₂, t₃]; XSubclass: [t₁, t₂, x₃];
    /// ZeroDiscordIII: [t₁, x₂, x₃]; ZeroDiscordIV: [x₁, x₂, x₃];
    /// KernelClass: [t₁, t₂, t₃, |x|]; Generic: [].
    pub parameters: Vec<f64>,
}

/// Assigns the most specific class, checked in the order BellDiagonal,
/// ZeroDiscordIV, ZeroDiscordIII, XSubclass, KernelClass, Generic.
pub fn classify(c: &CanonicalForm) -> ClassTag {
    let tr = &c.triple;
    let [t1, t2, t3] = c.diagonal();
    let x = tr.x;
    let small = |v: f64| v.abs() <= CLASS_TOL;
    let tag = |kind, parameters: Vec<f64>| ClassTag { kind, parameters };

    if !(tr.y.norm() <= CLASS_TOL && (tr.t.transpose() * x).norm() <= CLASS_TOL) {
        return tag(ClassKind::Generic, vec![]);
    }
    if x.norm() <= CLASS_TOL {
        return tag(ClassKind::BellDiagonal, vec![t1, t2, t3]);
    }
    if small(t1) && small(t2) && small(t3) {
        return tag(ClassKind::ZeroDiscordIV, vec![x[0], x[1], x[2]]);
    }
    if small(x[0]) && small(t2) && small(t3) {
        return tag(ClassKind::ZeroDiscordIII, vec![t1, x[1], x[2]]);
    }
    if small(x[0]) && small(x[1]) && small(t3) {
        return tag(ClassKind::XSubclass, vec![t1, t2, x[2]]);
    }
    tag(ClassKind::KernelClass, vec![t1, t2, t3, x.norm()])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellDiagonalDiscord {
    pub discord: f64,
    pub min_conditional_entropy: f64,
    /// Index (0, 1, 2) of the coordinate axis achieving t_max.
    pub optimal_axis: usize,
    /// Another axis ties with t_max; any direction in their span is optimal.
    pub degenerate: bool,
}

/// Eigenvalues μ of the Bell-diagonal state with correlations (t₁, t₂, t₃).
pub fn bell_diagonal_spectrum(t1: f64, t2: f64, t3: f64) -> [f64; 4] {
    [
        (1.0 + t1 + t2 - t3) / 4.0,
        (1.0 - t1 - t2 - t3) / 4.0,
        (1.0 + t1 - t2 + t3) / 4.0,
        (1.0 - t1 + t2 + t3) / 4.0,
    ]
}

fn checked_entropy(mu: &[f64]) -> Result<f64> {
    if let Some(bad) = mu.iter().find(|&&m| !(m >= -PROB_CLAMP_TOL)) {
        return Err(DiscordError::NotAState(format!("eigenvalue {bad:e} is negative")));
    }
    Ok(mu.iter().map(|&m| neg_xlog2x(m.max(0.0))).sum())
}

/// D = 1 − h₄(μ) + h₂((1 + t_max)/2), t_max = max |t_i|.
pub fn bell_diagonal_discord(t1: f64, t2: f64, t3: f64) -> Result<BellDiagonalDiscord> {
    let joint = checked_entropy(&bell_diagonal_spectrum(t1, t2, t3))?;
    let abs = [t1.abs(), t2.abs(), t3.abs()];
    let mut optimal_axis = 0;
    for k in 1..3 {
        if abs[k] > abs[optimal_axis] {
            optimal_axis = k;
        }
    }
    let t_max = abs[optimal_axis];
    let degenerate = (0..3).any(|k| k != optimal_axis && (abs[k] - t_max).abs() <= CLASS_TOL);
    let min_conditional_entropy = h2_of_radius(t_max);
    Ok(BellDiagonalDiscord {
        discord: 1.0 - joint + min_conditional_entropy,
        min_conditional_entropy,
        optimal_axis,
        degenerate,
    })
}

/// Correlations (t₁, t₂, t₃) of the Bell-diagonal state with spectrum μ,
/// inverting [`bell_diagonal_spectrum`].
pub fn bell_diagonal_from_spectrum(mu: [f64; 4]) -> [f64; 3] {
    let t3 = 1.0 - 2.0 * (mu[0] + mu[1]);
    let sum = 2.0 * (mu[0] - mu[1]);
    let diff = 2.0 * (mu[2] - mu[3]);
    [(sum + diff) / 2.0, (sum - diff) / 2.0, t3]
}

/// A Bell-diagonal state drawn uniformly from the tetrahedron of valid
/// (t₁, t₂, t₃), via a uniform point on the spectrum simplex.
pub fn random_bell_diagonal<R: Rng + ?Sized>(rng: &mut R) -> BlochTriple {
    let e: [f64; 4] = std::array::from_fn(|_| rng.sample::<f64, _>(Exp1));
    let total: f64 = e.iter().sum();
    let [t1, t2, t3] = bell_diagonal_from_spectrum(e.map(|v| v / total));
    BlochTriple::bell_diagonal(t1, t2, t3)
}

/// Largest eigenvalue of TᵗT and its unit eigenvector.
pub(crate) fn top_correlation_axis(t: &Matrix3<f64>) -> (f64, Vector3<f64>) {
    let eig = SymmetricEigen::new(t.transpose() * t);
    let mut best = 0;
    for k in 1..3 {
        if eig.eigenvalues[k] > eig.eigenvalues[best] {
            best = k;
        }
    }
    (eig.eigenvalues[best].max(0.0), eig.eigenvectors.column(best).into_owned())
}

/// Minimum conditional entropy h₂((1 + √(|x|² + t_max²))/2) for a state with
/// Tᵗx = 0 and y = 0, and a direction attaining it.
pub fn kernel_class_minimum(t: &BlochTriple) -> Result<(f64, MeasurementDirection)> {
    let ttx = (t.t.transpose() * t.x).norm();
    if ttx > CLASS_TOL || t.y.norm() > CLASS_TOL {
        return Err(DiscordError::WrongClass(format!("|Tᵗx| = {ttx:e}, |y| = {:e}", t.y.norm())));
    }
    let (t_max_sq, axis) = top_correlation_axis(&t.t);
    let direction = MeasurementDirection::new(axis)?;
    Ok((h2_of_radius((t.x.norm_squared() + t_max_sq).sqrt()), direction))
}

pub fn kernel_class_min_entropy(t: &BlochTriple) -> Result<f64> {
    kernel_class_minimum(t).map(|(value, _)| value)
}

/// Discord of the X subclass T = diag(t₁, t₂, 0), x = (0, 0, x₃), y = 0.
pub fn x_subclass_discord(t1: f64, t2: f64, x3: f64) -> Result<f64> {
    if t1.abs() < t2.abs() {
        return Err(DiscordError::InvalidParameter(format!("|t1| = {} < |t2| = {}", t1.abs(), t2.abs())));
    }
    let r_plus = ((t1 + t2).powi(2) + x3 * x3).sqrt();
    let r_minus = ((t1 - t2).powi(2) + x3 * x3).sqrt();
    let mu = [(1.0 + r_plus) / 4.0, (1.0 - r_plus) / 4.0, (1.0 + r_minus) / 4.0, (1.0 - r_minus) / 4.0];
    let joint = checked_entropy(&mu)?;
    Ok(1.0 - joint + h2_of_radius((t1 * t1 + x3 * x3).sqrt()))
}

/// Parameters of ρ(a, b), restricted to 0 ≤ a ≤ 1 and a − 1 ≤ b ≤ 1 − a.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbState {
    a: f64,
    b: f64,
}

const AB_REGION_TOL: f64 = 1e-12;

impl AbState {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let inside = a.is_finite()
            && b.is_finite()
            && a >= -AB_REGION_TOL
            && a <= 1.0 + AB_REGION_TOL
            && b.abs() <= 1.0 - a + AB_REGION_TOL;
        if !inside {
            return Err(DiscordError::InvalidParameter(format!(
                "(a, b) = ({a}, {b}) outside 0 <= a <= 1, |b| <= 1 - a"
            )));
        }
        let a = a.clamp(0.0, 1.0);
        Ok(Self { a, b: b.clamp(a - 1.0, 1.0 - a) })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// x = −y = (0, 0, −b), T = diag(a, −a, 2a − 1).
    pub fn triple(&self) -> BlochTriple {
        let (a, b) = (self.a, self.b);
        BlochTriple {
            x: Vector3::new(0.0, 0.0, -b),
            y: Vector3::new(0.0, 0.0, b),
            t: Matrix3::from_diagonal(&Vector3::new(a, -a, 2.0 * a - 1.0)),
        }
    }
}

/// ρ(a, b) = ½ [[a,0,0,a],[0,1−a−b,0,0],[0,0,1−a+b,0],[a,0,0,a]].
pub fn ab_state(s: &AbState) -> Result<DensityMatrix> {
    let (a, b) = (s.a, s.b);
    let r = |v: f64| C64::new(v / 2.0, 0.0);
    let mut rows = [[ZERO; 4]; 4];
    rows[0][0] = r(a);
    rows[0][3] = r(a);
    rows[3][0] = r(a);
    rows[3][3] = r(a);
    rows[1][1] = r(1.0 - a - b);
    rows[2][2] = r(1.0 - a + b);
    DensityMatrix::new(&rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbDiscord {
    pub discord: f64,
    pub q: f64,
}

/// The quantity q of the ρ(a, b) family, with every u·log₂u term taken as
/// 0 at u = 0 so the value is finite on the closed parameter region.
pub fn ab_q(s: &AbState) -> f64 {
    let (a, b) = (s.a, s.b);
    let r = a.hypot(b);
    let f = |u: f64| -neg_xlog2x(u);
    a + 1.0 + f(a)
        + 0.5 * (f(1.0 - a - b) + f(1.0 - a + b) - f(1.0 + b) - f(1.0 - b) - f(1.0 + r) - f(1.0 - r))
}

/// Q(ρ(a, b)) = min{a, q}.
pub fn ab_discord(s: &AbState) -> AbDiscord {
    let q = ab_q(s);
    AbDiscord { discord: s.a.min(q), q }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::{binary_entropy, shannon_entropy};
    use crate::state::{canonicalize, mutual_information};
    use rand::SeedableRng;

    fn kernel_triple(x: [f64; 3], t: [f64; 3]) -> BlochTriple {
        BlochTriple {
            x: Vector3::from(x),
            y: Vector3::zeros(),
            t: Matrix3::from_diagonal(&Vector3::from(t)),
        }
    }

    /// The literal four-logarithm expression for q, valid in the interior.
    fn q_literal(a: f64, b: f64) -> f64 {
        let r = a.hypot(b);
        let l = f64::log2;
        a / 2.0 * l(4.0 * a * a / ((1.0 - a).powi(2) - b * b))
            - b / 2.0 * l((1.0 + b) * (1.0 - a - b) / ((1.0 - b) * (1.0 - a + b)))
            - r / 2.0 * l((1.0 + r) / (1.0 - r))
            + 0.5 * l(4.0 * ((1.0 - a).powi(2) - b * b) / ((1.0 - b * b) * (1.0 - a * a - b * b)))
    }

    #[test]
    fn classify_examples() {
        let c = canonicalize(&BlochTriple::bell_diagonal(0.3, -0.2, 0.1));
        assert_eq!(classify(&c).kind, ClassKind::BellDiagonal);
        let c = canonicalize(&kernel_triple([0.0, 0.0, 0.3], [0.5, 0.2, 0.0]));
        let tag = classify(&c);
        assert_eq!(tag.kind, ClassKind::XSubclass);
        assert!((tag.parameters[2].abs() - 0.3).abs() < 1e-12);
        let c = canonicalize(&kernel_triple([0.1, -0.4, 0.2], [0.0; 3]));
        assert_eq!(classify(&c).kind, ClassKind::ZeroDiscordIV);
        let c = canonicalize(&kernel_triple([0.0, 0.3, 0.2], [0.6, 0.0, 0.0]));
        assert_eq!(classify(&c).kind, ClassKind::ZeroDiscordIII);
        let c = canonicalize(&AbState::new(0.4, 0.2).unwrap().triple());
        assert_eq!(classify(&c).kind, ClassKind::Generic);
    }

    #[test]
    fn bell_diagonal_examples() {
        let bell = bell_diagonal_discord(1.0, -1.0, 1.0).unwrap();
        assert!((bell.discord - 1.0).abs() < 1e-15 && bell.min_conditional_entropy == 0.0);
        assert_eq!(bell_diagonal_discord(0.0, 0.0, 0.0).unwrap().discord, 0.0);

        let d = bell_diagonal_discord(0.8, -0.2, 0.1).unwrap();
        // μ = (0.375, 0.075, 0.525, 0.025)
        let expect = 1.0 - shannon_entropy(&[0.375, 0.075, 0.525, 0.025]).unwrap()
            + binary_entropy(0.9).unwrap();
        assert!((d.discord - expect).abs() < 1e-15);
        assert_eq!(d.optimal_axis, 0);
        assert!(!d.degenerate);

        // (0.9, 0.2, 0.1) lies outside the tetrahedron: μ₂ = −0.05.
        assert!(matches!(bell_diagonal_discord(0.9, 0.2, 0.1), Err(DiscordError::NotAState(_))));
    }

    #[test]
    fn spectrum_round_trip() {
        for t in [[0.8, -0.2, 0.1], [1.0, -1.0, 1.0], [0.0, 0.3, -0.5]] {
            let mu = bell_diagonal_spectrum(t[0], t[1], t[2]);
            let back = bell_diagonal_from_spectrum(mu);
            assert!((0..3).all(|k| (back[k] - t[k]).abs() < 1e-15), "{t:?} -> {back:?}");
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let t = random_bell_diagonal(&mut rng);
            assert!(DensityMatrix::from_triple(&t).is_ok());
        }
    }

    #[test]
    fn bell_diagonal_ties_and_symmetry() {
        let d = bell_diagonal_discord(0.4, -0.4, 0.1).unwrap();
        assert_eq!(d.optimal_axis, 0);
        assert!(d.degenerate);
        let base = bell_diagonal_discord(0.5, -0.3, 0.1).unwrap().discord;
        for (t1, t2, t3) in [(-0.3, 0.5, 0.1), (0.1, -0.3, 0.5), (-0.5, 0.3, 0.1), (0.5, 0.3, -0.1)] {
            assert!((bell_diagonal_discord(t1, t2, t3).unwrap().discord - base).abs() < 1e-12);
        }
    }

    #[test]
    fn kernel_class_examples() {
        let bell = BlochTriple::bell_diagonal(0.2, -0.7, 0.1);
        let (v, n) = kernel_class_minimum(&bell).unwrap();
        assert!((v - h2_of_radius(0.7)).abs() < 1e-15);
        assert!(n.axis_distance(&MeasurementDirection::axis(1)) < 1e-12);

        let product = kernel_triple([0.3, 0.0, 0.4], [0.0; 3]);
        assert!((kernel_class_min_entropy(&product).unwrap() - h2_of_radius(0.5)).abs() < 1e-15);

        let x = kernel_triple([0.0, 0.0, 0.4], [0.6, 0.3, 0.0]);
        assert!((kernel_class_min_entropy(&x).unwrap() - h2_of_radius(0.52f64.sqrt())).abs() < 1e-15);

        let generic = AbState::new(0.5, 0.2).unwrap().triple();
        assert!(matches!(kernel_class_min_entropy(&generic), Err(DiscordError::WrongClass(_))));
    }

    #[test]
    fn x_subclass_examples() {
        // x₃ = 0 collapses onto the Bell-diagonal formula with t₃ = 0.
        let a = x_subclass_discord(0.5, 0.2, 0.0).unwrap();
        let b = bell_diagonal_discord(0.5, 0.2, 0.0).unwrap().discord;
        assert!((a - b).abs() < 1e-15);

        // Against the definition: S_B − S_AB + min S with S_B = 1.
        let t = kernel_triple([0.0, 0.0, 0.3], [0.5, 0.2, 0.0]);
        let rho = DensityMatrix::from_triple(&t).unwrap();
        let expect = 1.0 - rho.entropy() + kernel_class_min_entropy(&t).unwrap();
        assert!((x_subclass_discord(0.5, 0.2, 0.3).unwrap() - expect).abs() < 1e-12);

        let d = x_subclass_discord(0.5, 0.5, 0.0).unwrap();
        let expect = 1.0 - shannon_entropy(&[0.5, 0.0, 0.25, 0.25]).unwrap() + binary_entropy(0.75).unwrap();
        assert!((d - expect).abs() < 1e-15);

        assert!(x_subclass_discord(0.2, 0.5, 0.0).is_err());
        assert!(x_subclass_discord(1.0, 0.9, 0.5).is_err());
    }

    #[test]
    fn ab_state_examples() {
        let bell = ab_state(&AbState::new(1.0, 0.0).unwrap()).unwrap();
        let m = bell.matrix();
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            assert_eq!(m.get(i, j).re, 0.5);
        }
        assert!((mutual_information(&bell) - 2.0).abs() < 1e-12);

        let mix = ab_state(&AbState::new(0.0, 0.0).unwrap()).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| mix.matrix().get(i, i).re).collect();
        assert_eq!(diag, vec![0.0, 0.5, 0.5, 0.0]);

        let s = AbState::new(0.5, 0.1).unwrap();
        let rho = ab_state(&s).unwrap();
        assert!(rho.triple().max_abs_diff(&s.triple()) < 1e-15);
        assert!((rho.entropy() - shannon_entropy(&[0.5, 0.2, 0.3]).unwrap()).abs() < 1e-12);

        assert!(AbState::new(0.6, 0.5).is_err());
        assert!(AbState::new(-0.1, 0.0).is_err());
        assert!(AbState::new(0.5, f64::NAN).is_err());
    }

    #[test]
    fn q_matches_literal_and_entropy_forms() {
        for &(a, b) in &[(0.5, 0.3), (0.5, 0.1), (0.9, 0.05), (0.2, -0.4), (0.35, 0.6)] {
            let s = AbState::new(a, b).unwrap();
            let q = ab_q(&s);
            assert!((q - q_literal(a, b)).abs() < 1e-12, "({a},{b})");
            let rho = ab_state(&s).unwrap();
            let s_b = binary_entropy((1.0 + b) / 2.0).unwrap();
            let entropy_form = s_b - rho.entropy() + h2_of_radius(a.hypot(b));
            assert!((q - entropy_form).abs() < 1e-12, "({a},{b})");
        }
    }

    #[test]
    fn q_boundary_limits_and_parity() {
        // b → 0 limit agrees with nearby interior values.
        let at_zero = ab_q(&AbState::new(0.5, 0.0).unwrap());
        let near = q_literal(0.5, 1e-7);
        assert!((at_zero - near).abs() < 1e-9);
        // |b| = 1 − a, a = 0 and a = 1 stay finite.
        for &(a, b) in &[(0.3, 0.7), (0.3, -0.7), (0.0, 0.4), (0.0, 1.0), (1.0, 0.0)] {
            assert!(ab_q(&AbState::new(a, b).unwrap()).is_finite());
        }
        for &(a, b) in &[(0.5, 0.3), (0.2, 0.45), (0.9, 0.1), (0.05, 0.9)] {
            let p = ab_discord(&AbState::new(a, b).unwrap());
            let m = ab_discord(&AbState::new(a, -b).unwrap());
            assert!((p.discord - m.discord).abs() < 1e-12 && (p.q - m.q).abs() < 1e-12);
        }
        let d = ab_discord(&AbState::new(0.9, 0.05).unwrap());
        assert!(d.q < 0.9 && d.discord == d.q);
    }
}
