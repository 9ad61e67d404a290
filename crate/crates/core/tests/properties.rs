//! Property tests across module boundaries: closed forms against the
//! numerical optimizer, optimizer against its grid oracle, and bound
//! invariants.

use discord::bounds::{perp_subspace, t0_squared};
use discord::closed_forms::{
    bell_diagonal_discord, classify, kernel_class_min_entropy, x_subclass_discord, ClassKind,
};
use discord::measurement::conditional_entropy_direct;
use discord::optimizer::{grid_minimize, grid_refine_minimum, refine_minimum, stationary_scan, DEFAULT_RESOLUTION, STATIONARY_TOL};
use discord::state::{apply_local_rotations, canonicalize, random_state, Su2};
use discord::{conditional_entropy, BlochTriple, DensityMatrix, OptimizerOptions};
use nalgebra::{Matrix3, SymmetricEigen, Vector3};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn seeded_state(seed: u64, rank: Option<usize>) -> DensityMatrix {
    random_state(rank, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

fn rotated(t: &BlochTriple, seed: u64) -> BlochTriple {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (o1, o2) = (Su2::random(&mut rng).rotation(), Su2::random(&mut rng).rotation());
    apply_local_rotations(t, &o1, &o2)
}

fn diag(t1: f64, t2: f64, t3: f64, x: [f64; 3]) -> BlochTriple {
    BlochTriple { x: Vector3::from(x), y: Vector3::zeros(), t: Matrix3::from_diagonal(&Vector3::new(t1, t2, t3)) }
}

fn h2(p: f64) -> f64 {
    [p, 1.0 - p].iter().map(|&v| if v > 0.0 { -v * v.log2() } else { 0.0 }).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn measurement_identity_holds(seed in any::<u64>(), rank in 1usize..=4, theta in 0.0f64..3.14, phi in 0.0f64..6.28) {
        let t = seeded_state(seed, Some(rank)).triple();
        let n = discord::MeasurementDirection::from_angles(theta, phi);
        prop_assert!((conditional_entropy(&t, &n) - conditional_entropy_direct(&t, &n)).abs() < 1e-10);
    }

    #[test]
    fn bell_diagonal_closed_form_matches_optimizer(t1 in -1.0f64..1.0, t2 in -1.0f64..1.0, t3 in -1.0f64..1.0, seed in any::<u64>()) {
        let t = BlochTriple::bell_diagonal(t1, t2, t3);
        prop_assume!(DensityMatrix::from_triple(&t).is_ok());
        let exact = bell_diagonal_discord(t1, t2, t3).unwrap();
        let moved = rotated(&t, seed);
        let m = grid_refine_minimum(&moved, &OptimizerOptions::default());
        prop_assert!((m.value - exact.min_conditional_entropy).abs() < 1e-6);
        prop_assert_eq!(classify(&canonicalize(&moved)).kind, ClassKind::BellDiagonal);
    }

    #[test]
    fn x_subclass_closed_form_matches_optimizer(a in -1.0f64..1.0, b in -1.0f64..1.0, x3 in -1.0f64..1.0, seed in any::<u64>()) {
        let (t1, t2) = if a.abs() >= b.abs() { (a, b) } else { (b, a) };
        let t = diag(t1, t2, 0.0, [0.0, 0.0, x3]);
        let Ok(rho) = DensityMatrix::from_triple(&t) else { return Ok(()) };
        let d = x_subclass_discord(t1, t2, x3).unwrap();
        let moved = rotated(&t, seed);
        let m = grid_refine_minimum(&moved, &OptimizerOptions::default());
        let numeric = 1.0 - rho.entropy() + m.value;
        prop_assert!((numeric - d).abs() < 1e-6, "{} vs {}", numeric, d);
        prop_assert!((kernel_class_min_entropy(&moved).unwrap() - m.value).abs() < 1e-6);
    }

    #[test]
    fn zero_discord_subclasses(t1 in -1.0f64..1.0, x2 in -1.0f64..1.0, x3 in -1.0f64..1.0, seed in any::<u64>()) {
        for t in [diag(t1, 0.0, 0.0, [0.0, x2, x3]), diag(0.0, 0.0, 0.0, [t1, x2, x3])] {
            let Ok(rho) = DensityMatrix::from_triple(&t) else { continue };
            let moved = DensityMatrix::from_triple(&rotated(&t, seed)).unwrap();
            let r = discord::quantum_discord(&moved);
            prop_assert!(r.discord.abs() < 1e-9, "{:?}", r.class);
            prop_assert!(matches!(r.class, ClassKind::ZeroDiscordIII | ClassKind::ZeroDiscordIV | ClassKind::BellDiagonal));
            prop_assert!((discord::quantum_discord(&rho).discord - r.discord).abs() < 1e-9);
        }
    }

    #[test]
    fn refinement_never_loses_to_the_grid(seed in any::<u64>(), rank in 2usize..=4) {
        let t = seeded_state(seed, Some(rank)).triple();
        let (n0, v0) = grid_minimize(&t, 4.0 * DEFAULT_RESOLUTION).unwrap();
        let r = refine_minimum(&t, &n0, 1e-9);
        prop_assert!(r.value <= v0 + 1e-12);
        let m = grid_refine_minimum(&t, &OptimizerOptions::default());
        let (_, fine) = grid_minimize(&t, DEFAULT_RESOLUTION).unwrap();
        prop_assert!(m.value <= fine + 1e-12);
    }

    #[test]
    fn bound_quantities_are_consistent(seed in any::<u64>(), rank in 1usize..=4) {
        let rho = seeded_state(seed, Some(rank));
        let t = rho.triple();
        let (t0sq, e0) = t0_squared(&t);
        let q = t.t.transpose() * t.t;
        let top = SymmetricEigen::new(q).eigenvalues.max();
        prop_assert!(t0sq >= 0.0 && t0sq <= top + 1e-12);
        let basis = perp_subspace(&t);
        for e in &basis {
            prop_assert!(e.dot(&t.y).abs() < 1e-9);
            prop_assert!(e.dot(&(t.t.transpose() * t.x)).abs() < 1e-9);
            // the maximum over R⊥ dominates every single axis inside it
            prop_assert!(t0sq >= e.dot(&(q * e)) - 1e-12);
        }
        prop_assert!((e0.vector().dot(&(q * e0.vector())) - t0sq).abs() < 1e-12);
        let r = discord::quantum_discord(&rho);
        prop_assert!(r.bounds.cond_entropy_ub >= 0.0 && r.bounds.cond_entropy_ub <= 1.0);
        prop_assert!(r.discord <= r.bounds.discord_ub + 1e-6);
        prop_assert!(r.classical_correlation >= r.bounds.classical_lb - 1e-6);
        prop_assert!(r.classical_correlation >= -1e-9 && r.discord >= -1e-9);
        prop_assert!(r.discord <= r.mutual_information + 1e-9);
        let ub = h2((1.0 + (t.x.norm_squared() + t0sq).sqrt()) / 2.0);
        prop_assert!((ub - r.bounds.cond_entropy_ub).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn scanned_points_are_stationary(seed in any::<u64>()) {
        let t = seeded_state(seed, None).triple();
        let pts = stationary_scan(&t, 2.0 * DEFAULT_RESOLUTION).unwrap();
        prop_assert!(!pts.is_empty());
        for p in &pts {
            prop_assert!(p.residual <= STATIONARY_TOL);
            prop_assert!((conditional_entropy(&t, &p.direction) - p.value).abs() < 1e-12);
        }
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                prop_assert!(p.direction.axis_distance(&q.direction) >= 1e-4);
            }
        }
    }
}

#[test]
fn degenerate_bell_diagonal_has_a_circle_of_stationary_points() {
    let t = BlochTriple::bell_diagonal(0.6, 0.6, 0.2);
    let pts = stationary_scan(&t, 2.0 * DEFAULT_RESOLUTION).unwrap();
    let best = pts[0].value;
    let on_circle: Vec<_> = pts.iter().filter(|p| (p.value - best).abs() < 1e-9).collect();
    assert!(on_circle.len() >= 2, "{pts:?}");
    assert!(on_circle[0].direction.axis_distance(&on_circle[1].direction) >= 1e-4);
    for p in &on_circle {
        assert!(p.direction.vector()[2].abs() < 1e-6);
        assert!((p.value - h2(0.8)).abs() < 1e-9);
    }
}
