//! Property tests for the scalar functions, the geometric lemmas behind the
//! bounds, and the constructor identities.

use proptest::prelude::*;

use corrspec::bounds;
use corrspec::construct;
use corrspec::domains;
use corrspec::matrix::SquareMat;
use corrspec::scaling::{g_n, legal_domain, s, s_n};
use corrspec::spectral::{default_degeneracy_tol, eigendecompose, sym_eigen, w1_vs_wmax, W1VsWmax};

fn probability_vector() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1e-6..1.0f64, 2..40).prop_map(|raw| {
        let total: f64 = raw.iter().sum();
        raw.into_iter().map(|x| x / total).collect()
    })
}

fn unit_vector(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, n..=n)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-6)
        .prop_map(|v| {
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.into_iter().map(|x| x / norm).collect()
        })
}

fn legal_point() -> impl Strategy<Value = (f64, f64)> {
    (0.0..std::f64::consts::PI, 1e-3..1.0f64).prop_map(|(phi, r)| (r * phi.cos(), r * phi.sin()))
}

proptest! {
    // Share concentration: a probability vector with squared norm alpha has
    // a component of size at least s(alpha).
    #[test]
    fn degeneration_lower_bound(p in probability_vector()) {
        let alpha: f64 = p.iter().map(|x| x * x).sum();
        let max = p.iter().cloned().fold(0.0f64, f64::max);
        prop_assert!(max >= s(alpha).unwrap() - 1e-12);
    }

    // Centered Cauchy-Schwarz against the diagonal vector.
    #[test]
    fn centered_cauchy_schwarz(seed_x in unit_vector(12), seed_y in unit_vector(12)) {
        let n = seed_x.len() as f64;
        let dot: f64 = seed_x.iter().zip(&seed_y).map(|(a, b)| a * b).sum();
        let px = seed_x.iter().sum::<f64>() / n.sqrt();
        let py = seed_y.iter().sum::<f64>() / n.sqrt();
        let lhs = (dot - px * py).powi(2);
        let rhs = (1.0 - px * px) * (1.0 - py * py);
        prop_assert!(lhs <= rhs + 1e-12);
    }

    #[test]
    fn s_is_monotone(x in 0.0..1.0f64, y in 0.0..1.0f64) {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        prop_assert!(s(lo).unwrap() <= s(hi).unwrap() + 1e-15);
    }

    #[test]
    fn s_n_dominates_s(n in 1usize..200, x in 0.0..1.0f64) {
        prop_assert!(s_n(n, x).unwrap() >= s(x).unwrap() - 1e-15);
        prop_assert!(g_n(n, x) >= x - 1e-15);
        prop_assert!(g_n(n, x) >= g_n(n + 1, x) - 1e-15);
    }

    // The dimension-aware bound dominates its dimension-free relaxation.
    #[test]
    fn scaled_bounds_dominate_universal((c, sigma) in legal_point(), n in 2usize..500) {
        prop_assume!(legal_domain(n, c, sigma));
        let lb = bounds::lambda1_bound(n, c, sigma).unwrap();
        let universal = n as f64 * f64::max(c, s(c * c + sigma * sigma).unwrap());
        prop_assert!(lb >= universal - 1e-12);
    }

    // The w_1 bound is never weaker than the asymptotic comparator.
    #[test]
    fn w1_bound_dominates_comparator((c, sigma) in legal_point(), n in 2usize..500) {
        prop_assume!(c > 0.0 && legal_domain(n, c, sigma));
        let w1 = bounds::w1_bound(n, c, sigma).unwrap();
        let fk = bounds::fueredi_komlos_reference(c, sigma).unwrap();
        prop_assert!(w1 >= fk - 1e-12);
    }

    #[test]
    fn diagonal_cone_inside_polar_angle((c, sigma) in legal_point(), n in 2usize..500) {
        prop_assume!(c >= 0.0 && legal_domain(n, c, sigma));
        let theta = bounds::theta_min_bound(n, c, sigma).unwrap();
        let polar = bounds::polar(c, sigma).unwrap();
        prop_assert!(theta <= polar.phi_c + 1e-12);
    }

    #[test]
    fn triangle_points_sit_in_b1(n in prop::sample::select(vec![4usize, 6, 8, 12]),
                                 c in 0.0..0.4f64, frac in 0.01..0.99f64) {
        let nf = n as f64;
        let lower = (nf / (nf - 2.0)).sqrt() * c;
        let upper = ((nf - 2.0) / nf).sqrt() * (1.0 - c);
        prop_assume!(lower < upper);
        let sigma = lower + frac * (upper - lower);
        prop_assume!(domains::counterexample_triangle(n, c, sigma).unwrap());
        if c > 0.0 {
            let r = domains::region_membership(Some(n), c, sigma);
            prop_assert!(r.b1);
            prop_assert!(r.a2);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // Both product identities of the tensor construction.
    #[test]
    fn tensor_characteristic_identities(n in 2usize..6, m in 2usize..6,
                                        sa in any::<u64>(), sb in any::<u64>()) {
        let a = construct::random_correlation(n, 2 * n, sa).unwrap();
        let b = construct::random_correlation(m, 2 * m, sb).unwrap();
        let t = construct::tensor_product(&a, &b);
        let (ca, cb, ct) = (a.characteristic(), b.characteristic(), t.characteristic());
        prop_assert!((g_n(n * m, ct.c) - g_n(n, ca.c) * g_n(m, cb.c)).abs() < 1e-12);
        let lhs = g_n(n * m, ct.c * ct.c + ct.sigma * ct.sigma);
        let rhs = g_n(n, ca.c * ca.c + ca.sigma * ca.sigma)
            * g_n(m, cb.c * cb.c + cb.sigma * cb.sigma);
        prop_assert!((lhs - rhs).abs() < 1e-12);
    }

    // Mixing with the identity maps the spectrum affinely and keeps weights.
    #[test]
    fn convex_identity_affine_spectrum(n in 2usize..12, seed in any::<u64>(),
                                       mu in 0.0..0.95f64) {
        let base = construct::random_correlation(n, 2 * n, seed).unwrap();
        let mixed = construct::convex_with_identity(&base, mu).unwrap();
        let sb = eigendecompose(&base).unwrap();
        let sm = eigendecompose(&mixed).unwrap();
        for j in 0..n {
            let expected = (1.0 - mu) * sb.eigenvalues[j] + mu;
            prop_assert!((sm.eigenvalues[j] - expected).abs() < 1e-10);
            prop_assert!((sm.weights[j] - sb.weights[j]).abs() < 1e-9);
        }
        let ch = mixed.characteristic();
        let cb = base.characteristic();
        prop_assert!((ch.c - (1.0 - mu) * cb.c).abs() < 1e-12);
        prop_assert!((ch.sigma - (1.0 - mu) * cb.sigma).abs() < 1e-12);
    }

    // The embedding keeps w1 < wmax when no eigenvalue equals one.
    #[test]
    fn embed_preserves_misalignment(n in prop::sample::select(vec![4usize, 6, 8]),
                                    c in 0.01..0.2f64, frac in 0.05..0.95f64) {
        let nf = n as f64;
        let lower = (nf / (nf - 2.0)).sqrt() * c;
        let upper = ((nf - 2.0) / nf).sqrt() * (1.0 - c);
        prop_assume!(lower < upper);
        let sigma = lower + frac * (upper - lower);
        let inner = construct::counterexample_for(n, c, sigma).unwrap();
        let spec = eigendecompose(&inner).unwrap();
        prop_assert!(spec.eigenvalues.iter().all(|l| (l - 1.0).abs() > 1e-9));
        let outer = construct::embed(&inner);
        prop_assert_eq!(
            w1_vs_wmax(&outer, default_degeneracy_tol(n + 1)).unwrap(),
            W1VsWmax::W1LessThanWmax
        );
    }

    // The moment bound never exceeds the true top eigenvalue of a PSD matrix.
    #[test]
    fn psd_bound_is_sound(n in 2usize..10, k in 1usize..12, seed in any::<u64>()) {
        let mut rng = corrspec::rng::SeededRng::new(seed);
        let rows: Vec<Vec<f64>> =
            (0..k).map(|_| (0..n).map(|_| rng.normal()).collect()).collect();
        let mut a = SquareMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = rows.iter().map(|r| r[i] * r[j]).sum();
                a.set(i, j, dot);
            }
        }
        let trace = a.trace();
        prop_assume!(trace > 1e-9);
        let bound = bounds::psd_top_eig_bound(&a).unwrap();
        let (eigs, _) = sym_eigen(&a).unwrap();
        prop_assert!(bound <= eigs[0] + 1e-9, "bound {} vs top {}", bound, eigs[0]);
    }

    // Gram matrices land inside the legal domain.
    #[test]
    fn gram_characteristic_is_legal(n in 2usize..12, rows in 1usize..30, seed in any::<u64>()) {
        let m = construct::random_correlation(n, rows, seed).unwrap();
        let ch = m.characteristic();
        prop_assert!(legal_domain(n, ch.c, ch.sigma));
    }

    // File round trips: JSON is exact, CSV is accurate to the printed digits.
    #[test]
    fn matrix_file_round_trip(n in 2usize..8, seed in any::<u64>()) {
        use corrspec::io::{parse_matrix, write_matrix, MatrixFormat};
        let m = construct::random_correlation(n, 2 * n, seed).unwrap();
        let json = write_matrix(m.as_square(), MatrixFormat::Json);
        let back = parse_matrix(&json, MatrixFormat::Json).unwrap();
        prop_assert_eq!(back.data(), m.as_square().data());

        let csv = write_matrix(m.as_square(), MatrixFormat::Csv);
        let back = parse_matrix(&csv, MatrixFormat::Csv).unwrap();
        for (a, b) in back.data().iter().zip(m.as_square().data()) {
            prop_assert!((a - b).abs() < 1e-11);
        }
        // The reparsed matrix is still a valid correlation matrix.
        prop_assert!(corrspec::CorrelationMatrix::from_square(back).is_ok());
    }

    // Triangle membership is exactly what the constructor accepts.
    #[test]
    fn triangle_gate_matches_constructor(n in prop::sample::select(vec![4usize, 6]),
                                         c in -0.3..0.5f64, sigma in 0.0..1.0f64) {
        let inside = domains::counterexample_triangle(n, c, sigma).unwrap();
        let built = construct::counterexample_for(n, c, sigma);
        prop_assert_eq!(inside, built.is_ok());
        if let Ok(m) = built {
            let ch = m.characteristic();
            prop_assert!((ch.c - c).abs() < 1e-9 && (ch.sigma - sigma).abs() < 1e-9);
        }
    }
}
