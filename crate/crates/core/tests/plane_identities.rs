use std::f64::consts::PI;

use approx::assert_relative_eq;
use choquard_core::bubble::*;
use choquard_core::field::{norm, norm2, DecayClass, PlaneField};
use choquard_core::quad::radial_integral;
use choquard_core::specfun::{c_alpha, AlphaParam};
use choquard_core::spheregeo::{plane_quadrature, pullback, pushforward, rho, sphere_quadrature, stereo, stereo_inv};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn alpha(a: f64) -> AlphaParam {
    AlphaParam::new(a).unwrap()
}

fn point() -> impl Strategy<Value = [f64; 2]> {
    (-20.0f64..20.0, -20.0f64..20.0).prop_map(|(a, b)| [a, b])
}

proptest! {
    #[test]
    fn stereo_round_trip(x in point()) {
        let y = stereo_inv(stereo(x)).unwrap();
        prop_assert!((y[0] - x[0]).abs() <= 1e-13 * (1.0 + norm(x)));
        prop_assert!((y[1] - x[1]).abs() <= 1e-13 * (1.0 + norm(x)));
    }

    #[test]
    fn conformal_distance(x in point(), y in point()) {
        prop_assume!(norm([x[0] - y[0], x[1] - y[1]]) > 1e-3);
        let lhs = stereo(x).distance(stereo(y));
        let rhs = norm([x[0] - y[0], x[1] - y[1]]) * rho(x) * rho(y);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
    }

    #[test]
    fn pushforward_identities(x in point(), a in 0.05f64..1.95) {
        let al = alpha(a);
        let xi = stereo(x).coords();
        let pushed_rho = pushforward(&PlaneField::new(DecayClass::Algebraic(1.0), rho));
        let v = pushed_rho.eval(stereo(x)).unwrap();
        prop_assert!((v - (1.0 + xi[2]).sqrt()).abs() <= 1e-12 * (1.0 + v));
        for j in 1..=3 {
            let pushed = pushforward(&kernel_field(al, j).unwrap()).eval(stereo(x)).unwrap();
            let expected = 0.5 * al.four_minus() * xi[j - 1];
            prop_assert!((pushed - expected).abs() <= 1e-12 * al.four_minus());
        }
    }

    #[test]
    fn kelvin_involution_and_symmetry(x in point(), a in 0.05f64..1.95) {
        prop_assume!(norm(x) > 1e-3);
        let k = kelvin_point(x).unwrap();
        let back = kelvin_point(k).unwrap();
        prop_assert!((back[0] - x[0]).abs() <= 1e-12 * norm(x) && (back[1] - x[1]).abs() <= 1e-12 * norm(x));
        let al = alpha(a);
        let (p, q) = (kernel_basis(al, x), kernel_basis(al, k));
        prop_assert!((p[0] - q[0]).abs() <= 1e-12);
        prop_assert!((p[2] + q[2]).abs() <= 1e-12);
    }

    #[test]
    fn bubble_rescaling(x in point(), mu in 0.1f64..10.0, a in 0.05f64..1.95) {
        let al = alpha(a);
        let scaled = BubbleParams::new(al, mu, [0.0, 0.0]).unwrap();
        let lhs = u_bubble(&scaled, x);
        let rhs = u_bubble(&BubbleParams::standard(al), [mu * x[0], mu * x[1]]) + 0.5 * al.four_minus() * mu.ln();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
    }

    #[test]
    fn riesz_potential_decreases_along_rays(a in 0.05f64..1.95, r in 0.0f64..50.0) {
        let p = BubbleParams::standard(alpha(a));
        prop_assert!(riesz_potential_closed(&p, [r, 0.0]) > riesz_potential_closed(&p, [r + 0.5, 0.0]));
    }
}

#[test]
fn stereo_of_unit_circle_is_equator() {
    assert!(stereo([0.0, 1.0]).coords()[2].abs() < 1e-16);
}

#[test]
fn transport_identity() {
    let direct = sphere_quadrature(8).unwrap().integrate(|p| p.coords()[2].powi(2));
    let rule = plane_quadrature(8).unwrap();
    let transported = rule.integrate(|x| stereo(x).coords()[2].powi(2) * rho(x).powi(4));
    assert_relative_eq!(direct, 4.0 * PI / 3.0, max_relative = 1e-13);
    assert_relative_eq!(transported, direct, max_relative = 1e-12);
}

#[test]
fn pullback_of_pushforward_is_pointwise_identity() {
    let f = kernel_field(alpha(0.8), 3).unwrap();
    let g = pullback(&pushforward(&f));
    for x in [[0.0, 0.0], [3.0, -2.0], [1e3, 1.0]] {
        assert_eq!(g.eval(x), f.eval(x));
    }
}

#[test]
fn plane_rule_mass_density() {
    let p = BubbleParams::standard(alpha(1.0));
    let v = plane_quadrature(16).unwrap().integrate(|x| mass_density(&p, x));
    assert_relative_eq!(v, PI * (3.0 / PI).powf(2.0 / 3.0), max_relative = 1e-12);
    assert_relative_eq!(v, 3.046_469, max_relative = 1e-5);
}

#[test]
fn bubble_log_asymptotics() {
    for &a in &[0.3, 1.0, 1.7] {
        let p = BubbleParams::new(alpha(a), 2.0, [1.0, -1.0]).unwrap();
        let slope = (u_bubble(&p, [2e6, 0.0]) - u_bubble(&p, [1e6, 0.0])) / 2f64.ln();
        assert_relative_eq!(slope, -(4.0 - a), max_relative = 1e-5);
    }
}

#[test]
fn liouville_scaling_and_mass() {
    for x in [[0.3, 0.1], [2.0, -4.0]] {
        let two = liouville_bubble(2.0, [0.0, 0.0], x).unwrap();
        let one = liouville_bubble(1.0, [0.0, 0.0], [2.0 * x[0], 2.0 * x[1]]).unwrap();
        assert_relative_eq!(two, one + 2.0 * 2f64.ln(), max_relative = 1e-13);
    }
    let m = liouville_mass(1.0, [0.0, 0.0]).unwrap();
    assert_relative_eq!(m.value, 8.0 * PI, max_relative = 1e-10);
    let m = liouville_mass(0.3, [5.0, 2.0]).unwrap();
    assert_relative_eq!(m.value, 8.0 * PI, max_relative = 1e-10);
}

#[test]
fn mass_identities_and_invariance() {
    for &a in &[0.5, 1.0, 1.5] {
        let al = alpha(a);
        let c = c_alpha(al);
        let (m1, m2) = identity_mass(&BubbleParams::standard(al)).unwrap();
        assert_relative_eq!(m1.value, PI * c * c, max_relative = 1e-10);
        assert_relative_eq!(m2.value, 2.0 * (4.0 - a) * PI, max_relative = 1e-6);
        let (n1, n2) = identity_mass(&BubbleParams::new(al, 3.0, [2.0, -1.0]).unwrap()).unwrap();
        assert_relative_eq!(n1.value, m1.value, max_relative = 1e-10);
        assert_relative_eq!(n2.value, m2.value, max_relative = 1e-10);
    }
    let (m1, _) = identity_mass(&BubbleParams::standard(alpha(0.5))).unwrap();
    assert_relative_eq!(m1.value, PI * c_alpha(alpha(0.5)).powi(2), max_relative = 1e-12);
}

#[test]
fn unreduced_double_integral_is_close() {
    let quad = PlaneQuad { radial_nodes: 8, angles: 32, sphere_level: 8 };
    let v = identity_mass_unreduced(alpha(1.0), &quad).unwrap();
    assert_relative_eq!(v.value, 6.0 * PI, max_relative = 1e-4);
}

#[test]
fn riesz_identity_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let quad = PlaneQuad::default();
    for &a in &[0.5, 1.5] {
        let p = BubbleParams::standard(alpha(a));
        for _ in 0..5 {
            let r = rng.gen_range(0.1..5.0);
            let t = rng.gen_range(0.0..2.0 * PI);
            let x = [r * t.cos(), r * t.sin()];
            let q = riesz_potential_quad(&p, x, &quad).unwrap();
            assert_relative_eq!(q.value, riesz_potential_closed(&p, x), max_relative = 1e-8);
        }
    }
    let shifted = BubbleParams::new(alpha(1.0), 2.0, [0.5, -1.0]).unwrap();
    let q = riesz_potential_quad(&shifted, [1.0, 1.0], &quad).unwrap();
    assert_relative_eq!(q.value, riesz_potential_closed(&shifted, [1.0, 1.0]), max_relative = 1e-8);
}

#[test]
fn orthogonality_of_kernel_elements() {
    let quad = PlaneQuad::default();
    for &a in &[0.5, 1.0, 1.5] {
        let al = alpha(a);
        let scale = PI * c_alpha(al).powi(2);
        for j in 1..=3 {
            let v = orthogonality_integral(al, &kernel_field(al, j).unwrap(), &quad).unwrap();
            assert!(v.value.abs() <= 1e-10 * scale, "alpha={a} j={j}: {}", v.value);
        }
        let one = orthogonality_integral(al, &PlaneField::constant(1.0), &quad).unwrap();
        assert_relative_eq!(one.value, scale, max_relative = 1e-12);
    }
    // The φ₃ radial cancellation by itself.
    let z = radial_integral(|r| (1.0 - r * r) / (1.0 + r * r).powi(3), 32).unwrap();
    assert!(z.value.abs() < 1e-15);
}

#[test]
fn weighted_norms_of_kernel_elements() {
    let quad = PlaneQuad::default();
    let al = alpha(1.0);
    for j in 1..=3 {
        let w = weighted_norms(&kernel_field(al, j).unwrap(), &quad).unwrap();
        assert_relative_eq!(w.l2w * w.l2w, 3.0 * PI / 4.0, max_relative = 1e-12);
        assert_relative_eq!(w.grad_l2 * w.grad_l2, 6.0 * PI, max_relative = 1e-12);
        assert_relative_eq!(w.energy_ratio().unwrap(), 8.0, max_relative = 1e-12);
        assert_relative_eq!(w.h1w * w.h1w, w.grad_l2.powi(2) + w.l2w.powi(2), max_relative = 1e-12);
    }
    let zero = weighted_norms(&PlaneField::zero(), &quad).unwrap();
    assert_eq!((zero.l2w, zero.grad_l2, zero.h1w), (0.0, 0.0, 0.0));
    assert!(zero.energy_ratio().is_none());
}

#[test]
fn finite_difference_gradients_give_same_norms() {
    let al = alpha(0.5);
    let analytic = kernel_field(al, 1).unwrap();
    let plain = PlaneField::new(DecayClass::Algebraic(1.0), move |x| analytic.eval(x));
    let w = weighted_norms(&plain, &PlaneQuad::default()).unwrap();
    assert_relative_eq!(w.energy_ratio().unwrap(), 8.0, max_relative = 1e-7);
}

#[test]
fn energy_bound_for_random_combinations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let quad = PlaneQuad::default();
    for &a in &[0.5, 1.0, 1.5] {
        let al = alpha(a);
        for _ in 0..4 {
            let terms: Vec<(f64, PlaneField)> =
                (1..=3).map(|j| (rng.gen_range(-1.0..1.0), kernel_field(al, j).unwrap())).collect();
            let w = weighted_norms(&PlaneField::combination(&terms), &quad).unwrap();
            assert!(w.grad_l2.powi(2) <= 4.0 * (4.0 - a) * w.l2w.powi(2));
            assert!(w.h1w <= a_alpha(al) * w.l2w);
            assert_relative_eq!(w.energy_ratio().unwrap(), 8.0, max_relative = 1e-10);
        }
    }
}

#[test]
fn linearized_residual() {
    let quad = PlaneQuad::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for &a in &[0.5, 1.0, 1.5] {
        let al = alpha(a);
        for j in 1..=3 {
            let phi = kernel_field(al, j).unwrap();
            for _ in 0..3 {
                let r = rng.gen_range(0.1..5.0);
                let t = rng.gen_range(0.0..2.0 * PI);
                let x = [r * t.cos(), r * t.sin()];
                let closed = kernel_image_closed(al, j, x).unwrap();
                let fd = -phi.laplacian_fd(x, 1e-3);
                let applied = n_apply(al, &phi, x, &quad).unwrap();
                let scale = 8.0 * al.four_minus() / (1.0 + r * r).powi(2);
                assert!((fd - closed).abs() <= 1e-4 * scale, "fd a={a} j={j}");
                assert!((applied - closed).abs() <= 1e-8 * scale, "n_apply a={a} j={j}");
                let n1 = n1_apply(al, &phi, x, &quad).unwrap().value;
                let d = 1.0 + norm2(x);
                assert!((n1 - 2.0 * a * phi.eval(x) / (d * d)).abs() <= 1e-8 * scale);
            }
        }
    }
    let zero = n_apply(alpha(1.0), &PlaneField::zero(), [0.3, 0.2], &quad).unwrap();
    assert_eq!(zero, 0.0);
    let phi1 = kernel_field(alpha(1.0), 1).unwrap();
    assert_relative_eq!(-phi1.laplacian_fd([1.0, 0.0], 1e-3), 3.0, max_relative = 1e-6);
    assert_relative_eq!(n_apply(alpha(1.0), &phi1, [1.0, 0.0], &quad).unwrap(), 3.0, max_relative = 1e-9);
}

#[test]
fn log_potential_inverts_laplacian() {
    let quad = PlaneQuad::default();
    let al = alpha(1.0);
    let f = kernel_image_field(al, 3).unwrap();
    let h = 1e-2;
    for x in [[0.2, 0.1], [0.0, -0.5], [1.8, 0.4], [-2.0, 1.5], [0.35, 0.35]] {
        let k = |y: [f64; 2]| log_potential(&f, y, &quad).unwrap().value;
        let lap = (k([x[0] + h, x[1]]) + k([x[0] - h, x[1]]) + k([x[0], x[1] + h]) + k([x[0], x[1] - h]) - 4.0 * k(x))
            / (h * h);
        let fx = f.eval(x);
        assert!((-lap - fx).abs() <= 1e-4 * fx.abs(), "x={x:?}: {} vs {fx}", -lap);
    }
}

#[test]
fn log_potential_symmetry_and_growth() {
    let quad = PlaneQuad::default();
    let al = alpha(1.0);
    let f = kernel_image_field(al, 3).unwrap();
    for x in [[0.7, 0.2], [2.5, -1.0]] {
        let a = log_potential(&f, x, &quad).unwrap().value;
        let b = log_potential(&f, [-x[0], -x[1]], &quad).unwrap().value;
        assert!((a - b).abs() < 1e-12);
    }
    let p = BubbleParams::standard(al);
    let mass = PI * c_alpha(al).powi(2);
    let unit = PlaneField::new(DecayClass::Algebraic(4.0), move |x| mass_density(&p, x) / mass);
    let tail: Vec<f64> = [10.0, 100.0, 1000.0]
        .iter()
        .map(|&r| log_potential(&unit, [r, 0.0], &quad).unwrap().value + r.ln() / (2.0 * PI))
        .collect();
    assert!(tail.iter().all(|v| v.abs() < 2.0), "{tail:?}");
    assert!((tail[2] - tail[1]).abs() < (tail[1] - tail[0]).abs());
}

#[test]
fn bracket_potential_regimes() {
    let quad = PlaneQuad::default();
    for &theta in &[1.5, 2.0, 3.0] {
        for &r in &[1.0, 10.0, 100.0] {
            let x = [r, 0.0];
            let v = bracket_potential(x, theta, &quad).unwrap().value;
            let ratio = v / bracket_bound(x, theta);
            assert!((0.01..=100.0).contains(&ratio), "theta={theta} r={r}: {ratio}");
        }
    }
}

#[test]
fn kernel_elements_far_field() {
    let a = alpha(1.2);
    for j in 1..=2 {
        let ff = FarField::sample(&kernel_field(a, j).unwrap(), [1.0, 1.0]).unwrap();
        assert!(ff.limit(1e-3).unwrap().abs() < 1e-2);
    }
    let ff = FarField::sample(&kernel_field(a, 3).unwrap(), [0.0, 1.0]).unwrap();
    assert_relative_eq!(ff.limit(1e-3).unwrap(), -0.5 * a.four_minus(), max_relative = 1e-6);
}

#[test]
fn scaled_kernel_elements_are_parameter_derivatives() {
    let p = BubbleParams::new(alpha(0.9), 1.7, [0.4, -0.3]).unwrap();
    let x = [1.1, 0.6];
    let h = 1e-6;
    let phi = kernel_basis_scaled(&p, x);
    let shift = |dz: [f64; 2], dm: f64| {
        let q = BubbleParams::new(p.alpha(), p.mu() + dm, [p.zeta()[0] + dz[0], p.zeta()[1] + dz[1]]).unwrap();
        u_bubble(&q, x)
    };
    let d1 = (shift([h, 0.0], 0.0) - shift([-h, 0.0], 0.0)) / (2.0 * h) / p.mu();
    let dmu = (shift([0.0, 0.0], h) - shift([0.0, 0.0], -h)) / (2.0 * h) * p.mu();
    assert_relative_eq!(phi[0], d1, max_relative = 1e-7);
    assert_relative_eq!(phi[2], dmu, max_relative = 1e-7);
}
