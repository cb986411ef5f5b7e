use std::sync::{Arc, Mutex};

use proptest::prelude::*;
use shishkin_rk::meshgen::{generating_function, transition_point};
use shishkin_rk::prelude::*;

fn poly2(z: f64) -> f64 {
    1.0 + z + z * z / 2.0
}

fn poly3(z: f64) -> f64 {
    1.0 + z + z * z / 2.0 + z * z * z / 6.0
}

fn gauss_factor(z: f64) -> f64 {
    (1.0 + z / 2.0 + z * z / 12.0) / (1.0 - z / 2.0 + z * z / 12.0)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sigma_in_range(k in 2u32..=20, e in 0i32..=30, n in 1u32..=3, b in prop::sample::select(vec![0.5, 1.0, 2.0])) {
        let eps = 2f64.powi(-e);
        let p = ShishkinParams { method_order: n, layer_constant: b, ..ShishkinParams::new(1 << k, eps) };
        let sigma = transition_point(&p).unwrap();
        prop_assert!(sigma > 0.0 && sigma <= 0.5);
    }

    #[test]
    fn generating_function_monotone(sigma in 1e-9f64..=0.5, alpha in 0.05f64..0.95, a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let x_lo = generating_function(sigma, alpha, lo).unwrap();
        let x_hi = generating_function(sigma, alpha, hi).unwrap();
        prop_assert!(x_lo <= x_hi);
        prop_assert!((0.0..=1.0).contains(&x_lo) && (0.0..=1.0).contains(&x_hi));
    }

    #[test]
    fn generating_function_continuous_at_split(sigma in 1e-9f64..=0.5) {
        let at = generating_function(sigma, 0.5, 0.5).unwrap();
        prop_assert_eq!(at, sigma);
        let right = generating_function(sigma, 0.5, 0.5 + 1e-12).unwrap();
        prop_assert!((right - sigma).abs() < 1e-11);
    }

    #[test]
    fn shishkin_meshes_validate(k in 2u32..=17, e in 1i32..=30) {
        let mesh = Mesh::shishkin(&ShishkinParams::new(1 << k, 2f64.powi(-e))).unwrap();
        prop_assert!(mesh.validate().is_empty(), "{:?}", mesh.validate());
    }

    #[test]
    fn two_stage_schemes_match_quadratic(lambda in -50.0f64..50.0, h in 1e-4f64..0.5, y in -5.0f64..5.0) {
        let p = Problem::linear("lambda", 1.0, (0.0, 1.0), 1.0, move |_| lambda, |_| 0.0).unwrap();
        let z = lambda * h;
        for name in [SchemeName::Heun, SchemeName::Rk2Ralston, SchemeName::Rk2Midpoint] {
            let got = explicit_rk_step(&name.tableau(), &p, 0.0, y, h).unwrap();
            let want = y * poly2(z);
            prop_assert!((got - want).abs() <= 1e-14 * (y.abs() * (1.0 + z.abs() + z * z)), "{} {} {}", name, got, want);
        }
    }

    #[test]
    fn gauss2_constant_coefficients(lambda in -100.0f64..-1e-3, q in -3.0f64..3.0, h in 1e-4f64..0.5, y in -5.0f64..5.0) {
        let p = Problem::linear("affine", 1.0, (0.0, 1.0), 1.0, move |_| lambda, move |_| q).unwrap();
        let z = lambda * h;
        let r = gauss_factor(z);
        // Fixed point −q/λ is preserved, deviations scale by R(z).
        let want = r * y + (r - 1.0) * (q / lambda);
        let got = gauss2_linear_step(&p, 0.0, y, h).unwrap();
        let scale = y.abs() + (q / lambda).abs();
        prop_assert!((got - want).abs() <= 1e-13 * scale.max(1e-300), "{} vs {}", got, want);
    }

    #[test]
    fn heun_driver_matches_hand_coded(x in 0.0f64..0.9, y in -3.0f64..3.0, frac in 0.0f64..1.0, e in 0i32..12, which in 0usize..2) {
        let eps = 2f64.powi(-e);
        let p = Problem::builtin(BuiltinName::ALL[which], eps).unwrap();
        let h = frac * (1.0 - x);
        let k1 = p.rhs(x, y).unwrap();
        let k2 = p.rhs(x + h, y + h * k1).unwrap();
        let hand = y + 0.5 * h * (k1 + k2);
        let driver = explicit_rk_step(&SchemeName::Heun.tableau(), &p, x, y, h).unwrap();
        prop_assert!(rel(driver, hand) <= 1e-15 || driver == hand, "{} vs {}", driver, hand);
    }
}

#[test]
fn stability_polynomials_on_fixed_arguments() {
    for z in [-0.5, -0.1, 0.1] {
        // λ = z / h with h = 0.5 keeps the step inside [0, 1].
        let h = 0.5;
        let lambda = z / h;
        let p = Problem::linear("lambda", 1.0, (0.0, 1.0), 1.0, move |_| lambda, |_| 0.0).unwrap();
        for name in SchemeName::ALL.into_iter().filter(|s| s.is_explicit()) {
            let got = explicit_rk_step(&name.tableau(), &p, 0.0, 1.0, h).unwrap();
            let want = if name.tableau().stages() == 2 { poly2(z) } else { poly3(z) };
            assert!(rel(got, want) <= 1e-15, "{name} z={z}: {got} vs {want}");
        }
        let got = gauss2_linear_step(&p, 0.0, 1.0, h).unwrap();
        assert!(rel(got, gauss_factor(z)) <= 1e-13, "gauss2 z={z}");
    }
}

#[test]
fn integrate_takes_n_steps_inside_the_domain() {
    for scheme in SchemeName::ALL {
        let seen: Arc<Mutex<Vec<f64>>> = Arc::default();
        let log = seen.clone();
        let eps = 2f64.powi(-8);
        let base = Problem::builtin(BuiltinName::Layer1, eps).unwrap();
        let inner = base.clone();
        let log_p = seen.clone();
        let log_q = seen.clone();
        let counting = Problem::new("counting", eps, (0.0, 0.0), 1.0, move |x, y| {
            log.lock().unwrap().push(x);
            inner.rhs(x, y).unwrap()
        })
        .unwrap()
        .with_linear_form(shishkin_rk::ivp::LinearForm {
            p: Arc::new(move |x| {
                log_p.lock().unwrap().push(x);
                -x / eps
            }),
            q: Arc::new({
                let b = base.clone();
                move |x| {
                    log_q.lock().unwrap().push(x);
                    b.linear_coeffs(x).unwrap().1
                }
            }),
        });
        let mesh = Mesh::shishkin(&ShishkinParams::new(256, eps)).unwrap();
        let traj = integrate(scheme, &counting, &mesh).unwrap();
        assert_eq!(traj.values.len(), 257);

        let xs = seen.lock().unwrap();
        // Explicit schemes evaluate f once per stage; gauss2 evaluates p and q
        // at two stage points.
        let per_step = if scheme.is_explicit() { scheme.tableau().stages() } else { 4 };
        assert_eq!(xs.len(), 256 * per_step, "{scheme}");
        assert!(xs.iter().all(|&x| (-1e-12..=1.0 + 1e-12).contains(&x)), "{scheme}");
    }
}

#[test]
fn sigma_equal_to_split_reproduces_uniform() {
    for k in 2..=12 {
        let n = 1usize << k;
        let shishkin = Mesh::from_sigma(n, 0.5, 0.5).unwrap();
        let uniform = Mesh::uniform(n, 0.0, 1.0).unwrap();
        for (a, b) in shishkin.nodes().iter().zip(uniform.nodes()) {
            assert!(*a == *b || rel(*a, *b) <= 1e-15, "N={n}: {a} vs {b}");
        }
    }
}
