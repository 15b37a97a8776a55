use qwalk_core::spectral::{
    allowed_data, envelope, hidden_r, mu_prime, mu_second, rate_h, rate_h_from_moduli, saddle_t,
};
use qwalk_core::{lambda_functional, CoinMatrix, InitialSpinor, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn random_instance(rng: &mut ChaCha8Rng) -> (CoinMatrix, InitialSpinor, f64) {
    let chi: f64 = rng.gen_range(0.1..PI / 2.0 - 0.1);
    let coin = CoinMatrix::new(
        C64::from_polar(chi.cos(), rng.gen_range(0.0..2.0 * PI)),
        C64::from_polar(chi.sin(), rng.gen_range(0.0..2.0 * PI)),
    )
    .unwrap();
    let psi: f64 = rng.gen_range(0.0..PI / 2.0);
    let phi = InitialSpinor::new(
        C64::from_polar(psi.cos(), rng.gen_range(0.0..2.0 * PI)),
        C64::from_polar(psi.sin(), rng.gen_range(0.0..2.0 * PI)),
    )
    .unwrap();
    let a = coin.abs_a();
    let eta = rng.gen_range(-a + 1e-2..a - 1e-2);
    (coin, phi, eta)
}

#[test]
fn saddle_and_curvature() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..100 {
        let (coin, _, eta) = random_instance(&mut rng);
        let t = saddle_t(&coin, eta).unwrap();
        assert!((mu_prime(&coin, t).unwrap() - eta).abs() < 1e-10);
        let (a, b) = (coin.abs_a(), coin.abs_b());
        let expected = (1.0 - eta * eta) * (a * a - eta * eta).sqrt() / b;
        assert!((mu_second(&coin, t).unwrap() - expected).abs() < 1e-8);
    }
}

#[test]
fn boundary_values_sum_to_one_plus_eta_lambda() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..100 {
        let (coin, phi, eta) = random_instance(&mut rng);
        let data = allowed_data(&coin, &phi, eta).unwrap();
        let lambda = lambda_functional(&coin, &phi).unwrap();
        assert!((data.boundary_norm() - (1.0 + eta * lambda)).abs() < 1e-10);
        assert!(data.t.abs() < PI / 2.0);
    }
}

#[test]
fn theta_second_derivative() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let step = 1e-4;
    for _ in 0..50 {
        let (coin, phi, eta) = random_instance(&mut rng);
        let th = |e: f64| allowed_data(&coin, &phi, e).unwrap().theta;
        let fd = (th(eta + step) - 2.0 * th(eta) + th(eta - step)) / (step * step);
        let exact = -2.0 * PI * envelope(&coin, eta).unwrap();
        assert!(((fd - exact) / exact).abs() < 1e-4);
    }
}

#[test]
fn rate_function_on_a_fine_grid() {
    let coins = [
        CoinMatrix::hadamard(),
        CoinMatrix::new(C64::new(0.3, 0.4), C64::new(0.0, 0.75f64.sqrt())).unwrap(),
    ];
    for coin in coins {
        let a = coin.abs_a();
        let grid: Vec<f64> = (1..1000)
            .map(|k| a + (1.0 - a) * k as f64 / 1000.0)
            .collect();
        let h: Vec<f64> = grid.iter().map(|&x| rate_h(&coin, x).unwrap()).collect();
        for (x, hx) in grid.iter().zip(&h) {
            assert!(*hx > 0.0);
            assert!((hx - rate_h_from_moduli(&coin, *x).unwrap()).abs() < 1e-12);
            assert!(hidden_r(&coin, *x).unwrap() > 1.0);
        }
        for w in h.windows(3) {
            assert!(w[0] - 2.0 * w[1] + w[2] > 0.0);
            assert!(w[1] > w[0]);
        }
        assert!(rate_h(&coin, a + 1e-6).unwrap().abs() < 1e-4);
        assert!((rate_h(&coin, 1.0 - 1e-6).unwrap() + 2.0 * a.ln()).abs() < 1e-4);
    }
}
