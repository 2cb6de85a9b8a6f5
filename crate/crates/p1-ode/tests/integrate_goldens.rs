//! End-to-end accuracy checks for the P1 integrator: frozen reference values,
//! an independent fixed-step RK4 oracle, and the first-integral contract.

use ddreal::{CDd, Cx, Dd, Scalar};
use p1_ode::{integrate_path, P1State, StepControl, TrajEvent};

fn c(re: f64, im: f64) -> CDd {
    Cx::new(Dd::from_f64(re), Dd::from_f64(im))
}

#[test]
fn ivp_from_origin_frozen_values() {
    // y(0) = y'(0) = 0 integrated to z = 1
    let start = P1State::start(CDd::zero(), CDd::zero(), CDd::zero());
    let traj = integrate_path(start, &[c(1.0, 0.0)], StepControl::default());
    assert_eq!(traj.event, TrajEvent::ReachedEnd);
    let end = traj.last();
    let y_want = Dd::new(0.1696814409079446, 1.3521084078650076e-17);
    let yp_want = Dd::new(0.5243132724041676, 3.2177312092094524e-17);
    let i_want = Dd::new(0.042000102396637116, -8.067414669483851e-19);
    assert!((end.y.re - y_want).abs().to_f64() < 1e-23);
    assert!((end.yp.re - yp_want).abs().to_f64() < 1e-23);
    assert!((end.i_path.re - i_want).abs().to_f64() < 1e-23);
    // real data on a real path: imaginary parts stay at rounding level
    assert!(end.y.im.abs().to_f64() < 1e-28);
    assert!(traj.max_drift < 1e-25, "drift {:.3e}", traj.max_drift);
}

/// Classic fixed-step RK4 for y'' = 6y^2 + z in dd, used only as an oracle.
fn rk4_to(z_end: f64, n_steps: usize) -> (Dd, Dd) {
    let h = Dd::from_f64(z_end) / Dd::from_i64(n_steps as i64);
    let mut z = Dd::ZERO;
    let mut y = Dd::ZERO;
    let mut v = Dd::ZERO;
    let f = |z: Dd, y: Dd| Dd::from_i64(6) * y * y + z;
    for _ in 0..n_steps {
        let k1y = v;
        let k1v = f(z, y);
        let half = h.mul_pwr2(0.5);
        let k2y = v + half * k1v;
        let k2v = f(z + half, y + half * k1y);
        let k3y = v + half * k2v;
        let k3v = f(z + half, y + half * k2y);
        let k4y = v + h * k3v;
        let k4v = f(z + h, y + h * k3y);
        let sixth = h / Dd::from_i64(6);
        y = y + sixth * (k1y + k2y.mul_pwr2(2.0) + k3y.mul_pwr2(2.0) + k4y);
        v = v + sixth * (k1v + k2v.mul_pwr2(2.0) + k3v.mul_pwr2(2.0) + k4v);
        z = z + h;
    }
    (y, v)
}

#[test]
fn agrees_with_rk4_oracle() {
    let start = P1State::start(CDd::zero(), CDd::zero(), CDd::zero());
    let traj = integrate_path(start, &[c(1.0, 0.0)], StepControl::default());
    let (y_rk, v_rk) = rk4_to(1.0, 4096);
    let dy = (traj.last().y.re - y_rk).abs().to_f64();
    let dv = (traj.last().yp.re - v_rk).abs().to_f64();
    assert!(dy < 1e-12, "dy {dy:.3e}");
    assert!(dv < 1e-12, "dv {dv:.3e}");
}

#[test]
fn energy_conserved_on_long_closed_path() {
    let start = P1State::start(CDd::zero(), c(0.3, 0.1), c(-0.2, 0.05));
    // rectangle excursion, total length about 26
    let path = [
        c(1.0, 0.0),
        c(1.0, 5.0),
        c(-3.0, 5.0),
        c(-3.0, 0.5),
        c(0.0, 0.5),
        c(0.0, 0.0),
    ];
    let traj = integrate_path(start, &path, StepControl::default());
    assert_eq!(traj.event, TrajEvent::ReachedEnd);
    assert!(traj.max_drift < 1e-10, "drift {:.3e}", traj.max_drift);
    // analytic continuation around a pole-free loop returns the state
    let end = traj.last();
    assert!((end.y - start.y).modulus().to_f64() < 1e-20);
    assert!((end.yp - start.yp).modulus().to_f64() < 1e-20);
    assert!(end.i_path.modulus().to_f64() < 1e-20);
}
