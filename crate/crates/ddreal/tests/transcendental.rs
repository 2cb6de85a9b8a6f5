use ddreal::{CDd, Cx, Dd, Real, Scalar};

// Reference values computed with 40-digit decimal arithmetic and rounded to
// the nearest hi/lo pair. Tolerance is a few ulp of the 106-bit format.
const TOL: f64 = 4e-31;

fn check(got: Dd, want: (f64, f64)) {
    let w = Dd::new(want.0, want.1);
    let d = (got - w).abs().to_f64();
    let s = w.abs().to_f64().max(1e-300);
    assert!(d / s <= TOL, "got {got:?} want {w:?} rel {:.3e}", d / s);
}

#[test]
fn exp_values() {
    check(Dd::from_f64(1.234).exp(), (3.43494186080076, 1.1416461895439605e-16));
    check(Dd::from_f64(-30.0).exp(), (9.357622968840175e-14, -2.1170146272646406e-30));
    check(Dd::from_f64(10.0).exp(), (22026.465794806718, -1.3780134700517372e-12));
    check(Dd::from_f64(0.0123).exp(), (1.0123759561005452, 3.9122708252904127e-17));
    check(Dd::from_f64(-0.75).exp(), (0.4723665527410147, 1.7984004434373214e-17));
}

#[test]
fn exp_extreme_arguments() {
    // e^x for |x| in the hundreds must stay finite and invert cleanly
    let x = Dd::from_f64(480.0);
    let e = x.exp();
    assert!(e.is_finite() && e.hi > 1e208);
    let back = e.ln();
    check(back, (480.0, 0.0));
    let tiny = (-x).exp();
    assert!(tiny.hi > 0.0 && tiny.hi < 1e-208);
}

#[test]
fn ln_values() {
    check(Dd::from_f64(7.25).ln(), (1.9810014688665833, 6.013262624124967e-17));
    let c = Dd::from_i64(1_000_000) / Dd::from_i64(12);
    check(c.ln(), (11.330603908176274, 7.414593159392749e-17));
    check(Dd::from_f64(2.5e-11).ln(), (-24.412145291060348, 6.064952499456021e-16));
}

#[test]
fn sqrt_values() {
    check(Dd::from_f64(2.0).sqrt(), (1.4142135623730951, -9.667293313452913e-17));
    check(Dd::from_f64(30.0).sqrt(), (5.477225575051661, -5.372750506994857e-17));
}

#[test]
fn sincos_values() {
    let cases: [(f64, (f64, f64), (f64, f64)); 4] = [
        (0.7, (0.644217687237691, 2.8740567927338755e-18),
              (0.7648421872844885, -4.013780434022238e-17)),
        (3.0, (0.1411200080598672, 8.577269787017502e-18),
              (-0.9899924966004454, -4.2060261566099734e-17)),
        (-12.5, (0.06632189735120068, 4.628667126141473e-18),
                (0.9977982791785807, 3.3602447434110414e-18)),
        (55.0, (-0.9997551733586199, 1.6420404189177335e-17),
               (0.022126756261955736, -1.2136939074587484e-18)),
    ];
    for (x, s, c) in cases {
        let (sv, cv) = Dd::from_f64(x).sin_cos();
        check(sv, s);
        check(cv, c);
    }
}

#[test]
fn atan2_values() {
    check(
        Dd::atan2(Dd::from_f64(0.3), Dd::from_f64(-1.2)),
        (2.896613990462929, 1.950326511428876e-16),
    );
    check(
        Dd::atan2(Dd::from_f64(-1.0), Dd::from_f64(2.0)),
        (-0.4636476090008061, -2.2698777452961687e-17),
    );
    check(
        Dd::atan2(Dd::from_f64(1.0), Dd::from_f64(1.0)),
        (0.7853981633974483, 3.061616997868383e-17),
    );
}

#[test]
fn powf_value() {
    check(
        Dd::from_f64(30.0).powf(Dd::from_f64(0.8)),
        (15.194870523363548, 2.1338407356977396e-16),
    );
}

#[test]
fn constants_consistent() {
    check(ddreal::PI, (3.141592653589793, 1.2246467991473532e-16));
    check(ddreal::TWO_PI, (6.283185307179586, 2.4492935982947064e-16));
    check(ddreal::LN_2, (0.6931471805599453, 2.3190468138462996e-17));
    check(ddreal::LN_10, (2.302585092994046, -2.1707562233822494e-16));
    check(ddreal::E, (2.718281828459045, 1.4456468917292502e-16));
    check(Dd::ONE.exp(), (2.718281828459045, 1.4456468917292502e-16));
    // sin/cos at pi/2 multiples stay pinned
    let (s, c) = ddreal::PI.sin_cos();
    assert!(s.abs().to_f64() < 1e-31 && (c + Dd::ONE).abs().to_f64() < 1e-31);
}

#[test]
fn complex_exp_rotation() {
    // e^{i pi/3} lands on the unit circle at 60 degrees
    let z = CDd::new(Dd::ZERO, ddreal::PI / Dd::from_i64(3));
    let e = z.exp();
    check(e.re, (0.5, 0.0));
    check(e.im, (0.8660254037844386, 5.0175421109034514e-17));
    check(e.abs(), (1.0, 0.0));
}

#[test]
fn complex_sqrt_and_powf() {
    let z = CDd::new(Dd::from_f64(-3.0), Dd::from_f64(4.0));
    let r = z.sqrt();
    let back = r * r;
    assert!((back - z).norm1() < 1e-30);
    assert!(r.re.to_f64() > 0.0, "principal branch has Re >= 0");
    // (-24 z)^{1/4} style quarter powers: check against powi round trip
    let w = z.powf_real(Dd::from_f64(0.25));
    assert!((w.powi(4) - z).norm1() < 1e-29);
}

#[test]
fn complex_division() {
    let a = CDd::new(Dd::from_f64(1.5), Dd::from_f64(-2.25));
    let b = CDd::new(Dd::from_f64(-0.75), Dd::from_f64(0.5));
    let q = a / b;
    assert!((q * b - a).norm1() < 1e-30);
}

#[test]
fn random_f64_agreement() {
    // dd transcendentals must agree with f64 to f64 accuracy
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    for _ in 0..2000 {
        let x: f64 = rng.gen_range(-20.0..20.0);
        let d = Dd::from_f64(x);
        assert!((d.exp().to_f64() - x.exp()).abs() <= 1e-13 * x.exp().abs().max(1e-300));
        let (s, c) = d.sin_cos();
        assert!((s.to_f64() - x.sin()).abs() < 1e-14);
        assert!((c.to_f64() - x.cos()).abs() < 1e-14);
        if x > 0.0 {
            assert!((d.ln().to_f64() - x.ln()).abs() < 1e-14 * x.ln().abs().max(1.0));
            assert!((d.sqrt().to_f64() - x.sqrt()).abs() < 1e-14 * x.sqrt());
        }
    }
}

#[test]
fn digit_string() {
    let s = Dd::new(835845.6085845627, 3.7293391294587277e-11).to_sci(31);
    // 12 e^10 sqrt(10); the format carries ~31 digits, trust 30 here
    assert!(s.starts_with("8.35845608584562703076260156739"), "{s}");
    let t = Cx::<Dd>::i().re; // silence unused-import pedantry in older toolchains
    assert_eq!(t.to_f64(), 0.0);
}

#[test]
fn digit_string_with_negative_tail() {
    // 1 - 2^{-80}: hi = 1.0 and a negative lo; naive digit extraction
    // would run the fraction negative partway through
    let v = Dd::new(1.0, -(2f64).powi(-80));
    let s = v.to_sci(30);
    assert!(s.starts_with("9.9999999999999999999999"), "{s}");
    assert!(s.ends_with("e-1"), "{s}");
    let w = Dd::new(-1.0, (2f64).powi(-60));
    let t = w.to_sci(26);
    assert!(t.starts_with("-9.99999999999999999"), "{t}");
    // round-trip through parse stays at f64 accuracy
    let p: f64 = s.parse().unwrap();
    assert!((p - 1.0).abs() < 1e-15);
}
