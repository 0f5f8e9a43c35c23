use num_complex::Complex64;
use orbik3::genus::*;
use orbik3::scalar::rint;
use orbik3::Rat;

fn zeta_c(k: i64) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 24.0)
}

fn cyclo_to_c(c: &Cyclo) -> Complex64 {
    c.coefficients()
        .iter()
        .enumerate()
        .map(|(i, x)| zeta_c(i as i64) * num_traits::ToPrimitive::to_f64(x).unwrap())
        .sum()
}

#[test]
fn cyclotomic_ring() {
    let z = Cyclo::zeta_pow(1);
    assert_eq!(Cyclo::zeta_pow(24), Cyclo::one());
    assert_eq!(Cyclo::zeta_pow(12), Cyclo::one().neg());
    assert_eq!(z.mul(&z.conj()), Cyclo::one());
    let x = Cyclo::zeta_pow(5).add(&Cyclo::zeta_pow(2)).add(&Cyclo::from_scalar(rint(3)));
    assert_eq!(x.mul(&x.inverse().unwrap()), Cyclo::one());
    for k in -30..30 {
        let d = cyclo_to_c(&Cyclo::zeta_pow(k)) - zeta_c(k);
        assert!(d.norm() < 1e-12);
    }
}

#[test]
fn theta_values() {
    let t1: Series = theta_series(ThetaSpec::jacobi(1, 0, 0), 4);
    assert!(t1.substitute_y(0, 0).is_zero());
    let t3: Series = theta_series(ThetaSpec::jacobi(3, 0, 0), 4);
    assert_eq!(t3.substitute_y(0, 0).to_string(), "1 + q^(1/2)(2) + q^2(2)");
    let t3 = theta_series::<Rat>(ThetaSpec::jacobi(3, 0, 0), 5).substitute_y(0, 0);
    assert_eq!(t3.coefficient(108, 0), Cyclo::from_scalar(rint(2)));
    let t2: Series = theta_series(ThetaSpec::jacobi(2, 0, 0), 7);
    let t2 = t2.substitute_y(0, 0);
    for q in [3, 27, 75, 147] {
        assert_eq!(t2.coefficient(q, 0), Cyclo::from_scalar(rint(2)), "q^{q}/24");
    }
    assert_eq!(t2.q_exponents(), vec![3, 27, 75, 147]);
}

#[test]
fn division() {
    let t2: Series = theta_series(ThetaSpec::jacobi(2, 0, 0), 4);
    let d = t2.substitute_y(0, 0);
    let one = series_divide(&d, &d).unwrap();
    assert_eq!(one.truncate(24 * 3), Series::one(24 * 3));
    let q = series_divide(&t2, &d).unwrap();
    assert_eq!(q.mul(&d).truncate(q.prec()), t2.truncate(q.prec()));
    assert!(q.mul(&q).terms().all(|(&(_, y), _)| y % 2 == 0));
    let half = Rat::new(1.into(), 2.into());
    assert_eq!(q.slice(0), vec![(-1, Cyclo::from_scalar(half.clone())), (1, Cyclo::from_scalar(half))]);
    assert!(series_divide(&d, &Series::zero(10)).is_err());
}

#[test]
fn k3_genus_coefficients() {
    let e = ellk3(4).unwrap();
    assert_eq!(format_slice(&e, 0), Q0_EXPECTED);
    assert_eq!(format_slice(&e, 24), Q1_EXPECTED);
    let at0 = e.substitute_y(0, 0);
    assert_eq!(at0.to_string(), "24");
    assert!(integer_table(&e).is_some());
}

#[test]
fn orbifold_matches_k3() {
    let rep = verify_genus(4).unwrap();
    assert!(rep.passed(), "{rep:?}");
    let s = rep.specializations.unwrap();
    assert_eq!(s.signature, "-16");
    assert_eq!(s.holomorphic_euler, "2");
}

#[test]
fn elliptic_property() {
    let e = ellk3(3).unwrap();
    assert!(elliptic_check(&e).unwrap() > 10);
}

#[test]
fn low_order_is_reported() {
    let e = ellk3(0).unwrap();
    assert!(specializations(&e).is_err());
}

#[test]
fn theta_sign_convention() {
    // ϑ1 = −ϑ_{(1/2,1/2)}: leading term −(ζ^6 y^{1/2} + ζ^{-6} y^{-1/2}) q^{1/8}
    let t1: Series = theta_series(ThetaSpec::jacobi(1, 0, 0), 1);
    assert_eq!(t1.coefficient(3, 1), Cyclo::zeta_pow(6).neg());
    assert_eq!(t1.coefficient(3, -1), Cyclo::zeta_pow(-6).neg());
}

// Floating-point mirror: direct evaluation of the theta sums.
fn theta_c(alpha: f64, beta: f64, z: Complex64, tau: Complex64) -> Complex64 {
    let i = Complex64::i();
    let pi = std::f64::consts::PI;
    (-40..=40)
        .map(|n| {
            let x = n as f64 + alpha;
            (i * pi * tau * x * x + i * 2.0 * pi * x * (z + beta)).exp()
        })
        .sum()
}

fn theta1_c(z: Complex64, tau: Complex64) -> Complex64 {
    -theta_c(0.5, 0.5, z, tau)
}

fn ellk3_c(z: Complex64, tau: Complex64) -> Complex64 {
    let zero = Complex64::new(0.0, 0.0);
    let q = |a: f64, b: f64| {
        let r = theta_c(a, b, z, tau) / theta_c(a, b, zero, tau);
        r * r
    };
    8.0 * (q(0.5, 0.0) + q(0.0, 0.0) + q(0.0, 0.5))
}

fn orbifold_c(z: Complex64, tau: Complex64) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for l in 0..3 {
        for m in 0..3 {
            if (l, m) == (0, 0) {
                continue;
            }
            let sh = tau * (l as f64 / 3.0) + m as f64 / 3.0;
            s += theta1_c(z + sh, tau) * theta1_c(z - sh, tau) / (theta1_c(sh, tau) * theta1_c(-sh, tau));
        }
    }
    3.0 * s
}

fn eval_series(e: &Series, z: Complex64, tau: Complex64) -> Complex64 {
    let i = Complex64::i();
    let tau_pi = std::f64::consts::TAU;
    e.terms()
        .map(|(&(q, y), c)| {
            cyclo_to_c(c) * (i * tau_pi * (tau * (q as f64 / 24.0) + z * (y as f64 / 2.0))).exp()
        })
        .sum()
}

#[test]
fn float_mirror() {
    let tau = Complex64::new(0.13, 1.4);
    let z = Complex64::new(0.21, 0.05);
    let direct = ellk3_c(z, tau);
    let orb = orbifold_c(z, tau);
    assert!((direct - orb).norm() < 1e-9 * direct.norm(), "{direct} vs {orb}");
    let e = ellk3(4).unwrap();
    let ser = eval_series(&e, z, tau);
    assert!((ser - direct).norm() < 1e-6, "{ser} vs {direct}");
}
