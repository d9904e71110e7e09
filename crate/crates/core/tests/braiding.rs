use nalgebra::Matrix4;
use num::complex::Complex64;
use so4cat::braiding::*;
use so4cat::model::{make_p, make_q};
use so4cat::scalars::RatFunc2;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// q with q² a primitive (n+1)-st root of unity.
fn root_q(n: u32) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::PI / (n as f64 + 1.0))
}

#[test]
fn every_class_is_a_braiding() {
    for p in BraidingParams::all() {
        let r = class_report(&p).unwrap();
        assert!(r.ybe, "{}", p.describe());
        assert!(r.inverse_fourier, "{}", p.describe());
        assert_eq!(r.twists[0], "1", "{}", p.describe());
    }
}

#[test]
fn normalized_class_twists() {
    let hits: Vec<_> = BraidingParams::all()
        .into_iter()
        .filter(|p| class_report(p).unwrap().normalized_twists)
        .collect();
    assert!(!hits.is_empty());
    for p in &hits {
        assert_eq!((p.e1, p.e2), (1, 1));
    }
    // θ_X = s1³s2³ for the (+, +) classes
    let p = BraidingParams::new(1, 1, 1).unwrap();
    let t = twists(&p, &braid(&p)).unwrap();
    assert_eq!(t.theta_x, (&p.s1() * &p.s2()).pow(3));
}

#[test]
fn joint_negation_fixes_the_braid() {
    for p in BraidingParams::all() {
        let s = braid(&p);
        let neg = s.map_coeffs(|x| x.substitute_monomials(&(so4cat::scalars::rat(-1), 1, 0), &(so4cat::scalars::rat(-1), 0, 1)));
        assert_eq!(neg, s);
    }
}

#[test]
fn braid_commutes_with_end2() {
    for p in BraidingParams::all() {
        let s = braid(&p);
        for z in [make_p(), make_q()] {
            let z = p.lift_morphism(&z);
            assert_eq!(p.compose(&s, &z).unwrap(), p.compose(&z, &s).unwrap());
        }
    }
}

#[test]
fn inverse_is_two_sided() {
    let p = BraidingParams::new(-1, 1, 1).unwrap();
    let s = braid(&p);
    let inv = inverse(&p, &s).unwrap();
    let id = so4cat::model::make_id2();
    assert_eq!(p.compose(&s, &inv).unwrap(), id);
    assert_eq!(p.compose(&inv, &s).unwrap(), id);
}

#[test]
fn curls_agree() {
    for p in BraidingParams::all() {
        let s = braid(&p);
        assert_eq!(left_curl(&p, &s).unwrap(), right_curl(&p, &s).unwrap());
    }
}

/// Left multiplication by σ on End(X⊗X) in the basis (id, e, P, Q), specialized.
fn mult_matrix(p: &BraidingParams, s1: f64, s2: f64) -> Matrix4<f64> {
    let basis = so4cat::model::end2_basis().map(|b| p.lift_morphism(&b));
    let sigma = braid(p);
    let mut m = Matrix4::zeros();
    for (j, b) in basis.iter().enumerate() {
        let img = p.compose(&sigma, b).unwrap();
        let coords = coords_in(p, &img);
        for i in 0..4 {
            m[(i, j)] = coords[i].specialize(c(s1, 0.0), c(s2, 0.0), 1e-12).unwrap().re;
        }
    }
    m
}

/// Coordinates via the idempotent basis, then converted to (id, e, P, Q).
fn coords_in(p: &BraidingParams, m: &so4cat::model::ProdMorphism) -> [RatFunc2; 4] {
    let [a1, ap, aq, ar] = idempotent_coords(p, m).unwrap();
    let d = p.lift(&so4cat::scalars::delta());
    // a1 e/δ + ap P + aq Q + ar (id − e/δ − P − Q)
    let e = &(&a1 - &ar) / &d;
    [ar.clone(), e, &ap - &ar, &aq - &ar]
}

#[test]
fn block_spectrum_is_product_of_factor_eigenvalues() {
    let (s1, s2) = (1.3, 0.7);
    let p = BraidingParams::new(1, 1, 1).unwrap();
    let m = mult_matrix(&p, s1, s2);
    let mut got: Vec<f64> = m.complex_eigenvalues().iter().map(|z| {
        assert!(z.im.abs() < 1e-9);
        z.re
    }).collect();
    let f1 = [s1, -s1.powi(-3)];
    let f2 = [s2, -s2.powi(-3)];
    let mut want: Vec<f64> = f1.iter().flat_map(|a| f2.iter().map(move |b| a * b)).collect();
    got.sort_by(f64::total_cmp);
    want.sort_by(f64::total_cmp);
    for (g, w) in got.iter().zip(&want) {
        assert!((g - w).abs() < 1e-9 * (1.0 + w.abs()), "{got:?} vs {want:?}");
    }
}

#[test]
fn eight_classes_generically() {
    let q1 = c(0.8, 0.9);
    let q2 = c(-1.1, 0.35);
    assert_eq!(enumerate_braidings(q1, q2, 1e-9).unwrap().len(), 8);
}

#[test]
fn degenerations_at_rank_two() {
    let generic = c(0.8, 0.9);
    assert_eq!(enumerate_braidings(generic, root_q(2), 1e-9).unwrap().len(), 4);
    assert_eq!(enumerate_braidings(root_q(2), generic, 1e-9).unwrap().len(), 4);
    assert_eq!(enumerate_braidings(root_q(2), root_q(2), 1e-9).unwrap().len(), 2);
    assert_eq!(enumerate_braidings(root_q(4), root_q(7), 1e-9).unwrap().len(), 8);
}

#[test]
fn alpha_system_signs() {
    let sols = solve_alpha_system().unwrap();
    assert_eq!(sols.len(), 2);
    for s in &sols {
        assert_eq!((s.eps_p, s.eps_q, s.eps_r), (-1, -1, 1));
    }
    let q = RatFunc2::var(1).pow(3) * RatFunc2::var(2).pow(3);
    assert_eq!(sols[0].alpha_1_squared, q.inv().unwrap());
    assert_ne!(sols[0].alpha_1.as_ref().unwrap(), sols[1].alpha_1.as_ref().unwrap());
}

#[test]
fn each_normalized_braiding_matches_one_solution() {
    let sols = solve_alpha_system().unwrap();
    for p in BraidingParams::all() {
        let al = idempotent_coords(&p, &braid(&p)).unwrap();
        // the system is stated for the normalized parameters q_i^{e_i} = −s_i²
        let n = sols.iter().filter(|s| s.alphas().unwrap() == al).count();
        assert_eq!(n, 1, "{}", p.describe());
    }
}

#[test]
fn numeric_alpha_system() {
    let sols = solve_alpha_system_at(c(0.8, 0.9), c(-1.1, 0.35), 1e-9).unwrap();
    assert_eq!(sols.len(), 2);
    assert!(solve_alpha_system_at(c(0.0, 1.0), c(0.8, 0.9), 1e-9).is_err());
}
