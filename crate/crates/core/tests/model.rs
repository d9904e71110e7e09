use num::complex::Complex64;
use proptest::prelude::*;
use so4cat::model::*;
use so4cat::scalars::{delta, qint, RatFunc2};

fn d() -> RatFunc2 {
    delta()
}

fn rf(n: i64) -> RatFunc2 {
    RatFunc2::from_int(n)
}

fn inv(x: &RatFunc2) -> RatFunc2 {
    x.inv().unwrap()
}

#[test]
fn presentation_report_passes() {
    let r = verify_presentation();
    for c in &r.checks {
        assert!(c.pass, "{} failed: {:?}", c.id, c.witness);
    }
    for id in ["a", "b1", "b4", "c1", "c2", "d5", "d8", "e1", "e2", "e3", "e4", "e5", "qpq1", "qpq5"] {
        assert!(r.get(id).is_some(), "missing {id}");
    }
}

#[test]
fn report_serializes_to_json() {
    let r = verify_presentation();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), r.checks.len());
    assert!(checks.iter().all(|c| c["pass"] == true && c.get("witness").is_none()));
}

#[test]
fn triangle_nets_are_not_trivially_zero() {
    use so4cat::model::Gen;
    let t = triangle_net([Gen::P; 3], 0).evaluate().unwrap();
    assert!(!t.is_zero());
    assert_eq!((t.source(), t.target()), (3, 3));
    let rhs = triangle_rhs([Gen::P; 3], 0).unwrap();
    assert_eq!(t, rhs);
    // the two right-hand terms are independent, so the scalar -1/d is forced
    let s = triangle_rhs_strand(Gen::P, 0).evaluate().unwrap();
    let pair = triangle_rhs_pair(Gen::P, 0).evaluate().unwrap();
    assert!(!s.is_zero() && !pair.is_zero());
    assert_ne!(t, &pair - &s);
}

#[test]
fn generator_traces_and_products() {
    assert_eq!(make_p().trace().unwrap(), qint(3, 1));
    assert_eq!(make_q().trace().unwrap(), qint(3, 2));
    assert!(make_p().compose(&make_q()).unwrap().is_zero());
    let sum = &(&(&make_e().scale(&inv(&d())) + &make_p()) + &make_q()) + &make_r();
    assert_eq!(sum, make_id2());
    assert_eq!(ProdMorphism::identity(1).trace().unwrap(), &qint(2, 1) * &qint(2, 2));
}

#[test]
fn circ_idempotents_are_orthogonal() {
    let ids = [make_e().scale(&inv(&d())), make_p(), make_q(), make_r()];
    for (i, a) in ids.iter().enumerate() {
        for (j, b) in ids.iter().enumerate() {
            let ab = a.compose(b).unwrap();
            if i == j {
                assert_eq!(ab, *a, "{i}");
            } else {
                assert!(ab.is_zero(), "{i} {j}");
            }
        }
    }
}

#[test]
fn rotation_facts() {
    assert_eq!(make_e().rotate(), make_id2());
    assert_eq!(make_p().rotate().rotate(), make_p());
    assert_eq!(make_q().rotate().rotate(), make_q());
    let rho_q = &(&make_id2().scale(&-inv(&d())) + &make_e().scale(&qint(2, 1).pow(-2)))
        + &make_p().scale(&(&qint(2, 2) / &qint(2, 1)));
    assert_eq!(make_q().rotate(), rho_q);
}

#[test]
fn convolution_structure_constants() {
    let (p, q, e) = (make_p(), make_q(), make_e());
    let (t1, t2) = (qint(3, 1), qint(3, 2));
    let pp = &e.scale(&(&t1 * &d().pow(-2))) + &p.scale(&(&(&t1 - &rf(1)) / &d()));
    let qq = &e.scale(&(&t2 * &d().pow(-2))) + &q.scale(&(&(&t2 - &rf(1)) / &d()));
    assert_eq!(convolve(&p, &p).unwrap(), pp);
    assert_eq!(convolve(&q, &q).unwrap(), qq);
    assert_eq!(convolve(&p, &q).unwrap(), make_r().scale(&inv(&d())));
    assert_eq!(convolve(&q, &p).unwrap(), make_r().scale(&inv(&d())));
}

#[test]
fn e_is_the_convolution_unit() {
    for x in end2_basis() {
        assert_eq!(convolve(&x, &make_e()).unwrap(), x);
        assert_eq!(convolve(&make_e(), &x).unwrap(), x);
    }
}

#[test]
fn star_idempotent_table() {
    let z = star_idempotents();
    for i in 0..4 {
        for j in 0..4 {
            let c = convolve(&z[i], &z[j]).unwrap();
            if i == j {
                assert_eq!(c, z[i], "z{i} not idempotent");
            } else {
                assert!(c.is_zero(), "z{i} * z{j} != 0");
            }
        }
    }
    let s = z.iter().fold(ProdMorphism::zero(2, 2), |a, b| &a + b);
    assert_eq!(s, make_e());
}

#[test]
fn decompositions() {
    let one = rf(1);
    let dinv = inv(&d());
    let c = decompose_end2(&make_r()).unwrap();
    assert_eq!(c, [one.clone(), -&dinv, rf(-1), rf(-1)]);
    let c = decompose_end2(&make_p().rotate()).unwrap();
    assert_eq!(c, [-&dinv, qint(2, 2).pow(-2), rf(0), &qint(2, 1) / &qint(2, 2)]);
    let c = decompose_end2(&make_id2()).unwrap();
    assert_eq!(c, [one, rf(0), rf(0), rf(0)]);
    assert!(decompose_end2(&ProdMorphism::identity(3)).is_err());
}

#[test]
fn qpq_is_a_multiple_of_the_x_projection() {
    let qpq = q_sandwich(&make_p()).unwrap();
    let pi = x_projection().unwrap();
    let mu = &(&qint(3, 1) * &qint(3, 2)) * &d().pow(-2);
    assert_eq!(qpq, pi.scale(&mu));
    assert_eq!(pi.compose(&pi).unwrap(), pi);
    assert_eq!(pi.trace().unwrap(), d());
}

#[test]
fn closures_agree_on_both_sides() {
    for x in [make_p(), make_q(), make_r(), make_e()] {
        assert_eq!(left_closure(&x).unwrap(), right_closure(&x).unwrap());
    }
}

#[test]
fn planar_net_single_box_is_the_box() {
    let mut net = PlanarNet::new(vec![make_p()], vec![0], 4, 2);
    for p in 0..4 {
        net.connect(NetEnd::Box(0, p), NetEnd::Boundary(p));
    }
    assert_eq!(net.evaluate().unwrap(), make_p());
    let mut closed = PlanarNet::new(vec![make_p()], vec![0], 0, 0);
    closed.connect(NetEnd::Box(0, 0), NetEnd::Box(0, 3));
    closed.connect(NetEnd::Box(0, 1), NetEnd::Box(0, 2));
    closed.free_loops = 1;
    let s = closed.evaluate().unwrap().as_scalar().unwrap();
    assert_eq!(s, &qint(3, 1) * &d());
}

#[test]
fn planar_net_rejects_bad_wiring() {
    let mut net = PlanarNet::new(vec![make_p()], vec![0], 4, 2);
    for p in 0..3 {
        net.connect(NetEnd::Box(0, p), NetEnd::Boundary(p));
    }
    assert!(net.evaluate().is_err());
    net.connect(NetEnd::Box(0, 3), NetEnd::Boundary(0));
    assert!(net.evaluate().is_err());
}

fn catalan(n: usize) -> usize {
    // brute-force count of balanced bracket words
    (0..1usize << (2 * n))
        .filter(|&w| {
            let mut h = 0i32;
            for i in 0..2 * n {
                h += if w >> i & 1 == 1 { 1 } else { -1 };
                if h < 0 {
                    return false;
                }
            }
            h == 0
        })
        .count()
}

#[test]
fn generic_gram_ranks() {
    let z1 = Complex64::from_polar(1.0, 0.4123);
    let z2 = Complex64::from_polar(1.0, 2.0377);
    for k in 1..=4 {
        let c = catalan(k);
        assert_eq!(gram_rank(k, z1, z2, 1e-8).unwrap(), c * c);
    }
    assert_eq!(gram_rank(2, z1, z2, 1e-8).unwrap(), 4);
}

fn small_combo(c: [i8; 4]) -> ProdMorphism {
    end2_basis()
        .iter()
        .zip(c)
        .fold(ProdMorphism::zero(2, 2), |acc, (b, k)| &acc + &b.scale(&rf(k as i64)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rho_turns_convolution_into_composition(a in prop::array::uniform4(-3i8..4), b in prop::array::uniform4(-3i8..4)) {
        let (x, y) = (small_combo(a), small_combo(b));
        let lhs = convolve(&x, &y).unwrap().rotate();
        let rhs = x.rotate().compose(&y.rotate()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn decomposition_round_trips(a in prop::array::uniform4(-5i8..6)) {
        let x = small_combo(a);
        let c = decompose_end2(&x).unwrap();
        for (ci, ai) in c.iter().zip(a) {
            prop_assert_eq!(ci.clone(), rf(ai as i64));
        }
    }
}
