use std::collections::HashMap;

use num::complex::Complex64;
use proptest::prelude::*;
use so4cat::fusion::*;
use so4cat::model::gram_rank;
use so4cat::scalars::{delta, RatFunc2};

fn s(i: u32, j: u32) -> SimpleLabel {
    SimpleLabel::new(i, j)
}

/// Walk pairs counted by explicit recursion over the neighbour rule.
fn brute_hom_dim(n1: Option<u32>, n2: Option<u32>, a: usize, b: usize) -> u128 {
    fn ends(n1: Option<u32>, n2: Option<u32>, len: usize, at: (i64, i64), acc: &mut HashMap<(i64, i64), u128>) {
        if len == 0 {
            *acc.entry(at).or_default() += 1;
            return;
        }
        for (di, dj) in [(-1, -1), (-1, 1), (1, -1), (1, 1)] {
            let (i, j) = (at.0 + di, at.1 + dj);
            let ok = |x: i64, n: Option<u32>| x >= 0 && n.is_none_or(|n| x < n as i64);
            if ok(i, n1) && ok(j, n2) {
                ends(n1, n2, len - 1, (i, j), acc);
            }
        }
    }
    let mut wa = HashMap::new();
    let mut wb = HashMap::new();
    ends(n1, n2, a, (0, 0), &mut wa);
    ends(n1, n2, b, (0, 0), &mut wb);
    wa.iter().map(|(k, x)| x * wb.get(k).copied().unwrap_or(0)).sum()
}

fn catalan(n: u128) -> u128 {
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

#[test]
fn infinite_ring_hom_dims() {
    let r = FusionRing::infinite();
    assert_eq!(r.hom_dim(0, 0), 1);
    assert_eq!(r.hom_dim(2, 2), 4);
    assert_eq!(r.hom_dim(3, 3), 25);
    assert_eq!(brute_hom_dim(None, None, 3, 3), 25);
    for k in 1..=6u128 {
        assert_eq!(r.hom_dim(k as usize, k as usize), catalan(k).pow(2));
    }
}

#[test]
fn truncated_hom_dims_match_brute_force() {
    for (n1, n2) in [(2, 2), (2, 5), (3, 4), (4, 5), (5, 8)] {
        let r = FusionRing::finite(n1, n2).unwrap();
        for a in 0..=5 {
            for b in 0..=5 {
                assert_eq!(r.hom_dim(a, b), brute_hom_dim(Some(n1), Some(n2), a, b), "K_{n1},{n2} {a} {b}");
            }
        }
    }
}

#[test]
fn vertex_counts() {
    for n1 in 2..7u32 {
        for n2 in 2..9u32 {
            let r = FusionRing::finite(n1, n2).unwrap();
            assert_eq!(r.simples().unwrap().len() as u32, (n1 * n2).div_ceil(2));
        }
    }
    let dot = fusion_graph_dot(&FusionRing::finite(2, 2).unwrap()).unwrap();
    assert_eq!(dot.lines().filter(|l| l.ends_with("\";") && !l.contains("--")).count(), 2);
}

#[test]
fn k58_graph() {
    let r = FusionRing::finite(5, 8).unwrap();
    let v = r.simples().unwrap();
    assert_eq!(v.len(), 20);
    // every interior vertex has four neighbours, corners one
    let deg = |x: SimpleLabel| r.tensor_with_x(x).unwrap().len();
    assert_eq!(deg(s(0, 0)), 1);
    assert_eq!(deg(s(2, 2)), 4);
    assert_eq!(deg(s(4, 0)), 1);
    assert_eq!(deg(s(4, 6)), 2);
    let edges = r.graph_edges().unwrap();
    let total: usize = v.iter().map(|&x| deg(x)).sum();
    assert_eq!(2 * edges.len(), total);
}

#[test]
fn dimensions() {
    let r = FusionRing::infinite();
    assert_eq!(r.qdim(s(0, 0)).unwrap(), RatFunc2::one());
    assert_eq!(r.qdim(s(1, 1)).unwrap(), delta());
    let sum: RatFunc2 = r.tensor_with_x(s(1, 1)).unwrap().into_iter().map(|x| r.qdim(x).unwrap()).sum();
    assert_eq!(sum, &delta() * &delta());
    assert!(r.qdim(s(1, 2)).is_err());
}

#[test]
fn summary_json() {
    let r = FusionRing::finite(2, 3).unwrap();
    let j = serde_json::to_value(r.summary().unwrap()).unwrap();
    assert_eq!(j["simples"].as_array().unwrap().len(), 3);
}

fn q_root(n: u32) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::PI / (n as f64 + 1.0))
}

#[test]
fn gram_rank_equals_path_pairs() {
    for (n1, n2) in [(3, 4), (4, 5), (5, 8)] {
        let r = FusionRing::finite(n1, n2).unwrap();
        for k in 1..=4 {
            let rank = gram_rank(k, q_root(n1), q_root(n2), 1e-8).unwrap();
            assert_eq!(rank as u128, r.hom_dim(k, k), "K_{n1},{n2} k={k}");
        }
    }
}

proptest! {
    #[test]
    fn odd_walks_avoid_the_unit(n1 in 2u32..7, n2 in 2u32..7, len in 0usize..9) {
        let r = FusionRing::finite(n1, n2).unwrap();
        let w = r.walks(2 * len + 1);
        prop_assert!(!w.contains_key(&SimpleLabel::unit()));
        prop_assert_eq!(r.hom_dim(2 * len + 1, 0), 0);
    }

    #[test]
    fn hom_dim_is_symmetric(n1 in 2u32..7, n2 in 2u32..7, a in 0usize..7, b in 0usize..7) {
        let r = FusionRing::finite(n1, n2).unwrap();
        prop_assert_eq!(r.hom_dim(a, b), r.hom_dim(b, a));
        if (a + b) % 2 == 1 {
            prop_assert_eq!(r.hom_dim(a, b), 0);
        }
    }

    #[test]
    fn tensor_neighbours_are_in_range(n1 in 2u32..7, n2 in 2u32..7, i in 0u32..7, j in 0u32..7) {
        let r = FusionRing::finite(n1, n2).unwrap();
        let x = s(i, j);
        match r.tensor_with_x(x) {
            Ok(v) => {
                prop_assert!(r.contains(x));
                for t in v {
                    prop_assert!(r.contains(t));
                    prop_assert_eq!(t.i.abs_diff(i), 1);
                    prop_assert_eq!(t.j.abs_diff(j), 1);
                }
            }
            Err(_) => prop_assert!(!r.contains(x)),
        }
    }
}
