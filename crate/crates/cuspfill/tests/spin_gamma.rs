#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;

use cuspfill::lattice::{IntMatrix, Residue};
use cuspfill::plumbing::*;
use cuspfill::singularity::{CurveData, CuspType};
use cuspfill::spin_gamma::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A_p: 0-framed unknot (the 1-handle) linked p+1 times with a +1 knot of rotation p−2.
fn diagram_a(p: i64) -> SurgeryDiagram {
    SurgeryDiagram::new(IntMatrix::from_i64(&[vec![0, p + 1], vec![p + 1, 1]]), vec![0, p - 2], [0].into()).unwrap()
}

fn diagram_b(p: i64) -> SurgeryDiagram {
    SurgeryDiagram::new(IntMatrix::from_i64(&[vec![0, 2 * p], vec![2 * p, 1]]), vec![0, 2 * p - 3], [0].into()).unwrap()
}

#[test]
fn gamma_family_a() {
    for p in 2..=10i64 {
        let d = diagram_a(p);
        d.check_legendrian_parity().unwrap();
        let charsub: Vec<usize> = if (p + 1) % 2 == 0 { vec![0, 1] } else { vec![0] };
        let got = gamma_invariant(&d, &charsub, 0).unwrap();
        let s = (p + 1) * (p + 1);
        let curve = CurveData::rational(vec![CuspType::new(p, p + 1).unwrap()], s);
        // 1 − p_a with p_a = (p−1)p/2
        let want = Residue::from_i64((-p * p + p + 2) / 2, s);
        assert_eq!(got, want, "A_{p}");
        assert_eq!(gamma_theoretical(&curve).unwrap(), want);
    }
}

#[test]
fn gamma_family_b() {
    for p in 2..=8i64 {
        let d = diagram_b(p);
        d.check_legendrian_parity().unwrap();
        let got = gamma_invariant(&d, &[0, 1], 0).unwrap();
        let s = 4 * p * p;
        let curve = CurveData::rational(vec![CuspType::new(p, 4 * p - 1).unwrap()], s);
        let want = Residue::from_i64(3 * p - 2 * p * p, s);
        assert_eq!(got, want, "B_{p}");
        assert_eq!(gamma_theoretical(&curve).unwrap(), want);
    }
}

#[test]
fn diagram_fixtures() {
    let a3 = cuspfill::io::parse_diagram(include_str!("../fixtures/diagram_a3.json")).unwrap();
    assert_eq!(gamma_invariant(&a3, &[0, 1], 0).unwrap().to_string(), "14 mod 16");
    let b3 = cuspfill::io::parse_diagram(include_str!("../fixtures/diagram_b3.json")).unwrap();
    assert_eq!(gamma_invariant(&b3, &[0, 1], 0).unwrap().to_string(), "27 mod 36");
}

#[test]
fn parity_and_sublink_errors() {
    // rotation of the wrong parity
    let bad = SurgeryDiagram::new(IntMatrix::from_i64(&[vec![0, 3], vec![3, 1]]), vec![0, 1], [0].into()).unwrap();
    assert!(bad.check_legendrian_parity().is_err());
    assert!(diagram_a(3).check_legendrian_parity().is_ok());
    assert!(SurgeryDiagram::new(IntMatrix::from_i64(&[vec![1, 3], vec![3, 1]]), vec![0, 0], [0].into()).is_err());
    let d = diagram_a(3);
    assert!(gamma_invariant(&d, &[0], 0).is_err());
    assert!(gamma_invariant(&d, &[0, 1], 5).is_err());
    assert!(rho(&d, &[7]).is_err());
}

#[test]
fn characteristic_sublinks_match_subset_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let mut b = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let x = rng.gen_range(-4..=4);
                b[i][j] = x;
                b[j][i] = x;
            }
        }
        let m = IntMatrix::from_i64(&b);
        let mut brute = BTreeSet::new();
        for mask in 0u32..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let ok = (0..n).all(|i| {
                let lk: i64 = s.iter().map(|&j| b[i][j]).sum();
                (lk - b[i][i]).rem_euclid(2) == 0
            });
            if ok {
                brute.insert(s);
            }
        }
        let got: BTreeSet<Vec<usize>> = characteristic_sublinks(&m).unwrap().into_iter().collect();
        assert_eq!(got, brute, "{b:?}");
        assert_eq!(brute.len(), 1 << gf2_nullity(&m));
        for s in &brute {
            assert!(is_characteristic(&m, s));
        }
    }
}

#[test]
fn rotation_ranges_of_weights() {
    let r = rotation_ranges(&PlumbingGraph::linear(&[-2, -3, -6])).unwrap();
    assert_eq!(r, vec![vec![0], vec![-1, 1], vec![-4, -2, 0, 2, 4]]);
    assert!(rotation_ranges(&PlumbingGraph::linear(&[-1])).is_err());
    assert_eq!(rotation_lattice(&e64_7()).unwrap().len(), 14);
    assert_eq!(rotation_lattice(&e256_x()).unwrap().len(), 35);
}

#[test]
fn theta_closed_form_e64_7() {
    let g = e64_7();
    let mut points = 0;
    for v in rotation_lattice(&g).unwrap() {
        let (s, t) = (v[2], v[5]);
        assert!(v.iter().enumerate().all(|(i, &x)| i == 2 || i == 5 || x == 0));
        assert_eq!(theta(&g, &v).unwrap(), frac(384 - 36 * s * s - 4 * s * t - 9 * t * t, 256), "{v:?}");
        points += 1;
    }
    assert_eq!(points, 14);
    assert_eq!(theta(&g, &[0, 0, 1, 0, 0, 0]).unwrap(), frac(87, 64));
}

#[test]
fn theta_closed_form_e256_x() {
    let g = e256_x();
    for v in rotation_lattice(&g).unwrap() {
        let (s, t) = (v[2], v[8]);
        assert_eq!(theta(&g, &v).unwrap(), frac(2304 - 57 * s * s - 4 * s * t - 36 * t * t, 1024), "{v:?}");
    }
    assert_eq!(theta(&g, &[0; 9]).unwrap(), frac(9, 4));
}

#[test]
fn theta_minima() {
    let (m, arg) = minimize_theta(&e64_7()).unwrap();
    assert!(m.is_zero());
    assert_eq!(arg, vec![vec![0, 0, -1, 0, 0, -6], vec![0, 0, 1, 0, 0, 6]]);
    let (m, arg) = minimize_theta(&e256_x()).unwrap();
    assert!(m.is_zero());
    assert_eq!(arg, vec![vec![0, 0, -4, 0, 0, 0, 0, 0, -6], vec![0, 0, 4, 0, 0, 0, 0, 0, 6]]);
}

fn small_plumbing() -> impl Strategy<Value = PlumbingGraph> {
    prop::collection::vec(-5i64..=-2, 1..=4).prop_map(|w| PlumbingGraph::linear(&w))
}

proptest! {
    #[test]
    fn theta_is_even(g in small_plumbing()) {
        let form = ThetaForm::new(&g).unwrap();
        for v in rotation_lattice(&g).unwrap() {
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            prop_assert_eq!(form.eval(&v).unwrap(), form.eval(&neg).unwrap());
        }
    }

    #[test]
    fn argmin_closed_under_negation(g in small_plumbing()) {
        let (m, arg) = minimize_theta(&g).unwrap();
        let set: BTreeSet<Vec<i64>> = arg.iter().cloned().collect();
        for v in &arg {
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            prop_assert!(set.contains(&neg));
        }
        for v in rotation_lattice(&g).unwrap() {
            prop_assert!(theta(&g, &v).unwrap() >= m);
        }
    }
}
