//! One line per acceptance criterion. Everything is checked exactly.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::golden::*;
use cuspfill::blowdown::*;
use cuspfill::embedding::*;
use cuspfill::lattice::*;
use cuspfill::plumbing::*;
use cuspfill::registry::*;
use cuspfill::singularity::*;
use cuspfill::spin_gamma::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_singularity() -> Check {
    for r in cusp_table() {
        let seq = multiplicity_sequence(CuspType::new(r.p, r.q).map_err(|e| e.to_string())?);
        let got = (seq.entries().to_vec(), delta(&seq), big_m(&seq), ell(&seq));
        ensure(got == (r.sequence.clone(), r.delta, r.m, r.ell), || format!("({},{}): {got:?}", r.p, r.q))?;
    }
    for q in 3..=200i64 {
        for p in 2..q {
            if num_integer::gcd(p, q) == 1 {
                let d = delta(&multiplicity_sequence(CuspType::new(p, q).unwrap()));
                ensure(d == (p - 1) * (q - 1) / 2, || format!("delta({p},{q}) = {d}"))?;
            }
        }
    }
    Ok(())
}

fn matrix_check<const N: usize>(
    name: &str,
    g: &PlumbingGraph,
    q: &[[i64; N]; N],
    qinv: &[[i64; N]; N],
    det: i64,
) -> Check {
    let m = intersection_matrix(g);
    let rows = |a: &[[i64; N]; N]| a.iter().map(|r| r.to_vec()).collect::<Vec<_>>();
    ensure(m.to_i64() == Some(rows(q)), || format!("{name}: Q differs"))?;
    let d = determinant(&m).map_err(|e| e.to_string())?;
    ensure(d.abs() == BigInt::from(det), || format!("{name}: |det| = {d}"))?;
    let inv = inverse_rational(&m).map_err(|e| e.to_string())?;
    let scaled = inv.scaled_to_int(&BigInt::from(-det)).and_then(|s| s.to_i64());
    ensure(scaled == Some(rows(qinv)), || format!("{name}: Q^-1 differs"))
}

fn c2_matrices() -> Check {
    matrix_check("e64_7", &e64_7(), &Q64, &QINV64, 64)?;
    matrix_check("e256_x", &e256_x(), &Q256, &QINV256, 256)
}

fn c3_theta() -> Check {
    let (m, arg) = minimize_theta(&e64_7()).map_err(|e| e.to_string())?;
    ensure(m.is_zero() && arg == vec![vec![0, 0, -1, 0, 0, -6], vec![0, 0, 1, 0, 0, 6]], || {
        format!("e64_7: min {m} at {arg:?}")
    })?;
    let (m, arg) = minimize_theta(&e256_x()).map_err(|e| e.to_string())?;
    ensure(m.is_zero() && arg == vec![vec![0, 0, -4, 0, 0, 0, 0, 0, -6], vec![0, 0, 4, 0, 0, 0, 0, 0, 6]], || {
        format!("e256_x: min {m} at {arg:?}")
    })?;
    let g = e64_7();
    let points = rotation_lattice(&g).map_err(|e| e.to_string())?;
    ensure(points.len() == 14, || format!("{} lattice points", points.len()))?;
    for v in points {
        let (s, t) = (v[2], v[5]);
        let want = BigRational::new(BigInt::from(384 - 36 * s * s - 4 * s * t - 9 * t * t), BigInt::from(256));
        let got = theta(&g, &v).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("theta{v:?} = {got}"))?;
    }
    Ok(())
}

fn c4_gamma() -> Check {
    for p in 2..=10i64 {
        let d = SurgeryDiagram::new(IntMatrix::from_i64(&[vec![0, p + 1], vec![p + 1, 1]]), vec![0, p - 2], [0].into())
            .map_err(|e| e.to_string())?;
        let sub: Vec<usize> = if (p + 1) % 2 == 0 { vec![0, 1] } else { vec![0] };
        let got = gamma_invariant(&d, &sub, 0).map_err(|e| e.to_string())?;
        let s = (p + 1) * (p + 1);
        let th = gamma_theoretical(&CurveData::rational(vec![CuspType::new(p, p + 1).unwrap()], s))
            .map_err(|e| e.to_string())?;
        let want = Residue::from_i64((-p * p + p + 2) / 2, s);
        ensure(got == th && got == want, || format!("A_{p}: {got} vs {th}"))?;
    }
    for p in 2..=8i64 {
        let d =
            SurgeryDiagram::new(IntMatrix::from_i64(&[vec![0, 2 * p], vec![2 * p, 1]]), vec![0, 2 * p - 3], [0].into())
                .map_err(|e| e.to_string())?;
        let got = gamma_invariant(&d, &[0, 1], 0).map_err(|e| e.to_string())?;
        let s = 4 * p * p;
        let th = gamma_theoretical(&CurveData::rational(vec![CuspType::new(p, 4 * p - 1).unwrap()], s))
            .map_err(|e| e.to_string())?;
        let want = Residue::from_i64(3 * p - 2 * p * p, s);
        ensure(got == th && got == want, || format!("B_{p}: {got} vs {th}"))?;
    }
    Ok(())
}

fn c5_sublinks() -> Check {
    for n in -6..=6i64 {
        let got = characteristic_sublinks(&IntMatrix::from_i64(&[vec![n]])).map_err(|e| e.to_string())?;
        let want: Vec<Vec<usize>> = if n % 2 == 0 { vec![vec![], vec![0]] } else { vec![vec![0]] };
        let got: BTreeSet<_> = got.into_iter().collect();
        ensure(got == want.into_iter().collect(), || format!("framing {n}: {got:?}"))?;
    }
    for p in 2..=10i64 {
        let b = IntMatrix::from_i64(&[vec![0, p + 1], vec![p + 1, 1]]);
        let got: BTreeSet<Vec<usize>> = characteristic_sublinks(&b).map_err(|e| e.to_string())?.into_iter().collect();
        let want: BTreeSet<Vec<usize>> = if (p + 1) % 2 == 0 { [vec![0, 1], vec![1]].into() } else { [vec![0]].into() };
        ensure(got == want, || format!("A_{p}: {got:?}"))?;
        let chosen: &[usize] = if (p + 1) % 2 == 0 { &[0, 1] } else { &[0] };
        ensure(is_characteristic(&b, chosen), || format!("A_{p}: {chosen:?} not characteristic"))?;
    }
    for p in 2..=8i64 {
        let b = IntMatrix::from_i64(&[vec![0, 2 * p], vec![2 * p, 1]]);
        let got: BTreeSet<Vec<usize>> = characteristic_sublinks(&b).map_err(|e| e.to_string())?.into_iter().collect();
        ensure(got == [vec![0, 1], vec![1]].into(), || format!("B_{p}: {got:?}"))?;
    }
    Ok(())
}

fn c6_embeddings() -> Check {
    for (spec, named) in [(e3_spec(), e3_solutions()), (e6_spec(), e6_solutions())] {
        let sols = enumerate_embeddings(&spec, spec.default_n_max());
        let want: BTreeSet<EmbeddingSolution> = named.iter().map(|n| n.solution()).collect();
        let got: BTreeSet<EmbeddingSolution> = sols.iter().cloned().collect();
        ensure(sols.len() == named.len() && got == want, || format!("{} solutions, lists differ", sols.len()))?;
    }
    for f in Family::ALL {
        for (s, want) in f.expected_counts() {
            let spec = f.spec(s).ok_or("missing spec")?;
            let n = enumerate_embeddings(&spec, spec.default_n_max()).len();
            ensure(n == want, || format!("{} s={s:?}: {n} != {want}", f.name()))?;
        }
    }
    let tables: [(Family, &[usize], i64); 5] = [
        (Family::Genus1, &[1, 1, 1, 2, 1, 0], 5),
        (Family::Genus2TwoCusps, &[1, 1, 1, 2, 0], 9),
        (Family::Genus2Cusp25, &[1, 1, 1, 2, 0], 9),
        (Family::Genus3Cusp34, &[1, 1, 1, 1, 1, 1, 1], 10),
        (Family::Genus3Cusp27, &[2, 2, 2, 3], 13),
    ];
    for (f, counts, s0) in tables {
        let got: Vec<usize> = f.expected_counts().iter().take(counts.len()).map(|(_, c)| *c).collect();
        let first = f.expected_counts()[0].0;
        ensure(got == counts && first == Some(s0), || format!("{} table {got:?}", f.name()))?;
    }
    let triple = genus3_triple_spec(16).ok_or("missing triple spec")?;
    let sols = enumerate_embeddings(&triple, triple.default_n_max());
    ensure(sols.len() == 3, || format!("triple cusp s=16: {} solutions", sols.len()))?;
    let fails: Vec<_> = run_fixtures().into_iter().filter(|r| !r.pass).collect();
    ensure(fails.is_empty(), || format!("fixtures failing: {:?}", fails.iter().map(|r| &r.name).collect::<Vec<_>>()))
}

fn c7_blowdown() -> Check {
    let accept: [&[i64]; 5] =
        [&[-4], &[-6, -2, -2], &[-8, -2, -2, -2, -2], &[-9, -2, -2, -2, -2, -2], &[-2, -8, -2, -2, -2, -3]];
    for w in accept {
        let c = ChainWeights::new(w.to_vec()).map_err(|e| e.to_string())?;
        ensure(is_linear_blowdownable(&c), || format!("{w:?} rejected"))?;
    }
    // forward oracle: closure of (−4) under 2-expansions
    let mut forward = BTreeSet::new();
    let mut stack = vec![vec![-4i64]];
    while let Some(w) = stack.pop() {
        if w.len() > 8 || !forward.insert(w.clone()) {
            continue;
        }
        let mut a = w.clone();
        a[0] -= 1;
        a.push(-2);
        let mut b = vec![-2];
        b.extend_from_slice(&w);
        *b.last_mut().unwrap() -= 1;
        stack.extend([a, b]);
    }
    let generated: BTreeSet<Vec<i64>> = generate_blowdown_chains(8).iter().map(|c| c.weights().to_vec()).collect();
    ensure(generated == forward, || "generated chains differ from forward closure".into())?;
    // reverse test on every chain of length ≤ 4 with weights −9..−2 against the closure
    let mut all = vec![vec![]];
    for _ in 0..4 {
        let next: Vec<Vec<i64>> =
            all.iter().flat_map(|w: &Vec<i64>| (-9..=-2).map(move |x| [w.as_slice(), &[x]].concat())).collect();
        for w in &next {
            let ok = is_linear_blowdownable(&ChainWeights::new(w.clone()).unwrap());
            ensure(ok == forward.contains(w), || format!("{w:?}: reverse says {ok}"))?;
        }
        all = next;
    }
    for c in generate_blowdown_chains(8) {
        ensure(is_linear_blowdownable(&c), || format!("{:?} rejected", c.weights()))?;
    }

    let get =
        |name: &str| e6_solutions().into_iter().find(|s| s.name == name).map(|s| s.listed()).ok_or(name.to_string());
    let z6 = get("Z6")?;
    let spheres = complement_sphere_classes(&z6, z6.n_used);
    let allowed: BTreeSet<i64> = [-2, -3, -8, -9].into();
    for ch in generate_blowdown_chains(6) {
        if ch.weights().iter().all(|w| allowed.contains(w)) {
            let hits = find_plumbing_in(&spheres, &ch.graph(), Some(1));
            ensure(hits.is_empty(), || format!("Z6 contains {:?}", ch.weights()))?;
        }
    }
    let w1 = get("W1")?;
    ensure(complement_sphere_classes(&w1, w1.n_used).with_square(-4).is_empty(), || "W1 has a -4 class".into())?;
    let fh = |s: &EmbeddingSolution| filling_homology(s, s.n_used).map_err(|e| e.to_string());
    let w6 = get("W6")?;
    ensure(fh(&w6)?.determinant.abs() == 64, || "W6 det".into())?;
    ensure(fh(&z6)?.determinant.abs() == 256, || "Z6 det".into())?;
    ensure(fh(&w1)?.gram == vec![vec![-16]], || format!("W1 gram {:?}", fh(&w1).map(|f| f.gram)))
}

fn c8_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..20 {
        let spec = common::random_spec(&mut rng);
        let n = 6;
        let want = common::brute_force(&spec, n);
        let got = enumerate_embeddings(&spec, n);
        let keys: BTreeSet<_> = got.iter().map(|s| common::key_of(s, n)).collect();
        ensure(keys.len() == got.len() && keys == want, || {
            format!("spec {k} {:?}: {} vs {} (oracle)", spec.t(), got.len(), want.len())
        })?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 singularity golden values", c1_singularity),
        ("2 matrix golden values", c2_matrices),
        ("3 theta minimization", c3_theta),
        ("4 gamma equality", c4_gamma),
        ("5 characteristic sublinks", c5_sublinks),
        ("6 embedding fixtures", c6_embeddings),
        ("7 blow-down analysis", c7_blowdown),
        ("8 oracle equivalence", c8_oracle),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let t = Instant::now();
        let r = f();
        let dt: Duration = t.elapsed();
        match &r {
            Ok(()) => println!("PASS criterion {name} ({:.2?})", dt),
            Err(e) => {
                println!("FAIL criterion {name} ({:.2?}): {e}", dt);
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed: {failed:?}");
        std::process::exit(1);
    }
}
