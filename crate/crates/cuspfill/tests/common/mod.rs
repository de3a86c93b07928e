//! Independent brute-force embedding enumerator and random spec generator.
#![allow(dead_code)]

use std::collections::BTreeSet;

use cuspfill::embedding::ConfigurationSpec;
use rand::seq::SliceRandom;
use rand::Rng;

/// A class as (a0, [a_0 .. a_{n-1}]).
pub type Vec0 = (i64, Vec<i64>);

fn dot(a: &Vec0, b: &Vec0) -> i64 {
    a.0 * b.0 - a.1.iter().zip(&b.1).map(|(x, y)| x * y).sum::<i64>()
}

fn lemma_ok(a0: i64, v: &[i64]) -> bool {
    let adj: i64 = v.iter().map(|a| a * a + a).sum();
    if adj != 2 + a0 * a0 - 3 * a0 {
        return false;
    }
    match a0 {
        0 => v.iter().filter(|&&a| a == 1).count() == 1 && v.iter().all(|&a| (-1..=1).contains(&a)),
        1 | 2 => v.iter().all(|&a| a == 0 || a == -1),
        3 => v.iter().filter(|&&a| a == -2).count() == 1 && v.iter().all(|&a| (-2..=0).contains(&a)),
        _ => false,
    }
}

/// Every vector in {-2,-1,0,1}^n satisfying the sphere lemma with the given a0 and square.
fn candidates(a0: i64, square: i64, n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let total = 4usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let d = (c % 4) as i64 - 2;
                c /= 4;
                d
            })
            .collect();
        if lemma_ok(a0, &v) && dot(&(a0, v.clone()), &(a0, v.clone())) == square {
            out.push(v);
        }
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Canonical orbit key: drop unused indices, then the lexicographically least
/// relabeling over all permutations of the used ones.
pub fn orbit_key(classes: &[Vec0]) -> Vec<Vec0> {
    let n = classes.first().map_or(0, |c| c.1.len());
    let used: Vec<usize> = (0..n).filter(|&i| classes.iter().any(|c| c.1[i] != 0)).collect();
    let k = used.len();
    let mut best: Option<Vec<Vec0>> = None;
    for perm in permutations(k) {
        let relabeled: Vec<Vec0> = classes
            .iter()
            .map(|c| {
                let mut v = vec![0; k];
                for (slot, &src) in perm.iter().zip(&used) {
                    v[*slot] = c.1[src];
                }
                (c.0, v)
            })
            .collect();
        if best.as_ref().is_none_or(|b| relabeled < *b) {
            best = Some(relabeled);
        }
    }
    best.unwrap_or_default()
}

/// All orbit keys of embeddings with at most n exceptional classes.
pub fn brute_force(spec: &ConfigurationSpec, n: usize) -> BTreeSet<Vec<Vec0>> {
    let k = spec.len();
    let t = spec.t();
    let line = spec.line();
    let cands: Vec<Vec<Vec<i64>>> =
        (0..k).map(|i| if i == line { vec![vec![0; n]] } else { candidates(t[i][line], t[i][i], n) }).collect();
    let mut out = BTreeSet::new();
    let mut cur: Vec<Vec0> = Vec::new();
    fn rec(
        i: usize,
        k: usize,
        t: &[Vec<i64>],
        line: usize,
        cands: &[Vec<Vec<i64>>],
        cur: &mut Vec<Vec0>,
        out: &mut BTreeSet<Vec<Vec0>>,
    ) {
        if i == k {
            // positivity: no index has +1 in two classes
            let n = cur[0].1.len();
            for idx in 0..n {
                if cur.iter().filter(|c| c.1[idx] == 1).count() > 1 {
                    return;
                }
            }
            out.insert(orbit_key(cur));
            return;
        }
        let a0 = if i == line { 1 } else { t[i][line] };
        for v in &cands[i] {
            let c = (a0, v.clone());
            if (0..i).all(|j| dot(&cur[j], &c) == t[i][j]) {
                cur.push(c);
                rec(i + 1, k, t, line, cands, cur, out);
                cur.pop();
            }
        }
    }
    rec(0, k, t, line, &cands, &mut cur, &mut out);
    out
}

/// Orbit key of a library solution, over n indices.
pub fn key_of(sol: &cuspfill::embedding::EmbeddingSolution, n: usize) -> Vec<Vec0> {
    let classes: Vec<Vec0> = sol.classes.iter().map(|c| (c.a0, (0..n).map(|i| c.coeff(i)).collect())).collect();
    orbit_key(&classes)
}

fn random_class<R: Rng>(rng: &mut R, n: usize) -> Vec0 {
    let a0 = rng.gen_range(0..=3);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let mut v = vec![0; n];
    let mut it = idx.into_iter();
    match a0 {
        0 => v[it.next().unwrap()] = 1,
        3 => v[it.next().unwrap()] = -2,
        _ => {}
    }
    let rest: Vec<usize> = it.collect();
    let m = rng.gen_range(0..=rest.len());
    for &i in &rest[..m] {
        v[i] = -1;
    }
    (a0, v)
}

/// A spec realized by random sphere classes over n <= 5 indices, with the line
/// at a random position and at most 5 components. Some specs get one
/// intersection number bumped so that they may have no solution.
pub fn random_spec<R: Rng>(rng: &mut R) -> ConfigurationSpec {
    loop {
        let n = rng.gen_range(2..=5);
        let extra = rng.gen_range(1..=4);
        let mut classes = vec![(1, vec![0; n])];
        for _ in 0..extra {
            classes.push(random_class(rng, n));
        }
        let k = classes.len();
        let mut t: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| dot(&classes[i], &classes[j])).collect()).collect();
        if (0..k).any(|i| (0..k).any(|j| i != j && t[i][j] < 0)) {
            continue;
        }
        if rng.gen_bool(0.25) && k > 2 {
            let (i, j) = (rng.gen_range(1..k), rng.gen_range(1..k));
            if i != j {
                t[i][j] += 1;
                t[j][i] += 1;
            }
        }
        let mut perm: Vec<usize> = (0..k).collect();
        perm.shuffle(rng);
        let spec = ConfigurationSpec::new(t, 0).expect("generated spec is valid");
        return spec.permuted(&perm);
    }
}
pub mod golden;
