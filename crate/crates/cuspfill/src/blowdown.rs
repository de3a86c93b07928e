//! Rational blow-down chains, sphere classes in filling complements, and
//! homological search for plumbings inside a filling.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::embedding::EmbeddingSolution;
use crate::lattice::{self, gram, orthogonal_complement, smith_normal_form, HomologyClass, IntMatrix, LatticeError};
use crate::plumbing::{e256_x, e64_7, intersection_matrix, PlumbingGraph};

#[derive(Debug, Error)]
pub enum BlowdownError {
    #[error("chain must be non-empty with every weight <= -2")]
    BadChain,
    #[error("chain {0:?} is not obtained from (-4) by 2-expansions")]
    NotBlowdownable(Vec<i64>),
    #[error("configuration classes are linearly dependent")]
    DependentClasses,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Weights of a linear plumbing, each at most −2.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ChainWeights(Vec<i64>);

impl ChainWeights {
    pub fn new(w: Vec<i64>) -> Result<Self, BlowdownError> {
        if w.is_empty() || w.iter().any(|&x| x > -2) {
            return Err(BlowdownError::BadChain);
        }
        Ok(ChainWeights(w))
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn graph(&self) -> PlumbingGraph {
        PlumbingGraph::linear(&self.0)
    }

    /// The two 2-expansions: (a₁−1, …, aₙ, −2) and (−2, a₁, …, aₙ−1).
    pub fn expansions(&self) -> [ChainWeights; 2] {
        let mut a = self.0.clone();
        a[0] -= 1;
        a.push(-2);
        let mut b = vec![-2];
        b.extend_from_slice(&self.0);
        *b.last_mut().unwrap() -= 1;
        [ChainWeights(a), ChainWeights(b)]
    }
}

/// Reverse reduction: strip a terminal −2 and raise the opposite end by one
/// until either (−4) is reached or no step applies.
pub fn is_linear_blowdownable(w: &ChainWeights) -> bool {
    let mut v = w.0.clone();
    loop {
        if v == [-4] {
            return true;
        }
        let n = v.len();
        if n < 2 {
            return false;
        }
        let (first, last) = (v[0], v[n - 1]);
        if last == -2 && first <= -3 {
            v.pop();
            v[0] += 1;
        } else if first == -2 && last <= -3 {
            v.remove(0);
            v[n - 2] += 1;
        } else {
            return false;
        }
    }
}

/// All chains reachable from (−4) by 2-expansions with length at most `max_len`.
pub fn generate_blowdown_chains(max_len: usize) -> BTreeSet<ChainWeights> {
    let mut out = BTreeSet::new();
    if max_len == 0 {
        return out;
    }
    let mut layer = vec![ChainWeights(vec![-4])];
    while let Some(first) = layer.first() {
        if first.len() > max_len {
            break;
        }
        out.extend(layer.iter().cloned());
        let next: BTreeSet<ChainWeights> = layer.iter().flat_map(|c| c.expansions()).collect();
        layer = next.into_iter().collect();
    }
    out
}

/// p with |det| = p² for a blow-down chain (boundary L(p², pq−1)).
pub fn chain_determinant_p(w: &ChainWeights) -> Result<i64, BlowdownError> {
    if !is_linear_blowdownable(w) {
        return Err(BlowdownError::NotBlowdownable(w.0.clone()));
    }
    let det = lattice::determinant(&intersection_matrix(&w.graph()))?;
    let d = det.abs().to_i64().expect("chain determinant fits in i64");
    let p = d.sqrt();
    debug_assert_eq!(p * p, d);
    Ok(p)
}

/// Non-linear plumbings that rationally blow down, with where they come from.
#[derive(Clone, Debug, Serialize)]
pub struct BlowdownRegistryEntry {
    pub name: &'static str,
    pub graph: PlumbingGraph,
    pub citation: &'static str,
}

pub fn blowdown_registry() -> Vec<BlowdownRegistryEntry> {
    vec![
        BlowdownRegistryEntry { name: "e64_7", graph: e64_7(), citation: "Bhupal-Stipsicz family 1(f), q = 2" },
        BlowdownRegistryEntry { name: "e256_x", graph: e256_x(), citation: "Bhupal-Stipsicz family 1(j), q = 4" },
    ]
}

/// Sphere classes orthogonal to every configuration class, keyed by square.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ComplementSpheres {
    pub by_square: BTreeMap<i64, Vec<HomologyClass>>,
}

impl ComplementSpheres {
    pub fn squares(&self) -> BTreeSet<i64> {
        self.by_square.keys().copied().collect()
    }

    pub fn with_square(&self, s: i64) -> &[HomologyClass] {
        self.by_square.get(&s).map_or(&[], |v| v.as_slice())
    }

    pub fn all(&self) -> impl Iterator<Item = &HomologyClass> {
        self.by_square.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.by_square.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_square.is_empty()
    }
}

/// Classes eₚ − Σ_{j∈S} e_j (S non-empty) over indices 0..n that are orthogonal
/// to all configuration classes. Since h is in the configuration, a₀ = 0, and
/// the sphere constraints force exactly this shape. Exceptional classes eₚ
/// (square −1) are left out. A +1 at an index where a configuration class
/// already has +1 is excluded by positivity.
pub fn complement_sphere_classes(sol: &EmbeddingSolution, n: usize) -> ComplementSpheres {
    let cols: Vec<Vec<i64>> = sol.classes.iter().map(|c| (0..n).map(|i| c.coeff(i)).collect()).collect();
    let mut out = ComplementSpheres::default();
    // suffix[c][i] = (min, max) of Σ_{j ≥ i} choices of +c_j
    let suffix: Vec<Vec<(i64, i64)>> = cols
        .iter()
        .map(|col| {
            let mut s = vec![(0, 0); n + 1];
            for i in (0..n).rev() {
                let (lo, hi) = s[i + 1];
                s[i] = (lo + col[i].min(0), hi + col[i].max(0));
            }
            s
        })
        .collect();
    for p in 0..n {
        if cols.iter().any(|col| col[p] == 1) {
            continue;
        }
        // x·c = −Σ xᵢcᵢ; with xₚ = 1 and x_j = −1 on S this is −c_p + Σ_S c_j
        let acc: Vec<i64> = cols.iter().map(|col| -col[p]).collect();
        let mut chosen = Vec::new();
        complement_dfs(p, 0, n, &cols, &suffix, acc, &mut chosen, &mut out);
    }
    for v in out.by_square.values_mut() {
        v.sort();
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn complement_dfs(
    p: usize,
    i: usize,
    n: usize,
    cols: &[Vec<i64>],
    suffix: &[Vec<(i64, i64)>],
    acc: Vec<i64>,
    chosen: &mut Vec<usize>,
    out: &mut ComplementSpheres,
) {
    if acc.iter().zip(suffix).any(|(&a, s)| a + s[i].0 > 0 || a + s[i].1 < 0) {
        return;
    }
    if i == n {
        if !chosen.is_empty() {
            let c = HomologyClass::new(0, std::iter::once((p, 1)).chain(chosen.iter().map(|&j| (j, -1))));
            out.by_square.entry(c.square()).or_default().push(c);
        }
        return;
    }
    complement_dfs(p, i + 1, n, cols, suffix, acc.clone(), chosen, out);
    if i != p {
        let next: Vec<i64> = acc.iter().zip(cols).map(|(a, col)| a + col[i]).collect();
        chosen.push(i);
        complement_dfs(p, i + 1, n, cols, suffix, next, chosen, out);
        chosen.pop();
    }
}

/// Assignments of complement sphere classes to the vertices of `target` with
/// the right squares and pairwise products (1 along edges, 0 otherwise).
/// Stops after `limit` solutions when given.
pub fn find_plumbing_in_complement(
    sol: &EmbeddingSolution,
    n: usize,
    target: &PlumbingGraph,
    limit: Option<usize>,
) -> Vec<Vec<HomologyClass>> {
    let spheres = complement_sphere_classes(sol, n);
    find_plumbing_in(&spheres, target, limit)
}

/// Same search over a precomputed class list.
pub fn find_plumbing_in(
    spheres: &ComplementSpheres,
    target: &PlumbingGraph,
    limit: Option<usize>,
) -> Vec<Vec<HomologyClass>> {
    let k = target.len();
    let adj = target.adjacency();
    // BFS order so every vertex after the first has a placed neighbor
    let mut order = Vec::with_capacity(k);
    let mut seen = vec![false; k];
    for start in 0..k {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    let mut assigned: Vec<Option<HomologyClass>> = vec![None; k];
    let mut out = Vec::new();
    plumbing_dfs(spheres, target, &adj, &order, 0, &mut assigned, &mut out, limit);
    out
}

#[allow(clippy::too_many_arguments)]
fn plumbing_dfs(
    spheres: &ComplementSpheres,
    target: &PlumbingGraph,
    adj: &[Vec<usize>],
    order: &[usize],
    depth: usize,
    assigned: &mut Vec<Option<HomologyClass>>,
    out: &mut Vec<Vec<HomologyClass>>,
    limit: Option<usize>,
) {
    if limit.is_some_and(|l| out.len() >= l) {
        return;
    }
    if depth == order.len() {
        out.push(assigned.iter().map(|c| c.clone().unwrap()).collect());
        return;
    }
    let v = order[depth];
    for c in spheres.with_square(target.weights[v]) {
        let ok = order[..depth].iter().all(|&u| {
            let want = i64::from(adj[v].contains(&u));
            assigned[u].as_ref().unwrap().dot(c) == want
        });
        if ok {
            assigned[v] = Some(c.clone());
            plumbing_dfs(spheres, target, adj, order, depth + 1, assigned, out, limit);
            assigned[v] = None;
        }
    }
}

/// Homology of the filling obtained as the complement of the configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FillingHomology {
    pub b2: i64,
    pub basis: Vec<HomologyClass>,
    pub gram: Vec<Vec<i64>>,
    pub determinant: i64,
    /// Non-unit elementary divisors of the Gram matrix.
    pub divisors: Vec<i64>,
}

pub fn filling_homology(sol: &EmbeddingSolution, n: usize) -> Result<FillingHomology, BlowdownError> {
    let k = sol.classes.len();
    lattice::check_range(&sol.classes, n)?;
    if lattice::class_rank(&sol.classes, n) != k {
        return Err(BlowdownError::DependentClasses);
    }
    let basis = orthogonal_complement(&sol.classes, n)?;
    let b2 = (n + 1) as i64 - k as i64;
    debug_assert_eq!(basis.len() as i64, b2);
    let g: IntMatrix = if basis.is_empty() { IntMatrix::zeros(0, 0) } else { gram(&basis) };
    let determinant = if basis.is_empty() { BigInt::from(1) } else { lattice::determinant(&g)? };
    let divisors = smith_normal_form(&g)
        .diagonal()
        .into_iter()
        .map(|d| d.abs())
        .filter(|d| *d != BigInt::from(1))
        .map(|d| d.to_i64().expect("divisor fits in i64"))
        .collect();
    Ok(FillingHomology {
        b2,
        basis,
        gram: g.to_i64().expect("gram entries fit in i64"),
        determinant: determinant.to_i64().expect("determinant fits in i64"),
        divisors,
    })
}
