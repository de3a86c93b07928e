//! Plumbing graphs, negative continued fractions and Seifert data of torus-knot surgeries.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlumbingError {
    #[error("graph has no vertices")]
    Empty,
    #[error("edge ({0},{1}) is out of range or a loop")]
    BadEdge(usize, usize),
    #[error("duplicate edge ({0},{1})")]
    DuplicateEdge(usize, usize),
    #[error("graph is not a tree")]
    NotTree,
    #[error("need num > den >= 1 and gcd 1, got {0}/{1}")]
    BadFraction(i64, i64),
    #[error("ratio {0} is not in (0,1)")]
    BadRatio(Ratio<i64>),
    #[error("invalid cusp type ({0},{1})")]
    BadCusp(i64, i64),
    #[error("surgery coefficient {n} is not allowed for T({p},{q}): need n > 0 and |n - pq| > 1")]
    BadSurgery { p: i64, q: i64, n: i64 },
}

/// Weighted tree. Edges are unordered vertex pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlumbingGraph {
    pub weights: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
}

impl PlumbingGraph {
    pub fn new(weights: Vec<i64>, edges: Vec<(usize, usize)>) -> Result<Self, PlumbingError> {
        let g = PlumbingGraph { weights, edges };
        g.validate()?;
        Ok(g)
    }

    pub fn linear(weights: &[i64]) -> Self {
        let edges = (1..weights.len()).map(|i| (i - 1, i)).collect();
        PlumbingGraph { weights: weights.to_vec(), edges }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn validate(&self) -> Result<(), PlumbingError> {
        let n = self.weights.len();
        if n == 0 {
            return Err(PlumbingError::Empty);
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in &self.edges {
            if a >= n || b >= n || a == b {
                return Err(PlumbingError::BadEdge(a, b));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(PlumbingError::DuplicateEdge(a, b));
            }
        }
        if self.edges.len() != n - 1 {
            return Err(PlumbingError::NotTree);
        }
        // n−1 edges plus connected means tree
        let adj = self.adjacency();
        let mut stack = vec![0];
        let mut visited = vec![false; n];
        visited[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    stack.push(w);
                }
            }
        }
        if visited.iter().all(|&x| x) {
            Ok(())
        } else {
            Err(PlumbingError::NotTree)
        }
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.weights.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        adj
    }

    pub fn is_linear(&self) -> bool {
        self.adjacency().iter().all(|a| a.len() <= 2)
    }

    /// Chain weights in path order, if the graph is a path.
    pub fn as_chain(&self) -> Option<Vec<i64>> {
        if !self.is_linear() {
            return None;
        }
        let adj = self.adjacency();
        let start = (0..self.len()).find(|&v| adj[v].len() <= 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        Some(order.iter().map(|&v| self.weights[v]).collect())
    }

    /// Isomorphism invariant for paths and star-shaped trees (one vertex of degree ≥ 3).
    /// None for other shapes.
    pub fn star_signature(&self) -> Option<StarSignature> {
        if let Some(chain) = self.as_chain() {
            let mut rev = chain.clone();
            rev.reverse();
            return Some(StarSignature::Chain(chain.min(rev)));
        }
        let adj = self.adjacency();
        let hubs: Vec<usize> = (0..self.len()).filter(|&v| adj[v].len() >= 3).collect();
        let [center] = hubs.as_slice() else {
            return None;
        };
        let mut legs = Vec::new();
        for &first in &adj[*center] {
            let mut leg = Vec::new();
            let (mut prev, mut cur) = (*center, first);
            loop {
                leg.push(self.weights[cur]);
                match adj[cur].iter().find(|&&w| w != prev) {
                    Some(&next) => {
                        prev = cur;
                        cur = next;
                    }
                    None => break,
                }
            }
            legs.push(leg);
        }
        legs.sort();
        Some(StarSignature::Star { center: self.weights[*center], legs })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum StarSignature {
    Chain(Vec<i64>),
    Star { center: i64, legs: Vec<Vec<i64>> },
}

impl fmt::Display for PlumbingGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "weights {:?}, edges {:?}", self.weights, self.edges)
    }
}

/// Weights on the diagonal, 1 for each edge.
pub fn intersection_matrix(g: &PlumbingGraph) -> IntMatrix {
    let n = g.len();
    let mut rows = vec![vec![0i64; n]; n];
    for (i, &w) in g.weights.iter().enumerate() {
        rows[i][i] = w;
    }
    for &(a, b) in &g.edges {
        rows[a][b] = 1;
        rows[b][a] = 1;
    }
    IntMatrix::from_i64(&rows)
}

/// num/den = a₁ − 1/(a₂ − 1/(⋯)), all aᵢ ≥ 2.
pub fn neg_continued_fraction(num: i64, den: i64) -> Result<Vec<i64>, PlumbingError> {
    if den < 1 || num <= den || num.gcd(&den) != 1 {
        return Err(PlumbingError::BadFraction(num, den));
    }
    let (mut a, mut b) = (num, den);
    let mut out = Vec::new();
    while b != 0 {
        let c = Integer::div_ceil(&a, &b);
        out.push(c);
        (a, b) = (b, c * b - a);
    }
    Ok(out)
}

/// Evaluate a₁ − 1/(a₂ − 1/(⋯)) as a fraction in lowest terms.
pub fn eval_neg_continued_fraction(a: &[i64]) -> Ratio<i64> {
    let mut acc: Option<Ratio<i64>> = None;
    for &x in a.iter().rev() {
        let x = Ratio::from_integer(x);
        acc = Some(match acc {
            None => x,
            Some(r) => x - r.recip(),
        });
    }
    acc.unwrap_or_else(Ratio::zero)
}

/// Small Seifert fibered data (e₀; r₁, r₂, r₃) with 0 < rᵢ < 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertData {
    pub e0: i64,
    ratios: [Ratio<i64>; 3],
}

impl SeifertData {
    /// Ratios are stored sorted by (denominator, numerator).
    pub fn new(e0: i64, ratios: [Ratio<i64>; 3]) -> Result<Self, PlumbingError> {
        let mut ratios = ratios;
        for r in &ratios {
            if *r <= Ratio::zero() || *r >= Ratio::one() {
                return Err(PlumbingError::BadRatio(*r));
            }
        }
        ratios.sort_by_key(|r| (*r.denom(), *r.numer()));
        Ok(SeifertData { e0, ratios })
    }

    pub fn ratios(&self) -> &[Ratio<i64>; 3] {
        &self.ratios
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.ratios;
        write!(f, "({}; {}, {}, {})", self.e0, a, b, c)
    }
}

pub fn euler_number(s: &SeifertData) -> Ratio<i64> {
    Ratio::from_integer(s.e0) + s.ratios.iter().sum::<Ratio<i64>>()
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    let e = a.extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.mod_floor(&m)
}

/// Seifert data of Y = −S³_n(T(p,q)).
///
/// The two cusp fibers have ratios (q⁻¹ mod p)/p and (p⁻¹ mod q)/q; the third
/// has the fractional part of 1/(n − pq); e₀ then makes the Euler number equal
/// n / (pq(n − pq)).
pub fn seifert_from_torus_surgery(p: i64, q: i64, n: i64) -> Result<SeifertData, PlumbingError> {
    if p < 2 || q <= p || p.gcd(&q) != 1 {
        return Err(PlumbingError::BadCusp(p, q));
    }
    let k = n - p * q;
    if n <= 0 || k.abs() <= 1 {
        return Err(PlumbingError::BadSurgery { p, q, n });
    }
    let rp = Ratio::new(mod_inverse(q, p), p);
    let rq = Ratio::new(mod_inverse(p, q), q);
    let inv = Ratio::new(1, k);
    let rm = inv - inv.floor();
    let euler = Ratio::new(n, p * q * k);
    let e0 = euler - rp - rq - rm;
    assert!(e0.is_integer(), "non-integral e0 for ({p},{q},{n})");
    SeifertData::new(e0.to_integer(), [rp, rq, rm])
}

/// Star-shaped plumbing: center e₀, one leg per ratio a/b given by −[b/a].
pub fn plumbing_from_seifert(s: &SeifertData) -> PlumbingGraph {
    let mut weights = vec![s.e0];
    let mut edges = Vec::new();
    for r in &s.ratios {
        let leg = neg_continued_fraction(*r.denom(), *r.numer()).expect("normalized ratio");
        let mut prev = 0;
        for a in leg {
            let v = weights.len();
            weights.push(-a);
            edges.push((prev, v));
            prev = v;
        }
    }
    PlumbingGraph { weights, edges }
}

/// The star (−2; −2 | −3 | −2,−2,−8) bounding the 64-surgery on T(3,22).
pub fn e64_7() -> PlumbingGraph {
    PlumbingGraph { weights: vec![-2, -2, -3, -2, -2, -8], edges: vec![(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)] }
}

/// The star (−2; −2 | −6 | −2,−2,−2,−2,−2,−8) bounding the 256-surgery on T(6,43).
pub fn e256_x() -> PlumbingGraph {
    PlumbingGraph {
        weights: vec![-2, -2, -6, -2, -2, -2, -2, -2, -8],
        edges: vec![(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8)],
    }
}
