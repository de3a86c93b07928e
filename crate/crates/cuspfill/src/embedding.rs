//! Homological embeddings of sphere configurations into ℂP² # N(−ℂP²).
//!
//! A configuration is given by its intersection matrix T and the index of the
//! component that must be the line class h. Each other component is a sphere
//! whose h-coefficient is read off as a₀ = T[i][line]; its exceptional
//! coefficients are then constrained by adjunction (the sphere lemma), by the
//! pairwise products in T, and by the positivity rule that no eᵢ carries
//! coefficient +1 in two different classes.
//!
//! The search places one class at a time. Exceptional indices already in use
//! are grouped into cells of indices whose coefficient columns agree on every
//! placed class; indices in one cell are interchangeable, so the next class is
//! determined (up to relabeling) by how many indices of each cell it uses. The
//! result is one representative per relabeling orbit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::HomologyClass;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("T must be a non-empty square symmetric matrix")]
    BadMatrix,
    #[error("line index {0} out of range")]
    BadLine(usize),
    #[error("line component must have self-intersection 1, got {0}")]
    LineNotPlusOne(i64),
    #[error("T[{0}][{1}] = {2} is negative")]
    NegativeIntersection(usize, usize, i64),
    #[error("h-coefficient a0 = {0} is not supported (need 0 <= a0 <= 3)")]
    UnsupportedA0(i64),
    #[error("intersection entry ({0},{1}) out of range")]
    BadEntry(usize, usize),
    #[error("{0} labels for {1} components")]
    BadLabels(usize, usize),
}

/// Required intersection data of a curve configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigurationSpec {
    #[serde(rename = "T")]
    t: Vec<Vec<i64>>,
    line: usize,
    labels: Vec<String>,
}

impl ConfigurationSpec {
    pub fn new(t: Vec<Vec<i64>>, line: usize) -> Result<Self, EmbeddingError> {
        let k = t.len();
        let labels = (0..k).map(|i| format!("C{i}")).collect();
        Self::with_labels(t, line, labels)
    }

    pub fn with_labels(t: Vec<Vec<i64>>, line: usize, labels: Vec<String>) -> Result<Self, EmbeddingError> {
        let k = t.len();
        if k == 0 || t.iter().any(|r| r.len() != k) {
            return Err(EmbeddingError::BadMatrix);
        }
        for i in 0..k {
            for j in 0..k {
                if t[i][j] != t[j][i] {
                    return Err(EmbeddingError::BadMatrix);
                }
                if i != j && t[i][j] < 0 {
                    return Err(EmbeddingError::NegativeIntersection(i, j, t[i][j]));
                }
            }
        }
        if line >= k {
            return Err(EmbeddingError::BadLine(line));
        }
        if t[line][line] != 1 {
            return Err(EmbeddingError::LineNotPlusOne(t[line][line]));
        }
        for i in 0..k {
            if i != line && t[i][line] > 3 {
                return Err(EmbeddingError::UnsupportedA0(t[i][line]));
            }
        }
        if labels.len() != k {
            return Err(EmbeddingError::BadLabels(labels.len(), k));
        }
        Ok(ConfigurationSpec { t, line, labels })
    }

    /// Build from self-intersections and a list of (i, j, multiplicity) contacts.
    pub fn from_contacts(
        self_intersections: &[i64],
        contacts: &[(usize, usize, i64)],
        line: usize,
    ) -> Result<Self, EmbeddingError> {
        let k = self_intersections.len();
        let mut t = vec![vec![0; k]; k];
        for (i, &s) in self_intersections.iter().enumerate() {
            t[i][i] = s;
        }
        for &(i, j, m) in contacts {
            if i >= k || j >= k || i == j {
                return Err(EmbeddingError::BadEntry(i, j));
            }
            t[i][j] += m;
            t[j][i] += m;
        }
        Self::new(t, line)
    }

    pub fn t(&self) -> &[Vec<i64>] {
        &self.t
    }

    pub fn line(&self) -> usize {
        self.line
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn a0(&self, i: usize) -> i64 {
        self.t[i][self.line]
    }

    /// Reorder components: component `i` of the result is component `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let k = self.len();
        let t = (0..k).map(|i| (0..k).map(|j| self.t[perm[i]][perm[j]]).collect()).collect();
        let line = perm.iter().position(|&p| p == self.line).expect("perm is a permutation");
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        ConfigurationSpec { t, line, labels }
    }

    /// Sum over components of the largest possible support of its class.
    pub fn default_n_max(&self) -> usize {
        (0..self.len())
            .filter(|&i| i != self.line)
            .filter_map(|i| sphere_pattern(self.a0(i), self.t[i][i]).ok().flatten())
            .map(|p| p.support())
            .sum()
    }
}

/// Coefficient pattern of a sphere class with given a₀ and square, up to permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpherePattern {
    pub a0: i64,
    /// Value of the single distinguished coefficient: +1 when a₀ = 0, −2 when a₀ = 3.
    pub special: Option<i64>,
    pub minus_ones: usize,
}

impl SpherePattern {
    pub fn support(&self) -> usize {
        self.minus_ones + usize::from(self.special.is_some())
    }

    pub fn zeros(&self, n: usize) -> usize {
        n - self.support()
    }

    /// The representative using indices 0, 1, … (special index first).
    pub fn representative(&self) -> HomologyClass {
        let mut coeffs = Vec::new();
        let mut next = 0;
        if let Some(s) = self.special {
            coeffs.push((0, s));
            next = 1;
        }
        for i in 0..self.minus_ones {
            coeffs.push((next + i, -1));
        }
        HomologyClass::new(self.a0, coeffs)
    }
}

impl fmt::Display for SpherePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative())
    }
}

/// The unique pattern for (a₀, square), if one exists. Errors for a₀ outside 0..=3.
fn sphere_pattern(a0: i64, self_int: i64) -> Result<Option<SpherePattern>, EmbeddingError> {
    let special = match a0 {
        0 => Some(1),
        1 | 2 => None,
        3 => Some(-2),
        _ => return Err(EmbeddingError::UnsupportedA0(a0)),
    };
    let sp = special.map_or(0, |s: i64| s * s);
    let k = a0 * a0 - sp - self_int;
    if k < 0 {
        return Ok(None);
    }
    Ok(Some(SpherePattern { a0, special, minus_ones: k as usize }))
}

/// All coefficient patterns (up to index permutation) allowed for a symplectic
/// sphere with h-coefficient a₀ and the given square in ℂP² # N(−ℂP²).
pub fn sphere_class_candidates(a0: i64, self_int: i64, n: usize) -> Result<Vec<SpherePattern>, EmbeddingError> {
    Ok(sphere_pattern(a0, self_int)?.into_iter().filter(|p| p.support() <= n).collect())
}

/// Reason a class cannot be a sphere class, if any.
pub fn sphere_violation(c: &HomologyClass) -> Option<String> {
    let a0 = c.a0;
    if a0 < 0 {
        return Some(format!("{c}: negative h-coefficient"));
    }
    let adj: i64 = c.coeffs().values().map(|a| a * a + a).sum();
    if adj != 2 + a0 * a0 - 3 * a0 {
        return Some(format!("{c}: adjunction sum {adj} != {}", 2 + a0 * a0 - 3 * a0));
    }
    if a0 == 0 {
        let plus = c.coeffs().values().filter(|&&a| a == 1).count();
        if plus != 1 || c.coeffs().values().any(|&a| a != 1 && a != -1) {
            return Some(format!("{c}: a0 = 0 needs one +1 and otherwise 0/-1"));
        }
    } else if c.coeffs().values().any(|&a| a > 0) {
        return Some(format!("{c}: positive exceptional coefficient with a0 != 0"));
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EmbeddingSolution {
    pub classes: Vec<HomologyClass>,
    pub n_used: usize,
}

impl EmbeddingSolution {
    /// n_used is recomputed from the classes.
    pub fn new(classes: Vec<HomologyClass>) -> Self {
        let used: BTreeSet<usize> = classes.iter().flat_map(|c| c.coeffs().keys().copied()).collect();
        EmbeddingSolution { classes, n_used: used.len() }
    }

    /// Second Betti number of the complement: (N + 1) − k with N = n_used.
    pub fn b2_complement(&self) -> i64 {
        self.n_used as i64 + 1 - self.classes.len() as i64
    }
}

impl fmt::Display for EmbeddingSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.classes.iter().map(|c| c.to_string()).collect();
        write!(f, "N={}: {}", self.n_used, parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    ComponentCount { expected: usize, got: usize },
    LineNotH { got: String },
    Sphere { component: usize, reason: String },
    Product { i: usize, j: usize, expected: i64, got: i64 },
    Positivity { index: usize, i: usize, j: usize },
    NUsed { claimed: usize, actual: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ComponentCount { expected, got } => write!(f, "expected {expected} classes, got {got}"),
            Violation::LineNotH { got } => write!(f, "line component is {got}, not h"),
            Violation::Sphere { component, reason } => write!(f, "component {component}: {reason}"),
            Violation::Product { i, j, expected, got } => {
                write!(f, "product of components {i},{j} is {got}, expected {expected}")
            }
            Violation::Positivity { index, i, j } => {
                write!(f, "e{index} has coefficient +1 in components {i} and {j}")
            }
            Violation::NUsed { claimed, actual } => write!(f, "n_used is {claimed}, classes use {actual}"),
        }
    }
}

/// Recheck every constraint; Err carries the first violation found.
pub fn verify_solution(spec: &ConfigurationSpec, sol: &EmbeddingSolution) -> Result<(), Violation> {
    let k = spec.len();
    if sol.classes.len() != k {
        return Err(Violation::ComponentCount { expected: k, got: sol.classes.len() });
    }
    if sol.classes[spec.line] != HomologyClass::h() {
        return Err(Violation::LineNotH { got: sol.classes[spec.line].to_string() });
    }
    for (i, c) in sol.classes.iter().enumerate() {
        if let Some(reason) = sphere_violation(c) {
            return Err(Violation::Sphere { component: i, reason });
        }
    }
    for i in 0..k {
        for j in i..k {
            let got = sol.classes[i].dot(&sol.classes[j]);
            if got != spec.t[i][j] {
                return Err(Violation::Product { i, j, expected: spec.t[i][j], got });
            }
        }
    }
    let mut plus: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, c) in sol.classes.iter().enumerate() {
        for (&idx, &a) in c.coeffs() {
            if a == 1 {
                if let Some(&j) = plus.get(&idx) {
                    return Err(Violation::Positivity { index: idx, i: j, j: i });
                }
                plus.insert(idx, i);
            }
        }
    }
    let actual = EmbeddingSolution::new(sol.classes.clone()).n_used;
    if actual != sol.n_used {
        return Err(Violation::NUsed { claimed: sol.n_used, actual });
    }
    Ok(())
}

/// Relabel exceptional indices to 0..n_used−1, ordered by their coefficient
/// columns (lexicographic over components, −2 < −1 < 0 < 1). Two solutions are
/// relabelings of each other iff their canonical forms agree.
pub fn canonical_form(sol: &EmbeddingSolution) -> EmbeddingSolution {
    let used: BTreeSet<usize> = sol.classes.iter().flat_map(|c| c.coeffs().keys().copied()).collect();
    let mut cols: Vec<(Vec<i64>, usize)> =
        used.iter().map(|&i| (sol.classes.iter().map(|c| c.coeff(i)).collect(), i)).collect();
    // ties (identical columns) are interchangeable; the index tiebreak only fixes the order
    cols.sort();
    let map: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(new, (_, old))| (*old, new)).collect();
    let classes = sol.classes.iter().map(|c| c.relabel(|i| map[&i])).collect();
    EmbeddingSolution { classes, n_used: used.len() }
}

/// Order in which components are placed: the line, then by descending a₀,
/// then by the number of nonzero intersections with already placed components.
fn placement_order(spec: &ConfigurationSpec) -> Vec<usize> {
    let k = spec.len();
    let mut order = vec![spec.line];
    let mut left: Vec<usize> = (0..k).filter(|&i| i != spec.line).collect();
    while !left.is_empty() {
        let best = left
            .iter()
            .copied()
            .max_by_key(|&i| {
                let links = order.iter().filter(|&&j| spec.t[i][j] != 0).count();
                (spec.a0(i), links, std::cmp::Reverse(i))
            })
            .unwrap();
        order.push(best);
        left.retain(|&i| i != best);
    }
    order
}

struct Search<'a> {
    spec: &'a ConfigurationSpec,
    order: Vec<usize>,
    patterns: Vec<SpherePattern>,
    n_max: usize,
    /// dense exceptional coefficients per component (length n_max)
    placed: Vec<Option<Vec<i64>>>,
    used: usize,
    out: Vec<EmbeddingSolution>,
}

struct Cell {
    indices: Vec<usize>,
    /// coefficient of the cell's indices in each placed class, in placement order
    column: Vec<i64>,
}

impl Search<'_> {
    fn cells(&self, depth: usize) -> Vec<Cell> {
        let placed = &self.order[..depth];
        let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for idx in 0..self.used {
            let col = placed.iter().map(|&c| self.placed[c].as_ref().unwrap()[idx]).collect();
            groups.entry(col).or_default().push(idx);
        }
        let mut cells: Vec<Cell> = groups.into_iter().map(|(column, indices)| Cell { indices, column }).collect();
        if self.used < self.n_max {
            cells.push(Cell { indices: (self.used..self.n_max).collect(), column: vec![0; depth] });
        }
        cells
    }

    fn run(&mut self, depth: usize) {
        if depth == self.order.len() {
            let classes = (0..self.spec.len())
                .map(|c| {
                    let v = self.placed[c].as_ref().unwrap();
                    HomologyClass::new(self.patterns[c].a0, v.iter().enumerate().map(|(i, &x)| (i, x)))
                })
                .collect();
            self.out.push(EmbeddingSolution::new(classes));
            return;
        }
        let c = self.order[depth];
        let pat = self.patterns[c];
        let cells = self.cells(depth);
        // Σ_i x_i·y_i over exceptional indices must equal a₀a₀' − T for each placed class y
        let need: Vec<i64> =
            self.order[..depth].iter().map(|&p| pat.a0 * self.patterns[p].a0 - self.spec.t[c][p]).collect();

        let hosts: Vec<Option<usize>> = match pat.special {
            None => vec![None],
            Some(s) => (0..cells.len()).filter(|&h| !(s == 1 && cells[h].column.contains(&1))).map(Some).collect(),
        };
        for host in hosts {
            let mut counts = vec![0usize; cells.len()];
            let mut acc: Vec<i64> = vec![0; depth];
            if let (Some(h), Some(s)) = (host, pat.special) {
                for (a, y) in acc.iter_mut().zip(&cells[h].column) {
                    *a += s * y;
                }
            }
            self.distribute(depth, &cells, host, 0, pat.minus_ones, &mut counts, &mut acc, &need);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn distribute(
        &mut self,
        depth: usize,
        cells: &[Cell],
        host: Option<usize>,
        ci: usize,
        left: usize,
        counts: &mut Vec<usize>,
        acc: &mut Vec<i64>,
        need: &[i64],
    ) {
        if ci == cells.len() {
            if left == 0 && acc.as_slice() == need {
                self.place(depth, cells, host, counts);
            }
            return;
        }
        let cap = cells[ci].indices.len() - usize::from(host == Some(ci));
        // remaining capacity must be able to absorb what is left
        let rest: usize = cells[ci + 1..]
            .iter()
            .enumerate()
            .map(|(o, cell)| cell.indices.len() - usize::from(host == Some(ci + 1 + o)))
            .sum();
        let lo = left.saturating_sub(rest);
        for m in lo..=cap.min(left) {
            counts[ci] = m;
            for (a, y) in acc.iter_mut().zip(&cells[ci].column) {
                *a -= m as i64 * y;
            }
            self.distribute(depth, cells, host, ci + 1, left - m, counts, acc, need);
            for (a, y) in acc.iter_mut().zip(&cells[ci].column) {
                *a += m as i64 * y;
            }
        }
        counts[ci] = 0;
    }

    fn place(&mut self, depth: usize, cells: &[Cell], host: Option<usize>, counts: &[usize]) {
        let c = self.order[depth];
        let pat = self.patterns[c];
        let mut v = vec![0i64; self.n_max];
        let mut top = 0;
        for (ci, cell) in cells.iter().enumerate() {
            let mut it = cell.indices.iter();
            if host == Some(ci) {
                let &i = it.next().unwrap();
                v[i] = pat.special.unwrap();
                top = top.max(i + 1);
            }
            for &i in it.take(counts[ci]) {
                v[i] = -1;
                top = top.max(i + 1);
            }
        }
        let saved = self.used;
        self.used = self.used.max(top);
        self.placed[c] = Some(v);
        self.run(depth + 1);
        self.placed[c] = None;
        self.used = saved;
    }
}

/// All embeddings with at most `n_max` exceptional classes, one per relabeling
/// orbit, in canonical form. Sorted by descending n_used, then by classes.
pub fn enumerate_embeddings(spec: &ConfigurationSpec, n_max: usize) -> Vec<EmbeddingSolution> {
    let mut patterns = Vec::with_capacity(spec.len());
    for i in 0..spec.len() {
        match sphere_pattern(spec.a0(i), spec.t[i][i]) {
            Ok(Some(p)) => patterns.push(p),
            // a component with no admissible pattern admits no embedding
            _ => return Vec::new(),
        }
    }
    let mut search = Search {
        spec,
        order: placement_order(spec),
        patterns,
        n_max,
        placed: vec![None; spec.len()],
        used: 0,
        out: Vec::new(),
    };
    search.run(0);
    let set: BTreeSet<EmbeddingSolution> = search.out.iter().map(canonical_form).collect();
    let mut out: Vec<EmbeddingSolution> = set.into_iter().collect();
    out.sort_by(|a, b| b.n_used.cmp(&a.n_used).then_with(|| a.classes.cmp(&b.classes)));
    out
}

/// Solutions grouped by n_used (descending).
pub fn group_by_n_used(sols: &[EmbeddingSolution]) -> Vec<(usize, Vec<EmbeddingSolution>)> {
    let mut map: BTreeMap<usize, Vec<EmbeddingSolution>> = BTreeMap::new();
    for s in sols {
        map.entry(s.n_used).or_default().push(s.clone());
    }
    map.into_iter().rev().collect()
}
