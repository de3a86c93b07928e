//! Exact integer and rational linear algebra.
//!
//! Everything here works over `BigInt` / `BigRational`. Matrices are small
//! (at most a few dozen rows), so the algorithms are the textbook ones.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("cokernel is infinite")]
    InfiniteCokernel,
    #[error("element does not generate the cokernel")]
    NotGenerator,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("classes are linearly dependent")]
    DependentClasses,
    #[error("class {class} uses index e{index} outside 0..{n}")]
    IndexOutOfRange { class: String, index: usize, n: usize },
    #[error("cannot parse homology class {0:?}")]
    Parse(String),
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Build from rows; panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries as i64, if they all fit.
    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Leading principal k×k submatrix.
    pub fn leading(&self, k: usize) -> IntMatrix {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * f;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * f;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Dense rational matrix, entries kept in lowest terms by `BigRational`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn from_int(m: &IntMatrix) -> Self {
        RationalMatrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows);
        let mut data = vec![BigRational::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    data[i * other.cols + j] += a * &other[(k, j)];
                }
            }
        }
        RationalMatrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Scale by an integer and return the result if every entry becomes integral.
    pub fn scaled_to_int(&self, k: &BigInt) -> Option<IntMatrix> {
        let k = BigRational::from_integer(k.clone());
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = &self[(i, j)] * &k;
                if !v.is_integer() {
                    return None;
                }
                out[(i, j)] = v.to_integer();
            }
        }
        Some(out)
    }

    /// Quadratic form v·M·vᵀ.
    pub fn quadratic_form(&self, v: &[BigInt]) -> BigRational {
        assert!(self.rows == v.len() && self.cols == v.len());
        let mut acc = BigRational::zero();
        for i in 0..self.rows {
            if v[i].is_zero() {
                continue;
            }
            let mut row = BigRational::zero();
            for j in 0..self.cols {
                if !v[j].is_zero() {
                    row += &self[(i, j)] * BigRational::from_integer(v[j].clone());
                }
            }
            acc += row * BigRational::from_integer(v[i].clone());
        }
        acc
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &IntMatrix) -> Result<BigInt, LatticeError> {
    if !m.is_square() {
        return Err(LatticeError::NotSquare(m.rows, m.cols));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(i, k);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * &a[(n - 1, n - 1)])
}

/// Exact inverse by Gauss–Jordan elimination over the rationals.
pub fn inverse_rational(m: &IntMatrix) -> Result<RationalMatrix, LatticeError> {
    if !m.is_square() {
        return Err(LatticeError::NotSquare(m.rows, m.cols));
    }
    let n = m.rows;
    let mut a = RationalMatrix::from_int(m);
    let mut inv = RationalMatrix::from_int(&IntMatrix::identity(n));
    for c in 0..n {
        let p = (c..n).find(|&i| !a[(i, c)].is_zero()).ok_or(LatticeError::Singular)?;
        if p != c {
            for j in 0..n {
                a.data.swap(p * n + j, c * n + j);
                inv.data.swap(p * n + j, c * n + j);
            }
        }
        let piv = a[(c, c)].clone();
        for j in 0..n {
            a[(c, j)] = &a[(c, j)] / &piv;
            inv[(c, j)] = &inv[(c, j)] / &piv;
        }
        for i in 0..n {
            if i == c || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in 0..n {
                let t = &f * &a[(c, j)];
                a[(i, j)] -= t;
                let t = &f * &inv[(c, j)];
                inv[(i, j)] -= t;
            }
        }
    }
    Ok(inv)
}

/// Smith normal form: `u * m * v == d`, with `u`, `v` unimodular and the
/// diagonal of `d` non-negative with d₁ | d₂ | ….
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Snf { u, d: a, v };
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: pull an offending row into the pivot row
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { u, d: a, v }
}

/// Invariant factors of coker(m: ℤ^cols → ℤ^rows); one entry per row, 0 for a free summand.
pub fn cokernel(m: &IntMatrix) -> Vec<BigInt> {
    let snf = smith_normal_form(m);
    let mut out = snf.diagonal();
    out.resize(m.rows, BigInt::zero());
    out
}

/// An element of a finite cyclic group ℤ/modulus, stored in `0..modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    pub value: BigInt,
    pub modulus: BigInt,
}

impl Residue {
    pub fn new(value: BigInt, modulus: BigInt) -> Self {
        assert!(modulus.is_positive(), "modulus must be positive");
        Residue { value: value.mod_floor(&modulus), modulus }
    }

    pub fn from_i64(value: i64, modulus: i64) -> Self {
        Self::new(BigInt::from(value), BigInt::from(modulus))
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// Write `element` as k·`generator` in coker(m); returns k modulo the group order.
pub fn express_in_generator(m: &IntMatrix, element: &[BigInt], generator: &[BigInt]) -> Result<Residue, LatticeError> {
    for v in [element, generator] {
        if v.len() != m.rows {
            return Err(LatticeError::DimensionMismatch { expected: m.rows, got: v.len() });
        }
    }
    let snf = smith_normal_form(m);
    let mut divs = snf.diagonal();
    divs.resize(m.rows, BigInt::zero());
    if divs.iter().any(|d| d.is_zero()) {
        return Err(LatticeError::InfiniteCokernel);
    }
    let nontrivial: Vec<usize> = (0..divs.len()).filter(|&i| !divs[i].is_one()).collect();
    match nontrivial.as_slice() {
        [] => Ok(Residue::new(BigInt::zero(), BigInt::one())),
        [t] => {
            let d = &divs[*t];
            let g = snf.u.mul_vec(generator)[*t].mod_floor(d);
            let e = snf.u.mul_vec(element)[*t].mod_floor(d);
            let ext = g.extended_gcd(d);
            if !ext.gcd.is_one() {
                return Err(LatticeError::NotGenerator);
            }
            Ok(Residue::new(e * ext.x, d.clone()))
        }
        _ => Err(LatticeError::NotGenerator),
    }
}

/// True iff every leading principal minor Δ_k has sign (−1)^k.
pub fn is_negative_definite(m: &IntMatrix) -> Result<bool, LatticeError> {
    if !m.is_square() {
        return Err(LatticeError::NotSquare(m.rows, m.cols));
    }
    for k in 1..=m.rows {
        let d = determinant(&m.leading(k))?;
        let want_negative = k % 2 == 1;
        if d.is_zero() || d.is_negative() != want_negative {
            return Ok(false);
        }
    }
    Ok(true)
}

/// (n₊, n₋, n₀) of a symmetric matrix, by congruence diagonalization over ℚ.
pub fn inertia(m: &IntMatrix) -> Result<(usize, usize, usize), LatticeError> {
    if !m.is_square() {
        return Err(LatticeError::NotSquare(m.rows, m.cols));
    }
    let n = m.rows;
    let mut a = RationalMatrix::from_int(m);
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut live: Vec<usize> = (0..n).collect();
    while !live.is_empty() {
        let piv = live.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let p = match piv {
            Some(p) => p,
            None => {
                // zero diagonal: find a nonzero off-diagonal entry and fold it in
                let pair = live
                    .iter()
                    .flat_map(|&i| live.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[(i, j)].is_zero());
                match pair {
                    Some((i, j)) => {
                        // x_i ↦ x_i + x_j, applied symmetrically
                        for k in 0..n {
                            let t = a[(j, k)].clone();
                            a[(i, k)] += t;
                        }
                        for k in 0..n {
                            let t = a[(k, j)].clone();
                            a[(k, i)] += t;
                        }
                        i
                    }
                    None => {
                        zero += live.len();
                        break;
                    }
                }
            }
        };
        let d = a[(p, p)].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        live.retain(|&i| i != p);
        for &i in &live {
            if a[(i, p)].is_zero() {
                continue;
            }
            let f = &a[(i, p)] / &d;
            for k in 0..n {
                let t = &f * &a[(p, k)];
                a[(i, k)] -= t;
            }
            for k in 0..n {
                let t = &f * &a[(k, p)];
                a[(k, i)] -= t;
            }
        }
    }
    Ok((pos, neg, zero))
}

/// n₊ − n₋.
pub fn signature(m: &IntMatrix) -> Result<i64, LatticeError> {
    let (p, n, _) = inertia(m)?;
    Ok(p as i64 - n as i64)
}

/// Row-style Hermite normal form of a set of integer vectors: echelon, positive
/// pivots, entries above each pivot reduced into `0..pivot`. Zero rows dropped.
pub fn hermite_rows(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let Some(width) = rows.first().map(|r| r.len()) else {
        return rows;
    };
    let mut a = rows;
    let mut top = 0;
    for col in 0..width {
        if top == a.len() {
            break;
        }
        loop {
            let nz: Vec<usize> = (top..a.len()).filter(|&i| !a[i][col].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a[i][col].abs()).unwrap();
            a.swap(top, p);
            let mut done = true;
            for i in top + 1..a.len() {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[top][col]);
                for j in 0..width {
                    let t = &q * &a[top][j];
                    a[i][j] -= t;
                }
                if !a[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if top < a.len() && !a[top][col].is_zero() {
            if a[top][col].is_negative() {
                for x in a[top].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..top {
                let q = a[i][col].div_floor(&a[top][col]);
                if q.is_zero() {
                    continue;
                }
                for j in 0..width {
                    let t = &q * &a[top][j];
                    a[i][j] -= t;
                }
            }
            top += 1;
        }
    }
    a.truncate(top);
    a
}

/// A class a₀h + Σ aᵢeᵢ in H₂(ℂP² # N·(−ℂP²)). Exceptional indices start at 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HomologyClass {
    pub a0: i64,
    coeffs: BTreeMap<usize, i64>,
}

impl HomologyClass {
    pub fn new(a0: i64, coeffs: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut map = BTreeMap::new();
        for (i, c) in coeffs {
            *map.entry(i).or_insert(0) += c;
        }
        map.retain(|_, c| *c != 0);
        HomologyClass { a0, coeffs: map }
    }

    pub fn h() -> Self {
        Self::new(1, [])
    }

    pub fn e(i: usize) -> Self {
        Self::new(0, [(i, 1)])
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(&i).copied().unwrap_or(0)
    }

    /// Nonzero exceptional coefficients in index order.
    pub fn coeffs(&self) -> &BTreeMap<usize, i64> {
        &self.coeffs
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    /// Intersection pairing with h² = 1, eᵢ² = −1.
    pub fn dot(&self, other: &HomologyClass) -> i64 {
        let mut s = self.a0 * other.a0;
        for (i, a) in &self.coeffs {
            s -= a * other.coeff(*i);
        }
        s
    }

    pub fn square(&self) -> i64 {
        self.dot(self)
    }

    /// Coordinates (a₀, a_0.., a_{n−1}) of length n+1.
    pub fn to_vector(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n + 1];
        v[0] = self.a0;
        for (&i, &c) in &self.coeffs {
            v[i + 1] = c;
        }
        v
    }

    pub fn from_vector(v: &[i64]) -> Self {
        Self::new(v[0], v[1..].iter().enumerate().map(|(i, &c)| (i, c)))
    }

    /// Apply an index relabeling.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Self {
        Self::new(self.a0, self.coeffs.iter().map(|(&i, &c)| (map(i), c)))
    }

    pub fn is_zero(&self) -> bool {
        self.a0 == 0 && self.coeffs.is_empty()
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, c: i64, name: String| -> fmt::Result {
            if c < 0 {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            first = false;
            write!(f, "{name}")
        };
        if self.a0 != 0 {
            term(f, self.a0, "h".into())?;
        }
        // positive exceptional terms first when there is no h term: e3-e2, not -e2+e3
        let (pos, neg): (Vec<_>, Vec<_>) = self.coeffs.iter().partition(|(_, &c)| c > 0);
        let ordered = if self.a0 == 0 { [pos, neg].concat() } else { self.coeffs.iter().collect() };
        for (i, c) in ordered {
            term(f, *c, format!("e{i}"))?;
        }
        if self.is_zero() {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for HomologyClass {
    type Err = LatticeError;

    /// Parses strings such as `3h-2e0-e1-e2`, `e1-e10`, `h`, `0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || LatticeError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        if t == "0" {
            return Ok(HomologyClass::default());
        }
        let bytes = t.as_bytes();
        let mut pos = 0;
        let mut a0 = 0i64;
        let mut coeffs = Vec::new();
        while pos < bytes.len() {
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(err());
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let mag: i64 = if start == pos { 1 } else { t[start..pos].parse().map_err(|_| err())? };
            match bytes.get(pos) {
                Some(b'h') => {
                    pos += 1;
                    a0 += sign * mag;
                }
                Some(b'e') => {
                    pos += 1;
                    let s2 = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if s2 == pos {
                        return Err(err());
                    }
                    let idx: usize = t[s2..pos].parse().map_err(|_| err())?;
                    coeffs.push((idx, sign * mag));
                }
                _ => return Err(err()),
            }
        }
        Ok(HomologyClass::new(a0, coeffs))
    }
}

impl serde::Serialize for HomologyClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for HomologyClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Pairwise intersection matrix of a list of classes.
pub fn gram(classes: &[HomologyClass]) -> IntMatrix {
    let rows =
        classes.iter().map(|a| classes.iter().map(|b| BigInt::from(a.dot(b))).collect()).collect::<Vec<Vec<BigInt>>>();
    if rows.is_empty() {
        return IntMatrix::zeros(0, 0);
    }
    IntMatrix::from_rows(rows)
}

pub(crate) fn check_range(classes: &[HomologyClass], n: usize) -> Result<(), LatticeError> {
    for c in classes {
        if let Some(i) = c.max_index() {
            if i >= n {
                return Err(LatticeError::IndexOutOfRange { class: c.to_string(), index: i, n });
            }
        }
    }
    Ok(())
}

/// Saturated basis of the sublattice of ℤ⟨h, e_0..e_{n−1}⟩ orthogonal to `classes`.
pub fn orthogonal_complement(classes: &[HomologyClass], n: usize) -> Result<Vec<HomologyClass>, LatticeError> {
    check_range(classes, n)?;
    let width = n + 1;
    if classes.is_empty() {
        return Ok((0..width)
            .map(|k| {
                let mut v = vec![0; width];
                v[k] = 1;
                HomologyClass::from_vector(&v)
            })
            .collect());
    }
    // x ↦ (c·x) for each class c: row entries a0, −a_i
    let rows: Vec<Vec<BigInt>> = classes
        .iter()
        .map(|c| {
            let v = c.to_vector(n);
            v.iter().enumerate().map(|(k, &x)| BigInt::from(if k == 0 { x } else { -x })).collect()
        })
        .collect();
    let m = IntMatrix::from_rows(rows);
    let snf = smith_normal_form(&m);
    let rank = snf.rank();
    let basis: Vec<Vec<BigInt>> = (rank..width).map(|j| (0..width).map(|i| snf.v[(i, j)].clone()).collect()).collect();
    Ok(hermite_rows(basis)
        .into_iter()
        .map(|r| {
            let v: Vec<i64> = r.iter().map(|x| x.to_i64().expect("coefficient overflow")).collect();
            HomologyClass::from_vector(&v)
        })
        .collect())
}

/// Rank of the span of `classes` in ℤ^{n+1}.
pub fn class_rank(classes: &[HomologyClass], n: usize) -> usize {
    if classes.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<i64>> = classes.iter().map(|c| c.to_vector(n)).collect();
    smith_normal_form(&IntMatrix::from_i64(&rows)).rank()
}
