//! Characteristic sublinks, Gompf's Γ-invariant from surgery diagrams, and the
//! θ grading on rotation vectors of a negative definite plumbing.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::lattice::{self, IntMatrix, LatticeError, RationalMatrix, Residue};
use crate::plumbing::{intersection_matrix, PlumbingGraph};
use crate::singularity::{arithmetic_genus, CurveData};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GammaError {
    #[error("linking matrix must be square and symmetric")]
    NotSymmetric,
    #[error("expected {expected} rotation numbers, got {got}")]
    RotLength { expected: usize, got: usize },
    #[error("component {0} is out of range")]
    BadComponent(usize),
    #[error("1-handle component {0} must have framing 0 and rotation 0")]
    BadOneHandle(usize),
    #[error("component {component}: rot + lk(K, Z) must have the parity of the framing")]
    LegendrianParity { component: usize },
    #[error("sublink {0:?} is not characteristic")]
    NotCharacteristic(Vec<usize>),
    #[error("component {component}: rho = ({numerator})/2 is not an integer")]
    ParityFailure { component: usize, numerator: BigInt },
    #[error("vertex {vertex} has weight {weight}; rotation ranges need weight <= -2")]
    WeightTooLarge { vertex: usize, weight: i64 },
    #[error("rotation vector has length {got}, graph has {expected} vertices")]
    RotVectorLength { expected: usize, got: usize },
    #[error("self-intersection must be positive")]
    NonPositiveSelfIntersection,
    #[error("intersection form is not negative definite")]
    NotNegativeDefinite,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Integral surgery diagram: linking matrix with framings on the diagonal,
/// rotation numbers, and the 0-framed unknots standing in for 1-handles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryDiagram {
    linking: IntMatrix,
    rot: Vec<i64>,
    zset: BTreeSet<usize>,
}

impl SurgeryDiagram {
    pub fn new(linking: IntMatrix, rot: Vec<i64>, zset: BTreeSet<usize>) -> Result<Self, GammaError> {
        if !linking.is_symmetric() {
            return Err(GammaError::NotSymmetric);
        }
        let n = linking.rows();
        if rot.len() != n {
            return Err(GammaError::RotLength { expected: n, got: rot.len() });
        }
        for &z in &zset {
            if z >= n {
                return Err(GammaError::BadComponent(z));
            }
            if !linking[(z, z)].is_zero() || rot[z] != 0 {
                return Err(GammaError::BadOneHandle(z));
            }
        }
        Ok(SurgeryDiagram { linking, rot, zset })
    }

    pub fn linking(&self) -> &IntMatrix {
        &self.linking
    }

    pub fn rot(&self) -> &[i64] {
        &self.rot
    }

    pub fn zset(&self) -> &BTreeSet<usize> {
        &self.zset
    }

    pub fn len(&self) -> usize {
        self.rot.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rot.is_empty()
    }

    /// lk(Kᵢ, S), with lk(Kᵢ, Kᵢ) the framing.
    fn lk(&self, i: usize, s: &BTreeSet<usize>) -> BigInt {
        s.iter().map(|&j| self.linking[(i, j)].clone()).sum()
    }

    /// Legendrian realizability: for every 2-handle component,
    /// rot ≡ framing + lk(K, Z) (mod 2).
    pub fn check_legendrian_parity(&self) -> Result<(), GammaError> {
        for i in 0..self.len() {
            if self.zset.contains(&i) {
                continue;
            }
            let v: BigInt = BigInt::from(self.rot[i]) + &self.linking[(i, i)] + self.lk(i, &self.zset);
            let r: BigInt = v % 2;
            if !r.is_zero() {
                return Err(GammaError::LegendrianParity { component: i });
            }
        }
        Ok(())
    }
}

fn gf2_rows(b: &IntMatrix) -> Vec<Vec<bool>> {
    let two = BigInt::from(2);
    (0..b.rows()).map(|i| (0..b.cols()).map(|j| !(&b[(i, j)] % &two).is_zero()).collect()).collect()
}

/// Reduced row echelon form over GF(2) of [A | rhs]; returns pivot columns.
fn gf2_rref(a: &mut [Vec<bool>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c]) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && a[i][c] {
                let (src, dst) = if i < r {
                    let (lo, hi) = a.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = a.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for k in 0..src.len() {
                    dst[k] ^= src[k];
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    pivots
}

/// Dimension of the kernel of B over GF(2).
pub fn gf2_nullity(b: &IntMatrix) -> usize {
    let mut a = gf2_rows(b);
    b.cols() - gf2_rref(&mut a, b.cols()).len()
}

/// All sublinks S with lk(Kᵢ, S) ≡ framing(Kᵢ) (mod 2) for every i, i.e. the
/// solutions of B·x ≡ diag(B) over GF(2). Each sublink is a sorted index list;
/// the list itself is sorted.
pub fn characteristic_sublinks(b: &IntMatrix) -> Result<Vec<Vec<usize>>, GammaError> {
    if !b.is_symmetric() {
        return Err(GammaError::NotSymmetric);
    }
    let n = b.rows();
    let mut a = gf2_rows(b);
    for (i, row) in a.iter_mut().enumerate() {
        let d = row[i];
        row.push(d);
    }
    let pivots = gf2_rref(&mut a, n);
    // inconsistent row: 0 = 1 (never happens for symmetric B)
    if a.iter().any(|row| !row[..n].iter().any(|&x| x) && row[n]) {
        return Ok(Vec::new());
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::with_capacity(1 << free.len());
    for mask in 0u64..(1u64 << free.len()) {
        let mut x = vec![false; n];
        for (k, &f) in free.iter().enumerate() {
            x[f] = mask >> k & 1 == 1;
        }
        for (r, &pc) in pivots.iter().enumerate() {
            let mut v = a[r][n];
            for &f in &free {
                if a[r][f] && x[f] {
                    v ^= true;
                }
            }
            x[pc] = v;
        }
        out.push((0..n).filter(|&i| x[i]).collect::<Vec<usize>>());
    }
    out.sort();
    Ok(out)
}

pub fn is_characteristic(b: &IntMatrix, s: &[usize]) -> bool {
    let set: BTreeSet<usize> = s.iter().copied().collect();
    (0..b.rows()).all(|i| {
        let lk: BigInt = set.iter().map(|&j| b[(i, j)].clone()).sum();
        let r: BigInt = (lk - &b[(i, i)]) % 2;
        r.is_zero()
    })
}

/// ρᵢ = ½(rotᵢ + lk(Kᵢ, L′ Δ Z)).
pub fn rho(d: &SurgeryDiagram, charsub: &[usize]) -> Result<Vec<BigInt>, GammaError> {
    let n = d.len();
    for &c in charsub {
        if c >= n {
            return Err(GammaError::BadComponent(c));
        }
    }
    if !is_characteristic(&d.linking, charsub) {
        return Err(GammaError::NotCharacteristic(charsub.to_vec()));
    }
    let l: BTreeSet<usize> = charsub.iter().copied().collect();
    let sym: BTreeSet<usize> = l.symmetric_difference(&d.zset).copied().collect();
    let two = BigInt::from(2);
    (0..n)
        .map(|i| {
            let num = BigInt::from(d.rot[i]) + d.lk(i, &sym);
            if !(&num % &two).is_zero() {
                return Err(GammaError::ParityFailure { component: i, numerator: num });
            }
            Ok(num / &two)
        })
        .collect()
}

/// Γ = Σ ρᵢ [∂Dᵢ] in coker(B), as a multiple of [∂D_gen].
pub fn gamma_invariant(d: &SurgeryDiagram, charsub: &[usize], gen: usize) -> Result<Residue, GammaError> {
    if gen >= d.len() {
        return Err(GammaError::BadComponent(gen));
    }
    let r = rho(d, charsub)?;
    let mut g = vec![BigInt::zero(); d.len()];
    g[gen] = BigInt::from(1);
    Ok(lattice::express_in_generator(&d.linking, &r, &g)?)
}

/// (1 − p_a(C)) mod s, in terms of the meridian.
pub fn gamma_theoretical(curve: &CurveData) -> Result<Residue, GammaError> {
    if curve.self_intersection <= 0 {
        return Err(GammaError::NonPositiveSelfIntersection);
    }
    Ok(Residue::from_i64(1 - arithmetic_genus(curve), curve.self_intersection))
}

/// Per-vertex rotation ranges {w+2, w+4, …, −w−2}.
pub fn rotation_ranges(g: &PlumbingGraph) -> Result<Vec<Vec<i64>>, GammaError> {
    g.weights
        .iter()
        .enumerate()
        .map(|(v, &w)| {
            if w > -2 {
                return Err(GammaError::WeightTooLarge { vertex: v, weight: w });
            }
            Ok((0..=(-w - 2)).map(|k| w + 2 + 2 * k).collect())
        })
        .collect()
}

/// Every rotation vector of the plumbing, in lexicographic order.
pub fn rotation_lattice(g: &PlumbingGraph) -> Result<Vec<Vec<i64>>, GammaError> {
    let ranges = rotation_ranges(g)?;
    let mut out = vec![Vec::new()];
    for r in &ranges {
        let mut next = Vec::with_capacity(out.len() * r.len());
        for prefix in &out {
            for &x in r {
                let mut v = prefix.clone();
                v.push(x);
                next.push(v);
            }
        }
        out = next;
    }
    Ok(out)
}

/// Precomputed Q⁻¹, vertex count and signature for repeated θ evaluation.
#[derive(Clone, Debug)]
pub struct ThetaForm {
    qinv: RationalMatrix,
    n: usize,
    sigma: i64,
}

impl ThetaForm {
    pub fn new(g: &PlumbingGraph) -> Result<Self, GammaError> {
        let q = intersection_matrix(g);
        let qinv = lattice::inverse_rational(&q)?;
        let sigma = lattice::signature(&q)?;
        Ok(ThetaForm { qinv, n: g.len(), sigma })
    }

    /// (v·Q⁻¹·vᵀ − 2n − 3σ) / 4.
    pub fn eval(&self, v: &[i64]) -> Result<BigRational, GammaError> {
        if v.len() != self.n {
            return Err(GammaError::RotVectorLength { expected: self.n, got: v.len() });
        }
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let c1sq = self.qinv.quadratic_form(&v);
        let shift = BigRational::from_integer(BigInt::from(2 * self.n as i64 + 3 * self.sigma));
        Ok((c1sq - shift) / BigRational::from_integer(BigInt::from(4)))
    }
}

pub fn theta(g: &PlumbingGraph, v: &[i64]) -> Result<BigRational, GammaError> {
    ThetaForm::new(g)?.eval(v)
}

/// Minimum of θ over the rotation lattice and the sorted set of minimizers.
pub fn minimize_theta(g: &PlumbingGraph) -> Result<(BigRational, Vec<Vec<i64>>), GammaError> {
    if !lattice::is_negative_definite(&intersection_matrix(g))? {
        return Err(GammaError::NotNegativeDefinite);
    }
    let form = ThetaForm::new(g)?;
    let mut best: Option<BigRational> = None;
    let mut argmin = Vec::new();
    for v in rotation_lattice(g)? {
        let t = form.eval(&v)?;
        match &best {
            Some(b) if t > *b => {}
            Some(b) if t == *b => argmin.push(v),
            _ => {
                best = Some(t);
                argmin = vec![v];
            }
        }
    }
    argmin.sort();
    Ok((best.expect("rotation lattice is never empty"), argmin))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn one_component_sublinks() {
        assert_eq!(characteristic_sublinks(&m(&[&[3]])).unwrap(), vec![vec![0]]);
        assert_eq!(characteristic_sublinks(&m(&[&[-4]])).unwrap(), vec![vec![], vec![0]]);
    }

    #[test]
    fn two_component_sublinks() {
        // p = 2: p+1 odd
        assert_eq!(characteristic_sublinks(&m(&[&[0, 3], &[3, 1]])).unwrap(), vec![vec![0]]);
        // p = 3: p+1 even
        assert_eq!(characteristic_sublinks(&m(&[&[0, 4], &[4, 1]])).unwrap(), vec![vec![0, 1], vec![1]]);
    }

    #[test]
    fn parity_failure_single() {
        let d = SurgeryDiagram::new(m(&[&[-1]]), vec![0], BTreeSet::new()).unwrap();
        assert!(d.check_legendrian_parity().is_err());
        match gamma_invariant(&d, &[0], 0) {
            Err(GammaError::ParityFailure { component: 0, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn not_characteristic_rejected() {
        let d = SurgeryDiagram::new(m(&[&[0, 3], &[3, 1]]), vec![0, 0], [0].into()).unwrap();
        assert!(matches!(gamma_invariant(&d, &[1], 0), Err(GammaError::NotCharacteristic(_))));
    }

    #[test]
    fn one_handle_validation() {
        assert_eq!(
            SurgeryDiagram::new(m(&[&[1, 3], &[3, 1]]), vec![0, 0], [0].into()),
            Err(GammaError::BadOneHandle(0))
        );
        assert_eq!(
            SurgeryDiagram::new(m(&[&[0, 3], &[2, 1]]), vec![0, 0], BTreeSet::new()),
            Err(GammaError::NotSymmetric)
        );
    }

    #[test]
    fn ranges() {
        let g = PlumbingGraph::linear(&[-6]);
        assert_eq!(rotation_lattice(&g).unwrap(), vec![vec![-4], vec![-2], vec![0], vec![2], vec![4]]);
        assert_eq!(rotation_lattice(&PlumbingGraph::linear(&[-2])).unwrap(), vec![vec![0]]);
        assert!(rotation_lattice(&PlumbingGraph::linear(&[-1])).is_err());
    }

    #[test]
    fn theta_single_minus_two() {
        let (min, arg) = minimize_theta(&PlumbingGraph::linear(&[-2])).unwrap();
        assert_eq!(min, BigRational::new(1.into(), 4.into()));
        assert_eq!(arg, vec![vec![0]]);
    }
}
