//! Multiplicity sequences of cusps and the numerical invariants built on them.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SingularityError {
    #[error("invalid cusp type ({p},{q}): need 2 <= p < q and gcd(p,q) = 1")]
    InvalidCusp { p: i64, q: i64 },
    #[error("self-intersection must be positive, got {0}")]
    NonPositiveSelfIntersection(i64),
    #[error("curve has no cusps")]
    NoCusps,
    #[error("only rational curves (geometric genus 0) are supported here, got genus {0}")]
    NotRational(i64),
}

/// The singularity {x^p = y^q}, whose link is the torus knot T(p,q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CuspType {
    p: i64,
    q: i64,
}

impl CuspType {
    pub fn new(p: i64, q: i64) -> Result<Self, SingularityError> {
        if p < 2 || q <= p || p.gcd(&q) != 1 {
            return Err(SingularityError::InvalidCusp { p, q });
        }
        Ok(CuspType { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// Seifert genus (p−1)(q−1)/2 of T(p,q).
    pub fn seifert_genus(&self) -> i64 {
        (self.p - 1) * (self.q - 1) / 2
    }
}

impl fmt::Display for CuspType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Multiplicities of the successive blow-ups down to the minimal resolution.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiplicitySequence(Vec<i64>);

impl MultiplicitySequence {
    pub fn entries(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for MultiplicitySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Euclid on (q,p): each divisor is repeated by its quotient; the 1s are dropped.
pub fn multiplicity_sequence(c: CuspType) -> MultiplicitySequence {
    let (mut a, mut b) = (c.q, c.p);
    let mut out = Vec::new();
    while b > 0 {
        let (k, r) = a.div_rem(&b);
        if b > 1 {
            out.extend(std::iter::repeat_n(b, k as usize));
        }
        a = b;
        b = r;
    }
    MultiplicitySequence(out)
}

/// δ = ½ Σ m(m−1).
pub fn delta(seq: &MultiplicitySequence) -> i64 {
    seq.0.iter().map(|m| m * (m - 1)).sum::<i64>() / 2
}

/// M = Σ m².
pub fn big_m(seq: &MultiplicitySequence) -> i64 {
    seq.0.iter().map(|m| m * m).sum()
}

/// ℓ = last (smallest) multiplicity.
pub fn ell(seq: &MultiplicitySequence) -> i64 {
    *seq.0.last().expect("multiplicity sequence is never empty")
}

/// μ = 2δ for a unibranch singularity.
pub fn milnor_number(seq: &MultiplicitySequence) -> i64 {
    2 * delta(seq)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveData {
    pub geometric_genus: i64,
    pub cusps: Vec<CuspType>,
    pub self_intersection: i64,
}

impl CurveData {
    pub fn rational(cusps: Vec<CuspType>, self_intersection: i64) -> Self {
        CurveData { geometric_genus: 0, cusps, self_intersection }
    }
}

pub fn arithmetic_genus(curve: &CurveData) -> i64 {
    curve.geometric_genus + curve.cusps.iter().map(|&c| delta(&multiplicity_sequence(c))).sum::<i64>()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FillabilityStatus {
    Obstructed,
    KnownFillable,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictReason {
    /// s ≥ ΣM + 2 min ℓ + 2.
    SelfIntersectionBound,
    /// two cusps share min ℓ and s ≥ ΣM + 2 min ℓ + 1.
    SharedMinimumBound,
    /// unicuspidal (p,q) with s ≤ pq: a filling exists by construction.
    UnicuspidalConstruction,
    NoCriterion,
}

impl fmt::Display for VerdictReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VerdictReason::SelfIntersectionBound => {
                "self-intersection bound: s >= sum M + 2 min l + 2 rules out weak fillings"
            }
            VerdictReason::SharedMinimumBound => "two cusps attain min l and s >= sum M + 2 min l + 1",
            VerdictReason::UnicuspidalConstruction => {
                "unicuspidal (p,q) curve with s <= pq is realized, so a filling exists"
            }
            VerdictReason::NoCriterion => "no criterion applies",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillabilityVerdict {
    pub status: FillabilityStatus,
    pub reason: VerdictReason,
    /// Σ M + 2 min ℓ + 1, the largest self-intersection the bound allows.
    pub bound: i64,
}

pub fn fillability_verdict(curve: &CurveData) -> Result<FillabilityVerdict, SingularityError> {
    if curve.self_intersection <= 0 {
        return Err(SingularityError::NonPositiveSelfIntersection(curve.self_intersection));
    }
    if curve.cusps.is_empty() {
        return Err(SingularityError::NoCusps);
    }
    if curve.geometric_genus != 0 {
        return Err(SingularityError::NotRational(curve.geometric_genus));
    }
    let seqs: Vec<_> = curve.cusps.iter().map(|&c| multiplicity_sequence(c)).collect();
    let sum_m: i64 = seqs.iter().map(big_m).sum();
    let ells: Vec<i64> = seqs.iter().map(ell).collect();
    let min_l = *ells.iter().min().unwrap();
    let bound = sum_m + 2 * min_l + 1;
    let s = curve.self_intersection;
    let verdict = |status, reason| Ok(FillabilityVerdict { status, reason, bound });

    if s > bound {
        return verdict(FillabilityStatus::Obstructed, VerdictReason::SelfIntersectionBound);
    }
    if ells.iter().filter(|&&l| l == min_l).count() >= 2 && s >= bound {
        return verdict(FillabilityStatus::Obstructed, VerdictReason::SharedMinimumBound);
    }
    if let [c] = curve.cusps.as_slice() {
        if s <= c.p * c.q {
            return verdict(FillabilityStatus::KnownFillable, VerdictReason::UnicuspidalConstruction);
        }
    }
    verdict(FillabilityStatus::Unknown, VerdictReason::NoCriterion)
}

/// Families of rational unicuspidal plane curves of degree d with one (p,q) cusp.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnicuspidalFamily {
    /// (p, p+1; p+1)
    A(i64),
    /// (p, 4p−1; 2p)
    B(i64),
    /// (F_{j−2}, F_{j+2}; F_j)
    Fib1(u32),
    /// (F_j², F_{j+2}²; F_j F_{j+2})
    Fib2(u32),
    E3,
    E6,
    NotOnList,
}

impl fmt::Display for UnicuspidalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnicuspidalFamily::A(p) => write!(f, "A_{p}"),
            UnicuspidalFamily::B(p) => write!(f, "B_{p}"),
            UnicuspidalFamily::Fib1(j) => write!(f, "Fib1(j={j})"),
            UnicuspidalFamily::Fib2(j) => write!(f, "Fib2(j={j})"),
            UnicuspidalFamily::E3 => write!(f, "E_3"),
            UnicuspidalFamily::E6 => write!(f, "E_6"),
            UnicuspidalFamily::NotOnList => write!(f, "not on list"),
        }
    }
}

/// F_1 = F_2 = 1. None on overflow.
pub fn fibonacci(j: u32) -> Option<i64> {
    let (mut a, mut b) = (0i64, 1i64);
    for _ in 0..j {
        let c = a.checked_add(b)?;
        a = b;
        b = c;
    }
    Some(a)
}

/// (p, q, d): cusp type and curve degree.
pub type CuspDegree = (i64, i64, i64);

/// Triples (p,q,d) of the Fibonacci families for index j, when they are valid cusp types.
pub fn fibonacci_triples(j: u32) -> (Option<CuspDegree>, Option<CuspDegree>) {
    let valid = |t: CuspDegree| CuspType::new(t.0, t.1).ok().map(|_| t);
    let f1 = (|| {
        if j < 3 {
            return None;
        }
        valid((fibonacci(j - 2)?, fibonacci(j + 2)?, fibonacci(j)?))
    })();
    let f2 = (|| {
        let a = fibonacci(j)?;
        let b = fibonacci(j + 2)?;
        valid((a.checked_mul(a)?, b.checked_mul(b)?, a.checked_mul(b)?))
    })();
    (f1, f2)
}

pub fn classify_unicuspidal(p: i64, q: i64, d: i64, fib_bound: u32) -> UnicuspidalFamily {
    if CuspType::new(p, q).is_err() || d < 1 {
        return UnicuspidalFamily::NotOnList;
    }
    if q == p + 1 && d == p + 1 {
        return UnicuspidalFamily::A(p);
    }
    if q == 4 * p - 1 && d == 2 * p {
        return UnicuspidalFamily::B(p);
    }
    if (p, q, d) == (3, 22, 8) {
        return UnicuspidalFamily::E3;
    }
    if (p, q, d) == (6, 43, 16) {
        return UnicuspidalFamily::E6;
    }
    // Only odd indices give genus-compatible triples.
    for j in (1..=fib_bound).filter(|j| j % 2 == 1) {
        let (f1, f2) = fibonacci_triples(j);
        if f1 == Some((p, q, d)) {
            return UnicuspidalFamily::Fib1(j);
        }
        if f2 == Some((p, q, d)) {
            return UnicuspidalFamily::Fib2(j);
        }
    }
    UnicuspidalFamily::NotOnList
}
