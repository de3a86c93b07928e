//! Reference values: intersection matrices, inverses and cusp invariants.

/// Q for the six-vertex plumbing (vertex order as in `e64_7`).
pub const Q64: [[i64; 6]; 6] = [
    [-2, 1, 1, 1, 0, 0],
    [1, -2, 0, 0, 0, 0],
    [1, 0, -3, 0, 0, 0],
    [1, 0, 0, -2, 1, 0],
    [0, 0, 0, 1, -2, 1],
    [0, 0, 0, 0, 1, -8],
];

/// −64·Q⁻¹ for the same plumbing.
pub const QINV64: [[i64; 6]; 6] = [
    [132, 66, 44, 90, 48, 6],
    [66, 65, 22, 45, 24, 3],
    [44, 22, 36, 30, 16, 2],
    [90, 45, 30, 105, 56, 7],
    [48, 24, 16, 56, 64, 8],
    [6, 3, 2, 7, 8, 9],
];

pub const Q256: [[i64; 9]; 9] = [
    [-2, 1, 1, 1, 0, 0, 0, 0, 0],
    [1, -2, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, -6, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, -2, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, -2, 1, 0, 0, 0],
    [0, 0, 0, 0, 1, -2, 1, 0, 0],
    [0, 0, 0, 0, 0, 1, -2, 1, 0],
    [0, 0, 0, 0, 0, 0, 1, -2, 1],
    [0, 0, 0, 0, 0, 0, 0, 1, -8],
];

/// −256·Q⁻¹.
pub const QINV256: [[i64; 9]; 9] = [
    [516, 258, 86, 432, 348, 264, 180, 96, 12],
    [258, 257, 43, 216, 174, 132, 90, 48, 6],
    [86, 43, 57, 72, 58, 44, 30, 16, 2],
    [432, 216, 72, 576, 464, 352, 240, 128, 16],
    [348, 174, 58, 464, 580, 440, 300, 160, 20],
    [264, 132, 44, 352, 440, 528, 360, 192, 24],
    [180, 90, 30, 240, 300, 360, 420, 224, 28],
    [96, 48, 16, 128, 160, 192, 224, 256, 32],
    [12, 6, 2, 16, 20, 24, 28, 32, 36],
];

pub struct CuspRow {
    pub p: i64,
    pub q: i64,
    pub sequence: Vec<i64>,
    pub delta: i64,
    pub m: i64,
    pub ell: i64,
}

fn row(p: i64, q: i64, sequence: Vec<i64>) -> CuspRow {
    let delta = sequence.iter().map(|m| m * (m - 1)).sum::<i64>() / 2;
    let m = sequence.iter().map(|m| m * m).sum();
    let ell = *sequence.last().unwrap();
    CuspRow { p, q, sequence, delta, m, ell }
}

/// Sequences [m^[k]] for T(m, km+1), [p,p,p,p−1] for T(p,4p−1) (p ≥ 3), and
/// the small cases written out.
pub fn cusp_table() -> Vec<CuspRow> {
    let mut out = vec![
        row(2, 3, vec![2]),
        row(2, 5, vec![2, 2]),
        row(2, 7, vec![2, 2, 2]),
        row(3, 4, vec![3]),
        row(3, 22, vec![3; 7]),
        row(6, 43, vec![6; 7]),
    ];
    for p in 2..=10 {
        out.push(row(p, p + 1, vec![p]));
    }
    out.push(row(2, 7, vec![2, 2, 2]));
    for p in 3..=8 {
        out.push(row(p, 4 * p - 1, vec![p, p, p, p - 1]));
    }
    out
}
