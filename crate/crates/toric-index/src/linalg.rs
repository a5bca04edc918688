//! Small exact linear algebra over the integers and rationals.
//!
//! Everything here works on the tiny dense systems that show up in Delzant
//! geometry (n is the ambient dimension, at most a handful). Solutions are
//! exact: integer determinants are expanded recursively, rational solves use
//! Cramer's rule over `i128`, and kernel directions of (n-1)-row systems come
//! from the generalized cross product of signed minors.

use num_integer::Integer;
use num_rational::Ratio;

pub type Rat = Ratio<i128>;

/// Exact dot product with a widened accumulator.
pub fn dot(a: &[i64], b: &[i64]) -> i128 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// Dot product narrowed back to `i64`, panicking on overflow.
///
/// Moment pairings of desk-scale polytopes fit comfortably; a panic here
/// means the input is far outside the supported range, not a math error.
pub fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    i64::try_from(dot(a, b)).expect("lattice pairing overflows i64")
}

pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// A vector is primitive when its entries are coprime (and not all zero).
pub fn is_primitive(v: &[i64]) -> bool {
    gcd_slice(v) == 1
}

/// Divide out the content of `v`, orienting so the result is a primitive
/// generator of the same ray. Returns `None` for the zero vector.
pub fn make_primitive(v: &[i64]) -> Option<Vec<i64>> {
    let g = gcd_slice(v);
    if g == 0 {
        return None;
    }
    Some(v.iter().map(|&x| x / g).collect())
}

/// Determinant by cofactor expansion. Quadratic blowup is irrelevant at the
/// sizes we face (n <= 4 in practice).
pub fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut acc = 0i128;
            for (j, &lead) in m[0].iter().enumerate() {
                if lead == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc += sign * lead * det_i128(&minor);
            }
            acc
        }
    }
}

pub fn det_i64(m: &[Vec<i64>]) -> i128 {
    let wide: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    det_i128(&wide)
}

/// Solve the square system `a x = b` exactly. Returns `None` when `a` is
/// singular.
pub fn solve_square(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<Rat>> {
    let n = a.len();
    let wide: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let d = det_i128(&wide);
    if d == 0 {
        return None;
    }
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut col = wide.clone();
        for (row, &rhs) in col.iter_mut().zip(b) {
            row[j] = rhs as i128;
        }
        out.push(Rat::new(det_i128(&col), d));
    }
    Some(out)
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Rat::from_integer(x as i128)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][col] != Rat::from_integer(0)) else {
            continue;
        };
        m.swap(rank, pivot);
        let lead = m[rank][col];
        let pivot_row = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[col] != Rat::from_integer(0) {
                let factor = row[col] / lead;
                for (entry, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *entry -= factor * *p;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Dimension of the affine hull of a point set.
pub fn affine_rank(points: &[Vec<i64>]) -> usize {
    match points {
        [] | [_] => 0,
        [base, rest @ ..] => {
            let diffs: Vec<Vec<i64>> = rest
                .iter()
                .map(|p| p.iter().zip(base).map(|(&a, &b)| a - b).collect())
                .collect();
            rank(&diffs)
        }
    }
}

/// Generalized cross product: a nonzero integer vector orthogonal to the
/// `n-1` given rows of length `n`, or `None` if the rows are dependent.
/// For `n = 1` (no rows) the kernel is the whole line and `[1]` is returned.
pub fn cross_kernel(rows: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = rows.len() + 1;
    if n == 1 {
        return Some(vec![1]);
    }
    debug_assert!(rows.iter().all(|r| r.len() == n));
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let minor: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &x)| x as i128)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let entry = sign * det_i128(&minor);
        out.push(i64::try_from(entry).expect("minor overflows i64"));
    }
    make_primitive(&out)
}

/// Inverse of a unimodular integer matrix via the adjugate. Returns `None`
/// when `det != +-1`.
pub fn inverse_unimodular(a: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = a.len();
    let d = det_i64(a);
    if d != 1 && d != -1 {
        return None;
    }
    let mut inv = vec![vec![0i64; n]; n];
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| a[r][c]).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            let cof = sign * det_i64(&minor);
            *slot = i64::try_from(cof * d).expect("adjugate overflows i64");
        }
    }
    Some(inv)
}

pub fn mat_vec(a: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    a.iter().map(|row| dot_i64(row, x)).collect()
}

pub fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}
