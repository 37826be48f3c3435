//! Small exact linear algebra helpers: rational matrices, integer Smith /
//! Hermite normal forms, and matrices over a quadratic field.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::field::{FieldElement, QuadraticField};

pub type RatMat = Vec<Vec<BigRational>>;
pub type FMat = Vec<Vec<FieldElement>>;

// ---------------------------------------------------------------------------
// Rational matrices
// ---------------------------------------------------------------------------

pub fn rat_identity(n: usize) -> RatMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn rat_mul(a: &RatMat, b: &RatMat) -> RatMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![BigRational::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

pub fn rat_transpose(a: &RatMat) -> RatMat {
    let n = a.len();
    let m = a[0].len();
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn rat_scale(a: &RatMat, c: &BigRational) -> RatMat {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

pub fn rat_add(a: &RatMat, b: &RatMat) -> RatMat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn rat_mul_vec(a: &RatMat, v: &[BigRational]) -> Vec<BigRational> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Determinant by exact Gaussian elimination.
pub fn rat_det(a: &RatMat) -> BigRational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= &m[col][col];
        let inv = m[col][col].recip();
        for j in col..n {
            m[col][j] = &m[col][j] * &inv;
        }
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in col..n {
                let s = &m[col][j] * &f;
                m[r][j] -= s;
            }
        }
    }
    det
}

/// Inverse by Gauss–Jordan; `None` if singular.
pub fn rat_inverse(a: &RatMat) -> Option<RatMat> {
    let n = a.len();
    let mut m = a.to_vec();
    let mut inv = rat_identity(n);
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(p, col);
        inv.swap(p, col);
        let piv = m[col][col].recip();
        for j in 0..n {
            m[col][j] = &m[col][j] * &piv;
            inv[col][j] = &inv[col][j] * &piv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                let s = &m[col][j] * &f;
                m[r][j] -= s;
                let s = &inv[col][j] * &f;
                inv[r][j] -= s;
            }
        }
    }
    Some(inv)
}

/// Inertia (n_plus, n_minus, n_zero) of a symmetric rational matrix, computed
/// by congruence diagonalization.
pub fn rat_signature(a: &RatMat) -> (usize, usize, usize) {
    let n = a.len();
    let mut m = a.to_vec();
    let mut plus = 0;
    let mut minus = 0;
    let mut zero = 0;
    let mut idx = 0;
    while idx < n {
        if m[idx][idx].is_zero() {
            // Find a usable off-diagonal entry and symmetrize it onto the diagonal.
            if let Some(j) = (idx + 1..n).find(|&j| !m[idx][j].is_zero()) {
                // row/col operation: b_idx += s*b_j makes the (idx,idx) entry
                // 2s*m[idx][j] + m[j][j]; one of s = 1, -1 is always nonzero.
                let two = BigRational::from_integer(BigInt::from(2));
                let neg = (&two * &m[idx][j] + &m[j][j]).is_zero();
                for t in 0..n {
                    let s = m[j][t].clone();
                    if neg {
                        m[idx][t] -= s;
                    } else {
                        m[idx][t] += s;
                    }
                }
                for t in 0..n {
                    let s = m[t][j].clone();
                    if neg {
                        m[t][idx] -= s;
                    } else {
                        m[t][idx] += s;
                    }
                }
            } else {
                zero += 1;
                idx += 1;
                continue;
            }
        }
        let piv = m[idx][idx].clone();
        if piv.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        for r in idx + 1..n {
            if m[r][idx].is_zero() {
                continue;
            }
            let f = &m[r][idx] / &piv;
            for t in 0..n {
                let s = &m[idx][t] * &f;
                m[r][t] -= s;
            }
            for t in 0..n {
                let s = &m[t][idx] * &f;
                m[t][r] -= s;
            }
        }
        idx += 1;
    }
    (plus, minus, zero)
}

// ---------------------------------------------------------------------------
// Integer normal forms
// ---------------------------------------------------------------------------

pub type IntMat = Vec<Vec<BigInt>>;

/// Smith normal form.  Returns (divisors, t) where divisors are the full
/// diagonal (divisibility-ordered, non-negative) and t is the unimodular
/// column transform with a·t ≡ s⁻¹·diag, i.e. the columns of t·diag⁻¹
/// generate a⁻¹·Z^n.
pub fn smith_normal_form(a: &IntMat) -> (Vec<BigInt>, IntMat) {
    let n = a.len();
    assert!(n > 0 && a.iter().all(|r| r.len() == n));
    let mut m = a.to_vec();
    let mut t: IntMat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();

    fn swap_rows(m: &mut IntMat, i: usize, j: usize) {
        m.swap(i, j);
    }
    fn swap_cols(m: &mut IntMat, t: &mut IntMat, i: usize, j: usize) {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
        for row in t.iter_mut() {
            row.swap(i, j);
        }
    }
    // col_j -= f * col_i
    fn col_op(m: &mut IntMat, t: &mut IntMat, j: usize, i: usize, f: &BigInt) {
        for row in m.iter_mut() {
            let s = &row[i] * f;
            row[j] -= s;
        }
        for row in t.iter_mut() {
            let s = &row[i] * f;
            row[j] -= s;
        }
    }
    fn row_op(m: &mut IntMat, j: usize, i: usize, f: &BigInt) {
        let n = m[0].len();
        for c in 0..n {
            let s = &m[i][c] * f;
            m[j][c] -= s;
        }
    }

    let mut k = 0;
    while k < n {
        // Find a nonzero pivot in the trailing block.
        let mut pivot = None;
        'search: for i in k..n {
            for j in k..n {
                if !m[i][j].is_zero() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut m, k, pi);
        swap_cols(&mut m, &mut t, k, pj);
        // Reduce row and column k until clean.
        loop {
            let mut dirty = false;
            for i in k + 1..n {
                if !m[i][k].is_zero() {
                    let f = m[i][k].div_floor(&m[k][k]);
                    row_op(&mut m, i, k, &f);
                    if !m[i][k].is_zero() {
                        swap_rows(&mut m, k, i);
                        dirty = true;
                    }
                }
            }
            for j in k + 1..n {
                if !m[k][j].is_zero() {
                    let f = m[k][j].div_floor(&m[k][k]);
                    col_op(&mut m, &mut t, j, k, &f);
                    if !m[k][j].is_zero() {
                        swap_cols(&mut m, &mut t, k, j);
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        k += 1;
    }
    // Make diagonal non-negative.
    for i in 0..n {
        if m[i][i].is_negative() {
            for row in m.iter_mut() {
                row[i] = -row[i].clone();
            }
            for row in t.iter_mut() {
                row[i] = -row[i].clone();
            }
        }
    }
    // Enforce divisibility d_i | d_{i+1}.
    loop {
        let mut fixed = true;
        for i in 0..n.saturating_sub(1) {
            let (a, b) = (m[i][i].clone(), m[i + 1][i + 1].clone());
            if a.is_zero() || (&b % &a).is_zero() {
                continue;
            }
            fixed = false;
            // Standard 2x2 trick: replace (a, b) by (gcd, lcm).
            // col_i += col_{i+1}; then clear with row/col ops.
            for row in m.iter_mut() {
                let s = row[i + 1].clone();
                row[i] += s;
            }
            for row in t.iter_mut() {
                let s = row[i + 1].clone();
                row[i] += s;
            }
            // Clear the block again with euclidean steps; it ends as (gcd, lcm).
            loop {
                let mut dirty = false;
                if !m[i + 1][i].is_zero() {
                    let f = m[i + 1][i].div_floor(&m[i][i]);
                    row_op(&mut m, i + 1, i, &f);
                    if !m[i + 1][i].is_zero() {
                        swap_rows(&mut m, i, i + 1);
                        dirty = true;
                    }
                }
                if !m[i][i + 1].is_zero() {
                    let f = m[i][i + 1].div_floor(&m[i][i]);
                    col_op(&mut m, &mut t, i + 1, i, &f);
                    if !m[i][i + 1].is_zero() {
                        swap_cols(&mut m, &mut t, i, i + 1);
                        dirty = true;
                    }
                }
                if !dirty {
                    break;
                }
            }
            if m[i][i].is_negative() {
                for row in m.iter_mut() {
                    row[i] = -row[i].clone();
                }
                for row in t.iter_mut() {
                    row[i] = -row[i].clone();
                }
            }
            if m[i + 1][i + 1].is_negative() {
                for row in m.iter_mut() {
                    row[i + 1] = -row[i + 1].clone();
                }
                for row in t.iter_mut() {
                    row[i + 1] = -row[i + 1].clone();
                }
            }
        }
        if fixed {
            break;
        }
    }
    let divisors = (0..n).map(|i| m[i][i].clone()).collect();
    (divisors, t)
}

/// Index of the column span of an integer matrix (rows × cols, rows ≤ cols)
/// inside Z^rows, i.e. |det| of its column Hermite normal form.  Zero if the
/// span has lower rank.
pub fn column_span_index(a: &IntMat) -> BigInt {
    let rows = a.len();
    let mut m = a.to_vec();
    let cols = m[0].len();
    let mut det = BigInt::one();
    let mut c0 = 0;
    for r in 0..rows {
        // Gcd-reduce row r across columns c0.. by column operations.
        let Some(p) = (c0..cols).find(|&c| !m[r][c].is_zero()) else {
            return BigInt::zero();
        };
        for row in m.iter_mut() {
            row.swap(c0, p);
        }
        loop {
            let mut best: Option<usize> = None;
            for c in c0 + 1..cols {
                if !m[r][c].is_zero() {
                    best = Some(c);
                    break;
                }
            }
            let Some(c) = best else { break };
            if m[r][c0].magnitude() > m[r][c].magnitude() {
                for row in m.iter_mut() {
                    row.swap(c0, c);
                }
                continue;
            }
            let f = m[r][c].div_floor(&m[r][c0]);
            for row in m.iter_mut() {
                let s = &row[c0] * &f;
                row[c] -= s;
            }
        }
        det *= m[r][c0].abs();
        c0 += 1;
    }
    det
}

// ---------------------------------------------------------------------------
// Matrices over a quadratic field
// ---------------------------------------------------------------------------

pub fn f_identity(k: QuadraticField, n: usize) -> FMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { k.one() } else { k.zero() }).collect())
        .collect()
}

pub fn f_mul(a: &FMat, b: &FMat) -> FMat {
    let n = a.len();
    let m = b[0].len();
    let kk = b.len();
    let field = a[0][0].field();
    let mut out = vec![vec![field.zero(); m]; n];
    for i in 0..n {
        for l in 0..kk {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] = &out[i][j] + &(&a[i][l] * &b[l][j]);
            }
        }
    }
    out
}

pub fn f_mul_vec(a: &FMat, v: &[FieldElement]) -> Vec<FieldElement> {
    a.iter()
        .map(|row| {
            let field = row[0].field();
            row.iter()
                .zip(v)
                .fold(field.zero(), |acc, (x, y)| &acc + &(x * y))
        })
        .collect()
}

pub fn f_conj_transpose(a: &FMat) -> FMat {
    let n = a.len();
    let m = a[0].len();
    (0..m)
        .map(|j| (0..n).map(|i| a[i][j].conjugate()).collect())
        .collect()
}

pub fn f_transpose(a: &FMat) -> FMat {
    let n = a.len();
    let m = a[0].len();
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn f_inverse(a: &FMat) -> Option<FMat> {
    let n = a.len();
    let field = a[0][0].field();
    let mut m = a.to_vec();
    let mut inv = f_identity(field, n);
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(p, col);
        inv.swap(p, col);
        let piv = m[col][col].inv().ok()?;
        for j in 0..n {
            m[col][j] = &m[col][j] * &piv;
            inv[col][j] = &inv[col][j] * &piv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                m[r][j] = &m[r][j] - &(&m[col][j] * &f);
                inv[r][j] = &inv[r][j] - &(&inv[col][j] * &f);
            }
        }
    }
    Some(inv)
}

pub fn f_det(a: &FMat) -> FieldElement {
    let n = a.len();
    let field = a[0][0].field();
    let mut m = a.to_vec();
    let mut det = field.one();
    let mut sign = false;
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return field.zero();
        };
        if p != col {
            m.swap(p, col);
            sign = !sign;
        }
        det = &det * &m[col][col];
        let inv = m[col][col].inv().expect("nonzero pivot");
        for j in col..n {
            m[col][j] = &m[col][j] * &inv;
        }
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in col..n {
                m[r][j] = &m[r][j] - &(&m[col][j] * &f);
            }
        }
    }
    if sign {
        -&det
    } else {
        det
    }
}
