//! Exact rational scalars and small dense matrices over them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;
pub type Mat = Vec<Vec<Q>>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![Q::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn from_ints(rows: &[Vec<i64>]) -> Mat {
    rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

pub fn transpose(m: &Mat) -> Mat {
    if m.is_empty() {
        return Vec::new();
    }
    let (r, c) = (m.len(), m[0].len());
    (0..c).map(|j| (0..r).map(|i| m[i][j].clone()).collect()).collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            debug_assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| {
                    let mut s = Q::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Row vector times matrix.
pub fn vec_mul(v: &[Q], m: &Mat) -> Vec<Q> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    (0..cols)
        .map(|j| v.iter().zip(m).fold(Q::zero(), |acc, (x, row)| acc + x * &row[j]))
        .collect()
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn inverse(m: &Mat) -> Option<Mat> {
    let n = m.len();
    let mut a: Mat = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// Right inverse `Mᵀ(M Mᵀ)⁻¹` of a matrix with full row rank.
pub fn right_inverse(m: &Mat) -> Option<Mat> {
    let t = transpose(m);
    let g = mul(m, &t);
    Some(mul(&t, &inverse(&g)?))
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(it: impl IntoIterator<Item = &'a Q>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Integer matrix `m * den` together with `den`, the smallest positive common denominator.
pub fn scaled_int(m: &Mat) -> (Vec<Vec<i64>>, i64) {
    let den = common_denominator(m.iter().flatten());
    let d = Q::from_integer(den.clone());
    let rows = m
        .iter()
        .map(|r| r.iter().map(|x| to_i64(&(x * &d)).expect("scaled entry fits i64")).collect())
        .collect();
    (rows, den.to_i64().expect("denominator fits i64"))
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else if x.is_negative() {
        format!("-{}/{}", x.numer().abs(), x.denom())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = from_ints(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(mul(&m, &inv), identity(3));
        assert_eq!(inv[0][0], qf(3, 4));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = from_ints(&[vec![1, 2], vec![2, 4]]);
        assert!(inverse(&m).is_none());
    }

    #[test]
    fn right_inverse_of_wide_matrix() {
        let m = from_ints(&[vec![1, 0, 1], vec![0, 1, 1]]);
        let r = right_inverse(&m).unwrap();
        assert_eq!(mul(&m, &r), identity(2));
    }
}
