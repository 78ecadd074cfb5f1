//! Small dense linear algebra: orthonormalization and distances between subspaces.

use num_traits::Float;

use super::WhitneyError;

pub fn dot<T: Float>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |s, (&x, &y)| s + x * y)
}

/// Euclidean norm, scaled so that tiny or huge entries do not under- or overflow.
pub fn norm<T: Float>(a: &[T]) -> T {
    let m = a.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
    if m == T::zero() || !m.is_finite() {
        return m;
    }
    a.iter().fold(T::zero(), |s, &v| s + (v / m) * (v / m)).sqrt() * m
}

pub fn sub<T: Float>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

/// Orthonormal basis of the span of `cols` by modified Gram–Schmidt with one
/// reorthogonalization pass. Fails when a column is dependent on the previous ones.
pub fn gram_schmidt<T: Float>(cols: &[Vec<T>]) -> Result<Vec<Vec<T>>, WhitneyError> {
    let tol = T::epsilon().sqrt();
    let mut out: Vec<Vec<T>> = Vec::with_capacity(cols.len());
    for (i, c) in cols.iter().enumerate() {
        let n0 = norm(c);
        let mut v = c.clone();
        for _ in 0..2 {
            for q in &out {
                let p = dot(q, &v);
                for (vi, &qi) in v.iter_mut().zip(q) {
                    *vi = *vi - p * qi;
                }
            }
        }
        let n = norm(&v);
        if !(n > tol * n0) || n0 == T::zero() {
            return Err(WhitneyError::RankDeficient { column: i });
        }
        out.push(v.into_iter().map(|x| x / n).collect());
    }
    Ok(out)
}

/// `δ(A, B) = sup_{a ∈ A, ‖a‖ = 1} d(a, B)` for orthonormal bases `a` and `b`: the
/// square root of the largest eigenvalue of `Gᵀ(I − P_B)G`, `G` the basis of `A`.
pub fn subspace_distance<T: Float>(a: &[Vec<T>], b: &[Vec<T>]) -> T {
    if a.is_empty() {
        return T::zero();
    }
    // residuals R = (I − P_B) G, so Gᵀ(I − P_B)G = RᵀR
    let resid: Vec<Vec<T>> = a
        .iter()
        .map(|g| {
            let mut r = g.clone();
            for q in b {
                let p = dot(q, g);
                for (ri, &qi) in r.iter_mut().zip(q) {
                    *ri = *ri - p * qi;
                }
            }
            r
        })
        .collect();
    // scale out the largest entry so that squaring tiny residuals cannot underflow
    let sigma = resid.iter().flatten().fold(T::zero(), |m, &v| m.max(v.abs()));
    if sigma == T::zero() {
        return T::zero();
    }
    let k = resid.len();
    let mut m = vec![vec![T::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            m[i][j] = resid[i].iter().zip(&resid[j]).fold(T::zero(), |s, (&a, &b)| s + (a / sigma) * (b / sigma));
        }
    }
    let lambda = largest_eigenvalue(m).max(T::zero());
    (lambda.sqrt() * sigma).min(T::one())
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve<T: Float>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Option<Vec<T>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).expect("finite"))?;
        if !(a[piv][col].abs() > T::min_positive_value()) {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] = a[r][c] - f * a[col][c];
            }
            b[r] = b[r] - f * b[col];
        }
    }
    let mut x = vec![T::zero(); n];
    for r in (0..n).rev() {
        let s = (r + 1..n).fold(b[r], |s, c| s - a[r][c] * x[c]);
        x[r] = s / a[r][r];
    }
    Some(x)
}

/// Largest eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
pub fn largest_eigenvalue<T: Float>(mut m: Vec<Vec<T>>) -> T {
    let k = m.len();
    let two = T::one() + T::one();
    for _ in 0..64 {
        let off = (0..k)
            .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(T::zero(), |s, (i, j)| s + m[i][j] * m[i][j]);
        if off <= T::min_positive_value() {
            break;
        }
        for p in 0..k {
            for q in p + 1..k {
                if m[p][q] == T::zero() {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (two * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for r in 0..k {
                    let (mrp, mrq) = (m[r][p], m[r][q]);
                    m[r][p] = c * mrp - s * mrq;
                    m[r][q] = s * mrp + c * mrq;
                }
                for r in 0..k {
                    let (mpr, mqr) = (m[p][r], m[q][r]);
                    m[p][r] = c * mpr - s * mqr;
                    m[q][r] = s * mpr + c * mqr;
                }
            }
        }
    }
    (0..k).map(|i| m[i][i]).fold(T::neg_infinity(), T::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(v: &[&[f64]]) -> Vec<Vec<f64>> {
        gram_schmidt(&v.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn distance_examples() {
        let e1 = span(&[&[1.0, 0.0]]);
        let e2 = span(&[&[0.0, 1.0]]);
        let diag = span(&[&[1.0, 1.0]]);
        assert!(subspace_distance(&e1, &e1).abs() < 1e-12);
        assert!((subspace_distance(&e1, &e2) - 1.0).abs() < 1e-12);
        assert!((subspace_distance(&diag, &e1) - 2f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn asymmetric_and_bounded() {
        let line = span(&[&[1.0, 0.0, 0.0]]);
        let plane = span(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 1.0]]);
        assert!(subspace_distance(&line, &plane) < 1e-12);
        assert!((subspace_distance(&plane, &line) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tiny_distances_do_not_underflow() {
        let eps = 1e-200;
        let a = span(&[&[1.0, 0.0]]);
        let b = span(&[&[1.0, -eps]]);
        let d = subspace_distance(&a, &b);
        assert!((d / eps - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues() {
        let m = vec![vec![2.0, 1.0, 0.0], vec![1.0, 2.0, 0.0], vec![0.0, 0.0, 1.0]];
        assert!((largest_eigenvalue(m) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn rank_deficiency() {
        let cols = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(matches!(gram_schmidt(&cols), Err(WhitneyError::RankDeficient { column: 1 })));
    }
}
