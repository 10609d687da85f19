use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Smallest eigenvalue of the sample covariance, relative to the largest,
/// below which the centered columns count as linearly dependent.
const RANK_TOLERANCE: f64 = 1e-12;

/// Centers, decorrelates and normalizes a set of equal-length columns.
///
/// The output columns have sample mean 0, sample variance 1 (divisor `n - 1`)
/// and zero pairwise sample covariance, and span the same space as the
/// centered inputs. Decorrelation is symmetric (ZCA) whitening through the
/// eigendecomposition of the sample covariance, so the outputs stay as close
/// as possible to the inputs.
pub fn orthonormalize(columns: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let p = columns.len();
    if p == 0 {
        return Err(Error::Empty);
    }
    let n = columns[0].len();
    if let Some(bad) = columns.iter().find(|c| c.len() != n) {
        return Err(Error::LengthMismatch {
            left: n,
            right: bad.len(),
        });
    }
    let needed = (p + 1).max(4);
    if n < needed {
        return Err(Error::TooFew {
            what: "orthonormalization",
            needed,
            got: n,
        });
    }
    if columns.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("orthonormalization input"));
    }

    let mut x = DMatrix::from_fn(n, p, |i, j| columns[j][i]);
    center(&mut x);

    // Whitening twice removes the residual correlation left by rounding in the
    // first eigendecomposition.
    for pass in 0..2 {
        let cov = x.transpose() * &x / (n - 1) as f64;
        let eig = SymmetricEigen::new(cov);
        let max = eig.eigenvalues.max();
        let min = eig.eigenvalues.min();
        if pass == 0 && !(max > 0.0 && min > RANK_TOLERANCE * max) {
            return Err(Error::RankDeficient);
        }
        let inv_sqrt = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| 1.0 / l.sqrt()));
        let w = &eig.eigenvectors * inv_sqrt * eig.eigenvectors.transpose();
        x = &x * w;
        center(&mut x);
    }

    Ok((0..p)
        .map(|j| {
            let col = x.column(j);
            let var = col.norm_squared() / (n - 1) as f64;
            let scale = 1.0 / var.sqrt();
            col.iter().map(|v| v * scale).collect()
        })
        .collect())
}

fn center(x: &mut DMatrix<f64>) {
    let n = x.nrows() as f64;
    for mut col in x.column_iter_mut() {
        let m = col.sum() / n;
        col.add_scalar_mut(-m);
    }
}
