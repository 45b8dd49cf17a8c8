use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::lp_complex::assemble::{assemble_boundary, dual_boundary};
use crate::resolutions::Resolution;
use crate::scalar::{real, Coefficient, Real};

/// Relative threshold for rank decisions on truncated operators.
const RANK_TOL: f64 = 1e-10;

/// Orthonormal basis of the column space of `t`, by column-pivoted QR.
fn image_basis<T: Real>(t: &DMatrix<T>) -> DMatrix<T> {
    if t.ncols() == 0 || t.nrows() == 0 {
        return DMatrix::zeros(t.nrows(), 0);
    }
    let qr = t.clone().col_piv_qr();
    let r = qr.r();
    let diag: Vec<T> = (0..r.nrows().min(r.ncols())).map(|k| r[(k, k)].abs()).collect();
    let top = diag.iter().copied().fold(T::zero(), |m, v| if v > m { v } else { m });
    let rank = diag.iter().filter(|&&v| v > top * real(RANK_TOL)).count();
    qr.q().columns(0, rank).into_owned()
}

/// Orthonormal basis of the null space of `d`, from the eigenvectors of
/// `d^T d` with negligible eigenvalues.
fn kernel_basis<T: Real>(d: &DMatrix<T>) -> DMatrix<T> {
    let gram = d.transpose() * d;
    let n = gram.nrows();
    let eig = gram.symmetric_eigen();
    let top = eig.eigenvalues.iter().copied().fold(T::zero(), |m, v| if v.abs() > m { v.abs() } else { m });
    let cut = if top > T::zero() { top * real(RANK_TOL) } else { T::one() };
    let keep: Vec<usize> = (0..n).filter(|&k| eig.eigenvalues[k].abs() <= cut).collect();
    DMatrix::from_fn(n, keep.len(), |r, c| eig.eigenvectors[(r, keep[c])])
}

/// Largest absolute inner product between an orthonormal basis of `im(t)` and
/// one of `ker(dual)`. With `dual = t^T` this is ~0.
pub fn annihilator_residual_with_dual<T: Real>(t: &DMatrix<T>, dual: &DMatrix<T>) -> Result<T> {
    if dual.nrows() != t.ncols() || dual.ncols() != t.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "dual is {}x{}, operator is {}x{}",
            dual.nrows(),
            dual.ncols(),
            t.nrows(),
            t.ncols()
        )));
    }
    let im = image_basis(t);
    let ker = kernel_basis(dual);
    let cross = im.transpose() * ker;
    Ok(cross.iter().map(|v| v.abs()).fold(T::zero(), |m, v| if v > m { v } else { m }))
}

/// Truncated check that `ker(T^*)` annihilates `T(X)` for `T = d_i` on `B(R)`.
pub fn annihilator_residual<S: Coefficient, T: Real>(res: &Resolution<S>, i: usize, radius: usize) -> Result<T> {
    let op = assemble_boundary::<S, T>(res, i, radius)?;
    let dual = dual_boundary::<S, T>(res, i, radius)?;
    annihilator_residual_with_dual(&op.matrix, &dual.matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolutions::{cyclic_infinite_resolution, periodic_cyclic_resolution};
    use crate::Rational;

    #[test]
    fn integers_and_c4() {
        let z = cyclic_infinite_resolution::<Rational>().unwrap();
        let r: f64 = annihilator_residual(&z, 1, 3).unwrap();
        assert!(r <= 1e-10, "{r}");
        let c4 = periodic_cyclic_resolution::<Rational>(4, 2).unwrap();
        for i in 1..=2 {
            let r: f64 = annihilator_residual(&c4, i, 2).unwrap();
            assert!(r <= 1e-10, "{r}");
        }
    }

    #[test]
    fn wrong_transpose_detected() {
        let z = cyclic_infinite_resolution::<Rational>().unwrap();
        let op = assemble_boundary::<Rational, f64>(&z, 1, 3).unwrap();
        let mut wrong = op.matrix.transpose();
        let n = wrong.ncols();
        for c in 0..n / 2 {
            wrong.swap_columns(c, n - 1 - c);
        }
        let r = annihilator_residual_with_dual(&op.matrix, &wrong).unwrap();
        assert!(r > 0.1, "{r}");
    }
}
