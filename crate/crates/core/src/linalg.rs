//! Small dense complex vectors and matrices.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CVec = DVector<C64>;
pub type CMat = DMatrix<C64>;

/// `a† b`.
pub fn inner(a: &CVec, b: &CVec) -> C64 {
    a.dotc(b)
}

/// `|a† b|²`.
pub fn gain(a: &CVec, b: &CVec) -> f64 {
    inner(a, b).norm_sqr()
}

/// `r e^{iθ}`.
pub fn polar(r: f64, theta: f64) -> C64 {
    C64::new(r * libm::cos(theta), r * libm::sin(theta))
}

pub fn norm_sqr(v: &CVec) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// `v / ‖v‖`; fails when `v` is (numerically) zero.
pub fn unit(v: &CVec) -> Result<CVec> {
    let n = libm::sqrt(norm_sqr(v));
    if !(n > 0.0) || !n.is_finite() {
        return Err(Error::DegenerateChannel("zero vector cannot be normalized"));
    }
    Ok(v.unscale(n))
}

/// `w† (v v†) w` style rank-one projection removal: `x − v (v† x) / ‖v‖²`.
pub fn project_out(x: &CVec, v: &CVec) -> CVec {
    let vv = norm_sqr(v);
    if vv == 0.0 {
        return x.clone();
    }
    x - v * (inner(v, x) / vv)
}

/// Eigen-decomposition of a Hermitian matrix: ascending real eigenvalues and
/// the matching orthonormal eigenvectors as columns.
pub fn hermitian_eigen(m: &CMat) -> (nalgebra::DVector<f64>, CMat) {
    let eig = m.clone().symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: alloc::vec::Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let vectors = CMat::from_columns(&order.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect::<alloc::vec::Vec<_>>());
    (values, vectors)
}
