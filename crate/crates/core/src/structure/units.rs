use std::collections::VecDeque;

use faer::Mat;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Complex, Real};
use crate::span::OperatorSpan;
use crate::structure::links::LinkedClass;
use crate::structure::minimal::MinimalFamily;
use crate::tolerance::ToleranceConfig;

/// `m × m` system of matrix units `E_ij` inside the commutant.
#[derive(Debug, Clone)]
pub struct MatrixUnitSystem<T: Real> {
    pub units: Vec<Vec<Matrix<T>>>,
}

impl<T: Real> MatrixUnitSystem<T> {
    pub fn size(&self) -> usize {
        self.units.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Matrix<T> {
        &self.units[i][j]
    }

    /// Largest violation of `E_ij E_kl = δ_jk E_il`, `E_ij† = E_ji` and `Σ E_ii = central`.
    pub fn relation_residual(&self, central: &Matrix<T>) -> T {
        let m = self.size();
        let dim = central.nrows();
        let zero = Matrix::zeros(dim, dim);
        let mut worst = T::zero();
        let mut diag = Matrix::zeros(dim, dim);
        for i in 0..m {
            diag += &self.units[i][i];
            for j in 0..m {
                worst = worst.max(self.units[i][j].adjoint().dist(&self.units[j][i]));
                for k in 0..m {
                    for l in 0..m {
                        let lhs = &self.units[i][j] * &self.units[k][l];
                        let rhs = if j == k { &self.units[i][l] } else { &zero };
                        worst = worst.max(lhs.dist(rhs));
                    }
                }
            }
        }
        worst.max(diag.dist(central))
    }

    /// Largest distance of a unit from the commutant span.
    pub fn commutant_residual(&self, commutant: &OperatorSpan<T>) -> T {
        self.units
            .iter()
            .flatten()
            .map(|e| commutant.residual(e))
            .fold(T::zero(), T::max)
    }
}

/// Unitary polar factor `U V†` of a square matrix.
fn polar_unitary<T: Real>(c: &Matrix<T>) -> Result<Matrix<T>> {
    let svd = c
        .as_faer()
        .svd()
        .map_err(|e| Error::Decomposition(format!("{e:?}")))?;
    let q: Mat<Complex<T>> = svd.U() * svd.V().adjoint();
    Ok(Matrix::from_faer(q))
}

/// Phase that makes the largest-magnitude entry of the first nonzero column real positive.
fn gauge_phase<T: Real>(e: &Matrix<T>, limit: T) -> Complex<T> {
    for j in 0..e.ncols() {
        let col = e.column(j);
        let mut best = 0;
        for (i, z) in col.iter().enumerate() {
            if z.norm() > col[best].norm() + limit {
                best = i;
            }
        }
        let z = col[best];
        if z.norm() > limit {
            return z.conj() / z.norm();
        }
    }
    Complex::new(T::one(), T::zero())
}

/// Matrix units of a linked class, with `E_ii` the members in ascending index order.
///
/// `E_1j` is the polar factor of the strongest commutant corner `P₁BPⱼ` (or a product
/// along a path of corners when the direct one vanishes), gauge fixed, and every other
/// unit is routed through the first member: `E_ij = E_i1 E_1j`.
pub fn matrix_units<T: Real>(
    class: &LinkedClass<T>,
    family: &MinimalFamily<T>,
    commutant: &OperatorSpan<T>,
    tol: &ToleranceConfig<T>,
) -> Result<MatrixUnitSystem<T>> {
    let m = class.member_indices.len();
    let ranges: Vec<&Matrix<T>> = class
        .member_indices
        .iter()
        .map(|&i| family.projections[i].range())
        .collect();
    let limit = tol.check_tol(commutant.dim());

    // q[j]: unitary with E_1j = W_1 q[j] W_j†
    let mut q: Vec<Option<Matrix<T>>> = vec![None; m];
    q[0] = Some(Matrix::identity(class.block_rank));
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for j in 0..m {
            if q[j].is_some() {
                continue;
            }
            let wka = ranges[k].adjoint();
            let best = commutant
                .basis()
                .iter()
                .map(|b| &(&wka * b) * ranges[j])
                .max_by(|x, y| x.norm().partial_cmp(&y.norm()).unwrap_or(std::cmp::Ordering::Equal));
            if let Some(corner) = best.filter(|c| c.norm() > limit) {
                let qkj = polar_unitary(&corner)?;
                let q1k = q[k].as_ref().expect("visited member");
                q[j] = Some(q1k * &qkj);
                queue.push_back(j);
            }
        }
    }

    let mut e1: Vec<Matrix<T>> = Vec::with_capacity(m);
    for (j, qj) in q.into_iter().enumerate() {
        let qj = qj.ok_or(Error::NoCorner {
            member: class.member_indices[j],
        })?;
        let mut e = &(ranges[0] * &qj) * &ranges[j].adjoint();
        if j > 0 {
            e = e.scale(gauge_phase(&e, limit));
        }
        e1.push(e);
    }
    let units = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == 0 {
                        e1[j].clone()
                    } else {
                        &e1[i].adjoint() * &e1[j]
                    }
                })
                .collect()
        })
        .collect();
    Ok(MatrixUnitSystem { units })
}
