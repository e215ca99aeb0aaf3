//! Seeded random operators and states.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::matrix::{vec_dot, vec_norm, Matrix};
use crate::scalar::{Complex, Real};

pub fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    let x: f64 = rng.sample(StandardNormal);
    T::lit(x)
}

/// Standard complex Gaussian (`E|z|² = 1`).
pub fn complex_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let s = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    Complex::new(gaussian::<T, R>(rng) * s, gaussian::<T, R>(rng) * s)
}

pub fn gaussian_matrix<T: Real, R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-distributed unitary: Gram–Schmidt on the columns of a complex Gaussian matrix.
pub fn haar_unitary<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Matrix<T> {
    loop {
        let g = gaussian_matrix::<T, R>(d, d, rng);
        let mut cols: Vec<Vec<Complex<T>>> = Vec::with_capacity(d);
        let mut degenerate = false;
        for j in 0..d {
            let mut v = g.column(j);
            // two passes keep the basis orthonormal to working precision
            for _ in 0..2 {
                for q in &cols {
                    let c = vec_dot(q, &v);
                    for (x, y) in v.iter_mut().zip(q) {
                        *x = *x - c * y;
                    }
                }
            }
            let norm = vec_norm(&v);
            if norm <= T::lit(1e-6) {
                degenerate = true;
                break;
            }
            v.iter_mut().for_each(|x| *x = *x / norm);
            cols.push(v);
        }
        if !degenerate {
            return Matrix::from_columns(&cols, d);
        }
    }
}

pub fn random_hermitian<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Matrix<T> {
    gaussian_matrix::<T, R>(d, d, rng).hermitian_part()
}

/// Full-rank density matrix `G G† / tr(G G†)`.
pub fn random_density<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Matrix<T> {
    let g = gaussian_matrix::<T, R>(d, d, rng);
    let rho = &g * &g.adjoint();
    let tr = rho.trace().re;
    rho.scale_real(T::one() / tr).hermitian_part()
}

/// Pure state `|ψ⟩⟨ψ|` for a Gaussian `ψ`.
pub fn random_pure_state<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Matrix<T> {
    let mut v: Vec<Complex<T>> = (0..d).map(|_| complex_gaussian(rng)).collect();
    let n = vec_norm(&v);
    v.iter_mut().for_each(|x| *x = *x / n);
    Matrix::outer(&v, &v)
}

/// Kraus operators `√wᵢ Uᵢ` of a random mixed-unitary (hence unital) channel.
pub fn random_mixed_unitary<T: Real, R: Rng + ?Sized>(d: usize, terms: usize, rng: &mut R) -> Vec<Matrix<T>> {
    let weights: Vec<f64> = (0..terms).map(|_| rng.gen_range(0.1..1.0)).collect();
    let total: f64 = weights.iter().sum();
    weights
        .iter()
        .map(|w| haar_unitary::<T, R>(d, rng).scale_real(T::lit((w / total).sqrt())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn haar_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let u = haar_unitary::<f64, _>(6, &mut rng);
        assert!((&u.adjoint() * &u).dist(&Matrix::identity(6)) < 1e-12);
    }

    #[test]
    fn density_is_normalized_and_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = random_density::<f64, _>(4, &mut rng);
        assert!((rho.trace().re - 1.0).abs() < 1e-14);
        assert!(rho.hermitian_residual() < 1e-15);
    }

    #[test]
    fn mixed_unitary_is_unital_and_tp() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let ks = random_mixed_unitary::<f64, _>(3, 4, &mut rng);
        let mut tp = Matrix::zeros(3, 3);
        let mut un = Matrix::zeros(3, 3);
        for k in &ks {
            tp += &(&k.adjoint() * k);
            un += &(k * &k.adjoint());
        }
        assert!(tp.dist(&Matrix::identity(3)) < 1e-12);
        assert!(un.dist(&Matrix::identity(3)) < 1e-12);
    }
}
