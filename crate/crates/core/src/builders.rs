//! Pauli operators and the reference channels.

use crate::channel::{unitize, KrausChannel};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Complex, Real};
use crate::tolerance::ToleranceConfig;

/// Largest qubit count accepted by [`collective`].
pub const MAX_COLLECTIVE_QUBITS: usize = 10;

pub fn pauli_x<T: Real>() -> Matrix<T> {
    Matrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]])
}

pub fn pauli_y<T: Real>() -> Matrix<T> {
    let i = Complex::new(T::zero(), T::one());
    Matrix::from_fn(2, 2, |r, c| match (r, c) {
        (0, 1) => -i,
        (1, 0) => i,
        _ => Complex::new(T::zero(), T::zero()),
    })
}

pub fn pauli_z<T: Real>() -> Matrix<T> {
    Matrix::real_diag(&[T::one(), -T::one()])
}

/// `I ⊗ … ⊗ op ⊗ … ⊗ I` with `op` on qubit `site` (0 is the leftmost factor).
pub fn single_site<T: Real>(op: &Matrix<T>, site: usize, n: usize) -> Matrix<T> {
    assert!(site < n, "site out of range");
    let left = Matrix::identity(1 << site);
    let right = Matrix::identity(1 << (n - site - 1));
    left.kron(op).kron(&right)
}

/// `Σⱼ opⱼ` over all `n` qubits.
pub fn collective_sum<T: Real>(op: &Matrix<T>, n: usize) -> Matrix<T> {
    let d = 1 << n;
    (0..n).fold(Matrix::zeros(d, d), |acc, j| &acc + &single_site(op, j, n))
}

/// Collective `(𝐗, 𝐘, 𝐙)` on `n` qubits.
pub fn collective_paulis<T: Real>(n: usize) -> [Matrix<T>; 3] {
    [
        collective_sum(&pauli_x(), n),
        collective_sum(&pauli_y(), n),
        collective_sum(&pauli_z(), n),
    ]
}

fn check_probability<T: Real>(p: T) -> Result<()> {
    if p > T::zero() && p < T::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("p = {p} must satisfy 0 < p < 1")))
    }
}

fn finish<T: Real>(kraus: Vec<Matrix<T>>, name: String) -> Result<KrausChannel<T>> {
    Ok(KrausChannel::new(kraus, &ToleranceConfig::default())?.with_name(name))
}

/// `{√(1−p) I, √p Z}`.
pub fn phase_damping<T: Real>(p: T) -> Result<KrausChannel<T>> {
    check_probability(p)?;
    let kraus = vec![
        Matrix::identity(2).scale_real((T::one() - p).sqrt()),
        pauli_z().scale_real(p.sqrt()),
    ];
    finish(kraus, format!("phase-damping(p={p})"))
}

/// `{√(1−p) I₄, √p Z⊗Z}`.
pub fn zz_damping<T: Real>(p: T) -> Result<KrausChannel<T>> {
    check_probability(p)?;
    let z = pauli_z::<T>();
    let kraus = vec![
        Matrix::identity(4).scale_real((T::one() - p).sqrt()),
        z.kron(&z).scale_real(p.sqrt()),
    ];
    finish(kraus, format!("zz-damping(p={p})"))
}

/// `{(1−p) I, √(p(1−p)) Z₁, √(p(1−p)) Z₂, p Z₁Z₂}`.
pub fn two_qubit_dephasing<T: Real>(p: T) -> Result<KrausChannel<T>> {
    check_probability(p)?;
    let z = pauli_z::<T>();
    let i2 = Matrix::identity(2);
    let q = (T::one() - p).max(T::zero());
    let mixed = (p * q).sqrt();
    let kraus = vec![
        Matrix::identity(4).scale_real(q),
        z.kron(&i2).scale_real(mixed),
        i2.kron(&z).scale_real(mixed),
        z.kron(&z).scale_real(p),
    ];
    finish(kraus, format!("two-qubit-dephasing(p={p})"))
}

/// Collective rotation channel `{exp(i𝐗)/√3, exp(i𝐘)/√3, exp(i𝐙)/√3}` on `n` qubits.
///
/// `n = 1` and `n = 2` are allowed; their structure is trivial or nearly so.
pub fn collective<T: Real>(n: usize) -> Result<KrausChannel<T>> {
    if n == 0 || n > MAX_COLLECTIVE_QUBITS {
        return Err(Error::InvalidParameter(format!(
            "collective channel needs 1 ≤ n ≤ {MAX_COLLECTIVE_QUBITS}, got {n}"
        )));
    }
    let ch = unitize(&collective_paulis::<T>(n), &ToleranceConfig::default())?;
    Ok(ch.with_name(format!("collective:{n}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Matrix<f64>;

    #[test]
    fn paulis_anticommute() {
        let (x, y, z) = (pauli_x::<f64>(), pauli_y::<f64>(), pauli_z::<f64>());
        assert!((&x * &y).dist(&z.scale(Complex::new(0.0, 1.0))) < 1e-15);
        assert!((&(&x * &z) + &(&z * &x)).norm() < 1e-15);
    }

    #[test]
    fn phase_damping_matrices() {
        let ch = phase_damping(0.25).unwrap();
        let k = ch.kraus();
        assert!(k[0].dist(&M::identity(2).scale_real(0.75f64.sqrt())) < 1e-15);
        assert!(k[1].dist(&M::real_diag(&[0.5, -0.5])) < 1e-15);
    }

    #[test]
    fn endpoints_rejected() {
        for p in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(phase_damping(p).is_err());
            assert!(zz_damping(p).is_err());
            assert!(two_qubit_dephasing(p).is_err());
        }
        assert!(collective::<f64>(0).is_err());
    }

    #[test]
    fn builders_are_unital_and_tp() {
        let chans = [
            phase_damping(0.3).unwrap(),
            zz_damping(0.3).unwrap(),
            two_qubit_dephasing(0.3).unwrap(),
            collective(1).unwrap(),
            collective(2).unwrap(),
            collective(3).unwrap(),
        ];
        for ch in &chans {
            assert!(ch.is_trace_preserving() && ch.is_unital(), "{:?}", ch.name());
        }
    }

    #[test]
    fn single_site_ordering() {
        // Z on qubit 0 of two acts as diag(1, 1, −1, −1) in |00⟩, |01⟩, |10⟩, |11⟩
        let z0 = single_site(&pauli_z::<f64>(), 0, 2);
        assert!(z0.dist(&M::real_diag(&[1.0, 1.0, -1.0, -1.0])) < 1e-15);
        let zc = collective_sum(&pauli_z::<f64>(), 2);
        assert!(zc.dist(&M::real_diag(&[2.0, 0.0, 0.0, -2.0])) < 1e-15);
    }
}
