//! Noiseless subsystems: encoding, decoding and end-to-end checks of a structure.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::channel::KrausChannel;
use crate::commutant::{commutant_basis, fixed_point_basis};
use crate::error::{Error, Result};
use crate::linalg::raw_eigh;
use crate::matrix::Matrix;
use crate::random::{haar_unitary, random_density};
use crate::scalar::{Complex, Real};
use crate::structure::{block_residuals, WedderburnStructure};
use crate::tolerance::ToleranceConfig;

const VERIFY_STREAM: u64 = 0x766572;
const PLANT_STREAM: u64 = 0x706c61;

/// Largest `Σ n·m` accepted by [`planted_channel`].
pub const MAX_PLANTED_DIM: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiselessKind {
    /// `n = 1`: the logical space is a decoherence-free subspace.
    Subspace,
    /// `n ≥ 2`: the logical factor is paired with a noisy cofactor.
    Subsystem,
}

/// One component viewed as `ℂⁿ ⊗ ℂᵐ` with the noise acting on the first factor.
#[derive(Debug, Clone)]
pub struct NoiselessComponent<T: Real> {
    pub component_index: usize,
    /// `m`: dimension of the protected factor.
    pub logical_dim: usize,
    /// `n`: dimension of the factor the noise acts on.
    pub cofactor_dim: usize,
    pub kind: NoiselessKind,
    /// `dim × n·m`; column `a·m + i` is basis vector `a` of copy `i`.
    pub isometry: Matrix<T>,
}

impl<T: Real> NoiselessComponent<T> {
    /// At least a qubit's worth of protected space.
    pub fn is_usable(&self) -> bool {
        self.logical_dim >= 2
    }

    pub fn code_dim(&self) -> usize {
        self.logical_dim * self.cofactor_dim
    }
}

/// Density matrix: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone)]
pub struct DensityMatrix<T: Real> {
    matrix: Matrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(m: Matrix<T>, tol: &ToleranceConfig<T>) -> Result<Self> {
        let dim = m.ensure_square()?;
        if dim == 0 {
            return Err(Error::InvalidDensity("empty matrix".into()));
        }
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let limit = tol.zero_tol(dim);
        let herm = m.hermitian_residual();
        if herm > limit {
            return Err(Error::InvalidDensity(format!("not Hermitian (residual {:.3e})", herm.as_f64())));
        }
        let trace = m.trace().re;
        if (trace - T::one()).abs() > limit {
            return Err(Error::InvalidDensity(format!("trace {trace} ≠ 1")));
        }
        let (values, _) = raw_eigh(&m)?;
        let min = values.first().copied().unwrap_or(T::zero());
        if min < -limit {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min}")));
        }
        Ok(Self { matrix: m.hermitian_part() })
    }

    fn trusted(m: Matrix<T>) -> Self {
        Self { matrix: m.hermitian_part() }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::trusted(Matrix::identity(dim).scale_real(T::one() / T::from_usize_lossy(dim)))
    }

    /// `|ψ⟩⟨ψ|` for a normalized copy of `psi`.
    pub fn pure(psi: &[Complex<T>]) -> Result<Self> {
        let norm = crate::matrix::vec_norm(psi);
        if norm <= T::zero() || !norm.is_finite() {
            return Err(Error::InvalidDensity("zero state vector".into()));
        }
        let v: Vec<Complex<T>> = psi.iter().map(|z| z / norm).collect();
        Ok(Self::trusted(Matrix::outer(&v, &v)))
    }

    pub fn random<R: rand::Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        Self::trusted(random_density(dim, rng))
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// One entry per component, in the structure's canonical order.
pub fn noiseless_components<T: Real>(structure: &WedderburnStructure<T>) -> Vec<NoiselessComponent<T>> {
    let u = &structure.structuring_unitary;
    structure
        .components
        .iter()
        .enumerate()
        .map(|(k, comp)| {
            let (n, m) = (comp.n(), comp.m());
            let base = structure.offset(k);
            // copy-major column i·n + a becomes tensor-ordered column a·m + i
            let isometry = Matrix::from_fn(structure.dim, n * m, |r, col| {
                let (a, i) = (col / m, col % m);
                u.get(r, base + i * n + a)
            });
            NoiselessComponent {
                component_index: k,
                logical_dim: m,
                cofactor_dim: n,
                kind: if n == 1 {
                    NoiselessKind::Subspace
                } else {
                    NoiselessKind::Subsystem
                },
                isometry,
            }
        })
        .collect()
}

/// `V (ancilla ⊗ logical) V†`.
pub fn encode<T: Real>(
    nc: &NoiselessComponent<T>,
    ancilla: &DensityMatrix<T>,
    logical: &DensityMatrix<T>,
) -> Result<DensityMatrix<T>> {
    for (expected, found) in [(nc.cofactor_dim, ancilla.dim()), (nc.logical_dim, logical.dim())] {
        if expected != found {
            return Err(Error::DimensionMismatch { expected, found });
        }
    }
    let v = &nc.isometry;
    let inner = ancilla.matrix().kron(logical.matrix());
    Ok(DensityMatrix::trusted(&(v * &inner) * &v.adjoint()))
}

/// Partial trace over the cofactor of `V† ρ V`, without support checks or normalization.
fn reduce<T: Real>(nc: &NoiselessComponent<T>, rho: &Matrix<T>) -> Matrix<T> {
    let v = &nc.isometry;
    let sigma = &(&v.adjoint() * rho) * v;
    let (n, m) = (nc.cofactor_dim, nc.logical_dim);
    Matrix::from_fn(m, m, |i, j| {
        (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, a| acc + sigma.get(a * m + i, a * m + j))
    })
}

/// Pulls the state back through the isometry and traces out the noisy factor.
pub fn decode<T: Real>(
    nc: &NoiselessComponent<T>,
    state: &DensityMatrix<T>,
    tol: &ToleranceConfig<T>,
) -> Result<DensityMatrix<T>> {
    let v = &nc.isometry;
    if state.dim() != v.nrows() {
        return Err(Error::DimensionMismatch {
            expected: v.nrows(),
            found: state.dim(),
        });
    }
    let rho = state.matrix();
    let pi = v * &v.adjoint();
    let leakage = rho.dist(&(&(&pi * rho) * &pi));
    if leakage > tol.check_tol(state.dim()) {
        return Err(Error::SupportLeakage {
            leakage: leakage.as_f64(),
        });
    }
    let out = reduce(nc, rho);
    let tr = out.trace().re;
    Ok(DensityMatrix::trusted(out.scale_real(T::one() / tr)))
}

/// `½ Σ |eig(ρ − σ)|`.
pub fn trace_distance<T: Real>(a: &DensityMatrix<T>, b: &DensityMatrix<T>) -> Result<T> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let (values, _) = raw_eigh(&(a.matrix() - b.matrix()))?;
    Ok(values.iter().fold(T::zero(), |acc, v| acc + v.abs()) * T::lit(0.5))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub max_trace_distance: f64,
    pub trials: usize,
    pub repetitions: usize,
    pub passed: bool,
}

/// Random encode → channel^repetitions → decode round trips.
///
/// Passes when the largest trace distance is at most `eps_zero`. Leakage is not
/// rejected here; it shows up as distance.
pub fn verify_noiseless<T: Real>(
    ch: &KrausChannel<T>,
    nc: &NoiselessComponent<T>,
    trials: usize,
    repetitions: usize,
    tol: &ToleranceConfig<T>,
) -> Result<VerifyReport> {
    if trials == 0 || repetitions == 0 {
        return Err(Error::InvalidParameter("trials and repetitions must be positive".into()));
    }
    if ch.dim() != nc.isometry.nrows() {
        return Err(Error::DimensionMismatch {
            expected: ch.dim(),
            found: nc.isometry.nrows(),
        });
    }
    let mut rng = tol.rng(VERIFY_STREAM);
    let mut worst = T::zero();
    for _ in 0..trials {
        let ancilla = DensityMatrix::random(nc.cofactor_dim, &mut rng);
        let logical = DensityMatrix::random(nc.logical_dim, &mut rng);
        let mut rho = encode(nc, &ancilla, &logical)?.matrix;
        for _ in 0..repetitions {
            rho = ch.apply_unchecked(&rho);
        }
        let out = reduce(nc, &rho);
        let tr = out.trace().re;
        let d = if tr > T::lit(1e-12) {
            trace_distance(&DensityMatrix::trusted(out.scale_real(T::one() / tr)), &logical)?
        } else {
            T::one()
        };
        worst = worst.max(d);
    }
    let max_trace_distance = worst.as_f64();
    Ok(VerifyReport {
        max_trace_distance,
        trials,
        repetitions,
        passed: worst <= tol.eps_zero,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
}

impl Diagnostic {
    fn new(name: &str, pass: bool, residual: f64) -> Self {
        Self {
            name: name.to_owned(),
            pass,
            residual,
        }
    }

    fn within<T: Real>(name: &str, residual: T, limit: T) -> Self {
        Self::new(name, residual <= limit, residual.as_f64())
    }

    fn count(name: &str, lhs: usize, rhs: usize) -> Self {
        Self::new(name, lhs == rhs, lhs.abs_diff(rhs) as f64)
    }

    fn failed(name: &str) -> Self {
        Self::new(name, false, f64::MAX)
    }
}

/// Checks a structure against the channel it claims to describe.
///
/// Failures are reported as diagnostics, never as errors.
pub fn verify_structure<T: Real>(
    ch: &KrausChannel<T>,
    structure: &WedderburnStructure<T>,
    tol: &ToleranceConfig<T>,
) -> Vec<Diagnostic> {
    let dim = ch.dim();
    let mut out = Vec::new();
    out.push(Diagnostic::count("structure_dimension", structure.dim, dim));
    if structure.dim != dim {
        return out;
    }
    let limit = tol.check_tol(dim);
    let comps = &structure.components;
    let sum_nm: usize = comps.iter().map(|c| c.n() * c.m()).sum();
    let sum_m2: usize = comps.iter().map(|c| c.m() * c.m()).sum();
    let sum_n2: usize = comps.iter().map(|c| c.n() * c.n()).sum();
    out.push(Diagnostic::count("sum_nm_equals_dim", sum_nm, dim));

    let commutant = commutant_basis(ch.kraus(), tol);
    match &commutant {
        Ok(c) => out.push(Diagnostic::count("commutant_dim_equals_sum_m2", c.len(), sum_m2)),
        Err(_) => out.push(Diagnostic::failed("commutant_dim_equals_sum_m2")),
    }
    out.push(Diagnostic::count("algebra_dim_equals_sum_n2", structure.algebra_dim(), sum_n2));
    match (&commutant, fixed_point_basis(ch, tol)) {
        (Ok(c), Ok(f)) => out.push(Diagnostic::within("fixed_points_equal_commutant", f.distance(c), limit)),
        _ => out.push(Diagnostic::failed("fixed_points_equal_commutant")),
    }

    let central = comps
        .iter()
        .flat_map(|c| {
            ch.kraus()
                .iter()
                .map(move |a| c.class.central_projection.matrix().commutator(a).norm())
        })
        .fold(T::zero(), T::max);
    out.push(Diagnostic::within("central_projections_commute", central, limit));

    let u = &structure.structuring_unitary;
    let unitarity = if u.is_square() && u.nrows() == dim {
        (&u.adjoint() * u).dist(&Matrix::identity(dim))
    } else {
        T::infinity()
    };
    out.push(Diagnostic::within("structuring_unitary", unitarity, limit));

    let (mut off, mut spread) = (T::zero(), T::zero());
    for a in ch.kraus() {
        let (o, s) = block_residuals(structure, a);
        off = off.max(o);
        spread = spread.max(s);
    }
    out.push(Diagnostic::within("block_diagonal", off, limit));
    out.push(Diagnostic::within("repeated_blocks_equal", spread, limit));

    let relations = comps
        .iter()
        .map(|c| c.units.relation_residual(c.class.central_projection.matrix()))
        .fold(T::zero(), T::max);
    out.push(Diagnostic::within("matrix_unit_relations", relations, limit));
    match &commutant {
        Ok(c) => {
            let r = comps.iter().map(|x| x.units.commutant_residual(c)).fold(T::zero(), T::max);
            out.push(Diagnostic::within("matrix_units_in_commutant", r, limit));
        }
        Err(_) => out.push(Diagnostic::failed("matrix_units_in_commutant")),
    }
    out
}

/// `(n, m)` pairs of a Wedderburn structure.
pub type Pattern = Vec<(usize, usize)>;

/// Channel `{U Vⱼ U† / √g}` whose interaction algebra has the given `(n, m)` pattern.
///
/// Returns the channel and the pattern in canonical order.
pub fn planted_channel<T: Real>(
    pattern: &[(usize, usize)],
    generators: usize,
    seed: u64,
) -> Result<(KrausChannel<T>, Pattern)> {
    if generators < 3 {
        return Err(Error::InvalidPattern(format!("need at least 3 generators, got {generators}")));
    }
    if pattern.is_empty() || pattern.iter().any(|&(n, m)| n == 0 || m == 0) {
        return Err(Error::InvalidPattern("every (n, m) must be positive".into()));
    }
    let dim: usize = pattern.iter().map(|&(n, m)| n * m).sum();
    if dim > MAX_PLANTED_DIM {
        return Err(Error::InvalidPattern(format!("Σ n·m = {dim} exceeds {MAX_PLANTED_DIM}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(PLANT_STREAM);
    let u: Matrix<T> = haar_unitary(dim, &mut rng);
    let scale = T::one() / T::from_usize_lossy(generators).sqrt();
    let mut kraus = Vec::with_capacity(generators);
    for _ in 0..generators {
        let mut v = Matrix::zeros(dim, dim);
        let mut offset = 0;
        for &(n, m) in pattern {
            let w: Matrix<T> = haar_unitary(n, &mut rng);
            for copy in 0..m {
                for a in 0..n {
                    for b in 0..n {
                        v.set(offset + copy * n + a, offset + copy * n + b, w.get(a, b));
                    }
                }
            }
            offset += n * m;
        }
        kraus.push((&(&u * &v) * &u.adjoint()).scale_real(scale));
    }
    let mut expected = pattern.to_vec();
    expected.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
    let ch = KrausChannel::new(kraus, &ToleranceConfig::default())?.with_name("planted");
    Ok((ch, expected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{collective, pauli_x, phase_damping};
    use crate::structure::analyze;

    type M = Matrix<f64>;

    fn tol() -> ToleranceConfig<f64> {
        ToleranceConfig::default()
    }

    #[test]
    fn component_examples() {
        let s3 = analyze(&collective::<f64>(3).unwrap(), &tol()).unwrap();
        let usable: Vec<_> = noiseless_components(&s3).into_iter().filter(|c| c.is_usable()).collect();
        assert_eq!(usable.len(), 1);
        assert_eq!((usable[0].logical_dim, usable[0].cofactor_dim), (2, 2));
        assert_eq!(usable[0].kind, NoiselessKind::Subsystem);

        let s4 = analyze(&collective::<f64>(4).unwrap(), &tol()).unwrap();
        let mut usable: Vec<(usize, usize, NoiselessKind)> = noiseless_components(&s4)
            .into_iter()
            .filter(|c| c.is_usable())
            .map(|c| (c.logical_dim, c.cofactor_dim, c.kind))
            .collect();
        usable.sort_by_key(|x| x.0);
        assert_eq!(usable, vec![(2, 1, NoiselessKind::Subspace), (3, 3, NoiselessKind::Subsystem)]);

        let s1 = analyze(&collective::<f64>(1).unwrap(), &tol()).unwrap();
        assert!(noiseless_components(&s1).iter().all(|c| !c.is_usable()));
    }

    #[test]
    fn encode_decode_examples() {
        let ch = collective::<f64>(3).unwrap();
        let s = analyze(&ch, &tol()).unwrap();
        let nc = noiseless_components(&s).into_iter().find(|c| c.is_usable()).unwrap();
        let v = &nc.isometry;
        assert!((&v.adjoint() * v).dist(&M::identity(4)) < 1e-10);

        let mixed = encode(&nc, &DensityMatrix::maximally_mixed(2), &DensityMatrix::maximally_mixed(2)).unwrap();
        assert!(mixed.matrix().dist(&(v * &v.adjoint()).scale_real(0.25)) < 1e-12);
        let back = decode(&nc, &mixed, &tol()).unwrap();
        assert!(back.matrix().dist(&M::identity(2).scale_real(0.5)) < 1e-12);

        let e0 = [Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)];
        let pure = DensityMatrix::pure(&e0).unwrap();
        let enc = encode(&nc, &pure, &pure).unwrap();
        let (vals, _) = raw_eigh(enc.matrix()).unwrap();
        assert_eq!(vals.iter().filter(|x| x.abs() > 1e-10).count(), 1);
        // supported on the component's range
        let central = &s.components[nc.component_index].class.central_projection;
        assert!((&(central.matrix() * enc.matrix()) * central.matrix()).dist(enc.matrix()) < 1e-10);

        let mut rng = tol().rng(5);
        let a = DensityMatrix::random(2, &mut rng);
        let sigma = DensityMatrix::random(2, &mut rng);
        let enc = encode(&nc, &a, &sigma).unwrap();
        assert!(trace_distance(&decode(&nc, &enc, &tol()).unwrap(), &sigma).unwrap() < 1e-10);
        let after = DensityMatrix::new(ch.apply(enc.matrix()).unwrap(), &tol()).unwrap();
        assert!(trace_distance(&decode(&nc, &after, &tol()).unwrap(), &sigma).unwrap() < 1e-9);

        let leaky = DensityMatrix::maximally_mixed(8);
        assert!(matches!(decode(&nc, &leaky, &tol()), Err(Error::SupportLeakage { .. })));
        assert!(encode(&nc, &DensityMatrix::maximally_mixed(3), &sigma).is_err());
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::new(M::real_diag(&[0.5, 0.5]), &tol()).is_ok());
        assert!(DensityMatrix::new(M::real_diag(&[1.5, -0.5]), &tol()).is_err());
        assert!(DensityMatrix::new(M::real_diag(&[0.5, 0.4]), &tol()).is_err());
        assert!(DensityMatrix::new(M::from_real_rows(&[[0.5, 1.0], [0.0, 0.5]]), &tol()).is_err());
    }

    #[test]
    fn verify_examples() {
        let ch = collective::<f64>(3).unwrap();
        let s = analyze(&ch, &tol()).unwrap();
        let nc = noiseless_components(&s).into_iter().find(|c| c.is_usable()).unwrap();
        let report = verify_noiseless(&ch, &nc, 50, 5, &tol()).unwrap();
        assert!(report.passed && report.max_trace_distance <= 1e-9, "{report:?}");

        let id = KrausChannel::new(vec![M::identity(4)], &tol()).unwrap();
        let s_id = analyze(&id, &tol()).unwrap();
        for nc in noiseless_components(&s_id) {
            assert!(verify_noiseless(&id, &nc, 5, 2, &tol()).unwrap().max_trace_distance < 1e-12);
        }

        let mut bad = nc.clone();
        let mut rng = tol().rng(1);
        let w: M = haar_unitary(8, &mut rng);
        bad.isometry = w.columns(0, 4);
        let report = verify_noiseless(&ch, &bad, 20, 5, &tol()).unwrap();
        assert!(!report.passed && report.max_trace_distance > 0.01);
    }

    #[test]
    fn verify_structure_examples() {
        let ch = collective::<f64>(3).unwrap();
        let s = analyze(&ch, &tol()).unwrap();
        let diags = verify_structure(&ch, &s, &tol());
        assert!(diags.iter().all(|d| d.pass), "{diags:?}");

        let pd = phase_damping(0.25).unwrap();
        let s_pd = analyze(&pd, &tol()).unwrap();
        let flip = KrausChannel::new(vec![pauli_x::<f64>()], &tol()).unwrap();
        let diags = verify_structure(&flip, &s_pd, &tol());
        assert!(diags.iter().any(|d| !d.pass));

        let scalar = collective::<f64>(1).unwrap();
        let s1 = analyze(&scalar, &tol()).unwrap();
        assert_eq!(s1.components.len(), 1);
        assert!(verify_structure(&scalar, &s1, &tol()).iter().all(|d| d.pass));
    }

    #[test]
    fn planted_examples() {
        let (ch, expected) = planted_channel::<f64>(&[(2, 2), (4, 1)], 3, 17).unwrap();
        assert_eq!(expected, vec![(4, 1), (2, 2)]);
        assert_eq!(analyze(&ch, &tol()).unwrap().pattern(), expected);

        let (ch, _) = planted_channel::<f64>(&[(1, 1)], 3, 1).unwrap();
        assert_eq!(ch.dim(), 1);
        assert_eq!(analyze(&ch, &tol()).unwrap().pattern(), vec![(1, 1)]);

        let (ch, _) = planted_channel::<f64>(&[(5, 1)], 3, 2).unwrap();
        assert_eq!(commutant_basis(ch.kraus(), &tol()).unwrap().len(), 1);

        assert!(planted_channel::<f64>(&[(2, 2)], 2, 0).is_err());
        assert!(planted_channel::<f64>(&[(0, 2)], 3, 0).is_err());
        assert!(planted_channel::<f64>(&[(9, 8)], 3, 0).is_err());
    }
}
