//! Quantum channels in Kraus form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{normal_eigenspaces, raw_eigh};
use crate::matrix::Matrix;
use crate::scalar::{Complex, Real};
use crate::tolerance::ToleranceConfig;

/// `Φ(T) = Σₖ Aₖ T Aₖ†`.
#[derive(Debug, Clone)]
pub struct KrausChannel<T: Real> {
    dim: usize,
    kraus: Vec<Matrix<T>>,
    trace_preserving: bool,
    unital: bool,
    tp_deviation: T,
    unital_deviation: T,
    name: Option<String>,
}

/// The six projection conditions. For a unital trace-preserving channel they coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionStatus {
    /// `Φ(P) = P`
    pub fixed: bool,
    /// `[Aₖ, P] = 0` for every `k`
    pub reducing: bool,
    /// `Aₖ P = P Aₖ P`
    pub invariant_forward: bool,
    /// `P Aₖ = P Aₖ P`
    pub invariant_adjoint: bool,
    /// `Φ(P) ≤ P`
    pub sub_fixed: bool,
    /// `Φ(P) ≥ P`
    pub super_fixed: bool,
}

impl ProjectionStatus {
    pub fn flags(&self) -> [bool; 6] {
        [
            self.fixed,
            self.reducing,
            self.invariant_forward,
            self.invariant_adjoint,
            self.sub_fixed,
            self.super_fixed,
        ]
    }

    pub fn all_agree(&self) -> bool {
        let f = self.flags();
        f.iter().all(|&x| x == f[0])
    }
}

fn sum_products<T: Real>(kraus: &[Matrix<T>], dim: usize, adjoint_first: bool) -> Matrix<T> {
    let mut acc = Matrix::zeros(dim, dim);
    for k in kraus {
        let p = if adjoint_first {
            &k.adjoint() * k
        } else {
            k * &k.adjoint()
        };
        acc += &p;
    }
    acc
}

impl<T: Real> KrausChannel<T> {
    /// Validates shapes and records trace preservation and unitality.
    ///
    /// Non-unital channels are accepted here; the structure pipeline rejects them.
    pub fn new(kraus: Vec<Matrix<T>>, tol: &ToleranceConfig<T>) -> Result<Self> {
        tol.validate()?;
        let first = kraus.first().ok_or(Error::EmptyInput("Kraus operator list"))?;
        let dim = first.ensure_square()?;
        if dim == 0 {
            return Err(Error::EmptyInput("zero-dimensional Kraus operator"));
        }
        for k in &kraus {
            k.ensure_square()?;
            if k.nrows() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: k.nrows(),
                });
            }
            if !k.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        let id = Matrix::identity(dim);
        let tp_deviation = sum_products(&kraus, dim, true).dist(&id);
        let unital_deviation = sum_products(&kraus, dim, false).dist(&id);
        let limit = tol.zero_tol(dim);
        Ok(Self {
            dim,
            kraus,
            trace_preserving: tp_deviation <= limit,
            unital: unital_deviation <= limit,
            tp_deviation,
            unital_deviation,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[Matrix<T>] {
        &self.kraus
    }

    pub fn is_trace_preserving(&self) -> bool {
        self.trace_preserving
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    /// `‖Σ Aₖ†Aₖ − I‖`.
    pub fn trace_preserving_deviation(&self) -> T {
        self.tp_deviation
    }

    /// `‖Σ AₖAₖ† − I‖`.
    pub fn unital_deviation(&self) -> T {
        self.unital_deviation
    }

    /// Errors unless the channel is trace preserving and unital.
    pub fn require_unital(&self) -> Result<()> {
        if !self.trace_preserving {
            return Err(Error::NotTracePreserving {
                deviation: self.tp_deviation.as_f64(),
            });
        }
        if !self.unital {
            return Err(Error::NotUnital {
                deviation: self.unital_deviation.as_f64(),
            });
        }
        Ok(())
    }

    fn check_dim(&self, m: &Matrix<T>) -> Result<()> {
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: if m.nrows() != self.dim { m.nrows() } else { m.ncols() },
            });
        }
        Ok(())
    }

    pub fn apply(&self, t: &Matrix<T>) -> Result<Matrix<T>> {
        self.check_dim(t)?;
        Ok(self.apply_unchecked(t))
    }

    pub(crate) fn apply_unchecked(&self, t: &Matrix<T>) -> Matrix<T> {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for a in &self.kraus {
            out += &(&(a * t) * &a.adjoint());
        }
        out
    }

    /// `S = Σ conj(Aₖ) ⊗ Aₖ`, so that `S vec(T) = vec(Φ(T))`.
    pub fn superoperator(&self) -> Matrix<T> {
        let d2 = self.dim * self.dim;
        let mut s = Matrix::zeros(d2, d2);
        for a in &self.kraus {
            s += &a.conj().kron(a);
        }
        s
    }

    /// Channel with Kraus operators `Aₖ†`; the two flags swap.
    pub fn dual(&self) -> Self {
        Self {
            dim: self.dim,
            kraus: self.kraus.iter().map(Matrix::adjoint).collect(),
            trace_preserving: self.unital,
            unital: self.trace_preserving,
            tp_deviation: self.unital_deviation,
            unital_deviation: self.tp_deviation,
            name: self.name.as_ref().map(|n| format!("dual({n})")),
        }
    }

    /// Evaluates each projection condition from its defining identity.
    ///
    /// For unital trace-preserving channels a disagreement between the flags is
    /// reported as [`Error::Inconsistent`].
    pub fn projection_status(&self, p: &Matrix<T>, tol: &ToleranceConfig<T>) -> Result<ProjectionStatus> {
        self.check_dim(p)?;
        let limit = tol.check_tol(self.dim);
        let residual = p.hermitian_residual().max((p * p).dist(p));
        if residual > limit {
            return Err(Error::NotProjection {
                residual: residual.as_f64(),
            });
        }
        let scale = self.kraus.iter().map(Matrix::norm).fold(T::one(), T::max);
        let op_limit = limit * scale;
        let phi = self.apply_unchecked(p);
        let all = |f: &dyn Fn(&Matrix<T>) -> T| self.kraus.iter().all(|a| f(a) <= op_limit);
        let min_eig = |m: &Matrix<T>| -> Result<T> {
            let (values, _) = raw_eigh(m)?;
            Ok(values.first().copied().unwrap_or(T::zero()))
        };
        let status = ProjectionStatus {
            fixed: phi.dist(p) <= limit,
            reducing: all(&|a| a.commutator(p).norm()),
            invariant_forward: all(&|a| (a * p).dist(&(&(p * a) * p))),
            invariant_adjoint: all(&|a| (p * a).dist(&(&(p * a) * p))),
            sub_fixed: min_eig(&(p - &phi))? >= -limit,
            super_fixed: min_eig(&(&phi - p))? >= -limit,
        };
        if self.unital && self.trace_preserving && !status.all_agree() {
            return Err(Error::Inconsistent {
                check: "projection conditions",
                detail: format!("{status:?}"),
            });
        }
        Ok(status)
    }

    pub fn cast<U: Real>(&self, tol: &ToleranceConfig<U>) -> Result<KrausChannel<U>> {
        let ch = KrausChannel::new(self.kraus.iter().map(Matrix::cast).collect(), tol)?;
        Ok(match &self.name {
            Some(n) => ch.with_name(n.clone()),
            None => ch,
        })
    }
}

/// Builds the channel `{f(Tₖ)/√n}` with `f(a + ib) = exp(i(a + √2·b))`.
///
/// On Hermitian operators `f(T) = exp(iT)`. `f` must be injective on each
/// operator's spectrum so that `{f(Tₖ)}′ = {Tₖ}′`; eigenvalue clusters whose phases
/// agree modulo 2π are rejected.
pub fn unitize<T: Real>(ops: &[Matrix<T>], tol: &ToleranceConfig<T>) -> Result<KrausChannel<T>> {
    tol.validate()?;
    let first = ops.first().ok_or(Error::EmptyInput("operator list"))?;
    let dim = first.ensure_square()?;
    let inv_sqrt_n = T::one() / T::from_usize_lossy(ops.len()).sqrt();
    let two_pi = T::lit(std::f64::consts::TAU);
    let sqrt2 = T::lit(std::f64::consts::SQRT_2);
    let mut kraus = Vec::with_capacity(ops.len());
    for (op_index, op) in ops.iter().enumerate() {
        if op.nrows() != dim || op.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: op.nrows(),
            });
        }
        let spaces = normal_eigenspaces(op, tol)?;
        let phases: Vec<T> = spaces.iter().map(|(z, _)| z.re + sqrt2 * z.im).collect();
        let scale = phases.iter().fold(T::one(), |acc, p| acc.max(p.abs()));
        for i in 0..phases.len() {
            for j in i + 1..phases.len() {
                let diff = (phases[i] - phases[j]) / two_pi;
                if (diff - diff.round()).abs() * two_pi <= tol.eps_cluster * scale {
                    return Err(Error::InjectivityViolation {
                        op_index,
                        first: format!("{}", spaces[i].0),
                        second: format!("{}", spaces[j].0),
                    });
                }
            }
        }
        let mut u = Matrix::zeros(dim, dim);
        for ((_, basis), phase) in spaces.iter().zip(&phases) {
            let f = Complex::new(phase.cos(), phase.sin()) * inv_sqrt_n;
            u += &(basis * &basis.adjoint()).scale(f);
        }
        kraus.push(u);
    }
    KrausChannel::new(kraus, tol)
}

/// On-disk channel description; complex entries are `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub dim: usize,
    pub kraus: Vec<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl ChannelSpec {
    pub fn from_channel<T: Real>(ch: &KrausChannel<T>) -> Self {
        let kraus = ch
            .kraus()
            .iter()
            .map(|k| {
                k.rows()
                    .into_iter()
                    .map(|row| row.into_iter().map(|z| [z.re.as_f64(), z.im.as_f64()]).collect())
                    .collect()
            })
            .collect();
        Self {
            dim: ch.dim(),
            kraus,
            name: ch.name().map(str::to_owned),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("channel spec serializes")
    }

    /// Checks every matrix is `dim × dim` and builds the channel.
    pub fn to_channel<T: Real>(&self, tol: &ToleranceConfig<T>) -> Result<KrausChannel<T>> {
        if self.dim == 0 {
            return Err(Error::Spec("dim must be positive".into()));
        }
        if self.kraus.is_empty() {
            return Err(Error::Spec("kraus list is empty".into()));
        }
        let mut mats = Vec::with_capacity(self.kraus.len());
        for (k, m) in self.kraus.iter().enumerate() {
            let cols = m.first().map_or(0, Vec::len);
            if m.len() != self.dim || m.iter().any(|r| r.len() != self.dim) {
                return Err(Error::Spec(format!(
                    "Kraus operator {k} has shape {}x{cols}, expected {d}x{d}",
                    m.len(),
                    d = self.dim
                )));
            }
            let rows: Vec<Vec<Complex<T>>> = m
                .iter()
                .map(|r| r.iter().map(|&[a, b]| Complex::new(T::lit(a), T::lit(b))).collect())
                .collect();
            mats.push(Matrix::from_rows(&rows)?);
        }
        let ch = KrausChannel::new(mats, tol)?;
        Ok(match &self.name {
            Some(n) => ch.with_name(n.clone()),
            None => ch,
        })
    }
}
