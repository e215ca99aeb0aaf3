use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Numerical thresholds for every rank, clustering and zero decision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig<T> {
    /// Singular values `≤ eps_rank · σ_max` count as zero.
    pub eps_rank: T,
    /// Eigenvalues closer than `eps_cluster · max(1, ‖M‖)` are merged.
    pub eps_cluster: T,
    /// Matrix-norm zero test.
    pub eps_zero: T,
    /// Seed for every randomized step.
    pub seed: u64,
}

/// `1e-9`, `1e-8`, `1e-9` in double precision; `1e-3`, `1e-4`, `1e-4` in single precision.
impl<T: Real> Default for ToleranceConfig<T> {
    fn default() -> Self {
        if T::epsilon() > T::lit(1e-10) {
            return Self {
                eps_rank: T::lit(1e-3),
                eps_cluster: T::lit(1e-4),
                eps_zero: T::lit(1e-4),
                seed: 0,
            };
        }
        Self {
            eps_rank: T::lit(1e-9),
            eps_cluster: T::lit(1e-8),
            eps_zero: T::lit(1e-9),
            seed: 0,
        }
    }
}

impl<T: Real> ToleranceConfig<T> {
    pub fn new(eps_rank: T, eps_cluster: T, eps_zero: T, seed: u64) -> Result<Self> {
        let cfg = Self {
            eps_rank,
            eps_cluster,
            eps_zero,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eps_rank", self.eps_rank),
            ("eps_cluster", self.eps_cluster),
            ("eps_zero", self.eps_zero),
        ] {
            if !(v > T::zero() && v < T::one()) {
                return Err(Error::InvalidTolerance(format!("{name} = {v} not in (0, 1)")));
            }
        }
        Ok(())
    }

    /// Threshold for a Frobenius-norm residual of a `dim × dim` matrix.
    #[inline]
    pub fn zero_tol(&self, dim: usize) -> T {
        self.eps_zero * T::from_usize_lossy(dim.max(1))
    }

    /// Looser threshold for end-to-end checks that chain several decompositions.
    #[inline]
    pub fn check_tol(&self, dim: usize) -> T {
        T::lit(10.0) * self.zero_tol(dim)
    }

    /// Fresh generator for the configured seed; `stream` separates independent consumers.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}
