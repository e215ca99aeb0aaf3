use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{vec_norm, Matrix};
use crate::scalar::{Complex, Real};
use crate::span::OperatorSpan;
use crate::structure::minimal::MinimalFamily;
use crate::structure::projection::Projection;
use crate::tolerance::ToleranceConfig;

/// Largest equal-rank group the subset enumeration will search.
pub const MAX_ENUMERATION_MEMBERS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkMethod {
    /// `Pᵢ ~ Pⱼ` iff some commutant element has a nonzero corner `PᵢBPⱼ`.
    #[default]
    Corner,
    /// Rank-one members only: equal joint-eigenvalue tuples.
    Signature,
    /// Minimal subsets whose summed projection commutes with the commutant.
    SubsetEnumeration,
}

/// Members of the minimal family carrying equivalent copies of one irreducible block.
#[derive(Debug, Clone)]
pub struct LinkedClass<T: Real> {
    /// Ascending indices into the family.
    pub member_indices: Vec<usize>,
    /// Common rank `n` of the members.
    pub block_rank: usize,
    /// Number of members `m`.
    pub multiplicity: usize,
    pub central_projection: Projection<T>,
}

impl<T: Real> LinkedClass<T> {
    fn from_members(family: &MinimalFamily<T>, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        let block_rank = family.projections[members[0]].rank();
        let ranges: Vec<&Matrix<T>> = members.iter().map(|&i| family.projections[i].range()).collect();
        let central = Projection::from_range(Matrix::hstack(&ranges));
        Self {
            multiplicity: members.len(),
            member_indices: members,
            block_rank,
            central_projection: central,
        }
    }
}

/// `(λₖ)` with `Aₖξ = λₖξ` for every `k`, or `None` if `ξ` is not a joint eigenvector.
pub fn joint_eigenvalue_signature<T: Real>(
    kraus: &[Matrix<T>],
    xi: &[Complex<T>],
    tol: &ToleranceConfig<T>,
) -> Result<Option<Vec<Complex<T>>>> {
    let norm = vec_norm(xi);
    if (norm - T::one()).abs() > tol.check_tol(xi.len()) {
        return Err(Error::InvalidParameter(format!("ξ must be a unit vector, ‖ξ‖ = {norm}")));
    }
    let limit = tol.check_tol(xi.len());
    let mut out = Vec::with_capacity(kraus.len());
    for a in kraus {
        if a.ncols() != xi.len() {
            return Err(Error::DimensionMismatch {
                expected: a.ncols(),
                found: xi.len(),
            });
        }
        let axi = a.mul_vec(xi);
        let lambda = xi.iter().zip(&axi).fold(Complex::new(T::zero(), T::zero()), |acc, (x, y)| {
            acc + x.conj() * y
        });
        let resid: Vec<Complex<T>> = axi.iter().zip(xi).map(|(y, x)| y - lambda * x).collect();
        if vec_norm(&resid) > limit * a.norm().max(T::one()) {
            return Ok(None);
        }
        out.push(lambda);
    }
    Ok(Some(out))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, i: usize) -> usize {
        let p = self.parent[i];
        if p == i {
            return i;
        }
        let root = self.find(p);
        self.parent[i] = root;
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }

    fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut root_slot = vec![usize::MAX; n];
        for i in 0..n {
            let r = self.find(i);
            if root_slot[r] == usize::MAX {
                root_slot[r] = out.len();
                out.push(Vec::new());
            }
            out[root_slot[r]].push(i);
        }
        out
    }
}

/// `√(Σ_B ‖Wᵢ† B Wⱼ‖²)` over the commutant basis: the norm of the corner space.
pub(crate) fn corner_weight<T: Real>(commutant: &OperatorSpan<T>, wi: &Matrix<T>, wj: &Matrix<T>) -> T {
    let wia = wi.adjoint();
    commutant
        .basis()
        .iter()
        .map(|b| {
            let n = (&(&wia * b) * wj).norm();
            n * n
        })
        .fold(T::zero(), |a, b| a + b)
        .sqrt()
}

fn corner_partition<T: Real>(family: &MinimalFamily<T>, commutant: &OperatorSpan<T>, tol: &ToleranceConfig<T>) -> Vec<Vec<usize>> {
    let n = family.len();
    let limit = tol.check_tol(commutant.dim());
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let (pi, pj) = (&family.projections[i], &family.projections[j]);
            if pi.rank() == pj.rank() && corner_weight(commutant, pi.range(), pj.range()) > limit {
                uf.union(i, j);
            }
        }
    }
    uf.groups()
}

fn signature_partition<T: Real>(
    family: &MinimalFamily<T>,
    kraus: &[Matrix<T>],
    tol: &ToleranceConfig<T>,
) -> Result<Vec<Vec<usize>>> {
    if let Some(p) = family.projections.iter().find(|p| p.rank() != 1) {
        return Err(Error::SignatureRequiresRankOne { rank: p.rank() });
    }
    let mut sigs = Vec::with_capacity(family.len());
    for (i, p) in family.projections.iter().enumerate() {
        let xi = p.range().column(0);
        let sig = joint_eigenvalue_signature(kraus, &xi, tol)?.ok_or_else(|| Error::Inconsistent {
            check: "joint eigenvector",
            detail: format!("rank-one minimal projection {i} is not a joint eigenvector"),
        })?;
        sigs.push(sig);
    }
    let mut uf = UnionFind::new(family.len());
    for i in 0..sigs.len() {
        for j in i + 1..sigs.len() {
            let close = sigs[i].iter().zip(&sigs[j]).all(|(a, b)| {
                (a - b).norm() <= tol.eps_cluster * a.norm().max(b.norm()).max(T::one())
            });
            if close {
                uf.union(i, j);
            }
        }
    }
    Ok(uf.groups())
}

fn commutes_with_span<T: Real>(p: &Matrix<T>, commutant: &OperatorSpan<T>, limit: T) -> bool {
    commutant.basis().iter().all(|b| p.commutator(b).norm() <= limit)
}

fn subset_partition<T: Real>(
    family: &MinimalFamily<T>,
    commutant: &OperatorSpan<T>,
    tol: &ToleranceConfig<T>,
) -> Result<Vec<Vec<usize>>> {
    let limit = tol.check_tol(commutant.dim());
    let mut ranks: Vec<usize> = family.ranks();
    ranks.sort_unstable();
    ranks.dedup();
    let mut classes = Vec::new();
    for rank in ranks {
        let mut remaining: Vec<usize> = (0..family.len())
            .filter(|&i| family.projections[i].rank() == rank)
            .collect();
        if remaining.len() > MAX_ENUMERATION_MEMBERS {
            return Err(Error::EnumerationTooLarge {
                members: remaining.len(),
            });
        }
        while let Some(&head) = remaining.first() {
            let others = &remaining[1..];
            let mut found = None;
            // smallest commuting subset containing `head`, by size then lexicographically
            'sizes: for size in 0..=others.len() {
                for combo in combinations(others.len(), size) {
                    let mut members = vec![head];
                    members.extend(combo.iter().map(|&k| others[k]));
                    let mut p = Matrix::zeros(commutant.dim(), commutant.dim());
                    for &m in &members {
                        p += family.projections[m].matrix();
                    }
                    if commutes_with_span(&p, commutant, limit) {
                        found = Some(members);
                        break 'sizes;
                    }
                }
            }
            let members = found.ok_or_else(|| Error::Inconsistent {
                check: "subset enumeration",
                detail: format!("no commuting subset contains member {head}"),
            })?;
            remaining.retain(|i| !members.contains(i));
            classes.push(members);
        }
    }
    Ok(classes)
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Partitions the family into linked classes, ordered by smallest member index.
pub fn detect_links<T: Real>(
    family: &MinimalFamily<T>,
    commutant: &OperatorSpan<T>,
    kraus: &[Matrix<T>],
    tol: &ToleranceConfig<T>,
    method: LinkMethod,
) -> Result<Vec<LinkedClass<T>>> {
    let mut groups = match method {
        LinkMethod::Corner => corner_partition(family, commutant, tol),
        LinkMethod::Signature => signature_partition(family, kraus, tol)?,
        LinkMethod::SubsetEnumeration => subset_partition(family, commutant, tol)?,
    };
    for g in &mut groups {
        g.sort_unstable();
    }
    groups.sort_by_key(|g| g[0]);
    Ok(groups
        .into_iter()
        .map(|g| LinkedClass::from_members(family, g))
        .collect())
}
