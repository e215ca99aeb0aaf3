use serde::{Deserialize, Serialize};

use crate::channel::KrausChannel;
use crate::commutant::{algebra_from_commutant, commutant_basis};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Real;
use crate::span::OperatorSpan;
use crate::structure::links::{detect_links, LinkMethod, LinkedClass};
use crate::structure::minimal::{minimal_family, MinimalFamily, MinimalStrategy};
use crate::structure::units::{matrix_units, MatrixUnitSystem};
use crate::tolerance::ToleranceConfig;

/// One summand `M_n ⊗ I_m` of the interaction algebra.
#[derive(Debug, Clone)]
pub struct WedderburnComponent<T: Real> {
    pub class: LinkedClass<T>,
    pub units: MatrixUnitSystem<T>,
}

impl<T: Real> WedderburnComponent<T> {
    /// `n`: size of the algebra block.
    pub fn n(&self) -> usize {
        self.class.block_rank
    }

    /// `m`: multiplicity, the size of the commutant block.
    pub fn m(&self) -> usize {
        self.class.multiplicity
    }

    /// Columns `E_i1 f_a` ordered copy-major (`i·n + a`), where `f_a` is the basis of
    /// the first member's range.
    pub fn copy_major_basis(&self, family: &MinimalFamily<T>) -> Matrix<T> {
        let f = family.projections[self.class.member_indices[0]].range();
        let blocks: Vec<Matrix<T>> = (0..self.m()).map(|i| self.units.get(i, 0) * f).collect();
        Matrix::hstack(&blocks.iter().collect::<Vec<_>>())
    }
}

#[derive(Debug, Clone)]
pub struct WedderburnStructure<T: Real> {
    pub dim: usize,
    /// Canonical order: descending `n`, then descending `m`, then smallest member index.
    pub components: Vec<WedderburnComponent<T>>,
    pub family: MinimalFamily<T>,
    pub commutant: OperatorSpan<T>,
    pub algebra: OperatorSpan<T>,
    /// Columns grouped per component, copy-major inside each component.
    pub structuring_unitary: Matrix<T>,
}

impl<T: Real> WedderburnStructure<T> {
    /// `(n_k, m_k)` in canonical order.
    pub fn pattern(&self) -> Vec<(usize, usize)> {
        self.components.iter().map(|c| (c.n(), c.m())).collect()
    }

    pub fn commutant_dim(&self) -> usize {
        self.commutant.len()
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra.len()
    }

    /// Column offset of component `k` inside the structuring unitary.
    pub fn offset(&self, k: usize) -> usize {
        self.components[..k].iter().map(|c| c.n() * c.m()).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureView {
    /// `⊕ M_n ⊗ I_m`
    Algebra,
    /// `⊕ I_n ⊗ M_m`
    Commutant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AnalyzeOptions {
    pub strategy: MinimalStrategy,
    pub link_method: LinkMethod,
}

/// Block diagonalizing unitary built from the components' transported bases.
pub fn structuring_unitary<T: Real>(
    components: &[WedderburnComponent<T>],
    family: &MinimalFamily<T>,
    tol: &ToleranceConfig<T>,
) -> Result<Matrix<T>> {
    let blocks: Vec<Matrix<T>> = components.iter().map(|c| c.copy_major_basis(family)).collect();
    let u = Matrix::hstack(&blocks.iter().collect::<Vec<_>>());
    if !u.is_square() {
        return Err(Error::Inconsistent {
            check: "structuring unitary",
            detail: format!("{} columns for dimension {}", u.ncols(), u.nrows()),
        });
    }
    let residual = (&u.adjoint() * &u).dist(&Matrix::identity(u.ncols()));
    if residual > tol.check_tol(u.nrows()) {
        return Err(Error::Inconsistent {
            check: "structuring unitary",
            detail: format!("‖U†U − I‖ = {:.3e}", residual.as_f64()),
        });
    }
    Ok(u)
}

pub fn analyze<T: Real>(ch: &KrausChannel<T>, tol: &ToleranceConfig<T>) -> Result<WedderburnStructure<T>> {
    analyze_with(ch, tol, AnalyzeOptions::default())
}

/// Commutant, minimal family, links, matrix units and structuring unitary.
pub fn analyze_with<T: Real>(
    ch: &KrausChannel<T>,
    tol: &ToleranceConfig<T>,
    opts: AnalyzeOptions,
) -> Result<WedderburnStructure<T>> {
    tol.validate()?;
    ch.require_unital()?;
    let dim = ch.dim();
    let commutant = commutant_basis(ch.kraus(), tol)?;
    let family = minimal_family(&commutant, tol, opts.strategy)?;
    let classes = detect_links(&family, &commutant, ch.kraus(), tol, opts.link_method)?;
    let mut components = Vec::with_capacity(classes.len());
    for class in classes {
        let units = matrix_units(&class, &family, &commutant, tol)?;
        components.push(WedderburnComponent { class, units });
    }
    components.sort_by(|a, b| {
        b.n()
            .cmp(&a.n())
            .then(b.m().cmp(&a.m()))
            .then(a.class.member_indices[0].cmp(&b.class.member_indices[0]))
    });
    let structuring_unitary = structuring_unitary(&components, &family, tol)?;
    let algebra = algebra_from_commutant(&commutant, tol)?;

    let sum_nm: usize = components.iter().map(|c| c.n() * c.m()).sum();
    let sum_m2: usize = components.iter().map(|c| c.m() * c.m()).sum();
    let sum_n2: usize = components.iter().map(|c| c.n() * c.n()).sum();
    for (check, lhs, rhs) in [
        ("Σ n·m = dim", sum_nm, dim),
        ("Σ m² = dim A′", sum_m2, commutant.len()),
        ("Σ n² = dim A", sum_n2, algebra.len()),
    ] {
        if lhs != rhs {
            return Err(Error::Inconsistent {
                check: "dimension identity",
                detail: format!("{check}: {lhs} ≠ {rhs}"),
            });
        }
    }
    Ok(WedderburnStructure {
        dim,
        components,
        family,
        commutant,
        algebra,
        structuring_unitary,
    })
}

fn render(n: usize, m: usize, view: StructureView) -> String {
    let (full, amp) = match view {
        StructureView::Algebra => (n, m),
        StructureView::Commutant => (m, n),
    };
    if full == 1 {
        format!("C·I{amp}")
    } else if amp == 1 {
        format!("M{full}")
    } else {
        match view {
            StructureView::Algebra => format!("(M{full}⊗I{amp})"),
            StructureView::Commutant => format!("(I{amp}⊗M{full})"),
        }
    }
}

/// Summands joined by `⊕` in ascending `(n, m)` order.
pub fn structure_string_for(pattern: &[(usize, usize)], view: StructureView) -> String {
    let mut sorted = pattern.to_vec();
    sorted.sort_unstable();
    sorted
        .iter()
        .map(|&(n, m)| render(n, m, view))
        .collect::<Vec<_>>()
        .join(" ⊕ ")
}

pub fn structure_string<T: Real>(structure: &WedderburnStructure<T>, view: StructureView) -> String {
    structure_string_for(&structure.pattern(), view)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        let three = [(4, 1), (2, 2)];
        assert_eq!(structure_string_for(&three, StructureView::Algebra), "(M2⊗I2) ⊕ M4");
        assert_eq!(structure_string_for(&three, StructureView::Commutant), "(I2⊗M2) ⊕ C·I4");
        let four = [(5, 1), (3, 3), (1, 2)];
        assert_eq!(structure_string_for(&four, StructureView::Commutant), "M2 ⊕ (I3⊗M3) ⊕ C·I5");
        assert_eq!(structure_string_for(&four, StructureView::Algebra), "C·I2 ⊕ (M3⊗I3) ⊕ M5");
        assert_eq!(structure_string_for(&[(8, 1)], StructureView::Commutant), "C·I8");
        assert_eq!(structure_string_for(&[(1, 1), (1, 1)], StructureView::Algebra), "C·I1 ⊕ C·I1");
    }
}
