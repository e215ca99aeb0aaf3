//! Minimal reducing projections, links, matrix units and the Wedderburn decomposition.

mod links;
mod minimal;
mod projection;
mod units;
mod wedderburn;

pub use links::{detect_links, joint_eigenvalue_signature, LinkMethod, LinkedClass, MAX_ENUMERATION_MEMBERS};
pub use minimal::{compress_span, is_minimal, minimal_family, MinimalFamily, MinimalStrategy};
pub use projection::Projection;
pub use units::{matrix_units, MatrixUnitSystem};
pub use wedderburn::{
    analyze, analyze_with, structure_string, structure_string_for, structuring_unitary, AnalyzeOptions,
    StructureView, WedderburnComponent, WedderburnStructure,
};

/// Largest entry outside the pattern's diagonal blocks, and largest difference between
/// repeated blocks, of `U† A U`.
pub fn block_residuals<T: crate::scalar::Real>(
    structure: &WedderburnStructure<T>,
    a: &crate::matrix::Matrix<T>,
) -> (T, T) {
    let u = &structure.structuring_unitary;
    let c = &(&u.adjoint() * a) * u;
    let dim = structure.dim;
    // block id of each column, and position inside the (component, copy) block
    let mut block_of = vec![0usize; dim];
    let mut id = 0;
    let mut offset = 0;
    for comp in &structure.components {
        for _ in 0..comp.m() {
            for a in 0..comp.n() {
                block_of[offset + a] = id;
            }
            offset += comp.n();
            id += 1;
        }
    }
    let mut off = T::zero();
    for i in 0..dim {
        for j in 0..dim {
            if block_of[i] != block_of[j] {
                off = off.max(c.get(i, j).norm());
            }
        }
    }
    let mut spread = T::zero();
    for (k, comp) in structure.components.iter().enumerate() {
        let base = structure.offset(k);
        let n = comp.n();
        for copy in 1..comp.m() {
            for a in 0..n {
                for b in 0..n {
                    let first = c.get(base + a, base + b);
                    let other = c.get(base + copy * n + a, base + copy * n + b);
                    spread = spread.max((first - other).norm());
                }
            }
        }
    }
    (off, spread)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{collective, phase_damping, two_qubit_dephasing, zz_damping};
    use crate::commutant::commutant_basis;
    use crate::error::Error;
    use crate::matrix::Matrix;
    use crate::scalar::Complex;
    use crate::span::OperatorSpan;
    use crate::tolerance::ToleranceConfig;

    type M = Matrix<f64>;

    fn tol() -> ToleranceConfig<f64> {
        ToleranceConfig::default()
    }

    fn proj(diag: &[f64]) -> Projection<f64> {
        Projection::new(M::real_diag(diag), &tol()).unwrap()
    }

    fn ex2_commutant() -> (crate::channel::KrausChannel<f64>, OperatorSpan<f64>) {
        let ch = zz_damping(0.25).unwrap();
        let c = commutant_basis(ch.kraus(), &tol()).unwrap();
        (ch, c)
    }

    #[test]
    fn compress_examples() {
        let (_, c) = ex2_commutant();
        let p1 = proj(&[1.0, 1.0, 0.0, 0.0]);
        assert_eq!(compress_span(&c, &p1, &tol()).unwrap().len(), 2);
        let id = proj(&[1.0; 4]);
        assert!(compress_span(&c, &id, &tol()).unwrap().distance(&c) < 1e-12);
        let scalars = crate::linalg::orthonormalize_span(&[M::identity(4)], &tol()).unwrap();
        assert_eq!(compress_span(&scalars, &p1, &tol()).unwrap().len(), 1);
        let plus = Projection::new(M::from_real_rows(&[[0.5, 0.5], [0.5, 0.5]]), &tol()).unwrap();
        let z = commutant_basis(&[crate::builders::pauli_z::<f64>()], &tol()).unwrap();
        assert!(matches!(compress_span(&z, &plus, &tol()), Err(Error::NotCompatible { .. })));
    }

    #[test]
    fn minimality_examples() {
        let pd = phase_damping(0.25).unwrap();
        let c1 = commutant_basis(pd.kraus(), &tol()).unwrap();
        assert!(is_minimal(&proj(&[1.0, 0.0]), &c1, &tol()).unwrap());
        let (_, c2) = ex2_commutant();
        assert!(!is_minimal(&proj(&[1.0, 1.0, 0.0, 0.0]), &c2, &tol()).unwrap());
        let scalars = crate::linalg::orthonormalize_span(&[M::identity(3)], &tol()).unwrap();
        assert!(is_minimal(&proj(&[1.0, 1.0, 1.0]), &scalars, &tol()).unwrap());
        let plus = Projection::new(M::from_real_rows(&[[0.5, 0.5], [0.5, 0.5]]), &tol()).unwrap();
        assert!(matches!(is_minimal(&plus, &c1, &tol()), Err(Error::NotInCommutant { .. })));
    }

    #[test]
    fn minimal_family_examples() {
        for strategy in [MinimalStrategy::RandomizedGeneric, MinimalStrategy::PaperRecursive] {
            let (_, c2) = ex2_commutant();
            let fam = minimal_family(&c2, &tol(), strategy).unwrap();
            assert_eq!(fam.ranks(), vec![1, 1, 1, 1]);
            let (sum, overlap) = fam.residuals();
            assert!(sum < 1e-12 && overlap < 1e-12);

            let c3 = commutant_basis(collective::<f64>(3).unwrap().kraus(), &tol()).unwrap();
            let mut ranks = minimal_family(&c3, &tol(), strategy).unwrap().ranks();
            ranks.sort_unstable();
            assert_eq!(ranks, vec![2, 2, 4]);

            let c4 = commutant_basis(collective::<f64>(4).unwrap().kraus(), &tol()).unwrap();
            let fam4 = minimal_family(&c4, &tol(), strategy).unwrap();
            let mut ranks = fam4.ranks();
            ranks.sort_unstable();
            assert_eq!(ranks, vec![1, 1, 3, 3, 3, 5]);
            for p in &fam4.projections {
                assert!(is_minimal(p, &c4, &tol()).unwrap());
            }
        }
    }

    #[test]
    fn signature_examples() {
        let (ch, _) = ex2_commutant();
        let p: f64 = 0.25;
        let e = |k: usize| -> Vec<Complex<f64>> {
            (0..4).map(|i| Complex::new(if i == k { 1.0 } else { 0.0 }, 0.0)).collect()
        };
        let s00 = joint_eigenvalue_signature(ch.kraus(), &e(0), &tol()).unwrap().unwrap();
        assert!((s00[0].re - (1.0 - p).sqrt()).abs() < 1e-14 && (s00[1].re - p.sqrt()).abs() < 1e-14);
        let s01 = joint_eigenvalue_signature(ch.kraus(), &e(1), &tol()).unwrap().unwrap();
        assert!((s01[1].re + p.sqrt()).abs() < 1e-14);

        let ex3 = two_qubit_dephasing(0.25).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mixed: Vec<Complex<f64>> = [h, h, 0.0, 0.0].iter().map(|&x| Complex::new(x, 0.0)).collect();
        assert!(joint_eigenvalue_signature(ex3.kraus(), &mixed, &tol()).unwrap().is_none());
    }

    fn partition(ch: &crate::channel::KrausChannel<f64>, method: LinkMethod) -> Vec<Vec<usize>> {
        let c = commutant_basis(ch.kraus(), &tol()).unwrap();
        let fam = minimal_family(&c, &tol(), MinimalStrategy::RandomizedGeneric).unwrap();
        detect_links(&fam, &c, ch.kraus(), &tol(), method)
            .unwrap()
            .into_iter()
            .map(|cls| cls.member_indices)
            .collect()
    }

    #[test]
    fn link_examples() {
        let (ch, c) = ex2_commutant();
        let fam = minimal_family(&c, &tol(), MinimalStrategy::RandomizedGeneric).unwrap();
        let classes = detect_links(&fam, &c, ch.kraus(), &tol(), LinkMethod::Corner).unwrap();
        assert_eq!(classes.len(), 2);
        let p_a = proj(&[1.0, 0.0, 0.0, 1.0]);
        let p_b = proj(&[0.0, 1.0, 1.0, 0.0]);
        for cls in &classes {
            assert_eq!((cls.block_rank, cls.multiplicity), (1, 2));
            let d = cls.central_projection.distance(&p_a).min(cls.central_projection.distance(&p_b));
            assert!(d < 1e-8);
        }

        let ex3 = two_qubit_dephasing(0.25).unwrap();
        for method in [LinkMethod::Corner, LinkMethod::Signature, LinkMethod::SubsetEnumeration] {
            assert_eq!(partition(&ex3, method).len(), 4);
            assert_eq!(partition(&ch, method).len(), 2);
        }

        let c3 = collective::<f64>(3).unwrap();
        let p = partition(&c3, LinkMethod::Corner);
        assert_eq!(p, partition(&c3, LinkMethod::SubsetEnumeration));
        let mut sizes: Vec<usize> = p.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2]);
        let err = detect_links(
            &minimal_family(&commutant_basis(c3.kraus(), &tol()).unwrap(), &tol(), MinimalStrategy::RandomizedGeneric).unwrap(),
            &commutant_basis(c3.kraus(), &tol()).unwrap(),
            c3.kraus(),
            &tol(),
            LinkMethod::Signature,
        )
        .unwrap_err();
        assert!(matches!(err, Error::SignatureRequiresRankOne { .. }));
    }

    #[test]
    fn matrix_unit_examples() {
        let (ch, c) = ex2_commutant();
        let s = analyze(&ch, &tol()).unwrap();
        for comp in &s.components {
            let central = comp.class.central_projection.matrix();
            assert!(comp.units.relation_residual(central) < 1e-10);
            assert!(comp.units.commutant_residual(&c) < 1e-10);
        }

        // with the computational-basis family the unit E₁₂ for {P₀₀, P₁₁} is |00⟩⟨11| up to phase
        let basis = |k: usize| {
            let mut d = [0.0; 4];
            d[k] = 1.0;
            proj(&d)
        };
        let fam = MinimalFamily {
            projections: (0..4).map(basis).collect(),
        };
        let classes = detect_links(&fam, &c, ch.kraus(), &tol(), LinkMethod::Corner).unwrap();
        assert_eq!(classes[0].member_indices, vec![0, 3]);
        let units = matrix_units(&classes[0], &fam, &c, &tol()).unwrap();
        let e12 = units.get(0, 1);
        assert!((e12.get(0, 3).norm() - 1.0).abs() < 1e-12);
        assert!((e12.norm() - 1.0).abs() < 1e-12);
        // gauge: the surviving entry is real positive
        assert!((e12.get(0, 3) - Complex::new(1.0, 0.0)).norm() < 1e-12);

        let s1 = analyze(&phase_damping(0.25).unwrap(), &tol()).unwrap();
        for comp in &s1.components {
            assert_eq!(comp.units.size(), 1);
            assert!(comp.units.get(0, 0).dist(comp.class.central_projection.matrix()) < 1e-12);
        }

        let s3 = analyze(&collective::<f64>(3).unwrap(), &tol()).unwrap();
        for comp in &s3.components {
            assert!(comp.units.relation_residual(comp.class.central_projection.matrix()) < 1e-9);
            assert!(comp.units.commutant_residual(&s3.commutant) < 1e-9);
        }
    }

    #[test]
    fn structuring_unitary_examples() {
        let s = analyze(&collective::<f64>(3).unwrap(), &tol()).unwrap();
        let u = &s.structuring_unitary;
        assert!((&u.adjoint() * u).dist(&M::identity(8)) < 1e-10);
        let ch = collective::<f64>(3).unwrap();
        for k in ch.kraus() {
            let (off, spread) = block_residuals(&s, k);
            assert!(off < 1e-9 && spread < 1e-9, "{off} {spread}");
        }
        let (ch2, _) = ex2_commutant();
        let s2 = analyze(&ch2, &tol()).unwrap();
        for k in ch2.kraus() {
            let (off, spread) = block_residuals(&s2, k);
            assert!(off < 1e-9 && spread < 1e-9);
        }
    }

    #[test]
    fn irreducible_channel_gets_identity_like_unitary() {
        let mut rng = tol().rng(99);
        let ks = crate::random::random_mixed_unitary::<f64, _>(3, 3, &mut rng);
        let ch = crate::channel::KrausChannel::new(ks, &tol()).unwrap();
        let s = analyze(&ch, &tol()).map_err(|e| e.to_string()).unwrap();
        assert_eq!(s.pattern(), vec![(3, 1)]);
        assert_eq!(structure_string(&s, StructureView::Commutant), "C·I3");
        assert!(s.structuring_unitary.dist(&M::identity(3)) < 1e-12);
    }

    #[test]
    fn analyze_examples() {
        let s1 = analyze(&phase_damping(0.25).unwrap(), &tol()).unwrap();
        assert_eq!(s1.pattern(), vec![(1, 1), (1, 1)]);
        let s3 = analyze(&collective::<f64>(3).unwrap(), &tol()).unwrap();
        assert_eq!(s3.pattern(), vec![(4, 1), (2, 2)]);
        assert_eq!(structure_string(&s3, StructureView::Algebra), "(M2⊗I2) ⊕ M4");
        let s4 = analyze(&collective::<f64>(4).unwrap(), &tol()).unwrap();
        assert_eq!(s4.pattern(), vec![(5, 1), (3, 3), (1, 2)]);
        assert_eq!(structure_string(&s4, StructureView::Commutant), "M2 ⊕ (I3⊗M3) ⊕ C·I5");

        let ad = crate::channel::KrausChannel::new(
            vec![M::real_diag(&[1.0, 0.0]), M::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]])],
            &tol(),
        )
        .unwrap();
        assert!(matches!(analyze(&ad, &tol()), Err(Error::NotUnital { .. })));
    }
}
