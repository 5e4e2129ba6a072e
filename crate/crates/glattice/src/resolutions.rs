//! Coflasque resolutions `0 → F → P → M → 0` of G-lattices: the generic
//! builder (one permutation block `Z[G/H]` per fixed-point basis vector of
//! every subgroup), pullbacks along surjections with split kernel, and the
//! necessary-condition comparator for pairs of resolutions of the same
//! lattice. Full G-lattice isomorphism testing is out of scope; the
//! comparator only reports the computable shadows of the uniqueness
//! statement.

use crate::cohomology::{cohomology, is_coflasque, AbGroupClass, Verdict};
use crate::groups::Subgroup;
use crate::lattices::{
    cosets, direct_sum, exactness_check, fixed_sublattice, kernel_lattice, permutation_lattice,
    GLattice, LatticeMap,
};
use crate::matrix::{kernel_basis, same_column_span, solve, IntMat};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ResolutionError {
    #[error("the constructed map P → M is not surjective")]
    SurjectivityFailure,
    #[error("kernel is not coflasque: H¹({subgroup}) = {class}; this signals a bug")]
    CoflasquenessFailure {
        subgroup: String,
        class: AbGroupClass,
    },
    #[error("the map to pull back along is not surjective")]
    NotSurjective,
    #[error("declared kernel inclusion does not present the kernel of the map")]
    KernelMismatch,
    #[error("declared kernel is not the stated permutation lattice")]
    KernelNotPermutation,
    #[error("the provided lift does not lift the resolution map")]
    LiftMismatch,
    #[error("the stated lift vector does not satisfy the membership equations")]
    LiftNotLanding,
    #[error("middle term does not match its declared permutation blocks")]
    BlocksMismatch,
    #[error("the two junctions are not exact")]
    NotExact,
    #[error("resolutions have different targets")]
    TargetMismatch,
    #[error(transparent)]
    Lattice(#[from] crate::lattices::LatticeError),
}

/// An exact sequence `0 → F → P → M → 0` with `P` a permutation lattice
/// (held as subgroup blocks with multiplicities) and `F` coflasque. All of
/// that is re-verified at assembly; constructions never trust the theorems
/// they implement.
#[derive(Debug, Clone)]
pub struct CoflasqueResolution {
    target: Arc<GLattice>,
    p: Arc<GLattice>,
    f: Arc<GLattice>,
    inj: LatticeMap,
    surj: LatticeMap,
    blocks: Vec<(Subgroup, usize)>,
}

impl CoflasqueResolution {
    /// Validates and assembles a resolution from its pieces.
    pub fn assemble(
        target: Arc<GLattice>,
        p: Arc<GLattice>,
        f: Arc<GLattice>,
        inj: LatticeMap,
        surj: LatticeMap,
        blocks: Vec<(Subgroup, usize)>,
    ) -> Result<Self, ResolutionError> {
        if *p != permutation_sum(target.group(), &blocks) {
            return Err(ResolutionError::BlocksMismatch);
        }
        if !surj.is_surjective() {
            return Err(ResolutionError::SurjectivityFailure);
        }
        if !inj.is_injective() || !exactness_check(&inj, &surj)? {
            return Err(ResolutionError::NotExact);
        }
        if let Verdict::Fails { subgroup, class } = is_coflasque(&f) {
            return Err(ResolutionError::CoflasquenessFailure {
                subgroup: subgroup.describe(),
                class,
            });
        }
        Ok(CoflasqueResolution {
            target,
            p,
            f,
            inj,
            surj,
            blocks,
        })
    }

    pub fn target(&self) -> &Arc<GLattice> {
        &self.target
    }

    pub fn permutation_term(&self) -> &Arc<GLattice> {
        &self.p
    }

    pub fn kernel_term(&self) -> &Arc<GLattice> {
        &self.f
    }

    pub fn injection(&self) -> &LatticeMap {
        &self.inj
    }

    pub fn surjection(&self) -> &LatticeMap {
        &self.surj
    }

    pub fn blocks(&self) -> &[(Subgroup, usize)] {
        &self.blocks
    }
}

/// The direct sum `⊕ Z[G/H]^{multiplicity}` in block order.
pub fn permutation_sum(
    group: &Arc<crate::groups::FiniteGroup>,
    blocks: &[(Subgroup, usize)],
) -> GLattice {
    let mut p = crate::lattices::trivial_lattice(group, 0);
    for (h, mult) in blocks {
        let block = permutation_lattice(group, h);
        for _ in 0..*mult {
            p = direct_sum(&p, &block).expect("same group");
        }
    }
    p
}

/// The generic coflasque resolution of `m`: one `Z[G/H]` block per basis
/// vector of `m^H`, for every subgroup `H`, mapping the coset of the
/// identity to that basis vector and extending equivariantly. The `H = {1}`
/// blocks alone make the map surjective; the kernel is computed and its
/// coflasqueness re-verified rather than trusted.
pub fn coflasque_resolution(m: &Arc<GLattice>) -> Result<CoflasqueResolution, ResolutionError> {
    let group = m.group();
    let mut blocks: Vec<(Subgroup, usize)> = Vec::new();
    let mut columns: Vec<IntMat> = Vec::new();
    for h in group.subgroups() {
        let fixed = fixed_sublattice(m, &h);
        if fixed.cols() == 0 {
            continue;
        }
        let (cs, _) = cosets(&h);
        for i in 0..fixed.cols() {
            let b = fixed.column(i);
            for c in cs.iter() {
                // any representative of the coset works: b is H-fixed
                columns.push(m.action(c[0]).mul(&b));
            }
        }
        blocks.push((h, fixed.cols()));
    }
    let p = Arc::new(permutation_sum(group, &blocks));
    let mut surj_matrix = IntMat::zero(m.rank(), 0);
    for c in &columns {
        surj_matrix = surj_matrix.hstack(c);
    }
    let surj = LatticeMap::new(Arc::clone(&p), Arc::clone(m), surj_matrix)?;
    let (f, inj) = kernel_lattice(&surj);
    CoflasqueResolution::assemble(Arc::clone(m), p, f, inj, surj, blocks)
}

/// A resolution from an explicitly given surjection `P → M`, where `P` is
/// described by permutation blocks; the kernel becomes `F`.
pub fn resolution_from_surjection(
    target: &Arc<GLattice>,
    blocks: Vec<(Subgroup, usize)>,
    surj_matrix: IntMat,
) -> Result<CoflasqueResolution, ResolutionError> {
    let p = Arc::new(permutation_sum(target.group(), &blocks));
    let surj = LatticeMap::new(Arc::clone(&p), Arc::clone(target), surj_matrix)?;
    let (f, inj) = kernel_lattice(&surj);
    CoflasqueResolution::assemble(Arc::clone(target), p, f, inj, surj, blocks)
}

/// Pulls a coflasque resolution of `N` back along a surjection
/// `f : M → N` whose kernel is split off by an explicit lift.
///
/// The caller supplies the kernel of `f` as a lattice inclusion
/// `kernel_incl : K → M` whose action literally matches the declared
/// permutation blocks, and a G-lift `lift : P → M` with
/// `f ∘ lift = surj`. The result is `0 → F → K ⊕ P → M → 0` with the same
/// `F`; everything is re-verified.
pub fn pullback_resolution(
    res: &CoflasqueResolution,
    f: &LatticeMap,
    kernel_incl: &LatticeMap,
    kernel_blocks: Vec<(Subgroup, usize)>,
    lift: &LatticeMap,
) -> Result<CoflasqueResolution, ResolutionError> {
    if f.codomain() != res.target() {
        return Err(ResolutionError::TargetMismatch);
    }
    if !f.is_surjective() {
        return Err(ResolutionError::NotSurjective);
    }
    if kernel_incl.codomain() != f.domain()
        || !kernel_incl.is_injective()
        || !same_column_span(kernel_incl.matrix(), &kernel_basis(f.matrix()))
    {
        return Err(ResolutionError::KernelMismatch);
    }
    if **kernel_incl.domain() != permutation_sum(f.domain().group(), &kernel_blocks) {
        return Err(ResolutionError::KernelNotPermutation);
    }
    if lift.domain() != res.permutation_term() || lift.codomain() != f.domain() {
        return Err(ResolutionError::LiftMismatch);
    }
    if f.compose(lift)?.matrix() != res.surjection().matrix() {
        return Err(ResolutionError::LiftMismatch);
    }
    let target = Arc::clone(f.domain());
    let p = Arc::new(direct_sum(kernel_incl.domain(), res.permutation_term())?);
    let mut blocks = kernel_blocks;
    blocks.extend(res.blocks().iter().cloned());
    let surj_matrix = kernel_incl.matrix().hstack(lift.matrix());
    let surj = LatticeMap::new(Arc::clone(&p), Arc::clone(&target), surj_matrix)?;
    // F → K ⊕ P is x ↦ (−i⁻¹(lift(inj x)), inj x)
    let through_kernel = lift.matrix().mul(res.injection().matrix());
    let upper = solve(kernel_incl.matrix(), &through_kernel)
        .ok_or(ResolutionError::LiftNotLanding)?;
    let inj_matrix = upper.neg().vstack(res.injection().matrix());
    let inj = LatticeMap::new(
        Arc::clone(res.kernel_term()),
        Arc::clone(&p),
        inj_matrix,
    )?;
    CoflasqueResolution::assemble(
        target,
        p,
        Arc::clone(res.kernel_term()),
        inj,
        surj,
        blocks,
    )
}

/// The necessary conditions for `F₁ ⊕ P₂ ≅ F₂ ⊕ P₁`: rank bookkeeping,
/// equality of Tate cohomology in degrees −1, 0, 1 for every subgroup, and
/// equality of fixed-sublattice ranks. No isomorphism is constructed.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub conditions: Vec<(String, bool)>,
}

impl ComparisonReport {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|(_, ok)| *ok)
    }
}

pub fn compare_resolutions(
    r1: &CoflasqueResolution,
    r2: &CoflasqueResolution,
) -> Result<ComparisonReport, ResolutionError> {
    if r1.target() != r2.target() {
        return Err(ResolutionError::TargetMismatch);
    }
    let mut conditions = Vec::new();
    let rank_ok = r1.kernel_term().rank() + r2.permutation_term().rank()
        == r2.kernel_term().rank() + r1.permutation_term().rank();
    conditions.push(("rank_sum".to_owned(), rank_ok));
    let a = direct_sum(r1.kernel_term(), r2.permutation_term())?;
    let b = direct_sum(r2.kernel_term(), r1.permutation_term())?;
    for h in r1.target().group().subgroups() {
        for deg in [-1, 0, 1] {
            let ok = cohomology(&h, &a, deg) == cohomology(&h, &b, deg);
            conditions.push((format!("cohomology_h{}_{}", deg, h.describe()), ok));
        }
        let ok = fixed_sublattice(&a, &h).cols() == fixed_sublattice(&b, &h).cols();
        conditions.push((format!("fixed_rank_{}", h.describe()), ok));
    }
    Ok(ComparisonReport { conditions })
}
