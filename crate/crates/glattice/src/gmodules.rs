//! Finitely generated abelian groups with G-action, given by generators
//! and relations. Elements are plain coordinate vectors (columns); equality
//! of elements is congruence modulo the relation subgroup, decided by
//! Hermite membership. No canonical element form is ever chosen.

use crate::cohomology::{quotient_class, AbGroupClass};
use crate::groups::FiniteGroup;
use crate::lattices::GLattice;
use crate::matrix::{col_hnf, kernel_basis, solve, ColSpan, IntMat};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModuleError {
    #[error("relation matrix has {0} rows, expected one per generator")]
    WrongRelationShape(usize),
    #[error("action list must have one matrix per group element")]
    WrongActionCount,
    #[error("action matrix for element {0} has the wrong shape")]
    WrongActionShape(usize),
    #[error("action of element {0} does not preserve the relation subgroup")]
    RelationsNotPreserved(usize),
    #[error("action at the identity is not the identity modulo relations")]
    IdentityNotIdentity,
    #[error("action is not a homomorphism modulo relations on the pair ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("modules live over different groups")]
    GroupMismatch,
    #[error("map matrix has the wrong shape")]
    WrongMapShape,
    #[error("map does not send the domain relations into the codomain relations")]
    RelationsNotMapped,
    #[error("map does not intertwine the actions modulo relations at element {0}")]
    NotEquivariant(usize),
    #[error("maps are not composable")]
    NotComposable,
}

/// A finitely generated abelian group with G-action: `Z^n_gens` modulo the
/// column span of `relations`, with `G` acting by integer matrices that are
/// only required to be compatible modulo the relations.
#[derive(Debug, Clone)]
pub struct FgAbGModule {
    group: Arc<FiniteGroup>,
    n_gens: usize,
    relations: IntMat,
    action: Vec<IntMat>,
    rel_span: ColSpan,
}

impl FgAbGModule {
    pub fn new(
        group: Arc<FiniteGroup>,
        n_gens: usize,
        relations: IntMat,
        action: Vec<IntMat>,
    ) -> Result<Self, ModuleError> {
        if relations.rows() != n_gens {
            return Err(ModuleError::WrongRelationShape(relations.rows()));
        }
        if action.len() != group.order() {
            return Err(ModuleError::WrongActionCount);
        }
        for (g, a) in action.iter().enumerate() {
            if a.rows() != n_gens || a.cols() != n_gens {
                return Err(ModuleError::WrongActionShape(g));
            }
        }
        let rel_span = ColSpan::new(&relations);
        for (g, a) in action.iter().enumerate() {
            if !rel_span.contains_all_columns(&a.mul(&relations)) {
                return Err(ModuleError::RelationsNotPreserved(g));
            }
        }
        let id = &action[group.identity()].sub(&IntMat::identity(n_gens));
        if !rel_span.contains_all_columns(id) {
            return Err(ModuleError::IdentityNotIdentity);
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let diff = action[g].mul(&action[h]).sub(&action[group.mul(g, h)]);
                if !rel_span.contains_all_columns(&diff) {
                    return Err(ModuleError::NotHomomorphism(g, h));
                }
            }
        }
        Ok(FgAbGModule {
            group,
            n_gens,
            relations,
            action,
            rel_span,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    pub fn relations(&self) -> &IntMat {
        &self.relations
    }

    pub fn action(&self, g: usize) -> &IntMat {
        &self.action[g]
    }

    /// Congruence of coordinate vectors modulo the relation subgroup.
    pub fn congruent(&self, a: &IntMat, b: &IntMat) -> bool {
        self.rel_span.contains(&a.sub(b))
    }

    pub fn is_zero_class(&self, v: &IntMat) -> bool {
        self.rel_span.contains(v)
    }

    /// The isomorphism class of the underlying abelian group.
    pub fn plain_class(&self) -> AbGroupClass {
        quotient_class(self.n_gens, &self.relations)
    }

    /// `Σ_{g∈G} action(g)` as a matrix (the norm operator on classes).
    pub fn norm_operator(&self) -> IntMat {
        let mut n = IntMat::zero(self.n_gens, self.n_gens);
        for a in &self.action {
            n = n.add(a);
        }
        n
    }

    pub fn zero_element(&self) -> IntMat {
        IntMat::zero(self.n_gens, 1)
    }
}

/// A lattice, viewed as a module with empty relations.
pub fn from_lattice(m: &GLattice) -> FgAbGModule {
    FgAbGModule::new(
        Arc::clone(m.group()),
        m.rank(),
        IntMat::zero(m.rank(), 0),
        m.actions().to_vec(),
    )
    .expect("a lattice is a relation-free module")
}

/// A module with trivial G-action from a plain presentation.
pub fn with_trivial_action(
    group: &Arc<FiniteGroup>,
    n_gens: usize,
    relations: IntMat,
) -> FgAbGModule {
    let action = (0..group.order()).map(|_| IntMat::identity(n_gens)).collect();
    FgAbGModule::new(Arc::clone(group), n_gens, relations, action)
        .expect("trivial action is compatible with any relations")
}

/// The diagonal tensor `M ⊗ A` of a lattice and a module: generators are
/// pairs ordered row-major, relations `id_M ⊗ relations(A)`, action the
/// Kronecker product of the two actions.
pub fn tensor_lattice_module(
    m: &GLattice,
    a: &FgAbGModule,
) -> Result<FgAbGModule, ModuleError> {
    if m.group() != a.group() {
        return Err(ModuleError::GroupMismatch);
    }
    let relations = IntMat::identity(m.rank()).kronecker(&a.relations);
    let action = (0..m.group().order())
        .map(|g| m.action(g).kronecker(a.action(g)))
        .collect();
    FgAbGModule::new(
        Arc::clone(m.group()),
        m.rank() * a.n_gens,
        relations,
        action,
    )
}

/// Block direct sum of presented modules over the same group.
pub fn direct_sum_modules(parts: &[&FgAbGModule]) -> Result<FgAbGModule, ModuleError> {
    let group = parts.first().expect("nonempty sum").group();
    if parts.iter().any(|p| p.group() != group) {
        return Err(ModuleError::GroupMismatch);
    }
    let mut relations = IntMat::zero(0, 0);
    let mut action: Vec<IntMat> = (0..group.order()).map(|_| IntMat::zero(0, 0)).collect();
    let mut n_gens = 0;
    for p in parts {
        relations = relations.block_diag(&p.relations);
        for (g, a) in action.iter_mut().enumerate() {
            *a = a.block_diag(p.action(g));
        }
        n_gens += p.n_gens;
    }
    FgAbGModule::new(Arc::clone(group), n_gens, relations, action)
}

/// The fixed points `A^G` of a presented module: a presentation of the
/// subquotient `{x : g·x ≡ x}/relations` together with an explicit
/// coordinate lift for every generator.
#[derive(Debug, Clone)]
pub struct FixedPoints {
    /// One column per generator of `A^G`: its lift to module coordinates.
    pub lifts: IntMat,
    /// Relations among those generators (columns).
    pub relations: IntMat,
}

impl FixedPoints {
    pub fn n_gens(&self) -> usize {
        self.lifts.cols()
    }

    pub fn class(&self) -> AbGroupClass {
        quotient_class(self.n_gens(), &self.relations)
    }

    /// The coordinate lift of an element given in fixed-point generators.
    pub fn lift(&self, v: &IntMat) -> IntMat {
        self.lifts.mul(v)
    }
}

/// Computes `A^G` by solving the simultaneous congruences
/// `(action(g) − id)·x ∈ relations` for all `g` as one integer kernel.
pub fn fixed_points(a: &FgAbGModule) -> FixedPoints {
    let n = a.n_gens;
    let r = a.relations.cols();
    let nontrivial: Vec<usize> = (0..a.group.order())
        .filter(|&g| g != a.group.identity())
        .collect();
    let k = nontrivial.len();
    // [ stacked (action(g) − id) | −blockdiag(relations) ]
    let mut stacked = IntMat::zero(0, n);
    for &g in &nontrivial {
        stacked = stacked.vstack(&a.action[g].sub(&IntMat::identity(n)));
    }
    let mut relblock = IntMat::zero(0, 0);
    for _ in 0..k {
        relblock = relblock.block_diag(&a.relations);
    }
    let system = stacked.hstack(&relblock.neg());
    debug_assert_eq!(system.rows(), k * n);
    debug_assert_eq!(system.cols(), n + k * r);
    let kernel = kernel_basis(&system);
    // project onto the x-coordinates; the relation subgroup is contained in
    // the projection, so adjoin it before canonicalizing
    let proj = kernel.row_range(0, n);
    let lifts = col_hnf(&proj.hstack(&a.relations));
    let relations = solve(&lifts, &a.relations)
        .expect("relations lie in the fixed subgroup and lifts form its basis");
    FixedPoints { lifts, relations }
}

/// A map of presented modules: an integer matrix on generators that sends
/// relations into relations and intertwines the actions modulo relations.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    domain: Arc<FgAbGModule>,
    codomain: Arc<FgAbGModule>,
    matrix: IntMat,
}

impl ModuleMap {
    pub fn new(
        domain: Arc<FgAbGModule>,
        codomain: Arc<FgAbGModule>,
        matrix: IntMat,
    ) -> Result<Self, ModuleError> {
        if domain.group() != codomain.group() {
            return Err(ModuleError::GroupMismatch);
        }
        if matrix.rows() != codomain.n_gens || matrix.cols() != domain.n_gens {
            return Err(ModuleError::WrongMapShape);
        }
        if !codomain
            .rel_span
            .contains_all_columns(&matrix.mul(&domain.relations))
        {
            return Err(ModuleError::RelationsNotMapped);
        }
        for g in 0..domain.group().order() {
            let diff = matrix.mul(domain.action(g)).sub(&codomain.action(g).mul(&matrix));
            if !codomain.rel_span.contains_all_columns(&diff) {
                return Err(ModuleError::NotEquivariant(g));
            }
        }
        Ok(ModuleMap {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn domain(&self) -> &Arc<FgAbGModule> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FgAbGModule> {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    pub fn apply(&self, v: &IntMat) -> IntMat {
        self.matrix.mul(v)
    }
}

/// Some `x` with `f(x) ≡ y`, or a certified no-solution answer. Torsion is
/// handled by adjoining the codomain relations to the linear system, so
/// solvability is integral, not rational. A returned solution is re-checked
/// against the congruence before being handed back.
pub fn solve_preimage(f: &ModuleMap, y: &IntMat) -> Option<IntMat> {
    assert_eq!(y.rows(), f.codomain.n_gens);
    let system = f.matrix.hstack(&f.codomain.relations);
    let sol = solve(&system, y)?;
    let x = sol.row_range(0, f.domain.n_gens);
    assert!(
        f.codomain.congruent(&f.apply(&x), y),
        "solver returned a non-solution"
    );
    Some(x)
}
