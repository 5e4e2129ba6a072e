//! G-lattices: free finite-rank integer modules with a group acting by
//! invertible integer matrices, together with the functor zoo used by the
//! resolution machinery (permutation lattices, duals, tensor products,
//! fixed sublattices, kernels, exactness checks).
//!
//! Matrices act on column vectors throughout; the composite `f ∘ g` has
//! matrix `matrix(f) · matrix(g)`.

use crate::groups::{FiniteGroup, Subgroup};
use crate::matrix::{
    col_hnf, kernel_basis, same_column_span, snf_diagonal, solve, ColSpan, IntMat,
};
use num_bigint::BigInt;
use num_traits::One;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("action list must have one matrix per group element")]
    WrongActionCount,
    #[error("action matrix for element {0} has the wrong shape")]
    WrongActionShape(usize),
    #[error("action at the identity is not the identity matrix")]
    IdentityNotIdentity,
    #[error("action is not a homomorphism on the pair ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("lattices live over different groups")]
    GroupMismatch,
    #[error("map matrix has shape {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    WrongMapShape {
        want_rows: usize,
        want_cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("map does not intertwine the actions at element {0}")]
    NotEquivariant(usize),
    #[error("maps are not composable at the middle lattice")]
    NotComposable,
    #[error("composition g∘f is nonzero, the pair is not even a complex")]
    CompositionMismatch,
}

/// A free `Z`-module of finite rank with a `G`-action by integer matrices.
/// The homomorphism property is checked exhaustively at construction; since
/// `action(g)·action(g⁻¹) = id`, every action matrix is unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GLattice {
    group: Arc<FiniteGroup>,
    rank: usize,
    action: Vec<IntMat>,
}

impl GLattice {
    pub fn new(
        group: Arc<FiniteGroup>,
        rank: usize,
        action: Vec<IntMat>,
    ) -> Result<Self, LatticeError> {
        let n = group.order();
        if action.len() != n {
            return Err(LatticeError::WrongActionCount);
        }
        for (g, m) in action.iter().enumerate() {
            if m.rows() != rank || m.cols() != rank {
                return Err(LatticeError::WrongActionShape(g));
            }
        }
        if !action[group.identity()].is_identity() {
            return Err(LatticeError::IdentityNotIdentity);
        }
        for g in 0..n {
            for h in 0..n {
                if action[g].mul(&action[h]) != action[group.mul(g, h)] {
                    return Err(LatticeError::NotHomomorphism(g, h));
                }
            }
        }
        Ok(GLattice {
            group,
            rank,
            action,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &IntMat {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntMat] {
        &self.action
    }

    /// `Σ_{h ∈ H} action(h)`.
    pub fn subgroup_norm(&self, h: &Subgroup) -> IntMat {
        let mut n = IntMat::zero(self.rank, self.rank);
        for &g in h.members() {
            n = n.add(&self.action[g]);
        }
        n
    }

    /// The norm operator `N_G = Σ_{g ∈ G} action(g)`.
    pub fn norm_operator(&self) -> IntMat {
        let mut n = IntMat::zero(self.rank, self.rank);
        for m in &self.action {
            n = n.add(m);
        }
        n
    }
}

/// `Z^rank` with trivial action.
pub fn trivial_lattice(group: &Arc<FiniteGroup>, rank: usize) -> GLattice {
    let action = (0..group.order()).map(|_| IntMat::identity(rank)).collect();
    GLattice::new(Arc::clone(group), rank, action).expect("trivial action is a homomorphism")
}

/// The left cosets of `H` in its parent group, each sorted, ordered by
/// smallest member index. Returns the cosets and the index of the coset
/// containing the identity.
pub fn cosets(h: &Subgroup) -> (Vec<Vec<usize>>, usize) {
    let g = h.parent();
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; g.order()];
    for a in 0..g.order() {
        if seen[a] {
            continue;
        }
        let mut coset: Vec<usize> = h.members().iter().map(|&m| g.mul(a, m)).collect();
        coset.sort_unstable();
        for &x in &coset {
            seen[x] = true;
        }
        cosets.push(coset);
    }
    cosets.sort_by_key(|c| c[0]);
    let id_coset = cosets
        .iter()
        .position(|c| c.binary_search(&g.identity()).is_ok())
        .expect("identity lies in some coset");
    (cosets, id_coset)
}

/// The permutation lattice `Z[G/H]`: rank `[G:H]`, basis indexed by the
/// cosets in the order fixed by [`cosets`], `G` acting by left translation.
pub fn permutation_lattice(group: &Arc<FiniteGroup>, h: &Subgroup) -> GLattice {
    assert_eq!(h.parent(), group, "subgroup of a different group");
    let (cs, _) = cosets(h);
    let rank = cs.len();
    let coset_of = |x: usize| cs.iter().position(|c| c.binary_search(&x).is_ok()).unwrap();
    let action = (0..group.order())
        .map(|g| {
            let mut m = IntMat::zero(rank, rank);
            for (j, c) in cs.iter().enumerate() {
                let i = coset_of(group.mul(g, c[0]));
                m[(i, j)] = BigInt::one();
            }
            m
        })
        .collect();
    GLattice::new(Arc::clone(group), rank, action).expect("translation is a homomorphism")
}

/// The regular representation `Z[G]`, basis the group elements in order.
pub fn regular_lattice(group: &Arc<FiniteGroup>) -> GLattice {
    permutation_lattice(group, &group.trivial_subgroup())
}

/// The augmentation map `ε : Z[G] → Z` sending every basis element to 1.
pub fn augmentation_map(zg: &Arc<GLattice>) -> LatticeMap {
    let z = Arc::new(trivial_lattice(zg.group(), 1));
    let m = IntMat::from_fn(1, zg.rank(), |_, _| BigInt::one());
    LatticeMap::new(Arc::clone(zg), z, m).expect("augmentation is equivariant")
}

/// The augmentation ideal `I_G = ker ε` with basis `{g − 1 : g ≠ 1}` in
/// element order, together with its inclusion into `Z[G]`.
pub fn augmentation_kernel(group: &Arc<FiniteGroup>) -> (Arc<GLattice>, LatticeMap) {
    let zg = Arc::new(regular_lattice(group));
    let n = group.order();
    let id = group.identity();
    let basis_elems: Vec<usize> = (0..n).filter(|&g| g != id).collect();
    let mut incl = IntMat::zero(n, n - 1);
    for (j, &g) in basis_elems.iter().enumerate() {
        incl[(g, j)] = BigInt::one();
        incl[(id, j)] = BigInt::from(-1);
    }
    // h · (g − 1) = (hg − 1) − (h − 1) in the chosen basis
    let pos = |g: usize| basis_elems.iter().position(|&x| x == g);
    let action: Vec<IntMat> = (0..n)
        .map(|h| {
            let mut m = IntMat::zero(n - 1, n - 1);
            for (j, &g) in basis_elems.iter().enumerate() {
                let hg = group.mul(h, g);
                if let Some(i) = pos(hg) {
                    m[(i, j)] = BigInt::one();
                }
                if let Some(i) = pos(h) {
                    m[(i, j)] -= BigInt::one();
                }
            }
            m
        })
        .collect();
    let ig = Arc::new(
        GLattice::new(Arc::clone(group), n - 1, action)
            .expect("augmentation ideal action is a homomorphism"),
    );
    let map = LatticeMap::new(Arc::clone(&ig), Arc::clone(&zg), incl)
        .expect("inclusion of the augmentation ideal is equivariant");
    (ig, map)
}

pub fn direct_sum(a: &GLattice, b: &GLattice) -> Result<GLattice, LatticeError> {
    if a.group != b.group {
        return Err(LatticeError::GroupMismatch);
    }
    let action = (0..a.group.order())
        .map(|g| a.action[g].block_diag(&b.action[g]))
        .collect();
    GLattice::new(Arc::clone(&a.group), a.rank + b.rank, action)
}

/// Tensor product with Kronecker action; the basis is ordered row-major in
/// the pair `(i, j)`, i.e. `(i, j) ↦ i·rank(b) + j`.
pub fn tensor(a: &GLattice, b: &GLattice) -> Result<GLattice, LatticeError> {
    if a.group != b.group {
        return Err(LatticeError::GroupMismatch);
    }
    let action = (0..a.group.order())
        .map(|g| a.action[g].kronecker(&b.action[g]))
        .collect();
    GLattice::new(Arc::clone(&a.group), a.rank * b.rank, action)
}

/// The dual lattice `Hom(M, Z)` with action `g ↦ action(g⁻¹)ᵀ`.
pub fn dual(a: &GLattice) -> GLattice {
    let action = (0..a.group.order())
        .map(|g| a.action[a.group.inverse(g)].transpose())
        .collect();
    GLattice::new(Arc::clone(&a.group), a.rank, action).expect("dual action is a homomorphism")
}

/// The same underlying lattice viewed over a subgroup.
pub fn restrict(a: &GLattice, h: &Subgroup) -> GLattice {
    assert_eq!(h.parent(), a.group(), "subgroup of a different group");
    let sub = Arc::new(h.as_group());
    let action = h.members().iter().map(|&g| a.action[g].clone()).collect();
    GLattice::new(sub, a.rank, action).expect("restricted action is a homomorphism")
}

/// Canonical (column HNF) basis of the saturated sublattice
/// `{x : action(h)·x = x for all h ∈ H}`.
pub fn fixed_sublattice(a: &GLattice, h: &Subgroup) -> IntMat {
    assert_eq!(h.parent(), a.group(), "subgroup of a different group");
    let mut stack = IntMat::zero(0, a.rank);
    for &g in h.members() {
        if g == a.group.identity() {
            continue;
        }
        stack = stack.vstack(&a.action[g].sub(&IntMat::identity(a.rank)));
    }
    kernel_basis(&stack)
}

/// An equivariant map of G-lattices. The matrix is
/// `codomain.rank × domain.rank` and acts on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    domain: Arc<GLattice>,
    codomain: Arc<GLattice>,
    matrix: IntMat,
}

impl LatticeMap {
    pub fn new(
        domain: Arc<GLattice>,
        codomain: Arc<GLattice>,
        matrix: IntMat,
    ) -> Result<Self, LatticeError> {
        if domain.group != codomain.group {
            return Err(LatticeError::GroupMismatch);
        }
        if matrix.rows() != codomain.rank || matrix.cols() != domain.rank {
            return Err(LatticeError::WrongMapShape {
                want_rows: codomain.rank,
                want_cols: domain.rank,
                got_rows: matrix.rows(),
                got_cols: matrix.cols(),
            });
        }
        for g in 0..domain.group.order() {
            if matrix.mul(domain.action(g)) != codomain.action(g).mul(&matrix) {
                return Err(LatticeError::NotEquivariant(g));
            }
        }
        Ok(LatticeMap {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn domain(&self) -> &Arc<GLattice> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<GLattice> {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    pub fn apply(&self, v: &IntMat) -> IntMat {
        self.matrix.mul(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LatticeMap) -> Result<LatticeMap, LatticeError> {
        if other.codomain != self.domain {
            return Err(LatticeError::NotComposable);
        }
        LatticeMap::new(
            Arc::clone(&other.domain),
            Arc::clone(&self.codomain),
            self.matrix.mul(&other.matrix),
        )
    }

    pub fn is_injective(&self) -> bool {
        kernel_basis(&self.matrix).cols() == 0
    }

    /// Surjective as a map of abelian groups: the columns span all of
    /// the codomain, i.e. the column HNF is the identity.
    pub fn is_surjective(&self) -> bool {
        col_hnf(&self.matrix).is_identity()
    }

    /// The cokernel `codomain / image` as Smith invariants.
    pub fn cokernel_invariants(&self) -> Vec<BigInt> {
        snf_diagonal(&self.matrix)
    }
}

/// The kernel of an equivariant map, as a lattice in its canonical basis,
/// with the inclusion back into the domain. Integer kernels are saturated,
/// so the inherited action is integral.
pub fn kernel_lattice(f: &LatticeMap) -> (Arc<GLattice>, LatticeMap) {
    let k = kernel_basis(f.matrix());
    let rank = k.cols();
    let action: Vec<IntMat> = (0..f.domain().group().order())
        .map(|g| {
            solve(&k, &f.domain().action(g).mul(&k))
                .expect("the action preserves the kernel and the basis is saturated")
        })
        .collect();
    let lat = Arc::new(
        GLattice::new(Arc::clone(f.domain().group()), rank, action)
            .expect("inherited kernel action is a homomorphism"),
    );
    let incl = LatticeMap::new(Arc::clone(&lat), Arc::clone(f.domain()), k)
        .expect("kernel inclusion is equivariant");
    debug_assert!(f.matrix().mul(incl.matrix()).is_zero());
    (lat, incl)
}

/// Exactness of `A --f--> B --g--> C` at `B`: the image of `f` equals the
/// kernel of `g` as subgroups of `B` (genuine equality, not equality of
/// saturations). If `g∘f ≠ 0` the pair is not even a complex and that is
/// reported as a distinct error.
pub fn exactness_check(f: &LatticeMap, g: &LatticeMap) -> Result<bool, LatticeError> {
    if f.codomain() != g.domain() {
        return Err(LatticeError::NotComposable);
    }
    if !g.matrix().mul(f.matrix()).is_zero() {
        return Err(LatticeError::CompositionMismatch);
    }
    Ok(same_column_span(f.matrix(), &kernel_basis(g.matrix())))
}

/// Coordinates of `v` in the column basis `b`, if `v` lies in its span.
pub fn in_basis(b: &IntMat, v: &IntMat) -> Option<IntMat> {
    solve(b, v)
}

/// Membership of `v` in the subgroup generated by the columns of `gens`.
pub fn in_column_span(gens: &IntMat, v: &IntMat) -> bool {
    ColSpan::new(gens).contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::klein_four;

    fn m(rows: &[Vec<i64>]) -> IntMat {
        IntMat::from_rows(rows)
    }

    #[test]
    fn trivial_lattices() {
        let g = klein_four();
        let z = trivial_lattice(&g, 1);
        assert_eq!(z.rank(), 1);
        assert!(z.actions().iter().all(IntMat::is_identity));
        let zero = trivial_lattice(&g, 0);
        assert_eq!(zero.rank(), 0);
        let z3 = trivial_lattice(&g, 3);
        assert_eq!(z3.rank(), 3);
        assert!(z3.actions().iter().all(IntMat::is_identity));
    }

    #[test]
    fn permutation_lattice_on_cosets() {
        let g = klein_four();
        let zg = regular_lattice(&g);
        assert_eq!(zg.rank(), 4);
        let whole = permutation_lattice(&g, &g.full_subgroup());
        assert_eq!(whole.rank(), 1);
        assert!(whole.actions().iter().all(IntMat::is_identity));

        let s = g.element_by_label("σ").unwrap();
        let h = g.subgroup_generated_by(&[s]);
        let p = permutation_lattice(&g, &h);
        assert_eq!(p.rank(), 2);
        assert!(p.action(s).is_identity(), "σ acts as identity");
        let t = g.element_by_label("τ").unwrap();
        assert_eq!(p.action(t), &m(&[vec![0, 1], vec![1, 0]]), "τ swaps");
    }

    #[test]
    fn augmentation_kernel_basics() {
        let g = klein_four();
        let (ig, incl) = augmentation_kernel(&g);
        assert_eq!(ig.rank(), 3);
        let zg = Arc::new(regular_lattice(&g));
        let eps = augmentation_map(&zg);
        assert!(eps.matrix().mul(incl.matrix()).is_zero(), "ε ∘ incl = 0");

        // σ·(τ−1) = (στ−1) − (σ−1) in the basis (σ−1, τ−1, στ−1)
        let s = g.element_by_label("σ").unwrap();
        let tau_minus_1 = m(&[vec![0], vec![1], vec![0]]);
        let got = ig.action(s).mul(&tau_minus_1);
        assert_eq!(got, m(&[vec![-1], vec![0], vec![1]]));
    }

    #[test]
    fn duals() {
        let g = klein_four();
        let z = trivial_lattice(&g, 1);
        assert_eq!(dual(&z), z, "Z is self-dual");
        let zg = regular_lattice(&g);
        let d = dual(&zg);
        for g_idx in 0..4 {
            let a = d.action(g_idx);
            // transpose of a permutation matrix is a permutation matrix
            for j in 0..4 {
                let ones = (0..4).filter(|&i| a[(i, j)] == BigInt::one()).count();
                assert_eq!(ones, 1);
            }
        }
        let (ig, _) = augmentation_kernel(&g);
        assert_eq!(dual(&dual(&ig)), *ig, "double dual is literal identity");
    }

    #[test]
    fn tensor_rank() {
        let g = klein_four();
        let zg = regular_lattice(&g);
        let (ig, _) = augmentation_kernel(&g);
        let t = tensor(&zg, &ig).unwrap();
        assert_eq!(t.rank(), 12);
    }

    #[test]
    fn group_mismatch_detected() {
        let g = klein_four();
        let h = crate::groups::cyclic(2);
        let a = trivial_lattice(&g, 1);
        let b = trivial_lattice(&h, 1);
        assert_eq!(direct_sum(&a, &b), Err(LatticeError::GroupMismatch));
        assert_eq!(tensor(&a, &b), Err(LatticeError::GroupMismatch));
    }

    #[test]
    fn fixed_sublattice_of_regular_is_norm_line() {
        let g = klein_four();
        let zg = regular_lattice(&g);
        let fixed = fixed_sublattice(&zg, &g.full_subgroup());
        assert_eq!(fixed.cols(), 1);
        assert_eq!(fixed, m(&[vec![1], vec![1], vec![1], vec![1]]));
    }

    #[test]
    fn fixed_sublattice_of_augmentation_ideal_is_zero() {
        let g = klein_four();
        let (ig, _) = augmentation_kernel(&g);
        let fixed = fixed_sublattice(&ig, &g.full_subgroup());
        assert_eq!(fixed.cols(), 0);

        // independent oracle: some 3x3 minor of the stacked (action − id)
        // matrices has nonzero determinant, so the rational kernel is 0
        let s = g.element_by_label("σ").unwrap();
        let t = g.element_by_label("τ").unwrap();
        let mut rows: Vec<[i64; 3]> = Vec::new();
        for g_idx in [s, t] {
            let a = ig.action(g_idx);
            for i in 0..3 {
                let mut row = [0i64; 3];
                for (j, r) in row.iter_mut().enumerate() {
                    let mut v = a[(i, j)].clone();
                    if i == j {
                        v -= BigInt::one();
                    }
                    *r = i64::try_from(v).unwrap();
                }
                rows.push(row);
            }
        }
        let det3 = |a: &[i64; 3], b: &[i64; 3], c: &[i64; 3]| {
            a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0])
        };
        let mut found = false;
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                for k in j + 1..rows.len() {
                    if det3(&rows[i], &rows[j], &rows[k]) != 0 {
                        found = true;
                    }
                }
            }
        }
        assert!(found, "stacked fixed-point system has full rank");
    }

    #[test]
    fn fixed_rank_is_additive_and_trivial_cases() {
        let g = klein_four();
        let zg = regular_lattice(&g);
        let (ig, _) = augmentation_kernel(&g);
        for h in g.subgroups() {
            let a = fixed_sublattice(&zg, &h).cols();
            let b = fixed_sublattice(&ig, &h).cols();
            let s = direct_sum(&zg, &ig).unwrap();
            assert_eq!(fixed_sublattice(&s, &h).cols(), a + b);
        }
        let zk = trivial_lattice(&g, 5);
        for h in g.subgroups() {
            assert_eq!(fixed_sublattice(&zk, &h).cols(), 5);
        }
        // rank of fixed points of Z[G/H] under G is always 1
        for h in g.subgroups() {
            let p = permutation_lattice(&g, &h);
            assert_eq!(fixed_sublattice(&p, &g.full_subgroup()).cols(), 1);
        }
    }

    #[test]
    fn kernel_of_augmentation_matches_ig() {
        let g = klein_four();
        let zg = Arc::new(regular_lattice(&g));
        let eps = augmentation_map(&zg);
        let (ker, ker_incl) = kernel_lattice(&eps);
        assert_eq!(ker.rank(), 3);
        let (_, ig_incl) = augmentation_kernel(&g);
        // same subgroup of Z[G], so a unimodular base change U with
        // incl_IG · U = incl_ker intertwines the actions
        let u = solve(ig_incl.matrix(), ker_incl.matrix()).unwrap();
        let u_inv = solve(ker_incl.matrix(), ig_incl.matrix()).unwrap();
        assert!(u.mul(&u_inv).is_identity());
        for g_idx in 0..4 {
            assert_eq!(
                u.mul(ker.action(g_idx)),
                ig_incl.domain().action(g_idx).mul(&u)
            );
        }
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let g = klein_four();
        let zg = Arc::new(regular_lattice(&g));
        let id = LatticeMap::new(Arc::clone(&zg), Arc::clone(&zg), IntMat::identity(4)).unwrap();
        let (ker, _) = kernel_lattice(&id);
        assert_eq!(ker.rank(), 0);
    }

    #[test]
    fn norm_operator_values() {
        let g = klein_four();
        let z = trivial_lattice(&g, 1);
        assert_eq!(z.norm_operator(), m(&[vec![4]]));
        let zg = regular_lattice(&g);
        let n = zg.norm_operator();
        assert_eq!(n, IntMat::from_fn(4, 4, |_, _| BigInt::one()));
        for g_idx in 0..4 {
            let shifted = zg.action(g_idx).sub(&IntMat::identity(4));
            assert!(n.mul(&shifted).is_zero(), "N_G(g − 1) = 0");
        }
    }

    #[test]
    fn exactness_of_the_defining_sequence() {
        let g = klein_four();
        let zg = Arc::new(regular_lattice(&g));
        let eps = augmentation_map(&zg);
        let (ig, incl) = augmentation_kernel(&g);
        // 0 → I_G → Z[G] → Z → 0
        assert!(incl.is_injective());
        assert!(eps.is_surjective());
        assert!(exactness_check(&incl, &eps).unwrap());
        let _ = ig;
    }

    #[test]
    fn exactness_counterexamples() {
        let g = klein_four();
        let z = Arc::new(trivial_lattice(&g, 1));
        let zero = Arc::new(trivial_lattice(&g, 0));
        let doubling =
            LatticeMap::new(Arc::clone(&z), Arc::clone(&z), m(&[vec![2]])).unwrap();
        let to_zero =
            LatticeMap::new(Arc::clone(&z), Arc::clone(&zero), IntMat::zero(0, 1)).unwrap();
        // image 2Z is strictly inside kernel Z
        assert!(!exactness_check(&doubling, &to_zero).unwrap());

        let id = LatticeMap::new(Arc::clone(&z), Arc::clone(&z), IntMat::identity(1)).unwrap();
        let zmap = LatticeMap::new(Arc::clone(&z), Arc::clone(&z), m(&[vec![0]])).unwrap();
        assert!(exactness_check(&id, &zmap).unwrap(), "identity then zero");
        assert_eq!(
            exactness_check(&id, &id),
            Err(LatticeError::CompositionMismatch)
        );
    }

    #[test]
    fn kernel_then_exactness_always_passes() {
        let g = klein_four();
        let zg = Arc::new(regular_lattice(&g));
        let eps = augmentation_map(&zg);
        let (_, incl) = kernel_lattice(&eps);
        assert!(exactness_check(&incl, &eps).unwrap());
    }

    #[test]
    fn restriction_keeps_matrices() {
        let g = klein_four();
        let zg = regular_lattice(&g);
        let s = g.element_by_label("σ").unwrap();
        let h = g.subgroup_generated_by(&[s]);
        let r = restrict(&zg, &h);
        assert_eq!(r.group().order(), 2);
        assert_eq!(r.action(1), zg.action(s));
    }
}
