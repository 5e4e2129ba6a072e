//! Tate cohomology of a finite group (or any of its subgroups) with
//! coefficients in a G-lattice, plus the flasque / coflasque predicates.
//!
//! Every computation returns only the isomorphism class of the resulting
//! finitely generated abelian group; cocycle representatives are never
//! exposed. `Ĥ⁻¹` and `Ĥ⁰` are computed straight from their definitions,
//! `H¹` from the full cocycle system; the redundant equations are handled
//! by the Smith normal form.

use crate::groups::Subgroup;
use crate::lattices::{dual, fixed_sublattice, GLattice};
use crate::matrix::{kernel_basis, snf_diagonal, solve, IntMat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CohomologyError {
    #[error(
        "flasque check disagrees with the coflasque check of the dual at {subgroup}: \
         Ĥ⁻¹ gives {minus_one}, H¹ of the dual gives {dual_h1}"
    )]
    InternalDisagreement {
        subgroup: String,
        minus_one: AbGroupClass,
        dual_h1: AbGroupClass,
    },
}

/// Isomorphism class of a finitely generated abelian group: free rank and
/// elementary divisors `d₁ | d₂ | …` with every `dᵢ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbGroupClass {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl AbGroupClass {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        for d in &torsion {
            assert!(d >= &BigInt::from(2), "unit divisor in torsion chain");
        }
        for w in torsion.windows(2) {
            assert!(w[1].mod_floor(&w[0]).is_zero(), "broken divisor chain");
        }
        AbGroupClass { free_rank, torsion }
    }

    pub fn trivial() -> Self {
        AbGroupClass {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Group order; `None` when the free rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    /// Exponent of the torsion part (1 for a free or trivial group).
    pub fn torsion_exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// Class of the direct sum, with the divisor chain renormalized.
    pub fn direct_sum(&self, other: &AbGroupClass) -> AbGroupClass {
        let all: Vec<BigInt> = self
            .torsion
            .iter()
            .chain(other.torsion.iter())
            .cloned()
            .collect();
        let k = all.len();
        let diag = IntMat::from_fn(k, k, |i, j| {
            if i == j {
                all[i].clone()
            } else {
                BigInt::zero()
            }
        });
        let chain = snf_diagonal(&diag)
            .into_iter()
            .filter(|d| d > &BigInt::one())
            .collect();
        AbGroupClass::new(self.free_rank + other.free_rank, chain)
    }
}

impl fmt::Display for AbGroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_owned()),
            k => parts.push(format!("Z^{k}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Class of `Z^ambient` modulo the subgroup generated by the columns.
pub fn quotient_class(ambient: usize, gens: &IntMat) -> AbGroupClass {
    assert_eq!(gens.rows(), ambient);
    let diag = snf_diagonal(gens);
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion = diag.into_iter().filter(|d| d > &BigInt::one()).collect();
    AbGroupClass::new(ambient - nonzero, torsion)
}

fn assert_exponent_bound(class: &AbGroupClass, h: &Subgroup) {
    let order = BigInt::from(h.order());
    assert!(
        order.mod_floor(&class.torsion_exponent()).is_zero(),
        "exponent of {class} does not divide |H| = {order}"
    );
}

/// Tate `Ĥ⁰(H, M) = M^H / N_H·M`.
pub fn tate_h0(h: &Subgroup, m: &GLattice) -> AbGroupClass {
    assert_eq!(h.parent(), m.group(), "subgroup of a different group");
    let fixed = fixed_sublattice(m, h);
    let norm = m.subgroup_norm(h);
    // every column of N_H lands in M^H, and the fixed basis is saturated
    let in_fixed = solve(&fixed, &norm).expect("norm image lies in the fixed sublattice");
    let class = quotient_class(fixed.cols(), &in_fixed);
    assert_exponent_bound(&class, h);
    class
}

/// Tate `Ĥ⁻¹(H, M) = ker(N_H) / I_H·M`.
pub fn tate_h_minus1(h: &Subgroup, m: &GLattice) -> AbGroupClass {
    assert_eq!(h.parent(), m.group(), "subgroup of a different group");
    let ker = kernel_basis(&m.subgroup_norm(h));
    let mut aug_gens = IntMat::zero(m.rank(), 0);
    for &g in h.members() {
        if g == h.parent().identity() {
            continue;
        }
        aug_gens = aug_gens.hstack(&m.action(g).sub(&IntMat::identity(m.rank())));
    }
    let in_ker = solve(&ker, &aug_gens).expect("I_H·M lies in the norm kernel");
    let class = quotient_class(ker.cols(), &in_ker);
    assert_exponent_bound(&class, h);
    class
}

/// `H¹(H, M)` from the full cocycle system: tuples `(x_h)` with
/// `x_{hk} = x_h + h·x_k` for every ordered pair, modulo the coboundaries
/// `(h·m − m)_h`.
pub fn h1(h: &Subgroup, m: &GLattice) -> AbGroupClass {
    assert_eq!(h.parent(), m.group(), "subgroup of a different group");
    let members = h.members();
    let s = members.len();
    let n = m.rank();
    let pos = |g: usize| members.binary_search(&g).expect("subgroup is closed");
    // one block row of n equations per ordered pair (h, k)
    let mut eqs = IntMat::zero(s * s * n, s * n);
    for (i, &hi) in members.iter().enumerate() {
        for (j, &hj) in members.iter().enumerate() {
            let row0 = (i * s + j) * n;
            let k = pos(h.parent().mul(hi, hj));
            for r in 0..n {
                eqs[(row0 + r, k * n + r)] += BigInt::one();
                eqs[(row0 + r, i * n + r)] -= BigInt::one();
            }
            let act = m.action(hi);
            for r in 0..n {
                for c in 0..n {
                    let v = act[(r, c)].clone();
                    eqs[(row0 + r, j * n + c)] -= v;
                }
            }
        }
    }
    let cocycles = kernel_basis(&eqs);
    let mut coboundaries = IntMat::zero(s * n, n);
    for (i, &hi) in members.iter().enumerate() {
        let d = m.action(hi).sub(&IntMat::identity(n));
        for r in 0..n {
            for c in 0..n {
                coboundaries[(i * n + r, c)] = d[(r, c)].clone();
            }
        }
    }
    let in_cocycles =
        solve(&cocycles, &coboundaries).expect("coboundaries are cocycles");
    let class = quotient_class(cocycles.cols(), &in_cocycles);
    assert_exponent_bound(&class, h);
    class
}

/// Tate cohomology in degree −1, 0 or 1.
pub fn cohomology(h: &Subgroup, m: &GLattice, degree: i32) -> AbGroupClass {
    match degree {
        -1 => tate_h_minus1(h, m),
        0 => tate_h0(h, m),
        1 => h1(h, m),
        _ => panic!("only degrees -1, 0, 1 are computed"),
    }
}

/// Outcome of a vanishing test over all subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails {
        subgroup: Subgroup,
        class: AbGroupClass,
    },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

/// Coflasque: `H¹(H, M) = 0` for every subgroup `H ≤ G`. On failure the
/// largest offending subgroup and its nonzero class are returned.
pub fn is_coflasque(m: &GLattice) -> Verdict {
    for h in m.group().subgroups().into_iter().rev() {
        let class = h1(&h, m);
        if !class.is_trivial() {
            return Verdict::Fails { subgroup: h, class };
        }
    }
    Verdict::Holds
}

/// Flasque: `Ĥ⁻¹(H, M) = 0` for every subgroup. The same answer is
/// recomputed as `is_coflasque(dual(M))`; a mismatch between the two routes
/// signals an implementation bug and is reported as an error.
pub fn is_flasque(m: &GLattice) -> Result<Verdict, CohomologyError> {
    let md = dual(m);
    let mut verdict = Verdict::Holds;
    for h in m.group().subgroups().into_iter().rev() {
        let minus_one = tate_h_minus1(&h, m);
        let dual_h1 = h1(&h, &md);
        if minus_one != dual_h1 {
            return Err(CohomologyError::InternalDisagreement {
                subgroup: h.describe(),
                minus_one,
                dual_h1,
            });
        }
        if !minus_one.is_trivial() && verdict.holds() {
            verdict = Verdict::Fails {
                subgroup: h,
                class: minus_one,
            };
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::klein_four;
    use crate::lattices::{
        augmentation_kernel, augmentation_map, direct_sum, regular_lattice, tensor,
        trivial_lattice,
    };
    use std::sync::Arc;

    fn class(free: usize, torsion: &[i64]) -> AbGroupClass {
        AbGroupClass::new(free, torsion.iter().map(|&d| BigInt::from(d)).collect())
    }

    #[test]
    fn display_formatting() {
        assert_eq!(class(0, &[]).to_string(), "0");
        assert_eq!(class(0, &[4]).to_string(), "Z/4");
        assert_eq!(class(1, &[]).to_string(), "Z");
        assert_eq!(class(2, &[2]).to_string(), "Z^2 + Z/2");
    }

    #[test]
    fn direct_sum_renormalizes_chain() {
        let a = class(0, &[2]);
        let b = class(0, &[3]);
        assert_eq!(a.direct_sum(&b), class(0, &[6]));
        let c = class(1, &[2, 4]);
        assert_eq!(c.direct_sum(&a), class(1, &[2, 2, 4]));
    }

    #[test]
    fn h0_values() {
        let g = klein_four();
        let z = trivial_lattice(&g, 1);
        let whole = g.full_subgroup();
        assert_eq!(tate_h0(&whole, &z), class(0, &[4]), "Ĥ⁰(G, Z) = Z/4");
        let zg = regular_lattice(&g);
        assert!(tate_h0(&whole, &zg).is_trivial(), "induced module");
        let (ig, _) = augmentation_kernel(&g);
        let triv = g.trivial_subgroup();
        for m in [&z, &zg, &ig] {
            assert!(tate_h0(&triv, m).is_trivial());
        }
    }

    /// Independent oracle for H¹(G, I_G): the connecting map of
    /// 0 → I_G → Z[G] → Z → 0 identifies it with the cokernel of
    /// ε restricted to Z[G]^G, because H¹(G, Z[G]) vanishes.
    fn h1_g_ig_by_connecting_map() -> AbGroupClass {
        let g = klein_four();
        let zg = Arc::new(regular_lattice(&g));
        let eps = augmentation_map(&zg);
        let fixed = crate::lattices::fixed_sublattice(&zg, &g.full_subgroup());
        let image = eps.matrix().mul(&fixed);
        quotient_class(1, &image)
    }

    #[test]
    fn h1_of_augmentation_ideal_matches_connecting_map_oracle() {
        let g = klein_four();
        let (ig, _) = augmentation_kernel(&g);
        let oracle = h1_g_ig_by_connecting_map();
        assert_eq!(oracle, class(0, &[4]), "the oracle itself gives Z/4");
        assert_eq!(h1(&g.full_subgroup(), &ig), oracle);
    }

    #[test]
    fn h1_trivial_cases() {
        let g = klein_four();
        let zg = regular_lattice(&g);
        let z = trivial_lattice(&g, 1);
        for h in g.subgroups() {
            assert!(h1(&h, &zg).is_trivial(), "H¹(H, Z[G]) = 0");
            assert!(h1(&h, &z).is_trivial(), "no homs from a finite group to Z");
        }
    }

    #[test]
    fn h_minus1_values() {
        let g = klein_four();
        let zg = regular_lattice(&g);
        let z = trivial_lattice(&g, 1);
        for h in g.subgroups() {
            assert!(tate_h_minus1(&h, &zg).is_trivial(), "induced module");
        }
        assert!(tate_h_minus1(&g.full_subgroup(), &z).is_trivial());
    }

    #[test]
    fn duality_order_check() {
        let g = klein_four();
        let zg = regular_lattice(&g);
        let z = trivial_lattice(&g, 1);
        let (ig, _) = augmentation_kernel(&g);
        for m in [&z, &zg, &ig] {
            let md = dual(m);
            for h in g.subgroups() {
                assert_eq!(
                    tate_h_minus1(&h, m).order(),
                    h1(&h, &md).order(),
                    "|Ĥ⁻¹(H, M)| = |H¹(H, M°)| at H = {}",
                    h.describe()
                );
            }
        }
    }

    #[test]
    fn induced_modules_are_cohomologically_trivial() {
        let g = klein_four();
        let zg = regular_lattice(&g);
        let z = trivial_lattice(&g, 1);
        let (ig, _) = augmentation_kernel(&g);
        for m in [&z, &ig] {
            let induced = tensor(&zg, m).unwrap();
            for h in g.subgroups() {
                for deg in [-1, 0, 1] {
                    assert!(
                        cohomology(&h, &induced, deg).is_trivial(),
                        "Ĥ^{deg}(H, Z[G]⊗M) = 0"
                    );
                }
            }
        }
    }

    #[test]
    fn h1_is_additive() {
        let g = klein_four();
        let (ig, _) = augmentation_kernel(&g);
        let z = trivial_lattice(&g, 1);
        let s = direct_sum(&ig, &z).unwrap();
        let both = direct_sum(&ig, &ig).unwrap();
        for h in g.subgroups() {
            assert_eq!(h1(&h, &s), h1(&h, &ig).direct_sum(&h1(&h, &z)));
            assert_eq!(h1(&h, &both), h1(&h, &ig).direct_sum(&h1(&h, &ig)));
        }
    }

    #[test]
    fn coflasque_verdicts() {
        let g = klein_four();
        assert!(is_coflasque(&regular_lattice(&g)).holds());
        assert!(is_coflasque(&trivial_lattice(&g, 2)).holds());
        let (ig, _) = augmentation_kernel(&g);
        match is_coflasque(&ig) {
            Verdict::Fails { subgroup, class: c } => {
                assert!(subgroup.is_whole_group(), "witness is H = G");
                assert_eq!(c, class(0, &[4]));
            }
            Verdict::Holds => panic!("I_G is not coflasque for the Klein group"),
        }
    }

    #[test]
    fn flasque_verdicts() {
        let g = klein_four();
        assert!(is_flasque(&regular_lattice(&g)).unwrap().holds());
        assert!(is_flasque(&trivial_lattice(&g, 1)).unwrap().holds());
        let (ig, _) = augmentation_kernel(&g);
        // I_G is not flasque either: Ĥ⁻¹(G, I_G) ≠ 0
        assert!(!is_flasque(&ig).unwrap().holds());
    }

    #[test]
    fn cyclic_group_golden_values() {
        // order-2 group acting by sign on Z: Ĥ⁰ = 0, Ĥ⁻¹ = H¹ = Z/2
        let c2 = crate::groups::cyclic(2);
        let sign = crate::lattices::GLattice::new(
            Arc::clone(&c2),
            1,
            vec![
                crate::matrix::IntMat::identity(1),
                crate::matrix::IntMat::from_rows(&[vec![-1]]),
            ],
        )
        .unwrap();
        let whole = c2.full_subgroup();
        assert!(tate_h0(&whole, &sign).is_trivial());
        assert_eq!(tate_h_minus1(&whole, &sign), class(0, &[2]));
        assert_eq!(h1(&whole, &sign), class(0, &[2]));

        // trivial coefficients over cyclic groups: Ĥ⁰ = Z/n, the others 0
        for n in [2, 3, 4, 6] {
            let g = crate::groups::cyclic(n);
            let z = trivial_lattice(&g, 1);
            let whole = g.full_subgroup();
            assert_eq!(tate_h0(&whole, &z), class(0, &[n as i64]));
            assert!(h1(&whole, &z).is_trivial());
            assert!(tate_h_minus1(&whole, &z).is_trivial());
        }
    }

    mod base_change {
        use super::*;
        use crate::matrix::IntMat;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]
            /// Cohomology only sees the lattice up to unimodular base
            /// change: conjugating the I_G action by a random product of
            /// elementary matrices leaves every class unchanged.
            #[test]
            fn classes_survive_unimodular_base_change(
                ops in proptest::collection::vec((0..3usize, 0..3usize, -2..=2i64), 0..6)
            ) {
                let g = klein_four();
                let (ig, _) = augmentation_kernel(&g);
                let mut u = IntMat::identity(3);
                let mut u_inv = IntMat::identity(3);
                for (i, j, c) in ops {
                    if i == j || c == 0 {
                        continue;
                    }
                    let mut e = IntMat::identity(3);
                    e[(i, j)] = BigInt::from(c);
                    let mut e_inv = IntMat::identity(3);
                    e_inv[(i, j)] = BigInt::from(-c);
                    u = u.mul(&e);
                    u_inv = e_inv.mul(&u_inv);
                }
                prop_assert!(u.mul(&u_inv).is_identity());
                let action = (0..4)
                    .map(|g_idx| u_inv.mul(ig.action(g_idx)).mul(&u))
                    .collect();
                let conjugated =
                    crate::lattices::GLattice::new(Arc::clone(&g), 3, action).unwrap();
                for h in g.subgroups() {
                    for deg in [-1, 0, 1] {
                        prop_assert_eq!(
                            cohomology(&h, &conjugated, deg),
                            cohomology(&h, &ig, deg)
                        );
                    }
                }
            }
        }
    }
}
