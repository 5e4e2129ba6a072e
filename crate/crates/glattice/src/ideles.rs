//! Finitely supported idele fragments over a declared finite set of
//! places of `L`, the degree homomorphisms they carry, and the strict
//! containment `image(P-route) ⊊ image(T-route)` for the function-field
//! setup `K = F(λ)`, `L = F'(√λ)`.
//!
//! No restricted products appear anywhere: a place system compiles to one
//! presented G-module (the direct sum of the declared local groups, with
//! `G` permuting places and acting through decomposition groups), and the
//! degree map `ξ ↦ Σ [F_w:F]·w(ξ_w)` is a single integer row vector. All
//! image subgroups of `Z` are reported by their nonnegative generator.

use crate::cohomology::{quotient_class, AbGroupClass};
use crate::gmodules::{
    fixed_points, solve_preimage, tensor_lattice_module, FgAbGModule, FixedPoints, ModuleMap,
};
use crate::groups::FiniteGroup;
use crate::klein::{self, KleinData};
use crate::lattices::{dual, fixed_sublattice, in_column_span, GLattice};
use crate::localfield::{self, LocalFragment, LocalTorusPoint};
use crate::matrix::{kernel_basis, IntMat};
use crate::report::CheckReport;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IdeleError {
    #[error("duplicate place name {0:?}")]
    DuplicateName(String),
    #[error("place {0:?} lies over an undeclared K-place")]
    UnknownKPlace(String),
    #[error("the declared action does not permute the places as a G-action")]
    BadPermutation,
    #[error("place {0:?} carries a local module but is not fixed by G")]
    NonfixedModulePlace(String),
    #[error("invariants are not constant on the orbit of place {0:?}")]
    OrbitInconsistent(String),
    #[error("the fiber over K-place {0:?} is not a single G-orbit")]
    FiberNotOneOrbit(String),
    #[error("fiber over {k_place:?}: Σ e·f/f_v = {got}, expected the group order {want}")]
    FiberDegreeMismatch {
        k_place: String,
        got: u32,
        want: u32,
    },
    #[error("residue degree of place {0:?} is not a multiple of its K-place degree")]
    ResidueDegreeNotMultiple(String),
    #[error("place {0:?} has odd residue degree; residue fields must contain F'")]
    OddResidueDegree(String),
    #[error("the degree map is not G-invariant on the compiled module")]
    DegreeNotEquivariant,
    #[error("element is not fixed under G")]
    NotFixed,
    #[error("valuation at place {0:?} is not divisible by the ramification index")]
    ValuationNotDivisible(String),
    #[error("element does not come from the torus fragment")]
    NotOnTorus,
    #[error(transparent)]
    Module(#[from] crate::gmodules::ModuleError),
}

/// A place of `K` in the modeled finite set, with `f_v = [F_v : F]`.
#[derive(Debug, Clone)]
pub struct KPlaceDecl {
    pub name: String,
    pub residue_degree: u32,
}

/// The local group carried by a place of `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalGroupDecl {
    /// `L_w^× / O_w^×  ≅ Z`: one generator, the valuation itself.
    Valuation,
    /// The biquadratic fragment of the local module (3 generators,
    /// `4i = 0`); only allowed at places fixed by all of `G`.
    Fragment,
}

#[derive(Debug, Clone)]
pub struct PlaceDecl {
    pub name: String,
    /// Name of the K-place this place lies over.
    pub over: String,
    /// `f_w = [F_w : F]`.
    pub residue_degree: u32,
    /// `e(w/v)`.
    pub ramification: u32,
    pub local: LocalGroupDecl,
}

/// A declared finite set of places of `L` with a compatible G-action,
/// compiled into one presented module carrying the degree map.
#[derive(Debug, Clone)]
pub struct PlaceSystem {
    group: Arc<FiniteGroup>,
    k_places: Vec<KPlaceDecl>,
    places: Vec<PlaceDecl>,
    perm: Vec<Vec<usize>>,
    frag: LocalFragment,
    offsets: Vec<usize>,
    idele_module: Arc<FgAbGModule>,
    deg_row: IntMat,
}

impl PlaceSystem {
    /// Validates the declaration and compiles the idele module. `perm` is
    /// indexed `perm[g][place] = g·place`.
    pub fn new(
        group: Arc<FiniteGroup>,
        k_places: Vec<KPlaceDecl>,
        places: Vec<PlaceDecl>,
        perm: Vec<Vec<usize>>,
    ) -> Result<Self, IdeleError> {
        let n = places.len();
        for i in 0..n {
            for j in i + 1..n {
                if places[i].name == places[j].name {
                    return Err(IdeleError::DuplicateName(places[i].name.clone()));
                }
            }
        }
        for p in &places {
            if !k_places.iter().any(|k| k.name == p.over) {
                return Err(IdeleError::UnknownKPlace(p.name.clone()));
            }
        }
        // a genuine G-action on the place set
        if perm.len() != group.order() || perm.iter().any(|p| p.len() != n) {
            return Err(IdeleError::BadPermutation);
        }
        for row in &perm {
            let mut seen = vec![false; n];
            for &img in row {
                if img >= n || seen[img] {
                    return Err(IdeleError::BadPermutation);
                }
                seen[img] = true;
            }
        }
        if perm[group.identity()] != (0..n).collect::<Vec<_>>() {
            return Err(IdeleError::BadPermutation);
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                for i in 0..n {
                    if perm[g][perm[h][i]] != perm[gh][i] {
                        return Err(IdeleError::BadPermutation);
                    }
                }
            }
        }
        for (i, p) in places.iter().enumerate() {
            let fixed = (0..group.order()).all(|g| perm[g][i] == i);
            if p.local == LocalGroupDecl::Fragment && !fixed {
                return Err(IdeleError::NonfixedModulePlace(p.name.clone()));
            }
            for g in 0..group.order() {
                let q = &places[perm[g][i]];
                if q.residue_degree != p.residue_degree
                    || q.ramification != p.ramification
                    || q.over != p.over
                    || q.local != p.local
                {
                    return Err(IdeleError::OrbitInconsistent(p.name.clone()));
                }
            }
        }
        // each fiber is one orbit and satisfies Σ e·f(w/v) = |G|
        for k in &k_places {
            let fiber: Vec<usize> = (0..n).filter(|&i| places[i].over == k.name).collect();
            if fiber.is_empty() {
                continue;
            }
            let first = fiber[0];
            let orbit: Vec<usize> = {
                let mut o: Vec<usize> =
                    (0..group.order()).map(|g| perm[g][first]).collect();
                o.sort_unstable();
                o.dedup();
                o
            };
            if orbit != fiber {
                return Err(IdeleError::FiberNotOneOrbit(k.name.clone()));
            }
            let mut total = 0u32;
            for &i in &fiber {
                let p = &places[i];
                if !p.residue_degree.is_multiple_of(k.residue_degree) {
                    return Err(IdeleError::ResidueDegreeNotMultiple(p.name.clone()));
                }
                total += p.ramification * (p.residue_degree / k.residue_degree);
            }
            if total != group.order() as u32 {
                return Err(IdeleError::FiberDegreeMismatch {
                    k_place: k.name.clone(),
                    got: total,
                    want: group.order() as u32,
                });
            }
        }

        let frag = localfield::fragment();
        let mut offsets = Vec::with_capacity(n);
        let mut total_gens = 0usize;
        for p in &places {
            offsets.push(total_gens);
            total_gens += match p.local {
                LocalGroupDecl::Valuation => 1,
                LocalGroupDecl::Fragment => 3,
            };
        }
        let mut relations = IntMat::zero(total_gens, 0);
        for (i, p) in places.iter().enumerate() {
            if p.local == LocalGroupDecl::Fragment {
                let mut col = IntMat::zero(total_gens, 1);
                col[(offsets[i] + 2, 0)] = BigInt::from(4);
                relations = relations.hstack(&col);
            }
        }
        let mut action = Vec::with_capacity(group.order());
        for (g, perm_row) in perm.iter().enumerate() {
            let mut a = IntMat::zero(total_gens, total_gens);
            for (i, p) in places.iter().enumerate() {
                let j = perm_row[i];
                match p.local {
                    LocalGroupDecl::Valuation => {
                        a[(offsets[j], offsets[i])] = BigInt::one();
                    }
                    LocalGroupDecl::Fragment => {
                        let block = frag.module.action(g);
                        for r in 0..3 {
                            for c in 0..3 {
                                a[(offsets[j] + r, offsets[i] + c)] = block[(r, c)].clone();
                            }
                        }
                    }
                }
            }
            action.push(a);
        }
        let idele_module = Arc::new(FgAbGModule::new(
            Arc::clone(&group),
            total_gens,
            relations,
            action,
        )?);

        let mut deg_row = IntMat::zero(1, total_gens);
        for (i, p) in places.iter().enumerate() {
            let f = BigInt::from(p.residue_degree);
            match p.local {
                LocalGroupDecl::Valuation => deg_row[(0, offsets[i])] = f,
                LocalGroupDecl::Fragment => deg_row[(0, offsets[i])] = f,
            }
        }
        for g in 0..group.order() {
            if deg_row.mul(idele_module.action(g)) != deg_row {
                return Err(IdeleError::DegreeNotEquivariant);
            }
        }
        if !deg_row.mul(idele_module.relations()).is_zero() {
            return Err(IdeleError::DegreeNotEquivariant);
        }

        Ok(PlaceSystem {
            group,
            k_places,
            places,
            perm,
            frag,
            offsets,
            idele_module,
            deg_row,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn idele_module(&self) -> &Arc<FgAbGModule> {
        &self.idele_module
    }

    pub fn places(&self) -> &[PlaceDecl] {
        &self.places
    }

    pub fn fragment(&self) -> &LocalFragment {
        &self.frag
    }

    pub fn place_index(&self, name: &str) -> Option<usize> {
        self.places.iter().position(|p| p.name == name)
    }

    /// How `g` permutes the place indices.
    pub fn place_permutation(&self, g: usize) -> &[usize] {
        &self.perm[g]
    }

    fn gen_count(&self, i: usize) -> usize {
        match self.places[i].local {
            LocalGroupDecl::Valuation => 1,
            LocalGroupDecl::Fragment => 3,
        }
    }

    /// An idele fragment supported at one place.
    pub fn idele_at(&self, place: &str, local: &IntMat) -> IntMat {
        let i = self.place_index(place).expect("declared place");
        assert_eq!(local.rows(), self.gen_count(i));
        let mut v = IntMat::zero(self.idele_module.n_gens(), 1);
        for r in 0..local.rows() {
            v[(self.offsets[i] + r, 0)] = local[(r, 0)].clone();
        }
        v
    }

    fn component(&self, xi: &IntMat, i: usize) -> IntMat {
        IntMat::from_fn(self.gen_count(i), 1, |r, _| xi[(self.offsets[i] + r, 0)].clone())
    }

    fn local_valuation(&self, i: usize, local: &IntMat) -> BigInt {
        match self.places[i].local {
            LocalGroupDecl::Valuation => local[(0, 0)].clone(),
            LocalGroupDecl::Fragment => local[(0, 0)].clone(),
        }
    }

    /// `deg_{L,F}(ξ) = Σ [F_w:F] · w(ξ_w)`.
    pub fn deg_l_f(&self, xi: &IntMat) -> BigInt {
        self.deg_row.mul(xi)[(0, 0)].clone()
    }

    pub fn is_fixed(&self, xi: &IntMat) -> bool {
        (0..self.group.order()).all(|g| {
            self.idele_module
                .congruent(&self.idele_module.action(g).mul(xi), xi)
        })
    }

    /// `deg_{K,F}` of a G-fixed idele: per fiber, the common value
    /// `w(ξ_w)/e_w` weighted by `[F_v : F]`.
    pub fn deg_k_f(&self, xi: &IntMat) -> Result<BigInt, IdeleError> {
        if !self.is_fixed(xi) {
            return Err(IdeleError::NotFixed);
        }
        let mut total = BigInt::zero();
        for k in &self.k_places {
            let fiber: Vec<usize> = (0..self.places.len())
                .filter(|&i| self.places[i].over == k.name)
                .collect();
            let mut common: Option<BigInt> = None;
            for &i in &fiber {
                let w = self.local_valuation(i, &self.component(xi, i));
                let e = BigInt::from(self.places[i].ramification);
                let (q, r) = w.div_rem(&e);
                if !r.is_zero() {
                    return Err(IdeleError::ValuationNotDivisible(
                        self.places[i].name.clone(),
                    ));
                }
                match &common {
                    None => common = Some(q),
                    Some(c) => {
                        if *c != q {
                            return Err(IdeleError::NotFixed);
                        }
                    }
                }
            }
            if let Some(v) = common {
                total += BigInt::from(k.residue_degree) * v;
            }
        }
        Ok(total)
    }

    /// The diagonal images of local K-generators, with their K-degrees:
    /// one uniformizer per valuation fiber, the `K^×`-fragment generators
    /// at module places.
    pub fn diagonal_k_generators(&self) -> Vec<(String, IntMat, BigInt)> {
        let mut out = Vec::new();
        let k_fragment = fixed_points(&self.frag.module);
        for k in &self.k_places {
            let fiber: Vec<usize> = (0..self.places.len())
                .filter(|&i| self.places[i].over == k.name)
                .collect();
            if fiber.is_empty() {
                continue;
            }
            if self.places[fiber[0]].local == LocalGroupDecl::Fragment {
                let i = fiber[0];
                for c in 0..k_fragment.lifts.cols() {
                    let lift = k_fragment.lifts.column(c);
                    let w = self.frag.valuation(&lift);
                    let e = BigInt::from(self.places[i].ramification);
                    let v = w.div_rem(&e);
                    assert!(v.1.is_zero(), "K-fragment lifts have e-divisible valuation");
                    let deg_k = BigInt::from(k.residue_degree) * v.0;
                    out.push((
                        format!("diag({}, gen{})", k.name, c),
                        self.idele_at(&self.places[i].name, &lift),
                        deg_k,
                    ));
                }
            } else {
                let mut xi = IntMat::zero(self.idele_module.n_gens(), 1);
                for &i in &fiber {
                    xi[(self.offsets[i], 0)] = BigInt::from(self.places[i].ramification);
                }
                out.push((
                    format!("diag({}, uniformizer)", k.name),
                    xi,
                    BigInt::from(k.residue_degree),
                ));
            }
        }
        out
    }

    /// Check that every residue degree is even (the residue fields all
    /// contain the quadratic extension `F'`).
    pub fn require_even_residue_degrees(&self) -> Result<(), IdeleError> {
        for p in &self.places {
            if p.residue_degree % 2 != 0 {
                return Err(IdeleError::OddResidueDegree(p.name.clone()));
            }
        }
        Ok(())
    }
}

fn klein_perm_fixing_all(n: usize) -> Vec<Vec<usize>> {
    vec![(0..n).collect(); 4]
}

/// The function-field preset: `K = F(λ)`, `L = F'(√λ)`. Places: the
/// ramified biquadratic place over λ = 0 carrying the local fragment, the
/// split pair over λ = 1 (σ decomposes, τ swaps), and the ramified place
/// at infinity, again with the fragment. All residue degrees are even.
pub fn function_field_preset() -> PlaceSystem {
    let group = crate::groups::klein_four();
    let t = group.element_by_label("τ").unwrap();
    let st = group.mul(group.element_by_label("σ").unwrap(), t);
    let k_places = vec![
        KPlaceDecl {
            name: "v0".into(),
            residue_degree: 1,
        },
        KPlaceDecl {
            name: "v1".into(),
            residue_degree: 1,
        },
        KPlaceDecl {
            name: "vinf".into(),
            residue_degree: 1,
        },
    ];
    let places = vec![
        PlaceDecl {
            name: "w0".into(),
            over: "v0".into(),
            residue_degree: 2,
            ramification: 2,
            local: LocalGroupDecl::Fragment,
        },
        PlaceDecl {
            name: "w1".into(),
            over: "v1".into(),
            residue_degree: 2,
            ramification: 1,
            local: LocalGroupDecl::Valuation,
        },
        PlaceDecl {
            name: "w1'".into(),
            over: "v1".into(),
            residue_degree: 2,
            ramification: 1,
            local: LocalGroupDecl::Valuation,
        },
        PlaceDecl {
            name: "winf".into(),
            over: "vinf".into(),
            residue_degree: 2,
            ramification: 2,
            local: LocalGroupDecl::Fragment,
        },
    ];
    let mut perm = klein_perm_fixing_all(places.len());
    // τ and στ swap the split pair; σ fixes everything
    perm[t] = vec![0, 2, 1, 3];
    perm[st] = vec![0, 2, 1, 3];
    let system = PlaceSystem::new(group, k_places, places, perm)
        .expect("the preset declaration is consistent");
    system
        .require_even_residue_degrees()
        .expect("all preset residue degrees are even");
    system
}

/// The preset with an extra totally split fiber (four valuation places
/// permuted simply transitively, residue degree 2 over a degree-2 K-place).
pub fn function_field_preset_enlarged() -> PlaceSystem {
    let group = crate::groups::klein_four();
    let s = group.element_by_label("σ").unwrap();
    let t = group.element_by_label("τ").unwrap();
    let st = group.mul(s, t);
    let base = function_field_preset();
    let mut k_places = base.k_places.clone();
    k_places.push(KPlaceDecl {
        name: "v2".into(),
        residue_degree: 2,
    });
    let mut places = base.places.clone();
    for i in 0..4 {
        places.push(PlaceDecl {
            name: format!("w2_{i}"),
            over: "v2".into(),
            residue_degree: 2,
            ramification: 1,
            local: LocalGroupDecl::Valuation,
        });
    }
    // the new places sit at indices 4..8, indexed by group elements
    let mut perm = klein_perm_fixing_all(places.len());
    perm[t][1] = 2;
    perm[t][2] = 1;
    perm[st][1] = 2;
    perm[st][2] = 1;
    for g in [s, t, st] {
        for i in 0..4 {
            perm[g][4 + i] = 4 + group.mul(g, i);
        }
    }
    let system = PlaceSystem::new(group, k_places, places, perm)
        .expect("the enlarged preset is consistent");
    system
        .require_even_residue_degrees()
        .expect("all enlarged preset residue degrees are even");
    system
}

/// `T(A_K)` at fragment scale: the fixed points of `T_* ⊗ I_L` over the
/// declared place system, with the ambient tensor machinery around it.
pub struct TorusIdeles {
    pub system: PlaceSystem,
    pub klein: KleinData,
    pub tensor: Arc<FgAbGModule>,
    pub ambient: Arc<FgAbGModule>,
    /// `T_* ⊗ I_L → (Z[G] ⊕ I_G) ⊗ I_L`
    pub embed: ModuleMap,
    pub fixed: FixedPoints,
}

pub fn torus_ideles(system: PlaceSystem) -> TorusIdeles {
    let klein = klein::build().expect("Klein data assembles");
    let tensor = Arc::new(
        tensor_lattice_module(&klein.tstar, system.idele_module()).expect("same group"),
    );
    let ambient = Arc::new(
        tensor_lattice_module(&klein.zg_plus_ig, system.idele_module()).expect("same group"),
    );
    let n = system.idele_module().n_gens();
    let embed = ModuleMap::new(
        Arc::clone(&tensor),
        Arc::clone(&ambient),
        klein.embed.matrix().kronecker(&IntMat::identity(n)),
    )
    .expect("the tensored embedding is equivariant");
    let fixed = fixed_points(&tensor);
    TorusIdeles {
        system,
        klein,
        tensor,
        ambient,
        embed,
        fixed,
    }
}

impl TorusIdeles {
    /// `deg_{L,F,T}` on a fixed element of `T_* ⊗ I_L`: apply
    /// `id ⊗ deg_{L,F}` and land in `T_*^G`.
    pub fn deg_t(&self, xi: &IntMat) -> Result<IntMat, IdeleError> {
        let fixed_under_g = (0..4).all(|g| {
            self.tensor
                .congruent(&self.tensor.action(g).mul(xi), xi)
        });
        if !fixed_under_g {
            return Err(IdeleError::NotFixed);
        }
        let id4 = IntMat::identity(4);
        let value = id4.kronecker(&self.system.deg_row).mul(xi);
        let fixed_line = fixed_sublattice(&self.klein.tstar, &self.klein.group.full_subgroup());
        assert!(
            in_column_span(&fixed_line, &value),
            "degree of a fixed element lies in T_*^G"
        );
        Ok(value)
    }

    /// The identification `T_*^G → Z[G]^G ≅ Z` through the first
    /// coordinate, normalized by `N_G ↦ 1`.
    pub fn fixed_value_to_z(&self, value: &IntMat) -> BigInt {
        let in_ambient = self.klein.embed.matrix().mul(value);
        let first = in_ambient.row_range(0, 4);
        let c = first[(0, 0)].clone();
        for i in 1..4 {
            assert_eq!(first[(i, 0)], c, "first coordinate is a multiple of N_G");
        }
        c
    }

    /// The fixed element of `T_* ⊗ I_L` carried by a local torus point at
    /// a fragment place: `Z[G]`-blocks hold `g(t)`, `I_G`-blocks `g(x)`,
    /// all supported at that place.
    pub fn global_point_at(
        &self,
        place: &str,
        point: &LocalTorusPoint,
    ) -> Result<IntMat, IdeleError> {
        let sys = &self.system;
        let i = sys.place_index(place).expect("declared place");
        assert_eq!(
            sys.places[i].local,
            LocalGroupDecl::Fragment,
            "torus points live at module places"
        );
        let group = sys.group();
        let n = sys.idele_module().n_gens();
        let mut v = IntMat::zero(0, 1);
        for g in 0..group.order() {
            let local = sys.frag.module.action(g).mul(&point.t);
            v = v.vstack(&sys.idele_at(place, &local));
        }
        for g in 0..group.order() {
            if g == group.identity() {
                continue;
            }
            let local = sys.frag.module.action(g).mul(&point.x);
            v = v.vstack(&sys.idele_at(place, &local));
        }
        debug_assert_eq!(v.rows(), 7 * n);
        let xi = solve_preimage(&self.embed, &v).ok_or(IdeleError::NotOnTorus)?;
        if !(0..group.order())
            .all(|g| self.tensor.congruent(&self.tensor.action(g).mul(&xi), &xi))
        {
            return Err(IdeleError::NotFixed);
        }
        Ok(xi)
    }
}

/// Lemma data: the evaluation pairing `(M°)^G ↪ (M^G)°`.
pub struct Lemma31 {
    pub pairing: IntMat,
    pub injective: bool,
    pub cokernel: AbGroupClass,
}

/// The map induced by `M^G ⊂ M` from invariant functionals to functionals
/// on the fixed sublattice, with its (always finite) cokernel.
pub fn lemma_3_1(m: &GLattice) -> Lemma31 {
    let whole = m.group().full_subgroup();
    let fixed = fixed_sublattice(m, &whole);
    let dual_fixed = fixed_sublattice(&dual(m), &whole);
    let pairing = fixed.transpose().mul(&dual_fixed);
    let injective = kernel_basis(&pairing).cols() == 0;
    let cokernel = quotient_class(fixed.cols(), &pairing);
    Lemma31 {
        pairing,
        injective,
        cokernel,
    }
}

/// Both routes of the degree comparison on every generator of the
/// fixed-point module: pairing the `T_*^G`-valued degree against each
/// invariant character versus `[L:K] = 4` times the K-degree of the
/// character applied pointwise.
pub fn verify_lemma_3_2(ti: &TorusIdeles) -> CheckReport {
    let mut report = CheckReport::new();
    let characters = fixed_sublattice(&dual(&ti.klein.tstar), &ti.klein.group.full_subgroup());
    let n = ti.system.idele_module().n_gens();
    let mut all_equal = true;
    let mut detail = String::new();
    for j in 0..ti.fixed.n_gens() {
        let xi = ti.fixed.lifts.column(j);
        let value = match ti.deg_t(&xi) {
            Ok(v) => v,
            Err(e) => {
                all_equal = false;
                detail = format!("generator {j}: {e}");
                break;
            }
        };
        for c in 0..characters.cols() {
            let chi = characters.column(c);
            let lhs = chi.transpose().mul(&value)[(0, 0)].clone();
            let z = chi.transpose().kronecker(&IntMat::identity(n)).mul(&xi);
            let rhs = match ti.system.deg_k_f(&z) {
                Ok(d) => BigInt::from(4) * d,
                Err(e) => {
                    all_equal = false;
                    detail = format!("generator {j}, character {c}: {e}");
                    continue;
                }
            };
            if lhs != rhs {
                all_equal = false;
                detail = format!("generator {j}, character {c}: {lhs} ≠ {rhs}");
            }
        }
    }
    report.push_with_witness(
        "lemma_3_2_routes",
        all_equal,
        "pairing ∘ deg_T = 4 · deg_{T,K,F} on all fixed-point generators",
        if detail.is_empty() { None } else { Some(detail) },
    );

    // compactly supported unit ideles map to 0 on both routes
    let frag = ti.system.fragment().clone();
    let unit_point = localfield::torus_point(&frag, frag.unit_i(), frag.module.zero_element())
        .expect("(i, 1) is a torus point");
    let compact = ti
        .global_point_at("w0", &unit_point)
        .expect("unit point globalizes");
    let compact_deg = ti.deg_t(&compact).map(|v| ti.fixed_value_to_z(&v));
    report.push_with_witness(
        "lemma_3_2_compact",
        compact_deg.as_ref().map(|d| d.is_zero()).unwrap_or(false),
        "deg_T vanishes on a compactly supported unit idele",
        compact_deg.ok().map(|d| d.to_string()),
    );
    report
}

/// Smallest nonnegative generator of the subgroup of `Z` generated by the
/// given values.
fn subgroup_generator(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// The two halves of the strict-containment statement: the P-route image
/// lies in `4Z`, while a single local point of valuation 1 pushes the
/// T-route image down to 2.
pub fn verify_prop_6_1() -> CheckReport {
    let mut report = CheckReport::new();
    let system = function_field_preset();
    report.push(
        "prop_6_1_even_degrees",
        system.require_even_residue_degrees().is_ok(),
        "every residue degree in the preset is even",
    );

    let group = system.group().clone();
    let s = group.element_by_label("σ").unwrap();
    let t = group.element_by_label("τ").unwrap();
    let module = system.idele_module().clone();
    let n = module.n_gens();

    // (a): all three blocks of the P-route
    let mut values: Vec<BigInt> = Vec::new();
    let mut diag_matches_4degk = true;
    for (_, xi, deg_k) in system.diagonal_k_generators() {
        let d = system.deg_l_f(&xi);
        if d != BigInt::from(4) * &deg_k {
            diag_matches_4degk = false;
        }
        values.push(d);
    }
    report.push(
        "prop_6_1_diag_4degk",
        diag_matches_4degk,
        "deg_{L,F} of a diagonal K-idele is 4·deg_{K,F}",
    );
    let id = IntMat::identity(n);
    let op_beta = id.add(module.action(t)).mul(module.action(s));
    let op_gamma = id.add(module.action(s)).mul(module.action(t));
    for op in [&op_beta, &op_gamma] {
        for j in 0..n {
            let e = IntMat::from_fn(n, 1, |i, _| BigInt::from(u8::from(i == j)));
            values.push(system.deg_l_f(&op.mul(&e)));
        }
    }
    let generator = subgroup_generator(&values);
    let in_4z = generator.mod_floor(&BigInt::from(4)).is_zero();
    report.push_with_witness(
        "prop_6_1_a",
        in_4z,
        "the P-route image subgroup of Z is contained in 4Z",
        Some(format!("generated by {generator}")),
    );

    // (b): the local witness at the fragment place over λ = 0
    let ti = torus_ideles(system);
    let frag = ti.system.fragment().clone();
    let point = localfield::torus_point(&frag, frag.sqrt_u_pi(), frag.unit_i())
        .expect("(√(uπ), i) is a torus point");
    let witness_value = ti
        .global_point_at("w0", &point)
        .and_then(|xi| ti.deg_t(&xi))
        .map(|v| ti.fixed_value_to_z(&v));
    let is_two = witness_value
        .as_ref()
        .map(|v| *v == BigInt::from(2))
        .unwrap_or(false);
    report.push_with_witness(
        "prop_6_1_b",
        is_two,
        "the T-route image contains 2",
        witness_value.as_ref().ok().map(|v| v.to_string()),
    );

    // the T-route subgroup over all fixed-point generators; the witness
    // already forces 2 into it
    let mut t_values: Vec<BigInt> = Vec::new();
    for j in 0..ti.fixed.n_gens() {
        let xi = ti.fixed.lifts.column(j);
        if let Ok(v) = ti.deg_t(&xi) {
            t_values.push(ti.fixed_value_to_z(&v));
        }
    }
    let t_gen = subgroup_generator(&t_values);
    report.push_with_witness(
        "prop_6_1_t_route",
        t_gen == BigInt::from(2),
        "the T-route image subgroup at fragment scale is 2Z",
        Some(format!("generated by {t_gen}")),
    );

    let strict = in_4z
        && witness_value
            .map(|v| !v.mod_floor(&BigInt::from(4)).is_zero())
            .unwrap_or(false);
    report.push_with_witness(
        "prop_6_1_verdict",
        strict,
        "witnessed strict containment of the P-route image in the T-route image",
        Some("2 lies in the T-route image but not in 4Z; order-2 quotient class".into()),
    );
    report
}

/// The full idele-degree suite.
pub fn global_suite() -> CheckReport {
    let mut report = verify_prop_6_1();
    let klein = klein::build().expect("Klein data assembles");
    let g = &klein.group;
    let z = crate::lattices::trivial_lattice(g, 1);
    let lattices: [(&str, &GLattice); 4] = [
        ("Z", &z),
        ("ZG", &klein.zg),
        ("IG", &klein.ig),
        ("Tstar", &klein.tstar),
    ];
    for (name, m) in lattices {
        let l = lemma_3_1(m);
        report.push_with_witness(
            &format!("lemma_3_1_injective_{name}"),
            l.injective,
            &format!("(M°)^G → (M^G)° is injective for M = {name}"),
            Some(format!("cokernel {}", l.cokernel)),
        );
    }
    let zg_coker = lemma_3_1(&klein.zg).cokernel;
    report.push_with_witness(
        "lemma_3_1_coker_ZG",
        zg_coker == AbGroupClass::new(0, vec![BigInt::from(4)]),
        "the pairing cokernel for Z[G] is Z/4",
        Some(zg_coker.to_string()),
    );
    let ti = torus_ideles(function_field_preset());
    report.merge(verify_lemma_3_2(&ti));

    // deg_T kills anything supported on valuation-0 local generators
    let id4 = IntMat::identity(4);
    let deg_map = id4.kronecker(&ti.system.deg_row);
    let n = ti.system.idele_module().n_gens();
    let mut kills_units = true;
    for amb in 0..4 {
        for j in 0..n {
            if !ti.system.deg_row.column(j).is_zero() {
                continue;
            }
            let mut v = IntMat::zero(4 * n, 1);
            v[(amb * n + j, 0)] = BigInt::one();
            if !deg_map.mul(&v).is_zero() {
                kills_units = false;
            }
        }
    }
    report.push(
        "deg_t_kills_units",
        kills_units,
        "id ⊗ deg vanishes on valuation-0 supported vectors",
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::klein_four;
    use crate::lattices::{augmentation_kernel, regular_lattice, trivial_lattice};

    #[test]
    fn preset_compiles_and_deg_is_invariant() {
        let sys = function_field_preset();
        assert_eq!(sys.idele_module().n_gens(), 8);
        for g in 0..4 {
            assert_eq!(sys.deg_row.mul(sys.idele_module().action(g)), sys.deg_row);
        }
    }

    #[test]
    fn deg_l_f_values() {
        let sys = function_field_preset();
        // empty support
        let zero = IntMat::zero(8, 1);
        assert_eq!(sys.deg_l_f(&zero), BigInt::zero());
        // single valuation place with f = 2, local valuation 1
        let xi = sys.idele_at("w1", &IntMat::from_rows(&[vec![1]]));
        assert_eq!(sys.deg_l_f(&xi), BigInt::from(2));
        // G-equivariance on generators
        for j in 0..8 {
            let e = IntMat::from_fn(8, 1, |i, _| BigInt::from(u8::from(i == j)));
            for g in 0..4 {
                assert_eq!(
                    sys.deg_l_f(&sys.idele_module().action(g).mul(&e)),
                    sys.deg_l_f(&e)
                );
            }
        }
    }

    #[test]
    fn diagonal_ideles_are_fixed_with_degree_four() {
        let sys = function_field_preset();
        for (name, xi, deg_k) in sys.diagonal_k_generators() {
            assert!(sys.is_fixed(&xi), "diagonal idele {name} is fixed");
            assert_eq!(sys.deg_l_f(&xi), BigInt::from(4) * &deg_k, "{name}");
            assert_eq!(sys.deg_k_f(&xi).unwrap(), deg_k, "{name}");
        }
    }

    #[test]
    fn lemma_3_1_values() {
        let g = klein_four();
        let z = trivial_lattice(&g, 1);
        let l = lemma_3_1(&z);
        assert!(l.injective);
        assert!(l.cokernel.is_trivial());

        let zg = regular_lattice(&g);
        let l = lemma_3_1(&zg);
        assert!(l.injective);
        assert_eq!(l.cokernel, AbGroupClass::new(0, vec![BigInt::from(4)]));

        let (ig, _) = augmentation_kernel(&g);
        let l = lemma_3_1(&ig);
        assert!(l.injective, "vacuously injective on rank 0");
        assert!(l.cokernel.is_trivial());

        let klein = klein::build().unwrap();
        let l = lemma_3_1(&klein.tstar);
        assert!(l.injective);
        // the pairing index 2 is what makes every T-route degree even
        assert_eq!(l.cokernel, AbGroupClass::new(0, vec![BigInt::from(2)]));
    }

    #[test]
    fn lemma_3_2_routes_agree() {
        let ti = torus_ideles(function_field_preset());
        let report = verify_lemma_3_2(&ti);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn diagonal_ideles_tensored_with_the_norm_line() {
        // deg_T(t_N ⊗ diag(κ)) = 4·deg_K(κ) under the N_G ↦ 1 identification
        let ti = torus_ideles(function_field_preset());
        let t_n = ti.klein.norm_embedding.matrix().column(0);
        for (name, z, deg_k) in ti.system.diagonal_k_generators() {
            let xi = t_n.kronecker(&z);
            let value = ti.deg_t(&xi).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(
                ti.fixed_value_to_z(&value),
                BigInt::from(4) * deg_k,
                "{name}"
            );
        }
    }

    #[test]
    fn prop_6_1_passes() {
        let report = verify_prop_6_1();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn prop_6_1_a_stable_under_enlargement() {
        let sys = function_field_preset_enlarged();
        assert_eq!(sys.idele_module().n_gens(), 12);
        let module = sys.idele_module().clone();
        let group = sys.group().clone();
        let s = group.element_by_label("σ").unwrap();
        let t = group.element_by_label("τ").unwrap();
        let mut values: Vec<BigInt> = Vec::new();
        for (_, xi, _) in sys.diagonal_k_generators() {
            values.push(sys.deg_l_f(&xi));
        }
        let n = module.n_gens();
        let id = IntMat::identity(n);
        for op in [
            id.add(module.action(t)).mul(module.action(s)),
            id.add(module.action(s)).mul(module.action(t)),
        ] {
            for j in 0..n {
                let e = IntMat::from_fn(n, 1, |i, _| BigInt::from(u8::from(i == j)));
                values.push(sys.deg_l_f(&op.mul(&e)));
            }
        }
        let gen = subgroup_generator(&values);
        assert!(gen.mod_floor(&BigInt::from(4)).is_zero());
    }

    #[test]
    fn odd_residue_degree_rejected() {
        let group = klein_four();
        // a fiber that passes the structural checks but has an odd residue
        // degree: one place, e = 4, f = 1
        let k_places = vec![KPlaceDecl {
            name: "v".into(),
            residue_degree: 1,
        }];
        let places = vec![PlaceDecl {
            name: "w".into(),
            over: "v".into(),
            residue_degree: 1,
            ramification: 4,
            local: LocalGroupDecl::Valuation,
        }];
        let sys =
            PlaceSystem::new(group.clone(), k_places, places, klein_perm_fixing_all(1)).unwrap();
        assert!(matches!(
            sys.require_even_residue_degrees(),
            Err(IdeleError::OddResidueDegree(_))
        ));

        // and a degree-3 fragment place violates the fiber identity outright
        let k_places = vec![KPlaceDecl {
            name: "v0".into(),
            residue_degree: 1,
        }];
        let places = vec![PlaceDecl {
            name: "w0".into(),
            over: "v0".into(),
            residue_degree: 3,
            ramification: 2,
            local: LocalGroupDecl::Fragment,
        }];
        assert!(matches!(
            PlaceSystem::new(group, k_places, places, klein_perm_fixing_all(1)),
            Err(IdeleError::FiberDegreeMismatch { .. })
        ));
    }

    #[test]
    fn structural_validation_rejections() {
        let group = klein_four();
        let t = group.element_by_label("τ").unwrap();
        let st = group.element_by_label("στ").unwrap();
        let kp = |name: &str| KPlaceDecl {
            name: name.into(),
            residue_degree: 1,
        };
        let vp = |name: &str, over: &str, f: u32, e: u32| PlaceDecl {
            name: name.into(),
            over: over.into(),
            residue_degree: f,
            ramification: e,
            local: LocalGroupDecl::Valuation,
        };

        // a fragment place moved by the action is rejected
        let mut perm = klein_perm_fixing_all(2);
        perm[t] = vec![1, 0];
        perm[st] = vec![1, 0];
        let places = vec![
            PlaceDecl {
                name: "a".into(),
                over: "v".into(),
                residue_degree: 2,
                ramification: 1,
                local: LocalGroupDecl::Fragment,
            },
            PlaceDecl {
                name: "b".into(),
                over: "v".into(),
                residue_degree: 2,
                ramification: 1,
                local: LocalGroupDecl::Fragment,
            },
        ];
        assert!(matches!(
            PlaceSystem::new(group.clone(), vec![kp("v")], places, perm),
            Err(IdeleError::NonfixedModulePlace(_))
        ));

        // residue degrees must be constant on orbits
        let mut perm = klein_perm_fixing_all(2);
        perm[t] = vec![1, 0];
        perm[st] = vec![1, 0];
        let places = vec![vp("a", "v", 2, 1), vp("b", "v", 4, 1)];
        assert!(matches!(
            PlaceSystem::new(group.clone(), vec![kp("v")], places, perm),
            Err(IdeleError::OrbitInconsistent(_))
        ));

        // a fiber made of two separate orbits is rejected
        let places = vec![vp("a", "v", 2, 2), vp("b", "v", 2, 2)];
        assert!(matches!(
            PlaceSystem::new(
                group.clone(),
                vec![kp("v")],
                places,
                klein_perm_fixing_all(2)
            ),
            Err(IdeleError::FiberNotOneOrbit(_))
        ));

        // fiber degree bookkeeping: Σ e·f(w/v) must equal |G|
        let places = vec![vp("a", "v", 2, 2), vp("b", "v", 2, 2)];
        let mut perm = klein_perm_fixing_all(2);
        perm[t] = vec![1, 0];
        perm[st] = vec![1, 0];
        assert!(matches!(
            PlaceSystem::new(group, vec![kp("v")], places, perm),
            Err(IdeleError::FiberDegreeMismatch { got: 8, .. })
        ));
    }

    #[test]
    fn bad_permutations_rejected() {
        let group = klein_four();
        let k_places = vec![
            KPlaceDecl {
                name: "v".into(),
                residue_degree: 1,
            },
        ];
        let places = vec![
            PlaceDecl {
                name: "a".into(),
                over: "v".into(),
                residue_degree: 2,
                ramification: 1,
                local: LocalGroupDecl::Valuation,
            },
            PlaceDecl {
                name: "b".into(),
                over: "v".into(),
                residue_degree: 2,
                ramification: 1,
                local: LocalGroupDecl::Valuation,
            },
        ];
        // identity element must act as the identity permutation
        let mut perm = klein_perm_fixing_all(2);
        perm[0] = vec![1, 0];
        assert!(matches!(
            PlaceSystem::new(group, k_places, places, perm),
            Err(IdeleError::BadPermutation)
        ));
    }

    #[test]
    fn global_suite_passes() {
        let report = global_suite();
        assert!(report.passed(), "{report}");
    }
}
