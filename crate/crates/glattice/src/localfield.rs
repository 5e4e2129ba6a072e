//! The multiplicative fragment of `L^×` for the ramified biquadratic
//! extension `L = K(√π, √u)` of a local field with residue characteristic
//! ≠ 2 in which −1 is a square, together with the checks that make up the
//! local counterexample `T(K) ≠ T(O_K)·RT(K)`.
//!
//! Generators are `g₁ = √π`, `g₂ = √u`, `g₃ = i`, with the single relation
//! `4·g₃ = 0` (so `−1 = 2g₃`). Writing the group additively, `σ` fixes
//! `K(√π)` and moves `√u` to `−√u = g₂ + 2g₃`; `τ` fixes `K(√u)` and moves
//! `√π`. The normalized valuation is `w(e₁, e₂, m) = e₁`, so `w(√π) = 1`
//! and `w(α) = 2v(α)` on the `K^×`-fragment.

use crate::gmodules::{
    direct_sum_modules, fixed_points, tensor_lattice_module, with_trivial_action, FgAbGModule,
    FixedPoints, ModuleMap,
};
use crate::groups::klein_four;
use crate::klein::{self, KleinData};
use crate::lattices::{dual, fixed_sublattice, in_column_span};
use crate::matrix::{kernel_basis, same_column_span, IntMat};
use crate::report::CheckReport;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LocalFieldError {
    #[error("not a torus point: {equation} fails")]
    NotOnTorus { equation: &'static str },
}

/// The `L^×`-fragment as a presented module over the Klein four group.
#[derive(Debug, Clone)]
pub struct LocalFragment {
    pub module: Arc<FgAbGModule>,
}

/// Builds the fragment: `⟨√π, √u, i | 4i = 0⟩` with the biquadratic
/// Galois action.
pub fn fragment() -> LocalFragment {
    let group = klein_four();
    let s = group.element_by_label("σ").unwrap();
    let t = group.element_by_label("τ").unwrap();
    let st = group.mul(s, t);
    let mut action = vec![IntMat::identity(3); 4];
    // σ: (e₁, e₂, m) ↦ (e₁, e₂, m + 2e₂)
    action[s] = IntMat::from_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 2, 1]]);
    // τ: (e₁, e₂, m) ↦ (e₁, e₂, m + 2e₁)
    action[t] = IntMat::from_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![2, 0, 1]]);
    // στ: both square roots move
    action[st] = IntMat::from_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![2, 2, 1]]);
    let relations = IntMat::from_rows(&[vec![0], vec![0], vec![4]]);
    let module = Arc::new(
        FgAbGModule::new(group, 3, relations, action)
            .expect("the biquadratic action respects 4i = 0"),
    );
    LocalFragment { module }
}

impl LocalFragment {
    /// The normalized valuation `w`, surjective onto `Z` with `w(√π) = 1`.
    pub fn valuation(&self, v: &IntMat) -> BigInt {
        assert_eq!(v.rows(), 3);
        v[(0, 0)].clone()
    }

    pub fn valuation_row(&self) -> IntMat {
        IntMat::from_rows(&[vec![1, 0, 0]])
    }

    fn element(&self, e1: i64, e2: i64, m: i64) -> IntMat {
        IntMat::from_rows(&[vec![e1], vec![e2], vec![m]])
    }

    /// `√(uπ)` = g₁ + g₂.
    pub fn sqrt_u_pi(&self) -> IntMat {
        self.element(1, 1, 0)
    }

    /// `i` = g₃.
    pub fn unit_i(&self) -> IntMat {
        self.element(0, 0, 1)
    }
}

/// A point of `T(K) ⊂ L^× × L^{×,1}` at fragment scale: the membership
/// equations hold modulo the relations.
#[derive(Debug, Clone)]
pub struct LocalTorusPoint {
    pub t: IntMat,
    pub x: IntMat,
}

/// Validates the three membership equations
/// `σ(t) − t = x + τ(x)`, `τ(t) − t = x + σ(x)`, `N_G(x) = 0`.
pub fn torus_point(
    frag: &LocalFragment,
    t: IntMat,
    x: IntMat,
) -> Result<LocalTorusPoint, LocalFieldError> {
    let module = &frag.module;
    let group = module.group();
    let s = group.element_by_label("σ").unwrap();
    let ta = group.element_by_label("τ").unwrap();
    let lhs_sigma = module.action(s).mul(&t).sub(&t);
    let rhs_sigma = x.add(&module.action(ta).mul(&x));
    if !module.congruent(&lhs_sigma, &rhs_sigma) {
        return Err(LocalFieldError::NotOnTorus {
            equation: "σ(t) − t = x + τ(x)",
        });
    }
    let lhs_tau = module.action(ta).mul(&t).sub(&t);
    let rhs_tau = x.add(&module.action(s).mul(&x));
    if !module.congruent(&lhs_tau, &rhs_tau) {
        return Err(LocalFieldError::NotOnTorus {
            equation: "τ(t) − t = x + σ(x)",
        });
    }
    if !module.is_zero_class(&module.norm_operator().mul(&x)) {
        return Err(LocalFieldError::NotOnTorus {
            equation: "N_G(x) = 0",
        });
    }
    Ok(LocalTorusPoint { t, x })
}

/// The image map `P(K) → T(K) ⊂ L^×` of the explicit resolution:
/// `(α, β, γ) ↦ α + (σ + στ)β + (τ + στ)γ`, with the `K^×`-fragment
/// (the fixed points) as first block.
pub struct RtImage {
    pub map: ModuleMap,
    pub k_fragment: FixedPoints,
}

pub fn rt_image_map(frag: &LocalFragment) -> RtImage {
    let module = &frag.module;
    let group = module.group();
    let s = group.element_by_label("σ").unwrap();
    let t = group.element_by_label("τ").unwrap();
    let st = group.mul(s, t);
    let k_fragment = fixed_points(module);
    let k_module = with_trivial_action(group, k_fragment.n_gens(), k_fragment.relations.clone());
    let domain = Arc::new(
        direct_sum_modules(&[&k_module, module, module]).expect("same group"),
    );
    let beta_block = module.action(s).add(module.action(st));
    let gamma_block = module.action(t).add(module.action(st));
    let matrix = k_fragment.lifts.hstack(&beta_block).hstack(&gamma_block);
    let map = ModuleMap::new(domain, Arc::clone(module), matrix)
        .expect("the resolution image map is equivariant");
    RtImage { map, k_fragment }
}

/// The counterexample point: `(√(uπ), i)` is a torus point whose first
/// coordinate has valuation 1, while the subgroup reachable from
/// `T(O_K)·RT(K)` only produces even valuations.
pub fn verify_local_counterexample() -> CheckReport {
    let mut report = CheckReport::new();
    let frag = fragment();
    let point = torus_point(&frag, frag.sqrt_u_pi(), frag.unit_i());
    report.push(
        "local_point_on_torus",
        point.is_ok(),
        "(√(uπ), i) satisfies the torus membership equations",
    );
    let w = frag.valuation(&frag.sqrt_u_pi());
    report.push_with_witness(
        "local_witness_valuation",
        w == BigInt::from(1),
        "the first coordinate √(uπ) has normalized valuation 1",
        Some(w.to_string()),
    );

    let rt = rt_image_map(&frag);
    let image = rt.map.matrix();
    let vals: Vec<BigInt> = (0..image.cols())
        .map(|j| frag.valuation(&image.column(j)))
        .collect();
    let all_even = vals.iter().all(|v| v.mod_floor(&BigInt::from(2)).is_zero());
    report.push_with_witness(
        "local_rt_even_valuations",
        all_even,
        "every generator image of P(K) → L^× has even valuation",
        Some(format!("{vals:?}")),
    );
    let gcd = vals
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v));
    report.push_with_witness(
        "local_rt_valuations_2z",
        gcd == BigInt::from(2),
        "the subgroup of valuations reachable from RT(K) is exactly 2Z",
        Some(format!("generated by {gcd}")),
    );
    // the maximal compact subgroup contributes valuation 0, so the product
    // T(O_K)·RT(K) reaches only 0 + 2Z; parity is the obstruction
    let reachable_contains_one = BigInt::from(1).mod_floor(&gcd).is_zero();
    report.push(
        "local_compact_parity",
        !reachable_contains_one,
        "valuation-0 compact elements cannot change the parity reached by RT(K)",
    );
    report.push(
        "local_verdict",
        point.is_ok() && w == BigInt::from(1) && all_even && !reachable_contains_one,
        "T(K) ≠ T(O_K)·RT(K): counterexample confirmed",
    );
    report
}

/// Tensor coordinates in `(Z[G] ⊕ I_G) ⊗ A` of the element attached to a
/// pair `(t, x)`: the `Z[G]` blocks carry `g(t)`, the `I_G` blocks `g(x)`.
pub fn pair_to_ambient_tensor(frag: &LocalFragment, t: &IntMat, x: &IntMat) -> IntMat {
    let module = &frag.module;
    let group = module.group();
    let mut v = IntMat::zero(0, 1);
    for g in 0..group.order() {
        v = v.vstack(&module.action(g).mul(t));
    }
    for g in 0..group.order() {
        if g == group.identity() {
            continue;
        }
        v = v.vstack(&module.action(g).mul(x));
    }
    v
}

/// The fixed-point data of `T_* ⊗ fragment`, i.e. `T(K)` at fragment
/// scale, with the tensor machinery around it.
pub struct LocalTorus {
    pub klein: KleinData,
    pub frag: LocalFragment,
    pub tensor: Arc<FgAbGModule>,
    pub fixed: FixedPoints,
}

pub fn local_torus() -> LocalTorus {
    let klein = klein::build().expect("Klein data assembles");
    let frag = fragment();
    let tensor = Arc::new(
        tensor_lattice_module(&klein.tstar, &frag.module).expect("same group"),
    );
    let fixed = fixed_points(&tensor);
    LocalTorus {
        klein,
        frag,
        tensor,
        fixed,
    }
}

impl LocalTorus {
    /// `T_* ⊗ A → (Z[G] ⊕ I_G) ⊗ A` as a module map.
    pub fn embed_tensor(&self) -> ModuleMap {
        let ambient = Arc::new(
            tensor_lattice_module(&self.klein.zg_plus_ig, &self.frag.module)
                .expect("same group"),
        );
        ModuleMap::new(
            Arc::clone(&self.tensor),
            ambient,
            self.klein.embed.matrix().kronecker(&IntMat::identity(3)),
        )
        .expect("the tensored embedding is equivariant")
    }

    /// Coordinates in `T_* ⊗ A` of a torus point.
    pub fn point_coords(&self, point: &LocalTorusPoint) -> IntMat {
        let v = pair_to_ambient_tensor(&self.frag, &point.t, &point.x);
        crate::gmodules::solve_preimage(&self.embed_tensor(), &v)
            .expect("a validated torus point lies in the tensor image")
    }

    /// The map `P(K) → T(K) ⊂ T_* ⊗ A` induced by the explicit resolution
    /// on fixed points: the `K^×`-fragment block includes diagonally, the
    /// two `L^×` blocks go through the fixed-element correspondence of the
    /// `Z[G]` summands. Every image is a fixed tensor element, so the
    /// domain carries the trivial action.
    pub fn resolution_points_map(&self) -> ModuleMap {
        let group = self.frag.module.group().clone();
        let surj_tensor = self
            .klein
            .resolution
            .surjection()
            .matrix()
            .kronecker(&IntMat::identity(3)); // 12 × 27
        let k_fragment = fixed_points(&self.frag.module);
        let mut columns = IntMat::zero(12, 0);
        // Z-block: α ↦ (block 0) ⊗ α
        for c in 0..k_fragment.lifts.cols() {
            let mut v = k_fragment.lifts.column(c);
            v = v.vstack(&IntMat::zero(24, 1));
            columns = columns.hstack(&surj_tensor.mul(&v));
        }
        // Z[G]-blocks: β ↦ Σ_g g ⊗ g(β), offset past the rank-1 Z summand
        for block in 0..2 {
            for j in 0..3 {
                let e = IntMat::from_fn(3, 1, |i, _| BigInt::from(u8::from(i == j)));
                let mut w = IntMat::zero(27, 1);
                for g in 0..group.order() {
                    let local = self.frag.module.action(g).mul(&e);
                    for r in 0..3 {
                        w[(3 + (block * 4 + g) * 3 + r, 0)] = local[(r, 0)].clone();
                    }
                }
                columns = columns.hstack(&surj_tensor.mul(&w));
            }
        }
        let k_module = with_trivial_action(
            self.frag.module.group(),
            k_fragment.n_gens(),
            k_fragment.relations.clone(),
        );
        let frag_plain = with_trivial_action(
            self.frag.module.group(),
            3,
            self.frag.module.relations().clone(),
        );
        let domain = Arc::new(
            direct_sum_modules(&[&k_module, &frag_plain, &frag_plain]).expect("same group"),
        );
        ModuleMap::new(domain, Arc::clone(&self.tensor), columns)
            .expect("images are fixed, so the trivial-action domain is equivariant")
    }
}

/// Both valuation homomorphisms on `T(K)` and the formula `φ = e·ψ` with
/// `e = 2`: φ applies the valuation under `id ⊗ w` into `T_*^G` and pairs
/// with the invariant characters; ψ applies each invariant character
/// pointwise and takes the `K`-valuation `v = w/2` of the resulting
/// `K^×`-fragment element.
pub fn verify_phi_eq_e_psi() -> CheckReport {
    let mut report = CheckReport::new();
    let lt = local_torus();
    let tstar = &lt.klein.tstar;
    let group = tstar.group();
    let whole = group.full_subgroup();
    let w_row = lt.frag.valuation_row();
    let id4 = IntMat::identity(4);
    let val_map = id4.kronecker(&w_row); // 4 × 12
    let fixed_line = fixed_sublattice(tstar, &whole);
    let characters = fixed_sublattice(&dual(tstar), &whole);

    let n_gens = lt.fixed.n_gens();
    let deg_t = val_map.mul(&lt.fixed.lifts); // 4 × n_gens, lands in T_*^G
    let lands = (0..n_gens).all(|j| in_column_span(&fixed_line, &deg_t.column(j)));
    report.push(
        "phi_lands_in_fixed",
        lands,
        "id ⊗ w sends T(K) generators into T_*^G",
    );

    let phi = characters.transpose().mul(&deg_t); // r × n_gens
    let mut psi = IntMat::zero(characters.cols(), n_gens);
    let mut all_fixed = true;
    let mut all_even = true;
    for i in 0..characters.cols() {
        let chi_row = characters.column(i).transpose();
        let apply_chi = chi_row.kronecker(&IntMat::identity(3)); // 3 × 12
        for j in 0..n_gens {
            let z = apply_chi.mul(&lt.fixed.lifts.column(j));
            for g in 0..group.order() {
                if !lt.frag.module.congruent(&lt.frag.module.action(g).mul(&z), &z) {
                    all_fixed = false;
                }
            }
            let wz = lt.frag.valuation(&z);
            if wz.mod_floor(&BigInt::from(2)).is_zero() {
                psi[(i, j)] = wz / BigInt::from(2);
            } else {
                all_even = false;
            }
        }
    }
    report.push(
        "psi_lands_in_k_fragment",
        all_fixed && all_even,
        "each invariant character sends T(K) into the K^×-fragment (even w)",
    );
    report.push(
        "phi_eq_2psi",
        phi == psi.scale(&BigInt::from(2)),
        "φ = 2ψ on every generator and every invariant character (e = 2)",
    );
    // kernels agree: ψ vanishes exactly on the valuation-0 points
    let ker_psi = kernel_basis(&psi);
    let ker_val = kernel_basis(&deg_t);
    report.push(
        "psi_kernel_val0",
        same_column_span(&ker_psi, &ker_val),
        "kernel of ψ on the fragment = valuation-0 points (T(O_K) fragment)",
    );
    let zero = IntMat::zero(n_gens, 1);
    report.push(
        "phi_psi_zero_identity",
        phi.mul(&zero).is_zero() && psi.mul(&zero).is_zero(),
        "both homomorphisms vanish at the identity point",
    );
    report
}

/// The full local suite.
pub fn local_suite() -> CheckReport {
    let mut report = verify_local_counterexample();
    report.merge(verify_phi_eq_e_psi());
    report
}
