//! Built-in instances used by tests, the check suites and the search
//! baseline.
//!
//! The canonical one is `e1`: A = M_2(F_2) with the good Z/2-grading
//! deg(e11) = deg(e22) = 0, deg(e12) = deg(e21) = 1, B = F_2 concentrated in
//! degree 0, P the column bimodule, Q the row bimodule, mu the outer product
//! and nu the inner product. The `e3_family` instances are diagonal contexts
//! over idempotent rings that fail to be torsion-free (corner rings).

use crate::context::MoritaContext;
use crate::error::Result;
use crate::field::Fp;
use crate::graded::{GradedBimodule, GradedModule, GradedRing, GradedVectorSpace, PairingTable, Side};
use crate::group::{FiniteGroup, GroupElem};
use std::sync::Arc;

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0u32; n];
    v[i] = 1;
    v
}

/// F_p as a one-dimensional graded ring concentrated in the identity degree.
pub fn field_ring(field: Fp, group: Arc<FiniteGroup>) -> Arc<GradedRing> {
    let e = group.identity();
    let carrier = GradedVectorSpace::new(group, field, vec![e]).unwrap();
    let product = PairingTable::from_fn(field, 1, 1, 1, |_, _| vec![1]).unwrap();
    GradedRing::new(carrier, product).unwrap()
}

/// Structure constants of M_2 on the matrix-unit basis
/// [e11, e12, e21, e22]: e_ij e_kl = delta_jk e_il.
pub fn m2_product_table(field: Fp) -> PairingTable {
    let idx = |i: usize, j: usize| i * 2 + j;
    PairingTable::from_fn(field, 4, 4, 4, |x, y| {
        let (i, j) = (x / 2, x % 2);
        let (k, l) = (y / 2, y % 2);
        let mut v = vec![0u32; 4];
        if j == k {
            v[idx(i, l)] = 1;
        }
        v
    })
    .unwrap()
}

/// M_2(F_p) with the good Z/2-grading deg(e_ij) = i + j mod 2 (0-based:
/// diagonal units in degree 0, off-diagonal in degree 1).
pub fn m2_good_graded(field: Fp) -> Arc<GradedRing> {
    let group = FiniteGroup::cyclic(2);
    let degrees = vec![GroupElem(0), GroupElem(1), GroupElem(1), GroupElem(0)];
    let carrier = GradedVectorSpace::new(group, field, degrees).unwrap();
    GradedRing::new(carrier, m2_product_table(field)).unwrap()
}

/// The corner ring span{e11, e12} of M_2: uu = u, uv = v, vu = vv = 0.
/// Idempotent, left torsion-free, right torsion r(A) = span{v}.
/// With `graded`, carries the Z/2-grading deg(u) = 0, deg(v) = 1.
pub fn corner_upper(field: Fp, graded: bool) -> Arc<GradedRing> {
    let (group, degrees) = if graded {
        (FiniteGroup::cyclic(2), vec![GroupElem(0), GroupElem(1)])
    } else {
        (FiniteGroup::cyclic(1), vec![GroupElem(0), GroupElem(0)])
    };
    let carrier = GradedVectorSpace::new(group, field, degrees).unwrap();
    let product = PairingTable::from_fn(field, 2, 2, 2, |i, j| {
        // u = 0, v = 1: u*u = u, u*v = v, v*_ = 0
        if i == 0 {
            unit(2, j)
        } else {
            vec![0, 0]
        }
    })
    .unwrap();
    GradedRing::new(carrier, product).unwrap()
}

/// The other corner span{e11, e21}: uu = u, wu = w, uw = ww = 0.
/// Idempotent, right torsion-free, left torsion l(A) = span{w}.
pub fn corner_lower(field: Fp, graded: bool) -> Arc<GradedRing> {
    let (group, degrees) = if graded {
        (FiniteGroup::cyclic(2), vec![GroupElem(0), GroupElem(1)])
    } else {
        (FiniteGroup::cyclic(1), vec![GroupElem(0), GroupElem(0)])
    };
    let carrier = GradedVectorSpace::new(group, field, degrees).unwrap();
    let product = PairingTable::from_fn(field, 2, 2, 2, |i, j| {
        // x_i * x_j: uu = u, uw = 0, wu = w, ww = 0
        if j == 0 {
            unit(2, i)
        } else {
            vec![0, 0]
        }
    })
    .unwrap();
    GradedRing::new(carrier, product).unwrap()
}

/// The first-row corner span{e11, e12, e13} of M_3 with the Z/3-grading
/// deg(e1j) = j - 1. Right torsion is span{e12, e13}.
pub fn corner3(field: Fp) -> Arc<GradedRing> {
    let group = FiniteGroup::cyclic(3);
    let degrees = vec![GroupElem(0), GroupElem(1), GroupElem(2)];
    let carrier = GradedVectorSpace::new(group, field, degrees).unwrap();
    let product = PairingTable::from_fn(field, 3, 3, 3, |i, j| {
        if i == 0 {
            unit(3, j)
        } else {
            vec![0, 0, 0]
        }
    })
    .unwrap();
    GradedRing::new(carrier, product).unwrap()
}

/// corner_upper x F_p as a direct product of rings, Z/2-graded with the
/// extra idempotent in degree 0.
pub fn corner_plus_field(field: Fp) -> Arc<GradedRing> {
    let group = FiniteGroup::cyclic(2);
    let degrees = vec![GroupElem(0), GroupElem(1), GroupElem(0)];
    let carrier = GradedVectorSpace::new(group, field, degrees).unwrap();
    let product = PairingTable::from_fn(field, 3, 3, 3, |i, j| match (i, j) {
        (0, 0) => unit(3, 0),
        (0, 1) => unit(3, 1),
        (2, 2) => unit(3, 2),
        _ => vec![0, 0, 0],
    })
    .unwrap();
    GradedRing::new(carrier, product).unwrap()
}

/// The ring with a right identity but no left one: aa = 0, ab = a,
/// ba = 0, bb = b. Idempotent with l(A) = span{a}.
pub fn right_identity_ring(field: Fp) -> Arc<GradedRing> {
    let group = FiniteGroup::cyclic(1);
    let degrees = vec![GroupElem(0), GroupElem(0)];
    let carrier = GradedVectorSpace::new(group, field, degrees).unwrap();
    let product = PairingTable::from_fn(field, 2, 2, 2, |i, j| {
        if j == 1 {
            unit(2, i)
        } else {
            vec![0, 0]
        }
    })
    .unwrap();
    GradedRing::new(carrier, product).unwrap()
}

/// A ring with identically zero product (not idempotent for dim > 0).
pub fn zero_product_ring(field: Fp, dim: usize) -> Arc<GradedRing> {
    let group = FiniteGroup::cyclic(1);
    let degrees = vec![GroupElem(0); dim];
    let carrier = GradedVectorSpace::new(group, field, degrees).unwrap();
    let product = PairingTable::zero(field, dim, dim, dim);
    GradedRing::new(carrier, product).unwrap()
}

/// The column space F_p^2 as a left module over `corner_upper`:
/// u acts as the projection onto the first coordinate, v maps the second
/// basis vector to the first. AM = span{(1,0)}, so the module is not unital.
pub fn corner_on_columns(ring: &Arc<GradedRing>) -> GradedModule {
    let field = ring.field();
    let degrees = vec![ring.carrier().degree(0), ring.carrier().degree(1)];
    let carrier =
        GradedVectorSpace::new(Arc::clone(ring.group()), field, degrees).unwrap();
    let action = PairingTable::from_fn(field, 2, 2, 2, |ri, mj| match (ri, mj) {
        (0, 0) => unit(2, 0),
        (1, 1) => unit(2, 0),
        _ => vec![0, 0],
    })
    .unwrap();
    GradedModule::new(Side::Left, Arc::clone(ring), carrier, action).unwrap()
}

/// The E1 context: A = M_2(F_p) good-graded over Z/2, B = F_p, P = columns
/// with degrees (0,1), Q = rows with degrees (0,1), mu the outer product
/// p q^T, nu the inner product q p.
pub fn e1(field: Fp) -> MoritaContext {
    let a = m2_good_graded(field);
    let group = Arc::clone(a.group());
    let b = field_ring(field, Arc::clone(&group));

    let p_degrees = vec![GroupElem(0), GroupElem(1)];
    let p_carrier = GradedVectorSpace::new(Arc::clone(&group), field, p_degrees).unwrap();
    // e_kl . p_m = delta_{lm} p_k
    let p_left = PairingTable::from_fn(field, 4, 2, 2, |x, m| {
        let (k, l) = (x / 2, x % 2);
        let mut v = vec![0u32; 2];
        if l == m {
            v[k] = 1;
        }
        v
    })
    .unwrap();
    let p_right = PairingTable::from_fn(field, 2, 1, 2, |m, _| unit(2, m)).unwrap();
    let p = GradedBimodule::new(Arc::clone(&a), Arc::clone(&b), p_carrier, p_left, p_right)
        .unwrap();

    let q_degrees = vec![GroupElem(0), GroupElem(1)];
    let q_carrier = GradedVectorSpace::new(Arc::clone(&group), field, q_degrees).unwrap();
    let q_left = PairingTable::from_fn(field, 1, 2, 2, |_, m| unit(2, m)).unwrap();
    // q_i . e_kl = delta_{ik} q_l
    let q_right = PairingTable::from_fn(field, 2, 4, 2, |i, x| {
        let (k, l) = (x / 2, x % 2);
        let mut v = vec![0u32; 2];
        if i == k {
            v[l] = 1;
        }
        v
    })
    .unwrap();
    let q = GradedBimodule::new(Arc::clone(&b), Arc::clone(&a), q_carrier, q_left, q_right)
        .unwrap();

    // mu(p_i, q_j) = e_ij
    let mu = PairingTable::from_fn(field, 2, 2, 4, |i, j| unit(4, i * 2 + j)).unwrap();
    // nu(q_i, p_j) = delta_ij
    let nu = PairingTable::from_fn(field, 2, 2, 1, |i, j| vec![u32::from(i == j)]).unwrap();

    MoritaContext::new(a, b, p, q, mu, nu).unwrap()
}

/// E1 with deg(q2) flipped to 0; the degree-e axiom must fail.
pub fn e1_with_flipped_q2_degree(field: Fp) -> MoritaContext {
    let base = e1(field);
    let group = Arc::clone(base.a.group());
    let q_carrier =
        GradedVectorSpace::new(group, field, vec![GroupElem(0), GroupElem(0)]).unwrap();
    let q = GradedBimodule::new(
        Arc::clone(base.q.left_ring()),
        Arc::clone(base.q.right_ring()),
        q_carrier,
        base.q.left_action().clone(),
        base.q.right_action().clone(),
    )
    .unwrap();
    MoritaContext::new(base.a, base.b, base.p, q, base.mu, base.nu).unwrap()
}

/// The diagonal context (A, A, A, A, mult, mult) over any idempotent ring.
pub fn diagonal_context(ring: &Arc<GradedRing>) -> MoritaContext {
    MoritaContext::new(
        Arc::clone(ring),
        Arc::clone(ring),
        ring.as_bimodule(),
        ring.as_bimodule(),
        ring.product().clone(),
        ring.product().clone(),
    )
    .unwrap()
}

/// The diagonal context over F_2 graded by Z/2.
pub fn e2(field: Fp) -> MoritaContext {
    diagonal_context(&field_ring(field, FiniteGroup::cyclic(2)))
}

/// Diagonal contexts over idempotent rings that are not torsion-free.
pub fn e3_family() -> Vec<MoritaContext> {
    let f2 = Fp::new(2).unwrap();
    let f3 = Fp::new(3).unwrap();
    vec![
        diagonal_context(&corner_upper(f2, true)),
        diagonal_context(&corner_lower(f2, true)),
        diagonal_context(&corner3(f2)),
        diagonal_context(&corner_upper(f3, true)),
        diagonal_context(&corner_plus_field(f2)),
        diagonal_context(&right_identity_ring(f2)),
    ]
}

/// Block-diagonal context: A = M_2(F_p) x F_p, B = F_p x F_p, P and Q the
/// column/row bimodules extended by the scalar block. The unital two-sided
/// ideal lattices on both sides have four elements.
pub fn e5_block(field: Fp) -> MoritaContext {
    let group = FiniteGroup::cyclic(2);
    let e = GroupElem(0);
    let o = GroupElem(1);

    // A: [e11, e12, e21, e22, t]
    let a_carrier =
        GradedVectorSpace::new(Arc::clone(&group), field, vec![e, o, o, e, e]).unwrap();
    let a_product = PairingTable::from_fn(field, 5, 5, 5, |x, y| {
        let mut v = vec![0u32; 5];
        if x < 4 && y < 4 {
            let (i, j) = (x / 2, x % 2);
            let (k, l) = (y / 2, y % 2);
            if j == k {
                v[i * 2 + l] = 1;
            }
        } else if x == 4 && y == 4 {
            v[4] = 1;
        }
        v
    })
    .unwrap();
    let a = GradedRing::new(a_carrier, a_product).unwrap();

    // B: [s, r] = F_p x F_p in degree 0
    let b_carrier = GradedVectorSpace::new(Arc::clone(&group), field, vec![e, e]).unwrap();
    let b_product = PairingTable::from_fn(field, 2, 2, 2, |i, j| {
        let mut v = vec![0u32; 2];
        if i == j {
            v[i] = 1;
        }
        v
    })
    .unwrap();
    let b = GradedRing::new(b_carrier, b_product).unwrap();

    // P: [p1, p2, p3], degrees (0, 1, 0)
    let p_carrier = GradedVectorSpace::new(Arc::clone(&group), field, vec![e, o, e]).unwrap();
    let p_left = PairingTable::from_fn(field, 5, 3, 3, |x, m| {
        let mut v = vec![0u32; 3];
        if x < 4 && m < 2 {
            let (k, l) = (x / 2, x % 2);
            if l == m {
                v[k] = 1;
            }
        } else if x == 4 && m == 2 {
            v[2] = 1;
        }
        v
    })
    .unwrap();
    let p_right = PairingTable::from_fn(field, 3, 2, 3, |m, bj| {
        let mut v = vec![0u32; 3];
        if m < 2 && bj == 0 {
            v[m] = 1;
        } else if m == 2 && bj == 1 {
            v[2] = 1;
        }
        v
    })
    .unwrap();
    let p = GradedBimodule::new(Arc::clone(&a), Arc::clone(&b), p_carrier, p_left, p_right)
        .unwrap();

    // Q: [q1, q2, q3], degrees (0, 1, 0)
    let q_carrier = GradedVectorSpace::new(Arc::clone(&group), field, vec![e, o, e]).unwrap();
    let q_left = PairingTable::from_fn(field, 2, 3, 3, |bi, m| {
        let mut v = vec![0u32; 3];
        if bi == 0 && m < 2 {
            v[m] = 1;
        } else if bi == 1 && m == 2 {
            v[2] = 1;
        }
        v
    })
    .unwrap();
    let q_right = PairingTable::from_fn(field, 3, 5, 3, |i, x| {
        let mut v = vec![0u32; 3];
        if i < 2 && x < 4 {
            let (k, l) = (x / 2, x % 2);
            if i == k {
                v[l] = 1;
            }
        } else if i == 2 && x == 4 {
            v[2] = 1;
        }
        v
    })
    .unwrap();
    let q = GradedBimodule::new(Arc::clone(&b), Arc::clone(&a), q_carrier, q_left, q_right)
        .unwrap();

    let mu = PairingTable::from_fn(field, 3, 3, 5, |i, j| {
        let mut v = vec![0u32; 5];
        if i < 2 && j < 2 {
            v[i * 2 + j] = 1;
        } else if i == 2 && j == 2 {
            v[4] = 1;
        }
        v
    })
    .unwrap();
    let nu = PairingTable::from_fn(field, 3, 3, 2, |i, j| {
        let mut v = vec![0u32; 2];
        if i < 2 && j < 2 {
            if i == j {
                v[0] = 1;
            }
        } else if i == 2 && j == 2 {
            v[1] = 1;
        }
        v
    })
    .unwrap();

    MoritaContext::new(a, b, p, q, mu, nu).unwrap()
}

/// The named corpus contexts, in a stable order.
pub fn all_contexts() -> Vec<(String, MoritaContext)> {
    let f2 = Fp::new(2).unwrap();
    let mut out = vec![
        ("e1".to_string(), e1(f2)),
        ("e2".to_string(), e2(f2)),
    ];
    let names = [
        "e3-corner-upper-f2",
        "e3-corner-lower-f2",
        "e3-corner3-f2",
        "e3-corner-upper-f3",
        "e3-corner-plus-field-f2",
        "e3-right-identity-f2",
    ];
    for (name, ctx) in names.iter().zip(e3_family()) {
        out.push((name.to_string(), ctx));
    }
    out.push(("e5-block".to_string(), e5_block(f2)));
    out
}

/// A left module over the ring of `ctx.a` built from an explicit action
/// check; used by tests that need a known non-corpus module.
pub fn left_module_from_operators(
    ring: &Arc<GradedRing>,
    degrees: Vec<GroupElem>,
    operators: Vec<crate::linalg::Matrix>,
) -> Result<GradedModule> {
    let field = ring.field();
    let dim = degrees.len();
    let carrier = GradedVectorSpace::new(Arc::clone(ring.group()), field, degrees)?;
    let action = PairingTable::from_fn(field, ring.dim(), dim, dim, |ri, mj| {
        operators[ri].mul_vec(&unit(dim, mj))
    })?;
    GradedModule::new(Side::Left, Arc::clone(ring), carrier, action)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_rings_validate() {
        let f2 = Fp::new(2).unwrap();
        let f3 = Fp::new(3).unwrap();
        for ring in [
            m2_good_graded(f2),
            corner_upper(f2, true),
            corner_lower(f2, true),
            corner3(f2),
            corner_upper(f3, true),
            corner_plus_field(f2),
            right_identity_ring(f2),
        ] {
            assert!(ring.validate().ok());
            assert!(ring.is_idempotent());
        }
    }

    #[test]
    fn e3_rings_have_torsion() {
        for c in e3_family() {
            assert!(
                !c.a.left_torsion().is_zero() || !c.a.right_torsion().is_zero(),
                "an e3 ring is torsion-free"
            );
        }
    }

    #[test]
    fn e5_constituents_validate() {
        let c = e5_block(Fp::new(2).unwrap());
        assert!(c.a.validate().ok());
        assert!(c.b.validate().ok());
        assert!(c.p.validate().ok());
        assert!(c.q.validate().ok());
        assert!(c.a.is_torsion_free());
        assert!(c.b.is_torsion_free());
    }
}
