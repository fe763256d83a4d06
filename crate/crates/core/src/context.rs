//! Morita contexts between graded idempotent rings: the sextuple
//! (A, B, P, Q, mu, nu) with balanced degree-e pairings
//! mu : P (x)_B Q -> A and nu : Q (x)_A P -> B satisfying the mixed
//! associativity laws, plus the validators the rest of the theory hangs on.
//!
//! Pairings are supplied on basis pairs, not on tensor bases; balancedness
//! is a validated axiom, not an assumption.

use crate::error::{Error, Result};
use crate::graded::{
    same_ring, GradedBimodule, GradedRing, PairingTable, ValidationReport, Violation,
};
use crate::linalg::{Matrix, Subspace};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoritaContext {
    pub a: Arc<GradedRing>,
    pub b: Arc<GradedRing>,
    /// (A,B)-bimodule.
    pub p: GradedBimodule,
    /// (B,A)-bimodule.
    pub q: GradedBimodule,
    /// mu on basis pairs: (P basis x Q basis) -> A-coordinates.
    pub mu: PairingTable,
    /// nu on basis pairs: (Q basis x P basis) -> B-coordinates.
    pub nu: PairingTable,
}

impl MoritaContext {
    pub fn new(
        a: Arc<GradedRing>,
        b: Arc<GradedRing>,
        p: GradedBimodule,
        q: GradedBimodule,
        mu: PairingTable,
        nu: PairingTable,
    ) -> Result<Self> {
        if !same_ring(p.left_ring(), &a)
            || !same_ring(p.right_ring(), &b)
            || !same_ring(q.left_ring(), &b)
            || !same_ring(q.right_ring(), &a)
        {
            return Err(Error::RingMismatch);
        }
        if mu.dims() != (p.dim(), q.dim(), a.dim()) {
            return Err(Error::InvalidStructure(format!(
                "mu table dims {:?}",
                mu.dims()
            )));
        }
        if nu.dims() != (q.dim(), p.dim(), b.dim()) {
            return Err(Error::InvalidStructure(format!(
                "nu table dims {:?}",
                nu.dims()
            )));
        }
        Ok(MoritaContext { a, b, p, q, mu, nu })
    }

    /// mu on arbitrary coordinate vectors.
    pub fn pair_mu(&self, pv: &[u32], qv: &[u32]) -> Vec<u32> {
        self.mu.apply(pv, qv)
    }

    /// nu on arbitrary coordinate vectors.
    pub fn pair_nu(&self, qv: &[u32], pv: &[u32]) -> Vec<u32> {
        self.nu.apply(qv, pv)
    }
}

/// Per-axiom outcome of `validate_context`, with whatever downstream flags
/// have been computed. Witnesses are basis index tuples.
#[derive(Debug, Clone, Default)]
pub struct ContextReport {
    pub constituents: ValidationReport,
    pub axioms: ValidationReport,
    pub mu_surjective: Option<bool>,
    pub nu_surjective: Option<bool>,
    pub nondegenerate: Option<NondegeneracyReport>,
    pub mu_kernel_torsion: Option<bool>,
    pub nu_kernel_torsion: Option<bool>,
}

impl ContextReport {
    pub fn axioms_ok(&self) -> bool {
        self.constituents.ok() && self.axioms.ok()
    }
}

/// The four pairing kernels plus bimodule torsion flags; the context is
/// non-degenerate iff everything here is zero/torsion-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NondegeneracyReport {
    /// {q : <P, q> = 0}
    pub mu_right_kernel: Subspace,
    /// {p : <p, Q> = 0}
    pub mu_left_kernel: Subspace,
    /// {p : [Q, p] = 0}
    pub nu_right_kernel: Subspace,
    /// {q : [q, P] = 0}
    pub nu_left_kernel: Subspace,
    pub p_torsion_free: bool,
    pub q_torsion_free: bool,
}

impl NondegeneracyReport {
    pub fn is_nondegenerate(&self) -> bool {
        self.mu_right_kernel.is_zero()
            && self.mu_left_kernel.is_zero()
            && self.nu_right_kernel.is_zero()
            && self.nu_left_kernel.is_zero()
            && self.p_torsion_free
            && self.q_torsion_free
    }
}

/// Check every context axiom on basis spanning sets:
/// balancedness, bimodule-morphism property, degree e, and the mixed
/// associativity laws p'[q,p] = <p',q>p and q'<p,q> = [q',p]q.
pub fn validate_context(c: &MoritaContext) -> ContextReport {
    let mut report = ContextReport {
        constituents: c
            .a
            .validate()
            .merged(c.b.validate())
            .merged(c.p.validate())
            .merged(c.q.validate()),
        ..Default::default()
    };
    let mut ax = ValidationReport::default();
    let (pd, qd) = (c.p.dim(), c.q.dim());
    let (ad, bd) = (c.a.dim(), c.b.dim());
    let pm = c.p.left_module();
    let p_right = c.p.right_module();
    let qm = c.q.right_module();
    let q_left = c.q.left_module();
    let unit = |n: usize, i: usize| -> Vec<u32> {
        let mut v = vec![0u32; n];
        v[i] = 1;
        v
    };

    // graded of degree e: mu(P_s, Q_t) in A_{st}, nu(Q_s, P_t) in B_{st}
    let g = c.a.group();
    for i in 0..pd {
        for j in 0..qd {
            let expect = g.mul(c.p.carrier().degree(i), c.q.carrier().degree(j));
            for (k, &coef) in c.mu.value(i, j).iter().enumerate() {
                if coef != 0 && c.a.carrier().degree(k) != expect {
                    ax.violations.push(Violation {
                        law: "mu degree",
                        witness: vec![i, j, k],
                    });
                }
            }
        }
    }
    for i in 0..qd {
        for j in 0..pd {
            let expect = g.mul(c.q.carrier().degree(i), c.p.carrier().degree(j));
            for (k, &coef) in c.nu.value(i, j).iter().enumerate() {
                if coef != 0 && c.b.carrier().degree(k) != expect {
                    ax.violations.push(Violation {
                        law: "nu degree",
                        witness: vec![i, j, k],
                    });
                }
            }
        }
    }

    // balancedness: mu(p b, q) = mu(p, b q), nu(q a, p) = nu(q, a p)
    for i in 0..pd {
        for k in 0..bd {
            let pb = p_right.act(&unit(bd, k), &unit(pd, i));
            for j in 0..qd {
                let bq = q_left.act(&unit(bd, k), &unit(qd, j));
                let lhs = c.pair_mu(&pb, &unit(qd, j));
                let rhs = c.pair_mu(&unit(pd, i), &bq);
                if lhs != rhs {
                    ax.violations.push(Violation {
                        law: "mu balanced",
                        witness: vec![i, k, j],
                    });
                }
            }
        }
    }
    for j in 0..qd {
        for k in 0..ad {
            let qa = qm.act(&unit(ad, k), &unit(qd, j));
            for i in 0..pd {
                let ap = pm.act(&unit(ad, k), &unit(pd, i));
                let lhs = c.pair_nu(&qa, &unit(pd, i));
                let rhs = c.pair_nu(&unit(qd, j), &ap);
                if lhs != rhs {
                    ax.violations.push(Violation {
                        law: "nu balanced",
                        witness: vec![j, k, i],
                    });
                }
            }
        }
    }

    // bimodule morphism: mu(a p, q) = a mu(p, q), mu(p, q a) = mu(p, q) a
    for i in 0..pd {
        for j in 0..qd {
            let base = c.pair_mu(&unit(pd, i), &unit(qd, j));
            for k in 0..ad {
                let ap = pm.act(&unit(ad, k), &unit(pd, i));
                let lhs = c.pair_mu(&ap, &unit(qd, j));
                let rhs = c.a.mul_vec(&unit(ad, k), &base);
                if lhs != rhs {
                    ax.violations.push(Violation {
                        law: "mu left A-linear",
                        witness: vec![k, i, j],
                    });
                }
                let qa = qm.act(&unit(ad, k), &unit(qd, j));
                let lhs = c.pair_mu(&unit(pd, i), &qa);
                let rhs = c.a.mul_vec(&base, &unit(ad, k));
                if lhs != rhs {
                    ax.violations.push(Violation {
                        law: "mu right A-linear",
                        witness: vec![i, j, k],
                    });
                }
            }
        }
    }
    for i in 0..qd {
        for j in 0..pd {
            let base = c.pair_nu(&unit(qd, i), &unit(pd, j));
            for k in 0..bd {
                let bq = q_left.act(&unit(bd, k), &unit(qd, i));
                let lhs = c.pair_nu(&bq, &unit(pd, j));
                let rhs = c.b.mul_vec(&unit(bd, k), &base);
                if lhs != rhs {
                    ax.violations.push(Violation {
                        law: "nu left B-linear",
                        witness: vec![k, i, j],
                    });
                }
                let pb = p_right.act(&unit(bd, k), &unit(pd, j));
                let lhs = c.pair_nu(&unit(qd, i), &pb);
                let rhs = c.b.mul_vec(&base, &unit(bd, k));
                if lhs != rhs {
                    ax.violations.push(Violation {
                        law: "nu right B-linear",
                        witness: vec![i, j, k],
                    });
                }
            }
        }
    }

    // mixed associativity: p'[q,p] = <p',q> p  and  q'<p,q> = [q',p] q
    for i2 in 0..pd {
        for j in 0..qd {
            for i in 0..pd {
                let b_elt = c.pair_nu(&unit(qd, j), &unit(pd, i));
                let lhs = p_right.act(&b_elt, &unit(pd, i2));
                let a_elt = c.pair_mu(&unit(pd, i2), &unit(qd, j));
                let rhs = pm.act(&a_elt, &unit(pd, i));
                if lhs != rhs {
                    ax.violations.push(Violation {
                        law: "associativity p'[q,p] = <p',q>p",
                        witness: vec![i2, j, i],
                    });
                }
            }
        }
    }
    for j2 in 0..qd {
        for i in 0..pd {
            for j in 0..qd {
                let a_elt = c.pair_mu(&unit(pd, i), &unit(qd, j));
                let lhs = qm.act(&a_elt, &unit(qd, j2));
                let b_elt = c.pair_nu(&unit(qd, j2), &unit(pd, i));
                let rhs = q_left.act(&b_elt, &unit(qd, j));
                if lhs != rhs {
                    ax.violations.push(Violation {
                        law: "associativity q'<p,q> = [q',p]q",
                        witness: vec![j2, i, j],
                    });
                }
            }
        }
    }

    report.axioms = ax;
    report
}

/// Are the trace maps onto? (im mu = A, im nu = B.)
pub fn traces_surjective(c: &MoritaContext) -> (bool, bool) {
    (
        c.mu.image_span().is_full(),
        c.nu.image_span().is_full(),
    )
}

/// The four pairing kernels and bimodule torsion flags.
pub fn nondegeneracy(c: &MoritaContext) -> NondegeneracyReport {
    let f = c.a.field();
    let (pd, qd) = (c.p.dim(), c.q.dim());
    // {q : <p_i, q> = 0 for all i}: stack the maps q |-> mu(p_i, q)
    let mu_right_kernel = stacked_kernel(f, qd, (0..pd).map(|i| c.mu.x_operator(i)));
    let mu_left_kernel = stacked_kernel(f, pd, (0..qd).map(|j| c.mu.y_operator(j)));
    let nu_right_kernel = stacked_kernel(f, pd, (0..qd).map(|i| c.nu.x_operator(i)));
    let nu_left_kernel = stacked_kernel(f, qd, (0..pd).map(|j| c.nu.y_operator(j)));
    NondegeneracyReport {
        mu_right_kernel,
        mu_left_kernel,
        nu_right_kernel,
        nu_left_kernel,
        p_torsion_free: c.p.is_torsion_free_both(),
        q_torsion_free: c.q.is_torsion_free_both(),
    }
}

fn stacked_kernel(
    f: crate::field::Fp,
    ambient: usize,
    ops: impl Iterator<Item = Matrix>,
) -> Subspace {
    let mats: Vec<Matrix> = ops.collect();
    if mats.is_empty() {
        return Subspace::full(f, ambient);
    }
    let refs: Vec<&Matrix> = mats.iter().collect();
    Matrix::stack(&refs).kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::field::Fp;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    #[test]
    fn e1_validates() {
        let c = corpus::e1(f2());
        let report = validate_context(&c);
        assert!(report.axioms_ok(), "violations: {:?}", report.axioms);
        assert_eq!(traces_surjective(&c), (true, true));
        assert!(nondegeneracy(&c).is_nondegenerate());
    }

    #[test]
    fn zeroed_nu_fails_associativity_with_witness() {
        let mut c = corpus::e1(f2());
        c.nu = PairingTable::zero(f2(), c.q.dim(), c.p.dim(), c.b.dim());
        let report = validate_context(&c);
        assert!(report
            .axioms
            .violations
            .iter()
            .any(|v| v.law.starts_with("associativity")));
        assert_eq!(traces_surjective(&c).1, false);
    }

    #[test]
    fn flipped_degree_fails_degree_check() {
        let c = corpus::e1_with_flipped_q2_degree(f2());
        let report = validate_context(&c);
        assert!(report
            .axioms
            .violations
            .iter()
            .any(|v| v.law == "mu degree" || v.law == "nu degree"));
    }

    #[test]
    fn degenerate_pairings_detected() {
        let mut c = corpus::e1(f2());
        c.mu = PairingTable::zero(f2(), c.p.dim(), c.q.dim(), c.a.dim());
        c.nu = PairingTable::zero(f2(), c.q.dim(), c.p.dim(), c.b.dim());
        let nd = nondegeneracy(&c);
        assert!(!nd.is_nondegenerate());
        assert!(nd.mu_right_kernel.is_full());
        assert!(nd.mu_left_kernel.is_full());
        assert!(nd.nu_right_kernel.is_full());
        assert!(nd.nu_left_kernel.is_full());
        assert_eq!(traces_surjective(&c), (false, false));
    }

    #[test]
    fn diagonal_contexts_validate() {
        for c in corpus::e3_family() {
            let report = validate_context(&c);
            assert!(report.axioms_ok(), "{:?}", report.axioms.violations.first());
            let (s1, s2) = traces_surjective(&c);
            assert!(s1 && s2);
        }
    }

    #[test]
    fn axiom_checker_matches_bruteforce_on_all_vector_triples() {
        // oracle: the bilinear laws checked on every homogeneous vector
        // triple, not only on basis triples (dims <= 4, p = 2)
        let contexts = [corpus::e1(f2()), corpus::e2(f2())];
        for c in contexts {
            let report = validate_context(&c);
            let pm = c.p.left_module();
            let p_right = c.p.right_module();
            let q_right = c.q.right_module();
            let q_left = c.q.left_module();
            let all = |n: usize| -> Vec<Vec<u32>> {
                (0..(1u32 << n))
                    .map(|bits| (0..n).map(|i| bits >> i & 1).collect())
                    .collect()
            };
            let homog = |vs: Vec<Vec<u32>>, sp: &crate::graded::GradedVectorSpace| -> Vec<Vec<u32>> {
                vs.into_iter()
                    .filter(|v| sp.is_homogeneous_vec(v))
                    .collect()
            };
            let ps = homog(all(c.p.dim()), c.p.carrier());
            let qs = homog(all(c.q.dim()), c.q.carrier());
            let mut ok = true;
            for p2 in &ps {
                for q in &qs {
                    for p in &ps {
                        let lhs = p_right.act(&c.pair_nu(q, p), p2);
                        let rhs = pm.act(&c.pair_mu(p2, q), p);
                        if lhs != rhs {
                            ok = false;
                        }
                    }
                }
            }
            for q2 in &qs {
                for p in &ps {
                    for q in &qs {
                        let lhs = q_right.act(&c.pair_mu(p, q), q2);
                        let rhs = q_left.act(&c.pair_nu(q2, p), q);
                        if lhs != rhs {
                            ok = false;
                        }
                    }
                }
            }
            let impl_ok = !report
                .axioms
                .violations
                .iter()
                .any(|v| v.law.starts_with("associativity"));
            assert_eq!(impl_ok, ok);
            assert!(ok);
        }
    }
}
