//! Brauer quotients of summands of tabloid modules, vertex computation,
//! and the Sylow-freeness rank test for projectivity.

use super::{GroupElement, Summand};
use crate::combinatorics::{rho_shapes, RhoShape};
use crate::fp_linalg::FpMatrix;
use crate::sylow::{cyclic_norm_chain, sylow_generators, sylow_of_symmetric, GroupSpec, PSubgroup, SignedPerm};
use crate::tabloids::fixed_indices;
use crate::{Caps, Error, Result};

/// Dimension of the Brauer quotient `U(P)` of a summand of a tabloid
/// module: the fixed tabloids form a basis of `M(P)`, the idempotent of
/// `U` stabilizes fixed points and relative traces, and `U(P)` is the
/// image of the induced map. Concretely this is the rank of the fixed-row,
/// fixed-column submatrix of the idempotent.
pub fn brauer_quotient_dim(u: &Summand, ps: &PSubgroup) -> Result<usize> {
    let ts = u
        .parent
        .tabloid_basis
        .as_ref()
        .ok_or_else(|| Error::Invalid("Brauer quotient needs a tabloid basis".into()))?;
    let n = ts.shape.size();
    if ps.degree != n {
        return Err(Error::SizeMismatch(format!(
            "subgroup degree {} does not match module degree {}",
            ps.degree, n
        )));
    }
    let idx = fixed_indices(&ts.tabloids, n, &ps.gens);
    if idx.is_empty() {
        return Ok(0);
    }
    Ok(u.idempotent_submatrix(&idx).rank())
}

/// Vertex shape of an indecomposable summand of a signed Young permutation
/// module: the largest Sylow shape `rho` with a nonzero Brauer quotient,
/// scanned in decreasing group order.
pub fn vertex_shape_of(u: &Summand) -> Result<RhoShape> {
    let ts = u
        .parent
        .tabloid_basis
        .as_ref()
        .ok_or_else(|| Error::Invalid("vertex scan needs a tabloid basis".into()))?;
    if !matches!(u.group(), GroupSpec::Symmetric(_)) {
        return Err(Error::Invalid(
            "vertex shapes are computed for symmetric group modules".into(),
        ));
    }
    let n = ts.shape.size();
    let p = u.p();
    let mut shapes = rho_shapes(n, p);
    shapes.sort_by(|a, b| {
        b.log_order()
            .cmp(&a.log_order())
            .then_with(|| b.mults().cmp(a.mults()))
    });
    for rho in shapes {
        let ps = sylow_generators(&rho);
        if brauer_quotient_dim(u, &ps)? > 0 {
            return Ok(rho);
        }
    }
    Err(Error::Internal(
        "no shape with nonzero Brauer quotient; the trivial shape should always hit".into(),
    ))
}

/// Projectivity via freeness over a Sylow p-subgroup: `U` is projective iff
/// `rank(sum_{g in P} rho_U(g)) = dim U / |P|`. The group-algebra norm is
/// assembled as a product of cyclic norms along the unique factorization
/// of `P` into a chain of cyclic subgroups.
pub fn is_projective(u: &Summand, caps: &Caps) -> Result<bool> {
    let p = u.p();
    let top_degree = match u.group() {
        GroupSpec::Symmetric(n) => n,
        GroupSpec::Hyperoctahedral(m) => m, // odd p: a Sylow p-subgroup sits in the top group
    };
    let ps = sylow_of_symmetric(top_degree, p);
    let log = ps.shape.log_order();
    let order = p.checked_pow(log as u32).ok_or(Error::GroupCap {
        cap: caps.group_order,
    })?;
    if order > caps.group_order {
        return Err(Error::GroupCap {
            cap: caps.group_order,
        });
    }
    if order == 1 {
        return Ok(true);
    }
    if (u.dim as u64) % order != 0 {
        return Ok(false);
    }
    let chain = cyclic_norm_chain(&ps.shape);
    let mut norm = FpMatrix::identity(p, u.dim);
    for c in &chain {
        let elem = match u.group() {
            GroupSpec::Symmetric(_) => GroupElement::Sym(c.clone()),
            GroupSpec::Hyperoctahedral(_) => GroupElement::Hyp(SignedPerm::from_perm(c.clone())),
        };
        let g = u.element_matrix(&elem);
        let mut cyc = FpMatrix::identity(p, u.dim);
        let mut power = g.clone();
        for _ in 1..p {
            cyc = cyc.add(&power);
            power = power.mul(&g);
        }
        norm = norm.mul(&cyc);
    }
    Ok(norm.rank() as u64 == u.dim as u64 / order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{BiComposition, Composition, RhoShape};
    use crate::rep::{decompose, signed_young_rep, Summand};
    use crate::sylow::sylow_generators;
    use crate::Caps;
    use std::sync::Arc;

    fn shape(a: &[u32], b: &[u32]) -> BiComposition {
        BiComposition::new(Composition::new(a.to_vec()), Composition::new(b.to_vec()))
    }

    fn whole(a: &[u32], b: &[u32], p: u64) -> Summand {
        Summand::whole(Arc::new(
            signed_young_rep(&shape(a, b), p, &Caps::default()).unwrap(),
        ))
    }

    #[test]
    fn brauer_dims_paper_example() {
        let m = whole(&[2, 1], &[6], 3);
        // Q2 = P_(1,1,1,3,3): dimension 3
        let q2 = sylow_generators(&RhoShape::new(3, vec![3, 2]));
        assert_eq!(brauer_quotient_dim(&m, &q2).unwrap(), 3);
        // Q1 = P_(3,3,3): dimension 0
        let q1 = sylow_generators(&RhoShape::new(3, vec![0, 3]));
        assert_eq!(brauer_quotient_dim(&m, &q1).unwrap(), 0);
    }

    #[test]
    fn brauer_dim_of_trivial_summand() {
        // M((3)|-) is the trivial module; with P = <(1,2,3)> the fixed
        // space is 1-dimensional.
        let m = whole(&[3], &[], 3);
        let ps = sylow_generators(&RhoShape::new(3, vec![0, 1]));
        assert_eq!(brauer_quotient_dim(&m, &ps).unwrap(), 1);
    }

    #[test]
    fn vertex_shapes_small() {
        let caps = Caps::default();
        // trivial module of S_3: Sylow vertex (3)
        let m = whole(&[3], &[], 3);
        assert_eq!(vertex_shape_of(&m).unwrap().mults(), &[0, 1]);

        // M((2,1)|-) = Y((2,1)|-) is projective: trivial vertex (1,1,1)
        let m = whole(&[2, 1], &[], 3);
        assert_eq!(vertex_shape_of(&m).unwrap().mults(), &[3]);

        // sgn(4) = M(-|(4)) over F_3: vertex (1,3)
        let m = whole(&[], &[4], 3);
        assert_eq!(vertex_shape_of(&m).unwrap().mults(), &[1, 1]);
        let _ = caps;
    }

    #[test]
    fn projectivity_examples() {
        let caps = Caps::default();
        // M^(2,1) over F_3 is projective
        assert!(is_projective(&whole(&[2, 1], &[], 3), &caps).unwrap());
        // the trivial module of S_3 is not (dimension 1 not divisible by 3)
        assert!(!is_projective(&whole(&[3], &[], 3), &caps).unwrap());
        // the regular module of S_3 is free
        assert!(is_projective(&whole(&[1, 1, 1], &[], 3), &caps).unwrap());
        // n < p: every module is projective
        assert!(is_projective(&whole(&[2], &[], 3), &caps).unwrap());
    }

    #[test]
    fn brauer_additivity_small() {
        let caps = Caps::default();
        for (a, b) in [(vec![2u32, 1], vec![1]), (vec![2], vec![2]), (vec![3, 1], vec![])] {
            let rep = Arc::new(signed_young_rep(&shape(&a, &b), 3, &caps).unwrap());
            let parts = decompose(&rep, &caps, 1).unwrap();
            let n = shape(&a, &b).size();
            for rho in rho_shapes(n, 3) {
                let ps = sylow_generators(&rho);
                let whole = Summand::whole(rep.clone());
                let total = brauer_quotient_dim(&whole, &ps).unwrap();
                let sum: usize = parts
                    .iter()
                    .map(|u| brauer_quotient_dim(u, &ps).unwrap())
                    .sum();
                assert_eq!(sum, total, "additivity at {} for {:?}", rho, (a.clone(), b.clone()));
            }
        }
    }
}
