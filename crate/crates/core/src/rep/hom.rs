//! Intertwiner spaces. For modules carried by a tabloid basis the space
//! `Hom(M, W)` is computed through the inducing character: eigenvectors of
//! the row stabilizer in `W` seed intertwiners whose columns are filled in
//! by walking the tabloid orbit. Everything else falls back to a direct
//! linear solve.

use super::{GenMatrix, GroupElement, Rep, Summand};
use crate::fp_linalg::FpMatrix;
use crate::sylow::{GroupSpec, Perm, SignedPerm};
use crate::{Error, Result};

/// A basis of intertwiners `source -> target`, as dense matrices in the
/// promoted coordinates of both sides.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source_dim: usize,
    pub target_dim: usize,
    pub basis: Vec<FpMatrix>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The endomorphism algebra of a summand: a basis containing the identity
/// in its span, closed under multiplication.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub dim: usize,
    pub basis: Vec<FpMatrix>,
}

/// Character conditions cutting out `Hom(M, W)` inside `W` for a module
/// `M` induced from a linear character of the row stabilizer of the
/// standard tableau: one condition per generator of the stabilizer.
pub(crate) fn inducing_conditions(source: &Rep) -> Result<Vec<(GroupElement, i8)>> {
    let ts = source
        .tabloid_basis
        .as_ref()
        .ok_or_else(|| Error::Internal("source has no tabloid basis".into()))?;
    let n = ts.shape.size();
    let mut out = Vec::new();
    let mut offset = 0u32;
    let mut row_char = vec![1i8; n as usize + 1];
    for (parts, chi) in [(&ts.shape.alpha, 1i8), (&ts.shape.beta, -1i8)] {
        for &len in parts.parts() {
            for x in offset + 1..offset + len {
                let t = Perm::transposition(n, x, x + 1);
                let elem = match source.group {
                    GroupSpec::Symmetric(_) => GroupElement::Sym(t),
                    GroupSpec::Hyperoctahedral(_) => GroupElement::Hyp(SignedPerm::from_perm(t)),
                };
                out.push((elem, chi));
            }
            for x in offset + 1..=offset + len {
                row_char[x as usize] = chi;
            }
            offset += len;
        }
    }
    if let GroupSpec::Hyperoctahedral(m) = source.group {
        for x in 1..=m {
            out.push((
                GroupElement::Hyp(SignedPerm::flip(m, x)),
                row_char[x as usize],
            ));
        }
    }
    Ok(out)
}

/// Basis (as columns) of the simultaneous eigenspace
/// `{w : rho(g) w = chi(g) w for all listed (g, chi)}`, computed by
/// intersecting one condition at a time so the linear algebra shrinks as
/// conditions accumulate.
pub fn char_eigenspace(target: &Rep, conditions: &[(GroupElement, i8)]) -> FpMatrix {
    let p = target.p;
    let d = target.dim;
    let mut basis = FpMatrix::identity(p, d);
    for (g, chi) in conditions {
        if basis.cols == 0 {
            break;
        }
        let mut m = target.element_matrix(g);
        let c = if *chi == 1 { 1 } else { p - 1 };
        for i in 0..d {
            m.set(i, i, (m.at(i, i) + p - c) % p);
        }
        // solve (m . basis) x = 0 and map back through the current basis
        let restricted = m.mul(&basis);
        let kernel = restricted.nullspace();
        basis = basis.mul(&kernel);
    }
    basis
}

/// The intertwiner `M -> W` with `Phi({T0}) = w`, columns propagated
/// along the top generator moves of the tabloid orbit. `w` must lie in the
/// eigenspace of the inducing conditions, which makes the result
/// independent of the propagation order.
pub(crate) fn induced_intertwiner(source: &Rep, target_gens: &[GenMatrix], w: &[u64]) -> FpMatrix {
    let ts = source
        .tabloid_basis
        .as_ref()
        .expect("induced_intertwiner needs a tabloid source");
    let p = source.p;
    let d = source.dim;
    let n_top = match source.group {
        GroupSpec::Symmetric(n) => n.saturating_sub(1) as usize,
        GroupSpec::Hyperoctahedral(m) => m.saturating_sub(1) as usize,
    };
    let mut cols: Vec<Option<Vec<u64>>> = vec![None; d];
    cols[ts.t0] = Some(w.to_vec());
    let mut queue = vec![ts.t0];
    while let Some(t) = queue.pop() {
        for gi in 0..n_top {
            let GenMatrix::Monomial(g) = &source.gens[gi] else {
                panic!("tabloid source generators must be monomial");
            };
            let t2 = g.perm[t];
            if cols[t2].is_none() {
                let sgn = g.scal[t]; // +-1, equal to its own inverse
                let base = cols[t].as_ref().unwrap();
                let mut v = target_gens[gi].mul_vec(base);
                if sgn != 1 {
                    for x in v.iter_mut() {
                        *x = *x * sgn % p;
                    }
                }
                cols[t2] = Some(v);
                queue.push(t2);
            }
        }
    }
    let td = target_gens.first().map_or(w.len(), |g| g.dim());
    let mut out = FpMatrix::zeros(p, td, d);
    for (j, c) in cols.into_iter().enumerate() {
        let c = c.expect("tabloid orbit not connected under top generators");
        for (i, x) in c.into_iter().enumerate() {
            out.set(i, j, x);
        }
    }
    out
}

pub(crate) fn linear_reduce_pub(mats: Vec<FpMatrix>, _p: u64) -> Vec<FpMatrix> {
    linear_reduce(mats)
}

/// Reduces a list of equally-shaped matrices to a linearly independent
/// subset spanning the same space, preserving order.
fn linear_reduce(mats: Vec<FpMatrix>) -> Vec<FpMatrix> {
    let Some(first) = mats.first() else {
        return vec![];
    };
    let p = first.p;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut leads: Vec<usize> = Vec::new();
    let mut keep = Vec::new();
    for m in mats {
        let mut v: Vec<u64> = m.data().to_vec();
        for (row, &lead) in rows.iter().zip(leads.iter()) {
            let f = v[lead];
            if f != 0 {
                for (a, &b) in v.iter_mut().zip(row.iter()) {
                    *a = (*a + (p - f) * b % p) % p;
                }
            }
        }
        if let Some(lead) = v.iter().position(|&x| x != 0) {
            let inv = crate::fp_linalg::mod_inverse(v[lead], p);
            for a in v.iter_mut() {
                *a = *a * inv % p;
            }
            // keep rows mutually reduced so one pass stays sufficient
            for row in rows.iter_mut() {
                let f = row[lead];
                if f != 0 {
                    for (a, &b) in row.iter_mut().zip(v.iter()) {
                        *a = (*a + (p - f) * b % p) % p;
                    }
                }
            }
            rows.push(v);
            leads.push(lead);
            keep.push(m);
        }
    }
    keep
}

/// Direct intertwiner solve between two explicit representations.
fn solve_intertwiners(a: &Rep, b: &Rep) -> Vec<FpMatrix> {
    let p = a.p;
    let (da, db) = (a.dim, b.dim);
    if da == 0 || db == 0 {
        return vec![];
    }
    let unknowns = da * db; // X is db x da
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for (ga, gb) in a.gens.iter().zip(b.gens.iter()) {
        let ma = ga.to_dense();
        let mb = gb.to_dense();
        // X ma - mb X = 0, entry (i, j)
        for i in 0..db {
            for j in 0..da {
                let mut row = vec![0u64; unknowns];
                for k in 0..da {
                    row[i * da + k] = (row[i * da + k] + ma.at(k, j)) % p;
                }
                for k in 0..db {
                    row[k * da + j] = (row[k * da + j] + p - mb.at(i, k) % p) % p;
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        // no generators: every linear map intertwines
        let mut out = Vec::new();
        for i in 0..db {
            for j in 0..da {
                let mut m = FpMatrix::zeros(p, db, da);
                m.set(i, j, 1);
                out.push(m);
            }
        }
        return out;
    }
    let sys = FpMatrix::from_rows(p, rows);
    let ns = sys.nullspace();
    (0..ns.cols)
        .map(|c| {
            let mut m = FpMatrix::zeros(p, db, da);
            for i in 0..db {
                for j in 0..da {
                    m.set(i, j, ns.at(i * da + j, c));
                }
            }
            m
        })
        .collect()
}

/// Full intertwiner space `Hom(U, V)` between two summands over the same
/// group, as matrices in promoted coordinates.
pub fn hom_space(u: &Summand, v: &Summand) -> Result<HomSpace> {
    if u.group() != v.group() || u.p() != v.p() {
        return Err(Error::Invalid(
            "hom_space requires modules over the same group".into(),
        ));
    }
    let vp = v.promoted();
    let mats: Vec<FpMatrix> = if u.parent.tabloid_basis.is_some() {
        let conds = inducing_conditions(&u.parent)?;
        let eig = char_eigenspace(&vp, &conds);
        let mut mats = Vec::with_capacity(eig.cols);
        for c in 0..eig.cols {
            let w: Vec<u64> = (0..vp.dim).map(|i| eig.at(i, c)).collect();
            let phi = induced_intertwiner(&u.parent, &vp.gens, &w);
            mats.push(phi.mul(&u.basis));
        }
        linear_reduce(mats)
    } else {
        let up = u.promoted();
        solve_intertwiners(&up, &vp)
    };
    #[cfg(debug_assertions)]
    {
        if u.dim <= 40 && v.dim <= 40 {
            let up = u.promoted();
            for x in &mats {
                for (ga, gb) in up.gens.iter().zip(vp.gens.iter()) {
                    debug_assert_eq!(
                        x.mul(&ga.to_dense()),
                        gb.to_dense().mul(x),
                        "hom basis element is not an intertwiner"
                    );
                }
            }
        }
    }
    Ok(HomSpace {
        source_dim: u.dim,
        target_dim: v.dim,
        basis: mats,
    })
}

/// The intertwiner space by the direct linear solve, independent of the
/// eigenspace machinery; kept public as an oracle for reciprocity checks.
pub fn hom_space_direct(u: &Summand, v: &Summand) -> Result<HomSpace> {
    if u.group() != v.group() || u.p() != v.p() {
        return Err(Error::Invalid(
            "hom_space requires modules over the same group".into(),
        ));
    }
    let up = u.promoted();
    let vp = v.promoted();
    let basis = solve_intertwiners(&up, &vp);
    Ok(HomSpace {
        source_dim: u.dim,
        target_dim: v.dim,
        basis,
    })
}

/// The endomorphism algebra of a summand.
pub fn end_algebra(u: &Summand) -> Result<EndAlgebra> {
    let h = hom_space(u, u)?;
    Ok(EndAlgebra {
        dim: h.basis.len(),
        basis: h.basis,
    })
}

/// For a 2-dimensional endomorphism algebra, finds a nilpotent complement
/// of the identity: an element `X` with `X^2 = 0` spanning the algebra
/// together with the identity, if one exists.
pub fn nilpotent_witness(end: &EndAlgebra, p: u64) -> Option<FpMatrix> {
    if end.dim != 2 {
        return None;
    }
    let k = end.basis[0].rows;
    let id = FpMatrix::identity(p, k);
    for b in &end.basis {
        for c in 0..p {
            let cand = b.sub(&id.scalar_mul(c));
            if !cand.is_zero() && cand.mul(&cand).is_zero() {
                return Some(cand);
            }
        }
    }
    None
}
