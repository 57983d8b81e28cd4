//! Matrix representations of symmetric and hyperoctahedral groups over
//! F_p: signed Young permutation modules on their tabloid bases, the
//! modules `V_2(gamma|delta)`, the induction bifunctor used for the
//! hyperoctahedral projectives, and direct summands cut out by idempotents.

mod brauer;
mod decompose;
mod hom;

pub use brauer::{brauer_quotient_dim, is_projective, vertex_shape_of};
pub use decompose::{decompose, is_isomorphic, IsoOutcome};
pub use hom::{
    char_eigenspace, end_algebra, hom_space, hom_space_direct, nilpotent_witness, EndAlgebra,
    HomSpace,
};

use crate::combinatorics::BiComposition;
use crate::fp_linalg::{FpMatrix, MonomialMatrix};
use crate::sylow::{GroupSpec, Perm, SignedPerm};
use crate::tabloids::{canonicalize, enumerate_tabloids, standard_tableau, Tabloid};
use crate::{validate_odd_prime, Caps, Error, Result};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

/// A generator matrix, kept compressed when the action is monomial.
#[derive(Clone, Debug)]
pub enum GenMatrix {
    Monomial(MonomialMatrix),
    Dense(FpMatrix),
}

impl GenMatrix {
    pub fn dim(&self) -> usize {
        match self {
            GenMatrix::Monomial(m) => m.dim(),
            GenMatrix::Dense(m) => m.rows,
        }
    }

    pub fn to_dense(&self) -> FpMatrix {
        match self {
            GenMatrix::Monomial(m) => m.to_dense(),
            GenMatrix::Dense(m) => m.clone(),
        }
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        match self {
            GenMatrix::Monomial(m) => m.mul_vec(v),
            GenMatrix::Dense(m) => m.mul_vec(v),
        }
    }

    /// `self * dense`.
    pub fn mul_dense(&self, d: &FpMatrix) -> FpMatrix {
        match self {
            GenMatrix::Monomial(m) => m.mul_dense(d),
            GenMatrix::Dense(m) => m.mul(d),
        }
    }

    /// `dense * self`.
    pub fn rmul_dense(&self, d: &FpMatrix) -> FpMatrix {
        match self {
            GenMatrix::Monomial(m) => m.rmul_dense(d),
            GenMatrix::Dense(m) => d.mul(m),
        }
    }
}

/// An element of the acting group.
#[derive(Clone, Debug)]
pub enum GroupElement {
    Sym(Perm),
    Hyp(SignedPerm),
}

/// Tabloid bookkeeping for monomial modules induced from a linear
/// character of a row stabilizer.
#[derive(Clone, Debug)]
pub struct TabloidStructure {
    pub shape: BiComposition,
    pub tabloids: Vec<Tabloid>,
    pub index: HashMap<Tabloid, usize>,
    /// Index of the canonical tabloid of the standard tableau.
    pub t0: usize,
}

/// An explicit matrix representation.
#[derive(Debug)]
pub struct Rep {
    pub group: GroupSpec,
    pub p: u64,
    pub dim: usize,
    pub gens: Vec<GenMatrix>,
    pub tabloid_basis: Option<TabloidStructure>,
    pub name: String,
}

impl Rep {
    /// Matrix of an arbitrary group element, via factorization into the
    /// standard generators.
    pub fn element_matrix(&self, e: &GroupElement) -> FpMatrix {
        if let Some(m) = self.element_monomial(e) {
            return m.to_dense();
        }
        let mut acc = FpMatrix::identity(self.p, self.dim);
        for gi in self.element_word(e) {
            acc = self.gens[gi].rmul_dense(&acc);
        }
        acc
    }

    /// Monomial fast path, available when every generator is monomial.
    pub fn element_monomial(&self, e: &GroupElement) -> Option<MonomialMatrix> {
        if self
            .gens
            .iter()
            .any(|g| !matches!(g, GenMatrix::Monomial(_)))
        {
            return None;
        }
        let mut acc = MonomialMatrix::identity(self.p, self.dim);
        for gi in self.element_word(e) {
            let GenMatrix::Monomial(g) = &self.gens[gi] else {
                unreachable!()
            };
            acc = acc.compose(g);
        }
        Some(acc)
    }

    /// Factorization of a group element into generator indices, applied
    /// left to right: the element equals the product of the generators in
    /// the returned order.
    fn element_word(&self, e: &GroupElement) -> Vec<usize> {
        match (self.group, e) {
            (GroupSpec::Symmetric(_), GroupElement::Sym(g)) => g.adjacent_word(),
            (GroupSpec::Hyperoctahedral(m), GroupElement::Hyp(sp)) => {
                // (flips; sigma) = (flips; id) * (0; sigma); each flip at
                // position j is conjugate to eps_1 by any permutation moving
                // 1 to j.
                let eps = (m - 1) as usize; // index of the eps_1 generator
                let mut word = Vec::new();
                for (j, &f) in sp.flips.iter().enumerate() {
                    if f {
                        if j == 0 {
                            word.push(eps);
                        } else {
                            let t = Perm::transposition(m, 1, j as u32 + 1);
                            let tw = t.adjacent_word();
                            word.extend(tw.iter().copied());
                            word.push(eps);
                            word.extend(tw.iter().copied());
                        }
                    }
                }
                word.extend(sp.perm.adjacent_word());
                word
            }
            _ => panic!("group element kind does not match the group"),
        }
    }

    /// Verifies the defining relations of the standard generators on the
    /// generator matrices: involutions, braid and commutation relations,
    /// and the sign-flip relations in the hyperoctahedral case.
    pub fn check_relations(&self) -> Result<()> {
        let dense: Vec<FpMatrix> = self.gens.iter().map(|g| g.to_dense()).collect();
        let id = FpMatrix::identity(self.p, self.dim);
        let fail = |what: &str| {
            Err(Error::Internal(format!(
                "generator relations violated for {}: {}",
                self.name, what
            )))
        };
        let (n_top, eps) = match self.group {
            GroupSpec::Symmetric(n) => (n.saturating_sub(1) as usize, None),
            GroupSpec::Hyperoctahedral(m) => {
                (m.saturating_sub(1) as usize, if m > 0 { Some((m - 1) as usize) } else { None })
            }
        };
        for i in 0..n_top {
            if dense[i].mul(&dense[i]) != id {
                return fail("s_i^2 != 1");
            }
            if i + 1 < n_top {
                let lhs = dense[i].mul(&dense[i + 1]).mul(&dense[i]);
                let rhs = dense[i + 1].mul(&dense[i]).mul(&dense[i + 1]);
                if lhs != rhs {
                    return fail("braid relation");
                }
            }
            for j in (i + 2)..n_top {
                if dense[i].mul(&dense[j]) != dense[j].mul(&dense[i]) {
                    return fail("distant generators do not commute");
                }
            }
        }
        if let Some(e) = eps {
            if dense[e].mul(&dense[e]) != id {
                return fail("eps^2 != 1");
            }
            for i in 1..n_top {
                if dense[e].mul(&dense[i]) != dense[i].mul(&dense[e]) {
                    return fail("eps does not commute with distant s_i");
                }
            }
            if n_top > 0 {
                let se = dense[e].mul(&dense[0]);
                let se2 = se.mul(&se);
                if se2.mul(&se2) != id {
                    return fail("(eps s_1)^4 != 1");
                }
            }
        }
        Ok(())
    }
}

fn tabloid_structure(shape: &BiComposition, caps: &Caps) -> Result<TabloidStructure> {
    let tabloids = enumerate_tabloids(shape, caps.tabloids)?;
    let index: HashMap<Tabloid, usize> = tabloids
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    let t0_tab = canonicalize(&standard_tableau(shape)).tabloid;
    let t0 = *index
        .get(&t0_tab)
        .ok_or_else(|| Error::Internal("standard tabloid missing from basis".into()))?;
    Ok(TabloidStructure {
        shape: shape.clone(),
        tabloids,
        index,
        t0,
    })
}

fn check_rep_dim(dim: u64, caps: &Caps, what: &str) -> Result<()> {
    if dim > caps.rep_dim {
        return Err(Error::DimensionCap {
            dim,
            cap: caps.rep_dim,
            what: what.to_string(),
        });
    }
    Ok(())
}

/// The signed Young permutation module `M(alpha|beta)` on its tabloid
/// basis: adjacent transpositions act monomially with scalars +-1.
pub fn signed_young_rep(shape: &BiComposition, p: u64, caps: &Caps) -> Result<Rep> {
    validate_odd_prime(p)?;
    let n = shape.size();
    let ts = tabloid_structure(shape, caps)?;
    check_rep_dim(ts.tabloids.len() as u64, caps, &format!("M{}", shape))?;
    let dim = ts.tabloids.len();
    let mut gens = Vec::new();
    for i in 1..n {
        let s = Perm::transposition(n, i, i + 1);
        let mut perm = vec![0usize; dim];
        let mut scal = vec![0u64; dim];
        for (j, t) in ts.tabloids.iter().enumerate() {
            let st = crate::tabloids::act(&s, t)?;
            perm[j] = ts.index[&st.tabloid];
            scal[j] = if st.sign == 1 { 1 } else { p - 1 };
        }
        gens.push(GenMatrix::Monomial(MonomialMatrix { p, perm, scal }));
    }
    let rep = Rep {
        group: GroupSpec::Symmetric(n),
        p,
        dim,
        gens,
        tabloid_basis: Some(ts),
        name: format!("M{}", shape),
    };
    rep.check_relations()?;
    Ok(rep)
}

/// The module `V_2(gamma|delta)` of `C_2 wr S_m` on the tabloid basis of
/// shape `(gamma|delta)` over `{1..m}`: the top symmetric group acts as in
/// `M(gamma|delta)` and the sign flip at position 1 scales a tabloid by -1
/// exactly when the entry 1 lies in a delta row.
pub fn v2_rep(shape: &BiComposition, p: u64, caps: &Caps) -> Result<Rep> {
    validate_odd_prime(p)?;
    let m = shape.size();
    let ts = tabloid_structure(shape, caps)?;
    check_rep_dim(ts.tabloids.len() as u64, caps, &format!("V2{}", shape))?;
    let dim = ts.tabloids.len();
    let mut gens = Vec::new();
    for i in 1..m {
        let s = Perm::transposition(m, i, i + 1);
        let mut perm = vec![0usize; dim];
        let mut scal = vec![0u64; dim];
        for (j, t) in ts.tabloids.iter().enumerate() {
            let st = crate::tabloids::act(&s, t)?;
            perm[j] = ts.index[&st.tabloid];
            scal[j] = if st.sign == 1 { 1 } else { p - 1 };
        }
        gens.push(GenMatrix::Monomial(MonomialMatrix { p, perm, scal }));
    }
    if m > 0 {
        // eps_1: diagonal, -1 iff 1 lies in a beta row
        let mut scal = vec![0u64; dim];
        for (j, t) in ts.tabloids.iter().enumerate() {
            let in_beta = t.beta_rows.iter().any(|r| r.contains(&1));
            scal[j] = if in_beta { p - 1 } else { 1 };
        }
        gens.push(GenMatrix::Monomial(MonomialMatrix {
            p,
            perm: (0..dim).collect(),
            scal,
        }));
    }
    let rep = Rep {
        group: GroupSpec::Hyperoctahedral(m),
        p,
        dim,
        gens,
        tabloid_basis: Some(ts),
        name: format!("V2{}", shape),
    };
    rep.check_relations()?;
    Ok(rep)
}

/// The induction bifunctor of `C_2 wr S_m`: sends a pair `(U, V)` of
/// modules of `S_{m1}` and `S_{m2}` to the `C_2 wr S_m`-module induced
/// from `Inf(U) (x) (Inf(V) (x) sgn-twist)`, realized on the basis of
/// triples (m1-subset A of {1..m}, U-basis vector, V-basis vector).
///
/// Flips at positions inside A act trivially, flips outside act by -1; a
/// top transposition either moves A or acts through `U`, `V` with the top
/// sign twist on the `V` side.
pub fn bifunctor_f(u: &Rep, v: &Rep, caps: &Caps) -> Result<Rep> {
    let p = u.p;
    if v.p != p {
        return Err(Error::Invalid("mixed characteristics".into()));
    }
    let (m1, m2) = match (u.group, v.group) {
        (GroupSpec::Symmetric(a), GroupSpec::Symmetric(b)) => (a, b),
        _ => {
            return Err(Error::Invalid(
                "bifunctor arguments must be symmetric group modules".into(),
            ))
        }
    };
    let m = m1 + m2;
    // all m1-subsets of {1..m}, lexicographic
    let mut subsets: Vec<Vec<u32>> = Vec::new();
    fn rec(m: u32, k: usize, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for x in start..=(m - need as u32 + 1) {
            cur.push(x);
            rec(m, k, x + 1, cur, out);
            cur.pop();
        }
    }
    rec(m, m1 as usize, 1, &mut Vec::new(), &mut subsets);
    let sub_index: HashMap<Vec<u32>, usize> = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();

    let du = u.dim;
    let dv = v.dim;
    let dim = subsets.len() * du * dv;
    check_rep_dim(dim as u64, caps, &format!("F({}|{})", u.name, v.name))?;
    let idx = |a: usize, i: usize, j: usize| -> usize { (a * du + i) * dv + j };

    let udense: Vec<FpMatrix> = u.gens.iter().map(|g| g.to_dense()).collect();
    let vdense: Vec<FpMatrix> = v.gens.iter().map(|g| g.to_dense()).collect();

    let mut gens = Vec::new();
    for t in 1..m {
        let mut mat = FpMatrix::zeros(p, dim, dim);
        for (a, set) in subsets.iter().enumerate() {
            let has_t = set.contains(&t);
            let has_t1 = set.contains(&(t + 1));
            if has_t != has_t1 {
                // coset moves, coefficient +1
                let mut moved: Vec<u32> = set
                    .iter()
                    .map(|&x| {
                        if x == t {
                            t + 1
                        } else if x == t + 1 {
                            t
                        } else {
                            x
                        }
                    })
                    .collect();
                moved.sort_unstable();
                let b = sub_index[&moved];
                for i in 0..du {
                    for j in 0..dv {
                        mat.set(idx(b, i, j), idx(a, i, j), 1);
                    }
                }
            } else if has_t {
                // both inside A: U sees the adjacent transposition of the
                // ranks of t, t+1 in A
                let q = set.iter().position(|&x| x == t).unwrap(); // rank, 0-based
                let gu = &udense[q]; // s_{q+1} acting on U
                for i in 0..du {
                    for icol in 0..du {
                        let c = gu.at(i, icol);
                        if c != 0 {
                            for j in 0..dv {
                                mat.set(idx(a, i, j), idx(a, icol, j), c);
                            }
                        }
                    }
                }
            } else {
                // both outside A: V sees the transposition, twisted by the
                // top sign
                let outside: Vec<u32> = (1..=m).filter(|x| !set.contains(x)).collect();
                let q = outside.iter().position(|&x| x == t).unwrap();
                let gv = &vdense[q];
                for j in 0..dv {
                    for jcol in 0..dv {
                        let c = gv.at(j, jcol);
                        if c != 0 {
                            let signed = (p - 1) * c % p;
                            for i in 0..du {
                                mat.set(idx(a, i, j), idx(a, i, jcol), signed);
                            }
                        }
                    }
                }
            }
        }
        gens.push(GenMatrix::Dense(mat));
    }
    if m > 0 {
        // eps_1: +1 if 1 in A, else -1
        let mut perm = Vec::with_capacity(dim);
        let mut scal = Vec::with_capacity(dim);
        for (a, set) in subsets.iter().enumerate() {
            let s = if set.contains(&1) { 1 } else { p - 1 };
            for i in 0..du {
                for j in 0..dv {
                    perm.push(idx(a, i, j));
                    scal.push(s);
                }
            }
        }
        gens.push(GenMatrix::Dense(
            MonomialMatrix { p, perm, scal }.to_dense(),
        ));
    }
    let rep = Rep {
        group: GroupSpec::Hyperoctahedral(m),
        p,
        dim,
        gens,
        tabloid_basis: None,
        name: format!("F({}|{})", u.name, v.name),
    };
    rep.check_relations()?;
    Ok(rep)
}

/// A direct summand of a parent representation, stored by an image basis
/// `B` (columns) and a coordinate extraction `P` with `P B = I` and
/// `B P = e`, the idempotent of the summand.
#[derive(Clone)]
pub struct Summand {
    pub parent: Arc<Rep>,
    /// d x k image basis.
    pub basis: FpMatrix,
    /// k x d coordinate extraction.
    pub proj: FpMatrix,
    pub dim: usize,
    promoted: OnceLock<Arc<Rep>>,
}

impl std::fmt::Debug for Summand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Summand(dim {} of {}, parent dim {})",
            self.dim, self.parent.name, self.parent.dim
        )
    }
}

impl Summand {
    /// The whole module as a summand of itself.
    pub fn whole(parent: Arc<Rep>) -> Summand {
        let d = parent.dim;
        let p = parent.p;
        Summand {
            parent,
            basis: FpMatrix::identity(p, d),
            proj: FpMatrix::identity(p, d),
            dim: d,
            promoted: OnceLock::new(),
        }
    }

    pub fn is_whole(&self) -> bool {
        self.dim == self.parent.dim
    }

    /// Builds a summand from an idempotent commuting with the action.
    pub fn from_idempotent(parent: Arc<Rep>, idem: &FpMatrix) -> Result<Summand> {
        let basis = idem.image_basis();
        let k = basis.cols;
        // pivot rows of the basis give an invertible k x k block
        let pivot_rows = basis.transpose().pivot_cols();
        if pivot_rows.len() != k {
            return Err(Error::Internal("image basis rank defect".into()));
        }
        let b_block = basis.take_rows(&pivot_rows);
        let binv = b_block
            .inverse()
            .ok_or_else(|| Error::Internal("pivot block not invertible".into()))?;
        let proj = binv.mul(&idem.take_rows(&pivot_rows));
        debug_assert_eq!(
            proj.mul(&basis),
            FpMatrix::identity(parent.p, k),
            "P B != I"
        );
        debug_assert_eq!(basis.mul(&proj), *idem, "B P != e");
        Ok(Summand {
            parent,
            basis,
            proj,
            dim: k,
            promoted: OnceLock::new(),
        })
    }

    /// Rebuilds a summand from stored basis and projection matrices,
    /// revalidating the defining identities.
    pub fn restore(parent: Arc<Rep>, basis: FpMatrix, proj: FpMatrix) -> Result<Summand> {
        let k = basis.cols;
        if basis.rows != parent.dim || proj.rows != k || proj.cols != parent.dim {
            return Err(Error::Cache("stored summand has wrong dimensions".into()));
        }
        if proj.mul(&basis) != FpMatrix::identity(parent.p, k) {
            return Err(Error::Cache("stored summand fails P B = I".into()));
        }
        let e = basis.mul(&proj);
        if e.mul(&e) != e {
            return Err(Error::Cache("stored summand projection not idempotent".into()));
        }
        for g in &parent.gens {
            if g.mul_dense(&e) != g.rmul_dense(&e) {
                return Err(Error::Cache(
                    "stored idempotent does not commute with the action".into(),
                ));
            }
        }
        Ok(Summand {
            parent,
            basis,
            proj,
            dim: k,
            promoted: OnceLock::new(),
        })
    }

    /// The idempotent `B P` of the summand in parent coordinates.
    pub fn idempotent(&self) -> FpMatrix {
        self.basis.mul(&self.proj)
    }

    /// Submatrix `e[rows, rows]` of the idempotent, computed without
    /// materializing all of `e`.
    pub fn idempotent_submatrix(&self, rows: &[usize]) -> FpMatrix {
        self.basis.take_rows(rows).mul(&self.proj.take_cols(rows))
    }

    pub fn p(&self) -> u64 {
        self.parent.p
    }

    pub fn group(&self) -> GroupSpec {
        self.parent.group
    }

    /// The summand as a standalone representation on its image basis,
    /// computed once and cached.
    pub fn promoted(&self) -> Arc<Rep> {
        self.promoted
            .get_or_init(|| {
                if self.is_whole() {
                    return Arc::new(Rep {
                        group: self.parent.group,
                        p: self.parent.p,
                        dim: self.parent.dim,
                        gens: self.parent.gens.clone(),
                        tabloid_basis: self.parent.tabloid_basis.clone(),
                        name: self.parent.name.clone(),
                    });
                }
                let gens: Vec<GenMatrix> = self
                    .parent
                    .gens
                    .iter()
                    .map(|g| GenMatrix::Dense(self.proj.mul(&g.mul_dense(&self.basis))))
                    .collect();
                Arc::new(Rep {
                    group: self.parent.group,
                    p: self.parent.p,
                    dim: self.dim,
                    gens,
                    tabloid_basis: None,
                    name: format!("{}[dim {}]", self.parent.name, self.dim),
                })
            })
            .clone()
    }

    /// Matrix of a group element on the summand, in image coordinates,
    /// using the parent's monomial structure when available.
    pub fn element_matrix(&self, e: &GroupElement) -> FpMatrix {
        if let Some(mono) = self.parent.element_monomial(e) {
            return self.proj.mul(&mono.mul_dense(&self.basis));
        }
        let full = self.parent.element_matrix(e);
        self.proj.mul(&full.mul(&self.basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Composition;
    use crate::Caps;

    fn shape(a: &[u32], b: &[u32]) -> BiComposition {
        BiComposition::new(Composition::new(a.to_vec()), Composition::new(b.to_vec()))
    }

    #[test]
    fn signed_young_rep_shapes() {
        let caps = Caps::default();
        let r = signed_young_rep(&shape(&[2, 1], &[]), 3, &caps).unwrap();
        assert_eq!(r.dim, 3);
        assert_eq!(r.gens.len(), 2);

        let r = signed_young_rep(&shape(&[], &[4]), 3, &caps).unwrap();
        assert_eq!(r.dim, 1);
        // sign representation: every adjacent transposition acts by -1
        for g in &r.gens {
            assert_eq!(g.to_dense().at(0, 0), 2);
        }

        let r = signed_young_rep(&shape(&[2, 1], &[6]), 3, &caps).unwrap();
        assert_eq!(r.dim, 252);
        assert!(matches!(r.gens[0], GenMatrix::Monomial(_)));
    }

    #[test]
    fn v2_rep_shapes() {
        let caps = Caps::default();
        let r = v2_rep(&shape(&[1], &[1]), 3, &caps).unwrap();
        assert_eq!(r.dim, 2);
        assert_eq!(r.gens.len(), 2); // s_1 and eps_1

        // ((m)|-): trivial module
        let r = v2_rep(&shape(&[3], &[]), 3, &caps).unwrap();
        assert_eq!(r.dim, 1);
        for g in &r.gens {
            assert_eq!(g.to_dense().at(0, 0), 1);
        }

        // (-|(m)): flips act by -1 and top transpositions act by -1
        let r = v2_rep(&shape(&[], &[3]), 3, &caps).unwrap();
        assert_eq!(r.dim, 1);
        for g in &r.gens {
            assert_eq!(g.to_dense().at(0, 0), 2);
        }
    }

    #[test]
    fn element_matrix_consistency() {
        let caps = Caps::default();
        let r = signed_young_rep(&shape(&[2], &[2]), 3, &caps).unwrap();
        let g = Perm::from_cycles(4, &[&[1, 2, 3]]).unwrap();
        let h = Perm::from_cycles(4, &[&[3, 4]]).unwrap();
        let gh = g.compose(&h);
        let mg = r.element_matrix(&GroupElement::Sym(g));
        let mh = r.element_matrix(&GroupElement::Sym(h));
        let mgh = r.element_matrix(&GroupElement::Sym(gh));
        assert_eq!(mg.mul(&mh), mgh);
    }

    #[test]
    fn hyperoctahedral_element_matrix() {
        let caps = Caps::default();
        let r = v2_rep(&shape(&[1], &[2]), 3, &caps).unwrap();
        // eps_2 = (1,2) eps_1 (1,2)
        let eps2 = SignedPerm::flip(3, 2);
        let m = r.element_matrix(&GroupElement::Hyp(eps2.clone()));
        assert_eq!(m.mul(&m), FpMatrix::identity(3, r.dim));
        // composition homomorphism on random-ish pairs
        let s = SignedPerm::from_perm(Perm::from_cycles(3, &[&[1, 2, 3]]).unwrap());
        let prod = eps2.compose(&s);
        assert_eq!(
            r.element_matrix(&GroupElement::Hyp(prod)),
            m.mul(&r.element_matrix(&GroupElement::Hyp(s)))
        );
    }

    #[test]
    fn bifunctor_dimension_and_relations() {
        let caps = Caps::default();
        // F(trivial of S_2 | trivial of S_1): dim C(3,2) * 1 * 1 = 3
        let u = signed_young_rep(&shape(&[2], &[]), 3, &caps).unwrap();
        let v = signed_young_rep(&shape(&[1], &[]), 3, &caps).unwrap();
        let f = bifunctor_f(&u, &v, &caps).unwrap();
        assert_eq!(f.dim, 3);
        assert_eq!(f.group, GroupSpec::Hyperoctahedral(3));

        // degenerate induction: F(trivial of S_m | S_0) is the trivial module
        let u = signed_young_rep(&shape(&[3], &[]), 3, &caps).unwrap();
        let v = signed_young_rep(&shape(&[], &[]), 3, &caps).unwrap();
        let f = bifunctor_f(&u, &v, &caps).unwrap();
        assert_eq!(f.dim, 1);
        for g in &f.gens {
            assert_eq!(g.to_dense().at(0, 0), 1);
        }
    }

    #[test]
    fn summand_whole_and_idempotent() {
        let caps = Caps::default();
        let r = Arc::new(signed_young_rep(&shape(&[2, 1], &[]), 3, &caps).unwrap());
        let w = Summand::whole(r.clone());
        assert_eq!(w.dim, 3);
        assert_eq!(w.idempotent(), FpMatrix::identity(3, 3));

        // M^(1,1) of S_2 over F_3 splits as trivial + sign; the averaging
        // idempotent onto the trivial part is 2*(1 + s).
        let r2 = Arc::new(signed_young_rep(&shape(&[1, 1], &[]), 3, &caps).unwrap());
        let mut e = FpMatrix::zeros(3, 2, 2);
        for i in 0..2 {
            for j in 0..2 {
                e.set(i, j, 2);
            }
        }
        assert_eq!(e.mul(&e), e);
        let s = Summand::from_idempotent(r2, &e).unwrap();
        assert_eq!(s.dim, 1);
        assert_eq!(s.idempotent(), e);
        let prom = s.promoted();
        for g in &prom.gens {
            assert_eq!(g.to_dense().at(0, 0), 1); // trivial action
        }
    }
}
