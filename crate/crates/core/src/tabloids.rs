//! Signed `(alpha|beta)`-tabloids: canonical representatives with signs,
//! the symmetric-group action, fixed points under p-groups, rho-types and
//! the bijection Theta, and the concatenation map used by the degree
//! reduction.

use crate::combinatorics::{multinomial, BiComposition, Composition, LambdaEntry, RhoShape};
use crate::sylow::{orbit_ids, Perm};
use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt;

/// A pair tableau: a bijective filling of the pair diagram by `{1..n}`,
/// alpha rows first. Rows need not be sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTableau {
    pub alpha_rows: Vec<Vec<u32>>,
    pub beta_rows: Vec<Vec<u32>>,
}

impl PairTableau {
    pub fn shape(&self) -> BiComposition {
        BiComposition::new(
            Composition::new(self.alpha_rows.iter().map(|r| r.len() as u32).collect()),
            Composition::new(self.beta_rows.iter().map(|r| r.len() as u32).collect()),
        )
    }
}

/// A canonical tabloid: every row sorted ascending. Equality of tabloids is
/// equality of row sets, which the canonical form makes literal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tabloid {
    pub alpha_rows: Vec<Vec<u32>>,
    pub beta_rows: Vec<Vec<u32>>,
}

impl Tabloid {
    /// Validating constructor: rows sorted, entries positive and distinct.
    /// Entries are usually `{1..n}` but concatenation works with shifted
    /// ranges.
    pub fn from_rows(alpha_rows: Vec<Vec<u32>>, beta_rows: Vec<Vec<u32>>) -> Result<Self> {
        let t = Tabloid {
            alpha_rows,
            beta_rows,
        };
        let mut all: Vec<u32> = t.rows().flat_map(|r| r.iter().copied()).collect();
        all.sort_unstable();
        if all.first() == Some(&0) || all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid(
                "tabloid entries must be positive and distinct".into(),
            ));
        }
        for r in t.rows() {
            if !r.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::Invalid("tabloid rows must be sorted".into()));
            }
        }
        Ok(t)
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.alpha_rows.iter().chain(self.beta_rows.iter())
    }

    pub fn degree(&self) -> u32 {
        self.rows().map(|r| r.len() as u32).sum()
    }

    pub fn shape(&self) -> BiComposition {
        BiComposition::new(
            Composition::new(self.alpha_rows.iter().map(|r| r.len() as u32).collect()),
            Composition::new(self.beta_rows.iter().map(|r| r.len() as u32).collect()),
        )
    }
}

impl fmt::Debug for Tabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |f: &mut fmt::Formatter<'_>, rows: &[Vec<u32>]| -> fmt::Result {
            for (i, r) in rows.iter().enumerate() {
                if i > 0 {
                    write!(f, ";")?;
                }
                for x in r {
                    write!(f, "{} ", x)?;
                }
            }
            Ok(())
        };
        write!(f, "{{")?;
        side(f, &self.alpha_rows)?;
        write!(f, "|")?;
        side(f, &self.beta_rows)?;
        write!(f, "}}")
    }
}

/// A tabloid together with a sign in `{+1, -1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedTabloid {
    pub tabloid: Tabloid,
    pub sign: i8,
}

/// The row standard tableau `T^{alpha|beta}`: entries `1..n` filled row by
/// row, alpha rows first.
pub fn standard_tableau(shape: &BiComposition) -> PairTableau {
    let mut next = 1u32;
    let mut fill = |parts: &[u32]| -> Vec<Vec<u32>> {
        parts
            .iter()
            .map(|&len| {
                let row: Vec<u32> = (next..next + len).collect();
                next += len;
                row
            })
            .collect()
    };
    let alpha_rows = fill(shape.alpha.parts());
    let beta_rows = fill(shape.beta.parts());
    PairTableau {
        alpha_rows,
        beta_rows,
    }
}

/// Parity of the permutation sorting `row` ascending: +1 for even, -1 for
/// odd, computed by counting inversions.
fn sort_sign(row: &[u32]) -> i8 {
    let mut inv = 0usize;
    for i in 0..row.len() {
        for j in (i + 1)..row.len() {
            if row[i] > row[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Canonical form: rows sorted ascending; swaps inside an alpha row cost
/// nothing, swaps inside a beta row flip the sign.
pub fn canonicalize(t: &PairTableau) -> SignedTabloid {
    let alpha_rows: Vec<Vec<u32>> = t
        .alpha_rows
        .iter()
        .map(|r| {
            let mut s = r.clone();
            s.sort_unstable();
            s
        })
        .collect();
    let mut sign = 1i8;
    let beta_rows: Vec<Vec<u32>> = t
        .beta_rows
        .iter()
        .map(|r| {
            sign *= sort_sign(r);
            let mut s = r.clone();
            s.sort_unstable();
            s
        })
        .collect();
    SignedTabloid {
        tabloid: Tabloid {
            alpha_rows,
            beta_rows,
        },
        sign,
    }
}

/// All canonical tabloids of the given shape in lexicographic order of the
/// row-sorted representation.
pub fn enumerate_tabloids(shape: &BiComposition, cap: u64) -> Result<Vec<Tabloid>> {
    let n = shape.size();
    let sizes: Vec<u32> = shape
        .alpha
        .parts()
        .iter()
        .chain(shape.beta.parts().iter())
        .copied()
        .collect();
    let count = multinomial(n, &sizes)?;
    if count > cap {
        return Err(Error::DimensionCap {
            dim: count,
            cap,
            what: format!("tabloid basis of M{}", shape),
        });
    }
    let alpha_len = shape.alpha.len();
    let mut out = Vec::with_capacity(count as usize);
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let pool: Vec<u32> = (1..=n).collect();

    /// All (chosen, rest) splits of `pool` with `|chosen| = k`, chosen in
    /// lexicographic order.
    fn splits(pool: &[u32], k: usize) -> Vec<(Vec<u32>, Vec<u32>)> {
        fn rec(
            pool: &[u32],
            start: usize,
            k: usize,
            chosen: &mut Vec<u32>,
            out: &mut Vec<(Vec<u32>, Vec<u32>)>,
        ) {
            if chosen.len() == k {
                let rest: Vec<u32> = pool
                    .iter()
                    .filter(|x| !chosen.contains(x))
                    .copied()
                    .collect();
                out.push((chosen.clone(), rest));
                return;
            }
            let need = k - chosen.len();
            for i in start..=pool.len().saturating_sub(need) {
                chosen.push(pool[i]);
                rec(pool, i + 1, k, chosen, out);
                chosen.pop();
            }
        }
        let mut out = Vec::new();
        rec(pool, 0, k, &mut Vec::new(), &mut out);
        out
    }

    fn rec(
        sizes: &[u32],
        pool: &[u32],
        rows: &mut Vec<Vec<u32>>,
        alpha_len: usize,
        out: &mut Vec<Tabloid>,
    ) {
        if rows.len() == sizes.len() {
            out.push(Tabloid {
                alpha_rows: rows[..alpha_len].to_vec(),
                beta_rows: rows[alpha_len..].to_vec(),
            });
            return;
        }
        let k = sizes[rows.len()] as usize;
        for (row, rest) in splits(pool, k) {
            rows.push(row);
            rec(sizes, &rest, rows, alpha_len, out);
            rows.pop();
        }
    }

    rec(&sizes, &pool, &mut rows, alpha_len, &mut out);
    debug_assert_eq!(out.len() as u64, count);
    out.sort();
    Ok(out)
}

/// Applies `g` entrywise and canonicalizes.
pub fn act(g: &Perm, t: &Tabloid) -> Result<SignedTabloid> {
    if g.degree() != t.degree() {
        return Err(Error::SizeMismatch(format!(
            "permutation degree {} does not match tabloid degree {}",
            g.degree(),
            t.degree()
        )));
    }
    let map = |rows: &[Vec<u32>]| -> Vec<Vec<u32>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| g.apply(x)).collect())
            .collect()
    };
    Ok(canonicalize(&PairTableau {
        alpha_rows: map(&t.alpha_rows),
        beta_rows: map(&t.beta_rows),
    }))
}

/// All tabloids whose every row is a union of orbits of the group generated
/// by `gens`. For odd p-groups these are exactly the tabloids fixed by the
/// group, with sign +1; this is asserted on every returned tabloid.
pub fn fixed_tabloids(shape: &BiComposition, gens: &[Perm], cap: u64) -> Result<Vec<Tabloid>> {
    let n = shape.size();
    for g in gens {
        if g.degree() != n {
            return Err(Error::SizeMismatch(
                "generator degree does not match shape".into(),
            ));
        }
    }
    let ids = orbit_ids(n, gens);
    let all = enumerate_tabloids(shape, cap)?;
    let mut orbit_size: HashMap<u32, u32> = HashMap::new();
    for &id in &ids {
        *orbit_size.entry(id).or_insert(0) += 1;
    }
    let mut fixed = Vec::new();
    'next: for t in all {
        for row in t.rows() {
            let mut counts: HashMap<u32, u32> = HashMap::new();
            for &x in row {
                *counts.entry(ids[(x - 1) as usize]).or_insert(0) += 1;
            }
            for (id, c) in counts {
                if c != orbit_size[&id] {
                    continue 'next;
                }
            }
        }
        for g in gens {
            let st = act(g, &t)?;
            if st.sign != 1 || st.tabloid != t {
                return Err(Error::Internal(format!(
                    "tabloid {:?} is orbit-closed but not fixed with sign +1",
                    t
                )));
            }
        }
        fixed.push(t);
    }
    Ok(fixed)
}

/// Positions of the fixed tabloids of `P_rho` inside an already enumerated
/// basis.
pub fn fixed_indices(tabloids: &[Tabloid], n: u32, gens: &[Perm]) -> Vec<usize> {
    let ids = orbit_ids(n, gens);
    let mut orbit_size: HashMap<u32, u32> = HashMap::new();
    for &id in &ids {
        *orbit_size.entry(id).or_insert(0) += 1;
    }
    let mut out = Vec::new();
    'next: for (k, t) in tabloids.iter().enumerate() {
        for row in t.rows() {
            let mut counts: HashMap<u32, u32> = HashMap::new();
            for &x in row {
                *counts.entry(ids[(x - 1) as usize]).or_insert(0) += 1;
            }
            for (id, c) in counts {
                if c != orbit_size[&id] {
                    continue 'next;
                }
            }
        }
        out.push(k);
    }
    out
}

/// The rho-type of a P_rho-fixed tabloid: `(gamma_i)_j` counts the orbits
/// of size `p^i` inside alpha row `j`, and likewise `(delta_i)_k` for beta
/// rows.
pub fn rho_type(t: &Tabloid, rho: &RhoShape) -> Result<LambdaEntry> {
    if t.degree() != rho.degree() {
        return Err(Error::SizeMismatch(
            "tabloid degree does not match rho".into(),
        ));
    }
    let levels = rho.levels().max(1);
    // row index (alpha: 0.., beta: offset..) of every point
    let arows = t.alpha_rows.len();
    let mut row_of = vec![usize::MAX; t.degree() as usize + 1];
    for (r, row) in t.rows().enumerate() {
        for &x in row {
            row_of[x as usize] = r;
        }
    }
    let mut gcounts = vec![vec![0u32; arows]; levels];
    let mut dcounts = vec![vec![0u32; t.beta_rows.len()]; levels];
    for i in 0..levels {
        for j in 1..=rho.mult(i) {
            let orbit = rho.orbit(i, j);
            let r = row_of[*orbit.start() as usize];
            for x in orbit.clone() {
                if row_of[x as usize] != r {
                    return Err(Error::Invalid(format!(
                        "tabloid {:?} is not fixed by P_{}: orbit {:?} split across rows",
                        t, rho, orbit
                    )));
                }
            }
            if r < arows {
                gcounts[i][r] += 1;
            } else {
                dcounts[i][r - arows] += 1;
            }
        }
    }
    Ok(LambdaEntry {
        gammas: gcounts.into_iter().map(Composition::new).collect(),
        deltas: dcounts.into_iter().map(Composition::new).collect(),
    })
}

/// The bijection Theta: sends a P_rho-fixed tabloid of rho-type
/// `(gamma|delta)` to the tuple of `(gamma_i|delta_i)`-tabloids recording
/// which rows contain which orbits.
pub fn theta(t: &Tabloid, rho: &RhoShape) -> Result<Vec<Tabloid>> {
    let entry = rho_type(t, rho)?; // validates fixedness
    let arows = t.alpha_rows.len();
    let brows = t.beta_rows.len();
    let mut row_of = vec![usize::MAX; t.degree() as usize + 1];
    for (r, row) in t.rows().enumerate() {
        for &x in row {
            row_of[x as usize] = r;
        }
    }
    let levels = rho.levels().max(1);
    let mut out = Vec::with_capacity(levels);
    for i in 0..levels {
        let mut alpha_rows: Vec<Vec<u32>> = vec![Vec::new(); arows];
        let mut beta_rows: Vec<Vec<u32>> = vec![Vec::new(); brows];
        for j in 1..=rho.mult(i) {
            let first = *rho.orbit(i, j).start();
            let r = row_of[first as usize];
            if r < arows {
                alpha_rows[r].push(j);
            } else {
                beta_rows[r - arows].push(j);
            }
        }
        while alpha_rows.last().map_or(false, |r| r.is_empty()) {
            alpha_rows.pop();
        }
        while beta_rows.last().map_or(false, |r| r.is_empty()) {
            beta_rows.pop();
        }
        let ti = Tabloid {
            alpha_rows,
            beta_rows,
        };
        debug_assert_eq!(
            ti.shape(),
            BiComposition::new(entry.gamma(i), entry.delta(i))
        );
        out.push(ti);
    }
    Ok(out)
}

/// Row-wise union of two tabloids on disjoint point ranges `{1..m}` and
/// `{m+1..m+N}`, per component.
pub fn concat_tabloids(t1: &Tabloid, t2: &Tabloid) -> Result<Tabloid> {
    let m = t1.degree();
    if t2.rows().flat_map(|r| r.iter()).any(|&x| x <= m) {
        return Err(Error::Invalid(
            "second tabloid must live on points above the first".into(),
        ));
    }
    let merge = |a: &[Vec<u32>], b: &[Vec<u32>]| -> Vec<Vec<u32>> {
        let rows = a.len().max(b.len());
        (0..rows)
            .map(|i| {
                let mut row = a.get(i).cloned().unwrap_or_default();
                row.extend(b.get(i).cloned().unwrap_or_default());
                row.sort_unstable();
                row
            })
            .collect()
    };
    Ok(Tabloid {
        alpha_rows: merge(&t1.alpha_rows, &t2.alpha_rows),
        beta_rows: merge(&t1.beta_rows, &t2.beta_rows),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{lambda_set, Composition};
    use crate::sylow::{sylow_generators, Perm};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn comp(v: &[u32]) -> Composition {
        Composition::new(v.to_vec())
    }

    fn shape(a: &[u32], b: &[u32]) -> BiComposition {
        BiComposition::new(comp(a), comp(b))
    }

    fn tab(a: &[&[u32]], b: &[&[u32]]) -> Tabloid {
        Tabloid::from_rows(
            a.iter().map(|r| r.to_vec()).collect(),
            b.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn standard_tableau_examples() {
        let t = standard_tableau(&shape(&[2, 1], &[3]));
        assert_eq!(t.alpha_rows, vec![vec![1, 2], vec![3]]);
        assert_eq!(t.beta_rows, vec![vec![4, 5, 6]]);

        let t = standard_tableau(&shape(&[1], &[]));
        assert_eq!(t.alpha_rows, vec![vec![1]]);
        assert!(t.beta_rows.is_empty());

        let t = standard_tableau(&shape(&[], &[2]));
        assert!(t.alpha_rows.is_empty());
        assert_eq!(t.beta_rows, vec![vec![1, 2]]);
    }

    #[test]
    fn canonicalize_signs() {
        // beta row [5,4] sorts with one swap: sign -1
        let st = canonicalize(&PairTableau {
            alpha_rows: vec![vec![1, 2, 3]],
            beta_rows: vec![vec![5, 4]],
        });
        assert_eq!(st.sign, -1);
        assert_eq!(st.tabloid.beta_rows, vec![vec![4, 5]]);

        // row standard input: sign +1
        let st = canonicalize(&standard_tableau(&shape(&[2, 1], &[3])));
        assert_eq!(st.sign, 1);

        // swap inside an alpha row costs nothing
        let st = canonicalize(&PairTableau {
            alpha_rows: vec![vec![2, 1]],
            beta_rows: vec![vec![3]],
        });
        assert_eq!(st.sign, 1);
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_tabloids(&shape(&[2, 1], &[]), 1 << 20).unwrap().len(), 3);
        assert_eq!(
            enumerate_tabloids(&shape(&[2, 1], &[6]), 1 << 20).unwrap().len(),
            252
        );
        assert_eq!(
            enumerate_tabloids(&shape(&[], &[9, 3]), 1 << 20).unwrap().len(),
            220
        );
        assert_eq!(enumerate_tabloids(&shape(&[], &[]), 16).unwrap().len(), 1);
        assert!(enumerate_tabloids(&shape(&[5, 5], &[]), 16).is_err());
    }

    #[test]
    fn enumerate_counts_match_multinomial_small() {
        for n in 0..=8u32 {
            for bc in crate::combinatorics::partition_pairs(n) {
                let sizes: Vec<u32> = bc
                    .alpha
                    .parts()
                    .iter()
                    .chain(bc.beta.parts().iter())
                    .copied()
                    .collect();
                let count = multinomial(n, &sizes).unwrap();
                assert_eq!(
                    enumerate_tabloids(&bc, 1 << 20).unwrap().len() as u64,
                    count
                );
            }
        }
    }

    #[test]
    fn act_paper_example() {
        // (23)(45) applied to {(13|2)|(456789)} gives -{(12|3)|(456789)}.
        let g = Perm::from_cycles(9, &[&[2, 3], &[4, 5]]).unwrap();
        let v = tab(&[&[1, 3], &[2]], &[&[4, 5, 6, 7, 8, 9]]);
        let u = tab(&[&[1, 2], &[3]], &[&[4, 5, 6, 7, 8, 9]]);
        let st = act(&g, &v).unwrap();
        assert_eq!(st.sign, -1);
        assert_eq!(st.tabloid, u);
    }

    #[test]
    fn act_identity_and_inverse() {
        let t = tab(&[&[1, 4], &[7]], &[&[2, 3, 5, 6]]);
        let id = Perm::identity(7);
        let st = act(&id, &t).unwrap();
        assert_eq!((st.sign, &st.tabloid), (1, &t));

        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let mut images: Vec<u32> = (1..=7).collect();
            for i in (1..7usize).rev() {
                let j = rng.gen_range(0..=i);
                images.swap(i, j);
            }
            let g = Perm::from_images(images).unwrap();
            let st = act(&g, &t).unwrap();
            let back = act(&g.inverse(), &st.tabloid).unwrap();
            assert_eq!(back.tabloid, t);
            assert_eq!(back.sign * st.sign, 1);
        }
    }

    #[test]
    fn act_is_an_action_with_signs() {
        let mut rng = StdRng::seed_from_u64(11);
        let shapes = [shape(&[3, 1], &[2, 2]), shape(&[2], &[3, 1]), shape(&[1, 1], &[4])];
        for sh in &shapes {
            let n = sh.size();
            let tabs = enumerate_tabloids(sh, 1 << 20).unwrap();
            for _ in 0..30 {
                let rand_perm = |rng: &mut StdRng| {
                    let mut images: Vec<u32> = (1..=n).collect();
                    for i in (1..n as usize).rev() {
                        let j = rng.gen_range(0..=i);
                        images.swap(i, j);
                    }
                    Perm::from_images(images).unwrap()
                };
                let g = rand_perm(&mut rng);
                let h = rand_perm(&mut rng);
                let t = &tabs[rng.gen_range(0..tabs.len())];
                let gh = g.compose(&h);
                let st1 = act(&gh, t).unwrap();
                let inner = act(&h, t).unwrap();
                let st2 = act(&g, &inner.tabloid).unwrap();
                assert_eq!(st1.tabloid, st2.tabloid);
                assert_eq!(st1.sign, st2.sign * inner.sign);
            }
        }
    }

    #[test]
    fn fixed_tabloids_paper_example() {
        // Q2 = <(4,5,6),(7,8,9)>: exactly the three displayed tabloids.
        let q2 = vec![
            Perm::from_cycles(9, &[&[4, 5, 6]]).unwrap(),
            Perm::from_cycles(9, &[&[7, 8, 9]]).unwrap(),
        ];
        let fixed = fixed_tabloids(&shape(&[2, 1], &[6]), &q2, 1 << 20).unwrap();
        let expected = vec![
            tab(&[&[1, 2], &[3]], &[&[4, 5, 6, 7, 8, 9]]),
            tab(&[&[1, 3], &[2]], &[&[4, 5, 6, 7, 8, 9]]),
            tab(&[&[2, 3], &[1]], &[&[4, 5, 6, 7, 8, 9]]),
        ];
        assert_eq!(fixed, expected);

        // Q1 = <(1,2,3),(4,5,6),(7,8,9)>: none.
        let q1 = vec![
            Perm::from_cycles(9, &[&[1, 2, 3]]).unwrap(),
            Perm::from_cycles(9, &[&[4, 5, 6]]).unwrap(),
            Perm::from_cycles(9, &[&[7, 8, 9]]).unwrap(),
        ];
        let fixed = fixed_tabloids(&shape(&[2, 1], &[6]), &q1, 1 << 20).unwrap();
        assert!(fixed.is_empty());

        // empty generator list: everything is fixed
        let fixed = fixed_tabloids(&shape(&[2, 1], &[]), &[], 1 << 20).unwrap();
        assert_eq!(fixed.len(), 3);
    }

    #[test]
    fn rho_type_example() {
        let rho = RhoShape::new(3, vec![3, 2]);
        let t = tab(&[&[1, 2], &[3]], &[&[4, 5, 6, 7, 8, 9]]);
        let e = rho_type(&t, &rho).unwrap();
        assert_eq!(e.gamma(0), comp(&[2, 1]));
        assert_eq!(e.gamma(1), Composition::empty());
        assert_eq!(e.delta(0), Composition::empty());
        assert_eq!(e.delta(1), comp(&[2]));

        // standard tabloid of ((n)|-) with trivial rho
        let rho = RhoShape::new(3, vec![4]);
        let t = tab(&[&[1, 2, 3, 4]], &[]);
        let e = rho_type(&t, &rho).unwrap();
        assert_eq!(e.gamma(0), comp(&[4]));

        // non-fixed tabloid rejected
        let rho = RhoShape::new(3, vec![0, 1]);
        let t = tab(&[&[1, 2], &[3]], &[]);
        assert!(rho_type(&t, &rho).is_err());
    }

    #[test]
    fn theta_example_and_injectivity() {
        let rho = RhoShape::new(3, vec![3, 2]);
        let t = tab(&[&[1, 2], &[3]], &[&[4, 5, 6, 7, 8, 9]]);
        let ts = theta(&t, &rho).unwrap();
        assert_eq!(ts.len(), 2);
        assert_eq!(ts[0], tab(&[&[1, 2], &[3]], &[]));
        assert_eq!(ts[1], tab(&[], &[&[1, 2]]));

        // Theta restricted to one rho-type is injective and hits the full
        // product of tabloid sets.
        let sh = shape(&[2, 1], &[6]);
        let ps = sylow_generators(&rho);
        let fixed = fixed_tabloids(&sh, &ps.gens, 1 << 20).unwrap();
        let mut images = std::collections::HashSet::new();
        for t in &fixed {
            assert!(images.insert(theta(t, &rho).unwrap()), "theta not injective");
        }
        // block sizes: prod_i multinomial(n_i; gamma_i . delta_i)
        let ls = lambda_set(&sh, &rho).unwrap();
        let mut total = 0u64;
        for e in &ls.entries {
            let mut block = 1u64;
            for i in 0..rho.levels() {
                let gd: Vec<u32> = e
                    .gamma(i)
                    .parts()
                    .iter()
                    .chain(e.delta(i).parts().iter())
                    .copied()
                    .collect();
                block *= multinomial(rho.mult(i), &gd).unwrap();
            }
            total += block;
        }
        assert_eq!(total, fixed.len() as u64);
    }

    #[test]
    fn theta_of_standard_fixed_tabloid_is_standard() {
        let rho = RhoShape::new(3, vec![2, 1, 1]);
        // rows grouped exactly along orbit blocks
        let t = tab(&[&[1, 2], &[3, 4, 5]], &[&[6, 7, 8, 9, 10, 11, 12, 13, 14]]);
        let ts = theta(&t, &rho).unwrap();
        assert_eq!(ts[0], tab(&[&[1, 2]], &[]));
        assert_eq!(ts[1], tab(&[&[], &[1]], &[]));
        assert_eq!(ts[2], tab(&[], &[&[1]]));
    }

    #[test]
    fn block_sizes_match_lambda_counts_random() {
        let mut rng = StdRng::seed_from_u64(23);
        let mut done = 0;
        while done < 50 {
            let n = rng.gen_range(1..=10u32);
            let shapes = crate::combinatorics::partition_pairs(n);
            let sh = shapes[rng.gen_range(0..shapes.len())].clone();
            let rhos = crate::combinatorics::rho_shapes(n, 3);
            let rho = rhos[rng.gen_range(0..rhos.len())].clone();
            let ps = sylow_generators(&rho);
            let fixed = fixed_tabloids(&sh, &ps.gens, 1 << 20).unwrap();
            // group fixed tabloids by rho-type and compare against the
            // product formula
            let mut by_type: HashMap<LambdaEntry, u64> = HashMap::new();
            for t in &fixed {
                *by_type.entry(rho_type(t, &rho).unwrap()).or_insert(0) += 1;
            }
            let ls = lambda_set(&sh, &rho).unwrap();
            let mut total = 0u64;
            for e in &ls.entries {
                let mut block = 1u64;
                for i in 0..rho.levels().max(1) {
                    let gd: Vec<u32> = e
                        .gamma(i)
                        .parts()
                        .iter()
                        .chain(e.delta(i).parts().iter())
                        .copied()
                        .collect();
                    block *= multinomial(rho.mult(i), &gd).unwrap();
                }
                total += block;
                if block > 0 {
                    assert_eq!(by_type.get(e).copied().unwrap_or(0), block);
                }
            }
            assert_eq!(total, fixed.len() as u64);
            done += 1;
        }
    }

    #[test]
    fn concat_examples() {
        let t1 = tab(&[&[1]], &[]);
        let t2 = tab(&[&[2, 3, 4]], &[]);
        let t = concat_tabloids(&t1, &t2).unwrap();
        assert_eq!(t, tab(&[&[1, 2, 3, 4]], &[]));

        // injectivity on a small full product
        let sh1 = shape(&[1, 1], &[]);
        let tabs1 = enumerate_tabloids(&sh1, 1 << 20).unwrap();
        let t2 = tab(&[&[3, 4, 5]], &[]);
        let mut seen = std::collections::HashSet::new();
        for a in &tabs1 {
            assert!(seen.insert(concat_tabloids(a, &t2).unwrap()));
        }

        // overlap rejected
        assert!(concat_tabloids(&tab(&[&[1, 2]], &[]), &tab(&[&[2, 3]], &[])).is_err());
    }
}
