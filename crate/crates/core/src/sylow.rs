//! Permutations, signed permutations, and explicit generators for the
//! Sylow p-subgroups `P_rho` of Young subgroups, built by the wreath
//! recursion `P_{p^{d+1}} = P_{p^d} wr P_p` with blocks laid out ascending
//! (fixed points first, then p-blocks, and so on).

use crate::combinatorics::RhoShape;
use crate::{Error, Result};
use std::collections::HashSet;
use std::fmt;

/// A permutation of `{1..n}`, stored as the image vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: u32) -> Self {
        Perm((1..=n).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x as usize > n || seen[x as usize] {
                return Err(Error::Invalid("not a permutation".into()));
            }
            seen[x as usize] = true;
        }
        Ok(Perm(images))
    }

    /// Builds a permutation of `{1..n}` from disjoint cycles.
    pub fn from_cycles(n: u32, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (1..=n).collect();
        for cyc in cycles {
            for (k, &x) in cyc.iter().enumerate() {
                let y = cyc[(k + 1) % cyc.len()];
                if x == 0 || x > n {
                    return Err(Error::Invalid(format!("point {} out of range", x)));
                }
                images[(x - 1) as usize] = y;
            }
        }
        Perm::from_images(images)
    }

    pub fn transposition(n: u32, i: u32, j: u32) -> Self {
        let mut images: Vec<u32> = (1..=n).collect();
        images[(i - 1) as usize] = j;
        images[(j - 1) as usize] = i;
        Perm(images)
    }

    pub fn degree(&self) -> u32 {
        self.0.len() as u32
    }

    /// Image of the point `x` (1-indexed).
    pub fn apply(&self, x: u32) -> u32 {
        self.0[(x - 1) as usize]
    }

    /// `self * other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.apply(x)).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            images[(x - 1) as usize] = i as u32 + 1;
        }
        Perm(images)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x == i as u32 + 1)
    }

    /// Factors the permutation into adjacent transpositions; entry `i`
    /// stands for `(i+1, i+2)`. Bubble sort of the image vector.
    pub fn adjacent_word(&self) -> Vec<usize> {
        let mut v = self.0.clone();
        let mut word = Vec::new();
        let n = v.len();
        loop {
            let mut swapped = false;
            for i in 0..n.saturating_sub(1) {
                if v[i] > v[i + 1] {
                    v.swap(i, i + 1);
                    word.push(i);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        // sorting the images of g by adjacent swaps builds g^{-1} as a word
        // read one way; reversing gives g itself.
        word.reverse();
        word
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // cycle notation
        let n = self.degree();
        let mut seen = vec![false; n as usize + 1];
        let mut printed = false;
        for start in 1..=n {
            if seen[start as usize] || self.apply(start) == start {
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            loop {
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", x)?;
                seen[x as usize] = true;
                first = false;
                x = self.apply(x);
                if x == start {
                    break;
                }
            }
            write!(f, ")")?;
            printed = true;
        }
        if !printed {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// An element of the hyperoctahedral group `C_2 wr S_m`: a permutation
/// together with a sign-flip vector. Multiplication follows
/// `(e; s)(e'; s') = (e + s.e'; s s')` where `(s.e')_i = e'_{s^{-1}(i)}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    pub perm: Perm,
    pub flips: Vec<bool>,
}

impl SignedPerm {
    pub fn identity(m: u32) -> Self {
        SignedPerm {
            perm: Perm::identity(m),
            flips: vec![false; m as usize],
        }
    }

    pub fn from_perm(perm: Perm) -> Self {
        let m = perm.degree() as usize;
        SignedPerm {
            perm,
            flips: vec![false; m],
        }
    }

    /// The generator flipping the sign at position `j` (1-indexed).
    pub fn flip(m: u32, j: u32) -> Self {
        let mut flips = vec![false; m as usize];
        flips[(j - 1) as usize] = true;
        SignedPerm {
            perm: Perm::identity(m),
            flips,
        }
    }

    pub fn degree(&self) -> u32 {
        self.perm.degree()
    }

    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let inv = self.perm.inverse();
        let flips = (1..=self.degree())
            .map(|i| {
                let idx = (i - 1) as usize;
                self.flips[idx] ^ other.flips[(inv.apply(i) - 1) as usize]
            })
            .collect();
        SignedPerm {
            perm: self.perm.compose(&other.perm),
            flips,
        }
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[", self.perm)?;
        for (i, &b) in self.flips.iter().enumerate() {
            if b {
                write!(f, "{},", i + 1)?;
            }
        }
        write!(f, "]")
    }
}

/// Group descriptor: a symmetric group with adjacent transpositions as
/// generators, or `C_2 wr S_m` with additionally one sign flip at the
/// first position.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GroupSpec {
    Symmetric(u32),
    Hyperoctahedral(u32),
}

impl GroupSpec {
    pub fn degree(&self) -> u32 {
        match *self {
            GroupSpec::Symmetric(n) | GroupSpec::Hyperoctahedral(n) => n,
        }
    }

    /// Number of standard generators: adjacent transpositions, plus the
    /// first sign flip in the hyperoctahedral case (when the degree is
    /// positive).
    pub fn num_gens(&self) -> usize {
        match *self {
            GroupSpec::Symmetric(n) => n.saturating_sub(1) as usize,
            GroupSpec::Hyperoctahedral(m) => {
                m.saturating_sub(1) as usize + if m > 0 { 1 } else { 0 }
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupSpec::Symmetric(n) => write!(f, "S_{}", n),
            GroupSpec::Hyperoctahedral(m) => write!(f, "B_{}", m),
        }
    }
}

/// A p-subgroup of a symmetric group given by explicit generators, with the
/// Sylow shape it realizes.
#[derive(Clone, Debug)]
pub struct PSubgroup {
    pub p: u64,
    pub degree: u32,
    pub shape: RhoShape,
    pub gens: Vec<Perm>,
}

/// Generators of `P_{p^d}` acting on `{offset+1, ..., offset+p^d}`, by the
/// wreath recursion: generators of the first base copy plus the cycle
/// rotating the p blocks.
fn wreath_gens(p: u64, d: u32, offset: u32, n: u32, out: &mut Vec<Perm>) {
    if d == 0 {
        return;
    }
    let sub = p.pow(d - 1) as u32; // block size of the base copy
    wreath_gens(p, d - 1, offset, n, out);
    // top cycle: x -> x + sub within the p blocks, wrapping around
    let width = sub * p as u32;
    let mut images: Vec<u32> = (1..=n).collect();
    for x in (offset + 1)..=(offset + width) {
        let rel = x - offset - 1;
        let target = (rel + sub) % width;
        images[(x - 1) as usize] = offset + target + 1;
    }
    out.push(Perm::from_images(images).expect("wreath top cycle is a permutation"));
}

/// Explicit generators for `P_rho` on `{1..n}` with ascending block layout.
pub fn sylow_generators(rho: &RhoShape) -> PSubgroup {
    let n = rho.degree();
    let mut gens = Vec::new();
    let mut offset = 0u32;
    for (i, &m) in rho.mults().iter().enumerate() {
        let block = rho.p.pow(i as u32) as u32;
        for _ in 0..m {
            wreath_gens(rho.p, i as u32, offset, n, &mut gens);
            offset += block;
        }
    }
    PSubgroup {
        p: rho.p,
        degree: n,
        shape: rho.clone(),
        gens,
    }
}

/// `P_n`, the Sylow p-subgroup of `S_n` given by the p-adic digits of `n`.
pub fn sylow_of_symmetric(n: u32, p: u64) -> PSubgroup {
    let mut digits = Vec::new();
    let mut rem = u64::from(n);
    while rem > 0 {
        digits.push((rem % p) as u32);
        rem /= p;
    }
    sylow_generators(&RhoShape::new(p, digits))
}

/// All elements of the generated group, up to the configured cap.
pub fn enumerate(ps: &PSubgroup, cap: u64) -> Result<Vec<Perm>> {
    let mut seen = HashSet::new();
    let id = Perm::identity(ps.degree);
    seen.insert(id.clone());
    let mut frontier = vec![id];
    let mut all = Vec::new();
    while let Some(g) = frontier.pop() {
        all.push(g.clone());
        for h in &ps.gens {
            let gh = h.compose(&g);
            if !seen.contains(&gh) {
                if seen.len() as u64 >= cap {
                    return Err(Error::GroupCap { cap });
                }
                seen.insert(gh.clone());
                frontier.push(gh);
            }
        }
    }
    all.sort();
    Ok(all)
}

/// A chain of cyclic generators `c_1, ..., c_t` of order p such that every
/// element of `P_rho` factors uniquely as `a_1 a_2 ... a_t` with
/// `a_k` a power of `c_k`. Consequently the group-algebra norm satisfies
/// `sum_{g in P} g = prod_k (1 + c_k + ... + c_k^{p-1})` in this order.
pub fn cyclic_norm_chain(rho: &RhoShape) -> Vec<Perm> {
    // For P_{p^{d+1}} = base x| top, elements factor uniquely as b t, so
    // the chain is: chains of the p base copies, then the top cycle.
    fn chain(p: u64, d: u32, offset: u32, n: u32, out: &mut Vec<Perm>) {
        if d == 0 {
            return;
        }
        let sub = p.pow(d - 1) as u32;
        for j in 0..p as u32 {
            chain(p, d - 1, offset + j * sub, n, out);
        }
        let width = sub * p as u32;
        let mut images: Vec<u32> = (1..=n).collect();
        for x in (offset + 1)..=(offset + width) {
            let rel = x - offset - 1;
            images[(x - 1) as usize] = offset + (rel + sub) % width + 1;
        }
        out.push(Perm::from_images(images).unwrap());
    }
    let n = rho.degree();
    let mut out = Vec::new();
    let mut offset = 0u32;
    for (i, &m) in rho.mults().iter().enumerate() {
        let block = rho.p.pow(i as u32) as u32;
        for _ in 0..m {
            chain(rho.p, i as u32, offset, n, &mut out);
            offset += block;
        }
    }
    out
}

/// Orbit identifiers of the group generated by `gens` on `{1..n}`: entry
/// `x-1` is the smallest point of the orbit of `x`.
pub fn orbit_ids(n: u32, gens: &[Perm]) -> Vec<u32> {
    let mut parent: Vec<u32> = (0..n).collect();
    fn find(parent: &mut Vec<u32>, x: u32) -> u32 {
        let mut r = x;
        while parent[r as usize] != r {
            r = parent[r as usize];
        }
        let mut c = x;
        while parent[c as usize] != r {
            let next = parent[c as usize];
            parent[c as usize] = r;
            c = next;
        }
        r
    }
    for g in gens {
        for x in 1..=n {
            let a = find(&mut parent, x - 1);
            let b = find(&mut parent, g.apply(x) - 1);
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_basics() {
        let g = Perm::from_cycles(5, &[&[1, 2, 3]]).unwrap();
        assert_eq!(g.apply(1), 2);
        assert_eq!(g.apply(3), 1);
        assert_eq!(g.apply(4), 4);
        assert!(g.compose(&g).compose(&g).is_identity());
        assert!(g.compose(&g.inverse()).is_identity());
    }

    #[test]
    fn adjacent_word_reconstructs() {
        for images in [
            vec![3, 1, 4, 2],
            vec![1, 2, 3, 4],
            vec![4, 3, 2, 1],
            vec![2, 4, 1, 3],
        ] {
            let g = Perm::from_images(images).unwrap();
            let mut h = Perm::identity(g.degree());
            for i in g.adjacent_word() {
                let s = Perm::transposition(g.degree(), i as u32 + 1, i as u32 + 2);
                h = h.compose(&s);
            }
            assert_eq!(h, g);
        }
    }

    #[test]
    fn signed_perm_multiplication_rule() {
        // (e1; (1,2)) squared is (e1 + e2; id).
        let s = SignedPerm {
            perm: Perm::from_cycles(2, &[&[1, 2]]).unwrap(),
            flips: vec![true, false],
        };
        let sq = s.compose(&s);
        assert!(sq.perm.is_identity());
        assert_eq!(sq.flips, vec![true, true]);
    }

    #[test]
    fn sylow_p3_is_three_cycle() {
        let ps = sylow_generators(&RhoShape::new(3, vec![0, 1]));
        assert_eq!(ps.gens, vec![Perm::from_cycles(3, &[&[1, 2, 3]]).unwrap()]);
        assert_eq!(enumerate(&ps, 729).unwrap().len(), 3);
    }

    #[test]
    fn sylow_p9_wreath() {
        let ps = sylow_generators(&RhoShape::new(3, vec![0, 0, 1]));
        let c1 = Perm::from_cycles(9, &[&[1, 2, 3]]).unwrap();
        let c2 = Perm::from_cycles(9, &[&[1, 4, 7], &[2, 5, 8], &[3, 6, 9]]).unwrap();
        assert_eq!(ps.gens, vec![c1, c2]);
        assert_eq!(enumerate(&ps, 729).unwrap().len(), 81); // 3^4
    }

    #[test]
    fn sylow_mixed_shape_example() {
        // rho = (1,1,1,3,3): the group generated by (4,5,6) and (7,8,9).
        let ps = sylow_generators(&RhoShape::new(3, vec![3, 2]));
        assert_eq!(
            ps.gens,
            vec![
                Perm::from_cycles(9, &[&[4, 5, 6]]).unwrap(),
                Perm::from_cycles(9, &[&[7, 8, 9]]).unwrap(),
            ]
        );
        assert_eq!(enumerate(&ps, 729).unwrap().len(), 9);
    }

    #[test]
    fn sylow_of_symmetric_examples() {
        let ps = sylow_of_symmetric(3, 3);
        assert_eq!(enumerate(&ps, 729).unwrap().len(), 3);

        // n = 4 = 1 + 3 with ascending layout: the 3-block is {2,3,4}.
        let ps = sylow_of_symmetric(4, 3);
        assert_eq!(ps.gens, vec![Perm::from_cycles(4, &[&[2, 3, 4]]).unwrap()]);

        // n = 12 = 3 + 9: order 3^5.
        let ps = sylow_of_symmetric(12, 3);
        assert_eq!(ps.shape.log_order(), 5);
        assert_eq!(enumerate(&ps, 729).unwrap().len(), 243);

        let ps = sylow_of_symmetric(2, 3);
        assert!(ps.gens.is_empty());
        assert_eq!(enumerate(&ps, 729).unwrap().len(), 1);
    }

    #[test]
    fn generated_order_matches_formula() {
        for (mults, n) in [
            (vec![2u32, 1], 5u32),
            (vec![0, 2], 6),
            (vec![1, 0, 1], 10),
            (vec![0, 1, 1], 12),
        ] {
            let rho = RhoShape::new(3, mults);
            assert_eq!(rho.degree(), n);
            let ps = sylow_generators(&rho);
            let size = enumerate(&ps, 729).unwrap().len() as u64;
            assert_eq!(size, 3u64.pow(rho.log_order() as u32));
        }
    }

    #[test]
    fn orbit_sizes_match_shape() {
        let rho = RhoShape::new(3, vec![2, 1, 1]);
        let ps = sylow_generators(&rho);
        let ids = orbit_ids(ps.degree, &ps.gens);
        let mut counts = std::collections::HashMap::new();
        for id in ids {
            *counts.entry(id).or_insert(0u32) += 1;
        }
        let mut sizes: Vec<u32> = counts.values().copied().collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 3, 9]);
    }

    #[test]
    fn norm_chain_factors_the_group() {
        // Multiset check: products a_1 a_2 a_3 ... over the chain hit every
        // element exactly once.
        let rho = RhoShape::new(3, vec![0, 0, 1]);
        let chain = cyclic_norm_chain(&rho);
        assert_eq!(chain.len(), 4);
        let mut all = HashSet::new();
        let n = rho.degree();
        fn walk(
            chain: &[Perm],
            k: usize,
            acc: Perm,
            p: u32,
            all: &mut HashSet<Perm>,
        ) {
            if k == chain.len() {
                assert!(all.insert(acc), "duplicate factorization");
                return;
            }
            let mut power = Perm::identity(acc.degree());
            for _ in 0..p {
                walk(chain, k + 1, acc.compose(&power), p, all);
                power = power.compose(&chain[k]);
            }
        }
        walk(&chain, 0, Perm::identity(n), 3, &mut all);
        assert_eq!(all.len(), 81);
    }
}
