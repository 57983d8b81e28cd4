//! Compositions, partitions, the dominance order on pairs, p-adic
//! expansions, vertex shapes and the index sets `Lambda((alpha|beta), rho)`
//! that drive the Brauer-quotient bookkeeping.

use crate::{validate_odd_prime, Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A composition: a finite sequence of non-negative integers whose last
/// entry is nonzero. Internal zero parts are allowed; trailing zeros are
/// trimmed on construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Composition(parts)
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `i`-th part, zero beyond the length. Parts are 0-indexed.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_partition(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1]) && self.0.last() != Some(&0)
    }

    /// Parts sorted non-increasingly with zeros dropped.
    pub fn sorted_partition(&self) -> Partition {
        let mut v: Vec<u32> = self.0.iter().copied().filter(|&x| x != 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).expect("sorted nonzero parts form a partition")
    }

    pub fn partial_sum(&self, k: usize) -> u32 {
        self.0.iter().take(k).sum()
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

/// Scalar multiple `q * alpha`, with `scale(0, alpha) = ()`.
pub fn scale(q: u32, a: &Composition) -> Composition {
    if q == 0 {
        return Composition::empty();
    }
    Composition::new(a.parts().iter().map(|&x| x * q).collect())
}

/// Concatenation `alpha . beta`.
pub fn concat(a: &Composition, b: &Composition) -> Composition {
    let mut v = a.parts().to_vec();
    v.extend_from_slice(b.parts());
    Composition::new(v)
}

/// Componentwise sum, the shorter composition padded with zeros.
pub fn padded_sum(a: &Composition, b: &Composition) -> Composition {
    let n = a.len().max(b.len());
    Composition::new((0..n).map(|i| a.part(i) + b.part(i)).collect())
}

/// Componentwise difference `alpha - beta`; requires `beta_i <= alpha_i`.
pub fn padded_sub(a: &Composition, b: &Composition) -> Result<Composition> {
    let n = a.len().max(b.len());
    let mut v = Vec::with_capacity(n);
    for i in 0..n {
        let (x, y) = (a.part(i), b.part(i));
        if y > x {
            return Err(Error::Invalid(format!(
                "cannot subtract {} from {}: part {} too large",
                b, a, i
            )));
        }
        v.push(x - y);
    }
    Ok(Composition::new(v))
}

/// A partition: a composition with non-increasing (hence positive) parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Composition);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let c = Composition::new(parts);
        if !c.is_partition() {
            return Err(Error::Invalid(format!("{} is not a partition", c)));
        }
        Ok(Partition(c))
    }

    pub fn empty() -> Self {
        Partition(Composition::empty())
    }

    pub fn from_composition(c: &Composition) -> Result<Self> {
        if !c.is_partition() {
            return Err(Error::Invalid(format!("{} is not a partition", c)));
        }
        Ok(Partition(c.clone()))
    }

    pub fn comp(&self) -> &Composition {
        &self.0
    }

    pub fn parts(&self) -> &[u32] {
        self.0.parts()
    }

    pub fn part(&self, i: usize) -> u32 {
        self.0.part(i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.size()
    }

    /// `alpha_i - alpha_{i+1} < p` for all `i`, with the convention that the
    /// part after the last is zero.
    pub fn is_p_restricted(&self, p: u64) -> bool {
        let parts = self.parts();
        for i in 0..parts.len() {
            let next = if i + 1 < parts.len() { parts[i + 1] } else { 0 };
            if u64::from(parts[i] - next) >= p {
                return false;
            }
        }
        true
    }

    /// The conjugate partition `alpha'_j = |{i : alpha_i >= j}|`.
    pub fn conjugate(&self) -> Partition {
        let parts = self.parts();
        if parts.is_empty() {
            return Partition::empty();
        }
        let m = parts[0] as usize;
        let mut v = vec![0u32; m];
        for j in 1..=m {
            v[j - 1] = parts.iter().filter(|&&x| x as usize >= j).count() as u32;
        }
        Partition::new(v).expect("conjugate is a partition")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// All partitions of `n`, in descending lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition::new(cur.clone()).unwrap());
            return;
        }
        let top = rem.min(max);
        for k in (1..=top).rev() {
            cur.push(k);
            rec(rem - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All p-restricted partitions of `n`.
pub fn restricted_partitions(n: u32, p: u64) -> Vec<Partition> {
    partitions(n)
        .into_iter()
        .filter(|x| x.is_p_restricted(p))
        .collect()
}

/// An ordered pair of compositions `(alpha|beta)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiComposition {
    pub alpha: Composition,
    pub beta: Composition,
}

impl BiComposition {
    pub fn new(alpha: Composition, beta: Composition) -> Self {
        BiComposition { alpha, beta }
    }

    pub fn size(&self) -> u32 {
        self.alpha.size() + self.beta.size()
    }

    pub fn is_partition_pair(&self) -> bool {
        self.alpha.is_partition() && self.beta.is_partition()
    }

    /// Rows sorted within each component; the module `M(alpha|beta)` only
    /// depends on the shape up to this normalization.
    pub fn normalized(&self) -> BiComposition {
        BiComposition {
            alpha: self.alpha.sorted_partition().comp().clone(),
            beta: self.beta.sorted_partition().comp().clone(),
        }
    }
}

impl fmt::Debug for BiComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for BiComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.alpha, self.beta)
    }
}

/// All pairs of partitions `(alpha|beta)` with `|alpha| + |beta| = n`,
/// alpha sizes descending.
pub fn partition_pairs(n: u32) -> Vec<BiComposition> {
    let mut out = Vec::new();
    for a in (0..=n).rev() {
        for alpha in partitions(a) {
            for beta in partitions(n - a) {
                out.push(BiComposition::new(
                    alpha.comp().clone(),
                    beta.comp().clone(),
                ));
            }
        }
    }
    out
}

/// Dominance on pairs of partitions: `(lambda|nu)` dominates `(alpha|beta)`
/// iff for all `k >= 1`
///   (a) `sum_{i<=k} lambda_i >= sum_{i<=k} alpha_i`, and
///   (b) `|lambda| + sum_{i<=k} nu_i >= |alpha| + sum_{i<=k} beta_i`.
pub fn dominates(x: &BiComposition, y: &BiComposition) -> Result<bool> {
    if !x.is_partition_pair() || !y.is_partition_pair() {
        return Err(Error::Invalid(format!(
            "dominance requires partition pairs, got {} and {}",
            x, y
        )));
    }
    if x.size() != y.size() {
        return Err(Error::SizeMismatch(format!(
            "|{}| = {} but |{}| = {}",
            x,
            x.size(),
            y,
            y.size()
        )));
    }
    let kmax = x
        .alpha
        .len()
        .max(x.beta.len())
        .max(y.alpha.len())
        .max(y.beta.len());
    let (la, aa) = (x.alpha.size(), y.alpha.size());
    for k in 1..=kmax {
        if x.alpha.partial_sum(k) < y.alpha.partial_sum(k) {
            return Ok(false);
        }
        if la + x.beta.partial_sum(k) < aa + y.beta.partial_sum(k) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The p-adic expansion of a partition: the unique sequence of p-restricted
/// partitions `lambda(0), lambda(1), ...` with
/// `lambda = sum_i p^i lambda(i)`. Trailing empty layers are trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicExpansion {
    pub layers: Vec<Partition>,
}

impl PadicExpansion {
    pub fn layer(&self, i: usize) -> Partition {
        self.layers.get(i).cloned().unwrap_or_else(Partition::empty)
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    /// Reassembles `sum_i p^i lambda(i)`.
    pub fn recombine(&self, p: u64) -> Partition {
        let mut acc = Composition::empty();
        let mut q: u64 = 1;
        for layer in &self.layers {
            acc = padded_sum(&acc, &scale(q as u32, layer.comp()));
            q *= p;
        }
        Partition::from_composition(&acc).expect("recombined expansion is a partition")
    }
}

/// Candidate bottom layers: p-restricted partitions `mu` with
/// `mu_j == lambda_j (mod p)`, `mu_j <= lambda_j` and `(lambda - mu)/p` a
/// partition. The search is layer-by-layer with backtracking over the
/// per-part multiples of p.
fn bottom_layers(lambda: &Partition, p: u64) -> Vec<(Partition, Partition)> {
    let parts = lambda.parts();
    let mut found = Vec::new();
    // choice[j] = mu_j; recurse left to right.
    fn rec(
        j: usize,
        parts: &[u32],
        p: u32,
        choice: &mut Vec<u32>,
        found: &mut Vec<(Partition, Partition)>,
    ) {
        if j == parts.len() {
            let mu = Partition::new(choice.clone());
            let mu = match mu {
                Ok(m) => m,
                Err(_) => return,
            };
            let rest: Vec<u32> = parts
                .iter()
                .zip(choice.iter())
                .map(|(&l, &m)| (l - m) / p)
                .collect();
            if let Ok(quot) = Partition::new({
                let mut r = rest;
                while r.last() == Some(&0) {
                    r.pop();
                }
                r
            }) {
                found.push((mu, quot));
            }
            return;
        }
        let base = parts[j] % p;
        let mut m = base;
        loop {
            // mu must be non-increasing and p-restricted against the
            // previous part, and the quotient non-increasing as well.
            let ok_mu = if j == 0 {
                true
            } else {
                let prev = choice[j - 1];
                m <= prev && prev - m < p
            };
            let ok_quot = if j == 0 {
                true
            } else {
                (parts[j] - m) / p <= (parts[j - 1] - choice[j - 1]) / p
            };
            if ok_mu && ok_quot {
                choice.push(m);
                rec(j + 1, parts, p, choice, found);
                choice.pop();
            }
            m = match m.checked_add(p) {
                Some(v) if v <= parts[j] => v,
                _ => break,
            };
        }
    }
    rec(0, parts, p as u32, &mut Vec::new(), &mut found);
    // Last part of mu may be 0 only via trimming inside Partition::new; a
    // trailing run of zeros in `choice` is legal and handled there.
    found
}

/// Computes the p-adic expansion; uniqueness is asserted at runtime.
pub fn padic_expansion(lambda: &Partition, p: u64) -> Result<PadicExpansion> {
    validate_odd_prime(p)?;
    fn expand(lambda: &Partition, p: u64) -> Result<Vec<Partition>> {
        if lambda.is_empty() {
            return Ok(Vec::new());
        }
        let cands = bottom_layers(lambda, p);
        let mut expansions: Vec<Vec<Partition>> = Vec::new();
        for (mu, quot) in cands {
            if !mu.is_p_restricted(p) {
                continue;
            }
            let mut rest = expand(&quot, p)?;
            rest.insert(0, mu);
            expansions.push(rest);
        }
        match expansions.len() {
            1 => Ok(expansions.pop().unwrap()),
            0 => Err(Error::Internal(format!(
                "no p-adic expansion found for {} at p = {}",
                lambda, p
            ))),
            k => Err(Error::Internal(format!(
                "{} distinct p-adic expansions found for {} at p = {}",
                k, lambda, p
            ))),
        }
    }
    let mut layers = expand(lambda, p)?;
    while layers.last().map_or(false, |l| l.is_empty()) {
        layers.pop();
    }
    Ok(PadicExpansion { layers })
}

/// The Sylow shape `rho = (1^{n_0}, p^{n_1}, ..., (p^r)^{n_r})` recorded by
/// its multiplicity vector. Blocks are laid out ascending on `{1..n}`:
/// the fixed points first, then the p-blocks, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RhoShape {
    pub p: u64,
    mults: Vec<u32>,
}

impl RhoShape {
    pub fn new(p: u64, mut mults: Vec<u32>) -> Self {
        while mults.last() == Some(&0) {
            mults.pop();
        }
        RhoShape { p, mults }
    }

    pub fn trivial(p: u64, n: u32) -> Self {
        RhoShape::new(p, vec![n])
    }

    pub fn mults(&self) -> &[u32] {
        &self.mults
    }

    pub fn mult(&self, i: usize) -> u32 {
        self.mults.get(i).copied().unwrap_or(0)
    }

    /// Number of levels `r + 1`; zero for the empty shape.
    pub fn levels(&self) -> usize {
        self.mults.len()
    }

    pub fn degree(&self) -> u32 {
        let mut q: u64 = 1;
        let mut n: u64 = 0;
        for &m in &self.mults {
            n += u64::from(m) * q;
            q *= self.p;
        }
        n as u32
    }

    pub fn is_trivial(&self) -> bool {
        self.mults.len() <= 1
    }

    /// log_p of the Sylow order of `S_rho`:
    /// `sum_i n_i * (p^i - 1)/(p - 1)`.
    pub fn log_order(&self) -> u64 {
        let mut e: u64 = 0; // (p^i - 1)/(p - 1)
        let mut q: u64 = 1;
        let mut total = 0;
        for &m in &self.mults {
            total += u64::from(m) * e;
            e = e * self.p + 1;
            q *= self.p;
            let _ = q;
        }
        total
    }

    /// The orbit `O_{i,j}` (1-indexed points, j in 1..=n_i):
    /// `{(j-1) p^i + 1 + sum_{l<i} n_l p^l, ..., j p^i + sum_{l<i} n_l p^l}`.
    pub fn orbit(&self, i: usize, j: u32) -> std::ops::RangeInclusive<u32> {
        let mut offset: u64 = 0;
        let mut q: u64 = 1;
        for l in 0..i {
            offset += u64::from(self.mult(l)) * q;
            q *= self.p;
        }
        let pi = self.p.pow(i as u32);
        let lo = (u64::from(j - 1) * pi + 1 + offset) as u32;
        let hi = (u64::from(j) * pi + offset) as u32;
        lo..=hi
    }

    /// As the partition of `n` with parts sorted descending (for display).
    pub fn as_partition(&self) -> Partition {
        let mut v = Vec::new();
        let mut q: u64 = 1;
        for &m in &self.mults {
            for _ in 0..m {
                v.push(q as u32);
            }
            q *= self.p;
        }
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).expect("rho parts form a partition")
    }
}

impl fmt::Debug for RhoShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RhoShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rho[")?;
        let mut q: u64 = 1;
        let mut first = true;
        for &m in &self.mults {
            if m > 0 {
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}^{}", q, m)?;
                first = false;
            }
            q *= self.p;
        }
        write!(f, "]")
    }
}

/// All Sylow shapes of degree `n`, i.e. all multiplicity vectors with
/// `sum n_i p^i = n`.
pub fn rho_shapes(n: u32, p: u64) -> Vec<RhoShape> {
    fn rec(rem: u32, level: u32, p: u64, cur: &mut Vec<u32>, out: &mut Vec<RhoShape>) {
        if rem == 0 {
            out.push(RhoShape::new(p, cur.clone()));
            return;
        }
        let q = p.pow(level);
        if q > u64::from(rem) {
            return; // higher levels cannot absorb the remainder
        }
        for m in 0..=(u64::from(rem) / q) as u32 {
            cur.push(m);
            rec(rem - m * q as u32, level + 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, p, &mut Vec::new(), &mut out);
    out
}

/// A label `(lambda | p mu)` for a signed Young module, stored as the pair
/// of partitions `(lambda, mu)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label {
    pub lambda: Partition,
    pub mu: Partition,
}

impl Label {
    pub fn new(lambda: Partition, mu: Partition) -> Self {
        Label { lambda, mu }
    }

    pub fn degree(&self, p: u64) -> u32 {
        self.lambda.size() + (p as u32) * self.mu.size()
    }

    /// The pair `(lambda | p mu)` as a bicomposition.
    pub fn bicomp(&self, p: u64) -> BiComposition {
        BiComposition::new(
            self.lambda.comp().clone(),
            scale(p as u32, self.mu.comp()),
        )
    }

    /// Parses `(lambda|beta)` as a label, requiring `beta = p mu`.
    pub fn from_bicomp(bc: &BiComposition, p: u64) -> Result<Label> {
        if !bc.is_partition_pair() {
            return Err(Error::Invalid(format!("{} is not a partition pair", bc)));
        }
        let mut mu = Vec::new();
        for &x in bc.beta.parts() {
            if u64::from(x) % p != 0 {
                return Err(Error::Invalid(format!(
                    "{} is not of the form (lambda|p mu) at p = {}",
                    bc, p
                )));
            }
            mu.push((u64::from(x) / p) as u32);
        }
        Ok(Label {
            lambda: Partition::from_composition(&bc.alpha)?,
            mu: Partition::new(mu)?,
        })
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y({}|p*{})", self.lambda, self.mu)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y({}|p*{})", self.lambda, self.mu)
    }
}

/// Vertex shape of `Y(lambda|p mu)`: `n_0 = |lambda(0)|` and
/// `n_i = |lambda(i)| + |mu(i-1)|` for `i >= 1`.
pub fn vertex_shape(lambda: &Partition, mu: &Partition, p: u64) -> Result<RhoShape> {
    let le = padic_expansion(lambda, p)?;
    let me = padic_expansion(mu, p)?;
    let levels = le.num_layers().max(me.num_layers() + 1);
    let mut mults = Vec::with_capacity(levels);
    for i in 0..levels {
        let mut m = le.layer(i).size();
        if i >= 1 {
            m += me.layer(i - 1).size();
        }
        mults.push(m);
    }
    Ok(RhoShape::new(p, mults))
}

/// `ell_p(lambda|p mu)`: maximal `r` with `|lambda(r)| + |mu(r-1)| != 0`;
/// defined as 0 for the empty label.
pub fn ell_p(lambda: &Partition, mu: &Partition, p: u64) -> Result<usize> {
    let rho = vertex_shape(lambda, mu, p)?;
    Ok(rho.levels().saturating_sub(1))
}

/// One element of `Lambda((alpha|beta), rho)`: tuples of compositions
/// `(gamma_0..gamma_r | delta_0..delta_r)` with
/// `alpha = sum p^i gamma_i`, `beta = sum p^i delta_i` and
/// `|gamma_i| + |delta_i| = n_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct LambdaEntry {
    pub gammas: Vec<Composition>,
    pub deltas: Vec<Composition>,
}

impl LambdaEntry {
    pub fn gamma(&self, i: usize) -> Composition {
        self.gammas.get(i).cloned().unwrap_or_else(Composition::empty)
    }

    pub fn delta(&self, i: usize) -> Composition {
        self.deltas.get(i).cloned().unwrap_or_else(Composition::empty)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSet {
    pub entries: Vec<LambdaEntry>,
}

/// All ways to write `v = sum_i p^i c_i` with `levels` non-negative digits
/// (digits may exceed p-1).
fn power_digit_vectors(v: u32, levels: usize, p: u64) -> Vec<Vec<u32>> {
    fn rec(rem: u32, level: usize, levels: usize, p: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if level == levels {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let q = p.pow(level as u32);
        if level + 1 == levels {
            if u64::from(rem) % q == 0 {
                cur.push((u64::from(rem) / q) as u32);
                rec(0, level + 1, levels, p, cur, out);
                cur.pop();
            }
            return;
        }
        for c in 0..=(u64::from(rem) / q) as u32 {
            cur.push(c);
            rec(rem - c * q as u32, level + 1, levels, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(v, 0, levels, p, &mut Vec::new(), &mut out);
    out
}

/// Enumerates `Lambda((alpha|beta), rho)` completely, in lexicographic order
/// of the flattened entries.
pub fn lambda_set(ab: &BiComposition, rho: &RhoShape) -> Result<LambdaSet> {
    if ab.size() != rho.degree() {
        return Err(Error::SizeMismatch(format!(
            "|{}| = {} but |{}| = {}",
            ab,
            ab.size(),
            rho,
            rho.degree()
        )));
    }
    let levels = rho.levels().max(1);
    let p = rho.p;

    // Per-column digit options for each part of alpha and beta.
    let acols: Vec<Vec<Vec<u32>>> = ab
        .alpha
        .parts()
        .iter()
        .map(|&v| power_digit_vectors(v, levels, p))
        .collect();
    let bcols: Vec<Vec<Vec<u32>>> = ab
        .beta
        .parts()
        .iter()
        .map(|&v| power_digit_vectors(v, levels, p))
        .collect();

    let caps: Vec<u32> = (0..levels).map(|i| rho.mult(i)).collect();

    let mut entries = Vec::new();
    // gtable[i][j] = (gamma_i)_j during the recursion.
    let mut gtable = vec![vec![0u32; ab.alpha.len()]; levels];
    let mut dtable = vec![vec![0u32; ab.beta.len()]; levels];
    let mut gsz = vec![0u32; levels];
    let mut dsz = vec![0u32; levels];

    fn assemble(table: &[Vec<u32>]) -> Vec<Composition> {
        table.iter().map(|col| Composition::new(col.clone())).collect()
    }

    #[allow(clippy::too_many_arguments)]
    fn rec_beta(
        j: usize,
        bcols: &[Vec<Vec<u32>>],
        caps: &[u32],
        gsz: &[u32],
        dsz: &mut Vec<u32>,
        dtable: &mut Vec<Vec<u32>>,
        gtable: &[Vec<u32>],
        entries: &mut Vec<LambdaEntry>,
    ) {
        if j == bcols.len() {
            if (0..caps.len()).all(|i| gsz[i] + dsz[i] == caps[i]) {
                entries.push(LambdaEntry {
                    gammas: assemble(gtable),
                    deltas: assemble(dtable),
                });
            }
            return;
        }
        for digits in &bcols[j] {
            if digits
                .iter()
                .enumerate()
                .all(|(i, &c)| gsz[i] + dsz[i] + c <= caps[i])
            {
                for (i, &c) in digits.iter().enumerate() {
                    dsz[i] += c;
                    dtable[i][j] = c;
                }
                rec_beta(j + 1, bcols, caps, gsz, dsz, dtable, gtable, entries);
                for (i, &c) in digits.iter().enumerate() {
                    dsz[i] -= c;
                    dtable[i][j] = 0;
                }
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn rec_alpha(
        j: usize,
        acols: &[Vec<Vec<u32>>],
        bcols: &[Vec<Vec<u32>>],
        caps: &[u32],
        gsz: &mut Vec<u32>,
        dsz: &mut Vec<u32>,
        gtable: &mut Vec<Vec<u32>>,
        dtable: &mut Vec<Vec<u32>>,
        entries: &mut Vec<LambdaEntry>,
    ) {
        if j == acols.len() {
            rec_beta(0, bcols, caps, gsz, dsz, dtable, gtable, entries);
            return;
        }
        for digits in &acols[j] {
            if digits.iter().enumerate().all(|(i, &c)| gsz[i] + c <= caps[i]) {
                for (i, &c) in digits.iter().enumerate() {
                    gsz[i] += c;
                    gtable[i][j] = c;
                }
                rec_alpha(j + 1, acols, bcols, caps, gsz, dsz, gtable, dtable, entries);
                for (i, &c) in digits.iter().enumerate() {
                    gsz[i] -= c;
                    gtable[i][j] = 0;
                }
            }
        }
    }

    rec_alpha(
        0, &acols, &bcols, &caps, &mut gsz, &mut dsz, &mut gtable, &mut dtable, &mut entries,
    );

    // Re-assert the defining conditions on every entry.
    for e in &entries {
        let mut asum = Composition::empty();
        let mut bsum = Composition::empty();
        for i in 0..levels {
            let q = p.pow(i as u32) as u32;
            asum = padded_sum(&asum, &scale(q, &e.gamma(i)));
            bsum = padded_sum(&bsum, &scale(q, &e.delta(i)));
            if e.gamma(i).size() + e.delta(i).size() != rho.mult(i) {
                return Err(Error::Internal(format!(
                    "lambda_set entry violates size condition at level {}",
                    i
                )));
            }
        }
        if asum != ab.alpha || bsum != ab.beta {
            return Err(Error::Internal(
                "lambda_set entry does not recombine to the shape".into(),
            ));
        }
    }

    entries.sort();
    Ok(LambdaSet { entries })
}

/// `multinomial(n; parts)` with overflow checking.
pub fn multinomial(n: u32, parts: &[u32]) -> Result<u64> {
    let total: u32 = parts.iter().sum();
    if total != n {
        return Err(Error::SizeMismatch(format!(
            "multinomial parts sum to {}, expected {}",
            total, n
        )));
    }
    let mut acc: u128 = 1;
    let mut rem = n;
    for &k in parts {
        // acc *= C(rem, k)
        let mut c: u128 = 1;
        for i in 0..k {
            c = c * u128::from(rem - i) / u128::from(i + 1);
        }
        acc = acc.checked_mul(c).ok_or_else(|| {
            Error::Invalid("multinomial overflow".into())
        })?;
        rem -= k;
    }
    u64::try_from(acc).map_err(|_| Error::Invalid("multinomial overflow".into()))
}

/// Sort key realizing a linear extension of the dominance order: the vector
/// of pairs `(sum_{i<=k} lambda_i, |lambda| + sum_{i<=k} beta_i)` for
/// `k = 1..n`, compared lexicographically, larger first.
fn dominance_key(bc: &BiComposition, n: u32) -> Vec<(u32, u32)> {
    let la = bc.alpha.size();
    (1..=n as usize)
        .map(|k| (bc.alpha.partial_sum(k), la + bc.beta.partial_sum(k)))
        .collect()
}

/// All labels `(lambda | p mu)` of degree `n`, most dominant first along the
/// fixed linear extension.
pub fn labels(n: u32, p: u64) -> Result<Vec<Label>> {
    validate_odd_prime(p)?;
    let mut out = Vec::new();
    let mut m = n;
    loop {
        if u64::from(n - m) % p == 0 {
            let msize = (u64::from(n - m) / p) as u32;
            for lambda in partitions(m) {
                for mu in partitions(msize) {
                    out.push(Label::new(lambda.clone(), mu));
                }
            }
        }
        if m == 0 {
            break;
        }
        m -= 1;
    }
    out.sort_by(|x, y| {
        let kx = dominance_key(&x.bicomp(p), n);
        let ky = dominance_key(&y.bicomp(p), n);
        ky.cmp(&kx)
            .then_with(|| y.bicomp(p).cmp(&x.bicomp(p)))
    });
    Ok(out)
}

/// Sorts arbitrary partition pairs most dominant first by the same key.
pub fn sort_most_dominant_first(pairs: &mut [BiComposition]) {
    if pairs.is_empty() {
        return;
    }
    let n = pairs[0].size();
    pairs.sort_by(|x, y| {
        let kx = dominance_key(x, n);
        let ky = dominance_key(y, n);
        ky.cmp(&kx).then_with(|| y.cmp(x))
    });
}
