//! Reference copies of signed Young modules, hyperoctahedral projectives,
//! and signed p-Kostka numbers computed two independent ways.
//!
//! The registry carves `Y(lambda|p mu)` out of `M(lambda|p mu)` as the
//! unique summand that does not match any strictly more dominant label;
//! matching uses the computed vertex shape and the Brauer-quotient
//! dimension at the vertex as cheap filters before exact isomorphism
//! tests. Labels are built lazily along the dominance order, so a run
//! never touches modules it does not need.

use crate::combinatorics::{
    dominates, ell_p, labels, lambda_set, multinomial, padded_sum, padic_expansion,
    partition_pairs, restricted_partitions, scale, vertex_shape, BiComposition, Composition,
    Label, Partition, RhoShape,
};
use crate::rep::{
    bifunctor_f, brauer_quotient_dim, decompose, end_algebra, is_isomorphic, signed_young_rep,
    v2_rep, vertex_shape_of, IsoOutcome, Rep, Summand,
};
use crate::report::ReportDocument;
use crate::sylow::sylow_generators;
use crate::{Caps, Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;
use std::time::Instant;

/// A registered reference copy of `Y(lambda|p mu)`.
#[derive(Clone, Debug)]
pub struct RegistryEntry {
    pub label: Label,
    pub summand: Summand,
    pub vertex: RhoShape,
    /// Shape of the module the copy was carved from.
    pub provenance: BiComposition,
    pub dim: usize,
}

/// A registered hyperoctahedral projective `Qbar(alpha|beta)`.
#[derive(Clone, Debug)]
pub struct BRegistryEntry {
    pub alpha: Partition,
    pub beta: Partition,
    pub rep: Arc<Rep>,
    pub summand: Summand,
    pub dim: usize,
}

/// The signed p-Kostka table of a degree: multiplicities
/// `[M(alpha|beta) : Y(lambda|p mu)]` for every shape and label.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KostkaTable {
    pub p: u64,
    pub n: u32,
    /// Entries in shape-major order, zeros included.
    pub entries: Vec<KostkaEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct KostkaEntry {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub lambda: Vec<u32>,
    pub mu: Vec<u32>,
    pub mult: u64,
}

/// Holds every cache a run accumulates: decompositions keyed by shape,
/// registries over all degrees, and the hyperoctahedral side.
pub struct Session {
    pub p: u64,
    pub caps: Caps,
    pub seed: u64,
    decomps: HashMap<BiComposition, Arc<Vec<Summand>>>,
    labeled: HashMap<BiComposition, Arc<Vec<(Label, usize)>>>,
    registry: HashMap<Label, Arc<RegistryEntry>>,
    registering: HashSet<Label>,
    b_registry: HashMap<(Partition, Partition), Arc<BRegistryEntry>>,
    b_decomps: HashMap<BiComposition, Arc<Vec<Summand>>>,
}

impl Session {
    pub fn new(p: u64, caps: Caps, seed: u64) -> Result<Session> {
        crate::validate_odd_prime(p)?;
        Ok(Session {
            p,
            caps,
            seed,
            decomps: HashMap::new(),
            labeled: HashMap::new(),
            registry: HashMap::new(),
            registering: HashSet::new(),
            b_registry: HashMap::new(),
            b_decomps: HashMap::new(),
        })
    }

    /// Decomposition of `M(shape)` into certified indecomposables, cached
    /// by normalized shape.
    pub fn decompose_shape(&mut self, shape: &BiComposition) -> Result<Arc<Vec<Summand>>> {
        let key = shape.normalized();
        if let Some(d) = self.decomps.get(&key) {
            return Ok(d.clone());
        }
        let rep = Arc::new(signed_young_rep(&key, self.p, &self.caps)?);
        let parts = Arc::new(decompose(&rep, &self.caps, self.seed)?);
        self.decomps.insert(key, parts.clone());
        Ok(parts)
    }

    /// All labels of one degree matching a measured vertex shape and
    /// dominating `base`, cheapest module first.
    fn candidate_labels(
        &self,
        rho: &RhoShape,
        base: &BiComposition,
        exclude: Option<&Label>,
    ) -> Result<Vec<Label>> {
        let p = self.p;
        let levels = rho.levels().max(1);
        // per level: pairs (lambda layer, mu layer below)
        let mut per_level: Vec<Vec<(Partition, Partition)>> = Vec::new();
        for i in 0..levels {
            let ni = rho.mult(i);
            let mut opts = Vec::new();
            if i == 0 {
                for l in restricted_partitions(ni, p) {
                    opts.push((l, Partition::empty()));
                }
            } else {
                for a in 0..=ni {
                    for l in restricted_partitions(a, p) {
                        for m in restricted_partitions(ni - a, p) {
                            opts.push((l.clone(), m));
                        }
                    }
                }
            }
            per_level.push(opts);
        }
        let mut out = Vec::new();
        let mut stack: Vec<usize> = vec![0; levels];
        'outer: loop {
            // assemble the label from the current choice
            let mut lam = Composition::empty();
            let mut mu = Composition::empty();
            for i in 0..levels {
                let (l, m) = &per_level[i][stack[i]];
                lam = padded_sum(&lam, &scale(p.pow(i as u32) as u32, l.comp()));
                if i >= 1 {
                    mu = padded_sum(&mu, &scale(p.pow(i as u32 - 1) as u32, m.comp()));
                }
            }
            let label = Label::new(
                Partition::from_composition(&lam)?,
                Partition::from_composition(&mu)?,
            );
            debug_assert_eq!(&vertex_shape(&label.lambda, &label.mu, p)?, rho);
            let bc = label.bicomp(p);
            if dominates(&bc, base)? && Some(&label) != exclude {
                out.push(label);
            }
            // advance the odometer
            for i in 0..levels {
                stack[i] += 1;
                if stack[i] < per_level[i].len() {
                    continue 'outer;
                }
                stack[i] = 0;
                if i + 1 == levels {
                    break 'outer;
                }
            }
        }
        // cheapest reference module first
        out.sort_by_key(|l| {
            let bc = l.bicomp(p);
            let sizes: Vec<u32> = bc
                .alpha
                .parts()
                .iter()
                .chain(bc.beta.parts().iter())
                .copied()
                .collect();
            multinomial(bc.size(), &sizes).unwrap_or(u64::MAX)
        });
        Ok(out)
    }

    /// Dimension of the projective cover `P^sigma = Y(sigma|-)` for a
    /// p-restricted partition.
    fn proj_dim(&mut self, sigma: &Partition) -> Result<usize> {
        let entry = self.ensure_label(&Label::new(sigma.clone(), Partition::empty()))?;
        Ok(entry.dim)
    }

    /// Expected dimension of the Brauer quotient of `Y(label)` at its own
    /// vertex: the dimension of the product of the layer projectives.
    fn expected_brauer_dim(&mut self, label: &Label, rho: &RhoShape) -> Result<u64> {
        let p = self.p;
        let le = padic_expansion(&label.lambda, p)?;
        let me = padic_expansion(&label.mu, p)?;
        let mut expected = self.proj_dim(&le.layer(0))? as u64;
        for i in 1..rho.levels() {
            let l = le.layer(i);
            let m = me.layer(i - 1);
            let choose = multinomial(rho.mult(i), &[l.size(), m.size()])?;
            let dl = self.proj_dim(&l)? as u64;
            let dm = self.proj_dim(&m)? as u64;
            expected = expected
                .checked_mul(choose)
                .and_then(|x| x.checked_mul(dl))
                .and_then(|x| x.checked_mul(dm))
                .ok_or_else(|| Error::Invalid("Brauer dimension overflow".into()))?;
        }
        Ok(expected)
    }

    /// Identifies the label of an indecomposable summand of a signed Young
    /// permutation module. Returns None when no candidate matches (the
    /// caller decides whether that is the fresh diagonal summand or an
    /// error).
    fn identify_summand(
        &mut self,
        u: &Summand,
        base: &BiComposition,
        exclude: Option<&Label>,
    ) -> Result<Option<Label>> {
        let rho = vertex_shape_of(u)?;
        let measured = brauer_quotient_dim(u, &sylow_generators(&rho))? as u64;
        let candidates = self.candidate_labels(&rho, base, exclude)?;
        let mut blocked: Option<String> = None;
        for cand in candidates {
            // Brauer-dimension prefilter at the vertex; skipped for trivial
            // vertices where it needs the candidate itself.
            if !rho.is_trivial() {
                match self.expected_brauer_dim(&cand, &rho) {
                    Ok(expected) => {
                        if expected != measured {
                            continue;
                        }
                    }
                    Err(Error::DimensionCap { .. }) => {
                        blocked = Some(format!("filter for {} exceeds the cap", cand));
                        continue;
                    }
                    Err(e) => return Err(e),
                }
            }
            let entry = match self.ensure_label(&cand) {
                Ok(e) => e,
                Err(Error::DimensionCap { dim, cap, .. }) => {
                    blocked = Some(format!(
                        "candidate {} needs a dim-{} module (cap {})",
                        cand, dim, cap
                    ));
                    continue;
                }
                Err(e) => return Err(e),
            };
            if entry.dim != u.dim {
                continue;
            }
            match is_isomorphic(u, &entry.summand, &self.caps, self.seed)? {
                IsoOutcome::Yes => return Ok(Some(cand)),
                IsoOutcome::No => continue,
                IsoOutcome::Unknown => {
                    blocked = Some(format!("isomorphism test against {} inconclusive", cand));
                    continue;
                }
            }
        }
        if let Some(why) = blocked {
            return Err(Error::Unresolved(format!(
                "summand of dim {} in M{} not identified: {}",
                u.dim, base, why
            )));
        }
        Ok(None)
    }

    /// Builds (or returns) the reference copy of `Y(label)`: decompose
    /// `M(label)`, match every summand against strictly dominating labels,
    /// and register the single unmatched one. Any other unmatched count is
    /// a hard failure, as the classification guarantees exactly one.
    pub fn ensure_label(&mut self, label: &Label) -> Result<Arc<RegistryEntry>> {
        if let Some(e) = self.registry.get(label) {
            return Ok(e.clone());
        }
        if !self.registering.insert(label.clone()) {
            return Err(Error::Internal(format!(
                "label dependency cycle at {}",
                label
            )));
        }
        let result = self.register_label(label);
        self.registering.remove(label);
        result
    }

    fn register_label(&mut self, label: &Label) -> Result<Arc<RegistryEntry>> {
        let shape = label.bicomp(self.p);
        let parts = self.decompose_shape(&shape)?;
        let mut fresh: Vec<Summand> = Vec::new();
        for u in parts.iter() {
            if self.identify_summand(u, &shape, Some(label))?.is_none() {
                fresh.push(u.clone());
            }
        }
        if fresh.len() != 1 {
            return Err(Error::Internal(format!(
                "registry build for {}: {} unmatched summands, expected exactly 1",
                label,
                fresh.len()
            )));
        }
        let summand = fresh.pop().unwrap();
        let vertex = vertex_shape_of(&summand)?;
        let formula = vertex_shape(&label.lambda, &label.mu, self.p)?;
        if vertex != formula {
            return Err(Error::Internal(format!(
                "vertex of the fresh summand of {} is {}, formula gives {}",
                label, vertex, formula
            )));
        }
        let entry = Arc::new(RegistryEntry {
            label: label.clone(),
            dim: summand.dim,
            summand,
            vertex,
            provenance: shape,
        });
        self.registry.insert(label.clone(), entry.clone());
        Ok(entry)
    }

    /// Registry for a whole degree, most dominant label first.
    pub fn build_registry(&mut self, n: u32) -> Result<Vec<Arc<RegistryEntry>>> {
        let mut out = Vec::new();
        for label in labels(n, self.p)? {
            out.push(self.ensure_label(&label)?);
        }
        Ok(out)
    }

    pub fn registry_entries(&self) -> Vec<Arc<RegistryEntry>> {
        let mut v: Vec<Arc<RegistryEntry>> = self.registry.values().cloned().collect();
        v.sort_by(|a, b| a.label.cmp(&b.label));
        v
    }

    /// Installs an externally restored entry (cache loads).
    pub fn adopt_entry(&mut self, entry: RegistryEntry) {
        self.registry.insert(entry.label.clone(), Arc::new(entry));
    }

    /// The decomposition of `M(shape)` with every summand identified by
    /// its label.
    pub fn labeled_decomposition(
        &mut self,
        shape: &BiComposition,
    ) -> Result<Arc<Vec<(Label, usize)>>> {
        let key = shape.normalized();
        if let Some(l) = self.labeled.get(&key) {
            return Ok(l.clone());
        }
        let parts = self.decompose_shape(&key)?;
        let mut out = Vec::new();
        for u in parts.iter() {
            match self.identify_summand(u, &key, None)? {
                Some(l) => out.push((l, u.dim)),
                None => {
                    return Err(Error::Internal(format!(
                        "summand of dim {} in M{} matches no dominating label",
                        u.dim, key
                    )))
                }
            }
        }
        let out = Arc::new(out);
        self.labeled.insert(key, out.clone());
        Ok(out)
    }

    /// Signed p-Kostka number by explicit decomposition: the count of
    /// summands isomorphic to the registry copy of `Y(label)`. Only the
    /// target label's reference is ever built, so shapes whose other
    /// summands carry expensive labels stay cheap.
    pub fn signed_kostka(&mut self, shape: &BiComposition, label: &Label) -> Result<u64> {
        if shape.size() != label.degree(self.p) {
            return Err(Error::SizeMismatch(format!(
                "|{}| = {} but |{}| = {}",
                shape,
                shape.size(),
                label,
                label.degree(self.p)
            )));
        }
        let entry = self.ensure_label(label)?;
        let parts = self.decompose_shape(shape)?;
        let mut count = 0u64;
        for u in parts.iter() {
            if u.dim != entry.dim {
                continue;
            }
            match is_isomorphic(u, &entry.summand, &self.caps, self.seed)? {
                IsoOutcome::Yes => count += 1,
                IsoOutcome::No => {}
                IsoOutcome::Unknown => {
                    return Err(Error::Unresolved(format!(
                        "isomorphism test of a dim-{} summand of M{} against {} inconclusive",
                        u.dim, shape, label
                    )))
                }
            }
        }
        Ok(count)
    }

    /// The hyperoctahedral projective `Qbar(alpha|beta) = F(P^alpha|P^beta)`,
    /// certified projective and indecomposable.
    pub fn ensure_b_entry(
        &mut self,
        alpha: &Partition,
        beta: &Partition,
    ) -> Result<Arc<BRegistryEntry>> {
        let key = (alpha.clone(), beta.clone());
        if let Some(e) = self.b_registry.get(&key) {
            return Ok(e.clone());
        }
        if !alpha.is_p_restricted(self.p) || !beta.is_p_restricted(self.p) {
            return Err(Error::Invalid(format!(
                "Qbar labels must be p-restricted, got ({}|{})",
                alpha, beta
            )));
        }
        let pa = self
            .ensure_label(&Label::new(alpha.clone(), Partition::empty()))?
            .summand
            .promoted();
        let pb = self
            .ensure_label(&Label::new(beta.clone(), Partition::empty()))?
            .summand
            .promoted();
        let rep = Arc::new(bifunctor_f(&pa, &pb, &self.caps)?);
        let whole = Summand::whole(rep.clone());
        if !crate::rep::is_projective(&whole, &self.caps)? {
            return Err(Error::Internal(format!(
                "Qbar({}|{}) failed the projectivity test",
                alpha, beta
            )));
        }
        let parts = decompose(&rep, &self.caps, self.seed)?;
        if parts.len() != 1 {
            return Err(Error::Internal(format!(
                "Qbar({}|{}) decomposed into {} parts",
                alpha,
                beta,
                parts.len()
            )));
        }
        let entry = Arc::new(BRegistryEntry {
            alpha: alpha.clone(),
            beta: beta.clone(),
            dim: rep.dim,
            summand: whole,
            rep,
        });
        self.b_registry.insert(key, entry.clone());
        Ok(entry)
    }

    /// All pairs of p-restricted partitions of `m`.
    pub fn restricted_pairs(&self, m: u32) -> Vec<(Partition, Partition)> {
        let mut out = Vec::new();
        for a in (0..=m).rev() {
            for alpha in restricted_partitions(a, self.p) {
                for beta in restricted_partitions(m - a, self.p) {
                    out.push((alpha.clone(), beta));
                }
            }
        }
        out
    }

    /// Builds all `Qbar` entries of degree `m` by direct construction, then
    /// cross-checks with a dominance peeling of the modules `V_2`: walking
    /// the labels most dominant first, the single summand of
    /// `V_2(alpha|beta)` not matched by an earlier entry must be the
    /// directly constructed `Qbar(alpha|beta)`. Any mismatch is fatal.
    pub fn build_b_registry(&mut self, m: u32) -> Result<Vec<Arc<BRegistryEntry>>> {
        let mut entries = Vec::new();
        for (alpha, beta) in self.restricted_pairs(m) {
            entries.push(self.ensure_b_entry(&alpha, &beta)?);
        }
        // peeling cross-check
        let mut order: Vec<BiComposition> = self
            .restricted_pairs(m)
            .iter()
            .map(|(a, b)| BiComposition::new(a.comp().clone(), b.comp().clone()))
            .collect();
        crate::combinatorics::sort_most_dominant_first(&mut order);
        let mut peeled: Vec<(Partition, Partition)> = Vec::new();
        for bc in order {
            let alpha = Partition::from_composition(&bc.alpha)?;
            let beta = Partition::from_composition(&bc.beta)?;
            let parts = self.decompose_v2(&bc)?;
            let mut fresh = Vec::new();
            for u in parts.iter() {
                let mut matched = false;
                for key in &peeled {
                    let e = self.b_registry[key].clone();
                    if e.dim == u.dim
                        && is_isomorphic(u, &e.summand, &self.caps, self.seed)? == IsoOutcome::Yes
                    {
                        matched = true;
                        break;
                    }
                }
                if !matched {
                    fresh.push(u.clone());
                }
            }
            if fresh.len() != 1 {
                return Err(Error::Internal(format!(
                    "peeling cross-check at V2({}|{}): {} fresh summands",
                    alpha,
                    beta,
                    fresh.len()
                )));
            }
            let direct = self.ensure_b_entry(&alpha, &beta)?;
            if is_isomorphic(&fresh[0], &direct.summand, &self.caps, self.seed)? != IsoOutcome::Yes
            {
                return Err(Error::Internal(format!(
                    "peeling cross-check: fresh summand of V2({}|{}) is not the direct Qbar",
                    alpha, beta
                )));
            }
            peeled.push((alpha, beta));
        }
        Ok(entries)
    }

    fn decompose_v2(&mut self, shape: &BiComposition) -> Result<Arc<Vec<Summand>>> {
        let key = shape.normalized();
        if let Some(d) = self.b_decomps.get(&key) {
            return Ok(d.clone());
        }
        let rep = Arc::new(v2_rep(&key, self.p, &self.caps)?);
        let parts = Arc::new(decompose(&rep, &self.caps, self.seed)?);
        self.b_decomps.insert(key, parts.clone());
        Ok(parts)
    }

    /// Multiplicity `[V_2(gamma|delta) : Qbar(lambda|mu)]` by decomposition
    /// and matching. This is the level `i >= 1` factor of the layer
    /// recursion, all higher levels collapsing to level one.
    pub fn b_multiplicity(
        &mut self,
        shape: &BiComposition,
        lambda: &Partition,
        mu: &Partition,
    ) -> Result<u64> {
        let entry = self.ensure_b_entry(lambda, mu)?;
        let parts = self.decompose_v2(shape)?;
        let mut count = 0u64;
        for u in parts.iter() {
            if u.dim == entry.dim
                && is_isomorphic(u, &entry.summand, &self.caps, self.seed)? == IsoOutcome::Yes
            {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Signed p-Kostka number via the layer recursion: sum over the index
    /// set at the label's vertex of the degree-0 multiplicity times the
    /// hyperoctahedral factors.
    pub fn klyachko_kostka(&mut self, shape: &BiComposition, label: &Label) -> Result<u64> {
        let p = self.p;
        if shape.size() != label.degree(p) {
            return Err(Error::SizeMismatch(format!(
                "|{}| = {} but |{}| = {}",
                shape,
                shape.size(),
                label,
                label.degree(p)
            )));
        }
        let rho = vertex_shape(&label.lambda, &label.mu, p)?;
        let le = padic_expansion(&label.lambda, p)?;
        let me = padic_expansion(&label.mu, p)?;
        let ls = lambda_set(&shape.normalized(), &rho)?;
        let mut total = 0u64;
        for entry in &ls.entries {
            let base_shape = BiComposition::new(entry.gamma(0), entry.delta(0));
            let base_label = Label::new(le.layer(0), Partition::empty());
            let mut term = self.signed_kostka(&base_shape, &base_label)?;
            for i in 1..rho.levels() {
                if term == 0 {
                    break;
                }
                let factor_shape = BiComposition::new(entry.gamma(i), entry.delta(i));
                let factor = self.b_multiplicity(&factor_shape, &le.layer(i), &me.layer(i - 1))?;
                term *= factor;
            }
            total += term;
        }
        Ok(total)
    }

    /// The full table for a degree via explicit decomposition;
    /// cross-filled by the recursion when `cross_check` is set, with any
    /// discrepancy a hard failure.
    pub fn k_table(&mut self, n: u32, cross_check: bool) -> Result<KostkaTable> {
        let all_labels = labels(n, self.p)?;
        let mut entries = Vec::new();
        for shape in partition_pairs(n) {
            let mut counts: BTreeMap<Label, u64> = BTreeMap::new();
            for (l, _) in self.labeled_decomposition(&shape)?.iter() {
                *counts.entry(l.clone()).or_insert(0) += 1;
            }
            for label in &all_labels {
                let mult = counts.get(label).copied().unwrap_or(0);
                if cross_check {
                    let k = self.klyachko_kostka(&shape, label)?;
                    if k != mult {
                        return Err(Error::Internal(format!(
                            "route mismatch at [M{} : {}]: decomposition {}, recursion {}",
                            shape, label, mult, k
                        )));
                    }
                }
                entries.push(KostkaEntry {
                    alpha: shape.alpha.parts().to_vec(),
                    beta: shape.beta.parts().to_vec(),
                    lambda: label.lambda.parts().to_vec(),
                    mu: label.mu.parts().to_vec(),
                    mult,
                });
            }
        }
        Ok(KostkaTable {
            p: self.p,
            n,
            entries,
        })
    }
}

// ---------------------------------------------------------------------------
// theorem verifiers
// ---------------------------------------------------------------------------

fn ms(t: Instant) -> u128 {
    t.elapsed().as_millis()
}

/// Dimension of `M(shape)` without building it.
fn shape_dim(shape: &BiComposition) -> Result<u64> {
    let sizes: Vec<u32> = shape
        .alpha
        .parts()
        .iter()
        .chain(shape.beta.parts().iter())
        .copied()
        .collect();
    multinomial(shape.size(), &sizes)
}

/// Dominance, diagonal multiplicity, and vertex shapes for every shape of
/// one degree (the first main classification statement).
pub fn verify_thm_1_1(session: &mut Session, n: u32) -> Result<ReportDocument> {
    let p = session.p;
    let mut report = ReportDocument::new(
        "verify thm1.1",
        serde_json::json!({"p": p, "n": n}),
        session.seed,
    );
    for shape in partition_pairs(n) {
        verify_thm_1_1_at(session, &shape, &mut report)?;
    }
    Ok(report)
}

/// The same checks for a single shape (used for spot checks at larger
/// degrees).
pub fn verify_thm_1_1_at(
    session: &mut Session,
    shape: &BiComposition,
    report: &mut ReportDocument,
) -> Result<()> {
    let p = session.p;
    let t = Instant::now();
    let parts = session.labeled_decomposition(shape)?;
    let mut ok = true;
    let mut witness = String::new();
    for (label, _) in parts.iter() {
        let bc = label.bicomp(p);
        if !dominates(&bc, shape)? {
            ok = false;
            witness = format!("summand {} does not dominate {}", label, shape);
            break;
        }
    }
    // diagonal multiplicity where the shape itself is a label
    if ok {
        if let Ok(diag) = Label::from_bicomp(shape, p) {
            let mult = parts.iter().filter(|(l, _)| *l == diag).count();
            if mult != 1 {
                ok = false;
                witness = format!("[M{} : {}] = {}, expected 1", shape, diag, mult);
            }
        }
    }
    // vertex shapes: recompute per summand and compare to the formula
    if ok {
        let raw = session.decompose_shape(shape)?;
        for (u, (label, _)) in raw.iter().zip(parts.iter()) {
            let measured = vertex_shape_of(u)?;
            let formula = vertex_shape(&label.lambda, &label.mu, p)?;
            if measured != formula {
                ok = false;
                witness = format!(
                    "vertex of a {} summand of M{} is {}, formula {}",
                    label, shape, measured, formula
                );
                break;
            }
        }
    }
    let name = format!("thm1.1 at M{}", shape);
    if ok {
        report.pass(name, ms(t));
    } else {
        report.fail(name, witness, ms(t));
    }
    Ok(())
}

/// The scaling inequality `[M(pa|pb) : Y(pl|p^2 m)] <= [M(a|b) : Y(l|pm)]`
/// with the equality criteria, checked for all shapes and labels of one
/// degree.
pub fn verify_thm_1_2(session: &mut Session, n: u32) -> Result<ReportDocument> {
    let p = session.p;
    let mut report = ReportDocument::new(
        "verify thm1.2",
        serde_json::json!({"p": p, "n": n}),
        session.seed,
    );
    let shapes = partition_pairs(n);
    let all_labels = labels(n, p)?;
    for shape in &shapes {
        for label in &all_labels {
            let t = Instant::now();
            let rhs = session.signed_kostka(shape, label)?;
            let scaled_shape = BiComposition::new(
                scale(p as u32, &shape.alpha),
                scale(p as u32, &shape.beta),
            );
            let scaled_label = Label::new(
                Partition::from_composition(&scale(p as u32, label.lambda.comp()))?,
                Partition::from_composition(&scale(p as u32, label.mu.comp()))?,
            );
            let lhs = session.signed_kostka(&scaled_shape, &scaled_label)?;
            let rho = vertex_shape(&label.lambda, &label.mu, p)?;
            let ls = lambda_set(shape, &rho)?;
            let delta0_empty = ls.entries.iter().all(|e| e.delta(0).is_empty());
            let lambda0_empty = padic_expansion(&label.lambda, p)?.layer(0).is_empty();
            let name = format!("thm1.2 at [M{} : {}]", shape, label);
            if lhs > rhs {
                report.fail(
                    name,
                    format!("scaled multiplicity {} exceeds original {}", lhs, rhs),
                    ms(t),
                );
            } else if (delta0_empty || lambda0_empty) && lhs != rhs {
                report.fail(
                    name,
                    format!(
                        "equality criterion holds (delta0: {}, lambda(0): {}) but {} != {}",
                        delta0_empty, lambda0_empty, lhs, rhs
                    ),
                    ms(t),
                );
            } else {
                report.pass(name, ms(t));
            }
            // stabilization from the second scaling onward, where the
            // modules (including the scaled label's reference) stay within
            // the cap
            let t = Instant::now();
            let q2 = (p * p) as u32;
            let scaled2_shape =
                BiComposition::new(scale(q2, &shape.alpha), scale(q2, &shape.beta));
            let scaled2_label = Label::new(
                Partition::from_composition(&scale(q2, label.lambda.comp()))?,
                Partition::from_composition(&scale(q2, label.mu.comp()))?,
            );
            let dim2 = shape_dim(&scaled2_shape)?;
            let ref2 = shape_dim(&scaled2_label.bicomp(p))?;
            if dim2 <= session.caps.rep_dim && ref2 <= session.caps.rep_dim {
                let lhs2 = session.signed_kostka(&scaled2_shape, &scaled2_label)?;
                let name = format!("thm1.2 stabilization at [M{} : {}]", shape, label);
                if lhs2 == lhs {
                    report.pass(name, ms(t));
                } else {
                    report.fail(name, format!("{} != {}", lhs2, lhs), ms(t));
                }
            }
        }
    }
    Ok(report)
}

/// Parameters for the degree-splitting inequality.
#[derive(Clone, Debug)]
pub struct Thm13Params {
    pub pi: Composition,
    pub pi_tilde: Composition,
    pub lambda: Partition,
    pub mu: Partition,
    pub phi: Composition,
    pub phi_tilde: Composition,
    pub alpha: Partition,
    pub beta: Partition,
    pub k: u32,
}

/// One instance of the degree-splitting statement: the product lower
/// bound, with equality when `p^k` exceeds both first parts.
pub fn verify_thm_1_3(session: &mut Session, params: &Thm13Params) -> Result<ReportDocument> {
    let p = session.p;
    let mut report = ReportDocument::new(
        "verify thm1.3",
        serde_json::json!({
            "p": p,
            "pi": params.pi.parts(),
            "pi_tilde": params.pi_tilde.parts(),
            "lambda": params.lambda.parts(),
            "mu": params.mu.parts(),
            "phi": params.phi.parts(),
            "phi_tilde": params.phi_tilde.parts(),
            "alpha": params.alpha.parts(),
            "beta": params.beta.parts(),
            "k": params.k,
        }),
        session.seed,
    );
    let t = Instant::now();
    let ell = ell_p(&params.lambda, &params.mu, p)?;
    if params.k as usize <= ell {
        return Err(Error::Invalid(format!(
            "precondition k > ell_p fails: k = {}, ell_p = {}",
            params.k, ell
        )));
    }
    let pk = p.pow(params.k) as u32;
    let lhs_shape = BiComposition::new(
        padded_sum(&params.pi, &scale(pk, &params.phi)),
        padded_sum(&params.pi_tilde, &scale(pk, &params.phi_tilde)),
    );
    let lhs_label = Label::new(
        Partition::from_composition(&padded_sum(
            params.lambda.comp(),
            &scale(pk, params.alpha.comp()),
        ))?,
        Partition::from_composition(&padded_sum(
            params.mu.comp(),
            &scale(pk, params.beta.comp()),
        ))?,
    );
    let lhs = session.signed_kostka(&lhs_shape, &lhs_label)?;
    let f1_shape = BiComposition::new(params.pi.clone(), params.pi_tilde.clone());
    let f1_label = Label::new(params.lambda.clone(), params.mu.clone());
    let f1 = session.signed_kostka(&f1_shape, &f1_label)?;
    let f2_shape = BiComposition::new(
        scale(p as u32, &params.phi),
        scale(p as u32, &params.phi_tilde),
    );
    let f2_label = Label::new(
        Partition::from_composition(&scale(p as u32, params.alpha.comp()))?,
        Partition::from_composition(&scale(p as u32, params.beta.comp()))?,
    );
    let f2 = session.signed_kostka(&f2_shape, &f2_label)?;
    let rhs = f1 * f2;
    let first = |c: &Composition| c.parts().first().copied().unwrap_or(0);
    let equality_applies = pk > first(&params.pi).max(first(&params.pi_tilde));
    if lhs < rhs {
        report.fail(
            "thm1.3 inequality",
            format!("lhs {} < rhs {} = {} * {}", lhs, rhs, f1, f2),
            ms(t),
        );
    } else if equality_applies && lhs != rhs {
        report.fail(
            "thm1.3 equality",
            format!("p^k exceeds the first parts but lhs {} != rhs {}", lhs, rhs),
            ms(t),
        );
    } else {
        report.pass(
            format!(
                "thm1.3 instance: lhs {} vs rhs {}{}",
                lhs,
                rhs,
                if equality_applies { " (equality case)" } else { "" }
            ),
            ms(t),
        );
    }
    Ok(report)
}

/// Whether `M(alpha|beta)` is on the classified indecomposable list.
pub fn classified_indecomposable(shape: &BiComposition, p: u64) -> bool {
    let a = shape.alpha.parts();
    let b = shape.beta.parts();
    // ((m)|(n)) with m = 0, n = 0, or p | m + n
    if a.len() <= 1 && b.len() <= 1 {
        let m = a.first().copied().unwrap_or(0);
        let n = b.first().copied().unwrap_or(0);
        if m == 0 || n == 0 || u64::from(m + n) % p == 0 {
            return true;
        }
    }
    // ((kp-1,1)|-) or (-|(kp-1,1))
    let hook = |x: &[u32]| x.len() == 2 && x[1] == 1 && u64::from(x[0] + 1) % p == 0;
    (hook(a) && b.is_empty()) || (a.is_empty() && hook(b))
}

/// End dimension the classification predicts for an indecomposable
/// `M(alpha|beta)`: 1 for the pure one-row cases, 2 otherwise.
pub fn classified_end_dim(shape: &BiComposition) -> usize {
    if (shape.alpha.len() <= 1 && shape.beta.is_empty())
        || (shape.alpha.is_empty() && shape.beta.len() <= 1)
    {
        1
    } else {
        2
    }
}

/// Indecomposability classification with endomorphism dimensions, over all
/// shapes of degree up to `n_max` plus any extra shapes.
pub fn verify_thm_1_4(
    session: &mut Session,
    n_max: u32,
    extra: &[BiComposition],
) -> Result<ReportDocument> {
    let p = session.p;
    let mut report = ReportDocument::new(
        "verify thm1.4",
        serde_json::json!({"p": p, "n_max": n_max}),
        session.seed,
    );
    let mut shapes: Vec<BiComposition> = Vec::new();
    for n in 0..=n_max {
        shapes.extend(partition_pairs(n));
    }
    shapes.extend_from_slice(extra);
    for shape in shapes {
        let t = Instant::now();
        let parts = session.decompose_shape(&shape)?;
        let expected = classified_indecomposable(&shape, p);
        let actual = parts.len() == 1;
        let name = format!("thm1.4 at M{}", shape);
        if expected != actual {
            report.fail(
                name,
                format!(
                    "decompose found {} summands, classification says {}",
                    parts.len(),
                    if expected {
                        "indecomposable"
                    } else {
                        "decomposable"
                    }
                ),
                ms(t),
            );
            continue;
        }
        if actual {
            let end = end_algebra(&parts[0])?;
            let want = classified_end_dim(&shape);
            if end.dim != want {
                report.fail(
                    name,
                    format!("End dimension {}, classification gives {}", end.dim, want),
                    ms(t),
                );
                continue;
            }
        }
        report.pass(name, ms(t));
    }
    Ok(report)
}

/// Labels of the indecomposable signed Young permutation modules.
pub fn verify_labels(session: &mut Session, n_max: u32) -> Result<ReportDocument> {
    let p = session.p;
    let mut report = ReportDocument::new(
        "verify labels",
        serde_json::json!({"p": p, "n_max": n_max}),
        session.seed,
    );
    fn check_iso(
        session: &mut Session,
        shape: BiComposition,
        label: Label,
        report: &mut ReportDocument,
    ) -> Result<()> {
        let t = Instant::now();
        let parts = session.decompose_shape(&shape)?;
        let name = format!("M{} = {}", shape, label);
        if parts.len() != 1 {
            report.fail(name, format!("{} summands", parts.len()), ms(t));
            return Ok(());
        }
        let entry = session.ensure_label(&label)?;
        match is_isomorphic(&parts[0], &entry.summand, &session.caps, session.seed)? {
            IsoOutcome::Yes => report.pass(name, ms(t)),
            IsoOutcome::No => report.fail(name, "not isomorphic".into(), ms(t)),
            IsoOutcome::Unknown => report.unresolved(name, "iso test budget".into(), ms(t)),
        }
        Ok(())
    }
    for n in 1..=n_max {
        // M((n)|-) = Y((n)|-)
        check_iso(
            session,
            BiComposition::new(Composition::new(vec![n]), Composition::empty()),
            Label::new(Partition::new(vec![n])?, Partition::empty()),
            &mut report,
        )?;
        // M(-|(n)) = Y((1^{n0}) | (p n'))
        let n0 = n % p as u32;
        let nprime = n / p as u32;
        let lam = Partition::new(vec![1; n0 as usize])?;
        let mu = if nprime == 0 {
            Partition::empty()
        } else {
            Partition::new(vec![nprime])?
        };
        check_iso(
            session,
            BiComposition::new(Composition::empty(), Composition::new(vec![n])),
            Label::new(lam, mu),
            &mut report,
        )?;
    }
    // M((m)|(n)) = Y((m,1^{n0})|(p n')) when p divides m + n
    for m in 1..n_max {
        for n in 1..=(n_max - m) {
            if u64::from(m + n) % p != 0 {
                continue;
            }
            let n0 = n % p as u32;
            let nprime = n / p as u32;
            let mut lam = vec![m];
            lam.extend(std::iter::repeat(1).take(n0 as usize));
            let mu = if nprime == 0 {
                Partition::empty()
            } else {
                Partition::new(vec![nprime])?
            };
            check_iso(
                session,
                BiComposition::new(Composition::new(vec![m]), Composition::new(vec![n])),
                Label::new(Partition::new(lam)?, mu),
                &mut report,
            )?;
        }
    }
    Ok(report)
}

/// The strict-inequality family: at `(m, c)` the multiplicity is 1 before
/// scaling and 0 after.
pub fn verify_example_6_1(session: &mut Session, m: u32, c: u32) -> Result<ReportDocument> {
    let p = session.p;
    let mut report = ReportDocument::new(
        "verify example6.1",
        serde_json::json!({"p": p, "m": m, "c": c}),
        session.seed,
    );
    if c == 0 || u64::from(c) >= p || m == 0 {
        return Err(Error::Invalid("need 0 < c < p and m > 0".into()));
    }
    let mp = m * p as u32;
    let t = Instant::now();
    let shape1 = BiComposition::new(Composition::empty(), Composition::new(vec![mp, c]));
    let label1 = Label::new(
        Partition::new(vec![1; c as usize])?,
        Partition::new(vec![m])?,
    );
    let v1 = session.signed_kostka(&shape1, &label1)?;
    if v1 == 1 {
        report.pass(format!("[M{} : {}] = 1", shape1, label1), ms(t));
    } else {
        report.fail(
            format!("[M{} : {}]", shape1, label1),
            format!("got {}, expected 1", v1),
            ms(t),
        );
    }
    let t = Instant::now();
    let shape2 = BiComposition::new(
        Composition::empty(),
        Composition::new(vec![mp * p as u32, c * p as u32]),
    );
    let label2 = Label::new(
        Partition::new(vec![p as u32; c as usize])?,
        Partition::new(vec![mp])?,
    );
    let v2 = session.signed_kostka(&shape2, &label2)?;
    if v2 == 0 {
        report.pass(format!("[M{} : {}] = 0", shape2, label2), ms(t));
    } else {
        report.fail(
            format!("[M{} : {}]", shape2, label2),
            format!("got {}, expected 0", v2),
            ms(t),
        );
    }
    Ok(report)
}

/// The multiplicity identities connecting `V_2` to the symmetric group:
/// `[V_2(gamma|-) : Qbar(lambda|-)] = [M^gamma : P^lambda]`, and the
/// vanishing `[V_2(gamma|delta) : Qbar(lambda|-)] = 0` for nonempty delta.
pub fn verify_lemma_6_1(session: &mut Session, m_max: u32) -> Result<ReportDocument> {
    let p = session.p;
    let mut report = ReportDocument::new(
        "verify lemma6.1",
        serde_json::json!({"p": p, "m_max": m_max}),
        session.seed,
    );
    for m in 0..=m_max {
        for gamma in crate::combinatorics::partitions(m) {
            for lambda in restricted_partitions(m, p) {
                let t = Instant::now();
                let v2_shape = BiComposition::new(gamma.comp().clone(), Composition::empty());
                let lhs = session.b_multiplicity(&v2_shape, &lambda, &Partition::empty())?;
                let rhs = session
                    .signed_kostka(&v2_shape, &Label::new(lambda.clone(), Partition::empty()))?;
                let name = format!(
                    "[V2({}|()) : Qbar({}|())] = [M^{} : P^{}]",
                    gamma, lambda, gamma, lambda
                );
                if lhs == rhs {
                    report.pass(name, ms(t));
                } else {
                    report.fail(name, format!("{} != {}", lhs, rhs), ms(t));
                }
            }
        }
        // vanishing for nonempty delta
        for a in 0..m {
            for gamma in crate::combinatorics::partitions(a) {
                for delta in crate::combinatorics::partitions(m - a) {
                    if delta.is_empty() {
                        continue;
                    }
                    for lambda in restricted_partitions(m, p) {
                        let t = Instant::now();
                        let v2_shape =
                            BiComposition::new(gamma.comp().clone(), delta.comp().clone());
                        let lhs =
                            session.b_multiplicity(&v2_shape, &lambda, &Partition::empty())?;
                        let name =
                            format!("[V2({}|{}) : Qbar({}|())] = 0", gamma, delta, lambda);
                        if lhs == 0 {
                            report.pass(name, ms(t));
                        } else {
                            report.fail(name, format!("got {}", lhs), ms(t));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Route agreement: the recursion reproduces every explicit multiplicity
/// of one degree.
pub fn verify_klyachko(session: &mut Session, n: u32) -> Result<ReportDocument> {
    let p = session.p;
    let mut report = ReportDocument::new(
        "verify klyachko",
        serde_json::json!({"p": p, "n": n}),
        session.seed,
    );
    let all_labels = labels(n, p)?;
    for shape in partition_pairs(n) {
        for label in &all_labels {
            let t = Instant::now();
            let brute = session.signed_kostka(&shape, label)?;
            let rec = session.klyachko_kostka(&shape, label)?;
            let name = format!("routes agree at [M{} : {}]", shape, label);
            if brute == rec {
                report.pass(name, ms(t));
            } else {
                report.fail(
                    name,
                    format!("decomposition {} vs recursion {}", brute, rec),
                    ms(t),
                );
            }
        }
    }
    Ok(report)
}
