//! Exhaustive sweeps over small parameter boxes for LR-coefficient domination
//! statements, plus iteration of the `*` operation to its fixed point.
//!
//! Proved statements (support containment for the interlace splitting,
//! `tau`-domination, membership of the `(F, F, G)` images) must never report a
//! violation. The two open ones (`*` domination and coefficientwise domination
//! by the interlace splitting) report whatever they find.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::domino::{cl_coefficient, dilate_tableau, enumerate_ydt};
use crate::horn::{ffg_image_sets, horn_triples, HornTriple};
use crate::lr::{lr_coefficient, schur_product, SchurExpansion};
use crate::partitions::{
    interlace_split, partition_from_set, partitions_in_box, partitions_of, partitions_of_bounded, star_pair,
    tau_partitions, Partition, PartitionError,
};

/// Largest `p * q` accepted by [`verify_star_conjecture`].
pub const STAR_MAX_AREA: usize = 16;
/// Largest `|gamma|` accepted by [`verify_schur_domination`].
pub const DOMINATION_MAX_WEIGHT: usize = 16;
/// Largest `p` accepted by [`verify_schur_domination`].
pub const DOMINATION_MAX_P: usize = 4;
/// Largest weight bound accepted by [`verify_tau_domination`].
pub const TAU_MAX_WEIGHT: usize = 8;
/// Largest `p` accepted by [`verify_ffg_membership`].
pub const FFG_MAX_P: usize = 4;
/// Items handled between two checkpoint writes.
pub const CHECKPOINT_EVERY: usize = 1000;
/// Cap on the number of `*` steps in [`star_orbit`].
pub const ORBIT_MAX_STEPS: usize = 10_000;

#[derive(Debug, Error)]
pub enum ConjectureError {
    #[error("parameters exceed the sweep budget: {0}")]
    BudgetExceeded(String),
    #[error("star orbit of ({lambda}),({mu}) did not reach a fixed point in {steps} steps")]
    NonTermination { lambda: Partition, mu: Partition, steps: usize },
    #[error("star orbit step ({from}) -> ({to}) breaks prefix monotonicity")]
    Monotonicity { from: String, to: String },
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepStatus {
    Pass,
    Violation,
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// `lhs > rhs` where both are LR coefficients.
    Coefficient,
    /// `lhs > 0` but `rhs = 0`.
    Support,
    /// `lhs` is an LR coefficient and `rhs` the domino count for the same triple.
    DominoCount,
    /// `lhs` is an LR coefficient and `rhs` the number of distinct dilated
    /// Yamanouchi domino tableaux for the same triple.
    Dilation,
}

/// `c^nu_{lambda mu}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrTriple {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
}

impl LrTriple {
    pub fn new(lambda: Partition, mu: Partition, nu: Partition) -> Self {
        LrTriple { lambda, mu, nu }
    }

    pub fn coefficient(&self) -> u64 {
        lr_coefficient(&self.lambda, &self.mu, &self.nu)
    }
}

/// A failed comparison. `lambda, mu, nu` give the left-hand coefficient and
/// `against` names what it was compared with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepViolation {
    pub kind: ViolationKind,
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub lhs: u64,
    pub rhs: u64,
    pub against: LrTriple,
}

impl SweepViolation {
    fn new(kind: ViolationKind, left: LrTriple, lhs: u64, against: LrTriple, rhs: u64) -> Self {
        SweepViolation { kind, lambda: left.lambda, mu: left.mu, nu: left.nu, lhs, rhs, against }
    }

    /// Recomputes both sides from scratch and returns true when the recorded
    /// values come back and still violate the comparison.
    pub fn replay(&self) -> bool {
        let lhs = lr_coefficient(&self.lambda, &self.mu, &self.nu);
        let rhs = match self.kind {
            ViolationKind::Coefficient | ViolationKind::Support => self.against.coefficient(),
            ViolationKind::DominoCount => cl_coefficient(&self.against.lambda, &self.against.mu, &self.against.nu),
            ViolationKind::Dilation => distinct_dilations(&self.against).unwrap_or(u64::MAX),
        };
        if lhs != self.lhs || rhs != self.rhs {
            return false;
        }
        match self.kind {
            ViolationKind::Coefficient => lhs > rhs,
            ViolationKind::Support => lhs > 0 && rhs == 0,
            ViolationKind::DominoCount | ViolationKind::Dilation => lhs != rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub sweep: String,
    pub params: Value,
    pub pairs_examined: usize,
    pub total: usize,
    pub violations: Vec<SweepViolation>,
    pub wall_time_ms: u128,
    pub status: SweepStatus,
}

/// Budget and checkpointing for a sweep run.
#[derive(Debug, Clone, Default)]
pub struct SweepOptions {
    /// Stop after examining this many items in this run.
    pub max_pairs: Option<usize>,
    /// Progress file. An existing file with matching sweep and parameters is
    /// resumed from; it is rewritten every [`CHECKPOINT_EVERY`] items.
    pub checkpoint: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
struct Checkpoint {
    sweep: String,
    params: Value,
    cursor: usize,
    violations: Vec<SweepViolation>,
}

fn load_checkpoint(path: &Path, sweep: &str, params: &Value) -> Result<Option<Checkpoint>, ConjectureError> {
    let text = match fs::read_to_string(path) {
        Ok(t) if t.trim().is_empty() => return Ok(None),
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(ConjectureError::Checkpoint(format!("{}: {e}", path.display()))),
    };
    let cp: Checkpoint =
        serde_json::from_str(&text).map_err(|e| ConjectureError::Checkpoint(format!("{}: {e}", path.display())))?;
    if cp.sweep != sweep || &cp.params != params {
        return Err(ConjectureError::Checkpoint(format!(
            "{} belongs to sweep {} {}, not {} {}",
            path.display(),
            cp.sweep,
            cp.params,
            sweep,
            params
        )));
    }
    Ok(Some(cp))
}

fn write_checkpoint(path: &Path, cp: &Checkpoint) -> Result<(), ConjectureError> {
    let err = |e: std::io::Error| ConjectureError::Checkpoint(format!("{}: {e}", path.display()));
    let tmp = path.with_extension("tmp");
    let text = serde_json::to_string(cp).expect("checkpoint serializes");
    fs::write(&tmp, text).map_err(err)?;
    fs::rename(&tmp, path).map_err(err)
}

/// Runs `check` over `items` in order, in parallel within each chunk, and
/// collects violations in item order regardless of scheduling.
fn run_sweep<T, F>(
    sweep: &str,
    params: Value,
    items: &[T],
    check: F,
    opts: &SweepOptions,
) -> Result<SweepReport, ConjectureError>
where
    T: Sync,
    F: Fn(&T) -> Vec<SweepViolation> + Sync,
{
    let start = Instant::now();
    let (mut cursor, mut violations) = match &opts.checkpoint {
        Some(path) => match load_checkpoint(path, sweep, &params)? {
            Some(cp) => (cp.cursor.min(items.len()), cp.violations),
            None => (0, Vec::new()),
        },
        None => (0, Vec::new()),
    };
    let stop = opts.max_pairs.map_or(items.len(), |m| cursor.saturating_add(m).min(items.len()));
    while cursor < stop {
        let end = (cursor + CHECKPOINT_EVERY).min(stop);
        let found: Vec<Vec<SweepViolation>> = items[cursor..end].par_iter().map(&check).collect();
        violations.extend(found.into_iter().flatten());
        cursor = end;
        if let Some(path) = &opts.checkpoint {
            let cp = Checkpoint { sweep: sweep.to_string(), params: params.clone(), cursor, violations };
            write_checkpoint(path, &cp)?;
            violations = cp.violations;
        }
    }
    let status = if !violations.is_empty() {
        SweepStatus::Violation
    } else if cursor < items.len() {
        SweepStatus::BudgetExhausted
    } else {
        SweepStatus::Pass
    };
    Ok(SweepReport {
        sweep: sweep.to_string(),
        params,
        pairs_examined: cursor,
        total: items.len(),
        violations,
        wall_time_ms: start.elapsed().as_millis(),
        status,
    })
}

fn coefficientwise(left: &SchurExpansion, right: &SchurExpansion) -> Vec<SweepViolation> {
    left.terms
        .iter()
        .filter_map(|(nu, &lhs)| {
            let rhs = right.coefficient(nu);
            let kind = if rhs == 0 {
                ViolationKind::Support
            } else if lhs > rhs {
                ViolationKind::Coefficient
            } else {
                return None;
            };
            Some(SweepViolation::new(
                kind,
                LrTriple::new(left.lambda.clone(), left.mu.clone(), nu.clone()),
                lhs,
                LrTriple::new(right.lambda.clone(), right.mu.clone(), nu.clone()),
                rhs,
            ))
        })
        .collect()
}

fn by_weight(pairs: &mut [(Partition, Partition)]) {
    pairs.sort_by(|a, b| (a.0.weight() + a.1.weight()).cmp(&(b.0.weight() + b.1.weight())).then_with(|| a.cmp(b)));
}

fn star_check(lambda: &Partition, mu: &Partition, parts: usize) -> Vec<SweepViolation> {
    let (ls, ms) = star_pair(lambda, mu, parts).expect("pair fits the box");
    coefficientwise(&schur_product(lambda, mu), &schur_product(&ls, &ms))
}

/// Checks `c^nu_{lambda mu} <= c^nu_{lambda* mu*}` for every ordered pair in
/// the `p x q` box and every `nu`.
pub fn verify_star_conjecture(p: usize, q: usize, opts: &SweepOptions) -> Result<SweepReport, ConjectureError> {
    if p * q > STAR_MAX_AREA {
        return Err(ConjectureError::BudgetExceeded(format!("p*q = {} > {STAR_MAX_AREA}", p * q)));
    }
    let shapes = partitions_in_box(p, q);
    let mut pairs: Vec<(Partition, Partition)> =
        shapes.iter().flat_map(|l| shapes.iter().map(move |m| (l.clone(), m.clone()))).collect();
    by_weight(&mut pairs);
    run_sweep("star", json!({ "p": p, "q": q }), &pairs, |(l, m)| star_check(l, m, p), opts)
}

/// The same comparison for one pair, with `*` taken on `parts` entries.
pub fn verify_star_pair(lambda: &Partition, mu: &Partition, parts: usize) -> Result<SweepReport, ConjectureError> {
    star_pair(lambda, mu, parts)?;
    let pairs = [(lambda.clone(), mu.clone())];
    let params = json!({ "lambda": lambda, "mu": mu, "parts": parts });
    run_sweep("star-pair", params, &pairs, |(l, m)| star_check(l, m, parts), &SweepOptions::default())
}

/// Distinct ways to distribute the parts of `gamma`, padded to `2p`, into two
/// `p`-part partitions. Each unordered pair appears once, larger first.
pub fn part_splittings(gamma: &Partition, p: usize) -> Result<Vec<(Partition, Partition)>, ConjectureError> {
    let g = gamma.padded(2 * p)?;
    let mut seen = BTreeSet::new();
    for mask in 0u32..(1 << (2 * p)) {
        if mask.count_ones() as usize != p || mask & 1 == 0 {
            continue;
        }
        let side = |bit: u32| (0..2 * p).filter(|&i| mask >> i & 1 == bit).map(|i| g[i]).collect();
        let (l, m) = (Partition::from_unsorted(side(1)), Partition::from_unsorted(side(0)));
        seen.insert(if l >= m { (l, m) } else { (m, l) });
    }
    Ok(seen.into_iter().collect())
}

fn domination_check(gamma: &Partition, p: usize) -> Vec<SweepViolation> {
    let padded = gamma.padded(2 * p).expect("gamma has at most 2p parts");
    let (a, b) = interlace_split(&padded).expect("even length, decreasing");
    let top = schur_product(&Partition::from_unsorted(a), &Partition::from_unsorted(b));
    part_splittings(gamma, p)
        .expect("gamma has at most 2p parts")
        .iter()
        .flat_map(|(l, m)| coefficientwise(&schur_product(l, m), &top))
        .collect()
}

fn domination_precheck(weight: usize, p: usize) -> Result<(), ConjectureError> {
    if weight > DOMINATION_MAX_WEIGHT || p > DOMINATION_MAX_P {
        return Err(ConjectureError::BudgetExceeded(format!(
            "|gamma| = {weight}, p = {p}; limits are {DOMINATION_MAX_WEIGHT} and {DOMINATION_MAX_P}"
        )));
    }
    Ok(())
}

/// Compares every splitting of `gamma` into two `p`-part partitions against
/// the interlace splitting. A `support` violation contradicts a theorem; a
/// `coefficient` violation would be a counterexample to the open
/// coefficientwise statement.
pub fn verify_schur_domination(gamma: &Partition, p: usize) -> Result<SweepReport, ConjectureError> {
    domination_precheck(gamma.weight(), p)?;
    if gamma.len() > 2 * p {
        return Err(PartitionError::PartsTooSmall { parts: 2 * p, len: gamma.len() }.into());
    }
    let items = [gamma.clone()];
    let params = json!({ "gamma": gamma, "p": p });
    run_sweep("domination", params, &items, |g| domination_check(g, p), &SweepOptions::default())
}

/// [`verify_schur_domination`] for every `gamma` with at most `2p` parts and
/// `|gamma| <= max_weight`, for each `p` in `1..=max_p`.
pub fn verify_schur_domination_sweep(
    max_weight: usize,
    max_p: usize,
    opts: &SweepOptions,
) -> Result<SweepReport, ConjectureError> {
    domination_precheck(max_weight, max_p)?;
    let items: Vec<(usize, Partition)> = (1..=max_p)
        .flat_map(|p| (0..=max_weight).flat_map(move |w| partitions_of_bounded(w, 2 * p, w)).map(move |g| (p, g)))
        .collect();
    let params = json!({ "max_weight": max_weight, "max_p": max_p });
    run_sweep("domination-sweep", params, &items, |(p, g)| domination_check(g, *p), opts)
}

fn distinct_dilations(t: &LrTriple) -> Option<u64> {
    let rho = tau_partitions(&t.lambda, &t.mu);
    let mut images = BTreeSet::new();
    for ydt in enumerate_ydt(&rho, Some(&t.nu)) {
        images.insert(dilate_tableau(&ydt).ok()?);
    }
    Some(images.len() as u64)
}

fn tau_check(lambda: &Partition, mu: &Partition) -> Vec<SweepViolation> {
    let rho = tau_partitions(lambda, mu);
    let mut out = Vec::new();
    for nu in partitions_of(lambda.weight() + mu.weight()) {
        let here = LrTriple::new(lambda.clone(), mu.clone(), nu.clone());
        let lhs = here.coefficient();
        let ydt = enumerate_ydt(&rho, Some(&nu));
        if ydt.len() as u64 != lhs {
            out.push(SweepViolation::new(ViolationKind::DominoCount, here.clone(), lhs, here, ydt.len() as u64));
            continue;
        }
        if lhs == 0 {
            continue;
        }
        let tnu = tau_partitions(&nu, &nu);
        let doubled = LrTriple::new(rho.clone(), rho.clone(), tnu);
        let rhs = doubled.coefficient();
        if lhs > rhs {
            out.push(SweepViolation::new(ViolationKind::Coefficient, here.clone(), lhs, doubled, rhs));
        }
        let images: Option<BTreeSet<_>> = ydt.iter().map(|t| dilate_tableau(t).ok()).collect();
        let distinct = images.map_or(u64::MAX, |s| s.len() as u64);
        if distinct != lhs {
            out.push(SweepViolation::new(ViolationKind::Dilation, here.clone(), lhs, here, distinct));
        }
    }
    out
}

/// Checks `c^nu_{lambda mu} <= c^{tau(nu,nu)}_{tau(lambda,mu) tau(lambda,mu)}`
/// for all `|lambda| + |mu| <= bound`. The left side is also recounted as
/// Yamanouchi domino tableaux of shape `tau(lambda, mu)`, and dilating those
/// must give that many distinct tableaux.
pub fn verify_tau_domination(bound: usize, opts: &SweepOptions) -> Result<SweepReport, ConjectureError> {
    if bound > TAU_MAX_WEIGHT {
        return Err(ConjectureError::BudgetExceeded(format!("weight bound {bound} > {TAU_MAX_WEIGHT}")));
    }
    let mut pairs = Vec::new();
    for w in 0..=bound {
        for a in 0..=w {
            for l in partitions_of(a) {
                for m in partitions_of(w - a) {
                    pairs.push((l.clone(), m));
                }
            }
        }
    }
    by_weight(&mut pairs);
    run_sweep("tau", json!({ "max_weight": bound }), &pairs, |(l, m)| tau_check(l, m), opts)
}

fn ffg_check(t: &HornTriple) -> Vec<SweepViolation> {
    let (l, m, n) = t.partitions();
    let (f, g) = ffg_image_sets(t);
    let (pf, pg) = (partition_from_set(&f), partition_from_set(&g));
    let image = LrTriple::new(pf.clone(), pf, pg);
    let rhs = image.coefficient();
    if rhs > 0 {
        return Vec::new();
    }
    let here = LrTriple::new(l, m, n);
    let lhs = here.coefficient();
    vec![SweepViolation::new(ViolationKind::Support, here, lhs, image, rhs)]
}

/// Every `(I, J, K)` in `LR_r^p` for `p <= max_p` must map to an `(F, F, G)`
/// in `LR_{2r}^{2p}`.
pub fn verify_ffg_membership(max_p: usize, opts: &SweepOptions) -> Result<SweepReport, ConjectureError> {
    if max_p > FFG_MAX_P {
        return Err(ConjectureError::BudgetExceeded(format!("p = {max_p} > {FFG_MAX_P}")));
    }
    let triples: Vec<HornTriple> = (1..=max_p).flat_map(|p| horn_triples(p, None)).collect();
    run_sweep("ffg", json!({ "max_p": max_p }), &triples, ffg_check, opts)
}

/// `mu_1, lambda_1, mu_2, lambda_2, ...` on `parts` entries each.
pub fn interleaved(lambda: &Partition, mu: &Partition, parts: usize) -> Result<Vec<usize>, PartitionError> {
    let (l, m) = (lambda.padded(parts)?, mu.padded(parts)?);
    Ok(m.into_iter().zip(l).flat_map(|(a, b)| [a, b]).collect())
}

/// Length of the longest weakly decreasing prefix.
pub fn decreasing_prefix(seq: &[usize]) -> usize {
    match seq.windows(2).position(|w| w[0] < w[1]) {
        Some(i) => i + 1,
        None => seq.len(),
    }
}

/// Applies `*` until a fixed point and returns every pair visited, starting
/// with the input. Each step is checked to keep the first `k - 1` terms of
/// the interleaved sequence, strictly raise the `k`-th, and not lower `k`,
/// where `k` is the length of the decreasing prefix.
pub fn star_orbit(
    lambda: &Partition,
    mu: &Partition,
    parts: usize,
) -> Result<Vec<(Partition, Partition)>, ConjectureError> {
    let mut orbit = vec![(lambda.clone(), mu.clone())];
    for _ in 0..ORBIT_MAX_STEPS {
        let (l, m) = orbit.last().expect("nonempty").clone();
        let (ls, ms) = star_pair(&l, &m, parts)?;
        let before = interleaved(&l, &m, parts)?;
        let k = decreasing_prefix(&before);
        if ls == l && ms == m {
            if k != before.len() {
                return Err(ConjectureError::Monotonicity { from: format!("{l}),({m}"), to: "itself".into() });
            }
            return Ok(orbit);
        }
        let after = interleaved(&ls, &ms, parts)?;
        let ok = k < before.len()
            && before[..k - 1] == after[..k - 1]
            && after[k - 1] > before[k - 1]
            && decreasing_prefix(&after) >= k;
        if !ok {
            return Err(ConjectureError::Monotonicity { from: format!("{l}),({m}"), to: format!("{ls}),({ms}") });
        }
        orbit.push((ls, ms));
    }
    Err(ConjectureError::NonTermination { lambda: lambda.clone(), mu: mu.clone(), steps: ORBIT_MAX_STEPS })
}
