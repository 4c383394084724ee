//! Horn triples `LR_r^p`, the inequality families built on them, Horn cone
//! membership, the decomposition of Horn-feasible triples into saturated
//! blocks, and two-colour repainting.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ineq::{
    add_term, check_all, is_weakly_decreasing, LinearForm, LinearInequality, Relation, Report, Scalar, Var, VarKind,
};
use crate::lr::{lr_coefficient, lr_positive, schur_product_in_box};
use crate::partitions::{interlace_split, partition_from_set, set_from_partition, subsets, IndexSet, Partition};

/// Largest `n` accepted by the full `(E, F, G)` family of [`check_pxyq`].
pub const PXYQ_FULL_MAX_N: usize = 4;
/// Largest `n` accepted by the `(F, F, G)` family of [`check_pxyq`].
pub const PXYQ_FFG_MAX_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HornError {
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("n = {n} exceeds the limit {max} for this inequality family")]
    TooLarge { n: usize, max: usize },
    #[error("input violates {} Horn inequalities", .0.violations.len())]
    HornViolated(Box<Report>),
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("bad coloring: {0}")]
    BadColoring(String),
}

/// `(I, J, K)` of common size `r` inside `{1..=p}` with `c^{lambda(K)}_{lambda(I) lambda(J)} > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HornTriple {
    pub p: usize,
    pub i: IndexSet,
    pub j: IndexSet,
    pub k: IndexSet,
}

impl HornTriple {
    /// Builds the triple if it lies in `LR_r^p`.
    pub fn certify(i: IndexSet, j: IndexSet, k: IndexSet, p: usize) -> Option<HornTriple> {
        let r = i.len();
        if r == 0 || j.len() != r || k.len() != r || [&i, &j, &k].iter().any(|s| s.largest() > p) {
            return None;
        }
        let t = HornTriple { p, i, j, k };
        let (l, m, n) = t.partitions();
        lr_positive(&l, &m, &n).then_some(t)
    }

    pub fn r(&self) -> usize {
        self.i.len()
    }

    pub fn partitions(&self) -> (Partition, Partition, Partition) {
        (partition_from_set(&self.i), partition_from_set(&self.j), partition_from_set(&self.k))
    }

    pub fn coefficient(&self) -> u64 {
        let (l, m, n) = self.partitions();
        lr_coefficient(&l, &m, &n)
    }

    fn sort_key(&self) -> (usize, &IndexSet, &IndexSet, &IndexSet) {
        (self.r(), &self.i, &self.j, &self.k)
    }

    fn label(&self) -> String {
        format!("({},{},{})", self.i, self.j, self.k)
    }
}

type FamilyCache = RwLock<HashMap<(bool, usize, usize), Arc<Vec<HornTriple>>>>;

fn cache() -> &'static FamilyCache {
    static CACHE: OnceLock<FamilyCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn cached(ffg: bool, p: usize, r: usize, build: impl FnOnce() -> Vec<HornTriple>) -> Arc<Vec<HornTriple>> {
    if let Some(v) = cache().read().expect("triple cache poisoned").get(&(ffg, p, r)) {
        return v.clone();
    }
    let built = Arc::new(build());
    cache().write().expect("triple cache poisoned").entry((ffg, p, r)).or_insert(built).clone()
}

/// `LR_r^p`, sorted lexicographically by `(I, J, K)`. Candidates `K` are read
/// off the support of `s_{lambda(I)} s_{lambda(J)}` in the `r x (p - r)` box
/// and each one is certified with [`lr_positive`].
pub fn lr_family(p: usize, r: usize) -> Arc<Vec<HornTriple>> {
    cached(false, p, r, || {
        if r == 0 || r > p {
            return Vec::new();
        }
        let sets = subsets(p, r);
        let mut out = Vec::new();
        for i in &sets {
            let li = partition_from_set(i);
            for j in &sets {
                let lj = partition_from_set(j);
                for nu in schur_product_in_box(&li, &lj, r, p - r).terms.keys() {
                    let k = set_from_partition(nu, r).expect("nu fits the r-row box");
                    let t = HornTriple::certify(i.clone(), j.clone(), k, p).expect("product support is LR-positive");
                    out.push(t);
                }
            }
        }
        out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        out
    })
}

/// The triples of `LR_m^p` of the form `(F, F, G)`, sorted.
pub fn ffg_family(p: usize, m: usize) -> Arc<Vec<HornTriple>> {
    cached(true, p, m, || {
        if m == 0 || m > p {
            return Vec::new();
        }
        let mut out = Vec::new();
        for f in subsets(p, m) {
            let lf = partition_from_set(&f);
            for nu in schur_product_in_box(&lf, &lf, m, p - m).terms.keys() {
                let g = set_from_partition(nu, m).expect("nu fits the m-row box");
                out.push(HornTriple::certify(f.clone(), f.clone(), g, p).expect("product support is LR-positive"));
            }
        }
        out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        out
    })
}

/// `LR_r^p` for the given `r`, or the union over `1 <= r <= p`, in `(r, I, J, K)` order.
/// An out-of-range `r` gives an empty list.
pub fn horn_triples(p: usize, r: Option<usize>) -> Vec<HornTriple> {
    match r {
        Some(r) => lr_family(p, r).as_ref().clone(),
        None => (1..=p).flat_map(|r| lr_family(p, r).as_ref().clone()).collect(),
    }
}

/// The triples whose LR coefficient is exactly 1.
pub fn essential_triples(p: usize) -> Vec<HornTriple> {
    horn_triples(p, None).into_iter().filter(|t| t.coefficient() == 1).collect()
}

/// The sets `(F, G)` of [`triple_map_ffg`], without the positivity check.
pub fn ffg_image_sets(t: &HornTriple) -> (IndexSet, IndexSet) {
    let f = IndexSet::from_unsorted(t.i.iter().map(|x| 2 * x - 1).chain(t.j.iter().map(|x| 2 * x)).collect())
        .expect("odd and even images are disjoint");
    let g = IndexSet::from_unsorted(t.k.iter().flat_map(|x| [2 * x - 1, 2 * x]).collect()).expect("disjoint pairs");
    (f, g)
}

/// `(I, J, K) -> (F, F, G)` with `F = {2i - 1} ∪ {2j}`, `G = {2k - 1} ∪ {2k}` in `{1..=2p}`.
///
/// # Panics
/// If the image is not LR-positive, which is always a bug.
pub fn triple_map_ffg(t: &HornTriple) -> HornTriple {
    let (f, g) = ffg_image_sets(t);
    HornTriple::certify(f.clone(), f.clone(), g.clone(), 2 * t.p)
        .unwrap_or_else(|| panic!("({f},{f},{g}) is not in LR^{}: IJK->FFG map broken", 2 * t.p))
}

fn var(kind: VarKind, i: usize) -> Var {
    Var(kind, i)
}

/// `2 sum_K s_k <= sum_I gamma_{2i-1} + sum_J gamma_{2j}` over all `(I, J, K)` in `LR_r^p`, `r <= p`.
pub fn sv_inequalities(p: usize) -> Vec<LinearInequality> {
    horn_triples(p, None)
        .iter()
        .map(|t| {
            let mut lhs = LinearForm::new();
            let mut rhs = LinearForm::new();
            t.k.iter().for_each(|k| add_term(&mut lhs, var(VarKind::S, k), 2));
            t.i.iter().for_each(|i| add_term(&mut rhs, var(VarKind::Gamma, 2 * i - 1), 1));
            t.j.iter().for_each(|j| add_term(&mut rhs, var(VarKind::Gamma, 2 * j), 1));
            LinearInequality::le(lhs, rhs, format!("sv {}", t.label()))
        })
        .collect()
}

/// `2 sum_K s_k <= sum_I lambda_i - sum_J lambda_{n+1-j}` over all `(I, J, K)` in `LR_r^p`, `r <= p`.
pub fn offdiag_inequalities(n: usize, p: usize) -> Vec<LinearInequality> {
    horn_triples(p, None)
        .iter()
        .map(|t| {
            let mut lhs = LinearForm::new();
            let mut rhs = LinearForm::new();
            t.k.iter().for_each(|k| add_term(&mut lhs, var(VarKind::S, k), 2));
            t.i.iter().for_each(|i| add_term(&mut rhs, var(VarKind::Lambda, i), 1));
            t.j.iter().for_each(|j| add_term(&mut rhs, var(VarKind::Lambda, n + 1 - j), -1));
            LinearInequality::le(lhs, rhs, format!("offdiag {}", t.label()))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PxyqMode {
    /// Only triples `(F, F, G)`, in the form without the factor 2.
    FfgOnly,
    /// All `(E, F, G)` in `LR_m^{2n}`, `m < 2n`.
    Full,
}

// sum over g in G with g <= bound, minus the same over the reflection of G in {1..=ambient}
fn reflected_sum(form: &mut LinearForm, kind: VarKind, set: &IndexSet, ambient: usize, bound: usize, coeff: i64) {
    for g in set.iter().filter(|&g| g <= bound) {
        add_term(form, var(kind, g), coeff);
    }
    for g in set.reflect(ambient).iter().filter(|&g| g <= bound) {
        add_term(form, var(kind, g), -coeff);
    }
}

/// The inequalities on `(sigma, gamma)` for an `n x n` matrix with `p x (n-p)`
/// and `(n-p) x p` off-diagonal blocks; `sigma` is the merged decreasing
/// rearrangement of the two blocks' singular values.
pub fn pxyq_inequalities(n: usize, p: usize, mode: PxyqMode) -> Result<Vec<LinearInequality>, HornError> {
    let max = match mode {
        PxyqMode::Full => PXYQ_FULL_MAX_N,
        PxyqMode::FfgOnly => PXYQ_FFG_MAX_N,
    };
    if n > max {
        return Err(HornError::TooLarge { n, max });
    }
    let ambient = 2 * n;
    let mut rows = Vec::new();
    for m in 1..ambient {
        let family = match mode {
            PxyqMode::Full => lr_family(ambient, m),
            PxyqMode::FfgOnly => ffg_family(ambient, m),
        };
        for t in family.iter() {
            let mut lhs = LinearForm::new();
            let mut rhs = LinearForm::new();
            let (scale, name) = match mode {
                PxyqMode::Full => (2, "pxyq"),
                PxyqMode::FfgOnly => (1, "pxyq-ffg"),
            };
            reflected_sum(&mut lhs, VarKind::Sigma, &t.k, ambient, 2 * p, scale);
            reflected_sum(&mut rhs, VarKind::Gamma, &t.i, ambient, n, 1);
            reflected_sum(&mut rhs, VarKind::Gamma, &t.j, ambient, n, 1);
            if mode == PxyqMode::FfgOnly {
                // (F, F, G): both gamma sums coincide, so halve
                rhs.values_mut().for_each(|c| *c /= 2);
            }
            if lhs.is_empty() && rhs.is_empty() {
                continue;
            }
            rows.push(LinearInequality::le(lhs, rhs, format!("{name} {}", t.label())));
        }
    }
    Ok(rows)
}

/// Horn inequalities for `c` in `H(a; b)` of size `p`: the trace equality and
/// `sum_K c_k <= sum_I a_i + sum_J b_j` for `(I, J, K)` in `LR_r^p`, `r < p`.
pub fn horn_cone_inequalities(p: usize) -> Vec<LinearInequality> {
    let mut rows = Vec::new();
    let mut lhs = LinearForm::new();
    let mut rhs = LinearForm::new();
    for x in 1..=p {
        add_term(&mut lhs, var(VarKind::C, x), 1);
        add_term(&mut rhs, var(VarKind::A, x), 1);
        add_term(&mut rhs, var(VarKind::B, x), 1);
    }
    if p > 0 {
        rows.push(LinearInequality::eq(lhs, rhs, "trace"));
    }
    for r in 1..p {
        rows.extend(lr_family(p, r).iter().map(horn_row));
    }
    rows
}

fn horn_row(t: &HornTriple) -> LinearInequality {
    let mut lhs = LinearForm::new();
    let mut rhs = LinearForm::new();
    t.k.iter().for_each(|k| add_term(&mut lhs, var(VarKind::C, k), 1));
    t.i.iter().for_each(|i| add_term(&mut rhs, var(VarKind::A, i), 1));
    t.j.iter().for_each(|j| add_term(&mut rhs, var(VarKind::B, j), 1));
    LinearInequality::le(lhs, rhs, format!("horn {}", t.label()))
}

fn check_decreasing<S: Scalar>(name: &str, v: &[S]) -> Result<(), HornError> {
    if !is_weakly_decreasing(v) {
        return Err(HornError::BadShape(format!("{name} must be weakly decreasing")));
    }
    Ok(())
}

fn check_nonnegative<S: Scalar>(name: &str, v: &[S]) -> Result<(), HornError> {
    if v.iter().any(|x| *x < S::zero()) {
        return Err(HornError::BadShape(format!("{name} must be nonnegative")));
    }
    Ok(())
}

fn check_len<S>(name: &str, v: &[S], len: usize) -> Result<(), HornError> {
    if v.len() != len {
        return Err(HornError::BadShape(format!("{name} must have length {len}, got {}", v.len())));
    }
    Ok(())
}

fn lookup<S: Scalar>(v: &[S], i: usize) -> S {
    v.get(i - 1).cloned().unwrap_or_else(S::zero)
}

/// Checks the singular value inequalities for `gamma` (length `2p`) and `s` (length `p`).
pub fn check_sv<S: Scalar>(gamma: &[S], s: &[S], tol: f64) -> Result<Report, HornError> {
    let p = s.len();
    check_len("gamma", gamma, 2 * p)?;
    for (name, v) in [("gamma", gamma), ("s", s)] {
        check_decreasing(name, v)?;
        check_nonnegative(name, v)?;
    }
    let env = |v: Var| match v.0 {
        VarKind::S => lookup(s, v.1),
        _ => lookup(gamma, v.1),
    };
    Ok(check_all(&sv_inequalities(p), &env, tol))
}

/// Checks the off-diagonal block inequalities for eigenvalues `lambda` (length `n >= 2p`).
pub fn check_offdiag<S: Scalar>(lambda: &[S], s: &[S], tol: f64) -> Result<Report, HornError> {
    let (n, p) = (lambda.len(), s.len());
    if 2 * p > n {
        return Err(HornError::BadShape(format!("need 2p <= n, got p = {p}, n = {n}")));
    }
    check_decreasing("lambda", lambda)?;
    check_decreasing("s", s)?;
    check_nonnegative("s", s)?;
    let env = |v: Var| match v.0 {
        VarKind::S => lookup(s, v.1),
        _ => lookup(lambda, v.1),
    };
    Ok(check_all(&offdiag_inequalities(n, p), &env, tol))
}

/// Merged decreasing rearrangement of `s` and `t`.
pub fn merged_desc<S: Scalar>(s: &[S], t: &[S]) -> Vec<S> {
    let mut sigma: Vec<S> = s.iter().chain(t).cloned().collect();
    sigma.sort_by(|a, b| b.partial_cmp(a).expect("comparable values"));
    sigma
}

pub fn check_pxyq<S: Scalar>(gamma: &[S], s: &[S], t: &[S], mode: PxyqMode, tol: f64) -> Result<Report, HornError> {
    let (n, p) = (gamma.len(), s.len());
    check_len("t", t, p)?;
    if 2 * p > n {
        return Err(HornError::BadShape(format!("need 2p <= n, got p = {p}, n = {n}")));
    }
    for (name, v) in [("gamma", gamma), ("s", s), ("t", t)] {
        check_decreasing(name, v)?;
        check_nonnegative(name, v)?;
    }
    let sigma = merged_desc(s, t);
    let rows = pxyq_inequalities(n, p, mode)?;
    let env = |v: Var| match v.0 {
        VarKind::Sigma => lookup(&sigma, v.1),
        _ => lookup(gamma, v.1),
    };
    Ok(check_all(&rows, &env, tol))
}

/// The complete description for `p = 1`, `n = 2`:
/// `s1 + t1 <= g1 + g2`, `s1 - t1 <= g1 - g2`, `t1 - s1 <= g1 - g2`.
pub fn p1n2_complete<S: Scalar>(g1: &S, g2: &S, s1: &S, t1: &S, tol: f64) -> bool {
    let sum = S::le_tol(&(s1.clone() + t1.clone()), &(g1.clone() + g2.clone()), tol);
    let gap = g1.clone() - g2.clone();
    sum && S::le_tol(&(s1.clone() - t1.clone()), &gap, tol) && S::le_tol(&(t1.clone() - s1.clone()), &gap, tol)
}

/// Membership of `c` in the Horn cone `H(a; b)`.
pub fn horn_cone_membership<S: Scalar>(a: &[S], b: &[S], c: &[S], tol: f64) -> Result<Report, HornError> {
    let p = a.len();
    check_len("b", b, p)?;
    check_len("c", c, p)?;
    for (name, v) in [("a", a), ("b", b), ("c", c)] {
        check_decreasing(name, v)?;
    }
    let env = |v: Var| match v.0 {
        VarKind::A => lookup(a, v.1),
        VarKind::B => lookup(b, v.1),
        _ => lookup(c, v.1),
    };
    Ok(check_all(&horn_cone_inequalities(p), &env, tol))
}

/// `H(gamma_1, gamma_3, ...; gamma_2, gamma_4, ...)`: the cone of the interlacing split.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinedCone<S> {
    pub a: Vec<S>,
    pub b: Vec<S>,
}

impl<S: Scalar> CombinedCone<S> {
    pub fn p(&self) -> usize {
        self.a.len()
    }

    pub fn inequalities(&self) -> Vec<LinearInequality> {
        horn_cone_inequalities(self.p())
    }

    pub fn contains(&self, c: &[S], tol: f64) -> Result<Report, HornError> {
        horn_cone_membership(&self.a, &self.b, c, tol)
    }
}

pub fn combined_spectrum_cone<S: Scalar>(gamma: &[S]) -> Result<CombinedCone<S>, HornError> {
    let (a, b) = interlace_split(gamma).map_err(|e| HornError::BadShape(e.to_string()))?;
    Ok(CombinedCone { a, b })
}

/// Two halves `(a, b)` of a spectrum.
pub type Splitting<S> = (Vec<S>, Vec<S>);

/// All ways of splitting `gamma` into two weakly decreasing halves `(a, b)`
/// with `gamma_1` in `a`, deduplicated by value.
pub fn splittings<S: Scalar>(gamma: &[S]) -> Result<Vec<Splitting<S>>, HornError> {
    if !gamma.len().is_multiple_of(2) {
        return Err(HornError::BadShape("gamma must have even length".into()));
    }
    check_decreasing("gamma", gamma)?;
    let p = gamma.len() / 2;
    let mut out: Vec<(Vec<S>, Vec<S>)> = Vec::new();
    if p == 0 {
        return Ok(vec![(Vec::new(), Vec::new())]);
    }
    for rest in subsets(2 * p - 1, p - 1) {
        let chosen: Vec<usize> = std::iter::once(0).chain(rest.iter()).collect();
        let a: Vec<S> = chosen.iter().map(|&x| gamma[x].clone()).collect();
        let b: Vec<S> = (0..2 * p).filter(|x| !chosen.contains(x)).map(|x| gamma[x].clone()).collect();
        if !out.iter().any(|(x, y)| *x == a && *y == b) {
            out.push((a, b));
        }
    }
    Ok(out)
}

/// A closed interval; a missing end is unbounded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Option<BigRational>,
    pub hi: Option<BigRational>,
}

/// The set of `s` with `base + s * dir` weakly decreasing and in `H(a; b)`,
/// computed exactly. `None` when empty.
pub fn cone_interval(
    a: &[BigRational],
    b: &[BigRational],
    base: &[BigRational],
    dir: &[BigRational],
) -> Result<Option<Interval>, HornError> {
    let p = a.len();
    for (name, v) in [("b", b), ("base", base), ("dir", dir)] {
        check_len(name, v, p)?;
    }
    check_decreasing("a", a)?;
    check_decreasing("b", b)?;
    let zero = BigRational::zero();
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    let mut fixed: Option<BigRational> = None;
    let mut feasible = true;
    // each row reads  slope * s <= bound  (or = bound)
    let mut constrain = |slope: BigRational, bound: BigRational, eq: bool| {
        if slope.is_zero() {
            if (eq && !bound.is_zero()) || bound < zero {
                feasible = false;
            }
            return;
        }
        let x = &bound / &slope;
        if eq {
            if fixed.as_ref().is_some_and(|f| *f != x) {
                feasible = false;
            }
            fixed = Some(x);
        } else if slope.is_positive() {
            hi = Some(hi.take().map_or(x.clone(), |h| h.min(x.clone())));
        } else {
            lo = Some(lo.take().map_or(x.clone(), |l| l.max(x.clone())));
        }
    };
    for row in horn_cone_inequalities(p) {
        let at_base = |v: Var| match v.0 {
            VarKind::A => lookup(a, v.1),
            VarKind::B => lookup(b, v.1),
            _ => lookup(base, v.1),
        };
        let along = |v: Var| match v.0 {
            VarKind::C => lookup(dir, v.1),
            _ => BigRational::zero(),
        };
        let (l0, r0) = row.evaluate(&at_base);
        let (l1, r1) = row.evaluate(&along);
        constrain(l1 - r1, r0 - l0, row.relation == Relation::Eq);
    }
    for x in 1..p {
        // c_{x+1} - c_x <= 0
        constrain(&dir[x] - &dir[x - 1], &base[x - 1] - &base[x], false);
    }
    if !feasible {
        return Ok(None);
    }
    if let Some(f) = fixed {
        let inside = lo.as_ref().is_none_or(|l| *l <= f) && hi.as_ref().is_none_or(|h| f <= *h);
        return Ok(inside.then(|| Interval { lo: Some(f.clone()), hi: Some(f) }));
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return Ok(None);
        }
    }
    Ok(Some(Interval { lo, hi }))
}

/// For `p = 2`: the range of `c_1` over `c = (c_1, c_2)` in `H(a; b)`.
pub fn c1_interval(a: &[BigRational], b: &[BigRational]) -> Result<Option<Interval>, HornError> {
    check_len("a", a, 2)?;
    let trace: BigRational = a.iter().chain(b).sum();
    let base = vec![BigRational::zero(), trace];
    let dir = vec![BigRational::one(), -BigRational::one()];
    cone_interval(a, b, &base, &dir)
}

/// Weakly decreasing `a`, `b`, `c` of a common length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumTriple {
    pub a: Vec<BigRational>,
    pub b: Vec<BigRational>,
    pub c: Vec<BigRational>,
}

impl SpectrumTriple {
    pub fn new(a: Vec<BigRational>, b: Vec<BigRational>, c: Vec<BigRational>) -> Result<Self, HornError> {
        check_len("b", &b, a.len())?;
        check_len("c", &c, a.len())?;
        for (name, v) in [("a", &a), ("b", &b), ("c", &c)] {
            check_decreasing(name, v)?;
        }
        Ok(SpectrumTriple { a, b, c })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }
}

/// One block of a decomposition: `(t a, t b, c)` is saturated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub t: BigRational,
    pub a: Vec<BigRational>,
    pub b: Vec<BigRational>,
    pub c: Vec<BigRational>,
}

fn set_sum(v: &[BigRational], set: &IndexSet) -> BigRational {
    set.iter().map(|x| &v[x - 1]).sum()
}

fn pick(v: &[BigRational], set: &IndexSet) -> Vec<BigRational> {
    set.iter().map(|x| v[x - 1].clone()).collect()
}

fn pick_complement(v: &[BigRational], set: &IndexSet) -> Vec<BigRational> {
    (1..=v.len()).filter(|&x| !set.contains(x)).map(|x| v[x - 1].clone()).collect()
}

/// The Horn inequalities `sum_K c <= sum_I a + sum_J b` for all `r <= n`.
pub fn horn_precondition(tr: &SpectrumTriple) -> Report {
    let n = tr.n();
    let rows: Vec<LinearInequality> =
        (1..=n).flat_map(|r| lr_family(n, r).iter().map(horn_row).collect::<Vec<_>>()).collect();
    let env = |v: Var| match v.0 {
        VarKind::A => lookup(&tr.a, v.1),
        VarKind::B => lookup(&tr.b, v.1),
        _ => lookup(&tr.c, v.1),
    };
    check_all(&rows, &env, 0.0)
}

/// Splits a Horn-feasible nonnegative triple into blocks `(t_l a_l, t_l b_l, c_l)`
/// each satisfying its Horn inequalities strictly below full size and with
/// equality at full size.
///
/// At each level the smallest `t` with `(t a, t b, c)` still feasible is the
/// largest per-row threshold `sum_K c / (sum_I a + sum_J b)`; the first row (in
/// `(r, I, J, K)` order) that is tight at that `t` is split off, and the rest
/// is processed with `a`, `b` scaled by `t`. A zero `c` yields singleton blocks
/// with `t = 0`.
pub fn decompose_triple(tr: &SpectrumTriple) -> Result<Vec<Block>, HornError> {
    for (name, v) in [("a", &tr.a), ("b", &tr.b), ("c", &tr.c)] {
        check_nonnegative(name, v)?;
    }
    let pre = horn_precondition(tr);
    if !pre.holds {
        return Err(HornError::HornViolated(Box::new(pre)));
    }
    let mut out = Vec::new();
    split_blocks(tr.a.clone(), tr.b.clone(), tr.c.clone(), BigRational::one(), &mut out)?;
    Ok(out)
}

fn split_blocks(
    a: Vec<BigRational>,
    b: Vec<BigRational>,
    c: Vec<BigRational>,
    scale: BigRational,
    out: &mut Vec<Block>,
) -> Result<(), HornError> {
    let n = a.len();
    if n == 0 {
        return Ok(());
    }
    let rows: Vec<(HornTriple, BigRational, BigRational)> = (1..=n)
        .flat_map(|r| lr_family(n, r).as_ref().clone())
        .map(|t| {
            let s = &scale * (set_sum(&a, &t.i) + set_sum(&b, &t.j));
            let cs = set_sum(&c, &t.k);
            (t, s, cs)
        })
        .collect();
    let mut t_star = BigRational::zero();
    for (t, s, cs) in &rows {
        let th = if s.is_zero() {
            if cs.is_positive() {
                return Err(HornError::DecompositionFailed(format!("{} infeasible at every t", t.label())));
            }
            BigRational::zero()
        } else {
            cs / s
        };
        if th > BigRational::one() {
            return Err(HornError::DecompositionFailed(format!("remaining triple violates {}", t.label())));
        }
        t_star = t_star.max(th);
    }
    let (t, _, _) = rows.iter().find(|(_, s, cs)| &t_star * s == *cs).expect("the maximal threshold is attained");
    out.push(Block { t: &scale * &t_star, a: pick(&a, &t.i), b: pick(&b, &t.j), c: pick(&c, &t.k) });
    if t.r() < n {
        let next = &scale * &t_star;
        split_blocks(pick_complement(&a, &t.i), pick_complement(&b, &t.j), pick_complement(&c, &t.k), next, out)?;
    }
    Ok(())
}

/// Why a decomposition is rejected, or `Ok` when it is valid.
pub fn check_decomposition(tr: &SpectrumTriple, blocks: &[Block]) -> Result<(), String> {
    let sorted = |mut v: Vec<BigRational>| {
        v.sort_by(|x, y| y.cmp(x));
        v
    };
    let gather = |f: fn(&Block) -> &Vec<BigRational>| sorted(blocks.iter().flat_map(|bl| f(bl).clone()).collect());
    if gather(|bl| &bl.a) != sorted(tr.a.clone())
        || gather(|bl| &bl.b) != sorted(tr.b.clone())
        || gather(|bl| &bl.c) != sorted(tr.c.clone())
    {
        return Err("blocks do not partition the entries of (a, b, c)".into());
    }
    for (idx, bl) in blocks.iter().enumerate() {
        let n = bl.a.len();
        if n == 0 || bl.b.len() != n || bl.c.len() != n {
            return Err(format!("block {idx}: sizes differ or are zero"));
        }
        if bl.t.is_negative() || bl.t > BigRational::one() {
            return Err(format!("block {idx}: t = {} outside [0, 1]", bl.t));
        }
        let (a, b, c) = (sorted(bl.a.clone()), sorted(bl.b.clone()), sorted(bl.c.clone()));
        for r in 1..=n {
            for t in lr_family(n, r).iter() {
                let rhs = &bl.t * (set_sum(&a, &t.i) + set_sum(&b, &t.j));
                let lhs = set_sum(&c, &t.k);
                let ok = if r < n { lhs < rhs } else { lhs == rhs };
                if !ok {
                    let rel = if r < n { "<" } else { "=" };
                    return Err(format!("block {idx}: {} needs {lhs} {rel} {rhs}", t.label()));
                }
            }
        }
    }
    Ok(())
}

pub fn validate_decomposition(tr: &SpectrumTriple, blocks: &[Block]) -> bool {
    check_decomposition(tr, blocks).is_ok()
}

/// One two-colour repaint: all indices carrying colour `c` or `c'` are
/// recoloured alternately, starting with the smaller colour.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepaintStep {
    pub colors: (usize, usize),
    pub before: Vec<usize>,
    pub after: Vec<usize>,
    /// Length of the prefix agreeing with `1, ..., m, 1, ..., m, ...` after this step.
    pub canonical_prefix: usize,
}

fn canonical_prefix(coloring: &[usize], m: usize) -> usize {
    coloring.iter().enumerate().take_while(|(j, &c)| c == j % m + 1).count()
}

/// Repaints `coloring` (each of `m` colours used `p` times) into `1, ..., m, 1, ..., m, ...`.
pub fn repaint_canonicalize(coloring: &[usize], m: usize, p: usize) -> Result<Vec<RepaintStep>, HornError> {
    if m == 0 || coloring.len() != m * p {
        return Err(HornError::BadColoring(format!("expected {} entries for m = {m}, p = {p}", m * p)));
    }
    for color in 1..=m {
        let used = coloring.iter().filter(|&&c| c == color).count();
        if used != p {
            return Err(HornError::BadColoring(format!("color {color} used {used} times, expected {p}")));
        }
    }
    if coloring.iter().any(|&c| c == 0 || c > m) {
        return Err(HornError::BadColoring(format!("colors must lie in 1..={m}")));
    }
    let mut cur = coloring.to_vec();
    let mut steps = Vec::new();
    loop {
        let k = canonical_prefix(&cur, m);
        if k == cur.len() {
            return Ok(steps);
        }
        let (c, target) = (cur[k], k % m + 1);
        let (lo, hi) = (c.min(target), c.max(target));
        let before = cur.clone();
        let mut next = lo;
        for x in cur.iter_mut().filter(|x| **x == lo || **x == hi) {
            *x = next;
            next = if next == lo { hi } else { lo };
        }
        let prefix = canonical_prefix(&cur, m);
        assert!(prefix > k, "repaint must extend the canonical prefix");
        steps.push(RepaintStep { colors: (lo, hi), before, after: cur.clone(), canonical_prefix: prefix });
    }
}
