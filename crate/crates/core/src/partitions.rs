//! Integer partitions, index sets, and the maps between them.
//!
//! A partition with at most `r` parts corresponds to an `r`-element set of
//! positive integers via `{i_1 < ... < i_r} -> (i_r - r, ..., i_1 - 1)`.
//! Everything here is padding-sensitive, so any operation that needs a
//! padded view takes the padding length explicitly.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<usize>),
    #[error("index set must be strictly increasing and positive: {0:?}")]
    BadIndexSet(Vec<usize>),
    #[error("r = {r} is smaller than the length {len} of the partition")]
    RTooSmall { r: usize, len: usize },
    #[error("index sets have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("shape {0} is not domino-decomposable")]
    NotDominoDecomposable(Partition),
    #[error("padding length {parts} is smaller than a partition length {len}")]
    PartsTooSmall { parts: usize, len: usize },
    #[error("sequence has odd length {0}")]
    OddLength(usize),
    #[error("sequence is not weakly decreasing")]
    NotSorted,
    #[error("{nu} does not fit in a {p}x{q} box")]
    DoesNotFitBox { nu: Partition, p: usize, q: usize },
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// A weakly decreasing sequence of positive integers (trailing zeros stripped).
///
/// Ordering is lexicographic on the zero-padded parts, which coincides with
/// the derived `Vec` ordering once trailing zeros are removed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts arbitrary parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// Parts padded with zeros to exactly `n` entries.
    pub fn padded(&self, n: usize) -> Result<Vec<usize>, PartitionError> {
        if n < self.len() {
            return Err(PartitionError::PartsTooSmall { parts: n, len: self.len() });
        }
        let mut v = self.0.clone();
        v.resize(n, 0);
        Ok(v)
    }

    /// Young diagram containment.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn fits_box(&self, rows: usize, cols: usize) -> bool {
        self.len() <= rows && self.0.first().is_none_or(|&x| x <= cols)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((1..=width).map(|c| self.0.iter().take_while(|&&x| x >= c).count()).collect())
    }
}

impl Index<usize> for Partition {
    type Output = usize;

    /// Zero-based; out-of-range parts are zero.
    fn index(&self, index: usize) -> &usize {
        self.0.get(index).unwrap_or(&0)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// `4,4,1,1`; the empty partition is `-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Parse(s.to_string()))?;
        Partition::new(parts)
    }
}

/// Builds a partition from a literal slice; panics if not weakly decreasing.
#[macro_export]
macro_rules! part {
    () => { $crate::partitions::Partition::empty() };
    ($($x:expr),+ $(,)?) => {
        $crate::partitions::Partition::new(vec![$($x),+]).expect("partition literal")
    };
}

/// A strictly increasing set of positive integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(elems: Vec<usize>) -> Result<Self, PartitionError> {
        if elems.first() == Some(&0) || elems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PartitionError::BadIndexSet(elems));
        }
        Ok(IndexSet(elems))
    }

    pub fn from_unsorted(mut elems: Vec<usize>) -> Result<Self, PartitionError> {
        elems.sort_unstable();
        IndexSet::new(elems)
    }

    pub fn elems(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// The reflected set `{g : ambient + 1 - g in self}`.
    pub fn reflect(&self, ambient: usize) -> IndexSet {
        IndexSet(self.0.iter().rev().map(|&g| ambient + 1 - g).collect())
    }
}

impl TryFrom<Vec<usize>> for IndexSet {
    type Error = PartitionError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        IndexSet::new(v)
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(s: IndexSet) -> Self {
        s.0
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for IndexSet {
    type Err = PartitionError;

    /// `{2,3,7,8}`; braces optional.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if inner.is_empty() {
            return Ok(IndexSet::default());
        }
        let elems = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Parse(s.to_string()))?;
        IndexSet::new(elems)
    }
}

#[macro_export]
macro_rules! iset {
    () => { $crate::partitions::IndexSet::default() };
    ($($x:expr),+ $(,)?) => {
        $crate::partitions::IndexSet::new(vec![$($x),+]).expect("index set literal")
    };
}

/// `{i_1 < ... < i_r} -> (i_r - r, ..., i_1 - 1)`.
pub fn partition_from_set(set: &IndexSet) -> Partition {
    let parts: Vec<usize> = set.0.iter().enumerate().rev().map(|(k, &i)| i - (k + 1)).collect();
    Partition::new(parts).expect("strictly increasing set gives a partition")
}

/// Inverse of [`partition_from_set`] for a given set size `r`.
pub fn set_from_partition(lambda: &Partition, r: usize) -> Result<IndexSet, PartitionError> {
    if r < lambda.len() {
        return Err(PartitionError::RTooSmall { r, len: lambda.len() });
    }
    let elems = (1..=r).map(|k| lambda[r - k] + k).collect();
    Ok(IndexSet(elems))
}

/// `tau(I, J) = {2i - 1 : i in I} ∪ {2j : j in J}`.
pub fn tau_sets(i: &IndexSet, j: &IndexSet) -> Result<IndexSet, PartitionError> {
    if i.len() != j.len() {
        return Err(PartitionError::SizeMismatch(i.len(), j.len()));
    }
    let mut elems: Vec<usize> = i.iter().map(|x| 2 * x - 1).chain(j.iter().map(|x| 2 * x)).collect();
    elems.sort_unstable();
    Ok(IndexSet(elems))
}

/// The partition of `tau(I, J)` where `I`, `J` encode `lambda`, `mu` at a common size.
pub fn tau_partitions(lambda: &Partition, mu: &Partition) -> Partition {
    tau_partitions_padded(lambda, mu, lambda.len().max(mu.len())).expect("r covers both lengths")
}

/// Same as [`tau_partitions`] but with an explicit set size `r`; the result
/// does not depend on `r`.
pub fn tau_partitions_padded(lambda: &Partition, mu: &Partition, r: usize) -> Result<Partition, PartitionError> {
    let i = set_from_partition(lambda, r)?;
    let j = set_from_partition(mu, r)?;
    Ok(partition_from_set(&tau_sets(&i, &j)?))
}

/// The 2-quotient `(lambda, mu)` with `tau_partitions(lambda, mu) == tau`.
pub fn two_quotient(tau: &Partition) -> Result<(Partition, Partition), PartitionError> {
    let r = tau.len().div_ceil(2);
    let set = set_from_partition(tau, 2 * r)?;
    let (odd, even): (Vec<usize>, Vec<usize>) = set.iter().partition(|x| x % 2 == 1);
    if odd.len() != even.len() {
        return Err(PartitionError::NotDominoDecomposable(tau.clone()));
    }
    let i = IndexSet(odd.iter().map(|x| x.div_ceil(2)).collect());
    let j = IndexSet(even.iter().map(|x| x / 2).collect());
    Ok((partition_from_set(&i), partition_from_set(&j)))
}

pub fn is_domino_decomposable(tau: &Partition) -> bool {
    two_quotient(tau).is_ok()
}

/// The `*` operation on a pair padded to `parts` entries:
///
/// `lambda*_k = lambda_k - k + #{l : mu_l - l >= lambda_k - k}`,
/// `mu*_l = mu_l - l + 1 + #{k : lambda_k - k > mu_l - l}`.
pub fn star_pair(lambda: &Partition, mu: &Partition, parts: usize) -> Result<(Partition, Partition), PartitionError> {
    let lam = shifted(&lambda.padded(parts)?);
    let m = shifted(&mu.padded(parts)?);
    let lam_star: Vec<i64> = lam.iter().map(|&x| x + m.iter().filter(|&&y| y >= x).count() as i64).collect();
    let mu_star: Vec<i64> = m.iter().map(|&y| y + 1 + lam.iter().filter(|&&x| x > y).count() as i64).collect();
    Ok((from_raw(&lam_star)?, from_raw(&mu_star)?))
}

// lambda_k - k with 1-based k
fn shifted(parts: &[usize]) -> Vec<i64> {
    parts.iter().enumerate().map(|(k, &x)| x as i64 - (k as i64 + 1)).collect()
}

fn from_raw(v: &[i64]) -> Result<Partition, PartitionError> {
    if v.iter().any(|&x| x < 0) {
        return Err(PartitionError::NotSorted);
    }
    Partition::new(v.iter().map(|&x| x as usize).collect())
}

/// Set form of the `*` operation:
///
/// `I* = {i + #{i' in I : i' < i} - #{j in J : j < i}}`,
/// `J* = {j + #{j' in J : j' <= j} - #{i in I : i <= j}}`.
pub fn star_sets(i: &IndexSet, j: &IndexSet) -> Result<(IndexSet, IndexSet), PartitionError> {
    if i.len() != j.len() {
        return Err(PartitionError::SizeMismatch(i.len(), j.len()));
    }
    let count = |set: &IndexSet, pred: &dyn Fn(usize) -> bool| set.iter().filter(|&x| pred(x)).count() as i64;
    let istar: Vec<i64> = i.iter().map(|x| x as i64 + count(i, &|y| y < x) - count(j, &|y| y < x)).collect();
    let jstar: Vec<i64> = j.iter().map(|x| x as i64 + count(j, &|y| y <= x) - count(i, &|y| y <= x)).collect();
    let to_set = |v: Vec<i64>| {
        if v.iter().any(|&x| x < 1) {
            return Err(PartitionError::BadIndexSet(Vec::new()));
        }
        IndexSet::from_unsorted(v.into_iter().map(|x| x as usize).collect())
    };
    Ok((to_set(istar)?, to_set(jstar)?))
}

/// Splits a weakly decreasing sequence of even length into its odd-indexed
/// and even-indexed entries (1-based).
pub fn interlace_split<T: PartialOrd + Clone>(gamma: &[T]) -> Result<(Vec<T>, Vec<T>), PartitionError> {
    if !gamma.len().is_multiple_of(2) {
        return Err(PartitionError::OddLength(gamma.len()));
    }
    if gamma.windows(2).any(|w| w[0] < w[1]) {
        return Err(PartitionError::NotSorted);
    }
    let first = gamma.iter().step_by(2).cloned().collect();
    let second = gamma.iter().skip(1).step_by(2).cloned().collect();
    Ok((first, second))
}

/// Complement of `nu` in the `p x q` box: `(q - nu_p, ..., q - nu_1)`.
pub fn complement(nu: &Partition, p: usize, q: usize) -> Result<Partition, PartitionError> {
    if !nu.fits_box(p, q) {
        return Err(PartitionError::DoesNotFitBox { nu: nu.clone(), p, q });
    }
    Partition::new((0..p).rev().map(|k| q - nu[k]).collect())
}

/// All partitions fitting in a `rows x cols` box, sorted.
pub fn partitions_in_box(rows: usize, cols: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        out.push(Partition(cur.clone()));
        if cur.len() == rows {
            return;
        }
        for x in 1..=max {
            cur.push(x);
            rec(rows, x, cur, out);
            cur.pop();
        }
    }
    rec(rows, cols, &mut cur, &mut out);
    out.sort();
    out
}

/// All partitions of `n`, sorted.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    partitions_of_bounded(n, n, n)
}

/// Partitions of `n` with at most `max_len` parts, each at most `max_part`.
pub fn partitions_of_bounded(n: usize, max_len: usize, max_part: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, len_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if len_left == 0 {
            return;
        }
        for x in (1..=max.min(rem)).rev() {
            cur.push(x);
            rec(rem - x, x, len_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_part, max_len, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All `r`-subsets of `{1..=n}` in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<IndexSet> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexSet>) {
        if cur.len() == r {
            out.push(IndexSet(cur.clone()));
            return;
        }
        for x in start..=n {
            if n - x + 1 < r - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= n {
        rec(1, n, r, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn set_partition_examples() {
        assert_eq!(partition_from_set(&iset![2, 4]), part![2, 1]);
        assert_eq!(partition_from_set(&iset![1, 2, 3]), part![]);
        assert_eq!(partition_from_set(&iset![2, 3, 7, 8]), part![4, 4, 1, 1]);
        assert_eq!(set_from_partition(&part![2, 1], 2).unwrap(), iset![2, 4]);
        assert_eq!(set_from_partition(&part![2, 1], 3).unwrap(), iset![1, 3, 5]);
        assert_eq!(set_from_partition(&part![], 3).unwrap(), iset![1, 2, 3]);
        assert_eq!(set_from_partition(&part![2, 1], 1), Err(PartitionError::RTooSmall { r: 1, len: 2 }));
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau_sets(&iset![2, 4], &iset![1, 4]).unwrap(), iset![2, 3, 7, 8]);
        assert_eq!(tau_sets(&iset![1], &iset![1]).unwrap(), iset![1, 2]);
        assert_eq!(tau_sets(&iset![1, 3, 5], &iset![1, 2, 5]).unwrap(), iset![1, 2, 4, 5, 9, 10]);
        assert!(matches!(tau_sets(&iset![1], &iset![1, 2]), Err(PartitionError::SizeMismatch(1, 2))));

        assert_eq!(tau_partitions(&part![2, 1], &part![2]), part![4, 4, 1, 1]);
        assert_eq!(tau_partitions(&part![3, 1], &part![3, 1]), part![6, 6, 2, 2]);
        assert_eq!(tau_partitions(&part![], &part![]), part![]);
    }

    #[test]
    fn two_quotient_examples() {
        assert_eq!(two_quotient(&part![4, 4, 1, 1]).unwrap(), (part![2, 1], part![2]));
        assert_eq!(two_quotient(&part![2, 2]).unwrap(), (part![1], part![1]));
        assert_eq!(two_quotient(&part![3, 2, 1]), Err(PartitionError::NotDominoDecomposable(part![3, 2, 1])));
        assert!(two_quotient(&part![1]).is_err());
        assert_eq!(two_quotient(&part![]).unwrap(), (part![], part![]));
    }

    #[test]
    fn star_examples() {
        assert_eq!(star_pair(&part![5, 5, 2, 2], &part![1, 1], 4).unwrap(), (part![4, 3, 1], part![3, 2, 2, 1]));
        assert_eq!(star_pair(&part![2, 1], &part![3, 1], 2).unwrap(), (part![2, 1], part![3, 1]));
        assert_eq!(star_pair(&part![1], &part![], 1).unwrap(), (part![], part![1]));
        assert_eq!(star_pair(&part![1, 1], &part![], 1), Err(PartitionError::PartsTooSmall { parts: 1, len: 2 }));
    }

    #[test]
    fn star_set_examples() {
        assert_eq!(star_sets(&iset![1], &iset![1]).unwrap(), (iset![1], iset![1]));
        assert_eq!(star_sets(&iset![2], &iset![1]).unwrap(), (iset![1], iset![2]));
        let i = set_from_partition(&part![5, 5, 2, 2], 4).unwrap();
        let j = set_from_partition(&part![1, 1], 4).unwrap();
        let (is, js) = star_sets(&i, &j).unwrap();
        assert_eq!(partition_from_set(&is), part![4, 3, 1]);
        assert_eq!(partition_from_set(&js), part![3, 2, 2, 1]);
    }

    #[test]
    fn interlace_examples() {
        assert_eq!(interlace_split(&[3, 2, 1, 0]).unwrap(), (vec![3, 1], vec![2, 0]));
        assert_eq!(interlace_split(&[7, 7, 7, 7]).unwrap(), (vec![7, 7], vec![7, 7]));
        assert_eq!(interlace_split(&[4, 3, 2, 1]).unwrap(), (vec![4, 2], vec![3, 1]));
        assert_eq!(interlace_split(&[3, 2, 1]), Err(PartitionError::OddLength(3)));
        assert_eq!(interlace_split(&[1, 2]), Err(PartitionError::NotSorted));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(&part![2, 1], 2, 3).unwrap(), part![2, 1]);
        assert_eq!(complement(&part![], 2, 2).unwrap(), part![2, 2]);
        assert_eq!(complement(&part![3, 3], 2, 3).unwrap(), part![]);
        assert!(matches!(complement(&part![4], 2, 3), Err(PartitionError::DoesNotFitBox { .. })));
        assert!(complement(&part![1, 1, 1], 2, 3).is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("4,4,1,1".parse::<Partition>().unwrap(), part![4, 4, 1, 1]);
        assert_eq!("-".parse::<Partition>().unwrap(), part![]);
        assert_eq!("3,0".parse::<Partition>().unwrap(), part![3]);
        assert!("1,2".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(part![].to_string(), "-");
        assert_eq!(part![10, 2].to_string(), "10,2");
        assert_eq!("{2,3,7,8}".parse::<IndexSet>().unwrap(), iset![2, 3, 7, 8]);
        assert_eq!(iset![2, 3, 7, 8].to_string(), "{2,3,7,8}");
        assert!("{2,2}".parse::<IndexSet>().is_err());
        assert!("{0,1}".parse::<IndexSet>().is_err());
    }

    #[test]
    fn enumerators() {
        assert_eq!(partitions_in_box(2, 2).len(), 6);
        assert_eq!(partitions_in_box(3, 3).len(), 20);
        assert_eq!(partitions_of(5).len(), 7);
        assert_eq!(partitions_of(0), vec![part![]]);
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![iset![]]);
        assert_eq!(part![3, 1].conjugate(), part![2, 1, 1]);
    }

    // tau via r and r + 1 agree, exhaustively in a 4x4 box
    #[test]
    fn tau_padding_invariance() {
        let all = partitions_in_box(4, 4);
        for l in &all {
            for m in &all {
                let r = l.len().max(m.len());
                let a = tau_partitions_padded(l, m, r).unwrap();
                let b = tau_partitions_padded(l, m, r + 1).unwrap();
                assert_eq!(a, b, "{l:?} {m:?}");
                assert_eq!(a.weight(), 2 * (l.weight() + m.weight()));
            }
        }
    }

    #[test]
    fn two_quotient_round_trips() {
        let all = partitions_in_box(3, 3);
        for l in &all {
            for m in &all {
                let t = tau_partitions(l, m);
                assert_eq!(two_quotient(&t).unwrap(), (l.clone(), m.clone()));
            }
        }
        for w in 0..=16 {
            for t in partitions_of(w) {
                if let Ok((l, m)) = two_quotient(&t) {
                    assert_eq!(tau_partitions(&l, &m), t);
                }
            }
        }
    }

    // independent check: a shape is domino-tileable iff the quotient test passes
    #[test]
    fn decomposability_matches_tiling_search() {
        fn tileable(shape: &[usize]) -> bool {
            let mut rows: Vec<Vec<bool>> = shape.iter().map(|&n| vec![false; n]).collect();
            fn go(rows: &mut Vec<Vec<bool>>) -> bool {
                let Some((r, c)) =
                    rows.iter().enumerate().find_map(|(r, row)| row.iter().position(|x| !x).map(|c| (r, c)))
                else {
                    return true;
                };
                rows[r][c] = true;
                if c + 1 < rows[r].len() && !rows[r][c + 1] {
                    rows[r][c + 1] = true;
                    if go(rows) {
                        return true;
                    }
                    rows[r][c + 1] = false;
                }
                if r + 1 < rows.len() && c < rows[r + 1].len() && !rows[r + 1][c] {
                    rows[r + 1][c] = true;
                    if go(rows) {
                        return true;
                    }
                    rows[r + 1][c] = false;
                }
                rows[r][c] = false;
                false
            }
            go(&mut rows)
        }
        for w in 0..=12 {
            for t in partitions_of(w) {
                assert_eq!(is_domino_decomposable(&t), tileable(t.parts()), "{t:?}");
            }
        }
    }

    #[test]
    fn star_properties_in_box() {
        let all = partitions_in_box(4, 4);
        for l in &all {
            for m in &all {
                let (ls, ms) = star_pair(l, m, 4).unwrap();
                assert_eq!(ls.weight() + ms.weight(), l.weight() + m.weight());
                assert!(ls.fits_box(4, 4) && ms.fits_box(4, 4), "{l:?} {m:?}");
                let lp = l.padded(4).unwrap();
                let mp = m.padded(4).unwrap();
                let interleaved: Vec<usize> = (0..4).flat_map(|k| [mp[k], lp[k]]).collect();
                let decreasing = interleaved.windows(2).all(|w| w[0] >= w[1]);
                assert_eq!((ls == *l && ms == *m), decreasing, "{l:?} {m:?}");

                let i = set_from_partition(l, 4).unwrap();
                let j = set_from_partition(m, 4).unwrap();
                let (is, js) = star_sets(&i, &j).unwrap();
                assert_eq!((partition_from_set(&is), partition_from_set(&js)), (ls, ms));
            }
        }
    }

    proptest! {
        #[test]
        fn set_partition_round_trip(parts in prop::collection::vec(0usize..6, 0..6), extra in 0usize..3) {
            let lambda = Partition::from_unsorted(parts);
            let r = lambda.len() + extra;
            let set = set_from_partition(&lambda, r).unwrap();
            prop_assert_eq!(set.len(), r);
            prop_assert_eq!(partition_from_set(&set), lambda);
        }

        #[test]
        fn complement_is_involution(parts in prop::collection::vec(0usize..5, 0..4)) {
            let nu = Partition::from_unsorted(parts);
            let c = complement(&nu, 4, 5).unwrap();
            prop_assert_eq!(complement(&c, 4, 5).unwrap(), nu);
        }
    }
}
