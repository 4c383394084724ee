//! Littlewood-Richardson coefficients and products of two Schur functions.
//!
//! Two independent routes are kept on purpose: [`lr_coefficient`] counts LR
//! fillings of a fixed skew shape cell by cell, while [`schur_product`] grows
//! the outer shape one horizontal strip (one label) at a time. Tests check
//! that they agree.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::partitions::Partition;

/// Expansion of `s_lambda * s_mu` in the Schur basis. Zero terms are absent
/// and iteration over `terms` is in increasing lexicographic order of `nu`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurExpansion {
    pub lambda: Partition,
    pub mu: Partition,
    pub terms: BTreeMap<Partition, u64>,
}

impl SchurExpansion {
    pub fn coefficient(&self, nu: &Partition) -> u64 {
        self.terms.get(nu).copied().unwrap_or(0)
    }

    /// Terms ordered the usual way for printing: decreasing lexicographic.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Partition, u64)> {
        self.terms.iter().rev().map(|(k, &v)| (k, v))
    }
}

/// `c^nu_{lambda mu}`: number of semistandard fillings of `nu / lambda` with
/// content `mu` whose reverse reading word is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    match Filler::new(lambda, mu, nu) {
        Some(mut f) => {
            f.run(false);
            f.count
        }
        None => 0,
    }
}

/// `lr_coefficient(..) > 0`, stopping at the first filling found.
pub fn lr_positive(lambda: &Partition, mu: &Partition, nu: &Partition) -> bool {
    match Filler::new(lambda, mu, nu) {
        Some(mut f) => {
            f.run(true);
            f.count > 0
        }
        None => false,
    }
}

struct Filler {
    // skew cells in reverse reading order: rows top to bottom, each right to left
    cells: Vec<(usize, usize)>,
    // filled[r][c], 0 = not part of the skew shape or not yet filled
    grid: Vec<Vec<u8>>,
    inner: Vec<usize>,
    content: Vec<usize>,
    used: Vec<usize>,
    count: u64,
}

impl Filler {
    fn new(lambda: &Partition, mu: &Partition, nu: &Partition) -> Option<Self> {
        if nu.weight() != lambda.weight() + mu.weight() || !nu.contains(lambda) || !nu.contains(mu) {
            return None;
        }
        let rows = nu.len();
        let inner: Vec<usize> = (0..rows).map(|r| lambda[r]).collect();
        let mut cells = Vec::with_capacity(mu.weight());
        for r in 0..rows {
            for c in (inner[r]..nu[r]).rev() {
                cells.push((r, c));
            }
        }
        Some(Filler {
            cells,
            grid: (0..rows).map(|r| vec![0; nu[r]]).collect(),
            inner,
            content: mu.parts().to_vec(),
            used: vec![0; mu.len()],
            count: 0,
        })
    }

    fn run(&mut self, stop_at_first: bool) {
        self.fill(0, stop_at_first);
    }

    fn fill(&mut self, idx: usize, stop: bool) {
        if idx == self.cells.len() {
            self.count = self.count.checked_add(1).expect("LR coefficient overflows u64");
            return;
        }
        let (r, c) = self.cells[idx];
        // weakly increasing along the row: bounded above by the right neighbour
        let hi = match self.grid[r].get(c + 1) {
            Some(&v) if v > 0 => v as usize,
            _ => self.content.len(),
        }
        // a label in row r of an LR tableau never exceeds r + 1
        .min(r + 1);
        // strictly increasing down the column
        let lo = if r > 0 && c >= self.inner[r - 1] { self.grid[r - 1][c] as usize + 1 } else { 1 };
        for k in lo..=hi {
            let i = k - 1;
            if self.used[i] == self.content[i] {
                continue;
            }
            if i > 0 && self.used[i] + 1 > self.used[i - 1] {
                continue;
            }
            self.used[i] += 1;
            self.grid[r][c] = k as u8;
            self.fill(idx + 1, stop);
            self.grid[r][c] = 0;
            self.used[i] -= 1;
            if stop && self.count > 0 {
                return;
            }
        }
    }
}

/// Full expansion of `s_lambda * s_mu`.
pub fn schur_product(lambda: &Partition, mu: &Partition) -> SchurExpansion {
    expand(lambda, mu, usize::MAX, usize::MAX)
}

/// The part of `s_lambda * s_mu` supported on partitions inside the
/// `rows x cols` box. Shapes only grow while strips are added, so pruning
/// partial shapes at the box boundary loses nothing.
pub fn schur_product_in_box(lambda: &Partition, mu: &Partition, rows: usize, cols: usize) -> SchurExpansion {
    expand(lambda, mu, rows, cols)
}

fn expand(lambda: &Partition, mu: &Partition, rows: usize, cols: usize) -> SchurExpansion {
    let mut terms = BTreeMap::new();
    if lambda.fits_box(rows, cols) && mu.fits_box(rows, cols) {
        let bounds = Bounds { rows, cols };
        add_strips(lambda.parts(), mu.parts(), None, bounds, &mut terms);
    }
    SchurExpansion { lambda: lambda.clone(), mu: mu.clone(), terms }
}

#[derive(Clone, Copy)]
struct Bounds {
    rows: usize,
    cols: usize,
}

// Adds strips[0] cells as a horizontal strip, then recurses on the rest. With
// `prev` the per-row counts of the previous label, the lattice condition is
// `#(k+1 in rows <= i) <= #(k in rows < i)` for every row i.
fn add_strips(
    shape: &[usize],
    strips: &[usize],
    prev: Option<&[usize]>,
    bounds: Bounds,
    out: &mut BTreeMap<Partition, u64>,
) {
    let Some((&size, rest)) = strips.split_first() else {
        let nu = Partition::new(shape.to_vec()).expect("strip growth keeps shapes valid");
        let e = out.entry(nu).or_insert(0);
        *e = e.checked_add(1).expect("LR coefficient overflows u64");
        return;
    };
    let max_rows = (shape.len() + 1).min(bounds.rows);
    let mut counts = vec![0usize; max_rows];
    let mut emit = |counts: &[usize]| {
        let mut grown = shape.to_vec();
        grown.resize(max_rows, 0);
        for (g, &a) in grown.iter_mut().zip(counts) {
            *g += a;
        }
        while grown.last() == Some(&0) {
            grown.pop();
        }
        add_strips(&grown, rest, Some(counts), bounds, out);
    };
    let mut walk = StripWalk { shape, prev, cols: bounds.cols, counts: &mut counts, emit: &mut emit };
    walk.go(0, size, 0, 0);
}

struct StripWalk<'a> {
    shape: &'a [usize],
    prev: Option<&'a [usize]>,
    cols: usize,
    counts: &'a mut Vec<usize>,
    emit: &'a mut dyn FnMut(&[usize]),
}

impl StripWalk<'_> {
    // placed: cells of this strip in rows above `row`; prev_above: same for the previous label
    fn go(&mut self, row: usize, remaining: usize, placed: usize, prev_above: usize) {
        if remaining == 0 {
            for c in self.counts[row..].iter_mut() {
                *c = 0;
            }
            (self.emit)(self.counts);
            return;
        }
        if row >= self.counts.len() {
            return;
        }
        let cur = self.shape.get(row).copied().unwrap_or(0);
        let mut max = remaining.min(self.cols - cur);
        if row > 0 {
            max = max.min(self.shape[row - 1] - cur);
        }
        if self.prev.is_some() {
            max = max.min(prev_above - placed);
        }
        let prev_here = self.prev.map_or(0, |p| p.get(row).copied().unwrap_or(0));
        for a in (0..=max).rev() {
            self.counts[row] = a;
            self.go(row + 1, remaining - a, placed + a, prev_above + prev_here);
        }
        self.counts[row] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::partitions::{partitions_in_box, partitions_of};

    fn expansion(pairs: &[(Partition, u64)]) -> BTreeMap<Partition, u64> {
        pairs.iter().cloned().collect()
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(lr_coefficient(&part![2, 1], &part![2], &part![3, 2]), 1);
        assert_eq!(lr_coefficient(&part![2, 1], &part![2, 1], &part![3, 2, 1]), 2);
        assert_eq!(lr_coefficient(&part![3, 1], &part![], &part![3, 1]), 1);
        assert_eq!(lr_coefficient(&part![3, 1], &part![], &part![4]), 0);
        assert_eq!(lr_coefficient(&part![1], &part![1], &part![3]), 0);
        assert!(lr_positive(&part![2, 1], &part![2], &part![3, 2]));
        assert!(!lr_positive(&part![1], &part![1], &part![3]));
        assert!(lr_positive(&part![2], &part![2], &part![2, 2]));
    }

    #[test]
    fn product_examples() {
        assert_eq!(
            schur_product(&part![3, 1], &part![2]).terms,
            expansion(&[
                (part![5, 1], 1),
                (part![4, 2], 1),
                (part![3, 3], 1),
                (part![4, 1, 1], 1),
                (part![3, 2, 1], 1),
            ])
        );
        assert_eq!(
            schur_product(&part![3, 2], &part![1]).terms,
            expansion(&[(part![4, 2], 1), (part![3, 3], 1), (part![3, 2, 1], 1)])
        );
        assert_eq!(
            schur_product(&part![3], &part![2, 1]).terms,
            expansion(&[(part![5, 1], 1), (part![4, 2], 1), (part![4, 1, 1], 1), (part![3, 2, 1], 1)])
        );
        assert_eq!(
            schur_product(&part![2, 1], &part![2]).terms,
            expansion(&[(part![4, 1], 1), (part![3, 2], 1), (part![3, 1, 1], 1), (part![2, 2, 1], 1)])
        );
        assert_eq!(schur_product(&part![], &part![2, 2]).terms, expansion(&[(part![2, 2], 1)]));
        assert_eq!(schur_product(&part![], &part![]).terms, expansion(&[(part![], 1)]));
    }

    #[test]
    fn boxed_product_is_restriction() {
        let full = schur_product(&part![2, 1], &part![2, 1]);
        let boxed = schur_product_in_box(&part![2, 1], &part![2, 1], 3, 3);
        let restricted: BTreeMap<_, _> = full.terms.into_iter().filter(|(nu, _)| nu.fits_box(3, 3)).collect();
        assert_eq!(boxed.terms, restricted);
        assert!(schur_product_in_box(&part![4], &part![], 2, 3).terms.is_empty());
    }

    // both routes agree, products commute, every term has the right weight
    #[test]
    fn routes_agree_in_box() {
        let all = partitions_in_box(3, 3);
        for l in &all {
            for m in &all {
                let e = schur_product(l, m);
                assert_eq!(e.terms, schur_product(m, l).terms, "{l:?} {m:?}");
                for (nu, &c) in &e.terms {
                    assert_eq!(nu.weight(), l.weight() + m.weight());
                    assert!(nu.contains(l) && nu.contains(m));
                    assert_eq!(lr_coefficient(l, m, nu), c, "{l:?} {m:?} {nu:?}");
                }
                for nu in partitions_of(l.weight() + m.weight()) {
                    if !e.terms.contains_key(&nu) {
                        assert_eq!(lr_coefficient(l, m, &nu), 0, "{l:?} {m:?} {nu:?}");
                    }
                    assert_eq!(lr_positive(l, m, &nu), e.terms.contains_key(&nu));
                }
            }
        }
    }

    // Pieri: multiplying by s_(k) adds a horizontal strip of size k in every possible way
    #[test]
    fn pieri_rule() {
        fn horizontal_strips(l: &Partition, k: usize) -> Vec<Partition> {
            partitions_of(l.weight() + k)
                .into_iter()
                .filter(|nu| nu.contains(l) && (0..nu.len()).all(|i| i == 0 || nu[i] <= l[i - 1]))
                .collect()
        }
        for l in partitions_in_box(3, 3) {
            for k in 0..=4 {
                let e = schur_product(&l, &Partition::new(vec![k]).unwrap());
                assert!(e.terms.values().all(|&c| c == 1));
                let support: Vec<_> = e.terms.keys().cloned().collect();
                assert_eq!(support, horizontal_strips(&l, k), "{l:?} {k}");
            }
        }
    }

    #[test]
    fn product_dimension_check() {
        // number of SYT: f^lambda f^mu binom(|l|+|m|, |l|) = sum c f^nu
        fn syt(p: &Partition) -> u128 {
            let n = p.weight();
            let conj = p.conjugate();
            let mut hooks: u128 = 1;
            for r in 0..p.len() {
                for c in 0..p[r] {
                    hooks *= (p[r] - c + conj[c] - r - 1) as u128;
                }
            }
            (1..=n as u128).product::<u128>() / hooks
        }
        fn binom(n: u128, k: u128) -> u128 {
            (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
        }
        for l in partitions_in_box(3, 3) {
            for m in partitions_in_box(2, 3) {
                let e = schur_product(&l, &m);
                let lhs = syt(&l) * syt(&m) * binom((l.weight() + m.weight()) as u128, l.weight() as u128);
                let rhs: u128 = e.terms.iter().map(|(nu, &c)| c as u128 * syt(nu)).sum();
                assert_eq!(lhs, rhs, "{l:?} {m:?}");
            }
        }
    }
}
