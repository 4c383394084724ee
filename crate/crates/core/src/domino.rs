//! Semistandard domino tableaux, reading words, Yamanouchi tableaux, the
//! domino rule for LR coefficients, and the dilation map `T -> T'`.
//!
//! Coordinates are 1-based `(row, col)` in English orientation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::{tau_partitions, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DominoError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dilated tableau failed validation: {0}")]
    DilationInvariant(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Horizontal,
    Vertical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Domino {
    pub row: usize,
    pub col: usize,
    pub orientation: Orientation,
    pub label: usize,
}

impl Domino {
    pub fn horizontal(row: usize, col: usize, label: usize) -> Self {
        Domino { row, col, orientation: Orientation::Horizontal, label }
    }

    pub fn vertical(row: usize, col: usize, label: usize) -> Self {
        Domino { row, col, orientation: Orientation::Vertical, label }
    }

    pub fn cells(&self) -> [(usize, usize); 2] {
        match self.orientation {
            Orientation::Horizontal => [(self.row, self.col), (self.row, self.col + 1)],
            Orientation::Vertical => [(self.row, self.col), (self.row + 1, self.col)],
        }
    }
}

type Grid = Vec<Vec<Option<(usize, usize)>>>;

/// A domino tableau; dominoes are kept sorted by anchor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DominoTableau {
    pub shape: Partition,
    pub dominoes: Vec<Domino>,
}

impl DominoTableau {
    pub fn new(shape: Partition, mut dominoes: Vec<Domino>) -> Self {
        dominoes.sort();
        DominoTableau { shape, dominoes }
    }

    /// Number of dominoes with each label, indexed from label 1.
    pub fn content(&self) -> Vec<usize> {
        let max = self.dominoes.iter().map(|d| d.label).max().unwrap_or(0);
        let mut v = vec![0; max];
        for d in &self.dominoes {
            v[d.label - 1] += 1;
        }
        v
    }

    /// The content as a partition, if it is weakly decreasing.
    pub fn weight(&self) -> Option<Partition> {
        Partition::new(self.content()).ok()
    }

    // per-cell (label, domino index), None outside the tiling; None overall if not an exact tiling
    fn cell_grid(&self) -> Option<Grid> {
        let shape = &self.shape;
        let mut grid: Grid = (0..shape.len()).map(|r| vec![None; shape[r]]).collect();
        for (idx, d) in self.dominoes.iter().enumerate() {
            if d.row == 0 || d.col == 0 || d.label == 0 {
                return None;
            }
            for (r, c) in d.cells() {
                let slot = grid.get_mut(r - 1)?.get_mut(c - 1)?;
                if slot.is_some() {
                    return None;
                }
                *slot = Some((d.label, idx));
            }
        }
        grid.iter().all(|row| row.iter().all(Option::is_some)).then_some(grid)
    }

    /// Renders the tableau as text: labels per cell, `-` joining the halves of
    /// a horizontal domino and `|` under the top half of a vertical one.
    pub fn render(&self) -> String {
        let Some(grid) = self.cell_grid() else {
            return String::from("<invalid tiling>\n");
        };
        let width = self.dominoes.iter().map(|d| d.label.to_string().len()).max().unwrap_or(1);
        let mut out = String::new();
        for (r, row) in grid.iter().enumerate() {
            let mut line = String::new();
            let mut below = String::new();
            for (c, cell) in row.iter().enumerate() {
                let (label, idx) = cell.expect("complete tiling");
                let d = &self.dominoes[idx];
                let _ = write!(line, "{label:>width$}");
                let top_of_vertical = d.orientation == Orientation::Vertical && d.row == r + 1;
                let _ = write!(below, "{:>width$}", if top_of_vertical { "|" } else { " " });
                if c + 1 < row.len() {
                    let joined = d.orientation == Orientation::Horizontal && d.col == c + 1;
                    line.push(if joined { '-' } else { ' ' });
                    below.push(' ');
                }
            }
            out.push_str(&line);
            out.push('\n');
            let below = below.trim_end();
            if r + 1 < grid.len() && !below.is_empty() {
                out.push_str(below);
                out.push('\n');
            }
        }
        out
    }

    /// `(row,col,h|v,label)` triples.
    pub fn triples(&self) -> String {
        let parts: Vec<String> = self
            .dominoes
            .iter()
            .map(|d| {
                let o = match d.orientation {
                    Orientation::Horizontal => 'h',
                    Orientation::Vertical => 'v',
                };
                format!("({},{},{},{})", d.row, d.col, o, d.label)
            })
            .collect();
        parts.join(" ")
    }
}

/// Checks the tiling and the semistandard conditions on the per-cell labels.
pub fn is_valid_domino_tableau(t: &DominoTableau) -> bool {
    let Some(grid) = t.cell_grid() else {
        return false;
    };
    for r in 0..grid.len() {
        for c in 0..grid[r].len() {
            let (label, idx) = grid[r][c].expect("complete tiling");
            if c > 0 && grid[r][c - 1].expect("complete tiling").0 > label {
                return false;
            }
            if r > 0 {
                let (above, above_idx) = grid[r - 1][c].expect("complete tiling");
                if above_idx != idx && above >= label {
                    return false;
                }
            }
        }
    }
    true
}

/// Columns right to left, each top down. A vertical domino is read once; a
/// horizontal domino is skipped in its right column and read in its left one.
pub fn reading_word(t: &DominoTableau) -> Vec<usize> {
    let width = t.shape[0];
    let mut by_cell: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for d in &t.dominoes {
        by_cell.insert((d.row, d.col), d.label);
    }
    let mut word = Vec::with_capacity(t.dominoes.len());
    for c in (1..=width).rev() {
        let height = t.shape.conjugate()[c - 1];
        for r in 1..=height {
            if let Some(&label) = by_cell.get(&(r, c)) {
                word.push(label);
            }
        }
    }
    word
}

/// Every prefix has at least as many `i` as `i + 1`, for every `i`.
pub fn is_yamanouchi(word: &[usize]) -> bool {
    let mut counts: Vec<usize> = Vec::new();
    for &x in word {
        if x == 0 {
            return false;
        }
        if counts.len() < x {
            counts.resize(x, 0);
        }
        counts[x - 1] += 1;
        if x > 1 && counts[x - 1] > counts[x - 2] {
            return false;
        }
    }
    true
}

pub fn is_valid_ydt(t: &DominoTableau) -> bool {
    is_valid_domino_tableau(t) && is_yamanouchi(&reading_word(t))
}

/// Every semistandard domino tableau of `shape`, optionally of a fixed
/// weight, sorted. Labels range over `1..=|shape|/2`, or `1..=len(weight)`.
pub fn enumerate_domino_tableaux(shape: &Partition, weight: Option<&Partition>) -> Vec<DominoTableau> {
    let cells = shape.weight();
    if !cells.is_multiple_of(2) {
        return Vec::new();
    }
    if let Some(w) = weight {
        if 2 * w.weight() != cells {
            return Vec::new();
        }
    }
    let max_label = weight.map_or(cells / 2, |w| w.len());
    let target: Vec<usize> = match weight {
        Some(w) => w.parts().to_vec(),
        None => vec![usize::MAX; max_label],
    };
    let mut search = Search::new(shape, target);
    search.row_major(max_label);
    search.finish()
}

/// Every Yamanouchi domino tableau of `shape`, optionally of a fixed weight,
/// sorted. Built in reading order so the lattice condition prunes as it goes.
pub fn enumerate_ydt(shape: &Partition, weight: Option<&Partition>) -> Vec<DominoTableau> {
    let cells = shape.weight();
    if !cells.is_multiple_of(2) {
        return Vec::new();
    }
    if let Some(w) = weight {
        if 2 * w.weight() != cells {
            return Vec::new();
        }
    }
    let max_label = weight.map_or(cells / 2, |w| w.len());
    let target: Vec<usize> = match weight {
        Some(w) => w.parts().to_vec(),
        None => vec![usize::MAX; max_label],
    };
    let mut search = Search::new(shape, target);
    search.reading_order(max_label);
    search.finish()
}

/// Number of Yamanouchi domino tableaux of shape `tau(lambda, mu)` and weight `nu`.
pub fn cl_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    enumerate_ydt(&tau_partitions(lambda, mu), Some(nu)).len() as u64
}

/// All Yamanouchi domino tableaux of shape `tau(lambda, mu)` grouped by weight.
pub fn cl_expansion(lambda: &Partition, mu: &Partition) -> BTreeMap<Partition, u64> {
    let mut out = BTreeMap::new();
    for t in enumerate_ydt(&tau_partitions(lambda, mu), None) {
        let w = t.weight().expect("Yamanouchi content is a partition");
        *out.entry(w).or_insert(0) += 1;
    }
    out
}

struct Search {
    shape: Vec<usize>,
    // (label, domino id); id 0 = empty
    grid: Vec<Vec<(usize, usize)>>,
    placed: Vec<Domino>,
    target: Vec<usize>,
    used: Vec<usize>,
    // reading-order engine: emitted counts per label
    emitted: Vec<usize>,
    found: Vec<DominoTableau>,
}

impl Search {
    fn new(shape: &Partition, target: Vec<usize>) -> Self {
        let n = target.len();
        Search {
            shape: shape.parts().to_vec(),
            grid: shape.parts().iter().map(|&w| vec![(0, 0); w]).collect(),
            placed: Vec::new(),
            target,
            used: vec![0; n],
            emitted: vec![0; n],
            found: Vec::new(),
        }
    }

    fn finish(mut self) -> Vec<DominoTableau> {
        self.found.sort();
        self.found
    }

    fn in_shape(&self, r: usize, c: usize) -> bool {
        r < self.shape.len() && c < self.shape[r]
    }

    fn free(&self, r: usize, c: usize) -> bool {
        self.in_shape(r, c) && self.grid[r][c].1 == 0
    }

    // label range allowed for a domino on cells a, b (0-based) by already labelled neighbours
    fn label_range(&self, cells: [(usize, usize); 2], max_label: usize) -> (usize, usize) {
        let (mut lo, mut hi) = (1usize, max_label);
        for &(r, c) in &cells {
            let others = |rr: usize, cc: usize| !cells.contains(&(rr, cc));
            if c > 0 && others(r, c - 1) {
                let (l, id) = self.grid[r][c - 1];
                if id != 0 {
                    lo = lo.max(l);
                }
            }
            if self.in_shape(r, c + 1) && others(r, c + 1) {
                let (l, id) = self.grid[r][c + 1];
                if id != 0 {
                    hi = hi.min(l);
                }
            }
            if r > 0 && others(r - 1, c) {
                let (l, id) = self.grid[r - 1][c];
                if id != 0 {
                    lo = lo.max(l + 1);
                }
            }
            if self.in_shape(r + 1, c) && others(r + 1, c) {
                let (l, id) = self.grid[r + 1][c];
                if id != 0 {
                    hi = hi.min(l - 1);
                }
            }
        }
        (lo, hi)
    }

    fn put(&mut self, d: Domino) {
        let id = self.placed.len() + 1;
        for (r, c) in d.cells() {
            self.grid[r - 1][c - 1] = (d.label, id);
        }
        self.used[d.label - 1] += 1;
        self.placed.push(d);
    }

    fn take(&mut self) {
        let d = self.placed.pop().expect("nonempty");
        for (r, c) in d.cells() {
            self.grid[r - 1][c - 1] = (0, 0);
        }
        self.used[d.label - 1] -= 1;
    }

    fn record(&mut self) {
        if self.target.iter().all(|&t| t == usize::MAX) || self.used == self.target {
            let shape = Partition::new(self.shape.clone()).expect("shape");
            self.found.push(DominoTableau::new(shape, self.placed.clone()));
        }
    }

    fn row_major(&mut self, max_label: usize) {
        let next =
            (0..self.shape.len()).find_map(|r| (0..self.shape[r]).find(|&c| self.grid[r][c].1 == 0).map(|c| (r, c)));
        let Some((r, c)) = next else {
            self.record();
            return;
        };
        for orientation in [Orientation::Horizontal, Orientation::Vertical] {
            let other = match orientation {
                Orientation::Horizontal => (r, c + 1),
                Orientation::Vertical => (r + 1, c),
            };
            if !self.free(other.0, other.1) {
                continue;
            }
            let (lo, hi) = self.label_range([(r, c), other], max_label);
            for label in lo..=hi {
                if self.used[label - 1] == self.target[label - 1] {
                    continue;
                }
                self.put(Domino { row: r + 1, col: c + 1, orientation, label });
                self.row_major(max_label);
                self.take();
            }
        }
    }

    fn reading_order(&mut self, max_label: usize) {
        let width = self.shape.first().copied().unwrap_or(0);
        let height = |c: usize| self.shape.iter().take_while(|&&w| w > c).count();
        let order: Vec<(usize, usize)> = (0..width).rev().flat_map(|c| (0..height(c)).map(move |r| (r, c))).collect();
        self.scan(&order, 0, max_label);
    }

    fn emit_ok(&self, label: usize) -> bool {
        label == 1 || self.emitted[label - 1] < self.emitted[label - 2]
    }

    fn scan(&mut self, order: &[(usize, usize)], pos: usize, max_label: usize) {
        let Some(&(r, c)) = order.get(pos) else {
            self.record();
            return;
        };
        let (label, id) = self.grid[r][c];
        if id != 0 {
            let d = self.placed[id - 1];
            // a covered cell is read only as the left half of a horizontal domino
            if d.orientation == Orientation::Horizontal && d.col == c + 1 {
                if !self.emit_ok(label) {
                    return;
                }
                self.emitted[label - 1] += 1;
                self.scan(order, pos + 1, max_label);
                self.emitted[label - 1] -= 1;
            } else {
                self.scan(order, pos + 1, max_label);
            }
            return;
        }
        // vertical, read now
        if self.free(r + 1, c) {
            let (lo, hi) = self.label_range([(r, c), (r + 1, c)], max_label);
            for label in lo..=hi {
                if self.used[label - 1] == self.target[label - 1] || !self.emit_ok(label) {
                    continue;
                }
                self.put(Domino::vertical(r + 1, c + 1, label));
                self.emitted[label - 1] += 1;
                self.scan(order, pos + 1, max_label);
                self.emitted[label - 1] -= 1;
                self.take();
            }
        }
        // horizontal extending left, read when its left column is scanned
        if c > 0 && self.free(r, c - 1) {
            let (lo, hi) = self.label_range([(r, c - 1), (r, c)], max_label);
            for label in lo..=hi {
                if self.used[label - 1] == self.target[label - 1] {
                    continue;
                }
                self.put(Domino::horizontal(r + 1, c, label));
                self.scan(order, pos + 1, max_label);
                self.take();
            }
        }
    }
}

/// Chops every domino into four: a label-`k` domino becomes two dominoes of
/// the same orientation labelled `2k - 1` over two labelled `2k`. Shape `rho`
/// goes to `tau(rho, rho)` and weight `nu` to `tau(nu, nu)`.
pub fn dilate_tableau(t: &DominoTableau) -> Result<DominoTableau, DominoError> {
    if !is_valid_ydt(t) {
        return Err(DominoError::InvalidInput("not a Yamanouchi domino tableau".into()));
    }
    let mut out = Vec::with_capacity(4 * t.dominoes.len());
    for d in &t.dominoes {
        let (r, c, k) = (2 * d.row - 1, 2 * d.col - 1, d.label);
        match d.orientation {
            Orientation::Horizontal => {
                out.push(Domino::horizontal(r, c, 2 * k - 1));
                out.push(Domino::horizontal(r, c + 2, 2 * k - 1));
                out.push(Domino::horizontal(r + 1, c, 2 * k));
                out.push(Domino::horizontal(r + 1, c + 2, 2 * k));
            }
            Orientation::Vertical => {
                out.push(Domino::vertical(r, c, 2 * k - 1));
                out.push(Domino::vertical(r, c + 1, 2 * k - 1));
                out.push(Domino::vertical(r + 2, c, 2 * k));
                out.push(Domino::vertical(r + 2, c + 1, 2 * k));
            }
        }
    }
    let shape = tau_partitions(&t.shape, &t.shape);
    let dilated = DominoTableau::new(shape, out);
    if !is_valid_ydt(&dilated) {
        return Err(DominoError::DilationInvariant(dilated.triples()));
    }
    let w = t.weight().expect("Yamanouchi content is a partition");
    if dilated.weight() != Some(tau_partitions(&w, &w)) {
        return Err(DominoError::DilationInvariant("weight".into()));
    }
    Ok(dilated)
}
