//! Small dense real matrices: symmetric eigenvalues by cyclic Jacobi, singular
//! values through the symmetric embedding `[[0, M], [M^T, 0]]`, random
//! matrices with a planted spectrum, and seeded sampling harnesses that feed
//! measured spectra into the inequality checkers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::horn::{check_offdiag, check_sv, combined_spectrum_cone, merged_desc, HornError};
use crate::ineq::Report;

pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error("Jacobi iteration did not converge in {0} sweeps")]
    NoConvergence(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("t = {0} must lie in [0, 1]")]
    BadT(f64),
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("cannot parse matrix: {0}")]
    Parse(String),
    #[error(transparent)]
    Horn(#[from] HornError),
}

/// Dense row-major real matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RectMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl RectMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RectMatrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, SpectraError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(SpectraError::DimensionMismatch("ragged rows".into()));
        }
        let m = RectMatrix { rows: rows.len(), cols, data: rows.concat() };
        if m.data.iter().any(|x| !x.is_finite()) {
            return Err(SpectraError::NonFinite);
        }
        Ok(m)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> RectMatrix {
        let mut t = RectMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn matmul(&self, other: &RectMatrix) -> Result<RectMatrix, SpectraError> {
        if self.cols != other.rows {
            return Err(SpectraError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RectMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// The `rows x cols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> RectMatrix {
        let mut b = RectMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                b.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        b
    }

    fn put_block(&mut self, r0: usize, c0: usize, b: &RectMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j));
            }
        }
    }

    pub fn max_abs_diff(&self, other: &RectMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// The symmetric matrix, if this one is exactly symmetric.
    pub fn to_sym(&self) -> Option<SymMatrix> {
        if self.rows != self.cols {
            return None;
        }
        (0..self.rows)
            .all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
            .then(|| SymMatrix { n: self.rows, data: self.data.clone() })
    }
}

impl FromStr for RectMatrix {
    type Err = SpectraError;

    /// One row per line, entries separated by whitespace; blank lines ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows: Vec<Vec<f64>> = s
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split_whitespace().map(|t| t.parse::<f64>().map_err(|_| SpectraError::Parse(t.to_string()))).collect()
            })
            .collect::<Result<_, _>>()?;
        RectMatrix::from_rows(&rows)
    }
}

impl fmt::Display for RectMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{:.12}", self.get(i, j))).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Dense symmetric matrix, stored in full.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymMatrix {
    pub n: usize,
    pub data: Vec<f64>,
}

impl SymMatrix {
    /// Symmetrizes `(M + M^T) / 2`.
    pub fn from_rect(m: &RectMatrix) -> Result<Self, SpectraError> {
        if m.rows != m.cols {
            return Err(SpectraError::DimensionMismatch(format!("{}x{} is not square", m.rows, m.cols)));
        }
        if m.data.iter().any(|x| !x.is_finite()) {
            return Err(SpectraError::NonFinite);
        }
        let n = m.rows;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = if i == j { m.get(i, i) } else { 0.5 * (m.get(i, j) + m.get(j, i)) };
            }
        }
        Ok(SymMatrix { n, data })
    }

    pub fn diag(d: &[f64]) -> Self {
        let n = d.len();
        let mut data = vec![0.0; n * n];
        for (i, &x) in d.iter().enumerate() {
            data[i * n + i] = x;
        }
        SymMatrix { n, data }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn as_rect(&self) -> RectMatrix {
        RectMatrix { rows: self.n, cols: self.n, data: self.data.clone() }
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix, SpectraError> {
        if self.n != other.n {
            return Err(SpectraError::DimensionMismatch(format!("{} vs {}", self.n, other.n)));
        }
        Ok(SymMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() })
    }

    fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Eigenvalues in decreasing order, by cyclic Jacobi rotations. Stops once
/// the off-diagonal Frobenius norm drops below `1e-14 * ||M||_F`.
pub fn eigenvalues_sym(m: &SymMatrix) -> Result<Vec<f64>, SpectraError> {
    if m.data.iter().any(|x| !x.is_finite()) {
        return Err(SpectraError::NonFinite);
    }
    let n = m.n;
    let mut a = m.data.clone();
    let norm = m.frobenius();
    let threshold = 1e-14 * norm;
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };
    let mut converged = norm == 0.0 || off(&a) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(SpectraError::NoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
        converged = off(&a) <= threshold;
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

/// Singular values in decreasing order (`min(rows, cols)` of them).
pub fn singular_values(m: &RectMatrix) -> Result<Vec<f64>, SpectraError> {
    let (r, c) = (m.rows, m.cols);
    let mut big = RectMatrix::zeros(r + c, r + c);
    big.put_block(0, r, m);
    big.put_block(r, 0, &m.transpose());
    let sym = SymMatrix::from_rect(&big)?;
    let eig = eigenvalues_sym(&sym)?;
    Ok(eig.into_iter().take(r.min(c)).map(|x| x.max(0.0)).collect())
}

/// Product of `n(n-1)/2` Givens rotations with uniform random angles.
pub fn random_orthogonal(n: usize, rng: &mut impl Rng) -> RectMatrix {
    let mut q = RectMatrix::zeros(n, n);
    for i in 0..n {
        q.set(i, i, 1.0);
    }
    for i in 0..n {
        for j in i + 1..n {
            let angle: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let (s, c) = angle.sin_cos();
            for k in 0..n {
                let (qi, qj) = (q.get(k, i), q.get(k, j));
                q.set(k, i, c * qi - s * qj);
                q.set(k, j, s * qi + c * qj);
            }
        }
    }
    q
}

/// `Q diag(d) Q^T` for a random orthogonal `Q`; a constant `d` gives `d_1 I` exactly.
pub fn random_with_spectrum_rng(d: &[f64], rng: &mut impl Rng) -> SymMatrix {
    if d.windows(2).all(|w| w[0] == w[1]) {
        return SymMatrix::diag(d);
    }
    let n = d.len();
    let q = random_orthogonal(n, rng);
    let mut qd = q.clone();
    for i in 0..n {
        for (j, &dj) in d.iter().enumerate() {
            qd.set(i, j, q.get(i, j) * dj);
        }
    }
    let m = qd.matmul(&q.transpose()).expect("square");
    SymMatrix::from_rect(&m).expect("finite square")
}

pub fn random_with_spectrum(d: &[f64], seed: u64) -> SymMatrix {
    random_with_spectrum_rng(d, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Symmetric matrix with independent uniform entries in `[-scale, scale]`.
pub fn random_symmetric(n: usize, scale: f64, rng: &mut impl Rng) -> SymMatrix {
    let mut m = RectMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = rng.random_range(-scale..=scale);
            m.set(i, j, x);
            m.set(j, i, x);
        }
    }
    SymMatrix::from_rect(&m).expect("finite square")
}

/// `[[P, X], [Y, Q]]` with `P` `p x p`, `X` `p x (n-p)`, `Y` `(n-p) x p`, `Q` `(n-p) x (n-p)`, `2p <= n`.
pub fn embed_blocks(
    p: &RectMatrix,
    x: &RectMatrix,
    y: &RectMatrix,
    q: &RectMatrix,
) -> Result<RectMatrix, SpectraError> {
    let pp = p.rows;
    let n = pp + q.rows;
    let ok = p.cols == pp
        && q.cols == q.rows
        && (x.rows, x.cols) == (pp, n - pp)
        && (y.rows, y.cols) == (n - pp, pp)
        && 2 * pp <= n;
    if !ok {
        return Err(SpectraError::DimensionMismatch(format!(
            "P {}x{}, X {}x{}, Y {}x{}, Q {}x{}",
            p.rows, p.cols, x.rows, x.cols, y.rows, y.cols, q.rows, q.cols
        )));
    }
    let mut z = RectMatrix::zeros(n, n);
    z.put_block(0, 0, p);
    z.put_block(0, pp, x);
    z.put_block(pp, 0, y);
    z.put_block(pp, pp, q);
    Ok(z)
}

/// `R diag(A, B) R^T` with `R = [[cI, -sI], [sI, cI]]`, `c = cos(theta)`,
/// `s = sin(theta)`, `sin(2 theta) = t`. The off-diagonal block is `(t/2)(A - B)`.
pub fn rotation_assembly(a: &SymMatrix, b: &SymMatrix, t: f64) -> Result<SymMatrix, SpectraError> {
    if !(0.0..=1.0).contains(&t) {
        return Err(SpectraError::BadT(t));
    }
    if a.n != b.n {
        return Err(SpectraError::DimensionMismatch(format!("{} vs {}", a.n, b.n)));
    }
    let p = a.n;
    let theta = 0.5 * t.asin();
    let (s, c) = theta.sin_cos();
    let mut r = RectMatrix::zeros(2 * p, 2 * p);
    for i in 0..p {
        r.set(i, i, c);
        r.set(i, p + i, -s);
        r.set(p + i, i, s);
        r.set(p + i, p + i, c);
    }
    let mut d = RectMatrix::zeros(2 * p, 2 * p);
    d.put_block(0, 0, &a.as_rect());
    d.put_block(p, p, &b.as_rect());
    let m = r.matmul(&d)?.matmul(&r.transpose())?;
    SymMatrix::from_rect(&m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleKind {
    /// Singular values of a symmetric `Z` against those of its off-diagonal block.
    SingularValues,
    /// Eigenvalues of a symmetric `Z` against singular values of its off-diagonal block.
    Offdiag,
    /// Eigenvalues of `A + B` against the interlacing Horn cone of the merged spectra.
    CombinedCone,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    /// Named spectra fed to the checker (`gamma`, `lambda`, `s`, `c`).
    pub spectra: BTreeMap<String, Vec<f64>>,
    pub min_margin: Option<f64>,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub kind: SampleKind,
    pub p: usize,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub tol: f64,
    /// Amount added to the checked spectrum to force violations (negative control).
    pub perturb: f64,
    pub violations: usize,
    pub min_margin: Option<f64>,
    pub records: Vec<TrialRecord>,
}

impl SpectralReport {
    /// Re-runs the checker on every recorded spectrum and confirms the stored
    /// margins and violation counts.
    pub fn reverify(&self) -> Result<bool, SpectraError> {
        for rec in &self.records {
            let rep = check_record(self.kind, &rec.spectra, self.tol)?;
            let same_margin = match (rep.min_margin, rec.min_margin) {
                (Some(a), Some(b)) => (a - b).abs() <= 1e-12 * (1.0 + a.abs()),
                (a, b) => a == b,
            };
            if !same_margin || rep.violations.len() != rec.violations {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_record(kind: SampleKind, spectra: &BTreeMap<String, Vec<f64>>, tol: f64) -> Result<Report, SpectraError> {
    let get = |k: &str| spectra.get(k).cloned().unwrap_or_default();
    Ok(match kind {
        SampleKind::SingularValues => check_sv(&get("gamma"), &get("s"), tol)?,
        SampleKind::Offdiag => check_offdiag(&get("lambda"), &get("s"), tol)?,
        SampleKind::CombinedCone => combined_spectrum_cone(&get("gamma"))?.contains(&get("c"), tol)?,
    })
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn validate_pn(p: usize, n: usize) -> Result<(), SpectraError> {
    if p == 0 || 2 * p > n || n > 8 {
        return Err(SpectraError::DimensionMismatch(format!("need 1 <= p, 2p <= n <= 8, got p = {p}, n = {n}")));
    }
    Ok(())
}

fn sample_one(
    kind: SampleKind,
    p: usize,
    n: usize,
    seed: u64,
    trial: u64,
    perturb: f64,
) -> Result<BTreeMap<String, Vec<f64>>, SpectraError> {
    let mut rng = trial_rng(seed, trial);
    let mut spectra = BTreeMap::new();
    match kind {
        SampleKind::SingularValues | SampleKind::Offdiag => {
            let z = random_symmetric(n, 1.0, &mut rng).as_rect();
            let x = z.block(0, p, p, n - p);
            let mut s = singular_values(&x)?;
            s.iter_mut().for_each(|v| *v += perturb);
            if kind == SampleKind::SingularValues {
                let gamma = singular_values(&z)?;
                spectra.insert("gamma".into(), gamma[..2 * p].to_vec());
            } else {
                let sym = SymMatrix::from_rect(&z)?;
                spectra.insert("lambda".into(), eigenvalues_sym(&sym)?);
            }
            spectra.insert("s".into(), s);
        }
        SampleKind::CombinedCone => {
            let spectrum = |rng: &mut ChaCha8Rng| -> Vec<f64> {
                let mut d: Vec<f64> = (0..p).map(|_| rng.random_range(-1.0..=1.0)).collect();
                d.sort_by(|x, y| y.total_cmp(x));
                d
            };
            let (da, db) = (spectrum(&mut rng), spectrum(&mut rng));
            let a = random_with_spectrum_rng(&da, &mut rng);
            let b = random_with_spectrum_rng(&db, &mut rng);
            let mut c = eigenvalues_sym(&a.add(&b)?)?;
            c[0] += perturb;
            if p > 1 {
                c[p - 1] -= perturb;
            }
            spectra.insert("gamma".into(), merged_desc(&da, &db));
            spectra.insert("c".into(), c);
        }
    }
    Ok(spectra)
}

/// Runs `trials` seeded trials in parallel; trial `i` uses stream `i` of the
/// generator seeded with `seed`, so results do not depend on the thread count.
pub fn sample_verify(
    kind: SampleKind,
    p: usize,
    n: usize,
    trials: u64,
    seed: u64,
    tol: f64,
    perturb: f64,
) -> Result<SpectralReport, SpectraError> {
    match kind {
        SampleKind::CombinedCone => {
            if p == 0 || p > 4 {
                return Err(SpectraError::DimensionMismatch(format!("need 1 <= p <= 4, got {p}")));
            }
        }
        _ => validate_pn(p, n)?,
    }
    let records: Vec<TrialRecord> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let spectra = sample_one(kind, p, n, seed, trial, perturb)?;
            let rep = check_record(kind, &spectra, tol)?;
            Ok(TrialRecord { trial, spectra, min_margin: rep.min_margin, violations: rep.violations.len() })
        })
        .collect::<Result<_, SpectraError>>()?;
    let violations = records.iter().filter(|r| r.violations > 0).count();
    let min_margin = records.iter().filter_map(|r| r.min_margin).reduce(f64::min);
    let n = if kind == SampleKind::CombinedCone { 2 * p } else { n };
    Ok(SpectralReport { kind, p, n, trials, seed, tol, perturb, violations, min_margin, records })
}

pub fn sample_verify_theorem1(
    p: usize,
    n: usize,
    trials: u64,
    seed: u64,
    tol: f64,
) -> Result<SpectralReport, SpectraError> {
    sample_verify(SampleKind::SingularValues, p, n, trials, seed, tol, 0.0)
}

pub fn sample_verify_offdiag(
    p: usize,
    n: usize,
    trials: u64,
    seed: u64,
    tol: f64,
) -> Result<SpectralReport, SpectraError> {
    sample_verify(SampleKind::Offdiag, p, n, trials, seed, tol, 0.0)
}

pub fn sample_verify_combined_cone(p: usize, trials: u64, seed: u64, tol: f64) -> Result<SpectralReport, SpectraError> {
    sample_verify(SampleKind::CombinedCone, p, 2 * p, trials, seed, tol, 0.0)
}
