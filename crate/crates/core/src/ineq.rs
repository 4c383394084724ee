//! Linear inequalities over named spectral variables, evaluated either exactly
//! (`BigRational`) or in floating point with an additive tolerance.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VarKind {
    S,
    T,
    Gamma,
    Lambda,
    A,
    B,
    C,
    Sigma,
}

/// A 1-based indexed variable such as `s_2` or `gamma_3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Var(pub VarKind, pub usize);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.0 {
            VarKind::S => "s",
            VarKind::T => "t",
            VarKind::Gamma => "gamma",
            VarKind::Lambda => "lambda",
            VarKind::A => "a",
            VarKind::B => "b",
            VarKind::C => "c",
            VarKind::Sigma => "sigma",
        };
        write!(f, "{name}_{}", self.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Eq,
}

pub type LinearForm = BTreeMap<Var, Ratio<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearInequality {
    pub lhs: LinearForm,
    pub rhs: LinearForm,
    pub relation: Relation,
    /// Which family and which index triple produced this row.
    pub provenance: String,
}

/// Adds `coeff * var` to a form, dropping terms that cancel.
pub fn add_term(form: &mut LinearForm, var: Var, coeff: i64) {
    let e = form.entry(var).or_insert_with(Ratio::zero);
    *e += Ratio::from_integer(coeff);
    if e.is_zero() {
        form.remove(&var);
    }
}

impl LinearInequality {
    pub fn le(lhs: LinearForm, rhs: LinearForm, provenance: impl Into<String>) -> Self {
        LinearInequality { lhs, rhs, relation: Relation::Le, provenance: provenance.into() }
    }

    pub fn eq(lhs: LinearForm, rhs: LinearForm, provenance: impl Into<String>) -> Self {
        LinearInequality { lhs, rhs, relation: Relation::Eq, provenance: provenance.into() }
    }

    pub fn evaluate<S: Scalar>(&self, env: &impl Fn(Var) -> S) -> (S, S) {
        (eval_form(&self.lhs, env), eval_form(&self.rhs, env))
    }
}

fn eval_form<S: Scalar>(form: &LinearForm, env: &impl Fn(Var) -> S) -> S {
    form.iter().fold(S::zero(), |acc, (v, c)| acc + S::from_ratio(c) * env(*v))
}

fn fmt_form(form: &LinearForm) -> String {
    if form.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (v, c)) in form.iter().enumerate() {
        let neg = c < &Ratio::zero();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != Ratio::from_integer(1) {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&v.to_string());
    }
    out
}

impl fmt::Display for LinearInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::Le => "<=",
            Relation::Eq => "=",
        };
        write!(f, "{} {rel} {}", fmt_form(&self.lhs), fmt_form(&self.rhs))
    }
}

/// Numbers the checkers can run on. Exact types ignore the tolerance.
pub trait Scalar:
    Clone + PartialOrd + fmt::Display + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
    fn from_ratio(r: &Ratio<i64>) -> Self;
    fn from_i64(x: i64) -> Self {
        Self::from_ratio(&Ratio::from_integer(x))
    }
    fn to_f64(&self) -> f64;
    fn le_tol(lhs: &Self, rhs: &Self, tol: f64) -> bool;
    fn eq_tol(lhs: &Self, rhs: &Self, tol: f64) -> bool;
}

impl Scalar for BigRational {
    fn from_ratio(r: &Ratio<i64>) -> Self {
        BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn le_tol(lhs: &Self, rhs: &Self, _tol: f64) -> bool {
        lhs <= rhs
    }
    fn eq_tol(lhs: &Self, rhs: &Self, _tol: f64) -> bool {
        lhs == rhs
    }
}

impl Scalar for f64 {
    fn from_ratio(r: &Ratio<i64>) -> Self {
        *r.numer() as f64 / *r.denom() as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn le_tol(lhs: &Self, rhs: &Self, tol: f64) -> bool {
        *lhs <= *rhs + tol
    }
    fn eq_tol(lhs: &Self, rhs: &Self, tol: f64) -> bool {
        (*lhs - *rhs).abs() <= tol
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub provenance: String,
    pub inequality: String,
    pub lhs: String,
    pub rhs: String,
    /// `rhs - lhs` for `<=` rows, `-|rhs - lhs|` for equalities.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub holds: bool,
    pub checked: usize,
    pub violations: Vec<Violation>,
    /// Smallest margin over all rows; `None` when nothing was checked.
    pub min_margin: Option<f64>,
}

impl Report {
    pub fn empty() -> Self {
        Report { holds: true, checked: 0, violations: Vec::new(), min_margin: None }
    }

    pub fn merge(mut self, other: Report) -> Report {
        self.holds &= other.holds;
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self.min_margin = match (self.min_margin, other.min_margin) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Evaluates every row and collects the failures.
pub fn check_all<S: Scalar>(rows: &[LinearInequality], env: &impl Fn(Var) -> S, tol: f64) -> Report {
    let mut report = Report::empty();
    for row in rows {
        let (l, r) = row.evaluate(env);
        let diff = (r.clone() - l.clone()).to_f64();
        let (ok, margin) = match row.relation {
            Relation::Le => (S::le_tol(&l, &r, tol), diff),
            Relation::Eq => (S::eq_tol(&l, &r, tol), -diff.abs()),
        };
        report.checked += 1;
        report.min_margin = Some(report.min_margin.map_or(margin, |m: f64| m.min(margin)));
        if !ok {
            report.holds = false;
            report.violations.push(Violation {
                provenance: row.provenance.clone(),
                inequality: row.to_string(),
                lhs: l.to_string(),
                rhs: r.to_string(),
                margin,
            });
        }
    }
    report
}

/// Parses `3`, `-2`, `1.25`, `7/3` exactly.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let int_abs = int.trim_start_matches(['-', '+']);
        let int_part = if int_abs.is_empty() { BigInt::zero() } else { BigInt::from_str(int_abs).ok()? };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let mut numer = int_part * &scale + BigInt::from_str(frac).ok()?;
        if neg {
            numer = -numer;
        }
        return Some(BigRational::new(numer, scale));
    }
    BigInt::from_str(s).ok().map(BigRational::from_integer)
}

/// Comma-separated exact numbers; `-` alone is the empty list.
pub fn parse_rationals(s: &str) -> Option<Vec<BigRational>> {
    let s = s.trim();
    if s.is_empty() || s == "-" {
        return Some(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rats(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn to_f64s<S: Scalar>(v: &[S]) -> Vec<f64> {
    v.iter().map(Scalar::to_f64).collect()
}

pub(crate) fn is_weakly_decreasing<S: PartialOrd>(v: &[S]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}
