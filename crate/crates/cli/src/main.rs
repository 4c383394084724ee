use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use lrhorn::conjectures::{
    star_orbit, verify_ffg_membership, verify_schur_domination, verify_schur_domination_sweep, verify_star_conjecture,
    verify_star_pair, verify_tau_domination, ConjectureError, SweepOptions, SweepReport, SweepStatus,
};
use lrhorn::domino::{cl_coefficient, enumerate_domino_tableaux, enumerate_ydt, reading_word, DominoTableau};
use lrhorn::horn::{
    c1_interval, check_offdiag, check_pxyq, check_sv, decompose_triple, essential_triples, horn_cone_membership,
    horn_precondition, horn_triples, repaint_canonicalize, splittings, validate_decomposition, PxyqMode,
    SpectrumTriple,
};
use lrhorn::ineq::{parse_rationals, Report};
use lrhorn::lr::{lr_coefficient, schur_product};
use lrhorn::partitions::{star_pair, tau_partitions, two_quotient, Partition};
use lrhorn::spectra::{eigenvalues_sym, sample_verify, singular_values, RectMatrix, SampleKind, SymMatrix};

// Like println!, but a closed stdout (e.g. piping into `head`) is not an error.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Littlewood-Richardson coefficients, domino tableaux, Horn inequalities and
/// sweeps over small parameter boxes.
///
/// Partitions are written `4,4,1,1` (`-` for the empty one); real vectors as
/// comma-separated exact numbers such as `3,1/2,-0.25`.
#[derive(Parser, Debug)]
#[command(name = "lrhorn", version)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Tolerance for floating-point comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Random seed for sampling commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Size of the worker pool (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print c^nu_{lambda mu}.
    Lrcoef { lambda: Partition, mu: Partition, nu: Partition },
    /// Print c^nu_{lambda mu} counted as Yamanouchi domino tableaux.
    Clcoef { lambda: Partition, mu: Partition, nu: Partition },
    /// Expand s_lambda * s_mu in Schur functions.
    SchurMult { lambda: Partition, mu: Partition },
    /// List domino tableaux of a shape (Yamanouchi ones unless --all).
    Ydt {
        shape: Partition,
        #[arg(long)]
        weight: Option<Partition>,
        #[arg(long)]
        render: bool,
        /// Include tableaux whose reading word is not Yamanouchi.
        #[arg(long)]
        all: bool,
    },
    /// The shape tau(lambda, mu) with 2-quotient (lambda, mu).
    Tau { lambda: Partition, mu: Partition },
    /// The 2-quotient of a domino-decomposable shape.
    Quotient { shape: Partition },
    /// One step of the star operation.
    Star {
        lambda: Partition,
        mu: Partition,
        /// Number of parts both partitions are padded to.
        #[arg(long)]
        parts: Option<usize>,
    },
    /// Iterate the star operation to its fixed point.
    Orbit {
        lambda: Partition,
        mu: Partition,
        #[arg(long)]
        parts: Option<usize>,
    },
    /// List LR_r^p.
    HornTriples {
        p: usize,
        #[arg(short)]
        r: Option<usize>,
        /// Only triples with LR coefficient 1.
        #[arg(long)]
        essential: bool,
    },
    /// Check an inequality family at a point.
    #[command(subcommand)]
    Ineq(IneqCmd),
    /// Horn cone membership of c in H(a; b), or the c_1 ranges of every
    /// splitting of gamma when --gamma is given.
    Cone {
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["a", "b", "c"])]
        gamma: Option<String>,
    },
    /// Split a Horn-feasible triple into saturated blocks.
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Repaint a coloring into 1..m, 1..m, ... by two-colour swaps.
    Repaint {
        #[arg(long, value_delimiter = ',')]
        colors: Vec<usize>,
        #[arg(short)]
        m: usize,
    },
    /// Random-matrix check of an inequality family; prints a JSON report.
    Sample {
        kind: SampleArg,
        #[arg(short)]
        p: usize,
        #[arg(short, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Added to the checked spectrum to force failures.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        perturb: f64,
        /// Leave per-trial records out of the report.
        #[arg(long)]
        summary: bool,
    },
    /// Singular values of a matrix read from FILE or standard input.
    Svd { file: Option<PathBuf> },
    /// Eigenvalues of a symmetric matrix read from FILE or standard input.
    Eig { file: Option<PathBuf> },
    /// Exhaustive sweeps; prints a JSON report.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum IneqCmd {
    /// 2 sum_K s <= sum_I gamma_{2i-1} + sum_J gamma_{2j}.
    Sv {
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// 2 sum_K s <= sum_I lambda_i - sum_J lambda_{n+1-j}.
    Offdiag {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// The (E, F, G) family on the merged sequence of s and t.
    Pxyq {
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// Use all triples rather than only those of the form (F, F, G).
        #[arg(long)]
        full: bool,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum SampleArg {
    Thm1,
    Offdiag,
    Cone2,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(subcommand)]
    sweep: VerifyCmd,
    /// Checkpoint file; resumed from when it exists.
    #[arg(long, global = true)]
    resume: Option<PathBuf>,
    /// Stop after this many items in this run.
    #[arg(long, global = true)]
    max_pairs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// c^nu_{lambda mu} <= c^nu_{lambda* mu*} over a p x q box, or for one --pair.
    Star {
        #[arg(long = "box", num_args = 2, value_names = ["P", "Q"])]
        box_: Option<Vec<usize>>,
        #[arg(long, num_args = 2, value_names = ["LAMBDA", "MU"], conflicts_with = "box_")]
        pair: Option<Vec<Partition>>,
        #[arg(long)]
        parts: Option<usize>,
    },
    /// Interlace splitting against every other splitting of gamma, or of every
    /// gamma up to --max-weight.
    Domination {
        #[arg(long)]
        gamma: Option<Partition>,
        #[arg(short)]
        p: Option<usize>,
        #[arg(long, conflicts_with = "gamma")]
        max_weight: Option<usize>,
    },
    /// c^nu_{lambda mu} <= c^{tau(nu,nu)}_{tau(lambda,mu) tau(lambda,mu)}.
    Tau {
        #[arg(long)]
        max_weight: usize,
    },
    /// Images of LR_r^p under (I, J, K) -> (F, F, G) stay LR-positive.
    Ffg {
        #[arg(long)]
        max_p: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().expect("pool is built once");
    }
    if !(cli.tol >= 0.0 && cli.tol.is_finite()) {
        eprintln!("error: --tol must be a nonnegative number");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget =
                e.downcast_ref::<ConjectureError>().is_some_and(|c| matches!(c, ConjectureError::BudgetExceeded(_)));
            ExitCode::from(if budget { EXIT_BUDGET } else { EXIT_USAGE })
        }
    }
}

fn print_json(v: &impl serde::Serialize) {
    out!("{}", serde_json::to_string_pretty(v).expect("output serializes"));
}

fn rationals(name: &str, s: &str) -> Result<Vec<BigRational>> {
    parse_rationals(s).ok_or_else(|| anyhow!("--{name}: cannot parse `{s}` as comma-separated numbers"))
}

fn default_parts(lambda: &Partition, mu: &Partition, parts: Option<usize>) -> usize {
    parts.unwrap_or(lambda.len().max(mu.len()))
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.cmd {
        Cmd::Lrcoef { lambda, mu, nu } => coefficient(cli, lr_coefficient(lambda, mu, nu)),
        Cmd::Clcoef { lambda, mu, nu } => coefficient(cli, cl_coefficient(lambda, mu, nu)),
        Cmd::SchurMult { lambda, mu } => {
            let e = schur_product(lambda, mu);
            if cli.json {
                let terms: Vec<Value> = e.terms_desc().map(|(nu, c)| json!({ "nu": nu, "c": c })).collect();
                print_json(&json!({ "terms": terms }));
            } else {
                for (nu, c) in e.terms_desc() {
                    out!("{nu}\t{c}");
                }
            }
            Ok(0)
        }
        Cmd::Ydt { shape, weight, render, all } => {
            let list = if *all {
                enumerate_domino_tableaux(shape, weight.as_ref())
            } else {
                enumerate_ydt(shape, weight.as_ref())
            };
            print_tableaux(cli, &list, *render);
            Ok(0)
        }
        Cmd::Tau { lambda, mu } => {
            let t = tau_partitions(lambda, mu);
            if cli.json {
                print_json(&t);
            } else {
                out!("{t}");
            }
            Ok(0)
        }
        Cmd::Quotient { shape } => {
            let (l, m) = two_quotient(shape)?;
            print_pair(cli, &l, &m);
            Ok(0)
        }
        Cmd::Star { lambda, mu, parts } => {
            let (l, m) = star_pair(lambda, mu, default_parts(lambda, mu, *parts))?;
            print_pair(cli, &l, &m);
            Ok(0)
        }
        Cmd::Orbit { lambda, mu, parts } => {
            let orbit = star_orbit(lambda, mu, default_parts(lambda, mu, *parts))?;
            if cli.json {
                print_json(&orbit);
            } else {
                for (l, m) in &orbit {
                    out!("{l}\t{m}");
                }
            }
            Ok(0)
        }
        Cmd::HornTriples { p, r, essential } => {
            if *p == 0 {
                bail!("p must be positive");
            }
            let list = if *essential {
                essential_triples(*p).into_iter().filter(|t| r.is_none_or(|r| t.r() == r)).collect()
            } else {
                horn_triples(*p, *r)
            };
            if cli.json {
                print_json(&list);
            } else {
                for t in &list {
                    out!("{} {} {}", t.i, t.j, t.k);
                }
            }
            Ok(0)
        }
        Cmd::Ineq(sub) => {
            let report = match sub {
                IneqCmd::Sv { gamma, s } => check_sv(&rationals("gamma", gamma)?, &rationals("s", s)?, cli.tol)?,
                IneqCmd::Offdiag { lambda, s } => {
                    check_offdiag(&rationals("lambda", lambda)?, &rationals("s", s)?, cli.tol)?
                }
                IneqCmd::Pxyq { gamma, s, t, full } => {
                    let mode = if *full { PxyqMode::Full } else { PxyqMode::FfgOnly };
                    check_pxyq(&rationals("gamma", gamma)?, &rationals("s", s)?, &rationals("t", t)?, mode, cli.tol)?
                }
            };
            Ok(print_report(cli, &report))
        }
        Cmd::Cone { a, b, c, gamma } => cone(cli, a, b, c, gamma),
        Cmd::Decompose { a, b, c } => {
            let tr = SpectrumTriple::new(rationals("a", a)?, rationals("b", b)?, rationals("c", c)?)?;
            let pre = horn_precondition(&tr);
            if !pre.holds {
                return Ok(print_report(cli, &pre));
            }
            let blocks = decompose_triple(&tr)?;
            let valid = validate_decomposition(&tr, &blocks);
            if cli.json {
                print_json(&json!({ "blocks": blocks, "valid": valid }));
            } else {
                for bl in &blocks {
                    out!("t={}\ta={}\tb={}\tc={}", bl.t, join(&bl.a), join(&bl.b), join(&bl.c));
                }
                out!("{}", if valid { "valid" } else { "INVALID" });
            }
            Ok(if valid { 0 } else { EXIT_VIOLATION })
        }
        Cmd::Repaint { colors, m } => {
            if *m == 0 || colors.len() % m != 0 {
                bail!("{} colors cannot use each of {m} colours equally often", colors.len());
            }
            let steps = repaint_canonicalize(colors, *m, colors.len() / m)?;
            if cli.json {
                print_json(&steps);
            } else {
                out!("{}", join(colors));
                for s in &steps {
                    out!("{}  swap {},{}  prefix {}", join(&s.after), s.colors.0, s.colors.1, s.canonical_prefix);
                }
            }
            Ok(0)
        }
        Cmd::Sample { kind, p, n, trials, perturb, summary } => {
            let kind = match kind {
                SampleArg::Thm1 => SampleKind::SingularValues,
                SampleArg::Offdiag => SampleKind::Offdiag,
                SampleArg::Cone2 => SampleKind::CombinedCone,
            };
            let mut report = sample_verify(kind, *p, *n, *trials, cli.seed, cli.tol, *perturb)?;
            if *summary {
                report.records.clear();
            }
            print_json(&report);
            Ok(if report.violations == 0 { 0 } else { EXIT_VIOLATION })
        }
        Cmd::Svd { file } => {
            let m = read_matrix(file.as_ref())?;
            print_values(cli, &singular_values(&m)?);
            Ok(0)
        }
        Cmd::Eig { file } => {
            let m = read_matrix(file.as_ref())?;
            if m.to_sym().is_none() {
                bail!("matrix is not symmetric");
            }
            print_values(cli, &eigenvalues_sym(&SymMatrix::from_rect(&m)?)?);
            Ok(0)
        }
        Cmd::Verify(args) => verify(args),
    }
}

fn coefficient(cli: &Cli, c: u64) -> Result<u8> {
    if cli.json {
        print_json(&json!({ "c": c }));
    } else {
        out!("{c}");
    }
    Ok(0)
}

fn join<T: std::fmt::Display>(v: &[T]) -> String {
    if v.is_empty() {
        return "-".into();
    }
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn print_pair(cli: &Cli, l: &Partition, m: &Partition) {
    if cli.json {
        print_json(&json!([l, m]));
    } else {
        out!("{l}\t{m}");
    }
}

fn print_tableaux(cli: &Cli, list: &[DominoTableau], render: bool) {
    if cli.json {
        let items: Vec<Value> = list
            .iter()
            .map(|t| json!({ "dominoes": t.dominoes, "word": reading_word(t), "weight": t.content() }))
            .collect();
        print_json(&items);
        return;
    }
    for t in list {
        let word: String = reading_word(t)
            .iter()
            .map(|x| format!("{x}"))
            .collect::<Vec<_>>()
            .join(if t.dominoes.iter().any(|d| d.label > 9) { " " } else { "" });
        out!("{}\tword {word}\tweight {}", t.triples(), join(&t.content()));
        if render {
            out!("{}", t.render());
        }
    }
    out!("{} tableaux", list.len());
}

fn print_report(cli: &Cli, report: &Report) -> u8 {
    if cli.json {
        print_json(report);
    } else if report.holds {
        let margin = report.min_margin.map_or("-".to_string(), |m| m.to_string());
        out!("holds: {} inequalities, min margin {margin}", report.checked);
    } else {
        out!("violated: {} of {} inequalities", report.violations.len(), report.checked);
        for v in &report.violations {
            out!("  {}: {}  ({} > {})", v.provenance, v.inequality, v.lhs, v.rhs);
        }
    }
    if report.holds {
        0
    } else {
        EXIT_VIOLATION
    }
}

fn cone(cli: &Cli, a: &Option<String>, b: &Option<String>, c: &Option<String>, gamma: &Option<String>) -> Result<u8> {
    if let Some(g) = gamma {
        let g = rationals("gamma", g)?;
        if g.len() != 4 {
            bail!("--gamma needs 4 entries: c_1 ranges are computed for 2 x 2 blocks");
        }
        let mut rows = Vec::new();
        for (a, b) in splittings(&g)? {
            let iv = c1_interval(&a, &b)?;
            rows.push((a, b, iv));
        }
        if cli.json {
            let v: Vec<Value> = rows.iter().map(|(a, b, iv)| json!({ "a": a, "b": b, "c1": iv })).collect();
            print_json(&v);
        } else {
            for (a, b, iv) in &rows {
                let range = match iv {
                    None => "empty".to_string(),
                    Some(iv) => {
                        let end = |x: &Option<BigRational>| x.as_ref().map_or("inf".to_string(), |v| v.to_string());
                        format!("[{}, {}]", end(&iv.lo), end(&iv.hi))
                    }
                };
                out!("a={}\tb={}\tc_1 in {range}", join(a), join(b));
            }
        }
        return Ok(0);
    }
    let (Some(a), Some(b), Some(c)) = (a, b, c) else {
        bail!("cone needs --a, --b and --c, or --gamma");
    };
    let report = horn_cone_membership(&rationals("a", a)?, &rationals("b", b)?, &rationals("c", c)?, cli.tol)?;
    Ok(print_report(cli, &report))
}

fn read_matrix(file: Option<&PathBuf>) -> Result<RectMatrix> {
    let text = match file {
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
            s
        }
    };
    Ok(text.parse()?)
}

fn print_values(cli: &Cli, v: &[f64]) {
    if cli.json {
        print_json(&v);
    } else {
        for x in v {
            out!("{x:.12}");
        }
    }
}

fn verify(args: &VerifyArgs) -> Result<u8> {
    let opts = SweepOptions { max_pairs: args.max_pairs, checkpoint: args.resume.clone() };
    let report: SweepReport = match &args.sweep {
        VerifyCmd::Star { box_: Some(pq), .. } => verify_star_conjecture(pq[0], pq[1], &opts)?,
        VerifyCmd::Star { pair: Some(pair), parts, .. } => {
            verify_star_pair(&pair[0], &pair[1], default_parts(&pair[0], &pair[1], *parts))?
        }
        VerifyCmd::Star { .. } => bail!("verify star needs --box P Q or --pair LAMBDA MU"),
        VerifyCmd::Domination { gamma: Some(g), p, .. } => {
            verify_schur_domination(g, p.unwrap_or(g.len().div_ceil(2).max(1)))?
        }
        VerifyCmd::Domination { max_weight: Some(w), p, .. } => {
            verify_schur_domination_sweep(*w, p.ok_or_else(|| anyhow!("--max-weight needs -p"))?, &opts)?
        }
        VerifyCmd::Domination { .. } => bail!("verify domination needs --gamma or --max-weight"),
        VerifyCmd::Tau { max_weight } => verify_tau_domination(*max_weight, &opts)?,
        VerifyCmd::Ffg { max_p } => verify_ffg_membership(*max_p, &opts)?,
    };
    print_json(&report);
    Ok(match report.status {
        SweepStatus::Pass => 0,
        SweepStatus::Violation => EXIT_VIOLATION,
        SweepStatus::BudgetExhausted => EXIT_BUDGET,
    })
}
