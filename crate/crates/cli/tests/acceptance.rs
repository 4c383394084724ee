//! Acceptance suite: one PASS/FAIL line per criterion, each with a runtime
//! budget. Runs without the libtest harness so the lines are always shown.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::One;

use lrhorn::conjectures::{
    verify_ffg_membership, verify_schur_domination_sweep, verify_star_conjecture, verify_tau_domination, SweepOptions,
    SweepReport, SweepStatus,
};
use lrhorn::domino::cl_coefficient;
use lrhorn::horn::{
    c1_interval, check_pxyq, decompose_triple, horn_cone_membership, horn_triples, p1n2_complete, splittings,
    validate_decomposition, Block, PxyqMode, SpectrumTriple,
};
use lrhorn::ineq::{rat, rats};
use lrhorn::lr::{lr_coefficient, schur_product};
use lrhorn::partitions::{partitions_in_box, star_pair, Partition};
use lrhorn::spectra::{
    eigenvalues_sym, random_with_spectrum, sample_verify_combined_cone, sample_verify_offdiag, sample_verify_theorem1,
};

const SAMPLE_TOL: f64 = 1e-9;
const EIGEN_TOL: f64 = 1e-10;
const TRIALS: u64 = 1000;
const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;

fn part(s: &str) -> Partition {
    s.parse().expect("partition literal")
}

fn lrhorn(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_lrhorn")).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("lrhorn {args:?} exited with {}", out.status));
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn schur_products() -> Outcome {
    let cases = [
        (["3,1", "2"], vec!["5,1", "4,2", "3,3", "4,1,1", "3,2,1"]),
        (["3,2", "1"], vec!["4,2", "3,3", "3,2,1"]),
        (["3", "2,1"], vec!["5,1", "4,2", "4,1,1", "3,2,1"]),
    ];
    for (args, terms) in cases {
        let out = lrhorn(&["schur-mult", args[0], args[1]])?;
        let got: BTreeSet<(String, String)> = out
            .lines()
            .map(|l| {
                let (nu, c) = l.split_once('\t').unwrap_or((l, ""));
                (nu.to_string(), c.to_string())
            })
            .collect();
        let want: BTreeSet<(String, String)> = terms.iter().map(|t| (t.to_string(), "1".to_string())).collect();
        ensure(got == want, || format!("s_{} s_{}: got {got:?}", args[0], args[1]))?;
    }
    Ok("3 expansions match term for term".into())
}

fn ydt_census() -> Outcome {
    let out = lrhorn(&["ydt", "4,4,1,1"])?;
    let got: BTreeSet<(String, String)> = out
        .lines()
        .filter_map(|l| {
            let word = l.split("word ").nth(1)?.split('\t').next()?;
            let weight = l.split("weight ").nth(1)?;
            Some((word.to_string(), weight.to_string()))
        })
        .collect();
    let want: BTreeSet<(String, String)> = [("12112", "3,2"), ("11112", "4,1"), ("12113", "3,1,1"), ("12123", "2,2,1")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    ensure(got == want && out.lines().filter(|l| l.contains("word ")).count() == 4, || format!("got {got:?}"))?;
    Ok("4 Yamanouchi domino tableaux with the expected words and weights".into())
}

fn rule_equivalence() -> Outcome {
    let shapes = partitions_in_box(3, 3);
    let mut checked = 0usize;
    for l in &shapes {
        for m in &shapes {
            let dominoes = lrhorn::domino::cl_expansion(l, m);
            let product = schur_product(l, m);
            ensure(dominoes == product.terms, || format!("expansions differ for ({l}),({m})"))?;
            for (nu, &c) in &product.terms {
                let (lr, cl) = (lr_coefficient(l, m, nu), cl_coefficient(l, m, nu));
                ensure(lr == c && cl == c, || format!("({l}),({m}),({nu}): lr {lr}, cl {cl}, product {c}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{} pairs, {checked} nonzero coefficients, zero mismatches", shapes.len() * shapes.len()))
}

fn horn_small() -> Outcome {
    let label = |p| horn_triples(p, None).iter().map(|t| format!("{} {} {}", t.i, t.j, t.k)).collect::<Vec<_>>();
    let one = label(1);
    ensure(one == ["{1} {1} {1}"], || format!("p=1: {one:?}"))?;
    let two = label(2);
    ensure(two == ["{1} {1} {1}", "{1} {2} {2}", "{2} {1} {2}", "{1,2} {1,2} {1,2}"], || format!("p=2: {two:?}"))?;
    Ok("p=1: 1 triple, p=2: 4 triples".into())
}

fn intervals() -> Outcome {
    let gamma = rats(&[4, 3, 2, 1]);
    let want = [
        (rats(&[4, 3]), rats(&[2, 1]), rat(5), rat(6)),
        (rats(&[4, 2]), rats(&[3, 1]), rat(5), rat(7)),
        (rats(&[4, 1]), rats(&[3, 2]), rat(6), rat(7)),
    ];
    let found = splittings(&gamma).map_err(|e| e.to_string())?;
    ensure(found.len() == 3, || format!("{} splittings", found.len()))?;
    let quarter = BigRational::new(1.into(), 4.into());
    for (a, b, lo, hi) in &want {
        ensure(found.contains(&(a.clone(), b.clone())), || format!("missing splitting {a:?} {b:?}"))?;
        let iv = c1_interval(a, b).map_err(|e| e.to_string())?.ok_or("empty interval")?;
        ensure(iv.lo.as_ref() == Some(lo) && iv.hi.as_ref() == Some(hi), || format!("{a:?},{b:?}: {iv:?}"))?;
        // membership scan over c_1 >= c_2 on a 1/4 grid must find the same ends
        let mut inside = Vec::new();
        let mut c1 = rat(5);
        while c1 <= rat(10) {
            let c = vec![c1.clone(), rat(10) - &c1];
            if horn_cone_membership(a, b, &c, 0.0).map_err(|e| e.to_string())?.holds {
                inside.push(c1.clone());
            }
            c1 += &quarter;
        }
        ensure(inside.first() == Some(lo) && inside.last() == Some(hi), || {
            format!("scan for {a:?},{b:?}: {inside:?}")
        })?;
    }
    Ok("c_1 ranges [5,6], [5,7], [6,7], confirmed by exact scans".into())
}

fn star_example() -> Outcome {
    let got = star_pair(&part("5,5,2,2"), &part("1,1,0,0"), 4).map_err(|e| e.to_string())?;
    ensure(got == (part("4,3,1"), part("3,2,2,1")), || format!("got {got:?}"))?;
    Ok("((5,5,2,2),(1,1)) -> ((4,3,1),(3,2,2,1))".into())
}

fn replayed(r: &SweepReport) -> Result<(), String> {
    ensure(r.status == SweepStatus::Pass, || {
        let replays = r.violations.iter().filter(|v| v.replay()).count();
        format!("{} {}: {:?}, {} violations ({replays} replay)", r.sweep, r.params, r.status, r.violations.len())
    })
}

fn star_sweep() -> Outcome {
    let mut pairs = 0;
    for p in 1..=12 {
        let r = verify_star_conjecture(p, 12 / p, &SweepOptions::default()).map_err(|e| e.to_string())?;
        replayed(&r)?;
        pairs += r.pairs_examined;
    }
    Ok(format!("boxes p x floor(12/p), p = 1..12: {pairs} pairs, zero violations"))
}

fn proved_sweeps() -> Outcome {
    let o = SweepOptions::default();
    let tau = verify_tau_domination(6, &o).map_err(|e| e.to_string())?;
    replayed(&tau)?;
    let dom = verify_schur_domination_sweep(12, 3, &o).map_err(|e| e.to_string())?;
    replayed(&dom)?;
    let ffg = verify_ffg_membership(3, &o).map_err(|e| e.to_string())?;
    replayed(&ffg)?;
    Ok(format!(
        "tau: {} pairs, support: {} gammas, ffg: {} triples; zero violations",
        tau.pairs_examined, dom.pairs_examined, ffg.pairs_examined
    ))
}

fn decomposition() -> Outcome {
    let tr = SpectrumTriple::new(rats(&[2, 1, 0]), rats(&[2, 1, 0]), rats(&[3, 2, 1])).map_err(|e| e.to_string())?;
    let blocks = decompose_triple(&tr).map_err(|e| e.to_string())?;
    ensure(validate_decomposition(&tr, &blocks), || format!("computed decomposition rejected: {blocks:?}"))?;
    let block = |a: i64, b: i64, c: i64| Block { t: BigRational::one(), a: rats(&[a]), b: rats(&[b]), c: rats(&[c]) };
    let hand1 = [block(2, 1, 3), block(1, 0, 1), block(0, 2, 2)];
    let hand2 = [block(1, 2, 3), block(0, 1, 1), block(2, 0, 2)];
    ensure(validate_decomposition(&tr, &hand1), || "first hand decomposition rejected".into())?;
    ensure(validate_decomposition(&tr, &hand2), || "second hand decomposition rejected".into())?;
    Ok(format!("computed ({} blocks) and both hand decompositions validate", blocks.len()))
}

fn numeric() -> Outcome {
    let mut runs = 0;
    for p in 1..=2 {
        for n in 2 * p..=5 {
            for (name, r) in [
                ("theorem1", sample_verify_theorem1(p, n, TRIALS, SEED, SAMPLE_TOL)),
                ("offdiag", sample_verify_offdiag(p, n, TRIALS, SEED, SAMPLE_TOL)),
            ] {
                let r = r.map_err(|e| e.to_string())?;
                ensure(r.violations == 0, || format!("{name} p={p} n={n}: {} violations", r.violations))?;
                runs += 1;
            }
        }
    }
    for p in 1..=3 {
        let r = sample_verify_combined_cone(p, TRIALS, SEED, SAMPLE_TOL).map_err(|e| e.to_string())?;
        ensure(r.violations == 0, || format!("cone p={p}: {} violations", r.violations))?;
        runs += 1;
    }
    let planted = [vec![3.0, 1.0, -2.0], vec![5.5, 5.5, 0.25, -1.0, -7.0], vec![2.0, 1.0, 1.0, 1.0, 0.0, -3.5]];
    let mut worst = 0.0f64;
    for (k, d) in planted.iter().enumerate() {
        for seed in 0..100 {
            let got =
                eigenvalues_sym(&random_with_spectrum(d, SEED + 1000 * k as u64 + seed)).map_err(|e| e.to_string())?;
            worst = got.iter().zip(d).map(|(x, y)| (x - y).abs()).fold(worst, f64::max);
        }
    }
    ensure(worst <= EIGEN_TOL, || format!("planted spectrum error {worst:e}"))?;
    Ok(format!("{runs} runs of {TRIALS} trials, zero violations; planted spectra to {worst:.1e}"))
}

fn converse_witness() -> Outcome {
    let half = BigRational::new(3.into(), 2.into());
    let r = check_pxyq(&rats(&[2, 1]), std::slice::from_ref(&half), &rats(&[0]), PxyqMode::FfgOnly, 0.0)
        .map_err(|e| e.to_string())?;
    ensure(r.holds, || format!("ffg-only family rejects the point: {:?}", r.violations))?;
    ensure(!p1n2_complete(&rat(2), &rat(1), &half, &rat(0), 0.0), || "complete description accepts the point".into())?;
    Ok("(2,1,1.5,0) passes the (F,F,G) family and fails the complete description".into())
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("Schur products s31*s2, s32*s1, s3*s21", Duration::from_secs(1), schur_products),
        ("ydt 4,4,1,1 census", Duration::from_secs(1), ydt_census),
        ("domino rule = LR rule on the 3x3 box", Duration::from_secs(60), rule_equivalence),
        ("Horn triples for p = 1, 2", Duration::from_secs(1), horn_small),
        ("combined-spectrum c_1 intervals for gamma = (4,3,2,1)", Duration::from_secs(1), intervals),
        ("star example", Duration::from_secs(1), star_example),
        ("star sweep for p*q <= 12", Duration::from_secs(600), star_sweep),
        ("proved domination sweeps", Duration::from_secs(600), proved_sweeps),
        ("decomposition of ((2,1,0),(2,1,0),(3,2,1))", Duration::from_secs(1), decomposition),
        ("numeric harness", Duration::from_secs(60), numeric),
        ("converse-failure witness", Duration::from_secs(1), converse_witness),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let verdict = match outcome {
            Ok(detail) if took <= *budget => format!("PASS {:>2} {name}: {detail}", k + 1),
            Ok(detail) => format!("FAIL {:>2} {name}: over budget ({detail})", k + 1),
            Err(why) => format!("FAIL {:>2} {name}: {why}", k + 1),
        };
        if verdict.starts_with("FAIL") {
            failed += 1;
        }
        println!("{verdict} [{:.3}s / {}s]", took.as_secs_f64(), budget.as_secs());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
