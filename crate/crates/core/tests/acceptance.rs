//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the output.
//! The process fails if any criterion fails, except for published values
//! listed in `KNOWN_INCONSISTENT`: those rows are reported as FAIL, and the
//! suite only checks that the computed value is still the documented one.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use nilprob::group::{closure, ELEMENT_CAP};
use nilprob::nu::{
    alt_bound, monte_carlo_nu, nu_exact, nu_tilde, nu_tilde_monte_carlo, Budget, McTarget, Method,
    NuTildeReport,
};
use nilprob::structure::{is_nilpotent_pair, is_nilpotent_subgroup, is_solvable};
use nilprob::tables::{verify_table, RowStatus, TableId, VerifyOptions};
use nilprob::{build, build_aut_pair, ExactFraction, FiniteGroup, Permutation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Published values that no group of the stated order can produce, with the
/// value this engine computes instead.
const KNOWN_INCONSISTENT: [(&str, &str, &str); 2] = [
    ("PSU(4,2)", "67/23760", "67/25920"),
    ("Alt(8)", "19/9720", "19/6720"),
];

const MC_SAMPLES: u64 = 1_000_000;
const MC_CONFIDENCE: f64 = 0.99;

struct Outcome {
    pass: bool,
    /// Failure confined to documented inconsistent published values.
    known: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            known: false,
            detail: detail.into(),
        }
    }
}

fn frac(s: &str) -> ExactFraction {
    s.parse().unwrap()
}

fn group(spec: &str) -> FiniteGroup {
    build(&spec.parse().unwrap()).unwrap()
}

fn nu_of(spec: &str) -> ExactFraction {
    nu_exact(&group(spec), Method::ExactClasses, &Budget::default())
        .unwrap()
        .exact()
        .unwrap()
        .clone()
}

fn nu_tilde_of(spec: &str) -> NuTildeReport {
    let pair = build_aut_pair(&spec.parse().unwrap()).unwrap();
    nu_tilde(&pair, &Budget::default()).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let checks = [
        ("nu(Sym(3))", nu_of("sym:3"), "1/2"),
        ("nu(Alt(5))", nu_of("alt:5"), "1/12"),
        ("nu~(Alt(5))", nu_tilde_of("alt:5").value, "1/12"),
        ("nu~(Alt(6))", nu_tilde_of("alt:6").value, "1/36"),
        ("nu~(Alt(7))", nu_tilde_of("alt:7").value, "1/210"),
    ];
    let elapsed = start.elapsed();
    let wrong: Vec<String> = checks
        .iter()
        .filter(|(_, got, want)| *got != frac(want))
        .map(|(name, got, want)| format!("{name} = {got}, expected {want}"))
        .collect();
    let fast = elapsed < Duration::from_secs(5);
    let detail = if wrong.is_empty() {
        format!("5 exact values match in {:.2} s (limit 5 s)", elapsed.as_secs_f64())
    } else {
        wrong.join("; ")
    };
    Outcome::new(wrong.is_empty() && fast, detail)
}

/// One published `ν̃` row: exact within the pair budget, otherwise a Monte
/// Carlo interval check.
struct RowResult {
    label: &'static str,
    expected: ExactFraction,
    exact: Option<NuTildeReport>,
    interval_ok: Option<bool>,
}

fn table_row(label: &'static str, spec: &str, expected: &str) -> RowResult {
    let pair = build_aut_pair(&spec.parse().unwrap()).unwrap();
    let expected = frac(expected);
    match nu_tilde(&pair, &Budget::default()) {
        Ok(report) => RowResult {
            label,
            expected,
            exact: Some(report),
            interval_ok: None,
        },
        Err(nilprob::Error::BudgetExceeded(_)) => {
            let (estimate, _) = nu_tilde_monte_carlo(&pair, MC_SAMPLES, 1, MC_CONFIDENCE).unwrap();
            RowResult {
                label,
                interval_ok: Some(estimate.contains(expected.to_f64())),
                expected,
                exact: None,
            }
        }
        Err(e) => panic!("{label}: {e}"),
    }
}

fn summarize(rows: &[RowResult], elapsed: Duration, limit: Duration) -> Outcome {
    let mut wrong = Vec::new();
    let mut known = Vec::new();
    for row in rows {
        match (&row.exact, row.interval_ok) {
            (Some(report), _) if report.value == row.expected => {}
            (Some(report), _) => {
                let documented = KNOWN_INCONSISTENT
                    .iter()
                    .any(|(l, e, c)| *l == row.label && frac(e) == row.expected && frac(c) == report.value);
                let line = format!("{} computed {} vs published {}", row.label, report.value, row.expected);
                if documented {
                    known.push(line);
                } else {
                    wrong.push(line);
                }
            }
            (None, Some(true)) => {}
            (None, _) => wrong.push(format!("{}: {}% interval excludes {}", row.label, MC_CONFIDENCE * 100.0, row.expected)),
        }
    }
    let in_time = elapsed <= limit;
    let matched = rows.len() - wrong.len() - known.len();
    let mut detail = format!(
        "{matched}/{} rows match in {:.1} s (limit {} s)",
        rows.len(),
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    if !wrong.is_empty() {
        detail += &format!("; mismatches: {}", wrong.join(", "));
    }
    if !known.is_empty() {
        detail += &format!(
            "; published values impossible for the group order: {}",
            known.join(", ")
        );
    }
    Outcome {
        pass: wrong.is_empty() && known.is_empty() && in_time,
        known: wrong.is_empty() && !known.is_empty() && in_time,
        detail,
    }
}

fn criterion_2(reports: &mut Vec<NuTildeReport>) -> Outcome {
    let start = Instant::now();
    let rows = vec![
        table_row("PSL(2,7)", "psl2:7", "3/56"),
        table_row("PSL(2,8)", "psl2:8", "1/56"),
        table_row("PSL(2,11)", "psl2:11", "2/165"),
        table_row("PSL(2,13)", "psl2:13", "3/364"),
        table_row("PSL(3,3)", "file:psl33_aut.gens", "1/234"),
        table_row("M11", "file:m11.gens", "1/440"),
    ];
    let outcome = summarize(&rows, start.elapsed(), Duration::from_secs(600));
    reports.extend(rows.into_iter().filter_map(|r| r.exact));
    outcome
}

fn criterion_3(reports: &mut Vec<NuTildeReport>) -> Outcome {
    let start = Instant::now();
    let rows = vec![
        table_row("PSL(3,4)", "file:psl34_aut.gens", "13/4032"),
        table_row("PSU(4,2)", "file:psu42_aut.gens", "67/23760"),
        table_row("M12", "file:m12_aut.gens", "7/11880"),
        table_row("PSp(6,2)", "file:psp62.gens", "1/4536"),
        table_row("Alt(8)", "alt:8", "19/9720"),
        table_row("Alt(9)", "alt:9", "1/2160"),
    ];
    let outcome = summarize(&rows, start.elapsed(), Duration::from_secs(7200));
    reports.extend(rows.into_iter().filter_map(|r| r.exact));
    outcome
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let opts = VerifyOptions {
        row_budget: Duration::from_secs(7200),
        ..VerifyOptions::default()
    };
    let verdict = verify_table(TableId::Two, &opts).unwrap();
    let expected = ["5/4032", "13/4032", "19/6720", "5/4032", "13/4032", "1/2520"];
    let mut wrong = Vec::new();
    for (row, want) in verdict.rows.iter().zip(expected) {
        if row.status != RowStatus::ExactMatch || row.expected != frac(want) {
            wrong.push(format!("{}: {} ({:?})", row.label, row.status, row.computed));
        }
    }
    if verdict.rows.len() != expected.len() {
        wrong.push(format!("{} rows verified", verdict.rows.len()));
    }
    let maximum = nu_tilde_of("file:psl34_aut.gens").value;
    if maximum != frac("13/4032") {
        wrong.push(format!("maximum {maximum}"));
    }
    let detail = if wrong.is_empty() {
        format!(
            "6/6 extension values exact, maximum {maximum} in {:.1} s",
            start.elapsed().as_secs_f64()
        )
    } else {
        wrong.join("; ")
    };
    Outcome::new(wrong.is_empty(), detail)
}

fn criterion_5() -> Outcome {
    let pi = frac("15403/18144");
    let value = alt_bound(&pi, &pi, 10).unwrap();
    Outcome::new(value == frac("12007/181440"), format!("alt_bound = {value}"))
}

/// Compares the pair test with closure + Sylow normality on `pairs`.
fn disagreements(g: &FiniteGroup, pairs: impl Iterator<Item = (Permutation, Permutation)>) -> (u64, u64) {
    let order = g.order().unwrap() as usize;
    let whole = is_nilpotent_subgroup(g.elements().unwrap());
    let mut memo: HashMap<Vec<Vec<u8>>, bool> = HashMap::new();
    let (mut checked, mut bad) = (0, 0);
    for (x, y) in pairs {
        let h = closure(g.degree(), &[x.clone(), y.clone()], ELEMENT_CAP).unwrap();
        let oracle = if h.len() == order {
            whole
        } else {
            let mut key: Vec<Vec<u8>> = h.iter().map(<[u8]>::to_vec).collect();
            key.sort();
            *memo.entry(key).or_insert_with(|| is_nilpotent_subgroup(&h))
        };
        checked += 1;
        bad += (oracle != is_nilpotent_pair(&x, &y)) as u64;
    }
    (checked, bad)
}

fn all_pairs(g: &FiniteGroup) -> impl Iterator<Item = (Permutation, Permutation)> {
    let elems: Vec<Permutation> = g.elements().unwrap().permutations().collect();
    let copy = elems.clone();
    elems.into_iter().flat_map(move |x| copy.clone().into_iter().map(move |y| (x.clone(), y)))
}

fn random_pairs(g: &FiniteGroup, count: usize, seed: u64) -> impl Iterator<Item = (Permutation, Permutation)> + '_ {
    let table = g.elements().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(move |_| {
        let i = rng.random_range(0..table.len());
        let j = rng.random_range(0..table.len());
        (table.permutation(i), table.permutation(j))
    })
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    let mut total_bad = 0;
    for spec in ["sym:4", "sym:5", "alt:5"] {
        let g = group(spec);
        let (checked, bad) = disagreements(&g, all_pairs(&g));
        parts.push(format!("{spec} {checked} pairs"));
        total_bad += bad;
    }
    for spec in ["pgl2:7", "file:m11.gens"] {
        let g = group(spec);
        let (checked, bad) = disagreements(&g, random_pairs(&g, 10_000, 6));
        parts.push(format!("{spec} {checked} random pairs"));
        total_bad += bad;
    }
    Outcome::new(
        total_bad == 0,
        format!("{} disagreements ({})", total_bad, parts.join(", ")),
    )
}

fn criterion_7(reports: &[NuTildeReport]) -> Outcome {
    let mut contexts = 0;
    let mut multi = 0;
    let mut single = 0;
    let mut bad = Vec::new();
    for report in reports {
        for entry in &report.entries {
            let r = &entry.report;
            contexts += 1;
            let wanted = r.generating_pair_count.min(3) as usize;
            let mut pairs = r.quotient_pairs.clone();
            pairs.dedup();
            let constant = r.values.windows(2).all(|w| w[0] == w[1]);
            if r.values.len() != wanted || pairs.len() != wanted || !constant {
                bad.push(format!("{}: {}", report.label, entry.describe()));
            }
            match wanted {
                3 => multi += 1,
                1 => single += 1,
                _ => {}
            }
        }
    }
    let detail = if bad.is_empty() {
        format!(
            "{contexts} contexts; {multi} with three distinct generating pairs, all values equal; \
             {single} with a single generating pair (trivial T/S); {} with two",
            contexts - multi - single
        )
    } else {
        format!("violations: {}", bad.join(", "))
    };
    Outcome::new(bad.is_empty() && contexts > 0, detail)
}

fn criterion_8() -> Outcome {
    let mut specs: Vec<String> = Vec::new();
    specs.extend((1..=6).map(|n| format!("sym:{n}")));
    specs.extend((3..=7).map(|n| format!("alt:{n}")));
    specs.extend((1..=16).map(|n| format!("cyc:{n}")));
    specs.extend((3..=16).map(|n| format!("dih:{n}")));
    specs.extend([4, 5, 7, 8, 9, 11, 13].map(|q| format!("psl2:{q}")));
    specs.extend([2, 3, 4, 5, 7, 8, 9, 11].map(|q| format!("pgl2:{q}")));
    specs.extend([4, 8, 9].map(|q| format!("pgammal2:{q}")));
    let twelfth = frac("1/12");
    let half = frac("1/2");
    let mut violations = Vec::new();
    for spec in &specs {
        let g = group(spec);
        assert!(g.order().unwrap() <= 2520, "{spec}");
        let nu = nu_exact(&g, Method::ExactClasses, &Budget::default())
            .unwrap()
            .exact()
            .unwrap()
            .clone();
        let solvable = is_solvable(&g).unwrap();
        let nilpotent = is_nilpotent_subgroup(g.elements().unwrap());
        if nu > twelfth && !solvable {
            violations.push(format!("{spec}: nu = {nu} > 1/12 but not solvable"));
        }
        if (nu == ExactFraction::one()) != nilpotent {
            violations.push(format!("{spec}: nu = {nu}, nilpotent = {nilpotent}"));
        }
        if !nilpotent && nu > half {
            violations.push(format!("{spec}: non-nilpotent with nu = {nu} > 1/2"));
        }
    }
    let detail = if violations.is_empty() {
        format!("0 violations over {} groups of order <= 2520", specs.len())
    } else {
        violations.join("; ")
    };
    Outcome::new(violations.is_empty(), detail)
}

fn criterion_9() -> Outcome {
    let alt5 = group("alt:5");
    let target = 1.0 / 12.0;
    let covered = (0..100u64)
        .filter(|&seed| {
            let r = monte_carlo_nu(McTarget::Group(&alt5), 10_000, seed, 0.95).unwrap();
            r.estimate().unwrap().contains(target)
        })
        .count();
    let run = || {
        let r = monte_carlo_nu(McTarget::Group(&alt5), 10_000, 12345, 0.95).unwrap();
        format!("{} {:?}", r.favorable, r.estimate().unwrap())
    };
    let reproducible = run() == run();
    Outcome::new(
        covered >= 93 && reproducible,
        format!("{covered}/100 intervals contain 1/12 (need >= 93); fixed-seed rerun identical: {reproducible}"),
    )
}

fn main() {
    let mut reports = Vec::new();
    let mut outcomes: Vec<(u8, Outcome)> = Vec::new();
    let mut run = |n: u8, f: &mut dyn FnMut() -> Outcome| {
        let o = f();
        println!(
            "criterion {n}: {} - {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        outcomes.push((n, o));
    };
    run(1, &mut criterion_1);
    run(2, &mut || criterion_2(&mut reports));
    run(3, &mut || criterion_3(&mut reports));
    run(4, &mut criterion_4);
    run(5, &mut criterion_5);
    run(6, &mut criterion_6);
    run(7, &mut || criterion_7(&reports));
    run(8, &mut criterion_8);
    run(9, &mut criterion_9);
    let passed = outcomes.iter().filter(|(_, o)| o.pass).count();
    let unexpected: Vec<u8> = outcomes
        .iter()
        .filter(|(_, o)| !o.pass && !o.known)
        .map(|(n, _)| *n)
        .collect();
    println!(
        "acceptance: {passed}/{} criteria pass; {} fail only on documented inconsistent published values",
        outcomes.len(),
        outcomes.iter().filter(|(_, o)| o.known).count()
    );
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
