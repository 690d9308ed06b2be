//! One test per acceptance criterion. Each prints a single
//! "acceptance <name>: PASS|FAIL" line (visible under --nocapture) before
//! asserting, and pins its wall-clock cap in code.

use std::time::{Duration, Instant};

use fairshare_cli::repro::run_repro;
use fairshare_cli::suites::run_suite;
use fairshare_core::allocator::DEFAULT_NODE_BUDGET;

fn repro_criterion(name: &str, id: &str, cap: Duration) {
    let start = Instant::now();
    let result = run_repro(id, 0);
    let elapsed = start.elapsed();
    let ok = matches!(&result, Ok(r) if r.passed()) && elapsed <= cap;
    println!("acceptance {name}: {}", if ok { "PASS" } else { "FAIL" });
    let report = result.expect("repro case must run");
    let failed: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.label.as_str())
        .collect();
    assert!(failed.is_empty(), "failed checks: {failed:?}");
    assert!(elapsed <= cap, "took {elapsed:?}, cap {cap:?}");
}

fn suite_criterion(name: &str, suite: &str, cap: Duration, min_cases: u64) {
    let start = Instant::now();
    let result = run_suite(suite, 0, DEFAULT_NODE_BUDGET, 1);
    let elapsed = start.elapsed();
    let ok = matches!(&result, Ok(r) if r.failures == 0 && r.cases >= min_cases) && elapsed <= cap;
    println!("acceptance {name}: {}", if ok { "PASS" } else { "FAIL" });
    let report = result.expect("suite must run");
    assert_eq!(report.failures, 0, "failures: {:?}", report.notes);
    assert!(
        report.cases >= min_cases,
        "only {} cases, need at least {min_cases}",
        report.cases
    );
    assert!(elapsed <= cap, "took {elapsed:?}, cap {cap:?}");
}

#[test]
fn criterion_01_upper_bound_infeasibility() {
    repro_criterion(
        "01-upper-bound-infeasibility",
        "upper-bound",
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_02_complementarity_gap() {
    repro_criterion(
        "02-complementarity-gap",
        "complementarity",
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_03_residual_maximin_identical() {
    repro_criterion(
        "03-residual-maximin-identical",
        "rmms-identical",
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_04_identical_goods_ratio() {
    repro_criterion(
        "04-identical-goods-ratio",
        "identical-goods",
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_05_threshold_window() {
    repro_criterion(
        "05-threshold-window",
        "threshold-window",
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_06_downset_inequality() {
    suite_criterion(
        "06-downset-inequality",
        "downset",
        Duration::from_secs(30),
        15_000,
    );
}

#[test]
fn criterion_07_thinning_monotonicity() {
    suite_criterion(
        "07-thinning-monotonicity",
        "monotonicity",
        Duration::from_secs(30),
        1,
    );
}

#[test]
fn criterion_08_kruskal_katona() {
    suite_criterion("08-kruskal-katona", "kk", Duration::from_secs(30), 40_000);
}

#[test]
fn criterion_09_rainbow_emc_tiny() {
    suite_criterion(
        "09-rainbow-emc-tiny",
        "emc-tiny",
        Duration::from_secs(300),
        48,
    );
}

#[test]
fn criterion_10_lemma_suite() {
    let cap = Duration::from_secs(30);
    let start = Instant::now();
    let padding = run_suite("padding", 0, DEFAULT_NODE_BUDGET, 1);
    let reduction = run_suite("reduction", 0, DEFAULT_NODE_BUDGET, 1);
    let elapsed = start.elapsed();
    let ok = matches!(&padding, Ok(r) if r.failures == 0)
        && matches!(&reduction, Ok(r) if r.failures == 0)
        && elapsed <= cap;
    println!("acceptance 10-lemma-suite: {}", if ok { "PASS" } else { "FAIL" });
    let padding = padding.expect("padding suite must run");
    let reduction = reduction.expect("reduction suite must run");
    assert_eq!(padding.failures, 0, "padding failures: {:?}", padding.notes);
    assert_eq!(reduction.failures, 0, "reduction failures: {:?}", reduction.notes);
    assert!(reduction.cases >= 1000, "only {} reduction cases", reduction.cases);
    assert!(elapsed <= cap, "took {elapsed:?}, cap {cap:?}");
}

#[test]
fn criterion_11_monte_carlo_calibration() {
    suite_criterion(
        "11-monte-carlo-calibration",
        "mc-vs-exact",
        Duration::from_secs(120),
        1000,
    );
}

#[test]
fn criterion_12_allocator_oracle() {
    suite_criterion(
        "12-allocator-oracle",
        "allocator-oracle",
        Duration::from_secs(120),
        500,
    );
}

#[test]
fn criterion_13_theorem_regime() {
    suite_criterion(
        "13-theorem-regime",
        "theorem-regime",
        Duration::from_secs(60),
        500,
    );
}
