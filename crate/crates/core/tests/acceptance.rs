//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any criterion fails.
//!
//! All comparisons are exact; there are no tolerances.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::{One, Signed};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rayon::prelude::*;

use recip_pascal::arith::{self, Integer, Rational};
use recip_pascal::identities::{self, CheckReport};
use recip_pascal::linalg;
use recip_pascal::matrix::{self, MatrixQ};
use recip_pascal::sequences::{self, Compare, SequenceRecord};

const BIN: &str = env!("CARGO_BIN_EXE_recip-pascal");
const A000984_BFILE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/b000984.txt");

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_passed(reports: &[CheckReport]) -> Result<(), String> {
    match reports.iter().find(|r| !r.passed()) {
        None => Ok(()),
        Some(r) => Err(format!(
            "{} failed at {:?}: {:?}",
            r.name(),
            r.instance(),
            r.counterexample()
        )),
    }
}

fn ac1_integrality() -> Outcome {
    let t = Instant::now();
    (1..=48usize).into_par_iter().try_for_each(|n| {
        let inv = identities::r_inverse_via_factorization(n).map_err(|e| format!("n={n}: {e}"))?;
        let r = matrix::reciprocal_pascal(n).unwrap();
        let oracle = linalg::invert_rational(&r).map_err(|e| format!("n={n}: {e}"))?;
        let inv_q = inv.to_rational();
        ensure(inv_q == oracle, || {
            format!("n={n}: differs from Gauss-Jordan inverse")
        })?;
        ensure(r.mul(&inv_q).unwrap() == MatrixQ::identity(n), || {
            format!("n={n}: R * R^-1 != I")
        })
    })?;
    let elapsed = t.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "n = 1..48 integral and equal to the oracle in {:.2} s",
        elapsed.as_secs_f64()
    ))
}

fn ac2_factorizations() -> Outcome {
    let sizes: Vec<usize> = (1..=48).collect();
    let reports = identities::run_checks(
        &[identities::CheckKind::Grg, identities::CheckKind::Ldl],
        &sizes,
    )
    .map_err(|e| e.to_string())?;
    all_passed(&reports)?;
    Ok(format!(
        "{} reports, S = GRG and S = LDL^T for n = 1..48",
        reports.len()
    ))
}

fn ac3_von_szily() -> Outcome {
    let pairs: Vec<(u64, u64)> = (0..=40)
        .flat_map(|m| (0..=40).map(move |n| (m, n)))
        .collect();
    let reports: Vec<CheckReport> = pairs
        .par_iter()
        .map(|&(m, n)| identities::check_von_szily(m, n))
        .collect();
    all_passed(&reports)?;
    Ok(format!("{} pairs, raw and folded sums", reports.len()))
}

fn ac4_determinant() -> Outcome {
    let mut pattern = String::new();
    let mut disagree = Vec::new();
    for n in 1..=16usize {
        let r = matrix::reciprocal_pascal(n).unwrap();
        let oracle = linalg::det_bareiss(&linalg::invert_rational(&r).unwrap()).unwrap();
        let product: Integer = (0..n as u64)
            .map(|m| arith::central_binomial(m).pow(2))
            .product();
        let magnitude = Rational::new(product, Integer::one() << (n - 1));
        ensure(oracle.abs() == magnitude, || {
            format!(
                "n={n}: |oracle| = {} but magnitude formula = {magnitude}",
                oracle.abs()
            )
        })?;

        let c = identities::compare_determinant(n).unwrap();
        ensure(c.oracle == oracle && c.magnitude_match, || {
            format!("n={n}: comparison report disagrees with direct oracle")
        })?;
        pattern.push(if c.sign_match { '=' } else { 'x' });
        if !c.sign_match {
            disagree.push(n);
        }
    }
    ensure(disagree.contains(&1) && disagree.contains(&3), || {
        format!("expected sign disagreement flagged at n = 1 and 3, got {disagree:?}")
    })?;
    Ok(format!(
        "magnitudes exact for n = 1..16; sign pattern (= agree, x differ) {pattern}; formula sign differs at n = {disagree:?}"
    ))
}

fn ac5_parity() -> Outcome {
    let reports: Vec<CheckReport> = (1..=64usize)
        .into_par_iter()
        .map(|n| identities::check_l_inverse_column(n).unwrap())
        .collect();
    all_passed(&reports)?;
    Ok("column 0 of L^-1 is (1, even...) and equals diag(D) for n = 1..64".into())
}

fn ac6_closing_expression() -> Outcome {
    (1..=48usize).into_par_iter().try_for_each(|n| {
        let v = identities::r_inverse_00(n).map_err(|e| format!("n={n}: {e}"))?;
        let full = identities::r_inverse_via_factorization(n).map_err(|e| format!("n={n}: {e}"))?;
        ensure(v == full[(0, 0)], || {
            format!("n={n}: closed form {v} vs entry {}", full[(0, 0)])
        })?;
        let expected = if n % 2 == 1 {
            Integer::one()
        } else {
            -Integer::one()
        };
        ensure(v == expected, || format!("n={n}: {v} != (-1)^(n-1)"))
    })?;
    Ok("R^-1[0][0] = (-1)^(n-1) for n = 1..48".into())
}

fn ac7_cofactor_oracle() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 24,
        failure_persistence: None,
        ..Config::default()
    });
    for n in 1..=12usize {
        let r = matrix::reciprocal_pascal(n).unwrap();
        ensure(
            linalg::det_bareiss(&r).unwrap() == common::cofactor_det(&r),
            || format!("R({n}) determinant mismatch"),
        )?;
        let p = matrix::pascal_matrix(n).unwrap().to_rational();
        ensure(
            linalg::det_bareiss(&p).unwrap() == common::cofactor_det(&p),
            || format!("P({n}) determinant mismatch"),
        )?;
        let entries = prop::collection::vec((-9i64..=9, 1i64..=6), n * n);
        runner
            .run(&entries, |v| {
                let m = MatrixQ::from_fn(n, n, |i, j| {
                    let (a, b) = v[i * n + j];
                    Rational::new(a.into(), b.into())
                });
                prop_assert_eq!(linalg::det_bareiss(&m).unwrap(), common::cofactor_det(&m));
                Ok(())
            })
            .map_err(|e| format!("n={n}: {e}"))?;
    }
    Ok("Bareiss = cofactor expansion on R, P and random rational matrices, n = 1..12".into())
}

fn ac8_io() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 100,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (
        -100i64..10_000,
        prop::collection::vec(any::<i128>().prop_map(Integer::from), 1..60),
    );
    runner
        .run(&strategy, |(offset, terms)| {
            let rec = SequenceRecord::new("A999999", offset, terms).unwrap();
            let back = sequences::parse_bfile("A999999", &sequences::emit_bfile(&rec)).unwrap();
            prop_assert_eq!(back, rec);
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    let text = std::fs::read_to_string(A000984_BFILE).map_err(|e| e.to_string())?;
    let reference = sequences::parse_bfile("A000984", &text).map_err(|e| e.to_string())?;
    ensure(
        reference.offset == 0 && reference.last_index() == 20,
        || "vendored b-file should cover indices 0..20".into(),
    )?;
    let generated = SequenceRecord::new(
        "generated",
        0,
        (0..=20).map(arith::central_binomial).collect(),
    )
    .unwrap();
    let res =
        sequences::crosscheck(&reference, &generated, Compare::Exact).map_err(|e| e.to_string())?;
    ensure(res.report.passed(), || {
        format!("{:?}", res.report.counterexample())
    })?;
    Ok("100 random b-file round trips; A000984 indices 0..20 match".into())
}

fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn ac9_cli() -> Outcome {
    let gen = [
        "gen",
        "--matrix",
        "reciprocal",
        "--n",
        "2",
        "--format",
        "csv",
    ];
    let first = run_cli(&gen);
    ensure(first.status.code() == Some(0), || {
        format!("gen exited {:?}", first.status)
    })?;
    ensure(first.stdout == b"1,1\n1,1/2\n", || {
        format!("gen printed {:?}", String::from_utf8_lossy(&first.stdout))
    })?;
    for format in ["csv", "json", "bfile"] {
        let args = [
            "gen",
            "--matrix",
            "supercatalan",
            "--n",
            "12",
            "--format",
            format,
        ];
        ensure(run_cli(&args).stdout == run_cli(&args).stdout, || {
            format!("gen --format {format} is not byte-stable")
        })?;
    }

    let check = run_cli(&["check", "--checks", "all", "--n", "8"]);
    ensure(check.status.code() == Some(0), || {
        format!("check exited {:?}", check.status)
    })?;
    let reports: serde_json::Value =
        serde_json::from_slice(&check.stdout).map_err(|e| format!("check output: {e}"))?;
    ensure(reports.as_array().is_some_and(|a| a.len() == 6), || {
        "check --checks all should report six checks".into()
    })?;

    let det = run_cli(&["det", "--n", "3", "--format", "json"]);
    ensure(det.status.code() == Some(0), || {
        format!("det exited {:?}", det.status)
    })?;
    ensure(
        det.stdout == b"{\"formula\":\"36\",\"oracle\":\"-36\",\"magnitude_match\":true,\"sign_match\":false}\n",
        || format!("det printed {:?}", String::from_utf8_lossy(&det.stdout)),
    )?;

    let usage = run_cli(&["invert", "--n", "0"]);
    ensure(usage.status.code() == Some(2), || {
        format!("invert --n 0 exited {:?}", usage.status)
    })?;
    ensure(usage.stdout.is_empty() && !usage.stderr.is_empty(), || {
        "usage errors belong on stderr".into()
    })?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "0 1\n1 2\n2 7\n").map_err(|e| e.to_string())?;
    let fail = run_cli(&[
        "oeis",
        "--seq",
        "A000984",
        "--n",
        "5",
        "--bfile",
        bad.to_str().unwrap(),
    ]);
    ensure(fail.status.code() == Some(1), || {
        format!("failing crosscheck exited {:?}", fail.status)
    })?;
    let report: serde_json::Value =
        serde_json::from_slice(&fail.stdout).map_err(|e| format!("crosscheck output: {e}"))?;
    ensure(report["report"]["passed"] == false, || {
        "failure report missing".into()
    })?;

    let good = run_cli(&[
        "oeis",
        "--seq",
        "A000984",
        "--n",
        "21",
        "--bfile",
        A000984_BFILE,
    ]);
    ensure(good.status.code() == Some(0), || {
        format!("A000984 crosscheck exited {:?}", good.status)
    })?;
    Ok("exit codes 0/1/2 and byte-stable gen output".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("AC1 integrality of R^-1", ac1_integrality),
        ("AC2 GRG and LDL^T factorizations", ac2_factorizations),
        ("AC3 von Szily expansion", ac3_von_szily),
        ("AC4 determinant magnitude and sign report", ac4_determinant),
        ("AC5 parity of L^-1 column 0", ac5_parity),
        (
            "AC6 closing expression for R^-1[0][0]",
            ac6_closing_expression,
        ),
        ("AC7 Bareiss vs cofactor oracle", ac7_cofactor_oracle),
        ("AC8 b-file I/O", ac8_io),
        ("AC9 CLI contract", ac9_cli),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        let t = Instant::now();
        let outcome = criterion();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name} ({secs:.2} s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name} ({secs:.2} s): {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
