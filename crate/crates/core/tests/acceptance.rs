//! Acceptance criteria 1 through 9. Prints one PASS/FAIL line per criterion
//! and fails if any criterion fails.

use std::time::{Duration, Instant};

use qfactor_core::exact::{int, rat};
use qfactor_core::verify::{run_suite, Status, SuiteConfig, VerificationReport};
use qfactor_core::QContext;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn suite(filter: &str, config: &SuiteConfig) -> (VerificationReport, Duration) {
    let start = Instant::now();
    let report = run_suite(filter, config).expect("filter is valid");
    (report, start.elapsed())
}

fn all_pass(report: &VerificationReport) -> bool {
    report.summary.total > 0 && report.summary.fail == 0 && report.summary.skipped == 0
}

fn counts(report: &VerificationReport) -> String {
    let s = report.summary;
    format!("{} cases, {} pass, {} fail, {} skipped", s.total, s.pass, s.fail, s.skipped)
}

fn max_residual(report: &VerificationReport) -> f64 {
    report.cases.iter().filter_map(|c| c.residual).fold(0.0, f64::max)
}

fn two_contexts() -> Vec<QContext> {
    vec![
        QContext::new(rat(1, 2), rat(1, 2)).unwrap(),
        QContext::new(rat(3, 5), rat(-1, 3)).unwrap(),
    ]
}

fn criterion_1() -> Verdict {
    let (report, elapsed) = suite("eq3.9", &SuiteConfig::default());
    let contexts = report
        .cases
        .iter()
        .map(|c| (c.params["s"].to_string(), c.params["beta"].to_string()))
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    Verdict {
        pass: all_pass(&report) && report.summary.total == 12 * 21 && contexts == 12 && elapsed.as_secs() < 60,
        detail: format!("{}, {contexts} contexts, {:.1} s", counts(&report), elapsed.as_secs_f64()),
    }
}

fn criterion_2() -> Verdict {
    let (report, elapsed) = suite("eq3.7", &SuiteConfig::default());
    let operator_forms = report.cases.iter().filter(|c| c.params.contains_key("form")).count();
    Verdict {
        pass: all_pass(&report) && operator_forms == 12,
        detail: format!("{}, {operator_forms} operator identities, {:.1} s", counts(&report), elapsed.as_secs_f64()),
    }
}

fn criterion_3() -> Verdict {
    let (report, _) = suite("eq1.9,eq1.11,hermite-reduction", &SuiteConfig::default());
    Verdict {
        pass: all_pass(&report) && report.summary.total == 3 * 3 * 21,
        detail: counts(&report),
    }
}

fn criterion_4() -> Verdict {
    let filter = "eq3.4,eq3.10,eq3.14,sec4.eq4.1,eq2.9,eigenvalue-identity";
    let (report, _) = suite(filter, &SuiteConfig::default());
    let ids: std::collections::BTreeSet<_> = report.cases.iter().map(|c| c.check_id.as_str()).collect();
    Verdict {
        pass: all_pass(&report) && ids.len() == 6,
        detail: counts(&report),
    }
}

fn criterion_5() -> Verdict {
    let config = SuiteConfig {
        grid: two_contexts(),
        series_order: 15,
        ..SuiteConfig::default()
    };
    let (report, _) = suite("eq3.12,eq3.13", &config);
    Verdict {
        pass: all_pass(&report) && report.summary.total == 4,
        detail: format!("{} through t^15", counts(&report)),
    }
}

fn criterion_6() -> Verdict {
    let config = SuiteConfig {
        grid: vec![QContext::new(rat(1, 2), rat(1, 2)).unwrap()],
        numeric_n_max: 8,
        nodes: 512,
        epsilon: 1e-14,
        ..SuiteConfig::default()
    };
    let (report, elapsed) = suite("eq2.2", &config);
    let off = report
        .cases
        .iter()
        .filter(|c| c.params["m"] != c.params["n"])
        .filter_map(|c| c.residual)
        .fold(0.0, f64::max);
    let diag = report
        .cases
        .iter()
        .filter(|c| c.params["m"] == c.params["n"])
        .filter_map(|c| c.residual)
        .fold(0.0, f64::max);
    Verdict {
        pass: all_pass(&report) && report.summary.total == 45 && off < 1e-10 && diag < 1e-9 && elapsed.as_secs() < 10,
        detail: format!(
            "{}, max off-diagonal {off:.2e}, max diagonal relative {diag:.2e}, {:.1} s",
            counts(&report),
            elapsed.as_secs_f64()
        ),
    }
}

fn criterion_7() -> Verdict {
    let config = SuiteConfig {
        grid: two_contexts(),
        ..SuiteConfig::default()
    };
    let (report, _) = suite("eq1.5,eq1.7,eq2.4,eq2.6,eq3.1", &config);
    let worst = max_residual(&report);
    Verdict {
        pass: all_pass(&report) && worst < 1e-8,
        detail: format!("{}, max relative residual {worst:.2e}", counts(&report)),
    }
}

fn criterion_8() -> Verdict {
    let config = SuiteConfig {
        grid: vec![
            QContext::new(rat(1, 2), int(0)).unwrap(),
            QContext::new(rat(7, 10), int(0)).unwrap(),
        ],
        ..SuiteConfig::default()
    };
    let (report, _) = suite("sec3.limit-q1,sec2.gegenbauer-limit,sec4.limit-beta1", &config);
    let orders: Vec<String> = report
        .cases_for("sec3.limit-q1")
        .map(|c| format!("gamma={} {}", c.params["gamma"].as_str().unwrap_or("?"), c.note.clone().unwrap_or_default()))
        .collect();
    let worst = |id: &str| report.cases_for(id).filter_map(|c| c.residual).fold(0.0, f64::max);
    Verdict {
        pass: all_pass(&report),
        detail: format!(
            "{}; gegenbauer {:.2e}; beta->1 {:.2e}; measured orders: {}",
            counts(&report),
            worst("sec2.gegenbauer-limit"),
            worst("sec4.limit-beta1"),
            orders.join("; ")
        ),
    }
}

fn criterion_9() -> Verdict {
    let config = SuiteConfig {
        mutate_beta: Some(rat(1, 7)),
        ..SuiteConfig::default()
    };
    let (report, _) = suite("eq3.9", &config);
    let diagnosed = report
        .cases
        .iter()
        .filter(|c| c.status == Status::Fail)
        .all(|c| c.remainder_degree.is_some());
    Verdict {
        pass: report.summary.fail > 0 && diagnosed,
        detail: format!("mutated operator: {}", counts(&report)),
    }
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 9] = [
        ("square-root equation", criterion_1),
        ("factorization", criterion_2),
        ("q-Hermite chain", criterion_3),
        ("supporting exact identities", criterion_4),
        ("generating function", criterion_5),
        ("orthogonality", criterion_6),
        ("weighted Sturm-Liouville and weight relations", criterion_7),
        ("limits", criterion_8),
        ("negative control", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {} ({name}): {}", i + 1, v.detail);
        if !v.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
