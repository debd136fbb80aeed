//! One PASS/FAIL line per acceptance criterion. Every check is exact.

use std::path::PathBuf;
use std::process::ExitCode;

use colorinv::verify::{run_suite, CaseResult};
use colorinv::Config;

const SEED: u64 = 20;

fn config(name: &str) -> Config {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(format!("{name}.toml"));
    Config::load(&path).unwrap_or_else(|e| panic!("{name}: {e}"))
}

struct Criterion {
    title: &'static str,
    suite: &'static str,
    configs: &'static [&'static str],
    truncation: Option<usize>,
    keep: fn(&CaseResult) -> bool,
}

fn any(_: &CaseResult) -> bool {
    true
}

fn permutation_case(c: &CaseResult) -> bool {
    c.case.contains("sigma=")
}

fn supertrace_case(c: &CaseResult) -> bool {
    c.case.starts_with("tr(")
}

const CRITERIA: [Criterion; 10] = [
    Criterion {
        title: "bicharacter axioms",
        suite: "bicharacter",
        configs: &["trivial", "super11", "z4", "klein"],
        truncation: None,
        keep: any,
    },
    Criterion {
        title: "sign cocycle, k <= 4",
        suite: "cocycle",
        configs: &["trivial", "super11", "z4", "klein", "z3z3"],
        truncation: None,
        keep: any,
    },
    Criterion {
        title: "color antisymmetry and Jacobi on gl(V), dim V <= 3",
        suite: "jacobi",
        configs: &["super11", "super21", "z4", "klein", "z3z3"],
        truncation: None,
        keep: any,
    },
    Criterion {
        title: "permutation action commutes with the algebra and group actions, k <= 3",
        suite: "centralizer-commute",
        configs: &["super11", "super21", "z4", "klein"],
        truncation: None,
        keep: any,
    },
    Criterion {
        title: "closed form equals composed maps, N <= 3",
        suite: "path-equality",
        configs: &["super11", "super21", "klein"],
        truncation: None,
        keep: any,
    },
    Criterion {
        title: "invariance under GL at truncation 3",
        suite: "invariance",
        configs: &["super11", "super21", "klein", "z3z3"],
        truncation: Some(3),
        keep: any,
    },
    Criterion {
        title: "pictures match trace monomials, s <= 2",
        suite: "trace-match",
        configs: &["trivial", "super11", "super21", "klein"],
        truncation: None,
        keep: permutation_case,
    },
    Criterion {
        title: "classical spanning rank, n <= 2, r <= 3",
        suite: "span",
        configs: &["trivial"],
        truncation: None,
        keep: any,
    },
    Criterion {
        title: "restitution well-defined and injective",
        suite: "restitution",
        configs: &["super11", "z4", "klein"],
        truncation: None,
        keep: any,
    },
    Criterion {
        title: "supertrace identities",
        suite: "trace-match",
        configs: &["super11", "super21", "z4", "klein"],
        truncation: None,
        keep: supertrace_case,
    },
];

fn evaluate(c: &Criterion) -> Result<(usize, Vec<String>), String> {
    let mut count = 0;
    let mut failures = Vec::new();
    for name in c.configs {
        let mut cfg = config(name);
        if let Some(t) = c.truncation {
            cfg.bounds.truncation = t;
        }
        let report = run_suite(c.suite, &cfg, SEED).map_err(|e| format!("{name}: {e}"))?;
        for case in report.cases.iter().filter(|r| (c.keep)(r)) {
            count += 1;
            if !case.passed {
                failures.push(format!("{name}: {}: {}", case.case, case.detail));
            }
        }
    }
    Ok((count, failures))
}

fn main() -> ExitCode {
    let mut failed = 0;
    for (i, c) in CRITERIA.iter().enumerate() {
        match evaluate(c) {
            Ok((count, fails)) if fails.is_empty() && count > 0 => {
                println!("PASS {:>2} {} ({count} cases)", i + 1, c.title);
            }
            Ok((count, fails)) => {
                failed += 1;
                println!(
                    "FAIL {:>2} {} ({} of {count} cases failed)",
                    i + 1,
                    c.title,
                    fails.len()
                );
                for f in fails.iter().take(5) {
                    println!("     {f}");
                }
            }
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {} (error: {e})", i + 1, c.title);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
