use std::path::PathBuf;

use colorinv::verify::run_suite;
use colorinv::Config;

fn config(name: &str) -> Config {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name);
    Config::load(&path).unwrap()
}

#[test]
fn every_suite_passes_on_shipped_configs() {
    for name in [
        "trivial.toml",
        "super11.toml",
        "super21.toml",
        "z4.toml",
        "klein.toml",
        "z3z3.toml",
    ] {
        let cfg = config(name);
        let t = std::time::Instant::now();
        let report = run_suite("all", &cfg, 7).unwrap();
        eprintln!("{name}: {} cases in {:?}", report.cases.len(), t.elapsed());
        assert!(report.all_passed(), "{name}\n{report}");
    }
}
