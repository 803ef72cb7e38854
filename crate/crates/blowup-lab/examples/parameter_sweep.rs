//! Sweeps the regularization parameter through a set of runs with the same
//! data, collecting per-run manifests and a summary table — the library
//! face of the `sweep` subcommand.
//!
//! Run with `cargo run --release --example parameter_sweep`.

use blowup_lab::runner::{run_experiment, Config};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let toml = r#"
        experiment = "sweep"

        [grid]
        n = 256
        length = 1.0

        [kernel]
        family = "regularized"
        a = 0.1

        [data]
        scenario = "half-period"
        theta-sup = 1.0
        omega-max = 6.0
        support-offset = 0.2
        support-width = 0.3

        [control]
        t-max = 0.4
        bkm-stop = 5.0

        [sweep]
        parameter = "a"
        values = [0.05, 0.1, 0.5, 2.0]
    "#;
    let cfg = Config::from_toml(toml)?;
    let out = std::env::temp_dir().join("blowup-lab-sweep-example");
    let outcome = run_experiment(&cfg, &out)?;

    println!("sweep finished: {} rows under {}", outcome.rows, out.display());
    let summary = std::fs::read_to_string(out.join("summary.csv"))?;
    println!("\nsummary.csv:\n{summary}");
    println!("per-run artifacts (series.csv + manifest.json) live in run-*/");
    Ok(())
}
