//! Runs the full inequality scan suite and prints one line per property:
//! the scanned extremal, where it sits, and how it moved under grid
//! refinement.
//!
//! Run with `cargo run --release --example inequality_scans`.

use blowup_lab::scans::{default_suite, SuiteConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SuiteConfig {
        l: 1.0,
        x_half: 1.0,
        resolution: 200,
        a_values: vec![0.01, 0.1, 1.0, 10.0],
    };
    println!(
        "scanning {} parameter values at resolution {} (doubled for refinement)…\n",
        cfg.a_values.len(),
        cfg.resolution
    );
    let reports = default_suite(&cfg)?;
    for r in &reports {
        println!(
            "{:34} {}  extremal {:+.6e} at ({:.4}, {:.4}) a={:<6} ratio {:.2e}",
            r.property_id,
            if r.pass { "PASS" } else { "FAIL" },
            r.extremal_value,
            r.location_x,
            r.location_y,
            r.location_a,
            r.refinement_ratio,
        );
        if let Some(chat) = r.estimated_constant {
            println!("{:34} estimated constant {:.8}", "", chat);
        }
        for note in &r.notes {
            println!("{:34} note: {note}", "");
        }
    }
    Ok(())
}
