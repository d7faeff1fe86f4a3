//! Sweep every family up to a rank ceiling and summarise the statuses.
//!
//! ```text
//! cargo run --release --example verify_sweep -- 8 both
//! ```

use gamma_roots::identity::VerifyConfig;
use gamma_roots::{Mode, Verifier};

fn main() -> Result<(), gamma_roots::Error> {
    let mut args = std::env::args().skip(1);
    let ceiling: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(8);
    let mode: Mode = match args.next() {
        Some(s) => s.parse()?,
        None => Mode::Exact,
    };

    let mut config = VerifyConfig::all(mode);
    for s in &mut config.systems {
        s.rank_max = s.rank_max.min(ceiling);
    }
    config.systems.retain(|s| s.rank_min <= s.rank_max);

    let summary = Verifier::new(60)?.verify_all(&config)?;
    for (status, n) in &summary.counts {
        println!("{status:<14} {n}");
    }
    println!("total {} failures {}", summary.total, summary.failures);
    for r in summary.reports.iter().filter(|r| !r.passed()) {
        println!("FAILED {}{} α{} {}: {}", r.family, r.rank, r.index, r.variant, r.status);
    }
    Ok(())
}
