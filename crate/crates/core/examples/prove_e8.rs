//! Exact proofs for every simple root of E8, with certificate sizes.

use gamma_roots::identity::{k_constant, Verifier};
use gamma_roots::{build, Family, Mode, RootSystemId, Variant};

fn main() -> Result<(), gamma_roots::Error> {
    let r = build(RootSystemId::new(Family::E, 8)?)?;
    println!("k(E8) = {}   h = {}", k_constant(&r, Variant::F), r.h);

    let verifier = Verifier::new(60)?;
    for i in 1..=r.rank() {
        let report = verifier.verify(&r, i, Variant::F, Mode::Both)?;
        let cert = report.certificate.as_ref().expect("E8 words lie in the lattice");
        println!(
            "α{i}: {:<12} {:<32} {} relations, residual {}",
            report.status.to_string(),
            report.rhs_constant.to_string(),
            cert.coefficients.len(),
            report.numeric_residual.as_deref().unwrap_or("-")
        );
    }

    let report = verifier.verify(&r, 5, Variant::F, Mode::Exact)?;
    println!("\n{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    Ok(())
}
