//! The lattice of reflection and multiplication relations on the grid 1/N,
//! and a proof certificate for one word.

use gamma_roots::gammaword::GammaWord;
use gamma_roots::prover::ProofOutcome;
use gamma_roots::Lattice;

fn main() -> Result<(), gamma_roots::Error> {
    let n: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(12);
    let lattice = Lattice::new(n);
    println!("N={n}: {} relations, rank {}", lattice.relations().len(), lattice.rank());
    for r in lattice.relations() {
        println!("  {r}");
    }
    let check = lattice.kernel_consistency();
    println!("kernel dimension {}, consistent: {}", check.kernel_dimension, check.consistent);

    // γ(1/N)·γ(1/2 + 1/N) against the duplication formula
    if n.is_multiple_of(2) && n >= 6 {
        let w = GammaWord::from_indices(n, [(1, 1), (n / 2 + 1, 1), (2, -1)])?;
        match lattice.prove(&w) {
            ProofOutcome::Proved(cert) => {
                println!("\n{} = {}", w.to_brace_string(), cert.derived_constant);
                for t in &cert.coefficients {
                    println!("  {:>6} × {}", t.coefficient.to_string(), t.relation);
                }
                let (replayed, value) = lattice.replay(&cert).expect("certificate replays");
                assert_eq!(replayed, w);
                assert_eq!(value, cert.derived_constant);
            }
            ProofOutcome::NotInLattice => println!("{} is not in the lattice", w.to_brace_string()),
        }
    }

    let stray = GammaWord::from_indices(5, [(1, 1)])?;
    println!("\nγ(1/5) alone: {:?}", matches!(Lattice::new(5).prove(&stray), ProofOutcome::NotInLattice));
    Ok(())
}
