//! Left-hand γ-words of the identities, in brace notation.
//!
//! `{a}` stands for γ(a/N). The reduced form keeps only indices below N/2.

use gamma_roots::identity::{lhs_word, rhs_constant};
use gamma_roots::{build, Family, RootSystemId, Variant};

fn main() -> Result<(), gamma_roots::Error> {
    let cases = [
        (Family::A, 4, Variant::F),
        (Family::D, 4, Variant::F),
        (Family::E, 6, Variant::F),
        (Family::B, 3, Variant::Fprime),
        (Family::C, 3, Variant::Fsecond),
        (Family::F, 4, Variant::Fsecond),
        (Family::G, 2, Variant::Fprime),
        (Family::G, 2, Variant::Fsecond),
    ];
    for (family, rank, variant) in cases {
        let r = build(RootSystemId::new(family, rank)?)?;
        for i in 1..=r.rank() {
            let w = lhs_word(&r, i, variant)?;
            println!(
                "{}{} α{} {:<8} N={:<3} {:<40} = {}",
                family,
                rank,
                i,
                variant.to_string(),
                w.denominator(),
                w.reduce_reflection().to_brace_string(),
                rhs_constant(&r, i, variant)?
            );
        }
    }

    // F needs a simply-laced system
    let b2 = build(RootSystemId::new(Family::B, 2)?)?;
    if let Err(e) = lhs_word(&b2, 1, Variant::F) {
        println!("B2 α1 F: {e}");
    }
    Ok(())
}
