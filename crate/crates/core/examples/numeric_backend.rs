//! Arbitrary-precision ln Γ and constant logarithms.

use gamma_roots::exact::{rat, FactoredConstant};
use gamma_roots::identity::{lhs_word, rhs_constant};
use gamma_roots::numeric::eval_word_ln;
use gamma_roots::{build, Family, PrecisionContext, RootSystemId, Variant};

fn main() -> Result<(), gamma_roots::Error> {
    let digits = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(60);
    let ctx = PrecisionContext::new(digits)?;
    println!(
        "{digits} digits: {} bits, shift {}, {} Stirling terms",
        ctx.bits(),
        ctx.shift_count(),
        ctx.stirling_terms()
    );
    println!("π       = {}", ctx.pi().to_decimal_string(digits as usize));
    for (p, q) in [(1, 2), (1, 3), (1, 6), (5, 12)] {
        let x = rat(p, q);
        println!("lnΓ({x:<4}) = {}", ctx.ln_gamma(&x)?.to_decimal_string(digits as usize));
    }

    let half_pi = FactoredConstant::pi_power(rat(1, 2));
    println!("ln √π   = {}", half_pi.ln(&ctx).to_decimal_string(digits as usize));

    let r = build(RootSystemId::new(Family::F, 4)?)?;
    let w = lhs_word(&r, 4, Variant::Fsecond)?;
    let lhs = eval_word_ln(&w, &ctx);
    let rhs = rhs_constant(&r, 4, Variant::Fsecond)?.ln(&ctx);
    println!("\nF4 α4 F'': ln LHS = {}", lhs.to_decimal_string(30));
    println!("           ln RHS = {}", rhs.to_decimal_string(30));
    println!("           |Δ|    = {}", lhs.sub(&rhs).abs().to_sci_string());
    Ok(())
}
