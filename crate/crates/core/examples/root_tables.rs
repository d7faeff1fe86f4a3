//! Build a few root systems and print their invariants.
//!
//! ```text
//! cargo run --example root_tables -- B 4
//! ```

use gamma_roots::{build, Family, RootSystemId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let ids = if args.len() == 2 {
        vec![RootSystemId::new(args[0].parse::<Family>()?, args[1].parse()?)?]
    } else {
        ["A3", "B4", "C3", "D5", "E6", "F4", "G2"]
            .iter()
            .map(|s| RootSystemId::new(s[..1].parse().unwrap(), s[1..].parse().unwrap()))
            .collect::<Result<_, _>>()?
    };

    for id in ids {
        let r = build(id)?;
        let show = |xs: &[gamma_roots::Rational]| {
            xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        };
        println!("{id}: |R+| = {}, h = {}, h∨ = {}", r.positive_roots.len(), r.h, r.h_check);
        println!("  marks          {}", show(&r.marks));
        println!("  comarks        {}", show(&r.comarks));
        println!("  double comarks {}", show(&r.double_comarks));
        println!("  highest root   {}", r.highest_root());
        println!("  ρ = {}   ρ∨ = {}", r.rho, r.rho_check);
    }
    Ok(())
}
