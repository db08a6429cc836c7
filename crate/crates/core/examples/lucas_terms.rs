// Terms of `U_{k+2} = r·U_{k+1} + U_k` for a few `r`, including negative indices and the
// divisibility property `gcd(U_n, U_m) = U_{gcd(n, m)}`.

use lucas_diophantine::{lucas_gcd, lucas_prefix, lucas_term, LucasParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for r in 1..=3 {
        let params = LucasParams::new(r)?;
        let table = lucas_prefix(params, 10);
        let terms: Vec<String> = table.terms().iter().map(|t| t.to_string()).collect();
        println!("r={r}: U_0..U_10 = {}", terms.join(", "));
        println!(
            "      U_-1 = {}, U_-2 = {}",
            lucas_term(params, -1)?,
            lucas_term(params, -2)?
        );
    }

    let fib = LucasParams::new(1)?;
    let big = lucas_term(fib, 300)?;
    println!("F_300 has {} digits", big.to_string().len());
    assert_eq!(lucas_gcd(fib, 12, 18)?, lucas_term(fib, 6)?);
    println!("gcd(F_12, F_18) = F_6 = {}", lucas_gcd(fib, 12, 18)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
