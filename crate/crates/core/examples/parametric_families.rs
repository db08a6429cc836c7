// Identities that hold for every shift come from lacunary polynomials divisible by
// `X² − rX − 1`.

use lucas_diophantine::parametric::three_term_exponents;
use lucas_diophantine::{
    find_families, is_multiple, verify_family, BoundSet, CoeffDomain, LucasParams,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // X^4 − X^3 − X − 1 = (X² − X − 1)(X² + 1)
    let fib = LucasParams::new(1)?;
    assert!(is_multiple(&[1, -1, -1, -1], &[4, 3, 1, 0], fib)?);
    assert!(!is_multiple(&[1, -1, -1, -1], &[4, 3, 2, 0], fib)?);

    let b1 = BoundSet::new(1)?;
    println!(
        "three-term exponent pairs searched at X=1: {}",
        three_term_exponents(&b1).len()
    );
    for fam in find_families(&CoeffDomain::Box(1), &b1) {
        assert!(verify_family(&fam, 500));
        println!(
            "r={}  {:<22} {}",
            fam.r,
            fam.poly().to_string(),
            fam.identity()
        );
    }

    let b2 = BoundSet::new(2)?;
    let fams = find_families(&CoeffDomain::Box(2), &b2);
    println!("coefficients in [-2, 2]: {} families", fams.len());
    for fam in fams.iter().filter(|f| f.r > 1) {
        println!("r={}  {}", fam.r, fam.poly());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
