// Full solution sets of two small equations: sporadic solutions plus parametric families.

use lucas_diophantine::{solve, ProblemSpec, SolveOptions};

fn show(a: i64, b: i64, c: i64, d: i64) -> Result<(), Box<dyn std::error::Error>> {
    let spec = ProblemSpec::new(a, b, c, d)?;
    let rep = solve(&spec, &SolveOptions::default())?;
    println!("{a}·U_n + {b}·U_m = {c}·U_n1 + {d}·U_m1");
    println!(
        "  {} branches, {} sporadic, {} families",
        rep.branches.len(),
        rep.sporadic.len(),
        rep.families.len()
    );
    for s in rep.sporadic.iter().take(5) {
        let i = s.indices;
        println!(
            "  r={} n={:?} m={:?} n1={:?} m1={:?}",
            s.r, i.n, i.m, i.n1, i.m1
        );
    }
    for f in &rep.families {
        println!("  r={} {}", f.family.r, f.describe());
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    show(1, 1, 1, 1)?;
    show(1, -1, 1, 0)?;
    show(2, 1, 1, 1)?;
    // A = 0 is not a four-term equation
    assert!(ProblemSpec::new(0, 1, 1, 1).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
