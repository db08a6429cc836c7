// The indexed search against a plain quadruple loop on a small box.

use lucas_diophantine::oracle::brute_force_search;
use lucas_diophantine::{search_sporadic, BoundSet, CanonicalEquation};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let bounds = BoundSet::uniform_box(3, 12);
    let mut total = 0;
    for coeffs in [
        [1, -1, -1, 0],
        [1, -1, -1, -1],
        [2, -1, -1, -1],
        [1, 0, -2, 1],
        [3, -1, -2, -2],
    ] {
        let eq = CanonicalEquation::from_coeffs(coeffs);
        let fast = search_sporadic(&eq, &bounds);
        let slow = brute_force_search(&eq, 1..=3, 12)?;
        assert_eq!(fast, slow);
        println!(
            "{coeffs:?}: {} solutions, engine and brute force agree",
            fast.len()
        );
        total += fast.len();
    }
    println!("{total} solutions checked");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
