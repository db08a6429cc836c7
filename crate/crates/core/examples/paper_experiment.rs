// Every vanishing sum `U_{n1} ± U_{n2} ± U_{n3} ± U_{n4} = 0` with the default ceilings,
// tallied three ways.

use lucas_diophantine::{search_paper_example, Convention};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let exp = search_paper_example();
    for conv in Convention::ALL {
        println!("{:<12} {}", conv.name(), exp.report(conv).totals_line());
    }

    let frozen = exp.frozen();
    assert_eq!(frozen.total, 207);
    for s in frozen.solutions.iter().filter(|s| s.r > 1) {
        println!("r={} indices={:?} coeffs={:?}", s.r, s.indices, s.coeffs);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
