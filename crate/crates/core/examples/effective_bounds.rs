// Search ceilings as a function of the coefficient height `X`.

use lucas_diophantine::bounds::float_route;
use lucas_diophantine::{cd_zero_bound, BoundSet};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:>6} {:>5} {:>16} {:>9} {:>12} {:>5}",
        "X", "r<=", "n4/n3/n2/n1", "tri i/j", "quad i/j/k", "C=D=0"
    );
    for x in [1, 2, 3, 10, 100, 10_000] {
        let b = BoundSet::new(x)?;
        // the exact walk and the guarded float route agree
        assert_eq!(b, float_route(x)?);
        println!(
            "{:>6} {:>5} {:>16} {:>9} {:>12} {:>5}",
            x,
            b.r_max,
            format!("{}/{}/{}/{}", b.n4_max, b.n3_max, b.n2_max, b.n1_max),
            format!("{}/{}", b.tri_i_max, b.tri_j_max),
            format!("{}/{}/{}", b.quad_i_max, b.quad_j_max, b.quad_k_max),
            cd_zero_bound(x)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
