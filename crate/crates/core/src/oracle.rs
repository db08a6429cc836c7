//! Naive reference implementations for cross-checking the search engines.
//!
//! Nothing here calls into the optimized paths: terms are recomputed by plain iteration,
//! the sporadic search is a quadruple loop and polynomial division is schoolbook.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lucas::LucasParams;
use crate::normalize::CanonicalEquation;
use crate::sporadic::SporadicSolution;

/// Largest `index_cap` accepted by [`brute_force_search`].
pub const INDEX_CAP_LIMIT: u64 = 40;

fn naive_terms(r: u64, n_max: usize) -> Vec<BigInt> {
    let mut u = vec![BigInt::zero(), BigInt::one()];
    for k in 2..=n_max {
        let next = BigInt::from(r) * &u[k - 1] + &u[k - 2];
        u.push(next);
    }
    u.truncate(n_max + 1);
    u
}

/// Every `(n1, n2, n3, n4)` with `index_cap ≥ n1 > n2 ≥ n3 ≥ n4 ≥ 0` solving `eq`, for each
/// `r` in `r_range`. Slots past `eq.arity` stay at index 0. Same order as the engine.
pub fn brute_force_search(
    eq: &CanonicalEquation,
    r_range: std::ops::RangeInclusive<u64>,
    index_cap: u64,
) -> Result<Vec<SporadicSolution>> {
    if index_cap > INDEX_CAP_LIMIT {
        return Err(Error::IndexCapTooLarge {
            cap: index_cap,
            limit: INDEX_CAP_LIMIT,
        });
    }
    let cap = index_cap as usize;
    let branch = eq.tag();
    let mut out = Vec::new();
    for r in r_range {
        if r == 0 {
            continue;
        }
        let u = naive_terms(r, cap.max(1));
        let top = |slot: usize| if slot < eq.arity { cap } else { 0 };
        for n1 in 1..=cap {
            for n2 in 0..n1.min(top(1) + 1) {
                for n3 in 0..=n2.min(top(2)) {
                    for n4 in 0..=n3.min(top(3)) {
                        let idx = [n1, n2, n3, n4];
                        let sum: BigInt = eq
                            .coeffs
                            .iter()
                            .zip(idx)
                            .map(|(&c, i)| BigInt::from(c) * &u[i])
                            .sum();
                        if sum.is_zero() {
                            out.push(SporadicSolution {
                                r,
                                indices: idx.map(|i| i as u64),
                                coeffs: eq.coeffs,
                                branch: branch.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Long division of `Σ coeffs[i]·X^i` (constant term first) by `X² − rX − 1`.
///
/// Returns the quotient (constant term first) and the remainder `u·X + v` as `(u, v)`.
pub fn poly_divide(coeffs: &[BigInt], params: LucasParams) -> (Vec<BigInt>, (BigInt, BigInt)) {
    let r = BigInt::from(params.r());
    let mut rem: Vec<BigInt> = coeffs.to_vec();
    while rem.len() < 2 {
        rem.push(BigInt::zero());
    }
    let deg = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); deg.saturating_sub(1).max(1)];
    // eliminate from the top down: c·X^d = c·X^{d−2}·(X² − rX − 1) + c·r·X^{d−1} + c·X^{d−2}
    for d in (2..=deg).rev() {
        let c = std::mem::take(&mut rem[d]);
        if c.is_zero() {
            continue;
        }
        rem[d - 1] += &r * &c;
        rem[d - 2] += &c;
        quot[d - 2] = c;
    }
    let remainder = (rem[1].clone(), rem[0].clone());

    // dividend = quotient·(X² − rX − 1) + remainder
    let mut back = vec![BigInt::zero(); quot.len() + 2];
    for (i, q) in quot.iter().enumerate() {
        back[i + 2] += q;
        back[i + 1] -= &r * q;
        back[i] -= q;
    }
    back[1] += &remainder.0;
    back[0] += &remainder.1;
    let padded = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_default();
    let width = back.len().max(coeffs.len());
    assert!(
        (0..width).all(|i| padded(&back, i) == padded(coeffs, i)),
        "division identity failed"
    );
    (quot, remainder)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: u64) -> LucasParams {
        LucasParams::new(r).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn divides_itself() {
        let (q, rem) = poly_divide(&big(&[-1, -1, 1]), p(1));
        assert_eq!(q, big(&[1]));
        assert_eq!(rem, (BigInt::zero(), BigInt::zero()));
    }

    #[test]
    fn x4_remainder() {
        let (_, rem) = poly_divide(&big(&[0, 0, 0, 0, 1]), p(1));
        assert_eq!(rem, (BigInt::from(3), BigInt::from(2)));
    }

    #[test]
    fn quartic_fibonacci_multiple() {
        let (q, rem) = poly_divide(&big(&[-1, -1, 0, -1, 1]), p(1));
        assert_eq!(rem, (BigInt::zero(), BigInt::zero()));
        // X^4 − X^3 − X − 1 = (X² − X − 1)(X² + 1)
        assert_eq!(q, big(&[1, 0, 1]));
    }

    #[test]
    fn low_degree_is_its_own_remainder() {
        let (q, rem) = poly_divide(&big(&[5]), p(3));
        assert_eq!(q, big(&[0]));
        assert_eq!(rem, (BigInt::zero(), BigInt::from(5)));
        let (_, rem) = poly_divide(&big(&[4, -7]), p(3));
        assert_eq!(rem, (BigInt::from(-7), BigInt::from(4)));
    }

    #[test]
    fn brute_force_examples() {
        let fib = CanonicalEquation::from_coeffs([1, -1, -1, 0]);
        let sols = brute_force_search(&fib, 1..=1, 6).unwrap();
        for idx in [[3, 2, 1], [4, 3, 2], [5, 4, 3]] {
            assert!(sols.iter().any(|s| s.indices[..3] == idx), "{idx:?}");
        }
        let pos = CanonicalEquation::from_coeffs([1, 1, 1, 1]);
        assert!(brute_force_search(&pos, 1..=5, 10).unwrap().is_empty());
        let r3 = CanonicalEquation::from_coeffs([1, -1, -1, -1]);
        let sols = brute_force_search(&r3, 3..=3, 4).unwrap();
        assert!(sols.iter().any(|s| s.indices == [2, 1, 1, 1]));
    }

    #[test]
    fn cap_limit() {
        let eq = CanonicalEquation::from_coeffs([1, -1, 0, 0]);
        assert!(matches!(
            brute_force_search(&eq, 1..=1, INDEX_CAP_LIMIT + 1),
            Err(Error::IndexCapTooLarge { .. })
        ));
    }
}
