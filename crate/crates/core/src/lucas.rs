//! Exact Lucas sequence terms `U_0 = 0, U_1 = 1, U_{k+2} = r·U_{k+1} + U_k`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The recurrence coefficient `r ≥ 1` of one Lucas sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LucasParams {
    r: u64,
}

impl LucasParams {
    pub fn new(r: u64) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroRecurrenceCoefficient);
        }
        Ok(Self { r })
    }

    pub fn r(self) -> u64 {
        self.r
    }

    /// `r² + 4`, the discriminant of `X² − rX − 1`.
    pub fn discriminant(self) -> BigInt {
        let r = BigInt::from(self.r);
        &r * &r + 4
    }
}

/// Memoized prefix `U_0, …, U_N` of one sequence. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LucasTable {
    params: LucasParams,
    terms: Vec<BigInt>,
}

impl LucasTable {
    pub fn new(params: LucasParams, n_max: usize) -> Self {
        let r = BigInt::from(params.r());
        let mut terms = Vec::with_capacity(n_max.max(1) + 1);
        terms.push(BigInt::zero());
        terms.push(BigInt::one());
        while terms.len() <= n_max {
            let k = terms.len();
            let next = &r * &terms[k - 1] + &terms[k - 2];
            terms.push(next);
        }
        Self { params, terms }
    }

    pub fn params(&self) -> LucasParams {
        self.params
    }

    pub fn r(&self) -> u64 {
        self.params.r()
    }

    /// Largest stored index.
    pub fn n_max(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.terms.get(n)
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }
}

impl std::ops::Index<usize> for LucasTable {
    type Output = BigInt;

    fn index(&self, n: usize) -> &BigInt {
        &self.terms[n]
    }
}

/// `U_n` for any integer `n`; negative indices follow `U_{−n} = (−1)^{n+1}·U_n`, so
/// `U_{−1} = 1` and `U_{−2} = −r`.
pub fn lucas_term(params: LucasParams, n: i64) -> Result<BigInt> {
    if n == i64::MIN {
        return Err(Error::IndexOutOfRange(n));
    }
    let k = n.unsigned_abs();
    let r = BigInt::from(params.r());
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    if k == 0 {
        return Ok(prev);
    }
    for _ in 1..k {
        let next = &r * &cur + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(if n < 0 && k.is_multiple_of(2) { -cur } else { cur })
}

/// `U_0 … U_{n_max}` as a shareable table.
pub fn lucas_prefix(params: LucasParams, n_max: usize) -> LucasTable {
    LucasTable::new(params, n_max)
}

/// `gcd(U_n, U_m)`, which equals `U_{gcd(n, m)}`.
pub fn lucas_gcd(params: LucasParams, n: u64, m: u64) -> Result<BigInt> {
    if n == 0 || m == 0 {
        return Err(Error::NonPositiveIndex(n, m));
    }
    let a = lucas_term(params, n as i64)?;
    let b = lucas_term(params, m as i64)?;
    Ok(a.gcd(&b))
}

/// Coordinates `(U_k, U_{k−1})` with `α^k = U_k·α + U_{k−1}`, for `k ≥ −1`.
fn alpha_power_coords(params: LucasParams, k: i64) -> (BigInt, BigInt) {
    if k == -1 {
        // U_{-2} = U_0 - r·U_{-1}
        return (BigInt::one(), -BigInt::from(params.r()));
    }
    let table = LucasTable::new(params, (k as usize).max(1));
    let prev = if k == 0 {
        BigInt::one()
    } else {
        table[k as usize - 1].clone()
    };
    (table[k as usize].clone(), prev)
}

/// Exact comparison of `α^k` against an integer, where `α = (r + √(r²+4))/2` and `k ≥ −1`.
///
/// Writes `2α^k = (r·U_k + 2·U_{k−1}) + U_k·√D` and compares after isolating the surd.
pub fn cmp_alpha_power(params: LucasParams, k: i64, value: &BigInt) -> Ordering {
    let (u, v) = alpha_power_coords(params, k);
    let r = BigInt::from(params.r());
    // α^k ⋚ value  ⇔  u·√D ⋚ rhs
    let rhs: BigInt = 2 * value - &r * &u - 2 * &v;
    let lhs_sq = params.discriminant() * &u * &u;
    debug_assert!(!u.is_negative());
    if rhs.is_negative() {
        return Ordering::Greater;
    }
    // both sides nonnegative: compare squares
    lhs_sq.cmp(&(&rhs * &rhs))
}

/// Whether `α^{n−2} ≤ U_n ≤ α^{n−1}` holds, decided exactly.
pub fn binet_bounds_hold(params: LucasParams, n: u64) -> bool {
    assert!(n >= 1, "the inequality is stated for positive n");
    let u = match lucas_term(params, n as i64) {
        Ok(u) => u,
        Err(_) => return false,
    };
    let lower = cmp_alpha_power(params, n as i64 - 2, &u) != Ordering::Greater;
    let upper = cmp_alpha_power(params, n as i64 - 1, &u) != Ordering::Less;
    lower && upper
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: u64) -> LucasParams {
        LucasParams::new(r).unwrap()
    }

    #[test]
    fn rejects_zero_r() {
        assert!(matches!(
            LucasParams::new(0),
            Err(Error::ZeroRecurrenceCoefficient)
        ));
    }

    #[test]
    fn term_examples() {
        for r in 1..10 {
            assert_eq!(lucas_term(p(r), 0).unwrap(), BigInt::zero());
            assert_eq!(lucas_term(p(r), 1).unwrap(), BigInt::one());
            assert_eq!(lucas_term(p(r), -1).unwrap(), BigInt::one());
        }
        assert_eq!(lucas_term(p(3), 2).unwrap(), BigInt::from(3));
        assert_eq!(lucas_term(p(1), 10).unwrap(), BigInt::from(55));
        assert_eq!(lucas_term(p(2), 5).unwrap(), BigInt::from(29));
    }

    #[test]
    fn negative_indices_run_backwards() {
        for r in 1..10 {
            assert_eq!(lucas_term(p(r), -2).unwrap(), -BigInt::from(r));
            for k in -12i64..0 {
                let lhs = lucas_term(p(r), k).unwrap();
                let rhs = lucas_term(p(r), k + 2).unwrap()
                    - BigInt::from(r) * lucas_term(p(r), k + 1).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert!(matches!(
            lucas_term(p(1), i64::MIN),
            Err(Error::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn prefix_examples() {
        let as_i64 = |t: &LucasTable| -> Vec<i64> {
            t.terms().iter().map(|x| x.try_into().unwrap()).collect()
        };
        assert_eq!(as_i64(&lucas_prefix(p(1), 5)), vec![0, 1, 1, 2, 3, 5]);
        assert_eq!(as_i64(&lucas_prefix(p(2), 3)), vec![0, 1, 2, 5]);
        assert_eq!(as_i64(&lucas_prefix(p(7), 1)), vec![0, 1]);
    }

    #[test]
    fn prefix_matches_term() {
        for r in [1, 2, 5, 14] {
            let t = lucas_prefix(p(r), 40);
            for n in 0..=40 {
                assert_eq!(t[n], lucas_term(p(r), n as i64).unwrap());
            }
        }
    }

    #[test]
    fn backward_extension_is_consistent() {
        for r in 1..20 {
            let u_m1 = lucas_term(p(r), -1).unwrap();
            let u0 = lucas_term(p(r), 0).unwrap();
            let u1 = lucas_term(p(r), 1).unwrap();
            assert_eq!(u1, BigInt::from(r) * u0 + u_m1);
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(lucas_gcd(p(1), 10, 15).unwrap(), BigInt::from(5));
        assert_eq!(lucas_gcd(p(2), 4, 6).unwrap(), BigInt::from(2));
        for k in 1..20 {
            assert_eq!(
                lucas_gcd(p(3), k, k).unwrap(),
                lucas_term(p(3), k as i64).unwrap()
            );
        }
        assert!(lucas_gcd(p(1), 0, 4).is_err());
        assert!(lucas_gcd(p(1), 4, 0).is_err());
    }

    #[test]
    fn alpha_power_comparisons() {
        // α^0 = 1 exactly
        assert_eq!(cmp_alpha_power(p(1), 0, &BigInt::one()), Ordering::Equal);
        // φ ≈ 1.618, φ^{-1} ≈ 0.618, φ^5 ≈ 11.09
        assert_eq!(
            cmp_alpha_power(p(1), 1, &BigInt::from(1)),
            Ordering::Greater
        );
        assert_eq!(cmp_alpha_power(p(1), 1, &BigInt::from(2)), Ordering::Less);
        assert_eq!(cmp_alpha_power(p(1), -1, &BigInt::from(1)), Ordering::Less);
        assert_eq!(
            cmp_alpha_power(p(1), -1, &BigInt::from(0)),
            Ordering::Greater
        );
        assert_eq!(
            cmp_alpha_power(p(1), 5, &BigInt::from(11)),
            Ordering::Greater
        );
        assert_eq!(cmp_alpha_power(p(1), 5, &BigInt::from(12)), Ordering::Less);
        // r = 2: α = 1 + √2 ≈ 2.414, α^3 ≈ 14.07
        assert_eq!(
            cmp_alpha_power(p(2), 3, &BigInt::from(14)),
            Ordering::Greater
        );
        assert_eq!(cmp_alpha_power(p(2), 3, &BigInt::from(15)), Ordering::Less);
    }

    #[test]
    fn binet_small() {
        for r in 1..=5 {
            for n in 1..=30 {
                assert!(binet_bounds_hold(p(r), n), "r={r} n={n}");
            }
        }
    }
}
