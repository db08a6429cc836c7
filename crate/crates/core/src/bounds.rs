//! Effective ceilings on `r`, on the sporadic indices and on the family exponents,
//! all as functions of the coefficient bound `X = max{|A|, |B|, |C|, |D|}`.
//!
//! Every ceiling is `⌊log N / log φ⌋` for some integer `N` built from `X`, so it is
//! computed exactly as the largest `n` with `φ^n ≤ N`. A guarded `f64` evaluation is kept
//! alongside as an independent second route.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack added before flooring in the floating-point route.
pub const FLOAT_GUARD: f64 = 1e-9;

/// Ceilings for one coefficient bound `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundSet {
    pub x: u64,
    pub r_max: u64,
    pub n4_max: u64,
    pub n3_max: u64,
    pub n2_max: u64,
    pub n1_max: u64,
    pub tri_i_max: u64,
    pub tri_j_max: u64,
    pub quad_i_max: u64,
    pub quad_j_max: u64,
    pub quad_k_max: u64,
    pub cd_zero_n_max: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SporadicCeilings {
    pub r_max: u64,
    pub n4_max: u64,
    pub n3_max: u64,
    pub n2_max: u64,
    pub n1_max: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParametricCeilings {
    pub tri_i_max: u64,
    pub tri_j_max: u64,
    pub quad_i_max: u64,
    pub quad_j_max: u64,
    pub quad_k_max: u64,
}

impl BoundSet {
    pub fn new(x: u64) -> Result<Self> {
        let s = sporadic_bounds(x)?;
        let p = parametric_bounds(x)?;
        Ok(Self {
            x,
            r_max: s.r_max,
            n4_max: s.n4_max,
            n3_max: s.n3_max,
            n2_max: s.n2_max,
            n1_max: s.n1_max,
            tri_i_max: p.tri_i_max,
            tri_j_max: p.tri_j_max,
            quad_i_max: p.quad_i_max,
            quad_j_max: p.quad_j_max,
            quad_k_max: p.quad_k_max,
            cd_zero_n_max: cd_zero_bound(x)?,
        })
    }

    /// Index ceilings collapsed to the `C = D = 0` bound.
    pub fn for_cd_zero(mut self) -> Self {
        let n = self.cd_zero_n_max;
        self.n1_max = n;
        self.n2_max = n;
        self.n3_max = n;
        self.n4_max = n;
        self
    }

    /// Every index ceiling set to `cap`; not a proven ceiling, used to compare against
    /// brute force on a box.
    pub fn uniform_box(r_max: u64, cap: u64) -> Self {
        Self {
            x: 1,
            r_max,
            n4_max: cap,
            n3_max: cap,
            n2_max: cap,
            n1_max: cap,
            tri_i_max: cap,
            tri_j_max: cap,
            quad_i_max: cap,
            quad_j_max: cap,
            quad_k_max: cap,
            cd_zero_n_max: cap,
        }
    }

    pub fn with_r_max(mut self, r_max: u64) -> Self {
        self.r_max = r_max;
        self
    }
}

/// `(coefficient, power of x)` pairs for each ceiling, i.e. `N = coefficient · x^power`.
mod args {
    pub const N4: (u64, u32) = (8, 1);
    pub const N3: (u64, u32) = (400, 3);
    pub const N2: (u64, u32) = (32_000, 5);
    pub const N1: (u64, u32) = (640_000, 6);
    // 2·log(8x) = log(64x²)
    pub const TRI_I: (u64, u32) = (64, 2);
    pub const TRI_J: (u64, u32) = (500, 3);
    pub const QUAD_I: (u64, u32) = (50, 2);
    pub const QUAD_J: (u64, u32) = (1_600, 3);
    pub const QUAD_K: (u64, u32) = (25_000, 4);
    // 2·log(x) = log(x²)
    pub const CD_ZERO: (u64, u32) = (1, 2);
    pub const CD_ZERO_OFFSET: u64 = 6;
}

fn check_x(x: u64) -> Result<()> {
    if x == 0 {
        Err(Error::ZeroCoefficientBound)
    } else {
        Ok(())
    }
}

fn argument(x: u64, (c, p): (u64, u32)) -> BigInt {
    BigInt::from(c) * BigInt::from(x).pow(p)
}

/// `⌊log N / log φ⌋` for `N ≥ 1`, exactly.
///
/// Walks `φ^k = F_k·φ + F_{k−1}` upward and stops before the first power exceeding `N`.
pub fn floor_log_phi(n: &BigInt) -> u64 {
    assert!(n >= &BigInt::one(), "log_phi needs N >= 1");
    let two_n: BigInt = 2 * n;
    // (F_{k+1}, F_k) for the candidate exponent k + 1
    let (mut f, mut f_prev) = (BigInt::one(), BigInt::zero());
    let mut k = 0u64;
    loop {
        // φ^{k+1} ≤ N  ⇔  F·√5 ≤ 2N − F − 2·F_prev
        let rhs: BigInt = &two_n - &f - 2 * &f_prev;
        if rhs.is_negative() || 5 * &f * &f > &rhs * &rhs {
            return k;
        }
        k += 1;
        let next = &f + &f_prev;
        f_prev = std::mem::replace(&mut f, next);
    }
}

/// `⌊log N / log φ + 10⁻⁹⌋` in `f64`.
pub fn floor_log_phi_f64(n: &BigInt) -> u64 {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let v = n.to_f64().expect("finite").ln() / phi.ln();
    (v + FLOAT_GUARD).floor() as u64
}

fn ceiling(x: u64, arg: (u64, u32)) -> u64 {
    floor_log_phi(&argument(x, arg))
}

pub fn sporadic_bounds(x: u64) -> Result<SporadicCeilings> {
    check_x(x)?;
    Ok(SporadicCeilings {
        r_max: 14 * x,
        n4_max: ceiling(x, args::N4),
        n3_max: ceiling(x, args::N3),
        n2_max: ceiling(x, args::N2),
        n1_max: ceiling(x, args::N1),
    })
}

pub fn parametric_bounds(x: u64) -> Result<ParametricCeilings> {
    check_x(x)?;
    Ok(ParametricCeilings {
        tri_i_max: ceiling(x, args::TRI_I),
        tri_j_max: ceiling(x, args::TRI_J),
        quad_i_max: ceiling(x, args::QUAD_I),
        quad_j_max: ceiling(x, args::QUAD_J),
        quad_k_max: ceiling(x, args::QUAD_K),
    })
}

/// Ceiling on `n` in the branch `C = D = 0`: `⌊6 + 2·log x / log φ⌋`.
pub fn cd_zero_bound(x: u64) -> Result<u64> {
    check_x(x)?;
    Ok(args::CD_ZERO_OFFSET + ceiling(x, args::CD_ZERO))
}

/// Every ceiling recomputed through the `f64` route, in `BoundSet` order.
pub fn float_route(x: u64) -> Result<BoundSet> {
    check_x(x)?;
    let f = |arg| floor_log_phi_f64(&argument(x, arg));
    Ok(BoundSet {
        x,
        r_max: 14 * x,
        n4_max: f(args::N4),
        n3_max: f(args::N3),
        n2_max: f(args::N2),
        n1_max: f(args::N1),
        tri_i_max: f(args::TRI_I),
        tri_j_max: f(args::TRI_J),
        quad_i_max: f(args::QUAD_I),
        quad_j_max: f(args::QUAD_J),
        quad_k_max: f(args::QUAD_K),
        cd_zero_n_max: args::CD_ZERO_OFFSET + f(args::CD_ZERO),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sporadic_at_one() {
        let s = sporadic_bounds(1).unwrap();
        assert_eq!((s.n4_max, s.n3_max, s.n2_max), (4, 12, 21));
        assert_eq!(s.n1_max, 27);
        assert_eq!(s.r_max, 14);
    }

    #[test]
    fn parametric_at_one() {
        let p = parametric_bounds(1).unwrap();
        assert_eq!((p.quad_i_max, p.quad_j_max, p.quad_k_max), (8, 15, 21));
        assert_eq!(p.tri_i_max, 8);
        assert_eq!(p.tri_j_max, 12);
    }

    #[test]
    fn cd_zero_examples() {
        assert_eq!(cd_zero_bound(1).unwrap(), 6);
        assert_eq!(cd_zero_bound(5).unwrap(), 12);
        assert_eq!(cd_zero_bound(100).unwrap(), 25);
    }

    #[test]
    fn rejects_zero_x() {
        assert!(sporadic_bounds(0).is_err());
        assert!(parametric_bounds(0).is_err());
        assert!(cd_zero_bound(0).is_err());
        assert!(BoundSet::new(0).is_err());
    }

    #[test]
    fn floor_log_phi_small() {
        // φ^0 = 1, φ^1 ≈ 1.618, φ^2 ≈ 2.618, φ^3 ≈ 4.236, φ^4 ≈ 6.854
        let cases = [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (6, 3), (7, 4)];
        for (n, want) in cases {
            assert_eq!(floor_log_phi(&BigInt::from(n)), want, "N={n}");
        }
    }

    #[test]
    fn exact_and_float_routes_agree() {
        let xs = (1..=2000).chain([10_000, 65_536, 123_457, 1_000_000]);
        for x in xs {
            assert_eq!(BoundSet::new(x).unwrap(), float_route(x).unwrap(), "x={x}");
        }
    }

    #[test]
    fn ceilings_are_ordered() {
        for x in 1..=500 {
            let b = BoundSet::new(x).unwrap();
            assert!(b.n4_max <= b.n3_max && b.n3_max <= b.n2_max && b.n2_max <= b.n1_max);
            assert!(b.quad_i_max <= b.quad_j_max && b.quad_j_max <= b.quad_k_max);
            assert!(b.cd_zero_n_max <= b.n1_max);
        }
    }

    #[test]
    fn cd_zero_restriction() {
        let b = BoundSet::new(3).unwrap().for_cd_zero();
        assert_eq!(b.n1_max, cd_zero_bound(3).unwrap());
        assert_eq!(b.n4_max, b.n1_max);
    }
}
