//! Parametric families: lacunary integer polynomials divisible by `X² − rX − 1`.
//!
//! Modulo `X² − rX − 1` every power reduces to `X^e ≡ U_e·X + U_{e−1}`, so a polynomial
//! `Σ c_t·X^{e_t}` is a multiple exactly when both `Σ c_t·U_{e_t}` and `Σ c_t·U_{e_t − 1}`
//! vanish. When it is, `Σ c_t·U_{n + e_t} = 0` for every shift `n ≥ 0`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::BoundSet;
use crate::error::{Error, Result};
use crate::lucas::{lucas_prefix, lucas_term, LucasParams, LucasTable};

/// Remainder coordinates `(U_e, U_{e−1})` of `X^e` modulo `X² − rX − 1`.
pub fn reduce_power(params: LucasParams, e: u64) -> (BigInt, BigInt) {
    let e = e as i64;
    let u = lucas_term(params, e).expect("e >= 0");
    let v = lucas_term(params, e - 1).expect("e - 1 >= -1");
    (u, v)
}

/// A sparse polynomial `Σ c_t·X^{e_t}` with strictly decreasing exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LacunaryPoly {
    terms: Vec<(u64, i64)>,
}

impl LacunaryPoly {
    /// `coeffs[t]·X^{exponents[t]}`; exponents must strictly decrease and the leading
    /// coefficient must be nonzero.
    pub fn new(coeffs: &[i64], exponents: &[u64]) -> Result<Self> {
        if coeffs.len() != exponents.len() || coeffs.is_empty() {
            return Err(Error::MalformedExponents(format!(
                "{} coefficients for {} exponents",
                coeffs.len(),
                exponents.len()
            )));
        }
        if exponents.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::MalformedExponents(format!(
                "exponents {exponents:?} are not strictly decreasing"
            )));
        }
        if coeffs[0] == 0 {
            return Err(Error::MalformedExponents(
                "leading coefficient is zero".into(),
            ));
        }
        Ok(Self {
            terms: exponents
                .iter()
                .copied()
                .zip(coeffs.iter().copied())
                .collect(),
        })
    }

    pub fn terms(&self) -> &[(u64, i64)] {
        &self.terms
    }

    pub fn degree(&self) -> u64 {
        self.terms[0].0
    }

    /// Drops zero terms, divides by the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        let terms: Vec<(u64, i64)> = self.terms.iter().copied().filter(|t| t.1 != 0).collect();
        let g = terms.iter().fold(0i64, |g, t| g.gcd(&t.1)).max(1);
        let sign = terms[0].1.signum();
        Self {
            terms: terms.into_iter().map(|(e, c)| (e, sign * c / g)).collect(),
        }
    }

    /// Dense coefficients, constant term first.
    pub fn dense(&self) -> Vec<i64> {
        let mut out = vec![0; self.degree() as usize + 1];
        for &(e, c) in &self.terms {
            out[e as usize] += c;
        }
        out
    }

    /// `(Σ c·U_e, Σ c·U_{e−1})`, the remainder `u·X + v` modulo `X² − rX − 1`.
    pub fn remainder(&self, params: LucasParams) -> (BigInt, BigInt) {
        let mut u = BigInt::zero();
        let mut v = BigInt::zero();
        for &(e, c) in &self.terms {
            let (pu, pv) = reduce_power(params, e);
            u += c * pu;
            v += c * pv;
        }
        (u, v)
    }

    pub fn is_multiple_of(&self, params: LucasParams) -> bool {
        let (u, v) = self.remainder(params);
        u.is_zero() && v.is_zero()
    }
}

impl fmt::Display for LacunaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(e, c) in &self.terms {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            match (first, c < 0) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            match (mag, e) {
                (m, 0) => write!(f, "{m}")?,
                (1, 1) => f.write_str("X")?,
                (m, 1) => write!(f, "{m}X")?,
                (1, e) => write!(f, "X^{e}")?,
                (m, e) => write!(f, "{m}X^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Whether `Σ coeffs[t]·X^{exponents[t]}` is a multiple of `X² − rX − 1`.
pub fn is_multiple(coeffs: &[i64], exponents: &[u64], params: LucasParams) -> Result<bool> {
    Ok(LacunaryPoly::new(coeffs, exponents)?.is_multiple_of(params))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// `A1·U_{n+j} + A2·U_{n+i} + A3·U_n = 0`; a fourth slot, if any, sits at index 0.
    ThreeTerm,
    /// `A1·U_{n+k} + A2·U_{n+j} + A3·U_{n+i} + A4·U_n = 0`.
    FourTerm,
}

impl FamilyKind {
    fn arity(self) -> usize {
        match self {
            FamilyKind::ThreeTerm => 3,
            FamilyKind::FourTerm => 4,
        }
    }
}

/// An identity in Lucas terms holding for every shift `n ≥ 0`.
///
/// `exponents` is ascending (`(i, j)` or `(i, j, k)`) and `coeffs` runs from the highest
/// term down to the `U_n` term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParametricFamily {
    pub r: u64,
    pub kind: FamilyKind,
    pub exponents: Vec<u64>,
    pub coeffs: Vec<i64>,
}

impl ParametricFamily {
    pub fn new(r: u64, kind: FamilyKind, exponents: Vec<u64>, coeffs: Vec<i64>) -> Result<Self> {
        let want = kind.arity();
        if exponents.len() != want - 1 || coeffs.len() != want {
            return Err(Error::MalformedExponents(format!(
                "{kind:?} needs {} exponents and {want} coefficients",
                want - 1
            )));
        }
        if exponents.first() == Some(&0) || exponents.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::MalformedExponents(format!(
                "exponents {exponents:?} must satisfy 0 < i < j (< k)"
            )));
        }
        if coeffs[0] == 0 {
            return Err(Error::MalformedExponents(
                "leading coefficient is zero".into(),
            ));
        }
        Ok(Self {
            r,
            kind,
            exponents,
            coeffs,
        })
    }

    /// Offsets of each term from the shift `n`, highest first, ending with 0.
    pub fn offsets(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.exponents.iter().rev().copied().collect();
        out.push(0);
        out
    }

    pub fn poly(&self) -> LacunaryPoly {
        LacunaryPoly::new(&self.coeffs, &self.offsets()).expect("family shape checked")
    }

    /// `Σ A_t·U_{n + offset_t}` at one shift.
    pub fn residual_at(&self, table: &LucasTable, shift: u64) -> BigInt {
        self.offsets()
            .iter()
            .zip(&self.coeffs)
            .map(|(&e, &c)| c * &table[(shift + e) as usize])
            .sum()
    }

    /// e.g. `U_{n+4} - U_{n+3} - U_{n+1} - U_n = 0`.
    pub fn identity(&self) -> String {
        let mut s = String::new();
        for (t, (&e, &c)) in self.offsets().iter().zip(&self.coeffs).enumerate() {
            if c == 0 {
                continue;
            }
            let idx = if e == 0 {
                "n".to_string()
            } else {
                format!("n+{e}")
            };
            let mag = c.unsigned_abs();
            let coef = if mag == 1 {
                String::new()
            } else {
                format!("{mag}·")
            };
            match (t == 0 || s.is_empty(), c < 0) {
                (true, true) => s.push('-'),
                (true, false) => {}
                (false, true) => s.push_str(" - "),
                (false, false) => s.push_str(" + "),
            }
            s.push_str(&format!("{coef}U_{{{idx}}}"));
        }
        s.push_str(" = 0");
        s
    }
}

/// Checks the family's identity exactly for every shift `n ∈ [0, depth]`.
pub fn verify_family(fam: &ParametricFamily, depth: u64) -> bool {
    let Ok(params) = LucasParams::new(fam.r) else {
        return false;
    };
    let top = fam.exponents.last().copied().unwrap_or(0);
    let table = lucas_prefix(params, (depth + top).max(1) as usize);
    (0..=depth).all(|n| fam.residual_at(&table, n).is_zero())
}

/// Which coefficient tuples a family search ranges over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffDomain {
    /// Leading coefficient in `[1, h]`, the others in `[−h, h]`, constant term nonzero.
    /// Families are reported once per primitive polynomial.
    Box(i64),
    /// One fixed canonical coefficient tuple of the given arity. Four-term families use all
    /// four slots; three-term families use the first three with the fourth pinned at index 0.
    Tuple { coeffs: [i64; 4], arity: usize },
}

/// Exponent pairs `(larger, smaller)` for three-term families, under both readings of
/// which coefficient carries which ceiling.
pub fn three_term_exponents(bounds: &BoundSet) -> BTreeSet<(u64, u64)> {
    let (ci, cj) = (bounds.tri_i_max, bounds.tri_j_max);
    let mut out = BTreeSet::new();
    for hi in 2..=ci.max(cj) {
        for lo in 1..hi {
            if (hi <= cj && lo <= ci) || (hi <= ci && lo <= cj) {
                out.insert((hi, lo));
            }
        }
    }
    out
}

/// Exponent triples `(k, j, i)` with `0 < i < j < k` inside the four-term ceilings.
pub fn four_term_exponents(bounds: &BoundSet) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for k in 3..=bounds.quad_k_max {
        for j in 2..k.min(bounds.quad_j_max + 1) {
            for i in 1..j.min(bounds.quad_i_max + 1) {
                out.push((k, j, i));
            }
        }
    }
    out
}

/// All families for `r ∈ [1, r_max]` with exponents inside `bounds`, sorted.
pub fn find_families(domain: &CoeffDomain, bounds: &BoundSet) -> Vec<ParametricFamily> {
    let tri = three_term_exponents(bounds);
    let quad = four_term_exponents(bounds);
    let top = bounds
        .quad_k_max
        .max(bounds.tri_i_max)
        .max(bounds.tri_j_max) as usize;
    let mut out: Vec<ParametricFamily> = (1..=bounds.r_max)
        .into_par_iter()
        .flat_map_iter(|r| {
            let params = LucasParams::new(r).expect("r >= 1");
            let table = lucas_prefix(params, top.max(1));
            let found = match domain {
                CoeffDomain::Box(h) => box_families(&table, *h, &tri, &quad),
                CoeffDomain::Tuple { coeffs, arity } => {
                    tuple_families(&table, coeffs, *arity, &tri, &quad)
                }
            };
            found.into_iter().filter(|f| verify_family(f, 2))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `U_{e−1}` with `U_{−1} = 1`.
fn prev(table: &LucasTable, e: u64) -> BigInt {
    if e == 0 {
        BigInt::one()
    } else {
        table[e as usize - 1].clone()
    }
}

fn small(v: &BigInt, h: i64) -> Option<i64> {
    v.to_i64().filter(|c| c.abs() <= h)
}

fn box_families(
    table: &LucasTable,
    h: i64,
    tri: &BTreeSet<(u64, u64)>,
    quad: &[(u64, u64, u64)],
) -> Vec<ParametricFamily> {
    let r = table.r();
    let mut polys: BTreeSet<LacunaryPoly> = BTreeSet::new();
    let u = |e: u64| &table[e as usize];

    for &(hi, lo) in tri {
        for a1 in 1..=h {
            // a1·U_hi + a2·U_lo = 0
            let (q, rem) = (-(a1 * u(hi))).div_rem(u(lo));
            let Some(a2) = rem.is_zero().then_some(q).and_then(|q| small(&q, h)) else {
                continue;
            };
            // a1·U_{hi−1} + a2·U_{lo−1} + a3·U_{−1} = 0
            let a3 = -(a1 * prev(table, hi) + a2 * prev(table, lo));
            let Some(a3) = small(&a3, h) else { continue };
            if a2 == 0 || a3 == 0 {
                continue;
            }
            let p = LacunaryPoly::new(&[a1, a2, a3], &[hi, lo, 0]).expect("shape");
            polys.insert(p.primitive());
        }
    }

    for &(k, j, i) in quad {
        for a1 in 1..=h {
            for a2 in -h..=h {
                let (q, rem) = (-(a1 * u(k) + a2 * u(j))).div_rem(u(i));
                let Some(a3) = rem.is_zero().then_some(q).and_then(|q| small(&q, h)) else {
                    continue;
                };
                let a4 = -(a1 * prev(table, k) + a2 * prev(table, j) + a3 * prev(table, i));
                let Some(a4) = small(&a4, h) else { continue };
                if a4 == 0 {
                    continue;
                }
                let p = LacunaryPoly::new(&[a1, a2, a3, a4], &[k, j, i, 0]).expect("shape");
                polys.insert(p.primitive());
            }
        }
    }

    let params = table.params();
    polys
        .into_iter()
        .filter(|p| p.is_multiple_of(params))
        .filter_map(|p| family_from_poly(r, &p))
        .collect()
}

/// A family from a primitive polynomial with nonzero constant term.
fn family_from_poly(r: u64, p: &LacunaryPoly) -> Option<ParametricFamily> {
    let terms = p.terms();
    let kind = match terms.len() {
        3 => FamilyKind::ThreeTerm,
        4 => FamilyKind::FourTerm,
        _ => return None,
    };
    if terms.last()?.0 != 0 {
        return None;
    }
    let exponents: Vec<u64> = terms[..terms.len() - 1].iter().rev().map(|t| t.0).collect();
    let coeffs: Vec<i64> = terms.iter().map(|t| t.1).collect();
    ParametricFamily::new(r, kind, exponents, coeffs).ok()
}

fn tuple_families(
    table: &LucasTable,
    coeffs: &[i64; 4],
    arity: usize,
    tri: &BTreeSet<(u64, u64)>,
    quad: &[(u64, u64, u64)],
) -> Vec<ParametricFamily> {
    let params = table.params();
    let r = table.r();
    let mut out = Vec::new();
    if coeffs[0] == 0 || arity < 3 {
        return out;
    }
    for &(hi, lo) in tri {
        let c = &coeffs[..3];
        if is_multiple(c, &[hi, lo, 0], params).unwrap_or(false) {
            out.extend(ParametricFamily::new(
                r,
                FamilyKind::ThreeTerm,
                vec![lo, hi],
                c.to_vec(),
            ));
        }
    }
    if arity == 4 {
        for &(k, j, i) in quad {
            if is_multiple(coeffs, &[k, j, i, 0], params).unwrap_or(false) {
                out.extend(ParametricFamily::new(
                    r,
                    FamilyKind::FourTerm,
                    vec![i, j, k],
                    coeffs.to_vec(),
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: u64) -> LucasParams {
        LucasParams::new(r).unwrap()
    }

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn reduce_power_examples() {
        for r in 1..=14 {
            assert_eq!(reduce_power(p(r), 0), (bi(0), bi(1)));
            assert_eq!(reduce_power(p(r), 2), (bi(r as i64), bi(1)));
        }
        assert_eq!(reduce_power(p(1), 4), (bi(3), bi(2)));
    }

    #[test]
    fn is_multiple_examples() {
        assert!(is_multiple(&[1, -1, -1], &[2, 1, 0], p(1)).unwrap());
        assert!(is_multiple(&[1, -1, -1, -1], &[4, 3, 1, 0], p(1)).unwrap());
        assert!(!is_multiple(&[1, -1, -1], &[2, 1, 0], p(2)).unwrap());
    }

    #[test]
    fn is_multiple_rejects_malformed() {
        assert!(is_multiple(&[1, -1], &[1, 2], p(1)).is_err());
        assert!(is_multiple(&[1, -1], &[2, 2], p(1)).is_err());
        assert!(is_multiple(&[0, -1], &[2, 0], p(1)).is_err());
        assert!(is_multiple(&[1, -1, 1], &[2, 0], p(1)).is_err());
    }

    #[test]
    fn primitive_normalizes_sign_and_content() {
        let poly = LacunaryPoly::new(&[-2, 0, 2, 2], &[3, 2, 1, 0]).unwrap();
        assert_eq!(poly.primitive().terms(), &[(3, 1), (1, -1), (0, -1)]);
    }

    #[test]
    fn display() {
        let poly = LacunaryPoly::new(&[1, -1, -1, -1], &[4, 3, 1, 0]).unwrap();
        assert_eq!(poly.to_string(), "X^4 - X^3 - X - 1");
        let poly = LacunaryPoly::new(&[2, -3], &[1, 0]).unwrap();
        assert_eq!(poly.to_string(), "2X - 3");
    }

    #[test]
    fn verify_family_examples() {
        let golden =
            ParametricFamily::new(1, FamilyKind::ThreeTerm, vec![1, 2], vec![1, -1, -1]).unwrap();
        assert!(verify_family(&golden, 200));
        assert_eq!(golden.identity(), "U_{n+2} - U_{n+1} - U_{n} = 0");
        let quartic =
            ParametricFamily::new(1, FamilyKind::FourTerm, vec![1, 3, 4], vec![1, -1, -1, -1])
                .unwrap();
        assert!(verify_family(&quartic, 200));
        let perturbed =
            ParametricFamily::new(1, FamilyKind::FourTerm, vec![2, 3, 4], vec![1, -1, -1, -1])
                .unwrap();
        assert!(!verify_family(&perturbed, 2));
    }

    #[test]
    fn family_shape_is_checked() {
        assert!(
            ParametricFamily::new(1, FamilyKind::ThreeTerm, vec![2, 1], vec![1, -1, -1]).is_err()
        );
        assert!(
            ParametricFamily::new(1, FamilyKind::ThreeTerm, vec![0, 1], vec![1, -1, -1]).is_err()
        );
        assert!(
            ParametricFamily::new(1, FamilyKind::FourTerm, vec![1, 2], vec![1, -1, -1]).is_err()
        );
    }

    #[test]
    fn unit_box_finds_the_two_fibonacci_families() {
        let bounds = BoundSet::new(1).unwrap();
        let fams = find_families(&CoeffDomain::Box(1), &bounds);
        let polys: Vec<(u64, String)> = fams.iter().map(|f| (f.r, f.poly().to_string())).collect();
        assert_eq!(
            polys,
            vec![
                (1, "X^2 - X - 1".to_string()),
                (1, "X^4 - X^3 - X - 1".to_string())
            ]
        );
        assert!(fams.iter().all(|f| verify_family(f, 500)));
    }

    #[test]
    fn unit_box_restricted_to_pell_is_empty() {
        let bounds = BoundSet::new(1).unwrap();
        let fams = find_families(&CoeffDomain::Box(1), &bounds);
        assert!(fams.iter().all(|f| f.r != 2));
    }

    #[test]
    fn defining_polynomial_is_found_for_every_r() {
        let bounds = BoundSet::new(1).unwrap();
        for r in 1..=14 {
            let dom = CoeffDomain::Tuple {
                coeffs: [1, -(r as i64), -1, 0],
                arity: 3,
            };
            let fams: Vec<_> = find_families(&dom, &bounds)
                .into_iter()
                .filter(|f| f.r == r)
                .collect();
            assert_eq!(fams.len(), 1, "r={r}");
            assert_eq!(fams[0].exponents, vec![1, 2]);
        }
    }

    #[test]
    fn three_term_readings_union() {
        let b = BoundSet::new(1).unwrap();
        let pairs = three_term_exponents(&b);
        assert!(pairs.contains(&(12, 8)));
        assert!(!pairs.contains(&(12, 9)));
        assert!(!pairs.contains(&(13, 1)));
        assert!(pairs.iter().all(|&(hi, lo)| lo < hi && lo >= 1));
    }

    #[test]
    fn dense_layout() {
        let poly = LacunaryPoly::new(&[1, -1, -1, -1], &[4, 3, 1, 0]).unwrap();
        assert_eq!(poly.dense(), vec![-1, -1, 0, -1, 1]);
    }
}
