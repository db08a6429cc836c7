//! Reduction of `A·U_n + B·U_m = C·U_{n1} + D·U_{m1}` to sorted vanishing sums
//! `A1·U_{n1} + A2·U_{n2} + A3·U_{n3} + A4·U_{n4} = 0`, one per relative ordering of the
//! index variables, and the way back.
//!
//! Every weak ordering of the variables that is compatible with `n > m` and `n1 > m1` gives
//! one branch. Tied variables share a slot and their coefficients add up. A variable whose
//! coefficient is zero plays no part in the equation and is reported as free.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lucas::{lucas_term, LucasParams};
use crate::sporadic::SporadicSolution;

/// One of the four index variables of the original equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    N,
    M,
    N1,
    M1,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::N, Var::M, Var::N1, Var::M1];

    fn name(self) -> &'static str {
        match self {
            Var::N => "n",
            Var::M => "m",
            Var::N1 => "n1",
            Var::M1 => "m1",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Coefficients of `A·U_n + B·U_m = C·U_{n1} + D·U_{m1}` with `A, B ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl ProblemSpec {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let spec = Self { a, b, c, d };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.a == 0 {
            return Err(Error::ZeroCoefficient("A"));
        }
        if self.b == 0 {
            return Err(Error::ZeroCoefficient("B"));
        }
        Ok(())
    }

    /// `X = max{|A|, |B|, |C|, |D|}`.
    pub fn x(&self) -> u64 {
        [self.a, self.b, self.c, self.d]
            .iter()
            .map(|v| v.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// Coefficient of `var` once everything is moved to the left: `(a, b, −c, −d)`.
    pub fn signed_coeff(&self, var: Var) -> i64 {
        match var {
            Var::N => self.a,
            Var::M => self.b,
            Var::N1 => -self.c,
            Var::M1 => -self.d,
        }
    }

    /// `a·U_n + b·U_m − c·U_{n1} − d·U_{m1}` for one assignment; free variables must carry
    /// a zero coefficient and contribute nothing.
    pub fn residual(&self, r: u64, idx: &VarIndices) -> Result<BigInt> {
        let params = LucasParams::new(r)?;
        let mut total = BigInt::zero();
        for var in Var::ALL {
            let coeff = self.signed_coeff(var);
            if coeff == 0 {
                continue;
            }
            let Some(i) = idx.get(var) else {
                return Err(Error::MalformedReport(format!(
                    "variable {var} has a nonzero coefficient but no index"
                )));
            };
            total += BigInt::from(coeff) * lucas_term(params, i as i64)?;
        }
        Ok(total)
    }
}

/// Values of `(n, m, n1, m1)`; `None` marks a free variable.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct VarIndices {
    pub n: Option<u64>,
    pub m: Option<u64>,
    pub n1: Option<u64>,
    pub m1: Option<u64>,
}

impl VarIndices {
    pub fn get(&self, var: Var) -> Option<u64> {
        match var {
            Var::N => self.n,
            Var::M => self.m,
            Var::N1 => self.n1,
            Var::M1 => self.m1,
        }
    }

    fn set(&mut self, var: Var, value: u64) {
        let slot = match var {
            Var::N => &mut self.n,
            Var::M => &mut self.m,
            Var::N1 => &mut self.n1,
            Var::M1 => &mut self.m1,
        };
        *slot = Some(value);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchKind {
    /// `C = D = 0`: only `n` and `m` appear.
    CdZero,
    /// All active variables take distinct values.
    Distinct,
    /// `n = n1`, possibly with further ties.
    Collision,
    /// Some other coincidence of variables.
    Tie,
    /// A bare coefficient tuple with no original equation behind it.
    Raw,
}

/// A sorted vanishing sum `Σ coeffs[t]·U_{n_t} = 0` with `n_1 > n_2 ≥ n_3 ≥ n_4 ≥ 0`.
///
/// Only the first `arity` slots carry an index; the rest are pinned to index 0. For
/// branches produced by [`canonicalize`], `slots[t]` lists the original variables that
/// share slot `t`, and consecutive slots must be strictly ordered.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalEquation {
    pub coeffs: [i64; 4],
    pub arity: usize,
    pub effective_x: u64,
    pub kind: BranchKind,
    pub slots: Vec<Vec<Var>>,
    pub free: Vec<Var>,
    pub spec: Option<ProblemSpec>,
}

impl CanonicalEquation {
    /// A bare 4-slot equation; every slot is searched and ties between slots are allowed.
    pub fn from_coeffs(coeffs: [i64; 4]) -> Self {
        let effective_x = coeffs
            .iter()
            .map(|c| c.unsigned_abs())
            .max()
            .unwrap_or(0)
            .max(1);
        Self {
            coeffs,
            arity: 4,
            effective_x,
            kind: BranchKind::Raw,
            slots: Vec::new(),
            free: Vec::new(),
            spec: None,
        }
    }

    /// Whether consecutive slots must differ (true for every branch of a problem).
    pub fn strict(&self) -> bool {
        self.kind != BranchKind::Raw
    }

    /// Human-readable ordering, e.g. `n=n1>m>m1`.
    pub fn tag(&self) -> String {
        if self.slots.is_empty() {
            return format!("raw{:?}", self.coeffs);
        }
        let mut s = self
            .slots
            .iter()
            .map(|block| block.iter().map(|v| v.name()).collect::<Vec<_>>().join("="))
            .collect::<Vec<_>>()
            .join(">");
        if !self.free.is_empty() {
            let free: Vec<_> = self.free.iter().map(|v| v.name()).collect();
            s.push_str(&format!(";free:{}", free.join(",")));
        }
        s
    }

    /// Slot of `var`, if it is bound to one.
    pub fn slot_of(&self, var: Var) -> Option<usize> {
        self.slots.iter().position(|b| b.contains(&var))
    }
}

/// Every branch needed to cover all solutions of `spec`, in a fixed order.
pub fn canonicalize(spec: &ProblemSpec) -> Result<Vec<CanonicalEquation>> {
    spec.validate()?;
    let x = spec.x();

    if spec.c == 0 && spec.d == 0 {
        return Ok(vec![CanonicalEquation {
            coeffs: [spec.a, spec.b, 0, 0],
            arity: 2,
            effective_x: x,
            kind: BranchKind::CdZero,
            slots: vec![vec![Var::N], vec![Var::M]],
            free: vec![Var::N1, Var::M1],
            spec: Some(*spec),
        }]);
    }

    let (active, free): (Vec<Var>, Vec<Var>) =
        Var::ALL.iter().partition(|&&v| spec.signed_coeff(v) != 0);

    let mut branches: Vec<CanonicalEquation> = weak_orderings(&active)
        .into_iter()
        .filter(|blocks| respects_constraints(blocks))
        .filter_map(|blocks| branch_from_blocks(spec, x, blocks, &free))
        .collect();
    branches.sort_by_key(|b| b.tag());
    Ok(branches)
}

/// All ordered set partitions of `vars`, blocks listed from the largest index down.
fn weak_orderings(vars: &[Var]) -> Vec<Vec<Vec<Var>>> {
    let k = vars.len();
    let mut out = Vec::new();
    let total = k.pow(k as u32);
    for code in 0..total {
        let mut ranks = Vec::with_capacity(k);
        let mut c = code;
        for _ in 0..k {
            ranks.push(c % k);
            c /= k;
        }
        let used = ranks.iter().max().map_or(0, |m| m + 1);
        if (0..used).all(|r| ranks.contains(&r)) {
            let blocks = (0..used)
                .map(|r| {
                    vars.iter()
                        .zip(&ranks)
                        .filter(|(_, &rk)| rk == r)
                        .map(|(&v, _)| v)
                        .collect()
                })
                .collect();
            out.push(blocks);
        }
    }
    out
}

fn respects_constraints(blocks: &[Vec<Var>]) -> bool {
    let rank = |v: Var| blocks.iter().position(|b| b.contains(&v));
    let before = |hi: Var, lo: Var| match (rank(hi), rank(lo)) {
        (Some(h), Some(l)) => h < l,
        _ => true,
    };
    before(Var::N, Var::M) && before(Var::N1, Var::M1)
}

fn branch_from_blocks(
    spec: &ProblemSpec,
    x: u64,
    blocks: Vec<Vec<Var>>,
    free: &[Var],
) -> Option<CanonicalEquation> {
    let tied = |u: Var, v: Var| blocks.iter().any(|b| b.contains(&u) && b.contains(&v));
    // n = n1 with A = C forces A·U_n = C·U_{n1}
    if tied(Var::N, Var::N1) && spec.a == spec.c {
        return None;
    }
    let merged: Vec<i64> = blocks
        .iter()
        .map(|b| b.iter().map(|&v| spec.signed_coeff(v)).sum())
        .collect();
    // only the top slot left: A1·U_{n1} = 0 has no solution with n1 ≥ 1
    if merged[1..].iter().all(|&c| c == 0) {
        return None;
    }
    let mut coeffs = [0i64; 4];
    coeffs[..merged.len()].copy_from_slice(&merged);
    let kind = if blocks.iter().all(|b| b.len() == 1) {
        BranchKind::Distinct
    } else if tied(Var::N, Var::N1) {
        BranchKind::Collision
    } else {
        BranchKind::Tie
    };
    let effective_x = if kind == BranchKind::Distinct {
        x
    } else {
        2 * x
    };
    Some(CanonicalEquation {
        coeffs,
        arity: blocks.len(),
        effective_x,
        kind,
        slots: blocks,
        free: free.to_vec(),
        spec: Some(*spec),
    })
}

/// A solution of the original equation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OriginalSolution {
    pub r: u64,
    pub indices: VarIndices,
    pub branch: String,
}

/// Why a canonical solution does not give an original one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rejection {
    /// The equation has no original problem behind it.
    RawEquation,
    /// Slots that must differ coincide, or a pinned slot is nonzero.
    SlotOrder,
    /// `n > m ≥ 0` or `n1 > m1 ≥ 0` fails.
    IndexOrder,
    /// `A·U_n = C·U_{n1}`.
    SideCondition,
    /// The original equation does not vanish.
    NotASolution,
}

/// Map canonical indices back to `(n, m, n1, m1)` and check every side condition.
pub fn denormalize(
    sol: &SporadicSolution,
    eq: &CanonicalEquation,
) -> std::result::Result<OriginalSolution, Rejection> {
    let spec = eq.spec.ok_or(Rejection::RawEquation)?;
    let idx = &sol.indices;
    if idx[eq.arity..].iter().any(|&i| i != 0) {
        return Err(Rejection::SlotOrder);
    }
    if eq.strict() && idx[..eq.arity].windows(2).any(|w| w[0] <= w[1]) {
        return Err(Rejection::SlotOrder);
    }
    let mut vars = VarIndices::default();
    for (slot, block) in eq.slots.iter().enumerate() {
        for &v in block {
            vars.set(v, idx[slot]);
        }
    }
    check_original(&spec, sol.r, &vars)?;
    Ok(OriginalSolution {
        r: sol.r,
        indices: vars,
        branch: eq.tag(),
    })
}

/// Constraints on an original-form assignment: orderings, the side condition and the
/// equation itself.
pub fn check_original(
    spec: &ProblemSpec,
    r: u64,
    vars: &VarIndices,
) -> std::result::Result<(), Rejection> {
    let (Some(n), Some(m)) = (vars.n, vars.m) else {
        return Err(Rejection::IndexOrder);
    };
    if n <= m {
        return Err(Rejection::IndexOrder);
    }
    match (vars.n1, vars.m1) {
        (Some(n1), Some(m1)) if n1 <= m1 => return Err(Rejection::IndexOrder),
        // m1 free: some m1 < n1 must exist
        (Some(0), None) => return Err(Rejection::IndexOrder),
        _ => {}
    }
    let params = LucasParams::new(r).map_err(|_| Rejection::NotASolution)?;
    let term = |i: u64| lucas_term(params, i as i64).expect("nonnegative index");
    let lhs = BigInt::from(spec.a) * term(n);
    let rhs = match vars.n1 {
        Some(n1) => BigInt::from(spec.c) * term(n1),
        None => BigInt::zero(),
    };
    if lhs == rhs {
        return Err(Rejection::SideCondition);
    }
    match spec.residual(r, vars) {
        Ok(res) if res.is_zero() => Ok(()),
        _ => Err(Rejection::NotASolution),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(a: i64, b: i64, c: i64, d: i64) -> ProblemSpec {
        ProblemSpec::new(a, b, c, d).unwrap()
    }

    fn sol(r: u64, indices: [u64; 4], eq: &CanonicalEquation) -> SporadicSolution {
        SporadicSolution {
            r,
            indices,
            coeffs: eq.coeffs,
            branch: eq.tag(),
        }
    }

    #[test]
    fn rejects_zero_a_or_b() {
        assert!(ProblemSpec::new(0, 1, 1, 0).is_err());
        assert!(ProblemSpec::new(1, 0, 1, 0).is_err());
        let bad = ProblemSpec {
            a: 0,
            b: 1,
            c: 1,
            d: 1,
        };
        assert!(canonicalize(&bad).is_err());
    }

    #[test]
    fn weak_orderings_count() {
        // Fubini numbers
        assert_eq!(weak_orderings(&Var::ALL[..1]).len(), 1);
        assert_eq!(weak_orderings(&Var::ALL[..2]).len(), 3);
        assert_eq!(weak_orderings(&Var::ALL[..3]).len(), 13);
        assert_eq!(weak_orderings(&Var::ALL).len(), 75);
    }

    #[test]
    fn cd_zero_single_branch() {
        let branches = canonicalize(&spec(1, 1, 0, 0)).unwrap();
        assert_eq!(branches.len(), 1);
        let b = &branches[0];
        assert_eq!(b.kind, BranchKind::CdZero);
        assert_eq!(b.coeffs, [1, 1, 0, 0]);
        assert_eq!(b.arity, 2);
        assert_eq!(b.free, vec![Var::N1, Var::M1]);
    }

    #[test]
    fn symmetric_spec_branches() {
        let branches = canonicalize(&spec(1, 1, 1, 1)).unwrap();
        // n = n1 with a = c is suppressed
        assert!(branches
            .iter()
            .all(|b| b.slot_of(Var::N) != b.slot_of(Var::N1)));
        let distinct: Vec<_> = branches
            .iter()
            .filter(|b| b.kind == BranchKind::Distinct)
            .collect();
        // interleavings of n > m with n1 > m1
        assert_eq!(distinct.len(), 6);
        for b in &distinct {
            let mut sorted = b.coeffs;
            sorted.sort();
            assert_eq!(sorted, [-1, -1, 1, 1]);
            assert_eq!(b.effective_x, 1);
        }
        for b in branches.iter().filter(|b| b.kind != BranchKind::Distinct) {
            assert_eq!(b.effective_x, 2);
        }
    }

    #[test]
    fn collision_branch_for_2_1_1_0() {
        let branches = canonicalize(&spec(2, 1, 1, 0)).unwrap();
        assert!(branches.iter().all(|b| b.free == vec![Var::M1]));
        let collision: Vec<_> = branches
            .iter()
            .filter(|b| b.kind == BranchKind::Collision)
            .collect();
        assert_eq!(collision.len(), 1);
        assert_eq!(collision[0].coeffs, [1, 1, 0, 0]);
        assert_eq!(collision[0].effective_x, 4);
        let distinct: Vec<_> = branches
            .iter()
            .filter(|b| b.kind == BranchKind::Distinct)
            .collect();
        // n > m with n1 anywhere relative to them
        assert_eq!(distinct.len(), 3);
        for b in distinct {
            let mut sorted = b.coeffs[..3].to_vec();
            sorted.sort();
            assert_eq!(sorted, vec![-1, 1, 2]);
        }
    }

    #[test]
    fn no_branch_below_x() {
        for (a, b, c, d) in [(1, 1, 1, 1), (2, -1, 1, 0), (1, -3, 0, 2), (5, 1, 1, 1)] {
            let s = spec(a, b, c, d);
            for br in canonicalize(&s).unwrap() {
                assert!(br.effective_x >= s.x());
            }
        }
    }

    #[test]
    fn identity_branch_passes_through() {
        // U_n + U_m = U_{n1} + U_{m1} with n1 > n > m > m1: F_3 + F_2 = F_4 + F_0
        let s = spec(1, 1, 1, 1);
        let eq = canonicalize(&s)
            .unwrap()
            .into_iter()
            .find(|b| b.tag() == "n1>n>m>m1")
            .unwrap();
        assert_eq!(eq.coeffs, [-1, 1, 1, -1]);
        let out = denormalize(&sol(1, [4, 3, 2, 0], &eq), &eq).unwrap();
        assert_eq!(
            out.indices,
            VarIndices {
                n: Some(3),
                m: Some(2),
                n1: Some(4),
                m1: Some(0)
            }
        );
    }

    #[test]
    fn rejects_equal_n_and_m() {
        // raw check: n = m violates n > m
        let s = spec(1, -1, 1, -1);
        let v = VarIndices {
            n: Some(3),
            m: Some(3),
            n1: Some(2),
            m1: Some(1),
        };
        assert_eq!(check_original(&s, 1, &v), Err(Rejection::IndexOrder));
        // through a branch: slots that must be strictly ordered coincide
        let eq = canonicalize(&s)
            .unwrap()
            .into_iter()
            .find(|b| b.tag() == "n>m>n1>m1")
            .unwrap();
        assert_eq!(
            denormalize(&sol(1, [3, 3, 2, 1], &eq), &eq),
            Err(Rejection::SlotOrder)
        );
    }

    #[test]
    fn rejects_side_condition() {
        // 2·U_n + U_m = U_{n1} + U_{m1} … pick A·U_n = C·U_{n1} directly:
        // A = 1, C = 1, r = 1, n = 2, n1 = 1: U_2 = U_1 = 1.
        // Equation U_2 + U_0 = U_1 + U_0 holds but violates A·U_n ≠ C·U_{n1}.
        let s = spec(1, 1, 1, 1);
        let v = VarIndices {
            n: Some(2),
            m: Some(0),
            n1: Some(1),
            m1: Some(0),
        };
        assert_eq!(s.residual(1, &v).unwrap(), BigInt::zero());
        assert_eq!(check_original(&s, 1, &v), Err(Rejection::SideCondition));
        let eq = canonicalize(&s)
            .unwrap()
            .into_iter()
            .find(|b| b.tag() == "n>n1>m=m1")
            .unwrap();
        assert_eq!(
            denormalize(&sol(1, [2, 1, 0, 0], &eq), &eq),
            Err(Rejection::SideCondition)
        );
    }

    #[test]
    fn free_m1_requires_positive_n1() {
        let s = spec(1, 1, 1, 0);
        let v = VarIndices {
            n: Some(3),
            m: Some(1),
            n1: Some(0),
            m1: None,
        };
        assert_eq!(check_original(&s, 1, &v), Err(Rejection::IndexOrder));
    }

    #[test]
    fn raw_equations_do_not_denormalize() {
        let eq = CanonicalEquation::from_coeffs([1, -1, -1, 0]);
        assert_eq!(
            denormalize(&sol(1, [3, 2, 1, 0], &eq), &eq),
            Err(Rejection::RawEquation)
        );
    }
}
