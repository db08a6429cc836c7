//! Bounded exhaustive search for sporadic solutions.
//!
//! For each `r` the engine walks `(n4, n3, n2)` inside the ceilings, forms the partial sum
//! `S = A2·U_{n2} + A3·U_{n3} + A4·U_{n4}` once, and looks `−S/A1` up in a value index of
//! the memoized terms, so the innermost loop over `n1` disappears.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::BoundSet;
use crate::lucas::{lucas_prefix, lucas_term, LucasParams, LucasTable};
use crate::normalize::CanonicalEquation;

/// `A1·U_{n1} + A2·U_{n2} + A3·U_{n3} + A4·U_{n4} = 0` for one `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SporadicSolution {
    pub r: u64,
    pub indices: [u64; 4],
    pub coeffs: [i64; 4],
    pub branch: String,
}

impl SporadicSolution {
    /// `Σ A_t·U_{n_t}`, computed from scratch.
    pub fn residual(&self) -> Option<BigInt> {
        let params = LucasParams::new(self.r).ok()?;
        let mut total = BigInt::zero();
        for (&c, &i) in self.coeffs.iter().zip(&self.indices) {
            total += BigInt::from(c) * lucas_term(params, i as i64).ok()?;
        }
        Some(total)
    }

    /// `n1 > n2 ≥ n3 ≥ n4 ≥ 0`.
    pub fn is_sorted(&self) -> bool {
        let [a, b, c, d] = self.indices;
        a > b && b >= c && c >= d
    }
}

/// Recomputes the four terms independently of any table and checks the sum vanishes.
pub fn verify_solution(sol: &SporadicSolution) -> bool {
    sol.residual().is_some_and(|s| s.is_zero())
}

/// Value → ascending indices `n ≥ 1` with `U_n` equal to that value.
struct ValueIndex<'a> {
    table: &'a LucasTable,
    positions: HashMap<&'a BigInt, Vec<usize>>,
}

impl<'a> ValueIndex<'a> {
    fn new(table: &'a LucasTable) -> Self {
        let mut positions: HashMap<&BigInt, Vec<usize>> = HashMap::new();
        for (n, u) in table.terms().iter().enumerate().skip(1) {
            positions.entry(u).or_default().push(n);
        }
        Self { table, positions }
    }

    fn lookup(&self, value: &BigInt) -> &[usize] {
        self.positions.get(value).map_or(&[], Vec::as_slice)
    }
}

fn to_usize(v: u64) -> usize {
    usize::try_from(v).expect("ceiling fits in usize")
}

/// Solutions of `eq` for every `r ∈ [1, r_max]` with indices inside `bounds`.
///
/// Sorted by `(r, n1, n2, n3, n4)`; the result does not depend on the size of the rayon pool.
pub fn search_sporadic(eq: &CanonicalEquation, bounds: &BoundSet) -> Vec<SporadicSolution> {
    let branch = eq.tag();
    let mut out: Vec<SporadicSolution> = (1..=bounds.r_max)
        .into_par_iter()
        .map(|r| search_one_r(eq, bounds, r, &branch))
        .flatten()
        .collect();
    out.sort();
    out
}

fn search_one_r(
    eq: &CanonicalEquation,
    bounds: &BoundSet,
    r: u64,
    branch: &str,
) -> Vec<SporadicSolution> {
    let n1_max = to_usize(bounds.n1_max);
    let params = LucasParams::new(r).expect("r >= 1");
    let table = lucas_prefix(params, n1_max.max(1));
    let index = ValueIndex::new(&table);
    let [a1, a2, a3, a4] = eq.coeffs.map(BigInt::from);

    let cap = |slot: usize, ceiling: u64| {
        if slot < eq.arity {
            to_usize(ceiling)
        } else {
            0
        }
    };
    let n4_hi = cap(3, bounds.n4_max);
    let n3_hi = cap(2, bounds.n3_max);
    let n2_hi = cap(1, bounds.n2_max).min(n1_max.saturating_sub(1));

    let mut found = Vec::new();
    for n4 in 0..=n4_hi {
        let t4 = &a4 * &index.table[n4];
        for n3 in n4..=n3_hi {
            let t34 = &t4 + &a3 * &index.table[n3];
            for n2 in n3..=n2_hi {
                let s = &t34 + &a2 * &index.table[n2];
                let mut push = |n1: usize| {
                    found.push(SporadicSolution {
                        r,
                        indices: [n1 as u64, n2 as u64, n3 as u64, n4 as u64],
                        coeffs: eq.coeffs,
                        branch: branch.to_owned(),
                    })
                };
                if a1.is_zero() {
                    if s.is_zero() {
                        (n2 + 1..=n1_max).for_each(&mut push);
                    }
                    continue;
                }
                let (target, rem) = (-s).div_rem(&a1);
                if !rem.is_zero() || !target.is_positive() {
                    continue;
                }
                index
                    .lookup(&target)
                    .iter()
                    .copied()
                    .filter(|&n1| n1 > n2 && n1 <= n1_max)
                    .for_each(&mut push);
            }
        }
    }
    found
}

/// How solutions of the replicated experiment are tallied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// Every `(r, n4, n3, n2, ε2, ε3, ε4, n1)` that works.
    Tuple,
    /// Every `(r, n4, n3, n2, ε2, ε3, ε4)` for which some `n1 > n2` works.
    Existence,
    /// Every `(r, n4, n3, n2, ε2, ε3, ε4)` whose target's smallest index `n1` exceeds `n2`.
    ///
    /// Differs from `Existence` only when `U_1 = U_2` (r = 1), where the target 1 resolves
    /// to `n1 = 1`.
    FirstIndex,
}

impl Convention {
    pub const ALL: [Convention; 3] = [
        Convention::Tuple,
        Convention::Existence,
        Convention::FirstIndex,
    ];

    /// The convention whose totals match the published experiment.
    pub const FROZEN: Convention = Convention::FirstIndex;

    pub fn name(self) -> &'static str {
        match self {
            Convention::Tuple => "tuple",
            Convention::Existence => "existence",
            Convention::FirstIndex => "first-index",
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Convention::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown convention `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub convention: Convention,
    pub total: u64,
    /// Count per `r`, including every `r` searched with no solution.
    pub per_r: BTreeMap<u64, u64>,
    pub solutions: Vec<SporadicSolution>,
}

impl SearchReport {
    fn from_solutions(
        convention: Convention,
        r_max: u64,
        solutions: Vec<SporadicSolution>,
    ) -> Self {
        let mut per_r: BTreeMap<u64, u64> = (1..=r_max).map(|r| (r, 0)).collect();
        for s in &solutions {
            *per_r.entry(s.r).or_default() += 1;
        }
        Self {
            convention,
            total: solutions.len() as u64,
            per_r,
            solutions,
        }
    }

    /// e.g. `207 = 194 (r=1) + 12 (r=2) + 1 (r=3)`, omitting empty `r`.
    pub fn totals_line(&self) -> String {
        let parts: Vec<String> = self
            .per_r
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(r, c)| format!("{c} (r={r})"))
            .collect();
        if parts.is_empty() {
            format!("{} = 0", self.total)
        } else {
            format!("{} = {}", self.total, parts.join(" + "))
        }
    }
}

/// The replicated coefficient experiment, tallied under every convention.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperExperiment {
    pub bounds: BoundSet,
    pub reports: Vec<SearchReport>,
}

impl PaperExperiment {
    pub fn report(&self, convention: Convention) -> &SearchReport {
        self.reports
            .iter()
            .find(|r| r.convention == convention)
            .expect("every convention is tallied")
    }

    pub fn frozen(&self) -> &SearchReport {
        self.report(Convention::FROZEN)
    }
}

/// Coefficients `A2, A3, A4 ∈ {0, ±1}` with `X = 1`:
/// `U_{n1} = |ε2·U_{n2} + ε3·U_{n3} + ε4·U_{n4}|` over `r ∈ [1, 14]`, `n4 ∈ [0, 4]`,
/// `n3 ∈ [n4, 12]`, `n2 ∈ [n3, 21]`, `ε4 ∈ {0, 1}`, `ε3, ε2 ∈ {0, ±1}` and `n2 < n1 ≤ 27`.
pub fn search_paper_example() -> PaperExperiment {
    let bounds = BoundSet::new(1).expect("x = 1 is valid");
    let per_r: Vec<[Vec<SporadicSolution>; 3]> = (1..=bounds.r_max)
        .into_par_iter()
        .map(|r| paper_one_r(r, &bounds))
        .collect();

    let reports = Convention::ALL
        .iter()
        .enumerate()
        .map(|(k, &conv)| {
            let mut sols: Vec<SporadicSolution> = per_r
                .iter()
                .flat_map(|lists| lists[k].iter().cloned())
                .collect();
            sols.sort();
            SearchReport::from_solutions(conv, bounds.r_max, sols)
        })
        .collect();
    PaperExperiment { bounds, reports }
}

fn paper_one_r(r: u64, bounds: &BoundSet) -> [Vec<SporadicSolution>; 3] {
    let n1_max = to_usize(bounds.n1_max);
    let params = LucasParams::new(r).expect("r >= 1");
    let table = lucas_prefix(params, n1_max);
    let index = ValueIndex::new(&table);
    let [mut tuple, mut exist, mut first] = [Vec::new(), Vec::new(), Vec::new()];

    for n4 in 0..=to_usize(bounds.n4_max) {
        for n3 in n4..=to_usize(bounds.n3_max) {
            for n2 in n3..=to_usize(bounds.n2_max) {
                for e4 in [0i64, 1] {
                    for e3 in [0i64, 1, -1] {
                        for e2 in [0i64, 1, -1] {
                            let s = e2 * &table[n2] + e3 * &table[n3] + e4 * &table[n4];
                            if s.is_zero() {
                                continue;
                            }
                            let sign = if s.is_negative() { -1 } else { 1 };
                            let hits = index.lookup(&s.abs());
                            // ε and −ε give the same sum up to sign and are tallied apart
                            let tag = format!("eps({e2:+} {e3:+} {e4:+})");
                            let sol = |n1: usize| SporadicSolution {
                                r,
                                indices: [n1 as u64, n2 as u64, n3 as u64, n4 as u64],
                                coeffs: [1, -sign * e2, -sign * e3, -sign * e4],
                                branch: tag.clone(),
                            };
                            let valid: Vec<usize> =
                                hits.iter().copied().filter(|&n1| n1 > n2).collect();
                            tuple.extend(valid.iter().map(|&n1| sol(n1)));
                            if let Some(&n1) = valid.first() {
                                exist.push(sol(n1));
                            }
                            if let Some(&n1) = hits.first() {
                                if n1 > n2 {
                                    first.push(sol(n1));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    [tuple, exist, first]
}
