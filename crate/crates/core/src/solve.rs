//! End-to-end solving of `A·U_n + B·U_m = C·U_{n1} + D·U_{m1}`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bounds::BoundSet;
use crate::error::Result;
use crate::normalize::{
    canonicalize, check_original, denormalize, BranchKind, CanonicalEquation, OriginalSolution,
    ProblemSpec, Var, VarIndices,
};
use crate::parametric::{find_families, CoeffDomain, ParametricFamily};
use crate::sporadic::search_sporadic;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Search only `r ≤ r_max` instead of the full effective range.
    pub r_max: Option<u64>,
    /// Skip the parametric family search.
    pub skip_families: bool,
}

/// How one original variable depends on the family parameter `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexPattern {
    /// `t + offset`
    Shift(u64),
    /// Pinned at index 0.
    Zero,
    /// Coefficient zero; any admissible value.
    Free,
}

impl fmt::Display for IndexPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexPattern::Shift(0) => f.write_str("t"),
            IndexPattern::Shift(e) => write!(f, "t+{e}"),
            IndexPattern::Zero => f.write_str("0"),
            IndexPattern::Free => f.write_str("free"),
        }
    }
}

/// A parametric family of the original equation: `(n, m, n1, m1)` as functions of `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OriginalFamily {
    pub family: ParametricFamily,
    pub branch: String,
    /// Patterns for `n, m, n1, m1` in that order.
    pub pattern: [IndexPattern; 4],
    /// Smallest `t` giving an admissible solution.
    pub first_shift: u64,
}

impl OriginalFamily {
    /// The solution at parameter `t`, if it satisfies every side condition.
    pub fn instance(&self, spec: &ProblemSpec, t: u64) -> Option<OriginalSolution> {
        let mut idx = VarIndices::default();
        for (var, pat) in Var::ALL.iter().zip(self.pattern) {
            let v = match pat {
                IndexPattern::Shift(e) => Some(t + e),
                IndexPattern::Zero => Some(0),
                IndexPattern::Free => None,
            };
            match var {
                Var::N => idx.n = v,
                Var::M => idx.m = v,
                Var::N1 => idx.n1 = v,
                Var::M1 => idx.m1 = v,
            }
        }
        check_original(spec, self.family.r, &idx).ok()?;
        Some(OriginalSolution {
            r: self.family.r,
            indices: idx,
            branch: self.branch.clone(),
        })
    }

    pub fn describe(&self) -> String {
        let names = ["n", "m", "n1", "m1"];
        let parts: Vec<String> = names
            .iter()
            .zip(self.pattern)
            .map(|(n, p)| format!("{n}={p}"))
            .collect();
        format!("{} for t >= {}", parts.join(", "), self.first_shift)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub spec: ProblemSpec,
    /// Ceilings for the original `X`.
    pub bounds: BoundSet,
    pub branches: Vec<CanonicalEquation>,
    pub sporadic: Vec<OriginalSolution>,
    pub families: Vec<OriginalFamily>,
}

/// Ceilings used for one branch.
pub fn branch_bounds(eq: &CanonicalEquation, opts: &SolveOptions) -> Result<BoundSet> {
    let mut b = BoundSet::new(eq.effective_x)?;
    if eq.kind == BranchKind::CdZero {
        b = b.for_cd_zero();
    }
    if let Some(r) = opts.r_max {
        b = b.with_r_max(b.r_max.min(r));
    }
    Ok(b)
}

pub fn solve(spec: &ProblemSpec, opts: &SolveOptions) -> Result<SolveReport> {
    let branches = canonicalize(spec)?;
    let mut sporadic = BTreeSet::new();
    let mut families = BTreeSet::new();
    for eq in &branches {
        let bounds = branch_bounds(eq, opts)?;
        for sol in search_sporadic(eq, &bounds) {
            if let Ok(orig) = denormalize(&sol, eq) {
                sporadic.insert(orig);
            }
        }
        if !opts.skip_families {
            families.extend(branch_families(spec, eq, &bounds));
        }
    }
    Ok(SolveReport {
        spec: *spec,
        bounds: BoundSet::new(spec.x())?,
        branches,
        sporadic: sporadic.into_iter().collect(),
        families: families.into_iter().collect(),
    })
}

/// How far past the first admissible shift a family is probed.
const SHIFT_PROBE: u64 = 4;

fn branch_families(
    spec: &ProblemSpec,
    eq: &CanonicalEquation,
    bounds: &BoundSet,
) -> Vec<OriginalFamily> {
    if eq.arity < 3 {
        return Vec::new();
    }
    let domain = CoeffDomain::Tuple {
        coeffs: eq.coeffs,
        arity: eq.arity,
    };
    find_families(&domain, bounds)
        .into_iter()
        .filter_map(|fam| {
            let mut slot_pattern = vec![IndexPattern::Zero; eq.arity];
            for (slot, off) in fam.offsets().into_iter().enumerate() {
                slot_pattern[slot] = IndexPattern::Shift(off);
            }
            let mut pattern = [IndexPattern::Free; 4];
            for (slot, block) in eq.slots.iter().enumerate() {
                for &v in block {
                    pattern[Var::ALL.iter().position(|&w| w == v).expect("var")] =
                        slot_pattern[slot];
                }
            }
            let mut of = OriginalFamily {
                family: fam,
                branch: eq.tag(),
                pattern,
                first_shift: 0,
            };
            let first = (0..=SHIFT_PROBE).find(|&t| of.instance(spec, t).is_some())?;
            of.first_shift = first;
            Some(of)
        })
        .collect()
}

impl SolveReport {
    /// Sporadic solutions together with family instances for `t ≤ t_max`, deduplicated by
    /// `(r, indices)`.
    pub fn solutions_up_to_shift(&self, t_max: u64) -> BTreeSet<(u64, VarIndices)> {
        let mut out: BTreeSet<(u64, VarIndices)> =
            self.sporadic.iter().map(|s| (s.r, s.indices)).collect();
        for fam in &self.families {
            for t in 0..=t_max {
                if let Some(s) = fam.instance(&self.spec, t) {
                    out.insert((s.r, s.indices));
                }
            }
        }
        out
    }
}
