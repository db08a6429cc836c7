//! Machine-readable reports: the JSON document the CLI emits and re-verifies, and its
//! flat CSV projection.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::bounds::BoundSet;
use crate::error::{Error, Result};
use crate::normalize::{check_original, ProblemSpec, VarIndices};
use crate::parametric::{verify_family, FamilyKind, ParametricFamily};
use crate::solve::{IndexPattern, OriginalFamily, SolveReport};
use crate::sporadic::{verify_solution, Convention, PaperExperiment, SporadicSolution};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub problem: Option<ProblemSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundSet>,
    #[serde(default)]
    pub convention: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<Summary>,
    #[serde(default)]
    pub sporadic: Vec<SporadicEntry>,
    #[serde(default)]
    pub families: Vec<FamilyEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: u64,
    pub per_r: BTreeMap<u64, u64>,
    /// Totals under every convention, keyed by convention name.
    pub conventions: BTreeMap<String, u64>,
}

/// One sporadic solution, either of the original equation or of a canonical sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum SporadicEntry {
    /// `a·U_n + b·U_m = c·U_{n1} + d·U_{m1}` with `coeffs = [a, b, c, d]`; `null` marks a
    /// free variable.
    Original {
        r: u64,
        n: u64,
        m: u64,
        n1: Option<u64>,
        m1: Option<u64>,
        coeffs: [i64; 4],
        branch: String,
    },
    /// `Σ coeffs[t]·U_{indices[t]} = 0` with `indices` sorted `n1 > n2 ≥ n3 ≥ n4`.
    Canonical {
        r: u64,
        indices: [u64; 4],
        coeffs: [i64; 4],
        branch: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub r: u64,
    pub kind: FamilyKind,
    pub exponents: Vec<u64>,
    pub coeffs: Vec<i64>,
    pub polynomial: String,
    pub identity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
    /// `n, m, n1, m1` as functions of the parameter.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<[IndexPattern; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_shift: Option<u64>,
}

impl FamilyEntry {
    pub fn from_family(fam: &ParametricFamily) -> Self {
        Self {
            r: fam.r,
            kind: fam.kind,
            exponents: fam.exponents.clone(),
            coeffs: fam.coeffs.clone(),
            polynomial: fam.poly().to_string(),
            identity: fam.identity(),
            branch: None,
            pattern: None,
            first_shift: None,
        }
    }

    fn from_original(fam: &OriginalFamily) -> Self {
        Self {
            branch: Some(fam.branch.clone()),
            pattern: Some(fam.pattern),
            first_shift: Some(fam.first_shift),
            ..Self::from_family(&fam.family)
        }
    }

    pub fn family(&self) -> Result<ParametricFamily> {
        ParametricFamily::new(
            self.r,
            self.kind,
            self.exponents.clone(),
            self.coeffs.clone(),
        )
    }
}

impl SporadicEntry {
    pub fn canonical(sol: &SporadicSolution) -> Self {
        SporadicEntry::Canonical {
            r: sol.r,
            indices: sol.indices,
            coeffs: sol.coeffs,
            branch: sol.branch.clone(),
        }
    }
}

impl Report {
    pub fn from_solve(rep: &SolveReport) -> Self {
        let s = rep.spec;
        let sporadic = rep
            .sporadic
            .iter()
            .map(|sol| SporadicEntry::Original {
                r: sol.r,
                n: sol.indices.n.expect("n is always bound"),
                m: sol.indices.m.expect("m is always bound"),
                n1: sol.indices.n1,
                m1: sol.indices.m1,
                coeffs: [s.a, s.b, s.c, s.d],
                branch: sol.branch.clone(),
            })
            .collect();
        Self {
            problem: Some(s),
            bounds: Some(rep.bounds),
            convention: Convention::Tuple.name().to_owned(),
            summary: None,
            sporadic,
            families: rep
                .families
                .iter()
                .map(FamilyEntry::from_original)
                .collect(),
        }
    }

    pub fn from_paper(
        exp: &PaperExperiment,
        convention: Convention,
        families: &[ParametricFamily],
    ) -> Self {
        let rep = exp.report(convention);
        let conventions = exp
            .reports
            .iter()
            .map(|r| (r.convention.name().to_owned(), r.total))
            .collect();
        Self {
            problem: None,
            bounds: Some(exp.bounds),
            convention: convention.name().to_owned(),
            summary: Some(Summary {
                total: rep.total,
                per_r: rep.per_r.clone(),
                conventions,
            }),
            sporadic: rep.solutions.iter().map(SporadicEntry::canonical).collect(),
            families: families.iter().map(FamilyEntry::from_family).collect(),
        }
    }

    pub fn from_families(bounds: BoundSet, families: &[ParametricFamily]) -> Self {
        Self {
            problem: None,
            bounds: Some(bounds),
            convention: String::new(),
            summary: None,
            sporadic: Vec::new(),
            families: families.iter().map(FamilyEntry::from_family).collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedReport(e.to_string()))
    }

    /// Flat projection of the sporadic list; families are not included.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "r", "form", "i1", "i2", "i3", "i4", "c1", "c2", "c3", "c4", "branch",
        ])?;
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        for e in &self.sporadic {
            let (r, form, idx, coeffs, branch) = match e {
                SporadicEntry::Original {
                    r,
                    n,
                    m,
                    n1,
                    m1,
                    coeffs,
                    branch,
                } => (
                    r,
                    "original",
                    [n.to_string(), m.to_string(), opt(*n1), opt(*m1)],
                    coeffs,
                    branch,
                ),
                SporadicEntry::Canonical {
                    r,
                    indices,
                    coeffs,
                    branch,
                } => (
                    r,
                    "canonical",
                    indices.map(|i| i.to_string()),
                    coeffs,
                    branch,
                ),
            };
            let mut rec = vec![r.to_string(), form.to_owned()];
            rec.extend(idx);
            rec.extend(coeffs.iter().map(|c| c.to_string()));
            rec.push(branch.clone());
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Re-checks every entry from scratch; returns one line per failure.
    pub fn verify(&self, family_depth: u64) -> Vec<String> {
        let mut failures = Vec::new();
        for (i, e) in self.sporadic.iter().enumerate() {
            if let Err(why) = verify_entry(e) {
                failures.push(format!("sporadic[{i}]: {why}"));
            }
        }
        for (i, f) in self.families.iter().enumerate() {
            if let Err(why) = verify_family_entry(f, self.problem.as_ref(), family_depth) {
                failures.push(format!("families[{i}]: {why}"));
            }
        }
        failures
    }
}

fn verify_entry(e: &SporadicEntry) -> std::result::Result<(), String> {
    match e {
        SporadicEntry::Original {
            r,
            n,
            m,
            n1,
            m1,
            coeffs: [a, b, c, d],
            ..
        } => {
            let spec = ProblemSpec {
                a: *a,
                b: *b,
                c: *c,
                d: *d,
            };
            spec.validate().map_err(|e| e.to_string())?;
            if (*c != 0) != n1.is_some() || (*d != 0) != m1.is_some() {
                return Err("free variables must match zero coefficients".into());
            }
            let vars = VarIndices {
                n: Some(*n),
                m: Some(*m),
                n1: *n1,
                m1: *m1,
            };
            check_original(&spec, *r, &vars).map_err(|rej| format!("{rej:?}"))
        }
        SporadicEntry::Canonical {
            r,
            indices,
            coeffs,
            branch,
        } => {
            let sol = SporadicSolution {
                r: *r,
                indices: *indices,
                coeffs: *coeffs,
                branch: branch.clone(),
            };
            if !sol.is_sorted() {
                return Err(format!("indices {indices:?} are not n1 > n2 >= n3 >= n4"));
            }
            if !verify_solution(&sol) {
                return Err(format!(
                    "sum does not vanish for r={r}, indices {indices:?}"
                ));
            }
            Ok(())
        }
    }
}

fn verify_family_entry(
    f: &FamilyEntry,
    problem: Option<&ProblemSpec>,
    depth: u64,
) -> std::result::Result<(), String> {
    let fam = f.family().map_err(|e| e.to_string())?;
    if !verify_family(&fam, depth) {
        return Err(format!("identity fails for r={} within depth {depth}", f.r));
    }
    if let (Some(spec), Some(pattern)) = (problem, f.pattern) {
        let of = OriginalFamily {
            family: fam,
            branch: f.branch.clone().unwrap_or_default(),
            pattern,
            first_shift: f.first_shift.unwrap_or(0),
        };
        let t0 = of.first_shift;
        if (t0..t0 + 4).any(|t| of.instance(spec, t).is_none()) {
            return Err("pattern does not give admissible solutions".into());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_parses_and_verifies() {
        let rep = Report::from_json("{}").unwrap();
        assert!(rep.verify(500).is_empty());
        let rep = Report::from_json(r#"{"sporadic": [], "families": []}"#).unwrap();
        assert!(rep.verify(500).is_empty());
    }

    #[test]
    fn malformed_json_is_rejected() {
        assert!(matches!(
            Report::from_json("{not json"),
            Err(Error::MalformedReport(_))
        ));
        assert!(Report::from_json(r#"{"sporadic": [{"form": "weird"}]}"#).is_err());
    }

    #[test]
    fn tampered_canonical_entry_fails() {
        let good = SporadicEntry::Canonical {
            r: 3,
            indices: [2, 1, 1, 1],
            coeffs: [1, -1, -1, -1],
            branch: "eps(+1 +1 +1)".into(),
        };
        assert!(verify_entry(&good).is_ok());
        let bad = SporadicEntry::Canonical {
            r: 3,
            indices: [3, 1, 1, 1],
            coeffs: [1, -1, -1, -1],
            branch: "eps(+1 +1 +1)".into(),
        };
        assert!(verify_entry(&bad).is_err());
    }

    #[test]
    fn original_entry_checks_side_condition() {
        // U_2 + U_0 = U_1 + U_0 at r = 1 vanishes but has A·U_n = C·U_{n1}
        let e = SporadicEntry::Original {
            r: 1,
            n: 2,
            m: 0,
            n1: Some(1),
            m1: Some(0),
            coeffs: [1, 1, 1, 1],
            branch: String::new(),
        };
        assert_eq!(verify_entry(&e), Err("SideCondition".to_string()));
    }
}
