//! Serializable report records and their plain-text rendering.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::strata::Classification;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub name: String,
    pub rank: usize,
    pub characteristic: u64,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    /// Canonical (Hermite) basis of the integral subspace.
    pub basis: Vec<Vec<i64>>,
    pub subgroup_order: usize,
    pub representative: Vec<i64>,
    /// Circle subgroups whose classes span the stratum.
    pub witness: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NucleusReport {
    pub group: GroupSummary,
    pub classification: Classification,
    pub includes_origin: bool,
    pub strata: Vec<StratumRecord>,
    /// All nuclear strata, maximal or not.
    pub nuclear_strata: Vec<StratumRecord>,
    /// Pairs (index into `nuclear_strata`, index into `strata`) for each
    /// non-maximal nuclear stratum and a maximal one containing it.
    pub containment: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponent: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub weight: u32,
    pub codegree: u32,
    pub text: String,
    pub coeffs: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRecord {
    pub weight: u32,
    pub text: String,
    pub coeffs: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub weight: u32,
    pub monomials: usize,
    pub relation_dim: usize,
    pub molien: u64,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationReport {
    pub group: GroupSummary,
    pub generators: Vec<GeneratorRecord>,
    pub relations: Vec<RelationRecord>,
    pub relation_bound: u32,
    pub is_polynomial: bool,
    pub molien: Vec<u64>,
    pub audit: Vec<AuditRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    /// The tested point, or `origin`.
    pub point: String,
    pub classifier: String,
    pub oracle: String,
    pub jacobian_rank: usize,
    pub expected_rank: usize,
}

impl VerdictRecord {
    pub fn agrees(&self) -> bool {
        self.classifier == self.oracle
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalModelRecord {
    pub orbit_size: usize,
    pub setwise_order: usize,
    pub pointwise_order: usize,
    pub fixed_basis: Vec<Vec<i64>>,
    pub complement_basis: Vec<Vec<i64>>,
    pub restricted_action: Vec<Vec<Vec<i64>>>,
    pub regular: bool,
    pub complement_has_no_fixed_vectors: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckPointReport {
    pub group: GroupSummary,
    pub point: Vec<i64>,
    /// Generator values at the point.
    pub image: Vec<String>,
    pub stabilizer_order: usize,
    pub stabilizer: Vec<Vec<Vec<i64>>>,
    pub setwise_order: usize,
    pub verdicts: VerdictRecord,
    pub witness: Vec<Vec<i64>>,
    pub local_model: LocalModelRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRun {
    pub group: GroupSummary,
    pub classification: Option<Classification>,
    pub checks: Vec<CheckRecord>,
    pub verdicts: Vec<VerdictRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub name: String,
    pub characteristics: Vec<u64>,
    pub runs: Vec<VerifyRun>,
    /// Checks spanning several characteristics.
    pub cross_checks: Vec<CheckRecord>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn failures(&self) -> Vec<&CheckRecord> {
        self.runs
            .iter()
            .flat_map(|r| r.checks.iter())
            .chain(self.cross_checks.iter())
            .filter(|c| !c.passed)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySuite {
    pub reports: Vec<VerifyReport>,
    pub passed: bool,
}

fn vec_str(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn basis_str(b: &[Vec<i64>]) -> String {
    let parts: Vec<String> = b.iter().map(|v| vec_str(v)).collect();
    format!("span{{{}}}", parts.join(", "))
}

fn header(out: &mut String, g: &GroupSummary) {
    let field = if g.characteristic == 0 {
        "Q".to_string()
    } else {
        format!("F_{}", g.characteristic)
    };
    writeln!(out, "group {}: rank {}, |W| = {}, over {}", g.name, g.rank, g.order, field).unwrap();
}

fn stratum_line(out: &mut String, s: &StratumRecord) {
    writeln!(
        out,
        "  {}  |K| = {}  representative {}  circles {}",
        basis_str(&s.basis),
        s.subgroup_order,
        vec_str(&s.representative),
        s.witness.iter().map(|c| vec_str(c)).collect::<Vec<_>>().join(" ")
    )
    .unwrap();
}

impl NucleusReport {
    pub fn to_text(&self, verbose: bool) -> String {
        let mut out = String::new();
        header(&mut out, &self.group);
        let class = match self.classification {
            Classification::Empty => "EMPTY",
            Classification::Trivial => "TRIVIAL",
            Classification::Positive => "POSITIVE",
        };
        writeln!(out, "classification: {class}").unwrap();
        writeln!(out, "origin included: {}", if self.includes_origin { "yes" } else { "no" }).unwrap();
        writeln!(out, "maximal strata: {}", self.strata.len()).unwrap();
        for s in &self.strata {
            stratum_line(&mut out, s);
        }
        if verbose && !self.containment.is_empty() {
            writeln!(out, "containments:").unwrap();
            for (i, j) in &self.containment {
                writeln!(
                    out,
                    "  {} < {}",
                    basis_str(&self.nuclear_strata[*i].basis),
                    basis_str(&self.strata[*j].basis)
                )
                .unwrap();
            }
        }
        out
    }
}

impl PresentationReport {
    pub fn to_text(&self, verbose: bool) -> String {
        let mut out = String::new();
        header(&mut out, &self.group);
        writeln!(out, "generators: {}", self.generators.len()).unwrap();
        for (i, g) in self.generators.iter().enumerate() {
            writeln!(
                out,
                "  y{} = {}  (weight {}, codegree {})",
                i + 1,
                g.text,
                g.weight,
                g.codegree
            )
            .unwrap();
        }
        writeln!(
            out,
            "relations through weight {}: {}",
            self.relation_bound,
            self.relations.len()
        )
        .unwrap();
        for r in &self.relations {
            writeln!(out, "  {} = 0  (weight {})", r.text, r.weight).unwrap();
        }
        writeln!(out, "polynomial: {}", if self.is_polynomial { "yes" } else { "no" }).unwrap();
        let mol: Vec<String> = self.molien.iter().map(|m| m.to_string()).collect();
        writeln!(out, "Molien: {}", mol.join(" ")).unwrap();
        if verbose {
            writeln!(out, "audit (weight, y-monomials, relation dim, Molien):").unwrap();
            for a in &self.audit {
                writeln!(
                    out,
                    "  {:>3} {:>6} {:>6} {:>6}{}",
                    a.weight,
                    a.monomials,
                    a.relation_dim,
                    a.molien,
                    if a.consistent { "" } else { "  MISMATCH" }
                )
                .unwrap();
            }
        }
        out
    }
}

impl CheckPointReport {
    pub fn to_text(&self, verbose: bool) -> String {
        let mut out = String::new();
        header(&mut out, &self.group);
        writeln!(out, "point {}", vec_str(&self.point)).unwrap();
        writeln!(out, "image in generator coordinates ({})", self.image.join(", ")).unwrap();
        writeln!(
            out,
            "stabilizer order {} (line stabilizer order {})",
            self.stabilizer_order, self.setwise_order
        )
        .unwrap();
        writeln!(out, "classifier: {}", self.verdicts.classifier).unwrap();
        writeln!(
            out,
            "jacobian: {} (rank {}, needed {})",
            self.verdicts.oracle, self.verdicts.jacobian_rank, self.verdicts.expected_rank
        )
        .unwrap();
        if !self.witness.is_empty() {
            let c: Vec<String> = self.witness.iter().map(|v| vec_str(v)).collect();
            writeln!(out, "witness circles {}", c.join(" ")).unwrap();
        }
        let lm = &self.local_model;
        writeln!(
            out,
            "local model: orbit {}, fixed {}, complement {}, regular {}",
            lm.orbit_size,
            basis_str(&lm.fixed_basis),
            basis_str(&lm.complement_basis),
            if lm.regular { "yes" } else { "no" }
        )
        .unwrap();
        if verbose {
            for (i, a) in lm.restricted_action.iter().enumerate() {
                let rows: Vec<String> = a.iter().map(|r| vec_str(r)).collect();
                writeln!(out, "  action {}: [{}]", i, rows.join(" ")).unwrap();
            }
        }
        out
    }
}

impl VerifyReport {
    pub fn to_text(&self, verbose: bool) -> String {
        let mut out = String::new();
        for run in &self.runs {
            header(&mut out, &run.group);
            for c in &run.checks {
                if verbose || !c.passed {
                    writeln!(
                        out,
                        "  {} {}: {}",
                        if c.passed { "ok  " } else { "FAIL" },
                        c.name,
                        c.detail
                    )
                    .unwrap();
                }
            }
            if verbose {
                for v in &run.verdicts {
                    writeln!(out, "  {}: classifier {}, oracle {}", v.point, v.classifier, v.oracle).unwrap();
                }
            }
        }
        for c in &self.cross_checks {
            if verbose || !c.passed {
                writeln!(out, "{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail).unwrap();
            }
        }
        let total: usize = self.runs.iter().map(|r| r.checks.len()).sum::<usize>() + self.cross_checks.len();
        writeln!(
            out,
            "{}: {} {} checks over characteristics {:?}",
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            total,
            self.characteristics
        )
        .unwrap();
        out
    }
}
