//! Command implementations behind the `nucleus` binary. Each command returns a
//! report record; rendering and exit codes are handled by the caller.

pub mod report;
pub mod spec;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactmath::{FieldElem, IntMat, Poly};
use crate::group::{GroupData, Subgroup, DEFAULT_MAX_ORDER};
use crate::invariants::{invariant_basis, local_model, molien, presentation, Presentation};
use crate::lattice::{witness_torus, Lattice};
use crate::singular::{jacobian_at, singular_locus, supp_dsg, JacobianEvaluation};
use crate::strata::{
    classify_point, closed_subgroups, nucleus, Nucleus, Stratum, DEFAULT_HEIGHT_BOUND,
};

pub use report::*;
pub use spec::{preset, GroupSpec, PRESET_NAMES};

/// Characteristics swept by `verify`, in addition to the input's own.
pub const SWEEP: [u64; 4] = [0, 5, 7, 11];

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub max_order: usize,
    pub relation_bound: Option<u32>,
    pub height_bound: u32,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            max_order: DEFAULT_MAX_ORDER,
            relation_bound: None,
            height_bound: DEFAULT_HEIGHT_BOUND,
        }
    }
}

fn small(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow)
}

fn small_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(small).collect()
}

fn small_rows(rows: &[Vec<BigInt>]) -> Result<Vec<Vec<i64>>> {
    rows.iter().map(|r| small_vec(r)).collect()
}

fn small_mat(m: &IntMat) -> Result<Vec<Vec<i64>>> {
    small_rows(&m.row_vecs())
}

fn summary(spec: &GroupSpec, group: &GroupData) -> GroupSummary {
    GroupSummary {
        name: spec.label(),
        rank: group.rank(),
        characteristic: group.field().characteristic(),
        order: group.order(),
    }
}

fn stratum_record(s: &Stratum) -> Result<StratumRecord> {
    let witness = witness_torus(&s.subgroup)?
        .iter()
        .map(|c| small_vec(c.vector()))
        .collect::<Result<_>>()?;
    Ok(StratumRecord {
        basis: small_rows(&s.subspace.basis_vectors())?,
        subgroup_order: s.subgroup.order(),
        representative: small_vec(&s.representative)?,
        witness,
    })
}

fn nucleus_report(spec: &GroupSpec, group: &GroupData, nuc: &Nucleus) -> Result<NucleusReport> {
    Ok(NucleusReport {
        group: summary(spec, group),
        classification: nuc.classification,
        includes_origin: nuc.includes_origin,
        strata: nuc.strata.iter().map(stratum_record).collect::<Result<_>>()?,
        nuclear_strata: nuc.nuclear_strata.iter().map(stratum_record).collect::<Result<_>>()?,
        containment: nuc.containment.clone(),
    })
}

pub fn cmd_nucleus(spec: &GroupSpec, opts: &Options) -> Result<NucleusReport> {
    let group = spec.build(opts.max_order)?;
    let nuc = nucleus(&group, opts.height_bound)?;
    nucleus_report(spec, &group, &nuc)
}

fn terms(p: &Poly) -> Vec<TermRecord> {
    p.terms()
        .map(|(e, c)| TermRecord {
            exponent: e.clone(),
            coeff: c.signed_display(),
        })
        .collect()
}

fn presentation_report(spec: &GroupSpec, group: &GroupData, pres: &Presentation) -> Result<PresentationReport> {
    let generators = pres
        .generators
        .iter()
        .map(|g| GeneratorRecord {
            weight: g.weight,
            codegree: g.codegree(),
            text: g.poly.display_with("x"),
            coeffs: terms(&g.poly),
        })
        .collect();
    let relations = pres
        .relations
        .iter()
        .map(|r| RelationRecord {
            weight: r.weight().unwrap_or(0),
            text: r.display_with("y"),
            coeffs: terms(r),
        })
        .collect();
    let to_u64 = |x: &BigInt| x.to_u64().ok_or(Error::Overflow);
    let audit = pres
        .audit
        .iter()
        .map(|a| {
            Ok(AuditRecord {
                weight: a.weight,
                monomials: a.monomials,
                relation_dim: a.relation_dim,
                molien: to_u64(&a.molien)?,
                consistent: a.consistent(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(PresentationReport {
        group: summary(spec, group),
        generators,
        relations,
        relation_bound: pres.relation_bound,
        is_polynomial: pres.is_polynomial,
        molien: pres.molien.iter().map(to_u64).collect::<Result<_>>()?,
        audit,
    })
}

pub fn cmd_presentation(spec: &GroupSpec, opts: &Options) -> Result<PresentationReport> {
    let group = spec.build(opts.max_order)?;
    let pres = presentation(&group, opts.relation_bound)?;
    presentation_report(spec, &group, &pres)
}

fn word(singular: bool) -> String {
    if singular { "SINGULAR" } else { "SMOOTH" }.to_string()
}

fn verdict_record(point: String, classifier: bool, oracle: &JacobianEvaluation) -> VerdictRecord {
    VerdictRecord {
        point,
        classifier: word(classifier),
        oracle: oracle.verdict.label().to_string(),
        jacobian_rank: oracle.rank,
        expected_rank: oracle.expected_rank,
    }
}

pub fn cmd_check_point(spec: &GroupSpec, point: &[i64], opts: &Options) -> Result<CheckPointReport> {
    let group = spec.build(opts.max_order)?;
    let field = group.field();
    let v: Vec<FieldElem> = point.iter().map(|&x| field.from_i64(x)).collect();
    let class = classify_point(&group, &v)?;
    let pres = presentation(&group, opts.relation_bound)?;
    let oracle = jacobian_at(&pres, &v)?;
    let lm = local_model(&group, &v)?;
    let local = LocalModelRecord {
        orbit_size: lm.orbit_size,
        setwise_order: lm.setwise.order(),
        pointwise_order: lm.pointwise.order(),
        fixed_basis: small_rows(&lm.fixed_part.basis_vectors())?,
        complement_basis: small_rows(&lm.complement.basis_vectors())?,
        restricted_action: lm.restricted_action.iter().map(small_mat).collect::<Result<_>>()?,
        regular: lm.regular,
        complement_has_no_fixed_vectors: lm.complement_has_no_fixed_vectors(field),
    };
    Ok(CheckPointReport {
        group: summary(spec, &group),
        point: point.to_vec(),
        image: oracle.image.iter().map(|x| x.signed_display()).collect(),
        stabilizer_order: class.stabilizer.order(),
        stabilizer: class.stabilizer.matrices().into_iter().map(small_mat).collect::<Result<_>>()?,
        setwise_order: class.setwise_stabilizer.order(),
        verdicts: verdict_record(format!("{point:?}"), class.singular, &oracle),
        witness: class
            .witness
            .iter()
            .map(|c| small_vec(c.vector()))
            .collect::<Result<_>>()?,
        local_model: local,
    })
}

fn check(name: &str, outcome: Result<(bool, String)>) -> CheckRecord {
    match outcome {
        Ok((passed, detail)) => CheckRecord {
            name: name.to_string(),
            passed,
            detail,
        },
        Err(e) => CheckRecord {
            name: name.to_string(),
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

/// Points at which the local-model arithmetic is tested: the closed-stratum
/// representatives, the coordinate vectors and `(1, 2, ..., n)`.
fn test_points(group: &GroupData, strata: &[Stratum]) -> Vec<Vec<BigInt>> {
    let n = group.rank();
    let mut pts: Vec<Vec<BigInt>> = strata.iter().map(|s| s.representative.clone()).collect();
    for i in 0..n {
        pts.push((0..n).map(|j| BigInt::from((i == j) as i64)).collect());
    }
    pts.push((1..=n as i64).map(BigInt::from).collect());
    let field = group.field();
    pts.into_iter()
        .filter(|v| v.iter().any(|x| !field.from_bigint(x).is_zero()))
        .collect()
}

struct RunOutcome {
    run: VerifyRun,
    strata: Option<BTreeSet<Lattice>>,
}

fn verify_characteristic(spec: &GroupSpec, group: &Arc<GroupData>, opts: &Options) -> RunOutcome {
    let hb = opts.height_bound;
    let order = group.order();
    let field = group.field();
    let mut checks = Vec::new();
    let mut verdicts = Vec::new();

    let nuc = nucleus(group, hb);
    let pres = presentation(group, opts.relation_bound);
    checks.push(check(
        "nucleus",
        nuc.as_ref()
            .map(|n| (true, format!("{:?}, {} maximal strata", n.classification, n.strata.len())))
            .map_err(Clone::clone),
    ));
    checks.push(check(
        "presentation",
        pres.as_ref()
            .map_err(Clone::clone)
            .and_then(|p| {
                let images: Vec<Poly> = p.generators.iter().map(|g| g.poly.clone()).collect();
                let mut ok = true;
                for r in &p.relations {
                    ok &= r.compose(&images)?.is_zero();
                }
                Ok((
                    ok,
                    format!(
                        "{} generators, {} relations; relations vanish on generators: {ok}",
                        p.generators.len(),
                        p.relations.len()
                    ),
                ))
            }),
    ));

    checks.push(check(
        "polynomial iff reflection group",
        pres.as_ref().map_err(Clone::clone).map(|p| {
            let refl = Subgroup::whole(group).is_reflection_group();
            (
                p.is_polynomial == refl,
                format!("polynomial {}, reflection group {refl}", p.is_polynomial),
            )
        }),
    ));

    checks.push(check("molien audit", (|| {
        let bound = 2 * order as u32;
        let mol = molien(group, bound);
        for w in 0..=bound {
            let d = invariant_basis(group, w)?.len();
            if BigInt::from(d) != mol[w as usize] {
                return Ok((false, format!("weight {w}: dim {d}, Molien {}", mol[w as usize])));
            }
        }
        if let Ok(p) = &pres {
            if let Some(a) = p.audit.iter().find(|a| !a.consistent()) {
                return Ok((false, format!("relation audit fails in weight {}", a.weight)));
            }
        }
        Ok((true, format!("weights 0..={bound}")))
    })()));

    checks.push(check(
        "classifier agrees with jacobian oracle",
        pres.as_ref().map_err(Clone::clone).and_then(|p| {
            let locus = singular_locus(group, p, hb)?;
            for c in &locus.checks {
                let pt = format!("{:?}", small_vec(&c.stratum.representative)?);
                verdicts.push(verdict_record(pt, c.classifier_singular, &c.oracle));
            }
            verdicts.push(verdict_record("origin".into(), locus.origin_singular, &locus.origin_oracle));
            let agree = verdicts.iter().all(|v| v.agrees());
            Ok((
                agree && locus.warnings.is_empty(),
                if locus.warnings.is_empty() {
                    format!("{} points", verdicts.len())
                } else {
                    locus.warnings.join("; ")
                },
            ))
        }),
    ));

    checks.push(check("upward closure of non-reflection subgroups", (|| {
        let closed = closed_subgroups(group)?;
        let mut violations = 0;
        for k in &closed {
            if k.is_reflection_group() {
                continue;
            }
            for k2 in &closed {
                if k.is_subgroup_of(k2) && k2.is_reflection_group() {
                    violations += 1;
                }
            }
        }
        Ok((violations == 0, format!("{} closed subgroups, {violations} violations", closed.len())))
    })()));

    checks.push(check(
        "origin rule",
        match (&nuc, &pres) {
            (Ok(n), Ok(p)) => Ok((
                (n.strata.is_empty() || n.includes_origin) && (!n.includes_origin == p.is_polynomial),
                format!("origin {}, polynomial {}", n.includes_origin, p.is_polynomial),
            )),
            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
        },
    ));

    checks.push(check("local model arithmetic", (|| {
        let strata = crate::strata::closed_strata(group, hb)?;
        let pts = test_points(group, &strata);
        let mut bad = Vec::new();
        for v in &pts {
            let lm = local_model(group, &field.vector_from_ints(v))?;
            let ok = lm.orbit_size * lm.setwise.order() == order
                && lm.pointwise.is_subgroup_of(&lm.setwise)
                && lm.complement_has_no_fixed_vectors(field)
                && lm.fixed_part.rank() + lm.complement.rank() == group.rank();
            if !ok {
                bad.push(format!("{:?}", small_vec(v)?));
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() {
            format!("{} points", pts.len())
        } else {
            format!("violations at {}", bad.join(" "))
        }))
    })()));

    checks.push(check(
        "singular support equals nucleus",
        match (&nuc, &pres) {
            (Ok(n), Ok(p)) => supp_dsg(group, p, hb).map(|s| {
                let a = s.canonical_set(group.rank());
                let b = n.canonical_set(group.rank());
                (a == b, format!("{} members", a.len()))
            }),
            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
        },
    ));

    let strata = nuc
        .as_ref()
        .ok()
        .map(|n| n.strata.iter().map(|s| s.subspace.clone()).collect());
    RunOutcome {
        run: VerifyRun {
            group: summary(spec, group),
            classification: nuc.as_ref().ok().map(|n| n.classification),
            checks,
            verdicts,
        },
        strata,
    }
}

/// The characteristics `verify` sweeps for this group: the fixed sweep plus
/// the input's own, dropping those dividing `|W|`.
pub fn sweep_characteristics(spec: &GroupSpec, order: usize) -> Vec<u64> {
    let mut chars: BTreeSet<u64> = SWEEP.into_iter().collect();
    chars.insert(spec.characteristic);
    chars
        .into_iter()
        .filter(|&p| p == 0 || order as u64 % p != 0)
        .collect()
}

/// Cross-validation over a sweep of characteristics. An input whose own
/// characteristic divides `|W|` is a precondition error.
pub fn cmd_verify(spec: &GroupSpec, opts: &Options) -> Result<VerifyReport> {
    let own = spec.build(opts.max_order)?;
    let chars = sweep_characteristics(spec, own.order());
    let mut runs = Vec::new();
    let mut lattices: Vec<(u64, Option<BTreeSet<Lattice>>)> = Vec::new();
    for &p in &chars {
        let group = spec.with_characteristic(p).build(opts.max_order)?;
        let out = verify_characteristic(spec, &group, opts);
        lattices.push((p, out.strata));
        runs.push(out.run);
    }
    let reference = &lattices[0].1;
    let same = reference.is_some() && lattices.iter().all(|(_, l)| l == reference);
    let cross_checks = vec![CheckRecord {
        name: "characteristic independence of strata".into(),
        passed: same,
        detail: lattices
            .iter()
            .map(|(p, l)| format!("p={p}: {}", l.as_ref().map_or("error".to_string(), |l| l.len().to_string())))
            .collect::<Vec<_>>()
            .join(", "),
    }];
    let passed = runs.iter().all(|r| r.checks.iter().all(|c| c.passed)) && same;
    Ok(VerifyReport {
        name: spec.label(),
        characteristics: chars,
        runs,
        cross_checks,
        passed,
    })
}

/// `cmd_verify` over every preset.
pub fn verify_all_presets(opts: &Options) -> Result<VerifySuite> {
    let reports = PRESET_NAMES
        .iter()
        .map(|name| cmd_verify(&preset(name).unwrap(), opts))
        .collect::<Result<Vec<_>>>()?;
    let passed = reports.iter().all(|r| r.passed);
    Ok(VerifySuite { reports, passed })
}
