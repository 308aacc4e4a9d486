//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use nucleus::cli::{self, preset, sweep_characteristics, Options, PRESET_NAMES};
use nucleus::exactmath::Poly;
use nucleus::group::{GroupData, Subgroup, DEFAULT_MAX_ORDER};
use nucleus::invariants::{invariant_basis, local_model, molien, presentation};
use nucleus::lattice::Lattice;
use nucleus::singular::{jacobian_at, singular_locus, supp_dsg, JacobianVerdict};
use nucleus::strata::{closed_strata, closed_subgroups, nucleus, Classification};

const HB: u32 = nucleus::strata::DEFAULT_HEIGHT_BOUND;

type Outcome = Result<(), String>;

fn group(name: &str, p: u64) -> Arc<GroupData> {
    preset(name)
        .unwrap()
        .with_characteristic(p)
        .build(DEFAULT_MAX_ORDER)
        .unwrap()
}

/// Every (preset, characteristic) pair of the sweep.
fn sweep() -> Vec<(&'static str, u64)> {
    let mut out = Vec::new();
    for name in PRESET_NAMES {
        let order = group(name, 0).order();
        for p in sweep_characteristics(&preset(name).unwrap(), order) {
            out.push((name, p));
        }
    }
    out
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

/// Whether `r` is `±(y_a y_b − y_c²)` for distinct `a, b, c`, returning `(a, b, c)`.
fn segre_shape(r: &Poly) -> Option<(usize, usize, usize)> {
    let terms: Vec<_> = r.terms().collect();
    if terms.len() != 2 {
        return None;
    }
    let mut mixed = None;
    let mut square = None;
    for (e, c) in &terms {
        let support: Vec<usize> = (0..e.len()).filter(|&i| e[i] > 0).collect();
        match (support.as_slice(), e.iter().sum::<u32>()) {
            ([a, b], 2) => mixed = Some((*a, *b, (*c).clone())),
            ([s], 2) => square = Some((*s, (*c).clone())),
            _ => return None,
        }
    }
    let (a, b, cm) = mixed?;
    let (s, cs) = square?;
    (cm == -cs && s != a && s != b).then_some((a, b, s))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for p in [0, 3, 5, 7] {
        let g = group("segre", p);
        let pres = presentation(&g, None).map_err(|e| e.to_string())?;
        ensure(pres.generators.len() == 3, || format!("p={p}: {} generators", pres.generators.len()))?;
        ensure(pres.relations.len() == 1, || format!("p={p}: {} relations", pres.relations.len()))?;
        ensure(segre_shape(&pres.relations[0]).is_some(), || {
            format!("p={p}: relation {}", pres.relations[0].display_with("y"))
        })?;
        let nuc = nucleus(&g, HB).map_err(|e| e.to_string())?;
        ensure(nuc.classification == Classification::Trivial, || {
            format!("p={p}: classification {:?}", nuc.classification)
        })?;
        for s in closed_strata(&g, HB).map_err(|e| e.to_string())? {
            let oracle = jacobian_at(&pres, &s.representative_in_field()).map_err(|e| e.to_string())?;
            ensure(!s.nuclear && oracle.verdict == JacobianVerdict::Smooth, || {
                format!("p={p}: representative {:?} not smooth", s.representative)
            })?;
        }
    }
    within(start, Duration::from_secs(1))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let g = group("t3c2", 0);
    let pres = presentation(&g, None).map_err(|e| e.to_string())?;
    let weights = pres.generator_weights();
    ensure(weights.len() == 4, || format!("{} generators", weights.len()))?;
    let linear: Vec<usize> = (0..4).filter(|&i| weights[i] == 1).collect();
    ensure(linear.len() == 1, || format!("weights {weights:?}"))?;
    let w1 = linear[0];
    ensure(pres.relations.len() == 1, || format!("{} relations", pres.relations.len()))?;
    let rel = &pres.relations[0];
    ensure(segre_shape(rel).is_some(), || format!("relation {}", rel.display_with("y")))?;
    ensure(!rel.support_variables().contains(&w1), || "relation involves the weight-1 generator".into())?;

    let nuc = nucleus(&g, HB).map_err(|e| e.to_string())?;
    let expected = vec![vec![BigInt::from(0), BigInt::from(0), BigInt::from(1)]];
    ensure(
        nuc.strata.len() == 1 && nuc.strata[0].subspace.basis_vectors() == expected,
        || format!("strata {:?}", nuc.strata.iter().map(|s| s.subspace.to_string()).collect::<Vec<_>>()),
    )?;
    // The weight-1 generator is listed first here; moving it to the end gives
    // the coordinate order (x, y, z, w) with w of weight 1.
    let stratum = &nuc.strata[0];
    let q = pres
        .image_point(&stratum.representative_in_field())
        .map_err(|e| e.to_string())?;
    let mut order: Vec<usize> = (0..4).filter(|&i| i != w1).collect();
    order.push(w1);
    let relabeled: Vec<String> = order.iter().map(|&i| q[i].to_string()).collect();
    ensure(relabeled == ["0", "0", "0", "1"], || format!("image point {relabeled:?}"))?;

    for s in closed_strata(&g, HB).map_err(|e| e.to_string())? {
        let v = jacobian_at(&pres, &s.representative_in_field()).map_err(|e| e.to_string())?;
        let want = if s.subspace == stratum.subspace {
            JacobianVerdict::Singular
        } else {
            JacobianVerdict::Smooth
        };
        ensure(v.verdict == want, || {
            format!("{:?}: {:?}, expected {:?}", s.representative, v.verdict, want)
        })?;
    }
    within(start, Duration::from_secs(5))
}

fn criterion_3() -> Outcome {
    for (name, p) in sweep() {
        let g = group(name, p);
        let pres = presentation(&g, None).map_err(|e| format!("{name}/{p}: {e}"))?;
        let locus = singular_locus(&g, &pres, HB).map_err(|e| format!("{name}/{p}: {e}"))?;
        ensure(locus.warnings.is_empty(), || format!("{name}/{p}: {:?}", locus.warnings))?;
        for c in &locus.checks {
            ensure(c.oracle.verdict.is_singular() == Some(c.classifier_singular), || {
                format!("{name}/{p}: {:?} classifier {} oracle {:?}", c.stratum.representative, c.classifier_singular, c.oracle.verdict)
            })?;
        }
        ensure(locus.origin_oracle.verdict.is_singular() == Some(locus.origin_singular), || {
            format!("{name}/{p}: origin")
        })?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    for (name, p) in sweep() {
        let g = group(name, p);
        let pres = presentation(&g, None).map_err(|e| e.to_string())?;
        let refl = Subgroup::whole(&g).is_reflection_group();
        ensure(pres.is_polynomial == refl, || format!("{name}/{p}: polynomial {} reflection {refl}", pres.is_polynomial))?;
        if ["a1", "b2", "so3", "a2"].contains(&name) {
            ensure(refl && pres.relations.is_empty(), || format!("{name}/{p}: {} relations", pres.relations.len()))?;
            let nuc = nucleus(&g, HB).map_err(|e| e.to_string())?;
            ensure(nuc.classification == Classification::Empty, || format!("{name}/{p}: {:?}", nuc.classification))?;
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    for (name, p) in sweep() {
        let g = group(name, p);
        let bound = 2 * g.order() as u32;
        let mol = molien(&group(name, 0), bound);
        for w in 0..=bound {
            let d = invariant_basis(&g, w).map_err(|e| format!("{name}/{p}: {e}"))?.len();
            ensure(BigInt::from(d) == mol[w as usize], || {
                format!("{name}/{p} weight {w}: {d} vs {}", mol[w as usize])
            })?;
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    for (name, p) in sweep() {
        let g = group(name, p);
        let closed = closed_subgroups(&g).map_err(|e| e.to_string())?;
        for k in &closed {
            for k2 in &closed {
                if k.is_subgroup_of(k2) && !k.is_reflection_group() {
                    ensure(!k2.is_reflection_group(), || format!("{name}/{p}: {k:?} within {k2:?}"))?;
                }
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for (name, p) in sweep() {
        let g = group(name, p);
        let nuc = nucleus(&g, HB).map_err(|e| e.to_string())?;
        let pres = presentation(&g, None).map_err(|e| e.to_string())?;
        ensure(nuc.strata.is_empty() || nuc.includes_origin, || format!("{name}/{p}: strata without origin"))?;
        ensure(!nuc.includes_origin == pres.is_polynomial, || format!("{name}/{p}: origin rule"))?;
    }
    Ok(())
}

/// Closed-stratum representatives plus every nonzero vector with entries in
/// `[-2, 2]`.
fn probe_points(g: &Arc<GroupData>) -> Vec<Vec<BigInt>> {
    let n = g.rank();
    let mut pts: Vec<Vec<BigInt>> = closed_strata(g, HB)
        .unwrap()
        .into_iter()
        .map(|s| s.representative)
        .collect();
    let total = 5usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let v: Vec<BigInt> = (0..n)
            .map(|_| {
                let x = (c % 5) as i64 - 2;
                c /= 5;
                BigInt::from(x)
            })
            .collect();
        if v.iter().any(|x| x != &BigInt::from(0)) {
            pts.push(v);
        }
    }
    pts
}

fn criterion_8() -> Outcome {
    for (name, p) in sweep() {
        let g = group(name, p);
        let field = g.field();
        for v in probe_points(&g) {
            let vf = field.vector_from_ints(&v);
            if vf.iter().all(|x| x.is_zero()) {
                continue;
            }
            let lm = local_model(&g, &vf).map_err(|e| format!("{name}/{p} {v:?}: {e}"))?;
            ensure(lm.orbit_size * lm.setwise.order() == g.order(), || format!("{name}/{p} {v:?}: orbit size"))?;
            ensure(lm.pointwise.is_subgroup_of(&lm.setwise), || format!("{name}/{p} {v:?}: containment"))?;
            ensure(lm.complement_has_no_fixed_vectors(field), || format!("{name}/{p} {v:?}: fixed vectors"))?;
        }
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    for (name, p) in sweep() {
        let g = group(name, p);
        let pres = presentation(&g, None).map_err(|e| e.to_string())?;
        let supp = supp_dsg(&g, &pres, HB).map_err(|e| e.to_string())?;
        let nuc = nucleus(&g, HB).map_err(|e| e.to_string())?;
        ensure(supp.canonical_set(g.rank()) == nuc.canonical_set(g.rank()), || format!("{name}/{p}"))?;
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    for name in PRESET_NAMES {
        let order = group(name, 0).order();
        let sets: Vec<(u64, BTreeSet<Lattice>)> = sweep_characteristics(&preset(name).unwrap(), order)
            .into_iter()
            .map(|p| {
                let nuc = nucleus(&group(name, p), HB).unwrap();
                (p, nuc.strata.iter().map(|s| s.subspace.clone()).collect())
            })
            .collect();
        for (p, s) in &sets {
            ensure(*s == sets[0].1, || format!("{name}: p={p} differs from p={}", sets[0].0))?;
        }
    }
    Ok(())
}

fn criterion_11() -> Outcome {
    let start = Instant::now();
    let suite = cli::verify_all_presets(&Options::default()).map_err(|e| e.to_string())?;
    ensure(suite.passed, || {
        suite
            .reports
            .iter()
            .flat_map(|r| r.failures())
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect::<Vec<_>>()
            .join("; ")
    })?;
    within(start, Duration::from_secs(60))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("segre example presentation and nucleus", criterion_1),
        ("t3c2 example presentation, stratum and oracle", criterion_2),
        ("classifier agrees with jacobian oracle", criterion_3),
        ("polynomial iff reflection group", criterion_4),
        ("molien audit", criterion_5),
        ("upward closure of non-reflection subgroups", criterion_6),
        ("origin rule", criterion_7),
        ("local model arithmetic", criterion_8),
        ("singular support equals nucleus", criterion_9),
        ("characteristic independence", criterion_10),
        ("full verification suite under 60s", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match f() {
            Ok(()) => println!("PASS {:>2} {name} ({:.2?})", i + 1, start.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
