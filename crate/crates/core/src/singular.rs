//! Jacobian-criterion oracle for `Spec k[y]/I`, the homogeneous singular
//! locus, and the support of the singularity category with witness modules.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactmath::{FieldElem, FieldMat, IntMat, Poly};
use crate::group::{GroupData, Subgroup};
use crate::invariants::{no_fixed_vectors, split_at, Presentation};
use crate::lattice::Lattice;
use crate::strata::{closed_strata, maximal_strata, nucleus, Stratum};

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "verdict", rename_all = "UPPERCASE")]
pub enum JacobianVerdict {
    Smooth,
    Singular,
    Inconclusive { reason: String },
}

impl JacobianVerdict {
    pub fn is_singular(&self) -> Option<bool> {
        match self {
            JacobianVerdict::Smooth => Some(false),
            JacobianVerdict::Singular => Some(true),
            JacobianVerdict::Inconclusive { .. } => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            JacobianVerdict::Smooth => "SMOOTH",
            JacobianVerdict::Singular => "SINGULAR",
            JacobianVerdict::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug)]
pub struct JacobianEvaluation {
    /// Generator values at the tested point.
    pub image: Vec<FieldElem>,
    pub rank: usize,
    /// `m − n`, the codimension of the quotient in generator space.
    pub expected_rank: usize,
    pub verdict: JacobianVerdict,
}

/// Jacobian criterion at the image point `q` (generator coordinates).
pub fn jacobian_at_image(pres: &Presentation, q: &[FieldElem]) -> Result<JacobianEvaluation> {
    let m = pres.generators.len();
    if q.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: q.len(),
        });
    }
    let expected_rank = m.checked_sub(pres.rank).ok_or_else(|| {
        Error::Internal("fewer generators than the rank of the torus".into())
    })?;
    let rows: Vec<Vec<FieldElem>> = pres
        .relations
        .iter()
        .map(|r| (0..m).map(|i| r.derivative(i).eval(q)).collect())
        .collect();
    let rank = FieldMat::from_rows(pres.field, m, rows)?.rank();
    let verdict = if rank == expected_rank {
        JacobianVerdict::Smooth
    } else if rank > expected_rank {
        return Err(Error::Internal(format!(
            "Jacobian rank {rank} exceeds the codimension {expected_rank}"
        )));
    } else if pres.relations_complete() {
        JacobianVerdict::Singular
    } else {
        JacobianVerdict::Inconclusive {
            reason: format!(
                "rank {rank} < {expected_rank} with relations searched only through weight {}; ideal generation is certified from weight {}",
                pres.relation_bound,
                2 * pres.group_order
            ),
        }
    };
    Ok(JacobianEvaluation {
        image: q.to_vec(),
        rank,
        expected_rank,
        verdict,
    })
}

/// Jacobian criterion at the image of a nonzero `v ∈ V`.
pub fn jacobian_at(pres: &Presentation, v: &[FieldElem]) -> Result<JacobianEvaluation> {
    if v.len() != pres.rank {
        return Err(Error::DimensionMismatch {
            expected: pres.rank,
            found: v.len(),
        });
    }
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    jacobian_at_image(pres, &pres.image_point(v)?)
}

/// Jacobian criterion at the origin of generator space.
pub fn jacobian_at_origin(pres: &Presentation) -> Result<JacobianEvaluation> {
    let q = vec![pres.field.zero(); pres.generators.len()];
    jacobian_at_image(pres, &q)
}

/// Classifier and oracle verdicts at one closed-stratum representative.
#[derive(Clone, Debug)]
pub struct StratumCheck {
    pub stratum: Stratum,
    pub classifier_singular: bool,
    pub oracle: JacobianEvaluation,
}

#[derive(Clone, Debug)]
pub struct SingularLocus {
    /// Maximal singular strata away from the origin.
    pub strata: Vec<Stratum>,
    pub origin_singular: bool,
    pub origin_oracle: JacobianEvaluation,
    pub checks: Vec<StratumCheck>,
    pub warnings: Vec<String>,
}

fn describe(v: &[impl std::fmt::Display]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Singular locus computed by the stabilizer classifier and checked against
/// the Jacobian oracle at every closed-stratum representative and the origin.
pub fn singular_locus(
    group: &Arc<GroupData>,
    pres: &Presentation,
    height_bound: u32,
) -> Result<SingularLocus> {
    let mut checks = Vec::new();
    let mut warnings = Vec::new();
    for s in closed_strata(group, height_bound)? {
        let oracle = jacobian_at(pres, &s.representative_in_field())?;
        let classifier_singular = s.nuclear;
        match oracle.verdict.is_singular() {
            Some(o) if o != classifier_singular => {
                return Err(Error::VerdictDisagreement {
                    point: describe(&s.representative),
                    classifier: verdict_word(classifier_singular),
                    oracle: oracle.verdict.label().to_string(),
                });
            }
            None => warnings.push(format!(
                "oracle inconclusive at {} (relation bound {})",
                describe(&s.representative),
                pres.relation_bound
            )),
            _ => {}
        }
        checks.push(StratumCheck {
            stratum: s,
            classifier_singular,
            oracle,
        });
    }

    let origin_singular = !Subgroup::whole(group).is_reflection_group();
    let origin_oracle = jacobian_at_origin(pres)?;
    match origin_oracle.verdict.is_singular() {
        Some(o) if o != origin_singular => {
            return Err(Error::VerdictDisagreement {
                point: "origin".into(),
                classifier: verdict_word(origin_singular),
                oracle: origin_oracle.verdict.label().to_string(),
            });
        }
        None => warnings.push(format!(
            "oracle inconclusive at the origin (relation bound {})",
            pres.relation_bound
        )),
        _ => {}
    }

    let singular: Vec<Stratum> = checks
        .iter()
        .filter(|c| c.classifier_singular)
        .map(|c| c.stratum.clone())
        .collect();
    let (strata, _) = maximal_strata(&singular);
    Ok(SingularLocus {
        strata,
        origin_singular,
        origin_oracle,
        checks,
        warnings,
    })
}

fn verdict_word(singular: bool) -> String {
    if singular { "SINGULAR" } else { "SMOOTH" }.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SupportPoint {
    Origin,
    Stratum(Lattice),
}

impl SupportPoint {
    pub fn lattice(&self, ambient: usize) -> Lattice {
        match self {
            SupportPoint::Origin => Lattice::zero(ambient),
            SupportPoint::Stratum(l) => l.clone(),
        }
    }
}

/// The cyclic module `R/𝔭` at a singular point, with the certificate that the
/// local ring there is not regular (so the residue field is not small).
#[derive(Clone, Debug)]
pub struct WitnessModule {
    pub point: SupportPoint,
    /// Indices of the generators that vanish identically on the stratum; the
    /// prime `𝔭` consists of the invariants vanishing there.
    pub vanishing_generators: Vec<usize>,
    pub stabilizer: Subgroup,
    pub complement: Lattice,
    /// Stabilizer acting on the complement of its fixed space.
    pub complement_action: Vec<IntMat>,
    /// Always false for a witness: the complement action is not generated by
    /// pseudoreflections.
    pub complement_is_reflection_group: bool,
    pub complement_has_no_fixed_vectors: bool,
}

impl WitnessModule {
    pub fn description(&self) -> String {
        let p = match &self.point {
            SupportPoint::Origin => "the irrelevant ideal".to_string(),
            SupportPoint::Stratum(l) => format!("the prime of {l}"),
        };
        format!(
            "R/p for p = {p}; its stabilizer of order {} acts on a rank-{} complement without pseudoreflection generation",
            self.stabilizer.order(),
            self.complement.rank()
        )
    }
}

fn vanishes_on(poly: &Poly, lattice: &Lattice) -> bool {
    let field = poly.field();
    let r = lattice.rank();
    if r == 0 {
        return true;
    }
    // Substitute x = Σ_i t_i b_i.
    let tw = Poly::standard_weights(r);
    let basis = lattice.basis_vectors();
    let images: Vec<Poly> = (0..poly.nvars())
        .map(|j| {
            let terms = (0..r).map(|i| {
                let mut e = vec![0; r];
                e[i] = 1;
                (e, field.from_bigint(&basis[i][j]))
            });
            Poly::from_terms(field, tw.clone(), terms).unwrap()
        })
        .collect();
    poly.compose(&images).map(|p| p.is_zero()).unwrap_or(false)
}

fn build_witness(
    point: SupportPoint,
    stabilizer: Subgroup,
    pres: &Presentation,
) -> Result<WitnessModule> {
    let field = stabilizer.parent().field();
    let split = split_at(&stabilizer)?;
    if split.regular {
        return Err(Error::SmoothStratum);
    }
    let lattice = point.lattice(pres.rank);
    let vanishing_generators = pres
        .generators
        .iter()
        .enumerate()
        .filter(|(_, g)| vanishes_on(&g.poly, &lattice))
        .map(|(i, _)| i)
        .collect();
    let complement_has_no_fixed_vectors =
        no_fixed_vectors(&split.restricted_action, split.complement.rank(), field);
    Ok(WitnessModule {
        point,
        vanishing_generators,
        stabilizer,
        complement: split.complement,
        complement_action: split.restricted_action,
        complement_is_reflection_group: split.regular,
        complement_has_no_fixed_vectors,
    })
}

/// Witness for a nuclear stratum; a smooth stratum is an error.
pub fn witness_module(stratum: &Stratum, pres: &Presentation) -> Result<WitnessModule> {
    if !stratum.nuclear {
        return Err(Error::SmoothStratum);
    }
    build_witness(
        SupportPoint::Stratum(stratum.subspace.clone()),
        stratum.subgroup.clone(),
        pres,
    )
}

/// Witness at the origin; fails when `W` is a reflection group.
pub fn origin_witness(group: &Arc<GroupData>, pres: &Presentation) -> Result<WitnessModule> {
    build_witness(SupportPoint::Origin, Subgroup::whole(group), pres)
}

#[derive(Clone, Debug)]
pub struct SuppDsg {
    pub members: Vec<WitnessModule>,
    pub locus: SingularLocus,
}

impl SuppDsg {
    /// Member subspaces, with the zero lattice standing for the origin.
    pub fn canonical_set(&self, ambient: usize) -> BTreeSet<Lattice> {
        self.members.iter().map(|m| m.point.lattice(ambient)).collect()
    }
}

/// Support of the singularity category of the cochains: the singular strata
/// and, when `W` is not a reflection group, the origin.
pub fn supp_dsg(
    group: &Arc<GroupData>,
    pres: &Presentation,
    height_bound: u32,
) -> Result<SuppDsg> {
    let locus = singular_locus(group, pres, height_bound)?;
    let mut members = Vec::new();
    if locus.origin_singular {
        members.push(origin_witness(group, pres)?);
    }
    for s in &locus.strata {
        members.push(witness_module(s, pres)?);
    }
    Ok(SuppDsg { members, locus })
}

/// Whether the singular support and the nucleus agree as sets of subspaces.
pub fn support_matches_nucleus(
    group: &Arc<GroupData>,
    supp: &SuppDsg,
    height_bound: u32,
) -> Result<bool> {
    let n = nucleus(group, height_bound)?;
    Ok(supp.canonical_set(group.rank()) == n.canonical_set(group.rank()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Field;
    use crate::group::close;
    use crate::invariants::presentation;
    use crate::strata::point_in_field;

    fn grp(rank: usize, gens: &[IntMat], p: u64) -> Arc<GroupData> {
        close(rank, gens, Field::from_characteristic(p).unwrap(), 1000).unwrap()
    }

    #[test]
    fn segre_oracle() {
        let g = grp(2, &[IntMat::diag(&[-1, -1])], 0);
        let pres = presentation(&g, None).unwrap();
        let e = jacobian_at(&pres, &point_in_field(&g, &[1, 0])).unwrap();
        assert_eq!(e.verdict, JacobianVerdict::Smooth);
        assert_eq!(e.rank, 1);
        assert_eq!(jacobian_at_origin(&pres).unwrap().verdict, JacobianVerdict::Singular);
        assert_eq!(
            jacobian_at(&pres, &point_in_field(&g, &[0, 0])).unwrap_err(),
            Error::ZeroVector
        );
    }

    #[test]
    fn truncated_relations_are_inconclusive() {
        let g = grp(2, &[IntMat::diag(&[-1, -1])], 0);
        let pres = presentation(&g, Some(3)).unwrap();
        assert!(pres.relations.is_empty());
        let e = jacobian_at_origin(&pres).unwrap();
        // no relations: rank 0 < 1, not certified
        assert!(matches!(e.verdict, JacobianVerdict::Inconclusive { .. }));
    }

    #[test]
    fn t3c2_locus() {
        let g = grp(3, &[IntMat::diag(&[-1, -1, 1])], 0);
        let pres = presentation(&g, None).unwrap();
        let e = jacobian_at(&pres, &point_in_field(&g, &[0, 0, 1])).unwrap();
        assert_eq!(e.verdict, JacobianVerdict::Singular);
        let one = Field::Rational.one();
        let zero = Field::Rational.zero();
        assert_eq!(e.image, vec![one, zero.clone(), zero.clone(), zero]);

        let locus = singular_locus(&g, &pres, 8).unwrap();
        assert_eq!(locus.strata.len(), 1);
        assert!(locus.origin_singular);
        assert!(locus.warnings.is_empty());

        let supp = supp_dsg(&g, &pres, 8).unwrap();
        assert_eq!(supp.members.len(), 2);
        assert!(support_matches_nucleus(&g, &supp, 8).unwrap());
        let w = &supp.members[1];
        assert!(w.stabilizer.is_whole());
        assert_eq!(w.complement_action.len(), 2);
        assert!(w.complement_action.contains(&IntMat::diag(&[-1, -1])));
        assert!(!w.complement_is_reflection_group);
        assert!(w.complement_has_no_fixed_vectors);
        assert_eq!(w.vanishing_generators, vec![1, 2, 3]);
    }

    #[test]
    fn smooth_stratum_has_no_witness() {
        let g = grp(3, &[IntMat::diag(&[-1, -1, 1])], 0);
        let pres = presentation(&g, None).unwrap();
        let smooth = closed_strata(&g, 8)
            .unwrap()
            .into_iter()
            .find(|s| !s.nuclear)
            .unwrap();
        assert_eq!(witness_module(&smooth, &pres).unwrap_err(), Error::SmoothStratum);
    }

    #[test]
    fn reflection_groups_have_empty_support() {
        let sw = IntMat::from_i64(&[[0, 1], [1, 0]]);
        for p in [0, 5, 7] {
            let g = grp(2, &[sw.clone(), IntMat::diag(&[-1, 1])], p);
            let pres = presentation(&g, None).unwrap();
            let supp = supp_dsg(&g, &pres, 8).unwrap();
            assert!(supp.members.is_empty());
            assert!(origin_witness(&g, &pres).is_err());
        }
    }

    #[test]
    fn segre_support_is_origin() {
        let g = grp(2, &[IntMat::diag(&[-1, -1])], 0);
        let pres = presentation(&g, None).unwrap();
        let supp = supp_dsg(&g, &pres, 8).unwrap();
        assert_eq!(supp.members.len(), 1);
        assert_eq!(supp.members[0].point, SupportPoint::Origin);
        assert!(supp.members[0].stabilizer.is_whole());
        assert_eq!(supp.members[0].vanishing_generators, vec![0, 1, 2]);
    }
}
