//! Stabilizer stratification of `V = H₂(BT; k)` and the nucleus.
//!
//! Points of `V/W` are classified by the pointwise stabilizer `W_v`. The
//! stabilizers that occur are exactly the closed subgroups `K` (those equal to
//! the pointwise stabilizer of `V^K`), so the strata are the subspaces `V^K`.
//! A stratum is nuclear when `K` is not generated by pseudoreflections.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use crate::error::{Error, Result};
use crate::exactmath::{FieldElem, FieldMat};
use crate::group::{subgroups, GroupData, Subgroup};
use crate::lattice::{witness_torus, CircleClass, Lattice};

pub const DEFAULT_HEIGHT_BOUND: u32 = 8;

fn check_point(group: &GroupData, v: &[FieldElem]) -> Result<()> {
    if v.len() != group.rank() {
        return Err(Error::DimensionMismatch {
            expected: group.rank(),
            found: v.len(),
        });
    }
    if v.iter().any(|x| x.field() != group.field()) {
        return Err(Error::MixedCharacteristic);
    }
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

fn act(group: &GroupData, g: usize, v: &[FieldElem]) -> Vec<FieldElem> {
    group.element(g).to_field(group.field()).mul_vec(v)
}

/// `{g ∈ W : M_g v = v}` over the group's field.
pub fn pointwise_stabilizer(group: &Arc<GroupData>, v: &[FieldElem]) -> Result<Subgroup> {
    check_point(group, v)?;
    let els: Vec<usize> = (0..group.order())
        .filter(|&g| act(group, g, v) == v)
        .collect();
    Ok(Subgroup::from_elements(group, &els).expect("stabilizers are subgroups"))
}

/// `{g ∈ W : M_g v ∈ k·v}`, the stabilizer of the line through `v`.
pub fn setwise_stabilizer(group: &Arc<GroupData>, v: &[FieldElem]) -> Result<Subgroup> {
    check_point(group, v)?;
    let field = group.field();
    let els: Vec<usize> = (0..group.order())
        .filter(|&g| {
            let w = act(group, g, v);
            FieldMat::from_rows(field, v.len(), vec![v.to_vec(), w])
                .unwrap()
                .rank()
                == 1
        })
        .collect();
    Ok(Subgroup::from_elements(group, &els).expect("line stabilizers are subgroups"))
}

/// Elements of `W` fixing every vector of `lattice`.
pub fn lattice_stabilizer(group: &Arc<GroupData>, lattice: &Lattice) -> Subgroup {
    let basis = lattice.basis_vectors();
    let els: Vec<usize> = (0..group.order())
        .filter(|&g| {
            let m = group.element(g);
            basis.iter().all(|b| m.mul_vec(b) == *b)
        })
        .collect();
    Subgroup::from_elements(group, &els).expect("pointwise stabilizers are subgroups")
}

/// The pointwise stabilizer of `V^K`; contains `K` and is idempotent.
pub fn closure(k: &Subgroup) -> Result<Subgroup> {
    Ok(lattice_stabilizer(k.parent(), &k.fixed_lattice()?))
}

/// All subgroups equal to their closure, sorted by order then element set.
pub fn closed_subgroups(group: &Arc<GroupData>) -> Result<Vec<Subgroup>> {
    let mut out = BTreeSet::new();
    for k in subgroups(group) {
        out.insert(closure(&k)?);
    }
    Ok(out.into_iter().collect())
}

fn value_rank(x: i64) -> i64 {
    2 * x.abs() - i64::from(x > 0)
}

/// Coefficient tuples of sup-norm exactly `h`, sparsest first, then by the
/// positions of the nonzero entries, then preferring small positive values.
fn coefficient_tuples(r: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![-h; r];
    loop {
        if cur.iter().any(|x| x.abs() == h) {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == r {
                out.sort_by_key(|c| {
                    let nnz = c.iter().filter(|&&x| x != 0).count();
                    let positions: Vec<usize> =
                        (0..r).filter(|&i| c[i] != 0).collect();
                    let ranks: Vec<i64> = c.iter().map(|&x| value_rank(x)).collect();
                    (nnz, positions, ranks)
                });
                return out;
            }
            cur[i] += 1;
            if cur[i] <= h {
                break;
            }
            cur[i] = -h;
            i += 1;
        }
    }
}

/// An integer vector of `V^K` whose pointwise stabilizer over the group's field
/// is exactly `K`, searching lattice combinations of growing height.
pub fn representative_point(k: &Subgroup, height_bound: u32) -> Result<Vec<BigInt>> {
    let group = k.parent();
    let field = group.field();
    let lattice = k.fixed_lattice()?;
    if lattice.rank() == 0 {
        return Err(Error::RankZeroFixedLattice);
    }
    let basis = lattice.basis().transpose();
    for h in 1..=height_bound as i64 {
        for c in coefficient_tuples(lattice.rank(), h) {
            let coeffs: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
            let v = basis.mul_vec(&coeffs);
            let vk = field.vector_from_ints(&v);
            if vk.iter().all(|x| x.is_zero()) {
                continue;
            }
            if pointwise_stabilizer(group, &vk)? == *k {
                return Ok(v);
            }
        }
    }
    Err(Error::RepresentativeNotFound {
        height: height_bound,
    })
}

/// A closed subgroup with positive-rank fixed lattice.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub subgroup: Subgroup,
    pub subspace: Lattice,
    pub representative: Vec<BigInt>,
    pub nuclear: bool,
}

impl Stratum {
    pub fn representative_in_field(&self) -> Vec<FieldElem> {
        self.subgroup
            .parent()
            .field()
            .vector_from_ints(&self.representative)
    }
}

impl PartialEq for Stratum {
    fn eq(&self, other: &Self) -> bool {
        self.subgroup == other.subgroup
    }
}

impl Eq for Stratum {}

/// Strata of every closed subgroup with positive-rank fixed lattice.
pub fn closed_strata(group: &Arc<GroupData>, height_bound: u32) -> Result<Vec<Stratum>> {
    let mut out = Vec::new();
    for k in closed_subgroups(group)? {
        let subspace = k.fixed_lattice()?;
        if subspace.rank() == 0 {
            continue;
        }
        let representative = representative_point(&k, height_bound)?;
        let nuclear = !k.is_reflection_group();
        out.push(Stratum {
            subgroup: k,
            subspace,
            representative,
            nuclear,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Classification {
    /// `Y_G = ∅`: the invariant ring is polynomial.
    Empty,
    /// `Y_G = {0}`.
    Trivial,
    /// Some positive-dimensional stratum is nuclear.
    Positive,
}

#[derive(Clone, Debug)]
pub struct Nucleus {
    /// Maximal nuclear strata (pairwise incomparable subspaces).
    pub strata: Vec<Stratum>,
    /// Every nuclear stratum, maximal or not.
    pub nuclear_strata: Vec<Stratum>,
    /// For each non-maximal nuclear stratum (index into `nuclear_strata`), the
    /// index of a maximal stratum (into `strata`) containing it.
    pub containment: Vec<(usize, usize)>,
    pub includes_origin: bool,
    pub classification: Classification,
}

impl Nucleus {
    /// Stratum subspaces, with the zero lattice standing for the origin.
    pub fn canonical_set(&self, ambient: usize) -> BTreeSet<Lattice> {
        let mut s: BTreeSet<Lattice> = self.strata.iter().map(|s| s.subspace.clone()).collect();
        if self.includes_origin {
            s.insert(Lattice::zero(ambient));
        }
        s
    }
}

/// Keeps the strata whose subspace is not strictly inside another's.
pub(crate) fn maximal_strata(strata: &[Stratum]) -> (Vec<Stratum>, Vec<(usize, usize)>) {
    let is_max: Vec<bool> = strata
        .iter()
        .map(|s| {
            !strata.iter().any(|t| {
                t.subspace.rank() > s.subspace.rank() && s.subspace.is_sublattice_of(&t.subspace)
            })
        })
        .collect();
    let maximal: Vec<Stratum> = strata
        .iter()
        .zip(&is_max)
        .filter(|(_, &m)| m)
        .map(|(s, _)| s.clone())
        .collect();
    let containment = strata
        .iter()
        .enumerate()
        .filter(|(i, _)| !is_max[*i])
        .map(|(i, s)| {
            let j = maximal
                .iter()
                .position(|t| s.subspace.is_sublattice_of(&t.subspace))
                .expect("a maximal stratum contains it");
            (i, j)
        })
        .collect();
    (maximal, containment)
}

/// The nucleus over the group's field.
pub fn nucleus(group: &Arc<GroupData>, height_bound: u32) -> Result<Nucleus> {
    let nuclear: Vec<Stratum> = closed_strata(group, height_bound)?
        .into_iter()
        .filter(|s| s.nuclear)
        .collect();
    let (strata, containment) = maximal_strata(&nuclear);
    let includes_origin = !Subgroup::whole(group).is_reflection_group();
    if !strata.is_empty() && !includes_origin {
        return Err(Error::Internal(
            "nuclear stratum found although W is a reflection group".into(),
        ));
    }
    let classification = match (includes_origin, strata.is_empty()) {
        (false, _) => Classification::Empty,
        (true, true) => Classification::Trivial,
        (true, false) => Classification::Positive,
    };
    Ok(Nucleus {
        strata,
        nuclear_strata: nuclear,
        containment,
        includes_origin,
        classification,
    })
}

#[derive(Clone, Debug)]
pub struct PointClassification {
    pub stabilizer: Subgroup,
    pub setwise_stabilizer: Subgroup,
    pub singular: bool,
    pub witness: Vec<CircleClass>,
}

/// Singularity of the image of `v` in `V/W`, decided by whether the pointwise
/// stabilizer is a reflection group.
pub fn classify_point(group: &Arc<GroupData>, v: &[FieldElem]) -> Result<PointClassification> {
    let stabilizer = pointwise_stabilizer(group, v)?;
    let setwise = setwise_stabilizer(group, v)?;
    let singular = !stabilizer.is_reflection_group();
    let witness = if singular {
        witness_torus(&closure(&stabilizer)?)?
    } else {
        Vec::new()
    };
    Ok(PointClassification {
        stabilizer,
        setwise_stabilizer: setwise,
        singular,
        witness,
    })
}

/// Integer vector to the group's field.
pub fn point_in_field(group: &GroupData, v: &[i64]) -> Vec<FieldElem> {
    v.iter().map(|&x| group.field().from_i64(x)).collect()
}
