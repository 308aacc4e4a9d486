//! Splitting of `V` at a point: `V = V^{W_v} ⊕ V′`, with the stabilizer acting
//! on the complement `V′`.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactmath::{hermite_normal_form, nonzero_rows, saturate, Field, FieldElem, FieldMat, IntMat};
use crate::group::{close, GroupData, Subgroup};
use crate::lattice::Lattice;
use crate::strata::{pointwise_stabilizer, setwise_stabilizer};

#[derive(Clone, Debug)]
pub struct LocalModel {
    pub point: Vec<FieldElem>,
    /// Size of the orbit of the line through the point.
    pub orbit_size: usize,
    pub setwise: Subgroup,
    pub pointwise: Subgroup,
    pub fixed_part: Lattice,
    pub complement: Lattice,
    /// Action of each element of `pointwise` (in element order) on the
    /// complement, in the coordinates of its canonical basis; column `j` is
    /// the image of basis vector `j`.
    pub restricted_action: Vec<IntMat>,
    /// Whether the stabilizer acts on the complement as a reflection group.
    pub regular: bool,
}

impl LocalModel {
    /// The complement contains no nonzero vector fixed by the stabilizer.
    pub fn complement_has_no_fixed_vectors(&self, field: Field) -> bool {
        no_fixed_vectors(&self.restricted_action, self.complement.rank(), field)
    }
}

/// Rational solution of `basisᵀ c = v`, required to be integral.
fn coordinates(basis_t: &FieldMat, v: &[BigInt]) -> Result<Vec<BigInt>> {
    let target = Field::Rational.vector_from_ints(v);
    let c = basis_t
        .solve(&target)
        .filter(|c| basis_t.mul_vec(c) == target)
        .ok_or_else(|| Error::Internal("complement is not stable under the stabilizer".into()))?;
    c.iter()
        .map(|x| {
            x.to_integer()
                .ok_or_else(|| Error::Internal("restricted action is not integral".into()))
        })
        .collect()
}

/// Local decomposition at `v`, over the field of `group`.
pub fn local_model(group: &Arc<GroupData>, v: &[FieldElem]) -> Result<LocalModel> {
    let setwise = setwise_stabilizer(group, v)?;
    let pointwise = pointwise_stabilizer(group, v)?;
    let split = split_at(&pointwise)?;
    Ok(LocalModel {
        point: v.to_vec(),
        orbit_size: group.order() / setwise.order(),
        setwise,
        pointwise,
        fixed_part: split.fixed_part,
        complement: split.complement,
        restricted_action: split.restricted_action,
        regular: split.regular,
    })
}

/// The decomposition `V = V^K ⊕ V′` for a subgroup `K`, with `K` acting on `V′`.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub fixed_part: Lattice,
    pub complement: Lattice,
    pub restricted_action: Vec<IntMat>,
    pub regular: bool,
}

pub fn split_at(k: &Subgroup) -> Result<Splitting> {
    let group = k.parent();
    let n = group.rank();
    let fixed_part = k.fixed_lattice()?;

    // V′ is the saturated image of |K|·I − Σ_{g ∈ K} M_g.
    let mut p = IntMat::identity(n);
    for i in 0..n {
        p.set(i, i, BigInt::from(k.order()));
    }
    for m in k.matrices() {
        p = p.sub(m);
    }
    let spanning = nonzero_rows(&hermite_normal_form(&p.transpose()).0);
    let complement = saturate(&spanning)?;
    let r = complement.rank();
    if fixed_part.rank() + r != n {
        return Err(Error::Internal("fixed part and complement do not split V".into()));
    }

    let basis_t = complement.basis().transpose().to_field(Field::Rational);
    let basis = complement.basis_vectors();
    let mut restricted_action = Vec::with_capacity(k.order());
    for m in k.matrices() {
        let mut a = IntMat::zeros(r, r);
        for (j, b) in basis.iter().enumerate() {
            for (i, c) in coordinates(&basis_t, &m.mul_vec(b))?.into_iter().enumerate() {
                a.set(i, j, c);
            }
        }
        restricted_action.push(a);
    }

    let regular = if r == 0 {
        true
    } else {
        let restricted = close(r, &restricted_action, group.field(), k.order())?;
        Subgroup::whole(&restricted).is_reflection_group()
    };
    Ok(Splitting {
        fixed_part,
        complement,
        restricted_action,
        regular,
    })
}

/// Whether the matrices fix no nonzero vector of `F^r`.
pub(crate) fn no_fixed_vectors(action: &[IntMat], r: usize, field: Field) -> bool {
    let mut stacked = FieldMat::zeros(field, 0, r);
    for a in action {
        stacked = stacked.vstack(&a.minus_identity().to_field(field));
    }
    stacked.rank() == r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::point_in_field;

    fn grp(rank: usize, gens: &[IntMat]) -> Arc<GroupData> {
        close(rank, gens, Field::Rational, 1000).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn segre_point() {
        let g = grp(2, &[IntMat::diag(&[-1, -1])]);
        let lm = local_model(&g, &point_in_field(&g, &[1, 0])).unwrap();
        assert_eq!(lm.orbit_size, 1);
        assert!(lm.setwise.is_whole());
        assert_eq!(lm.pointwise.order(), 1);
        assert!(lm.regular);
        assert_eq!(lm.complement.rank(), 0);
        assert_eq!(lm.fixed_part, Lattice::full(2));
    }

    #[test]
    fn t3c2_point() {
        let g = grp(3, &[IntMat::diag(&[-1, -1, 1])]);
        let lm = local_model(&g, &point_in_field(&g, &[0, 0, 1])).unwrap();
        assert_eq!(lm.orbit_size, 1);
        assert!(lm.setwise.is_whole() && lm.pointwise.is_whole());
        assert_eq!(lm.complement.basis_vectors(), vec![ints(&[1, 0, 0]), ints(&[0, 1, 0])]);
        assert!(!lm.regular);
        assert!(lm.restricted_action.contains(&IntMat::diag(&[-1, -1])));
        assert!(lm.complement_has_no_fixed_vectors(Field::Rational));
    }

    #[test]
    fn swap_points() {
        let g = grp(2, &[IntMat::from_i64(&[[0, 1], [1, 0]])]);
        let lm = local_model(&g, &point_in_field(&g, &[1, 2])).unwrap();
        assert_eq!(lm.orbit_size, 2);
        assert_eq!(lm.setwise.order(), 1);
        assert!(lm.regular);

        let lm = local_model(&g, &point_in_field(&g, &[1, 1])).unwrap();
        assert!(lm.pointwise.is_whole());
        assert_eq!(lm.complement.basis_vectors(), vec![ints(&[1, -1])]);
        assert_eq!(lm.restricted_action[1], IntMat::diag(&[-1]));
        assert!(lm.regular);
        assert!(lm.complement_has_no_fixed_vectors(Field::Rational));
        assert!(local_model(&g, &point_in_field(&g, &[0, 0])).is_err());
    }
}
