//! Torus subgroups of T^n as saturated sublattices of H₂(BT; Z) = Z^n.
//!
//! A circle subgroup is a primitive integer vector up to sign; an r-torus is
//! a saturated rank-r sublattice. Fixed lattices of subgroups of W are the
//! bridge between the group side and the geometry of the quotient.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{integer_kernel, saturated_basis, Field, FieldElem, FieldMat, IntMat};
use crate::group::Subgroup;

/// Saturated sublattice of Z^n with its canonical (Hermite) basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    ambient: usize,
    basis: IntMat,
}

impl Lattice {
    /// Wraps a basis that is already saturated and in Hermite normal form.
    pub(crate) fn from_canonical(ambient: usize, basis: IntMat) -> Lattice {
        debug_assert_eq!(basis.cols(), ambient);
        Lattice { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Lattice {
        Lattice::from_canonical(ambient, IntMat::zeros(0, ambient))
    }

    pub fn full(ambient: usize) -> Lattice {
        Lattice::from_canonical(ambient, IntMat::identity(ambient))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<BigInt>> {
        self.basis.row_vecs()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let extended = self
            .basis
            .vstack(&IntMat::from_rows(self.ambient, vec![v.to_vec()]).unwrap());
        extended.rank() == self.rank()
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.basis_vectors().iter().all(|v| other.contains(v))
    }

    /// Basis reduced into `field`, one row per basis vector.
    pub fn reduce(&self, field: Field) -> FieldMat {
        self.basis.to_field(field)
    }

    /// Whether a vector over `field` lies in the span of the reduced lattice.
    pub fn span_contains(&self, v: &[FieldElem], field: Field) -> bool {
        let row = FieldMat::from_rows(field, self.ambient, vec![v.to_vec()]).expect("field vector");
        let basis = self.reduce(field);
        basis.vstack(&row).rank() == basis.rank()
    }

    /// The lattice as `basis` rows re-saturated; the identity on saturated input.
    pub fn resaturate(&self) -> Lattice {
        Lattice::from_canonical(
            self.ambient,
            saturated_basis(&self.basis).expect("basis rows are independent"),
        )
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self
            .basis_vectors()
            .iter()
            .map(|v| {
                let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})", s.join(","))
            })
            .collect();
        write!(f, "span{{{}}}", vs.join(", "))
    }
}

/// A circle subgroup of T^n: primitive integer vector, first nonzero entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircleClass(Vec<BigInt>);

impl CircleClass {
    pub fn vector(&self) -> &[BigInt] {
        &self.0
    }
}

impl fmt::Display for CircleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Normalizes a nonzero integer tuple to its circle class.
pub fn circle_to_point(r: &[BigInt]) -> Result<CircleClass> {
    let g = r.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut v: Vec<BigInt> = r.iter().map(|x| x / &g).collect();
    if v.iter().find(|x| !x.is_zero()).unwrap().is_negative() {
        v.iter_mut().for_each(|x| *x = -&*x);
    }
    Ok(CircleClass(v))
}

/// Saturated lattice spanned by independent circle vectors in Z^`ambient`.
pub fn torus_to_subspace(ambient: usize, circles: &[Vec<BigInt>]) -> Result<Lattice> {
    let b = IntMat::from_rows(ambient, circles.to_vec())?;
    Ok(Lattice::from_canonical(ambient, saturated_basis(&b)?))
}

/// Saturated integral kernel of the stacked blocks `M_g − I`, g ∈ K.
///
/// Over F_p the reduction must span the F_p-fixed space exactly; a mismatch
/// means p divides the group order and is reported as an error.
pub fn fixed_lattice(k: &Subgroup) -> Result<Lattice> {
    let parent = k.parent();
    let n = parent.rank();
    let mut stacked = IntMat::zeros(0, n);
    for m in k.matrices() {
        if !m.is_identity() {
            stacked = stacked.vstack(&m.minus_identity());
        }
    }
    let lattice = Lattice::from_canonical(n, integer_kernel(&stacked));

    if let Field::Prime(p) = parent.field() {
        let field = parent.field();
        let blocks = stacked.to_field(field);
        let fp_dim = n - blocks.rank();
        let reduced = lattice.reduce(field);
        let annihilated = (0..reduced.rows())
            .all(|r| blocks.mul_vec(reduced.row(r)).iter().all(|x| x.is_zero()));
        if fp_dim != lattice.rank() || reduced.rank() != lattice.rank() || !annihilated {
            return Err(Error::ModPVerification {
                p,
                lattice_rank: lattice.rank(),
                fp_dim,
            });
        }
    }
    Ok(lattice)
}

/// Circles whose classes form the canonical basis of the fixed lattice of `k`.
pub fn witness_torus(k: &Subgroup) -> Result<Vec<CircleClass>> {
    let l = k.fixed_lattice()?;
    if l.rank() == 0 {
        return Err(Error::RankZeroFixedLattice);
    }
    l.basis_vectors()
        .iter()
        .map(|v| circle_to_point(v))
        .collect()
}
