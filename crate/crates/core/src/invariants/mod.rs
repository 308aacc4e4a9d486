//! The invariant ring `k[V]^W`: averaging, Hilbert series, degreewise bases,
//! a minimal generating set and the relations among it.

mod local;

pub use local::{local_model, split_at, LocalModel, Splitting};
pub(crate) use local::no_fixed_vectors;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{monomials_of_weight, Exponent, Field, FieldElem, FieldMat, IntMat, Poly, RowSpace};
use crate::group::{GroupData, Subgroup};

/// `|W|⁻¹ Σ_w w·f`.
pub fn reynolds(group: &GroupData, f: &Poly) -> Poly {
    let field = f.field();
    let mut acc = Poly::zero(field, f.var_weights().clone());
    for m in group.elements() {
        acc = acc.add(&f.act(m));
    }
    let inv = field
        .from_i64(group.order() as i64)
        .inv()
        .expect("group order is invertible in a non-modular field");
    acc.scale(&inv)
}

/// Coefficients of `det(I − tM) = Σ_k (−1)^k e_k(M) t^k`, with `e_k` the sum of
/// principal `k × k` minors.
fn det_one_minus_t(m: &IntMat) -> Vec<BigInt> {
    let n = m.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for mask in 0u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let minor = if idx.is_empty() {
            BigInt::one()
        } else {
            let rows = idx
                .iter()
                .map(|&i| idx.iter().map(|&j| m.get(i, j).clone()).collect())
                .collect();
            IntMat::from_rows(idx.len(), rows).unwrap().determinant()
        };
        let k = idx.len();
        if k % 2 == 0 {
            coeffs[k] += minor;
        } else {
            coeffs[k] -= minor;
        }
    }
    coeffs
}

/// Power series of `1/p(t)` for `p(0) = 1`, through `t^bound`.
fn invert_series(p: &[BigInt], bound: usize) -> Vec<BigInt> {
    let mut a = vec![BigInt::zero(); bound + 1];
    a[0] = BigInt::one();
    for k in 1..=bound {
        let mut s = BigInt::zero();
        for i in 1..p.len().min(k + 1) {
            s += &p[i] * &a[k - i];
        }
        a[k] = -s;
    }
    a
}

/// Molien series `|W|⁻¹ Σ_w 1/det(I − t M_w)` through `t^bound`, over Q.
pub fn molien(group: &GroupData, bound: u32) -> Vec<BigInt> {
    let mut classes: BTreeMap<Vec<BigInt>, usize> = BTreeMap::new();
    for m in group.elements() {
        *classes.entry(det_one_minus_t(m)).or_insert(0) += 1;
    }
    let bound = bound as usize;
    let mut total = vec![BigInt::zero(); bound + 1];
    for (p, mult) in &classes {
        let series = invert_series(p, bound);
        for (t, s) in total.iter_mut().zip(series) {
            *t += s * BigInt::from(*mult);
        }
    }
    let order = BigInt::from(group.order());
    total
        .into_iter()
        .map(|t| {
            let (q, r) = t.div_rem(&order);
            assert!(r.is_zero() && !q.is_negative(), "Molien coefficient is not a natural number");
            q
        })
        .collect()
}

/// Matrix of `f ↦ M·f` on the monomial basis of a fixed weight; column `j`
/// holds the image of `basis[j]`.
fn action_matrix(field: Field, weights: &Arc<[u32]>, basis: &[Exponent], m: &IntMat) -> FieldMat {
    let d = basis.len();
    let mut a = FieldMat::zeros(field, d, d);
    for (j, e) in basis.iter().enumerate() {
        let img = Poly::monomial(field, weights.clone(), e.clone()).act(m);
        for (i, c) in img.coefficients_on(basis).into_iter().enumerate() {
            a.set(i, j, c);
        }
    }
    a
}

fn invariant_basis_checked(group: &GroupData, w: u32, expected: &BigInt) -> Result<Vec<Poly>> {
    let field = group.field();
    let weights = Poly::standard_weights(group.rank());
    let basis = monomials_of_weight(&weights, w);
    let d = basis.len();
    let mut stacked = FieldMat::zeros(field, 0, d);
    for &g in group.generators() {
        let a = action_matrix(field, &weights, &basis, group.element(g));
        let mut block = a;
        for i in 0..d {
            let x = block.get(i, i) - &field.one();
            block.set(i, i, x);
        }
        stacked = stacked.vstack(&block);
    }
    let kernel = stacked.kernel();
    if BigInt::from(kernel.len()) != *expected {
        return Err(Error::MolienMismatch {
            weight: w,
            expected: expected.to_string(),
            found: kernel.len(),
        });
    }
    kernel
        .iter()
        .map(|c| Poly::from_coefficients(field, weights.clone(), &basis, c))
        .collect()
}

/// Basis of the weight-`w` invariants, checked against the Molien series.
pub fn invariant_basis(group: &GroupData, w: u32) -> Result<Vec<Poly>> {
    let mol = molien(group, w);
    invariant_basis_checked(group, w, &mol[w as usize])
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub poly: Poly,
    pub weight: u32,
}

impl Generator {
    /// Cohomological degree under the convention that `H²(BT)` has codegree 2.
    pub fn codegree(&self) -> u32 {
        2 * self.weight
    }
}

/// Computes invariant bases lazily, with the Molien check, for one group.
struct Bases<'a> {
    group: &'a GroupData,
    molien: Vec<BigInt>,
    cache: BTreeMap<u32, Vec<Poly>>,
}

impl<'a> Bases<'a> {
    fn new(group: &'a GroupData, bound: u32) -> Bases<'a> {
        Bases {
            group,
            molien: molien(group, bound),
            cache: BTreeMap::new(),
        }
    }

    fn get(&mut self, w: u32) -> Result<&[Poly]> {
        if !self.cache.contains_key(&w) {
            if w as usize >= self.molien.len() {
                self.molien = molien(self.group, w);
            }
            let b = invariant_basis_checked(self.group, w, &self.molien[w as usize])?;
            self.cache.insert(w, b);
        }
        Ok(&self.cache[&w])
    }
}

fn generators_from(bases: &mut Bases<'_>) -> Result<Vec<Generator>> {
    let group = bases.group;
    let weights = Poly::standard_weights(group.rank());
    let mut gens: Vec<Generator> = Vec::new();
    for w in 1..=group.order() as u32 {
        let monos = monomials_of_weight(&weights, w);
        let mut span = RowSpace::new(monos.len());
        for g in &gens {
            if g.weight >= w {
                continue;
            }
            for b in bases.get(w - g.weight)?.to_vec() {
                span.insert(&g.poly.mul(&b).coefficients_on(&monos));
            }
        }
        for b in bases.get(w)?.to_vec() {
            if span.insert(&b.coefficients_on(&monos)).is_some() {
                gens.push(Generator { poly: b, weight: w });
            }
        }
    }
    Ok(gens)
}

/// A minimal homogeneous generating set, by weight up to `|W|`.
pub fn generators(group: &GroupData) -> Result<Vec<Generator>> {
    generators_from(&mut Bases::new(group, group.order() as u32))
}

/// Per-weight bookkeeping of the relation search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditRow {
    pub weight: u32,
    /// Monomials in the generator variables of this weight.
    pub monomials: usize,
    /// Dimension of all relations in this weight, multiples included.
    pub relation_dim: usize,
    pub molien: BigInt,
}

impl AuditRow {
    pub fn consistent(&self) -> bool {
        BigInt::from(self.monomials - self.relation_dim) == self.molien
    }
}

/// Scales a relation to a canonical representative: primitive integral with
/// positive leading coefficient over Q, monic over F_p.
fn normalize_relation(r: &Poly) -> Poly {
    let field = r.field();
    match field {
        Field::Rational => {
            let mut lcm = BigInt::one();
            for (_, c) in r.terms() {
                lcm = lcm.lcm(c.as_rational().unwrap().denom());
            }
            let scaled = r.scale(&field.from_bigint(&lcm));
            let mut g = BigInt::zero();
            for (_, c) in scaled.terms() {
                g = g.gcd(&c.to_integer().unwrap());
            }
            let mut s = field.from_bigint(&g).inv().unwrap();
            if scaled.terms().next().map(|(_, c)| c.is_negative()).unwrap_or(false) {
                s = -s;
            }
            scaled.scale(&s)
        }
        Field::Prime(_) => {
            let lead = r.terms().next().unwrap().1.inv().unwrap();
            r.scale(&lead)
        }
    }
}

/// Relations among `gens` of weight at most `bound`, each reduced modulo the
/// multiples of the relations found before it.
pub fn relations(group: &GroupData, gens: &[Generator], bound: u32) -> Result<Vec<Poly>> {
    Ok(relations_audited(group, gens, bound)?.0)
}

fn relations_audited(
    group: &GroupData,
    gens: &[Generator],
    bound: u32,
) -> Result<(Vec<Poly>, Vec<AuditRow>)> {
    let field = group.field();
    let xw = Poly::standard_weights(group.rank());
    let yw: Arc<[u32]> = gens.iter().map(|g| g.weight).collect();
    let images: Vec<Poly> = gens.iter().map(|g| g.poly.clone()).collect();
    let mol = molien(group, bound);
    let mut found: Vec<Poly> = Vec::new();
    let mut audit = Vec::new();
    for w in 1..=bound {
        let ymons = monomials_of_weight(&yw, w);
        if ymons.is_empty() {
            audit.push(AuditRow {
                weight: w,
                monomials: 0,
                relation_dim: 0,
                molien: mol[w as usize].clone(),
            });
            continue;
        }
        let xmons = monomials_of_weight(&xw, w);
        let mut eval = FieldMat::zeros(field, xmons.len(), ymons.len());
        for (j, e) in ymons.iter().enumerate() {
            let img = Poly::monomial(field, yw.clone(), e.clone()).compose(&images)?;
            for (i, c) in img.coefficients_on(&xmons).into_iter().enumerate() {
                eval.set(i, j, c);
            }
        }
        let kernel = eval.kernel();
        let mut span = RowSpace::new(ymons.len());
        for r in &found {
            let d = r.weight().expect("relations are nonzero");
            for e in monomials_of_weight(&yw, w - d) {
                let multiple = r.mul(&Poly::monomial(field, yw.clone(), e));
                span.insert(&multiple.coefficients_on(&ymons));
            }
        }
        for k in &kernel {
            if let Some(reduced) = span.insert(k) {
                let r = Poly::from_coefficients(field, yw.clone(), &ymons, &reduced)?;
                found.push(normalize_relation(&r));
            }
        }
        audit.push(AuditRow {
            weight: w,
            monomials: ymons.len(),
            relation_dim: kernel.len(),
            molien: mol[w as usize].clone(),
        });
    }
    Ok((found, audit))
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub field: Field,
    pub rank: usize,
    pub group_order: usize,
    /// Generators sorted by weight.
    pub generators: Vec<Generator>,
    /// Relations in the generator variables `y_i` (weight of `y_i` = weight of
    /// generator `i`).
    pub relations: Vec<Poly>,
    pub relation_bound: u32,
    /// Molien coefficients for weights `0..=max(relation_bound, 2|W|)`.
    pub molien: Vec<BigInt>,
    pub audit: Vec<AuditRow>,
    pub is_polynomial: bool,
}

impl Presentation {
    pub fn generator_weights(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.weight).collect()
    }

    /// Generator values at `v`.
    pub fn image_point(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: v.len(),
            });
        }
        Ok(self.generators.iter().map(|g| g.poly.eval(v)).collect())
    }

    /// Whether the relations are known to generate the whole relation ideal:
    /// trivially when the generators are independent, otherwise because the
    /// ideal is generated in weight at most `2|W|` in the non-modular case.
    pub fn relations_complete(&self) -> bool {
        self.generators.len() == self.rank || self.relation_bound as usize >= 2 * self.group_order
    }

    pub fn max_generator_weight(&self) -> u32 {
        self.generators.iter().map(|g| g.weight).max().unwrap_or(0)
    }
}

/// Default relation bound: twice the largest generator weight.
pub fn default_relation_bound(gens: &[Generator]) -> u32 {
    2 * gens.iter().map(|g| g.weight).max().unwrap_or(0)
}

/// Generators, relations up to `bound` (default: twice the top generator
/// weight) and the Molien audit.
pub fn presentation(group: &Arc<GroupData>, bound: Option<u32>) -> Result<Presentation> {
    let order = group.order() as u32;
    let mut bases = Bases::new(group, order);
    let generators = generators_from(&mut bases)?;
    let relation_bound = bound.unwrap_or_else(|| default_relation_bound(&generators));
    let (relations, audit) = relations_audited(group, &generators, relation_bound)?;
    if let Some(row) = audit.iter().find(|r| !r.consistent()) {
        return Err(Error::Internal(format!(
            "relation audit failed in weight {}: {} monomials, {} relations, Molien {}",
            row.weight, row.monomials, row.relation_dim, row.molien
        )));
    }
    let is_polynomial = relations.is_empty() && generators.len() == group.rank();
    if is_polynomial != Subgroup::whole(group).is_reflection_group() {
        return Err(Error::Internal(
            "polynomiality disagrees with the pseudoreflection test".into(),
        ));
    }
    let molien = molien(group, relation_bound.max(2 * order));
    Ok(Presentation {
        field: group.field(),
        rank: group.rank(),
        group_order: group.order(),
        generators,
        relations,
        relation_bound,
        molien,
        audit,
        is_polynomial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::close;
    use proptest::prelude::*;

    fn grp(rank: usize, gens: &[IntMat], p: u64) -> Arc<GroupData> {
        close(rank, gens, Field::from_characteristic(p).unwrap(), 1000).unwrap()
    }

    fn swap() -> IntMat {
        IntMat::from_i64(&[[0, 1], [1, 0]])
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn xpoly(field: Field, n: usize, terms: &[(&[u32], i64)]) -> Poly {
        Poly::from_terms(
            field,
            Poly::standard_weights(n),
            terms.iter().map(|(e, c)| (e.to_vec(), field.from_i64(*c))),
        )
        .unwrap()
    }

    /// Number of monomials of each degree fixed by every group element, for
    /// monomial (signed permutation) groups: an independent invariant count.
    fn brute_monomial_count(group: &GroupData, w: u32) -> usize {
        let weights = Poly::standard_weights(group.rank());
        let monos = monomials_of_weight(&weights, w);
        // orbit sums of monomials whose stabilizer acts by the trivial sign
        let mut seen = std::collections::BTreeSet::new();
        let mut count = 0;
        for e in &monos {
            if seen.contains(e) {
                continue;
            }
            let f = Poly::monomial(Field::Rational, weights.clone(), e.clone());
            let mut orbit_ok = true;
            for m in group.elements() {
                let img = f.act(m);
                let (ie, c) = img.terms().next().map(|(e, c)| (e.clone(), c.clone())).unwrap();
                seen.insert(ie.clone());
                if ie == *e && !c.is_one() {
                    orbit_ok = false;
                }
            }
            if orbit_ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn molien_examples() {
        let triv = grp(3, &[], 0);
        let m = molien(&triv, 5);
        let binom: Vec<BigInt> = (0..=5).map(|d| BigInt::from((d + 1) * (d + 2) / 2)).collect();
        assert_eq!(m, binom);
        let neg = grp(2, &[IntMat::diag(&[-1, -1])], 0);
        assert_eq!(molien(&neg, 6), ints(&[1, 0, 3, 0, 5, 0, 7]));
        let sw = grp(2, &[swap()], 0);
        assert_eq!(molien(&sw, 6), ints(&[1, 1, 2, 2, 3, 3, 4]));
    }

    #[test]
    fn molien_matches_monomial_count() {
        let groups = [
            grp(2, &[swap(), IntMat::diag(&[-1, 1])], 0),
            grp(3, &[IntMat::diag(&[-1, -1, 1])], 0),
            grp(
                3,
                &[
                    IntMat::from_i64(&[[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
                    IntMat::from_i64(&[[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
                ],
                0,
            ),
        ];
        for g in &groups {
            let m = molien(g, 8);
            for w in 0..=8u32 {
                assert_eq!(m[w as usize], BigInt::from(brute_monomial_count(g, w)), "weight {w}");
            }
        }
    }

    #[test]
    fn reynolds_examples() {
        let neg = grp(2, &[IntMat::diag(&[-1, -1])], 0);
        let f = Field::Rational;
        let u = xpoly(f, 2, &[(&[1, 0], 1)]);
        assert!(reynolds(&neg, &u).is_zero());
        let u2 = u.mul(&u);
        assert_eq!(reynolds(&neg, &u2), u2);
        let sw = grp(2, &[swap()], 0);
        let r = reynolds(&sw, &u);
        let half = f.from_i64(2).inv().unwrap();
        assert_eq!(r, xpoly(f, 2, &[(&[1, 0], 1), (&[0, 1], 1)]).scale(&half));
    }

    #[test]
    fn invariant_basis_examples() {
        let neg = grp(2, &[IntMat::diag(&[-1, -1])], 0);
        assert!(invariant_basis(&neg, 1).unwrap().is_empty());
        let f = Field::Rational;
        let b = invariant_basis(&neg, 2).unwrap();
        assert_eq!(
            b,
            vec![
                xpoly(f, 2, &[(&[2, 0], 1)]),
                xpoly(f, 2, &[(&[1, 1], 1)]),
                xpoly(f, 2, &[(&[0, 2], 1)]),
            ]
        );
        let sw = grp(2, &[swap()], 0);
        assert_eq!(
            invariant_basis(&sw, 1).unwrap(),
            vec![xpoly(f, 2, &[(&[1, 0], 1), (&[0, 1], 1)])]
        );
        for p in [3, 5, 7] {
            let neg = grp(2, &[IntMat::diag(&[-1, -1])], p);
            for w in 0..=6 {
                assert_eq!(invariant_basis(&neg, w).unwrap().len(), [1, 0, 3, 0, 5, 0, 7][w as usize]);
            }
        }
    }

    #[test]
    fn generator_examples() {
        let w = |g: &Arc<GroupData>| -> Vec<u32> { generators(g).unwrap().iter().map(|g| g.weight).collect() };
        assert_eq!(w(&grp(2, &[IntMat::diag(&[-1, -1])], 0)), vec![2, 2, 2]);
        assert_eq!(w(&grp(2, &[swap()], 0)), vec![1, 2]);
        assert_eq!(w(&grp(3, &[IntMat::diag(&[-1, -1, 1])], 0)), vec![1, 2, 2, 2]);
        assert_eq!(w(&grp(2, &[swap(), IntMat::diag(&[-1, 1])], 0)), vec![2, 4]);
        assert_eq!(w(&grp(1, &[IntMat::diag(&[-1])], 0)), vec![2]);
    }

    fn substituted_zero(pres: &Presentation) -> bool {
        let images: Vec<Poly> = pres.generators.iter().map(|g| g.poly.clone()).collect();
        pres.relations.iter().all(|r| r.compose(&images).unwrap().is_zero())
    }

    #[test]
    fn segre_presentation() {
        for p in [0, 3, 5, 7] {
            let g = grp(2, &[IntMat::diag(&[-1, -1])], p);
            let pres = presentation(&g, None).unwrap();
            let field = g.field();
            assert_eq!(pres.generators.len(), 3);
            assert_eq!(pres.relations.len(), 1);
            let y = |e: [u32; 3], c: i64| (e.to_vec(), field.from_i64(c));
            let expected = Poly::from_terms(
                field,
                Arc::from(vec![2, 2, 2]),
                [y([1, 0, 1], 1), y([0, 2, 0], -1)],
            )
            .unwrap();
            assert_eq!(pres.relations[0], expected);
            assert!(substituted_zero(&pres));
            assert!(!pres.is_polynomial);
        }
    }

    #[test]
    fn t3c2_presentation() {
        let g = grp(3, &[IntMat::diag(&[-1, -1, 1])], 0);
        let pres = presentation(&g, None).unwrap();
        assert_eq!(pres.generator_weights(), vec![1, 2, 2, 2]);
        assert_eq!(pres.relations.len(), 1);
        assert!(!pres.relations[0].support_variables().contains(&0));
        assert!(substituted_zero(&pres));
    }

    #[test]
    fn reflection_presentations() {
        let b2 = grp(2, &[swap(), IntMat::diag(&[-1, 1])], 0);
        for g in [grp(2, &[swap()], 0), b2.clone(), grp(1, &[IntMat::diag(&[-1])], 0)] {
            let pres = presentation(&g, Some(12)).unwrap();
            assert!(pres.relations.is_empty());
            assert!(pres.is_polynomial);
        }
        let higher = presentation(&grp(2, &[IntMat::diag(&[-1, -1])], 0), Some(8)).unwrap();
        assert_eq!(higher.relations.len(), 1);
        assert!(higher.audit.iter().all(|r| r.consistent()));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn reynolds_projects(coeffs in proptest::collection::vec(-5i64..=5, 5)) {
            let b2 = grp(2, &[swap(), IntMat::diag(&[-1, 1])], 0);
            let field = Field::Rational;
            let basis = monomials_of_weight(&[1, 1], 4);
            let c: Vec<FieldElem> = coeffs.iter().map(|&x| field.from_i64(x)).collect();
            let f = Poly::from_coefficients(field, Poly::standard_weights(2), &basis, &c).unwrap();
            let r = reynolds(&b2, &f);
            prop_assert_eq!(reynolds(&b2, &r), r.clone());
            for m in b2.elements() {
                prop_assert_eq!(r.act(m), r.clone());
                prop_assert_eq!(reynolds(&b2, &f.act(m)), r.clone());
            }
        }
    }
}
