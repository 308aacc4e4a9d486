//! Finite groups of integer matrices acting on the cocharacter lattice Z^n.
//!
//! A [`GroupData`] is built once from generators and is immutable afterwards.
//! Elements are kept as characteristic-zero integer matrices; reduction to
//! F_p happens at query time, so one group serves every non-modular
//! characteristic.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactmath::{Field, IntMat};
use crate::lattice::{self, Lattice};

pub const DEFAULT_MAX_ORDER: usize = 20000;

/// A finite group `W ⊂ GL_n(Z)` with its multiplication table and a chosen
/// coefficient field.
#[derive(Debug)]
pub struct GroupData {
    rank: usize,
    field: Field,
    elements: Vec<IntMat>,
    generators: Vec<usize>,
    table: Vec<u32>,
    inverses: Vec<usize>,
}

fn to_small(m: &IntMat) -> Result<Vec<i64>> {
    m.entries()
        .iter()
        .map(|x| x.to_i64().ok_or(Error::Overflow))
        .collect()
}

fn mul_small(a: &[i64], b: &[i64], n: usize) -> Result<Vec<i64>> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                let t = x.checked_mul(b[k * n + j]).ok_or(Error::Overflow)?;
                out[i * n + j] = out[i * n + j].checked_add(t).ok_or(Error::Overflow)?;
            }
        }
    }
    Ok(out)
}

impl GroupData {
    /// Smallest multiplicatively closed set of `rank × rank` matrices containing
    /// `gens` and the identity.
    pub fn close(
        rank: usize,
        gens: &[IntMat],
        field: Field,
        max_order: usize,
    ) -> Result<Arc<GroupData>> {
        for (index, g) in gens.iter().enumerate() {
            if g.rows() != rank || g.cols() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: if g.rows() != rank { g.rows() } else { g.cols() },
                });
            }
            let det = g.determinant();
            if !det.abs().is_one() {
                return Err(Error::NonInvertibleGenerator {
                    index,
                    det: det.to_string(),
                });
            }
        }
        let small_gens: Vec<Vec<i64>> = gens.iter().map(to_small).collect::<Result<_>>()?;

        let identity = to_small(&IntMat::identity(rank))?;
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut small = vec![identity.clone()];
        index.insert(identity, 0);
        let mut cursor = 0;
        while cursor < small.len() {
            for g in &small_gens {
                let y = mul_small(&small[cursor], g, rank)?;
                if !index.contains_key(&y) {
                    if small.len() == max_order {
                        return Err(Error::OrderExceeded { max_order });
                    }
                    index.insert(y.clone(), small.len());
                    small.push(y);
                }
            }
            cursor += 1;
        }

        let order = small.len();
        let mut table = vec![0u32; order * order];
        for i in 0..order {
            for j in 0..order {
                let y = mul_small(&small[i], &small[j], rank)?;
                table[i * order + j] = index[&y] as u32;
            }
        }
        let inverses = (0..order)
            .map(|i| {
                (0..order)
                    .find(|&j| table[i * order + j] == 0)
                    .expect("finite group elements are invertible")
            })
            .collect();
        let mut generators: Vec<usize> = small_gens.iter().map(|g| index[g]).filter(|&i| i != 0).collect();
        generators.sort_unstable();
        generators.dedup();

        let elements = small
            .iter()
            .map(|e| {
                IntMat::from_rows(
                    rank,
                    e.chunks(rank.max(1))
                        .take(rank)
                        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                        .collect(),
                )
                .unwrap()
            })
            .collect();

        let group = GroupData {
            rank,
            field,
            elements,
            generators,
            table,
            inverses,
        };
        group.check_field(field)?;
        Ok(Arc::new(group))
    }

    fn check_field(&self, field: Field) -> Result<()> {
        let p = field.characteristic();
        if p != 0 && self.order() as u64 % p == 0 {
            return Err(Error::ModularCharacteristic {
                p,
                order: self.order(),
            });
        }
        Ok(())
    }

    /// The same group over another coefficient field.
    pub fn with_field(&self, field: Field) -> Result<Arc<GroupData>> {
        self.check_field(field)?;
        Ok(Arc::new(GroupData {
            rank: self.rank,
            field,
            elements: self.elements.clone(),
            generators: self.generators.clone(),
            table: self.table.clone(),
            inverses: self.inverses.clone(),
        }))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &IntMat {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[IntMat] {
        &self.elements
    }

    /// Indices of the (non-identity) generators the group was closed from.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order() + j] as usize
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn index_of(&self, m: &IntMat) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }
}

/// `true` iff `M − I` has rank exactly one over `field`.
pub fn is_pseudoreflection(g: &IntMat, field: Field) -> bool {
    g.minus_identity().to_field(field).rank() == 1
}

/// Subgroup generated by `gens` inside `parent`, as a sorted index list.
fn generated_indices(parent: &GroupData, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; parent.order()];
    seen[0] = true;
    let mut list = vec![0];
    let mut cursor = 0;
    while cursor < list.len() {
        let x = list[cursor];
        for &g in gens {
            let y = parent.mul(x, g);
            if !seen[y] {
                seen[y] = true;
                list.push(y);
            }
        }
        cursor += 1;
    }
    list.sort_unstable();
    list
}

/// A subgroup of a [`GroupData`], with lazily cached fixed lattice and
/// reflection-group verdict.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<GroupData>,
    elements: Vec<usize>,
    fixed: Arc<OnceLock<Lattice>>,
    reflection: Arc<OnceLock<bool>>,
}

impl Subgroup {
    fn from_sorted(parent: &Arc<GroupData>, elements: Vec<usize>) -> Subgroup {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup {
            parent: parent.clone(),
            elements,
            fixed: Arc::new(OnceLock::new()),
            reflection: Arc::new(OnceLock::new()),
        }
    }

    pub fn trivial(parent: &Arc<GroupData>) -> Subgroup {
        Subgroup::from_sorted(parent, vec![0])
    }

    pub fn whole(parent: &Arc<GroupData>) -> Subgroup {
        Subgroup::from_sorted(parent, (0..parent.order()).collect())
    }

    pub fn generated_by(parent: &Arc<GroupData>, gens: &[usize]) -> Subgroup {
        Subgroup::from_sorted(parent, generated_indices(parent, gens))
    }

    /// Builds a subgroup from an element set, checking closure under the table.
    pub fn from_elements(parent: &Arc<GroupData>, elements: &[usize]) -> Option<Subgroup> {
        let mut els = elements.to_vec();
        els.sort_unstable();
        els.dedup();
        if els.first() != Some(&0) || els.iter().any(|&i| i >= parent.order()) {
            return None;
        }
        let sub = Subgroup::from_sorted(parent, els);
        sub.is_closed_under_multiplication().then_some(sub)
    }

    pub fn parent(&self) -> &Arc<GroupData> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elements.binary_search(&i).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&i| other.contains(i))
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_closed_under_multiplication(&self) -> bool {
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| self.contains(self.parent.mul(a, b))))
    }

    pub fn matrices(&self) -> Vec<&IntMat> {
        self.elements.iter().map(|&i| self.parent.element(i)).collect()
    }

    /// Pseudoreflections of the subgroup over the parent's field.
    pub fn pseudoreflections(&self) -> Vec<usize> {
        let field = self.parent.field();
        self.elements
            .iter()
            .copied()
            .filter(|&i| is_pseudoreflection(self.parent.element(i), field))
            .collect()
    }

    /// Whether the subgroup is generated by its pseudoreflections (over the
    /// parent's field). The trivial subgroup counts as a reflection group.
    pub fn is_reflection_group(&self) -> bool {
        *self.reflection.get_or_init(|| {
            let refl = self.pseudoreflections();
            generated_indices(&self.parent, &refl) == self.elements
        })
    }

    /// Saturated lattice of vectors fixed by every element.
    pub fn fixed_lattice(&self) -> Result<Lattice> {
        if let Some(l) = self.fixed.get() {
            return Ok(l.clone());
        }
        let l = lattice::fixed_lattice(self)?;
        let _ = self.fixed.set(l.clone());
        Ok(l)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order(), &self.elements).cmp(&(other.order(), &other.elements))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field("elements", &self.elements)
            .finish()
    }
}

/// Smallest group containing `gens` (see [`GroupData::close`]).
pub fn close(rank: usize, gens: &[IntMat], field: Field, max_order: usize) -> Result<Arc<GroupData>> {
    GroupData::close(rank, gens, field, max_order)
}

/// Every subgroup exactly once, sorted by order and then by element set.
///
/// Starts from the cyclic subgroups and joins with cyclic subgroups until no
/// new subgroup appears; every subgroup is a join of cyclic ones.
pub fn subgroups(group: &Arc<GroupData>) -> Vec<Subgroup> {
    let mut cyclic: Vec<Vec<usize>> = (0..group.order())
        .map(|g| generated_indices(group, &[g]))
        .collect();
    cyclic.sort();
    cyclic.dedup();
    // one generator per cyclic subgroup
    let cyclic_gens: Vec<usize> = cyclic
        .iter()
        .map(|c| {
            *c.iter()
                .find(|&&g| generated_indices(group, &[g]) == *c)
                .unwrap()
        })
        .collect();

    let mut seen: HashSet<Vec<usize>> = cyclic.iter().cloned().collect();
    let mut all: Vec<Vec<usize>> = cyclic.clone();
    let mut cursor = 0;
    while cursor < all.len() {
        let current = all[cursor].clone();
        for &g in &cyclic_gens {
            if current.binary_search(&g).is_ok() {
                continue;
            }
            let mut gens = current.clone();
            gens.push(g);
            let joined = generated_indices(group, &gens);
            if seen.insert(joined.clone()) {
                all.push(joined);
            }
        }
        cursor += 1;
    }
    let mut subs: Vec<Subgroup> = all
        .into_iter()
        .map(|els| Subgroup::from_sorted(group, els))
        .collect();
    subs.sort();
    subs
}

/// Reflection-group test for `k` over an explicit field (independent of the
/// parent's own field).
pub fn is_reflection_group(k: &Subgroup, field: Field) -> bool {
    let parent = k.parent();
    let refl: Vec<usize> = k
        .elements()
        .iter()
        .copied()
        .filter(|&i| is_pseudoreflection(parent.element(i), field))
        .collect();
    generated_indices(parent, &refl) == k.elements()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap() -> IntMat {
        IntMat::from_i64(&[[0, 1], [1, 0]])
    }

    fn b2() -> Arc<GroupData> {
        close(2, &[swap(), IntMat::diag(&[-1, 1])], Field::Rational, 100).unwrap()
    }

    /// Brute force: all subsets containing the identity that are closed under
    /// the table.
    fn brute_force_subgroup_count(g: &Arc<GroupData>) -> usize {
        let n = g.order();
        let mut count = 0;
        for mask in 0u64..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let els: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if els
                .iter()
                .all(|&a| els.iter().all(|&b| mask >> g.mul(a, b) & 1 == 1))
            {
                count += 1;
            }
        }
        count
    }

    /// Brute force: multiply everything by everything until nothing new appears.
    fn brute_force_closure_size(gens: &[IntMat]) -> usize {
        let mut set: Vec<IntMat> = vec![IntMat::identity(gens[0].rows())];
        set.extend(gens.iter().cloned());
        loop {
            let mut grew = false;
            let snapshot = set.clone();
            for a in &snapshot {
                for b in &snapshot {
                    let c = a.mul(b);
                    if !set.contains(&c) {
                        set.push(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                return set.len();
            }
        }
    }

    #[test]
    fn closure_orders() {
        let neg = close(2, &[IntMat::diag(&[-1, -1])], Field::Rational, 100).unwrap();
        assert_eq!(neg.order(), 2);
        let s = close(2, &[swap()], Field::Rational, 100).unwrap();
        assert_eq!(s.order(), 2);
        assert_eq!(b2().order(), 8);
        assert_eq!(brute_force_closure_size(&[swap(), IntMat::diag(&[-1, 1])]), 8);
    }

    #[test]
    fn identity_is_element_zero() {
        let g = b2();
        assert!(g.element(0).is_identity());
        for i in 0..g.order() {
            assert_eq!(g.mul(i, g.inverse(i)), 0);
            assert!(g.element(i).determinant().abs().is_one());
        }
    }

    #[test]
    fn rejects_bad_generators() {
        let sing = IntMat::from_i64(&[[1, 1], [1, 1]]);
        assert!(matches!(
            close(2, &[sing], Field::Rational, 100),
            Err(Error::NonInvertibleGenerator { index: 0, .. })
        ));
        let shear = IntMat::from_i64(&[[1, 1], [0, 1]]);
        assert_eq!(
            close(2, &[shear], Field::Rational, 50).unwrap_err(),
            Error::OrderExceeded { max_order: 50 }
        );
    }

    #[test]
    fn modular_characteristic_rejected() {
        let r = close(2, &[IntMat::diag(&[-1, -1])], Field::Prime(2), 100);
        assert_eq!(r.unwrap_err(), Error::ModularCharacteristic { p: 2, order: 2 });
    }

    #[test]
    fn subgroup_counts() {
        let neg = close(2, &[IntMat::diag(&[-1, -1])], Field::Rational, 100).unwrap();
        assert_eq!(subgroups(&neg).len(), 2);
        let g = b2();
        let subs = subgroups(&g);
        assert_eq!(subs.len(), brute_force_subgroup_count(&g));
        assert_eq!(subs.len(), 10);
        assert_eq!(subs.first().unwrap().order(), 1);
        assert!(subs.last().unwrap().is_whole());
        let triv = close(3, &[], Field::Rational, 100).unwrap();
        assert_eq!(subgroups(&triv).len(), 1);
    }

    #[test]
    fn subgroups_sorted_and_unique() {
        let subs = subgroups(&b2());
        for w in subs.windows(2) {
            assert!(w[0] < w[1]);
        }
        for s in &subs {
            assert!(s.is_closed_under_multiplication());
        }
    }

    #[test]
    fn pseudoreflections() {
        let q = Field::Rational;
        assert!(is_pseudoreflection(&swap(), q));
        assert!(!is_pseudoreflection(&IntMat::diag(&[-1, -1]), q));
        assert!(!is_pseudoreflection(&IntMat::identity(2), q));
        assert!(!is_pseudoreflection(&IntMat::diag(&[-1, -1, 1]), q));
    }

    #[test]
    fn reflection_groups() {
        let g = b2();
        assert_eq!(Subgroup::whole(&g).pseudoreflections().len(), 4);
        assert!(Subgroup::whole(&g).is_reflection_group());
        assert!(Subgroup::trivial(&g).is_reflection_group());
        let minus = g.index_of(&IntMat::diag(&[-1, -1])).unwrap();
        let pm = Subgroup::generated_by(&g, &[minus]);
        assert_eq!(pm.order(), 2);
        assert!(!pm.is_reflection_group());
        assert!(!is_reflection_group(&pm, Field::Prime(5)));
    }

    #[test]
    fn from_elements_checks_closure() {
        let g = b2();
        assert!(Subgroup::from_elements(&g, &[0, g.index_of(&swap()).unwrap()]).is_some());
        let minus = g.index_of(&IntMat::diag(&[-1, -1])).unwrap();
        let s = g.index_of(&swap()).unwrap();
        assert!(Subgroup::from_elements(&g, &[0, minus, s]).is_none());
    }
}
