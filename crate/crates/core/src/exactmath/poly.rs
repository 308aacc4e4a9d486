//! Weight-homogeneous multivariate polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::field::{Field, FieldElem};
use super::matrix::IntMat;
use crate::error::{Error, Result};

pub type Exponent = Vec<u32>;

/// A weight-homogeneous polynomial. The zero polynomial has no weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    var_weights: Arc<[u32]>,
    terms: BTreeMap<Exponent, FieldElem>,
    weight: Option<u32>,
}

fn exponent_weight(weights: &[u32], e: &[u32]) -> u32 {
    weights.iter().zip(e).map(|(w, a)| w * a).sum()
}

/// All exponent vectors of total weight `w`, in descending lexicographic order
/// (so `x1^w` comes first when every weight is one).
pub fn monomials_of_weight(weights: &[u32], w: u32) -> Vec<Exponent> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let wi = weights[i];
        if wi == 0 {
            // weight-zero variables would give infinitely many monomials
            cur[i] = 0;
            rec(weights, i + 1, left, cur, out);
            return;
        }
        let max = left / wi;
        for a in (0..=max).rev() {
            cur[i] = a;
            rec(weights, i + 1, left - a * wi, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; weights.len()];
    rec(weights, 0, w, &mut cur, &mut out);
    out
}

impl Poly {
    pub fn zero(field: Field, var_weights: Arc<[u32]>) -> Poly {
        Poly {
            field,
            var_weights,
            terms: BTreeMap::new(),
            weight: None,
        }
    }

    /// All-weights-one ambient ring in `n` variables.
    pub fn standard_weights(n: usize) -> Arc<[u32]> {
        vec![1; n].into()
    }

    pub fn constant(field: Field, var_weights: Arc<[u32]>, c: FieldElem) -> Poly {
        let n = var_weights.len();
        Poly::from_terms(field, var_weights, [(vec![0; n], c)]).expect("constant is homogeneous")
    }

    pub fn variable(field: Field, var_weights: Arc<[u32]>, i: usize) -> Poly {
        let mut e = vec![0; var_weights.len()];
        e[i] = 1;
        Poly::from_terms(field, var_weights, [(e, field.one())]).expect("variable is homogeneous")
    }

    pub fn monomial(field: Field, var_weights: Arc<[u32]>, e: Exponent) -> Poly {
        Poly::from_terms(field, var_weights, [(e, field.one())]).expect("monomial is homogeneous")
    }

    /// Collects terms, merging duplicates and dropping zeros. Fails unless the
    /// result is weight-homogeneous.
    pub fn from_terms<I>(field: Field, var_weights: Arc<[u32]>, terms: I) -> Result<Poly>
    where
        I: IntoIterator<Item = (Exponent, FieldElem)>,
    {
        let mut map: BTreeMap<Exponent, FieldElem> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != var_weights.len() {
                return Err(Error::DimensionMismatch {
                    expected: var_weights.len(),
                    found: e.len(),
                });
            }
            if c.field() != field {
                return Err(Error::MixedCharacteristic);
            }
            if c.is_zero() {
                continue;
            }
            match map.get_mut(&e) {
                Some(acc) => *acc = &*acc + &c,
                None => {
                    map.insert(e, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        let mut weight = None;
        for e in map.keys() {
            let w = exponent_weight(&var_weights, e);
            match weight {
                None => weight = Some(w),
                Some(w0) if w0 != w => return Err(Error::NotHomogeneous),
                _ => {}
            }
        }
        Ok(Poly {
            field,
            var_weights,
            terms: map,
            weight,
        })
    }

    /// Linear combination of the monomials `basis` with coefficients `coeffs`.
    pub fn from_coefficients(
        field: Field,
        var_weights: Arc<[u32]>,
        basis: &[Exponent],
        coeffs: &[FieldElem],
    ) -> Result<Poly> {
        Poly::from_terms(
            field,
            var_weights,
            basis.iter().cloned().zip(coeffs.iter().cloned()),
        )
    }

    /// Coefficients on the monomial list `basis`; terms outside `basis` are ignored.
    pub fn coefficients_on(&self, basis: &[Exponent]) -> Vec<FieldElem> {
        basis
            .iter()
            .map(|e| self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero()))
            .collect()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.var_weights.len()
    }

    pub fn var_weights(&self) -> &Arc<[u32]> {
        &self.var_weights
    }

    pub fn weight(&self) -> Option<u32> {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &FieldElem)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, e: &[u32]) -> FieldElem {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_coefficient(&self) -> Option<&FieldElem> {
        self.terms.iter().next_back().map(|(_, c)| c)
    }

    /// Variables that occur with a positive exponent.
    pub fn support_variables(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    fn same_ring(&self, other: &Poly) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
        assert_eq!(
            self.var_weights, other.var_weights,
            "polynomials in different rings"
        );
    }

    /// Sum of two polynomials of equal weight (or involving zero).
    pub fn add(&self, other: &Poly) -> Poly {
        self.same_ring(other);
        if let (Some(a), Some(b)) = (self.weight, other.weight) {
            assert_eq!(a, b, "sum of polynomials of different weights");
        }
        let terms = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .map(|(e, c)| (e.clone(), c.clone()));
        Poly::from_terms(self.field, self.var_weights.clone(), terms).unwrap()
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-self.field.one())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.var_weights.clone());
        }
        Poly {
            field: self.field,
            var_weights: self.var_weights.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
            weight: self.weight,
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.same_ring(other);
        let mut acc: BTreeMap<Exponent, FieldElem> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                match acc.get_mut(&e) {
                    Some(v) => *v = &*v + &c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        let weight = if acc.is_empty() {
            None
        } else {
            Some(self.weight.unwrap() + other.weight.unwrap())
        };
        Poly {
            field: self.field,
            var_weights: self.var_weights.clone(),
            terms: acc,
            weight,
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.field, self.var_weights.clone(), self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[FieldElem]) -> FieldElem {
        assert_eq!(point.len(), self.nvars(), "evaluation point has wrong length");
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &a) in point.iter().zip(e) {
                if a > 0 {
                    t = &t * &x.pow(a);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let terms = self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut d = e.clone();
            d[i] -= 1;
            (d, c * &self.field.from_i64(e[i] as i64))
        });
        Poly::from_terms(self.field, self.var_weights.clone(), terms)
            .expect("derivative of a homogeneous polynomial is homogeneous")
    }

    /// Substitutes variable `i` by `images[i]`. All images live in one ring.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: images.len(),
            });
        }
        let target_weights = match images.first() {
            Some(p) => p.var_weights.clone(),
            None => Arc::from(Vec::new()),
        };
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::constant(self.field, p.var_weights.clone(), self.field.one())])
            .collect();
        let mut acc: Vec<(Exponent, FieldElem)> = Vec::new();
        for (e, c) in &self.terms {
            let mut t = Poly::constant(self.field, target_weights.clone(), c.clone());
            for (i, &a) in e.iter().enumerate() {
                while powers[i].len() <= a as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                if a > 0 {
                    t = t.mul(&powers[i][a as usize]);
                }
            }
            acc.extend(t.terms.into_iter());
        }
        Poly::from_terms(self.field, target_weights, acc)
    }

    /// The linear substitution `f(x) -> f(M x)`, for polynomials on the
    /// coordinate space of `M` (all variable weights one).
    pub fn act(&self, m: &IntMat) -> Poly {
        let n = self.nvars();
        assert_eq!((m.rows(), m.cols()), (n, n), "action matrix has wrong size");
        let images: Vec<Poly> = (0..n)
            .map(|i| {
                let terms = (0..n).map(|j| {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    (e, self.field.from_bigint(m.get(i, j)))
                });
                Poly::from_terms(self.field, self.var_weights.clone(), terms).unwrap()
            })
            .collect();
        self.compose(&images).expect("linear substitution keeps homogeneity")
    }

    /// Human-readable form with variables `{prefix}1, {prefix}2, ...`.
    pub fn display_with(&self, prefix: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| {
                    if a == 1 {
                        format!("{prefix}{}", i + 1)
                    } else {
                        format!("{prefix}{}^{a}", i + 1)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x"))
    }
}
