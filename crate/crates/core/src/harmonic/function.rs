use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::group::{Element, GroupModel};

/// Values a [`FiniteFunction`] can take.
pub trait Scalar: Clone + Debug + PartialEq + Zero {
    fn mul_ref(&self, other: &Self) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn to_f64(&self) -> f64;
    /// Equality for exact types; agreement to `1e-12` relative for floats.
    fn agrees(&self, other: &Self) -> bool {
        self == other
    }
}

/// Scalars that can represent `num / den`, used for normalized measures.
pub trait Weight: Scalar + PartialOrd {
    fn ratio(num: u64, den: u64) -> Self;
    fn div_count(&self, n: u64) -> Self {
        self.mul_ref(&Self::ratio(1, n))
    }
}

impl Scalar for f64 {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn agrees(&self, other: &Self) -> bool {
        (self - other).abs() <= 1e-12 * self.abs().max(other.abs()).max(f64::MIN_POSITIVE)
    }
}

impl Weight for f64 {
    fn ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }
    fn div_count(&self, n: u64) -> Self {
        self / n as f64
    }
}

impl Scalar for i64 {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

impl Scalar for BigRational {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Weight for BigRational {
    fn ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// Finitely supported function on a group, with cached norms.
///
/// Zero values are never stored, so the support is the key set.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteFunction<T> {
    values: BTreeMap<Element, T>,
    l1: f64,
    l2: f64,
    linf: f64,
}

impl<T: Scalar> Default for FiniteFunction<T> {
    fn default() -> Self {
        Self::from_map(BTreeMap::new())
    }
}

impl<T: Scalar> FiniteFunction<T> {
    /// Sums repeated elements and drops zeros.
    pub fn new(pairs: impl IntoIterator<Item = (Element, T)>) -> Self {
        let mut values: BTreeMap<Element, T> = BTreeMap::new();
        for (x, v) in pairs {
            match values.get_mut(&x) {
                Some(acc) => acc.add_assign_ref(&v),
                None => {
                    values.insert(x, v);
                }
            }
        }
        Self::from_map(values)
    }

    pub fn from_map(mut values: BTreeMap<Element, T>) -> Self {
        values.retain(|_, v| !v.is_zero());
        let (l1, l2, linf) = norms(&values);
        FiniteFunction { values, l1, l2, linf }
    }

    pub fn delta(x: Element, value: T) -> Self {
        Self::new([(x, value)])
    }

    pub fn get(&self, x: &Element) -> T {
        self.values.get(x).cloned().unwrap_or_else(T::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Element, &T)> {
        self.values.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Element> {
        self.values.keys()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn l1(&self) -> f64 {
        self.l1
    }

    pub fn l2(&self) -> f64 {
        self.l2
    }

    pub fn linf(&self) -> f64 {
        self.linf
    }

    /// `(l1, l2, linf)` recomputed from the stored values.
    pub fn recompute_norms(&self) -> (f64, f64, f64) {
        norms(&self.values)
    }

    /// Exact sum of all values.
    pub fn sum(&self) -> T {
        let mut acc = T::zero();
        for v in self.values.values() {
            acc.add_assign_ref(v);
        }
        acc
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_map(self.values.iter().map(|(x, v)| (x.clone(), v.mul_ref(c))).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.values
                .iter()
                .chain(other.values.iter())
                .map(|(x, v)| (x.clone(), v.clone())),
        )
    }

    /// `x -> f(x^-1)`.
    pub fn reflect(&self, model: &GroupModel) -> Self {
        Self::new(self.values.iter().map(|(x, v)| (model.invert(x), v.clone())))
    }

    /// Values agree elementwise in the sense of [`Scalar::agrees`].
    pub fn agrees(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self
                .values
                .iter()
                .zip(other.values.iter())
                .all(|((x, a), (y, b))| x == y && a.agrees(b))
    }
}

fn norms<T: Scalar>(values: &BTreeMap<Element, T>) -> (f64, f64, f64) {
    let mut l1 = 0.0;
    let mut l2 = 0.0;
    let mut linf: f64 = 0.0;
    for v in values.values() {
        let a = v.to_f64().abs();
        l1 += a;
        l2 += a * a;
        linf = linf.max(a);
    }
    (l1, l2.sqrt(), linf)
}

/// `(f * h)(w) = sum over uv = w of f(u) h(v)`.
pub fn convolve<T: Scalar>(model: &GroupModel, f: &FiniteFunction<T>, h: &FiniteFunction<T>) -> FiniteFunction<T> {
    let mut acc: BTreeMap<Element, T> = BTreeMap::new();
    for (u, fu) in f.iter() {
        for (v, hv) in h.iter() {
            let term = fu.mul_ref(hv);
            match acc.entry(model.multiply(u, v)) {
                std::collections::btree_map::Entry::Occupied(mut e) => e.get_mut().add_assign_ref(&term),
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(term);
                }
            }
        }
    }
    FiniteFunction::from_map(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_identity_is_neutral() {
        let f2 = GroupModel::free(2);
        let h = FiniteFunction::new([
            (f2.parse_element("a.b").unwrap(), 2i64),
            (f2.parse_element("b^-1").unwrap(), -3),
        ]);
        let e = FiniteFunction::delta(f2.identity(), 1i64);
        assert_eq!(convolve(&f2, &e, &h), h);
        assert_eq!(convolve(&f2, &h, &e), h);
    }

    #[test]
    fn four_term_expansion() {
        let f2 = GroupModel::free(2);
        let p = |s: &str| f2.parse_element(s).unwrap();
        let s = FiniteFunction::new([(p("a"), 1i64), (p("a^-1"), 1)]);
        let expected = FiniteFunction::new([(p("a^2"), 1i64), (p("e"), 2), (p("a^-2"), 1)]);
        assert_eq!(convolve(&f2, &s, &s), expected);
    }

    #[test]
    fn norms_are_cached_and_zeros_dropped() {
        let z = GroupModel::z_power(1);
        let f = FiniteFunction::new([
            (Element::Lattice(vec![1]), 3.0),
            (Element::Lattice(vec![2]), -4.0),
            (Element::Lattice(vec![3]), 0.0),
        ]);
        assert_eq!(f.len(), 2);
        assert_eq!((f.l1(), f.l2(), f.linf()), (7.0, 5.0, 4.0));
        assert_eq!(f.recompute_norms(), (7.0, 5.0, 4.0));
        assert!(f.reflect(&z).get(&Element::Lattice(vec![-2])) == -4.0);
    }
}
