use std::collections::BTreeMap;
use std::ops::Range;

use serde::Serialize;

use super::function::{convolve, FiniteFunction, Scalar, Weight};
use rustc_hash::FxHashMap;

use crate::cayley::{enumerate, LayeredBall, Translator};
use crate::error::{Error, Result};
use crate::group::{Element, GroupModel};

/// Which normalized indicator a [`RadialMeasure`] is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureKind {
    /// Uniform on `S_r`.
    Sphere { radius: usize },
    /// Uniform on `r <= |x| < r + width`.
    Shell { radius: usize, width: usize },
    /// Uniform on the closed ball of radius `r`.
    Ball { radius: usize },
}

impl MeasureKind {
    pub fn layers(&self) -> Range<usize> {
        match *self {
            MeasureKind::Sphere { radius } => radius..radius + 1,
            MeasureKind::Shell { radius, width } => radius..radius + width,
            MeasureKind::Ball { radius } => 0..radius + 1,
        }
    }

    pub fn radius(&self) -> usize {
        match *self {
            MeasureKind::Sphere { radius } | MeasureKind::Shell { radius, .. } | MeasureKind::Ball { radius } => radius,
        }
    }

    /// Largest word length in the support.
    pub fn reach(&self) -> usize {
        self.layers().end - 1
    }
}

/// Normalized indicator of a sphere, shell or ball. Nonnegative, of mass one
/// and invariant under inversion.
#[derive(Debug, Clone)]
pub struct RadialMeasure<T> {
    kind: MeasureKind,
    function: FiniteFunction<T>,
    /// `(layer, value on each element of that layer)`
    layer_weights: Vec<(usize, T)>,
}

impl<T: Weight> RadialMeasure<T> {
    /// Builds the measure from an enumerated ball reaching its support.
    pub fn on_ball(ball: &LayeredBall, kind: MeasureKind) -> Result<Self> {
        if let MeasureKind::Shell { width: 0, .. } = kind {
            return Err(Error::precondition("shell width must be at least 1"));
        }
        ball.require_radius(kind.reach(), "radial measure")?;
        let total: usize = kind.layers().map(|n| ball.sphere_size(n)).sum();
        if total == 0 {
            return Err(Error::precondition("radial measure has empty support"));
        }
        let w = T::ratio(1, total as u64);
        let layer_weights: Vec<(usize, T)> = kind.layers().map(|n| (n, w.clone())).collect();
        let function = FiniteFunction::new(
            kind.layers()
                .flat_map(|n| ball.sphere(n).iter())
                .map(|x| (x.clone(), w.clone())),
        );
        Ok(RadialMeasure {
            kind,
            function,
            layer_weights,
        })
    }

    /// Enumerates just enough of the group to build the measure.
    pub fn new(model: &GroupModel, kind: MeasureKind) -> Result<Self> {
        Self::on_ball(&enumerate(model, kind.reach())?, kind)
    }

    pub fn sphere(model: &GroupModel, radius: usize) -> Result<Self> {
        Self::new(model, MeasureKind::Sphere { radius })
    }

    pub fn shell(model: &GroupModel, radius: usize, width: usize) -> Result<Self> {
        Self::new(model, MeasureKind::Shell { radius, width })
    }

    pub fn ball(model: &GroupModel, radius: usize) -> Result<Self> {
        Self::new(model, MeasureKind::Ball { radius })
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    pub fn function(&self) -> &FiniteFunction<T> {
        &self.function
    }

    pub fn layer_weights(&self) -> &[(usize, T)] {
        &self.layer_weights
    }
}

/// `f * sigma_r`, computed by convolution and again by spreading each value
/// of `f` over its translated sphere through the neighbor table. The two
/// must agree.
pub fn sphere_average<T: Weight>(ball: &LayeredBall, f: &FiniteFunction<T>, r: usize) -> Result<FiniteFunction<T>> {
    let sigma = RadialMeasure::on_ball(ball, MeasureKind::Sphere { radius: r })?;
    let by_convolution = convolve(ball.model(), f, sigma.function());
    let direct = sphere_average_direct(ball, f, r)?;
    if !by_convolution.agrees(&direct) {
        return Err(Error::Invariant(format!(
            "sphere average at radius {r}: convolution and neighbor summation disagree"
        )));
    }
    Ok(by_convolution)
}

/// `(1/|S_r|) sum over v in S_r of f(w v)` at every `w` where it can be
/// nonzero, namely `supp(f) S_r`.
pub fn sphere_average_direct<T: Weight>(
    ball: &LayeredBall,
    f: &FiniteFunction<T>,
    r: usize,
) -> Result<FiniteFunction<T>> {
    let sums = sphere_sum_direct(ball, f, r)?;
    Ok(sums.scale(&T::ratio(1, ball.sphere_size(r) as u64)))
}

/// `sum over v in S_r of f(w v)`, i.e. `f * 1_{S_r}`. Each `f(s)` is added
/// at every `s v` with `v in S_r`, walking the sphere around `s` through the
/// neighbor table rather than multiplying words.
pub fn sphere_sum_direct<T: Scalar>(ball: &LayeredBall, f: &FiniteFunction<T>, r: usize) -> Result<FiniteFunction<T>> {
    ball.require_radius(r, "sphere average")?;
    if ball.sphere_size(r) == 0 {
        return Err(Error::precondition(format!("sphere of radius {r} is empty")));
    }
    let mut walker = Translator::new(ball);
    let mut out: FxHashMap<Element, T> = FxHashMap::default();
    for (s, value) in f.iter() {
        walker.translate(s, r);
        for v in ball.sphere_range(r) {
            out.entry(walker.image(v)).or_insert_with(T::zero).add_assign_ref(value);
        }
    }
    Ok(FiniteFunction::from_map(out.into_iter().collect::<BTreeMap<_, _>>()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;

    #[test]
    fn measures_have_unit_mass_and_are_symmetric() {
        let f2 = GroupModel::free(2);
        for kind in [
            MeasureKind::Sphere { radius: 2 },
            MeasureKind::Shell { radius: 1, width: 2 },
            MeasureKind::Ball { radius: 2 },
        ] {
            let m: RadialMeasure<BigRational> = RadialMeasure::new(&f2, kind).unwrap();
            assert!(m.function().sum().is_one());
            assert_eq!(m.function().reflect(&f2), *m.function());
        }
    }

    #[test]
    fn delta_identity_spreads_uniformly() {
        let f2 = GroupModel::free(2);
        let ball = enumerate(&f2, 2).unwrap();
        let avg = sphere_average(&ball, &FiniteFunction::delta(f2.identity(), BigRational::one()), 2).unwrap();
        assert_eq!(avg.len(), 12);
        let twelfth = BigRational::new(1.into(), 12.into());
        assert!(avg.iter().all(|(x, v)| x.length() == 2 && *v == twelfth));
    }

    #[test]
    fn point_mass_on_generator() {
        let f2 = GroupModel::free(2);
        let ball = enumerate(&f2, 1).unwrap();
        let a = f2.parse_element("a").unwrap();
        let avg = sphere_average(&ball, &FiniteFunction::delta(a, 1.0), 1).unwrap();
        assert_eq!(avg.get(&f2.identity()), 0.25);
        let ones = FiniteFunction::new(ball.sphere(1).iter().map(|x| (x.clone(), 1.0)));
        let avg = sphere_average(&ball, &ones, 1).unwrap();
        assert_eq!(avg.get(&f2.identity()), 1.0);
    }
}
