use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::cayley::{LayeredBall, Translator};
use crate::error::{Error, Result};
use crate::group::Element;
use crate::harmonic::{FiniteFunction, Weight};

/// Exact `Mf(x) = max over integers n >= 1 of (1/|B_n|) sum of f over the
/// closed ball of radius n around x`, on a certified window around the
/// support.
///
/// With `m = |f|_1` and `delta` the least `n >= 1` with `|B_n| > m / floor`,
/// a point at distance `D >= delta` from the support has
/// `Mf(x) <= m / |B_D| < floor`. The window therefore holds every point at
/// distance at most `delta - 1`, and radii up to `delta` suffice for every
/// value at or above the floor. Values below the floor are lower bounds.
#[derive(Debug, Clone)]
pub struct MaximalProfile<T> {
    f: FiniteFunction<T>,
    mass: T,
    eta_floor: T,
    window: usize,
    n_max: usize,
    values: BTreeMap<Element, T>,
    support_distance: BTreeMap<Element, usize>,
    ball_sizes: Vec<u64>,
}

fn check_nonnegative<T: Weight>(f: &FiniteFunction<T>) -> Result<()> {
    if f.iter().any(|(_, v)| *v < T::zero()) {
        return Err(Error::precondition(
            "maximal function input must be nonnegative, pass |f| explicitly",
        ));
    }
    Ok(())
}

/// The floor whose window needs exactly radii up to `n_max`.
pub fn auto_floor<T: Weight>(ball: &LayeredBall, f: &FiniteFunction<T>, n_max: usize) -> T {
    assert!(n_max >= 1, "maximal radii start at 1");
    f.sum().div_count(ball.ball_size(n_max - 1) as u64)
}

pub fn maximal_function<T: Weight>(
    ball: &LayeredBall,
    f: &FiniteFunction<T>,
    eta_floor: &T,
) -> Result<MaximalProfile<T>> {
    check_nonnegative(f)?;
    if *eta_floor <= T::zero() {
        return Err(Error::precondition("floor must be positive"));
    }
    let mass = f.sum();
    let count = |n: usize| T::ratio(ball.ball_size(n) as u64, 1);
    let mut profile = MaximalProfile {
        f: f.clone(),
        mass: mass.clone(),
        eta_floor: eta_floor.clone(),
        window: 0,
        n_max: 1,
        values: BTreeMap::new(),
        support_distance: BTreeMap::new(),
        ball_sizes: Vec::new(),
    };
    if f.is_empty() {
        return Ok(profile);
    }
    let delta = (1..=ball.radius())
        .find(|&n| count(n).mul_ref(eta_floor) > mass)
        .ok_or_else(|| {
            Error::resource(
                ball.radius() + 1,
                format!(
                    "maximal window for this floor needs a ball radius above {}",
                    ball.radius()
                ),
            )
        })?;
    profile.window = delta - 1;
    profile.n_max = delta;
    profile.ball_sizes = (0..=delta).map(|n| ball.ball_size(n) as u64).collect();

    // hist[x][t]: mass of the support at distance exactly t from x
    let mut hist: FxHashMap<Element, Vec<T>> = FxHashMap::default();
    let mut walker = Translator::new(ball);
    for (s, value) in f.iter() {
        walker.translate(s, delta);
        for v in 0..ball.ball_size(delta) {
            let t = ball.layer_of(v as u32);
            let row = hist
                .entry(walker.image(v))
                .or_insert_with(|| vec![T::zero(); delta + 1]);
            row[t].add_assign_ref(value);
        }
    }
    for (x, row) in hist {
        let distance = row.iter().position(|v| !v.is_zero()).expect("row has mass");
        if distance > profile.window {
            continue;
        }
        let mut cumulative = T::zero();
        let mut best = T::zero();
        for (n, v) in row.iter().enumerate() {
            cumulative.add_assign_ref(v);
            if n >= 1 {
                let avg = cumulative.div_count(profile.ball_sizes[n]);
                if avg > best {
                    best = avg;
                }
            }
        }
        profile.support_distance.insert(x.clone(), distance);
        profile.values.insert(x, best);
    }
    Ok(profile)
}

impl<T: Weight> MaximalProfile<T> {
    pub fn function(&self) -> &FiniteFunction<T> {
        &self.f
    }

    pub fn mass(&self) -> &T {
        &self.mass
    }

    pub fn eta_floor(&self) -> &T {
        &self.eta_floor
    }

    /// Largest distance from the support covered by the profile.
    pub fn window(&self) -> usize {
        self.window
    }

    /// Largest averaging radius used.
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `Mf(x)`; zero outside the window, where `Mf < floor`.
    pub fn value(&self, x: &Element) -> T {
        self.values.get(x).cloned().unwrap_or_else(T::zero)
    }

    pub fn values(&self) -> &BTreeMap<Element, T> {
        &self.values
    }

    pub fn support_distance(&self, x: &Element) -> Option<usize> {
        self.support_distance.get(x).copied()
    }

    /// `|{Mf >= eta}|`, exact for `eta >= floor`.
    pub fn level_set_size(&self, eta: &T) -> Result<usize> {
        if *eta < self.eta_floor {
            return Err(Error::precondition("level below the certified floor"));
        }
        Ok(self.values.values().filter(|v| *v >= eta).count())
    }

    /// Attained values at or above the floor, decreasing, each with the size
    /// of its level set.
    pub fn attained_levels(&self) -> Vec<(T, usize)> {
        let mut vals: Vec<&T> = self.values.values().filter(|v| **v >= self.eta_floor).collect();
        vals.sort_by(|a, b| b.partial_cmp(a).expect("totally ordered values"));
        let mut out: Vec<(T, usize)> = Vec::new();
        for (k, v) in vals.iter().enumerate() {
            match out.last_mut() {
                Some((last, count)) if last == *v => *count = k + 1,
                _ => out.push(((*v).clone(), k + 1)),
            }
        }
        out
    }

    /// `m / |B_delta| < floor`, the bound that puts every point beyond the
    /// window below the floor.
    pub fn certificate_holds(&self) -> bool {
        self.f.is_empty() || self.mass.div_count(self.ball_sizes[self.n_max]) < self.eta_floor
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WeakTypeRatio {
    pub ratio: f64,
    pub argmax_eta: Option<f64>,
    pub level_set_size: usize,
}

/// `sup of eta |{Mf >= eta}| / |f|_1` over attained values at or above the
/// floor. Between attained values the product grows linearly in `eta`, so
/// the supremum is attained.
pub fn weak_type_ratio<T: Weight>(profile: &MaximalProfile<T>) -> WeakTypeRatio {
    let mut best = WeakTypeRatio {
        ratio: 0.0,
        argmax_eta: None,
        level_set_size: 0,
    };
    let mut best_exact: Option<T> = None;
    for (eta, count) in profile.attained_levels() {
        let value = eta.mul_ref(&T::ratio(count as u64, 1));
        if best_exact.as_ref().is_none_or(|b| value > *b) {
            best = WeakTypeRatio {
                ratio: value.to_f64() / profile.mass.to_f64(),
                argmax_eta: Some(eta.to_f64()),
                level_set_size: count,
            };
            best_exact = Some(value);
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrliczRecord {
    pub eta: f64,
    pub c: f64,
    pub value: f64,
}

/// `sum over f > eta of (f/eta) (log2(f/eta))^c`.
pub fn orlicz_sum<T: Weight>(f: &FiniteFunction<T>, eta: &T, c: f64) -> Result<OrliczRecord> {
    if *eta <= T::zero() || c.is_nan() || c < 0.0 {
        return Err(Error::precondition("Orlicz functional needs eta > 0 and c >= 0"));
    }
    let e = eta.to_f64();
    let value = f
        .iter()
        .filter(|(_, v)| *v > eta)
        .map(|(_, v)| {
            let t = v.to_f64() / e;
            t * t.log2().powf(c)
        })
        .sum();
    Ok(OrliczRecord { eta: e, c, value })
}

/// `|{Mf >= eta}| / orlicz_sum(f, eta, c)`; infinite when the level set is
/// nonempty and the sum vanishes, zero when both vanish.
pub fn orlicz_weak_ratio<T: Weight>(profile: &MaximalProfile<T>, eta: &T, c: f64) -> Result<f64> {
    let count = profile.level_set_size(eta)?;
    let sum = orlicz_sum(&profile.f, eta, c)?.value;
    Ok(if sum > 0.0 {
        count as f64 / sum
    } else if count > 0 {
        f64::INFINITY
    } else {
        0.0
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::enumerate;
    use crate::group::GroupModel;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::One;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn point_mass_profile() {
        let f2 = GroupModel::free(2);
        let ball = enumerate(&f2, 6).unwrap();
        let f = FiniteFunction::delta(f2.identity(), BigRational::one());
        let floor = auto_floor(&ball, &f, 6);
        let p = maximal_function(&ball, &f, &floor).unwrap();
        assert_eq!(p.window(), 5);
        assert_eq!(p.value(&f2.identity()), q(1, 5));
        for x in ball.elements().iter().filter(|x| (1..=5).contains(&x.length())) {
            assert_eq!(p.value(x), q(1, 2 * 3i64.pow(x.length() as u32) - 1));
        }
        assert!(p.certificate_holds());
        let w = weak_type_ratio(&p);
        assert_eq!(w.ratio, 1.0);
        assert_eq!(w.argmax_eta, Some(0.2));
    }

    #[test]
    fn indicator_of_unit_ball() {
        let f2 = GroupModel::free(2);
        let ball = enumerate(&f2, 4).unwrap();
        let f = FiniteFunction::new(ball.elements()[..5].iter().map(|x| (x.clone(), BigRational::one())));
        let p = maximal_function(&ball, &f, &auto_floor(&ball, &f, 3)).unwrap();
        assert!(p.value(&f2.identity()).is_one());
    }

    #[test]
    fn zero_function_and_negative_values() {
        let f2 = GroupModel::free(2);
        let ball = enumerate(&f2, 2).unwrap();
        let zero: FiniteFunction<f64> = FiniteFunction::default();
        let p = maximal_function(&ball, &zero, &1.0).unwrap();
        assert!(p.values().is_empty());
        assert_eq!(weak_type_ratio(&p).ratio, 0.0);
        let neg = FiniteFunction::delta(f2.identity(), -1.0);
        assert!(maximal_function(&ball, &neg, &1.0).is_err());
    }

    #[test]
    fn window_overflow_names_radius() {
        let f2 = GroupModel::free(2);
        let ball = enumerate(&f2, 2).unwrap();
        let f = FiniteFunction::delta(f2.identity(), 1.0);
        assert!(matches!(
            maximal_function(&ball, &f, &1e-6),
            Err(Error::Resource { radius: 3, .. })
        ));
    }

    #[test]
    fn orlicz_single_point() {
        let f2 = GroupModel::free(2);
        let f = FiniteFunction::delta(f2.identity(), 4.0);
        assert_eq!(orlicz_sum(&f, &1.0, 1.0).unwrap().value, 8.0);
        assert_eq!(orlicz_sum(&f, &5.0, 1.0).unwrap().value, 0.0);
    }
}
