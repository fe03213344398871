//! Exact univariate polynomials over the rationals, just enough for
//! isolating the largest real root of a characteristic polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients from the constant term upward, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Poly(Vec<BigRational>);

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_ints(coeffs: &[BigInt]) -> Self {
        Poly::new(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    fn monic(&self) -> Poly {
        let lead = self.lead().clone();
        Poly(self.0.iter().map(|c| c / &lead).collect())
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.0.clone();
        let dd = divisor.degree();
        if self.is_zero() || self.degree() < dd {
            return (Poly(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); self.degree() - dd + 1];
        let lead = divisor.lead();
        for shift in (0..quot.len()).rev() {
            let c = &rem[shift + dd] / lead;
            if !c.is_zero() {
                for (i, d) in divisor.0.iter().enumerate() {
                    rem[shift + i] -= &c * d;
                }
            }
            quot[shift] = c;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// The product of the distinct irreducible factors.
    pub fn square_free(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            self.monic()
        } else {
            self.div_rem(&g).0.monic()
        }
    }

    /// Every real root has absolute value below this integer.
    pub fn root_bound(&self) -> BigRational {
        let lead = self.lead().abs();
        let max = self.0[..self.degree()]
            .iter()
            .map(|c| c.abs() / &lead)
            .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        (max + BigRational::one()).ceil() + BigRational::one()
    }
}

/// Sturm chain of a square-free polynomial.
pub(crate) struct Sturm(Vec<Poly>);

impl Sturm {
    pub fn new(p: &Poly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            if r.is_zero() {
                break;
            }
            chain.push(Poly(r.0.into_iter().map(|c| -c).collect()));
        }
        Sturm(chain)
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.0 {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let positive = v.is_positive();
            if last.is_some_and(|l| l != positive) {
                count += 1;
            }
            last = Some(positive);
        }
        count
    }

    /// Distinct roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Isolating interval `(lo, hi]` of the largest real root of a square-free
/// polynomial, narrowed below `tol`, or `None` without real roots.
pub(crate) fn largest_real_root(p: &Poly, tol: &BigRational) -> Option<(BigRational, BigRational)> {
    let sturm = Sturm::new(p);
    let bound = p.root_bound();
    let (mut lo, mut hi) = (-bound.clone(), bound);
    if sturm.count(&lo, &hi) == 0 {
        return None;
    }
    let two = BigRational::from_integer(BigInt::from(2));
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        if sturm.count(&mid, &hi) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some((lo, hi))
}

pub(crate) fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Poly {
        Poly::from_ints(&v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
    }

    fn tol() -> BigRational {
        BigRational::new(BigInt::from(1), BigInt::from(10).pow(12))
    }

    #[test]
    fn square_free_part_drops_repeated_factors() {
        // (x-3)^2 (x-1) = x^3 - 7x^2 + 15x - 9
        let p = ints(&[-9, 15, -7, 1]);
        assert_eq!(p.square_free(), ints(&[3, -4, 1]));
    }

    #[test]
    fn isolates_sqrt_two() {
        let (lo, hi) = largest_real_root(&ints(&[-2, 0, 1]), &tol()).unwrap();
        let mid = to_f64(&((lo + hi) / BigRational::from_integer(BigInt::from(2))));
        assert!((mid - 2f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn integer_root_on_a_bisection_point() {
        // (x-3)(x+1), bound 5: the midpoints hit 0 and then 2.5, 3.75, ...
        let (lo, hi) = largest_real_root(&ints(&[-3, -2, 1]), &tol()).unwrap();
        let three = BigRational::from_integer(BigInt::from(3));
        assert!(lo < three && three <= hi);
    }

    #[test]
    fn no_real_roots() {
        assert!(largest_real_root(&ints(&[1, 0, 1]), &tol()).is_none());
    }
}
