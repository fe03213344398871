use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::ball::{enumerate, LayeredBall};
use super::poly::{largest_real_root, to_f64, Poly, Sturm};
use crate::error::{Error, Result};
use crate::group::GroupModel;

/// `s_n = c_1 s_{n-1} + ... + c_k s_{n-k}` for every `n >= start`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Recurrence {
    #[serde(serialize_with = "serialize_ints")]
    pub coefficients: Vec<BigInt>,
    pub start: usize,
}

fn serialize_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

impl Recurrence {
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// Whether the recurrence reproduces every term of `sizes` from `start`.
    pub fn holds_on(&self, sizes: &[u64]) -> bool {
        (self.start..sizes.len()).all(|n| self.next_term(sizes, n) == BigInt::from(sizes[n]))
    }

    fn next_term(&self, sizes: &[u64], n: usize) -> BigInt {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigInt::from(sizes[n - 1 - i]))
            .sum()
    }

    /// Extends `sizes` to `len` terms by running the recurrence forward.
    pub fn extend(&self, sizes: &[u64], len: usize) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = sizes.iter().map(|&s| BigInt::from(s)).collect();
        while out.len() < len {
            let n = out.len();
            let next = self
                .coefficients
                .iter()
                .enumerate()
                .map(|(i, c)| c * &out[n - 1 - i])
                .sum();
            out.push(next);
        }
        out
    }

    /// `x^k - c_1 x^{k-1} - ... - c_k`, constant term first.
    fn characteristic(&self) -> Poly {
        let k = self.order();
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        for (i, c) in self.coefficients.iter().enumerate() {
            coeffs[k - 1 - i] = -c;
        }
        Poly::from_ints(&coeffs)
    }
}

/// Parameters `(d, q, C_gr)` with `C_gr^-1 n^d q^n <= |S_n| <= C_gr n^d q^n`
/// for every enumerated `n >= 1`.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthFit {
    pub d: u32,
    pub q: f64,
    /// Bracket `(lo, hi]` containing the exact dominant root.
    pub q_bracket: (f64, f64),
    /// Set when the dominant root is an integer, which is then exact.
    pub q_integer: Option<u64>,
    pub c_gr: f64,
    /// Geometric midpoint of the extreme ratios, used for predictions.
    pub c_mid: f64,
    pub recurrence: Option<Recurrence>,
    pub polynomial_growth: bool,
    pub nonrational_evidence: bool,
}

impl GrowthFit {
    pub fn model_size(&self, n: usize) -> f64 {
        (n as f64).powi(self.d as i32) * self.q.powi(n as i32)
    }

    pub fn prediction(&self, n: usize) -> f64 {
        self.c_mid * self.model_size(n)
    }

    /// Checks the two-sided bound on `sizes` with a relative slack of `1e-9`.
    pub fn bound_holds(&self, sizes: &[u64]) -> bool {
        sizes.iter().enumerate().skip(1).all(|(n, &s)| {
            let m = self.model_size(n);
            let s = s as f64;
            s <= self.c_gr * m * (1.0 + 1e-9) && m <= self.c_gr * s * (1.0 + 1e-9)
        })
    }
}

const MIN_TERMS: usize = 8;

/// Fits almost-exact polynomial-exponential growth to sphere sizes
/// `|S_0|, |S_1|, ...`.
pub fn fit_growth(sizes: &[u64]) -> Result<GrowthFit> {
    if sizes.len() < MIN_TERMS {
        return Err(Error::precondition(format!(
            "growth fit needs at least {MIN_TERMS} sphere sizes, got {}",
            sizes.len()
        )));
    }
    if sizes.iter().skip(1).any(|&s| s == 0) {
        return Err(Error::precondition("sphere sizes vanish, the group must be infinite"));
    }
    match find_recurrence(sizes) {
        Some(rec) => Ok(fit_from_recurrence(sizes, rec)),
        None => Ok(regression_fit(sizes)),
    }
}

/// Minimal order first, then the earliest start. At least `k + 2` equations
/// are required so that every accepted recurrence is overdetermined.
fn find_recurrence(sizes: &[u64]) -> Option<Recurrence> {
    let len = sizes.len();
    for k in 1..=len / 2 {
        for start in k..len.saturating_sub(k + 1) {
            if let Some(coefficients) = solve_recurrence(sizes, k, start) {
                let rec = Recurrence { coefficients, start };
                debug_assert!(rec.holds_on(sizes));
                return Some(rec);
            }
        }
    }
    None
}

/// Exact Gaussian elimination on all equations `n = start..len`; free
/// variables are set to zero and only integer solutions are accepted.
fn solve_recurrence(sizes: &[u64], k: usize, start: usize) -> Option<Vec<BigInt>> {
    let q = |x: u64| BigRational::from_integer(BigInt::from(x));
    let mut rows: Vec<Vec<BigRational>> = (start..sizes.len())
        .map(|n| {
            let mut row: Vec<BigRational> = (1..=k).map(|i| q(sizes[n - i])).collect();
            row.push(q(sizes[n]));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let (head, tail) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&mut a[i], &b[0])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&mut b[0], &a[r])
                };
                for (x, y) in head.iter_mut().zip(tail.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut solution = vec![BigRational::zero(); k];
    for (i, &col) in pivots.iter().enumerate() {
        solution[col] = rows[i][k].clone();
    }
    if solution.last().map_or(true, |c| c.is_zero()) {
        // a vanishing last coefficient means a lower order with a later start
        return None;
    }
    solution
        .into_iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}

fn fit_from_recurrence(sizes: &[u64], rec: Recurrence) -> GrowthFit {
    let p = rec.characteristic();
    let sf = p.square_free();
    let tol = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12));
    let Some((lo, hi)) = largest_real_root(&sf, &tol) else {
        let mut fit = regression_fit(sizes);
        fit.recurrence = Some(rec);
        return fit;
    };
    let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
    let rounded = mid.round();
    let integer_root = (lo < rounded && rounded <= hi && p.eval(&rounded).is_zero()).then(|| rounded.to_integer());

    let multiplicity = match &integer_root {
        Some(r) => {
            let factor = Poly::from_ints(&[-r.clone(), BigInt::one()]);
            let mut m = 0;
            let mut rest = p.clone();
            loop {
                let (quot, rem) = rest.div_rem(&factor);
                if !rem.is_zero() {
                    break m;
                }
                rest = quot;
                m += 1;
            }
        }
        None => {
            // the root is a root of gcd(p, p', ..., p^(j)) exactly when its
            // multiplicity exceeds j
            let mut m = 1;
            let mut g = p.gcd(&p.derivative());
            while g.degree() >= 1 {
                let common = g.gcd(&sf);
                if common.degree() == 0 || Sturm::new(&common).count(&lo, &hi) == 0 {
                    break;
                }
                m += 1;
                g = g.gcd(&g.derivative());
            }
            m
        }
    };

    let q = match &integer_root {
        Some(r) => r.to_f64().unwrap_or(f64::NAN),
        None => to_f64(&mid),
    };
    let polynomial_growth = q <= 1.0 + 1e-12;
    let q = if polynomial_growth { 1.0 } else { q };
    let d = multiplicity - 1;
    let (c_gr, c_mid) = constants(sizes, d, q);
    GrowthFit {
        d,
        q,
        q_bracket: (to_f64(&lo), to_f64(&hi)),
        q_integer: integer_root.and_then(|r| r.to_u64()),
        c_gr,
        c_mid,
        recurrence: Some(rec),
        polynomial_growth,
        nonrational_evidence: false,
    }
}

/// Least-squares line through `log |S_n|` over the second half of the
/// sample; `d` is fixed at zero.
fn regression_fit(sizes: &[u64]) -> GrowthFit {
    let pts: Vec<(f64, f64)> = (sizes.len() / 2..sizes.len())
        .map(|n| (n as f64, (sizes[n] as f64).ln()))
        .collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let q = (sxy / sxx).exp();
    let polynomial_growth = q <= 1.0 + 1e-12;
    let q = q.max(1.0);
    let (c_gr, c_mid) = constants(sizes, 0, q);
    GrowthFit {
        d: 0,
        q,
        q_bracket: (q, q),
        q_integer: None,
        c_gr,
        c_mid,
        recurrence: None,
        polynomial_growth,
        nonrational_evidence: true,
    }
}

fn constants(sizes: &[u64], d: u32, q: f64) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = 0f64;
    for (n, &s) in sizes.iter().enumerate().skip(1) {
        let ratio = s as f64 / ((n as f64).powi(d as i32) * q.powi(n as i32));
        lo = lo.min(ratio);
        hi = hi.max(ratio);
    }
    let c_gr = hi.max(1.0 / lo).max(1.0);
    (c_gr, (lo * hi).sqrt())
}

/// `sum_{i=0}^{n} |S_1^{n-i}| |S_2^i|`, the sphere size of an l1-product.
pub fn product_sphere_size(left: &[u64], right: &[u64], n: usize) -> u64 {
    (0..=n).map(|i| left[n - i] * right[i]).sum()
}

/// Compares the convolution formula for `|S_n|` of the product against a
/// direct enumeration of the product model.
pub fn product_sphere_identity(left: &LayeredBall, right: &LayeredBall, n: usize) -> Result<bool> {
    left.require_radius(n, "product sphere identity")?;
    right.require_radius(n, "product sphere identity")?;
    let product = GroupModel::product(left.model().clone(), right.model().clone());
    let direct = enumerate(&product, n)?;
    let formula = product_sphere_size(&left.sphere_sizes(), &right.sphere_sizes(), n);
    Ok(direct.sphere_size(n) as u64 == formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free2(len: usize) -> Vec<u64> {
        (0..len)
            .map(|n| if n == 0 { 1 } else { 4 * 3u64.pow(n as u32 - 1) })
            .collect()
    }

    #[test]
    fn free_group_recurrence() {
        let fit = fit_growth(&free2(10)).unwrap();
        let rec = fit.recurrence.as_ref().unwrap();
        assert_eq!(rec.coefficients, vec![BigInt::from(3)]);
        assert_eq!(rec.start, 2);
        assert_eq!(fit.q_integer, Some(3));
        assert_eq!((fit.d, fit.q), (0, 3.0));
        assert!((fit.c_gr - 4.0 / 3.0).abs() < 1e-12);
        assert!(fit.bound_holds(&free2(10)));
    }

    #[test]
    fn lattice_is_polynomial() {
        let sizes: Vec<u64> = (0..12).map(|n| if n == 0 { 1 } else { 4 * n }).collect();
        let fit = fit_growth(&sizes).unwrap();
        assert!(fit.polynomial_growth);
        assert_eq!((fit.d, fit.q), (1, 1.0));
    }

    #[test]
    fn irrational_dominant_root() {
        // s_n = 2 s_{n-2}
        let sizes: Vec<u64> = (0..12).map(|n| [1, 3][n % 2] << (n / 2)).collect();
        let fit = fit_growth(&sizes).unwrap();
        assert_eq!(fit.d, 0);
        assert!((fit.q - 2f64.sqrt()).abs() < 1e-11);
        assert!(fit.q_integer.is_none());
    }

    #[test]
    fn repeated_irrational_root() {
        // n 2^{n/2} on even n, (x^2 - 2)^2 characteristic
        let sizes: Vec<u64> = (0..16u32).map(|n| (n as u64 + 1) * (1u64 << (n / 2))).collect();
        let fit = fit_growth(&sizes).unwrap();
        assert_eq!(fit.d, 1);
        assert!((fit.q - 2f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn rejects_short_and_vanishing() {
        assert!(fit_growth(&[1, 2, 3]).is_err());
        assert!(fit_growth(&[1, 2, 2, 2, 0, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn product_size_formula() {
        let f = free2(4);
        assert_eq!(product_sphere_size(&f, &f, 2), 40);
        assert_eq!(product_sphere_size(&f, &[1, 2, 2], 1), 6);
    }
}
