//! Polynomials in `z1, conj(z1), z2, conj(z2)` restricted to the 3-sphere.
//!
//! Used for exact matrix-coefficient expansions, Haar pairings and
//! Wirtinger derivatives.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::group::{Complex, GroupPoint};

/// Exponents of `z1, conj(z1), z2, conj(z2)`.
pub type Exponents = [u32; 4];

/// Which of the four coordinates to differentiate by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Z1 = 0,
    Z1Bar = 1,
    Z2 = 2,
    Z2Bar = 3,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly {
    terms: BTreeMap<Exponents, Complex>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Complex) -> Self {
        Poly::monomial([0; 4], c)
    }

    pub fn monomial(exps: Exponents, coeff: Complex) -> Self {
        let mut p = Poly::zero();
        p.add_term(exps, coeff);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v as usize] = 1;
        Poly::monomial(e, Complex::from(1.0))
    }

    pub fn add_term(&mut self, exps: Exponents, coeff: Complex) {
        if coeff == Complex::from(0.0) {
            return;
        }
        let slot = self.terms.entry(exps).or_insert(Complex::from(0.0));
        *slot += coeff;
        if *slot == Complex::from(0.0) {
            self.terms.remove(&exps);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Complex)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree (zero for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, s: Complex) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c * s);
        }
        out
    }

    /// Pointwise complex conjugate.
    pub fn conj(&self) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            out.add_term([e[1], e[0], e[3], e[2]], c.conj());
        }
        out
    }

    pub fn eval(&self, z1: Complex, z2: Complex) -> Complex {
        let vals = [z1, z1.conj(), z2, z2.conj()];
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = *c;
                for (x, &k) in vals.iter().zip(e) {
                    v *= x.powu(k);
                }
                v
            })
            .sum()
    }

    pub fn eval_at(&self, x: &GroupPoint) -> Complex {
        self.eval(x.z1(), x.z2())
    }

    /// Formal partial derivative, treating the four coordinates as independent.
    pub fn derivative(&self, v: Var) -> Poly {
        let k = v as usize;
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[k] > 0 {
                let mut ne = *e;
                ne[k] -= 1;
                out.add_term(ne, c * f64::from(e[k]));
            }
        }
        out
    }

    /// Integral against the unit-mass Haar measure.
    pub fn haar_integral(&self) -> Complex {
        self.terms.iter().map(|(e, c)| c * haar_monomial_integral_u(e[0], e[1], e[2], e[3])).sum()
    }

    /// `<p, q>` in `L^2` of the unit-mass Haar measure.
    pub fn haar_inner(&self, other: &Poly) -> Complex {
        let mut acc = Complex::from(0.0);
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                // conj(q) swaps the exponents of z and conj(z)
                let a1 = e[0] + f[1];
                let b1 = e[1] + f[0];
                let a2 = e[2] + f[3];
                let b2 = e[3] + f[2];
                if a1 == b1 && a2 == b2 {
                    acc += c * d.conj() * haar_monomial_integral_u(a1, b1, a2, b2);
                }
            }
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, *c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    // exponents add
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                out.add_term(std::array::from_fn(|i| e[i] + f[i]), c * d);
            }
        }
        out
    }
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn haar_monomial_integral_u(a1: u32, b1: u32, a2: u32, b2: u32) -> f64 {
    if a1 != b1 || a2 != b2 {
        return 0.0;
    }
    // a1! a2! / (a1 + a2 + 1)!, evaluated as a ratio to avoid overflow
    let (lo, hi) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
    let mut v = factorial(lo);
    for k in (hi + 1)..=(a1 + a2 + 1) {
        v /= f64::from(k);
    }
    v
}

/// Integral of `z1^a1 conj(z1)^b1 z2^a2 conj(z2)^b2` over the 3-sphere with
/// unit-mass Haar measure.
pub fn haar_monomial_integral(a1: i64, b1: i64, a2: i64, b2: i64) -> Result<Complex> {
    let conv = |v: i64| u32::try_from(v).map_err(|_| Error::NegativeExponent);
    let v = haar_monomial_integral_u(conv(a1)?, conv(b1)?, conv(a2)?, conv(b2)?);
    Ok(Complex::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::c;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn haar_monomial_examples() {
        assert_eq!(haar_monomial_integral(0, 0, 0, 0).unwrap(), c(1.0, 0.0));
        assert_eq!(haar_monomial_integral(1, 1, 0, 0).unwrap(), c(0.5, 0.0));
        assert_eq!(haar_monomial_integral(1, 0, 0, 1).unwrap(), c(0.0, 0.0));
        assert_eq!(haar_monomial_integral(-1, 0, 0, 0), Err(Error::NegativeExponent));
        // 2! 1! / 4! = 1/12
        assert!((haar_monomial_integral(2, 2, 1, 1).unwrap().re - 1.0 / 12.0).abs() < 1e-16);
    }

    #[test]
    fn haar_monomial_matches_monte_carlo() {
        let mut rng = StdRng::seed_from_u64(11);
        let n = 400_000;
        let mut acc = [0.0f64; 3];
        for _ in 0..n {
            let p = GroupPoint::haar_random(&mut rng);
            let (a, b) = (p.z1().norm_sqr(), p.z2().norm_sqr());
            acc[0] += a;
            acc[1] += a * a;
            acc[2] += a * b;
        }
        let mc = acc.map(|s| s / f64::from(n));
        let exact = [
            haar_monomial_integral(1, 1, 0, 0).unwrap().re,
            haar_monomial_integral(2, 2, 0, 0).unwrap().re,
            haar_monomial_integral(1, 1, 1, 1).unwrap().re,
        ];
        for (m, e) in mc.iter().zip(exact) {
            assert!((m - e).abs() < 1e-3, "{m} vs {e}");
        }
    }

    #[test]
    fn wirtinger_derivatives() {
        // p = z1^2 conj(z2)
        let p = Poly::monomial([2, 0, 0, 1], c(3.0, 0.0));
        assert_eq!(p.derivative(Var::Z1), Poly::monomial([1, 0, 0, 1], c(6.0, 0.0)));
        assert_eq!(p.derivative(Var::Z2Bar), Poly::monomial([2, 0, 0, 0], c(3.0, 0.0)));
        assert!(p.derivative(Var::Z1Bar).is_zero());
        assert_eq!(p.degree(), 3);
    }

    #[test]
    fn conj_and_eval_agree() {
        let p = &Poly::monomial([1, 0, 2, 1], c(0.5, -2.0)) + &Poly::constant(c(1.0, 1.0));
        let (z1, z2) = (c(0.3, 0.4), c(-0.2, 0.7));
        assert!((p.conj().eval(z1, z2) - p.eval(z1, z2).conj()).norm() < 1e-14);
        let q = &p * &p.conj();
        assert!((q.eval(z1, z2) - c(p.eval(z1, z2).norm_sqr(), 0.0)).norm() < 1e-13);
    }
}
