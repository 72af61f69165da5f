//! SU(2) realized as the unit sphere in C^2, and its Lie algebra su(2).
//!
//! Points of the group are stored canonically as unit pairs `(z1, z2)`; the
//! matrix picture is obtained through [`theta`]. Algebra elements are complex
//! coefficient triples over the frame `Y1, Y2, Y3`, which satisfies
//! `[Y1, Y2] = Y3` and its cyclic permutations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::Matrix2 as NaMatrix2;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type Complex = Complex64;

/// 2x2 complex matrix.
pub type Matrix2 = NaMatrix2<Complex>;

/// Tolerance used when rejecting points that are off the sphere.
pub const SPHERE_TOL: f64 = 1e-9;

const I: Complex = Complex::new(0.0, 1.0);

#[inline]
pub(crate) const fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// `theta(z1, z2) = [[z1, -conj(z2)], [z2, conj(z1)]]`.
pub fn theta(z1: Complex, z2: Complex) -> Matrix2 {
    Matrix2::new(z1, -z2.conj(), z2, z1.conj())
}

/// A point of the group, `|z1|^2 + |z2|^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupPoint {
    z1: Complex,
    z2: Complex,
}

impl GroupPoint {
    pub const IDENTITY: GroupPoint = GroupPoint { z1: c(1.0, 0.0), z2: c(0.0, 0.0) };

    pub fn new(z1: Complex, z2: Complex) -> Result<Self> {
        let norm_sq = z1.norm_sqr() + z2.norm_sqr();
        if norm_sq.is_nan() || (norm_sq - 1.0).abs() > SPHERE_TOL {
            return Err(Error::NotOnSphere { norm_sq });
        }
        Ok(GroupPoint { z1, z2 })
    }

    /// Projects a nonzero pair radially onto the sphere.
    pub fn normalized(z1: Complex, z2: Complex) -> Result<Self> {
        let r = (z1.norm_sqr() + z2.norm_sqr()).sqrt();
        if r == 0.0 || !r.is_finite() {
            return Err(Error::NotOnSphere { norm_sq: r * r });
        }
        Ok(GroupPoint { z1: z1 / r, z2: z2 / r })
    }

    /// Inverse of [`theta`]: reads the first column of the matrix.
    pub fn from_matrix(m: &Matrix2) -> Result<Self> {
        GroupPoint::new(m[(0, 0)], m[(1, 0)])
    }

    /// A sample from the normalized Haar measure (uniform on the 3-sphere).
    pub fn haar_random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
            if let Ok(p) = GroupPoint::normalized(c(v[0], v[1]), c(v[2], v[3])) {
                return p;
            }
        }
    }

    pub fn z1(&self) -> Complex {
        self.z1
    }

    pub fn z2(&self) -> Complex {
        self.z2
    }

    pub fn matrix(&self) -> Matrix2 {
        theta(self.z1, self.z2)
    }

    pub fn inverse(&self) -> GroupPoint {
        // theta(z)^* = theta(conj z1, -z2)
        GroupPoint { z1: self.z1.conj(), z2: -self.z2 }
    }

    pub fn distance(&self, other: &GroupPoint) -> f64 {
        ((self.z1 - other.z1).norm_sqr() + (self.z2 - other.z2).norm_sqr()).sqrt()
    }
}

/// Group law transported from SU(2):
/// `w . z = (w1 z1 - conj(w2) z2, w2 z1 + conj(w1) z2)`.
pub fn group_mul(w: &GroupPoint, z: &GroupPoint) -> GroupPoint {
    GroupPoint { z1: w.z1 * z.z1 - w.z2.conj() * z.z2, z2: w.z2 * z.z1 + w.z1.conj() * z.z2 }
}

/// An element of the complexified Lie algebra, written over `Y1, Y2, Y3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgebraElement {
    pub c: [Complex; 3],
}

impl AlgebraElement {
    pub const ZERO: AlgebraElement = AlgebraElement::new([c(0.0, 0.0); 3]);
    pub const Y1: AlgebraElement = AlgebraElement::new([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    pub const Y2: AlgebraElement = AlgebraElement::new([c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    pub const Y3: AlgebraElement = AlgebraElement::new([c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    /// `i Y1 - Y2`
    pub const D_PLUS: AlgebraElement = AlgebraElement::new([c(0.0, 1.0), c(-1.0, 0.0), c(0.0, 0.0)]);
    /// `i Y1 + Y2`
    pub const D_MINUS: AlgebraElement = AlgebraElement::new([c(0.0, 1.0), c(1.0, 0.0), c(0.0, 0.0)]);
    /// `i Y3`
    pub const D_ZERO: AlgebraElement = AlgebraElement::new([c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)]);

    pub const fn new(c: [Complex; 3]) -> Self {
        AlgebraElement { c }
    }

    pub fn real(x: [f64; 3]) -> Self {
        AlgebraElement::new([c(x[0], 0.0), c(x[1], 0.0), c(x[2], 0.0)])
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.c.iter().all(|z| z.im.abs() <= tol)
    }

    /// Complex conjugation with respect to the real form su(2).
    pub fn conj(&self) -> Self {
        AlgebraElement::new(self.c.map(|z| z.conj()))
    }

    /// Real and imaginary parts: `X = re + i im` with `re`, `im` in su(2).
    pub fn split(&self) -> (AlgebraElement, AlgebraElement) {
        (AlgebraElement::real(self.c.map(|z| z.re)), AlgebraElement::real(self.c.map(|z| z.im)))
    }

    pub fn norm(&self) -> f64 {
        self.c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// 2x2 matrix realization `c1 Y1 + c2 Y2 + c3 Y3`.
    pub fn matrix(&self) -> Matrix2 {
        let [c1, c2, c3] = self.c;
        let h = 0.5;
        Matrix2::new(I * c3 * h, (I * c1 - c2) * h, (I * c1 + c2) * h, -I * c3 * h)
    }

    /// Reads coordinates off a traceless matrix.
    pub fn from_matrix(m: &Matrix2) -> Self {
        let a = (m[(0, 0)] - m[(1, 1)]) * 0.5;
        let b = m[(0, 1)];
        let d = m[(1, 0)];
        AlgebraElement::new([-I * (b + d), d - b, -I * a * 2.0])
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: Self) -> Self {
        AlgebraElement::new(std::array::from_fn(|i| self.c[i] + rhs.c[i]))
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: Self) -> Self {
        AlgebraElement::new(std::array::from_fn(|i| self.c[i] - rhs.c[i]))
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> Self {
        AlgebraElement::new(self.c.map(|z| -z))
    }
}

impl Mul<AlgebraElement> for Complex {
    type Output = AlgebraElement;
    fn mul(self, rhs: AlgebraElement) -> AlgebraElement {
        AlgebraElement::new(rhs.c.map(|z| self * z))
    }
}

impl Mul<AlgebraElement> for f64 {
    type Output = AlgebraElement;
    fn mul(self, rhs: AlgebraElement) -> AlgebraElement {
        AlgebraElement::new(rhs.c.map(|z| z * self))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})Y1 + ({})Y2 + ({})Y3", self.c[0], self.c[1], self.c[2])
    }
}

/// Lie bracket. In the `Y` frame the structure constants are those of the
/// cross product.
pub fn bracket(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    let [a1, a2, a3] = x.c;
    let [b1, b2, b3] = y.c;
    AlgebraElement::new([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
}

/// The ad-invariant inner product `2 tr(A B^*)` on su(2).
pub fn frame_inner(a: &AlgebraElement, b: &AlgebraElement) -> f64 {
    let p = a.matrix() * b.matrix().adjoint();
    (p.trace() * 2.0).re
}

/// Relative tolerance for truncating the Taylor series in [`matrix_exp`].
pub const EXP_TOL: f64 = 1e-13;

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
pub fn matrix_exp(m: &Matrix2) -> Matrix2 {
    let norm = m.iter().map(|z| z.norm()).sum::<f64>();
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale *= 0.5;
        squarings += 1;
    }
    let a = m * Complex::from(scale);
    let mut sum = Matrix2::identity();
    let mut term = Matrix2::identity();
    for k in 1..64 {
        term = term * a * Complex::from(1.0 / k as f64);
        sum += term;
        let t: f64 = term.iter().map(|z| z.norm()).sum();
        if t <= EXP_TOL * sum.iter().map(|z| z.norm()).sum::<f64>() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

/// The one-parameter subgroup `exp(t X)` as a point of the sphere.
pub fn exp_curve(x: &AlgebraElement, t: f64) -> Result<GroupPoint> {
    if !x.is_real(0.0) {
        return Err(Error::NonRealElement);
    }
    let m = matrix_exp(&(x.matrix() * Complex::from(t)));
    GroupPoint::from_matrix(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;
    use std::f64::consts::PI;

    fn mat_close(a: &Matrix2, b: &Matrix2, tol: f64) -> bool {
        (a - b).iter().all(|z| z.norm() <= tol)
    }

    fn rand_real(rng: &mut StdRng) -> AlgebraElement {
        AlgebraElement::real(std::array::from_fn(|_| rng.random_range(-2.0..2.0)))
    }

    fn rand_complex(rng: &mut StdRng) -> AlgebraElement {
        AlgebraElement::new(std::array::from_fn(|_| c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))))
    }

    #[test]
    fn theta_identity_and_frame() {
        assert_eq!(theta(c(1.0, 0.0), c(0.0, 0.0)), Matrix2::identity());
        assert!(mat_close(&theta(c(0.0, 0.0), c(0.0, 0.5)), &AlgebraElement::Y1.matrix(), 0.0));
        assert!(mat_close(&theta(c(0.0, 0.0), c(0.5, 0.0)), &AlgebraElement::Y2.matrix(), 0.0));
        assert!(mat_close(&theta(c(0.0, 0.5), c(0.0, 0.0)), &AlgebraElement::Y3.matrix(), 0.0));
    }

    #[test]
    fn theta_of_sphere_is_special_unitary() {
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..100 {
            let p = GroupPoint::haar_random(&mut rng);
            let m = p.matrix();
            // direct 2x2 arithmetic
            let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
            assert!((det - c(1.0, 0.0)).norm() < 1e-12);
            let mut uu = Matrix2::zeros();
            for i in 0..2 {
                for j in 0..2 {
                    uu[(i, j)] = m[(0, i)].conj() * m[(0, j)] + m[(1, i)].conj() * m[(1, j)];
                }
            }
            assert!(mat_close(&uu, &Matrix2::identity(), 1e-12));
        }
    }

    #[test]
    fn group_mul_examples() {
        let mut rng = StdRng::seed_from_u64(2);
        let w = GroupPoint::haar_random(&mut rng);
        assert!(group_mul(&w, &GroupPoint::IDENTITY).distance(&w) < 1e-15);
        let j = GroupPoint::new(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let jj = group_mul(&j, &j);
        assert_eq!(jj, GroupPoint::new(c(-1.0, 0.0), c(0.0, 0.0)).unwrap());
    }

    #[test]
    fn group_mul_matches_matrix_product_and_is_associative() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..100 {
            let a = GroupPoint::haar_random(&mut rng);
            let b = GroupPoint::haar_random(&mut rng);
            let d = GroupPoint::haar_random(&mut rng);
            let ab = group_mul(&a, &b);
            assert!(mat_close(&ab.matrix(), &(a.matrix() * b.matrix()), 1e-12));
            let left = group_mul(&ab, &d);
            let right = group_mul(&a, &group_mul(&b, &d));
            assert!(left.distance(&right) < 1e-12);
            let via_theta = GroupPoint::from_matrix(&(ab.matrix() * d.matrix())).unwrap();
            assert!(left.distance(&via_theta) < 1e-12);
        }
    }

    #[test]
    fn off_sphere_points_rejected() {
        assert!(matches!(GroupPoint::new(c(1.0, 0.0), c(1e-4, 0.0)), Err(Error::NotOnSphere { .. })));
        assert!(GroupPoint::new(c(1.0 + 1e-12, 0.0), c(0.0, 0.0)).is_ok());
    }

    #[test]
    fn exp_curve_examples() {
        let x = AlgebraElement::real([0.3, -1.0, 2.0]);
        assert!(exp_curve(&x, 0.0).unwrap().distance(&GroupPoint::IDENTITY) < 1e-15);
        let p = exp_curve(&AlgebraElement::Y3, 2.0 * PI).unwrap();
        assert!(p.distance(&GroupPoint::new(c(-1.0, 0.0), c(0.0, 0.0)).unwrap()) < 1e-12);
        for t in [0.1, 1.0, 10.0] {
            let p = exp_curve(&AlgebraElement::Y1, t).unwrap();
            assert!((p.z1().norm_sqr() + p.z2().norm_sqr() - 1.0).abs() < 1e-10);
        }
        assert_eq!(exp_curve(&AlgebraElement::D_MINUS, 1.0), Err(Error::NonRealElement));
    }

    #[test]
    fn exp_of_y3_is_diagonal_phase() {
        for t in [0.3, 1.7, -4.0] {
            let m = matrix_exp(&(AlgebraElement::Y3.matrix() * Complex::from(t)));
            let expected = Matrix2::new(Complex::from_polar(1.0, t / 2.0), c(0.0, 0.0), c(0.0, 0.0), Complex::from_polar(1.0, -t / 2.0));
            assert!(mat_close(&m, &expected, 1e-12));
        }
    }

    #[test]
    fn exp_curve_is_one_parameter_subgroup() {
        let mut rng = StdRng::seed_from_u64(4);
        for _ in 0..50 {
            let x = rand_real(&mut rng);
            let t = rng.random_range(-3.0..3.0);
            let s = rng.random_range(-3.0..3.0);
            let lhs = exp_curve(&x, t + s).unwrap();
            let rhs = group_mul(&exp_curve(&x, t).unwrap(), &exp_curve(&x, s).unwrap());
            assert!(lhs.distance(&rhs) < 1e-9);
        }
    }

    #[test]
    fn brackets_of_named_elements() {
        use AlgebraElement as A;
        let close = |a: A, b: A| (a - b).norm() < 1e-15;
        assert!(close(bracket(&A::Y1, &A::Y2), A::Y3));
        assert!(close(bracket(&A::Y2, &A::Y3), A::Y1));
        assert!(close(bracket(&A::Y3, &A::Y1), A::Y2));
        assert!(close(bracket(&A::D_PLUS, &A::D_MINUS), 2.0 * A::D_ZERO));
        assert!(close(bracket(&A::D_PLUS, &A::D_ZERO), -A::D_PLUS));
        assert!(close(bracket(&A::D_MINUS, &A::D_ZERO), A::D_MINUS));
        let x = A::real([1.0, 2.0, 3.0]);
        assert!(close(bracket(&x, &x), A::ZERO));
    }

    #[test]
    fn bracket_matches_matrix_commutator_and_jacobi() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..100 {
            let x = rand_complex(&mut rng);
            let y = rand_complex(&mut rng);
            let z = rand_complex(&mut rng);
            let comm = x.matrix() * y.matrix() - y.matrix() * x.matrix();
            assert!(mat_close(&bracket(&x, &y).matrix(), &comm, 1e-12));
            let jac = bracket(&x, &bracket(&y, &z)) + bracket(&y, &bracket(&z, &x)) + bracket(&z, &bracket(&x, &y));
            assert!(jac.norm() < 1e-12);
        }
    }

    #[test]
    fn matrix_realization_round_trip() {
        let mut rng = StdRng::seed_from_u64(6);
        for _ in 0..20 {
            let x = rand_complex(&mut rng);
            assert!((AlgebraElement::from_matrix(&x.matrix()) - x).norm() < 1e-14);
        }
        let m = AlgebraElement::real([0.4, -0.2, 1.1]).matrix();
        assert!(mat_close(&(m + m.adjoint()), &Matrix2::zeros(), 1e-12));
        assert!(m.trace().norm() < 1e-12);
    }

    #[test]
    fn frame_is_orthonormal_and_metric_ad_invariant() {
        use AlgebraElement as A;
        let frame = [A::Y1, A::Y2, A::Y3];
        for (i, a) in frame.iter().enumerate() {
            for (j, b) in frame.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((frame_inner(a, b) - expected).abs() < 1e-15);
            }
        }
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let x = rand_real(&mut rng);
            let a = rand_real(&mut rng);
            let b = rand_real(&mut rng);
            let r = frame_inner(&bracket(&x, &a), &b) + frame_inner(&a, &bracket(&x, &b));
            assert!(r.abs() < 1e-12);
            assert!((frame_inner(&a, &b) - frame_inner(&b, &a)).abs() < 1e-12);
            assert!(frame_inner(&a, &a) > 0.0);
        }
    }
}
