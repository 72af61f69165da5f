//! Irreducible representations `T_l` of SU(2) on homogeneous polynomials of
//! degree `2l`, and their matrix coefficients `t^l_{mn}`.
//!
//! `V_l` carries the orthonormal basis
//! `q_{lk}(z) = z1^(l-k) z2^(l+k) / sqrt((l-k)! (l+k)!)` and
//! `(T_l(x) f)(z) = f(x^T z)`. Rows and columns of every coefficient matrix
//! are ordered by ascending weight, `-l, -l+1, ..., l`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::group::{Complex, GroupPoint};
use crate::halfint::HalfInt;
use crate::poly::{factorial, Poly};

/// A representation level `l >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepLevel(HalfInt);

impl RepLevel {
    pub const fn from_doubled(two_l: u32) -> Self {
        RepLevel(HalfInt::from_doubled(two_l as i32))
    }

    pub fn ell(self) -> HalfInt {
        self.0
    }

    pub fn two_l(self) -> u32 {
        self.0.doubled() as u32
    }

    pub fn value(self) -> f64 {
        self.0.value()
    }

    /// `2l + 1`.
    pub fn dim(self) -> usize {
        self.two_l() as usize + 1
    }

    /// Casimir eigenvalue `l (l + 1)`.
    pub fn casimir(self) -> f64 {
        let l = self.value();
        l * (l + 1.0)
    }

    /// Doubled weights in ascending order.
    pub fn weights(self) -> impl Iterator<Item = Weight> {
        let two_l = self.two_l() as i32;
        (0..=two_l).map(move |j| Weight { value: HalfInt::from_doubled(2 * j - two_l), level: self })
    }

    pub fn weight(self, two_m: i32) -> Result<Weight> {
        Weight::new(self, two_m)
    }
}

impl std::fmt::Display for RepLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// `dim V_l = 2l + 1`.
pub fn dim_v(ell: RepLevel) -> usize {
    ell.dim()
}

/// A weight `-l <= m <= l` with `l - m` integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    value: HalfInt,
    level: RepLevel,
}

impl Weight {
    pub fn new(level: RepLevel, two_m: i32) -> Result<Self> {
        let two_l = level.two_l() as i32;
        if two_m.abs() > two_l || (two_l - two_m) % 2 != 0 {
            return Err(Error::WeightOutOfRange { two_l: level.two_l(), two_m });
        }
        Ok(Weight { value: HalfInt::from_doubled(two_m), level })
    }

    pub fn value(self) -> HalfInt {
        self.value
    }

    pub fn level(self) -> RepLevel {
        self.level
    }

    pub fn two_m(self) -> i32 {
        self.value.doubled()
    }

    /// Position in ascending weight order.
    pub fn index(self) -> usize {
        ((self.two_m() + self.level.two_l() as i32) / 2) as usize
    }

    /// `l - m`, always a nonnegative integer.
    pub fn l_minus(self) -> u32 {
        ((self.level.two_l() as i32 - self.two_m()) / 2) as u32
    }

    /// `l + m`, always a nonnegative integer.
    pub fn l_plus(self) -> u32 {
        ((self.level.two_l() as i32 + self.two_m()) / 2) as u32
    }
}

/// An element of `V_l` in coordinates over `q_{lk}`, `k = -l..l`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyVec {
    pub level: RepLevel,
    pub coeffs: DVector<Complex>,
}

impl PolyVec {
    pub fn new(level: RepLevel, coeffs: DVector<Complex>) -> Result<Self> {
        if coeffs.len() != level.dim() {
            return Err(Error::LevelMismatch { left: level.two_l(), right: coeffs.len() as u32 - 1 });
        }
        Ok(PolyVec { level, coeffs })
    }

    /// `q_{lk}`.
    pub fn basis(k: Weight) -> Self {
        let mut coeffs = DVector::zeros(k.level.dim());
        coeffs[k.index()] = Complex::from(1.0);
        PolyVec { level: k.level, coeffs }
    }

    /// The monomial `p_{lj} = z1^j z2^(2l-j) = sqrt(j! (2l-j)!) q_{l,l-j}`.
    pub fn monomial(level: RepLevel, j: u32) -> Result<Self> {
        let k = Weight::new(level, level.two_l() as i32 - 2 * j as i32)?;
        let mut v = PolyVec::basis(k);
        v.coeffs[k.index()] = Complex::from((factorial(j) * factorial(level.two_l() - j)).sqrt());
        Ok(v)
    }

    /// The polynomial itself, in `z1, z2`.
    pub fn to_poly(&self) -> Poly {
        let mut p = Poly::zero();
        for k in self.level.weights() {
            let (a, b) = (k.l_minus(), k.l_plus());
            let norm = (factorial(a) * factorial(b)).sqrt();
            p.add_term([a, 0, b, 0], self.coeffs[k.index()] / norm);
        }
        p
    }
}

/// Inner product on `V_l` in which `q_{lk}` is orthonormal.
pub fn vl_inner(f: &PolyVec, g: &PolyVec) -> Result<Complex> {
    if f.level != g.level {
        return Err(Error::LevelMismatch { left: f.level.two_l(), right: g.level.two_l() });
    }
    Ok(f.coeffs.iter().zip(g.coeffs.iter()).map(|(a, b)| a * b.conj()).sum())
}

/// A `(2l+1) x (2l+1)` matrix indexed by weight pairs `(m, n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffMatrix {
    pub level: RepLevel,
    pub entries: DMatrix<Complex>,
}

impl CoeffMatrix {
    pub fn zeros(level: RepLevel) -> Self {
        CoeffMatrix { level, entries: DMatrix::zeros(level.dim(), level.dim()) }
    }

    pub fn new(level: RepLevel, entries: DMatrix<Complex>) -> Result<Self> {
        if entries.nrows() != level.dim() || entries.ncols() != level.dim() {
            return Err(Error::LevelMismatch { left: level.two_l(), right: entries.nrows().max(1) as u32 - 1 });
        }
        Ok(CoeffMatrix { level, entries })
    }

    pub fn get(&self, m: Weight, n: Weight) -> Complex {
        self.entries[(m.index(), n.index())]
    }

    pub fn set(&mut self, m: Weight, n: Weight, v: Complex) {
        self.entries[(m.index(), n.index())] = v;
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.entries.iter().all(|z| z.norm() <= tol)
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    let mut v = 1.0;
    for i in 0..k {
        v = v * f64::from(n - i) / f64::from(i + 1);
    }
    v.round()
}

/// Calls `visit(m_index, n, coeff, [i1, j1, i2, j2])` for every monomial
/// `w1^i1 conj(w1)^j1 w2^i2 conj(w2)^j2` in the expansion of
/// `q_n(x^T z)` over `q_m`, where `x = theta(w)`. The coefficient is the
/// exact integer part; the factorial normalization is applied by callers.
fn expand_column<F: FnMut(usize, u32, f64, [u32; 4])>(level: RepLevel, n: Weight, mut visit: F) {
    // x^T z = (w1 z1 + w2 z2, -conj(w2) z1 + conj(w1) z2)
    let (a, b) = (n.l_minus(), n.l_plus());
    let two_l = level.two_l();
    for i in 0..=a {
        let ca = binomial(a, i);
        for j in 0..=b {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            // power of z1 is i + j = l - m
            let l_minus_m = i + j;
            let m_index = (two_l - l_minus_m) as usize;
            visit(m_index, l_minus_m, sign * ca * binomial(b, j), [i, b - j, a - i, j]);
        }
    }
}

fn column_scale(level: RepLevel, l_minus_m: u32, n: Weight) -> f64 {
    let l_plus_m = level.two_l() - l_minus_m;
    (factorial(l_minus_m) * factorial(l_plus_m) / (factorial(n.l_minus()) * factorial(n.l_plus()))).sqrt()
}

/// `T_l(theta(x))` in the `q` basis: entry `(m, n)` is `t^l_{mn}(x)`.
pub fn rep_matrix(ell: RepLevel, x: &GroupPoint) -> CoeffMatrix {
    let vals = [x.z1(), x.z1().conj(), x.z2(), x.z2().conj()];
    let two_l = ell.two_l();
    let powers: Vec<Vec<Complex>> = vals.iter().map(|v| (0..=two_l).map(|k| v.powu(k)).collect()).collect();
    let mut out = CoeffMatrix::zeros(ell);
    for n in ell.weights() {
        let mut column = vec![Complex::from(0.0); ell.dim()];
        expand_column(ell, n, |mi, _, coeff, e| {
            let mono = powers[0][e[0] as usize] * powers[1][e[1] as usize] * powers[2][e[2] as usize] * powers[3][e[3] as usize];
            column[mi] += mono * coeff;
        });
        for (mi, v) in column.into_iter().enumerate() {
            let l_minus_m = two_l - mi as u32;
            out.entries[(mi, n.index())] = v * column_scale(ell, l_minus_m, n);
        }
    }
    out
}

/// `t^l_{mn}(x)`.
pub fn matrix_coeff(ell: RepLevel, m: Weight, n: Weight, x: &GroupPoint) -> Result<Complex> {
    for w in [m, n] {
        if w.level != ell {
            return Err(Error::WeightOutOfRange { two_l: ell.two_l(), two_m: w.two_m() });
        }
    }
    Ok(rep_matrix(ell, x).get(m, n))
}

/// `t^l_{mn}` as a polynomial in `z1, conj(z1), z2, conj(z2)`.
pub fn matrix_coeff_poly(m: Weight, n: Weight) -> Poly {
    let level = n.level;
    let mut p = Poly::zero();
    expand_column(level, n, |mi, l_minus_m, coeff, e| {
        if mi == m.index() {
            p.add_term(e, Complex::from(coeff * column_scale(level, l_minus_m, n)));
        }
    });
    p
}
