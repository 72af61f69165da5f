//! Frames adapted to a subalgebra and the structure constants they produce.

use nalgebra::{DMatrix, Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::group::{bracket, AlgebraElement, Complex};

/// Tolerance for basis and subalgebra tests.
pub const FRAME_TOL: f64 = 1e-10;

fn frame_matrix(v: &[AlgebraElement; 3]) -> Matrix3<Complex> {
    Matrix3::from_fn(|i, j| v[j].c[i])
}

fn rank_of(vectors: &[AlgebraElement]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = DMatrix::from_fn(3, vectors.len(), |i, j| vectors[j].c[i]);
    let sv = crate::linalg::singular_values(&m);
    let t = FRAME_TOL * sv.first().copied().unwrap_or(0.0).max(1.0);
    sv.iter().filter(|&&s| s > t).count()
}

fn check_basis(v: &[AlgebraElement; 3]) -> Result<()> {
    if rank_of(v) < 3 {
        return Err(Error::DegenerateFrame);
    }
    Ok(())
}

/// Coordinates of `x` over the given basis.
fn coordinates(basis: &[AlgebraElement; 3], x: &AlgebraElement) -> Result<[Complex; 3]> {
    let sol = frame_matrix(basis).lu().solve(&Vector3::from_column_slice(&x.c)).ok_or(Error::DegenerateFrame)?;
    Ok([sol[0], sol[1], sol[2]])
}

/// `L, M1, M2` with `L` spanning a corank 2 subalgebra.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Corank2Frame {
    pub l: AlgebraElement,
    pub m1: AlgebraElement,
    pub m2: AlgebraElement,
}

impl Corank2Frame {
    pub fn new(l: AlgebraElement, m1: AlgebraElement, m2: AlgebraElement) -> Result<Self> {
        check_basis(&[l, m1, m2])?;
        Ok(Corank2Frame { l, m1, m2 })
    }
}

/// `L1, L2, M` with `span{L1, L2}` a subalgebra.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Corank1Frame {
    pub l1: AlgebraElement,
    pub l2: AlgebraElement,
    pub m: AlgebraElement,
}

impl Corank1Frame {
    pub fn new(l1: AlgebraElement, l2: AlgebraElement, m: AlgebraElement) -> Result<Self> {
        check_basis(&[l1, l2, m])?;
        let [_, _, cm] = coordinates(&[l1, l2, m], &bracket(&l1, &l2))?;
        if cm.norm() > FRAME_TOL {
            return Err(Error::NotSubalgebra { residual: cm.norm() });
        }
        Ok(Corank1Frame { l1, l2, m })
    }
}

/// `[M1, M2] = a1 M1 + a2 M2 + a3 L`, `[L, Mj] = b_{j,1} M1 + b_{j,2} M2 + b_{j,3} L`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StructureConstants2 {
    pub a: [Complex; 3],
    pub b: [[Complex; 3]; 2],
}

impl StructureConstants2 {
    /// `d_{j,k}` for `j in 1..=2`, `k in 1..=3` (one-based).
    pub fn d(&self, j: usize, k: usize) -> Complex {
        if k == 3 {
            -self.a[j - 1]
        } else {
            self.b[k - 1][j - 1]
        }
    }
}

/// `[L1, L2] = a1 L1 + a2 L2`, `[Lj, M] = b_{j,1} L1 + b_{j,2} L2 + b_{j,3} M`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StructureConstants1 {
    pub a: [Complex; 2],
    pub b: [[Complex; 3]; 2],
}

impl StructureConstants1 {
    /// `c_j = b_{j,3}` (one-based).
    pub fn c(&self, j: usize) -> Complex {
        self.b[j - 1][2]
    }

    /// `d_{j,k}` (one-based).
    pub fn d(&self, j: usize, k: usize) -> Complex {
        if k == 3 {
            -self.a[j - 1]
        } else {
            self.b[k - 1][j - 1]
        }
    }
}

pub fn corank2_constants(frame: &Corank2Frame) -> Result<StructureConstants2> {
    // coordinates are solved over (M1, M2, L)
    let basis = [frame.m1, frame.m2, frame.l];
    check_basis(&basis)?;
    let a = coordinates(&basis, &bracket(&frame.m1, &frame.m2))?;
    let b1 = coordinates(&basis, &bracket(&frame.l, &frame.m1))?;
    let b2 = coordinates(&basis, &bracket(&frame.l, &frame.m2))?;
    Ok(StructureConstants2 { a, b: [b1, b2] })
}

pub fn corank1_constants(frame: &Corank1Frame) -> Result<StructureConstants1> {
    let basis = [frame.l1, frame.l2, frame.m];
    check_basis(&basis)?;
    let [a1, a2, am] = coordinates(&basis, &bracket(&frame.l1, &frame.l2))?;
    if am.norm() > FRAME_TOL {
        return Err(Error::NotSubalgebra { residual: am.norm() });
    }
    let b1 = coordinates(&basis, &bracket(&frame.l1, &frame.m))?;
    let b2 = coordinates(&basis, &bracket(&frame.l2, &frame.m))?;
    Ok(StructureConstants1 { a: [a1, a2], b: [b1, b2] })
}

/// Largest deviation between the actual brackets and those rebuilt from the constants.
pub fn corank2_residual(frame: &Corank2Frame, k: &StructureConstants2) -> f64 {
    let combo = |c: &[Complex; 3]| c[0] * frame.m1 + c[1] * frame.m2 + c[2] * frame.l;
    [
        (bracket(&frame.m1, &frame.m2) - combo(&k.a)).norm(),
        (bracket(&frame.l, &frame.m1) - combo(&k.b[0])).norm(),
        (bracket(&frame.l, &frame.m2) - combo(&k.b[1])).norm(),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

pub fn corank1_residual(frame: &Corank1Frame, k: &StructureConstants1) -> f64 {
    let combo = |c: &[Complex; 3]| c[0] * frame.l1 + c[1] * frame.l2 + c[2] * frame.m;
    [
        (bracket(&frame.l1, &frame.l2) - (k.a[0] * frame.l1 + k.a[1] * frame.l2)).norm(),
        (bracket(&frame.l1, &frame.m) - combo(&k.b[0])).norm(),
        (bracket(&frame.l2, &frame.m) - combo(&k.b[1])).norm(),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// Type of a subalgebra `v` of the complexified algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Classification {
    /// `v + conj(v)` is everything.
    Elliptic,
    /// `v = conj(v)`.
    EssentiallyReal,
    /// `v` meets `conj(v)` trivially.
    CR,
    Generic,
}

/// Classifies `span(vectors)`.
pub fn classify_span(vectors: &[AlgebraElement]) -> Classification {
    let dim_v = rank_of(vectors);
    let mut both: Vec<AlgebraElement> = vectors.to_vec();
    both.extend(vectors.iter().map(AlgebraElement::conj));
    let dim_sum = rank_of(&both);
    let dim_meet = 2 * dim_v - dim_sum;
    if dim_meet == dim_v {
        Classification::EssentiallyReal
    } else if dim_sum == 3 {
        Classification::Elliptic
    } else if dim_meet == 0 {
        Classification::CR
    } else {
        Classification::Generic
    }
}
